mod common;

use circuit_polytope::enumeration::enumerate_circuits;
use circuit_polytope::facets::{
    bruteforce_facet_report, certify_facet, check_validity, hierarchy_members, incidence_matrix, is_facet_bruteforce,
    is_valid_bruteforce, make_hierarchy_inequality, make_permutation_inequality, make_two_term_inequalities,
    map_to_arc_model, two_term_1, FacetStatus, FamilyTag, TightSource,
};
use circuit_polytope::rational::int;
use circuit_polytope::{Caps, Circuit, Domain, LinearInequality};

use common::{ints, lhs_at, oracle_facet, oracle_valid, q};

fn unit(n: usize) -> Domain {
    Domain::unit(n).unwrap()
}

fn ineq(n: usize, coeffs: &[(usize, i64)], rhs: i64) -> LinearInequality {
    LinearInequality::from_ints(n, coeffs, rhs).unwrap()
}

#[test]
fn normal_form() {
    let a = LinearInequality::new(7, [(3, q("1/2")), (7, q("1/2"))], q("3/2")).unwrap();
    assert_eq!(a, ineq(7, &[(3, 1), (7, 1)], 3));
    let b = LinearInequality::at_most(6, [(5, int(2)), (6, int(4))], int(28)).unwrap();
    assert_eq!(b.to_string(), "-x_5 - 2x_6 >= -14");
    assert!(LinearInequality::new(4, [(5, int(1))], int(0)).is_err());
    assert!(LinearInequality::new(4, [(2, int(1)), (2, int(3))], int(0)).is_err());
    assert_eq!(LinearInequality::new(4, [(2, int(0))], int(-3)).unwrap().to_string(), "0 >= -1");
}

#[test]
fn permutation_members() {
    let u7 = unit(7);
    let m = make_permutation_inequality(&u7, &[3, 7]).unwrap();
    assert_eq!(m.inequality.to_string(), "x_3 + x_7 >= 3");
    assert!(m.theorem_scope_ok);
    let m = make_permutation_inequality(&u7, &[5, 6, 7]).unwrap();
    assert_eq!(m.inequality.to_string(), "x_5 + x_6 + x_7 >= 6");
    assert!(!make_permutation_inequality(&u7, &[2, 6]).unwrap().theorem_scope_ok);
    assert!(!make_permutation_inequality(&u7, &[3, 4, 5, 6]).unwrap().theorem_scope_ok);
    assert!(make_permutation_inequality(&u7, &[]).is_err());
    assert!(make_permutation_inequality(&u7, &[1, 2, 3, 4, 5, 6, 7]).is_err());

    let small = Domain::new(ints(&[2, 4, 5])).unwrap();
    let m = make_permutation_inequality(&small, &[3]).unwrap();
    assert_eq!(m.inequality.to_string(), "x_3 >= 2");
    assert!(oracle_valid(&m.inequality, small.values()));
}

#[test]
fn two_term_members_at_six() {
    let u6 = unit(6);
    let members = make_two_term_inequalities(&u6).unwrap();
    let text = |tag: FamilyTag| -> Vec<String> {
        members
            .iter()
            .filter(|m| m.family.tag == tag)
            .map(|m| m.inequality.to_string())
            .collect()
    };
    assert_eq!(text(FamilyTag::TwoTerm2), vec!["2x_1 + x_2 >= 7"]);
    assert_eq!(text(FamilyTag::TwoTerm5), vec!["-x_5 - 2x_6 >= -14"]);
    assert!(text(FamilyTag::TwoTerm1).contains(&"x_3 + x_4 >= 3".to_string()));
    assert_eq!(two_term_1(&u6, 3, 4).unwrap().inequality, ineq(6, &[(3, 1), (4, 1)], 3));
    for m in &members {
        assert!(oracle_valid(&m.inequality, u6.values()), "{}", m.inequality);
    }
    assert!(make_two_term_inequalities(&unit(5)).is_err());
}

#[test]
fn two_term_members_on_general_domains() {
    let d = Domain::new(vec![q("0"), q("1/2"), q("3"), q("4"), q("15/2"), q("8"), q("11")]).unwrap();
    for m in make_two_term_inequalities(&d).unwrap() {
        assert!(oracle_valid(&m.inequality, d.values()), "{}", m.inequality);
        assert!(check_validity(&d, &m.inequality, &Caps::default()).unwrap().valid);
    }
}

#[test]
fn hierarchy_members_by_hand() {
    let m = make_hierarchy_inequality(7, FamilyTag::Level1b, 3, &[6, 7]).unwrap();
    assert_eq!(m.inequality.to_string(), "x_3 + 2x_6 + 2x_7 >= 10");
    let m = make_hierarchy_inequality(7, FamilyTag::Level2_11, 4, &[6, 7]).unwrap();
    assert_eq!(m.inequality.to_string(), "2x_3 + x_4 + 2x_6 + 2x_7 >= 17");
    assert!(!m.theorem_scope_ok);
    let m = make_hierarchy_inequality(7, FamilyTag::Level2_12, 3, &[7]).unwrap();
    assert_eq!(m.inequality.to_string(), "2x_2 + x_3 + 4x_7 >= 14");
    assert!(oracle_valid(&m.inequality, unit(7).values()));

    assert!(make_hierarchy_inequality(7, FamilyTag::Level1b, 3, &[7]).is_err());
    assert!(make_hierarchy_inequality(7, FamilyTag::Level1b, 3, &[3, 7]).is_err());
    assert!(make_hierarchy_inequality(7, FamilyTag::Level1b, 6, &[7, 7]).is_err());
    assert!(make_hierarchy_inequality(7, FamilyTag::Permutation, 3, &[7]).is_err());
}

#[test]
fn every_member_is_valid() {
    let caps = Caps::default();
    for n in 6..=9 {
        let d = unit(n);
        let mut members = make_two_term_inequalities(&d).unwrap();
        for tag in FamilyTag::HIERARCHY {
            members.extend(hierarchy_members(n, tag).unwrap());
        }
        for m in &members {
            assert!(check_validity(&d, &m.inequality, &caps).unwrap().valid, "n={n} {}", m.inequality);
            if n <= 7 {
                assert!(oracle_valid(&m.inequality, d.values()), "n={n} {}", m.inequality);
            }
        }
    }
}

#[test]
fn validity_examples() {
    let u7 = unit(7);
    let caps = Caps::default();
    assert!(check_validity(&u7, &ineq(7, &[(3, 1), (7, 1)], 3), &caps).unwrap().valid);

    let v = check_validity(&u7, &ineq(7, &[(3, 1), (7, 1)], 4), &caps).unwrap();
    assert!(!v.valid);
    let (witness, lhs) = v.witness.unwrap();
    assert_eq!(lhs, int(3));
    let mut values = witness.positions();
    values.sort();
    assert_eq!(values, vec![1, 2]);

    assert!(check_validity(&u7, &ineq(7, &[(2, 1), (3, 2)], 5), &caps).unwrap().valid);
    assert!(check_validity(&u7, &ineq(7, &[], -1), &caps).unwrap().valid);
    assert!(!check_validity(&u7, &ineq(7, &[], 1), &caps).unwrap().valid);
}

#[test]
fn certificates() {
    let u7 = unit(7);
    let caps = Caps::default();
    let c = certify_facet(&u7, &ineq(7, &[(2, 1), (3, 2)], 5), &caps).unwrap();
    assert_eq!(c.status, FacetStatus::FacetByTheorem);
    assert_eq!(c.affine_rank_of_tight, 2);
    let mut tight: Vec<Vec<usize>> = c.undominated_witnesses.iter().filter(|(_, l)| *l == int(5)).map(|(jc, _)| jc.positions()).collect();
    tight.sort();
    assert_eq!(tight, vec![vec![1, 2], vec![3, 1]]);

    for j in 3..=7 {
        for (a1, aj) in [(1, 1), (2, 1), (1, 3)] {
            let rhs = a1 * 2 + aj;
            let c = certify_facet(&u7, &ineq(7, &[(1, a1), (j, aj)], rhs), &caps).unwrap();
            assert_eq!(c.status, FacetStatus::ValidNotFacet, "x_1 + x_{j}");
            assert_eq!(c.affine_rank_of_tight, 1);
            assert_eq!(c.tight_source, TightSource::AllJCircuits);
            assert!(!oracle_facet(&ineq(7, &[(1, a1), (j, aj)], rhs), u7.values()));
        }
    }

    let bad = certify_facet(&u7, &ineq(7, &[(3, 1), (7, 1)], 4), &caps).unwrap();
    assert_eq!(bad.status, FacetStatus::Invalid);
}

#[test]
fn permutation_facet_at_nine() {
    let u9 = unit(9);
    let caps = Caps::default();
    let m = make_permutation_inequality(&u9, &[5, 6, 7]).unwrap();
    assert!(m.theorem_scope_ok);
    let c = certify_facet(&u9, &m.inequality, &caps).unwrap();
    assert_eq!(c.status, FacetStatus::FacetByTheorem);
    assert!(is_facet_bruteforce(&u9, &m.inequality, &caps).unwrap());
}

#[test]
fn bruteforce_oracle() {
    let caps = Caps::default();
    let u7 = unit(7);
    let sep11 = ineq(7, &[(3, 1), (7, 1)], 3);
    assert!(is_facet_bruteforce(&u7, &sep11, &caps).unwrap());
    assert!(oracle_facet(&sep11, u7.values()));

    let u4 = unit(4);
    let small = ineq(4, &[(3, 1), (4, 1)], 3);
    assert_eq!(is_facet_bruteforce(&u4, &small, &caps).unwrap(), oracle_facet(&small, u4.values()));

    let hull = ineq(7, &[(1, 1), (2, 1), (3, 1), (4, 1), (5, 1), (6, 1), (7, 1)], 28);
    let report = bruteforce_facet_report(&u7, &hull, &caps).unwrap();
    assert!(report.valid);
    assert!(!report.has_slack);
    assert_eq!(report.tight.len(), 720);
    assert!(!report.is_facet());
    assert!(is_valid_bruteforce(&u7, &hull, &caps).unwrap());

    assert!(bruteforce_facet_report(&unit(3), &ineq(3, &[(1, 1)], 2), &caps).is_err());
}

#[test]
fn arc_model() {
    let u7 = unit(7);
    let arc = map_to_arc_model(&u7, &ineq(7, &[(3, 1), (7, 1)], 3)).unwrap();
    assert_eq!(arc.rhs, int(3));
    for i in 1..=7 {
        for j in 1..=7 {
            let want = if i == 3 || i == 7 { int(j as i64) } else { int(0) };
            assert_eq!(arc.coeffs[i - 1][j - 1], want);
        }
    }

    let zero = map_to_arc_model(&u7, &ineq(7, &[], -1)).unwrap();
    assert!(zero.coeffs.iter().flatten().all(|c| *c == int(0)));

    let sep13 = make_hierarchy_inequality(7, FamilyTag::Level1b, 3, &[6, 7]).unwrap().inequality;
    let arc = map_to_arc_model(&u7, &sep13).unwrap();
    let c = Circuit::from_successors(vec![2, 3, 4, 5, 6, 7, 1]).unwrap();
    let direct = lhs_at(&sep13, &c.values(&u7));
    assert_eq!(direct, int(4 + 14 + 2));
    assert_eq!(arc.lhs(&incidence_matrix(&c)).unwrap(), direct);
    assert_eq!(arc.lhs_on_circuit(&c).unwrap(), direct);

    let d = Domain::new(vec![q("1/3"), q("1"), q("5/2"), q("4"), q("9")]).unwrap();
    let odd = LinearInequality::new(5, [(1, q("-2/3")), (4, q("5"))], q("1")).unwrap();
    let arc = map_to_arc_model(&d, &odd).unwrap();
    for c in enumerate_circuits(&d, &Caps::default()).unwrap() {
        assert_eq!(arc.lhs_on_circuit(&c).unwrap(), lhs_at(&odd, &c.values(&d)));
    }
}
