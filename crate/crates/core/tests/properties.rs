mod common;

use num_traits::Signed;
use proptest::prelude::*;
use proptest::sample::subsequence;

use circuit_polytope::cli::{inequality_from_json, inequality_to_json};
use circuit_polytope::enumeration::complete_j_circuit;
use circuit_polytope::facets::{check_validity, incidence_matrix, map_to_arc_model};
use circuit_polytope::greedy::{dominates, implied_ordering, undominated_j_circuits};
use circuit_polytope::rational::ratio;
use circuit_polytope::separation::separate_all;
use circuit_polytope::{Caps, Circuit, Domain, JCircuit, LinearInequality, QueryPoint, Rational, SignPartition};

use common::{oracle_valid, values_of};

fn rational() -> impl Strategy<Value = Rational> {
    (-12i64..=12, 1i64..=4).prop_map(|(p, q)| ratio(p, q))
}

fn positive() -> impl Strategy<Value = Rational> {
    (1i64..=9, 1i64..=9).prop_map(|(p, q)| ratio(p, q))
}

/// Tour `1, pi_2, ..., pi_n` as successor positions.
fn circuit(n: usize) -> impl Strategy<Value = Circuit> {
    Just((2..=n).collect::<Vec<_>>()).prop_shuffle().prop_map(|rest| {
        let tour: Vec<usize> = std::iter::once(1).chain(rest).collect();
        Circuit::from_tour(&tour).unwrap()
    })
}

fn sized_circuit() -> impl Strategy<Value = Circuit> {
    (2usize..=8).prop_flat_map(circuit)
}

fn j_circuit() -> impl Strategy<Value = JCircuit> {
    sized_circuit().prop_flat_map(|c| {
        let n = c.n();
        subsequence((1..=n).collect::<Vec<_>>(), 0..n).prop_map(move |j| c.restrict(&j))
    })
}

/// Increasing nonnegative domain of size `n`.
fn domain(n: usize) -> impl Strategy<Value = Domain> {
    proptest::collection::vec((1i64..=5, 1i64..=3), n).prop_map(|steps| {
        let mut acc = ratio(0, 1);
        let values = steps
            .into_iter()
            .map(|(p, q)| {
                acc += ratio(p, q);
                acc.clone()
            })
            .collect();
        Domain::new(values).unwrap()
    })
}

fn inequality(n: usize, max_support: usize) -> impl Strategy<Value = LinearInequality> {
    (
        subsequence((1..=n).collect::<Vec<_>>(), 1..=max_support),
        proptest::collection::vec(rational(), max_support),
        rational(),
    )
        .prop_map(move |(j, a, rhs)| LinearInequality::new(n, j.into_iter().zip(a), rhs * ratio(3, 1)).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(96))]

    #[test]
    fn normalization_ignores_positive_scaling(ineq in inequality(7, 4), c in positive()) {
        let scaled = LinearInequality::new(
            7,
            ineq.coeffs().iter().map(|(j, a)| (*j, a * &c)),
            ineq.rhs() * &c,
        ).unwrap();
        prop_assert_eq!(&scaled, &ineq);
        let again = LinearInequality::new(7, ineq.coeffs().to_vec(), ineq.rhs().clone()).unwrap();
        prop_assert_eq!(again, ineq);
    }

    #[test]
    fn json_round_trip(ineq in inequality(8, 5)) {
        let back = inequality_from_json(&inequality_to_json(&ineq), 8).unwrap();
        prop_assert_eq!(back, ineq);
    }

    #[test]
    fn tours_round_trip(c in sized_circuit()) {
        prop_assert_eq!(Circuit::from_tour(&c.tour()).unwrap(), c.clone());
        prop_assert_eq!(c.tour()[0], 1);
    }

    #[test]
    fn completion_restricts_back(jc in j_circuit()) {
        let c = complete_j_circuit(&jc).unwrap();
        prop_assert_eq!(c.restrict(&jc.indices()), jc);
    }

    #[test]
    fn dominance_is_antisymmetric(
        a in circuit(7),
        b in circuit(7),
        j in subsequence((1..=7).collect::<Vec<_>>(), 1..=4),
        mask in 0u32..16,
    ) {
        let plus: Vec<usize> = j.iter().enumerate().filter(|(t, _)| mask >> t & 1 == 1).map(|(_, &i)| i).collect();
        let minus: Vec<usize> = j.iter().copied().filter(|i| !plus.contains(i)).collect();
        let signs = SignPartition::new(plus, minus).unwrap();
        let (x, y) = (a.restrict(&j), b.restrict(&j));
        if dominates(&x, &y, &signs).unwrap() && dominates(&y, &x, &signs).unwrap() {
            prop_assert_eq!(x, y);
        }
    }

    #[test]
    fn validity_through_undominated_j_circuits(ineq in inequality(7, 4)) {
        let u = Domain::unit(7).unwrap();
        let got = check_validity(&u, &ineq, &Caps::default()).unwrap().valid;
        prop_assert_eq!(got, oracle_valid(&ineq, u.values()));
    }

    #[test]
    fn validity_on_general_domains(d in domain(6), ineq in inequality(6, 3)) {
        let got = check_validity(&d, &ineq, &Caps::default()).unwrap().valid;
        prop_assert_eq!(got, oracle_valid(&ineq, d.values()));
    }

    #[test]
    fn implied_ordering_regenerates_undominated(
        n in 4usize..=7,
        j in subsequence((1..=7).collect::<Vec<_>>(), 1..=4),
        mask in 0u32..16,
    ) {
        let j: Vec<usize> = j.into_iter().filter(|&i| i <= n).collect();
        prop_assume!(!j.is_empty());
        let plus: Vec<usize> = j.iter().enumerate().filter(|(t, _)| mask >> t & 1 == 1).map(|(_, &i)| i).collect();
        let minus: Vec<usize> = j.iter().copied().filter(|i| !plus.contains(i)).collect();
        let signs = SignPartition::new(plus, minus).unwrap();
        let d = Domain::unit(n).unwrap();
        for x in undominated_j_circuits(&d, &j, &signs, &Caps::default()).unwrap() {
            let trace = implied_ordering(&d, &x, &signs).unwrap();
            prop_assert!(trace.matches_input);
            prop_assert_eq!(trace.greedy_result, x);
        }
    }

    #[test]
    fn arc_mapping_preserves_lhs(d in domain(6), ineq in inequality(6, 6), c in circuit(6)) {
        let arc = map_to_arc_model(&d, &ineq).unwrap();
        let direct = ineq.lhs(&values_of(c.successors(), d.values())).unwrap();
        prop_assert_eq!(arc.lhs(&incidence_matrix(&c)).unwrap(), direct);
    }

    #[test]
    fn separation_is_sound_and_deterministic(xbar in proptest::collection::vec(rational(), 7)) {
        let xbar: Vec<Rational> = xbar.into_iter().map(|v| v.abs() * ratio(1, 2)).collect();
        let q = QueryPoint::unit(xbar.clone()).unwrap();
        let r = separate_all(&q);
        for cut in &r.cuts {
            prop_assert!(cut.inequality.lhs(&xbar).unwrap() < *cut.inequality.rhs());
            prop_assert!(oracle_valid(&cut.inequality, q.domain().values()));
        }
        prop_assert_eq!(separate_all(&q).cuts, r.cuts);
    }
}
