use std::fmt;
use std::ops::RangeInclusive;

use itertools::Itertools;
use serde::{Deserialize, Serialize};

use super::inequality::LinearInequality;
use crate::circuit::Domain;
use crate::error::{input, Result};
use crate::rational::{int, Rational};

/// The implemented facet families.
///
/// `TwoTerm5` and `TwoTerm6` are `<=` inequalities and are stored negated.
/// The `Level*` families form a hierarchy over the unit domain `1..=n`,
/// indexed by `m`; their tails are index sets drawn from `m+1..=n`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum FamilyTag {
    Permutation,
    #[serde(rename = "two_term_1")]
    TwoTerm1,
    #[serde(rename = "two_term_2")]
    TwoTerm2,
    #[serde(rename = "two_term_3")]
    TwoTerm3,
    #[serde(rename = "two_term_5")]
    TwoTerm5,
    #[serde(rename = "two_term_6")]
    TwoTerm6,
    Level0,
    Level1a,
    Level1b,
    #[serde(rename = "level2_10")]
    Level2_10,
    #[serde(rename = "level2_11")]
    Level2_11,
    #[serde(rename = "level2_12")]
    Level2_12,
    #[serde(rename = "level2_13")]
    Level2_13,
    #[serde(rename = "level2_14")]
    Level2_14,
}

impl FamilyTag {
    pub const ALL: [FamilyTag; 14] = [
        FamilyTag::Permutation,
        FamilyTag::TwoTerm1,
        FamilyTag::TwoTerm2,
        FamilyTag::TwoTerm3,
        FamilyTag::TwoTerm5,
        FamilyTag::TwoTerm6,
        FamilyTag::Level0,
        FamilyTag::Level1a,
        FamilyTag::Level1b,
        FamilyTag::Level2_10,
        FamilyTag::Level2_11,
        FamilyTag::Level2_12,
        FamilyTag::Level2_13,
        FamilyTag::Level2_14,
    ];

    pub const HIERARCHY: [FamilyTag; 8] = [
        FamilyTag::Level0,
        FamilyTag::Level1a,
        FamilyTag::Level1b,
        FamilyTag::Level2_10,
        FamilyTag::Level2_11,
        FamilyTag::Level2_12,
        FamilyTag::Level2_13,
        FamilyTag::Level2_14,
    ];

    pub fn name(self) -> &'static str {
        match self {
            FamilyTag::Permutation => "permutation",
            FamilyTag::TwoTerm1 => "two_term_1",
            FamilyTag::TwoTerm2 => "two_term_2",
            FamilyTag::TwoTerm3 => "two_term_3",
            FamilyTag::TwoTerm5 => "two_term_5",
            FamilyTag::TwoTerm6 => "two_term_6",
            FamilyTag::Level0 => "level0",
            FamilyTag::Level1a => "level1a",
            FamilyTag::Level1b => "level1b",
            FamilyTag::Level2_10 => "level2_10",
            FamilyTag::Level2_11 => "level2_11",
            FamilyTag::Level2_12 => "level2_12",
            FamilyTag::Level2_13 => "level2_13",
            FamilyTag::Level2_14 => "level2_14",
        }
    }

    pub fn from_name(name: &str) -> Option<FamilyTag> {
        FamilyTag::ALL.into_iter().find(|t| t.name() == name)
    }

    pub fn is_hierarchy(self) -> bool {
        FamilyTag::HIERARCHY.contains(&self)
    }

    /// Number of tail indices for a hierarchy member at `m`.
    pub fn tail_size(self, m: usize) -> Option<usize> {
        match self {
            FamilyTag::Level0 => Some(m),
            FamilyTag::Level1a | FamilyTag::Level1b => Some(m - 1),
            FamilyTag::Level2_10
            | FamilyTag::Level2_11
            | FamilyTag::Level2_12
            | FamilyTag::Level2_13
            | FamilyTag::Level2_14 => Some(m - 2),
            _ => None,
        }
    }

    /// The values of `m` a hierarchy family is defined for at size `n`.
    pub fn m_range(self, n: usize) -> Option<RangeInclusive<usize>> {
        let half = n.div_ceil(2);
        let half_plus = (n + 1).div_ceil(2);
        match self {
            // a tail of m indices above m needs m <= n/2
            FamilyTag::Level0 => Some(2..=n / 2),
            FamilyTag::Level1a => Some(3..=half),
            FamilyTag::Level1b => Some(2..=half),
            FamilyTag::Level2_10 | FamilyTag::Level2_11 => Some(4..=half_plus),
            FamilyTag::Level2_12 | FamilyTag::Level2_13 | FamilyTag::Level2_14 => Some(3..=half_plus),
            _ => None,
        }
    }

    /// Coefficients on `(x_{m-1}, x_m, tail)` and the right-hand side at `m`.
    fn hierarchy_shape(self, m: usize) -> (i64, i64, i64, Rational) {
        let mi = m as i64;
        match self {
            FamilyTag::Level0 => (0, 0, 1, int(mi * (mi + 1) / 2)),
            FamilyTag::Level1a => (0, 1, 1, int(mi * (mi + 1) / 2)),
            FamilyTag::Level1b => (0, 1, 2, int(mi * mi + 1)),
            FamilyTag::Level2_10 => (1, 1, 1, int(mi * (mi + 1) / 2)),
            FamilyTag::Level2_11 => (2, 1, 2, int(mi * mi + 1)),
            FamilyTag::Level2_12 => (2, 1, 4, int(mi * (2 * mi - 3) + 5)),
            FamilyTag::Level2_13 => (3, 2, 4, int(mi * (2 * mi - 1) + 4)),
            FamilyTag::Level2_14 => (3, 2, 5, int(5 * mi * (mi - 1) / 2 + 6)),
            _ => unreachable!("not a hierarchy family"),
        }
    }
}

impl fmt::Display for FamilyTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// A family plus the parameters that pick one member: `J` for the
/// permutation family, `(i, j)` or `i` for two-term families, the tail for
/// hierarchy families.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct FamilyId {
    pub tag: FamilyTag,
    pub m: Option<usize>,
    pub indices: Vec<usize>,
}

impl fmt::Display for FamilyId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.tag)?;
        if let Some(m) = self.m {
            write!(f, "[m={m}]")?;
        }
        write!(f, "{:?}", self.indices)
    }
}

/// A constructed family member. `theorem_scope_ok` records whether the
/// member lies in the range where the family is proven facet-defining.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FamilyMember {
    pub inequality: LinearInequality,
    pub family: FamilyId,
    pub theorem_scope_ok: bool,
}

/// `sum_{j in J} x_j >= v_1 + ... + v_|J|`.
pub fn make_permutation_inequality(domain: &Domain, indices: &[usize]) -> Result<FamilyMember> {
    let n = domain.n();
    let mut j: Vec<usize> = indices.to_vec();
    j.sort_unstable();
    j.dedup();
    if j.len() != indices.len() {
        return input("J has repeated indices");
    }
    if j.is_empty() || j.len() > n - 1 {
        return input(format!("|J| must lie in 1..={}", n - 1));
    }
    if j[0] == 0 || j[j.len() - 1] > n {
        return input(format!("J must lie in 1..={n}"));
    }
    let inequality = LinearInequality::new(n, j.iter().map(|&i| (i, int(1))), domain.prefix_sum(j.len()))?;
    Ok(FamilyMember {
        inequality,
        theorem_scope_ok: j[0] > 2 && j.len() + 4 <= n,
        family: FamilyId { tag: FamilyTag::Permutation, m: None, indices: j },
    })
}

fn need_n(domain: &Domain, min: usize) -> Result<()> {
    if domain.n() < min {
        return input(format!("family needs n >= {min}"));
    }
    Ok(())
}

fn member(inequality: LinearInequality, tag: FamilyTag, indices: Vec<usize>, n: usize) -> FamilyMember {
    FamilyMember {
        inequality,
        family: FamilyId { tag, m: None, indices },
        theorem_scope_ok: n >= 6,
    }
}

/// `x_i + x_j >= v_1 + v_2` for `3 <= i < j <= n`.
pub fn two_term_1(domain: &Domain, i: usize, j: usize) -> Result<FamilyMember> {
    need_n(domain, 4)?;
    let n = domain.n();
    let (i, j) = (i.min(j), i.max(j));
    if i < 3 || i == j || j > n {
        return input(format!("two_term_1 needs 3 <= i < j <= {n}"));
    }
    let ineq = LinearInequality::new(n, [(i, int(1)), (j, int(1))], domain.prefix_sum(2))?;
    Ok(member(ineq, FamilyTag::TwoTerm1, vec![i, j], n))
}

/// `(v_3 - v_1) x_1 + (v_3 - v_2) x_2 >= v_3^2 - v_1 v_2`.
pub fn two_term_2(domain: &Domain) -> Result<FamilyMember> {
    need_n(domain, 3)?;
    let v = |k| domain.value(k).clone();
    let ineq = LinearInequality::new(
        domain.n(),
        [(1, v(3) - v(1)), (2, v(3) - v(2))],
        v(3) * v(3) - v(1) * v(2),
    )?;
    Ok(member(ineq, FamilyTag::TwoTerm2, vec![1, 2], domain.n()))
}

/// `(v_2 - v_1) x_2 + (v_3 - v_1) x_i >= v_2 v_3 - v_1^2` for `3 <= i <= n`.
pub fn two_term_3(domain: &Domain, i: usize) -> Result<FamilyMember> {
    need_n(domain, 3)?;
    let n = domain.n();
    if i < 3 || i > n {
        return input(format!("two_term_3 needs 3 <= i <= {n}"));
    }
    let v = |k| domain.value(k).clone();
    let ineq = LinearInequality::new(n, [(2, v(2) - v(1)), (i, v(3) - v(1))], v(2) * v(3) - v(1) * v(1))?;
    Ok(member(ineq, FamilyTag::TwoTerm3, vec![i], n))
}

/// `(v_{n-1} - v_{n-2}) x_{n-1} + (v_n - v_{n-2}) x_n <= v_n v_{n-1} - v_{n-2}^2`.
pub fn two_term_5(domain: &Domain) -> Result<FamilyMember> {
    need_n(domain, 3)?;
    let n = domain.n();
    let v = |k| domain.value(k).clone();
    let ineq = LinearInequality::at_most(
        n,
        [(n - 1, v(n - 1) - v(n - 2)), (n, v(n) - v(n - 2))],
        v(n) * v(n - 1) - v(n - 2) * v(n - 2),
    )?;
    Ok(member(ineq, FamilyTag::TwoTerm5, vec![n - 1, n], n))
}

/// `(v_n - v_{n-2}) x_i + (v_n - v_{n-1}) x_{n-1} <= v_n^2 - v_{n-1} v_{n-2}`
/// for `1 <= i <= n-2`.
pub fn two_term_6(domain: &Domain, i: usize) -> Result<FamilyMember> {
    need_n(domain, 3)?;
    let n = domain.n();
    if i < 1 || i > n - 2 {
        return input(format!("two_term_6 needs 1 <= i <= {}", n - 2));
    }
    let v = |k| domain.value(k).clone();
    let ineq = LinearInequality::at_most(
        n,
        [(i, v(n) - v(n - 2)), (n - 1, v(n) - v(n - 1))],
        v(n) * v(n) - v(n - 1) * v(n - 2),
    )?;
    Ok(member(ineq, FamilyTag::TwoTerm6, vec![i], n))
}

/// Every member of the five two-term families. Requires `n >= 6`.
pub fn make_two_term_inequalities(domain: &Domain) -> Result<Vec<FamilyMember>> {
    need_n(domain, 6)?;
    let n = domain.n();
    let mut out = Vec::new();
    for (i, j) in (3..=n).tuple_combinations() {
        out.push(two_term_1(domain, i, j)?);
    }
    out.push(two_term_2(domain)?);
    for i in 3..=n {
        out.push(two_term_3(domain, i)?);
    }
    out.push(two_term_5(domain)?);
    for i in 1..=n - 2 {
        out.push(two_term_6(domain, i)?);
    }
    Ok(out)
}

/// One hierarchy member on the unit domain `1..=n`.
///
/// Level 0 is `sum_{tail} x >= m(m+1)/2` with `|tail| = m`; the other
/// levels put weights on `x_{m-1}`, `x_m` and the tail as listed in
/// [`FamilyTag`].
pub fn make_hierarchy_inequality(n: usize, tag: FamilyTag, m: usize, tail: &[usize]) -> Result<FamilyMember> {
    let (Some(range), true) = (tag.m_range(n), tag.is_hierarchy()) else {
        return input(format!("{tag} is not a hierarchy family"));
    };
    if !range.contains(&m) {
        return input(format!("{tag} at n = {n} needs m in {}..={}", range.start(), range.end()));
    }
    let mut tail = tail.to_vec();
    tail.sort_unstable();
    tail.dedup();
    let size = tag.tail_size(m).expect("hierarchy family");
    if tail.len() != size {
        return input(format!("{tag} at m = {m} needs {size} distinct tail indices"));
    }
    if tail.iter().any(|&t| t <= m || t > n) {
        return input(format!("tail indices must lie in {}..={n}", m + 1));
    }
    let (a_prev, a_m, a_tail, rhs) = tag.hierarchy_shape(m);
    let mut coeffs: Vec<(usize, Rational)> = tail.iter().map(|&t| (t, int(a_tail))).collect();
    if a_m != 0 {
        coeffs.push((m, int(a_m)));
    }
    if a_prev != 0 {
        coeffs.push((m - 1, int(a_prev)));
    }
    Ok(FamilyMember {
        inequality: LinearInequality::new(n, coeffs, rhs)?,
        family: FamilyId { tag, m: Some(m), indices: tail },
        theorem_scope_ok: n >= m + 4,
    })
}

/// All members of one hierarchy family at size `n`, by `m` then tail.
pub fn hierarchy_members(n: usize, tag: FamilyTag) -> Result<Vec<FamilyMember>> {
    let Some(range) = tag.m_range(n) else {
        return input(format!("{tag} is not a hierarchy family"));
    };
    let mut out = Vec::new();
    for m in range {
        let size = tag.tail_size(m).expect("hierarchy family");
        for tail in (m + 1..=n).combinations(size) {
            out.push(make_hierarchy_inequality(n, tag, m, &tail)?);
        }
    }
    Ok(out)
}
