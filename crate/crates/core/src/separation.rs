//! Separation: given a point `xbar`, find violated members of the
//! implemented facet families.
//!
//! Every separator works from one sort of the query values (ties broken by
//! index) and finds a violated member of its family whenever one exists.
//! [`separate_all`] merges the per-family results by normalized form.

use std::collections::BTreeMap;

use crate::circuit::Domain;
use crate::error::{input, Error, Result};
use crate::facets::{
    make_hierarchy_inequality, make_permutation_inequality, two_term_1, two_term_2, two_term_3, two_term_5,
    two_term_6, FamilyId, FamilyMember, FamilyTag, LinearInequality,
};
use crate::rational::{parse_list, Rational};

/// A candidate point `xbar` over a domain. The point need not lie in the
/// affine hull of the polytope.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QueryPoint {
    domain: Domain,
    xbar: Vec<Rational>,
}

impl QueryPoint {
    pub fn new(domain: Domain, xbar: Vec<Rational>) -> Result<Self> {
        if xbar.len() != domain.n() {
            return input(format!("point has {} values, expected n = {}", xbar.len(), domain.n()));
        }
        Ok(QueryPoint { domain, xbar })
    }

    /// A point over the unit domain `1..=n`, `n` taken from the point.
    pub fn unit(xbar: Vec<Rational>) -> Result<Self> {
        QueryPoint::new(Domain::unit(xbar.len())?, xbar)
    }

    /// Parses a comma-separated list of rationals or decimals.
    pub fn parse(domain: Domain, text: &str) -> Result<Self> {
        QueryPoint::new(domain, parse_list(text)?)
    }

    pub fn domain(&self) -> &Domain {
        &self.domain
    }

    pub fn xbar(&self) -> &[Rational] {
        &self.xbar
    }

    pub fn n(&self) -> usize {
        self.xbar.len()
    }

    /// Indices `lo..=n` sorted by ascending `xbar`, ties by index.
    fn sorted_from(&self, lo: usize) -> Vec<usize> {
        let mut idx: Vec<usize> = (lo..=self.n()).collect();
        idx.sort_by(|&a, &b| self.xbar[a - 1].cmp(&self.xbar[b - 1]).then(a.cmp(&b)));
        idx
    }
}

/// A violated inequality. `families` lists every family member that
/// produced this normalized form.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Cut {
    pub inequality: LinearInequality,
    pub families: Vec<FamilyId>,
    pub lhs: Rational,
    /// `rhs - lhs`, always positive.
    pub violation: Rational,
    pub theorem_scope_ok: bool,
}

impl Cut {
    /// Tag of the first family in sorted order.
    pub fn family(&self) -> FamilyTag {
        self.families[0].tag
    }

    pub fn tags(&self) -> Vec<FamilyTag> {
        let mut tags: Vec<FamilyTag> = self.families.iter().map(|f| f.tag).collect();
        tags.dedup();
        tags
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct SeparationResult {
    pub cuts: Vec<Cut>,
    /// Separators that were skipped, and why.
    pub notes: Vec<String>,
}

impl SeparationResult {
    pub fn is_empty(&self) -> bool {
        self.cuts.is_empty()
    }

    pub fn inequalities(&self) -> Vec<&LinearInequality> {
        self.cuts.iter().map(|c| &c.inequality).collect()
    }

    /// Merges cuts with the same normalized form and sorts by descending
    /// violation, then by cut form.
    fn merged(cuts: Vec<Cut>, notes: Vec<String>) -> Self {
        let mut by_form: BTreeMap<LinearInequality, Cut> = BTreeMap::new();
        for cut in cuts {
            match by_form.get_mut(&cut.inequality) {
                Some(existing) => {
                    existing.families.extend(cut.families);
                    existing.families.sort();
                    existing.families.dedup();
                    existing.theorem_scope_ok |= cut.theorem_scope_ok;
                }
                None => {
                    by_form.insert(cut.inequality.clone(), cut);
                }
            }
        }
        let mut cuts: Vec<Cut> = by_form.into_values().collect();
        cuts.sort_by(|a, b| b.violation.cmp(&a.violation).then_with(|| a.inequality.cmp(&b.inequality)));
        SeparationResult { cuts, notes }
    }
}

fn violated(q: &QueryPoint, member: FamilyMember) -> Result<Option<Cut>> {
    let lhs = member.inequality.lhs(q.xbar())?;
    if lhs >= *member.inequality.rhs() {
        return Ok(None);
    }
    Ok(Some(Cut {
        violation: member.inequality.rhs() - &lhs,
        lhs,
        inequality: member.inequality,
        families: vec![member.family],
        theorem_scope_ok: member.theorem_scope_ok,
    }))
}

/// Permutation family over `J` within `3..=n`: sort those indices by
/// `xbar` and test prefixes of growing size, stopping at the first violated
/// one. If any member is violated, the prefix of the same size is too.
pub fn separate_permutation(q: &QueryPoint) -> Result<SeparationResult> {
    let n = q.n();
    if n < 3 {
        return input("permutation separation needs n >= 3");
    }
    let order = q.sorted_from(3);
    let mut sum = Rational::from_integer(0.into());
    for m in 1..=order.len() {
        sum += &q.xbar[order[m - 1] - 1];
        if sum < q.domain.prefix_sum(m) {
            let member = make_permutation_inequality(&q.domain, &order[..m])?;
            let cut = violated(q, member)?.expect("prefix is violated");
            return Ok(SeparationResult::merged(vec![cut], Vec::new()));
        }
    }
    Ok(SeparationResult::default())
}

/// The five two-term families. Needs `n >= 6`.
pub fn separate_two_term(q: &QueryPoint) -> Result<SeparationResult> {
    let n = q.n();
    if n < 6 {
        return input("two-term separation needs n >= 6");
    }
    let d = &q.domain;
    let order = q.sorted_from(3);
    let mut members = vec![two_term_1(d, order[0], order[1])?, two_term_2(d)?, two_term_5(d)?];
    for i in 3..=n {
        members.push(two_term_3(d, i)?);
    }
    for i in 1..=n - 2 {
        members.push(two_term_6(d, i)?);
    }
    let mut cuts = Vec::new();
    for member in members {
        cuts.extend(violated(q, member)?);
    }
    Ok(SeparationResult::merged(cuts, Vec::new()))
}

/// Level-1 and level-2 hierarchy families with their own separators
/// (`level1b`, `level2_11` to `level2_14`). For each `m` the tail is the
/// required number of smallest `xbar` values above index `m`. The other
/// hierarchy families are permutation inequalities and are found by
/// [`separate_permutation`].
pub fn separate_hierarchy(q: &QueryPoint) -> Result<SeparationResult> {
    if !q.domain.is_unit() {
        return input("hierarchy families are defined on the domain 1..=n only");
    }
    let n = q.n();
    let mut cuts = Vec::new();
    for tag in [
        FamilyTag::Level1b,
        FamilyTag::Level2_11,
        FamilyTag::Level2_12,
        FamilyTag::Level2_13,
        FamilyTag::Level2_14,
    ] {
        for m in tag.m_range(n).expect("hierarchy family") {
            let size = tag.tail_size(m).expect("hierarchy family");
            if m > n || n - m < size {
                continue;
            }
            let mut tail = q.sorted_from(m + 1);
            tail.truncate(size);
            cuts.extend(violated(q, make_hierarchy_inequality(n, tag, m, &tail)?)?);
        }
    }
    Ok(SeparationResult::merged(cuts, Vec::new()))
}

type Separator = fn(&QueryPoint) -> Result<SeparationResult>;

/// Every separator whose preconditions hold; skipped ones leave a note.
pub fn separate_all(q: &QueryPoint) -> SeparationResult {
    let separators: [(&str, Separator); 3] = [
        ("permutation", separate_permutation),
        ("two-term", separate_two_term),
        ("hierarchy", separate_hierarchy),
    ];
    let mut cuts = Vec::new();
    let mut notes = Vec::new();
    for (name, separate) in separators {
        match separate(q) {
            Ok(r) => cuts.extend(r.cuts),
            Err(Error::Input(msg) | Error::Resource(msg) | Error::Infeasible(msg)) => {
                notes.push(format!("{name} skipped: {msg}"))
            }
        }
    }
    SeparationResult::merged(cuts, notes)
}
