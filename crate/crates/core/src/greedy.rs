//! Undominated `J`-circuits.
//!
//! `x(J)` dominates `y(J)` with respect to `(J_+, J_-)` when `x_j <= y_j` on
//! `J_+` and `x_j >= y_j` on `J_-`. An inequality with support `J` is valid
//! for `H_n(v)` exactly when the undominated `J`-circuits for its sign
//! pattern satisfy it, so these sets drive validity and facet checks.
//!
//! The greedy generator walks the indices of `J` in a fixed order and gives
//! each the smallest (plus) or largest (minus) value that keeps the partial
//! assignment acyclic. Running it over every ordering yields exactly the
//! undominated set; [`undominated_bruteforce`] is the independent check.

use std::collections::BTreeSet;

use crate::caps::Caps;
use crate::circuit::{Domain, JCircuit, PartialSuccessors, SignPartition};
use crate::enumeration::{check_index_set, enumerate_j_circuits, next_permutation};
use crate::error::{input, resource, Error, Result};
use crate::par;

/// One greedy pass along `ordering`. `ordering` must be a permutation of
/// the support of `signs`.
pub fn greedy_j_circuit(domain: &Domain, signs: &SignPartition, ordering: &[usize]) -> Result<JCircuit> {
    let n = domain.n();
    let mut sorted = ordering.to_vec();
    sorted.sort_unstable();
    check_index_set(n, &sorted)?;
    signs.check_covers(&sorted)?;
    greedy_entries(n, signs, ordering)
        .map(|entries| JCircuit::from_sorted_unchecked(n, entries))
        .ok_or_else(|| Error::Infeasible(format!("no acyclic value left along ordering {ordering:?}")))
}

/// Sorted entries of the greedy result, or `None` when some step has no
/// feasible value. Any acyclic partial assignment leaves a feasible value
/// (with `|J| = n` the last step closes the hamiltonian cycle), so `None`
/// marks a broken invariant.
fn greedy_entries(n: usize, signs: &SignPartition, ordering: &[usize]) -> Option<Vec<(usize, usize)>> {
    let mut partial = PartialSuccessors::new(n);
    let mut entries = Vec::with_capacity(ordering.len());
    for &j in ordering {
        let k = if signs.is_plus(j) {
            min_feasible(&partial, n, j)?
        } else {
            max_feasible(&partial, n, j)?
        };
        partial.assign(j, k);
        entries.push((j, k));
    }
    entries.sort_unstable();
    Some(entries)
}

fn min_feasible(partial: &PartialSuccessors, n: usize, j: usize) -> Option<usize> {
    (1..=n).find(|&k| !partial.is_used(k) && !partial.would_close(j, k))
}

fn max_feasible(partial: &PartialSuccessors, n: usize, j: usize) -> Option<usize> {
    (1..=n).rev().find(|&k| !partial.is_used(k) && !partial.would_close(j, k))
}

/// Whether `a` dominates `b` with respect to `signs` (reflexive).
pub fn dominates(a: &JCircuit, b: &JCircuit, signs: &SignPartition) -> Result<bool> {
    let indices = a.indices();
    if indices != b.indices() || a.n() != b.n() {
        return input("dominance needs J-circuits over the same J and domain");
    }
    signs.check_covers(&indices)?;
    Ok(dominates_unchecked(a, b, signs))
}

fn dominates_unchecked(a: &JCircuit, b: &JCircuit, signs: &SignPartition) -> bool {
    a.entries()
        .iter()
        .zip(b.entries())
        .all(|(&(j, x), &(_, y))| if signs.is_plus(j) { x <= y } else { x >= y })
}

fn check_ordering_cap(m: usize, caps: &Caps) -> Result<()> {
    if m > caps.orderings {
        return resource(format!(
            "|J| = {m} exceeds the ordering cap {} ({m}! orderings)",
            caps.orderings
        ));
    }
    Ok(())
}

/// The greedy result for every ordering of `indices`, orderings in
/// lexicographic order.
pub fn greedy_by_ordering(
    domain: &Domain,
    indices: &[usize],
    signs: &SignPartition,
    caps: &Caps,
) -> Result<Vec<(Vec<usize>, JCircuit)>> {
    let n = domain.n();
    check_index_set(n, indices)?;
    signs.check_covers(indices)?;
    check_ordering_cap(indices.len(), caps)?;
    let mut orderings = Vec::new();
    let mut current = indices.to_vec();
    loop {
        orderings.push(current.clone());
        if !next_permutation(&mut current) {
            break;
        }
    }
    let results = par::map(&orderings, |ord| greedy_entries(n, signs, ord));
    orderings
        .into_iter()
        .zip(results)
        .map(|(ord, entries)| match entries {
            Some(e) => Ok((ord, JCircuit::from_sorted_unchecked(n, e))),
            None => Err(Error::Infeasible(format!("no acyclic value left along ordering {ord:?}"))),
        })
        .collect()
}

/// The undominated `J`-circuits for `signs`, generated greedily over all
/// `|J|!` orderings and deduplicated (sorted canonically).
pub fn undominated_j_circuits(
    domain: &Domain,
    indices: &[usize],
    signs: &SignPartition,
    caps: &Caps,
) -> Result<Vec<JCircuit>> {
    let set: BTreeSet<JCircuit> = greedy_by_ordering(domain, indices, signs, caps)?
        .into_iter()
        .map(|(_, jc)| jc)
        .collect();
    Ok(set.into_iter().collect())
}

/// The undominated `J`-circuits by exhaustive filtering: keep `x(J)` unless
/// some other `J`-circuit dominates it.
pub fn undominated_bruteforce(
    domain: &Domain,
    indices: &[usize],
    signs: &SignPartition,
    caps: &Caps,
) -> Result<Vec<JCircuit>> {
    signs.check_covers(indices)?;
    let all = enumerate_j_circuits(domain, indices, caps)?;
    Ok(par::filter(&all, |x| {
        !all.iter().any(|y| y != x && dominates_unchecked(y, x, signs))
    }))
}

/// One row of the implied-ordering computation. Positions are 1-based
/// domain positions (`Some(k)` means `v_k`).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ImpliedOrderingStep {
    pub step: usize,
    pub r: usize,
    pub s: usize,
    pub i_r: Option<usize>,
    pub j_s: Option<usize>,
    pub v_min: Option<usize>,
    pub v_max: Option<usize>,
    pub chosen: usize,
    pub assigned: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ImpliedOrderingTrace {
    pub ordering: Vec<usize>,
    pub greedy_result: JCircuit,
    pub steps: Vec<ImpliedOrderingStep>,
    /// Whether `greedy_result` reproduces the input `J`-circuit.
    pub matches_input: bool,
}

/// Builds an ordering along which the greedy pass regenerates `xbar` when
/// `xbar` is undominated.
///
/// `J_+` is walked by increasing value of `xbar`, `J_-` by decreasing value.
/// At each step the next plus index is taken if its smallest feasible value
/// agrees with `xbar` (or no minus index is left); otherwise the next minus
/// index takes its largest feasible value. Dominated inputs still get a
/// trace, with `matches_input == false`.
pub fn implied_ordering(domain: &Domain, xbar: &JCircuit, signs: &SignPartition) -> Result<ImpliedOrderingTrace> {
    let n = domain.n();
    if xbar.n() != n {
        return input(format!("J-circuit is over n = {}, domain has n = {n}", xbar.n()));
    }
    let xbar = JCircuit::new(n, xbar.entries().iter().copied())?;
    signs.check_covers(&xbar.indices())?;
    let value = |j: usize| xbar.get(j).expect("j in J");
    let mut plus = signs.plus().to_vec();
    plus.sort_by_key(|&j| value(j));
    let mut minus = signs.minus().to_vec();
    minus.sort_by_key(|&j| std::cmp::Reverse(value(j)));
    let (p, q) = (plus.len(), minus.len());

    let mut partial = PartialSuccessors::new(n);
    let (mut r, mut s) = (0usize, 0usize);
    let mut steps = Vec::with_capacity(p + q);
    let mut ordering = Vec::with_capacity(p + q);
    let mut entries = Vec::with_capacity(p + q);
    for step in 1..=p + q {
        let (r_shown, s_shown) = (r + 1, s + 1);
        let i_r = plus.get(r).copied();
        let j_s = minus.get(s).copied();
        let v_min = i_r.and_then(|i| min_feasible(&partial, n, i));
        let v_max = j_s.and_then(|j| max_feasible(&partial, n, j));
        let take_plus = i_r.is_some() && (v_min == i_r.map(value) || j_s.is_none());
        let (chosen, assigned) = if take_plus {
            r += 1;
            (i_r.unwrap(), v_min)
        } else {
            s += 1;
            (j_s.expect("minus index left"), v_max)
        };
        let assigned = assigned.ok_or_else(|| {
            Error::Infeasible(format!("no acyclic value for index {chosen} at step {step}"))
        })?;
        partial.assign(chosen, assigned);
        ordering.push(chosen);
        entries.push((chosen, assigned));
        steps.push(ImpliedOrderingStep {
            step,
            r: r_shown,
            s: s_shown,
            i_r,
            j_s,
            v_min,
            v_max,
            chosen,
            assigned,
        });
    }
    entries.sort_unstable();
    let greedy_result = JCircuit::from_sorted_unchecked(n, entries);
    let matches_input = greedy_result == xbar;
    Ok(ImpliedOrderingTrace {
        ordering,
        greedy_result,
        steps,
        matches_input,
    })
}
