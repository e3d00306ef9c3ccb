//! Brute-force enumeration of circuits and `J`-circuits, completion of a
//! `J`-circuit to a full circuit, and the dimension of `H_n(v)`.

use crate::caps::{Caps, MAX_J_TUPLE_SCAN};
use crate::circuit::{Circuit, Domain, JCircuit, PartialSuccessors};
use crate::error::{input, resource, Result};
use crate::linalg::AffineRank;
use crate::par;

/// `(n-1)!`, saturating.
pub fn circuit_count(n: usize) -> u128 {
    (1..n as u128).fold(1u128, |acc, k| acc.saturating_mul(k))
}

/// All circuits over `domain`, ordered lexicographically by tour.
pub fn enumerate_circuits(domain: &Domain, caps: &Caps) -> Result<Vec<Circuit>> {
    let n = domain.n();
    if n > caps.circuits {
        return resource(format!(
            "circuit enumeration for n = {n} exceeds cap {} ({} circuits)",
            caps.circuits,
            circuit_count(n)
        ));
    }
    let seconds: Vec<usize> = (2..=n).collect();
    Ok(par::flat_map(&seconds, |&second| {
        let mut rest: Vec<usize> = (2..=n).filter(|&k| k != second).collect();
        let mut out = Vec::new();
        loop {
            let mut succ = vec![0; n];
            succ[0] = second;
            let mut prev = second;
            for &t in &rest {
                succ[prev - 1] = t;
                prev = t;
            }
            succ[prev - 1] = 1;
            out.push(Circuit::from_successors_unchecked(succ));
            if !next_permutation(&mut rest) {
                break;
            }
        }
        out
    }))
}

/// Advances to the next lexicographic permutation; false after the last.
pub(crate) fn next_permutation(items: &mut [usize]) -> bool {
    if items.len() < 2 {
        return false;
    }
    let Some(i) = (0..items.len() - 1).rev().find(|&i| items[i] < items[i + 1]) else {
        return false;
    };
    let j = (i + 1..items.len()).rev().find(|&j| items[j] > items[i]).unwrap();
    items.swap(i, j);
    items[i + 1..].reverse();
    true
}

pub(crate) fn check_index_set(n: usize, indices: &[usize]) -> Result<()> {
    if indices.windows(2).any(|w| w[0] >= w[1]) {
        return input(format!("index set {indices:?} must be strictly increasing"));
    }
    if let Some(&j) = indices.iter().find(|&&j| j == 0 || j > n) {
        return input(format!("index {j} outside 1..={n}"));
    }
    Ok(())
}

fn falling_factorial(n: usize, k: usize) -> u128 {
    (0..k).fold(1u128, |acc, t| acc.saturating_mul((n - t) as u128))
}

/// Every `J`-circuit on the sorted index set `indices`, in lexicographic
/// order of the value tuple.
pub fn enumerate_j_circuits(domain: &Domain, indices: &[usize], caps: &Caps) -> Result<Vec<JCircuit>> {
    let n = domain.n();
    check_index_set(n, indices)?;
    let m = indices.len();
    if m > caps.j_tuples {
        return resource(format!("|J| = {m} exceeds the J-circuit cap {}", caps.j_tuples));
    }
    if falling_factorial(n, m) > MAX_J_TUPLE_SCAN {
        return resource(format!("J-circuit scan for n = {n}, |J| = {m} is too large"));
    }
    if m == 0 {
        return Ok(vec![JCircuit::from_sorted_unchecked(n, Vec::new())]);
    }
    let firsts: Vec<usize> = (1..=n).filter(|&k| k != indices[0]).collect();
    Ok(par::flat_map(&firsts, |&first| {
        let mut partial = PartialSuccessors::new(n);
        partial.assign(indices[0], first);
        let mut chosen = vec![first];
        let mut out = Vec::new();
        extend_j_circuits(n, indices, &mut partial, &mut chosen, &mut out);
        out
    }))
}

fn extend_j_circuits(
    n: usize,
    indices: &[usize],
    partial: &mut PartialSuccessors,
    chosen: &mut Vec<usize>,
    out: &mut Vec<JCircuit>,
) {
    let depth = chosen.len();
    if depth == indices.len() {
        let entries = indices.iter().copied().zip(chosen.iter().copied()).collect();
        out.push(JCircuit::from_sorted_unchecked(n, entries));
        return;
    }
    let j = indices[depth];
    for k in 1..=n {
        if partial.is_used(k) || partial.would_close(j, k) {
            continue;
        }
        let mut next = partial.clone();
        next.assign(j, k);
        chosen.push(k);
        extend_j_circuits(n, indices, &mut next, chosen, out);
        chosen.pop();
    }
}

/// The directed graph used to complete a `J`-circuit: an edge `j -> x_j`
/// for every assigned index, plus the chain `i_1 -> ... -> i_r` through the
/// vertices that appear neither as an assigned index nor as an assigned
/// value.
#[derive(Debug, Clone)]
pub struct ChainGraph {
    n: usize,
    next: Vec<usize>,
    unused: Vec<usize>,
}

impl ChainGraph {
    pub fn new(jc: &JCircuit) -> ChainGraph {
        let n = jc.n();
        let mut next = vec![0usize; n + 1];
        let mut touched = vec![false; n + 1];
        for &(j, k) in jc.entries() {
            next[j] = k;
            touched[j] = true;
            touched[k] = true;
        }
        let unused: Vec<usize> = (1..=n).filter(|&v| !touched[v]).collect();
        for w in unused.windows(2) {
            next[w[0]] = w[1];
        }
        ChainGraph { n, next, unused }
    }

    /// Maximal vertex-disjoint paths. Paths through assigned edges come
    /// first, ordered by head vertex; the unused-value chain comes last.
    pub fn chains(&self) -> Vec<Vec<usize>> {
        let mut has_pred = vec![false; self.n + 1];
        for v in 1..=self.n {
            if self.next[v] != 0 {
                has_pred[self.next[v]] = true;
            }
        }
        let unused_head = self.unused.first().copied();
        let mut chains: Vec<Vec<usize>> = Vec::new();
        let mut tail_chain = None;
        for head in (1..=self.n).filter(|&v| !has_pred[v]) {
            let mut path = vec![head];
            let mut cur = head;
            while self.next[cur] != 0 {
                cur = self.next[cur];
                path.push(cur);
            }
            if Some(head) == unused_head {
                tail_chain = Some(path);
            } else {
                chains.push(path);
            }
        }
        chains.extend(tail_chain);
        if chains.is_empty() && self.n > 0 {
            // every vertex has a predecessor: the assignment is already a
            // hamiltonian cycle, read off from vertex 1
            let mut cycle = vec![1];
            let mut cur = self.next[1];
            while cur != 1 {
                cycle.push(cur);
                cur = self.next[cur];
            }
            chains.push(cycle);
        }
        chains
    }
}

/// A circuit agreeing with `jc` on its indices, built by linking the
/// maximal chains of [`ChainGraph`] end to start in [`ChainGraph::chains`]
/// order and closing the cycle.
pub fn complete_j_circuit(jc: &JCircuit) -> Result<Circuit> {
    let n = jc.n();
    // revalidates the invariant for values built elsewhere
    let checked = JCircuit::new(n, jc.entries().iter().copied())?;
    let order: Vec<usize> = ChainGraph::new(&checked).chains().concat();
    debug_assert_eq!(order.len(), n);
    let mut succ = vec![0usize; n];
    for (t, &v) in order.iter().enumerate() {
        succ[v - 1] = order[(t + 1) % n];
    }
    Circuit::from_successors(succ)
}

/// The `n` affinely independent circuits whose tours are `v_1` followed by
/// the cyclic shifts of `v_2..v_n`, plus the first tour with its last two
/// entries swapped. Requires `n >= 4`.
pub fn dimension_witnesses(domain: &Domain) -> Result<Vec<Circuit>> {
    let n = domain.n();
    if n < 4 {
        return input(format!("dimension witnesses need n >= 4, got n = {n}"));
    }
    let tail: Vec<usize> = (2..=n).collect();
    let mut tours: Vec<Vec<usize>> = (0..n - 1)
        .map(|shift| {
            let mut tour = vec![1];
            tour.extend(tail[shift..].iter().chain(&tail[..shift]));
            tour
        })
        .collect();
    let mut swapped = tours[0].clone();
    swapped.swap(n - 2, n - 1);
    tours.push(swapped);
    tours.iter().map(|t| Circuit::from_tour(t)).collect()
}

/// Dimension of `H_n(v)`. Within the circuit cap this is the affine rank of
/// all circuits minus one; above it (n >= 4) the witnesses give rank `n`
/// and the affine hull equation caps the dimension at `n - 1`.
pub fn polytope_dimension(domain: &Domain, caps: &Caps) -> Result<usize> {
    let n = domain.n();
    if n <= caps.circuits {
        let mut acc = AffineRank::new(n);
        for c in enumerate_circuits(domain, caps)? {
            acc.push(&c.values(domain))?;
            if acc.rank() == n {
                break;
            }
        }
        return Ok(acc.rank() - 1);
    }
    if n < 4 {
        return resource(format!("n = {n} is above the circuit cap {}", caps.circuits));
    }
    let mut acc = AffineRank::new(n);
    for c in dimension_witnesses(domain)? {
        acc.push(&c.values(domain))?;
    }
    debug_assert_eq!(acc.rank(), n);
    Ok(acc.rank() - 1)
}
