//! Domains, circuits, partial circuits and sign partitions.
//!
//! Vertex `i` carries the domain value `v_i`. A successor vector `x` assigns
//! to every vertex `i` the value `x_i = v_k` of the vertex `k` that follows
//! it. Internally values are tracked by their 1-based position `k` in the
//! domain, so the combinatorics never touches rational arithmetic.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::{Signed, Zero};

use crate::error::{input, Error, Result};
use crate::rational::{display_rational, int, parse_list, Rational};

/// Ordered tuple `v_1 < ... < v_n` of distinct nonnegative rationals.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Domain {
    values: Vec<Rational>,
}

impl Domain {
    pub fn new(values: Vec<Rational>) -> Result<Domain> {
        if values.len() < 2 {
            return input(format!("a domain needs at least 2 values, got {}", values.len()));
        }
        if values[0].is_negative() {
            return input("domain values must be nonnegative");
        }
        if let Some(w) = values.windows(2).find(|w| w[0] >= w[1]) {
            return input(format!(
                "domain values must be strictly increasing ({} then {})",
                display_rational(&w[0]),
                display_rational(&w[1])
            ));
        }
        Ok(Domain { values })
    }

    /// The standard domain `u = (1, ..., n)`.
    pub fn unit(n: usize) -> Result<Domain> {
        Domain::new((1..=n as i64).map(int).collect())
    }

    /// Comma separated list, e.g. `"0,2.3,3.1"`.
    pub fn parse(text: &str) -> Result<Domain> {
        Domain::new(parse_list(text)?)
    }

    pub fn n(&self) -> usize {
        self.values.len()
    }

    pub fn values(&self) -> &[Rational] {
        &self.values
    }

    /// `v_k`, 1-based.
    pub fn value(&self, k: usize) -> &Rational {
        &self.values[k - 1]
    }

    /// 1-based position of `value`, if it belongs to the domain.
    pub fn position(&self, value: &Rational) -> Option<usize> {
        self.values.binary_search(value).ok().map(|p| p + 1)
    }

    pub fn is_unit(&self) -> bool {
        self.values
            .iter()
            .enumerate()
            .all(|(i, v)| *v == int(i as i64 + 1))
    }

    /// `v_1 + ... + v_m`.
    pub fn prefix_sum(&self, m: usize) -> Rational {
        self.values[..m].iter().fold(Rational::zero(), |acc, v| acc + v)
    }

    /// `v_1 + ... + v_n`, the right-hand side of the affine hull equation.
    pub fn total(&self) -> Rational {
        self.prefix_sum(self.n())
    }

    pub(crate) fn positions_of(&self, values: &[Rational]) -> Result<Vec<usize>> {
        values
            .iter()
            .map(|v| {
                self.position(v).ok_or_else(|| {
                    Error::Input(format!("value {} is not in the domain", display_rational(v)))
                })
            })
            .collect()
    }
}

impl fmt::Display for Domain {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.values.iter().map(display_rational).collect();
        write!(f, "({})", parts.join(", "))
    }
}

/// A full successor assignment forming one hamiltonian cycle.
///
/// `successors()[i - 1] = k` means `x_i = v_k`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Circuit {
    succ: Vec<usize>,
}

impl Circuit {
    pub fn from_successors(succ: Vec<usize>) -> Result<Circuit> {
        if !is_hamiltonian(&succ) {
            return input(format!("{succ:?} is not a single hamiltonian cycle"));
        }
        Ok(Circuit { succ })
    }

    /// Builds the circuit visiting the 1-based positions of `tour` in order.
    /// The tour must be a permutation of `1..=n` that starts at 1.
    pub fn from_tour(tour: &[usize]) -> Result<Circuit> {
        let n = tour.len();
        if n == 0 || tour[0] != 1 {
            return input("a tour must start at vertex 1");
        }
        let mut seen = vec![false; n + 1];
        for &t in tour {
            if t == 0 || t > n || seen[t] {
                return input(format!("{tour:?} is not a permutation of 1..={n}"));
            }
            seen[t] = true;
        }
        let mut succ = vec![0; n];
        for (i, &t) in tour.iter().enumerate() {
            succ[t - 1] = tour[(i + 1) % n];
        }
        Ok(Circuit { succ })
    }

    /// Crate-internal constructor for successor vectors already known to be
    /// hamiltonian.
    pub(crate) fn from_successors_unchecked(succ: Vec<usize>) -> Circuit {
        debug_assert!(is_hamiltonian(&succ));
        Circuit { succ }
    }

    pub fn n(&self) -> usize {
        self.succ.len()
    }

    pub fn successors(&self) -> &[usize] {
        &self.succ
    }

    /// Position `k` with `x_i = v_k`.
    pub fn successor(&self, i: usize) -> usize {
        self.succ[i - 1]
    }

    /// The vertex order starting at vertex 1.
    pub fn tour(&self) -> Vec<usize> {
        let mut tour = Vec::with_capacity(self.n());
        let mut cur = 1;
        for _ in 0..self.n() {
            tour.push(cur);
            cur = self.succ[cur - 1];
        }
        tour
    }

    pub fn values(&self, domain: &Domain) -> Vec<Rational> {
        self.succ.iter().map(|&k| domain.value(k).clone()).collect()
    }

    /// `x(J)` for a sorted index set `J`.
    pub fn restrict(&self, indices: &[usize]) -> JCircuit {
        JCircuit {
            n: self.n(),
            entries: indices.iter().map(|&j| (j, self.succ[j - 1])).collect(),
        }
    }
}

fn is_hamiltonian(succ: &[usize]) -> bool {
    let n = succ.len();
    if n < 2 {
        return false;
    }
    let mut seen = vec![false; n + 1];
    for &k in succ {
        if k == 0 || k > n || seen[k] {
            return false;
        }
        seen[k] = true;
    }
    let mut cur = 1;
    for step in 1..=n {
        cur = succ[cur - 1];
        if cur == 1 {
            return step == n;
        }
    }
    false
}

/// A partial assignment `x(J)` with distinct values and no closed cycle.
///
/// Entries are `(j, k)` pairs meaning `x_j = v_k`, kept sorted by `j`. The
/// derived ordering compares the value tuples lexicographically, which is the
/// canonical order for `J`-circuits over a common `J`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct JCircuit {
    n: usize,
    entries: Vec<(usize, usize)>,
}

impl JCircuit {
    pub fn new(n: usize, entries: impl IntoIterator<Item = (usize, usize)>) -> Result<JCircuit> {
        let mut entries: Vec<(usize, usize)> = entries.into_iter().collect();
        entries.sort_unstable();
        let mut index_seen = vec![false; n + 1];
        let mut value_seen = vec![false; n + 1];
        for &(j, k) in &entries {
            if j == 0 || j > n || k == 0 || k > n {
                return input(format!("entry x_{j} = v_{k} is out of range for n = {n}"));
            }
            if index_seen[j] {
                return input(format!("index {j} assigned twice"));
            }
            if value_seen[k] {
                return input(format!("value v_{k} assigned twice"));
            }
            index_seen[j] = true;
            value_seen[k] = true;
        }
        if has_cycle(n, &entries) {
            return input(format!("{entries:?} closes a cycle"));
        }
        Ok(JCircuit { n, entries })
    }

    /// Pairs `indices[t]` with `positions[t]`.
    pub fn from_parts(n: usize, indices: &[usize], positions: &[usize]) -> Result<JCircuit> {
        if indices.len() != positions.len() {
            return input("index and value lists differ in length");
        }
        JCircuit::new(n, indices.iter().copied().zip(positions.iter().copied()))
    }

    pub(crate) fn from_sorted_unchecked(n: usize, entries: Vec<(usize, usize)>) -> JCircuit {
        JCircuit { n, entries }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn entries(&self) -> &[(usize, usize)] {
        &self.entries
    }

    pub fn indices(&self) -> Vec<usize> {
        self.entries.iter().map(|e| e.0).collect()
    }

    pub fn positions(&self) -> Vec<usize> {
        self.entries.iter().map(|e| e.1).collect()
    }

    pub fn get(&self, j: usize) -> Option<usize> {
        self.entries
            .binary_search_by_key(&j, |e| e.0)
            .ok()
            .map(|p| self.entries[p].1)
    }

    pub fn values(&self, domain: &Domain) -> Vec<Rational> {
        self.entries
            .iter()
            .map(|&(_, k)| domain.value(k).clone())
            .collect()
    }
}

impl fmt::Display for JCircuit {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.entries.iter().map(|&(_, k)| format!("v_{k}")).collect();
        write!(f, "({})", parts.join(","))
    }
}

/// The split `(J_+, J_-)` of an index set by coefficient sign.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct SignPartition {
    plus: Vec<usize>,
    minus: Vec<usize>,
}

impl SignPartition {
    pub fn new(plus: impl IntoIterator<Item = usize>, minus: impl IntoIterator<Item = usize>) -> Result<Self> {
        let mut plus: Vec<usize> = plus.into_iter().collect();
        let mut minus: Vec<usize> = minus.into_iter().collect();
        plus.sort_unstable();
        plus.dedup();
        minus.sort_unstable();
        minus.dedup();
        if let Some(j) = plus.iter().find(|j| minus.binary_search(j).is_ok()) {
            return input(format!("index {j} is in both J+ and J-"));
        }
        Ok(SignPartition { plus, minus })
    }

    /// `(J, ∅)`.
    pub fn all_plus(indices: &[usize]) -> Self {
        SignPartition::new(indices.iter().copied(), []).expect("disjoint")
    }

    /// `(∅, J)`.
    pub fn all_minus(indices: &[usize]) -> Self {
        SignPartition::new([], indices.iter().copied()).expect("disjoint")
    }

    /// Every split of `indices`, ordered by the bitmask of minus members.
    pub fn all_splits(indices: &[usize]) -> Vec<SignPartition> {
        (0u64..1 << indices.len())
            .map(|mask| SignPartition {
                plus: select(indices, mask, false),
                minus: select(indices, mask, true),
            })
            .collect()
    }

    pub fn plus(&self) -> &[usize] {
        &self.plus
    }

    pub fn minus(&self) -> &[usize] {
        &self.minus
    }

    pub fn is_plus(&self, j: usize) -> bool {
        self.plus.binary_search(&j).is_ok()
    }

    pub fn is_minus(&self, j: usize) -> bool {
        self.minus.binary_search(&j).is_ok()
    }

    /// `J = J_+ ∪ J_-`, sorted.
    pub fn support(&self) -> Vec<usize> {
        let mut all: Vec<usize> = self.plus.iter().chain(&self.minus).copied().collect();
        all.sort_unstable();
        all
    }

    pub(crate) fn check_covers(&self, indices: &[usize]) -> Result<()> {
        if self.support() != indices {
            return input(format!(
                "sign partition {:?}/{:?} does not partition J = {indices:?}",
                self.plus, self.minus
            ));
        }
        Ok(())
    }
}

fn select(indices: &[usize], mask: u64, bit: bool) -> Vec<usize> {
    indices
        .iter()
        .enumerate()
        .filter(|(t, _)| (mask >> t & 1 == 1) == bit)
        .map(|(_, &j)| j)
        .collect()
}

/// Incrementally built partial successor map, used wherever assignments are
/// grown one index at a time.
#[derive(Debug, Clone)]
pub(crate) struct PartialSuccessors {
    next: Vec<usize>,
    used: Vec<bool>,
}

impl PartialSuccessors {
    pub(crate) fn new(n: usize) -> Self {
        PartialSuccessors {
            next: vec![0; n + 1],
            used: vec![false; n + 1],
        }
    }

    pub(crate) fn is_used(&self, k: usize) -> bool {
        self.used[k]
    }

    /// Whether setting `x_j = v_k` would close a cycle shorter than `n`.
    /// `j` must be unassigned.
    pub(crate) fn would_close(&self, j: usize, k: usize) -> bool {
        let n = self.next.len() - 1;
        let mut cur = k;
        let mut len = 1;
        loop {
            if cur == j {
                return len < n;
            }
            match self.next[cur] {
                0 => return false,
                nxt => {
                    cur = nxt;
                    len += 1;
                }
            }
        }
    }

    pub(crate) fn assign(&mut self, j: usize, k: usize) {
        debug_assert!(self.next[j] == 0 && !self.used[k]);
        self.next[j] = k;
        self.used[k] = true;
    }
}

/// Cycle test for a partial assignment by chasing successor chains. A
/// single cycle through all `n` indices is a circuit, not a subtour.
pub(crate) fn has_cycle(n: usize, entries: &[(usize, usize)]) -> bool {
    let mut next = vec![0usize; n + 1];
    for &(j, k) in entries {
        next[j] = k;
    }
    for &(start, _) in entries {
        let mut cur = next[start];
        for len in 1..=entries.len() {
            if cur == start {
                return len < n;
            }
            if cur == 0 || next[cur] == 0 {
                break;
            }
            cur = next[cur];
        }
    }
    false
}

/// Whether `assignment` (the values `x_1..x_n`) is a circuit over `domain`.
pub fn is_circuit(assignment: &[Rational], domain: &Domain) -> Result<bool> {
    if assignment.len() != domain.n() {
        return input(format!(
            "assignment has {} entries, domain has {}",
            assignment.len(),
            domain.n()
        ));
    }
    let Ok(succ) = domain.positions_of(assignment) else {
        return Ok(false);
    };
    Ok(is_hamiltonian(&succ))
}

/// Successor form of a tour given as the sequence of visited values; the
/// tour must start at `v_1`.
pub fn circuit_from_permutation(tour: &[Rational], domain: &Domain) -> Result<Circuit> {
    if tour.len() != domain.n() {
        return input(format!("tour has {} entries, domain has {}", tour.len(), domain.n()));
    }
    let positions = domain.positions_of(tour)?;
    Circuit::from_tour(&positions)
}

/// Tour order of `circuit`, as domain values starting with `v_1`.
pub fn permutation_from_circuit(circuit: &Circuit, domain: &Domain) -> Vec<Rational> {
    circuit
        .tour()
        .into_iter()
        .map(|k| domain.value(k).clone())
        .collect()
}

/// Whether the partial assignment `index -> value` is a `J`-circuit.
pub fn is_j_circuit(partial: &BTreeMap<usize, Rational>, domain: &Domain) -> Result<bool> {
    let n = domain.n();
    let mut entries = Vec::with_capacity(partial.len());
    for (&j, value) in partial {
        if j == 0 || j > n {
            return input(format!("index {j} outside 1..={n}"));
        }
        let Some(k) = domain.position(value) else {
            return input(format!("value {} is not in the domain", display_rational(value)));
        };
        entries.push((j, k));
    }
    let mut values: Vec<usize> = entries.iter().map(|e| e.1).collect();
    values.sort_unstable();
    if values.windows(2).any(|w| w[0] == w[1]) {
        return Ok(false);
    }
    Ok(!has_cycle(n, &entries))
}
