//! Oracles shared by the integration tests. None of these call into the
//! crate's enumeration, greedy or rank code.

#![allow(dead_code)]

use std::collections::BTreeSet;

use itertools::Itertools;
use num_traits::{One, Zero};

use circuit_polytope::rational::{int, parse_rational};
use circuit_polytope::{LinearInequality, Rational};

pub fn q(text: &str) -> Rational {
    parse_rational(text).unwrap()
}

pub fn ints(values: &[i64]) -> Vec<Rational> {
    values.iter().map(|&v| int(v)).collect()
}

/// Successor positions of every hamiltonian cycle on `1..=n`, from the
/// tours `1, pi_2, ..., pi_n`.
pub fn oracle_circuits(n: usize) -> Vec<Vec<usize>> {
    if n == 1 {
        return vec![vec![1]];
    }
    (2..=n)
        .permutations(n - 1)
        .map(|rest| {
            let tour: Vec<usize> = std::iter::once(1).chain(rest).collect();
            let mut succ = vec![0; n];
            for i in 0..n {
                succ[tour[i] - 1] = tour[(i + 1) % n];
            }
            succ
        })
        .collect()
}

/// `J`-circuits as restrictions of full circuits, positions listed in the
/// order of `j`.
pub fn oracle_j_circuits(n: usize, j: &[usize]) -> BTreeSet<Vec<usize>> {
    oracle_circuits(n)
        .into_iter()
        .map(|succ| j.iter().map(|&i| succ[i - 1]).collect())
        .collect()
}

/// Minimal elements of [`oracle_j_circuits`] under the dominance order.
pub fn oracle_undominated(n: usize, j: &[usize], plus: &[usize]) -> BTreeSet<Vec<usize>> {
    let all = oracle_j_circuits(n, j);
    let dominates = |a: &Vec<usize>, b: &Vec<usize>| {
        j.iter().enumerate().all(|(t, i)| {
            if plus.contains(i) {
                a[t] <= b[t]
            } else {
                a[t] >= b[t]
            }
        })
    };
    all.iter()
        .filter(|x| !all.iter().any(|y| y != *x && dominates(y, x)))
        .cloned()
        .collect()
}

/// Number of affinely independent points, by plain Gaussian elimination
/// on the differences from the first point.
pub fn oracle_rank(points: &[Vec<Rational>]) -> usize {
    let Some(first) = points.first() else {
        return 0;
    };
    let mut rows: Vec<Vec<Rational>> = points[1..]
        .iter()
        .map(|p| p.iter().zip(first).map(|(a, b)| a - b).collect())
        .collect();
    let cols = first.len();
    let mut rank = 0;
    for c in 0..cols {
        let Some(p) = (rank..rows.len()).find(|&r| !rows[r][c].is_zero()) else {
            continue;
        };
        rows.swap(rank, p);
        let pivot_row = rows[rank].clone();
        for (r, row) in rows.iter_mut().enumerate() {
            if r != rank && !row[c].is_zero() {
                let f = &row[c] / &pivot_row[c];
                for (x, p) in row.iter_mut().zip(&pivot_row).skip(c) {
                    *x -= &f * p;
                }
            }
        }
        rank += 1;
    }
    rank + 1
}

pub fn values_of(succ: &[usize], domain: &[Rational]) -> Vec<Rational> {
    succ.iter().map(|&k| domain[k - 1].clone()).collect()
}

pub fn lhs_at(ineq: &LinearInequality, x: &[Rational]) -> Rational {
    ineq.coeffs().iter().map(|(j, a)| a * &x[j - 1]).sum()
}

/// Validity over every circuit.
pub fn oracle_valid(ineq: &LinearInequality, domain: &[Rational]) -> bool {
    oracle_circuits(domain.len())
        .iter()
        .all(|succ| lhs_at(ineq, &values_of(succ, domain)) >= *ineq.rhs())
}

/// Valid, some circuit slack, tight circuits of affine rank `n - 1`.
pub fn oracle_facet(ineq: &LinearInequality, domain: &[Rational]) -> bool {
    let n = domain.len();
    let mut tight = Vec::new();
    let mut slack = false;
    for succ in oracle_circuits(n) {
        let x = values_of(&succ, domain);
        let l = lhs_at(ineq, &x);
        if l < *ineq.rhs() {
            return false;
        }
        if l == *ineq.rhs() {
            tight.push(x);
        } else {
            slack = true;
        }
    }
    slack && oracle_rank(&tight) + 1 >= n
}

/// Convex combination of circuits with the given positive weights.
pub fn convex_combination(circuits: &[Vec<Rational>], weights: &[Rational]) -> Vec<Rational> {
    let total: Rational = weights.iter().sum();
    assert!(!total.is_zero());
    let n = circuits[0].len();
    (0..n)
        .map(|i| {
            circuits
                .iter()
                .zip(weights)
                .map(|(c, w)| &c[i] * w)
                .sum::<Rational>()
                / &total
        })
        .collect()
}

pub fn one() -> Rational {
    Rational::one()
}
