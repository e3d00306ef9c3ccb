use super::inequality::LinearInequality;
use crate::circuit::{Circuit, Domain};
use crate::error::{input, Result};
use crate::rational::Rational;

/// `sum_{i,j} c_ij y_ij >= rhs` over the 0-1 arc variables, where
/// `y_ij = 1` exactly when `x_i = v_j`. Stored as a dense `n x n` matrix.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ArcInequality {
    pub coeffs: Vec<Vec<Rational>>,
    pub rhs: Rational,
}

impl ArcInequality {
    pub fn n(&self) -> usize {
        self.coeffs.len()
    }

    /// Left-hand side at a 0-1 incidence matrix.
    pub fn lhs(&self, y: &[Vec<bool>]) -> Result<Rational> {
        let n = self.n();
        if y.len() != n || y.iter().any(|row| row.len() != n) {
            return input(format!("incidence matrix must be {n} x {n}"));
        }
        Ok(self
            .coeffs
            .iter()
            .zip(y)
            .flat_map(|(c, row)| c.iter().zip(row).filter(|(_, &on)| on).map(|(c, _)| c))
            .sum())
    }

    pub fn lhs_on_circuit(&self, c: &Circuit) -> Result<Rational> {
        self.lhs(&incidence_matrix(c))
    }
}

/// Rewrites `ineq` through `x_i = sum_j v_j y_ij`: `c_ij = a_i v_j`.
pub fn map_to_arc_model(domain: &Domain, ineq: &LinearInequality) -> Result<ArcInequality> {
    let n = domain.n();
    if ineq.n() != n {
        return input(format!("inequality has n = {}, domain has n = {n}", ineq.n()));
    }
    let zero = Rational::from_integer(0.into());
    let mut coeffs = vec![vec![zero; n]; n];
    for (i, a) in ineq.coeffs() {
        for (j, v) in domain.values().iter().enumerate() {
            coeffs[i - 1][j] = a * v;
        }
    }
    Ok(ArcInequality {
        coeffs,
        rhs: ineq.rhs().clone(),
    })
}

/// `y[i][j]` is true when `x_{i+1} = v_{j+1}`.
pub fn incidence_matrix(c: &Circuit) -> Vec<Vec<bool>> {
    let n = c.n();
    (1..=n)
        .map(|i| (1..=n).map(|k| c.successor(i) == k).collect())
        .collect()
}
