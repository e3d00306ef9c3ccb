use std::fmt;

use num_traits::{One, Signed, Zero};

use crate::circuit::{Circuit, Domain, JCircuit, SignPartition};
use crate::error::{input, Result};
use crate::rational::{display_rational, gcd_of_numerators, int, lcm_of_denominators, Rational};

/// `sum_{j in J} a_j x_j >= alpha` in normalized form.
///
/// Coefficients are stored sorted by index and are all nonzero. On
/// construction the coefficients and right-hand side are scaled by a
/// positive factor to coprime integers, so two inequalities that differ by
/// a positive multiple compare equal.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LinearInequality {
    n: usize,
    coeffs: Vec<(usize, Rational)>,
    rhs: Rational,
}

impl LinearInequality {
    pub fn new(n: usize, coeffs: impl IntoIterator<Item = (usize, Rational)>, rhs: Rational) -> Result<Self> {
        let mut coeffs: Vec<(usize, Rational)> = coeffs.into_iter().filter(|(_, a)| !a.is_zero()).collect();
        coeffs.sort_by_key(|c| c.0);
        if let Some(w) = coeffs.windows(2).find(|w| w[0].0 == w[1].0) {
            return input(format!("index {} appears twice", w[0].0));
        }
        if let Some((j, _)) = coeffs.iter().find(|(j, _)| *j == 0 || *j > n) {
            return input(format!("index {j} outside 1..={n}"));
        }
        let mut ineq = LinearInequality { n, coeffs, rhs };
        ineq.normalize();
        Ok(ineq)
    }

    /// Integer-coefficient shorthand.
    pub fn from_ints(n: usize, coeffs: &[(usize, i64)], rhs: i64) -> Result<Self> {
        LinearInequality::new(n, coeffs.iter().map(|&(j, a)| (j, int(a))), int(rhs))
    }

    /// `sum a_j x_j <= beta`, stored as `sum -a_j x_j >= -beta`.
    pub fn at_most(n: usize, coeffs: impl IntoIterator<Item = (usize, Rational)>, rhs: Rational) -> Result<Self> {
        LinearInequality::new(n, coeffs.into_iter().map(|(j, a)| (j, -a)), -rhs)
    }

    fn normalize(&mut self) {
        let all = || self.coeffs.iter().map(|c| &c.1).chain(std::iter::once(&self.rhs));
        let scale = Rational::from_integer(lcm_of_denominators(all()));
        let g = gcd_of_numerators(all());
        if g.is_zero() {
            return;
        }
        let factor = scale / Rational::from_integer(g);
        if factor.is_one() {
            return;
        }
        for (_, a) in &mut self.coeffs {
            *a *= &factor;
        }
        self.rhs *= &factor;
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn coeffs(&self) -> &[(usize, Rational)] {
        &self.coeffs
    }

    pub fn coeff(&self, j: usize) -> Option<&Rational> {
        self.coeffs
            .binary_search_by_key(&j, |c| c.0)
            .ok()
            .map(|p| &self.coeffs[p].1)
    }

    pub fn rhs(&self) -> &Rational {
        &self.rhs
    }

    pub fn support(&self) -> Vec<usize> {
        self.coeffs.iter().map(|c| c.0).collect()
    }

    /// `J_+ = {j : a_j > 0}`, `J_- = {j : a_j < 0}`.
    pub fn signs(&self) -> SignPartition {
        let plus = self.coeffs.iter().filter(|c| c.1.is_positive()).map(|c| c.0);
        let minus = self.coeffs.iter().filter(|c| c.1.is_negative()).map(|c| c.0);
        SignPartition::new(plus, minus).expect("signs are disjoint")
    }

    /// Left-hand side at a full point `x` of length `n`.
    pub fn lhs(&self, x: &[Rational]) -> Result<Rational> {
        if x.len() != self.n {
            return input(format!("point has length {}, expected {}", x.len(), self.n));
        }
        Ok(self.coeffs.iter().map(|(j, a)| a * &x[j - 1]).sum())
    }

    /// Left-hand side at a `J`-circuit over the same support.
    pub fn lhs_on(&self, jc: &JCircuit, domain: &Domain) -> Rational {
        self.coeffs
            .iter()
            .map(|(j, a)| a * domain.value(jc.get(*j).expect("J-circuit covers the support")))
            .sum()
    }

    pub fn lhs_on_circuit(&self, c: &Circuit, domain: &Domain) -> Rational {
        self.coeffs
            .iter()
            .map(|(j, a)| a * domain.value(c.successor(*j)))
            .sum()
    }

    /// Whether the point satisfies the inequality.
    pub fn holds_at(&self, x: &[Rational]) -> Result<bool> {
        Ok(self.lhs(x)? >= self.rhs)
    }
}

impl fmt::Display for LinearInequality {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return write!(f, "0 >= {}", display_rational(&self.rhs));
        }
        for (t, (j, a)) in self.coeffs.iter().enumerate() {
            let mag = a.abs();
            let sign = match (t, a.is_negative()) {
                (0, true) => "-",
                (0, false) => "",
                (_, true) => " - ",
                (_, false) => " + ",
            };
            let mag = if mag.is_one() { String::new() } else { display_rational(&mag) };
            write!(f, "{sign}{mag}x_{j}")?;
        }
        write!(f, " >= {}", display_rational(&self.rhs))
    }
}

/// Precomputed `a_j * v_k` for every support index and value position, so
/// repeated evaluation over many circuits is additions only.
#[derive(Debug, Clone)]
pub struct LhsTable {
    rows: Vec<(usize, Vec<Rational>)>,
}

impl LhsTable {
    pub fn new(ineq: &LinearInequality, domain: &Domain) -> Self {
        let rows = ineq
            .coeffs()
            .iter()
            .map(|(j, a)| (*j, domain.values().iter().map(|v| a * v).collect()))
            .collect();
        LhsTable { rows }
    }

    pub fn on_circuit(&self, c: &Circuit) -> Rational {
        self.rows
            .iter()
            .map(|(j, products)| &products[c.successor(*j) - 1])
            .sum()
    }

    pub fn on_j_circuit(&self, jc: &JCircuit) -> Rational {
        self.rows
            .iter()
            .map(|(j, products)| &products[jc.get(*j).expect("J-circuit covers the support") - 1])
            .sum()
    }
}
