//! Exact affine rank over the rationals.

use num_traits::Zero;

use crate::error::{input, Result};
use crate::rational::Rational;

/// Incremental row-echelon basis of the differences `p - p_0`.
///
/// Each accepted point is reduced against the current basis; a nonzero
/// remainder extends it. The affine rank is the basis size plus one.
#[derive(Debug, Clone)]
pub struct AffineRank {
    dim: usize,
    origin: Option<Vec<Rational>>,
    // (pivot column, row normalized so the pivot entry is 1)
    basis: Vec<(usize, Vec<Rational>)>,
}

impl AffineRank {
    pub fn new(dim: usize) -> Self {
        AffineRank {
            dim,
            origin: None,
            basis: Vec::new(),
        }
    }

    pub fn rank(&self) -> usize {
        match self.origin {
            None => 0,
            Some(_) => self.basis.len() + 1,
        }
    }

    /// Largest rank reachable in this dimension.
    pub fn max_rank(&self) -> usize {
        self.dim + 1
    }

    pub fn is_full(&self) -> bool {
        self.rank() == self.max_rank()
    }

    /// Adds a point; returns whether the rank grew.
    pub fn push(&mut self, point: &[Rational]) -> Result<bool> {
        if point.len() != self.dim {
            return input(format!(
                "point has length {}, expected {}",
                point.len(),
                self.dim
            ));
        }
        let Some(origin) = &self.origin else {
            self.origin = Some(point.to_vec());
            return Ok(true);
        };
        let mut row: Vec<Rational> = point.iter().zip(origin).map(|(p, o)| p - o).collect();
        for (pivot, basis_row) in &self.basis {
            if row[*pivot].is_zero() {
                continue;
            }
            let factor = row[*pivot].clone();
            for (r, b) in row.iter_mut().zip(basis_row).skip(*pivot) {
                if !b.is_zero() {
                    *r -= &factor * b;
                }
            }
        }
        let Some(pivot) = row.iter().position(|r| !r.is_zero()) else {
            return Ok(false);
        };
        let lead = row[pivot].clone();
        for r in row.iter_mut().skip(pivot) {
            *r /= &lead;
        }
        // keep earlier rows reduced in the new pivot column
        for (_, basis_row) in self.basis.iter_mut() {
            if basis_row[pivot].is_zero() {
                continue;
            }
            let factor = basis_row[pivot].clone();
            for (b, r) in basis_row.iter_mut().zip(&row).skip(pivot) {
                if !r.is_zero() {
                    *b -= &factor * r;
                }
            }
        }
        self.basis.push((pivot, row));
        Ok(true)
    }
}

/// The maximum number of affinely independent points among `points`
/// (0 for an empty list).
pub fn affine_rank(points: &[Vec<Rational>]) -> Result<usize> {
    affine_rank_up_to(points, usize::MAX)
}

/// Like [`affine_rank`], but stops scanning once `limit` is reached.
pub fn affine_rank_up_to(points: &[Vec<Rational>], limit: usize) -> Result<usize> {
    let Some(first) = points.first() else {
        return Ok(0);
    };
    let mut acc = AffineRank::new(first.len());
    for p in points {
        acc.push(p)?;
        if acc.rank() >= limit || acc.is_full() {
            break;
        }
    }
    // length check on any unscanned remainder
    if let Some(bad) = points.iter().find(|p| p.len() != first.len()) {
        return input(format!(
            "point has length {}, expected {}",
            bad.len(),
            first.len()
        ));
    }
    Ok(acc.rank())
}
