use serde::Serialize;

use super::inequality::{LhsTable, LinearInequality};
use crate::caps::Caps;
use crate::circuit::{Circuit, Domain, JCircuit};
use crate::enumeration::{enumerate_circuits, enumerate_j_circuits};
use crate::error::{input, Error, Result};
use crate::greedy::{undominated_bruteforce, undominated_j_circuits};
use crate::linalg::AffineRank;
use crate::par;
use crate::rational::Rational;

/// Where a validity verdict came from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ValiditySource {
    /// Greedy generation over all orderings of `J`.
    Greedy,
    /// Exhaustive `J`-circuit enumeration (ordering cap exceeded).
    Enumeration,
    /// Full circuit enumeration (`|J| = n`).
    Circuits,
    /// `J` is empty; the inequality reads `0 >= rhs`.
    EmptySupport,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Validity {
    pub valid: bool,
    /// First violating undominated `J`-circuit in canonical order, with its
    /// left-hand side.
    pub witness: Option<(JCircuit, Rational)>,
    /// The undominated set with each left-hand side.
    pub undominated: Vec<(JCircuit, Rational)>,
    pub source: ValiditySource,
}

fn check_n(domain: &Domain, ineq: &LinearInequality) -> Result<()> {
    if domain.n() != ineq.n() {
        return input(format!("inequality has n = {}, domain has n = {}", ineq.n(), domain.n()));
    }
    Ok(())
}

/// Validity of `ineq` on `H_n(v)` by checking its undominated `J`-circuits.
pub fn check_validity(domain: &Domain, ineq: &LinearInequality, caps: &Caps) -> Result<Validity> {
    check_n(domain, ineq)?;
    let n = domain.n();
    let support = ineq.support();
    if support.is_empty() {
        return Ok(Validity {
            valid: *ineq.rhs() <= Rational::from_integer(0.into()),
            witness: None,
            undominated: Vec::new(),
            source: ValiditySource::EmptySupport,
        });
    }
    let table = LhsTable::new(ineq, domain);
    if support.len() == n {
        // a full assignment is a circuit, not an acyclic J-circuit
        let circuits = enumerate_circuits(domain, caps)?;
        let lhs = par::map(&circuits, |c| table.on_circuit(c));
        let witness = circuits
            .iter()
            .zip(&lhs)
            .find(|(_, l)| *l < ineq.rhs())
            .map(|(c, l)| (c.restrict(&support), l.clone()));
        return Ok(Validity {
            valid: witness.is_none(),
            witness,
            undominated: Vec::new(),
            source: ValiditySource::Circuits,
        });
    }
    let signs = ineq.signs();
    let (set, source) = match undominated_j_circuits(domain, &support, &signs, caps) {
        Ok(set) => (set, ValiditySource::Greedy),
        Err(Error::Resource(_)) => (
            undominated_bruteforce(domain, &support, &signs, caps)?,
            ValiditySource::Enumeration,
        ),
        Err(e) => return Err(e),
    };
    let undominated: Vec<(JCircuit, Rational)> = set
        .into_iter()
        .map(|jc| {
            let l = table.on_j_circuit(&jc);
            (jc, l)
        })
        .collect();
    let witness = undominated.iter().find(|(_, l)| l < ineq.rhs()).cloned();
    Ok(Validity {
        valid: witness.is_none(),
        witness,
        undominated,
        source,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum FacetStatus {
    FacetByTheorem,
    FacetByBruteforce,
    ValidNotFacet,
    Invalid,
    /// A cap stopped the computation before a verdict.
    Unknown,
}

impl FacetStatus {
    pub fn is_facet(self) -> bool {
        matches!(self, FacetStatus::FacetByTheorem | FacetStatus::FacetByBruteforce)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum TightPoints {
    JCircuits(Vec<JCircuit>),
    Circuits(Vec<Circuit>),
}

impl TightPoints {
    pub fn len(&self) -> usize {
        match self {
            TightPoints::JCircuits(v) => v.len(),
            TightPoints::Circuits(v) => v.len(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum TightSource {
    AllJCircuits,
    UndominatedOnly,
    AllCircuits,
    None,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FacetCertificate {
    pub status: FacetStatus,
    pub undominated_witnesses: Vec<(JCircuit, Rational)>,
    pub tight_points: TightPoints,
    pub tight_source: TightSource,
    pub affine_rank_of_tight: usize,
    /// `1 <= |J| <= n - 4`.
    pub theorem_scope_ok: bool,
    pub note: Option<String>,
}

fn rank_of(dim: usize, points: impl IntoIterator<Item = Vec<Rational>>) -> Result<usize> {
    let mut acc = AffineRank::new(dim);
    for p in points {
        acc.push(&p)?;
        if acc.is_full() {
            break;
        }
    }
    Ok(acc.rank())
}

/// Facet certification.
///
/// Inside the theorem scope the certificate counts affinely independent
/// tight `J`-circuits, taken from the full `J`-circuit enumeration (tight
/// points need not be undominated) or, past the enumeration cap, from the
/// undominated set only. Outside the scope it defers to the brute-force
/// oracle when circuit enumeration fits in the caps.
pub fn certify_facet(domain: &Domain, ineq: &LinearInequality, caps: &Caps) -> Result<FacetCertificate> {
    check_n(domain, ineq)?;
    let n = domain.n();
    let support = ineq.support();
    let m = support.len();
    let scope_ok = m >= 1 && m + 4 <= n;
    let mut cert = FacetCertificate {
        status: FacetStatus::Unknown,
        undominated_witnesses: Vec::new(),
        tight_points: TightPoints::JCircuits(Vec::new()),
        tight_source: TightSource::None,
        affine_rank_of_tight: 0,
        theorem_scope_ok: scope_ok,
        note: None,
    };
    let validity = match check_validity(domain, ineq, caps) {
        Ok(v) => v,
        Err(Error::Resource(msg)) => {
            cert.note = Some(msg);
            return Ok(cert);
        }
        Err(e) => return Err(e),
    };
    cert.undominated_witnesses = validity.undominated.clone();
    if !validity.valid {
        cert.status = FacetStatus::Invalid;
        return Ok(cert);
    }

    if m >= 1 && m < n {
        let table = LhsTable::new(ineq, domain);
        let (tight, source) = match enumerate_j_circuits(domain, &support, caps) {
            Ok(all) => (
                par::filter(&all, |jc| table.on_j_circuit(jc) == *ineq.rhs()),
                TightSource::AllJCircuits,
            ),
            Err(Error::Resource(_)) => (
                validity
                    .undominated
                    .iter()
                    .filter(|(_, l)| l == ineq.rhs())
                    .map(|(jc, _)| jc.clone())
                    .collect(),
                TightSource::UndominatedOnly,
            ),
            Err(e) => return Err(e),
        };
        let rank = rank_of(m, tight.iter().map(|jc| jc.values(domain)))?;
        cert.tight_points = TightPoints::JCircuits(tight);
        cert.tight_source = source;
        cert.affine_rank_of_tight = rank;
        if rank >= m {
            if scope_ok {
                cert.status = FacetStatus::FacetByTheorem;
                return Ok(cert);
            }
        } else if source == TightSource::AllJCircuits {
            // fewer than |J| independent tight J-circuits rules out a facet
            cert.status = FacetStatus::ValidNotFacet;
            cert.note = Some(format!("tight J-circuits have affine rank {rank} < |J| = {m}"));
            return Ok(cert);
        }
        if scope_ok {
            cert.note = Some("tight set limited to undominated J-circuits; rank inconclusive".into());
            return Ok(cert);
        }
    }

    if n < 4 {
        cert.note = Some("outside the theorem scope and n < 4".into());
        return Ok(cert);
    }
    match bruteforce_facet_report(domain, ineq, caps) {
        Ok(report) => {
            cert.status = if report.is_facet() {
                FacetStatus::FacetByBruteforce
            } else if report.valid {
                FacetStatus::ValidNotFacet
            } else {
                FacetStatus::Invalid
            };
            cert.affine_rank_of_tight = report.tight_rank;
            cert.tight_points = TightPoints::Circuits(report.tight);
            cert.tight_source = TightSource::AllCircuits;
            if !report.has_slack && report.valid {
                cert.note = Some("every circuit is tight".into());
            }
        }
        Err(Error::Resource(msg)) => cert.note = Some(format!("outside the theorem scope; {msg}")),
        Err(e) => return Err(e),
    }
    Ok(cert)
}

/// Result of checking an inequality against every circuit.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BruteforceReport {
    pub n: usize,
    pub circuits: usize,
    pub valid: bool,
    /// First violated circuit in enumeration order.
    pub violator: Option<Circuit>,
    pub has_slack: bool,
    pub tight: Vec<Circuit>,
    pub tight_rank: usize,
}

impl BruteforceReport {
    /// Valid, not an implicit equality, and `n - 1` affinely independent
    /// tight circuits.
    pub fn is_facet(&self) -> bool {
        self.valid && self.has_slack && self.tight_rank + 1 >= self.n
    }
}

pub fn bruteforce_facet_report(domain: &Domain, ineq: &LinearInequality, caps: &Caps) -> Result<BruteforceReport> {
    check_n(domain, ineq)?;
    if domain.n() < 4 {
        return input("the brute-force facet oracle needs n >= 4");
    }
    let circuits = enumerate_circuits(domain, caps)?;
    let table = LhsTable::new(ineq, domain);
    let lhs = par::map(&circuits, |c| table.on_circuit(c));
    let rhs = ineq.rhs();
    let violator = circuits.iter().zip(&lhs).find(|(_, l)| *l < rhs).map(|(c, _)| c.clone());
    let has_slack = lhs.iter().any(|l| l > rhs);
    let tight: Vec<Circuit> = circuits
        .iter()
        .zip(&lhs)
        .filter(|(_, l)| *l == rhs)
        .map(|(c, _)| c.clone())
        .collect();
    let tight_rank = rank_of(domain.n(), tight.iter().map(|c| c.values(domain)))?;
    Ok(BruteforceReport {
        n: domain.n(),
        circuits: circuits.len(),
        valid: violator.is_none(),
        violator,
        has_slack,
        tight,
        tight_rank,
    })
}

/// Facet test by enumerating every circuit: valid, some circuit slack, and
/// at least `n - 1` affinely independent tight circuits.
pub fn is_facet_bruteforce(domain: &Domain, ineq: &LinearInequality, caps: &Caps) -> Result<bool> {
    Ok(bruteforce_facet_report(domain, ineq, caps)?.is_facet())
}

/// Validity by enumerating every circuit.
pub fn is_valid_bruteforce(domain: &Domain, ineq: &LinearInequality, caps: &Caps) -> Result<bool> {
    check_n(domain, ineq)?;
    let circuits = enumerate_circuits(domain, caps)?;
    let table = LhsTable::new(ineq, domain);
    Ok(par::all(&circuits, |c| table.on_circuit(c) >= *ineq.rhs()))
}
