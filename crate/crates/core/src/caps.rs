use crate::error::{input, Result};

/// Limits on brute-force work. Every enumerating operation checks its cap
/// up front and fails with [`crate::Error::Resource`] instead of running
/// unbounded.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Caps {
    /// Largest `n` for full circuit enumeration (`(n-1)!` circuits).
    pub circuits: usize,
    /// Largest `|J|` for `J`-circuit tuple enumeration.
    pub j_tuples: usize,
    /// Largest `|J|` for the greedy loop over all `|J|!` orderings.
    pub orderings: usize,
}

/// Hard ceiling on the number of candidate tuples a `J`-circuit enumeration
/// may scan, independent of `j_tuples`.
pub const MAX_J_TUPLE_SCAN: u128 = 20_000_000;

pub const CAPS_ENV: &str = "CIRCUIT_POLYTOPE_CAPS";

impl Default for Caps {
    fn default() -> Self {
        Caps {
            circuits: 10,
            j_tuples: 6,
            orderings: 7,
        }
    }
}

impl Caps {
    /// Parses `"circuits=10,j=6,orderings=7"`; omitted keys keep defaults.
    pub fn parse(text: &str) -> Result<Caps> {
        let mut caps = Caps::default();
        for part in text.split(',').map(str::trim).filter(|p| !p.is_empty()) {
            let Some((key, value)) = part.split_once('=') else {
                return input(format!("cap entry {part:?} is not key=value"));
            };
            let value: usize = match value.trim().parse() {
                Ok(v) => v,
                Err(_) => return input(format!("cap value {value:?} is not an integer")),
            };
            match key.trim() {
                "circuits" => caps.circuits = value,
                "j" => caps.j_tuples = value,
                "orderings" => caps.orderings = value,
                other => return input(format!("unknown cap {other:?}")),
            }
        }
        Ok(caps)
    }

    /// Defaults overridden by `CIRCUIT_POLYTOPE_CAPS` when set.
    pub fn from_env() -> Result<Caps> {
        match std::env::var(CAPS_ENV) {
            Ok(text) => Caps::parse(&text),
            Err(_) => Ok(Caps::default()),
        }
    }

    pub fn unbounded() -> Caps {
        Caps {
            circuits: usize::MAX,
            j_tuples: usize::MAX,
            orderings: usize::MAX,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_partial_specs() {
        let caps = Caps::parse("circuits=8, orderings=5").unwrap();
        assert_eq!(caps.circuits, 8);
        assert_eq!(caps.j_tuples, 6);
        assert_eq!(caps.orderings, 5);
        assert_eq!(Caps::parse("").unwrap(), Caps::default());
    }

    #[test]
    fn rejects_bad_specs() {
        assert!(Caps::parse("circuits").is_err());
        assert!(Caps::parse("circuits=x").is_err());
        assert!(Caps::parse("depth=3").is_err());
    }
}
