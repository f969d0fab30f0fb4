//! Selection of the sample primes used for reduction and point counting.

use crate::error::{Error, Result};
use crate::linalg::{is_prime, primes_above};

const AUTO_FLOOR: u64 = 20;
const MAX_PRIME: u64 = 1 << 31;

/// Where sample primes come from.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub enum SamplePrimes {
    /// The first primes above both 20 and every matrix entry.
    #[default]
    Auto,
    /// A fixed list, used in the given order.
    Explicit(Vec<u64>),
}

impl SamplePrimes {
    /// Parses a comma-separated list such as `23,29,31`.
    pub fn parse_csv(s: &str) -> Result<Self> {
        let primes = s
            .split(',')
            .map(str::trim)
            .filter(|t| !t.is_empty())
            .map(|t| t.parse::<u64>().map_err(|_| Error::Parse(format!("bad prime `{t}`"))))
            .collect::<Result<Vec<_>>>()?;
        if primes.is_empty() {
            return Err(Error::Configuration("empty prime list".into()));
        }
        Ok(SamplePrimes::Explicit(primes))
    }

    /// At least `needed` primes, all exceeding `max_entry`. Explicit lists are
    /// returned whole, so surplus primes serve as extra verification points.
    pub fn select(&self, needed: usize, max_entry: i64) -> Result<Vec<u64>> {
        let floor = max_entry.unsigned_abs();
        match self {
            SamplePrimes::Auto => Ok(primes_above(floor.max(AUTO_FLOOR)).take(needed).collect()),
            SamplePrimes::Explicit(list) => {
                for (i, &p) in list.iter().enumerate() {
                    if !is_prime(p) || p >= MAX_PRIME {
                        return Err(Error::Configuration(format!("{p} is not a usable prime")));
                    }
                    if p <= floor {
                        return Err(Error::Configuration(format!(
                            "prime {p} does not exceed the largest matrix entry {floor}"
                        )));
                    }
                    if list[..i].contains(&p) {
                        return Err(Error::Configuration(format!("prime {p} listed twice")));
                    }
                }
                if list.len() < needed {
                    return Err(Error::Configuration(format!(
                        "{needed} sample primes needed, {} configured",
                        list.len()
                    )));
                }
                Ok(list.clone())
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn auto_primes_skip_small_and_large_entries() {
        assert_eq!(SamplePrimes::Auto.select(3, 1).unwrap(), vec![23, 29, 31]);
        assert_eq!(SamplePrimes::Auto.select(2, 40).unwrap(), vec![41, 43]);
    }

    #[test]
    fn explicit_primes_are_checked() {
        let s = SamplePrimes::parse_csv("5, 7,11").unwrap();
        assert_eq!(s.select(2, 3).unwrap(), vec![5, 7, 11]);
        assert!(matches!(s.select(4, 3), Err(Error::Configuration(_))));
        assert!(matches!(s.select(2, 5), Err(Error::Configuration(_))));
        let bad = SamplePrimes::parse_csv("9,11").unwrap();
        assert!(bad.select(1, 0).is_err());
        assert!(SamplePrimes::parse_csv("7,x").is_err());
        assert!(SamplePrimes::parse_csv("7,7").unwrap().select(1, 0).is_err());
    }
}
