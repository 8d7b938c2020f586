use std::fmt;
use std::sync::Arc;

use super::PiMonomial;
use crate::error::{Error, Result};

/// k-th element (0-based) of a custom family, `None` once exhausted.
pub type Generator = Arc<dyn Fn(usize) -> Option<u64> + Send + Sync>;

/// A user-supplied convergence argument for a custom family.
#[derive(Clone, Debug, PartialEq)]
pub enum Certificate {
    Convergent { reason: String, value: Option<PiMonomial> },
    Divergent { reason: String },
}

/// A subset X ⊂ N_{>0}, listed in increasing order.
#[derive(Clone)]
pub enum SubsetFamily {
    Finite(Vec<u64>),
    ArithmeticProgression { a: u64, d: u64 },
    /// base^0, base^1, base^2, …
    IndexGeometric { base: u64 },
    Primes,
    Custom {
        name: String,
        generator: Generator,
        certificate: Option<Certificate>,
    },
}

impl fmt::Debug for SubsetFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "SubsetFamily({self})")
    }
}

impl fmt::Display for SubsetFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SubsetFamily::Finite(xs) => {
                let items: Vec<String> = xs.iter().map(u64::to_string).collect();
                write!(f, "finite:{}", items.join(","))
            }
            SubsetFamily::ArithmeticProgression { a, d } => write!(f, "ap:{a},{d}"),
            SubsetFamily::IndexGeometric { base } => write!(f, "geo:{base}"),
            SubsetFamily::Primes => write!(f, "primes"),
            SubsetFamily::Custom { name, .. } => write!(f, "{name}"),
        }
    }
}

impl SubsetFamily {
    /// Sorts and deduplicates; rejects 0.
    pub fn finite(mut xs: Vec<u64>) -> Result<Self> {
        if xs.contains(&0) {
            return Err(Error::invalid("subset elements must be ≥ 1"));
        }
        xs.sort_unstable();
        xs.dedup();
        Ok(SubsetFamily::Finite(xs))
    }

    pub fn arithmetic(a: u64, d: u64) -> Result<Self> {
        if a == 0 || d == 0 {
            return Err(Error::invalid("progression needs a ≥ 1 and d ≥ 1"));
        }
        Ok(SubsetFamily::ArithmeticProgression { a, d })
    }

    pub fn geometric(base: u64) -> Result<Self> {
        if base < 2 {
            return Err(Error::invalid("geometric base must be ≥ 2"));
        }
        Ok(SubsetFamily::IndexGeometric { base })
    }

    pub fn custom(name: impl Into<String>, generator: Generator) -> Self {
        SubsetFamily::Custom {
            name: name.into(),
            generator,
            certificate: None,
        }
    }

    /// The perfect squares, with no certificate attached.
    pub fn squares() -> Self {
        Self::custom("squares", Arc::new(|k| (k as u64 + 1).checked_pow(2)))
    }

    pub fn with_certificate(self, cert: Certificate) -> Self {
        match self {
            SubsetFamily::Custom { name, generator, .. } => SubsetFamily::Custom {
                name,
                generator,
                certificate: Some(cert),
            },
            other => other,
        }
    }

    /// Parses `finite:1,2,3`, `ap:a,d`, `geo:b`, `primes` or `squares`.
    pub fn parse(s: &str) -> Result<Self> {
        let s = s.trim();
        let (kind, args) = s.split_once(':').unwrap_or((s, ""));
        let nums = || -> Result<Vec<u64>> {
            args.split(',')
                .map(str::trim)
                .filter(|t| !t.is_empty())
                .map(|t| t.parse::<u64>().map_err(|_| Error::invalid(format!("bad integer {t:?} in {s:?}"))))
                .collect()
        };
        match kind {
            "finite" => Self::finite(nums()?),
            "ap" => match nums()?.as_slice() {
                [a, d] => Self::arithmetic(*a, *d),
                _ => Err(Error::invalid("ap needs two integers a,d")),
            },
            "geo" => match nums()?.as_slice() {
                [b] => Self::geometric(*b),
                _ => Err(Error::invalid("geo needs one base")),
            },
            "primes" => Ok(SubsetFamily::Primes),
            "squares" => Ok(Self::squares()),
            _ => Err(Error::invalid(format!("unknown subset family {s:?}"))),
        }
    }

    /// Elements in increasing order; finite families simply end.
    pub fn elements(&self) -> Box<dyn Iterator<Item = u64> + '_> {
        match self {
            SubsetFamily::Finite(xs) => Box::new(xs.iter().copied()),
            SubsetFamily::ArithmeticProgression { a, d } => {
                let (a, d) = (*a, *d);
                Box::new((0u64..).map_while(move |k| k.checked_mul(d).and_then(|x| x.checked_add(a))))
            }
            SubsetFamily::IndexGeometric { base } => {
                let b = *base;
                Box::new((0u32..).map_while(move |k| b.checked_pow(k)))
            }
            SubsetFamily::Primes => Box::new(Primes::default()),
            SubsetFamily::Custom { generator, .. } => {
                let g = generator.clone();
                Box::new((0usize..).map_while(move |k| g(k)))
            }
        }
    }
}

#[derive(Default)]
struct Primes {
    found: Vec<u64>,
}

impl Iterator for Primes {
    type Item = u64;
    fn next(&mut self) -> Option<u64> {
        let mut c = self.found.last().map_or(2, |&p| p + 1);
        loop {
            if self.found.iter().take_while(|&&p| p * p <= c).all(|&p| !c.is_multiple_of(p)) {
                self.found.push(c);
                return Some(c);
            }
            c += 1;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parsing_and_elements() {
        let take = |s: &str, n| SubsetFamily::parse(s).unwrap().elements().take(n).collect::<Vec<_>>();
        assert_eq!(take("finite:3,1,2,2", 10), vec![1, 2, 3]);
        assert_eq!(take("finite:", 10), Vec::<u64>::new());
        assert_eq!(take("ap:1,1", 4), vec![1, 2, 3, 4]);
        assert_eq!(take("ap:2,3", 3), vec![2, 5, 8]);
        assert_eq!(take("geo:2", 5), vec![1, 2, 4, 8, 16]);
        assert_eq!(take("primes", 8), vec![2, 3, 5, 7, 11, 13, 17, 19]);
        assert_eq!(take("squares", 4), vec![1, 4, 9, 16]);
        for bad in ["finite:0", "ap:0,1", "ap:1", "geo:1", "cubes", "finite:x"] {
            assert!(SubsetFamily::parse(bad).is_err(), "{bad}");
        }
        assert_eq!(SubsetFamily::parse("ap:1,1").unwrap().to_string(), "ap:1,1");
    }

    #[test]
    fn geometric_terminates_before_overflow() {
        assert_eq!(SubsetFamily::geometric(2).unwrap().elements().count(), 64);
    }
}
