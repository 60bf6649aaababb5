//! Finite, deterministically ordered test windows inside a semigroup.
//!
//! Grammar:
//! `Nk:k=<int>,max=<int>` | `Free:n=<int>,len=<int>` |
//! `NTimes:primes=<p1>,<p2>,...;maxexp=<int>` | `Prod:<spec>|<spec>` | `Op:<spec>`.
//!
//! `Prod` splits at the first `|`, so a nested product may only appear as its
//! right factor.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigUint;

use crate::error::{Error, Result};
use crate::padic::is_prime;
use crate::semigroup::{Element, Semigroup, MAX_GENERATORS};

/// Hard cap on the number of elements a window may enumerate.
pub const MAX_WINDOW: usize = 1 << 20;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum WindowSpec {
    /// The box `[0, max]ᵏ` in ℕᵏ.
    Naturals {
        rank: usize,
        max: u64,
    },
    /// Words of length at most `max_len`.
    Free {
        generators: usize,
        max_len: usize,
    },
    /// Products of the given primes with exponents at most `max_exp`.
    PositiveIntegers {
        primes: Vec<u64>,
        max_exp: u32,
    },
    Product(Box<WindowSpec>, Box<WindowSpec>),
    Opposite(Box<WindowSpec>),
}

fn malformed(text: &str, why: &str) -> Error {
    Error::Parse(format!("malformed window spec `{text}`: {why}"))
}

fn key_value<'a>(text: &str, field: &'a str, key: &str) -> Result<&'a str> {
    field
        .trim()
        .strip_prefix(key)
        .and_then(|rest| rest.strip_prefix('='))
        .ok_or_else(|| malformed(text, &format!("expected `{key}=`")))
}

fn number<T: FromStr>(text: &str, value: &str) -> Result<T> {
    value
        .trim()
        .parse()
        .map_err(|_| malformed(text, &format!("`{value}` is not a number")))
}

impl FromStr for WindowSpec {
    type Err = Error;

    fn from_str(text: &str) -> Result<WindowSpec> {
        let trimmed = text.trim();
        let (kind, body) = trimmed.split_once(':').ok_or_else(|| malformed(text, "missing `:`"))?;
        let spec = match kind {
            "Nk" => {
                let (k, max) = body
                    .split_once(',')
                    .ok_or_else(|| malformed(text, "expected `k=..,max=..`"))?;
                WindowSpec::Naturals {
                    rank: number(text, key_value(text, k, "k")?)?,
                    max: number(text, key_value(text, max, "max")?)?,
                }
            }
            "Free" => {
                let (n, len) = body
                    .split_once(',')
                    .ok_or_else(|| malformed(text, "expected `n=..,len=..`"))?;
                WindowSpec::Free {
                    generators: number(text, key_value(text, n, "n")?)?,
                    max_len: number(text, key_value(text, len, "len")?)?,
                }
            }
            "NTimes" => {
                let (primes, exp) = body
                    .split_once(';')
                    .ok_or_else(|| malformed(text, "expected `primes=..;maxexp=..`"))?;
                let primes = key_value(text, primes, "primes")?
                    .split(',')
                    .map(|p| number(text, p))
                    .collect::<Result<Vec<u64>>>()?;
                WindowSpec::PositiveIntegers {
                    primes,
                    max_exp: number(text, key_value(text, exp, "maxexp")?)?,
                }
            }
            "Prod" => {
                let (left, right) = body
                    .split_once('|')
                    .ok_or_else(|| malformed(text, "expected `<spec>|<spec>`"))?;
                WindowSpec::Product(Box::new(left.parse()?), Box::new(right.parse()?))
            }
            "Op" => WindowSpec::Opposite(Box::new(body.parse()?)),
            other => return Err(malformed(text, &format!("unknown kind `{other}`"))),
        };
        spec.validate()?;
        Ok(spec)
    }
}

impl fmt::Display for WindowSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            WindowSpec::Naturals { rank, max } => write!(f, "Nk:k={rank},max={max}"),
            WindowSpec::Free { generators, max_len } => write!(f, "Free:n={generators},len={max_len}"),
            WindowSpec::PositiveIntegers { primes, max_exp } => {
                let primes: Vec<String> = primes.iter().map(u64::to_string).collect();
                write!(f, "NTimes:primes={};maxexp={max_exp}", primes.join(","))
            }
            WindowSpec::Product(a, b) => write!(f, "Prod:{a}|{b}"),
            WindowSpec::Opposite(inner) => write!(f, "Op:{inner}"),
        }
    }
}

impl WindowSpec {
    fn validate(&self) -> Result<()> {
        let text = self.to_string();
        match self {
            WindowSpec::Naturals { rank, .. } if *rank == 0 => Err(malformed(&text, "k must be ≥ 1")),
            WindowSpec::Free { generators, .. } if !(2..=MAX_GENERATORS).contains(generators) => {
                Err(malformed(&text, &format!("n must lie in 2..={MAX_GENERATORS}")))
            }
            WindowSpec::PositiveIntegers { primes, .. } => {
                if primes.is_empty() || !primes.iter().all(|&p| is_prime(p)) {
                    return Err(malformed(&text, "primes must be a nonempty list of primes"));
                }
                let mut sorted = primes.clone();
                sorted.sort_unstable();
                sorted.dedup();
                if sorted.len() != primes.len() {
                    return Err(malformed(&text, "repeated prime"));
                }
                Ok(())
            }
            WindowSpec::Product(a, b) => {
                a.validate()?;
                b.validate()
            }
            WindowSpec::Opposite(inner) => inner.validate(),
            _ => Ok(()),
        }
    }

    /// Number of elements [`WindowSpec::enumerate`] would produce, saturating.
    pub fn size(&self) -> u128 {
        match self {
            WindowSpec::Naturals { rank, max } => (u128::from(*max) + 1).saturating_pow(*rank as u32),
            WindowSpec::Free { generators, max_len } => {
                let mut total: u128 = 0;
                let mut layer: u128 = 1;
                for _ in 0..=*max_len {
                    total = total.saturating_add(layer);
                    layer = layer.saturating_mul(*generators as u128);
                }
                total
            }
            WindowSpec::PositiveIntegers { primes, max_exp } => {
                (u128::from(*max_exp) + 1).saturating_pow(primes.len() as u32)
            }
            WindowSpec::Product(a, b) => a.size().saturating_mul(b.size()),
            WindowSpec::Opposite(inner) => inner.size(),
        }
    }

    /// The semigroup this window lives in.
    pub fn semigroup(&self) -> Semigroup {
        match self {
            WindowSpec::Naturals { rank, .. } => Semigroup::Naturals { rank: *rank },
            WindowSpec::Free { generators, .. } => Semigroup::Free {
                generators: *generators,
            },
            WindowSpec::PositiveIntegers { .. } => Semigroup::PositiveIntegers,
            WindowSpec::Product(a, b) => {
                let mut parts = vec![a.semigroup()];
                match b.semigroup() {
                    Semigroup::Product(rest) => parts.extend(rest),
                    other => parts.push(other),
                }
                Semigroup::Product(parts)
            }
            WindowSpec::Opposite(inner) => inner.semigroup().opposite(),
        }
    }

    /// A window with every bound doubled, large enough to hold products and
    /// least common multiples of pairs from `self`.
    pub fn doubled(&self) -> WindowSpec {
        match self {
            WindowSpec::Naturals { rank, max } => WindowSpec::Naturals {
                rank: *rank,
                max: 2 * max,
            },
            WindowSpec::Free { generators, max_len } => WindowSpec::Free {
                generators: *generators,
                max_len: 2 * max_len,
            },
            WindowSpec::PositiveIntegers { primes, max_exp } => WindowSpec::PositiveIntegers {
                primes: primes.clone(),
                max_exp: 2 * max_exp,
            },
            WindowSpec::Product(a, b) => WindowSpec::Product(Box::new(a.doubled()), Box::new(b.doubled())),
            WindowSpec::Opposite(inner) => WindowSpec::Opposite(Box::new(inner.doubled())),
        }
    }

    /// Elements in window order: lex for boxes, length-lex for words, numeric
    /// for ℕ^×, lex on coordinates for products.
    pub fn enumerate(&self) -> Result<Vec<Element>> {
        if self.size() > MAX_WINDOW as u128 {
            return Err(Error::Resource(format!(
                "window `{self}` has {} elements, limit is {MAX_WINDOW}",
                self.size()
            )));
        }
        let mut out = self.raw();
        out.sort();
        Ok(out)
    }

    fn raw(&self) -> Vec<Element> {
        match self {
            WindowSpec::Naturals { rank, max } => {
                let mut out = vec![Vec::new()];
                for _ in 0..*rank {
                    out = out
                        .into_iter()
                        .flat_map(|prefix: Vec<u64>| {
                            (0..=*max).map(move |c| {
                                let mut v = prefix.clone();
                                v.push(c);
                                v
                            })
                        })
                        .collect();
                }
                out.into_iter().map(Element::Vector).collect()
            }
            WindowSpec::Free { generators, max_len } => {
                let mut out = vec![Vec::new()];
                let mut layer = vec![Vec::new()];
                for _ in 0..*max_len {
                    layer = layer
                        .iter()
                        .flat_map(|w: &Vec<u8>| {
                            (0..*generators as u8).map(move |l| {
                                let mut next = w.clone();
                                next.push(l);
                                next
                            })
                        })
                        .collect();
                    out.extend(layer.iter().cloned());
                }
                out.into_iter().map(Element::Word).collect()
            }
            WindowSpec::PositiveIntegers { primes, max_exp } => {
                let mut out = vec![BigUint::from(1u32)];
                for &p in primes {
                    out = out
                        .into_iter()
                        .flat_map(|n| {
                            let mut powers = Vec::with_capacity(*max_exp as usize + 1);
                            let mut cur = n;
                            for _ in 0..=*max_exp {
                                powers.push(cur.clone());
                                cur *= p;
                            }
                            powers
                        })
                        .collect();
                }
                out.into_iter().map(Element::Integer).collect()
            }
            WindowSpec::Product(a, b) => {
                let left = a.raw();
                let right = b.raw();
                let nested_right = matches!(**b, WindowSpec::Product(..));
                left.iter()
                    .flat_map(|x| {
                        right.iter().map(move |y| {
                            let mut parts = vec![x.clone()];
                            match (nested_right, y) {
                                (true, Element::Tuple(rest)) => parts.extend(rest.iter().cloned()),
                                _ => parts.push(y.clone()),
                            }
                            Element::Tuple(parts)
                        })
                    })
                    .collect()
            }
            WindowSpec::Opposite(inner) => inner.raw(),
        }
    }
}
