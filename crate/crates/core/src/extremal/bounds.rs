//! Exact evaluation of the sunflower and disjoint-circuit bound functions.
//!
//! * `f(1, n) = n`, `f(s, n) = s (n - 1) f(s - 1, n)`
//! * `g(l, d) = f(l, 2^(l-1) d)`
//! * `h(l, d) = g(l, t d)`

use std::fmt;
use std::str::FromStr;

use num_bigint::BigUint;
use num_traits::One;

use crate::error::{Error, Result};

/// Arguments above this are refused rather than evaluated.
const MAX_ARGUMENT: u64 = 1 << 16;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BoundName {
    F,
    G,
    H,
}

impl fmt::Display for BoundName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            BoundName::F => "f",
            BoundName::G => "g",
            BoundName::H => "h",
        })
    }
}

impl FromStr for BoundName {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "f" => Ok(BoundName::F),
            "g" => Ok(BoundName::G),
            "h" => Ok(BoundName::H),
            _ => Err(Error::InvalidParameters(format!("unknown bound {s:?}"))),
        }
    }
}

/// The three bound functions; `h` needs the `t` it is evaluated for.
#[derive(Clone, Copy, Debug, Default)]
pub struct BoundTable {
    pub t: Option<u64>,
}

impl BoundTable {
    pub fn new(t: Option<u64>) -> Self {
        BoundTable { t }
    }

    /// Sunflower bound `f(s, n)`.
    pub fn f(&self, s: u64, n: u64) -> Result<BigUint> {
        check("f", &[s, n])?;
        Ok(f_big(s, &BigUint::from(n)))
    }

    /// Disjoint-circuit bound `g(l, d) = f(l, 2^(l-1) d)`.
    pub fn g(&self, l: u64, d: u64) -> Result<BigUint> {
        check("g", &[l, d])?;
        Ok(g_big(l, &BigUint::from(d)))
    }

    /// Disjoint-cocircuit bound `h(l, d) = g(l, t d)`.
    pub fn h(&self, l: u64, d: u64) -> Result<BigUint> {
        let t = self
            .t
            .ok_or_else(|| Error::InvalidParameters("h(l, d) needs t".into()))?;
        check("h", &[l, d, t])?;
        Ok(g_big(l, &(BigUint::from(t) * d)))
    }

    pub fn eval(&self, name: BoundName, args: &[u64]) -> Result<BigUint> {
        let [a, b] = args else {
            return Err(Error::InvalidParameters(format!(
                "{name} takes two arguments, got {}",
                args.len()
            )));
        };
        match name {
            BoundName::F => self.f(*a, *b),
            BoundName::G => self.g(*a, *b),
            BoundName::H => self.h(*a, *b),
        }
    }
}

/// `f(s, n)` for small arguments; `None` if it does not fit in `usize`.
pub fn sunflower_bound(s: usize, n: usize) -> Option<usize> {
    let v = BoundTable::default().f(s as u64, n as u64).ok()?;
    usize::try_from(v).ok()
}

fn check(name: &'static str, args: &[u64]) -> Result<()> {
    let joined = || {
        args.iter()
            .map(u64::to_string)
            .collect::<Vec<_>>()
            .join(", ")
    };
    if args.contains(&0) {
        return Err(Error::InvalidParameters(format!(
            "{name}({}) needs positive arguments",
            joined()
        )));
    }
    if args[0] > MAX_ARGUMENT {
        return Err(Error::Overflow {
            name,
            args: joined(),
        });
    }
    Ok(())
}

fn f_big(s: u64, n: &BigUint) -> BigUint {
    let mut acc = n.clone();
    let step = n - BigUint::one();
    for k in 2..=s {
        acc = acc * &step * k;
    }
    acc
}

fn g_big(l: u64, d: &BigUint) -> BigUint {
    f_big(l, &((BigUint::one() << (l - 1)) * d))
}
