//! Change-of-base keys and the digitwise base-shift rule.
//!
//! For a reduced fraction n/m in base b, the key residues k_i = b^(i-1) mod m
//! (generalized to n * b^(i-1) mod m for numerators above 1) turn the
//! expansion in base b into the expansion in base b + m*t by pure digit
//! arithmetic: a'_i = a_i + t * k_i, position by position, with preperiod
//! and period lengths unchanged. No division happens here; agreement with a
//! fresh expansion in the target base is checked in the test suites.

use std::fmt;

use crate::expansion::{self, Expansion};
use crate::numtheory;
use crate::{Error, Result};

/// The residue sequence k_i = b^(i-1) mod m for i = 1..=L, where L is the
/// digit count (preperiod + period) of 1/m in base b.
///
/// k_1 is always 1, every residue is in [0, m-1], and the sequence depends
/// only on b mod m.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Key {
    modulus: u64,
    base: u64,
    residues: Vec<u64>,
}

impl Key {
    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    pub fn base(&self) -> u64 {
        self.base
    }

    pub fn residues(&self) -> &[u64] {
        &self.residues
    }

    pub fn len(&self) -> usize {
        self.residues.len()
    }

    pub fn is_empty(&self) -> bool {
        self.residues.is_empty()
    }
}

impl fmt::Display for Key {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "\u{27e8}")?;
        for (i, r) in self.residues.iter().enumerate() {
            if i > 0 {
                write!(f, " ")?;
            }
            write!(f, "{r}")?;
        }
        write!(f, "\u{27e9}")
    }
}

/// The key of (m, b): powers of b mod m along the digit positions of 1/m.
pub fn key_of(m: u64, b: u64) -> Result<Key> {
    if m <= 1 {
        return Err(Error::Domain(format!("modulus must exceed 1, got {m}")));
    }
    if b < 2 {
        return Err(Error::Domain(format!("base must be at least 2, got {b}")));
    }
    let (s, ell) = expansion::period_structure(m, b)?;
    let len = s + ell;
    if len > expansion::DEFAULT_DIGIT_CAP {
        return Err(Error::PeriodTooLong {
            needed: len,
            cap: expansion::DEFAULT_DIGIT_CAP,
        });
    }
    let mut residues = Vec::with_capacity(len as usize);
    let mut r = 1u64;
    for _ in 0..len {
        residues.push(r);
        r = numtheory::mul_mod(r, b, m);
    }
    Ok(Key {
        modulus: m,
        base: b,
        residues,
    })
}

/// Rewrites an expansion of n/m from base b to base b + m*t without
/// dividing: each digit grows by t times its key residue n * b^(i-1) mod m.
///
/// `t = 0` returns the expansion unchanged.
pub fn rebase(e: &Expansion, t: u64) -> Result<Expansion> {
    if t == 0 {
        return Ok(e.clone());
    }
    let (n, m) = e.source();
    let b = e.base();
    let target = m
        .checked_mul(t)
        .and_then(|mt| b.checked_add(mt))
        .ok_or_else(|| {
            Error::OutOfRange(format!(
                "target base {b} + {m} * {t} does not fit in 64 bits"
            ))
        })?;
    let mut shifted = Vec::with_capacity(e.preperiod_len() + e.period_len());
    let mut residue = n % m;
    for &digit in e.preperiod().iter().chain(e.period()) {
        let grown = digit as u128 + t as u128 * residue as u128;
        // a_i <= b-1 and k_i <= m-1 bound every output digit below b + m*t.
        assert!(
            grown < target as u128,
            "rebased digit {grown} escaped the target base {target}"
        );
        shifted.push(grown as u64);
        residue = numtheory::mul_mod(residue, b, m);
    }
    let period = shifted.split_off(e.preperiod_len());
    Ok(Expansion::from_raw(target, shifted, period, n, m))
}

/// Parses a key's textual residue list: space-separated decimal values,
/// optionally wrapped in angle brackets.
pub fn parse_residues(text: &str) -> Result<Vec<u64>> {
    let mut inner = text.trim();
    for (open, close) in [("\u{27e8}", "\u{27e9}"), ("<", ">")] {
        if let (Some(rest), true) = (inner.strip_prefix(open), inner.ends_with(close)) {
            inner = rest.strip_suffix(close).unwrap_or(rest);
            break;
        }
    }
    let mut residues = Vec::new();
    for token in inner.split_whitespace() {
        let pos = token.as_ptr() as usize - text.as_ptr() as usize;
        let value = token.parse::<u64>().map_err(|_| Error::Parse {
            pos,
            msg: format!("invalid residue {token:?}"),
        })?;
        residues.push(value);
    }
    if residues.is_empty() {
        return Err(Error::Parse {
            pos: 0,
            msg: "expected at least one residue".into(),
        });
    }
    Ok(residues)
}
