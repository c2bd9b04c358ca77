//! Period partitions and the block-sum identity.
//!
//! For an odd prime p with gcd(b, p) = 1, split the period of 1/p (length
//! ell) into d equal blocks of ell/d digits. Read as integers, the blocks
//! always sum to alpha * (b^(ell/d) - 1): an integer multiple of the number
//! whose ell/d digits are all b-1. The multiplier alpha depends only on
//! (p, d), never on the base, and equals the d-th roots of unity mod p
//! summed and divided by p. [`report`] computes everything both ways and
//! aborts on any disagreement, so a returned report is a verified instance.

use num_bigint::BigUint;
use num_integer::{gcd, Integer};
use num_traits::{CheckedSub, ToPrimitive, Zero};

use crate::expansion::{self, Expansion};
use crate::numtheory;
use crate::{Error, Result};

/// A verified block partition of the period of 1/p in base b.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PartitionReport {
    pub p: u64,
    pub base: u64,
    /// Fundamental period length of 1/p in the base.
    pub ell: u64,
    /// Number of blocks; divides `ell`.
    pub d: u64,
    /// Digits per block: ell / d.
    pub block_digit_width: u64,
    /// The d block values, each below base^block_digit_width.
    pub blocks: Vec<BigUint>,
    pub sum: BigUint,
    /// base^block_digit_width - 1: the all-top-digit number the sum is a
    /// multiple of.
    pub repunit: BigUint,
    /// sum / repunit; also (sum of d-th roots of unity mod p) / p.
    pub alpha: u64,
}

/// Splits a purely periodic expansion's period into d blocks of equal
/// digit width, keeping digit order and leading zeros.
pub fn partition(e: &Expansion, d: u64) -> Result<Vec<Vec<u64>>> {
    if !e.preperiod().is_empty() {
        return Err(Error::Domain(
            "the expansion must be purely periodic".into(),
        ));
    }
    let ell = e.period_len() as u64;
    if d < 2 {
        return Err(Error::Domain(format!("d must be at least 2, got {d}")));
    }
    if ell == 0 || !ell.is_multiple_of(d) {
        return Err(Error::Domain(format!(
            "d = {d} does not divide the period length {ell}"
        )));
    }
    let width = (ell / d) as usize;
    Ok(e.period().chunks_exact(width).map(<[u64]>::to_vec).collect())
}

/// The i-th block value (1-based) of the d-way partition of 1/p in base b,
/// straight from modular residues:
///
/// ```text
/// A_i = (b^(ell/d) * (b^((i-1) ell/d) mod p) - (b^(i ell/d) mod p)) / p
/// ```
///
/// The division is always exact; a remainder would be a bug and panics.
pub fn block_value(p: u64, b: u64, ell: u64, d: u64, i: u64) -> Result<BigUint> {
    numtheory::ensure_odd_prime(p)?;
    if b < 2 {
        return Err(Error::Domain(format!("base must be at least 2, got {b}")));
    }
    if b.is_multiple_of(p) {
        return Err(Error::Domain(format!("{p} divides the base {b}")));
    }
    if d < 2 {
        return Err(Error::Domain(format!("d must be at least 2, got {d}")));
    }
    if ell == 0 || !ell.is_multiple_of(d) {
        return Err(Error::Domain(format!(
            "d = {d} does not divide the period length {ell}"
        )));
    }
    if i == 0 || i > d {
        return Err(Error::Domain(format!(
            "block index must lie in 1..={d}, got {i}"
        )));
    }
    let width = ell / d;
    let r_prev = numtheory::pow_mod(b, (i - 1) * width, p);
    let r_cur = numtheory::pow_mod(b, i * width, p);
    let scaled = BigUint::from(b).pow(width as u32) * r_prev;
    let numerator = scaled
        .checked_sub(&BigUint::from(r_cur))
        .expect("block numerator is nonnegative");
    let (value, remainder) = numerator.div_rem(&BigUint::from(p));
    assert!(
        remainder.is_zero(),
        "block numerator is not divisible by p = {p}"
    );
    Ok(value)
}

/// Expands 1/p in base b, partitions the period into d blocks, and checks
/// the block-sum identity end to end.
///
/// Every quantity is computed twice: blocks from digit slices and from
/// [`block_value`], alpha from the block sum and from
/// [`numtheory::alpha_constant`]. Disagreement panics rather than returning
/// a bad report.
pub fn report(p: u64, b: u64, d: u64) -> Result<PartitionReport> {
    numtheory::ensure_odd_prime(p)?;
    if b < 2 {
        return Err(Error::Domain(format!("base must be at least 2, got {b}")));
    }
    if gcd(b, p) != 1 {
        return Err(Error::Domain(format!("{p} divides the base {b}")));
    }
    if d < 2 {
        return Err(Error::Domain(format!("d must be at least 2, got {d}")));
    }
    let ell = numtheory::multiplicative_order(b, p)?;
    if ell % d != 0 {
        return Err(Error::Domain(format!(
            "d = {d} does not divide the period length {ell} of 1/{p} in base {b}"
        )));
    }
    let width = ell / d;
    let e = expansion::expand(1, p, b)?;
    debug_assert_eq!(e.period_len() as u64, ell);
    let blocks: Vec<BigUint> = partition(&e, d)?
        .iter()
        .map(|digits| expansion::digits_value(digits, b))
        .collect();
    for (idx, block) in blocks.iter().enumerate() {
        let residue_form = block_value(p, b, ell, d, idx as u64 + 1)?;
        assert_eq!(
            *block,
            residue_form,
            "digit block {} of 1/{p} base {b} disagrees with the residue formula",
            idx + 1
        );
    }
    let sum: BigUint = blocks.iter().sum();
    let repunit = BigUint::from(b).pow(width as u32) - 1u32;
    let (alpha_quotient, remainder) = sum.div_rem(&repunit);
    assert!(
        remainder.is_zero(),
        "block sum of 1/{p} base {b}, d = {d} is not a multiple of the repunit"
    );
    let alpha = alpha_quotient
        .to_u64()
        .expect("alpha is below d and fits in 64 bits");
    let constant = numtheory::alpha_constant(p, d)?;
    assert_eq!(
        alpha, constant,
        "block-sum alpha disagrees with the roots-of-unity constant for p = {p}, d = {d}"
    );
    Ok(PartitionReport {
        p,
        base: b,
        ell,
        d,
        block_digit_width: width,
        blocks,
        sum,
        repunit,
        alpha,
    })
}
