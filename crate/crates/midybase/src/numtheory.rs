//! Exact modular arithmetic: powers, multiplicative orders, primality,
//! primitive roots, roots of unity, and the block-sum constant alpha.
//!
//! Everything here works on `u64` scalars with `u128` intermediates, which
//! is exact for any modulus that fits in 64 bits. Routines that need a
//! factorization (orders, roots of unity) use trial division and therefore
//! bound their inputs by [`MAX_FACTOR_INPUT`].

use num_integer::gcd;

use crate::{Error, Result};

/// Largest input the trial-division factoring routines accept (2^40).
///
/// Orders and roots of unity factor numbers no larger than their modulus,
/// so this also bounds the modulus range those operations support.
pub const MAX_FACTOR_INPUT: u64 = 1 << 40;

pub(crate) fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

pub(crate) fn pow_mod(mut base: u64, mut exp: u64, m: u64) -> u64 {
    debug_assert!(m > 1);
    base %= m;
    let mut acc = 1u64;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, m);
        }
        base = mul_mod(base, base, m);
        exp >>= 1;
    }
    acc
}

/// `base^exp mod modulus` by binary exponentiation.
pub fn mod_pow(base: u64, exp: u64, modulus: u64) -> Result<u64> {
    if modulus <= 1 {
        return Err(Error::Domain(format!(
            "modulus must exceed 1, got {modulus}"
        )));
    }
    Ok(pow_mod(base, exp, modulus))
}

pub(crate) fn ensure_odd_prime(p: u64) -> Result<()> {
    if p < 3 || p.is_multiple_of(2) || !is_prime(p) {
        return Err(Error::Domain(format!("{p} is not an odd prime")));
    }
    Ok(())
}

/// Prime factorization by trial division, smallest prime first.
pub(crate) fn factorize(mut n: u64) -> Result<Vec<(u64, u32)>> {
    if n > MAX_FACTOR_INPUT {
        return Err(Error::OutOfRange(format!(
            "{n} exceeds the factoring limit {MAX_FACTOR_INPUT}"
        )));
    }
    let mut factors = Vec::new();
    let mut d = 2u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            let mut e = 0u32;
            while n.is_multiple_of(d) {
                n /= d;
                e += 1;
            }
            factors.push((d, e));
        }
        d += if d == 2 { 1 } else { 2 };
    }
    if n > 1 {
        factors.push((n, 1));
    }
    Ok(factors)
}

fn euler_phi(factors: &[(u64, u32)]) -> u64 {
    factors.iter().map(|&(p, e)| (p - 1) * p.pow(e - 1)).product()
}

/// Multiplicative order of `b` modulo `m`: the least `k >= 1` with
/// `b^k = 1 (mod m)`.
///
/// Starts from Euler's phi(m) and strips prime factors while the power
/// stays 1, so the cost is a factorization plus O(log^2) modular powers
/// rather than a linear scan.
pub fn multiplicative_order(b: u64, m: u64) -> Result<u64> {
    if b <= 1 {
        return Err(Error::Domain(format!("base must exceed 1, got {b}")));
    }
    if m <= 1 {
        return Err(Error::Domain(format!("modulus must exceed 1, got {m}")));
    }
    if gcd(b, m) != 1 {
        return Err(Error::Domain(format!(
            "{b} and {m} share a factor; the order is undefined"
        )));
    }
    let phi = euler_phi(&factorize(m)?);
    let mut order = phi;
    for &(q, _) in &factorize(phi)? {
        while order.is_multiple_of(q) && pow_mod(b, order / q, m) == 1 {
            order /= q;
        }
    }
    Ok(order)
}

/// Deterministic primality test for any `u64`.
///
/// Miller-Rabin with the first twelve primes as witnesses, a set known to
/// be exact for all inputs below 3.3 * 10^24.
pub fn is_prime(n: u64) -> bool {
    const WITNESSES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];
    if n < 2 {
        return false;
    }
    for p in WITNESSES {
        if n == p {
            return true;
        }
        if n.is_multiple_of(p) {
            return false;
        }
    }
    let s = (n - 1).trailing_zeros();
    let d = (n - 1) >> s;
    'witness: for a in WITNESSES {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// Whether `b` generates the full multiplicative group mod the odd prime `p`.
pub fn is_primitive_root(b: u64, p: u64) -> Result<bool> {
    if b <= 1 {
        return Err(Error::Domain(format!("base must exceed 1, got {b}")));
    }
    ensure_odd_prime(p)?;
    if b.is_multiple_of(p) {
        return Err(Error::Domain(format!("{p} divides {b}")));
    }
    Ok(multiplicative_order(b, p)? == p - 1)
}

/// The d-th roots of unity modulo an odd prime, sorted ascending.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RootsSet {
    pub p: u64,
    pub d: u64,
    /// Exactly gcd(d, p-1) values in [1, p-1], strictly increasing, always
    /// containing 1.
    pub roots: Vec<u64>,
}

fn smallest_primitive_root(p: u64, group_factors: &[(u64, u32)]) -> u64 {
    // An odd prime always has a primitive root below p.
    (2..p)
        .find(|&g| {
            group_factors
                .iter()
                .all(|&(q, _)| pow_mod(g, (p - 1) / q, p) != 1)
        })
        .expect("odd prime has a primitive root")
}

/// Solutions of `x^d = 1 (mod p)` for an odd prime `p`.
///
/// They form the unique cyclic subgroup of order gcd(d, p-1), generated by
/// `g^((p-1)/gcd(d, p-1))` for a primitive root `g`.
pub fn dth_roots_of_unity(d: u64, p: u64) -> Result<RootsSet> {
    if d == 0 {
        return Err(Error::Domain("d must be positive".into()));
    }
    ensure_odd_prime(p)?;
    let group_factors = factorize(p - 1)?;
    let g = smallest_primitive_root(p, &group_factors);
    let count = gcd(d, p - 1);
    let h = pow_mod(g, (p - 1) / count, p);
    let mut roots = Vec::with_capacity(count as usize);
    let mut x = 1u64;
    for _ in 0..count {
        roots.push(x);
        x = mul_mod(x, h, p);
    }
    debug_assert_eq!(x, 1, "subgroup generator has wrong order");
    roots.sort_unstable();
    Ok(RootsSet { p, d, roots })
}

/// The block-sum constant alpha = (sum of d-th roots of unity mod p) / p,
/// for an odd prime `p` and a divisor `d >= 2` of `p - 1`.
///
/// The root sum is always a positive multiple of `p`; a non-integer
/// quotient would mean an implementation bug and aborts the process.
pub fn alpha_constant(p: u64, d: u64) -> Result<u64> {
    ensure_odd_prime(p)?;
    if d < 2 {
        return Err(Error::Domain(format!("d must be at least 2, got {d}")));
    }
    if !(p - 1).is_multiple_of(d) {
        return Err(Error::Domain(format!(
            "{d} does not divide p - 1 = {}",
            p - 1
        )));
    }
    let roots = dth_roots_of_unity(d, p)?;
    let sum: u128 = roots.roots.iter().map(|&r| r as u128).sum();
    assert!(
        sum.is_multiple_of(p as u128),
        "root sum {sum} is not divisible by p = {p}; alpha is not an integer"
    );
    Ok((sum / p as u128) as u64)
}
