//! Base-b expansions of rationals in (0, 1).
//!
//! Every fraction n/m with 0 < n/m < 1 has an eventually periodic expansion
//! in any base b >= 2: a preperiod of s digits followed by a repeating block
//! of ell digits, where s is the least exponent with m'' | b^s for the part
//! m'' of m sharing prime factors with b, and ell is the multiplicative
//! order of b modulo the remaining coprime part m' (ell = 0 when m' = 1).
//! Digits are produced by the residue formula
//!
//! ```text
//! a_i = (b * (n * b^(i-1) mod m) - (n * b^i mod m)) / m
//! ```
//!
//! which is an exact integer in [0, b-1] for every i >= 1.

use num_bigint::BigUint;
use num_integer::{gcd, Integer};
use num_traits::{ToPrimitive, Zero};
use std::fmt;

use crate::numtheory;
use crate::{Error, Result};

/// Default bound on preperiod + period length.
pub const DEFAULT_DIGIT_CAP: u64 = 1_000_000;

/// An eventually periodic expansion of a reduced fraction in (0, 1).
///
/// Digits are machine-word integers in [0, base-1]; the period is the
/// fundamental (minimal) one, and the preperiod is as short as possible.
/// A terminating expansion has an empty period.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Expansion {
    base: u64,
    preperiod: Vec<u64>,
    period: Vec<u64>,
    source_num: u64,
    source_den: u64,
}

impl Expansion {
    pub fn base(&self) -> u64 {
        self.base
    }

    pub fn preperiod(&self) -> &[u64] {
        &self.preperiod
    }

    pub fn period(&self) -> &[u64] {
        &self.period
    }

    /// The reduced fraction this expansion was built from.
    pub fn source(&self) -> (u64, u64) {
        (self.source_num, self.source_den)
    }

    pub fn preperiod_len(&self) -> usize {
        self.preperiod.len()
    }

    pub fn period_len(&self) -> usize {
        self.period.len()
    }

    pub fn is_purely_periodic(&self) -> bool {
        self.preperiod.is_empty() && !self.period.is_empty()
    }

    pub fn is_terminating(&self) -> bool {
        self.period.is_empty()
    }

    /// Builds the canonical expansion with the given digits.
    ///
    /// The digits are interpreted as preperiod and repeating block, reduced
    /// to the exact rational value they denote, and re-expanded; the result
    /// may therefore differ digit-for-digit from the input (shorter period,
    /// absorbed preperiod, collapsed trailing top-digits).
    pub fn from_digits(base: u64, preperiod: Vec<u64>, period: Vec<u64>) -> Result<Expansion> {
        if base < 2 {
            return Err(Error::Domain(format!("base must be at least 2, got {base}")));
        }
        for &d in preperiod.iter().chain(&period) {
            if d >= base {
                return Err(Error::Domain(format!(
                    "digit {d} is not below the base {base}"
                )));
            }
        }
        let total = (preperiod.len() + period.len()) as u64;
        if total == 0 {
            return Err(Error::Domain("an expansion needs at least one digit".into()));
        }
        if total > DEFAULT_DIGIT_CAP {
            return Err(Error::PeriodTooLong {
                needed: total,
                cap: DEFAULT_DIGIT_CAP,
            });
        }
        let (num, den) = fraction_from_digits(base, &preperiod, &period);
        if num.is_zero() || num >= den {
            return Err(Error::Domain("the value must lie in (0, 1)".into()));
        }
        let (Some(n), Some(m)) = (num.to_u64(), den.to_u64()) else {
            return Err(Error::OutOfRange(
                "the reduced value does not fit in 64-bit integers".into(),
            ));
        };
        expand(n, m, base)
    }

    pub(crate) fn from_raw(
        base: u64,
        preperiod: Vec<u64>,
        period: Vec<u64>,
        source_num: u64,
        source_den: u64,
    ) -> Expansion {
        Expansion {
            base,
            preperiod,
            period,
            source_num,
            source_den,
        }
    }
}

impl fmt::Display for Expansion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let text = render(self, RenderStyle::Auto).expect("auto style renders any base");
        f.write_str(&text)
    }
}

fn checked_fraction(n: u64, m: u64, b: u64) -> Result<(u64, u64)> {
    if m <= 1 {
        return Err(Error::Domain(format!(
            "denominator must exceed 1, got {m}"
        )));
    }
    if b < 2 {
        return Err(Error::Domain(format!("base must be at least 2, got {b}")));
    }
    if n == 0 {
        return Err(Error::Domain("the value must lie in (0, 1)".into()));
    }
    let g = gcd(n, m);
    let (n, m) = (n / g, m / g);
    if m == 1 || n >= m {
        return Err(Error::Domain("the value must lie in (0, 1)".into()));
    }
    Ok((n, m))
}

/// Splits `m` into its part coprime to `b` and the preperiod length:
/// returns `(m', s)` with `m = m' * m''`, gcd(m', b) = 1, every prime of
/// `m''` dividing `b`, and `s` the least exponent with `m'' | b^s`.
pub(crate) fn split_denominator(m: u64, b: u64) -> (u64, u64) {
    let mut coprime = m;
    let mut g = gcd(coprime, b);
    while g > 1 {
        coprime /= g;
        g = gcd(coprime, b);
    }
    // Each division strips min(v_p(rem), v_p(b)) from every shared prime p,
    // so the step count is exactly max_p ceil(v_p(m'') / v_p(b)).
    let mut s = 0u64;
    let mut shared = m / coprime;
    while shared > 1 {
        shared /= gcd(shared, b);
        s += 1;
    }
    (coprime, s)
}

/// Preperiod and fundamental period length of 1/m (equivalently of any
/// reduced n/m) in base b.
pub(crate) fn period_structure(m: u64, b: u64) -> Result<(u64, u64)> {
    let (coprime, s) = split_denominator(m, b);
    let ell = if coprime == 1 {
        0
    } else {
        numtheory::multiplicative_order(b, coprime)?
    };
    Ok((s, ell))
}

/// Expands n/m in base b with the default digit cap.
pub fn expand(n: u64, m: u64, b: u64) -> Result<Expansion> {
    expand_with_cap(n, m, b, DEFAULT_DIGIT_CAP)
}

/// Expands n/m in base b, failing with [`Error::PeriodTooLong`] if the
/// expansion needs more than `cap` digits.
///
/// The fraction is reduced first; `0 < n/m < 1` is required afterwards.
pub fn expand_with_cap(n: u64, m: u64, b: u64, cap: u64) -> Result<Expansion> {
    let (n, m) = checked_fraction(n, m, b)?;
    let (s, ell) = period_structure(m, b)?;
    let total = s + ell;
    if total > cap {
        return Err(Error::PeriodTooLong { needed: total, cap });
    }
    // The residue digit formula, evaluated incrementally: r walks through
    // n * b^i mod m, and each digit is (b * r - next r) / m.
    let mut digits = Vec::with_capacity(total as usize);
    let mut r = n;
    for _ in 0..total {
        let scaled = r as u128 * b as u128;
        digits.push((scaled / m as u128) as u64);
        r = (scaled % m as u128) as u64;
    }
    let period = digits.split_off(s as usize);
    Ok(Expansion {
        base: b,
        preperiod: digits,
        period,
        source_num: n,
        source_den: m,
    })
}

/// The i-th digit (1-based) of the expansion of n/m in base b, from the
/// closed-form residue formula. Does not reduce n/m; any 0 < n < m works.
pub fn digit_formula(i: u64, n: u64, m: u64, b: u64) -> Result<u64> {
    if i == 0 {
        return Err(Error::Domain("digit positions are 1-based".into()));
    }
    if m <= 1 {
        return Err(Error::Domain(format!(
            "denominator must exceed 1, got {m}"
        )));
    }
    if b < 2 {
        return Err(Error::Domain(format!("base must be at least 2, got {b}")));
    }
    if n == 0 || n >= m {
        return Err(Error::Domain(format!(
            "numerator must satisfy 0 < n < m, got {n}/{m}"
        )));
    }
    let r_prev = numtheory::mul_mod(n, numtheory::pow_mod(b, i - 1, m), m);
    let r_cur = numtheory::mul_mod(r_prev, b % m, m);
    let scaled = b as u128 * r_prev as u128 - r_cur as u128;
    assert!(
        scaled.is_multiple_of(m as u128),
        "digit numerator {scaled} is not divisible by {m}"
    );
    Ok((scaled / m as u128) as u64)
}

/// First `count` digits of n/m in base b by schoolbook long division.
///
/// Kept deliberately naive as an independent cross-check for [`expand`].
pub fn long_division_oracle(n: u64, m: u64, b: u64, count: u64) -> Result<Vec<u64>> {
    if count == 0 {
        return Err(Error::Domain("count must be positive".into()));
    }
    if m <= 1 {
        return Err(Error::Domain(format!(
            "denominator must exceed 1, got {m}"
        )));
    }
    if b < 2 {
        return Err(Error::Domain(format!("base must be at least 2, got {b}")));
    }
    if n == 0 || n >= m {
        return Err(Error::Domain(format!(
            "numerator must satisfy 0 < n < m, got {n}/{m}"
        )));
    }
    let mut digits = Vec::with_capacity(count as usize);
    let mut r = n;
    for _ in 0..count {
        let carry = r as u128 * b as u128;
        digits.push((carry / m as u128) as u64);
        r = (carry % m as u128) as u64;
    }
    Ok(digits)
}

pub(crate) fn digits_value(digits: &[u64], base: u64) -> BigUint {
    let big_base = BigUint::from(base);
    let mut acc = BigUint::zero();
    for &d in digits {
        acc = acc * &big_base + d;
    }
    acc
}

fn fraction_from_digits(base: u64, preperiod: &[u64], period: &[u64]) -> (BigUint, BigUint) {
    let big_base = BigUint::from(base);
    let head = digits_value(preperiod, base);
    let shift = big_base.pow(preperiod.len() as u32);
    let (num, den) = if period.is_empty() {
        (head, shift)
    } else {
        let block = digits_value(period, base);
        let wheel = big_base.pow(period.len() as u32) - 1u32;
        (head * &wheel + block, shift * &wheel)
    };
    let g = num.gcd(&den);
    (num / &g, den / &g)
}

/// The exact value of an expansion as a reduced fraction (numerator,
/// denominator), computed from the digits alone.
pub fn value_of(e: &Expansion) -> (BigUint, BigUint) {
    fraction_from_digits(e.base, &e.preperiod, &e.period)
}

/// Whether 1/m in base b is a cyclic number generator: m is an odd prime
/// and b is a primitive root modulo m, so the p-1 rotations of the period
/// enumerate all i/m.
pub fn is_cyclic_generator(m: u64, b: u64) -> Result<bool> {
    if m <= 1 {
        return Err(Error::Domain(format!("modulus must exceed 1, got {m}")));
    }
    if b < 2 {
        return Err(Error::Domain(format!("base must be at least 2, got {b}")));
    }
    if gcd(b, m) != 1 {
        return Err(Error::Domain(format!("{b} and {m} must be coprime")));
    }
    if m == 2 || m.is_multiple_of(2) || !numtheory::is_prime(m) {
        return Ok(false);
    }
    Ok(numtheory::multiplicative_order(b, m)? == m - 1)
}

/// One numerator's expansion inside a cyclic family: the period of
/// `numerator`/p equals the period of 1/p rotated left by `offset`, which
/// is the 0-based position of `numerator` among the powers of b mod p.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Rotation {
    pub numerator: u64,
    pub offset: usize,
    pub expansion: Expansion,
}

/// All expansions i/p for i = 1..p-1 when b is a primitive root mod p,
/// together with each one's rotation offset.
pub fn rotations(p: u64, b: u64) -> Result<Vec<Rotation>> {
    if !is_cyclic_generator(p, b)? {
        return Err(Error::Domain(format!(
            "{b} is not a primitive root modulo {p}"
        )));
    }
    let mut position = vec![0usize; p as usize];
    let mut r = 1u64;
    for j in 0..(p - 1) as usize {
        position[r as usize] = j;
        r = numtheory::mul_mod(r, b, p);
    }
    (1..p)
        .map(|i| {
            Ok(Rotation {
                numerator: i,
                offset: position[i as usize],
                expansion: expand(i, p, b)?,
            })
        })
        .collect()
}

/// How digits are written out.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum RenderStyle {
    /// Alnum for bases up to 36, bracketed decimal above.
    #[default]
    Auto,
    /// One character per digit: 0-9 then a-z. Requires base <= 36.
    Alnum,
    /// Every digit as `[N]` in decimal, any base.
    Bracket,
}

fn alnum_char(d: u64) -> char {
    debug_assert!(d < 36);
    if d < 10 {
        (b'0' + d as u8) as char
    } else {
        (b'a' + (d - 10) as u8) as char
    }
}

/// Renders a digit run in the given style.
pub fn render_digits(digits: &[u64], base: u64, style: RenderStyle) -> Result<String> {
    if base < 2 {
        return Err(Error::Domain(format!("base must be at least 2, got {base}")));
    }
    let alnum = match style {
        RenderStyle::Auto => base <= 36,
        RenderStyle::Alnum => {
            if base > 36 {
                return Err(Error::Domain(format!(
                    "alnum digits cover bases up to 36, got {base}"
                )));
            }
            true
        }
        RenderStyle::Bracket => false,
    };
    let mut out = String::new();
    for &d in digits {
        debug_assert!(d < base);
        if alnum {
            out.push(alnum_char(d));
        } else {
            out.push_str(&format!("[{d}]"));
        }
    }
    Ok(out)
}

/// Renders an expansion as `0.` + preperiod + `(` period `)`, the period
/// part omitted for terminating expansions.
pub fn render(e: &Expansion, style: RenderStyle) -> Result<String> {
    let mut out = String::from("0.");
    out.push_str(&render_digits(&e.preperiod, e.base, style)?);
    if !e.period.is_empty() {
        out.push('(');
        out.push_str(&render_digits(&e.period, e.base, style)?);
        out.push(')');
    }
    Ok(out)
}

/// Digits of a nonnegative integer in the given base, most significant
/// first. Zero renders as a single 0 digit.
pub fn digits_in_base(value: &BigUint, base: u64) -> Result<Vec<u64>> {
    if base < 2 {
        return Err(Error::Domain(format!("base must be at least 2, got {base}")));
    }
    if value.is_zero() {
        return Ok(vec![0]);
    }
    let big_base = BigUint::from(base);
    let mut digits = Vec::new();
    let mut rest = value.clone();
    while !rest.is_zero() {
        let (q, r) = rest.div_rem(&big_base);
        digits.push(r.to_u64().expect("remainder below a u64 base"));
        rest = q;
    }
    digits.reverse();
    Ok(digits)
}

/// Result of [`parse`]: the canonical expansion, plus whether the input
/// digits had to be rewritten to reach canonical form.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Parsed {
    pub expansion: Expansion,
    pub canonicalized: bool,
}

/// Parses `0.` + digits + optional `(` digits `)` back into an expansion.
///
/// Digits may be alnum characters or bracketed decimal `[N]` in any mix.
/// The result is canonical: a non-minimal period, an absorbable preperiod
/// tail, or a trailing all-top-digit period are rewritten, and the
/// `canonicalized` flag reports that this happened.
pub fn parse(text: &str, base: u64) -> Result<Parsed> {
    if base < 2 {
        return Err(Error::Domain(format!("base must be at least 2, got {base}")));
    }
    let (preperiod, period) = lex(text, base)?;
    let expansion = Expansion::from_digits(base, preperiod.clone(), period.clone())?;
    let canonicalized = expansion.preperiod != preperiod || expansion.period != period;
    Ok(Parsed {
        expansion,
        canonicalized,
    })
}

fn lex(text: &str, base: u64) -> Result<(Vec<u64>, Vec<u64>)> {
    let err = |pos: usize, msg: String| Error::Parse { pos, msg };
    let bytes = text.as_bytes();
    if !text.starts_with("0.") {
        return Err(err(0, "expected a leading \"0.\"".into()));
    }
    let mut preperiod = Vec::new();
    let mut period = Vec::new();
    let mut in_period = false;
    let mut period_closed = false;
    let mut i = 2;
    while i < bytes.len() {
        if period_closed {
            return Err(err(i, "trailing input after the period".into()));
        }
        match bytes[i] {
            b'(' if !in_period => {
                in_period = true;
                i += 1;
            }
            b')' if in_period => {
                if period.is_empty() {
                    return Err(err(i, "the period may not be empty".into()));
                }
                in_period = false;
                period_closed = true;
                i += 1;
            }
            b'[' => {
                let start = i;
                let mut j = i + 1;
                while j < bytes.len() && bytes[j].is_ascii_digit() {
                    j += 1;
                }
                if j == i + 1 {
                    return Err(err(start, "expected a decimal digit value after '['".into()));
                }
                if j == bytes.len() || bytes[j] != b']' {
                    return Err(err(start, "unterminated '[': missing ']'".into()));
                }
                let value: u64 = text[i + 1..j]
                    .parse()
                    .map_err(|_| err(start, "digit value does not fit in 64 bits".into()))?;
                if value >= base {
                    return Err(err(
                        start,
                        format!("digit {value} is not below the base {base}"),
                    ));
                }
                if in_period {
                    period.push(value);
                } else {
                    preperiod.push(value);
                }
                i = j + 1;
            }
            c if c.is_ascii_alphanumeric() => {
                let value = match c {
                    b'0'..=b'9' => (c - b'0') as u64,
                    b'a'..=b'z' => (c - b'a') as u64 + 10,
                    _ => (c - b'A') as u64 + 10,
                };
                if value >= base {
                    return Err(err(
                        i,
                        format!("digit {value} is not below the base {base}"),
                    ));
                }
                if in_period {
                    period.push(value);
                } else {
                    preperiod.push(value);
                }
                i += 1;
            }
            _ => {
                let c = text[i..].chars().next().unwrap();
                return Err(err(i, format!("unexpected character {c:?}")));
            }
        }
    }
    if in_period {
        return Err(err(text.len(), "unterminated period: missing ')'".into()));
    }
    if preperiod.is_empty() && period.is_empty() {
        return Err(err(text.len(), "expected at least one digit".into()));
    }
    Ok((preperiod, period))
}
