//! Numeric thresholds: the density c, the class size s = ⌊c^{r²} ln n⌋, the
//! large-class threshold n^{1−c^{r−1}}, and the density preconditions of the
//! biclique guarantee.
//!
//! c travels as an exact rational end to end. Logarithms and the final power
//! are floating point, except that `compute_s` re-evaluates with rational
//! interval arithmetic whenever the double-precision product lands within
//! 1e-9 of an integer, so the floor is never decided by round-off.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::Error;
use crate::graph::Pattern;

/// Margin used when comparing floating-point quantities against exact ones.
pub const FLOAT_MARGIN: f64 = 1e-9;

fn half() -> BigRational {
    BigRational::new(BigInt::one(), BigInt::from(2))
}

/// c^k for a rational c.
pub fn rational_pow(c: &BigRational, k: u32) -> BigRational {
    BigRational::new(c.numer().pow(k), c.denom().pow(k))
}

/// How a raw count should be interpreted by `compute_c`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CountKind {
    Copies,
    Embeddings,
}

/// Density figure with clamp provenance.
#[derive(Clone, Debug)]
pub struct Density {
    pub c: BigRational,
    pub clamped: bool,
    pub copies: u64,
}

/// c = copies / n^r, clamped to 1/2 with a flag when the true density is
/// larger (a larger density only strengthens the hypothesis).
pub fn compute_c(
    count: u64,
    n: usize,
    r: u32,
    aut: u64,
    kind: CountKind,
) -> Result<Density, Error> {
    let copies = match kind {
        CountKind::Copies => count,
        CountKind::Embeddings => crate::embed::copies_from_embeddings(count, aut)?,
    };
    if copies == 0 {
        return Err(Error::ZeroDensity);
    }
    let c = BigRational::new(BigInt::from(copies), BigInt::from(n).pow(r));
    if c > half() {
        Ok(Density {
            c: half(),
            clamped: true,
            copies,
        })
    } else {
        Ok(Density {
            c,
            clamped: false,
            copies,
        })
    }
}

/// ⌊c^{r²} · ln n⌋.
pub fn compute_s(c: &BigRational, r: u32, n: usize) -> u64 {
    if n < 2 {
        return 0;
    }
    let exp = r * r;
    let c_f = c.to_f64().unwrap_or(0.0);
    let product = c_f.powi(exp as i32) * (n as f64).ln();
    if (product - product.round()).abs() < FLOAT_MARGIN {
        compute_s_exact(c, exp, n as u64)
    } else {
        product.floor() as u64
    }
}

/// Interval-arithmetic fallback: bracket c^{r²}·ln n between rationals and
/// tighten until both ends floor to the same integer. ln n is irrational for
/// integer n >= 2, so the loop terminates.
fn compute_s_exact(c: &BigRational, exp: u32, n: u64) -> u64 {
    let c_pow = rational_pow(c, exp);
    let mut terms = 48;
    loop {
        let (lo, hi) = ln_bounds(n, terms);
        let p_lo = (&c_pow * lo).floor();
        let p_hi = (&c_pow * hi).floor();
        if p_lo == p_hi {
            return p_lo.to_integer().to_u64().unwrap_or(0);
        }
        terms *= 2;
        assert!(terms <= 1 << 16, "ln bracket failed to separate an integer");
    }
}

/// Rational lower/upper bounds on ln n via ln n = k·ln 2 + ln(n / 2^k) and
/// the atanh series, whose argument stays within [0, 1/3].
fn ln_bounds(n: u64, terms: usize) -> (BigRational, BigRational) {
    debug_assert!(n >= 2);
    let k = 63 - n.leading_zeros() as u64; // floor(log2 n)
    let x = BigRational::new(BigInt::from(n), BigInt::from(2u64).pow(k as u32)); // in [1, 2)
    let third = BigRational::new(BigInt::one(), BigInt::from(3));
    let (ln2_lo, ln2_hi) = atanh_bounds(&third, terms);
    let z = (&x - BigRational::one()) / (&x + BigRational::one());
    let (lnx_lo, lnx_hi) = atanh_bounds(&z, terms);
    let kk = BigRational::from_integer(BigInt::from(2 * k));
    let two = BigRational::from_integer(BigInt::from(2));
    (&kk * ln2_lo + &two * lnx_lo, kk * ln2_hi + two * lnx_hi)
}

/// Partial sums of atanh(z) = Σ z^{2j+1}/(2j+1) with an exact tail bound.
fn atanh_bounds(z: &BigRational, terms: usize) -> (BigRational, BigRational) {
    debug_assert!(!z.is_negative());
    let z2 = z * z;
    let mut sum = BigRational::zero();
    let mut z_pow = z.clone();
    for j in 0..terms {
        sum += &z_pow / BigRational::from_integer(BigInt::from(2 * j as u64 + 1));
        z_pow *= &z2;
    }
    // tail <= z^{2T+1} / ((2T+1) (1 - z^2))
    let tail = &z_pow
        / (BigRational::from_integer(BigInt::from(2 * terms as u64 + 1))
            * (BigRational::one() - z2));
    let hi = &sum + tail;
    (sum, hi)
}

/// n^{1−c^{r−1}} with the exponent formed exactly first.
pub fn compute_t_threshold(c: &BigRational, r: u32, n: usize) -> f64 {
    let exponent = BigRational::one() - rational_pow(c, r - 1);
    (n as f64).powf(exponent.to_f64().unwrap_or(0.0))
}

/// The two density preconditions, evaluated with exact rational arithmetic.
#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
pub struct PreconditionFlags {
    /// s <= (c/2^r)·m + 1
    pub s_ok: bool,
    /// e(F) >= (c/2^{r-1})·m·n
    pub edges_ok: bool,
}

impl PreconditionFlags {
    pub fn both(&self) -> bool {
        self.s_ok && self.edges_ok
    }
}

pub fn check_density_preconditions(
    m: usize,
    n: usize,
    edges: usize,
    c: &BigRational,
    r: u32,
    s: u64,
) -> PreconditionFlags {
    let m_rat = BigRational::from_integer(BigInt::from(m));
    let n_rat = BigRational::from_integer(BigInt::from(n));
    let s_rat = BigRational::from_integer(BigInt::from(s));
    let edges_rat = BigRational::from_integer(BigInt::from(edges));
    let pow_r = BigRational::from_integer(BigInt::from(2).pow(r));
    let pow_r1 = BigRational::from_integer(BigInt::from(2).pow(r - 1));
    PreconditionFlags {
        s_ok: s_rat <= c / &pow_r * &m_rat + BigRational::one(),
        edges_ok: edges_rat >= c / &pow_r1 * m_rat * n_rat,
    }
}

/// Threshold summary for one extraction; serialized into the witness JSON.
#[derive(Clone, Debug)]
pub struct BoundsReport {
    pub n: usize,
    pub r: u32,
    pub c: BigRational,
    pub s_theorem: u64,
    pub t_threshold: f64,
    pub theorem_applicable: bool,
}

impl BoundsReport {
    pub fn evaluate(c: &BigRational, r: u32, n: usize) -> BoundsReport {
        let s_theorem = compute_s(c, r, n);
        BoundsReport {
            n,
            r,
            c: c.clone(),
            s_theorem,
            t_threshold: compute_t_threshold(c, r, n),
            theorem_applicable: s_theorem >= 1,
        }
    }
}

/// Formats a rational as `num/den` (or `num` when integral).
pub fn rational_string(c: &BigRational) -> String {
    if c.denom().is_one() {
        c.numer().to_string()
    } else {
        format!("{}/{}", c.numer(), c.denom())
    }
}

/// Parses `num/den` or a bare integer.
pub fn parse_rational(text: &str) -> Result<BigRational, Error> {
    let bad = |msg: String| Error::Parse { line: 0, msg };
    let mut parts = text.splitn(2, '/');
    let numer: BigInt = parts.next().unwrap_or("").trim().parse().map_err(|_| {
        bad(format!(
            "`{text}` is not a rational (expected NUM or NUM/DEN)"
        ))
    })?;
    let denom: BigInt = match parts.next() {
        None => BigInt::one(),
        Some(d) => d
            .trim()
            .parse()
            .map_err(|_| bad(format!("`{text}` has a malformed denominator")))?,
    };
    if denom.is_zero() {
        return Err(bad("denominator must be nonzero".into()));
    }
    Ok(BigRational::new(numer, denom))
}

/// Auto density for a pattern/host pair, from an embedding count.
pub fn density_from_embeddings(
    embedding_count: u64,
    n: usize,
    h: &Pattern,
) -> Result<Density, Error> {
    let aut = crate::embed::automorphism_count(h);
    compute_c(embedding_count, n, h.r() as u32, aut, CountKind::Embeddings)
}
