use std::fmt::Debug;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_complex::Complex;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use rand::Rng;
use rand_distr::{Distribution, StandardNormal};
use serde::{Deserialize, Serialize};
use serde_json::Value;

use super::{exact, float, Mat};
use crate::error::{Error, Result};

/// Complex number with exact rational parts.
pub type Exact = Complex<BigRational>;
/// Complex number with `f64` parts.
pub type Float = Complex<f64>;

/// Relative singular-value threshold used by every float rank decision.
pub const FLOAT_RANK_TOL: f64 = 1e-9;

/// Numerators of exact channel draws are uniform in `[-2^16, 2^16] \ {0}`.
pub const EXACT_NUMERATOR_BOUND: i64 = 1 << 16;
/// Common denominator of exact channel draws.
pub const EXACT_DENOMINATOR: i64 = 1 << 8;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    Exact,
    Float,
}

impl std::fmt::Display for Mode {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Mode::Exact => f.write_str("exact"),
            Mode::Float => f.write_str("float"),
        }
    }
}

impl FromStr for Mode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "exact" | "Exact" => Ok(Mode::Exact),
            "float" | "Float" => Ok(Mode::Float),
            _ => Err(Error::InvalidInput(format!("unknown mode {s:?}"))),
        }
    }
}

/// A complex field element in one of the two arithmetic modes.
///
/// The mode is carried by the type, so a [`Mat`] can never mix exact and
/// float entries. Rank and column-space extraction are mode specific: exact
/// scalars use fraction-free elimination, floats use the SVD.
pub trait Scalar:
    Clone
    + Debug
    + PartialEq
    + Send
    + Sync
    + 'static
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + Neg<Output = Self>
{
    const MODE: Mode;

    fn zero() -> Self;
    fn one() -> Self;
    fn from_i64(v: i64) -> Self;
    fn is_zero(&self) -> bool;
    fn conj(&self) -> Self;
    fn to_float(&self) -> Float;

    /// Pivot preference for Gauss-Jordan. Zero means "not usable".
    fn pivot_key(&self, scale: f64) -> f64;

    /// Scale factor that brings a term of squared norm `norm_sqr` to unit
    /// power. Exact mode never normalizes.
    fn unit_scale(norm_sqr: &Self) -> Option<Self>;

    /// One channel coefficient from this mode's generic distribution.
    fn sample<R: Rng + ?Sized>(rng: &mut R) -> Self;

    fn rank_of(m: &Mat<Self>) -> usize;

    /// Linearly independent columns spanning the column space of `m`.
    fn column_basis(m: &Mat<Self>) -> Mat<Self>;

    /// Rank judged against an outside magnitude `reference` (typically the
    /// norm of a matrix `m` was cut from). Exact arithmetic ignores it.
    fn rank_within(m: &Mat<Self>, reference: f64) -> usize {
        let _ = reference;
        Self::rank_of(m)
    }

    fn column_basis_within(m: &Mat<Self>, reference: f64) -> Mat<Self> {
        let _ = reference;
        Self::column_basis(m)
    }

    fn to_json(&self) -> [Value; 2];
    fn from_json(parts: &[Value]) -> Result<Self>;
}

impl Scalar for Exact {
    const MODE: Mode = Mode::Exact;

    fn zero() -> Self {
        Complex::new(BigRational::zero(), BigRational::zero())
    }

    fn one() -> Self {
        Complex::new(BigRational::one(), BigRational::zero())
    }

    fn from_i64(v: i64) -> Self {
        Complex::new(BigRational::from_integer(BigInt::from(v)), BigRational::zero())
    }

    fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    fn conj(&self) -> Self {
        Complex::new(self.re.clone(), -self.im.clone())
    }

    fn to_float(&self) -> Float {
        Complex::new(
            self.re.to_f64().unwrap_or(f64::NAN),
            self.im.to_f64().unwrap_or(f64::NAN),
        )
    }

    fn pivot_key(&self, _scale: f64) -> f64 {
        if Scalar::is_zero(self) {
            0.0
        } else {
            1.0
        }
    }

    fn unit_scale(_norm_sqr: &Self) -> Option<Self> {
        None
    }

    fn sample<R: Rng + ?Sized>(rng: &mut R) -> Self {
        let den = BigInt::from(EXACT_DENOMINATOR);
        let mut part = || loop {
            let n = rng.random_range(-EXACT_NUMERATOR_BOUND..=EXACT_NUMERATOR_BOUND);
            if n != 0 {
                return BigRational::new(BigInt::from(n), den.clone());
            }
        };
        let re = part();
        let im = part();
        Complex::new(re, im)
    }

    fn rank_of(m: &Mat<Self>) -> usize {
        exact::bareiss_rank(m)
    }

    fn column_basis(m: &Mat<Self>) -> Mat<Self> {
        let (_, pivots) = m.rref();
        m.select_columns(&pivots)
    }

    fn to_json(&self) -> [Value; 2] {
        [
            Value::String(self.re.to_string()),
            Value::String(self.im.to_string()),
        ]
    }

    fn from_json(parts: &[Value]) -> Result<Self> {
        let [re, im] = parts else {
            return Err(Error::InvalidInput("complex entry needs [re, im]".into()));
        };
        Ok(Complex::new(parse_rational_value(re)?, parse_rational_value(im)?))
    }
}

fn parse_rational_value(v: &Value) -> Result<BigRational> {
    match v {
        Value::String(s) => parse_big_rational(s),
        Value::Number(n) => n
            .as_i64()
            .map(|i| BigRational::from_integer(BigInt::from(i)))
            .ok_or_else(|| Error::InvalidInput(format!("exact entry {n} is not an integer"))),
        other => Err(Error::InvalidInput(format!("bad exact entry {other}"))),
    }
}

/// Parses `"p"` or `"p/q"` with `q != 0`.
pub fn parse_big_rational(s: &str) -> Result<BigRational> {
    let bad = || Error::InvalidInput(format!("bad rational {s:?}"));
    let (num, den) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s.trim(), "1"),
    };
    let num: BigInt = num.parse().map_err(|_| bad())?;
    let den: BigInt = den.parse().map_err(|_| bad())?;
    if den.is_zero() {
        return Err(bad());
    }
    Ok(BigRational::new(num, den))
}

impl Scalar for Float {
    const MODE: Mode = Mode::Float;

    fn zero() -> Self {
        Complex::new(0.0, 0.0)
    }

    fn one() -> Self {
        Complex::new(1.0, 0.0)
    }

    fn from_i64(v: i64) -> Self {
        Complex::new(v as f64, 0.0)
    }

    fn is_zero(&self) -> bool {
        self.re == 0.0 && self.im == 0.0
    }

    fn conj(&self) -> Self {
        Complex::conj(self)
    }

    fn to_float(&self) -> Float {
        *self
    }

    fn pivot_key(&self, scale: f64) -> f64 {
        let n = self.norm();
        if n <= FLOAT_RANK_TOL * scale {
            0.0
        } else {
            n
        }
    }

    fn unit_scale(norm_sqr: &Self) -> Option<Self> {
        let n = norm_sqr.re.abs().sqrt();
        (n > 0.0).then(|| Complex::new(1.0 / n, 0.0))
    }

    fn sample<R: Rng + ?Sized>(rng: &mut R) -> Self {
        // CN(0, 1): each part has variance 1/2.
        let s = std::f64::consts::FRAC_1_SQRT_2;
        let re: f64 = StandardNormal.sample(rng);
        let im: f64 = StandardNormal.sample(rng);
        Complex::new(re * s, im * s)
    }

    fn rank_of(m: &Mat<Self>) -> usize {
        float::svd_rank(m)
    }

    fn column_basis(m: &Mat<Self>) -> Mat<Self> {
        float::svd_column_basis(m, 0.0)
    }

    fn rank_within(m: &Mat<Self>, reference: f64) -> usize {
        float::svd_rank_within(m, reference)
    }

    fn column_basis_within(m: &Mat<Self>, reference: f64) -> Mat<Self> {
        float::svd_column_basis(m, reference)
    }

    fn to_json(&self) -> [Value; 2] {
        [json_f64(self.re), json_f64(self.im)]
    }

    fn from_json(parts: &[Value]) -> Result<Self> {
        let [re, im] = parts else {
            return Err(Error::InvalidInput("complex entry needs [re, im]".into()));
        };
        let get = |v: &Value| {
            v.as_f64()
                .filter(|x| x.is_finite())
                .ok_or_else(|| Error::InvalidInput(format!("bad float entry {v}")))
        };
        Ok(Complex::new(get(re)?, get(im)?))
    }
}

fn json_f64(x: f64) -> Value {
    serde_json::Number::from_f64(x)
        .map(Value::Number)
        .unwrap_or(Value::Null)
}

/// `|z|^2` as an exact non-negative rational.
pub fn exact_norm_sqr(z: &Exact) -> BigRational {
    &z.re * &z.re + &z.im * &z.im
}
