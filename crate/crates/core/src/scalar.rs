//! Arithmetic used for weights: exact rationals or `f64`.

use core::fmt::Debug;
use core::ops::{Add, Div, Mul, Sub};

use num_bigint::BigInt;
pub use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

pub trait Scalar:
    Clone
    + Debug
    + PartialOrd
    + Zero
    + One
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
{
    /// Whether arithmetic in this type is exact.
    const EXACT: bool;

    fn from_u64(v: u64) -> Self;

    fn to_f64(&self) -> f64;

    /// Integer power; negative exponents invert.
    fn powi(&self, exp: i64) -> Self {
        let mut base = if exp < 0 { Self::one() / self.clone() } else { self.clone() };
        let mut e = exp.unsigned_abs();
        let mut acc = Self::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * base.clone();
            }
            e >>= 1;
            if e > 0 {
                base = base.clone() * base;
            }
        }
        acc
    }

    fn from_usize(v: usize) -> Self {
        Self::from_u64(v as u64)
    }
}

impl Scalar for f64 {
    const EXACT: bool = false;

    fn from_u64(v: u64) -> Self {
        v as f64
    }

    fn to_f64(&self) -> f64 {
        *self
    }

    fn powi(&self, exp: i64) -> Self {
        libm::pow(*self, exp as f64)
    }
}

impl Scalar for BigRational {
    const EXACT: bool = true;

    fn from_u64(v: u64) -> Self {
        BigRational::from_integer(BigInt::from(v))
    }

    fn to_f64(&self) -> f64 {
        ratio_to_f64(self)
    }
}

/// Converts a rational to `f64`, staying accurate when numerator and
/// denominator individually overflow.
pub fn ratio_to_f64(r: &BigRational) -> f64 {
    if let Some(x) = ToPrimitive::to_f64(r) {
        if x.is_finite() && (x != 0.0 || r.is_zero()) {
            return x;
        }
    }
    let num = r.numer();
    let den = r.denom();
    let shift = num.bits() as i64 - den.bits() as i64 - 60;
    let (n, d) = if shift > 0 {
        (num.abs(), den << shift as usize)
    } else {
        (num.abs() << (-shift) as usize, den.clone())
    };
    let q = (n / d).to_f64().unwrap_or(f64::INFINITY);
    let v = q * libm::exp2(shift as f64);
    if num.is_negative() {
        -v
    } else {
        v
    }
}

/// Parses `p`, `p/q` or a finite decimal such as `0.25` into a rational.
pub fn parse_rational(s: &str) -> Option<BigRational> {
    let s = s.trim();
    if let Some((p, q)) = s.split_once('/') {
        let p: BigInt = p.trim().parse().ok()?;
        let q: BigInt = q.trim().parse().ok()?;
        if q.is_zero() {
            return None;
        }
        return Some(BigRational::new(p, q));
    }
    if let Some((int, frac)) = s.split_once('.') {
        if frac.is_empty() || !frac.bytes().all(|b| b.is_ascii_digit()) {
            return None;
        }
        let neg = int.starts_with('-');
        let int_part: BigInt = if int.is_empty() || int == "-" { BigInt::zero() } else { int.parse().ok()? };
        let frac_part: BigInt = frac.parse().ok()?;
        let scale = num_traits::pow(BigInt::from(10), frac.len());
        let mag = int_part.abs() * &scale + frac_part;
        let v = BigRational::new(mag, scale);
        return Some(if neg { -v } else { v });
    }
    let p: BigInt = s.parse().ok()?;
    Some(BigRational::from_integer(p))
}

pub fn rational(p: i64, q: i64) -> BigRational {
    BigRational::new(BigInt::from(p), BigInt::from(q))
}

/// n! as a scalar.
pub fn factorial<T: Scalar>(n: usize) -> T {
    (1..=n).fold(T::one(), |acc, k| acc * T::from_usize(k))
}

/// Binomial coefficient as a scalar.
pub fn binomial<T: Scalar>(n: usize, k: usize) -> T {
    if k > n {
        return T::zero();
    }
    let k = k.min(n - k);
    let mut acc = T::one();
    for i in 0..k {
        acc = acc * T::from_usize(n - i) / T::from_usize(i + 1);
    }
    acc
}

/// Falling factorial (n)_k.
pub fn falling<T: Scalar>(n: usize, k: usize) -> T {
    if k > n {
        return T::zero();
    }
    (0..k).fold(T::one(), |acc, i| acc * T::from_usize(n - i))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn powers() {
        assert_eq!(rational(2, 3).powi(-2), rational(9, 4));
        assert_eq!(Scalar::powi(&2.0f64, 10), 1024.0);
        assert_eq!(rational(5, 1).powi(0), rational(1, 1));
    }

    #[test]
    fn parsing() {
        assert_eq!(parse_rational("1/2"), Some(rational(1, 2)));
        assert_eq!(parse_rational("0.25"), Some(rational(1, 4)));
        assert_eq!(parse_rational("-1.5"), Some(rational(-3, 2)));
        assert_eq!(parse_rational("7"), Some(rational(7, 1)));
        assert_eq!(parse_rational("1/0"), None);
        assert_eq!(parse_rational("abc"), None);
    }

    #[test]
    fn huge_ratio_to_f64() {
        let big = BigInt::from(10).pow(400u32);
        let r = BigRational::new(big.clone() * BigInt::from(3), big * BigInt::from(4));
        assert_eq!(ratio_to_f64(&r), 0.75);
        let r = BigRational::new(BigInt::from(10).pow(400u32) * 3 + 1, BigInt::from(10).pow(400u32) * 4);
        assert!((ratio_to_f64(&r) - 0.75).abs() < 1e-15);
    }

    #[test]
    fn combinatorial_helpers() {
        assert_eq!(binomial::<BigRational>(6, 3), rational(20, 1));
        assert_eq!(falling::<BigRational>(5, 2), rational(20, 1));
        assert_eq!(factorial::<f64>(5), 120.0);
        assert_eq!(falling::<f64>(2, 3), 0.0);
    }
}
