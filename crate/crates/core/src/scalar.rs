//! Exact rational scalars and formatting helpers.
//!
//! `Scalar` is a normalized big rational: the denominator is always positive
//! and the fraction is reduced, which is exactly the canonical-form invariant
//! the geometry relies on. Every length, ratio, weight and mass in the crate
//! is a `Scalar`.

use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

pub type Scalar = BigRational;

/// Integer scalar.
pub fn int(n: i64) -> Scalar {
    BigRational::from_integer(BigInt::from(n))
}

/// Scalar `n/d`. Panics on a zero denominator; intended for literals.
pub fn rat(n: i64, d: i64) -> Scalar {
    assert!(d != 0, "zero denominator");
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

pub fn zero() -> Scalar {
    BigRational::zero()
}

pub fn one() -> Scalar {
    BigRational::one()
}

pub fn two() -> Scalar {
    int(2)
}

pub fn half() -> Scalar {
    rat(1, 2)
}

/// `base^exp` for possibly negative integer exponents.
pub fn pow_i(base: &Scalar, exp: i64) -> Scalar {
    let e = i32::try_from(exp).expect("exponent out of range");
    base.pow(e)
}

pub fn to_f64(x: &Scalar) -> f64 {
    x.to_f64().unwrap_or(f64::NAN)
}

/// Parses "p/q", "p", or "-p/q" into a scalar.
pub fn parse_fraction(s: &str) -> Result<Scalar> {
    let t = s.trim();
    t.parse::<BigRational>()
        .map_err(|_| Error::InvalidParameter(format!("cannot parse fraction `{s}`")))
}

/// Canonical "p/q" (or "p" for integers) rendering; re-parses to the same value.
pub fn fraction_string(x: &Scalar) -> String {
    if x.is_integer() {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

/// Floor of sqrt(x) for x >= 0, as a big integer.
///
/// Uses floor(sqrt(p/q)) = floor(isqrt(p*q)/q), valid for positive q.
pub fn floor_sqrt(x: &Scalar) -> BigInt {
    assert!(!x.is_negative(), "sqrt of negative");
    let p = x.numer();
    let q = x.denom();
    let s = (p * q).sqrt();
    s.div_floor(q)
}

/// Smallest integer k with 2^k >= x, for x > 0.
pub fn ceil_log2(x: &Scalar) -> i64 {
    assert!(x.is_positive(), "ceil_log2 of non-positive");
    let one = Scalar::one();
    let two = int(2);
    let mut k: i64 = 0;
    let mut pow = one.clone();
    if *x <= one {
        // walk down: largest k <= 0 still satisfying 2^k >= x is found by
        // halving until below x, then stepping back up
        while pow >= *x {
            pow /= &two;
            k -= 1;
        }
        k + 1
    } else {
        while pow < *x {
            pow *= &two;
            k += 1;
        }
        k
    }
}

/// Decimal rendering with 12 significant digits, round-half-even.
///
/// Rendering is exact integer arithmetic; the same value always produces the
/// same string, so reports built from it are byte-stable.
pub fn dec12(x: &Scalar) -> String {
    dec_sig(x, 12)
}

fn dec_sig(x: &Scalar, sig: u32) -> String {
    if x.is_zero() {
        return "0".to_string();
    }
    let neg = x.is_negative();
    let ax = x.abs();
    let p = ax.numer().clone();
    let q = ax.denom().clone();

    // decimal exponent e with 10^e <= p/q < 10^(e+1)
    let ten = BigInt::from(10);
    let mut e: i64 = 0;
    {
        let mut lo = p.clone();
        let mut hi = q.clone();
        // scale until 1 <= lo/hi < 10
        while lo < hi {
            lo *= &ten;
            e -= 1;
        }
        while lo >= &hi * &ten {
            hi *= &ten;
            e += 1;
        }
    }

    // mantissa = round(p/q * 10^(sig-1-e)), half to even
    let shift = sig as i64 - 1 - e;
    let (num, den) = if shift >= 0 {
        (p * ten.pow(shift as u32), q)
    } else {
        (p, q * ten.pow((-shift) as u32))
    };
    let (mut mant, rem) = num.div_rem(&den);
    let twice = &rem * 2;
    if twice > den || (twice == den && mant.is_odd()) {
        mant += 1;
    }
    // rounding may carry into one extra digit
    let mut digits = mant.to_string();
    let mut exp10 = e;
    if digits.len() as u32 > sig {
        digits.truncate(sig as usize);
        exp10 += 1;
    }

    let body = format_digits(&digits, exp10, sig);
    if neg {
        format!("-{body}")
    } else {
        body
    }
}

fn format_digits(digits: &str, exp10: i64, sig: u32) -> String {
    // plain decimal for moderate exponents, scientific otherwise
    if exp10 >= -4 && exp10 < sig as i64 + 6 {
        if exp10 >= 0 {
            let ip = exp10 as usize + 1;
            if ip >= digits.len() {
                let zeros = "0".repeat(ip - digits.len());
                format!("{digits}{zeros}")
            } else {
                let tail = trim_zeros(&digits[ip..]);
                if tail.is_empty() {
                    digits[..ip].to_string()
                } else {
                    format!("{}.{}", &digits[..ip], tail)
                }
            }
        } else {
            let zeros = "0".repeat((-exp10 - 1) as usize);
            format!("0.{}{}", zeros, trim_zeros(digits))
        }
    } else {
        let head = &digits[..1];
        let tail = trim_zeros(&digits[1..]);
        if tail.is_empty() {
            format!("{head}e{exp10}")
        } else {
            format!("{head}.{tail}e{exp10}")
        }
    }
}

fn trim_zeros(s: &str) -> String {
    let t = s.trim_end_matches('0');
    t.to_string()
}

/// Sign helper mirroring `BigInt::sign` for rationals.
pub fn sign(x: &Scalar) -> Sign {
    x.numer().sign()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fraction_round_trip() {
        for s in ["3/8", "-7/12", "5", "0", "1594323/549755813888"] {
            let v = parse_fraction(s).unwrap();
            assert_eq!(parse_fraction(&fraction_string(&v)).unwrap(), v);
        }
    }

    #[test]
    fn dec12_values() {
        assert_eq!(dec12(&rat(1, 2)), "0.5");
        assert_eq!(dec12(&int(1)), "1");
        assert_eq!(dec12(&int(42)), "42");
        assert_eq!(dec12(&rat(1, 3)), "0.333333333333");
        assert_eq!(dec12(&rat(2, 3)), "0.666666666667");
        assert_eq!(dec12(&int(0)), "0");
        // half-even: 0.5 ulp cases
        assert_eq!(dec12(&rat(1, 80000000000000i64)), "1.25e-14");
    }

    #[test]
    fn floor_sqrt_values() {
        assert_eq!(floor_sqrt(&int(4)), BigInt::from(2));
        assert_eq!(floor_sqrt(&rat(1, 2)), BigInt::from(0));
        assert_eq!(floor_sqrt(&rat(9, 4)), BigInt::from(1));
        assert_eq!(floor_sqrt(&int(0)), BigInt::from(0));
    }

    #[test]
    fn ceil_log2_values() {
        assert_eq!(ceil_log2(&int(4)), 2);
        assert_eq!(ceil_log2(&int(5)), 3);
        assert_eq!(ceil_log2(&int(1)), 0);
        assert_eq!(ceil_log2(&rat(1, 3)), -1);
        assert_eq!(ceil_log2(&rat(1, 4)), -2);
    }
}
