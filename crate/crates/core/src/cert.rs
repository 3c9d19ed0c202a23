//! Certified real arithmetic on rational intervals.
//!
//! Irrational quantities (rational powers and base-2 logarithms of big
//! integers) are enclosed by intervals with dyadic endpoints obtained from
//! exact integer roots and directed truncation, so every verdict drawn from an
//! interval is a proof rather than a floating point estimate.

use std::fmt;
use std::ops::{Add, Mul};

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::Serialize;

use crate::arith::rational_to_decimal;

/// Default number of correct leading bits in each enclosure.
pub const PRECISION: u32 = 96;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Interval {
    pub lo: BigRational,
    pub hi: BigRational,
}

impl Interval {
    pub fn new(lo: BigRational, hi: BigRational) -> Interval {
        assert!(lo <= hi, "empty interval");
        Interval { lo, hi }
    }

    pub fn point(x: BigRational) -> Interval {
        Interval { lo: x.clone(), hi: x }
    }

    pub fn zero() -> Interval {
        Interval::point(BigRational::zero())
    }

    pub fn from_int(n: &BigUint) -> Interval {
        Interval::point(BigRational::from_integer(BigInt::from(n.clone())))
    }

    pub fn contains(&self, x: &BigRational) -> bool {
        &self.lo <= x && x <= &self.hi
    }

    pub fn width(&self) -> BigRational {
        &self.hi - &self.lo
    }

    /// `(hi - lo) / lo`, or `None` for an interval touching zero.
    pub fn relative_width(&self) -> Option<BigRational> {
        (self.lo.is_positive()).then(|| self.width() / &self.lo)
    }

    /// Certified `self < x`.
    pub fn certainly_below(&self, x: &BigRational) -> bool {
        &self.hi < x
    }

    /// Certified `self > x`.
    pub fn certainly_above(&self, x: &BigRational) -> bool {
        &self.lo > x
    }

    pub fn scale(&self, c: &BigRational) -> Interval {
        if c.is_negative() {
            Interval::new(&self.hi * c, &self.lo * c)
        } else {
            Interval::new(&self.lo * c, &self.hi * c)
        }
    }

    /// Quotient by an interval of strictly positive numbers; `self` must be
    /// nonnegative.
    pub fn div_positive(&self, d: &Interval) -> Interval {
        assert!(d.lo.is_positive() && !self.lo.is_negative());
        Interval::new(&self.lo / &d.hi, &self.hi / &d.lo)
    }

    pub fn lo_decimal(&self, digits: usize) -> String {
        rational_to_decimal(&self.lo, digits, false)
    }

    pub fn hi_decimal(&self, digits: usize) -> String {
        rational_to_decimal(&self.hi, digits, true)
    }

    /// Outward rounding of both endpoints to multiples of `2^-bits`.
    pub fn round_out(&self, bits: u32) -> Interval {
        let den = BigInt::one() << bits;
        let lo = (&self.lo * BigRational::from_integer(den.clone())).floor().to_integer();
        let hi = (&self.hi * BigRational::from_integer(den.clone())).ceil().to_integer();
        Interval::new(BigRational::new(lo, den.clone()), BigRational::new(hi, den))
    }
}

impl Add for &Interval {
    type Output = Interval;
    fn add(self, o: &Interval) -> Interval {
        Interval::new(&self.lo + &o.lo, &self.hi + &o.hi)
    }
}

impl Add for Interval {
    type Output = Interval;
    fn add(self, o: Interval) -> Interval {
        &self + &o
    }
}

/// Product of intervals of nonnegative numbers.
impl Mul for &Interval {
    type Output = Interval;
    fn mul(self, o: &Interval) -> Interval {
        assert!(!self.lo.is_negative() && !o.lo.is_negative());
        Interval::new(&self.lo * &o.lo, &self.hi * &o.hi)
    }
}

impl fmt::Display for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}, {}]", self.lo_decimal(16), self.hi_decimal(16))
    }
}

/// Decimal endpoints, the serialised form of an interval in reports.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DecimalInterval {
    pub lo: String,
    pub hi: String,
}

impl From<&Interval> for DecimalInterval {
    fn from(x: &Interval) -> DecimalInterval {
        DecimalInterval {
            lo: x.lo_decimal(20),
            hi: x.hi_decimal(20),
        }
    }
}

/// Serialises an interval through [`DecimalInterval`].
/// Serialises as `[lo, hi]`, both decimal strings.
pub fn ser_interval<S: serde::Serializer>(x: &Interval, s: S) -> Result<S::Ok, S::Error> {
    let d = DecimalInterval::from(x);
    [d.lo, d.hi].serialize(s)
}

fn dyadic(m: BigUint, e: u64) -> BigRational {
    BigRational::new(BigInt::from(m), BigInt::one() << e)
}

/// `floor(s^(a/b) * 2^bits)` for `t = a/b`, or the exact integer `s^a` when
/// `b = 1` (flagged by the boolean).
fn scaled_root(s: &BigUint, t: &BigRational, bits: u32) -> (BigUint, bool) {
    assert!(!s.is_zero() && !t.is_negative());
    let (a, b) = (
        t.numer().to_u32().expect("t numerator"),
        t.denom().to_u32().expect("t denominator"),
    );
    let sa = num_traits::pow(s.clone(), a as usize);
    if b == 1 {
        return (sa, true);
    }
    ((sa << (b as u64 * bits as u64)).nth_root(b), false)
}

/// Enclosure of `s^t` for an integer `s >= 1` and a rational `t >= 0`, with
/// relative width about `2^-bits`.
pub fn pow_rational(s: &BigUint, t: &BigRational, bits: u32) -> Interval {
    let (fl, exact) = scaled_root(s, t, bits);
    if exact {
        return Interval::from_int(&fl);
    }
    Interval::new(dyadic(fl.clone(), bits as u64), dyadic(fl + 1u32, bits as u64))
}

/// Enclosure of `s^-t`, again relative width about `2^-bits`, with dyadic
/// endpoints.
pub fn pow_neg_rational(s: &BigUint, t: &BigRational, bits: u32) -> Interval {
    let (fl, exact) = scaled_root(s, t, bits);
    if exact {
        return Interval::point(BigRational::new(BigInt::one(), BigInt::from(fl)));
    }
    // s^t = [fl, fl + 1] / 2^bits, so s^-t = 2^bits / [fl + 1, fl]. Write the
    // endpoints over 2^e with e the bit length of fl, keeping about `bits`
    // significant bits.
    let e = fl.bits();
    let num = BigUint::one() << (bits as u64 + e);
    let lo = num.div_floor(&(&fl + 1u32));
    let hi = num.div_ceil(&fl);
    Interval::new(dyadic(lo, e), dyadic(hi, e))
}

/// Enclosure of `log2(x)` for `x >= 1`, of absolute width at most `2^(1-bits)`.
pub fn log2(x: &BigUint, bits: u32) -> Interval {
    assert!(!x.is_zero(), "log of zero");
    let e = x.bits() - 1;
    if x.is_one() || (x - (BigUint::one() << e)).is_zero() {
        return Interval::point(BigRational::from_integer(BigInt::from(e)));
    }
    // mantissa x / 2^e in [1, 2), as a fixed point number with `frac` bits
    let frac = bits as u64 + 32;
    let m_lo = if e > frac { x >> (e - frac) } else { x << (frac - e) };
    let exact = e <= frac || (&m_lo << (e - frac)) == *x;
    let m_hi = if exact { m_lo.clone() } else { &m_lo + 1u32 };
    let lo = log2_mantissa(m_lo, frac, bits, false);
    let hi = log2_mantissa(m_hi, frac, bits, true) + BigRational::new(BigInt::one(), BigInt::one() << bits);
    let base = BigRational::from_integer(BigInt::from(e));
    Interval::new(&base + lo, base + hi)
}

/// Leading `bits` binary digits of `log2(m / 2^frac)` for `m / 2^frac` in
/// `[1, 2]`, by repeated squaring with truncation towards `-inf` (or `+inf`
/// with `up`). Rounding down keeps the tracked value below the exact one so
/// the digits give a lower bound; rounding up keeps it above, and the tracked
/// value then stays below 2, so digits plus `2^-bits` bound from above.
fn log2_mantissa(mut m: BigUint, frac: u64, bits: u32, up: bool) -> BigRational {
    let two = BigUint::from(2u32) << frac;
    let mut acc = BigUint::zero();
    if m >= two {
        // only reachable on the upward path with a mantissa rounded to 2
        return BigRational::one();
    }
    for _ in 0..bits {
        let sq = &m * &m;
        m = if up {
            sq.div_ceil(&(BigUint::one() << frac))
        } else {
            sq >> frac
        };
        acc <<= 1;
        if m >= two {
            acc += 1u32;
            m = if up { m.div_ceil(&BigUint::from(2u32)) } else { m >> 1 };
        }
    }
    dyadic(acc, bits as u64)
}

/// Enclosure of `log A / log B` (any common base), with `A >= 1`, `B >= 2`;
/// `A = 0` gives 0 by convention (no elements, no contribution).
pub fn alpha(a: &BigUint, b: &BigUint, bits: u32) -> Interval {
    assert!(b > &BigUint::one(), "alpha needs B >= 2");
    if a.is_zero() || a.is_one() {
        return Interval::zero();
    }
    if a == b {
        return Interval::point(BigRational::one());
    }
    let la = log2(a, bits);
    let lb = log2(b, bits);
    la.div_positive(&lb)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{big, rat_u};

    fn f64_of(x: &BigRational) -> f64 {
        x.numer().to_f64().unwrap() / x.denom().to_f64().unwrap()
    }

    #[test]
    fn exact_powers() {
        let x = pow_rational(&big(8), &rat_u(1, 3), 64);
        assert!(x.contains(&rat_u(2, 1)));
        let y = pow_neg_rational(&big(16), &rat_u(1, 2), 64);
        assert!(y.contains(&rat_u(1, 4)));
        assert_eq!(
            pow_neg_rational(&big(5), &rat_u(0, 1), 64),
            Interval::point(rat_u(1, 1))
        );
        assert_eq!(
            pow_neg_rational(&big(5), &rat_u(2, 1), 64),
            Interval::point(rat_u(1, 25))
        );
    }

    #[test]
    fn power_width() {
        let x = pow_neg_rational(&big(1_000_003), &rat_u(31, 100), 80);
        let rel = f64_of(&x.relative_width().unwrap());
        assert!(rel < 1e-20, "{rel}");
        let v = f64_of(&x.lo);
        assert!((v - 1_000_003f64.powf(-0.31)).abs() < 1e-12 * v);
    }

    #[test]
    fn logs() {
        assert_eq!(log2(&big(1), 64), Interval::point(rat_u(0, 1)));
        assert_eq!(log2(&big(1024), 64), Interval::point(rat_u(10, 1)));
        for n in [3u64, 5, 7, 1000, 123_456_789, u64::MAX] {
            let l = log2(&big(n), 64);
            let v = (n as f64).log2();
            assert!(f64_of(&l.lo) <= v + 1e-12 && v - 1e-12 <= f64_of(&l.hi), "{n}");
            assert!(f64_of(&l.width()) < 1e-18);
        }
        // log2(3) = 1.5849625007211562...
        let l = log2(&big(3), 64);
        assert!(l.certainly_above(&BigRational::new(
            15849625007211561u64.into(),
            10_000_000_000_000_000u64.into()
        )));
        assert!(l.certainly_below(&BigRational::new(
            15849625007211564u64.into(),
            10_000_000_000_000_000u64.into()
        )));
    }

    #[test]
    fn log_of_huge_number() {
        let x = num_traits::pow(big(3), 500);
        let l = log2(&x, 64);
        let v = 500.0 * 3f64.log2();
        assert!(f64_of(&l.lo) <= v + 1e-9 && v - 1e-9 <= f64_of(&l.hi));
    }

    #[test]
    fn alpha_edge_cases() {
        assert_eq!(alpha(&big(1), &big(100), 64), Interval::zero());
        assert_eq!(alpha(&big(0), &big(100), 64), Interval::zero());
        assert_eq!(alpha(&big(77), &big(77), 64), Interval::point(rat_u(1, 1)));
        let a = alpha(&big(8), &big(64), 64);
        assert!(a.contains(&rat_u(1, 2)));
    }
}
