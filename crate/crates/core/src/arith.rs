//! Small exact-arithmetic helpers shared by the modules.

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

pub fn big(n: u64) -> BigUint {
    BigUint::from(n)
}

pub fn pow(b: u64, e: u32) -> BigUint {
    num_traits::pow(BigUint::from(b), e as usize)
}

/// `q^e - s` for `s` in {-1, 1}, as a nonnegative value.
pub fn q_pow_minus(q: u64, e: u32, s: i64) -> BigUint {
    let v = BigInt::from(pow(q, e)) - BigInt::from(s);
    v.to_biguint().expect("negative value")
}

pub fn factorial(n: u64) -> BigUint {
    (1..=n).fold(BigUint::one(), |a, k| a * BigUint::from(k))
}

pub fn gcd_u64(a: u64, b: u64) -> u64 {
    a.gcd(&b)
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// `(p, f)` with `q = p^f`, if `q` is a prime power.
pub fn prime_power(q: u64) -> Option<(u64, u32)> {
    if q < 2 {
        return None;
    }
    let mut p = 2u64;
    while p * p <= q && q % p != 0 {
        p += 1;
    }
    if q % p != 0 {
        p = q;
    }
    let mut m = q;
    let mut f = 0;
    while m % p == 0 {
        m /= p;
        f += 1;
    }
    (m == 1).then_some((p, f))
}

/// Distinct prime divisors of `n`, ascending.
pub fn prime_divisors(n: &BigUint) -> Vec<BigUint> {
    let mut out = Vec::new();
    let mut m = n.clone();
    let mut d = BigUint::from(2u32);
    while &d * &d <= m {
        if (&m % &d).is_zero() {
            out.push(d.clone());
            while (&m % &d).is_zero() {
                m /= &d;
            }
        }
        d += 1u32;
    }
    if m > BigUint::one() {
        out.push(m);
    }
    out
}

pub fn prime_divisors_u64(n: u64) -> Vec<u64> {
    prime_divisors(&big(n))
        .into_iter()
        .map(|p| p.to_u64().unwrap())
        .collect()
}

/// Is `n` a power of `p` (including `p^0 = 1`)?
pub fn is_power_of(n: &BigUint, p: u64) -> bool {
    let mut m = n.clone();
    if m.is_zero() {
        return false;
    }
    let p = big(p);
    while (&m % &p).is_zero() {
        m /= &p;
    }
    m.is_one()
}

/// Serialises a big integer as a decimal string.
pub fn ser_big<S: serde::Serializer>(x: &BigUint, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&x.to_string())
}

pub fn ratio(a: &BigUint, b: &BigUint) -> BigRational {
    BigRational::new(BigInt::from(a.clone()), BigInt::from(b.clone()))
}

pub fn rat_u(a: u64, b: u64) -> BigRational {
    BigRational::new(BigInt::from(a), BigInt::from(b))
}

pub fn rat_int(a: &BigUint) -> BigRational {
    BigRational::from_integer(BigInt::from(a.clone()))
}

/// Decimal rendering of a rational to `digits` significant places, rounded
/// down (`up = false`) or up.
pub fn rational_to_decimal(x: &BigRational, digits: usize, up: bool) -> String {
    if x.is_zero() {
        return "0".to_string();
    }
    let neg = x.is_negative();
    let a = x.abs();
    // scale so that the integer part has `digits` digits
    let mut exp10: i64 = 0;
    let ten = BigRational::from_integer(BigInt::from(10));
    let lo_bound = BigRational::from_integer(num_traits::pow(BigInt::from(10), digits - 1));
    let hi_bound = BigRational::from_integer(num_traits::pow(BigInt::from(10), digits));
    let mut s = a.clone();
    while s < lo_bound {
        s *= &ten;
        exp10 -= 1;
    }
    while s >= hi_bound {
        s /= &ten;
        exp10 += 1;
    }
    let round_up = up != neg;
    let mut m = if round_up { s.ceil() } else { s.floor() }.to_integer();
    if m == BigInt::from(hi_bound.to_integer()) {
        m /= 10;
        exp10 += 1;
    }
    let ms = m.to_string();
    let body = if exp10 >= 0 {
        format!("{}{}", ms, "0".repeat(exp10 as usize))
    } else {
        let k = (-exp10) as usize;
        if k < ms.len() {
            let (i, f) = ms.split_at(ms.len() - k);
            format!("{}.{}", i, f.trim_end_matches('0'))
        } else {
            format!("0.{}{}", "0".repeat(k - ms.len()), ms.trim_end_matches('0'))
        }
    };
    let body = body.trim_end_matches('.').to_string();
    if neg {
        format!("-{}", body)
    } else {
        body
    }
}

/// All partitions of `n`, each in descending order, listed in reverse
/// lexicographic order.
pub fn partitions(n: u32) -> Vec<Vec<u32>> {
    fn rec(n: u32, max: u32, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if n == 0 {
            out.push(cur.clone());
            return;
        }
        for k in (1..=n.min(max)).rev() {
            cur.push(k);
            rec(n - k, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(n, n, &mut Vec::new(), &mut out);
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn partition_counts() {
        let counts: Vec<usize> = (0..10).map(|n| partitions(n).len()).collect();
        assert_eq!(counts, vec![1, 1, 2, 3, 5, 7, 11, 15, 22, 30]);
    }

    #[test]
    fn prime_powers() {
        assert_eq!(prime_power(81), Some((3, 4)));
        assert_eq!(prime_power(2), Some((2, 1)));
        assert_eq!(prime_power(12), None);
        assert_eq!(prime_power(1), None);
    }

    #[test]
    fn decimal_rendering_is_directed() {
        let x = rat_u(1, 3);
        assert_eq!(rational_to_decimal(&x, 5, false), "0.33333");
        assert_eq!(rational_to_decimal(&x, 5, true), "0.33334");
        assert_eq!(rational_to_decimal(&rat_u(126, 1), 5, false), "126");
        assert_eq!(rational_to_decimal(&rat_u(5, 2), 3, true), "2.5");
    }

    #[test]
    fn powers_of_p() {
        assert!(is_power_of(&big(1), 2));
        assert!(is_power_of(&big(4), 2));
        assert!(!is_power_of(&big(12), 2));
    }
}

/// Serialises a rational as `p/q` (or `p` when integral).
pub fn ser_rat<S: serde::Serializer>(x: &BigRational, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&x.to_string())
}

pub fn binom(n: u64, k: u64) -> BigUint {
    if k > n {
        return BigUint::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigUint::one();
    for i in 0..k {
        acc = acc * (n - i) / (i + 1);
    }
    acc
}
