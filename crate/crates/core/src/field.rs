//! Finite fields GF(p^e) with log/exp tables, field extensions with
//! coordinates, and small dense matrices.
//!
//! An element is stored as the integer `Σ c_i p^i` of its coefficient vector
//! in the power basis of `x` modulo the field's defining polynomial, so `0` is
//! zero and `1` is one. The defining polynomial is the least primitive monic
//! polynomial of degree `e`, ordering polynomials `x^e + Σ c_i x^i` by the
//! integer `Σ c_i p^i`.

use std::fmt;

use crate::{LieError, Result};

/// Largest field size handled with full tables.
pub const MAX_FIELD: u64 = 1 << 22;

#[derive(Clone)]
pub struct Gf {
    p: u32,
    e: u32,
    size: u32,
    /// Low coefficients of the monic defining polynomial.
    modulus: Vec<u32>,
    /// `exp[i] = ζ^i` for `0 <= i < 2(size - 1)`.
    exp: Vec<u32>,
    /// `log[a]` for `a != 0`.
    log: Vec<u32>,
}

impl fmt::Debug for Gf {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GF({}^{}; modulus {:?})", self.p, self.e, self.modulus)
    }
}

impl PartialEq for Gf {
    fn eq(&self, other: &Gf) -> bool {
        self.p == other.p && self.e == other.e
    }
}

impl Eq for Gf {}

impl Gf {
    pub fn new(p: u32, e: u32) -> Result<Gf> {
        if !crate::arith::is_prime(p as u64) || e == 0 {
            return Err(LieError::InvalidSpec(format!("GF({p}^{e})")));
        }
        let size = (p as u64)
            .checked_pow(e)
            .filter(|&s| s <= MAX_FIELD)
            .ok_or_else(|| LieError::LimitExceeded {
                what: "field size".into(),
                size: format!("{p}^{e}"),
                max: MAX_FIELD,
            })? as u32;
        for low in 0..size {
            let modulus = digits(low, p, e);
            if modulus[0] == 0 {
                continue;
            }
            if let Some(exp) = power_table(&modulus, p, size) {
                let mut log = vec![u32::MAX; size as usize];
                for (i, &a) in exp.iter().enumerate().take(size as usize - 1) {
                    log[a as usize] = i as u32;
                }
                return Ok(Gf {
                    p,
                    e,
                    size,
                    modulus,
                    exp,
                    log,
                });
            }
        }
        Err(LieError::Construction(format!(
            "no primitive polynomial for GF({p}^{e})"
        )))
    }

    /// GF(q) for a prime power `q`.
    pub fn of_order(q: u64) -> Result<Gf> {
        let (p, e) = crate::arith::prime_power(q).ok_or_else(|| LieError::InvalidSpec(format!("GF({q})")))?;
        Gf::new(p as u32, e)
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn degree(&self) -> u32 {
        self.e
    }

    pub fn size(&self) -> u32 {
        self.size
    }

    pub fn modulus(&self) -> &[u32] {
        &self.modulus
    }

    /// The primitive element `x`.
    pub fn zeta(&self) -> u32 {
        self.exp[1]
    }

    pub fn elements(&self) -> std::ops::Range<u32> {
        0..self.size
    }

    #[inline]
    pub fn add(&self, a: u32, b: u32) -> u32 {
        if self.p == 2 {
            return a ^ b;
        }
        let p = self.p;
        let (mut a, mut b) = (a, b);
        let mut out = 0;
        let mut w = 1;
        while a > 0 || b > 0 {
            out += ((a % p + b % p) % p) * w;
            a /= p;
            b /= p;
            w *= p;
        }
        out
    }

    #[inline]
    pub fn neg(&self, a: u32) -> u32 {
        if self.p == 2 {
            return a;
        }
        let p = self.p;
        let mut a = a;
        let mut out = 0;
        let mut w = 1;
        while a > 0 {
            out += ((p - a % p) % p) * w;
            a /= p;
            w *= p;
        }
        out
    }

    #[inline]
    pub fn sub(&self, a: u32, b: u32) -> u32 {
        self.add(a, self.neg(b))
    }

    #[inline]
    pub fn mul(&self, a: u32, b: u32) -> u32 {
        if a == 0 || b == 0 {
            return 0;
        }
        self.exp[(self.log[a as usize] + self.log[b as usize]) as usize]
    }

    pub fn inv(&self, a: u32) -> u32 {
        assert!(a != 0, "inverse of zero");
        let m = self.size - 1;
        self.exp[((m - self.log[a as usize]) % m) as usize]
    }

    pub fn div(&self, a: u32, b: u32) -> u32 {
        self.mul(a, self.inv(b))
    }

    pub fn pow(&self, a: u32, k: u64) -> u32 {
        if a == 0 {
            return if k == 0 { 1 } else { 0 };
        }
        let m = (self.size - 1) as u64;
        self.exp[((self.log[a as usize] as u64 * (k % m)) % m) as usize]
    }

    /// `ζ^k`, for any integer `k`.
    pub fn zeta_pow(&self, k: i64) -> u32 {
        let m = (self.size - 1) as i64;
        self.exp[k.rem_euclid(m) as usize]
    }

    /// Discrete log base `ζ`; `None` for zero.
    pub fn log(&self, a: u32) -> Option<u32> {
        (a != 0).then(|| self.log[a as usize])
    }

    /// Multiplicative order of a nonzero element.
    pub fn order(&self, a: u32) -> u64 {
        let m = (self.size - 1) as u64;
        m / crate::arith::gcd_u64(m, self.log[a as usize] as u64)
    }

    /// The integer `c` in the prime field, as an element.
    pub fn from_int(&self, c: i64) -> u32 {
        c.rem_euclid(self.p as i64) as u32
    }
}

fn digits(mut x: u32, p: u32, e: u32) -> Vec<u32> {
    let mut d = Vec::with_capacity(e as usize);
    for _ in 0..e {
        d.push(x % p);
        x /= p;
    }
    d
}

fn undigits(d: &[u32], p: u32) -> u32 {
    d.iter().rev().fold(0, |a, &c| a * p + c)
}

/// Powers of `x` modulo `x^e + Σ low_i x^i`, if `x` has order `size - 1`.
fn power_table(low: &[u32], p: u32, size: u32) -> Option<Vec<u32>> {
    let e = low.len();
    let m = (size - 1) as usize;
    let mut exp = Vec::with_capacity(2 * m);
    let mut cur = vec![0u32; e];
    cur[0] = 1;
    for i in 0..m {
        let code = undigits(&cur, p);
        if i > 0 && code == 1 {
            return None;
        }
        exp.push(code);
        // multiply by x: x^e = -Σ low_i x^i
        let top = cur[e - 1];
        for j in (1..e).rev() {
            cur[j] = (cur[j - 1] + (p - low[j]) * top) % p;
        }
        cur[0] = ((p - low[0]) * top) % p;
    }
    if undigits(&cur, p) != 1 {
        return None;
    }
    let again = exp.clone();
    exp.extend(again);
    Some(exp)
}

/// A field `big` as a vector space of dimension `deg` over a subfield `small`.
#[derive(Clone, Debug)]
pub struct Extension {
    pub big: Gf,
    pub small: Gf,
    pub deg: u32,
    /// Image in `big` of each element of `small`.
    embed: Vec<u32>,
    /// Inverse of `embed` on its image, `u32::MAX` elsewhere.
    unembed: Vec<u32>,
    /// Coordinates over `small` in the basis `1, ζ, ..., ζ^{deg-1}` of `big`.
    coords: Vec<u32>,
}

impl Extension {
    pub fn new(small: Gf, deg: u32) -> Result<Extension> {
        let big = Gf::new(small.p, small.e * deg)?;
        // a root of small's defining polynomial, least by code
        let mut root = None;
        for r in 1..big.size {
            let mut v = big.pow(r, small.e as u64);
            for (i, &c) in small.modulus.iter().enumerate() {
                v = big.add(v, big.mul(c, big.pow(r, i as u64)));
            }
            if v == 0 {
                root = Some(r);
                break;
            }
        }
        let root = root.ok_or_else(|| LieError::Construction("no root of the subfield modulus".into()))?;
        let mut embed = vec![0u32; small.size as usize];
        let mut unembed = vec![u32::MAX; big.size as usize];
        unembed[0] = 0;
        for i in 0..small.size - 1 {
            let a = small.exp[i as usize];
            let b = big.pow(root, i as u64);
            embed[a as usize] = b;
            unembed[b as usize] = a;
        }
        let d = deg as usize;
        let mut coords = vec![u32::MAX; big.size as usize * d];
        let basis: Vec<u32> = (0..deg).map(|i| big.zeta_pow(i as i64)).collect();
        let mut tuple = vec![0u32; d];
        let total = (small.size as u64).pow(deg);
        for t in 0..total {
            let mut k = t;
            for c in tuple.iter_mut() {
                *c = (k % small.size as u64) as u32;
                k /= small.size as u64;
            }
            let mut x = 0;
            for (i, &c) in tuple.iter().enumerate() {
                x = big.add(x, big.mul(embed[c as usize], basis[i]));
            }
            let slot = &mut coords[x as usize * d..(x as usize + 1) * d];
            if slot[0] != u32::MAX {
                return Err(LieError::Construction("power basis is dependent".into()));
            }
            slot.copy_from_slice(&tuple);
        }
        Ok(Extension {
            big,
            small,
            deg,
            embed,
            unembed,
            coords,
        })
    }

    pub fn embed(&self, a: u32) -> u32 {
        self.embed[a as usize]
    }

    /// The element of `small` equal to `x`, if `x` lies in the subfield.
    pub fn unembed(&self, x: u32) -> Option<u32> {
        let a = self.unembed[x as usize];
        (a != u32::MAX).then_some(a)
    }

    pub fn coords(&self, x: u32) -> &[u32] {
        let d = self.deg as usize;
        &self.coords[x as usize * d..(x as usize + 1) * d]
    }

    pub fn basis(&self, i: u32) -> u32 {
        self.big.zeta_pow(i as i64)
    }

    /// `x^{|small|^k}`.
    pub fn frob(&self, x: u32, k: u32) -> u32 {
        self.big.pow(x, (self.small.size as u64).pow(k % self.deg.max(1)))
    }

    /// Trace to `small`, as an element of `small`.
    pub fn trace(&self, x: u32) -> u32 {
        let mut t = 0;
        for k in 0..self.deg {
            t = self.big.add(t, self.frob(x, k));
        }
        self.unembed(t).expect("trace lies in the subfield")
    }

    /// Matrix over `small` of the `small`-linear map `f` on `big`, for row
    /// vectors (row `i` holds the coordinates of `f(ζ^i)`).
    pub fn matrix_of(&self, f: impl Fn(u32) -> u32) -> Mat {
        let d = self.deg as usize;
        let mut m = Mat::zero(d);
        for i in 0..d {
            let img = f(self.basis(i as u32));
            m.row_mut(i).copy_from_slice(self.coords(img));
        }
        m
    }
}

/// A square matrix over some [`Gf`] (the field is passed to each operation).
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Mat {
    pub n: usize,
    pub a: Vec<u32>,
}

impl Mat {
    pub fn zero(n: usize) -> Mat {
        Mat { n, a: vec![0; n * n] }
    }

    pub fn identity(n: usize) -> Mat {
        let mut m = Mat::zero(n);
        for i in 0..n {
            m.a[i * n + i] = 1;
        }
        m
    }

    pub fn from_rows(rows: &[Vec<u32>]) -> Mat {
        let n = rows.len();
        let mut m = Mat::zero(n);
        for (i, r) in rows.iter().enumerate() {
            assert_eq!(r.len(), n);
            m.row_mut(i).copy_from_slice(r);
        }
        m
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> u32 {
        self.a[i * self.n + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: u32) {
        self.a[i * self.n + j] = v;
    }

    pub fn row(&self, i: usize) -> &[u32] {
        &self.a[i * self.n..(i + 1) * self.n]
    }

    pub fn row_mut(&mut self, i: usize) -> &mut [u32] {
        &mut self.a[i * self.n..(i + 1) * self.n]
    }

    pub fn is_identity(&self) -> bool {
        *self == Mat::identity(self.n)
    }

    pub fn mul(&self, k: &Gf, b: &Mat) -> Mat {
        let n = self.n;
        let mut c = Mat::zero(n);
        for i in 0..n {
            for l in 0..n {
                let x = self.get(i, l);
                if x == 0 {
                    continue;
                }
                for j in 0..n {
                    let y = b.get(l, j);
                    if y != 0 {
                        let v = k.add(c.get(i, j), k.mul(x, y));
                        c.set(i, j, v);
                    }
                }
            }
        }
        c
    }

    pub fn add(&self, k: &Gf, b: &Mat) -> Mat {
        Mat {
            n: self.n,
            a: self.a.iter().zip(&b.a).map(|(&x, &y)| k.add(x, y)).collect(),
        }
    }

    pub fn scale(&self, k: &Gf, c: u32) -> Mat {
        Mat {
            n: self.n,
            a: self.a.iter().map(|&x| k.mul(c, x)).collect(),
        }
    }

    pub fn transpose(&self) -> Mat {
        let n = self.n;
        let mut t = Mat::zero(n);
        for i in 0..n {
            for j in 0..n {
                t.set(j, i, self.get(i, j));
            }
        }
        t
    }

    /// Apply `x -> x^{p^k}` entrywise.
    pub fn frobenius(&self, k: &Gf, power: u64) -> Mat {
        Mat {
            n: self.n,
            a: self.a.iter().map(|&x| k.pow(x, power)).collect(),
        }
    }

    /// Row vector times matrix.
    pub fn apply(&self, k: &Gf, v: &[u32], out: &mut [u32]) {
        let n = self.n;
        out.iter_mut().for_each(|x| *x = 0);
        for (i, &x) in v.iter().enumerate() {
            if x == 0 {
                continue;
            }
            let r = self.row(i);
            for j in 0..n {
                if r[j] != 0 {
                    out[j] = k.add(out[j], k.mul(x, r[j]));
                }
            }
        }
    }

    pub fn pow(&self, k: &Gf, mut e: u64) -> Mat {
        let mut base = self.clone();
        let mut acc = Mat::identity(self.n);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(k, &base);
            }
            base = base.mul(k, &base);
            e >>= 1;
        }
        acc
    }

    /// Row echelon form in place; returns (rank, determinant).
    fn eliminate(&self, k: &Gf, mut aug: Option<&mut Mat>) -> (usize, u32) {
        let n = self.n;
        let mut m = self.clone();
        let mut det = 1u32;
        let mut rank = 0;
        for col in 0..n {
            let Some(piv) = (rank..n).find(|&r| m.get(r, col) != 0) else {
                det = 0;
                continue;
            };
            if piv != rank {
                for j in 0..n {
                    m.a.swap(piv * n + j, rank * n + j);
                }
                if let Some(a) = aug.as_deref_mut() {
                    for j in 0..n {
                        a.a.swap(piv * n + j, rank * n + j);
                    }
                }
                det = k.neg(det);
            }
            let pv = m.get(rank, col);
            det = k.mul(det, pv);
            let pinv = k.inv(pv);
            for j in 0..n {
                m.set(rank, j, k.mul(m.get(rank, j), pinv));
                if let Some(a) = aug.as_deref_mut() {
                    a.set(rank, j, k.mul(a.get(rank, j), pinv));
                }
            }
            for r in 0..n {
                if r == rank {
                    continue;
                }
                let f = m.get(r, col);
                if f == 0 {
                    continue;
                }
                let nf = k.neg(f);
                for j in 0..n {
                    let v = k.add(m.get(r, j), k.mul(nf, m.get(rank, j)));
                    m.set(r, j, v);
                    if let Some(a) = aug.as_deref_mut() {
                        let v = k.add(a.get(r, j), k.mul(nf, a.get(rank, j)));
                        a.set(r, j, v);
                    }
                }
            }
            rank += 1;
        }
        (rank, if rank == n { det } else { 0 })
    }

    pub fn rank(&self, k: &Gf) -> usize {
        self.eliminate(k, None).0
    }

    pub fn det(&self, k: &Gf) -> u32 {
        self.eliminate(k, None).1
    }

    pub fn inverse(&self, k: &Gf) -> Option<Mat> {
        let mut inv = Mat::identity(self.n);
        let (r, _) = self.eliminate(k, Some(&mut inv));
        (r == self.n).then_some(inv)
    }

    /// Block-diagonal sum.
    pub fn direct_sum(blocks: &[Mat]) -> Mat {
        let n = blocks.iter().map(|b| b.n).sum();
        let mut m = Mat::zero(n);
        let mut off = 0;
        for b in blocks {
            for i in 0..b.n {
                for j in 0..b.n {
                    m.set(off + i, off + j, b.get(i, j));
                }
            }
            off += b.n;
        }
        m
    }

    /// Entries row-major in decimal codes.
    pub fn to_rows(&self) -> Vec<Vec<u32>> {
        (0..self.n).map(|i| self.row(i).to_vec()).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_fields() {
        for q in [2u64, 3, 4, 5, 7, 8, 9, 16, 25, 27, 32, 64, 81, 243, 729, 1024, 4096] {
            let k = Gf::of_order(q).unwrap();
            assert_eq!(k.order(k.zeta()), q - 1);
            for a in 1..k.size() {
                assert_eq!(k.mul(a, k.inv(a)), 1);
                assert_eq!(k.add(a, k.neg(a)), 0);
            }
        }
    }

    #[test]
    fn least_primitive_polynomials() {
        // x^2 + x + 1 over GF(2); x^2 + x + 2 over GF(3); x^3 + x + 1 over GF(2)
        assert_eq!(Gf::new(2, 2).unwrap().modulus(), &[1, 1]);
        assert_eq!(Gf::new(3, 2).unwrap().modulus(), &[2, 1]);
        assert_eq!(Gf::new(2, 3).unwrap().modulus(), &[1, 1, 0]);
        // x^4 + x + 1 over GF(2)
        assert_eq!(Gf::new(2, 4).unwrap().modulus(), &[1, 1, 0, 0]);
        // prime fields: x + c for the least c with -c primitive
        assert_eq!(Gf::new(7, 1).unwrap().zeta(), 5);
        assert_eq!(Gf::new(5, 1).unwrap().zeta(), 3);
    }

    #[test]
    fn distributive() {
        let k = Gf::of_order(27).unwrap();
        for a in 0..27 {
            for b in 0..27 {
                for c in [0, 1, 5, 13, 26] {
                    assert_eq!(k.mul(a, k.add(b, c)), k.add(k.mul(a, b), k.mul(a, c)));
                }
            }
        }
    }

    #[test]
    fn extension_coordinates() {
        let small = Gf::of_order(4).unwrap();
        let ext = Extension::new(small.clone(), 3).unwrap();
        assert_eq!(ext.big.size(), 64);
        for a in 0..4 {
            for b in 0..4 {
                let x = ext.big.add(ext.embed(a), ext.embed(b));
                assert_eq!(ext.unembed(x), Some(small.add(a, b)));
                let y = ext.big.mul(ext.embed(a), ext.embed(b));
                assert_eq!(ext.unembed(y), Some(small.mul(a, b)));
            }
        }
        // trace is small-linear and onto
        let mut seen = std::collections::BTreeSet::new();
        for x in 0..64 {
            seen.insert(ext.trace(x));
        }
        assert_eq!(seen.len(), 4);
        let m = ext.matrix_of(|x| ext.big.mul(x, ext.big.zeta()));
        assert_eq!(m.pow(&small, 63), Mat::identity(3));
        assert!(!m.pow(&small, 21).is_identity());
    }

    #[test]
    fn inverse_and_det() {
        let k = Gf::of_order(5).unwrap();
        let m = Mat::from_rows(&[vec![1, 2, 0], vec![3, 4, 1], vec![0, 1, 1]]);
        let inv = m.inverse(&k).unwrap();
        assert!(m.mul(&k, &inv).is_identity());
        // det = 1*(4-1) - 2*(3-0) = -3 = 2 mod 5
        assert_eq!(m.det(&k), 2);
        let s = Mat::from_rows(&[vec![1, 2], vec![2, 4]]);
        assert_eq!(s.rank(&k), 1);
        assert!(s.inverse(&k).is_none());
    }
}
