use std::fmt;

use num_bigint::BigUint;
use num_integer::Integer;

use crate::PermError;

/// A permutation of `0..degree`, stored as its image array.
///
/// Products act on the right: `a.mul(&b)` maps `x` to `b(a(x))`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Perm {
    img: Box<[u32]>,
}

impl Perm {
    pub fn identity(degree: usize) -> Perm {
        Perm {
            img: (0..degree as u32).collect(),
        }
    }

    pub fn from_images(images: Vec<u32>) -> Result<Perm, PermError> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &x in &images {
            let x = x as usize;
            if x >= n || seen[x] {
                return Err(PermError::NotBijective);
            }
            seen[x] = true;
        }
        Ok(Perm {
            img: images.into_boxed_slice(),
        })
    }

    /// Build from disjoint cycles on `0..degree`.
    pub fn from_cycles(degree: usize, cycles: &[&[u32]]) -> Result<Perm, PermError> {
        let mut img: Vec<u32> = (0..degree as u32).collect();
        for c in cycles {
            for (i, &x) in c.iter().enumerate() {
                let y = c[(i + 1) % c.len()];
                if x as usize >= degree || y as usize >= degree {
                    return Err(PermError::NotBijective);
                }
                img[x as usize] = y;
            }
        }
        Perm::from_images(img)
    }

    #[inline]
    pub fn degree(&self) -> usize {
        self.img.len()
    }

    #[inline]
    pub fn image(&self, x: u32) -> u32 {
        self.img[x as usize]
    }

    pub fn images(&self) -> &[u32] {
        &self.img
    }

    /// `self` followed by `other`.
    pub fn mul(&self, other: &Perm) -> Perm {
        debug_assert_eq!(self.degree(), other.degree());
        let img: Vec<u32> = self.img.iter().map(|&x| other.img[x as usize]).collect();
        Perm {
            img: img.into_boxed_slice(),
        }
    }

    /// In-place `self = self * other`.
    pub fn mul_assign(&mut self, other: &Perm) {
        for x in self.img.iter_mut() {
            *x = other.img[*x as usize];
        }
    }

    pub fn inverse(&self) -> Perm {
        let mut inv = vec![0u32; self.degree()];
        for (i, &x) in self.img.iter().enumerate() {
            inv[x as usize] = i as u32;
        }
        Perm {
            img: inv.into_boxed_slice(),
        }
    }

    /// `other^-1 * self * other`.
    pub fn conjugate_by(&self, other: &Perm) -> Perm {
        let mut img = vec![0u32; self.degree()];
        for (i, &x) in self.img.iter().enumerate() {
            img[other.img[i] as usize] = other.img[x as usize];
        }
        Perm {
            img: img.into_boxed_slice(),
        }
    }

    pub fn is_identity(&self) -> bool {
        self.img.iter().enumerate().all(|(i, &x)| i as u32 == x)
    }

    pub fn pow(&self, mut e: u64) -> Perm {
        let mut base = self.clone();
        let mut acc = Perm::identity(self.degree());
        while e > 0 {
            if e & 1 == 1 {
                acc.mul_assign(&base);
            }
            base = base.mul(&base);
            e >>= 1;
        }
        acc
    }

    /// Cycle lengths including fixed points, sorted descending.
    pub fn cycle_type(&self) -> Vec<usize> {
        let n = self.degree();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for s in 0..n {
            if seen[s] {
                continue;
            }
            let mut len = 0;
            let mut x = s;
            while !seen[x] {
                seen[x] = true;
                x = self.img[x] as usize;
                len += 1;
            }
            out.push(len);
        }
        out.sort_unstable_by(|a, b| b.cmp(a));
        out
    }

    pub fn order(&self) -> BigUint {
        let mut l = BigUint::from(1u32);
        let mut ct = self.cycle_type();
        ct.dedup();
        for c in ct {
            l = l.lcm(&BigUint::from(c));
        }
        l
    }

    pub fn moved_points(&self) -> impl Iterator<Item = u32> + '_ {
        self.img
            .iter()
            .enumerate()
            .filter(|(i, &x)| *i as u32 != x)
            .map(|(i, _)| i as u32)
    }

    pub fn first_moved(&self) -> Option<u32> {
        self.moved_points().next()
    }

    /// Restrict to `0..new_degree`; the prefix must be invariant.
    pub fn restrict(&self, new_degree: usize) -> Result<Perm, PermError> {
        Perm::from_images(self.img[..new_degree].to_vec())
    }
}

impl fmt::Debug for Perm {
    // Cycle notation, fixed points omitted.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let n = self.degree();
        let mut seen = vec![false; n];
        let mut any = false;
        for s in 0..n {
            if seen[s] || self.img[s] as usize == s {
                continue;
            }
            any = true;
            write!(f, "(")?;
            let mut x = s;
            let mut first = true;
            while !seen[x] {
                seen[x] = true;
                if !first {
                    write!(f, ",")?;
                }
                write!(f, "{}", x)?;
                first = false;
                x = self.img[x] as usize;
            }
            write!(f, ")")?;
        }
        if !any {
            write!(f, "()")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn compose_acts_on_the_right() {
        let a = Perm::from_cycles(3, &[&[0, 1]]).unwrap();
        let b = Perm::from_cycles(3, &[&[1, 2]]).unwrap();
        // 0 -a-> 1 -b-> 2
        assert_eq!(a.mul(&b).image(0), 2);
        assert_eq!(b.mul(&a).image(0), 1);
    }

    #[test]
    fn inverse_and_order() {
        let p = Perm::from_cycles(7, &[&[0, 1, 2], &[3, 4]]).unwrap();
        assert!(p.mul(&p.inverse()).is_identity());
        assert_eq!(p.order(), BigUint::from(6u32));
        assert_eq!(p.cycle_type(), vec![3, 2, 1, 1]);
        assert!(p.pow(6).is_identity());
        assert!(!p.pow(3).is_identity());
    }

    #[test]
    fn conjugation_matches_product() {
        let a = Perm::from_cycles(5, &[&[0, 1, 2, 3, 4]]).unwrap();
        let b = Perm::from_cycles(5, &[&[0, 2]]).unwrap();
        assert_eq!(a.conjugate_by(&b), b.inverse().mul(&a).mul(&b));
    }

    #[test]
    fn rejects_non_bijection() {
        assert!(Perm::from_images(vec![0, 0, 1]).is_err());
        assert!(Perm::from_images(vec![0, 3]).is_err());
    }
}
