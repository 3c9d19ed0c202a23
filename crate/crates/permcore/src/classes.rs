//! Exhaustive conjugacy classes for small groups.
//!
//! Elements are ranked by their transversal indices in the stabiliser chain, so
//! a bitset over `0..|G|` records which elements have been assigned a class.

use std::collections::HashMap;

use num_bigint::BigUint;
use num_traits::ToPrimitive;

use crate::group::PermGroup;
use crate::perm::Perm;
use crate::{Limits, PermError};

#[derive(Clone, Debug)]
pub struct ClassInfo {
    pub representative: Perm,
    pub size: u64,
    pub element_order: BigUint,
}

struct Ranker {
    /// For each level: base point, position of each point in the orbit
    /// (u32::MAX if absent), explicit transversal and inverse transversal.
    levels: Vec<RankLevel>,
    radix: Vec<u64>,
    degree: usize,
}

struct RankLevel {
    point: u32,
    pos: Vec<u32>,
    trans: Vec<Perm>,
    trans_inv: Vec<Perm>,
}

impl Ranker {
    fn new(g: &PermGroup) -> Ranker {
        let chain = g.chain();
        let degree = g.degree();
        let mut levels = Vec::new();
        let mut radix = Vec::new();
        let mut r = 1u64;
        for (i, l) in chain.levels().iter().enumerate() {
            let mut pos = vec![u32::MAX; degree];
            let mut trans = Vec::with_capacity(l.orbit.len());
            let mut trans_inv = Vec::with_capacity(l.orbit.len());
            for (k, &x) in l.orbit.iter().enumerate() {
                pos[x as usize] = k as u32;
                let u = chain.transversal(i, x);
                trans_inv.push(u.inverse());
                trans.push(u);
            }
            levels.push(RankLevel {
                point: l.point,
                pos,
                trans,
                trans_inv,
            });
            radix.push(r);
            r *= l.orbit.len() as u64;
        }
        Ranker { levels, radix, degree }
    }

    fn rank(&self, g: &Perm) -> u64 {
        let mut h = g.clone();
        let mut r = 0u64;
        for (i, l) in self.levels.iter().enumerate() {
            let x = h.image(l.point);
            let k = l.pos[x as usize];
            debug_assert!(k != u32::MAX, "element not in group");
            r += k as u64 * self.radix[i];
            h.mul_assign(&l.trans_inv[k as usize]);
        }
        r
    }

    /// Element with transversal digits of `r`: `u_{k-1} ... u_1 u_0`.
    fn unrank(&self, mut r: u64) -> Perm {
        let mut digits = Vec::with_capacity(self.levels.len());
        for l in &self.levels {
            let m = l.trans.len() as u64;
            digits.push((r % m) as usize);
            r /= m;
        }
        let mut g = Perm::identity(self.degree);
        for (i, l) in self.levels.iter().enumerate().rev() {
            g.mul_assign(&l.trans[digits[i]]);
        }
        g
    }
}

fn is_prime(n: &BigUint) -> bool {
    match n.to_u64() {
        Some(m) if m >= 2 => {
            let mut d = 2u64;
            while d * d <= m {
                if m % d == 0 {
                    return false;
                }
                d += 1;
            }
            true
        }
        _ => false,
    }
}

/// All conjugacy classes (or only those of prime-order elements), sorted by
/// element order, then size, then the smallest element rank in the class.
pub fn exhaustive_classes(g: &PermGroup, limits: &Limits, prime_only: bool) -> Result<Vec<ClassInfo>, PermError> {
    Ok(classes_locating(g, limits, prime_only, &[])?.0)
}

/// As [`exhaustive_classes`], also reporting for each element of `targets`
/// (which must lie in `g`) the index of its class in the returned list, or
/// `None` if that class was skipped by `prime_only`.
pub fn classes_locating(
    g: &PermGroup,
    limits: &Limits,
    prime_only: bool,
    targets: &[Perm],
) -> Result<(Vec<ClassInfo>, Vec<Option<usize>>), PermError> {
    let order = g.order();
    let n = order
        .to_u64()
        .filter(|&n| n <= limits.exhaustive_limit)
        .ok_or_else(|| PermError::LimitExceeded {
            what: "exhaustive class enumeration",
            size: order.clone(),
            max: limits.exhaustive_limit,
        })?;
    let ranker = Ranker::new(g);
    let gens: Vec<(Perm, Perm)> = g.generators().iter().map(|s| (s.clone(), s.inverse())).collect();
    let mut seen = vec![0u64; (n as usize + 63) / 64];
    let mark = |seen: &mut Vec<u64>, r: u64| -> bool {
        let (w, b) = ((r / 64) as usize, r % 64);
        let was = seen[w] >> b & 1 == 1;
        seen[w] |= 1 << b;
        !was
    };
    let mut wanted: HashMap<u64, Vec<usize>> = HashMap::new();
    for (i, t) in targets.iter().enumerate() {
        if !g.contains(t) {
            return Err(PermError::Inconsistent("target element is not in the group"));
        }
        wanted.entry(ranker.rank(t)).or_default().push(i);
    }
    let mut found: Vec<Option<usize>> = vec![None; targets.len()];
    let mut out: Vec<(u64, ClassInfo)> = Vec::new();
    for r in 0..n {
        if seen[(r / 64) as usize] >> (r % 64) & 1 == 1 {
            continue;
        }
        let x = ranker.unrank(r);
        let ord = x.order();
        if prime_only && !is_prime(&ord) {
            continue;
        }
        mark(&mut seen, r);
        let mut queue = vec![r];
        let mut k = 0;
        while k < queue.len() {
            let y = ranker.unrank(queue[k]);
            for (s, si) in &gens {
                let z = si.mul(&y).mul(s);
                let rz = ranker.rank(&z);
                if mark(&mut seen, rz) {
                    queue.push(rz);
                }
            }
            k += 1;
        }
        if !wanted.is_empty() {
            for rr in &queue {
                if let Some(ix) = wanted.get(rr) {
                    for &i in ix {
                        found[i] = Some(out.len());
                    }
                }
            }
        }
        out.push((
            r,
            ClassInfo {
                representative: x,
                size: queue.len() as u64,
                element_order: ord,
            },
        ));
    }
    let mut perm: Vec<usize> = (0..out.len()).collect();
    perm.sort_by(|&a, &b| {
        let (x, y) = (&out[a], &out[b]);
        (&x.1.element_order, x.1.size, x.0).cmp(&(&y.1.element_order, y.1.size, y.0))
    });
    let mut new_index = vec![0; out.len()];
    for (new, &old) in perm.iter().enumerate() {
        new_index[old] = new;
    }
    let found = found.into_iter().map(|f| f.map(|i| new_index[i])).collect();
    let mut slots: Vec<Option<ClassInfo>> = out.into_iter().map(|(_, c)| Some(c)).collect();
    let sorted = perm.iter().map(|&i| slots[i].take().unwrap()).collect();
    Ok((sorted, found))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn s4_classes() {
        let lim = Limits::default();
        let g = PermGroup::new(
            vec![
                Perm::from_cycles(4, &[&[0, 1, 2, 3]]).unwrap(),
                Perm::from_cycles(4, &[&[0, 1]]).unwrap(),
            ],
            4,
            &lim,
        )
        .unwrap();
        let cl = exhaustive_classes(&g, &lim, false).unwrap();
        let mut sizes: Vec<u64> = cl.iter().map(|c| c.size).collect();
        sizes.sort_unstable();
        assert_eq!(sizes, vec![1, 3, 6, 6, 8]);
        assert_eq!(sizes.iter().sum::<u64>(), 24);
        let (prime, loc) = classes_locating(&g, &lim, true, &[Perm::from_cycles(4, &[&[1, 2]]).unwrap()]).unwrap();
        assert_eq!(prime[loc[0].unwrap()].size, 6);
        let mut ps: Vec<u64> = prime.iter().map(|c| c.size).collect();
        ps.sort_unstable();
        assert_eq!(ps, vec![3, 6, 8]);
    }

    #[test]
    fn rank_unrank_roundtrip() {
        let lim = Limits::default();
        let g = PermGroup::new(
            vec![
                Perm::from_cycles(5, &[&[0, 1, 2, 3, 4]]).unwrap(),
                Perm::from_cycles(5, &[&[0, 1]]).unwrap(),
            ],
            5,
            &lim,
        )
        .unwrap();
        let rk = Ranker::new(&g);
        for r in 0..120 {
            assert_eq!(rk.rank(&rk.unrank(r)), r);
        }
    }
}
