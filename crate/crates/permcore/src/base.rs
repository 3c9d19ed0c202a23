//! Regular orbits, exact base sizes and two-point stabiliser orders for a
//! subgroup acting on a coset space.

use std::collections::BTreeMap;

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive};

use crate::chain::StabChain;
use crate::coset::CosetAction;
use crate::group::orbit_lengths;
use crate::perm::Perm;
use crate::{Limits, PermError};

/// A group given by generators on `degree` points whose order is known exactly.
#[derive(Clone, Debug)]
pub struct KnownGroup {
    pub gens: Vec<Perm>,
    pub degree: usize,
    pub order: BigUint,
}

impl KnownGroup {
    /// Stabiliser of `point`, with its order.
    pub fn stabilizer(&self, point: u32, limits: &Limits) -> Result<KnownGroup, PermError> {
        if self.order.is_one() {
            return Ok(self.clone());
        }
        let chain = StabChain::build_known_order(&self.gens, self.degree, &[point], &self.order, limits.seed, 200_000)
            .ok_or_else(|| PermError::OrderNotReached {
                expected: self.order.clone(),
            })?;
        Ok(KnownGroup {
            gens: chain.level_generators(1),
            degree: self.degree,
            order: chain.stabilizer_order(1),
        })
    }

    /// Orbit representatives (smallest point) with lengths.
    pub fn orbits(&self) -> Vec<(u32, usize)> {
        orbit_lengths(&self.gens, self.degree)
    }
}

/// A point in a regular orbit, if any; ties broken by the smallest point.
pub fn regular_orbit_search(h: &KnownGroup) -> Option<u32> {
    let ord = h.order.to_usize()?;
    h.orbits().into_iter().find(|&(_, len)| len == ord).map(|(p, _)| p)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum BaseSize {
    Exact {
        b: usize,
        witness: Vec<u32>,
    },
    /// Search stopped at the cap; `b` lies in `lower..=upper` (upper may be None).
    Bracket {
        lower: usize,
        upper: Option<usize>,
    },
}

impl BaseSize {
    pub fn exact(&self) -> Option<usize> {
        match self {
            BaseSize::Exact { b, .. } => Some(*b),
            _ => None,
        }
    }
}

/// Smallest `k` with `degree^k >= order`; a base of size below this is impossible.
pub fn log_lower_bound(order: &BigUint, degree: usize) -> usize {
    if degree <= 1 {
        return if order.is_one() { 0 } else { usize::MAX };
    }
    let d = BigUint::from(degree);
    let mut k = 0;
    let mut pw = BigUint::one();
    while &pw < order {
        pw *= &d;
        k += 1;
    }
    k
}

/// Exact base size of the transitive action of G on `G/N`, searching up to `cap`.
///
/// Coset 0 is fixed by N, so `b(G,N) = 1 + ` (minimal base size of N on the
/// cosets). Depth `k` is decided exhaustively over orbit representatives.
pub fn base_size_exact(act: &CosetAction, cap: usize, limits: &Limits) -> Result<BaseSize, PermError> {
    let lower = log_lower_bound(&act.g_order, act.degree).max(1);
    let n = KnownGroup {
        gens: act.n_gens.clone(),
        degree: act.degree,
        order: act.n_order.clone(),
    };
    if n.order.is_one() {
        return Ok(BaseSize::Exact { b: 1, witness: vec![0] });
    }
    let mut proven_lower = lower;
    for depth in 1..cap {
        if depth + 1 < lower {
            continue;
        }
        if let Some(mut w) = search(&n, depth, limits)? {
            w.insert(0, 0);
            return Ok(BaseSize::Exact {
                b: depth + 1,
                witness: w,
            });
        }
        proven_lower = proven_lower.max(depth + 2);
    }
    Ok(BaseSize::Bracket {
        lower: proven_lower,
        upper: None,
    })
}

/// Points `p_1..p_depth` with trivial pointwise stabiliser in `h`, if any.
fn search(h: &KnownGroup, depth: usize, limits: &Limits) -> Result<Option<Vec<u32>>, PermError> {
    if h.order.is_one() {
        return Ok(Some(Vec::new()));
    }
    if depth == 0 {
        return Ok(None);
    }
    if let Some(p) = regular_orbit_search(h) {
        return Ok(Some(vec![p]));
    }
    if depth == 1 {
        return Ok(None);
    }
    for (p, len) in h.orbits() {
        if len == 1 {
            continue;
        }
        let hp = h.stabilizer(p, limits)?;
        if let Some(mut rest) = search(&hp, depth - 1, limits)? {
            rest.insert(0, p);
            return Ok(Some(rest));
        }
    }
    Ok(None)
}

/// Multiset `{ |N ∩ N^x| }` over the N-orbits on the cosets other than N itself,
/// as value -> number of orbits.
pub fn intersection_orders(act: &CosetAction) -> BTreeMap<BigUint, usize> {
    let mut out = BTreeMap::new();
    for (p, len) in orbit_lengths(&act.n_gens, act.degree) {
        if p == 0 {
            continue;
        }
        *out.entry(&act.n_order / BigUint::from(len)).or_insert(0) += 1;
    }
    out
}

/// Nontrivial subdegrees (orbit lengths of N away from its own coset).
pub fn subdegrees(act: &CosetAction) -> Vec<usize> {
    let mut v: Vec<usize> = orbit_lengths(&act.n_gens, act.degree)
        .into_iter()
        .filter(|&(p, _)| p != 0)
        .map(|(_, l)| l)
        .collect();
    v.sort_unstable();
    v
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coset::coset_action;
    use crate::group::PermGroup;

    #[test]
    fn log_bound() {
        assert_eq!(log_lower_bound(&BigUint::from(168u32), 8), 3);
        assert_eq!(log_lower_bound(&BigUint::from(64u32), 8), 2);
        assert_eq!(log_lower_bound(&BigUint::from(65u32), 8), 3);
    }

    #[test]
    fn sym_n_natural_action_base_size() {
        // S_5 on cosets of S_4 is the natural action: base size 4
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
        let n = PermGroup::new(
            vec![
                Perm::from_cycles(5, &[&[0, 1, 2, 3]]).unwrap(),
                Perm::from_cycles(5, &[&[0, 1]]).unwrap(),
            ],
            5,
            &lim,
        )
        .unwrap();
        let act = coset_action(&g, &n, &lim).unwrap();
        let b = base_size_exact(&act, 6, &lim).unwrap();
        assert_eq!(b.exact(), Some(4));
        let io = intersection_orders(&act);
        assert_eq!(io.get(&BigUint::from(6u32)), Some(&1));
    }
}
