//! Right coset spaces `G/N` with canonical coset labels.
//!
//! A coset `Ng` is labelled by the base images of its minimal-image element:
//! walking down a stabiliser chain of `N` built on a base of `G`, at each level
//! we pick the transversal element that sends the current base point to the
//! smallest possible image. The resulting base image tuple identifies the
//! coset without storing any elements of `G`.

use std::collections::{HashMap, VecDeque};

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::ToPrimitive;

use crate::group::PermGroup;
use crate::perm::Perm;
use crate::{Limits, PermError};

pub struct CosetKeyer {
    g_base: Vec<u32>,
    /// Per level of N's chain (on G's base): orbit points and explicit
    /// transversal elements in matching order.
    levels: Vec<(Vec<u32>, Vec<Perm>)>,
    n_gens: Vec<Perm>,
}

impl CosetKeyer {
    pub fn new(g: &PermGroup, n: &PermGroup, limits: &Limits) -> Result<CosetKeyer, PermError> {
        if !n.is_subgroup_of(g) {
            return Err(PermError::NotSubgroup);
        }
        let g_base = g.base();
        let nb = PermGroup::with_known_order(n.strong_generators().to_vec(), n.degree(), &g_base, &n.order(), limits)?;
        let chain = nb.chain();
        let mut levels = Vec::new();
        for (i, l) in chain.levels().iter().enumerate().take(g_base.len()) {
            let trans = l.orbit.iter().map(|&x| chain.transversal(i, x)).collect();
            levels.push((l.orbit.clone(), trans));
        }
        // N's chain may not extend past G's base, since G's base is a base for N
        debug_assert_eq!(chain.base().len(), g_base.len());
        Ok(CosetKeyer {
            g_base,
            levels,
            n_gens: n.generators().to_vec(),
        })
    }

    pub fn n_generators(&self) -> &[Perm] {
        &self.n_gens
    }

    /// Label of the coset `N h`, where `h` is given by its image function.
    pub fn key_with<F: Fn(u32) -> u32>(&self, h: F) -> Vec<u32> {
        let mut stack: Vec<&Perm> = Vec::with_capacity(self.levels.len());
        let eval = |stack: &Vec<&Perm>, x: u32| -> u32 {
            let mut y = x;
            for u in stack.iter().rev() {
                y = u.image(y);
            }
            h(y)
        };
        for (orbit, trans) in &self.levels {
            if orbit.len() <= 1 {
                continue;
            }
            let mut best = u32::MAX;
            let mut best_i = 0;
            for (i, &d) in orbit.iter().enumerate() {
                let v = eval(&stack, d);
                if v < best {
                    best = v;
                    best_i = i;
                }
            }
            stack.push(&trans[best_i]);
        }
        self.g_base.iter().map(|&b| eval(&stack, b)).collect()
    }

    pub fn key(&self, h: &Perm) -> Vec<u32> {
        self.key_with(|x| h.image(x))
    }
}

/// The action of G (and of N) on the right cosets of N.
pub struct CosetAction {
    pub degree: usize,
    /// Images of G's generators on the cosets; coset 0 is N itself.
    pub g_gens: Vec<Perm>,
    /// Images of N's generators on the cosets.
    pub n_gens: Vec<Perm>,
    pub n_order: BigUint,
    pub g_order: BigUint,
}

pub fn index_of(g: &PermGroup, n: &PermGroup) -> Result<BigUint, PermError> {
    let (q, r) = g.order().div_rem(&n.order());
    if r != BigUint::from(0u32) {
        return Err(PermError::NotSubgroup);
    }
    Ok(q)
}

/// Enumerate `G/N` by breadth-first search over coset labels.
pub fn coset_action(g: &PermGroup, n: &PermGroup, limits: &Limits) -> Result<CosetAction, PermError> {
    let index = index_of(g, n)?;
    let idx = index.to_u64().unwrap_or(u64::MAX);
    if idx > limits.max_index {
        return Err(PermError::IndexLimit {
            index,
            max: limits.max_index,
        });
    }
    let keyer = CosetKeyer::new(g, n, limits)?;
    let idx = idx as usize;
    let gens: Vec<&Perm> = g.generators().iter().chain(n.generators().iter()).collect();
    let mut table: Vec<Vec<u32>> = vec![vec![u32::MAX; idx]; gens.len()];
    let mut labels: HashMap<Vec<u32>, u32> = HashMap::with_capacity(idx);
    let id = Perm::identity(g.degree());
    labels.insert(keyer.key(&id), 0);
    let mut queue: VecDeque<(u32, Perm)> = VecDeque::new();
    queue.push_back((0, id));
    let mut count = 1usize;
    while let Some((c, rep)) = queue.pop_front() {
        for (j, s) in gens.iter().enumerate() {
            let key = keyer.key_with(|x| s.image(rep.image(x)));
            let target = match labels.get(&key) {
                Some(&t) => t,
                None => {
                    if count >= idx {
                        return Err(PermError::Inconsistent("more cosets than the index"));
                    }
                    let t = count as u32;
                    labels.insert(key, t);
                    count += 1;
                    queue.push_back((t, rep.mul(s)));
                    t
                }
            };
            table[j][c as usize] = target;
        }
    }
    if count != idx {
        return Err(PermError::Inconsistent("coset enumeration did not close"));
    }
    let mut perms = Vec::with_capacity(gens.len());
    for row in table {
        perms.push(Perm::from_images(row).map_err(|_| PermError::Inconsistent("coset images"))?);
    }
    let n_gens = perms.split_off(g.generators().len());
    Ok(CosetAction {
        degree: idx,
        g_gens: perms,
        n_gens,
        n_order: n.order(),
        g_order: g.order(),
    })
}

/// Length of the N-orbit of the coset `Nx`, computed lazily without building
/// the whole coset space. `|N ∩ N^x| = |N| / length`.
pub fn coset_orbit_length(keyer: &CosetKeyer, x: &Perm, cap: usize) -> Option<usize> {
    let mut seen: HashMap<Vec<u32>, ()> = HashMap::new();
    seen.insert(keyer.key(x), ());
    let mut queue = VecDeque::new();
    queue.push_back(x.clone());
    while let Some(rep) = queue.pop_front() {
        for s in keyer.n_generators() {
            let key = keyer.key_with(|p| s.image(rep.image(p)));
            if !seen.contains_key(&key) {
                seen.insert(key, ());
                if seen.len() > cap {
                    return None;
                }
                queue.push_back(rep.mul(s));
            }
        }
    }
    Some(seen.len())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sym(n: usize) -> Vec<Perm> {
        let cyc: Vec<u32> = (0..n as u32).collect();
        vec![
            Perm::from_cycles(n, &[&cyc]).unwrap(),
            Perm::from_cycles(n, &[&[0, 1]]).unwrap(),
        ]
    }

    #[test]
    fn s5_on_cosets_of_s4_is_natural_degree() {
        let lim = Limits::default();
        let g = PermGroup::new(sym(5), 5, &lim).unwrap();
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
        assert_eq!(act.degree, 5);
        let img = PermGroup::new(act.g_gens.clone(), 5, &lim).unwrap();
        assert_eq!(img.order(), BigUint::from(120u32));
        // N fixes its own coset
        assert!(act.n_gens.iter().all(|p| p.image(0) == 0));
    }

    #[test]
    fn whole_group_gives_one_coset() {
        let lim = Limits::default();
        let g = PermGroup::new(sym(4), 4, &lim).unwrap();
        let act = coset_action(&g, &g, &lim).unwrap();
        assert_eq!(act.degree, 1);
    }

    #[test]
    fn key_is_constant_on_cosets() {
        let lim = Limits::default();
        let g = PermGroup::new(sym(5), 5, &lim).unwrap();
        let n = PermGroup::new(
            vec![
                Perm::from_cycles(5, &[&[0, 1, 2]]).unwrap(),
                Perm::from_cycles(5, &[&[3, 4]]).unwrap(),
            ],
            5,
            &lim,
        )
        .unwrap();
        let keyer = CosetKeyer::new(&g, &n, &lim).unwrap();
        let mut pr = g.random_source(11);
        for _ in 0..50 {
            let x = pr.next_element();
            for s in n.generators() {
                assert_eq!(keyer.key(&x), keyer.key(&s.mul(&x)));
            }
        }
    }
}
