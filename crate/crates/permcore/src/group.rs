use num_bigint::BigUint;

use crate::chain::StabChain;
use crate::perm::Perm;
use crate::random::ProductReplacement;
use crate::{Limits, PermError};

/// A permutation group together with a base and strong generating set.
#[derive(Clone, Debug)]
pub struct PermGroup {
    degree: usize,
    gens: Vec<Perm>,
    chain: StabChain,
}

impl PermGroup {
    /// Exact BSGS by Schreier-Sims.
    pub fn new(gens: Vec<Perm>, degree: usize, limits: &Limits) -> Result<PermGroup, PermError> {
        PermGroup::with_base_prefix(gens, degree, &[], limits)
    }

    pub fn with_base_prefix(
        gens: Vec<Perm>,
        degree: usize,
        base_prefix: &[u32],
        limits: &Limits,
    ) -> Result<PermGroup, PermError> {
        check_degree(&gens, degree, limits)?;
        let chain = StabChain::build(&gens, degree, base_prefix, limits.seed);
        Ok(PermGroup { degree, gens, chain })
    }

    /// BSGS by random Schreier-Sims, for a group whose order is known in advance
    /// (for instance the faithful image of a group already measured elsewhere).
    pub fn with_known_order(
        gens: Vec<Perm>,
        degree: usize,
        base_prefix: &[u32],
        order: &BigUint,
        limits: &Limits,
    ) -> Result<PermGroup, PermError> {
        check_degree(&gens, degree, limits)?;
        let chain =
            StabChain::build_known_order(&gens, degree, base_prefix, order, limits.seed, 100_000).ok_or_else(|| {
                PermError::OrderNotReached {
                    expected: order.clone(),
                }
            })?;
        Ok(PermGroup { degree, gens, chain })
    }

    pub fn trivial(degree: usize) -> PermGroup {
        PermGroup {
            degree,
            gens: Vec::new(),
            chain: StabChain::trivial(degree),
        }
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn generators(&self) -> &[Perm] {
        &self.gens
    }

    pub fn chain(&self) -> &StabChain {
        &self.chain
    }

    pub fn base(&self) -> Vec<u32> {
        self.chain.base()
    }

    pub fn strong_generators(&self) -> &[Perm] {
        self.chain.strong_generators()
    }

    pub fn order(&self) -> BigUint {
        self.chain.order()
    }

    pub fn contains(&self, g: &Perm) -> bool {
        self.chain.contains(g)
    }

    pub fn is_subgroup_of(&self, other: &PermGroup) -> bool {
        self.degree == other.degree && self.gens.iter().all(|g| other.contains(g))
    }

    pub fn random_source(&self, seed: u64) -> ProductReplacement {
        ProductReplacement::new(&self.gens, self.degree, seed)
    }

    /// One random element from a fresh product replacement stream.
    pub fn random_element(&self, seed: u64) -> Perm {
        self.random_source(seed).next_element()
    }

    pub fn orbit(&self, point: u32) -> Vec<u32> {
        orbit(&self.gens, self.degree, point)
    }

    pub fn orbits(&self) -> Vec<Vec<u32>> {
        orbits(&self.gens, self.degree)
    }

    pub fn is_transitive(&self) -> bool {
        self.degree <= 1 || self.orbit(0).len() == self.degree
    }

    /// Point stabiliser, using the known group order for a random build.
    pub fn stabilizer(&self, point: u32, limits: &Limits) -> Result<PermGroup, PermError> {
        let with = PermGroup::with_known_order(
            self.strong_generators().to_vec(),
            self.degree,
            &[point],
            &self.order(),
            limits,
        )?;
        let gens = with.chain.level_generators(1);
        let order = with.chain.stabilizer_order(1);
        let chain = StabChain::build_known_order(&gens, self.degree, &[], &order, limits.seed, 100_000)
            .ok_or(PermError::OrderNotReached { expected: order })?;
        Ok(PermGroup {
            degree: self.degree,
            gens,
            chain,
        })
    }
}

fn check_degree(gens: &[Perm], degree: usize, limits: &Limits) -> Result<(), PermError> {
    if degree > limits.max_degree {
        return Err(PermError::DegreeOverflow {
            degree,
            max: limits.max_degree,
        });
    }
    if gens.iter().any(|g| g.degree() != degree) {
        return Err(PermError::DegreeMismatch);
    }
    Ok(())
}

pub fn orbit(gens: &[Perm], degree: usize, point: u32) -> Vec<u32> {
    let mut seen = vec![false; degree];
    seen[point as usize] = true;
    let mut out = vec![point];
    let mut k = 0;
    while k < out.len() {
        let x = out[k];
        for g in gens {
            let y = g.image(x);
            if !seen[y as usize] {
                seen[y as usize] = true;
                out.push(y);
            }
        }
        k += 1;
    }
    out
}

/// All orbits, each listed from its smallest point, ordered by that point.
pub fn orbits(gens: &[Perm], degree: usize) -> Vec<Vec<u32>> {
    let mut seen = vec![false; degree];
    let mut out = Vec::new();
    for s in 0..degree {
        if seen[s] {
            continue;
        }
        seen[s] = true;
        let mut orb = vec![s as u32];
        let mut k = 0;
        while k < orb.len() {
            let x = orb[k];
            for g in gens {
                let y = g.image(x);
                if !seen[y as usize] {
                    seen[y as usize] = true;
                    orb.push(y);
                }
            }
            k += 1;
        }
        out.push(orb);
    }
    out
}

/// Orbit representatives (smallest points) and orbit lengths.
pub fn orbit_lengths(gens: &[Perm], degree: usize) -> Vec<(u32, usize)> {
    // union-find is cheaper than BFS when there are many short orbits
    let mut parent: Vec<u32> = (0..degree as u32).collect();
    fn find(p: &mut [u32], mut x: u32) -> u32 {
        while p[x as usize] != x {
            let nx = p[p[x as usize] as usize];
            p[x as usize] = nx;
            x = nx;
        }
        x
    }
    for g in gens {
        for x in 0..degree as u32 {
            let a = find(&mut parent, x);
            let b = find(&mut parent, g.image(x));
            if a != b {
                let (lo, hi) = if a < b { (a, b) } else { (b, a) };
                parent[hi as usize] = lo;
            }
        }
    }
    let mut len = vec![0usize; degree];
    for x in 0..degree as u32 {
        let r = find(&mut parent, x);
        len[r as usize] += 1;
    }
    (0..degree as u32)
        .filter(|&x| parent[x as usize] == x)
        .map(|x| (x, len[x as usize]))
        .collect()
}
