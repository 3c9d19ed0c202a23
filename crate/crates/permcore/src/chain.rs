//! Stabiliser chains with Schreier-vector transversals.

use num_bigint::BigUint;
use num_traits::One;

use crate::perm::Perm;
use crate::random::ProductReplacement;

const NONE: u32 = u32::MAX;
const ROOT: u32 = u32::MAX - 1;

#[derive(Clone, Debug)]
pub struct Level {
    pub point: u32,
    /// Indices into the chain's strong generators.
    pub gens: Vec<u32>,
    pub orbit: Vec<u32>,
    /// Schreier vector: for an orbit point `y != point`, the strong generator `s`
    /// with `y = x^s` for the BFS parent `x`.
    sv: Vec<u32>,
}

impl Level {
    fn new(point: u32, degree: usize) -> Level {
        let mut sv = vec![NONE; degree];
        sv[point as usize] = ROOT;
        Level {
            point,
            gens: Vec::new(),
            orbit: vec![point],
            sv,
        }
    }

    #[inline]
    pub fn contains(&self, x: u32) -> bool {
        self.sv[x as usize] != NONE
    }
}

/// A base and strong generating set.
#[derive(Clone, Debug)]
pub struct StabChain {
    degree: usize,
    sgens: Vec<Perm>,
    sgens_inv: Vec<Perm>,
    levels: Vec<Level>,
}

impl StabChain {
    pub fn trivial(degree: usize) -> StabChain {
        StabChain {
            degree,
            sgens: Vec::new(),
            sgens_inv: Vec::new(),
            levels: Vec::new(),
        }
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn levels(&self) -> &[Level] {
        &self.levels
    }

    pub fn base(&self) -> Vec<u32> {
        self.levels.iter().map(|l| l.point).collect()
    }

    pub fn strong_generators(&self) -> &[Perm] {
        &self.sgens
    }

    pub fn level_generators(&self, i: usize) -> Vec<Perm> {
        match self.levels.get(i) {
            Some(l) => l.gens.iter().map(|&g| self.sgens[g as usize].clone()).collect(),
            None => Vec::new(),
        }
    }

    pub fn order(&self) -> BigUint {
        let mut o = BigUint::one();
        for l in &self.levels {
            o *= BigUint::from(l.orbit.len());
        }
        o
    }

    /// Order of the stabiliser of the first `i` base points.
    pub fn stabilizer_order(&self, i: usize) -> BigUint {
        let mut o = BigUint::one();
        for l in &self.levels[i.min(self.levels.len())..] {
            o *= BigUint::from(l.orbit.len());
        }
        o
    }

    /// Append base points up front; only valid on an empty chain.
    fn push_base_point(&mut self, p: u32) {
        self.levels.push(Level::new(p, self.degree));
    }

    /// `g * u_x^{-1}`, where `u_x` maps the level's base point to `x`.
    pub fn strip_to_root(&self, level: usize, g: &mut Perm, mut x: u32) {
        let l = &self.levels[level];
        while l.sv[x as usize] != ROOT {
            let s = l.sv[x as usize] as usize;
            g.mul_assign(&self.sgens_inv[s]);
            x = self.sgens_inv[s].image(x);
        }
    }

    /// Transversal element `u_x` with `point^{u_x} = x`.
    pub fn transversal(&self, level: usize, x: u32) -> Perm {
        let mut g = Perm::identity(self.degree);
        self.strip_to_root(level, &mut g, x);
        g.inverse()
    }

    /// Sift `g` from `start`; returns the residue and the level where it stopped
    /// (`levels.len()` if it passed every level).
    pub fn sift_from(&self, mut g: Perm, start: usize) -> (Perm, usize) {
        for i in start..self.levels.len() {
            let x = g.image(self.levels[i].point);
            if !self.levels[i].contains(x) {
                return (g, i);
            }
            self.strip_to_root(i, &mut g, x);
        }
        let n = self.levels.len();
        (g, n)
    }

    pub fn contains(&self, g: &Perm) -> bool {
        if g.degree() != self.degree {
            return false;
        }
        let (r, _) = self.sift_from(g.clone(), 0);
        r.is_identity()
    }

    fn rebuild_orbit(&mut self, i: usize) {
        let sgens = &self.sgens;
        let l = &mut self.levels[i];
        for &x in &l.orbit {
            l.sv[x as usize] = NONE;
        }
        l.sv[l.point as usize] = ROOT;
        l.orbit.clear();
        l.orbit.push(l.point);
        let mut k = 0;
        while k < l.orbit.len() {
            let x = l.orbit[k];
            for &s in &l.gens {
                let y = sgens[s as usize].image(x);
                if l.sv[y as usize] == NONE {
                    l.sv[y as usize] = s;
                    l.orbit.push(y);
                }
            }
            k += 1;
        }
    }

    /// Add a non-identity strong generator fixing the first `upto` base points
    /// to levels `from..=upto`, extending the base if it fixes all of them.
    fn add_generator(&mut self, h: Perm, from: usize, upto: usize) -> usize {
        let upto = if upto >= self.levels.len() {
            let p = h.first_moved().expect("identity added as strong generator");
            self.push_base_point(p);
            self.levels.len() - 1
        } else {
            upto
        };
        let id = self.sgens.len() as u32;
        self.sgens_inv.push(h.inverse());
        self.sgens.push(h);
        for i in from..=upto {
            self.levels[i].gens.push(id);
            self.rebuild_orbit(i);
        }
        upto
    }

    /// Sift `g` and, if it is not already a member, add its residue. Returns
    /// whether the chain changed.
    fn absorb(&mut self, g: Perm) -> bool {
        let (h, j) = self.sift_from(g, 0);
        if h.is_identity() {
            return false;
        }
        self.add_generator(h, 0, j);
        true
    }

    /// Deterministic completion: every Schreier generator must sift to the
    /// identity through the levels below it.
    fn complete(&mut self) {
        let mut i = self.levels.len() as isize - 1;
        'level: while i >= 0 {
            let iu = i as usize;
            let orbit = self.levels[iu].orbit.clone();
            let gens = self.levels[iu].gens.clone();
            for &x in &orbit {
                let ux = self.transversal(iu, x);
                for &s in &gens {
                    let y = self.sgens[s as usize].image(x);
                    let mut g = ux.mul(&self.sgens[s as usize]);
                    self.strip_to_root(iu, &mut g, y);
                    if g.is_identity() {
                        continue;
                    }
                    let (h, j) = self.sift_from(g, iu + 1);
                    if !h.is_identity() {
                        let top = self.add_generator(h, iu + 1, j);
                        i = top as isize;
                        continue 'level;
                    }
                }
            }
            i -= 1;
        }
    }

    /// Schreier-Sims with a random phase and a deterministic verification.
    pub fn build(gens: &[Perm], degree: usize, base_prefix: &[u32], seed: u64) -> StabChain {
        let mut c = StabChain::new_with_prefix(gens, degree, base_prefix);
        if c.sgens.is_empty() {
            return c;
        }
        let mut pr = ProductReplacement::new(gens, degree, seed);
        let mut streak = 0;
        while streak < 24 {
            if c.absorb(pr.next_element()) {
                streak = 0;
            } else {
                streak += 1;
            }
        }
        c.complete();
        c
    }

    /// Random Schreier-Sims, stopping once `order` is reached. Exact only when
    /// the caller knows `order` is the order of the generated group.
    pub fn build_known_order(
        gens: &[Perm],
        degree: usize,
        base_prefix: &[u32],
        order: &BigUint,
        seed: u64,
        max_sifts: usize,
    ) -> Option<StabChain> {
        let mut c = StabChain::new_with_prefix(gens, degree, base_prefix);
        if &c.order() == order {
            return Some(c);
        }
        let mut pr = ProductReplacement::new(gens, degree, seed);
        for _ in 0..max_sifts {
            c.absorb(pr.next_element());
            let o = c.order();
            if &o == order {
                return Some(c);
            }
            if &o > order {
                return None;
            }
        }
        None
    }

    fn new_with_prefix(gens: &[Perm], degree: usize, base_prefix: &[u32]) -> StabChain {
        let mut c = StabChain::trivial(degree);
        for &p in base_prefix {
            c.push_base_point(p);
        }
        for g in gens {
            assert_eq!(g.degree(), degree, "generator degree mismatch");
            if !g.is_identity() {
                c.absorb(g.clone());
            }
        }
        c
    }
}
