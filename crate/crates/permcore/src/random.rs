//! Product replacement random elements.

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::perm::Perm;

pub const SLOTS: usize = 10;
pub const BURN_IN: usize = 60;

/// The product replacement walk with an accumulator ("rattle" variant).
///
/// Seeded, so a given generator list and seed always yields the same stream.
pub struct ProductReplacement {
    slots: Vec<Perm>,
    acc: Perm,
    rng: ChaCha8Rng,
}

impl ProductReplacement {
    pub fn new(gens: &[Perm], degree: usize, seed: u64) -> ProductReplacement {
        let mut slots = Vec::with_capacity(SLOTS);
        if gens.is_empty() {
            slots.push(Perm::identity(degree));
        }
        while slots.len() < SLOTS.max(gens.len()) {
            let g = if gens.is_empty() {
                Perm::identity(degree)
            } else {
                gens[slots.len() % gens.len()].clone()
            };
            slots.push(g);
        }
        let mut pr = ProductReplacement {
            slots,
            acc: Perm::identity(degree),
            rng: ChaCha8Rng::seed_from_u64(seed),
        };
        for _ in 0..BURN_IN {
            pr.step();
        }
        pr
    }

    fn step(&mut self) {
        let n = self.slots.len();
        if n < 2 {
            return;
        }
        let i = self.rng.gen_range(0..n);
        let mut j = self.rng.gen_range(0..n - 1);
        if j >= i {
            j += 1;
        }
        let right = self.rng.gen_bool(0.5);
        let inv = self.rng.gen_bool(0.5);
        let other = if inv {
            self.slots[j].inverse()
        } else {
            self.slots[j].clone()
        };
        if right {
            self.slots[i].mul_assign(&other);
        } else {
            self.slots[i] = other.mul(&self.slots[i]);
        }
        self.acc.mul_assign(&self.slots[i]);
    }

    pub fn next_element(&mut self) -> Perm {
        self.step();
        self.acc.clone()
    }

    pub fn rng(&mut self) -> &mut ChaCha8Rng {
        &mut self.rng
    }
}

/// Derive an independent stream seed from a master seed and a stream index.
pub fn derive_seed(master: u64, stream: u64) -> u64 {
    // splitmix64 finaliser
    let mut z = master ^ stream.wrapping_add(1).wrapping_mul(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn same_seed_same_stream() {
        let a = Perm::from_cycles(5, &[&[0, 1, 2, 3, 4]]).unwrap();
        let b = Perm::from_cycles(5, &[&[0, 1]]).unwrap();
        let mut p1 = ProductReplacement::new(&[a.clone(), b.clone()], 5, 7);
        let mut p2 = ProductReplacement::new(&[a, b], 5, 7);
        for _ in 0..20 {
            assert_eq!(p1.next_element(), p2.next_element());
        }
    }

    #[test]
    fn trivial_group_gives_identity() {
        let mut p = ProductReplacement::new(&[], 4, 1);
        assert!(p.next_element().is_identity());
    }
}
