//! Explicit matrix models of classical groups and their maximal-torus
//! normalisers, and their permutation actions on points.
//!
//! For a torus class the natural module is written as a direct sum of blocks,
//! each an extension field `K` (or a pair `L ⊕ L`) viewed as a vector space
//! over the base field, carrying a form built from field traces. The torus
//! `T̂` acts by multiplications, and `R` is realised by field automorphisms,
//! a few twisted swaps inside blocks, and permutations of equal blocks. The
//! group `G` is then generated, with respect to the same form, by
//! transvections (or products of two reflections in the orthogonal case), so
//! `N ≤ G` holds by construction.

use std::collections::HashMap;

use num_bigint::BigUint;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use permcore::{Limits, Perm, PermGroup};

use crate::field::{Extension, Gf, Mat};
use crate::taxonomy::{torus_data, Family, GroupSpec, Partition, SplitTag, TorusClass};
use crate::{LieError, Result};

/// Largest number of vectors enumerated when listing points.
const MAX_VECTORS: u64 = 1 << 24;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FormKind {
    /// No form: SL.
    Linear,
    /// Hermitian form over `F_{q^2}`, with `h(x, y) = x H σ(y)^T`.
    Unitary,
    /// Alternating form `B(x, y) = x J y^T`.
    Symplectic,
    /// Quadratic form in characteristic 2: `Q(b_i)` on the basis together
    /// with its polarisation `J`.
    Quadratic,
}

/// Matrices over a finite field with an optional preserved form.
#[derive(Clone, Debug)]
pub struct MatGroup {
    pub field: Gf,
    pub dim: usize,
    pub kind: FormKind,
    /// Gram matrix of the bilinear or hermitian form (zero for `Linear`).
    pub gram: Mat,
    /// `Q(b_i)` for `Quadratic`, empty otherwise.
    pub quad: Vec<u32>,
    /// `|F_q|`; the base field has `q^2` elements in the unitary case.
    pub q: u64,
    pub gens: Vec<Mat>,
}

impl MatGroup {
    fn sigma(&self) -> u64 {
        if self.kind == FormKind::Unitary {
            self.q
        } else {
            1
        }
    }

    /// `B(x, y)` or `h(x, y)`.
    pub fn form(&self, x: &[u32], y: &[u32]) -> u32 {
        let k = &self.field;
        let s = self.sigma();
        let mut acc = 0;
        for i in 0..self.dim {
            if x[i] == 0 {
                continue;
            }
            for j in 0..self.dim {
                let g = self.gram.get(i, j);
                if g != 0 && y[j] != 0 {
                    acc = k.add(acc, k.mul(k.mul(x[i], g), k.pow(y[j], s)));
                }
            }
        }
        acc
    }

    /// `Q(x)` in the quadratic case.
    pub fn quadratic(&self, x: &[u32]) -> u32 {
        let k = &self.field;
        let mut acc = 0;
        for i in 0..self.dim {
            if x[i] == 0 {
                continue;
            }
            acc = k.add(acc, k.mul(self.quad[i], k.mul(x[i], x[i])));
            for j in i + 1..self.dim {
                acc = k.add(acc, k.mul(self.gram.get(i, j), k.mul(x[i], x[j])));
            }
        }
        acc
    }

    /// Whether `v` spans a point of the permutation domain (isotropic or
    /// singular where a form is present).
    pub fn is_point(&self, v: &[u32]) -> bool {
        match self.kind {
            FormKind::Linear | FormKind::Symplectic => true,
            FormKind::Unitary => self.form(v, v) == 0,
            FormKind::Quadratic => self.quadratic(v) == 0,
        }
    }

    pub fn preserves_form(&self, g: &Mat) -> bool {
        let k = &self.field;
        match self.kind {
            FormKind::Linear => g.det(k) != 0,
            FormKind::Symplectic => g.mul(k, &self.gram).mul(k, &g.transpose()) == self.gram,
            FormKind::Unitary => g.mul(k, &self.gram).mul(k, &g.frobenius(k, self.q).transpose()) == self.gram,
            FormKind::Quadratic => {
                if g.mul(k, &self.gram).mul(k, &g.transpose()) != self.gram {
                    return false;
                }
                (0..self.dim).all(|i| self.quadratic(g.row(i)) == self.quad[i])
            }
        }
    }
}

/// A block of the torus decomposition.
struct Block {
    /// `(μ-part, ℓ)`; blocks with equal keys may be permuted.
    key: (bool, u32),
    gram: Mat,
    quad: Vec<u32>,
    maps: Vec<Mat>,
}

/// Matrix of `(x, x') -> f(x, x')` on `L ⊕ L`.
fn pair_matrix(ext: &Extension, f: impl Fn(u32, u32) -> (u32, u32)) -> Mat {
    let d = ext.deg as usize;
    let mut m = Mat::zero(2 * d);
    for i in 0..2 * d {
        let b = ext.basis((i % d) as u32);
        let (y, y2) = if i < d { f(b, 0) } else { f(0, b) };
        m.row_mut(i)[..d].copy_from_slice(ext.coords(y));
        m.row_mut(i)[d..].copy_from_slice(ext.coords(y2));
    }
    m
}

fn pair_basis(ext: &Extension, i: usize) -> (u32, u32) {
    let d = ext.deg as usize;
    let b = ext.basis((i % d) as u32);
    if i < d {
        (b, 0)
    } else {
        (0, b)
    }
}

fn gram_of(n: usize, form: impl Fn(usize, usize) -> u32) -> Mat {
    let mut g = Mat::zero(n);
    for i in 0..n {
        for j in 0..n {
            g.set(i, j, form(i, j));
        }
    }
    g
}

fn push_map(maps: &mut Vec<Mat>, m: Mat) {
    if !m.is_identity() {
        maps.push(m);
    }
}

/// Multiplication by `a` on `K`, as a matrix.
fn mult(ext: &Extension, a: u32) -> Mat {
    ext.matrix_of(|x| ext.big.mul(a, x))
}

fn base_field(spec: &GroupSpec) -> Result<Gf> {
    let q = spec.q();
    match spec.family {
        Family::UnitaryA2 => Gf::of_order(q * q),
        _ => Gf::of_order(q),
    }
}

fn kind_of(spec: &GroupSpec) -> Result<FormKind> {
    match spec.family {
        Family::LinearA => Ok(FormKind::Linear),
        Family::UnitaryA2 => Ok(FormKind::Unitary),
        Family::SymplecticC => Ok(FormKind::Symplectic),
        Family::OrthogonalPlusD | Family::OrthogonalMinus2D if spec.p == 2 => Ok(FormKind::Quadratic),
        _ => Err(LieError::Unsupported(format!(
            "matrix construction for {spec} (orthogonal groups are built only in characteristic 2)"
        ))),
    }
}

fn linear_block(f: &Gf, ell: u32) -> Result<Block> {
    let ext = Extension::new(f.clone(), ell)?;
    let mut maps = Vec::new();
    push_map(&mut maps, mult(&ext, ext.big.zeta()));
    push_map(&mut maps, ext.matrix_of(|x| ext.frob(x, 1)));
    Ok(Block {
        key: (false, ell),
        gram: Mat::zero(ell as usize),
        quad: Vec::new(),
        maps,
    })
}

fn unitary_block(f: &Gf, q: u64, ell: u32) -> Result<Block> {
    let mut maps = Vec::new();
    if ell % 2 == 1 {
        // K = F_{q^{2ℓ}}, h(x, y) = Tr(x y^{q^ℓ}), torus of order q^ℓ + 1
        let ext = Extension::new(f.clone(), ell)?;
        let k = &ext.big;
        let ql = q.pow(ell);
        let gram = gram_of(ell as usize, |i, j| {
            ext.trace(k.mul(ext.basis(i as u32), k.pow(ext.basis(j as u32), ql)))
        });
        push_map(&mut maps, mult(&ext, k.zeta_pow((ql - 1) as i64)));
        push_map(&mut maps, ext.matrix_of(|x| ext.frob(x, 1)));
        return Ok(Block {
            key: (false, ell),
            gram,
            quad: Vec::new(),
            maps,
        });
    }
    // L = F_{q^{2k}}, block L ⊕ L with h = Tr(x y'^q) + Tr(x'^{q^2} y^q)
    let kk = ell / 2;
    let ext = Extension::new(f.clone(), kk)?;
    let l = &ext.big;
    let h = |a: (u32, u32), b: (u32, u32)| {
        let t1 = ext.trace(l.mul(a.0, l.pow(b.1, q)));
        let t2 = ext.trace(l.mul(l.pow(a.1, q * q), l.pow(b.0, q)));
        ext.small.add(t1, t2)
    };
    let gram = gram_of(ell as usize, |i, j| h(pair_basis(&ext, i), pair_basis(&ext, j)));
    let a = l.zeta();
    let a2 = l.pow(l.inv(a), q.pow(ell - 1));
    push_map(&mut maps, pair_matrix(&ext, |x, x2| (l.mul(a, x), l.mul(a2, x2))));
    push_map(&mut maps, pair_matrix(&ext, |x, x2| (l.pow(x2, q * q), x)));
    Ok(Block {
        key: (false, ell),
        gram,
        quad: Vec::new(),
        maps,
    })
}

/// Hyperbolic `L ⊕ L` block for a part of `λ` (symplectic or orthogonal).
fn hyperbolic_block(f: &Gf, ell: u32, quadratic: bool) -> Result<Block> {
    let ext = Extension::new(f.clone(), ell)?;
    let l = &ext.big;
    let k = &ext.small;
    let n = 2 * ell as usize;
    let gram = gram_of(n, |i, j| {
        let (x, x2) = pair_basis(&ext, i);
        let (y, y2) = pair_basis(&ext, j);
        let a = ext.trace(l.mul(x, y2));
        let b = ext.trace(l.mul(x2, y));
        if quadratic {
            k.add(a, b)
        } else {
            k.sub(a, b)
        }
    });
    let quad = if quadratic {
        (0..n)
            .map(|i| {
                let (x, x2) = pair_basis(&ext, i);
                ext.trace(l.mul(x, x2))
            })
            .collect()
    } else {
        Vec::new()
    };
    let z = l.zeta();
    let zi = l.inv(z);
    let mut maps = Vec::new();
    push_map(&mut maps, pair_matrix(&ext, |x, x2| (l.mul(z, x), l.mul(zi, x2))));
    push_map(&mut maps, pair_matrix(&ext, |x, x2| (ext.frob(x, 1), ext.frob(x2, 1))));
    if quadratic {
        push_map(&mut maps, pair_matrix(&ext, |x, x2| (x2, x)));
    } else {
        push_map(&mut maps, pair_matrix(&ext, |x, x2| (x2, l.neg(x))));
    }
    Ok(Block {
        key: (false, ell),
        gram,
        quad,
        maps,
    })
}

/// Anisotropic `K = F_{q^{2ℓ}}` block for a part of `μ`, with torus of order
/// `q^ℓ + 1`.
fn elliptic_block(f: &Gf, q: u64, ell: u32, quadratic: bool) -> Result<Block> {
    let ext = Extension::new(f.clone(), 2 * ell)?;
    let k = &ext.big;
    let ql = q.pow(ell);
    let n = 2 * ell as usize;
    // δ with δ^{q^ℓ} = -δ (q odd), δ = 1 (q even)
    let delta = if q % 2 == 0 {
        1
    } else {
        k.zeta_pow(((ql + 1) / 2) as i64)
    };
    let gram = gram_of(n, |i, j| {
        let x = ext.basis(i as u32);
        let y = ext.basis(j as u32);
        ext.trace(k.mul(delta, k.mul(x, k.pow(y, ql))))
    });
    let quad = if quadratic {
        (0..n)
            .map(|i| {
                let x = ext.basis(i as u32);
                let nx = k.pow(x, ql + 1);
                let mut t = 0;
                for e in 0..ell {
                    t = k.add(t, k.pow(nx, q.pow(e)));
                }
                ext.unembed(t).expect("relative trace lies in the base field")
            })
            .collect()
    } else {
        Vec::new()
    };
    let mut maps = Vec::new();
    push_map(&mut maps, mult(&ext, k.zeta_pow((ql - 1) as i64)));
    if quadratic || q % 2 == 0 {
        push_map(&mut maps, ext.matrix_of(|x| ext.frob(x, 1)));
    } else {
        // x -> c x^q with c^{1 + q^ℓ} = δ^{q-1}
        let target = k.pow(delta, q - 1);
        let c = (1..k.size())
            .find(|&c| k.pow(c, ql + 1) == target)
            .ok_or_else(|| LieError::Construction("no twisting scalar for the elliptic block".into()))?;
        push_map(&mut maps, ext.matrix_of(|x| k.mul(c, ext.frob(x, 1))));
    }
    Ok(Block {
        key: (true, ell),
        gram,
        quad,
        maps,
    })
}

/// The block decomposition for `(spec, cls)`.
fn blocks(spec: &GroupSpec, cls: &TorusClass, f: &Gf) -> Result<Vec<Block>> {
    let q = spec.q();
    let kind = kind_of(spec)?;
    let mut out = Vec::new();
    for &l in cls.lambda.parts() {
        out.push(match kind {
            FormKind::Linear => linear_block(f, l)?,
            FormKind::Unitary => unitary_block(f, q, l)?,
            FormKind::Symplectic => hyperbolic_block(f, l, false)?,
            FormKind::Quadratic => hyperbolic_block(f, l, true)?,
        });
    }
    for &l in cls.mu.parts() {
        out.push(elliptic_block(f, q, l, kind == FormKind::Quadratic)?);
    }
    Ok(out)
}

fn embed_block(n: usize, off: usize, m: &Mat) -> Mat {
    let mut g = Mat::identity(n);
    for i in 0..m.n {
        for j in 0..m.n {
            g.set(off + i, off + j, m.get(i, j));
        }
    }
    g
}

fn swap_blocks(n: usize, a: usize, b: usize, len: usize) -> Mat {
    let mut g = Mat::identity(n);
    for r in 0..len {
        g.set(a + r, a + r, 0);
        g.set(b + r, b + r, 0);
        g.set(a + r, b + r, 1);
        g.set(b + r, a + r, 1);
    }
    g
}

/// The form model for `(spec, cls)` together with generators of `T̂.R`
/// (in GLᵋ, Sp or O, before intersecting with `G`).
pub fn build_normaliser(spec: &GroupSpec, cls: &TorusClass) -> Result<MatGroup> {
    torus_data(spec, cls)?;
    let f = base_field(spec)?;
    let kind = kind_of(spec)?;
    let bl = blocks(spec, cls, &f)?;
    let dim: usize = bl.iter().map(|b| b.gram.n).sum();
    let gram = Mat::direct_sum(&bl.iter().map(|b| b.gram.clone()).collect::<Vec<_>>());
    let quad: Vec<u32> = bl.iter().flat_map(|b| b.quad.iter().copied()).collect();
    let mut gens = Vec::new();
    let mut off = 0;
    for (i, b) in bl.iter().enumerate() {
        for m in &b.maps {
            gens.push(embed_block(dim, off, m));
        }
        if i + 1 < bl.len() && bl[i + 1].key == b.key {
            gens.push(swap_blocks(dim, off, off + b.gram.n, b.gram.n));
        }
        off += b.gram.n;
    }
    let mut m = MatGroup {
        field: f,
        dim,
        kind,
        gram,
        quad,
        q: spec.q(),
        gens,
    };
    if cls.split == SplitTag::Minus {
        let r = some_reflection(&m)?;
        m.gens = m.gens.iter().map(|g| r.mul(&m.field, g).mul(&m.field, &r)).collect();
    }
    for g in &m.gens {
        if !m.preserves_form(g) {
            return Err(LieError::Construction(format!(
                "normaliser generator does not preserve the form for {spec}"
            )));
        }
    }
    Ok(m)
}

/// The reflection `x -> x + B(x, u) Q(u)^{-1} u`.
fn reflection(m: &MatGroup, u: &[u32]) -> Mat {
    let k = &m.field;
    let qu = m.quadratic(u);
    let c = k.inv(qu);
    let ju: Vec<u32> = (0..m.dim)
        .map(|i| (0..m.dim).fold(0, |a, j| k.add(a, k.mul(m.gram.get(i, j), u[j]))))
        .collect();
    rank_one_update(k, m.dim, &ju, u, c)
}

/// `I + c a^T b`.
fn rank_one_update(k: &Gf, n: usize, a: &[u32], b: &[u32], c: u32) -> Mat {
    let mut g = Mat::identity(n);
    for i in 0..n {
        if a[i] == 0 {
            continue;
        }
        let ai = k.mul(c, a[i]);
        for j in 0..n {
            let v = k.add(g.get(i, j), k.mul(ai, b[j]));
            g.set(i, j, v);
        }
    }
    g
}

fn some_reflection(m: &MatGroup) -> Result<Mat> {
    let size = m.field.size() as u64;
    let total = size.checked_pow(m.dim as u32).unwrap_or(u64::MAX).min(MAX_VECTORS);
    for code in 1..total {
        let v = decode(code, size, m.dim);
        if m.quadratic(&v) != 0 {
            return Ok(reflection(m, &v));
        }
    }
    Err(LieError::Construction("no nonsingular vector".into()))
}

fn decode(mut code: u64, size: u64, n: usize) -> Vec<u32> {
    let mut v = vec![0u32; n];
    for x in v.iter_mut() {
        *x = (code % size) as u32;
        code /= size;
    }
    v
}

fn encode(v: &[u32], size: u64) -> u64 {
    v.iter().rev().fold(0, |a, &x| a * size + x as u64)
}

/// The points of the natural permutation domain: projective points for SL and
/// Sp, isotropic points for SU, singular points for Ω.
#[derive(Clone, Debug)]
pub struct PointAction {
    pub points: Vec<Vec<u32>>,
    index: HashMap<u64, u32>,
    size: u64,
}

impl PointAction {
    pub fn new(m: &MatGroup) -> Result<PointAction> {
        let size = m.field.size() as u64;
        let total = size
            .checked_pow(m.dim as u32)
            .filter(|&t| t <= MAX_VECTORS)
            .ok_or_else(|| LieError::LimitExceeded {
                what: "vectors to enumerate".into(),
                size: format!("{size}^{}", m.dim),
                max: MAX_VECTORS,
            })?;
        let mut points = Vec::new();
        let mut index = HashMap::new();
        for code in 1..total {
            let v = decode(code, size, m.dim);
            if v.iter().find(|&&x| x != 0) != Some(&1) || !m.is_point(&v) {
                continue;
            }
            index.insert(code, points.len() as u32);
            points.push(v);
        }
        Ok(PointAction { points, index, size })
    }

    pub fn degree(&self) -> usize {
        self.points.len()
    }

    pub fn perm(&self, k: &Gf, g: &Mat) -> Result<Perm> {
        let mut img = Vec::with_capacity(self.points.len());
        let mut w = vec![0u32; g.n];
        for v in &self.points {
            g.apply(k, v, &mut w);
            let lead = *w.iter().find(|&&x| x != 0).expect("matrix is singular");
            let li = k.inv(lead);
            for x in w.iter_mut() {
                *x = k.mul(*x, li);
            }
            let p = self
                .index
                .get(&encode(&w, self.size))
                .ok_or_else(|| LieError::Construction("matrix does not preserve the point set".into()))?;
            img.push(*p);
        }
        Ok(Perm::from_images(img)?)
    }
}

/// Coset of `g` modulo the simple group's preimage, for the augmented action:
/// `det` modulo `d`-th powers (SL, SU) or the Dickson invariant (Ω).
fn quotient_label(spec: &GroupSpec, m: &MatGroup, g: &Mat) -> (u32, u32) {
    let k = &m.field;
    let d = spec.adjoint_index() as u32;
    match m.kind {
        FormKind::Linear => (k.log(g.det(k)).unwrap() % d, d),
        FormKind::Unitary => {
            let q = spec.q() as u32;
            let l = k.log(g.det(k)).unwrap();
            debug_assert_eq!(l % (q - 1), 0);
            ((l / (q - 1)) % d, d)
        }
        FormKind::Symplectic => (0, 1),
        FormKind::Quadratic => {
            let r = g.add(k, &Mat::identity(g.n)).rank(k);
            ((r % 2) as u32, 2)
        }
    }
}

/// Random elements of the simple group's preimage: transvections, or
/// products of two reflections for Ω.
fn random_generator(m: &MatGroup, pts: &PointAction, rng: &mut ChaCha8Rng) -> Mat {
    let k = &m.field;
    let n = m.dim;
    let size = k.size();
    let rand_vec = |rng: &mut ChaCha8Rng| -> Vec<u32> {
        loop {
            let v: Vec<u32> = (0..n).map(|_| rng.gen_range(0..size)).collect();
            if v.iter().any(|&x| x != 0) {
                return v;
            }
        }
    };
    let gram_col = |u: &[u32], pw: u64| -> Vec<u32> {
        (0..n)
            .map(|i| (0..n).fold(0, |a, j| k.add(a, k.mul(m.gram.get(i, j), k.pow(u[j], pw)))))
            .collect()
    };
    match m.kind {
        FormKind::Linear => loop {
            let v = rand_vec(rng);
            let mut phi = rand_vec(rng);
            let i = v.iter().position(|&x| x != 0).unwrap();
            let pv = (0..n).fold(0, |a, j| k.add(a, k.mul(phi[j], v[j])));
            phi[i] = k.sub(phi[i], k.div(pv, v[i]));
            if phi.iter().any(|&x| x != 0) {
                return rank_one_update(k, n, &phi, &v, 1);
            }
        },
        FormKind::Symplectic => {
            let v = rand_vec(rng);
            let c = rng.gen_range(1..size);
            rank_one_update(k, n, &gram_col(&v, 1), &v, c)
        }
        FormKind::Unitary => {
            let u = pts.points[rng.gen_range(0..pts.points.len())].clone();
            let q = m.q;
            let cs: Vec<u32> = (1..size).filter(|&c| k.add(c, k.pow(c, q)) == 0).collect();
            let c = cs[rng.gen_range(0..cs.len())];
            rank_one_update(k, n, &gram_col(&u, q), &u, c)
        }
        FormKind::Quadratic => {
            let mut refl = || loop {
                let u = rand_vec(rng);
                if m.quadratic(&u) != 0 {
                    return reflection(m, &u);
                }
            };
            let a = refl();
            let b = refl();
            a.mul(k, &b)
        }
    }
}

/// Generators of `G` in the model `m`, added at random until the permutation
/// image has the order of the simple group.
fn generate_simple(
    spec: &GroupSpec,
    m: &MatGroup,
    pts: &PointAction,
    seed: u64,
    limits: &Limits,
) -> Result<(Vec<Mat>, PermGroup)> {
    let target = spec.group_order();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut mats = Vec::new();
    let mut perms = Vec::new();
    for round in 0..64 {
        let g = random_generator(m, pts, &mut rng);
        debug_assert!(m.preserves_form(&g));
        perms.push(pts.perm(&m.field, &g)?);
        mats.push(g);
        if round == 0 {
            continue;
        }
        let grp = PermGroup::new(perms.clone(), pts.degree(), limits)?;
        let o = grp.order();
        if o == target {
            return Ok((mats, grp));
        }
        if o > target {
            return Err(LieError::Construction(format!(
                "generated group of order {o} exceeds |{spec}| = {target}"
            )));
        }
    }
    Err(LieError::Construction(format!("could not generate {spec}")))
}

/// The default model of `spec`: split-most torus decomposition.
fn default_class(spec: &GroupSpec) -> Result<TorusClass> {
    let m = spec.rank();
    let ones = |k: u32| Partition::new(vec![1; k as usize]);
    Ok(match spec.family {
        Family::LinearA | Family::UnitaryA2 => TorusClass::linear(ones(spec.n)?),
        Family::OrthogonalMinus2D => TorusClass::pair(ones(m - 1)?, ones(1)?),
        _ => TorusClass::pair(ones(m)?, Partition::empty()),
    })
}

/// Generators of `G` (SL, SU, Sp or Ω) preserving the standard-model form.
pub fn classical_group(spec: &GroupSpec, limits: &Limits) -> Result<MatGroup> {
    let cls = default_class(spec)?;
    let mut m = build_normaliser(spec, &cls)?;
    let pts = PointAction::new(&m)?;
    let (gens, _) = generate_simple(spec, &m, &pts, limits.seed, limits)?;
    m.gens = gens;
    Ok(m)
}

/// The simple group `G` as a permutation group on the natural point domain
/// (projective, isotropic or singular points).
pub fn permutation_group(spec: &GroupSpec, limits: &Limits) -> Result<PermGroup> {
    let cls = default_class(spec)?;
    let m = build_normaliser(spec, &cls)?;
    let pts = PointAction::new(&m)?;
    Ok(generate_simple(spec, &m, &pts, limits.seed, limits)?.1)
}

/// Image of a matrix group on the point domain of its form. The kernel of
/// this action is the group of scalars it contains.
pub fn to_permutation(m: &MatGroup, limits: &Limits) -> Result<PermGroup> {
    let pts = PointAction::new(m)?;
    let perms = m
        .gens
        .iter()
        .map(|g| pts.perm(&m.field, g))
        .collect::<Result<Vec<_>>>()?;
    Ok(PermGroup::new(perms, pts.degree(), limits)?)
}

/// Multiplication by a generator of the cyclic torus factor of order
/// `q^ℓ - 1` (sign `+`) or `q^ℓ + 1` (sign `-`, acting on `2ℓ` dimensions).
pub fn singer_block(ell: u32, q: u64, plus: bool) -> Result<(Gf, Mat)> {
    let f = Gf::of_order(q)?;
    if plus {
        let ext = Extension::new(f.clone(), ell)?;
        let m = mult(&ext, ext.big.zeta());
        Ok((f, m))
    } else {
        let ext = Extension::new(f.clone(), 2 * ell)?;
        let m = mult(&ext, ext.big.zeta_pow((q.pow(ell) - 1) as i64));
        Ok((f, m))
    }
}

/// The `q`-power Frobenius of `F_{q^ℓ}` as an `ℓ × ℓ` matrix over `F_q`.
pub fn frobenius_block(ell: u32, q: u64) -> Result<(Gf, Mat)> {
    let f = Gf::of_order(q)?;
    let ext = Extension::new(f.clone(), ell)?;
    let m = ext.matrix_of(|x| ext.frob(x, 1));
    Ok((f, m))
}

/// `G` and `N = N_G(T)` as permutation groups on the natural point domain.
#[derive(Clone, Debug)]
pub struct Construction {
    pub spec: GroupSpec,
    pub class: TorusClass,
    pub model: MatGroup,
    pub normaliser_mats: Vec<Mat>,
    pub g: PermGroup,
    pub n: PermGroup,
}

impl Construction {
    pub fn degree(&self) -> usize {
        self.g.degree()
    }
}

/// Build `G` and `N` for a torus class; both orders are checked against the
/// formulas of the taxonomy.
pub fn construct(spec: &GroupSpec, cls: &TorusClass, limits: &Limits) -> Result<Construction> {
    let td = torus_data(spec, cls)?;
    let model = build_normaliser(spec, cls)?;
    let pts = PointAction::new(&model)?;
    let npts = pts.degree();
    let (gmats, g) = generate_simple(spec, &model, &pts, limits.seed, limits)?;

    let k = &model.field;
    let mut aug = 1;
    let mut perms = Vec::new();
    for h in &model.gens {
        let p = pts.perm(k, h)?;
        let (shift, modulus) = quotient_label(spec, &model, h);
        aug = modulus;
        perms.push((p, shift));
    }
    let n_gens: Vec<Perm> = if aug > 1 {
        let deg = npts + aug as usize;
        let full: Vec<Perm> = perms
            .iter()
            .map(|(p, s)| {
                let mut img = p.images().to_vec();
                img.extend((0..aug).map(|j| npts as u32 + (j + s) % aug));
                Perm::from_images(img)
            })
            .collect::<std::result::Result<_, _>>()?;
        let a = PermGroup::with_base_prefix(full, deg, &[npts as u32], limits)?;
        a.chain()
            .level_generators(1)
            .iter()
            .map(|h| h.restrict(npts))
            .collect::<std::result::Result<_, _>>()?
    } else {
        perms.into_iter().map(|(p, _)| p).collect()
    };
    let n = PermGroup::new(n_gens, npts, limits)?;
    if n.order() != td.normaliser_order {
        return Err(LieError::Construction(format!(
            "constructed N has order {} but |T||R| = {} for {spec}, class {cls}",
            n.order(),
            td.normaliser_order
        )));
    }
    if !n.is_subgroup_of(&g) {
        return Err(LieError::Construction("constructed N is not contained in G".into()));
    }
    let mut model = model;
    let normaliser_mats = std::mem::replace(&mut model.gens, gmats);
    Ok(Construction {
        spec: *spec,
        class: cls.clone(),
        model,
        normaliser_mats,
        g,
        n,
    })
}

/// Number of points of the natural domain predicted by the standard formulas.
pub fn expected_point_count(spec: &GroupSpec) -> Option<BigUint> {
    use crate::arith::{pow, q_pow_minus};
    let q = spec.q();
    let n = spec.n;
    let m = spec.rank();
    Some(match spec.family {
        Family::LinearA | Family::SymplecticC => q_pow_minus(q, n, 1) / BigUint::from(q - 1),
        Family::UnitaryA2 => {
            // (q^n - (-1)^n)(q^{n-1} - (-1)^{n-1}) / (q^2 - 1)
            let s = |e: u32| q_pow_minus(q, e, if e % 2 == 0 { 1 } else { -1 });
            s(n) * s(n - 1) / BigUint::from(q * q - 1)
        }
        Family::OrthogonalPlusD | Family::OrthogonalMinus2D => {
            let e = spec.epsilon();
            q_pow_minus(q, m, e) * (pow(q, m - 1) + BigUint::from(e.max(0) as u64) - BigUint::from((-e).max(0) as u64))
                / BigUint::from(q - 1)
        }
        _ => return None,
    })
}
