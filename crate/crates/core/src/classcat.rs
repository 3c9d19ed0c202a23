//! Prime-order conjugacy classes of `G` with exact sizes, and the zeta-type
//! sum `η_G(t) = Σ |x^G|^-t` over them.
//!
//! For `G = PSLᵋ_n(q)` the classes come from closed formulas: unipotent
//! classes by Jordan partition, semisimple ones by Frobenius-stable eigenvalue
//! multisets, pushed down through `SLᵋ_n(q)` with the centre `Z` acting
//! explicitly. Other families use exhaustive enumeration in a permutation
//! representation, or an externally supplied size list.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;

use num_bigint::BigUint;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use permcore::{exhaustive_classes, Limits};
use serde::Serialize;

use crate::arith::{big, gcd_u64, is_prime, partitions, pow, prime_divisors, prime_divisors_u64, ser_big};
use crate::cert::{pow_neg_rational, Interval, PRECISION};
use crate::matgrp;
use crate::taxonomy::{Family, GroupSpec, Partition};
use crate::{LieError, Result};

/// A Frobenius orbit of eigenvalues `ω^k` (`ω` a primitive `modulus`-th root
/// of unity), named by its least exponent, taken `mult` times.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct EigenOrbit {
    pub rep: u64,
    pub degree: u32,
    pub mult: u32,
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum ClassLabel {
    /// Jordan partition; `part` distinguishes the classes into which one
    /// class of the full linear (or unitary) group splits.
    UnipotentJordan {
        partition: Partition,
        decoration: Option<String>,
        part: u32,
    },
    SemisimpleEig {
        modulus: u64,
        orbits: Vec<EigenOrbit>,
    },
    /// Semisimple class whose preimage is fixed by `fused` > 1 central shifts,
    /// so its centraliser in `G` is disconnected.
    DisconnectedSs {
        modulus: u64,
        orbits: Vec<EigenOrbit>,
        fused: u64,
    },
    /// Found by exhaustive enumeration; the cycle type of a representative on
    /// the natural point domain.
    Computed {
        cycle_type: Vec<usize>,
    },
    Ingested,
}

impl fmt::Display for ClassLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let orbits = |o: &[EigenOrbit]| {
            o.iter()
                .map(|e| format!("{}:{}x{}", e.rep, e.degree, e.mult))
                .collect::<Vec<_>>()
                .join(" ")
        };
        match self {
            ClassLabel::UnipotentJordan {
                partition,
                decoration,
                part,
            } => {
                write!(f, "J({})", partition.compact())?;
                if let Some(d) = decoration {
                    write!(f, "{d}")?;
                }
                if *part > 0 {
                    write!(f, "#{part}")?;
                }
                Ok(())
            }
            ClassLabel::SemisimpleEig { modulus, orbits: o } => write!(f, "ss[{modulus}]({})", orbits(o)),
            ClassLabel::DisconnectedSs {
                modulus,
                orbits: o,
                fused,
            } => {
                write!(f, "ss[{modulus}]({})/{fused}", orbits(o))
            }
            ClassLabel::Computed { cycle_type } => {
                let parts: Vec<String> = cycle_type.iter().map(|c| c.to_string()).collect();
                write!(f, "perm({})", parts.join(","))
            }
            ClassLabel::Ingested => f.write_str("ingested"),
        }
    }
}

/// A class of elements of prime order `order` in `G`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ClassRecord {
    pub order: u64,
    pub label: ClassLabel,
    #[serde(serialize_with = "ser_big")]
    pub size: BigUint,
    /// Codimension of the largest eigenspace of a preimage on the natural
    /// module; unknown for computed or ingested classes.
    pub nu: Option<u32>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Mode {
    Formula,
    BruteForce,
    Auto,
}

impl FromStr for Mode {
    type Err = LieError;
    fn from_str(s: &str) -> Result<Mode> {
        match s {
            "formula" => Ok(Mode::Formula),
            "brute_force" | "brute-force" | "bruteforce" => Ok(Mode::BruteForce),
            "auto" => Ok(Mode::Auto),
            _ => Err(LieError::Parse(format!("unknown class mode {s:?}"))),
        }
    }
}

fn sort_classes(v: &mut [ClassRecord]) {
    v.sort_by(|a, b| (a.order, &a.size, &a.label).cmp(&(b.order, &b.size, &b.label)));
}

/// `|GL_m(Q)|` (`eps = 1`) or `|GU_m(Q)|` (`eps = -1`).
pub fn gl_order(eps: i64, m: u32, qq: &BigUint) -> BigUint {
    let mut o = qq.pow(m * m.saturating_sub(1) / 2);
    let mut qi = BigUint::one();
    for i in 1..=m {
        qi *= qq;
        if eps < 0 && i % 2 == 1 {
            o *= &qi + 1u32;
        } else {
            o *= &qi - 1u32;
        }
    }
    o
}

fn linear_family(spec: &GroupSpec) -> bool {
    matches!(spec.family, Family::LinearA | Family::UnitaryA2)
}

/// Prime divisors of `|G|`, ascending.
pub fn group_primes(spec: &GroupSpec) -> Vec<u64> {
    if linear_family(spec) {
        let q = spec.q();
        let e = spec.epsilon();
        let mut set = BTreeSet::new();
        set.insert(spec.p);
        for i in 2..=spec.n {
            let s = if e < 0 && i % 2 == 1 { -1 } else { 1 };
            let v = crate::arith::q_pow_minus(q, i, s);
            match v.to_u64() {
                Some(x) => set.extend(prime_divisors_u64(x)),
                None => set.extend(prime_divisors(&v).iter().map(|p| p.to_u64().expect("prime too large"))),
            }
        }
        return set.into_iter().collect();
    }
    prime_divisors(&spec.group_order())
        .iter()
        .map(|p| p.to_u64().expect("prime too large"))
        .collect()
}

/// Unipotent classes of `PSLᵋ_n(q)` of order `p`.
fn unipotent_classes_a(spec: &GroupSpec) -> Vec<ClassRecord> {
    let q = spec.q();
    let p = spec.p as u32;
    let eps = spec.epsilon();
    let n = spec.n;
    let qq = big(q);
    let full = gl_order(eps, n, &qq);
    let q_minus_eps = if eps > 0 { q - 1 } else { q + 1 };
    let mut out = Vec::new();
    for parts in partitions(n) {
        if parts[0] > p || parts[0] == 1 {
            continue;
        }
        let lambda = Partition::new(parts.clone()).unwrap();
        let mults = lambda.multiplicities();
        let conj_sq: u32 = (1..=parts[0])
            .map(|i| parts.iter().filter(|&&x| x >= i).count() as u32)
            .map(|c| c * c)
            .sum();
        let mult_sq: u32 = mults.values().map(|a| a * a).sum();
        let cent: BigUint =
            qq.pow(conj_sq - mult_sq) * mults.values().map(|&a| gl_order(eps, a, &qq)).product::<BigUint>();
        let k = parts.iter().fold(q_minus_eps, |g, &x| gcd_u64(g, x as u64));
        let size = &full / cent / big(k);
        for part in 0..k as u32 {
            out.push(ClassRecord {
                order: p as u64,
                label: ClassLabel::UnipotentJordan {
                    partition: lambda.clone(),
                    decoration: None,
                    part,
                },
                size: size.clone(),
                nu: Some(n - parts.len() as u32),
            });
        }
    }
    out
}

struct Orbit {
    elems: Vec<u64>,
    sum: u64,
}

/// Eigenvalue exponents beyond which the semisimple enumeration refuses.
const MAX_MODULUS: u64 = 1 << 24;

/// Semisimple classes of `PSLᵋ_n(q)` of prime order `r ≠ p`.
///
/// A preimage `g ∈ SLᵋ_n(q)` has `g^r` central, so its eigenvalues are
/// `M`-th roots of unity for `M = r d`, all with the same `r`-th power. Its
/// `GLᵋ`-class is a multiset of orbits of `k -> εq k` on `Z/M`; these classes
/// do not split in `SLᵋ`. The centre shifts exponents by multiples of `r`,
/// and the image in `G` of one such shift-orbit of classes is one class.
fn semisimple_classes_a(spec: &GroupSpec, r: u64) -> Result<Vec<ClassRecord>> {
    let q = spec.q();
    let eps = spec.epsilon();
    let n = spec.n;
    let d = spec.adjoint_index();
    let m = r * d;
    if m > MAX_MODULUS {
        return Err(LieError::LimitExceeded {
            what: format!("eigenvalue modulus for r = {r}"),
            size: m.to_string(),
            max: MAX_MODULUS,
        });
    }
    let mul = if eps > 0 { q % m } else { (m - q % m) % m };
    let mut orbit_of = vec![usize::MAX; m as usize];
    let mut orbits = Vec::new();
    for k in 0..m {
        if orbit_of[k as usize] != usize::MAX {
            continue;
        }
        let mut elems = Vec::new();
        let mut x = k;
        loop {
            orbit_of[x as usize] = orbits.len();
            elems.push(x);
            x = x * mul % m;
            if x == k {
                break;
            }
        }
        let sum = elems.iter().fold(0, |a, &x| (a + x) % m);
        orbits.push(Orbit { elems, sum });
    }
    // orbits usable in dimension n, grouped by the common r-th power
    let mut by_power: BTreeMap<u64, Vec<usize>> = BTreeMap::new();
    for (i, o) in orbits.iter().enumerate() {
        if o.elems.len() as u32 <= n {
            by_power.entry(r * o.elems[0] % m).or_default().push(i);
        }
    }
    let mut keys: BTreeSet<Vec<(usize, u32)>> = BTreeSet::new();
    for list in by_power.values() {
        let mut cur = Vec::new();
        choose(&orbits, list, 0, n, &mut cur, &mut |c: &[(usize, u32)]| {
            let det = c.iter().fold(0u64, |a, &(i, k)| (a + k as u64 * orbits[i].sum) % m);
            let scalar = c.len() == 1 && orbits[c[0].0].elems.len() == 1;
            if det == 0 && !scalar {
                keys.insert(c.to_vec());
            }
        });
    }

    let qq = big(q);
    let full = gl_order(eps, n, &qq);
    let shift = |key: &[(usize, u32)], t: u64| -> Vec<(usize, u32)> {
        let mut v: Vec<(usize, u32)> = key
            .iter()
            .map(|&(i, k)| (orbit_of[((orbits[i].elems[0] + r * t) % m) as usize], k))
            .collect();
        v.sort_unstable();
        v
    };
    let mut seen = BTreeSet::new();
    let mut out = Vec::new();
    for key in &keys {
        if seen.contains(key) {
            continue;
        }
        let fam: BTreeSet<Vec<(usize, u32)>> = (0..d).map(|t| shift(key, t)).collect();
        let kz = fam.len() as u64;
        seen.extend(fam);
        let mut cent = BigUint::one();
        for &(i, k) in key {
            let e = orbits[i].elems.len() as u32;
            let qe = qq.pow(e);
            let twisted = if eps < 0 && e % 2 == 1 { -1 } else { 1 };
            cent *= gl_order(twisted, k, &qe);
        }
        let size = &full / cent * big(kz) / big(d);
        let eig: Vec<EigenOrbit> = key
            .iter()
            .map(|&(i, k)| EigenOrbit {
                rep: orbits[i].elems[0],
                degree: orbits[i].elems.len() as u32,
                mult: k,
            })
            .collect();
        let label = if kz < d {
            ClassLabel::DisconnectedSs {
                modulus: m,
                orbits: eig,
                fused: d / kz,
            }
        } else {
            ClassLabel::SemisimpleEig {
                modulus: m,
                orbits: eig,
            }
        };
        let top = key.iter().map(|&(_, k)| k).max().unwrap();
        out.push(ClassRecord {
            order: r,
            label,
            size,
            nu: Some(n - top),
        });
    }
    Ok(out)
}

/// Multisets of orbits from `list[start..]`, with multiplicities, filling
/// exactly `dim` dimensions.
fn choose(
    orbits: &[Orbit],
    list: &[usize],
    start: usize,
    dim: u32,
    cur: &mut Vec<(usize, u32)>,
    emit: &mut dyn FnMut(&[(usize, u32)]),
) {
    if dim == 0 {
        emit(cur);
        return;
    }
    for (j, &i) in list.iter().enumerate().skip(start) {
        let e = orbits[i].elems.len() as u32;
        for k in 1..=dim / e {
            cur.push((i, k));
            choose(orbits, list, j + 1, dim - k * e, cur, emit);
            cur.pop();
        }
    }
}

/// Prime-order classes of `PSLᵋ_n(q)` by formula, sorted by (order, size, label).
pub fn formula_classes(spec: &GroupSpec) -> Result<Vec<ClassRecord>> {
    if !linear_family(spec) {
        return Err(LieError::Unsupported(format!(
            "formula class lists exist only for linear and unitary groups, not {spec}"
        )));
    }
    let mut out = Vec::new();
    for r in group_primes(spec) {
        if r == spec.p {
            out.extend(unipotent_classes_a(spec));
        } else {
            out.extend(semisimple_classes_a(spec, r)?);
        }
    }
    sort_classes(&mut out);
    Ok(out)
}

/// Prime-order classes by exhaustive enumeration in the natural permutation
/// representation.
pub fn brute_force_classes(spec: &GroupSpec, limits: &Limits) -> Result<Vec<ClassRecord>> {
    let order = spec.group_order();
    if order > big(limits.exhaustive_limit) {
        return Err(LieError::LimitExceeded {
            what: format!("exhaustive class enumeration of {spec}"),
            size: order.to_string(),
            max: limits.exhaustive_limit,
        });
    }
    let g = matgrp::permutation_group(spec, limits)?;
    let mut out: Vec<ClassRecord> = exhaustive_classes(&g, limits, true)?
        .into_iter()
        .map(|c| ClassRecord {
            order: c.element_order.to_u64().unwrap(),
            label: ClassLabel::Computed {
                cycle_type: c.representative.cycle_type(),
            },
            size: big(c.size),
            nu: None,
        })
        .collect();
    sort_classes(&mut out);
    Ok(out)
}

/// Complete list of prime-order classes of `G`. `Auto` uses formulas where
/// they exist and exhaustive enumeration otherwise.
pub fn prime_order_classes(spec: &GroupSpec, mode: Mode, limits: &Limits) -> Result<Vec<ClassRecord>> {
    match mode {
        Mode::Formula => formula_classes(spec),
        Mode::BruteForce => brute_force_classes(spec, limits),
        Mode::Auto if linear_family(spec) => formula_classes(spec),
        Mode::Auto => brute_force_classes(spec, limits),
    }
}

/// Reads a class-size list with header `order,size,count`. Sizes must divide
/// `|G|`, orders must be primes dividing `|G|`, and the total must stay below
/// `|G|`.
pub fn parse_class_csv(spec: &GroupSpec, text: &str) -> Result<Vec<ClassRecord>> {
    let order = spec.group_order();
    let mut lines = text
        .lines()
        .map(str::trim)
        .filter(|l| !l.is_empty() && !l.starts_with('#'));
    let header: Vec<&str> = lines
        .next()
        .ok_or_else(|| LieError::Parse("empty class list".into()))?
        .split(',')
        .map(str::trim)
        .collect();
    if header != ["order", "size", "count"] {
        return Err(LieError::Parse(format!(
            "expected header order,size,count, found {header:?}"
        )));
    }
    let mut out = Vec::new();
    let mut total = BigUint::zero();
    for (i, line) in lines.enumerate() {
        let bad = |why: String| LieError::Parse(format!("class list row {}: {why}", i + 1));
        let f: Vec<&str> = line.split(',').map(str::trim).collect();
        if f.len() != 3 {
            return Err(bad(format!("expected 3 fields, found {}", f.len())));
        }
        let r: u64 = f[0].parse().map_err(|_| bad(format!("bad order {:?}", f[0])))?;
        let size: BigUint = f[1].parse().map_err(|_| bad(format!("bad size {:?}", f[1])))?;
        let count: u64 = f[2].parse().map_err(|_| bad(format!("bad count {:?}", f[2])))?;
        if !is_prime(r) || !(&order % r).is_zero() {
            return Err(bad(format!("{r} is not a prime divisor of |G|")));
        }
        if size.is_zero() || !(&order % &size).is_zero() {
            return Err(bad(format!("size {size} does not divide |G| = {order}")));
        }
        total += &size * count;
        out.extend((0..count).map(|_| ClassRecord {
            order: r,
            label: ClassLabel::Ingested,
            size: size.clone(),
            nu: None,
        }));
    }
    if total >= order {
        return Err(LieError::Parse(format!(
            "class sizes sum to {total}, not below |G| = {order}"
        )));
    }
    sort_classes(&mut out);
    Ok(out)
}

/// Certified enclosure of `η_G(t)` with the contribution of every class.
#[derive(Clone, Debug)]
pub struct EtaReport {
    pub t: BigRational,
    pub value: Interval,
    pub per_class: Vec<(ClassRecord, Interval)>,
}

impl EtaReport {
    /// Certified `η_G(t) < 1`.
    pub fn below_one(&self) -> bool {
        self.value.certainly_below(&BigRational::one())
    }
}

/// `η(t)` over a given class list.
pub fn eta_of(classes: &[ClassRecord], t: &BigRational) -> EtaReport {
    assert!(*t >= BigRational::zero(), "t must be nonnegative");
    let mut value = Interval::zero();
    let mut per_class = Vec::with_capacity(classes.len());
    // equal sizes share one enclosure
    let mut memo: BTreeMap<&BigUint, Interval> = BTreeMap::new();
    for c in classes {
        let x = memo
            .entry(&c.size)
            .or_insert_with(|| pow_neg_rational(&c.size, t, PRECISION))
            .clone();
        value = &value + &x;
        per_class.push((c.clone(), x));
    }
    EtaReport {
        t: t.clone(),
        value,
        per_class,
    }
}

pub fn eta(spec: &GroupSpec, t: &BigRational, mode: Mode, limits: &Limits) -> Result<EtaReport> {
    Ok(eta_of(&prime_order_classes(spec, mode, limits)?, t))
}

/// Families of prime-order elements for which a closed lower bound on the
/// class size is available; `n` and `q` come from the group.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "shape", rename_all = "snake_case")]
pub enum Shape {
    /// Unipotent `(J_p^h, J_1^(n-hp))` in type A.
    LinearUnipotent { h: u32 },
    /// Semisimple with `r - 1` nontrivial eigenspaces of dimension `h`, type A
    /// (at `q = 2` this is the `(2/3)^(r-1)` variant).
    LinearSemisimple { r: u32, h: u32 },
    /// Disconnected centraliser in type A, `r | n`.
    LinearDisconnected { r: u32 },
    /// `(-I_h, I_(n-h))` in type A; also semisimple elements with `ν = h`
    /// for `h` in {1, 2}.
    LinearInvolution { h: u32 },
    /// Semisimple with `ν ≥ 3` in type A.
    LinearNuLarge,
    /// Unipotent `(J_r^(2j), J_1^(n-2jr))` in a symplectic group.
    SymplecticUnipotent { r: u32, j: u32 },
    /// Semisimple `(I, ωI_2j, ..., ω^(r-1)I_2j)` in a symplectic group.
    SymplecticSemisimple { r: u32, j: u32 },
    /// Involution of type `a_h`, `p = 2`.
    InvolutionA { h: u32 },
    /// Involution of type `b_h` or `c_h`, `p = 2`, `h ≥ 2`.
    InvolutionBC { h: u32 },
    /// `(-I_2l, I_(n-2l))` in an orthogonal group.
    OrthogonalInvolution { l: u32 },
    /// As above with `q` odd; `half` when `l = m/2`.
    OrthogonalInvolutionOdd { l: u32, half: bool },
    /// Orthogonal `a_h`, `p = 2`.
    OrthogonalA { h: u32 },
    /// Orthogonal `c_h`, `p = 2`.
    OrthogonalC { h: u32 },
}

fn q_power(q: u64, e: i64) -> BigRational {
    let x = BigRational::from_integer(pow(q, e.unsigned_abs() as u32).into());
    if e >= 0 {
        x
    } else {
        x.recip()
    }
}

fn ratio_power(q: u64, k: u32) -> BigRational {
    BigRational::new(pow(q, k).into(), pow(q + 1, k).into())
}

/// Lower bound for `|x^G|` for `x` of the given shape.
pub fn class_size_lower_bound(spec: &GroupSpec, shape: &Shape) -> Result<BigRational> {
    let n = spec.n as i64;
    let q = spec.q();
    let p = spec.p as i64;
    let half = BigRational::new(1.into(), 2.into());
    let fam = spec.family;
    let need = |ok: bool, what: &str| -> Result<()> {
        if ok {
            Ok(())
        } else {
            Err(LieError::InvalidSpec(format!("shape {shape:?} needs {what} ({spec})")))
        }
    };
    let linear = linear_family(spec);
    let symplectic = fam == Family::SymplecticC;
    let orthogonal = matches!(
        fam,
        Family::OrthogonalOddB | Family::OrthogonalPlusD | Family::OrthogonalMinus2D
    );
    Ok(match *shape {
        Shape::LinearUnipotent { h } => {
            need(linear && h >= 1 && h as i64 * p <= n, "type A and hp <= n")?;
            let h = h as i64;
            half * ratio_power(q, 1) * q_power(q, h * (p - 1) * (2 * n - h * p))
        }
        Shape::LinearSemisimple { r, h } => {
            need(linear && r >= 2 && h >= 1, "type A")?;
            let (r, h) = (r as i64, h as i64);
            half * ratio_power(q, (r - 1) as u32) * q_power(q, h * (r - 1) * (2 * n - h * r))
        }
        Shape::LinearDisconnected { r } => {
            need(linear && r >= 2 && n % r as i64 == 0, "type A and r | n")?;
            let r = r as i64;
            BigRational::new(1.into(), (2 * r).into()) * ratio_power(q, (r - 1) as u32) * q_power(q, n * n - n * n / r)
        }
        Shape::LinearInvolution { h } => {
            need(linear && h >= 1 && (h as i64) < n, "type A and 1 <= h < n")?;
            let h = h as i64;
            half * ratio_power(q, 1) * q_power(q, 2 * h * (n - h))
        }
        Shape::LinearNuLarge => {
            need(linear, "type A")?;
            half * ratio_power(q, 1) * q_power(q, 6 * n - 18)
        }
        Shape::SymplecticUnipotent { r, j } => {
            need(symplectic && r as i64 == p, "a symplectic group and r = p")?;
            let (r, j) = (r as i64, j as i64);
            half * q_power(q, j * (r - 1) * (2 * n - 2 * j * r + 1))
        }
        Shape::SymplecticSemisimple { r, j } => {
            need(
                symplectic && r % 2 == 1 && r as i64 != p,
                "a symplectic group and odd r != p",
            )?;
            let (r, j) = (r as i64, j as i64);
            half * ratio_power(q, ((r - 1) / 2) as u32) * q_power(q, j * (r - 1) * (2 * n - 2 * j * r + 1))
        }
        Shape::InvolutionA { h } => {
            need(
                symplectic && p == 2 && h % 2 == 0 && h >= 2,
                "a symplectic group, p = 2, h even",
            )?;
            let h = h as i64;
            half * q_power(q, h * (n - h))
        }
        Shape::InvolutionBC { h } => {
            need(symplectic && p == 2 && h >= 2, "a symplectic group, p = 2, h >= 2")?;
            let h = h as i64;
            half * q_power(q, h * (n - h + 1))
        }
        Shape::OrthogonalInvolution { l } => {
            need(orthogonal && l >= 1, "an orthogonal group")?;
            let l = l as i64;
            BigRational::new(1.into(), 4.into()) * q_power(q, 2 * l * (n - 2 * l))
        }
        Shape::OrthogonalInvolutionOdd { l, half: h2 } => {
            need(orthogonal && p != 2 && l >= 1, "an orthogonal group with q odd")?;
            let l = l as i64;
            let d = if h2 { 2 } else { 1 };
            BigRational::new(1.into(), (4 * d).into()) * ratio_power(q, 1) * q_power(q, 2 * l * (n - 2 * l))
        }
        Shape::OrthogonalA { h } => {
            need(
                orthogonal && p == 2 && h % 2 == 0 && h >= 2,
                "an orthogonal group, p = 2, h even",
            )?;
            let h = h as i64;
            half * q_power(q, h * (n - h - 1))
        }
        Shape::OrthogonalC { h } => {
            need(
                orthogonal && p == 2 && h % 2 == 0 && h >= 2,
                "an orthogonal group, p = 2, h even",
            )?;
            let h = h as i64;
            half * q_power(q, h * (n - h))
        }
    })
}

/// The shape of a formula-mode class in type A, for use with
/// [`class_size_lower_bound`]. Unipotent classes must have a single
/// nontrivial block size; semisimple classes are classified by `ν` and by the
/// eigenspace pattern.
pub fn linear_shape(spec: &GroupSpec, c: &ClassRecord) -> Option<Shape> {
    match &c.label {
        ClassLabel::UnipotentJordan { partition, .. } => {
            let p = spec.p as u32;
            let h = partition.parts().iter().filter(|&&x| x == p).count() as u32;
            let rest_trivial = partition.parts().iter().all(|&x| x == p || x == 1);
            (rest_trivial && h >= 1).then_some(Shape::LinearUnipotent { h })
        }
        ClassLabel::DisconnectedSs { .. } => Some(Shape::LinearDisconnected { r: c.order as u32 }),
        ClassLabel::SemisimpleEig { .. } => {
            let nu = c.nu?;
            if c.order == 2 {
                Some(Shape::LinearInvolution { h: nu.min(spec.n - nu) })
            } else if nu <= 2 {
                Some(Shape::LinearInvolution { h: nu })
            } else {
                Some(Shape::LinearNuLarge)
            }
        }
        _ => None,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn spec(s: &str) -> GroupSpec {
        s.parse().unwrap()
    }

    fn sizes(v: &[ClassRecord]) -> Vec<(u64, BigUint)> {
        v.iter().map(|c| (c.order, c.size.clone())).collect()
    }

    #[test]
    fn gl_orders() {
        assert_eq!(gl_order(1, 2, &big(2)), big(6));
        assert_eq!(gl_order(-1, 2, &big(2)), big(18));
        assert_eq!(gl_order(1, 3, &big(2)), big(168));
        assert_eq!(gl_order(-1, 1, &big(3)), big(4));
        assert_eq!(gl_order(1, 0, &big(7)), big(1));
    }

    #[test]
    fn l32_by_hand() {
        // L3(2): 21 involutions, two classes of 7-elements (24 each), one of
        // 3-elements (56)
        let c = formula_classes(&spec("L3(2)")).unwrap();
        assert_eq!(sizes(&c), vec![(2, big(21)), (3, big(56)), (7, big(24)), (7, big(24))]);
        assert_eq!(c[0].nu, Some(1));
    }

    #[test]
    fn l2_by_hand() {
        // L2(5) = A5: 15 involutions, 20 elements of order 3, two classes of 12
        let c = formula_classes(&spec("L2(5)")).unwrap();
        assert_eq!(sizes(&c), vec![(2, big(15)), (3, big(20)), (5, big(12)), (5, big(12))]);
        // L2(7): 21 involutions, 56 of order 3, 2 x 24 of order 7
        let c = formula_classes(&spec("L2(7)")).unwrap();
        assert_eq!(sizes(&c), vec![(2, big(21)), (3, big(56)), (7, big(24)), (7, big(24))]);
    }

    #[test]
    fn disconnected_classes_appear_when_r_divides_d() {
        // in L2(q), q odd, the involutions have dihedral centralisers
        let c = formula_classes(&spec("L2(9)")).unwrap();
        assert!(c
            .iter()
            .any(|x| x.order == 2 && matches!(x.label, ClassLabel::DisconnectedSs { fused: 2, .. })));
    }

    #[test]
    fn csv_roundtrip_and_rejection() {
        let s = spec("L3(2)");
        let ok = parse_class_csv(&s, "order,size,count\n2,21,1\n3,56,1\n7,24,2\n").unwrap();
        assert_eq!(sizes(&ok), sizes(&formula_classes(&s).unwrap()));
        assert!(parse_class_csv(&s, "order,size,count\n2,22,1\n").is_err());
        assert!(parse_class_csv(&s, "order,size,count\n5,21,1\n").is_err());
        assert!(parse_class_csv(&s, "size,order,count\n2,21,1\n").is_err());
        assert!(parse_class_csv(&s, "order,size,count\n2,84,2\n").is_err());
    }

    #[test]
    fn eta_at_zero_counts_classes() {
        let c = formula_classes(&spec("L4(3)")).unwrap();
        let e = eta_of(&c, &BigRational::zero());
        assert_eq!(e.value, Interval::point(BigRational::from_integer(c.len().into())));
    }

    #[test]
    fn lower_bound_examples() {
        // type A, h = 1, r = 3, n = 6, q = 2: 1/2 (2/3)^2 2^(1*2*(12-3))
        let b = class_size_lower_bound(&spec("L6(2)"), &Shape::LinearSemisimple { r: 3, h: 1 }).unwrap();
        assert_eq!(
            b,
            BigRational::new(2u64.pow(18).into(), 9.into()) * BigRational::new(4.into(), 2.into())
        );
        let b = class_size_lower_bound(&spec("S6(2)"), &Shape::SymplecticUnipotent { r: 2, j: 1 }).unwrap();
        // 1/2 2^(1*1*(12-4+1))
        assert_eq!(b, BigRational::from_integer(256.into()));
        assert!(class_size_lower_bound(&spec("L6(2)"), &Shape::InvolutionA { h: 2 }).is_err());
    }
}
