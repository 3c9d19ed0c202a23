//! Group specifications, F-classes of maximal tori, and exact orders.
//!
//! A torus class of a classical group is a partition `λ` (types A and ²A) or a
//! pair `(λ, μ)` of partitions (types B, C, D, ²D): parts of `λ` give cyclic
//! factors of order `q^ℓ - 1` and parts of `μ` factors of order `q^ℓ + 1`.
//! For G₂ and ³D₄ the classes are a fixed list, indexed by position.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::arith::{big, factorial, gcd_u64, pow, prime_power, q_pow_minus};
use crate::{LieError, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Family {
    LinearA,
    UnitaryA2,
    SymplecticC,
    OrthogonalOddB,
    OrthogonalPlusD,
    OrthogonalMinus2D,
    G2,
    F4,
    E6,
    E6tw,
    E7,
    E8,
    D4tri,
    F4tw,
    G2tw,
    B2tw,
}

impl Family {
    pub const ALL: [Family; 16] = [
        Family::LinearA,
        Family::UnitaryA2,
        Family::SymplecticC,
        Family::OrthogonalOddB,
        Family::OrthogonalPlusD,
        Family::OrthogonalMinus2D,
        Family::G2,
        Family::F4,
        Family::E6,
        Family::E6tw,
        Family::E7,
        Family::E8,
        Family::D4tri,
        Family::F4tw,
        Family::G2tw,
        Family::B2tw,
    ];

    pub fn is_classical(self) -> bool {
        matches!(
            self,
            Family::LinearA
                | Family::UnitaryA2
                | Family::SymplecticC
                | Family::OrthogonalOddB
                | Family::OrthogonalPlusD
                | Family::OrthogonalMinus2D
        )
    }

    /// The sign ε of the twist: -1 for ²A, ²D and ²E₆.
    pub fn epsilon(self) -> i64 {
        match self {
            Family::UnitaryA2 | Family::OrthogonalMinus2D | Family::E6tw => -1,
            _ => 1,
        }
    }

    pub fn symbol(self) -> &'static str {
        match self {
            Family::LinearA => "L",
            Family::UnitaryA2 => "U",
            Family::SymplecticC => "S",
            Family::OrthogonalOddB => "O",
            Family::OrthogonalPlusD => "O+",
            Family::OrthogonalMinus2D => "O-",
            Family::G2 => "G2",
            Family::F4 => "F4",
            Family::E6 => "E6",
            Family::E6tw => "2E6",
            Family::E7 => "E7",
            Family::E8 => "E8",
            Family::D4tri => "3D4",
            Family::F4tw => "2F4",
            Family::G2tw => "2G2",
            Family::B2tw => "2B2",
        }
    }

    /// Accepts the symbols above plus a few common spellings (`Sp`, `PSp`,
    /// `SL`, `SU`, `B`, `C`, `D`, `2D`, `A`, `2A`).
    pub fn parse(s: &str) -> Option<Family> {
        let f = match s {
            "L" | "A" | "SL" | "PSL" => Family::LinearA,
            "U" | "2A" | "SU" | "PSU" => Family::UnitaryA2,
            "S" | "Sp" | "PSp" | "C" => Family::SymplecticC,
            "O" | "B" | "Omega" => Family::OrthogonalOddB,
            "O+" | "D" | "Omega+" => Family::OrthogonalPlusD,
            "O-" | "2D" | "Omega-" => Family::OrthogonalMinus2D,
            _ => return Family::ALL.iter().copied().find(|f| f.symbol() == s),
        };
        Some(f)
    }

    /// Lie rank of the ambient algebraic group, for the exceptional families.
    fn exceptional_rank(self) -> u32 {
        match self {
            Family::G2 | Family::G2tw | Family::B2tw => 2,
            Family::F4 | Family::F4tw | Family::D4tri => 4,
            Family::E6 | Family::E6tw => 6,
            Family::E7 => 7,
            Family::E8 => 8,
            _ => 0,
        }
    }
}

/// A finite simple group of Lie type, up to isomorphism type: family, natural
/// module dimension `n` (the Lie rank for exceptional families) and `q = p^f`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct GroupSpec {
    pub family: Family,
    pub n: u32,
    pub p: u64,
    pub f: u32,
}

impl GroupSpec {
    pub fn new(family: Family, n: u32, q: u64) -> Result<GroupSpec> {
        let (p, f) = prime_power(q).ok_or_else(|| LieError::InvalidSpec(format!("q = {q} is not a prime power")))?;
        let bad = |why: &str| {
            Err(LieError::InvalidSpec(format!(
                "{}{}({}): {}",
                family.symbol(),
                n,
                q,
                why
            )))
        };
        let n = match family {
            Family::LinearA | Family::UnitaryA2 => {
                if n < 2 {
                    return bad("need n >= 2");
                }
                n
            }
            Family::SymplecticC => {
                if n < 2 || n % 2 == 1 {
                    return bad("need n even and n >= 2");
                }
                n
            }
            Family::OrthogonalOddB => {
                if n < 3 || n % 2 == 0 || p == 2 {
                    return bad("need n odd, n >= 3 and q odd");
                }
                n
            }
            Family::OrthogonalPlusD | Family::OrthogonalMinus2D => {
                if n < 4 || n % 2 == 1 {
                    return bad("need n even and n >= 4");
                }
                n
            }
            Family::B2tw | Family::F4tw if p != 2 || f % 2 == 0 => return bad("need q an odd power of 2"),
            Family::G2tw if p != 3 || f % 2 == 0 => return bad("need q an odd power of 3"),
            _ => family.exceptional_rank(),
        };
        Ok(GroupSpec { family, n, p, f })
    }

    pub fn q(&self) -> u64 {
        self.p.pow(self.f)
    }

    pub fn epsilon(&self) -> i64 {
        self.family.epsilon()
    }

    /// `m` with `n = 2m` or `n = 2m + 1` for types B, C, D; `n - 1` for type A.
    pub fn rank(&self) -> u32 {
        match self.family {
            Family::LinearA | Family::UnitaryA2 => self.n - 1,
            Family::SymplecticC | Family::OrthogonalOddB | Family::OrthogonalPlusD | Family::OrthogonalMinus2D => {
                self.n / 2
            }
            _ => self.n,
        }
    }

    /// Order of the centre of the simply connected group, so that
    /// `|G| = |Ĝ| / d` in the classical cases.
    pub fn adjoint_index(&self) -> u64 {
        let q = self.q();
        match self.family {
            Family::LinearA => gcd_u64(self.n as u64, q - 1),
            Family::UnitaryA2 => gcd_u64(self.n as u64, q + 1),
            Family::SymplecticC | Family::OrthogonalOddB => gcd_u64(2, q - 1),
            Family::OrthogonalPlusD | Family::OrthogonalMinus2D => {
                let qm = pow(q, self.rank());
                let r = (BigInt::from(qm) - BigInt::from(self.epsilon())).mod_floor(&BigInt::from(4));
                gcd_u64(4, r.try_into().unwrap())
            }
            Family::E6 => gcd_u64(3, q - 1),
            Family::E6tw => gcd_u64(3, q + 1),
            Family::E7 => gcd_u64(2, q - 1),
            _ => 1,
        }
    }

    pub fn name(&self) -> String {
        let q = self.q();
        match self.family {
            Family::OrthogonalOddB | Family::OrthogonalPlusD | Family::OrthogonalMinus2D => {
                format!("O{}{}({})", self.n, self.sign_suffix(), q)
            }
            f if f.is_classical() => format!("{}{}({})", f.symbol(), self.n, q),
            f => format!("{}({})", f.symbol(), q),
        }
    }

    fn sign_suffix(&self) -> &'static str {
        match self.family {
            Family::OrthogonalPlusD => "+",
            Family::OrthogonalMinus2D => "-",
            _ => "",
        }
    }

    /// Order of the simple group.
    pub fn group_order(&self) -> BigUint {
        let q = self.q();
        let e = self.epsilon();
        let d = big(self.adjoint_index());
        let prod = |ds: &[u32], sign: i64| -> BigUint {
            ds.iter()
                .map(|&i| q_pow_minus(q, i, if sign < 0 && i % 2 == 1 { -1 } else { 1 }))
                .product()
        };
        let n = self.n;
        let m = self.rank();
        match self.family {
            Family::LinearA | Family::UnitaryA2 => {
                let ds: Vec<u32> = (2..=n).collect();
                pow(q, n * (n - 1) / 2) * prod(&ds, e) / d
            }
            Family::SymplecticC | Family::OrthogonalOddB => {
                let ds: Vec<u32> = (1..=m).map(|i| 2 * i).collect();
                pow(q, m * m) * prod(&ds, 1) / d
            }
            Family::OrthogonalPlusD | Family::OrthogonalMinus2D => {
                let ds: Vec<u32> = (1..m).map(|i| 2 * i).collect();
                pow(q, m * (m - 1)) * q_pow_minus(q, m, e) * prod(&ds, 1) / d
            }
            Family::G2 => pow(q, 6) * prod(&[2, 6], 1),
            Family::F4 => pow(q, 24) * prod(&[2, 6, 8, 12], 1),
            Family::E6 | Family::E6tw => pow(q, 36) * prod(&[2, 5, 6, 8, 9, 12], e) / d,
            Family::E7 => pow(q, 63) * prod(&[2, 6, 8, 10, 12, 14, 18], 1) / d,
            Family::E8 => pow(q, 120) * prod(&[2, 8, 12, 14, 18, 20, 24, 30], 1),
            Family::D4tri => pow(q, 12) * (pow(q, 8) + pow(q, 4) + 1u32) * prod(&[2, 6], 1),
            Family::F4tw => {
                pow(q, 12) * (pow(q, 6) + 1u32) * q_pow_minus(q, 4, 1) * (pow(q, 3) + 1u32) * q_pow_minus(q, 1, 1)
            }
            Family::G2tw => pow(q, 3) * (pow(q, 3) + 1u32) * (q - 1),
            Family::B2tw => pow(q, 2) * (pow(q, 2) + 1u32) * (q - 1),
        }
    }

    /// Order of the group `Ĝ` whose maximal tori are the `T̂` of
    /// [`torus_data`]: GLᵋ_n(q), Sp_n(q) or SOᵋ_n(q) for classical families,
    /// `G` itself for G₂ and ³D₄.
    pub fn hat_group_order(&self) -> BigUint {
        let d = big(self.adjoint_index());
        match self.family {
            Family::LinearA | Family::UnitaryA2 => {
                let qe = (BigInt::from(self.q()) - BigInt::from(self.epsilon()))
                    .to_biguint()
                    .unwrap();
                self.group_order() * d * qe
            }
            f if f.is_classical() => self.group_order() * d,
            _ => self.group_order(),
        }
    }

    pub fn weyl_order(&self) -> BigUint {
        let m = self.rank();
        match self.family {
            Family::LinearA | Family::UnitaryA2 => factorial(self.n as u64),
            Family::SymplecticC | Family::OrthogonalOddB => pow(2, m) * factorial(m as u64),
            Family::OrthogonalPlusD | Family::OrthogonalMinus2D | Family::D4tri => {
                let m = if self.family == Family::D4tri { 4 } else { m };
                pow(2, m - 1) * factorial(m as u64)
            }
            Family::G2 | Family::G2tw => big(12),
            Family::B2tw => big(8),
            Family::F4 | Family::F4tw => big(1152),
            Family::E6 | Family::E6tw => big(51840),
            Family::E7 => big(2903040),
            Family::E8 => big(696729600),
        }
    }

    /// Number of positive roots of the ambient algebraic group; also the
    /// number of reflections in its Weyl group.
    pub fn positive_root_count(&self) -> u64 {
        let m = self.rank() as u64;
        let n = self.n as u64;
        match self.family {
            Family::LinearA | Family::UnitaryA2 => n * (n - 1) / 2,
            Family::SymplecticC | Family::OrthogonalOddB => m * m,
            Family::OrthogonalPlusD | Family::OrthogonalMinus2D => m * (m - 1),
            Family::D4tri => 12,
            Family::G2 | Family::G2tw => 6,
            Family::B2tw => 4,
            Family::F4 | Family::F4tw => 24,
            Family::E6 | Family::E6tw => 36,
            Family::E7 => 63,
            Family::E8 => 120,
        }
    }

    pub fn reflection_count(&self) -> u64 {
        self.positive_root_count()
    }
}

impl fmt::Display for GroupSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.name())
    }
}

impl FromStr for GroupSpec {
    type Err = LieError;

    /// Parses names such as `L3(2)`, `U4(2)`, `S6(2)`, `O7(3)`, `O8+(2)`,
    /// `O8-(2)`, `G2(5)`, `3D4(2)`, `2E6(2)`.
    fn from_str(s: &str) -> Result<GroupSpec> {
        let err = || LieError::Parse(format!("cannot parse group name {s:?}"));
        let s = s.trim();
        let open = s.find('(').ok_or_else(err)?;
        let q: u64 = s[open + 1..]
            .strip_suffix(')')
            .ok_or_else(err)?
            .parse()
            .map_err(|_| err())?;
        let head = &s[..open];
        if let Some(fam) = Family::ALL
            .iter()
            .copied()
            .find(|f| !f.is_classical() && f.symbol() == head)
        {
            return GroupSpec::new(fam, 0, q);
        }
        let split = head.find(|c: char| c.is_ascii_digit()).ok_or_else(err)?;
        let (sym, rest) = head.split_at(split);
        let (digits, sign) = match rest.strip_suffix('+') {
            Some(d) => (d, "+"),
            None => match rest.strip_suffix('-') {
                Some(d) => (d, "-"),
                None => (rest, ""),
            },
        };
        let n: u32 = digits.parse().map_err(|_| err())?;
        let fam = Family::parse(&format!("{sym}{sign}")).ok_or_else(err)?;
        GroupSpec::new(fam, n, q)
    }
}

/// A partition, stored with its parts in descending order.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "Vec<u32>", into = "Vec<u32>")]
pub struct Partition(Vec<u32>);

impl Partition {
    pub fn new(mut parts: Vec<u32>) -> Result<Partition> {
        if parts.contains(&0) {
            return Err(LieError::Parse("partition parts must be positive".into()));
        }
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Ok(Partition(parts))
    }

    pub fn empty() -> Partition {
        Partition(Vec::new())
    }

    pub fn parts(&self) -> &[u32] {
        &self.0
    }

    pub fn size(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Part -> multiplicity.
    pub fn multiplicities(&self) -> BTreeMap<u32, u32> {
        let mut m = BTreeMap::new();
        for &p in &self.0 {
            *m.entry(p).or_insert(0) += 1;
        }
        m
    }

    pub fn all_even(&self) -> bool {
        self.0.iter().all(|p| p % 2 == 0)
    }

    /// Exponent notation, e.g. `3,1^2`.
    pub fn compact(&self) -> String {
        self.multiplicities()
            .iter()
            .rev()
            .map(|(&p, &k)| if k == 1 { p.to_string() } else { format!("{p}^{k}") })
            .collect::<Vec<_>>()
            .join(",")
    }
}

impl TryFrom<Vec<u32>> for Partition {
    type Error = LieError;
    fn try_from(v: Vec<u32>) -> Result<Partition> {
        Partition::new(v)
    }
}

impl From<Partition> for Vec<u32> {
    fn from(p: Partition) -> Vec<u32> {
        p.0
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s: Vec<String> = self.0.iter().map(|p| p.to_string()).collect();
        f.write_str(&s.join(","))
    }
}

impl FromStr for Partition {
    type Err = LieError;

    /// Comma-separated parts; `k^m` stands for `m` copies of `k`.
    fn from_str(s: &str) -> Result<Partition> {
        let mut parts = Vec::new();
        for tok in s.split(',').map(str::trim).filter(|t| !t.is_empty()) {
            let bad = || LieError::Parse(format!("bad partition part {tok:?}"));
            match tok.split_once('^') {
                Some((a, b)) => {
                    let a: u32 = a.parse().map_err(|_| bad())?;
                    let b: usize = b.parse().map_err(|_| bad())?;
                    parts.extend(std::iter::repeat(a).take(b));
                }
                None => parts.push(tok.parse().map_err(|_| bad())?),
            }
        }
        Partition::new(parts)
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SplitTag {
    #[default]
    None,
    Plus,
    Minus,
}

/// An F-class of maximal tori.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct TorusClass {
    pub lambda: Partition,
    pub mu: Partition,
    pub split: SplitTag,
    /// Position in the fixed list for G₂ and ³D₄; `lambda` and `mu` are empty.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub exceptional: Option<u8>,
}

impl TorusClass {
    pub fn linear(lambda: Partition) -> TorusClass {
        TorusClass {
            lambda,
            ..TorusClass::default()
        }
    }

    pub fn pair(lambda: Partition, mu: Partition) -> TorusClass {
        TorusClass {
            lambda,
            mu,
            ..TorusClass::default()
        }
    }

    pub fn with_split(mut self, split: SplitTag) -> TorusClass {
        self.split = split;
        self
    }

    pub fn exceptional(i: u8) -> TorusClass {
        TorusClass {
            exceptional: Some(i),
            ..TorusClass::default()
        }
    }
}

impl fmt::Display for TorusClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let Some(i) = self.exceptional {
            return write!(f, "#{i}");
        }
        write!(f, "{};{}", self.lambda, self.mu)?;
        match self.split {
            SplitTag::None => Ok(()),
            SplitTag::Plus => f.write_str("+"),
            SplitTag::Minus => f.write_str("-"),
        }
    }
}

impl FromStr for TorusClass {
    type Err = LieError;

    /// `λ;μ` with an optional trailing `+` or `-`, `λ` alone, or `#k`.
    fn from_str(s: &str) -> Result<TorusClass> {
        let s = s.trim();
        if let Some(k) = s.strip_prefix('#') {
            let i: u8 = k
                .parse()
                .map_err(|_| LieError::Parse(format!("bad torus index {k:?}")))?;
            return Ok(TorusClass::exceptional(i));
        }
        let (body, split) = if let Some(b) = s.strip_suffix('+') {
            (b, SplitTag::Plus)
        } else if let Some(b) = s.strip_suffix('-') {
            (b, SplitTag::Minus)
        } else {
            (s, SplitTag::None)
        };
        let (l, m) = body.split_once(';').unwrap_or((body, ""));
        Ok(TorusClass {
            lambda: l.parse()?,
            mu: m.parse()?,
            split,
            exceptional: None,
        })
    }
}

/// One cyclic factor of `T̂`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TorusFactor {
    pub label: String,
    pub order: BigUint,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TorusData {
    /// `|T|`, the torus of the simple group.
    pub torus_order: BigUint,
    /// `|R| = |C_{W,F}(w)|`.
    pub f_centralizer_order: BigUint,
    pub normaliser_order: BigUint,
    pub hat_torus_order: BigUint,
    pub hat_torus_factors: Vec<TorusFactor>,
}

/// Polynomials in `q`, coefficients from the constant term up.
struct ExcTorus {
    factors: &'static [&'static [i64]],
    r: u64,
}

const QM1: &[i64] = &[-1, 1];
const QP1: &[i64] = &[1, 1];
const Q3M1: &[i64] = &[-1, 0, 0, 1];
const Q3P1: &[i64] = &[1, 0, 0, 1];
const PHI3: &[i64] = &[1, 1, 1];
const PHI6: &[i64] = &[1, -1, 1];
const PHI12: &[i64] = &[1, 0, -1, 0, 1];

const G2_TORI: [ExcTorus; 6] = [
    ExcTorus {
        factors: &[QM1, QM1],
        r: 12,
    },
    ExcTorus {
        factors: &[QP1, QP1],
        r: 12,
    },
    ExcTorus {
        factors: &[QM1, QP1],
        r: 4,
    },
    ExcTorus {
        factors: &[QM1, QP1],
        r: 4,
    },
    ExcTorus { factors: &[PHI3], r: 6 },
    ExcTorus { factors: &[PHI6], r: 6 },
];

const D4TRI_TORI: [ExcTorus; 7] = [
    ExcTorus {
        factors: &[Q3M1, QM1],
        r: 12,
    },
    ExcTorus {
        factors: &[Q3P1, QP1],
        r: 12,
    },
    ExcTorus {
        factors: &[Q3M1, QP1],
        r: 4,
    },
    ExcTorus {
        factors: &[Q3P1, QM1],
        r: 4,
    },
    ExcTorus {
        factors: &[PHI3, PHI3],
        r: 24,
    },
    ExcTorus {
        factors: &[PHI6, PHI6],
        r: 24,
    },
    ExcTorus {
        factors: &[PHI12],
        r: 4,
    },
];

fn exceptional_tori(family: Family) -> Option<&'static [ExcTorus]> {
    match family {
        Family::G2 => Some(&G2_TORI),
        Family::D4tri => Some(&D4TRI_TORI),
        _ => None,
    }
}

fn poly_label(c: &[i64]) -> String {
    let mut s = String::new();
    for (i, &a) in c.iter().enumerate().rev() {
        if a == 0 {
            continue;
        }
        let mono = match i {
            0 => String::new(),
            1 => "q".to_string(),
            _ => format!("q^{i}"),
        };
        let mag = a.unsigned_abs();
        let body = if i == 0 || mag != 1 {
            format!("{mag}{mono}")
        } else {
            mono
        };
        if s.is_empty() {
            if a < 0 {
                s.push('-');
            }
        } else {
            s.push(if a < 0 { '-' } else { '+' });
        }
        s.push_str(&body);
    }
    s
}

fn poly_eval(c: &[i64], q: u64) -> BigUint {
    let q = BigInt::from(q);
    let mut v = BigInt::zero();
    for &a in c.iter().rev() {
        v = v * &q + BigInt::from(a);
    }
    v.to_biguint().expect("torus factor is positive")
}

/// All F-classes of maximal tori.
pub fn enumerate_torus_classes(spec: &GroupSpec) -> Result<Vec<TorusClass>> {
    if let Some(t) = exceptional_tori(spec.family) {
        return Ok((0..t.len() as u8).map(TorusClass::exceptional).collect());
    }
    let m = spec.rank();
    let mut out = Vec::new();
    match spec.family {
        Family::LinearA | Family::UnitaryA2 => {
            for l in crate::arith::partitions(spec.n) {
                out.push(TorusClass::linear(Partition(l)));
            }
        }
        Family::SymplecticC | Family::OrthogonalOddB | Family::OrthogonalPlusD | Family::OrthogonalMinus2D => {
            for k in (0..=m).rev() {
                for l in crate::arith::partitions(k) {
                    for u in crate::arith::partitions(m - k) {
                        let cls = TorusClass::pair(Partition(l.clone()), Partition(u));
                        match spec.family {
                            Family::OrthogonalPlusD if cls.mu.len() % 2 == 1 => {}
                            Family::OrthogonalMinus2D if cls.mu.len() % 2 == 0 => {}
                            Family::OrthogonalPlusD if is_split(&cls) => {
                                out.push(cls.clone().with_split(SplitTag::Plus));
                                out.push(cls.with_split(SplitTag::Minus));
                            }
                            _ => out.push(cls),
                        }
                    }
                }
            }
        }
        _ => {
            return Err(LieError::Unsupported(format!(
                "torus enumeration for {}; its tori enter only through the exceptional bound ledgers",
                spec
            )))
        }
    }
    Ok(out)
}

fn is_split(cls: &TorusClass) -> bool {
    cls.mu.is_empty() && cls.lambda.all_even()
}

/// `∏ (2ℓ)^{a_ℓ} a_ℓ!` over the parts of `λ` and of `μ`: the centraliser order
/// of a signed-cycle-type element of the hyperoctahedral group.
pub fn hyperoctahedral_centralizer(lambda: &Partition, mu: &Partition) -> BigUint {
    let mut c = BigUint::one();
    for p in [lambda, mu] {
        for (&l, &a) in &p.multiplicities() {
            c *= pow(2 * l as u64, a) * factorial(a as u64);
        }
    }
    c
}

/// `∏ ℓ^{a_ℓ} a_ℓ!`, the centraliser order in `S_n` of an element of cycle type `λ`.
pub fn symmetric_centralizer(lambda: &Partition) -> BigUint {
    lambda
        .multiplicities()
        .iter()
        .map(|(&l, &a)| pow(l as u64, a) * factorial(a as u64))
        .product()
}

fn check_class(spec: &GroupSpec, cls: &TorusClass) -> Result<()> {
    let bad = |reason: &str| {
        Err(LieError::InvalidClass {
            spec: spec.to_string(),
            reason: reason.to_string(),
        })
    };
    if let Some(t) = exceptional_tori(spec.family) {
        return match cls.exceptional {
            Some(i) if (i as usize) < t.len() && cls.lambda.is_empty() && cls.mu.is_empty() => Ok(()),
            _ => bad("expected an index into the fixed torus list"),
        };
    }
    if cls.exceptional.is_some() {
        return bad("indexed classes exist only for G2 and 3D4");
    }
    let m = spec.rank();
    match spec.family {
        Family::LinearA | Family::UnitaryA2 => {
            if !cls.mu.is_empty() || cls.lambda.size() != spec.n || cls.split != SplitTag::None {
                return bad("need a single partition of n");
            }
        }
        Family::SymplecticC | Family::OrthogonalOddB | Family::OrthogonalPlusD | Family::OrthogonalMinus2D => {
            if cls.lambda.size() + cls.mu.size() != m {
                return bad("need |lambda| + |mu| = m");
            }
            let parity = cls.mu.len() % 2;
            if spec.family == Family::OrthogonalPlusD && parity != 0 {
                return bad("mu must have an even number of parts");
            }
            if spec.family == Family::OrthogonalMinus2D && parity != 1 {
                return bad("mu must have an odd number of parts");
            }
            let needs_tag = spec.family == Family::OrthogonalPlusD && is_split(cls);
            if needs_tag != (cls.split != SplitTag::None) {
                return bad(if needs_tag {
                    "this class splits; give a + or - tag"
                } else {
                    "split tag only for D classes with mu empty and all parts even"
                });
            }
        }
        _ => {
            return Err(LieError::Unsupported(format!("torus data for {spec}")));
        }
    }
    Ok(())
}

fn power_label(l: u32, sign: char) -> String {
    if l == 1 {
        format!("q{sign}1")
    } else {
        format!("q^{l}{sign}1")
    }
}

/// `|T̂|`, `|T|`, `|R|` and `|N|` for a torus class.
pub fn torus_data(spec: &GroupSpec, cls: &TorusClass) -> Result<TorusData> {
    check_class(spec, cls)?;
    let q = spec.q();
    if let Some(t) = exceptional_tori(spec.family) {
        let e = &t[cls.exceptional.unwrap() as usize];
        let factors: Vec<TorusFactor> = e
            .factors
            .iter()
            .map(|c| TorusFactor {
                label: poly_label(c),
                order: poly_eval(c, q),
            })
            .collect();
        let hat: BigUint = factors.iter().map(|f| &f.order).product();
        let r = big(e.r);
        return Ok(TorusData {
            torus_order: hat.clone(),
            normaliser_order: &hat * &r,
            f_centralizer_order: r,
            hat_torus_order: hat,
            hat_torus_factors: factors,
        });
    }
    let mut factors = Vec::new();
    let mut push = |l: u32, plus: bool| {
        factors.push(TorusFactor {
            label: power_label(l, if plus { '+' } else { '-' }),
            order: q_pow_minus(q, l, if plus { -1 } else { 1 }),
        })
    };
    match spec.family {
        Family::LinearA => cls.lambda.parts().iter().for_each(|&l| push(l, false)),
        // substitute -q: |(-q)^ℓ - 1| = q^ℓ - (-1)^ℓ
        Family::UnitaryA2 => cls.lambda.parts().iter().for_each(|&l| push(l, l % 2 == 1)),
        _ => {
            cls.lambda.parts().iter().for_each(|&l| push(l, false));
            cls.mu.parts().iter().for_each(|&l| push(l, true));
        }
    }
    let hat: BigUint = factors.iter().map(|f| &f.order).product();
    let d = big(spec.adjoint_index());
    let (divisor, r) = match spec.family {
        Family::LinearA | Family::UnitaryA2 => {
            let qe = (BigInt::from(q) - BigInt::from(spec.epsilon())).to_biguint().unwrap();
            (qe * &d, symmetric_centralizer(&cls.lambda))
        }
        Family::SymplecticC | Family::OrthogonalOddB => (d, hyperoctahedral_centralizer(&cls.lambda, &cls.mu)),
        _ => {
            let c = hyperoctahedral_centralizer(&cls.lambda, &cls.mu);
            let r = if cls.split != SplitTag::None { c } else { c / 2u32 };
            (d, r)
        }
    };
    let (t, rem) = hat.div_rem(&divisor);
    if !rem.is_zero() {
        return Err(LieError::Construction(format!(
            "|T^| = {hat} is not divisible by {divisor} for {spec}, class {cls}"
        )));
    }
    Ok(TorusData {
        normaliser_order: &t * &r,
        torus_order: t,
        f_centralizer_order: r,
        hat_torus_order: hat,
        hat_torus_factors: factors,
    })
}

/// `Σ |Ĝ| / (|T̂| |R|)` over all F-classes. By Steinberg's theorem this is the
/// number of F-stable maximal tori, `q^{2N}` with `N` positive roots.
pub fn steinberg_sum(spec: &GroupSpec) -> Result<BigRational> {
    let g = BigInt::from(spec.hat_group_order());
    let mut s = BigRational::zero();
    for cls in enumerate_torus_classes(spec)? {
        let td = torus_data(spec, &cls)?;
        let den = BigInt::from(td.hat_torus_order * td.f_centralizer_order);
        s += BigRational::new(g.clone(), den);
    }
    Ok(s)
}

/// `Σ |W| / |R|` over all F-classes; equals `|W|` (twisted class equation).
pub fn weyl_class_sum(spec: &GroupSpec) -> Result<BigRational> {
    let w = BigInt::from(spec.weyl_order());
    let mut s = BigRational::zero();
    for cls in enumerate_torus_classes(spec)? {
        let r = torus_data(spec, &cls)?.f_centralizer_order;
        s += BigRational::new(w.clone(), BigInt::from(r));
    }
    Ok(s)
}
