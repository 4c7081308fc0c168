//! Pure Hodge structures with the action of complex conjugation on the
//! middle piece, and the functorial operations needed for Gamma factors and
//! Deligne periods.

use crate::case::Case;
use crate::error::{Error, Result};
use crate::linalg::{q, Q};
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;
use std::fmt;

/// Field of coefficients of a Hodge structure.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Coeff {
    /// Rational coefficients; `F_inf` data on the middle piece is tracked.
    Q,
    /// Coefficients in an imaginary quadratic field; `F_inf` is not an
    /// endomorphism, so the middle-piece eigenvalue counts stay zero.
    E,
}

/// Which factor of a pair of motives.
pub use crate::periodring::cases::Factor;

/// The type of bilinear form preserved by the group whose adjoint is taken.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Pairing {
    Linear,
    Orthogonal,
    Symplectic,
}

/// A pure Hodge structure of weight `w`, recorded as Hodge numbers together
/// with the eigenvalue multiplicities of `F_inf` on `H^{w/2,w/2}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct HodgeStructure {
    pub weight: i64,
    pub mult: BTreeMap<(i64, i64), u64>,
    pub fplus: u64,
    pub fminus: u64,
    pub coeff: Coeff,
}

/// Dimensions of the `F_inf` eigenspaces and the Hodge filtration steps
/// entering Deligne's periods `c^+` and `c^-`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DeligneData {
    pub dplus: u64,
    pub dminus: u64,
    pub pplus: Q,
    pub pminus: Q,
}

impl HodgeStructure {
    /// Builds and validates a Hodge structure.
    pub fn new(
        weight: i64,
        mult: impl IntoIterator<Item = ((i64, i64), u64)>,
        fplus: u64,
        fminus: u64,
        coeff: Coeff,
    ) -> Result<Self> {
        let mut m = BTreeMap::new();
        for (k, v) in mult {
            if v > 0 {
                *m.entry(k).or_insert(0) += v;
            }
        }
        let h = HodgeStructure { weight, mult: m, fplus, fminus, coeff };
        h.validate()?;
        Ok(h)
    }

    fn validate(&self) -> Result<()> {
        for (&(p, qq), &v) in &self.mult {
            if p + qq != self.weight {
                return Err(Error::Invalid(format!("type ({p},{qq}) in weight {}", self.weight)));
            }
            if self.get(qq, p) != v {
                return Err(Error::Invalid(format!("Hodge symmetry fails at ({p},{qq})")));
            }
        }
        let mid = self.middle();
        match self.coeff {
            Coeff::Q if self.fplus + self.fminus != mid => Err(Error::Invalid(format!(
                "F_inf eigenvalue counts {}+{} differ from middle dimension {mid}",
                self.fplus, self.fminus
            ))),
            Coeff::E if self.fplus + self.fminus != 0 => {
                Err(Error::Invalid("E-structures carry no F_inf data".into()))
            }
            _ => Ok(()),
        }
    }

    /// The unit structure `Q(0)` or `E(0)`.
    pub fn unit(coeff: Coeff) -> Self {
        let f = u64::from(coeff == Coeff::Q);
        HodgeStructure { weight: 0, mult: BTreeMap::from([((0, 0), 1)]), fplus: f, fminus: 0, coeff }
    }

    pub fn get(&self, p: i64, qq: i64) -> u64 {
        self.mult.get(&(p, qq)).copied().unwrap_or(0)
    }

    pub fn rank(&self) -> u64 {
        self.mult.values().sum()
    }

    /// Dimension of `H^{w/2,w/2}`, zero for odd weight.
    pub fn middle(&self) -> u64 {
        if self.weight % 2 == 0 {
            self.get(self.weight / 2, self.weight / 2)
        } else {
            0
        }
    }

    /// Hodge numbers with the `F_inf` data dropped.
    pub fn multiset(&self) -> &BTreeMap<(i64, i64), u64> {
        &self.mult
    }

    pub fn dual(&self) -> Self {
        HodgeStructure {
            weight: -self.weight,
            mult: self.mult.iter().map(|(&(p, qq), &v)| ((-p, -qq), v)).collect(),
            ..self.clone()
        }
    }

    /// Tate twist by `j`: types shift by `(-j,-j)` and `F_inf` picks up
    /// `(-1)^j`.
    pub fn tate_twist(&self, j: i64) -> Self {
        let (fplus, fminus) =
            if j.rem_euclid(2) == 1 { (self.fminus, self.fplus) } else { (self.fplus, self.fminus) };
        HodgeStructure {
            weight: self.weight - 2 * j,
            mult: self.mult.iter().map(|(&(p, qq), &v)| ((p - j, qq - j), v)).collect(),
            fplus,
            fminus,
            coeff: self.coeff,
        }
    }

    pub fn tensor(&self, other: &Self) -> Result<Self> {
        if self.coeff != other.coeff {
            return Err(Error::Invalid("tensor of structures over different fields".into()));
        }
        let weight = self.weight + other.weight;
        let mut mult = BTreeMap::new();
        for (&(p, qq), &a) in &self.mult {
            for (&(r, s), &b) in &other.mult {
                *mult.entry((p + r, qq + s)).or_insert(0) += a * b;
            }
        }
        let (mut fplus, mut fminus) = (0, 0);
        if self.coeff == Coeff::Q && weight % 2 == 0 {
            let h = weight / 2;
            // Products of two middle vectors keep the sign of F_inf; every
            // other contribution is swapped with its conjugate type.
            let both = self.middle() * other.middle();
            let swapped = mult.get(&(h, h)).copied().unwrap_or(0) - both;
            fplus = self.fplus * other.fplus + self.fminus * other.fminus;
            fminus = self.fplus * other.fminus + self.fminus * other.fplus;
            fplus += swapped / 2;
            fminus += swapped / 2;
        }
        HodgeStructure::new(weight, mult, fplus, fminus, self.coeff)
    }

    /// Symmetric or alternating square, untwisted.
    pub fn square(&self, alternating: bool) -> Result<Self> {
        let weight = 2 * self.weight;
        let types: Vec<((i64, i64), u64)> = self.mult.iter().map(|(&k, &v)| (k, v)).collect();
        let mut mult = BTreeMap::new();
        for (i, &((p, qq), a)) in types.iter().enumerate() {
            let same = if alternating { a * a.saturating_sub(1) / 2 } else { a * (a + 1) / 2 };
            *mult.entry((2 * p, 2 * qq)).or_insert(0) += same;
            for &((r, s), b) in &types[i + 1..] {
                *mult.entry((p + r, qq + s)).or_insert(0) += a * b;
            }
        }
        let (mut fplus, mut fminus) = (0, 0);
        if self.coeff == Coeff::Q {
            let w = self.weight;
            for (&(p, qq), &m) in &self.mult {
                if p > qq {
                    // `a_i * b_j` with `b = F_inf a`: conjugation fixes the m
                    // products with i = j up to the sign of the square, and
                    // swaps the rest in pairs.
                    let pairs = (m * m - m) / 2;
                    if alternating {
                        fplus += pairs;
                        fminus += pairs + m;
                    } else {
                        fplus += pairs + m;
                        fminus += pairs;
                    }
                }
            }
            if w % 2 == 0 {
                let (a, b) = (self.fplus, self.fminus);
                let c2 = |x: u64| x * x.saturating_sub(1) / 2;
                if alternating {
                    fplus += c2(a) + c2(b);
                } else {
                    fplus += c2(a + 1) + c2(b + 1);
                }
                fminus += a * b;
            }
        }
        HodgeStructure::new(weight, mult, fplus, fminus, self.coeff)
    }

    /// Adjoint motive: for a linear group `M x M^dual` minus a trivial
    /// summand, for orthogonal and symplectic groups the alternating and
    /// symmetric square twisted to weight zero.
    pub fn adjoint(&self, pairing: Pairing) -> Result<Self> {
        match pairing {
            Pairing::Linear => {
                let mut t = self.tensor(&self.dual())?;
                let e = t.mult.get_mut(&(0, 0)).filter(|v| **v > 0).ok_or_else(|| {
                    Error::Invalid("adjoint of an empty structure".into())
                })?;
                *e -= 1;
                if *e == 0 {
                    t.mult.remove(&(0, 0));
                }
                if t.coeff == Coeff::Q {
                    t.fplus -= 1;
                }
                Ok(t)
            }
            Pairing::Orthogonal | Pairing::Symplectic => {
                if pairing == Pairing::Orthogonal && self.weight % 2 != 0 {
                    return Err(Error::Invalid("orthogonal pairing needs even weight".into()));
                }
                if pairing == Pairing::Symplectic && (self.weight % 2 == 0 || !self.rank().is_multiple_of(2)) {
                    return Err(Error::Invalid(
                        "symplectic pairing needs odd weight and even rank".into(),
                    ));
                }
                Ok(self.square(pairing == Pairing::Orthogonal)?.tate_twist(self.weight))
            }
        }
    }

    /// Restriction of scalars from `E` to `Q`: each type appears for both
    /// embeddings and complex conjugation swaps the two copies.
    pub fn restrict_scalars(&self) -> Result<Self> {
        if self.coeff != Coeff::E {
            return Err(Error::Invalid("restriction of scalars needs an E-structure".into()));
        }
        let mid = self.middle();
        HodgeStructure::new(
            self.weight,
            self.mult.iter().map(|(&k, &v)| (k, 2 * v)),
            mid,
            mid,
            Coeff::Q,
        )
    }

    /// Sign `epsilon` of `F_inf` on the middle piece: `Some(1)`, `Some(-1)`,
    /// or `None` if the piece is absent.
    pub fn epsilon(&self) -> Result<Option<i64>> {
        if self.coeff != Coeff::Q {
            return Err(Error::Invalid("E-structure: restrict scalars first".into()));
        }
        match (self.fplus, self.fminus) {
            (0, 0) => Ok(None),
            (_, 0) => Ok(Some(1)),
            (0, _) => Ok(Some(-1)),
            (a, b) => Err(Error::DeligneViolated(format!(
                "F_inf acts on the middle piece with eigenvalue counts +{a}, -{b}"
            ))),
        }
    }

    /// `d^+`, `d^-` and the filtration steps `p^+`, `p^-`.
    pub fn deligne_data(&self) -> Result<DeligneData> {
        let eps = self.epsilon()?;
        let off: u64 = self.mult.iter().filter(|(&(p, qq), _)| p > qq).map(|(_, &v)| v).sum();
        let base = q(self.weight - 1, 2);
        let shift = q(eps.unwrap_or(0), 2);
        Ok(DeligneData {
            dplus: off + self.fplus,
            dminus: off + self.fminus,
            pplus: &base - &shift,
            pminus: base + shift,
        })
    }

    /// Dimension of `H / F^p`, i.e. the sum of Hodge numbers `h^{a,b}` with
    /// `a < p`.
    pub fn dim_below(&self, p: &Q) -> u64 {
        self.mult
            .iter()
            .filter(|(&(a, _), _)| Q::from_integer(a.into()) < *p)
            .map(|(_, &v)| v)
            .sum()
    }
}

impl fmt::Display for HodgeStructure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&multiset_string(&self.mult))?;
        if self.coeff == Coeff::Q && self.middle() > 0 {
            write!(f, " [F+={} F-={}]", self.fplus, self.fminus)?;
        }
        Ok(())
    }
}

/// Renders Hodge numbers as `(p,q)^m` terms in decreasing `p`.
pub fn multiset_string(mult: &BTreeMap<(i64, i64), u64>) -> String {
    let parts: Vec<String> = mult
        .iter()
        .rev()
        .filter(|(_, &v)| v > 0)
        .map(|(&(p, qq), &v)| format!("({p},{qq})^{v}"))
        .collect();
    if parts.is_empty() {
        "0".into()
    } else {
        parts.join(" ")
    }
}

/// Hodge structure of weight `w` with one copy of each `(w-k, k)` and the
/// middle piece of dimension `middle`.
fn chain(w: i64, middle: u64, fplus: u64, fminus: u64, coeff: Coeff) -> Result<HodgeStructure> {
    let mult = (0..=w).map(|k| ((w - k, k), if 2 * k == w { middle } else { 1 }));
    let (fp, fm) = if coeff == Coeff::E { (0, 0) } else { (fplus, fminus) };
    HodgeStructure::new(w, mult, fp, fm, coeff)
}

/// Standard motive attached to a factor of the pair. For `PGL_Q` the flag
/// `psi` twists by a quadratic character of sign `-1`, which flips `F_inf` on
/// the middle piece; the untwisted structure has `F_inf = +1` there.
pub fn standard_motive(case: Case, n: i64, factor: Factor, psi: bool) -> Result<HodgeStructure> {
    if n < 1 {
        return Err(Error::Invalid(format!("rank parameter n = {n} must be positive")));
    }
    let coeff = if case.over_e() { Coeff::E } else { Coeff::Q };
    if psi && case != Case::PglQ {
        return Err(Error::Invalid("the psi twist is only defined for pgl-q".into()));
    }
    match (case, factor) {
        (Case::PglQ | Case::PglE, f) => {
            let w = if f == Factor::M { n - 1 } else { n };
            let (fp, fm) = match (w % 2 == 0, psi) {
                (false, _) => (0, 0),
                (true, false) => (1, 0),
                (true, true) => (0, 1),
            };
            chain(w, 1, fp, fm, coeff)
        }
        (Case::SoEven, Factor::M) => chain(2 * n - 2, 2, 0, 0, coeff),
        (Case::SoOdd, Factor::M) => chain(2 * n, 2, 0, 0, coeff),
        (Case::SoEven | Case::SoOdd, Factor::N) => chain(2 * n - 1, 0, 0, 0, coeff),
    }
}

/// The pairing preserved by the dual group of the given factor.
pub fn pairing(case: Case, factor: Factor) -> Pairing {
    match (case, factor) {
        (Case::PglQ | Case::PglE, _) => Pairing::Linear,
        (_, Factor::M) => Pairing::Orthogonal,
        (_, Factor::N) => Pairing::Symplectic,
    }
}

/// `Ad` of the standard motive of a factor.
pub fn adjoint_motive(case: Case, n: i64, factor: Factor) -> Result<HodgeStructure> {
    standard_motive(case, n, factor, false)?.adjoint(pairing(case, factor))
}

/// Brute-force reference for the functorial operations: a structure is an
/// explicit basis of Hodge-typed vectors on which `F_inf` acts by a signed
/// permutation, and tensor products and squares are formed by enumerating
/// basis products.
pub mod oracle {
    use super::{Coeff, HodgeStructure, Pairing};
    use crate::error::{Error, Result};
    use std::collections::BTreeMap;

    /// Basis vectors with their types, and `F_inf e_i = sign[i] e_{perm[i]}`.
    #[derive(Clone, Debug)]
    pub struct ExplicitHodge {
        pub weight: i64,
        pub coeff: Coeff,
        pub types: Vec<(i64, i64)>,
        pub perm: Vec<usize>,
        pub sign: Vec<i64>,
    }

    impl ExplicitHodge {
        /// A basis `a_i`, `F_inf a_i` for each type `(p, q)` with `p > q`,
        /// and middle vectors with `F_inf = +1` then `-1`.
        pub fn from_structure(h: &HodgeStructure) -> Self {
            let mut e = ExplicitHodge { weight: h.weight, coeff: h.coeff, types: vec![], perm: vec![], sign: vec![] };
            for (&(p, qq), &m) in &h.mult {
                if p > qq {
                    for _ in 0..m {
                        let i = e.types.len();
                        e.types.extend([(p, qq), (qq, p)]);
                        e.perm.extend([i + 1, i]);
                        e.sign.extend([1, 1]);
                    }
                }
            }
            let h2 = h.weight / 2;
            let mid = h.mult.get(&(h2, h2)).copied().unwrap_or(0);
            let (plus, minus) = if h.coeff == Coeff::Q { (h.fplus, h.fminus) } else { (mid, 0) };
            for s in std::iter::repeat_n(1, plus as usize).chain(std::iter::repeat_n(-1, minus as usize)) {
                e.perm.push(e.types.len());
                e.types.push((h2, h2));
                e.sign.push(s);
            }
            e
        }

        /// Hodge numbers and `F_inf` eigenvalue counts on the middle piece,
        /// read off from the orbits of the signed permutation.
        pub fn to_structure(&self) -> Result<HodgeStructure> {
            let mut mult = BTreeMap::new();
            for &t in &self.types {
                *mult.entry(t).or_insert(0u64) += 1;
            }
            let (mut fplus, mut fminus) = (0, 0);
            if self.coeff == Coeff::Q {
                for (i, &(p, qq)) in self.types.iter().enumerate() {
                    if p != qq {
                        continue;
                    }
                    let j = self.perm[i];
                    if j == i {
                        if self.sign[i] == 1 {
                            fplus += 1;
                        } else {
                            fminus += 1;
                        }
                    } else if i < j {
                        fplus += 1;
                        fminus += 1;
                    }
                }
            }
            HodgeStructure::new(self.weight, mult, fplus, fminus, self.coeff)
        }

        pub fn dual(&self) -> Self {
            ExplicitHodge { weight: -self.weight, types: self.types.iter().map(|&(p, qq)| (-p, -qq)).collect(), ..self.clone() }
        }

        pub fn tensor(&self, o: &Self) -> Self {
            let n = o.types.len();
            let mut e = ExplicitHodge { weight: self.weight + o.weight, coeff: self.coeff, types: vec![], perm: vec![], sign: vec![] };
            for i in 0..self.types.len() {
                for j in 0..n {
                    e.types.push((self.types[i].0 + o.types[j].0, self.types[i].1 + o.types[j].1));
                    e.perm.push(self.perm[i] * n + o.perm[j]);
                    e.sign.push(self.sign[i] * o.sign[j]);
                }
            }
            e
        }

        /// Symmetric (`alternating = false`) or exterior square.
        pub fn square(&self, alternating: bool) -> Self {
            let n = self.types.len();
            let pairs: Vec<(usize, usize)> =
                (0..n).flat_map(|i| (i..n).map(move |j| (i, j))).filter(|&(i, j)| !alternating || i < j).collect();
            let index: BTreeMap<(usize, usize), usize> = pairs.iter().enumerate().map(|(k, &p)| (p, k)).collect();
            let mut e = ExplicitHodge { weight: 2 * self.weight, coeff: self.coeff, types: vec![], perm: vec![], sign: vec![] };
            for &(i, j) in &pairs {
                let (a, b) = (self.perm[i], self.perm[j]);
                let mut s = self.sign[i] * self.sign[j];
                let key = if a <= b { (a, b) } else { (b, a) };
                if alternating && a > b {
                    s = -s;
                }
                e.types.push((self.types[i].0 + self.types[j].0, self.types[i].1 + self.types[j].1));
                e.perm.push(index[&key]);
                e.sign.push(s);
            }
            e
        }

        /// Twist by `Q(j)`: types shift by `(-j, -j)`, signs by `(-1)^j`.
        pub fn twist(&self, j: i64) -> Self {
            let s = if j.rem_euclid(2) == 1 { -1 } else { 1 };
            ExplicitHodge {
                weight: self.weight - 2 * j,
                types: self.types.iter().map(|&(p, qq)| (p - j, qq - j)).collect(),
                sign: self.sign.iter().map(|x| x * s).collect(),
                ..self.clone()
            }
        }
    }

    /// Adjoint by enumeration: `M x M^dual` less the trace line, or the
    /// exterior / symmetric square twisted to weight zero.
    pub fn adjoint(h: &HodgeStructure, pairing: Pairing) -> Result<HodgeStructure> {
        let e = ExplicitHodge::from_structure(h);
        match pairing {
            Pairing::Linear => {
                let t = e.tensor(&e.dual()).to_structure()?;
                let mut mult = t.mult.clone();
                let v = mult.get_mut(&(0, 0)).ok_or_else(|| Error::Invalid("no trace line".into()))?;
                *v -= 1;
                let fplus = if t.coeff == Coeff::Q { t.fplus - 1 } else { 0 };
                HodgeStructure::new(0, mult, fplus, t.fminus, t.coeff)
            }
            Pairing::Orthogonal => e.square(true).twist(h.weight).to_structure(),
            Pairing::Symplectic => e.square(false).twist(h.weight).to_structure(),
        }
    }

    pub fn tensor(a: &HodgeStructure, b: &HodgeStructure) -> Result<HodgeStructure> {
        ExplicitHodge::from_structure(a).tensor(&ExplicitHodge::from_structure(b)).to_structure()
    }
}
