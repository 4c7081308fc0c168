//! Exact arithmetic in `C*/Q*` and `C*/sqrt(Q*)`.
//!
//! A [`PeriodScalar`] is a formal product of generators with rational
//! exponents. A [`RelationSet`] is a finite list of products declared to be
//! rational; the classes they generate form a lattice in exponent space, and
//! [`RelationSet::reduce`] returns the canonical representative of a scalar
//! modulo that lattice.

pub mod cases;
mod sexpr;

pub use sexpr::parse_expr;

use crate::error::{Error, Result};
use crate::linalg::{common_denominator, IntLattice, Q};
use num::{BigInt, One, Signed, Zero};
use serde::{Deserialize, Serialize};
use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::ops::{Div, Mul};

/// Which complex embedding of the coefficient field an invariant refers to.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Embedding {
    Sigma,
    SigmaBar,
}

impl Embedding {
    pub fn conj(self) -> Self {
        match self {
            Embedding::Sigma => Embedding::SigmaBar,
            Embedding::SigmaBar => Embedding::Sigma,
        }
    }
}

/// A named period invariant such as `Q_3` or `detA` under an embedding.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Indeterminate {
    pub name: String,
    pub index: Option<i64>,
    pub emb: Option<Embedding>,
}

impl fmt::Display for Indeterminate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.name)?;
        if let Some(i) = self.index {
            write!(f, "_{i}")?;
        }
        match self.emb {
            Some(Embedding::Sigma) => f.write_str("@s"),
            Some(Embedding::SigmaBar) => f.write_str("@sb"),
            None => Ok(()),
        }
    }
}

/// Generator alphabet. The derived order puts indeterminates first, so the
/// canonical form eliminates them before the transcendental constants.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Generator {
    Ind(Indeterminate),
    /// The square root of `-1`.
    ImagUnit,
    Pi,
    /// The period `2 pi i` of the Tate motive.
    TwoPiI,
    /// `sqrt(D)` for the imaginary quadratic field `Q(sqrt(-D))`.
    SqrtD,
}

impl fmt::Display for Generator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Generator::Ind(x) => x.fmt(f),
            Generator::ImagUnit => f.write_str("i"),
            Generator::Pi => f.write_str("pi"),
            Generator::TwoPiI => f.write_str("twopii"),
            Generator::SqrtD => f.write_str("sqrtD"),
        }
    }
}

/// A formal product of generators with rational exponents.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct PeriodScalar {
    exps: BTreeMap<Generator, Q>,
}

impl PeriodScalar {
    pub fn one() -> Self {
        Self::default()
    }

    pub fn gen(g: Generator) -> Self {
        Self::gen_pow(g, Q::one())
    }

    pub fn gen_pow(g: Generator, e: Q) -> Self {
        let mut exps = BTreeMap::new();
        if !e.is_zero() {
            exps.insert(g, e);
        }
        PeriodScalar { exps }
    }

    pub fn pi() -> Self {
        Self::gen(Generator::Pi)
    }

    pub fn two_pi_i() -> Self {
        Self::gen(Generator::TwoPiI)
    }

    pub fn i() -> Self {
        Self::gen(Generator::ImagUnit)
    }

    pub fn sqrt_d() -> Self {
        Self::gen(Generator::SqrtD)
    }

    /// `sqrt(-D) = sqrt(D) * i`.
    pub fn sqrt_minus_d() -> Self {
        Self::sqrt_d() * Self::i()
    }

    /// An indeterminate with optional index and embedding.
    pub fn sym(name: &str, index: Option<i64>, emb: Option<Embedding>) -> Self {
        Self::gen(Generator::Ind(Indeterminate { name: name.to_string(), index, emb }))
    }

    pub fn exponent(&self, g: &Generator) -> Q {
        self.exps.get(g).cloned().unwrap_or_else(Q::zero)
    }

    pub fn exponents(&self) -> &BTreeMap<Generator, Q> {
        &self.exps
    }

    pub fn is_one(&self) -> bool {
        self.exps.is_empty()
    }

    fn add_exp(&mut self, g: Generator, e: &Q) {
        if e.is_zero() {
            return;
        }
        let entry = self.exps.entry(g.clone()).or_insert_with(Q::zero);
        *entry += e;
        if entry.is_zero() {
            self.exps.remove(&g);
        }
    }

    pub fn inv(&self) -> Self {
        self.pow(&-Q::one())
    }

    pub fn pow(&self, k: &Q) -> Self {
        if k.is_zero() {
            return Self::one();
        }
        PeriodScalar { exps: self.exps.iter().map(|(g, e)| (g.clone(), e * k)).collect() }
    }

    pub fn powi(&self, k: i64) -> Self {
        self.pow(&Q::from_integer(BigInt::from(k)))
    }

    /// Complex conjugation: swaps the two embeddings, inverts `i` and sends
    /// `2 pi i` to `-2 pi i = 2 pi i * i^2`.
    pub fn conj(&self) -> Self {
        let mut out = Self::one();
        for (g, e) in &self.exps {
            match g {
                Generator::Ind(x) => {
                    let y = Indeterminate { emb: x.emb.map(Embedding::conj), ..x.clone() };
                    out.add_exp(Generator::Ind(y), e);
                }
                Generator::ImagUnit => out.add_exp(Generator::ImagUnit, &-e.clone()),
                Generator::TwoPiI => {
                    out.add_exp(Generator::TwoPiI, e);
                    out.add_exp(Generator::ImagUnit, &(e * Q::from_integer(BigInt::from(2))));
                }
                Generator::Pi | Generator::SqrtD => out.add_exp(g.clone(), e),
            }
        }
        out
    }

    /// `|x|^2 = x * conj(x)`.
    pub fn abs_sq(&self) -> Self {
        self.clone() * self.conj()
    }

    pub fn generators(&self) -> impl Iterator<Item = &Generator> {
        self.exps.keys()
    }

    /// Exponent of `pi` after rewriting `2 pi i` as `pi * i`.
    pub fn pi_weight(&self) -> Q {
        self.exponent(&Generator::Pi) + self.exponent(&Generator::TwoPiI)
    }
}

impl Mul for PeriodScalar {
    type Output = PeriodScalar;
    fn mul(mut self, rhs: PeriodScalar) -> PeriodScalar {
        for (g, e) in rhs.exps {
            self.add_exp(g, &e);
        }
        self
    }
}

impl Mul<&PeriodScalar> for &PeriodScalar {
    type Output = PeriodScalar;
    fn mul(self, rhs: &PeriodScalar) -> PeriodScalar {
        self.clone() * rhs.clone()
    }
}

impl Div for PeriodScalar {
    type Output = PeriodScalar;
    fn div(self, rhs: PeriodScalar) -> PeriodScalar {
        self * rhs.inv()
    }
}

impl std::iter::Product for PeriodScalar {
    fn product<I: Iterator<Item = PeriodScalar>>(iter: I) -> Self {
        iter.fold(PeriodScalar::one(), |a, b| a * b)
    }
}

impl fmt::Display for PeriodScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.exps.is_empty() {
            return f.write_str("1");
        }
        let parts: Vec<String> = self
            .exps
            .iter()
            .map(|(g, e)| if e.is_one() { g.to_string() } else { format!("{g}^{e}") })
            .collect();
        f.write_str(&parts.join(" * "))
    }
}

/// Equivalence modulo rational numbers or modulo square roots of rationals.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Modulus {
    Q,
    SqrtQ,
}

/// A labelled product declared rational.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Relation {
    pub label: String,
    pub value: PeriodScalar,
}

/// A conjugation-closed set of relations `x ~ 1 (mod Q*)` and the lattice
/// of exponent vectors they span.
#[derive(Clone, Debug)]
pub struct RelationSet {
    relations: Vec<Relation>,
    columns: Vec<Generator>,
    scale: BigInt,
    lattice: IntLattice,
}

impl RelationSet {
    /// Relations that hold for every case: `i^2`, `2 pi i = pi * i` and
    /// `sqrt(D)^2` are rational.
    pub fn builtins() -> Vec<Relation> {
        vec![
            Relation { label: "i^2".into(), value: PeriodScalar::i().powi(2) },
            Relation {
                label: "2pi*i = pi*i".into(),
                value: PeriodScalar::two_pi_i() / (PeriodScalar::pi() * PeriodScalar::i()),
            },
            Relation { label: "sqrtD^2".into(), value: PeriodScalar::sqrt_d().powi(2) },
        ]
    }

    /// Builds the set from `relations` plus the builtins, closing it under
    /// conjugation. Fails if the relations force `pi` to be algebraic.
    pub fn new(relations: Vec<Relation>) -> Result<Self> {
        let mut all = Self::builtins();
        all.extend(relations);
        let conjugates: Vec<Relation> = all
            .iter()
            .map(|r| Relation { label: format!("conj({})", r.label), value: r.value.conj() })
            .filter(|c| !all.iter().any(|r| r.value == c.value))
            .collect();
        all.extend(conjugates);

        let columns: Vec<Generator> = all
            .iter()
            .flat_map(|r| r.value.generators().cloned())
            .chain([Generator::Pi])
            .collect::<BTreeSet<_>>()
            .into_iter()
            .collect();
        let scale = common_denominator(all.iter().flat_map(|r| r.value.exps.values()));
        let gens: Vec<Vec<BigInt>> = all
            .iter()
            .map(|r| {
                columns
                    .iter()
                    .map(|g| (r.value.exponent(g) * Q::from_integer(scale.clone())).to_integer())
                    .collect()
            })
            .collect();
        let lattice = IntLattice::new(&gens, columns.len());
        let set = RelationSet { relations: all, columns, scale, lattice };
        let pi_vec = set.vector(&PeriodScalar::pi());
        if set.lattice.in_rational_span(&pi_vec) {
            return Err(Error::InconsistentRelations(
                "the relations imply that a power of pi is rational".into(),
            ));
        }
        Ok(set)
    }

    pub fn relations(&self) -> &[Relation] {
        &self.relations
    }

    fn vector(&self, x: &PeriodScalar) -> Vec<Q> {
        let s = Q::from_integer(self.scale.clone());
        self.columns.iter().map(|g| x.exponent(g) * &s).collect()
    }

    fn split(&self, x: &PeriodScalar) -> (Vec<Q>, PeriodScalar) {
        let mut rest = x.clone();
        for g in &self.columns {
            rest.exps.remove(g);
        }
        (self.vector(x), rest)
    }

    fn unvector(&self, v: &[Q], divisor: &Q) -> PeriodScalar {
        let s = Q::from_integer(self.scale.clone()) * divisor;
        let mut out = PeriodScalar::one();
        for (g, e) in self.columns.iter().zip(v) {
            out.add_exp(g.clone(), &(e / &s));
        }
        out
    }

    /// Canonical representative of `x` modulo the relations.
    pub fn reduce(&self, x: &PeriodScalar, modulus: Modulus) -> PeriodScalar {
        let factor = match modulus {
            Modulus::Q => Q::one(),
            Modulus::SqrtQ => Q::from_integer(BigInt::from(2)),
        };
        let (v, rest) = self.split(&x.pow(&factor));
        let (reduced, _) = self.lattice.reduce(&v);
        let mut out = self.unvector(&reduced, &factor);
        let inv = factor.recip();
        for (g, e) in rest.exps {
            out.add_exp(g, &(e * &inv));
        }
        out
    }

    pub fn is_trivial(&self, x: &PeriodScalar, modulus: Modulus) -> bool {
        self.reduce(x, modulus).is_one()
    }

    pub fn equivalent(&self, a: &PeriodScalar, b: &PeriodScalar, modulus: Modulus) -> bool {
        self.is_trivial(&(a.clone() / b.clone()), modulus)
    }

    /// Integer combination of relations whose product is `x`, if `x` is
    /// trivial modulo `Q*`. Entries follow [`RelationSet::relations`].
    pub fn certificate(&self, x: &PeriodScalar) -> Option<Vec<BigInt>> {
        let (v, rest) = self.split(x);
        if !rest.is_one() {
            return None;
        }
        self.lattice.express(&v)
    }
}

/// Folds the relation between an `L`-value, Betti and Hodge volumes into the
/// motivic volume: `lstar * vol_hb / vol_f1`.
pub fn beilinson_volume(
    lstar: &PeriodScalar,
    vol_hb: &PeriodScalar,
    vol_f1: &PeriodScalar,
) -> PeriodScalar {
    lstar * vol_hb / vol_f1.clone()
}

/// Whether every exponent of `x` has denominator dividing 2.
pub fn has_half_integral_exponents(x: &PeriodScalar) -> bool {
    x.exps.values().all(|e| (e * Q::from_integer(BigInt::from(2))).is_integer())
}

/// Sign of the leading exponent, used only to make outputs deterministic.
pub fn leading_sign(x: &PeriodScalar) -> i8 {
    x.exps.values().next().map_or(0, |e| if e.is_negative() { -1 } else { 1 })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{q, qi};

    fn qs(p: i64) -> PeriodScalar {
        PeriodScalar::sym("Q", Some(p), Some(Embedding::Sigma))
    }

    #[test]
    fn conjugation_swaps_embeddings() {
        let x = qs(2);
        assert_eq!(x.conj(), PeriodScalar::sym("Q", Some(2), Some(Embedding::SigmaBar)));
        assert_eq!(x.conj().conj(), x);
    }

    #[test]
    fn rational_constants_vanish() {
        let rels = RelationSet::new(vec![]).unwrap();
        assert!(rels.is_trivial(&PeriodScalar::i().powi(4), Modulus::Q));
        assert!(rels.is_trivial(&PeriodScalar::two_pi_i().abs_sq().div(PeriodScalar::pi().powi(2)), Modulus::Q));
        assert!(!rels.is_trivial(&PeriodScalar::pi(), Modulus::SqrtQ));
    }

    #[test]
    fn half_power_of_pi_survives() {
        let rels = RelationSet::new(vec![]).unwrap();
        let x = PeriodScalar::pi().pow(&q(1, 2));
        assert_eq!(rels.reduce(&x, Modulus::Q), x);
        assert_eq!(rels.reduce(&x, Modulus::SqrtQ), x);
    }

    #[test]
    fn square_root_classes() {
        let delta = PeriodScalar::sym("Delta", None, Some(Embedding::Sigma));
        let rels = RelationSet::new(vec![Relation { label: "norm".into(), value: delta.abs_sq() }]).unwrap();
        let x = delta.abs_sq().pow(&q(1, 2));
        assert!(rels.is_trivial(&x, Modulus::SqrtQ));
        assert!(rels.is_trivial(&PeriodScalar::sqrt_d(), Modulus::SqrtQ));
        assert!(!rels.is_trivial(&PeriodScalar::sqrt_d(), Modulus::Q));
    }

    #[test]
    fn inconsistent_relations_are_rejected() {
        let bad = Relation { label: "pi rational".into(), value: PeriodScalar::pi().pow(&qi(3)) };
        assert!(matches!(RelationSet::new(vec![bad]), Err(Error::InconsistentRelations(_))));
    }

    #[test]
    fn beilinson_volume_is_plumbing() {
        let one = PeriodScalar::one();
        assert_eq!(beilinson_volume(&one, &one, &one), one);
        let pi = PeriodScalar::pi();
        assert_eq!(beilinson_volume(&pi.powi(-2), &one, &pi.powi(-1)), pi.powi(-1));
    }
}
