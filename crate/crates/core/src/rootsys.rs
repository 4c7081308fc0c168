//! Root systems, Weyl groups and invariants of the real groups that occur as
//! archimedean components: dimensions and ranks of `G` and its maximal
//! compact `K`, the defect `delta`, the minimal tempered degree `q`, Weyl
//! indices checked against chamber enumeration, Macdonald volumes, and the
//! constant relating the dual of the trace form on a fundamental Cartan
//! subalgebra to the trace form of the dual group.

use crate::error::{Error, Result};
use crate::linalg::{q, qi, Mat, Q};
use crate::periodring::PeriodScalar;
use num::complex::Complex;
use num::Zero;
use serde::Serialize;
use std::collections::{HashSet, VecDeque};
use std::fmt;

/// Cartan-Killing type of a root system. `F4Dual` is `F4` with long and
/// short roots exchanged, written in coordinates containing `C4`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum RootType {
    A,
    B,
    C,
    D,
    BC,
    G2,
    F4,
    F4Dual,
    E6,
    E7,
    E8,
}

/// A (possibly reducible, possibly non-reduced) root system in Euclidean
/// coordinates. Coordinates are stored doubled so every root of `E8` is
/// integral.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RootSystem {
    pub dim: usize,
    pub rank: usize,
    pub roots: Vec<Vec<i64>>,
}

fn dot(a: &[i64], b: &[i64]) -> i64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

fn unit(dim: usize, i: usize, c: i64) -> Vec<i64> {
    let mut v = vec![0; dim];
    v[i] = c;
    v
}

fn pm_pairs(dim: usize, range: std::ops::Range<usize>) -> Vec<Vec<i64>> {
    let mut out = Vec::new();
    for i in range.clone() {
        for j in range.clone() {
            if i < j {
                for (a, b) in [(2, 2), (2, -2), (-2, 2), (-2, -2)] {
                    let mut v = vec![0; dim];
                    v[i] = a;
                    v[j] = b;
                    out.push(v);
                }
            }
        }
    }
    out
}

fn sign_vectors(dim: usize, even_minus: Option<bool>) -> Vec<Vec<i64>> {
    (0..1u32 << dim)
        .filter(|mask| even_minus.is_none_or(|e| (mask.count_ones() % 2 == 0) == e))
        .map(|mask| (0..dim).map(|i| if mask >> i & 1 == 1 { -1 } else { 1 }).collect())
        .collect()
}

impl RootSystem {
    fn from_roots(dim: usize, roots: Vec<Vec<i64>>) -> Self {
        let rows: Vec<Vec<Q>> = roots.iter().map(|r| r.iter().map(|&x| qi(x)).collect()).collect();
        let rank = if rows.is_empty() { 0 } else { Mat::from_rows(rows).rank() };
        RootSystem { dim, rank, roots }
    }

    /// The root system of type `t` and rank `n` in standard coordinates.
    pub fn new(t: RootType, n: usize) -> Result<Self> {
        let bad = || Error::UnsupportedGroup(format!("root system {t:?}{n}"));
        Ok(match t {
            RootType::A => {
                let d = n + 1;
                let mut roots = Vec::new();
                for i in 0..d {
                    for j in 0..d {
                        if i != j {
                            let mut v = vec![0; d];
                            v[i] = 2;
                            v[j] = -2;
                            roots.push(v);
                        }
                    }
                }
                Self::from_roots(d, roots)
            }
            RootType::B | RootType::C | RootType::D | RootType::BC => {
                let mut roots = pm_pairs(n, 0..n);
                for i in 0..n {
                    if matches!(t, RootType::B | RootType::BC) {
                        roots.push(unit(n, i, 2));
                        roots.push(unit(n, i, -2));
                    }
                    if matches!(t, RootType::C | RootType::BC) {
                        roots.push(unit(n, i, 4));
                        roots.push(unit(n, i, -4));
                    }
                }
                let mut rs = Self::from_roots(n, roots);
                rs.rank = n;
                rs
            }
            RootType::G2 if n == 2 => {
                let mut roots = Vec::new();
                for i in 0..3 {
                    for j in 0..3 {
                        if i != j {
                            let mut v = vec![0; 3];
                            v[i] = 2;
                            v[j] = -2;
                            roots.push(v);
                        }
                    }
                    let long: Vec<i64> = (0..3).map(|k| if k == i { 4 } else { -2 }).collect();
                    roots.push(long.iter().map(|x| -x).collect());
                    roots.push(long);
                }
                Self::from_roots(3, roots)
            }
            RootType::F4 | RootType::F4Dual if n == 4 => {
                let mut roots = pm_pairs(4, 0..4);
                let (short, half) = if t == RootType::F4 { (2, 1) } else { (4, 2) };
                for i in 0..4 {
                    roots.push(unit(4, i, short));
                    roots.push(unit(4, i, -short));
                }
                for s in sign_vectors(4, None) {
                    roots.push(s.iter().map(|x| x * half).collect());
                }
                Self::from_roots(4, roots)
            }
            RootType::E8 if n == 8 => {
                let mut roots = pm_pairs(8, 0..8);
                roots.extend(sign_vectors(8, Some(true)));
                Self::from_roots(8, roots)
            }
            RootType::E7 if n == 7 => {
                let e8 = Self::new(RootType::E8, 8)?;
                let a = e8.roots[0].clone();
                e8.orthogonal_to(&[a])
            }
            RootType::E6 if n == 6 => {
                let e8 = Self::new(RootType::E8, 8)?;
                let a = e8.roots[0].clone();
                let b = e8
                    .roots
                    .iter()
                    .find(|r| dot(r, &a) == -dot(&a, &a) / 2)
                    .cloned()
                    .ok_or_else(bad)?;
                e8.orthogonal_to(&[a, b])
            }
            _ => return Err(bad()),
        })
    }

    /// Sub-root-system of roots orthogonal to all of `vs`.
    pub fn orthogonal_to(&self, vs: &[Vec<i64>]) -> Self {
        let roots = self.roots.iter().filter(|r| vs.iter().all(|v| dot(r, v) == 0)).cloned().collect();
        Self::from_roots(self.dim, roots)
    }

    /// Disjoint union, as a root system in the sum of the ambient spaces.
    pub fn product(&self, other: &Self) -> Self {
        let dim = self.dim + other.dim;
        let mut roots: Vec<Vec<i64>> = self
            .roots
            .iter()
            .map(|r| r.iter().copied().chain(std::iter::repeat_n(0, other.dim)).collect())
            .collect();
        roots.extend(other.roots.iter().map(|r| std::iter::repeat_n(0, self.dim).chain(r.iter().copied()).collect()));
        RootSystem { dim, rank: self.rank + other.rank, roots }
    }

    /// Reflection of `v` in the hyperplane orthogonal to `alpha`.
    pub fn reflect(v: &[i64], alpha: &[i64]) -> Vec<i64> {
        let (num, den) = (2 * dot(v, alpha), dot(alpha, alpha));
        assert!(num % den == 0, "reflection leaves the integer lattice");
        let k = num / den;
        v.iter().zip(alpha).map(|(x, a)| x - k * a).collect()
    }

    /// Orbit of `v` under the group generated by reflections in `gens`.
    pub fn orbit(v: &[i64], gens: &[Vec<i64>]) -> Vec<Vec<i64>> {
        let mut seen: HashSet<Vec<i64>> = HashSet::from([v.to_vec()]);
        let mut order = vec![v.to_vec()];
        let mut queue = VecDeque::from([v.to_vec()]);
        while let Some(x) = queue.pop_front() {
            for a in gens {
                let y = Self::reflect(&x, a);
                if seen.insert(y.clone()) {
                    order.push(y.clone());
                    queue.push_back(y);
                }
            }
        }
        order
    }

    /// A vector not orthogonal to any root, scaled so that its Weyl orbit
    /// stays integral.
    pub fn generic_vector(&self) -> Vec<i64> {
        let primes = [1009, 211, 53, 13, 5, 3, 2, 1];
        let v: Vec<i64> = (0..self.dim).map(|i| 64 * (primes[i % primes.len()] * (i as i64 + 1) + i as i64)).collect();
        assert!(self.roots.iter().all(|r| dot(r, &v) != 0), "chosen vector is not generic");
        v
    }

    pub fn positive_roots(&self) -> Vec<Vec<i64>> {
        let v = self.generic_vector();
        self.roots.iter().filter(|r| dot(r, &v) > 0).cloned().collect()
    }

    /// Positive roots that are not sums of two positive roots.
    pub fn simple_roots(&self) -> Vec<Vec<i64>> {
        let pos = self.positive_roots();
        let set: HashSet<&Vec<i64>> = pos.iter().collect();
        pos.iter()
            .filter(|r| {
                !pos.iter().any(|a| {
                    let b: Vec<i64> = r.iter().zip(a.iter()).map(|(x, y)| x - y).collect();
                    set.contains(&b)
                })
            })
            .cloned()
            .collect()
    }

    /// Order of the Weyl group by brute-force closure: the group generated
    /// by simple reflections acting on the set of roots.
    pub fn weyl_order_by_closure(&self) -> u64 {
        let index: std::collections::HashMap<&Vec<i64>, usize> =
            self.roots.iter().enumerate().map(|(i, r)| (r, i)).collect();
        let gens: Vec<Vec<u16>> = self
            .simple_roots()
            .iter()
            .map(|s| self.roots.iter().map(|r| index[&Self::reflect(r, s)] as u16).collect())
            .collect();
        let id: Vec<u16> = (0..self.roots.len() as u16).collect();
        let mut seen: HashSet<Vec<u16>> = HashSet::from([id.clone()]);
        let mut queue = VecDeque::from([id]);
        while let Some(g) = queue.pop_front() {
            for s in &gens {
                let h: Vec<u16> = g.iter().map(|&i| s[i as usize]).collect();
                if seen.insert(h.clone()) {
                    queue.push_back(h);
                }
            }
        }
        seen.len() as u64
    }

    /// Order of the Weyl group by the orbit-stabiliser recursion
    /// `|W| = |W alpha| * |W(roots orthogonal to alpha)|`.
    pub fn weyl_order_by_recursion(&self) -> u64 {
        let Some(alpha) = self.roots.first() else { return 1 };
        let orbit = Self::orbit(alpha, &self.roots).len() as u64;
        orbit * self.orthogonal_to(std::slice::from_ref(alpha)).weyl_order_by_recursion()
    }

    /// Exponents from the heights of positive roots: the number of exponents
    /// at least `k` equals the number of positive roots of height `k`.
    pub fn exponents_from_heights(&self) -> Vec<u64> {
        let simple = self.simple_roots();
        let basis = Mat::from_rows(
            simple.iter().map(|s| s.iter().map(|&x| qi(x)).collect::<Vec<Q>>()).collect(),
        )
        .transpose();
        let mut counts: Vec<u64> = Vec::new();
        for r in self.positive_roots() {
            let mut aug = Mat::zeros(basis.rows, basis.cols + 1);
            for i in 0..basis.rows {
                for j in 0..basis.cols {
                    aug[(i, j)] = basis[(i, j)].clone();
                }
                aug[(i, basis.cols)] = qi(r[i]);
            }
            let (red, pivots) = aug.rref();
            let height: Q = pivots.iter().enumerate().map(|(row, _)| red[(row, basis.cols)].clone()).sum();
            let h = height.to_integer().try_into().unwrap_or(0usize);
            if counts.len() < h {
                counts.resize(h, 0);
            }
            counts[h - 1] += 1;
        }
        let mut exps = Vec::new();
        let mut next = 0;
        for k in 1..=counts.len() {
            let ge = counts[k - 1];
            next = if k < counts.len() { counts[k] } else { 0 };
            for _ in 0..ge - next {
                exps.push(k as u64);
            }
        }
        debug_assert_eq!(next, 0);
        exps.sort_unstable();
        exps
    }
}

/// Order of the Weyl group of an irreducible root system, from closed
/// formulas and a table for exceptional types.
pub fn weyl_order(t: RootType, n: u64) -> Result<u64> {
    let fact = |k: u64| (1..=k).product::<u64>();
    Ok(match t {
        RootType::A => fact(n + 1),
        RootType::B | RootType::C | RootType::BC => (1u64 << n) * fact(n),
        RootType::D if n >= 2 => (1u64 << (n - 1)) * fact(n),
        RootType::D if n == 1 => 1,
        RootType::G2 if n == 2 => 12,
        RootType::F4 | RootType::F4Dual if n == 4 => 1152,
        RootType::E6 if n == 6 => 51_840,
        RootType::E7 if n == 7 => 2_903_040,
        RootType::E8 if n == 8 => 696_729_600,
        _ => return Err(Error::UnsupportedGroup(format!("Weyl group of {t:?}{n}"))),
    })
}

/// Tabulated exponents of an irreducible reduced root system.
pub fn exponents(t: RootType, n: u64) -> Result<Vec<u64>> {
    let mut e: Vec<u64> = match t {
        RootType::A => (1..=n).collect(),
        RootType::B | RootType::C => (1..=n).map(|i| 2 * i - 1).collect(),
        RootType::D if n >= 2 => (1..n).map(|i| 2 * i - 1).chain([n - 1]).collect(),
        RootType::G2 if n == 2 => vec![1, 5],
        RootType::F4 | RootType::F4Dual if n == 4 => vec![1, 5, 7, 11],
        RootType::E6 if n == 6 => vec![1, 4, 5, 7, 8, 11],
        RootType::E7 if n == 7 => vec![1, 5, 7, 9, 11, 13, 17],
        RootType::E8 if n == 8 => vec![1, 7, 11, 13, 17, 19, 23, 29],
        _ => return Err(Error::UnsupportedGroup(format!("exponents of {t:?}{n}"))),
    };
    e.sort_unstable();
    Ok(e)
}

/// Field over which a group is considered as a real Lie group.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Base {
    Real,
    /// Restriction of scalars from `C` to `R`.
    ComplexAsReal,
}

/// Families of real groups understood by the descriptor grammar.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Family {
    Sl(u64),
    Pgl(u64),
    Gl(u64),
    /// `SL_m` over the quaternions.
    SlH(u64),
    /// `SO(p,q)`; `SO(n)` over `R` means the split form.
    So(u64, u64),
    /// Compact `SO(n)`.
    SoCompact(u64),
    Su(u64),
    U(u64),
    E6Split,
    E6IV,
}

/// A simple factor of a real group.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Simple {
    pub family: Family,
    pub base: Base,
}

/// A product of simple factors, e.g. `PGL(2)/C x PGL(3)/C`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GroupDescriptor {
    pub factors: Vec<Simple>,
}

impl fmt::Display for Simple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self.family {
            Family::Sl(n) => format!("SL({n})"),
            Family::Pgl(n) => format!("PGL({n})"),
            Family::Gl(n) => format!("GL({n})"),
            Family::SlH(n) => format!("SLH({n})"),
            Family::So(p, qq) => format!("SO({p},{qq})"),
            Family::SoCompact(n) => format!("SOc({n})"),
            Family::Su(n) => format!("SU({n})"),
            Family::U(n) => format!("U({n})"),
            Family::E6Split => "E6split".into(),
            Family::E6IV => "E6IV".into(),
        };
        let suffix = if self.base == Base::ComplexAsReal { "/C" } else { "" };
        write!(f, "{s}{suffix}")
    }
}

impl fmt::Display for GroupDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.factors.iter().map(ToString::to_string).collect();
        f.write_str(&parts.join(" x "))
    }
}

impl std::str::FromStr for GroupDescriptor {
    type Err = Error;

    /// Grammar: `family(n)[/R|/C]`, joined by ` x ` for products. Families:
    /// `SL PGL GL SLH SO SOc SU U` with one argument, `SO(p,q)`, and the
    /// argument-free `E6split`, `E6IV`.
    fn from_str(s: &str) -> Result<Self> {
        let factors = s
            .split(" x ")
            .map(|part| parse_simple(part.trim()))
            .collect::<Result<Vec<_>>>()?;
        Ok(GroupDescriptor { factors })
    }
}

fn parse_simple(s: &str) -> Result<Simple> {
    if s.is_empty() {
        return Err(Error::UnsupportedGroup("malformed product: empty factor".into()));
    }
    let (body, base) = match s.rsplit_once('/') {
        Some((b, "R")) => (b, Base::Real),
        Some((b, "C")) => (b, Base::ComplexAsReal),
        Some((_, other)) => return Err(Error::UnsupportedGroup(format!("unknown base field `{other}`"))),
        None => (s, Base::Real),
    };
    let family = match body {
        "E6split" => Family::E6Split,
        "E6IV" => Family::E6IV,
        _ => {
            let (name, args) = body
                .strip_suffix(')')
                .and_then(|b| b.split_once('('))
                .ok_or_else(|| Error::UnsupportedGroup(format!("cannot parse `{s}`")))?;
            let args: Vec<u64> = args
                .split(',')
                .map(|a| a.trim().parse::<u64>())
                .collect::<std::result::Result<_, _>>()
                .map_err(|_| Error::UnsupportedGroup(format!("bad arguments in `{s}`")))?;
            match (name, args.as_slice()) {
                ("SL", &[n]) => Family::Sl(n),
                ("PGL", &[n]) => Family::Pgl(n),
                ("GL", &[n]) => Family::Gl(n),
                ("SLH", &[n]) => Family::SlH(n),
                ("SO", &[n]) if base == Base::Real => Family::So(n - n / 2, n / 2),
                ("SO", &[n]) => Family::So(n, 0),
                ("SO", &[p, qq]) => Family::So(p, qq),
                ("SOc", &[n]) => Family::SoCompact(n),
                ("SU", &[n]) => Family::Su(n),
                ("U", &[n]) => Family::U(n),
                _ => return Err(Error::UnsupportedGroup(format!("unknown family `{s}`"))),
            }
        }
    };
    let n = match family {
        Family::Sl(n) | Family::Pgl(n) | Family::Gl(n) | Family::SlH(n) | Family::Su(n) | Family::U(n) => n,
        Family::So(p, qq) => p + qq,
        Family::SoCompact(n) => n,
        Family::E6Split | Family::E6IV => 6,
    };
    if n == 0 {
        return Err(Error::UnsupportedGroup(format!("rank parameter of `{s}` must be positive")));
    }
    if matches!(family, Family::So(..) | Family::SoCompact(_)) && n < 2 {
        return Err(Error::DegenerateRank(format!("`{s}` is trivial")));
    }
    let compact = matches!(family, Family::SoCompact(_) | Family::Su(_) | Family::U(_));
    if base == Base::ComplexAsReal && (compact || matches!(family, Family::SlH(_) | Family::E6Split | Family::E6IV)) {
        return Err(Error::UnsupportedGroup(format!("`{s}` has no complex form in this grammar")));
    }
    if let Family::So(_, qq) = family {
        if base == Base::ComplexAsReal && qq != 0 {
            return Err(Error::UnsupportedGroup(format!("`{s}`: use SO(n)/C")));
        }
    }
    Ok(Simple { family, base })
}

/// Invariants of a real group and its maximal compact subgroup.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GroupInvariants {
    pub d_g: u64,
    pub r_g: u64,
    pub d_k: u64,
    pub r_k: u64,
    pub delta: u64,
    pub q: u64,
    pub d_symm: u64,
    pub weyl_index: Option<u64>,
    /// `Delta_K = pi^{(d_K + r_K)/2}`, rendered.
    pub delta_k: String,
    pub delta_g_over_k: String,
}

/// `(dim G, rank G_C, dim K, rank K)` of a simple factor.
fn simple_dims(s: &Simple) -> (u64, u64, u64, u64) {
    let (d, r, dk, rk) = match s.family {
        Family::Sl(n) | Family::Pgl(n) => (n * n - 1, n - 1, n * (n - 1) / 2, n / 2),
        Family::Gl(n) => (n * n, n, n * (n - 1) / 2, n / 2),
        Family::SlH(m) => (4 * m * m - 1, 2 * m - 1, m * (2 * m + 1), m),
        Family::So(p, qq) => {
            let nn = p + qq;
            (nn * (nn - 1) / 2, nn / 2, p * (p.saturating_sub(1)) / 2 + qq * qq.saturating_sub(1) / 2, p / 2 + qq / 2)
        }
        Family::SoCompact(n) => (n * (n - 1) / 2, n / 2, n * (n - 1) / 2, n / 2),
        Family::Su(n) => (n * n - 1, n - 1, n * n - 1, n - 1),
        Family::U(n) => (n * n, n, n * n, n),
        Family::E6Split => (78, 6, 36, 4),
        Family::E6IV => (78, 6, 52, 4),
    };
    match s.base {
        Base::Real => (d, r, dk, rk),
        Base::ComplexAsReal => {
            let (dh, rh) = match s.family {
                Family::So(n, _) => (n * (n - 1) / 2, n / 2),
                _ => (d, r),
            };
            (2 * dh, 2 * rh, dh, rh)
        }
    }
}

/// Invariants of a descriptor; numeric fields add over products.
pub fn invariants(g: &GroupDescriptor) -> Result<GroupInvariants> {
    if g.factors.is_empty() {
        return Err(Error::UnsupportedGroup("empty product".into()));
    }
    let (mut d, mut r, mut dk, mut rk) = (0, 0, 0, 0);
    let mut index = Some(1u64);
    for s in &g.factors {
        let (a, b, c, e) = simple_dims(s);
        d += a;
        r += b;
        dk += c;
        rk += e;
        index = match (index, weyl_index(s)) {
            (Some(i), Ok(j)) => Some(i * j),
            _ => None,
        };
    }
    let delta = r - rk;
    let d_symm = d - dk;
    if (d_symm - delta) % 2 != 0 {
        return Err(Error::Invalid(format!("{g}: dim G/K - delta is odd")));
    }
    Ok(GroupInvariants {
        d_g: d,
        r_g: r,
        d_k: dk,
        r_k: rk,
        delta,
        q: (d_symm - delta) / 2,
        d_symm,
        weyl_index: index,
        delta_k: PeriodScalar::pi().pow(&q((dk + rk) as i64, 2)).to_string(),
        delta_g_over_k: format!("Delta_G/Delta_K for {g}"),
    })
}

/// Root systems `Delta(k:b)` and `Delta(g:b)` for a fundamental Cartan
/// subalgebra, together with the tabulated index `[W_G : W_K]`.
pub struct TabulatedRoots {
    pub k_roots: RootSystem,
    pub g_roots: RootSystem,
    pub index: u64,
}

fn root_system_of_complex(s: &Simple) -> Result<RootSystem> {
    match s.family {
        Family::Sl(n) | Family::Pgl(n) | Family::Gl(n) if n >= 2 => RootSystem::new(RootType::A, (n - 1) as usize),
        Family::Sl(_) | Family::Pgl(_) | Family::Gl(_) => Ok(RootSystem { dim: 1, rank: 0, roots: vec![] }),
        Family::So(n, _) if n % 2 == 1 => RootSystem::new(RootType::B, (n / 2) as usize),
        Family::So(n, _) if n >= 4 => RootSystem::new(RootType::D, (n / 2) as usize),
        Family::So(2, _) => Ok(RootSystem { dim: 1, rank: 0, roots: vec![] }),
        _ => Err(Error::UnsupportedGroup(format!("{s}"))),
    }
}

fn binom(n: u64, k: u64) -> u64 {
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

/// The row of the table of simple real groups with `delta > 0`.
pub fn tabulated_roots(s: &Simple) -> Result<TabulatedRoots> {
    let not_tab = || Error::UnsupportedGroup(format!("{s}: not tabulated"));
    if s.base == Base::ComplexAsReal {
        let g = root_system_of_complex(s)?;
        return Ok(TabulatedRoots { k_roots: g.clone(), g_roots: g, index: 1 });
    }
    let (k, g, index) = match s.family {
        Family::Sl(n) | Family::Pgl(n) if n >= 4 && n % 2 == 0 => {
            (RootSystem::new(RootType::D, (n / 2) as usize)?, RootSystem::new(RootType::C, (n / 2) as usize)?, 2)
        }
        Family::Sl(n) | Family::Pgl(n) if n >= 3 && n % 2 == 1 => {
            (RootSystem::new(RootType::B, (n / 2) as usize)?, RootSystem::new(RootType::BC, (n / 2) as usize)?, 1)
        }
        Family::SlH(m) if m >= 2 => {
            let c = RootSystem::new(RootType::C, m as usize)?;
            (c.clone(), c, 1)
        }
        Family::So(p, qq) if p % 2 == 1 && qq % 2 == 1 && p + qq >= 4 => {
            let (kk, l) = (p / 2, qq / 2);
            let g = RootSystem::new(RootType::B, (kk + l) as usize)?;
            let first = |r: &Vec<i64>| r[kk as usize..].iter().all(|&x| x == 0);
            let last = |r: &Vec<i64>| r[..kk as usize].iter().all(|&x| x == 0);
            let k_roots: Vec<Vec<i64>> = g.roots.iter().filter(|r| first(r) || last(r)).cloned().collect();
            (RootSystem::from_roots(g.dim, k_roots), g, binom(kk + l, kk))
        }
        Family::E6Split => {
            // The table lists the pair as (F4, C4); the containment and the
            // index 3 = |W(F4)|/|W(C4)| require C4 inside F4, so the two
            // columns are read the other way round.
            (RootSystem::new(RootType::C, 4)?, RootSystem::new(RootType::F4Dual, 4)?, 3)
        }
        Family::E6IV => {
            let f = RootSystem::new(RootType::F4, 4)?;
            (f.clone(), f, 1)
        }
        _ => return Err(not_tab()),
    };
    Ok(TabulatedRoots { k_roots: k, g_roots: g, index })
}

/// `[W_G : W_K]` from the table.
pub fn weyl_index(s: &Simple) -> Result<u64> {
    tabulated_roots(s).map(|t| t.index)
}

/// `[W_G : W_K]` as a quotient of Weyl group orders computed by the
/// orbit-stabiliser recursion.
pub fn weyl_index_from_orders(s: &Simple) -> Result<u64> {
    let t = tabulated_roots(s)?;
    Ok(t.g_roots.weyl_order_by_recursion() / t.k_roots.weyl_order_by_recursion())
}

/// Outcome of the chamber enumeration.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ChamberReport {
    /// Number of `Delta(g:b)`-chambers inside one `Delta(k:b)`-chamber.
    pub chambers: u64,
    pub tabulated_index: u64,
    /// Whether every such chamber is reached from the base chamber by the
    /// reflections in roots of `g` whose lines are not lines of `k`-roots.
    pub reachable: bool,
}

impl ChamberReport {
    pub fn ok(&self) -> bool {
        self.chambers == self.tabulated_index && self.reachable
    }
}

/// Enumerates chambers: counts the points of the `W_G`-orbit of a generic
/// vector lying in its own `Delta(k:b)`-chamber.
pub fn chamber_check(s: &Simple) -> Result<ChamberReport> {
    let t = tabulated_roots(s)?;
    let g = &t.g_roots;
    let v = g.generic_vector();
    let side = |x: &[i64]| -> Vec<bool> { t.k_roots.roots.iter().map(|r| dot(r, x) > 0).collect() };
    let base = side(&v);
    let orbit = RootSystem::orbit(&v, &g.roots);
    let inside: Vec<&Vec<i64>> = orbit.iter().filter(|x| side(x) == base).collect();
    let parallel = |a: &Vec<i64>, b: &Vec<i64>| dot(a, b) * dot(a, b) == dot(a, a) * dot(b, b);
    let m_gens: Vec<Vec<i64>> = g
        .roots
        .iter()
        .filter(|a| !t.k_roots.roots.iter().any(|b| parallel(a, b)))
        .cloned()
        .collect();
    let m_orbit: HashSet<Vec<i64>> = RootSystem::orbit(&v, &m_gens).into_iter().collect();
    Ok(ChamberReport {
        chambers: inside.len() as u64,
        tabulated_index: t.index,
        reachable: inside.iter().all(|x| m_orbit.contains(*x)),
    })
}

/// A compact connected group with known exponents.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CompactGroup {
    Su(u64),
    So(u64),
    U(u64),
}

impl CompactGroup {
    /// Exponents `m_i` of the group, one per generator of its rational
    /// cohomology in degree `2 m_i + 1`.
    pub fn exponents(self) -> Vec<u64> {
        match self {
            CompactGroup::Su(n) => (1..n).collect(),
            CompactGroup::U(n) => (0..n).collect(),
            CompactGroup::So(n) if n % 2 == 1 => (1..=n / 2).map(|i| 2 * i - 1).collect(),
            CompactGroup::So(n) => {
                let m = n / 2;
                (1..m).map(|i| 2 * i - 1).chain([m - 1]).collect()
            }
        }
    }

    pub fn dim_and_rank(self) -> (u64, u64) {
        match self {
            CompactGroup::Su(n) => (n * n - 1, n - 1),
            CompactGroup::U(n) => (n * n, n),
            CompactGroup::So(n) => (n * (n - 1) / 2, n / 2),
        }
    }
}

/// Macdonald's volume `prod 2 pi^{m_i + 1} / m_i!` modulo `Q*`.
pub fn macdonald_volume(groups: &[CompactGroup]) -> PeriodScalar {
    groups
        .iter()
        .flat_map(|g| g.exponents())
        .map(|m| PeriodScalar::pi().powi(m as i64 + 1))
        .product()
}

type C = Complex<Q>;

fn cq(re: Q, im: Q) -> C {
    Complex::new(re, im)
}

fn creal(x: i64) -> C {
    cq(qi(x), Q::zero())
}

fn cim(x: i64) -> C {
    cq(Q::zero(), qi(x))
}

/// A fundamental Cartan subalgebra in the defining real representation,
/// with a complex matrix diagonalising it and the rule for picking one
/// weight per pair of the dual group's standard representation.
struct CartanModel {
    basis: Vec<Mat<Q>>,
    eigvecs: Mat<C>,
    /// Indices of the chosen weights and the multiplicity factor.
    chosen: Vec<usize>,
    factor: Q,
}

fn rotation(n: usize, i: usize, j: usize) -> Mat<Q> {
    let mut m = Mat::zeros(n, n);
    m[(i, j)] = qi(-1);
    m[(j, i)] = qi(1);
    m
}

fn cartan_real(s: &Simple) -> Result<CartanModel> {
    match s.family {
        Family::Gl(n) => {
            let n = n as usize;
            let mut basis = Vec::new();
            let mut p = Mat::zeros(n, n);
            for b in 0..n / 2 {
                let (i, j) = (2 * b, 2 * b + 1);
                let mut id = Mat::zeros(n, n);
                id[(i, i)] = qi(1);
                id[(j, j)] = qi(1);
                basis.push(id);
                basis.push(rotation(n, i, j));
                p[(i, i)] = creal(1);
                p[(j, i)] = cim(-1);
                p[(i, j)] = creal(1);
                p[(j, j)] = cim(1);
            }
            if n % 2 == 1 {
                let mut e = Mat::zeros(n, n);
                e[(n - 1, n - 1)] = qi(1);
                basis.push(e);
                p[(n - 1, n - 1)] = creal(1);
            }
            Ok(CartanModel { basis, eigvecs: p, chosen: (0..n).collect(), factor: qi(1) })
        }
        Family::So(pp, qq) => {
            let (pp, qq) = (pp as usize, qq as usize);
            let n = pp + qq;
            let mut basis = Vec::new();
            let mut p = Mat::zeros(n, n);
            let mut chosen = Vec::new();
            let mut blocks: Vec<(usize, usize, bool)> = Vec::new();
            for b in 0..pp / 2 {
                blocks.push((2 * b, 2 * b + 1, false));
            }
            for b in 0..qq / 2 {
                blocks.push((pp + 2 * b, pp + 2 * b + 1, false));
            }
            if pp % 2 == 1 && qq % 2 == 1 {
                blocks.push((pp - 1, n - 1, true));
            }
            for &(i, j, boost) in &blocks {
                if boost {
                    let mut m = Mat::zeros(n, n);
                    m[(i, j)] = qi(1);
                    m[(j, i)] = qi(1);
                    basis.push(m);
                    p[(i, i)] = creal(1);
                    p[(j, i)] = creal(1);
                    p[(i, j)] = creal(1);
                    p[(j, j)] = creal(-1);
                } else {
                    basis.push(rotation(n, i, j));
                    p[(i, i)] = creal(1);
                    p[(j, i)] = cim(-1);
                    p[(i, j)] = creal(1);
                    p[(j, j)] = cim(1);
                }
                chosen.push(i);
            }
            let used: HashSet<usize> = blocks.iter().flat_map(|&(i, j, _)| [i, j]).collect();
            for k in 0..n {
                if !used.contains(&k) {
                    p[(k, k)] = creal(1);
                }
            }
            Ok(CartanModel { basis, eigvecs: p, chosen, factor: qi(2) })
        }
        _ => Err(Error::UnsupportedGroup(format!("{s}: trace-form constant needs GL or SO"))),
    }
}

fn realify(re: &Mat<Q>, im: &Mat<Q>) -> Mat<Q> {
    let n = re.rows;
    let mut m = Mat::zeros(2 * n, 2 * n);
    for i in 0..n {
        for j in 0..n {
            m[(i, j)] = re[(i, j)].clone();
            m[(i + n, j + n)] = re[(i, j)].clone();
            m[(i, j + n)] = -im[(i, j)].clone();
            m[(i + n, j)] = im[(i, j)].clone();
        }
    }
    m
}

fn cartan_complex(s: &Simple) -> Result<CartanModel> {
    // Cartan of the complex group: complex-diagonal for GL, complex
    // rotation blocks for SO. Its real basis is {H, iH}; realification turns
    // a complex eigenvector w into (w, -i w) and its conjugate partner.
    let (n, cbasis, w, chosen_c, factor): (usize, Vec<Mat<Q>>, Mat<C>, Vec<usize>, Q) = match s.family {
        Family::Gl(n) => {
            let n = n as usize;
            let basis = (0..n)
                .map(|k| {
                    let mut e = Mat::zeros(n, n);
                    e[(k, k)] = qi(1);
                    e
                })
                .collect();
            (n, basis, Mat::identity(n), (0..n).collect(), qi(1))
        }
        Family::So(n, 0) => {
            let n = n as usize;
            let mut basis = Vec::new();
            let mut w = Mat::zeros(n, n);
            let mut chosen = Vec::new();
            for b in 0..n / 2 {
                let (i, j) = (2 * b, 2 * b + 1);
                basis.push(rotation(n, i, j));
                w[(i, i)] = creal(1);
                w[(j, i)] = cim(-1);
                w[(i, j)] = creal(1);
                w[(j, j)] = cim(1);
                chosen.push(i);
            }
            if n % 2 == 1 {
                w[(n - 1, n - 1)] = creal(1);
            }
            (n, basis, w, chosen, qi(2))
        }
        _ => return Err(Error::UnsupportedGroup(format!("{s}: trace-form constant needs GL or SO"))),
    };
    let zero = Mat::<Q>::zeros(n, n);
    let mut basis = Vec::new();
    for h in &cbasis {
        basis.push(realify(h, &zero));
        basis.push(realify(&zero, h));
    }
    let mut p = Mat::zeros(2 * n, 2 * n);
    for i in 0..n {
        for j in 0..n {
            let x = w[(i, j)].clone();
            let minus_i = cim(-1);
            p[(i, j)] = x.clone();
            p[(i, j + n)] = x.conj();
            p[(i + n, j)] = minus_i.clone() * x.clone();
            p[(i + n, j + n)] = minus_i.conj() * x.conj();
        }
    }
    let chosen = chosen_c.iter().flat_map(|&k| [k, k + n]).collect();
    Ok(CartanModel { basis, eigvecs: p, chosen, factor })
}

/// Result of the trace-form comparison on a fundamental Cartan.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TraceFormResult {
    /// `c` with `B^{-1} = c * tr^` on the dual of the Cartan.
    pub constant: Q,
    pub rank: usize,
}

/// Constant `c` such that the form on the dual of a fundamental Cartan
/// induced by `B(X,Y) = tr(XY)` is `c` times the trace form of the dual
/// group's standard representation.
pub fn dual_trace_form(s: &Simple) -> Result<TraceFormResult> {
    let model = match s.base {
        Base::Real => cartan_real(s)?,
        Base::ComplexAsReal => cartan_complex(s)?,
    };
    let r = model.basis.len();
    if r == 0 {
        return Err(Error::DegenerateRank(format!("{s} has a zero Cartan subalgebra")));
    }
    let gram = Mat::from_rows(
        (0..r)
            .map(|i| (0..r).map(|j| model.basis[i].mul(&model.basis[j]).trace()).collect())
            .collect(),
    );
    let p = &model.eigvecs;
    let pinv = p.inverse().ok_or_else(|| Error::Invalid("eigenvector matrix is singular".into()))?;
    let mut weights: Vec<Vec<C>> = vec![Vec::with_capacity(r); p.rows];
    for h in &model.basis {
        let hc = Mat {
            rows: h.rows,
            cols: h.cols,
            data: h.data.iter().map(|x| cq(x.clone(), Q::zero())).collect(),
        };
        let d = pinv.mul(&hc).mul(p);
        if !d.is_diagonal() {
            return Err(Error::Invalid("Cartan basis is not simultaneously diagonalised".into()));
        }
        for (k, wk) in weights.iter_mut().enumerate() {
            wk.push(d[(k, k)].clone());
        }
    }
    let wmat = Mat::from_rows(model.chosen.iter().map(|&k| weights[k].clone()).collect());
    if wmat.rows != r {
        return Err(Error::Invalid("chosen weights do not form a basis".into()));
    }
    let winv = wmat.inverse().ok_or_else(|| Error::Invalid("chosen weights are dependent".into()))?;
    let f = cq(model.factor.clone(), Q::zero());
    let mut that: Mat<C> = Mat::zeros(r, r);
    for k in 0..r {
        let x: Vec<C> = (0..r).map(|i| winv[(i, k)].clone()).collect();
        for i in 0..r {
            for j in 0..r {
                that[(i, j)] = that[(i, j)].clone() + f.clone() * x[i].clone() * x[j].clone();
            }
        }
    }
    let ginv = gram.inverse().ok_or_else(|| Error::Invalid("trace form is degenerate".into()))?;
    let mut constant: Option<C> = None;
    for i in 0..r {
        for j in 0..r {
            let g = cq(ginv[(i, j)].clone(), Q::zero());
            let t = that[(i, j)].clone();
            if t.is_zero() {
                if !g.is_zero() {
                    return Err(Error::Invalid("forms are not proportional".into()));
                }
                continue;
            }
            let c = g / t;
            match &constant {
                None => constant = Some(c),
                Some(c0) if *c0 == c => {}
                Some(_) => return Err(Error::Invalid("forms are not proportional".into())),
            }
        }
    }
    let c = constant.ok_or_else(|| Error::Invalid("dual trace form vanishes".into()))?;
    if !c.im.is_zero() {
        return Err(Error::Invalid("proportionality constant is not real".into()));
    }
    Ok(TraceFormResult { constant: c.re, rank: r })
}

/// Invariant degrees of the complexified simple factor, i.e. the degrees of
/// generators of its invariant polynomials on a Cartan subalgebra.
pub fn invariant_degrees(s: &Simple) -> Result<Vec<u64>> {
    Ok(match s.family {
        Family::Sl(n) | Family::Pgl(n) => (2..=n).collect(),
        Family::Gl(n) => (1..=n).collect(),
        Family::So(p, qq) => {
            let n = p + qq;
            let m = n / 2;
            if n % 2 == 1 {
                (1..=m).map(|i| 2 * i).collect()
            } else {
                let mut d: Vec<u64> = (1..m).map(|i| 2 * i).collect();
                d.push(m);
                d.sort_unstable();
                d
            }
        }
        _ => return Err(Error::UnsupportedGroup(format!("{s}: degrees not tabulated"))),
    })
}

/// Exponent of `pi` in `Delta_K / Delta_U^2`, from the dimensions and ranks
/// of the maximal compact subgroups of `G` and `H`.
pub fn delta_k_over_u2(g: &GroupDescriptor, h: &GroupDescriptor) -> Result<Q> {
    let ig = invariants(g)?;
    let ih = invariants(h)?;
    Ok(q((ig.d_k + ig.r_k) as i64, 2) - qi((ih.d_k + ih.r_k) as i64))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn g(s: &str) -> GroupDescriptor {
        s.parse().unwrap()
    }

    #[test]
    fn sl4_split() {
        let i = invariants(&g("SL(4)/R")).unwrap();
        assert_eq!((i.delta, i.q), (1, 4));
    }

    #[test]
    fn pgl2_complex() {
        let i = invariants(&g("PGL(2)/C")).unwrap();
        assert_eq!((i.d_symm, i.delta, i.q), (3, 1, 1));
    }

    #[test]
    fn ggp_pair_dimensions() {
        let a = invariants(&g("PGL(2)/C x PGL(3)/C")).unwrap();
        let b = invariants(&g("GL(2)/C")).unwrap();
        assert_eq!((a.d_symm, b.d_symm), (11, 4));
    }

    #[test]
    fn malformed_products_fail() {
        assert!(matches!("SO(3)/C x ".parse::<GroupDescriptor>(), Err(Error::UnsupportedGroup(_))));
        assert!(matches!("SO(1)/R".parse::<GroupDescriptor>(), Err(Error::DegenerateRank(_))));
        assert!(matches!("FOO(3)".parse::<GroupDescriptor>(), Err(Error::UnsupportedGroup(_))));
    }

    #[test]
    fn small_weyl_orders() {
        assert_eq!(weyl_order(RootType::A, 2).unwrap(), 6);
        assert_eq!(weyl_order(RootType::D, 2).unwrap(), 4);
        assert_eq!(weyl_order(RootType::C, 2).unwrap(), 8);
        assert_eq!(RootSystem::new(RootType::F4, 4).unwrap().weyl_order_by_closure(), 1152);
    }

    #[test]
    fn weyl_index_examples() {
        let sl4 = g("SL(4)/R").factors[0];
        assert_eq!(weyl_index(&sl4).unwrap(), 2);
        let rep = chamber_check(&sl4).unwrap();
        assert!(rep.ok(), "{rep:?}");
        let so33 = g("SO(3,3)/R").factors[0];
        assert_eq!(weyl_index(&so33).unwrap(), 2);
        assert!(chamber_check(&so33).unwrap().ok());
        let sl3 = g("SL(3)/R").factors[0];
        assert!(chamber_check(&sl3).unwrap().ok());
        assert_eq!(weyl_index(&g("PGL(3)/C").factors[0]).unwrap(), 1);
    }

    #[test]
    fn macdonald_examples() {
        assert_eq!(macdonald_volume(&[CompactGroup::Su(2)]), PeriodScalar::pi().powi(2));
        assert_eq!(macdonald_volume(&[CompactGroup::U(1)]), PeriodScalar::pi());
        assert_eq!(macdonald_volume(&[CompactGroup::Su(2), CompactGroup::U(1)]), PeriodScalar::pi().powi(3));
    }

    #[test]
    fn trace_form_examples() {
        assert_eq!(dual_trace_form(&g("GL(3)/R").factors[0]).unwrap().constant, qi(1));
        assert_eq!(dual_trace_form(&g("SO(2,0)/R").factors[0]).unwrap().constant, q(1, 4));
        assert_eq!(dual_trace_form(&g("GL(2)/C").factors[0]).unwrap().constant, qi(1));
    }
}
