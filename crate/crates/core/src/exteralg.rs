//! Exterior algebra of a rational inner-product space and a model of tempered
//! cohomology as a free graded module over it.
//!
//! Basis monomials `e_I` are stored as bitmasks with increasing indices. The
//! metric on `V` induces `<e_I, e_J> = det(G[I, J])` on each `Lambda^k V`.

use crate::error::{Error, Result};
use crate::linalg::{qi, Mat, Q};
use num::{One, Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::collections::BTreeMap;
use std::ops::{Add, Neg, Sub};

/// A rational vector space with a positive-definite Gram matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MetricSpaceQ {
    gram: Mat<Q>,
}

impl MetricSpaceQ {
    pub fn new(gram: Mat<Q>) -> Result<Self> {
        if gram.rows != gram.cols || gram != gram.transpose() {
            return Err(Error::Invalid("Gram matrix must be square and symmetric".into()));
        }
        for k in 1..=gram.rows {
            let minor = Mat::from_rows((0..k).map(|i| (0..k).map(|j| gram[(i, j)].clone()).collect()).collect());
            if !minor.det().is_positive() {
                return Err(Error::Invalid("Gram matrix is not positive definite".into()));
            }
        }
        Ok(MetricSpaceQ { gram })
    }

    pub fn euclidean(dim: usize) -> Self {
        MetricSpaceQ { gram: Mat::identity(dim) }
    }

    pub fn dim(&self) -> usize {
        self.gram.rows
    }

    pub fn gram(&self) -> &Mat<Q> {
        &self.gram
    }

    /// Induced inner product on the exterior algebra.
    pub fn inner(&self, a: &ExteriorElement, b: &ExteriorElement) -> Result<Q> {
        a.same_ambient(b)?;
        let mut total = Q::zero();
        for (&i, x) in &a.coeffs {
            for (&j, y) in &b.coeffs {
                if i.count_ones() == j.count_ones() {
                    total += x * y * self.minor(i, j);
                }
            }
        }
        Ok(total)
    }

    fn minor(&self, i: u32, j: u32) -> Q {
        let (ri, rj) = (indices(i), indices(j));
        if ri.is_empty() {
            return Q::one();
        }
        Mat::from_rows(ri.iter().map(|&r| rj.iter().map(|&c| self.gram[(r, c)].clone()).collect()).collect()).det()
    }

    /// The functional `<v, ->` as a coefficient vector.
    pub fn flat(&self, v: &[Q]) -> Vec<Q> {
        (0..self.dim()).map(|j| (0..self.dim()).map(|i| &v[i] * &self.gram[(i, j)]).sum()).collect()
    }

    /// Metric contraction `X -| B`, the adjoint of `X ^ -`: for
    /// `X = v_1 ^ ... ^ v_k` it applies the interior products by `v_1`,
    /// then `v_2`, and so on.
    pub fn metric_contract(&self, x: &ExteriorElement, b: &ExteriorElement) -> Result<ExteriorElement> {
        x.same_ambient(b)?;
        let mut out = ExteriorElement::zero(b.dim);
        for (&mask, c) in &x.coeffs {
            let mut cur = b.clone();
            for i in indices(mask) {
                let e = unit_vector(self.dim(), i);
                cur = cur.contract(&self.flat(&e))?;
            }
            out = out + cur.scale(c);
        }
        Ok(out)
    }
}

fn indices(mask: u32) -> Vec<usize> {
    (0..32).filter(|i| mask >> i & 1 == 1).collect()
}

fn unit_vector(dim: usize, i: usize) -> Vec<Q> {
    (0..dim).map(|j| if i == j { Q::one() } else { Q::zero() }).collect()
}

/// Sign of `e_I ^ e_J` relative to `e_{I u J}`, or `None` if they overlap.
fn wedge_sign(i: u32, j: u32) -> Option<bool> {
    if i & j != 0 {
        return None;
    }
    // Each index of J moves past the larger indices of I.
    let mut count = 0u32;
    for b in indices(j) {
        count += (i & !((1u32 << (b + 1)) - 1)).count_ones();
    }
    Some(count % 2 == 1)
}

/// An element of `Lambda^* Q^dim`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExteriorElement {
    pub dim: usize,
    coeffs: BTreeMap<u32, Q>,
}

impl ExteriorElement {
    pub fn zero(dim: usize) -> Self {
        ExteriorElement { dim, coeffs: BTreeMap::new() }
    }

    pub fn one(dim: usize) -> Self {
        Self::basis(dim, 0)
    }

    pub fn basis(dim: usize, mask: u32) -> Self {
        assert!(dim < 32 && mask >> dim == 0, "basis monomial out of range");
        ExteriorElement { dim, coeffs: BTreeMap::from([(mask, Q::one())]) }
    }

    /// `e_{i_1} ^ ... ^ e_{i_k}` from 1-based indices in any order.
    pub fn monomial(dim: usize, idx: &[usize]) -> Self {
        idx.iter().fold(Self::one(dim), |acc, &i| acc.wedge(&Self::basis(dim, 1 << (i - 1))).unwrap())
    }

    pub fn vector(v: &[Q]) -> Self {
        let mut out = Self::zero(v.len());
        for (i, c) in v.iter().enumerate() {
            out.insert(1 << i, c.clone());
        }
        out
    }

    fn insert(&mut self, mask: u32, c: Q) {
        let e = self.coeffs.entry(mask).or_insert_with(Q::zero);
        *e += c;
        if e.is_zero() {
            self.coeffs.remove(&mask);
        }
    }

    pub fn coeffs(&self) -> &BTreeMap<u32, Q> {
        &self.coeffs
    }

    pub fn coeff(&self, mask: u32) -> Q {
        self.coeffs.get(&mask).cloned().unwrap_or_else(Q::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree if the element is homogeneous and nonzero.
    pub fn degree(&self) -> Option<u32> {
        let mut degs = self.coeffs.keys().map(|m| m.count_ones());
        let d = degs.next()?;
        degs.all(|e| e == d).then_some(d)
    }

    /// Component of degree `k`.
    pub fn part(&self, k: u32) -> Self {
        ExteriorElement {
            dim: self.dim,
            coeffs: self.coeffs.iter().filter(|(m, _)| m.count_ones() == k).map(|(&m, c)| (m, c.clone())).collect(),
        }
    }

    pub fn scale(&self, c: &Q) -> Self {
        let mut out = Self::zero(self.dim);
        for (&m, x) in &self.coeffs {
            out.insert(m, x * c);
        }
        out
    }

    fn same_ambient(&self, other: &Self) -> Result<()> {
        if self.dim != other.dim {
            return Err(Error::Invalid(format!("ambient mismatch: {} vs {}", self.dim, other.dim)));
        }
        Ok(())
    }

    pub fn wedge(&self, other: &Self) -> Result<Self> {
        self.same_ambient(other)?;
        let mut out = Self::zero(self.dim);
        for (&i, x) in &self.coeffs {
            for (&j, y) in &other.coeffs {
                if let Some(neg) = wedge_sign(i, j) {
                    let c = x * y;
                    out.insert(i | j, if neg { -c } else { c });
                }
            }
        }
        Ok(out)
    }

    /// Interior product with a functional `x`: the degree `-1` derivation
    /// with `x -| v = x(v)` on vectors.
    pub fn contract(&self, x: &[Q]) -> Result<Self> {
        if x.len() != self.dim {
            return Err(Error::Invalid(format!("ambient mismatch: {} vs {}", x.len(), self.dim)));
        }
        let mut out = Self::zero(self.dim);
        for (&m, c) in &self.coeffs {
            for (pos, i) in indices(m).into_iter().enumerate() {
                if x[i].is_zero() {
                    continue;
                }
                let v = c * &x[i];
                out.insert(m & !(1 << i), if pos % 2 == 1 { -v } else { v });
            }
        }
        Ok(out)
    }

    /// Applies a linear map of `V` (given on basis vectors as columns of `a`)
    /// functorially.
    pub fn apply(&self, a: &Mat<Q>) -> Self {
        let cols: Vec<Self> =
            (0..self.dim).map(|j| Self::vector(&(0..self.dim).map(|i| a[(i, j)].clone()).collect::<Vec<_>>())).collect();
        let mut out = Self::zero(self.dim);
        for (&m, c) in &self.coeffs {
            let img = indices(m).into_iter().fold(Self::one(self.dim), |acc, i| acc.wedge(&cols[i]).unwrap());
            out = out + img.scale(c);
        }
        out
    }
}

impl Add for ExteriorElement {
    type Output = Self;
    fn add(mut self, rhs: Self) -> Self {
        for (m, c) in rhs.coeffs {
            self.insert(m, c);
        }
        self
    }
}

impl Neg for ExteriorElement {
    type Output = Self;
    fn neg(self) -> Self {
        self.scale(&qi(-1))
    }
}

impl Sub for ExteriorElement {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        self + (-rhs)
    }
}

/// A random rational with small numerator and denominator.
pub fn random_q(rng: &mut impl Rng) -> Q {
    Q::new(rng.gen_range(-9i64..=9).into(), rng.gen_range(1i64..=5).into())
}

/// A random element of `Lambda^* Q^dim`, optionally homogeneous.
pub fn random_element(rng: &mut impl Rng, dim: usize, degree: Option<u32>) -> ExteriorElement {
    let mut out = ExteriorElement::zero(dim);
    for mask in 0..1u32 << dim {
        if degree.is_none_or(|d| mask.count_ones() == d) && rng.gen_bool(0.6) {
            out.insert(mask, random_q(rng));
        }
    }
    out
}

/// A random positive-definite Gram matrix `A^T A + I`.
pub fn random_gram(rng: &mut impl Rng, dim: usize) -> Mat<Q> {
    let a = Mat::from_rows((0..dim).map(|_| (0..dim).map(|_| random_q(rng)).collect()).collect());
    a.transpose().mul(&a).add(&Mat::identity(dim))
}

/// Checks `<X ^ A, B> = <A, X -| B>` on all basis triples and on `trials`
/// random triples.
pub fn adjointness_check(space: &MetricSpaceQ, trials: usize, seed: u64) -> Result<bool> {
    let d = space.dim();
    let holds = |x: &ExteriorElement, a: &ExteriorElement, b: &ExteriorElement| -> Result<bool> {
        Ok(space.inner(&x.wedge(a)?, b)? == space.inner(a, &space.metric_contract(x, b)?)?)
    };
    for x in 0..1u32 << d {
        for a in 0..1u32 << d {
            for b in 0..1u32 << d {
                if x & a == 0 && (x | a).count_ones() == b.count_ones() {
                    let (x, a, b) = (ExteriorElement::basis(d, x), ExteriorElement::basis(d, a), ExteriorElement::basis(d, b));
                    if !holds(&x, &a, &b)? {
                        return Ok(false);
                    }
                }
            }
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..trials {
        let x = random_element(&mut rng, d, None);
        let a = random_element(&mut rng, d, None);
        let b = random_element(&mut rng, d, None);
        if !holds(&x, &a, &b)? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Checks the derivation rule
/// `x -| (a ^ b) = (x -| a) ^ b + (-1)^{deg a} a ^ (x -| b)` on all basis
/// pairs and coordinate functionals.
pub fn derivation_check(dim: usize) -> Result<bool> {
    for i in 0..dim {
        let x = unit_vector(dim, i);
        for a in 0..1u32 << dim {
            for b in 0..1u32 << dim {
                let (ea, eb) = (ExteriorElement::basis(dim, a), ExteriorElement::basis(dim, b));
                let lhs = ea.wedge(&eb)?.contract(&x)?;
                let mut rhs2 = ea.wedge(&eb.contract(&x)?)?;
                if a.count_ones() % 2 == 1 {
                    rhs2 = -rhs2;
                }
                let rhs = ea.contract(&x)?.wedge(&eb)? + rhs2;
                if lhs != rhs {
                    return Ok(false);
                }
            }
        }
    }
    Ok(true)
}

/// Binomial coefficient.
pub fn binomial(n: u64, k: u64) -> u64 {
    if k > n {
        return 0;
    }
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

/// Graded dimensions `k * C(delta, j - q)` for `j = q, ..., q + delta`.
pub fn model_dims(delta: u64, q: u64, k: u64) -> Vec<(u64, u64)> {
    (0..=delta).map(|i| (q + i, k * binomial(delta, i))).collect()
}

/// A signed permutation `e_i -> sign_i e_{perm_i}` of `Q^delta`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SignedPermutation {
    pub perm: Vec<usize>,
    pub signs: Vec<i8>,
}

impl SignedPermutation {
    pub fn identity(n: usize) -> Self {
        SignedPermutation { perm: (0..n).collect(), signs: vec![1; n] }
    }

    /// `-1` times the reversal `e_i -> -e_{n-1-i}`.
    pub fn minus_reversal(n: usize) -> Self {
        SignedPermutation { perm: (0..n).rev().collect(), signs: vec![-1; n] }
    }

    pub fn matrix(&self) -> Mat<Q> {
        let n = self.perm.len();
        let mut m = Mat::zeros(n, n);
        for (i, (&p, &s)) in self.perm.iter().zip(&self.signs).enumerate() {
            m[(p, i)] = qi(s as i64);
        }
        m
    }

    pub fn is_involution(&self) -> bool {
        let m = self.matrix();
        m.mul(&m) == Mat::identity(self.perm.len())
    }
}

/// A free graded module over `Lambda^*(Q^delta)` modelling tempered
/// cohomology: `k` generators in degree `q`, given by an invertible-or-not
/// `k x k` matrix in a free module on `k` symbols, a long Weyl involution `w`
/// and a symmetric form `S` on generators for the Poincare pairing.
#[derive(Clone, Debug)]
pub struct TemperedCohomologyModel {
    pub delta: usize,
    pub q: u64,
    pub k: usize,
    pub generators: Mat<Q>,
    pub w: SignedPermutation,
    pub form: Mat<Q>,
}

/// Element of the free module: coefficients on `(symbol, e_I)`.
pub type ModuleElement = BTreeMap<(usize, u32), Q>;

impl TemperedCohomologyModel {
    pub fn new(delta: usize, q: u64, k: usize, w: SignedPermutation) -> Result<Self> {
        if w.perm.len() != delta || !w.is_involution() {
            return Err(Error::Invalid("long Weyl element must be a signed involution of Q^delta".into()));
        }
        if delta > 16 {
            return Err(Error::Invalid("delta too large for the explicit model".into()));
        }
        Ok(TemperedCohomologyModel { delta, q, k, generators: Mat::identity(k), w, form: Mat::identity(k) })
    }

    /// Replaces the degree-`q` generators by the rows of `g`.
    pub fn with_generators(mut self, g: Mat<Q>) -> Self {
        self.generators = g;
        self
    }

    pub fn dims(&self) -> Vec<(u64, u64)> {
        model_dims(self.delta as u64, self.q, self.k as u64)
    }

    /// `f . nu` acting on the exterior part from the right.
    pub fn act(&self, f: &ModuleElement, nu: &ExteriorElement) -> ModuleElement {
        let mut out = ModuleElement::new();
        for (&(g, m), c) in f {
            let prod = ExteriorElement::basis(self.delta, m).wedge(nu).unwrap();
            for (&mm, x) in prod.coeffs() {
                let e = out.entry((g, mm)).or_insert_with(Q::zero);
                *e += c * x;
            }
        }
        out.retain(|_, v| !v.is_zero());
        out
    }

    /// Rank check of `H^q (x) Lambda^i -> H^{q+i}` for every `i`.
    pub fn freeness_check(&self) -> bool {
        let d = self.delta;
        (0..=d as u32).all(|i| {
            let masks: Vec<u32> = (0..1u32 << d).filter(|m| m.count_ones() == i).collect();
            let cols: Vec<(usize, u32)> = (0..self.k).flat_map(|s| masks.iter().map(move |&m| (s, m))).collect();
            let cols = &cols;
            let rows: Vec<Vec<Q>> = (0..self.k)
                .flat_map(|g| {
                    masks.iter().map(move |&m| {
                        let mut f = ModuleElement::new();
                        for s in 0..self.k {
                            f.insert((s, 0), self.generators[(g, s)].clone());
                        }
                        let img = self.act(&f, &ExteriorElement::basis(d, m));
                        cols.iter().map(|c| img.get(c).cloned().unwrap_or_else(Q::zero)).collect()
                    })
                })
                .collect();
            rows.is_empty() || Mat::from_rows(rows).rank() == self.k * binomial(d as u64, i as u64) as usize
        })
    }

    /// Poincare pairing `<g (x) a, h (x) b> = S(g, h) top(a ^ w(b))`.
    pub fn pairing(&self, f1: &ModuleElement, f2: &ModuleElement) -> Q {
        let top = (1u32 << self.delta) - 1;
        let wm = self.w.matrix();
        let mut total = Q::zero();
        for (&(g, a), x) in f1 {
            for (&(h, b), y) in f2 {
                if self.form[(g, h)].is_zero() || (a.count_ones() + b.count_ones()) as usize != self.delta {
                    continue;
                }
                let wb = ExteriorElement::basis(self.delta, b).apply(&wm);
                let prod = ExteriorElement::basis(self.delta, a).wedge(&wb).unwrap();
                total += x * y * &self.form[(g, h)] * prod.coeff(top);
            }
        }
        total
    }

    /// Checks `<f1 . X, f2> = (-1)^{deg X * deg f2'} <f1, f2 . w(X)>` over all
    /// basis elements with complementary degrees, where `deg f2'` is the
    /// exterior degree of `f2`. With `twist` the adjoint uses `twist` in
    /// place of `w`, which should fail unless they agree on the tested range.
    pub fn poincare_adjoint_check_with(&self, twist: &SignedPermutation) -> bool {
        let d = self.delta;
        let tm = twist.matrix();
        for g in 0..self.k {
            for h in 0..self.k {
                for a in 0..1u32 << d {
                    for x in 0..1u32 << d {
                        for b in 0..1u32 << d {
                            if (a.count_ones() + x.count_ones() + b.count_ones()) as usize != d {
                                continue;
                            }
                            let f1 = ModuleElement::from([((g, a), Q::one())]);
                            let f2 = ModuleElement::from([((h, b), Q::one())]);
                            let xe = ExteriorElement::basis(d, x);
                            let lhs = self.pairing(&self.act(&f1, &xe), &f2);
                            let mut rhs = self.pairing(&f1, &self.act(&f2, &xe.apply(&tm)));
                            if (x.count_ones() * b.count_ones()) % 2 == 1 {
                                rhs = -rhs;
                            }
                            if lhs != rhs {
                                return false;
                            }
                        }
                    }
                }
            }
        }
        true
    }

    pub fn poincare_adjoint_check(&self) -> bool {
        self.poincare_adjoint_check_with(&self.w)
    }

    /// Norm on the module: generators orthonormal, exterior parts with the
    /// metric of `space`.
    pub fn norm_sq(&self, space: &MetricSpaceQ, f: &ModuleElement) -> Q {
        let mut total = Q::zero();
        for g in 0..self.k {
            let mut part = ExteriorElement::zero(self.delta);
            for (&(h, m), c) in f {
                if h == g {
                    part = part + ExteriorElement::basis(self.delta, m).scale(c);
                }
            }
            total += space.inner(&part, &part).unwrap();
        }
        total
    }

    /// `||omega . nu||^2 = ||omega||^2 ||nu||^2` for `omega` of degree `q`,
    /// on basis pairs and `trials` random pairs.
    pub fn isometry_check(&self, space: &MetricSpaceQ, trials: usize, seed: u64) -> bool {
        let d = self.delta;
        let check = |omega: &ModuleElement, nu: &ExteriorElement| {
            self.norm_sq(space, &self.act(omega, nu)) == self.norm_sq(space, omega) * space.inner(nu, nu).unwrap()
        };
        for g in 0..self.k {
            for m in 0..1u32 << d {
                if !check(&ModuleElement::from([((g, 0), Q::one())]), &ExteriorElement::basis(d, m)) {
                    return false;
                }
            }
        }
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        (0..trials).all(|_| {
            let omega: ModuleElement = (0..self.k).map(|g| ((g, 0), random_q(&mut rng))).filter(|(_, v)| !v.is_zero()).collect();
            let deg = rng.gen_range(0..=d as u32);
            check(&omega, &random_element(&mut rng, d, Some(deg)))
        })
    }

    /// The twisted real structure `g (x) a -> g (x) w(a)`.
    pub fn conj(&self, f: &ModuleElement) -> ModuleElement {
        let wm = self.w.matrix();
        let mut out = ModuleElement::new();
        for (&(g, m), c) in f {
            for (&mm, x) in ExteriorElement::basis(self.delta, m).apply(&wm).coeffs() {
                *out.entry((g, mm)).or_insert_with(Q::zero) += c * x;
            }
        }
        out.retain(|_, v| !v.is_zero());
        out
    }

    /// Conjugation is an involution intertwining `nu` with `w(nu)`:
    /// `conj(f . nu) = conj(f) . w(nu)`.
    pub fn conjugation_check(&self, trials: usize, seed: u64) -> bool {
        let d = self.delta;
        let wm = self.w.matrix();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        (0..trials).all(|_| {
            let f: ModuleElement = (0..self.k)
                .flat_map(|g| (0..1u32 << d).map(move |m| (g, m)))
                .filter_map(|key| {
                    let v = random_q(&mut rng);
                    (!v.is_zero()).then_some((key, v))
                })
                .collect();
            let nu = random_element(&mut rng, d, None);
            self.conj(&self.conj(&f)) == f && self.conj(&self.act(&f, &nu)) == self.act(&self.conj(&f), &nu.apply(&wm))
        })
    }
}
