//! Dense exact linear algebra: matrices over a field and integer lattices in
//! Hermite normal form.

use num::{BigInt, BigRational, Integer, One, Signed, Zero};
use num::Num;
use std::ops::{Index, IndexMut};

/// Exact rational number.
pub type Q = BigRational;

/// Shorthand for the rational `n/d`.
pub fn q(n: i64, d: i64) -> Q {
    Q::new(BigInt::from(n), BigInt::from(d))
}

/// Shorthand for the rational integer `n`.
pub fn qi(n: i64) -> Q {
    Q::from_integer(BigInt::from(n))
}

/// Dense row-major matrix over a ring `T`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Mat<T> {
    pub rows: usize,
    pub cols: usize,
    pub data: Vec<T>,
}

impl<T: Clone + Num> Mat<T> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Mat { rows, cols, data: vec![T::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = T::one();
        }
        m
    }

    /// Builds a matrix from its rows. All rows must have the same length.
    pub fn from_rows(rows: Vec<Vec<T>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|row| row.len() == c), "ragged matrix");
        Mat { rows: r, cols: c, data: rows.into_iter().flatten().collect() }
    }

    pub fn row(&self, i: usize) -> &[T] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn to_rows(&self) -> Vec<Vec<T>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t[(j, i)] = self[(i, j)].clone();
            }
        }
        t
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.rows, "dimension mismatch");
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let prod = a.clone() * other[(k, j)].clone();
                    out[(i, j)] = out[(i, j)].clone() + prod;
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[T]) -> Vec<T> {
        assert_eq!(self.cols, v.len());
        (0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .zip(v)
                    .fold(T::zero(), |acc, (a, b)| acc + a.clone() * b.clone())
            })
            .collect()
    }

    pub fn scale(&self, s: &T) -> Self {
        Mat {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|x| x.clone() * s.clone()).collect(),
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        Mat {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&other.data).map(|(a, b)| a.clone() + b.clone()).collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        Mat {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&other.data).map(|(a, b)| a.clone() - b.clone()).collect(),
        }
    }

    pub fn trace(&self) -> T {
        (0..self.rows.min(self.cols)).fold(T::zero(), |acc, i| acc + self[(i, i)].clone())
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    pub fn is_diagonal(&self) -> bool {
        (0..self.rows).all(|i| (0..self.cols).all(|j| i == j || self[(i, j)].is_zero()))
    }

    /// Reduced row echelon form together with the pivot columns.
    pub fn rref(&self) -> (Self, Vec<usize>) {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            let Some(p) = (r..m.rows).find(|&i| !m[(i, c)].is_zero()) else {
                continue;
            };
            m.swap_rows(r, p);
            let inv = T::one() / m[(r, c)].clone();
            for j in 0..m.cols {
                m[(r, j)] = m[(r, j)].clone() * inv.clone();
            }
            for i in 0..m.rows {
                if i != r && !m[(i, c)].is_zero() {
                    let f = m[(i, c)].clone();
                    for j in 0..m.cols {
                        let d = f.clone() * m[(r, j)].clone();
                        m[(i, j)] = m[(i, j)].clone() - d;
                    }
                }
            }
            pivots.push(c);
            r += 1;
        }
        (m, pivots)
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    pub fn swap_rows(&mut self, a: usize, b: usize) {
        if a != b {
            for j in 0..self.cols {
                self.data.swap(a * self.cols + j, b * self.cols + j);
            }
        }
    }

    pub fn det(&self) -> T {
        assert_eq!(self.rows, self.cols, "determinant of a non-square matrix");
        let mut m = self.clone();
        let n = m.rows;
        let mut det = T::one();
        for c in 0..n {
            let Some(p) = (c..n).find(|&i| !m[(i, c)].is_zero()) else {
                return T::zero();
            };
            if p != c {
                m.swap_rows(p, c);
                det = T::zero() - det;
            }
            let piv = m[(c, c)].clone();
            det = det * piv.clone();
            for i in c + 1..n {
                if !m[(i, c)].is_zero() {
                    let f = m[(i, c)].clone() / piv.clone();
                    for j in c..n {
                        let d = f.clone() * m[(c, j)].clone();
                        m[(i, j)] = m[(i, j)].clone() - d;
                    }
                }
            }
        }
        det
    }

    pub fn inverse(&self) -> Option<Self> {
        assert_eq!(self.rows, self.cols, "inverse of a non-square matrix");
        let n = self.rows;
        let mut aug = Self::zeros(n, 2 * n);
        for i in 0..n {
            for j in 0..n {
                aug[(i, j)] = self[(i, j)].clone();
            }
            aug[(i, n + i)] = T::one();
        }
        let (r, pivots) = aug.rref();
        if pivots.len() < n || pivots[n - 1] != n - 1 {
            return None;
        }
        let mut inv = Self::zeros(n, n);
        for i in 0..n {
            for j in 0..n {
                inv[(i, j)] = r[(i, n + j)].clone();
            }
        }
        Some(inv)
    }

    /// Basis of the right kernel `{x : self * x = 0}`.
    pub fn kernel(&self) -> Vec<Vec<T>> {
        let (r, pivots) = self.rref();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        free.iter()
            .map(|&f| {
                let mut v = vec![T::zero(); self.cols];
                v[f] = T::one();
                for (i, &p) in pivots.iter().enumerate() {
                    v[p] = T::zero() - r[(i, f)].clone();
                }
                v
            })
            .collect()
    }
}

impl<T> Index<(usize, usize)> for Mat<T> {
    type Output = T;
    fn index(&self, (i, j): (usize, usize)) -> &T {
        &self.data[i * self.cols + j]
    }
}

impl<T> IndexMut<(usize, usize)> for Mat<T> {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut T {
        &mut self.data[i * self.cols + j]
    }
}

/// A sublattice of `Z^n` stored in row Hermite normal form, remembering how
/// each HNF row is built from the original generators.
#[derive(Clone, Debug)]
pub struct IntLattice {
    ncols: usize,
    ngens: usize,
    rows: Vec<Vec<BigInt>>,
    pivots: Vec<usize>,
    transform: Vec<Vec<BigInt>>,
}

impl IntLattice {
    /// Lattice spanned by `gens`, each a vector of length `ncols`.
    pub fn new(gens: &[Vec<BigInt>], ncols: usize) -> Self {
        let m = gens.len();
        let mut a: Vec<Vec<BigInt>> = gens.to_vec();
        let mut u: Vec<Vec<BigInt>> = (0..m)
            .map(|i| (0..m).map(|j| if i == j { BigInt::one() } else { BigInt::zero() }).collect())
            .collect();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..ncols {
            if r == m {
                break;
            }
            loop {
                let best = (r..m)
                    .filter(|&i| !a[i][c].is_zero())
                    .min_by(|&x, &y| a[x][c].abs().cmp(&a[y][c].abs()));
                let Some(best) = best else { break };
                a.swap(r, best);
                u.swap(r, best);
                let mut done = true;
                for i in r + 1..m {
                    if !a[i][c].is_zero() {
                        let k = a[i][c].div_floor(&a[r][c]);
                        row_axpy(&mut a, i, r, &k);
                        row_axpy(&mut u, i, r, &k);
                        if !a[i][c].is_zero() {
                            done = false;
                        }
                    }
                }
                if done {
                    break;
                }
            }
            if r < m && !a[r][c].is_zero() {
                if a[r][c].is_negative() {
                    a[r].iter_mut().for_each(|x| *x = -x.clone());
                    u[r].iter_mut().for_each(|x| *x = -x.clone());
                }
                for i in 0..r {
                    let k = a[i][c].div_floor(&a[r][c]);
                    if !k.is_zero() {
                        row_axpy(&mut a, i, r, &k);
                        row_axpy(&mut u, i, r, &k);
                    }
                }
                pivots.push(c);
                r += 1;
            }
        }
        a.truncate(r);
        u.truncate(r);
        IntLattice { ncols, ngens: m, rows: a, pivots, transform: u }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn hnf_rows(&self) -> &[Vec<BigInt>] {
        &self.rows
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    /// Canonical representative of `v` modulo the lattice, together with the
    /// integer multiples of each HNF row that were subtracted.
    pub fn reduce(&self, v: &[Q]) -> (Vec<Q>, Vec<BigInt>) {
        assert_eq!(v.len(), self.ncols);
        let mut v = v.to_vec();
        let mut ks = Vec::with_capacity(self.rows.len());
        for (row, &p) in self.rows.iter().zip(&self.pivots) {
            let k = (&v[p] / Q::from_integer(row[p].clone())).floor().to_integer();
            if !k.is_zero() {
                for (x, r) in v.iter_mut().zip(row) {
                    *x -= Q::from_integer(&k * r);
                }
            }
            ks.push(k);
        }
        (v, ks)
    }

    /// Integer coefficients on the original generators expressing `v`, if
    /// `v` lies in the lattice.
    pub fn express(&self, v: &[Q]) -> Option<Vec<BigInt>> {
        let (rest, ks) = self.reduce(v);
        if !rest.iter().all(Zero::is_zero) {
            return None;
        }
        let mut coeffs = vec![BigInt::zero(); self.ngens];
        for (k, urow) in ks.iter().zip(&self.transform) {
            for (c, x) in coeffs.iter_mut().zip(urow) {
                *c += k * x;
            }
        }
        Some(coeffs)
    }

    /// Whether `v` lies in the rational span of the lattice.
    pub fn in_rational_span(&self, v: &[Q]) -> bool {
        let mut rows: Vec<Vec<Q>> = self
            .rows
            .iter()
            .map(|r| r.iter().map(|x| Q::from_integer(x.clone())).collect())
            .collect();
        let before = rows.len();
        rows.push(v.to_vec());
        if before == 0 {
            return v.iter().all(Zero::is_zero);
        }
        Mat::from_rows(rows).rank() == before
    }
}

fn row_axpy(m: &mut [Vec<BigInt>], target: usize, source: usize, k: &BigInt) {
    let (src, tgt) = if target > source {
        let (lo, hi) = m.split_at_mut(target);
        (&lo[source], &mut hi[0])
    } else {
        let (lo, hi) = m.split_at_mut(source);
        (&hi[0], &mut lo[target])
    };
    for (t, s) in tgt.iter_mut().zip(src) {
        *t -= k * s;
    }
}

/// Least common multiple of the denominators of `xs`.
pub fn common_denominator<'a>(xs: impl IntoIterator<Item = &'a Q>) -> BigInt {
    xs.into_iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn zv(xs: &[i64]) -> Vec<BigInt> {
        xs.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn determinant_and_inverse_agree() {
        let m = Mat::from_rows(vec![
            vec![qi(2), qi(1), qi(0)],
            vec![qi(1), qi(3), qi(1)],
            vec![qi(0), qi(1), qi(4)],
        ]);
        assert_eq!(m.det(), qi(18));
        let inv = m.inverse().unwrap();
        assert_eq!(m.mul(&inv), Mat::identity(3));
    }

    #[test]
    fn singular_matrix_has_kernel() {
        let m = Mat::from_rows(vec![vec![qi(1), qi(2)], vec![qi(2), qi(4)]]);
        assert!(m.inverse().is_none());
        let k = m.kernel();
        assert_eq!(k.len(), 1);
        assert!(m.mul_vec(&k[0]).iter().all(Zero::is_zero));
    }

    #[test]
    fn hnf_reduction_is_canonical() {
        let lat = IntLattice::new(&[zv(&[2, 4]), zv(&[0, 6]), zv(&[4, 2])], 2);
        assert_eq!(lat.rank(), 2);
        let a = lat.reduce(&[qi(5), qi(1)]).0;
        let b = lat.reduce(&[qi(5) + qi(2), qi(1) + qi(4)]).0;
        assert_eq!(a, b);
    }

    #[test]
    fn express_reproduces_vector() {
        let gens = [zv(&[3, 1, 0]), zv(&[0, 2, 5]), zv(&[1, 1, 1])];
        let lat = IntLattice::new(&gens, 3);
        let target: Vec<Q> = [5, 3, 4].iter().map(|&x| qi(x)).collect();
        let c = lat.express(&target).expect("in lattice");
        let mut sum = vec![BigInt::zero(); 3];
        for (k, g) in c.iter().zip(&gens) {
            for (s, x) in sum.iter_mut().zip(g) {
                *s += k * x;
            }
        }
        assert_eq!(sum, zv(&[5, 3, 4]));
    }
}
