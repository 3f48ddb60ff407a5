//! Small dense matrices over an involutive scalar ring.
//!
//! The ring is the type parameter, so a split-complex matrix and an ordinary
//! complex matrix cannot meet in one expression.

use std::fmt;
use std::ops::{Add, Index, IndexMut, Mul, Neg, Sub};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::scalar::{Involutive, Ring, UnitRing};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ShapeError {
    #[error("{op}: shapes {a:?} and {b:?} do not conform")]
    Mismatch { op: &'static str, a: (usize, usize), b: (usize, usize) },
    #[error("{op}: matrix of shape {0:?} is not square", op = .1)]
    NotSquare((usize, usize), &'static str),
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RMatrix<T> {
    rows: usize,
    cols: usize,
    data: Vec<T>,
}

impl<T: fmt::Debug> fmt::Debug for RMatrix<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "RMatrix {}x{} [", self.rows, self.cols)?;
        for r in 0..self.rows {
            writeln!(f, "  {:?}", &self.data[r * self.cols..(r + 1) * self.cols])?;
        }
        write!(f, "]")
    }
}

impl<T> RMatrix<T> {
    pub fn rows(&self) -> usize {
        self.rows
    }
    pub fn cols(&self) -> usize {
        self.cols
    }
    pub fn shape(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }
    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }
    pub fn entries(&self) -> &[T] {
        &self.data
    }

    pub fn from_vec(rows: usize, cols: usize, data: Vec<T>) -> Self {
        assert_eq!(data.len(), rows * cols, "RMatrix::from_vec: wrong entry count");
        RMatrix { rows, cols, data }
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> T) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for r in 0..rows {
            for c in 0..cols {
                data.push(f(r, c));
            }
        }
        RMatrix { rows, cols, data }
    }

    pub fn map<U>(&self, f: impl FnMut(&T) -> U) -> RMatrix<U> {
        RMatrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(f).collect() }
    }

    pub fn row(&self, r: usize) -> &[T] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }
}

impl<T> Index<(usize, usize)> for RMatrix<T> {
    type Output = T;
    fn index(&self, (r, c): (usize, usize)) -> &T {
        debug_assert!(r < self.rows && c < self.cols);
        &self.data[r * self.cols + c]
    }
}

impl<T> IndexMut<(usize, usize)> for RMatrix<T> {
    fn index_mut(&mut self, (r, c): (usize, usize)) -> &mut T {
        debug_assert!(r < self.rows && c < self.cols);
        &mut self.data[r * self.cols + c]
    }
}

impl<T: Ring> RMatrix<T> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        RMatrix { rows, cols, data: vec![T::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        Self::from_fn(n, n, |r, c| if r == c { T::one() } else { T::zero() })
    }

    pub fn diag(d: &[T]) -> Self {
        let n = d.len();
        Self::from_fn(n, n, |r, c| if r == c { d[r].clone() } else { T::zero() })
    }

    /// Integer matrix, row-major.
    pub fn from_ints(rows: usize, cols: usize, v: &[i64]) -> Self {
        assert_eq!(v.len(), rows * cols);
        RMatrix { rows, cols, data: v.iter().map(|&n| T::from_i64(n)).collect() }
    }

    /// Column vector.
    pub fn column(v: Vec<T>) -> Self {
        let n = v.len();
        RMatrix { rows: n, cols: 1, data: v }
    }

    pub fn scale(&self, s: &T) -> Self {
        self.map(|x| s.clone() * x.clone())
    }

    pub fn scale_i(&self, n: i64) -> Self {
        self.scale(&T::from_i64(n))
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|x| x.is_zero())
    }

    /// Largest component magnitude; the residual measure for float checks.
    pub fn max_abs(&self) -> f64 {
        self.data.iter().map(|x| x.mag()).fold(0.0, f64::max)
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |r, c| self[(c, r)].clone())
    }

    pub fn trace(&self) -> T {
        (0..self.rows.min(self.cols)).fold(T::zero(), |acc, i| acc + self[(i, i)].clone())
    }

    pub fn try_matmul(&self, o: &Self) -> Result<Self, ShapeError> {
        if self.cols != o.rows {
            return Err(ShapeError::Mismatch { op: "matmul", a: self.shape(), b: o.shape() });
        }
        let mut out = Self::zeros(self.rows, o.cols);
        for r in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(r, k)];
                if a.is_zero() {
                    continue;
                }
                for c in 0..o.cols {
                    let b = &o[(k, c)];
                    if b.is_zero() {
                        continue;
                    }
                    let idx = r * o.cols + c;
                    out.data[idx] = out.data[idx].clone() + a.clone() * b.clone();
                }
            }
        }
        Ok(out)
    }

    fn zip(&self, o: &Self, op: &'static str, f: impl Fn(T, T) -> T) -> Result<Self, ShapeError> {
        if self.shape() != o.shape() {
            return Err(ShapeError::Mismatch { op, a: self.shape(), b: o.shape() });
        }
        let data = self.data.iter().zip(&o.data).map(|(a, b)| f(a.clone(), b.clone())).collect();
        Ok(RMatrix { rows: self.rows, cols: self.cols, data })
    }

    pub fn try_add(&self, o: &Self) -> Result<Self, ShapeError> {
        self.zip(o, "add", |a, b| a + b)
    }

    pub fn try_sub(&self, o: &Self) -> Result<Self, ShapeError> {
        self.zip(o, "sub", |a, b| a - b)
    }

    /// `[A, B] = AB − BA`.
    pub fn commutator(&self, o: &Self) -> Result<Self, ShapeError> {
        self.try_matmul(o)?.try_sub(&o.try_matmul(self)?)
    }

    /// `{A, B} = AB + BA`.
    pub fn anticommutator(&self, o: &Self) -> Result<Self, ShapeError> {
        self.try_matmul(o)?.try_add(&o.try_matmul(self)?)
    }

    /// Tensor product in the convention where `b` indexes the blocks:
    /// block `(i, j)` of the result is `b[i][j]·a`. Under this convention
    /// `kron(1₈, σ¹)` is the off-diagonal `[[0, 1₈], [1₈, 0]]`.
    pub fn kron(a: &Self, b: &Self) -> Self {
        Self::from_fn(a.rows * b.rows, a.cols * b.cols, |r, c| {
            let (bi, ai) = (r / a.rows, r % a.rows);
            let (bj, aj) = (c / a.cols, c % a.cols);
            b[(bi, bj)].clone() * a[(ai, aj)].clone()
        })
    }

    /// Assemble from a grid of blocks; `None` is a zero block. Every block row
    /// must contain at least one block to fix the heights, and likewise columns.
    pub fn block(grid: &[Vec<Option<&Self>>]) -> Self {
        let heights: Vec<usize> =
            grid.iter().map(|row| row.iter().flatten().next().expect("block row needs one explicit block").rows).collect();
        let ncol = grid[0].len();
        let widths: Vec<usize> =
            (0..ncol).map(|j| grid.iter().find_map(|row| row[j].map(|m| m.cols)).expect("block column needs one explicit block")).collect();
        let (nr, nc) = (heights.iter().sum(), widths.iter().sum());
        let mut out = Self::zeros(nr, nc);
        let mut r0 = 0;
        for (bi, row) in grid.iter().enumerate() {
            let mut c0 = 0;
            for (bj, blk) in row.iter().enumerate() {
                if let Some(m) = blk {
                    assert_eq!(m.shape(), (heights[bi], widths[bj]), "block size mismatch");
                    for r in 0..m.rows {
                        for c in 0..m.cols {
                            out[(r0 + r, c0 + c)] = m[(r, c)].clone();
                        }
                    }
                }
                c0 += widths[bj];
            }
            r0 += heights[bi];
        }
        out
    }

    /// `[[a, 0], [0, b]]`.
    pub fn block_diag(a: &Self, b: &Self) -> Self {
        Self::block(&[vec![Some(a), None], vec![None, Some(b)]])
    }

    /// `[[0, a], [b, 0]]`.
    pub fn block_offdiag(a: &Self, b: &Self) -> Self {
        Self::block(&[vec![None, Some(a)], vec![Some(b), None]])
    }

    pub fn submatrix(&self, r0: usize, c0: usize, rows: usize, cols: usize) -> Self {
        Self::from_fn(rows, cols, |r, c| self[(r0 + r, c0 + c)].clone())
    }

    pub fn sum<'a>(n: usize, m: usize, it: impl IntoIterator<Item = &'a Self>) -> Self
    where
        T: 'a,
    {
        it.into_iter().fold(Self::zeros(n, m), |acc, x| &acc + x)
    }
}

impl<T: Involutive> RMatrix<T> {
    pub fn conj(&self) -> Self {
        self.map(|x| x.conj())
    }

    /// Conjugate transpose under the ring involution.
    pub fn dagger(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |r, c| self[(c, r)].conj())
    }

    /// `G · M† · G` for a diagonal metric `G`.
    pub fn weighted_adjoint(&self, g: &MetricForm) -> Result<Self, ShapeError> {
        if !self.is_square() {
            return Err(ShapeError::NotSquare(self.shape(), "weighted_adjoint"));
        }
        if g.dim() != self.rows {
            return Err(ShapeError::Mismatch { op: "weighted_adjoint", a: self.shape(), b: (g.dim(), g.dim()) });
        }
        let d = self.dagger();
        Ok(Self::from_fn(self.rows, self.cols, |r, c| {
            let s = g.signature[r] * g.signature[c];
            if s > 0 {
                d[(r, c)].clone()
            } else {
                -d[(r, c)].clone()
            }
        }))
    }

    pub fn is_hermitian(&self) -> bool {
        self.is_square() && *self == self.dagger()
    }
}

impl<T: UnitRing> RMatrix<T> {
    /// Embed a real matrix.
    pub fn from_real(m: &RMatrix<T::Re>) -> Self {
        m.map(|x| T::from_re(x.clone()))
    }

    /// Multiply by the ring's imaginary unit.
    pub fn times_unit(&self) -> Self {
        self.scale(&T::unit())
    }
}

macro_rules! binop {
    ($tr:ident, $f:ident, $call:ident) => {
        impl<'a, T: Ring> $tr<&'a RMatrix<T>> for &'a RMatrix<T> {
            type Output = RMatrix<T>;
            fn $f(self, o: &'a RMatrix<T>) -> RMatrix<T> {
                self.$call(o).unwrap_or_else(|e| panic!("{e}"))
            }
        }
        impl<T: Ring> $tr for RMatrix<T> {
            type Output = RMatrix<T>;
            fn $f(self, o: RMatrix<T>) -> RMatrix<T> {
                self.$call(&o).unwrap_or_else(|e| panic!("{e}"))
            }
        }
    };
}

binop!(Mul, mul, try_matmul);
binop!(Add, add, try_add);
binop!(Sub, sub, try_sub);

impl<T: Ring> Neg for RMatrix<T> {
    type Output = RMatrix<T>;
    fn neg(self) -> RMatrix<T> {
        self.map(|x| -x.clone())
    }
}

impl<T: Ring> Neg for &RMatrix<T> {
    type Output = RMatrix<T>;
    fn neg(self) -> RMatrix<T> {
        self.map(|x| -x.clone())
    }
}

// ---------------------------------------------------------------------------

/// Diagonal metric with entries ±1.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct MetricForm {
    pub signature: Vec<i8>,
}

impl MetricForm {
    pub fn new(signature: &[i8]) -> Self {
        assert!(signature.iter().all(|s| *s == 1 || *s == -1), "metric entries must be ±1");
        MetricForm { signature: signature.to_vec() }
    }

    pub fn dim(&self) -> usize {
        self.signature.len()
    }

    /// `η_aa` (0-based storage).
    pub fn get(&self, a: usize) -> i8 {
        self.signature[a]
    }

    /// `η_ab x^a x^b`.
    pub fn quad(&self, x: &[f64]) -> f64 {
        x.iter().zip(&self.signature).map(|(v, s)| *s as f64 * v * v).sum()
    }

    pub fn quad_exact<T: Ring>(&self, x: &[T]) -> T {
        x.iter().zip(&self.signature).fold(T::zero(), |acc, (v, s)| {
            let t = v.clone() * v.clone();
            if *s > 0 {
                acc + t
            } else {
                acc - t
            }
        })
    }

    /// Index lowering on a coordinate vector.
    pub fn lower(&self, x: &[f64]) -> Vec<f64> {
        x.iter().zip(&self.signature).map(|(v, s)| *s as f64 * v).collect()
    }

    pub fn determinant(&self) -> i8 {
        self.signature.iter().product()
    }

    pub fn to_matrix<T: Ring>(&self) -> RMatrix<T> {
        RMatrix::diag(&self.signature.iter().map(|&s| T::from_i64(s as i64)).collect::<Vec<_>>())
    }

    /// Block-repeat the signature `k` times: `diag(s, s, …)`.
    pub fn repeat(&self, k: usize) -> Self {
        MetricForm { signature: (0..k).flat_map(|_| self.signature.iter().copied()).collect() }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{q, Rational};
    use crate::splitnum::SplitComplex;
    use num_complex::Complex;
    use num_traits::Zero;

    type SC = SplitComplex<Rational>;
    type M = RMatrix<SC>;

    fn sc(re: i64, im: i64) -> SC {
        SplitComplex::new(q(re, 1), q(im, 1))
    }

    fn split_pauli() -> [M; 3] {
        let o = SC::zero;
        [
            M::from_vec(2, 2, vec![o(), sc(1, 0), sc(1, 0), o()]),
            M::from_vec(2, 2, vec![o(), sc(0, -1), sc(0, 1), o()]),
            M::from_vec(2, 2, vec![sc(1, 0), o(), o(), sc(-1, 0)]),
        ]
    }

    #[test]
    fn sigma1_squares_to_identity() {
        let s = split_pauli();
        assert_eq!(&s[0] * &s[0], M::identity(2));
    }

    #[test]
    fn identity_is_neutral() {
        let s = split_pauli();
        assert_eq!(&M::identity(2) * &s[1], s[1]);
    }

    #[test]
    fn split_pauli_sigma2_is_hermitian() {
        assert!(split_pauli()[1].is_hermitian());
    }

    #[test]
    fn anticommutator_sigma1_sigma2_vanishes() {
        let s = split_pauli();
        assert!(s[0].anticommutator(&s[1]).unwrap().is_zero());
    }

    #[test]
    fn commutator_with_self_vanishes() {
        let s = split_pauli();
        assert!(s[2].commutator(&s[2]).unwrap().is_zero());
    }

    #[test]
    fn kron_identity_sigma1_is_offdiagonal() {
        let s = split_pauli();
        let k = M::kron(&M::identity(8), &s[0]);
        let want = M::block_offdiag(&M::identity(8), &M::identity(8));
        assert_eq!(k, want);
    }

    #[test]
    fn mismatched_shapes_are_errors() {
        let a = M::zeros(2, 3);
        assert!(matches!(a.try_matmul(&a), Err(ShapeError::Mismatch { .. })));
    }

    #[test]
    fn weighted_adjoint_of_tau() {
        type C = Complex<Rational>;
        let i = C::new(q(0, 1), q(1, 1));
        let tau1 = RMatrix::<C>::from_ints(2, 2, &[0, 1, 1, 0]).scale(&i);
        let g = MetricForm::new(&[1, -1]);
        let w = tau1.weighted_adjoint(&g).unwrap();
        assert_eq!(w, tau1);
    }

    #[test]
    fn metric_quad_exact() {
        let g = MetricForm::new(&[1, -1, 1]);
        assert_eq!(g.quad_exact(&[q(24, 25), q(0, 1), q(-7, 25)]), q(1, 1));
    }
}
