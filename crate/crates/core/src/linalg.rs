//! Small dense complex matrices.
//!
//! The matrices handled by this crate are at most a few dozen entries on a
//! side (2g x 2g for desk-scale genus), so everything here is the textbook
//! dense algorithm: partial-pivot LU, Hermitian Cholesky, modified
//! Gram-Schmidt with column pivoting and cyclic Jacobi for real symmetric
//! spectra.

use std::fmt;
use std::ops::{Add, Index, IndexMut, Mul, Neg, Sub};

use num_complex::Complex;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::scalar::{from_usize, lit, Real};

/// Dense row-major complex matrix.
#[derive(Clone, PartialEq)]
pub struct CMat<T> {
    rows: usize,
    cols: usize,
    data: Vec<Complex<T>>,
}

impl<T: fmt::Debug> fmt::Debug for CMat<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "CMat {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            write!(f, "  ")?;
            for j in 0..self.cols {
                let z = &self.data[i * self.cols + j];
                write!(f, "({:?}, {:?}) ", z.re, z.im)?;
            }
            writeln!(f)?;
        }
        write!(f, "]")
    }
}

impl<T: Real> CMat<T> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            data: vec![Complex::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = Complex::one();
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> Complex<T>) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Self { rows, cols, data }
    }

    /// Builds a complex matrix from real entries.
    pub fn from_real(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> T) -> Self {
        Self::from_fn(rows, cols, |i, j| Complex::new(f(i, j), T::zero()))
    }

    /// Panics if the rows are ragged.
    pub fn from_rows(rows: &[Vec<Complex<T>>]) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|row| row.len() == c), "ragged rows");
        Self {
            rows: r,
            cols: c,
            data: rows.iter().flatten().copied().collect(),
        }
    }

    pub fn column_vector(v: &[Complex<T>]) -> Self {
        Self {
            rows: v.len(),
            cols: 1,
            data: v.to_vec(),
        }
    }

    pub fn diagonal(d: &[Complex<T>]) -> Self {
        let mut m = Self::zeros(d.len(), d.len());
        for (i, &x) in d.iter().enumerate() {
            m[(i, i)] = x;
        }
        m
    }

    #[inline]
    pub fn rows(&self) -> usize {
        self.rows
    }

    #[inline]
    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn row(&self, i: usize) -> Vec<Complex<T>> {
        self.data[i * self.cols..(i + 1) * self.cols].to_vec()
    }

    pub fn col(&self, j: usize) -> Vec<Complex<T>> {
        (0..self.rows).map(|i| self[(i, j)]).collect()
    }

    pub fn set_col(&mut self, j: usize, v: &[Complex<T>]) {
        for (i, &x) in v.iter().enumerate() {
            self[(i, j)] = x;
        }
    }

    /// Sub-block `[r0, r0+nr) x [c0, c0+nc)`.
    pub fn block(&self, r0: usize, c0: usize, nr: usize, nc: usize) -> Self {
        Self::from_fn(nr, nc, |i, j| self[(r0 + i, c0 + j)])
    }

    pub fn set_block(&mut self, r0: usize, c0: usize, b: &CMat<T>) {
        for i in 0..b.rows {
            for j in 0..b.cols {
                self[(r0 + i, c0 + j)] = b[(i, j)];
            }
        }
    }

    /// Horizontal concatenation `[self | other]`.
    pub fn hcat(&self, other: &CMat<T>) -> Self {
        assert_eq!(self.rows, other.rows);
        let mut m = Self::zeros(self.rows, self.cols + other.cols);
        m.set_block(0, 0, self);
        m.set_block(0, self.cols, other);
        m
    }

    /// Vertical concatenation.
    pub fn vcat(&self, other: &CMat<T>) -> Self {
        assert_eq!(self.cols, other.cols);
        let mut m = Self::zeros(self.rows + other.rows, self.cols);
        m.set_block(0, 0, self);
        m.set_block(self.rows, 0, other);
        m
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self[(j, i)])
    }

    pub fn conj(&self) -> Self {
        self.map(|z| z.conj())
    }

    /// Conjugate transpose.
    pub fn adjoint(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self[(j, i)].conj())
    }

    pub fn map(&self, f: impl Fn(Complex<T>) -> Complex<T>) -> Self {
        Self {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|&z| f(z)).collect(),
        }
    }

    pub fn scale(&self, s: Complex<T>) -> Self {
        self.map(|z| z * s)
    }

    pub fn scale_real(&self, s: T) -> Self {
        self.map(|z| z * s)
    }

    pub fn real_part(&self) -> Self {
        self.map(|z| Complex::new(z.re, T::zero()))
    }

    pub fn imag_part(&self) -> Self {
        self.map(|z| Complex::new(z.im, T::zero()))
    }

    pub fn frobenius(&self) -> T {
        self.data.iter().fold(T::zero(), |acc, z| acc + z.norm_sqr()).sqrt()
    }

    /// Largest absolute imaginary part of any entry.
    pub fn max_imag(&self) -> T {
        self.data.iter().fold(T::zero(), |acc, z| acc.max(z.im.abs()))
    }

    pub fn trace(&self) -> Complex<T> {
        (0..self.rows.min(self.cols)).map(|i| self[(i, i)]).sum()
    }

    pub fn mul_vec(&self, v: &[Complex<T>]) -> Vec<Complex<T>> {
        assert_eq!(self.cols, v.len());
        (0..self.rows)
            .map(|i| {
                self.data[i * self.cols..(i + 1) * self.cols]
                    .iter()
                    .zip(v)
                    .map(|(&a, &b)| a * b)
                    .sum()
            })
            .collect()
    }

    /// Commutator `self * other - other * self`.
    pub fn commutator(&self, other: &CMat<T>) -> Self {
        &(self * other) - &(other * self)
    }

    /// Symmetric defect `||M - M^T||_F`.
    pub fn asymmetry(&self) -> T {
        (self - &self.transpose()).frobenius()
    }

    /// Hermitian defect `||M - M^*||_F`.
    pub fn non_hermiticity(&self) -> T {
        (self - &self.adjoint()).frobenius()
    }

    /// LU factorisation with partial pivoting.
    pub fn lu(&self) -> Result<Lu<T>> {
        if !self.is_square() {
            return Err(Error::DimensionMismatch {
                expected: self.rows,
                got: self.cols,
            });
        }
        let n = self.rows;
        let mut a = self.clone();
        let mut perm: Vec<usize> = (0..n).collect();
        let mut sign = T::one();
        let scale = self.frobenius().max(T::min_positive_value());
        for k in 0..n {
            let (p, pmax) =
                (k..n)
                    .map(|i| (i, a[(i, k)].norm()))
                    .fold((k, -T::one()), |best, cur| if cur.1 > best.1 { cur } else { best });
            if pmax <= scale * T::epsilon() * from_usize::<T>(n) {
                return Err(Error::Singular);
            }
            if p != k {
                for j in 0..n {
                    a.data.swap(k * n + j, p * n + j);
                }
                perm.swap(k, p);
                sign = -sign;
            }
            let pivot = a[(k, k)];
            for i in (k + 1)..n {
                let factor = a[(i, k)] / pivot;
                a[(i, k)] = factor;
                for j in (k + 1)..n {
                    let akj = a[(k, j)];
                    a[(i, j)] = a[(i, j)] - factor * akj;
                }
            }
        }
        Ok(Lu { lu: a, perm, sign })
    }

    pub fn solve(&self, b: &CMat<T>) -> Result<CMat<T>> {
        self.lu()?.solve(b)
    }

    pub fn solve_vec(&self, b: &[Complex<T>]) -> Result<Vec<Complex<T>>> {
        Ok(self.lu()?.solve(&CMat::column_vector(b))?.col(0))
    }

    pub fn inverse(&self) -> Result<CMat<T>> {
        self.lu()?.solve(&CMat::identity(self.rows))
    }

    pub fn determinant(&self) -> Result<Complex<T>> {
        match self.lu() {
            Ok(lu) => Ok(lu.determinant()),
            Err(Error::Singular) => Ok(Complex::zero()),
            Err(e) => Err(e),
        }
    }

    /// Cholesky factor `L` (lower triangular) with `self = L L^*`.
    ///
    /// Fails with [`Error::NotPositiveDefinite`] if a pivot is not positive.
    pub fn cholesky(&self) -> Result<CMat<T>> {
        if !self.is_square() {
            return Err(Error::DimensionMismatch {
                expected: self.rows,
                got: self.cols,
            });
        }
        let n = self.rows;
        let mut l = CMat::zeros(n, n);
        for j in 0..n {
            let mut d = self[(j, j)].re;
            for k in 0..j {
                d = d - l[(j, k)].norm_sqr();
            }
            if !(d > T::zero()) {
                return Err(Error::NotPositiveDefinite);
            }
            let djj = d.sqrt();
            l[(j, j)] = Complex::new(djj, T::zero());
            for i in (j + 1)..n {
                let mut s = self[(i, j)];
                for k in 0..j {
                    s = s - l[(i, k)] * l[(j, k)].conj();
                }
                l[(i, j)] = s / djj;
            }
        }
        Ok(l)
    }

    /// Inverse of a lower-triangular matrix by forward substitution.
    pub fn lower_triangular_inverse(&self) -> Result<CMat<T>> {
        let n = self.rows;
        let mut inv = CMat::zeros(n, n);
        for col in 0..n {
            for i in col..n {
                let mut s: Complex<T> = if i == col { Complex::one() } else { Complex::zero() };
                for k in col..i {
                    s = s - self[(i, k)] * inv[(k, col)];
                }
                let d = self[(i, i)];
                if d.norm() == T::zero() {
                    return Err(Error::Singular);
                }
                inv[(i, col)] = s / d;
            }
        }
        Ok(inv)
    }

    /// Eigenvalues of the real symmetric part `(Re M + Re M^T) / 2`, ascending.
    pub fn symmetric_real_eigenvalues(&self) -> Vec<T> {
        let n = self.rows;
        let mut a: Vec<Vec<T>> = (0..n)
            .map(|i| (0..n).map(|j| (self[(i, j)].re + self[(j, i)].re) * lit(0.5)).collect())
            .collect();
        jacobi_eigenvalues(&mut a)
    }

    /// Orthonormal basis of the column span, obtained by modified
    /// Gram-Schmidt with column pivoting. Columns whose remaining norm falls
    /// below `rel_tol * max column norm` are discarded.
    pub fn column_basis(&self, rel_tol: T) -> CMat<T> {
        let mut cols: Vec<Vec<Complex<T>>> = (0..self.cols).map(|j| self.col(j)).collect();
        let max_norm = cols.iter().map(|c| vec_norm(c)).fold(T::zero(), T::max);
        let mut basis: Vec<Vec<Complex<T>>> = Vec::new();
        loop {
            let best =
                cols.iter()
                    .enumerate()
                    .map(|(j, c)| (j, vec_norm(c)))
                    .fold(None, |acc: Option<(usize, T)>, cur| match acc {
                        Some(a) if a.1 >= cur.1 => Some(a),
                        _ => Some(cur),
                    });
            let Some((j, nrm)) = best else { break };
            if nrm <= rel_tol * max_norm || nrm == T::zero() {
                break;
            }
            let q: Vec<Complex<T>> = cols.swap_remove(j).iter().map(|&z| z / nrm).collect();
            for c in cols.iter_mut() {
                let proj: Complex<T> = q.iter().zip(c.iter()).map(|(a, b)| a.conj() * b).sum();
                for (ci, qi) in c.iter_mut().zip(&q) {
                    *ci = *ci - *qi * proj;
                }
            }
            basis.push(q);
        }
        let mut m = CMat::zeros(self.rows, basis.len());
        for (j, q) in basis.iter().enumerate() {
            m.set_col(j, q);
        }
        m
    }

    /// Relative residual of projecting the columns of `self` onto the column
    /// span of `other`: `||A - P A|| / ||A||` with `P` the orthogonal projector.
    pub fn span_residual(&self, other: &CMat<T>) -> T {
        let q = other.column_basis(lit(1e-12));
        let proj = &q * &(&q.adjoint() * self);
        let denom = self.frobenius();
        if denom == T::zero() {
            return T::zero();
        }
        (self - &proj).frobenius() / denom
    }

    /// Least-squares coordinates `C` with `basis * C ~= self`, together with
    /// the residual `||basis * C - self||_F`. `basis` must have full column rank.
    pub fn coordinates_in(&self, basis: &CMat<T>) -> Result<(CMat<T>, T)> {
        let gram = &basis.adjoint() * basis;
        let rhs = &basis.adjoint() * self;
        let coords = gram.solve(&rhs)?;
        let res = (&(basis * &coords) - self).frobenius();
        Ok((coords, res))
    }
}

fn vec_norm<T: Real>(v: &[Complex<T>]) -> T {
    v.iter().fold(T::zero(), |a, z| a + z.norm_sqr()).sqrt()
}

/// Cyclic Jacobi rotations on a real symmetric matrix; returns ascending eigenvalues.
fn jacobi_eigenvalues<T: Real>(a: &mut [Vec<T>]) -> Vec<T> {
    let n = a.len();
    for _sweep in 0..100 {
        let off: T = (0..n)
            .flat_map(|i| (0..n).filter(move |&j| j != i).map(move |j| (i, j)))
            .fold(T::zero(), |s, (i, j)| s + a[i][j] * a[i][j]);
        let diag: T = (0..n).fold(T::zero(), |s, i| s + a[i][i] * a[i][i]);
        if off <= T::epsilon() * T::epsilon() * diag.max(T::min_positive_value()) {
            break;
        }
        for p in 0..n {
            for q in (p + 1)..n {
                if a[p][q] == T::zero() {
                    continue;
                }
                let theta = (a[q][q] - a[p][p]) / (lit::<T>(2.0) * a[p][q]);
                let t = theta.signum() / (theta.abs() + (theta * theta + T::one()).sqrt());
                let cs = T::one() / (t * t + T::one()).sqrt();
                let sn = t * cs;
                for row in a.iter_mut() {
                    let (akp, akq) = (row[p], row[q]);
                    row[p] = cs * akp - sn * akq;
                    row[q] = sn * akp + cs * akq;
                }
                let (lo, hi) = a.split_at_mut(q);
                for (x, y) in lo[p].iter_mut().zip(hi[0].iter_mut()) {
                    let (apk, aqk) = (*x, *y);
                    *x = cs * apk - sn * aqk;
                    *y = sn * apk + cs * aqk;
                }
            }
        }
    }
    let mut ev: Vec<T> = (0..n).map(|i| a[i][i]).collect();
    ev.sort_by(|x, y| x.partial_cmp(y).unwrap_or(std::cmp::Ordering::Equal));
    ev
}

/// Packed LU factors from [`CMat::lu`].
#[derive(Clone, Debug)]
pub struct Lu<T> {
    lu: CMat<T>,
    perm: Vec<usize>,
    sign: T,
}

impl<T: Real> Lu<T> {
    pub fn solve(&self, b: &CMat<T>) -> Result<CMat<T>> {
        let n = self.lu.rows;
        if b.rows != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                got: b.rows,
            });
        }
        let mut x = CMat::zeros(n, b.cols);
        for col in 0..b.cols {
            let mut y: Vec<Complex<T>> = self.perm.iter().map(|&p| b[(p, col)]).collect();
            for i in 0..n {
                for k in 0..i {
                    y[i] = y[i] - self.lu[(i, k)] * y[k];
                }
            }
            for i in (0..n).rev() {
                for k in (i + 1)..n {
                    y[i] = y[i] - self.lu[(i, k)] * y[k];
                }
                y[i] = y[i] / self.lu[(i, i)];
            }
            x.set_col(col, &y);
        }
        Ok(x)
    }

    pub fn determinant(&self) -> Complex<T> {
        (0..self.lu.rows).fold(Complex::new(self.sign, T::zero()), |d, i| d * self.lu[(i, i)])
    }
}

impl<T> Index<(usize, usize)> for CMat<T> {
    type Output = Complex<T>;
    #[inline]
    fn index(&self, (i, j): (usize, usize)) -> &Complex<T> {
        &self.data[i * self.cols + j]
    }
}

impl<T> IndexMut<(usize, usize)> for CMat<T> {
    #[inline]
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Complex<T> {
        &mut self.data[i * self.cols + j]
    }
}

impl<T: Real> Mul for &CMat<T> {
    type Output = CMat<T>;
    fn mul(self, rhs: &CMat<T>) -> CMat<T> {
        assert_eq!(self.cols, rhs.rows, "matrix product shape mismatch");
        let mut out = CMat::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    out[(i, j)] = out[(i, j)] + a * rhs[(k, j)];
                }
            }
        }
        out
    }
}

impl<T: Real> Add for &CMat<T> {
    type Output = CMat<T>;
    fn add(self, rhs: &CMat<T>) -> CMat<T> {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        CMat {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&rhs.data).map(|(&a, &b)| a + b).collect(),
        }
    }
}

impl<T: Real> Sub for &CMat<T> {
    type Output = CMat<T>;
    fn sub(self, rhs: &CMat<T>) -> CMat<T> {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        CMat {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&rhs.data).map(|(&a, &b)| a - b).collect(),
        }
    }
}

impl<T: Real> Neg for &CMat<T> {
    type Output = CMat<T>;
    fn neg(self) -> CMat<T> {
        self.map(|z| -z)
    }
}

/// Euclidean norm of a complex vector.
pub fn norm<T: Real>(v: &[Complex<T>]) -> T {
    vec_norm(v)
}

/// Bilinear (unconjugated) dot product.
pub fn dot<T: Real>(a: &[Complex<T>], b: &[Complex<T>]) -> Complex<T> {
    a.iter().zip(b).map(|(&x, &y)| x * y).sum()
}

pub fn conj_vec<T: Real>(v: &[Complex<T>]) -> Vec<Complex<T>> {
    v.iter().map(|z| z.conj()).collect()
}
