use std::fmt;
use std::ops::{Add, Index, Mul, Neg, Sub};

use num_complex::Complex64;
use serde::Serialize;

use crate::config::MAX_DIM;
use crate::error::{Error, Result};

/// Complex scalar used throughout the crate.
pub type C64 = Complex64;

pub(crate) const ZERO: C64 = C64::new(0.0, 0.0);
pub(crate) const ONE: C64 = C64::new(1.0, 0.0);

/// Dense complex square matrix stored row-major.
///
/// Construction rejects non-finite entries and dimensions outside
/// `1..=MAX_DIM`. Values are immutable once built.
///
/// The arithmetic operators (`&a * &b`, `&a - &b`, ...) panic on a
/// dimension mismatch; the named functions [`multiply`], [`SquareMatrix::checked_add`]
/// and friends return an error instead.
#[derive(Clone, PartialEq, Serialize)]
pub struct SquareMatrix {
    dim: usize,
    data: Vec<C64>,
}

fn check_dim(dim: usize) -> Result<()> {
    if dim == 0 || dim > MAX_DIM {
        return Err(Error::InvalidDimension { dim, max: MAX_DIM });
    }
    Ok(())
}

impl SquareMatrix {
    pub fn new(dim: usize, data: Vec<C64>) -> Result<Self> {
        check_dim(dim)?;
        if data.len() != dim * dim {
            return Err(Error::ShapeMismatch {
                expected: dim * dim,
                found: data.len(),
            });
        }
        if let Some(index) = data.iter().position(|z| !z.is_finite()) {
            return Err(Error::NonFinite { index });
        }
        Ok(Self { dim, data })
    }

    /// Builds a matrix from real row-major entries.
    pub fn from_real(dim: usize, data: &[f64]) -> Result<Self> {
        Self::new(dim, data.iter().map(|&x| C64::new(x, 0.0)).collect())
    }

    /// Internal constructor for results of arithmetic on validated inputs.
    pub(crate) fn from_raw(dim: usize, data: Vec<C64>) -> Self {
        debug_assert_eq!(data.len(), dim * dim);
        Self { dim, data }
    }

    pub fn zeros(dim: usize) -> Self {
        assert!(dim > 0 && dim <= MAX_DIM, "invalid dimension {dim}");
        Self::from_raw(dim, vec![ZERO; dim * dim])
    }

    pub fn identity(dim: usize) -> Self {
        let mut m = Self::zeros(dim);
        for i in 0..dim {
            m.data[i * dim + i] = ONE;
        }
        m
    }

    pub fn diag(values: &[f64]) -> Result<Self> {
        let dim = values.len();
        check_dim(dim)?;
        let mut m = Self::zeros(dim);
        for (i, &v) in values.iter().enumerate() {
            m.data[i * dim + i] = C64::new(v, 0.0);
        }
        Self::new(dim, m.data)
    }

    /// The rank-one operator `|u><v|`.
    pub fn outer(u: &[C64], v: &[C64]) -> Result<Self> {
        if u.len() != v.len() {
            return Err(Error::DimensionMismatch {
                left: u.len(),
                right: v.len(),
            });
        }
        let dim = u.len();
        let data = u
            .iter()
            .flat_map(|&ui| v.iter().map(move |&vj| ui * vj.conj()))
            .collect();
        Self::new(dim, data)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Row-major entries.
    pub fn entries(&self) -> &[C64] {
        &self.data
    }

    pub fn adjoint(&self) -> Self {
        let n = self.dim;
        let mut data = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                data.push(self.data[j * n + i].conj());
            }
        }
        Self::from_raw(n, data)
    }

    pub fn trace(&self) -> C64 {
        (0..self.dim).map(|i| self.data[i * self.dim + i]).sum()
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.data.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
    }

    /// Largest absolute entry.
    pub fn max_abs(&self) -> f64 {
        self.data.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    /// Kronecker product; the left factor carries the slow index.
    pub fn tensor(&self, other: &Self) -> Result<Self> {
        let (m, n) = (self.dim, other.dim);
        let dim = m * n;
        check_dim(dim)?;
        let mut data = vec![ZERO; dim * dim];
        for i in 0..m {
            for j in 0..m {
                let a = self.data[i * m + j];
                if a == ZERO {
                    continue;
                }
                for k in 0..n {
                    for l in 0..n {
                        data[(i * n + k) * dim + (j * n + l)] = a * other.data[k * n + l];
                    }
                }
            }
        }
        Ok(Self::from_raw(dim, data))
    }

    pub fn scale(&self, factor: C64) -> Self {
        Self::from_raw(self.dim, self.data.iter().map(|&z| z * factor).collect())
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        self.same_dim(other)?;
        Ok(self.zip_with(other, |a, b| a + b))
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self> {
        self.same_dim(other)?;
        Ok(self.zip_with(other, |a, b| a - b))
    }

    /// Matrix-vector product.
    pub fn apply(&self, v: &[C64]) -> Result<Vec<C64>> {
        if v.len() != self.dim {
            return Err(Error::DimensionMismatch {
                left: self.dim,
                right: v.len(),
            });
        }
        Ok(self
            .data
            .chunks_exact(self.dim)
            .map(|row| row.iter().zip(v).map(|(&a, &x)| a * x).sum())
            .collect())
    }

    /// `<v|M|v>`.
    pub fn expectation(&self, v: &[C64]) -> Result<C64> {
        let mv = self.apply(v)?;
        Ok(inner(v, &mv))
    }

    /// `||M - M^dag||_F`.
    pub fn hermiticity_residual(&self) -> f64 {
        let n = self.dim;
        let mut acc = 0.0;
        for i in 0..n {
            for j in 0..n {
                acc += (self.data[i * n + j] - self.data[j * n + i].conj()).norm_sqr();
            }
        }
        acc.sqrt()
    }

    pub(crate) fn same_dim(&self, other: &Self) -> Result<()> {
        if self.dim != other.dim {
            return Err(Error::DimensionMismatch {
                left: self.dim,
                right: other.dim,
            });
        }
        Ok(())
    }

    fn zip_with(&self, other: &Self, f: impl Fn(C64, C64) -> C64) -> Self {
        let data = self.data.iter().zip(&other.data).map(|(&a, &b)| f(a, b)).collect();
        Self::from_raw(self.dim, data)
    }

    fn product(&self, other: &Self) -> Self {
        let n = self.dim;
        let mut data = vec![ZERO; n * n];
        for i in 0..n {
            for k in 0..n {
                let a = self.data[i * n + k];
                if a == ZERO {
                    continue;
                }
                let row = &other.data[k * n..(k + 1) * n];
                let out = &mut data[i * n..(i + 1) * n];
                for (o, &b) in out.iter_mut().zip(row) {
                    *o += a * b;
                }
            }
        }
        Self::from_raw(n, data)
    }

    pub(crate) fn data_mut(&mut self) -> &mut [C64] {
        &mut self.data
    }
}

/// Dense product `a * b`.
pub fn multiply(a: &SquareMatrix, b: &SquareMatrix) -> Result<SquareMatrix> {
    a.same_dim(b)?;
    Ok(a.product(b))
}

/// `<u|v>`, conjugate-linear in the first argument.
pub fn inner(u: &[C64], v: &[C64]) -> C64 {
    u.iter().zip(v).map(|(a, b)| a.conj() * b).sum()
}

pub fn norm(v: &[C64]) -> f64 {
    v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
}

impl Index<(usize, usize)> for SquareMatrix {
    type Output = C64;

    fn index(&self, (i, j): (usize, usize)) -> &C64 {
        assert!(i < self.dim && j < self.dim, "index ({i}, {j}) out of range");
        &self.data[i * self.dim + j]
    }
}

impl Mul for &SquareMatrix {
    type Output = SquareMatrix;

    fn mul(self, rhs: &SquareMatrix) -> SquareMatrix {
        assert_eq!(self.dim, rhs.dim, "dimension mismatch in product");
        self.product(rhs)
    }
}

impl Add for &SquareMatrix {
    type Output = SquareMatrix;

    fn add(self, rhs: &SquareMatrix) -> SquareMatrix {
        assert_eq!(self.dim, rhs.dim, "dimension mismatch in sum");
        self.zip_with(rhs, |a, b| a + b)
    }
}

impl Sub for &SquareMatrix {
    type Output = SquareMatrix;

    fn sub(self, rhs: &SquareMatrix) -> SquareMatrix {
        assert_eq!(self.dim, rhs.dim, "dimension mismatch in difference");
        self.zip_with(rhs, |a, b| a - b)
    }
}

impl Neg for &SquareMatrix {
    type Output = SquareMatrix;

    fn neg(self) -> SquareMatrix {
        self.scale(C64::new(-1.0, 0.0))
    }
}

impl fmt::Debug for SquareMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "SquareMatrix({}x{})", self.dim, self.dim)?;
        for row in self.data.chunks_exact(self.dim) {
            let cells: Vec<String> = row.iter().map(|z| format!("{:+.6}{:+.6}i", z.re, z.im)).collect();
            writeln!(f, "  [{}]", cells.join(", "))?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn real(dim: usize, v: &[f64]) -> SquareMatrix {
        SquareMatrix::from_real(dim, v).unwrap()
    }

    // Triple-loop product written independently of `product`.
    fn naive(a: &SquareMatrix, b: &SquareMatrix) -> SquareMatrix {
        let n = a.dim();
        let mut out = Vec::new();
        for i in 0..n {
            for j in 0..n {
                let mut s = ZERO;
                for k in 0..n {
                    s += a[(i, k)] * b[(k, j)];
                }
                out.push(s);
            }
        }
        SquareMatrix::new(n, out).unwrap()
    }

    #[test]
    fn identity_times_identity() {
        let i = SquareMatrix::identity(3);
        assert_eq!(multiply(&i, &i).unwrap(), i);
    }

    #[test]
    fn canonical_product() {
        let a = real(2, &[1.0, 0.0, 0.0, 0.0]);
        let b = real(2, &[0.5, 0.5, 0.5, 0.5]);
        let ab = multiply(&a, &b).unwrap();
        assert_eq!(ab, real(2, &[0.5, 0.5, 0.0, 0.0]));
        assert_eq!(ab, naive(&a, &b));
    }

    #[test]
    fn projector_is_idempotent_under_multiply() {
        let b = real(2, &[0.5, 0.5, 0.5, 0.5]);
        assert!((&(&b * &b) - &b).frobenius_norm() < 1e-15);
    }

    #[test]
    fn dimension_mismatch_is_an_error() {
        let a = SquareMatrix::identity(2);
        let b = SquareMatrix::identity(3);
        assert_eq!(multiply(&a, &b), Err(Error::DimensionMismatch { left: 2, right: 3 }));
        assert!(a.checked_sub(&b).is_err());
    }

    #[test]
    fn rejects_bad_construction() {
        assert!(matches!(
            SquareMatrix::new(0, vec![]),
            Err(Error::InvalidDimension { .. })
        ));
        assert!(matches!(
            SquareMatrix::new(65, vec![ZERO; 65 * 65]),
            Err(Error::InvalidDimension { .. })
        ));
        assert!(matches!(
            SquareMatrix::new(2, vec![ZERO; 3]),
            Err(Error::ShapeMismatch { .. })
        ));
        assert_eq!(
            SquareMatrix::from_real(2, &[1.0, f64::NAN, 0.0, 0.0]),
            Err(Error::NonFinite { index: 1 })
        );
        assert!(SquareMatrix::from_real(1, &[f64::INFINITY]).is_err());
    }

    #[test]
    fn trace_adjoint_tensor() {
        assert_eq!(SquareMatrix::identity(3).trace(), C64::new(3.0, 0.0));
        let m = SquareMatrix::new(
            2,
            vec![
                C64::new(1.0, 2.0),
                C64::new(-0.5, 0.25),
                C64::new(3.0, -1.0),
                C64::new(0.0, 4.0),
            ],
        )
        .unwrap();
        assert_eq!(m.adjoint().adjoint(), m);
        assert_eq!(m.adjoint()[(0, 1)], C64::new(3.0, 1.0));

        let p0 = real(2, &[1.0, 0.0, 0.0, 0.0]);
        let t = p0.tensor(&SquareMatrix::identity(2)).unwrap();
        assert_eq!(t.dim(), 4);
        assert_eq!(t.trace(), C64::new(2.0, 0.0));
        // brute-force Kronecker entry check
        for r in 0..4 {
            for c in 0..4 {
                let expect = p0[(r / 2, c / 2)] * SquareMatrix::identity(2)[(r % 2, c % 2)];
                assert_eq!(t[(r, c)], expect);
            }
        }
    }

    #[test]
    fn tensor_trace_is_multiplicative() {
        let a = SquareMatrix::new(2, vec![C64::new(0.3, 0.1), ONE, ZERO, C64::new(-2.0, 0.5)]).unwrap();
        let b = real(3, &[1.0, 2.0, 3.0, 4.0, 5.0, 6.0, 7.0, 8.0, 9.5]);
        let t = a.tensor(&b).unwrap();
        assert!((t.trace() - a.trace() * b.trace()).norm() < 1e-12);
    }

    #[test]
    fn outer_and_expectation() {
        let u = [C64::new(0.6, 0.0), C64::new(0.0, 0.8)];
        let p = SquareMatrix::outer(&u, &u).unwrap();
        assert!(p.hermiticity_residual() < 1e-15);
        assert!((p.expectation(&u).unwrap() - ONE).norm() < 1e-15);
        assert!((norm(&u) - 1.0).abs() < 1e-15);
    }
}
