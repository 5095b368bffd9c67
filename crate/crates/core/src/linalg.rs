//! Small complex Hermitian linear-algebra helpers on top of nalgebra.

use nalgebra::{Cholesky, DMatrix, Dyn, SymmetricEigen};
use num_complex::Complex64;

use crate::error::{Error, Result};

pub type CMatrix = DMatrix<Complex64>;
pub type RMatrix = DMatrix<f64>;

/// Replaces `m` by `(m + mᴴ) / 2`.
pub fn hermitian_part(m: &CMatrix) -> CMatrix {
    (m + m.adjoint()) * Complex64::new(0.5, 0.0)
}

/// Largest elementwise deviation `|m_ij - conj(m_ji)|`.
pub fn max_asymmetry(m: &CMatrix) -> f64 {
    let n = m.nrows();
    let mut worst = 0.0f64;
    for i in 0..n {
        for j in i..n {
            worst = worst.max((m[(i, j)] - m[(j, i)].conj()).norm());
        }
    }
    worst
}

/// Eigenvalues of a Hermitian matrix, ascending.
pub fn hermitian_eigenvalues(m: &CMatrix) -> Vec<f64> {
    let mut ev: Vec<f64> = SymmetricEigen::new(m.clone())
        .eigenvalues
        .iter()
        .copied()
        .collect();
    ev.sort_by(f64::total_cmp);
    ev
}

pub fn min_eigenvalue(m: &CMatrix) -> f64 {
    hermitian_eigenvalues(m)[0]
}

/// Hermitian positive semidefinite square root via the eigendecomposition.
pub fn hermitian_sqrt(m: &CMatrix) -> CMatrix {
    let eig = SymmetricEigen::new(m.clone());
    let roots = eig
        .eigenvalues
        .map(|l| Complex64::new(l.max(0.0).sqrt(), 0.0));
    let v = &eig.eigenvectors;
    hermitian_part(&(v * CMatrix::from_diagonal(&roots) * v.adjoint()))
}

/// `Re tr(A B)` without forming the product.
pub fn re_trace_product(a: &CMatrix, b: &CMatrix) -> f64 {
    let n = a.nrows();
    let mut acc = 0.0;
    for i in 0..n {
        for k in 0..a.ncols() {
            acc += (a[(i, k)] * b[(k, i)]).re;
        }
    }
    acc
}

pub fn re_trace(a: &CMatrix) -> f64 {
    a.diagonal().iter().map(|z| z.re).sum()
}

/// `Re Σ_ij conj(a_ij) b_ij`, i.e. `Re tr(aᴴ b)`.
pub fn re_inner(a: &CMatrix, b: &CMatrix) -> f64 {
    a.iter().zip(b.iter()).map(|(x, y)| (x.conj() * y).re).sum()
}

/// Cholesky factorization of a Hermitian positive-definite matrix.
#[derive(Debug, Clone)]
pub struct HermitianFactor {
    chol: Cholesky<Complex64, Dyn>,
}

impl HermitianFactor {
    pub fn new(m: &CMatrix) -> Result<Self> {
        if !m.is_square() {
            return Err(Error::Contract(format!(
                "expected a square matrix, got {}x{}",
                m.nrows(),
                m.ncols()
            )));
        }
        match Cholesky::new(m.clone()) {
            // The complex factorization takes complex square roots on indefinite
            // input instead of failing, so the pivots must be checked to be real.
            Some(chol)
                if chol
                    .l_dirty()
                    .diagonal()
                    .iter()
                    .all(|d| d.re > 0.0 && d.re.is_finite() && d.im.abs() <= 1e-12 * d.re) =>
            {
                Ok(Self { chol })
            }
            _ => Err(Error::NotPositiveDefinite {
                min_eigenvalue: min_eigenvalue(&hermitian_part(m)),
            }),
        }
    }

    /// `Σ⁻¹ b`
    pub fn solve(&self, b: &CMatrix) -> CMatrix {
        self.chol.solve(b)
    }

    pub fn ln_det(&self) -> f64 {
        2.0 * self
            .chol
            .l_dirty()
            .diagonal()
            .iter()
            .map(|d| d.re.ln())
            .sum::<f64>()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn sample() -> CMatrix {
        CMatrix::from_row_slice(2, 2, &[c(2.0, 0.0), c(0.5, 0.3), c(0.5, -0.3), c(1.0, 0.0)])
    }

    #[test]
    fn sqrt_squares_back() {
        let m = sample();
        let r = hermitian_sqrt(&m);
        assert!((&r * &r - &m).norm() < 1e-13);
        assert!(max_asymmetry(&r) < 1e-14);
    }

    #[test]
    fn solve_and_logdet() {
        let m = sample();
        let f = HermitianFactor::new(&m).unwrap();
        let x = f.solve(&CMatrix::identity(2, 2));
        assert!((&m * &x - CMatrix::identity(2, 2)).norm() < 1e-13);
        let det = 2.0 * 1.0 - (0.25 + 0.09);
        assert!((f.ln_det() - f64::ln(det)).abs() < 1e-13);
    }

    #[test]
    fn indefinite_is_rejected_with_eigenvalue() {
        let m =
            CMatrix::from_row_slice(2, 2, &[c(1.0, 0.0), c(2.0, 0.0), c(2.0, 0.0), c(1.0, 0.0)]);
        match HermitianFactor::new(&m) {
            Err(Error::NotPositiveDefinite { min_eigenvalue }) => {
                assert!((min_eigenvalue + 1.0).abs() < 1e-12)
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn trace_helpers() {
        let a = sample();
        let b =
            CMatrix::from_row_slice(2, 2, &[c(0.0, 1.0), c(1.0, 0.0), c(3.0, 0.0), c(-1.0, 2.0)]);
        let direct = (&a * &b).trace().re;
        assert!((re_trace_product(&a, &b) - direct).abs() < 1e-14);
        assert!((re_inner(&a, &b) - (a.adjoint() * &b).trace().re).abs() < 1e-14);
    }
}
