//! Dense complex linear algebra for 2x2 and 4x4 matrices.
//!
//! Everything the gate constructions need lives here: Pauli matrices and
//! their tensor products, a cyclic-Jacobi Hermitian eigensolver, the matrix
//! exponential `exp(i s A)` of a Hermitian generator, singular values, and a
//! global-phase-insensitive distance between unitaries. Matrices are stored
//! row-major and restricted to the two Hilbert-space dimensions that occur
//! in this problem.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::tol;

/// Dense complex matrix of dimension 2 or 4, row-major.
#[derive(Debug, Clone, PartialEq)]
pub struct ComplexMatrix {
    dim: usize,
    data: Vec<Complex64>,
}

fn check_dim(dim: usize) -> Result<()> {
    if dim == 2 || dim == 4 {
        Ok(())
    } else {
        Err(Error::InvalidDimension(dim))
    }
}

impl ComplexMatrix {
    /// Zero matrix of the given dimension.
    pub fn zeros(dim: usize) -> Self {
        check_dim(dim).expect("dimension must be 2 or 4");
        ComplexMatrix { dim, data: vec![Complex64::ZERO; dim * dim] }
    }

    /// Identity matrix of the given dimension.
    pub fn identity(dim: usize) -> Self {
        let mut m = Self::zeros(dim);
        for k in 0..dim {
            m[(k, k)] = Complex64::ONE;
        }
        m
    }

    /// Build from row-major entries; the entry count must be `dim²`.
    pub fn from_entries(dim: usize, entries: Vec<Complex64>) -> Result<Self> {
        check_dim(dim)?;
        if entries.len() != dim * dim {
            return Err(Error::BadEntryCount { dim, got: entries.len() });
        }
        Ok(ComplexMatrix { dim, data: entries })
    }

    /// Diagonal matrix from the given entries.
    pub fn diagonal(entries: &[Complex64]) -> Result<Self> {
        check_dim(entries.len())?;
        let mut m = Self::zeros(entries.len());
        for (k, &e) in entries.iter().enumerate() {
            m[(k, k)] = e;
        }
        Ok(m)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Row-major view of the entries.
    pub fn entries(&self) -> &[Complex64] {
        &self.data
    }

    /// Conjugate transpose.
    pub fn dagger(&self) -> Self {
        let mut out = Self::zeros(self.dim);
        for i in 0..self.dim {
            for j in 0..self.dim {
                out[(j, i)] = self[(i, j)].conj();
            }
        }
        out
    }

    /// Plain transpose (no conjugation).
    pub fn transpose(&self) -> Self {
        let mut out = Self::zeros(self.dim);
        for i in 0..self.dim {
            for j in 0..self.dim {
                out[(j, i)] = self[(i, j)];
            }
        }
        out
    }

    pub fn trace(&self) -> Complex64 {
        (0..self.dim).map(|k| self[(k, k)]).sum()
    }

    /// Multiply every entry by a complex scalar.
    pub fn scale(&self, c: Complex64) -> Self {
        ComplexMatrix { dim: self.dim, data: self.data.iter().map(|&z| z * c).collect() }
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!(self.dim, other.dim, "matrix dimensions differ");
        ComplexMatrix {
            dim: self.dim,
            data: self.data.iter().zip(&other.data).map(|(&a, &b)| a + b).collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        assert_eq!(self.dim, other.dim, "matrix dimensions differ");
        ComplexMatrix {
            dim: self.dim,
            data: self.data.iter().zip(&other.data).map(|(&a, &b)| a - b).collect(),
        }
    }

    pub fn matmul(&self, other: &Self) -> Self {
        assert_eq!(self.dim, other.dim, "matrix dimensions differ");
        let n = self.dim;
        let mut out = Self::zeros(n);
        for i in 0..n {
            for k in 0..n {
                let a = self[(i, k)];
                if a == Complex64::ZERO {
                    continue;
                }
                for j in 0..n {
                    out[(i, j)] += a * other[(k, j)];
                }
            }
        }
        out
    }

    /// Commutator [A, B] = AB - BA.
    pub fn commutator(&self, other: &Self) -> Self {
        self.matmul(other).sub(&other.matmul(self))
    }

    /// Apply to a column vector.
    pub fn mul_vec(&self, v: &[Complex64]) -> Vec<Complex64> {
        assert_eq!(v.len(), self.dim, "vector length differs from dimension");
        let n = self.dim;
        let mut out = vec![Complex64::ZERO; n];
        for i in 0..n {
            let mut acc = Complex64::ZERO;
            for j in 0..n {
                acc += self[(i, j)] * v[j];
            }
            out[i] = acc;
        }
        out
    }

    /// Kronecker product of two 2x2 matrices.
    pub fn kron(&self, other: &Self) -> Self {
        assert_eq!(self.dim, 2, "kron is defined for 2x2 factors");
        assert_eq!(other.dim, 2, "kron is defined for 2x2 factors");
        let mut out = Self::zeros(4);
        for i in 0..2 {
            for j in 0..2 {
                for k in 0..2 {
                    for l in 0..2 {
                        out[(2 * i + k, 2 * j + l)] = self[(i, j)] * other[(k, l)];
                    }
                }
            }
        }
        out
    }

    /// Largest entry magnitude.
    pub fn max_abs(&self) -> f64 {
        self.data.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    /// Frobenius norm.
    pub fn frobenius(&self) -> f64 {
        self.data.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
    }

    /// Max entrywise |A - A†|.
    pub fn hermiticity_defect(&self) -> f64 {
        self.sub(&self.dagger()).max_abs()
    }

    /// Max entrywise |U†U - 1|.
    pub fn unitarity_defect(&self) -> f64 {
        self.dagger().matmul(self).sub(&Self::identity(self.dim)).max_abs()
    }

    /// Error unless the matrix is Hermitian within [`tol::HERMITIAN`].
    pub fn require_hermitian(&self) -> Result<()> {
        let defect = self.hermiticity_defect();
        if defect <= tol::HERMITIAN {
            Ok(())
        } else {
            Err(Error::NotHermitian { defect })
        }
    }

    /// Error unless the matrix is unitary within [`tol::UNITARY`].
    pub fn require_unitary(&self) -> Result<()> {
        let defect = self.unitarity_defect();
        if defect <= tol::UNITARY {
            Ok(())
        } else {
            Err(Error::NotUnitary { defect })
        }
    }

    /// Determinant via Gaussian elimination with partial pivoting.
    pub fn determinant(&self) -> Complex64 {
        let n = self.dim;
        let mut a = self.data.clone();
        let mut det = Complex64::ONE;
        for col in 0..n {
            let pivot = (col..n)
                .max_by(|&i, &j| {
                    a[i * n + col].norm().partial_cmp(&a[j * n + col].norm()).unwrap()
                })
                .unwrap();
            if a[pivot * n + col].norm() == 0.0 {
                return Complex64::ZERO;
            }
            if pivot != col {
                for j in 0..n {
                    a.swap(col * n + j, pivot * n + j);
                }
                det = -det;
            }
            let p = a[col * n + col];
            det *= p;
            for i in col + 1..n {
                let f = a[i * n + col] / p;
                for j in col..n {
                    let sub = f * a[col * n + j];
                    a[i * n + j] -= sub;
                }
            }
        }
        det
    }
}

impl std::ops::Index<(usize, usize)> for ComplexMatrix {
    type Output = Complex64;
    fn index(&self, (i, j): (usize, usize)) -> &Complex64 {
        &self.data[i * self.dim + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for ComplexMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Complex64 {
        &mut self.data[i * self.dim + j]
    }
}

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

/// Pauli σ_x.
pub fn pauli_x() -> ComplexMatrix {
    ComplexMatrix::from_entries(2, vec![c(0., 0.), c(1., 0.), c(1., 0.), c(0., 0.)]).unwrap()
}

/// Pauli σ_y.
pub fn pauli_y() -> ComplexMatrix {
    ComplexMatrix::from_entries(2, vec![c(0., 0.), c(0., -1.), c(0., 1.), c(0., 0.)]).unwrap()
}

/// Pauli σ_z.
pub fn pauli_z() -> ComplexMatrix {
    ComplexMatrix::from_entries(2, vec![c(1., 0.), c(0., 0.), c(0., 0.), c(-1., 0.)]).unwrap()
}

/// One-qubit operator basis indexed 0..4 as 𝟙, σ_x, σ_y, σ_z.
pub fn pauli(index: usize) -> ComplexMatrix {
    match index {
        0 => ComplexMatrix::identity(2),
        1 => pauli_x(),
        2 => pauli_y(),
        3 => pauli_z(),
        _ => panic!("pauli index must be 0..4, got {index}"),
    }
}

/// Inner product ⟨a|b⟩ = Σ conj(a_i) b_i.
pub fn inner(a: &[Complex64], b: &[Complex64]) -> Complex64 {
    assert_eq!(a.len(), b.len());
    a.iter().zip(b).map(|(&x, &y)| x.conj() * y).sum()
}

/// Euclidean norm of a state vector.
pub fn vec_norm(a: &[Complex64]) -> f64 {
    a.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
}

/// Outer product |a⟩⟨b| as a matrix.
pub fn outer(a: &[Complex64], b: &[Complex64]) -> ComplexMatrix {
    assert_eq!(a.len(), b.len());
    let n = a.len();
    let mut m = ComplexMatrix::zeros(n);
    for i in 0..n {
        for j in 0..n {
            m[(i, j)] = a[i] * b[j].conj();
        }
    }
    m
}

/// Hermitian eigendecomposition by cyclic Jacobi rotations.
///
/// Returns eigenvalues sorted ascending and the matching orthonormal
/// eigenvector columns, each gauge-fixed so that its first non-negligible
/// entry is real and positive. Rejects non-Hermitian input.
pub fn eig_hermitian(a: &ComplexMatrix) -> Result<(Vec<f64>, ComplexMatrix)> {
    a.require_hermitian()?;
    let n = a.dim();
    // Symmetrize to kill the sub-tolerance asymmetry before iterating.
    let mut m = a.add(&a.dagger()).scale(c(0.5, 0.));
    let mut v = ComplexMatrix::identity(n);
    let scale = m.max_abs().max(1.0);

    for _sweep in 0..60 {
        let mut off = 0.0f64;
        for p in 0..n {
            for q in p + 1..n {
                off = off.max(m[(p, q)].norm());
            }
        }
        if off <= 1e-16 * scale {
            break;
        }
        for p in 0..n {
            for q in p + 1..n {
                let apq = m[(p, q)];
                let mag = apq.norm();
                if mag <= 1e-18 * scale {
                    continue;
                }
                let phase = apq / mag; // e^{iφ}
                let app = m[(p, p)].re;
                let aqq = m[(q, q)].re;
                // tan θ solving m(1-t²) + t(aqq-app) = 0, smaller root.
                let tau = (aqq - app) / (2.0 * mag);
                let t = if tau >= 0.0 {
                    -1.0 / (tau + (1.0 + tau * tau).sqrt())
                } else {
                    1.0 / (-tau + (1.0 + tau * tau).sqrt())
                };
                let cth = 1.0 / (1.0 + t * t).sqrt();
                let sth = t * cth;
                // Column rotation R: col_p' = c·col_p + s·e^{-iφ}·col_q,
                //                    col_q' = -s·e^{iφ}·col_p + c·col_q.
                let se_m = sth * phase.conj();
                let se_p = sth * phase;
                for k in 0..n {
                    let akp = m[(k, p)];
                    let akq = m[(k, q)];
                    m[(k, p)] = akp * cth + akq * se_m;
                    m[(k, q)] = akq * cth - akp * se_p;
                }
                for k in 0..n {
                    let apk = m[(p, k)];
                    let aqk = m[(q, k)];
                    m[(p, k)] = apk * cth + aqk * se_p;
                    m[(q, k)] = aqk * cth - apk * se_m;
                }
                for k in 0..n {
                    let vkp = v[(k, p)];
                    let vkq = v[(k, q)];
                    v[(k, p)] = vkp * cth + vkq * se_m;
                    v[(k, q)] = vkq * cth - vkp * se_p;
                }
            }
        }
    }

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| m[(i, i)].re.partial_cmp(&m[(j, j)].re).unwrap());

    let eigenvalues: Vec<f64> = order.iter().map(|&k| m[(k, k)].re).collect();
    let mut vectors = ComplexMatrix::zeros(n);
    for (col, &k) in order.iter().enumerate() {
        let mut column: Vec<Complex64> = (0..n).map(|row| v[(row, k)]).collect();
        gauge_fix(&mut column);
        for row in 0..n {
            vectors[(row, col)] = column[row];
        }
    }
    Ok((eigenvalues, vectors))
}

/// Rotate a unit column so its first non-negligible entry is real-positive.
fn gauge_fix(column: &mut [Complex64]) {
    let lead = column.iter().find(|z| z.norm() > 1e-12);
    if let Some(&z) = lead {
        let phase = z.conj() / z.norm();
        for entry in column.iter_mut() {
            *entry *= phase;
        }
    }
}

/// exp(i·s·A) for Hermitian A, via eigendecomposition.
pub fn exp_i_hermitian(a: &ComplexMatrix, s: f64) -> Result<ComplexMatrix> {
    let (eigenvalues, v) = eig_hermitian(a)?;
    let n = a.dim();
    let mut out = ComplexMatrix::zeros(n);
    for (k, &lambda) in eigenvalues.iter().enumerate() {
        let phase = Complex64::from_polar(1.0, s * lambda);
        for i in 0..n {
            for j in 0..n {
                out[(i, j)] += phase * v[(i, k)] * v[(j, k)].conj();
            }
        }
    }
    Ok(out)
}

/// Singular values, descending and non-negative, for a 2x2 or 4x4 complex
/// matrix (real matrices are the special case with zero imaginary parts).
///
/// One-sided Jacobi: columns are rotated pairwise until mutually orthogonal,
/// then the singular values are the column norms. Unlike the Gram-matrix
/// route this resolves vanishing singular values down to ~ε‖M‖ instead of
/// √ε‖M‖, which the Schmidt rank thresholds rely on.
pub fn singular_values(m: &ComplexMatrix) -> Vec<f64> {
    let n = m.dim();
    let mut a = m.clone();
    let scale_sq = a.frobenius().powi(2).max(f64::MIN_POSITIVE);
    for _sweep in 0..60 {
        let mut rotated = false;
        for p in 0..n {
            for q in p + 1..n {
                let mut app = 0.0f64;
                let mut aqq = 0.0f64;
                let mut apq = Complex64::ZERO;
                for k in 0..n {
                    app += a[(k, p)].norm_sqr();
                    aqq += a[(k, q)].norm_sqr();
                    apq += a[(k, p)].conj() * a[(k, q)];
                }
                let mag = apq.norm();
                if mag <= 1e-15 * (app * aqq).sqrt() || mag <= 1e-30 * scale_sq {
                    continue;
                }
                rotated = true;
                let phase = apq / mag;
                let tau = (aqq - app) / (2.0 * mag);
                let t = if tau >= 0.0 {
                    -1.0 / (tau + (1.0 + tau * tau).sqrt())
                } else {
                    1.0 / (-tau + (1.0 + tau * tau).sqrt())
                };
                let cth = 1.0 / (1.0 + t * t).sqrt();
                let sth = t * cth;
                let se_m = sth * phase.conj();
                let se_p = sth * phase;
                for k in 0..n {
                    let akp = a[(k, p)];
                    let akq = a[(k, q)];
                    a[(k, p)] = akp * cth + akq * se_m;
                    a[(k, q)] = akq * cth - akp * se_p;
                }
            }
        }
        if !rotated {
            break;
        }
    }
    let mut svs: Vec<f64> = (0..n)
        .map(|j| (0..n).map(|k| a[(k, j)].norm_sqr()).sum::<f64>().sqrt())
        .collect();
    svs.sort_by(|x, y| y.partial_cmp(x).unwrap());
    svs
}

/// √(1 - |tr(U†V)| / dim): zero exactly on global-phase orbits, 1 for
/// trace-orthogonal operators.
pub fn unitary_distance(u: &ComplexMatrix, v: &ComplexMatrix) -> Result<f64> {
    if u.dim() != v.dim() {
        return Err(Error::DimensionMismatch(u.dim(), v.dim()));
    }
    let overlap = u.dagger().matmul(v).trace().norm() / u.dim() as f64;
    Ok((1.0 - overlap).max(0.0).sqrt())
}
