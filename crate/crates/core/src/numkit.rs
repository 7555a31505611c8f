//! Dense complex linear algebra for two-qubit operators.
//!
//! Every 4×4 matrix is indexed in the basis `{|11⟩, |10⟩, |01⟩, |00⟩}`, with
//! the first tensor factor acting on qubit 1. `|1⟩` is spin up, so the single
//! qubit basis order is `{|1⟩, |0⟩}` and `σz = diag(1, -1)`.

use std::ops::{Add, Index, Mul, Sub};

use num_complex::Complex64;

use crate::error::{Error, Result};

pub type C64 = Complex64;

/// A two-qubit state vector in the standard basis order.
pub type Vector4C = [C64; 4];

const ZERO: C64 = C64::new(0.0, 0.0);
const ONE: C64 = C64::new(1.0, 0.0);

/// Largest tolerated `max |m - m†|` for inputs to the Hermitian routines.
pub const HERMITIAN_TOL: f64 = 1e-10;

/// Negative eigenvalues down to `-NEGATIVE_CLAMP` are treated as zero by
/// [`psd_sqrt`].
pub const NEGATIVE_CLAMP: f64 = 1e-10;

/// Off-diagonal Frobenius norm, relative to the full norm, at which the Jacobi
/// sweeps stop.
const JACOBI_TOL: f64 = 1e-15;
const MAX_SWEEPS: usize = 100;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Matrix2C(pub [[C64; 2]; 2]);

impl Matrix2C {
    pub fn identity() -> Self {
        Matrix2C([[ONE, ZERO], [ZERO, ONE]])
    }

    pub fn mul(&self, rhs: &Matrix2C) -> Matrix2C {
        let mut out = [[ZERO; 2]; 2];
        for (i, row) in out.iter_mut().enumerate() {
            for (j, v) in row.iter_mut().enumerate() {
                *v = self.0[i][0] * rhs.0[0][j] + self.0[i][1] * rhs.0[1][j];
            }
        }
        Matrix2C(out)
    }
}

/// Pauli operator `σ_index` with `σ0 = I`, then x, y, z.
pub fn pauli(index: usize) -> Matrix2C {
    let i = C64::new(0.0, 1.0);
    match index {
        0 => Matrix2C::identity(),
        1 => Matrix2C([[ZERO, ONE], [ONE, ZERO]]),
        2 => Matrix2C([[ZERO, -i], [i, ZERO]]),
        3 => Matrix2C([[ONE, ZERO], [ZERO, -ONE]]),
        _ => panic!("Pauli index {index} out of range 0..4"),
    }
}

/// A 4×4 complex matrix with finite entries.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Matrix4C {
    entries: [[C64; 4]; 4],
}

impl Matrix4C {
    /// Rejects any NaN or infinite component.
    pub fn new(entries: [[C64; 4]; 4]) -> Result<Self> {
        let finite = entries.iter().flatten().all(|z| z.re.is_finite() && z.im.is_finite());
        if finite {
            Ok(Matrix4C { entries })
        } else {
            Err(Error::NonFinite)
        }
    }

    pub fn from_real(rows: [[f64; 4]; 4]) -> Result<Self> {
        let mut entries = [[ZERO; 4]; 4];
        for (row, src) in entries.iter_mut().zip(rows.iter()) {
            for (v, &x) in row.iter_mut().zip(src.iter()) {
                *v = C64::new(x, 0.0);
            }
        }
        Self::new(entries)
    }

    /// Construction without the finiteness check, for results of arithmetic
    /// on already valid matrices.
    pub(crate) fn from_entries(entries: [[C64; 4]; 4]) -> Self {
        Matrix4C { entries }
    }

    pub fn zeros() -> Self {
        Matrix4C {
            entries: [[ZERO; 4]; 4],
        }
    }

    pub fn identity() -> Self {
        Self::from_diagonal([1.0; 4])
    }

    pub fn from_diagonal(diag: [f64; 4]) -> Self {
        let mut m = Self::zeros();
        for (i, &d) in diag.iter().enumerate() {
            m.entries[i][i] = C64::new(d, 0.0);
        }
        m
    }

    /// `|v⟩⟨v|`
    pub fn outer(v: &Vector4C) -> Self {
        let mut m = Self::zeros();
        for i in 0..4 {
            for j in 0..4 {
                m.entries[i][j] = v[i] * v[j].conj();
            }
        }
        m
    }

    pub fn entries(&self) -> &[[C64; 4]; 4] {
        &self.entries
    }

    pub fn is_finite(&self) -> bool {
        self.entries
            .iter()
            .flatten()
            .all(|z| z.re.is_finite() && z.im.is_finite())
    }

    pub fn adjoint(&self) -> Self {
        let mut m = Self::zeros();
        for i in 0..4 {
            for j in 0..4 {
                m.entries[i][j] = self.entries[j][i].conj();
            }
        }
        m
    }

    /// Entrywise complex conjugate (not transposed).
    pub fn conj(&self) -> Self {
        let mut m = *self;
        m.entries.iter_mut().flatten().for_each(|z| *z = z.conj());
        m
    }

    pub fn trace(&self) -> C64 {
        (0..4).map(|i| self.entries[i][i]).sum()
    }

    pub fn scale(&self, s: f64) -> Self {
        let mut m = *self;
        m.entries.iter_mut().flatten().for_each(|z| *z *= s);
        m
    }

    pub fn mul_vec(&self, v: &Vector4C) -> Vector4C {
        let mut out = [ZERO; 4];
        for (i, o) in out.iter_mut().enumerate() {
            *o = (0..4).map(|j| self.entries[i][j] * v[j]).sum();
        }
        out
    }

    /// `max_ij |a_ij - b_ij|`
    pub fn max_abs_diff(&self, other: &Matrix4C) -> f64 {
        self.entries
            .iter()
            .flatten()
            .zip(other.entries.iter().flatten())
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }

    /// `max_ij |m_ij - conj(m_ji)|`
    pub fn hermiticity_error(&self) -> f64 {
        self.max_abs_diff(&self.adjoint())
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.entries.iter().flatten().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
    }

    /// Largest magnitude among the entries outside the diagonal and the
    /// anti-diagonal.
    pub fn off_x_magnitude(&self) -> f64 {
        let mut worst = 0.0f64;
        for i in 0..4 {
            for j in 0..4 {
                if i != j && i + j != 3 {
                    worst = worst.max(self.entries[i][j].norm());
                }
            }
        }
        worst
    }
}

impl Index<(usize, usize)> for Matrix4C {
    type Output = C64;

    fn index(&self, (i, j): (usize, usize)) -> &C64 {
        &self.entries[i][j]
    }
}

impl Mul for Matrix4C {
    type Output = Matrix4C;

    #[allow(clippy::op_ref)]
    fn mul(self, rhs: Matrix4C) -> Matrix4C {
        &self * &rhs
    }
}

impl Mul<&Matrix4C> for &Matrix4C {
    type Output = Matrix4C;

    fn mul(self, rhs: &Matrix4C) -> Matrix4C {
        let mut m = Matrix4C::zeros();
        for i in 0..4 {
            for j in 0..4 {
                m.entries[i][j] = (0..4).map(|k| self.entries[i][k] * rhs.entries[k][j]).sum();
            }
        }
        m
    }
}

impl Add for Matrix4C {
    type Output = Matrix4C;

    fn add(mut self, rhs: Matrix4C) -> Matrix4C {
        for (a, b) in self.entries.iter_mut().flatten().zip(rhs.entries.iter().flatten()) {
            *a += b;
        }
        self
    }
}

impl Sub for Matrix4C {
    type Output = Matrix4C;

    fn sub(mut self, rhs: Matrix4C) -> Matrix4C {
        for (a, b) in self.entries.iter_mut().flatten().zip(rhs.entries.iter().flatten()) {
            *a -= b;
        }
        self
    }
}

/// `a ⊗ b`, with `a` acting on qubit 1.
pub fn kron2(a: &Matrix2C, b: &Matrix2C) -> Matrix4C {
    let mut m = Matrix4C::zeros();
    for i1 in 0..2 {
        for j1 in 0..2 {
            for i2 in 0..2 {
                for j2 in 0..2 {
                    m.entries[2 * i1 + i2][2 * j1 + j2] = a.0[i1][j1] * b.0[i2][j2];
                }
            }
        }
    }
    m
}

/// `σy ⊗ σy`, the two-qubit spin flip.
pub fn spin_flip() -> Matrix4C {
    kron2(&pauli(2), &pauli(2))
}

/// Tolerance on trace, Hermiticity and negativity for density-matrix inputs.
pub const DENSITY_TOL: f64 = 1e-10;

/// Checks that `m` is a trace-one, Hermitian, positive semidefinite matrix.
pub fn validate_density(m: &Matrix4C) -> Result<()> {
    use crate::error::DensityViolation;

    if !m.is_finite() {
        return Err(Error::NonFinite);
    }
    let asymmetry = m.hermiticity_error();
    if asymmetry > DENSITY_TOL {
        return Err(Error::InvalidDensity(DensityViolation::Hermiticity(asymmetry)));
    }
    let trace_error = (m.trace() - 1.0).norm();
    if trace_error > DENSITY_TOL {
        return Err(Error::InvalidDensity(DensityViolation::Trace(trace_error)));
    }
    let lowest = hermitian_eigendecompose(m)?.eigenvalues[0];
    if lowest < -DENSITY_TOL {
        return Err(Error::InvalidDensity(DensityViolation::NegativeEigenvalue(lowest)));
    }
    Ok(())
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct HermitianEigenDecomposition {
    /// Ascending.
    pub eigenvalues: [f64; 4],
    /// Column `k` is the eigenvector of `eigenvalues[k]`.
    pub eigenvectors: Matrix4C,
}

impl HermitianEigenDecomposition {
    pub fn eigenvector(&self, k: usize) -> Vector4C {
        let v = self.eigenvectors.entries();
        [v[0][k], v[1][k], v[2][k], v[3][k]]
    }

    /// `V f(Λ) V†`
    pub fn reconstruct_with(&self, weights: [f64; 4]) -> Matrix4C {
        let v = &self.eigenvectors.entries;
        let mut m = Matrix4C::zeros();
        for i in 0..4 {
            for j in 0..4 {
                m.entries[i][j] = (0..4).map(|k| v[i][k] * weights[k] * v[j][k].conj()).sum();
            }
        }
        m
    }

    pub fn reconstruct(&self) -> Matrix4C {
        self.reconstruct_with(self.eigenvalues)
    }
}

fn off_diagonal_norm(a: &[[C64; 4]; 4]) -> f64 {
    let mut s = 0.0;
    for (i, row) in a.iter().enumerate() {
        for (j, z) in row.iter().enumerate() {
            if i != j {
                s += z.norm_sqr();
            }
        }
    }
    s.sqrt()
}

/// Cyclic complex Jacobi eigensolver.
///
/// The input is symmetrized as `(m + m†)/2` after the Hermiticity check, so
/// the returned eigenvalues are exactly real. Pairs with an exactly zero
/// off-diagonal element are never rotated, which keeps structural zeros (for
/// example the X pattern of thermal states) exact.
pub fn hermitian_eigendecompose(m: &Matrix4C) -> Result<HermitianEigenDecomposition> {
    let asymmetry = m.hermiticity_error();
    if asymmetry > HERMITIAN_TOL {
        return Err(Error::NonHermitian { asymmetry });
    }
    if !m.is_finite() {
        return Err(Error::NonFinite);
    }

    let mut a = [[ZERO; 4]; 4];
    for i in 0..4 {
        for j in 0..4 {
            a[i][j] = (m.entries[i][j] + m.entries[j][i].conj()) * 0.5;
        }
        a[i][i].im = 0.0;
    }
    let mut v = Matrix4C::identity().entries;
    let scale = m.frobenius_norm();

    for _ in 0..MAX_SWEEPS {
        let off = off_diagonal_norm(&a);
        if off == 0.0 || off <= JACOBI_TOL * scale {
            break;
        }
        for p in 0..3 {
            for q in (p + 1)..4 {
                rotate(&mut a, &mut v, p, q);
            }
        }
    }

    let mut order = [0usize, 1, 2, 3];
    order.sort_by(|&x, &y| a[x][x].re.total_cmp(&a[y][y].re));
    let mut eigenvalues = [0.0; 4];
    let mut vectors = [[ZERO; 4]; 4];
    for (k, &src) in order.iter().enumerate() {
        eigenvalues[k] = a[src][src].re;
        for i in 0..4 {
            vectors[i][k] = v[i][src];
        }
    }
    Ok(HermitianEigenDecomposition {
        eigenvalues,
        eigenvectors: Matrix4C::from_entries(vectors),
    })
}

/// Annihilates `a[p][q]` with the unitary `J = [[c, s·w], [-s·w̄, c]]` on the
/// `(p, q)` plane, where `w` is the phase of `a[p][q]`; `a ← J† a J`,
/// `v ← v J`.
fn rotate(a: &mut [[C64; 4]; 4], v: &mut [[C64; 4]; 4], p: usize, q: usize) {
    let g = a[p][q];
    let mag = g.norm();
    if mag == 0.0 {
        return;
    }
    let w = g / mag;
    let app = a[p][p].re;
    let aqq = a[q][q].re;
    let zeta = (aqq - app) / (2.0 * mag);
    let t = if zeta >= 0.0 {
        1.0 / (zeta + (1.0 + zeta * zeta).sqrt())
    } else {
        -1.0 / (-zeta + (1.0 + zeta * zeta).sqrt())
    };
    let c = 1.0 / (1.0 + t * t).sqrt();
    let s = t * c;
    let sw = w * s;
    let swc = sw.conj();

    for row in a.iter_mut() {
        let (xp, xq) = (row[p], row[q]);
        row[p] = xp * c - xq * swc;
        row[q] = xp * sw + xq * c;
    }
    for k in 0..4 {
        let (xp, xq) = (a[p][k], a[q][k]);
        a[p][k] = xp * c - xq * sw;
        a[q][k] = xp * swc + xq * c;
    }
    a[p][p] = C64::new(app - t * mag, 0.0);
    a[q][q] = C64::new(aqq + t * mag, 0.0);
    a[p][q] = ZERO;
    a[q][p] = ZERO;

    for row in v.iter_mut() {
        let (xp, xq) = (row[p], row[q]);
        row[p] = xp * c - xq * swc;
        row[q] = xp * sw + xq * c;
    }
}

/// `V f(Λ) V†` for Hermitian `m`. A non-finite `f(λ)` is a domain error.
pub fn matrix_function<F>(m: &Matrix4C, f: F) -> Result<Matrix4C>
where
    F: Fn(f64) -> f64,
{
    let eig = hermitian_eigendecompose(m)?;
    let mut weights = [0.0; 4];
    for (w, &lambda) in weights.iter_mut().zip(eig.eigenvalues.iter()) {
        *w = f(lambda);
        if !w.is_finite() {
            return Err(Error::Domain { eigenvalue: lambda });
        }
    }
    Ok(eig.reconstruct_with(weights))
}

/// Principal square root of a positive semidefinite matrix.
///
/// Eigenvalues in `[-NEGATIVE_CLAMP, 0)` are clamped to zero; anything more
/// negative is a domain error. Eigenvalues below the rounding floor
/// `16·ε·λ_max` are also set to zero: they are indistinguishable from the
/// eigensolver's noise, and taking their square root would promote `1e-17`
/// noise to `1e-9` entries.
pub fn psd_sqrt(m: &Matrix4C) -> Result<Matrix4C> {
    let eig = hermitian_eigendecompose(m)?;
    let top = eig.eigenvalues[3].max(0.0);
    let floor = 16.0 * f64::EPSILON * top;
    let mut weights = [0.0; 4];
    for (w, &lambda) in weights.iter_mut().zip(eig.eigenvalues.iter()) {
        if lambda < -NEGATIVE_CLAMP {
            return Err(Error::Domain { eigenvalue: lambda });
        }
        *w = if lambda <= floor { 0.0 } else { lambda.sqrt() };
    }
    Ok(eig.reconstruct_with(weights))
}

/// Singular values, descending, by one-sided (Hestenes) Jacobi.
///
/// Columns are orthogonalized pairwise; at convergence the singular values are
/// the column norms. Small singular values come out with absolute error of
/// order `ε·‖m‖`, unlike square roots of the eigenvalues of `m†m`.
pub fn singular_values(m: &Matrix4C) -> [f64; 4] {
    let mut a = m.entries;
    for _ in 0..MAX_SWEEPS {
        let mut rotated = false;
        for p in 0..3 {
            for q in (p + 1)..4 {
                let mut alpha = 0.0;
                let mut beta = 0.0;
                let mut gamma = ZERO;
                for row in a.iter() {
                    alpha += row[p].norm_sqr();
                    beta += row[q].norm_sqr();
                    gamma += row[p].conj() * row[q];
                }
                let mag = gamma.norm();
                if mag == 0.0 || mag <= f64::EPSILON * (alpha * beta).sqrt() {
                    continue;
                }
                rotated = true;
                let w = gamma / mag;
                let zeta = (beta - alpha) / (2.0 * mag);
                let t = if zeta >= 0.0 {
                    1.0 / (zeta + (1.0 + zeta * zeta).sqrt())
                } else {
                    -1.0 / (-zeta + (1.0 + zeta * zeta).sqrt())
                };
                let c = 1.0 / (1.0 + t * t).sqrt();
                let s = t * c;
                let wc = w.conj();
                for row in a.iter_mut() {
                    let xp = row[p];
                    let bq = row[q] * wc;
                    row[p] = xp * c - bq * s;
                    row[q] = xp * s + bq * c;
                }
            }
        }
        if !rotated {
            break;
        }
    }
    let mut sv = [0.0; 4];
    for (k, s) in sv.iter_mut().enumerate() {
        *s = a.iter().map(|row| row[k].norm_sqr()).sum::<f64>().sqrt();
    }
    sv.sort_by(|x, y| y.total_cmp(x));
    sv
}
