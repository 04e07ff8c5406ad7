//! Small dense complex linear algebra for dimensions 2, 3, 4 and 8.
//!
//! Everything downstream (SIC construction, probabilistic representation,
//! Bell/KS checks) runs on the types here. Matrices are tiny, so the
//! eigensolver and norms favor correctness over speed.

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

pub type C64 = Complex64;

/// Default numerical tolerance. The paper's quantities are small exact
/// rationals (sometimes with √3 or ω), so double precision leaves ample
/// headroom over this.
pub const DEFAULT_TOL: f64 = 1e-10;

#[derive(Debug, thiserror::Error)]
pub enum QmathError {
    #[error("dimension mismatch: {0} vs {1}")]
    DimensionMismatch(usize, usize),
    #[error("ket is not normalized: |norm^2 - 1| = {0:.3e}")]
    NotNormalized(f64),
    #[error("operator is not Hermitian: max |A - A^dag| = {0:.3e}")]
    NotHermitian(f64),
    #[error("operator is not a density matrix: {0}")]
    NotDensity(String),
}

/// A column vector in C^d.
#[derive(Debug, Clone, PartialEq)]
pub struct Ket {
    v: DVector<C64>,
}

impl Ket {
    pub fn new(entries: Vec<C64>) -> Self {
        Ket {
            v: DVector::from_vec(entries),
        }
    }

    pub fn from_real(entries: &[f64]) -> Self {
        Ket::new(entries.iter().map(|&x| C64::new(x, 0.0)).collect())
    }

    /// Standard basis vector |k> in dimension d.
    pub fn basis(dim: usize, k: usize) -> Self {
        let mut v = DVector::zeros(dim);
        v[k] = C64::new(1.0, 0.0);
        Ket { v }
    }

    pub fn dim(&self) -> usize {
        self.v.len()
    }

    pub fn entries(&self) -> &DVector<C64> {
        &self.v
    }

    pub fn norm(&self) -> f64 {
        self.v.norm()
    }

    pub fn normalized(&self) -> Ket {
        Ket {
            v: self.v.clone() / C64::new(self.norm(), 0.0),
        }
    }

    /// <self|other>.
    pub fn inner(&self, other: &Ket) -> C64 {
        self.v.dotc(&other.v)
    }

    /// |<self|other>|^2.
    pub fn overlap2(&self, other: &Ket) -> f64 {
        self.inner(other).norm_sqr()
    }

    pub fn scale(&self, c: C64) -> Ket {
        Ket {
            v: self.v.clone() * c,
        }
    }

    pub fn tensor(&self, other: &Ket) -> Ket {
        Ket {
            v: self.v.kronecker(&other.v),
        }
    }

    /// Rescale by a phase so the first entry with modulus above `tol`
    /// is real and positive. Used for deterministic serialization.
    pub fn phase_canonical(&self, tol: f64) -> Ket {
        for e in self.v.iter() {
            if e.norm() > tol {
                let phase = e / e.norm();
                return self.scale(phase.conj());
            }
        }
        self.clone()
    }
}

/// A square complex matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct Operator {
    m: DMatrix<C64>,
}

impl Operator {
    pub fn new(m: DMatrix<C64>) -> Self {
        assert_eq!(m.nrows(), m.ncols(), "operator must be square");
        Operator { m }
    }

    /// Row-major entries.
    pub fn from_rows(dim: usize, entries: &[C64]) -> Self {
        assert_eq!(entries.len(), dim * dim);
        Operator {
            m: DMatrix::from_row_slice(dim, dim, entries),
        }
    }

    pub fn identity(dim: usize) -> Self {
        Operator {
            m: DMatrix::identity(dim, dim),
        }
    }

    pub fn zeros(dim: usize) -> Self {
        Operator {
            m: DMatrix::zeros(dim, dim),
        }
    }

    pub fn dim(&self) -> usize {
        self.m.nrows()
    }

    pub fn matrix(&self) -> &DMatrix<C64> {
        &self.m
    }

    pub fn trace(&self) -> C64 {
        self.m.trace()
    }

    pub fn dagger(&self) -> Operator {
        Operator {
            m: self.m.adjoint(),
        }
    }

    pub fn scale(&self, c: C64) -> Operator {
        Operator {
            m: self.m.clone() * c,
        }
    }

    pub fn scale_re(&self, s: f64) -> Operator {
        self.scale(C64::new(s, 0.0))
    }

    pub fn add(&self, other: &Operator) -> Operator {
        Operator {
            m: &self.m + &other.m,
        }
    }

    pub fn sub(&self, other: &Operator) -> Operator {
        Operator {
            m: &self.m - &other.m,
        }
    }

    pub fn mul(&self, other: &Operator) -> Operator {
        Operator {
            m: &self.m * &other.m,
        }
    }

    pub fn apply(&self, k: &Ket) -> Ket {
        Ket {
            v: &self.m * k.entries(),
        }
    }

    /// Kronecker product; the left factor is the most significant index
    /// (qubit 1 = leftmost, matching the XXX / XYY labeling).
    pub fn tensor(&self, other: &Operator) -> Operator {
        Operator {
            m: self.m.kronecker(&other.m),
        }
    }

    /// Largest entrywise modulus.
    pub fn max_norm(&self) -> f64 {
        self.m.iter().map(|e| e.norm()).fold(0.0, f64::max)
    }

    pub fn hermiticity_defect(&self) -> f64 {
        self.sub(&self.dagger()).max_norm()
    }

    pub fn is_hermitian(&self, tol: f64) -> bool {
        self.hermiticity_defect() <= tol
    }

    /// Eigen-decomposition of a Hermitian operator: ascending real
    /// eigenvalues with matching unit eigenvectors.
    pub fn hermitian_eigen(&self, tol: f64) -> Result<(Vec<f64>, Vec<Ket>), QmathError> {
        let defect = self.hermiticity_defect();
        if defect > tol {
            return Err(QmathError::NotHermitian(defect));
        }
        // Symmetrize so the solver sees an exactly Hermitian input.
        let h = (&self.m + self.m.adjoint()) * C64::new(0.5, 0.0);
        let eig = nalgebra::SymmetricEigen::new(h);
        let mut pairs: Vec<(f64, Ket)> = eig
            .eigenvalues
            .iter()
            .enumerate()
            .map(|(k, &lam)| (lam, Ket { v: eig.eigenvectors.column(k).into_owned() }))
            .collect();
        pairs.sort_by(|a, b| a.0.partial_cmp(&b.0).unwrap());
        Ok(pairs.into_iter().unzip())
    }

    pub fn min_eigenvalue(&self, tol: f64) -> Result<f64, QmathError> {
        let (vals, _) = self.hermitian_eigen(tol)?;
        Ok(vals[0])
    }

    /// True iff all eigenvalues are >= -tol. Requires a Hermitian input.
    pub fn is_psd(&self, tol: f64) -> Result<bool, QmathError> {
        Ok(self.min_eigenvalue(tol)? >= -tol)
    }
}

/// |k><k| for a normalized ket.
pub fn projector(k: &Ket) -> Result<Operator, QmathError> {
    let n2 = k.norm() * k.norm();
    if (n2 - 1.0).abs() > 1e-8 {
        return Err(QmathError::NotNormalized((n2 - 1.0).abs()));
    }
    let v = k.entries();
    let m = v * v.adjoint();
    Ok(Operator { m })
}

/// A quantum state: Hermitian, unit trace, positive semidefinite.
#[derive(Debug, Clone)]
pub struct DensityOperator {
    op: Operator,
}

impl DensityOperator {
    pub fn new(op: Operator, tol: f64) -> Result<Self, QmathError> {
        let defect = op.hermiticity_defect();
        if defect > tol {
            return Err(QmathError::NotHermitian(defect));
        }
        let tr = op.trace();
        if (tr.re - 1.0).abs() > tol || tr.im.abs() > tol {
            return Err(QmathError::NotDensity(format!(
                "trace = {:.6} + {:.6}i, expected 1",
                tr.re, tr.im
            )));
        }
        let min = op.min_eigenvalue(tol)?;
        if min < -tol {
            return Err(QmathError::NotDensity(format!(
                "not positive semidefinite: min eigenvalue {:.3e}",
                min
            )));
        }
        Ok(DensityOperator { op })
    }

    pub fn pure(k: &Ket) -> Result<Self, QmathError> {
        DensityOperator::new(projector(&k.normalized())?, DEFAULT_TOL)
    }

    pub fn maximally_mixed(dim: usize) -> Self {
        DensityOperator {
            op: Operator::identity(dim).scale_re(1.0 / dim as f64),
        }
    }

    pub fn dim(&self) -> usize {
        self.op.dim()
    }

    pub fn operator(&self) -> &Operator {
        &self.op
    }

    /// tr(rho A).
    pub fn expectation(&self, a: &Operator) -> C64 {
        self.op.mul(a).trace()
    }
}

/// Point in (or near) the Bloch ball: (tr(rho X), tr(rho Y), tr(rho Z)).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BlochVector {
    pub x: f64,
    pub y: f64,
    pub z: f64,
}

impl BlochVector {
    pub fn new(x: f64, y: f64, z: f64) -> Self {
        BlochVector { x, y, z }
    }

    pub fn norm(&self) -> f64 {
        (self.x * self.x + self.y * self.y + self.z * self.z).sqrt()
    }

    pub fn dot(&self, other: &BlochVector) -> f64 {
        self.x * other.x + self.y * other.y + self.z * other.z
    }

    /// (I + x X + y Y + z Z) / 2 as a raw operator; Hermitian and unit
    /// trace for any input, PSD only when |b| <= 1.
    pub fn to_operator(&self) -> Operator {
        let mut m = Operator::identity(2)
            .add(&pauli_x().scale_re(self.x))
            .add(&pauli_y().scale_re(self.y))
            .add(&pauli_z().scale_re(self.z));
        m = m.scale_re(0.5);
        m
    }

    pub fn to_density(&self, tol: f64) -> Result<DensityOperator, QmathError> {
        DensityOperator::new(self.to_operator(), tol)
    }

    pub fn from_operator(op: &Operator) -> BlochVector {
        BlochVector {
            x: op.mul(&pauli_x()).trace().re,
            y: op.mul(&pauli_y()).trace().re,
            z: op.mul(&pauli_z()).trace().re,
        }
    }
}

pub fn pauli_x() -> Operator {
    let z = C64::new(0.0, 0.0);
    let one = C64::new(1.0, 0.0);
    Operator::from_rows(2, &[z, one, one, z])
}

pub fn pauli_y() -> Operator {
    let z = C64::new(0.0, 0.0);
    let i = C64::new(0.0, 1.0);
    Operator::from_rows(2, &[z, -i, i, z])
}

pub fn pauli_z() -> Operator {
    let z = C64::new(0.0, 0.0);
    let one = C64::new(1.0, 0.0);
    Operator::from_rows(2, &[one, z, z, -one])
}

// ---------------------------------------------------------------------------
// JSON forms. Kets serialize as [[re, im], ...]; operators as
// {dim, entries: [[[re, im], ...], ...]} row-major.
// ---------------------------------------------------------------------------

#[derive(Serialize, Deserialize)]
pub struct KetJson(pub Vec<[f64; 2]>);

impl From<&Ket> for KetJson {
    fn from(k: &Ket) -> Self {
        KetJson(k.entries().iter().map(|e| [e.re, e.im]).collect())
    }
}

impl From<&KetJson> for Ket {
    fn from(j: &KetJson) -> Self {
        Ket::new(j.0.iter().map(|&[re, im]| C64::new(re, im)).collect())
    }
}

#[derive(Serialize, Deserialize)]
pub struct OperatorJson {
    pub dim: usize,
    pub entries: Vec<Vec<[f64; 2]>>,
}

impl From<&Operator> for OperatorJson {
    fn from(op: &Operator) -> Self {
        let d = op.dim();
        let entries = (0..d)
            .map(|r| (0..d).map(|c| {
                let e = op.matrix()[(r, c)];
                [e.re, e.im]
            }).collect())
            .collect();
        OperatorJson { dim: d, entries }
    }
}

impl TryFrom<&OperatorJson> for Operator {
    type Error = QmathError;

    fn try_from(j: &OperatorJson) -> Result<Self, QmathError> {
        let d = j.dim;
        if j.entries.len() != d || j.entries.iter().any(|row| row.len() != d) {
            return Err(QmathError::DimensionMismatch(d, j.entries.len()));
        }
        let flat: Vec<C64> = j
            .entries
            .iter()
            .flatten()
            .map(|&[re, im]| C64::new(re, im))
            .collect();
        Ok(Operator::from_rows(d, &flat))
    }
}
