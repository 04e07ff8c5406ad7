//! The SIC probabilistic representation: state <-> probability-vector
//! conversion, the deformed Law of Total Probability, quasi-probabilities
//! with negativity, and the gauge matrix that moves negativity between
//! the state vector and the conditional matrix.

use crate::qmath::{DensityOperator, Operator, QmathError, DEFAULT_TOL};
use crate::sics::SicSet;
use nalgebra::{DMatrix, DVector};
use serde::{Deserialize, Serialize};

#[derive(Debug, thiserror::Error)]
pub enum ReprError {
    #[error(transparent)]
    Qmath(#[from] QmathError),
    #[error("dimension mismatch: {0} vs {1}")]
    DimensionMismatch(usize, usize),
    #[error("probability vector not normalized: sum = {0}")]
    NotNormalized(f64),
    #[error("shape mismatch: conditional matrix has {0} columns, probability vector {1}")]
    ShapeMismatch(usize, usize),
    #[error("POVM elements do not sum to identity: max deviation {0:.3e}")]
    BadPovm(f64),
}

/// p(H_i) = (1/d) tr(rho Pi_i), a length-d^2 probability vector.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SicProbVector {
    pub dim: usize,
    pub p: Vec<f64>,
}

impl SicProbVector {
    pub fn new(dim: usize, p: Vec<f64>) -> Result<Self, ReprError> {
        if p.len() != dim * dim {
            return Err(ReprError::DimensionMismatch(dim * dim, p.len()));
        }
        let sum: f64 = p.iter().sum();
        if (sum - 1.0).abs() > 1e-8 {
            return Err(ReprError::NotNormalized(sum));
        }
        Ok(SicProbVector { dim, p })
    }

    pub fn uniform(dim: usize) -> Self {
        SicProbVector {
            dim,
            p: vec![1.0 / (dim * dim) as f64; dim * dim],
        }
    }
}

/// The deformed vector (d+1) p_i - 1/d; sums to 1 but may go negative.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct QuasiProbVector {
    pub dim: usize,
    pub q: Vec<f64>,
}

/// Conditional probabilities r_{ji} = p(D_j | H_i) = tr(D_j Pi_i) for a
/// POVM {D_j} against the SIC states.
#[derive(Debug, Clone)]
pub struct ConditionalMatrix {
    /// rows = POVM outcomes, cols = d^2 SIC indices
    pub r: DMatrix<f64>,
}

impl ConditionalMatrix {
    /// Validates that the elements form a POVM (PSD, summing to I).
    pub fn new(povm: &[Operator], sic: &SicSet, tol: f64) -> Result<Self, ReprError> {
        let d = sic.dim;
        let mut sum = Operator::zeros(d);
        for e in povm {
            if e.dim() != d {
                return Err(ReprError::DimensionMismatch(d, e.dim()));
            }
            if !e.is_psd(1e-8)? {
                return Err(ReprError::BadPovm(f64::NAN));
            }
            sum = sum.add(e);
        }
        let dev = sum.sub(&Operator::identity(d)).max_norm();
        if dev > tol.max(1e-8) {
            return Err(ReprError::BadPovm(dev));
        }
        let mut r = DMatrix::zeros(povm.len(), sic.len());
        for (j, e) in povm.iter().enumerate() {
            for (i, pi) in sic.projectors.iter().enumerate() {
                r[(j, i)] = e.mul(pi).trace().re;
            }
        }
        Ok(ConditionalMatrix { r })
    }

    pub fn outcomes(&self) -> usize {
        self.r.nrows()
    }
}

/// Phi = (d+1) I - (1/d) J on R^{d^2}; applying it to p(H) yields the
/// quasi-probability vector.
#[derive(Debug, Clone)]
pub struct GaugeMatrix {
    pub dim: usize,
    pub phi: DMatrix<f64>,
}

impl GaugeMatrix {
    pub fn new(dim: usize) -> Self {
        let n = dim * dim;
        let d = dim as f64;
        let phi = DMatrix::identity(n, n) * (d + 1.0) - DMatrix::from_element(n, n, 1.0 / d);
        GaugeMatrix { dim, phi }
    }

    /// Real symmetric square root, computed spectrally. Phi is positive
    /// definite with eigenvalues d+1 (multiplicity d^2-1) and 1 (on the
    /// all-ones vector).
    pub fn sqrt(&self) -> DMatrix<f64> {
        let eig = nalgebra::SymmetricEigen::new(self.phi.clone());
        let mut out = DMatrix::zeros(self.phi.nrows(), self.phi.ncols());
        for (k, lam) in eig.eigenvalues.iter().enumerate() {
            assert!(*lam > 0.0);
            let v = eig.eigenvectors.column(k);
            out += v * v.transpose() * lam.sqrt();
        }
        out
    }
}

pub fn state_to_probs(rho: &DensityOperator, sic: &SicSet) -> Result<SicProbVector, ReprError> {
    if rho.dim() != sic.dim {
        return Err(ReprError::DimensionMismatch(rho.dim(), sic.dim));
    }
    let d = sic.dim as f64;
    let p = sic
        .projectors
        .iter()
        .map(|pi| rho.expectation(pi).re / d)
        .collect();
    SicProbVector::new(sic.dim, p)
}

/// rho = sum_i [(d+1) p_i - 1/d] Pi_i. Always Hermitian with unit trace;
/// the flag reports whether it is also PSD. Dispersion-free inputs
/// legitimately produce non-PSD output, so nothing is rejected here.
pub fn probs_to_state(p: &SicProbVector, sic: &SicSet) -> Result<(Operator, bool), ReprError> {
    if p.dim != sic.dim {
        return Err(ReprError::DimensionMismatch(p.dim, sic.dim));
    }
    let sum: f64 = p.p.iter().sum();
    if (sum - 1.0).abs() > 1e-8 {
        return Err(ReprError::NotNormalized(sum));
    }
    let d = sic.dim as f64;
    let mut op = Operator::zeros(sic.dim);
    for (pi, &prob) in sic.projectors.iter().zip(p.p.iter()) {
        op = op.add(&pi.scale_re((d + 1.0) * prob - 1.0 / d));
    }
    let psd = op.is_psd(DEFAULT_TOL)?;
    Ok((op, psd))
}

/// The deformed Law of Total Probability:
/// q_j = sum_i [(d+1) p_i - 1/d] r_{ji}.
pub fn urgleichung(p: &SicProbVector, cond: &ConditionalMatrix) -> Result<Vec<f64>, ReprError> {
    if cond.r.ncols() != p.p.len() {
        return Err(ReprError::ShapeMismatch(cond.r.ncols(), p.p.len()));
    }
    let d = p.dim as f64;
    let quasi: Vec<f64> = p.p.iter().map(|&pi| (d + 1.0) * pi - 1.0 / d).collect();
    Ok((0..cond.outcomes())
        .map(|j| (0..p.p.len()).map(|i| quasi[i] * cond.r[(j, i)]).sum())
        .collect())
}

pub fn quasiprob(p: &SicProbVector) -> QuasiProbVector {
    let d = p.dim as f64;
    QuasiProbVector {
        dim: p.dim,
        q: p.p.iter().map(|&pi| (d + 1.0) * pi - 1.0 / d).collect(),
    }
}

/// Total weight of the negative part, sum_i max(0, -q_i).
pub fn negativity(q: &QuasiProbVector) -> f64 {
    q.q.iter().map(|&qi| (-qi).max(0.0)).sum()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum GaugePlacement {
    /// Phi acts on p: negativity lives in the state vector.
    Right,
    /// Phi folded into the conditional matrix.
    Left,
    /// Phi^{1/2} on each side.
    Split,
}

pub fn gauge_apply(
    cond: &ConditionalMatrix,
    p: &SicProbVector,
    placement: GaugePlacement,
) -> Result<Vec<f64>, ReprError> {
    if cond.r.ncols() != p.p.len() {
        return Err(ReprError::ShapeMismatch(cond.r.ncols(), p.p.len()));
    }
    let phi = GaugeMatrix::new(p.dim);
    let pv = DVector::from_vec(p.p.clone());
    let out: DVector<f64> = match placement {
        GaugePlacement::Right => &cond.r * (&phi.phi * pv),
        GaugePlacement::Left => (&cond.r * &phi.phi) * pv,
        GaugePlacement::Split => {
            let half = phi.sqrt();
            (&cond.r * &half) * (&half * pv)
        }
    };
    Ok(out.iter().copied().collect())
}

/// <A> = (d+1) sum_i p_i tr(A Pi_i) - (1/d) sum_i tr(A Pi_i).
/// For traceless A the second term vanishes.
pub fn sic_expectation(a: &Operator, p: &SicProbVector, sic: &SicSet) -> Result<f64, ReprError> {
    if !a.is_hermitian(1e-8) {
        return Err(ReprError::Qmath(QmathError::NotHermitian(
            a.hermiticity_defect(),
        )));
    }
    if a.dim() != sic.dim || p.dim != sic.dim {
        return Err(ReprError::DimensionMismatch(a.dim(), sic.dim));
    }
    let d = sic.dim as f64;
    let per_state: Vec<f64> = sic.projectors.iter().map(|pi| a.mul(pi).trace().re).collect();
    let weighted: f64 = p.p.iter().zip(per_state.iter()).map(|(pi, ai)| pi * ai).sum();
    let total: f64 = per_state.iter().sum();
    Ok((d + 1.0) * weighted - total / d)
}
