//! Random states and POVMs for property checks. Haar-like pure states
//! come from normalized complex Gaussian kets; mixed states from convex
//! mixtures; POVMs from symmetrized random positive decompositions of I.

use crate::qmath::{projector, DensityOperator, Ket, Operator, C64, DEFAULT_TOL};
use nalgebra::DMatrix;
use rand::Rng;
use rand_distr::StandardNormal;

pub fn random_pure(dim: usize, rng: &mut impl Rng) -> Ket {
    let entries: Vec<C64> = (0..dim)
        .map(|_| C64::new(rng.sample(StandardNormal), rng.sample(StandardNormal)))
        .collect();
    Ket::new(entries).normalized()
}

pub fn random_density(dim: usize, rng: &mut impl Rng) -> DensityOperator {
    // mixture of dim random pure states with random weights
    let mut weights: Vec<f64> = (0..dim).map(|_| rng.gen_range(0.01..1.0)).collect();
    let total: f64 = weights.iter().sum();
    for w in &mut weights {
        *w /= total;
    }
    let mut op = Operator::zeros(dim);
    for w in weights {
        let p = projector(&random_pure(dim, rng)).expect("normalized");
        op = op.add(&p.scale_re(w));
    }
    DensityOperator::new(op, DEFAULT_TOL).expect("convex mixture of projectors")
}

/// A random n-outcome POVM: G_k = A_k A_k^dag, then D_k = S^{-1/2} G_k S^{-1/2}
/// with S = sum_k G_k.
pub fn random_povm(dim: usize, n: usize, rng: &mut impl Rng) -> Vec<Operator> {
    let gs: Vec<Operator> = (0..n)
        .map(|_| {
            let raw: Vec<C64> = (0..dim * dim)
                .map(|_| C64::new(rng.sample(StandardNormal), rng.sample(StandardNormal)))
                .collect();
            let a = Operator::new(DMatrix::from_row_slice(dim, dim, &raw));
            a.mul(&a.dagger())
        })
        .collect();
    let mut s = Operator::zeros(dim);
    for g in &gs {
        s = s.add(g);
    }
    let s_inv_half = hermitian_power(&s, -0.5);
    gs.iter()
        .map(|g| s_inv_half.mul(g).mul(&s_inv_half))
        .collect()
}

/// A^p for Hermitian positive definite A, computed spectrally.
pub fn hermitian_power(a: &Operator, p: f64) -> Operator {
    let (vals, vecs) = a.hermitian_eigen(DEFAULT_TOL).expect("Hermitian input");
    let mut out = Operator::zeros(a.dim());
    for (lam, v) in vals.iter().zip(vecs.iter()) {
        assert!(*lam > 0.0, "hermitian_power requires positive eigenvalues");
        let pr = projector(v).expect("unit eigenvector");
        out = out.add(&pr.scale_re(lam.powf(p)));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn random_povm_sums_to_identity() {
        use rand::SeedableRng;
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(3);
        for &d in &[2usize, 3, 8] {
            let povm = random_povm(d, 5, &mut rng);
            let mut s = Operator::zeros(d);
            for e in &povm {
                assert!(e.is_psd(DEFAULT_TOL).unwrap());
                s = s.add(e);
            }
            assert!(s.sub(&Operator::identity(d)).max_norm() < 1e-10);
        }
    }
}
