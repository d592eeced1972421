//! Cyclic Jacobi eigensolver for Hermitian matrices.
//!
//! Each rotation annihilates one off-diagonal pair (p, q) with a complex
//! Givens rotation; sweeps repeat in row order until the off-diagonal
//! Frobenius norm drops below 1e−12 (at most 100 sweeps). Matrices up to
//! 8×8 only — the sampler never needs more.

use num_complex::Complex64;

use super::cmatrix::CMatrix;
use super::OracleError;

const OFF_DIAGONAL_TOL: f64 = 1e-12;
const HERMITIAN_TOL: f64 = 1e-10;
const MAX_SWEEPS: usize = 100;

/// All eigenvalues of a Hermitian matrix, in no particular order.
pub fn hermitian_eigenvalues(m: &CMatrix) -> Result<Vec<f64>, OracleError> {
    let n = m.n();
    if !(1..=8).contains(&n) {
        return Err(OracleError::UnsupportedSize { n });
    }
    let defect = m.hermitian_defect();
    if defect >= HERMITIAN_TOL {
        return Err(OracleError::NonHermitian { defect });
    }
    let mut a = m.clone();
    a.hermitize();
    for _ in 0..MAX_SWEEPS {
        let mut off_sq = 0.0;
        for p in 0..n {
            for q in (p + 1)..n {
                off_sq += 2.0 * a.at(p, q).norm_sqr();
            }
        }
        if off_sq.sqrt() < OFF_DIAGONAL_TOL {
            return Ok((0..n).map(|i| a.at(i, i).re).collect());
        }
        for p in 0..n {
            for q in (p + 1)..n {
                rotate(&mut a, p, q);
            }
        }
    }
    Err(OracleError::NoConvergence { sweeps: MAX_SWEEPS })
}

/// One complex Jacobi rotation zeroing the (p, q) entry.
///
/// Writing a_pq = m·e^{iφ}, the angle comes from the real symmetric case
/// applied to the phase-aligned 2×2 block: τ = (a_qq − a_pp)/(2m),
/// t = sign(τ)/(|τ| + √(τ²+1)), c = 1/√(1+t²), s = t·c·e^{iφ}. The
/// diagonal moves by ∓t·m; rows and columns mix through (c, s).
fn rotate(a: &mut CMatrix, p: usize, q: usize) {
    let g = a.at(p, q);
    let m = g.norm();
    if m == 0.0 {
        return;
    }
    let phase = g / m;
    let tau = (a.at(q, q).re - a.at(p, p).re) / (2.0 * m);
    let t = if tau.is_finite() {
        let sign = if tau >= 0.0 { 1.0 } else { -1.0 };
        sign / (tau.abs() + (tau * tau + 1.0).sqrt())
    } else {
        // m is subnormal next to the diagonal gap; the rotation is the
        // identity and the entry is simply dropped
        0.0
    };
    let c = 1.0 / (1.0 + t * t).sqrt();
    let s = phase * (t * c);

    let tm = t * m;
    let app = a.at(p, p).re - tm;
    let aqq = a.at(q, q).re + tm;
    *a.at_mut(p, p) = Complex64::new(app, 0.0);
    *a.at_mut(q, q) = Complex64::new(aqq, 0.0);
    *a.at_mut(p, q) = Complex64::new(0.0, 0.0);
    *a.at_mut(q, p) = Complex64::new(0.0, 0.0);

    let n = a.n();
    for i in 0..n {
        if i == p || i == q {
            continue;
        }
        let aip = a.at(i, p);
        let aiq = a.at(i, q);
        let new_ip = aip * c - s.conj() * aiq;
        let new_iq = s * aip + aiq * c;
        *a.at_mut(i, p) = new_ip;
        *a.at_mut(p, i) = new_ip.conj();
        *a.at_mut(i, q) = new_iq;
        *a.at_mut(q, i) = new_iq.conj();
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracle::cmatrix::{ginibre, haar_unitary};
    use crate::oracle::rng::SplitMix64;

    fn sorted(mut v: Vec<f64>) -> Vec<f64> {
        v.sort_by(f64::total_cmp);
        v
    }

    #[test]
    fn pauli_x_has_eigenvalues_plus_minus_one() {
        let mut m = CMatrix::zeros(2);
        *m.at_mut(0, 1) = Complex64::new(1.0, 0.0);
        *m.at_mut(1, 0) = Complex64::new(1.0, 0.0);
        let eig = sorted(hermitian_eigenvalues(&m).unwrap());
        assert!((eig[0] + 1.0).abs() < 1e-12);
        assert!((eig[1] - 1.0).abs() < 1e-12);
    }

    #[test]
    fn diagonal_matrices_return_their_diagonal() {
        let mut m = CMatrix::zeros(3);
        for (i, v) in [2.5, -1.0, 0.25].iter().enumerate() {
            *m.at_mut(i, i) = Complex64::new(*v, 0.0);
        }
        let eig = sorted(hermitian_eigenvalues(&m).unwrap());
        assert_eq!(eig, vec![-1.0, 0.25, 2.5]);
    }

    #[test]
    fn eigenvalue_sum_matches_the_trace() {
        let mut rng = SplitMix64::new(99);
        for n in 2..=6 {
            for _ in 0..20 {
                let g = ginibre(n, &mut rng);
                let mut m = g.add(&g.adjoint());
                m.hermitize();
                let eig = hermitian_eigenvalues(&m).unwrap();
                let sum: f64 = eig.iter().sum();
                assert!((sum - m.trace().re).abs() < 1e-10, "n={n}");
            }
        }
    }

    #[test]
    fn conjugation_preserves_the_spectrum() {
        let mut rng = SplitMix64::new(3);
        let d = [1.0, -2.0, 0.5, 3.5];
        let u = haar_unitary(4, &mut rng).unwrap();
        let m = u.conjugate_diag(&d);
        let eig = sorted(hermitian_eigenvalues(&m).unwrap());
        let want = sorted(d.to_vec());
        for (a, b) in eig.iter().zip(&want) {
            assert!((a - b).abs() < 1e-10, "{eig:?} vs {want:?}");
        }
    }

    #[test]
    fn non_hermitian_input_is_rejected() {
        let mut m = CMatrix::zeros(2);
        *m.at_mut(0, 1) = Complex64::new(1.0, 0.0);
        let err = hermitian_eigenvalues(&m).unwrap_err();
        assert!(matches!(err, OracleError::NonHermitian { .. }));
    }
}
