//! Dense complex matrices, just enough for the sampler: products,
//! adjoints, Frobenius norms, Ginibre draws, and Haar unitaries.

use num_complex::Complex64;

use super::rng::SplitMix64;
use super::OracleError;

#[derive(Debug, Clone, PartialEq)]
pub struct CMatrix {
    n: usize,
    data: Vec<Complex64>,
}

impl CMatrix {
    pub fn zeros(n: usize) -> CMatrix {
        CMatrix {
            n,
            data: vec![Complex64::new(0.0, 0.0); n * n],
        }
    }

    pub fn identity(n: usize) -> CMatrix {
        let mut m = CMatrix::zeros(n);
        for i in 0..n {
            *m.at_mut(i, i) = Complex64::new(1.0, 0.0);
        }
        m
    }

    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn at(&self, i: usize, j: usize) -> Complex64 {
        self.data[i * self.n + j]
    }

    #[inline]
    pub fn at_mut(&mut self, i: usize, j: usize) -> &mut Complex64 {
        &mut self.data[i * self.n + j]
    }

    pub fn adjoint(&self) -> CMatrix {
        let n = self.n;
        let mut out = CMatrix::zeros(n);
        for i in 0..n {
            for j in 0..n {
                *out.at_mut(i, j) = self.at(j, i).conj();
            }
        }
        out
    }

    pub fn mul(&self, rhs: &CMatrix) -> CMatrix {
        assert_eq!(self.n, rhs.n);
        let n = self.n;
        let mut out = CMatrix::zeros(n);
        for i in 0..n {
            for k in 0..n {
                let a = self.at(i, k);
                for j in 0..n {
                    *out.at_mut(i, j) += a * rhs.at(k, j);
                }
            }
        }
        out
    }

    pub fn add(&self, rhs: &CMatrix) -> CMatrix {
        assert_eq!(self.n, rhs.n);
        let mut out = self.clone();
        for (a, b) in out.data.iter_mut().zip(&rhs.data) {
            *a += b;
        }
        out
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.data.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
    }

    /// ‖M − M*‖_F, zero exactly on Hermitian matrices.
    pub fn hermitian_defect(&self) -> f64 {
        let n = self.n;
        let mut acc = 0.0;
        for i in 0..n {
            for j in 0..n {
                let d = self.at(i, j) - self.at(j, i).conj();
                acc += d.norm_sqr();
            }
        }
        acc.sqrt()
    }

    /// Replaces M by (M + M*)/2, making it exactly Hermitian.
    pub fn hermitize(&mut self) {
        let n = self.n;
        for i in 0..n {
            for j in i..n {
                let avg = (self.at(i, j) + self.at(j, i).conj()) * 0.5;
                *self.at_mut(i, j) = avg;
                *self.at_mut(j, i) = avg.conj();
            }
        }
        for i in 0..n {
            self.at_mut(i, i).im = 0.0;
        }
    }

    /// U diag(d) U* for real d.
    pub fn conjugate_diag(&self, d: &[f64]) -> CMatrix {
        assert_eq!(d.len(), self.n);
        let n = self.n;
        let mut out = CMatrix::zeros(n);
        for i in 0..n {
            for j in 0..n {
                let mut s = Complex64::new(0.0, 0.0);
                for (k, dk) in d.iter().enumerate() {
                    s += self.at(i, k) * *dk * self.at(j, k).conj();
                }
                *out.at_mut(i, j) = s;
            }
        }
        out
    }

    /// The diagonal of U diag(d) U*: entry i is Σ_k d_k |U_ik|², which is
    /// real, so no full conjugation is needed.
    pub fn projected_diagonal(&self, d: &[f64]) -> Vec<f64> {
        assert_eq!(d.len(), self.n);
        (0..self.n)
            .map(|i| {
                d.iter()
                    .enumerate()
                    .map(|(k, dk)| dk * self.at(i, k).norm_sqr())
                    .sum()
            })
            .collect()
    }

    pub fn trace(&self) -> Complex64 {
        (0..self.n).map(|i| self.at(i, i)).sum()
    }
}

/// Square matrix of independent standard complex Gaussians (real and
/// imaginary parts each N(0,1)), filled row-major — the fill order is
/// part of the reproducibility contract.
pub fn ginibre(n: usize, rng: &mut SplitMix64) -> CMatrix {
    let mut m = CMatrix::zeros(n);
    for i in 0..n {
        for j in 0..n {
            let (re, im) = rng.normal_pair();
            *m.at_mut(i, j) = Complex64::new(re, im);
        }
    }
    m
}

/// Haar-distributed unitary via Householder QR of a Ginibre draw with the
/// R-diagonal phase correction: U = Q · diag(r_jj/|r_jj|) is the unique
/// Q-factor whose R has positive diagonal, which makes the law exactly
/// left- and right-invariant.
pub fn haar_unitary(n: usize, rng: &mut SplitMix64) -> Result<CMatrix, OracleError> {
    if !(2..=8).contains(&n) {
        return Err(OracleError::UnsupportedSize { n });
    }
    let mut r = ginibre(n, rng);
    let mut q = CMatrix::identity(n);
    let mut v = vec![Complex64::new(0.0, 0.0); n];
    for k in 0..n {
        let mut norm_sq = 0.0;
        for i in k..n {
            norm_sq += r.at(i, k).norm_sqr();
        }
        if norm_sq == 0.0 {
            continue;
        }
        let norm = norm_sq.sqrt();
        let x0 = r.at(k, k);
        let phase = if x0.norm() == 0.0 {
            Complex64::new(1.0, 0.0)
        } else {
            x0 / x0.norm()
        };
        // v = x + sign(x0)·‖x‖·e1, the cancellation-free reflector choice
        for (i, vi) in (k..n).zip(&mut v[k..n]) {
            *vi = r.at(i, k);
        }
        v[k] += phase * norm;
        let mut v_sq = 0.0;
        for vi in &v[k..n] {
            v_sq += vi.norm_sqr();
        }
        if v_sq == 0.0 {
            continue;
        }
        let inv = 1.0 / v_sq.sqrt();
        for vi in &mut v[k..n] {
            *vi *= inv;
        }
        // R ← (I − 2vv*) R on the trailing block
        for j in k..n {
            let mut s = Complex64::new(0.0, 0.0);
            for (i, vi) in (k..n).zip(&v[k..n]) {
                s += vi.conj() * r.at(i, j);
            }
            let s2 = s * 2.0;
            for (i, vi) in (k..n).zip(&v[k..n]) {
                *r.at_mut(i, j) -= s2 * vi;
            }
        }
        // Q ← Q (I − 2vv*)
        for i in 0..n {
            let mut s = Complex64::new(0.0, 0.0);
            for (j, vj) in (k..n).zip(&v[k..n]) {
                s += q.at(i, j) * vj;
            }
            let s2 = s * 2.0;
            for (j, vj) in (k..n).zip(&v[k..n]) {
                *q.at_mut(i, j) -= s2 * vj.conj();
            }
        }
    }
    for k in 0..n {
        let d = r.at(k, k);
        let m = d.norm();
        let phase = if m == 0.0 {
            Complex64::new(1.0, 0.0)
        } else {
            d / m
        };
        for i in 0..n {
            *q.at_mut(i, k) *= phase;
        }
    }
    Ok(q)
}
