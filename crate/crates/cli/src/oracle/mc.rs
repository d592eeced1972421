//! Threaded Monte-Carlo moment estimators.
//!
//! Sampling is split into fixed 8192-sample chunks; chunk `c` runs on its
//! own SplitMix64 stream seeded from (seed, c), and per-chunk (sum, sum of
//! squares) accumulators are merged in chunk order. The estimate is
//! therefore bit-identical for any thread count, and a batch of
//! statistics over one stream matches the single-statistic runs exactly
//! (the RNG is consumed by sampling only, never by evaluation).

use std::sync::atomic::{AtomicU64, Ordering};
use std::sync::Mutex;

use num_traits::Zero;
use orbmeas_core::measures::rational_to_f64;
use orbmeas_core::{MultiIndex, Point, Polynomial, Rational};

use super::cmatrix::haar_unitary;
use super::eigen::hermitian_eigenvalues;
use super::rng::{chunk_seed, SplitMix64};
use super::OracleError;

pub const CHUNK_SIZE: u64 = 8192;

#[derive(Debug, Clone, PartialEq)]
pub struct McEstimate {
    pub mean: f64,
    pub stderr: f64,
    pub samples: u64,
    pub seed: u64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ComparisonReport {
    pub exact: f64,
    pub estimate: McEstimate,
    pub zscore: f64,
    pub pass: bool,
    pub threshold: f64,
}

/// z-scores an estimate against the exact value. A zero standard error
/// (constant statistic) falls back to a direct comparison at 1e−9.
pub fn compare_estimate(exact: &Rational, est: &McEstimate, threshold: f64) -> ComparisonReport {
    let exact_f = rational_to_f64(exact);
    if est.stderr > 0.0 {
        let zscore = (exact_f - est.mean) / est.stderr;
        ComparisonReport {
            exact: exact_f,
            estimate: est.clone(),
            zscore,
            pass: zscore.abs() <= threshold,
            threshold,
        }
    } else {
        let pass = (exact_f - est.mean).abs() < 1e-9;
        ComparisonReport {
            exact: exact_f,
            estimate: est.clone(),
            zscore: if pass { 0.0 } else { f64::INFINITY },
            pass,
            threshold,
        }
    }
}

/// Average of each `f` over diagonals of U diag(a) U*, U Haar on U(n).
pub fn mc_projection_moments(
    n: usize,
    a: &Point,
    fs: &[Polynomial],
    samples: u64,
    seed: u64,
) -> Result<Vec<McEstimate>, OracleError> {
    validate_point(n, a)?;
    let stats = compile_all(n, fs)?;
    if samples < 2 {
        return Err(OracleError::TooFewSamples);
    }
    let ad = point_to_f64(a);
    let totals = run_chunked(samples, seed, stats.len(), |rng, out| {
        let u = haar_unitary(n, rng).expect("dimension validated");
        let x = u.projected_diagonal(&ad);
        for (slot, stat) in out.iter_mut().zip(&stats) {
            *slot = stat.eval(&x);
        }
    });
    Ok(finalize(&totals, samples, seed))
}

pub fn mc_projection_moment(
    n: usize,
    a: &Point,
    f: &Polynomial,
    samples: u64,
    seed: u64,
) -> Result<McEstimate, OracleError> {
    Ok(mc_projection_moments(n, a, std::slice::from_ref(f), samples, seed)?
        .pop()
        .expect("one statistic in, one estimate out"))
}

/// Average of each symmetric `g` over sorted spectra of
/// U diag(a) U* + V diag(b) V* with U, V independent Haar draws.
pub fn mc_convolution_moments(
    n: usize,
    a: &Point,
    b: &Point,
    gs: &[Polynomial],
    samples: u64,
    seed: u64,
) -> Result<Vec<McEstimate>, OracleError> {
    validate_point(n, a)?;
    validate_point(n, b)?;
    let stats = compile_all(n, gs)?;
    for g in gs {
        if !is_symmetric_on_trace_zero(g) {
            return Err(OracleError::NotSymmetric);
        }
    }
    if samples < 2 {
        return Err(OracleError::TooFewSamples);
    }
    let ad = point_to_f64(a);
    let bd = point_to_f64(b);
    let totals = run_chunked(samples, seed, stats.len(), |rng, out| {
        let u = haar_unitary(n, rng).expect("dimension validated");
        let v = haar_unitary(n, rng).expect("dimension validated");
        let mut m = u.conjugate_diag(&ad).add(&v.conjugate_diag(&bd));
        m.hermitize();
        let mut eig = hermitian_eigenvalues(&m).expect("Hermitian by construction");
        eig.sort_by(f64::total_cmp);
        for (slot, stat) in out.iter_mut().zip(&stats) {
            *slot = stat.eval(&eig);
        }
    });
    Ok(finalize(&totals, samples, seed))
}

pub fn mc_convolution_moment(
    n: usize,
    a: &Point,
    b: &Point,
    g: &Polynomial,
    samples: u64,
    seed: u64,
) -> Result<McEstimate, OracleError> {
    Ok(
        mc_convolution_moments(n, a, b, std::slice::from_ref(g), samples, seed)?
            .pop()
            .expect("one statistic in, one estimate out"),
    )
}

fn validate_point(n: usize, p: &Point) -> Result<(), OracleError> {
    if !(2..=8).contains(&n) {
        return Err(OracleError::UnsupportedSize { n });
    }
    if p.dim() != n {
        return Err(OracleError::DimensionMismatch {
            expected: n,
            found: p.dim(),
        });
    }
    if !p.coordinate_sum().is_zero() {
        return Err(OracleError::NotTraceZero);
    }
    Ok(())
}

fn point_to_f64(p: &Point) -> Vec<f64> {
    p.coords().iter().map(rational_to_f64).collect()
}

/// Whether `f` is exchange-symmetric as a function on the trace-zero
/// hyperplane, where every sampled spectrum lives. Sorting eigenvalues
/// picks one chamber representative per sample, so order-sensitive
/// statistics would be biased; statistics that only look symmetric after
/// using Σx_i = 0 (like x₁² in two variables) are fine and accepted.
fn is_symmetric_on_trace_zero(f: &Polynomial) -> bool {
    let n = f.nvars();
    let base = restrict_trace_zero(f);
    (0..n - 1).all(|i| restrict_trace_zero(&swap_vars(f, i, i + 1)) == base)
}

/// Substitutes x_n = −(x₁ + … + x_{n−1}), eliminating the last variable.
fn restrict_trace_zero(f: &Polynomial) -> Polynomial {
    let m = f.nvars() - 1;
    let mut forms: Vec<Polynomial> = (0..m).map(|i| Polynomial::variable(m, i)).collect();
    let mut neg_sum = Polynomial::zero(m);
    for form in &forms {
        neg_sum = &neg_sum - form;
    }
    forms.push(neg_sum);
    f.compose(&forms).expect("arity matches by construction")
}

fn swap_vars(f: &Polynomial, i: usize, j: usize) -> Polynomial {
    Polynomial::from_terms(
        f.nvars(),
        f.terms().map(|(mi, c)| {
            let mut e = mi.exponents().to_vec();
            e.swap(i, j);
            (MultiIndex::new(e), c.clone())
        }),
    )
}

/// A polynomial lowered to f64 coefficients for fast repeated evaluation.
struct CompiledPoly {
    terms: Vec<(Vec<u32>, f64)>,
}

impl CompiledPoly {
    fn new(f: &Polynomial) -> CompiledPoly {
        CompiledPoly {
            terms: f
                .terms()
                .map(|(mi, c)| (mi.exponents().to_vec(), rational_to_f64(c)))
                .collect(),
        }
    }

    fn eval(&self, x: &[f64]) -> f64 {
        let mut acc = 0.0;
        for (exps, coeff) in &self.terms {
            let mut term = *coeff;
            for (xi, e) in x.iter().zip(exps) {
                if *e > 0 {
                    term *= fpow(*xi, *e);
                }
            }
            acc += term;
        }
        acc
    }
}

/// Power by squaring; avoids `powi` so the multiply sequence is pinned.
fn fpow(x: f64, mut e: u32) -> f64 {
    let mut base = x;
    let mut acc = 1.0;
    while e > 0 {
        if e & 1 == 1 {
            acc *= base;
        }
        base *= base;
        e >>= 1;
    }
    acc
}

fn compile_all(n: usize, fs: &[Polynomial]) -> Result<Vec<CompiledPoly>, OracleError> {
    fs.iter()
        .map(|f| {
            if f.nvars() != n {
                Err(OracleError::PolynomialArity {
                    expected: n,
                    found: f.nvars(),
                })
            } else {
                Ok(CompiledPoly::new(f))
            }
        })
        .collect()
}

/// Per-statistic (sum, sum-of-squares) accumulator for one chunk.
type ChunkSums = Vec<(f64, f64)>;

/// Runs `sample_fn` once per sample across fixed-size chunks, each chunk
/// on its own derived RNG stream, and merges (sum, sum-of-squares) pairs
/// in chunk order. Worker threads race only for chunk indices, never for
/// accumulation order.
fn run_chunked<S>(samples: u64, seed: u64, nstats: usize, sample_fn: S) -> ChunkSums
where
    S: Fn(&mut SplitMix64, &mut [f64]) + Sync,
{
    let nchunks = samples.div_ceil(CHUNK_SIZE);
    let slots: Mutex<Vec<Option<ChunkSums>>> = Mutex::new(vec![None; nchunks as usize]);
    let next = AtomicU64::new(0);
    let workers = std::thread::available_parallelism()
        .map(|p| p.get() as u64)
        .unwrap_or(1)
        .min(nchunks)
        .max(1);
    std::thread::scope(|scope| {
        for _ in 0..workers {
            scope.spawn(|| {
                let mut values = vec![0.0; nstats];
                loop {
                    let c = next.fetch_add(1, Ordering::Relaxed);
                    if c >= nchunks {
                        break;
                    }
                    let count = CHUNK_SIZE.min(samples - c * CHUNK_SIZE);
                    let mut rng = SplitMix64::new(chunk_seed(seed, c));
                    let mut acc = vec![(0.0f64, 0.0f64); nstats];
                    for _ in 0..count {
                        sample_fn(&mut rng, &mut values);
                        for (slot, v) in acc.iter_mut().zip(&values) {
                            slot.0 += *v;
                            slot.1 += *v * *v;
                        }
                    }
                    slots.lock().expect("accumulator lock")[c as usize] = Some(acc);
                }
            });
        }
    });
    let mut total = vec![(0.0f64, 0.0f64); nstats];
    for chunk in slots.into_inner().expect("accumulator lock") {
        let chunk = chunk.expect("every chunk was claimed");
        for (t, c) in total.iter_mut().zip(chunk) {
            t.0 += c.0;
            t.1 += c.1;
        }
    }
    total
}

fn finalize(totals: &[(f64, f64)], samples: u64, seed: u64) -> Vec<McEstimate> {
    let nf = samples as f64;
    totals
        .iter()
        .map(|(sum, sumsq)| {
            let mean = sum / nf;
            let centered = (sumsq - nf * mean * mean).max(0.0);
            let stderr = (centered / (nf - 1.0) / nf).sqrt();
            McEstimate {
                mean,
                stderr,
                samples,
                seed,
            }
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use orbmeas_core::poly::rat_int;

    fn pt(coords: &[i64]) -> Point {
        Point::from_integers(coords)
    }

    fn xpow(nvars: usize, var: usize, e: u32) -> Polynomial {
        Polynomial::variable(nvars, var).pow_checked(e).unwrap()
    }

    #[test]
    fn constant_statistic_has_zero_stderr_and_exact_mean() {
        let est = mc_projection_moment(2, &pt(&[-1, 1]), &Polynomial::one(2), 4096, 11).unwrap();
        assert_eq!(est.mean, 1.0);
        assert_eq!(est.stderr, 0.0);
        let report = compare_estimate(&rat_int(1), &est, 4.0);
        assert!(report.pass);
        let bad = compare_estimate(&rat_int(2), &est, 4.0);
        assert!(!bad.pass);
    }

    #[test]
    fn trace_is_preserved_pathwise() {
        let f = &Polynomial::variable(2, 0) + &Polynomial::variable(2, 1);
        let est = mc_projection_moment(2, &pt(&[-1, 1]), &f, 10_000, 5).unwrap();
        assert!(est.mean.abs() < 1e-10, "mean {}", est.mean);
        let g = &Polynomial::variable(2, 0) + &Polynomial::variable(2, 1);
        let est = mc_convolution_moment(2, &pt(&[2, -2]), &pt(&[1, -1]), &g, 10_000, 5).unwrap();
        assert!(est.mean.abs() < 1e-10, "mean {}", est.mean);
    }

    #[test]
    fn projection_matches_the_archimedes_value() {
        let est = mc_projection_moment(2, &pt(&[-1, 1]), &xpow(2, 1, 2), 100_000, 7).unwrap();
        let z = (est.mean - 1.0 / 3.0) / est.stderr;
        assert!(z.abs() <= 4.0, "mean {} stderr {}", est.mean, est.stderr);
    }

    #[test]
    fn convolution_matches_the_rank1_value() {
        let g = xpow(2, 0, 2);
        let est =
            mc_convolution_moment(2, &pt(&[2, -2]), &pt(&[1, -1]), &g, 100_000, 7).unwrap();
        let z = (est.mean - 5.0) / est.stderr;
        assert!(z.abs() <= 4.0, "mean {} stderr {}", est.mean, est.stderr);
    }

    #[test]
    fn estimates_are_deterministic_and_batch_consistent() {
        let a = pt(&[1, 0, -1]);
        let f1 = xpow(3, 0, 2);
        let f2 = xpow(3, 2, 4);
        let single1 = mc_projection_moment(3, &a, &f1, 20_000, 99).unwrap();
        let single2 = mc_projection_moment(3, &a, &f2, 20_000, 99).unwrap();
        let batch = mc_projection_moments(3, &a, &[f1, f2], 20_000, 99).unwrap();
        assert_eq!(batch[0], single1);
        assert_eq!(batch[1], single2);
        let again = mc_projection_moment(3, &a, &xpow(3, 0, 2), 20_000, 99).unwrap();
        assert_eq!(again, single1);
    }

    #[test]
    fn projected_coordinates_are_exchangeable() {
        let a = pt(&[1, 0, -1]);
        let ests = mc_projection_moments(
            3,
            &a,
            &[Polynomial::variable(3, 0), Polynomial::variable(3, 1)],
            100_000,
            13,
        )
        .unwrap();
        let diff = ests[0].mean - ests[1].mean;
        let se = (ests[0].stderr.powi(2) + ests[1].stderr.powi(2)).sqrt();
        assert!(diff.abs() <= 4.0 * se, "diff {diff}, se {se}");
    }

    #[test]
    fn validation_errors() {
        let f = Polynomial::one(2);
        assert_eq!(
            mc_projection_moment(2, &pt(&[1, 1]), &f, 100, 0),
            Err(OracleError::NotTraceZero)
        );
        assert_eq!(
            mc_projection_moment(2, &pt(&[1, 0, -1]), &f, 100, 0),
            Err(OracleError::DimensionMismatch { expected: 2, found: 3 })
        );
        assert_eq!(
            mc_projection_moment(2, &pt(&[-1, 1]), &f, 1, 0),
            Err(OracleError::TooFewSamples)
        );
        // order-sensitive statistic rejected for spectra
        let asym = Polynomial::variable(2, 0);
        assert_eq!(
            mc_convolution_moment(2, &pt(&[2, -2]), &pt(&[1, -1]), &asym, 100, 0),
            Err(OracleError::NotSymmetric)
        );
    }

    #[test]
    fn fpow_matches_repeated_multiplication() {
        for e in 0..12u32 {
            let mut want = 1.0;
            for _ in 0..e {
                want *= 1.5;
            }
            assert_eq!(fpow(1.5, e), want);
        }
    }
}
