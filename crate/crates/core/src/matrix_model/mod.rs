//! Monte Carlo realization of the tensor sum with random Hermitian matrices:
//! `Δ_{d,n} = d^{-1/2} Σ_j (W_j ⊗ conj(W_{j+d}) − 𝔼tr(W_j) 𝔼tr(W_{j+d}) I)`
//! with independent GUE samples `W_1, ..., W_{2d}` shifted by `λ I`.
//!
//! Sampling is reproducible: trial `t`, matrix `j` draws from ChaCha8 stream
//! `(t << 16) | j` of the configured seed, so results do not depend on how
//! trials are scheduled across threads.

mod complex;

pub use complex::ComplexMatrix;

use nalgebra::DMatrix;
use num_complex::Complex64;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Normal};
use rayon::prelude::*;

use crate::error::{arg_err, Error, Result};
use crate::rational::{from_f64, to_f64};
use crate::tensor_clt::{moment_profile, shifted_semicircle, TensorCltInput, DEFAULT_MAX_ORDER};

/// Largest matrix dimension `n` accepted by [`empirical_moments`].
pub const MAX_SIM_DIMENSION: usize = 512;
/// Largest moment order accepted by [`empirical_moments`].
pub const MAX_SIM_MOMENT: usize = 12;
/// Up to this `n²`, `Δ` is formed densely and powered directly.
pub const DENSE_MAX_DIM: usize = 256;
/// Largest `n²` for which [`delta_spectrum`] diagonalizes `Δ`.
pub const SPECTRUM_MAX_DIM: usize = 1024;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Ensemble {
    Gue,
}

/// `W = G + λ I` with `G` from the GUE of entry variance `σ²/n`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EnsembleSpec {
    pub kind: Ensemble,
    pub n: usize,
    pub sigma: f64,
    pub lambda: f64,
}

impl EnsembleSpec {
    pub fn gue(n: usize, sigma: f64, lambda: f64) -> Self {
        EnsembleSpec { kind: Ensemble::Gue, n, sigma, lambda }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SimConfig {
    pub d: usize,
    pub n: usize,
    pub trials: usize,
    pub seed: u64,
    pub max_moment: usize,
    /// Center with each sample's own `tr(W_j)` instead of `λ`. This biases
    /// the estimate: the centering then depends on the sample.
    pub empirical_means: bool,
}

/// Generator for matrix `matrix` of trial `trial`.
pub fn stream_rng(seed: u64, trial: u64, matrix: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream((trial << 16) | matrix);
    rng
}

/// Hermitian by construction: each off-diagonal entry is drawn once and its
/// conjugate mirrored.
pub fn sample_hermitian(spec: &EnsembleSpec, rng: &mut ChaCha8Rng) -> Result<ComplexMatrix> {
    let n = spec.n;
    if n == 0 {
        return arg_err("matrix dimension must be positive");
    }
    if !(spec.sigma.is_finite() && spec.sigma >= 0.0 && spec.lambda.is_finite()) {
        return arg_err(format!("invalid ensemble parameters sigma = {}, lambda = {}", spec.sigma, spec.lambda));
    }
    let var = spec.sigma * spec.sigma / n as f64;
    let diag = Normal::new(0.0, var.sqrt()).map_err(|e| Error::Argument(e.to_string()))?;
    let off = Normal::new(0.0, (var / 2.0).sqrt()).map_err(|e| Error::Argument(e.to_string()))?;
    let mut w = ComplexMatrix::zeros(n);
    for i in 0..n {
        w.set(i, i, Complex64::new(diag.sample(rng) + spec.lambda, 0.0));
        for j in i + 1..n {
            let z = Complex64::new(off.sample(rng), off.sample(rng));
            w.set(i, j, z);
            w.set(j, i, z.conj());
        }
    }
    Ok(w)
}

fn check_pairing(ws: &[ComplexMatrix], means: &[f64]) -> Result<(usize, usize)> {
    if ws.is_empty() || ws.len() % 2 == 1 {
        return arg_err(format!("need 2d matrices, got {}", ws.len()));
    }
    if means.len() != ws.len() {
        return arg_err(format!("{} means for {} matrices", means.len(), ws.len()));
    }
    let n = ws[0].dim();
    if ws.iter().any(|w| w.dim() != n) {
        return arg_err("all matrices must share one dimension");
    }
    Ok((ws.len() / 2, n))
}

/// `Δ = d^{-1/2} Σ_j (W_j ⊗ conj(W_{j+d}) − means_j means_{j+d} I)`.
pub fn build_delta(ws: &[ComplexMatrix], means: &[f64]) -> Result<ComplexMatrix> {
    let (d, n) = check_pairing(ws, means)?;
    let mut delta = ComplexMatrix::zeros(n * n);
    for j in 0..d {
        let term = ws[j].kron(&ws[j + d].conj()).shift(-means[j] * means[j + d]);
        delta = delta.add(&term)?;
    }
    Ok(delta.scale(Complex64::new(1.0 / (d as f64).sqrt(), 0.0)))
}

/// `K_Φ = Σ_j K_j ⊗ conj(K_j)`.
pub fn build_kraus(ks: &[ComplexMatrix]) -> Result<ComplexMatrix> {
    let Some(first) = ks.first() else {
        return arg_err("at least one Kraus operator required");
    };
    let n = first.dim();
    let mut out = ComplexMatrix::zeros(n * n);
    for k in ks {
        if k.dim() != n {
            return arg_err("Kraus operators must share one dimension");
        }
        out = out.add(&k.kron(&k.conj()))?;
    }
    Ok(out)
}

/// One summand `weight · (left ⊗ right)` of `√d Δ`; `None` stands for `I`.
struct KronTerm<'a> {
    left: Option<&'a ComplexMatrix>,
    right: Option<ComplexMatrix>,
    weight: f64,
}

fn extend(prefix: &Option<ComplexMatrix>, factor: Option<&ComplexMatrix>) -> Result<Option<ComplexMatrix>> {
    Ok(match (prefix, factor) {
        (p, None) => p.clone(),
        (None, Some(f)) => Some(f.clone()),
        (Some(p), Some(f)) => Some(p.matmul(f)?),
    })
}

fn trace_of(prefix: &Option<ComplexMatrix>, factor: Option<&ComplexMatrix>) -> Result<Complex64> {
    Ok(match (prefix, factor) {
        (None, None) => Complex64::new(1.0, 0.0),
        (Some(p), None) | (None, Some(p)) => p.normalized_trace(),
        (Some(p), Some(f)) => p.normalized_trace_of_product(f)?,
    })
}

/// Accumulates `Σ_words Π weights · tr(Π left) · tr(Π right)` into
/// `out[k-1]` for every word length `k ≤ out.len()`.
fn walk_words(
    terms: &[KronTerm<'_>],
    left: &Option<ComplexMatrix>,
    right: &Option<ComplexMatrix>,
    weight: f64,
    depth: usize,
    out: &mut [Complex64],
) -> Result<()> {
    for t in terms {
        let w = weight * t.weight;
        out[depth] += w * trace_of(left, t.left)? * trace_of(right, t.right.as_ref())?;
        if depth + 1 < out.len() {
            let next_left = extend(left, t.left)?;
            let next_right = extend(right, t.right.as_ref())?;
            walk_words(terms, &next_left, &next_right, w, depth + 1, out)?;
        }
    }
    Ok(())
}

/// `tr(Δ^m)` for `m = 1..=max_moment` without forming the `n² × n²` matrix,
/// using `tr(A ⊗ B) = tr(A) tr(B)` on every word in the expansion of `Δ^m`.
pub fn delta_moments_factored(ws: &[ComplexMatrix], means: &[f64], max_moment: usize) -> Result<Vec<f64>> {
    let (d, _) = check_pairing(ws, means)?;
    let mut terms: Vec<KronTerm<'_>> =
        (0..d).map(|j| KronTerm { left: Some(&ws[j]), right: Some(ws[j + d].conj()), weight: 1.0 }).collect();
    let shift: f64 = (0..d).map(|j| means[j] * means[j + d]).sum();
    if shift != 0.0 {
        terms.push(KronTerm { left: None, right: None, weight: -shift });
    }
    let mut out = vec![Complex64::new(0.0, 0.0); max_moment];
    if max_moment > 0 {
        walk_words(&terms, &None, &None, 1.0, 0, &mut out)?;
    }
    let scale = 1.0 / (d as f64).sqrt();
    Ok(out.iter().enumerate().map(|(k, v)| v.re * scale.powi(k as i32 + 1)).collect())
}

/// `tr(Δ^m)` for `m = 1..=max_moment` by dense powering.
pub fn delta_moments_dense(delta: &ComplexMatrix, max_moment: usize) -> Result<Vec<f64>> {
    let mut out = Vec::with_capacity(max_moment);
    let mut power = delta.clone();
    for m in 1..=max_moment {
        out.push(power.normalized_trace().re);
        if m < max_moment {
            power = power.matmul(delta)?;
        }
    }
    Ok(out)
}

#[derive(Debug, Clone, PartialEq)]
pub struct MomentEstimate {
    pub m: usize,
    pub mean: f64,
    /// `None` when a single trial leaves the spread undefined.
    pub std_error: Option<f64>,
}

fn validate(config: &SimConfig, spec: &EnsembleSpec) -> Result<()> {
    if config.n != spec.n {
        return arg_err(format!("config n = {} but ensemble n = {}", config.n, spec.n));
    }
    if config.d == 0 || config.trials == 0 || config.n == 0 || config.max_moment == 0 {
        return arg_err("d, n, trials and max_moment must all be positive");
    }
    if config.d >= 1 << 15 {
        return arg_err("d is too large for the per-matrix stream layout");
    }
    if config.n > MAX_SIM_DIMENSION || config.max_moment > MAX_SIM_MOMENT {
        return Err(Error::Resource(format!(
            "simulation limited to n <= {MAX_SIM_DIMENSION} and max_moment <= {MAX_SIM_MOMENT}"
        )));
    }
    Ok(())
}

/// The `2d` matrices and centering means of one trial.
pub fn sample_trial(config: &SimConfig, spec: &EnsembleSpec, trial: u64) -> Result<(Vec<ComplexMatrix>, Vec<f64>)> {
    validate(config, spec)?;
    let ws = (0..2 * config.d as u64)
        .map(|j| sample_hermitian(spec, &mut stream_rng(config.seed, trial, j)))
        .collect::<Result<Vec<_>>>()?;
    let means = if config.empirical_means {
        ws.iter().map(|w| w.normalized_trace().re).collect()
    } else {
        vec![spec.lambda; ws.len()]
    };
    Ok((ws, means))
}

/// Sample mean and standard error of `tr(Δ^m)` over independent trials.
pub fn empirical_moments(config: &SimConfig, spec: &EnsembleSpec) -> Result<Vec<MomentEstimate>> {
    validate(config, spec)?;
    let per_trial = (0..config.trials as u64)
        .into_par_iter()
        .map(|t| {
            let (ws, means) = sample_trial(config, spec, t)?;
            if config.n * config.n <= DENSE_MAX_DIM {
                delta_moments_dense(&build_delta(&ws, &means)?, config.max_moment)
            } else {
                delta_moments_factored(&ws, &means, config.max_moment)
            }
        })
        .collect::<Result<Vec<_>>>()?;
    let trials = per_trial.len() as f64;
    Ok((0..config.max_moment)
        .map(|k| {
            let mean = per_trial.iter().map(|v| v[k]).sum::<f64>() / trials;
            let std_error = (per_trial.len() > 1).then(|| {
                let ss: f64 = per_trial.iter().map(|v| (v[k] - mean).powi(2)).sum();
                (ss / (trials - 1.0) / trials).sqrt()
            });
            MomentEstimate { m: k + 1, mean, std_error }
        })
        .collect())
}

/// Relative gap between `tr(X_{j_k} ⋯ X_{j_1})` and
/// `tr(conj(X_{j_1}) ⋯ conj(X_{j_k}))`, zero in exact arithmetic for
/// Hermitian `X`.
pub fn transpose_trace_check(samples: &[ComplexMatrix], word: &[usize]) -> Result<f64> {
    if word.is_empty() {
        return Ok(0.0);
    }
    if let Some(&bad) = word.iter().find(|&&j| j >= samples.len()) {
        return arg_err(format!("word index {bad} out of range for {} samples", samples.len()));
    }
    let mut lhs = samples[word[word.len() - 1]].clone();
    for &j in word.iter().rev().skip(1) {
        lhs = lhs.matmul(&samples[j])?;
    }
    let mut rhs = samples[word[0]].conj();
    for &j in &word[1..] {
        rhs = rhs.matmul(&samples[j].conj())?;
    }
    let (l, r) = (lhs.normalized_trace(), rhs.normalized_trace());
    let scale = l.norm().max(r.norm());
    Ok(if scale == 0.0 { 0.0 } else { (l - r).norm() / scale })
}

/// Large-`n` value of `𝔼 tr(Δ^m)` for `m = 1..=max_moment`: the legs are
/// free shifted semicircles, so this is `δ^m (φ⊗φ)(S_d^m)`.
pub fn predicted_moments(d: usize, lambda: f64, sigma: f64, max_moment: usize) -> Result<Vec<f64>> {
    if d == 0 {
        return arg_err("d must be positive");
    }
    if max_moment > DEFAULT_MAX_ORDER {
        return Err(Error::Resource(format!("exact predictions limited to m <= {DEFAULT_MAX_ORDER}")));
    }
    let lambda = from_f64(lambda)?;
    let sigma = from_f64(sigma)?;
    let input = TensorCltInput::symmetric(shifted_semicircle(&lambda, &(&sigma * &sigma), max_moment.max(2)))?;
    (1..=max_moment)
        .map(|m| Ok(to_f64(&moment_profile(m, &input)?.raw(d as u64)) / (d as f64).powf(m as f64 / 2.0)))
        .collect()
}

#[derive(Debug, Clone, PartialEq)]
pub struct ZScore {
    pub m: usize,
    pub mean: f64,
    pub std_error: Option<f64>,
    pub exact: f64,
    /// `(mean − exact) / std_error`; `None` without a standard error.
    pub z: Option<f64>,
}

pub fn compare_to_prediction(est: &[MomentEstimate], exact: &[f64]) -> Result<Vec<ZScore>> {
    if est.len() != exact.len() {
        return arg_err(format!("{} estimates but {} exact values", est.len(), exact.len()));
    }
    Ok(est
        .iter()
        .zip(exact)
        .map(|(e, &x)| ZScore {
            m: e.m,
            mean: e.mean,
            std_error: e.std_error,
            exact: x,
            z: e.std_error.map(|se| if e.mean == x { 0.0 } else { (e.mean - x) / se }),
        })
        .collect())
}

/// Every z-score defined and within `threshold`.
pub fn all_within(scores: &[ZScore], threshold: f64) -> bool {
    scores.iter().all(|s| s.z.is_some_and(|z| z.abs() <= threshold))
}

/// Eigenvalues of `Δ` for trial 0, ascending.
pub fn delta_spectrum(config: &SimConfig, spec: &EnsembleSpec) -> Result<Vec<f64>> {
    validate(config, spec)?;
    let dim = config.n * config.n;
    if dim > SPECTRUM_MAX_DIM {
        return Err(Error::Resource(format!("spectrum needs n^2 <= {SPECTRUM_MAX_DIM}, got {dim}")));
    }
    let (ws, means) = sample_trial(config, spec, 0)?;
    let delta = build_delta(&ws, &means)?;
    let dense = DMatrix::from_fn(dim, dim, |i, j| delta.get(i, j));
    let mut eig: Vec<f64> = dense.symmetric_eigenvalues().iter().copied().collect();
    eig.sort_by(f64::total_cmp);
    Ok(eig)
}
