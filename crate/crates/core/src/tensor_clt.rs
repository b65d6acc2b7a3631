//! Exact finite-`n` moments of the normalized tensor sum
//! `S_n = (1/(δ√n)) Σ_{k ≤ n} (a_k ⊗ b_k − λ² 1⊗1)`
//! where `a_1, a_2, ...` are free copies of `a` and likewise for `b`.
//!
//! Both routes expand the `m`-th moment over the kernel `π ∈ P(m)` of the
//! index word and the choice of `A_k B_k` or `−λ²` at each position:
//!
//! * the tensor route factorizes each term as a product of two coloured free
//!   moments, one per leg;
//! * the bi-free route sums vertically split bi-free cumulants over
//!   `BNC^a_vs(m)`.
//!
//! A kernel with `|π| = k` is realized by `n(n-1)⋯(n-k+1)` index words, so a
//! moment is a polynomial in `n` over `n^{m/2}`. [`MomentProfile`] keeps the
//! coefficient per block count so any `n` is cheap once it is built.

use std::collections::HashMap;

use num_bigint::BigInt;
use num_integer::binomial;
use num_traits::{One, Signed, Zero};
use rayon::prelude::*;

use crate::bichromatic::enumerate_bnc_vs_alt;
use crate::cumulants::{free_cumulants_from_moments, kappa_bnc_vs, ColouredMoments, MomentSeq, OperandSpec, Term};
use crate::error::{arg_err, Error, Result};
use crate::limit_law::mu_q_moments_recurrence;
use crate::partitions::{enumerate_partitions, is_refinement, SetPartition};
use crate::rational::{catalan, falling_factorial, int, pow, ratio, to_f64, Rational};

/// Default bound on `m`; the engines visit `Bell(m)` kernels.
pub const DEFAULT_MAX_ORDER: usize = 8;

/// The legs `a` and `b`, sharing mean `λ` and variance `σ²`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TensorCltInput {
    ms_a: MomentSeq,
    ms_b: MomentSeq,
    lambda: Rational,
    sigma2: Rational,
    delta2: Rational,
    q: Rational,
}

impl TensorCltInput {
    pub fn new(ms_a: MomentSeq, ms_b: MomentSeq) -> Result<Self> {
        if ms_a.order() < 2 || ms_b.order() < 2 {
            return Err(Error::InsufficientData { needed: 2, available: ms_a.order().min(ms_b.order()) });
        }
        let lambda = ms_a.moment(1)?;
        if ms_b.moment(1)? != lambda {
            return arg_err("a and b must share the same mean");
        }
        let l2 = &lambda * &lambda;
        let sigma2 = ms_a.moment(2)? - &l2;
        if ms_b.moment(2)? - &l2 != sigma2 {
            return arg_err("a and b must share the same variance");
        }
        if !sigma2.is_positive() {
            return arg_err(format!("variance must be positive, got {sigma2}"));
        }
        let spread = &sigma2 + &l2 * int(2);
        let delta2 = &sigma2 * &spread;
        let q = l2 * int(2) / spread;
        Ok(TensorCltInput { ms_a, ms_b, lambda, sigma2, delta2, q })
    }

    /// Both legs distributed as `ms`.
    pub fn symmetric(ms: MomentSeq) -> Result<Self> {
        Self::new(ms.clone(), ms)
    }

    pub fn ms_a(&self) -> &MomentSeq {
        &self.ms_a
    }

    pub fn ms_b(&self) -> &MomentSeq {
        &self.ms_b
    }

    pub fn lambda(&self) -> &Rational {
        &self.lambda
    }

    pub fn sigma2(&self) -> &Rational {
        &self.sigma2
    }

    /// `δ² = σ²(σ² + 2λ²)`, the variance of `a ⊗ b`.
    pub fn delta2(&self) -> &Rational {
        &self.delta2
    }

    /// `q = 2λ²/(σ² + 2λ²)`.
    pub fn q(&self) -> &Rational {
        &self.q
    }

    /// Highest moment order both legs support.
    pub fn order(&self) -> usize {
        self.ms_a.order().min(self.ms_b.order())
    }
}

/// Moments of `λ + σ s` with `s` standard semicircular.
pub fn shifted_semicircle(lambda: &Rational, sigma2: &Rational, k: usize) -> MomentSeq {
    MomentSeq::new(
        (1..=k)
            .map(|order| {
                (0..=order / 2).fold(Rational::zero(), |acc, j| {
                    acc + Rational::from_integer(binomial(BigInt::from(order), BigInt::from(2 * j)))
                        * pow(lambda, order - 2 * j)
                        * pow(sigma2, j)
                        * int(catalan(j) as i64)
                })
            })
            .collect(),
    )
}

/// Moments of the law putting mass `1 − p` at `x` and `p` at `y`.
pub fn two_point(x: &Rational, y: &Rational, p: &Rational, k: usize) -> MomentSeq {
    let stay = Rational::one() - p;
    MomentSeq::new((1..=k).map(|order| &stay * pow(x, order) + p * pow(y, order)).collect())
}

/// Three inputs with different shapes:
/// centred semicircle legs (`λ = 0`, `σ² = 1`);
/// Bernoulli legs on `{−1/2, 3/2}` (`λ = 1/2`, `σ² = 1`);
/// a shifted semicircle against a skewed two-point law (`λ = 1`, `σ² = 1`).
pub fn reference_inputs(k: usize) -> Vec<(&'static str, TensorCltInput)> {
    let one = int(1);
    let centred = shifted_semicircle(&int(0), &one, k);
    let bernoulli = two_point(&ratio(-1, 2), &ratio(3, 2), &ratio(1, 2), k);
    let shifted = shifted_semicircle(&one, &one, k);
    let skewed = two_point(&ratio(1, 2), &int(3), &ratio(1, 5), k);
    vec![
        ("centred-semicircle", TensorCltInput::symmetric(centred).expect("valid reference input")),
        ("shifted-bernoulli", TensorCltInput::symmetric(bernoulli).expect("valid reference input")),
        ("asymmetric", TensorCltInput::new(shifted, skewed).expect("valid reference input")),
    ]
}

/// `(φ⊗φ)(S_n^m)` held exactly as `raw / (δ² n)^{m/2}`, where
/// `raw = Σ_π (φ⊗φ)(π) · n(n-1)⋯(n-|π|+1)`. For odd `m` the value is a
/// rational multiple of `1/√(δ² n)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SnMoment {
    m: usize,
    n: u64,
    raw: Rational,
    delta2: Rational,
}

impl SnMoment {
    pub fn m(&self) -> usize {
        self.m
    }

    pub fn n(&self) -> u64 {
        self.n
    }

    pub fn raw(&self) -> &Rational {
        &self.raw
    }

    /// `raw / (δ² n)^{⌊m/2⌋}`.
    pub fn coefficient(&self) -> Rational {
        &self.raw / pow(&self.scale(), self.m / 2)
    }

    /// `δ² n` for odd `m`, `1` for even `m`; the value is `coefficient / √radicand`.
    pub fn radicand(&self) -> Rational {
        if self.m % 2 == 1 {
            self.scale()
        } else {
            Rational::one()
        }
    }

    /// The exact value when it is rational: always for even `m`, and for odd
    /// `m` only when it vanishes.
    pub fn rational(&self) -> Option<Rational> {
        if self.raw.is_zero() {
            Some(Rational::zero())
        } else if self.m.is_multiple_of(2) {
            Some(self.coefficient())
        } else {
            None
        }
    }

    pub fn to_f64(&self) -> f64 {
        to_f64(&self.coefficient()) / to_f64(&self.radicand()).sqrt()
    }

    fn scale(&self) -> Rational {
        &self.delta2 * Rational::from_integer(self.n.into())
    }
}

/// `c_k = Σ_{π ∈ P(m), |π| = k} (φ⊗φ)(π)` for `k = 0..=m`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MomentProfile {
    m: usize,
    delta2: Rational,
    by_blocks: Vec<Rational>,
}

impl MomentProfile {
    pub fn m(&self) -> usize {
        self.m
    }

    /// Indexed by block count.
    pub fn coefficients(&self) -> &[Rational] {
        &self.by_blocks
    }

    /// `Σ_k c_k n(n-1)⋯(n-k+1)`.
    pub fn raw(&self, n: u64) -> Rational {
        self.by_blocks
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(k, c)| c * Rational::from_integer(falling_factorial(n, k)))
            .sum()
    }

    pub fn at(&self, n: u64) -> Result<SnMoment> {
        if n == 0 {
            return arg_err("n must be at least 1");
        }
        Ok(SnMoment { m: self.m, n, raw: self.raw(n), delta2: self.delta2.clone() })
    }

    fn from_terms(m: usize, input: &TensorCltInput, terms: Vec<(usize, Rational)>) -> Self {
        let mut by_blocks = vec![Rational::zero(); m + 1];
        for (k, v) in terms {
            by_blocks[k] += v;
        }
        MomentProfile { m, delta2: input.delta2.clone(), by_blocks }
    }
}

fn check_order(m: usize, input: &TensorCltInput) -> Result<()> {
    if m == 0 {
        return arg_err("moment order m must be at least 1");
    }
    if m > input.order() {
        return Err(Error::InsufficientData { needed: m, available: input.order() });
    }
    Ok(())
}

fn tensor_profile(m: usize, input: &TensorCltInput, prune_singletons: bool) -> Result<MomentProfile> {
    check_order(m, input)?;
    let fa = ColouredMoments::new(&input.ms_a.truncate(m))?;
    let fb = ColouredMoments::new(&input.ms_b.truncate(m))?;
    let neg_l2 = -(&input.lambda * &input.lambda);
    let shift_powers: Vec<Rational> = (0..=m).map(|e| pow(&neg_l2, e)).collect();
    let kernels: Vec<SetPartition> = enumerate_partitions(m).collect();
    let terms = kernels
        .par_iter()
        .map(|pi| {
            let mut total = Rational::zero();
            if prune_singletons && pi.has_singleton() {
                return Ok((pi.block_count(), total));
            }
            let labels = pi.labels();
            for mask in 0u32..(1 << m) {
                let colours: Vec<usize> = (0..m).filter(|&i| mask >> i & 1 == 1).map(|i| labels[i]).collect();
                let a = fa.moment(&colours)?;
                if a.is_zero() {
                    continue;
                }
                total += &shift_powers[m - colours.len()] * a * fb.moment(&colours)?;
            }
            Ok((pi.block_count(), total))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(MomentProfile::from_terms(m, input, terms))
}

/// The partition of `[m]` generated by the blocks of a left and a right
/// partition: the coarsest colouring every block of `τ` respects.
fn closure(left: &SetPartition, right: &SetPartition) -> SetPartition {
    let m = left.n();
    let mut label: Vec<usize> = (0..m).collect();
    for block in left.blocks().iter().chain(right.blocks()) {
        let target = block.iter().map(|&k| label[k - 1]).min().expect("blocks are non-empty");
        let merged: Vec<usize> = block.iter().map(|&k| label[k - 1]).collect();
        for l in label.iter_mut() {
            if merged.contains(l) {
                *l = target;
            }
        }
    }
    SetPartition::from_labels(&label)
}

fn singleton_mask(p: &SetPartition) -> Vec<bool> {
    let mut mask = vec![false; p.n()];
    for b in p.blocks() {
        if b.len() == 1 {
            mask[b[0] - 1] = true;
        }
    }
    mask
}

fn bifree_profile(m: usize, input: &TensorCltInput, full_sign_sum: bool) -> Result<MomentProfile> {
    check_order(m, input)?;
    let ka = free_cumulants_from_moments(&input.ms_a.truncate(m))?;
    let kb = free_cumulants_from_moments(&input.ms_b.truncate(m))?;
    let taus = enumerate_bnc_vs_alt(m);
    let weighted = taus
        .par_iter()
        .map(|tau| {
            let (left, right) = tau.alternating_sides()?;
            let colouring = closure(&left, &right);
            let colours = colouring.labels();
            // a scalar inside a block of size ≥ 2 has zero cumulant, so only
            // positions that are singletons on both sides can take the shift
            let free: Vec<usize> = if full_sign_sum {
                (0..m).collect()
            } else {
                let (ls, rs) = (singleton_mask(&left), singleton_mask(&right));
                (0..m).filter(|&k| ls[k] && rs[k]).collect()
            };
            let mut weight = Rational::zero();
            let mut terms = vec![Term::Product; m];
            for mask in 0u32..(1 << free.len()) {
                for (bit, &k) in free.iter().enumerate() {
                    terms[k] = if mask >> bit & 1 == 1 { Term::Shift } else { Term::Product };
                }
                let ops = OperandSpec::alternating(&colours, &terms, &input.lambda)?;
                weight += kappa_bnc_vs(tau, &ops, &ka, &kb)?;
            }
            Ok((colouring, weight))
        })
        .collect::<Result<Vec<_>>>()?;
    let mut by_colouring: HashMap<SetPartition, Rational> = HashMap::new();
    for (c, w) in weighted {
        if !w.is_zero() {
            *by_colouring.entry(c).or_insert_with(Rational::zero) += w;
        }
    }
    let groups: Vec<(SetPartition, Rational)> = by_colouring.into_iter().filter(|(_, w)| !w.is_zero()).collect();
    let kernels: Vec<SetPartition> = enumerate_partitions(m).collect();
    let terms = kernels
        .par_iter()
        .map(|pi| {
            let mut total = Rational::zero();
            for (c, w) in &groups {
                if is_refinement(c, pi)? {
                    total += w;
                }
            }
            Ok((pi.block_count(), total))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(MomentProfile::from_terms(m, input, terms))
}

/// Block-count profile of the `m`-th moment via tensor factorization.
pub fn moment_profile(m: usize, input: &TensorCltInput) -> Result<MomentProfile> {
    tensor_profile(m, input, false)
}

/// Block-count profile of the `m`-th moment via vertically split bi-free cumulants.
pub fn moment_profile_bifree(m: usize, input: &TensorCltInput) -> Result<MomentProfile> {
    bifree_profile(m, input, false)
}

/// `(φ⊗φ)(S_n^m)` by tensor factorization into coloured free moments.
pub fn exact_moment_sn(m: usize, n: u64, input: &TensorCltInput) -> Result<SnMoment> {
    if n == 0 {
        return arg_err("n must be at least 1");
    }
    moment_profile(m, input)?.at(n)
}

/// `(φ⊗φ)(S_n^m)` through bi-free cumulants; agrees exactly with [`exact_moment_sn`].
pub fn exact_moment_sn_bifree(m: usize, n: u64, input: &TensorCltInput) -> Result<SnMoment> {
    if n == 0 {
        return arg_err("n must be at least 1");
    }
    moment_profile_bifree(m, input)?.at(n)
}

/// Limit of `(φ⊗φ)(S_n^m)` for centred legs: zero for odd `m`, otherwise
/// `|NC₂(m)| var_a^{m/2} var_b^{m/2}`.
pub fn centred_limit_moment(m: usize, var_a: &Rational, var_b: &Rational) -> Rational {
    if m % 2 == 1 {
        return Rational::zero();
    }
    int(catalan(m / 2) as i64) * pow(var_a, m / 2) * pow(var_b, m / 2)
}

#[derive(Debug, Clone, PartialEq)]
pub struct ConvergenceRow {
    pub n: u64,
    pub moment: SnMoment,
    /// `M_m` of `μ_q`.
    pub limit: Rational,
    pub gap: f64,
}

/// The exact moment at each `n` beside the `μ_q` moment it converges to.
pub fn convergence_table(m: usize, n_values: &[u64], input: &TensorCltInput) -> Result<Vec<ConvergenceRow>> {
    let profile = moment_profile(m, input)?;
    let limit = mu_q_moments_recurrence(&input.q, m)?.moment(m)?;
    n_values
        .iter()
        .map(|&n| {
            let moment = profile.at(n)?;
            let gap = match moment.rational() {
                Some(v) => to_f64(&(v - &limit).abs()),
                None => (moment.to_f64() - to_f64(&limit)).abs(),
            };
            Ok(ConvergenceRow { n, moment, limit: limit.clone(), gap })
        })
        .collect()
}
