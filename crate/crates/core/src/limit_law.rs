//! The limit law `μ_q` of the tensor central limit theorem, described through
//! its free cumulants. `μ_0` is the standard semicircle.

use num_traits::{One, Zero};

use crate::cumulants::{moments_from_free_cumulants, CumulantSeq, MomentSeq};
use crate::error::{arg_err, Result};
use crate::partitions::count_bicon_pairs;
use crate::rational::{catalan, int, pow, Rational};

/// `q ∈ [0, 1)` together with the highest moment order wanted.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LimitLawParams {
    q: Rational,
    k: usize,
}

impl LimitLawParams {
    pub fn new(q: Rational, k: usize) -> Result<Self> {
        check_q(&q)?;
        Ok(LimitLawParams { q, k })
    }

    pub fn q(&self) -> &Rational {
        &self.q
    }

    pub fn order(&self) -> usize {
        self.k
    }

    pub fn moments(&self) -> Result<MomentSeq> {
        mu_q_moments_recurrence(&self.q, self.k)
    }
}

fn check_q(q: &Rational) -> Result<()> {
    if *q < Rational::zero() || *q >= Rational::one() {
        return arg_err(format!("q must lie in [0, 1), got {q}"));
    }
    Ok(())
}

/// `2 t^{n/2} |P₂^bicon(n)|` for even `n`, zero for odd `n`.
fn bicon_term(t: &Rational, n: usize) -> Result<Rational> {
    if n % 2 == 1 {
        return Ok(Rational::zero());
    }
    Ok(int(2) * pow(t, n / 2) * Rational::from_integer(count_bicon_pairs(n)?.into()))
}

/// Free cumulants of `μ₁`: zero at odd orders, `2 (1/2)^{n/2} |P₂^bicon(n)|` at even ones.
pub fn mu1_free_cumulants(k: usize) -> Result<CumulantSeq> {
    let half = Rational::new(1.into(), 2.into());
    (1..=k).map(|n| bicon_term(&half, n)).collect::<Result<_>>().map(CumulantSeq::new)
}

/// Free cumulants of `Z ~ μ_q`: `κ₂ = 1`, `κ_n = 2 (q/2)^{n/2} |P₂^bicon(n)|`
/// for even `n ≥ 4`, zero otherwise.
pub fn z_free_cumulants(q: &Rational, k: usize) -> Result<CumulantSeq> {
    check_q(q)?;
    let t = q / int(2);
    (1..=k)
        .map(|n| if n == 2 { Ok(Rational::one()) } else { bicon_term(&t, n) })
        .collect::<Result<_>>()
        .map(CumulantSeq::new)
}

/// `[x^t] M(x)^r` from the coefficients `M_0, ..., M_t`.
fn power_coefficient(m: &[Rational], r: usize, t: usize) -> Rational {
    let mut acc = vec![Rational::zero(); t + 1];
    acc[0] = Rational::one();
    for _ in 0..r {
        let mut next = vec![Rational::zero(); t + 1];
        for (i, a) in acc.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in m.iter().take(t + 1 - i).enumerate() {
                next[i + j] += a * b;
            }
        }
        acc = next;
    }
    acc[t].clone()
}

/// `M_1, ..., M_K` of `μ_q` from the recurrence
/// `M_n = Σ_{k₁+k₂=n-2} M_{k₁}M_{k₂} + Σ_{j≥2} 2(q/2)^j |P₂^bicon(2j)| Σ_{k₁+⋯+k_{2j}=n-2j} M_{k₁}⋯M_{k_{2j}}`.
pub fn mu_q_moments_recurrence(q: &Rational, k: usize) -> Result<MomentSeq> {
    check_q(q)?;
    let t = q / int(2);
    // m[0] = M_0
    let mut m = vec![Rational::one()];
    for n in 1..=k {
        let mut value = Rational::zero();
        if n % 2 == 0 {
            value += power_coefficient(&m, 2, n - 2);
            for j in 2..=n / 2 {
                if q.is_zero() {
                    break;
                }
                value += bicon_term(&t, 2 * j)? * power_coefficient(&m, 2 * j, n - 2 * j);
            }
        }
        m.push(value);
    }
    m.remove(0);
    Ok(MomentSeq::new(m))
}

/// `M_n = Σ_{π ∈ NC(n)} κ_π(Z)`.
pub fn mu_q_moments_cumulant_route(q: &Rational, k: usize) -> Result<MomentSeq> {
    moments_from_free_cumulants(&z_free_cumulants(q, k)?)
}

/// Standard semicircle: zero at odd orders, `Catalan(j)` at order `2j`.
pub fn semicircle_moments(k: usize) -> MomentSeq {
    MomentSeq::new(
        (1..=k)
            .map(|n| if n % 2 == 1 { Rational::zero() } else { int(catalan(n / 2) as i64) })
            .collect(),
    )
}
