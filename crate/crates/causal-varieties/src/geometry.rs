//! Parametrization of joint distributions by latent probabilities, exact
//! point-cloud sampling, support patterns, and multi-start least-squares
//! fitting of latent parameters to a target distribution.

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::fmt;

use crate::error::{Error, Result};
use crate::model::CausalModel;
use crate::poly::{Coef, Polynomial, Ring};

/// Sampling denominator: latent probabilities are drawn as k / 2^16 so that
/// every sampled point satisfies its model's equality constraints exactly.
pub const SAMPLE_DENOM_LOG2: u32 = 16;

/// Anything that maps latent-bit assignments to a finite outcome set.
/// Causal models have four outcomes indexed 2a + b.
pub trait OutcomeModel {
    fn n_latents(&self) -> usize;
    fn n_outcomes(&self) -> usize;
    fn outcome(&self, assignment: u32) -> usize;
}

impl OutcomeModel for CausalModel {
    fn n_latents(&self) -> usize {
        self.n()
    }
    fn n_outcomes(&self) -> usize {
        4
    }
    fn outcome(&self, assignment: u32) -> usize {
        CausalModel::outcome(self, assignment)
    }
}

/// Distribution over the latent bits: q_i is the probability that latent i
/// equals 0, strictly inside (0,1) by the nontriviality convention.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LatentDist {
    q: Vec<Coef>,
}

impl LatentDist {
    pub fn new(q: Vec<Coef>) -> Result<LatentDist> {
        for qi in &q {
            if !(qi.is_positive() && *qi < Coef::one()) {
                return Err(Error::DegenerateLatent);
            }
        }
        Ok(LatentDist { q })
    }

    pub fn q(&self) -> &[Coef] {
        &self.q
    }

    pub fn len(&self) -> usize {
        self.q.len()
    }

    pub fn is_empty(&self) -> bool {
        self.q.is_empty()
    }

    pub fn to_f64s(&self) -> Vec<f64> {
        self.q.iter().map(crate::poly::rational_to_f64).collect()
    }
}

/// Joint distribution of the observed pair, indexed p00, p01, p10, p11.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct JointDist {
    p: [Coef; 4],
}

pub const OUTCOME_NAMES: [&str; 4] = ["p00", "p01", "p10", "p11"];

impl JointDist {
    pub fn new(p: [Coef; 4]) -> Result<JointDist> {
        let mut sum = Coef::zero();
        for v in &p {
            if v.is_negative() {
                return Err(Error::InvalidDistribution(format!("negative entry {v}")));
            }
            sum += v;
        }
        if !sum.is_one() {
            return Err(Error::InvalidDistribution(format!("entries sum to {sum}, not 1")));
        }
        Ok(JointDist { p })
    }

    pub fn from_f64s(p: [f64; 4]) -> Result<JointDist> {
        // exact conversion from the literal decimal digits
        let mut out: Vec<Coef> = Vec::with_capacity(4);
        for v in p {
            out.push(
                crate::poly::parse_rational(&format!("{v}"))
                    .map_err(|e| Error::InvalidDistribution(e.to_string()))?,
            );
        }
        JointDist::new(out.try_into().expect("four entries"))
    }

    pub fn p(&self) -> &[Coef; 4] {
        &self.p
    }

    /// Entry by (a, b).
    pub fn p_ab(&self, a: usize, b: usize) -> &Coef {
        &self.p[(a << 1) | b]
    }

    pub fn to_f64s(&self) -> [f64; 4] {
        let v: Vec<f64> = self.p.iter().map(crate::poly::rational_to_f64).collect();
        v.try_into().expect("four entries")
    }

    pub fn uniform() -> JointDist {
        let q = Coef::new(1.into(), 4.into());
        JointDist { p: [q.clone(), q.clone(), q.clone(), q] }
    }

    pub fn vertex(a: usize, b: usize) -> JointDist {
        let mut p = [Coef::zero(), Coef::zero(), Coef::zero(), Coef::zero()];
        p[(a << 1) | b] = Coef::one();
        JointDist { p }
    }

    /// Applies an outcome-index permutation: out[i] = self[map[i]].
    pub fn permute(&self, map: &[usize; 4]) -> JointDist {
        JointDist {
            p: [
                self.p[map[0]].clone(),
                self.p[map[1]].clone(),
                self.p[map[2]].clone(),
                self.p[map[3]].clone(),
            ],
        }
    }
}

impl fmt::Display for JointDist {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {}, {}, {})", self.p[0], self.p[1], self.p[2], self.p[3])
    }
}

/// The q-ring q1 > q2 > ... > qn used by parametrizations.
pub fn q_ring(n: usize) -> Ring {
    Ring::new((1..=n.max(1)).map(|i| format!("q{i}"))).expect("distinct names")
}

/// Probabilities of each outcome as polynomials in q1..qn: the sum over
/// latent assignments hitting the outcome of prod_i (q_i or 1 - q_i).
pub fn parametrize_outcomes(m: &impl OutcomeModel, ring: &Ring) -> Vec<Polynomial> {
    let n = m.n_latents();
    let mut out = vec![Polynomial::zero(ring); m.n_outcomes()];
    for i in 0..(1u32 << n) {
        let mut term = Polynomial::constant(ring, Coef::one());
        for j in 0..n {
            let qj = Polynomial::var(ring, j);
            let factor = if (i >> j) & 1 == 0 {
                qj
            } else {
                Polynomial::constant(ring, Coef::one()).sub(&qj)
            };
            term = term.mul(&factor);
        }
        let k = m.outcome(i);
        out[k] = out[k].add(&term);
    }
    out
}

/// The four p_ab polynomials of a causal model, indexed p00, p01, p10, p11.
pub fn parametrize(m: &CausalModel) -> [Polynomial; 4] {
    let ring = q_ring(m.n());
    parametrize_outcomes(m, &ring).try_into().expect("four outcomes")
}

/// Exact evaluation of the outcome distribution at rational q.
pub fn outcome_distribution(m: &impl OutcomeModel, q: &[Coef]) -> Vec<Coef> {
    let n = m.n_latents();
    let mut out = vec![Coef::zero(); m.n_outcomes()];
    for i in 0..(1u32 << n) {
        let mut prob = Coef::one();
        for (j, qj) in q.iter().enumerate() {
            if (i >> j) & 1 == 0 {
                prob *= qj;
            } else {
                prob *= &(Coef::one() - qj);
            }
        }
        out[m.outcome(i)] += prob;
    }
    out
}

/// Exact joint distribution of a causal model at a latent distribution.
pub fn joint_distribution(m: &CausalModel, q: &LatentDist) -> Result<JointDist> {
    if q.len() != m.n() {
        return Err(Error::DimensionMismatch { expected: m.n(), got: q.len() });
    }
    let p = outcome_distribution(m, q.q());
    JointDist::new(p.try_into().expect("four outcomes"))
}

/// Deterministic rational latent draw: every q_i is k / 2^16 with
/// 1 <= k <= 2^16 - 1, so degenerate values never occur.
pub fn sample_latents(n: usize, seed: u64, index: u64) -> LatentDist {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index);
    let denom = BigInt::one() << SAMPLE_DENOM_LOG2;
    let q = (0..n)
        .map(|_| {
            let k = rng.gen_range(1..(1u32 << SAMPLE_DENOM_LOG2));
            Coef::new(BigInt::from(k), denom.clone())
        })
        .collect();
    LatentDist::new(q).expect("interior by construction")
}

/// Seeded exact cloud: `count` points of the model's distribution set.
pub fn sample_cloud(m: &CausalModel, count: usize, seed: u64) -> Vec<JointDist> {
    sample_cloud_with_latents(m, count, seed)
        .into_iter()
        .map(|(_, p)| p)
        .collect()
}

/// Cloud with the latent witnesses kept (for certification reports).
pub fn sample_cloud_with_latents(
    m: &CausalModel,
    count: usize,
    seed: u64,
) -> Vec<(LatentDist, JointDist)> {
    (0..count)
        .map(|i| {
            let q = sample_latents(m.n(), seed, i as u64);
            let p = joint_distribution(m, &q).expect("dimensions match");
            (q, p)
        })
        .collect()
}

/// Set of outcomes attained by some latent assignment, as a bitmask over
/// the outcome index 2a + b.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, PartialOrd, Ord)]
pub struct SupportPattern(pub u8);

impl SupportPattern {
    pub fn contains(&self, a: usize, b: usize) -> bool {
        self.0 >> ((a << 1) | b) & 1 == 1
    }

    pub fn outcomes(&self) -> Vec<usize> {
        (0..4).filter(|&k| self.0 >> k & 1 == 1).collect()
    }
}

impl fmt::Display for SupportPattern {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names = ["00", "01", "10", "11"];
        let parts: Vec<&str> = (0..4)
            .filter(|&k| self.0 >> k & 1 == 1)
            .map(|k| names[k])
            .collect();
        write!(f, "{{{}}}", parts.join(","))
    }
}

pub fn support_pattern(m: &CausalModel) -> SupportPattern {
    let mut mask = 0u8;
    for i in 0..(1u32 << m.n()) {
        mask |= 1 << m.outcome(i);
    }
    SupportPattern(mask)
}

// ---------------------------------------------------------------------------
// Fitting
// ---------------------------------------------------------------------------

/// Multi-start least-squares fit configuration. Failure to fit is evidence
/// of infeasibility, never proof.
#[derive(Clone, Debug)]
pub struct FitOptions {
    /// Max-norm residual accepted as success.
    pub tol: f64,
    /// Number of starts (the first is the cube center).
    pub starts: usize,
    pub seed: u64,
    pub max_iterations: usize,
    /// Coarse grid fallback (>= 21 points per axis) for n <= 4.
    pub grid_fallback: bool,
}

impl Default for FitOptions {
    fn default() -> Self {
        FitOptions {
            tol: 1e-6,
            starts: 64,
            seed: 0,
            max_iterations: 120,
            grid_fallback: true,
        }
    }
}

/// A successful fit: latent probabilities strictly inside (0,1) whose image
/// approximates the target in max-norm.
#[derive(Clone, Debug)]
pub struct FittedLatents {
    pub q: Vec<f64>,
    pub residual: f64,
}

/// Evaluates outcome probabilities and the Jacobian d p_k / d q_j.
fn probs_and_jacobian(
    m: &impl OutcomeModel,
    q: &[f64],
    probs: &mut [f64],
    jac: &mut [f64], // row-major: n_outcomes x n
) {
    let n = m.n_latents();
    let k_out = m.n_outcomes();
    probs.iter_mut().for_each(|v| *v = 0.0);
    jac.iter_mut().for_each(|v| *v = 0.0);
    for i in 0..(1u32 << n) {
        let mut prod = 1.0;
        for (j, qj) in q.iter().enumerate() {
            prod *= if (i >> j) & 1 == 0 { *qj } else { 1.0 - qj };
        }
        let k = m.outcome(i);
        probs[k] += prod;
        for j in 0..n {
            let factor = if (i >> j) & 1 == 0 { q[j] } else { 1.0 - q[j] };
            // product of the other factors; recompute when factor underflows
            let rest = if factor.abs() > 1e-300 {
                prod / factor
            } else {
                let mut r = 1.0;
                for (l, ql) in q.iter().enumerate() {
                    if l != j {
                        r *= if (i >> l) & 1 == 0 { *ql } else { 1.0 - ql };
                    }
                }
                r
            };
            let sign = if (i >> j) & 1 == 0 { 1.0 } else { -1.0 };
            jac[k * n + j] += sign * rest;
        }
    }
    let _ = k_out;
}

fn max_residual(probs: &[f64], target: &[f64]) -> f64 {
    probs
        .iter()
        .zip(target)
        .map(|(p, t)| (p - t).abs())
        .fold(0.0, f64::max)
}

fn sigmoid(z: f64) -> f64 {
    1.0 / (1.0 + (-z).exp())
}

fn logit(q: f64) -> f64 {
    (q / (1.0 - q)).ln()
}

/// Levenberg-Marquardt in logit coordinates, so iterates never leave the
/// open cube.
fn lm_from_start(
    m: &impl OutcomeModel,
    target: &[f64],
    start: &[f64],
    opts: &FitOptions,
) -> (Vec<f64>, f64) {
    let n = m.n_latents();
    let k_out = m.n_outcomes();
    let mut z: Vec<f64> = start.iter().map(|&q| logit(q)).collect();
    let mut q: Vec<f64> = z.iter().map(|&v| sigmoid(v)).collect();
    let mut probs = vec![0.0; k_out];
    let mut jac = vec![0.0; k_out * n];
    probs_and_jacobian(m, &q, &mut probs, &mut jac);
    let mut cost: f64 = probs
        .iter()
        .zip(target)
        .map(|(p, t)| (p - t) * (p - t))
        .sum();
    let mut lambda = 1e-3;

    for _ in 0..opts.max_iterations {
        if max_residual(&probs, target) <= opts.tol * 0.25 {
            break;
        }
        // J in z-coordinates: chain rule through dq/dz = q(1-q)
        let mut jtj = vec![0.0; n * n];
        let mut jtr = vec![0.0; n];
        for k in 0..k_out {
            let r = probs[k] - target[k];
            for a in 0..n {
                let ja = jac[k * n + a] * q[a] * (1.0 - q[a]);
                jtr[a] += ja * r;
                for b in 0..n {
                    let jb = jac[k * n + b] * q[b] * (1.0 - q[b]);
                    jtj[a * n + b] += ja * jb;
                }
            }
        }
        let mut improved = false;
        for _ in 0..8 {
            let mut lhs = jtj.clone();
            for a in 0..n {
                lhs[a * n + a] += lambda * (1.0 + jtj[a * n + a]);
            }
            let rhs: Vec<f64> = jtr.iter().map(|v| -v).collect();
            let Some(delta) = solve_dense(&mut lhs, &rhs) else {
                lambda *= 10.0;
                continue;
            };
            let z_new: Vec<f64> = z
                .iter()
                .zip(&delta)
                .map(|(zi, d)| (zi + d).clamp(-36.0, 36.0))
                .collect();
            let q_new: Vec<f64> = z_new.iter().map(|&v| sigmoid(v)).collect();
            let mut probs_new = vec![0.0; k_out];
            let mut jac_new = vec![0.0; k_out * n];
            probs_and_jacobian(m, &q_new, &mut probs_new, &mut jac_new);
            let cost_new: f64 = probs_new
                .iter()
                .zip(target)
                .map(|(p, t)| (p - t) * (p - t))
                .sum();
            if cost_new < cost {
                z = z_new;
                q = q_new;
                probs = probs_new;
                jac = jac_new;
                cost = cost_new;
                lambda = (lambda * 0.3).max(1e-12);
                improved = true;
                break;
            }
            lambda *= 10.0;
        }
        if !improved {
            break;
        }
    }
    let res = max_residual(&probs, target);
    (q, res)
}

/// Gaussian elimination with partial pivoting; None when singular.
fn solve_dense(a: &mut [f64], b: &[f64]) -> Option<Vec<f64>> {
    let n = b.len();
    let mut x: Vec<f64> = b.to_vec();
    for col in 0..n {
        let mut pivot = col;
        for row in (col + 1)..n {
            if a[row * n + col].abs() > a[pivot * n + col].abs() {
                pivot = row;
            }
        }
        if a[pivot * n + col].abs() < 1e-14 {
            return None;
        }
        if pivot != col {
            for k in 0..n {
                a.swap(col * n + k, pivot * n + k);
            }
            x.swap(col, pivot);
        }
        let d = a[col * n + col];
        for row in (col + 1)..n {
            let f = a[row * n + col] / d;
            if f == 0.0 {
                continue;
            }
            for k in col..n {
                a[row * n + k] -= f * a[col * n + k];
            }
            x[row] -= f * x[col];
        }
    }
    for col in (0..n).rev() {
        x[col] /= a[col * n + col];
        for row in 0..col {
            x[row] -= a[row * n + col] * x[col];
        }
    }
    Some(x)
}

/// Multi-start local least squares over the open cube with a coarse grid
/// fallback. Deterministic given (options, inputs); starts are examined in
/// index order so parallel schedules cannot change the answer.
pub fn fit_outcome_distribution(
    m: &impl OutcomeModel,
    target: &[f64],
    opts: &FitOptions,
) -> Option<FittedLatents> {
    let n = m.n_latents();
    let k_out = m.n_outcomes();
    assert_eq!(target.len(), k_out, "target dimension mismatch");
    if n == 0 {
        let mut probs = vec![0.0; k_out];
        probs[m.outcome(0)] = 1.0;
        let res = max_residual(&probs, target);
        return (res <= opts.tol).then_some(FittedLatents { q: vec![], residual: res });
    }

    let mut best: Option<FittedLatents> = None;
    for s in 0..opts.starts.max(1) {
        let start: Vec<f64> = if s == 0 {
            vec![0.5; n]
        } else {
            let mut rng = ChaCha8Rng::seed_from_u64(opts.seed ^ 0x9e3779b97f4a7c15);
            rng.set_stream(s as u64);
            (0..n).map(|_| rng.gen_range(0.02..0.98)).collect()
        };
        let (q, res) = lm_from_start(m, target, &start, opts);
        if res <= opts.tol && q.iter().all(|&v| v > 0.0 && v < 1.0) {
            return Some(FittedLatents { q, residual: res });
        }
        if best.as_ref().map_or(true, |b| res < b.residual) {
            best = Some(FittedLatents { q, residual: res });
        }
    }

    if opts.grid_fallback && n <= 4 {
        let grid = 21usize;
        let mut best_grid: Option<(Vec<f64>, f64)> = None;
        let mut idx = vec![1usize; n];
        let mut probs = vec![0.0; k_out];
        let mut jac = vec![0.0; k_out * n];
        loop {
            let q: Vec<f64> = idx.iter().map(|&k| k as f64 / (grid as f64 + 1.0)).collect();
            probs_and_jacobian(m, &q, &mut probs, &mut jac);
            let res = max_residual(&probs, target);
            if best_grid.as_ref().map_or(true, |(_, r)| res < *r) {
                best_grid = Some((q, res));
            }
            // odometer over the grid
            let mut pos = 0;
            loop {
                if pos == n {
                    break;
                }
                idx[pos] += 1;
                if idx[pos] <= grid {
                    break;
                }
                idx[pos] = 1;
                pos += 1;
            }
            if pos == n {
                break;
            }
        }
        if let Some((start, _)) = best_grid {
            let (q, res) = lm_from_start(m, target, &start, opts);
            if res <= opts.tol && q.iter().all(|&v| v > 0.0 && v < 1.0) {
                return Some(FittedLatents { q, residual: res });
            }
        }
    }
    let _ = best;
    None
}

/// Fits a causal model to a target joint distribution.
pub fn fit_distribution(
    m: &CausalModel,
    target: &JointDist,
    opts: &FitOptions,
) -> Option<FittedLatents> {
    fit_outcome_distribution(m, &target.to_f64s(), opts)
}

/// Renders a rational exactly in decimal when its denominator is 2^a 5^b
/// (always true for sampled clouds); falls back to `a/b` otherwise.
pub fn exact_decimal(c: &Coef) -> String {
    let mut den = c.denom().clone();
    let mut twos = 0u32;
    let mut fives = 0u32;
    let two = BigInt::from(2);
    let five = BigInt::from(5);
    while (&den % &two).is_zero() {
        den /= &two;
        twos += 1;
    }
    while (&den % &five).is_zero() {
        den /= &five;
        fives += 1;
    }
    if den != BigInt::one() {
        return format!("{c}");
    }
    let shift = twos.max(fives);
    let scale = BigInt::from(10).pow(shift);
    let scaled = (c.numer() * &scale) / c.denom();
    let neg = scaled.is_negative();
    let digits = scaled.abs().to_string();
    let digits = format!("{:0>width$}", digits, width = shift as usize + 1);
    let split = digits.len() - shift as usize;
    let (int_part, frac_part) = digits.split_at(split);
    let sign = if neg { "-" } else { "" };
    if frac_part.is_empty() {
        format!("{sign}{int_part}")
    } else {
        format!("{sign}{int_part}.{frac_part}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::parse_model;
    use crate::poly::parse_polynomial;

    fn rat(s: &str) -> Coef {
        crate::poly::parse_rational(s).unwrap()
    }

    #[test]
    fn parametrize_fan() {
        let m = parse_model("n=2; A = u ^ v; B = u").unwrap();
        let ring = q_ring(2);
        let [p00, p01, p10, p11] = parametrize(&m);
        let e = |s: &str| parse_polynomial(&ring, s).unwrap();
        assert_eq!(p00, e("q1*q2"));
        assert_eq!(p10, e("q1*(1-q2)"));
        assert_eq!(p01, e("(1-q1)*(1-q2)"));
        assert_eq!(p11, e("(1-q1)*q2"));
    }

    #[test]
    fn parametrize_fig3_and_sum_to_one() {
        let m = parse_model("n=3; A = u*v; B = u*w").unwrap();
        let ring = q_ring(3);
        let ps = parametrize(&m);
        let e = |s: &str| parse_polynomial(&ring, s).unwrap();
        assert_eq!(ps[0], e("q1 + (1-q1)*q2*q3"));
        assert_eq!(ps[1], e("(1-q1)*q2*(1-q3)"));
        assert_eq!(ps[2], e("(1-q1)*(1-q2)*q3"));
        assert_eq!(ps[3], e("(1-q1)*(1-q2)*(1-q3)"));
        let sum = ps.iter().fold(Polynomial::zero(&ring), |acc, p| acc.add(p));
        assert_eq!(sum, e("1"));
    }

    #[test]
    fn constant_model_distribution() {
        let m = parse_model("n=0; A = 0; B = 0").unwrap();
        let ps = parametrize(&m);
        assert_eq!(ps[0], Polynomial::constant_i64(&q_ring(0), 1));
        assert!(ps[1].is_zero() && ps[2].is_zero() && ps[3].is_zero());
    }

    #[test]
    fn joint_distribution_examples() {
        let fan = parse_model("n=2; A = u ^ v; B = u").unwrap();
        let q = LatentDist::new(vec![rat("1/2"), rat("1/2")]).unwrap();
        let p = joint_distribution(&fan, &q).unwrap();
        assert_eq!(p, JointDist::uniform());

        let fig3 = parse_model("n=3; A = u*v; B = u*w").unwrap();
        let q = LatentDist::new(vec![rat("1/2"), rat("1/2"), rat("1/2")]).unwrap();
        let p = joint_distribution(&fig3, &q).unwrap();
        assert_eq!(p.p()[0], rat("5/8"));
        assert_eq!(p.p()[1], rat("1/8"));
        assert_eq!(p.p()[2], rat("1/8"));
        assert_eq!(p.p()[3], rat("1/8"));

        // degenerate latent rejected
        assert!(LatentDist::new(vec![rat("0")]).is_err());
        assert!(LatentDist::new(vec![rat("1")]).is_err());
        // dimension mismatch
        let q1 = LatentDist::new(vec![rat("1/2")]).unwrap();
        assert!(joint_distribution(&fan, &q1).is_err());
    }

    #[test]
    fn cloud_is_deterministic_and_exact() {
        let fan = parse_model("n=2; A = u ^ v; B = u").unwrap();
        let c1 = sample_cloud(&fan, 64, 7);
        let c2 = sample_cloud(&fan, 64, 7);
        assert_eq!(c1, c2);
        let c3 = sample_cloud(&fan, 64, 8);
        assert_ne!(c1, c3);
        // every point satisfies p00 p01 = p10 p11 exactly
        for p in &c1 {
            assert_eq!(p.p()[0].clone() * &p.p()[1], p.p()[2].clone() * &p.p()[3]);
        }
        // vertex model: N copies of the vertex
        let vm = parse_model("n=0; A = 0; B = 0").unwrap();
        for p in sample_cloud(&vm, 5, 0) {
            assert_eq!(p, JointDist::vertex(0, 0));
        }
    }

    #[test]
    fn support_patterns() {
        let starfleet = parse_model("n=2; A = u*v; B = u ^ v ^ u*v").unwrap();
        assert_eq!(support_pattern(&starfleet).to_string(), "{00,01,11}");
        let indep = parse_model("n=2; A = u; B = v").unwrap();
        assert_eq!(support_pattern(&indep).0, 0b1111);
        let vertex = parse_model("n=0; A = 0; B = 0").unwrap();
        assert_eq!(support_pattern(&vertex).to_string(), "{00}");
    }

    #[test]
    fn support_matches_generic_rational_point() {
        // generic q: distinct prime reciprocals
        let primes = [2i64, 3, 5, 7, 11];
        for text in [
            "n=2; A = u*v; B = u ^ v ^ u*v",
            "n=3; A = u*v; B = u ^ v ^ w",
            "n=1; A = u; B = u",
            "n=2; A = u*v ^ v; B = v",
        ] {
            let m = parse_model(text).unwrap();
            let q = LatentDist::new(
                (0..m.n()).map(|i| Coef::new(1.into(), primes[i].into())).collect(),
            )
            .unwrap();
            let p = joint_distribution(&m, &q).unwrap();
            let sp = support_pattern(&m);
            for k in 0..4 {
                assert_eq!(!p.p()[k].is_zero(), sp.0 >> k & 1 == 1, "{text} outcome {k}");
            }
        }
    }

    #[test]
    fn fit_recovers_fan_uniform() {
        let fan = parse_model("n=2; A = u ^ v; B = u").unwrap();
        let opts = FitOptions { tol: 1e-9, ..Default::default() };
        let fit = fit_distribution(&fan, &JointDist::uniform(), &opts).expect("fits");
        assert!((fit.q[0] - 0.5).abs() < 1e-6);
        assert!((fit.q[1] - 0.5).abs() < 1e-6);
    }

    #[test]
    fn fit_rejects_off_variety_target() {
        let fan = parse_model("n=2; A = u ^ v; B = u").unwrap();
        // violates p00 p01 = p10 p11 (0.04 vs 0.06)
        let target = JointDist::new([rat("2/5"), rat("1/10"), rat("1/5"), rat("3/10")]).unwrap();
        let opts = FitOptions { tol: 1e-9, ..Default::default() };
        assert!(fit_distribution(&fan, &target, &opts).is_none());
    }

    #[test]
    fn fit_vertex_model() {
        let vm = parse_model("n=0; A = 0; B = 0").unwrap();
        let fit =
            fit_distribution(&vm, &JointDist::vertex(0, 0), &FitOptions::default()).unwrap();
        assert!(fit.q.is_empty());
    }

    #[test]
    fn fit_round_trips_sampled_points() {
        let m = parse_model("n=3; A = u*v; B = u ^ v ^ w").unwrap();
        let opts = FitOptions::default();
        for (_, p) in sample_cloud_with_latents(&m, 8, 3) {
            let fit = fit_distribution(&m, &p, &opts).expect("feasible point fits");
            let qs = LatentDist::new(
                fit.q.iter().map(|&v| rat(&format!("{v:.12}"))).collect(),
            )
            .unwrap();
            let image = joint_distribution(&m, &qs).unwrap();
            for k in 0..4 {
                let diff = crate::poly::rational_to_f64(&(image.p()[k].clone() - &p.p()[k]));
                assert!(diff.abs() < 1e-5, "outcome {k} off by {diff}");
            }
        }
    }

    #[test]
    fn exact_decimal_rendering() {
        assert_eq!(exact_decimal(&rat("1/2")), "0.5");
        assert_eq!(exact_decimal(&rat("3/65536")), "0.0000457763671875");
        assert_eq!(exact_decimal(&rat("1/3")), "1/3");
        assert_eq!(exact_decimal(&rat("-7/20")), "-0.35");
        assert_eq!(exact_decimal(&rat("2")), "2");
    }
}
