//! Randomized verifiers for the coefficient inequalities of `BS(α)`.
//!
//! Every verifier reduces its trials to a [`BoundCheckReport`]: the largest
//! observed `value / bound` together with the inputs that produced it.
//! Trials are generated from per-trial seeded streams and may run in
//! parallel; the reduction keeps the first trial attaining the maximum, so
//! reports are identical for a fixed seed.

use std::collections::BTreeMap;
use std::f64::consts::TAU;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::class::{construct_member, extremal_f0, BlaschkeSchwarz, Grid, SchwarzSpec};
use crate::error::{Error, Result};
use crate::geometry::{p_alpha_coefficients, p_alpha_tilde, BoothParameter, RotationConvention};
use crate::series::TruncatedSeries;

/// A check passes when `max_ratio <= 1 + PASS_SLACK`.
pub const PASS_SLACK: f64 = 1e-9;
/// Radius of the circle whose image approximates `P̃_α(Δ)`.
pub const POLYGON_RADIUS: f64 = 0.999;
pub const POLYGON_VERTICES: usize = 4096;
/// Absolute outward tolerance for polygon containment.
pub const POLYGON_MARGIN: f64 = 1e-6;

/// Minimum expansion order for random Schwarz functions.
pub const SCHWARZ_ORDER: usize = 32;

const MAX_ZEROS: usize = 3;
const MAX_ZERO_MODULUS: f64 = 0.5;

fn cx(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

/// Inputs that realise the largest ratio of a check.
#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct Witness {
    pub label: String,
    pub trial: Option<usize>,
    pub schwarz: Option<BlaschkeSchwarz>,
    pub alpha: Option<f64>,
    pub mu: Option<Complex64>,
    pub k: Option<usize>,
    pub index: Option<usize>,
    pub point: Option<Complex64>,
    pub value: f64,
    pub bound: f64,
    pub coefficients: Vec<Complex64>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BoundCheckReport {
    pub name: String,
    pub trials: usize,
    pub max_ratio: f64,
    pub pass: bool,
    /// False when the check runs outside the hypotheses of its theorem;
    /// the result is then an observation, not a verification.
    pub in_theorem_range: bool,
    pub witness: Witness,
    pub extras: BTreeMap<String, f64>,
}

impl BoundCheckReport {
    /// Reduces `(ratio, witness)` observations, keeping the first maximum.
    pub fn from_observations(
        name: &str,
        trials: usize,
        observations: impl IntoIterator<Item = (f64, Witness)>,
    ) -> Self {
        let mut best: Option<(f64, Witness)> = None;
        for (ratio, w) in observations {
            if best.as_ref().is_none_or(|(r, _)| ratio > *r) {
                best = Some((ratio, w));
            }
        }
        let (max_ratio, witness) = best.unwrap_or((0.0, Witness::default()));
        Self {
            name: name.to_string(),
            trials,
            max_ratio,
            pass: max_ratio <= 1.0 + PASS_SLACK,
            in_theorem_range: true,
            witness,
            extras: BTreeMap::new(),
        }
    }

    fn with_range(mut self, in_range: bool) -> Self {
        self.in_theorem_range = in_range;
        self
    }

    fn with_extra(mut self, key: &str, value: f64) -> Self {
        self.extras.insert(key.to_string(), value);
        self
    }
}

/// Independent random stream for trial `trial` under `seed`.
pub fn trial_rng(seed: u64, trial: usize) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(trial as u64);
    rng
}

pub fn random_schwarz(seed: u64, trial: usize) -> BlaschkeSchwarz {
    BlaschkeSchwarz::random(&mut trial_rng(seed, trial), MAX_ZEROS, MAX_ZERO_MODULUS)
}

/// A function under test: its generating Schwarz function (`None` for `f₀`)
/// and its series.
#[derive(Clone, Debug)]
pub struct Member {
    pub label: String,
    pub schwarz: Option<BlaschkeSchwarz>,
    pub trial: Option<usize>,
    pub f: TruncatedSeries,
}

impl Member {
    pub fn f0(p: BoothParameter, order: usize) -> Result<Self> {
        Ok(Self { label: "f0".into(), schwarz: None, trial: None, f: extremal_f0(p, order)? })
    }

    /// The Schwarz function is expanded to at least [`SCHWARZ_ORDER`] terms
    /// so its sampled bound check is not spoiled by truncation; `a_n` for
    /// `n <= order` only depends on the first `order` terms of `w`.
    pub fn from_schwarz(p: BoothParameter, w: BlaschkeSchwarz, order: usize, trial: Option<usize>) -> Result<Self> {
        let f = construct_member(p, &w.spec(order.max(SCHWARZ_ORDER))?)?.truncated(order);
        Ok(Self { label: "blaschke".into(), schwarz: Some(w), trial, f })
    }

    fn witness(&self, p: BoothParameter, leading: usize) -> Witness {
        Witness {
            label: self.label.clone(),
            trial: self.trial,
            schwarz: self.schwarz.clone(),
            alpha: Some(p.alpha()),
            coefficients: self.f.coeffs()[..=leading.min(self.f.order())].to_vec(),
            ..Witness::default()
        }
    }
}

/// `f₀` followed by `count` members generated from seeded random Schwarz functions.
pub fn members(p: BoothParameter, count: usize, order: usize, seed: u64) -> Result<Vec<Member>> {
    let mut out = vec![Member::f0(p, order)?];
    let random: Result<Vec<Member>> = (0..count)
        .into_par_iter()
        .map(|t| Member::from_schwarz(p, random_schwarz(seed, t), order, Some(t)))
        .collect();
    out.extend(random?);
    Ok(out)
}

/// Coefficients of the normalized `f` solving `zf' = p f`, from
/// `(n-1) a_n = Σ_{k=1}^{n-1} a_k p_{n-k}` with `a_1 = 1`.
pub fn coefficient_recurrence(p: &TruncatedSeries, order: usize) -> Result<TruncatedSeries> {
    if (p[0] - 1.0).norm() > 1e-12 {
        return Err(Error::LeadingCoefficientNotOne { re: p[0].re, im: p[0].im });
    }
    if order == 0 || p.order() + 1 < order {
        return Err(Error::OrderTooSmall { required: order.saturating_sub(1), actual: p.order() });
    }
    let mut a = vec![cx(0.0, 0.0); order + 1];
    a[1] = cx(1.0, 0.0);
    for n in 2..=order {
        let sum: Complex64 = (1..n).map(|k| a[k] * p[n - k]).sum();
        a[n] = sum / (n - 1) as f64;
    }
    TruncatedSeries::new(a)
}

/// `(1/(n-1)) ∏_{k=2}^{n-1} k/(k-1)` for `n >= 3`, and 1 for `n = 2`,
/// evaluated as the literal product. (It telescopes to 1.)
pub fn coefficient_bound(n: usize) -> Result<f64> {
    if n < 2 {
        return Err(Error::ParameterOutOfRange(format!("coefficient index {n} must be >= 2")));
    }
    if n == 2 {
        return Ok(1.0);
    }
    let product: f64 = (2..n).map(|k| k as f64 / (k - 1) as f64).product();
    Ok(product / (n - 1) as f64)
}

/// `max_{2<=n<=N} |a_n| / bound(n)` and the index attaining it.
pub fn coefficient_ratio(f: &TruncatedSeries, max_n: usize) -> Result<(f64, usize)> {
    let mut best = (0.0, 2);
    for n in 2..=max_n.min(f.order()) {
        let r = f[n].norm() / coefficient_bound(n)?;
        if r > best.0 {
            best = (r, n);
        }
    }
    Ok(best)
}

/// `|a_n| <= bound(n)` over `f₀` and `trials` random members up to `order`.
pub fn verify_coefficient_bounds(p: BoothParameter, trials: usize, order: usize, seed: u64) -> Result<BoundCheckReport> {
    let ms = members(p, trials, order, seed)?;
    let obs: Result<Vec<(f64, Witness)>> = ms
        .par_iter()
        .map(|m| {
            let (ratio, n) = coefficient_ratio(&m.f, order)?;
            let mut w = m.witness(p, order);
            w.index = Some(n);
            w.value = m.f[n].norm();
            w.bound = coefficient_bound(n)?;
            Ok((ratio, w))
        })
        .collect();
    Ok(BoundCheckReport::from_observations("coefficient_bound", ms.len(), obs?)
        .with_range(p.within_convexity_range()))
}

/// `|a_3 - μ a_2²|`.
pub fn fekete_szego(f: &TruncatedSeries, mu: Complex64) -> Result<f64> {
    if f.order() < 3 {
        return Err(Error::OrderTooSmall { required: 3, actual: f.order() });
    }
    if !f.is_normalized() {
        return Err(Error::NotNormalized);
    }
    Ok((f[3] - mu * f[2] * f[2]).norm())
}

/// `(1/2) max{1, |2μ - 1|}`.
pub fn fs_bound(mu: Complex64) -> f64 {
    0.5 * (2.0 * mu - 1.0).norm().max(1.0)
}

/// Real `μ ∈ [-2, 3]` in steps of 0.1, then 200 seeded random `μ` with `|μ| <= 3`.
pub fn mu_grid(seed: u64) -> Vec<Complex64> {
    let mut mus: Vec<Complex64> = (0..=50).map(|i| cx(-2.0 + 0.1 * i as f64, 0.0)).collect();
    // Trials use streams 0, 1, 2, ...; the μ draws take the last stream.
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(u64::MAX);
    mus.extend((0..200).map(|_| Complex64::from_polar(3.0 * rng.gen::<f64>().sqrt(), rng.gen_range(0.0..TAU))));
    mus
}

pub fn verify_fekete_szego(p: BoothParameter, trials: usize, seed: u64, mus: &[Complex64]) -> Result<BoundCheckReport> {
    let ms = members(p, trials, 3, seed)?;
    let obs: Result<Vec<(f64, Witness)>> = ms
        .par_iter()
        .map(|m| {
            let mut best: Option<(f64, Witness)> = None;
            for &mu in mus {
                let value = fekete_szego(&m.f, mu)?;
                let bound = fs_bound(mu);
                if best.as_ref().is_none_or(|b| value / bound > b.0) {
                    let mut w = m.witness(p, 3);
                    w.mu = Some(mu);
                    w.value = value;
                    w.bound = bound;
                    best = Some((value / bound, w));
                }
            }
            Ok(best.expect("non-empty mu grid"))
        })
        .collect();
    Ok(BoundCheckReport::from_observations("fekete_szego", ms.len(), obs?)
        .with_extra("mu_count", mus.len() as f64))
}

/// Which right-hand side to use for the k-th root Fekete–Szegő bound.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum KthBound {
    /// `(1/(2k)) max{1, |2(μ-1)/k + 1|}` as stated for the theorem.
    #[default]
    Printed,
    /// `(1/(2k)) max{1, |2μ-1|/k}`, obtained by applying Keogh–Merkes to
    /// `b_{2k+1} - μ b_{k+1}² = (1/(4k)) (p_2 - ((k-1+2μ)/(2k)) p_1²)`.
    Derived,
}

pub fn kth_fs_bound(k: usize, mu: Complex64, kind: KthBound) -> f64 {
    let k = k as f64;
    let inner = match kind {
        KthBound::Printed => (2.0 * (mu - 1.0) / k + 1.0).norm(),
        KthBound::Derived => (2.0 * mu - 1.0).norm() / k,
    };
    inner.max(1.0) / (2.0 * k)
}

/// `b_{2k+1} - μ b_{k+1}²` computed from the transformed series and from
/// the closed form `a_3/k - ((k-1)/(2k²)) a_2² - μ a_2²/k²`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct KthRootFunctional {
    pub from_transform: Complex64,
    pub from_identity: Complex64,
}

impl KthRootFunctional {
    pub fn gap(&self) -> f64 {
        (self.from_transform - self.from_identity).norm()
    }
}

pub fn kth_root_fs(f: &TruncatedSeries, k: usize, mu: Complex64) -> Result<KthRootFunctional> {
    if f.order() < 2 * k + 1 {
        return Err(Error::OrderTooSmall { required: 2 * k + 1, actual: f.order() });
    }
    let b = f.kth_root_transform(k)?;
    let kf = k as f64;
    let (a2, a3) = (f[2], f[3]);
    Ok(KthRootFunctional {
        from_transform: b[2 * k + 1] - mu * b[k + 1] * b[k + 1],
        from_identity: a3 / kf - a2 * a2 * (kf - 1.0) / (2.0 * kf * kf) - mu * a2 * a2 / (kf * kf),
    })
}

/// The k-th root functional over members × `ks` × `mus`, with the largest
/// transform/closed-form discrepancy in `extras["max_identity_gap"]`.
pub fn verify_kth_root(
    p: BoothParameter,
    trials: usize,
    seed: u64,
    ks: &[usize],
    mus: &[Complex64],
    kind: KthBound,
) -> Result<BoundCheckReport> {
    let kmax = ks.iter().copied().max().unwrap_or(1);
    let order = 2 * kmax + 1;
    let ms = members(p, trials, order, seed)?;
    let obs: Result<Vec<(f64, f64, Witness)>> = ms
        .par_iter()
        .map(|m| {
            let mut best: Option<(f64, Witness)> = None;
            let mut gap: f64 = 0.0;
            for &k in ks {
                // b_{2k+1} and b_{k+1} do not depend on μ, so transform once per k.
                let base = kth_root_fs(&m.f, k, cx(0.0, 0.0))?;
                let b = m.f.kth_root_transform(k)?;
                let bk2 = b[k + 1] * b[k + 1];
                let kf = k as f64;
                for &mu in mus {
                    let t = base.from_transform - mu * bk2;
                    let id = base.from_identity - mu * m.f[2] * m.f[2] / (kf * kf);
                    gap = gap.max((t - id).norm());
                    let value = t.norm();
                    let bound = kth_fs_bound(k, mu, kind);
                    if best.as_ref().is_none_or(|b| value / bound > b.0) {
                        let mut w = m.witness(p, order);
                        w.mu = Some(mu);
                        w.k = Some(k);
                        w.value = value;
                        w.bound = bound;
                        best = Some((value / bound, w));
                    }
                }
            }
            let (r, w) = best.expect("non-empty grids");
            Ok((r, gap, w))
        })
        .collect();
    let obs = obs?;
    let gap = obs.iter().map(|o| o.1).fold(0.0, f64::max);
    let name = match kind {
        KthBound::Printed => "kth_root_fekete_szego_printed",
        KthBound::Derived => "kth_root_fekete_szego_derived",
    };
    Ok(BoundCheckReport::from_observations(name, ms.len(), obs.into_iter().map(|(r, _, w)| (r, w)))
        .with_extra("max_identity_gap", gap))
}

/// `p = (1 + w)/(1 - w)`, a Carathéodory function built from a Schwarz function.
#[derive(Clone, Debug, PartialEq)]
pub struct CaratheodorySample {
    pub p: TruncatedSeries,
    pub schwarz: Option<BlaschkeSchwarz>,
}

impl CaratheodorySample {
    /// Builds `p` and checks `Re p > 0` on `|z| = 1/2`, where truncation
    /// error of a low-order series is still small.
    pub fn from_schwarz(w: &SchwarzSpec) -> Result<Self> {
        let n = w.w.order();
        let one = TruncatedSeries::constant(cx(1.0, 0.0), n);
        let p = one.add(&w.w)?.divide(&one.sub(&w.w)?)?;
        let grid = Grid::new(vec![0.5], 64)?;
        if let Some(z) = grid.points().find(|&z| p.evaluate(z).re <= 0.0) {
            return Err(Error::ParameterOutOfRange(format!("Re p <= 0 at {z}")));
        }
        Ok(Self { p, schwarz: None })
    }
}

/// `|c_2 - μ c_1²| <= 2 max{1, |2μ - 1|}` over samples × `mus`.
pub fn keogh_merkes_oracle(samples: &[CaratheodorySample], mus: &[Complex64]) -> BoundCheckReport {
    let obs: Vec<(f64, Witness)> = samples
        .par_iter()
        .enumerate()
        .map(|(i, s)| {
            let (c1, c2) = (s.p[1], s.p[2]);
            let mut best: Option<(f64, Witness)> = None;
            for &mu in mus {
                let value = (c2 - mu * c1 * c1).norm();
                let bound = 2.0 * (2.0 * mu - 1.0).norm().max(1.0);
                if best.as_ref().is_none_or(|b| value / bound > b.0) {
                    let w = Witness {
                        label: "caratheodory".into(),
                        trial: Some(i),
                        schwarz: s.schwarz.clone(),
                        mu: Some(mu),
                        value,
                        bound,
                        coefficients: s.p.coeffs()[..=2].to_vec(),
                        ..Witness::default()
                    };
                    best = Some((value / bound, w));
                }
            }
            best.expect("non-empty mu grid")
        })
        .collect();
    BoundCheckReport::from_observations("keogh_merkes", samples.len(), obs)
}

/// The sample from `w(z) = z` first, then `trials` random samples.
pub fn caratheodory_samples(trials: usize, seed: u64) -> Result<Vec<CaratheodorySample>> {
    let mut schwarz = vec![BlaschkeSchwarz::identity()];
    schwarz.extend((0..trials).map(|t| random_schwarz(seed, t)));
    schwarz
        .into_par_iter()
        .map(|b| {
            let mut s = CaratheodorySample::from_schwarz(&b.spec(SCHWARZ_ORDER)?)?;
            s.schwarz = Some(b);
            Ok(s)
        })
        .collect()
}

pub fn verify_keogh_merkes(trials: usize, seed: u64, mus: &[Complex64]) -> Result<BoundCheckReport> {
    Ok(keogh_merkes_oracle(&caratheodory_samples(trials, seed)?, mus))
}

/// For `p = q ∘ w` with `q` convex univalent, `|A_n| <= |C_1|`.
///
/// The caller asserts convexity of `q`; `q` must vanish at the origin.
pub fn rogosinski_oracle(q: &TruncatedSeries, schwarz: &[BlaschkeSchwarz]) -> Result<BoundCheckReport> {
    let c1 = q[1].norm();
    if c1 == 0.0 {
        return Err(Error::NotInvertible { modulus: 0.0 });
    }
    let n = q.order();
    let obs: Result<Vec<(f64, Witness)>> = schwarz
        .par_iter()
        .enumerate()
        .map(|(i, b)| {
            let p = TruncatedSeries::compose(q, &b.series(n))?;
            let (idx, value) = (1..=n)
                .map(|k| (k, p[k].norm()))
                .fold((1, 0.0), |acc, x| if x.1 > acc.1 { x } else { acc });
            let w = Witness {
                label: "subordinate".into(),
                trial: Some(i),
                schwarz: Some(b.clone()),
                index: Some(idx),
                value,
                bound: c1,
                coefficients: p.coeffs().to_vec(),
                ..Witness::default()
            };
            Ok((value / c1, w))
        })
        .collect();
    Ok(BoundCheckReport::from_observations("rogosinski", schwarz.len(), obs?))
}

/// `P_α - 1` as a series: the convex comparison function of the class.
pub fn p_alpha_minus_one(p: BoothParameter, order: usize) -> Result<TruncatedSeries> {
    Ok(p_alpha_coefficients(p, order, RotationConvention::Derived)?.add_constant(cx(-1.0, 0.0)))
}

/// Rogosinski check against `q = P_α - 1` with `w = z`, `w = z²` and
/// `trials` random Schwarz functions.
pub fn verify_rogosinski(p: BoothParameter, trials: usize, order: usize, seed: u64) -> Result<BoundCheckReport> {
    let q = p_alpha_minus_one(p, order)?;
    let mut ws = vec![
        BlaschkeSchwarz::identity(),
        // z² = z · (z - 0)/(1 - 0·z)
        BlaschkeSchwarz::new(cx(1.0, 0.0), vec![cx(0.0, 0.0)])?,
    ];
    ws.extend((0..trials).map(|t| random_schwarz(seed, t)));
    rogosinski_oracle(&q, &ws)
}

/// Coefficients `b_2`, `b_3` of `f⁻¹` from series reversion, next to the
/// closed forms `-a_2` and `2a_2² - a_3`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct InverseCoefficients {
    pub b2: Complex64,
    pub b3: Complex64,
    pub b2_closed: Complex64,
    pub b3_closed: Complex64,
}

impl InverseCoefficients {
    pub fn gap(&self) -> f64 {
        (self.b2 - self.b2_closed).norm().max((self.b3 - self.b3_closed).norm())
    }
}

pub fn inverse_coefficients(f: &TruncatedSeries) -> Result<InverseCoefficients> {
    if f.order() < 4 {
        return Err(Error::OrderTooSmall { required: 4, actual: f.order() });
    }
    if !f.is_normalized() {
        return Err(Error::NotNormalized);
    }
    let g = f.revert()?;
    let (a2, a3) = (f[2], f[3]);
    Ok(InverseCoefficients { b2: g[2], b3: g[3], b2_closed: -a2, b3_closed: 2.0 * a2 * a2 - a3 })
}

/// `|b_2| <= 1` and `|b_3| <= 3/2` over `f₀` and random members.
pub fn verify_inverse(p: BoothParameter, trials: usize, seed: u64) -> Result<BoundCheckReport> {
    let ms = members(p, trials, 4, seed)?;
    let obs: Result<Vec<(f64, f64, Witness)>> = ms
        .par_iter()
        .map(|m| {
            let inv = inverse_coefficients(&m.f)?;
            let r2 = inv.b2.norm();
            let r3 = inv.b3.norm() / 1.5;
            let mut w = m.witness(p, 4);
            if r3 > r2 {
                (w.index, w.value, w.bound) = (Some(3), inv.b3.norm(), 1.5);
            } else {
                (w.index, w.value, w.bound) = (Some(2), r2, 1.0);
            }
            Ok((r2.max(r3), inv.gap(), w))
        })
        .collect();
    let obs = obs?;
    let gap = obs.iter().map(|o| o.1).fold(0.0, f64::max);
    Ok(BoundCheckReport::from_observations("inverse_coefficients", ms.len(), obs.into_iter().map(|(r, _, w)| (r, w)))
        .with_extra("max_identity_gap", gap))
}

/// `min` and `max` of `|exp P̃_α(z)|` over `M` samples of `|z| = r`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct GrowthEnvelope {
    pub alpha: f64,
    pub radius: f64,
    pub samples: usize,
    pub min: f64,
    pub max: f64,
}

impl GrowthEnvelope {
    pub fn compute(p: BoothParameter, radius: f64, samples: usize) -> Result<Self> {
        p.require_below_one()?;
        if !(radius > 0.0 && radius < 1.0) || samples == 0 {
            return Err(Error::ParameterOutOfRange("growth envelope needs 0 < r < 1 and M > 0".into()));
        }
        let values: Result<Vec<f64>> = (0..samples)
            .into_par_iter()
            .map(|j| {
                let z = Complex64::from_polar(radius, TAU * j as f64 / samples as f64);
                Ok(p_alpha_tilde(p, z, RotationConvention::Derived)?.re.exp())
            })
            .collect();
        let values = values?;
        let min = values.iter().copied().fold(f64::INFINITY, f64::min);
        let max = values.iter().copied().fold(f64::NEG_INFINITY, f64::max);
        Ok(Self { alpha: p.alpha(), radius, samples, min, max })
    }
}

/// Checks `min <= |f(z)/z| <= max` on the envelope's circle. The ratio is
/// the larger of `|f/z| / max` and `min / |f/z|`.
pub fn member_growth_check(f: &TruncatedSeries, env: &GrowthEnvelope) -> Result<BoundCheckReport> {
    let q = f.divide_by_z()?;
    let obs = (0..env.samples).map(|j| {
        let z = Complex64::from_polar(env.radius, TAU * j as f64 / env.samples as f64);
        let m = q.evaluate(z).norm();
        let (ratio, value, bound) =
            if m / env.max >= env.min / m { (m / env.max, m, env.max) } else { (env.min / m, m, env.min) };
        let w = Witness {
            label: "growth".into(),
            alpha: Some(env.alpha),
            point: Some(z),
            value,
            bound,
            ..Witness::default()
        };
        (ratio, w)
    });
    Ok(BoundCheckReport::from_observations("growth", env.samples, obs)
        .with_extra("envelope_min", env.min)
        .with_extra("envelope_max", env.max))
}

/// Convex polygon approximating `P̃_α(Δ)` from its boundary samples at
/// radius [`POLYGON_RADIUS`], stored as half-planes `n_i · x <= h_i`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct LogImagePolygon {
    pub alpha: f64,
    pub vertices: Vec<Complex64>,
    normals: Vec<Complex64>,
    offsets: Vec<f64>,
}

impl LogImagePolygon {
    pub fn build(p: BoothParameter, vertices: usize, radius: f64) -> Result<Self> {
        p.require_below_one()?;
        if vertices < 3 {
            return Err(Error::DegeneratePolygon("fewer than 3 vertices".into()));
        }
        let pts: Result<Vec<Complex64>> = (0..vertices)
            .into_par_iter()
            .map(|j| p_alpha_tilde(p, Complex64::from_polar(radius, TAU * j as f64 / vertices as f64), RotationConvention::Derived))
            .collect();
        Self::from_vertices(p.alpha(), pts?)
    }

    /// Requires counter-clockwise, convex vertices around the origin.
    pub fn from_vertices(alpha: f64, vertices: Vec<Complex64>) -> Result<Self> {
        let m = vertices.len();
        let scale = vertices.iter().map(|v| v.norm()).fold(0.0, f64::max);
        let mut normals = Vec::with_capacity(m);
        let mut offsets = Vec::with_capacity(m);
        for i in 0..m {
            let (a, b, c) = (vertices[i], vertices[(i + 1) % m], vertices[(i + 2) % m]);
            let e = b - a;
            let f = c - b;
            if e.norm() == 0.0 {
                return Err(Error::DegeneratePolygon(format!("repeated vertex {i}")));
            }
            if e.re * f.im - e.im * f.re < -1e-12 * scale * scale {
                return Err(Error::DegeneratePolygon(format!("not convex at vertex {}", (i + 1) % m)));
            }
            let n = cx(e.im, -e.re) / e.norm();
            let h = n.re * a.re + n.im * a.im;
            if h <= 0.0 {
                return Err(Error::DegeneratePolygon("origin is not interior".into()));
            }
            normals.push(n);
            offsets.push(h);
        }
        Ok(Self { alpha, vertices, normals, offsets })
    }

    /// Minkowski gauge of `x` for the polygon grown outward by `margin`;
    /// `<= 1` exactly when `x` lies in the grown polygon.
    pub fn gauge(&self, x: Complex64, margin: f64) -> f64 {
        self.normals
            .iter()
            .zip(&self.offsets)
            .map(|(n, h)| (n.re * x.re + n.im * x.im) / (h + margin))
            .fold(f64::NEG_INFINITY, f64::max)
    }
}

/// Checks that `log(f(z)/z)` stays inside `P̃_α(Δ)` on the grid, using the
/// default polygon and margin.
pub fn log_subordination_check(f: &TruncatedSeries, p: BoothParameter, grid: &Grid) -> Result<BoundCheckReport> {
    let polygon = LogImagePolygon::build(p, POLYGON_VERTICES, POLYGON_RADIUS)?;
    log_subordination_in_polygon(f, &polygon, grid, POLYGON_MARGIN)
}

pub fn log_subordination_in_polygon(
    f: &TruncatedSeries,
    polygon: &LogImagePolygon,
    grid: &Grid,
    margin: f64,
) -> Result<BoundCheckReport> {
    let log_ratio = f.divide_by_z()?.log()?;
    let obs = grid.points().map(|z| {
        let v = log_ratio.evaluate(z);
        let w = Witness {
            label: "log_ratio".into(),
            alpha: Some(polygon.alpha),
            point: Some(z),
            value: v.norm(),
            bound: 1.0,
            coefficients: vec![v],
            ..Witness::default()
        };
        (polygon.gauge(v, margin), w)
    });
    let n = grid.radii.len() * grid.angular;
    Ok(BoundCheckReport::from_observations("log_subordination", n, obs))
}
