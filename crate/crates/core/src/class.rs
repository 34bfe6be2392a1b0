//! Members of `BS(α)`: construction from Schwarz functions, the extremal
//! function `f₀`, and sampled membership certification.
//!
//! `f ∈ BS(α)` iff `zf'/f - 1 ≺ F_α`. Because `F_α` is univalent for
//! `α < 1` and both sides vanish at the origin, subordination is the same as
//! the range of the transfer ratio `zf'/f - 1` lying in `D(α)`, which is what
//! [`certify_membership`] samples.

use std::f64::consts::TAU;

use num_complex::Complex64;
use rand::Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geometry::{f_alpha_series, scaled_indicator, BoothParameter, PlanePoint};
use crate::series::TruncatedSeries;

/// Accepted excess of `max |w(z)| - |z|` over the sampling grid.
pub const SCHWARZ_TOLERANCE: f64 = 1e-9;
pub const DEFAULT_RADII: [f64; 3] = [0.9, 0.99, 0.999];
pub const DEFAULT_ANGULAR: usize = 4096;
pub const DEFAULT_MARGIN: f64 = 1e-9;

const SCHWARZ_RADII: [f64; 3] = [0.5, 0.9, 0.99];
const SCHWARZ_ANGULAR: usize = 256;

/// Sampling grid of concentric circles `|z| = r_j` with `angular` points each.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Grid {
    pub radii: Vec<f64>,
    pub angular: usize,
}

impl Grid {
    pub fn new(radii: Vec<f64>, angular: usize) -> Result<Self> {
        if radii.is_empty() || radii.iter().any(|r| !(*r > 0.0 && *r < 1.0)) {
            return Err(Error::ParameterOutOfRange("grid radii must lie in (0, 1)".into()));
        }
        if angular == 0 {
            return Err(Error::ParameterOutOfRange("angular count must be positive".into()));
        }
        Ok(Self { radii, angular })
    }

    pub fn points(&self) -> impl Iterator<Item = Complex64> + '_ {
        self.radii.iter().flat_map(move |&r| {
            (0..self.angular).map(move |j| Complex64::from_polar(r, TAU * j as f64 / self.angular as f64))
        })
    }
}

impl Default for Grid {
    fn default() -> Self {
        Self { radii: DEFAULT_RADII.to_vec(), angular: DEFAULT_ANGULAR }
    }
}

/// A candidate Schwarz function and its sampled bound excess.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SchwarzSpec {
    pub w: TruncatedSeries,
    /// Maximum over the check grid of `|w(z)| - |z|`.
    pub bound_margin: f64,
}

impl SchwarzSpec {
    pub fn is_valid(&self) -> bool {
        self.bound_margin <= SCHWARZ_TOLERANCE
    }
}

/// Samples `|w(z)| - |z|` on the grid and records the maximum.
pub fn schwarz_check(w: &TruncatedSeries, grid: &Grid) -> Result<SchwarzSpec> {
    if w[0] != Complex64::new(0.0, 0.0) {
        return Err(Error::NonzeroConstantTerm { modulus: w[0].norm() });
    }
    let bound_margin = grid
        .points()
        .map(|z| w.evaluate(z).norm() - z.norm())
        .fold(f64::NEG_INFINITY, f64::max);
    Ok(SchwarzSpec { w: w.clone(), bound_margin })
}

/// `w(z) = ξ z ∏ (z - β_j)/(1 - conj(β_j) z)` with `|ξ| <= 1`, `|β_j| < 1`.
///
/// Satisfies `|w(z)| <= |z|` on the disk for every admissible choice, which
/// makes it a convenient generator for randomized checks.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BlaschkeSchwarz {
    pub xi: Complex64,
    pub zeros: Vec<Complex64>,
}

impl BlaschkeSchwarz {
    pub fn new(xi: Complex64, zeros: Vec<Complex64>) -> Result<Self> {
        if xi.norm() > 1.0 + 1e-15 {
            return Err(Error::ParameterOutOfRange(format!("|xi| = {} exceeds 1", xi.norm())));
        }
        if zeros.iter().any(|b| b.norm() >= 1.0) {
            return Err(Error::ParameterOutOfRange("Blaschke zeros must lie in the open disk".into()));
        }
        Ok(Self { xi, zeros })
    }

    pub fn identity() -> Self {
        Self { xi: Complex64::new(1.0, 0.0), zeros: vec![] }
    }

    /// Draws `|ξ| = U^{1/4}` (biased towards the boundary), up to
    /// `max_zeros` zeros uniformly in the disk of radius `max_zero_modulus`.
    pub fn random<R: Rng + ?Sized>(rng: &mut R, max_zeros: usize, max_zero_modulus: f64) -> Self {
        let xi = Complex64::from_polar(rng.gen::<f64>().powf(0.25), rng.gen_range(0.0..TAU));
        let m = rng.gen_range(0..=max_zeros);
        let zeros = (0..m)
            .map(|_| Complex64::from_polar(max_zero_modulus * rng.gen::<f64>().sqrt(), rng.gen_range(0.0..TAU)))
            .collect();
        Self { xi, zeros }
    }

    pub fn evaluate(&self, z: Complex64) -> Complex64 {
        self.zeros.iter().fold(self.xi * z, |acc, b| acc * (z - b) / (1.0 - b.conj() * z))
    }

    pub fn series(&self, order: usize) -> TruncatedSeries {
        let mut acc = TruncatedSeries::monomial(self.xi, 1, order);
        for b in &self.zeros {
            // (z - β)/(1 - β̄z) = -β + (1 - |β|²) Σ_{n>=1} β̄^{n-1} zⁿ
            let mut c = vec![Complex64::new(0.0, 0.0); order + 1];
            c[0] = -b;
            let mut pow = Complex64::new(1.0 - b.norm_sqr(), 0.0);
            for slot in c.iter_mut().skip(1) {
                *slot = pow;
                pow *= b.conj();
            }
            let factor = TruncatedSeries::new(c).expect("finite coefficients");
            acc = acc.multiply(&factor).expect("equal orders");
        }
        acc
    }

    /// The truncated series together with its sampled bound check.
    pub fn spec(&self, order: usize) -> Result<SchwarzSpec> {
        let grid = Grid { radii: SCHWARZ_RADII.to_vec(), angular: SCHWARZ_ANGULAR };
        schwarz_check(&self.series(order), &grid)
    }
}

/// `f(z) = z exp ∫_0^z F_α(w(t))/t dt`, the member generated by `w`.
pub fn construct_member(p: BoothParameter, w: &SchwarzSpec) -> Result<TruncatedSeries> {
    p.require_below_one()?;
    if !w.is_valid() {
        return Err(Error::SchwarzBoundViolated { margin: w.bound_margin });
    }
    let n = w.w.order();
    let composed = TruncatedSeries::compose(&f_alpha_series(p, n), &w.w)?;
    Ok(composed.divide_by_z()?.integrate_from_zero().exp().shift_up())
}

/// The member generated by `w(z) = z`:
/// `f₀(z) = z ((1 + √α z)/(1 - √α z))^{1/(2√α)}`, and `z eᶻ` at `α = 0`.
pub fn extremal_f0(p: BoothParameter, order: usize) -> Result<TruncatedSeries> {
    p.require_below_one()?;
    if order == 0 {
        return Err(Error::OrderTooSmall { required: 1, actual: 0 });
    }
    let n = order - 1;
    let a = p.alpha();
    let ratio_pow = if a == 0.0 {
        TruncatedSeries::identity(n).exp()
    } else {
        let s = a.sqrt();
        let num = TruncatedSeries::from_real(&[1.0, s], n)?;
        let den = TruncatedSeries::from_real(&[1.0, -s], n)?;
        num.divide(&den)?.powc(Complex64::new(1.0 / (2.0 * s), 0.0))?
    };
    Ok(ratio_pow.shift_up())
}

/// The Koebe function `z/(1-z)² = Σ n zⁿ`.
pub fn koebe(order: usize) -> TruncatedSeries {
    let c: Vec<f64> = (0..=order).map(|n| n as f64).collect();
    TruncatedSeries::from_real(&c, order).expect("finite coefficients")
}

/// `zf'/f - 1` for a normalized `f`, computed as `f' / (f/z) - 1`.
/// The result has order `N - 1`.
pub fn transfer_ratio(f: &TruncatedSeries) -> Result<TruncatedSeries> {
    if !f.is_normalized() {
        return Err(Error::NotNormalized);
    }
    let ratio = f.differentiate()?.divide(&f.divide_by_z()?)?;
    Ok(ratio.add_constant(Complex64::new(-1.0, 0.0)))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    CertifiedEmpirically,
    Rejected,
    Inconclusive,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct WorstPoint {
    pub z_re: f64,
    pub z_im: f64,
    pub w_re: f64,
    pub w_im: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct MembershipReport {
    pub verdict: Verdict,
    pub alpha: f64,
    pub order: usize,
    /// Minimum over samples of `-scaled_indicator(transfer(z))`.
    pub margin: f64,
    pub required_margin: f64,
    pub worst_point: WorstPoint,
    pub grid: Grid,
    /// Samples strictly outside `D(α)` or the class strip.
    pub violations: usize,
}

/// Samples the transfer ratio on the grid and checks that every value lies
/// in `D(α)` with the requested margin and inside the class strip.
///
/// This is a sampling method: a positive verdict is `CertifiedEmpirically`,
/// never a proof of subordination.
pub fn certify_membership(
    p: BoothParameter,
    f: &TruncatedSeries,
    grid: &Grid,
    margin: f64,
) -> Result<MembershipReport> {
    let a = p.require_below_one()?.alpha();
    Grid::new(grid.radii.clone(), grid.angular)?;
    if margin.is_nan() || margin < 0.0 {
        return Err(Error::ParameterOutOfRange("margin must be non-negative".into()));
    }
    let transfer = transfer_ratio(f)?;
    let (strip_lo, strip_hi) = (1.0 / (a - 1.0), 1.0 / (1.0 - a));

    let points: Vec<Complex64> = grid.points().collect();
    // (slack, strictly violating) per sample, in grid order.
    let samples: Vec<(f64, bool)> = points
        .par_iter()
        .map(|&z| {
            let w = transfer.evaluate(z);
            let slack = -scaled_indicator(p, PlanePoint::from(w)).expect("alpha < 1");
            let in_strip = strip_lo < w.re && w.re < strip_hi;
            (slack, slack < 0.0 || !in_strip)
        })
        .collect();

    // Strict minimum: ties resolve to the smallest radius, then angle index.
    let mut worst = 0;
    for (i, s) in samples.iter().enumerate() {
        if s.0 < samples[worst].0 {
            worst = i;
        }
    }
    let violations = samples.iter().filter(|s| s.1).count();
    let min_slack = samples[worst].0;
    let verdict = if violations > 0 {
        Verdict::Rejected
    } else if min_slack > margin {
        Verdict::CertifiedEmpirically
    } else {
        Verdict::Inconclusive
    };
    let z = points[worst];
    let w = transfer.evaluate(z);
    Ok(MembershipReport {
        verdict,
        alpha: a,
        order: f.order(),
        margin: min_slack,
        required_margin: margin,
        worst_point: WorstPoint { z_re: z.re, z_im: z.im, w_re: w.re, w_im: w.im },
        grid: grid.clone(),
        violations,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::in_d_alpha;

    fn alpha(a: f64) -> BoothParameter {
        BoothParameter::new(a).unwrap()
    }

    fn cx(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn schwarz_margins() {
        let grid = Grid::new(vec![0.3, 0.9], 64).unwrap();
        let id = schwarz_check(&TruncatedSeries::identity(8), &grid).unwrap();
        assert_eq!(id.bound_margin, 0.0);
        let sq = schwarz_check(&TruncatedSeries::monomial(cx(1.0, 0.0), 2, 8), &grid).unwrap();
        assert!((sq.bound_margin - (0.9 * 0.9 - 0.9)).abs() < 1e-15);
        let double = schwarz_check(&TruncatedSeries::identity(8).scale(cx(2.0, 0.0)), &grid).unwrap();
        assert!(double.bound_margin > 0.5 && !double.is_valid());
        assert!(schwarz_check(&TruncatedSeries::constant(cx(0.1, 0.0), 3), &grid).is_err());
    }

    #[test]
    fn blaschke_series_matches_closed_form() {
        let b = BlaschkeSchwarz::new(cx(0.6, -0.8), vec![cx(0.3, 0.2), cx(-0.4, 0.1)]).unwrap();
        let s = b.series(60);
        let z = cx(0.5, -0.3);
        assert!((s.evaluate(z) - b.evaluate(z)).norm() < 1e-14);
        assert!(b.spec(24).unwrap().is_valid());
        assert!(BlaschkeSchwarz::new(cx(1.5, 0.0), vec![]).is_err());
    }

    #[test]
    fn members_from_simple_schwarz_functions() {
        let id = BlaschkeSchwarz::identity().spec(6).unwrap();
        let f = construct_member(alpha(0.0), &id).unwrap();
        let fact = [1.0, 1.0, 1.0, 0.5, 1.0 / 6.0, 1.0 / 24.0, 1.0 / 120.0];
        for n in 1..=6 {
            assert!((f[n] - cx(fact[n], 0.0)).norm() < 1e-15, "a_{n}");
        }
        let a = 0.37;
        let f = construct_member(alpha(a), &id).unwrap();
        assert!((f[2] - cx(1.0, 0.0)).norm() < 1e-15);
        assert!((f[3] - cx(0.5, 0.0)).norm() < 1e-15);
        assert!((f[4] - cx(1.0 / 6.0 + a / 3.0, 0.0)).norm() < 1e-15);

        let zero = schwarz_check(&TruncatedSeries::zero(5), &Grid::default()).unwrap();
        assert_eq!(construct_member(alpha(0.4), &zero).unwrap(), TruncatedSeries::identity(5));

        let bad = schwarz_check(&TruncatedSeries::identity(5).scale(cx(2.0, 0.0)), &Grid::default()).unwrap();
        assert!(matches!(construct_member(alpha(0.4), &bad), Err(Error::SchwarzBoundViolated { .. })));
        assert!(construct_member(alpha(1.0), &id).is_err());
    }

    #[test]
    fn extremal_coefficients() {
        // Reference values from a symbolic expansion.
        let f = extremal_f0(alpha(0.3), 8).unwrap();
        let want = [0.0, 1.0, 1.0, 0.5, 4.0 / 15.0, 17.0 / 120.0, 229.0 / 3000.0, 739.0 / 18000.0, 1.0 / 45.0];
        for n in 0..=8 {
            assert!((f[n] - cx(want[n], 0.0)).norm() < 1e-14, "a_{n} = {}", f[n]);
        }
        let f = extremal_f0(alpha(0.5), 8).unwrap();
        let want = [0.0, 1.0, 1.0, 0.5, 1.0 / 3.0, 5.0 / 24.0, 17.0 / 120.0, 67.0 / 720.0, 23.0 / 360.0];
        for n in 0..=8 {
            assert!((f[n] - cx(want[n], 0.0)).norm() < 1e-14, "a_{n} = {}", f[n]);
        }
        let e = extremal_f0(alpha(0.0), 5).unwrap();
        assert!((e[5] - cx(1.0 / 24.0, 0.0)).norm() < 1e-16);
    }

    #[test]
    fn f0_agrees_with_constructed_member() {
        for a in [0.0, 0.1, 0.5, 0.9] {
            let f0 = extremal_f0(alpha(a), 32).unwrap();
            let m = construct_member(alpha(a), &BlaschkeSchwarz::identity().spec(32).unwrap()).unwrap();
            for n in 0..=32 {
                assert!((f0[n] - m[n]).norm() < 1e-10, "alpha {a} n {n}");
            }
            let t = transfer_ratio(&f0).unwrap();
            let want = f_alpha_series(alpha(a), 31);
            for n in 0..=31 {
                assert!((t[n] - want[n]).norm() < 1e-10);
            }
        }
    }

    #[test]
    fn transfer_ratio_examples() {
        assert_eq!(transfer_ratio(&TruncatedSeries::identity(5)).unwrap(), TruncatedSeries::zero(4));
        let zez = TruncatedSeries::identity(7).exp().multiply(&TruncatedSeries::identity(7)).unwrap();
        let t = transfer_ratio(&zez).unwrap();
        assert!(t.sub(&TruncatedSeries::identity(6)).unwrap().max_modulus() < 1e-15);
        let t = transfer_ratio(&koebe(8)).unwrap();
        assert!(t[0].norm() < 1e-15);
        for n in 1..=7 {
            assert!((t[n] - cx(2.0, 0.0)).norm() < 1e-13);
        }
        assert_eq!(transfer_ratio(&TruncatedSeries::from_real(&[0.0, 2.0], 3).unwrap()), Err(Error::NotNormalized));
    }

    #[test]
    fn certification_verdicts() {
        let p = alpha(0.5);
        let grid = Grid::new(vec![0.9, 0.99, 0.999], 2048).unwrap();
        let f0 = extremal_f0(p, 64).unwrap();
        let r = certify_membership(p, &f0, &grid, DEFAULT_MARGIN).unwrap();
        assert_eq!(r.verdict, Verdict::CertifiedEmpirically);
        assert!(r.margin > 0.0 && r.violations == 0);

        let k = certify_membership(p, &koebe(32), &grid, DEFAULT_MARGIN).unwrap();
        assert_eq!(k.verdict, Verdict::Rejected);
        let w = PlanePoint::new(k.worst_point.w_re, k.worst_point.w_im);
        assert!(!in_d_alpha(p, w, 0.0));
        assert!((cx(k.worst_point.z_re, k.worst_point.z_im).norm() - 0.999).abs() < 1e-12);

        let id = certify_membership(p, &TruncatedSeries::identity(8), &grid, DEFAULT_MARGIN).unwrap();
        assert_eq!(id.verdict, Verdict::CertifiedEmpirically);
        assert_eq!(id.margin, 1.0);

        assert!(certify_membership(alpha(1.0), &f0, &grid, DEFAULT_MARGIN).is_err());
        assert!(Grid::new(vec![1.0], 8).is_err());
    }

    #[test]
    fn inconclusive_when_margin_not_met() {
        let p = alpha(0.5);
        let grid = Grid::new(vec![0.5], 64).unwrap();
        let f0 = extremal_f0(p, 48).unwrap();
        let r = certify_membership(p, &f0, &grid, 10.0).unwrap();
        assert_eq!(r.verdict, Verdict::Inconclusive);
    }
}
