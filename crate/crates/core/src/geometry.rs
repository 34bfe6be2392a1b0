//! The Booth-lemniscate map `F_α(z) = z / (1 - α z²)`, its image region
//! `D(α)`, and the vertical-strip map `P_{α,β}` used for the strip
//! characterisation of the class.

use std::f64::consts::{PI, TAU};

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::quadrature;
use crate::series::TruncatedSeries;

/// `3 - 2√2`: largest α for which `F_α` is convex.
pub const CONVEXITY_LIMIT: f64 = 3.0 - 2.0 * std::f64::consts::SQRT_2;
/// Half-width tolerance on `|x|` for the slit test of `D(1)`.
pub const SLIT_TOLERANCE: f64 = 1e-9;
/// Absolute tolerance for the `P̃_α` line integral.
pub const QUADRATURE_TOLERANCE: f64 = 1e-10;

const POLE_GUARD: f64 = 1e-12;

#[derive(Clone, Copy, Debug, PartialEq, PartialOrd, Serialize, Deserialize)]
#[serde(try_from = "f64", into = "f64")]
pub struct BoothParameter(f64);

impl BoothParameter {
    pub fn new(alpha: f64) -> Result<Self> {
        if !(0.0..=1.0).contains(&alpha) {
            return Err(Error::ParameterOutOfRange(format!("alpha = {alpha} must lie in [0, 1]")));
        }
        Ok(Self(alpha))
    }

    pub fn alpha(self) -> f64 {
        self.0
    }

    /// Fails for `α = 1`, where the image is a slit plane rather than a
    /// bounded lemniscate interior.
    pub fn require_below_one(self) -> Result<Self> {
        if self.0 >= 1.0 {
            return Err(Error::ParameterOutOfRange("operation requires alpha < 1".into()));
        }
        Ok(self)
    }

    /// Whether the coefficient estimate `|a_n| <= 1` is covered by theory.
    pub fn within_convexity_range(self) -> bool {
        self.0 <= CONVEXITY_LIMIT
    }
}

impl TryFrom<f64> for BoothParameter {
    type Error = Error;

    fn try_from(alpha: f64) -> Result<Self> {
        Self::new(alpha)
    }
}

impl From<BoothParameter> for f64 {
    fn from(p: BoothParameter) -> f64 {
        p.0
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct PlanePoint {
    pub x: f64,
    pub y: f64,
}

impl PlanePoint {
    pub fn new(x: f64, y: f64) -> Self {
        Self { x, y }
    }

    pub fn to_complex(self) -> Complex64 {
        Complex64::new(self.x, self.y)
    }
}

impl From<Complex64> for PlanePoint {
    fn from(w: Complex64) -> Self {
        Self { x: w.re, y: w.im }
    }
}

/// A sampled curve point together with the angle that produced it.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct CurveSample {
    pub phi: f64,
    pub point: PlanePoint,
}

/// Bounds of the vertical strip `lower < Re w < upper`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct StripParams {
    lower: f64,
    upper: f64,
}

impl StripParams {
    pub fn new(lower: f64, upper: f64) -> Result<Self> {
        if !(lower.is_finite() && upper.is_finite() && lower < 1.0 && 1.0 < upper) {
            return Err(Error::ParameterOutOfRange(format!(
                "strip bounds must satisfy lower < 1 < upper, got ({lower}, {upper})"
            )));
        }
        Ok(Self { lower, upper })
    }

    /// The strip `α/(α-1) < Re w < (2-α)/(1-α)` containing `zf'/f` for
    /// every member of the class.
    pub fn for_class(p: BoothParameter) -> Result<Self> {
        let a = p.require_below_one()?.alpha();
        Self::new(a / (a - 1.0), (2.0 - a) / (1.0 - a))
    }

    pub fn lower(self) -> f64 {
        self.lower
    }

    pub fn upper(self) -> f64 {
        self.upper
    }

    pub fn width(self) -> f64 {
        self.upper - self.lower
    }

    /// `(1 - lower) / (upper - lower)`; the rotation angle is `2π` times this.
    pub fn rotation_ratio(self) -> f64 {
        (1.0 - self.lower) / self.width()
    }

    pub fn rotation(self) -> Complex64 {
        Complex64::from_polar(1.0, TAU * self.rotation_ratio())
    }
}

/// Which rotation factor to use inside `P_α`.
///
/// `Derived` inserts the class strip into the general strip map, which
/// makes the factor exactly `-1`. `Printed` uses `exp(iπ(1-α)²)`; the two
/// agree only at `α = 0`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum RotationConvention {
    #[default]
    Derived,
    Printed,
}

/// `F_α(z) = z / (1 - α z²)`.
pub fn eval_f_alpha(p: BoothParameter, z: Complex64) -> Result<Complex64> {
    let den = 1.0 - p.alpha() * z * z;
    if den.norm() <= POLE_GUARD {
        return Err(Error::PoleProximity { re: z.re, im: z.im });
    }
    Ok(z / den)
}

/// Taylor series `z + Σ αⁿ z^{2n+1}` truncated at `order`.
pub fn f_alpha_series(p: BoothParameter, order: usize) -> TruncatedSeries {
    let mut c = vec![Complex64::new(0.0, 0.0); order + 1];
    let mut power = 1.0;
    for k in (1..=order).step_by(2) {
        c[k] = Complex64::new(power, 0.0);
        power *= p.alpha();
    }
    TruncatedSeries::new(c).expect("finite coefficients")
}

fn lemniscate_axes(a: f64) -> (f64, f64) {
    (1.0 / (1.0 - a), 1.0 / (1.0 + a))
}

/// The quartic `(x²+y²)² - x²/(1-α)² - y²/(1+α)²`, negative inside `D(α)`.
pub fn booth_indicator(p: BoothParameter, pt: PlanePoint) -> Result<f64> {
    let (ax, ay) = lemniscate_axes(p.require_below_one()?.alpha());
    let r2 = pt.x * pt.x + pt.y * pt.y;
    Ok(r2 * r2 - (pt.x * ax).powi(2) - (pt.y * ay).powi(2))
}

/// Scale-free form of [`booth_indicator`]: `ρ² / ρ_b(θ)² - 1`, where
/// `ρ_b(θ)` is the boundary radius in the direction of the point. Same sign
/// as the quartic away from the origin; equals `-1` at the origin.
pub fn scaled_indicator(p: BoothParameter, pt: PlanePoint) -> Result<f64> {
    let (ax, ay) = lemniscate_axes(p.require_below_one()?.alpha());
    let r2 = pt.x * pt.x + pt.y * pt.y;
    if r2 == 0.0 {
        return Ok(-1.0);
    }
    let boundary_r2 = ((pt.x * ax).powi(2) + (pt.y * ay).powi(2)) / r2;
    Ok(r2 / boundary_r2 - 1.0)
}

/// Membership in `D(α)`. For `α < 1` the origin is always inside and other
/// points need `scaled_indicator < -margin`; for `α = 1` the plane minus the
/// slits `{it : |t| >= 1/2}`.
pub fn in_d_alpha(p: BoothParameter, pt: PlanePoint, margin: f64) -> bool {
    if p.alpha() >= 1.0 {
        return !(pt.x.abs() <= SLIT_TOLERANCE && pt.y.abs() >= 0.5 - SLIT_TOLERANCE);
    }
    if pt.x == 0.0 && pt.y == 0.0 {
        return true;
    }
    scaled_indicator(p, pt).map(|s| s < -margin).unwrap_or(false)
}

pub fn sample_angles(samples: usize) -> impl Iterator<Item = f64> {
    (0..samples).map(move |j| TAU * j as f64 / samples as f64)
}

/// `F_α(e^{iφ_j})` at `φ_j = 2πj/M`.
pub fn boundary_curve(p: BoothParameter, samples: usize) -> Result<Vec<CurveSample>> {
    p.require_below_one()?;
    if samples < 8 {
        return Err(Error::ParameterOutOfRange("boundary curve needs at least 8 samples".into()));
    }
    sample_angles(samples)
        .map(|phi| {
            let w = eval_f_alpha(p, Complex64::from_polar(1.0, phi))?;
            Ok(CurveSample { phi, point: w.into() })
        })
        .collect()
}

/// Closed form of `Re F_α(e^{iφ}) = (1-α)cos φ / (1 + α² - 2α cos 2φ)`.
pub fn re_f_alpha_on_circle(p: BoothParameter, phi: f64) -> Result<f64> {
    let a = p.require_below_one()?.alpha();
    Ok((1.0 - a) * phi.cos() / (1.0 + a * a - 2.0 * a * (2.0 * phi).cos()))
}

/// `g(x) = (1-α)x / (1 + α² - 2α(2x² - 1))`, the real part above with `x = cos φ`.
pub fn g_profile(p: BoothParameter, x: f64) -> Result<f64> {
    let a = p.alpha();
    if !(a > 0.0 && a < 1.0) {
        return Err(Error::ParameterOutOfRange("g profile needs 0 < alpha < 1".into()));
    }
    if !(-1.0..=1.0).contains(&x) {
        return Err(Error::ParameterOutOfRange(format!("x = {x} must lie in [-1, 1]")));
    }
    Ok((1.0 - a) * x / (1.0 + a * a - 2.0 * a * (2.0 * x * x - 1.0)))
}

// Log(1 + u) with a short series near zero to avoid cancellation in 1 + u.
fn ln_1p(u: Complex64) -> Complex64 {
    if u.norm() < 1e-4 {
        u - u * u / 2.0 + u * u * u / 3.0 - u * u * u * u / 4.0
    } else {
        (1.0 + u).ln()
    }
}

/// `P(z) - 1 = i (width/π) [Log(1 - e^{iθ} z) - Log(1 - z)]` for a given
/// rotation factor `e^{iθ}` and strip width.
fn strip_increment(width: f64, rotation: Complex64, z: Complex64) -> Result<Complex64> {
    if z.norm() >= 1.0 {
        return Err(Error::OutsideDisk { re: z.re, im: z.im });
    }
    // Both factors lie in the right half-plane on the disk, so the principal
    // logarithms are continuous along every radius.
    let num = 1.0 - rotation * z;
    let den = 1.0 - z;
    if num.re <= 0.0 || den.re <= 0.0 {
        return Err(Error::BranchDiscontinuity { re: z.re, im: z.im });
    }
    Ok(Complex64::new(0.0, width / PI) * (ln_1p(-rotation * z) - ln_1p(-z)))
}

/// Strip map onto `{lower < Re w < upper}`.
pub fn strip_map(sp: StripParams, z: Complex64) -> Result<Complex64> {
    Ok(1.0 + strip_increment(sp.width(), sp.rotation(), z)?)
}

fn strip_series(width: f64, rotation: Complex64, order: usize) -> TruncatedSeries {
    let mut c = vec![Complex64::new(1.0, 0.0); order + 1];
    let mut rot_n = Complex64::new(1.0, 0.0);
    for (n, slot) in c.iter_mut().enumerate().skip(1) {
        rot_n *= rotation;
        *slot = Complex64::new(0.0, width / (n as f64 * PI)) * (1.0 - rot_n);
    }
    TruncatedSeries::new(c).expect("finite coefficients")
}

/// `1 + Σ B_n zⁿ`, `B_n = (width/(nπ)) i (1 - e^{2nπi(1-lower)/width})`.
pub fn strip_coefficients(sp: StripParams, order: usize) -> TruncatedSeries {
    strip_series(sp.width(), sp.rotation(), order)
}

fn p_alpha_shape(p: BoothParameter, convention: RotationConvention) -> Result<(f64, Complex64)> {
    let sp = StripParams::for_class(p)?;
    let rotation = match convention {
        RotationConvention::Derived => Complex64::new(-1.0, 0.0),
        RotationConvention::Printed => Complex64::from_polar(1.0, PI * (1.0 - p.alpha()).powi(2)),
    };
    Ok((sp.width(), rotation))
}

/// `P_α`: the strip map onto the class strip.
pub fn p_alpha(p: BoothParameter, z: Complex64, convention: RotationConvention) -> Result<Complex64> {
    let (width, rotation) = p_alpha_shape(p, convention)?;
    Ok(1.0 + strip_increment(width, rotation, z)?)
}

pub fn p_alpha_coefficients(
    p: BoothParameter,
    order: usize,
    convention: RotationConvention,
) -> Result<TruncatedSeries> {
    let (width, rotation) = p_alpha_shape(p, convention)?;
    Ok(strip_series(width, rotation, order))
}

/// `P̃_α(z) = ∫_0^z (P_α(t) - 1)/t dt`, integrated along the segment `[0, z]`.
///
/// With `t = s z` the integrand becomes `(P_α(sz) - 1)/s`, whose value at
/// `s = 0` is the linear coefficient `B_1 z`.
pub fn p_alpha_tilde(p: BoothParameter, z: Complex64, convention: RotationConvention) -> Result<Complex64> {
    let (width, rotation) = p_alpha_shape(p, convention)?;
    if z.norm() >= 1.0 {
        return Err(Error::OutsideDisk { re: z.re, im: z.im });
    }
    if z == Complex64::new(0.0, 0.0) {
        return Ok(z);
    }
    let b1 = Complex64::new(0.0, width / PI) * (1.0 - rotation);
    let b2 = Complex64::new(0.0, width / (2.0 * PI)) * (1.0 - rotation * rotation);
    let integrand = |s: f64| -> Complex64 {
        if s * z.norm() < 1e-8 {
            return b1 * z + b2 * z * z * s;
        }
        // |sz| < 1 on the open segment, so this cannot fail.
        strip_increment(width, rotation, z * s).expect("point inside the disk") / s
    };
    quadrature::integrate(integrand, 0.0, 1.0, QUADRATURE_TOLERANCE)
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ConvexityReport {
    pub alpha: f64,
    pub samples: usize,
    pub min_curvature: f64,
    pub min_curvature_phi: f64,
    pub max_curvature: f64,
    /// `min_curvature >= -1e-9`.
    pub convex: bool,
    /// `α <= 3 - 2√2`, where convexity is expected.
    pub expected_convex: bool,
}

/// Signed discrete (three-point) curvature of `φ ↦ F_α(e^{iφ})`.
pub fn convexity_probe(p: BoothParameter, samples: usize) -> Result<ConvexityReport> {
    let pts: Vec<Complex64> =
        boundary_curve(p, samples)?.into_iter().map(|s| s.point.to_complex()).collect();
    let m = pts.len();
    let mut min_curvature = f64::INFINITY;
    let mut min_curvature_phi = 0.0;
    let mut max_curvature = f64::NEG_INFINITY;
    for j in 0..m {
        let a = pts[(j + m - 1) % m];
        let b = pts[j];
        let c = pts[(j + 1) % m];
        let u = b - a;
        let v = c - b;
        let cross = u.re * v.im - u.im * v.re;
        let kappa = 2.0 * cross / (u.norm() * v.norm() * (c - a).norm());
        if kappa < min_curvature {
            min_curvature = kappa;
            min_curvature_phi = TAU * j as f64 / m as f64;
        }
        max_curvature = max_curvature.max(kappa);
    }
    Ok(ConvexityReport {
        alpha: p.alpha(),
        samples,
        min_curvature,
        min_curvature_phi,
        max_curvature,
        convex: min_curvature >= -1e-9,
        expected_convex: p.within_convexity_range(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn alpha(a: f64) -> BoothParameter {
        BoothParameter::new(a).unwrap()
    }

    fn cx(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn parameter_range() {
        assert!(BoothParameter::new(-0.1).is_err());
        assert!(BoothParameter::new(1.1).is_err());
        assert!(BoothParameter::new(f64::NAN).is_err());
        assert!(alpha(1.0).require_below_one().is_err());
        assert!(alpha(0.17).within_convexity_range());
        assert!(!alpha(0.172).within_convexity_range());
    }

    #[test]
    fn f_alpha_values() {
        let z = cx(0.3, -0.7);
        assert_eq!(eval_f_alpha(alpha(0.0), z).unwrap(), z);
        assert!((eval_f_alpha(alpha(0.5), cx(1.0, 0.0)).unwrap() - cx(2.0, 0.0)).norm() < 1e-15);
        assert!((eval_f_alpha(alpha(1.0), cx(0.0, 1.0)).unwrap() - cx(0.0, 0.5)).norm() < 1e-15);
        assert!(matches!(eval_f_alpha(alpha(1.0), cx(1.0, 0.0)), Err(Error::PoleProximity { .. })));
    }

    #[test]
    fn f_alpha_series_shape() {
        let s = f_alpha_series(alpha(0.0), 6);
        assert_eq!(s, TruncatedSeries::identity(6));
        let s = f_alpha_series(alpha(0.5), 5);
        assert_eq!(s, TruncatedSeries::from_real(&[0.0, 1.0, 0.0, 0.5, 0.0, 0.25], 5).unwrap());
        let n = 20;
        let s = f_alpha_series(alpha(0.5), n);
        let z = cx(0.4, 0.0);
        let tail = (0.5f64 * 0.16).powi((n / 2) as i32);
        assert!((s.evaluate(z) - eval_f_alpha(alpha(0.5), z).unwrap()).norm() <= tail);
    }

    #[test]
    fn indicator_values() {
        let p = alpha(0.5);
        assert_eq!(booth_indicator(p, PlanePoint::new(0.0, 0.0)).unwrap(), 0.0);
        assert!((booth_indicator(p, PlanePoint::new(1.9, 0.0)).unwrap() + 1.4079).abs() < 1e-12);
        assert!((booth_indicator(p, PlanePoint::new(2.1, 0.0)).unwrap() - 1.8081).abs() < 1e-12);
        assert!(booth_indicator(alpha(1.0), PlanePoint::new(0.1, 0.0)).is_err());
    }

    #[test]
    fn region_membership() {
        for a in [0.0, 0.3, 0.9] {
            assert!(in_d_alpha(alpha(a), PlanePoint::new(0.0, 0.0), 0.0));
        }
        assert!(in_d_alpha(alpha(0.5), PlanePoint::new(0.0, 0.5), 0.0));
        assert!(!in_d_alpha(alpha(0.5), PlanePoint::new(2.1, 0.0), 0.0));
        assert!(!in_d_alpha(alpha(1.0), PlanePoint::new(0.0, 0.6), 0.0));
        assert!(!in_d_alpha(alpha(1.0), PlanePoint::new(0.0, -0.5), 0.0));
        assert!(in_d_alpha(alpha(1.0), PlanePoint::new(0.0, 0.4), 0.0));
        assert!(in_d_alpha(alpha(1.0), PlanePoint::new(1e-6, 3.0), 0.0));
    }

    #[test]
    fn boundary_intercepts() {
        let pts = boundary_curve(alpha(0.5), 8).unwrap();
        assert!((pts[0].point.x - 2.0).abs() < 1e-15 && pts[0].point.y.abs() < 1e-15);
        assert!(pts[2].point.x.abs() < 1e-15 && (pts[2].point.y - 2.0 / 3.0).abs() < 1e-15);
        for s in boundary_curve(alpha(0.0), 64).unwrap() {
            assert!((s.point.to_complex().norm() - 1.0).abs() < 1e-15);
        }
        assert!(boundary_curve(alpha(0.5), 7).is_err());
        assert!(boundary_curve(alpha(1.0), 64).is_err());
    }

    #[test]
    fn boundary_points_satisfy_quartic() {
        for a in [0.0, 0.2, 0.5, 0.95] {
            for s in boundary_curve(alpha(a), 1000).unwrap() {
                assert!(scaled_indicator(alpha(a), s.point).unwrap().abs() < 1e-10);
            }
        }
    }

    #[test]
    fn real_part_on_circle() {
        let p = alpha(0.5);
        assert!((re_f_alpha_on_circle(p, 0.0).unwrap() - 2.0).abs() < 1e-15);
        assert!((re_f_alpha_on_circle(p, PI).unwrap() + 2.0).abs() < 1e-15);
        assert!(re_f_alpha_on_circle(p, PI / 2.0).unwrap().abs() < 1e-15);
        for j in 0..200 {
            let phi = 0.0314 * j as f64;
            let direct = eval_f_alpha(p, Complex64::from_polar(1.0, phi)).unwrap().re;
            assert!((direct - re_f_alpha_on_circle(p, phi).unwrap()).abs() < 1e-12);
        }
    }

    #[test]
    fn g_profile_values() {
        let p = alpha(0.5);
        assert_eq!(g_profile(p, 0.0).unwrap(), 0.0);
        assert!((g_profile(p, 1.0).unwrap() - 2.0).abs() < 1e-15);
        assert!((g_profile(p, -1.0).unwrap() + 2.0).abs() < 1e-15);
        assert!(g_profile(alpha(0.0), 0.5).is_err());
        assert!(g_profile(p, 1.5).is_err());
    }

    #[test]
    fn strip_map_basics() {
        let sp = StripParams::new(-0.5, 2.0).unwrap();
        assert_eq!(strip_map(sp, cx(0.0, 0.0)).unwrap(), cx(1.0, 0.0));
        assert!(StripParams::new(1.0, 2.0).is_err());
        assert!(matches!(strip_map(sp, cx(1.0, 0.0)), Err(Error::OutsideDisk { .. })));
        let class = StripParams::for_class(alpha(0.3)).unwrap();
        assert!((class.rotation_ratio() - 0.5).abs() < 1e-15);
        assert!((class.rotation() + 1.0).norm() < 1e-15);
    }

    #[test]
    fn strip_coefficient_values() {
        let p = alpha(0.0);
        let b = strip_coefficients(StripParams::for_class(p).unwrap(), 4);
        assert!((b[1] - cx(0.0, 4.0 / PI)).norm() < 1e-15);
        assert!(b[2].norm() < 1e-15);
        assert!((b[1].norm() - 1.273_239_544_735_162_7).abs() < 1e-12);
        let a = 0.4;
        let b = strip_coefficients(StripParams::for_class(alpha(a)).unwrap(), 3);
        assert!((b[1] - cx(0.0, 4.0 / ((1.0 - a) * PI))).norm() < 1e-14);
        // Homogeneous in the width at a fixed rotation ratio.
        let narrow = strip_coefficients(StripParams::new(0.0, 4.0).unwrap(), 5);
        let wide = strip_coefficients(StripParams::new(-2.0, 10.0).unwrap(), 5);
        for n in 1..=5 {
            assert!((wide[n] - narrow[n] * 3.0).norm() < 1e-13);
        }
    }

    #[test]
    fn p_alpha_conventions_agree_at_zero_alpha() {
        let z = cx(0.2, 0.5);
        let d = p_alpha(alpha(0.0), z, RotationConvention::Derived).unwrap();
        let p = p_alpha(alpha(0.0), z, RotationConvention::Printed).unwrap();
        assert!((d - p).norm() < 1e-15);
        let d = p_alpha(alpha(0.4), z, RotationConvention::Derived).unwrap();
        let p = p_alpha(alpha(0.4), z, RotationConvention::Printed).unwrap();
        assert!((d - p).norm() > 1e-3);
        assert_eq!(p_alpha(alpha(0.4), cx(0.0, 0.0), RotationConvention::Derived).unwrap(), cx(1.0, 0.0));
    }

    #[test]
    #[allow(clippy::excessive_precision)]
    fn p_alpha_tilde_matches_high_precision_reference() {
        let p = alpha(0.3);
        assert_eq!(p_alpha_tilde(p, cx(0.0, 0.0), RotationConvention::Derived).unwrap(), cx(0.0, 0.0));
        // References from 30-digit tanh-sinh quadrature.
        let cases = [
            (cx(0.7, 0.0), cx(0.0, 1.359_215_978_663_367_8)),
            (cx(0.5, 0.4), cx(-0.771_849_422_922_037_9, 0.879_024_223_067_388_0)),
            (cx(0.0, 0.999), cx(-1.664_633_477_740_218_9, 0.0)),
        ];
        for (z, want) in cases {
            let got = p_alpha_tilde(p, z, RotationConvention::Derived).unwrap();
            assert!((got - want).norm() < 1e-9, "z = {z}: {got} vs {want}");
        }
    }

    #[test]
    fn convexity_of_unit_circle() {
        let r = convexity_probe(alpha(0.0), 1000).unwrap();
        assert!((r.min_curvature - 1.0).abs() < 1e-5 && (r.max_curvature - 1.0).abs() < 1e-5);
        assert!(r.convex && r.expected_convex);
    }
}
