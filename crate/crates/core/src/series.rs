//! Truncated power series over complex coefficients.
//!
//! A [`TruncatedSeries`] of order `N` stores `c_0..=c_N` and represents the
//! class of analytic germs agreeing with `c_0 + c_1 z + ... + c_N z^N` up to
//! `O(z^{N+1})`. Every operation returns exactly the coefficients that are
//! determined by its inputs: binary operations require equal orders, and
//! operations that lose information (differentiation, division by `z`)
//! report the smaller order in the result.

use std::fmt::Write as _;
use std::ops::Index;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Default truncation order used by verifiers and the CLI.
pub const DEFAULT_ORDER: usize = 32;
/// Largest order accepted by run configurations.
pub const MAX_ORDER: usize = 128;
/// Relative threshold below which a leading coefficient counts as zero.
pub const DIV_TOLERANCE: f64 = 1e-12;

const ZERO: Complex64 = Complex64::new(0.0, 0.0);
const ONE: Complex64 = Complex64::new(1.0, 0.0);

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "Vec<Complex64>", into = "Vec<Complex64>")]
pub struct TruncatedSeries {
    coeffs: Vec<Complex64>,
}

impl TryFrom<Vec<Complex64>> for TruncatedSeries {
    type Error = Error;

    fn try_from(coeffs: Vec<Complex64>) -> Result<Self> {
        Self::new(coeffs)
    }
}

impl From<TruncatedSeries> for Vec<Complex64> {
    fn from(s: TruncatedSeries) -> Self {
        s.coeffs
    }
}

impl Index<usize> for TruncatedSeries {
    type Output = Complex64;

    fn index(&self, n: usize) -> &Complex64 {
        &self.coeffs[n]
    }
}

impl TruncatedSeries {
    pub fn new(coeffs: Vec<Complex64>) -> Result<Self> {
        if coeffs.is_empty() {
            return Err(Error::EmptySeries);
        }
        if let Some(index) = coeffs.iter().position(|c| !c.re.is_finite() || !c.im.is_finite()) {
            return Err(Error::NonFiniteCoefficient { index });
        }
        Ok(Self { coeffs })
    }

    /// Builds a series from real coefficients, zero-padded up to `order`.
    pub fn from_real(coeffs: &[f64], order: usize) -> Result<Self> {
        let mut c = vec![ZERO; order + 1];
        for (slot, &v) in c.iter_mut().zip(coeffs) {
            *slot = Complex64::new(v, 0.0);
        }
        Self::new(c)
    }

    /// Builds a series from complex coefficients, zero-padded up to `order`.
    pub fn from_complex(coeffs: &[Complex64], order: usize) -> Result<Self> {
        let mut c = vec![ZERO; order + 1];
        for (slot, &v) in c.iter_mut().zip(coeffs) {
            *slot = v;
        }
        Self::new(c)
    }

    pub fn zero(order: usize) -> Self {
        Self { coeffs: vec![ZERO; order + 1] }
    }

    pub fn constant(value: Complex64, order: usize) -> Self {
        let mut s = Self::zero(order);
        s.coeffs[0] = value;
        s
    }

    /// The series `z` (truncated to `order`, so `order = 0` gives `0`).
    pub fn identity(order: usize) -> Self {
        Self::monomial(ONE, 1, order)
    }

    pub fn monomial(coeff: Complex64, power: usize, order: usize) -> Self {
        let mut s = Self::zero(order);
        if power <= order {
            s.coeffs[power] = coeff;
        }
        s
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[Complex64] {
        &self.coeffs
    }

    pub fn max_modulus(&self) -> f64 {
        self.coeffs.iter().map(|c| c.norm()).fold(0.0, f64::max)
    }

    /// Re-truncates to `min(order, self.order())`.
    pub fn truncated(&self, order: usize) -> Self {
        let n = order.min(self.order());
        Self { coeffs: self.coeffs[..=n].to_vec() }
    }

    pub fn conj_coeffs(&self) -> Self {
        Self { coeffs: self.coeffs.iter().map(|c| c.conj()).collect() }
    }

    fn check_same_order(&self, other: &Self) -> Result<()> {
        if self.order() != other.order() {
            return Err(Error::OrderMismatch { left: self.order(), right: other.order() });
        }
        Ok(())
    }

    /// Whether `|c_0|` is negligible relative to the largest coefficient.
    fn constant_is_zero(&self) -> bool {
        self.coeffs[0].norm() <= DIV_TOLERANCE * self.max_modulus().max(1.0)
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_same_order(other)?;
        Ok(Self { coeffs: self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a + b).collect() })
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.check_same_order(other)?;
        Ok(Self { coeffs: self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a - b).collect() })
    }

    pub fn scale(&self, factor: Complex64) -> Self {
        Self { coeffs: self.coeffs.iter().map(|c| c * factor).collect() }
    }

    pub fn add_constant(&self, value: Complex64) -> Self {
        let mut s = self.clone();
        s.coeffs[0] += value;
        s
    }

    /// Cauchy product truncated at the common order.
    pub fn multiply(&self, other: &Self) -> Result<Self> {
        self.check_same_order(other)?;
        let n = self.order();
        let mut out = vec![ZERO; n + 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if *a == ZERO {
                continue;
            }
            for (j, b) in other.coeffs[..=n - i].iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Ok(Self { coeffs: out })
    }

    /// Quotient `self / den`, requiring a non-negligible `den.c_0`.
    pub fn divide(&self, den: &Self) -> Result<Self> {
        self.check_same_order(den)?;
        let b0 = den.coeffs[0];
        if b0.norm() <= DIV_TOLERANCE * den.max_modulus() || b0 == ZERO {
            return Err(Error::NearZeroLeadingCoefficient { modulus: b0.norm() });
        }
        let n = self.order();
        let mut q = vec![ZERO; n + 1];
        for k in 0..=n {
            let mut acc = self.coeffs[k];
            for j in 1..=k {
                acc -= den.coeffs[j] * q[k - j];
            }
            q[k] = acc / b0;
        }
        Ok(Self { coeffs: q })
    }

    /// `exp(s)` via `n e_n = sum_{k=1}^{n} k s_k e_{n-k}`, from `e' = s' e`.
    pub fn exp(&self) -> Self {
        let n = self.order();
        let mut e = vec![ZERO; n + 1];
        e[0] = self.coeffs[0].exp();
        for m in 1..=n {
            let mut acc = ZERO;
            for k in 1..=m {
                acc += self.coeffs[k] * (k as f64) * e[m - k];
            }
            e[m] = acc / (m as f64);
        }
        Self { coeffs: e }
    }

    /// Principal logarithm of a series with constant term 1.
    pub fn log(&self) -> Result<Self> {
        let c0 = self.coeffs[0];
        if (c0 - ONE).norm() > DIV_TOLERANCE * self.max_modulus().max(1.0) {
            return Err(Error::LeadingCoefficientNotOne { re: c0.re, im: c0.im });
        }
        let n = self.order();
        let mut l = vec![ZERO; n + 1];
        // s l' = s'
        for m in 1..=n {
            let mut acc = self.coeffs[m] * (m as f64);
            for k in 1..m {
                acc -= l[k] * (k as f64) * self.coeffs[m - k];
            }
            l[m] = acc / (c0 * (m as f64));
        }
        Ok(Self { coeffs: l })
    }

    /// `s^exponent = exp(exponent * log s)` on a series with constant term 1.
    pub fn powc(&self, exponent: Complex64) -> Result<Self> {
        Ok(self.log()?.scale(exponent).exp())
    }

    /// `outer(inner(z))` by Horner accumulation; `inner` must vanish at 0.
    pub fn compose(outer: &Self, inner: &Self) -> Result<Self> {
        outer.check_same_order(inner)?;
        if !inner.constant_is_zero() {
            return Err(Error::NonzeroConstantTerm { modulus: inner.coeffs[0].norm() });
        }
        let mut inner = inner.clone();
        inner.coeffs[0] = ZERO;
        let n = outer.order();
        let mut acc = Self::constant(outer.coeffs[n], n);
        for k in (0..n).rev() {
            acc = acc.multiply(&inner)?;
            acc.coeffs[0] += outer.coeffs[k];
        }
        Ok(acc)
    }

    /// Derivative; the result has order `N - 1`.
    pub fn differentiate(&self) -> Result<Self> {
        if self.order() == 0 {
            return Err(Error::OrderTooSmall { required: 1, actual: 0 });
        }
        Ok(Self {
            coeffs: self.coeffs.iter().enumerate().skip(1).map(|(k, c)| c * k as f64).collect(),
        })
    }

    /// Antiderivative vanishing at 0, clipped back to order `N`.
    pub fn integrate_from_zero(&self) -> Self {
        let n = self.order();
        let mut out = vec![ZERO; n + 1];
        for k in 1..=n {
            out[k] = self.coeffs[k - 1] / (k as f64);
        }
        Self { coeffs: out }
    }

    /// `s(z) / z` for `s(0) = 0`; the result has order `N - 1`.
    pub fn divide_by_z(&self) -> Result<Self> {
        if self.order() == 0 {
            return Err(Error::OrderTooSmall { required: 1, actual: 0 });
        }
        if !self.constant_is_zero() {
            return Err(Error::NonzeroConstantTerm { modulus: self.coeffs[0].norm() });
        }
        Ok(Self { coeffs: self.coeffs[1..].to_vec() })
    }

    /// `z s(z)`; the result has order `N + 1`.
    pub fn shift_up(&self) -> Self {
        let mut coeffs = Vec::with_capacity(self.coeffs.len() + 1);
        coeffs.push(ZERO);
        coeffs.extend_from_slice(&self.coeffs);
        Self { coeffs }
    }

    /// `s(z^k)` keeping the order.
    pub fn substitute_power(&self, k: usize) -> Self {
        assert!(k >= 1, "substitution power must be positive");
        let n = self.order();
        let mut out = vec![ZERO; n + 1];
        for (j, c) in self.coeffs.iter().enumerate() {
            if j * k > n {
                break;
            }
            out[j * k] = *c;
        }
        Self { coeffs: out }
    }

    /// Compositional inverse `g` with `g(s(z)) = z + O(z^{N+1})`.
    ///
    /// Coefficients are solved one degree at a time from
    /// `sum_k g_k [z^n] s^k = [n == 1]`, using `[z^n] s^n = c_1^n`.
    pub fn revert(&self) -> Result<Self> {
        let n = self.order();
        if n == 0 {
            return Err(Error::OrderTooSmall { required: 1, actual: 0 });
        }
        if !self.constant_is_zero() {
            return Err(Error::NonzeroConstantTerm { modulus: self.coeffs[0].norm() });
        }
        let c1 = self.coeffs[1];
        if c1.norm() <= DIV_TOLERANCE * self.max_modulus() || c1 == ZERO {
            return Err(Error::NotInvertible { modulus: c1.norm() });
        }
        let mut s = self.clone();
        s.coeffs[0] = ZERO;

        let mut powers = Vec::with_capacity(n);
        powers.push(s.clone());
        for _ in 1..n {
            let next = powers.last().unwrap().multiply(&s)?;
            powers.push(next);
        }

        let mut g = vec![ZERO; n + 1];
        for m in 1..=n {
            let mut acc = if m == 1 { ONE } else { ZERO };
            for k in 1..m {
                acc -= g[k] * powers[k - 1].coeffs[m];
            }
            g[m] = acc / powers[m - 1].coeffs[m];
        }
        Ok(Self { coeffs: g })
    }

    /// Whether `c_0 = 0` and `c_1 = 1` within the division tolerance.
    pub fn is_normalized(&self) -> bool {
        let tol = DIV_TOLERANCE * self.max_modulus().max(1.0);
        self.order() >= 1 && self.coeffs[0].norm() <= tol && (self.coeffs[1] - ONE).norm() <= tol
    }

    /// The k-th root transform `[f(z^k)]^{1/k}` of a normalized `f`.
    ///
    /// Computed as `z exp((1/k) log(f(u)/u))` with `u = z^k`; only powers
    /// congruent to 1 mod k survive.
    pub fn kth_root_transform(&self, k: usize) -> Result<Self> {
        if k == 0 {
            return Err(Error::ParameterOutOfRange("root index k must be positive".into()));
        }
        if !self.is_normalized() {
            return Err(Error::NotNormalized);
        }
        let ratio = self.divide_by_z()?;
        let log_ratio = ratio.log()?.scale(Complex64::new(1.0 / k as f64, 0.0));
        Ok(log_ratio.substitute_power(k).exp().shift_up())
    }

    /// Horner evaluation of the truncated polynomial.
    ///
    /// Outside the unit disk the truncation error is unbounded; a warning
    /// is logged but the polynomial value is still returned.
    pub fn evaluate(&self, z: Complex64) -> Complex64 {
        if z.norm() >= 1.0 {
            log::warn!("evaluating truncated series at |z| = {} >= 1", z.norm());
        }
        self.coeffs.iter().rev().fold(ZERO, |acc, c| acc * z + c)
    }

    /// Value of the derivative of the truncated polynomial.
    pub fn evaluate_derivative(&self, z: Complex64) -> Complex64 {
        self.coeffs
            .iter()
            .enumerate()
            .skip(1)
            .rev()
            .fold(ZERO, |acc, (k, c)| acc * z + c * k as f64)
    }

    /// Writes the series document: a JSON-style list of `[re, im]` pairs,
    /// each value with 17 significant digits.
    pub fn to_document(&self) -> String {
        let mut out = String::from("[\n");
        for (k, c) in self.coeffs.iter().enumerate() {
            let sep = if k + 1 == self.coeffs.len() { "" } else { "," };
            let _ = writeln!(out, "  [{:.16e}, {:.16e}]{}", c.re, c.im, sep);
        }
        out.push_str("]\n");
        out
    }

    pub fn from_document(text: &str) -> Result<Self> {
        let pairs: Vec<[f64; 2]> =
            serde_json::from_str(text).map_err(|e| Error::Format(e.to_string()))?;
        Self::new(pairs.into_iter().map(|[re, im]| Complex64::new(re, im)).collect())
    }
}
