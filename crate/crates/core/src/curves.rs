//! Quartic plane curves related to the Booth lemniscate: the Persian
//! (spiric) curve, Cassini ovals and the Bernoulli lemniscate.
//!
//! All three are quadratic in `s = ρ²` along each ray, so they are traced
//! exactly from the polar roots. Connectivity is measured separately with a
//! marching-squares pass over the implicit equation.

use std::collections::HashMap;
use std::f64::consts::TAU;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geometry::{CurveSample, PlanePoint};

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum ClassicalCurve {
    /// `(x²+y²+p²+d²-r²)² = 4d²(x²+p²)`.
    Persian { r: f64, d: f64, p: f64 },
    /// `(x²+y²)² - 2c²(x²-y²) = a⁴ - c⁴`.
    Cassini { a: f64, c: f64 },
    /// `(x²+y²)² - 2a²(x²-y²) = 0`, polar `ρ² = 2a² cos 2φ`.
    Bernoulli { a: f64 },
}

impl ClassicalCurve {
    pub fn validate(&self) -> Result<()> {
        let params: &[f64] = match self {
            Self::Persian { r, d, p } => &[*r, *d, *p],
            Self::Cassini { a, c } => &[*a, *c],
            Self::Bernoulli { a } => &[*a],
        };
        if params.iter().any(|v| !v.is_finite() || *v < 0.0) {
            return Err(Error::ParameterOutOfRange("curve parameters must be finite and >= 0".into()));
        }
        Ok(())
    }

    /// Left-hand side minus right-hand side of the Cartesian equation.
    pub fn implicit(&self, x: f64, y: f64) -> f64 {
        let s = x * x + y * y;
        match *self {
            Self::Persian { r, d, p } => {
                let k = p * p + d * d - r * r;
                (s + k).powi(2) - 4.0 * d * d * (x * x + p * p)
            }
            Self::Cassini { a, c } => s * s - 2.0 * c * c * (x * x - y * y) - (a.powi(4) - c.powi(4)),
            Self::Bernoulli { a } => s * s - 2.0 * a * a * (x * x - y * y),
        }
    }

    /// Length scale used to make residuals dimensionless.
    pub fn scale(&self) -> f64 {
        match *self {
            Self::Persian { r, d, p } => r.max(d).max(p),
            Self::Cassini { a, c } => a.max(c),
            Self::Bernoulli { a } => a,
        }
        .max(f64::MIN_POSITIVE)
    }

    /// Strictly positive roots `s = ρ²` along the ray at angle `phi`, ascending.
    fn radial_roots(&self, phi: f64) -> Vec<f64> {
        let cos2 = (2.0 * phi).cos();
        match *self {
            Self::Bernoulli { a } => {
                let s = 2.0 * a * a * cos2;
                if s > 0.0 { vec![s] } else { vec![] }
            }
            Self::Cassini { a, c } if a == c => {
                let s = 2.0 * c * c * cos2;
                if s > 0.0 { vec![s] } else { vec![] }
            }
            Self::Cassini { a, c } => {
                positive_quadratic_roots(-2.0 * c * c * cos2, -(a.powi(4) - c.powi(4)))
            }
            Self::Persian { r, d, p } => {
                let k = p * p + d * d - r * r;
                let cos_sq = phi.cos().powi(2);
                positive_quadratic_roots(2.0 * k - 4.0 * d * d * cos_sq, k * k - 4.0 * d * d * p * p)
            }
        }
    }
}

/// Positive roots of `s² + b s + c = 0`, ascending.
fn positive_quadratic_roots(b: f64, c: f64) -> Vec<f64> {
    let disc = b * b - 4.0 * c;
    if disc < 0.0 {
        return vec![];
    }
    let sq = disc.sqrt();
    // Stable pairing: q = -(b + sign(b) sq)/2, roots q and c/q.
    let q = -0.5 * (b + b.signum() * sq);
    let mut roots = if q == 0.0 { vec![0.5 * sq, -0.5 * sq] } else { vec![q, c / q] };
    roots.retain(|s| *s > 0.0 && s.is_finite());
    roots.sort_by(f64::total_cmp);
    roots.dedup();
    roots
}

/// Traces the curve along `samples` uniformly spaced rays.
///
/// Each maximal run of consecutive rays with real roots becomes one loop:
/// the outer roots in increasing angle followed by the inner roots in
/// decreasing angle. Loops whose inner root degenerates to the origin (the
/// lemniscate lobes) consist of outer roots only.
pub fn classical_curves(curve: ClassicalCurve, samples: usize) -> Result<Vec<Vec<CurveSample>>> {
    curve.validate()?;
    if samples < 8 {
        return Err(Error::ParameterOutOfRange("curve tracing needs at least 8 samples".into()));
    }
    let rays: Vec<(f64, Vec<f64>)> = (0..samples)
        .map(|j| {
            let phi = TAU * j as f64 / samples as f64;
            (phi, curve.radial_roots(phi))
        })
        .collect();
    if rays.iter().all(|(_, r)| r.is_empty()) {
        return Err(Error::EmptyLocus);
    }

    let point = |phi: f64, s: f64| CurveSample {
        phi,
        point: PlanePoint::new(s.sqrt() * phi.cos(), s.sqrt() * phi.sin()),
    };

    // Every ray hits the curve: each root rank is a closed loop around the
    // origin (the root count is constant because the product of the roots
    // does not depend on the angle).
    let Some(first_empty) = rays.iter().position(|(_, r)| r.is_empty()) else {
        let ranks = rays.iter().map(|(_, r)| r.len()).min().unwrap_or(0);
        return Ok((0..ranks)
            .rev()
            .map(|rank| rays.iter().map(|(phi, r)| point(*phi, r[rank])).collect())
            .collect());
    };
    // Start the sweep just after an empty ray so that runs do not wrap.
    let start = first_empty + 1;
    let mut loops = Vec::new();
    let mut outer: Vec<CurveSample> = Vec::new();
    let mut inner: Vec<CurveSample> = Vec::new();
    for step in 0..samples {
        let (phi, roots) = &rays[(start + step) % samples];
        if roots.is_empty() {
            if !outer.is_empty() {
                inner.reverse();
                outer.append(&mut inner);
                loops.push(std::mem::take(&mut outer));
            }
            continue;
        }
        outer.push(point(*phi, *roots.last().unwrap()));
        if roots.len() > 1 {
            inner.push(point(*phi, roots[0]));
        }
    }
    if !outer.is_empty() {
        inner.reverse();
        outer.append(&mut inner);
        loops.push(outer);
    }
    Ok(loops)
}

/// Bounding box `(xmin, xmax, ymin, ymax)` of a set of loops.
pub fn extent<'a>(points: impl IntoIterator<Item = &'a PlanePoint>) -> Option<(f64, f64, f64, f64)> {
    points.into_iter().fold(None, |acc, p| {
        Some(match acc {
            None => (p.x, p.x, p.y, p.y),
            Some((x0, x1, y0, y1)) => (x0.min(p.x), x1.max(p.x), y0.min(p.y), y1.max(p.y)),
        })
    })
}

struct DisjointSet {
    parent: Vec<usize>,
}

impl DisjointSet {
    fn new() -> Self {
        Self { parent: Vec::new() }
    }

    fn make(&mut self) -> usize {
        self.parent.push(self.parent.len());
        self.parent.len() - 1
    }

    fn find(&mut self, mut i: usize) -> usize {
        while self.parent[i] != i {
            self.parent[i] = self.parent[self.parent[i]];
            i = self.parent[i];
        }
        i
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            self.parent[ra] = rb;
        }
    }
}

/// Number of connected components of the zero set of `f` inside the box,
/// by marching squares on a `cells × cells` grid.
///
/// Each sign-changing cell edge is a node; each contour segment inside a
/// cell joins two nodes. Saddle cells are disambiguated by the centre value.
pub fn count_components<F: Fn(f64, f64) -> f64>(
    f: F,
    (xmin, xmax, ymin, ymax): (f64, f64, f64, f64),
    cells: usize,
) -> usize {
    let n = cells;
    let hx = (xmax - xmin) / n as f64;
    let hy = (ymax - ymin) / n as f64;
    let values: Vec<Vec<f64>> = (0..=n)
        .map(|j| (0..=n).map(|i| f(xmin + i as f64 * hx, ymin + j as f64 * hy)).collect())
        .collect();
    let inside = |v: f64| v < 0.0;

    let mut sets = DisjointSet::new();
    // Edge key: (i, j, horizontal?) for the edge starting at grid node (i, j).
    let mut nodes: HashMap<(usize, usize, bool), usize> = HashMap::new();
    let mut node = |key: (usize, usize, bool), sets: &mut DisjointSet| -> usize {
        *nodes.entry(key).or_insert_with(|| sets.make())
    };

    for j in 0..n {
        for i in 0..n {
            let corners = [values[j][i], values[j][i + 1], values[j + 1][i + 1], values[j + 1][i]];
            // Edges in cyclic order: bottom, right, top, left.
            let edges = [(i, j, true), (i + 1, j, false), (i, j + 1, true), (i, j, false)];
            let crossing: Vec<usize> =
                (0..4).filter(|&e| inside(corners[e]) != inside(corners[(e + 1) % 4])).collect();
            match crossing.len() {
                2 => {
                    let a = node(edges[crossing[0]], &mut sets);
                    let b = node(edges[crossing[1]], &mut sets);
                    sets.union(a, b);
                }
                4 => {
                    let centre = f(xmin + (i as f64 + 0.5) * hx, ymin + (j as f64 + 0.5) * hy);
                    let ids: Vec<usize> = edges.iter().map(|&e| node(e, &mut sets)).collect();
                    // Pair edges around the corners that differ from the centre.
                    if inside(centre) == inside(corners[0]) {
                        sets.union(ids[0], ids[1]);
                        sets.union(ids[2], ids[3]);
                    } else {
                        sets.union(ids[3], ids[0]);
                        sets.union(ids[1], ids[2]);
                    }
                }
                _ => {}
            }
        }
    }
    let ids: Vec<usize> = (0..sets.parent.len()).collect();
    let mut roots: Vec<usize> = ids.into_iter().map(|i| sets.find(i)).collect();
    roots.sort_unstable();
    roots.dedup();
    roots.len()
}

/// Connected-component count of a classical curve, from marching squares on
/// a padded box around its traced points.
pub fn curve_components(curve: ClassicalCurve, cells: usize) -> Result<usize> {
    let loops = classical_curves(curve, 720)?;
    let (x0, x1, y0, y1) = extent(loops.iter().flatten().map(|s| &s.point)).ok_or(Error::EmptyLocus)?;
    let pad = 0.1 * (x1 - x0).max(y1 - y0).max(curve.scale() * 1e-3);
    Ok(count_components(|x, y| curve.implicit(x, y), (x0 - pad, x1 + pad, y0 - pad, y1 + pad), cells))
}
