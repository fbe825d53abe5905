//! Lᵖ norms over R^{2n} and Euclidean balls for arbitrary p ≥ 1.
//!
//! Composite Gauss–Legendre in every radial variable, equal-angle rules on
//! circles/spheres, and log-shifted accumulation throughout so integrands
//! whose p-th powers overflow f64 still integrate. Each result is accepted
//! only when doubling every node count moves it by less than the target;
//! failure to converge within the node budget is an explicit error.
//!
//! Fast paths: functions with an exact radial profile integrate in one
//! radial dimension (full space, and over balls via exact spherical-cap
//! slicing); single-monomial Gaussians drop their angular factors. Both are
//! cross-checked against the generic tensor grids in the tests.

use crate::error::{Error, Result};
use crate::evaluator::{Evaluator, MonomialShape};
use crate::par;
use crate::special::ln_gamma;
use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use std::collections::HashMap;
use std::f64::consts::PI;
use std::sync::{Arc, Mutex, OnceLock};

/// Integration domain in R^{2n}.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub enum Domain {
    FullSpace,
    Ball { center: Vec<f64>, radius: f64 },
}

impl Domain {
    pub fn ball_at_origin(n: usize, radius: f64) -> Self {
        Domain::Ball {
            center: vec![0.0; 2 * n],
            radius,
        }
    }

    fn validate(&self, n: usize) -> Result<()> {
        match self {
            Domain::FullSpace => Ok(()),
            Domain::Ball { center, radius } => {
                if center.len() != 2 * n {
                    return Err(Error::DimensionMismatch(center.len(), 2 * n));
                }
                if !(*radius > 0.0) || !radius.is_finite() {
                    return Err(Error::InvalidParameter(format!(
                        "ball radius must be positive and finite, got {radius}"
                    )));
                }
                Ok(())
            }
        }
    }

    fn center_distance(&self) -> f64 {
        match self {
            Domain::FullSpace => 0.0,
            Domain::Ball { center, .. } => center.iter().map(|x| x * x).sum::<f64>().sqrt(),
        }
    }
}

/// Node budgets and convergence targets for the quadrature engine.
#[derive(Clone, Copy, Debug, Serialize, Deserialize, PartialEq)]
pub struct QuadSpec {
    pub radial_nodes: usize,
    pub angular_nodes: usize,
    pub tail_radius_multiplier: f64,
    pub target_rel_err: f64,
    /// How many times the node counts may double before non-convergence is
    /// reported.
    pub max_doublings: u32,
}

impl Default for QuadSpec {
    fn default() -> Self {
        Self {
            radial_nodes: 256,
            angular_nodes: 64,
            tail_radius_multiplier: 3.0,
            target_rel_err: 1e-8,
            max_doublings: 5,
        }
    }
}

impl QuadSpec {
    fn validate(&self) -> Result<()> {
        if self.radial_nodes == 0 || self.angular_nodes == 0 {
            return Err(Error::InvalidParameter(
                "node counts must be positive".into(),
            ));
        }
        if self.tail_radius_multiplier < 1.0 {
            return Err(Error::InvalidParameter(
                "tail radius multiplier must be ≥ 1".into(),
            ));
        }
        if !(self.target_rel_err > 0.0) {
            return Err(Error::InvalidParameter("target_rel_err must be > 0".into()));
        }
        if self.max_doublings < 1 {
            return Err(Error::InvalidParameter(
                "need at least one doubling to estimate the error".into(),
            ));
        }
        Ok(())
    }
}

/// A converged quadrature value with its observed refinement error.
#[derive(Clone, Copy, Debug, Serialize, Deserialize)]
pub struct QuadResult {
    pub value: f64,
    pub log_value: f64,
    pub rel_err: f64,
    pub levels: u32,
}

/// ‖u‖ₚ over the domain, with the doubling-based error estimate.
pub fn lp_norm_numeric(
    u: &dyn Evaluator,
    p: f64,
    dom: &Domain,
    spec: &QuadSpec,
) -> Result<QuadResult> {
    if !p.is_finite() || p < 1.0 {
        return Err(Error::InvalidParameter(format!(
            "lp_norm_numeric needs finite p ≥ 1, got {p}"
        )));
    }
    dom.validate(u.ncomplex())?;
    spec.validate()?;
    let mut prev: Option<f64> = None;
    for level in 0..=spec.max_doublings {
        let ln_norm = ln_lp_pow(u, p, dom, spec, level) / p;
        if let Some(pl) = prev {
            let change = rel_change(pl, ln_norm);
            if change < spec.target_rel_err {
                return Ok(QuadResult {
                    value: ln_norm.exp(),
                    log_value: ln_norm,
                    rel_err: change.max(f64::EPSILON),
                    levels: level,
                });
            }
        }
        prev = Some(ln_norm);
    }
    let last = prev.unwrap_or(f64::NEG_INFINITY);
    Err(Error::QuadratureNonConvergence {
        last: last.exp(),
        change: f64::NAN,
        levels: spec.max_doublings,
        detail: format!(
            "lp norm p={p}, radial_nodes={}, angular_nodes={}",
            spec.radial_nodes, spec.angular_nodes
        ),
    })
}

fn rel_change(old_ln: f64, new_ln: f64) -> f64 {
    if old_ln == f64::NEG_INFINITY && new_ln == f64::NEG_INFINITY {
        return 0.0;
    }
    if !old_ln.is_finite() || !new_ln.is_finite() {
        return f64::INFINITY;
    }
    ((old_ln - new_ln).exp() - 1.0).abs()
}

/// ln ∫_dom |u|^p dz at the given refinement level.
fn ln_lp_pow(u: &dyn Evaluator, p: f64, dom: &Domain, spec: &QuadSpec, level: u32) -> f64 {
    let n = u.ncomplex();
    match dom {
        Domain::FullSpace => {
            if u.radial_profile().is_some() {
                ln_radial_full(u, p, spec, level)
            } else if let Some(shape) = u.monomial_structure() {
                ln_monomial_full(u, &shape, p, spec, level)
            } else {
                ln_tensor_full(u, p, spec, level)
            }
        }
        Domain::Ball { center, radius } => {
            if u.radial_profile().is_some() {
                ln_radial_ball(u, p, dom.center_distance(), *radius, spec, level)
            } else {
                ln_hypersphere_ball(u, p, center, *radius, spec, level, n)
            }
        }
    }
}

// --- Gauss–Legendre machinery ----------------------------------------------

const PANEL_ORDER: usize = 16;
const CHUNK: usize = 4096;

/// Nodes and weights on [−1, 1], cached per order.
fn gauss_legendre(order: usize) -> Arc<(Vec<f64>, Vec<f64>)> {
    static CACHE: OnceLock<Mutex<HashMap<usize, Arc<(Vec<f64>, Vec<f64>)>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(hit) = cache.lock().unwrap().get(&order) {
        return hit.clone();
    }
    let mut xs = vec![0.0; order];
    let mut ws = vec![0.0; order];
    let m = order.div_ceil(2);
    for i in 0..m {
        // Newton iteration from the Chebyshev-based initial guess
        let mut z = (PI * (i as f64 + 0.75) / (order as f64 + 0.5)).cos();
        let mut dp = 0.0;
        for _ in 0..100 {
            let mut p0 = 1.0;
            let mut p1 = 0.0;
            for j in 0..order {
                let p2 = p1;
                p1 = p0;
                p0 = ((2 * j + 1) as f64 * z * p1 - j as f64 * p2) / (j + 1) as f64;
            }
            dp = order as f64 * (z * p0 - p1) / (z * z - 1.0);
            let step = p0 / dp;
            z -= step;
            if step.abs() < 1e-15 {
                break;
            }
        }
        xs[i] = -z;
        xs[order - 1 - i] = z;
        let w = 2.0 / ((1.0 - z * z) * dp * dp);
        ws[i] = w;
        ws[order - 1 - i] = w;
    }
    let arc = Arc::new((xs, ws));
    cache.lock().unwrap().insert(order, arc.clone());
    arc
}

/// Composite Gauss–Legendre rule on [a, b] with roughly `total` nodes,
/// split into fixed-order panels.
fn composite_gl(a: f64, b: f64, total: usize) -> Vec<(f64, f64)> {
    if b <= a {
        return Vec::new();
    }
    let panels = (total / PANEL_ORDER).max(1);
    let rule = gauss_legendre(PANEL_ORDER);
    let (xs, ws) = &*rule;
    let h = (b - a) / panels as f64;
    let mut out = Vec::with_capacity(panels * PANEL_ORDER);
    for panel in 0..panels {
        let mid = a + (panel as f64 + 0.5) * h;
        let half = 0.5 * h;
        for i in 0..PANEL_ORDER {
            out.push((mid + half * xs[i], half * ws[i]));
        }
    }
    out
}

/// Deterministic log-sum-exp over `total` indexed contributions, chunked for
/// parallel evaluation: chunk boundaries are fixed and chunks combine in
/// index order, so the result is independent of the worker count.
fn ln_sum_indexed(total: usize, f: impl Fn(usize) -> f64 + Sync) -> f64 {
    let nchunks = total.div_ceil(CHUNK);
    let partials: Vec<(f64, f64)> = par::map_range(nchunks, |ci| {
        let lo = ci * CHUNK;
        let hi = ((ci + 1) * CHUNK).min(total);
        let vals: Vec<f64> = (lo..hi).map(&f).collect();
        let local_max = vals.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
        if local_max == f64::NEG_INFINITY {
            return (f64::NEG_INFINITY, 0.0);
        }
        let sum: f64 = vals
            .iter()
            .filter(|v| v.is_finite())
            .map(|v| (v - local_max).exp())
            .sum();
        (local_max, sum)
    });
    let global_max = partials
        .iter()
        .map(|(m, _)| *m)
        .fold(f64::NEG_INFINITY, f64::max);
    if global_max == f64::NEG_INFINITY {
        return f64::NEG_INFINITY;
    }
    let mut total_sum = 0.0;
    for (m, s) in &partials {
        if m.is_finite() {
            total_sum += s * (m - global_max).exp();
        }
    }
    global_max + total_sum.ln()
}

/// Same chunking discipline for plain complex sums (values of moderate
/// scale).
fn complex_sum_indexed(total: usize, f: impl Fn(usize) -> Complex64 + Sync) -> Complex64 {
    let nchunks = total.div_ceil(CHUNK);
    let partials: Vec<Complex64> = par::map_range(nchunks, |ci| {
        let lo = ci * CHUNK;
        let hi = ((ci + 1) * CHUNK).min(total);
        let mut acc = Complex64::new(0.0, 0.0);
        for i in lo..hi {
            acc += f(i);
        }
        acc
    });
    partials
        .into_iter()
        .fold(Complex64::new(0.0, 0.0), |a, b| a + b)
}

/// Surface area of the unit sphere S^m ⊂ R^{m+1}.
pub fn sphere_surface_area(m: usize) -> f64 {
    2.0 * (0.5 * (m as f64 + 1.0) * PI.ln() - ln_gamma(0.5 * (m as f64 + 1.0))).exp()
}

/// ∫₀^θ sinᵐ(x) dx by the standard reduction.
fn sin_power_integral(m: usize, theta: f64) -> f64 {
    let (s, c) = theta.sin_cos();
    let mut even = theta; // I₀
    let mut odd = 1.0 - c; // I₁
    if m == 0 {
        return even;
    }
    if m == 1 {
        return odd;
    }
    for mm in 2..=m {
        let prev = if mm % 2 == 0 { even } else { odd };
        let val = ((mm - 1) as f64 * prev - s.powi((mm - 1) as i32) * c) / mm as f64;
        if mm % 2 == 0 {
            even = val;
        } else {
            odd = val;
        }
    }
    if m % 2 == 0 {
        even
    } else {
        odd
    }
}

/// Angular measure on S^{d−1} of the cap {ω : |r·ω − c| ≤ R} as a function
/// of r, |c| and R: the exact slicing of a ball by origin-centered spheres.
fn cap_measure(d: usize, r: f64, dist: f64, radius: f64) -> f64 {
    if dist * r < 1e-14 {
        // concentric: full sphere or nothing
        return if r <= radius + 1e-14 {
            sphere_surface_area(d - 1)
        } else {
            0.0
        };
    }
    let cos_t = ((r * r + dist * dist - radius * radius) / (2.0 * r * dist)).clamp(-1.0, 1.0);
    let theta0 = cos_t.acos();
    if theta0 <= 0.0 {
        return 0.0;
    }
    if d == 2 {
        return 2.0 * theta0;
    }
    sphere_surface_area(d - 2) * sin_power_integral(d - 2, theta0)
}

// --- concrete engines -------------------------------------------------------

fn ln_radial_full(u: &dyn Evaluator, p: f64, spec: &QuadSpec, level: u32) -> f64 {
    let prof = u.radial_profile().expect("radial path requires a profile");
    let d = 2 * u.ncomplex();
    let r_max = spec.tail_radius_multiplier * u.tail_radius();
    let nodes = composite_gl(0.0, r_max, spec.radial_nodes << level);
    let ln_sphere = sphere_surface_area(d - 1).ln();
    ln_sum_indexed(nodes.len(), |i| {
        let (r, w) = nodes[i];
        let lv = prof.eval_log(r);
        if lv.is_zero() {
            return f64::NEG_INFINITY;
        }
        p * lv.ln_mag + (d as f64 - 1.0) * r.ln() + w.ln() + ln_sphere
    })
}

fn ln_radial_ball(
    u: &dyn Evaluator,
    p: f64,
    dist: f64,
    radius: f64,
    spec: &QuadSpec,
    level: u32,
) -> f64 {
    let prof = u.radial_profile().expect("radial path requires a profile");
    let d = 2 * u.ncomplex();
    // radial pieces split at the kink of the cap formula
    let mut pieces: Vec<(f64, f64)> = Vec::new();
    if dist < 1e-14 {
        pieces.push((0.0, radius));
    } else if dist < radius {
        pieces.push((0.0, radius - dist));
        pieces.push((radius - dist, radius + dist));
    } else {
        pieces.push((dist - radius, dist + radius));
    }
    let total_len: f64 = pieces.iter().map(|(a, b)| b - a).sum();
    let budget = spec.radial_nodes << level;
    let mut nodes: Vec<(f64, f64)> = Vec::new();
    for (a, b) in pieces {
        let share = (((b - a) / total_len) * budget as f64).ceil() as usize;
        nodes.extend(composite_gl(a, b, share.max(2 * PANEL_ORDER)));
    }
    ln_sum_indexed(nodes.len(), |i| {
        let (r, w) = nodes[i];
        let cap = cap_measure(d, r, dist, radius);
        if cap <= 0.0 {
            return f64::NEG_INFINITY;
        }
        let lv = prof.eval_log(r);
        if lv.is_zero() {
            return f64::NEG_INFINITY;
        }
        p * lv.ln_mag + (d as f64 - 1.0) * r.ln() + cap.ln() + w.ln()
    })
}

fn ln_monomial_full(
    u: &dyn Evaluator,
    shape: &MonomialShape,
    p: f64,
    spec: &QuadSpec,
    level: u32,
) -> f64 {
    let n = u.ncomplex();
    let r_max = spec.tail_radius_multiplier * u.tail_radius();
    let nodes = composite_gl(0.0, r_max, spec.radial_nodes << level);
    let per = nodes.len();
    let total = per.pow(n as u32);
    ln_sum_indexed(total, |flat| {
        let mut idx = flat;
        let mut ln_val = shape.ln_coeff;
        let mut ln_w = 0.0;
        let mut rsq = 0.0;
        for j in 0..n {
            let (r, w) = nodes[idx % per];
            idx /= per;
            if shape.pow[j] > 0.0 {
                ln_val += shape.pow[j] * r.ln();
            }
            ln_w += (2.0 * PI * r * w).ln();
            rsq += r * r;
        }
        ln_val -= 0.5 * shape.t * rsq;
        p * ln_val + ln_w
    })
}

fn ln_tensor_full(u: &dyn Evaluator, p: f64, spec: &QuadSpec, level: u32) -> f64 {
    let n = u.ncomplex();
    let r_max = spec.tail_radius_multiplier * u.tail_radius() + u.center_offset();
    let radial = composite_gl(0.0, r_max, spec.radial_nodes << level);
    let na = spec.angular_nodes << level;
    // one polar subgrid shared by every complex coordinate
    let dtheta = 2.0 * PI / na as f64;
    let mut sub: Vec<(Complex64, f64)> = Vec::with_capacity(radial.len() * na);
    for &(r, w) in &radial {
        for l in 0..na {
            let theta = dtheta * l as f64;
            sub.push((Complex64::from_polar(r, theta), (r * w * dtheta).ln()));
        }
    }
    let per = sub.len();
    let total = per.pow(n as u32);
    ln_sum_indexed(total, |flat| {
        let mut idx = flat;
        let mut z = vec![Complex64::new(0.0, 0.0); n];
        let mut ln_w = 0.0;
        for zj in z.iter_mut() {
            let (point, lw) = sub[idx % per];
            idx /= per;
            *zj = point;
            ln_w += lw;
        }
        let lv = u.eval_log(&z);
        if lv.is_zero() {
            return f64::NEG_INFINITY;
        }
        p * lv.ln_mag + ln_w
    })
}

fn ln_hypersphere_ball(
    u: &dyn Evaluator,
    p: f64,
    center: &[f64],
    radius: f64,
    spec: &QuadSpec,
    level: u32,
    n: usize,
) -> f64 {
    let d = 2 * n;
    let radial = composite_gl(0.0, radius, spec.radial_nodes << level);
    let na = spec.angular_nodes << level;
    // polar angles θ₁..θ_{d−2} on [0, π] by composite Gauss–Legendre,
    // azimuth by the trapezoid rule
    let polar = composite_gl(0.0, PI, na.max(PANEL_ORDER));
    let naz = na.max(4);
    let dphi = 2.0 * PI / naz as f64;
    let npolar = d - 2;
    let per_polar = polar.len();
    let total = radial.len() * per_polar.pow(npolar as u32) * naz;
    ln_sum_indexed(total, |flat| {
        let mut idx = flat;
        let (rho, wr) = radial[idx % radial.len()];
        idx /= radial.len();
        let mut ln_w = (d as f64 - 1.0) * rho.ln() + wr.ln() + dphi.ln();
        let mut dir = vec![0.0f64; d];
        let mut sin_prod = 1.0;
        for i in 0..npolar {
            let (theta, wt) = polar[idx % per_polar];
            idx /= per_polar;
            let (s, c) = theta.sin_cos();
            dir[i] = sin_prod * c;
            sin_prod *= s;
            ln_w += ((d - 2 - i) as f64) * s.ln() + wt.ln();
        }
        let phi = dphi * (idx as f64);
        dir[d - 2] = sin_prod * phi.cos();
        dir[d - 1] = sin_prod * phi.sin();
        let z: Vec<Complex64> = (0..n)
            .map(|j| {
                Complex64::new(
                    center[2 * j] + rho * dir[2 * j],
                    center[2 * j + 1] + rho * dir[2 * j + 1],
                )
            })
            .collect();
        if !ln_w.is_finite() {
            return f64::NEG_INFINITY;
        }
        let lv = u.eval_log(&z);
        if lv.is_zero() {
            return f64::NEG_INFINITY;
        }
        p * lv.ln_mag + ln_w
    })
}

// --- raw integrals (moderate scales) -----------------------------------------

/// Numeric full-space inner product ⟨u, v⟩ = ∫ u·v̄ with a doubling error
/// estimate measured against max(|value|, 1), so near-orthogonal pairs of
/// normalized functions converge in the absolute sense.
pub fn inner_numeric(
    u: &dyn Evaluator,
    v: &dyn Evaluator,
    spec: &QuadSpec,
) -> Result<(Complex64, f64)> {
    if u.ncomplex() != v.ncomplex() {
        return Err(Error::DimensionMismatch(u.ncomplex(), v.ncomplex()));
    }
    spec.validate()?;
    let n = u.ncomplex();
    let r_max = spec.tail_radius_multiplier * u.tail_radius().max(v.tail_radius())
        + u.center_offset().max(v.center_offset());
    let mut prev: Option<Complex64> = None;
    for level in 0..=spec.max_doublings {
        let radial = composite_gl(0.0, r_max, spec.radial_nodes << level);
        let na = spec.angular_nodes << level;
        let dtheta = 2.0 * PI / na as f64;
        let mut sub: Vec<(Complex64, f64)> = Vec::with_capacity(radial.len() * na);
        for &(r, w) in &radial {
            for l in 0..na {
                sub.push((Complex64::from_polar(r, dtheta * l as f64), r * w * dtheta));
            }
        }
        let per = sub.len();
        let total = per.pow(n as u32);
        let value = complex_sum_indexed(total, |flat| {
            let mut idx = flat;
            let mut z = vec![Complex64::new(0.0, 0.0); n];
            let mut weight = 1.0;
            for zj in z.iter_mut() {
                let (point, w) = sub[idx % per];
                idx /= per;
                *zj = point;
                weight *= w;
            }
            let lu = u.eval_log(&z);
            let lv = v.eval_log(&z);
            if lu.is_zero() || lv.is_zero() {
                return Complex64::new(0.0, 0.0);
            }
            Complex64::from_polar((lu.ln_mag + lv.ln_mag).exp(), lu.arg - lv.arg) * weight
        });
        if let Some(pv) = prev {
            let change = (value - pv).norm() / value.norm().max(1.0);
            if change < spec.target_rel_err {
                return Ok((value, change));
            }
        }
        prev = Some(value);
    }
    Err(Error::QuadratureNonConvergence {
        last: prev.map(|v| v.norm()).unwrap_or(0.0),
        change: f64::NAN,
        levels: spec.max_doublings,
        detail: "inner product".into(),
    })
}

/// ∫_{B_R(0)} F(|z|) dz for a radial complex integrand of moderate scale.
pub fn integrate_radial_fn_ball(
    f: impl Fn(f64) -> Complex64 + Sync,
    n: usize,
    radius: f64,
    spec: &QuadSpec,
) -> Result<(Complex64, f64)> {
    spec.validate()?;
    if !(radius > 0.0) {
        return Err(Error::InvalidParameter("radius must be positive".into()));
    }
    let d = 2 * n;
    let sphere = sphere_surface_area(d - 1);
    let mut prev: Option<Complex64> = None;
    for level in 0..=spec.max_doublings {
        let nodes = composite_gl(0.0, radius, spec.radial_nodes << level);
        let value = complex_sum_indexed(nodes.len(), |i| {
            let (r, w) = nodes[i];
            f(r) * (sphere * r.powi((d - 1) as i32) * w)
        });
        if let Some(pv) = prev {
            let change = (value - pv).norm() / value.norm().max(1.0);
            if change < spec.target_rel_err {
                return Ok((value, change));
            }
        }
        prev = Some(value);
    }
    Err(Error::QuadratureNonConvergence {
        last: prev.map(|v| v.norm()).unwrap_or(0.0),
        change: f64::NAN,
        levels: spec.max_doublings,
        detail: "radial ball integral".into(),
    })
}

/// Central finite difference of the radial profile of a radial, real-valued
/// evaluator at radius r > 0.
pub fn radial_profile_derivative(u: &dyn Evaluator, r: f64, h: f64) -> Result<f64> {
    if !(r > 0.0) {
        return Err(Error::InvalidParameter(format!(
            "radial derivative needs r > 0, got {r}"
        )));
    }
    let h = h.min(0.5 * r).max(1e-9);
    let n = u.ncomplex();
    let at = |rr: f64| -> f64 {
        let mut z = vec![Complex64::new(0.0, 0.0); n];
        z[0] = Complex64::new(rr, 0.0);
        u.eval(&z).re
    };
    Ok((at(r + h) - at(r - h)) / (2.0 * h))
}

/// A materialized full-space tensor-polar grid for algorithms that need
/// node-level access (the nonlinear power iteration).
pub struct QuadGrid {
    pub points: Vec<Vec<Complex64>>,
    pub weights: Vec<f64>,
}

pub fn full_space_grid(
    n: usize,
    r_max: f64,
    radial_nodes: usize,
    angular_nodes: usize,
) -> QuadGrid {
    let radial = composite_gl(0.0, r_max, radial_nodes);
    let dtheta = 2.0 * PI / angular_nodes as f64;
    let mut sub: Vec<(Complex64, f64)> = Vec::with_capacity(radial.len() * angular_nodes);
    for &(r, w) in &radial {
        for l in 0..angular_nodes {
            sub.push((Complex64::from_polar(r, dtheta * l as f64), r * w * dtheta));
        }
    }
    let per = sub.len();
    let total = per.pow(n as u32);
    let mut points = Vec::with_capacity(total);
    let mut weights = Vec::with_capacity(total);
    for flat in 0..total {
        let mut idx = flat;
        let mut z = vec![Complex64::new(0.0, 0.0); n];
        let mut weight = 1.0;
        for zj in z.iter_mut() {
            let (point, w) = sub[idx % per];
            idx /= per;
            *zj = point;
            weight *= w;
        }
        points.push(z);
        weights.push(weight);
    }
    QuadGrid { points, weights }
}
