//! The instrument itself: integrate the non-holonomic constraint
//! `ℓ dθ = sin θ dx − cos θ dy` along a tracer path and accumulate the
//! swept-area quantities.
//!
//! Conventions: the tracer sits at `q`, the chisel at `q + ℓ(cos θ, sin θ)`,
//! and `θ` is carried as a continuous lift (never reduced mod 2π). The
//! forward normal is `N = (sin θ, −cos θ)`.

use alloc::vec::Vec;
use core::f64::consts::PI;

#[allow(unused_imports)]
use num_traits::Float;

use crate::error::{ensure_finite, ensure_positive, Error, Result};
use crate::geom2d::{signed_area, PlanarPath, Point2};
use crate::quad::adaptive_simpson;

/// Default RK4 substeps per rod length.
pub const DEFAULT_STEPS_PER_ELL: f64 = 200.0;

/// A configuration of the planimeter: a point of ℝ² × S¹ with its lift.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PlanimeterState {
    pub q: Point2,
    pub theta: f64,
    pub ell: f64,
}

impl PlanimeterState {
    pub fn chisel(&self) -> Point2 {
        self.q + Point2::from_angle(self.theta) * self.ell
    }
}

/// Output of [`integrate`].
#[derive(Debug, Clone, PartialEq)]
pub struct TraceResult {
    /// State after every RK4 substep, starting with the initial state.
    pub states: Vec<PlanimeterState>,
    /// Tracer arclength at each entry of `states`.
    pub arclength: Vec<f64>,
    pub theta0: f64,
    /// Net continuous rotation.
    pub delta_theta: f64,
    /// `ℓ·Δθ`, the arc the chisel would travel on the initial circle.
    pub sigma: f64,
    /// ∫ N·dq along the tracer path.
    pub sigma_t: f64,
    /// ∫ ℓ N·dm with `m` the rod midpoint.
    pub swept_area: f64,
    /// ½∫ (p − q₀) × dp along the chisel path, `q₀` the first tracer point.
    pub chisel_area: f64,
    /// Largest per-step |σ| / step, where σ is measured against the exact
    /// straight-edge solution.
    pub max_constraint_defect: f64,
}

impl TraceResult {
    pub fn final_state(&self) -> PlanimeterState {
        self.states[self.states.len() - 1]
    }

    pub fn final_theta(&self) -> f64 {
        self.final_state().theta
    }

    pub fn chisel_points(&self) -> Vec<Point2> {
        self.states.iter().map(PlanimeterState::chisel).collect()
    }

    /// The chisel trajectory as an open path (consecutive duplicates dropped).
    pub fn chisel_path(&self) -> Option<PlanarPath> {
        PlanarPath::from_samples(self.states.iter().map(PlanimeterState::chisel))
    }
}

/// Integration state: θ plus the three accumulated integrals.
#[derive(Clone, Copy)]
struct Accum {
    theta: f64,
    sigma_t: f64,
    swept: f64,
    chisel_area: f64,
}

impl Accum {
    fn axpy(self, h: f64, k: &Accum) -> Accum {
        Accum {
            theta: self.theta + h * k.theta,
            sigma_t: self.sigma_t + h * k.sigma_t,
            swept: self.swept + h * k.swept,
            chisel_area: self.chisel_area + h * k.chisel_area,
        }
    }
}

/// Arclength derivatives at tracer offset `q` (relative to the start) moving
/// in unit direction `dir`.
fn rates(q: Point2, dir: Point2, theta: f64, ell: f64) -> Accum {
    let (s, c) = theta.sin_cos();
    let n_dot_q = s * dir.x - c * dir.y;
    let dtheta = n_dot_q / ell;
    let perp = Point2::new(-s, c);
    let dm = dir + perp * (0.5 * ell * dtheta);
    let p = q + Point2::new(c, s) * ell;
    let dp = dir + perp * (ell * dtheta);
    Accum {
        theta: dtheta,
        sigma_t: n_dot_q,
        swept: ell * (s * dm.x - c * dm.y),
        chisel_area: 0.5 * p.cross(dp),
    }
}

/// Exact rotation after moving the tracer a distance `dist` along a straight
/// line with heading `heading`, starting from `theta`. Uses
/// `tan(α/2) ∝ e^{s/ℓ}` for the angle α = θ − heading and keeps the lift.
pub fn straight_line_theta(theta: f64, heading: f64, dist: f64, ell: f64) -> f64 {
    let alpha = theta - heading;
    let turns = (alpha / (2.0 * PI)).round();
    let reduced = alpha - 2.0 * PI * turns;
    let half = 0.5 * reduced;
    let grown = 2.0 * ((dist / ell).exp() * half.sin()).atan2(half.cos());
    heading + grown + 2.0 * PI * turns
}

/// Integrates the planimeter along `path` with classical RK4, arclength
/// substeps no longer than `step`. A closed path includes its closing edge.
pub fn integrate(path: &PlanarPath, theta0: f64, ell: f64, step: f64) -> Result<TraceResult> {
    ensure_finite(theta0, "theta0")?;
    ensure_positive(ell, "ell")?;
    ensure_positive(step, "step")?;
    let origin = path.start();
    let mut y = Accum {
        theta: theta0,
        sigma_t: 0.0,
        swept: 0.0,
        chisel_area: 0.0,
    };
    let mut states = Vec::new();
    let mut arclength = Vec::new();
    let mut s_total = 0.0;
    let mut max_defect: f64 = 0.0;
    states.push(PlanimeterState {
        q: origin,
        theta: theta0,
        ell,
    });
    arclength.push(0.0);
    for (a, b) in path.edges() {
        let edge = b - a;
        let len = edge.norm();
        let dir = edge * (1.0 / len);
        let heading = dir.y.atan2(dir.x);
        let n = (len / step).ceil().max(1.0) as usize;
        let h = len / n as f64;
        let start = a - origin;
        for k in 0..n {
            let q0 = start + edge * (k as f64 / n as f64);
            let qm = q0 + dir * (0.5 * h);
            let q1 = start + edge * ((k + 1) as f64 / n as f64);
            let k1 = rates(q0, dir, y.theta, ell);
            let k2 = rates(qm, dir, y.axpy(0.5 * h, &k1).theta, ell);
            let k3 = rates(qm, dir, y.axpy(0.5 * h, &k2).theta, ell);
            let k4 = rates(q1, dir, y.axpy(h, &k3).theta, ell);
            let exact = straight_line_theta(y.theta, heading, h, ell);
            let sum = Accum {
                theta: k1.theta + 2.0 * k2.theta + 2.0 * k3.theta + k4.theta,
                sigma_t: k1.sigma_t + 2.0 * k2.sigma_t + 2.0 * k3.sigma_t + k4.sigma_t,
                swept: k1.swept + 2.0 * k2.swept + 2.0 * k3.swept + k4.swept,
                chisel_area: k1.chisel_area
                    + 2.0 * k2.chisel_area
                    + 2.0 * k3.chisel_area
                    + k4.chisel_area,
            };
            y = y.axpy(h / 6.0, &sum);
            if !y.theta.is_finite() {
                return Err(Error::NumericFailure("rod angle diverged"));
            }
            max_defect = max_defect.max(ell * (y.theta - exact).abs() / h);
            s_total += h;
            states.push(PlanimeterState {
                q: origin + q1,
                theta: y.theta,
                ell,
            });
            arclength.push(s_total);
        }
    }
    let delta_theta = y.theta - theta0;
    Ok(TraceResult {
        states,
        arclength,
        theta0,
        delta_theta,
        sigma: ell * delta_theta,
        sigma_t: y.sigma_t,
        swept_area: y.swept,
        chisel_area: y.chisel_area,
        max_constraint_defect: max_defect,
    })
}

/// Closed form of the standard tractrix (tracer on the x-axis, rod initially
/// vertical): `(x − ℓ tanh(x/ℓ), ℓ sech(x/ℓ))`.
pub fn standard_tractrix(x: f64, ell: f64) -> Point2 {
    let u = x / ell;
    Point2::new(x - ell * u.tanh(), ell / u.cosh())
}

/// Area between the branch `x ≥ 0` of the standard tractrix and its asymptote,
/// by adaptive quadrature of `y dX` along the curve.
pub fn standard_tractrix_area(ell: f64) -> f64 {
    // dX = tanh²(x/ℓ) dx; the integrand decays like e^{−x/ℓ}, so [0, 40ℓ]
    // truncates below 1e-17 ℓ².
    let integrand = |x: f64| {
        let u = x / ell;
        let t = u.tanh();
        ell / u.cosh() * t * t
    };
    adaptive_simpson(&integrand, 0.0, 40.0 * ell, 1e-13 * ell * ell)
}

/// Integrates once around a closed boundary starting and ending at vertex
/// `base_index`.
pub fn trace_loop(
    boundary: &PlanarPath,
    base_index: usize,
    theta0: f64,
    ell: f64,
    step: f64,
) -> Result<TraceResult> {
    let path = boundary.rotated_to_start(base_index)?;
    integrate(&path, theta0, ell, step)
}

/// Terms of `A_Ω = ℓσ + A_γ`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AreaIdentity {
    pub a_region: f64,
    pub ell_sigma: f64,
    /// Area enclosed by the chisel path closed up by the arc of the initial
    /// circle that rotates the rod back by −Δθ.
    pub a_gamma: f64,
    pub residual: f64,
}

/// Evaluates both sides of the exact error identity for one trace.
pub fn area_identity_report(
    boundary: &PlanarPath,
    base_index: usize,
    theta0: f64,
    ell: f64,
    step: f64,
) -> Result<AreaIdentity> {
    let a_region = signed_area(boundary)?;
    let trace = trace_loop(boundary, base_index, theta0, ell, step)?;
    Ok(area_identity_from_trace(a_region, &trace))
}

/// The identity for a loop trace already computed, given the region's area.
pub fn area_identity_from_trace(a_region: f64, trace: &TraceResult) -> AreaIdentity {
    let ell = trace.states[0].ell;
    // Closing arc about the base (the origin of chisel_area) from θ_final back
    // to θ₀: ½∫ p × dp = ½ℓ²(θ₀ − θ_final).
    let arc = -0.5 * ell * ell * trace.delta_theta;
    let a_gamma = trace.chisel_area + arc;
    let ell_sigma = ell * trace.sigma;
    AreaIdentity {
        a_region,
        ell_sigma,
        a_gamma,
        residual: a_region - ell_sigma - a_gamma,
    }
}

/// Result of repeated laps around a region.
#[derive(Debug, Clone, PartialEq)]
pub struct ClosedTractrixReport {
    /// Net rotation of each lap.
    pub lap_delta_theta: Vec<f64>,
    /// |Δθ − 2π| on the final lap.
    pub per_lap_theta_gap: f64,
    pub a_region: f64,
    /// Area enclosed by the chisel on the final lap.
    pub a_c: f64,
    /// σ_T on the final lap.
    pub sigma_t: f64,
    /// A_Ω − A_C − πℓ².
    pub area_residual: f64,
    /// ℓσ_T − πℓ² − (A_Ω − A_C).
    pub sigma_t_identity_residual: f64,
    /// Rod angle at the end of the last lap.
    pub final_theta: f64,
    /// The final lap itself.
    pub final_lap: TraceResult,
}

/// Runs `laps` consecutive loops from vertex 0 and checks the isoperimetric
/// chain `πℓ² = A_Ω − A_C = ℓσ_T − πℓ²` on the last one.
pub fn closed_tractrix_residual(
    boundary: &PlanarPath,
    theta0: f64,
    ell: f64,
    laps: usize,
    step: f64,
) -> Result<ClosedTractrixReport> {
    if laps == 0 {
        return Err(Error::InvalidParameter {
            name: "laps",
            reason: "must be at least 1",
        });
    }
    let a_region = signed_area(boundary)?;
    let mut theta = theta0;
    let mut lap_delta_theta = Vec::with_capacity(laps);
    let mut last = None;
    for _ in 0..laps {
        let lap = trace_loop(boundary, 0, theta, ell, step)?;
        theta = lap.final_theta();
        lap_delta_theta.push(lap.delta_theta);
        last = Some(lap);
    }
    let final_lap = last.expect("laps >= 1");
    let a_c = final_lap.chisel_area;
    let pi_l2 = PI * ell * ell;
    Ok(ClosedTractrixReport {
        per_lap_theta_gap: (final_lap.delta_theta - 2.0 * PI).abs(),
        lap_delta_theta,
        a_region,
        a_c,
        sigma_t: final_lap.sigma_t,
        area_residual: a_region - a_c - pi_l2,
        sigma_t_identity_residual: ell * final_lap.sigma_t - pi_l2 - (a_region - a_c),
        final_theta: theta,
        final_lap,
    })
}
