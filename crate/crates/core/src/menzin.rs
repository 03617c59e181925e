//! Parallelogram holonomy in closed form, the attracting-direction
//! criterion, circle tractrices and scans of general regions.
//!
//! For the parallelogram `0, v, v+w, w` write `e^X = (a, b; b̄, a)` and
//! `e^Y = (c, d; d̄, c)` for the edge transports. Then
//! `tr H = 2 − 4 Im²(b̄d)`, and the holonomy has an attracting direction
//! exactly when `Im(b̄d) > 1`.

use alloc::vec::Vec;
use core::f64::consts::PI;

#[allow(unused_imports)]
use num_traits::Float;

use crate::dynamics::trace_loop;
use crate::error::{ensure_finite, ensure_positive, Error, Result};
use crate::geom2d::{self, signed_area, PlanarPath, Point2};
use crate::holonomy::{attracting_winding, holonomy_polygon, segment_transport, ConnectionParams};
use crate::quad::golden_min;
use crate::su11::{HolonomyKind, Su11, PARABOLIC_TOLERANCE};
use crate::Complex;

/// Band around |tr H| = 2 within which a scan row is flagged marginal.
pub const MARGINAL_TRACE_BAND: f64 = 1e-6;

/// A positively oriented parallelogram `0, v, v+w, w` and the rod length.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ParallelogramSpec {
    v: Point2,
    w: Point2,
    ell: f64,
}

impl ParallelogramSpec {
    pub fn new(v: Point2, w: Point2, ell: f64) -> Result<Self> {
        ensure_finite(v.x, "v")?;
        ensure_finite(v.y, "v")?;
        ensure_finite(w.x, "w")?;
        ensure_finite(w.y, "w")?;
        ensure_positive(ell, "ell")?;
        let cross = v.cross(w);
        if !(cross > 1e-12 * v.norm() * w.norm()) {
            return Err(Error::DegenerateParallelogram);
        }
        Ok(ParallelogramSpec { v, w, ell })
    }

    /// Square of side `side` with edges along the axes.
    pub fn square(side: f64, ell: f64) -> Result<Self> {
        ParallelogramSpec::new(Point2::new(side, 0.0), Point2::new(0.0, side), ell)
    }

    pub fn v(&self) -> Point2 {
        self.v
    }

    pub fn w(&self) -> Point2 {
        self.w
    }

    pub fn ell(&self) -> f64 {
        self.ell
    }

    /// `Im(v̄w)`.
    pub fn area(&self) -> f64 {
        self.v.cross(self.w)
    }

    /// Interior angle between `v` and `w`.
    pub fn angle(&self) -> f64 {
        self.v.cross(self.w).atan2(self.v.dot(self.w))
    }

    pub fn polygon(&self) -> PlanarPath {
        geom2d::parallelogram(Point2::ORIGIN, self.v, self.w)
            .expect("validated parallelogram has distinct vertices")
    }

    fn params(&self) -> ConnectionParams {
        ConnectionParams { ell: self.ell }
    }

    /// `(e^X, e^Y)`.
    pub fn edge_transports(&self) -> (Su11, Su11) {
        let p = self.params();
        (segment_transport(self.v, &p), segment_transport(self.w, &p))
    }

    /// `Im(b̄d)`.
    pub fn im_bd(&self) -> f64 {
        let (ex, ey) = self.edge_transports();
        (ex.b().conj() * ey.b()).im
    }
}

/// Everything the closed form says about one parallelogram.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MenzinReport {
    pub spec: ParallelogramSpec,
    /// `e^{−Y} e^{−X} e^Y e^X`.
    pub element: Su11,
    /// Trace of `element`.
    pub trace: f64,
    /// `2 − 4 Im²(b̄d)`.
    pub trace_formula: f64,
    pub im_bd: f64,
    pub attracting: bool,
    pub z_plus: Option<Complex>,
    pub z_minus: Option<Complex>,
    pub multiplier_plus: Option<f64>,
    pub multiplier_minus: Option<f64>,
    pub area: f64,
    /// `A / πℓ²`.
    pub area_ratio: f64,
}

pub fn parallelogram_holonomy(spec: &ParallelogramSpec) -> MenzinReport {
    let (ex, ey) = spec.edge_transports();
    let element = ey.inverse() * ex.inverse() * ey * ex;
    let im_bd = spec.im_bd();
    let attracting = im_bd > 1.0;
    let (z_plus, z_minus, multiplier_plus, multiplier_minus) = if attracting {
        let (zp, zm) = fixed_points_unchecked(spec);
        let (hp, hm) = multipliers_unchecked(im_bd);
        (Some(zp), Some(zm), Some(hp), Some(hm))
    } else {
        (None, None, None, None)
    };
    let area = spec.area();
    MenzinReport {
        spec: *spec,
        element,
        trace: element.trace(),
        trace_formula: 2.0 - 4.0 * im_bd * im_bd,
        im_bd,
        attracting,
        z_plus,
        z_minus,
        multiplier_plus,
        multiplier_minus,
        area,
        area_ratio: area / (PI * spec.ell * spec.ell),
    }
}

/// `sinh|β| sinh|δ| sin ϑ > 1`, with `|β| = |v|/2ℓ`, `|δ| = |w|/2ℓ` and `ϑ`
/// the angle between `v` and `w`.
pub fn attracting_condition(spec: &ParallelogramSpec) -> bool {
    let x = spec.v.norm() / (2.0 * spec.ell);
    let y = spec.w.norm() / (2.0 * spec.ell);
    x.sinh() * y.sinh() * spec.angle().sin() > 1.0
}

fn fixed_points_unchecked(spec: &ParallelogramSpec) -> (Complex, Complex) {
    let (ex, ey) = spec.edge_transports();
    let (a, b, c, d) = (ex.a(), ex.b(), ey.a(), ey.b());
    let m = a * d + b * c;
    let r = m.norm();
    let bd = b.conj() * d;
    let root = (bd.im * bd.im - 1.0).max(0.0).sqrt();
    let lead = -m / r;
    let re = (a * c).re + bd.re;
    let zp = lead * Complex::new(re, root) / r;
    let zm = lead * Complex::new(re, -root) / r;
    (zp / zp.norm(), zm / zm.norm())
}

fn multipliers_unchecked(im_bd: f64) -> (f64, f64) {
    let root = (im_bd * im_bd - 1.0).max(0.0).sqrt();
    let h = |s: f64| (2.0 * im_bd * (im_bd + s * root) - 1.0).powi(-2);
    (h(1.0), h(-1.0))
}

fn require_attracting(spec: &ParallelogramSpec) -> Result<f64> {
    let im_bd = spec.im_bd();
    if im_bd * im_bd - 1.0 < -PARABOLIC_TOLERANCE || im_bd < 0.0 {
        return Err(Error::NotAttracting { im_bd });
    }
    Ok(im_bd)
}

/// The two fixed directions `z±` of the holonomy at vertex 0. `z+` attracts.
pub fn parallelogram_fixed_points(spec: &ParallelogramSpec) -> Result<(Complex, Complex)> {
    require_attracting(spec)?;
    Ok(fixed_points_unchecked(spec))
}

/// Derivatives of the circle map at `z+` and `z−`.
pub fn parallelogram_multipliers(spec: &ParallelogramSpec) -> Result<(f64, f64)> {
    let im_bd = require_attracting(spec)?;
    Ok(multipliers_unchecked(im_bd))
}

/// Result of [`menzin_minimum_check`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MinimumCheck {
    /// Minimum of `sinh x · sinh y · sin ϑ` over `x·y·sin ϑ ≥ π/4`.
    pub value: f64,
    pub x: f64,
    pub y: f64,
    /// Minimising angle, reported in `(0, π/2]`.
    pub angle: f64,
}

/// `(cosh √π − 1)/2`, the value the minimisation should reproduce.
pub fn menzin_minimum_closed_form() -> f64 {
    (PI.sqrt().cosh() - 1.0) / 2.0
}

/// Minimises `sinh x · sinh y · sin ϑ` subject to `x·y·sin ϑ ≥ π/4`.
///
/// The minimum lies on the boundary `sin ϑ = π/(4xy)`, which needs
/// `xy ≥ π/4`. With `x = √P e^t`, `y = √P e^{−t}` and `u = ln P` the problem
/// becomes a bound-constrained one in `(u, t)`; it is seeded from a coarse
/// grid and refined by alternating golden-section line searches.
pub fn menzin_minimum_check() -> MinimumCheck {
    let u_lo = (PI / 4.0).ln();
    let u_hi = u_lo + 4.0;
    let (t_lo, t_hi) = (-3.0, 3.0);
    let objective = |u: f64, t: f64| {
        let p = u.exp();
        let s = p.sqrt();
        (s * t.exp()).sinh() * (s * (-t).exp()).sinh() * PI / (4.0 * p)
    };

    let n = 40;
    let (mut u, mut t) = (u_lo, 0.0);
    let mut best = f64::INFINITY;
    for i in 0..=n {
        for j in 0..=n {
            let ui = u_lo + (u_hi - u_lo) * i as f64 / n as f64;
            let tj = t_lo + (t_hi - t_lo) * j as f64 / n as f64;
            let f = objective(ui, tj);
            if f < best {
                best = f;
                u = ui;
                t = tj;
            }
        }
    }

    let du0 = (u_hi - u_lo) / n as f64;
    let dt0 = (t_hi - t_lo) / n as f64;
    let tol = 1e-9;
    for _ in 0..200 {
        let (pu, pt) = (u, t);
        u = golden_min(|x| objective(x, t), (u - du0).max(u_lo), (u + du0).min(u_hi), tol);
        t = golden_min(|x| objective(u, x), (t - dt0).max(t_lo), (t + dt0).min(t_hi), tol);
        if (u - pu).abs() < 1e-10 && (t - pt).abs() < 1e-10 {
            break;
        }
    }
    // The lower bound of u is active at the optimum; golden search stops
    // within `tol` of it.
    if objective(u_lo, t) <= objective(u, t) {
        u = u_lo;
    }
    let p = u.exp();
    let s = p.sqrt();
    let x = s * t.exp();
    let y = s * (-t).exp();
    let angle = (PI / (4.0 * p)).min(1.0).asin();
    MinimumCheck {
        value: objective(u, t),
        x,
        y,
        angle,
    }
}

/// Radius `√(R² − ℓ²)` of the closed tractrix for a circle of radius `R`.
pub fn circle_closed_tractrix(radius: f64, ell: f64) -> Result<f64> {
    ensure_positive(radius, "radius")?;
    ensure_positive(ell, "ell")?;
    if radius == ell {
        return Err(Error::CircleAtRodLength);
    }
    if radius < ell {
        return Err(Error::CircleInsideRodLength);
    }
    Ok((radius * radius - ell * ell).sqrt())
}

/// Settings for [`simulate_circle_attractor`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CircleSimulation {
    pub radius: f64,
    pub ell: f64,
    /// Sides of the polygon standing in for the circle.
    pub sides: usize,
    pub step: f64,
    pub theta0: f64,
    pub max_laps: usize,
    /// Convergence threshold on the per-lap chisel deviation.
    pub tolerance: f64,
}

impl CircleSimulation {
    pub fn new(radius: f64, ell: f64) -> Self {
        CircleSimulation {
            radius,
            ell,
            sides: 4096,
            step: ell / 400.0,
            theta0: PI,
            max_laps: 10,
            tolerance: 1e-6 * ell,
        }
    }
}

/// Outcome of [`simulate_circle_attractor`].
#[derive(Debug, Clone, PartialEq)]
pub struct CircleAttractor {
    /// Mean chisel distance from the centre over the last lap.
    pub fitted_radius: f64,
    /// `√(R² − ℓ²)`.
    pub predicted_radius: f64,
    /// Largest chisel distance from the centre minus the smallest, last lap.
    pub radial_spread: f64,
    pub laps: usize,
    pub converged: bool,
    /// Max chisel displacement between matching samples of consecutive laps.
    pub lap_deviation: Vec<f64>,
}

/// Drags the rod round a circle (as a fine regular polygon centred at the
/// origin) lap after lap until the chisel path repeats to within the
/// tolerance, then fits its radius.
pub fn simulate_circle_attractor(sim: &CircleSimulation) -> Result<CircleAttractor> {
    let predicted_radius = circle_closed_tractrix(sim.radius, sim.ell)?;
    if sim.max_laps == 0 {
        return Err(Error::InvalidParameter {
            name: "max_laps",
            reason: "must be at least 1",
        });
    }
    let circle = geom2d::regular_polygon(Point2::ORIGIN, sim.radius, sim.sides, 0.0)?;
    let mut theta = sim.theta0;
    let mut prev: Option<Vec<Point2>> = None;
    let mut lap_deviation = Vec::new();
    let mut converged = false;
    let mut last = Vec::new();
    let mut laps = 0;
    while laps < sim.max_laps {
        let lap = trace_loop(&circle, 0, theta, sim.ell, sim.step)?;
        theta = lap.final_theta();
        laps += 1;
        let pts = lap.chisel_points();
        if let Some(p) = &prev {
            let dev = p
                .iter()
                .zip(&pts)
                .map(|(a, b)| a.distance(*b))
                .fold(0.0, f64::max);
            lap_deviation.push(dev);
            if dev < sim.tolerance {
                converged = true;
                last = pts;
                break;
            }
        }
        prev = Some(pts.clone());
        last = pts;
    }
    let radii: Vec<f64> = last[..last.len() - 1].iter().map(|p| p.norm()).collect();
    let fitted_radius = radii.iter().sum::<f64>() / radii.len() as f64;
    let lo = radii.iter().cloned().fold(f64::INFINITY, f64::min);
    let hi = radii.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
    Ok(CircleAttractor {
        fitted_radius,
        predicted_radius,
        radial_spread: hi - lo,
        laps,
        converged,
        lap_deviation,
    })
}

/// One row of a Menzin scan.
#[derive(Debug, Clone, PartialEq)]
pub struct ScanRow {
    pub region_id: usize,
    pub n_vertices: usize,
    pub area: f64,
    pub area_over_pi_ell2: f64,
    pub trace: f64,
    pub kind: HolonomyKind,
    /// Turns per lap from the attracting direction; only for hyperbolic
    /// holonomy.
    pub winding: Option<i64>,
    /// `| |tr H| − 2 |` below [`MARGINAL_TRACE_BAND`].
    pub marginal_flag: bool,
}

/// A scan row or the reason the region could not be scanned.
pub type ScanOutcome = core::result::Result<ScanRow, (usize, Error)>;

/// Area, trace, classification and winding number of one region, based at
/// vertex 0.
pub fn scan_region(region_id: usize, region: &PlanarPath, ell: f64, step: f64) -> Result<ScanRow> {
    let params = ConnectionParams::new(ell)?;
    ensure_positive(step, "step")?;
    let area = signed_area(region)?;
    if !(area > 0.0) {
        return Err(Error::InvalidParameter {
            name: "region",
            reason: "must be positively oriented",
        });
    }
    if !region.is_simple() {
        return Err(Error::InvalidParameter {
            name: "region",
            reason: "must be simple",
        });
    }
    let h = holonomy_polygon(region, 0, &params)?;
    let winding = attracting_winding(region, 0, &h, &params, step)?;
    let trace = h.element.trace();
    Ok(ScanRow {
        region_id,
        n_vertices: region.len(),
        area,
        area_over_pi_ell2: area / (PI * ell * ell),
        trace,
        kind: h.classification.kind(),
        winding,
        marginal_flag: (trace.abs() - 2.0).abs() < MARGINAL_TRACE_BAND,
    })
}

/// Scans each region in order; a failing region yields an `Err` entry and the
/// scan continues.
pub fn menzin_scan(regions: &[PlanarPath], ell: f64, step: f64) -> Vec<ScanOutcome> {
    regions
        .iter()
        .enumerate()
        .map(|(i, r)| scan_region(i, r, ell, step).map_err(|e| (i, e)))
        .collect()
}

/// Side at which the square holonomy turns parabolic: `2ℓ·asinh(1)`.
pub fn marginal_square_side(ell: f64) -> f64 {
    2.0 * ell * 1.0f64.asinh()
}

/// Axis-aligned squares with lower-left corner at the origin.
pub fn square_family(sides: &[f64]) -> Result<Vec<PlanarPath>> {
    sides.iter().map(|&s| geom2d::square(Point2::ORIGIN, s)).collect()
}

/// `count` squares with sides evenly spaced on `[lo, hi]`.
pub fn square_sweep(lo: f64, hi: f64, count: usize) -> Result<Vec<PlanarPath>> {
    square_family(&linspace(lo, hi, count))
}

/// Axis-aligned rectangles `(width, height)`.
pub fn rectangle_family(dims: &[(f64, f64)]) -> Result<Vec<PlanarPath>> {
    dims.iter()
        .map(|&(w, h)| geom2d::rectangle(Point2::ORIGIN, w, h))
        .collect()
}

/// Regular `n`-gons of the given area, centred at the origin.
pub fn equal_area_ngons(area: f64, ns: &[usize]) -> Result<Vec<PlanarPath>> {
    ensure_positive(area, "area")?;
    ns.iter()
        .map(|&n| {
            if n < 3 {
                return Err(Error::TooFewVertices { found: n, required: 3 });
            }
            let nf = n as f64;
            let r = (2.0 * area / (nf * (2.0 * PI / nf).sin())).sqrt();
            geom2d::regular_polygon(Point2::ORIGIN, r, n, 0.0)
        })
        .collect()
}

/// Ellipses `(a, b)` as 256-gons centred at the origin.
pub fn ellipse_family(axes: &[(f64, f64)]) -> Result<Vec<PlanarPath>> {
    axes.iter()
        .map(|&(a, b)| geom2d::ellipse(Point2::ORIGIN, a, b, 256, 0.0))
        .collect()
}

fn linspace(lo: f64, hi: f64, count: usize) -> Vec<f64> {
    match count {
        0 => Vec::new(),
        1 => alloc::vec![lo],
        _ => (0..count)
            .map(|i| lo + (hi - lo) * i as f64 / (count - 1) as f64)
            .collect(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::su11::{classify, mobius_apply, multiplier, HolonomyClass};

    #[test]
    fn square_two_ell() {
        let spec = ParallelogramSpec::square(2.0, 1.0).unwrap();
        let r = parallelogram_holonomy(&spec);
        let s2 = 1f64.sinh().powi(2);
        assert!((r.im_bd - s2).abs() < 1e-12);
        assert!((r.im_bd - 1.3811).abs() < 1e-4);
        assert!(r.attracting && attracting_condition(&spec));
        assert!((r.trace - r.trace_formula).abs() < 1e-12);
        assert!(r.trace < -2.0);
        let h = holonomy_polygon(&spec.polygon(), 0, &ConnectionParams::new(1.0).unwrap()).unwrap();
        assert!(h.element.distance(&r.element) < 1e-12);
    }

    #[test]
    fn marginal_square() {
        let s = marginal_square_side(1.0);
        assert!((s - 2.0 * (1.0 + 2f64.sqrt()).ln()).abs() < 1e-14);
        let spec = ParallelogramSpec::square(s, 1.0).unwrap();
        let r = parallelogram_holonomy(&spec);
        assert!((r.im_bd - 1.0).abs() < 1e-12);
        assert!((r.trace + 2.0).abs() < 1e-10);
        assert!((r.area - 3.107).abs() < 1e-3 && r.area < PI);
        let (hp, hm) = parallelogram_multipliers(&spec).unwrap();
        assert!((hp - 1.0).abs() < 1e-5 && (hm - 1.0).abs() < 1e-5);
    }

    #[test]
    fn attracting_condition_examples() {
        let sp = ParallelogramSpec::square(PI.sqrt(), 1.0).unwrap();
        assert!(attracting_condition(&sp));
        assert!((sp.im_bd() - menzin_minimum_closed_form()).abs() < 1e-12);
        assert!((menzin_minimum_closed_form() - 1.0137).abs() < 1e-4);
        let small = ParallelogramSpec::square(1.7, 1.0).unwrap();
        assert!((0.85f64.sinh().powi(2) - 0.914).abs() < 1e-3);
        assert!(!attracting_condition(&small));
        assert!(!parallelogram_holonomy(&small).attracting);
        let sliver = ParallelogramSpec::new(
            Point2::new(3.0, 0.0),
            Point2::from_angle(1e-3) * 3.0,
            1.0,
        )
        .unwrap();
        assert!(!attracting_condition(&sliver));
    }

    #[test]
    fn swapping_edges_preserves_trace() {
        let spec = ParallelogramSpec::new(Point2::new(2.0, 0.3), Point2::new(0.4, 1.9), 1.0).unwrap();
        let r = parallelogram_holonomy(&spec);
        // Swapping v and w reverses orientation; build the reversed loop directly.
        let rev = spec.polygon().reversed();
        let h = holonomy_polygon(&rev, 0, &ConnectionParams::new(1.0).unwrap()).unwrap();
        assert!(h.element.distance(&r.element.inverse()) < 1e-12);
        assert!((h.element.trace() - r.trace).abs() < 1e-12);
        assert_eq!(
            ParallelogramSpec::new(spec.w(), spec.v(), 1.0),
            Err(Error::DegenerateParallelogram)
        );
    }

    #[test]
    fn fixed_points_of_square() {
        let spec = ParallelogramSpec::square(2.0, 1.0).unwrap();
        let r = parallelogram_holonomy(&spec);
        let (zp, zm) = parallelogram_fixed_points(&spec).unwrap();
        for z in [zp, zm] {
            assert!((z.norm() - 1.0).abs() < 1e-14);
            assert!((mobius_apply(&r.element, z) - z).norm() < 1e-9);
            assert!(z.re > 0.0 && z.im > 0.0, "{z}");
            // e^Y e^X z = −z
            let (ex, ey) = spec.edge_transports();
            assert!((mobius_apply(&(ey * ex), z) + z).norm() < 1e-9);
        }
        // Mirror symmetry about the diagonal.
        let diag = Complex::from_polar(1.0, PI / 4.0);
        let mirrored = diag * diag * zp.conj();
        assert!((mirrored - zm).norm() < 1e-9);
        let HolonomyClass::Hyperbolic { attracting, repelling, .. } = classify(&r.element) else {
            panic!("expected hyperbolic");
        };
        assert!((attracting - zp).norm() < 1e-9);
        assert!((repelling - zm).norm() < 1e-9);
    }

    #[test]
    fn multipliers_of_square() {
        let spec = ParallelogramSpec::square(2.0, 1.0).unwrap();
        let r = parallelogram_holonomy(&spec);
        let (hp, hm) = parallelogram_multipliers(&spec).unwrap();
        assert!(hp < 1.0 && hm > 1.0);
        assert!((hp * hm - 1.0).abs() < 1e-9);
        let (zp, zm) = (r.z_plus.unwrap(), r.z_minus.unwrap());
        assert!((multiplier(&r.element, zp).unwrap() - hp).abs() < 1e-9 * hm);
        assert!((multiplier(&r.element, zm).unwrap() - hm).abs() < 1e-9 * hm);

        // Iterating from near z+ contracts the angular error by about h+.
        let mut z = zp * Complex::from_polar(1.0, 1e-3);
        let mut err = (z / zp).arg().abs();
        z = mobius_apply(&r.element, z);
        let next = (z / zp).arg().abs();
        assert!((next / err - hp).abs() < 1e-2 * hp);
        err = next;
        assert!(err > 0.0);
    }

    #[test]
    fn non_attracting_errors() {
        let spec = ParallelogramSpec::square(1.0, 1.0).unwrap();
        assert!(matches!(parallelogram_fixed_points(&spec), Err(Error::NotAttracting { .. })));
        assert!(matches!(parallelogram_multipliers(&spec), Err(Error::NotAttracting { .. })));
        let r = parallelogram_holonomy(&spec);
        assert!(r.z_plus.is_none() && r.multiplier_minus.is_none());
        assert_eq!(
            ParallelogramSpec::new(Point2::new(1.0, 0.0), Point2::new(2.0, 0.0), 1.0),
            Err(Error::DegenerateParallelogram)
        );
    }

    #[test]
    fn minimum_check() {
        let m = menzin_minimum_check();
        assert!((m.value - menzin_minimum_closed_form()).abs() < 1e-6, "{m:?}");
        let half = PI.sqrt() / 2.0;
        assert!((m.x - half).abs() < 1e-4 && (m.y - half).abs() < 1e-4, "{m:?}");
        assert!((m.angle - PI / 2.0).abs() < 1e-3, "{m:?}");
        assert!(m.value > 1.0);
    }

    #[test]
    fn circle_radius() {
        assert!((circle_closed_tractrix(2.0, 1.0).unwrap() - 3f64.sqrt()).abs() < 1e-15);
        assert!((circle_closed_tractrix(2f64.sqrt(), 1.0).unwrap() - 1.0).abs() < 1e-15);
        assert_eq!(circle_closed_tractrix(1.0, 1.0), Err(Error::CircleAtRodLength));
        assert_eq!(circle_closed_tractrix(0.5, 1.0), Err(Error::CircleInsideRodLength));
    }

    #[test]
    fn circle_attractor_simulation() {
        let mut sim = CircleSimulation::new(2.0, 1.0);
        sim.sides = 1024;
        sim.step = 1.0 / 100.0;
        let out = simulate_circle_attractor(&sim).unwrap();
        assert!(out.converged, "{out:?}");
        assert!((out.fitted_radius - 3f64.sqrt()).abs() < 1e-4, "{out:?}");
    }

    #[test]
    fn square_scan_transition() {
        let sides = [1.0, 1.5, 1.7, 1.8, 2.0, 2.5, 3.0];
        let regions = square_family(&sides).unwrap();
        let rows = menzin_scan(&regions, 1.0, 1.0 / 100.0);
        let marginal = marginal_square_side(1.0);
        for (row, &s) in rows.iter().zip(&sides) {
            let row = row.as_ref().unwrap();
            if s < marginal {
                assert_eq!(row.kind, HolonomyKind::Elliptic);
                assert_eq!(row.winding, None);
            } else {
                assert_eq!(row.kind, HolonomyKind::Hyperbolic);
                assert_eq!(row.winding, Some(1));
            }
        }
    }

    #[test]
    fn scan_records_errors_and_continues() {
        let good = geom2d::square(Point2::ORIGIN, 2.0).unwrap();
        let cw = good.reversed();
        let rows = menzin_scan(&[cw, good], 1.0, 0.01);
        assert!(matches!(rows[0], Err((0, Error::InvalidParameter { .. }))));
        assert_eq!(rows[1].as_ref().unwrap().region_id, 1);
    }

    #[test]
    fn family_constructors() {
        let ngons = equal_area_ngons(PI, &[3, 4, 7, 12]).unwrap();
        for g in &ngons {
            assert!((signed_area(g).unwrap() - PI).abs() < 1e-12);
        }
        assert!(equal_area_ngons(PI, &[2]).is_err());
        let e = ellipse_family(&[(2.0, 1.0)]).unwrap();
        assert_eq!(e[0].len(), 256);
        assert_eq!(square_sweep(1.0, 3.0, 5).unwrap().len(), 5);
        assert_eq!(rectangle_family(&[(1.0, 2.0)]).unwrap()[0].len(), 4);
    }
}
