//! The su(1,1)-valued connection `ω = (1/2ℓ)(0, dz; dz̄, 0)`: transports
//! along segments and curves, loop holonomy, curvature probes and the
//! balancing point of an elliptic holonomy.
//!
//! Moving the tracer along a segment `v` acts on rod directions `e^{iθ}` by
//! `exp(−ω(v))`. Along a path the transports compose with later edges on the
//! LEFT: `H = e^{X_n} ⋯ e^{X_1}`.

use alloc::vec::Vec;
use core::f64::consts::PI;

#[allow(unused_imports)]
use num_traits::Float;

use crate::dynamics::trace_loop;
use crate::error::{ensure_positive, Error, Result};
use crate::geom2d::{PlanarPath, Point2};
use crate::su11::{classify, exp_algebra, mobius_apply, HolonomyClass, HolonomyKind, Su11, Su11Algebra};
use crate::Complex;

/// Tolerance for "this direction is fixed by the holonomy" in [`winding_number`].
pub const WINDING_FIXED_TOLERANCE: f64 = 1e-7;

/// Parameters of the connection.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ConnectionParams {
    pub ell: f64,
}

impl ConnectionParams {
    pub fn new(ell: f64) -> Result<Self> {
        ensure_positive(ell, "ell")?;
        Ok(ConnectionParams { ell })
    }
}

/// Holonomy of a closed loop at a base point.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LoopHolonomy {
    pub element: Su11,
    pub base: Point2,
    pub classification: HolonomyClass,
    /// Winding number of the lap started at the attracting direction, when
    /// it has been computed.
    pub winding_number: Option<i64>,
}

impl LoopHolonomy {
    pub fn from_element(element: Su11, base: Point2) -> Self {
        LoopHolonomy {
            element,
            base,
            classification: classify(&element),
            winding_number: None,
        }
    }
}

/// `ω(v)`: γ = 0, β = (v_x + i v_y) / 2ℓ.
pub fn omega(v: Point2, params: &ConnectionParams) -> Su11Algebra {
    Su11Algebra::new(0.0, v.to_complex() / (2.0 * params.ell))
}

/// Transport for moving the tracer along the segment `v`: `exp(−ω(v))`.
pub fn segment_transport(v: Point2, params: &ConnectionParams) -> Su11 {
    exp_algebra(&-omega(v, params))
}

/// Per-edge transports of a closed loop starting at `base_index`.
pub fn edge_transports(loop_path: &PlanarPath, base_index: usize, params: &ConnectionParams) -> Result<Vec<Su11>> {
    let path = loop_path.rotated_to_start(base_index)?;
    Ok(path
        .edges()
        .map(|(a, b)| segment_transport(b - a, params))
        .collect())
}

/// Closed-form holonomy of a polygonal loop.
pub fn holonomy_polygon(
    loop_path: &PlanarPath,
    base_index: usize,
    params: &ConnectionParams,
) -> Result<LoopHolonomy> {
    let transports = edge_transports(loop_path, base_index, params)?;
    let element = transports
        .iter()
        .fold(Su11::IDENTITY, |acc, t| t.compose(&acc));
    Ok(LoopHolonomy::from_element(
        element,
        loop_path.vertices()[base_index],
    ))
}

type Mat2 = [[Complex; 2]; 2];

fn mat_mul(x: &Mat2, y: &Mat2) -> Mat2 {
    [
        [
            x[0][0] * y[0][0] + x[0][1] * y[1][0],
            x[0][0] * y[0][1] + x[0][1] * y[1][1],
        ],
        [
            x[1][0] * y[0][0] + x[1][1] * y[1][0],
            x[1][0] * y[0][1] + x[1][1] * y[1][1],
        ],
    ]
}

fn mat_axpy(y: &Mat2, h: f64, k: &Mat2) -> Mat2 {
    let mut r = *y;
    for i in 0..2 {
        for j in 0..2 {
            r[i][j] += k[i][j] * h;
        }
    }
    r
}

/// Holonomy by RK4 integration of the transport ODE `A′ = −ω(γ′)·A`,
/// `A(0) = I`, with arclength substeps no longer than `step`. The iterate is
/// projected back onto SU(1,1) after every step; the largest
/// pre-projection defect is logged at debug level.
pub fn holonomy_curve(
    loop_path: &PlanarPath,
    base_index: usize,
    params: &ConnectionParams,
    step: f64,
) -> Result<LoopHolonomy> {
    ensure_positive(step, "step")?;
    let path = loop_path.rotated_to_start(base_index)?;
    let mut a = Su11::IDENTITY.matrix();
    let mut drift: f64 = 0.0;
    for (p, q) in path.edges() {
        let edge = q - p;
        let len = edge.norm();
        let n = (len / step).ceil().max(1.0) as usize;
        let h = len / n as f64;
        let gen = (-omega(edge * (1.0 / len), params)).matrix();
        for _ in 0..n {
            let k1 = mat_mul(&gen, &a);
            let k2 = mat_mul(&gen, &mat_axpy(&a, 0.5 * h, &k1));
            let k3 = mat_mul(&gen, &mat_axpy(&a, 0.5 * h, &k2));
            let k4 = mat_mul(&gen, &mat_axpy(&a, h, &k3));
            for i in 0..2 {
                for j in 0..2 {
                    a[i][j] += (k1[i][j] + k2[i][j] * 2.0 + k3[i][j] * 2.0 + k4[i][j]) * (h / 6.0);
                }
            }
            let det = (a[0][0] * a[1][1] - a[0][1] * a[1][0]).re;
            drift = drift.max((det - 1.0).abs());
            let proj = Su11::projected(a[0][0], a[0][1]);
            a = proj.matrix();
        }
    }
    log::debug!("holonomy_curve: max determinant drift before projection {drift:e}");
    let element = Su11::projected(a[0][0], a[0][1]);
    Ok(LoopHolonomy::from_element(element, path.start()))
}

/// First-order curvature estimate `(H_ε − I)/ε²` for the ε-square centred
/// at `at`.
///
/// The loop runs from `at` to the lower-left corner, once round the square
/// counterclockwise and back to `at`, so the enclosed region has its
/// centroid at the base point and the O(ε) correction vanishes. The limit is
/// `(1/ℓ²)·diag(i/2, −i/2)`. The real part of `a − 1` is O(ε²) and dropped.
pub fn curvature_probe(at: Point2, eps: f64, params: &ConnectionParams) -> Result<Su11Algebra> {
    let h = curvature_probe_holonomy(at, eps, params)?;
    let e2 = eps * eps;
    Ok(Su11Algebra::new(h.element.a().im / e2, h.element.b() / e2))
}

/// The loop used by [`curvature_probe`].
pub fn curvature_probe_loop(at: Point2, eps: f64) -> Result<PlanarPath> {
    ensure_positive(eps, "eps")?;
    let half = 0.5 * eps;
    let c0 = at + Point2::new(-half, -half);
    PlanarPath::closed(alloc::vec![
        at,
        c0,
        at + Point2::new(half, -half),
        at + Point2::new(half, half),
        at + Point2::new(-half, half),
        c0,
    ])
}

pub fn curvature_probe_holonomy(at: Point2, eps: f64, params: &ConnectionParams) -> Result<LoopHolonomy> {
    holonomy_polygon(&curvature_probe_loop(at, eps)?, 0, params)
}

/// Holonomy of the figure-eight `0, v, v+w, w, −w, −v−w, −v` (enclosed
/// oriented area zero).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FigureEight {
    pub holonomy: LoopHolonomy,
    /// `2 + 16 Im²(b̄d)|ad + bc|²`.
    pub closed_form_trace: f64,
    /// True when `v` and `w` are (numerically) parallel; the trace is then 2.
    pub dependent: bool,
}

pub fn figure_eight_loop(v: Point2, w: Point2) -> Result<PlanarPath> {
    PlanarPath::closed(alloc::vec![
        Point2::ORIGIN,
        v,
        v + w,
        w,
        -w,
        -v - w,
        -v,
    ])
}

pub fn figure_eight_holonomy(v: Point2, w: Point2, params: &ConnectionParams) -> Result<FigureEight> {
    let dependent = v.cross(w).abs() <= 1e-12 * v.norm() * w.norm();
    if dependent {
        log::warn!("figure_eight_holonomy: v and w are parallel, trace degenerates to 2");
    }
    let holonomy = holonomy_polygon(&figure_eight_loop(v, w)?, 0, params)?;
    let ex = segment_transport(v, params);
    let ey = segment_transport(w, params);
    let (a, b, c, d) = (ex.a(), ex.b(), ey.a(), ey.b());
    let im_bd = (b.conj() * d).im;
    let closed_form_trace = 2.0 + 16.0 * im_bd * im_bd * (a * d + b * c).norm_sqr();
    Ok(FigureEight {
        holonomy,
        closed_form_trace,
        dependent,
    })
}

/// Net number of turns of the rod over one lap started at a fixed direction
/// `theta_start` of the loop's holonomy.
pub fn winding_number(
    loop_path: &PlanarPath,
    base_index: usize,
    theta_start: f64,
    params: &ConnectionParams,
    step: f64,
) -> Result<i64> {
    let h = holonomy_polygon(loop_path, base_index, params)?;
    let z = Complex::from_polar(1.0, theta_start);
    let defect = (mobius_apply(&h.element, z) - z).norm();
    if !(defect <= WINDING_FIXED_TOLERANCE) {
        return Err(Error::NotFixedPoint { defect });
    }
    let tr = trace_loop(loop_path, base_index, theta_start, params.ell, step)?;
    Ok((tr.delta_theta / (2.0 * PI)).round() as i64)
}

/// Winding number at the attracting direction, if the holonomy is hyperbolic.
pub fn attracting_winding(
    loop_path: &PlanarPath,
    base_index: usize,
    holonomy: &LoopHolonomy,
    params: &ConnectionParams,
    step: f64,
) -> Result<Option<i64>> {
    match holonomy.classification {
        HolonomyClass::Hyperbolic { attracting, .. } => {
            winding_number(loop_path, base_index, attracting.arg(), params, step).map(Some)
        }
        _ => Ok(None),
    }
}

/// Centre of an elliptic holonomy and the plane point it corresponds to.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BalancePoint {
    pub z_center: Complex,
    /// Starting the trace here, running to the base, round the loop and back
    /// makes the holonomy a pure rotation.
    pub f_point: Point2,
}

/// For an elliptic holonomy with disk centre `z`, the point
/// `base + 2ℓ·artanh|z|·z/|z|`, whose segment transport is the disk
/// translation taking `z` to 0.
pub fn balance_point(h: &LoopHolonomy, params: &ConnectionParams) -> Result<BalancePoint> {
    let HolonomyClass::Elliptic { center, .. } = h.classification else {
        return Err(Error::NotElliptic);
    };
    let r = center.norm();
    let f_point = if r == 0.0 {
        h.base
    } else {
        let dir = Point2::from_complex(center / r);
        h.base + dir * (2.0 * params.ell * r.atanh())
    };
    Ok(BalancePoint {
        z_center: center,
        f_point,
    })
}

/// Shorthand used by the classification-driven tests and the CLI.
pub fn is_kind(h: &LoopHolonomy, kind: HolonomyKind) -> bool {
    h.classification.kind() == kind
}
