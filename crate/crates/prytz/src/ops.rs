//! Engine calls shared by the CLI and the service, returning JSON shapes.

use prytz_core::dynamics::{area_identity_from_trace, integrate, trace_loop};
use prytz_core::estimator::{error_order_study, hill_predict, measure_two_directions};
use prytz_core::geom2d::{moments, signed_area};
use prytz_core::holonomy::{attracting_winding, holonomy_curve, holonomy_polygon, ConnectionParams};
use prytz_core::menzin::{parallelogram_holonomy, ParallelogramSpec};
use prytz_core::{Error, PlanarPath, Point2, Result};

use crate::json::{EstimateJson, LoopHolonomyJson, MenzinJson, StudyJson, TraceJson};

/// Trace along `path`. With `as_loop` the path must be closed; the trace
/// starts at `base_index` and the area identity is attached.
pub fn trace(
    path: &PlanarPath,
    theta0: f64,
    ell: f64,
    step: f64,
    samples: usize,
    as_loop: Option<usize>,
) -> Result<TraceJson> {
    match as_loop {
        Some(base) => {
            let a_region = signed_area(path)?;
            let tr = trace_loop(path, base, theta0, ell, step)?;
            Ok(TraceJson::new(&tr, samples, Some(area_identity_from_trace(a_region, &tr))))
        }
        None => Ok(TraceJson::new(&integrate(path, theta0, ell, step)?, samples, None)),
    }
}

/// Straight tracer run along the x-axis from the origin.
pub fn tractrix_line(length: f64, theta0: f64, ell: f64, step: f64, samples: usize) -> Result<TraceJson> {
    if !(length.is_finite() && length > 0.0) {
        return Err(Error::InvalidParameter {
            name: "line",
            reason: "length must be positive",
        });
    }
    let path = PlanarPath::open(vec![Point2::ORIGIN, Point2::new(length, 0.0)])?;
    trace(&path, theta0, ell, step, samples, None)
}

/// Loop holonomy by the closed-form edge product, or by integrating the
/// transport ODE when `ode` is set. The winding number is attached for
/// hyperbolic holonomy.
pub fn holonomy(path: &PlanarPath, base_index: usize, ell: f64, step: f64, ode: bool) -> Result<LoopHolonomyJson> {
    let params = ConnectionParams::new(ell)?;
    let h = if ode {
        holonomy_curve(path, base_index, &params, step)?
    } else {
        holonomy_polygon(path, base_index, &params)?
    };
    let winding = attracting_winding(path, base_index, &h, &params, step).unwrap_or_else(|e| {
        log::warn!("winding number unavailable: {e}");
        None
    });
    Ok(LoopHolonomyJson::new(&h, winding, if ode { "ode" } else { "polygon" }))
}

pub fn parallelogram(v: Point2, w: Point2, ell: f64) -> Result<MenzinJson> {
    let spec = ParallelogramSpec::new(v, w, ell)?;
    Ok((&parallelogram_holonomy(&spec)).into())
}

/// Readings from `θ₀` and `θ₀ + π` with the series predictions.
pub fn estimate(path: &PlanarPath, base_index: usize, theta0: f64, ell: f64, step: f64) -> Result<EstimateJson> {
    let base = *path.vertices().get(base_index).ok_or(Error::IndexOutOfRange {
        index: base_index,
        len: path.len(),
    })?;
    let m = moments(path, base)?;
    let reading = measure_two_directions(path, base_index, theta0, ell, step)?;
    let prediction = hill_predict(&m, base, theta0, ell);
    Ok(EstimateJson::new(ell, base_index, &reading, &prediction, &m))
}

pub fn study(
    path: &PlanarPath,
    base_index: usize,
    theta0: f64,
    ell: f64,
    scales: &[f64],
    step: f64,
) -> Result<StudyJson> {
    let s = error_order_study(path, base_index, theta0, ell, scales, step)?;
    Ok(StudyJson::new(&s, base_index, theta0, ell))
}
