//! Hill's series for the reading of a small region: prediction from region
//! moments, two-direction averaging and empirical error orders.
//!
//! Frame convention: the series is written with θ measured from the chisel
//! to the tracer, so the centroid offset `x̄` is the projection of
//! `centroid − base` onto `−(cos θ₀, sin θ₀)` in this crate's rod-angle
//! convention (tracer to chisel).

use alloc::vec::Vec;
use core::f64::consts::PI;

#[allow(unused_imports)]
use num_traits::Float;

use crate::dynamics::trace_loop;
use crate::error::{ensure_finite, ensure_positive, Error, Result};
use crate::geom2d::{moments, signed_area, PlanarPath, Point2, RegionMoments};
use crate::quad::line_fit;

/// R² a log–log fit needs before its slope is trusted.
pub const FIT_R2_THRESHOLD: f64 = 0.98;

/// Series predictions for one base point and initial direction.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HillPrediction {
    /// `A(1 + x̄/ℓ + R_B²/2ℓ²)`.
    pub ell_sigma_predicted: f64,
    /// `A(1 + R_B²/2ℓ²)`.
    pub averaged_predicted: f64,
    pub base: Point2,
    pub initial_direction: f64,
    pub x_bar: f64,
}

/// Predicts the reading `ℓσ` from moments taken about `base`.
pub fn hill_predict(moments: &RegionMoments, base: Point2, initial_direction: f64, ell: f64) -> HillPrediction {
    let axis = -Point2::from_angle(initial_direction);
    let x_bar = (moments.centroid - base).dot(axis);
    let a = moments.area;
    let quad = moments.second_moment / (2.0 * ell * ell);
    HillPrediction {
        ell_sigma_predicted: a + a * x_bar / ell + quad,
        averaged_predicted: a + quad,
        base,
        initial_direction,
        x_bar,
    }
}

/// Moments about vertex `base_index` followed by [`hill_predict`].
pub fn hill_predict_for(boundary: &PlanarPath, base_index: usize, theta0: f64, ell: f64) -> Result<HillPrediction> {
    ensure_positive(ell, "ell")?;
    let base = vertex(boundary, base_index)?;
    Ok(hill_predict(&moments(boundary, base)?, base, theta0, ell))
}

fn vertex(boundary: &PlanarPath, index: usize) -> Result<Point2> {
    boundary
        .vertices()
        .get(index)
        .copied()
        .ok_or(Error::IndexOutOfRange {
            index,
            len: boundary.len(),
        })
}

/// The simulated reading `ℓ²Δθ` for one lap from vertex `base_index`.
pub fn measure_once(boundary: &PlanarPath, base_index: usize, theta0: f64, ell: f64, step: f64) -> Result<f64> {
    let tr = trace_loop(boundary, base_index, theta0, ell, step)?;
    Ok(ell * ell * tr.delta_theta)
}

/// Readings with opposite initial directions.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TwoDirectionReading {
    /// Reading from `θ₀`.
    pub first: f64,
    /// Reading from `θ₀ + π`.
    pub second: f64,
    pub average: f64,
}

pub fn measure_two_directions(
    boundary: &PlanarPath,
    base_index: usize,
    theta0: f64,
    ell: f64,
    step: f64,
) -> Result<TwoDirectionReading> {
    let first = measure_once(boundary, base_index, theta0, ell, step)?;
    let second = measure_once(boundary, base_index, theta0 + PI, ell, step)?;
    Ok(TwoDirectionReading {
        first,
        second,
        average: 0.5 * (first + second),
    })
}

/// Slope of a log–log least-squares fit.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ExponentFit {
    /// Exponent of the absolute error.
    pub slope: f64,
    pub r_squared: f64,
    /// `r_squared > FIT_R2_THRESHOLD`.
    pub conclusive: bool,
}

impl ExponentFit {
    fn from_points(scales: &[f64], errors: &[f64]) -> Self {
        let pts: Vec<(f64, f64)> = scales
            .iter()
            .zip(errors)
            .map(|(s, e)| (s.ln(), e.max(f64::MIN_POSITIVE).ln()))
            .collect();
        let (slope, _, r_squared) = line_fit(&pts);
        ExponentFit {
            slope,
            r_squared,
            conclusive: r_squared > FIT_R2_THRESHOLD,
        }
    }

    /// Exponent of the error relative to the area, which scales as `s²`.
    pub fn relative_slope(&self) -> f64 {
        self.slope - 2.0
    }
}

/// One scale of an error-order study.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct StudyRow {
    pub scale: f64,
    pub area: f64,
    pub reading: f64,
    pub reading_opposite: f64,
    pub averaged_reading: f64,
    pub hill_prediction: f64,
    pub averaged_prediction: f64,
    /// |reading − A|
    pub err_raw_vs_area: f64,
    /// |reading − Hill prediction|
    pub err_raw_vs_hill: f64,
    /// |averaged reading − averaged prediction|
    pub err_averaged_vs_prediction: f64,
    /// |averaged reading − A|
    pub err_averaged_vs_area: f64,
}

/// Rows and fitted exponents of [`error_order_study`].
#[derive(Debug, Clone, PartialEq)]
pub struct ErrorStudy {
    pub rows: Vec<StudyRow>,
    pub raw_vs_area: ExponentFit,
    pub raw_vs_hill: ExponentFit,
    pub averaged_vs_prediction: ExponentFit,
    pub averaged_vs_area: ExponentFit,
}

/// Shrinks `template` about vertex `base_index` by each scale, measures it
/// and fits absolute-error exponents. The truth is the exact polygon area.
/// `step` is the integration step at scale 1; each run uses `scale · step`
/// so integration error stays below model error.
pub fn error_order_study(
    template: &PlanarPath,
    base_index: usize,
    theta0: f64,
    ell: f64,
    scales: &[f64],
    step: f64,
) -> Result<ErrorStudy> {
    ensure_positive(ell, "ell")?;
    ensure_positive(step, "step")?;
    ensure_finite(theta0, "theta0")?;
    if scales.len() < 3 {
        return Err(Error::InvalidParameter {
            name: "scales",
            reason: "need at least 3",
        });
    }
    if scales.iter().any(|&s| !(s > 0.0 && s < 1.0)) {
        return Err(Error::InvalidParameter {
            name: "scales",
            reason: "each must lie in (0, 1)",
        });
    }
    if scales.windows(2).any(|w| !(w[1] < w[0])) {
        return Err(Error::InvalidParameter {
            name: "scales",
            reason: "must be strictly decreasing",
        });
    }
    let base = vertex(template, base_index)?;
    let rows = scales
        .iter()
        .map(|&s| study_row(template, base_index, base, theta0, ell, s, step))
        .collect::<Result<Vec<_>>>()?;
    let fit = |f: fn(&StudyRow) -> f64| {
        let errs: Vec<f64> = rows.iter().map(f).collect();
        ExponentFit::from_points(scales, &errs)
    };
    Ok(ErrorStudy {
        raw_vs_area: fit(|r| r.err_raw_vs_area),
        raw_vs_hill: fit(|r| r.err_raw_vs_hill),
        averaged_vs_prediction: fit(|r| r.err_averaged_vs_prediction),
        averaged_vs_area: fit(|r| r.err_averaged_vs_area),
        rows,
    })
}

fn study_row(
    template: &PlanarPath,
    base_index: usize,
    base: Point2,
    theta0: f64,
    ell: f64,
    scale: f64,
    step: f64,
) -> Result<StudyRow> {
    let region = template.scaled_about(base, scale);
    let area = signed_area(&region)?;
    let pred = hill_predict(&moments(&region, base)?, base, theta0, ell);
    let two = measure_two_directions(&region, base_index, theta0, ell, step * scale)?;
    Ok(StudyRow {
        scale,
        area,
        reading: two.first,
        reading_opposite: two.second,
        averaged_reading: two.average,
        hill_prediction: pred.ell_sigma_predicted,
        averaged_prediction: pred.averaged_predicted,
        err_raw_vs_area: (two.first - area).abs(),
        err_raw_vs_hill: (two.first - pred.ell_sigma_predicted).abs(),
        err_averaged_vs_prediction: (two.average - pred.averaged_predicted).abs(),
        err_averaged_vs_area: (two.average - area).abs(),
    })
}

/// Truncated series for `ℓ² dθ/dφ` with the tracer at polar coordinates
/// `(r, φ)` about the base and the rod at angle `theta`:
///
/// `r²/2 + r⁴/8ℓ² + r⁶/144ℓ⁴ − (r³/3ℓ + r⁵/30ℓ³) cos(φ − θ)`.
///
/// The sign of the cosine part reflects the rod-angle convention (see the
/// module docs). `terms` keeps that many terms of the θ-free part (1 to 3)
/// and up to two of the cosine part.
pub fn hill_rate(r: f64, phi: f64, theta: f64, ell: f64, terms: usize) -> f64 {
    let terms = terms.clamp(1, 3);
    let x = r / ell;
    let free = [0.5 * x * x, x.powi(4) / 8.0, x.powi(6) / 144.0];
    let odd = [x.powi(3) / 3.0, x.powi(5) / 30.0];
    let even_sum: f64 = free[..terms].iter().sum();
    let odd_sum: f64 = odd[..terms.min(2)].iter().sum();
    ell * ell * (even_sum - odd_sum * (phi - theta).cos())
}
