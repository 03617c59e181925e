//! CSV and SVG writers.
//!
//! CSV floats use Rust's shortest round-trip formatting. SVG coordinates are
//! in rod lengths, rounded to 1e-5, with y pointing up.

use std::fmt::Write as _;

use prytz_core::menzin::ScanOutcome;
use serde::Serialize;

use crate::error::AppResult;
use crate::json::{StateJson, StudyRowJson, XY};

fn to_csv<T: Serialize>(rows: impl IntoIterator<Item = T>) -> AppResult<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    for r in rows {
        w.serialize(r)?;
    }
    let bytes = w.into_inner().map_err(|e| crate::error::AppError::Input(e.to_string()))?;
    Ok(String::from_utf8(bytes).expect("csv output is UTF-8"))
}

/// Columns `t, x, y, theta, chisel_x, chisel_y`.
pub fn trace_csv(states: &[StateJson]) -> AppResult<String> {
    to_csv(states)
}

#[derive(Serialize)]
struct ScanCsvRow {
    region_id: usize,
    n_vertices: Option<usize>,
    area: Option<f64>,
    area_over_pi_ell2: Option<f64>,
    trace: Option<f64>,
    kind: String,
    winding: Option<i64>,
    marginal_flag: Option<bool>,
}

/// One row per region. A region that could not be scanned has kind `error`
/// and empty numeric fields.
pub fn scan_csv(outcomes: &[ScanOutcome]) -> AppResult<String> {
    to_csv(outcomes.iter().map(|o| match o {
        Ok(r) => ScanCsvRow {
            region_id: r.region_id,
            n_vertices: Some(r.n_vertices),
            area: Some(r.area),
            area_over_pi_ell2: Some(r.area_over_pi_ell2),
            trace: Some(r.trace),
            kind: r.kind.as_str().to_string(),
            winding: r.winding,
            marginal_flag: Some(r.marginal_flag),
        },
        Err((id, _)) => ScanCsvRow {
            region_id: *id,
            n_vertices: None,
            area: None,
            area_over_pi_ell2: None,
            trace: None,
            kind: "error".to_string(),
            winding: None,
            marginal_flag: None,
        },
    }))
}

#[derive(Serialize)]
struct StudyCsvRow {
    scale: f64,
    reading: f64,
    hill_prediction: f64,
    averaged_reading: f64,
    averaged_prediction: f64,
    area: f64,
    abs_err_raw_vs_area: f64,
    abs_err_raw_vs_hill: f64,
    abs_err_averaged_vs_prediction: f64,
    abs_err_averaged_vs_area: f64,
    rel_err_raw_vs_area: f64,
    rel_err_raw_vs_hill: f64,
    rel_err_averaged_vs_prediction: f64,
    rel_err_averaged_vs_area: f64,
}

/// Per-scale readings with absolute errors and the same errors relative to
/// the region's area.
pub fn study_csv(rows: &[StudyRowJson]) -> AppResult<String> {
    to_csv(rows.iter().map(|r| StudyCsvRow {
        scale: r.scale,
        reading: r.reading,
        hill_prediction: r.hill_prediction,
        averaged_reading: r.averaged_reading,
        averaged_prediction: r.averaged_prediction,
        area: r.area,
        abs_err_raw_vs_area: r.abs_err_raw_vs_area,
        abs_err_raw_vs_hill: r.abs_err_raw_vs_hill,
        abs_err_averaged_vs_prediction: r.abs_err_averaged_vs_prediction,
        abs_err_averaged_vs_area: r.abs_err_averaged_vs_area,
        rel_err_raw_vs_area: r.abs_err_raw_vs_area / r.area,
        rel_err_raw_vs_hill: r.abs_err_raw_vs_hill / r.area,
        rel_err_averaged_vs_prediction: r.abs_err_averaged_vs_prediction / r.area,
        rel_err_averaged_vs_area: r.abs_err_averaged_vs_area / r.area,
    }))
}

/// Side of the square viewport the drawing is scaled into.
pub const SVG_VIEWBOX: f64 = 1000.0;

struct Frame {
    min: XY,
    scale: f64,
    offset: XY,
}

impl Frame {
    /// Fits the bounding box of `pts` (plus a margin of a quarter rod) into the
    /// fixed viewport, preserving aspect ratio.
    fn fit(pts: impl Iterator<Item = XY>) -> Frame {
        let (mut lo, mut hi) = ([f64::INFINITY; 2], [f64::NEG_INFINITY; 2]);
        for p in pts {
            for k in 0..2 {
                lo[k] = lo[k].min(p[k]);
                hi[k] = hi[k].max(p[k]);
            }
        }
        let margin = 0.25;
        let lo = [lo[0] - margin, lo[1] - margin];
        let hi = [hi[0] + margin, hi[1] + margin];
        let span = (hi[0] - lo[0]).max(hi[1] - lo[1]);
        let scale = SVG_VIEWBOX / span;
        Frame {
            min: lo,
            scale,
            offset: [
                0.5 * (SVG_VIEWBOX - (hi[0] - lo[0]) * scale),
                0.5 * (SVG_VIEWBOX - (hi[1] - lo[1]) * scale),
            ],
        }
    }

    fn map(&self, p: XY) -> (f64, f64) {
        let x = self.offset[0] + (p[0] - self.min[0]) * self.scale;
        let y = SVG_VIEWBOX - self.offset[1] - (p[1] - self.min[1]) * self.scale;
        (round5(x), round5(y))
    }
}

fn round5(v: f64) -> f64 {
    let r = (v * 1e5).round() / 1e5;
    if r == 0.0 { 0.0 } else { r }
}

fn polyline(out: &mut String, frame: &Frame, pts: &[XY], class: &str, color: &str) {
    let _ = write!(out, r#"  <polyline class="{class}" fill="none" stroke="{color}" stroke-width="2" points=""#);
    for (i, p) in pts.iter().enumerate() {
        let (x, y) = frame.map(*p);
        let sep = if i == 0 { "" } else { " " };
        let _ = write!(out, "{sep}{x},{y}");
    }
    out.push_str("\"/>\n");
}

/// Tracer and chisel curves, the initial circle of radius ℓ about the first
/// tracer point and the initial rod. Input coordinates are world units.
pub fn trace_svg(tracer: &[XY], chisel: &[XY], ell: f64) -> String {
    let unit = |p: &XY| [p[0] / ell, p[1] / ell];
    let tracer: Vec<XY> = tracer.iter().map(unit).collect();
    let chisel: Vec<XY> = chisel.iter().map(unit).collect();
    let start = tracer.first().copied().unwrap_or([0.0, 0.0]);
    let circle_box = [[start[0] - 1.0, start[1] - 1.0], [start[0] + 1.0, start[1] + 1.0]];
    let frame = Frame::fit(tracer.iter().chain(chisel.iter()).chain(circle_box.iter()).copied());

    let mut out = String::new();
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" viewBox="0 0 {v} {v}" width="{v}" height="{v}">"#,
        v = SVG_VIEWBOX
    );
    let (cx, cy) = frame.map(start);
    let _ = writeln!(
        out,
        r##"  <circle class="initial-circle" cx="{cx}" cy="{cy}" r="{}" fill="none" stroke="#999" stroke-dasharray="6 4"/>"##,
        round5(frame.scale)
    );
    if let Some(c0) = chisel.first() {
        let (px, py) = frame.map(*c0);
        let _ = writeln!(
            out,
            r##"  <line class="rod" x1="{cx}" y1="{cy}" x2="{px}" y2="{py}" stroke="#333" stroke-width="3"/>"##
        );
    }
    polyline(&mut out, &frame, &tracer, "tracer", "#1f77b4");
    polyline(&mut out, &frame, &chisel, "chisel", "#d62728");
    out.push_str("</svg>\n");
    out
}
