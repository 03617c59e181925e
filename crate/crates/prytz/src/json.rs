//! JSON shapes shared by the CLI, the exported files and the service.
//!
//! Points are `[x, y]`, complex numbers `[re, im]`. Floats are written by
//! serde_json in shortest round-trip form, so parsing a file back gives the
//! same bits.

use prytz_core::dynamics::{AreaIdentity, TraceResult};
use prytz_core::estimator::{ErrorStudy, ExponentFit, HillPrediction, StudyRow, TwoDirectionReading};
use prytz_core::holonomy::LoopHolonomy;
use prytz_core::menzin::{CircleAttractor, MenzinReport, MinimumCheck, ScanRow};
use prytz_core::{Complex, HolonomyClass, PlanarPath, Point2, RegionMoments, Su11};
use serde::{Deserialize, Serialize};

pub type XY = [f64; 2];

pub fn xy(p: Point2) -> XY {
    [p.x, p.y]
}

pub fn point(p: XY) -> Point2 {
    Point2::new(p[0], p[1])
}

pub fn complex(z: Complex) -> XY {
    [z.re, z.im]
}

/// `{"closed": bool, "vertices": [[x, y], ...]}`
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PathJson {
    pub closed: bool,
    pub vertices: Vec<XY>,
}

impl PathJson {
    pub fn from_path(path: &PlanarPath) -> Self {
        PathJson {
            closed: path.is_closed(),
            vertices: path.vertices().iter().copied().map(xy).collect(),
        }
    }

    pub fn to_path(&self) -> prytz_core::Result<PlanarPath> {
        PlanarPath::new(self.vertices.iter().copied().map(point).collect(), self.closed)
    }
}

/// `{"a": [re, im], "b": [re, im]}`
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Su11Json {
    pub a: XY,
    pub b: XY,
}

impl Su11Json {
    pub fn from_element(m: &Su11) -> Self {
        Su11Json {
            a: complex(m.a()),
            b: complex(m.b()),
        }
    }

    pub fn to_element(&self) -> prytz_core::Result<Su11> {
        Su11::new(Complex::new(self.a[0], self.a[1]), Complex::new(self.b[0], self.b[1]))
    }
}

/// Classification with fixed points on the unit circle and their circle-map
/// multipliers (attracting first for hyperbolic elements). Elliptic elements
/// carry their disk centre and rotation angle instead.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ClassJson {
    pub kind: String,
    pub trace: f64,
    pub fixed_points: Vec<XY>,
    pub multipliers: Vec<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub center: Option<XY>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub rotation: Option<f64>,
}

impl ClassJson {
    pub fn from_class(c: &HolonomyClass) -> Self {
        let mut out = ClassJson {
            kind: c.kind().as_str().to_string(),
            trace: c.trace(),
            fixed_points: Vec::new(),
            multipliers: Vec::new(),
            center: None,
            rotation: None,
        };
        match *c {
            HolonomyClass::Identity { .. } => {}
            HolonomyClass::Elliptic { center, rotation, .. } => {
                out.center = Some(complex(center));
                out.rotation = Some(rotation);
            }
            HolonomyClass::Parabolic { fixed_point, .. } => {
                out.fixed_points.push(complex(fixed_point));
                out.multipliers.push(1.0);
            }
            HolonomyClass::Hyperbolic {
                attracting,
                repelling,
                attracting_multiplier,
                repelling_multiplier,
                ..
            } => {
                out.fixed_points = vec![complex(attracting), complex(repelling)];
                out.multipliers = vec![attracting_multiplier, repelling_multiplier];
            }
        }
        out
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LoopHolonomyJson {
    pub element: Su11Json,
    pub base: XY,
    pub classification: ClassJson,
    pub winding_prediction: Option<i64>,
    /// `"polygon"` for the closed-form product, `"ode"` for integration.
    pub method: String,
}

impl LoopHolonomyJson {
    pub fn new(h: &LoopHolonomy, winding: Option<i64>, method: &str) -> Self {
        LoopHolonomyJson {
            element: Su11Json::from_element(&h.element),
            base: xy(h.base),
            classification: ClassJson::from_class(&h.classification),
            winding_prediction: winding,
            method: method.to_string(),
        }
    }
}

/// One sampled state. `t` is tracer arclength.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct StateJson {
    pub t: f64,
    pub x: f64,
    pub y: f64,
    pub theta: f64,
    pub chisel_x: f64,
    pub chisel_y: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct AreaIdentityJson {
    pub a_region: f64,
    pub ell_sigma: f64,
    pub a_gamma: f64,
    pub residual: f64,
}

impl From<AreaIdentity> for AreaIdentityJson {
    fn from(r: AreaIdentity) -> Self {
        AreaIdentityJson {
            a_region: r.a_region,
            ell_sigma: r.ell_sigma,
            a_gamma: r.a_gamma,
            residual: r.residual,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TraceJson {
    pub ell: f64,
    pub theta0: f64,
    pub final_theta: f64,
    pub delta_theta: f64,
    pub sigma: f64,
    #[serde(rename = "sigma_T")]
    pub sigma_t: f64,
    pub swept_area: f64,
    pub chisel_area: f64,
    pub max_constraint_defect: f64,
    /// Number of integrator states before downsampling.
    pub total_states: usize,
    pub states: Vec<StateJson>,
    pub chisel_path: PathJson,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub area_identity: Option<AreaIdentityJson>,
}

/// Indices of `count` states spread evenly over `0..len`, always keeping the
/// first and last.
pub fn sample_indices(len: usize, count: usize) -> Vec<usize> {
    if len == 0 {
        return Vec::new();
    }
    let count = count.clamp(2, len.max(2)).min(len);
    if count >= len {
        return (0..len).collect();
    }
    let mut out: Vec<usize> = (0..count)
        .map(|k| ((k as f64) * (len - 1) as f64 / (count - 1) as f64).round() as usize)
        .collect();
    out.dedup();
    out
}

pub fn states(trace: &TraceResult, count: usize) -> Vec<StateJson> {
    sample_indices(trace.states.len(), count)
        .into_iter()
        .map(|i| {
            let s = trace.states[i];
            let c = s.chisel();
            StateJson {
                t: trace.arclength[i],
                x: s.q.x,
                y: s.q.y,
                theta: s.theta,
                chisel_x: c.x,
                chisel_y: c.y,
            }
        })
        .collect()
}

impl TraceJson {
    /// `samples` bounds the number of states and chisel-path vertices.
    pub fn new(trace: &TraceResult, samples: usize, identity: Option<AreaIdentity>) -> Self {
        let states = states(trace, samples);
        let chisel = states.iter().map(|s| [s.chisel_x, s.chisel_y]).collect();
        let last = trace.final_state();
        TraceJson {
            ell: last.ell,
            theta0: trace.theta0,
            final_theta: last.theta,
            delta_theta: trace.delta_theta,
            sigma: trace.sigma,
            sigma_t: trace.sigma_t,
            swept_area: trace.swept_area,
            chisel_area: trace.chisel_area,
            max_constraint_defect: trace.max_constraint_defect,
            total_states: trace.states.len(),
            states,
            chisel_path: PathJson {
                closed: false,
                vertices: chisel,
            },
            area_identity: identity.map(Into::into),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MenzinJson {
    pub v: XY,
    pub w: XY,
    pub ell: f64,
    pub element: Su11Json,
    pub trace: f64,
    pub trace_formula: f64,
    pub im_bd: f64,
    pub attracting: bool,
    pub z_plus: Option<XY>,
    pub z_minus: Option<XY>,
    pub multiplier_plus: Option<f64>,
    pub multiplier_minus: Option<f64>,
    pub area: f64,
    pub area_over_pi_ell2: f64,
}

impl From<&MenzinReport> for MenzinJson {
    fn from(r: &MenzinReport) -> Self {
        MenzinJson {
            v: xy(r.spec.v()),
            w: xy(r.spec.w()),
            ell: r.spec.ell(),
            element: Su11Json::from_element(&r.element),
            trace: r.trace,
            trace_formula: r.trace_formula,
            im_bd: r.im_bd,
            attracting: r.attracting,
            z_plus: r.z_plus.map(complex),
            z_minus: r.z_minus.map(complex),
            multiplier_plus: r.multiplier_plus,
            multiplier_minus: r.multiplier_minus,
            area: r.area,
            area_over_pi_ell2: r.area_ratio,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MinimumJson {
    pub value: f64,
    pub closed_form: f64,
    pub x: f64,
    pub y: f64,
    pub angle: f64,
}

impl MinimumJson {
    pub fn new(m: &MinimumCheck, closed_form: f64) -> Self {
        MinimumJson {
            value: m.value,
            closed_form,
            x: m.x,
            y: m.y,
            angle: m.angle,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CircleJson {
    pub radius: f64,
    pub ell: f64,
    pub predicted_radius: f64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub simulation: Option<CircleSimulationJson>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CircleSimulationJson {
    pub fitted_radius: f64,
    pub radial_spread: f64,
    pub laps: usize,
    pub converged: bool,
    pub lap_deviation: Vec<f64>,
}

impl From<&CircleAttractor> for CircleSimulationJson {
    fn from(c: &CircleAttractor) -> Self {
        CircleSimulationJson {
            fitted_radius: c.fitted_radius,
            radial_spread: c.radial_spread,
            laps: c.laps,
            converged: c.converged,
            lap_deviation: c.lap_deviation.clone(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ScanRowJson {
    pub region_id: usize,
    pub n_vertices: usize,
    pub area: f64,
    pub area_over_pi_ell2: f64,
    pub trace: f64,
    pub kind: String,
    pub winding: Option<i64>,
    pub marginal_flag: bool,
}

impl From<&ScanRow> for ScanRowJson {
    fn from(r: &ScanRow) -> Self {
        ScanRowJson {
            region_id: r.region_id,
            n_vertices: r.n_vertices,
            area: r.area,
            area_over_pi_ell2: r.area_over_pi_ell2,
            trace: r.trace,
            kind: r.kind.as_str().to_string(),
            winding: r.winding,
            marginal_flag: r.marginal_flag,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MomentsJson {
    pub area: f64,
    pub centroid: XY,
    pub second_moment: f64,
    pub mean_square_radius: f64,
}

impl From<&RegionMoments> for MomentsJson {
    fn from(m: &RegionMoments) -> Self {
        MomentsJson {
            area: m.area,
            centroid: xy(m.centroid),
            second_moment: m.second_moment,
            mean_square_radius: m.mean_square_radius,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PredictionJson {
    pub ell_sigma_predicted: f64,
    pub averaged_predicted: f64,
    pub base: XY,
    pub initial_direction: f64,
    pub x_bar: f64,
}

impl From<&HillPrediction> for PredictionJson {
    fn from(p: &HillPrediction) -> Self {
        PredictionJson {
            ell_sigma_predicted: p.ell_sigma_predicted,
            averaged_predicted: p.averaged_predicted,
            base: xy(p.base),
            initial_direction: p.initial_direction,
            x_bar: p.x_bar,
        }
    }
}

/// Readings in both initial directions together with the series predictions.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EstimateJson {
    pub ell: f64,
    pub base_index: usize,
    pub theta0: f64,
    pub area: f64,
    pub reading: f64,
    pub reading_opposite: f64,
    pub averaged_reading: f64,
    pub prediction: PredictionJson,
    pub moments: MomentsJson,
}

impl EstimateJson {
    pub fn new(
        ell: f64,
        base_index: usize,
        r: &TwoDirectionReading,
        p: &HillPrediction,
        m: &RegionMoments,
    ) -> Self {
        EstimateJson {
            ell,
            base_index,
            theta0: p.initial_direction,
            area: m.area,
            reading: r.first,
            reading_opposite: r.second,
            averaged_reading: r.average,
            prediction: p.into(),
            moments: m.into(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FitJson {
    /// Exponent of the absolute error.
    pub slope: f64,
    /// Exponent of the error relative to the area.
    pub relative_slope: f64,
    pub r_squared: f64,
    pub conclusive: bool,
}

impl From<&ExponentFit> for FitJson {
    fn from(f: &ExponentFit) -> Self {
        FitJson {
            slope: f.slope,
            relative_slope: f.relative_slope(),
            r_squared: f.r_squared,
            conclusive: f.conclusive,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct StudyRowJson {
    pub scale: f64,
    pub area: f64,
    pub reading: f64,
    pub reading_opposite: f64,
    pub averaged_reading: f64,
    pub hill_prediction: f64,
    pub averaged_prediction: f64,
    pub abs_err_raw_vs_area: f64,
    pub abs_err_raw_vs_hill: f64,
    pub abs_err_averaged_vs_prediction: f64,
    pub abs_err_averaged_vs_area: f64,
}

impl From<&StudyRow> for StudyRowJson {
    fn from(r: &StudyRow) -> Self {
        StudyRowJson {
            scale: r.scale,
            area: r.area,
            reading: r.reading,
            reading_opposite: r.reading_opposite,
            averaged_reading: r.averaged_reading,
            hill_prediction: r.hill_prediction,
            averaged_prediction: r.averaged_prediction,
            abs_err_raw_vs_area: r.err_raw_vs_area,
            abs_err_raw_vs_hill: r.err_raw_vs_hill,
            abs_err_averaged_vs_prediction: r.err_averaged_vs_prediction,
            abs_err_averaged_vs_area: r.err_averaged_vs_area,
        }
    }
}

/// Fitted exponents of an error-order study; the rows go to CSV.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct StudyJson {
    pub base_index: usize,
    pub theta0: f64,
    pub ell: f64,
    pub raw_vs_area: FitJson,
    pub raw_vs_hill: FitJson,
    pub averaged_vs_prediction: FitJson,
    pub averaged_vs_area: FitJson,
    pub rows: Vec<StudyRowJson>,
}

impl StudyJson {
    pub fn new(study: &ErrorStudy, base_index: usize, theta0: f64, ell: f64) -> Self {
        StudyJson {
            base_index,
            theta0,
            ell,
            raw_vs_area: (&study.raw_vs_area).into(),
            raw_vs_hill: (&study.raw_vs_hill).into(),
            averaged_vs_prediction: (&study.averaged_vs_prediction).into(),
            averaged_vs_area: (&study.averaged_vs_area).into(),
            rows: study.rows.iter().map(Into::into).collect(),
        }
    }
}

/// Body of every error response.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ErrorJson {
    pub code: String,
    pub message: String,
}

/// Pretty JSON with a trailing newline.
pub fn to_pretty<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("DTOs always serialize");
    s.push('\n');
    s
}

#[cfg(test)]
mod tests {
    use super::*;
    use prytz_core::su11::classify;

    #[test]
    fn path_round_trip_is_exact() {
        let p = PlanarPath::closed(vec![
            Point2::new(0.1, 0.2),
            Point2::new(1.0 / 3.0, 0.0),
            Point2::new(0.0, std::f64::consts::PI),
        ])
        .unwrap();
        let text = serde_json::to_string(&PathJson::from_path(&p)).unwrap();
        let back: PathJson = serde_json::from_str(&text).unwrap();
        assert_eq!(back.to_path().unwrap(), p);
    }

    #[test]
    fn path_rejects_unknown_fields() {
        let bad = r#"{"closed": true, "vertices": [], "extra": 1}"#;
        assert!(serde_json::from_str::<PathJson>(bad).is_err());
    }

    #[test]
    fn su11_round_trip() {
        let m = Su11::new(Complex::new(1.5, 0.25), Complex::new(0.3, -0.2)).unwrap_or(Su11::IDENTITY);
        let j = Su11Json::from_element(&m);
        let back: Su11Json = serde_json::from_str(&serde_json::to_string(&j).unwrap()).unwrap();
        assert_eq!(back, j);
    }

    #[test]
    fn hyperbolic_class_lists_attracting_first() {
        let m = Su11::new(Complex::new(2.0, 0.0), Complex::new(3f64.sqrt(), 0.0)).unwrap();
        let c = ClassJson::from_class(&classify(&m));
        assert_eq!(c.kind, "hyperbolic");
        assert_eq!(c.fixed_points.len(), 2);
        assert!(c.multipliers[0] < 1.0 && c.multipliers[1] > 1.0);
    }

    #[test]
    fn sampling_keeps_endpoints() {
        assert_eq!(sample_indices(10, 3), vec![0, 5, 9]);
        assert_eq!(sample_indices(3, 100), vec![0, 1, 2]);
        assert_eq!(sample_indices(1, 5), vec![0]);
        assert_eq!(*sample_indices(1000, 7).last().unwrap(), 999);
    }
}
