//! Region families and the parallel holonomy scan.

use std::f64::consts::PI;

use prytz_core::geom2d::{PlanarPath, Point2};
use prytz_core::menzin::{
    ellipse_family, equal_area_ngons, rectangle_family, scan_region, square_family, square_sweep, ScanOutcome,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::json::PathJson;

/// A family of regions, as read from the `family` key of a config file.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum FamilySpec {
    /// Unit-origin squares with the given sides.
    Squares { sides: Vec<f64> },
    /// `count` squares with sides evenly spaced over `[from, to]`.
    SquareSweep { from: f64, to: f64, count: usize },
    Rectangles { dims: Vec<[f64; 2]> },
    /// Regular n-gons of a common area.
    Ngons { area: f64, ns: Vec<usize> },
    /// 256-gon ellipses with semi-axes `[a, b]`.
    Ellipses { axes: Vec<[f64; 2]> },
    Paths { paths: Vec<PathJson> },
    /// Star-shaped random polygons from the run seed.
    Random { count: usize, max_size: f64, max_vertices: usize },
}

impl FamilySpec {
    pub fn regions(&self, seed: u64) -> prytz_core::Result<Vec<PlanarPath>> {
        match self {
            FamilySpec::Squares { sides } => square_family(sides),
            FamilySpec::SquareSweep { from, to, count } => square_sweep(*from, *to, *count),
            FamilySpec::Rectangles { dims } => {
                rectangle_family(&dims.iter().map(|d| (d[0], d[1])).collect::<Vec<_>>())
            }
            FamilySpec::Ngons { area, ns } => equal_area_ngons(*area, ns),
            FamilySpec::Ellipses { axes } => {
                ellipse_family(&axes.iter().map(|d| (d[0], d[1])).collect::<Vec<_>>())
            }
            FamilySpec::Paths { paths } => paths.iter().map(PathJson::to_path).collect(),
            FamilySpec::Random {
                count,
                max_size,
                max_vertices,
            } => random_family(seed, *count, *max_size, *max_vertices),
        }
    }
}

fn random_family(seed: u64, count: usize, max_size: f64, max_vertices: usize) -> prytz_core::Result<Vec<PlanarPath>> {
    if !max_size.is_finite() || max_size <= 0.0 || max_vertices < 3 {
        return Err(prytz_core::Error::InvalidParameter {
            name: "random family",
            reason: "needs max_size > 0 and max_vertices >= 3",
        });
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| {
            let n = rng.random_range(3..=max_vertices);
            let size = rng.random_range(0.1 * max_size..=max_size);
            let vs = (0..n)
                .map(|k| {
                    let a = 2.0 * PI * (k as f64 + rng.random_range(0.1..0.9)) / n as f64;
                    Point2::from_angle(a) * (size * rng.random_range(0.5..1.0))
                })
                .collect();
            PlanarPath::closed(vs)
        })
        .collect()
}

/// Same rows as a sequential scan, computed in parallel; output order
/// follows input order.
pub fn parallel_scan(regions: &[PlanarPath], ell: f64, step: f64) -> Vec<ScanOutcome> {
    regions
        .par_iter()
        .enumerate()
        .map(|(i, r)| scan_region(i, r, ell, step).map_err(|e| (i, e)))
        .collect()
}
