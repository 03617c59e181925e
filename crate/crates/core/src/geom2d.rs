//! Planar primitives: points, sampled paths, polygons and the region moments
//! consumed by the area estimator.
//!
//! Regions are always polygons. Smooth boundaries enter as fine polygonal
//! approximations built by the constructors at the bottom of this module.
//! Counterclockwise orientation is positive.

use alloc::vec::Vec;
use core::f64::consts::PI;
use core::ops::{Add, AddAssign, Mul, Neg, Sub};

#[allow(unused_imports)]
use num_traits::Float;

use crate::error::{ensure_positive, Error, Result};
use crate::Complex;

/// A point (or displacement) in the plane.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct Point2 {
    pub x: f64,
    pub y: f64,
}

impl Point2 {
    pub const ORIGIN: Point2 = Point2 { x: 0.0, y: 0.0 };

    pub const fn new(x: f64, y: f64) -> Self {
        Point2 { x, y }
    }

    /// Unit vector at angle `theta`.
    pub fn from_angle(theta: f64) -> Self {
        Point2::new(theta.cos(), theta.sin())
    }

    pub fn dot(self, other: Point2) -> f64 {
        self.x * other.x + self.y * other.y
    }

    /// z-component of the 2-D cross product.
    pub fn cross(self, other: Point2) -> f64 {
        self.x * other.y - self.y * other.x
    }

    pub fn norm(self) -> f64 {
        self.x.hypot(self.y)
    }

    pub fn norm_sq(self) -> f64 {
        self.dot(self)
    }

    pub fn distance(self, other: Point2) -> f64 {
        (self - other).norm()
    }

    /// Rotation by `angle` about the origin.
    pub fn rotated(self, angle: f64) -> Self {
        let (s, c) = angle.sin_cos();
        Point2::new(c * self.x - s * self.y, s * self.x + c * self.y)
    }

    pub fn is_finite(self) -> bool {
        self.x.is_finite() && self.y.is_finite()
    }

    pub fn to_complex(self) -> Complex {
        Complex::new(self.x, self.y)
    }

    pub fn from_complex(z: Complex) -> Self {
        Point2::new(z.re, z.im)
    }
}

impl Add for Point2 {
    type Output = Point2;
    fn add(self, rhs: Point2) -> Point2 {
        Point2::new(self.x + rhs.x, self.y + rhs.y)
    }
}

impl AddAssign for Point2 {
    fn add_assign(&mut self, rhs: Point2) {
        self.x += rhs.x;
        self.y += rhs.y;
    }
}

impl Sub for Point2 {
    type Output = Point2;
    fn sub(self, rhs: Point2) -> Point2 {
        Point2::new(self.x - rhs.x, self.y - rhs.y)
    }
}

impl Mul<f64> for Point2 {
    type Output = Point2;
    fn mul(self, k: f64) -> Point2 {
        Point2::new(self.x * k, self.y * k)
    }
}

impl Neg for Point2 {
    type Output = Point2;
    fn neg(self) -> Point2 {
        Point2::new(-self.x, -self.y)
    }
}

/// A piecewise-linear curve through `vertices`. A closed path also has the
/// edge from the last vertex back to the first.
#[derive(Debug, Clone, PartialEq)]
pub struct PlanarPath {
    vertices: Vec<Point2>,
    closed: bool,
}

impl PlanarPath {
    /// Validates and builds a path.
    ///
    /// For closed paths a trailing copy of the first vertex is dropped, so both
    /// `[a, b, c]` and `[a, b, c, a]` describe the same triangle.
    pub fn new(mut vertices: Vec<Point2>, closed: bool) -> Result<Self> {
        if vertices.iter().any(|p| !p.is_finite()) {
            return Err(Error::NonFinite("path vertices"));
        }
        if closed && vertices.len() > 2 && vertices.first() == vertices.last() {
            vertices.pop();
        }
        if vertices.len() < 2 {
            return Err(Error::TooFewVertices {
                found: vertices.len(),
                required: 2,
            });
        }
        for i in 1..vertices.len() {
            if vertices[i] == vertices[i - 1] {
                return Err(Error::RepeatedVertex { index: i });
            }
        }
        if closed && vertices[0] == vertices[vertices.len() - 1] {
            return Err(Error::RepeatedVertex {
                index: vertices.len() - 1,
            });
        }
        Ok(PlanarPath { vertices, closed })
    }

    pub fn open(vertices: Vec<Point2>) -> Result<Self> {
        Self::new(vertices, false)
    }

    pub fn closed(vertices: Vec<Point2>) -> Result<Self> {
        Self::new(vertices, true)
    }

    /// Builds an open path from raw samples, dropping consecutive duplicates.
    /// Returns `None` when fewer than two distinct samples remain.
    pub fn from_samples<I: IntoIterator<Item = Point2>>(samples: I) -> Option<Self> {
        let mut vertices: Vec<Point2> = Vec::new();
        for p in samples {
            if vertices.last() != Some(&p) && p.is_finite() {
                vertices.push(p);
            }
        }
        (vertices.len() >= 2).then_some(PlanarPath {
            vertices,
            closed: false,
        })
    }

    pub fn vertices(&self) -> &[Point2] {
        &self.vertices
    }

    pub fn is_closed(&self) -> bool {
        self.closed
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn start(&self) -> Point2 {
        self.vertices[0]
    }

    /// Edges in traversal order, including the closing edge of a closed path.
    pub fn edges(&self) -> impl Iterator<Item = (Point2, Point2)> + '_ {
        let n = self.vertices.len();
        let count = if self.closed { n } else { n - 1 };
        (0..count).map(move |i| (self.vertices[i], self.vertices[(i + 1) % n]))
    }

    /// Total arclength.
    pub fn length(&self) -> f64 {
        self.edges().map(|(a, b)| a.distance(b)).sum()
    }

    pub(crate) fn require_closed(&self) -> Result<()> {
        if self.closed {
            Ok(())
        } else {
            Err(Error::OpenPath)
        }
    }

    /// The same closed loop re-indexed so that traversal starts at `index`.
    pub fn rotated_to_start(&self, index: usize) -> Result<PlanarPath> {
        self.require_closed()?;
        let n = self.vertices.len();
        if index >= n {
            return Err(Error::IndexOutOfRange { index, len: n });
        }
        let mut vertices = Vec::with_capacity(n);
        vertices.extend_from_slice(&self.vertices[index..]);
        vertices.extend_from_slice(&self.vertices[..index]);
        Ok(PlanarPath {
            vertices,
            closed: true,
        })
    }

    /// The path traversed backwards. A closed loop keeps its first vertex, so
    /// the base point of a trace is unchanged.
    pub fn reversed(&self) -> PlanarPath {
        let mut vertices = self.vertices.clone();
        if self.closed {
            vertices[1..].reverse();
        } else {
            vertices.reverse();
        }
        PlanarPath {
            vertices,
            closed: self.closed,
        }
    }

    pub fn translated(&self, offset: Point2) -> PlanarPath {
        self.map_points(|p| p + offset)
    }

    pub fn rotated_about(&self, center: Point2, angle: f64) -> PlanarPath {
        self.map_points(|p| center + (p - center).rotated(angle))
    }

    /// Uniform scaling by `factor` about `center`.
    pub fn scaled_about(&self, center: Point2, factor: f64) -> PlanarPath {
        self.map_points(|p| center + (p - center) * factor)
    }

    fn map_points<F: Fn(Point2) -> Point2>(&self, f: F) -> PlanarPath {
        PlanarPath {
            vertices: self.vertices.iter().map(|&p| f(p)).collect(),
            closed: self.closed,
        }
    }

    /// O(n²) check that no two non-adjacent edges intersect.
    pub fn is_simple(&self) -> bool {
        let edges: Vec<(Point2, Point2)> = self.edges().collect();
        let m = edges.len();
        for i in 0..m {
            for j in (i + 1)..m {
                let adjacent = j == i + 1 || (self.closed && i == 0 && j == m - 1);
                if adjacent {
                    continue;
                }
                if segments_intersect(edges[i], edges[j]) {
                    return false;
                }
            }
        }
        true
    }

    fn bbox_diagonal_sq(&self) -> f64 {
        let (mut lo, mut hi) = (self.vertices[0], self.vertices[0]);
        for p in &self.vertices {
            lo = Point2::new(lo.x.min(p.x), lo.y.min(p.y));
            hi = Point2::new(hi.x.max(p.x), hi.y.max(p.y));
        }
        (hi - lo).norm_sq()
    }
}

fn segments_intersect((p1, p2): (Point2, Point2), (q1, q2): (Point2, Point2)) -> bool {
    let d1 = (p2 - p1).cross(q1 - p1);
    let d2 = (p2 - p1).cross(q2 - p1);
    let d3 = (q2 - q1).cross(p1 - q1);
    let d4 = (q2 - q1).cross(p2 - q1);
    if ((d1 > 0.0 && d2 < 0.0) || (d1 < 0.0 && d2 > 0.0))
        && ((d3 > 0.0 && d4 < 0.0) || (d3 < 0.0 && d4 > 0.0))
    {
        return true;
    }
    let on_segment = |a: Point2, b: Point2, p: Point2| {
        p.x >= a.x.min(b.x) && p.x <= a.x.max(b.x) && p.y >= a.y.min(b.y) && p.y <= a.y.max(b.y)
    };
    (d1 == 0.0 && on_segment(p1, p2, q1))
        || (d2 == 0.0 && on_segment(p1, p2, q2))
        || (d3 == 0.0 && on_segment(q1, q2, p1))
        || (d4 == 0.0 && on_segment(q1, q2, p2))
}

/// Area, centroid and second moment of a polygon about a base point.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RegionMoments {
    pub area: f64,
    pub centroid: Point2,
    /// ∫|p − base|² dA.
    pub second_moment: f64,
    /// second_moment / area.
    pub mean_square_radius: f64,
}

/// Shoelace area; positive for counterclockwise loops.
pub fn signed_area(path: &PlanarPath) -> Result<f64> {
    path.require_closed()?;
    let origin = path.start();
    Ok(0.5
        * path
            .edges()
            .map(|(a, b)| (a - origin).cross(b - origin))
            .sum::<f64>())
}

fn ensure_nondegenerate(path: &PlanarPath, area: f64) -> Result<()> {
    if area.abs() <= 1e-14 * path.bbox_diagonal_sq() {
        Err(Error::DegeneratePolygon)
    } else {
        Ok(())
    }
}

/// Area centroid of the polygon.
pub fn centroid(path: &PlanarPath) -> Result<Point2> {
    let area = signed_area(path)?;
    ensure_nondegenerate(path, area)?;
    let origin = path.start();
    let mut acc = Point2::ORIGIN;
    for (a, b) in path.edges() {
        let (a, b) = (a - origin, b - origin);
        acc += (a + b) * a.cross(b);
    }
    Ok(origin + acc * (1.0 / (6.0 * area)))
}

/// ∫_Ω |p − base|² dA, by exact per-edge Green's-theorem quadrature.
/// The sign follows the orientation, as for [`signed_area`].
pub fn second_moment_about(path: &PlanarPath, base: Point2) -> Result<f64> {
    let area = signed_area(path)?;
    ensure_nondegenerate(path, area)?;
    let mut acc = 0.0;
    for (a, b) in path.edges() {
        let (a, b) = (a - base, b - base);
        let c = a.cross(b);
        acc += c
            * (a.x * a.x + a.x * b.x + b.x * b.x + a.y * a.y + a.y * b.y + b.y * b.y);
    }
    Ok(acc / 12.0)
}

/// All moments about `base` in one go.
pub fn moments(path: &PlanarPath, base: Point2) -> Result<RegionMoments> {
    let area = signed_area(path)?;
    let centroid = centroid(path)?;
    let second_moment = second_moment_about(path, base)?;
    Ok(RegionMoments {
        area,
        centroid,
        second_moment,
        mean_square_radius: second_moment / area,
    })
}

/// Subdivides edges so none is longer than `max_edge`. The geometry is
/// unchanged; inserted points are collinear.
pub fn resample(path: &PlanarPath, max_edge: f64) -> Result<PlanarPath> {
    ensure_positive(max_edge, "max_edge")?;
    let mut vertices = Vec::with_capacity(path.len());
    for (a, b) in path.edges() {
        let pieces = (a.distance(b) / max_edge).ceil().max(1.0) as usize;
        for k in 0..pieces {
            vertices.push(a + (b - a) * (k as f64 / pieces as f64));
        }
    }
    if !path.is_closed() {
        vertices.push(path.vertices[path.len() - 1]);
    }
    Ok(PlanarPath {
        vertices,
        closed: path.is_closed(),
    })
}

// Region constructors. All loops are counterclockwise and start at the listed
// first vertex.

/// Square with lower-left corner `origin` and side `side`.
pub fn square(origin: Point2, side: f64) -> Result<PlanarPath> {
    rectangle(origin, side, side)
}

pub fn rectangle(origin: Point2, width: f64, height: f64) -> Result<PlanarPath> {
    ensure_positive(width, "width")?;
    ensure_positive(height, "height")?;
    PlanarPath::closed(alloc::vec![
        origin,
        origin + Point2::new(width, 0.0),
        origin + Point2::new(width, height),
        origin + Point2::new(0.0, height),
    ])
}

/// Parallelogram with vertices `origin`, `origin + v`, `origin + v + w`, `origin + w`.
pub fn parallelogram(origin: Point2, v: Point2, w: Point2) -> Result<PlanarPath> {
    PlanarPath::closed(alloc::vec![origin, origin + v, origin + v + w, origin + w])
}

/// Regular `n`-gon inscribed in the circle of radius `radius` about `center`,
/// first vertex at polar angle `phase`.
pub fn regular_polygon(center: Point2, radius: f64, n: usize, phase: f64) -> Result<PlanarPath> {
    ellipse(center, radius, radius, n, phase)
}

/// Polygonal ellipse with semi-axes `a` (along x) and `b` (along y).
pub fn ellipse(center: Point2, a: f64, b: f64, n: usize, phase: f64) -> Result<PlanarPath> {
    ensure_positive(a, "semi-axis")?;
    ensure_positive(b, "semi-axis")?;
    if n < 3 {
        return Err(Error::TooFewVertices {
            found: n,
            required: 3,
        });
    }
    let vertices = (0..n)
        .map(|k| {
            let t = phase + 2.0 * PI * k as f64 / n as f64;
            center + Point2::new(a * t.cos(), b * t.sin())
        })
        .collect();
    PlanarPath::closed(vertices)
}
