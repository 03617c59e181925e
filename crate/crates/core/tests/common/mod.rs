//! Random region generators shared by the integration tests.

#![allow(dead_code)]

use std::f64::consts::PI;

use prytz_core::geom2d::{PlanarPath, Point2};
use prytz_core::Complex;
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Star-shaped polygon about `center` with `n` vertices at jittered,
/// strictly increasing angles and radii in `[0.5, 1] · size`. Simple and
/// counterclockwise by construction.
pub fn star_polygon<R: Rng>(rng: &mut R, center: Point2, size: f64, n: usize) -> PlanarPath {
    let vertices = (0..n)
        .map(|k| {
            let t = 2.0 * PI * (k as f64 + rng.random_range(0.1..0.9)) / n as f64;
            let r = size * rng.random_range(0.5..1.0);
            center + Point2::from_angle(t) * r
        })
        .collect();
    PlanarPath::closed(vertices).expect("distinct vertices")
}

/// Star polygon with a random centre in `[-2, 2]²`, 3 to 9 vertices and
/// outer radius up to `max_size`.
pub fn random_region<R: Rng>(rng: &mut R, max_size: f64) -> PlanarPath {
    let center = Point2::new(rng.random_range(-2.0..2.0), rng.random_range(-2.0..2.0));
    let n = rng.random_range(3..10);
    let size = rng.random_range(0.2..1.0) * max_size;
    star_polygon(rng, center, size, n)
}

pub fn random_angle<R: Rng>(rng: &mut R) -> f64 {
    rng.random_range(-PI..PI)
}

pub fn random_vector<R: Rng>(rng: &mut R, max_len: f64) -> Point2 {
    Point2::from_angle(random_angle(rng)) * rng.random_range(0.1..1.0) * max_len
}

/// Angular distance between unit complex numbers.
pub fn circle_gap(a: Complex, b: Complex) -> f64 {
    (a / b).arg().abs()
}
