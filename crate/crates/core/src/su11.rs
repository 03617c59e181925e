//! The group SU(1,1) of matrices `(a, b; conj(b), conj(a))` with
//! `|a|² − |b|² = 1`, its Lie algebra, and the Möbius action
//! `z ↦ (a z + b) / (conj(b) z + conj(a))` on the unit circle and disk.
//!
//! Only `(a, b)` is stored. Compositions are plain products: renormalising
//! by `sqrt(|a|² − |b|²)` loses accuracy once the entries are large, so only
//! the ODE integrators project back onto the group.

use alloc::vec::Vec;
use core::ops::{Add, Mul, Neg};

#[allow(unused_imports)]
use num_traits::Float;

use crate::error::{Error, Result};
use crate::Complex;

/// Tolerance on the determinant invariant accepted by [`Su11::new`].
pub const GROUP_TOLERANCE: f64 = 1e-9;
/// Band around |trace| = 2 that is reported as parabolic. It applies to
/// `Re²a − 1 = |b|² − Im²a` relative to `(|b| + |Im a|)²`, which is the band
/// on |trace| − 2 for elements a unit distance from ±I and stays meaningful
/// for small loops whose trace is within rounding of 2.
pub const PARABOLIC_TOLERANCE: f64 = 1e-8;
/// Distance from ±I below which an element is reported as the identity.
pub const IDENTITY_TOLERANCE: f64 = 1e-8;
/// Allowed |M·z − z| for [`multiplier`].
pub const FIXED_POINT_TOLERANCE: f64 = 1e-8;

/// An element of SU(1,1).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Su11 {
    a: Complex,
    b: Complex,
}

impl Su11 {
    pub const IDENTITY: Su11 = Su11 {
        a: Complex::new(1.0, 0.0),
        b: Complex::new(0.0, 0.0),
    };

    /// Checks `|a|² − |b|² = 1` to [`GROUP_TOLERANCE`] and renormalises.
    pub fn new(a: Complex, b: Complex) -> Result<Self> {
        let det = a.norm_sqr() - b.norm_sqr();
        if !det.is_finite() || (det - 1.0).abs() > GROUP_TOLERANCE {
            return Err(Error::NotInGroup { determinant: det });
        }
        Ok(Su11::projected(a, b))
    }

    /// Projects any pair with positive determinant onto the group.
    pub(crate) fn projected(a: Complex, b: Complex) -> Self {
        let det = a.norm_sqr() - b.norm_sqr();
        let s = det.sqrt();
        Su11 { a: a / s, b: b / s }
    }

    pub fn a(&self) -> Complex {
        self.a
    }

    pub fn b(&self) -> Complex {
        self.b
    }

    /// Full matrix, row-major.
    pub fn matrix(&self) -> [[Complex; 2]; 2] {
        [[self.a, self.b], [self.b.conj(), self.a.conj()]]
    }

    /// `|a|² − |b|²`, which is 1 up to rounding.
    pub fn determinant(&self) -> f64 {
        self.a.norm_sqr() - self.b.norm_sqr()
    }

    /// Matrix trace `2 Re(a)`, always real.
    pub fn trace(&self) -> f64 {
        2.0 * self.a.re
    }

    pub fn inverse(&self) -> Su11 {
        Su11 {
            a: self.a.conj(),
            b: -self.b,
        }
    }

    /// Matrix product `self · other`.
    pub fn compose(&self, other: &Su11) -> Su11 {
        Su11 {
            a: self.a * other.a + self.b * other.b.conj(),
            b: self.a * other.b + self.b * other.a.conj(),
        }
    }

    /// `g · self · g⁻¹`.
    pub fn conjugated_by(&self, g: &Su11) -> Su11 {
        g.compose(self).compose(&g.inverse())
    }

    /// Max-entry distance between the two matrices.
    pub fn distance(&self, other: &Su11) -> f64 {
        (self.a - other.a).norm().max((self.b - other.b).norm())
    }

    /// Möbius action on a point of the closed disk (no renormalisation).
    pub fn act(&self, z: Complex) -> Complex {
        (self.a * z + self.b) / (self.b.conj() * z + self.a.conj())
    }
}

impl Mul for Su11 {
    type Output = Su11;
    fn mul(self, rhs: Su11) -> Su11 {
        self.compose(&rhs)
    }
}

/// An element `(iγ, β; conj(β), −iγ)` of su(1,1).
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct Su11Algebra {
    pub gamma: f64,
    pub beta: Complex,
}

impl Su11Algebra {
    pub const ZERO: Su11Algebra = Su11Algebra {
        gamma: 0.0,
        beta: Complex::new(0.0, 0.0),
    };

    pub fn new(gamma: f64, beta: Complex) -> Self {
        Su11Algebra { gamma, beta }
    }

    pub fn matrix(&self) -> [[Complex; 2]; 2] {
        [
            [Complex::new(0.0, self.gamma), self.beta],
            [self.beta.conj(), Complex::new(0.0, -self.gamma)],
        ]
    }

    /// `X² = discriminant · I` with discriminant `|β|² − γ²`.
    pub fn discriminant(&self) -> f64 {
        self.beta.norm_sqr() - self.gamma * self.gamma
    }

    /// Max-entry distance.
    pub fn distance(&self, other: &Su11Algebra) -> f64 {
        (self.gamma - other.gamma)
            .abs()
            .max((self.beta - other.beta).norm())
    }
}

impl Add for Su11Algebra {
    type Output = Su11Algebra;
    fn add(self, rhs: Su11Algebra) -> Su11Algebra {
        Su11Algebra::new(self.gamma + rhs.gamma, self.beta + rhs.beta)
    }
}

impl Neg for Su11Algebra {
    type Output = Su11Algebra;
    fn neg(self) -> Su11Algebra {
        Su11Algebra::new(-self.gamma, -self.beta)
    }
}

impl Mul<f64> for Su11Algebra {
    type Output = Su11Algebra;
    fn mul(self, k: f64) -> Su11Algebra {
        Su11Algebra::new(self.gamma * k, self.beta * k)
    }
}

/// Matrix exponential in closed form, using `X² = Δ·I`:
/// `exp(X) = C(Δ)·I + S(Δ)·X` with `C = cosh √Δ`, `S = sinh √Δ / √Δ`
/// (cos/sin for Δ < 0, Taylor series near 0).
pub fn exp_algebra(x: &Su11Algebra) -> Su11 {
    let delta = x.discriminant();
    let (c, s) = if delta.abs() < 1e-6 {
        // Series through Δ³; truncation error below 1e-20.
        let d2 = delta * delta;
        (
            1.0 + delta / 2.0 + d2 / 24.0 + d2 * delta / 720.0,
            1.0 + delta / 6.0 + d2 / 120.0 + d2 * delta / 5040.0,
        )
    } else if delta > 0.0 {
        let r = delta.sqrt();
        (r.cosh(), r.sinh() / r)
    } else {
        let r = (-delta).sqrt();
        (r.cos(), r.sin() / r)
    };
    Su11 {
        a: Complex::new(c, s * x.gamma),
        b: x.beta * s,
    }
}

/// Möbius action on a unit complex number; the result is renormalised to
/// modulus one.
pub fn mobius_apply(m: &Su11, z: Complex) -> Complex {
    let w = m.act(z);
    w / w.norm()
}

/// Conjugacy type of an element acting on the circle.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum HolonomyKind {
    Identity,
    Elliptic,
    Parabolic,
    Hyperbolic,
}

impl HolonomyKind {
    pub fn as_str(&self) -> &'static str {
        match self {
            HolonomyKind::Identity => "identity",
            HolonomyKind::Elliptic => "elliptic",
            HolonomyKind::Parabolic => "parabolic",
            HolonomyKind::Hyperbolic => "hyperbolic",
        }
    }
}

/// Classification of an element together with its fixed-point data.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum HolonomyClass {
    /// ±I.
    Identity { trace: f64 },
    /// Rotation of the disk by `rotation` radians about `center` (|center| < 1);
    /// no fixed points on the circle.
    Elliptic {
        trace: f64,
        center: Complex,
        rotation: f64,
    },
    /// One semi-attracting fixed point on the circle.
    Parabolic { trace: f64, fixed_point: Complex },
    /// Two fixed points on the circle; the multiplier (circle-map derivative)
    /// is below one at the attracting point and above one at the repelling one.
    Hyperbolic {
        trace: f64,
        attracting: Complex,
        repelling: Complex,
        attracting_multiplier: f64,
        repelling_multiplier: f64,
    },
}

impl HolonomyClass {
    pub fn kind(&self) -> HolonomyKind {
        match self {
            HolonomyClass::Identity { .. } => HolonomyKind::Identity,
            HolonomyClass::Elliptic { .. } => HolonomyKind::Elliptic,
            HolonomyClass::Parabolic { .. } => HolonomyKind::Parabolic,
            HolonomyClass::Hyperbolic { .. } => HolonomyKind::Hyperbolic,
        }
    }

    pub fn trace(&self) -> f64 {
        match *self {
            HolonomyClass::Identity { trace }
            | HolonomyClass::Elliptic { trace, .. }
            | HolonomyClass::Parabolic { trace, .. }
            | HolonomyClass::Hyperbolic { trace, .. } => trace,
        }
    }

    /// Fixed points on the circle (attracting first for hyperbolic elements).
    pub fn circle_fixed_points(&self) -> Vec<Complex> {
        match *self {
            HolonomyClass::Parabolic { fixed_point, .. } => alloc::vec![fixed_point],
            HolonomyClass::Hyperbolic {
                attracting,
                repelling,
                ..
            } => alloc::vec![attracting, repelling],
            _ => Vec::new(),
        }
    }
}

/// Classifies `m` by its trace and solves
/// `conj(b) z² + (conj(a) − a) z − b = 0` for its fixed points.
pub fn classify(m: &Su11) -> HolonomyClass {
    let trace = m.trace();
    let (a, b) = (m.a, m.b);
    let near_identity = m.distance(&Su11::IDENTITY) < IDENTITY_TOLERANCE
        || (a + 1.0).norm().max(b.norm()) < IDENTITY_TOLERANCE;
    if near_identity {
        return HolonomyClass::Identity { trace };
    }
    // Re²a − 1 without the cancellation of forming it from Re a.
    let disc = b.norm_sqr() - a.im * a.im;
    let scale = (b.norm() + a.im.abs()).powi(2);
    let bc = b.conj();
    if disc.abs() <= PARABOLIC_TOLERANCE * scale {
        // Double root i·Im(a)/conj(b).
        let z = Complex::new(0.0, a.im) / bc;
        return HolonomyClass::Parabolic {
            trace,
            fixed_point: z / z.norm(),
        };
    }
    if disc > 0.0 {
        // Roots (i Im a ± √(Re²a − 1)) / conj(b); the numerator has a purely
        // imaginary and a purely real part, so neither root cancels.
        let r = disc.sqrt();
        let z1 = Complex::new(r, a.im) / bc;
        let z2 = Complex::new(-r, a.im) / bc;
        let (z1, z2) = (z1 / z1.norm(), z2 / z2.norm());
        let (m1, m2) = (circle_derivative(m, z1), circle_derivative(m, z2));
        let (attracting, repelling, am, rm) = if m1 < m2 {
            (z1, z2, m1, m2)
        } else {
            (z2, z1, m2, m1)
        };
        return HolonomyClass::Hyperbolic {
            trace,
            attracting,
            repelling,
            attracting_multiplier: am,
            repelling_multiplier: rm,
        };
    }
    // Elliptic: roots i(Im a ± √(1 − Re²a)) / conj(b), one inside the disk.
    // The outer root is formed without cancellation; the inner one follows
    // from the product of roots, −b/conj(b).
    let center = if b.norm() == 0.0 {
        Complex::new(0.0, 0.0)
    } else {
        let s = (-disc).sqrt();
        let big = Complex::new(0.0, a.im + a.im.signum() * s) / bc;
        let big = if big.norm() == 0.0 {
            Complex::new(0.0, s) / bc
        } else {
            big
        };
        -b / (bc * big)
    };
    let d = bc * center + a.conj();
    let rotation = -2.0 * d.arg();
    HolonomyClass::Elliptic {
        trace,
        center,
        rotation,
    }
}

/// `|d(M·z)/dz| = 1/|conj(b) z + conj(a)|²` without checking that `z` is fixed.
pub(crate) fn circle_derivative(m: &Su11, z: Complex) -> f64 {
    1.0 / (m.b.conj() * z + m.a.conj()).norm_sqr()
}

/// Derivative of the circle map at the fixed point `z`.
pub fn multiplier(m: &Su11, z: Complex) -> Result<f64> {
    let defect = (mobius_apply(m, z) - z).norm();
    if !(defect <= FIXED_POINT_TOLERANCE) {
        return Err(Error::NotFixedPoint { defect });
    }
    Ok(circle_derivative(m, z))
}

/// Orbit of the disk origin under the partial products `M_k ⋯ M_1`;
/// the first entry is the origin itself.
pub fn develop_to_disk(transports: &[Su11]) -> Vec<Complex> {
    let mut out = Vec::with_capacity(transports.len() + 1);
    let mut acc = Su11::IDENTITY;
    out.push(Complex::new(0.0, 0.0));
    for t in transports {
        acc = t.compose(&acc);
        out.push(acc.act(Complex::new(0.0, 0.0)));
    }
    out
}
