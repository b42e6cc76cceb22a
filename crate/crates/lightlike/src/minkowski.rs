//! Vectors and causal classification in Lorentz-Minkowski 3-space.
//!
//! The ambient space is R^3 equipped with the indefinite scalar product
//! `<x,y> = -x0*y0 + x1*y1 + x2*y2`, the timelike coordinate first.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Default absolute tolerance on `<v,v>` when classifying unit-scale vectors.
pub const TOL_ZERO: f64 = 1e-10;

/// A vector in Lorentz-Minkowski 3-space, timelike coordinate first.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MVec3 {
    pub x0: f64,
    pub x1: f64,
    pub x2: f64,
}

/// Causal type of a vector or plane. `Zero` tags the zero vector.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum CausalClass {
    Spacelike,
    Timelike,
    Lightlike,
    Zero,
}

impl MVec3 {
    pub const fn new(x0: f64, x1: f64, x2: f64) -> Self {
        MVec3 { x0, x1, x2 }
    }

    pub const ZERO: MVec3 = MVec3::new(0.0, 0.0, 0.0);
    pub const E0: MVec3 = MVec3::new(1.0, 0.0, 0.0);
    pub const E1: MVec3 = MVec3::new(0.0, 1.0, 0.0);
    pub const E2: MVec3 = MVec3::new(0.0, 0.0, 1.0);

    pub fn is_finite(&self) -> bool {
        self.x0.is_finite() && self.x1.is_finite() && self.x2.is_finite()
    }

    /// Euclidean norm, used for scale estimates and mesh diagnostics.
    pub fn euclid_norm(&self) -> f64 {
        (self.x0 * self.x0 + self.x1 * self.x1 + self.x2 * self.x2).sqrt()
    }

    /// `|x|` in the paper's sense: sqrt of |<x,x>|.
    pub fn pseudo_norm(&self) -> f64 {
        scalar_product(*self, *self).abs().sqrt()
    }

    pub fn scale(&self, a: f64) -> MVec3 {
        MVec3::new(a * self.x0, a * self.x1, a * self.x2)
    }

    /// Euclidean dot product (no metric signs).
    pub fn euclid_dot(&self, other: &MVec3) -> f64 {
        self.x0 * other.x0 + self.x1 * other.x1 + self.x2 * other.x2
    }

    /// Euclidean cross product in coordinate order (x0, x1, x2).
    pub fn euclid_cross(&self, other: &MVec3) -> MVec3 {
        MVec3::new(
            self.x1 * other.x2 - self.x2 * other.x1,
            self.x2 * other.x0 - self.x0 * other.x2,
            self.x0 * other.x1 - self.x1 * other.x0,
        )
    }
}

impl std::ops::Add for MVec3 {
    type Output = MVec3;
    fn add(self, rhs: MVec3) -> MVec3 {
        MVec3::new(self.x0 + rhs.x0, self.x1 + rhs.x1, self.x2 + rhs.x2)
    }
}

impl std::ops::Sub for MVec3 {
    type Output = MVec3;
    fn sub(self, rhs: MVec3) -> MVec3 {
        MVec3::new(self.x0 - rhs.x0, self.x1 - rhs.x1, self.x2 - rhs.x2)
    }
}

impl std::ops::Neg for MVec3 {
    type Output = MVec3;
    fn neg(self) -> MVec3 {
        MVec3::new(-self.x0, -self.x1, -self.x2)
    }
}

/// The scalar product `<x,y> = -x0*y0 + x1*y1 + x2*y2`.
pub fn scalar_product(x: MVec3, y: MVec3) -> f64 {
    -x.x0 * y.x0 + x.x1 * y.x1 + x.x2 * y.x2
}

/// The Lorentzian cross product. The result is orthogonal (in the scalar
/// product above) to both arguments, and `<x ^ y, z>` equals the ordinary
/// determinant `det(x, y, z)`.
pub fn lorentz_cross(x: MVec3, y: MVec3) -> MVec3 {
    MVec3::new(
        -(x.x1 * y.x2 - x.x2 * y.x1),
        -(x.x0 * y.x2 - x.x2 * y.x0),
        x.x0 * y.x1 - x.x1 * y.x0,
    )
}

/// Ordinary 3x3 determinant of three column vectors.
pub fn det3(a: MVec3, b: MVec3, c: MVec3) -> f64 {
    a.x0 * (b.x1 * c.x2 - b.x2 * c.x1) - b.x0 * (a.x1 * c.x2 - a.x2 * c.x1)
        + c.x0 * (a.x1 * b.x2 - a.x2 * b.x1)
}

/// Causal class of a vector: spacelike/timelike/lightlike by the sign of
/// `<v,v>` against `tol_zero`, with the zero vector tagged separately.
pub fn causal_class_vector(v: MVec3, tol_zero: f64) -> CausalClass {
    if v.x0 == 0.0 && v.x1 == 0.0 && v.x2 == 0.0 {
        return CausalClass::Zero;
    }
    let q = scalar_product(v, v);
    if q > tol_zero {
        CausalClass::Spacelike
    } else if q < -tol_zero {
        CausalClass::Timelike
    } else {
        CausalClass::Lightlike
    }
}

/// Causal class of the plane `normal^perp`: spacelike iff the normal is
/// timelike, timelike iff spacelike, lightlike iff lightlike.
pub fn causal_class_plane(normal: MVec3, tol_zero: f64) -> Result<CausalClass> {
    match causal_class_vector(normal, tol_zero) {
        CausalClass::Zero => Err(Error::ZeroNormal),
        CausalClass::Timelike => Ok(CausalClass::Spacelike),
        CausalClass::Spacelike => Ok(CausalClass::Timelike),
        CausalClass::Lightlike => Ok(CausalClass::Lightlike),
    }
}
