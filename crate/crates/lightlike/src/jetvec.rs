//! 3-vectors with jet components: curves and surfaces carried with all
//! their derivatives.

use crate::jet::{Jet1, Jet2};
use crate::minkowski::MVec3;
use crate::Result;

/// A curve germ in R^3_1: three univariate jets sharing a base point.
#[derive(Debug, Clone)]
pub struct JetVec {
    pub x0: Jet1,
    pub x1: Jet1,
    pub x2: Jet1,
}

impl JetVec {
    pub fn new(x0: Jet1, x1: Jet1, x2: Jet1) -> Self {
        JetVec { x0, x1, x2 }
    }

    pub fn constant(v: MVec3, base: f64, order: usize) -> Self {
        JetVec {
            x0: Jet1::constant(v.x0, base, order),
            x1: Jet1::constant(v.x1, base, order),
            x2: Jet1::constant(v.x2, base, order),
        }
    }

    pub fn order(&self) -> usize {
        self.x0.order().min(self.x1.order()).min(self.x2.order())
    }

    pub fn value(&self) -> MVec3 {
        MVec3::new(self.x0.value(), self.x1.value(), self.x2.value())
    }

    /// Raw k-th derivative vector.
    pub fn deriv(&self, k: usize) -> MVec3 {
        MVec3::new(self.x0.deriv(k), self.x1.deriv(k), self.x2.deriv(k))
    }

    pub fn map(&self, f: impl Fn(&Jet1) -> Jet1) -> JetVec {
        JetVec::new(f(&self.x0), f(&self.x1), f(&self.x2))
    }

    pub fn derivative(&self) -> JetVec {
        self.map(|c| c.derivative())
    }

    pub fn truncated(&self, order: usize) -> JetVec {
        self.map(|c| c.truncated(order))
    }

    pub fn add(&self, rhs: &JetVec) -> JetVec {
        JetVec::new(self.x0.add(&rhs.x0), self.x1.add(&rhs.x1), self.x2.add(&rhs.x2))
    }

    pub fn sub(&self, rhs: &JetVec) -> JetVec {
        JetVec::new(self.x0.sub(&rhs.x0), self.x1.sub(&rhs.x1), self.x2.sub(&rhs.x2))
    }

    pub fn scale(&self, a: f64) -> JetVec {
        self.map(|c| c.scale(a))
    }

    pub fn mul_jet(&self, a: &Jet1) -> JetVec {
        self.map(|c| c.mul(a))
    }

    pub fn div_jet(&self, a: &Jet1) -> Result<JetVec> {
        Ok(JetVec::new(
            self.x0.div(a)?,
            self.x1.div(a)?,
            self.x2.div(a)?,
        ))
    }

    /// Minkowski scalar product as a jet.
    pub fn mdot(&self, rhs: &JetVec) -> Jet1 {
        self.x0
            .mul(&rhs.x0)
            .neg()
            .add(&self.x1.mul(&rhs.x1))
            .add(&self.x2.mul(&rhs.x2))
    }

    /// Lorentzian cross product as jets.
    pub fn mcross(&self, rhs: &JetVec) -> JetVec {
        JetVec::new(
            self.x1.mul(&rhs.x2).sub(&self.x2.mul(&rhs.x1)).neg(),
            self.x0.mul(&rhs.x2).sub(&self.x2.mul(&rhs.x0)).neg(),
            self.x0.mul(&rhs.x1).sub(&self.x1.mul(&rhs.x0)),
        )
    }

    /// Euclidean dot product as a jet (diagnostics, normalization).
    pub fn edot(&self, rhs: &JetVec) -> Jet1 {
        self.x0
            .mul(&rhs.x0)
            .add(&self.x1.mul(&rhs.x1))
            .add(&self.x2.mul(&rhs.x2))
    }

    /// Compose every component with an inner reparametrization jet.
    pub fn compose(&self, inner: &Jet1) -> Result<JetVec> {
        Ok(JetVec::new(
            self.x0.compose(inner)?,
            self.x1.compose(inner)?,
            self.x2.compose(inner)?,
        ))
    }
}

/// A surface germ in R^3_1: three bivariate jets sharing a base point.
#[derive(Debug, Clone)]
pub struct JetVec2 {
    pub x0: Jet2,
    pub x1: Jet2,
    pub x2: Jet2,
}

impl JetVec2 {
    pub fn new(x0: Jet2, x1: Jet2, x2: Jet2) -> Self {
        JetVec2 { x0, x1, x2 }
    }

    pub fn value(&self) -> MVec3 {
        MVec3::new(self.x0.value(), self.x1.value(), self.x2.value())
    }

    pub fn map(&self, f: impl Fn(&Jet2) -> Jet2) -> JetVec2 {
        JetVec2::new(f(&self.x0), f(&self.x1), f(&self.x2))
    }

    pub fn du(&self) -> JetVec2 {
        self.map(|c| c.du())
    }

    pub fn dv(&self) -> JetVec2 {
        self.map(|c| c.dv())
    }

    pub fn add(&self, rhs: &JetVec2) -> JetVec2 {
        JetVec2::new(self.x0.add(&rhs.x0), self.x1.add(&rhs.x1), self.x2.add(&rhs.x2))
    }

    pub fn sub(&self, rhs: &JetVec2) -> JetVec2 {
        JetVec2::new(self.x0.sub(&rhs.x0), self.x1.sub(&rhs.x1), self.x2.sub(&rhs.x2))
    }

    pub fn scale(&self, a: f64) -> JetVec2 {
        self.map(|c| c.scale(a))
    }

    pub fn mul_jet(&self, a: &Jet2) -> JetVec2 {
        self.map(|c| c.mul(a))
    }

    pub fn mdot(&self, rhs: &JetVec2) -> Jet2 {
        self.x0
            .mul(&rhs.x0)
            .neg()
            .add(&self.x1.mul(&rhs.x1))
            .add(&self.x2.mul(&rhs.x2))
    }

    pub fn edot(&self, rhs: &JetVec2) -> Jet2 {
        self.x0
            .mul(&rhs.x0)
            .add(&self.x1.mul(&rhs.x1))
            .add(&self.x2.mul(&rhs.x2))
    }

    pub fn mcross(&self, rhs: &JetVec2) -> JetVec2 {
        JetVec2::new(
            self.x1.mul(&rhs.x2).sub(&self.x2.mul(&rhs.x1)).neg(),
            self.x0.mul(&rhs.x2).sub(&self.x2.mul(&rhs.x0)).neg(),
            self.x0.mul(&rhs.x1).sub(&self.x1.mul(&rhs.x0)),
        )
    }

    /// Restrict the surface germ along a parameter curve, yielding a curve germ.
    pub fn eval_with(&self, u: &Jet1, v: &Jet1) -> Result<JetVec> {
        Ok(JetVec::new(
            self.x0.eval_with(u, v)?,
            self.x1.eval_with(u, v)?,
            self.x2.eval_with(u, v)?,
        ))
    }

    pub fn eval_offset(&self, du: f64, dv: f64) -> MVec3 {
        MVec3::new(
            self.x0.eval_offset(du, dv),
            self.x1.eval_offset(du, dv),
            self.x2.eval_offset(du, dv),
        )
    }
}
