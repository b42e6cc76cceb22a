//! Truncated Taylor series (jets) in one and two variables.
//!
//! A `Jet1` of order K at a base point u0 stores the Taylor coefficients
//! `c[k] = f^(k)(u0) / k!` and propagates them exactly (up to roundoff)
//! through arithmetic: products are Cauchy products truncated at K,
//! elementary functions are composed through their own Taylor expansions.
//! Raw derivatives are recovered on extraction.
//!
//! `Jet2` is the bivariate analogue with coefficients `c[i][j]`, i+j <= K.

use crate::error::{Error, EvalErrorKind, Result};

/// Contact-order cap: vanishing orders beyond this are reported as ">= K_MAX".
pub const K_MAX: usize = 12;

/// Division by a jet whose leading coefficient is below this is an error.
pub const TOL_DIV: f64 = 1e-13;

fn factorial(k: usize) -> f64 {
    (1..=k).fold(1.0, |a, i| a * i as f64)
}

/// Taylor coefficients of the outer elementary function g about x0,
/// used for composing `g(f)` out of the jet of `f`.
fn outer_coeffs(k: usize, g: impl Fn(usize) -> f64) -> Vec<f64> {
    (0..=k).map(g).collect()
}

// ---------------------------------------------------------------------------
// Jet1
// ---------------------------------------------------------------------------

/// Univariate jet: value and higher derivatives at `base`, as Taylor
/// coefficients `c[k] = f^(k)(base)/k!`.
#[derive(Debug, Clone, PartialEq)]
pub struct Jet1 {
    pub base: f64,
    pub c: Vec<f64>,
}

impl Jet1 {
    pub fn constant(value: f64, base: f64, order: usize) -> Self {
        let mut c = vec![0.0; order + 1];
        c[0] = value;
        Jet1 { base, c }
    }

    /// The identity jet `u` at base u0.
    pub fn variable(u0: f64, order: usize) -> Self {
        let mut j = Jet1::constant(u0, u0, order);
        if order >= 1 {
            j.c[1] = 1.0;
        }
        j
    }

    pub fn order(&self) -> usize {
        self.c.len() - 1
    }

    pub fn value(&self) -> f64 {
        self.c[0]
    }

    /// Raw k-th derivative `f^(k)(base)`.
    pub fn deriv(&self, k: usize) -> f64 {
        if k < self.c.len() {
            self.c[k] * factorial(k)
        } else {
            0.0
        }
    }

    pub fn truncated(&self, order: usize) -> Jet1 {
        let k = order.min(self.order());
        Jet1 {
            base: self.base,
            c: self.c[..=k].to_vec(),
        }
    }

    /// Jet of the derivative f', one order lower.
    pub fn derivative(&self) -> Jet1 {
        let n = self.order();
        let c = (1..=n).map(|k| self.c[k] * k as f64).collect::<Vec<_>>();
        Jet1 {
            base: self.base,
            c: if c.is_empty() { vec![0.0] } else { c },
        }
    }

    /// Jet of the antiderivative with constant term `c0`, one order higher.
    pub fn antiderivative(&self, c0: f64) -> Jet1 {
        let mut c = Vec::with_capacity(self.c.len() + 1);
        c.push(c0);
        for (k, ck) in self.c.iter().enumerate() {
            c.push(ck / (k + 1) as f64);
        }
        Jet1 { base: self.base, c }
    }

    pub fn scale(&self, a: f64) -> Jet1 {
        Jet1 {
            base: self.base,
            c: self.c.iter().map(|x| a * x).collect(),
        }
    }

    pub fn add(&self, rhs: &Jet1) -> Jet1 {
        self.zip(rhs, |a, b| a + b)
    }

    pub fn sub(&self, rhs: &Jet1) -> Jet1 {
        self.zip(rhs, |a, b| a - b)
    }

    pub fn add_scalar(&self, a: f64) -> Jet1 {
        let mut r = self.clone();
        r.c[0] += a;
        r
    }

    fn zip(&self, rhs: &Jet1, f: impl Fn(f64, f64) -> f64) -> Jet1 {
        debug_assert_eq!(self.base, rhs.base, "jet base mismatch");
        let n = self.c.len().min(rhs.c.len());
        Jet1 {
            base: self.base,
            c: (0..n).map(|k| f(self.c[k], rhs.c[k])).collect(),
        }
    }

    pub fn neg(&self) -> Jet1 {
        self.scale(-1.0)
    }

    /// Cauchy product truncated at the common order.
    pub fn mul(&self, rhs: &Jet1) -> Jet1 {
        debug_assert_eq!(self.base, rhs.base, "jet base mismatch");
        let n = self.c.len().min(rhs.c.len());
        let mut c = vec![0.0; n];
        for i in 0..n {
            for j in 0..n - i {
                c[i + j] += self.c[i] * rhs.c[j];
            }
        }
        Jet1 { base: self.base, c }
    }

    pub fn div(&self, rhs: &Jet1) -> Result<Jet1> {
        if rhs.c[0].abs() < TOL_DIV {
            return Err(Error::Eval {
                kind: EvalErrorKind::DivisionByZero,
                node: "jet division".into(),
                u: self.base,
                v: None,
            });
        }
        let n = self.c.len().min(rhs.c.len());
        let mut c = vec![0.0; n];
        for k in 0..n {
            let mut acc = if k < self.c.len() { self.c[k] } else { 0.0 };
            for j in 1..=k {
                acc -= rhs.c[j] * c[k - j];
            }
            c[k] = acc / rhs.c[0];
        }
        Ok(Jet1 { base: self.base, c })
    }

    /// g(f) for an outer function given by its Taylor coefficients about
    /// f(base); Horner evaluation in the jet algebra is exact truncation.
    fn compose_outer(&self, outer: &[f64]) -> Jet1 {
        let mut delta = self.clone();
        delta.c[0] = 0.0;
        let n = self.order();
        let mut acc = Jet1::constant(outer[n.min(outer.len() - 1)], self.base, n);
        for k in (0..n.min(outer.len() - 1)).rev() {
            acc = acc.mul(&delta).add_scalar(outer[k]);
        }
        acc
    }

    pub fn exp(&self) -> Jet1 {
        let e = self.c[0].exp();
        let co = outer_coeffs(self.order(), |k| e / factorial(k));
        self.compose_outer(&co)
    }

    pub fn sin(&self) -> Jet1 {
        let (s, c) = self.c[0].sin_cos();
        let co = outer_coeffs(self.order(), |k| {
            let v = match k % 4 {
                0 => s,
                1 => c,
                2 => -s,
                _ => -c,
            };
            v / factorial(k)
        });
        self.compose_outer(&co)
    }

    pub fn cos(&self) -> Jet1 {
        let (s, c) = self.c[0].sin_cos();
        let co = outer_coeffs(self.order(), |k| {
            let v = match k % 4 {
                0 => c,
                1 => -s,
                2 => -c,
                _ => s,
            };
            v / factorial(k)
        });
        self.compose_outer(&co)
    }

    pub fn sqrt(&self) -> Result<Jet1> {
        if self.c[0] < 0.0 {
            return Err(Error::Eval {
                kind: EvalErrorKind::SqrtOfNegative,
                node: "jet sqrt".into(),
                u: self.base,
                v: None,
            });
        }
        self.powf_with_p0(0.5, self.c[0].sqrt())
    }

    /// Real cube root; valid for negative leading values as well.
    pub fn cbrt(&self) -> Result<Jet1> {
        self.powf_with_p0(1.0 / 3.0, self.c[0].cbrt())
    }

    /// Integer power by repeated squaring; valid for any leading value.
    pub fn powi(&self, n: i32) -> Result<Jet1> {
        if n < 0 {
            let one = Jet1::constant(1.0, self.base, self.order());
            return one.div(&self.powi(-n)?);
        }
        let mut acc = Jet1::constant(1.0, self.base, self.order());
        let mut b = self.clone();
        let mut n = n as u32;
        while n > 0 {
            if n & 1 == 1 {
                acc = acc.mul(&b);
            }
            b = b.mul(&b);
            n >>= 1;
        }
        Ok(acc)
    }

    /// p = self^alpha for real alpha, leading value must be positive.
    pub fn powf(&self, alpha: f64) -> Result<Jet1> {
        if self.c[0] <= 0.0 {
            return Err(Error::Eval {
                kind: EvalErrorKind::PowOfNonPositive,
                node: "jet pow".into(),
                u: self.base,
                v: None,
            });
        }
        self.powf_with_p0(alpha, self.c[0].powf(alpha))
    }

    /// Power recurrence from a*p' = alpha*a'*p, seeded with p[0].
    fn powf_with_p0(&self, alpha: f64, p0: f64) -> Result<Jet1> {
        if self.c[0].abs() < TOL_DIV {
            return Err(Error::Eval {
                kind: EvalErrorKind::DivisionByZero,
                node: "jet pow".into(),
                u: self.base,
                v: None,
            });
        }
        let n = self.c.len();
        let mut p = vec![0.0; n];
        p[0] = p0;
        for k in 1..n {
            let mut acc = 0.0;
            for i in 1..=k {
                acc += (alpha * i as f64 - (k - i) as f64) * self.c[i] * p[k - i];
            }
            p[k] = acc / (k as f64 * self.c[0]);
        }
        Ok(Jet1 { base: self.base, c: p })
    }

    /// Jet of `self(inner(.))` at inner's base. Requires inner's value to
    /// match self's base point.
    pub fn compose(&self, inner: &Jet1) -> Result<Jet1> {
        if (inner.c[0] - self.base).abs() > 1e-8 * (1.0 + self.base.abs()) {
            return Err(Error::BaseMismatch {
                outer: self.base,
                inner: inner.c[0],
            });
        }
        let n = self.order().min(inner.order());
        let mut delta = inner.truncated(n);
        delta.c[0] = 0.0;
        let mut acc = Jet1::constant(self.c[n], inner.base, n);
        for k in (0..n).rev() {
            acc = acc.mul(&delta).add_scalar(self.c[k]);
        }
        Ok(acc)
    }

    /// Series reversion: the jet of the inverse function at self.value().
    /// Requires a nonvanishing first coefficient.
    pub fn invert(&self) -> Result<Jet1> {
        let n = self.order();
        if n < 1 || self.c[1].abs() < TOL_DIV {
            return Err(Error::Eval {
                kind: EvalErrorKind::DivisionByZero,
                node: "jet inversion (vanishing derivative)".into(),
                u: self.base,
                v: None,
            });
        }
        // t(s): S(T(s)) = s with S = self - value, T = sum b_k ds^k.
        let mut b = vec![0.0; n + 1];
        b[1] = 1.0 / self.c[1];
        for k in 2..=n {
            // coefficient of ds^k in sum_{j>=2} a_j T(ds)^j with b[k] = 0
            let t = Jet1 {
                base: self.c[0],
                c: b.clone(),
            };
            let mut acc = Jet1::constant(0.0, self.c[0], n);
            let mut tpow = t.mul(&t);
            for j in 2..=k {
                acc = acc.add(&tpow.scale(self.c[j]));
                if j < k {
                    tpow = tpow.mul(&t);
                }
            }
            b[k] = -acc.c[k] / self.c[1];
        }
        Ok(Jet1 {
            base: self.c[0],
            c: {
                let mut c = b;
                c[0] = self.base;
                c
            },
        })
    }
}

// ---------------------------------------------------------------------------
// Jet2
// ---------------------------------------------------------------------------

/// Bivariate jet at `(ubase, vbase)`: coefficients `c[idx(i,j)]` with
/// i+j <= order, `c[i][j] = (1/(i! j!)) d^{i+j} f / du^i dv^j`.
#[derive(Debug, Clone, PartialEq)]
pub struct Jet2 {
    pub ubase: f64,
    pub vbase: f64,
    pub order: usize,
    pub c: Vec<f64>,
}

fn idx(i: usize, j: usize) -> usize {
    let d = i + j;
    d * (d + 1) / 2 + j
}

fn len_for(order: usize) -> usize {
    (order + 1) * (order + 2) / 2
}

impl Jet2 {
    pub fn constant(value: f64, ubase: f64, vbase: f64, order: usize) -> Self {
        let mut c = vec![0.0; len_for(order)];
        c[0] = value;
        Jet2 {
            ubase,
            vbase,
            order,
            c,
        }
    }

    pub fn variable_u(ubase: f64, vbase: f64, order: usize) -> Self {
        let mut j = Jet2::constant(ubase, ubase, vbase, order);
        if order >= 1 {
            j.c[idx(1, 0)] = 1.0;
        }
        j
    }

    pub fn variable_v(ubase: f64, vbase: f64, order: usize) -> Self {
        let mut j = Jet2::constant(vbase, ubase, vbase, order);
        if order >= 1 {
            j.c[idx(0, 1)] = 1.0;
        }
        j
    }

    pub fn coeff(&self, i: usize, j: usize) -> f64 {
        if i + j <= self.order {
            self.c[idx(i, j)]
        } else {
            0.0
        }
    }

    pub fn value(&self) -> f64 {
        self.c[0]
    }

    /// Raw mixed partial `d^{i+j} f / du^i dv^j`.
    pub fn partial(&self, i: usize, j: usize) -> f64 {
        self.coeff(i, j) * factorial(i) * factorial(j)
    }

    pub fn truncated(&self, order: usize) -> Jet2 {
        let k = order.min(self.order);
        Jet2 {
            ubase: self.ubase,
            vbase: self.vbase,
            order: k,
            c: self.c[..len_for(k)].to_vec(),
        }
    }

    /// Jet of the partial derivative in u, one order lower.
    pub fn du(&self) -> Jet2 {
        let k = self.order.saturating_sub(1);
        let mut out = Jet2::constant(0.0, self.ubase, self.vbase, k);
        for i in 0..=k {
            for j in 0..=(k - i) {
                out.c[idx(i, j)] = self.coeff(i + 1, j) * (i + 1) as f64;
            }
        }
        out
    }

    /// Jet of the partial derivative in v, one order lower.
    pub fn dv(&self) -> Jet2 {
        let k = self.order.saturating_sub(1);
        let mut out = Jet2::constant(0.0, self.ubase, self.vbase, k);
        for i in 0..=k {
            for j in 0..=(k - i) {
                out.c[idx(i, j)] = self.coeff(i, j + 1) * (j + 1) as f64;
            }
        }
        out
    }

    pub fn scale(&self, a: f64) -> Jet2 {
        Jet2 {
            ubase: self.ubase,
            vbase: self.vbase,
            order: self.order,
            c: self.c.iter().map(|x| a * x).collect(),
        }
    }

    pub fn add_scalar(&self, a: f64) -> Jet2 {
        let mut r = self.clone();
        r.c[0] += a;
        r
    }

    fn zip(&self, rhs: &Jet2, f: impl Fn(f64, f64) -> f64) -> Jet2 {
        let k = self.order.min(rhs.order);
        let mut out = Jet2::constant(0.0, self.ubase, self.vbase, k);
        for i in 0..=k {
            for j in 0..=(k - i) {
                out.c[idx(i, j)] = f(self.coeff(i, j), rhs.coeff(i, j));
            }
        }
        out
    }

    pub fn add(&self, rhs: &Jet2) -> Jet2 {
        self.zip(rhs, |a, b| a + b)
    }

    pub fn sub(&self, rhs: &Jet2) -> Jet2 {
        self.zip(rhs, |a, b| a - b)
    }

    pub fn neg(&self) -> Jet2 {
        self.scale(-1.0)
    }

    pub fn mul(&self, rhs: &Jet2) -> Jet2 {
        let k = self.order.min(rhs.order);
        let mut out = Jet2::constant(0.0, self.ubase, self.vbase, k);
        for d1 in 0..=k {
            for j1 in 0..=d1 {
                let i1 = d1 - j1;
                let a = self.coeff(i1, j1);
                if a == 0.0 {
                    continue;
                }
                for d2 in 0..=(k - d1) {
                    for j2 in 0..=d2 {
                        let i2 = d2 - j2;
                        out.c[idx(i1 + i2, j1 + j2)] += a * rhs.coeff(i2, j2);
                    }
                }
            }
        }
        out
    }

    fn compose_outer(&self, outer: &[f64]) -> Jet2 {
        let mut delta = self.clone();
        delta.c[0] = 0.0;
        let n = self.order;
        let top = n.min(outer.len() - 1);
        let mut acc = Jet2::constant(outer[top], self.ubase, self.vbase, n);
        for k in (0..top).rev() {
            acc = acc.mul(&delta).add_scalar(outer[k]);
        }
        acc
    }

    pub fn div(&self, rhs: &Jet2) -> Result<Jet2> {
        if rhs.c[0].abs() < TOL_DIV {
            return Err(Error::Eval {
                kind: EvalErrorKind::DivisionByZero,
                node: "jet division".into(),
                u: self.ubase,
                v: Some(self.vbase),
            });
        }
        let x0 = rhs.c[0];
        let co = outer_coeffs(rhs.order, |k| {
            (if k % 2 == 0 { 1.0 } else { -1.0 }) / x0.powi(k as i32 + 1)
        });
        Ok(self.mul(&rhs.compose_outer(&co)))
    }

    pub fn exp(&self) -> Jet2 {
        let e = self.c[0].exp();
        let co = outer_coeffs(self.order, |k| e / factorial(k));
        self.compose_outer(&co)
    }

    pub fn sin(&self) -> Jet2 {
        let (s, c) = self.c[0].sin_cos();
        let co = outer_coeffs(self.order, |k| {
            let v = match k % 4 {
                0 => s,
                1 => c,
                2 => -s,
                _ => -c,
            };
            v / factorial(k)
        });
        self.compose_outer(&co)
    }

    pub fn cos(&self) -> Jet2 {
        let (s, c) = self.c[0].sin_cos();
        let co = outer_coeffs(self.order, |k| {
            let v = match k % 4 {
                0 => c,
                1 => -s,
                2 => -c,
                _ => s,
            };
            v / factorial(k)
        });
        self.compose_outer(&co)
    }

    pub fn sqrt(&self) -> Result<Jet2> {
        if self.c[0] < 0.0 {
            return Err(Error::Eval {
                kind: EvalErrorKind::SqrtOfNegative,
                node: "jet sqrt".into(),
                u: self.ubase,
                v: Some(self.vbase),
            });
        }
        self.pow_outer(0.5, self.c[0].sqrt())
    }

    pub fn powi(&self, n: i32) -> Result<Jet2> {
        if n < 0 {
            let one = Jet2::constant(1.0, self.ubase, self.vbase, self.order);
            return one.div(&self.powi(-n)?);
        }
        let mut acc = Jet2::constant(1.0, self.ubase, self.vbase, self.order);
        let mut b = self.clone();
        let mut n = n as u32;
        while n > 0 {
            if n & 1 == 1 {
                acc = acc.mul(&b);
            }
            b = b.mul(&b);
            n >>= 1;
        }
        Ok(acc)
    }

    pub fn powf(&self, alpha: f64) -> Result<Jet2> {
        if self.c[0] <= 0.0 {
            return Err(Error::Eval {
                kind: EvalErrorKind::PowOfNonPositive,
                node: "jet pow".into(),
                u: self.ubase,
                v: Some(self.vbase),
            });
        }
        self.pow_outer(alpha, self.c[0].powf(alpha))
    }

    /// Binomial-series composition for x^alpha seeded with p0 = x0^alpha.
    fn pow_outer(&self, alpha: f64, p0: f64) -> Result<Jet2> {
        let x0 = self.c[0];
        if x0.abs() < TOL_DIV {
            return Err(Error::Eval {
                kind: EvalErrorKind::DivisionByZero,
                node: "jet pow".into(),
                u: self.ubase,
                v: Some(self.vbase),
            });
        }
        let mut co = vec![0.0; self.order + 1];
        co[0] = p0;
        for k in 1..=self.order {
            co[k] = co[k - 1] * (alpha - (k - 1) as f64) / (k as f64 * x0);
        }
        Ok(self.compose_outer(&co))
    }

    /// Evaluate the jet polynomial with Jet1 arguments; the arguments'
    /// values must equal the base point. This restricts a bivariate jet
    /// along a curve, exactly up to the common truncation order.
    pub fn eval_with(&self, u: &Jet1, v: &Jet1) -> Result<Jet1> {
        if (u.c[0] - self.ubase).abs() > 1e-8 * (1.0 + self.ubase.abs())
            || (v.c[0] - self.vbase).abs() > 1e-8 * (1.0 + self.vbase.abs())
        {
            return Err(Error::BaseMismatch {
                outer: self.ubase,
                inner: u.c[0],
            });
        }
        let n = u.order().min(v.order());
        let mut du = u.truncated(n);
        du.c[0] = 0.0;
        let mut dv = v.truncated(n);
        dv.c[0] = 0.0;
        // Horner in v inside Horner in u over the triangle.
        let mut upow = Jet1::constant(1.0, u.base, n);
        let mut acc = Jet1::constant(0.0, u.base, n);
        for i in 0..=self.order {
            // inner polynomial sum_j c[i][j] dv^j by Horner
            let jmax = self.order - i;
            let mut inner = Jet1::constant(self.coeff(i, jmax), u.base, n);
            for j in (0..jmax).rev() {
                inner = inner.mul(&dv).add_scalar(self.coeff(i, j));
            }
            acc = acc.add(&inner.mul(&upow));
            if i < self.order {
                upow = upow.mul(&du);
            }
        }
        Ok(acc)
    }

    /// Plain numeric evaluation of the jet polynomial at an offset.
    pub fn eval_offset(&self, du: f64, dv: f64) -> f64 {
        let mut acc = 0.0;
        let mut upow = 1.0;
        for i in 0..=self.order {
            let jmax = self.order - i;
            let mut inner = self.coeff(i, jmax);
            for j in (0..jmax).rev() {
                inner = inner * dv + self.coeff(i, j);
            }
            acc += inner * upow;
            upow *= du;
        }
        acc
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;
    use rand::prelude::*;
    use rand_chacha::ChaCha8Rng;

    fn central(f: &dyn Fn(f64) -> f64, x0: f64, k: usize, h: f64) -> f64 {
        if k == 0 {
            return f(x0);
        }
        let mut acc = 0.0;
        let mut binom = 1.0;
        for i in 0..=k {
            let sign = if i % 2 == 0 { 1.0 } else { -1.0 };
            acc += sign * binom * f(x0 + (k as f64 / 2.0 - i as f64) * h);
            binom = binom * (k - i) as f64 / (i + 1) as f64;
        }
        acc / h.powi(k as i32)
    }

    /// Central finite difference with one Richardson extrapolation step.
    pub fn fd_derivative_h(f: &dyn Fn(f64) -> f64, x0: f64, order: usize, h: f64) -> f64 {
        let a = central(f, x0, order, h);
        let b = central(f, x0, order, h / 2.0);
        // central differences have O(h^2) truncation error
        (4.0 * b - a) / 3.0
    }

    /// The independent derivative oracle: central differences over a
    /// shrinking-step table, extrapolated to h -> 0 in powers of h^2
    /// (Neville). Starting from a coarse step keeps the k-th difference
    /// clear of roundoff; the table removes the truncation error.
    pub fn fd_derivative_rich(f: &dyn Fn(f64) -> f64, x0: f64, order: usize, h0: f64) -> f64 {
        const LEVELS: usize = 6;
        const SHRINK: f64 = 1.6;
        let mut t = [[0.0; LEVELS]; LEVELS];
        for (i, row) in t.iter_mut().enumerate() {
            row[0] = central(f, x0, order, h0 / SHRINK.powi(i as i32));
        }
        let mut best = t[LEVELS - 1][0];
        let mut best_err = f64::INFINITY;
        for j in 1..LEVELS {
            let w = SHRINK.powi(2 * j as i32);
            for i in j..LEVELS {
                t[i][j] = (w * t[i][j - 1] - t[i - 1][j - 1]) / (w - 1.0);
                let err = (t[i][j] - t[i][j - 1]).abs() + (t[i][j] - t[i - 1][j - 1]).abs();
                if err < best_err {
                    best_err = err;
                    best = t[i][j];
                }
            }
        }
        best
    }

    pub fn fd_derivative(f: &dyn Fn(f64) -> f64, x0: f64, order: usize) -> f64 {
        fd_derivative_rich(f, x0, order, 0.1)
    }

    #[test]
    fn maclaurin_sin() {
        let j = Jet1::variable(0.0, 3).sin();
        let expect = [0.0, 1.0, 0.0, -1.0 / 6.0];
        for (k, e) in expect.iter().enumerate() {
            assert_relative_eq!(j.c[k], *e, epsilon = 1e-14);
        }
    }

    #[test]
    fn polynomial_square() {
        let u = Jet1::variable(2.0, 2);
        let j = u.mul(&u);
        assert_eq!(j.c, vec![4.0, 4.0, 1.0]);
    }

    #[test]
    fn sqrt_one_plus_u_vs_finite_differences() {
        let u = Jet1::variable(0.0, 2);
        let j = u.add_scalar(1.0).sqrt().unwrap();
        let f = |x: f64| (1.0 + x).sqrt();
        for k in 0..=2 {
            let fd = if k <= 1 {
                fd_derivative_h(&f, 0.0, k, 1e-5)
            } else {
                fd_derivative(&f, 0.0, k)
            };
            assert!(
                (j.deriv(k) - fd).abs() <= 1e-8 * (1.0 + fd.abs()),
                "k={k}: jet {} vs fd {}",
                j.deriv(k),
                fd
            );
        }
        assert_relative_eq!(j.c[0], 1.0);
        assert_relative_eq!(j.c[1], 0.5);
        assert_relative_eq!(j.c[2], -0.125);
    }

    #[test]
    fn primitives_match_finite_differences() {
        // all supported primitives, K <= 6, 100 random base points
        let mut rng = ChaCha8Rng::seed_from_u64(23);
        type F = (fn(f64) -> f64, fn(&Jet1) -> Jet1, (f64, f64));
        let cases: Vec<F> = vec![
            (|x| x.sin(), |j| j.sin(), (-3.0, 3.0)),
            (|x| x.cos(), |j| j.cos(), (-3.0, 3.0)),
            (|x| x.exp(), |j| j.exp(), (-1.5, 1.5)),
            (|x| x.sqrt(), |j| j.sqrt().unwrap(), (0.4, 3.0)),
            (|x| x.powf(1.7), |j| j.powf(1.7).unwrap(), (0.4, 3.0)),
            (|x| 1.0 / x, |j| j.powi(-1).unwrap(), (0.4, 3.0)),
        ];
        for _ in 0..100 {
            let (f, jf, range) = &cases[rng.gen_range(0..cases.len())];
            let x0 = rng.gen_range(range.0..range.1);
            let j = jf(&Jet1::variable(x0, 6));
            for k in 0..=6 {
                let fd = fd_derivative(f, x0, k);
                let scale = fd.abs().max(1.0);
                // the comparison is limited by the oracle, not the jets:
                // extrapolated central differences bottom out near
                // 2^k * eps / h^k in f64 at high order
                let tol = if k <= 4 { 1e-6 } else { 2e-5 };
                assert!(
                    (j.deriv(k) - fd).abs() <= tol * scale,
                    "k={k} x0={x0}: {} vs {}",
                    j.deriv(k),
                    fd
                );
            }
        }
    }

    #[test]
    fn leibniz_rule() {
        let mut rng = ChaCha8Rng::seed_from_u64(29);
        for _ in 0..50 {
            let x0: f64 = rng.gen_range(-1.0..1.0);
            let f = Jet1::variable(x0, 6).sin();
            let g = Jet1::variable(x0, 6).add_scalar(2.0).exp();
            let lhs = f.mul(&g).derivative();
            let rhs = f.derivative().mul(&g.truncated(5)).add(&f.truncated(5).mul(&g.derivative()));
            for k in 0..=5 {
                assert_relative_eq!(lhs.c[k], rhs.c[k], epsilon = 1e-10, max_relative = 1e-10);
            }
        }
    }

    #[test]
    fn truncation_consistency() {
        let mut rng = ChaCha8Rng::seed_from_u64(31);
        for _ in 0..50 {
            let x0: f64 = rng.gen_range(0.5..1.5);
            let full = Jet1::variable(x0, 6);
            let expr_k = full.sin().mul(&full.sqrt().unwrap());
            let low = Jet1::variable(x0, 5);
            let expr_k1 = low.sin().mul(&low.sqrt().unwrap());
            for k in 0..=5 {
                assert_relative_eq!(expr_k.c[k], expr_k1.c[k], epsilon = 1e-13, max_relative = 1e-13);
            }
        }
    }

    #[test]
    fn compose_sin_2u() {
        let outer = Jet1::variable(0.0, 3).sin();
        let inner = Jet1::variable(0.0, 3).scale(2.0);
        let j = outer.compose(&inner).unwrap();
        let expect = [0.0, 2.0, 0.0, -4.0 / 3.0];
        for (k, e) in expect.iter().enumerate() {
            assert_relative_eq!(j.c[k], *e, epsilon = 1e-13);
        }
    }

    #[test]
    fn compose_identity_and_associativity() {
        let mut rng = ChaCha8Rng::seed_from_u64(37);
        for _ in 0..30 {
            let x0: f64 = rng.gen_range(-1.0..1.0);
            let f = Jet1::variable(x0, 5).sin().add_scalar(2.0);
            let id = Jet1::variable(x0, 5);
            let composed = f.compose(&id).unwrap();
            for k in 0..=5 {
                assert_relative_eq!(composed.c[k], f.c[k], epsilon = 1e-13);
            }
            // random polynomial jets with aligned bases:
            // h at x0 with value y0, g at y0 with value z0, f2 at z0
            let y0: f64 = rng.gen_range(-1.0..1.0);
            let z0: f64 = rng.gen_range(-1.0..1.0);
            let mut h = Jet1::constant(y0, x0, 5);
            let mut g = Jet1::constant(z0, y0, 5);
            let mut f2 = Jet1::constant(rng.gen_range(-1.0..1.0), z0, 5);
            for k in 1..=5 {
                h.c[k] = rng.gen_range(-1.0..1.0);
                g.c[k] = rng.gen_range(-1.0..1.0);
                f2.c[k] = rng.gen_range(-1.0..1.0);
            }
            let lhs = f2.compose(&g).unwrap().compose(&h).unwrap();
            let rhs = f2.compose(&g.compose(&h).unwrap()).unwrap();
            for k in 0..=5 {
                assert_relative_eq!(lhs.c[k], rhs.c[k], epsilon = 1e-11, max_relative = 1e-11);
            }
        }
    }

    #[test]
    fn base_mismatch_is_error() {
        let outer = Jet1::variable(1.0, 3).sin();
        let inner = Jet1::variable(0.0, 3); // value 0 != base 1
        assert!(outer.compose(&inner).is_err());
    }

    #[test]
    fn division_by_small_jet_is_error() {
        let one = Jet1::constant(1.0, 0.0, 3);
        let tiny = Jet1::constant(1e-14, 0.0, 3);
        assert!(one.div(&tiny).is_err());
    }

    #[test]
    fn inversion_reverts_series() {
        let mut rng = ChaCha8Rng::seed_from_u64(41);
        for _ in 0..30 {
            let x0: f64 = rng.gen_range(-0.5..0.5);
            let s = Jet1::variable(x0, 6).exp(); // monotone, s'(x0) != 0
            let t = s.invert().unwrap();
            let roundtrip = s.compose(&t).unwrap();
            // s(t(y)) = y as a jet at y0 = s(x0)
            assert_relative_eq!(roundtrip.c[0], s.value(), epsilon = 1e-12);
            assert_relative_eq!(roundtrip.c[1], 1.0, epsilon = 1e-10);
            for k in 2..=6 {
                assert!(roundtrip.c[k].abs() < 1e-9, "k={k}: {}", roundtrip.c[k]);
            }
        }
    }

    #[test]
    fn jet2_product_example() {
        let u = Jet2::variable_u(1.0, 1.0, 2);
        let v = Jet2::variable_v(1.0, 1.0, 2);
        let p = u.mul(&v);
        assert_relative_eq!(p.coeff(0, 0), 1.0);
        assert_relative_eq!(p.coeff(1, 0), 1.0);
        assert_relative_eq!(p.coeff(0, 1), 1.0);
        assert_relative_eq!(p.coeff(1, 1), 1.0);
        assert_relative_eq!(p.coeff(2, 0), 0.0);
        assert_relative_eq!(p.coeff(0, 2), 0.0);
    }

    #[test]
    fn jet2_sum_of_squares() {
        let u = Jet2::variable_u(0.0, 0.0, 2);
        let v = Jet2::variable_v(0.0, 0.0, 2);
        let p = u.mul(&u).add(&v.mul(&v));
        for i in 0..=2 {
            for j in 0..=(2 - i) {
                let expect = if (i, j) == (2, 0) || (i, j) == (0, 2) { 1.0 } else { 0.0 };
                assert_relative_eq!(p.coeff(i, j), expect);
            }
        }
    }

    #[test]
    fn jet2_c1_of_worked_catalog_surface() {
        // c1(u,v) = v(2u+v) at (1,0), K=2: c[0][1]=2, c[1][1]=2, c[0][2]=1
        let u = Jet2::variable_u(1.0, 0.0, 2);
        let v = Jet2::variable_v(1.0, 0.0, 2);
        let c1 = v.mul(&u.scale(2.0).add(&v));
        assert_relative_eq!(c1.coeff(0, 1), 2.0);
        assert_relative_eq!(c1.coeff(1, 1), 2.0);
        assert_relative_eq!(c1.coeff(0, 2), 1.0);
        assert_relative_eq!(c1.coeff(0, 0), 0.0);
        assert_relative_eq!(c1.coeff(1, 0), 0.0);
        assert_relative_eq!(c1.coeff(2, 0), 0.0);
    }

    #[test]
    fn jet2_partials_and_eval_with() {
        // f(u,v) = sin(u) * exp(v) at (0.4, -0.2)
        let (u0, v0) = (0.4, -0.2);
        let f = Jet2::variable_u(u0, v0, 6)
            .sin()
            .mul(&Jet2::variable_v(u0, v0, 6).exp());
        assert_relative_eq!(f.partial(2, 1), -u0.sin() * v0.exp(), epsilon = 1e-12);
        assert_relative_eq!(f.partial(1, 3), u0.cos() * v0.exp(), epsilon = 1e-12);

        // restrict along u(t) = u0 + t, v(t) = v0 + 2t at t=0:
        // g(t) = sin(u0+t) exp(v0+2t), g'(0) = cos*exp + 2 sin*exp
        let ut = Jet1::variable(u0, 4);
        let vt = Jet1 {
            base: u0,
            c: vec![v0, 2.0, 0.0, 0.0, 0.0],
        };
        let g = f.eval_with(&ut, &vt).unwrap();
        let expect1 = u0.cos() * v0.exp() + 2.0 * u0.sin() * v0.exp();
        assert_relative_eq!(g.deriv(1), expect1, epsilon = 1e-12);
        let f2 = |t: f64| (u0 + t).sin() * (v0 + 2.0 * t).exp();
        for k in 0..=3 {
            let fd = fd_derivative(&f2, 0.0, k);
            assert!((g.deriv(k) - fd).abs() <= 1e-6 * fd.abs().max(1.0));
        }
    }

    #[test]
    fn jet2_division_and_sqrt() {
        let (u0, v0) = (0.7, 0.3);
        let u = Jet2::variable_u(u0, v0, 5);
        let v = Jet2::variable_v(u0, v0, 5);
        let expr = u
            .mul(&u)
            .add(&v.mul(&v))
            .add_scalar(1.0)
            .sqrt()
            .unwrap()
            .div(&u.add_scalar(2.0))
            .unwrap();
        let f = |uu: f64, vv: f64| (uu * uu + vv * vv + 1.0).sqrt() / (uu + 2.0);
        // check against finite differences in each variable
        let fu = |x: f64| f(x, v0);
        let fv = |x: f64| f(u0, x);
        for k in 1..=3 {
            let fd_u = fd_derivative(&fu, u0, k);
            let fd_v = fd_derivative(&fv, v0, k);
            assert!((expr.partial(k, 0) - fd_u).abs() <= 1e-6 * fd_u.abs().max(1.0));
            assert!((expr.partial(0, k) - fd_v).abs() <= 1e-6 * fd_v.abs().max(1.0));
        }
    }

    #[test]
    fn cbrt_of_negative() {
        let j = Jet1::variable(-8.0, 3).cbrt().unwrap();
        assert_relative_eq!(j.value(), -2.0, epsilon = 1e-12);
        // d/dx x^(1/3) = (1/3) x^(-2/3) at -8: (1/3) * (4)^-1 = 1/12
        assert_relative_eq!(j.deriv(1), 1.0 / 12.0, epsilon = 1e-12);
    }
}
