//! Expression trees over the variables u and v.
//!
//! Trees carry the surface and curve definitions (f, nu, gamma). They are
//! immutable after construction; evaluation lowers them into f64, `Jet1`
//! or `Jet2` values through one generic walker, and `diff` produces exact
//! partial derivatives as new trees.

use std::fmt;
use std::rc::Rc;

use crate::error::{Error, EvalErrorKind, Result};
use crate::jet::{Jet1, Jet2};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Var {
    U,
    V,
}

#[derive(Debug, Clone, PartialEq)]
pub enum Expr {
    Const(f64),
    Var(Var),
    Add(Rc<Expr>, Rc<Expr>),
    Sub(Rc<Expr>, Rc<Expr>),
    Mul(Rc<Expr>, Rc<Expr>),
    Div(Rc<Expr>, Rc<Expr>),
    Neg(Rc<Expr>),
    /// Power with a constant (rational) exponent.
    Pow(Rc<Expr>, f64),
    Sqrt(Rc<Expr>),
    Sin(Rc<Expr>),
    Cos(Rc<Expr>),
    Exp(Rc<Expr>),
}

/// Shared handle to an expression node; all algebra below builds these.
#[derive(Debug, Clone, PartialEq)]
pub struct Ex(pub Rc<Expr>);

pub fn con(c: f64) -> Ex {
    Ex(Rc::new(Expr::Const(c)))
}

pub fn var_u() -> Ex {
    Ex(Rc::new(Expr::Var(Var::U)))
}

pub fn var_v() -> Ex {
    Ex(Rc::new(Expr::Var(Var::V)))
}

impl Ex {
    pub fn sqrt(&self) -> Ex {
        Ex(Rc::new(Expr::Sqrt(self.0.clone())))
    }
    pub fn sin(&self) -> Ex {
        Ex(Rc::new(Expr::Sin(self.0.clone())))
    }
    pub fn cos(&self) -> Ex {
        Ex(Rc::new(Expr::Cos(self.0.clone())))
    }
    pub fn exp(&self) -> Ex {
        Ex(Rc::new(Expr::Exp(self.0.clone())))
    }
    pub fn pow(&self, e: f64) -> Ex {
        Ex(Rc::new(Expr::Pow(self.0.clone(), e)))
    }

    pub fn diff(&self, var: Var) -> Ex {
        Ex(diff_node(&self.0, var))
    }

    pub fn uses_v(&self) -> bool {
        uses_v_node(&self.0)
    }
}

impl std::ops::Add for Ex {
    type Output = Ex;
    fn add(self, rhs: Ex) -> Ex {
        Ex(Rc::new(Expr::Add(self.0, rhs.0)))
    }
}
impl std::ops::Sub for Ex {
    type Output = Ex;
    fn sub(self, rhs: Ex) -> Ex {
        Ex(Rc::new(Expr::Sub(self.0, rhs.0)))
    }
}
impl std::ops::Mul for Ex {
    type Output = Ex;
    fn mul(self, rhs: Ex) -> Ex {
        Ex(Rc::new(Expr::Mul(self.0, rhs.0)))
    }
}
impl std::ops::Div for Ex {
    type Output = Ex;
    fn div(self, rhs: Ex) -> Ex {
        Ex(Rc::new(Expr::Div(self.0, rhs.0)))
    }
}
impl std::ops::Neg for Ex {
    type Output = Ex;
    fn neg(self) -> Ex {
        Ex(Rc::new(Expr::Neg(self.0)))
    }
}

fn uses_v_node(e: &Expr) -> bool {
    match e {
        Expr::Const(_) => false,
        Expr::Var(v) => *v == Var::V,
        Expr::Add(a, b) | Expr::Sub(a, b) | Expr::Mul(a, b) | Expr::Div(a, b) => {
            uses_v_node(a) || uses_v_node(b)
        }
        Expr::Neg(a) | Expr::Sqrt(a) | Expr::Sin(a) | Expr::Cos(a) | Expr::Exp(a) => uses_v_node(a),
        Expr::Pow(a, _) => uses_v_node(a),
    }
}

fn diff_node(e: &Expr, var: Var) -> Rc<Expr> {
    let d = |x: &Rc<Expr>| diff_node(x, var);
    let rc = |e: Expr| Rc::new(e);
    match e {
        Expr::Const(_) => rc(Expr::Const(0.0)),
        Expr::Var(v) => rc(Expr::Const(if *v == var { 1.0 } else { 0.0 })),
        Expr::Add(a, b) => rc(Expr::Add(d(a), d(b))),
        Expr::Sub(a, b) => rc(Expr::Sub(d(a), d(b))),
        Expr::Mul(a, b) => rc(Expr::Add(
            rc(Expr::Mul(d(a), b.clone())),
            rc(Expr::Mul(a.clone(), d(b))),
        )),
        Expr::Div(a, b) => rc(Expr::Div(
            rc(Expr::Sub(
                rc(Expr::Mul(d(a), b.clone())),
                rc(Expr::Mul(a.clone(), d(b))),
            )),
            rc(Expr::Mul(b.clone(), b.clone())),
        )),
        Expr::Neg(a) => rc(Expr::Neg(d(a))),
        Expr::Pow(a, p) => rc(Expr::Mul(
            rc(Expr::Mul(
                rc(Expr::Const(*p)),
                rc(Expr::Pow(a.clone(), p - 1.0)),
            )),
            d(a),
        )),
        Expr::Sqrt(a) => rc(Expr::Div(
            d(a),
            rc(Expr::Mul(rc(Expr::Const(2.0)), rc(Expr::Sqrt(a.clone())))),
        )),
        Expr::Sin(a) => rc(Expr::Mul(rc(Expr::Cos(a.clone())), d(a))),
        Expr::Cos(a) => rc(Expr::Neg(rc(Expr::Mul(rc(Expr::Sin(a.clone())), d(a))))),
        Expr::Exp(a) => rc(Expr::Mul(rc(Expr::Exp(a.clone())), d(a))),
    }
}

// ---------------------------------------------------------------------------
// Generic evaluation
// ---------------------------------------------------------------------------

/// A value algebra the expression walker can lower into.
pub trait EvalValue: Clone {
    fn from_const(c: f64, like: &Self) -> Self;
    fn add(&self, rhs: &Self) -> Self;
    fn sub(&self, rhs: &Self) -> Self;
    fn mul(&self, rhs: &Self) -> Self;
    fn neg(&self) -> Self;
    fn div(&self, rhs: &Self) -> Option<Self>;
    fn sqrt(&self) -> Option<Self>;
    fn sin(&self) -> Self;
    fn cos(&self) -> Self;
    fn exp(&self) -> Self;
    fn powi(&self, n: i32) -> Option<Self>;
    fn powf(&self, p: f64) -> Option<Self>;
    fn leading(&self) -> f64;
}

impl EvalValue for f64 {
    fn from_const(c: f64, _like: &Self) -> Self {
        c
    }
    fn add(&self, rhs: &Self) -> Self {
        self + rhs
    }
    fn sub(&self, rhs: &Self) -> Self {
        self - rhs
    }
    fn mul(&self, rhs: &Self) -> Self {
        self * rhs
    }
    fn neg(&self) -> Self {
        -self
    }
    fn div(&self, rhs: &Self) -> Option<Self> {
        (rhs.abs() >= crate::jet::TOL_DIV).then(|| self / rhs)
    }
    fn sqrt(&self) -> Option<Self> {
        (*self >= 0.0).then(|| f64::sqrt(*self))
    }
    fn sin(&self) -> Self {
        f64::sin(*self)
    }
    fn cos(&self) -> Self {
        f64::cos(*self)
    }
    fn exp(&self) -> Self {
        f64::exp(*self)
    }
    fn powi(&self, n: i32) -> Option<Self> {
        if n < 0 && self.abs() < crate::jet::TOL_DIV {
            None
        } else {
            Some(f64::powi(*self, n))
        }
    }
    fn powf(&self, p: f64) -> Option<Self> {
        (*self > 0.0).then(|| f64::powf(*self, p))
    }
    fn leading(&self) -> f64 {
        *self
    }
}

impl EvalValue for Jet1 {
    fn from_const(c: f64, like: &Self) -> Self {
        Jet1::constant(c, like.base, like.order())
    }
    fn add(&self, rhs: &Self) -> Self {
        Jet1::add(self, rhs)
    }
    fn sub(&self, rhs: &Self) -> Self {
        Jet1::sub(self, rhs)
    }
    fn mul(&self, rhs: &Self) -> Self {
        Jet1::mul(self, rhs)
    }
    fn neg(&self) -> Self {
        Jet1::neg(self)
    }
    fn div(&self, rhs: &Self) -> Option<Self> {
        Jet1::div(self, rhs).ok()
    }
    fn sqrt(&self) -> Option<Self> {
        Jet1::sqrt(self).ok()
    }
    fn sin(&self) -> Self {
        Jet1::sin(self)
    }
    fn cos(&self) -> Self {
        Jet1::cos(self)
    }
    fn exp(&self) -> Self {
        Jet1::exp(self)
    }
    fn powi(&self, n: i32) -> Option<Self> {
        Jet1::powi(self, n).ok()
    }
    fn powf(&self, p: f64) -> Option<Self> {
        Jet1::powf(self, p).ok()
    }
    fn leading(&self) -> f64 {
        self.value()
    }
}

impl EvalValue for Jet2 {
    fn from_const(c: f64, like: &Self) -> Self {
        Jet2::constant(c, like.ubase, like.vbase, like.order)
    }
    fn add(&self, rhs: &Self) -> Self {
        Jet2::add(self, rhs)
    }
    fn sub(&self, rhs: &Self) -> Self {
        Jet2::sub(self, rhs)
    }
    fn mul(&self, rhs: &Self) -> Self {
        Jet2::mul(self, rhs)
    }
    fn neg(&self) -> Self {
        Jet2::neg(self)
    }
    fn div(&self, rhs: &Self) -> Option<Self> {
        Jet2::div(self, rhs).ok()
    }
    fn sqrt(&self) -> Option<Self> {
        Jet2::sqrt(self).ok()
    }
    fn sin(&self) -> Self {
        Jet2::sin(self)
    }
    fn cos(&self) -> Self {
        Jet2::cos(self)
    }
    fn exp(&self) -> Self {
        Jet2::exp(self)
    }
    fn powi(&self, n: i32) -> Option<Self> {
        Jet2::powi(self, n).ok()
    }
    fn powf(&self, p: f64) -> Option<Self> {
        Jet2::powf(self, p).ok()
    }
    fn leading(&self) -> f64 {
        self.value()
    }
}

fn is_integer(p: f64) -> bool {
    p.fract() == 0.0 && p.abs() <= i32::MAX as f64
}

/// Evaluate with the variables bound to arbitrary algebra values. `vv` may
/// be `None` for univariate expressions.
pub fn eval_with<T: EvalValue>(expr: &Expr, uu: &T, vv: Option<&T>) -> Result<T> {
    let at = || (uu.leading(), vv.map(|v| v.leading()));
    match expr {
        Expr::Const(c) => Ok(T::from_const(*c, uu)),
        Expr::Var(Var::U) => Ok(uu.clone()),
        Expr::Var(Var::V) => vv.cloned().ok_or(Error::UnivariateOnly),
        Expr::Add(a, b) => Ok(eval_with(a, uu, vv)?.add(&eval_with(b, uu, vv)?)),
        Expr::Sub(a, b) => Ok(eval_with(a, uu, vv)?.sub(&eval_with(b, uu, vv)?)),
        Expr::Mul(a, b) => Ok(eval_with(a, uu, vv)?.mul(&eval_with(b, uu, vv)?)),
        Expr::Div(a, b) => {
            let num = eval_with(a, uu, vv)?;
            let den = eval_with(b, uu, vv)?;
            num.div(&den).ok_or_else(|| {
                let (u, v) = at();
                Error::Eval {
                    kind: EvalErrorKind::DivisionByZero,
                    node: print_expr(expr),
                    u,
                    v,
                }
            })
        }
        Expr::Neg(a) => Ok(eval_with(a, uu, vv)?.neg()),
        Expr::Pow(a, p) => {
            let base = eval_with(a, uu, vv)?;
            let r = if is_integer(*p) {
                base.powi(*p as i32)
            } else {
                base.powf(*p)
            };
            r.ok_or_else(|| {
                let (u, v) = at();
                Error::Eval {
                    kind: if is_integer(*p) {
                        EvalErrorKind::DivisionByZero
                    } else {
                        EvalErrorKind::PowOfNonPositive
                    },
                    node: print_expr(expr),
                    u,
                    v,
                }
            })
        }
        Expr::Sqrt(a) => {
            let inner = eval_with(a, uu, vv)?;
            inner.sqrt().ok_or_else(|| {
                let (u, v) = at();
                Error::Eval {
                    kind: EvalErrorKind::SqrtOfNegative,
                    node: print_expr(expr),
                    u,
                    v,
                }
            })
        }
        Expr::Sin(a) => Ok(eval_with(a, uu, vv)?.sin()),
        Expr::Cos(a) => Ok(eval_with(a, uu, vv)?.cos()),
        Expr::Exp(a) => Ok(eval_with(a, uu, vv)?.exp()),
    }
}

/// Scalar evaluation at a point.
pub fn eval_scalar(expr: &Expr, u: f64, v: Option<f64>) -> Result<f64> {
    eval_with(expr, &u, v.as_ref())
}

/// Univariate jet of the expression at u0, exact to the requested order.
pub fn eval_jet1(expr: &Expr, u0: f64, order: usize) -> Result<Jet1> {
    eval_with(expr, &Jet1::variable(u0, order), None)
}

/// Bivariate jet of the expression at (u0, v0).
pub fn eval_jet2(expr: &Expr, u0: f64, v0: f64, order: usize) -> Result<Jet2> {
    eval_with(
        expr,
        &Jet2::variable_u(u0, v0, order),
        Some(&Jet2::variable_v(u0, v0, order)),
    )
}

// ---------------------------------------------------------------------------
// Printing (parse . print == identity, see the parser tests)
// ---------------------------------------------------------------------------

fn prec(e: &Expr) -> u8 {
    match e {
        Expr::Add(..) | Expr::Sub(..) => 1,
        Expr::Mul(..) | Expr::Div(..) => 2,
        Expr::Neg(..) => 3,
        Expr::Pow(..) => 4,
        _ => 5,
    }
}

fn fmt_f64(x: f64) -> String {
    if x == std::f64::consts::PI {
        return "pi".into();
    }
    let mut s = format!("{}", x);
    if !s.contains('.') && !s.contains('e') && !s.contains("inf") && !s.contains("nan") {
        s.push_str(".0");
    }
    s
}

fn print_child(child: &Expr, parent_prec: u8, f: &mut String) {
    if prec(child) < parent_prec {
        f.push('(');
        print_into(child, f);
        f.push(')');
    } else {
        print_into(child, f);
    }
}

fn print_into(e: &Expr, f: &mut String) {
    match e {
        Expr::Const(c) => {
            if *c < 0.0 {
                f.push('(');
                f.push_str(&fmt_f64(*c));
                f.push(')');
            } else {
                f.push_str(&fmt_f64(*c));
            }
        }
        Expr::Var(Var::U) => f.push('u'),
        Expr::Var(Var::V) => f.push('v'),
        Expr::Add(a, b) => {
            print_child(a, 1, f);
            f.push_str(" + ");
            print_child(b, 2, f);
        }
        Expr::Sub(a, b) => {
            print_child(a, 1, f);
            f.push_str(" - ");
            print_child(b, 2, f);
        }
        Expr::Mul(a, b) => {
            print_child(a, 2, f);
            f.push_str("*");
            print_child(b, 3, f);
        }
        Expr::Div(a, b) => {
            print_child(a, 2, f);
            f.push_str("/");
            print_child(b, 3, f);
        }
        Expr::Neg(a) => {
            f.push('-');
            print_child(a, 3, f);
        }
        Expr::Pow(a, p) => {
            print_child(a, 5, f);
            f.push('^');
            if *p < 0.0 || p.fract() != 0.0 {
                f.push('(');
                f.push_str(&fmt_f64(*p));
                f.push(')');
            } else {
                f.push_str(&fmt_f64(*p));
            }
        }
        Expr::Sqrt(a) => {
            f.push_str("sqrt(");
            print_into(a, f);
            f.push(')');
        }
        Expr::Sin(a) => {
            f.push_str("sin(");
            print_into(a, f);
            f.push(')');
        }
        Expr::Cos(a) => {
            f.push_str("cos(");
            print_into(a, f);
            f.push(')');
        }
        Expr::Exp(a) => {
            f.push_str("exp(");
            print_into(a, f);
            f.push(')');
        }
    }
}

pub fn print_expr(e: &Expr) -> String {
    let mut s = String::new();
    print_into(e, &mut s);
    s
}

impl fmt::Display for Ex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", print_expr(&self.0))
    }
}
