//! Crate-wide error type.

use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("zero normal vector has no causal plane class")]
    ZeroNormal,

    #[error("evaluation error at {node}: {kind} (u={u}{})", v.map(|v| format!(", v={v}")).unwrap_or_default())]
    Eval {
        kind: EvalErrorKind,
        node: String,
        u: f64,
        v: Option<f64>,
    },

    #[error("expression uses variable v in a univariate context")]
    UnivariateOnly,

    #[error("jet base point mismatch: outer base {outer} vs inner value {inner}")]
    BaseMismatch { outer: f64, inner: f64 },

    #[error("parse error at line {line}, column {col}: {msg}")]
    Parse { line: usize, col: usize, msg: String },

    #[error("unknown catalog entry `{0}`")]
    UnknownCatalog(String),

    #[error("frontal lift unavailable at (u,v)=({0}, {1}): f_u x f_v vanishes and no lift was supplied")]
    LiftUnavailable(f64, f64),

    #[error("seed not on lightlike locus: |phi| = {0:.3e}")]
    SeedNotOnLocus(f64),

    #[error("rank drop: grad phi vanishes near (u,v)=({0}, {1}); degenerate lightlike point")]
    RankDrop(f64, f64),

    #[error("corrector failed to converge at (u,v)=({0}, {1})")]
    CorrectorFailed(f64, f64),

    #[error("locus tangent is not spacelike at t={0}: <g',g'> = {1:.3e}")]
    NonSpacelikeTangent(f64, f64),

    #[error("locus is not a regular curve at t={0}")]
    IrregularLocus(f64),

    #[error("point ({0}, {1}) outside the parameter domain")]
    OutsideDomain(f64, f64),

    #[error("u0 = {0} out of the locus arclength range [0, {1}]")]
    U0OutOfRange(f64, f64),

    #[error("gauge function vanishes at u = {0}")]
    VanishingGauge(f64),

    #[error("lightcone Gauss direction is not lightlike on the locus at s={0}: <nu,nu>/|nu|^2 = {1:.3e}")]
    NonLightlikeNu(f64, f64),

    #[error("frame construction inconsistency: {0}")]
    FrameInconsistency(String),

    #[error("beta vanishes at s={0}: lightlike point is not of the first kind")]
    BetaVanishes(f64),

    #[error("f is not an immersion near the locus at s={0}")]
    NotImmersive(f64),

    #[error("alpha_{side} vanishes at u0 = {at}: {what} unavailable (vertex at infinity)")]
    VanishingAlpha { side: char, at: f64, what: String },

    #[error("degenerate pedal: r vanishes identically over the range")]
    DegeneratePedal,

    #[error("pedal radius r(u0) vanishes at u0 = {0}")]
    PedalRadiusZero(f64),

    #[error("insufficient jet order: need {need}, have {have}")]
    InsufficientOrder { need: usize, have: usize },

    #[error("model curve degenerate: {0}")]
    DegenerateModel(String),

    #[error("mesh target unavailable: {0}")]
    TargetUnavailable(String),

    #[error("analysis stage `{stage}` failed: {source}")]
    Stage {
        stage: &'static str,
        #[source]
        source: Box<Error>,
    },

    #[error("io error: {0}")]
    Io(#[from] std::io::Error),

    #[error("{0}")]
    Usage(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EvalErrorKind {
    DivisionByZero,
    SqrtOfNegative,
    PowOfNonPositive,
}

impl std::fmt::Display for EvalErrorKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            EvalErrorKind::DivisionByZero => write!(f, "division by (near) zero"),
            EvalErrorKind::SqrtOfNegative => write!(f, "sqrt of negative value"),
            EvalErrorKind::PowOfNonPositive => {
                write!(f, "power with non-integer exponent of non-positive base")
            }
        }
    }
}

impl Error {
    pub fn stage(stage: &'static str, source: Error) -> Error {
        Error::Stage {
            stage,
            source: Box::new(source),
        }
    }
}
