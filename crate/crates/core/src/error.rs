use alloc::string::String;
use alloc::vec::Vec;

pub type Result<T, E = GeomError> = core::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum GeomError {
    #[error("point lies on (or too close to) the zero section: fiber norm {norm:e}")]
    ZeroSection { norm: f64 },
    #[error("derivative order {order} out of range (1..=3)")]
    OrderOutOfRange { order: usize },
    #[error("nested derivatives exceed the supported depth {max}")]
    DerivativeDepthExceeded { max: usize },
    #[error("bad configuration: {0}")]
    BadConfig(String),
    #[error("degree {degree} out of range for this operation")]
    DegreeOutOfRange { degree: usize },
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("energy is not positive at {point:?}: E = {value:e}")]
    PositivityFailure { point: Vec<f64>, value: f64 },
    #[error("energy is not 2-homogeneous at {point:?}: |CE - 2E| = {residual:e}")]
    HomogeneityFailure { point: Vec<f64>, residual: f64 },
    #[error("fundamental form degenerate at {point:?}: {detail}")]
    NondegeneracyFailure { point: Vec<f64>, detail: String },
    #[error("form is not semibasic (residual {residual:e})")]
    NotSemibasic { residual: f64 },
    #[error("vector field is not a semispray (|JS - C| = {residual:e})")]
    NotSemispray { residual: f64 },
    #[error("vector 1-form is not an Ehresmann connection (residual {residual:e})")]
    NotConnection { residual: f64 },
    #[error("vector field is not vertical (|JV| = {residual:e})")]
    NotVertical { residual: f64 },
    #[error("semibasic vector 1-form is not torsion-free (|[J,L]| = {residual:e})")]
    NotTorsionFree { residual: f64 },
    #[error("vector field is not {degree}-homogeneous (residual {residual:e})")]
    NotHomogeneous { degree: f64, residual: f64 },
    #[error("homogeneity degree r = -1 admits no reconstruction")]
    DegenerateDegree,
    #[error("theorem hypothesis fails: {what} (residual {residual:e})")]
    HypothesisFailure { what: String, residual: f64 },
}
