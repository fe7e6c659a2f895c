use std::fmt;

/// Errors shared across the laboratory modules.
///
/// Numerical experiments report failed checks as data, not errors; these
/// variants cover genuine precondition violations and non-converged
/// discretisations.
#[derive(Debug, Clone, PartialEq)]
pub enum LabError {
    /// Weight exponent makes the measure non-integrable near the boundary.
    NonIntegrableWeight { gamma: f64 },
    /// Weight exponent hits the excluded set `{j*p - 1 : j >= 1}`.
    ExcludedWeightExponent { gamma: f64, p: f64 },
    /// Parameter outside its admissible range.
    InvalidParameter(String),
    /// Doubling the truncation radius moved the integral by more than the
    /// certified tolerance.
    TailNotConverged { delta: f64, tol: f64 },
    /// A derivative of higher order than the field carries was requested.
    InsufficientDerivatives { requested: usize, available: usize },
    /// Product-rule expansion cannot supply the requested derivative order.
    DerivativeOrderLost { requested: usize, available: usize },
    /// Hardy inequality hypotheses violated (gamma = p-1, or nonzero trace
    /// in the sub-critical range).
    HypothesisViolated(String),
    /// Richardson extrapolation of the boundary limit did not settle.
    NoTrace { residual: f64, tol: f64 },
    /// Complex time outside the asserted sector.
    SectorViolation { arg: f64, sigma: f64 },
    /// Panel refinement failed to converge (expected for blow-up inputs).
    QuadratureDiverged(String),
    /// Resolvent parameter on the spectral cut `(-inf, 0]`.
    BranchCut { lambda: num_complex::Complex64 },
    /// Spectral energy above the frequency truncation exceeds the tolerance.
    AliasWarning { tail_fraction: f64, tol: f64 },
    /// Contour value still moving under node doubling or radius changes.
    ContourNotConverged { delta: f64, tol: f64 },
    /// Symbol is unbounded on the integration contour.
    SymbolUnboundedOnContour { max_abs: f64, cap: f64 },
    /// Spectral multiplier exceeds the configured cap on the grid.
    UnboundedSymbol { max_abs: f64, cap: f64 },
    /// Time stepping did not converge under halving.
    TimeStepNotConverged { delta: f64, tol: f64 },
    /// Log-log fit rejected (r^2 below threshold).
    FitRejected { r_squared: f64 },
}

impl fmt::Display for LabError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LabError::NonIntegrableWeight { gamma } => {
                write!(f, "weight x^{gamma} is not locally integrable (need gamma > -1)")
            }
            LabError::ExcludedWeightExponent { gamma, p } => {
                write!(f, "gamma = {gamma} hits the excluded set {{j*{p} - 1}}")
            }
            LabError::InvalidParameter(msg) => write!(f, "invalid parameter: {msg}"),
            LabError::TailNotConverged { delta, tol } => {
                write!(f, "tail not converged: doubling r_max moved the value by {delta:.3e} (tol {tol:.3e})")
            }
            LabError::InsufficientDerivatives { requested, available } => {
                write!(f, "derivative order {requested} requested, field carries {available}")
            }
            LabError::DerivativeOrderLost { requested, available } => {
                write!(f, "product rule supplies only {available} orders, {requested} requested")
            }
            LabError::HypothesisViolated(msg) => write!(f, "hypothesis violated: {msg}"),
            LabError::NoTrace { residual, tol } => {
                write!(f, "trace extrapolation residual {residual:.3e} exceeds {tol:.3e}")
            }
            LabError::SectorViolation { arg, sigma } => {
                write!(f, "|arg z| = {arg:.4} outside sector half-angle {sigma:.4}")
            }
            LabError::QuadratureDiverged(msg) => write!(f, "quadrature diverged: {msg}"),
            LabError::BranchCut { lambda } => {
                write!(f, "lambda = {lambda} lies on the branch cut (-inf, 0]")
            }
            LabError::AliasWarning { tail_fraction, tol } => {
                write!(f, "spectral tail fraction {tail_fraction:.3e} exceeds {tol:.3e}")
            }
            LabError::ContourNotConverged { delta, tol } => {
                write!(f, "contour value moved by {delta:.3e} under refinement (tol {tol:.3e})")
            }
            LabError::SymbolUnboundedOnContour { max_abs, cap } => {
                write!(f, "symbol reaches {max_abs:.3e} on the contour (cap {cap:.3e})")
            }
            LabError::UnboundedSymbol { max_abs, cap } => {
                write!(f, "multiplier reaches {max_abs:.3e} on the grid (cap {cap:.3e})")
            }
            LabError::TimeStepNotConverged { delta, tol } => {
                write!(f, "time refinement moved the solution by {delta:.3e} (tol {tol:.3e})")
            }
            LabError::FitRejected { r_squared } => {
                write!(f, "log-log fit rejected: r^2 = {r_squared:.4} < 0.98")
            }
        }
    }
}

impl std::error::Error for LabError {}

pub type Result<T> = std::result::Result<T, LabError>;
