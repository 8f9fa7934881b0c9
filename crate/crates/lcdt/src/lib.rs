//! Linear canonical Dunkl transform (LCDT) on the real line.
//!
//! The LCDT is the two-parameter family of integral transforms
//!
//! ```text
//! D_k^M(f)(λ) = (ib)^{-(k+1)} ∫ f(x) e^{(i/2)((d/b)λ² + (a/b)x²)} E_k(-iλ/b, x) dμ_k(x),   b ≠ 0,
//! ```
//!
//! indexed by a matrix `M = (a,b;c,d)` in SL(2,ℝ) and a Dunkl multiplicity
//! parameter `k ≥ -1/2`, where `E_k` is the Dunkl kernel built from normalized
//! spherical Bessel functions and `dμ_k = |x|^{2k+1} dx / (2^{k+1}Γ(k+1))`.
//! At `k = -1/2` the kernel collapses to `e^{-iλx}` and the family reduces to
//! the classical linear canonical transform; at `M = (0,-1;1,0)` the chirps
//! vanish and the Dunkl transform remains.
//!
//! The crate has three layers:
//!
//! * numerics — [`special`] (gamma, normalized Bessel `j_k`, Dunkl kernel) and
//!   [`measure`] (weighted adaptive Gauss–Legendre quadrature, `L^p_k` norms,
//!   `γ_k` measures, concentration ratios);
//! * the transform engine — [`transform`] (forward/inverse LCDT, the
//!   Dunkl-factorization path, Gaussian and polynomial×Gaussian closed forms);
//! * verification — [`corpus`] (deterministic signal families) and [`harness`]
//!   (both sides of every uncertainty inequality with its explicit constant,
//!   plus the extremal Gaussian checks, aggregated into a machine-readable
//!   report).

pub mod corpus;
mod dd;
pub mod harness;
pub mod interp;
pub mod measure;
pub mod quad;
pub mod special;
pub mod transform;

pub use num_complex::Complex64;

/// Errors shared across the crate.
#[derive(Debug, Clone, PartialEq)]
pub enum Error {
    /// Argument outside the mathematical domain of an operation.
    Domain(String),
    /// A quantity would exceed the representable floating-point range.
    Overflow(String),
    /// Adaptive quadrature hit its refinement ceiling without meeting the
    /// requested relative tolerance.
    NonConvergence { panels: usize, rel_change: f64 },
    /// An operation that divides by a signal norm received the zero signal.
    ZeroSignal,
    /// The transform matrix has `b = 0` where an integral kernel is required
    /// (or `a = 0` on the `b = 0` branch).
    DegenerateMatrix,
    /// Polynomial fit residual exceeded its tolerance.
    FitFailure { residual: f64, tolerance: f64 },
    /// An exponent or theorem parameter is outside the range the statement
    /// requires.
    ParameterOutOfRange(String),
    /// A measured concentration ratio reached 1, so the theorem bound is vacuous.
    ConcentrationSaturated { epsilon: f64 },
}

impl std::fmt::Display for Error {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Error::Domain(msg) => write!(f, "domain error: {msg}"),
            Error::Overflow(msg) => write!(f, "overflow: {msg}"),
            Error::NonConvergence { panels, rel_change } => write!(
                f,
                "quadrature did not converge (panels = {panels}, last relative change = {rel_change:.3e})"
            ),
            Error::ZeroSignal => write!(f, "signal has zero norm"),
            Error::DegenerateMatrix => write!(f, "degenerate canonical matrix"),
            Error::FitFailure { residual, tolerance } => write!(
                f,
                "polynomial fit failed: residual {residual:.3e} exceeds tolerance {tolerance:.3e}"
            ),
            Error::ParameterOutOfRange(msg) => write!(f, "parameter out of range: {msg}"),
            Error::ConcentrationSaturated { epsilon } => {
                write!(f, "concentration ratio {epsilon} is saturated (≥ 1)")
            }
        }
    }
}

impl std::error::Error for Error {}

/// Crate-wide result alias.
pub type Result<T> = std::result::Result<T, Error>;
