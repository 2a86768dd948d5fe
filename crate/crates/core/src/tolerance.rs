//! Numeric policy shared by the library, the solver and the test suites.
//!
//! Every threshold that decides a pass/fail, an admissibility call or a
//! convergence stop lives here so that callers never disagree on what
//! "zero" means.

/// Hermiticity tolerance applied when a matrix is constructed.
pub const CONSTRUCTION: f64 = 1e-12;

/// Eigendecomposition reconstruction and orthonormality tolerance.
pub const RECONSTRUCTION: f64 = 1e-10;

/// Residual a stationary point must reach to be reported.
pub const SOLVER: f64 = 1e-8;

/// Eigenvalues down to `-ADMISSIBILITY` are rounded to zero; anything more
/// negative makes a state inadmissible.
pub const ADMISSIBILITY: f64 = 1e-10;

/// Off-diagonal Frobenius norm (relative to the matrix norm, floored at 1)
/// at which the Jacobi sweeps stop.
pub const JACOBI_OFF_DIAGONAL: f64 = 1e-12;

/// Eigenvalues of a reference state below this are treated as outside its support.
pub const SUPPORT: f64 = 1e-12;

/// Weight of a state on the null space of the reference above which the
/// relative entropy is infinite.
pub const SUPPORT_LEAK: f64 = 1e-10;

/// Slack below which an inequality counts as violated (slack < -INEQUALITY).
pub const INEQUALITY: f64 = 1e-9;

/// Two stationary points are the same when their coherence vectors agree to this.
pub const DEDUP_STATE: f64 = 1e-6;

/// Largest supported Hilbert-space dimension.
pub const MAX_DIM: usize = 32;

/// Gap below which two target eigenvalues count as one degenerate level.
pub const SPECTRAL_GAP: f64 = 1e-7;
