//! Numeric tolerances shared by the simulator, encoder and tests.

/// Allowed drift of the state norm after any unitary.
pub const NORM: f64 = 1e-10;

/// Amplitudes below this magnitude are treated as zero when checking
/// register resets and encoded-memory support.
pub const AMPLITUDE: f64 = 1e-10;

/// Post-selection probabilities below this are rejected as zero-norm.
pub const POST_SELECT: f64 = 1e-12;
