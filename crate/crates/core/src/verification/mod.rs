//! Independent numerical checks: PDE residual, resonant limits,
//! asymptotic arm profiles and ridge tracing.

pub mod asymptotic;
pub mod limits;
pub mod residual;
pub mod ridge;

pub use asymptotic::{asymptotic_match, negative_control, MatchOptions, MatchReport};
pub use limits::{limit_convergence, limit_ladder, phase_box_points, LimitLadder, ResonantFamily};
pub use residual::{kp_residual, random_points, residual_at, ResidualReport};
pub use ridge::{arm_ridge, ridge_trace, stem_ridge_value, ArmRidge, RidgeTrace, RIDGE_TOL};
