//! A linear-programming approximation of the extremal problem, independent
//! of the closed form.

pub mod matrix;
pub mod oracle;
pub mod simplex;

pub use matrix::DenseMatrix;
pub use oracle::{
    convergence_study, evaluate_minorant, kernel_matrix, solve_lp, LpConfig, LpSolution, LpStatus,
    RadialProfile, StudyRow,
};
pub use simplex::{BoundedLp, SimplexOutcome, SimplexStatus};
