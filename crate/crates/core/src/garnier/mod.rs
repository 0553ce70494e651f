//! The Hamiltonian system, its eight special solutions and the map back to
//! the coordinates of the linear equation.

pub mod coords;
pub mod expand;
pub mod params;
pub mod poly;
pub mod ring;
pub mod solutions;
pub mod verify;

pub use expand::{expand_solution, expand_with, DepoledSystem, ExpansionOptions, SolutionExpansion, SolveStrategy};
pub use params::{GenericityReport, ParamSampler, Params, Violation};
pub use solutions::{displayed_coefficients, Coord, DisplayedCoeff, SolutionId};
pub use verify::{hamiltonian_gradients, hamiltonian_gradients_fd, hamiltonians_eval, residual, residual_norm, PhasePoint, Residual};
pub use coords::{
    convergence_diagnostic, convergence_fit, garnier_from_phase, lambdas, to_garnier_coords, ConvergenceDiagnostic,
    GarnierCoords, TRUST_RADIUS,
};
