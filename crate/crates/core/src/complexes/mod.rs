//! Flip graphs, arc complexes, and the dual embedding between them.
//!
//! A triangulation is simultaneously a vertex of the flip graph and a
//! top-dimensional simplex of the arc complex ([`pi`]). Two triangulations
//! are joined by a flip exactly when their simplices share a codimension-one
//! face, so the flip graph sits inside the arc complex as the 1-skeleton of
//! its dual. [`check_duality`] verifies this pair by pair, and
//! [`ball_common_arcs`] / [`unflippable_witness`] check that no arc survives
//! every triangulation of a 2-ball.

mod checks;
mod flip_graph;
mod simplicial;

use thiserror::Error;

pub use checks::{
    arc_complex, ball_common_arcs, check_duality, dual_subcomplex, two_ball_check, unflippable_witness, DualityReport,
    DualityViolation, TwoBallOutcome, Witness,
};
pub use flip_graph::{flip_ball, full_flip_graph, FlipEdge, FlipSubgraph};
pub use simplicial::{pi, ArcComplex, Simplex, SimplexOracle, SimplicialComplex};

use crate::models::{Arc, ModelError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ComplexError {
    #[error(transparent)]
    Model(#[from] ModelError),
    #[error("the ball of radius {radius} around {center} is not contained in the subgraph")]
    BallNotContained { center: String, radius: usize },
    #[error("arc {0} is flippable; no witness needed")]
    ArcIsFlippable(Arc),
    #[error("witness construction failed: {0}")]
    WitnessFailed(String),
    #[error("empty flip subgraph")]
    EmptySubgraph,
}
