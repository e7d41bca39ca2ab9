//! Arc complexes and flip graphs of small marked surfaces, with exhaustive
//! checks of how maps between them behave.
//!
//! ```
//! use fliplab::complexes::full_flip_graph;
//! use fliplab::Model;
//!
//! let hexagon = Model::polygon(6).unwrap();
//! assert_eq!(full_flip_graph(&hexagon).unwrap().vertex_count(), 14);
//! ```

pub mod complexes;
pub mod models;
pub mod rigidity;
pub mod surface;

pub use complexes::{FlipSubgraph, SimplicialComplex};
pub use models::{Arc, Face, Model, ModelError, ModelKind, PunctureSide, Side, Triangulation};
pub use rigidity::{RigidityError, RigidityReport, VertexMap};
pub use surface::{SurfaceError, SurfaceSig};

#[cfg(doctest)]
#[doc = include_str!("../../../README.md")]
mod readme {}

#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../book/src/introduction.md")]
    mod introduction {}
    #[doc = include_str!("../../../book/src/surfaces.md")]
    mod surfaces {}
    #[doc = include_str!("../../../book/src/models.md")]
    mod models {}
    #[doc = include_str!("../../../book/src/flip-graphs.md")]
    mod flip_graphs {}
    #[doc = include_str!("../../../book/src/two-ball.md")]
    mod two_ball {}
    #[doc = include_str!("../../../book/src/rigidity.md")]
    mod rigidity {}
    #[doc = include_str!("../../../book/src/cli.md")]
    mod cli {}
}
