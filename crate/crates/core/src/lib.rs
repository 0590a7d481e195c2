//! Transmission irregular graphs: transmissions, the TI test, explicit TI
//! families, structural transformations that preserve or create TI, and
//! exhaustive free-tree search.

pub mod enumerate;
pub mod families;
pub mod graph;
pub mod graph6;
pub mod setfam;
pub mod structure;
pub mod transmission;

pub use families::{FamilyError, FamilySpec};
pub use graph::{Graph, GraphError, VertexId};
pub use graph6::{parse_graph6, to_graph6};
pub use transmission::{
    is_transmission_irregular, transmission_profile, wiener_complexity, Transmission,
};
