//! Exact computation, sampling and verification of z-measures on families of
//! Young diagrams attached to wreath products `S_n(G)`, together with the
//! Ewens measures on colored permutations they come from.

pub mod error;
pub mod finite_characters;
pub mod par;
pub mod partitions;
pub mod perm;
pub mod scalar;
pub mod spectral_group;
pub mod symfunc;
pub mod thoma;
pub mod wreath;
pub mod zmeasure;

pub use error::{Error, Result};
pub use partitions::{BoxCoord, CycleStructure, YoungDiagram};
pub use scalar::Cx;
pub use spectral_group::{CentralFunction, GroupModel};
pub use zmeasure::DiagramFamily;
