//! Exact arc combinatorics on the marked annulus A(p,q) and the coherent
//! sheaves on the weighted projective line X(p,q) they model.

pub mod braid;
pub mod curve;
pub mod error;
pub mod exceptional;
pub mod homext;
pub mod intersect;
pub mod sheaf;
pub mod surface;
pub mod tilting;

pub use braid::{BraidWord, SearchBudget, Side};
pub use curve::{Curve, Move, Pt};
pub use error::{Error, Result};
pub use exceptional::{ExternalPoints, PositionClass};
pub use homext::MapClass;
pub use intersect::{Config, CrossingWitness, EndpointRelation};
pub use sheaf::{ArSequence, Class, SheafClass};
pub use surface::{LElt, Surface};
pub use tilting::{Anchor, Census, LatticePath};
