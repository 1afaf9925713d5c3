//! Brackets compatible with a constant bracket `η^{ij} d/dx`: the
//! compatibility relations, the canonical pair built from potentials, the
//! quadratic integrability system and the inverse reconstruction.

mod canonical;
mod data;
mod liouville;
mod pencil;
mod reconstruct;
mod relations;

pub use canonical::{canonical_bracket, check_integrability};
pub use data::{CanonicalData, ConstantBracket};
pub use liouville::{check_special_liouville, LiouvilleForm, SpecialLiouville};
pub use pencil::{build_pencil, PencilWeights};
pub use reconstruct::{reconstruct_potentials, PotentialChain};
pub use relations::{check_compatibility, compatibility_relations};
