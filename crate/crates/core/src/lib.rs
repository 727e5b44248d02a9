//! Islands and pre-islands of height functions over finite set systems.
//!
//! An island domain is a pair `(C, K)` of families over a finite ground set
//! `U` with `U ∈ C ⊆ K`. For a height function `h`, a candidate `S ∈ C` is a
//! pre-island when each cover of `S` in `(K, ⊆)` dips below `min h(S)`, and an
//! island when every point such a cover adds does.

pub mod admissibility;
pub mod domain;
pub mod engine;
pub mod error;
pub mod eta;
pub mod fixtures;
pub mod height;
pub mod library;
pub mod oracle;
pub mod sets;
pub mod structure;

pub use admissibility::{canonical_height, is_admissible, is_strongly_admissible, standard_height, LayerPartition};
pub use domain::{validate_domain, IslandDomain, KBackend, Surroundings};
pub use engine::{island_system, is_island, is_pre_island, pre_island_system, refine_to_injective, IslandKind};
pub use error::{IslandError, Result};
pub use eta::EtaDomain;
pub use height::{normalize_heights, HeightFunction};
pub use sets::{FamilyKey, GroundSet, SetFamily, Subset};
