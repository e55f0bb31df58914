//! Exact vector partition functions and volumes for the classical positive root
//! systems, computed as sums of iterated residues over maximal proper nested sets.

pub mod counting;
mod error;
pub mod exact_core;
pub mod exec;
pub mod mpns;
pub mod oracle;
pub mod residue_engine;
pub mod root_systems;
pub mod walls;

pub use error::Error;

pub type Result<T> = std::result::Result<T, Error>;
