//! First-Fit chain partitioning of posets, together with an executable form
//! of the machinery that bounds it on posets excluding two long incomparable
//! chains: interval assignments, groups, and evolving t-societies.

pub mod bits;
pub mod error;
pub mod first_fit;
pub mod generate;
pub mod intervals;
pub mod poset;
pub mod society;

pub use error::{Error, Result};
pub use first_fit::{first_fit, min_chain_partition, verify_ff_partition, OrderedChainPartition};
pub use generate::{OrderStrategy, PresentationOrder, RngSeed};
pub use poset::{Poset, RsWitness};
