//! Germs in finite posets.
//!
//! The crate computes germs and cogerms, the germ closure `G(U)` of a finite
//! poset, germ extensible subsets of finite lattices together with the
//! interval partition of their power sets, the `r`/`σ` fixpoint subset `G_T`,
//! and the dimension formula for simple correspondence functors. The
//! [`harness`] module enumerates small posets and lattices and checks the
//! structural theorems over them.

pub mod closure;
pub mod document;
pub mod embed;
pub mod enumerate;
pub mod germ;
pub mod harness;
pub mod lattice;
pub mod poset;
pub mod repdim;
pub mod set;

pub use closure::{germ_closure, ClosureError, ClosureKind, GermClosure};
pub use document::{DocumentError, DocumentKind, PosetDocument};
pub use embed::{EmbedError, EmbedResult, PartitionCell};
pub use enumerate::{CorpusKind, CorpusSpec, EnumError};
pub use germ::{ElementCase, GermError, GermRecord};
pub use harness::{PredicateReport, SuiteSpec};
pub use lattice::{Lattice, LatticeError, LowerSetLattice};
pub use poset::{Interval, Poset, PosetError};
pub use repdim::{DimError, DimQuery, Orientation};
pub use set::ElemSet;
