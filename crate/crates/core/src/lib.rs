//! Executable combinatorics of dendroidal sets.
//!
//! The crate is organised bottom-up:
//!
//! * [`trees`] — finite rooted trees, automorphisms, grafting, enumeration;
//! * [`omega`] — morphisms of the tree category Ω, faces, degeneracies;
//! * [`sset`] — finite simplicial sets and cube complexes;
//! * [`operads`] — finite coloured operads and their dendroidal nerves;
//! * [`dset`] — finite dendroidal sets, horns, nerves, normality;
//! * [`tensor`] — tensor with simplices and mapping spaces;
//! * [`wstraight`] — the W-construction and straightening on representables;
//! * [`fibcheck`] — bounded lifting-property checkers;
//! * [`cli`] — the command-line front end.
//!
//! Every truncated computation carries an explicit [`Bound`]; no verdict is
//! claimed beyond it.

pub mod cli;
pub mod error;
pub mod fibcheck;
pub mod trees;
pub mod dset;
pub mod omega;
pub mod operads;
pub mod sset;
pub mod tensor;
pub mod util;
pub mod wstraight;

pub use dset::Bound;
pub use error::{Error, Result};
