//! Exact computation with signed permutations under the left weak order,
//! along with the Hopf algebra they span and its type-B quasisymmetric image.

pub mod bqsym;
pub mod embeddings;
pub mod error;
pub mod hopf;
pub mod perm;
pub mod verify;
pub mod weak_order;

pub use bqsym::{BQFormalSum, PseudoComposition};
pub use error::{Error, Result};
pub use hopf::{Basis, FormalSum, TensorSum};
pub use perm::{
    shuffles, standardize, standardize_plain, DescentSet, OrderProfile, Reflection, Shuffle,
    SignedPermutation,
};
pub use weak_order::{CoverGraph, WeakOrder};
pub use verify::{SuiteContext, VerifyReport};
