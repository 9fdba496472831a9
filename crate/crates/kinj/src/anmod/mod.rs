//! The self-injective cyclic Nakayama algebras with square-zero radical and
//! their homotopy category of injectives.
//!
//! [`algebra`] builds the algebra model and certifies its Hom spaces by
//! brute-force linear algebra. [`complex`] holds windowed complexes of
//! indecomposable injectives with symbolic periodic tails. [`maps`] gives
//! graded maps between complexes in block-coefficient form, [`homspace`]
//! computes Hom in the homotopy category on growing windows, and [`strip`]
//! removes contractible two-term summands with an explicit homotopy
//! equivalence as a witness.

pub mod algebra;
pub mod complex;
pub mod homspace;
pub mod maps;
pub mod strip;

pub use algebra::{AnAlgebra, AnError};
pub use complex::{periodic_complex, stalk, zero_complex, ComplexError, InjComplex, Tail};
pub use homspace::{
    chain_map_basis, hom_k_dim, null_homotopic_basis, window_hom_dim, HomKOutcome,
    DEFAULT_MAX_WINDOW,
};
pub use maps::{BlockMap, GradedMap};
pub use strip::{strip_contractibles, StripResult};
