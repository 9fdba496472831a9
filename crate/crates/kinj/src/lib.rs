//! Computations in the homotopy category of complexes of injective modules
//! over the radical-square-zero cyclic Nakayama algebras.
//!
//! The crate is organized bottom-up:
//!
//! * [`exactlin`]: exact dense linear algebra over the rationals or a prime field.
//! * [`quiver`]: bound quivers (cycles, tails, separated and repetitive constructions).
//! * [`rep`]: quiver representations, radicals, separation functors, and
//!   interval decomposition of path-window representations.
//! * [`anmod`]: the algebras themselves, windowed complexes of injectives,
//!   chain maps, homotopies, and stable hom dimensions.
//! * [`classify`]: the classification pipeline from a complex to a multiset of
//!   canonical labels, and back via realization.
//! * [`ziegler`]: hom tables, endofiniteness certificates, and open-set cover
//!   analysis over the label space.
//! * [`gen`]: seeded random generators used by `selftest` and the test suite.
//! * [`cli`]: the `kinj` command line interface.

pub mod anmod;
pub mod classify;
pub mod cli;
pub mod exactlin;
pub mod gen;
pub mod quiver;
pub mod rep;
pub mod ziegler;
