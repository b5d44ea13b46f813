//! Exact computational homotopy theory of finite groupoids.
//!
//! The crate exposes, over exact scalars only:
//!
//! - finite groupoids, functors and natural isomorphisms, with structural
//!   queries (components, skeleta, vertex groups) — [`groupoid`], [`equivalence`];
//! - the closed model structure on groupoids (fibrations, cofibrations, weak
//!   equivalences), factorisations, lifts, coverings and their equivalence
//!   with actions, homotopy pullbacks and homotopy-cartesian detection,
//!   loop/commuting-tuple/functor groupoids — [`homotopy`], [`factorize`],
//!   [`covering`], [`loops`];
//! - Frobenius algebras over exact fields, derived comultiplications, trace
//!   forms — [`frobenius`];
//! - rational class algebras of groupoids with pushforward/transfer maps,
//!   the Mackey identity, character models, and groupoid Euler
//!   characteristics — [`character`];
//! - truncated power series, formal group laws, residues, and the residue
//!   description of the Frobenius form on truncated polynomial rings —
//!   [`series`], [`fgl`].

pub mod caps;
pub mod equivalence;
pub mod factorize;
pub mod groupoid;
pub mod homotopy;
pub mod groups;
pub mod matrix;
pub mod report;
pub mod scalar;

pub use caps::{SizeCaps, SizeGuard};
pub use report::Report;
