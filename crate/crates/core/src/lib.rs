//! Finite groups with operations and the two-level structures built on them.
//!
//! Every object is a finite carrier with Cayley tables, and every law is
//! decided by exhaustive evaluation. The crate covers:
//!
//! * structures, morphisms, subobjects and base-category limits
//! * derived actions and semidirect products
//! * crossed modules, cat1-objects and the functors between them
//! * limits in the slice category of crossed modules over a fixed base
//! * pullback crossed modules and pullback cat1-objects along a morphism
//!
//! The [`zoo`] module builds the small instances used in tests, and
//! [`format`] reads and writes the line-oriented text format used by the
//! `mci` command.

pub mod action;
pub mod cat1;
pub mod cli;
pub mod error;
pub mod format;
pub mod hom;
pub mod limits;
pub mod morphism;
pub mod profile;
pub mod pullback;
pub mod report;
pub mod structure;
pub mod subobject;
pub mod xmod;
pub mod zoo;

pub use action::{check_derived_action, semidirect_product, DerivedAction, Semidirect};
pub use cat1::{cat1_to_xmod, xmod_to_cat1, Cat1Morphism, Cat1Object};
pub use error::{Error, Result};
pub use hom::{enumerate_morphisms, find_isomorphism, SearchOptions};
pub use limits::{direct_product, fiber_product, ProductCone};
pub use morphism::Morphism;
pub use profile::{UnaryClass, VarietyProfile};
pub use report::{Report, Violation};
pub use structure::Structure;
pub use subobject::{equalizer, kernel, Subobject};
pub use xmod::{CrossedModule, XModMorphism};
