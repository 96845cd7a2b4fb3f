//! Bruhat order on parabolic double cosets of finite Coxeter groups.
//!
//! The group is enumerated once from its Coxeter matrix ([`CoxeterGroup`]).
//! On top of it live double cosets ([`DoubleCoset`]), singular expressions
//! ([`SinglestepExpr`], [`MultistepExpr`]), paths subordinate to them
//! ([`SubordinatePath`]), and an exhaustive checker for the order's
//! structural properties ([`verify`]).

pub mod coset;
pub mod error;
pub mod expr;
pub mod gens;
pub mod group;
pub mod hasse;
pub mod matrix;
pub mod path;
pub mod verify;

pub use coset::{DoubleCoset, Quotient};
pub use error::{Error, Result};
pub use expr::{all_expressions, MultistepExpr, SinglestepExpr};
pub use gens::GenSet;
pub use group::{CoxeterGroup, Element};
pub use matrix::CoxeterMatrix;
pub use path::{PathFrontier, SubordinatePath};
