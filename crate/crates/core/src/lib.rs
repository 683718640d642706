//! Recognizable transductions over finite monad/comonad functors.
//!
//! The crate models four functor instances (prefix lists, suffix lists,
//! pointed lists and pointed terms), their Eilenberg-Moore algebras given by
//! finite presentations, transductions built from such algebras, their
//! composition through generalized and classical wreath products, the
//! correspondence with (unambiguous) Mealy machines, and an executable law
//! checker for the functor structure.

pub mod algebra;
pub mod cli;
pub mod composition;
pub mod corpus;
pub mod elem;
pub mod error;
pub mod functors;
pub mod json;
pub mod lawcheck;
pub mod mealy;
pub mod moconad;
pub mod spec;
pub mod transduction;

pub use elem::{Elem, ElemSet, FnTable};
pub use error::{Error, Result};
pub use moconad::{FunctorKind, LawArg, LawId, MVal, Moconad, MoconadOps, Node, PointedTerm, RankedAlphabet, Sort};
