//! Exact computations with Hom-Lie antialgebras: axiom checking,
//! representations and actions, semidirect products, crossed modules,
//! Cat¹ structures and low-degree cohomology of crossed module extensions.
//!
//! All arithmetic is over ℚ ([`exactq`]); every checker evaluates its
//! identities on basis tuples and returns the failing instances.

#![allow(clippy::needless_range_loop)]

pub mod action;
pub mod cat1;
pub mod cli;
pub mod cohomology;
pub mod corpus;
pub mod error;
pub mod exactq;
pub mod hla;
pub mod io;
pub mod report;
pub mod representation;
pub mod xmod;
