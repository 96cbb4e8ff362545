//! Exact-arithmetic combinatorics of circle representations: Delannoy
//! loops and their diagram category, branching multisets for the
//! line-in-circle subgroup pair, decompositions of Schwartz spaces into
//! indecomposable projectives, the special block as graded modules over
//! k[x,y]/(x²,y²), Heller shifts, and the semisimplified ring.
//!
//! Everything is multiplicity bookkeeping over exact integers and
//! rationals; no floating point anywhere.

pub mod branching;
pub mod gdecomp;
pub mod lattice;
pub mod loopcat;
pub mod ratmat;
pub mod series;
pub mod specialblock;
pub mod verify;
pub mod weights;

use thiserror::Error as ThisError;

#[derive(Debug, ThisError)]
pub enum Error {
    #[error("operation {0} rejects the empty weight")]
    EmptyWeight(&'static str),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("domain error: {0}")]
    Domain(String),
    #[error("index mismatch: {0}")]
    IndexMismatch(String),
    #[error("no consistent solution: {0}")]
    Solve(String),
}
