//! Reflex-edge guard placement in 2-reflex orthogonal polyhedra.
//!
//! The crate decomposes an orthogonal polyhedron whose reflex edges lie in
//! at most two axis directions into maximal bricks, classifies the contact
//! rectangles between bricks, places guards on reflex edges within the
//! bounds `floor((r - g) / 2) - b + 1` and `floor((m - 4) / 8) + g`, and
//! certifies the result with an exact sampled visibility check.
//!
//! The narrative guide lives in `book/`; its code snippets are compiled as
//! doctests through [`book`].

pub mod classify;
pub mod decomp;
pub mod gen;
pub mod geom;
pub mod guard;
pub mod model;
pub mod verify;

pub mod cli;

pub mod book;

#[cfg(test)]
pub(crate) mod testutil;
