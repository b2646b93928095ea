//! Symbolic Lorentzian geometry for lightlike totally geodesic foliations.
//!
//! The crate is `no_std` (it needs `alloc`). Everything that touches files,
//! processes or the terminal lives in the companion `kundt-cli` crate.

#![no_std]
// Index loops read closest to the tensor notation; `!(a < b)` also rejects NaN.
#![allow(clippy::needless_range_loop, clippy::neg_cmp_op_on_partial_ord)]

extern crate alloc;

pub mod expr;
pub mod geometry;
pub mod congruence;
pub mod hierarchy;
pub mod liealg;
pub mod catalog;
