//! Exact computations with 3-transposition groups and their Matsuo algebras.
//!
//! The crate is `no_std` (it needs `alloc`). All arithmetic is exact: scalars
//! are big rationals and linear algebra is fraction-free elimination over the
//! integers.

#![no_std]

extern crate alloc;

pub mod albert;
pub mod constructions;
pub mod exact;
pub mod fischer;
pub mod group;
pub mod jordan;
pub mod matsuo;
