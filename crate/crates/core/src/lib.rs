//! Hilbert cubes `H(a0; a1, ..., ad)` whose subset sums are all perfect squares.

pub mod arith;
pub mod cli;
pub mod cube;
pub mod ecurve;
pub mod families;
pub mod poly;
pub mod record;
pub mod search;
