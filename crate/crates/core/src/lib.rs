#![no_std]

//! Exact quadratic-field arithmetic, Ostrowski and Pisot-power numeration
//! systems over extended ω-words, an ω-automata algebra, recognizers for
//! the atomic relations of a feasible numeration system, and a decision
//! procedure for first-order sentences over the numeration structures.

extern crate alloc;

#[cfg(test)]
extern crate std;

pub mod epwords;
pub mod limits;
pub mod quadfield;
