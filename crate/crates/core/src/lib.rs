//! Exact search for totally symmetric sets.
//!
//! A totally symmetric set of a group is a finite set of pairwise commuting
//! elements on which every permutation is induced by conjugation. This crate
//! builds finite groups as multiplication tables, enumerates their totally
//! symmetric sets, checks homomorphism obstructions, and provides exact
//! arithmetic for the free group `F_2`, the Baumslag–Solitar groups
//! `BS(1, n)`, and free products of two finite groups.

pub mod group;
pub mod groupspec;
pub mod hom;
pub mod suite;
pub mod tss;
pub mod word;

pub use group::{Elem, FiniteGroup, GroupError, Limits};
