#![allow(clippy::needless_range_loop)] // index loops read naturally in the matrix code

//! Exact-arithmetic models of symplectic 6-manifold surgery.
//!
//! The crate carries symbolic invariant records for manifolds (Chern
//! numbers, Betti numbers, fundamental-group presentations, declared
//! H2 bases), the surgery operations that combine them (fiber sum,
//! coisotropic Luttinger surgery, products), and the supporting exact
//! algebra: finitely presented groups, integer intersection lattices,
//! and the symplectic H1 representation of mapping class groups.

pub mod blocks;
pub mod fpgroup;
pub mod lattice;
pub mod mcg;
pub mod script;
pub mod surgery;
