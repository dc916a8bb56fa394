//! Exact structure-constant models of ternary Nambu-Poisson algebras.
//!
//! A Nambu-Poisson algebra here is a commutative associative product and a
//! fully skew ternary bracket on one finite-dimensional space, tied
//! together by the Leibniz rule, with the bracket satisfying the
//! fundamental identity. All scalars are exact (arbitrary-precision
//! rationals or GF(p)), so axiom checks, cohomology dimensions and
//! operator identities are decided, never approximated.
//!
//! The modules follow the data flow: [`scalar`] and [`matrix`] provide the
//! arithmetic, [`tensor`] the symmetry-classed structure constants,
//! [`algebra`] the structures and their checkers, [`rep`] representations
//! and semidirect products, [`cohomology`] 2-cocycles and H^2 dimensions,
//! [`deform`] t-polynomial deformations, [`operator`] Nijenhuis / twisted
//! O- / Reynolds operators, [`ns`] the NS-structures they induce, and
//! [`search`] brute-force witness discovery over small prime fields.

pub mod algebra;
pub mod cohomology;
pub mod deform;
pub mod error;
pub mod fixtures;
pub mod matrix;
pub mod ns;
pub mod operator;
pub mod rep;
pub mod rng;
pub mod scalar;
pub mod scan;
pub mod search;
pub mod tensor;
pub mod tpoly;
pub mod vector;
