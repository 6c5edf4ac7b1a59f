//! Exact-arithmetic differential cohomology on finite simplicial sets.
//!
//! The crate is organized bottom-up:
//! - [`linalg`]: integral/rational solvers and Smith normal form,
//! - [`simplicial`]: finite simplicial sets, maps, products, pairs,
//! - [`coeff`]: graded coefficient rings and their rationalization,
//! - [`cochain`]: normalized cochains, cup products, interval integration,
//! - [`forms`]: piecewise polynomial differential forms,
//! - [`theory`]: differential cohomology classes and their operations,
//! - [`verify`]: job runner producing machine-checkable certificates.

pub mod linalg;
pub mod coeff;
pub mod cochain;
pub mod simplicial;
pub mod forms;
pub mod theory;
pub mod verify;
