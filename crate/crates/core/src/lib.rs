//! Exact lattice computations for unramified and tamely ramified Satake
//! parameters of quasi-split groups.

pub mod components;
pub mod kottwitz;
pub mod lattice;
pub mod root_datum;
