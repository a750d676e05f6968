//! Library side of the `polyrbf` command-line tool: verification suites,
//! complex-literal parsing, and the grid-table writer. The binary in
//! `main.rs` is a thin argument layer over these.

pub mod cplx;
pub mod suites;
pub mod table;
