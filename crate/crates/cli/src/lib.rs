//! Support library for the `qutrit-sle` binary: problem file parsing and
//! grid CSV/SVG emission. Kept as a library so the parsers and writers are
//! testable without spawning the binary.

pub mod grid_io;
pub mod problem;
