//! Std front end for `kostka-core`: input syntax, JSON reports, desk-scale
//! verification grids and the `kostka` command.

pub mod cli;
pub mod format;
pub mod grid;
