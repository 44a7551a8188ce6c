//! File formats, parallel drivers and the command line for the Seabed
//! tiling engine.

pub mod cli;
pub mod files;
pub mod parallel;
