//! Simulation driver, serialization formats, and everything else the CLI
//! needs that is not algorithmic.

pub mod alist;
pub mod results;
pub mod sim;
