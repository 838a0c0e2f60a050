#![no_std]
extern crate alloc;

pub mod asymptotics;
pub mod canon;
pub mod enumeration;
pub mod error;
pub mod families;
pub mod graph;
pub mod minor;
pub mod pendant;
pub mod sampling;
pub mod scalar;
pub mod structure;
pub mod weight;

pub use error::{Error, Result};
pub use graph::{Graph, RootedGraph};
