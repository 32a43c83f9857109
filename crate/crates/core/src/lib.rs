pub mod config;
pub mod density;
pub mod depth;
pub mod error;
pub mod geometry;
pub mod hypergraph;
pub mod lp;
pub mod pipeline;
pub mod rational;
pub mod tverberg;
pub mod separation;
pub mod svg;
