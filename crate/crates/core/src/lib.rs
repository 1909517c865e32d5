//! Listing, counting and detection of triangles and fixed-size cliques `K_l`
//! in sparse graphs, with arboricity-sensitive work accounting.

pub mod bench;
pub mod cliques;
pub mod combinatorics;
pub mod degeneracy;
pub mod error;
pub mod generators;
pub mod graph;
pub mod io;
pub mod matrix;
pub mod methods;
pub mod report;
pub mod triangles;

pub use cliques::{brute_force_k_cliques, count_k_cliques, list_k_cliques, Clique, CliqueLister};
pub use degeneracy::{arboricity_upper_bound, degeneracy, edge_work_functional, DegeneracyInfo};
pub use error::{Error, Result};
pub use graph::{Graph, Vertex};
pub use generators::{generate, GeneratorCertificate, Model};
pub use matrix::AdjMatrix;
pub use methods::{
    build_auxiliary_graph, edge_count_detect, extension_count, triangle_method_count, triangle_method_detect,
    AuxiliaryGraph, Limits, MethodCount, MethodPlan,
};
pub use report::{run_count, Algo, CountOptions, CountReport};
pub use triangles::{Triangle, TriangleAlgo, WorkCounter};
