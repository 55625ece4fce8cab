//! Trivalent graphs, chord diagrams, the sl₂ weight system, and the
//! Borromean construction of links from graphs.

pub mod beta;
pub mod chord;
pub mod graph;
pub mod weight;

pub use beta::{beta, beta_tilde, Chirality};
pub use chord::{
    epsilon, epsilon_tilde, eta, min_grade_bound, project_p, ChordDiagram, DiagramCombination,
};
pub use graph::{
    as_relation, generate_graphs, generate_graphs_up_to, ihx_relation, GraphCombination,
    GraphError, TrivalentGraph,
};
pub use weight::{lambda_weight, sl2_graph_weight, sl2_weight, MetrizedRep};
