//! Structure analysis for symmetry groups of CNF formulas.

pub mod cnf;
pub mod decomposition;
pub mod graph;
pub mod oracle;
pub mod orbit_equivalence;
pub mod perm;
pub mod pipeline;
pub mod symmetric_action;

pub use cnf::{model_graph, parse_dimacs, parse_dimacs_str, CnfFormula, ModelGraph};
pub use decomposition::{check_literal_partition, finest_decomposition, orbit_graph, Decomposition, PartitionVerdict};
pub use graph::{color_refinement, ColoredGraph, Coloring, GraphBuilder};
pub use orbit_equivalence::{equivalent_orbits, EquivalenceResult, RowMatrix};
pub use perm::{orbits, GeneratingSet, OrbitPartition, Permutation, Point};
pub use pipeline::{run_pipeline, AnalysisConfig, AnalysisReport, PipelineError, Section, Stages};
pub use symmetric_action::{symmetric_action_orbits, ActionReport, Verdict};
