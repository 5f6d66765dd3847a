//! Graph-minor search and verification toolkit.
//!
//! The [`Graph`] type is a bitset adjacency matrix; everything else
//! (canonical forms, minor search, enumeration, colouring, extremal
//! constructions and the structural lemma checks) is built on top of it.

pub mod bits;
pub mod canon;
pub mod clique;
pub mod coloring;
pub mod connectivity;
pub mod enumerate;
pub mod error;
pub mod extremal;
pub mod graph;
pub mod graph6;
pub mod lemmas;
pub mod minor;
pub mod report;
pub mod subgraph;

pub use canon::{are_isomorphic, canonical_form, canonical_form_colored, canonical_graph, canonical_labeling, Labeling};
pub use coloring::{
    exact_chromatic, greedy_degeneracy_coloring, kempe_paths, seven_color_or_minor, Chromatic, Coloring, Dichotomy,
    KempeInstance, KempeOutcome,
};
pub use clique::{clique_number, find_k_cliques, independence_number, max_clique};
pub use connectivity::{is_k_connected, vertex_connectivity};
pub use enumerate::{all_graphs, count_graphs, GraphFilter};
pub use error::{Graph6ErrorKind, GraphError, SearchError};
pub use graph::{DegreeStats, Graph, MAX_VERTICES, WORD_LIMIT};
pub use graph6::{from_graph6, to_graph6};
pub use subgraph::{subgraph_embed, subgraph_embed_pinned};
pub use minor::{
    find_minor, find_minor_with, find_rooted_minor, find_rooted_minor_with, verify_embedding, MinorEmbedding,
    MinorOutcome, PatternSpec, SearchOptions, SearchStats,
};
pub use extremal::{
    build_cockade, contraction_gain, degeneracy, random_extremal_test, verify_cockade_tightness, verify_jorgensen,
    CockadeRecipe, Glue, JorgensenSpec, SeparatorInstance,
};
pub use report::{Counterexample, VerificationReport};
pub use lemmas::{
    generate_configurations, verify_configuration_minor, verify_corollary_k84, verify_family_counts, verify_h8_lemma,
    verify_k64_lemma, verify_proof_gadgets, CliqueConfiguration, GoodPathSystem,
};
