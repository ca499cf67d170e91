//! Invariants of arborescent links presented by weighted plane trees.
//!
//! The pipeline compiles a [`PlaneTree`] into a link [`Diagram`] through a
//! rational-tangle algebra, computes the flattening number `f(T)`, certifies
//! the upper bound `f(T) + 2` on the bridge number with a Wirtinger seed set,
//! and certifies the matching lower bound on the meridional rank with a
//! Coxeter quotient verified in the geometric representation.

pub mod components;
pub mod coxeter;
pub mod diagram;
pub mod flatten;
pub mod render;
pub mod fraction;
pub mod tangle;
pub mod tree;
pub mod unionfind;
pub mod wirtinger;

pub use components::{m_bruteforce, MaxComponentsResult};
pub use coxeter::{
    build_coxeter_graph, geometric_representation, meridional_rank_bounds, verify_labeling,
    verify_two_bridge, CoxeterGraph, GeneratorSeeding, RankCertificate,
};
pub use diagram::{count_components, ArcCrossing, ArcId, Diagram, DiagramError};
pub use flatten::{
    flattening_number, flattening_number_bruteforce, is_flattening_set, max_component_formula,
    FlatteningResult,
};
pub use fraction::{cf_value, Fraction};
pub use render::render_svg;
pub use tangle::{compile, compile_presented, compile_with_layout, rational_tangle, Presentation, Tangle};
pub use tree::{parse_tree, PlaneTree, RandomTreeConfig, TreeClass, VertexId};
pub use wirtinger::{
    bridge_upper_bound, closure, seed_search_budget, wirtinger_exact, BridgeBoundCertificate,
    Coloring, ExactOutcome, SeedMethod,
};
