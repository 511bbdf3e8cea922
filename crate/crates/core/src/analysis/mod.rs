//! State graphs, exact stationary distributions, and the closed-form speed
//! and LCS-constant formulas.

mod exact;
mod formulas;
mod graph;
mod numbers;

pub use exact::{
    blind_stationary_from_fibers, exact_stationary, fibers_are_stationary, is_stationary, rational,
    verify_uniform_stationary, ExactRational, RationalDist,
};
pub use formulas::{
    bc_speed, bc_speeds, cumulative_speed, expected_hops_by_enumeration, gamma_bc,
    gamma_from_speeds, gamma_zigzag, speed_sum_identity, speeds, threshold_bc, threshold_m,
    total_hops, Threshold,
};
pub use graph::{
    blind_ring_graph, blind_zigzag_graph, build_graph, check_regular, hatted_graph,
    RegularityReport, TransitionGraph,
};
pub use numbers::{format_decimal, format_rational, parse_rational, to_f64, MAX_DECIMAL_DIGITS};
