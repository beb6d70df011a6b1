//! Exhaustive worst cases, inequality audits, random-model checks and witness search.

pub mod audit;
pub mod catalog;
pub mod random_models;
pub mod witness;
pub mod worst_case;

pub use audit::{
    audit_catalog, audit_graph, audit_metric, audit_small, AuditOptions, AuditReport, Auditor,
    InequalityResult, Violation, AUDIT_REPORT_SCHEMA,
};
pub use catalog::{canonical_code, connected_graphs, MAX_CATALOG_VERTICES};
pub use random_models::{
    dspl_stats, neighborhood_profile, regular_traffic_bound, rrg_dspl_variance, solve_conjugate,
    solve_giant_fraction, traffic, traffic_all, verify_colors_bound, ColoredBipartite, DsplStats,
    NeighborhoodProfile,
};
pub use witness::{find_witness, Witness, WitnessKind};
pub use worst_case::{all_geodesics, for_each_triangle, worst_case_measures, WorstCase};
