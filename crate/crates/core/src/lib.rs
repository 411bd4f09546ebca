//! Symmetrized max-plus algebra `𝕊` and the geometry of `𝕊ⁿ`.

pub mod algebra;
pub mod cli;
pub mod error;
pub mod json;
pub mod metrics;
pub mod oracle;
pub mod projection;
pub mod segments;
pub mod sets;
pub mod svg;

pub use algebra::{eval_expr, ExtReal, Mode, Pair, SElem, Sign};
pub use error::{Error, Result};
pub use metrics::{d1, d2, phi, phi_n, rho, Base, Combine, ComplexPoint, MetricId, SVector};
pub use segments::{
    component_count, d_segment_contains, geometric_segment, psi, psi_inverse, semimodule_segment,
    traditional_segment, Arc, BrokenLine, Piece, PsiChart, SegmentSet,
};
pub use projection::{
    distance_to_set, is_chebyshev, project_box, project_box_max, project_ray, project_segment_set,
    project_union, ProjectionResult,
};
pub use sets::{
    is_box_semimodule_convex, is_connected, is_geometrically_convex, is_semimodule_convex,
    is_traditionally_convex, BoxSet, Interval, RaySet,
};
