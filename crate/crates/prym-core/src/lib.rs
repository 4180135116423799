//! Point counts of Prym varieties of unramified double covers of hyperelliptic
//! curves over finite fields, with exact L-polynomial arithmetic and sound
//! (outward-rounded) evaluation of the bound formulas they are tested against.

pub mod bounds;
pub mod curves;
pub mod finite_fields;
pub mod lfunctions;
pub mod polytope;

pub use bounds::{
    build_report, delta_flag, lmd_bounds, thm2_gonality, thm2_gonality_raw, thm2_lower,
    thm2_lower_raw, thm2_lower_raw_with_delta, thm2_upper, thm2_upper_raw, thm5_bounds,
    weil_interval, BoundInterval, BoundsError, BoundsReport, CoverStats, CSV_HEADER,
};
pub use curves::{
    count_cover_points, count_curve_points, cover_count_series, curve_count_series,
    validate_cover, validate_cover_relaxed, CurveError, DoubleCoverSpec, HyperellipticCurve,
    PointCountSeries,
};
pub use finite_fields::{
    enumerate_field, field_arith, find_irreducible, is_irreducible, Embedding, FieldDesc,
    FieldElement, FieldError, FieldOp, Legendre, Poly, DEFAULT_BUDGET,
};
pub use lfunctions::{
    counts_from_l, frobenius_angles, frobenius_roots, group_order, group_order_ext, l_from_counts,
    power_sums, prym_l, prym_order, trace_difference, weil_product_count, LError, LPolynomial,
};
pub use polytope::{
    exact_min, grid_tolerance, lemma3_bound, lemma4_max, oracle_extrema, ExtremalPoint,
    PolytopeError, PolytopeProblem,
};
