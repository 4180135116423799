//! Library half of the `prym` binary: config layering, the per-cover
//! pipeline, family sweeps, rendering, and the golden self-check. The binary
//! is a thin argument parser over these.

pub mod config;
pub mod pipeline;
pub mod render;
pub mod selftest;
pub mod sweep;

pub use config::FileConfig;
pub use pipeline::{
    analyze_cover, analyze_curve, prym_extension_orders, AuxFactor, CoverAnalysis, CurveAnalysis,
    ExtensionOrder, PipelineError, VerifyDepth,
};
pub use sweep::{
    enumerate_covers, render_csv, render_json, sweep, CoverRow, SweepConfig, SweepError,
    SweepSummary,
};
