//! End-to-end scaling studies for cuspidal ridges and gorges.
//!
//! Each study takes a validated config, runs its sweep members in parallel,
//! aggregates them in sweep order and fits a log-log slope. CSV output is a
//! pure function of the config, so reruns are byte-identical.

pub mod config;
pub mod error;
pub mod gorge;
pub mod report;
pub mod ridge;
pub mod studies;

pub use config::{GorgeConfig, GorgeModelConfig, HornConfig, OverlapConfig, RidgeConfig};
pub use error::{Error, Result};
pub use gorge::{run_gorge, run_gorge_m_sweep, williams_pipeline_check, GorgeResult};
pub use ridge::{
    run_forced_m_sweep, run_forced_ridge, run_free_tip_ridge, ForcedResult, FreeTipResult,
    RidgeSample,
};
pub use studies::{run_gorge_model, run_horn_study, run_overlap_demo};
