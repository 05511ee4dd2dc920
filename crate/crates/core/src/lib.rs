//! Robust sparse coding for classification under occlusion and pixel damage.
//!
//! The crate implements sparse coding with a wing-shaped fidelity penalty
//! (logarithmic near zero, linear in the tails) solved by ADMM, in three
//! flavors:
//!
//! * `SrcLasso` — the plain `½‖Ax−y‖² + λ‖x‖₁` baseline,
//! * `Wcsc` — wing penalty on the residual split `z = Ax − y`,
//! * `Wwcsc` — the weighted variant, where a per-entry sigmoid weight
//!   learned from the residuals each iteration down-weights entries that
//!   look like outliers (occluded or corrupted pixels).
//!
//! A code is turned into a class decision by reconstructing the sample from
//! each class's dictionary columns and picking the class with the smallest
//! residual. The [`data`] helpers cover image ingestion (binary PGM),
//! dictionary assembly, Gaussian random projection, and the seeded
//! corruption/occlusion generators used by the benchmark harness.

pub mod classify;
pub mod corrupt;
pub mod dataset;
pub mod error;
pub mod image;
pub mod loss;
pub mod project;
pub mod solver;

pub use classify::{classify, recognition_rate, ClassId, ClassificationResult, Dictionary};
pub use corrupt::{corrupt_uniform, occlude_block, CorruptionKind, CorruptionSpec, OcclusionColor};
pub use dataset::{build_dictionary, synth_dataset};
pub use error::{Error, Result};
pub use image::{image_to_vector, load_pgm, save_pgm, vector_to_image, GrayImage};
pub use loss::{
    compute_weights, residual_threshold, soft_threshold, wing_loss, wing_penalty, WeightParams,
    WeightState, WingParams,
};
pub use project::ProjectionOp;
pub use solver::{
    objective_value, solve, AdmmConfig, AdmmSolver, SolveMode, SolveResult, SolverState, StepInfo,
    Termination,
};

/// Convenience alias used throughout: the crate works in dense `f64`.
pub mod data {
    //! Re-exports of the data-preparation surface (images, corruption,
    //! projection, synthetic datasets) under one roof.
    pub use crate::corrupt::*;
    pub use crate::dataset::*;
    pub use crate::image::*;
    pub use crate::project::*;
}
