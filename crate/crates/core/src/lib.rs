//! Paley-Wiener (bandlimited) signal spaces on finite graphs.
//!
//! The normalized Laplacian of a finite simple graph, its eigenbasis and the
//! spaces `PW_ω` of signals whose spectrum lies in `[0, ω]`; Poincaré
//! constants of vertex sets and the uniqueness sets they certify; frame
//! bounds and dual-frame / Neumann-series reconstruction from samples; closed
//! forms for paths, cycles, lattices and homogeneous trees.
//!
//! The numerical core is generic over [`Scalar`] (`f64` and `f32`); the
//! aliases at the crate root fix the reference precision `f64`.

pub mod config;
pub mod eigbounds;
pub mod error;
pub mod graph;
pub mod io;
pub mod linalg;
pub mod models;
pub mod poincare;
pub mod sampling;
pub mod scalar;
pub mod spectral;

pub use config::RunConfig;
pub use error::{Error, Result};
pub use graph::{Graph, GraphKind, VertexId, VertexSet};
pub use sampling::FrameNormalization;
pub use scalar::Scalar;

pub type Signal = spectral::Signal<f64>;
pub type SpectralDecomposition = spectral::SpectralDecomposition<f64>;
pub type PwSpace = spectral::PwSpace<f64>;
pub type LambdaCertificate = poincare::LambdaCertificate<f64>;
pub type SamplingFrame = sampling::SamplingFrame<f64>;
pub type ReconstructionReport = sampling::ReconstructionReport<f64>;
pub type EigenCountReport = eigbounds::EigenCountReport<f64>;
pub type Matrix = linalg::Matrix<f64>;

pub type Signal32 = spectral::Signal<f32>;
pub type SpectralDecomposition32 = spectral::SpectralDecomposition<f32>;
pub type LambdaCertificate32 = poincare::LambdaCertificate<f32>;
pub type SamplingFrame32 = sampling::SamplingFrame<f32>;
