//! Files, command line and local service for the virtual Prytz planimeter.
//!
//! The numerical engine lives in `prytz-core`; this crate adds:
//! - [`json`]: JSON shapes for paths, group elements, traces and reports.
//! - [`export`]: CSV tables and SVG drawings.
//! - [`config`]: flag and config-file merging.
//! - [`scan`]: region families and the parallel holonomy scan.
//! - [`ops`]: engine calls shared by the CLI and the service.
//! - [`service`]: the axum router behind `prytz serve`.
//! - [`cli`]: the `prytz` binary.

pub mod cli;
pub mod config;
pub mod error;
pub mod export;
pub mod json;
pub mod ops;
pub mod scan;
pub mod service;

pub use error::{AppError, AppResult};
