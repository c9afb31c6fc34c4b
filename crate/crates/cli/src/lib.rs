//! Command-line layer over `riderlab`: OEIS client, SVG output, run manifests.

pub mod app;
pub mod manifest;
pub mod oeis;
pub mod svg;
