//! Number formatting shared by every serializer.
//!
//! All floating-point output goes through one function so that two runs (or
//! two thread counts) produce byte-identical files.

/// Scientific notation with 17 significant digits: enough to round-trip any
/// f64 exactly, and a fixed width-independent shape (`d.dddddddddddddddde±e`)
/// that is valid JSON and stable across platforms.
pub fn float17(x: f64) -> String {
    format!("{:.16e}", x)
}
