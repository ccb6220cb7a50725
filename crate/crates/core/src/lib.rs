//! Exact-arithmetic laboratory for self-affine carpets and doubling measures.
//!
//! The crate builds Baránski carpets, Bedford-McMullen carpets and sponges
//! exactly, generates grid measures with ratio-bounded dyadic weights,
//! measures doubling-type diagnostics, extracts explicit constants, and
//! assembles quantitative decay certificates showing carpet mass shrinking
//! under doubling constraints. An adversarial linear program turns "thin for
//! doubling measures" into computable decay of ratio-constrained optima.
//!
//! All geometry and measure arithmetic is exact rational; floating point
//! appears only in fitted exponents and the iterative solver.

pub mod adversary;
pub mod certify;
pub mod error;
pub mod exec;
pub mod fractal;
pub mod geometry;
pub mod measure;
pub mod scalar;

pub use error::{Error, Result};
pub use scalar::Scalar;

/// Enumeration guard for level-set and harvest blowup.
///
/// Errors carry the count that would have been produced so callers can
/// re-plan instead of guessing.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Budget {
    pub max_boxes: u64,
}

impl Budget {
    pub const DEFAULT_MAX_BOXES: u64 = 5_000_000;

    pub fn new(max_boxes: u64) -> Self {
        Budget { max_boxes }
    }

    /// Fails with `EnumerationBudget` when `count` exceeds the budget.
    pub fn check(&self, count: u128) -> Result<()> {
        if count > self.max_boxes as u128 {
            Err(Error::EnumerationBudget { count })
        } else {
            Ok(())
        }
    }
}

impl Default for Budget {
    fn default() -> Self {
        Budget { max_boxes: Self::DEFAULT_MAX_BOXES }
    }
}
