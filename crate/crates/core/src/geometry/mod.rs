//! Exact axis-aligned geometry: boxes, product partitions, overlap
//! fractions, and congruent-box chains. Everything is closed-box rational
//! arithmetic; interior disjointness is tested with per-axis open intervals.

mod aabox;
mod chain;
mod partition;

pub use aabox::{dilate, overlap_fraction, AxisBox};
pub use chain::{connect_congruent_boxes, BoxChain};
pub use partition::ProductPartition;
