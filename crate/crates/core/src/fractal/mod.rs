//! Self-affine grid systems: Baránski carpets, Bedford-McMullen carpets and
//! sponges, and their 1D analogues. Builds level sets, hole templates, Moran
//! covers, hole harvests and epoch schedules.

mod harvest;
mod hole;
mod level;
mod moran;
mod spec;
mod sponge;
mod word;

pub use harvest::{harvest_schedule, hole_harvest, Epoch, HarvestSchedule};
pub use hole::{find_hole, osch_check, HoleTemplate};
pub use level::{level_box, level_partition, level_set, levelset_interior_disjoint, LevelBox, LevelSet};
pub use moran::{moran_cover, CoverInterval, MoranCover};
pub use spec::{SystemKind, SystemSpec};
pub use sponge::sponge_depth;
pub use word::{apply_word, AffineMap, Word};
