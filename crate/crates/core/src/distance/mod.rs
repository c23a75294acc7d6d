//! Edit distance, normalized edit distance, GANED and MINDIST.

mod edit;
mod ganed;
mod mindist;
mod ned;

pub use edit::{edit_distance, edit_distance_table, EditCosts};
pub use ganed::{ganed, ganed_profiled, overlap_factor, FrequencyFactors, ProfiledSequence};
pub use mindist::mindist;
pub use ned::ned;
