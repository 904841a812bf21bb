//! Static query structures used by the slab index: shortest contained
//! segment and orthogonal box reporting.

mod boxes;
mod segment;

pub use boxes::{build_box_reporter, report_box, BoxReporter, QueryBox, LEAF_SIZE};
pub use segment::{build_segment_index, query_shortest_in_slab, SegmentIndex};
