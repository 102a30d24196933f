//! Canonical paths between rankings and between profiles.

mod coordinate;
mod extract;
mod map;
mod path;
mod profile;

pub use coordinate::{
    bubble_sort_path, order_preserving_path, rankings_with_above, rankings_with_adjacent, refined_coord_path_block,
    refined_coord_path_generic, sim_canon_path,
};
pub use extract::{
    extract_2manip_from_refined_boundary, extract_3manip_from_triple, extract_manipulation_refined,
    extract_manipulation_v1, ExtractionCensus, Extractor, RefinedCase, RefinedExtraction, Resolution, SimpleCase,
    SimpleExtraction, TripleExtraction, TripleStage,
};
pub use map::{
    inverse_image_census, junction_counts, verify_invariance, BlockRefinedMap, BoundKind, BubbleSortMap, DeclaredBound,
    FnPathMap, GenericRefinedMap, GroupAction, InvarianceReport, InvarianceWitness, InverseImageCensus,
    OrderPreservingMap, PathMap, RefinedProfileMap, Relabel, VertexCount,
};
pub use path::{Part, PartLabel, Path};
pub use profile::{profile_path_v1, refined_path_bound, refined_profile_path, PairVertex};
