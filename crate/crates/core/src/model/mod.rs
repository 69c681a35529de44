//! Data objects of the problem and their closed-form evaluations.

mod colour_spec;
mod count;
mod objective;
mod pattern;
mod shape;
mod weights;

pub use colour_spec::{ColourSpec, MAX_COLOURS};
pub use count::BigCount;
pub use objective::{
    apportion, build_construction_graph, density_profile, evaluate_q, feasibility_level,
    list_weight, product_lower_bound, rounding_constant, turan_count, Construction, DensityProfile,
    Feasibility, FeasibleTriple,
};
pub(crate) use pattern::map_mask;
pub use pattern::{format_list, pair_count, pair_index, PatternFunction};
pub use shape::PartitionShape;
pub use weights::{WeightVector, RENORMALISE_TOL, SIMPLEX_TOL};
