//! Simple cycles, hikes (heaps of cycles) and excursions, with the walk
//! generating functions they control: the zeta and Moebius functions of
//! the trace monoid, excursion matrices, resolvent blocks, von Mangoldt
//! series and Boolean cumulants.

mod cycles;
mod genfun;
mod heap;

pub use cycles::{enumerate_simple_cycles, SimpleCycle};
pub use genfun::{
    boolean_cumulants, cycle_cover_series, cycle_weight_sum_on, excursion_enumeration,
    excursion_matrix, filtered_hike_series, hike_series, induced_zeta, log_ru_check, mobius_series,
    pyramid_lambda_series, pyramid_lambda_u_series, pyramid_log_series, resolvent_block, ru_series,
    von_mangoldt_series, von_mangoldt_u_series, zeta_series, LogRuCheck,
};
pub use heap::{
    closed_walks_from, enumerate_hikes, enumerate_hikes_with_cap, vertex_mask, walk_to_hike,
    walk_weight, CycleSet, Hike, DEFAULT_HIKE_CAP,
};
