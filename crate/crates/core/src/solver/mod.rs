//! Ground-truth engines for arbitrary small signed graphs.

mod factor;
mod flow;
mod search;
mod trail;

pub use factor::{
    all_one_factorizations, balanced_two_factors, flow_from_balanced_2factors, one_factorize,
    two_factor_circuits, OneFactorization,
};
pub use flow::{inflow_sums, verify_flow, Flow};
pub use search::{find_nzflow, flow_number, for_each_nzflow, FlowNumber, MAX_SEARCH_EDGES};
pub use trail::{send_along_trail, Trail};
