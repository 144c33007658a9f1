//! Null-cobordism certificates: unimodular chains for 3-dimensional lens
//! spaces, epsilon extensions of the lens model, vertex-cut reduction trees
//! and exhaustive surveys of the extension conditions.

mod certfile;
mod chain;
mod search;
mod survey;
mod tree;

pub use certfile::Certificate;
pub use chain::{
    lem1_step, lem2_chain, polygon_certificate, verify_chain, ChainCert, ChainDefect, Vec2,
};
pub use search::{
    check_family, eps_search_dim3, eps_search_general, extension_is_valid, question2_coefficients,
    question2_gcd_holds, question2_holds, EpsilonVector,
};
pub use survey::{survey, SurveyReport};
pub use tree::{
    build_certificate, closed_form_orders, normalize_params, verify_certificate,
    vertex_cut_boundaries, ReductionNode, ReductionTree, VerificationReport,
};
