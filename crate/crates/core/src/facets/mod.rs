//! Linear inequalities over `x`, the facet families, validity and facet
//! certification, and the mapping into the 0-1 arc model.

mod arc;
mod certify;
mod families;
mod inequality;

pub use crate::linalg::{affine_rank, affine_rank_up_to, AffineRank};
pub use arc::{incidence_matrix, map_to_arc_model, ArcInequality};
pub use certify::{
    bruteforce_facet_report, certify_facet, check_validity, is_facet_bruteforce, is_valid_bruteforce,
    BruteforceReport, FacetCertificate, FacetStatus, TightPoints, TightSource, Validity, ValiditySource,
};
pub use families::{
    hierarchy_members, make_hierarchy_inequality, make_permutation_inequality, make_two_term_inequalities,
    two_term_1, two_term_2, two_term_3, two_term_5, two_term_6, FamilyId, FamilyMember, FamilyTag,
};
pub use inequality::{LhsTable, LinearInequality};
