//! Rate constraints, the rate-split polytope, its projection onto
//! `(R_P, R_C)` and planar region algebra.

mod dmc;
mod fm;
pub mod lp;
mod polytope;
mod region2d;
mod support;
mod terms;

pub use dmc::{dmc_law_region, mi_terms_dmc, DmcSource};
pub use fm::{project_fm, project_sums, ELIMINATION_ORDER};
pub use polytope::{build_polytope, project_point, Inequality, RatePolytope, RowKind, DIM};
pub use region2d::{contains, hull, union, union_area, Point, Region2D, COLLINEAR_TOLERANCE};
pub use support::{quadrant_directions, support_points, support_sweep};
pub use terms::{
    assemble_terms, binning_report, lhs, Binning, MiSource, MiTerms, StateInfo, CONSTRAINT_IDS,
    LHS_MAP, PRIMARY_COLUMNS, RATE_VARIABLES, R_CCO, R_CPR, R_E, R_P1PR, R_P2CO, R_P2PR, R_S,
    SECONDARY_COLUMNS,
};
