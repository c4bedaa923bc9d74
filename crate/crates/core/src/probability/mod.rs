//! Finite-alphabet probability machinery and half-duplex structure checks.

mod alphabet;
mod channel;
mod joint;
mod law;
mod pmf;
mod validate;

pub use alphabet::Alphabet;
pub use channel::{ChannelSpec, CHANNEL_INPUTS, CHANNEL_OUTPUTS};
pub use joint::{make_joint, JOINT_ORDER};
pub use law::{
    restricted_state, Conditional, DeterministicMap, HalfDuplexLaw, StateRole, CONDITIONAL_PARENTS,
    X_C_PARENTS, X_P_PARENTS,
};
pub use pmf::{JointPmf, Variable, MAX_TABLE_LEN, PMF_TOLERANCE};
pub use validate::{validate_channel, validate_half_duplex, Check, ValidationReport, RESTRICTIONS};

/// Canonical variable names.
pub mod vars {
    pub const S: &str = "s";
    pub const T_P1CO: &str = "t_p1co";
    pub const T_P1PR: &str = "t_p1pr";
    pub const X_P1CO: &str = "x_p1co";
    pub const X_P1PR: &str = "x_p1pr";
    pub const X_P2CO: &str = "x_p2co";
    pub const X_P2PR: &str = "x_p2pr";
    pub const X_P: &str = "x_p";
    pub const U_CCO: &str = "u_cco";
    pub const U_CPR: &str = "u_cpr";
    pub const X_C: &str = "x_c";
    pub const V_C: &str = "v_c";
    pub const Y_P: &str = "y_p";
    pub const Y_C: &str = "y_c";

    /// Variables whose alphabets a law must declare.
    pub const INPUT_VARIABLES: [&str; 11] = [
        S, T_P1CO, T_P1PR, X_P1CO, X_P1PR, X_P2CO, X_P2PR, X_P, U_CCO, U_CPR, X_C,
    ];
}
