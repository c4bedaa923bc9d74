//! Information measures in bits.

mod bits;
mod discrete;
mod gaussian;
mod mixture;

pub use bits::{Bits, NEGATIVE_FLOOR};
pub use discrete::{cond_mutual_info, entropy, entropy_of, event_cond_mi};
pub use gaussian::{gaussian_mi, GaussianVector};
pub use mixture::{binary_entropy, gaussian_entropy, mixture_entropy, state_output_mi};
