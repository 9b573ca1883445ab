//! Γ, ζ, ξ, Dirichlet L-functions and the Hardy Z-function.

mod gamma;
mod hardy;
mod l_function;
mod xi;
mod zeta;

pub use gamma::{gamma, gamma_real, ln_gamma};
pub use hardy::{hardy_z, hardy_z_checked, theta, HARDY_RESIDUE_LIMIT};
pub use l_function::{completed_l_chi, l_chi, l_chi_with_error};
pub use xi::{xi, CompletedZetaValue};
pub use zeta::{hurwitz_zeta, zeta, zeta_with_error, EM_TERMS};
