//! Finite-rank checks of the trace identities behind the explicit formula:
//! the auxiliary cut-off `φ`, the Toeplitz commutator trace and the prime
//! comb `Z ∂(Z⁻¹)`.

mod comb;
mod kernel;
mod phi;

pub use comb::{weil_derivation_check, Comb, WeilDerivationCheck};
pub use kernel::{
    commutator_kernel, commutator_kernel_refined, convolution_kernel, tau_convolution_derivation, toeplitz_trace_check,
    trace_diagonal, KernelOperator, LogGrid, TraceCheck,
};
pub use phi::{build_phi, phi_log_identity, smoothstep, AuxiliaryPhi, PhiLogCheck};
