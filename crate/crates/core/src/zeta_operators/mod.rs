//! The summation operator `Z`, its Möbius inverse, Euler products and the
//! Poisson summation identities, plain and twisted by a Dirichlet character.

mod character;
mod ops;
mod sieve;
mod spectral;

pub use character::{character, characters, primitive_characters, DirichletCharacter};
pub(crate) use ops::cutoff;
pub use ops::{
    apply_l_chi, apply_z, apply_z_inverse, euler_product_l_chi, euler_product_z, euler_product_z_inverse,
    poisson_check, twisted_poisson_check, z_cutoff, IdentityCheck, TruncationSpec, ZOperator,
};
pub use sieve::{smooth_numbers, Sieve};
pub use spectral::{zspectral_check, zspectral_check_on, zspectral_spec, ZMellinGrid, ZSpectralCheck};
