//! Numerical toolkit for zeta operators, Mellin transforms and the explicit formula.

#![allow(
    clippy::neg_cmp_op_on_partial_ord,
    clippy::excessive_precision,
    clippy::needless_range_loop
)]

pub mod error;
pub mod explicit_formula;
pub mod function_spaces;
pub mod quadrature;
pub mod scalar;
pub mod special_functions;
pub mod trace_checks;
pub mod transforms;
pub mod zeros;
pub mod zeta_operators;

pub use error::{Error, Result};
pub use scalar::{Bounded, Complex, Real, C};

macro_rules! aliases {
    ($name:ident, $t:ty) => {
        /// Concrete instantiations over
        #[doc = concat!("`", stringify!($t), "`.")]
        pub mod $name {
            pub type Complex = crate::scalar::C<$t>;
            pub type TestFunction = crate::function_spaces::TestFunction<$t>;
            pub type ParityFunction = crate::function_spaces::ParityFunction<$t>;
            pub type QuadratureSpec = crate::quadrature::QuadratureSpec<$t>;
            pub type MellinValue = crate::transforms::MellinValue<$t>;
            pub type ZeroTable = crate::zeros::ZeroTable<$t>;
            pub type IdentityCheck = crate::zeta_operators::IdentityCheck<$t>;
            pub type ZSpectralCheck = crate::zeta_operators::ZSpectralCheck<$t>;
            pub type ExplicitFormulaReport = crate::explicit_formula::ExplicitFormulaReport<$t>;
            pub type WInfty = crate::explicit_formula::WInfty<$t>;
            pub type AuxiliaryPhi = crate::trace_checks::AuxiliaryPhi<$t>;
            pub type LogGrid = crate::trace_checks::LogGrid<$t>;
            pub type KernelOperator = crate::trace_checks::KernelOperator<$t>;
            pub type TraceCheck = crate::trace_checks::TraceCheck<$t>;
        }
    };
}

aliases!(f64, f64);
aliases!(f32, f32);
