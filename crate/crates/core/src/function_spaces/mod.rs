//! Test functions on `ℝ×₊` (log-Gaussians, log-bumps and what the operators
//! `J`, `λ_t`, `x^s·` make of them) and parity functions on `ℝ`.

mod expr;
mod jet;
mod parity;
mod test_function;

pub use expr::{parse_parity_function, parse_test_function};
pub use jet::Jet;
pub use parity::{Parity, ParityFunction, ParityTerm};
pub use test_function::{Derivation, LineEnvelope, TestFunction, BUMP_DECAY_ORDER};

use crate::scalar::Real;

/// A real function on `x > 0` that can be summed over `n·x` with a
/// certified tail.
pub trait HalfLineFn<T: Real>: Sync {
    fn eval(&self, x: T) -> T;

    /// Value together with an absolute error bound (zero for closed forms).
    fn eval_bounded(&self, x: T) -> (T, T) {
        (self.eval(x), T::zero())
    }

    /// Bound on `Σ_{k>n} k^j |f(kx)|`, or `+∞` when it cannot be certified.
    fn weighted_tail(&self, x: T, n: usize, j: T) -> T;
}
