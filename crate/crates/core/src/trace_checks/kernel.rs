//! Log-grid discretisation of integral-kernel operators on `L²(ℝ×₊, d×x)`.

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::function_spaces::TestFunction;
use crate::quadrature::{tanh_sinh, QuadratureSpec};
use crate::scalar::{pairwise_sum, Real};

use super::phi::AuxiliaryPhi;

/// `N` log-uniform points `u_i` on `[-U, U]` with trapezoid weights for `d×x`.
///
/// The nodes are exactly symmetric, `u_{N-1-i} = -u_i`, so `x ↦ 1/x` is a
/// permutation of the grid.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct LogGrid<T: Real = f64> {
    half_width: T,
    nodes: Vec<T>,
    weights: Vec<T>,
}

impl<T: Real> LogGrid<T> {
    pub const MIN_POINTS: usize = 64;

    pub fn new(n: usize, half_width: T) -> Result<Self> {
        if n < Self::MIN_POINTS {
            return Err(Error::InvalidSpec(format!(
                "grid needs at least {} points, got {n}",
                Self::MIN_POINTS
            )));
        }
        if !(half_width > T::zero()) || !half_width.is_finite() {
            return Err(Error::InvalidSpec(format!("window must be positive, got {half_width}")));
        }
        let h = Self::spacing(n, half_width);
        let mut nodes = vec![T::zero(); n];
        for i in 0..n / 2 {
            // u_i = (i - (n-1)/2) h
            let u = (T::from_usize_lossy(2 * i) - T::from_usize_lossy(n - 1)) * h * T::lit(0.5);
            nodes[i] = u;
            nodes[n - 1 - i] = -u;
        }
        let mut weights = vec![h; n];
        weights[0] = h * T::lit(0.5);
        weights[n - 1] = h * T::lit(0.5);
        Ok(Self {
            half_width,
            nodes,
            weights,
        })
    }

    fn spacing(n: usize, half_width: T) -> T {
        T::lit(2.0) * half_width / T::from_usize_lossy(n - 1)
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn half_width(&self) -> T {
        self.half_width
    }

    pub fn step(&self) -> T {
        Self::spacing(self.len(), self.half_width)
    }

    /// `u_i = ln x_i`.
    pub fn nodes(&self) -> &[T] {
        &self.nodes
    }

    pub fn weights(&self) -> &[T] {
        &self.weights
    }

    /// Index of `1/x_i`.
    pub fn mirror(&self, i: usize) -> usize {
        self.len() - 1 - i
    }
}

/// Kernel `k(x_i, x_j)` tabulated on a grid; as an operator it acts by
/// `(Kξ)_i = Σ_j k(x_i, x_j) w_j ξ_j`.
#[derive(Clone, Debug, PartialEq)]
pub struct KernelOperator<T: Real = f64> {
    grid: LogGrid<T>,
    values: Vec<T>,
}

impl<T: Real> KernelOperator<T> {
    pub fn from_fn(grid: &LogGrid<T>, k: impl Fn(T, T) -> T + Sync) -> Result<Self> {
        let n = grid.len();
        let values: Vec<T> = (0..n * n)
            .into_par_iter()
            .map(|idx| k(grid.nodes[idx / n].exp(), grid.nodes[idx % n].exp()))
            .collect();
        Self::from_values(grid, values)
    }

    fn from_values(grid: &LogGrid<T>, values: Vec<T>) -> Result<Self> {
        if let Some(pos) = values.iter().position(|v| !v.is_finite()) {
            let n = grid.len();
            return Err(Error::Domain(format!(
                "kernel is not finite at ({}, {})",
                pos / n,
                pos % n
            )));
        }
        Ok(Self {
            grid: grid.clone(),
            values,
        })
    }

    /// `∫ λ(f)`: kernel `f(x/y)`.
    pub fn convolution(f: &TestFunction<T>, grid: &LogGrid<T>) -> Result<Self> {
        let n = grid.len();
        let values = (0..n * n)
            .into_par_iter()
            .map(|idx| f.eval_log(grid.nodes[idx / n] - grid.nodes[idx % n]))
            .collect();
        Self::from_values(grid, values)
    }

    /// Multiplication by `φ` as a diagonal kernel (`δ` divided by the weight).
    pub fn multiplication(phi: &AuxiliaryPhi<T>, grid: &LogGrid<T>) -> Self {
        let n = grid.len();
        let mut values = vec![T::zero(); n * n];
        for i in 0..n {
            values[i * n + i] = phi.eval_log(grid.nodes[i]) / grid.weights[i];
        }
        Self {
            grid: grid.clone(),
            values,
        }
    }

    /// `(Jξ)(x) = x⁻¹ ξ(1/x)`: anti-diagonal with entries `x_i⁻¹ / w_j`.
    pub fn j(grid: &LogGrid<T>) -> Self {
        let n = grid.len();
        let mut values = vec![T::zero(); n * n];
        for i in 0..n {
            let j = grid.mirror(i);
            values[i * n + j] = (-grid.nodes[i]).exp() / grid.weights[j];
        }
        Self {
            grid: grid.clone(),
            values,
        }
    }

    pub fn grid(&self) -> &LogGrid<T> {
        &self.grid
    }

    pub fn get(&self, i: usize, j: usize) -> T {
        self.values[i * self.grid.len() + j]
    }

    /// Kernel of the composition `self ∘ other`.
    pub fn compose(&self, other: &Self) -> Result<Self> {
        if self.grid != other.grid {
            return Err(Error::InvalidSpec("kernels live on different grids".into()));
        }
        let n = self.grid.len();
        let w = &self.grid.weights;
        let values: Vec<T> = (0..n)
            .into_par_iter()
            .flat_map_iter(|i| {
                let mut row = vec![T::zero(); n];
                for k in 0..n {
                    let a = self.values[i * n + k] * w[k];
                    if a != T::zero() {
                        for (r, &b) in row.iter_mut().zip(&other.values[k * n..(k + 1) * n]) {
                            *r += a * b;
                        }
                    }
                }
                row
            })
            .collect();
        Self::from_values(&self.grid, values)
    }

    pub fn add_scaled(&self, c: T, other: &Self) -> Self {
        Self {
            grid: self.grid.clone(),
            values: self
                .values
                .iter()
                .zip(&other.values)
                .map(|(&a, &b)| a + c * b)
                .collect(),
        }
    }

    /// Largest `|K_ij - L_ij| w_j`, the entrywise distance of the operator
    /// matrices.
    pub fn operator_distance(&self, other: &Self) -> T {
        let n = self.grid.len();
        (0..n * n)
            .map(|idx| (self.values[idx] - other.values[idx]).abs() * self.grid.weights[idx % n])
            .fold(T::zero(), T::max)
    }
}

/// `Σ_i w_i k(x_i, x_i)`.
pub fn trace_diagonal<T: Real>(k: &KernelOperator<T>) -> T {
    let n = k.grid.len();
    let terms: Vec<T> = (0..n).map(|i| k.grid.weights[i] * k.values[i * n + i]).collect();
    pairwise_sum(&terms)
}

/// Half-length in `ln` of the region where `|f₀(e^d) f₁(e^{-d})|` exceeds
/// `rel` times its maximum.
fn product_reach<T: Real>(f0: &TestFunction<T>, f1: &TestFunction<T>, rel: T) -> T {
    let (a0, b0) = f0.log_support(T::lit(1e-300));
    let (a1, b1) = f1.log_support(T::lit(1e-300));
    // f₁(e^{-d}) lives on [-b1, -a1]
    let lo = a0.max(-b1);
    let hi = b0.min(-a1);
    if !(hi > lo) {
        return T::zero();
    }
    let n = 4000;
    let h = (hi - lo) / T::from_usize_lossy(n);
    let vals: Vec<(T, T)> = (0..=n)
        .map(|i| {
            let d = lo + h * T::from_usize_lossy(i);
            (d, (f0.eval_log(d) * f1.eval_log(-d)).abs())
        })
        .collect();
    let peak = vals.iter().map(|v| v.1).fold(T::zero(), T::max);
    vals.iter()
        .filter(|v| v.1 > rel * peak)
        .map(|v| v.0.abs() + h)
        .fold(T::zero(), T::max)
}

fn check_window<T: Real>(
    f0: &TestFunction<T>,
    f1: &TestFunction<T>,
    phi: &AuxiliaryPhi<T>,
    grid: &LogGrid<T>,
) -> Result<T> {
    let reach = product_reach(f0, f1, T::lit(1e-16));
    let need = phi.width() + reach;
    if need > grid.half_width() {
        return Err(Error::WindowTooSmall {
            what: "commutator kernel support",
            tail: need.as_f64(),
            tolerance: grid.half_width().as_f64(),
        });
    }
    Ok(reach)
}

/// Kernel of `∫λ(f₀) [M_φ, ∫λ(f₁)]`:
/// `k(x, y) = ∫ f₀(x/z) f₁(z/y) (φ(z) - φ(y)) d×z`, with the `z` integral on
/// the grid itself.
pub fn commutator_kernel<T: Real>(
    f0: &TestFunction<T>,
    f1: &TestFunction<T>,
    phi: &AuxiliaryPhi<T>,
    grid: &LogGrid<T>,
) -> Result<KernelOperator<T>> {
    commutator_kernel_refined(f0, f1, phi, grid, 1)
}

/// As [`commutator_kernel`] with `refine - 1` extra `z` nodes per grid cell.
pub fn commutator_kernel_refined<T: Real>(
    f0: &TestFunction<T>,
    f1: &TestFunction<T>,
    phi: &AuxiliaryPhi<T>,
    grid: &LogGrid<T>,
    refine: usize,
) -> Result<KernelOperator<T>> {
    if refine == 0 {
        return Err(Error::InvalidSpec("refinement factor must be at least 1".into()));
    }
    check_window(f0, f1, phi, grid)?;
    let n = grid.len();
    let m = (n - 1) * refine + 1;
    let zgrid = LogGrid::new(m, grid.half_width())?;
    let hz = zgrid.step();
    // u_i - z_k = (i·r - k) hz: Toeplitz in the combined index
    let offset = (m - 1) as isize;
    let span = |f: &TestFunction<T>, sign: T| -> Vec<T> {
        (-offset..=offset)
            .map(|d| f.eval_log(sign * T::from_f64(d as f64).expect("index") * hz))
            .collect()
    };
    let a = span(f0, T::one());
    let b = span(f1, -T::one());
    let phi_z: Vec<T> = zgrid.nodes().iter().map(|&z| phi.eval_log(z)).collect();
    let phi_y: Vec<T> = grid.nodes().iter().map(|&y| phi.eval_log(y)).collect();
    let wz = zgrid.weights();
    let values: Vec<T> = (0..n)
        .into_par_iter()
        .flat_map_iter(|i| {
            let ir = (i * refine) as isize;
            let mut row = vec![T::zero(); n];
            for (j, slot) in row.iter_mut().enumerate() {
                let jr = (j * refine) as isize;
                let mut s = T::zero();
                for k in 0..m {
                    let ki = k as isize;
                    // f₀(x_i/z_k) with d = ir - k, f₁(z_k/y_j) with d = jr - k
                    let av = a[(ir - ki + offset) as usize];
                    if av == T::zero() {
                        continue;
                    }
                    s += av * b[(jr - ki + offset) as usize] * wz[k] * (phi_z[k] - phi_y[j]);
                }
                *slot = s;
            }
            row
        })
        .collect();
    KernelOperator::from_values(grid, values)
}

/// `∫ f₁(x/z) f₀(z/y) d×z` on the grid, the kernel of `∫λ(f₁) ∫λ(f₀)`.
pub fn convolution_kernel<T: Real>(
    f1: &TestFunction<T>,
    f0: &TestFunction<T>,
    grid: &LogGrid<T>,
) -> Result<KernelOperator<T>> {
    KernelOperator::convolution(f1, grid)?.compose(&KernelOperator::convolution(f0, grid)?)
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct TraceCheck<T: Real = f64> {
    pub trace: T,
    /// `τ(f₀ * ∂f₁) = ∫ f₀(x) f₁(1/x) ln(1/x) d×x`
    pub expected: T,
    pub residual: T,
    /// Quadrature error of `expected`.
    pub est_error: T,
    pub n: usize,
    pub window: T,
}

/// `τ(f₀ * ∂f₁) = ∫ f₀(x) f₁(1/x) ln(1/x) d×x` by tanh-sinh in `ln x`.
pub fn tau_convolution_derivation<T: Real>(
    f0: &TestFunction<T>,
    f1: &TestFunction<T>,
    q: &QuadratureSpec<T>,
) -> Result<(T, T)> {
    let reach = product_reach(f0, f1, T::lit(1e-300));
    if reach == T::zero() {
        return Ok((T::zero(), T::zero()));
    }
    let pieces = (reach * T::lit(2.0)).ceil().max(T::one()).to_usize().unwrap_or(1);
    let h = T::lit(2.0) * reach / T::from_usize_lossy(pieces);
    let tol = q.tolerance / T::from_usize_lossy(pieces);
    let mut value = T::zero();
    let mut err = T::zero();
    for p in 0..pieces {
        let a = -reach + h * T::from_usize_lossy(p);
        let (v, e) = tanh_sinh(a, a + h, tol * T::lit(0.01), |u: T| {
            -u * f0.eval_log(u) * f1.eval_log(-u)
        });
        value += v;
        err += e;
    }
    if !(err <= q.tolerance) {
        return Err(Error::ToleranceNotMet {
            estimate: err.as_f64(),
            tolerance: q.tolerance.as_f64(),
        });
    }
    Ok((value, err))
}

/// `|tr(∫λ(f₀) [M_φ, ∫λ(f₁)]) - τ(f₀ * ∂f₁)|`.
///
/// Only the diagonal of the kernel is formed:
/// `Σ_i w_i Σ_k w_k f₀(x_i/z_k) f₁(z_k/x_i) (φ(z_k) - φ(x_i))`.
pub fn toeplitz_trace_check<T: Real>(
    f0: &TestFunction<T>,
    f1: &TestFunction<T>,
    phi: &AuxiliaryPhi<T>,
    grid: &LogGrid<T>,
    q: &QuadratureSpec<T>,
) -> Result<TraceCheck<T>> {
    q.validate()?;
    check_window(f0, f1, phi, grid)?;
    let n = grid.len();
    let h = grid.step();
    let offset = (n - 1) as isize;
    // f₀(e^{dh}) f₁(e^{-dh})
    let prod: Vec<T> = (-offset..=offset)
        .map(|d| {
            let u = T::from_f64(d as f64).expect("index") * h;
            f0.eval_log(u) * f1.eval_log(-u)
        })
        .collect();
    let phis: Vec<T> = grid.nodes().iter().map(|&u| phi.eval_log(u)).collect();
    let w = grid.weights();
    let rows: Vec<T> = (0..n)
        .into_par_iter()
        .map(|i| {
            let mut s = T::zero();
            for k in 0..n {
                let p = prod[(i as isize - k as isize + offset) as usize];
                if p != T::zero() {
                    s += p * w[k] * (phis[k] - phis[i]);
                }
            }
            s * w[i]
        })
        .collect();
    let trace = pairwise_sum(&rows);
    let (expected, est_error) = tau_convolution_derivation(f0, f1, q)?;
    Ok(TraceCheck {
        trace,
        expected,
        residual: (trace - expected).abs(),
        est_error,
        n,
        window: grid.half_width(),
    })
}
