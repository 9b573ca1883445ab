//! Quadrature rules used by the transforms and trace checks.
//!
//! The workhorse is the trapezoid rule on a uniform grid in `u = ln x`,
//! which converges geometrically for integrands that are smooth and decay
//! at both ends of the window. Gauss–Legendre panels and tanh-sinh cover
//! the integrals with endpoints (principal values, half-line pieces).

use serde::Serialize;

use crate::error::{Error, Result};
use crate::scalar::{creal, Real, C};

/// Log-coordinate window and grid size for a trapezoid quadrature.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct QuadratureSpec<T: Real = f64> {
    pub u_min: T,
    pub u_max: T,
    pub n_points: usize,
    pub tolerance: T,
}

impl<T: Real> QuadratureSpec<T> {
    pub const MIN_POINTS: usize = 16;

    pub fn new(u_min: T, u_max: T, n_points: usize, tolerance: T) -> Result<Self> {
        let spec = Self {
            u_min,
            u_max,
            n_points,
            tolerance,
        };
        spec.validate()?;
        Ok(spec)
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.u_min < self.u_max) || !self.u_min.is_finite() || !self.u_max.is_finite() {
            return Err(Error::InvalidSpec(format!(
                "window [{}, {}] is empty or not finite",
                self.u_min, self.u_max
            )));
        }
        if self.n_points < Self::MIN_POINTS {
            return Err(Error::InvalidSpec(format!(
                "n_points = {} is below {}",
                self.n_points,
                Self::MIN_POINTS
            )));
        }
        if !(self.tolerance > T::zero()) {
            return Err(Error::InvalidSpec("tolerance must be positive".into()));
        }
        Ok(())
    }

    /// Symmetric window `[-half_width, half_width]`.
    pub fn symmetric(half_width: T, n_points: usize, tolerance: T) -> Result<Self> {
        Self::new(-half_width, half_width, n_points, tolerance)
    }

    pub fn step(&self) -> T {
        (self.u_max - self.u_min) / T::from_usize_lossy(self.n_points - 1)
    }

    pub fn node(&self, i: usize) -> T {
        self.u_min + self.step() * T::from_usize_lossy(i)
    }

    pub fn nodes(&self) -> impl Iterator<Item = T> + '_ {
        let h = self.step();
        (0..self.n_points).map(move |i| self.u_min + h * T::from_usize_lossy(i))
    }

    /// Same window with (roughly) twice the grid density.
    pub fn refined(&self) -> Self {
        Self {
            n_points: 2 * self.n_points - 1,
            ..*self
        }
    }

    /// Same window with half the grid density (every other node).
    pub fn coarsened(&self) -> Self {
        Self {
            n_points: self.n_points.div_ceil(2),
            ..*self
        }
    }

    pub fn contains(&self, lo: T, hi: T) -> bool {
        self.u_min <= lo && hi <= self.u_max
    }
}

/// Result of a trapezoid sum: the value, the value on every other node,
/// and the largest absolute integrand sample at the two window edges.
#[derive(Clone, Copy, Debug)]
pub(crate) struct TrapezoidOutcome<V, T> {
    pub value: V,
    pub coarse: V,
    pub edge: T,
    /// `h * Σ |g(u_i)|`, used for the rounding floor.
    pub abs_mass: T,
}

/// Trapezoid rule in the log coordinate for a complex integrand `g(u)`.
pub(crate) fn trapezoid_c<T: Real, G>(q: &QuadratureSpec<T>, g: G) -> TrapezoidOutcome<C<T>, T>
where
    G: Fn(T) -> C<T>,
{
    let h = q.step();
    let n = q.n_points;
    let samples: Vec<C<T>> = q.nodes().map(&g).collect();
    let half = T::lit(0.5);
    let weighted: Vec<C<T>> = samples
        .iter()
        .enumerate()
        .map(|(i, v)| if i == 0 || i == n - 1 { *v * half } else { *v })
        .collect();
    let value = crate::scalar::pairwise_sum_c(&weighted) * h;
    // Every other node, with the matching end weights.
    let last_even = if (n - 1).is_multiple_of(2) { n - 1 } else { n - 2 };
    let coarse_terms: Vec<C<T>> = (0..=last_even)
        .step_by(2)
        .map(|i| {
            let v = samples[i];
            if i == 0 || i == last_even {
                v * half
            } else {
                v
            }
        })
        .collect();
    let coarse = crate::scalar::pairwise_sum_c(&coarse_terms) * (h + h);
    let edge = samples[0].norm().max(samples[n - 1].norm());
    let abs_mass = samples.iter().map(|v| v.norm()).sum::<T>() * h;
    TrapezoidOutcome {
        value,
        coarse,
        edge,
        abs_mass,
    }
}

/// Real-valued trapezoid rule in the log coordinate.
pub(crate) fn trapezoid<T: Real, G>(q: &QuadratureSpec<T>, g: G) -> TrapezoidOutcome<T, T>
where
    G: Fn(T) -> T,
{
    let out = trapezoid_c(q, |u| creal(g(u)));
    TrapezoidOutcome {
        value: out.value.re,
        coarse: out.coarse.re,
        edge: out.edge,
        abs_mass: out.abs_mass,
    }
}

/// Gauss–Legendre rule on `[-1, 1]`.
#[derive(Clone, Debug)]
pub struct GaussLegendre<T: Real> {
    nodes: Vec<T>,
    weights: Vec<T>,
}

impl<T: Real> GaussLegendre<T> {
    /// Nodes by Newton iteration on `P_n`, seeded with the Chebyshev-like
    /// approximation `cos(π (i - 1/4) / (n + 1/2))`.
    pub fn new(n: usize) -> Self {
        assert!(n >= 1);
        let mut nodes = vec![0.0f64; n];
        let mut weights = vec![0.0f64; n];
        let nf = n as f64;
        for i in 0..n.div_ceil(2) {
            let mut x = (std::f64::consts::PI * (i as f64 + 0.75) / (nf + 0.5)).cos();
            let mut dp = 0.0;
            for _ in 0..100 {
                let (p, d) = legendre_and_derivative(n, x);
                dp = d;
                let dx = p / d;
                x -= dx;
                if dx.abs() < 1e-16 {
                    break;
                }
            }
            let (_, d) = legendre_and_derivative(n, x);
            dp = if d != 0.0 { d } else { dp };
            let w = 2.0 / ((1.0 - x * x) * dp * dp);
            nodes[i] = -x;
            nodes[n - 1 - i] = x;
            weights[i] = w;
            weights[n - 1 - i] = w;
        }
        Self {
            nodes: nodes.into_iter().map(T::lit).collect(),
            weights: weights.into_iter().map(T::lit).collect(),
        }
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    /// Nodes and weights mapped onto `[a, b]`.
    pub fn mapped(&self, a: T, b: T) -> impl Iterator<Item = (T, T)> + '_ {
        let mid = (a + b) * T::lit(0.5);
        let half = (b - a) * T::lit(0.5);
        self.nodes
            .iter()
            .zip(&self.weights)
            .map(move |(&x, &w)| (mid + half * x, half * w))
    }

    pub fn integrate<G: Fn(T) -> T>(&self, a: T, b: T, g: G) -> T {
        self.mapped(a, b).map(|(x, w)| w * g(x)).sum()
    }

    pub fn integrate_c<G: Fn(T) -> C<T>>(&self, a: T, b: T, g: G) -> C<T> {
        self.mapped(a, b).fold(creal(T::zero()), |acc, (x, w)| acc + g(x) * w)
    }

    /// Composite rule over equal panels of `[a, b]`.
    pub fn panels<G: Fn(T) -> T>(&self, a: T, b: T, panels: usize, g: G) -> T {
        let width = (b - a) / T::from_usize_lossy(panels);
        let parts: Vec<T> = (0..panels)
            .map(|k| {
                let lo = a + width * T::from_usize_lossy(k);
                self.integrate(lo, lo + width, &g)
            })
            .collect();
        crate::scalar::pairwise_sum(&parts)
    }
}

fn legendre_and_derivative(n: usize, x: f64) -> (f64, f64) {
    let mut p0 = 1.0;
    let mut p1 = x;
    for k in 2..=n {
        let kf = k as f64;
        let p2 = ((2.0 * kf - 1.0) * x * p1 - (kf - 1.0) * p0) / kf;
        p0 = p1;
        p1 = p2;
    }
    let p = if n == 0 { 1.0 } else { p1 };
    let d = n as f64 * (x * p - p0) / (x * x - 1.0);
    (p, d)
}

/// Tanh-sinh (double exponential) quadrature on a finite interval.
///
/// Returns the value and the difference between the last two levels as an
/// error estimate. Tolerates integrable endpoint singularities and jumps.
pub fn tanh_sinh<T: Real, G>(a: T, b: T, tol: T, g: G) -> (T, T)
where
    G: Fn(T) -> T,
{
    let half_pi = T::FRAC_PI_2();
    let half = (b - a) * T::lit(0.5);
    let t_max = T::lit(3.5);
    let eval = |t: T| -> T {
        let sh = half_pi * t.sinh();
        let ch = sh.cosh();
        let x = sh.tanh();
        let w = half_pi * t.cosh() / (ch * ch);
        // 1 - x and 1 + x directly, avoiding cancellation near the ends.
        let one_minus = T::one() / (sh.exp() * ch);
        let one_plus = T::one() / ((-sh).exp() * ch);
        let xa = if x > T::zero() {
            b - half * one_minus
        } else {
            a + half * one_plus
        };
        if w == T::zero() || !(xa > a && xa < b) {
            return T::zero();
        }
        let v = g(xa);
        if v.is_finite() {
            v * w * half
        } else {
            T::zero()
        }
    };
    let mut h = T::lit(0.5);
    let mut sum = eval(T::zero());
    let mut k = 1usize;
    loop {
        let t = h * T::from_usize_lossy(k);
        if t > t_max {
            break;
        }
        sum += eval(t) + eval(-t);
        k += 1;
    }
    let mut value = sum * h;
    let mut err = T::infinity();
    for _level in 0..12 {
        h *= T::lit(0.5);
        let mut add = T::zero();
        let mut k = 1usize;
        loop {
            let t = h * T::from_usize_lossy(k);
            if t > t_max {
                break;
            }
            add += eval(t) + eval(-t);
            k += 2;
        }
        sum += add;
        let next = sum * h;
        err = (next - value).abs();
        value = next;
        if err <= tol * value.abs().max(T::one()) {
            break;
        }
    }
    (value, err)
}
