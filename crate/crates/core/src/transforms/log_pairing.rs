//! `⟨𝓕(ln|x|), ψ⟩ = ∫ ln|x| (𝓕ψ)(x) dx`.
//!
//! Two inputs are supported. A Gaussian-family member is transformed by the
//! trapezoid rule on a real grid. The shifted profile `ψ(y) = f(|1 - y|)` of a
//! test function with closed-form Mellin transform uses
//! `𝓕ψ(x) = e^{2πix} C_f(x)`, `C_f(x) = 2∫₀^∞ f(v) cos(2πxv) dv`, and `C_f` is
//! evaluated by a Mellin–Barnes integral over a vertical line.

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::function_spaces::{Parity, ParityFunction, TestFunction};
use crate::quadrature::GaussLegendre;
use crate::scalar::{cplx, creal, pairwise_sum, Real, C};
use crate::special_functions::ln_gamma;

/// What to pair against `𝓕(ln|x|)`.
#[derive(Clone, Copy, Debug)]
pub enum LogPairingInput<'a, T: Real> {
    Parity(&'a ParityFunction<T>),
    /// `ψ(y) = f(|1 - y/d|)` with `d = dilation`.
    Profile {
        f: &'a TestFunction<T>,
        dilation: T,
    },
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct LogPairingOptions<T: Real = f64> {
    pub tolerance: T,
    /// Grid density multiplier (1 is the default grid).
    pub resolution: T,
    /// Also evaluate on an independent second grid and fold the difference
    /// into the error estimate.
    pub second_grid: bool,
}

impl<T: Real> Default for LogPairingOptions<T> {
    fn default() -> Self {
        Self {
            tolerance: T::lit(1e-10),
            resolution: T::one(),
            second_grid: true,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct LogPairing<T: Real = f64> {
    pub value: C<T>,
    pub est_error: T,
    /// Truncation point of the `x` integral.
    pub x_max: T,
}

pub fn pair_log_fourier<T: Real>(input: LogPairingInput<'_, T>, opts: &LogPairingOptions<T>) -> Result<LogPairing<T>> {
    if !(opts.tolerance > T::zero()) || !(opts.resolution > T::zero()) {
        return Err(Error::InvalidSpec("tolerance and resolution must be positive".into()));
    }
    let (first, second) = match input {
        LogPairingInput::Parity(psi) => {
            if psi.parity() == Parity::Odd {
                // ln|x| is even and 𝓕ψ is odd
                return Ok(LogPairing {
                    value: creal(T::zero()),
                    est_error: T::zero(),
                    x_max: T::zero(),
                });
            }
            let a = parity_pairing(psi, opts.resolution)?;
            let b = if opts.second_grid {
                Some(parity_pairing(psi, opts.resolution * T::lit(1.37))?)
            } else {
                None
            };
            (a, b)
        }
        LogPairingInput::Profile { f, dilation } => {
            if !(dilation > T::zero()) {
                return Err(Error::Domain(format!("dilation must be positive, got {dilation}")));
            }
            let a = profile_pairing(f, dilation, opts.resolution, 16, opts.tolerance)?;
            let b = if opts.second_grid {
                Some(profile_pairing(
                    f,
                    dilation,
                    opts.resolution * T::lit(1.29),
                    20,
                    opts.tolerance,
                )?)
            } else {
                None
            };
            (a, b)
        }
    };
    let diff = second.map(|b| (b.value - first.value).norm()).unwrap_or(T::zero());
    let out = LogPairing {
        est_error: first.est_error + diff,
        ..first
    };
    if out.est_error > opts.tolerance {
        return Err(Error::ToleranceNotMet {
            estimate: out.est_error.as_f64(),
            tolerance: opts.tolerance.as_f64(),
        });
    }
    Ok(out)
}

/// Smallest `r` with `|c| r^k e^{-β r²} < floor` past the peak, per term.
fn gaussian_cutoff<T: Real>(psi: &ParityFunction<T>, floor: T) -> T {
    let pi = T::PI();
    let mut r_max = T::one();
    for t in psi.terms() {
        let beta = t.alpha * pi;
        let k = T::from_usize_lossy(t.degree as usize);
        let mut r = (k / (T::lit(2.0) * beta)).sqrt().max(T::lit(0.5));
        while t.coeff.norm() * r.powf(k) * (-beta * r * r).exp() > floor {
            r *= T::lit(1.05);
        }
        r_max = r_max.max(r);
    }
    r_max
}

fn parity_pairing<T: Real>(psi: &ParityFunction<T>, resolution: T) -> Result<LogPairing<T>> {
    let floor = T::lit(1e-22);
    let y_max = gaussian_cutoff(psi, floor);
    let x_max = gaussian_cutoff(&psi.fourier(), floor);
    // trapezoid on [0, y_max] for the even integrand; aliasing sits at 1/h
    let h = T::one() / ((T::lit(2.0) * x_max + T::lit(8.0)) * resolution);
    let ny = (y_max / h).ceil().to_usize().unwrap_or(1 << 24) + 1;
    let ys: Vec<(T, C<T>)> = (0..=ny)
        .map(|i| {
            let y = h * T::from_usize_lossy(i);
            let w = if i == 0 { T::lit(0.5) } else { T::one() };
            (y, psi.eval(y) * w)
        })
        .collect();
    let transform = |x: T| -> C<T> {
        let mut acc = creal(T::zero());
        for &(y, v) in &ys {
            acc += v * (T::TAU() * x * y).cos();
        }
        acc * (h * T::lit(2.0))
    };
    // ∫₀^∞ ln x F(x) dx in u = ln x
    let u_min = T::lit(-48.0);
    let u_max = x_max.ln();
    let du = T::lit(0.05) / resolution;
    let nu = ((u_max - u_min) / du).ceil().to_usize().unwrap_or(1 << 24);
    let du = (u_max - u_min) / T::from_usize_lossy(nu);
    let vals: Vec<C<T>> = (0..=nu)
        .into_par_iter()
        .map(|i| {
            let u = u_min + du * T::from_usize_lossy(i);
            let w = if i == 0 || i == nu { T::lit(0.5) } else { T::one() };
            transform(u.exp()) * (u * u.exp() * w)
        })
        .collect();
    let re: Vec<T> = vals.iter().map(|v| v.re).collect();
    let im: Vec<T> = vals.iter().map(|v| v.im).collect();
    let value = cplx(pairwise_sum(&re), pairwise_sum(&im)) * (du * T::lit(2.0));
    // lower end: |F| ≤ F_max, ∫₀^{e^{u_min}} |ln x| dx; upper end below the floor
    let f_max: T = psi.fourier().terms().iter().map(|t| t.coeff.norm()).sum();
    let tail = T::lit(2.0) * f_max * u_min.exp() * (T::one() - u_min) + T::lit(4.0) * floor * x_max;
    Ok(LogPairing {
        value,
        est_error: tail,
        x_max,
    })
}

/// `ln sin z`, stable for large `|Im z|`.
fn ln_sin<T: Real>(z: C<T>) -> C<T> {
    if z.im < T::zero() {
        return ln_sin(z.conj()).conj();
    }
    // sin z = e^{-iz} (1 - e^{2iz}) i/2
    let i = cplx(T::zero(), T::one());
    let e = (i * z * T::lit(2.0)).exp();
    -i * z + ((creal(T::one()) - e) * i * T::lit(0.5)).ln()
}

/// `ln(Γ(1-s) sin(πs/2))`.
fn ln_kernel<T: Real>(s: C<T>) -> Result<C<T>> {
    Ok(ln_gamma(creal(T::one()) - s)? + ln_sin(s * (T::PI() * T::lit(0.5))))
}

/// Nodes of the Mellin–Barnes integral on the line `Re s = c`:
/// `C_f(x) = offset + (2/π) h Σ' Re[a_j (2πx)^{c-1+i t_j}]`.
struct BarnesLine<T: Real> {
    c: T,
    h: T,
    coeffs: Vec<C<T>>,
    offset: T,
}

impl<T: Real> BarnesLine<T> {
    fn new(f: &TestFunction<T>, c: T, resolution: T) -> Result<Self> {
        let h = T::PI() / (T::lit(40.0) * resolution);
        let envelopes = f.line_envelope(c);
        let env = |t: T| envelopes.iter().map(|e| e.at(t)).sum::<T>();
        let mut coeffs = Vec::new();
        let mut j = 0usize;
        loop {
            let t = h * T::from_usize_lossy(j);
            let s = cplx(c, t);
            let a = f.mellin_closed_form(s)? * ln_kernel(s)?.exp();
            let w = if j == 0 { T::lit(0.5) } else { T::one() };
            coeffs.push(a * w);
            // stop once the envelope times the kernel is negligible
            if t > T::one() {
                let k = ln_kernel(s)?.re.exp();
                if env(t) * k < T::lit(1e-24) {
                    break;
                }
            }
            j += 1;
            if j > 2_000_000 {
                return Err(Error::Unsupported("Mellin–Barnes line does not decay".into()));
            }
        }
        let offset = if c > T::one() {
            T::lit(2.0) * f.mellin_closed_form(creal(T::one()))?.re
        } else {
            T::zero()
        };
        Ok(Self { c, h, coeffs, offset })
    }

    fn eval(&self, x: T) -> T {
        if x == T::zero() && self.c > T::one() {
            return self.offset;
        }
        let l = (T::TAU() * x).ln();
        let step = cplx(T::zero(), self.h * l).exp();
        let mut acc = T::zero();
        let mut rot = creal(T::one());
        for (j, a) in self.coeffs.iter().enumerate() {
            if j % 32 == 0 {
                rot = cplx(T::zero(), self.h * T::from_usize_lossy(j) * l).exp();
            }
            acc += (*a * rot).re;
            rot *= step;
        }
        self.offset + acc * ((self.c - T::one()) * l).exp() * self.h * T::lit(2.0) / T::PI()
    }

    /// `(1/π) ∫ |a(t)| dt`, bounding `|C_f(x) - offset| (2πx)^{1-c}`.
    fn modulus(&self) -> T {
        let s: T = self.coeffs.iter().map(|a| a.norm()).sum();
        s * self.h * T::lit(2.0) / T::PI()
    }
}

/// `C_f(x) = 2∫₀^∞ f(v) cos(2πxv) dv` by Mellin–Barnes.
struct CosineTransform<T: Real> {
    small: BarnesLine<T>,
    large: BarnesLine<T>,
}

impl<T: Real> CosineTransform<T> {
    fn new(f: &TestFunction<T>, resolution: T) -> Result<Self> {
        if !f.has_closed_form_mellin() {
            return Err(Error::Unsupported(
                "Mellin–Barnes duality needs a closed-form Mellin transform".into(),
            ));
        }
        Ok(Self {
            small: BarnesLine::new(f, T::lit(1.5), resolution)?,
            large: BarnesLine::new(f, T::lit(0.5), resolution)?,
        })
    }

    fn eval(&self, x: T) -> T {
        if x * T::TAU() < T::one() {
            self.small.eval(x)
        } else {
            self.large.eval(x)
        }
    }
}

/// `M_c` with `|C_f(y)| ≤ M_c (2πy)^{c-1}` for `y > 0` and `c < 1`.
pub(crate) fn cosine_transform_modulus<T: Real>(f: &TestFunction<T>, c: T) -> Result<T> {
    if !f.has_closed_form_mellin() {
        return Err(Error::Unsupported(
            "Mellin–Barnes bound needs a closed-form Mellin transform".into(),
        ));
    }
    Ok(BarnesLine::new(f, c, T::lit(0.5))?.modulus())
}

/// Tail `2∫_X^∞ |ln y| |C_f(y)| dy` using the line `Re s = c < 0`.
fn cosine_tail<T: Real>(f: &TestFunction<T>, x: T) -> Result<T> {
    let mut best = T::infinity();
    for m in 1..=8 {
        let c = -T::from_usize_lossy(m);
        let mc = cosine_transform_modulus(f, c)?;
        let bound = T::lit(2.0) * mc * T::TAU().powf(c - T::one()) * x.powf(c) * (x.ln() / -c + T::one() / (c * c));
        best = best.min(bound);
    }
    Ok(best)
}

fn profile_pairing<T: Real>(
    f: &TestFunction<T>,
    dilation: T,
    resolution: T,
    order: usize,
    tolerance: T,
) -> Result<LogPairing<T>> {
    let cf = CosineTransform::new(f, resolution)?;
    // y = d·x; I_d = 2∫₀^∞ ln(y/d) cos(2πy) C_f(y) dy
    let target = tolerance * T::lit(1e-2);
    let mut y_max = T::lit(8.0);
    let mut tail = cosine_tail(f, y_max)?;
    while tail > target && y_max < T::lit(2e5) {
        y_max *= T::lit(2.0);
        tail = cosine_tail(f, y_max)?;
    }
    if tail > target {
        return Err(Error::WindowTooSmall {
            what: "log pairing",
            tail: tail.as_f64(),
            tolerance: target.as_f64(),
        });
    }
    let ln_d = dilation.ln();
    let gl = GaussLegendre::<T>::new(order);
    let integrand = |y: T| (y.ln() - ln_d) * (T::TAU() * y).cos() * cf.eval(y);
    // (0, 1]: panels in u = ln y
    let u_min = T::lit(-48.0);
    let n_low = 48usize;
    let width = -u_min / T::from_usize_lossy(n_low);
    let panel = |a: T, b: T, log_scale: bool| -> (T, T) {
        let mut sum = T::zero();
        let mut abs = T::zero();
        for (z, w) in gl.mapped(a, b) {
            let v = if log_scale {
                let y = z.exp();
                integrand(y) * y * w
            } else {
                integrand(z) * w
            };
            sum += v;
            abs += v.abs();
        }
        (sum, abs)
    };
    let low: Vec<(T, T)> = (0..n_low)
        .into_par_iter()
        .map(|k| {
            let a = u_min + width * T::from_usize_lossy(k);
            panel(a, a + width, true)
        })
        .collect();
    // [1, y_max]: one panel per period
    let n_high = (y_max - T::one()).ceil().to_usize().unwrap_or(1);
    let high: Vec<(T, T)> = (0..n_high)
        .into_par_iter()
        .map(|k| {
            let a = T::one() + T::from_usize_lossy(k);
            panel(a, a + T::one(), false)
        })
        .collect();
    let sums: Vec<T> = low.iter().chain(&high).map(|p| p.0).collect();
    let mass: T = low.iter().chain(&high).map(|p| p.1).sum();
    let value = pairwise_sum(&sums) * T::lit(2.0);
    let c0 = cf.small.offset.abs() + cf.small.modulus();
    let near_zero = T::lit(2.0) * c0 * u_min.exp() * (T::one() - u_min + ln_d.abs());
    // each node value carries a few ulps from the Barnes sum
    let rounding = T::epsilon() * T::lit(64.0) * mass * T::lit(2.0);
    Ok(LogPairing {
        value: creal(value),
        est_error: tail + near_zero + rounding,
        x_max: y_max / dilation,
    })
}
