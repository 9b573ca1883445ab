use crate::error::{Error, Result};
use crate::quadrature::QuadratureSpec;
use crate::scalar::{creal, Bounded, Real, C};

use super::jet::Jet;
use super::HalfLineFn;

/// Smooth function on `ℝ×₊` given in closed form.
///
/// Atoms are log-Gaussians `a·exp(-(ln x - μ)²/(2σ²))` and log-bumps
/// `a·exp(-k/((u - A)(B - u)))` with `u = ln x`, `A = ln lo`, `B = ln hi`.
/// The smart constructors [`scaled_power`](Self::scaled_power),
/// [`shifted`](Self::shifted) and [`apply_j`](Self::apply_j) keep results
/// inside the family and collapse whatever can be collapsed.
#[derive(Clone, Debug, PartialEq)]
pub enum TestFunction<T: Real = f64> {
    LogGaussian {
        amplitude: T,
        center: T,
        width: T,
    },
    LogBump {
        amplitude: T,
        lo: T,
        hi: T,
        shape: T,
    },
    /// `x^s · base(x)`
    ScaledPower {
        base: Box<TestFunction<T>>,
        exponent: T,
    },
    /// `λ_t base(x) = base(x / t)`
    Shifted {
        base: Box<TestFunction<T>>,
        t: T,
    },
    /// `Σ c_i f_i`
    Combination(Vec<(T, TestFunction<T>)>),
}

/// Upper bound for the Gaussian tail `Q(z) = P(N(0,1) > z)`.
fn gaussian_q_bound<T: Real>(z: T) -> T {
    if z <= T::zero() {
        return T::one();
    }
    let e = (-z * z * T::lit(0.5)).exp();
    let mills = e / (z * (T::TAU()).sqrt());
    (e * T::lit(0.5)).min(mills)
}

/// Majorant of `|f̂(σ + it)|` on a vertical line, valid for `|t| ≥ t₀ > 0`
/// and nonincreasing in `|t|`.
#[derive(Clone, Debug, PartialEq)]
pub enum LineEnvelope<T: Real> {
    /// `scale · exp(-width² t² / 2)`
    Gaussian { scale: T, width: T },
    /// `min_m C_m / |t|^m`, with `constants[m] = C_m`
    Powers { constants: Vec<T> },
}

impl<T: Real> LineEnvelope<T> {
    pub fn at(&self, t: T) -> T {
        let t = t.abs();
        match self {
            LineEnvelope::Gaussian { scale, width } => *scale * (-(*width * t).powi(2) * T::lit(0.5)).exp(),
            LineEnvelope::Powers { constants } => constants
                .iter()
                .enumerate()
                .map(|(m, &c)| c / t.powi(m as i32))
                .fold(T::infinity(), T::min),
        }
    }

    fn scaled(self, c: T) -> Self {
        match self {
            LineEnvelope::Gaussian { scale, width } => LineEnvelope::Gaussian {
                scale: scale * c,
                width,
            },
            LineEnvelope::Powers { constants } => LineEnvelope::Powers {
                constants: constants.into_iter().map(|x| x * c).collect(),
            },
        }
    }
}

/// Highest derivative order used for bump decay constants.
pub const BUMP_DECAY_ORDER: usize = 10;

impl<T: Real> TestFunction<T> {
    pub fn log_gaussian(amplitude: T, center: T, width: T) -> Result<Self> {
        if !(width > T::zero()) || !width.is_finite() || !center.is_finite() || !amplitude.is_finite() {
            return Err(Error::InvalidSpec(format!(
                "loggauss needs finite parameters and sigma > 0, got a={amplitude}, mu={center}, sigma={width}"
            )));
        }
        Ok(TestFunction::LogGaussian {
            amplitude,
            center,
            width,
        })
    }

    pub fn log_bump(amplitude: T, lo: T, hi: T) -> Result<Self> {
        Self::log_bump_with_shape(amplitude, lo, hi, T::one())
    }

    pub fn log_bump_with_shape(amplitude: T, lo: T, hi: T, shape: T) -> Result<Self> {
        if !(lo > T::zero() && hi > lo && shape > T::zero()) || !hi.is_finite() || !amplitude.is_finite() {
            return Err(Error::InvalidSpec(format!(
                "logbump needs 0 < lo < hi and k > 0, got lo={lo}, hi={hi}, k={shape}"
            )));
        }
        Ok(TestFunction::LogBump {
            amplitude,
            lo,
            hi,
            shape,
        })
    }

    pub fn combination(terms: Vec<(T, TestFunction<T>)>) -> Self {
        let mut flat = Vec::with_capacity(terms.len());
        for (c, f) in terms {
            match f {
                TestFunction::Combination(inner) => {
                    for (d, g) in inner {
                        flat.push((c * d, g));
                    }
                }
                other => flat.push((c, other)),
            }
        }
        if flat.len() == 1 && flat[0].0 == T::one() {
            return flat.pop().map(|(_, f)| f).expect("one term");
        }
        TestFunction::Combination(flat)
    }

    /// `self + other`
    pub fn plus(self, other: TestFunction<T>) -> Self {
        Self::combination(vec![(T::one(), self), (T::one(), other)])
    }

    /// `c · self`
    pub fn scale(self, c: T) -> Self {
        match self {
            TestFunction::LogGaussian {
                amplitude,
                center,
                width,
            } => TestFunction::LogGaussian {
                amplitude: amplitude * c,
                center,
                width,
            },
            TestFunction::LogBump {
                amplitude,
                lo,
                hi,
                shape,
            } => TestFunction::LogBump {
                amplitude: amplitude * c,
                lo,
                hi,
                shape,
            },
            TestFunction::ScaledPower { base, exponent } => TestFunction::ScaledPower {
                base: Box::new(base.scale(c)),
                exponent,
            },
            TestFunction::Shifted { base, t } => TestFunction::Shifted {
                base: Box::new(base.scale(c)),
                t,
            },
            TestFunction::Combination(terms) => {
                TestFunction::Combination(terms.into_iter().map(|(d, f)| (d * c, f)).collect())
            }
        }
    }

    /// `x ↦ x^s · self(x)`
    pub fn scaled_power(self, s: T) -> Self {
        if s == T::zero() {
            return self;
        }
        match self {
            TestFunction::LogGaussian {
                amplitude,
                center,
                width,
            } => {
                let v = width * width;
                TestFunction::LogGaussian {
                    amplitude: amplitude * (center * s + v * s * s * T::lit(0.5)).exp(),
                    center: center + v * s,
                    width,
                }
            }
            TestFunction::ScaledPower { base, exponent } => base.scaled_power(exponent + s),
            TestFunction::Combination(terms) => {
                TestFunction::Combination(terms.into_iter().map(|(c, f)| (c, f.scaled_power(s))).collect())
            }
            other => TestFunction::ScaledPower {
                base: Box::new(other),
                exponent: s,
            },
        }
    }

    /// `λ_t self`, i.e. `x ↦ self(x / t)`.
    pub fn shifted(self, t: T) -> Result<Self> {
        if !(t > T::zero()) || !t.is_finite() {
            return Err(Error::InvalidSpec(format!("shift needs t > 0, got {t}")));
        }
        if t == T::one() {
            return Ok(self);
        }
        Ok(match self {
            TestFunction::LogGaussian {
                amplitude,
                center,
                width,
            } => TestFunction::LogGaussian {
                amplitude,
                center: center + t.ln(),
                width,
            },
            TestFunction::LogBump {
                amplitude,
                lo,
                hi,
                shape,
            } => TestFunction::LogBump {
                amplitude,
                lo: lo * t,
                hi: hi * t,
                shape,
            },
            // λ_t(x^s g) = t^{-s} x^s λ_t g
            TestFunction::ScaledPower { base, exponent } => {
                base.shifted(t)?.scaled_power(exponent).scale(t.powf(-exponent))
            }
            TestFunction::Shifted { base, t: inner } => base.shifted(t * inner)?,
            TestFunction::Combination(terms) => TestFunction::Combination(
                terms
                    .into_iter()
                    .map(|(c, f)| Ok((c, f.shifted(t)?)))
                    .collect::<Result<_>>()?,
            ),
        })
    }

    /// `J f(x) = x⁻¹ f(x⁻¹)`.
    pub fn apply_j(&self) -> Self {
        match self {
            TestFunction::LogGaussian {
                amplitude,
                center,
                width,
            } => TestFunction::LogGaussian {
                amplitude: *amplitude,
                center: -*center,
                width: *width,
            }
            .scaled_power(-T::one()),
            TestFunction::LogBump {
                amplitude,
                lo,
                hi,
                shape,
            } => TestFunction::LogBump {
                amplitude: *amplitude,
                lo: hi.recip(),
                hi: lo.recip(),
                shape: *shape,
            }
            .scaled_power(-T::one()),
            TestFunction::ScaledPower { base, exponent } => base.apply_j().scaled_power(-*exponent),
            // J(λ_t g) = t · λ_{1/t}(J g)
            TestFunction::Shifted { base, t } => base
                .apply_j()
                .shifted(t.recip())
                .expect("t > 0 by construction")
                .scale(*t),
            TestFunction::Combination(terms) => {
                TestFunction::Combination(terms.iter().map(|(c, f)| (*c, f.apply_j())).collect())
            }
        }
    }

    /// `f(e^u)`.
    pub fn eval_log(&self, u: T) -> T {
        match self {
            TestFunction::LogGaussian {
                amplitude,
                center,
                width,
            } => {
                let z = (u - *center) / *width;
                *amplitude * (-z * z * T::lit(0.5)).exp()
            }
            TestFunction::LogBump {
                amplitude,
                lo,
                hi,
                shape,
            } => {
                let (a, b) = (lo.ln(), hi.ln());
                if u <= a || u >= b {
                    return T::zero();
                }
                *amplitude * (-*shape / ((u - a) * (b - u))).exp()
            }
            TestFunction::ScaledPower { base, exponent } => {
                let g = base.eval_log(u);
                if g == T::zero() {
                    T::zero()
                } else {
                    (*exponent * u).exp() * g
                }
            }
            TestFunction::Shifted { base, t } => base.eval_log(u - t.ln()),
            TestFunction::Combination(terms) => terms.iter().map(|(c, f)| *c * f.eval_log(u)).sum(),
        }
    }

    /// `f(x)` for `x > 0`.
    pub fn eval(&self, x: T) -> Result<T> {
        if !(x > T::zero()) {
            return Err(Error::Domain(format!("test functions live on x > 0, got x = {x}")));
        }
        Ok(self.value(x))
    }

    /// `f(x)` without the domain check.
    pub fn value(&self, x: T) -> T {
        self.eval_log(x.ln())
    }

    /// `τ(f) = f(1)`.
    pub fn tau(&self) -> T {
        self.eval_log(T::zero())
    }

    /// `∂f(x) = f(x) ln x`.
    pub fn derivation(&self) -> Derivation<'_, T> {
        Derivation { f: self }
    }

    /// Whether [`mellin_closed_form`](Self::mellin_closed_form) is available.
    pub fn has_closed_form_mellin(&self) -> bool {
        match self {
            TestFunction::LogGaussian { .. } => true,
            TestFunction::LogBump { .. } => false,
            TestFunction::ScaledPower { base, .. } | TestFunction::Shifted { base, .. } => {
                base.has_closed_form_mellin()
            }
            TestFunction::Combination(terms) => terms.iter().all(|(_, f)| f.has_closed_form_mellin()),
        }
    }

    /// Exact `f̂(s) = ∫ f(x) x^s d×x`; log-bumps have no closed form.
    pub fn mellin_closed_form(&self, s: C<T>) -> Result<C<T>> {
        match self {
            TestFunction::LogGaussian {
                amplitude,
                center,
                width,
            } => {
                let v = *width * *width;
                let e = (s * *center + s * s * (v * T::lit(0.5))).exp();
                Ok(e * (*amplitude * *width * T::TAU().sqrt()))
            }
            TestFunction::LogBump { .. } => Err(Error::Unsupported(
                "log-bump Mellin transforms are computed by quadrature".into(),
            )),
            TestFunction::ScaledPower { base, exponent } => base.mellin_closed_form(s + *exponent),
            TestFunction::Shifted { base, t } => Ok((s * t.ln()).exp() * base.mellin_closed_form(s)?),
            TestFunction::Combination(terms) => {
                let mut acc = creal(T::zero());
                for (c, f) in terms {
                    acc += f.mellin_closed_form(s)? * *c;
                }
                Ok(acc)
            }
        }
    }

    /// Interval in `u = ln x` outside of which `|f|` is negligible (below
    /// `rel · max|f|` for log-Gaussians, exactly zero for bumps).
    pub fn log_support(&self, rel: T) -> (T, T) {
        match self {
            TestFunction::LogGaussian { center, width, .. } => {
                let r = (T::lit(-2.0) * rel.ln()).sqrt() * *width;
                (*center - r, *center + r)
            }
            TestFunction::LogBump { lo, hi, .. } => (lo.ln(), hi.ln()),
            TestFunction::ScaledPower { base, exponent } => match base.as_ref().clone().scaled_power(*exponent) {
                TestFunction::ScaledPower { base, .. } => base.log_support(rel),
                collapsed => collapsed.log_support(rel),
            },
            TestFunction::Shifted { base, t } => {
                let (a, b) = base.log_support(rel);
                (a + t.ln(), b + t.ln())
            }
            TestFunction::Combination(terms) => {
                terms
                    .iter()
                    .fold((T::infinity(), T::neg_infinity()), |(lo, hi), (_, f)| {
                        let (a, b) = f.log_support(rel);
                        (lo.min(a), hi.max(b))
                    })
            }
        }
    }

    /// Bound on `∫_Y^∞ y^w |f(y)| d×y` (majorant `Σ|c||f_i|` for combinations).
    pub fn upper_tail_integral(&self, y: T, w: T) -> T {
        match self {
            TestFunction::LogGaussian {
                amplitude,
                center,
                width,
            } => {
                let v = *width * *width;
                let mass = amplitude.abs() * (*center * w + v * w * w * T::lit(0.5)).exp() * *width * T::TAU().sqrt();
                mass * gaussian_q_bound((y.ln() - *center - v * w) / *width)
            }
            TestFunction::LogBump { amplitude, lo, hi, .. } => {
                if y >= *hi {
                    return T::zero();
                }
                let from = y.max(*lo);
                amplitude.abs() * lo.powf(w).max(hi.powf(w)) * (*hi / from).ln()
            }
            TestFunction::ScaledPower { base, exponent } => base.upper_tail_integral(y, w + *exponent),
            TestFunction::Shifted { base, t } => t.powf(w) * base.upper_tail_integral(y / *t, w),
            TestFunction::Combination(terms) => terms.iter().map(|(c, f)| c.abs() * f.upper_tail_integral(y, w)).sum(),
        }
    }

    /// Bound on `∫_0^Y y^w |f(y)| d×y`.
    pub fn lower_tail_integral(&self, y: T, w: T) -> T {
        match self {
            TestFunction::LogGaussian {
                amplitude,
                center,
                width,
            } => {
                let v = *width * *width;
                let mass = amplitude.abs() * (*center * w + v * w * w * T::lit(0.5)).exp() * *width * T::TAU().sqrt();
                mass * gaussian_q_bound((*center + v * w - y.ln()) / *width)
            }
            TestFunction::LogBump { amplitude, lo, hi, .. } => {
                if y <= *lo {
                    return T::zero();
                }
                let to = y.min(*hi);
                amplitude.abs() * lo.powf(w).max(hi.powf(w)) * (to / *lo).ln()
            }
            TestFunction::ScaledPower { base, exponent } => base.lower_tail_integral(y, w + *exponent),
            TestFunction::Shifted { base, t } => t.powf(w) * base.lower_tail_integral(y / *t, w),
            TestFunction::Combination(terms) => terms.iter().map(|(c, f)| c.abs() * f.lower_tail_integral(y, w)).sum(),
        }
    }

    /// `y₀` such that `y^w |f(y)|` (majorant) is nonincreasing on `[y₀, ∞)`.
    pub fn monotone_threshold(&self, w: T) -> T {
        match self {
            TestFunction::LogGaussian { center, width, .. } => (*center + *width * *width * w).exp(),
            TestFunction::LogBump { hi, .. } => *hi,
            TestFunction::ScaledPower { base, exponent } => base.monotone_threshold(w + *exponent),
            TestFunction::Shifted { base, t } => *t * base.monotone_threshold(w),
            TestFunction::Combination(terms) => terms
                .iter()
                .map(|(_, f)| f.monotone_threshold(w))
                .fold(T::zero(), T::max),
        }
    }

    /// `y₁` such that `y^w |f(y)|` (majorant) is nondecreasing on `(0, y₁]`.
    pub fn rising_threshold(&self, w: T) -> T {
        match self {
            TestFunction::LogGaussian { center, width, .. } => (*center + *width * *width * w).exp(),
            TestFunction::LogBump { lo, .. } => *lo,
            TestFunction::ScaledPower { base, exponent } => base.rising_threshold(w + *exponent),
            TestFunction::Shifted { base, t } => *t * base.rising_threshold(w),
            TestFunction::Combination(terms) => terms
                .iter()
                .map(|(_, f)| f.rising_threshold(w))
                .fold(T::infinity(), T::min),
        }
    }

    /// Bound on the Mellin integrand mass outside `[u_min, u_max]` on the
    /// line `Re s = sigma`.
    pub fn mellin_window_tail(&self, u_min: T, u_max: T, sigma: T) -> T {
        self.lower_tail_integral(u_min.exp(), sigma) + self.upper_tail_integral(u_max.exp(), sigma)
    }

    /// Jet of `u ↦ f(e^u)` at `u0`.
    pub fn jet_log(&self, u0: T, order: usize) -> Jet<T> {
        match self {
            TestFunction::LogGaussian {
                amplitude,
                center,
                width,
            } => {
                let z = Jet::variable(u0 - *center, order).scale(width.recip());
                (&z * &z).scale(T::lit(-0.5)).exp().scale(*amplitude)
            }
            TestFunction::LogBump {
                amplitude,
                lo,
                hi,
                shape,
            } => {
                let (a, b) = (lo.ln(), hi.ln());
                if u0 <= a || u0 >= b {
                    return Jet::constant(T::zero(), order);
                }
                let left = Jet::variable(u0 - a, order);
                let right = Jet::variable(u0 - b, order).scale(-T::one());
                (&left * &right).recip().scale(-*shape).exp().scale(*amplitude)
            }
            TestFunction::ScaledPower { base, exponent } => {
                let e = Jet::variable(u0, order).scale(*exponent).exp();
                &e * &base.jet_log(u0, order)
            }
            TestFunction::Shifted { base, t } => base.jet_log(u0 - t.ln(), order),
            TestFunction::Combination(terms) => terms
                .iter()
                .map(|(c, f)| f.jet_log(u0, order).scale(*c))
                .fold(Jet::constant(T::zero(), order), |a, b| a + b),
        }
    }

    /// Majorant of `|f̂(σ + it)|` for large `|t|`, one entry per atom.
    pub fn line_envelope(&self, sigma: T) -> Vec<LineEnvelope<T>> {
        match self {
            TestFunction::LogGaussian {
                amplitude,
                center,
                width,
            } => {
                let scale = amplitude.abs()
                    * *width
                    * T::TAU().sqrt()
                    * (*center * sigma + *width * *width * sigma * sigma * T::lit(0.5)).exp();
                vec![LineEnvelope::Gaussian { scale, width: *width }]
            }
            TestFunction::LogBump { .. } => {
                vec![LineEnvelope::Powers {
                    constants: self.decay_constants(sigma, BUMP_DECAY_ORDER, 4096),
                }]
            }
            TestFunction::ScaledPower { base, exponent } => {
                if let TestFunction::LogBump { .. } = **base {
                    return vec![LineEnvelope::Powers {
                        constants: self.decay_constants(sigma, BUMP_DECAY_ORDER, 4096),
                    }];
                }
                base.line_envelope(sigma + *exponent)
            }
            TestFunction::Shifted { base, t } => base
                .line_envelope(sigma)
                .into_iter()
                .map(|e| e.scaled(t.powf(sigma)))
                .collect(),
            TestFunction::Combination(terms) => terms
                .iter()
                .flat_map(|(c, f)| f.line_envelope(sigma).into_iter().map(move |e| e.scaled(c.abs())))
                .collect(),
        }
    }

    /// `C_m = ∫ |d^m/du^m (e^{σu} f(e^u))| du` for `m = 0..=order`, so that
    /// `|f̂(σ + it)| ≤ C_m / |t|^m`. Trapezoid over the support with a 5%
    /// safety margin; intended for compactly supported members.
    pub fn decay_constants(&self, sigma: T, order: usize, n_points: usize) -> Vec<T> {
        let (a, b) = self.log_support(T::lit(1e-300));
        let h = (b - a) / T::from_usize_lossy(n_points);
        let mut acc = vec![T::zero(); order + 1];
        for i in 1..n_points {
            let u = a + h * T::from_usize_lossy(i);
            let g = &Jet::variable(u, order).scale(sigma).exp() * &self.jet_log(u, order);
            for (m, slot) in acc.iter_mut().enumerate() {
                *slot += g.derivative(m).abs();
            }
        }
        acc.into_iter().map(|c| c * h * T::lit(1.05)).collect()
    }

    /// Diagnostic weighted norm `∫ |D^m f(x)|² x^{2s} d×x` with `D = x d/dx`.
    pub fn weighted_norm(&self, m: usize, s: T, q: &QuadratureSpec<T>) -> T {
        let h = q.step();
        let vals: Vec<T> = q
            .nodes()
            .map(|u| {
                let d = self.jet_log(u, m).derivative(m);
                d * d * (T::lit(2.0) * s * u).exp()
            })
            .collect();
        crate::scalar::pairwise_sum(&vals) * h
    }

    /// Multiplicative convolution `(f * g)(x) = ∫ f(t) g(x/t) d×t` by the
    /// trapezoid rule in `ln t`.
    pub fn mult_convolve(&self, g: &TestFunction<T>, x: T, q: &QuadratureSpec<T>) -> Result<Bounded<T, T>> {
        q.validate()?;
        if !(x > T::zero()) {
            return Err(Error::Domain(format!("convolution evaluated at x = {x}")));
        }
        let lx = x.ln();
        let out = crate::quadrature::trapezoid(q, |u| self.eval_log(u) * g.eval_log(lx - u));
        let est = (out.value - out.coarse).abs() + out.edge + T::epsilon() * T::lit(16.0) * out.abs_mass;
        if est > q.tolerance {
            return Err(Error::ToleranceNotMet {
                estimate: est.as_f64(),
                tolerance: q.tolerance.as_f64(),
            });
        }
        Ok(Bounded::new(out.value, est))
    }

    /// Closed-form convolution of two log-Gaussians.
    pub fn convolve_log_gaussians(&self, g: &TestFunction<T>) -> Option<TestFunction<T>> {
        match (self, g) {
            (
                TestFunction::LogGaussian {
                    amplitude: a1,
                    center: m1,
                    width: s1,
                },
                TestFunction::LogGaussian {
                    amplitude: a2,
                    center: m2,
                    width: s2,
                },
            ) => {
                let v = *s1 * *s1 + *s2 * *s2;
                let amp = *a1 * *a2 * T::TAU().sqrt() * *s1 * *s2 / v.sqrt();
                Some(TestFunction::LogGaussian {
                    amplitude: amp,
                    center: *m1 + *m2,
                    width: v.sqrt(),
                })
            }
            _ => None,
        }
    }
}

impl<T: Real> HalfLineFn<T> for TestFunction<T> {
    fn eval(&self, x: T) -> T {
        self.value(x)
    }

    fn weighted_tail(&self, x: T, n: usize, j: T) -> T {
        if let TestFunction::Combination(terms) = self {
            return terms.iter().map(|(c, f)| c.abs() * f.weighted_tail(x, n, j)).sum();
        }
        let from = x * T::from_usize_lossy(n);
        if from < self.monotone_threshold(j) {
            // support of a bump: every remaining term vanishes
            if let Some(hi) = self.support_end() {
                if x * T::from_usize_lossy(n + 1) >= hi {
                    return T::zero();
                }
            }
            return T::infinity();
        }
        x.powf(-j - T::one()) * self.upper_tail_integral(from, j + T::one())
    }
}

impl<T: Real> TestFunction<T> {
    /// Right end of the support for compactly supported members.
    pub fn support_end(&self) -> Option<T> {
        match self {
            TestFunction::LogGaussian { .. } => None,
            TestFunction::LogBump { hi, .. } => Some(*hi),
            TestFunction::ScaledPower { base, .. } => base.support_end(),
            TestFunction::Shifted { base, t } => base.support_end().map(|h| h * *t),
            TestFunction::Combination(terms) => terms
                .iter()
                .map(|(_, f)| f.support_end())
                .try_fold(T::zero(), |acc, h| h.map(|h| acc.max(h))),
        }
    }

    /// Left end of the support for compactly supported members.
    pub fn support_start(&self) -> Option<T> {
        match self {
            TestFunction::LogGaussian { .. } => None,
            TestFunction::LogBump { lo, .. } => Some(*lo),
            TestFunction::ScaledPower { base, .. } => base.support_start(),
            TestFunction::Shifted { base, t } => base.support_start().map(|h| h * *t),
            TestFunction::Combination(terms) => terms
                .iter()
                .map(|(_, f)| f.support_start())
                .try_fold(T::infinity(), |acc, h| h.map(|h| acc.min(h))),
        }
    }
}

/// `x ↦ f(x) ln x`.
#[derive(Clone, Copy, Debug)]
pub struct Derivation<'a, T: Real> {
    f: &'a TestFunction<T>,
}

impl<T: Real> Derivation<'_, T> {
    pub fn eval_log(&self, u: T) -> T {
        self.f.eval_log(u) * u
    }

    pub fn tau(&self) -> T {
        self.eval_log(T::zero())
    }
}

impl<T: Real> HalfLineFn<T> for Derivation<'_, T> {
    fn eval(&self, x: T) -> T {
        self.eval_log(x.ln())
    }

    fn weighted_tail(&self, x: T, n: usize, j: T) -> T {
        // |ln(kx)| ≤ |ln x| + (2/e) √k
        let two_over_e = T::lit(2.0) / T::one().exp();
        x.ln().abs() * self.f.weighted_tail(x, n, j) + two_over_e * self.f.weighted_tail(x, n, j + T::lit(0.5))
    }
}
