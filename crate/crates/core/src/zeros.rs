//! Ordinates of nontrivial zeros: computed from sign changes of the Hardy
//! Z-function, or ingested from a text table.

use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::scalar::{cplx, Real};
use crate::special_functions::{hardy_z, theta, xi};

/// Grid step of the sign-change scan.
pub const SCAN_STEP: f64 = 0.05;

/// Largest height accepted by [`find_zeros`].
pub const MAX_HEIGHT: f64 = 120.0;

#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ZeroSource {
    Computed,
    Ingested(PathBuf),
}

/// Sorted positive ordinates `γ₁ < γ₂ < …` of zeros `1/2 + iγ`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ZeroTable<T: Real = f64> {
    ordinates: Vec<T>,
    height_bound: T,
    precision: T,
    source: ZeroSource,
}

impl<T: Real> ZeroTable<T> {
    pub fn new(ordinates: Vec<T>, height_bound: T, precision: T, source: ZeroSource) -> Result<Self> {
        if !(precision > T::zero()) {
            return Err(Error::InvalidSpec(format!(
                "zero table precision must be positive, got {precision}"
            )));
        }
        for w in ordinates.windows(2) {
            if !(w[1] > w[0]) {
                return Err(Error::InvalidSpec(format!("ordinates not increasing at {}", w[1])));
            }
        }
        if let Some(&g) = ordinates.first() {
            if !(g > T::zero()) {
                return Err(Error::InvalidSpec(format!("ordinate {g} is not positive")));
            }
        }
        if let Some(&g) = ordinates.last() {
            if g > height_bound {
                return Err(Error::InvalidSpec(format!(
                    "ordinate {g} exceeds height bound {height_bound}"
                )));
            }
        }
        Ok(Self {
            ordinates,
            height_bound,
            precision,
            source,
        })
    }

    pub fn ordinates(&self) -> &[T] {
        &self.ordinates
    }

    pub fn height_bound(&self) -> T {
        self.height_bound
    }

    pub fn precision(&self) -> T {
        self.precision
    }

    pub fn source(&self) -> &ZeroSource {
        &self.source
    }

    pub fn len(&self) -> usize {
        self.ordinates.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ordinates.is_empty()
    }

    /// The ordinates `≤ height`, as a table of that height.
    pub fn truncated(&self, height: T) -> Self {
        let end = self.ordinates.partition_point(|&g| g <= height);
        Self {
            ordinates: self.ordinates[..end].to_vec(),
            height_bound: height.min(self.height_bound),
            precision: self.precision,
            source: self.source.clone(),
        }
    }

    /// Text form read by [`load_zeros`].
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let source = match &self.source {
            ZeroSource::Computed => "computed".to_string(),
            ZeroSource::Ingested(p) => format!("ingested from {}", p.display()),
        };
        let _ = writeln!(out, "# nontrivial zeta zeros 1/2 + i*gamma ({source})");
        let _ = writeln!(out, "# height_bound: {}", self.height_bound);
        let _ = writeln!(out, "# precision: {:e}", self.precision);
        let digits = (-self.precision.log10()).ceil().to_usize().unwrap_or(12).clamp(1, 17) + 1;
        for g in &self.ordinates {
            let _ = writeln!(out, "{:.*}", digits, g.as_f64());
        }
        out
    }
}

/// Riemann–von Mangoldt estimate `θ(T)/π + 1` of the number of zeros up to `T`.
pub fn counting_estimate<T: Real>(height: T) -> T {
    theta(height) / T::PI() + T::one()
}

/// Zeros `0 < γ ≤ height`: sign changes of `Z` on a grid of step
/// [`SCAN_STEP`], refined by bisection to `precision`.
pub fn find_zeros<T: Real>(height: T, precision: T) -> Result<ZeroTable<T>> {
    find_zeros_with_step(height, precision, T::lit(SCAN_STEP))
}

pub fn find_zeros_with_step<T: Real>(height: T, precision: T, step: T) -> Result<ZeroTable<T>> {
    if !(height >= T::zero()) || height > T::lit(MAX_HEIGHT) {
        return Err(Error::Domain(format!(
            "zero search height must lie in [0, {MAX_HEIGHT}], got {height}"
        )));
    }
    if !(precision >= T::lit(1e-9)) {
        return Err(Error::Domain(format!(
            "zero precision must be at least 1e-9, got {precision}"
        )));
    }
    if !(step > T::zero()) {
        return Err(Error::Domain(format!("scan step must be positive, got {step}")));
    }
    let n = (height / step).ceil().to_usize().unwrap_or(0);
    let grid: Vec<T> = (0..=n).map(|i| (step * T::from_usize_lossy(i)).min(height)).collect();
    let values = grid.par_iter().map(|&t| hardy_z(t)).collect::<Result<Vec<T>>>()?;
    let brackets: Vec<(T, T, T)> = (0..n)
        .filter(|&i| values[i] * values[i + 1] < T::zero() || (values[i + 1] == T::zero() && i + 1 < n))
        .map(|i| (grid[i], grid[i + 1], values[i]))
        .collect();
    let ordinates = brackets
        .into_par_iter()
        .map(|(a, b, za)| bisect(a, b, za, precision))
        .collect::<Result<Vec<T>>>()?;
    let expected = counting_estimate(height);
    let found = T::from_usize_lossy(ordinates.len());
    if (found - expected).abs() > T::one() {
        return Err(Error::CountMismatch {
            found: ordinates.len(),
            expected: expected.as_f64(),
            height: height.as_f64(),
        });
    }
    ZeroTable::new(ordinates, height, precision, ZeroSource::Computed)
}

fn bisect<T: Real>(mut a: T, mut b: T, mut za: T, precision: T) -> Result<T> {
    while b - a > precision {
        let m = (a + b) * T::lit(0.5);
        if m <= a || m >= b {
            break;
        }
        let zm = hardy_z(m)?;
        if zm == T::zero() {
            return Ok(m);
        }
        if za * zm < T::zero() {
            b = m;
        } else {
            a = m;
            za = zm;
        }
    }
    Ok((a + b) * T::lit(0.5))
}

/// `|ξ(1/2 + iγ)|` relative to `max(1, |ξ(1/2 + i(γ + 0.1))|)`.
pub fn zero_quality<T: Real>(gamma: T) -> Result<T> {
    let at = xi(cplx(T::lit(0.5), gamma))?.xi.norm();
    let near = xi(cplx(T::lit(0.5), gamma + T::lit(0.1)))?.xi.norm();
    Ok(at / near.max(T::one()))
}

/// Reads a table: one decimal ordinate per line, `#` comments, optional
/// `# height_bound: T` and `# precision: ε` header lines.
///
/// Without a precision header the precision is half a unit in the last
/// printed decimal of the coarsest entry.
pub fn load_zeros<T: Real>(path: &Path) -> Result<ZeroTable<T>> {
    let text = std::fs::read_to_string(path).map_err(|source| Error::Io {
        path: path.to_path_buf(),
        source,
    })?;
    parse_zeros(&text, path)
}

pub fn parse_zeros<T: Real>(text: &str, path: &Path) -> Result<ZeroTable<T>> {
    let shown = path.display().to_string();
    let parse_err = |line: usize, message: String| Error::Parse {
        path: shown.clone(),
        line,
        message,
    };
    let mut ordinates: Vec<T> = Vec::new();
    let mut height_bound: Option<T> = None;
    let mut precision: Option<T> = None;
    let mut min_decimals = usize::MAX;
    for (i, raw) in text.lines().enumerate() {
        let line_no = i + 1;
        let (body, comment) = match raw.split_once('#') {
            Some((b, c)) => (b, Some(c)),
            None => (raw, None),
        };
        if let Some(c) = comment {
            if let Some((key, value)) = c.split_once(':') {
                let value = value.trim();
                let parsed = || -> Result<T> {
                    let v: f64 = value
                        .parse()
                        .map_err(|_| parse_err(line_no, format!("header value `{value}` is not a number")))?;
                    Ok(T::lit(v))
                };
                match key.trim() {
                    "height_bound" => height_bound = Some(parsed()?),
                    "precision" => precision = Some(parsed()?),
                    _ => {}
                }
            }
        }
        let body = body.trim();
        if body.is_empty() {
            continue;
        }
        let v: f64 = body
            .parse()
            .map_err(|_| parse_err(line_no, format!("`{body}` is not a decimal number")))?;
        if !(v > 0.0) || !v.is_finite() {
            return Err(parse_err(line_no, format!("ordinate {body} is not a positive number")));
        }
        let decimals = body.split_once('.').map(|(_, d)| d.len()).unwrap_or(0);
        min_decimals = min_decimals.min(decimals);
        let v = T::lit(v);
        if let Some(&prev) = ordinates.last() {
            if !(v > prev) {
                return Err(Error::OrderViolation {
                    path: shown.clone(),
                    line: line_no,
                    value: v.as_f64(),
                });
            }
        }
        ordinates.push(v);
    }
    let last = ordinates.last().copied().unwrap_or(T::zero());
    let height_bound = height_bound.unwrap_or(last).max(last);
    let precision = precision.unwrap_or_else(|| {
        if min_decimals == usize::MAX {
            T::lit(1e-15)
        } else {
            T::lit(0.5) * T::lit(10f64.powi(-(min_decimals.min(17) as i32)))
        }
    });
    ZeroTable::new(
        ordinates,
        height_bound,
        precision,
        ZeroSource::Ingested(path.to_path_buf()),
    )
}

/// Writes the text form of `table` to `path`.
pub fn write_zeros<T: Real>(table: &ZeroTable<T>, path: &Path) -> Result<()> {
    std::fs::write(path, table.to_text()).map_err(|source| Error::Io {
        path: path.to_path_buf(),
        source,
    })
}
