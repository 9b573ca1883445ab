//! `--zeros <path|auto:T>`.

use std::path::{Path, PathBuf};

use zetaops::zeros::{find_zeros, load_zeros, write_zeros, ZeroTable};

use crate::commands::Failure;

/// Environment variable naming the directory for cached zero tables.
pub const CACHE_ENV: &str = "ZETAOPS_CACHE_DIR";

const AUTO_PRECISION: f64 = 1e-9;

fn cache_dir(report: Option<&Path>) -> PathBuf {
    if let Some(dir) = std::env::var_os(CACHE_ENV) {
        return PathBuf::from(dir);
    }
    report
        .and_then(Path::parent)
        .filter(|p| !p.as_os_str().is_empty())
        .map(Path::to_path_buf)
        .unwrap_or_else(|| PathBuf::from("."))
}

pub struct Loaded {
    pub table: ZeroTable,
    pub path: Option<PathBuf>,
    pub cached: bool,
}

pub fn resolve(spec: &str, report: Option<&Path>, verbose: bool) -> Result<Loaded, Failure> {
    let Some(height) = spec.strip_prefix("auto:") else {
        let table = load_zeros(Path::new(spec))?;
        return Ok(Loaded {
            table,
            path: Some(spec.into()),
            cached: false,
        });
    };
    let height: f64 = height
        .parse()
        .map_err(|e| Failure::Config(format!("bad zero height in `{spec}`: {e}")))?;
    let path = cache_dir(report).join(format!("zeta_zeros_{height}.txt"));
    if path.exists() {
        if let Ok(t) = load_zeros::<f64>(&path) {
            if t.height_bound() >= height {
                if verbose {
                    eprintln!("zeros: reusing {}", path.display());
                }
                return Ok(Loaded {
                    table: t.truncated(height),
                    path: Some(path),
                    cached: true,
                });
            }
        }
    }
    if verbose {
        eprintln!("zeros: searching up to T = {height}");
    }
    let table = find_zeros(height, AUTO_PRECISION)?;
    // a failed cache write only costs a recomputation next time
    let written = std::fs::create_dir_all(path.parent().unwrap_or(Path::new(".")))
        .ok()
        .and_then(|_| write_zeros(&table, &path).ok())
        .is_some();
    if verbose && !written {
        eprintln!("zeros: could not cache to {}", path.display());
    }
    Ok(Loaded {
        table,
        path: written.then_some(path),
        cached: false,
    })
}
