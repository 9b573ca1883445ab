//! `key = value` configuration files, merged under the command-line flags.

use std::ffi::OsString;
use std::path::Path;

fn parse(text: &str, path: &Path) -> Result<Vec<(String, String)>, String> {
    let mut out = Vec::new();
    for (no, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let (key, value) = line
            .split_once('=')
            .or_else(|| line.split_once(char::is_whitespace))
            .ok_or_else(|| format!("{}:{}: expected `key = value`", path.display(), no + 1))?;
        let key = key.trim().trim_start_matches("--").replace('_', "-");
        let value = value.trim().trim_matches('"').to_string();
        if key.is_empty() || matches!(key.as_str(), "config" | "help" | "version") {
            return Err(format!(
                "{}:{}: `{key}` cannot be set from a config file",
                path.display(),
                no + 1
            ));
        }
        out.push((key, value));
    }
    Ok(out)
}

fn config_path(args: &[OsString]) -> Option<OsString> {
    let mut it = args.iter();
    while let Some(a) = it.next() {
        let s = a.to_string_lossy();
        if s == "--config" {
            return it.next().cloned();
        }
        if let Some(p) = s.strip_prefix("--config=") {
            return Some(p.into());
        }
    }
    None
}

fn given(args: &[OsString], key: &str) -> bool {
    let flag = format!("--{key}");
    let prefix = format!("--{key}=");
    args.iter().any(|a| {
        let s = a.to_string_lossy();
        s == flag || s.starts_with(&prefix)
    })
}

/// Appends `--key value` for each config entry not already on the command
/// line; clap then rejects keys the chosen command does not know.
pub fn merge(args: Vec<OsString>) -> Result<Vec<OsString>, String> {
    let Some(path) = config_path(&args) else {
        return Ok(args);
    };
    let path = Path::new(&path);
    let text = std::fs::read_to_string(path).map_err(|e| format!("cannot read config {}: {e}", path.display()))?;
    let mut out = args.clone();
    for (key, value) in parse(&text, path)? {
        if given(&args, &key) {
            continue;
        }
        if value == "true" {
            out.push(format!("--{key}").into());
        } else {
            out.push(format!("--{key}={value}").into());
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn os(v: &[&str]) -> Vec<OsString> {
        v.iter().map(OsString::from).collect()
    }

    #[test]
    fn flags_override_file() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("run.conf");
        std::fs::write(&path, "# defaults\ntol = 1e-6\nprimes 1000\nmax_residual = 1e-3\n").unwrap();
        let args = os(&[
            "zetaops",
            "--config",
            path.to_str().unwrap(),
            "verify-explicit-formula",
            "--tol",
            "1e-9",
        ]);
        let merged = merge(args).unwrap();
        let tail: Vec<String> = merged[6..].iter().map(|s| s.to_string_lossy().into_owned()).collect();
        assert_eq!(tail, ["--primes=1000", "--max-residual=1e-3"]);
    }

    #[test]
    fn malformed_lines_are_rejected() {
        let path = Path::new("x.conf");
        assert!(parse("justakey", path).is_err());
        assert!(parse("config = other.conf", path).is_err());
        assert_eq!(
            parse("  --n = 64 # grid", path).unwrap(),
            vec![("n".into(), "64".into())]
        );
    }
}
