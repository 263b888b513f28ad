use std::path::Path;

use crate::error::{Error, Result};
use crate::fock::C;

/// Reads a flat `key=value` file into flag arguments. Blank lines and `#` comments are
/// skipped; `key=true` becomes a bare switch and `key=false` is dropped. A `command` key is
/// returned separately.
pub fn read_config(path: &Path) -> Result<(Option<String>, Vec<String>)> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::Config(format!("cannot read {}: {e}", path.display())))?;
    parse_config(&text)
}

pub fn parse_config(text: &str) -> Result<(Option<String>, Vec<String>)> {
    let mut command = None;
    let mut args = Vec::new();
    for (lineno, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let (key, value) = line
            .split_once('=')
            .ok_or_else(|| Error::Config(format!("line {}: expected key=value", lineno + 1)))?;
        let (key, value) = (key.trim(), value.trim());
        if key.is_empty() {
            return Err(Error::Config(format!("line {}: empty key", lineno + 1)));
        }
        match (key, value) {
            ("command", v) => command = Some(v.to_string()),
            ("config", _) => return Err(Error::Config(format!("line {}: nested config", lineno + 1))),
            (_, "true") => args.push(format!("--{key}")),
            (_, "false") => {}
            _ => {
                args.push(format!("--{key}"));
                args.push(value.to_string());
            }
        }
    }
    Ok((command, args))
}

/// Parses `re`, `re+im i`, `re-im i`, `im i` or `i` (spaces and a trailing `j` allowed).
pub fn parse_complex(s: &str) -> std::result::Result<C, String> {
    let t: String = s.chars().filter(|c| !c.is_whitespace()).collect();
    let bad = || format!("invalid complex number '{s}'");
    if t.is_empty() {
        return Err(bad());
    }
    let Some(body) = t.strip_suffix('i').or_else(|| t.strip_suffix('j')) else {
        return t.parse::<f64>().map(C::from).map_err(|_| bad());
    };
    // split at the last sign that is not part of an exponent
    let bytes = body.as_bytes();
    let split = (1..bytes.len())
        .rev()
        .find(|&k| matches!(bytes[k], b'+' | b'-') && !matches!(bytes[k - 1], b'e' | b'E'));
    let imag = |x: &str| match x {
        "" | "+" => Ok(1.0),
        "-" => Ok(-1.0),
        _ => x.parse::<f64>().map_err(|_| bad()),
    };
    match split {
        Some(k) => {
            let re = body[..k].parse::<f64>().map_err(|_| bad())?;
            Ok(C::new(re, imag(&body[k..])?))
        }
        None => Ok(C::new(0.0, imag(body)?)),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn complex_forms() {
        assert_eq!(parse_complex("0.3").unwrap(), C::new(0.3, 0.0));
        assert_eq!(parse_complex("0.3+0.1i").unwrap(), C::new(0.3, 0.1));
        assert_eq!(parse_complex("1e-3-2i").unwrap(), C::new(1e-3, -2.0));
        assert_eq!(parse_complex("-i").unwrap(), C::new(0.0, -1.0));
        assert_eq!(parse_complex("2.5i").unwrap(), C::new(0.0, 2.5));
        assert_eq!(parse_complex("1e+2").unwrap(), C::new(100.0, 0.0));
        assert!(parse_complex("abc").is_err());
        assert!(parse_complex("").is_err());
    }

    #[test]
    fn config_lines() {
        let (cmd, args) = parse_config("# run\ncommand = verify-qybe\nkh=3\ncompare=true\nquiet=false\n").unwrap();
        assert_eq!(cmd.as_deref(), Some("verify-qybe"));
        assert_eq!(args, ["--kh", "3", "--compare"]);
        assert!(parse_config("kh 3").is_err());
    }
}
