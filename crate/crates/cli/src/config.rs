//! `key = value` files merged into the command line. Flags given on the
//! command line win over the file.

use std::collections::BTreeMap;

/// Global options that take a value.
const VALUED_GLOBALS: [&str; 3] = ["--format", "--config", "--jobs"];

pub fn parse(text: &str) -> Result<BTreeMap<String, String>, String> {
    let mut out = BTreeMap::new();
    for (i, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let (k, v) = line
            .split_once('=')
            .ok_or_else(|| format!("config line {}: expected key=value", i + 1))?;
        let key = k.trim().trim_start_matches("--").to_string();
        if key.is_empty() || key == "config" {
            return Err(format!("config line {}: bad key {:?}", i + 1, k.trim()));
        }
        out.insert(key, v.trim().to_string());
    }
    Ok(out)
}

fn config_path(args: &[String]) -> Option<String> {
    let mut it = args.iter().skip(1);
    while let Some(a) = it.next() {
        if a == "--config" {
            return it.next().cloned();
        }
        if let Some(p) = a.strip_prefix("--config=") {
            return Some(p.to_string());
        }
    }
    None
}

fn mentions(args: &[String], key: &str) -> bool {
    let flag = format!("--{key}");
    let prefix = format!("{flag}=");
    args.iter().any(|a| *a == flag || a.starts_with(&prefix))
}

/// Index of the subcommand name in `args`.
fn subcommand_index(args: &[String]) -> Option<usize> {
    let mut i = 1;
    while i < args.len() {
        let a = &args[i];
        if VALUED_GLOBALS.contains(&a.as_str()) {
            i += 2;
        } else if a.starts_with('-') {
            i += 1;
        } else {
            return Some(i);
        }
    }
    None
}

/// Inserts config entries not already present right after the subcommand.
pub fn expand_args(args: Vec<String>) -> Result<Vec<String>, String> {
    let Some(path) = config_path(&args) else {
        return Ok(args);
    };
    let text = std::fs::read_to_string(&path).map_err(|e| format!("cannot read config {path}: {e}"))?;
    let entries = parse(&text)?;
    let Some(at) = subcommand_index(&args) else {
        return Ok(args);
    };
    let mut extra = Vec::new();
    for (key, value) in entries {
        if mentions(&args, &key) {
            continue;
        }
        match value.as_str() {
            "true" => extra.push(format!("--{key}")),
            "false" => {}
            _ => extra.push(format!("--{key}={value}")),
        }
    }
    let mut out = args;
    out.splice(at + 1..at + 1, extra);
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn argv(s: &str) -> Vec<String> {
        s.split_whitespace().map(String::from).collect()
    }

    #[test]
    fn parses_pairs_and_comments() {
        let m = parse("terms = 10\n# note\n--audit=true\n\n").unwrap();
        assert_eq!(m.get("terms").map(String::as_str), Some("10"));
        assert_eq!(m.get("audit").map(String::as_str), Some("true"));
        assert!(parse("oops").is_err());
    }

    #[test]
    fn finds_subcommand_after_globals() {
        assert_eq!(subcommand_index(&argv("etarho --format tsv --meta circle --terms 3")), Some(4));
        assert_eq!(subcommand_index(&argv("etarho")), None);
        assert!(mentions(&argv("x circle --terms=3"), "terms"));
        assert!(!mentions(&argv("x circle --terms-x 3"), "terms"));
    }
}
