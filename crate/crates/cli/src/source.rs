//! Matrix sources: a file path, `-` for stdin, or `fixture:NAME`.

use std::io::Read;

use toral::fixtures::{fixture, FIXTURE_NAMES};
use toral::io::parse_square_matrix;
use toral::IntMatrix;

/// A parsed input together with the label echoed in reports.
pub struct Loaded {
    pub label: String,
    pub matrix: IntMatrix,
}

pub fn load_fixture(name: &str) -> Result<Loaded, String> {
    fixture(name)
        .map(|matrix| Loaded { label: format!("fixture:{name}"), matrix })
        .ok_or_else(|| format!("unknown fixture {name:?}; known: {}", FIXTURE_NAMES.join(", ")))
}

pub fn load(source: &str) -> Result<Loaded, String> {
    if let Some(name) = source.strip_prefix("fixture:") {
        return load_fixture(name);
    }
    let text = if source == "-" {
        let mut s = String::new();
        std::io::stdin().read_to_string(&mut s).map_err(|e| format!("stdin: {e}"))?;
        s
    } else {
        std::fs::read_to_string(source).map_err(|e| format!("{source}: {e}"))?
    };
    let matrix = parse_square_matrix(&text).map_err(|e| format!("{source}: {e}"))?;
    Ok(Loaded { label: source.to_string(), matrix })
}

/// Positional source if given, else the global `--fixture`.
pub fn resolve(positional: Option<&str>, global_fixture: Option<&str>) -> Result<Loaded, String> {
    match (positional, global_fixture) {
        (Some(s), _) => load(s),
        (None, Some(name)) => load_fixture(name),
        (None, None) => Err("no input: pass a matrix file, `-`, `fixture:NAME` or --fixture NAME".into()),
    }
}
