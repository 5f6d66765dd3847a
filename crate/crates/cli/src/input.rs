//! Graph and pattern arguments: graph6 literals, files, or stdin.

use std::io::Read;
use std::path::Path;

use minorforge::{from_graph6, Graph, PatternSpec};

use crate::CliError;

/// Reads `value` as `-` (stdin), a path to a graph6 or adjacency-list file,
/// or a graph6 literal.
pub fn read_graph(value: &str, flag: &str) -> Result<Graph, CliError> {
    if value == "-" {
        let mut text = String::new();
        std::io::stdin()
            .read_to_string(&mut text)
            .map_err(|e| CliError::Usage(format!("{flag}: reading stdin: {e}")))?;
        return parse_text(&text, flag, "stdin");
    }
    let path = Path::new(value);
    if path.is_file() {
        let text = std::fs::read_to_string(path)
            .map_err(|e| CliError::Usage(format!("{flag}: reading {value}: {e}")))?;
        return parse_text(&text, flag, value);
    }
    from_graph6(value.trim()).map_err(|e| CliError::Usage(format!("{flag}: {e}")))
}

/// The first non-comment line decides the format: a single token is graph6,
/// anything else is an adjacency list.
fn parse_text(text: &str, flag: &str, origin: &str) -> Result<Graph, CliError> {
    let first = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i, l.trim()))
        .find(|(_, l)| !l.is_empty() && !l.starts_with('#'));
    let Some((line, first)) = first else {
        return Err(CliError::Usage(format!("{flag}: {origin} holds no graph")));
    };
    if first.split_whitespace().count() == 1 {
        return from_graph6(first).map_err(|e| CliError::Usage(format!("{flag}: {origin} line {}: {e}", line + 1)));
    }
    Graph::from_adjacency_list(text).map_err(|e| CliError::Usage(format!("{flag}: {origin}: {e}")))
}

/// `kts:t,s` for the family `K_t` minus `s` edges, otherwise a graph
/// argument as for [`read_graph`].
pub fn read_pattern(value: &str) -> Result<(PatternSpec, String), CliError> {
    if let Some(rest) = value.strip_prefix("kts:") {
        let bad = || CliError::Usage(format!("--pattern: expected kts:t,s, got {value:?}"));
        let (t, s) = rest.split_once(',').ok_or_else(bad)?;
        let t: usize = t.trim().parse().map_err(|_| bad())?;
        let s: usize = s.trim().parse().map_err(|_| bad())?;
        let spec = PatternSpec::family(t, s).map_err(|e| CliError::Usage(format!("--pattern: {e}")))?;
        return Ok((spec, format!("kts:{t},{s}")));
    }
    let h = read_graph(value, "--pattern")?;
    let label = format!("g6:{h}");
    Ok((PatternSpec::Explicit(h), label))
}
