//! Text formats: patterns, aligned tables and DOT.

use std::fmt::Write as _;

use itertools::Itertools;
use parahoric::momentgraph::MomentGraph;
use parahoric::JugglingPattern;

/// `{1,3}` for one vertex, `({1},{2})` otherwise.
pub fn format_pattern(j: &JugglingPattern) -> String {
    let sets =
        j.0.iter()
            .map(|part| format!("{{{}}}", part.iter().join(",")))
            .collect_vec();
    if sets.len() == 1 {
        sets.into_iter().next().expect("one set")
    } else {
        format!("({})", sets.join(","))
    }
}

/// Comma-separated positive integers; the empty string is the empty list.
pub fn parse_list(text: &str) -> Result<Vec<usize>, String> {
    text.split(',')
        .map(str::trim)
        .filter(|t| !t.is_empty())
        .map(|t| {
            t.parse::<usize>()
                .map_err(|_| format!("{t:?} is not a nonnegative integer"))
        })
        .collect()
}

/// Vertex sets separated by `;`, entries by `,`; each set is sorted.
pub fn parse_pattern(text: &str) -> Result<JugglingPattern, String> {
    text.split(';')
        .map(|part| {
            let mut set = parse_list(part)?;
            set.sort_unstable();
            Ok(set)
        })
        .collect::<Result<Vec<_>, String>>()
        .map(JugglingPattern)
}

/// Left-aligned columns separated by two spaces.
pub fn table(headers: &[&str], rows: Vec<Vec<String>>) -> String {
    let mut width: Vec<usize> = headers.iter().map(|h| h.chars().count()).collect();
    for row in &rows {
        for (w, cell) in width.iter_mut().zip(row) {
            *w = (*w).max(cell.chars().count());
        }
    }
    let line = |cells: Vec<&str>| {
        let mut s = cells.iter().zip(&width).map(|(c, &w)| format!("{c:w$}")).join("  ");
        s.truncate(s.trim_end().len());
        s.push('\n');
        s
    };
    let mut out = line(headers.to_vec());
    for row in &rows {
        out.push_str(&line(row.iter().map(String::as_str).collect()));
    }
    out
}

pub fn to_dot(g: &MomentGraph) -> String {
    let mut out = String::from("digraph moment_graph {\n");
    for (id, v) in g.vertices.iter().enumerate() {
        let _ = writeln!(
            out,
            "  \"v{id}\" [label=\"{} e={}\"];",
            format_pattern(&v.pattern),
            v.energy
        );
    }
    for e in &g.edges {
        let _ = writeln!(
            out,
            "  \"v{}\" -> \"v{}\" [label=\"{}\"];",
            e.source, e.target, e.character
        );
    }
    out.push_str("}\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn patterns_round_trip() {
        let j = parse_pattern("3,1;2").unwrap();
        assert_eq!(j, JugglingPattern(vec![vec![1, 3], vec![2]]));
        assert_eq!(format_pattern(&j), "({1,3},{2})");
        assert_eq!(parse_pattern("").unwrap(), JugglingPattern(vec![vec![]]));
        assert_eq!(format_pattern(&JugglingPattern(vec![vec![]])), "{}");
        assert!(parse_pattern("1;x").is_err());
    }

    #[test]
    fn tables_align() {
        let t = table(&["a", "bb"], vec![vec!["ccc".into(), "d".into()]]);
        assert_eq!(t, "a    bb\nccc  d\n");
    }
}
