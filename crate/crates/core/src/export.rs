//! Writers for the artifact's file formats. All outputs are deterministic:
//! canonical vertex order, sorted edges, fixed key order in JSON.

use crate::graph::Graph;
use crate::plane::{CliquePartition, OrthogonalArray};
use serde::Serialize;

/// Orthogonal array as plain text: first line "m n", then each row preceded
/// by a "#"-prefixed comment naming its slope.
pub fn oa_text(a: &OrthogonalArray) -> String {
    let mut out = format!("{} {}\n", a.m(), a.n());
    for (row, label) in a.rows().iter().zip(a.row_labels()) {
        out.push_str(&format!("# slope {label}\n"));
        let symbols: Vec<String> = row.iter().map(|s| s.to_string()).collect();
        out.push_str(&symbols.join(" "));
        out.push('\n');
    }
    out
}

#[derive(Serialize)]
struct PartitionView<'a> {
    slope: &'a str,
    cliques: &'a [Vec<usize>],
}

/// Canonical partitions as a JSON array of {"slope", "cliques"} objects.
pub fn partitions_json(parts: &[CliquePartition]) -> String {
    let views: Vec<PartitionView<'_>> = parts
        .iter()
        .map(|p| PartitionView {
            slope: p.slope_name(),
            cliques: p.cliques(),
        })
        .collect();
    let mut s = serde_json::to_string_pretty(&views).expect("serializable");
    s.push('\n');
    s
}

/// DIMACS edge format, 1-based vertex numbers.
pub fn graph_dimacs(g: &Graph) -> String {
    let edges = g.edges();
    let mut out = format!("p edge {} {}\n", g.n_vertices(), edges.len());
    for (u, v) in edges {
        out.push_str(&format!("e {} {}\n", u + 1, v + 1));
    }
    out
}

#[derive(Serialize)]
struct GraphView<'a> {
    q: u64,
    vertices: &'a [String],
    edges: Vec<(usize, usize)>,
}

/// Graph as JSON with 0-based canonical indices and element-notation labels.
pub fn graph_json(q: u64, g: &Graph) -> String {
    let view = GraphView {
        q,
        vertices: g.labels(),
        edges: g.edges(),
    };
    let mut s = serde_json::to_string_pretty(&view).expect("serializable");
    s.push('\n');
    s
}

/// Integer matrix as plain text: "rows cols" header, then one row per line.
pub fn matrix_text(rows: &[Vec<i64>]) -> String {
    let cols = rows.first().map(|r| r.len()).unwrap_or(0);
    let mut out = format!("{} {}\n", rows.len(), cols);
    for row in rows {
        let entries: Vec<String> = row.iter().map(|v| v.to_string()).collect();
        out.push_str(&entries.join(" "));
        out.push('\n');
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gf::ExtField;
    use crate::graph::build_paley;
    use crate::plane::{build_oa_quadratic, canonical_partitions};

    #[test]
    fn oa_text_q3() {
        let e = ExtField::for_q(3).unwrap();
        let text = oa_text(&build_oa_quadratic(&e));
        let lines: Vec<&str> = text.lines().collect();
        assert_eq!(lines[0], "2 3");
        assert_eq!(lines[1], "# slope 1+0*a");
        assert_eq!(lines[2], "0 0 0 1 1 1 2 2 2");
        assert_eq!(lines[3], "# slope 0+1*a");
        assert_eq!(lines[4], "0 1 2 0 1 2 0 1 2");
    }

    #[test]
    fn dimacs_header_q3() {
        let e = ExtField::for_q(3).unwrap();
        let text = graph_dimacs(&build_paley(&e));
        assert!(text.starts_with("p edge 9 18\n"));
        assert!(text.contains("e 1 2\n"));
        assert_eq!(text.lines().count(), 19);
    }

    #[test]
    fn graph_json_roundtrips() {
        let e = ExtField::for_q(3).unwrap();
        let text = graph_json(3, &build_paley(&e));
        let value: serde_json::Value = serde_json::from_str(&text).unwrap();
        assert_eq!(value["q"], 3);
        assert_eq!(value["vertices"][5], "2+1*a");
        assert_eq!(value["edges"].as_array().unwrap().len(), 18);
    }

    #[test]
    fn partitions_json_q3() {
        let e = ExtField::for_q(3).unwrap();
        let text = partitions_json(&canonical_partitions(&e));
        let value: serde_json::Value = serde_json::from_str(&text).unwrap();
        assert_eq!(value.as_array().unwrap().len(), 2);
        assert_eq!(value[0]["slope"], "1+0*a");
        assert_eq!(value[0]["cliques"][0], serde_json::json!([0, 1, 2]));
    }

    #[test]
    fn matrix_text_header() {
        let text = matrix_text(&[vec![1, -1, 0], vec![0, 2, -2]]);
        assert_eq!(text, "2 3\n1 -1 0\n0 2 -2\n");
    }
}
