use std::fmt::Write;

use crate::cpa::CpaGraph;

fn quote(s: &str) -> String {
    format!("\"{}\"", s.replace('\\', "\\\\").replace('"', "\\\""))
}

/// DOT rendering of a CPA graph: solid edges for conflicts, dashed for
/// dependencies, undirected edges for delete-delete and double
/// produce-forbid pairs. Output depends only on the input.
pub fn emit_dot(c: &CpaGraph) -> String {
    let mut out = String::from("digraph cpa {\n");
    if c.rules.is_empty() {
        out.push_str("}\n");
        return out;
    }
    out.push_str("  node [shape=box];\n");
    for r in &c.rules {
        let _ = writeln!(out, "  {};", quote(r));
    }
    for ((a, b), kinds) in &c.conflicts {
        let label = kinds.keys().map(|k| k.label()).collect::<Vec<_>>().join(",");
        let _ = writeln!(out, "  {} -> {} [label={}, style=solid];", quote(a), quote(b), quote(&label));
    }
    for (pairs, label) in [(&c.delete_delete, "dd"), (&c.double_produce_forbid, "ff")] {
        for (a, b) in pairs {
            let _ = writeln!(out, "  {} -> {} [label={label}, style=solid, dir=none];", quote(a), quote(b));
        }
    }
    for ((a, b), kinds) in &c.dependencies {
        let label = kinds.keys().map(|k| k.label()).collect::<Vec<_>>().join(",");
        let _ = writeln!(out, "  {} -> {} [label={}, style=dashed];", quote(a), quote(b), quote(&label));
    }
    out.push_str("}\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn empty_graph_is_header_only() {
        assert_eq!(emit_dot(&CpaGraph::default()), "digraph cpa {\n}\n");
    }

    #[test]
    fn names_are_quoted() {
        let c = CpaGraph { rules: vec!["a\"b".into()], ..Default::default() };
        assert!(emit_dot(&c).contains("\"a\\\"b\";"));
    }
}
