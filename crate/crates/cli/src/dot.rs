//! Graphviz rendering. Each arrow passes through a point node at its
//! midpoint so relations can be drawn as dashed arcs between arrows.

use std::fmt::Write as _;

use agq_core::AlmostGentlePair;

fn quote(s: &str) -> String {
    format!("\"{}\"", s.replace('\\', "\\\\").replace('"', "\\\""))
}

pub fn emit_dot(pair: &AlmostGentlePair) -> String {
    let mut out = String::new();
    let v = |x| quote(&format!("v:{}", pair.vertex_name(x)));
    let m = |a| quote(&format!("m:{}", pair.arrow_name(a)));
    writeln!(out, "digraph {} {{", quote(pair.name())).unwrap();
    writeln!(out, "  node [shape=circle];").unwrap();
    for x in pair.vertices() {
        writeln!(out, "  {} [label={}];", v(x), quote(pair.vertex_name(x))).unwrap();
    }
    for a in pair.arrows() {
        writeln!(out, "  {} [shape=point, width=0.04];", m(a)).unwrap();
        writeln!(out, "  {} -> {} [arrowhead=none, label={}];", v(pair.source(a)), m(a), quote(pair.arrow_name(a)))
            .unwrap();
        writeln!(out, "  {} -> {};", m(a), v(pair.target(a))).unwrap();
    }
    for (a, b) in pair.relations().iter() {
        let label = format!("{}·{}", pair.arrow_name(a), pair.arrow_name(b));
        writeln!(out, "  {} -> {} [style=dashed, constraint=false, label={}];", m(a), m(b), quote(&label)).unwrap();
    }
    out.push_str("}\n");
    out
}
