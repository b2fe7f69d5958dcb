use std::fmt::Write;

use crate::bratteli::MultiplicityMatrix;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum EdgeStyle {
    #[default]
    Solid,
    Dashed,
}

impl EdgeStyle {
    pub fn as_str(self) -> &'static str {
        match self {
            Self::Solid => "solid",
            Self::Dashed => "dashed",
        }
    }
}

/// Renders the Bratteli diagram of `e` as a DOT digraph. Source summands are
/// `C_i`, target summands `A_j`; a multiplicity of `k` becomes `k` parallel
/// edge statements.
pub fn to_dot(e: &MultiplicityMatrix, style: EdgeStyle) -> String {
    let mut out = String::new();
    out.push_str("digraph bratteli {\n");
    out.push_str("  rankdir=BT;\n");
    out.push_str("  node [shape=box];\n");
    for (i, n) in e.source().sizes().iter().enumerate() {
        writeln!(out, "  C_{0} [label=\"C_{0}:M{1}\"];", i + 1, n).unwrap();
    }
    for (j, m) in e.target().sizes().iter().enumerate() {
        writeln!(out, "  A_{0} [label=\"A_{0}:M{1}\"];", j + 1, m).unwrap();
    }
    for i in 0..e.rows() {
        for j in 0..e.cols() {
            for _ in 0..e.get(i, j) {
                writeln!(
                    out,
                    "  C_{} -> A_{} [dir=none, style={}];",
                    i + 1,
                    j + 1,
                    style.as_str()
                )
                .unwrap();
            }
        }
    }
    out.push_str("}\n");
    out
}
