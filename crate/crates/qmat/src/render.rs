//! Text tables and DOT output.

use std::fmt::Write;

use qmat_core::condense::Condensation;
use qmat_core::invariants::CloudFlockPair;
use qmat_core::LabeledLattice;

/// Left-aligned columns separated by two spaces.
pub fn table(header: &[&str], rows: &[Vec<String>]) -> String {
    let mut width: Vec<usize> = header.iter().map(|h| h.chars().count()).collect();
    for r in rows {
        for (w, c) in width.iter_mut().zip(r) {
            *w = (*w).max(c.chars().count());
        }
    }
    let mut out = String::new();
    let mut line = |cells: Vec<&str>| {
        let mut s = String::new();
        for (i, (c, w)) in cells.iter().zip(&width).enumerate() {
            if i + 1 == cells.len() {
                s.push_str(c);
            } else {
                let _ = write!(s, "{:<w$}  ", c, w = w);
            }
        }
        out.push_str(s.trim_end());
        out.push('\n');
    };
    line(header.to_vec());
    for r in rows {
        line(r.iter().map(String::as_str).collect());
    }
    out
}

pub fn covers_text<L>(l: &LabeledLattice<L>, name: impl Fn(usize) -> String) -> String {
    let mut s = String::new();
    for (a, b) in l.covers() {
        let _ = writeln!(s, "{} < {}", name(a), name(b));
    }
    s
}

fn escape(s: &str) -> String {
    s.replace('\\', "\\\\").replace('"', "\\\"")
}

/// Hasse diagram with edges drawn upward from each cover.
pub fn dot<L>(l: &LabeledLattice<L>, name: impl Fn(usize) -> String, label: impl Fn(usize) -> String) -> String {
    let mut s = String::from("digraph hasse {\n  rankdir=BT;\n  node [shape=box];\n");
    for i in 0..l.len() {
        let _ = writeln!(s, "  \"{}\" [label=\"{}\"];", escape(&name(i)), escape(&label(i)));
    }
    for (a, b) in l.covers() {
        let _ = writeln!(s, "  \"{}\" -> \"{}\";", escape(&name(a)), escape(&name(b)));
    }
    s.push_str("}\n");
    s
}

pub fn node_name(i: usize) -> String {
    format!("Z{}", i)
}

pub fn config_label(l: &(u32, u32)) -> String {
    format!("({},{})", l.0, l.1)
}

pub fn pair_label(p: &CloudFlockPair) -> String {
    format!("{} | {}", p.cloud, p.flock)
}

pub fn condensation_text(c: &Condensation) -> String {
    let mut s = String::new();
    if !c.blocks().is_empty() {
        for (i, b) in c.blocks().iter().enumerate() {
            let names: Vec<String> = b.iter().map(|&z| node_name(z)).collect();
            let _ = writeln!(s, "B{} = {{{}}}", i, names.join(", "));
        }
    }
    s.push_str("gamma:\n");
    for row in c.gamma() {
        let cells: Vec<String> = row.iter().map(u64::to_string).collect();
        let _ = writeln!(s, "  {}", cells.join(" "));
    }
    let lam: Vec<String> = c.lambda().iter().map(config_label).collect();
    let _ = writeln!(s, "lambda: {}", lam.join(" "));
    s
}

pub fn condensation_dot(c: &Condensation) -> String {
    let n = c.len();
    let mut s = String::from("digraph condensation {\n  rankdir=BT;\n  node [shape=box];\n");
    for i in 0..n {
        let _ = writeln!(s, "  \"B{}\" [label=\"B{} {}\"];", i, i, config_label(&c.lambda()[i]));
    }
    for a in 0..n {
        for b in 0..n {
            let lt = |x: usize, y: usize| x != y && c.leq(x, y);
            if lt(a, b) && !(0..n).any(|m| lt(a, m) && lt(m, b)) {
                let _ = writeln!(s, "  \"B{}\" -> \"B{}\" [label=\"{}\"];", a, b, c.gamma()[a][b]);
            }
        }
    }
    s.push_str("}\n");
    s
}
