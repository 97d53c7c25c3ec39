//! Graphviz DOT rendering. Output is sorted by label so reruns are identical.

use std::fmt::Write;

use crate::lattice::FiniteLattice;
use crate::order::{FiniteSpace, Poset};
use crate::set::PointSet;

fn quote(s: &str) -> String {
    format!("\"{}\"", s.replace('\\', "\\\\").replace('"', "\\\""))
}

fn sorted_indices(labels: &[String]) -> Vec<usize> {
    let mut idx: Vec<usize> = (0..labels.len()).collect();
    idx.sort_by(|&a, &b| labels[a].cmp(&labels[b]));
    idx
}

fn sorted_edges(labels: &[String], mut edges: Vec<(usize, usize)>) -> Vec<(usize, usize)> {
    edges.sort_by(|&(a, b), &(c, d)| (&labels[a], &labels[b]).cmp(&(&labels[c], &labels[d])));
    edges
}

/// Hasse diagram via covering pairs, bottom to top.
pub fn hasse(name: &str, poset: &Poset) -> String {
    let labels = poset.labels();
    let mut out = String::new();
    writeln!(out, "digraph {} {{", quote(name)).unwrap();
    writeln!(out, "  rankdir=BT;").unwrap();
    writeln!(out, "  node [shape=circle];").unwrap();
    for i in sorted_indices(labels) {
        writeln!(out, "  {};", quote(&labels[i])).unwrap();
    }
    for (a, b) in sorted_edges(labels, poset.covers()) {
        writeln!(out, "  {} -> {};", quote(&labels[a]), quote(&labels[b])).unwrap();
    }
    out.push_str("}\n");
    out
}

pub fn lattice(name: &str, l: &FiniteLattice) -> String {
    hasse(name, l.order())
}

/// Specialization order of a space, each point marked open, closed, both, or
/// neither according to its singleton.
pub fn space(name: &str, s: &FiniteSpace) -> String {
    let labels = s.points();
    let spec = s.specialization_leq();
    let n = s.len();
    // covers of the specialization preorder, skipping indistinguishable pairs
    let lt = |a: usize, b: usize| spec.leq(a, b) && !spec.leq(b, a);
    let mut edges = Vec::new();
    for a in 0..n {
        for b in 0..n {
            if lt(a, b) && !(0..n).any(|c| lt(a, c) && lt(c, b)) {
                edges.push((a, b));
            }
        }
    }
    let mut out = String::new();
    writeln!(out, "digraph {} {{", quote(name)).unwrap();
    writeln!(out, "  rankdir=BT;").unwrap();
    for i in sorted_indices(labels) {
        let single = PointSet::singleton(i);
        let kind = match (s.is_open(single), s.is_closed(single)) {
            (true, true) => "clopen",
            (true, false) => "open",
            (false, true) => "closed",
            (false, false) => "",
        };
        let shape = match kind {
            "open" => "circle",
            "closed" => "box",
            "clopen" => "doublecircle",
            _ => "ellipse",
        };
        if kind.is_empty() {
            writeln!(out, "  {} [shape={shape}];", quote(&labels[i])).unwrap();
        } else {
            writeln!(
                out,
                "  {} [shape={shape}, xlabel={}];",
                quote(&labels[i]),
                quote(kind)
            )
            .unwrap();
        }
    }
    for (a, b) in sorted_edges(labels, edges) {
        writeln!(out, "  {} -> {};", quote(&labels[a]), quote(&labels[b])).unwrap();
    }
    out.push_str("}\n");
    out
}

/// Bipartite diagram of a map between two point sets.
pub fn map(name: &str, domain: &[String], codomain: &[String], image: &[usize]) -> String {
    let mut out = String::new();
    writeln!(out, "digraph {} {{", quote(name)).unwrap();
    writeln!(out, "  rankdir=LR;").unwrap();
    for (side, labels) in [("domain", domain), ("codomain", codomain)] {
        writeln!(out, "  subgraph {} {{", quote(&format!("cluster_{side}"))).unwrap();
        writeln!(out, "    label={};", quote(side)).unwrap();
        for i in sorted_indices(labels) {
            writeln!(
                out,
                "    {} [label={}];",
                quote(&format!("{side}:{}", labels[i])),
                quote(&labels[i])
            )
            .unwrap();
        }
        out.push_str("  }\n");
    }
    for x in sorted_indices(domain) {
        writeln!(
            out,
            "  {} -> {};",
            quote(&format!("domain:{}", domain[x])),
            quote(&format!("codomain:{}", codomain[image[x]]))
        )
        .unwrap();
    }
    out.push_str("}\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn single_node() {
        let l = FiniteLattice::chain(&["x"]).unwrap();
        let d = lattice("one", &l);
        assert_eq!(d.matches(";\n").count(), 3);
        assert!(!d.contains("->"));
    }

    #[test]
    fn five_element_frame() {
        let l = FiniteLattice::from_order(
            &["0", "loc_Qm", "loc_m", "Dm_A", "D_A"],
            &[
                ("0", "loc_Qm"),
                ("loc_Qm", "loc_m"),
                ("loc_Qm", "Dm_A"),
                ("loc_m", "D_A"),
                ("Dm_A", "D_A"),
            ],
        )
        .unwrap();
        let d = lattice("frame", &l);
        assert_eq!(d.matches(" -> ").count(), 5);
        assert_eq!(d, lattice("frame", &l));
    }

    #[test]
    fn space_annotations() {
        let s = FiniteSpace::from_labels(&["a", "b"], &[&[], &["a"], &["a", "b"]]).unwrap();
        let d = space("sierpinski", &s);
        assert!(d.contains("\"a\" [shape=circle, xlabel=\"open\"]"));
        assert!(d.contains("\"b\" [shape=box, xlabel=\"closed\"]"));
        assert!(d.contains("\"b\" -> \"a\""));
    }

    #[test]
    fn bipartite() {
        let dom: Vec<String> = vec!["0".into(), "P".into(), "Q".into()];
        let cod: Vec<String> = vec!["0".into(), "Q".into()];
        let d = map("psi", &dom, &cod, &[0, 0, 1]);
        assert_eq!(d.matches("-> \"codomain:0\"").count(), 2);
        assert_eq!(d.matches(" -> ").count(), 3);
    }
}
