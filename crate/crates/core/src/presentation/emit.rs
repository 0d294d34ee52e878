//! DSL and DOT emitters.

use std::fmt::Write;

use super::{Presentation, Relation};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Dsl,
    Dot,
}

pub fn emit_presentation(p: &Presentation, format: Format) -> String {
    match format {
        Format::Dsl => emit_dsl(p),
        Format::Dot => emit_dot(p),
    }
}

/// Renders a relation as a signed sum, e.g. `2*b*a - d*c`.
pub fn render_relation(p: &Presentation, r: &Relation) -> String {
    let mut out = String::new();
    for (i, (c, path)) in r.terms().iter().enumerate() {
        let negative = c.is_negative();
        let magnitude = if negative { -c } else { c.clone() };
        match (i, negative) {
            (0, true) => out.push('-'),
            (0, false) => {}
            (_, true) => out.push_str(" - "),
            (_, false) => out.push_str(" + "),
        }
        if !magnitude.is_one() {
            let _ = write!(out, "{magnitude}*");
        }
        out.push_str(&p.quiver.render_path(path));
    }
    out
}

fn emit_dsl(p: &Presentation) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "algebra {} over {}", p.name, p.field);
    let _ = writeln!(out, "vertices: {}", p.quiver.vertices().join(" "));
    out.push_str("arrows:\n");
    for a in p.quiver.arrows() {
        let v = p.quiver.vertices();
        let _ = writeln!(out, "  {}: {} -> {}", a.label, v[a.source], v[a.target]);
    }
    out.push_str("relations:\n");
    for r in &p.relations {
        let _ = writeln!(out, "  {}", render_relation(p, r));
    }
    out
}

fn quote(s: &str) -> String {
    format!("\"{}\"", s.replace('\\', "\\\\").replace('"', "\\\""))
}

fn emit_dot(p: &Presentation) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "digraph {} {{", quote(&p.name));
    for v in p.quiver.vertices() {
        let _ = writeln!(out, "  {};", quote(v));
    }
    let v = p.quiver.vertices();
    for a in p.quiver.arrows() {
        let _ = writeln!(
            out,
            "  {} -> {} [label={}];",
            quote(&v[a.source]),
            quote(&v[a.target]),
            quote(&a.label)
        );
    }
    if !p.relations.is_empty() {
        out.push_str("  // relations:\n");
        for r in &p.relations {
            let _ = writeln!(out, "  //   {}", render_relation(p, r));
        }
    }
    out.push_str("}\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::presentation::parse_presentation;

    const SQUARE: &str = "algebra square over Q\nvertices: 1 2 3 4\narrows:\n  a: 1 -> 2\n  b: 2 -> 4\n  c: 1 -> 3\n  d: 3 -> 4\nrelations:\n  -1/2*b*a + d*c\n";

    #[test]
    fn dsl_round_trip() {
        let p = parse_presentation(SQUARE).unwrap();
        let text = emit_presentation(&p, Format::Dsl);
        assert_eq!(text, SQUARE);
        assert_eq!(parse_presentation(&text).unwrap(), p);
    }

    #[test]
    fn empty_relation_block() {
        let p = parse_presentation("algebra kk over Q\nvertices: a b\n").unwrap();
        let text = emit_presentation(&p, Format::Dsl);
        assert!(text.ends_with("arrows:\nrelations:\n"));
        assert_eq!(parse_presentation(&text).unwrap(), p);
    }

    #[test]
    fn dot_lists_each_vertex_and_arrow_once() {
        let p = parse_presentation(SQUARE).unwrap();
        let dot = emit_presentation(&p, Format::Dot);
        assert_eq!(dot.matches(" -> ").count(), 4);
        assert_eq!(dot.lines().filter(|l| l.trim_end().ends_with("\";")).count(), 4);
        assert!(dot.contains("//   -1/2*b*a + d*c"));
    }
}
