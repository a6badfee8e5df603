//! Text encodings of a built level: DOT, SVG, and the stats table.

use std::collections::BTreeMap;
use std::fmt::Write;

use carpet_core::graph::{degree_histogram, vertex_count_closed_form, CarpetGraph};
use serde::Serialize;

pub fn dot(g: &CarpetGraph) -> String {
    let mut out = String::new();
    writeln!(out, "graph carpet_{} {{", g.level()).unwrap();
    writeln!(out, "  node [shape=point];").unwrap();
    for (id, c) in g.coords().iter().enumerate() {
        writeln!(out, "  {id} [pos=\"{},{}!\"];", c.x, c.y).unwrap();
    }
    for (u, v) in g.edges() {
        writeln!(out, "  {u} -- {v};").unwrap();
    }
    out.push_str("}\n");
    out
}

/// Axis-parallel drawing with the bottom-left corner at the bottom left;
/// one lattice unit is `unit` pixels, with a one-unit margin.
pub fn svg(g: &CarpetGraph, unit: u32) -> String {
    let unit = unit as u64;
    let span = (g.side() + 2) * unit;
    let px = |x: u64| (x + 1) * unit;
    let py = |y: u64| (g.side() - y + 1) * unit;
    let radius = (unit as f64 / 6.0).max(0.5);

    let mut out = String::new();
    out.push_str("<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n");
    writeln!(
        out,
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{span}\" height=\"{span}\" viewBox=\"0 0 {span} {span}\">"
    )
    .unwrap();
    writeln!(out, "  <title>carpet graph level {}</title>", g.level()).unwrap();
    out.push_str("  <g stroke=\"black\" stroke-width=\"1\">\n");
    for (u, v) in g.edges() {
        let (a, b) = (g.coord(u), g.coord(v));
        writeln!(
            out,
            "    <line x1=\"{}\" y1=\"{}\" x2=\"{}\" y2=\"{}\"/>",
            px(a.x),
            py(a.y),
            px(b.x),
            py(b.y)
        )
        .unwrap();
    }
    out.push_str("  </g>\n  <g fill=\"black\">\n");
    for c in g.coords() {
        writeln!(
            out,
            "    <circle cx=\"{}\" cy=\"{}\" r=\"{radius}\"/>",
            px(c.x),
            py(c.y)
        )
        .unwrap();
    }
    out.push_str("  </g>\n</svg>\n");
    out
}

#[derive(Debug, Serialize)]
pub struct Stats {
    pub n: u32,
    pub vertices: usize,
    pub closed_form: u128,
    pub edges: usize,
    pub boundary: Option<usize>,
    pub internal_boundary: Option<usize>,
    pub degrees: BTreeMap<usize, usize>,
}

impl Stats {
    pub fn of(g: &CarpetGraph) -> Stats {
        Stats {
            n: g.level(),
            vertices: g.vertex_count(),
            closed_form: vertex_count_closed_form(g.level()).unwrap_or(0),
            edges: g.edge_count(),
            boundary: g.boundary().ok().map(<[u32]>::len),
            internal_boundary: g.internal_boundary().ok().map(<[u32]>::len),
            degrees: degree_histogram(g),
        }
    }

    pub fn text(&self) -> String {
        let opt = |v: Option<usize>| v.map_or_else(|| "undefined".to_string(), |v| v.to_string());
        let degrees: Vec<String> = self
            .degrees
            .iter()
            .map(|(d, c)| format!("{d}:{c}"))
            .collect();
        format!(
            "level={}\nvertices={}\nclosed_form={}\nedges={}\nboundary={}\ninternal_boundary={}\ndegrees={{{}}}\n",
            self.n,
            self.vertices,
            self.closed_form,
            self.edges,
            opt(self.boundary),
            opt(self.internal_boundary),
            degrees.join(", ")
        )
    }

    pub fn csv(&self) -> String {
        let opt = |v: Option<usize>| v.map_or_else(String::new, |v| v.to_string());
        let deg = |d: usize| self.degrees.get(&d).copied().unwrap_or(0);
        format!(
            "n,vertices,edges,boundary,internal_boundary,deg2,deg3,deg4\n{},{},{},{},{},{},{},{}\n",
            self.n,
            self.vertices,
            self.edges,
            opt(self.boundary),
            opt(self.internal_boundary),
            deg(2),
            deg(3),
            deg(4)
        )
    }
}
