//! Text, JSON and CSV renderings of pipeline results.

use std::fmt::Write as _;

use serde_json::{json, Value};

use super::{CaseClassification, CaseGraph, GenusTable, VerifyReport};
use crate::periodicgraph::SingularGraph;
use crate::spacegroup::SpaceGroup;

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Text,
    Json,
    Csv,
}

/// Bumped whenever a JSON layout changes.
pub const SCHEMA_VERSION: u32 = 1;

fn pretty(v: Value) -> String {
    serde_json::to_string_pretty(&v).expect("valid json") + "\n"
}

pub fn groups(gs: &[SpaceGroup], fmt: Format) -> String {
    match fmt {
        Format::Json => pretty(json!({
            "schema": SCHEMA_VERSION,
            "groups": gs.iter().map(|g| json!({
                "name": g.name.as_str(),
                "frame": g.frame.kind,
                "point_order": g.point_order,
                "t0": g.t0,
                "generators": g.generators.iter().map(|e| json!({
                    "rot": e.rot.rows,
                    "trans": e.trans.iter().map(|c| c.to_string()).collect::<Vec<_>>(),
                })).collect::<Vec<_>>(),
            })).collect::<Vec<_>>(),
        })),
        Format::Csv => {
            let mut s = String::from("group,frame,point_order,t0_volume\n");
            for g in gs {
                let _ = writeln!(
                    s,
                    "{},{:?},{},{}",
                    g.name,
                    g.frame.kind,
                    g.point_order,
                    g.t0.det().map(|d| d.to_string()).unwrap_or_default()
                );
            }
            s
        }
        Format::Text => {
            let mut s = String::new();
            for g in gs {
                let _ = writeln!(s, "{}  frame={:?}  |P|={}  T0={}", g.name, g.frame.kind, g.point_order, g.t0);
                for e in &g.generators {
                    let _ = writeln!(s, "    {e}");
                }
            }
            s
        }
    }
}

pub fn singular_graph(g: &SpaceGroup, sg: &SingularGraph, fmt: Format) -> String {
    let cell = g.cell();
    let frame_pt = |p: &crate::periodicgraph::Point| cell.from_coords(p);
    match fmt {
        Format::Json => pretty(json!({
            "schema": SCHEMA_VERSION,
            "group": g.name.as_str(),
            "vertices": sg.vertices.iter().map(|v| json!({
                "point": frame_pt(&v.point).iter().map(|c| c.to_string()).collect::<Vec<_>>(),
                "stabilizer_order": v.stabilizer_order,
                "germ_orders": v.germ_orders,
            })).collect::<Vec<_>>(),
            "edges": sg.edges.iter().map(|e| json!({
                "start": frame_pt(&e.segment.start).iter().map(|c| c.to_string()).collect::<Vec<_>>(),
                "end": frame_pt(&e.segment.end).iter().map(|c| c.to_string()).collect::<Vec<_>>(),
                "edge_index": e.edge_index,
                "link": e.link,
                "orbit": e.orbit_id,
            })).collect::<Vec<_>>(),
        })),
        Format::Csv => {
            let mut s = String::from("orbit,edge_index,link,start,end\n");
            for e in &sg.edges {
                let link: Vec<String> = e.link.iter().map(|k| k.to_string()).collect();
                let _ = writeln!(
                    s,
                    "{},{},{},\"{}\",\"{}\"",
                    e.orbit_id,
                    e.edge_index,
                    link.join(" "),
                    frame_pt(&e.segment.start),
                    frame_pt(&e.segment.end)
                );
            }
            s
        }
        Format::Text => {
            let mut s = format!(
                "{}: {} vertices, {} edges in {} orbits (mod T0)\n",
                g.name,
                sg.vertices.len(),
                sg.edges.len(),
                sg.orbits.len()
            );
            for v in &sg.vertices {
                let _ = writeln!(
                    s,
                    "  vertex {}  |stab|={}  germs={:?}",
                    frame_pt(&v.point),
                    v.stabilizer_order,
                    v.germ_orders
                );
            }
            for (k, orbit) in sg.orbits.iter().enumerate() {
                let e = &sg.edges[orbit[0]];
                let marked = if e.is_marked() { "  marked" } else { "" };
                let _ = writeln!(
                    s,
                    "  orbit {k}: {} segments, index {}, link {:?}, e.g. {} -> {}{marked}",
                    orbit.len(),
                    e.edge_index,
                    e.link,
                    frame_pt(&e.segment.start),
                    frame_pt(&e.segment.end)
                );
            }
            s
        }
    }
}

pub fn edges(cgs: &[CaseGraph], fmt: Format) -> String {
    match fmt {
        Format::Json => pretty(json!({
            "schema": SCHEMA_VERSION,
            "edges": cgs.iter().map(|cg| json!({
                "case": cg.case.to_string(),
                "label": cg.case.label,
                "orbits": cg.class.orbit_ids,
                "edge_index": cg.class.representative.edge_index,
                "link": cg.class.representative.link,
                "cycle_image": cg.cycle_image,
                "graph": cg.graph.to_json(),
            })).collect::<Vec<_>>(),
        })),
        Format::Csv => {
            let mut s = String::from("case,edge_index,vertices,edges,cycle_image_rank\n");
            for cg in cgs {
                let _ = writeln!(
                    s,
                    "\"{}\",{},{},{},{}",
                    cg.case,
                    cg.class.representative.edge_index,
                    cg.graph.vertex_count(),
                    cg.graph.edge_count(),
                    cg.cycle_image.rank()
                );
            }
            s
        }
        Format::Text => {
            let mut s = String::new();
            for cg in cgs {
                let seg = &cg.class.representative.segment;
                let _ = writeln!(
                    s,
                    "{}: index {} edge {} -> {}, graph V={} E={}, cycle image {}",
                    cg.case,
                    cg.class.representative.edge_index,
                    cg.graph.to_frame(&seg.start),
                    cg.graph.to_frame(&seg.end),
                    cg.graph.vertex_count(),
                    cg.graph.edge_count(),
                    cg.cycle_image
                );
            }
            s
        }
    }
}

pub fn classification(cls: &CaseClassification, fmt: Format) -> String {
    match fmt {
        Format::Json => pretty(json!({
            "schema": SCHEMA_VERSION,
            "case": cls.case.to_string(),
            "max_index": cls.max_index,
            "forms": cls.forms,
            "rows": cls.rows,
            "rejected": cls.rejected,
        })),
        Format::Csv => {
            let mut s = String::from("group,edge,column,form,n,m,lattice_index,group_order,genus,knotted\n");
            for r in &cls.rows {
                let _ = writeln!(
                    s,
                    "{},{},{},{},{},{},{},{},{},{}",
                    r.group,
                    r.edge_label,
                    r.column,
                    r.form,
                    r.n,
                    r.m.map(|m| m.to_string()).unwrap_or_default(),
                    r.lattice_index,
                    r.group_order,
                    r.genus,
                    r.knotted
                );
            }
            s
        }
        Format::Text => {
            let mut s = format!("{}  (lattice index <= {})\n", cls.case, cls.max_index);
            for f in &cls.forms {
                let _ = writeln!(s, "  {:<32} g-1 = {:<10} constraint: {}", f.label, f.genus_form, f.constraint);
            }
            let _ =
                writeln!(s, "  {:<24} {:>4} {:>4} {:>8} {:>8} {:>7}", "lattice", "n", "m", "index", "order", "genus");
            for r in &cls.rows {
                let _ = writeln!(
                    s,
                    "  {:<24} {:>4} {:>4} {:>8} {:>8} {:>7}",
                    r.family.to_string(),
                    r.n,
                    r.m.map(|m| m.to_string()).unwrap_or_else(|| "-".into()),
                    r.lattice_index,
                    r.group_order,
                    r.genus
                );
            }
            let _ = writeln!(s, "  {} accepted, {} rejected", cls.rows.len(), cls.rejected);
            s
        }
    }
}

pub fn table(t: &GenusTable, fmt: Format) -> String {
    match fmt {
        Format::Json => pretty(json!({
            "schema": SCHEMA_VERSION,
            "max_genus": t.max_genus,
            "columns": t.columns,
            "genera": t.genera,
        })),
        Format::Csv => {
            let mut s = String::from("genus,order,column,form,n,m,knotted\n");
            for e in &t.genera {
                for a in &e.actions {
                    let _ = writeln!(
                        s,
                        "{},{},{},{},{},{},{}",
                        e.genus,
                        e.order,
                        a.column,
                        a.form,
                        a.n,
                        a.m.map(|m| m.to_string()).unwrap_or_default(),
                        a.knotted
                    );
                }
            }
            s
        }
        Format::Text => {
            let mut s = String::from("forms of g-1 by column (columns 1-3 unknotted):\n");
            for (k, col) in t.columns.iter().enumerate() {
                let cells: Vec<&str> = col.iter().map(|c| c.genus_minus_one_form.as_str()).collect();
                let _ = writeln!(s, "  {}: {}", k + 1, cells.join(", "));
            }
            let _ = writeln!(
                s,
                "{:>6} {:>8} {:>8} {:>10} {:>8}  columns",
                "genus", "order", "actions", "unknotted", "knotted"
            );
            for e in &t.genera {
                let cols: Vec<String> = e.actions.iter().map(|a| a.column.to_string()).collect();
                let _ = writeln!(
                    s,
                    "{:>6} {:>8} {:>8} {:>10} {:>8}  {}",
                    e.genus,
                    e.order,
                    e.actions.len(),
                    e.unknotted,
                    e.knotted,
                    cols.join(",")
                );
            }
            s
        }
    }
}

pub fn verify(r: &VerifyReport, fmt: Format) -> String {
    match fmt {
        Format::Json => pretty(json!({
            "schema": SCHEMA_VERSION,
            "max_index": r.max_index,
            "marked_edges": r.marked_edges,
            "cases": r.cases,
            "pass": r.pass,
        })),
        Format::Csv => {
            let mut s = String::from("case,connected,lattice_match,constraints_match,pass\n");
            for c in &r.cases {
                let _ = writeln!(
                    s,
                    "\"{}\",{},{},{},{}",
                    c.case,
                    c.connected,
                    c.lattice_match,
                    c.constraints_match,
                    c.pass()
                );
            }
            s
        }
        Format::Text => {
            let mut s = String::new();
            for c in &r.cases {
                let status = if c.pass() { "PASS" } else { "FAIL" };
                let _ = writeln!(
                    s,
                    "{status} {:<16} connected={} image={} expected={} constraints=[{}]",
                    c.case.to_string(),
                    c.connected,
                    c.cycle_image.as_deref().unwrap_or("-"),
                    c.expected,
                    c.constraints.join(", ")
                );
                if let Some(e) = &c.error {
                    let _ = writeln!(s, "     error: {e}");
                }
            }
            let _ = writeln!(s, "{}", if r.pass { "all checks passed" } else { "verification FAILED" });
            s
        }
    }
}
