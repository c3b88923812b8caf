//! Singular set of a space group modulo `T0`: rotation axes, vertices where
//! axes meet, and the axis segments between consecutive vertices.
//!
//! Everything here is in `T0` lattice coordinates, so "modulo `T0`" means
//! modulo `Z^3`.

use std::collections::{BTreeMap, BTreeSet, HashMap};

use num_bigint::BigInt;
use num_traits::ToPrimitive;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::exactmath::rational::{i64mat_to_q, int, lex_positive, primitive_direction, split_frac};
use crate::exactmath::{solve_mod_integers, Mat3, Rational, Vec3};
use crate::spacegroup::{euclidean_normalizer, CellAction, SpaceGroup, SpaceGroupName};

pub type Point = Vec3<Rational>;
type Ray = [i64; 3];

/// Marked-edge orbit counts after identification under the normalizer.
pub fn expected_marked_count(name: SpaceGroupName) -> usize {
    match name {
        SpaceGroupName::I4_132 | SpaceGroupName::I432 | SpaceGroupName::P4_232 => 2,
        _ => 1,
    }
}

/// The four rotational indices around a marked edge.
pub const MARKED_LINK: [u32; 4] = [2, 2, 2, 3];

/// Elements fixing `x`, with translation parts adjusted so they fix it
/// exactly (not just modulo `Z^3`).
pub fn cell_stabilizer(acts: &[CellAction], x: &Point) -> Vec<CellAction> {
    acts.iter()
        .filter_map(|a| {
            let t = x - &i64mat_to_q(&a.m).mul_vec(x);
            (&t - &a.t).iter().all(|c| c.is_integer()).then(|| CellAction { m: a.m.clone(), t })
        })
        .collect()
}

fn to_rows(m: &Mat3<i64>) -> Vec<Vec<BigInt>> {
    let d = Mat3::<i64>::identity().sub_mat(m);
    d.rows.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect()
}

fn reduce(x: &Point) -> Point {
    split_frac(x).0
}

fn ray_of(v: &Point) -> Ray {
    let p = primitive_direction(v).expect("nonzero direction");
    [0, 1, 2].map(|i| p[i].to_i64().expect("small direction"))
}

fn apply_ray(m: &Mat3<i64>, r: &Ray) -> Ray {
    let v = m.mul_vec(&Vec3::new(r[0], r[1], r[2]));
    [v[0], v[1], v[2]]
}

fn kernel_ray(m: &Mat3<i64>) -> Ray {
    let sols = solve_mod_integers(&to_rows(m), &[int(0), int(0), int(0)], 3);
    let f = &sols.free[0];
    let v = lex_positive(Vec3::new(f[0].clone(), f[1].clone(), f[2].clone()));
    [0, 1, 2].map(|i| v[i].to_i64().expect("small direction"))
}

/// Local structure of a point with non-cyclic stabilizer.
#[derive(Clone, Debug, Serialize)]
pub struct SingularVertex {
    #[serde(serialize_with = "super::ser_point")]
    pub point: Point,
    pub stabilizer_order: usize,
    /// Rotation indices of the three edge-germ orbits, sorted.
    pub germ_orders: Vec<u32>,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Segment {
    pub start: Point,
    pub end: Point,
}

impl Segment {
    /// Representative with the smaller endpoint pair, after shifting either
    /// endpoint into the unit cell.
    pub fn canonical(a: &Point, b: &Point) -> Segment {
        let forms = [(a, b), (b, a)].map(|(p, q)| {
            let (fr, fl) = split_frac(p);
            let shift = crate::exactmath::rational::ivec_to_q(&fl);
            Segment { start: fr, end: q - &shift }
        });
        let [x, y] = forms;
        if x <= y {
            x
        } else {
            y
        }
    }

    pub fn midpoint(&self) -> Point {
        (&self.start + &self.end).scale(&Rational::new(1.into(), 2.into()))
    }

    pub fn map(&self, f: impl Fn(&Point) -> Point) -> Segment {
        Segment::canonical(&f(&self.start), &f(&self.end))
    }
}

#[derive(Clone, Debug)]
pub struct SingularEdge {
    pub segment: Segment,
    pub edge_index: usize,
    /// Orders of the other germ orbits at both ends, sorted.
    pub link: Vec<u32>,
    /// Orbit under the group.
    pub orbit_id: usize,
    /// Stabilizer orders at the start and end.
    pub end_orders: (usize, usize),
}

impl SingularEdge {
    pub fn is_marked(&self) -> bool {
        self.link == MARKED_LINK
    }
}

/// Singular graph of a group modulo `T0`.
#[derive(Clone, Debug)]
pub struct SingularGraph {
    pub group: SpaceGroupName,
    pub vertices: Vec<SingularVertex>,
    pub edges: Vec<SingularEdge>,
    /// Edge indices per group orbit.
    pub orbits: Vec<Vec<usize>>,
    /// Number of axis circles modulo `T0` that meet no vertex.
    pub vertex_free_axes: usize,
}

struct Line {
    point: Point,
    dir: Vec3<BigInt>,
}

fn same_line(l: &Line, p: &Point, dir: &Vec3<BigInt>) -> bool {
    if l.dir != *dir {
        return false;
    }
    position_on(l, p).is_some()
}

/// `s` in `[0, 1)` with `l.point + s * l.dir = p (mod Z^3)`.
fn position_on(l: &Line, p: &Point) -> Option<Rational> {
    let rows: Vec<Vec<BigInt>> = l.dir.iter().map(|c| vec![c.clone()]).collect();
    let rhs: Vec<Rational> = (p - &l.point).0.to_vec();
    let sols = solve_mod_integers(&rows, &rhs, 1);
    debug_assert!(sols.particular.len() <= 1);
    sols.particular.into_iter().next().map(|s| s[0].clone())
}

fn axes(acts: &[CellAction]) -> Vec<Line> {
    let mut lines: Vec<Line> = Vec::new();
    for a in acts.iter().filter(|a| !a.m.is_identity()) {
        let sols = solve_mod_integers(&to_rows(&a.m), &a.t.0, 3);
        if sols.is_empty() {
            continue;
        }
        let f = &sols.free[0];
        let dir = lex_positive(Vec3::new(f[0].clone(), f[1].clone(), f[2].clone()));
        for p in sols.particular {
            let p = Vec3::new(p[0].clone(), p[1].clone(), p[2].clone());
            if !lines.iter().any(|l| same_line(l, &p, &dir)) {
                lines.push(Line { point: p, dir: dir.clone() });
            }
        }
    }
    lines
}

fn vertices(acts: &[CellAction]) -> Vec<Point> {
    let rotations: Vec<(&CellAction, Ray)> =
        acts.iter().filter(|a| !a.m.is_identity()).map(|a| (a, kernel_ray(&a.m))).collect();
    let mut found: BTreeSet<Point> = BTreeSet::new();
    for (i, (a, ra)) in rotations.iter().enumerate() {
        for (b, rb) in &rotations[i + 1..] {
            if ra == rb {
                continue;
            }
            let mut rows = to_rows(&a.m);
            rows.extend(to_rows(&b.m));
            let mut rhs = a.t.0.to_vec();
            rhs.extend(b.t.0.iter().cloned());
            for p in solve_mod_integers(&rows, &rhs, 3).particular {
                found.insert(Vec3::new(p[0].clone(), p[1].clone(), p[2].clone()));
            }
        }
    }
    found.into_iter().filter(|p| !is_cyclic(&cell_stabilizer(acts, p))).collect()
}

fn is_cyclic(stab: &[CellAction]) -> bool {
    let dirs: BTreeSet<Ray> = stab.iter().filter(|a| !a.m.is_identity()).map(|a| kernel_ray(&a.m)).collect();
    dirs.len() <= 1
}

/// Germ rays at a vertex, grouped into orbits of the stabilizer, each with
/// the number of stabilizer elements fixing a ray of the orbit.
fn ray_orbits(stab: &[CellAction]) -> Vec<(BTreeSet<Ray>, u32)> {
    let mut rays: BTreeSet<Ray> = BTreeSet::new();
    for a in stab.iter().filter(|a| !a.m.is_identity()) {
        let r = kernel_ray(&a.m);
        rays.insert(r);
        rays.insert(r.map(|c| -c));
    }
    let mut orbits: Vec<(BTreeSet<Ray>, u32)> = Vec::new();
    for r in &rays {
        if orbits.iter().any(|(o, _)| o.contains(r)) {
            continue;
        }
        let orbit: BTreeSet<Ray> = stab.iter().map(|a| apply_ray(&a.m, r)).collect();
        let order = stab.iter().filter(|a| apply_ray(&a.m, r) == *r).count() as u32;
        orbits.push((orbit, order));
    }
    orbits
}

struct VertexInfo {
    orbits: Vec<(BTreeSet<Ray>, u32)>,
    order: usize,
}

impl VertexInfo {
    /// Orders of the germ orbits other than the one containing `ray`.
    fn other_orders(&self, ray: &Ray) -> Vec<u32> {
        self.orbits.iter().filter(|(o, _)| !o.contains(ray)).map(|(_, k)| *k).collect()
    }
}

pub fn singular_graph(g: &SpaceGroup) -> SingularGraph {
    let acts = g.cell_actions();
    let verts = vertices(acts);
    let mut info: HashMap<Point, VertexInfo> = HashMap::new();
    let mut vertex_list = Vec::new();
    for v in &verts {
        let stab = cell_stabilizer(acts, v);
        let orbits = ray_orbits(&stab);
        let mut germ_orders: Vec<u32> = orbits.iter().map(|(_, k)| *k).collect();
        germ_orders.sort_unstable();
        vertex_list.push(SingularVertex { point: v.clone(), stabilizer_order: stab.len(), germ_orders });
        info.insert(v.clone(), VertexInfo { orbits, order: stab.len() });
    }

    let mut segments: BTreeSet<Segment> = BTreeSet::new();
    let mut vertex_free_axes = 0;
    for line in axes(acts) {
        let dir = crate::exactmath::rational::ivec_to_q(&line.dir);
        let mut stops: Vec<Rational> = verts.iter().filter_map(|v| position_on(&line, v)).collect();
        stops.sort();
        if stops.is_empty() {
            vertex_free_axes += 1;
            continue;
        }
        let at = |s: &Rational| &line.point + &dir.scale(s);
        for (k, s) in stops.iter().enumerate() {
            let next = stops.get(k + 1).cloned().unwrap_or_else(|| &stops[0] + int(1));
            segments.insert(Segment::canonical(&at(s), &at(&next)));
        }
    }

    let mut edges: Vec<SingularEdge> = Vec::new();
    let mut orbit_of: BTreeMap<Segment, usize> = BTreeMap::new();
    let mut orbits: Vec<Vec<usize>> = Vec::new();
    for seg in &segments {
        if orbit_of.contains_key(seg) {
            continue;
        }
        let id = orbits.len();
        let members: BTreeSet<Segment> = acts.iter().map(|a| seg.map(|p| a.apply(p))).collect();
        let mut idx = Vec::new();
        for s in members {
            orbit_of.insert(s.clone(), id);
            idx.push(edges.len());
            edges.push(make_edge(acts, &info, s, id));
        }
        orbits.push(idx);
    }
    SingularGraph { group: g.name, vertices: vertex_list, edges, orbits, vertex_free_axes }
}

fn make_edge(acts: &[CellAction], info: &HashMap<Point, VertexInfo>, s: Segment, orbit_id: usize) -> SingularEdge {
    let edge_index = cell_stabilizer(acts, &s.midpoint()).len();
    let a = info.get(&reduce(&s.start)).expect("segment starts at a vertex");
    let b = info.get(&reduce(&s.end)).expect("segment ends at a vertex");
    let d = &s.end - &s.start;
    let mut link = a.other_orders(&ray_of(&d));
    link.extend(b.other_orders(&ray_of(&(-d))));
    link.sort_unstable();
    SingularEdge { end_orders: (a.order, b.order), segment: s, edge_index, link, orbit_id }
}

/// A marked edge class: the group orbits identified by the normalizer, and
/// the representative orbit used downstream.
#[derive(Clone, Debug)]
pub struct MarkedClass {
    pub orbit_ids: Vec<usize>,
    pub representative: SingularEdge,
}

impl SingularGraph {
    pub fn orbit_edges(&self, orbit_id: usize) -> impl Iterator<Item = &SingularEdge> {
        self.orbits[orbit_id].iter().map(move |&i| &self.edges[i])
    }

    pub fn orbit_of(&self, seg: &Segment) -> Option<usize> {
        self.edges.iter().find(|e| e.segment == *seg).map(|e| e.orbit_id)
    }

    pub fn vertex(&self, p: &Point) -> Option<&SingularVertex> {
        let p = reduce(p);
        self.vertices.iter().find(|v| v.point == p)
    }
}

/// Marked edges of `g`, one class per orbit of the normalizer, checked
/// against the expected count.
pub fn marked_edges(g: &SpaceGroup) -> Result<Vec<MarkedClass>> {
    let sg = singular_graph(g);
    let classes = marked_classes(g, &sg);
    let expected = expected_marked_count(g.name);
    if classes.len() != expected {
        return Err(Error::SignatureCountMismatch { group: g.name.to_string(), found: classes.len(), expected });
    }
    Ok(classes)
}

/// Marked group orbits grouped into normalizer classes, without the count check.
pub fn marked_classes(g: &SpaceGroup, sg: &SingularGraph) -> Vec<MarkedClass> {
    let normalizer = euclidean_normalizer(g);
    let marked: Vec<usize> = (0..sg.orbits.len()).filter(|&o| sg.edges[sg.orbits[o][0]].is_marked()).collect();
    let mut classes: Vec<MarkedClass> = Vec::new();
    let mut assigned: BTreeSet<usize> = BTreeSet::new();
    for &o in &marked {
        if assigned.contains(&o) {
            continue;
        }
        let rep = sg.edges[sg.orbits[o][0]].clone();
        let mut ids: BTreeSet<usize> =
            normalizer.iter().filter_map(|a| sg.orbit_of(&rep.segment.map(|p| a.apply(p)))).collect();
        ids.insert(o);
        assigned.extend(ids.iter().copied());
        classes.push(MarkedClass { orbit_ids: ids.into_iter().collect(), representative: rep });
    }
    classes
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactmath::rational::qvec;
    use crate::spacegroup::make_group;

    #[test]
    fn canonical_segment_is_shift_and_reverse_invariant() {
        let a = qvec((1, 4), (1, 4), (1, 4));
        let b = qvec((1, 2), (0, 1), (1, 4));
        let s = Segment::canonical(&a, &b);
        let shift = qvec((1, 1), (-2, 1), (3, 1));
        assert_eq!(Segment::canonical(&(&b + &shift), &(&a + &shift)), s);
    }

    #[test]
    fn p432_vertices() {
        let g = make_group(SpaceGroupName::P432).unwrap();
        let sg = singular_graph(&g);
        let orders: BTreeSet<usize> = sg.vertices.iter().map(|v| v.stabilizer_order).collect();
        assert_eq!(orders, BTreeSet::from([8, 24]));
        assert_eq!(sg.vertex(&Vec3::zero()).unwrap().germ_orders, vec![2, 3, 4]);
    }

    #[test]
    fn endpoints_have_larger_stabilizers() {
        for name in SpaceGroupName::ALL {
            let g = make_group(name).unwrap();
            let sg = singular_graph(&g);
            for e in &sg.edges {
                assert!(e.edge_index >= 2);
                assert!(e.end_orders.0 > e.edge_index && e.end_orders.1 > e.edge_index, "{name}");
                assert_eq!(e.link.len(), 4);
            }
            for v in &sg.vertices {
                assert_eq!(v.germ_orders.len(), 3, "{name}: trivalent");
            }
        }
    }

    #[test]
    fn interior_points_have_edge_stabilizer() {
        let third = Rational::new(1.into(), 3.into());
        for name in SpaceGroupName::ALL {
            let g = make_group(name).unwrap();
            let sg = singular_graph(&g);
            for e in &sg.edges {
                let p = &e.segment.start + &(&e.segment.end - &e.segment.start).scale(&third);
                assert_eq!(cell_stabilizer(g.cell_actions(), &p).len(), e.edge_index);
            }
        }
    }

    #[test]
    fn marked_counts_sum_to_nine() {
        let mut total = 0;
        for name in SpaceGroupName::ALL {
            let g = make_group(name).unwrap();
            let classes = marked_edges(&g).unwrap();
            assert_eq!(classes.len(), expected_marked_count(name));
            total += classes.len();
        }
        assert_eq!(total, 9);
    }
}
