//! Quotient graphs of singular-edge orbits in `R^3 / T0`, their cycle
//! images in `T0`, and connectivity of lifts to finite covers.

mod singular;

pub use singular::{
    cell_stabilizer, expected_marked_count, marked_classes, marked_edges, singular_graph, MarkedClass, Point, Segment,
    SingularEdge, SingularGraph, SingularVertex, MARKED_LINK,
};

use std::collections::{BTreeMap, HashMap, VecDeque};
use std::fmt::Write as _;

use num_bigint::BigInt;
use num_traits::ToPrimitive;
use serde::ser::SerializeSeq;
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::exactmath::rational::{int, q_to_ivec, split_frac};
use crate::exactmath::{index, Rational, SubgroupHNF, Vec3};
use crate::spacegroup::{SpaceGroup, SpaceGroupName};

pub(crate) fn ser_point<S: Serializer>(p: &Point, s: S) -> std::result::Result<S::Ok, S::Error> {
    let mut seq = s.serialize_seq(Some(3))?;
    for c in p.iter() {
        seq.serialize_element(&c.to_string())?;
    }
    seq.end()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GraphEdge {
    pub i: usize,
    pub j: usize,
    /// Lattice translation (in `T0` coordinates) added to vertex `j`.
    pub shift: [i64; 3],
}

/// Finite graph with `T0`-shift labels on edges, encoding a periodic graph
/// in `R^3`. Vertices are in `T0` coordinates, reduced into `[0, 1)^3`.
#[derive(Clone, Debug, Serialize)]
pub struct PeriodicGraph {
    pub group: SpaceGroupName,
    pub t0: SubgroupHNF,
    #[serde(serialize_with = "ser_points")]
    pub vertices: Vec<Point>,
    pub edges: Vec<GraphEdge>,
    /// Frame-coordinate basis of `T0`, columns.
    #[serde(skip)]
    cell_basis: Vec<Vec3<Rational>>,
}

fn ser_points<S: Serializer>(ps: &[Point], s: S) -> std::result::Result<S::Ok, S::Error> {
    let v: Vec<Vec<String>> = ps.iter().map(|p| p.iter().map(|c| c.to_string()).collect()).collect();
    v.serialize(s)
}

fn qshift(v: &[i64; 3]) -> Vec3<Rational> {
    Vec3::new(int(v[0]), int(v[1]), int(v[2]))
}

fn ivec_to_i64(v: &Vec3<BigInt>) -> [i64; 3] {
    [0, 1, 2].map(|k| v[k].to_i64().expect("small shift"))
}

impl PeriodicGraph {
    /// Build from segments given in `T0` coordinates.
    pub fn from_segments(g: &SpaceGroup, segments: &[Segment]) -> PeriodicGraph {
        let mut index_of: BTreeMap<Point, usize> = BTreeMap::new();
        let mut vertices = Vec::new();
        let mut vid = |p: &Point| -> (usize, Vec3<BigInt>) {
            let (fr, fl) = split_frac(p);
            let next = index_of.len();
            let id = *index_of.entry(fr.clone()).or_insert_with(|| {
                vertices.push(fr);
                next
            });
            (id, fl)
        };
        let mut edges: Vec<GraphEdge> = Vec::new();
        for s in segments {
            let (i, fa) = vid(&s.start);
            let (j, fb) = vid(&s.end);
            let shift = ivec_to_i64(&(&fb - &fa));
            let e = GraphEdge { i, j, shift };
            let rev = GraphEdge { i: j, j: i, shift: shift.map(|c| -c) };
            if !edges.contains(&e) && !edges.contains(&rev) {
                edges.push(e);
            }
        }
        let basis = g.cell().basis();
        PeriodicGraph {
            group: g.name,
            t0: g.t0.clone(),
            vertices,
            edges,
            cell_basis: (0..3).map(|k| basis.col(k)).collect(),
        }
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn degrees(&self) -> Vec<usize> {
        let mut d = vec![0; self.vertices.len()];
        for e in &self.edges {
            d[e.i] += 1;
            d[e.j] += 1;
        }
        d
    }

    /// First Betti number of the quotient graph (assumes connected).
    pub fn betti_number(&self) -> usize {
        self.edges.len() + 1 - self.vertices.len()
    }

    /// `T0` coordinates to frame coordinates.
    pub fn to_frame(&self, c: &Vec3<Rational>) -> Vec3<Rational> {
        (0..3).fold(Vec3::zero(), |acc, k| acc + self.cell_basis[k].scale(&c[k]))
    }

    fn adjacency(&self) -> Vec<Vec<(usize, usize, [i64; 3])>> {
        let mut adj = vec![Vec::new(); self.vertices.len()];
        for (k, e) in self.edges.iter().enumerate() {
            adj[e.i].push((k, e.j, e.shift));
            adj[e.j].push((k, e.i, e.shift.map(|c| -c)));
        }
        adj
    }

    pub fn is_connected(&self) -> bool {
        self.spanning_potentials(0, &(0..self.edges.len()).collect::<Vec<_>>()).is_some()
    }

    /// BFS from `root` visiting edges in `order`; returns the lift position
    /// of each vertex and which edges form the tree.
    fn spanning_potentials(&self, root: usize, order: &[usize]) -> Option<(Vec<[i64; 3]>, Vec<bool>)> {
        let n = self.vertices.len();
        if n == 0 {
            return Some((Vec::new(), vec![false; self.edges.len()]));
        }
        let rank: HashMap<usize, usize> = order.iter().enumerate().map(|(r, &k)| (k, r)).collect();
        let mut adj = self.adjacency();
        for a in adj.iter_mut() {
            a.sort_by_key(|(k, _, _)| rank[k]);
        }
        let mut pos: Vec<Option<[i64; 3]>> = vec![None; n];
        let mut tree = vec![false; self.edges.len()];
        pos[root] = Some([0, 0, 0]);
        let mut queue = VecDeque::from([root]);
        while let Some(v) = queue.pop_front() {
            let pv = pos[v].unwrap();
            for &(k, w, s) in &adj[v] {
                if pos[w].is_none() {
                    pos[w] = Some([pv[0] + s[0], pv[1] + s[1], pv[2] + s[2]]);
                    tree[k] = true;
                    queue.push_back(w);
                }
            }
        }
        pos.into_iter().collect::<Option<Vec<_>>>().map(|p| (p, tree))
    }

    /// Net translations of the fundamental cycles, in `T0` coordinates.
    pub fn cycle_vectors(&self, root: usize, order: &[usize]) -> Result<Vec<[i64; 3]>> {
        let (pos, tree) = self.spanning_potentials(root, order).ok_or(Error::Disconnected)?;
        Ok(self
            .edges
            .iter()
            .enumerate()
            .filter(|(k, _)| !tree[*k])
            .map(|(_, e)| [0, 1, 2].map(|c| pos[e.i][c] + e.shift[c] - pos[e.j][c]))
            .collect())
    }

    /// Cycle-image lattice using a spanning tree grown from `root`, taking
    /// edges in `order`.
    pub fn cycle_image_lattice_with(&self, root: usize, order: &[usize]) -> Result<SubgroupHNF> {
        let gens: Vec<Vec3<Rational>> =
            self.cycle_vectors(root, order)?.iter().map(|v| self.to_frame(&qshift(v))).collect();
        Ok(SubgroupHNF::from_rational(&gens))
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(self).expect("serializable")
    }

    /// Wavefront OBJ polyline of the edges in one cell of the lift, in
    /// Cartesian coordinates.
    pub fn to_obj(&self, frame: &crate::spacegroup::Frame) -> String {
        let mut out = String::new();
        let mut count = 0;
        for e in &self.edges {
            let a = self.to_frame(&self.vertices[e.i]);
            let s = qshift(&e.shift);
            let b = self.to_frame(&(&self.vertices[e.j] + &s));
            for p in [a, b] {
                let c = frame.to_cartesian(&p);
                let _ = writeln!(out, "v {:.6} {:.6} {:.6}", c[0].to_f64(), c[1].to_f64(), c[2].to_f64());
            }
            let _ = writeln!(out, "l {} {}", count + 1, count + 2);
            count += 2;
        }
        out
    }

    /// Abstract multigraph after suppressing degree-two vertices; returns
    /// the surviving vertex count and the edges between them.
    pub fn smoothed(&self) -> (usize, Vec<(usize, usize)>) {
        let deg = self.degrees();
        let keep: Vec<usize> = (0..self.vertices.len()).filter(|&v| deg[v] != 2).collect();
        let new_id: HashMap<usize, usize> = keep.iter().enumerate().map(|(k, &v)| (v, k)).collect();
        let adj = self.adjacency();
        let mut used = vec![false; self.edges.len()];
        let mut out = Vec::new();
        for &v in &keep {
            for &(k, w, _) in &adj[v] {
                if used[k] {
                    continue;
                }
                used[k] = true;
                let (mut prev_edge, mut cur) = (k, w);
                while deg[cur] == 2 {
                    let &(k2, w2, _) = adj[cur].iter().find(|(k2, _, _)| *k2 != prev_edge).unwrap_or(&adj[cur][0]);
                    used[k2] = true;
                    prev_edge = k2;
                    cur = w2;
                }
                out.push((new_id[&v], new_id[&cur]));
            }
        }
        (keep.len(), out)
    }

    /// Whether the smoothed graph is the complete graph on four vertices.
    pub fn is_k4(&self) -> bool {
        let (n, edges) = self.smoothed();
        if n != 4 || edges.len() != 6 {
            return false;
        }
        let mut pairs: Vec<(usize, usize)> = edges.iter().map(|&(a, b)| (a.min(b), a.max(b))).collect();
        pairs.sort_unstable();
        pairs.dedup();
        pairs.len() == 6 && pairs.iter().all(|(a, b)| a != b)
    }
}

/// Quotient graph in `R^3 / T0` of the full preimage of one edge orbit.
pub fn edge_orbit_graph(g: &SpaceGroup, e: &SingularEdge) -> PeriodicGraph {
    let segs: Vec<Segment> = g.cell_actions().iter().map(|a| e.segment.map(|p| a.apply(p))).collect();
    PeriodicGraph::from_segments(g, &segs)
}

/// Subgroup of `T0` generated by the translations of closed loops in `g`.
pub fn cycle_image_lattice(g: &PeriodicGraph) -> Result<SubgroupHNF> {
    g.cycle_image_lattice_with(0, &(0..g.edges.len()).collect::<Vec<_>>())
}

fn check_sub(g: &PeriodicGraph, t: &SubgroupHNF) -> Result<()> {
    if t.rank() != 3 || !g.t0.contains(t) {
        return Err(Error::NotASubgroup);
    }
    Ok(())
}

/// Whether the preimage of `g` in `R^3 / t` is connected.
pub fn lift_connected(g: &PeriodicGraph, t: &SubgroupHNF) -> Result<bool> {
    check_sub(g, t)?;
    Ok(cycle_image_lattice(g)?.join(t) == g.t0)
}

/// Same question answered by building the lift: one copy of each vertex
/// per coset of `t` in `T0`, joined by union-find.
pub fn lift_connected_bruteforce(g: &PeriodicGraph, t: &SubgroupHNF) -> Result<bool> {
    check_sub(g, t)?;
    let cell = g.t0.cell()?;
    let t_local = t.transform(&cell_inverse(&cell));
    let t_cell = t_local.cell()?;
    let reps = crate::exactmath::coset_reps(&t_local, &SubgroupHNF::standard())?;
    let key_of: HashMap<Vec3<Rational>, usize> =
        reps.iter().enumerate().map(|(k, r)| (t_cell.reduce(r).0, k)).collect();
    let n = g.vertices.len();
    let mut uf = UnionFind::new(n * reps.len());
    for e in &g.edges {
        let s = qshift(&e.shift);
        for (k, r) in reps.iter().enumerate() {
            let target = key_of[&t_cell.reduce(&(r + &s)).0];
            uf.union(e.i * reps.len() + k, e.j * reps.len() + target);
        }
    }
    Ok(uf.components() == 1)
}

fn cell_inverse(cell: &crate::exactmath::Cell) -> crate::exactmath::Mat3<Rational> {
    cell.basis().inverse().expect("full rank")
}

/// Genus of the boundary of a regular neighbourhood of the lift of `g` to
/// `R^3 / t`.
pub fn lift_genus(g: &PeriodicGraph, t: &SubgroupHNF) -> Result<i64> {
    if !lift_connected(g, t)? {
        return Err(Error::Disconnected);
    }
    let idx = index(t, &g.t0)?.to_i64().expect("small index");
    Ok(idx * (g.edges.len() as i64 - g.vertices.len() as i64) + 1)
}

struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind { parent: (0..n).collect() }
    }

    fn find(&mut self, x: usize) -> usize {
        let mut r = x;
        while self.parent[r] != r {
            r = self.parent[r];
        }
        let mut y = x;
        while self.parent[y] != r {
            let next = self.parent[y];
            self.parent[y] = r;
            y = next;
        }
        r
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            self.parent[ra] = rb;
        }
    }

    fn components(&mut self) -> usize {
        (0..self.parent.len()).filter(|&x| self.find(x) == x).count()
    }
}

/// Segment in frame coordinates converted to the canonical `T0` form.
pub fn segment_from_frame(g: &SpaceGroup, a: &Vec3<Rational>, b: &Vec3<Rational>) -> Segment {
    let cell = g.cell();
    Segment::canonical(&cell.to_coords(a), &cell.to_coords(b))
}

/// Whether a frame-coordinate vector is a lattice vector of `T0`.
pub fn in_t0(g: &SpaceGroup, v: &Vec3<Rational>) -> bool {
    q_to_ivec(&g.cell().to_coords(v)).is_some()
}
