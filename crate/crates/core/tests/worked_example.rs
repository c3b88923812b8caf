//! The ([I4_132], beta) edge worked by hand: the segment from (1/4,1/4,1/4)
//! towards (1/2,0,1/4), its quotient graph and its cycle image.

use torus_surfaces::classify::{resolve_case, Case, EdgeLabel};
use torus_surfaces::exactmath::rational::{ivec_to_q, qvec, split_frac};
use torus_surfaces::periodicgraph::singular_graph;
use torus_surfaces::spacegroup::SpaceGroupName;
use torus_surfaces::Rational;

fn beta() -> torus_surfaces::classify::CaseGraph {
    resolve_case(Case::new(SpaceGroupName::I4_132, EdgeLabel::Beta).unwrap()).unwrap()
}

#[test]
fn hand_segment_lies_on_a_beta_edge() {
    // The hand-drawn segment stops where it leaves the fundamental domain,
    // so it is a piece of a full edge starting at the D3 vertex.
    let cg = beta();
    let g = &cg.group;
    let sg = singular_graph(g);
    let cell = g.cell();
    let a = cell.to_coords(&qvec((1, 4), (1, 4), (1, 4)));
    let p = cell.to_coords(&qvec((1, 2), (0, 1), (1, 4)));
    let zero = Rational::from_integer(0.into());
    let one = Rational::from_integer(1.into());
    let hit = cg.class.orbit_ids.iter().flat_map(|&o| sg.orbit_edges(o)).any(|e| {
        [(&e.segment.start, &e.segment.end), (&e.segment.end, &e.segment.start)].into_iter().any(|(s, t)| {
            let (fr, fl) = split_frac(&(s - &a));
            if fr.iter().any(|c| *c != zero) {
                return false;
            }
            let shift = ivec_to_q(&fl);
            let (s, t) = (s - &shift, t - &shift);
            let d = &t - &s;
            let k = (0..3).find(|&i| d[i] != zero).unwrap();
            let lambda = (&p[k] - &s[k]) / &d[k];
            lambda > zero && lambda <= one && &s + &d.scale(&lambda) == p
        })
    });
    assert!(hit, "no beta edge from (1/4,1/4,1/4) through (1/2,0,1/4)");
}

#[test]
fn hand_segment_endpoints() {
    let g = beta().group;
    assert_eq!(g.stabilizer_order(&qvec((1, 4), (1, 4), (1, 4))), 6);
    // An interior point of the edge, fixed only by the half-turn.
    assert_eq!(g.stabilizer_order(&qvec((1, 2), (0, 1), (1, 4))), 2);
}

#[test]
fn beta_graph_is_k4_with_image_t108() {
    let cg = beta();
    assert!(cg.graph.is_connected());
    assert!(cg.graph.is_k4());
    assert_eq!(cg.graph.betti_number(), 3);
    assert_eq!(cg.cycle_image.det(), Some(Rational::from_integer(108.into())));
    assert_eq!(cg.class.representative.edge_index, 2);
}
