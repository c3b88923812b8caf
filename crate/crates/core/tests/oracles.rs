//! Property tests of the lattice layer and the lift criterion against
//! direct constructions.

use std::sync::OnceLock;

use proptest::prelude::*;
use rand::rngs::StdRng;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};

use torus_surfaces::classify::{resolve_all, CaseGraph};
use torus_surfaces::exactmath::rational::i64vec_to_q;
use torus_surfaces::exactmath::{coset_reps, index, SubgroupHNF, Vec3};
use torus_surfaces::periodicgraph::{cycle_image_lattice, lift_connected, lift_connected_bruteforce};
use torus_surfaces::Rational;

fn cases() -> &'static [CaseGraph] {
    static CASES: OnceLock<Vec<CaseGraph>> = OnceLock::new();
    CASES.get_or_init(|| resolve_all().unwrap())
}

fn int_vec() -> impl Strategy<Value = [i64; 3]> {
    prop::array::uniform3(-6i64..=6)
}

fn to_q(v: &[i64; 3]) -> Vec3<Rational> {
    i64vec_to_q(&Vec3::new(v[0], v[1], v[2]))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn hnf_contains_generators_and_is_canonical(gens in prop::collection::vec(int_vec(), 1..5)) {
        let l = SubgroupHNF::from_i64(&gens);
        for v in &gens {
            prop_assert!(l.member(&to_q(v)));
        }
        prop_assert_eq!(SubgroupHNF::from_rational(&l.basis_vectors()), l.clone());
        let mut shuffled = gens.clone();
        shuffled.reverse();
        prop_assert_eq!(SubgroupHNF::from_i64(&shuffled), l);
    }

    #[test]
    fn index_is_determinant(a in int_vec(), b in int_vec(), c in int_vec()) {
        let l = SubgroupHNF::from_i64(&[a, b, c]);
        prop_assume!(l.rank() == 3);
        let idx = index(&l, &SubgroupHNF::standard()).unwrap();
        prop_assert_eq!(Rational::from_integer(idx.clone()), l.det().unwrap());
        if idx <= 200.into() {
            prop_assert_eq!(coset_reps(&l, &SubgroupHNF::standard()).unwrap().len().to_string(), idx.to_string());
        }
    }

    #[test]
    fn join_is_least_upper_bound(a in prop::collection::vec(int_vec(), 1..4), b in prop::collection::vec(int_vec(), 1..4)) {
        let la = SubgroupHNF::from_i64(&a);
        let lb = SubgroupHNF::from_i64(&b);
        let j = la.join(&lb);
        prop_assert!(j.contains(&la) && j.contains(&lb));
        prop_assert_eq!(j.clone(), lb.join(&la));
        let all: Vec<[i64; 3]> = a.iter().chain(&b).copied().collect();
        prop_assert_eq!(j, SubgroupHNF::from_i64(&all));
    }

    #[test]
    fn lift_criterion_on_arbitrary_sublattices(
        case in 0usize..9,
        a in 1i64..=4, b in 1i64..=4, c in 1i64..=4,
        x in -3i64..=3, y in -3i64..=3, z in -3i64..=3,
    ) {
        // Invariance is not needed for the covering argument, so test
        // sublattices without it.
        let cg = &cases()[case];
        let cell = cg.group.cell();
        let cols = [[a, 0, 0], [x, b, 0], [y, z, c]];
        let gens: Vec<Vec3<Rational>> = cols.iter().map(|v| cell.from_coords(&to_q(v))).collect();
        let t = SubgroupHNF::from_rational(&gens);
        let fast = lift_connected(&cg.graph, &t).unwrap();
        let slow = lift_connected_bruteforce(&cg.graph, &t).unwrap();
        prop_assert_eq!(fast, slow, "{} with {}", cg.case, t);
    }
}

#[test]
fn cycle_image_ignores_spanning_tree() {
    let mut rng = StdRng::seed_from_u64(7);
    for cg in cases() {
        let want = cycle_image_lattice(&cg.graph).unwrap();
        let mut order: Vec<usize> = (0..cg.graph.edge_count()).collect();
        for _ in 0..20 {
            order.shuffle(&mut rng);
            let root = rng.gen_range(0..cg.graph.vertex_count());
            let got = cg.graph.cycle_image_lattice_with(root, &order).unwrap();
            assert_eq!(got, want, "{} root {root}", cg.case);
        }
    }
}

#[test]
fn cycle_count_matches_betti_number() {
    for cg in cases() {
        let order: Vec<usize> = (0..cg.graph.edge_count()).collect();
        let cycles = cg.graph.cycle_vectors(0, &order).unwrap();
        assert_eq!(cycles.len(), cg.graph.betti_number(), "{}", cg.case);
    }
}
