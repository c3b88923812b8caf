//! Exhaustive enumeration against the closed-form normal subgroup rows.

use torus_surfaces::exactmath::Mat3;
use torus_surfaces::exactmath::SubgroupHNF;
use torus_surfaces::spacegroup::{elements, make_group, Frame, FrameKind, SpaceGroupName};
use torus_surfaces::sublattices::{
    invariant_hnfs, match_family, normal_translation_subgroups, predicted_subgroups, FamilyTag,
};

fn check_group(name: SpaceGroupName, max_index: u64) {
    let g = make_group(name).unwrap();
    let found: Vec<_> =
        normal_translation_subgroups(&g, max_index).unwrap().into_iter().map(|s| (s.family, s.index)).collect();
    let mut predicted = predicted_subgroups(&g, max_index);
    let mut found_sorted = found.clone();
    found_sorted.sort_by_key(|(f, i)| (*i, *f));
    predicted.sort_by_key(|(f, i)| (*i, *f));
    assert_eq!(found_sorted, predicted, "{name}");
}

#[test]
fn cubic_groups_match_closed_form_up_to_512() {
    for name in SpaceGroupName::ALL.into_iter().filter(|n| *n != SpaceGroupName::P622) {
        check_group(name, 512);
    }
}

#[test]
fn hexagonal_group_matches_closed_form_up_to_144() {
    check_group(SpaceGroupName::P622, 144);
}

#[test]
fn cubic_shapes_under_three_generators() {
    // Invariance under r_y, r_z and r_xyz alone already forces the three shapes.
    let c = FrameKind::Cubic;
    let mats: Vec<Mat3<i64>> =
        [elements::r_y(c), elements::r_z(c), elements::r_xyz(c)].into_iter().map(|g| g.rot).collect();
    let frame = Frame::new(c);
    let cell = SubgroupHNF::standard().cell().unwrap();
    let hits = invariant_hnfs(&mats, 216);
    assert!(hits.len() > 10);
    for h in hits {
        let l = h.to_lattice(&cell);
        let fam = match_family(&l, &frame).unwrap_or_else(|e| panic!("{e}"));
        assert!(!fam.tag.is_hex());
    }
}

#[test]
fn hexagonal_shapes_under_three_generators() {
    let h = FrameKind::Hexagonal;
    let mats: Vec<Mat3<i64>> =
        [elements::r_y(h), elements::r_z(h), elements::r_omega()].into_iter().map(|g| g.rot).collect();
    let frame = Frame::new(h);
    let cell = SubgroupHNF::standard().cell().unwrap();
    for hnf in invariant_hnfs(&mats, 144) {
        let fam = match_family(&hnf.to_lattice(&cell), &frame).unwrap_or_else(|e| panic!("{e}"));
        assert!(matches!(fam.tag, FamilyTag::HexPrimitive | FamilyTag::HexRot));
    }
}
