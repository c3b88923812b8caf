//! Normal translation subgroups: exhaustive enumeration of sublattices by
//! Hermite normal form, invariance filtering, and matching against the
//! closed-form lattice families.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive, Zero};
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::exactmath::rational::{int, rat};
use crate::exactmath::{Cell, Mat3, Rational, SubgroupHNF, Vec3};
use crate::spacegroup::{Frame, FrameKind, SpaceGroup, SpaceGroupName};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum FamilyTag {
    /// `T_{n^3} = <n t_x, n t_y, n t_z>`
    CubicPrimitive,
    /// `T_{2n^3} = <2n t_x, n t_y + n t_x, n t_z + n t_x>`
    CubicFace,
    /// `T_{n^3/2} = <n t_x, n t_y, n t_half>`
    CubicBody,
    /// `<n t_w, n t_x, m t_z>`
    HexPrimitive,
    /// `<2n t_w + n t_x, n t_w + 2n t_x, m t_z>`
    HexRot,
}

impl FamilyTag {
    pub fn frame(self) -> FrameKind {
        match self {
            FamilyTag::HexPrimitive | FamilyTag::HexRot => FrameKind::Hexagonal,
            _ => FrameKind::Cubic,
        }
    }

    pub fn is_hex(self) -> bool {
        self.frame() == FrameKind::Hexagonal
    }

    /// Volume of the `n = m = 1` member.
    pub fn unit_volume(self) -> Rational {
        match self {
            FamilyTag::CubicPrimitive | FamilyTag::HexPrimitive => int(1),
            FamilyTag::CubicFace => int(2),
            FamilyTag::CubicBody => rat(1, 2),
            FamilyTag::HexRot => int(3),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct LatticeFamily {
    pub tag: FamilyTag,
    pub n: u64,
    /// Height parameter of the hexagonal families.
    pub m: Option<u64>,
}

impl LatticeFamily {
    pub fn cubic(tag: FamilyTag, n: u64) -> Self {
        LatticeFamily { tag, n, m: None }
    }

    pub fn hex(tag: FamilyTag, n: u64, m: u64) -> Self {
        LatticeFamily { tag, n, m: Some(m) }
    }

    pub fn instantiate(&self) -> SubgroupHNF {
        let n = self.n as i64;
        let m = self.m.unwrap_or(1) as i64;
        match self.tag {
            FamilyTag::CubicPrimitive => SubgroupHNF::from_i64(&[[n, 0, 0], [0, n, 0], [0, 0, n]]),
            FamilyTag::CubicFace => SubgroupHNF::from_i64(&[[2 * n, 0, 0], [n, n, 0], [n, 0, n]]),
            FamilyTag::CubicBody => {
                let h = rat(n, 2);
                SubgroupHNF::from_rational(&[
                    Vec3::new(int(n), int(0), int(0)),
                    Vec3::new(int(0), int(n), int(0)),
                    Vec3::new(h.clone(), h.clone(), h),
                ])
            }
            FamilyTag::HexPrimitive => SubgroupHNF::from_i64(&[[n, 0, 0], [0, n, 0], [0, 0, m]]),
            FamilyTag::HexRot => SubgroupHNF::from_i64(&[[2 * n, n, 0], [n, 2 * n, 0], [0, 0, m]]),
        }
    }

    /// Volume in frame coordinates (determinant of the basis).
    pub fn volume(&self) -> Rational {
        let n = Rational::from_integer(self.n.into());
        let m = Rational::from_integer(self.m.unwrap_or(1).into());
        let base = self.tag.unit_volume();
        if self.tag.is_hex() {
            base * &n * &n * m
        } else {
            base * &n * &n * n
        }
    }

    pub fn name(&self) -> String {
        match self.tag {
            // Cubic members are named by volume, which the three shapes never share.
            FamilyTag::CubicPrimitive | FamilyTag::CubicFace | FamilyTag::CubicBody => {
                format!("T_{{{}}}", self.volume())
            }
            FamilyTag::HexPrimitive => format!("<{n}t_w,{n}t_x,{}t_z>", self.m.unwrap_or(1), n = self.n),
            FamilyTag::HexRot => {
                format!("<{}t_w+{n}t_x,{n}t_w+{}t_x,{}t_z>", 2 * self.n, 2 * self.n, self.m.unwrap_or(1), n = self.n)
            }
        }
    }
}

impl fmt::Display for LatticeFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.name())
    }
}

/// One row of the normal-subgroup table of a group: lattices
/// `tag(multiplier * n)` (and free `m` for the hexagonal rows), of index
/// `pi1_coeff * n^3` (cubic) or `pi1_coeff * m * n^2` (hexagonal) in the
/// orbifold group.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Form {
    pub tag: FamilyTag,
    pub multiplier: u64,
    pub pi1_coeff: u64,
}

impl Form {
    const fn new(tag: FamilyTag, multiplier: u64, pi1_coeff: u64) -> Self {
        Form { tag, multiplier, pi1_coeff }
    }

    pub fn family(&self, n: u64, m: u64) -> LatticeFamily {
        if self.tag.is_hex() {
            LatticeFamily::hex(self.tag, self.multiplier * n, m)
        } else {
            LatticeFamily::cubic(self.tag, self.multiplier * n)
        }
    }

    pub fn pi1_index(&self, n: u64, m: u64) -> u64 {
        if self.tag.is_hex() {
            self.pi1_coeff * m * n * n
        } else {
            self.pi1_coeff * n * n * n
        }
    }

    /// Form parameters `(n, m)` of `fam`, if it belongs to this row.
    pub fn params_of(&self, fam: &LatticeFamily) -> Option<(u64, u64)> {
        (fam.tag == self.tag && fam.n % self.multiplier == 0).then(|| (fam.n / self.multiplier, fam.m.unwrap_or(1)))
    }

    /// Volume-style label such as `T_{2n^3}`, or the hexagonal generators.
    pub fn label(&self) -> String {
        match self.tag {
            FamilyTag::HexPrimitive => "<nt_w,nt_x,mt_z>".to_string(),
            FamilyTag::HexRot => "<2nt_w+nt_x,nt_w+2nt_x,mt_z>".to_string(),
            _ => {
                let v = self.tag.unit_volume() * Rational::from_integer(BigInt::from(self.multiplier.pow(3)));
                if v.is_integer() {
                    if v == int(1) {
                        "T_{n^3}".to_string()
                    } else {
                        format!("T_{{{}n^3}}", v)
                    }
                } else if v.numer() == &BigInt::from(1) {
                    format!("T_{{n^3/{}}}", v.denom())
                } else {
                    format!("T_{{{}n^3/{}}}", v.numer(), v.denom())
                }
            }
        }
    }
}

/// Normal translation subgroups of each group, as closed-form rows.
pub fn forms(name: SpaceGroupName) -> Vec<Form> {
    use FamilyTag::*;
    use SpaceGroupName::*;
    match name {
        P432 | P4_232 => {
            vec![Form::new(CubicPrimitive, 1, 24), Form::new(CubicFace, 1, 48), Form::new(CubicBody, 2, 96)]
        }
        F4_132 => vec![Form::new(CubicFace, 1, 24), Form::new(CubicPrimitive, 2, 96), Form::new(CubicBody, 4, 384)],
        I4_132 => vec![Form::new(CubicBody, 2, 24), Form::new(CubicPrimitive, 2, 48), Form::new(CubicFace, 2, 96)],
        I432 => vec![Form::new(CubicBody, 1, 24), Form::new(CubicPrimitive, 1, 48), Form::new(CubicFace, 1, 96)],
        P622 => vec![Form::new(HexPrimitive, 1, 12), Form::new(HexRot, 1, 36)],
    }
}

/// Lower-triangular HNF in lattice coordinates: columns `(a, h10, h20)`,
/// `(0, b, h21)`, `(0, 0, c)` with `h10 < b` and `h20, h21 < c`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SmallHnf {
    pub a: i64,
    pub b: i64,
    pub c: i64,
    pub h10: i64,
    pub h20: i64,
    pub h21: i64,
}

impl SmallHnf {
    pub fn index(&self) -> i64 {
        self.a * self.b * self.c
    }

    pub fn columns(&self) -> [[i64; 3]; 3] {
        [[self.a, self.h10, self.h20], [0, self.b, self.h21], [0, 0, self.c]]
    }

    #[inline]
    pub fn member(&self, v: [i64; 3]) -> bool {
        if v[0] % self.a != 0 {
            return false;
        }
        let x0 = v[0] / self.a;
        let r1 = v[1] - x0 * self.h10;
        if r1 % self.b != 0 {
            return false;
        }
        let x1 = r1 / self.b;
        (v[2] - x0 * self.h20 - x1 * self.h21) % self.c == 0
    }

    #[inline]
    pub fn invariant_under(&self, m: &Mat3<i64>) -> bool {
        self.columns().iter().all(|col| {
            let r = &m.rows;
            self.member([
                r[0][0] * col[0] + r[0][1] * col[1] + r[0][2] * col[2],
                r[1][0] * col[0] + r[1][1] * col[1] + r[1][2] * col[2],
                r[2][0] * col[0] + r[2][1] * col[1] + r[2][2] * col[2],
            ])
        })
    }

    /// The lattice in frame coordinates, given the cell of the ambient `T0`.
    pub fn to_lattice(&self, cell: &Cell) -> SubgroupHNF {
        let cols: Vec<Vec3<Rational>> =
            self.columns().iter().map(|c| cell.from_coords(&Vec3::new(int(c[0]), int(c[1]), int(c[2])))).collect();
        SubgroupHNF::from_rational(&cols)
    }
}

/// Calls `f` on every index-`d` sublattice of `Z^3`, in canonical order.
pub fn for_each_hnf<F: FnMut(SmallHnf)>(d: i64, mut f: F) {
    for a in (1..=d).filter(|a| d % a == 0) {
        let bc = d / a;
        for b in (1..=bc).filter(|b| bc % b == 0) {
            let c = bc / b;
            for h10 in 0..b {
                for h20 in 0..c {
                    for h21 in 0..c {
                        f(SmallHnf { a, b, c, h10, h20, h21 });
                    }
                }
            }
        }
    }
}

/// Number of index-`d` sublattices of `Z^3`.
pub fn sublattice_count(d: i64) -> u64 {
    let mut total = 0u64;
    for a in (1..=d).filter(|a| d % a == 0) {
        let bc = d / a;
        for b in (1..=bc).filter(|b| bc % b == 0) {
            let c = (bc / b) as u64;
            total += b as u64 * c * c;
        }
    }
    total
}

/// All sublattices of `t0` of index exactly `d`, in canonical form.
pub fn enumerate_sublattices(t0: &SubgroupHNF, d: u64) -> Result<Vec<SubgroupHNF>> {
    let cell = t0.cell()?;
    let mut out = Vec::with_capacity(sublattice_count(d as i64) as usize);
    for_each_hnf(d as i64, |h| out.push(h.to_lattice(&cell)));
    Ok(out)
}

/// Whether `l` is carried to itself by every rotation part of `g`.
pub fn is_invariant(l: &SubgroupHNF, g: &SpaceGroup) -> Result<bool> {
    if !g.t0.contains(l) {
        return Err(Error::NotASubgroup);
    }
    Ok(g.cosets.iter().all(|c| l.basis_vectors().iter().all(|b| l.member(&c.conjugate_translation(b)))))
}

/// Index-`d` sublattices of `Z^3` invariant under all of `mats`, for
/// every `d` up to `max_index`, sorted by index then canonical entries.
pub fn invariant_hnfs(mats: &[Mat3<i64>], max_index: u64) -> Vec<SmallHnf> {
    let per_d: Vec<Vec<SmallHnf>> = (1..=max_index as i64)
        .into_par_iter()
        .map(|d| {
            let mut found = Vec::new();
            for_each_hnf(d, |h| {
                if mats.iter().all(|m| h.invariant_under(m)) {
                    found.push(h);
                }
            });
            found
        })
        .collect();
    per_d.into_iter().flatten().collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct NormalSubgroup {
    pub lattice: SubgroupHNF,
    pub family: LatticeFamily,
    /// Index in `T0`.
    pub index: u64,
    /// Index in the orbifold group: `point_order * index`.
    pub pi1_index: u64,
}

/// Every normal translation subgroup of `g` with index in `T0` at most
/// `max_index`, matched to its family.
pub fn normal_translation_subgroups(g: &SpaceGroup, max_index: u64) -> Result<Vec<NormalSubgroup>> {
    let mats = g.generator_rotations_in_cell();
    invariant_hnfs(&mats, max_index)
        .into_iter()
        .map(|h| {
            let lattice = h.to_lattice(g.cell());
            let family = match_family(&lattice, &g.frame)?;
            let index = h.index() as u64;
            Ok(NormalSubgroup { lattice, family, index, pi1_index: g.point_order as u64 * index })
        })
        .collect()
}

fn exact_root(x: &Rational, k: u32) -> Option<u64> {
    if !x.is_integer() || x <= &Rational::zero() {
        return None;
    }
    let v = x.to_integer().to_u64()?;
    let r = (v as f64).powf(1.0 / k as f64).round() as u64;
    (r.saturating_sub(1)..=r + 1).find(|c| *c > 0 && c.checked_pow(k) == Some(v))
}

/// The family member equal to `l`.
pub fn match_family(l: &SubgroupHNF, frame: &Frame) -> Result<LatticeFamily> {
    let unmatched = || Error::UnmatchedLattice(l.to_string());
    let vol = l.det().ok_or_else(unmatched)?.abs();
    let candidates: Vec<LatticeFamily> = match frame.kind {
        FrameKind::Cubic => [FamilyTag::CubicPrimitive, FamilyTag::CubicFace, FamilyTag::CubicBody]
            .into_iter()
            .filter_map(|t| exact_root(&(vol.clone() / t.unit_volume()), 3).map(|n| LatticeFamily::cubic(t, n)))
            .collect(),
        FrameKind::Hexagonal => [FamilyTag::HexPrimitive, FamilyTag::HexRot]
            .into_iter()
            .flat_map(|t| {
                let q = vol.clone() / t.unit_volume();
                let v = if q.is_integer() { q.to_integer().to_u64().unwrap_or(0) } else { 0 };
                (1..)
                    .take_while(move |n| n * n <= v)
                    .filter(move |n| v % (n * n) == 0)
                    .map(move |n| LatticeFamily::hex(t, n, v / (n * n)))
            })
            .collect(),
    };
    candidates.into_iter().find(|f| f.instantiate() == *l).ok_or_else(unmatched)
}

/// Family instances of `g` with index in `T0` at most `max_index`, as
/// predicted by the closed-form rows.
pub fn predicted_subgroups(g: &SpaceGroup, max_index: u64) -> Vec<(LatticeFamily, u64)> {
    let t0_vol = g.t0.det().expect("full rank");
    let mut out = Vec::new();
    for form in forms(g.name) {
        let index_of = |n: u64, m: u64| {
            let r = form.family(n, m).volume() / &t0_vol;
            r.is_integer().then(|| r.to_integer().to_u64()).flatten()
        };
        for n in 1.. {
            match index_of(n, 1) {
                Some(i) if i > max_index => break,
                None => break,
                _ => {}
            }
            for m in 1.. {
                match index_of(n, m) {
                    Some(i) if i <= max_index => out.push((form.family(n, m), i)),
                    _ => break,
                }
                if !form.tag.is_hex() {
                    break;
                }
            }
        }
    }
    out.sort_by_key(|(f, i)| (*i, *f));
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::spacegroup::make_group;

    #[test]
    fn sublattice_counts() {
        let known = [1u64, 7, 13, 35, 31, 91, 57, 155, 130, 217];
        for (d, &k) in known.iter().enumerate() {
            let d = d as i64 + 1;
            assert_eq!(sublattice_count(d), k);
            let mut n = 0;
            for_each_hnf(d, |_| n += 1);
            assert_eq!(n, k);
        }
    }

    #[test]
    fn enumeration_is_canonical_and_distinct() {
        let t0 = SubgroupHNF::standard();
        let l = enumerate_sublattices(&t0, 4).unwrap();
        assert_eq!(l.len(), 35);
        let mut dedup = l.clone();
        dedup.sort_by_key(|x| x.to_string());
        dedup.dedup();
        assert_eq!(dedup.len(), 35);
        assert!(l.contains(&SubgroupHNF::from_i64(&[[2, 0, 0], [0, 2, 0], [1, 1, 1]])));
        assert_eq!(enumerate_sublattices(&t0, 1).unwrap(), vec![t0]);
    }

    #[test]
    fn enumeration_in_body_centred_cell() {
        let g = make_group(SpaceGroupName::I432).unwrap();
        let l = enumerate_sublattices(&g.t0, 2).unwrap();
        assert_eq!(l.len(), 7);
        assert!(l.contains(&SubgroupHNF::standard()));
    }

    #[test]
    fn invariance_examples() {
        let g = make_group(SpaceGroupName::P432).unwrap();
        assert!(is_invariant(&g.t0, &g).unwrap());
        assert!(!is_invariant(&SubgroupHNF::from_i64(&[[1, 0, 0], [0, 2, 0], [0, 0, 2]]), &g).unwrap());
        assert!(is_invariant(&LatticeFamily::cubic(FamilyTag::CubicFace, 1).instantiate(), &g).unwrap());
        let half = LatticeFamily::cubic(FamilyTag::CubicBody, 1).instantiate();
        assert_eq!(is_invariant(&half, &g), Err(Error::NotASubgroup));
    }

    #[test]
    fn match_family_examples() {
        let c = Frame::new(FrameKind::Cubic);
        let t2 = SubgroupHNF::from_i64(&[[2, 0, 0], [1, 1, 0], [1, 0, 1]]);
        assert_eq!(match_family(&t2, &c).unwrap(), LatticeFamily::cubic(FamilyTag::CubicFace, 1));
        let t108 = SubgroupHNF::from_i64(&[[6, 0, 0], [0, 6, 0], [3, 3, 3]]);
        assert_eq!(match_family(&t108, &c).unwrap(), LatticeFamily::cubic(FamilyTag::CubicBody, 6));
        assert_eq!(
            match_family(&SubgroupHNF::standard(), &c).unwrap(),
            LatticeFamily::cubic(FamilyTag::CubicPrimitive, 1)
        );
        let odd = SubgroupHNF::from_i64(&[[1, 0, 0], [0, 2, 0], [0, 0, 4]]);
        assert!(matches!(match_family(&odd, &c), Err(Error::UnmatchedLattice(_))));
        let h = Frame::new(FrameKind::Hexagonal);
        let hr = LatticeFamily::hex(FamilyTag::HexRot, 2, 3);
        assert_eq!(match_family(&hr.instantiate(), &h).unwrap(), hr);
    }

    #[test]
    fn family_volumes_match_instances() {
        for tag in [FamilyTag::CubicPrimitive, FamilyTag::CubicFace, FamilyTag::CubicBody] {
            for n in 1..6 {
                let f = LatticeFamily::cubic(tag, n);
                assert_eq!(f.instantiate().det().unwrap(), f.volume());
            }
        }
        for tag in [FamilyTag::HexPrimitive, FamilyTag::HexRot] {
            let f = LatticeFamily::hex(tag, 3, 2);
            assert_eq!(f.instantiate().det().unwrap(), f.volume());
        }
    }

    #[test]
    fn f4132_survivors_up_to_sixteen() {
        let g = make_group(SpaceGroupName::F4_132).unwrap();
        let got: Vec<(LatticeFamily, u64)> =
            normal_translation_subgroups(&g, 16).unwrap().into_iter().map(|s| (s.family, s.pi1_index)).collect();
        let fam = LatticeFamily::cubic;
        let want = vec![
            (fam(FamilyTag::CubicFace, 1), 24),
            (fam(FamilyTag::CubicPrimitive, 2), 96),
            (fam(FamilyTag::CubicFace, 2), 192),
            (fam(FamilyTag::CubicBody, 4), 384),
        ];
        assert_eq!(got, want);
    }

    #[test]
    fn p622_hex_primitive_indices() {
        let g = make_group(SpaceGroupName::P622).unwrap();
        let subs = normal_translation_subgroups(&g, 12).unwrap();
        for s in &subs {
            if s.family.tag == FamilyTag::HexPrimitive {
                assert_eq!(s.pi1_index, 12 * s.family.m.unwrap() * s.family.n * s.family.n);
            }
        }
        assert!(subs.iter().any(|s| s.family == LatticeFamily::hex(FamilyTag::HexRot, 1, 1)));
    }

    #[test]
    fn names_are_volumes() {
        assert_eq!(LatticeFamily::cubic(FamilyTag::CubicBody, 6).name(), "T_{108}");
        assert_eq!(LatticeFamily::cubic(FamilyTag::CubicBody, 1).name(), "T_{1/2}");
        assert_eq!(LatticeFamily::cubic(FamilyTag::CubicFace, 1).name(), "T_{2}");
    }

    #[test]
    fn form_labels() {
        let labels: Vec<String> = forms(SpaceGroupName::F4_132).iter().map(Form::label).collect();
        assert_eq!(labels, ["T_{2n^3}", "T_{8n^3}", "T_{32n^3}"]);
        let labels: Vec<String> = forms(SpaceGroupName::I432).iter().map(Form::label).collect();
        assert_eq!(labels, ["T_{n^3/2}", "T_{n^3}", "T_{2n^3}"]);
    }
}
