//! Affine isometries in lattice frames and the six space groups whose
//! orbifolds carry the maximally symmetric surfaces.

mod axis;
mod normalizer;

pub use axis::{fixed_axis, Axis};
pub use normalizer::{euclidean_normalizer, AffineSymmetry};

use std::collections::{HashMap, VecDeque};
use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::exactmath::rational::{i64mat_to_q, int, q_to_i64mat, rat};
use crate::exactmath::{Cell, Mat3, QSqrt3, Rational, SubgroupHNF, Vec3};

/// Closure gives up beyond this many cosets.
pub const MAX_COSETS: usize = 96;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum FrameKind {
    /// Orthonormal basis `(t_x, t_y, t_z)`.
    Cubic,
    /// Basis `(t_w, t_x, t_z)` with `t_w` at 120 degrees from `t_x`.
    Hexagonal,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Frame {
    pub kind: FrameKind,
    /// Inner products of the basis vectors.
    pub gram: Mat3<Rational>,
}

impl Frame {
    pub fn new(kind: FrameKind) -> Self {
        let gram = match kind {
            FrameKind::Cubic => Mat3::identity(),
            FrameKind::Hexagonal => {
                Mat3::from_rows([[int(1), rat(-1, 2), int(0)], [rat(-1, 2), int(1), int(0)], [int(0), int(0), int(1)]])
            }
        };
        Frame { kind, gram }
    }

    pub fn inner(&self, u: &Vec3<Rational>, v: &Vec3<Rational>) -> Rational {
        u.dot(&self.gram.mul_vec(v))
    }

    /// Columns are the Cartesian coordinates of the frame basis vectors.
    pub fn cartesian_basis(&self) -> Mat3<QSqrt3> {
        let q = |n, d| QSqrt3::rational(rat(n, d));
        match self.kind {
            FrameKind::Cubic => Mat3::identity(),
            FrameKind::Hexagonal => Mat3::from_cols([
                Vec3::new(q(-1, 2), QSqrt3::new(int(0), rat(1, 2)), q(0, 1)),
                Vec3::new(q(1, 1), q(0, 1), q(0, 1)),
                Vec3::new(q(0, 1), q(0, 1), q(1, 1)),
            ]),
        }
    }

    pub fn to_cartesian(&self, v: &Vec3<Rational>) -> Vec3<QSqrt3> {
        self.cartesian_basis().mul_vec(&v.map(|c| QSqrt3::rational(c.clone())))
    }
}

/// Orientation-preserving affine isometry `x -> rot x + trans`, in frame
/// coordinates.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Isometry {
    pub frame: FrameKind,
    pub rot: Mat3<i64>,
    pub trans: Vec3<Rational>,
}

impl Isometry {
    pub fn identity(frame: FrameKind) -> Self {
        Isometry { frame, rot: Mat3::identity(), trans: Vec3::zero() }
    }

    pub fn translation(frame: FrameKind, v: Vec3<Rational>) -> Self {
        Isometry { frame, rot: Mat3::identity(), trans: v }
    }

    pub fn linear(frame: FrameKind, rot: Mat3<i64>) -> Self {
        Isometry { frame, rot, trans: Vec3::zero() }
    }

    pub fn rot_q(&self) -> Mat3<Rational> {
        i64mat_to_q(&self.rot)
    }

    /// `self` after `h`: `x -> self(h(x))`.
    pub fn compose(&self, h: &Isometry) -> Result<Isometry> {
        if self.frame != h.frame {
            return Err(Error::FrameMismatch);
        }
        Ok(Isometry {
            frame: self.frame,
            rot: self.rot.mul_mat(&h.rot),
            trans: self.rot_q().mul_vec(&h.trans) + self.trans.clone(),
        })
    }

    /// Composition of a sequence of same-frame isometries, leftmost applied last.
    pub fn product(factors: &[&Isometry]) -> Result<Isometry> {
        let (first, rest) = factors.split_first().expect("non-empty product");
        rest.iter().try_fold((*first).clone(), |acc, g| acc.compose(g))
    }

    pub fn inverse(&self) -> Isometry {
        // det = 1, so the adjugate is the inverse.
        let inv = self.rot.adjugate();
        let t = -i64mat_to_q(&inv).mul_vec(&self.trans);
        Isometry { frame: self.frame, rot: inv, trans: t }
    }

    pub fn apply(&self, p: &Vec3<Rational>) -> Vec3<Rational> {
        self.rot_q().mul_vec(p) + self.trans.clone()
    }

    /// The translation `g^-1 t_u g`, i.e. `rot^-1 u`.
    pub fn conjugate_translation(&self, u: &Vec3<Rational>) -> Vec3<Rational> {
        i64mat_to_q(&self.rot.adjugate()).mul_vec(u)
    }

    /// Whether `rot` preserves the frame metric with determinant one.
    pub fn is_proper_isometry(&self, frame: &Frame) -> bool {
        let r = self.rot_q();
        self.rot.det() == 1 && r.transpose().mul_mat(&frame.gram).mul_mat(&r) == frame.gram
    }

    pub fn rotation_order(&self) -> u32 {
        self.rot.order(6).expect("crystallographic rotation")
    }
}

impl fmt::Display for Isometry {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "rot={} trans={}", self.rot, self.trans)
    }
}

/// Named translations and rotations, in the coordinates of `frame`.
pub mod elements {
    use super::*;

    fn cubic_only(frame: FrameKind, what: &str) {
        assert_eq!(frame, FrameKind::Cubic, "{what} is only defined in the cubic frame");
    }

    pub fn t_x(frame: FrameKind) -> Vec3<Rational> {
        match frame {
            FrameKind::Cubic => Vec3::new(int(1), int(0), int(0)),
            FrameKind::Hexagonal => Vec3::new(int(0), int(1), int(0)),
        }
    }

    pub fn t_y() -> Vec3<Rational> {
        Vec3::new(int(0), int(1), int(0))
    }

    pub fn t_z(_frame: FrameKind) -> Vec3<Rational> {
        Vec3::new(int(0), int(0), int(1))
    }

    pub fn t_half() -> Vec3<Rational> {
        Vec3::new(rat(1, 2), rat(1, 2), rat(1, 2))
    }

    /// `t_w`, the unit vector at 120 degrees from `t_x` (hexagonal frame).
    pub fn t_omega() -> Vec3<Rational> {
        Vec3::new(int(1), int(0), int(0))
    }

    /// Half-turn about the y axis.
    pub fn r_y(frame: FrameKind) -> Isometry {
        let m = match frame {
            FrameKind::Cubic => [[-1, 0, 0], [0, 1, 0], [0, 0, -1]],
            // t_w -> t_w + t_x, t_x -> -t_x, t_z -> -t_z
            FrameKind::Hexagonal => [[1, 0, 0], [1, -1, 0], [0, 0, -1]],
        };
        Isometry::linear(frame, Mat3::from_rows(m))
    }

    /// Half-turn about the z axis.
    pub fn r_z(frame: FrameKind) -> Isometry {
        Isometry::linear(frame, Mat3::from_rows([[-1, 0, 0], [0, -1, 0], [0, 0, 1]]))
    }

    /// Half-turn about `(1, 1, 0)`: `(x, y, z) -> (y, x, -z)`.
    pub fn r_xy(frame: FrameKind) -> Isometry {
        cubic_only(frame, "r_xy");
        Isometry::linear(frame, Mat3::from_rows([[0, 1, 0], [1, 0, 0], [0, 0, -1]]))
    }

    /// Third-turn about `(1, 1, 1)`: `(x, y, z) -> (z, x, y)`.
    pub fn r_xyz(frame: FrameKind) -> Isometry {
        cubic_only(frame, "r_xyz");
        Isometry::linear(frame, Mat3::from_rows([[0, 0, 1], [1, 0, 0], [0, 1, 0]]))
    }

    /// Third-turn about z in the hexagonal frame: `t_w -> -t_w - t_x`,
    /// `t_x -> t_w`, `t_z -> t_z`.
    pub fn r_omega() -> Isometry {
        Isometry::linear(FrameKind::Hexagonal, Mat3::from_rows([[-1, 1, 0], [-1, 0, 0], [0, 0, 1]]))
    }

    /// `translation(v) * g`.
    pub fn shifted(v: Vec3<Rational>, g: &Isometry) -> Isometry {
        Isometry::translation(g.frame, v).compose(g).expect("same frame")
    }
}

#[allow(non_camel_case_types)]
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum SpaceGroupName {
    P432,
    F4_132,
    I4_132,
    I432,
    P4_232,
    P622,
}

impl SpaceGroupName {
    pub const ALL: [SpaceGroupName; 6] = [
        SpaceGroupName::P432,
        SpaceGroupName::F4_132,
        SpaceGroupName::I4_132,
        SpaceGroupName::I432,
        SpaceGroupName::P4_232,
        SpaceGroupName::P622,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            SpaceGroupName::P432 => "P432",
            SpaceGroupName::F4_132 => "F4_132",
            SpaceGroupName::I4_132 => "I4_132",
            SpaceGroupName::I432 => "I432",
            SpaceGroupName::P4_232 => "P4_232",
            SpaceGroupName::P622 => "P622",
        }
    }

    pub fn frame(self) -> FrameKind {
        match self {
            SpaceGroupName::P622 => FrameKind::Hexagonal,
            _ => FrameKind::Cubic,
        }
    }
}

impl fmt::Display for SpaceGroupName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for SpaceGroupName {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let key: String =
            s.chars().filter(|c| !matches!(c, '_' | '[' | ']' | ' ' | '-')).collect::<String>().to_ascii_uppercase();
        SpaceGroupName::ALL
            .into_iter()
            .find(|n| n.as_str().replace('_', "") == key)
            .ok_or_else(|| Error::UnknownGroup(s.to_string()))
    }
}

/// Generators as written down: a starting translation lattice plus a list
/// of isometries.
#[derive(Clone, Debug)]
pub struct Presentation {
    pub name: SpaceGroupName,
    pub frame: FrameKind,
    pub lattice: SubgroupHNF,
    pub generators: Vec<Isometry>,
}

pub fn presentation(name: SpaceGroupName) -> Presentation {
    use elements::*;
    use SpaceGroupName::*;
    let f = name.frame();
    let lat = |gens: Vec<Vec3<Rational>>| SubgroupHNF::from_rational(&gens);
    let c = FrameKind::Cubic;
    let two = int(2);
    let t1 = || lat(vec![t_x(c), t_y(), t_z(c)]);
    let (lattice, generators) = match name {
        P432 => (t1(), vec![r_y(c), r_z(c), r_xy(c), r_xyz(c)]),
        F4_132 => (
            lat(vec![t_x(c).scale(&two), t_y() + t_x(c), t_z(c) + t_x(c)]),
            vec![r_y(c), r_z(c), shifted(t_half(), &r_xy(c)), r_xyz(c)],
        ),
        I4_132 => (
            lat(vec![t_x(c).scale(&two), t_y().scale(&two), t_half().scale(&two)]),
            vec![
                shifted(t_z(c) + t_y(), &r_y(c)),
                shifted(t_x(c) + t_z(c), &r_z(c)),
                shifted(t_x(c) + t_half(), &r_xy(c)),
                r_xyz(c),
            ],
        ),
        I432 => (lat(vec![t_x(c), t_y(), t_half()]), vec![r_y(c), r_z(c), r_xy(c), r_xyz(c)]),
        P4_232 => (t1(), vec![r_y(c), r_z(c), shifted(t_half(), &r_xy(c)), r_xyz(c)]),
        P622 => {
            let h = FrameKind::Hexagonal;
            (lat(vec![t_omega(), t_x(h), t_z(h)]), vec![r_y(h), r_z(h), r_omega()])
        }
    };
    Presentation { name, frame: f, lattice, generators }
}

fn reduce_isometry(g: Isometry, cell: &Cell) -> Isometry {
    let trans = cell.reduce(&g.trans).0;
    Isometry { trans, ..g }
}

/// Close `generators` modulo `t0`, returning one representative per coset.
/// Translation parts are reduced into the cell of `t0`. Fails once more
/// than [`MAX_COSETS`] cosets appear, which happens when `t0` misses
/// translations of the group.
pub fn point_group_cosets(generators: &[Isometry], t0: &SubgroupHNF) -> Result<Vec<Isometry>> {
    let frame = generators.first().map_or(FrameKind::Cubic, |g| g.frame);
    let cell = t0.cell()?;
    let mut seen: HashMap<Isometry, ()> = HashMap::new();
    let id = Isometry::identity(frame);
    let mut out = vec![id.clone()];
    seen.insert(id.clone(), ());
    let mut queue = VecDeque::from([id]);
    while let Some(e) = queue.pop_front() {
        for g in generators {
            let h = reduce_isometry(g.compose(&e)?, &cell);
            if seen.insert(h.clone(), ()).is_none() {
                if out.len() >= MAX_COSETS {
                    return Err(Error::ClosureOverflow(MAX_COSETS));
                }
                out.push(h.clone());
                queue.push_back(h);
            }
        }
    }
    Ok(out)
}

/// All pure translations of the group generated by `lattice` and
/// `generators`. Grows `lattice` whenever two closure elements share a
/// rotation part but differ in translation modulo the current lattice.
pub fn maximal_translation_lattice(lattice: &SubgroupHNF, generators: &[Isometry]) -> Result<SubgroupHNF> {
    let frame = generators.first().map_or(FrameKind::Cubic, |g| g.frame);
    let mut lat = lattice.clone();
    'restart: loop {
        let cell = lat.cell()?;
        let mut by_rot: HashMap<Mat3<i64>, Vec3<Rational>> = HashMap::new();
        let id = Isometry::identity(frame);
        by_rot.insert(id.rot.clone(), id.trans.clone());
        let mut queue = VecDeque::from([id]);
        while let Some(e) = queue.pop_front() {
            for g in generators {
                let h = reduce_isometry(g.compose(&e)?, &cell);
                match by_rot.get(&h.rot) {
                    Some(t) if *t == h.trans => {}
                    Some(t) => {
                        let extra = &h.trans - t;
                        lat = lat.join(&SubgroupHNF::from_rational(&[extra]));
                        continue 'restart;
                    }
                    None => {
                        if by_rot.len() >= MAX_COSETS {
                            return Err(Error::ClosureOverflow(MAX_COSETS));
                        }
                        by_rot.insert(h.rot.clone(), h.trans.clone());
                        queue.push_back(h);
                    }
                }
            }
        }
        return Ok(lat);
    }
}

/// Affine map in lattice coordinates of `T0`: `x -> m x + t`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CellAction {
    pub m: Mat3<i64>,
    pub t: Vec3<Rational>,
}

impl CellAction {
    pub fn apply(&self, x: &Vec3<Rational>) -> Vec3<Rational> {
        i64mat_to_q(&self.m).mul_vec(x) + self.t.clone()
    }
}

#[derive(Clone, Debug)]
pub struct SpaceGroup {
    pub name: SpaceGroupName,
    pub frame: Frame,
    pub generators: Vec<Isometry>,
    /// The translation lattice the presentation starts from.
    pub presented_lattice: SubgroupHNF,
    /// Maximal translation subgroup.
    pub t0: SubgroupHNF,
    pub point_order: usize,
    /// Coset representatives of the group modulo `t0`, identity first.
    pub cosets: Vec<Isometry>,
    cell: Cell,
    cell_actions: Vec<CellAction>,
}

pub fn make_group(name: SpaceGroupName) -> Result<SpaceGroup> {
    let p = presentation(name);
    let t0 = maximal_translation_lattice(&p.lattice, &p.generators)?;
    let cosets = point_group_cosets(&p.generators, &t0)?;
    let cell = t0.cell()?;
    let cell_actions = cosets
        .iter()
        .map(|g| CellAction {
            m: q_to_i64mat(&cell.conjugate_linear(&g.rot_q())).expect("T0 is invariant"),
            t: cell.to_coords(&g.trans),
        })
        .collect();
    Ok(SpaceGroup {
        name,
        frame: Frame::new(p.frame),
        generators: p.generators,
        presented_lattice: p.lattice,
        point_order: cosets.len(),
        t0,
        cosets,
        cell,
        cell_actions,
    })
}

/// Parse a group name and build it.
pub fn group_by_name(name: &str) -> Result<SpaceGroup> {
    make_group(name.parse()?)
}

impl SpaceGroup {
    pub fn cell(&self) -> &Cell {
        &self.cell
    }

    /// Coset representatives written in `T0` lattice coordinates.
    pub fn cell_actions(&self) -> &[CellAction] {
        &self.cell_actions
    }

    /// Rotation parts of the presentation's generators, in `T0` coordinates.
    pub fn generator_rotations_in_cell(&self) -> Vec<Mat3<i64>> {
        self.generators
            .iter()
            .map(|g| q_to_i64mat(&self.cell.conjugate_linear(&g.rot_q())).expect("T0 is invariant"))
            .collect()
    }

    pub fn contains(&self, g: &Isometry) -> bool {
        self.cosets.iter().any(|c| c.rot == g.rot && self.t0.member(&(&g.trans - &c.trans)))
    }

    /// Number of group elements fixing `p`.
    pub fn stabilizer_order(&self, p: &Vec3<Rational>) -> usize {
        self.stabilizer(p).len()
    }

    /// Elements fixing `p`, one per coset that meets the stabilizer.
    pub fn stabilizer(&self, p: &Vec3<Rational>) -> Vec<Isometry> {
        self.cosets
            .iter()
            .filter_map(|c| {
                let image = c.apply(p);
                let tau = p - &image;
                self.t0.member(&tau).then(|| elements::shifted(tau, c))
            })
            .collect()
    }

    /// Whether `R^-1 b` stays in `T0` for every rotation part `R`.
    pub fn t0_is_normal(&self) -> bool {
        self.cosets.iter().all(|c| self.t0.basis_vectors().iter().all(|b| self.t0.member(&c.conjugate_translation(b))))
    }
}

pub fn stabilizer_order(p: &Vec3<Rational>, g: &SpaceGroup) -> usize {
    g.stabilizer_order(p)
}

#[cfg(test)]
mod tests {
    use super::elements::*;
    use super::*;
    use crate::exactmath::rational::qvec;

    const C: FrameKind = FrameKind::Cubic;
    const H: FrameKind = FrameKind::Hexagonal;

    #[test]
    fn point_orders() {
        for name in SpaceGroupName::ALL {
            let g = make_group(name).unwrap();
            let expected = if name == SpaceGroupName::P622 { 12 } else { 24 };
            assert_eq!(g.point_order, expected, "{name}");
        }
    }

    #[test]
    fn maximal_lattices_match_presentations() {
        for name in SpaceGroupName::ALL {
            let g = make_group(name).unwrap();
            assert_eq!(g.t0, g.presented_lattice, "{name}");
            assert!(g.t0_is_normal());
        }
    }

    #[test]
    fn f4132_lattice_is_face_centred() {
        let g = make_group(SpaceGroupName::F4_132).unwrap();
        assert_eq!(g.t0, SubgroupHNF::from_i64(&[[2, 0, 0], [1, 1, 0], [1, 0, 1]]));
    }

    #[test]
    fn i4132_lattice_has_volume_four() {
        let g = make_group(SpaceGroupName::I4_132).unwrap();
        assert_eq!(g.t0.det(), Some(int(4)));
        assert!(g.t0.member(&qvec((1, 1), (1, 1), (1, 1))));
    }

    #[test]
    fn compose_and_inverse() {
        let g = shifted(t_x(C) + t_half(), &r_xy(C));
        assert_eq!(g.compose(&Isometry::identity(C)).unwrap(), g);
        let p = qvec((1, 3), (-2, 5), (7, 4));
        assert_eq!(g.inverse().apply(&g.apply(&p)), p);
        let h = r_xyz(C);
        assert_eq!(g.compose(&h).unwrap().apply(&p), g.apply(&h.apply(&p)));
        assert_eq!(g.compose(&r_z(H)), Err(Error::FrameMismatch));
    }

    #[test]
    fn r_xyz_cycles_coordinates() {
        assert_eq!(r_xyz(C).apply(&qvec((1, 1), (2, 1), (3, 1))), qvec((3, 1), (1, 1), (2, 1)));
    }

    #[test]
    fn r_omega_sends_t_x_to_t_omega() {
        assert_eq!(r_omega().apply(&t_x(H)), t_omega());
        assert_eq!(r_omega().rotation_order(), 3);
    }

    #[test]
    fn r_omega_matches_cartesian_rotation() {
        // Third-turn about z in Cartesian coordinates, applied to the
        // Cartesian images of the hexagonal basis.
        let frame = Frame::new(H);
        let half = QSqrt3::rational(rat(1, 2));
        let s = QSqrt3::new(int(0), rat(1, 2));
        let z = QSqrt3::rational(int(0));
        let o = QSqrt3::rational(int(1));
        let rot = Mat3::from_rows([[-half.clone(), -s.clone(), z.clone()], [s, -half, z.clone()], [z.clone(), z, o]]);
        for i in 0..3 {
            let e: Vec3<Rational> = Vec3::unit(i);
            let lhs = frame.to_cartesian(&r_omega().apply(&e));
            let rhs = rot.mul_vec(&frame.to_cartesian(&e));
            assert_eq!(lhs, rhs);
        }
    }

    #[test]
    fn generators_are_proper_isometries() {
        for name in SpaceGroupName::ALL {
            let g = make_group(name).unwrap();
            for c in &g.cosets {
                assert!(c.is_proper_isometry(&g.frame), "{name}: {c}");
            }
        }
    }

    #[test]
    fn conjugation_ignores_translation_part() {
        let u = qvec((2, 3), (-1, 1), (5, 7));
        let g = shifted(qvec((1, 2), (1, 4), (3, 1)), &r_y(C));
        assert_eq!(g.conjugate_translation(&u), r_y(C).conjugate_translation(&u));
        assert_eq!(Isometry::identity(C).conjugate_translation(&u), u);
    }

    #[test]
    fn p432_cosets_are_linear() {
        let g = make_group(SpaceGroupName::P432).unwrap();
        assert!(g.cosets.iter().all(|c| c.trans.is_zero()));
        assert_eq!(g.stabilizer_order(&Vec3::zero()), 24);
    }

    #[test]
    fn i4132_has_translated_cosets() {
        let g = make_group(SpaceGroupName::I4_132).unwrap();
        assert!(g.cosets.iter().filter(|c| !c.trans.is_zero()).count() >= 6);
        assert_eq!(g.stabilizer_order(&Vec3::zero()), 3);
    }

    #[test]
    fn generic_point_has_trivial_stabilizer() {
        for name in SpaceGroupName::ALL {
            let g = make_group(name).unwrap();
            assert_eq!(g.stabilizer_order(&qvec((1, 7), (2, 11), (3, 13))), 1);
        }
    }

    #[test]
    fn too_small_lattice_overflows() {
        let p = presentation(SpaceGroupName::I4_132);
        let small = SubgroupHNF::from_i64(&[[4, 0, 0], [0, 4, 0], [0, 0, 4]]);
        // Modulo 4Z^3 the group has 24 * 16 elements.
        assert_eq!(point_group_cosets(&p.generators, &small), Err(Error::ClosureOverflow(MAX_COSETS)));
    }

    #[test]
    fn names_parse() {
        assert_eq!("F4132".parse::<SpaceGroupName>().unwrap(), SpaceGroupName::F4_132);
        assert_eq!("[I4_132]".parse::<SpaceGroupName>().unwrap(), SpaceGroupName::I4_132);
        assert_eq!("p622".parse::<SpaceGroupName>().unwrap(), SpaceGroupName::P622);
        assert!(matches!("Fm-3m".parse::<SpaceGroupName>(), Err(Error::UnknownGroup(_))));
    }
}
