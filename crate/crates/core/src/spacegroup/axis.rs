use std::fmt;

use num_bigint::BigInt;
use serde::Serialize;

use super::{Frame, Isometry};
use crate::exactmath::rational::{i64mat_to_q, ivec_to_q, lex_positive, primitive_direction};
use crate::exactmath::{solve_linear, Mat3, Rational, Vec3};

/// Rotation axis `point + s * direction`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct Axis {
    /// The point of the line closest to the origin.
    #[serde(serialize_with = "ser_qvec")]
    pub point: Vec3<Rational>,
    /// Primitive integer vector, first nonzero entry positive.
    #[serde(serialize_with = "ser_ivec")]
    pub direction: Vec3<BigInt>,
    pub order: u32,
}

fn ser_qvec<S: serde::Serializer>(v: &Vec3<Rational>, s: S) -> Result<S::Ok, S::Error> {
    use serde::ser::SerializeSeq;
    let mut seq = s.serialize_seq(Some(3))?;
    for c in v.iter() {
        seq.serialize_element(&c.to_string())?;
    }
    seq.end()
}

fn ser_ivec<S: serde::Serializer>(v: &Vec3<BigInt>, s: S) -> Result<S::Ok, S::Error> {
    use serde::ser::SerializeSeq;
    let mut seq = s.serialize_seq(Some(3))?;
    for c in v.iter() {
        seq.serialize_element(&c.to_string())?;
    }
    seq.end()
}

impl Axis {
    pub fn contains(&self, p: &Vec3<Rational>, frame: &Frame) -> bool {
        let d = ivec_to_q(&self.direction);
        let rel = p - &self.point;
        // rel is parallel to d iff rel - (rel.d / d.d) d vanishes.
        let k = frame.inner(&rel, &d) / frame.inner(&d, &d);
        (rel - d.scale(&k)).is_zero()
    }
}

impl fmt::Display for Axis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}-fold axis {} + s{}", self.order, self.point, self.direction)
    }
}

/// Fixed line of a non-trivial rotation. `None` for the identity and for
/// screw motions, which fix no point.
pub fn fixed_axis(g: &Isometry, frame: &Frame) -> Option<Axis> {
    if g.rot.is_identity() {
        return None;
    }
    let a = Mat3::<Rational>::identity().sub_mat(&i64mat_to_q(&g.rot));
    let (p, kernel) = solve_linear(&a, &g.trans)?;
    debug_assert_eq!(kernel.len(), 1);
    let d = ivec_to_q(&primitive_direction(&kernel[0])?);
    let k = frame.inner(&p, &d) / frame.inner(&d, &d);
    let point = &p - &d.scale(&k);
    let direction = lex_positive(primitive_direction(&d)?);
    Some(Axis { point, direction, order: g.rotation_order() })
}
