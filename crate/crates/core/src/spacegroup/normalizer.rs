use num_bigint::BigInt;

use super::{CellAction, SpaceGroup};
use crate::exactmath::rational::{i64mat_to_q, q_to_i64mat};
use crate::exactmath::{solve_mod_integers, Mat3, Rational, Vec3};

/// Affine map `x -> linear x + trans` of `R^3` in `T0` lattice coordinates.
/// `linear` may reverse orientation.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct AffineSymmetry {
    pub linear: Mat3<i64>,
    pub trans: Vec3<Rational>,
}

impl AffineSymmetry {
    pub fn apply(&self, x: &Vec3<Rational>) -> Vec3<Rational> {
        i64mat_to_q(&self.linear).mul_vec(x) + self.trans.clone()
    }

    pub fn is_proper(&self) -> bool {
        self.linear.det() == 1
    }
}

/// Euclidean normalizer of `g` modulo `T0`, written in `T0` coordinates.
/// Linear parts range over the point group and its negatives; for each one
/// the admissible translations solve `(I - M') s = t' - A t (mod Z^3)` over
/// all cosets `(M, t)`, where `M' = A M A^-1` and `t'` is the translation
/// of the coset with rotation `M'`.
pub fn euclidean_normalizer(g: &SpaceGroup) -> Vec<AffineSymmetry> {
    let acts = g.cell_actions();
    let mut out = Vec::new();
    let candidates = acts.iter().flat_map(|c| [c.m.clone(), c.m.neg()]);
    for a in candidates {
        let aq = i64mat_to_q(&a);
        let ainv = aq.inverse().expect("unimodular");
        let mut rows: Vec<Vec<BigInt>> = Vec::new();
        let mut rhs: Vec<Rational> = Vec::new();
        let mut ok = true;
        for c in acts {
            let conj = q_to_i64mat(&aq.mul_mat(&i64mat_to_q(&c.m)).mul_mat(&ainv));
            let Some(target) = conj.and_then(|m2| acts.iter().find(|d: &&CellAction| d.m == m2)) else {
                ok = false;
                break;
            };
            let i_minus = Mat3::<i64>::identity().sub_mat(&target.m);
            let at = aq.mul_vec(&c.t);
            for r in 0..3 {
                rows.push(i_minus.rows[r].iter().map(|&x| BigInt::from(x)).collect());
                rhs.push(&target.t[r] - &at[r]);
            }
        }
        if !ok {
            continue;
        }
        let sols = solve_mod_integers(&rows, &rhs, 3);
        assert!(sols.free.is_empty() || sols.is_empty(), "normalizer has a continuous part");
        for s in sols.particular {
            out.push(AffineSymmetry { linear: a.clone(), trans: Vec3::new(s[0].clone(), s[1].clone(), s[2].clone()) });
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactmath::rational::qvec;
    use crate::spacegroup::{make_group, SpaceGroupName};

    fn contains_translation(n: &[AffineSymmetry], t: Vec3<Rational>) -> bool {
        n.iter().any(|a| a.linear.is_identity() && a.trans == t)
    }

    #[test]
    fn normalizer_contains_group() {
        for name in SpaceGroupName::ALL {
            let g = make_group(name).unwrap();
            let n = euclidean_normalizer(&g);
            for c in g.cell_actions() {
                assert!(n.iter().any(|a| a.linear == c.m && a.trans == c.t), "{name}");
            }
            assert_eq!(n.len() % (2 * g.point_order), 0, "{name}");
        }
    }

    #[test]
    fn p432_normalizer_has_body_centre_shift() {
        let g = make_group(SpaceGroupName::P432).unwrap();
        let n = euclidean_normalizer(&g);
        assert!(contains_translation(&n, qvec((1, 2), (1, 2), (1, 2))));
        assert!(!contains_translation(&n, qvec((1, 2), (0, 1), (0, 1))));
    }

    #[test]
    fn p622_normalizer_has_vertical_half_shift() {
        let g = make_group(SpaceGroupName::P622).unwrap();
        let n = euclidean_normalizer(&g);
        assert!(contains_translation(&n, qvec((0, 1), (0, 1), (1, 2))));
    }

    #[test]
    fn normalizer_preserves_stabilizer_orders() {
        let g = make_group(SpaceGroupName::I4_132).unwrap();
        let pts = [qvec((0, 1), (0, 1), (0, 1)), qvec((1, 8), (1, 8), (1, 8)), qvec((1, 4), (1, 2), (0, 1))];
        for a in euclidean_normalizer(&g) {
            for p in &pts {
                let q = a.apply(p);
                let order = |x: &Vec3<Rational>| g.stabilizer_order(&g.cell().from_coords(x));
                assert_eq!(order(p), order(&q));
            }
        }
    }
}
