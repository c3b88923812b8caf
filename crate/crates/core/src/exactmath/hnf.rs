//! Canonical Hermite normal form for subgroups of `Q^3`.
//!
//! Convention: basis vectors are columns of a lower-triangular (echelon)
//! matrix. Each column's first nonzero entry (its pivot) is positive, pivot
//! rows strictly increase from column to column, and every entry to the left
//! of a pivot lies in `[0, pivot)`. Rational subgroups are stored as
//! `scale * (integer lattice)` with the integer basis having content 1, so
//! equal subgroups compare equal field by field.

use std::collections::HashSet;
use std::fmt::Debug;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

use super::linalg::{Mat3, Vec3};
use super::rational::{common_denominator, ivec_to_q, q_to_ivec, rational_gcd, split_frac, Rational};
use crate::error::{Error, Result};

/// Integer scalar usable by the HNF routines (`i64`, `BigInt`, ...).
pub trait IntScalar: Integer + Signed + Clone + Debug {}

impl<T: Integer + Signed + Clone + Debug> IntScalar for T {}

fn axpy<I: IntScalar>(col: &mut [I; 3], q: &I, other: &[I; 3]) {
    for r in 0..3 {
        col[r] = col[r].clone() - q.clone() * other[r].clone();
    }
}

fn pivot_row<I: IntScalar>(col: &[I; 3]) -> Option<usize> {
    col.iter().position(|c| !c.is_zero())
}

/// Column Hermite normal form of the subgroup of `Z^3` generated by `gens`.
/// Returns the basis columns in pivot order.
pub fn column_hnf<I: IntScalar>(gens: &[[I; 3]]) -> Vec<[I; 3]> {
    let mut pool: Vec<[I; 3]> = gens.iter().filter(|g| g.iter().any(|c| !c.is_zero())).cloned().collect();
    let mut basis: Vec<[I; 3]> = Vec::with_capacity(3);
    for row in 0..3 {
        // Euclid across the pool until at most one column is nonzero in `row`.
        loop {
            let mut nz: Vec<usize> = (0..pool.len()).filter(|&k| !pool[k][row].is_zero()).collect();
            if nz.len() <= 1 {
                break;
            }
            nz.sort_by(|&a, &b| pool[a][row].abs().cmp(&pool[b][row].abs()));
            let m = nz[0];
            let piv = pool[m].clone();
            for &k in &nz[1..] {
                let q = pool[k][row].div_floor(&piv[row]);
                axpy(&mut pool[k], &q, &piv);
            }
            pool.retain(|c| c.iter().any(|x| !x.is_zero()));
        }
        if let Some(k) = pool.iter().position(|c| !c[row].is_zero()) {
            let mut col = pool.swap_remove(k);
            if col[row].is_negative() {
                for c in col.iter_mut() {
                    *c = -c.clone();
                }
            }
            basis.push(col);
        }
    }
    // Reduce entries left of each pivot into [0, pivot).
    for k in 0..basis.len() {
        let p = pivot_row(&basis[k]).expect("nonzero basis column");
        for j in 0..k {
            let q = basis[j][p].div_floor(&basis[k][p]);
            let other = basis[k].clone();
            axpy(&mut basis[j], &q, &other);
        }
    }
    basis
}

/// Finitely generated subgroup of `Q^3` in canonical form.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SubgroupHNF {
    basis: Vec<Vec3<BigInt>>,
    scale: Rational,
}

/// Canonical HNF of the subgroup of `Z^3` generated by `generators`.
pub fn hnf(generators: &[Vec3<BigInt>]) -> SubgroupHNF {
    SubgroupHNF::from_integer_basis(generators, Rational::one())
}

impl SubgroupHNF {
    pub fn trivial() -> Self {
        SubgroupHNF { basis: Vec::new(), scale: Rational::one() }
    }

    /// `Z^3` in whatever frame the caller is using.
    pub fn standard() -> Self {
        hnf(&[Vec3::unit(0), Vec3::unit(1), Vec3::unit(2)])
    }

    fn from_integer_basis(gens: &[Vec3<BigInt>], scale: Rational) -> Self {
        let cols: Vec<[BigInt; 3]> = gens.iter().map(|g| g.0.clone()).collect();
        let basis = column_hnf(&cols);
        if basis.is_empty() {
            return Self::trivial();
        }
        let content = basis.iter().flat_map(|c| c.iter()).fold(BigInt::zero(), |acc, x| acc.gcd(x));
        let basis = basis.into_iter().map(|c| Vec3(c).map(|x| x / &content)).collect();
        SubgroupHNF { basis, scale: scale * Rational::from_integer(content) }
    }

    /// Subgroup generated by rational vectors.
    pub fn from_rational(gens: &[Vec3<Rational>]) -> Self {
        let den = common_denominator(gens.iter().flat_map(|g| g.iter()));
        let dq = Rational::from_integer(den.clone());
        let ints: Vec<Vec3<BigInt>> = gens.iter().map(|g| g.map(|c| (c * &dq).to_integer())).collect();
        Self::from_integer_basis(&ints, Rational::new(BigInt::one(), den))
    }

    pub fn from_i64(gens: &[[i64; 3]]) -> Self {
        let v: Vec<Vec3<BigInt>> = gens.iter().map(|g| Vec3(*g).map(|&x| BigInt::from(x))).collect();
        hnf(&v)
    }

    pub fn rank(&self) -> usize {
        self.basis.len()
    }

    /// Integer basis columns (multiply by `scale` for actual vectors).
    pub fn basis(&self) -> &[Vec3<BigInt>] {
        &self.basis
    }

    pub fn scale(&self) -> &Rational {
        &self.scale
    }

    pub fn basis_vectors(&self) -> Vec<Vec3<Rational>> {
        self.basis.iter().map(|b| ivec_to_q(b).scale(&self.scale)).collect()
    }

    pub fn member(&self, v: &Vec3<Rational>) -> bool {
        let w = v.map(|c| c / &self.scale);
        let Some(mut w) = q_to_ivec(&w) else {
            return false;
        };
        let mut k = 0;
        for row in 0..3 {
            if k < self.basis.len() && !self.basis[k][row].is_zero() && pivot_row(&self.basis[k].0) == Some(row) {
                let (q, r) = w[row].div_rem(&self.basis[k][row]);
                if !r.is_zero() {
                    return false;
                }
                w = w - self.basis[k].scale(&q);
                k += 1;
            } else if !w[row].is_zero() {
                return false;
            }
        }
        true
    }

    /// Whether `other` is a subgroup of `self`.
    pub fn contains(&self, other: &SubgroupHNF) -> bool {
        other.basis_vectors().iter().all(|b| self.member(b))
    }

    /// Absolute covolume, for rank 3.
    pub fn det(&self) -> Option<Rational> {
        if self.rank() != 3 {
            return None;
        }
        let p: BigInt = (0..3).map(|i| self.basis[i][i].clone()).product();
        Some(Rational::from_integer(p) * &self.scale * &self.scale * &self.scale)
    }

    /// Sum of two subgroups.
    pub fn join(&self, other: &SubgroupHNF) -> SubgroupHNF {
        if self.rank() == 0 {
            return other.clone();
        }
        if other.rank() == 0 {
            return self.clone();
        }
        let s = rational_gcd(&self.scale, &other.scale);
        let mut gens = Vec::with_capacity(6);
        for l in [self, other] {
            let k = (&l.scale / &s).to_integer();
            gens.extend(l.basis.iter().map(|b| b.scale(&k)));
        }
        Self::from_integer_basis(&gens, s)
    }

    /// Image under a linear map.
    pub fn transform(&self, m: &Mat3<Rational>) -> SubgroupHNF {
        let gens: Vec<Vec3<Rational>> = self.basis_vectors().iter().map(|b| m.mul_vec(b)).collect();
        Self::from_rational(&gens)
    }

    /// Fundamental cell data; rank 3 only.
    pub fn cell(&self) -> Result<Cell> {
        if self.rank() != 3 {
            return Err(Error::RankDeficient { rank: self.rank() });
        }
        let b = self.basis_vectors();
        let basis = Mat3::from_cols([b[0].clone(), b[1].clone(), b[2].clone()]);
        let inv = basis.inverse().expect("rank-3 basis is invertible");
        Ok(Cell { basis, inv })
    }

    /// Canonical representative of `v` modulo this lattice: the point of
    /// `v + L` whose basis coordinates lie in `[0, 1)`.
    pub fn reduce(&self, v: &Vec3<Rational>) -> Result<Vec3<Rational>> {
        Ok(self.cell()?.reduce(v).0)
    }

    /// This subgroup written in the basis of `sup`, as an integer lattice.
    pub fn relative_to(&self, sup: &SubgroupHNF) -> Result<SubgroupHNF> {
        let cell = sup.cell()?;
        let mut gens = Vec::with_capacity(3);
        for b in self.basis_vectors() {
            let c = cell.to_coords(&b);
            gens.push(q_to_ivec(&c).ok_or(Error::NotASubgroup)?);
        }
        Ok(hnf(&gens))
    }
}

/// `[sup : sub]` for full-rank `sub <= sup`.
pub fn index(sub: &SubgroupHNF, sup: &SubgroupHNF) -> Result<BigInt> {
    for l in [sub, sup] {
        if l.rank() != 3 {
            return Err(Error::RankDeficient { rank: l.rank() });
        }
    }
    if !sup.contains(sub) {
        return Err(Error::NotASubgroup);
    }
    let q = sub.det().unwrap() / sup.det().unwrap();
    debug_assert!(q.is_integer());
    Ok(q.to_integer())
}

pub fn join(a: &SubgroupHNF, b: &SubgroupHNF) -> SubgroupHNF {
    a.join(b)
}

/// Representatives of `sup / sub`, each reduced into the cell of `sub`.
pub fn coset_reps(sub: &SubgroupHNF, sup: &SubgroupHNF) -> Result<Vec<Vec3<Rational>>> {
    index(sub, sup)?;
    let rel = sub.relative_to(sup)?;
    let cell = sup.cell()?;
    let sub_cell = sub.cell()?;
    let d: Vec<i64> = (0..3)
        .map(|i| {
            let di = rel.scale() * Rational::from_integer(rel.basis()[i][i].clone());
            di.to_integer().to_i64().expect("index fits in i64")
        })
        .collect();
    let mut out = Vec::with_capacity((d[0] * d[1] * d[2]) as usize);
    for a in 0..d[0] {
        for b in 0..d[1] {
            for c in 0..d[2] {
                let k = Vec3::new(a, b, c).map(|&x| Rational::from_integer(x.into()));
                out.push(sub_cell.reduce(&cell.from_coords(&k)).0);
            }
        }
    }
    Ok(out)
}

/// A rank-3 lattice basis together with its inverse.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cell {
    basis: Mat3<Rational>,
    inv: Mat3<Rational>,
}

impl Cell {
    /// Columns are the basis vectors.
    pub fn basis(&self) -> &Mat3<Rational> {
        &self.basis
    }

    pub fn to_coords(&self, v: &Vec3<Rational>) -> Vec3<Rational> {
        self.inv.mul_vec(v)
    }

    pub fn from_coords(&self, c: &Vec3<Rational>) -> Vec3<Rational> {
        self.basis.mul_vec(c)
    }

    /// `(reduced, shift)` with `v = reduced + basis * shift` and the
    /// coordinates of `reduced` in `[0, 1)`.
    pub fn reduce(&self, v: &Vec3<Rational>) -> (Vec3<Rational>, Vec3<BigInt>) {
        let (fr, fl) = split_frac(&self.to_coords(v));
        (self.from_coords(&fr), fl)
    }

    /// A linear map expressed in lattice coordinates: `B^-1 M B`.
    pub fn conjugate_linear(&self, m: &Mat3<Rational>) -> Mat3<Rational> {
        self.inv.mul_mat(m).mul_mat(&self.basis)
    }
}

fn int_json(x: &BigInt) -> serde_json::Value {
    match x.to_i64() {
        Some(v) => serde_json::Value::from(v),
        None => serde_json::Value::from(x.to_string()),
    }
}

impl Serialize for SubgroupHNF {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let basis: Vec<Vec<serde_json::Value>> = self.basis.iter().map(|b| b.iter().map(int_json).collect()).collect();
        let mut st = s.serialize_struct("SubgroupHNF", 3)?;
        st.serialize_field("rank", &self.rank())?;
        st.serialize_field("scale", &self.scale.to_string())?;
        st.serialize_field("basis", &basis)?;
        st.end()
    }
}

impl std::fmt::Display for SubgroupHNF {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let cols: Vec<String> = self.basis.iter().map(|b| b.to_string()).collect();
        if self.scale.is_one() {
            write!(f, "<{}>", cols.join(", "))
        } else {
            write!(f, "{}*<{}>", self.scale, cols.join(", "))
        }
    }
}

/// Distinct elements of a list of lattices, preserving first occurrence.
pub fn dedup_lattices(ls: Vec<SubgroupHNF>) -> Vec<SubgroupHNF> {
    let mut seen = HashSet::new();
    ls.into_iter().filter(|l| seen.insert(l.clone())).collect()
}
