//! Small fixed-size vectors and matrices, generic over an exact scalar.

use std::fmt;
use std::ops::{Add, Div, Index, IndexMut, Mul, Neg, Sub};

use num_traits::{One, Zero};

/// Ring-like scalar: integers, rationals, `Q(sqrt 3)`.
pub trait Scalar:
    Clone
    + PartialEq
    + fmt::Debug
    + Zero
    + One
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Neg<Output = Self>
{
}

impl<T> Scalar for T where
    T: Clone
        + PartialEq
        + fmt::Debug
        + Zero
        + One
        + Add<Output = T>
        + Sub<Output = T>
        + Mul<Output = T>
        + Neg<Output = T>
{
}

/// Scalar with exact division.
pub trait FieldScalar: Scalar + Div<Output = Self> {}

impl<T> FieldScalar for T where T: Scalar + Div<Output = T> {}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Vec3<T>(pub [T; 3]);

impl<T> Vec3<T> {
    pub const fn new(x: T, y: T, z: T) -> Self {
        Vec3([x, y, z])
    }

    pub fn map<U, F: FnMut(&T) -> U>(&self, mut f: F) -> Vec3<U> {
        Vec3([f(&self.0[0]), f(&self.0[1]), f(&self.0[2])])
    }

    pub fn iter(&self) -> std::slice::Iter<'_, T> {
        self.0.iter()
    }
}

impl<T: Scalar> Vec3<T> {
    pub fn zero() -> Self {
        Vec3([T::zero(), T::zero(), T::zero()])
    }

    pub fn unit(i: usize) -> Self {
        let mut v = Self::zero();
        v.0[i] = T::one();
        v
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(Zero::is_zero)
    }

    pub fn dot(&self, other: &Self) -> T {
        self.0[0].clone() * other.0[0].clone()
            + self.0[1].clone() * other.0[1].clone()
            + self.0[2].clone() * other.0[2].clone()
    }

    pub fn scale(&self, k: &T) -> Self {
        self.map(|c| c.clone() * k.clone())
    }

    pub fn cross(&self, o: &Self) -> Self {
        let [a0, a1, a2] = self.0.clone();
        let [b0, b1, b2] = o.0.clone();
        Vec3([a1.clone() * b2.clone() - a2.clone() * b1.clone(), a2 * b0.clone() - a0.clone() * b2, a0 * b1 - a1 * b0])
    }
}

impl<T> Index<usize> for Vec3<T> {
    type Output = T;
    fn index(&self, i: usize) -> &T {
        &self.0[i]
    }
}

impl<T> IndexMut<usize> for Vec3<T> {
    fn index_mut(&mut self, i: usize) -> &mut T {
        &mut self.0[i]
    }
}

impl<T: Scalar> Add for Vec3<T> {
    type Output = Self;
    fn add(self, o: Self) -> Self {
        let [a0, a1, a2] = self.0;
        let [b0, b1, b2] = o.0;
        Vec3([a0 + b0, a1 + b1, a2 + b2])
    }
}

impl<'a, T: Scalar> Add<&'a Vec3<T>> for &'a Vec3<T> {
    type Output = Vec3<T>;
    fn add(self, o: &'a Vec3<T>) -> Vec3<T> {
        self.clone() + o.clone()
    }
}

impl<T: Scalar> Sub for Vec3<T> {
    type Output = Self;
    fn sub(self, o: Self) -> Self {
        let [a0, a1, a2] = self.0;
        let [b0, b1, b2] = o.0;
        Vec3([a0 - b0, a1 - b1, a2 - b2])
    }
}

impl<'a, T: Scalar> Sub<&'a Vec3<T>> for &'a Vec3<T> {
    type Output = Vec3<T>;
    fn sub(self, o: &'a Vec3<T>) -> Vec3<T> {
        self.clone() - o.clone()
    }
}

impl<T: Scalar> Neg for Vec3<T> {
    type Output = Self;
    fn neg(self) -> Self {
        let [a0, a1, a2] = self.0;
        Vec3([-a0, -a1, -a2])
    }
}

impl<T: fmt::Display> fmt::Display for Vec3<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {}, {})", self.0[0], self.0[1], self.0[2])
    }
}

/// 3x3 matrix stored by rows; column `j` is the image of basis vector `j`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Mat3<T> {
    pub rows: [[T; 3]; 3],
}

impl<T> Mat3<T> {
    pub const fn from_rows(rows: [[T; 3]; 3]) -> Self {
        Mat3 { rows }
    }

    pub fn map<U, F: FnMut(&T) -> U>(&self, mut f: F) -> Mat3<U> {
        let r = &self.rows;
        Mat3 {
            rows: [
                [f(&r[0][0]), f(&r[0][1]), f(&r[0][2])],
                [f(&r[1][0]), f(&r[1][1]), f(&r[1][2])],
                [f(&r[2][0]), f(&r[2][1]), f(&r[2][2])],
            ],
        }
    }
}

impl<T: Clone> Mat3<T> {
    pub fn from_cols(cols: [Vec3<T>; 3]) -> Self {
        let c = |i: usize, j: usize| cols[j].0[i].clone();
        Mat3 { rows: [[c(0, 0), c(0, 1), c(0, 2)], [c(1, 0), c(1, 1), c(1, 2)], [c(2, 0), c(2, 1), c(2, 2)]] }
    }

    pub fn col(&self, j: usize) -> Vec3<T> {
        Vec3([self.rows[0][j].clone(), self.rows[1][j].clone(), self.rows[2][j].clone()])
    }

    pub fn transpose(&self) -> Self {
        Mat3::from_cols([Vec3(self.rows[0].clone()), Vec3(self.rows[1].clone()), Vec3(self.rows[2].clone())])
    }
}

impl<T: Scalar> Mat3<T> {
    pub fn identity() -> Self {
        let (o, z) = (T::one, T::zero);
        Mat3 { rows: [[o(), z(), z()], [z(), o(), z()], [z(), z(), o()]] }
    }

    pub fn is_identity(&self) -> bool {
        *self == Self::identity()
    }

    pub fn mul_vec(&self, v: &Vec3<T>) -> Vec3<T> {
        Vec3([Vec3(self.rows[0].clone()).dot(v), Vec3(self.rows[1].clone()).dot(v), Vec3(self.rows[2].clone()).dot(v)])
    }

    pub fn mul_mat(&self, o: &Self) -> Self {
        let cols = [self.mul_vec(&o.col(0)), self.mul_vec(&o.col(1)), self.mul_vec(&o.col(2))];
        Mat3::from_cols(cols)
    }

    pub fn sub_mat(&self, o: &Self) -> Self {
        let mut out = self.clone();
        for i in 0..3 {
            for j in 0..3 {
                out.rows[i][j] = self.rows[i][j].clone() - o.rows[i][j].clone();
            }
        }
        out
    }

    pub fn neg(&self) -> Self {
        self.map(|x| -x.clone())
    }

    pub fn det(&self) -> T {
        let m = |i: usize, j: usize| self.rows[i][j].clone();
        m(0, 0) * (m(1, 1) * m(2, 2) - m(1, 2) * m(2, 1)) - m(0, 1) * (m(1, 0) * m(2, 2) - m(1, 2) * m(2, 0))
            + m(0, 2) * (m(1, 0) * m(2, 1) - m(1, 1) * m(2, 0))
    }

    /// Transposed cofactor matrix, so `m * adj(m) = det(m) * I`.
    pub fn adjugate(&self) -> Self {
        let m = |i: usize, j: usize| self.rows[i][j].clone();
        let cof = |i: usize, j: usize| {
            let (r0, r1) = match i {
                0 => (1, 2),
                1 => (0, 2),
                _ => (0, 1),
            };
            let (c0, c1) = match j {
                0 => (1, 2),
                1 => (0, 2),
                _ => (0, 1),
            };
            let minor = m(r0, c0) * m(r1, c1) - m(r0, c1) * m(r1, c0);
            if (i + j) % 2 == 0 {
                minor
            } else {
                -minor
            }
        };
        Mat3 {
            rows: [
                [cof(0, 0), cof(1, 0), cof(2, 0)],
                [cof(0, 1), cof(1, 1), cof(2, 1)],
                [cof(0, 2), cof(1, 2), cof(2, 2)],
            ],
        }
    }

    /// Smallest `k >= 1` with `self^k = I`, if it is at most `bound`.
    pub fn order(&self, bound: u32) -> Option<u32> {
        let mut p = self.clone();
        for k in 1..=bound {
            if p.is_identity() {
                return Some(k);
            }
            p = p.mul_mat(self);
        }
        None
    }
}

impl<T: FieldScalar> Mat3<T> {
    pub fn inverse(&self) -> Option<Self> {
        let d = self.det();
        if d.is_zero() {
            return None;
        }
        Some(self.adjugate().map(|x| x.clone() / d.clone()))
    }
}

impl<T: fmt::Display> fmt::Display for Mat3<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let r = &self.rows;
        write!(
            f,
            "[[{}, {}, {}], [{}, {}, {}], [{}, {}, {}]]",
            r[0][0], r[0][1], r[0][2], r[1][0], r[1][1], r[1][2], r[2][0], r[2][1], r[2][2]
        )
    }
}

/// Solve `m x = b`. Returns a particular solution and a basis of the kernel
/// of `m`, or `None` if the system is inconsistent.
pub fn solve_linear<T: FieldScalar>(m: &Mat3<T>, b: &Vec3<T>) -> Option<(Vec3<T>, Vec<Vec3<T>>)> {
    let mut a: Vec<[T; 4]> =
        (0..3).map(|i| [m.rows[i][0].clone(), m.rows[i][1].clone(), m.rows[i][2].clone(), b.0[i].clone()]).collect();
    let mut pivots: Vec<usize> = Vec::new();
    let mut r = 0;
    for c in 0..3 {
        let Some(p) = (r..3).find(|&i| !a[i][c].is_zero()) else {
            continue;
        };
        a.swap(r, p);
        let inv = T::one() / a[r][c].clone();
        for k in 0..4 {
            a[r][k] = a[r][k].clone() * inv.clone();
        }
        for i in 0..3 {
            if i != r && !a[i][c].is_zero() {
                let f = a[i][c].clone();
                for k in 0..4 {
                    a[i][k] = a[i][k].clone() - f.clone() * a[r][k].clone();
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    if (r..3).any(|i| !a[i][3].is_zero()) {
        return None;
    }
    let mut x = Vec3::<T>::zero();
    for (i, &c) in pivots.iter().enumerate() {
        x.0[c] = a[i][3].clone();
    }
    let kernel = (0..3)
        .filter(|c| !pivots.contains(c))
        .map(|f| {
            let mut v = Vec3::<T>::zero();
            v.0[f] = T::one();
            for (i, &c) in pivots.iter().enumerate() {
                v.0[c] = -a[i][f].clone();
            }
            v
        })
        .collect();
    Some((x, kernel))
}
