//! Solving `A x = c (mod Z^m)` for rational `x` modulo `Z^n`.
//!
//! `A` is diagonalised by unimodular row and column operations. Row
//! operations are applied to `c` as they happen; column operations are
//! accumulated so solutions can be mapped back.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::rational::Rational;

/// Solutions of an integer congruence system.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CongruenceSolutions {
    /// One representative per solution class; entries in `[0, 1)` along the
    /// constrained directions.
    pub particular: Vec<Vec<Rational>>,
    /// Integer directions along which solutions are unconstrained.
    pub free: Vec<Vec<BigInt>>,
}

impl CongruenceSolutions {
    pub fn is_empty(&self) -> bool {
        self.particular.is_empty()
    }
}

/// Diagonal form `P A Q = D` of an `m x n` integer matrix. Only `Q` and
/// `P c` are kept.
struct Diagonal {
    d: Vec<BigInt>,
    q: Vec<Vec<BigInt>>,
    pc: Vec<Rational>,
}

fn diagonalize(a: &[Vec<BigInt>], c: &[Rational], n: usize) -> Diagonal {
    let m = a.len();
    let mut a: Vec<Vec<BigInt>> = a.to_vec();
    let mut pc: Vec<Rational> = c.to_vec();
    let mut q: Vec<Vec<BigInt>> =
        (0..n).map(|i| (0..n).map(|j| if i == j { BigInt::one() } else { BigInt::zero() }).collect()).collect();
    let mut d = Vec::new();
    let mut t = 0;
    while t < m.min(n) {
        // Smallest nonzero entry of the remaining block becomes the pivot.
        let mut best: Option<(usize, usize)> = None;
        for i in t..m {
            for j in t..n {
                if !a[i][j].is_zero() && best.map_or(true, |(bi, bj)| a[i][j].abs() < a[bi][bj].abs()) {
                    best = Some((i, j));
                }
            }
        }
        let Some((pi, pj)) = best else { break };
        a.swap(t, pi);
        pc.swap(t, pi);
        for row in a.iter_mut() {
            row.swap(t, pj);
        }
        for row in q.iter_mut() {
            row.swap(t, pj);
        }
        let mut clean = true;
        for i in t + 1..m {
            if !a[i][t].is_zero() {
                let f = a[i][t].div_floor(&a[t][t]);
                for j in t..n {
                    let v = &a[i][j] - &f * &a[t][j];
                    a[i][j] = v;
                }
                let v = &pc[i] - Rational::from_integer(f) * &pc[t];
                pc[i] = v;
                clean &= a[i][t].is_zero();
            }
        }
        for j in t + 1..n {
            if !a[t][j].is_zero() {
                let f = a[t][j].div_floor(&a[t][t]);
                for i in 0..m {
                    let v = &a[i][j] - &f * &a[i][t];
                    a[i][j] = v;
                }
                for row in q.iter_mut() {
                    let v = &row[j] - &f * &row[t];
                    row[j] = v;
                }
                clean &= a[t][j].is_zero();
            }
        }
        if clean {
            if a[t][t].is_negative() {
                for j in t..n {
                    a[t][j] = -a[t][j].clone();
                }
                pc[t] = -pc[t].clone();
            }
            d.push(a[t][t].clone());
            t += 1;
        }
    }
    Diagonal { d, q, pc }
}

/// All `x` in `Q^n / Z^n` with `A x - c` integral. `a` has `m` rows of
/// length `n`.
pub fn solve_mod_integers(a: &[Vec<BigInt>], c: &[Rational], n: usize) -> CongruenceSolutions {
    assert_eq!(a.len(), c.len());
    let Diagonal { d, q, pc } = diagonalize(a, c, n);
    let r = d.len();
    if pc[r..].iter().any(|x| !x.is_integer()) {
        return CongruenceSolutions { particular: Vec::new(), free: Vec::new() };
    }
    // y_k = (pc_k + j) / d_k for j in 0..d_k; remaining y are free.
    let mut ys: Vec<Vec<Rational>> = vec![vec![Rational::zero(); n]];
    for k in 0..r {
        let dk = d[k].to_i64().expect("small diagonal entry");
        let mut next = Vec::with_capacity(ys.len() * dk as usize);
        for y in &ys {
            for j in 0..dk {
                let mut y2 = y.clone();
                y2[k] = (&pc[k] + Rational::from_integer(j.into())) / Rational::from_integer(d[k].clone());
                next.push(y2);
            }
        }
        ys = next;
    }
    let mut particular: Vec<Vec<Rational>> = ys
        .into_iter()
        .map(|y| {
            (0..n)
                .map(|i| {
                    let x: Rational = (0..n)
                        .map(|j| Rational::from_integer(q[i][j].clone()) * &y[j])
                        .fold(Rational::zero(), |acc, v| acc + v);
                    let c = x.clone() - x.floor();
                    c
                })
                .collect()
        })
        .collect();
    particular.sort();
    particular.dedup();
    let free = (r..n).map(|k| (0..n).map(|i| q[i][k].clone()).collect()).collect();
    CongruenceSolutions { particular, free }
}
