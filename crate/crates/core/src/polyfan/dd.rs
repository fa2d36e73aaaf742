//! Double description: generators of `{x : a·x ≥ 0, b·x = 0}` from its
//! inequalities, by incremental insertion with combinatorial adjacency.

use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use super::lattice::{big_dot, big_primitive, from_big, integer_kernel, to_big, BigVec};

#[derive(Clone)]
struct Bits(Vec<u64>);

impl Bits {
    fn new(len: usize) -> Self {
        Bits(vec![0; len.div_ceil(64).max(1)])
    }

    fn set(&mut self, i: usize) {
        self.0[i / 64] |= 1 << (i % 64);
    }

    fn and(&self, other: &Bits) -> Bits {
        Bits(self.0.iter().zip(&other.0).map(|(a, b)| a & b).collect())
    }

    fn is_subset(&self, other: &Bits) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a & !b == 0)
    }
}

#[derive(Clone)]
struct Ray {
    v: BigVec,
    tight: Bits,
}

/// Rays and lineality of a polyhedral cone given by an H-representation.
/// Rays are extreme modulo the returned lineality, which is a lattice basis of
/// the lineality space; nothing is canonicalized here.
pub(crate) struct Generators {
    pub rays: Vec<Vec<i64>>,
    pub lineality: Vec<Vec<i64>>,
}

pub(crate) fn generators(ineqs: &[Vec<i64>], eqs: &[Vec<i64>], n: usize) -> Generators {
    let m = ineqs.len();
    let mut lin: Vec<BigVec> = integer_kernel(eqs, n).iter().map(|v| to_big(v)).collect();
    let mut rays: Vec<Ray> = Vec::new();

    for (k, a) in ineqs.iter().enumerate() {
        let a = to_big(a);
        if let Some(pos) = lin.iter().position(|l| !big_dot(&a, l).is_zero()) {
            // Invariant: every lineality vector is orthogonal to the processed
            // inequalities, so `l0` becomes a ray tight on all of them.
            let mut l0 = lin.swap_remove(pos);
            let mut al0 = big_dot(&a, &l0);
            if al0.is_negative() {
                l0.iter_mut().for_each(|x| *x = -&*x);
                al0 = -al0;
            }
            for l in lin.iter_mut() {
                project(l, &a, &l0, &al0);
            }
            for r in rays.iter_mut() {
                project(&mut r.v, &a, &l0, &al0);
                r.tight.set(k);
            }
            let mut tight = Bits::new(m);
            (0..k).for_each(|j| tight.set(j));
            rays.push(Ray { v: l0, tight });
            continue;
        }

        let vals: Vec<BigInt> = rays.iter().map(|r| big_dot(&a, &r.v)).collect();
        let neg: Vec<usize> = (0..rays.len()).filter(|&i| vals[i].is_negative()).collect();
        let pos: Vec<usize> = (0..rays.len()).filter(|&i| vals[i].is_positive()).collect();
        let mut next: Vec<Ray> = Vec::with_capacity(rays.len());
        for (i, r) in rays.iter().enumerate() {
            if vals[i].is_zero() {
                let mut r = r.clone();
                r.tight.set(k);
                next.push(r);
            } else if vals[i].is_positive() {
                next.push(r.clone());
            }
        }
        for &p in &pos {
            for &q in &neg {
                let common = rays[p].tight.and(&rays[q].tight);
                let adjacent = (0..rays.len()).all(|r| r == p || r == q || !common.is_subset(&rays[r].tight));
                if !adjacent {
                    continue;
                }
                let mut v: BigVec =
                    rays[q].v.iter().zip(&rays[p].v).map(|(y, x)| &vals[p] * y - &vals[q] * x).collect();
                big_primitive(&mut v);
                let mut tight = common;
                tight.set(k);
                next.push(Ray { v, tight });
            }
        }
        rays = next;
    }

    Generators {
        rays: rays.iter().map(|r| from_big(&r.v)).collect(),
        lineality: lin.iter().map(|l| from_big(l)).collect(),
    }
}

/// Replaces `v` by `(a·l0) v - (a·v) l0`, which lies on `a^⊥`.
fn project(v: &mut BigVec, a: &[BigInt], l0: &[BigInt], al0: &BigInt) {
    let av = big_dot(a, v);
    if av.is_zero() {
        return;
    }
    for (x, y) in v.iter_mut().zip(l0) {
        *x = al0 * &*x - &av * y;
    }
    big_primitive(v);
}
