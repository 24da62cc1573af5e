//! Independent oracles for the integration and acceptance tests.
//!
//! The dense evaluator below shares no code with the library checkers: it
//! expands every identity with explicit index sums over full product tables.

#![allow(dead_code)]

use std::collections::BTreeSet;

use hlanti::exactq::Scalar;
use hlanti::hla::{names, Hla};

pub fn q(s: &str) -> Scalar {
    s.parse().unwrap()
}

/// Full product tables: `ee[i][j][k]`, `eo[i][j][k]` (even·odd), `br[i][j][k]`.
pub struct Dense {
    pub n0: usize,
    pub n1: usize,
    pub alpha: Vec<Vec<Scalar>>,
    pub beta: Vec<Vec<Scalar>>,
    pub ee: Vec<Vec<Vec<Scalar>>>,
    pub eo: Vec<Vec<Vec<Scalar>>>,
    pub br: Vec<Vec<Vec<Scalar>>>,
}

fn z() -> Scalar {
    Scalar::zero()
}

impl Dense {
    pub fn of(a: &Hla) -> Dense {
        let (n0, n1) = (a.dim_even, a.dim_odd);
        let grid = |d1: usize, d2: usize, d3: usize, f: &dyn Fn(usize, usize, usize) -> Scalar| {
            (0..d1)
                .map(|i| {
                    (0..d2)
                        .map(|j| (0..d3).map(|k| f(i, j, k)).collect())
                        .collect()
                })
                .collect()
        };
        Dense {
            n0,
            n1,
            alpha: (0..n0)
                .map(|i| (0..n0).map(|j| a.alpha[(i, j)].clone()).collect())
                .collect(),
            beta: (0..n1)
                .map(|i| (0..n1).map(|j| a.beta[(i, j)].clone()).collect())
                .collect(),
            ee: grid(n0, n0, n0, &|i, j, k| a.m00().get(i, j, k)),
            eo: grid(n0, n1, n1, &|i, j, k| a.m01().get(i, j, k)),
            br: grid(n1, n1, n0, &|i, j, k| a.brk().get(i, j, k)),
        }
    }

    // Products of coordinate vectors.
    fn mul(t: &[Vec<Vec<Scalar>>], x: &[Scalar], y: &[Scalar], out: usize) -> Vec<Scalar> {
        let mut r = vec![z(); out];
        for (i, xi) in x.iter().enumerate() {
            for (j, yj) in y.iter().enumerate() {
                let c = xi * yj;
                if c.is_zero() {
                    continue;
                }
                for k in 0..out {
                    r[k] = &r[k] + &(&c * &t[i][j][k]);
                }
            }
        }
        r
    }

    fn lin(m: &[Vec<Scalar>], x: &[Scalar]) -> Vec<Scalar> {
        m.iter()
            .map(|row| row.iter().zip(x).fold(z(), |acc, (a, b)| &acc + &(a * b)))
            .collect()
    }

    fn unit(n: usize, i: usize) -> Vec<Scalar> {
        (0..n)
            .map(|k| if k == i { Scalar::one() } else { z() })
            .collect()
    }

    /// Families with at least one failing basis instance.
    pub fn failing_families(&self) -> BTreeSet<&'static str> {
        let (n0, n1) = (self.n0, self.n1);
        let e = |i| Self::unit(n0, i);
        let o = |i| Self::unit(n1, i);
        let ee = |x: &[Scalar], y: &[Scalar]| Self::mul(&self.ee, x, y, n0);
        let eo = |x: &[Scalar], y: &[Scalar]| Self::mul(&self.eo, x, y, n1);
        let br = |x: &[Scalar], y: &[Scalar]| Self::mul(&self.br, x, y, n0);
        let al = |x: &[Scalar]| Self::lin(&self.alpha, x);
        let be = |x: &[Scalar]| Self::lin(&self.beta, x);
        let add = |x: Vec<Scalar>, y: Vec<Scalar>| -> Vec<Scalar> {
            x.iter().zip(&y).map(|(a, b)| a + b).collect()
        };
        let half =
            |x: Vec<Scalar>| -> Vec<Scalar> { x.iter().map(|a| a * &Scalar::half()).collect() };
        let mut out = BTreeSet::new();
        for i in 0..n0 {
            for j in 0..n0 {
                for k in 0..n0 {
                    if ee(&al(&e(i)), &ee(&e(j), &e(k))) != ee(&ee(&e(i), &e(j)), &al(&e(k))) {
                        out.insert(names::EVEN_ASSOC);
                    }
                }
                for k in 0..n1 {
                    if eo(&al(&e(i)), &eo(&e(j), &o(k))) != half(eo(&ee(&e(i), &e(j)), &be(&o(k))))
                    {
                        out.insert(names::EVEN_ODD_HALF);
                    }
                }
                if al(&ee(&e(i), &e(j))) != ee(&al(&e(i)), &al(&e(j))) {
                    out.insert(names::TWIST_MULT_EVEN);
                }
            }
            for j in 0..n1 {
                for k in 0..n1 {
                    let lhs = ee(&al(&e(i)), &br(&o(j), &o(k)));
                    let rhs = add(
                        br(&eo(&e(i), &o(j)), &be(&o(k))),
                        br(&be(&o(j)), &eo(&e(i), &o(k))),
                    );
                    if lhs != rhs {
                        out.insert(names::BRACKET_DERIVATION);
                    }
                }
                if be(&eo(&e(i), &o(j))) != eo(&al(&e(i)), &be(&o(j))) {
                    out.insert(names::TWIST_MULT_MIXED);
                }
            }
        }
        for i in 0..n1 {
            for j in 0..n1 {
                for k in 0..n1 {
                    let s = add(
                        add(
                            eo(&br(&o(j), &o(k)), &be(&o(i))),
                            eo(&br(&o(k), &o(i)), &be(&o(j))),
                        ),
                        eo(&br(&o(i), &o(j)), &be(&o(k))),
                    );
                    if s.iter().any(|c| !c.is_zero()) {
                        out.insert(names::ODD_CYCLIC);
                    }
                }
                if al(&br(&o(i), &o(j))) != br(&be(&o(i)), &be(&o(j))) {
                    out.insert(names::TWIST_MULT_BRACKET);
                }
            }
        }
        out
    }
}

/// A storage entry of a one-even, two-odd algebra that a mutation can overwrite.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Slot {
    Alpha,
    Beta(usize, usize),
    EvenEven,
    EvenOdd(usize, usize),
    Bracket,
}

pub const SLOTS: [Slot; 11] = [
    Slot::Alpha,
    Slot::Beta(0, 0),
    Slot::Beta(0, 1),
    Slot::Beta(1, 0),
    Slot::Beta(1, 1),
    Slot::EvenEven,
    Slot::EvenOdd(0, 0),
    Slot::EvenOdd(0, 1),
    Slot::EvenOdd(1, 0),
    Slot::EvenOdd(1, 1),
    Slot::Bracket,
];

/// Overwrites one stored structure constant or twist entry.
pub fn mutate(a: &Hla, slot: Slot, v: &Scalar) -> Hla {
    let mut m = a.clone();
    match slot {
        Slot::Alpha => m.alpha.set(0, 0, v.clone()),
        Slot::Beta(i, j) => m.beta.set(i, j, v.clone()),
        Slot::EvenEven => m.set_even_even(0, 0, 0, v.clone()),
        Slot::EvenOdd(j, k) => m.set_even_odd(0, j, k, v.clone()),
        Slot::Bracket => m.set_bracket(0, 1, 0, v.clone()).unwrap(),
    }
    m
}
