//! Truncated derivative towers (orders 0..=3) at a rational point.
//!
//! A [`Jet`] stores partial-derivative values, not Taylor coefficients. The
//! storage is dense over ordered index tuples, so `get(&[0, 1])` and
//! `get(&[1, 0])` read separate slots holding the same value.

use std::ops::{Add, Mul, Neg, Sub};

use num::{One, Zero};

use super::poly::Poly;
use super::rational::{invert, Rational};
use crate::error::{check_dim, Error, Result};

pub const MAX_ORDER: usize = 3;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Jet {
    nvars: usize,
    order: usize,
    values: Vec<Rational>,
}

fn block_offset(nvars: usize, m: usize) -> usize {
    (0..m).map(|j| nvars.pow(j as u32)).sum()
}

fn storage_len(nvars: usize, order: usize) -> usize {
    block_offset(nvars, order + 1)
}

/// All ordered index tuples of length `m` over `0..nvars`.
pub(crate) fn tuples(nvars: usize, m: usize) -> Vec<Vec<usize>> {
    let mut out = vec![Vec::new()];
    for _ in 0..m {
        out = out
            .into_iter()
            .flat_map(|t| {
                (0..nvars).map(move |k| {
                    let mut t2 = t.clone();
                    t2.push(k);
                    t2
                })
            })
            .collect();
    }
    out
}

/// Splits `idx` by a bitmask into (selected, rest), preserving order.
fn split_by_mask(idx: &[usize], mask: usize) -> (Vec<usize>, Vec<usize>) {
    let mut sel = Vec::new();
    let mut rest = Vec::new();
    for (p, &k) in idx.iter().enumerate() {
        if mask & (1 << p) != 0 {
            sel.push(k);
        } else {
            rest.push(k);
        }
    }
    (sel, rest)
}

impl Jet {
    pub fn constant(nvars: usize, order: usize, c: Rational) -> Jet {
        assert!(order <= MAX_ORDER);
        let mut values = vec![Rational::zero(); storage_len(nvars, order)];
        values[0] = c;
        Jet { nvars, order, values }
    }

    pub fn zero(nvars: usize, order: usize) -> Jet {
        Jet::constant(nvars, order, Rational::zero())
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn order(&self) -> usize {
        self.order
    }

    fn flat(&self, idx: &[usize]) -> usize {
        assert!(idx.len() <= self.order, "derivative order {} exceeds jet order {}", idx.len(), self.order);
        let base = block_offset(self.nvars, idx.len());
        base + idx.iter().fold(0, |acc, &k| {
            assert!(k < self.nvars, "derivative index out of range");
            acc * self.nvars + k
        })
    }

    /// Derivative value `∂_{idx[0]} ∂_{idx[1]} ... f` at the base point.
    pub fn get(&self, idx: &[usize]) -> &Rational {
        &self.values[self.flat(idx)]
    }

    fn set(&mut self, idx: &[usize], v: Rational) {
        let f = self.flat(idx);
        self.values[f] = v;
    }

    pub fn value(&self) -> &Rational {
        &self.values[0]
    }

    pub fn is_zero(&self) -> bool {
        self.values.iter().all(Zero::is_zero)
    }

    pub fn truncate(&self, order: usize) -> Jet {
        assert!(order <= self.order);
        Jet { nvars: self.nvars, order, values: self.values[..storage_len(self.nvars, order)].to_vec() }
    }

    /// Jet of `∂f/∂u^k`, one order lower.
    pub fn derivative(&self, k: usize) -> Jet {
        assert!(self.order >= 1, "cannot differentiate an order-0 jet");
        let order = self.order - 1;
        let mut out = Jet::zero(self.nvars, order);
        for m in 0..=order {
            for t in tuples(self.nvars, m) {
                let mut full = vec![k];
                full.extend_from_slice(&t);
                out.set(&t, self.get(&full).clone());
            }
        }
        out
    }

    pub fn scale(&self, c: &Rational) -> Jet {
        Jet { nvars: self.nvars, order: self.order, values: self.values.iter().map(|v| v * c).collect() }
    }

    fn zip_order(&self, other: &Jet) -> usize {
        assert_eq!(self.nvars, other.nvars, "jet variable count");
        self.order.min(other.order)
    }
}

impl Add<&Jet> for &Jet {
    type Output = Jet;
    fn add(self, rhs: &Jet) -> Jet {
        let order = self.zip_order(rhs);
        let len = storage_len(self.nvars, order);
        Jet { nvars: self.nvars, order, values: (0..len).map(|i| &self.values[i] + &rhs.values[i]).collect() }
    }
}

impl Sub<&Jet> for &Jet {
    type Output = Jet;
    fn sub(self, rhs: &Jet) -> Jet {
        let order = self.zip_order(rhs);
        let len = storage_len(self.nvars, order);
        Jet { nvars: self.nvars, order, values: (0..len).map(|i| &self.values[i] - &rhs.values[i]).collect() }
    }
}

impl Neg for &Jet {
    type Output = Jet;
    fn neg(self) -> Jet {
        self.scale(&-Rational::one())
    }
}

/// Leibniz rule over ordered index tuples.
impl Mul<&Jet> for &Jet {
    type Output = Jet;
    fn mul(self, rhs: &Jet) -> Jet {
        let order = self.zip_order(rhs);
        let mut out = Jet::zero(self.nvars, order);
        for m in 0..=order {
            for t in tuples(self.nvars, m) {
                let mut acc = Rational::zero();
                for mask in 0..(1usize << m) {
                    let (sel, rest) = split_by_mask(&t, mask);
                    acc += self.get(&sel) * rhs.get(&rest);
                }
                out.set(&t, acc);
            }
        }
        out
    }
}

/// Exact derivative values of `p` at `point` up to `order`.
pub fn eval_jet(p: &Poly, point: &[Rational], order: usize) -> Result<Jet> {
    check_dim("evaluation point length", p.nvars(), point.len())?;
    if order > MAX_ORDER {
        return Err(Error::InvalidArgument(format!("jet order {order} exceeds {MAX_ORDER}")));
    }
    let n = p.nvars();
    let mut jet = Jet::zero(n, order);
    // derivative polynomials for non-decreasing tuples, reused for permutations
    let mut level: Vec<(Vec<usize>, Poly)> = vec![(Vec::new(), p.clone())];
    jet.set(&[], p.eval(point));
    for _m in 1..=order {
        let mut next = Vec::new();
        for (t, q) in &level {
            let start = t.last().copied().unwrap_or(0);
            for k in start..n {
                let dq = q.partial(k);
                let mut t2 = t.clone();
                t2.push(k);
                next.push((t2, dq));
            }
        }
        for (t, q) in &next {
            let v = q.eval(point);
            for perm in permutations(t) {
                jet.set(&perm, v.clone());
            }
        }
        level = next;
    }
    Ok(jet)
}

fn permutations(t: &[usize]) -> Vec<Vec<usize>> {
    if t.len() <= 1 {
        return vec![t.to_vec()];
    }
    let mut out = Vec::new();
    for i in 0..t.len() {
        let mut rest = t.to_vec();
        let head = rest.remove(i);
        for mut p in permutations(&rest) {
            p.insert(0, head);
            if !out.contains(&p) {
                out.push(p);
            }
        }
    }
    out
}

pub type JetMatrix = Vec<Vec<Jet>>;

pub fn jet_mat_mul(a: &JetMatrix, b: &JetMatrix) -> JetMatrix {
    let n = a.len();
    let inner = b.len();
    let m = b.first().map_or(0, Vec::len);
    (0..n)
        .map(|i| {
            (0..m)
                .map(|j| {
                    let mut acc = &a[i][0] * &b[0][j];
                    for s in 1..inner {
                        acc = &acc + &(&a[i][s] * &b[s][j]);
                    }
                    acc
                })
                .collect()
        })
        .collect()
}

/// Jets of `G⁻¹` from jets of `G`, via the order-by-order expansion of
/// `∂_α (G G⁻¹) = 0`.
pub fn matrix_inverse_jet(g: &JetMatrix) -> Result<JetMatrix> {
    let n = g.len();
    if n == 0 {
        return Err(Error::InvalidArgument("empty matrix".into()));
    }
    for row in g {
        check_dim("jet matrix row length", n, row.len())?;
    }
    let nvars = g[0][0].nvars;
    let order = g.iter().flatten().map(|j| j.order).min().unwrap_or(0);
    let g0: Vec<Vec<Rational>> = g.iter().map(|r| r.iter().map(|j| j.value().clone()).collect()).collect();
    let h0 = invert(&g0).ok_or(Error::SingularMetric)?;
    let mut h: JetMatrix =
        (0..n).map(|i| (0..n).map(|j| Jet::constant(nvars, order, h0[i][j].clone())).collect()).collect();
    for m in 1..=order {
        for t in tuples(nvars, m) {
            // S = Σ_{mask ≠ 0} (∂_sel G)(∂_rest H)
            let mut s = vec![vec![Rational::zero(); n]; n];
            for mask in 1..(1usize << m) {
                let (sel, rest) = split_by_mask(&t, mask);
                for i in 0..n {
                    for j in 0..n {
                        for k in 0..n {
                            s[i][j] += g[i][k].get(&sel) * h[k][j].get(&rest);
                        }
                    }
                }
            }
            for i in 0..n {
                for j in 0..n {
                    let mut v = Rational::zero();
                    for k in 0..n {
                        v -= &h0[i][k] * &s[k][j];
                    }
                    h[i][j].set(&t, v);
                }
            }
        }
    }
    Ok(h)
}
