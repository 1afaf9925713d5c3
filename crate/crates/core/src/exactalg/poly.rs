//! Sparse multivariate polynomials with exact rational coefficients.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

use num::{One, Signed, Zero};

use super::rational::{fmt_rational, to_f64, Rational};
use crate::error::{Error, Result};

/// Exponent vector, one entry per variable.
pub type Exponents = Vec<u32>;

/// Polynomial in `nvars` variables. Zero coefficients are never stored, so
/// structural equality is polynomial equality.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Poly {
    nvars: usize,
    terms: BTreeMap<Exponents, Rational>,
}

impl Poly {
    pub fn zero(nvars: usize) -> Self {
        Poly { nvars, terms: BTreeMap::new() }
    }

    pub fn one(nvars: usize) -> Self {
        Self::constant(nvars, Rational::one())
    }

    pub fn constant(nvars: usize, c: Rational) -> Self {
        Self::monomial(nvars, c, vec![0; nvars])
    }

    /// The coordinate function `u^k` (0-based `k`).
    pub fn var(nvars: usize, k: usize) -> Self {
        assert!(k < nvars, "variable {k} out of range for {nvars} variables");
        let mut e = vec![0; nvars];
        e[k] = 1;
        Self::monomial(nvars, Rational::one(), e)
    }

    pub fn monomial(nvars: usize, c: Rational, exps: Exponents) -> Self {
        assert_eq!(exps.len(), nvars, "exponent vector length");
        let mut p = Poly::zero(nvars);
        if !c.is_zero() {
            p.terms.insert(exps, c);
        }
        p
    }

    /// Builds a polynomial from `(coefficient, exponents)` pairs, merging
    /// repeated monomials and dropping zero coefficients.
    pub fn from_terms<I>(nvars: usize, terms: I) -> Result<Self>
    where
        I: IntoIterator<Item = (Rational, Exponents)>,
    {
        let mut p = Poly::zero(nvars);
        for (c, e) in terms {
            if e.len() != nvars {
                return Err(Error::DimensionMismatch { what: "exponent vector length", expected: nvars, got: e.len() });
            }
            p.add_term(e, c);
        }
        Ok(p)
    }

    fn add_term(&mut self, e: Exponents, c: Rational) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(e) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Exponents, &Rational)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(|e| e.iter().all(|&x| x == 0))
    }

    pub fn constant_term(&self) -> Rational {
        self.terms.get(&vec![0; self.nvars]).cloned().unwrap_or_else(Rational::zero)
    }

    /// Total degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().map(|e| e.iter().sum()).max()
    }

    pub fn scale(&self, c: &Rational) -> Poly {
        if c.is_zero() {
            return Poly::zero(self.nvars);
        }
        Poly { nvars: self.nvars, terms: self.terms.iter().map(|(e, v)| (e.clone(), v * c)).collect() }
    }

    pub fn checked_mul(&self, other: &Poly) -> Result<Poly> {
        if self.nvars != other.nvars {
            return Err(Error::DimensionMismatch {
                what: "polynomial variable count",
                expected: self.nvars,
                got: other.nvars,
            });
        }
        let mut out = Poly::zero(self.nvars);
        for (ea, ca) in &self.terms {
            for (eb, cb) in &other.terms {
                let e: Exponents = ea.iter().zip(eb).map(|(a, b)| a + b).collect();
                out.add_term(e, ca * cb);
            }
        }
        Ok(out)
    }

    pub fn pow(&self, n: u32) -> Poly {
        (0..n).fold(Poly::one(self.nvars), |acc, _| &acc * self)
    }

    /// Exact partial derivative with respect to the 0-based variable `k`.
    pub fn checked_partial(&self, k: usize) -> Result<Poly> {
        if k >= self.nvars {
            return Err(Error::IndexOutOfRange { index: k, nvars: self.nvars });
        }
        let mut out = Poly::zero(self.nvars);
        for (e, c) in &self.terms {
            if e[k] == 0 {
                continue;
            }
            let mut e2 = e.clone();
            e2[k] -= 1;
            out.add_term(e2, c * Rational::from_integer(e[k].into()));
        }
        Ok(out)
    }

    /// Panicking variant of [`Poly::checked_partial`] for internal use with
    /// indices that are in range by construction.
    pub fn partial(&self, k: usize) -> Poly {
        self.checked_partial(k).expect("partial derivative index")
    }

    pub fn gradient(&self) -> Vec<Poly> {
        (0..self.nvars).map(|k| self.partial(k)).collect()
    }

    pub fn hessian(&self) -> Vec<Vec<Poly>> {
        let g = self.gradient();
        g.iter().map(|gi| gi.gradient()).collect()
    }

    pub fn eval(&self, point: &[Rational]) -> Rational {
        assert_eq!(point.len(), self.nvars, "evaluation point length");
        let mut acc = Rational::zero();
        for (e, c) in &self.terms {
            let mut t = c.clone();
            for (x, &k) in point.iter().zip(e) {
                if k > 0 {
                    t *= num::pow(x.clone(), k as usize);
                }
            }
            acc += t;
        }
        acc
    }

    pub fn eval_f64(&self, point: &[f64]) -> f64 {
        F64Poly::from(self).eval(point)
    }

    /// Re-expresses the polynomial in a ring of `nvars` variables, mapping
    /// variable `k` to `k + offset`.
    pub fn embed(&self, nvars: usize, offset: usize) -> Poly {
        assert!(offset + self.nvars <= nvars, "embedding does not fit");
        let mut out = Poly::zero(nvars);
        for (e, c) in &self.terms {
            let mut e2 = vec![0; nvars];
            e2[offset..offset + self.nvars].copy_from_slice(e);
            out.terms.insert(e2, c.clone());
        }
        out
    }

    /// Formats with the given variable names.
    pub fn display_with(&self, names: &[String]) -> String {
        if self.terms.is_empty() {
            return "0".to_string();
        }
        let mut out = String::new();
        // highest degree first reads more naturally
        let mut terms: Vec<_> = self.terms.iter().collect();
        terms.sort_by(|(a, _), (b, _)| {
            let da: u32 = a.iter().sum();
            let db: u32 = b.iter().sum();
            db.cmp(&da).then_with(|| b.cmp(a))
        });
        for (idx, (e, c)) in terms.into_iter().enumerate() {
            let neg = c.is_negative();
            let mag = c.abs();
            if idx == 0 {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            let mono: Vec<String> = e
                .iter()
                .enumerate()
                .filter(|(_, &k)| k > 0)
                .map(|(v, &k)| {
                    let name = names.get(v).cloned().unwrap_or_else(|| format!("x{}", v + 1));
                    if k == 1 {
                        name
                    } else {
                        format!("{name}^{k}")
                    }
                })
                .collect();
            if mono.is_empty() {
                out.push_str(&fmt_rational(&mag));
            } else {
                if !mag.is_one() {
                    out.push_str(&fmt_rational(&mag));
                    out.push('*');
                }
                out.push_str(&mono.join("*"));
            }
        }
        out
    }
}

/// Default variable names `u1..uN`.
pub fn field_names(n: usize) -> Vec<String> {
    (1..=n).map(|i| format!("u{i}")).collect()
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.display_with(&field_names(self.nvars)))
    }
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Poly[{}]({})", self.nvars, self)
    }
}

impl Add<&Poly> for &Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl Add for Poly {
    type Output = Poly;
    fn add(mut self, rhs: Poly) -> Poly {
        self += &rhs;
        self
    }
}

impl AddAssign<&Poly> for Poly {
    fn add_assign(&mut self, rhs: &Poly) {
        assert_eq!(self.nvars, rhs.nvars, "polynomial variable count");
        for (e, c) in &rhs.terms {
            self.add_term(e.clone(), c.clone());
        }
    }
}

impl SubAssign<&Poly> for Poly {
    fn sub_assign(&mut self, rhs: &Poly) {
        assert_eq!(self.nvars, rhs.nvars, "polynomial variable count");
        for (e, c) in &rhs.terms {
            self.add_term(e.clone(), -c.clone());
        }
    }
}

impl Sub<&Poly> for &Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        let mut out = self.clone();
        out -= rhs;
        out
    }
}

impl Sub for Poly {
    type Output = Poly;
    fn sub(mut self, rhs: Poly) -> Poly {
        self -= &rhs;
        self
    }
}

impl Mul<&Poly> for &Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        self.checked_mul(rhs).expect("polynomial variable count")
    }
}

impl Mul for Poly {
    type Output = Poly;
    fn mul(self, rhs: Poly) -> Poly {
        &self * &rhs
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        Poly { nvars: self.nvars, terms: self.terms.iter().map(|(e, c)| (e.clone(), -c.clone())).collect() }
    }
}

impl Neg for Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        -&self
    }
}

/// Floating-point evaluator compiled from an exact polynomial.
#[derive(Clone, Debug)]
pub struct F64Poly {
    nvars: usize,
    terms: Vec<(f64, Vec<u32>)>,
}

impl From<&Poly> for F64Poly {
    fn from(p: &Poly) -> Self {
        F64Poly { nvars: p.nvars, terms: p.terms.iter().map(|(e, c)| (to_f64(c), e.clone())).collect() }
    }
}

impl F64Poly {
    pub fn eval(&self, point: &[f64]) -> f64 {
        debug_assert_eq!(point.len(), self.nvars);
        self.terms
            .iter()
            .map(|(c, e)| {
                e.iter().zip(point).fold(*c, |acc, (&k, &x)| if k == 0 { acc } else { acc * x.powi(k as i32) })
            })
            .sum()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
}

/// Potential `Φ` of the closed polynomial one-form `A_k du^k`, normalized by
/// `Φ(0) = 0`.
///
/// Closedness is checked first. The potential is assembled with the radial
/// homotopy `Φ(u) = ∫₀¹ A_k(tu) u^k dt`, which for a monomial `c u^e` in
/// `A_k` contributes `c / (|e| + 1) · u^e u^k`.
pub fn one_form_potential(a: &[Poly]) -> Result<Poly> {
    let n = a.len();
    if n == 0 {
        return Err(Error::InvalidArgument("empty one-form".into()));
    }
    for (idx, ak) in a.iter().enumerate() {
        if ak.nvars != n {
            return Err(Error::DimensionMismatch {
                what: "one-form component variable count",
                expected: n,
                got: a[idx].nvars,
            });
        }
    }
    for k in 0..n {
        for l in k + 1..n {
            let residual = &a[k].partial(l) - &a[l].partial(k);
            if !residual.is_zero() {
                return Err(Error::NotExact { stage: "one-form potential", k, l, residual });
            }
        }
    }
    let mut phi = Poly::zero(n);
    for (k, ak) in a.iter().enumerate() {
        for (e, c) in &ak.terms {
            let deg: u32 = e.iter().sum();
            let mut e2 = e.clone();
            e2[k] += 1;
            phi.add_term(e2, c / Rational::from_integer((deg + 1).into()));
        }
    }
    Ok(phi)
}
