//! Sparse multivariate polynomials over the Gaussian rationals.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_complex::Complex64;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::gauss::GaussRat;
use crate::error::{Error, Result};
use crate::fields::Jet2;

pub type Exponents = Vec<u32>;

/// A polynomial in `n_vars` variables. Zero coefficients are never stored and
/// terms are kept in lexicographic exponent order, so structural equality is
/// polynomial equality.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct MultiPoly {
    n_vars: usize,
    terms: BTreeMap<Exponents, GaussRat>,
}

impl MultiPoly {
    pub fn zero(n_vars: usize) -> Self {
        MultiPoly {
            n_vars,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(n_vars: usize, c: GaussRat) -> Self {
        MultiPoly::monomial(n_vars, vec![0; n_vars], c)
    }

    pub fn one(n_vars: usize) -> Self {
        MultiPoly::constant(n_vars, GaussRat::one())
    }

    /// The coordinate `x_k` (0-based).
    pub fn var(n_vars: usize, k: usize) -> Self {
        assert!(
            k < n_vars,
            "variable index {k} out of range for {n_vars} variables"
        );
        let mut e = vec![0; n_vars];
        e[k] = 1;
        MultiPoly::monomial(n_vars, e, GaussRat::one())
    }

    pub fn monomial(n_vars: usize, exps: Exponents, c: GaussRat) -> Self {
        assert_eq!(exps.len(), n_vars, "exponent vector length");
        let mut p = MultiPoly::zero(n_vars);
        if !c.is_zero() {
            p.terms.insert(exps, c);
        }
        p
    }

    pub fn from_terms(
        n_vars: usize,
        terms: impl IntoIterator<Item = (Exponents, GaussRat)>,
    ) -> Self {
        let mut p = MultiPoly::zero(n_vars);
        for (e, c) in terms {
            p.add_term(e, c);
        }
        p
    }

    fn add_term(&mut self, exps: Exponents, c: GaussRat) {
        assert_eq!(exps.len(), self.n_vars, "exponent vector length");
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&exps) {
            Some(old) => {
                let s = &*old + &c;
                if s.is_zero() {
                    self.terms.remove(&exps);
                } else {
                    *old = s;
                }
            }
            None => {
                self.terms.insert(exps, c);
            }
        }
    }

    pub fn n_vars(&self) -> usize {
        self.n_vars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Exponents, &GaussRat)> {
        self.terms.iter()
    }

    pub fn n_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coeff(&self, exps: &[u32]) -> GaussRat {
        self.terms.get(exps).cloned().unwrap_or_else(GaussRat::zero)
    }

    /// `Some(c)` if the polynomial is the constant `c` (including zero).
    pub fn as_constant(&self) -> Option<GaussRat> {
        match self.terms.len() {
            0 => Some(GaussRat::zero()),
            1 => self.terms.get(&vec![0; self.n_vars]).cloned(),
            _ => None,
        }
    }

    pub fn total_degree(&self) -> u32 {
        self.terms.keys().map(|e| e.iter().sum()).max().unwrap_or(0)
    }

    pub fn degree_in(&self, k: usize) -> u32 {
        self.terms.keys().map(|e| e[k]).max().unwrap_or(0)
    }

    /// Degree if every term has the same total degree; `None` otherwise or
    /// for the zero polynomial.
    pub fn homogeneous_degree(&self) -> Option<u32> {
        let mut degs = self.terms.keys().map(|e| e.iter().sum::<u32>());
        let first = degs.next()?;
        degs.all(|d| d == first).then_some(first)
    }

    fn check_vars(&self, other: &MultiPoly) -> Result<()> {
        if self.n_vars != other.n_vars {
            return Err(Error::DimensionMismatch {
                expected: self.n_vars,
                got: other.n_vars,
            });
        }
        Ok(())
    }

    pub fn try_add(&self, other: &MultiPoly) -> Result<MultiPoly> {
        self.check_vars(other)?;
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn try_mul(&self, other: &MultiPoly) -> Result<MultiPoly> {
        self.check_vars(other)?;
        let mut out = MultiPoly::zero(self.n_vars);
        for (ea, ca) in &self.terms {
            for (eb, cb) in &other.terms {
                let e: Exponents = ea.iter().zip(eb).map(|(a, b)| a + b).collect();
                out.add_term(e, ca * cb);
            }
        }
        Ok(out)
    }

    pub fn scale(&self, c: &GaussRat) -> MultiPoly {
        if c.is_zero() {
            return MultiPoly::zero(self.n_vars);
        }
        MultiPoly {
            n_vars: self.n_vars,
            terms: self.terms.iter().map(|(e, a)| (e.clone(), a * c)).collect(),
        }
    }

    pub fn pow(&self, e: u32) -> MultiPoly {
        let mut acc = MultiPoly::one(self.n_vars);
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// Exact partial derivative with respect to `x_k`.
    pub fn derivative(&self, k: usize) -> MultiPoly {
        let mut out = MultiPoly::zero(self.n_vars);
        for (e, c) in &self.terms {
            if e[k] == 0 {
                continue;
            }
            let mut e2 = e.clone();
            e2[k] -= 1;
            out.add_term(e2, c * &GaussRat::real(e[k] as i64));
        }
        out
    }

    /// Maps every term through `f(exponents, coefficient) -> coefficient`.
    pub fn map_coeffs(&self, f: impl Fn(&[u32], &GaussRat) -> GaussRat) -> MultiPoly {
        MultiPoly::from_terms(
            self.n_vars,
            self.terms.iter().map(|(e, c)| (e.clone(), f(e, c))),
        )
    }

    /// Substitutes polynomial `subs[k]` (all in the same `m` variables) for
    /// variable `x_k`.
    pub fn compose(&self, subs: &[MultiPoly]) -> Result<MultiPoly> {
        if subs.len() != self.n_vars {
            return Err(Error::DimensionMismatch {
                expected: self.n_vars,
                got: subs.len(),
            });
        }
        let m = subs.first().map(|s| s.n_vars).unwrap_or(0);
        if let Some(bad) = subs.iter().find(|s| s.n_vars != m) {
            return Err(Error::DimensionMismatch {
                expected: m,
                got: bad.n_vars,
            });
        }
        // cache powers of each substituted polynomial
        let mut powers: Vec<Vec<MultiPoly>> = subs
            .iter()
            .map(|s| vec![MultiPoly::one(m), s.clone()])
            .collect();
        let mut out = MultiPoly::zero(m);
        for (e, c) in &self.terms {
            let mut term = MultiPoly::constant(m, c.clone());
            for (k, &ek) in e.iter().enumerate() {
                while powers[k].len() <= ek as usize {
                    let next = powers[k].last().unwrap() * &subs[k];
                    powers[k].push(next);
                }
                if ek > 0 {
                    term = &term * &powers[k][ek as usize];
                }
            }
            out = &out + &term;
        }
        Ok(out)
    }

    /// Re-indexes variables: variable `k` of `self` becomes variable
    /// `placement[k]` of a polynomial in `n_vars` variables.
    pub fn embed(&self, n_vars: usize, placement: &[usize]) -> MultiPoly {
        assert_eq!(placement.len(), self.n_vars, "placement length");
        MultiPoly::from_terms(
            n_vars,
            self.terms.iter().map(|(e, c)| {
                let mut e2 = vec![0; n_vars];
                for (k, &ek) in e.iter().enumerate() {
                    e2[placement[k]] += ek;
                }
                (e2, c.clone())
            }),
        )
    }

    pub fn eval_exact(&self, x: &[GaussRat]) -> GaussRat {
        assert_eq!(x.len(), self.n_vars, "point dimension");
        let mut acc = GaussRat::zero();
        for (e, c) in &self.terms {
            let mut t = c.clone();
            for (xk, &ek) in x.iter().zip(e) {
                if ek > 0 {
                    t = &t * &xk.pow(ek);
                }
            }
            acc = &acc + &t;
        }
        acc
    }

    pub fn to_numeric(&self) -> NumPoly {
        NumPoly {
            n_vars: self.n_vars,
            terms: self
                .terms
                .iter()
                .map(|(e, c)| (e.clone(), c.to_c64()))
                .collect(),
        }
    }

    pub fn eval_c64(&self, x: &[Complex64]) -> Complex64 {
        self.to_numeric().eval(x)
    }

    pub fn eval_f64(&self, x: &[f64]) -> Complex64 {
        self.to_numeric().eval_real(x)
    }

    /// Coefficient-vector test: true iff one of `self`, `other` is a scalar
    /// multiple of the other (including either being zero).
    pub fn linearly_dependent(&self, other: &MultiPoly) -> bool {
        let Some((e, c)) = self.terms.iter().next() else {
            return true;
        };
        if other.is_zero() {
            return true;
        }
        let ratio = &other.coeff(e) / c;
        ratio.is_zero() == other.is_zero() && self.scale(&ratio) == *other
    }
}

impl Add<&MultiPoly> for &MultiPoly {
    type Output = MultiPoly;
    fn add(self, rhs: &MultiPoly) -> MultiPoly {
        self.try_add(rhs)
            .expect("polynomial variable count mismatch")
    }
}

impl Sub<&MultiPoly> for &MultiPoly {
    type Output = MultiPoly;
    fn sub(self, rhs: &MultiPoly) -> MultiPoly {
        self.try_add(&-rhs)
            .expect("polynomial variable count mismatch")
    }
}

impl Mul<&MultiPoly> for &MultiPoly {
    type Output = MultiPoly;
    fn mul(self, rhs: &MultiPoly) -> MultiPoly {
        self.try_mul(rhs)
            .expect("polynomial variable count mismatch")
    }
}

impl Neg for &MultiPoly {
    type Output = MultiPoly;
    fn neg(self) -> MultiPoly {
        self.scale(&GaussRat::real(-1))
    }
}

impl Add for MultiPoly {
    type Output = MultiPoly;
    fn add(self, rhs: MultiPoly) -> MultiPoly {
        &self + &rhs
    }
}

impl Sub for MultiPoly {
    type Output = MultiPoly;
    fn sub(self, rhs: MultiPoly) -> MultiPoly {
        &self - &rhs
    }
}

impl Mul for MultiPoly {
    type Output = MultiPoly;
    fn mul(self, rhs: MultiPoly) -> MultiPoly {
        &self * &rhs
    }
}

impl Neg for MultiPoly {
    type Output = MultiPoly;
    fn neg(self) -> MultiPoly {
        -&self
    }
}

impl fmt::Display for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (k, (e, c)) in self.terms.iter().rev().enumerate() {
            if k > 0 {
                write!(f, " + ")?;
            }
            let mono: Vec<String> = e
                .iter()
                .enumerate()
                .filter(|(_, &p)| p > 0)
                .map(|(v, &p)| {
                    if p == 1 {
                        format!("x{}", v + 1)
                    } else {
                        format!("x{}^{}", v + 1, p)
                    }
                })
                .collect();
            if mono.is_empty() {
                write!(f, "({c})")?;
            } else if c.is_one() {
                write!(f, "{}", mono.join("*"))?;
            } else {
                write!(f, "({c})*{}", mono.join("*"))?;
            }
        }
        Ok(())
    }
}

// Canonical JSON: {"n_vars": n, "terms": [{"exp": [...], "coeff": {"re": [p,q], "im": [p,q]}}, ...]}
// with terms in ascending lexicographic exponent order.

impl Serialize for MultiPoly {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let terms: Vec<serde_json::Value> = self
            .terms
            .iter()
            .map(|(e, c)| serde_json::json!({ "exp": e, "coeff": c.to_json() }))
            .collect();
        serde_json::json!({ "n_vars": self.n_vars, "terms": terms }).serialize(s)
    }
}

impl<'de> Deserialize<'de> for MultiPoly {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let v = serde_json::Value::deserialize(d)?;
        let n_vars = v
            .get("n_vars")
            .and_then(|n| n.as_u64())
            .ok_or_else(|| D::Error::custom("missing n_vars"))? as usize;
        let mut p = MultiPoly::zero(n_vars);
        for t in v
            .get("terms")
            .and_then(|t| t.as_array())
            .ok_or_else(|| D::Error::custom("missing terms"))?
        {
            let e: Exponents = serde_json::from_value(t.get("exp").cloned().unwrap_or_default())
                .map_err(D::Error::custom)?;
            if e.len() != n_vars {
                return Err(D::Error::custom(
                    "exponent vector length differs from n_vars",
                ));
            }
            let c = t
                .get("coeff")
                .and_then(GaussRat::from_json)
                .ok_or_else(|| D::Error::custom("malformed coefficient"))?;
            p.add_term(e, c);
        }
        Ok(p)
    }
}

/// Floating-point image of a [`MultiPoly`] for fast evaluation.
#[derive(Clone, Debug)]
pub struct NumPoly {
    n_vars: usize,
    terms: Vec<(Exponents, Complex64)>,
}

impl NumPoly {
    pub fn n_vars(&self) -> usize {
        self.n_vars
    }

    pub fn total_degree(&self) -> u32 {
        self.terms
            .iter()
            .map(|(e, _)| e.iter().sum())
            .max()
            .unwrap_or(0)
    }

    pub fn eval(&self, x: &[Complex64]) -> Complex64 {
        self.terms
            .iter()
            .map(|(e, c)| {
                e.iter()
                    .zip(x)
                    .filter(|(&k, _)| k > 0)
                    .fold(*c, |acc, (&k, xv)| acc * xv.powu(k))
            })
            .sum()
    }

    pub fn eval_real(&self, x: &[f64]) -> Complex64 {
        self.terms
            .iter()
            .map(|(e, c)| {
                e.iter()
                    .zip(x)
                    .filter(|(&k, _)| k > 0)
                    .fold(*c, |acc, (&k, &xv)| acc * xv.powi(k as i32))
            })
            .sum()
    }

    /// Evaluates the polynomial on jets, sharing the powers of each input.
    pub fn eval_jet(&self, x: &[Jet2]) -> Jet2 {
        assert_eq!(x.len(), self.n_vars, "point dimension");
        let dim = x.first().map(Jet2::dim).unwrap_or(0);
        let mut powers: Vec<Vec<Jet2>> = x
            .iter()
            .map(|xi| vec![Jet2::constant(dim, Complex64::new(1.0, 0.0)), xi.clone()])
            .collect();
        let mut acc = Jet2::constant(dim, Complex64::new(0.0, 0.0));
        for (e, c) in &self.terms {
            let mut term: Option<Jet2> = None;
            for (k, &ek) in e.iter().enumerate() {
                if ek == 0 {
                    continue;
                }
                while powers[k].len() <= ek as usize {
                    let next = powers[k].last().unwrap() * &x[k];
                    powers[k].push(next);
                }
                let pk = &powers[k][ek as usize];
                term = Some(match term {
                    None => pk.clone(),
                    Some(t) => &t * pk,
                });
            }
            acc = match term {
                None => acc.add_scalar(*c),
                Some(t) => &acc + &t.scale(*c),
            };
        }
        acc
    }
}
