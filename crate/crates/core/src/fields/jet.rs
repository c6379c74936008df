//! Second-order forward-mode jets with complex coefficients.
//!
//! A [`Jet2`] carries the value, gradient and Hessian of a complex-valued
//! function of `n` real coordinates. Real and imaginary parts are two
//! independent real jets packed into one complex number; differentiation is
//! only ever with respect to the real coordinates.

use std::ops::{Add, Div, Mul, Neg, Sub};

use num_complex::Complex64;

type C = Complex64;

/// Value, gradient and (packed upper-triangular) Hessian at a point.
#[derive(Debug, Clone, PartialEq)]
pub struct Jet2 {
    value: C,
    grad: Vec<C>,
    // row-major upper triangle: (i, j) with i <= j
    hess: Vec<C>,
}

#[inline]
fn tri_len(n: usize) -> usize {
    n * (n + 1) / 2
}

#[inline]
fn tri_index(n: usize, i: usize, j: usize) -> usize {
    let (i, j) = if i <= j { (i, j) } else { (j, i) };
    i * n - i * (i + 1) / 2 + j
}

impl Jet2 {
    pub fn constant(n: usize, value: C) -> Self {
        Jet2 {
            value,
            grad: vec![C::new(0.0, 0.0); n],
            hess: vec![C::new(0.0, 0.0); tri_len(n)],
        }
    }

    /// The coordinate function `x_k` at the value `x`.
    pub fn variable(n: usize, k: usize, x: f64) -> Self {
        let mut j = Jet2::constant(n, C::new(x, 0.0));
        if k < n {
            j.grad[k] = C::new(1.0, 0.0);
        }
        j
    }

    /// Seeds one variable jet per coordinate of `x`.
    pub fn seed(x: &[f64]) -> Vec<Jet2> {
        let n = x.len();
        x.iter()
            .enumerate()
            .map(|(k, &v)| Jet2::variable(n, k, v))
            .collect()
    }

    /// Value-only seeds (empty gradient), for cheap evaluation.
    pub fn seed_values(x: &[f64]) -> Vec<Jet2> {
        x.iter()
            .map(|&v| Jet2::constant(0, C::new(v, 0.0)))
            .collect()
    }

    pub fn dim(&self) -> usize {
        self.grad.len()
    }

    pub fn value(&self) -> C {
        self.value
    }

    pub fn gradient(&self) -> &[C] {
        &self.grad
    }

    pub fn hessian(&self, i: usize, j: usize) -> C {
        self.hess[tri_index(self.dim(), i, j)]
    }

    /// Full symmetric Hessian, row-major.
    pub fn hessian_matrix(&self) -> Vec<Vec<C>> {
        let n = self.dim();
        (0..n)
            .map(|i| (0..n).map(|j| self.hessian(i, j)).collect())
            .collect()
    }

    pub fn is_finite(&self) -> bool {
        self.value.is_finite()
            && self.grad.iter().all(|g| g.is_finite())
            && self.hess.iter().all(|h| h.is_finite())
    }

    fn map(&self, f: impl Fn(C) -> C) -> Jet2 {
        Jet2 {
            value: f(self.value),
            grad: self.grad.iter().map(|&g| f(g)).collect(),
            hess: self.hess.iter().map(|&h| f(h)).collect(),
        }
    }

    /// Real part, taken coefficient-wise (the operators are real-linear).
    pub fn re(&self) -> Jet2 {
        self.map(|c| C::new(c.re, 0.0))
    }

    pub fn im(&self) -> Jet2 {
        self.map(|c| C::new(c.im, 0.0))
    }

    pub fn scale(&self, s: C) -> Jet2 {
        self.map(|c| c * s)
    }

    /// Applies a scalar function given its value and first two derivatives
    /// at `self.value`.
    pub fn chain(&self, f0: C, f1: C, f2: C) -> Jet2 {
        let n = self.dim();
        let mut out = Jet2::constant(n, f0);
        for i in 0..n {
            out.grad[i] = f1 * self.grad[i];
        }
        let mut idx = 0;
        for i in 0..n {
            for j in i..n {
                out.hess[idx] = f2 * self.grad[i] * self.grad[j] + f1 * self.hess[idx];
                idx += 1;
            }
        }
        out
    }

    pub fn recip(&self) -> Jet2 {
        let u = self.value;
        let inv = u.inv();
        self.chain(inv, -inv * inv, 2.0 * inv * inv * inv)
    }

    /// Principal square root, analytic off the non-positive real axis.
    pub fn sqrt(&self) -> Jet2 {
        let s = self.value.sqrt();
        let d1 = 0.5 / s;
        let d2 = -0.25 / (s * self.value);
        self.chain(s, d1, d2)
    }

    pub fn powi(&self, e: u32) -> Jet2 {
        match e {
            0 => Jet2::constant(self.dim(), C::new(1.0, 0.0)),
            1 => self.clone(),
            _ => {
                let u = self.value;
                let ef = e as f64;
                let f0 = u.powu(e);
                let f1 = ef * u.powu(e - 1);
                let f2 = ef * (ef - 1.0) * u.powu(e - 2);
                self.chain(f0, f1, f2)
            }
        }
    }

    fn zip(&self, other: &Jet2, f: impl Fn(C, C) -> C) -> Jet2 {
        assert_eq!(self.dim(), other.dim(), "jet dimension mismatch");
        Jet2 {
            value: f(self.value, other.value),
            grad: self
                .grad
                .iter()
                .zip(&other.grad)
                .map(|(&a, &b)| f(a, b))
                .collect(),
            hess: self
                .hess
                .iter()
                .zip(&other.hess)
                .map(|(&a, &b)| f(a, b))
                .collect(),
        }
    }

    fn product(&self, other: &Jet2) -> Jet2 {
        let n = self.dim();
        assert_eq!(n, other.dim(), "jet dimension mismatch");
        let (u, v) = (self.value, other.value);
        let mut out = Jet2::constant(n, u * v);
        for i in 0..n {
            out.grad[i] = u * other.grad[i] + v * self.grad[i];
        }
        let mut idx = 0;
        for i in 0..n {
            for j in i..n {
                out.hess[idx] = u * other.hess[idx]
                    + v * self.hess[idx]
                    + self.grad[i] * other.grad[j]
                    + self.grad[j] * other.grad[i];
                idx += 1;
            }
        }
        out
    }

    pub fn add_scalar(&self, c: C) -> Jet2 {
        let mut out = self.clone();
        out.value += c;
        out
    }
}

macro_rules! forward_binop {
    ($tr:ident, $method:ident, $body:expr) => {
        impl $tr<&Jet2> for &Jet2 {
            type Output = Jet2;
            fn $method(self, rhs: &Jet2) -> Jet2 {
                let f: fn(&Jet2, &Jet2) -> Jet2 = $body;
                f(self, rhs)
            }
        }
        impl $tr<Jet2> for Jet2 {
            type Output = Jet2;
            fn $method(self, rhs: Jet2) -> Jet2 {
                (&self).$method(&rhs)
            }
        }
        impl $tr<&Jet2> for Jet2 {
            type Output = Jet2;
            fn $method(self, rhs: &Jet2) -> Jet2 {
                (&self).$method(rhs)
            }
        }
        impl $tr<Jet2> for &Jet2 {
            type Output = Jet2;
            fn $method(self, rhs: Jet2) -> Jet2 {
                self.$method(&rhs)
            }
        }
    };
}

forward_binop!(Add, add, |a, b| a.zip(b, |x, y| x + y));
forward_binop!(Sub, sub, |a, b| a.zip(b, |x, y| x - y));
forward_binop!(Mul, mul, |a, b| a.product(b));
forward_binop!(Div, div, |a, b| a.product(&b.recip()));

impl Neg for Jet2 {
    type Output = Jet2;
    fn neg(self) -> Jet2 {
        self.map(|c| -c)
    }
}

impl Neg for &Jet2 {
    type Output = Jet2;
    fn neg(self) -> Jet2 {
        self.map(|c| -c)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> C {
        C::new(re, im)
    }

    #[test]
    fn product_rule_matches_monomial() {
        let v = Jet2::seed(&[3.0, 0.0]);
        let sq = &v[0] * &v[0];
        assert_eq!(sq.value(), c(9.0, 0.0));
        assert_eq!(sq.gradient(), &[c(6.0, 0.0), c(0.0, 0.0)]);
        assert_eq!(sq.hessian(0, 0), c(2.0, 0.0));
        assert_eq!(sq.hessian(0, 1), c(0.0, 0.0));
        assert_eq!(sq.hessian(1, 1), c(0.0, 0.0));
    }

    #[test]
    fn holomorphic_square() {
        let v = Jet2::seed(&[1.0, 1.0]);
        let z = &v[0] + &v[1].scale(c(0.0, 1.0));
        let z2 = &z * &z;
        assert_eq!(z2.value(), c(0.0, 2.0));
        assert_eq!(z2.gradient(), &[c(2.0, 2.0), c(-2.0, 2.0)]);
        // d2/dx2 = 2, d2/dy2 = -2, mixed = 2i
        assert_eq!(z2.hessian(0, 0), c(2.0, 0.0));
        assert_eq!(z2.hessian(1, 1), c(-2.0, 0.0));
        assert_eq!(z2.hessian(0, 1), c(0.0, 2.0));
    }

    #[test]
    fn powi_agrees_with_repeated_product() {
        let v = Jet2::seed(&[0.7, -1.3, 0.4]);
        let u = &(&v[0] * &v[1]) + &v[2].scale(c(0.2, 1.1));
        let p3 = u.powi(3);
        let m3 = &(&u * &u) * &u;
        for (a, b) in p3.gradient().iter().zip(m3.gradient()) {
            assert!((a - b).norm() < 1e-13);
        }
        for i in 0..3 {
            for j in 0..3 {
                assert!((p3.hessian(i, j) - m3.hessian(i, j)).norm() < 1e-13);
            }
        }
    }

    #[test]
    fn sqrt_squares_back() {
        let v = Jet2::seed(&[0.3, 1.7]);
        let u = &(&v[0] * &v[0]) + &v[1].scale(c(0.5, 2.0));
        let s = u.sqrt();
        let back = &s * &s;
        assert!((back.value() - u.value()).norm() < 1e-14);
        for i in 0..2 {
            assert!((back.gradient()[i] - u.gradient()[i]).norm() < 1e-13);
            for j in 0..2 {
                assert!((back.hessian(i, j) - u.hessian(i, j)).norm() < 1e-13);
            }
        }
    }

    #[test]
    fn hessian_matrix_is_symmetric() {
        let v = Jet2::seed(&[0.2, 0.9, -0.4]);
        let f = &(&v[0] * &v[1]) / &v[2].add_scalar(c(2.0, 0.5));
        let h = f.hessian_matrix();
        for (i, row) in h.iter().enumerate() {
            for (j, v) in row.iter().enumerate() {
                assert_eq!(*v, h[j][i]);
            }
        }
    }
}
