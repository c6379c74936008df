//! Coefficients `(a1, a2, b1, b2, b3)` of the harmonic quadric
//! `p = a1 (x1^2 - x2^2) + a2 (x2^2 - x3^2) + 2 b1 x1 x2 + 2 b2 x1 x3 + 2 b3 x2 x3`
//! on R^3, and the variety on which `kappa(p, p) = 0`.
//!
//! The mixed terms carry a factor 2: with that normalisation the three
//! constraints `a1^2 + b1^2 + b2^2 = 0`, `a1 a2 = -b2^2`, `a1 b3 = b1 b2` are
//! exactly the conditions for `kappa(p, p) = 0`.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::{GaussRat, MultiPoly};
use crate::error::{Error, Result};

/// Sheet of the variety: sign of the square root chosen for `a1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Branch {
    Plus,
    Minus,
}

impl Branch {
    pub fn sign(self) -> i64 {
        match self {
            Branch::Plus => 1,
            Branch::Minus => -1,
        }
    }
}

impl std::str::FromStr for Branch {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "+" | "plus" | "+1" => Ok(Branch::Plus),
            "-" | "minus" | "-1" => Ok(Branch::Minus),
            other => Err(Error::Parse(format!(
                "branch must be + or -, got `{other}`"
            ))),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Quintuple {
    pub a1: GaussRat,
    pub a2: GaussRat,
    pub b1: GaussRat,
    pub b2: GaussRat,
    pub b3: GaussRat,
}

impl Quintuple {
    /// Unchecked constructor; see [`Quintuple::residuals`].
    pub fn new(a1: GaussRat, a2: GaussRat, b1: GaussRat, b2: GaussRat, b3: GaussRat) -> Self {
        Quintuple { a1, a2, b1, b2, b3 }
    }

    /// `[a1^2 + b1^2 + b2^2, a1 a2 + b2^2, a1 b3 - b1 b2]`
    pub fn residuals(&self) -> [GaussRat; 3] {
        let Quintuple { a1, a2, b1, b2, b3 } = self;
        [
            &(&(a1 * a1) + &(b1 * b1)) + &(b2 * b2),
            &(a1 * a2) + &(b2 * b2),
            &(a1 * b3) - &(b1 * b2),
        ]
    }

    pub fn satisfies_constraints(&self) -> bool {
        self.residuals().iter().all(GaussRat::is_zero)
    }

    /// `a1 b1 b2 != 0`
    pub fn is_regular(&self) -> bool {
        !(&(&self.a1 * &self.b1) * &self.b2).is_zero()
    }

    pub fn to_f64(&self) -> QuintupleF64 {
        QuintupleF64 {
            a1: self.a1.to_c64(),
            a2: self.a2.to_c64(),
            b1: self.b1.to_c64(),
            b2: self.b2.to_c64(),
            b3: self.b3.to_c64(),
        }
    }
}

/// Floating-point quintuple for variety points that need irrational roots.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct QuintupleF64 {
    pub a1: Complex64,
    pub a2: Complex64,
    pub b1: Complex64,
    pub b2: Complex64,
    pub b3: Complex64,
}

impl QuintupleF64 {
    pub const TOL: f64 = 1e-12;

    pub fn residuals(&self) -> [Complex64; 3] {
        let QuintupleF64 { a1, a2, b1, b2, b3 } = *self;
        [
            a1 * a1 + b1 * b1 + b2 * b2,
            a1 * a2 + b2 * b2,
            a1 * b3 - b1 * b2,
        ]
    }

    pub fn residual_norms(&self) -> [f64; 3] {
        self.residuals().map(|r| r.norm())
    }

    pub fn satisfies_constraints(&self) -> bool {
        self.residual_norms().iter().all(|&r| r <= Self::TOL)
    }

    pub fn is_regular(&self) -> bool {
        (self.a1 * self.b1 * self.b2).norm() > Self::TOL
    }

    pub fn criticality_det(&self) -> Complex64 {
        let QuintupleF64 { a1, b1, b2, .. } = *self;
        let two = Complex64::new(2.0, 0.0);
        det3([[two * a1, b1, b2], [a1, two * b1, b2], [a1, b1, two * b2]])
    }
}

fn det3<T>(m: [[T; 3]; 3]) -> T
where
    T: Clone + std::ops::Mul<Output = T> + std::ops::Sub<Output = T> + std::ops::Add<Output = T>,
{
    let minor = |r0: usize, r1: usize, c0: usize, c1: usize| {
        m[r0][c0].clone() * m[r1][c1].clone() - m[r0][c1].clone() * m[r1][c0].clone()
    };
    m[0][0].clone() * minor(1, 2, 1, 2) - m[0][1].clone() * minor(1, 2, 0, 2)
        + m[0][2].clone() * minor(1, 2, 0, 1)
}

/// Solves the constraints for `(a1, a2, b3)` given `(b1, b2)`:
/// `a1 = ±sqrt(-(b1^2 + b2^2))`, `a2 = -b2^2 / a1`, `b3 = b1 b2 / a1`.
/// `Branch::Plus` takes the principal root.
pub fn variety_point(b1: &GaussRat, b2: &GaussRat, branch: Branch) -> Result<Quintuple> {
    let s = &(b1 * b1) + &(b2 * b2);
    if s.is_zero() {
        return Err(Error::DegenerateParameters);
    }
    let radicand = -&s;
    let root = radicand
        .sqrt_exact()
        .ok_or_else(|| Error::NotExactlyRepresentable(format!("-(b1^2 + b2^2) = {radicand}")))?;
    let a1 = &root * &GaussRat::real(branch.sign());
    let a2 = &(-&(b2 * b2)) / &a1;
    let b3 = &(b1 * b2) / &a1;
    Ok(Quintuple::new(a1, a2, b1.clone(), b2.clone(), b3))
}

/// Numeric-mode variety point (principal complex square root for `Plus`).
pub fn variety_point_numeric(b1: Complex64, b2: Complex64, branch: Branch) -> Result<QuintupleF64> {
    let s = b1 * b1 + b2 * b2;
    if s.norm() <= QuintupleF64::TOL * (1.0 + b1.norm_sqr() + b2.norm_sqr()) {
        return Err(Error::DegenerateParameters);
    }
    let a1 = (-s).sqrt() * branch.sign() as f64;
    Ok(QuintupleF64 {
        a1,
        a2: -(b2 * b2) / a1,
        b1,
        b2,
        b3: b1 * b2 / a1,
    })
}

/// Determinant of `[[2a1, b1, b2], [a1, 2b1, b2], [a1, b1, 2b2]]` by cofactor
/// expansion.
pub fn criticality_det(q: &Quintuple) -> GaussRat {
    let two = GaussRat::real(2);
    let (a1, b1, b2) = (&q.a1, &q.b1, &q.b2);
    det3([
        [&two * a1, b1.clone(), b2.clone()],
        [a1.clone(), &two * b1, b2.clone()],
        [a1.clone(), b1.clone(), &two * b2],
    ])
}

/// The closed form `4 a1 b1 b2`.
pub fn criticality_det_product(q: &Quintuple) -> GaussRat {
    &(&(&GaussRat::real(4) * &q.a1) * &q.b1) * &q.b2
}

/// The quadric `p` in the first three of `n_vars` variables.
pub fn quadric_poly(q: &Quintuple, n_vars: usize) -> MultiPoly {
    assert!(n_vars >= 3, "quadric needs three variables");
    let mono = |e: [u32; 3], c: &GaussRat| {
        let mut exps = vec![0; n_vars];
        exps[..3].copy_from_slice(&e);
        (exps, c.clone())
    };
    let neg = |c: &GaussRat| -c;
    let dbl = |c: &GaussRat| c * &GaussRat::real(2);
    MultiPoly::from_terms(
        n_vars,
        [
            mono([2, 0, 0], &q.a1),
            mono([0, 2, 0], &neg(&q.a1)),
            mono([0, 2, 0], &q.a2),
            mono([0, 0, 2], &neg(&q.a2)),
            mono([1, 1, 0], &dbl(&q.b1)),
            mono([1, 0, 1], &dbl(&q.b2)),
            mono([0, 1, 1], &dbl(&q.b3)),
        ],
    )
}

/// For `P = a (x1^2 - x2^2) + b x1 x2` on R^2 returns `kappa(P, P)` together
/// with the scalar `c` such that `kappa(P, P) = c (x1^2 + x2^2)`.
pub fn planar_quadratic_conformality(a: &GaussRat, b: &GaussRat) -> (MultiPoly, GaussRat) {
    let sig = crate::fields::MetricSignature::euclidean(2);
    let p = MultiPoly::from_terms(
        2,
        [
            (vec![2, 0], a.clone()),
            (vec![0, 2], -a),
            (vec![1, 1], b.clone()),
        ],
    );
    let k = super::poly_conformality(&p, &p, &sig).expect("two variables");
    let c = k.coeff(&[2, 0]);
    (k, c)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn g(re: i64, im: i64) -> GaussRat {
        GaussRat::from_ints(re, im)
    }

    #[test]
    fn q0_from_three_four() {
        let q0 = variety_point(&g(3, 0), &g(4, 0), Branch::Plus).unwrap();
        assert_eq!(q0.a1, g(0, 5));
        assert_eq!(q0.a2, GaussRat::from_fracs(0, 1, 16, 5));
        assert_eq!(q0.b3, GaussRat::from_fracs(0, 1, -12, 5));
        assert!(q0.satisfies_constraints());
        assert!(q0.is_regular());
    }

    #[test]
    fn minus_branch_negates_a1() {
        let qm = variety_point(&g(3, 0), &g(4, 0), Branch::Minus).unwrap();
        assert_eq!(qm.a1, g(0, -5));
        assert!(qm.satisfies_constraints());
    }

    #[test]
    fn degenerate_and_irrational_parameters() {
        assert_eq!(
            variety_point(&g(1, 0), &g(0, 1), Branch::Plus),
            Err(Error::DegenerateParameters)
        );
        assert!(matches!(
            variety_point(&g(1, 0), &g(1, 0), Branch::Plus),
            Err(Error::NotExactlyRepresentable(_))
        ));
    }

    #[test]
    fn irregular_point_on_variety() {
        let q = variety_point(&g(0, 0), &g(1, 0), Branch::Plus).unwrap();
        assert_eq!(q.a1, g(0, 1));
        assert_eq!(q.a2, g(0, 1));
        assert_eq!(q.b3, g(0, 0));
        assert!(q.satisfies_constraints());
        assert!(!q.is_regular());
        assert!(criticality_det(&q).is_zero());
    }

    #[test]
    fn five_twelve_gives_thirteen_i() {
        let q = variety_point(&g(5, 0), &g(12, 0), Branch::Plus).unwrap();
        assert_eq!(q.a1, g(0, 13));
        assert!(q.satisfies_constraints());
    }

    #[test]
    fn determinant_of_q0() {
        let q0 = variety_point(&g(3, 0), &g(4, 0), Branch::Plus).unwrap();
        assert_eq!(criticality_det(&q0), g(0, 240));
        assert_eq!(criticality_det_product(&q0), g(0, 240));
    }

    #[test]
    fn numeric_variety_point_has_small_residuals() {
        let q = variety_point_numeric(
            Complex64::new(1.0, 0.3),
            Complex64::new(-0.7, 2.0),
            Branch::Minus,
        )
        .unwrap();
        assert!(q.satisfies_constraints(), "{:?}", q.residual_norms());
        let d = q.criticality_det() - 4.0 * q.a1 * q.b1 * q.b2;
        assert!(d.norm() < 1e-12);
        assert!(matches!(
            variety_point_numeric(
                Complex64::new(1.0, 0.0),
                Complex64::new(0.0, 1.0),
                Branch::Plus
            ),
            Err(Error::DegenerateParameters)
        ));
    }

    #[test]
    fn planar_family_condition_is_four_a_squared_plus_b_squared() {
        let (a, b) = (g(2, 1), g(-1, 3));
        let (k, c) = planar_quadratic_conformality(&a, &b);
        let want_c = &(&GaussRat::real(4) * &(&a * &a)) + &(&b * &b);
        assert_eq!(c, want_c);
        let circle = MultiPoly::from_terms(
            2,
            [(vec![2, 0], GaussRat::one()), (vec![0, 2], GaussRat::one())],
        );
        assert_eq!(k, circle.scale(&c));
        // b = 2 i a is on the cone: P = a (x1 - i x2)^2 up to sign conventions
        let (_, c) = planar_quadratic_conformality(&a, &(&GaussRat::from_ints(0, 2) * &a));
        assert!(c.is_zero());
    }
}
