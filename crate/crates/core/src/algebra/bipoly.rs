//! Polynomials in two formal parameters `x`, `y`.

use std::collections::BTreeMap;
use std::ops::{Add, Mul, Neg, Sub};

use crate::algebra::field::Field;
use crate::algebra::poly::Poly;

/// Sparse bivariate polynomial keyed by `(deg_x, deg_y)`; no zero terms.
#[derive(Clone, PartialEq, Debug)]
pub struct BiPoly<F> {
    terms: BTreeMap<(usize, usize), F>,
}

impl<F: Field> BiPoly<F> {
    pub fn zero() -> Self {
        BiPoly { terms: BTreeMap::new() }
    }

    pub fn from_terms(terms: impl IntoIterator<Item = ((usize, usize), F)>) -> Self {
        let mut out = Self::zero();
        for (k, c) in terms {
            out.add_term(k, c);
        }
        out
    }

    /// Embeds `p(x)`.
    pub fn from_x(p: &Poly<F>) -> Self {
        Self::from_terms(p.coeffs().iter().cloned().enumerate().map(|(k, c)| ((k, 0), c)))
    }

    /// Embeds `p(y)`.
    pub fn from_y(p: &Poly<F>) -> Self {
        Self::from_terms(p.coeffs().iter().cloned().enumerate().map(|(k, c)| ((0, k), c)))
    }

    fn add_term(&mut self, k: (usize, usize), c: F) {
        let v = match self.terms.remove(&k) {
            Some(old) => old + c,
            None => c,
        };
        if !v.is_zero() {
            self.terms.insert(k, v);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&(usize, usize), &F)> {
        self.terms.iter()
    }

    pub fn coeff(&self, a: usize, b: usize) -> F {
        self.terms.get(&(a, b)).cloned().unwrap_or_else(F::zero)
    }

    pub fn eval(&self, x: &F, y: &F) -> F {
        self.eval_y(y).eval(x)
    }

    /// Specializes `y`, leaving a polynomial in `x`.
    pub fn eval_y(&self, y: &F) -> Poly<F> {
        let n = self.terms.keys().map(|k| k.0 + 1).max().unwrap_or(0);
        let mut c = vec![F::zero(); n];
        for (&(a, b), v) in &self.terms {
            c[a] = c[a].clone() + v.clone() * pow(y, b);
        }
        Poly::new(c)
    }

    /// Coefficient of `y^i` as a polynomial in `x`.
    pub fn coeff_y(&self, i: usize) -> Poly<F> {
        let n = self.terms.keys().map(|k| k.0 + 1).max().unwrap_or(0);
        let mut c = vec![F::zero(); n];
        for (&(a, b), v) in &self.terms {
            if b == i {
                c[a] = v.clone();
            }
        }
        Poly::new(c)
    }

    pub fn degree_y(&self) -> Option<usize> {
        self.terms.keys().map(|k| k.1).max()
    }

    /// Restriction to the diagonal `y = x`.
    pub fn diagonal(&self) -> Poly<F> {
        let n = self.terms.keys().map(|k| k.0 + k.1 + 1).max().unwrap_or(0);
        let mut c = vec![F::zero(); n];
        for (&(a, b), v) in &self.terms {
            c[a + b] = c[a + b].clone() + v.clone();
        }
        Poly::new(c)
    }

    pub fn scale(&self, c: &F) -> Self {
        Self::from_terms(self.terms.iter().map(|(k, v)| (*k, v.clone() * c.clone())))
    }

    pub fn approx_eq(&self, other: &Self) -> bool {
        self.terms
            .keys()
            .chain(other.terms.keys())
            .all(|&(a, b)| self.coeff(a, b).approx_eq(&other.coeff(a, b)))
    }
}

fn pow<F: Field>(y: &F, e: usize) -> F {
    (0..e).fold(F::one(), |acc, _| acc * y.clone())
}

impl<F: Field> Add for &BiPoly<F> {
    type Output = BiPoly<F>;
    fn add(self, rhs: Self) -> BiPoly<F> {
        let mut out = self.clone();
        for (k, v) in &rhs.terms {
            out.add_term(*k, v.clone());
        }
        out
    }
}

impl<F: Field> Sub for &BiPoly<F> {
    type Output = BiPoly<F>;
    fn sub(self, rhs: Self) -> BiPoly<F> {
        let mut out = self.clone();
        for (k, v) in &rhs.terms {
            out.add_term(*k, -v.clone());
        }
        out
    }
}

impl<F: Field> Mul for &BiPoly<F> {
    type Output = BiPoly<F>;
    fn mul(self, rhs: Self) -> BiPoly<F> {
        let mut out = BiPoly::zero();
        for (&(a, b), u) in &self.terms {
            for (&(c, d), v) in &rhs.terms {
                out.add_term((a + c, b + d), u.clone() * v.clone());
            }
        }
        out
    }
}

impl<F: Field> Neg for BiPoly<F> {
    type Output = BiPoly<F>;
    fn neg(self) -> BiPoly<F> {
        BiPoly::from_terms(self.terms.into_iter().map(|(k, v)| (k, -v)))
    }
}

/// `(p(x) − p(y)) / (x − y)`, computed exactly: the coefficient of
/// `x^a y^b` is `p_{a+b+1}`.
pub fn divided_difference<F: Field>(p: &Poly<F>) -> BiPoly<F> {
    let mut terms = Vec::new();
    for (k, c) in p.coeffs().iter().enumerate().skip(1) {
        for a in 0..k {
            terms.push(((a, k - 1 - a), c.clone()));
        }
    }
    BiPoly::from_terms(terms)
}

/// Residue at `y = 0` after the caller's shift: the coefficient of `y^i`.
pub fn formal_residue<F: Field>(f: &BiPoly<F>, i: usize) -> Poly<F> {
    f.coeff_y(i)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::field::{frac, int, Rational};
    use proptest::prelude::*;

    type P = Poly<Rational>;

    #[test]
    fn divided_difference_examples() {
        assert_eq!(
            divided_difference(&P::from_i64(&[0, 0, 1])),
            BiPoly::from_terms([((1, 0), int(1)), ((0, 1), int(1))])
        );
        assert!(divided_difference(&P::from_i64(&[4])).is_zero());
        assert_eq!(
            divided_difference(&P::from_i64(&[0, 1, 0, 1])),
            BiPoly::from_terms([
                ((2, 0), int(1)),
                ((1, 1), int(1)),
                ((0, 2), int(1)),
                ((0, 0), int(1))
            ])
        );
    }

    #[test]
    fn residue_examples() {
        // (y² + y) / y = y + 1, coefficient of y⁰.
        let f = BiPoly::from_y(&P::from_i64(&[1, 1]));
        assert_eq!(formal_residue(&f, 0), P::one());
        // y · (D_0 + y D_1): coefficient of y¹ is D_0.
        let d0 = P::from_i64(&[3, 1]);
        let d1 = P::from_i64(&[0, 0, 7]);
        let dy = &BiPoly::from_x(&d0) + &(&BiPoly::from_x(&d1) * &BiPoly::from_y(&P::x()));
        let shifted = &BiPoly::from_y(&P::x()) * &dy;
        assert_eq!(formal_residue(&shifted, 1), d0);
        // (y² − 1)(D_0 + y D_1): coefficients −D_0, −D_1, D_0, D_1.
        let prod = &BiPoly::from_y(&P::from_i64(&[-1, 0, 1])) * &dy;
        assert_eq!(formal_residue(&prod, 0), -d0.clone());
        assert_eq!(formal_residue(&prod, 1), -d1.clone());
        assert_eq!(formal_residue(&prod, 2), d0);
        assert_eq!(formal_residue(&prod, 3), d1);
    }

    proptest! {
        #[test]
        fn divided_difference_identity(c in prop::collection::vec(-9i64..9, 0..8), x in -6i64..6, y in -6i64..6) {
            let p = P::from_i64(&c);
            let dd = divided_difference(&p);
            let lhs = (int(x) - int(y)) * dd.eval(&int(x), &int(y));
            prop_assert_eq!(lhs, p.eval(&int(x)) - p.eval(&int(y)));
            prop_assert_eq!(dd.diagonal(), p.derivative());
        }

        #[test]
        fn times_x_minus_y_is_difference(c in prop::collection::vec(-5i64..5, 0..7)) {
            let p = P::from_i64(&c);
            let x_minus_y = BiPoly::from_terms([((1, 0), int(1)), ((0, 1), frac(-1, 1))]);
            let lhs = &x_minus_y * &divided_difference(&p);
            prop_assert_eq!(lhs, &BiPoly::from_x(&p) - &BiPoly::from_y(&p));
        }
    }
}
