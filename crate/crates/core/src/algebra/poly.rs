//! Dense univariate polynomials over a [`Field`].

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use crate::algebra::field::{format_rational, Field, Rational};
use crate::error::{Error, Result};

/// Dense polynomial, coefficients in ascending degree, trailing zeros stripped.
/// The zero polynomial has an empty coefficient list and no degree.
#[derive(Clone, PartialEq, Debug)]
pub struct Poly<F> {
    coeffs: Vec<F>,
}

impl<F: Field> Poly<F> {
    pub fn new(mut coeffs: Vec<F>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    pub fn from_i64(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| F::from_i64(c)).collect())
    }

    pub fn zero() -> Self {
        Poly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(F::one())
    }

    pub fn constant(c: F) -> Self {
        Self::new(vec![c])
    }

    /// `x`
    pub fn x() -> Self {
        Self::monomial(F::one(), 1)
    }

    pub fn monomial(c: F, k: usize) -> Self {
        let mut coeffs = vec![F::zero(); k + 1];
        coeffs[k] = c;
        Self::new(coeffs)
    }

    /// `Π (x − r)` over the given roots.
    pub fn from_roots(roots: &[F]) -> Self {
        roots.iter().fold(Self::one(), |acc, r| {
            acc * Self::new(vec![-r.clone(), F::one()])
        })
    }

    pub fn coeffs(&self) -> &[F] {
        &self.coeffs
    }

    /// Coefficient of `x^k`, zero beyond the degree.
    pub fn coeff(&self, k: usize) -> F {
        self.coeffs.get(k).cloned().unwrap_or_else(F::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<&F> {
        self.coeffs.last()
    }

    pub fn is_monic(&self) -> bool {
        self.leading().is_some_and(|c| c.is_one())
    }

    /// Monic associate. Errors on the zero polynomial.
    pub fn monic(&self) -> Result<Self> {
        let lc = self.leading().ok_or(Error::DivisionByZero)?;
        let inv = lc.inv().ok_or(Error::DivisionByZero)?;
        let mut p = self.scale(&inv);
        if let Some(last) = p.coeffs.last_mut() {
            *last = F::one();
        }
        Ok(p)
    }

    pub fn scale(&self, c: &F) -> Self {
        Self::new(self.coeffs.iter().map(|a| a.clone() * c.clone()).collect())
    }

    /// Multiplication by `x^k`.
    pub fn shift(&self, k: usize) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let mut coeffs = vec![F::zero(); k];
        coeffs.extend(self.coeffs.iter().cloned());
        Poly { coeffs }
    }

    pub fn eval(&self, x: &F) -> F {
        self.coeffs
            .iter()
            .rev()
            .fold(F::zero(), |acc, c| acc * x.clone() + c.clone())
    }

    pub fn derivative(&self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, c)| c.clone() * F::from_i64(k as i64))
                .collect(),
        )
    }

    pub fn pow(&self, e: usize) -> Self {
        (0..e).fold(Self::one(), |acc, _| acc * self.clone())
    }

    /// Polynomial part of `p(x) / x^j`, i.e. `Σ_{k≥j} p_k x^{k−j}`.
    pub fn truncate_div(&self, j: usize) -> Self {
        Self::new(self.coeffs.iter().skip(j).cloned().collect())
    }

    /// `p mod x^j`, the part dropped by [`Poly::truncate_div`].
    pub fn low_part(&self, j: usize) -> Self {
        Self::new(self.coeffs.iter().take(j).cloned().collect())
    }

    /// Euclidean division: `self = q·d + r` with `deg r < deg d`.
    pub fn div_rem(&self, d: &Self) -> Result<(Self, Self)> {
        let dd = d.degree().ok_or(Error::DivisionByZero)?;
        let inv = d.leading().and_then(|c| c.inv()).ok_or(Error::DivisionByZero)?;
        let mut rem = self.coeffs.clone();
        let Some(n) = self.degree() else {
            return Ok((Self::zero(), Self::zero()));
        };
        if n < dd {
            return Ok((Self::zero(), self.clone()));
        }
        let mut quot = vec![F::zero(); n - dd + 1];
        for k in (0..=n - dd).rev() {
            let c = rem[k + dd].clone() * inv.clone();
            if c.is_zero() {
                continue;
            }
            for (i, di) in d.coeffs.iter().enumerate() {
                rem[k + i] = rem[k + i].clone() - c.clone() * di.clone();
            }
            quot[k] = c;
        }
        rem.truncate(dd);
        Ok((Self::new(quot), Self::new(rem)))
    }

    /// Exact quotient; errors if the division leaves a remainder.
    pub fn exact_div(&self, d: &Self) -> Result<Self> {
        let (q, r) = self.div_rem(d)?;
        if !r.is_zero() {
            return Err(Error::Inconsistent("non-exact polynomial division".into()));
        }
        Ok(q)
    }

    pub fn divides(&self, other: &Self) -> Result<bool> {
        Ok(other.div_rem(self)?.1.is_zero())
    }

    /// Monic gcd by Euclid's algorithm. Exact backend only.
    ///
    /// `gcd(0, 0) = 0`; otherwise the result is monic.
    pub fn gcd(&self, other: &Self) -> Result<Self> {
        if !F::EXACT {
            return Err(Error::ExactOnly("polynomial gcd"));
        }
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let r = a.div_rem(&b)?.1;
            a = b;
            b = r;
        }
        if a.is_zero() {
            Ok(a)
        } else {
            a.monic()
        }
    }

    /// Coefficientwise comparison under the backend's tolerance rule.
    pub fn approx_eq(&self, other: &Self) -> bool {
        let n = self.coeffs.len().max(other.coeffs.len());
        (0..n).all(|k| self.coeff(k).approx_eq(&other.coeff(k)))
    }

    pub fn map<G: Field>(&self, f: impl Fn(&F) -> G) -> Poly<G> {
        Poly::new(self.coeffs.iter().map(f).collect())
    }
}

impl Poly<Rational> {
    pub fn to_field<G: Field>(&self) -> Poly<G> {
        self.map(G::from_rational)
    }
}

impl<F: Field> Add for Poly<F> {
    type Output = Poly<F>;
    fn add(self, rhs: Self) -> Self {
        &self + &rhs
    }
}

impl<F: Field> Add for &Poly<F> {
    type Output = Poly<F>;
    fn add(self, rhs: Self) -> Poly<F> {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        Poly::new((0..n).map(|k| self.coeff(k) + rhs.coeff(k)).collect())
    }
}

impl<F: Field> Sub for Poly<F> {
    type Output = Poly<F>;
    fn sub(self, rhs: Self) -> Self {
        &self - &rhs
    }
}

impl<F: Field> Sub for &Poly<F> {
    type Output = Poly<F>;
    fn sub(self, rhs: Self) -> Poly<F> {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        Poly::new((0..n).map(|k| self.coeff(k) - rhs.coeff(k)).collect())
    }
}

impl<F: Field> Mul for Poly<F> {
    type Output = Poly<F>;
    fn mul(self, rhs: Self) -> Self {
        &self * &rhs
    }
}

impl<F: Field> Mul for &Poly<F> {
    type Output = Poly<F>;
    fn mul(self, rhs: Self) -> Poly<F> {
        if self.is_zero() || rhs.is_zero() {
            return Poly::zero();
        }
        let mut out = vec![F::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] = out[i + j].clone() + a.clone() * b.clone();
            }
        }
        Poly::new(out)
    }
}

impl<F: Field> Neg for Poly<F> {
    type Output = Poly<F>;
    fn neg(self) -> Self {
        Poly::new(self.coeffs.into_iter().map(|c| -c).collect())
    }
}

impl fmt::Display for Poly<Rational> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if num_traits::Zero::is_zero(c) {
                continue;
            }
            if !first {
                f.write_str(" + ")?;
            }
            first = false;
            let c = format_rational(c);
            match k {
                0 => write!(f, "{c}")?,
                1 => write!(f, "({c})x")?,
                _ => write!(f, "({c})x^{k}")?,
            }
        }
        Ok(())
    }
}

/// Lagrange interpolation through `(a_j, b_j)` pairs with distinct nodes.
pub fn lagrange_interpolate<F: Field>(points: &[(F, F)]) -> Result<Poly<F>> {
    for (i, (a, _)) in points.iter().enumerate() {
        if points[..i].iter().any(|(b, _)| (a.clone() - b.clone()).is_zero()) {
            return Err(Error::DuplicateNode);
        }
    }
    let mut out = Poly::zero();
    for (j, (aj, bj)) in points.iter().enumerate() {
        let mut basis = Poly::one();
        let mut denom = F::one();
        for (k, (ak, _)) in points.iter().enumerate() {
            if k == j {
                continue;
            }
            basis = basis * Poly::new(vec![-ak.clone(), F::one()]);
            denom = denom * (aj.clone() - ak.clone());
        }
        let c = bj.div(&denom).ok_or(Error::DuplicateNode)?;
        out = out + basis.scale(&c);
    }
    Ok(out)
}

/// Squarefree decomposition (Yun): `p = lc · Π f_k^{m_k}` with monic,
/// squarefree, pairwise coprime factors listed by increasing multiplicity.
pub fn squarefree_decomposition<F: Field>(p: &Poly<F>) -> Result<Vec<(Poly<F>, usize)>> {
    if !F::EXACT {
        return Err(Error::ExactOnly("squarefree decomposition"));
    }
    if p.is_zero() {
        return Err(Error::InvalidArgument("squarefree decomposition of 0".into()));
    }
    let p = p.monic()?;
    let mut out = Vec::new();
    if p.degree() == Some(0) {
        return Ok(out);
    }
    let dp = p.derivative();
    let a0 = p.gcd(&dp)?;
    let mut b = p.exact_div(&a0)?;
    let mut c = dp.exact_div(&a0)?;
    let mut d = &c - &b.derivative();
    let mut k = 1;
    loop {
        let a = b.gcd(&d)?;
        if a.degree() != Some(0) {
            out.push((a.clone(), k));
        }
        b = b.exact_div(&a)?;
        if b.degree() == Some(0) {
            break;
        }
        c = d.exact_div(&a)?;
        d = &c - &b.derivative();
        k += 1;
    }
    Ok(out)
}
