//! Sparse multivariate polynomials over the rationals in named coordinates.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use crate::algebra::field::{format_rational, int, Field, Rational};
use crate::error::{Error, Result};

/// Ordered coordinate names shared by a family of polynomials.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct VarTable(Arc<[String]>);

impl VarTable {
    pub fn new<S: Into<String>>(names: impl IntoIterator<Item = S>) -> Self {
        VarTable(names.into_iter().map(Into::into).collect())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn names(&self) -> &[String] {
        &self.0
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.0.iter().position(|n| n == name)
    }

    fn same(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0) || self.0 == other.0
    }
}

/// Sparse polynomial: exponent vector (one entry per table variable) to
/// nonzero coefficient.
#[derive(Clone, PartialEq, Debug)]
pub struct MPoly {
    vars: VarTable,
    terms: BTreeMap<Vec<u32>, Rational>,
}

impl MPoly {
    pub fn zero(vars: &VarTable) -> Self {
        MPoly { vars: vars.clone(), terms: BTreeMap::new() }
    }

    pub fn constant(vars: &VarTable, c: Rational) -> Self {
        let mut p = Self::zero(vars);
        p.add_term(vec![0; vars.len()], c);
        p
    }

    pub fn one(vars: &VarTable) -> Self {
        Self::constant(vars, int(1))
    }

    /// The coordinate function of variable `idx`.
    pub fn var(vars: &VarTable, idx: usize) -> Self {
        let mut e = vec![0; vars.len()];
        e[idx] = 1;
        let mut p = Self::zero(vars);
        p.add_term(e, int(1));
        p
    }

    pub fn vars(&self) -> &VarTable {
        &self.vars
    }

    fn add_term(&mut self, e: Vec<u32>, c: Rational) {
        let v = match self.terms.remove(&e) {
            Some(old) => old + c,
            None => c,
        };
        if !Field::is_zero(&v) {
            self.terms.insert(e, v);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<u32>, &Rational)> {
        self.terms.iter()
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(|e| e.iter().sum()).max()
    }

    pub fn scale(&self, c: &Rational) -> Self {
        let mut out = Self::zero(&self.vars);
        for (e, v) in &self.terms {
            out.add_term(e.clone(), v * c);
        }
        out
    }

    fn check(&self, other: &Self) -> Result<()> {
        if self.vars.same(&other.vars) {
            Ok(())
        } else {
            Err(Error::VariableTableMismatch)
        }
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        let mut out = self.clone();
        for (e, v) in &other.terms {
            out.add_term(e.clone(), v.clone());
        }
        Ok(out)
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self> {
        self.try_add(&-other.clone())
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        let mut out = Self::zero(&self.vars);
        for (a, u) in &self.terms {
            for (b, v) in &other.terms {
                let e = a.iter().zip(b).map(|(x, y)| x + y).collect();
                out.add_term(e, u * v);
            }
        }
        Ok(out)
    }

    pub fn partial_derivative(&self, idx: usize) -> Self {
        let mut out = Self::zero(&self.vars);
        for (e, v) in &self.terms {
            if e[idx] == 0 {
                continue;
            }
            let mut e2 = e.clone();
            e2[idx] -= 1;
            out.add_term(e2, v * int(e[idx] as i64));
        }
        out
    }

    /// Evaluates at a full numeric point (one value per variable).
    pub fn eval(&self, point: &[Rational]) -> Result<Rational> {
        if point.len() != self.vars.len() {
            return Err(Error::InvalidArgument(format!(
                "point has {} coordinates, table has {}",
                point.len(),
                self.vars.len()
            )));
        }
        Ok(self.terms.iter().fold(int(0), |acc, (e, v)| {
            let m = e.iter().zip(point).fold(v.clone(), |m, (&k, x)| {
                (0..k).fold(m, |m, _| m * x)
            });
            acc + m
        }))
    }

    /// Substitutes numeric values for some variables, keeping the table.
    pub fn substitute(&self, values: &BTreeMap<usize, Rational>) -> Self {
        let mut out = Self::zero(&self.vars);
        for (e, v) in &self.terms {
            let mut e2 = e.clone();
            let mut c = v.clone();
            for (&idx, x) in values {
                for _ in 0..e[idx] {
                    c *= x;
                }
                e2[idx] = 0;
            }
            out.add_term(e2, c);
        }
        out
    }

    /// Composition: variable `k` of `self` is replaced by `images[k]`, all of
    /// which live on the target table.
    pub fn compose(&self, target: &VarTable, images: &[MPoly]) -> Result<Self> {
        if images.len() != self.vars.len() {
            return Err(Error::VariableTableMismatch);
        }
        let mut out = Self::zero(target);
        for (e, v) in &self.terms {
            let mut m = Self::constant(target, v.clone());
            for (k, &p) in e.iter().enumerate() {
                for _ in 0..p {
                    m = m.try_mul(&images[k])?;
                }
            }
            out = out.try_add(&m)?;
        }
        Ok(out)
    }
}

impl Add for &MPoly {
    type Output = MPoly;
    /// Panics if the tables differ; use [`MPoly::try_add`] to handle that case.
    fn add(self, rhs: Self) -> MPoly {
        self.try_add(rhs).expect("MPoly variable tables differ")
    }
}

impl Sub for &MPoly {
    type Output = MPoly;
    fn sub(self, rhs: Self) -> MPoly {
        self.try_sub(rhs).expect("MPoly variable tables differ")
    }
}

impl Mul for &MPoly {
    type Output = MPoly;
    fn mul(self, rhs: Self) -> MPoly {
        self.try_mul(rhs).expect("MPoly variable tables differ")
    }
}

impl Neg for MPoly {
    type Output = MPoly;
    fn neg(self) -> MPoly {
        self.scale(&int(-1))
    }
}

impl fmt::Display for MPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut first = true;
        for (e, c) in self.terms.iter().rev() {
            if !first {
                f.write_str(" + ")?;
            }
            first = false;
            f.write_str(&format_rational(c))?;
            for (k, &p) in e.iter().enumerate() {
                match p {
                    0 => {}
                    1 => write!(f, "*{}", self.vars.0[k])?,
                    _ => write!(f, "*{}^{p}", self.vars.0[k])?,
                }
            }
        }
        Ok(())
    }
}
