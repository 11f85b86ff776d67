//! Points of the phase space `M_g`, the moment map, regularity, the
//! embeddings `μ_P`, and quadratic divisors of a spectral polynomial.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::algebra::field::{int, Field, Rational, C64};
use crate::algebra::poly::{squarefree_decomposition, Poly};
use crate::error::{Error, Result};
use crate::linalg::float_rank;
use crate::resultants::{chain_threshold, default_shifts, gcd_degree_multi, stacked_matrix};

type P = Poly<Rational>;

/// A point `(u, v, w)` of `M_g`: `u` monic of degree `g`, `deg v < g`, `w`
/// monic of degree `g + 1`. `g = 0` is allowed (`u = 1`, `v = 0`).
#[derive(Clone, PartialEq, Debug)]
pub struct MumfordMatrix<F> {
    g: usize,
    u: Poly<F>,
    v: Poly<F>,
    w: Poly<F>,
}

impl<F: Field> MumfordMatrix<F> {
    pub fn new(g: usize, u: Poly<F>, v: Poly<F>, w: Poly<F>) -> Result<Self> {
        if u.degree() != Some(g) || !u.is_monic() {
            return Err(Error::InvalidArgument(format!("u must be monic of degree {g}")));
        }
        if v.degree().is_some_and(|d| d + 1 > g) {
            return Err(Error::InvalidArgument(format!("v must have degree below {g}")));
        }
        if w.degree() != Some(g + 1) || !w.is_monic() {
            return Err(Error::InvalidArgument(format!("w must be monic of degree {}", g + 1)));
        }
        Ok(MumfordMatrix { g, u, v, w })
    }

    pub fn g(&self) -> usize {
        self.g
    }

    pub fn u(&self) -> &Poly<F> {
        &self.u
    }

    pub fn v(&self) -> &Poly<F> {
        &self.v
    }

    pub fn w(&self) -> &Poly<F> {
        &self.w
    }

    /// Number of free coefficients, `3g + 1`.
    pub fn dimension(g: usize) -> usize {
        3 * g + 1
    }

    /// Free coordinates in the order `u_0..u_{g−1}, v_0..v_{g−1}, w_0..w_g`.
    pub fn coordinates(&self) -> Vec<F> {
        let g = self.g;
        (0..g)
            .map(|k| self.u.coeff(k))
            .chain((0..g).map(|k| self.v.coeff(k)))
            .chain((0..=g).map(|k| self.w.coeff(k)))
            .collect()
    }

    pub fn from_coordinates(g: usize, z: &[F]) -> Result<Self> {
        if z.len() != Self::dimension(g) {
            return Err(Error::InvalidArgument(format!("expected {} coordinates, got {}", 3 * g + 1, z.len())));
        }
        let mut u = z[..g].to_vec();
        u.push(F::one());
        let v = z[g..2 * g].to_vec();
        let mut w = z[2 * g..].to_vec();
        w.push(F::one());
        Self::new(g, Poly::new(u), Poly::new(v), Poly::new(w))
    }

    /// `h = v² + u·w`.
    pub fn moment_map(&self) -> Poly<F> {
        &(&self.v * &self.v) + &(&self.u * &self.w)
    }

    /// `A(y)` as `(u(y), v(y), w(y))`.
    pub fn eval(&self, y: &F) -> [F; 3] {
        [self.u.eval(y), self.v.eval(y), self.w.eval(y)]
    }

    /// `μ_P(A) = P·A`, a point of `M_{g + deg P}`.
    pub fn mu(&self, p: &Poly<F>) -> Result<Self> {
        if !p.is_monic() {
            return Err(Error::NotMonic("μ_P needs a monic P"));
        }
        let n = p.degree().unwrap();
        Self::new(self.g + n, p * &self.u, p * &self.v, p * &self.w)
    }
}

impl MumfordMatrix<Rational> {
    pub fn from_i64(g: usize, u: &[i64], v: &[i64], w: &[i64]) -> Result<Self> {
        Self::new(g, P::from_i64(u), P::from_i64(v), P::from_i64(w))
    }

    pub fn to_float(&self) -> MumfordMatrix<C64> {
        MumfordMatrix { g: self.g, u: self.u.to_field(), v: self.v.to_field(), w: self.w.to_field() }
    }
}

impl fmt::Display for MumfordMatrix<Rational> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {}, {})", self.u, self.v, self.w)
    }
}

pub fn moment_map<F: Field>(a: &MumfordMatrix<F>) -> Poly<F> {
    a.moment_map()
}

/// Whether `a` lies on the fiber over `h`: exact equality, or coefficientwise
/// `|a−b| ≤ eps·max(1, |a|, |b|)` on the float backend.
pub fn fiber_contains<F: Field>(h: &Poly<F>, a: &MumfordMatrix<F>, eps: f64) -> Result<bool> {
    if h.degree() != Some(2 * a.g + 1) {
        return Err(Error::GenusMismatch { expected: a.g, got: h.degree().map_or(0, |d| d / 2) });
    }
    let m = a.moment_map();
    if F::EXACT {
        return Ok(m == *h);
    }
    Ok((0..=2 * a.g + 1).all(|k| {
        let (x, y) = (m.coeff(k), h.coeff(k));
        (x.clone() - y.clone()).magnitude() <= eps * 1f64.max(x.magnitude()).max(y.magnitude())
    }))
}

/// `(ρ(A), gcd(u, v, w))`. The degree is computed three ways (Euclid, the
/// kernel of the stacked multiplication matrix, the resultant chain) and any
/// disagreement is an error.
pub fn rho_of_matrix(a: &MumfordMatrix<Rational>) -> Result<(usize, P)> {
    let polys = [a.u.clone(), a.v.clone(), a.w.clone()];
    let gcd = a.u.gcd(&a.v)?.gcd(&a.w)?;
    let euclid = gcd.degree().unwrap();
    let kernel = gcd_degree_multi(&polys, None)?;
    let chain = chain_threshold(&a.u, &a.v, &a.w)?;
    if euclid != kernel || euclid != chain {
        return Err(Error::Inconsistent(format!(
            "gcd degree disagreement: euclid {euclid}, kernel {kernel}, chain {chain}"
        )));
    }
    Ok((euclid, gcd))
}

/// `ρ(A)` on the float backend, as the numerical nullity of the stacked
/// multiplication matrix of `(u, v, w)`.
pub fn rho_float(a: &MumfordMatrix<C64>, eps: f64) -> Result<usize> {
    let polys = [a.u.clone(), a.v.clone(), a.w.clone()];
    let m = stacked_matrix(&polys, &default_shifts(&polys))?;
    Ok(m.cols() - float_rank(&m, eps))
}

/// `A = P·A'` with `P = gcd(u, v, w)` and `A'` regular.
pub fn regular_part(a: &MumfordMatrix<Rational>) -> Result<(P, MumfordMatrix<Rational>)> {
    let (rho, p) = rho_of_matrix(a)?;
    let ap = MumfordMatrix::new(a.g - rho, a.u.exact_div(&p)?, a.v.exact_div(&p)?, a.w.exact_div(&p)?)?;
    Ok((p, ap))
}

pub fn mu_p<F: Field>(p: &Poly<F>, a: &MumfordMatrix<F>) -> Result<MumfordMatrix<F>> {
    a.mu(p)
}

/// A monic spectral polynomial of odd degree `2g + 1`, optionally with its
/// factorization into monic irreducibles.
#[derive(Clone, PartialEq, Debug)]
pub struct SpectralPoly {
    h: P,
    factors: Option<Vec<(P, usize)>>,
}

impl SpectralPoly {
    pub fn new(h: P) -> Result<Self> {
        if !h.is_monic() || h.degree().unwrap().is_multiple_of(2) {
            return Err(Error::InvalidArgument("h must be monic of odd degree".into()));
        }
        Ok(SpectralPoly { h, factors: None })
    }

    /// Attaches a factorization, checked to reconstruct `h`.
    pub fn with_factors(h: P, factors: Vec<(P, usize)>) -> Result<Self> {
        let mut s = Self::new(h)?;
        let mut prod = P::one();
        for (f, m) in &factors {
            if !f.is_monic() || f.degree() == Some(0) || *m == 0 {
                return Err(Error::InvalidArgument("factors must be monic, nonconstant, multiplicity >= 1".into()));
            }
            if f.gcd(&f.derivative())?.degree() != Some(0) {
                return Err(Error::InvalidArgument(format!("factor {f} is not squarefree")));
            }
            prod = &prod * &f.pow(*m);
        }
        for (k, (f, _)) in factors.iter().enumerate() {
            if factors[..k].iter().any(|(e, _)| e.gcd(f).map_or(true, |d| d.degree() != Some(0))) {
                return Err(Error::InvalidArgument("factors must be pairwise coprime".into()));
            }
        }
        if prod != s.h {
            return Err(Error::InvalidArgument("factorization does not reconstruct h".into()));
        }
        s.factors = Some(factors);
        Ok(s)
    }

    /// Factors `h` with [`auto_factor`].
    pub fn factored(h: P) -> Result<Self> {
        let f = auto_factor(&h)?;
        Self::with_factors(h, f)
    }

    pub fn from_i64(c: &[i64]) -> Result<Self> {
        Self::factored(P::from_i64(c))
    }

    pub fn h(&self) -> &P {
        &self.h
    }

    pub fn g(&self) -> usize {
        self.h.degree().unwrap() / 2
    }

    pub fn factors(&self) -> Option<&[(P, usize)]> {
        self.factors.as_deref()
    }

    fn require_factors(&self) -> Result<&[(P, usize)]> {
        self.factors().ok_or_else(|| Error::MissingFactorization(self.h.to_string()))
    }

    /// `h / Q²`, keeping the factorization in step.
    pub fn divide_square(&self, q: &P) -> Result<Self> {
        let h = self.h.exact_div(&(q * q))?;
        match &self.factors {
            None => Self::new(h),
            Some(fs) => {
                let mut rest = Vec::new();
                for (f, m) in fs {
                    let mut e = 0;
                    let mut r = q.clone();
                    while let Ok(next) = r.exact_div(f) {
                        r = next;
                        e += 1;
                    }
                    if m > &(2 * e) {
                        rest.push((f.clone(), m - 2 * e));
                    }
                }
                Self::with_factors(h, rest)
            }
        }
    }
}

/// Factorization for polynomials whose irreducible factors are linear over
/// the rationals, plus at most one rational-root-free block per
/// multiplicity, which is kept whole.
pub fn auto_factor(h: &P) -> Result<Vec<(P, usize)>> {
    let mut out = Vec::new();
    for (block, m) in squarefree_decomposition(h)? {
        let mut rest = block;
        for r in rational_roots(&rest)? {
            let lin = P::new(vec![-r, int(1)]);
            rest = rest.exact_div(&lin)?;
            out.push((lin, m));
        }
        if rest.degree().is_some_and(|d| d > 0) {
            out.push((rest.monic()?, m));
        }
    }
    out.sort_by(|a, b| (a.0.degree(), a.0.coeffs()).partial_cmp(&(b.0.degree(), b.0.coeffs())).unwrap());
    Ok(out)
}

const ROOT_SEARCH_LIMIT: u64 = 1_000_000_000_000;

/// Rational roots of a squarefree polynomial, by the rational root theorem.
fn rational_roots(p: &P) -> Result<Vec<Rational>> {
    let Some(n) = p.degree() else { return Ok(Vec::new()) };
    let lcm = p.coeffs().iter().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
    let ints: Vec<BigInt> = p.coeffs().iter().map(|c| (c * Rational::from(lcm.clone())).to_integer()).collect();
    let mut roots = Vec::new();
    let low = ints.iter().position(|c| !c.is_zero()).unwrap();
    if low > 0 {
        roots.push(int(0));
    }
    if n == low {
        return Ok(roots);
    }
    let (a0, an) = (ints[low].abs(), ints[n].abs());
    let (ps, qs) = (divisors(&a0)?, divisors(&an)?);
    for pn in &ps {
        for qd in &qs {
            if !pn.gcd(qd).is_one() {
                continue;
            }
            for sign in [1, -1] {
                let r = Rational::new(BigInt::from(sign) * pn, qd.clone());
                if Field::is_zero(&p.eval(&r)) {
                    roots.push(r);
                }
            }
        }
    }
    roots.sort();
    Ok(roots)
}

fn divisors(n: &BigInt) -> Result<Vec<BigInt>> {
    let m: u64 = n
        .try_into()
        .ok()
        .filter(|&m| m <= ROOT_SEARCH_LIMIT)
        .ok_or_else(|| Error::MissingFactorization(format!("coefficient {n} too large to factor automatically")))?;
    let mut out = Vec::new();
    let mut d = 1u64;
    while d * d <= m {
        if m.is_multiple_of(d) {
            out.push(BigInt::from(d));
            if d * d != m {
                out.push(BigInt::from(m / d));
            }
        }
        d += 1;
    }
    Ok(out)
}

/// The quadratic divisors `Q` (monic, `Q² | h`) ordered by divisibility.
#[derive(Clone, PartialEq, Debug)]
pub struct DivisorLattice {
    /// Each divisor with its exponent vector against the factor list.
    pub divisors: Vec<(P, Vec<usize>)>,
    /// Covering relations `(a, b)` with `divisors[b] = divisors[a]·f`.
    pub edges: Vec<(usize, usize)>,
    pub rho_h: usize,
}

impl DivisorLattice {
    pub fn polys(&self) -> impl Iterator<Item = &P> {
        self.divisors.iter().map(|d| &d.0)
    }

    pub fn of_degree(&self, i: usize) -> Vec<&P> {
        self.polys().filter(|q| q.degree() == Some(i)).collect()
    }

    pub fn maximal(&self) -> &P {
        self.polys().find(|q| q.degree() == Some(self.rho_h)).unwrap()
    }

    pub fn contains(&self, q: &P) -> bool {
        self.polys().any(|d| d == q)
    }
}

pub fn quadratic_divisors(h: &SpectralPoly) -> Result<DivisorLattice> {
    let factors = h.require_factors()?;
    let caps: Vec<usize> = factors.iter().map(|(_, m)| m / 2).collect();
    let mut exps = vec![Vec::new()];
    for &c in &caps {
        exps = exps.into_iter().flat_map(|e: Vec<usize>| (0..=c).map(move |k| [e.clone(), vec![k]].concat())).collect();
    }
    exps.sort_by_key(|e| {
        let d: usize = e.iter().zip(factors).map(|(k, (f, _))| k * f.degree().unwrap()).sum();
        (d, std::cmp::Reverse(e.clone()))
    });
    let divisors: Vec<(P, Vec<usize>)> = exps
        .into_iter()
        .map(|e| {
            let q = e.iter().zip(factors).fold(P::one(), |acc, (&k, (f, _))| &acc * &f.pow(k));
            (q, e)
        })
        .collect();
    let mut edges = Vec::new();
    for (a, (_, ea)) in divisors.iter().enumerate() {
        for (b, (_, eb)) in divisors.iter().enumerate() {
            let diff: Vec<isize> = ea.iter().zip(eb).map(|(&x, &y)| y as isize - x as isize).collect();
            if diff.iter().all(|&d| d >= 0) && diff.iter().sum::<isize>() == 1 {
                edges.push((a, b));
            }
        }
    }
    let rho_h = caps.iter().zip(factors).map(|(c, (f, _))| c * f.degree().unwrap()).sum();
    Ok(DivisorLattice { divisors, edges, rho_h })
}
