//! Multiplication matrices, Sylvester matrices, subresultants, and gcd
//! degrees read off as kernel dimensions.
//!
//! `M_{R,l}` has rows `x^j·R` for `j = 0..l−1`, so for `P` monic of degree
//! `n` and `Q` of formal degree `m` the stack `(M_{P,m}; M_{Q,n})` is square
//! of size `n + m` and its kernel dimension is `deg gcd(P, Q)`.

use serde::Serialize;

use crate::algebra::field::{Field, Rational};
use crate::algebra::poly::Poly;
use crate::error::{Error, Result};
use crate::linalg::{determinant, kernel_dim, Matrix};

type P = Poly<Rational>;

/// `M_{R,l}`: `l` rows, `deg R + l` columns, row `j` the coefficients of
/// `x^j R`.
pub fn build_mult_matrix<F: Field>(r: &Poly<F>, l: usize) -> Result<Matrix<F>> {
    let width = r.degree().ok_or(Error::InvalidArgument("zero polynomial".into()))? + l;
    mult_matrix_with_width(r, l, width)
}

/// `M_{R,l}` right-padded with zero columns to `width`.
pub fn mult_matrix_with_width<F: Field>(r: &Poly<F>, l: usize, width: usize) -> Result<Matrix<F>> {
    if l == 0 {
        return Err(Error::InvalidArgument("multiplication matrix needs l >= 1".into()));
    }
    let need = r.degree().map_or(0, |d| d + l);
    if width < need {
        return Err(Error::InvalidArgument(format!("width {width} below {need}")));
    }
    let rows = (0..l)
        .map(|j| (0..width).map(|k| if k >= j { r.coeff(k - j) } else { F::zero() }).collect())
        .collect();
    Matrix::from_rows(width, rows)
}

/// `S(P,Q)^t = (M_{P,m}; M_{Q,n})` for `P` monic of degree `n` and
/// `deg Q ≤ m`.
pub fn sylvester<F: Field>(p: &Poly<F>, q: &Poly<F>, m: usize) -> Result<Matrix<F>> {
    if !p.is_monic() {
        return Err(Error::NotMonic("first Sylvester argument"));
    }
    let n = p.degree().unwrap_or(0);
    if m < q.degree().unwrap_or(0) || m == 0 {
        return Err(Error::InvalidArgument(format!("formal degree {m} too small")));
    }
    let top = mult_matrix_with_width(p, m, n + m)?;
    if n == 0 {
        return Ok(top);
    }
    let bottom = mult_matrix_with_width(q, n, n + m)?;
    Ok(Matrix::vstack_padded(&[top, bottom]))
}

/// `deg gcd(P, Q)` as the kernel dimension of the Sylvester matrix.
/// `Q = 0` yields `deg P`.
pub fn gcd_degree_pair(p: &P, q: &P) -> Result<usize> {
    let n = p.degree().ok_or(Error::NotMonic("zero polynomial"))?;
    if q.is_zero() {
        if !p.is_monic() {
            return Err(Error::NotMonic("first gcd argument"));
        }
        return Ok(n);
    }
    let m = q.degree().unwrap().max(1);
    Ok(kernel_dim(&sylvester(p, q, m)?))
}

/// Shifts `m_2..m_k` used when none are supplied: `m_i = max(deg P_1, 1)`,
/// which reproduces the Sylvester matrix for two polynomials.
pub fn default_shifts<F: Field>(polys: &[Poly<F>]) -> Vec<usize> {
    let n1 = polys.first().and_then(|p| p.degree()).unwrap_or(0);
    polys.iter().skip(1).map(|_| n1.max(1)).collect()
}

/// The stacked matrix `(M_{P_1,m_1}; …; M_{P_k,m_k})`, every block
/// right-padded to the common width `m = max(n_1+1, n_i+m_i)`, with
/// `m_1 = m − n_1`. `shifts` holds `m_2..m_k`.
pub fn stacked_matrix<F: Field>(polys: &[Poly<F>], shifts: &[usize]) -> Result<Matrix<F>> {
    let first = polys.first().ok_or(Error::InvalidArgument("empty polynomial list".into()))?;
    if !first.is_monic() {
        return Err(Error::NotMonic("first polynomial of the stack"));
    }
    if shifts.len() + 1 != polys.len() {
        return Err(Error::InvalidArgument("need one shift per polynomial after the first".into()));
    }
    if shifts.contains(&0) {
        return Err(Error::InvalidArgument("shifts must be >= 1".into()));
    }
    let n1 = first.degree().unwrap();
    let width = polys[1..]
        .iter()
        .zip(shifts)
        .map(|(p, &s)| p.degree().unwrap_or(0) + s)
        .fold(n1 + 1, usize::max);
    let mut blocks = vec![mult_matrix_with_width(first, width - n1, width)?];
    for (p, &s) in polys[1..].iter().zip(shifts) {
        blocks.push(mult_matrix_with_width(p, s, width)?);
    }
    Ok(Matrix::vstack_padded(&blocks))
}

/// `deg gcd(P_1, …, P_k)` as the kernel dimension of the stacked matrix.
///
/// With `shifts = None` the defaults of [`default_shifts`] are used, for
/// which the equality with the gcd degree always holds. Explicit shifts are
/// honoured as given; the equality then needs every shift to be at least
/// `deg P_1`.
pub fn gcd_degree_multi(polys: &[P], shifts: Option<&[usize]>) -> Result<usize> {
    let defaults;
    let shifts = match shifts {
        Some(s) => s,
        None => {
            defaults = default_shifts(polys);
            &defaults
        }
    };
    let m = stacked_matrix(polys, shifts)?;
    Ok(kernel_dim(&m))
}

/// The `j`-th subresultant of `(P, Q)`, via the determinant polynomial of
/// the Sylvester submatrix. For `j` at the smaller degree it is that
/// polynomial itself; `R_k(P, 0) = 0` for `k < deg P` and `R_{deg P}(P,0) = P`.
pub fn subresultant(p: &P, q: &P, j: usize) -> Result<P> {
    let dp = p.degree().ok_or(Error::InvalidArgument("zero polynomial".into()))?;
    let Some(dq) = q.degree() else {
        return Ok(if j == dp { p.clone() } else { P::zero() });
    };
    let (a, b, da, db) = if dp >= dq { (p, q, dp, dq) } else { (q, p, dq, dp) };
    if j > db {
        return Err(Error::InvalidArgument(format!("subresultant index {j} above {db}")));
    }
    if j == db {
        return Ok(b.clone());
    }
    // Rows x^{db−1−j}·A … A, x^{da−1−j}·B … B; degree < da + db − j.
    let mut rows: Vec<P> = (0..db - j).rev().map(|k| a.shift(k)).collect();
    rows.extend((0..da - j).rev().map(|k| b.shift(k)));
    let k = rows.len();
    let l = da + db - j;
    // Columns by descending power; the first k−1 are fixed.
    let fixed: Vec<usize> = (0..k - 1).map(|c| l - 1 - c).collect();
    let mut coeffs = Vec::with_capacity(l - k + 1);
    for power in 0..=l - k {
        let mut cols = fixed.clone();
        cols.push(power);
        let entries = rows.iter().flat_map(|r| cols.iter().map(|&c| r.coeff(c))).collect();
        coeffs.push(determinant(&Matrix::from_entries(k, k, entries)?)?);
    }
    Ok(P::new(coeffs))
}

pub fn resultant(p: &P, q: &P) -> Result<Rational> {
    Ok(subresultant(p, q, 0)?.coeff(0))
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SubresultantReport {
    /// `(j, R_j)` for `j = 0..=first_nonzero`.
    #[serde(skip)]
    pub sequence: Vec<(usize, P)>,
    pub first_nonzero: usize,
    #[serde(skip)]
    pub gcd_candidate: P,
}

/// Subresultants from `R_0` up to the first nonzero one, whose monic
/// normalization is the gcd.
pub fn subresultant_sequence(p: &P, q: &P) -> Result<SubresultantReport> {
    if !p.is_monic() {
        return Err(Error::NotMonic("first subresultant argument"));
    }
    if q.is_zero() {
        return Err(Error::InvalidArgument("second subresultant argument is zero".into()));
    }
    let top = p.degree().unwrap().min(q.degree().unwrap());
    let mut sequence = Vec::new();
    for j in 0..=top {
        let r = subresultant(p, q, j)?;
        let nonzero = !r.is_zero();
        sequence.push((j, r));
        if nonzero {
            let gcd_candidate = sequence[j].1.monic()?;
            return Ok(SubresultantReport { sequence, first_nonzero: j, gcd_candidate });
        }
    }
    Err(Error::Inconsistent("no nonzero subresultant".into()))
}

fn vanish_below(p: &P, q: &P, i: usize) -> Result<bool> {
    let top = match q.degree() {
        Some(dq) => p.degree().unwrap().min(dq),
        None => p.degree().unwrap(),
    };
    for k in 0..i {
        if k > top || !subresultant(p, q, k)?.is_zero() {
            return Ok(false);
        }
    }
    Ok(true)
}

/// The closed conditions cutting out `deg gcd(u, v, w) ≥ i`:
/// `R_0(u,v) = … = R_{i−1}(u,v) = 0`, then with `j` the first nonzero index
/// of that chain, `R_0(w, R_j(u,v)) = … = R_{i−1}(w, R_j(u,v)) = 0`.
pub fn resultant_chain_conditions(u: &P, v: &P, w: &P, i: usize) -> Result<bool> {
    if !u.is_monic() || !w.is_monic() {
        return Err(Error::NotMonic("u and w must be monic"));
    }
    if i == 0 {
        return Ok(true);
    }
    if !vanish_below(u, v, i)? {
        return Ok(false);
    }
    let g = if v.is_zero() { u.clone() } else { subresultant_sequence(u, v)?.sequence.pop().unwrap().1 };
    vanish_below(w, &g, i)
}

/// Largest `i` for which [`resultant_chain_conditions`] holds.
pub fn chain_threshold(u: &P, v: &P, w: &P) -> Result<usize> {
    let mut i = 0;
    while i < u.degree().unwrap_or(0) + 1 && resultant_chain_conditions(u, v, w, i + 1)? {
        i += 1;
    }
    Ok(i)
}

/// Euclid's gcd folded over a list (the oracle path).
pub fn euclid_gcd_all(polys: &[P]) -> Result<P> {
    polys.iter().try_fold(P::zero(), |acc, p| acc.gcd(p))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::field::{int, Field};

    fn p(c: &[i64]) -> P {
        P::from_i64(c)
    }

    fn m(rows: &[&[i64]]) -> Matrix<Rational> {
        Matrix::from_rows(rows[0].len(), rows.iter().map(|r| r.iter().map(|&x| int(x)).collect()).collect())
            .unwrap()
    }

    #[test]
    fn mult_matrix_examples() {
        assert_eq!(build_mult_matrix(&p(&[1, 0, 1]), 2).unwrap(), m(&[&[1, 0, 1, 0], &[0, 1, 0, 1]]));
        assert_eq!(build_mult_matrix(&p(&[-1, 1]), 2).unwrap(), m(&[&[-1, 1, 0], &[0, -1, 1]]));
        assert!(build_mult_matrix(&p(&[1, 1]), 0).is_err());
        // Columns n..n+l of M_{P,l} for monic P form a unit triangular block.
        let pm = p(&[3, -2, 5, 1]);
        let mm = build_mult_matrix(&pm, 3).unwrap();
        for r in 0..3 {
            for c in 0..3 {
                let e = mm.get(r, 3 + c).clone();
                match (r, c) {
                    _ if r == c => assert_eq!(e, int(1)),
                    _ if r < c => assert_eq!(e, int(0)),
                    _ => {}
                }
            }
        }
    }

    #[test]
    fn sylvester_examples() {
        let s = sylvester(&p(&[-1, 0, 1]), &p(&[-1, 1]), 1).unwrap();
        assert_eq!(s, m(&[&[-1, 0, 1], &[-1, 1, 0], &[0, -1, 1]]));
        assert_eq!(determinant(&s).unwrap(), int(0));
        let s = sylvester(&p(&[0, 1]), &p(&[1]), 1).unwrap();
        assert_eq!(s, m(&[&[0, 1], &[1, 0]]));
        assert_eq!(determinant(&s).unwrap(), int(-1));
        assert!(matches!(sylvester(&p(&[0, 2]), &p(&[1]), 1), Err(Error::NotMonic(_))));
    }

    #[test]
    fn gcd_degree_examples() {
        assert_eq!(gcd_degree_pair(&p(&[-1, 0, 1]), &p(&[-1, 1])).unwrap(), 1);
        assert_eq!(gcd_degree_pair(&p(&[3, 2, 1]), &p(&[1])).unwrap(), 0);
        let a = p(&[-2, 1]).pow(3);
        let b = &p(&[-2, 1]).pow(2) * &p(&[1, 1]);
        assert_eq!(gcd_degree_pair(&a, &b).unwrap(), 2);
        assert_eq!(gcd_degree_pair(&a, &P::zero()).unwrap(), 3);
    }

    #[test]
    fn multi_gcd_examples() {
        let (x, xm1) = (p(&[0, 1]), p(&[-1, 1]));
        assert_eq!(gcd_degree_multi(&[x.pow(2), x.clone(), x.pow(3)], None).unwrap(), 1);
        let polys = [&x.pow(3) * &xm1.pow(2), &x * &xm1, &x.pow(2) * &xm1.pow(2)];
        assert_eq!(gcd_degree_multi(&polys, None).unwrap(), 2);
        assert!(gcd_degree_multi(&[], None).is_err());
        assert!(matches!(gcd_degree_multi(&[p(&[1, 2]), x], None), Err(Error::NotMonic(_))));
        // The two-polynomial stack is the Sylvester matrix.
        let (a, b) = (p(&[1, 2, 0, 1]), p(&[3, 0, 1]));
        assert_eq!(
            stacked_matrix(&[a.clone(), b.clone()], &default_shifts(&[a.clone(), b.clone()])).unwrap(),
            sylvester(&a, &b, 2).unwrap()
        );
    }

    #[test]
    fn subresultant_examples() {
        let r = subresultant_sequence(&p(&[-1, 0, 1]), &p(&[-1, 1])).unwrap();
        assert_eq!(r.first_nonzero, 1);
        assert!(r.sequence[0].1.is_zero());
        assert_eq!(r.gcd_candidate, p(&[-1, 1]));

        let r = subresultant_sequence(&p(&[1, 0, 1]), &p(&[0, 1])).unwrap();
        assert_eq!(r.first_nonzero, 0);
        // Res(x² + 1, x) = ±1: x² + 1 evaluated at the root of x.
        assert_eq!(resultant(&p(&[1, 0, 1]), &p(&[0, 1])).unwrap().magnitude(), 1.0);

        let c = p(&[-1, 1]).pow(3);
        let r = subresultant_sequence(&c, &c.derivative()).unwrap();
        assert_eq!(r.first_nonzero, 2);
        assert_eq!(r.gcd_candidate, p(&[-1, 1]).pow(2));
        assert!(subresultant_sequence(&c, &P::zero()).is_err());
    }

    #[test]
    fn chain_examples() {
        let (u, v, w) = (p(&[1, 1]), p(&[1]), p(&[0, 0, 1]));
        assert!(!resultant_chain_conditions(&u, &v, &w, 1).unwrap());
        assert!(resultant_chain_conditions(&u, &v, &w, 0).unwrap());
        // x·(x+1, 1, x²) = (x²+x, x, x³)
        let x = p(&[0, 1]);
        let (u2, v2, w2) = (&x * &u, &x * &v, &x * &w);
        assert!(resultant_chain_conditions(&u2, &v2, &w2, 1).unwrap());
        assert!(!resultant_chain_conditions(&u2, &v2, &w2, 2).unwrap());
        assert_eq!(chain_threshold(&u2, &v2, &w2).unwrap(), 1);
        // v = 0: gcd(u, w).
        assert_eq!(chain_threshold(&p(&[0, -1, 1]), &P::zero(), &p(&[0, 0, -1, 1])).unwrap(), 2);
    }
}
