//! Exact rank and kernels by fraction-free elimination; numerical rank with
//! a tolerance for the float backend.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::algebra::field::{int, Field, Rational, C64, DEFAULT_EPS};
use crate::error::{Error, Result};

/// Dense row-major matrix.
#[derive(Clone, PartialEq, Debug)]
pub struct Matrix<F> {
    rows: usize,
    cols: usize,
    entries: Vec<F>,
}

impl<F: Field> Matrix<F> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix { rows, cols, entries: vec![F::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, F::one());
        }
        m
    }

    pub fn from_entries(rows: usize, cols: usize, entries: Vec<F>) -> Result<Self> {
        if entries.len() != rows * cols {
            return Err(Error::InvalidArgument(format!(
                "{} entries for a {rows}x{cols} matrix",
                entries.len()
            )));
        }
        Ok(Matrix { rows, cols, entries })
    }

    /// Rows must share a length; `cols` is needed for the empty case.
    pub fn from_rows(cols: usize, rows: Vec<Vec<F>>) -> Result<Self> {
        let n = rows.len();
        let mut entries = Vec::with_capacity(n * cols);
        for r in rows {
            if r.len() != cols {
                return Err(Error::InvalidArgument("ragged rows".into()));
            }
            entries.extend(r);
        }
        Ok(Matrix { rows: n, cols, entries })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn entries(&self) -> &[F] {
        &self.entries
    }

    pub fn get(&self, r: usize, c: usize) -> &F {
        &self.entries[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: F) {
        self.entries[r * self.cols + c] = v;
    }

    pub fn row(&self, r: usize) -> &[F] {
        &self.entries[r * self.cols..(r + 1) * self.cols]
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t.set(c, r, self.get(r, c).clone());
            }
        }
        t
    }

    pub fn mul_vec(&self, v: &[F]) -> Vec<F> {
        (0..self.rows)
            .map(|r| {
                self.row(r)
                    .iter()
                    .zip(v)
                    .fold(F::zero(), |acc, (a, b)| acc + a.clone() * b.clone())
            })
            .collect()
    }

    /// Stacks `blocks` vertically, right-padding each with zero columns to
    /// the widest block.
    pub fn vstack_padded(blocks: &[Matrix<F>]) -> Self {
        let cols = blocks.iter().map(|b| b.cols).max().unwrap_or(0);
        let mut rows = Vec::new();
        for b in blocks {
            for r in 0..b.rows {
                let mut row = b.row(r).to_vec();
                row.resize(cols, F::zero());
                rows.push(row);
            }
        }
        Self::from_rows(cols, rows).expect("padded rows have equal length")
    }

    pub fn permute_rows(&self, perm: &[usize]) -> Self {
        let rows = perm.iter().map(|&r| self.row(r).to_vec()).collect();
        Self::from_rows(self.cols, rows).expect("permutation keeps width")
    }
}

/// Rank under the backend's rule.
pub trait RankField: Field {
    fn rank_of(m: &Matrix<Self>) -> usize;
}

impl RankField for Rational {
    fn rank_of(m: &Matrix<Self>) -> usize {
        Echelon::of(m).pivots.len()
    }
}

impl RankField for C64 {
    fn rank_of(m: &Matrix<Self>) -> usize {
        float_rank(m, DEFAULT_EPS)
    }
}

pub fn rank<F: RankField>(m: &Matrix<F>) -> usize {
    F::rank_of(m)
}

/// Rank via partial-pivot elimination; pivots below `eps · max|a_ij|`
/// (or `eps` for matrices of magnitude below 1) count as zero.
pub fn float_rank(m: &Matrix<C64>, eps: f64) -> usize {
    let mut a = m.clone();
    let scale = a.entries.iter().map(|z| z.norm()).fold(0.0, f64::max).max(1.0);
    let tol = eps * scale;
    let mut rank = 0;
    for c in 0..a.cols {
        if rank == a.rows {
            break;
        }
        let (best, mag) = (rank..a.rows)
            .map(|r| (r, a.get(r, c).norm()))
            .fold((rank, -1.0), |acc, x| if x.1 > acc.1 { x } else { acc });
        if mag <= tol {
            continue;
        }
        for k in 0..a.cols {
            a.entries.swap(rank * a.cols + k, best * a.cols + k);
        }
        let p = *a.get(rank, c);
        for r in rank + 1..a.rows {
            let f = *a.get(r, c) / p;
            for k in c..a.cols {
                let v = *a.get(r, k) - f * a.get(rank, k);
                a.set(r, k, v);
            }
        }
        rank += 1;
    }
    rank
}

/// Integer row echelon form reached by Bareiss elimination.
struct Echelon {
    rows: Vec<Vec<BigInt>>,
    pivots: Vec<usize>,
    swaps: usize,
}

impl Echelon {
    /// Rows are first scaled to integers (row scaling keeps rank and kernel).
    fn of(m: &Matrix<Rational>) -> Self {
        let rows = (0..m.rows).map(|r| integer_row(m.row(r))).collect();
        Self::bareiss(rows, m.cols)
    }

    fn bareiss(mut a: Vec<Vec<BigInt>>, cols: usize) -> Self {
        let n = a.len();
        let mut prev = BigInt::one();
        let mut pivots = Vec::new();
        let mut swaps = 0;
        let mut r = 0;
        for c in 0..cols {
            if r == n {
                break;
            }
            let Some(p) = (r..n).find(|&i| !a[i][c].is_zero()) else {
                continue;
            };
            if p != r {
                a.swap(p, r);
                swaps += 1;
            }
            for i in r + 1..n {
                for k in c + 1..cols {
                    let v = &a[r][c] * &a[i][k] - &a[i][c] * &a[r][k];
                    // Sylvester's identity makes this division exact.
                    a[i][k] = v / &prev;
                }
                a[i][c] = BigInt::zero();
            }
            prev = a[r][c].clone();
            pivots.push(c);
            r += 1;
        }
        Echelon { rows: a, pivots, swaps }
    }
}

fn integer_row(row: &[Rational]) -> Vec<BigInt> {
    let l = row.iter().fold(BigInt::one(), |l, x| l.lcm(x.denom()));
    row.iter().map(|x| x.numer() * (&l / x.denom())).collect()
}

/// Determinant of a square rational matrix.
pub fn determinant(m: &Matrix<Rational>) -> Result<Rational> {
    if m.rows != m.cols {
        return Err(Error::InvalidArgument("determinant of a non-square matrix".into()));
    }
    if m.rows == 0 {
        return Ok(int(1));
    }
    let mut scale = BigInt::one();
    let rows: Vec<_> = (0..m.rows)
        .map(|r| {
            let row = m.row(r);
            let l = row.iter().fold(BigInt::one(), |l, x| l.lcm(x.denom()));
            scale *= &l;
            row.iter().map(|x| x.numer() * (&l / x.denom())).collect()
        })
        .collect();
    let e = Echelon::bareiss(rows, m.cols);
    if e.pivots.len() < m.rows {
        return Ok(int(0));
    }
    let mut d = e.rows[m.rows - 1][m.cols - 1].clone();
    if e.swaps % 2 == 1 {
        d = -d;
    }
    Ok(Rational::new(d, scale))
}

/// Basis of the right kernel `{v : m·v = 0}`; exactly `cols − rank` vectors.
pub fn kernel_basis(m: &Matrix<Rational>) -> Vec<Vec<Rational>> {
    let e = Echelon::of(m);
    let free: Vec<usize> = (0..m.cols).filter(|c| !e.pivots.contains(c)).collect();
    let mut basis = Vec::with_capacity(free.len());
    for &f in &free {
        let mut v = vec![int(0); m.cols];
        v[f] = int(1);
        for (r, &pc) in e.pivots.iter().enumerate().rev() {
            let row = &e.rows[r];
            let s = (pc + 1..m.cols).fold(int(0), |acc, k| {
                if row[k].is_zero() {
                    acc
                } else {
                    acc + Rational::from_integer(row[k].clone()) * &v[k]
                }
            });
            v[pc] = -s / Rational::from_integer(row[pc].clone());
        }
        basis.push(v);
    }
    basis
}

/// Float-backend kernels are not supported: rank only.
pub fn kernel_basis_float(_m: &Matrix<C64>) -> Result<Vec<Vec<C64>>> {
    Err(Error::ExactOnly("kernel basis"))
}

pub fn kernel_dim(m: &Matrix<Rational>) -> usize {
    m.cols - rank(m)
}

/// Explicit kernel of the multiplication matrix of `P = Π (x − α)^mult` with
/// `l` rows: for each root and each derivative order `d < mult`, the vector
/// with entries `k!/(k−d)! · α^{k−d}` (the `d`-th derivative of `x^k` at α).
pub fn confluent_vandermonde_kernel(roots: &[(Rational, usize)], l: usize) -> Result<Vec<Vec<Rational>>> {
    for (i, (a, _)) in roots.iter().enumerate() {
        if roots[..i].iter().any(|(b, _)| a == b) {
            return Err(Error::InvalidArgument("repeated root".into()));
        }
    }
    let n: usize = roots.iter().map(|r| r.1).sum();
    let len = n + l;
    let mut out = Vec::with_capacity(n);
    for (alpha, mult) in roots {
        for d in 0..*mult {
            let v = (0..len)
                .map(|k| {
                    if k < d {
                        return int(0);
                    }
                    let weight: i64 = (k - d + 1..=k).map(|t| t as i64).product();
                    let mut p = Rational::from_integer(BigInt::from(weight));
                    for _ in 0..k - d {
                        p *= alpha;
                    }
                    p
                })
                .collect();
            out.push(v);
        }
    }
    Ok(out)
}

/// Whether the vectors are linearly independent.
pub fn independent(vectors: &[Vec<Rational>]) -> bool {
    let Some(first) = vectors.first() else {
        return true;
    };
    let m = Matrix::from_rows(first.len(), vectors.to_vec()).expect("equal lengths");
    rank(&m) == vectors.len()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::field::{frac, int};
    use proptest::prelude::*;

    fn m(rows: &[&[i64]]) -> Matrix<Rational> {
        let cols = rows.first().map_or(0, |r| r.len());
        Matrix::from_rows(cols, rows.iter().map(|r| r.iter().map(|&x| int(x)).collect()).collect())
            .unwrap()
    }

    #[test]
    fn rank_examples() {
        assert_eq!(rank(&Matrix::<Rational>::identity(3)), 3);
        assert_eq!(rank(&m(&[&[-1, 0, 1], &[-1, 1, 0], &[0, -1, 1]])), 2);
        assert_eq!(rank(&Matrix::<Rational>::zeros(2, 5)), 0);
        assert_eq!(rank(&Matrix::<C64>::identity(4)), 4);
    }

    #[test]
    fn kernel_examples() {
        let k = kernel_basis(&m(&[&[1, 1]]));
        assert_eq!(k, vec![vec![int(-1), int(1)]]);
        let syl_t = m(&[&[-1, 0, 1], &[-1, 1, 0], &[0, -1, 1]]);
        assert_eq!(kernel_basis(&syl_t).len(), 1);
        assert!(kernel_basis(&Matrix::<Rational>::identity(3)).is_empty());
        assert!(kernel_basis_float(&Matrix::<C64>::identity(2)).is_err());
    }

    #[test]
    fn determinant_examples() {
        assert_eq!(determinant(&m(&[&[0, 1], &[1, 0]])).unwrap(), int(-1));
        assert_eq!(determinant(&m(&[&[-1, 0, 1], &[-1, 1, 0], &[0, -1, 1]])).unwrap(), int(0));
        let half = Matrix::from_entries(2, 2, vec![frac(1, 2), int(1), int(3), frac(1, 3)]).unwrap();
        assert_eq!(determinant(&half).unwrap(), frac(1, 6) - int(3));
    }

    #[test]
    fn confluent_kernel_examples() {
        // P = x², l = 1, double root at 0.
        let k = confluent_vandermonde_kernel(&[(int(0), 2)], 1).unwrap();
        assert_eq!(k, vec![vec![int(1), int(0), int(0)], vec![int(0), int(1), int(0)]]);
        // P = x − 1, l = 2.
        let k = confluent_vandermonde_kernel(&[(int(1), 1)], 2).unwrap();
        assert_eq!(k, vec![vec![int(1), int(1), int(1)]]);
        // P = (x − 1)², l = 1: annihilated by [1, −2, 1].
        let k = confluent_vandermonde_kernel(&[(int(1), 2)], 1).unwrap();
        assert_eq!(k, vec![vec![int(1), int(1), int(1)], vec![int(0), int(1), int(2)]]);
        let mp = m(&[&[1, -2, 1]]);
        for v in &k {
            assert!(mp.mul_vec(v).iter().all(Field::is_zero));
        }
        assert!(confluent_vandermonde_kernel(&[(int(1), 1), (int(1), 2)], 1).is_err());
    }

    fn arb_matrix() -> impl Strategy<Value = Matrix<Rational>> {
        (1usize..6, 1usize..6).prop_flat_map(|(r, c)| {
            prop::collection::vec((-3i64..=3, 1i64..=3), r * c)
                .prop_map(move |e| Matrix::from_entries(r, c, e.into_iter().map(|(n, d)| frac(n, d)).collect()).unwrap())
        })
    }

    fn arb_square() -> impl Strategy<Value = Matrix<Rational>> {
        (1usize..6).prop_flat_map(|n| {
            prop::collection::vec(-1i64..=1, n * n)
                .prop_map(move |e| Matrix::from_entries(n, n, e.into_iter().map(int).collect()).unwrap())
        })
    }

    proptest! {
        #[test]
        fn rank_nullity(mat in arb_matrix()) {
            let k = kernel_basis(&mat);
            prop_assert_eq!(rank(&mat) + k.len(), mat.cols());
            prop_assert!(independent(&k));
            for v in &k {
                prop_assert!(mat.mul_vec(v).iter().all(Field::is_zero));
            }
        }

        #[test]
        fn rank_invariant_under_permutation(mat in arb_matrix(), seed in 0u64..1000) {
            let mut perm: Vec<usize> = (0..mat.rows()).collect();
            let mut s = seed;
            for i in (1..perm.len()).rev() {
                s = s.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
                perm.swap(i, (s >> 33) as usize % (i + 1));
            }
            prop_assert_eq!(rank(&mat.permute_rows(&perm)), rank(&mat));
            prop_assert_eq!(rank(&mat.transpose()), rank(&mat));
        }

        #[test]
        fn float_rank_matches_exact(mat in arb_matrix()) {
            let f = Matrix::from_entries(mat.rows(), mat.cols(), mat.entries().iter().map(C64::from_rational).collect()).unwrap();
            prop_assert_eq!(rank(&f), rank(&mat));
        }

        #[test]
        fn determinant_zero_iff_rank_deficient(mat in arb_square()) {
            let d = determinant(&mat).unwrap();
            prop_assert_eq!(Field::is_zero(&d), rank(&mat) < mat.rows());
        }
    }

    #[test]
    fn determinant_sign_with_swap() {
        let a = m(&[&[0, 2, 1], &[3, 0, 0], &[1, 1, 1]]);
        // Cofactor expansion: 0·0 − 2·(3 − 0) + 1·(3 − 0) = −3.
        assert_eq!(determinant(&a).unwrap(), int(-3));
        assert!(determinant(&m(&[&[1, 2, 3]])).is_err());
    }
}
