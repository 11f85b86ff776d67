//! The Lax vector fields `D_y` and `D_i`, numerically, formally in `y`, and
//! with symbolic coordinates.

use crate::algebra::bipoly::{divided_difference, BiPoly};
use crate::algebra::field::{Field, Rational, C64};
use crate::algebra::mpoly::{MPoly, VarTable};
use crate::algebra::poly::Poly;
use crate::error::{Error, Result};
use crate::linalg::{float_rank, rank, Matrix};
use crate::mumford::MumfordMatrix;

/// A tangent vector to `M_g` at a point: `deg du, deg dv < g`, `deg dw ≤ g`.
#[derive(Clone, PartialEq, Debug)]
pub struct TangentValue<F> {
    pub du: Poly<F>,
    pub dv: Poly<F>,
    pub dw: Poly<F>,
}

impl<F: Field> TangentValue<F> {
    pub fn zero() -> Self {
        TangentValue { du: Poly::zero(), dv: Poly::zero(), dw: Poly::zero() }
    }

    pub fn is_zero(&self) -> bool {
        self.du.is_zero() && self.dv.is_zero() && self.dw.is_zero()
    }

    /// Coordinates in the order of [`MumfordMatrix::coordinates`].
    pub fn flatten(&self, g: usize) -> Vec<F> {
        (0..g)
            .map(|k| self.du.coeff(k))
            .chain((0..g).map(|k| self.dv.coeff(k)))
            .chain((0..=g).map(|k| self.dw.coeff(k)))
            .collect()
    }

    pub fn within_bounds(&self, g: usize) -> bool {
        let below = |p: &Poly<F>, n: usize| p.degree().is_none_or(|d| d < n);
        below(&self.du, g) && below(&self.dv, g) && below(&self.dw, g + 1)
    }

    pub fn scale(&self, c: &F) -> Self {
        TangentValue { du: self.du.scale(c), dv: self.dv.scale(c), dw: self.dw.scale(c) }
    }

    pub fn approx_eq(&self, other: &Self) -> bool {
        self.du.approx_eq(&other.du) && self.dv.approx_eq(&other.dv) && self.dw.approx_eq(&other.dw)
    }
}

impl<F: Field> std::ops::Add for &TangentValue<F> {
    type Output = TangentValue<F>;
    fn add(self, rhs: Self) -> TangentValue<F> {
        TangentValue { du: &self.du + &rhs.du, dv: &self.dv + &rhs.dv, dw: &self.dw + &rhs.dw }
    }
}

/// `[A, B]` for `A = [[v, u], [w, −v]]` and the traceless `B = [[b11, b12], [b21, −b11]]`,
/// returned as the `(u, v, w)` slots of the result.
fn commutator<F: Field>(a: &MumfordMatrix<F>, b11: &Poly<F>, b12: &Poly<F>, b21: &Poly<F>) -> TangentValue<F> {
    let two = F::from_i64(2);
    let (u, v, w) = (a.u(), a.v(), a.w());
    TangentValue {
        du: (&(v * b12) - &(u * b11)).scale(&two),
        dv: &(u * b21) - &(w * b12),
        dw: (&(w * b11) - &(v * b21)).scale(&two),
    }
}

/// `D_y` at `A`: the commutator of `A(x)` with the divided difference
/// `(A(x) − A(y))/(x − y)` corrected by `u(y)` in the lower-left slot.
pub fn lax_field_at<F: Field>(a: &MumfordMatrix<F>, y: &F) -> TangentValue<F> {
    let b11 = divided_difference(a.v()).eval_y(y);
    let b12 = divided_difference(a.u()).eval_y(y);
    let b21 = &divided_difference(a.w()).eval_y(y) - &Poly::constant(a.u().eval(y));
    commutator(a, &b11, &b12, &b21)
}

/// `D_i` at `A`, using the polynomial parts `[A(x)/x^{i+1}]_+`. Zero for `i ≥ g`.
pub fn lax_field_i<F: Field>(a: &MumfordMatrix<F>, i: usize) -> TangentValue<F> {
    if i >= a.g() {
        return TangentValue::zero();
    }
    let b11 = a.v().truncate_div(i + 1);
    let b12 = a.u().truncate_div(i + 1);
    let b21 = &a.w().truncate_div(i + 1) - &Poly::constant(a.u().coeff(i));
    commutator(a, &b11, &b12, &b21)
}

/// `D_y` with `y` kept formal: slots `(du, dv, dw)` as polynomials in `x, y`.
pub fn formal_lax_field<F: Field>(a: &MumfordMatrix<F>) -> [BiPoly<F>; 3] {
    let (u, v, w) = (BiPoly::from_x(a.u()), BiPoly::from_x(a.v()), BiPoly::from_x(a.w()));
    let b11 = divided_difference(a.v());
    let b12 = divided_difference(a.u());
    let b21 = &divided_difference(a.w()) - &BiPoly::from_y(a.u());
    let two = F::from_i64(2);
    [
        (&(&v * &b12) - &(&u * &b11)).scale(&two),
        &(&u * &b21) - &(&w * &b12),
        (&(&w * &b11) - &(&v * &b21)).scale(&two),
    ]
}

fn field_rows<F: Field>(a: &MumfordMatrix<F>) -> Matrix<F> {
    let g = a.g();
    let rows = (0..g).map(|i| lax_field_i(a, i).flatten(g)).collect();
    Matrix::from_rows(MumfordMatrix::<F>::dimension(g), rows).unwrap()
}

/// `σ(A)`: the dimension of the span of `D_0, …, D_{g−1}` at `A`.
pub fn sigma_of_matrix(a: &MumfordMatrix<Rational>) -> usize {
    rank(&field_rows(a))
}

pub fn sigma_float(a: &MumfordMatrix<C64>, eps: f64) -> usize {
    float_rank(&field_rows(a), eps)
}

/// Coordinate names `u0.., v0.., w0..` of `M_g`, in point order.
pub fn mumford_vars(g: usize) -> VarTable {
    let names = (0..g)
        .map(|k| format!("u{k}"))
        .chain((0..g).map(|k| format!("v{k}")))
        .chain((0..=g).map(|k| format!("w{k}")));
    VarTable::new(names)
}

/// A polynomial in `x` with coefficients in the coordinate ring.
pub(crate) type SymPoly = Vec<MPoly>;

/// `u`, `v`, `w` of the generic point of `M_g`.
pub(crate) fn generic_point(t: &VarTable, g: usize) -> [SymPoly; 3] {
    let one = MPoly::one(t);
    let mut u: SymPoly = (0..g).map(|k| MPoly::var(t, k)).collect();
    u.push(one.clone());
    let v = (0..g).map(|k| MPoly::var(t, g + k)).collect();
    let mut w: SymPoly = (0..=g).map(|k| MPoly::var(t, 2 * g + k)).collect();
    w.push(one);
    [u, v, w]
}

pub(crate) fn sym_mul(a: &[MPoly], b: &[MPoly], t: &VarTable) -> SymPoly {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![MPoly::zero(t); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] = &out[i + j] + &(x * y);
        }
    }
    out
}

pub(crate) fn sym_lin(a: &[MPoly], ca: i64, b: &[MPoly], cb: i64, t: &VarTable) -> SymPoly {
    let (ca, cb) = (Rational::from_i64(ca), Rational::from_i64(cb));
    (0..a.len().max(b.len()))
        .map(|k| {
            let x = a.get(k).map_or_else(|| MPoly::zero(t), |p| p.scale(&ca));
            let y = b.get(k).map_or_else(|| MPoly::zero(t), |p| p.scale(&cb));
            &x + &y
        })
        .collect()
}

fn coeff(p: &[MPoly], k: usize, t: &VarTable) -> MPoly {
    p.get(k).cloned().unwrap_or_else(|| MPoly::zero(t))
}

/// `h_0, …, h_{2g+1}` as polynomials in the coordinates.
pub fn symbolic_moment_map(g: usize) -> Vec<MPoly> {
    let t = mumford_vars(g);
    let [u, v, w] = generic_point(&t, g);
    let h = sym_lin(&sym_mul(&v, &v, &t), 1, &sym_mul(&u, &w, &t), 1, &t);
    (0..=2 * g + 1).map(|k| coeff(&h, k, &t)).collect()
}

/// A polynomial vector field on `M_g`: one component per coordinate.
#[derive(Clone, PartialEq, Debug)]
pub struct SymbolicField {
    pub g: usize,
    pub vars: VarTable,
    pub components: Vec<MPoly>,
}

impl SymbolicField {
    pub fn component(&self, name: &str) -> Option<&MPoly> {
        self.vars.index_of(name).map(|k| &self.components[k])
    }

    pub fn eval(&self, a: &MumfordMatrix<Rational>) -> Result<Vec<Rational>> {
        if a.g() != self.g {
            return Err(Error::GenusMismatch { expected: self.g, got: a.g() });
        }
        let z = a.coordinates();
        self.components.iter().map(|c| c.eval(&z)).collect()
    }

    /// `Σ_k (∂f/∂z_k)·X_k`.
    pub fn lie_derivative(&self, f: &MPoly) -> Result<MPoly> {
        let mut out = MPoly::zero(&self.vars);
        for (k, c) in self.components.iter().enumerate() {
            out = out.try_add(&f.partial_derivative(k).try_mul(c)?)?;
        }
        Ok(out)
    }
}

/// `D_i` on `M_g` with symbolic coordinates; components have total degree ≤ 2.
pub fn symbolic_field(g: usize, i: usize) -> Result<SymbolicField> {
    if i >= g {
        return Err(Error::InvalidArgument(format!("field index {i} needs i < g = {g}")));
    }
    let t = mumford_vars(g);
    let [u, v, w] = generic_point(&t, g);
    let b11: SymPoly = v.iter().skip(i + 1).cloned().collect();
    let b12: SymPoly = u.iter().skip(i + 1).cloned().collect();
    let mut b21: SymPoly = w.iter().skip(i + 1).cloned().collect();
    b21[0] = &b21[0] - &u[i];
    let du = sym_lin(&sym_mul(&v, &b12, &t), 2, &sym_mul(&u, &b11, &t), -2, &t);
    let dv = sym_lin(&sym_mul(&u, &b21, &t), 1, &sym_mul(&w, &b12, &t), -1, &t);
    let dw = sym_lin(&sym_mul(&w, &b11, &t), 2, &sym_mul(&v, &b21, &t), -2, &t);
    let components = (0..g)
        .map(|k| coeff(&du, k, &t))
        .chain((0..g).map(|k| coeff(&dv, k, &t)))
        .chain((0..=g).map(|k| coeff(&dw, k, &t)))
        .collect();
    Ok(SymbolicField { g, vars: t, components })
}
