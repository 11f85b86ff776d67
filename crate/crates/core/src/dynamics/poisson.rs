//! The two compatible Poisson structures on `M_g`, brackets extended by
//! Leibniz, Hamiltonian fields, Jacobi defects, and the `μ_x` comparisons.

use serde::Serialize;

use crate::algebra::bipoly::divided_difference;
use crate::algebra::field::{int, Rational};
use crate::algebra::mpoly::{MPoly, VarTable};
use crate::algebra::poly::Poly;
use crate::dynamics::lax::{mumford_vars, SymbolicField};
use crate::error::{Error, Result};
use crate::mumford::MumfordMatrix;

#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum BracketKind {
    Standard,
    Star,
    Sum,
    Custom,
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Letter {
    U,
    V,
    W,
}

/// A coefficient `u_k`, `v_k` or `w_k`, with any index.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct Coord(pub Letter, pub usize);

impl Coord {
    /// The coordinates of `M_g` in point order.
    pub fn all(g: usize) -> Vec<Coord> {
        (0..g)
            .map(|k| Coord(Letter::U, k))
            .chain((0..g).map(|k| Coord(Letter::V, k)))
            .chain((0..=g).map(|k| Coord(Letter::W, k)))
            .collect()
    }

    /// The coefficient as a function on `M_g`: a coordinate, the frozen
    /// leading `1` of `u` or `w`, or `0` out of range.
    pub fn on(self, t: &VarTable, g: usize) -> MPoly {
        let Coord(l, k) = self;
        match l {
            Letter::U if k < g => MPoly::var(t, k),
            Letter::U if k == g => MPoly::one(t),
            Letter::V if k < g => MPoly::var(t, g + k),
            Letter::W if k <= g => MPoly::var(t, 2 * g + k),
            Letter::W if k == g + 1 => MPoly::one(t),
            _ => MPoly::zero(t),
        }
    }
}

/// The bracket of two coefficients on `M_g` with index shift `s` (`1` for
/// the standard structure, `2` for the second one).
pub fn bracket_formula(t: &VarTable, g: usize, s: usize, a: Coord, b: Coord) -> MPoly {
    use Letter::*;
    let c = |l, k| Coord(l, k).on(t, g);
    let delta = |k: usize| if k == 0 { int(1) } else { int(0) };
    let (Coord(la, i), Coord(lb, j)) = (a, b);
    match (la, lb) {
        (U, U) | (V, V) => MPoly::zero(t),
        (U, V) => c(U, i + j + s),
        (U, W) => c(V, i + j + s).scale(&int(-2)),
        (V, W) => &c(W, i + j + s) - &c(U, i + s - 1).scale(&delta(j)),
        (W, W) => (&c(V, i + s - 1).scale(&delta(j)) - &c(V, j + s - 1).scale(&delta(i))).scale(&int(2)),
        _ => -bracket_formula(t, g, s, b, a),
    }
}

/// A bracket on the coordinate ring of `M_g`, given by its table on
/// coordinate pairs.
#[derive(Clone, PartialEq, Debug)]
pub struct PoissonStructure {
    pub kind: BracketKind,
    pub g: usize,
    vars: VarTable,
    table: Vec<Vec<MPoly>>,
}

impl PoissonStructure {
    fn shifted(g: usize, s: usize, kind: BracketKind) -> Self {
        let vars = mumford_vars(g);
        let coords = Coord::all(g);
        let table = coords
            .iter()
            .map(|&a| coords.iter().map(|&b| bracket_formula(&vars, g, s, a, b)).collect())
            .collect();
        PoissonStructure { kind, g, vars, table }
    }

    pub fn standard(g: usize) -> Self {
        Self::shifted(g, 1, BracketKind::Standard)
    }

    pub fn star(g: usize) -> Self {
        Self::shifted(g, 2, BracketKind::Star)
    }

    /// An arbitrary table, e.g. a deliberately broken one.
    pub fn from_table(g: usize, table: Vec<Vec<MPoly>>) -> Result<Self> {
        let vars = mumford_vars(g);
        let n = vars.len();
        if table.len() != n || table.iter().any(|r| r.len() != n) {
            return Err(Error::InvalidArgument(format!("bracket table must be {n}×{n}")));
        }
        if table.iter().flatten().any(|p| p.vars() != &vars) {
            return Err(Error::VariableTableMismatch);
        }
        Ok(PoissonStructure { kind: BracketKind::Custom, g, vars, table })
    }

    /// The pencil member `{·,·} + {·,·}′`.
    pub fn sum(&self, other: &Self) -> Result<Self> {
        if self.g != other.g {
            return Err(Error::GenusMismatch { expected: self.g, got: other.g });
        }
        let table = self
            .table
            .iter()
            .zip(&other.table)
            .map(|(r, s)| r.iter().zip(s).map(|(a, b)| a + b).collect())
            .collect();
        Ok(PoissonStructure { kind: BracketKind::Sum, g: self.g, vars: self.vars.clone(), table })
    }

    pub fn vars(&self) -> &VarTable {
        &self.vars
    }

    pub fn table(&self) -> &[Vec<MPoly>] {
        &self.table
    }

    pub fn entry(&self, a: usize, b: usize) -> &MPoly {
        &self.table[a][b]
    }

    pub fn is_antisymmetric(&self) -> bool {
        let n = self.vars.len();
        (0..n).all(|a| (0..n).all(|b| (&self.table[a][b] + &self.table[b][a]).is_zero()))
    }

    fn check(&self, f: &MPoly) -> Result<()> {
        if f.vars() != &self.vars {
            return Err(Error::GenusMismatch { expected: self.g, got: (f.vars().len().max(1) - 1) / 3 });
        }
        Ok(())
    }

    /// `{f, h} = Σ ∂f/∂z_a · ∂h/∂z_b · {z_a, z_b}`.
    pub fn bracket(&self, f: &MPoly, h: &MPoly) -> Result<MPoly> {
        self.check(f)?;
        self.check(h)?;
        let n = self.vars.len();
        let df: Vec<MPoly> = (0..n).map(|k| f.partial_derivative(k)).collect();
        let dh: Vec<MPoly> = (0..n).map(|k| h.partial_derivative(k)).collect();
        let mut out = MPoly::zero(&self.vars);
        for (a, fa) in df.iter().enumerate().filter(|(_, p)| !p.is_zero()) {
            for (b, hb) in dh.iter().enumerate().filter(|(_, p)| !p.is_zero()) {
                if !self.table[a][b].is_zero() {
                    out = &out + &(&(fa * hb) * &self.table[a][b]);
                }
            }
        }
        Ok(out)
    }

    /// `X_f` with `X_f(z) = {z, f}`.
    pub fn hamiltonian_field(&self, f: &MPoly) -> Result<SymbolicField> {
        let components = (0..self.vars.len())
            .map(|k| self.bracket(&MPoly::var(&self.vars, k), f))
            .collect::<Result<_>>()?;
        Ok(SymbolicField { g: self.g, vars: self.vars.clone(), components })
    }

    /// `{{f, h}, k} + {{h, k}, f} + {{k, f}, h}`.
    pub fn jacobi_defect(&self, f: &MPoly, h: &MPoly, k: &MPoly) -> Result<MPoly> {
        let a = self.bracket(&self.bracket(f, h)?, k)?;
        let b = self.bracket(&self.bracket(h, k)?, f)?;
        let c = self.bracket(&self.bracket(k, f)?, h)?;
        Ok(&(&a + &b) + &c)
    }

    /// Coordinate triples `a < b < c` whose Jacobi defect is nonzero.
    pub fn jacobi_failures(&self) -> Result<Vec<(usize, usize, usize)>> {
        let n = self.vars.len();
        let z: Vec<MPoly> = (0..n).map(|k| MPoly::var(&self.vars, k)).collect();
        let mut bad = Vec::new();
        for a in 0..n {
            for b in a + 1..n {
                for c in b + 1..n {
                    if !self.jacobi_defect(&z[a], &z[b], &z[c])?.is_zero() {
                        bad.push((a, b, c));
                    }
                }
            }
        }
        Ok(bad)
    }

    /// Compares `Σ x^i y^j {p_i, q_j}` at a point with the closed form in
    /// divided differences; only for the standard and second structures.
    pub fn generating_form_agrees(&self, a: &MumfordMatrix<Rational>, x: &Rational, y: &Rational) -> Result<bool> {
        use Letter::*;
        let s = match self.kind {
            BracketKind::Standard => 1,
            BracketKind::Star => 2,
            _ => return Err(Error::InvalidArgument("no closed form for this bracket".into())),
        };
        if a.g() != self.g {
            return Err(Error::GenusMismatch { expected: self.g, got: a.g() });
        }
        let z = a.coordinates();
        let top = |l| if l == W { self.g + 1 } else { self.g };
        let pw = |b: &Rational, e: usize| (0..e).fold(int(1), |m, _| m * b.clone());
        for la in [U, V, W] {
            for lb in [U, V, W] {
                let mut series = int(0);
                for i in 0..top(la) {
                    for j in 0..top(lb) {
                        let e = bracket_formula(&self.vars, self.g, s, Coord(la, i), Coord(lb, j)).eval(&z)?;
                        series += e * pw(x, i) * pw(y, j);
                    }
                }
                if series != closed_form(a, s, la, lb, x, y) {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }
}

/// `{p(x), q(y)}` in closed form, with `p ↦ [p/x^{s−1}]_+`.
fn closed_form(a: &MumfordMatrix<Rational>, s: usize, la: Letter, lb: Letter, x: &Rational, y: &Rational) -> Rational {
    use Letter::*;
    let cut = |p: &Poly<Rational>| p.truncate_div(s - 1);
    let (u, v, w) = (cut(a.u()), cut(a.v()), cut(a.w()));
    let dd = |p: &Poly<Rational>| divided_difference(p).eval(x, y);
    match (la, lb) {
        (U, V) => dd(&u),
        (U, W) => dd(&v) * int(-2),
        (V, W) => dd(&w) - u.eval(x),
        (W, W) => (v.eval(x) - v.eval(y)) * int(2),
        (V, U) | (W, U) | (W, V) => -closed_form(a, s, lb, la, y, x),
        _ => int(0),
    }
}

/// Images of the coordinates of `M_g` under `μ_x`, as functions on `M_{g−1}`.
pub fn mu_x_images(g: usize) -> Result<(VarTable, Vec<MPoly>)> {
    if g == 0 {
        return Err(Error::InvalidArgument("μ_x maps into M_g with g >= 1".into()));
    }
    let src = mumford_vars(g - 1);
    let images = Coord::all(g)
        .into_iter()
        .map(|Coord(l, k)| if k == 0 { MPoly::zero(&src) } else { Coord(l, k - 1).on(&src, g - 1) })
        .collect();
    Ok((src, images))
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct MuXReport {
    pub g: usize,
    pub pairs: usize,
    /// Pairs violating `{z′_i, z′_j}* ∘ μ_x = {z_i, z_j}` (index-aligned).
    pub aligned_failures: usize,
    /// Pairs violating the pullback identity `{F∘μ_x, G∘μ_x} = {F, G}* ∘ μ_x`.
    pub pullback_failures: usize,
}

/// Compares the second structure on `M_g` with the standard one on
/// `M_{g−1}` through `μ_x`, over all coordinate pairs.
pub fn mu_x_check(g: usize) -> Result<MuXReport> {
    let (src, images) = mu_x_images(g)?;
    let star = PoissonStructure::star(g);
    let std = PoissonStructure::standard(g - 1);
    let coords = Coord::all(g);
    let mut report = MuXReport { g, pairs: 0, aligned_failures: 0, pullback_failures: 0 };
    for a in 0..coords.len() {
        for b in a + 1..coords.len() {
            report.pairs += 1;
            let pulled = star.entry(a, b).compose(&src, &images)?;
            if pulled != bracket_formula(&src, g - 1, 1, coords[a], coords[b]) {
                report.aligned_failures += 1;
            }
            if std.bracket(&images[a], &images[b])? != pulled {
                report.pullback_failures += 1;
            }
        }
    }
    Ok(report)
}
