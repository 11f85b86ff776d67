//! Stratification of an invariant fiber `M_g(h)` by the exact gcd `Q` of a
//! point: classification, the label lattice, a constructive sampler for
//! every stratum, the Jacobian of the moment map and its rank law.

use num_bigint::BigInt;
use num_traits::Signed;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::algebra::field::{int, Field, Rational, C64};
use crate::algebra::poly::{lagrange_interpolate, Poly};
use crate::dynamics::lax::{sigma_float, sigma_of_matrix};
use crate::error::{Error, Result};
use crate::json::{ser_poly, ser_spectral};
use crate::linalg::{rank, Matrix};
use crate::mumford::{fiber_contains, quadratic_divisors, regular_part, rho_float, rho_of_matrix, MumfordMatrix, SpectralPoly};

type P = Poly<Rational>;

/// Stratum of `M_g(h)` whose points have gcd exactly `q`; its dimension is
/// `i = g − deg q`.
#[derive(Clone, PartialEq, Debug, Serialize)]
pub struct StratumLabel {
    pub g: usize,
    pub i: usize,
    #[serde(serialize_with = "ser_poly")]
    pub q: P,
    #[serde(serialize_with = "ser_spectral")]
    pub h: SpectralPoly,
}

impl StratumLabel {
    pub fn new(h: &SpectralPoly, q: P) -> Result<Self> {
        let g = h.g();
        let d = q.degree().ok_or(Error::InvalidArgument("q must be nonzero".into()))?;
        if !q.is_monic() || d > g || !(&q * &q).divides(h.h())? {
            return Err(Error::InvalidArgument(format!("{q} is not a quadratic divisor of {}", h.h())));
        }
        Ok(StratumLabel { g, i: g - d, q, h: h.clone() })
    }
}

/// A point `a` on the fiber over `h`, labelled by its gcd.
pub fn classify(a: &MumfordMatrix<Rational>, h: &SpectralPoly) -> Result<StratumLabel> {
    if !fiber_contains(h.h(), a, 0.0)? {
        return Err(Error::NotOnFiber);
    }
    let (rho, q) = rho_of_matrix(a)?;
    let sigma = sigma_of_matrix(a);
    if sigma + rho != a.g() {
        return Err(Error::Inconsistent(format!("sigma {sigma} + rho {rho} != g {}", a.g())));
    }
    StratumLabel::new(h, q)
}

/// Stratum index `i` of a float point, from the numerical ranks.
pub fn classify_float(a: &MumfordMatrix<C64>, h: &Poly<C64>, eps: f64) -> Result<usize> {
    if !fiber_contains(h, a, eps)? {
        return Err(Error::NotOnFiber);
    }
    let (rho, sigma) = (rho_float(a, eps)?, sigma_float(a, eps));
    if sigma + rho != a.g() {
        return Err(Error::Inconsistent(format!("sigma {sigma} + rho {rho} != g {}", a.g())));
    }
    Ok(sigma)
}

#[derive(Clone, PartialEq, Debug, Serialize)]
pub struct StrataLattice {
    #[serde(serialize_with = "ser_spectral")]
    pub h: SpectralPoly,
    pub g: usize,
    pub rho_h: usize,
    pub labels: Vec<StratumLabel>,
    /// `(a, b)`: `labels[b].q = labels[a].q · f` for an irreducible `f`;
    /// stratum `b` lies in the closure of stratum `a`.
    pub edges: Vec<(usize, usize)>,
    /// `(i, number of labels of dimension i)`, by decreasing `i`.
    pub coarse_counts: Vec<(usize, usize)>,
}

impl StrataLattice {
    /// Dimensions drop along every edge by the degree gained.
    pub fn closure_consistent(&self) -> bool {
        self.edges.iter().all(|&(a, b)| {
            let (la, lb) = (&self.labels[a], &self.labels[b]);
            let gained = lb.q.degree().unwrap() - la.q.degree().unwrap();
            gained > 0 && la.i == lb.i + gained
        })
    }
}

pub fn enumerate_strata(h: &SpectralPoly) -> Result<StrataLattice> {
    let lattice = quadratic_divisors(h)?;
    let g = h.g();
    let labels: Vec<StratumLabel> =
        lattice.polys().filter(|q| q.degree().unwrap() <= g).map(|q| StratumLabel::new(h, q.clone())).collect::<Result<_>>()?;
    let mut coarse_counts: Vec<(usize, usize)> = Vec::new();
    for l in &labels {
        match coarse_counts.iter_mut().find(|c| c.0 == l.i) {
            Some(c) => c.1 += 1,
            None => coarse_counts.push((l.i, 1)),
        }
    }
    coarse_counts.sort_by_key(|c| std::cmp::Reverse(c.0));
    Ok(StrataLattice { h: h.clone(), g, rho_h: lattice.rho_h, labels, edges: lattice.edges, coarse_counts })
}

pub const SAMPLE_BUDGET: usize = 10_000;
const NODE_BOUND: i64 = 40;

/// Every reduced `p/q` with `|p|, q ≤ 40`, in a seeded order.
fn candidate_nodes(rng: &mut ChaCha8Rng) -> Vec<Rational> {
    let mut out: Vec<Rational> = (1..=NODE_BOUND)
        .flat_map(|d| (-NODE_BOUND..=NODE_BOUND).map(move |n| (n, d)))
        .filter(|&(n, d)| num_integer::gcd(n, d) == 1)
        .map(|(n, d)| Rational::new(n.into(), d.into()))
        .collect();
    out.shuffle(rng);
    out
}

fn rational_sqrt(r: &Rational) -> Option<Rational> {
    if r.is_negative() {
        return None;
    }
    let (n, d) = (r.numer(), r.denom());
    let (sn, sd): (BigInt, BigInt) = (n.sqrt(), d.sqrt());
    (&sn * &sn == *n && &sd * &sd == *d).then(|| Rational::new(sn, sd))
}

/// Builds `q·(u', v', w')` from nodes `a_j` and values `b_j` with
/// `b_j² = h(a_j)`: `u' = Π(x − a_j)`, `v'(a_j) = b_j / q(a_j)`,
/// `w' = (h/q² − v'²)/u'`.
fn assemble<F: Field>(g: usize, q: &Poly<F>, hp: &Poly<F>, nodes: &[(F, F)]) -> Result<MumfordMatrix<F>> {
    let k = nodes.len();
    let u = Poly::from_roots(&nodes.iter().map(|n| n.0.clone()).collect::<Vec<_>>());
    let pts: Vec<(F, F)> = nodes
        .iter()
        .map(|(a, b)| Ok((a.clone(), b.div(&q.eval(a)).ok_or(Error::DivisionByZero)?)))
        .collect::<Result<_>>()?;
    let v = if k == 0 { Poly::zero() } else { lagrange_interpolate(&pts)? };
    let (w, r) = (hp - &(&v * &v)).div_rem(&u)?;
    if !r.approx_eq(&Poly::zero()) {
        return Err(Error::Numerical("fiber construction left a remainder".into()));
    }
    let ap = MumfordMatrix::new(k, u, v, w)?;
    let a = ap.mu(q)?;
    debug_assert_eq!(a.g(), g);
    Ok(a)
}

/// An exact point of the stratum, with nodes drawn from a seeded
/// enumeration of small rationals at which `h` is a nonzero square.
pub fn sample_stratum(label: &StratumLabel, seed: u64) -> Result<MumfordMatrix<Rational>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let h = label.h.h();
    let hp = h.exact_div(&(&label.q * &label.q))?;
    let mut nodes: Vec<(Rational, Rational)> = Vec::new();
    let mut tried = 0;
    for a in candidate_nodes(&mut rng) {
        if nodes.len() == label.i {
            break;
        }
        tried += 1;
        if tried > SAMPLE_BUDGET * label.i.max(1) {
            break;
        }
        let ha = h.eval(&a);
        if Field::is_zero(&ha) || nodes.iter().any(|n| n.0 == a) {
            continue;
        }
        if let Some(b) = rational_sqrt(&ha) {
            let b = if rng.gen_bool(0.5) { b } else { -b };
            nodes.push((a, b));
        }
    }
    if nodes.len() < label.i {
        return Err(Error::BudgetExhausted { budget: SAMPLE_BUDGET, what: "rational nodes with h(a) a nonzero square".into() });
    }
    let a = assemble(label.g, &label.q, &hp, &nodes)?;
    let got = classify(&a, &label.h)?;
    if got != *label {
        return Err(Error::Inconsistent(format!("sampled point classified as i = {}, q = {}", got.i, got.q)));
    }
    Ok(a)
}

/// A floating-point point of the stratum, with real nodes and complex
/// square roots.
pub fn sample_stratum_float(label: &StratumLabel, seed: u64) -> Result<MumfordMatrix<C64>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let h: Poly<C64> = label.h.h().to_field();
    let q: Poly<C64> = label.q.to_field();
    let hp: Poly<C64> = label.h.h().exact_div(&(&label.q * &label.q))?.to_field();
    let mut nodes: Vec<(C64, C64)> = Vec::new();
    for _ in 0..SAMPLE_BUDGET {
        if nodes.len() == label.i {
            break;
        }
        let a = C64::new(rng.gen_range(-3.0..3.0), 0.0);
        let ha = h.eval(&a);
        if ha.norm() < 1e-3 || nodes.iter().any(|n| (n.0 - a).norm() < 1e-2) {
            continue;
        }
        let b = if rng.gen_bool(0.5) { ha.sqrt() } else { -ha.sqrt() };
        nodes.push((a, b));
    }
    if nodes.len() < label.i {
        return Err(Error::BudgetExhausted { budget: SAMPLE_BUDGET, what: "well-separated float nodes".into() });
    }
    assemble(label.g, &q, &hp, &nodes)
}

/// `a = μ_q(a')` with `a'` regular on the fiber over `h/q²`.
pub fn decompose_fiber_point(a: &MumfordMatrix<Rational>, h: &SpectralPoly) -> Result<(P, MumfordMatrix<Rational>, SpectralPoly)> {
    if !fiber_contains(h.h(), a, 0.0)? {
        return Err(Error::NotOnFiber);
    }
    let (q, ap) = regular_part(a)?;
    let hp = h.divide_square(&q)?;
    if ap.moment_map() != *hp.h() {
        return Err(Error::Inconsistent("regular part is off the reduced fiber".into()));
    }
    Ok((q, ap, hp))
}

/// `∂h_c/∂z_r`: rows `u_j ↦ x^j·w`, `v_j ↦ 2x^j·v`, `w_j ↦ x^j·u`, columns
/// `h_0..h_{2g}`.
pub fn jacobian_moment<F: Field>(a: &MumfordMatrix<F>) -> Matrix<F> {
    let g = a.g();
    let cols = 2 * g + 1;
    let two_v = a.v().scale(&F::from_i64(2));
    let rows = (0..g)
        .map(|j| a.w().shift(j))
        .chain((0..g).map(|j| two_v.shift(j)))
        .chain((0..=g).map(|j| a.u().shift(j)))
        .map(|p| (0..cols).map(|c| p.coeff(c)).collect())
        .collect();
    Matrix::from_rows(cols, rows).unwrap()
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct StratumCheck {
    pub i: usize,
    #[serde(serialize_with = "ser_poly")]
    pub q: P,
    pub expected_rank: usize,
    pub ranks: Vec<usize>,
    pub sigmas: Vec<usize>,
    /// Non-maximal strata make up the singular locus of the fiber.
    pub singular: bool,
    pub ok: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SmoothnessReport {
    pub g: usize,
    pub rho_h: usize,
    pub strata: Vec<StratumCheck>,
    pub ok: bool,
}

/// Samples every stratum and checks `rank J_H = 2g + 1 − ρ` and `σ = i`.
pub fn smoothness_report(h: &SpectralPoly, samples_per_stratum: usize, seed: u64) -> Result<SmoothnessReport> {
    let lattice = enumerate_strata(h)?;
    let g = lattice.g;
    let mut strata = Vec::new();
    for (k, label) in lattice.labels.iter().enumerate() {
        let expected_rank = 2 * g + 1 - (g - label.i);
        let (mut ranks, mut sigmas) = (Vec::new(), Vec::new());
        for s in 0..samples_per_stratum {
            let a = sample_stratum(label, seed.wrapping_add((k * 1000 + s) as u64))?;
            ranks.push(rank(&jacobian_moment(&a)));
            sigmas.push(sigma_of_matrix(&a));
        }
        let ok = ranks.iter().all(|&r| r == expected_rank) && sigmas.iter().all(|&s| s == label.i);
        strata.push(StratumCheck { i: label.i, q: label.q.clone(), expected_rank, ranks, sigmas, singular: label.i < g, ok });
    }
    let ok = strata.iter().all(|s| s.ok);
    Ok(SmoothnessReport { g, rho_h: lattice.rho_h, strata, ok })
}

/// Stratum index along the segment from `start` to `limit` at
/// `t = k/steps`, `k = 0..=steps`.
pub fn degeneration_path(start: &MumfordMatrix<Rational>, limit: &MumfordMatrix<Rational>, steps: usize) -> Result<Vec<(Rational, usize)>> {
    if start.g() != limit.g() {
        return Err(Error::GenusMismatch { expected: start.g(), got: limit.g() });
    }
    let (za, zb) = (start.coordinates(), limit.coordinates());
    (0..=steps)
        .map(|k| {
            let t = Rational::new(BigInt::from(k), BigInt::from(steps.max(1)));
            let z: Vec<Rational> =
                za.iter().zip(&zb).map(|(a, b)| a * (int(1) - t.clone()) + b * t.clone()).collect();
            let p = MumfordMatrix::from_coordinates(start.g(), &z)?;
            Ok((t, sigma_of_matrix(&p)))
        })
        .collect()
}

/// The limit's index is no larger than any index along the way.
pub fn degenerates_downward(path: &[(Rational, usize)]) -> bool {
    let Some((_, last)) = path.last() else { return true };
    path.iter().all(|(_, i)| i >= last)
}

/// `i` never falls below `g − ρ(h)`.
pub fn respects_emptiness_bound(label: &StratumLabel) -> Result<bool> {
    let rho_h = quadratic_divisors(&label.h)?.rho_h;
    Ok(label.i + rho_h >= label.g)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dynamics::lax::symbolic_moment_map;

    fn p(c: &[i64]) -> P {
        P::from_i64(c)
    }

    fn h2() -> SpectralPoly {
        // x³(x − 1)²
        SpectralPoly::from_i64(&[0, 0, 0, 1, -2, 1]).unwrap()
    }

    #[test]
    fn classify_examples() {
        let a = MumfordMatrix::from_i64(1, &[1, 1], &[1], &[0, 0, 1]).unwrap();
        let h = SpectralPoly::factored(a.moment_map()).unwrap();
        let l = classify(&a, &h).unwrap();
        assert_eq!((l.i, l.q), (1, P::one()));
        let x3 = SpectralPoly::from_i64(&[0, 0, 0, 1]).unwrap();
        let l = classify(&MumfordMatrix::from_i64(1, &[0, 1], &[], &[0, 0, 1]).unwrap(), &x3).unwrap();
        assert_eq!((l.i, l.q), (0, p(&[0, 1])));
        let b = MumfordMatrix::from_i64(2, &[0, -1, 1], &[], &[0, 0, -1, 1]).unwrap();
        let l = classify(&b, &h2()).unwrap();
        assert_eq!((l.i, l.q), (0, p(&[0, -1, 1])));
        assert_eq!(classify(&a, &x3), Err(Error::NotOnFiber));
    }

    #[test]
    fn lattice_examples() {
        let s = enumerate_strata(&h2()).unwrap();
        let got: Vec<(usize, P)> = s.labels.iter().map(|l| (l.i, l.q.clone())).collect();
        assert_eq!(got, vec![(2, p(&[1])), (1, p(&[-1, 1])), (1, p(&[0, 1])), (0, p(&[0, -1, 1]))]);
        assert_eq!(s.coarse_counts, vec![(2, 1), (1, 2), (0, 1)]);
        assert!(s.closure_consistent());
        assert_eq!(s.edges.len(), 4);
        let s = enumerate_strata(&SpectralPoly::from_i64(&[0, 0, 0, 1]).unwrap()).unwrap();
        assert_eq!(s.labels.len(), 2);
        let sq = SpectralPoly::from_i64(&[0, -1, 0, 1]).unwrap();
        assert_eq!(enumerate_strata(&sq).unwrap().labels.len(), 1);
        let bare = SpectralPoly::new(p(&[0, 0, 0, 1])).unwrap();
        assert!(matches!(enumerate_strata(&bare), Err(Error::MissingFactorization(_))));
    }

    #[test]
    fn sampler_round_trips() {
        for h in [h2(), SpectralPoly::from_i64(&[0, 0, 0, 1]).unwrap()] {
            for label in enumerate_strata(&h).unwrap().labels {
                for seed in 0..3 {
                    let a = sample_stratum(&label, seed).unwrap();
                    assert_eq!(classify(&a, &h).unwrap(), label);
                    assert!(respects_emptiness_bound(&label).unwrap());
                }
            }
        }
        let top = StratumLabel::new(&h2(), p(&[0, -1, 1])).unwrap();
        assert_eq!(sample_stratum(&top, 9).unwrap(), MumfordMatrix::from_i64(2, &[0, -1, 1], &[], &[0, 0, -1, 1]).unwrap());
        assert_eq!(sample_stratum(&top, 1).unwrap(), sample_stratum(&top, 2).unwrap());
    }

    #[test]
    fn sampler_is_deterministic_and_reports_exhaustion() {
        // y² = x³ + 1 has the nodes x = 0 and x = 2.
        let h = SpectralPoly::from_i64(&[1, 0, 0, 1]).unwrap();
        let label = StratumLabel::new(&h, P::one()).unwrap();
        assert_eq!(sample_stratum(&label, 5).unwrap(), sample_stratum(&label, 5).unwrap());
        // x³ − 100000 is negative at every candidate node.
        let h = SpectralPoly::new(p(&[-100_000, 0, 0, 1])).unwrap();
        let label = StratumLabel::new(&h, P::one()).unwrap();
        assert!(matches!(sample_stratum(&label, 0), Err(Error::BudgetExhausted { .. })));
    }

    #[test]
    fn float_sampler_lands_on_fiber() {
        let x3 = SpectralPoly::from_i64(&[0, 0, 0, 1]).unwrap();
        let label = StratumLabel::new(&x3, P::one()).unwrap();
        let a = sample_stratum_float(&label, 4).unwrap();
        let hf: Poly<C64> = x3.h().to_field();
        assert!(fiber_contains(&hf, &a, 1e-9).unwrap());
        let root = -a.u().coeff(0);
        assert!((a.v().eval(&root).powi(2) - hf.eval(&root)).norm() <= 1e-9);
        assert_eq!(classify_float(&a, &hf, 1e-9).unwrap(), 1);
    }

    #[test]
    fn decompose_examples() {
        let x3 = SpectralPoly::from_i64(&[0, 0, 0, 1]).unwrap();
        let (q, ap, hp) = decompose_fiber_point(&MumfordMatrix::from_i64(1, &[0, 1], &[], &[0, 0, 1]).unwrap(), &x3).unwrap();
        assert_eq!((q, ap, hp.h().clone()), (p(&[0, 1]), MumfordMatrix::from_i64(0, &[1], &[], &[0, 1]).unwrap(), p(&[0, 1])));
        let label = StratumLabel::new(&h2(), p(&[0, 1])).unwrap();
        let a = sample_stratum(&label, 3).unwrap();
        let (q, ap, hp) = decompose_fiber_point(&a, &h2()).unwrap();
        assert_eq!(hp.h(), &p(&[0, 1, -2, 1]));
        assert_eq!(ap.mu(&q).unwrap(), a);
        assert_eq!(classify(&ap, &hp).unwrap().i, ap.g());
    }

    #[test]
    fn jacobian_examples() {
        let a = MumfordMatrix::from_i64(1, &[0, 1], &[], &[0, 0, 1]).unwrap();
        let j = jacobian_moment(&a);
        let expect = Matrix::from_rows(3, [[0, 0, 1], [0, 0, 0], [0, 1, 0], [0, 0, 1]].iter().map(|r| r.iter().map(|&x| int(x)).collect()).collect()).unwrap();
        assert_eq!(j, expect);
        assert_eq!(rank(&j), 2);
        assert_eq!(rank(&jacobian_moment(&MumfordMatrix::from_i64(1, &[1, 1], &[1], &[0, 0, 1]).unwrap())), 3);
        // Against symbolic differentiation of the h_c.
        let b = MumfordMatrix::from_i64(2, &[3, -1, 1], &[2, 5], &[1, 0, 4, 1]).unwrap();
        let h = symbolic_moment_map(2);
        let jb = jacobian_moment(&b);
        let z = b.coordinates();
        for r in 0..7 {
            for c in 0..5 {
                assert_eq!(&h[c].partial_derivative(r).eval(&z).unwrap(), jb.get(r, c));
            }
        }
    }

    #[test]
    fn smoothness_examples() {
        let r = smoothness_report(&h2(), 2, 0).unwrap();
        assert!(r.ok, "{r:?}");
        let ranks: Vec<usize> = r.strata.iter().map(|s| s.expected_rank).collect();
        assert_eq!(ranks, vec![5, 4, 4, 3]);
        let r = smoothness_report(&SpectralPoly::from_i64(&[1, 0, 0, 1]).unwrap(), 3, 0).unwrap();
        assert!(r.ok && r.strata.iter().all(|s| s.ranks.iter().all(|&k| k == 3)));
    }

    #[test]
    fn degeneration_only_drops() {
        let regular = sample_stratum(&StratumLabel::new(&h2(), P::one()).unwrap(), 0).unwrap();
        let limit = MumfordMatrix::from_i64(2, &[0, -1, 1], &[], &[0, 0, -1, 1]).unwrap();
        let path = degeneration_path(&regular, &limit, 8).unwrap();
        assert_eq!(path.last().unwrap().1, 0);
        assert!(degenerates_downward(&path));
    }
}
