//! Hand-checked values, cross-checked against an independent computer
//! algebra system, exercised through the public API.

use mumford_core::algebra::{lagrange_interpolate, squarefree_decomposition};
use mumford_core::dynamics::lax::{lax_field_at, lax_field_i, symbolic_field, symbolic_moment_map};
use mumford_core::dynamics::PoissonStructure;
use mumford_core::linalg::{rank, Matrix};
use mumford_core::mumford::{regular_part, rho_of_matrix, MumfordMatrix, SpectralPoly};
use mumford_core::resultants::{gcd_degree_multi, gcd_degree_pair, resultant, subresultant_sequence, sylvester};
use mumford_core::strata::{classify, decompose_fiber_point, jacobian_moment, smoothness_report};
use mumford_core::{int, MPoly, Poly, Rational};

type P = Poly<Rational>;

fn p(c: &[i64]) -> P {
    P::from_i64(c)
}

fn m(g: usize, u: &[i64], v: &[i64], w: &[i64]) -> MumfordMatrix<Rational> {
    MumfordMatrix::from_i64(g, u, v, w).unwrap()
}

fn mat(rows: &[&[i64]]) -> Matrix<Rational> {
    Matrix::from_rows(rows[0].len(), rows.iter().map(|r| r.iter().map(|&x| int(x)).collect()).collect()).unwrap()
}

#[test]
fn interpolation_and_squarefree_parts() {
    let pts = [(int(0), int(0)), (int(1), int(1)), (int(2), int(8))];
    assert_eq!(lagrange_interpolate(&pts).unwrap(), p(&[0, -2, 3]));
    let sq = squarefree_decomposition(&p(&[16, -32, 24, -8, 1])).unwrap();
    assert_eq!(sq, vec![(p(&[-2, 1]), 4)]);
}

#[test]
fn sylvester_and_gcd_degrees() {
    let s = sylvester(&p(&[-1, 0, 1]), &p(&[-1, 1]), 1).unwrap();
    assert_eq!(s, mat(&[&[-1, 0, 1], &[-1, 1, 0], &[0, -1, 1]]));
    assert_eq!(rank(&s), 2);
    assert_eq!(gcd_degree_pair(&p(&[-8, 12, -6, 1]), &p(&[4, 0, -3, 1])).unwrap(), 2);
    assert_eq!(resultant(&p(&[1, 0, 1]), &p(&[0, 1])).unwrap(), int(1));
    let s = subresultant_sequence(&p(&[-1, 3, -3, 1]), &p(&[3, -6, 3])).unwrap();
    assert_eq!((s.first_nonzero, s.gcd_candidate), (2, p(&[1, -2, 1])));

    let h = p(&[0, 0, 0, 1, -2, 1]);
    assert_eq!(gcd_degree_multi(&[h, p(&[0, -1, 1]), p(&[0, 0, 1, -2, 1])], None).unwrap(), 2);
    assert_eq!(gcd_degree_multi(&[p(&[0, 0, 1]), p(&[0, 1]), p(&[0, 0, 0, 1])], None).unwrap(), 1);
}

#[test]
fn genus_one_moment_map_and_lax_field() {
    // u = x + 2, v = 3, w = x² + 5x + 7 (u0 = 2, v0 = 3, w1 = 5, w0 = 7).
    let a = m(1, &[2, 1], &[3], &[7, 5, 1]);
    // x³ + (u0+w1)x² + (u0w1+w0)x + (u0w0+v0²)
    assert_eq!(a.moment_map(), p(&[23, 17, 7, 1]));
    let d = lax_field_at(&a, &int(0));
    assert_eq!(d.du, p(&[6]));
    assert_eq!(d.dv, p(&[2 * 5 - 4 - 7]));
    assert_eq!(d.dw, p(&[-6 * (5 - 2), -6]));
    assert_eq!(lax_field_i(&a, 0), d);

    let x = symbolic_field(1, 0).unwrap();
    let (u0, v0) = (x.vars.index_of("u0").unwrap(), x.vars.index_of("v0").unwrap());
    assert_eq!(*x.component("u0").unwrap(), MPoly::var(&x.vars, v0).scale(&int(2)));
    let std = PoissonStructure::standard(1);
    let h0 = &symbolic_moment_map(1)[0];
    let xh = std.hamiltonian_field(h0).unwrap();
    assert_eq!(xh.components[u0], *x.component("u0").unwrap());
    assert_eq!(*xh.component("w1").unwrap(), MPoly::var(&x.vars, v0).scale(&int(-2)));
}

#[test]
fn non_regular_points() {
    let x = m(1, &[0, 1], &[], &[0, 0, 1]);
    assert_eq!(rho_of_matrix(&x).unwrap(), (1, p(&[0, 1])));
    assert!(lax_field_i(&x, 0).is_zero());
    assert_eq!(regular_part(&x).unwrap(), (p(&[0, 1]), m(0, &[1], &[], &[0, 1])));

    let y = m(2, &[0, -1, 1], &[], &[0, 0, -1, 1]);
    assert_eq!(rho_of_matrix(&y).unwrap(), (2, p(&[0, -1, 1])));
    let h = SpectralPoly::from_i64(&[0, 0, 0, 1, -2, 1]).unwrap();
    let (q, ap, hp) = decompose_fiber_point(&y, &h).unwrap();
    assert_eq!((q, ap, hp.h().clone()), (p(&[0, -1, 1]), m(0, &[1], &[], &[0, 1]), p(&[0, 1])));
    let label = classify(&y, &h).unwrap();
    assert_eq!((label.i, label.q), (0, p(&[0, -1, 1])));
}

#[test]
fn jacobian_rows_and_ranks() {
    let j = jacobian_moment(&m(1, &[0, 1], &[], &[0, 0, 1]));
    assert_eq!(j, mat(&[&[0, 0, 1], &[0, 0, 0], &[0, 1, 0], &[0, 0, 1]]));
    assert_eq!(rank(&j), 2);
    assert_eq!(rank(&jacobian_moment(&m(1, &[1, 1], &[1], &[0, 0, 1]))), 3);
    assert_eq!(rank(&jacobian_moment(&m(2, &[0, -1, 1], &[], &[0, 0, -1, 1]))), 3);

    let r = smoothness_report(&SpectralPoly::from_i64(&[0, 0, 0, 1, -2, 1]).unwrap(), 2, 9).unwrap();
    assert!(r.ok);
    let ranks: Vec<usize> = r.strata.iter().map(|s| s.expected_rank).collect();
    assert_eq!(ranks, vec![5, 4, 4, 3]);
}
