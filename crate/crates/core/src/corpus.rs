//! Seeded generators of test inputs: polynomial tuples with a planted common
//! factor, factored monic polynomials, and points of `M_g` with prescribed `ρ`.

use rand::Rng;

use crate::algebra::field::{frac, int, Rational};
use crate::algebra::poly::Poly;
use crate::mumford::{rho_of_matrix, MumfordMatrix};

type P = Poly<Rational>;

fn small_rational<R: Rng>(rng: &mut R) -> Rational {
    frac(rng.gen_range(-9..=9), rng.gen_range(1..=4))
}

/// A random polynomial of exact degree `d` with small rational coefficients.
pub fn random_poly<R: Rng>(rng: &mut R, d: usize, monic: bool) -> P {
    let mut c: Vec<Rational> = (0..d).map(|_| small_rational(rng)).collect();
    let lead = if monic {
        int(1)
    } else {
        frac(rng.gen_range(1..=5) * if rng.gen_bool(0.5) { 1 } else { -1 }, rng.gen_range(1..=3))
    };
    c.push(lead);
    P::new(c)
}

/// Monic product of linear factors with small integer roots (repeats allowed).
pub fn random_split_monic<R: Rng>(rng: &mut R, d: usize) -> P {
    let roots: Vec<Rational> = (0..d).map(|_| int(rng.gen_range(-3..=3))).collect();
    P::from_roots(&roots)
}

/// `k` polynomials of degree at most `max_deg` sharing a planted factor;
/// the first is monic. Nonzero, with the others possibly zero-free.
pub fn random_tuple<R: Rng>(rng: &mut R, k: usize, max_deg: usize) -> Vec<P> {
    let common_deg = rng.gen_range(0..=max_deg / 2);
    let common = if rng.gen_bool(0.5) {
        random_split_monic(rng, common_deg)
    } else {
        random_poly(rng, common_deg, true)
    };
    (0..k)
        .map(|n| {
            let d = rng.gen_range(0..=max_deg - common_deg);
            let d = if n == 0 { d.max(1) } else { d };
            &common * &random_poly(rng, d, n == 0)
        })
        .collect()
}

/// A monic polynomial `Π (x − α)^m` together with its roots and multiplicities.
pub fn random_factored_monic<R: Rng>(rng: &mut R, max_roots: usize, max_mult: usize) -> (P, Vec<(Rational, usize)>) {
    let mut roots: Vec<(Rational, usize)> = Vec::new();
    for _ in 0..rng.gen_range(1..=max_roots) {
        let a = small_rational(rng);
        if roots.iter().all(|r| r.0 != a) {
            roots.push((a, rng.gen_range(1..=max_mult)));
        }
    }
    let p = roots.iter().fold(P::one(), |acc, (a, m)| &acc * &P::new(vec![-a.clone(), int(1)]).pow(*m));
    (p, roots)
}

/// A point of `M_g` with `ρ = rho`: a regular point of `M_{g−ρ}` multiplied
/// by a split monic polynomial of degree `ρ`.
pub fn random_point<R: Rng>(rng: &mut R, g: usize, rho: usize) -> MumfordMatrix<Rational> {
    assert!(rho <= g);
    let q = random_split_monic(rng, rho);
    let k = g - rho;
    loop {
        let z: Vec<Rational> = (0..3 * k + 1).map(|_| int(rng.gen_range(-4..=4))).collect();
        let a = MumfordMatrix::from_coordinates(k, &z).expect("coordinates have the right count");
        if rho_of_matrix(&a).map(|r| r.0) == Ok(0) {
            return a.mu(&q).expect("split polynomials are monic");
        }
    }
}

/// `n` points cycling through `g ∈ {1, 2, 3}` and every `ρ ≤ g`.
pub fn point_corpus<R: Rng>(rng: &mut R, n: usize) -> Vec<MumfordMatrix<Rational>> {
    let shapes: Vec<(usize, usize)> = (1..=3).flat_map(|g| (0..=g).map(move |r| (g, r))).collect();
    (0..n).map(|k| {
        let (g, r) = shapes[k % shapes.len()];
        random_point(rng, g, r)
    })
    .collect()
}
