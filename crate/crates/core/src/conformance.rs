//! Seeded conformance checks, one per theorem tag, grouped into suites.
//! Failures are report content; nothing here panics on a failed check.

use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::algebra::field::{int, Field, Rational};
use crate::algebra::poly::Poly;
use crate::corpus::{point_corpus, random_factored_monic, random_point, random_split_monic, random_tuple};
use crate::dynamics::lax::{sigma_of_matrix, symbolic_field, symbolic_moment_map};
use crate::dynamics::poisson::PoissonStructure;
use crate::dynamics::pushforward::pushforward_identity_check;
use crate::error::{Error, Result};
use crate::linalg::{confluent_vandermonde_kernel, independent, kernel_dim, rank};
use crate::mumford::{rho_of_matrix, MumfordMatrix, SpectralPoly};
use crate::resultants::{
    build_mult_matrix, chain_threshold, euclid_gcd_all, gcd_degree_multi, gcd_degree_pair, subresultant_sequence,
};
use crate::strata::{classify, decompose_fiber_point, enumerate_strata, jacobian_moment, respects_emptiness_bound, sample_stratum};

type P = Poly<Rational>;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Suite {
    All,
    Resultants,
    Poisson,
    Strata,
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "all" => Ok(Suite::All),
            "resultants" => Ok(Suite::Resultants),
            "poisson" => Ok(Suite::Poisson),
            "strata" => Ok(Suite::Strata),
            _ => Err(Error::InvalidArgument(format!("unknown suite {s:?}"))),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct TagResult {
    pub tag: &'static str,
    pub checks: usize,
    pub failures: usize,
    /// First few failing cases, for diagnosis.
    pub examples: Vec<String>,
    pub passed: bool,
}

impl TagResult {
    fn new(tag: &'static str) -> Self {
        TagResult { tag, checks: 0, failures: 0, examples: Vec::new(), passed: true }
    }

    fn record(&mut self, ok: bool, what: impl FnOnce() -> String) {
        self.checks += 1;
        if !ok {
            self.failures += 1;
            self.passed = false;
            if self.examples.len() < 3 {
                self.examples.push(what());
            }
        }
    }

    /// Counts an error as a failed check.
    fn record_result(&mut self, r: Result<bool>, what: impl FnOnce() -> String) {
        match r {
            Ok(ok) => self.record(ok, what),
            Err(e) => self.record(false, || format!("{}: {e}", what())),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ConformanceReport {
    pub suite: Suite,
    pub seed: u64,
    pub results: Vec<TagResult>,
    pub passed: bool,
}

fn rng(seed: u64, stream: u64) -> ChaCha8Rng {
    let mut r = ChaCha8Rng::seed_from_u64(seed);
    r.set_stream(stream);
    r
}

/// Pairs of degree ≤ 8: the Sylvester kernel dimension (`d0`) and the first
/// nonzero subresultant (`rp`) against Euclid.
pub fn check_pairs(seed: u64, n: usize) -> [TagResult; 2] {
    let mut rng = rng(seed, 1);
    let (mut d0, mut rp) = (TagResult::new("d0"), TagResult::new("rp"));
    for _ in 0..n {
        let t = random_tuple(&mut rng, 2, 8);
        let (p, q) = (&t[0], &t[1]);
        let oracle = p.gcd(q).expect("p is nonzero");
        let d = oracle.degree().unwrap();
        d0.record_result(gcd_degree_pair(p, q).map(|k| k == d), || format!("P = {p}, Q = {q}"));
        rp.record_result(
            subresultant_sequence(p, q).map(|s| s.first_nonzero == d && s.gcd_candidate == oracle),
            || format!("P = {p}, Q = {q}"),
        );
    }
    [d0, rp]
}

/// Triples and quadruples of degree ≤ 6: the stacked-matrix kernel
/// (`thPG`) against folded Euclid, and for triples the resultant chain
/// threshold (`oK`).
pub fn check_tuples(seed: u64, n: usize) -> [TagResult; 2] {
    let mut rng = rng(seed, 2);
    let (mut th, mut ok) = (TagResult::new("thPG"), TagResult::new("oK"));
    for k in 0..n {
        let mut t = random_tuple(&mut rng, 3 + k % 2, 6);
        let oracle = euclid_gcd_all(&t).expect("tuple is nonzero").degree().unwrap();
        th.record_result(gcd_degree_multi(&t, None).map(|d| d == oracle), || format!("{t:?}"));
        if t.len() == 3 {
            t[2] = t[2].monic().expect("nonzero");
            ok.record_result(chain_threshold(&t[0], &t[1], &t[2]).map(|i| i == oracle), || format!("{t:?}"));
        }
    }
    [th, ok]
}

/// Confluent Vandermonde vectors span the kernel of `M_{P,l}`.
pub fn check_kernels(seed: u64, n: usize) -> TagResult {
    let mut rng = rng(seed, 3);
    let mut r = TagResult::new("dim");
    for _ in 0..n {
        let (p, roots) = random_factored_monic(&mut rng, 3, 3);
        let l = rng.gen_range(1..=4);
        let d = p.degree().unwrap();
        let ok = (|| {
            let m = build_mult_matrix(&p, l)?;
            let basis = confluent_vandermonde_kernel(&roots, l)?;
            let annihilated = basis.iter().all(|v| m.mul_vec(v).iter().all(Field::is_zero));
            Ok(annihilated && basis.len() == d && independent(&basis) && kernel_dim(&m) == d)
        })();
        r.record_result(ok, || format!("P = {p}, l = {l}"));
    }
    r
}

/// Jacobi identity and antisymmetry for the standard, second and sum
/// structures.
pub fn check_jacobi(genera: &[usize]) -> TagResult {
    let mut r = TagResult::new("jacobi");
    for &g in genera {
        let std = PoissonStructure::standard(g);
        let star = PoissonStructure::star(g);
        let sum = std.sum(&star).expect("same genus");
        for (name, s) in [("standard", &std), ("star", &star), ("sum", &sum)] {
            r.record(s.is_antisymmetric(), || format!("{name} g = {g}: not antisymmetric"));
            match s.jacobi_failures() {
                Ok(bad) => r.record(bad.is_empty(), || format!("{name} g = {g}: triples {bad:?}")),
                Err(e) => r.record(false, || format!("{name} g = {g}: {e}")),
            }
        }
    }
    r
}

/// `D_i` is the Hamiltonian field of `h_i`, the `h_i` commute, and every
/// `D_i` is tangent to the fibers.
pub fn check_lax(genera: &[usize]) -> TagResult {
    let mut r = TagResult::new("lax");
    for &g in genera {
        let std = PoissonStructure::standard(g);
        let h = symbolic_moment_map(g);
        for i in 0..g {
            let d = symbolic_field(g, i).expect("i < g");
            r.record_result(std.hamiltonian_field(&h[i]).map(|x| x.components == d.components), || {
                format!("g = {g}: D_{i} differs from X_h{i}")
            });
            for (j, hj) in h.iter().enumerate().take(2 * g + 1) {
                r.record_result(d.lie_derivative(hj).map(|t| t.is_zero()), || format!("g = {g}: D_{i} h_{j} != 0"));
            }
        }
        for i in 0..=2 * g {
            for j in i + 1..=2 * g {
                r.record_result(std.bracket(&h[i], &h[j]).map(|b| b.is_zero()), || format!("g = {g}: {{h_{i}, h_{j}}} != 0"));
            }
        }
    }
    r
}

/// On a seeded corpus: regular iff `σ = g` (`theo1`), `σ = g − ρ`
/// (`prop1`), and `rank J_H = 2g + 1 − ρ` (`PG`).
pub fn check_corpus(seed: u64, n: usize) -> [TagResult; 3] {
    let mut rng = rng(seed, 4);
    let (mut theo1, mut prop1, mut pg) = (TagResult::new("theo1"), TagResult::new("prop1"), TagResult::new("PG"));
    for a in point_corpus(&mut rng, n) {
        let g = a.g();
        let rho = match rho_of_matrix(&a) {
            Ok((rho, _)) => rho,
            Err(e) => {
                prop1.record(false, || format!("{a}: {e}"));
                continue;
            }
        };
        let sigma = sigma_of_matrix(&a);
        theo1.record((rho == 0) == (sigma == g), || format!("{a}: rho {rho}, sigma {sigma}"));
        prop1.record(sigma + rho == g, || format!("{a}: rho {rho}, sigma {sigma}"));
        let rk = rank(&jacobian_moment(&a));
        pg.record(rk + rho == 2 * g + 1, || format!("{a}: rank {rk}, rho {rho}"));
    }
    let x = MumfordMatrix::from_i64(1, &[0, 1], &[], &[0, 0, 1]).unwrap();
    let rk = rank(&jacobian_moment(&x));
    pg.record(rk == 2, || format!("(x, 0, x²): rank {rk}"));
    [theo1, prop1, pg]
}

/// Transformation of `D_y` under `μ_P` on seeded pairs; every third `P` is
/// a power of `x` so the shift law is exercised.
pub fn check_pushforward(seed: u64, n: usize) -> TagResult {
    let mut rng = rng(seed, 5);
    let mut r = TagResult::new("lem1");
    for k in 0..n {
        let g = rng.gen_range(1..=2);
        let rho = rng.gen_range(0..=g);
        let a = random_point(&mut rng, g, rho);
        let deg = rng.gen_range(1..=2);
        let p = if k % 3 == 0 { P::monomial(int(1), deg) } else { random_split_monic(&mut rng, deg) };
        let sub = rng.gen();
        r.record_result(pushforward_identity_check(&p, &a, 4, sub).map(|rep| rep.passed()), || format!("P = {p}, A = {a}"));
    }
    r
}

/// Stratum fixtures: each label is non-empty and round-trips (`p@`), and
/// each sample factors as `μ_Q` of a regular point on the reduced fiber
/// (`t43`).
pub fn check_strata(seed: u64, fixtures: &[SpectralPoly]) -> [TagResult; 2] {
    let (mut pat, mut t43) = (TagResult::new("p@"), TagResult::new("t43"));
    for (n, h) in fixtures.iter().enumerate() {
        let lattice = match enumerate_strata(h) {
            Ok(l) => l,
            Err(e) => {
                pat.record(false, || format!("h = {}: {e}", h.h()));
                continue;
            }
        };
        let coarse: usize = lattice.coarse_counts.len();
        pat.record(coarse == lattice.rho_h + 1 && lattice.closure_consistent(), || {
            format!("h = {}: coarse counts {:?}", h.h(), lattice.coarse_counts)
        });
        for (k, label) in lattice.labels.iter().enumerate() {
            let what = || format!("h = {}, Q = {}", h.h(), label.q);
            let sampled = sample_stratum(label, seed.wrapping_add((n * 100 + k) as u64));
            let a = match sampled {
                Ok(a) => a,
                Err(e) => {
                    pat.record(false, || format!("{}: {e}", what()));
                    continue;
                }
            };
            pat.record_result(
                classify(&a, h).and_then(|l| Ok(l == *label && respects_emptiness_bound(&l)?)),
                what,
            );
            t43.record_result(
                decompose_fiber_point(&a, h).and_then(|(q, ap, hp)| {
                    Ok(q == label.q && rho_of_matrix(&ap)?.0 == 0 && ap.mu(&q)? == a && ap.moment_map() == *hp.h())
                }),
                what,
            );
        }
    }
    [pat, t43]
}

/// `x³` and `x³(x−1)²`.
pub fn strata_fixtures() -> Vec<SpectralPoly> {
    vec![
        SpectralPoly::from_i64(&[0, 0, 0, 1]).unwrap(),
        SpectralPoly::from_i64(&[0, 0, 0, 1, -2, 1]).unwrap(),
    ]
}

fn suite_results(suite: Suite, seed: u64) -> Vec<TagResult> {
    match suite {
        Suite::Resultants => {
            let mut out: Vec<TagResult> = check_pairs(seed, 100).into();
            out.extend(check_tuples(seed, 60));
            out.push(check_kernels(seed, 40));
            out
        }
        Suite::Poisson => {
            vec![check_jacobi(&[1, 2, 3]), check_lax(&[1, 2]), check_pushforward(seed, 20)]
        }
        Suite::Strata => {
            let mut out: Vec<TagResult> = check_corpus(seed, 60).into();
            out.extend(check_strata(seed, &strata_fixtures()));
            out
        }
        Suite::All => std::thread::scope(|s| {
            let handles: Vec<_> = [Suite::Resultants, Suite::Poisson, Suite::Strata]
                .into_iter()
                .map(|sub| s.spawn(move || suite_results(sub, seed)))
                .collect();
            handles.into_iter().flat_map(|h| h.join().expect("suite thread panicked")).collect()
        }),
    }
}

pub fn run_verify(suite: Suite, seed: u64) -> ConformanceReport {
    let results = suite_results(suite, seed);
    let passed = results.iter().all(|r| r.passed);
    ConformanceReport { suite, seed, results, passed }
}
