//! How the Lax fields transform under `μ_P`: `D^{g+n}_y` at `P·A` equals
//! `P(y)·P(x)·D^g_y` at `A`.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::algebra::bipoly::BiPoly;
use crate::algebra::field::{frac, Field, Rational};
use crate::algebra::poly::Poly;
use crate::dynamics::lax::{formal_lax_field, lax_field_at, lax_field_i, TangentValue};
use crate::error::{Error, Result};
use crate::mumford::MumfordMatrix;

type P = Poly<Rational>;

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct PushforwardReport {
    pub sampled: usize,
    pub sampled_failures: usize,
    pub formal_ok: bool,
    /// Coefficients of `y^i` compared with `D_i` at `P·A`.
    pub residues: usize,
    pub residue_failures: usize,
    /// For `P = x^n`: `D_{n+i} = x^n·D_i` and `D_k = 0` below `n`.
    pub shift_law: Option<(usize, usize)>,
}

impl PushforwardReport {
    pub fn passed(&self) -> bool {
        self.sampled_failures == 0
            && self.formal_ok
            && self.residue_failures == 0
            && self.shift_law.is_none_or(|(_, bad)| bad == 0)
    }
}

fn times_px(p: &P, d: &TangentValue<Rational>) -> TangentValue<Rational> {
    TangentValue { du: p * &d.du, dv: p * &d.dv, dw: p * &d.dw }
}

/// Checks the transformation law at `trials` random rational `y`, as a
/// formal identity in `x, y`, by `y`-coefficient extraction, and for
/// `P = x^n` the index shift.
pub fn pushforward_identity_check(p: &P, a: &MumfordMatrix<Rational>, trials: usize, seed: u64) -> Result<PushforwardReport> {
    if !p.is_monic() {
        return Err(Error::NotMonic("pushforward needs a monic P"));
    }
    let n = p.degree().unwrap();
    let b = a.mu(p)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut report = PushforwardReport {
        sampled: trials,
        sampled_failures: 0,
        formal_ok: true,
        residues: 0,
        residue_failures: 0,
        shift_law: None,
    };

    for _ in 0..trials {
        let y = frac(rng.gen_range(-30..=30), rng.gen_range(1..=7));
        let lhs = lax_field_at(&b, &y);
        let rhs = times_px(p, &lax_field_at(a, &y)).scale(&p.eval(&y));
        if lhs != rhs {
            report.sampled_failures += 1;
        }
    }

    let scale = &BiPoly::from_y(p) * &BiPoly::from_x(p);
    let lhs = formal_lax_field(&b);
    let rhs = formal_lax_field(a).map(|c| &scale * &c);
    report.formal_ok = lhs == rhs;

    for i in 0..=2 * b.g() {
        report.residues += 1;
        let d = lax_field_i(&b, i);
        if [d.du, d.dv, d.dw] != [rhs[0].coeff_y(i), rhs[1].coeff_y(i), rhs[2].coeff_y(i)] {
            report.residue_failures += 1;
        }
    }

    if *p == P::monomial(Rational::one(), n) {
        let (mut checked, mut bad) = (0, 0);
        for k in 0..n {
            checked += 1;
            bad += usize::from(!lax_field_i(&b, k).is_zero());
        }
        for i in 0..a.g() {
            checked += 1;
            bad += usize::from(lax_field_i(&b, n + i) != times_px(p, &lax_field_i(a, i)));
        }
        report.shift_law = Some((checked, bad));
    }
    Ok(report)
}
