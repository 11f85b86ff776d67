//! Fixed-step RK4 integration of a Lax field `D_i`, with a report on how
//! well the invariants `h_j` are conserved.

use serde::Serialize;

use crate::algebra::field::C64;
use crate::dynamics::lax::lax_field_i;
use crate::error::{Error, Result};
use crate::json::ComplexPointJson;
use crate::mumford::MumfordMatrix;

#[derive(Clone, Debug, Serialize)]
pub struct FlowReport {
    pub g: usize,
    pub i: usize,
    pub t_final: f64,
    pub dt: f64,
    pub steps: usize,
    /// `h_0..h_{2g}` at the start (real parts).
    pub h_initial: Vec<f64>,
    /// `max_t |h_j(t) − h_j(0)|` per `j`.
    pub max_abs_drift: Vec<f64>,
    /// `max_{t,j} |h_j(t) − h_j(0)| / max(1, |h_j(0)|)`.
    pub max_rel_drift: f64,
    #[serde(skip)]
    pub final_point: MumfordMatrix<C64>,
    #[serde(rename = "final_point")]
    final_json: ComplexPointJson,
}

fn field(g: usize, i: usize, z: &[C64]) -> Result<Vec<C64>> {
    let a = MumfordMatrix::from_coordinates(g, z)?;
    Ok(lax_field_i(&a, i).flatten(g))
}

fn axpy(z: &[C64], k: &[C64], h: f64) -> Vec<C64> {
    z.iter().zip(k).map(|(a, b)| a + b * h).collect()
}

fn invariants(g: usize, z: &[C64]) -> Result<Vec<C64>> {
    let h = MumfordMatrix::from_coordinates(g, z)?.moment_map();
    Ok((0..=2 * g).map(|j| h.coeff(j)).collect())
}

/// Integrates `dz/dt = D_i(z)` from `a` over `[0, t_final]` with step `dt`
/// (the last step is shortened to land on `t_final`).
pub fn flow_integrate(a: &MumfordMatrix<C64>, i: usize, t_final: f64, dt: f64) -> Result<FlowReport> {
    let g = a.g();
    if i >= g {
        return Err(Error::InvalidArgument(format!("field index {i} needs i < g = {g}")));
    }
    if !(dt.is_finite() && dt > 0.0) || !(t_final.is_finite() && t_final >= 0.0) {
        return Err(Error::InvalidArgument("dt must be positive and t_final non-negative, both finite".into()));
    }
    if dt < 1e-12 * t_final.max(1.0) {
        return Err(Error::Numerical(format!("step {dt} underflows against t = {t_final}")));
    }
    let steps = (t_final / dt - 1e-9).ceil().max(0.0) as usize;
    let mut z = a.coordinates();
    let h0 = invariants(g, &z)?;
    let mut drift = vec![0.0f64; h0.len()];
    let mut t = 0.0;
    for _ in 0..steps {
        let h = dt.min(t_final - t);
        let k1 = field(g, i, &z)?;
        let k2 = field(g, i, &axpy(&z, &k1, h / 2.0))?;
        let k3 = field(g, i, &axpy(&z, &k2, h / 2.0))?;
        let k4 = field(g, i, &axpy(&z, &k3, h))?;
        for (n, zn) in z.iter_mut().enumerate() {
            *zn += (k1[n] + k2[n] * 2.0 + k3[n] * 2.0 + k4[n]) * (h / 6.0);
        }
        if z.iter().any(|c| !c.re.is_finite() || !c.im.is_finite()) {
            return Err(Error::Numerical(format!("non-finite coordinates at t = {t}")));
        }
        t += h;
        for (d, (now, start)) in drift.iter_mut().zip(invariants(g, &z)?.iter().zip(&h0)) {
            *d = d.max((now - start).norm());
        }
    }
    let max_rel_drift = drift.iter().zip(&h0).map(|(d, h)| d / h.norm().max(1.0)).fold(0.0, f64::max);
    let final_point = MumfordMatrix::from_coordinates(g, &z)?;
    Ok(FlowReport {
        g,
        i,
        t_final,
        dt,
        steps,
        h_initial: h0.iter().map(|c| c.re).collect(),
        max_abs_drift: drift,
        max_rel_drift,
        final_json: ComplexPointJson::from_point(&final_point),
        final_point,
    })
}
