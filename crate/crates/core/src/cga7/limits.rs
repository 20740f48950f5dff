//! Behaviour of the squared interval near the two infinities.
//!
//! The exact model sets `∞₊², ∞₋², ∞₊·∞₋` to zero. Here they are replaced by
//! a small parameter δ,
//!
//! ```text
//! ∞₊² = −δ², ∞₋² = +δ², ∞₊·∞₋ = +δ,
//! ```
//!
//! and the interval `d² = 2(P·Q)/((P·∞₊)(Q·∞₋))` is evaluated against each
//! infinity. With these signs `d²(P, ∞₊) ≈ +2/δ` and `d²(P, ∞₋) ≈ −2/δ²`.

use serde::Serialize;

use super::{Event, GAMMA_METRIC};
use crate::algebra::Algebra;
use crate::error::{Error, Result};
use crate::multivector::Multivector;

const O: usize = 4;
const INF_PLUS: usize = 5;
const INF_MINUS: usize = 6;

/// Gram of `γ0..γ3, O, ∞₊, ∞₋` with the infinities regularized by `delta`.
pub fn delta_gram(delta: f64) -> Vec<Vec<f64>> {
    let mut g = vec![vec![0.0; 7]; 7];
    for (i, m) in GAMMA_METRIC.iter().enumerate() {
        g[i][i] = *m;
    }
    g[O][INF_PLUS] = 1.0;
    g[INF_PLUS][O] = 1.0;
    g[O][INF_MINUS] = -1.0;
    g[INF_MINUS][O] = -1.0;
    g[INF_PLUS][INF_PLUS] = -delta * delta;
    g[INF_MINUS][INF_MINUS] = delta * delta;
    g[INF_PLUS][INF_MINUS] = delta;
    g[INF_MINUS][INF_PLUS] = delta;
    g
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct LimitRow {
    pub delta: f64,
    pub d2_event_plus: f64,
    pub d2_event_minus: f64,
    pub d2_plus_minus: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct LimitReport {
    pub probe: Event,
    pub rows: Vec<LimitRow>,
    /// Fitted exponent `k` in `|d²| ~ δ^(−k)`; `None` for a single δ.
    pub order_event_plus: Option<f64>,
    pub order_event_minus: Option<f64>,
    pub order_plus_minus: Option<f64>,
    /// All rows positive with magnitude growing as δ shrinks.
    pub event_plus_diverges_positive: bool,
    /// All rows negative with magnitude growing as δ shrinks.
    pub event_minus_diverges_negative: bool,
    /// Sign of `d²(∞₊, ∞₋)` at the smallest δ; reported, not asserted.
    pub plus_minus_sign: i8,
}

pub fn infinity_limit_diagnostics(deltas: &[f64]) -> Result<LimitReport> {
    infinity_limit_diagnostics_at(deltas, Event::new(0.5, 0.25, -0.75, 1.0))
}

pub fn infinity_limit_diagnostics_at(deltas: &[f64], probe: Event) -> Result<LimitReport> {
    if deltas.is_empty()
        || deltas.iter().any(|d| !(d.is_finite() && *d > 0.0))
        || deltas.windows(2).any(|w| w[1] >= w[0])
    {
        return Err(Error::NonMonotoneDeltas);
    }
    if !probe.is_finite() {
        return Err(Error::NonFinite);
    }
    let rows = deltas.iter().map(|&d| evaluate(d, probe)).collect::<Result<Vec<_>>>()?;
    let fit = |f: fn(&LimitRow) -> f64| fit_order(&rows, f);
    let growing = |f: fn(&LimitRow) -> f64| rows.windows(2).all(|w| f(&w[1]).abs() > f(&w[0]).abs());
    let last = rows.last().expect("non-empty");
    Ok(LimitReport {
        probe,
        order_event_plus: fit(|r| r.d2_event_plus),
        order_event_minus: fit(|r| r.d2_event_minus),
        order_plus_minus: fit(|r| r.d2_plus_minus),
        event_plus_diverges_positive: rows.iter().all(|r| r.d2_event_plus > 0.0) && growing(|r| r.d2_event_plus),
        event_minus_diverges_negative: rows.iter().all(|r| r.d2_event_minus < 0.0) && growing(|r| r.d2_event_minus),
        plus_minus_sign: last.d2_plus_minus.signum() as i8,
        rows,
    })
}

fn evaluate(delta: f64, probe: Event) -> Result<LimitRow> {
    let names = ["g0", "g1", "g2", "g3", "o", "inf_plus", "inf_minus"].map(String::from).to_vec();
    // No pruning: δ² is far below the default prune epsilon.
    let alg = Algebra::build(delta_gram(delta), names, 0.0)?;
    let inf_p = Multivector::basis_vector(&alg, INF_PLUS);
    let inf_m = Multivector::basis_vector(&alg, INF_MINUS);
    let omega_inf = (&inf_m - &inf_p).scale(0.5);
    let [t, x, y, z] = probe.0;
    let event = &Multivector::vector(&alg, &[t, x, y, z, 1.0]) + &omega_inf.scale(0.5 * probe.minkowski_sq());
    let d2 = |p: &Multivector, q: &Multivector| {
        let pq = (p | q).scalar_part();
        2.0 * pq / ((p | &inf_p).scalar_part() * (q | &inf_m).scalar_part())
    };
    Ok(LimitRow {
        delta,
        d2_event_plus: d2(&event, &inf_p),
        d2_event_minus: d2(&event, &inf_m),
        d2_plus_minus: d2(&inf_p, &inf_m),
    })
}

/// Least-squares slope of `log|d²|` against `log(1/δ)`.
fn fit_order(rows: &[LimitRow], f: fn(&LimitRow) -> f64) -> Option<f64> {
    if rows.len() < 2 {
        return None;
    }
    let pts: Vec<(f64, f64)> = rows.iter().map(|r| (-r.delta.ln(), f(r).abs().ln())).collect();
    let n = pts.len() as f64;
    let mx = pts.iter().map(|p| p.0).sum::<f64>() / n;
    let my = pts.iter().map(|p| p.1).sum::<f64>() / n;
    let sxy: f64 = pts.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    let sxx: f64 = pts.iter().map(|p| (p.0 - mx).powi(2)).sum();
    Some(sxy / sxx)
}
