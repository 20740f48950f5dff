//! Versor kinematics of a charged particle in a constant electromagnetic field.
//!
//! The proper velocity is carried by a rotor, `u(τ) = R u0 R̃`, and the field
//! bivector `F` absorbs the charge-to-mass ratio. Two rotor equations are
//! offered: the standard `Ṙ = ½ F R`, which reproduces `u̇ = F·u` with
//! `F·u = ½(Fu − uF)`, and the commutator form `Ṙ = ½(RF − FR)`, which
//! leaves `R = 1` fixed for every field.

use std::io::{self, Write};

use serde::{Deserialize, Serialize};

use crate::cga7::{Event, SpacetimeModel};
use crate::error::{Error, Result};
use crate::multivector::{exp_bivector, Multivector};

const GAMMA_MASK: u32 = 0b1111;
const ROTOR_TOL: f64 = 1e-9;
const SIMPSON_TOL: f64 = 1e-10;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum RotorForm {
    /// `Ṙ = ½ F R`.
    #[default]
    Standard,
    /// `Ṙ = ½ [R, F] = ½(RF − FR)`.
    Commutator,
}

/// Electromagnetic field as a bivector over `γ0..γ3`.
#[derive(Debug, Clone, PartialEq)]
pub struct FieldBivector(Multivector);

impl FieldBivector {
    pub fn new(b: Multivector) -> Result<Self> {
        if !b.is_grade(2) {
            return Err(Error::WrongGrade { expected: 2 });
        }
        if b.terms().any(|(m, _)| m & !GAMMA_MASK != 0) {
            return Err(Error::WrongSupport("g0, g1, g2, g3"));
        }
        Ok(FieldBivector(b))
    }

    /// `Σ c γ_i γ_j` over `(i, j, c)` with `i ≠ j`.
    pub fn from_pairs(model: &SpacetimeModel, pairs: &[(usize, usize, f64)]) -> Result<Self> {
        let mut f = Multivector::zero(model.algebra());
        for &(i, j, c) in pairs {
            if i == j || i > 3 || j > 3 {
                return Err(Error::WrongSupport("g0, g1, g2, g3"));
            }
            f = &f + &(&model.gamma(i) * &model.gamma(j)).scale(c);
        }
        Self::new(f)
    }

    pub fn as_multivector(&self) -> &Multivector {
        &self.0
    }

    /// `F·u = ½(Fu − uF)`.
    pub fn act(&self, u: &Multivector) -> Result<Multivector> {
        self.0.commutator(u)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct KinematicState {
    pub tau: f64,
    pub rotor: Multivector,
    pub velocity: Multivector,
    pub position: Event,
}

fn check_rotor(r: &Multivector) -> Result<()> {
    if !r.is_even() || r.terms().any(|(m, _)| m & !GAMMA_MASK != 0) {
        return Err(Error::NotEven);
    }
    Ok(())
}

fn check_velocity(u0: &Multivector) -> Result<()> {
    if !u0.is_grade(1) || u0.terms().any(|(m, _)| m & !GAMMA_MASK != 0) {
        return Err(Error::WrongSupport("g0, g1, g2, g3"));
    }
    let n = (u0 | u0).scalar_part();
    if (n - 1.0).abs() > ROTOR_TOL {
        return Err(Error::NotUnitTimelike(n));
    }
    Ok(())
}

/// Right-hand side of the selected rotor equation.
pub fn lorentz_rhs(rotor: &Multivector, field: &FieldBivector, form: RotorForm) -> Result<Multivector> {
    check_rotor(rotor)?;
    let f = field.as_multivector();
    match form {
        RotorForm::Standard => Ok(f.gp(rotor)?.scale(0.5)),
        RotorForm::Commutator => rotor.commutator(f),
    }
}

fn sandwich(r: &Multivector, u0: &Multivector) -> Multivector {
    (&(r * u0) * &r.reverse()).grade_part(1)
}

fn event_of(v: &Multivector) -> Event {
    Event([v.get(1), v.get(2), v.get(4), v.get(8)])
}

fn normalize(r: &Multivector) -> Result<Multivector> {
    let n = (r * &r.reverse()).scalar_part();
    if n <= 0.0 {
        return Err(Error::NotVersor);
    }
    Ok(r.scale(1.0 / n.sqrt()))
}

/// Classic fourth-order Runge–Kutta on the rotor and the position together,
/// renormalizing the rotor after every step. Returns `steps + 1` states.
#[allow(clippy::too_many_arguments)]
pub fn integrate_rotor(
    model: &SpacetimeModel,
    r0: &Multivector,
    u0: &Multivector,
    x0: Event,
    field: &FieldBivector,
    tau_end: f64,
    steps: usize,
    form: RotorForm,
) -> Result<Vec<KinematicState>> {
    if steps == 0 {
        return Err(Error::InvalidSteps);
    }
    check_rotor(r0)?;
    check_velocity(u0)?;
    if !x0.is_finite() || !tau_end.is_finite() {
        return Err(Error::NonFinite);
    }
    let h = tau_end / steps as f64;
    let mut r = normalize(r0)?;
    let mut x = model.spacetime_vector(x0.0);
    let mut out = Vec::with_capacity(steps + 1);
    let state = |tau: f64, r: &Multivector, x: &Multivector| KinematicState {
        tau,
        rotor: r.clone(),
        velocity: sandwich(r, u0),
        position: event_of(x),
    };
    out.push(state(0.0, &r, &x));
    for n in 0..steps {
        let k1 = lorentz_rhs(&r, field, form)?;
        let v1 = sandwich(&r, u0);
        let r2 = &r + &k1.scale(0.5 * h);
        let k2 = lorentz_rhs(&r2, field, form)?;
        let v2 = sandwich(&r2, u0);
        let r3 = &r + &k2.scale(0.5 * h);
        let k3 = lorentz_rhs(&r3, field, form)?;
        let v3 = sandwich(&r3, u0);
        let r4 = &r + &k3.scale(h);
        let k4 = lorentz_rhs(&r4, field, form)?;
        let v4 = sandwich(&r4, u0);
        let dr = &(&k1 + &k2.scale(2.0)) + &(&k3.scale(2.0) + &k4);
        let dx = &(&v1 + &v2.scale(2.0)) + &(&v3.scale(2.0) + &v4);
        r = normalize(&(&r + &dr.scale(h / 6.0)))?;
        x = &x + &dx.scale(h / 6.0);
        out.push(state(h * (n + 1) as f64, &r, &x));
    }
    Ok(out)
}

/// Closed-form state at proper time `tau` starting from `R = 1`.
pub fn const_field_exact(
    u0: &Multivector,
    x0: Event,
    field: &FieldBivector,
    tau: f64,
) -> Result<KinematicState> {
    check_velocity(u0)?;
    if !x0.is_finite() || !tau.is_finite() {
        return Err(Error::NonFinite);
    }
    let f = field.as_multivector();
    let rotor = exp_bivector(&f.scale(0.5 * tau))?;
    let velocity = sandwich(&rotor, u0);
    let offset = match boost_parameter(f) {
        Some(a) => {
            let fhat = f.scale(1.0 / a);
            let mirrored = (&(&fhat * u0) * &fhat).grade_part(1);
            let par = (u0 - &mirrored).scale(0.5);
            let perp = (u0 + &mirrored).scale(0.5);
            let turned = (&fhat * &par).grade_part(1);
            let at = a * tau;
            let sum = &(&perp.scale(tau) + &par.scale(at.sinh() / a)) + &turned.scale((at.cosh() - 1.0) / a);
            event_of(&sum)
        }
        None => simpson_displacement(u0, f, tau)?,
    };
    Ok(KinematicState { tau, rotor, velocity, position: x0.add(&offset) })
}

/// `a` when `F = a F̂` is a simple bivector with `F̂² = +1`.
fn boost_parameter(f: &Multivector) -> Option<f64> {
    let sq = f * f;
    let s = sq.scalar_part();
    let n = f.coeff_norm();
    let rest = (&sq - &Multivector::scalar(f.algebra(), s)).coeff_norm();
    (s > 1e-24 * (1.0 + n * n) && rest <= 1e-12 * (1.0 + n * n)).then(|| s.sqrt())
}

/// `∫₀^τ R(σ) u0 R̃(σ) dσ` by composite Simpson, doubling until converged.
fn simpson_displacement(u0: &Multivector, f: &Multivector, tau: f64) -> Result<Event> {
    let vel = |s: f64| -> Result<[f64; 4]> {
        let r = exp_bivector(&f.scale(0.5 * s))?;
        Ok(event_of(&sandwich(&r, u0)).0)
    };
    let simpson = |n: usize| -> Result<[f64; 4]> {
        let h = tau / n as f64;
        let mut acc = [0.0; 4];
        for k in 0..=n {
            let w = if k == 0 || k == n {
                1.0
            } else if k % 2 == 1 {
                4.0
            } else {
                2.0
            };
            let v = vel(h * k as f64)?;
            for i in 0..4 {
                acc[i] += w * v[i];
            }
        }
        Ok(acc.map(|a| a * h / 3.0))
    };
    let mut n = 16;
    let mut prev = simpson(n)?;
    loop {
        n *= 2;
        let next = simpson(n)?;
        let diff = (0..4).map(|i| (next[i] - prev[i]).abs()).fold(0.0, f64::max);
        if diff < SIMPSON_TOL || n >= 1 << 16 {
            return Ok(Event(next));
        }
        prev = next;
    }
}

/// CGA₆ versor `T(x(τ)) R(τ) T(−x0)` carrying the starting event to `x(τ)`
/// and the tangent direction `u0` at `x0` to `u(τ)` at `x(τ)`.
pub fn trajectory_versor(
    model: &SpacetimeModel,
    state: &KinematicState,
    u0: &Multivector,
    x0: Event,
) -> Result<Multivector> {
    check_rotor(&state.rotor)?;
    let norm = &state.rotor * &state.rotor.reverse();
    if !norm.approx_eq(&Multivector::scalar(model.algebra(), 1.0), ROTOR_TOL) {
        return Err(Error::InconsistentState("rotor is not normalized".into()));
    }
    if !sandwich(&state.rotor, u0).approx_eq(&state.velocity, 1e-8) {
        return Err(Error::InconsistentState("velocity does not match R u0 R~".into()));
    }
    let v = &(&model.st_translator_by(state.position) * &state.rotor) * &model.st_translator_by(x0.scale(-1.0));
    model.reduce_to_cga6(&v)
}

/// Writes `tau,t,x,y,z,u0..u3` and the eight even rotor coefficients.
pub fn write_trajectory_csv<W: Write>(out: &mut W, states: &[KinematicState]) -> io::Result<()> {
    const ROTOR_BLADES: [u32; 8] = [0, 0b0011, 0b0101, 0b1001, 0b0110, 0b1010, 0b1100, 0b1111];
    let Some(first) = states.first() else {
        return writeln!(out, "tau,t,x,y,z,u0,u1,u2,u3");
    };
    let alg = first.rotor.algebra();
    let rotor_cols: Vec<String> = ROTOR_BLADES.iter().map(|&b| format!("r_{}", alg.blade_name(b))).collect();
    writeln!(out, "tau,t,x,y,z,u0,u1,u2,u3,{}", rotor_cols.join(","))?;
    for s in states {
        let u = event_of(&s.velocity).0;
        let mut row = vec![s.tau];
        row.extend(s.position.0);
        row.extend(u);
        row.extend(ROTOR_BLADES.iter().map(|&b| s.rotor.get(b)));
        let cells: Vec<String> = row.iter().map(|v| v.to_string()).collect();
        writeln!(out, "{}", cells.join(","))?;
    }
    Ok(())
}
