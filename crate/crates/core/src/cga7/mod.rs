//! Seven-dimensional conformal model of Minkowski spacetime.
//!
//! The model starts from four spacetime generators `γ0..γ3`, an origin event
//! `O`, a timelike infinity `∞₊` and a spacelike infinity `∞₋` with
//!
//! ```text
//! γ0² = +1, γi² = −1, O² = 0, O·∞₊ = +1, O·∞₋ = −1, ∞₊² = ∞₋² = ∞₊·∞₋ = 0.
//! ```
//!
//! That Gram matrix has one zero mode, `Ω₀ = ½(∞₊ + ∞₋)` (lightlike
//! infinity), orthogonal to everything. Its complement `Ω∞ = ½(∞₋ − ∞₊)`
//! plays the role of the Euclidean point at infinity. The algebra is stored
//! on the generators `γ0..γ3, O, Ω∞, Ω₀` so the radical is a single bit of the
//! blade mask; `∞₊ = Ω₀ − Ω∞` and `∞₋ = Ω₀ + Ω∞` are derived vectors.
//! [`SpacetimeModel::null_basis_algebra`] builds the same algebra directly
//! on `γ0..γ3, O, ∞₊, ∞₋` for cross-checks.

mod limits;

use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::algebra::{Algebra, Blade, Signature};
use crate::error::{Error, Result};
use crate::multivector::{exp_bivector, Multivector};

pub use limits::{delta_gram, infinity_limit_diagnostics, infinity_limit_diagnostics_at, LimitReport, LimitRow};

pub const G0: usize = 0;
pub const ORIGIN: usize = 4;
pub const OMEGA_INF: usize = 5;
pub const OMEGA_0: usize = 6;

const GAMMA_MASK: Blade = 0b000_1111;
const RADICAL_BIT: Blade = 1 << OMEGA_0;
/// Relative wedge norm below which an intersection counts as degenerate.
pub const DEGENERACY_TOL: f64 = 1e-10;

pub(crate) const GAMMA_METRIC: [f64; 4] = [1.0, -1.0, -1.0, -1.0];

/// Spacetime event `(t, x, y, z)` in units with `c = 1`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Event(pub [f64; 4]);

impl Event {
    pub const ORIGIN: Event = Event([0.0; 4]);

    pub fn new(t: f64, x: f64, y: f64, z: f64) -> Self {
        Event([t, x, y, z])
    }

    /// Minkowski square `t² − |x|²` of the coordinate vector.
    pub fn minkowski_sq(&self) -> f64 {
        self.0.iter().zip(GAMMA_METRIC).map(|(c, g)| g * c * c).sum()
    }

    pub fn add(&self, o: &Event) -> Event {
        Event(std::array::from_fn(|i| self.0[i] + o.0[i]))
    }

    pub fn sub(&self, o: &Event) -> Event {
        Event(std::array::from_fn(|i| self.0[i] - o.0[i]))
    }

    pub fn scale(&self, s: f64) -> Event {
        Event(self.0.map(|c| c * s))
    }

    pub(crate) fn is_finite(&self) -> bool {
        self.0.iter().all(|c| c.is_finite())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ShellKind {
    /// `R² > 0`: events at fixed proper time from the center.
    TimelikeShell,
    /// `R² < 0`: a sphere collapsing onto the center and re-expanding.
    DynamicalSphere,
    /// `R² = 0`.
    Lightcone,
}

pub fn shell_classify(r_squared: f64) -> ShellKind {
    if r_squared > 0.0 {
        ShellKind::TimelikeShell
    } else if r_squared < 0.0 {
        ShellKind::DynamicalSphere
    } else {
        ShellKind::Lightcone
    }
}

/// Locus of constant squared Minkowski interval from a center event.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Shell {
    pub center: Event,
    pub r_squared: f64,
    pub kind: ShellKind,
}

impl Shell {
    pub fn new(center: Event, r_squared: f64) -> Self {
        Shell { center, r_squared, kind: shell_classify(r_squared) }
    }
}

/// Sign and normalization conventions, embedded in serialized documents.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ConventionRecord {
    pub model: &'static str,
    pub basis: [&'static str; 7],
    pub metric: &'static str,
    pub interval: &'static str,
    pub event_embedding: &'static str,
    pub shell: &'static str,
    pub translator: &'static str,
}

pub const CONVENTIONS: ConventionRecord = ConventionRecord {
    model: "cga7",
    basis: ["g0", "g1", "g2", "g3", "o", "omega_inf", "omega_0"],
    metric: "g0^2=+1, gi^2=-1, o.inf_plus=+1, o.inf_minus=-1, inf_plus=omega_0-omega_inf, inf_minus=omega_0+omega_inf",
    interval: "d^2 = +2 (P.Q)/((P.inf_plus)(Q.inf_minus)); timelike > 0, spacelike < 0",
    event_embedding: "X = o + x + (x.x/2) omega_inf",
    shell: "S^D = C - (R^2/2) omega_inf",
    translator: "V(x) = 1 - (1/2) x omega_inf translates events by +x",
};

#[derive(Debug, Clone)]
pub struct SpacetimeModel {
    alg: Arc<Algebra>,
    cga6: Arc<Algebra>,
    spectrum: Signature,
}

impl Default for SpacetimeModel {
    fn default() -> Self {
        Self::new()
    }
}

fn names(list: &[&str]) -> Vec<String> {
    list.iter().map(|s| s.to_string()).collect()
}

impl SpacetimeModel {
    /// Builds the model and checks its defining relations; a failure here is
    /// a defect, hence the panics.
    pub fn new() -> Self {
        let mut g = vec![vec![0.0; 7]; 7];
        for (i, m) in GAMMA_METRIC.iter().enumerate() {
            g[i][i] = *m;
        }
        g[ORIGIN][OMEGA_INF] = -1.0;
        g[OMEGA_INF][ORIGIN] = -1.0;
        let alg = Algebra::with_names(g.clone(), CONVENTIONS.basis.iter().map(|s| s.to_string()).collect())
            .expect("spacetime gram is valid");
        let g6: Vec<Vec<f64>> = g[..6].iter().map(|r| r[..6].to_vec()).collect();
        let cga6 = Algebra::with_names(g6, names(&["g0", "g1", "g2", "g3", "o", "omega_inf"]))
            .expect("CGA6 gram is valid");
        let mut model = SpacetimeModel { alg, cga6, spectrum: Signature { positive: 0, negative: 0, zero: 0 } };
        let null_gram = model.null_basis_gram();
        model.spectrum = crate::algebra::signature_of(&null_gram);
        model.verify(&null_gram);
        model
    }

    fn verify(&self, null_gram: &[Vec<f64>]) {
        let mut expected = vec![vec![0.0; 7]; 7];
        for (i, m) in GAMMA_METRIC.iter().enumerate() {
            expected[i][i] = *m;
        }
        expected[4][5] = 1.0;
        expected[5][4] = 1.0;
        expected[4][6] = -1.0;
        expected[6][4] = -1.0;
        assert_eq!(null_gram, expected.as_slice(), "null-basis gram");
        assert_eq!(self.spectrum, Signature { positive: 2, negative: 4, zero: 1 });
        let w0 = self.omega0();
        for v in self.null_basis_vectors() {
            assert_eq!((&w0 | &v).scalar_part(), 0.0, "Ω₀ must be orthogonal to every generator");
        }
        let half_diff = (&self.inf_minus() - &self.inf_plus()).scale(0.5);
        assert_eq!(half_diff, self.omega_inf());
    }

    pub fn algebra(&self) -> &Arc<Algebra> {
        &self.alg
    }

    /// The reduced six-dimensional algebra on `γ0..γ3, O, Ω∞`.
    pub fn cga6_algebra(&self) -> &Arc<Algebra> {
        &self.cga6
    }

    /// Sign counts of the Gram matrix of `γ0..γ3, O, ∞₊, ∞₋`.
    pub fn spectrum(&self) -> Signature {
        self.spectrum
    }

    pub fn conventions(&self) -> &'static ConventionRecord {
        &CONVENTIONS
    }

    pub fn gamma(&self, i: usize) -> Multivector {
        assert!(i < 4);
        Multivector::basis_vector(&self.alg, G0 + i)
    }

    pub fn origin(&self) -> Multivector {
        Multivector::basis_vector(&self.alg, ORIGIN)
    }

    pub fn omega_inf(&self) -> Multivector {
        Multivector::basis_vector(&self.alg, OMEGA_INF)
    }

    pub fn omega0(&self) -> Multivector {
        Multivector::basis_vector(&self.alg, OMEGA_0)
    }

    /// Timelike infinity `∞₊ = Ω₀ − Ω∞`.
    pub fn inf_plus(&self) -> Multivector {
        &self.omega0() - &self.omega_inf()
    }

    /// Spacelike infinity `∞₋ = Ω₀ + Ω∞`.
    pub fn inf_minus(&self) -> Multivector {
        &self.omega0() + &self.omega_inf()
    }

    /// `γ0..γ3, O, ∞₊, ∞₋` as elements of the model algebra.
    pub fn null_basis_vectors(&self) -> [Multivector; 7] {
        [
            self.gamma(0),
            self.gamma(1),
            self.gamma(2),
            self.gamma(3),
            self.origin(),
            self.inf_plus(),
            self.inf_minus(),
        ]
    }

    /// Inner products of `γ0..γ3, O, ∞₊, ∞₋` computed in the model algebra.
    pub fn null_basis_gram(&self) -> Vec<Vec<f64>> {
        let basis = self.null_basis_vectors();
        basis.iter().map(|a| basis.iter().map(|b| (a | b).scalar_part()).collect()).collect()
    }

    /// An independent algebra built directly on the Gram of
    /// `γ0..γ3, O, ∞₊, ∞₋` (limit values).
    pub fn null_basis_algebra(&self) -> Arc<Algebra> {
        Algebra::with_names(self.null_basis_gram(), names(&["g0", "g1", "g2", "g3", "o", "inf_plus", "inf_minus"]))
            .expect("null-basis gram is valid")
    }

    /// `t γ0 + x γ1 + y γ2 + z γ3`.
    pub fn spacetime_vector(&self, c: [f64; 4]) -> Multivector {
        Multivector::vector(&self.alg, &c)
    }

    /// `X = O + v + ½(v·v) Ω∞`: null, `X·∞± = ±1`, `X·Ω∞ = −1`, `X·Ω₀ = 0`.
    pub fn embed_event(&self, e: Event) -> Result<Multivector> {
        if !e.is_finite() {
            return Err(Error::NonFinite);
        }
        let [t, x, y, z] = e.0;
        Ok(Multivector::vector(&self.alg, &[t, x, y, z, 1.0, 0.5 * e.minkowski_sq(), 0.0]))
    }

    fn omega_weight(&self, a: &Multivector) -> Result<f64> {
        let w = (a | &self.omega_inf()).scalar_part();
        if w.abs() <= 1e-12 * a.coeff_norm() {
            return Err(Error::PointAtInfinity);
        }
        Ok(w)
    }

    /// Projective inverse of [`SpacetimeModel::embed_event`]; any Ω₀
    /// component is ignored.
    pub fn extract_event(&self, x: &Multivector) -> Result<Event> {
        if !x.is_grade(1) {
            return Err(Error::WrongGrade { expected: 1 });
        }
        let w = self.omega_weight(x)?;
        let n = self.radical_free(&x.scale(-1.0 / w));
        let c = n.vector_coords();
        let e = Event([c[0], c[1], c[2], c[3]]);
        let sq = (&n | &n).scalar_part();
        let scale: f64 = e.0.iter().map(|v| v * v).sum();
        if sq.abs() > 1e-9 * (1.0 + scale) {
            return Err(Error::NotNull(sq));
        }
        Ok(e)
    }

    /// Squared interval between two embedded events:
    /// `d² = +2 (P·Q) / ((P·∞₊)(Q·∞₋))`.
    pub fn interval_between(&self, p: &Multivector, q: &Multivector) -> Result<f64> {
        let pq = (p | q).scalar_part();
        let wp = (p | &self.inf_plus()).scalar_part();
        let wq = (q | &self.inf_minus()).scalar_part();
        if wp == 0.0 || wq == 0.0 {
            return Err(Error::PointAtInfinity);
        }
        Ok(2.0 * pq / (wp * wq))
    }

    /// Squared Minkowski interval `(Δt)² − |Δx|²`, computed in the algebra.
    pub fn minkowski_sq_interval(&self, p: Event, q: Event) -> Result<f64> {
        self.interval_between(&self.embed_event(p)?, &self.embed_event(q)?)
    }

    /// Part of `a` along blades containing `Ω₀`.
    pub fn radical_component(&self, a: &Multivector) -> Multivector {
        Multivector::from_terms(&self.alg, a.terms().filter(|(b, _)| b & RADICAL_BIT != 0))
    }

    fn radical_free(&self, a: &Multivector) -> Multivector {
        Multivector::from_terms(&self.alg, a.terms().filter(|(b, _)| b & RADICAL_BIT == 0))
    }

    /// Re-expresses an Ω₀-free element in the CGA₆ algebra.
    pub fn reduce_to_cga6(&self, a: &Multivector) -> Result<Multivector> {
        let rad = self.radical_component(a).coeff_norm();
        if rad > 1e-12 * a.coeff_norm().max(1.0) {
            return Err(Error::NonzeroRadical(rad));
        }
        Ok(Multivector::from_terms(&self.cga6, a.terms().filter(|(b, _)| b & RADICAL_BIT == 0)))
    }

    /// Embeds a CGA₆ element back into the seven-dimensional algebra.
    pub fn lift_from_cga6(&self, a: &Multivector) -> Multivector {
        Multivector::from_terms(&self.alg, a.terms())
    }

    /// `γ0γ1γ2γ3 ∧ O ∧ Ω∞` in CGA₆; squares to −1.
    pub fn cga6_pseudoscalar(&self) -> Multivector {
        Multivector::blade(&self.cga6, 0b11_1111, 1.0)
    }

    /// Dual shell `S^D = C − ½R² Ω∞`, so that `S^D·S^D = R²` and
    /// `X·S^D = −½(d²(x, c) − R²)`.
    pub fn shell_dual(&self, shell: &Shell) -> Result<Multivector> {
        Ok(&self.embed_event(shell.center)? - &self.omega_inf().scale(0.5 * shell.r_squared))
    }

    /// An event's dual object: its IPNS set is its lightcone.
    pub fn lightcone_of(&self, p: Event) -> Result<Multivector> {
        self.embed_event(p)
    }

    fn require_spacetime(&self, x: &Multivector) -> Result<()> {
        if x.terms().all(|(b, _)| b.count_ones() == 1 && b & !GAMMA_MASK == 0) {
            Ok(())
        } else {
            Err(Error::WrongSupport("g0, g1, g2, g3"))
        }
    }

    /// `V = exp(−½ x Ω∞) = 1 − ½ x Ω∞`, translating events by `+x`.
    pub fn st_translator(&self, x: &Multivector) -> Result<Multivector> {
        self.require_spacetime(x)?;
        let one = Multivector::scalar(&self.alg, 1.0);
        Ok(&one - &(x * &self.omega_inf()).scale(0.5))
    }

    pub fn st_translator_by(&self, e: Event) -> Multivector {
        self.st_translator(&self.spacetime_vector(e.0)).expect("spacetime vector")
    }

    /// `V = exp(½ x Ω₀) = 1 + ½ x Ω₀`. Its sandwich changes only the radical
    /// component of an element.
    pub fn omega0_versor(&self, x: &Multivector) -> Result<Multivector> {
        self.require_spacetime(x)?;
        let one = Multivector::scalar(&self.alg, 1.0);
        Ok(&one + &(x * &self.omega0()).scale(0.5))
    }

    /// Boost rotor `exp(½ rapidity γ_axis γ0)` for axis 1..=3.
    pub fn boost(&self, rapidity: f64, axis: usize) -> Multivector {
        assert!((1..4).contains(&axis));
        let b = &self.gamma(axis) * &self.gamma(0);
        exp_bivector(&b.scale(0.5 * rapidity)).expect("bivector")
    }

    /// Spatial rotation rotor `exp(½ angle γ_j γ_i)`, rotating the `γ_i`
    /// axis towards `γ_j`.
    pub fn rotation(&self, angle: f64, i: usize, j: usize) -> Multivector {
        let b = &self.gamma(j) * &self.gamma(i);
        exp_bivector(&b.scale(0.5 * angle)).expect("bivector")
    }

    /// Dual (IPNS) 2-blade `P ∧ S^D` of the events on the observer's
    /// lightcone that also lie on the shell.
    pub fn observe_intersection(&self, observer: Event, shell: &Shell) -> Result<Multivector> {
        let p = self.lightcone_of(observer)?;
        let s = self.shell_dual(shell)?;
        let h = &p ^ &s;
        if h.coeff_norm() < DEGENERACY_TOL * p.coeff_norm() * s.coeff_norm() {
            return Err(Error::DegenerateIntersection);
        }
        Ok(h)
    }

    /// Direct (OPNS) form of a CGA₆-representable dual blade, taken with the
    /// CGA₆ pseudoscalar after reduction.
    pub fn undualize_cga6(&self, dual_blade: &Multivector) -> Result<Multivector> {
        self.reduce_to_cga6(dual_blade)?.dual(&self.cga6_pseudoscalar())
    }

    /// Residual `X·(P∧S^D)` of an event against an observation blade.
    pub fn membership_residual(&self, x: Event, dual_blade: &Multivector) -> Result<Multivector> {
        Ok(&self.embed_event(x)? | dual_blade)
    }

    /// Samples `count` events on the observer's past lightcone that lie on
    /// the shell, using a seeded generator for the spatial directions.
    pub fn sample_observed_events(
        &self,
        observer: Event,
        shell: &Shell,
        count: usize,
        seed: u64,
    ) -> Result<Vec<Event>> {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let delta = observer.sub(&shell.center);
        let gap = shell.r_squared - delta.minkowski_sq();
        let mut out = Vec::with_capacity(count);
        let mut attempts = 0;
        while out.len() < count {
            attempts += 1;
            if attempts > 64 * (count + 1) {
                return Err(Error::Degenerate("observer lightcone does not meet the shell at finite events".into()));
            }
            let z: f64 = rng.gen_range(-1.0..=1.0);
            let phi: f64 = rng.gen_range(0.0..std::f64::consts::TAU);
            let r = (1.0 - z * z).sqrt();
            let n = [r * phi.cos(), r * phi.sin(), z];
            // X = observer + λ(−1, n): null offset towards the past.
            let denom = 2.0 * (-delta.0[0] - (delta.0[1] * n[0] + delta.0[2] * n[1] + delta.0[3] * n[2]));
            if denom.abs() < 1e-9 {
                continue;
            }
            let lambda = gap / denom;
            out.push(observer.add(&Event([-lambda, lambda * n[0], lambda * n[1], lambda * n[2]])));
        }
        Ok(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::multivector::apply_versor;

    #[test]
    fn spectrum_and_radical() {
        let m = SpacetimeModel::new();
        assert_eq!(m.spectrum(), Signature { positive: 2, negative: 4, zero: 1 });
        assert_eq!((&m.omega0() | &m.gamma(2)).scalar_part(), 0.0);
        assert_eq!((&m.omega0() | &m.omega_inf()).scalar_part(), 0.0);
        let quarter = (&(&m.inf_plus() + &m.inf_minus()) | &(&m.inf_minus() - &m.inf_plus())).scalar_part() / 4.0;
        assert_eq!(quarter, 0.0);
        assert_eq!(m.null_basis_algebra().signature(), m.spectrum());
    }

    #[test]
    fn cga6_signature() {
        let m = SpacetimeModel::new();
        assert_eq!(m.cga6_algebra().signature(), Signature { positive: 2, negative: 4, zero: 0 });
        let i6 = m.cga6_pseudoscalar();
        assert_eq!((&i6 * &i6).scalar_part(), -1.0);
    }

    #[test]
    fn seven_dim_pseudoscalar_is_not_invertible() {
        let m = SpacetimeModel::new();
        let i7 = Multivector::blade(m.algebra(), 0b111_1111, 1.0);
        let err = m.origin().dual(&i7).unwrap_err();
        assert!(matches!(err, Error::NonInvertiblePseudoscalar { .. }));
    }

    #[test]
    fn embedding_examples() {
        let m = SpacetimeModel::new();
        assert_eq!(m.embed_event(Event::ORIGIN).unwrap(), m.origin());
        let x = m.embed_event(Event::new(1.0, 0.0, 0.0, 0.0)).unwrap();
        let expected = &(&m.origin() + &m.gamma(0)) + &m.omega_inf().scale(0.5);
        assert_eq!(x, expected);
        assert!((&x * &x).is_zero());
        let e = Event::new(0.3, -2.0, 1.0, 5.0);
        assert_eq!((&m.embed_event(e).unwrap() | &m.omega0()).scalar_part(), 0.0);
        assert_eq!(m.embed_event(Event::new(f64::NAN, 0.0, 0.0, 0.0)).unwrap_err(), Error::NonFinite);
    }

    #[test]
    fn extraction_examples() {
        let m = SpacetimeModel::new();
        assert_eq!(m.extract_event(&m.origin()).unwrap(), Event::ORIGIN);
        let e = Event::new(1.5, -0.5, 2.0, 0.25);
        let back = m.extract_event(&m.embed_event(e).unwrap().scale(-3.0)).unwrap();
        for i in 0..4 {
            assert!((back.0[i] - e.0[i]).abs() < 1e-12);
        }
        assert_eq!(m.extract_event(&m.omega_inf()).unwrap_err(), Error::PointAtInfinity);
        // radical part is ignored
        let with_rad = &m.embed_event(e).unwrap() + &m.omega0().scale(7.0);
        assert_eq!(m.extract_event(&with_rad).unwrap(), e);
    }

    #[test]
    fn interval_examples() {
        let m = SpacetimeModel::new();
        let o = Event::ORIGIN;
        let e = Event::new(0.7, 1.0, -3.0, 2.0);
        assert_eq!(m.minkowski_sq_interval(e, e).unwrap(), 0.0);
        assert_eq!(m.minkowski_sq_interval(Event::new(1.0, 0.0, 0.0, 0.0), o).unwrap(), 1.0);
        assert_eq!(m.minkowski_sq_interval(Event::new(0.0, 1.0, 0.0, 0.0), o).unwrap(), -1.0);
    }

    #[test]
    fn shell_classification() {
        assert_eq!(shell_classify(4.0), ShellKind::TimelikeShell);
        assert_eq!(shell_classify(-4.0), ShellKind::DynamicalSphere);
        assert_eq!(shell_classify(0.0), ShellKind::Lightcone);
        assert_eq!(Shell::new(Event::ORIGIN, 0.0).kind, ShellKind::Lightcone);
    }

    #[test]
    fn zero_radius_shell_is_the_lightcone() {
        let m = SpacetimeModel::new();
        let c = Event::new(1.0, 2.0, 0.0, -1.0);
        let s = m.shell_dual(&Shell::new(c, 0.0)).unwrap();
        assert_eq!(s, m.lightcone_of(c).unwrap());
    }

    #[test]
    fn shell_membership_at_proper_time() {
        let m = SpacetimeModel::new();
        let tau = 1.7;
        let s = m.shell_dual(&Shell::new(Event::ORIGIN, tau * tau)).unwrap();
        let x = m.embed_event(Event::new(tau, 0.0, 0.0, 0.0)).unwrap();
        assert!((&x | &s).scalar_part().abs() < 1e-15);
        assert!(((&s | &s).scalar_part() - tau * tau).abs() < 1e-15);
    }

    #[test]
    fn lightcone_membership() {
        let m = SpacetimeModel::new();
        let p = Event::new(0.5, 1.0, -1.0, 2.0);
        let cone = m.lightcone_of(p).unwrap();
        let null = m.embed_event(p.add(&Event::new(1.0, 1.0, 0.0, 0.0))).unwrap();
        assert!((&null | &cone).scalar_part().abs() < 1e-15);
        let timelike = m.embed_event(p.add(&Event::new(1.0, 0.0, 0.0, 0.0))).unwrap();
        assert!(((&timelike | &cone).scalar_part() + 0.5).abs() < 1e-15);
        assert!((&cone * &cone).is_zero());
    }

    #[test]
    fn translator_examples() {
        let m = SpacetimeModel::new();
        let zero = Multivector::zero(m.algebra());
        assert_eq!(m.st_translator(&zero).unwrap(), Multivector::scalar(m.algebra(), 1.0));
        let v = m.st_translator(&m.gamma(0)).unwrap();
        let moved = apply_versor(&v, &m.origin()).unwrap();
        let target = m.embed_event(Event::new(1.0, 0.0, 0.0, 0.0)).unwrap();
        assert!(moved.projective_distance(&target).unwrap() < 1e-15);
        assert!(apply_versor(&v, &m.omega_inf()).unwrap().approx_eq(&m.omega_inf(), 1e-15));
        assert!(m.st_translator(&m.origin()).is_err());
    }

    #[test]
    fn positive_exponent_translates_backwards() {
        let m = SpacetimeModel::new();
        let x = m.spacetime_vector([0.5, 1.0, 0.0, -2.0]);
        let v = exp_bivector(&(&x * &m.omega_inf()).scale(0.5)).unwrap();
        let moved = apply_versor(&v, &m.origin()).unwrap();
        let target = m.embed_event(Event::new(-0.5, -1.0, 0.0, 2.0)).unwrap();
        assert!(moved.approx_eq(&target, 1e-14));
    }

    #[test]
    fn omega0_versor_examples() {
        let m = SpacetimeModel::new();
        let zero = Multivector::zero(m.algebra());
        assert_eq!(m.omega0_versor(&zero).unwrap(), Multivector::scalar(m.algebra(), 1.0));
        let x = m.spacetime_vector([1.0, -0.5, 2.0, 0.3]);
        let v = m.omega0_versor(&x).unwrap();
        assert_eq!(&v * &v.reverse(), Multivector::scalar(m.algebra(), 1.0));
        let e = m.embed_event(Event::new(0.2, 1.0, 1.0, -1.0)).unwrap();
        let out = apply_versor(&v, &e).unwrap();
        assert!(m.reduce_to_cga6(&m.radical_component(&out)).is_err());
        let diff = &out - &e;
        assert!(m.radical_free(&diff).is_zero());
        assert!(!m.radical_component(&out).is_zero());
    }

    #[test]
    fn radical_component_examples() {
        let m = SpacetimeModel::new();
        let e = m.embed_event(Event::new(3.0, 1.0, 0.0, 0.0)).unwrap();
        assert!(m.radical_component(&e).is_zero());
        assert_eq!(m.radical_component(&m.omega0()), m.omega0());
        let reduced = m.reduce_to_cga6(&e).unwrap();
        assert_eq!(reduced.vector_coords(), e.vector_coords()[..6].to_vec());
        assert!(matches!(m.reduce_to_cga6(&m.omega0()), Err(Error::NonzeroRadical(_))));
        assert_eq!(m.lift_from_cga6(&reduced), e);
    }

    #[test]
    fn hadronization_observer() {
        // c = O, τ = 1, observer at t = 2: the past cone meets the shell at
        // t = 5/4, |x| = 3/4.
        let m = SpacetimeModel::new();
        let shell = Shell::new(Event::ORIGIN, 1.0);
        let observer = Event::new(2.0, 0.0, 0.0, 0.0);
        let h = m.observe_intersection(observer, &shell).unwrap();
        assert!(h.is_grade(2));
        let x = Event::new(1.25, 0.75, 0.0, 0.0);
        assert!(m.membership_residual(x, &h).unwrap().coeff_norm() < 1e-14);
        let samples = m.sample_observed_events(observer, &shell, 8, 0).unwrap();
        for s in samples {
            assert!((s.0[0] - 1.25).abs() < 1e-12);
            let r = (s.0[1].powi(2) + s.0[2].powi(2) + s.0[3].powi(2)).sqrt();
            assert!((r - 0.75).abs() < 1e-12);
        }
        let opns = m.undualize_cga6(&h).unwrap();
        assert!(opns.is_grade(4));
    }

    #[test]
    fn observer_equal_to_lightcone_center_is_degenerate() {
        let m = SpacetimeModel::new();
        let c = Event::new(1.0, 0.0, 2.0, 0.0);
        let err = m.observe_intersection(c, &Shell::new(c, 0.0)).unwrap_err();
        assert_eq!(err, Error::DegenerateIntersection);
    }
}
