//! Conformal model of Euclidean 3-space on five generators
//! `e1, e2, e3, o, einf` with `o·einf = -1` and both `o`, `einf` null.

use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::algebra::{Algebra, Signature};
use crate::error::{Error, Result};
use crate::multivector::Multivector;

pub const E1: usize = 0;
pub const E2: usize = 1;
pub const E3: usize = 2;
pub const ORIGIN: usize = 3;
pub const INFINITY: usize = 4;

const SPACE_MASK: u32 = 0b00111;
/// Relative wedge norm below which a blade counts as degenerate.
pub const DEGENERACY_TOL: f64 = 1e-10;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct EuclidPoint(pub [f64; 3]);

impl EuclidPoint {
    pub fn new(x: f64, y: f64, z: f64) -> Self {
        EuclidPoint([x, y, z])
    }

    pub fn norm_sq(&self) -> f64 {
        self.0.iter().map(|c| c * c).sum()
    }

    pub fn sub(&self, other: &EuclidPoint) -> EuclidPoint {
        EuclidPoint([self.0[0] - other.0[0], self.0[1] - other.0[1], self.0[2] - other.0[2]])
    }

    pub fn add(&self, other: &EuclidPoint) -> EuclidPoint {
        EuclidPoint([self.0[0] + other.0[0], self.0[1] + other.0[1], self.0[2] + other.0[2]])
    }

    fn is_finite(&self) -> bool {
        self.0.iter().all(|c| c.is_finite())
    }
}

#[derive(Debug, Clone)]
pub struct EuclidModel {
    alg: Arc<Algebra>,
}

impl Default for EuclidModel {
    fn default() -> Self {
        Self::new()
    }
}

impl EuclidModel {
    pub fn new() -> Self {
        let mut g = vec![vec![0.0; 5]; 5];
        for (i, row) in g.iter_mut().enumerate().take(3) {
            row[i] = 1.0;
        }
        g[ORIGIN][INFINITY] = -1.0;
        g[INFINITY][ORIGIN] = -1.0;
        let names = ["e1", "e2", "e3", "o", "einf"].map(String::from).to_vec();
        let alg = Algebra::with_names(g, names).expect("CGA5 gram is valid");
        EuclidModel { alg }
    }

    pub fn algebra(&self) -> &Arc<Algebra> {
        &self.alg
    }

    pub fn signature(&self) -> Signature {
        self.alg.signature()
    }

    pub fn origin(&self) -> Multivector {
        Multivector::basis_vector(&self.alg, ORIGIN)
    }

    pub fn infinity(&self) -> Multivector {
        Multivector::basis_vector(&self.alg, INFINITY)
    }

    /// Pure space vector `x e1 + y e2 + z e3`.
    pub fn space_vector(&self, v: [f64; 3]) -> Multivector {
        Multivector::vector(&self.alg, &v)
    }

    /// Unit pseudoscalar `e1∧e2∧e3∧o∧einf`; squares to −1.
    pub fn pseudoscalar(&self) -> Multivector {
        Multivector::blade(&self.alg, 0b11111, 1.0)
    }

    /// `P = o + p + ½|p|² einf`: null, with `P·einf = −1`.
    pub fn embed_point(&self, p: EuclidPoint) -> Result<Multivector> {
        if !p.is_finite() {
            return Err(Error::NonFinite);
        }
        let [x, y, z] = p.0;
        Ok(Multivector::vector(&self.alg, &[x, y, z, 1.0, 0.5 * p.norm_sq()]))
    }

    /// Projective inverse of [`EuclidModel::embed_point`].
    pub fn extract_point(&self, point: &Multivector) -> Result<EuclidPoint> {
        if !point.is_grade(1) {
            return Err(Error::WrongGrade { expected: 1 });
        }
        let w = self.inf_weight(point)?;
        let p = point.scale(-1.0 / w);
        let c = p.vector_coords();
        let q = EuclidPoint([c[E1], c[E2], c[E3]]);
        let sq = (&p | &p).scalar_part();
        if sq.abs() > 1e-9 * (1.0 + q.norm_sq()) {
            return Err(Error::NotNull(sq));
        }
        Ok(q)
    }

    /// `P·einf`, erroring when it vanishes.
    fn inf_weight(&self, a: &Multivector) -> Result<f64> {
        let w = (a | &self.infinity()).scalar_part();
        if w.abs() <= 1e-12 * a.coeff_norm() {
            return Err(Error::PointAtInfinity);
        }
        Ok(w)
    }

    /// Distance from `−½d² = P·Q / ((P·einf)(Q·einf))`.
    pub fn distance(&self, p: EuclidPoint, q: EuclidPoint) -> Result<f64> {
        let (pp, qq) = (self.embed_point(p)?, self.embed_point(q)?);
        Ok(self.point_distance(&pp, &qq)?.max(0.0).sqrt())
    }

    /// Squared distance between two embedded (possibly unnormalized) points.
    pub fn point_distance(&self, p: &Multivector, q: &Multivector) -> Result<f64> {
        let ratio = (p | q).scalar_part() / (self.inf_weight(p)? * self.inf_weight(q)?);
        Ok(-2.0 * ratio)
    }

    fn require_space(&self, x: &Multivector) -> Result<()> {
        if x.terms().all(|(b, _)| b != 0 && b & !SPACE_MASK == 0 && b.count_ones() == 1) {
            Ok(())
        } else {
            Err(Error::WrongSupport("e1, e2, e3"))
        }
    }

    /// Translation versor `T(x) = 1 − ½ x einf`.
    pub fn translator(&self, x: &Multivector) -> Result<Multivector> {
        self.require_space(x)?;
        let one = Multivector::scalar(&self.alg, 1.0);
        Ok(&one - &(x * &self.infinity()).scale(0.5))
    }

    pub fn translator_to(&self, p: EuclidPoint) -> Multivector {
        self.translator(&self.space_vector(p.0)).expect("space vector")
    }

    /// `o ∧ v` for a pure space vector `v`.
    pub fn tangent_at_origin(&self, v: &Multivector) -> Result<Multivector> {
        self.require_space(v)?;
        Ok(&self.origin() ^ v)
    }

    /// `P ∧ einf`.
    pub fn flat_point(&self, p: EuclidPoint) -> Result<Multivector> {
        Ok(&self.embed_point(p)? ^ &self.infinity())
    }

    /// Outer-product (OPNS) sphere through four points.
    pub fn sphere_through_points(
        &self,
        a: EuclidPoint,
        b: EuclidPoint,
        c: EuclidPoint,
        d: EuclidPoint,
    ) -> Result<Multivector> {
        let pts = [a, b, c, d].map(|p| self.embed_point(p));
        let mut blade = Multivector::scalar(&self.alg, 1.0);
        let mut scale = 1.0;
        for p in pts {
            let p = p?;
            scale *= p.coeff_norm();
            blade = &blade ^ &p;
        }
        if blade.coeff_norm() < DEGENERACY_TOL * scale {
            return Err(Error::Degenerate("the four points do not span a sphere".into()));
        }
        Ok(blade)
    }

    /// Dual with respect to the unit pseudoscalar.
    pub fn dual(&self, a: &Multivector) -> Result<Multivector> {
        a.dual(&self.pseudoscalar())
    }

    /// Inverse dual: `undual(dual(a)) = a`.
    pub fn undual(&self, a: &Multivector) -> Result<Multivector> {
        // I⁻¹ I⁻¹ = 1 / I² = −1
        Ok(self.dual(a)?.scale(-1.0))
    }

    /// Dual sphere `C − ½R² einf` with center `center` and signed squared
    /// radius `r_squared`.
    pub fn dual_sphere(&self, center: EuclidPoint, r_squared: f64) -> Result<Multivector> {
        Ok(&self.embed_point(center)? - &self.infinity().scale(0.5 * r_squared))
    }

    fn normalized_dual_vector(&self, s: &Multivector) -> Result<Multivector> {
        if !s.is_grade(1) {
            return Err(Error::WrongGrade { expected: 1 });
        }
        let w = self.inf_weight(s)?;
        Ok(s.scale(-1.0 / w))
    }

    /// Signed squared radius `R² = s·s` after normalizing `s·einf = −1`.
    /// Negative values are imaginary spheres.
    pub fn dual_sphere_radius(&self, s: &Multivector) -> Result<f64> {
        let n = self.normalized_dual_vector(s)?;
        Ok((&n | &n).scalar_part())
    }

    pub fn dual_sphere_center(&self, s: &Multivector) -> Result<EuclidPoint> {
        let c = self.normalized_dual_vector(s)?.vector_coords();
        Ok(EuclidPoint([c[E1], c[E2], c[E3]]))
    }

    /// Dual sphere around `q` through `p`: `P·(Q∧einf)`.
    pub fn sphere_center_through(&self, p: EuclidPoint, q: EuclidPoint) -> Result<Multivector> {
        let pp = self.embed_point(p)?;
        let qq = self.embed_point(q)?;
        Ok(&pp | &(&qq ^ &self.infinity()))
    }

    /// IPNS residual `x·s` of a point against a dual object.
    pub fn ipns_residual(&self, x: EuclidPoint, dual_object: &Multivector) -> Result<Multivector> {
        Ok(&self.embed_point(x)? | dual_object)
    }

    /// OPNS residual `x∧S` of a point against a direct object.
    pub fn opns_residual(&self, x: EuclidPoint, object: &Multivector) -> Result<Multivector> {
        Ok(&self.embed_point(x)? ^ object)
    }
}
