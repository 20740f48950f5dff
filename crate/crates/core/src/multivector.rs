//! Sparse multivectors and the products of the algebra.
//!
//! Checked methods (`gp`, `wedge`, ...) return [`Error::AlgebraMismatch`] when
//! the operands come from different algebras. The operator overloads on
//! references (`*` geometric, `^` outer, `|` left contraction) panic instead.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::ops::{Add, BitOr, BitXor, Mul, Neg, Sub};
use std::sync::Arc;

use crate::algebra::{grade_of, reorder_sign, Algebra, Blade};
use crate::error::{Error, Result};

#[derive(Clone)]
pub struct Multivector {
    alg: Arc<Algebra>,
    coeffs: BTreeMap<Blade, f64>,
}

impl fmt::Debug for Multivector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Multivector({self})")
    }
}

impl fmt::Display for Multivector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return write!(f, "0");
        }
        for (n, (&b, &c)) in self.coeffs.iter().enumerate() {
            if n > 0 {
                write!(f, " + ")?;
            }
            if b == 0 {
                write!(f, "{c}")?;
            } else {
                write!(f, "{c}*{}", self.alg.blade_name(b))?;
            }
        }
        Ok(())
    }
}

impl PartialEq for Multivector {
    fn eq(&self, other: &Self) -> bool {
        self.alg.same_as(&other.alg) && self.coeffs == other.coeffs
    }
}

impl Multivector {
    pub fn zero(alg: &Arc<Algebra>) -> Self {
        Multivector { alg: alg.clone(), coeffs: BTreeMap::new() }
    }

    pub fn scalar(alg: &Arc<Algebra>, s: f64) -> Self {
        Self::blade(alg, 0, s)
    }

    pub fn blade(alg: &Arc<Algebra>, blade: Blade, coef: f64) -> Self {
        assert!((blade as usize) < alg.blade_count(), "blade {blade:#b} outside algebra");
        let mut coeffs = BTreeMap::new();
        if coef != 0.0 {
            coeffs.insert(blade, coef);
        }
        Multivector { alg: alg.clone(), coeffs }
    }

    /// Generator `i` (zero-based).
    pub fn basis_vector(alg: &Arc<Algebra>, i: usize) -> Self {
        Self::blade(alg, 1 << i, 1.0)
    }

    /// Grade-1 element with the given generator coefficients.
    pub fn vector(alg: &Arc<Algebra>, coords: &[f64]) -> Self {
        assert!(coords.len() <= alg.dim());
        Self::from_terms(alg, coords.iter().enumerate().map(|(i, &c)| (1 << i, c)))
    }

    /// Sums the given terms; repeated blades accumulate.
    pub fn from_terms(alg: &Arc<Algebra>, terms: impl IntoIterator<Item = (Blade, f64)>) -> Self {
        let mut coeffs = BTreeMap::new();
        for (b, c) in terms {
            assert!((b as usize) < alg.blade_count(), "blade {b:#b} outside algebra");
            *coeffs.entry(b).or_insert(0.0) += c;
        }
        coeffs.retain(|_, c| *c != 0.0);
        Multivector { alg: alg.clone(), coeffs }
    }

    pub fn algebra(&self) -> &Arc<Algebra> {
        &self.alg
    }

    pub fn get(&self, blade: Blade) -> f64 {
        self.coeffs.get(&blade).copied().unwrap_or(0.0)
    }

    pub fn scalar_part(&self) -> f64 {
        self.get(0)
    }

    /// Nonzero terms in ascending blade order.
    pub fn terms(&self) -> impl Iterator<Item = (Blade, f64)> + '_ {
        self.coeffs.iter().map(|(&b, &c)| (b, c))
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Euclidean norm of the coefficient list (metric independent).
    pub fn coeff_norm(&self) -> f64 {
        // Folding from +0.0: an empty f64 sum is -0.0.
        self.coeffs.values().fold(0.0, |acc, c| acc + c * c).sqrt()
    }

    pub fn max_abs(&self) -> f64 {
        self.coeffs.values().fold(0.0, |m, c| m.max(c.abs()))
    }

    pub fn grades(&self) -> BTreeSet<usize> {
        self.coeffs.keys().map(|&b| grade_of(b)).collect()
    }

    /// Every stored blade has grade `k` (the zero element qualifies).
    pub fn is_grade(&self, k: usize) -> bool {
        self.coeffs.keys().all(|&b| grade_of(b) == k)
    }

    pub fn is_even(&self) -> bool {
        self.coeffs.keys().all(|&b| grade_of(b).is_multiple_of(2))
    }

    /// Coefficients of the grade-1 part, one per generator.
    pub fn vector_coords(&self) -> Vec<f64> {
        (0..self.alg.dim()).map(|i| self.get(1 << i)).collect()
    }

    /// Drops coefficients below the algebra's prune epsilon.
    pub fn pruned(mut self) -> Self {
        let eps = self.alg.prune_eps();
        self.coeffs.retain(|_, c| c.abs() > eps);
        self
    }

    fn check(&self, other: &Multivector) -> Result<()> {
        if self.alg.same_as(&other.alg) {
            Ok(())
        } else {
            Err(Error::AlgebraMismatch)
        }
    }

    fn with(&self, coeffs: BTreeMap<Blade, f64>) -> Self {
        Multivector { alg: self.alg.clone(), coeffs }.pruned()
    }

    fn map_coeffs(&self, f: impl Fn(Blade, f64) -> f64) -> Self {
        let coeffs = self.coeffs.iter().map(|(&b, &c)| (b, f(b, c))).filter(|(_, c)| *c != 0.0).collect();
        Multivector { alg: self.alg.clone(), coeffs }
    }

    pub fn scale(&self, s: f64) -> Self {
        self.map_coeffs(|_, c| c * s)
    }

    pub fn try_add(&self, other: &Multivector) -> Result<Self> {
        self.check(other)?;
        let mut coeffs = self.coeffs.clone();
        for (&b, &c) in &other.coeffs {
            *coeffs.entry(b).or_insert(0.0) += c;
        }
        coeffs.retain(|_, c| *c != 0.0);
        Ok(self.with(coeffs))
    }

    pub fn try_sub(&self, other: &Multivector) -> Result<Self> {
        self.try_add(&other.scale(-1.0))
    }

    /// Geometric product.
    pub fn gp(&self, other: &Multivector) -> Result<Self> {
        self.check(other)?;
        let mut acc: BTreeMap<Blade, f64> = BTreeMap::new();
        for (&a, &ca) in &self.coeffs {
            for (&b, &cb) in &other.coeffs {
                for &(m, t) in self.alg.product(a, b).iter() {
                    *acc.entry(m).or_insert(0.0) += ca * cb * t;
                }
            }
        }
        acc.retain(|_, c| *c != 0.0);
        Ok(self.with(acc))
    }

    /// Outer product; metric independent on the outer-product basis.
    pub fn wedge(&self, other: &Multivector) -> Result<Self> {
        self.check(other)?;
        let mut acc: BTreeMap<Blade, f64> = BTreeMap::new();
        for (&a, &ca) in &self.coeffs {
            for (&b, &cb) in &other.coeffs {
                if a & b == 0 {
                    *acc.entry(a | b).or_insert(0.0) += ca * cb * reorder_sign(a, b);
                }
            }
        }
        acc.retain(|_, c| *c != 0.0);
        Ok(self.with(acc))
    }

    /// Left contraction `a ⌋ b`: for blades of grades r ≤ s, the grade s−r
    /// part of the geometric product, and zero when r > s. For two vectors it
    /// is the symmetric scalar product.
    pub fn inner(&self, other: &Multivector) -> Result<Self> {
        self.check(other)?;
        let mut acc: BTreeMap<Blade, f64> = BTreeMap::new();
        for (&a, &ca) in &self.coeffs {
            let ga = grade_of(a);
            for (&b, &cb) in &other.coeffs {
                let gb = grade_of(b);
                if ga > gb {
                    continue;
                }
                for &(m, t) in self.alg.product(a, b).iter() {
                    if grade_of(m) == gb - ga {
                        *acc.entry(m).or_insert(0.0) += ca * cb * t;
                    }
                }
            }
        }
        acc.retain(|_, c| *c != 0.0);
        Ok(self.with(acc))
    }

    /// Scalar `⟨a b⟩₀`.
    pub fn scalar_product(&self, other: &Multivector) -> Result<f64> {
        self.check(other)?;
        let mut s = 0.0;
        for (&a, &ca) in &self.coeffs {
            for (&b, &cb) in &other.coeffs {
                if grade_of(a) != grade_of(b) {
                    continue;
                }
                for &(m, t) in self.alg.product(a, b).iter() {
                    if m == 0 {
                        s += ca * cb * t;
                    }
                }
            }
        }
        Ok(s)
    }

    /// `½(ab − ba)`.
    pub fn commutator(&self, other: &Multivector) -> Result<Self> {
        let ab = self.gp(other)?;
        let ba = other.gp(self)?;
        Ok(ab.try_sub(&ba)?.scale(0.5))
    }

    pub fn reverse(&self) -> Self {
        self.map_coeffs(|b, c| {
            let k = grade_of(b);
            if (k * k.saturating_sub(1) / 2).is_multiple_of(2) {
                c
            } else {
                -c
            }
        })
    }

    pub fn grade_involution(&self) -> Self {
        self.map_coeffs(|b, c| if grade_of(b).is_multiple_of(2) { c } else { -c })
    }

    pub fn grade(&self, k: usize) -> Result<Self> {
        if k > self.alg.dim() {
            return Err(Error::GradeOutOfRange { k, dim: self.alg.dim() });
        }
        Ok(self.grade_part(k))
    }

    pub(crate) fn grade_part(&self, k: usize) -> Self {
        let coeffs = self.coeffs.iter().filter(|(&b, _)| grade_of(b) == k).map(|(&b, &c)| (b, c)).collect();
        Multivector { alg: self.alg.clone(), coeffs }
    }

    /// Multiplies by the inverse of an invertible pseudoscalar blade.
    pub fn dual(&self, pseudoscalar: &Multivector) -> Result<Self> {
        let sq = pseudoscalar.gp(pseudoscalar)?;
        let s = sq.scalar_part();
        let n2 = pseudoscalar.coeff_norm().powi(2);
        let residual = sq.try_sub(&Multivector::scalar(&self.alg, s))?.coeff_norm();
        if s.abs() <= 1e-12 * n2 || residual > 1e-9 * n2.max(s.abs()) {
            return Err(Error::NonInvertiblePseudoscalar { square: s });
        }
        self.gp(&pseudoscalar.scale(1.0 / s))
    }

    /// Maps every generator `e_i` to `images[i]` and extends over wedges.
    /// The images must be vectors of one target algebra.
    pub fn outermorphism(&self, images: &[Multivector]) -> Result<Multivector> {
        assert_eq!(images.len(), self.alg.dim(), "one image per generator");
        let target = images[0].algebra().clone();
        let mut out = Multivector::zero(&target);
        for (&b, &c) in &self.coeffs {
            let mut term = Multivector::scalar(&target, c);
            for (i, img) in images.iter().enumerate() {
                if b & (1 << i) != 0 {
                    term = term.wedge(img)?;
                }
            }
            out = out.try_add(&term)?;
        }
        Ok(out)
    }

    /// Coefficient-wise comparison: `‖a − b‖ ≤ tol`.
    pub fn approx_eq(&self, other: &Multivector, tol: f64) -> bool {
        self.try_sub(other).map(|d| d.coeff_norm() <= tol).unwrap_or(false)
    }

    /// Distance between the coefficient directions of `self` and `other`,
    /// ignoring scale and sign. Zero operands compare as distance 0 only to
    /// each other.
    pub fn projective_distance(&self, other: &Multivector) -> Result<f64> {
        self.check(other)?;
        let (na, nb) = (self.coeff_norm(), other.coeff_norm());
        if na == 0.0 || nb == 0.0 {
            return Ok(if na == nb { 0.0 } else { 1.0 });
        }
        let a = self.scale(1.0 / na);
        let b = other.scale(1.0 / nb);
        let plus = a.try_sub(&b)?.coeff_norm();
        let minus = a.try_add(&b)?.coeff_norm();
        Ok(plus.min(minus))
    }
}

/// Intersection in the inner-product (dual) representation:
/// `(A ∩ B)^D = A^D ∧ B^D`.
pub fn meet(a_dual: &Multivector, b_dual: &Multivector) -> Result<Multivector> {
    a_dual.wedge(b_dual)
}

const SERIES_TOL: f64 = 1e-17;

/// Exponential of a grade-2 element. Closed form when the bivector squares to
/// a scalar, otherwise scaling and squaring of the power series.
pub fn exp_bivector(b: &Multivector) -> Result<Multivector> {
    if !b.is_grade(2) {
        return Err(Error::WrongGrade { expected: 2 });
    }
    let alg = b.algebra();
    let one = Multivector::scalar(alg, 1.0);
    if b.is_zero() {
        return Ok(one);
    }
    let sq = b.gp(b)?;
    let s = sq.scalar_part();
    let n = b.coeff_norm();
    let off_scalar = sq.try_sub(&Multivector::scalar(alg, s))?.coeff_norm();
    if off_scalar <= 1e-12 * (1.0 + n * n) {
        let (c, k) = if s.abs() <= 1e-15 * (1.0 + n * n) {
            (1.0, 1.0)
        } else if s < 0.0 {
            let w = (-s).sqrt();
            (w.cos(), w.sin() / w)
        } else {
            let w = s.sqrt();
            (w.cosh(), w.sinh() / w)
        };
        return one.scale(c).try_add(&b.scale(k));
    }
    let mut squarings = 0;
    let mut scaled = b.clone();
    while scaled.coeff_norm() > 0.25 {
        scaled = scaled.scale(0.5);
        squarings += 1;
    }
    let mut sum = one.clone();
    let mut term = one;
    for k in 1..64 {
        term = term.gp(&scaled)?.scale(1.0 / k as f64);
        sum = sum.try_add(&term)?;
        if term.coeff_norm() <= SERIES_TOL * sum.coeff_norm() {
            break;
        }
    }
    for _ in 0..squarings {
        sum = sum.gp(&sum)?;
    }
    Ok(sum)
}

/// Sandwich `V a Ṽ` normalized by the scalar `V Ṽ`. A versor sandwich maps
/// each grade to itself, so the result keeps only the grades present in `a`;
/// this drops roundoff that would otherwise leak into other grades.
pub fn apply_versor(v: &Multivector, a: &Multivector) -> Result<Multivector> {
    let rev = v.reverse();
    let norm = v.gp(&rev)?;
    let s = norm.scalar_part();
    let scale = v.coeff_norm().powi(2);
    let off = norm.try_sub(&Multivector::scalar(v.algebra(), s))?.coeff_norm();
    if s.abs() <= 1e-14 * scale || off > 1e-9 * scale.max(s.abs()) {
        return Err(Error::NotVersor);
    }
    let full = v.gp(a)?.gp(&rev)?.scale(1.0 / s);
    let mut out = Multivector::zero(a.algebra());
    for k in a.grades() {
        out = out.try_add(&full.grade_part(k))?;
    }
    Ok(out)
}

impl Add for &Multivector {
    type Output = Multivector;
    fn add(self, rhs: &Multivector) -> Multivector {
        self.try_add(rhs).expect("algebra mismatch")
    }
}

impl Sub for &Multivector {
    type Output = Multivector;
    fn sub(self, rhs: &Multivector) -> Multivector {
        self.try_sub(rhs).expect("algebra mismatch")
    }
}

impl Neg for &Multivector {
    type Output = Multivector;
    fn neg(self) -> Multivector {
        self.scale(-1.0)
    }
}

impl Mul for &Multivector {
    type Output = Multivector;
    fn mul(self, rhs: &Multivector) -> Multivector {
        self.gp(rhs).expect("algebra mismatch")
    }
}

impl Mul<f64> for &Multivector {
    type Output = Multivector;
    fn mul(self, rhs: f64) -> Multivector {
        self.scale(rhs)
    }
}

impl BitXor for &Multivector {
    type Output = Multivector;
    fn bitxor(self, rhs: &Multivector) -> Multivector {
        self.wedge(rhs).expect("algebra mismatch")
    }
}

impl BitOr for &Multivector {
    type Output = Multivector;
    fn bitor(self, rhs: &Multivector) -> Multivector {
        self.inner(rhs).expect("algebra mismatch")
    }
}
