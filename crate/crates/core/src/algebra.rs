//! Algebra descriptors: a generator Gram matrix plus the blade product table.
//!
//! Multivectors are stored on the outer-product basis of the generators,
//! i.e. the bitmask `0b101` denotes `e0 ∧ e2`. On this basis the wedge and the
//! reverse are metric independent; only the geometric product consults the
//! Gram matrix. The Gram may be indefinite and may have zero rows.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use nalgebra::{DMatrix, SymmetricEigen};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Bitmask of generator indices.
pub type Blade = u32;

pub const MAX_DIM: usize = 16;
/// Largest dimension whose full pairwise product table is built eagerly.
pub const TABLE_DIM: usize = 8;
pub const DEFAULT_PRUNE_EPS: f64 = 1e-14;
const SYMMETRY_TOL: f64 = 1e-12;

type Terms = Vec<(Blade, f64)>;

/// Sign counts of a Gram matrix spectrum.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Signature {
    pub positive: usize,
    pub negative: usize,
    pub zero: usize,
}

impl fmt::Display for Signature {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {}, {})", self.positive, self.negative, self.zero)
    }
}

/// Counts eigenvalue signs of a symmetric matrix. Eigenvalues with magnitude
/// below `1e-9 * max(1, max|λ|)` count as zero.
pub fn signature_of(gram: &[Vec<f64>]) -> Signature {
    let n = gram.len();
    let m = DMatrix::from_fn(n, n, |i, j| gram[i][j]);
    let eig = SymmetricEigen::new(m).eigenvalues;
    let scale = eig.iter().fold(1.0_f64, |acc, l| acc.max(l.abs()));
    let tol = 1e-9 * scale;
    let mut sig = Signature { positive: 0, negative: 0, zero: 0 };
    for &l in eig.iter() {
        if l > tol {
            sig.positive += 1;
        } else if l < -tol {
            sig.negative += 1;
        } else {
            sig.zero += 1;
        }
    }
    sig
}

/// Immutable algebra descriptor. Shared between multivectors through [`Arc`].
pub struct Algebra {
    dim: usize,
    gram: Vec<f64>,
    names: Vec<String>,
    diagonal: bool,
    prune_eps: f64,
    // Row-major `(1 << dim)^2` table; `None` above TABLE_DIM.
    table: Option<Vec<Terms>>,
}

impl fmt::Debug for Algebra {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Algebra")
            .field("dim", &self.dim)
            .field("names", &self.names)
            .field("gram", &self.gram_rows())
            .finish()
    }
}

impl Algebra {
    /// Builds an algebra with generators named `e1..en`.
    pub fn new(gram: Vec<Vec<f64>>) -> Result<Arc<Algebra>> {
        let names = (1..=gram.len()).map(|i| format!("e{i}")).collect();
        Self::with_names(gram, names)
    }

    pub fn with_names(gram: Vec<Vec<f64>>, names: Vec<String>) -> Result<Arc<Algebra>> {
        Self::build(gram, names, DEFAULT_PRUNE_EPS)
    }

    /// Full constructor. `prune_eps` is the magnitude below which coefficients
    /// are dropped after composite operations; pass `0.0` to keep everything.
    pub fn build(gram: Vec<Vec<f64>>, names: Vec<String>, prune_eps: f64) -> Result<Arc<Algebra>> {
        let dim = gram.len();
        if dim == 0 || dim > MAX_DIM {
            return Err(Error::DimensionOutOfRange(dim));
        }
        if gram.iter().any(|row| row.len() != dim) || names.len() != dim {
            return Err(Error::GramShape { dim });
        }
        for i in 0..dim {
            for j in (i + 1)..dim {
                let (a, b) = (gram[i][j], gram[j][i]);
                if (a - b).abs() > SYMMETRY_TOL {
                    return Err(Error::NonSymmetricGram { i, j, a, b });
                }
            }
        }
        // Store the exactly symmetric upper triangle.
        let mut flat = vec![0.0; dim * dim];
        for i in 0..dim {
            for j in i..dim {
                flat[i * dim + j] = gram[i][j];
                flat[j * dim + i] = gram[i][j];
            }
        }
        let diagonal = (0..dim).all(|i| (0..dim).all(|j| i == j || flat[i * dim + j] == 0.0));
        let mut alg = Algebra { dim, gram: flat, names, diagonal, prune_eps, table: None };
        if dim <= TABLE_DIM {
            alg.table = Some(alg.build_table());
        }
        Ok(Arc::new(alg))
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn blade_count(&self) -> usize {
        1 << self.dim
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn prune_eps(&self) -> f64 {
        self.prune_eps
    }

    /// Inner product of generators `i` and `j`.
    pub fn metric(&self, i: usize, j: usize) -> f64 {
        self.gram[i * self.dim + j]
    }

    pub fn gram_rows(&self) -> Vec<Vec<f64>> {
        self.gram.chunks(self.dim).map(|r| r.to_vec()).collect()
    }

    pub fn signature(&self) -> Signature {
        signature_of(&self.gram_rows())
    }

    /// Same dimension and bitwise-identical Gram.
    pub fn same_as(&self, other: &Algebra) -> bool {
        std::ptr::eq(self, other) || (self.dim == other.dim && self.gram == other.gram)
    }

    /// Name of a basis blade such as `e1^e2`; the scalar blade is `1`.
    pub fn blade_name(&self, blade: Blade) -> String {
        if blade == 0 {
            return "1".to_string();
        }
        (0..self.dim)
            .filter(|i| blade & (1 << i) != 0)
            .map(|i| self.names[i].as_str())
            .collect::<Vec<_>>()
            .join("^")
    }

    /// Inverse of [`Algebra::blade_name`]. Factors must appear in ascending
    /// generator order.
    pub fn parse_blade(&self, name: &str) -> Result<Blade> {
        if name == "1" {
            return Ok(0);
        }
        let mut blade: Blade = 0;
        let mut last: Option<usize> = None;
        for part in name.split('^') {
            let idx = self
                .names
                .iter()
                .position(|n| n == part)
                .ok_or_else(|| Error::UnknownBlade(name.to_string()))?;
            if last.is_some_and(|l| idx <= l) {
                return Err(Error::UnknownBlade(name.to_string()));
            }
            last = Some(idx);
            blade |= 1 << idx;
        }
        Ok(blade)
    }

    /// Geometric product of two basis blades as a list of `(blade, coefficient)`.
    pub fn product(&self, a: Blade, b: Blade) -> std::borrow::Cow<'_, [(Blade, f64)]> {
        match &self.table {
            Some(t) => std::borrow::Cow::Borrowed(&t[((a as usize) << self.dim) | b as usize]),
            None => std::borrow::Cow::Owned(self.compute_product(a, b)),
        }
    }

    fn build_table(&self) -> Vec<Terms> {
        let n = self.blade_count();
        let mut table: Vec<Terms> = Vec::with_capacity(n * n);
        for a in 0..n as Blade {
            for b in 0..n as Blade {
                let terms = if self.diagonal {
                    self.diagonal_product(a, b)
                } else {
                    let done = &table;
                    self.recursive_product(a, b, &|x, y| done[((x as usize) << self.dim) | y as usize].clone())
                };
                table.push(terms);
            }
        }
        table
    }

    fn compute_product(&self, a: Blade, b: Blade) -> Terms {
        if self.diagonal {
            self.diagonal_product(a, b)
        } else {
            self.recursive_product(a, b, &|x, y| self.compute_product(x, y))
        }
    }

    fn diagonal_product(&self, a: Blade, b: Blade) -> Terms {
        let mut coef = reorder_sign(a, b);
        let mut common = a & b;
        while common != 0 {
            let i = common.trailing_zeros() as usize;
            coef *= self.metric(i, i);
            common &= common - 1;
        }
        if coef == 0.0 {
            Vec::new()
        } else {
            vec![(a ^ b, coef)]
        }
    }

    /// Writes `a = e_i ∧ rest` with `i` the lowest generator of `a`, so that
    /// `a b = e_i (rest b) − (e_i ⌋ rest) b`. Every blade handed to `lookup`
    /// is numerically smaller than `a`.
    fn recursive_product(&self, a: Blade, b: Blade, lookup: &dyn Fn(Blade, Blade) -> Terms) -> Terms {
        if a == 0 {
            return vec![(b, 1.0)];
        }
        let i = a.trailing_zeros() as usize;
        let rest = a & !(1 << i);
        let mut acc: BTreeMap<Blade, f64> = BTreeMap::new();
        for (m, c) in lookup(rest, b) {
            for (m2, c2) in self.vector_times_blade(i, m) {
                *acc.entry(m2).or_insert(0.0) += c * c2;
            }
        }
        for (m, c) in self.vector_contract_blade(i, rest) {
            for (m2, c2) in lookup(m, b) {
                *acc.entry(m2).or_insert(0.0) -= c * c2;
            }
        }
        acc.into_iter().filter(|(_, c)| *c != 0.0).collect()
    }

    /// `e_i ⌋ B` for a basis blade `B`.
    fn vector_contract_blade(&self, i: usize, b: Blade) -> Terms {
        let mut out = Vec::new();
        let mut bits = b;
        let mut pos = 0;
        while bits != 0 {
            let j = bits.trailing_zeros() as usize;
            let g = self.metric(i, j);
            if g != 0.0 {
                let sign = if pos % 2 == 0 { 1.0 } else { -1.0 };
                out.push((b & !(1 << j), sign * g));
            }
            bits &= bits - 1;
            pos += 1;
        }
        out
    }

    /// `e_i B = e_i ⌋ B + e_i ∧ B`.
    fn vector_times_blade(&self, i: usize, b: Blade) -> Terms {
        let mut out = self.vector_contract_blade(i, b);
        if b & (1 << i) == 0 {
            let below = (b & ((1 << i) - 1)).count_ones();
            let sign = if below.is_multiple_of(2) { 1.0 } else { -1.0 };
            out.push((b | (1 << i), sign));
        }
        out
    }
}

/// Sign of reordering the concatenated generator list of `a` then `b` into
/// ascending order.
pub fn reorder_sign(a: Blade, b: Blade) -> f64 {
    let mut a = a >> 1;
    let mut swaps = 0;
    while a != 0 {
        swaps += (a & b).count_ones();
        a >>= 1;
    }
    if swaps % 2 == 0 {
        1.0
    } else {
        -1.0
    }
}

pub fn grade_of(blade: Blade) -> usize {
    blade.count_ones() as usize
}
