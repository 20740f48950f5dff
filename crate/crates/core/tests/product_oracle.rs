//! Cross-checks the geometric product against an independent construction.
//!
//! The oracle works on the *Clifford product basis* `e_{i1} e_{i2} ... e_{ik}`
//! (increasing indices, geometric products of generators) rather than the
//! outer-product basis the library stores. A generator is moved into normal
//! position with `e_i e_j = 2 g_ij − e_j e_i`, and wedge blades are expanded
//! as signed averages over all orderings of their factors. Agreement between
//! the two representations checks the product table, the metric handling of
//! off-diagonal and degenerate Grams, and the wedge/contraction projections.

use std::collections::BTreeMap;
use std::sync::Arc;

use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use stcga::{Algebra, Multivector};

type Words = BTreeMap<u32, f64>;

/// `e_i · e_S` with `e_S` an increasing product-basis element.
fn left_mul_generator(g: &[Vec<f64>], i: usize, s: u32, coef: f64, out: &mut Words) {
    if coef == 0.0 {
        return;
    }
    if s == 0 {
        *out.entry(1 << i).or_insert(0.0) += coef;
        return;
    }
    let first = s.trailing_zeros() as usize;
    let rest = s & !(1 << first);
    if i < first {
        *out.entry(s | (1 << i)).or_insert(0.0) += coef;
    } else if i == first {
        *out.entry(rest).or_insert(0.0) += coef * g[i][i];
    } else {
        // e_i e_f R = 2 g_if R − e_f (e_i R); every index of e_i R exceeds f.
        *out.entry(rest).or_insert(0.0) += 2.0 * coef * g[i][first];
        let mut inner = Words::new();
        left_mul_generator(g, i, rest, 1.0, &mut inner);
        for (w, c) in inner {
            debug_assert!(w & ((1 << (first + 1)) - 1) == 0);
            *out.entry(w | (1 << first)).or_insert(0.0) -= coef * c;
        }
    }
}

/// Product of two product-basis expansions.
fn words_product(g: &[Vec<f64>], a: &Words, b: &Words) -> Words {
    let mut out = Words::new();
    for (&wa, &ca) in a {
        for (&wb, &cb) in b {
            // e_{a1} e_{a2} ... e_{ak} · e_B, applied right to left.
            let mut cur: Words = [(wb, ca * cb)].into_iter().collect();
            let idx: Vec<usize> = (0..32).filter(|k| wa & (1 << k) != 0).collect();
            for &k in idx.iter().rev() {
                let mut next = Words::new();
                for (&w, &c) in &cur {
                    left_mul_generator(g, k, w, c, &mut next);
                }
                cur = next;
            }
            for (w, c) in cur {
                *out.entry(w).or_insert(0.0) += c;
            }
        }
    }
    out
}

fn permutations(items: &[usize]) -> Vec<(Vec<usize>, f64)> {
    if items.len() <= 1 {
        return vec![(items.to_vec(), 1.0)];
    }
    let mut out = Vec::new();
    for k in 0..items.len() {
        let mut rest = items.to_vec();
        let head = rest.remove(k);
        let sign = if k % 2 == 0 { 1.0 } else { -1.0 };
        for (mut p, s) in permutations(&rest) {
            p.insert(0, head);
            out.push((p, s * sign));
        }
    }
    out
}

/// Expands an outer-product-basis multivector on the product basis:
/// `e_{i1}∧…∧e_{ik} = (1/k!) Σ_σ sgn σ · e_{σ(i1)} … e_{σ(ik)}`.
fn to_words(g: &[Vec<f64>], a: &Multivector) -> Words {
    let mut out = Words::new();
    for (blade, coef) in a.terms() {
        let idx: Vec<usize> = (0..32).filter(|k| blade & (1 << k) != 0).collect();
        let perms = permutations(&idx);
        let norm = perms.len() as f64;
        for (p, sign) in perms {
            let mut cur: Words = [(0u32, coef * sign / norm)].into_iter().collect();
            for &k in p.iter().rev() {
                let mut next = Words::new();
                for (&w, &c) in &cur {
                    left_mul_generator(g, k, w, c, &mut next);
                }
                cur = next;
            }
            for (w, c) in cur {
                *out.entry(w).or_insert(0.0) += c;
            }
        }
    }
    out
}

fn words_close(a: &Words, b: &Words, tol: f64) -> bool {
    let keys: std::collections::BTreeSet<u32> = a.keys().chain(b.keys()).copied().collect();
    keys.into_iter().all(|k| (a.get(&k).unwrap_or(&0.0) - b.get(&k).unwrap_or(&0.0)).abs() <= tol)
}

fn random_gram(rng: &mut ChaCha8Rng, dim: usize, degenerate: bool) -> Vec<Vec<f64>> {
    let mut g = vec![vec![0.0; dim]; dim];
    for i in 0..dim {
        for j in i..dim {
            let v = if i == j { rng.gen_range(-2.0..2.0) } else { rng.gen_range(-1.0..1.0) };
            g[i][j] = v;
            g[j][i] = v;
        }
    }
    if degenerate {
        // Make the last generator a radical direction.
        for k in 0..dim {
            g[dim - 1][k] = 0.0;
            g[k][dim - 1] = 0.0;
        }
    }
    g
}

fn random_mv(rng: &mut ChaCha8Rng, alg: &Arc<Algebra>, density: f64) -> Multivector {
    let mut terms = Vec::new();
    for b in 0..alg.blade_count() as u32 {
        if rng.gen_bool(density) {
            terms.push((b, rng.gen_range(-1.0..1.0)));
        }
    }
    Multivector::from_terms(alg, terms)
}

#[test]
fn full_products_match_normal_ordering_oracle() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for trial in 0..40 {
        let dim = 2 + trial % 4;
        let g = random_gram(&mut rng, dim, trial % 3 == 0);
        let alg = Algebra::build(g.clone(), (0..dim).map(|i| format!("e{i}")).collect(), 0.0).unwrap();
        let a = random_mv(&mut rng, &alg, 0.5);
        let b = random_mv(&mut rng, &alg, 0.5);
        let lib = to_words(&g, &(&a * &b));
        let oracle = words_product(&g, &to_words(&g, &a), &to_words(&g, &b));
        assert!(words_close(&lib, &oracle, 1e-12), "dim {dim} trial {trial}: {a} * {b}");
    }
}

#[test]
fn on_demand_products_match_oracle_above_table_dimension() {
    let mut rng = ChaCha8Rng::seed_from_u64(12);
    let dim = 10;
    let g = random_gram(&mut rng, dim, true);
    let alg = Algebra::new(g.clone()).unwrap();
    for _ in 0..20 {
        // Low-grade operands keep the permutation expansion small.
        let pick = |rng: &mut ChaCha8Rng| {
            let terms: Vec<(u32, f64)> = (0..4)
                .map(|_| {
                    let mut b = 0u32;
                    while b.count_ones() < 3 {
                        b |= 1 << rng.gen_range(0..dim);
                    }
                    (b, rng.gen_range(-1.0..1.0))
                })
                .collect();
            Multivector::from_terms(&alg, terms)
        };
        let a = pick(&mut rng);
        let b = pick(&mut rng);
        let lib = to_words(&g, &(&a * &b));
        let oracle = words_product(&g, &to_words(&g, &a), &to_words(&g, &b));
        assert!(words_close(&lib, &oracle, 1e-12));
    }
}

#[test]
fn null_basis_origin_times_timelike_infinity() {
    let m = stcga::cga7::SpacetimeModel::new();
    let alg = m.null_basis_algebra();
    let o = Multivector::basis_vector(&alg, 4);
    let ip = Multivector::basis_vector(&alg, 5);
    let im = Multivector::basis_vector(&alg, 6);
    // Hand expansion: uv = u·v + u∧v with O·∞₊ = 1, O·∞₋ = −1, ∞₊·∞₋ = 0.
    assert_eq!(&o * &ip, &Multivector::scalar(&alg, 1.0) + &(&o ^ &ip));
    assert_eq!(&o * &im, &Multivector::scalar(&alg, -1.0) + &(&o ^ &im));
    assert_eq!(&ip * &im, &ip ^ &im);
    assert!((&ip * &ip).is_zero());
}

fn arb_case() -> impl Strategy<Value = (u64, usize)> {
    (any::<u64>(), 2usize..6)
}

fn setup(seed: u64, dim: usize) -> (ChaCha8Rng, Vec<Vec<f64>>, Arc<Algebra>) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let g = random_gram(&mut rng, dim, seed.is_multiple_of(2));
    let alg = Algebra::new(g.clone()).unwrap();
    (rng, g, alg)
}

fn random_vector(rng: &mut ChaCha8Rng, alg: &Arc<Algebra>) -> Multivector {
    let c: Vec<f64> = (0..alg.dim()).map(|_| rng.gen_range(-1.0..1.0)).collect();
    Multivector::vector(alg, &c)
}

fn dot(g: &[Vec<f64>], u: &[f64], v: &[f64]) -> f64 {
    (0..u.len()).map(|i| (0..v.len()).map(|j| u[i] * g[i][j] * v[j]).sum::<f64>()).sum()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn product_is_associative((seed, dim) in arb_case()) {
        let (mut rng, _, alg) = setup(seed, dim);
        let (a, b, c) = (random_mv(&mut rng, &alg, 0.6), random_mv(&mut rng, &alg, 0.6), random_mv(&mut rng, &alg, 0.6));
        prop_assert!((&(&a * &b) * &c).approx_eq(&(&a * &(&b * &c)), 1e-11));
    }

    #[test]
    fn product_distributes((seed, dim) in arb_case()) {
        let (mut rng, _, alg) = setup(seed, dim);
        let (a, b, c) = (random_mv(&mut rng, &alg, 0.6), random_mv(&mut rng, &alg, 0.6), random_mv(&mut rng, &alg, 0.6));
        prop_assert!((&a * &(&b + &c)).approx_eq(&(&(&a * &b) + &(&a * &c)), 1e-12));
        prop_assert!((&(&b + &c) * &a).approx_eq(&(&(&b * &a) + &(&c * &a)), 1e-12));
    }

    #[test]
    fn vector_product_splits_into_dot_and_wedge((seed, dim) in arb_case()) {
        let (mut rng, g, alg) = setup(seed, dim);
        let u = random_vector(&mut rng, &alg);
        let v = random_vector(&mut rng, &alg);
        let expected_dot = dot(&g, &u.vector_coords(), &v.vector_coords());
        prop_assert!(((&u | &v).scalar_part() - expected_dot).abs() < 1e-13);
        let split = &Multivector::scalar(&alg, expected_dot) + &(&u ^ &v);
        prop_assert!((&u * &v).approx_eq(&split, 1e-13));
        // Clifford relation uv + vu = 2 u·v.
        prop_assert!((&(&u * &v) + &(&v * &u)).approx_eq(&Multivector::scalar(&alg, 2.0 * expected_dot), 1e-13));
    }

    #[test]
    fn vector_contraction_onto_bivector((seed, dim) in arb_case()) {
        let (mut rng, g, alg) = setup(seed, dim);
        let (x, a, b) = (random_vector(&mut rng, &alg), random_vector(&mut rng, &alg), random_vector(&mut rng, &alg));
        let xa = dot(&g, &x.vector_coords(), &a.vector_coords());
        let xb = dot(&g, &x.vector_coords(), &b.vector_coords());
        let expected = &b.scale(xa) - &a.scale(xb);
        prop_assert!((&x | &(&a ^ &b)).approx_eq(&expected, 1e-13));
    }

    #[test]
    fn reverse_is_an_anti_automorphism((seed, dim) in arb_case()) {
        let (mut rng, _, alg) = setup(seed, dim);
        let (a, b) = (random_mv(&mut rng, &alg, 0.6), random_mv(&mut rng, &alg, 0.6));
        prop_assert!((&a * &b).reverse().approx_eq(&(&b.reverse() * &a.reverse()), 1e-12));
    }

    #[test]
    fn wedge_is_associative_and_metric_free((seed, dim) in arb_case()) {
        let (mut rng, _, alg) = setup(seed, dim);
        let (a, b, c) = (random_mv(&mut rng, &alg, 0.6), random_mv(&mut rng, &alg, 0.6), random_mv(&mut rng, &alg, 0.6));
        prop_assert!((&(&a ^ &b) ^ &c).approx_eq(&(&a ^ &(&b ^ &c)), 1e-12));
        let euclid = Algebra::new((0..dim).map(|i| (0..dim).map(|j| f64::from(u8::from(i == j))).collect()).collect()).unwrap();
        let port = |m: &Multivector| Multivector::from_terms(&euclid, m.terms());
        prop_assert_eq!(port(&(&a ^ &b)), &port(&a) ^ &port(&b));
    }

    #[test]
    fn double_dual_is_sign_of_pseudoscalar_square(seed in any::<u64>(), dim in 2usize..6) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        // Non-degenerate diagonal signature so the pseudoscalar is invertible.
        let g: Vec<Vec<f64>> = (0..dim)
            .map(|i| (0..dim).map(|j| if i == j { if rng.gen_bool(0.5) { 1.0 } else { -1.0 } } else { 0.0 }).collect())
            .collect();
        let alg = Algebra::new(g).unwrap();
        let ps = Multivector::blade(&alg, (1 << dim) - 1, 1.0);
        let sign = (&ps * &ps).scalar_part();
        prop_assert!(sign.abs() == 1.0);
        let a = random_mv(&mut rng, &alg, 0.6);
        let twice = a.dual(&ps).unwrap().dual(&ps).unwrap();
        prop_assert!(twice.approx_eq(&a.scale(sign), 1e-12));
    }

    #[test]
    fn exp_matches_raw_series((seed, dim) in arb_case()) {
        let (mut rng, _, alg) = setup(seed, dim.max(3));
        let biv: Vec<(u32, f64)> = (0..alg.blade_count() as u32)
            .filter(|b| b.count_ones() == 2)
            .map(|b| (b, rng.gen_range(-1.0..1.0)))
            .collect();
        let mut b = Multivector::from_terms(&alg, biv);
        let n = b.coeff_norm();
        if n > 2.0 {
            b = b.scale(2.0 / n);
        }
        let mut sum = Multivector::scalar(&alg, 1.0);
        let mut term = Multivector::scalar(&alg, 1.0);
        for k in 1..40 {
            term = (&term * &b).scale(1.0 / k as f64);
            sum = &sum + &term;
        }
        let got = stcga::exp_bivector(&b).unwrap();
        prop_assert!(got.approx_eq(&sum, 1e-10 * sum.coeff_norm().max(1.0)), "{got} vs {sum}");
    }
}
