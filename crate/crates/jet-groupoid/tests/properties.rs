//! Property suites beyond the acceptance gate: the differential
//! identities behind the partition formulas, checked on germs, plus
//! structural invariants under proptest.

mod common;

use common::GROUPS;
use jet_groupoid::connection::{covariant_derivative, ChristoffelGerm, TensorFieldGerm};
use jet_groupoid::germ::MatrixGerm;
use jet_groupoid::lie::GroupTag;
use jet_groupoid::partitions::{enumerate_antilex, enumerate_p1plus, Partition};
use jet_groupoid::tensor::multi_indices;
use jet_groupoid::verify::{random_christoffel, random_group_germ};
use nalgebra::DMatrix;
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// A dense random polynomial germ with `nsize × nsize` matrix
/// coefficients (general-linear valued).
fn random_matrix_germ(n: usize, trunc: usize, nsize: usize, rng: &mut ChaCha8Rng) -> MatrixGerm {
    let mut out = MatrixGerm::zero(n, trunc, GroupTag::GeneralLinear(nsize));
    fn exps(n: usize, budget: usize, prefix: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if prefix.len() == n {
            out.push(prefix.clone());
            return;
        }
        for t in 0..=budget {
            prefix.push(t);
            exps(n, budget - t, prefix, out);
            prefix.pop();
        }
    }
    let mut stack = Vec::new();
    exps(n, trunc, &mut Vec::new(), &mut stack);
    for e in stack {
        let m = DMatrix::from_fn(nsize, nsize, |_, _| rng.gen_range(-1.0..=1.0));
        out.set_coeff(e, m).unwrap();
    }
    out
}

/// The ordered product `ξ_{λ(μ₁…μⱼ)} = Π_i ξ_{λ_i(μ…)}` as a germ, every
/// factor truncated to a common order.
fn lambda_product(germ: &MatrixGerm, p: &Partition, idx: &[usize], trunc: usize) -> MatrixGerm {
    let mut acc: Option<MatrixGerm> = None;
    for block in p.blocks() {
        let dirs: Vec<usize> = block.elements().iter().map(|&a| idx[a - 1]).collect();
        let factor = germ.xi_field(&dirs).unwrap().truncate(trunc);
        acc = Some(match acc {
            None => factor,
            Some(prev) => prev.multiply(&factor).unwrap(),
        });
    }
    acc.expect("partitions are nonempty")
}

/// ∂ξ_{μ₁…μⱼ}/∂x^ν = ξ_{μ₁…μⱼν} − ξ_{μ₁…μⱼ} ξ_ν, as germs.
#[test]
fn xi_recursion_identity() {
    let mut rng = ChaCha8Rng::seed_from_u64(101);
    for tag in GROUPS {
        for n in 1..=2usize {
            let big_k = 4;
            let g = random_group_germ(n, big_k, tag, &mut rng);
            for j in 1..=2usize {
                for dirs in multi_indices(n, j) {
                    for nu in 0..n {
                        let t = big_k - j - 1;
                        let lhs = g.xi_field(&dirs).unwrap().partial(nu).unwrap();
                        let mut extended = dirs.clone();
                        extended.push(nu);
                        let first = g.xi_field(&extended).unwrap().truncate(t);
                        let second = g
                            .xi_field(&dirs)
                            .unwrap()
                            .truncate(t)
                            .multiply(&g.xi_field(&[nu]).unwrap().truncate(t))
                            .unwrap();
                        let rhs = first.sub(&second).unwrap();
                        assert!(
                            lhs.max_abs_diff(&rhs) < 1e-11,
                            "recursion fails for {tag}, dirs {dirs:?}, nu {nu}"
                        );
                    }
                }
            }
        }
    }
}

/// ∂_{μ_k} ξ_{λ(μ₁…μ_{k−1})} = Σ_s (ξ_{λ⁺_[s]} − ξ_{λ⁻_[s]}) over germs,
/// for λ ∈ P₁⁺(k−1).
#[test]
fn block_product_derivative_identity() {
    let mut rng = ChaCha8Rng::seed_from_u64(103);
    for n in 1..=2usize {
        for k in 2..=4usize {
            let big_k = k + 1;
            let g = random_group_germ(n, big_k, GroupTag::SpecialOrthogonal3, &mut rng);
            for p in enumerate_p1plus(k - 1).unwrap() {
                for idx in multi_indices(n, k) {
                    let (head, nu) = (&idx[..k - 1], idx[k - 1]);
                    let lhs = lambda_product(&g, &p, head, big_k - (k - 1))
                        .partial(nu)
                        .unwrap()
                        .truncate(big_k - k);
                    let mut rhs: Option<MatrixGerm> = None;
                    for s in 1..=p.block_count() {
                        let plus = lambda_product(&g, &p.extend_plus(s).unwrap(), &idx, big_k - k);
                        let minus =
                            lambda_product(&g, &p.extend_minus(s).unwrap(), &idx, big_k - k);
                        let term = plus.sub(&minus).unwrap();
                        rhs = Some(match rhs {
                            None => term,
                            Some(acc) => acc.add(&term).unwrap(),
                        });
                    }
                    let rhs = rhs.expect("partitions have at least one block");
                    assert!(
                        lhs.max_abs_diff(&rhs) < 1e-10,
                        "product rule fails for λ = {p}, idx {idx:?}"
                    );
                }
            }
        }
    }
}

/// ∇̃(Ad_g ∘ χ) = ad(χ₁)(Ad_g ∘ χ) + Ad_g ∘ ∇̃χ, where χ₁ = (dg)g⁻¹ and
/// the ad term pairs the new (last) index with χ₁.
#[test]
fn adjoint_derivative_identity() {
    let mut rng = ChaCha8Rng::seed_from_u64(107);
    let n = 2;
    let big_k = 4;
    let t = big_k - 1;
    for tag in GROUPS {
        let g = random_group_germ(n, big_k, tag, &mut rng);
        let g_trunc = g.truncate(t);
        let g_inv = g.inverse().unwrap().truncate(t);
        let gamma = random_christoffel(n, big_k, &mut rng);
        for j in 1..=2usize {
            let chi_entries: Vec<MatrixGerm> = multi_indices(n, j)
                .map(|_| random_matrix_germ(n, t, tag.matrix_size(), &mut rng))
                .collect();
            let chi = TensorFieldGerm::new(j, n, chi_entries).unwrap();

            let conj: Vec<MatrixGerm> = multi_indices(n, j)
                .map(|idx| {
                    g_trunc
                        .multiply(chi.entry(&idx).unwrap())
                        .unwrap()
                        .multiply(&g_inv)
                        .unwrap()
                })
                .collect();
            let adg_chi = TensorFieldGerm::new(j, n, conj).unwrap();

            let lhs = covariant_derivative(&adg_chi, &gamma).unwrap();
            let nabla_chi = covariant_derivative(&chi, &gamma).unwrap();
            let g2 = g.truncate(t - 1);
            let g2_inv = g_inv.truncate(t - 1);
            for idx in multi_indices(n, j + 1) {
                let (head, nu) = (&idx[..j], idx[j]);
                let chi1 = g.xi_field(&[nu]).unwrap().truncate(t - 1);
                let a = adg_chi.entry(head).unwrap().truncate(t - 1);
                let ad_term = chi1
                    .multiply(&a)
                    .unwrap()
                    .sub(&a.multiply(&chi1).unwrap())
                    .unwrap();
                let conj_term = g2
                    .multiply(&nabla_chi.entry(&idx).unwrap().truncate(t - 1))
                    .unwrap()
                    .multiply(&g2_inv)
                    .unwrap();
                let rhs = ad_term.add(&conj_term).unwrap();
                assert!(
                    lhs.entry(&idx).unwrap().max_abs_diff(&rhs) < 1e-10,
                    "adjoint derivative identity fails for {tag}, j {j}, idx {idx:?}"
                );
            }
        }
    }
}

/// Leibniz over the tensor product: ∇(α ⊗ β) = ∇α ⊗ β + α ⊗ ∇β with the
/// differentiation index in the last slot of each summand.
#[test]
fn tensor_product_leibniz() {
    let mut rng = ChaCha8Rng::seed_from_u64(109);
    let n = 2;
    let t = 3;
    let gamma = random_christoffel(n, t, &mut rng);
    let alpha_entries: Vec<MatrixGerm> =
        (0..n).map(|_| random_matrix_germ(n, t, 2, &mut rng)).collect();
    let beta_entries: Vec<MatrixGerm> =
        (0..n).map(|_| random_matrix_germ(n, t, 2, &mut rng)).collect();
    let alpha = TensorFieldGerm::new(1, n, alpha_entries).unwrap();
    let beta = TensorFieldGerm::new(1, n, beta_entries).unwrap();

    let product_entries: Vec<MatrixGerm> = multi_indices(n, 2)
        .map(|idx| {
            alpha
                .entry(&idx[..1])
                .unwrap()
                .multiply(beta.entry(&idx[1..]).unwrap())
                .unwrap()
        })
        .collect();
    let product = TensorFieldGerm::new(2, n, product_entries).unwrap();

    let lhs = covariant_derivative(&product, &gamma).unwrap();
    let d_alpha = covariant_derivative(&alpha, &gamma).unwrap();
    let d_beta = covariant_derivative(&beta, &gamma).unwrap();
    for idx in multi_indices(n, 3) {
        let (mu, nu, sigma) = (idx[0], idx[1], idx[2]);
        let left = d_alpha
            .entry(&[mu, sigma])
            .unwrap()
            .multiply(&beta.entry(&[nu]).unwrap().truncate(t - 1))
            .unwrap();
        let right = alpha
            .entry(&[mu])
            .unwrap()
            .truncate(t - 1)
            .multiply(d_beta.entry(&[nu, sigma]).unwrap())
            .unwrap();
        let rhs = left.add(&right).unwrap();
        assert!(
            lhs.entry(&idx).unwrap().max_abs_diff(&rhs) < 1e-10,
            "leibniz fails at {idx:?}"
        );
    }
}

/// The covariant trivialization route on a germ whose first-order data
/// is constant: g(t) = exp(tA) under Γ¹₁₁ = c gives ξ⁽²⁾ = −cA.
#[test]
fn constant_christoffel_curve_example() {
    let [_, _, e3] = jet_groupoid::lie::so3_generators();
    let tag = GroupTag::SpecialOrthogonal3;
    let g = jet_groupoid::germ::sample_exp_germ(
        1,
        3,
        tag,
        std::slice::from_ref(&e3),
        &[jet_groupoid::lie::AlgebraElement::zero(tag)],
    )
    .unwrap();
    let c = 0.6;
    let mut gamma = ChristoffelGerm::zeros(1, 3);
    gamma
        .set_component(0, 0, 0, jet_groupoid::germ::ScalarGerm::constant(1, 3, c))
        .unwrap();
    let jet = g.trivialize_covariant(2, &gamma).unwrap();
    let xi1 = jet.tensor(1).unwrap().entry(&[0]).unwrap().clone();
    let xi2 = jet.tensor(2).unwrap().entry(&[0, 0]).unwrap().clone();
    assert!((&xi1 - e3.matrix()).norm() < 1e-12);
    assert!((&xi2 - e3.matrix() * (-c)).norm() < 1e-12);
    // flat route instead: ξ⁽²⁾ = 0 for a one-parameter subgroup
    let flat = g.trivialize_flat(2).unwrap();
    assert!(flat.tensor(2).unwrap().max_abs() < 1e-12);
}

proptest! {
    #[test]
    fn parent_inverts_extension(j in 1usize..=5, pick in any::<prop::sample::Index>(), s_pick in any::<prop::sample::Index>(), plus in any::<bool>()) {
        let family = enumerate_p1plus(j).unwrap();
        let p = family[pick.index(family.len())].clone();
        let s = 1 + s_pick.index(p.block_count());
        let child = if plus { p.extend_plus(s).unwrap() } else { p.extend_minus(s).unwrap() };
        let (parent, s_back, kind) = child.parent().unwrap();
        prop_assert_eq!(parent, p);
        prop_assert_eq!(s_back, s);
        prop_assert_eq!(matches!(kind, jet_groupoid::partitions::ExtendKind::Plus), plus);
    }

    #[test]
    fn partition_json_round_trip(j in 1usize..=6, pick in any::<prop::sample::Index>(), antilex in any::<bool>()) {
        let family = if antilex { enumerate_antilex(j).unwrap() } else { enumerate_p1plus(j).unwrap() };
        let p = &family[pick.index(family.len())];
        let text = serde_json::to_string(p).unwrap();
        let back: Partition = serde_json::from_str(&text).unwrap();
        prop_assert_eq!(&back, p);
    }

    #[test]
    fn sign_matches_parity_everywhere(j in 1usize..=6, pick in any::<prop::sample::Index>()) {
        let family = enumerate_p1plus(j).unwrap();
        let p = &family[pick.index(family.len())];
        let expect = if (p.block_count() - 1).is_multiple_of(2) { 1 } else { -1 };
        prop_assert_eq!(p.sign().unwrap(), expect);
    }

    #[test]
    fn germ_inverse_is_an_involution(seed in any::<u64>(), n in 1usize..=2, k in 1usize..=3) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let g = random_group_germ(n, k, GroupTag::SpecialLinear2, &mut rng);
        let back = g.inverse().unwrap().inverse().unwrap();
        prop_assert!(g.max_abs_diff(&back) < 1e-10);
        let id = MatrixGerm::identity(n, k, GroupTag::SpecialLinear2);
        prop_assert!(g.multiply(&g.inverse().unwrap()).unwrap().max_abs_diff(&id) < 1e-10);
    }

    #[test]
    fn sym_skew_decomposition(seed in any::<u64>(), n in 1usize..=3) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let entries: Vec<_> = multi_indices(n, 2)
            .map(|_| jet_groupoid::lie::random_algebra(GroupTag::SpecialOrthogonal3, &mut rng).matrix().clone())
            .collect();
        let t = jet_groupoid::tensor::GValuedTensor::new(2, n, GroupTag::SpecialOrthogonal3, entries).unwrap();
        let sym = t.sym2().unwrap();
        let skew = t.skew2().unwrap();
        prop_assert!(sym.add(&skew).unwrap().max_abs_diff(&t).unwrap() < 1e-14);
        prop_assert!(sym.sym2().unwrap().max_abs_diff(&sym).unwrap() < 1e-14);
        prop_assert!(skew.skew2().unwrap().max_abs_diff(&skew).unwrap() < 1e-14);
        prop_assert!(sym.skew2().unwrap().max_abs() < 1e-14);
    }
}
