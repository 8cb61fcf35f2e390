mod common;

use blockqap::classes::{
    gmam_compose, gmam_decompose, is_anti_monge, is_monotone, recognize_block_structure, recognize_product,
    split_anti_monge, BlockSpec, Expand, ProductSpec, SumSpec,
};
use blockqap::gen::{self, rng};
use blockqap::pattern::{qp1_minimize, qp2_minimize_2x2, Ensemble, Pattern};
use blockqap::product_block::{solve_product_block, ProductBlockInstance};
use blockqap::reductions::{reduce_partition, yes_certificate_to_permutation, PartitionInstance};
use blockqap::{evaluate, int, rat, Permutation, QapInstance, Rational, SymMatrix};
use common::dense;
use proptest::prelude::*;

fn matrix_from(n: usize, upper: &[i64]) -> SymMatrix {
    // Row-major index of (i, j), i <= j, in the upper triangle.
    let at = |i: usize, j: usize| i * n - i * i.saturating_sub(1) / 2 + (j - i);
    SymMatrix::from_fn(n, |i, j| int(upper[at(i.min(j), i.max(j))])).unwrap()
}

prop_compose! {
    fn sym_matrix(n: usize)(upper in prop::collection::vec(-9i64..=9, n * (n + 1) / 2)) -> SymMatrix {
        matrix_from(n, &upper)
    }
}

prop_compose! {
    fn permutation(n: usize)(p in Just((0..n).collect::<Vec<_>>()).prop_shuffle()) -> Permutation {
        Permutation::new(p).unwrap()
    }
}

fn instance_triple() -> impl Strategy<Value = (SymMatrix, SymMatrix, SymMatrix, Permutation)> {
    (1usize..=6).prop_flat_map(|n| (sym_matrix(n), sym_matrix(n), sym_matrix(n), permutation(n)))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn evaluation_matches_reference((a, _, b, p) in instance_triple()) {
        let inst = QapInstance::new(a.clone(), b.clone()).unwrap();
        prop_assert_eq!(evaluate(&inst, &p).unwrap(), common::objective(&dense(&a), &dense(&b), p.image()));
    }

    #[test]
    fn objective_is_linear_in_a((a1, a2, b, p) in instance_triple(), c in -5i64..=5) {
        let z = |a: &SymMatrix| evaluate(&QapInstance::new(a.clone(), b.clone()).unwrap(), &p).unwrap();
        let sum = a1.checked_add(&a2).unwrap();
        prop_assert_eq!(z(&sum), z(&a1) + z(&a2));
        prop_assert_eq!(z(&a1.scale(&int(c))), z(&a1) * int(c));
    }

    #[test]
    fn relabelling_both_matrices_preserves_values((a, _, b, p) in instance_triple(), seed in any::<u64>()) {
        // Z_π(A, B) = Z_{σ⁻¹∘π}(σ-relabelled A, B).
        let n = a.n();
        let mut order: Vec<usize> = (0..n).collect();
        use rand::seq::SliceRandom;
        order.shuffle(&mut rng(seed));
        let sigma = Permutation::new(order).unwrap();
        let relabelled = a.permuted(&sigma).unwrap();
        let z = evaluate(&QapInstance::new(a, b.clone()).unwrap(), &p).unwrap();
        let q = sigma.inverse().compose(&p).unwrap();
        prop_assert_eq!(evaluate(&QapInstance::new(relabelled, b).unwrap(), &q).unwrap(), z);
    }

    #[test]
    fn sum_matrix_against_constant_row_sums(
        n in 1usize..=6,
        alpha in prop::collection::vec(-6i64..=6, 6),
        (c, d, e) in (0i64..=3, 0i64..=3, 0i64..=3),
        p_seed in any::<u64>(),
    ) {
        let alpha: Vec<Rational> = alpha[..n].iter().map(|&x| int(x)).collect();
        let a = SumSpec { alpha: alpha.clone() }.expand().unwrap();
        // c · cycle + d · I + e · J has equal row sums.
        let b = SymMatrix::from_fn(n, |i, j| {
            let step = (j + n - i) % n;
            let on_cycle = n > 1 && (step == 1 || step == n - 1);
            int(c * i64::from(on_cycle) + d * i64::from(i == j) + e)
        }).unwrap();
        let row = b.row(0).iter().sum::<Rational>();
        prop_assert!(b.rows().all(|r| r.iter().sum::<Rational>() == row));
        let expected = int(2) * &row * alpha.iter().sum::<Rational>();
        let values = common::all_values(&dense(&a), &dense(&b));
        prop_assert!(values.iter().all(|v| *v == expected));
        let mut order: Vec<usize> = (0..n).collect();
        use rand::seq::SliceRandom;
        order.shuffle(&mut rng(p_seed));
        let inst = QapInstance::new(a, b).unwrap();
        prop_assert_eq!(evaluate(&inst, &Permutation::new(order).unwrap()).unwrap(), expected);
    }

    #[test]
    fn adjacent_check_equals_exhaustive(seed in any::<u64>(), n in 1usize..=6, bump in -2i64..=2) {
        let mut r = rng(seed);
        let base = gen::anti_monge_with(&mut r, n, 3).unwrap();
        use rand::Rng;
        let (i, j) = (r.gen_range(0..n), r.gen_range(0..n));
        let a = SymMatrix::from_fn(n, |k, l| {
            let x = base.get(k, l).clone();
            if (k, l) == (i.min(j), i.max(j)) { x + int(bump) } else { x }
        }).unwrap();
        prop_assert_eq!(is_anti_monge(&a), common::is_anti_monge_exhaustive(&dense(&a)));
    }

    #[test]
    fn split_reassembles(seed in any::<u64>(), n in 1usize..=8) {
        let a = gen::gen_anti_monge(n, 4, seed).unwrap();
        let split = split_anti_monge(&a).unwrap();
        prop_assert!(is_monotone(&split.monotone));
        prop_assert!(is_anti_monge(&split.monotone));
        prop_assert_eq!(split.monotone.checked_add(&split.sum.expand().unwrap()).unwrap(), a);
    }

    #[test]
    fn product_recognition_is_proportional(alpha in prop::collection::vec((0i64..=9, 1i64..=4), 1..=7)) {
        let alpha: Vec<Rational> = alpha.into_iter().map(|(p, q)| rat(p, q)).collect();
        let a = ProductSpec::new(alpha.clone()).unwrap().expand().unwrap();
        let beta = recognize_product(&a).expect("product matrix");
        match alpha.iter().position(|x| *x != int(0)) {
            None => prop_assert!(beta.iter().all(|b| *b == int(0))),
            Some(i0) => {
                for (b, a) in beta.iter().zip(&alpha) {
                    prop_assert_eq!(b, &(a * &alpha[i0]));
                }
            }
        }
    }

    #[test]
    fn block_structure_round_trips(seed in any::<u64>(), n in 1usize..=9, q in 1usize..=4) {
        let mut r = rng(seed);
        let spec = BlockSpec::new(gen::pattern_with(&mut r, q).unwrap(), gen::block_sizes_with(&mut r, n, q).unwrap()).unwrap();
        prop_assume!(spec.dim() > 0);
        let b = spec.expand().unwrap();
        let found = recognize_block_structure(&b);
        prop_assert_eq!(found.expand().unwrap(), b);
        prop_assert!(found.q() <= spec.sizes().iter().filter(|&&s| s > 0).count());
    }

    #[test]
    fn gmam_decomposition_recomposes(seed in any::<u64>(), n in 1usize..=7) {
        let a = gen::gen_monotone_anti_monge(n, 4, seed).unwrap();
        let coeffs = gmam_decompose(&a, &int(2)).unwrap().expect("monotone anti-Monge is in the cone");
        prop_assert!(coeffs.values().all(|c| *c > int(0)));
        prop_assert_eq!(gmam_compose(n, &int(2), &coeffs).unwrap(), a);
    }

    #[test]
    fn closed_form_minimizer_is_stationary_and_beats_grid(seed in any::<u64>()) {
        let p = gen::heavy_pair_pattern_with(&mut rng(seed)).unwrap();
        let pat = Pattern::new(p.clone());
        let sol = qp2_minimize_2x2(&pat, 0, 1).unwrap();
        let (a, b, c) = (p.get(0, 0), p.get(0, 1), p.get(1, 1));
        let g = |x: &Rational| a * x * x + b * x * (int(1) - x) * int(2) + c * (int(1) - x) * (int(1) - x);
        // d/dx of g at x*_1.
        let x = &sol.x[0];
        let slope = a * x * int(2) + b * (int(1) - x * int(2)) * int(2) - c * (int(1) - x) * int(2);
        prop_assert_eq!(slope, int(0));
        prop_assert_eq!(g(x), sol.value.clone());
        for k in 0..=100 {
            prop_assert!(sol.value <= g(&rat(k, 100)));
        }
    }

    #[test]
    fn qp1_minimizer_beats_sampled_points(seed in any::<u64>(), q in 2usize..=4, num in 0i64..=12, k in 0i64..=12) {
        let mut r = rng(seed);
        let p = Pattern::new(gen::pattern_with(&mut r, q).unwrap());
        let gamma = rat(num, 12);
        let rest = int(1) - &gamma;
        let mut others = vec![int(0); q - 2];
        if let Some(first) = others.first_mut() { *first = rest.clone(); }
        prop_assume!(q > 2 || gamma == int(1));
        let e = Ensemble::new(q, 0, q - 1, gamma.clone(), others).unwrap();
        let sol = qp1_minimize(&p, &e).unwrap();
        let mut x = sol.x.clone();
        let t = &gamma * rat(k, 12);
        x[q - 1] = &gamma - &t;
        x[0] = t;
        prop_assert!(sol.value <= p.quadratic_form(&x).unwrap());
    }

    #[test]
    fn product_block_scale_invariance(seed in any::<u64>(), n in 1usize..=7, q in 1usize..=3, c in (1i64..=5, 1i64..=3)) {
        let mut r = rng(seed);
        let c = rat(c.0, c.1);
        let blocks = BlockSpec::new(gen::certified_pattern_with(&mut r, q).unwrap(), gen::block_sizes_with(&mut r, n, q).unwrap()).unwrap();
        let alpha = gen::product_with(&mut r, n).unwrap();
        let scaled = ProductSpec::new(alpha.alpha().iter().map(|a| a * &c).collect()).unwrap();
        let base = solve_product_block(&ProductBlockInstance::new(alpha, blocks.clone()).unwrap(), false).unwrap();
        let big = solve_product_block(&ProductBlockInstance::new(scaled, blocks).unwrap(), false).unwrap();
        prop_assert_eq!(big.value, base.value * &c * &c);
        prop_assert_eq!(big.block_order, base.block_order);
    }

    #[test]
    fn partition_reduction_invariants(raw in prop::collection::vec(1i64..=6, 2..=6), seed in any::<u64>()) {
        // Force a half: duplicate the multiset and rescale so it sums to 2.
        let mut r = rng(seed);
        let p = Pattern::new(gen::heavy_pair_pattern_with(&mut r).unwrap());
        let total: i64 = raw.iter().sum::<i64>() * 2;
        let v: Vec<Rational> = raw.iter().chain(raw.iter()).map(|&x| rat(2 * x, total)).collect();
        let part = PartitionInstance::new(v).unwrap();
        let red = reduce_partition(&p, &part).unwrap();
        let l = Rational::from_integer(red.l.into());
        prop_assert_eq!(red.alpha.iter().sum::<Rational>(), int(1));
        prop_assert!(red.alpha.iter().all(|a| *a >= l.recip()));
        prop_assert_eq!(red.blocks.sizes().iter().sum::<usize>(), red.n);
        prop_assert_eq!(red.l, red.m as u64 * red.k);
        for &i in &red.support {
            let scaled = &red.x_star.x[i] * Rational::from_integer(red.k.into());
            prop_assert!(scaled.is_integer());
            prop_assert!(&red.x_star.x[i] * &l > int(red.m as i64));
        }
        let half: Vec<usize> = (0..raw.len()).collect();
        let (perm, value) = yes_certificate_to_permutation(&red, &half).unwrap();
        prop_assert_eq!(value, red.threshold.clone());
        prop_assert_eq!(red.to_qap().unwrap().evaluate(&perm).unwrap(), red.threshold);
    }

    #[test]
    fn permutation_group_laws(p in (1usize..=8).prop_flat_map(permutation)) {
        let id = Permutation::identity(p.len());
        prop_assert_eq!(p.compose(&p.inverse()).unwrap(), id.clone());
        prop_assert_eq!(p.inverse().compose(&p).unwrap(), id.clone());
        prop_assert_eq!(Permutation::from_one_based(&p.to_one_based()).unwrap(), p);
    }
}
