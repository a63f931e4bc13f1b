mod common;

use misobc::bounds::{inner_sum_dof, sum_dof_outer};
use misobc::numerics::{self, linalg::CMatrix};
use misobc::region::{max_sum_dof_lp, tightest_permutation};
use misobc::scheduler::{audit_schedule, greedy_schedule, time_share, two_block_schedule};
use misobc::{ratio, DoFPoint, Rational, SystemConfig};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn rat(max_den: i64) -> impl Strategy<Value = Rational> {
    (1..=max_den).prop_flat_map(|q| (0..=q).prop_map(move |p| ratio(p, q)))
}

fn instance(max_k: usize) -> impl Strategy<Value = (usize, usize, Vec<Rational>, Vec<Rational>)> {
    (2..=max_k, 1usize..=5).prop_flat_map(|(k, m)| {
        (Just(m), Just(k), prop::collection::vec(rat(6), k), prop::collection::vec(rat(6), k))
    })
}

fn cfg(m: usize, k: usize) -> SystemConfig {
    SystemConfig::new(m, k).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn more_feedback_never_shrinks_region((m, k, alpha, d) in instance(5), bump in 0usize..5, extra in rat(4)) {
        let p = DoFPoint::new(d).unwrap();
        let before = tightest_permutation(cfg(m, k), &alpha, &p).unwrap();
        let mut more = alpha.clone();
        let u = bump % k;
        more[u] = std::cmp::min(&more[u] + extra, Rational::one());
        let after = tightest_permutation(cfg(m, k), &more, &p).unwrap();
        prop_assert!(after.slack >= before.slack);
        prop_assert!(!before.inside || after.inside);
    }

    #[test]
    fn relabeling_users_preserves_membership((m, k, alpha, d) in instance(5), seed in any::<u64>()) {
        use rand::seq::SliceRandom;
        let mut sigma: Vec<usize> = (0..k).collect();
        sigma.shuffle(&mut ChaCha8Rng::seed_from_u64(seed));
        let a2: Vec<Rational> = sigma.iter().map(|&i| alpha[i].clone()).collect();
        let d2: Vec<Rational> = sigma.iter().map(|&i| d[i].clone()).collect();
        let v1 = tightest_permutation(cfg(m, k), &alpha, &DoFPoint::new(d).unwrap()).unwrap();
        let v2 = tightest_permutation(cfg(m, k), &a2, &DoFPoint::new(d2).unwrap()).unwrap();
        prop_assert_eq!(v1.inside, v2.inside);
        prop_assert_eq!(v1.slack, v2.slack);
    }

    #[test]
    fn lp_lies_between_bounds((m, k, alpha, _d) in instance(3)) {
        let c = cfg(m, k);
        let lp = max_sum_dof_lp(c, &alpha).unwrap();
        let delta = alpha.iter().min().unwrap();
        prop_assert!(inner_sum_dof(c, delta).unwrap() <= lp.value);
        prop_assert!(lp.value <= sum_dof_outer(c, &alpha).unwrap());
        prop_assert!(lp.value <= Rational::from(m.min(k)));
        prop_assert_eq!(&lp.value, &common::lp_by_vertices(m, k, &alpha));
        // the maximizer is a member of the region
        prop_assert!(tightest_permutation(c, &alpha, &lp.argmax).unwrap().inside);
        prop_assert_eq!(lp.argmax.sum(), lp.value);
    }

    #[test]
    fn greedy_is_feasible_and_exact(k in 2usize..=8, m in 2usize..=9, n in 1usize..=10, seed in any::<u64>()) {
        let s = m.min(k);
        let deltas = common::feasible_budgets(&mut ChaCha8Rng::seed_from_u64(seed), k, s, n);
        let sched = greedy_schedule(cfg(m, k), &deltas).unwrap();
        for slot in &sched.slots {
            prop_assert_eq!(slot.active_users.len(), s);
        }
        let a = audit_schedule(&sched).unwrap();
        prop_assert_eq!(a.per_user_perfect_fraction, deltas);
        prop_assert_eq!(a.sum_dof, Rational::from(s));
    }

    #[test]
    fn greedy_relabels_with_users(k in 2usize..=6, n in 1usize..=8, seed in any::<u64>()) {
        use rand::seq::SliceRandom;
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let deltas = common::feasible_budgets(&mut rng, k, 2, n);
        let mut sigma: Vec<usize> = (0..k).collect();
        sigma.shuffle(&mut rng);
        let relabeled: Vec<Rational> = sigma.iter().map(|&i| deltas[i].clone()).collect();
        let a1 = audit_schedule(&greedy_schedule(cfg(2, k), &deltas).unwrap()).unwrap();
        let a2 = audit_schedule(&greedy_schedule(cfg(2, k), &relabeled).unwrap()).unwrap();
        let back: Vec<Rational> = sigma.iter().map(|&i| a1.per_user_perfect_fraction[i].clone()).collect();
        prop_assert_eq!(back, a2.per_user_perfect_fraction);
        prop_assert_eq!(a1.sum_dof, a2.sum_dof);
    }

    #[test]
    fn two_block_sum_dof_is_affine_in_cost(a in 0i64..=12, b in 0i64..=12, c in 0i64..=12) {
        let deltas = vec![ratio(a, 12), ratio(b, 12), ratio(c, 12)];
        let cost: Rational = deltas.iter().sum();
        let half = &cost / Rational::from(2i64);
        prop_assume!(cost <= Rational::from(2i64) && deltas.iter().all(|d| *d <= half));
        let audit = audit_schedule(&two_block_schedule(&deltas).unwrap()).unwrap();
        prop_assert_eq!(audit.sum_dof, ratio(3, 2) + cost / Rational::from(4i64));
        if !deltas.iter().all(Rational::is_zero) {
            prop_assert_eq!(audit.per_user_perfect_fraction, deltas);
        }
    }

    #[test]
    fn time_share_is_linear(t in rat(10)) {
        let (da, fa) = (Rational::zero(), ratio(3, 2));
        let (db, fb) = (ratio(2, 3), Rational::from(2i64));
        let target = &t * &db;
        let (mix, dof) = time_share((&da, &fa), (&db, &fb), &target).unwrap();
        prop_assert_eq!(&mix * &da + (Rational::one() - &mix) * &db, target.clone());
        prop_assert_eq!(dof, ratio(3, 2) + ratio(3, 4) * target);
    }

    #[test]
    fn pivoted_qr_bound_on_near_rank_deficient(m in 2usize..=6, seed in any::<u64>(), eps_exp in 3i32..12) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let g = CMatrix::gaussian(m, m, &mut rng);
        // collapse the last column onto the first, up to a tiny perturbation
        let eps = 10f64.powi(-eps_exp);
        let a = CMatrix::from_fn(m, m, |i, j| if j == m - 1 { g[(i, 0)] + g[(i, j)] * eps } else { g[(i, j)] });
        let c = numerics::lemma2_check(&a);
        prop_assert_eq!(c.violations, 0);
        prop_assert!(c.residual < 1e-10);
        prop_assert_eq!(numerics::lemma3_check(&a).unwrap().violations, 0);
    }
}

#[test]
fn sampling_is_independent_of_batch_size() {
    let c = cfg(2, 3);
    let big = numerics::sample_channel_batch(c, &[0.5, 0.2, 1.0], 40.0, 64, 77).unwrap();
    let small = numerics::sample_channel_batch(c, &[0.5, 0.2, 1.0], 40.0, 7, 77).unwrap();
    assert_eq!(big.estimates[..7], small.estimates[..]);
    let a = numerics::zf_sum_rate(&big, &[1, 2]).unwrap();
    let b = numerics::zf_sum_rate(&big, &[1, 2]).unwrap();
    assert_eq!(a, b);
}
