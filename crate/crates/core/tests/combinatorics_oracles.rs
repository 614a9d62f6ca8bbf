use proptest::prelude::*;
use qhowe_core::combinatorics::{
    dim_g, enumerate_pg, in_pg, in_pg_eps, lambda_weight, o_splits, Epsilon, GroupFamily, GroupSpec, Partition,
};

fn binom(n: i64, k: i64) -> i64 {
    if k < 0 || n < 0 || k > n {
        return 0;
    }
    (0..k).fold(1, |acc, j| acc * (n - j) / (j + 1))
}

fn one_row(k: usize) -> Partition {
    Partition::new(if k == 0 { vec![] } else { vec![k] })
}

fn column(k: usize) -> Partition {
    Partition::new(vec![1; k])
}

#[test]
fn symmetric_powers_of_the_symplectic_vector_rep() {
    for ell in 1..=4i64 {
        let g = GroupSpec::new(GroupFamily::Sp, ell as usize);
        for k in 0..=6i64 {
            assert_eq!(dim_g(&one_row(k as usize), g).unwrap() as i64, binom(2 * ell + k - 1, k));
        }
    }
}

#[test]
fn harmonic_polynomials_for_orthogonal_groups() {
    // dim of degree-k harmonics on ℂ^ℓ
    for ell in 2..=5i64 {
        let g = GroupSpec::new(GroupFamily::O, ell as usize);
        for k in 0..=6i64 {
            let want = binom(ell + k - 1, k) - binom(ell + k - 3, k - 2);
            assert_eq!(dim_g(&one_row(k as usize), g).unwrap() as i64, want, "ell={ell} k={k}");
        }
    }
}

#[test]
fn primitive_exterior_powers() {
    for ell in 1..=4i64 {
        let sp = GroupSpec::new(GroupFamily::Sp, ell as usize);
        for k in 0..=ell {
            let want = binom(2 * ell, k) - binom(2 * ell, k - 2);
            assert_eq!(dim_g(&column(k as usize), sp).unwrap() as i64, want);
        }
        assert!(!in_pg(&column(ell as usize + 1), sp));
        let o = GroupSpec::new(GroupFamily::O, ell as usize);
        for k in 0..=ell {
            assert_eq!(dim_g(&column(k as usize), o).unwrap() as i64, binom(ell, k));
        }
    }
}

#[test]
fn split_rule() {
    assert!(o_splits(&Partition::new(vec![1, 1]), 4));
    assert!(o_splits(&Partition::new(vec![3]), 2));
    assert!(!o_splits(&Partition::new(vec![1]), 4));
    assert!(!o_splits(&Partition::new(vec![1]), 3));
}

fn eps_strategy() -> impl Strategy<Value = Epsilon> {
    prop::collection::vec(0u8..=1, 4..=6).prop_map(|b| Epsilon::new(b).unwrap())
}

proptest! {
    #[test]
    fn enumeration_is_sorted_and_admissible(eps in eps_strategy(), ell in 1usize..=4, sp in any::<bool>(), d in 0usize..=6) {
        let g = GroupSpec::new(if sp { GroupFamily::Sp } else { GroupFamily::O }, ell);
        let lams = enumerate_pg(g, &eps, d);
        for w in lams.windows(2) {
            prop_assert!(w[0] > w[1]);
        }
        for lam in &lams {
            prop_assert_eq!(lam.size(), d);
            prop_assert!(in_pg_eps(lam, g, &eps));
            let w = lambda_weight(lam, &eps, g).unwrap();
            prop_assert_eq!(w.m.iter().sum::<i64>(), d as i64);
            prop_assert!(dim_g(lam, g).unwrap() >= 1);
        }
    }

    #[test]
    fn highest_weights_are_distinct(eps in eps_strategy(), ell in 1usize..=3, d in 0usize..=5) {
        let g = GroupSpec::new(GroupFamily::O, ell);
        let ws: Vec<_> = enumerate_pg(g, &eps, d).iter().map(|l| lambda_weight(l, &eps, g).unwrap()).collect();
        for i in 0..ws.len() {
            for j in i + 1..ws.len() {
                prop_assert_ne!(&ws[i], &ws[j]);
            }
        }
    }
}
