use proptest::prelude::*;
use qhowe_core::combinatorics::{CartanType, Epsilon, ModuleKind, Weight};
use qhowe_core::fock::{SparseVec, TensorState};
use qhowe_core::gqg::relations::{check_on_degrees, verify_relations};
use qhowe_core::gqg::{psi_twist, Evaluator, FockModule, ModuleConfig, Sym, WordExpr};
use qhowe_core::scalars::{qint, Scalar};

fn configs() -> impl Strategy<Value = ModuleConfig> {
    (prop::collection::vec(0u8..=1, 4..=5), any::<bool>(), any::<bool>(), 1usize..=2).prop_filter_map(
        "compatible",
        |(bits, d, w2, ell)| {
            let x = if d { CartanType::D } else { CartanType::C };
            let k = if w2 { ModuleKind::W2 } else { ModuleKind::W };
            ModuleConfig::new(x, Epsilon::new(bits).ok()?, k, ell).ok()
        },
    )
}

fn shifted(w: &Weight, alpha: &[i64], sign: i64) -> Weight {
    Weight::new(w.s, w.m.iter().zip(alpha).map(|(a, b)| a + sign * b).collect())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn generators_move_weights_by_simple_roots(cfg in configs(), d in 0usize..=3, pick in any::<prop::sample::Index>()) {
        let m = FockModule::new(&cfg);
        let states = m.shape.enumerate(d, None);
        let st = pick.get(&states).clone();
        let w = m.shape.state_weight(&st);
        let mut ev = Evaluator::new(&m);
        for i in 0..cfg.n() {
            let alpha = cfg.eps.simple_root(cfg.x, i);
            for (sym, sign) in [(Sym::E(i as u8), 1), (Sym::F(i as u8), -1)] {
                let out = ev.apply_sym(sym, &SparseVec::basis(st.clone()));
                for (u, _) in out.entries() {
                    prop_assert_eq!(m.shape.state_weight(u), shifted(&w, &alpha, sign));
                }
            }
        }
    }

    #[test]
    fn relation_suite_on_small_slices(cfg in configs()) {
        let rep = verify_relations(&cfg, 4).unwrap();
        prop_assert!(rep.all_passed(), "{cfg}: {:?}", rep.failures().next());
        if cfg.x == CartanType::D {
            let rep = verify_relations(&psi_twist(&cfg).unwrap(), 4).unwrap();
            prop_assert!(rep.all_passed());
        }
    }
}

#[test]
fn serre_guard_uses_the_parity_of_the_repeated_node() {
    // ε = 0010: α₂ = δ₂ − δ₃ is odd although ε₁ = ε₂, so the cubic relation
    // e₂²e₁ − [2]e₂e₁e₂ + e₁e₂² = 0 must not be imposed.
    let cfg = ModuleConfig::new(CartanType::C, "0010".parse().unwrap(), ModuleKind::W, 2).unwrap();
    let m = FockModule::new(&cfg);
    let (a, b) = (WordExpr::sym(Sym::E(2)), WordExpr::sym(Sym::E(1)));
    let serre = &(&(&(&a * &a) * &b) - &(&(&a * &b) * &a).scale(&qint(2))) + &(&(&b * &a) * &a);
    assert!(check_on_degrees(&m, &serre, 0..=3).is_some());
    // the relation with the repeated node even does hold
    let (a, b) = (WordExpr::sym(Sym::E(1)), WordExpr::sym(Sym::E(2)));
    let serre = &(&(&(&a * &a) * &b) - &(&(&a * &b) * &a).scale(&qint(2))) + &(&(&b * &a) * &a);
    assert_eq!(check_on_degrees(&m, &serre, 0..=3), None);
}

#[test]
fn vacuum_images() {
    // f₀|0⟩ for (C, W) is −|2e₁⟩; e₀ kills the vacuum
    let cfg = ModuleConfig::new(CartanType::C, "0000".parse().unwrap(), ModuleKind::W, 1).unwrap();
    let m = FockModule::new(&cfg);
    let mut ev = Evaluator::new(&m);
    let vac = SparseVec::basis(TensorState::zero(1, 4));
    let f = ev.apply_sym(Sym::F(0), &vac);
    assert_eq!(f, SparseVec::from_terms(vec![(TensorState::from_rows(&[vec![2, 0, 0, 0]]), Scalar::from_int(-1))]));
    assert!(ev.apply_sym(Sym::E(0), &vac).is_zero());
}
