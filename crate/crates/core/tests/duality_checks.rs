use qhowe_core::combinatorics::{lambda_weight, CartanType, ModuleKind, Partition};
use qhowe_core::duality::linalg::{rref, SparseRow};
use qhowe_core::duality::{b_stability, commutant_dim, decompose, endo_dim, full_kernel_scan, group, hwv_basis, hwv_space};
use qhowe_core::fock::pairing;
use qhowe_core::gqg::ModuleConfig;
use qhowe_core::iqg::{iqg_commutant, type_a_commutant, Family, IqgParams};
use qhowe_core::scalars::Scalar;

fn cfg(x: CartanType, e: &str, k: ModuleKind, ell: usize) -> ModuleConfig {
    ModuleConfig::new(x, e.parse().unwrap(), k, ell).unwrap()
}

#[test]
fn sp2_rows() {
    let c = cfg(CartanType::C, "1111", ModuleKind::W2, 1);
    let rows = decompose(&c, 2).unwrap();
    let got: Vec<(String, usize, u64)> = rows.iter().map(|r| (r.lambda.clone(), r.multiplicity, r.classical_dim)).collect();
    assert_eq!(got, vec![("()".into(), 1, 1), ("(1)".into(), 2, 2), ("(2)".into(), 3, 3)]);
    let s = full_kernel_scan(&c, 2).unwrap();
    assert_eq!((s.total, s.by_weight.len()), (3, 1));
}

#[test]
fn o2_first_slice_has_two_highest_vectors() {
    let c = cfg(CartanType::D, "1111", ModuleKind::W, 2);
    let w = lambda_weight(&Partition::new(vec![1]), &c.eps, group(&c)).unwrap();
    assert_eq!(hwv_space(&c, &w, 1).unwrap().len(), 2);
    let s = full_kernel_scan(&c, 2).unwrap();
    let mut split: Vec<usize> = s.by_weight.iter().map(|(_, n)| *n).collect();
    split.sort();
    assert_eq!(split, vec![1, 2]);
}

#[test]
fn rows_and_scans_agree() {
    for c in [cfg(CartanType::C, "0011", ModuleKind::W, 2), cfg(CartanType::D, "1100", ModuleKind::W, 2)] {
        let rows = decompose(&c, 3).unwrap();
        for d in 0..=3 {
            let per_row: usize = rows.iter().filter(|r| r.weight.m.iter().sum::<i64>() == d as i64).map(|r| r.multiplicity).sum();
            assert_eq!(per_row, full_kernel_scan(&c, d).unwrap().total, "{c} d={d}");
        }
    }
}

#[test]
fn highest_vectors_have_nondegenerate_gram_matrices() {
    let c = cfg(CartanType::D, "1100", ModuleKind::W, 3);
    let g = group(&c);
    for lam in [vec![1], vec![2], vec![1, 1]] {
        let lam = Partition::new(lam);
        let w = lambda_weight(&lam, &c.eps, g).unwrap();
        let b = hwv_basis(&c, &w, lam.size()).unwrap();
        let shape = qhowe_core::fock::FockShape::new(c.eps.clone(), c.r());
        let rows: Vec<SparseRow> = b
            .vectors
            .iter()
            .map(|u| {
                b.vectors
                    .iter()
                    .enumerate()
                    .map(|(k, v)| (k, pairing(&shape, u, v).unwrap()))
                    .filter(|(_, x)| !x.is_zero())
                    .collect()
            })
            .collect();
        assert_eq!(rref(b.dim(), rows).rank(), b.dim(), "{lam}");
    }
}

#[test]
fn endomorphism_dimensions() {
    let o3 = cfg(CartanType::D, "1111", ModuleKind::W, 3);
    assert_eq!(endo_dim(&o3, &IqgParams::for_config(&o3), &Partition::new(vec![1])).unwrap(), 1);
    assert_eq!(endo_dim(&o3, &IqgParams::for_config(&o3), &Partition::empty()).unwrap(), 1);
    let o4 = cfg(CartanType::D, "1111", ModuleKind::W, 4);
    assert_eq!(endo_dim(&o4, &IqgParams::for_config(&o4), &Partition::new(vec![1, 1])).unwrap(), 2);
    assert_eq!(endo_dim(&o4, &IqgParams::for_config(&o4), &Partition::new(vec![1])).unwrap(), 1);
}

#[test]
fn o2_restriction_is_two_by_two() {
    let c = cfg(CartanType::D, "1111", ModuleKind::W, 2);
    let m = b_stability(&c, &IqgParams::for_config(&c), &Partition::new(vec![1])).unwrap();
    assert_eq!(m.dim, 2);
    assert_eq!(m.generators[0].0, "B1");
    assert!(commutant_dim(&m) >= 1);
}

#[test]
fn commutant_iff_on_small_slices() {
    let c = cfg(CartanType::D, "1100", ModuleKind::W, 2);
    assert!(type_a_commutant(&c, 3).unwrap().all_passed());
    assert!(iqg_commutant(&c, &IqgParams::for_config(&c), 3).unwrap().all_passed());
    let flipped = IqgParams::uniform(Family::AI, 2, Scalar::q_pow(-1), Scalar::zero());
    let rep = iqg_commutant(&c, &flipped, 3).unwrap();
    let bad: Vec<&str> = rep.failures().map(|i| i.name.as_str()).collect();
    assert!(bad.contains(&"[e0,B1]"), "{bad:?}");
    assert!(rep.failures().all(|i| i.witness.as_deref().is_some_and(|w| w.contains("residual"))));
    assert!(iqg_commutant(&c, &flipped, 1).is_err());
}
