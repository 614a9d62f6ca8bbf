//! Runs the ten acceptance criteria and prints one line per criterion.

use std::process::ExitCode;
use std::time::Instant;

use clap::Parser;
use qhowe_core::cli::{execute, Cli};
use qhowe_core::combinatorics::{CartanType, ModuleKind, Partition};
use qhowe_core::duality::{decompose, endo_report, full_kernel_scan};
use qhowe_core::gqg::classical::classical_limit_check;
use qhowe_core::gqg::eta::{eta_adjoint_check, Eta};
use qhowe_core::gqg::relations::{mutated_serre_catalog, verify_catalog, verify_relations};
use qhowe_core::gqg::ModuleConfig;
use qhowe_core::iqg::{iqg_commutant, type_a_commutant, IqgParams};

const EPSILONS: [&str; 5] = ["0000", "1111", "0110", "1001", "0011"];

fn cfg(x: CartanType, e: &str, k: ModuleKind, ell: usize) -> ModuleConfig {
    ModuleConfig::new(x, e.parse().unwrap(), k, ell).unwrap()
}

/// Every (X, kind) compatible with each listed parity sequence.
fn relation_configs(ell: usize) -> Vec<ModuleConfig> {
    let mut out = Vec::new();
    for e in EPSILONS {
        for x in [CartanType::C, CartanType::D] {
            for k in [ModuleKind::W, ModuleKind::W2] {
                if let Ok(c) = ModuleConfig::new(x, e.parse().unwrap(), k, ell) {
                    out.push(c);
                }
            }
        }
    }
    out
}

fn commutant_configs() -> Vec<ModuleConfig> {
    vec![
        cfg(CartanType::D, "1001", ModuleKind::W, 2),
        cfg(CartanType::C, "0110", ModuleKind::W, 2),
        cfg(CartanType::D, "1100", ModuleKind::W, 2),
        cfg(CartanType::D, "0011", ModuleKind::W2, 2),
        cfg(CartanType::C, "1001", ModuleKind::W2, 2),
        cfg(CartanType::C, "1111", ModuleKind::W2, 2),
    ]
}

fn decomposition_cases() -> Vec<(ModuleConfig, usize)> {
    vec![
        (cfg(CartanType::C, "1111", ModuleKind::W2, 1), 4),
        (cfg(CartanType::D, "1111", ModuleKind::W, 2), 4),
        (cfg(CartanType::D, "1100", ModuleKind::W, 3), 3),
        (cfg(CartanType::C, "0011", ModuleKind::W, 2), 3),
    ]
}

type Outcome = Result<String, String>;

fn criterion_1() -> Outcome {
    let mut n = 0;
    for ell in [1, 2] {
        for c in relation_configs(ell) {
            let rep = verify_relations(&c, 6).map_err(|e| format!("{c}: {e}"))?;
            if let Some(f) = rep.failures().next() {
                return Err(format!("{c}: {} {}", f.name, f.witness.clone().unwrap_or_default()));
            }
            n += 1;
        }
    }
    Ok(format!("{n} configurations at D=6"))
}

fn criterion_2() -> Outcome {
    let c = cfg(CartanType::D, "0110", ModuleKind::W2, 1);
    let cat = mutated_serre_catalog(c.x, &c.eps);
    if cat.is_empty() {
        return Err("no sign-carrying relation to mutate".into());
    }
    let rep = verify_catalog(&c, &cat, 4).map_err(|e| e.to_string())?;
    let caught = rep.failures().find(|f| f.witness.is_some()).cloned();
    match caught {
        Some(f) => Ok(format!("{c}: {} caught, {}", f.name, f.witness.unwrap())),
        None => Err(format!("{c}: mutated relations all passed")),
    }
}

fn criterion_3() -> Outcome {
    let mut cases = std::collections::BTreeSet::new();
    let mut n = 0;
    for ell in [1, 2] {
        for c in relation_configs(ell) {
            let eta = Eta::for_config(&c);
            cases.insert(format!("{}/{}", c.x, c.kind));
            let rep = eta_adjoint_check(&c, eta, 5);
            if let Some(f) = rep.failures().next() {
                return Err(format!("{c}: {} {}", f.name, f.witness.clone().unwrap_or_default()));
            }
            n += 1;
        }
    }
    if cases.len() != 4 {
        return Err(format!("only {} module families covered", cases.len()));
    }
    Ok(format!("{n} configurations, families {:?}, D=5", cases))
}

fn criterion_4() -> Outcome {
    for c in commutant_configs() {
        let rep = type_a_commutant(&c, 5).map_err(|e| e.to_string())?;
        if let Some(f) = rep.failures().next() {
            return Err(format!("{c}: {} {}", f.name, f.witness.clone().unwrap_or_default()));
        };
    }
    Ok(format!("{} configurations at D=5", commutant_configs().len()))
}

fn criterion_5() -> Outcome {
    for c in commutant_configs() {
        let p = IqgParams::for_config(&c);
        let rep = iqg_commutant(&c, &p, 5).map_err(|e| e.to_string())?;
        if let Some(f) = rep.failures().next() {
            return Err(format!("{c}: {} {}", f.name, f.witness.clone().unwrap_or_default()));
        }
        let mut flipped = p.clone();
        flipped.varsigma.iter_mut().for_each(|s| *s = -&*s);
        let rep = iqg_commutant(&c, &flipped, 5).map_err(|e| e.to_string())?;
        if rep.failures().next().is_none() {
            return Err(format!("{c}: flipped varsigma still commutes"));
        }
    }
    Ok("standard parameters commute and flipped signs fail on all configurations at D=5".into())
}

fn criterion_6() -> Outcome {
    let mut rows = 0;
    for (c, d) in decomposition_cases() {
        for r in decompose(&c, d).map_err(|e| e.to_string())? {
            if !r.matches {
                return Err(format!("{c}: {} has {} vs {}", r.lambda, r.multiplicity, r.classical_dim));
            }
            rows += 1;
        }
    }
    Ok(format!("{rows} rows match"))
}

fn criterion_7() -> Outcome {
    let mut total = 0;
    for (c, d) in decomposition_cases() {
        for k in 0..=d {
            let s = full_kernel_scan(&c, k).map_err(|e| e.to_string())?;
            if !s.ok() {
                return Err(format!("{c} d={k}: {s:?}"));
            }
            total += s.total;
        }
    }
    Ok(format!("{total} highest weight vectors, all at predicted weights"))
}

fn criterion_8() -> Outcome {
    let mut n = 0;
    for c in relation_configs(1) {
        let c = if c.x == CartanType::D { c.with_psi(true).unwrap() } else { c };
        let rep = classical_limit_check(&c, 4).map_err(|e| format!("{c}: {e}"))?;
        if let Some(f) = rep.failures().next() {
            return Err(format!("{c}: {} {}", f.name, f.witness.clone().unwrap_or_default()));
        }
        n += 1;
    }
    Ok(format!("{n} configurations at D=4"))
}

fn criterion_9() -> Outcome {
    let cases = [
        (cfg(CartanType::D, "1111", ModuleKind::W, 3), vec![1]),
        (cfg(CartanType::C, "1111", ModuleKind::W2, 2), vec![1]),
        (cfg(CartanType::D, "1111", ModuleKind::W, 4), vec![1, 1]),
    ];
    let mut dims = Vec::new();
    for (c, lam) in cases {
        let lam = Partition::new(lam);
        let rep = endo_report(&c, &IqgParams::for_config(&c), std::slice::from_ref(&lam)).map_err(|e| e.to_string())?;
        if let Some(f) = rep.failures().next() {
            return Err(format!("{c}: {} {}", f.name, f.witness.clone().unwrap_or_default()));
        }
        dims.push(format!("{lam}:{}", rep.items[0].values.as_ref().unwrap()["endoDim"]));
    }
    Ok(format!("endo dims {}", dims.join(" ")))
}

fn criterion_10() -> Outcome {
    let runs: [&[&str]; 7] = [
        &["relations", "--type", "D", "--epsilon", "0110", "--module", "W2", "--ell", "2", "--max-degree", "5"],
        &["polarization", "--type", "C", "--epsilon", "1001", "--module", "W2", "--ell", "2", "--max-degree", "4"],
        &["commutant", "--type", "D", "--epsilon", "1100", "--module", "W", "--ell", "2", "--max-degree", "5"],
        &["decompose", "--type", "D", "--epsilon", "1100", "--module", "W", "--ell", "3", "--max-degree", "3"],
        &["scan", "--type", "C", "--epsilon", "0011", "--module", "W", "--ell", "2", "--max-degree", "3"],
        &["classical-limit", "--type", "D", "--epsilon", "1001", "--module", "W", "--ell", "1", "--max-degree", "4"],
        &["endo", "--type", "D", "--epsilon", "1111", "--module", "W", "--ell", "4", "--lambda", "1,1"],
    ];
    for args in runs {
        let mut bodies = Vec::new();
        for jobs in ["1", "4"] {
            let argv: Vec<&str> = ["qhowe"].iter().chain(args).chain(&["--jobs", jobs]).copied().collect();
            let out = execute(&Cli::parse_from(argv)).map_err(|e| e.to_string())?;
            bodies.push(out.report.body_json());
        }
        if bodies[0] != bodies[1] {
            return Err(format!("{} differs between job counts", args[0]));
        }
    }
    Ok(format!("{} commands byte-identical with --jobs 1 and 4", runs.len()))
}

fn main() -> ExitCode {
    let criteria: [(&str, fn() -> Outcome); 10] = [
        ("relation suites", criterion_1),
        ("mutated Serre negative control", criterion_2),
        ("polarization adjointness", criterion_3),
        ("sl commutant with the type A subalgebra", criterion_4),
        ("iquantum commutant iff", criterion_5),
        ("multiplicities", criterion_6),
        ("kernel completeness", criterion_7),
        ("classical limit", criterion_8),
        ("endomorphism dimensions", criterion_9),
        ("determinism", criterion_10),
    ];
    let mut failed = 0;
    for (k, (name, f)) in criteria.iter().enumerate() {
        let t = Instant::now();
        let res = std::panic::catch_unwind(f).unwrap_or_else(|_| Err("panicked".into()));
        let secs = t.elapsed().as_secs_f64();
        match res {
            Ok(msg) => println!("criterion {:>2} PASS  {name}: {msg} ({secs:.1}s)", k + 1),
            Err(msg) => {
                failed += 1;
                println!("criterion {:>2} FAIL  {name}: {msg} ({secs:.1}s)", k + 1);
            }
        }
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
