//! Defining relations of 𝒰_X(ε) and their verification on Fock slices.

use rayon::prelude::*;

use super::action::{FockModule, Sym};
use super::word::{CompiledExpr, Evaluator, WordExpr};
use super::ModuleConfig;
use crate::combinatorics::{CartanType, Epsilon};
use crate::error::Error;
use crate::fock::{SparseVec, TensorState};
use crate::report::{Item, SuiteReport};
use crate::scalars::{bq, q_sub, q_sub_pow, qint, Scalar};

/// A named element of the algebra that must act as zero.
#[derive(Clone, Debug)]
pub struct Relation {
    pub name: String,
    pub expr: WordExpr,
}

impl Relation {
    fn new(name: impl Into<String>, expr: WordExpr) -> Self {
        Relation { name: name.into(), expr }
    }
}

fn e(i: usize) -> WordExpr {
    WordExpr::sym(Sym::E(i as u8))
}

fn to_f(w: &WordExpr) -> WordExpr {
    w.substitute(&|s| match s {
        Sym::E(i) => WordExpr::sym(Sym::F(i)),
        other => WordExpr::sym(other),
    })
}

fn sgn(bit: u8) -> Scalar {
    Scalar::from_int(if bit == 0 { 1 } else { -1 })
}

/// `a²b − c·aba + ba²`.
fn serre2(a: &WordExpr, b: &WordExpr, c: &Scalar) -> WordExpr {
    let aab = &(a * a) * b;
    let aba = &(a * b) * a;
    let baa = &(b * a) * a;
    &(&aab - &aba.scale(c)) + &baa
}

fn br(a: &WordExpr, b: &WordExpr, t: &Scalar) -> WordExpr {
    WordExpr::bracket(a, b, t)
}

/// Pushes `rel` and its `(e → f)` partner.
fn push_pair(out: &mut Vec<(Relation, bool)>, name: &str, rel: WordExpr, signed: bool) {
    let f = to_f(&rel);
    out.push((Relation::new(format!("{name}[e]"), rel), signed));
    out.push((Relation::new(format!("{name}[f]"), f), signed));
}

/// Builds the catalog; with `drop_sign` the parity sign `(−1)^{ε}` in the
/// Serre-type relations is replaced by `+1`. The flag in each pair marks
/// relations whose parity sign is `−1`.
fn catalog_impl(x: CartanType, eps: &Epsilon, drop_sign: bool, k0_sign: i64) -> Vec<(Relation, bool)> {
    let n = eps.n();
    // 1-based ε_j
    let ep = |j: usize| eps.at(j - 1);
    let sign = |j: usize| if drop_sign { Scalar::one() } else { sgn(ep(j)) };
    let two = qint(2);
    let mut out: Vec<(Relation, bool)> = Vec::new();
    let roots: Vec<Vec<i64>> = (0..n).map(|i| eps.simple_root(x, i)).collect();

    // Cartan part: k_{α_i} as a product of k_{δ_j}, and conjugation.
    for i in 0..n {
        let mut prod = WordExpr::one();
        for (j, &a) in roots[i].iter().enumerate() {
            let s = if a > 0 { Sym::KDelta(j as u8 + 1) } else { Sym::KDeltaInv(j as u8 + 1) };
            for _ in 0..a.abs() {
                prod = &prod * &WordExpr::sym(s);
            }
        }
        let sign = if i == 0 { k0_sign } else { 1 };
        let rel = &WordExpr::sym(Sym::K(i as u8)) - &prod.scale(&Scalar::from_int(sign));
        out.push((Relation::new(format!("cartan(k{i})"), rel), false));
    }
    for j in 0..n {
        let mut delta = vec![0i64; n];
        delta[j] = 1;
        for (i, root) in roots.iter().enumerate() {
            let c = bq(&delta, root, eps.bits()).unwrap();
            for (g, ci) in [(Sym::E(i as u8), c.clone()), (Sym::F(i as u8), c.inv().unwrap())] {
                let w = WordExpr::word(&[Sym::KDelta(j as u8 + 1), g, Sym::KDeltaInv(j as u8 + 1)]);
                let rel = &w - &WordExpr::sym(g).scale(&ci);
                out.push((Relation::new(format!("conj(kd{},{g})", j + 1), rel), false));
            }
        }
    }
    for (a, ra) in roots.iter().enumerate() {
        for (i, root) in roots.iter().enumerate() {
            let c = bq(ra, root, eps.bits()).unwrap();
            for (g, ci) in [(Sym::E(i as u8), c.clone()), (Sym::F(i as u8), c.inv().unwrap())] {
                let w = WordExpr::word(&[Sym::K(a as u8), g, Sym::KInv(a as u8)]);
                let rel = &w - &WordExpr::sym(g).scale(&ci);
                out.push((Relation::new(format!("conj(k{a},{g})"), rel), false));
            }
        }
    }

    // e_i f_j − f_j e_i = δ_ij (k_i − k_i⁻¹)/(q_* − q_*⁻¹)
    for i in 0..n {
        for j in 0..n {
            let mut rel = &WordExpr::word(&[Sym::E(i as u8), Sym::F(j as u8)])
                - &WordExpr::word(&[Sym::F(j as u8), Sym::E(i as u8)]);
            if i == j {
                let t = if i == 0 && x == CartanType::C { 2 } else { 1 };
                let den = &Scalar::q_pow(t) - &Scalar::q_pow(-t);
                let kk = &WordExpr::sym(Sym::K(i as u8)) - &WordExpr::sym(Sym::KInv(i as u8));
                rel = &rel - &kk.scale(&den.inv().unwrap());
            }
            out.push((Relation::new(format!("ef(e{i},f{j})"), rel), false));
        }
    }

    // [e_i, e_j] = 0 when (α_i|α_j) = 0
    for i in 0..n {
        for j in i + 1..n {
            if eps.form(&roots[i], &roots[j]) == 0 {
                push_pair(&mut out, &format!("comm({i},{j})"), br(&e(i), &e(j), &Scalar::one()), false);
            }
        }
    }

    for i in 0..n {
        if eps.node_is_odd(x, i) {
            push_pair(&mut out, &format!("odd-square({i})"), &e(i) * &e(i), false);
        }
    }

    // Type A Serre relations at even nodes.
    for i in 1..n {
        if ep(i) != ep(i + 1) {
            continue;
        }
        for j in [i.wrapping_sub(1), i + 1] {
            if j == 0 || j >= n {
                continue;
            }
            let c = &sign(i) * &two;
            push_pair(&mut out, &format!("serre({i},{j})"), serre2(&e(i), &e(j), &c), ep(i) == 1);
        }
    }

    // Quartic relations at odd interior nodes.
    for i in 2..n.saturating_sub(1) {
        if ep(i) == ep(i + 1) {
            continue;
        }
        let (a, b, c) = (e(i - 1), e(i), e(i + 1));
        let w = |xs: [&WordExpr; 4]| &(&(xs[0] * xs[1]) * xs[2]) * xs[3];
        let rel = &(&(&(&w([&b, &a, &b, &c]) - &w([&b, &c, &b, &a]))
            + &w([&b, &a, &c, &b]).scale(&(&sign(i) * &two)))
            - &w([&a, &b, &c, &b]))
            + &w([&c, &b, &a, &b]);
        push_pair(&mut out, &format!("quartic({i})"), rel, ep(i) == 1);
    }

    match x {
        CartanType::D => {
            let (e0, e1, e2, e3) = (e(0), e(1), e(2), e(3));
            let s2 = &sign(2) * &two;
            if ep(1) == ep(2) {
                push_pair(&mut out, "serre(0,2)", serre2(&e0, &e2, &s2), ep(2) == 1);
            }
            if ep(2) == ep(3) {
                push_pair(&mut out, "serre(2,0)", serre2(&e2, &e0, &s2), ep(2) == 1);
            }
            if ep(1) != ep(2) {
                let w3 = |a: &WordExpr, b: &WordExpr, c: &WordExpr| &(a * b) * c;
                let mid = &w3(&e1, &e2, &e0) - &w3(&e0, &e2, &e1);
                let rel = &(&(&(&w3(&e0, &e1, &e2) - &w3(&e1, &e0, &e2)) + &mid.scale(&s2))
                    + &w3(&e2, &e0, &e1))
                    - &w3(&e2, &e1, &e0);
                push_pair(&mut out, "cubic(0,1,2)", rel, ep(2) == 1);
            }
            if ep(2) != ep(3) {
                let w = |xs: [&WordExpr; 4]| &(&(xs[0] * xs[1]) * xs[2]) * xs[3];
                let s3 = &sign(3) * &two;
                let rel = &(&(&(&w([&e0, &e2, &e3, &e2]) - &w([&e3, &e2, &e0, &e2]))
                    + &w([&e2, &e3, &e0, &e2]).scale(&s3))
                    - &w([&e2, &e0, &e2, &e3]))
                    + &w([&e2, &e3, &e2, &e0]);
                push_pair(&mut out, "quartic(0,2,3)", rel, ep(3) == 1);
            }
        }
        CartanType::C => {
            let (e0, e1, e2, e3) = (e(0), e(1), e(2), e(3));
            let qq = &Scalar::q_pow(2) + &Scalar::q_pow(-2);
            push_pair(&mut out, "serre(0,1)", serre2(&e0, &e1, &qq), false);
            if ep(1) == ep(2) {
                let three = qint(3);
                let e11 = &e1 * &e1;
                let e111 = &e11 * &e1;
                let rel = &(&(&(&e111 * &e0) - &(&(&e11 * &e0) * &e1).scale(&three))
                    + &(&(&e1 * &e0) * &e11).scale(&three))
                    - &(&e0 * &e111);
                push_pair(&mut out, "serre(1,0)", rel, false);
            }
            let q1sq = q_sub_pow(ep(1), 2);
            let q1 = q_sub(ep(1));
            let q2 = q_sub(ep(2));
            let q3 = q_sub(ep(3));
            let one = Scalar::one();
            if ep(1) != ep(2) && ep(2) != ep(3) {
                let inner = br(&e2, &e1, &q2);
                let rel = br(&br(&br(&inner, &e0, &q1sq), &inner, &one), &e1, &one);
                push_pair(&mut out, "bracket(2,1,0,1)", rel, false);
            }
            if ep(1) != ep(2) && ep(2) == ep(3) {
                let mut t = br(&e3, &e2, &q3);
                t = br(&t, &e1, &q2);
                t = br(&t, &e0, &q1sq);
                t = br(&t, &e1, &q1);
                t = br(&t, &e2, &q2);
                t = br(&t, &e1, &one);
                push_pair(&mut out, "bracket(3,2,1,0,1,2,1)", t, false);
            }
        }
    }
    out
}

/// The defining relations of 𝒰_X(ε), including `(e → f)` partners, the
/// Cartan identities and the conjugation relations.
pub fn relation_catalog(x: CartanType, eps: &Epsilon) -> Vec<Relation> {
    catalog_impl(x, eps, false, 1).into_iter().map(|(r, _)| r).collect()
}

/// Sign relating `k_{α₀}` to `k_{δ₁}⁻¹k_{δ₂}⁻¹` (resp. `k_{δ₁}⁻²`) on the
/// module: the blockwise ψ-twist contributes `−1` per block.
pub fn k0_sign(cfg: &ModuleConfig) -> i64 {
    if cfg.psi_twist && cfg.ell % 2 == 1 {
        -1
    } else {
        1
    }
}

/// The catalog as it must hold on the module of `cfg`; only the Cartan
/// identity for `k₀` is sensitive to the ψ-twist.
pub fn module_catalog(cfg: &ModuleConfig) -> Vec<Relation> {
    catalog_impl(cfg.x, &cfg.eps, false, k0_sign(cfg)).into_iter().map(|(r, _)| r).collect()
}

/// Serre-type relations whose parity sign `(−1)^{ε}` is `−1`, rebuilt with
/// the sign dropped. Empty when no such relation exists.
pub fn mutated_serre_catalog(x: CartanType, eps: &Epsilon) -> Vec<Relation> {
    catalog_impl(x, eps, true, 1)
        .into_iter()
        .filter(|(_, signed)| *signed)
        .map(|(mut r, _)| {
            r.name = format!("mutated-{}", r.name);
            r
        })
        .collect()
}

/// Relations of 𝐔(𝔰𝔩_r) in the symbols `E_j, F_j, K_j`.
pub fn sl_relation_catalog(r: usize) -> Vec<Relation> {
    let mut out = Vec::new();
    let two = qint(2);
    let cartan = |i: usize, j: usize| -> i64 {
        if i == j {
            2
        } else if i.abs_diff(j) == 1 {
            -1
        } else {
            0
        }
    };
    for i in 1..r {
        for j in 1..r {
            let c = Scalar::q_pow(cartan(i, j) as i32);
            let (ki, kinv) = (Sym::SlK(i as u8), Sym::SlKInv(i as u8));
            let ej = Sym::SlE(j as u8);
            let fj = Sym::SlF(j as u8);
            out.push(Relation::new(
                format!("sl-conj(K{i},E{j})"),
                &WordExpr::word(&[ki, ej, kinv]) - &WordExpr::sym(ej).scale(&c),
            ));
            out.push(Relation::new(
                format!("sl-conj(K{i},F{j})"),
                &WordExpr::word(&[ki, fj, kinv]) - &WordExpr::sym(fj).scale(&c.inv().unwrap()),
            ));
            let mut rel = &WordExpr::word(&[Sym::SlE(i as u8), fj]) - &WordExpr::word(&[fj, Sym::SlE(i as u8)]);
            if i == j {
                let den = &Scalar::q_pow(1) - &Scalar::q_pow(-1);
                rel = &rel - &(&WordExpr::sym(ki) - &WordExpr::sym(kinv)).scale(&den.inv().unwrap());
            }
            out.push(Relation::new(format!("sl-ef(E{i},F{j})"), rel));
            if i < j {
                let (ei, fi) = (WordExpr::sym(Sym::SlE(i as u8)), WordExpr::sym(Sym::SlF(i as u8)));
                let (ej, fj) = (WordExpr::sym(ej), WordExpr::sym(fj));
                if cartan(i, j) == 0 {
                    out.push(Relation::new(format!("sl-comm(E{i},E{j})"), br(&ei, &ej, &Scalar::one())));
                    out.push(Relation::new(format!("sl-comm(F{i},F{j})"), br(&fi, &fj, &Scalar::one())));
                } else {
                    out.push(Relation::new(format!("sl-serre(E{i},E{j})"), serre2(&ei, &ej, &two)));
                    out.push(Relation::new(format!("sl-serre(E{j},E{i})"), serre2(&ej, &ei, &two)));
                    out.push(Relation::new(format!("sl-serre(F{i},F{j})"), serre2(&fi, &fj, &two)));
                    out.push(Relation::new(format!("sl-serre(F{j},F{i})"), serre2(&fj, &fi, &two)));
                }
            }
        }
    }
    out
}

/// Formats a nonzero residual as a replayable witness.
pub fn witness(module: &FockModule, input: &TensorState, residual: &SparseVec) -> String {
    let n = module.n();
    let (st, c) = &residual.entries()[0];
    format!("input {:?} -> residual coefficient {} at {:?}", input.matrix(n), c, st.matrix(n))
}

/// Evaluates one relation on every basis state of degree `0..=max_in`.
/// Returns the first witness found.
pub fn check_on_degrees(
    module: &FockModule,
    expr: &WordExpr,
    degrees: std::ops::RangeInclusive<usize>,
) -> Option<String> {
    let compiled = CompiledExpr::new(expr);
    let mut ev = Evaluator::new(module);
    for d in degrees {
        for st in module.shape.enumerate(d, None) {
            let out = ev.eval(&compiled, &SparseVec::basis(st.clone()));
            if !out.is_zero() {
                return Some(witness(module, &st, &out));
            }
        }
    }
    None
}

/// Checks each relation on every slice of degree `d` with
/// `d + (maximal partial degree rise) ≤ max_degree`.
pub fn verify_catalog(cfg: &ModuleConfig, catalog: &[Relation], max_degree: usize) -> Result<SuiteReport, Error> {
    let module = FockModule::new(cfg);
    for rel in catalog {
        if let Some(s) = rel.expr.symbols().find(|s| !module.knows(*s)) {
            return Err(Error::UndefinedSymbol(format!("{s} in {}", rel.name)));
        }
        if rel.expr.max_degree_rise() > max_degree as i64 {
            return Err(Error::TruncationUnsafe(max_degree, rel.name.clone()));
        }
    }
    let items: Vec<Item> = catalog
        .par_iter()
        .map(|rel| {
            let top = max_degree - rel.expr.max_degree_rise() as usize;
            match check_on_degrees(&module, &rel.expr, 0..=top) {
                None => Item::pass(&rel.name),
                Some(w) => Item::fail(&rel.name, w),
            }
        })
        .collect();
    let mut rep = SuiteReport::new("relations");
    for it in items {
        rep.push(it);
    }
    Ok(rep)
}

pub fn verify_relations(cfg: &ModuleConfig, max_degree: usize) -> Result<SuiteReport, Error> {
    verify_catalog(cfg, &module_catalog(cfg), max_degree)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::combinatorics::ModuleKind;

    fn cfg(x: CartanType, eps: &str, kind: ModuleKind, ell: usize) -> ModuleConfig {
        ModuleConfig::new(x, eps.parse().unwrap(), kind, ell).unwrap()
    }

    fn names(x: CartanType, eps: &str) -> Vec<String> {
        relation_catalog(x, &eps.parse().unwrap()).into_iter().map(|r| r.name).collect()
    }

    #[test]
    fn catalog_guards() {
        let homog = names(CartanType::D, "0000");
        assert!(!homog.iter().any(|s| s.starts_with("quartic") || s.starts_with("cubic")));
        assert!(homog.iter().any(|s| s == "serre(0,2)[e]"));
        // with n = 4 the interior quartic lives only at node 2
        let mixed = names(CartanType::D, "0010");
        assert!(mixed.iter().any(|s| s == "quartic(2)[f]"));
        let mixed = names(CartanType::D, "0110");
        assert!(!mixed.iter().any(|s| s.starts_with("quartic")));
        assert!(mixed.iter().any(|s| s == "cubic(0,1,2)[e]"));
        let c = names(CartanType::C, "0111");
        assert!(c.iter().any(|s| s.starts_with("bracket(3,2,1,0,1,2,1)")));
    }

    #[test]
    fn spin_module_small_degrees() {
        let rep = verify_relations(&cfg(CartanType::D, "1111", ModuleKind::W, 1), 4).unwrap();
        assert!(rep.all_passed(), "{:?}", rep.failures().collect::<Vec<_>>());
    }

    #[test]
    fn sl_action_is_a_module() {
        let c = cfg(CartanType::D, "1001", ModuleKind::W, 3);
        let rep = verify_catalog(&c, &sl_relation_catalog(3), 3).unwrap();
        assert!(rep.all_passed(), "{:?}", rep.failures().collect::<Vec<_>>());
    }

    #[test]
    fn dropping_the_parity_sign_is_detected() {
        let c = cfg(CartanType::D, "0110", ModuleKind::W2, 1);
        let muts = mutated_serre_catalog(c.x, &c.eps);
        assert!(!muts.is_empty());
        let rep = verify_catalog(&c, &muts, 4).unwrap();
        assert!(rep.items.iter().any(|i| !i.passed() && i.witness.is_some()));
    }
}
