//! Highest weight vectors, multiplicities and the multiplicity spaces as
//! 𝐔^ı-modules.

pub mod linalg;

use std::collections::{BTreeMap, HashMap};

use rayon::prelude::*;
use serde::Serialize;

use crate::combinatorics::{dim_g, enumerate_pg, lambda_weight, o_splits, GroupFamily, GroupSpec, Partition, Weight};
use crate::error::Error;
use crate::fock::{SparseVec, TensorState};
use crate::gqg::{Evaluator, FockModule, ModuleConfig, Sym};
use crate::iqg::{check_family, iqg_generators, IqgParams};
use crate::report::{Item, SuiteReport};
use crate::scalars::Scalar;
use linalg::{rref, SparseRow};

/// `∩_i ker e_i` on a set of basis states, with the coordinates used to
/// express vectors of the span.
#[derive(Clone, Debug)]
pub struct HwvBasis {
    pub states: Vec<TensorState>,
    pub vectors: Vec<SparseVec>,
    /// `vectors[k]` is 1 at `pivots[k]` and 0 at every other `pivots[j]`.
    pub pivots: Vec<TensorState>,
}

impl HwvBasis {
    pub fn dim(&self) -> usize {
        self.vectors.len()
    }

    /// Coordinates of `w` in the basis, or `None` if `w` is not in the span.
    pub fn coordinates(&self, w: &SparseVec) -> Option<Vec<Scalar>> {
        let c: Vec<Scalar> = self.pivots.iter().map(|p| w.coeff(p)).collect();
        let mut rest = w.clone();
        for (x, v) in c.iter().zip(&self.vectors) {
            rest = rest.sub(&v.scale(x));
        }
        rest.is_zero().then_some(c)
    }
}

fn kernel_of_raising(module: &FockModule, states: Vec<TensorState>) -> HwvBasis {
    let mut ev = Evaluator::new(module);
    let mut row_of: HashMap<(u8, TensorState), usize> = HashMap::new();
    let mut rows: Vec<SparseRow> = Vec::new();
    for (col, st) in states.iter().enumerate() {
        let basis = SparseVec::basis(st.clone());
        for i in 0..module.n() as u8 {
            for (t, c) in ev.apply_sym(Sym::E(i), &basis).into_entries() {
                let k = *row_of.entry((i, t)).or_insert_with(|| {
                    rows.push(SparseRow::new());
                    rows.len() - 1
                });
                rows[k].insert(col, c);
            }
        }
    }
    let red = rref(states.len(), rows);
    let pivots = red.free_columns().into_iter().map(|f| states[f].clone()).collect();
    let vectors = red
        .kernel()
        .into_iter()
        .map(|v| SparseVec::from_terms(v.into_iter().map(|(k, x)| (states[k].clone(), x)).collect()))
        .collect();
    HwvBasis { states, vectors, pivots }
}

fn weight_degree(w: &Weight) -> Result<usize, Error> {
    let d: i64 = w.m.iter().sum();
    usize::try_from(d).map_err(|_| Error::InvalidArgument(format!("weight {w} has negative degree")))
}

/// Basis of the joint kernel of all `e_i` on the weight-`w` states of
/// degree `d`.
pub fn hwv_basis(cfg: &ModuleConfig, w: &Weight, d: usize) -> Result<HwvBasis, Error> {
    if weight_degree(w)? != d {
        return Err(Error::InvalidArgument(format!("weight {w} does not live in degree {d}")));
    }
    let module = FockModule::new(cfg);
    let states = module.shape.enumerate(d, Some(w));
    Ok(kernel_of_raising(&module, states))
}

pub fn hwv_space(cfg: &ModuleConfig, w: &Weight, d: usize) -> Result<Vec<SparseVec>, Error> {
    Ok(hwv_basis(cfg, w, d)?.vectors)
}

#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct DecompRow {
    pub lambda: String,
    pub weight: Weight,
    pub multiplicity: usize,
    pub classical_dim: u64,
    #[serde(rename = "match")]
    pub matches: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub endo_dim: Option<usize>,
}

pub fn group(cfg: &ModuleConfig) -> GroupSpec {
    GroupSpec::for_module(cfg.kind, cfg.ell)
}

/// One row per admissible `λ` with `|λ| ≤ d_max`, by size and then in
/// decreasing lexicographic order.
pub fn decompose(cfg: &ModuleConfig, d_max: usize) -> Result<Vec<DecompRow>, Error> {
    let g = group(cfg);
    let lams: Vec<Partition> = (0..=d_max).flat_map(|d| enumerate_pg(g, &cfg.eps, d)).collect();
    lams.par_iter()
        .map(|lam| {
            let weight = lambda_weight(lam, &cfg.eps, g)?;
            let multiplicity = hwv_basis(cfg, &weight, lam.size())?.dim();
            let classical_dim = dim_g(lam, g)?;
            Ok(DecompRow {
                lambda: lam.to_string(),
                weight,
                multiplicity,
                classical_dim,
                matches: multiplicity as u64 == classical_dim,
                endo_dim: None,
            })
        })
        .collect()
}

pub fn decompose_report(rows: &[DecompRow]) -> SuiteReport {
    let mut rep = SuiteReport::new("decompose");
    for row in rows {
        let name = format!("multiplicity({})", row.lambda);
        let vals = serde_json::to_value(row).unwrap();
        rep.push(if row.matches {
            Item::pass(name).with_values(vals)
        } else {
            Item::fail(name, format!("kernel dimension {} vs classical {}", row.multiplicity, row.classical_dim))
                .with_values(vals)
        });
    }
    rep
}

#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct KernelScan {
    pub degree: usize,
    pub slice_size: usize,
    pub total: usize,
    pub predicted_total: u64,
    pub by_weight: Vec<(Weight, usize)>,
    pub unexpected_weights: Vec<Weight>,
    pub inhomogeneous: usize,
}

impl KernelScan {
    pub fn ok(&self) -> bool {
        self.total as u64 == self.predicted_total && self.unexpected_weights.is_empty() && self.inhomogeneous == 0
    }
}

/// Joint kernel of the `e_i` on the whole degree-`d` slice, split by weight.
pub fn full_kernel_scan(cfg: &ModuleConfig, d: usize) -> Result<KernelScan, Error> {
    let module = FockModule::new(cfg);
    let states = module.shape.enumerate(d, None);
    let slice_size = states.len();
    let basis = kernel_of_raising(&module, states);
    let mut hist: BTreeMap<Weight, usize> = BTreeMap::new();
    let mut inhomogeneous = 0;
    for v in &basis.vectors {
        let mut ws = v.entries().iter().map(|(s, _)| module.shape.state_weight(s));
        let w = ws.next().expect("kernel vectors are nonzero");
        if ws.any(|x| x != w) {
            inhomogeneous += 1;
        }
        *hist.entry(w).or_default() += 1;
    }
    let g = group(cfg);
    let lams = enumerate_pg(g, &cfg.eps, d);
    let mut predicted_total = 0;
    let mut predicted = Vec::new();
    for lam in &lams {
        predicted_total += dim_g(lam, g)?;
        predicted.push(lambda_weight(lam, &cfg.eps, g)?);
    }
    let unexpected_weights = hist.keys().filter(|w| !predicted.contains(w)).cloned().collect();
    Ok(KernelScan {
        degree: d,
        slice_size,
        total: basis.dim(),
        predicted_total,
        by_weight: hist.into_iter().collect(),
        unexpected_weights,
        inhomogeneous,
    })
}

pub fn scan_report(scans: &[KernelScan]) -> SuiteReport {
    let mut rep = SuiteReport::new("scan");
    for s in scans {
        let name = format!("kernel(d={})", s.degree);
        let vals = serde_json::to_value(s).unwrap();
        rep.push(if s.ok() {
            Item::pass(name).with_values(vals)
        } else {
            Item::fail(
                name,
                format!(
                    "total {} vs predicted {}; unexpected weights {:?}; inhomogeneous {}",
                    s.total,
                    s.predicted_total,
                    s.unexpected_weights.iter().map(|w| w.to_string()).collect::<Vec<_>>(),
                    s.inhomogeneous
                ),
            )
            .with_values(vals)
        });
    }
    rep
}

/// The multiplicity space of `λ` with the ıquantum generators restricted to it.
#[derive(Clone, Debug, Serialize)]
pub struct RestrictedModule {
    pub lambda: String,
    pub dim: usize,
    /// `(name, matrix)`; column `k` holds the coordinates of `y·v_k`.
    pub generators: Vec<(String, Vec<Vec<Scalar>>)>,
}

pub fn b_stability(cfg: &ModuleConfig, params: &IqgParams, lam: &Partition) -> Result<RestrictedModule, Error> {
    check_family(cfg, params)?;
    let w = lambda_weight(lam, &cfg.eps, group(cfg))?;
    let basis = hwv_basis(cfg, &w, lam.size())?;
    let module = FockModule::new(cfg);
    let mut ev = Evaluator::new(&module);
    let d = basis.dim();
    let mut generators = Vec::new();
    for (name, y) in iqg_generators(params) {
        let mut m = vec![vec![Scalar::zero(); d]; d];
        for (k, v) in basis.vectors.iter().enumerate() {
            let img = ev.eval_expr(&y, v);
            let c = basis.coordinates(&img).ok_or_else(|| {
                Error::StabilityViolation(format!("{name} moves basis vector {k} of λ={lam} out of the span"))
            })?;
            for (j, x) in c.into_iter().enumerate() {
                m[j][k] = x;
            }
        }
        generators.push((name, m));
    }
    Ok(RestrictedModule { lambda: lam.to_string(), dim: d, generators })
}

/// Dimension of the space of matrices commuting with every restricted
/// generator.
pub fn commutant_dim(m: &RestrictedModule) -> usize {
    let d = m.dim;
    let var = |i: usize, j: usize| i * d + j;
    let mut rows = Vec::new();
    for (_, g) in &m.generators {
        for i in 0..d {
            for j in 0..d {
                // (A g − g A)_{ij}
                let mut row = SparseRow::new();
                for k in 0..d {
                    for (key, x) in [(var(i, k), g[k][j].clone()), (var(k, j), -&g[i][k])] {
                        if x.is_zero() {
                            continue;
                        }
                        let e = row.entry(key).or_insert_with(Scalar::zero);
                        *e = &*e + &x;
                        if e.is_zero() {
                            row.remove(&key);
                        }
                    }
                }
                rows.push(row);
            }
        }
    }
    d * d - rref(d * d, rows).rank()
}

pub fn endo_dim(cfg: &ModuleConfig, params: &IqgParams, lam: &Partition) -> Result<usize, Error> {
    Ok(commutant_dim(&b_stability(cfg, params, lam)?))
}

/// `endo_dim` with its predicted value (1, or 2 in the split O case).
pub fn endo_report(cfg: &ModuleConfig, params: &IqgParams, lams: &[Partition]) -> Result<SuiteReport, Error> {
    let mut rep = SuiteReport::new("endo");
    let g = group(cfg);
    for lam in lams {
        let name = format!("endo({lam})");
        let expected = if g.family == GroupFamily::O && o_splits(lam, cfg.ell) { 2 } else { 1 };
        let item = match b_stability(cfg, params, lam) {
            Err(Error::StabilityViolation(w)) => Item::fail(name, w),
            Err(e) => return Err(e),
            Ok(m) => {
                let got = commutant_dim(&m);
                let vals = serde_json::json!({ "lambda": lam.to_string(), "dim": m.dim, "endoDim": got, "expected": expected });
                if got == expected {
                    Item::pass(name).with_values(vals)
                } else {
                    Item::fail(name, format!("endomorphism dimension {got}, expected {expected}")).with_values(vals)
                }
            }
        };
        rep.push(item);
    }
    Ok(rep)
}
