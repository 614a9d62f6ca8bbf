//! Command-line front end: configuration merging, suite dispatch and report
//! emission.

use std::path::PathBuf;
use std::time::Instant;

use clap::{Args, Parser, Subcommand};
use serde::{Deserialize, Serialize};
use serde_json::json;

use crate::combinatorics::{CartanType, Epsilon, ModuleKind, Partition};
use crate::duality::{self, decompose, decompose_report, full_kernel_scan, scan_report, DecompRow};
use crate::error::Error;
use crate::gqg::classical::classical_limit_check;
use crate::gqg::eta::{eta_adjoint_check, Eta};
use crate::gqg::relations::verify_relations;
use crate::gqg::ModuleConfig;
use crate::iqg::{self, check_family, Family, IqgParams};
use crate::report::{Item, Meta, Report, SuiteReport};
use crate::scalars::Scalar;

pub const DEFAULT_MAX_DEGREE: usize = 4;

#[derive(Parser, Debug, Clone)]
#[command(name = "qhowe", version, about = "Exact checks for q-deformed Howe duality on q-oscillator Fock spaces")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    #[command(flatten)]
    pub flags: Flags,
}

#[derive(Subcommand, Debug, Clone, Copy, PartialEq, Eq)]
pub enum Command {
    /// Defining relations of the generalized quantum group on the module.
    Relations,
    /// Adjointness under the polarization and the Gram matrix.
    Polarization,
    /// Commutation with the 𝔰𝔩 action and with the ıquantum group.
    Commutant,
    /// Multiplicities of highest weight vectors against classical dimensions.
    Decompose,
    /// Highest weight vectors on whole degree slices.
    Scan,
    /// The q → 1 limit of the generator matrices.
    ClassicalLimit,
    /// Endomorphisms of a multiplicity space as a 𝐔^ı-module.
    Endo,
}

#[derive(Args, Debug, Clone, Default)]
pub struct Flags {
    /// JSON file with the same fields; explicit flags take precedence.
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,
    /// Dynkin type, C or D.
    #[arg(long = "type", global = true)]
    pub x: Option<String>,
    /// Parity sequence such as 0110.
    #[arg(long, global = true)]
    pub epsilon: Option<String>,
    /// W or W2.
    #[arg(long, global = true)]
    pub module: Option<String>,
    #[arg(long, global = true)]
    pub ell: Option<usize>,
    #[arg(long, global = true)]
    pub max_degree: Option<usize>,
    /// so or sp; derived from the module when omitted.
    #[arg(long, global = true)]
    pub family: Option<String>,
    /// For example q, -q^-1, or a scalar in the canonical text form.
    #[arg(long, global = true, allow_hyphen_values = true)]
    pub varsigma: Option<String>,
    #[arg(long, global = true, allow_hyphen_values = true)]
    pub kappa: Option<String>,
    #[arg(long, global = true)]
    pub psi_twist: Option<bool>,
    /// Comma-separated parts, e.g. 2,1.
    #[arg(long, global = true)]
    pub lambda: Option<String>,
    /// json or csv (csv only for decompose).
    #[arg(long, global = true)]
    pub format: Option<String>,
    #[arg(long, global = true)]
    pub output: Option<PathBuf>,
    /// Worker threads.
    #[arg(long, global = true)]
    pub jobs: Option<usize>,
}

/// The merged configuration, also the schema of `--config` files.
#[derive(Serialize, Deserialize, Debug, Clone, Default, PartialEq)]
#[serde(rename_all = "camelCase", deny_unknown_fields)]
pub struct RunConfig {
    #[serde(rename = "type", skip_serializing_if = "Option::is_none")]
    pub x: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub epsilon: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub module: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub ell: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub max_degree: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub family: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub varsigma: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub kappa: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub psi_twist: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub lambda: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub format: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub output: Option<PathBuf>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub jobs: Option<usize>,
}

impl RunConfig {
    pub fn from_flags(f: &Flags) -> Result<Self, Error> {
        let mut base = match &f.config {
            Some(p) => {
                let text = std::fs::read_to_string(p).map_err(|e| Error::Io(format!("{}: {e}", p.display())))?;
                serde_json::from_str(&text).map_err(|e| Error::Config(format!("{}: {e}", p.display())))?
            }
            None => RunConfig::default(),
        };
        macro_rules! over {
            ($($field:ident),*) => { $( if f.$field.is_some() { base.$field = f.$field.clone(); } )* };
        }
        over!(x, epsilon, module, ell, max_degree, family, varsigma, kappa, psi_twist, lambda, format, output, jobs);
        Ok(base)
    }
}

/// Accepts `q`, `-q`, `q^k`, `-q^-1`, integers, or the canonical scalar form.
pub fn parse_param(s: &str) -> Result<Scalar, Error> {
    let t = s.trim();
    let (neg, body) = match t.strip_prefix('-') {
        Some(b) => (true, b.trim()),
        None => (false, t),
    };
    let short = if let Some(e) = body.strip_prefix('q') {
        let k = match e.strip_prefix('^') {
            None if e.is_empty() => Some(1),
            Some(k) => k.parse::<i32>().ok(),
            None => None,
        };
        k.map(Scalar::q_pow)
    } else {
        body.parse::<i64>().ok().map(Scalar::from_int)
    };
    match short {
        Some(x) if neg => Ok(-&x),
        Some(x) => Ok(x),
        None => t.parse::<Scalar>().map_err(|_| Error::Config(format!("cannot read scalar `{s}`"))),
    }
}

fn required<T: Clone>(v: &Option<T>, name: &str) -> Result<T, Error> {
    v.clone().ok_or_else(|| Error::Config(format!("missing --{name}")))
}

/// The validated pieces of a [`RunConfig`].
#[derive(Debug, Clone)]
pub struct Resolved {
    pub module: ModuleConfig,
    pub max_degree: usize,
    pub params: Option<IqgParams>,
    pub lambda: Option<Partition>,
    pub csv: bool,
    pub jobs: usize,
}

pub fn resolve(cmd: Command, rc: &RunConfig) -> Result<Resolved, Error> {
    let x = match required(&rc.x, "type")?.as_str() {
        "C" | "c" => CartanType::C,
        "D" | "d" => CartanType::D,
        other => return Err(Error::Config(format!("type must be C or D, got `{other}`"))),
    };
    let eps: Epsilon = required(&rc.epsilon, "epsilon")?.parse()?;
    let kind = match required(&rc.module, "module")?.as_str() {
        "W" | "w" => ModuleKind::W,
        "W2" | "w2" => ModuleKind::W2,
        other => return Err(Error::Config(format!("module must be W or W2, got `{other}`"))),
    };
    let ell = required(&rc.ell, "ell")?;
    let mut module = ModuleConfig::new(x, eps, kind, ell)?;
    if let Some(on) = rc.psi_twist {
        module = module.with_psi(on)?;
    }
    let family = match rc.family.as_deref() {
        None => Family::for_module(kind),
        Some("so") => Family::AI,
        Some("sp") => Family::AII,
        Some(other) => return Err(Error::Config(format!("family must be so or sp, got `{other}`"))),
    };
    let params = if matches!(cmd, Command::Commutant | Command::Endo) {
        let mut p = IqgParams::standard(family, ell);
        if let Some(s) = &rc.varsigma {
            let v = parse_param(s)?;
            p.varsigma.iter_mut().for_each(|x| *x = v.clone());
        }
        if let Some(s) = &rc.kappa {
            let v = parse_param(s)?;
            p.kappa.iter_mut().for_each(|x| *x = v.clone());
        }
        check_family(&module, &p)?;
        Some(p)
    } else {
        None
    };
    let lambda = match (&rc.lambda, cmd) {
        (Some(s), _) => {
            let text = if s.trim().is_empty() { "()".to_string() } else { format!("({})", s.trim_matches(|c| c == '(' || c == ')')) };
            Some(text.parse::<Partition>()?)
        }
        (None, Command::Endo) => return Err(Error::Config("endo needs --lambda".into())),
        (None, _) => None,
    };
    let csv = match rc.format.as_deref() {
        None | Some("json") => false,
        Some("csv") if cmd == Command::Decompose => true,
        Some(f) => return Err(Error::Config(format!("format `{f}` is not available for this command"))),
    };
    let jobs = rc.jobs.unwrap_or(1);
    if jobs == 0 {
        return Err(Error::Config("--jobs must be positive".into()));
    }
    Ok(Resolved { module, max_degree: rc.max_degree.unwrap_or(DEFAULT_MAX_DEGREE), params, lambda, csv, jobs })
}

fn config_echo(cmd: Command, r: &Resolved) -> serde_json::Value {
    let m = &r.module;
    let mut v = json!({
        "command": format!("{cmd:?}").to_lowercase(),
        "type": m.x.to_string(),
        "epsilon": m.eps.to_string(),
        "module": m.kind.to_string(),
        "ell": m.ell,
        "psiTwist": m.psi_twist,
        "maxDegree": r.max_degree,
    });
    if let Some(p) = &r.params {
        v["family"] = json!(p.family.to_string());
        v["varsigma"] = json!(p.varsigma);
        v["kappa"] = json!(p.kappa);
    }
    if let Some(l) = &r.lambda {
        v["lambda"] = json!(l.to_string());
    }
    v
}

fn params_items(p: &IqgParams) -> SuiteReport {
    let a = iqg::validate_params(p);
    let mut rep = SuiteReport::new("parameters");
    let vals = serde_json::to_value(&a).unwrap();
    rep.push(if a.admissible() {
        Item::pass("admissible").with_values(vals.clone())
    } else {
        Item::fail("admissible", format!("conditions {:?}", a.conditions)).with_values(vals.clone())
    });
    rep.push(if a.specializable {
        Item::pass("specializable")
    } else {
        Item::fail("specializable", "varsigma does not specialize to -1 at q = 1")
    });
    rep
}

fn endo_suite(r: &Resolved, lam: &Partition) -> Result<SuiteReport, Error> {
    let params = r.params.as_ref().expect("resolved for endo");
    let mut rep = duality::endo_report(&r.module, params, std::slice::from_ref(lam))?;
    // 𝔰𝔬₂ is abelian; report without asserting
    if params.family == Family::AI && r.module.ell == 2 {
        for it in rep.items.iter_mut() {
            it.status = crate::report::Status::Skip;
            it.witness = Some("not asserted for so_2".into());
        }
    }
    Ok(rep)
}

/// Runs a command on a resolved configuration. The CSV text is returned
/// for `decompose` when requested.
pub fn run_suite(cmd: Command, r: &Resolved) -> Result<(SuiteReport, Option<Vec<DecompRow>>), Error> {
    let m = &r.module;
    let d = r.max_degree;
    let out = match cmd {
        Command::Relations => (verify_relations(m, d)?, None),
        Command::Polarization => (eta_adjoint_check(m, Eta::for_config(m), d), None),
        Command::Commutant => {
            let p = r.params.as_ref().expect("resolved for commutant");
            let mut rep = params_items(p);
            rep.extend(iqg::commutant_check(m, p, d)?);
            rep.suite = "commutant".into();
            (rep, None)
        }
        Command::Decompose => {
            let rows = decompose(m, d)?;
            (decompose_report(&rows), Some(rows))
        }
        Command::Scan => {
            let scans = (0..=d).map(|k| full_kernel_scan(m, k)).collect::<Result<Vec<_>, _>>()?;
            (scan_report(&scans), None)
        }
        Command::ClassicalLimit => (classical_limit_check(m, d)?, None),
        Command::Endo => (endo_suite(r, r.lambda.as_ref().expect("checked in resolve"))?, None),
    };
    Ok(out)
}

/// Everything a run produces.
#[derive(Debug, Clone)]
pub struct Outcome {
    pub report: Report,
    pub csv: Option<String>,
    pub output: Option<PathBuf>,
}

fn rows_csv(rows: &[DecompRow]) -> Result<String, Error> {
    let mut w = csv::Writer::from_writer(Vec::new());
    let io = |e: csv::Error| Error::Io(e.to_string());
    w.write_record(["lambda", "weight", "multiplicity", "classicalDim", "match"]).map_err(io)?;
    for r in rows {
        w.write_record([
            r.lambda.clone(),
            r.weight.to_string(),
            r.multiplicity.to_string(),
            r.classical_dim.to_string(),
            r.matches.to_string(),
        ])
        .map_err(io)?;
    }
    String::from_utf8(w.into_inner().map_err(|e| Error::Io(e.to_string()))?).map_err(|e| Error::Io(e.to_string()))
}

pub fn execute(cli: &Cli) -> Result<Outcome, Error> {
    let rc = RunConfig::from_flags(&cli.flags)?;
    let resolved = resolve(cli.command, &rc)?;
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(resolved.jobs)
        .build()
        .map_err(|e| Error::Config(e.to_string()))?;
    let start = Instant::now();
    let (suite, rows) = pool.install(|| run_suite(cli.command, &resolved))?;
    let mut report = Report::new(config_echo(cli.command, &resolved), suite);
    report.meta = Some(Meta {
        version: env!("CARGO_PKG_VERSION").into(),
        jobs: resolved.jobs,
        elapsed_ms: start.elapsed().as_millis(),
    });
    let csv = match (resolved.csv, rows) {
        (true, Some(rows)) => Some(rows_csv(&rows)?),
        _ => None,
    };
    Ok(Outcome { report, csv, output: rc.output })
}

/// Exit code: 0 when every asserted item passes, 1 on a failure, 2 on a
/// configuration error.
pub fn main_with(cli: &Cli) -> i32 {
    match execute(cli) {
        Err(e) => {
            eprintln!("qhowe: {e}");
            2
        }
        Ok(o) => {
            let text = match &o.csv {
                Some(c) => c.clone(),
                None => serde_json::to_string_pretty(&o.report).expect("reports serialize") + "\n",
            };
            match &o.output {
                Some(p) => {
                    if let Err(e) = std::fs::write(p, text) {
                        eprintln!("qhowe: {}: {e}", p.display());
                        return 2;
                    }
                }
                None => print!("{text}"),
            }
            for f in o.report.items.iter().filter(|i| i.status == crate::report::Status::Fail) {
                eprintln!("FAIL {}: {}", f.name, f.witness.as_deref().unwrap_or(""));
            }
            if o.report.ok() {
                0
            } else {
                1
            }
        }
    }
}
