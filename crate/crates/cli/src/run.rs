use std::time::Instant;

use rayon::prelude::*;
use tamesc_core::clifford::{dim_delta_formula, CliffordInstance};
use tamesc_core::exact::{int, RationalFunction};
use tamesc_core::factors::{
    artin_conductor, formal_degree, principal_parameter_factors, sweep_instances, tame_parameter_factors,
    verify_hii, ConductorBreakdown,
};
use tamesc_core::matrix::tame_ring_at;
use tamesc_core::residue::norm_index;
use tamesc_core::weil::MetacyclicGroup;
use tamesc_core::{Error, TameParams};
use thiserror::Error;

use crate::args::{Cli, Command, InstanceArgs};
use crate::config::{self, InstanceSpec};
use crate::report::{BandReport, ConductorReport, FactorsReport, InstanceReport, Report, Verdict};

/// Errors that stop the run before any instance is evaluated (exit code 2).
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CliError {
    #[error("invalid input: {0}")]
    Invalid(String),
    #[error("cannot write {0}")]
    Io(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        2
    }
}

pub struct Outcome {
    pub report: Report,
    pub exit_code: i32,
}

fn show(x: &RationalFunction, q: Option<u64>) -> String {
    match q {
        None => x.to_string(),
        Some(q) => match x.eval_int(q as i64) {
            Ok(v) => v.to_string(),
            Err(e) => e.to_string(),
        },
    }
}

fn conductor_report(c: &ConductorBreakdown) -> ConductorReport {
    ConductorReport {
        total: c.total.to_string(),
        bands: c
            .bands
            .iter()
            .map(|b| BandReport {
                t_range: b.t_range.clone(),
                d_t: b.d_t.clone(),
                dim_fixed: b.dim_fixed,
                weight: b.weight.to_string(),
                contribution: b.contribution.to_string(),
            })
            .collect(),
    }
}

/// Records a core error on the report: budget exhaustion or failure.
fn record(rep: &mut InstanceReport, err: Error) {
    rep.verdict = match err {
        Error::BudgetExceeded { .. } => Verdict::BudgetExceeded,
        _ => Verdict::Fail,
    };
    rep.notes.push(err.to_string());
}

/// Sets the verdict from named checks, listing the failed ones.
fn conclude(rep: &mut InstanceReport, checks: &[(&str, bool)]) {
    let failed: Vec<&str> = checks.iter().filter(|(_, ok)| !ok).map(|(n, _)| *n).collect();
    if failed.is_empty() {
        rep.verdict = Verdict::Pass;
    } else {
        rep.verdict = Verdict::Fail;
        rep.notes.push(format!("failed: {}", failed.join(", ")));
    }
}

fn timed(id: &str, label: String, params: Option<TameParams>, q: Option<u64>, f: impl FnOnce(&mut InstanceReport)) -> InstanceReport {
    let start = Instant::now();
    let mut rep = InstanceReport::new(id, label, params, q);
    f(&mut rep);
    rep.timing_ms = start.elapsed().as_secs_f64() * 1e3;
    rep
}

/// Norm index of the tame ring at the largest level whose unit enumeration fits the budget.
/// The index is already determined at level 1, since norms are onto the principal units.
fn ring_norm_index(params: &TameParams, p: u64, budget: usize, rep: &mut InstanceReport) -> Option<u64> {
    let n = params.n as u32;
    let level = (1..=params.r).rev().find(|&l| (p as u128).pow(n * l) <= budget as u128);
    let Some(level) = level else {
        rep.notes.push(format!("ring norm index skipped: p^n = {} exceeds the budget", (p as u128).pow(n)));
        return None;
    };
    if level < params.r {
        rep.notes.push(format!("ring norm index computed at level {level}"));
    }
    match tame_ring_at(params, p, level).and_then(|ring| norm_index(&ring)) {
        Ok(v) => Some(v),
        Err(e) => {
            rep.notes.push(format!("ring norm index: {e}"));
            None
        }
    }
}

pub fn verify_instance(id: &str, params: &TameParams, q: Option<u64>, budget: usize) -> InstanceReport {
    timed(id, params.label(), Some(params.clone()), q, |rep| {
        let run = |rep: &mut InstanceReport| -> tamesc_core::Result<Vec<(&'static str, bool)>> {
            let group = MetacyclicGroup::from_params(params)?;
            let normidx = group.abelianization().normidx as u64;
            rep.norm_index_galois = Some(normidx);
            rep.a_phi = Some(group.a_theta_count() as u64);
            let mut checks = Vec::new();
            if let Some(p) = params.p {
                if params.matches_ring_action() {
                    rep.norm_index_ring = ring_norm_index(params, p, budget, rep);
                    if let Some(v) = rep.norm_index_ring {
                        checks.push(("norm index", v == normidx));
                    }
                } else {
                    rep.notes.push(format!(
                        "m = {} differs from p mod e = {}; ring norm index not compared",
                        params.m,
                        p % params.e as u64
                    ));
                }
            }
            rep.dim_delta_formula = Some(show(&dim_delta_formula(params, normidx)?, q));
            let conductor = artin_conductor(params, q)?;
            let expected = params.r as i64 * params.n as i64 * (params.n as i64 - 1);
            checks.push(("conductor", conductor.total == int(expected)));
            rep.conductor = Some(conductor_report(&conductor));
            let fd = formal_degree(params, normidx)?;
            rep.thm2 = Some(show(&fd.closed_form, q));
            checks.push(("formal degree", fd.consistent));
            let hii = verify_hii(params, normidx)?;
            rep.thm3_lhs = Some(show(&hii.lhs, q));
            rep.thm3_rhs = Some(show(&hii.rhs, q));
            checks.push(("gamma identity", hii.holds));
            if !fd.hypothesis {
                rep.notes.push("r < 2e: outside the range r >= 2e of the formal degree statement".into());
            }
            if !hii.quoted_gamma_agrees {
                rep.notes.push(format!("|gamma(0, Ad phi)| = {}", show(&hii.gamma_phi, q)));
            }
            Ok(checks)
        };
        match run(rep) {
            Ok(checks) => conclude(rep, &checks),
            Err(e) => record(rep, e),
        }
    })
}

pub fn brute_instance(id: &str, params: &TameParams, budget: usize) -> InstanceReport {
    let p = params.p;
    timed(id, params.label(), Some(params.clone()), p, |rep| {
        let run = |rep: &mut InstanceReport| -> tamesc_core::Result<Vec<(&'static str, bool)>> {
            let p = params.prime()?;
            let inst = CliffordInstance::new(params, budget)?;
            rep.index = Some(inst.index() as u64);
            let thetas = inst.thetas();
            let theta = thetas.first().ok_or_else(|| Error::IllDefined("no theta extends psi_beta".into()))?;
            if thetas.len() > 1 {
                rep.notes.push(format!("{} extensions theta; using the first", thetas.len()));
            }
            let delta = inst.delta(theta)?;
            rep.sigma_dim = Some(delta.sigma_dim);
            rep.multiplicity = Some(delta.multiplicity.to_string());
            rep.norm = Some(delta.norm.to_string());
            rep.irreducible = Some(delta.irreducible);
            rep.dim_delta_brute = Some(delta.dim);
            let mut checks = vec![("irreducible", delta.irreducible), ("orbit multiplicities", delta.orbit_consistent)];
            if params.is_galois() {
                if let Some(normidx) = ring_norm_index(params, p, budget, rep) {
                    rep.norm_index_ring = Some(normidx);
                    let formula = dim_delta_formula(params, normidx)?.eval_int(p as i64)?;
                    checks.push(("dimension", formula == int(delta.dim as i64)));
                    rep.dim_delta_formula = Some(formula.to_string());
                }
            } else {
                rep.notes.push("e does not divide p^f - 1: no norm index, formula not compared".into());
            }
            Ok(checks)
        };
        match run(rep) {
            Ok(checks) => conclude(rep, &checks),
            Err(e) => record(rep, e),
        }
    })
}

pub fn conductor_instance(id: &str, params: &TameParams, q: Option<u64>) -> InstanceReport {
    timed(id, params.label(), Some(params.clone()), q, |rep| match artin_conductor(params, q) {
        Ok(c) => {
            let expected = params.r as i64 * params.n as i64 * (params.n as i64 - 1);
            let ok = c.total == int(expected);
            rep.conductor = Some(conductor_report(&c));
            conclude(rep, &[("conductor", ok)]);
        }
        Err(e) => record(rep, e),
    })
}

pub fn tame_factors_instance(id: &str, params: &TameParams, q: Option<u64>) -> InstanceReport {
    timed(id, params.label(), Some(params.clone()), q, |rep| match tame_parameter_factors(params) {
        Ok(t) => {
            let n = params.n as i64;
            let ok = 2 * t.eps_exponent == params.r as i64 * n * (n - 1);
            rep.factors = Some(FactorsReport {
                parameter: "phi".into(),
                frobenius: t.frobenius.clone(),
                frobenius_weights: Vec::new(),
                l_at_0: show(&t.l_at_0, q),
                l_at_1: show(&t.l_at_1, q),
                eps_exponent: t.eps_exponent,
                conductor: Some(t.conductor.total.to_string()),
                gamma: show(&t.gamma_abs, q),
            });
            conclude(rep, &[("epsilon exponent", ok)]);
        }
        Err(e) => record(rep, e),
    })
}

pub fn principal_factors_instance(id: &str, n: usize, q: Option<u64>) -> InstanceReport {
    timed(id, format!("phi0 n={n}"), None, q, |rep| match principal_parameter_factors(n) {
        Ok(f) => {
            let ok = 2 * f.eps_exponent == (n * (n - 1)) as i64 && f.kernel_dim == n - 1;
            rep.factors = Some(FactorsReport {
                parameter: "phi0".into(),
                frobenius: Vec::new(),
                frobenius_weights: f.frobenius_weights.clone(),
                l_at_0: show(&f.l_at_0, q),
                l_at_1: show(&f.l_at_1, q),
                eps_exponent: f.eps_exponent,
                conductor: None,
                gamma: show(&f.gamma_abs, q),
            });
            conclude(rep, &[("principal factors", ok)]);
        }
        Err(e) => record(rep, e),
    })
}

pub fn sweep_reports(n_max: usize, r_extra: u32, budget: usize) -> Vec<InstanceReport> {
    sweep_instances(n_max, r_extra)
        .par_iter()
        .map(|p| {
            let id = format!("n{}e{}f{}r{}m{}c{}", p.n, p.e, p.f, p.r, p.m, p.c);
            verify_instance(&id, p, None, budget)
        })
        .collect()
}

/// `q` at which to evaluate: `--q`, else `p` unless symbolic.
fn eval_point(spec: &InstanceSpec) -> Option<u64> {
    spec.q.or(if spec.is_symbolic() { None } else { spec.p })
}

type Job = (String, InstanceSpec, TameParams);

fn instance_jobs(args: &InstanceArgs) -> Result<Vec<Job>, CliError> {
    config::resolve(args)?
        .into_iter()
        .map(|(id, spec)| {
            let params = spec.to_params().map_err(|e| match e {
                CliError::Invalid(m) => CliError::Invalid(format!("[{id}] {m}")),
                other => other,
            })?;
            Ok((id, spec, params))
        })
        .collect()
}

fn require_prime(jobs: &[Job], what: &str) -> Result<(), CliError> {
    match jobs.iter().find(|(_, _, p)| p.p.is_none()) {
        Some((id, _, _)) => Err(CliError::Invalid(format!("[{id}] {what} needs a concrete --p (and no --symbolic)"))),
        None => Ok(()),
    }
}

/// Runs a parsed command line; the report and exit code are returned for printing.
pub fn execute(cli: &Cli) -> Result<Outcome, CliError> {
    let (name, output, instances) = match &cli.command {
        Command::Verify(a) if a.sweep => ("verify", &a.instance.output, sweep_reports(a.n_max, a.r_extra, a.instance.output.budget)),
        Command::Sweep(a) => ("sweep", &a.output, sweep_reports(a.n_max, a.r_extra, a.output.budget)),
        Command::Verify(a) => {
            let jobs = instance_jobs(&a.instance)?;
            if let Some((id, _, _)) = jobs.iter().find(|(_, _, p)| !p.is_galois()) {
                return Err(CliError::Invalid(format!("[{id}] verify needs a Galois extension: e must divide p^f - 1")));
            }
            let budget = a.instance.output.budget;
            let reps = jobs.par_iter().map(|(id, s, p)| verify_instance(id, p, eval_point(s), budget)).collect();
            ("verify", &a.instance.output, reps)
        }
        Command::Brute(a) => {
            let jobs = instance_jobs(a)?;
            require_prime(&jobs, "brute")?;
            let reps = jobs.iter().map(|(id, _, p)| brute_instance(id, p, a.output.budget)).collect();
            ("brute", &a.output, reps)
        }
        Command::Conductor(a) => {
            let jobs = instance_jobs(a)?;
            let reps = jobs.par_iter().map(|(id, s, p)| conductor_instance(id, p, eval_point(s))).collect();
            ("conductor", &a.output, reps)
        }
        Command::Factors(a) if a.principal => {
            let reps = config::resolve(&a.instance)?
                .into_iter()
                .map(|(id, spec)| {
                    let (n, _, _) = spec.degrees()?;
                    Ok(principal_factors_instance(&id, n, eval_point(&spec)))
                })
                .collect::<Result<_, CliError>>()?;
            ("factors", &a.instance.output, reps)
        }
        Command::Factors(a) => {
            let jobs = instance_jobs(&a.instance)?;
            let reps = jobs.par_iter().map(|(id, s, p)| tame_factors_instance(id, p, eval_point(s))).collect();
            ("factors", &a.instance.output, reps)
        }
    };
    let report = Report::new(name, instances);
    if let Some(path) = &output.out {
        let body = if output.json { report.to_json() } else { report.to_text() };
        std::fs::write(path, body).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))?;
    }
    let exit_code = report.exit_code();
    Ok(Outcome { report, exit_code })
}
