//! `qcat` — check quantale-enriched category descriptions and run the
//! contraction fixpoint solver on them.
//!
//! Exit codes: 0 when every requested check/solve passed, 1 when a check or
//! solve failed, 2 on malformed input or usage errors.

use anyhow::{anyhow, Result};
use clap::{Parser, Subcommand};
use qcat::category::{check_category, check_functor, Object};
use qcat::control::check_control;
use qcat::quantale::{check_quantale_axioms, QuantaleValue};
use qcat::solver::{classify_fixpoint_pair, picard_solve, SolveStatus};
use qcat_cli::report::{CauchyOutcome, PairClassification, RunReport, SolveOutcome, StartOutcome};
use qcat_cli::schema::{self, LoadedInput};
use qcat_cli::demos;
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

#[derive(Parser)]
#[command(name = "qcat", version, about = "Quantale-enriched categories and fixpoints")]
struct Cli {
    /// Emit the machine-readable JSON report (deterministic byte-for-byte).
    #[arg(long, global = true)]
    json: bool,
    /// Comparison tolerance for real payloads.
    #[arg(long, global = true, default_value_t = qcat::DEFAULT_TOLERANCE)]
    tolerance: f64,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run the law checks named in (or implied by) a description file.
    Check { path: PathBuf },
    /// Run the Picard fixpoint solver on a description file.
    Solve {
        path: PathBuf,
        /// Start object (label) for the iteration.
        #[arg(long, conflicts_with = "sweep")]
        start: Option<String>,
        /// Iterate from every carrier object and classify the fixpoints.
        #[arg(long)]
        sweep: bool,
        /// Iteration horizon.
        #[arg(long, default_value_t = qcat::DEFAULT_SOLVER_HORIZON)]
        horizon: usize,
    },
    /// Run a named end-to-end demonstration.
    Demo {
        name: String,
        #[arg(long, default_value_t = qcat::DEFAULT_CAUCHY_HORIZON)]
        horizon: usize,
        /// Seed for the randomized scans (fixed default for reproducibility).
        #[arg(long)]
        seed: Option<u64>,
    },
    /// List the available demonstrations.
    ListDemos,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let started = Instant::now();
    let echo = match &cli.command {
        Command::Check { path } => format!("check {}", path.display()),
        Command::Solve { path, .. } => format!("solve {}", path.display()),
        Command::Demo { name, .. } => format!("demo {name}"),
        Command::ListDemos => "list-demos".into(),
    };
    let mut report = RunReport::new(echo, cli.tolerance);
    let run = match &cli.command {
        Command::Check { path } => run_check(&mut report, path, cli.tolerance),
        Command::Solve {
            path,
            start,
            sweep,
            horizon,
        } => {
            report.horizon = Some(*horizon);
            run_solve(&mut report, path, cli.tolerance, start.as_deref(), *sweep, *horizon)
        }
        Command::Demo { name, horizon, seed } => {
            report.horizon = Some(*horizon);
            demos::run_demo(&mut report, name, *horizon, *seed).map(|_| ())
        }
        Command::ListDemos => {
            report.demos = Some(demos::listings());
            Ok(())
        }
    };
    // Usage and parse errors preempt the report entirely (exit 2); failed
    // checks and solves still print the full report (exit 1).
    if let Err(err) = run {
        eprintln!("error: {err:#}");
        return ExitCode::from(2);
    }
    if cli.json {
        println!("{}", report.to_json());
    } else {
        print!("{}", report.render_human(started.elapsed().as_millis()));
    }
    if report.passed {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}

fn wants(checks: &Option<Vec<String>>, name: &str) -> bool {
    checks.as_ref().is_none_or(|list| list.iter().any(|c| c == name))
}

/// Law sample for the quantale check: the distinct hom values plus unit and
/// bottom, plus any explicit sample from the file, capped to keep the cubic
/// law loops at desk scale.
fn law_sample(input: &LoadedInput) -> Vec<QuantaleValue<f64>> {
    let q = input.category.quantale();
    let mut sample = vec![q.bottom(), q.unit()];
    let push_unique = |sample: &mut Vec<QuantaleValue<f64>>, v: &QuantaleValue<f64>| {
        if sample.len() < 16
            && !sample
                .iter()
                .any(|s| q.eq_values(s, v).unwrap_or(false))
        {
            sample.push(v.clone());
        }
    };
    if let Some(objects) = input.category.objects() {
        for x in &objects {
            for y in &objects {
                if let Ok(v) = input.category.hom(x, y) {
                    push_unique(&mut sample, &v);
                }
            }
        }
    }
    for v in input.sample.iter().flatten() {
        push_unique(&mut sample, v);
    }
    sample
}

fn run_check(report: &mut RunReport, path: &PathBuf, tolerance: f64) -> Result<()> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| anyhow!("cannot read {}: {e}", path.display()))?;
    let input = schema::load(&text, tolerance)?;

    if wants(&input.checks, "quantale") {
        let sample = law_sample(&input);
        report.push_check(&check_quantale_axioms(input.category.quantale(), &sample)?);
    }
    if wants(&input.checks, "category") {
        report.push_check(&check_category(&input.category)?);
    }
    if let Some(f) = &input.endomap {
        if wants(&input.checks, "functor") {
            report.push_check(&check_functor(f)?);
        }
    }
    if let Some(phi) = &input.control {
        if wants(&input.checks, "control") {
            let sample = law_sample(&input);
            report.push_check(&check_control(phi, &sample)?);
        }
        if let Some(f) = &input.endomap {
            if wants(&input.checks, "contraction") {
                report.push_check(&qcat::solver::check_contraction(f, phi)?);
            }
        }
    }
    Ok(())
}

fn run_solve(
    report: &mut RunReport,
    path: &PathBuf,
    tolerance: f64,
    start: Option<&str>,
    sweep: bool,
    horizon: usize,
) -> Result<()> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| anyhow!("cannot read {}: {e}", path.display()))?;
    let input = schema::load(&text, tolerance)?;
    let f = input
        .endomap
        .as_ref()
        .ok_or_else(|| anyhow!("solve needs an \"endomap\" in the description"))?;
    let phi = input
        .control
        .as_ref()
        .ok_or_else(|| anyhow!("solve needs a \"control\" in the description"))?;

    let starts: Vec<Object<f64>> = if sweep {
        input
            .category
            .objects()
            .ok_or_else(|| anyhow!("sweep needs a finite carrier"))?
    } else {
        let label = start.ok_or_else(|| anyhow!("pass --start <object> or --sweep"))?;
        vec![input.category.object_by_label(label).map_err(|e| anyhow!("{e}"))?]
    };

    // The solver presumes a verified contraction; run the checks first.
    report.push_check(&check_category(&input.category)?);
    report.push_check(&qcat::solver::check_contraction(f, phi)?);
    if !report.passed {
        return Ok(());
    }

    let c = &input.category;
    let mut outcomes = Vec::with_capacity(starts.len());
    let mut fixpoints: Vec<Object<f64>> = Vec::new();
    for s in &starts {
        let result = picard_solve(c, f, phi, s, horizon)?;
        let mut outcome = StartOutcome {
            start: c.label(s),
            status: result.status.name().into(),
            fixpoint: None,
            hom_forward: None,
            hom_backward: None,
            numerical_limit: None,
            cauchy: None,
        };
        if let Some(diag) = &result.diagnostics {
            outcome.cauchy = Some(CauchyOutcome {
                value: diag.cauchy.value.to_string(),
                horizon: diag.cauchy.horizon,
                stabilized: diag.cauchy.stabilized,
            });
        }
        if let SolveStatus::FixpointFound {
            object,
            hom_forward,
            hom_backward,
            numerical_limit,
        } = &result.status
        {
            outcome.fixpoint = Some(c.label(object));
            outcome.hom_forward = Some(hom_forward.to_string());
            outcome.hom_backward = Some(hom_backward.to_string());
            outcome.numerical_limit = Some(*numerical_limit);
            if !fixpoints
                .iter()
                .any(|u| c.object_iso(u, object).unwrap_or(false))
            {
                fixpoints.push(object.clone());
            }
        } else {
            report.passed = false;
        }
        outcomes.push(outcome);
    }

    let mut classifications = Vec::new();
    for (i, u) in fixpoints.iter().enumerate() {
        for v in fixpoints.iter().skip(i + 1) {
            let class = classify_fixpoint_pair(c, f, u, v)?;
            classifications.push(PairClassification {
                left: c.label(u),
                right: c.label(v),
                case: class.case.to_string(),
            });
        }
    }
    report.solve = Some(SolveOutcome {
        starts: outcomes,
        classifications,
    });
    Ok(())
}
