//! Named end-to-end demonstrations, runnable without an input file.

use crate::report::{DemoListing, DemoOutcome, RunReport};
use anyhow::{bail, Result};
use qcat::category::{check_category, check_functor, Object};
use qcat::control::check_control;
use qcat::instances::{
    almost_constant, banach_line_fixture, boolean_control_candidates, boyd_wong_fixture,
    delta_banach_control, delta_plus_fixpoint_scan, fuzzy_three_fixture, metric_grid_fixture,
    pm_embedded_fixture, random_finitary_family, NamedFixture,
};
use qcat::quantale::{QuantaleValue, TNorm};
use qcat::solver::{check_contraction, picard_solve, SolveStatus};
use qcat::step::StepDistribution;

pub const DEMO_SEED: u64 = 0xD151;

pub fn listings() -> Vec<DemoListing> {
    let fixture_line = |f: &NamedFixture<f64>| DemoListing {
        name: f.name.into(),
        description: format!("{} ({})", f.description, f.expected),
    };
    vec![
        fixture_line(&banach_line_fixture::<f64>()),
        fixture_line(&boyd_wong_fixture::<f64>()),
        fixture_line(&fuzzy_three_fixture::<f64>()),
        fixture_line(&pm_embedded_fixture::<f64>()),
        DemoListing {
            name: "delta-counterexample".into(),
            description: "the distribution Banach control: almost-constant fixpoint on the full \
                          carrier, none besides 0 and e on the finitary sub-carrier"
                .into(),
        },
        DemoListing {
            name: "boolean-degenerate".into(),
            description: "over the Boolean quantale the fixpoint hypothesis already supplies the \
                          fixpoint; only two control functions exist"
                .into(),
        },
    ]
}

fn run_fixture_demo(
    report: &mut RunReport,
    fixture: &NamedFixture<f64>,
    horizon: usize,
) -> Result<(Vec<String>, String, bool)> {
    let mut narrative = Vec::new();
    narrative.push(fixture.description.to_string());
    let c = &fixture.category;
    report.push_check(&check_category(c)?);
    let f = fixture.endomap.as_ref().expect("fixture has an endomap");
    let phi = fixture.control.as_ref().expect("fixture has a control");
    report.push_check(&check_functor(f)?);
    report.push_check(&check_contraction(f, phi)?);
    let start = fixture.start.as_ref().expect("fixture has a start");
    let result = picard_solve(c, f, phi, start, horizon)?;
    narrative.push(format!(
        "picard iteration from {} at horizon {horizon}: {}",
        c.label(start),
        result.status
    ));
    if let Some(diag) = &result.diagnostics {
        narrative.push(format!(
            "cauchy degree {} ({}stabilized)",
            diag.cauchy.value,
            if diag.cauchy.stabilized { "" } else { "not " }
        ));
    }
    let (verdict, ok) = match &result.status {
        SolveStatus::FixpointFound {
            object,
            hom_forward,
            hom_backward,
            numerical_limit,
        } => (
            format!(
                "fixpoint {}{} with hom(fu, u) = {hom_forward}, hom(u, fu) = {hom_backward}; expected {}",
                c.label(object),
                if *numerical_limit { " (numerical limit)" } else { "" },
                fixture.expected
            ),
            true,
        ),
        other => (format!("no fixpoint: {other}"), false),
    };
    Ok((narrative, verdict, ok))
}

pub fn run_demo(
    report: &mut RunReport,
    name: &str,
    horizon: usize,
    seed: Option<u64>,
) -> Result<bool> {
    let (narrative, verdict, ok) = match name {
        "banach" => run_fixture_demo(report, &banach_line_fixture(), horizon)?,
        "boyd-wong" => {
            let fixture = boyd_wong_fixture::<f64>();
            let phi = fixture.control.as_ref().unwrap();
            let sample: Vec<QuantaleValue<f64>> = (1..=1000)
                .map(|k| QuantaleValue::Lawvere(k as f64 / 100.0))
                .collect();
            report.push_check(&check_control(phi, &sample)?);
            run_fixture_demo(report, &fixture, horizon)?
        }
        "fuzzy" => run_fixture_demo(report, &fuzzy_three_fixture(), horizon)?,
        "pm-embed" => {
            let (mut narrative, verdict, ok) =
                run_fixture_demo(report, &pm_embedded_fixture(), horizon)?;
            // The embedded solve must agree with the plain metric solve.
            let metric = metric_grid_fixture::<f64>();
            let m = picard_solve(
                &metric.category,
                metric.endomap.as_ref().unwrap(),
                metric.control.as_ref().unwrap(),
                metric.start.as_ref().unwrap(),
                horizon,
            )?;
            let agrees = matches!(
                (&m.status,),
                (SolveStatus::FixpointFound { object, .. },) if *object == Object::Idx(0)
            );
            narrative.push(format!(
                "plain metric solve on the underlying grid agrees: {}",
                if agrees { "yes" } else { "NO" }
            ));
            (narrative, verdict, ok && agrees)
        }
        "delta-counterexample" => {
            let mut narrative = Vec::new();
            let phi = delta_banach_control::<f64>(TNorm::Minimum, 2.0)
                .expect("K = 2 is admissible");
            let half = almost_constant(0.5);
            let sample = vec![
                QuantaleValue::Delta(StepDistribution::zero()),
                QuantaleValue::Delta(StepDistribution::unit()),
                QuantaleValue::Delta(half.clone()),
                QuantaleValue::Delta(StepDistribution::step_at(1.0).expect("finite step")),
            ];
            let control_report = check_control(&phi, &sample)?;
            let violation_found = control_report.has_violation("fixpoint-dichotomy");
            narrative.push(format!(
                "on the full distribution carrier, u ≡ 0.5 above 0 is a fixpoint of u(2t): \
                 dichotomy violation {}",
                if violation_found { "detected" } else { "NOT detected" }
            ));
            // The violation is the expected outcome here, so it does not fail
            // the demo; record the check without folding it into `passed`.
            report
                .checks
                .push(crate::report::CheckOutcome::from_core(&control_report));
            let family =
                random_finitary_family::<f64>(seed.unwrap_or(DEMO_SEED), 1000);
            let scan = delta_plus_fixpoint_scan(&phi, &family)?;
            report.push_check(&scan);
            narrative.push(format!(
                "restricted to distributions with u(∞) = 1: scanned {} candidates, forbidden fixpoints: {}",
                family.len(),
                scan.violations.len()
            ));
            let ok = violation_found && scan.passed();
            (
                narrative,
                if ok {
                    "the Banach control fails the dichotomy on the full carrier and holds it on \
                     the finitary sub-carrier"
                        .to_string()
                } else {
                    "unexpected scan outcome".to_string()
                },
                ok,
            )
        }
        "boolean-degenerate" => {
            let mut narrative = Vec::new();
            let controls = boolean_control_candidates::<f64>();
            narrative.push(format!(
                "valid Boolean control functions: {} (the identity and the constant-top map)",
                controls.len()
            ));
            let fixture = qcat::instances::make_ordered_set::<f64>(&[
                vec![true, true],
                vec![false, true],
            ])?;
            let category = std::sync::Arc::new(fixture);
            report.push_check(&check_category(&category)?);
            let f = qcat::category::QFunctor::identity(category.clone());
            let monotone = &controls
                .iter()
                .find(|(f0, f1, _)| !f0 && *f1)
                .expect("identity control is valid")
                .2;
            let start = Object::Idx(0);
            let result = picard_solve(&category, &f, monotone, &start, horizon)?;
            let ok = match &result.status {
                SolveStatus::FixpointFound { object, .. } => {
                    category.object_iso(object, &start)?
                }
                _ => false,
            };
            narrative.push(
                "the hypothesis x ≅ fx already names a fixpoint; the solver returns one \
                 isomorphic to it"
                    .to_string(),
            );
            let two = controls.len() == 2;
            (
                narrative,
                format!(
                    "degenerate case confirmed: {} controls, solver fixpoint isomorphic to the \
                     hypothesized start: {}",
                    controls.len(),
                    ok
                ),
                ok && two,
            )
        }
        other => bail!(
            "unknown demo {other:?}; available: {}",
            listings()
                .iter()
                .map(|l| l.name.clone())
                .collect::<Vec<_>>()
                .join(", ")
        ),
    };
    report.demo = Some(DemoOutcome {
        name: name.to_string(),
        narrative,
        verdict,
    });
    report.passed &= ok;
    Ok(ok)
}
