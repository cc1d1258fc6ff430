//! The `v1` JSON input schema and its conversion into core types.
//!
//! ```json
//! {
//!   "version": "v1",
//!   "quantale": "lawvere",
//!   "category": { "objects": ["a", "b"], "hom": [[0, 1], [1, 0]] },
//!   "endomap": ["a", "a"],
//!   "control": { "kind": "banach", "k": 0.5 },
//!   "checks": ["quantale", "category", "functor", "control", "contraction"],
//!   "sample": [0, 0.5, 1]
//! }
//! ```
//!
//! Quantale descriptors: `"boolean"`, `"lawvere"`, `{"tnorm": "product" |
//! "minimum" | "lukasiewicz"}`, or `{"delta": {"tnorm": ...}}`. Hom entries
//! are booleans or 0/1 for the Boolean instance, numbers (or `"inf"`) for
//! the metric instance, numbers in `[0, 1]` for a t-norm, and
//! `{"breakpoints": [...], "values": [...]}` step distributions for the
//! distance-distribution instance.

use anyhow::{anyhow, bail, Context, Result};
use qcat::category::{QCategory, QFunctor};
use qcat::control::ControlFunction;
use qcat::instances;
use qcat::quantale::{InstanceTag, Quantale, QuantaleValue, TNorm};
use qcat::step::StepDistribution;
use serde::Deserialize;
use std::sync::Arc;

#[derive(Deserialize, Debug)]
#[serde(deny_unknown_fields)]
pub struct InputFile {
    pub version: String,
    pub quantale: QuantaleSpec,
    pub category: CategorySpec,
    #[serde(default)]
    pub endomap: Option<Vec<String>>,
    #[serde(default)]
    pub control: Option<ControlSpec>,
    #[serde(default)]
    pub checks: Option<Vec<String>>,
    #[serde(default)]
    pub sample: Option<Vec<HomEntry>>,
}

#[derive(Deserialize, Debug)]
#[serde(untagged)]
pub enum QuantaleSpec {
    Name(String),
    TNorm { tnorm: String },
    Delta { delta: DeltaSpec },
}

#[derive(Deserialize, Debug)]
#[serde(deny_unknown_fields)]
pub struct DeltaSpec {
    pub tnorm: String,
}

#[derive(Deserialize, Debug)]
#[serde(deny_unknown_fields)]
pub struct CategorySpec {
    pub objects: Vec<String>,
    pub hom: Vec<Vec<HomEntry>>,
}

#[derive(Deserialize, Debug, Clone)]
#[serde(untagged)]
pub enum HomEntry {
    Bool(bool),
    Num(f64),
    Str(String),
    Step {
        breakpoints: Vec<f64>,
        values: Vec<f64>,
    },
}

#[derive(Deserialize, Debug)]
#[serde(tag = "kind")]
pub enum ControlSpec {
    #[serde(rename = "banach")]
    Banach { k: f64 },
    #[serde(rename = "boyd-wong-table")]
    BoydWongTable { points: Vec<(f64, f64)> },
    #[serde(rename = "delta-affine")]
    DeltaAffine,
    #[serde(rename = "delta-banach")]
    DeltaBanach {
        #[serde(rename = "K")]
        k: f64,
    },
}

/// A fully converted input: the category (shared), the optional endomap and
/// control, and the optional explicit law sample.
pub struct LoadedInput {
    pub category: Arc<QCategory<f64>>,
    pub endomap: Option<QFunctor<f64>>,
    pub control: Option<ControlFunction<f64>>,
    pub checks: Option<Vec<String>>,
    pub sample: Option<Vec<QuantaleValue<f64>>>,
}

fn tnorm_by_name(name: &str) -> Result<TNorm<f64>> {
    match name {
        "product" => Ok(TNorm::Product),
        "minimum" => Ok(TNorm::Minimum),
        "lukasiewicz" => Ok(TNorm::Lukasiewicz),
        other => bail!("unknown t-norm {other:?} (expected product, minimum, or lukasiewicz)"),
    }
}

pub fn quantale_from_spec(spec: &QuantaleSpec, tolerance: f64) -> Result<Quantale<f64>> {
    let q = match spec {
        QuantaleSpec::Name(name) => match name.as_str() {
            "boolean" => Quantale::boolean(),
            "lawvere" => Quantale::lawvere(),
            other => bail!("unknown quantale {other:?} (expected boolean or lawvere)"),
        },
        QuantaleSpec::TNorm { tnorm } => Quantale::unit_interval(tnorm_by_name(tnorm)?),
        QuantaleSpec::Delta { delta } => Quantale::delta(tnorm_by_name(&delta.tnorm)?),
    };
    Ok(q.with_tolerance(tolerance))
}

pub fn value_from_entry(q: &Quantale<f64>, entry: &HomEntry) -> Result<QuantaleValue<f64>> {
    match (q.tag(), entry) {
        (InstanceTag::Boolean, HomEntry::Bool(b)) => Ok(QuantaleValue::Boolean(*b)),
        (InstanceTag::Boolean, HomEntry::Num(x)) if *x == 0.0 || *x == 1.0 => {
            Ok(QuantaleValue::Boolean(*x == 1.0))
        }
        (InstanceTag::Lawvere, HomEntry::Num(x)) if *x >= 0.0 => Ok(QuantaleValue::Lawvere(*x)),
        (InstanceTag::Lawvere, HomEntry::Str(s)) if s == "inf" => {
            Ok(QuantaleValue::Lawvere(f64::INFINITY))
        }
        (InstanceTag::UnitInterval, HomEntry::Num(x)) if (0.0..=1.0).contains(x) => {
            Ok(QuantaleValue::UnitInterval(*x))
        }
        (InstanceTag::Delta, HomEntry::Step { breakpoints, values }) => Ok(QuantaleValue::Delta(
            StepDistribution::new(breakpoints.clone(), values.clone())
                .map_err(|e| anyhow!("{e}"))?,
        )),
        (tag, entry) => bail!("hom entry {entry:?} does not fit the {tag} quantale"),
    }
}

pub fn load(text: &str, tolerance: f64) -> Result<LoadedInput> {
    let input: InputFile = serde_json::from_str(text)?;
    if input.version != "v1" {
        bail!("unsupported schema version {:?} (expected \"v1\")", input.version);
    }
    let quantale = quantale_from_spec(&input.quantale, tolerance)?;

    let n = input.category.objects.len();
    if input.category.hom.len() != n {
        bail!("hom matrix has {} rows for {n} objects", input.category.hom.len());
    }
    let mut hom = Vec::with_capacity(n);
    for (i, row) in input.category.hom.iter().enumerate() {
        if row.len() != n {
            bail!("hom row {i} has {} entries for {n} objects", row.len());
        }
        let mut out = Vec::with_capacity(n);
        for (j, entry) in row.iter().enumerate() {
            out.push(
                value_from_entry(&quantale, entry)
                    .with_context(|| format!("hom[{i}][{j}]"))?,
            );
        }
        hom.push(out);
    }
    let category = Arc::new(
        QCategory::finite(quantale.clone(), input.category.objects.clone(), hom)
            .map_err(|e| anyhow!("{e}"))?,
    );

    let endomap = match &input.endomap {
        None => None,
        Some(labels) => {
            if labels.len() != n {
                bail!("endomap lists {} images for {n} objects", labels.len());
            }
            let mut table = Vec::with_capacity(n);
            for label in labels {
                let obj = category.object_by_label(label).map_err(|e| anyhow!("{e}"))?;
                let qcat::category::Object::Idx(idx) = obj else {
                    bail!("endomap target {label:?} is not a carrier object");
                };
                table.push(idx);
            }
            Some(QFunctor::endo_table(category.clone(), table).map_err(|e| anyhow!("{e}"))?)
        }
    };

    let control = match &input.control {
        None => None,
        Some(spec) => Some(control_from_spec(spec, &quantale)?),
    };

    let sample = match &input.sample {
        None => None,
        Some(entries) => {
            let mut values = Vec::with_capacity(entries.len());
            for entry in entries {
                values.push(value_from_entry(&quantale, entry).context("sample entry")?);
            }
            Some(values)
        }
    };

    Ok(LoadedInput {
        category,
        endomap,
        control,
        checks: input.checks,
        sample,
    })
}

pub fn control_from_spec(
    spec: &ControlSpec,
    quantale: &Quantale<f64>,
) -> Result<ControlFunction<f64>> {
    let control = match spec {
        ControlSpec::Banach { k } => {
            if quantale.tag() != InstanceTag::Lawvere {
                bail!("the banach control lives on the lawvere quantale");
            }
            instances::banach_control(*k).map_err(|e| anyhow!("{e}"))?
        }
        ControlSpec::BoydWongTable { points } => {
            if quantale.tag() != InstanceTag::Lawvere {
                bail!("the boyd-wong-table control lives on the lawvere quantale");
            }
            instances::boyd_wong_table_control(points.clone()).map_err(|e| anyhow!("{e}"))?
        }
        ControlSpec::DeltaAffine => {
            let Some(tnorm) = quantale.tnorm().cloned() else {
                bail!("the delta-affine control needs a delta quantale");
            };
            if quantale.tag() != InstanceTag::Delta {
                bail!("the delta-affine control needs a delta quantale");
            }
            instances::delta_affine_control(tnorm)
        }
        ControlSpec::DeltaBanach { k } => {
            let Some(tnorm) = quantale.tnorm().cloned() else {
                bail!("the delta-banach control needs a delta quantale");
            };
            if quantale.tag() != InstanceTag::Delta {
                bail!("the delta-banach control needs a delta quantale");
            }
            instances::delta_banach_control(tnorm, *k).map_err(|e| anyhow!("{e}"))?
        }
    };
    Ok(control)
}
