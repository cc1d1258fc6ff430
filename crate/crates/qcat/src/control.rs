//! Control functions: self-maps of the quantale that dominate the identity
//! and whose only fixpoints are the bottom or elements above the unit.
//!
//! A contraction is measured against such a function (`hom(fx, fy) ≥
//! φ(hom(x, y))`); the two defining conditions checked here are
//!
//! 1. `φ(t) ≥ t` for all `t`,
//! 2. `φ(t) = t` implies `t = bottom` or `unit ≤ t`,
//!
//! and the solver additionally relies on sequential lower-semicontinuity:
//! `φ(⋁_N ⋀_{n≥N} t_n) ≤ ⋁_N ⋀_{n≥N} φ(t_n)` for every sequence. None of
//! these are decidable from point evaluations, so [`check_control`] verifies
//! them on a sample and [`is_seq_lsc`] is a sampled falsifier: a failure is a
//! certificate of violation, a pass is evidence only.

use crate::error::{Error, Result};
use crate::quantale::{Quantale, QuantaleValue};
use crate::real::Real;
use crate::report::{CheckReport, Scope};
use std::fmt;
use std::sync::Arc;

/// Which fixpoints the author of a control function expects to see.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FixpointPolicy {
    BottomOnly,
    AboveUnitOnly,
    BottomAndAboveUnit,
}

/// Provenance of the semicontinuity claim attached to a control function.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SemicontinuityCertificate {
    /// Continuity (or semicontinuity) argued analytically by the author.
    Analytic,
    /// Only sampled evidence from [`is_seq_lsc`].
    Sampled,
    None,
}

type ControlRule<R> = Arc<dyn Fn(&QuantaleValue<R>) -> QuantaleValue<R> + Send + Sync>;

/// A named self-map of a quantale with its contraction metadata.
#[derive(Clone)]
pub struct ControlFunction<R> {
    quantale: Quantale<R>,
    name: String,
    rule: ControlRule<R>,
    pub policy: FixpointPolicy,
    pub certificate: SemicontinuityCertificate,
}

impl<R: Real> fmt::Debug for ControlFunction<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ControlFunction({} on {})", self.name, self.quantale.tag())
    }
}

impl<R: Real> ControlFunction<R> {
    pub fn new(
        quantale: Quantale<R>,
        name: impl Into<String>,
        rule: ControlRule<R>,
        policy: FixpointPolicy,
        certificate: SemicontinuityCertificate,
    ) -> Self {
        ControlFunction {
            quantale,
            name: name.into(),
            rule,
            policy,
            certificate,
        }
    }

    pub fn quantale(&self) -> &Quantale<R> {
        &self.quantale
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn apply(&self, t: &QuantaleValue<R>) -> Result<QuantaleValue<R>> {
        if t.tag() != self.quantale.tag() {
            return Err(Error::InstanceMismatch {
                op: "control application",
                left: self.quantale.tag().name(),
                right: t.tag().name(),
            });
        }
        Ok((self.rule)(t))
    }
}

/// Verifies the two control-function conditions on a sample: `φ(t) ≥ t`
/// everywhere, and every detected fixpoint lies in `{bottom} ∪ ↑unit`.
pub fn check_control<R: Real>(
    phi: &ControlFunction<R>,
    sample: &[QuantaleValue<R>],
) -> Result<CheckReport> {
    let q = phi.quantale();
    let exhaustive =
        q.tag() == crate::quantale::InstanceTag::Boolean && sample.len() >= 2;
    let scope = if exhaustive {
        Scope::Exhaustive
    } else {
        Scope::Sampled { cases: sample.len() }
    };
    let mut report = CheckReport::new(format!("control({})", phi.name()), scope);
    if !exhaustive {
        report.note("conditions verified on the sample only");
    }
    for t in sample {
        let ft = phi.apply(t)?;
        if !q.leq(t, &ft)? {
            report.violate("inflationary", format!("φ({t}) = {ft} ≱ {t}"));
            continue;
        }
        if q.eq_values(&ft, t)? && !q.is_bottom(t)? && !q.is_above_unit(t)? {
            report.violate(
                "fixpoint-dichotomy",
                format!("φ({t}) = {t} but {t} is neither bottom nor above the unit"),
            );
        }
    }
    Ok(report)
}

type ValueRule<R> = Arc<dyn Fn(usize) -> QuantaleValue<R> + Send + Sync>;

/// A sequence of quantale values for semicontinuity probing.
#[derive(Clone)]
pub enum ValueSequence<R> {
    Prefix(Vec<QuantaleValue<R>>),
    Rule { name: String, rule: ValueRule<R> },
}

impl<R: Real> ValueSequence<R> {
    fn at(&self, n: usize) -> QuantaleValue<R> {
        match self {
            ValueSequence::Prefix(p) => p[n.min(p.len() - 1)].clone(),
            ValueSequence::Rule { rule, .. } => rule(n),
        }
    }

    fn describe(&self) -> String {
        match self {
            ValueSequence::Prefix(p) => format!("prefix of {}", p.len()),
            ValueSequence::Rule { name, .. } => name.clone(),
        }
    }
}

/// A sampling plan for [`is_seq_lsc`]: which sequences to probe and how far
/// to truncate the tail sup-infs.
#[derive(Clone)]
pub struct LscPlan<R> {
    pub sequences: Vec<ValueSequence<R>>,
    pub horizon: usize,
}

fn sup_inf<R: Real>(
    q: &Quantale<R>,
    values: &[QuantaleValue<R>],
) -> Result<QuantaleValue<R>> {
    // ⋁_{N ≤ ⌊h/2⌋} ⋀_{n ∈ [N, h]} v_n, same truncation contract as the
    // Cauchy windows.
    let horizon = values.len() - 1;
    let cap = horizon / 2;
    let mut acc = q.top();
    let mut best = q.bottom();
    for n in (0..=horizon).rev() {
        acc = q.meet2(&acc, &values[n])?;
        if n <= cap {
            best = q.join2(&best, &acc)?;
        }
    }
    Ok(best)
}

/// Sampled falsifier for sequential lower-semicontinuity: for each planned
/// sequence checks `φ(⋁_N ⋀_{n≥N} t_n) ≤ ⋁_N ⋀_{n≥N} φ(t_n)` with
/// horizon-truncated sup-infs. A fail is a certificate of violation; a pass
/// is evidence only.
pub fn is_seq_lsc<R: Real>(phi: &ControlFunction<R>, plan: &LscPlan<R>) -> Result<CheckReport> {
    if plan.horizon < 2 {
        return Err(Error::Horizon(plan.horizon));
    }
    let q = phi.quantale();
    let mut report = CheckReport::new(
        format!("seq-lsc({})", phi.name()),
        Scope::Sampled {
            cases: plan.sequences.len(),
        },
    );
    report.note("sampled falsifier: a pass is evidence, not a proof");
    for seq in &plan.sequences {
        let values: Vec<QuantaleValue<R>> = (0..=plan.horizon).map(|n| seq.at(n)).collect();
        let mut mapped = Vec::with_capacity(values.len());
        for v in &values {
            mapped.push(phi.apply(v)?);
        }
        let lhs = phi.apply(&sup_inf(q, &values)?)?;
        let rhs = sup_inf(q, &mapped)?;
        if !q.leq(&lhs, &rhs)? {
            report.violate(
                "seq-lsc",
                format!(
                    "sequence ({}): φ(sup-inf) = {lhs} ≰ sup-inf of φ = {rhs}",
                    seq.describe()
                ),
            );
        }
    }
    Ok(report)
}
