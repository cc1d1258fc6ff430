//! Contraction checking and the Picard fixpoint solver.
//!
//! Given an endomap `f` controlled by `φ` (meaning `hom(fx, fy) ≥
//! φ(hom(x, y))`) and a start `x` with `hom(x, fx) ≠ bottom ≠ hom(fx, x)`,
//! the orbit `(fⁿx)` determines the tail presheaves `φ_{x,f}` and `ψ_{x,f}`.
//! When the orbit is Cauchy these are adjoint, and an object representing
//! them is a fixpoint of `f` (`unit ≤ hom(fu, u)` and `unit ≤ hom(u, fu)`).
//! The solver iterates the orbit, gathers the diagnostic sequences
//! `c_n = hom(fⁿx, fⁿ⁺¹x)` and `a_n = hom(fⁿ⁺¹x, fⁿx)` from the
//! convergence argument, and then:
//!
//! * on finite (or search-hinted) carriers, searches for a representing
//!   object of the tail presheaf;
//! * on rule-based carriers, uses orbit stabilization (`c_n` and `a_n`
//!   within tolerance of the unit) and returns the stabilized orbit point as
//!   a numerical limit.
//!
//! Fixpoints are unique only up to isomorphism and only under extra
//! hypotheses; [`classify_fixpoint_pair`] reports which of the four possible
//! hom configurations a pair of fixpoints realizes and which uniqueness
//! argument (all homs non-bottom, or symmetry) applies.

use crate::category::{Object, QCategory, QFunctor};
use crate::cauchy::{cauchy_degree, CauchyEstimate, ObjectSequence};
use crate::control::ControlFunction;
use crate::distributor::is_representable;
use crate::error::{Error, Result};
use crate::quantale::QuantaleValue;
use crate::real::Real;
use crate::report::{CheckReport, Scope};
use std::fmt;
use std::sync::Arc;

/// Checks `hom(fx, fy) ≥ φ(hom(x, y))` on all probe pairs, reporting the
/// worst defect.
pub fn check_contraction<R: Real>(
    f: &QFunctor<R>,
    phi: &ControlFunction<R>,
) -> Result<CheckReport> {
    if !f.is_endo() {
        return Err(Error::Incompatible("contraction check needs an endomap".into()));
    }
    let c = f.source();
    if !c.quantale().same_structure(phi.quantale()) {
        return Err(Error::Incompatible(
            "control function lives on a different quantale".into(),
        ));
    }
    let objs = c.probe_space();
    let scope = if c.is_finite() {
        Scope::Exhaustive
    } else {
        Scope::Sampled {
            cases: objs.len() * objs.len(),
        }
    };
    let mut report = CheckReport::new(format!("contraction({})", phi.name()), scope);
    if !c.is_finite() {
        report.note("rule-based carrier: checked on the declared probe set only");
    }
    let q = c.quantale();
    let mut worst: Option<(R, String)> = None;
    for x in &objs {
        for y in &objs {
            let fx = f.apply(x)?;
            let fy = f.apply(y)?;
            let before = phi.apply(&c.hom(x, y)?)?;
            let after = c.hom(&fx, &fy)?;
            if !q.leq(&before, &after)? {
                let gap = q.violation_gap(&before, &after)?;
                let witness = format!(
                    "hom(f{x}, f{y}) = {after} ≱ φ(hom({x}, {y})) = {before}",
                    x = c.label(x),
                    y = c.label(y)
                );
                if worst.as_ref().is_none_or(|(g, _)| gap > *g) {
                    worst = Some((gap, witness));
                }
            }
        }
    }
    if let Some((gap, witness)) = worst {
        report.violate("contraction", format!("worst defect {gap}: {witness}"));
    }
    Ok(report)
}

/// The diagnostic sequences gathered along a Picard orbit.
#[derive(Clone, Debug)]
pub struct IterationDiagnostics<R> {
    /// The orbit `x, fx, f²x, …` up to the horizon.
    pub orbit: Vec<Object<R>>,
    /// `c_n = hom(fⁿx, fⁿ⁺¹x)`.
    pub forward: Vec<QuantaleValue<R>>,
    /// `a_n = hom(fⁿ⁺¹x, fⁿx)`.
    pub backward: Vec<QuantaleValue<R>>,
    /// Horizon actually used.
    pub horizon: usize,
    /// Truncated Cauchy degree of the orbit with its window meets.
    pub cauchy: CauchyEstimate<R>,
    /// First index at which both `c_n` and `a_n` are within tolerance of the
    /// unit, when that happens.
    pub stabilized_at: Option<usize>,
}

/// Solver outcome.
#[derive(Clone, Debug)]
pub enum SolveStatus<R> {
    FixpointFound {
        object: Object<R>,
        /// `hom(fu, u)` and `hom(u, fu)`, both above the unit.
        hom_forward: QuantaleValue<R>,
        hom_backward: QuantaleValue<R>,
        /// True when the object came from orbit stabilization on a
        /// rule-based carrier rather than a representability search.
        numerical_limit: bool,
    },
    /// The truncated Cauchy degree did not reach the unit (or the orbit of a
    /// rule-based carrier did not stabilize).
    NotCauchy,
    /// No carrier object represents the tail presheaf within tolerance.
    NotRepresentable,
    /// `hom(x, fx) = bottom` or `hom(fx, x) = bottom` at every tested start.
    PreconditionFailed { checked: Vec<String> },
}

impl<R: Real> SolveStatus<R> {
    pub fn is_found(&self) -> bool {
        matches!(self, SolveStatus::FixpointFound { .. })
    }

    pub fn name(&self) -> &'static str {
        match self {
            SolveStatus::FixpointFound { .. } => "fixpoint-found",
            SolveStatus::NotCauchy => "not-cauchy",
            SolveStatus::NotRepresentable => "not-representable",
            SolveStatus::PreconditionFailed { .. } => "precondition-failed",
        }
    }
}

impl<R: Real> fmt::Display for SolveStatus<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Result of one solver run.
#[derive(Clone, Debug)]
pub struct FixpointResult<R> {
    pub status: SolveStatus<R>,
    pub diagnostics: Option<IterationDiagnostics<R>>,
}

/// Verifies the fixpoint inequalities `unit ≤ hom(fu, u)` and
/// `unit ≤ hom(u, fu)`, returning both hom values.
pub fn verify_fixpoint<R: Real>(
    c: &QCategory<R>,
    f: &QFunctor<R>,
    u: &Object<R>,
) -> Result<(bool, QuantaleValue<R>, QuantaleValue<R>)> {
    let fu = f.apply(u)?;
    let forward = c.hom(&fu, u)?;
    let backward = c.hom(u, &fu)?;
    let q = c.quantale();
    let ok = q.is_above_unit(&forward)? && q.is_above_unit(&backward)?;
    Ok((ok, forward, backward))
}

/// Runs the Picard iteration from `x0` to horizon `h`.
///
/// Callers are expected to have run [`check_contraction`] (and
/// [`crate::control::check_control`]) first; the solver itself only enforces
/// the start precondition. The returned diagnostics are complete in every
/// status.
pub fn picard_solve<R: Real>(
    c: &Arc<QCategory<R>>,
    f: &QFunctor<R>,
    phi: &ControlFunction<R>,
    x0: &Object<R>,
    horizon: usize,
) -> Result<FixpointResult<R>> {
    if !f.is_endo() {
        return Err(Error::Incompatible("solver needs an endomap".into()));
    }
    if !c.quantale().same_structure(phi.quantale()) {
        return Err(Error::Incompatible(
            "control function lives on a different quantale".into(),
        ));
    }
    if horizon < 2 {
        return Err(Error::Horizon(horizon));
    }
    let q = c.quantale();

    let fx0 = f.apply(x0)?;
    if q.is_bottom(&c.hom(x0, &fx0)?)? || q.is_bottom(&c.hom(&fx0, x0)?)? {
        return Ok(FixpointResult {
            status: SolveStatus::PreconditionFailed {
                checked: vec![c.label(x0)],
            },
            diagnostics: None,
        });
    }

    // The orbit and the proof's diagnostic sequences.
    let mut orbit = Vec::with_capacity(horizon + 1);
    orbit.push(x0.clone());
    for n in 0..horizon {
        let next = f.apply(&orbit[n])?;
        orbit.push(next);
    }
    let mut forward = Vec::with_capacity(horizon);
    let mut backward = Vec::with_capacity(horizon);
    let mut stabilized_at = None;
    let unit = q.unit();
    for n in 0..horizon {
        let c_n = c.hom(&orbit[n], &orbit[n + 1])?;
        let a_n = c.hom(&orbit[n + 1], &orbit[n])?;
        if stabilized_at.is_none()
            && q.eq_values(&c_n, &unit)?
            && q.eq_values(&a_n, &unit)?
        {
            stabilized_at = Some(n);
        }
        forward.push(c_n);
        backward.push(a_n);
    }

    let seq = ObjectSequence::from_prefix(c.clone(), orbit.clone())?;
    let cauchy = cauchy_degree(&seq, horizon)?;
    let diagnostics = IterationDiagnostics {
        orbit,
        forward,
        backward,
        horizon,
        cauchy,
        stabilized_at,
    };

    let status = if c.search_space().is_some() {
        // Representability route (finite or hinted carriers): gate on the
        // stabilized Cauchy degree, then search for a representing object.
        let est = &diagnostics.cauchy;
        if !(q.is_above_unit(&est.value)? && est.stabilized) {
            SolveStatus::NotCauchy
        } else {
            let presheaf = crate::cauchy::phi_of(&seq, horizon)?;
            match is_representable(&presheaf)? {
                Some(u) => {
                    let (ok, hom_forward, hom_backward) = verify_fixpoint(c, f, &u)?;
                    if ok {
                        SolveStatus::FixpointFound {
                            object: u,
                            hom_forward,
                            hom_backward,
                            numerical_limit: false,
                        }
                    } else {
                        // Cannot happen on a stabilized estimate unless the
                        // carrier violates the contraction hypotheses.
                        SolveStatus::NotRepresentable
                    }
                }
                None => SolveStatus::NotRepresentable,
            }
        }
    } else {
        // Numerical route (rule-based carrier without a hint): the orbit must
        // stabilize, and the stabilized point is declared the limit.
        match diagnostics.stabilized_at {
            Some(_) => {
                let u = diagnostics.orbit[horizon].clone();
                let (ok, hom_forward, hom_backward) = verify_fixpoint(c, f, &u)?;
                if ok {
                    SolveStatus::FixpointFound {
                        object: u,
                        hom_forward,
                        hom_backward,
                        numerical_limit: true,
                    }
                } else {
                    SolveStatus::NotRepresentable
                }
            }
            None => SolveStatus::NotCauchy,
        }
    };

    Ok(FixpointResult {
        status,
        diagnostics: Some(diagnostics),
    })
}

/// The four possible hom configurations between two fixpoints of a
/// contraction, plus the error bucket when a hom lands strictly between
/// bottom and the unit (which contradicts the contraction premises).
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FixpointCase {
    Isomorphic,
    ForwardOnly,
    BackwardOnly,
    Disconnected,
    TheoryViolation,
}

impl fmt::Display for FixpointCase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            FixpointCase::Isomorphic => "isomorphic",
            FixpointCase::ForwardOnly => "forward-only",
            FixpointCase::BackwardOnly => "backward-only",
            FixpointCase::Disconnected => "disconnected",
            FixpointCase::TheoryViolation => "theory-violation",
        })
    }
}

/// Which uniqueness argument applies to the ambient category.
#[derive(Clone, Debug)]
pub struct UniquenessContext {
    /// All probe homs are non-bottom: any two fixpoints must be isomorphic.
    pub all_homs_non_bottom: bool,
    /// The category is symmetric: fixpoints are isomorphic or disconnected.
    pub symmetric: bool,
}

#[derive(Clone, Debug)]
pub struct ClassifyReport<R> {
    pub case: FixpointCase,
    pub hom_forward: QuantaleValue<R>,
    pub hom_backward: QuantaleValue<R>,
    pub context: UniquenessContext,
}

/// Classifies a verified pair of fixpoints by bucketing `hom(u, u')` and
/// `hom(u', u)` against `{bottom} ∪ ↑unit`.
pub fn classify_fixpoint_pair<R: Real>(
    c: &QCategory<R>,
    f: &QFunctor<R>,
    u: &Object<R>,
    u_prime: &Object<R>,
) -> Result<ClassifyReport<R>> {
    let (ok_u, _, _) = verify_fixpoint(c, f, u)?;
    let (ok_up, _, _) = verify_fixpoint(c, f, u_prime)?;
    if !ok_u || !ok_up {
        return Err(Error::InvalidArgument(
            "classification expects two verified fixpoints".into(),
        ));
    }
    let q = c.quantale();
    let fwd = c.hom(u, u_prime)?;
    let bwd = c.hom(u_prime, u)?;
    let bucket = |v: &QuantaleValue<R>| -> Result<Option<bool>> {
        // Some(true) = above unit, Some(false) = bottom, None = neither.
        if q.is_above_unit(v)? {
            Ok(Some(true))
        } else if q.is_bottom(v)? {
            Ok(Some(false))
        } else {
            Ok(None)
        }
    };
    let case = match (bucket(&fwd)?, bucket(&bwd)?) {
        (Some(true), Some(true)) => FixpointCase::Isomorphic,
        (Some(true), Some(false)) => FixpointCase::ForwardOnly,
        (Some(false), Some(true)) => FixpointCase::BackwardOnly,
        (Some(false), Some(false)) => FixpointCase::Disconnected,
        _ => FixpointCase::TheoryViolation,
    };
    Ok(ClassifyReport {
        case,
        hom_forward: fwd,
        hom_backward: bwd,
        context: UniquenessContext {
            all_homs_non_bottom: c.all_homs_non_bottom()?,
            symmetric: c.is_symmetric()?,
        },
    })
}
