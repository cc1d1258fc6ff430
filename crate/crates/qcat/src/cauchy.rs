//! Cauchy degree of object sequences and the induced presheaf pair.
//!
//! For a sequence `x = (x_n)` in a Q-category the Cauchy degree is
//!
//! ```text
//! C_x = ⋁_N ⋀_{n,m ≥ N} hom(x_n, x_m)
//! ```
//!
//! and `x` is Cauchy when `unit ≤ C_x`. The two tail presheaves
//!
//! ```text
//! φ_x(y) = ⋁_N ⋀_{n ≥ N} hom(y, x_n)      ψ_x(y) = ⋁_N ⋀_{n ≥ N} hom(x_n, y)
//! ```
//!
//! are always distributors, and `x` is Cauchy exactly when `φ_x ⊣ ψ_x`; the
//! equivalence check below evaluates both sides independently.
//!
//! # Truncation contract
//!
//! All `ℕ`-indexed sups and infs are computed to a finite horizon `h`: the
//! inner infima run over the window `[N, h]` and the outer supremum over
//! `N ≤ ⌊h/2⌋`, so every window spans at least half the horizon (letting `N`
//! run all the way to `h` would degenerate the last windows to single
//! points, which are bounded below by the unit for trivial reasons). A
//! result is *stabilized* when recomputing at horizon `⌊h/2⌋` gives the same
//! value within tolerance; positives without stabilization are provisional
//! and reports say so.

use crate::category::{Object, QCategory};
use crate::distributor::{check_adjunction, Distributor};
use crate::error::{Error, Result};
use crate::quantale::QuantaleValue;
use crate::real::Real;
use crate::report::{CheckReport, Scope};
use std::fmt;
use std::sync::Arc;

type IndexRule<R> = Arc<dyn Fn(usize) -> Object<R> + Send + Sync>;

#[derive(Clone)]
enum Generator<R> {
    Prefix(Vec<Object<R>>),
    Rule(IndexRule<R>),
}

/// A sequence of objects in a Q-category, given by an explicit finite prefix
/// or by an index rule.
#[derive(Clone)]
pub struct ObjectSequence<R> {
    category: Arc<QCategory<R>>,
    gen: Generator<R>,
}

impl<R: Real> fmt::Debug for ObjectSequence<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.gen {
            Generator::Prefix(p) => write!(f, "ObjectSequence(prefix of {})", p.len()),
            Generator::Rule(_) => write!(f, "ObjectSequence(rule)"),
        }
    }
}

impl<R: Real> ObjectSequence<R> {
    pub fn from_prefix(category: Arc<QCategory<R>>, prefix: Vec<Object<R>>) -> Result<Self> {
        if prefix.is_empty() {
            return Err(Error::InvalidArgument("sequence prefix is empty".into()));
        }
        Ok(ObjectSequence {
            category,
            gen: Generator::Prefix(prefix),
        })
    }

    pub fn from_rule(category: Arc<QCategory<R>>, rule: IndexRule<R>) -> Self {
        ObjectSequence {
            category,
            gen: Generator::Rule(rule),
        }
    }

    /// The constant sequence at one object.
    pub fn constant(category: Arc<QCategory<R>>, x: Object<R>) -> Self {
        ObjectSequence {
            category,
            gen: Generator::Rule(Arc::new(move |_| x.clone())),
        }
    }

    pub fn category(&self) -> &Arc<QCategory<R>> {
        &self.category
    }

    pub fn at(&self, n: usize) -> Object<R> {
        match &self.gen {
            Generator::Prefix(p) => p[n.min(p.len() - 1)].clone(),
            Generator::Rule(f) => f(n),
        }
    }

    /// Largest usable horizon: a prefix cannot be extended past its end.
    pub fn clamp_horizon(&self, h: usize) -> usize {
        match &self.gen {
            Generator::Prefix(p) => h.min(p.len() - 1),
            Generator::Rule(_) => h,
        }
    }
}

/// A horizon-truncated Cauchy degree.
#[derive(Clone, Debug)]
pub struct CauchyEstimate<R> {
    pub value: QuantaleValue<R>,
    pub horizon: usize,
    /// The value agreed with the half-horizon recomputation within tolerance.
    pub stabilized: bool,
    /// Inner window meets `⋀_{n,m ∈ [N, h]} hom(x_n, x_m)` for
    /// `N = 0..=⌊h/2⌋`; nondecreasing in `N`.
    pub window_meets: Vec<QuantaleValue<R>>,
}

/// Computes the truncated Cauchy degree `⋁_{N ≤ ⌊h/2⌋} ⋀_{n,m ∈ [N,h]}
/// hom(x_n, x_m)` together with the stabilization flag.
pub fn cauchy_degree<R: Real>(x: &ObjectSequence<R>, horizon: usize) -> Result<CauchyEstimate<R>> {
    let horizon = x.clamp_horizon(horizon);
    if horizon < 2 {
        return Err(Error::Horizon(horizon));
    }
    let full = window_meets(x, horizon)?;
    let q = x.category().quantale();
    let value = q.join(full.iter())?;
    let half = window_meets(x, horizon / 2)?;
    let half_value = q.join(half.iter())?;
    let stabilized = q.eq_values(&value, &half_value)?;
    Ok(CauchyEstimate {
        value,
        horizon,
        stabilized,
        window_meets: full,
    })
}

fn window_meets<R: Real>(
    x: &ObjectSequence<R>,
    horizon: usize,
) -> Result<Vec<QuantaleValue<R>>> {
    let c = x.category();
    let q = c.quantale();
    let cap = horizon / 2;
    let objs: Vec<Object<R>> = (0..=horizon).map(|n| x.at(n)).collect();
    // Suffix recursion: the meet over [N, h]² extends the meet over
    // [N+1, h]² by the row and column through index N.
    let mut acc = q.top();
    let mut meets: Vec<QuantaleValue<R>> = vec![q.top(); cap + 1];
    for n in (0..=horizon).rev() {
        for m in n..=horizon {
            acc = q.meet2(&acc, &c.hom(&objs[n], &objs[m])?)?;
            if m > n {
                acc = q.meet2(&acc, &c.hom(&objs[m], &objs[n])?)?;
            }
        }
        if n <= cap {
            meets[n] = acc.clone();
        }
    }
    Ok(meets)
}

/// `unit ≤ C_x` on the truncated estimate. Positives that did not stabilize
/// are provisional; callers (and reports) must treat them as evidence only.
pub fn is_cauchy<R: Real>(x: &ObjectSequence<R>, horizon: usize) -> Result<(bool, CauchyEstimate<R>)> {
    let est = cauchy_degree(x, horizon)?;
    let cauchy = x.category().quantale().is_above_unit(&est.value)?;
    Ok((cauchy, est))
}

fn tail_presheaf<R: Real>(
    x: &ObjectSequence<R>,
    horizon: usize,
    forward: bool,
) -> Result<Distributor<R>> {
    let horizon = x.clamp_horizon(horizon);
    if horizon < 2 {
        return Err(Error::Horizon(horizon));
    }
    let c = x.category().clone();
    let q = c.quantale().clone();
    let unit_cat = Arc::new(QCategory::unit_category(q.clone()));
    let cap = horizon / 2;
    let objs: Vec<Object<R>> = (0..=horizon).map(|n| x.at(n)).collect();
    let entry = |y: &Object<R>| -> Result<QuantaleValue<R>> {
        // ⋁_{N ≤ cap} ⋀_{n ∈ [N, h]} hom(y, x_n)  (or the dual orientation),
        // by the same suffix recursion as the Cauchy windows.
        let mut acc = q.top();
        let mut best = q.bottom();
        for n in (0..=horizon).rev() {
            let hom = if forward {
                c.hom(y, &objs[n])?
            } else {
                c.hom(&objs[n], y)?
            };
            acc = q.meet2(&acc, &hom)?;
            if n <= cap {
                best = q.join2(&best, &acc)?;
            }
        }
        Ok(best)
    };
    if forward {
        Distributor::from_rule(unit_cat, c.clone(), |y, _| entry(y))
    } else {
        Distributor::from_rule(c.clone(), unit_cat, |_, y| entry(y))
    }
}

/// The tail presheaf `φ_x: y ↦ ⋁_N ⋀_{n ≥ N} hom(y, x_n)`, tabulated over
/// the carrier's search space.
pub fn phi_of<R: Real>(x: &ObjectSequence<R>, horizon: usize) -> Result<Distributor<R>> {
    tail_presheaf(x, horizon, true)
}

/// The tail copresheaf `ψ_x: y ↦ ⋁_N ⋀_{n ≥ N} hom(x_n, y)`.
pub fn psi_of<R: Real>(x: &ObjectSequence<R>, horizon: usize) -> Result<Distributor<R>> {
    tail_presheaf(x, horizon, false)
}

/// Outcome of evaluating both sides of the Cauchy/adjunction equivalence.
#[derive(Clone, Debug)]
pub struct EquivalenceOutcome<R> {
    pub cauchy: bool,
    pub adjoint: bool,
    pub estimate: CauchyEstimate<R>,
    pub report: CheckReport,
}

/// Evaluates `unit ≤ C_x` and `φ_x ⊣ ψ_x` independently and reports whether
/// they agree. Disagreement on a stabilized estimate is flagged as a library
/// bug; disagreement on a provisional estimate as a truncation artifact.
pub fn check_cauchy_adjoint_equivalence<R: Real>(
    x: &ObjectSequence<R>,
    horizon: usize,
) -> Result<EquivalenceOutcome<R>> {
    let (cauchy, estimate) = is_cauchy(x, horizon)?;
    let phi = phi_of(x, horizon)?;
    let psi = psi_of(x, horizon)?;
    let adjunction = check_adjunction(&phi, &psi)?;
    let adjoint = adjunction.passed();
    let mut report = CheckReport::new(
        "cauchy-adjoint-equivalence",
        Scope::Sampled {
            cases: x.clamp_horizon(horizon) + 1,
        },
    );
    report.note(format!(
        "horizon {} ({}stabilized)",
        estimate.horizon,
        if estimate.stabilized { "" } else { "not " }
    ));
    if cauchy != adjoint {
        let diagnosis = if estimate.stabilized {
            "library bug: stabilized Cauchy estimate disagrees with the adjunction test"
        } else {
            "provisional estimate disagrees with the adjunction test; raise the horizon"
        };
        report.violate(
            "equivalence",
            format!(
                "{diagnosis} (cauchy = {cauchy}, adjoint = {adjoint}, C = {})",
                estimate.value
            ),
        );
    }
    Ok(EquivalenceOutcome {
        cauchy,
        adjoint,
        estimate,
        report,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quantale::Quantale;

    type V = QuantaleValue<f64>;

    fn law(x: f64) -> V {
        V::Lawvere(x)
    }

    fn two_point_metric() -> Arc<QCategory<f64>> {
        Arc::new(
            QCategory::finite_unlabeled(
                Quantale::lawvere(),
                vec![vec![law(0.0), law(1.0)], vec![law(1.0), law(0.0)]],
            )
            .unwrap(),
        )
    }

    fn real_line() -> Arc<QCategory<f64>> {
        let q = Quantale::<f64>::lawvere();
        Arc::new(QCategory::rule(
            q,
            "real-line",
            Arc::new(|x: &Object<f64>, y: &Object<f64>| match (x, y) {
                (Object::Real(a), Object::Real(b)) => V::Lawvere((a - b).abs()),
                _ => V::Lawvere(f64::INFINITY),
            }),
            vec![Object::Real(0.0), Object::Real(1.0)],
            Some(vec![Object::Real(0.0), Object::Real(1.0)]),
        ))
    }

    #[test]
    fn horizon_must_be_at_least_two() {
        let c = two_point_metric();
        let x = ObjectSequence::constant(c, Object::Idx(0));
        assert!(matches!(cauchy_degree(&x, 1), Err(Error::Horizon(_))));
    }

    #[test]
    fn constant_sequence_is_cauchy() {
        let c = two_point_metric();
        let x = ObjectSequence::constant(c.clone(), Object::Idx(0));
        let (cauchy, est) = is_cauchy(&x, 16).unwrap();
        assert!(cauchy);
        assert!(est.stabilized);
        assert!(c.quantale().eq_values(&est.value, &law(0.0)).unwrap());
    }

    #[test]
    fn geometric_sequence_on_the_line_is_cauchy() {
        let c = real_line();
        let x = ObjectSequence::from_rule(
            c.clone(),
            Arc::new(|n| Object::Real(0.5f64.powi(n as i32))),
        );
        let (cauchy, est) = is_cauchy(&x, 64).unwrap();
        assert!(cauchy, "C = {}", est.value);
        // Window diameters shrink geometrically toward the unit distance 0.
        let v = est.value.as_real().unwrap();
        assert!(v <= 1e-9);
    }

    #[test]
    fn alternating_sequence_is_not_cauchy() {
        let c = two_point_metric();
        let x = ObjectSequence::from_rule(c.clone(), Arc::new(|n| Object::Idx(n % 2)));
        let (cauchy, est) = is_cauchy(&x, 32).unwrap();
        assert!(!cauchy);
        assert!(est.stabilized);
        // Every window contains both points, so the degree is the full
        // cross-distance 1.
        assert!(c.quantale().eq_values(&est.value, &law(1.0)).unwrap());
    }

    #[test]
    fn window_meets_are_nondecreasing() {
        let c = two_point_metric();
        let x = ObjectSequence::from_prefix(
            c.clone(),
            vec![
                Object::Idx(0),
                Object::Idx(1),
                Object::Idx(0),
                Object::Idx(0),
                Object::Idx(0),
                Object::Idx(0),
                Object::Idx(0),
                Object::Idx(0),
                Object::Idx(0),
            ],
        )
        .unwrap();
        let est = cauchy_degree(&x, 8).unwrap();
        let q = c.quantale();
        for w in est.window_meets.windows(2) {
            assert!(q.leq(&w[0], &w[1]).unwrap());
        }
    }

    #[test]
    fn constant_sequence_presheaves_are_representable_homs() {
        let c = two_point_metric();
        let a = Object::Idx(0);
        let x = ObjectSequence::constant(c.clone(), a.clone());
        let phi = phi_of(&x, 8).unwrap();
        let psi = psi_of(&x, 8).unwrap();
        let q = c.quantale();
        for (r, y) in phi.rows().iter().enumerate() {
            assert!(q
                .eq_values(phi.at(r), &c.hom(y, &a).unwrap())
                .unwrap());
            assert!(q
                .eq_values(psi.entry(0, r), &c.hom(&a, y).unwrap())
                .unwrap());
        }
        assert!(phi.check_action().unwrap().passed());
        assert!(psi.check_action().unwrap().passed());
        assert_eq!(
            crate::distributor::is_representable(&phi).unwrap(),
            Some(a)
        );
    }

    #[test]
    fn geometric_presheaf_on_hinted_line() {
        let c = real_line();
        let x = ObjectSequence::from_rule(
            c.clone(),
            Arc::new(|n| Object::Real(0.5f64.powi(n as i32))),
        );
        let phi = phi_of(&x, 64).unwrap();
        // Hint enumerates {0, 1}: limit distances are 0 and 1.
        let v0 = phi.at(0).as_real().unwrap();
        let v1 = phi.at(1).as_real().unwrap();
        assert!(v0.abs() <= 1e-9, "phi(0) = {v0}");
        assert!((v1 - 1.0).abs() <= 1e-9, "phi(1) = {v1}");
    }

    #[test]
    fn boolean_eventually_constant_presheaf_is_the_downset() {
        // Chain a ≤ b; sequence eventually constant at b.
        let t = || V::Boolean(true);
        let f_ = || V::Boolean(false);
        let q = Quantale::<f64>::boolean();
        let c = Arc::new(
            QCategory::finite_unlabeled(q, vec![vec![t(), t()], vec![f_(), t()]]).unwrap(),
        );
        let x = ObjectSequence::from_prefix(
            c.clone(),
            vec![
                Object::Idx(0),
                Object::Idx(1),
                Object::Idx(1),
                Object::Idx(1),
                Object::Idx(1),
            ],
        )
        .unwrap();
        let phi = phi_of(&x, 4).unwrap();
        assert_eq!(phi.at(0), &V::Boolean(true)); // a ≤ b
        assert_eq!(phi.at(1), &V::Boolean(true)); // b ≤ b
        let psi = psi_of(&x, 4).unwrap();
        assert_eq!(psi.entry(0, 0), &V::Boolean(false)); // b ≤ a fails
    }

    #[test]
    fn equivalence_agrees_on_fixtures() {
        let c = two_point_metric();
        let constant = ObjectSequence::constant(c.clone(), Object::Idx(1));
        let out = check_cauchy_adjoint_equivalence(&constant, 16).unwrap();
        assert!(out.cauchy && out.adjoint && out.report.passed());

        let alternating = ObjectSequence::from_rule(c.clone(), Arc::new(|n| Object::Idx(n % 2)));
        let out = check_cauchy_adjoint_equivalence(&alternating, 16).unwrap();
        assert!(!out.cauchy && !out.adjoint && out.report.passed());

        // Geometric sequence snapped to a finite net carrier.
        let q = Quantale::<f64>::lawvere();
        let net: Vec<f64> = (0..=6).map(|k| 0.5f64.powi(k)).collect();
        let n = net.len();
        let hom: Vec<Vec<V>> = (0..n)
            .map(|i| (0..n).map(|j| law((net[i] - net[j]).abs())).collect())
            .collect();
        let cat = Arc::new(QCategory::finite_unlabeled(q, hom).unwrap());
        let x = ObjectSequence::from_rule(cat, Arc::new(move |k| Object::Idx(k.min(6))));
        let out = check_cauchy_adjoint_equivalence(&x, 32).unwrap();
        assert!(out.cauchy && out.adjoint && out.report.passed());
    }
}
