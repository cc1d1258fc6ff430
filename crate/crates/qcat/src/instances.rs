//! Ready-made spaces, contractions, and control functions: ordered sets,
//! metric spaces, fuzzy preorders, probabilistic metric spaces, the Banach
//! and Boyd-Wong controls, and the distance-distribution control functions
//! (including the finitary sub-carrier scan for the Banach control).

use crate::category::{Object, QCategory, QFunctor};
use crate::control::{ControlFunction, FixpointPolicy, SemicontinuityCertificate};
use crate::error::{Error, Result};
use crate::quantale::{Quantale, QuantaleValue, TNorm};
use crate::real::{r64, Real};
use crate::report::{CheckReport, Scope};
use crate::step::StepDistribution;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::sync::Arc;

/// Ordered set (preorder candidate) as a Boolean-enriched category. The
/// relation is *not* validated here; run [`crate::category::check_category`]
/// to test reflexivity and transitivity.
pub fn make_ordered_set<R: Real>(relation: &[Vec<bool>]) -> Result<QCategory<R>> {
    let hom = relation
        .iter()
        .map(|row| row.iter().map(|b| QuantaleValue::Boolean(*b)).collect())
        .collect();
    QCategory::finite_unlabeled(Quantale::boolean(), hom)
}

/// Generalized metric space from a distance matrix (entries in `[0, ∞]`,
/// asymmetry allowed). Axioms are checked separately.
pub fn make_metric_space<R: Real>(distances: &[Vec<R>]) -> Result<QCategory<R>> {
    for row in distances {
        for d in row {
            if d.is_nan() || *d < R::zero() {
                return Err(Error::InvalidArgument(format!(
                    "distances must be in [0, ∞], got {d}"
                )));
            }
        }
    }
    let hom = distances
        .iter()
        .map(|row| row.iter().map(|d| QuantaleValue::Lawvere(*d)).collect())
        .collect();
    QCategory::finite_unlabeled(Quantale::lawvere(), hom)
}

/// Fuzzy preorder candidate from a `[0, 1]`-valued matrix over a t-norm.
pub fn make_fuzzy_order<R: Real>(degrees: &[Vec<R>], tnorm: TNorm<R>) -> Result<QCategory<R>> {
    for row in degrees {
        for d in row {
            if d.is_nan() || *d < R::zero() || *d > R::one() {
                return Err(Error::InvalidArgument(format!(
                    "fuzzy degrees must be in [0, 1], got {d}"
                )));
            }
        }
    }
    let hom = degrees
        .iter()
        .map(|row| row.iter().map(|d| QuantaleValue::UnitInterval(*d)).collect())
        .collect();
    QCategory::finite_unlabeled(Quantale::unit_interval(tnorm), hom)
}

/// Probabilistic metric space from a matrix of distance distributions over a
/// left-continuous t-norm. The entries themselves are validated at
/// construction of each [`StepDistribution`] (left-continuity is built into
/// the representation; malformed breakpoint/value lists are rejected there).
pub fn make_pm_space<R: Real>(
    distributions: Vec<Vec<StepDistribution<R>>>,
    tnorm: TNorm<R>,
) -> Result<QCategory<R>> {
    let hom = distributions
        .into_iter()
        .map(|row| row.into_iter().map(QuantaleValue::Delta).collect())
        .collect();
    QCategory::finite_unlabeled(Quantale::delta(tnorm), hom)
}

/// The standard embedding of a finite metric space into a probabilistic one:
/// `d(x, y, t) = 1` iff `t > d₀(x, y)`. The composition axiom reduces to the
/// triangle inequality of `d₀`.
pub fn pm_from_metric<R: Real>(metric: &QCategory<R>, tnorm: TNorm<R>) -> Result<QCategory<R>> {
    let objs = metric
        .objects()
        .ok_or_else(|| Error::Unsupported("embedding needs a finite metric space".into()))?;
    let mut rows = Vec::with_capacity(objs.len());
    for x in &objs {
        let mut row = Vec::with_capacity(objs.len());
        for y in &objs {
            let d = metric
                .hom(x, y)?
                .as_real()
                .ok_or_else(|| Error::Incompatible("embedding needs Lawvere homs".into()))?;
            row.push(StepDistribution::step_at(d)?);
        }
        rows.push(row);
    }
    make_pm_space(rows, tnorm)
}

/// The real line (or an interval of it) as a rule-based metric carrier.
pub fn real_line_metric<R: Real>(
    name: impl Into<String>,
    probe: Vec<R>,
    hint: Option<Vec<R>>,
) -> QCategory<R> {
    QCategory::rule(
        Quantale::lawvere(),
        name,
        Arc::new(|x: &Object<R>, y: &Object<R>| match (x, y) {
            (Object::Real(a), Object::Real(b)) => QuantaleValue::Lawvere((*a - *b).abs()),
            _ => QuantaleValue::Lawvere(R::infinity()),
        }),
        probe.into_iter().map(Object::Real).collect(),
        hint.map(|h| h.into_iter().map(Object::Real).collect()),
    )
}

/// Banach control on the metric instance: `φ(t) = k·t` for `0 < k < 1`
/// (with `∞` fixed).
pub fn banach_control<R: Real>(k: R) -> Result<ControlFunction<R>> {
    if !(k > R::zero() && k < R::one()) {
        return Err(Error::InvalidArgument(format!(
            "Banach modulus must satisfy 0 < k < 1, got {k}"
        )));
    }
    Ok(ControlFunction::new(
        Quantale::lawvere(),
        format!("banach({k})"),
        Arc::new(move |t: &QuantaleValue<R>| match t {
            QuantaleValue::Lawvere(x) => QuantaleValue::Lawvere(*x * k),
            other => other.clone(),
        }),
        FixpointPolicy::BottomAndAboveUnit,
        SemicontinuityCertificate::Analytic,
    ))
}

/// Boyd-Wong control from a numeric rule `φ(t)` on `(0, ∞)` with
/// `φ(0) = 0 < φ(t) < t` and `φ(∞) = ∞`. The rule is wrapped into the
/// reversed-order convention of the metric quantale.
pub fn boyd_wong_control<R: Real>(
    name: impl Into<String>,
    rule: impl Fn(R) -> R + Send + Sync + 'static,
) -> ControlFunction<R> {
    ControlFunction::new(
        Quantale::lawvere(),
        name,
        Arc::new(move |t: &QuantaleValue<R>| match t {
            QuantaleValue::Lawvere(x) => {
                if x.is_infinite() {
                    QuantaleValue::Lawvere(R::infinity())
                } else if *x == R::zero() {
                    QuantaleValue::Lawvere(R::zero())
                } else {
                    QuantaleValue::Lawvere(rule(*x))
                }
            }
            other => other.clone(),
        }),
        FixpointPolicy::BottomAndAboveUnit,
        SemicontinuityCertificate::Analytic,
    )
}

/// The canonical nonlinear Boyd-Wong control `φ(t) = t / (1 + t)`.
pub fn boyd_wong_reciprocal_control<R: Real>() -> ControlFunction<R> {
    boyd_wong_control("boyd-wong(t/(1+t))", |t: R| t / (R::one() + t))
}

/// Boyd-Wong control interpolated piecewise-linearly through sample points
/// `(t, φ(t))` with `0 < t` strictly increasing. Below the first point the
/// segment from the origin is used; beyond the last point the ray with slope
/// `φ(t_max)/t_max`.
pub fn boyd_wong_table_control<R: Real>(points: Vec<(R, R)>) -> Result<ControlFunction<R>> {
    if points.is_empty() {
        return Err(Error::InvalidArgument("table control needs points".into()));
    }
    for (i, (t, v)) in points.iter().enumerate() {
        if !t.is_finite() || !v.is_finite() || *t <= R::zero() || *v < R::zero() {
            return Err(Error::InvalidArgument(format!(
                "table points must be finite with t > 0, got ({t}, {v})"
            )));
        }
        if i > 0 && points[i - 1].0 >= *t {
            return Err(Error::InvalidArgument(
                "table abscissae must be strictly increasing".into(),
            ));
        }
    }
    let rule = move |x: R| -> R {
        let (t_max, v_max) = *points.last().unwrap();
        if x >= t_max {
            return v_max / t_max * x;
        }
        let mut prev = (R::zero(), R::zero());
        for (t, v) in &points {
            if x <= *t {
                let (t0, v0) = prev;
                let span = *t - t0;
                let w = (x - t0) / span;
                return v0 + (*v - v0) * w;
            }
            prev = (*t, *v);
        }
        v_max
    };
    Ok(boyd_wong_control("boyd-wong-table", rule))
}

/// Fuzzy control `φ(t) = √t` on the unit interval (fixpoints 0 and 1 only).
pub fn fuzzy_root_control<R: Real>(tnorm: TNorm<R>) -> ControlFunction<R> {
    ControlFunction::new(
        Quantale::unit_interval(tnorm),
        "fuzzy-root",
        Arc::new(|t: &QuantaleValue<R>| match t {
            QuantaleValue::UnitInterval(x) => QuantaleValue::UnitInterval(x.sqrt()),
            other => other.clone(),
        }),
        FixpointPolicy::BottomAndAboveUnit,
        SemicontinuityCertificate::Analytic,
    )
}

/// The affine control on distance distributions:
/// `φ(u)(t) = (u(t) + 1)/2` for `t > 0` and `φ(u)(0) = 0`.
///
/// Note the boundary behaviour follows this displayed formula: the zero
/// distribution is *not* fixed (`φ(0)` is the constant-½ distribution), and
/// `φ(e) = e`.
pub fn delta_affine_control<R: Real>(tnorm: TNorm<R>) -> ControlFunction<R> {
    ControlFunction::new(
        Quantale::delta(tnorm),
        "delta-affine",
        Arc::new(|t: &QuantaleValue<R>| match t {
            QuantaleValue::Delta(u) => {
                let half = r64::<R>(0.5);
                let mut jumps = vec![(R::zero(), (u.value_after(R::zero()) + R::one()) * half)];
                for (p, v) in u.breakpoints().iter().zip(u.plateau_values()) {
                    if *p > R::zero() {
                        jumps.push((*p, (*v + R::one()) * half));
                    }
                }
                QuantaleValue::Delta(StepDistribution::from_jumps(jumps))
            }
            other => other.clone(),
        }),
        FixpointPolicy::AboveUnitOnly,
        SemicontinuityCertificate::Analytic,
    )
}

/// The Banach control on distance distributions: `φ(u)(t) = u(K·t)` for
/// `K > 1`, i.e. each jump position divided by `K`.
///
/// On the full carrier this is *not* a valid control function: the almost
/// constant distributions (`u ≡ u₀` on `(0, ∞]` with `0 < u₀ < 1`) are
/// fixpoints that are neither bottom nor above the unit. Restricted to the
/// finitary sub-carrier the dichotomy holds; see
/// [`delta_plus_fixpoint_scan`].
pub fn delta_banach_control<R: Real>(tnorm: TNorm<R>, k: R) -> Result<ControlFunction<R>> {
    if !(k > R::one()) || !k.is_finite() {
        return Err(Error::InvalidArgument(format!(
            "distribution Banach control needs 1 < K < ∞, got {k}"
        )));
    }
    Ok(ControlFunction::new(
        Quantale::delta(tnorm),
        format!("delta-banach({k})"),
        Arc::new(move |t: &QuantaleValue<R>| match t {
            QuantaleValue::Delta(u) => QuantaleValue::Delta(
                u.precompose_scale(k)
                    .expect("positive finite scale validated at construction"),
            ),
            other => other.clone(),
        }),
        FixpointPolicy::BottomAndAboveUnit,
        SemicontinuityCertificate::Analytic,
    ))
}

/// The almost-constant distribution `u ≡ v` on `(0, ∞]`.
pub fn almost_constant<R: Real>(v: R) -> StepDistribution<R> {
    StepDistribution::from_jumps(vec![(R::zero(), v)])
}

/// Scans candidate distributions in the finitary sub-carrier
/// (`u(∞) = 1`, or `u = 0`) for fixpoints of `phi`: any fixpoint other than
/// the zero distribution or the unit `e` is reported as a violation.
/// Candidates outside the sub-carrier are skipped (and counted in the
/// notes).
pub fn delta_plus_fixpoint_scan<R: Real>(
    phi: &ControlFunction<R>,
    candidates: &[StepDistribution<R>],
) -> Result<CheckReport> {
    let q = phi.quantale();
    if q.tag() != crate::quantale::InstanceTag::Delta {
        return Err(Error::Incompatible(
            "the finitary scan needs a distribution control".into(),
        ));
    }
    let tol = q.tolerance();
    let mut report = CheckReport::new(
        format!("finitary-fixpoint-scan({})", phi.name()),
        Scope::Sampled {
            cases: candidates.len(),
        },
    );
    let mut skipped = 0usize;
    let mut fixpoints = 0usize;
    for u in candidates {
        if !u.is_finitary(tol) {
            skipped += 1;
            continue;
        }
        let phi_u = phi.apply(&QuantaleValue::Delta(u.clone()))?;
        let QuantaleValue::Delta(phi_u) = phi_u else {
            unreachable!("delta control returns delta values");
        };
        if phi_u.approx_eq(u, tol, tol) {
            fixpoints += 1;
            let is_zero = u.approx_eq(&StepDistribution::zero(), tol, tol);
            let is_unit = u.approx_eq(&StepDistribution::unit(), tol, tol);
            if !is_zero && !is_unit {
                report.violate(
                    "forbidden-fixpoint",
                    format!("{u} is a fixpoint but is neither 0 nor e"),
                );
            }
        }
    }
    report.note(format!(
        "{} candidates, {} outside the finitary sub-carrier, {} fixpoints",
        candidates.len(),
        skipped,
        fixpoints
    ));
    Ok(report)
}

/// Seeded random family of finitary distributions (`u(∞) = 1`), with the
/// zero distribution and the unit mixed in.
pub fn random_finitary_family<R: Real>(seed: u64, count: usize) -> Vec<StepDistribution<R>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut family = vec![StepDistribution::zero(), StepDistribution::unit()];
    while family.len() < count {
        let jumps = rng.gen_range(1..=4usize);
        let mut positions: Vec<u32> = (0..jumps).map(|_| rng.gen_range(1..=1000u32)).collect();
        positions.sort_unstable();
        positions.dedup();
        let mut levels: Vec<u32> = (0..positions.len())
            .map(|_| rng.gen_range(1..=19u32))
            .collect();
        levels.sort_unstable();
        levels.dedup();
        *levels.last_mut().unwrap() = 20;
        let pairs = positions
            .iter()
            .zip(&levels)
            .map(|(p, v)| (r64::<R>(*p as f64 * 0.01), r64::<R>(*v as f64 * 0.05)))
            .collect();
        family.push(StepDistribution::from_jumps(pairs));
    }
    family
}

/// Enumerates all self-maps of the Boolean carrier and returns the valid
/// control functions among them (exactly the identity and the constant-top
/// map).
pub fn boolean_control_candidates<R: Real>() -> Vec<(bool, bool, ControlFunction<R>)> {
    let mut valid = Vec::new();
    for &(f0, f1) in &[(false, false), (false, true), (true, false), (true, true)] {
        let phi = ControlFunction::new(
            Quantale::boolean(),
            format!("boolean({},{})", u8::from(f0), u8::from(f1)),
            Arc::new(move |t: &QuantaleValue<R>| match t {
                QuantaleValue::Boolean(b) => {
                    QuantaleValue::Boolean(if *b { f1 } else { f0 })
                }
                other => other.clone(),
            }),
            FixpointPolicy::BottomAndAboveUnit,
            SemicontinuityCertificate::Analytic,
        );
        let sample = [QuantaleValue::Boolean(false), QuantaleValue::Boolean(true)];
        if crate::control::check_control(&phi, &sample)
            .map(|r| r.passed())
            .unwrap_or(false)
        {
            valid.push((f0, f1, phi));
        }
    }
    valid
}

/// A named end-to-end fixture: a category, optionally an endomap with its
/// control and a suggested start, and a description of the expected outcome.
#[derive(Clone)]
pub struct NamedFixture<R> {
    pub name: &'static str,
    pub description: &'static str,
    pub category: Arc<QCategory<R>>,
    pub endomap: Option<QFunctor<R>>,
    pub control: Option<ControlFunction<R>>,
    pub start: Option<Object<R>>,
    pub expected: &'static str,
}

/// The Banach iteration `f(x) = x/2 + 1` on the real line.
pub fn banach_line_fixture<R: Real>() -> NamedFixture<R> {
    let probe: Vec<R> = [-1.0, 0.0, 0.5, 1.0, 2.0, 3.0]
        .iter()
        .map(|x| r64(*x))
        .collect();
    let category = Arc::new(real_line_metric("real-line", probe, None));
    let half = r64::<R>(0.5);
    let one = R::one();
    let f = QFunctor::rule(
        category.clone(),
        category.clone(),
        Arc::new(move |x: &Object<R>| match x {
            Object::Real(v) => Object::Real(*v * half + one),
            other => other.clone(),
        }),
    )
    .expect("endomap over one carrier");
    NamedFixture {
        name: "banach",
        description: "f(x) = x/2 + 1 on the real line with control t/2",
        category,
        endomap: Some(f),
        control: Some(banach_control(half).expect("0 < 1/2 < 1")),
        start: Some(Object::Real(R::zero())),
        expected: "numerical fixpoint 2.0 within 1e-6",
    }
}

/// A halving map on `[0, 1]` measured against the nonlinear control
/// `t/(1+t)` (which it satisfies because the diameter is 1).
pub fn boyd_wong_fixture<R: Real>() -> NamedFixture<R> {
    let probe: Vec<R> = (0..=10).map(|k| r64(k as f64 / 10.0)).collect();
    let category = Arc::new(real_line_metric("unit-interval-line", probe, None));
    let half = r64::<R>(0.5);
    let f = QFunctor::rule(
        category.clone(),
        category.clone(),
        Arc::new(move |x: &Object<R>| match x {
            Object::Real(v) => Object::Real(*v * half),
            other => other.clone(),
        }),
    )
    .expect("endomap over one carrier");
    NamedFixture {
        name: "boyd-wong",
        description: "f(x) = x/2 on [0, 1] with the nonlinear control t/(1+t)",
        category,
        endomap: Some(f),
        control: Some(boyd_wong_reciprocal_control()),
        start: Some(Object::Real(R::one())),
        expected: "numerical fixpoint 0.0 within 1e-6",
    }
}

fn geometric_grid_matrix<R: Real>() -> Vec<Vec<R>> {
    let pts: [f64; 4] = [0.0, 1.0, 3.0, 7.0];
    (0..4)
        .map(|i| (0..4).map(|j| r64::<R>((pts[i] - pts[j]).abs())).collect())
        .collect()
}

/// Finite geometric grid `{0, 1, 3, 7}` with the collapse-toward-0 table, a
/// genuine `t/2`-contraction on a finite carrier.
pub fn metric_grid_fixture<R: Real>() -> NamedFixture<R> {
    let category = Arc::new(
        make_metric_space(&geometric_grid_matrix::<R>()).expect("valid distance matrix"),
    );
    let f = QFunctor::endo_table(category.clone(), vec![0, 0, 1, 2]).expect("valid table");
    NamedFixture {
        name: "metric-grid",
        description: "finite geometric grid with a halving collapse",
        category,
        endomap: Some(f),
        control: Some(banach_control(r64(0.5)).expect("0 < 1/2 < 1")),
        start: Some(Object::Idx(3)),
        expected: "fixpoint #0 by representability",
    }
}

/// Two copies of the geometric grid at mutual distance ∞: a symmetric space
/// whose two fixpoints are disconnected.
pub fn two_component_fixture<R: Real>() -> NamedFixture<R> {
    let base = geometric_grid_matrix::<R>();
    let n = base.len();
    let matrix: Vec<Vec<R>> = (0..2 * n)
        .map(|i| {
            (0..2 * n)
                .map(|j| {
                    if (i < n) == (j < n) {
                        base[i % n][j % n]
                    } else {
                        R::infinity()
                    }
                })
                .collect()
        })
        .collect();
    let category = Arc::new(make_metric_space(&matrix).expect("valid distance matrix"));
    let f = QFunctor::endo_table(category.clone(), vec![0, 0, 1, 2, 4, 4, 5, 6])
        .expect("valid table");
    NamedFixture {
        name: "two-component",
        description: "two geometric grids at mutual distance ∞",
        category,
        endomap: Some(f),
        control: Some(banach_control(r64(0.5)).expect("0 < 1/2 < 1")),
        start: Some(Object::Idx(3)),
        expected: "one fixpoint per component, classified disconnected",
    }
}

/// Three-point fuzzy preorder over the product t-norm with a collapse toward
/// the top object, contracting against `φ(t) = √t`.
pub fn fuzzy_three_fixture<R: Real>() -> NamedFixture<R> {
    let theta: f64 = 0.8;
    let degrees: Vec<Vec<R>> = vec![
        vec![r64(1.0), r64(theta.powi(4)), r64(theta.powi(6))],
        vec![r64(theta.powi(4)), r64(1.0), r64(theta.powi(2))],
        vec![r64(theta.powi(6)), r64(theta.powi(2)), r64(1.0)],
    ];
    let category = Arc::new(
        make_fuzzy_order(&degrees, TNorm::Product).expect("degrees in range"),
    );
    let f = QFunctor::endo_table(category.clone(), vec![1, 2, 2]).expect("valid table");
    NamedFixture {
        name: "fuzzy",
        description: "three-point fuzzy preorder with a √t-controlled collapse",
        category,
        endomap: Some(f),
        control: Some(fuzzy_root_control(TNorm::Product)),
        start: Some(Object::Idx(0)),
        expected: "fixpoint #2 by representability",
    }
}

/// The geometric grid embedded into a probabilistic metric space, solved
/// with the distribution Banach control `K = 2`.
pub fn pm_embedded_fixture<R: Real>() -> NamedFixture<R> {
    let metric = make_metric_space(&geometric_grid_matrix::<R>()).expect("valid distance matrix");
    let category = Arc::new(pm_from_metric(&metric, TNorm::Minimum).expect("embedding"));
    let f = QFunctor::endo_table(category.clone(), vec![0, 0, 1, 2]).expect("valid table");
    NamedFixture {
        name: "pm-embed",
        description: "geometric grid embedded as crisp distance distributions",
        category,
        endomap: Some(f),
        control: Some(delta_banach_control(TNorm::Minimum, r64(2.0)).expect("K = 2")),
        start: Some(Object::Idx(3)),
        expected: "fixpoint #0, matching the plain metric solve",
    }
}

impl<R: Real> std::fmt::Debug for NamedFixture<R> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "NamedFixture({}: {})", self.name, self.description)
    }
}

/// All solvable fixtures, in a stable order.
pub fn fixtures<R: Real>() -> Vec<NamedFixture<R>> {
    vec![
        banach_line_fixture(),
        boyd_wong_fixture(),
        metric_grid_fixture(),
        two_component_fixture(),
        fuzzy_three_fixture(),
        pm_embedded_fixture(),
    ]
}
