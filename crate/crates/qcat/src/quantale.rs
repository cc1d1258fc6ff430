//! Quantales at desk scale: a complete lattice with a monoid product that
//! distributes over joins.
//!
//! Four instances are provided:
//!
//! * **Boolean** `({0,1}, ∨, ∧, 1)` — categories enriched here are ordered sets;
//! * **Lawvere** `([0,∞], ⋀, +, 0)` — the lattice order is the *converse* of
//!   the numeric order (join = numeric infimum, bottom = ∞, unit = top = 0);
//!   categories are generalized metric spaces;
//! * **UnitInterval** `([0,1], ⋁, ∗, 1)` for a left-continuous t-norm `∗` —
//!   categories are fuzzy preorders;
//! * **Delta** — distance distributions ([`StepDistribution`]) under pointwise
//!   suprema and sup-convolution; categories are probabilistic metric spaces.
//!
//! All four are commutative and integral (the unit is the top element).
//! Comparisons on real payloads are tolerance-aware; the tolerance travels
//! with the [`Quantale`] descriptor.

use crate::error::{Error, Result};
use crate::real::{r64, Real};
use crate::report::{CheckReport, Scope, Violation};
use crate::step::StepDistribution;
use std::fmt;
use std::sync::Arc;

/// Which of the four instances a value or quantale belongs to.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum InstanceTag {
    Boolean,
    Lawvere,
    UnitInterval,
    Delta,
}

impl InstanceTag {
    pub fn name(self) -> &'static str {
        match self {
            InstanceTag::Boolean => "boolean",
            InstanceTag::Lawvere => "lawvere",
            InstanceTag::UnitInterval => "unit-interval",
            InstanceTag::Delta => "delta",
        }
    }
}

impl fmt::Display for InstanceTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// A left-continuous t-norm on `[0, 1]`.
#[derive(Clone)]
pub enum TNorm<R> {
    Product,
    Minimum,
    Lukasiewicz,
    /// User-supplied left-continuous t-norm. The closed-form residuations of
    /// the named kinds are replaced by a bisection against the supplied map.
    Custom {
        name: String,
        apply: Arc<dyn Fn(R, R) -> R + Send + Sync>,
    },
}

impl<R: Real> TNorm<R> {
    pub fn apply(&self, a: R, b: R) -> R {
        match self {
            TNorm::Product => a * b,
            TNorm::Minimum => a.min(b),
            TNorm::Lukasiewicz => (a + b - R::one()).max(R::zero()),
            TNorm::Custom { apply, .. } => apply(a, b),
        }
    }

    /// The residuum: the largest `z` with `T(a, z) ≤ b`.
    pub fn residuate(&self, a: R, b: R) -> R {
        match self {
            TNorm::Product => {
                if a <= b {
                    R::one()
                } else {
                    b / a
                }
            }
            TNorm::Minimum => {
                if a <= b {
                    R::one()
                } else {
                    b
                }
            }
            TNorm::Lukasiewicz => (R::one() - a + b).min(R::one()),
            TNorm::Custom { apply, .. } => {
                // Largest z with T(a, z) ≤ b; left-continuity makes the
                // supremum attained, and monotonicity makes bisection valid.
                let mut lo = R::zero();
                let mut hi = R::one();
                if apply(a, hi) <= b {
                    return hi;
                }
                for _ in 0..64 {
                    let mid = (lo + hi) * r64(0.5);
                    if apply(a, mid) <= b {
                        lo = mid;
                    } else {
                        hi = mid;
                    }
                }
                lo
            }
        }
    }

    pub fn name(&self) -> &str {
        match self {
            TNorm::Product => "product",
            TNorm::Minimum => "minimum",
            TNorm::Lukasiewicz => "lukasiewicz",
            TNorm::Custom { name, .. } => name,
        }
    }
}

impl<R> fmt::Debug for TNorm<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TNorm::Product => f.write_str("Product"),
            TNorm::Minimum => f.write_str("Minimum"),
            TNorm::Lukasiewicz => f.write_str("Lukasiewicz"),
            TNorm::Custom { name, .. } => write!(f, "Custom({name})"),
        }
    }
}

/// An element of one of the four instances.
#[derive(Clone, Debug, PartialEq)]
pub enum QuantaleValue<R> {
    Boolean(bool),
    /// Extended nonnegative real; `∞` permitted.
    Lawvere(R),
    /// Real in `[0, 1]`.
    UnitInterval(R),
    Delta(StepDistribution<R>),
}

impl<R: Real> QuantaleValue<R> {
    pub fn tag(&self) -> InstanceTag {
        match self {
            QuantaleValue::Boolean(_) => InstanceTag::Boolean,
            QuantaleValue::Lawvere(_) => InstanceTag::Lawvere,
            QuantaleValue::UnitInterval(_) => InstanceTag::UnitInterval,
            QuantaleValue::Delta(_) => InstanceTag::Delta,
        }
    }

    pub fn as_real(&self) -> Option<R> {
        match self {
            QuantaleValue::Lawvere(x) | QuantaleValue::UnitInterval(x) => Some(*x),
            _ => None,
        }
    }

    pub fn as_step(&self) -> Option<&StepDistribution<R>> {
        match self {
            QuantaleValue::Delta(s) => Some(s),
            _ => None,
        }
    }
}

impl<R: Real> fmt::Display for QuantaleValue<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            QuantaleValue::Boolean(b) => write!(f, "{}", if *b { 1 } else { 0 }),
            QuantaleValue::Lawvere(x) => {
                if x.is_infinite() {
                    f.write_str("inf")
                } else {
                    write!(f, "{x}")
                }
            }
            QuantaleValue::UnitInterval(x) => write!(f, "{x}"),
            QuantaleValue::Delta(s) => write!(f, "{s}"),
        }
    }
}

#[derive(Clone, Debug)]
enum Kind<R> {
    Boolean,
    Lawvere,
    UnitInterval(TNorm<R>),
    Delta(TNorm<R>),
}

/// A quantale descriptor: instance, t-norm where applicable, and the
/// comparison tolerance used by all order predicates.
#[derive(Clone, Debug)]
pub struct Quantale<R> {
    kind: Kind<R>,
    tol: R,
}

impl<R: Real> Quantale<R> {
    pub fn boolean() -> Self {
        Quantale {
            kind: Kind::Boolean,
            tol: r64(crate::DEFAULT_TOLERANCE),
        }
    }

    pub fn lawvere() -> Self {
        Quantale {
            kind: Kind::Lawvere,
            tol: r64(crate::DEFAULT_TOLERANCE),
        }
    }

    pub fn unit_interval(tnorm: TNorm<R>) -> Self {
        Quantale {
            kind: Kind::UnitInterval(tnorm),
            tol: r64(crate::DEFAULT_TOLERANCE),
        }
    }

    pub fn delta(tnorm: TNorm<R>) -> Self {
        Quantale {
            kind: Kind::Delta(tnorm),
            tol: r64(crate::DEFAULT_TOLERANCE),
        }
    }

    pub fn with_tolerance(mut self, tol: R) -> Self {
        self.tol = tol;
        self
    }

    pub fn tolerance(&self) -> R {
        self.tol
    }

    pub fn tag(&self) -> InstanceTag {
        match &self.kind {
            Kind::Boolean => InstanceTag::Boolean,
            Kind::Lawvere => InstanceTag::Lawvere,
            Kind::UnitInterval(_) => InstanceTag::UnitInterval,
            Kind::Delta(_) => InstanceTag::Delta,
        }
    }

    pub fn tnorm(&self) -> Option<&TNorm<R>> {
        match &self.kind {
            Kind::UnitInterval(t) | Kind::Delta(t) => Some(t),
            _ => None,
        }
    }

    /// Same instance and (for t-norm-based instances) same t-norm kind.
    pub fn same_structure(&self, other: &Self) -> bool {
        self.tag() == other.tag()
            && match (self.tnorm(), other.tnorm()) {
                (Some(a), Some(b)) => match (a, b) {
                    (TNorm::Product, TNorm::Product)
                    | (TNorm::Minimum, TNorm::Minimum)
                    | (TNorm::Lukasiewicz, TNorm::Lukasiewicz) => true,
                    (TNorm::Custom { name: a, .. }, TNorm::Custom { name: b, .. }) => a == b,
                    _ => false,
                },
                (None, None) => true,
                _ => false,
            }
    }

    fn expect_tag(&self, v: &QuantaleValue<R>, op: &'static str) -> Result<()> {
        if v.tag() == self.tag() {
            Ok(())
        } else {
            Err(Error::InstanceMismatch {
                op,
                left: self.tag().name(),
                right: v.tag().name(),
            })
        }
    }

    fn expect_pair(
        &self,
        a: &QuantaleValue<R>,
        b: &QuantaleValue<R>,
        op: &'static str,
    ) -> Result<()> {
        self.expect_tag(a, op)?;
        self.expect_tag(b, op)
    }

    /// The bottom element (empty join).
    pub fn bottom(&self) -> QuantaleValue<R> {
        match &self.kind {
            Kind::Boolean => QuantaleValue::Boolean(false),
            Kind::Lawvere => QuantaleValue::Lawvere(R::infinity()),
            Kind::UnitInterval(_) => QuantaleValue::UnitInterval(R::zero()),
            Kind::Delta(_) => QuantaleValue::Delta(StepDistribution::zero()),
        }
    }

    /// The top element (empty meet). All four instances are integral, so this
    /// coincides with the unit.
    pub fn top(&self) -> QuantaleValue<R> {
        self.unit()
    }

    /// The monoid unit.
    pub fn unit(&self) -> QuantaleValue<R> {
        match &self.kind {
            Kind::Boolean => QuantaleValue::Boolean(true),
            Kind::Lawvere => QuantaleValue::Lawvere(R::zero()),
            Kind::UnitInterval(_) => QuantaleValue::UnitInterval(R::one()),
            Kind::Delta(_) => QuantaleValue::Delta(StepDistribution::unit()),
        }
    }

    /// Lattice order, tolerance-aware on real payloads. For Lawvere this is
    /// the converse of the numeric order: `leq(3, 2)` holds.
    pub fn leq(&self, a: &QuantaleValue<R>, b: &QuantaleValue<R>) -> Result<bool> {
        self.expect_pair(a, b, "leq")?;
        Ok(match (a, b) {
            (QuantaleValue::Boolean(x), QuantaleValue::Boolean(y)) => !*x || *y,
            (QuantaleValue::Lawvere(x), QuantaleValue::Lawvere(y)) => {
                *x == *y || *x >= *y - self.tol
            }
            (QuantaleValue::UnitInterval(x), QuantaleValue::UnitInterval(y)) => {
                *x <= *y + self.tol
            }
            (QuantaleValue::Delta(x), QuantaleValue::Delta(y)) => {
                x.leq_within(y, self.tol, self.tol)
            }
            _ => unreachable!("tags checked above"),
        })
    }

    /// Equality up to the tolerance (order in both directions).
    pub fn eq_values(&self, a: &QuantaleValue<R>, b: &QuantaleValue<R>) -> Result<bool> {
        Ok(self.leq(a, b)? && self.leq(b, a)?)
    }

    pub fn is_bottom(&self, v: &QuantaleValue<R>) -> Result<bool> {
        self.eq_values(v, &self.bottom())
    }

    /// `unit ≤ v` within the tolerance.
    pub fn is_above_unit(&self, v: &QuantaleValue<R>) -> Result<bool> {
        self.leq(&self.unit(), v)
    }

    pub fn join2(&self, a: &QuantaleValue<R>, b: &QuantaleValue<R>) -> Result<QuantaleValue<R>> {
        self.expect_pair(a, b, "join")?;
        Ok(match (a, b) {
            (QuantaleValue::Boolean(x), QuantaleValue::Boolean(y)) => {
                QuantaleValue::Boolean(*x || *y)
            }
            (QuantaleValue::Lawvere(x), QuantaleValue::Lawvere(y)) => {
                QuantaleValue::Lawvere(x.min(*y))
            }
            (QuantaleValue::UnitInterval(x), QuantaleValue::UnitInterval(y)) => {
                QuantaleValue::UnitInterval(x.max(*y))
            }
            (QuantaleValue::Delta(x), QuantaleValue::Delta(y)) => QuantaleValue::Delta(x.join(y)),
            _ => unreachable!(),
        })
    }

    pub fn meet2(&self, a: &QuantaleValue<R>, b: &QuantaleValue<R>) -> Result<QuantaleValue<R>> {
        self.expect_pair(a, b, "meet")?;
        Ok(match (a, b) {
            (QuantaleValue::Boolean(x), QuantaleValue::Boolean(y)) => {
                QuantaleValue::Boolean(*x && *y)
            }
            (QuantaleValue::Lawvere(x), QuantaleValue::Lawvere(y)) => {
                QuantaleValue::Lawvere(x.max(*y))
            }
            (QuantaleValue::UnitInterval(x), QuantaleValue::UnitInterval(y)) => {
                QuantaleValue::UnitInterval(x.min(*y))
            }
            (QuantaleValue::Delta(x), QuantaleValue::Delta(y)) => QuantaleValue::Delta(x.meet(y)),
            _ => unreachable!(),
        })
    }

    /// Least upper bound of a finite family; the empty family yields bottom.
    pub fn join<'a, I>(&self, family: I) -> Result<QuantaleValue<R>>
    where
        I: IntoIterator<Item = &'a QuantaleValue<R>>,
        R: 'a,
    {
        let mut acc = self.bottom();
        for v in family {
            acc = self.join2(&acc, v)?;
        }
        Ok(acc)
    }

    /// Greatest lower bound of a finite family; the empty family yields top.
    pub fn meet<'a, I>(&self, family: I) -> Result<QuantaleValue<R>>
    where
        I: IntoIterator<Item = &'a QuantaleValue<R>>,
        R: 'a,
    {
        let mut acc = self.top();
        for v in family {
            acc = self.meet2(&acc, v)?;
        }
        Ok(acc)
    }

    /// The monoid product: conjunction, truncated addition, the t-norm, or
    /// sup-convolution depending on the instance.
    pub fn tensor(&self, a: &QuantaleValue<R>, b: &QuantaleValue<R>) -> Result<QuantaleValue<R>> {
        self.expect_pair(a, b, "tensor")?;
        Ok(match (&self.kind, a, b) {
            (Kind::Boolean, QuantaleValue::Boolean(x), QuantaleValue::Boolean(y)) => {
                QuantaleValue::Boolean(*x && *y)
            }
            (Kind::Lawvere, QuantaleValue::Lawvere(x), QuantaleValue::Lawvere(y)) => {
                QuantaleValue::Lawvere(*x + *y)
            }
            (Kind::UnitInterval(t), QuantaleValue::UnitInterval(x), QuantaleValue::UnitInterval(y)) => {
                QuantaleValue::UnitInterval(t.apply(*x, *y))
            }
            (Kind::Delta(t), QuantaleValue::Delta(x), QuantaleValue::Delta(y)) => {
                QuantaleValue::Delta(x.convolve(y, |u, v| t.apply(u, v)))
            }
            _ => unreachable!(),
        })
    }

    /// The residual: the largest `x` with `tensor(a, x) ≤ b`. All four
    /// instances are commutative, so left and right residuals coincide.
    pub fn residuate(&self, a: &QuantaleValue<R>, b: &QuantaleValue<R>) -> Result<QuantaleValue<R>> {
        self.expect_pair(a, b, "residuate")?;
        Ok(match (&self.kind, a, b) {
            (Kind::Boolean, QuantaleValue::Boolean(x), QuantaleValue::Boolean(y)) => {
                QuantaleValue::Boolean(!*x || *y)
            }
            (Kind::Lawvere, QuantaleValue::Lawvere(x), QuantaleValue::Lawvere(y)) => {
                // Smallest numeric z with x + z ≥ y, i.e. truncated subtraction.
                let z = if x.is_infinite() {
                    R::zero()
                } else if y.is_infinite() {
                    R::infinity()
                } else {
                    (*y - *x).max(R::zero())
                };
                QuantaleValue::Lawvere(z)
            }
            (Kind::UnitInterval(t), QuantaleValue::UnitInterval(x), QuantaleValue::UnitInterval(y)) => {
                QuantaleValue::UnitInterval(t.residuate(*x, *y))
            }
            (Kind::Delta(t), QuantaleValue::Delta(x), QuantaleValue::Delta(y)) => {
                QuantaleValue::Delta(delta_residuate(t, x, y))
            }
            _ => unreachable!(),
        })
    }

    /// How far `a ≤ b` fails, as a nonnegative scalar (0 when it holds).
    /// Used for the "worst defect" entries in adjunction reports.
    pub fn violation_gap(&self, a: &QuantaleValue<R>, b: &QuantaleValue<R>) -> Result<R> {
        self.expect_pair(a, b, "violation_gap")?;
        Ok(match (a, b) {
            (QuantaleValue::Boolean(x), QuantaleValue::Boolean(y)) => {
                if !*x || *y {
                    R::zero()
                } else {
                    R::one()
                }
            }
            (QuantaleValue::Lawvere(x), QuantaleValue::Lawvere(y)) => {
                if *x == *y || *x >= *y {
                    R::zero()
                } else {
                    *y - *x
                }
            }
            (QuantaleValue::UnitInterval(x), QuantaleValue::UnitInterval(y)) => {
                (*x - *y).max(R::zero())
            }
            (QuantaleValue::Delta(x), QuantaleValue::Delta(y)) => x.leq_defect(y, self.tol),
            _ => unreachable!(),
        })
    }
}

/// Residuation in the distance-distribution quantale.
///
/// The constraint `a ∗ z ≤ b` unfolds to `T(a(r), z(s)) ≤ b(r+s)` for all
/// `r, s`; per plateau of `a` the binding case is `r` just above the jump,
/// so the pointwise-largest solution is
/// `z*(s) = ⋀_i res_T(vᵢ, b((pᵢ+s)⁺))`, and the residuum is its
/// left-continuous regularization — which is exactly the jump representation
/// with plateau values read just after each candidate jump.
fn delta_residuate<R: Real>(
    tnorm: &TNorm<R>,
    a: &StepDistribution<R>,
    b: &StepDistribution<R>,
) -> StepDistribution<R> {
    if a.is_zero() {
        return StepDistribution::unit();
    }
    let mut candidates: Vec<R> = vec![R::zero()];
    for q in b.breakpoints() {
        for p in a.breakpoints() {
            let s = *q - *p;
            if s >= R::zero() {
                candidates.push(s);
            }
        }
    }
    candidates.sort_by(|x, y| x.partial_cmp(y).expect("finite positions"));
    candidates.dedup();
    let jumps = candidates
        .into_iter()
        .map(|s| {
            let mut w = R::one();
            for (p, v) in a.breakpoints().iter().zip(a.plateau_values()) {
                w = w.min(tnorm.residuate(*v, b.value_after(*p + s)));
            }
            (s, w)
        })
        .collect();
    StepDistribution::from_jumps(jumps)
}

/// The raw operations of a (claimed) quantale, for law checking. Wrapping the
/// operations in closures lets tests aim the checker at deliberately broken
/// algebras.
pub struct QuantaleOps<'a, R> {
    pub leq: &'a dyn Fn(&QuantaleValue<R>, &QuantaleValue<R>) -> Result<bool>,
    pub eq: &'a dyn Fn(&QuantaleValue<R>, &QuantaleValue<R>) -> Result<bool>,
    pub join2: &'a dyn Fn(&QuantaleValue<R>, &QuantaleValue<R>) -> Result<QuantaleValue<R>>,
    pub tensor: &'a dyn Fn(&QuantaleValue<R>, &QuantaleValue<R>) -> Result<QuantaleValue<R>>,
    pub unit: QuantaleValue<R>,
    pub bottom: QuantaleValue<R>,
}

/// Checks associativity, unit laws, order laws, and distributivity of the
/// product over joins of sub-families of `sample`.
///
/// Exhaustive when `sample` is the whole carrier (Boolean); otherwise the
/// report discloses that infinite suprema were only probed on finite
/// families. Subset enumeration is capped: beyond 12 sample elements only
/// pairs and the full family are used as join families.
pub fn check_quantale_axioms<R: Real>(
    q: &Quantale<R>,
    sample: &[QuantaleValue<R>],
) -> Result<CheckReport> {
    let ops = QuantaleOps {
        leq: &|a, b| q.leq(a, b),
        eq: &|a, b| q.eq_values(a, b),
        join2: &|a, b| q.join2(a, b),
        tensor: &|a, b| q.tensor(a, b),
        unit: q.unit(),
        bottom: q.bottom(),
    };
    let exhaustive = q.tag() == InstanceTag::Boolean && sample.len() >= 2;
    check_quantale_axioms_with(&ops, sample, exhaustive)
}

pub fn check_quantale_axioms_with<R: Real>(
    ops: &QuantaleOps<'_, R>,
    sample: &[QuantaleValue<R>],
    exhaustive: bool,
) -> Result<CheckReport> {
    let n = sample.len();
    let scope = if exhaustive {
        Scope::Exhaustive
    } else {
        Scope::Sampled { cases: n }
    };
    let mut report = CheckReport::new("quantale-axioms", scope);
    report.note(
        "distributivity over arbitrary suprema is verified on finite families only".to_string(),
    );

    let join_of = |family: &[&QuantaleValue<R>]| -> Result<QuantaleValue<R>> {
        let mut acc = ops.bottom.clone();
        for v in family {
            acc = (ops.join2)(&acc, v)?;
        }
        Ok(acc)
    };

    // Order laws.
    for a in sample {
        if !(ops.leq)(a, a)? {
            report.violate("order-reflexivity", format!("{a} ≰ {a}"));
        }
    }
    for a in sample {
        for b in sample {
            if (ops.leq)(a, b)? && (ops.leq)(b, a)? && !(ops.eq)(a, b)? {
                report.violate("order-antisymmetry", format!("{a} ≷ {b} but not equal"));
            }
            for c in sample {
                if (ops.leq)(a, b)? && (ops.leq)(b, c)? && !(ops.leq)(a, c)? {
                    report.violate("order-transitivity", format!("{a} ≤ {b} ≤ {c} but {a} ≰ {c}"));
                }
            }
        }
    }

    // Join is a least upper bound on pairs from the sample.
    for a in sample {
        for b in sample {
            let j = (ops.join2)(a, b)?;
            if !(ops.leq)(a, &j)? || !(ops.leq)(b, &j)? {
                report.violate("join-upper-bound", format!("{a} ∨ {b} = {j}"));
            }
            for u in sample {
                if (ops.leq)(a, u)? && (ops.leq)(b, u)? && !(ops.leq)(&j, u)? {
                    report.violate("join-least", format!("{a} ∨ {b} = {j} ≰ {u}"));
                }
            }
        }
    }

    // Monoid laws.
    for a in sample {
        let l = (ops.tensor)(&ops.unit, a)?;
        let r = (ops.tensor)(a, &ops.unit)?;
        if !(ops.eq)(&l, a)? {
            report.violate("unit-left", format!("1 ∘ {a} = {l}"));
        }
        if !(ops.eq)(&r, a)? {
            report.violate("unit-right", format!("{a} ∘ 1 = {r}"));
        }
    }
    for a in sample {
        for b in sample {
            for c in sample {
                let lhs = (ops.tensor)(a, &(ops.tensor)(b, c)?)?;
                let rhs = (ops.tensor)(&(ops.tensor)(a, b)?, c)?;
                if !(ops.eq)(&lhs, &rhs)? {
                    report.violate(
                        "associativity",
                        format!("{a} ∘ ({b} ∘ {c}) = {lhs} but ({a} ∘ {b}) ∘ {c} = {rhs}"),
                    );
                }
            }
        }
    }

    // Distributivity over joins of sub-families, from both sides.
    let families: Vec<Vec<&QuantaleValue<R>>> = if n <= 12 {
        (0..(1usize << n))
            .map(|mask| {
                (0..n)
                    .filter(|i| mask & (1 << i) != 0)
                    .map(|i| &sample[i])
                    .collect()
            })
            .collect()
    } else {
        let mut fams: Vec<Vec<&QuantaleValue<R>>> = vec![Vec::new()];
        for i in 0..n {
            for j in i..n {
                fams.push(vec![&sample[i], &sample[j]]);
            }
        }
        fams.push(sample.iter().collect());
        fams
    };
    for a in sample {
        for family in &families {
            let joined = join_of(family)?;
            let lhs = (ops.tensor)(a, &joined)?;
            let mut parts = Vec::with_capacity(family.len());
            for s in family {
                parts.push((ops.tensor)(a, s)?);
            }
            let rhs = {
                let refs: Vec<&QuantaleValue<R>> = parts.iter().collect();
                join_of(&refs)?
            };
            if !(ops.eq)(&lhs, &rhs)? {
                report.violations.push(Violation {
                    law: "distributivity-left".into(),
                    witness: format!(
                        "{a} ∘ ⋁(family of {}) = {lhs}, ⋁ of products = {rhs}",
                        family.len()
                    ),
                });
            }
            let lhs_r = (ops.tensor)(&joined, a)?;
            let mut parts_r = Vec::with_capacity(family.len());
            for s in family {
                parts_r.push((ops.tensor)(s, a)?);
            }
            let rhs_r = {
                let refs: Vec<&QuantaleValue<R>> = parts_r.iter().collect();
                join_of(&refs)?
            };
            if !(ops.eq)(&lhs_r, &rhs_r)? {
                report.violations.push(Violation {
                    law: "distributivity-right".into(),
                    witness: format!(
                        "⋁(family of {}) ∘ {a} = {lhs_r}, ⋁ of products = {rhs_r}",
                        family.len()
                    ),
                });
            }
        }
    }

    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;

    type Q = Quantale<f64>;
    type V = QuantaleValue<f64>;

    fn law(x: f64) -> V {
        V::Lawvere(x)
    }

    fn ui(x: f64) -> V {
        V::UnitInterval(x)
    }

    #[test]
    fn lawvere_order_is_reversed() {
        let q = Q::lawvere();
        assert!(q.leq(&law(3.0), &law(2.0)).unwrap());
        assert!(!q.leq(&law(2.0), &law(3.0)).unwrap());
        assert!(q.leq(&law(f64::INFINITY), &law(5.0)).unwrap());
        assert!(!q.leq(&law(5.0), &law(f64::INFINITY)).unwrap());
        assert!(q.leq(&law(f64::INFINITY), &law(f64::INFINITY)).unwrap());
    }

    #[test]
    fn boolean_bottom_below_top() {
        let q = Q::boolean();
        assert!(q.leq(&V::Boolean(false), &V::Boolean(true)).unwrap());
        assert!(!q.leq(&V::Boolean(true), &V::Boolean(false)).unwrap());
    }

    #[test]
    fn delta_leq_is_reflexive() {
        let q = Q::delta(TNorm::Minimum);
        let f = V::Delta(StepDistribution::new(vec![0.5, 2.0], vec![0.3, 0.8]).unwrap());
        assert!(q.leq(&f, &f).unwrap());
    }

    #[test]
    fn instance_mismatch_is_reported() {
        let q = Q::lawvere();
        let err = q.leq(&law(1.0), &ui(0.5)).unwrap_err();
        assert!(matches!(err, Error::InstanceMismatch { .. }));
        assert!(q.tensor(&ui(0.5), &law(1.0)).is_err());
        assert!(q.join(&[ui(0.1)]).is_err());
    }

    #[test]
    fn joins_and_meets() {
        let q = Q::lawvere();
        assert_eq!(q.join(&[law(2.0), law(5.0)]).unwrap(), law(2.0));
        assert_eq!(q.meet(&[law(2.0), law(5.0)]).unwrap(), law(5.0));
        assert_eq!(q.join(&[]).unwrap(), law(f64::INFINITY));

        let b = Q::boolean();
        assert_eq!(
            b.meet(&[V::Boolean(true), V::Boolean(true)]).unwrap(),
            V::Boolean(true)
        );

        let u = Q::unit_interval(TNorm::Product);
        assert_eq!(u.join(&[ui(0.2), ui(0.7)]).unwrap(), ui(0.7));

        let d = Q::delta(TNorm::Minimum);
        assert!(matches!(d.join(&[]).unwrap(), V::Delta(s) if s.is_zero()));
    }

    #[test]
    fn tensor_examples() {
        let q = Q::lawvere();
        assert_eq!(q.tensor(&law(2.0), &law(3.0)).unwrap(), law(5.0));
        assert_eq!(
            q.tensor(&law(f64::INFINITY), &law(3.0)).unwrap(),
            law(f64::INFINITY)
        );

        let luk = Q::unit_interval(TNorm::Lukasiewicz);
        let got = luk.tensor(&ui(0.7), &ui(0.6)).unwrap();
        assert!(luk.eq_values(&got, &ui(0.3)).unwrap());
    }

    #[test]
    fn units_are_neutral() {
        let cases: Vec<(Q, Vec<V>)> = vec![
            (Q::boolean(), vec![V::Boolean(false), V::Boolean(true)]),
            (Q::lawvere(), vec![law(0.0), law(1.5), law(f64::INFINITY)]),
            (
                Q::unit_interval(TNorm::Product),
                vec![ui(0.0), ui(0.3), ui(1.0)],
            ),
            (
                Q::delta(TNorm::Minimum),
                vec![
                    V::Delta(StepDistribution::zero()),
                    V::Delta(StepDistribution::new(vec![1.0], vec![0.4]).unwrap()),
                ],
            ),
        ];
        for (q, vals) in cases {
            let e = q.unit();
            for v in vals {
                assert!(q.eq_values(&q.tensor(&e, &v).unwrap(), &v).unwrap());
                assert!(q.eq_values(&q.tensor(&v, &e).unwrap(), &v).unwrap());
            }
        }
    }

    #[test]
    fn residuation_closed_forms() {
        let prod = Q::unit_interval(TNorm::Product);
        let r = prod.residuate(&ui(0.5), &ui(0.3)).unwrap();
        assert!(prod.eq_values(&r, &ui(0.6)).unwrap());

        let b = Q::boolean();
        assert_eq!(
            b.residuate(&V::Boolean(true), &V::Boolean(false)).unwrap(),
            V::Boolean(false)
        );

        let q = Q::lawvere();
        assert_eq!(q.residuate(&law(2.0), &law(5.0)).unwrap(), law(3.0));
        assert_eq!(q.residuate(&law(5.0), &law(2.0)).unwrap(), law(0.0));
        assert_eq!(q.residuate(&law(f64::INFINITY), &law(2.0)).unwrap(), law(0.0));
    }

    #[test]
    fn residuation_unit_law_every_instance() {
        let qs: Vec<(Q, Vec<V>)> = vec![
            (Q::boolean(), vec![V::Boolean(false), V::Boolean(true)]),
            (Q::lawvere(), vec![law(0.0), law(2.5), law(f64::INFINITY)]),
            (Q::unit_interval(TNorm::Lukasiewicz), vec![ui(0.2), ui(0.9)]),
            (
                Q::delta(TNorm::Product),
                vec![
                    V::Delta(StepDistribution::new(vec![0.5, 2.0], vec![0.3, 0.8]).unwrap()),
                    V::Delta(StepDistribution::zero()),
                ],
            ),
        ];
        for (q, vals) in qs {
            for b in vals {
                let r = q.residuate(&q.unit(), &b).unwrap();
                assert!(q.eq_values(&r, &b).unwrap(), "residuate(1, {b}) = {r}");
            }
        }
    }

    // Galois property: tensor(a, x) ≤ b  ⟺  x ≤ residuate(a, b), probed on a
    // grid of step functions. This pins the Δ residuation against the tensor.
    #[test]
    fn delta_residuation_galois() {
        let q = Q::delta(TNorm::Lukasiewicz);
        let pool: Vec<StepDistribution<f64>> = vec![
            StepDistribution::zero(),
            StepDistribution::unit(),
            StepDistribution::step_at(1.0).unwrap(),
            StepDistribution::new(vec![0.5, 2.0], vec![0.3, 0.8]).unwrap(),
            StepDistribution::new(vec![1.0, 3.0], vec![0.5, 0.9]).unwrap(),
            StepDistribution::from_jumps(vec![(0.0, 0.5)]),
        ];
        for a in &pool {
            for b in &pool {
                let res = q
                    .residuate(&V::Delta(a.clone()), &V::Delta(b.clone()))
                    .unwrap();
                for x in &pool {
                    let prod = q.tensor(&V::Delta(a.clone()), &V::Delta(x.clone())).unwrap();
                    let lhs = q.leq(&prod, &V::Delta(b.clone())).unwrap();
                    let rhs = q.leq(&V::Delta(x.clone()), &res).unwrap();
                    assert_eq!(lhs, rhs, "a={a} b={b} x={x} res={res}");
                }
            }
        }
    }

    #[test]
    fn axiom_checker_passes_the_named_instances() {
        let bool_sample = vec![V::Boolean(false), V::Boolean(true)];
        let rep = check_quantale_axioms(&Q::boolean(), &bool_sample).unwrap();
        assert!(rep.passed(), "{rep}");
        assert_eq!(rep.scope, Scope::Exhaustive);

        let luk_sample: Vec<V> = [0.0, 0.25, 0.5, 0.75, 1.0].iter().map(|x| ui(*x)).collect();
        let rep = check_quantale_axioms(&Q::unit_interval(TNorm::Lukasiewicz), &luk_sample).unwrap();
        assert!(rep.passed(), "{rep}");
        assert!(!rep.notes.is_empty());
    }

    #[test]
    fn axiom_checker_catches_a_broken_tensor() {
        let q = Q::lawvere();
        let broken = |a: &V, b: &V| -> crate::error::Result<V> {
            if let (V::Lawvere(x), V::Lawvere(y)) = (a, b) {
                if (*x - 2.0).abs() < 1e-12 && (*y - 3.0).abs() < 1e-12 {
                    return Ok(law(4.0));
                }
            }
            q.tensor(a, b)
        };
        let ops = QuantaleOps {
            leq: &|a, b| q.leq(a, b),
            eq: &|a, b| q.eq_values(a, b),
            join2: &|a, b| q.join2(a, b),
            tensor: &broken,
            unit: q.unit(),
            bottom: q.bottom(),
        };
        let sample = vec![law(0.0), law(1.0), law(2.0), law(3.0)];
        let rep = check_quantale_axioms_with(&ops, &sample, false).unwrap();
        assert!(
            rep.has_violation("associativity")
                || rep.has_violation("distributivity-left")
                || rep.has_violation("distributivity-right"),
            "{rep}"
        );
    }
}
