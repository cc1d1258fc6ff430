//! Distributors (bimodules/profunctors) between Q-categories, their
//! composition, adjunctions, and representability.
//!
//! A distributor `Φ: ℂ ⇸ 𝔻` is a quantale-valued matrix `𝔻₀ × ℂ₀ → Q`
//! compatible with both hom actions:
//!
//! ```text
//! hom_𝔻(y', y) ∘ Φ(y, x) ∘ hom_ℂ(x, x') ≤ Φ(y', x')
//! ```
//!
//! Entries are tabulated over explicit finite object enumerations (all
//! objects of a finite carrier, or the search hint of a rule-based one). A
//! presheaf is a distributor from the one-object unit category; it is
//! representable when it coincides with `hom(−, u)` for some object `u`.

use crate::category::{Object, QCategory, QFunctor};
use crate::error::{Error, Result};
use crate::quantale::QuantaleValue;
use crate::real::Real;
use crate::report::{CheckReport, Scope};
use std::fmt;
use std::sync::Arc;

/// A distributor tabulated over finite enumerations of its endpoints.
#[derive(Clone)]
pub struct Distributor<R> {
    source: Arc<QCategory<R>>,
    target: Arc<QCategory<R>>,
    /// Enumerated objects of the target indexing the rows.
    rows: Vec<Object<R>>,
    /// Enumerated objects of the source indexing the columns.
    cols: Vec<Object<R>>,
    /// `vals[r][c] = Φ(rows[r], cols[c])`.
    vals: Vec<Vec<QuantaleValue<R>>>,
}

impl<R: Real> fmt::Debug for Distributor<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Distributor({}x{})", self.rows.len(), self.cols.len())
    }
}

fn enumeration<R: Real>(c: &Arc<QCategory<R>>, role: &str) -> Result<Vec<Object<R>>> {
    c.search_space().ok_or_else(|| {
        Error::Unsupported(format!(
            "{role} carrier is rule-based without a search hint"
        ))
    })
}

impl<R: Real> Distributor<R> {
    /// Builds a distributor from an entry rule evaluated over the endpoint
    /// enumerations.
    pub fn from_rule(
        source: Arc<QCategory<R>>,
        target: Arc<QCategory<R>>,
        mut entry: impl FnMut(&Object<R>, &Object<R>) -> Result<QuantaleValue<R>>,
    ) -> Result<Self> {
        if !source.quantale().same_structure(target.quantale()) {
            return Err(Error::Incompatible(
                "distributor endpoints must share the quantale".into(),
            ));
        }
        let rows = enumeration(&target, "target")?;
        let cols = enumeration(&source, "source")?;
        let mut vals = Vec::with_capacity(rows.len());
        for y in &rows {
            let mut row = Vec::with_capacity(cols.len());
            for x in &cols {
                let v = entry(y, x)?;
                if v.tag() != source.quantale().tag() {
                    return Err(Error::InstanceMismatch {
                        op: "distributor entry",
                        left: source.quantale().tag().name(),
                        right: v.tag().name(),
                    });
                }
                row.push(v);
            }
            vals.push(row);
        }
        Ok(Distributor {
            source,
            target,
            rows,
            cols,
            vals,
        })
    }

    /// The identity distributor: the hom of `c` itself.
    pub fn identity(c: Arc<QCategory<R>>) -> Result<Self> {
        let cat = c.clone();
        Self::from_rule(c.clone(), c, move |y, x| cat.hom(y, x))
    }

    pub fn source(&self) -> &Arc<QCategory<R>> {
        &self.source
    }

    pub fn target(&self) -> &Arc<QCategory<R>> {
        &self.target
    }

    pub fn rows(&self) -> &[Object<R>] {
        &self.rows
    }

    pub fn cols(&self) -> &[Object<R>] {
        &self.cols
    }

    pub fn entry(&self, r: usize, c: usize) -> &QuantaleValue<R> {
        &self.vals[r][c]
    }

    /// A presheaf is a distributor out of the one-object unit category.
    pub fn is_presheaf(&self) -> bool {
        self.cols.len() == 1 && self.source.len() == Some(1)
    }

    /// Presheaf entry at a row object.
    pub fn at(&self, r: usize) -> &QuantaleValue<R> {
        &self.vals[r][0]
    }

    /// Composition `other ∘ self` where `self: 𝔸 ⇸ 𝔹` and `other: 𝔹 ⇸ ℂ`:
    /// `(Ψ∘Φ)(z, x) = ⋁_y Ψ(z, y) ∘ Φ(y, x)`, the join running over the
    /// enumerated middle objects in order.
    pub fn then(&self, other: &Distributor<R>) -> Result<Distributor<R>> {
        if other.cols.len() != self.rows.len()
            || other
                .cols
                .iter()
                .zip(&self.rows)
                .any(|(a, b)| a != b)
        {
            return Err(Error::Incompatible(
                "middle enumerations of the composite do not match".into(),
            ));
        }
        let q = self.source.quantale();
        let mut vals = Vec::with_capacity(other.rows.len());
        for z in 0..other.rows.len() {
            let mut row = Vec::with_capacity(self.cols.len());
            for x in 0..self.cols.len() {
                let mut acc = q.bottom();
                for y in 0..self.rows.len() {
                    let term = q.tensor(&other.vals[z][y], &self.vals[y][x])?;
                    acc = q.join2(&acc, &term)?;
                }
                row.push(acc);
            }
            vals.push(row);
        }
        Ok(Distributor {
            source: self.source.clone(),
            target: other.target.clone(),
            rows: other.rows.clone(),
            cols: self.cols.clone(),
            vals,
        })
    }

    /// Elementwise order of parallel distributors.
    pub fn leq(&self, other: &Distributor<R>) -> Result<bool> {
        self.shape_check(other)?;
        let q = self.source.quantale();
        for r in 0..self.rows.len() {
            for c in 0..self.cols.len() {
                if !q.leq(&self.vals[r][c], &other.vals[r][c])? {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }

    pub fn approx_eq(&self, other: &Distributor<R>) -> Result<bool> {
        Ok(self.leq(other)? && other.leq(self)?)
    }

    fn shape_check(&self, other: &Distributor<R>) -> Result<()> {
        if self.rows.len() != other.rows.len() || self.cols.len() != other.cols.len() {
            return Err(Error::Incompatible(
                "parallel distributors must share their enumerations".into(),
            ));
        }
        Ok(())
    }

    /// Checks the two-sided action condition over the tabulated enumerations.
    pub fn check_action(&self) -> Result<CheckReport> {
        let scope = if self.source.is_finite() && self.target.is_finite() {
            Scope::Exhaustive
        } else {
            Scope::Sampled {
                cases: self.rows.len() * self.cols.len(),
            }
        };
        let mut report = CheckReport::new("distributor-action", scope);
        let q = self.source.quantale();
        for (yp, ypo) in self.rows.iter().enumerate() {
            for (y, yo) in self.rows.iter().enumerate() {
                for (x, xo) in self.cols.iter().enumerate() {
                    for (xp, xpo) in self.cols.iter().enumerate() {
                        let left = q.tensor(
                            &q.tensor(&self.target.hom(ypo, yo)?, &self.vals[y][x])?,
                            &self.source.hom(xo, xpo)?,
                        )?;
                        if !q.leq(&left, &self.vals[yp][xp])? {
                            report.violate(
                                "action",
                                format!(
                                    "hom({}, {}) ∘ Φ({}, {}) ∘ hom({}, {}) = {left} ≰ Φ({}, {}) = {}",
                                    self.target.label(ypo),
                                    self.target.label(yo),
                                    self.target.label(yo),
                                    self.source.label(xo),
                                    self.source.label(xo),
                                    self.source.label(xpo),
                                    self.target.label(ypo),
                                    self.source.label(xpo),
                                    self.vals[yp][xp]
                                ),
                            );
                        }
                    }
                }
            }
        }
        Ok(report)
    }
}

/// `F_*(b, a) = hom(b, Fa)`: the left adjoint distributor represented by a
/// functor.
pub fn lower_star<R: Real>(f: &QFunctor<R>) -> Result<Distributor<R>> {
    let target = f.target().clone();
    let fun = f.clone();
    Distributor::from_rule(f.source().clone(), f.target().clone(), move |b, a| {
        target.hom(b, &fun.apply(a)?)
    })
}

/// `F^*(a, b) = hom(Fa, b)`: the right adjoint distributor represented by a
/// functor.
pub fn upper_star<R: Real>(f: &QFunctor<R>) -> Result<Distributor<R>> {
    let target = f.target().clone();
    let fun = f.clone();
    Distributor::from_rule(f.target().clone(), f.source().clone(), move |a, b| {
        target.hom(&fun.apply(a)?, b)
    })
}

/// One worst violated entry of an adjunction inequality.
#[derive(Clone, Debug)]
pub struct Defect<R> {
    pub row: String,
    pub col: String,
    pub lhs: String,
    pub rhs: String,
    /// Scalar measure of how far the inequality fails.
    pub gap: R,
}

/// Outcome of an adjunction check `Φ ⊣ Ψ`: the unit inequality
/// `hom_𝔸 ≤ Ψ∘Φ` and the counit inequality `Φ∘Ψ ≤ hom_𝔹`, each with its
/// worst violated entry when it fails.
#[derive(Clone, Debug)]
pub struct AdjunctionReport<R> {
    pub unit_holds: bool,
    pub counit_holds: bool,
    pub unit_defect: Option<Defect<R>>,
    pub counit_defect: Option<Defect<R>>,
}

impl<R: Real> AdjunctionReport<R> {
    pub fn passed(&self) -> bool {
        self.unit_holds && self.counit_holds
    }
}

fn worst_defect<R: Real>(
    lhs: &Distributor<R>,
    rhs: &Distributor<R>,
) -> Result<Option<Defect<R>>> {
    let q = lhs.source().quantale();
    let mut worst: Option<Defect<R>> = None;
    for r in 0..lhs.rows().len() {
        for c in 0..lhs.cols().len() {
            let a = lhs.entry(r, c);
            let b = rhs.entry(r, c);
            if !q.leq(a, b)? {
                let gap = q.violation_gap(a, b)?;
                let better = match &worst {
                    Some(w) => gap > w.gap,
                    None => true,
                };
                if better {
                    worst = Some(Defect {
                        row: lhs.target().label(&lhs.rows()[r]),
                        col: lhs.source().label(&lhs.cols()[c]),
                        lhs: a.to_string(),
                        rhs: b.to_string(),
                        gap,
                    });
                }
            }
        }
    }
    Ok(worst)
}

/// Checks `phi ⊣ psi` for `phi: 𝔸 ⇸ 𝔹` and `psi: 𝔹 ⇸ 𝔸`.
pub fn check_adjunction<R: Real>(
    phi: &Distributor<R>,
    psi: &Distributor<R>,
) -> Result<AdjunctionReport<R>> {
    let unit_lhs = Distributor::identity(phi.source().clone())?;
    let unit_rhs = phi.then(psi)?;
    let counit_lhs = psi.then(phi)?;
    let counit_rhs = Distributor::identity(phi.target().clone())?;
    let unit_defect = worst_defect(&unit_lhs, &unit_rhs)?;
    let counit_defect = worst_defect(&counit_lhs, &counit_rhs)?;
    Ok(AdjunctionReport {
        unit_holds: unit_defect.is_none(),
        counit_holds: counit_defect.is_none(),
        unit_defect,
        counit_defect,
    })
}

/// Searches the target enumeration for an object `u` with
/// `φ = hom(−, u)` entrywise, preferring the least index. Representing
/// objects are unique only up to isomorphism, so the tie-break keeps golden
/// outputs deterministic.
pub fn is_representable<R: Real>(phi: &Distributor<R>) -> Result<Option<Object<R>>> {
    if !phi.is_presheaf() {
        return Err(Error::InvalidArgument(
            "representability is asked of presheaves (unit-category source)".into(),
        ));
    }
    let c = phi.target();
    let q = c.quantale();
    'candidates: for u in phi.rows() {
        for (r, y) in phi.rows().iter().enumerate() {
            let hom = c.hom(y, u)?;
            if !q.eq_values(phi.at(r), &hom)? {
                continue 'candidates;
            }
        }
        return Ok(Some(u.clone()));
    }
    Ok(None)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quantale::{Quantale, QuantaleValue, TNorm};

    type V = QuantaleValue<f64>;

    fn law(x: f64) -> V {
        V::Lawvere(x)
    }

    fn three_point_metric() -> Arc<QCategory<f64>> {
        let hom = vec![
            vec![law(0.0), law(1.0), law(3.0)],
            vec![law(1.0), law(0.0), law(2.0)],
            vec![law(3.0), law(2.0), law(0.0)],
        ];
        Arc::new(QCategory::finite_unlabeled(Quantale::lawvere(), hom).unwrap())
    }

    #[test]
    fn identity_is_neutral_for_composition() {
        let c = three_point_metric();
        let id = Distributor::identity(c.clone()).unwrap();
        let psi = Distributor::from_rule(c.clone(), c.clone(), |y, x| {
            Ok(law(match (y, x) {
                (Object::Idx(i), Object::Idx(j)) => (2 * i + j) as f64 * 0.5,
                _ => unreachable!(),
            }))
        })
        .unwrap();
        // Ψ ∘ hom = Ψ needs Ψ to satisfy the action condition, so use a
        // saturated version: compose once and verify idempotence instead.
        let sat = id.then(&psi).unwrap();
        let again = id.then(&sat).unwrap();
        assert!(sat.approx_eq(&again).unwrap());

        let fstar = lower_star(&QFunctor::identity(c.clone())).unwrap();
        let composed = id.then(&fstar).unwrap();
        assert!(composed.approx_eq(&fstar).unwrap());
    }

    #[test]
    fn lower_upper_star_are_adjoint() {
        let c = three_point_metric();
        let f = QFunctor::endo_table(c.clone(), vec![0, 0, 1]).unwrap();
        let rep = check_adjunction(&lower_star(&f).unwrap(), &upper_star(&f).unwrap()).unwrap();
        assert!(rep.passed(), "{rep:?}");

        let id = QFunctor::identity(c.clone());
        let rep = check_adjunction(&lower_star(&id).unwrap(), &upper_star(&id).unwrap()).unwrap();
        assert!(rep.passed());

        // The identity distributor is self-adjoint.
        let hom = Distributor::identity(c).unwrap();
        assert!(check_adjunction(&hom, &hom).unwrap().passed());
    }

    #[test]
    fn lower_star_respects_functor_composition() {
        let c = three_point_metric();
        let f = QFunctor::endo_table(c.clone(), vec![1, 2, 0]).unwrap();
        let g = QFunctor::endo_table(c.clone(), vec![0, 0, 1]).unwrap();
        let gf = f.then(&g).unwrap();
        let lhs = lower_star(&f).unwrap().then(&lower_star(&g).unwrap()).unwrap();
        let rhs = lower_star(&gf).unwrap();
        assert!(lhs.approx_eq(&rhs).unwrap());
    }

    #[test]
    fn one_object_composition_reduces_to_tensor() {
        let q = Quantale::<f64>::lawvere();
        // One-object Lawvere category; its only hom is forced to the unit.
        let unit_cat = Arc::new(QCategory::unit_category(q));
        let phi = Distributor::from_rule(unit_cat.clone(), unit_cat.clone(), |_, _| Ok(law(3.0)))
            .unwrap();
        let psi = Distributor::from_rule(unit_cat.clone(), unit_cat.clone(), |_, _| Ok(law(4.0)))
            .unwrap();
        let comp = phi.then(&psi).unwrap();
        assert_eq!(comp.entry(0, 0), &law(7.0));
    }

    #[test]
    fn composition_is_associative_on_fixtures() {
        let c = three_point_metric();
        let f = QFunctor::endo_table(c.clone(), vec![1, 2, 0]).unwrap();
        let g = QFunctor::endo_table(c.clone(), vec![0, 0, 1]).unwrap();
        let a = lower_star(&f).unwrap();
        let b = upper_star(&g).unwrap();
        let d = Distributor::identity(c).unwrap();
        let left = a.then(&b).unwrap().then(&d).unwrap();
        let right = a.then(&b.then(&d).unwrap()).unwrap();
        assert!(left.approx_eq(&right).unwrap());
    }

    #[test]
    fn action_condition_holds_for_representables() {
        let c = three_point_metric();
        // A non-expanding collapse (the rotation would stretch the short gap
        // and fail functoriality, hence also the action condition).
        let f = QFunctor::endo_table(c, vec![0, 0, 1]).unwrap();
        assert!(crate::category::check_functor(&f).unwrap().passed());
        assert!(lower_star(&f).unwrap().check_action().unwrap().passed());
        assert!(upper_star(&f).unwrap().check_action().unwrap().passed());
    }

    #[test]
    fn representable_presheaf_is_recognized() {
        let c = three_point_metric();
        let unit_cat = Arc::new(QCategory::unit_category(c.quantale().clone()));
        let target = c.clone();
        let phi = Distributor::from_rule(unit_cat.clone(), c.clone(), move |y, _| {
            target.hom(y, &Object::Idx(1))
        })
        .unwrap();
        assert_eq!(is_representable(&phi).unwrap(), Some(Object::Idx(1)));

        // Constant-∞ presheaf over a discrete two-point space: representable
        // by nothing.
        let q = Quantale::<f64>::lawvere();
        let disc = Arc::new(
            QCategory::finite_unlabeled(
                q.clone(),
                vec![
                    vec![law(0.0), law(f64::INFINITY)],
                    vec![law(f64::INFINITY), law(0.0)],
                ],
            )
            .unwrap(),
        );
        let unit_cat = Arc::new(QCategory::unit_category(q));
        let bad = Distributor::from_rule(unit_cat, disc, |_, _| Ok(law(f64::INFINITY))).unwrap();
        assert_eq!(is_representable(&bad).unwrap(), None);
    }

    #[test]
    fn principal_downset_is_represented_by_its_generator() {
        // Chain a ≤ b ≤ c as a Boolean category; the presheaf ⟦− ≤ b⟧ is the
        // principal downset of b.
        let t = || V::Boolean(true);
        let f_ = || V::Boolean(false);
        let q = Quantale::<f64>::boolean();
        let hom = vec![
            vec![t(), t(), t()],
            vec![f_(), t(), t()],
            vec![f_(), f_(), t()],
        ];
        let c = Arc::new(QCategory::finite_unlabeled(q.clone(), hom).unwrap());
        let unit_cat = Arc::new(QCategory::unit_category(q));
        let target = c.clone();
        let phi = Distributor::from_rule(unit_cat, c, move |y, _| {
            target.hom(y, &Object::Idx(1))
        })
        .unwrap();
        assert_eq!(is_representable(&phi).unwrap(), Some(Object::Idx(1)));
    }

    #[test]
    fn functor_order_matches_lower_star_order() {
        let c = three_point_metric();
        let f = QFunctor::endo_table(c.clone(), vec![0, 0, 1]).unwrap();
        let g = QFunctor::endo_table(c.clone(), vec![0, 0, 1]).unwrap();
        let elementwise = crate::category::functor_leq(&f, &g).unwrap();
        let star = lower_star(&f).unwrap().leq(&lower_star(&g).unwrap()).unwrap();
        assert_eq!(elementwise, star);

        // A genuinely distinct pair on a symmetric metric space rarely
        // compares; the two characterizations must still agree.
        let h = QFunctor::endo_table(c, vec![1, 1, 1]).unwrap();
        let elementwise = crate::category::functor_leq(&f, &h).unwrap();
        let star = lower_star(&f).unwrap().leq(&lower_star(&h).unwrap()).unwrap();
        assert_eq!(elementwise, star);
    }

    #[test]
    fn non_cauchy_alternation_fails_adjunction() {
        // Presheaf/copresheaf pair of the alternating sequence on a two-point
        // metric space: tails meet both points, so φ ≡ ψ ≡ 1 and the unit
        // inequality 0 ≤ min_y (ψ(y) + φ(y)) = 2 fails in the reversed order.
        let q = Quantale::<f64>::lawvere();
        let c = Arc::new(
            QCategory::finite_unlabeled(
                q.clone(),
                vec![vec![law(0.0), law(1.0)], vec![law(1.0), law(0.0)]],
            )
            .unwrap(),
        );
        let unit_cat = Arc::new(QCategory::unit_category(q));
        let phi =
            Distributor::from_rule(unit_cat.clone(), c.clone(), |_, _| Ok(law(1.0))).unwrap();
        let psi = Distributor::from_rule(c, unit_cat, |_, _| Ok(law(1.0))).unwrap();
        let rep = check_adjunction(&phi, &psi).unwrap();
        assert!(!rep.passed());
        assert!(rep.unit_defect.is_some());
        let defect = rep.unit_defect.unwrap();
        assert!((defect.gap - 2.0).abs() < 1e-12);
    }

    #[test]
    fn mixed_quantales_are_rejected() {
        let c = three_point_metric();
        let fuzzy = Arc::new(
            QCategory::finite_unlabeled(
                Quantale::unit_interval(TNorm::Product),
                vec![vec![V::UnitInterval(1.0)]],
            )
            .unwrap(),
        );
        assert!(Distributor::from_rule(c, fuzzy, |_, _| Ok(law(0.0))).is_err());
    }
}
