//! Categories enriched in a quantale: a carrier of objects with a
//! quantale-valued hom satisfying the composition and identity laws
//!
//! ```text
//! hom(x, y) ∘ hom(y, z) ≤ hom(x, z)        unit ≤ hom(x, x)
//! ```
//!
//! Finite carriers store a dense hom matrix and support exhaustive checks
//! and searches. Rule-based carriers (for continuum examples such as the
//! real line with `d(x, y) = |x − y|`) expose a hom evaluation rule, a
//! finite probe set used for sampled axiom checks, and an optional search
//! hint: a finite candidate set consulted by representability queries.

use crate::error::{Error, Result};
use crate::quantale::{Quantale, QuantaleValue};
use crate::real::Real;
use crate::report::{CheckReport, Scope};
use std::fmt;
use std::sync::Arc;

/// An object of a Q-category: an index into a finite carrier, or a point of
/// a rule-based (real-line) carrier.
#[derive(Clone, Debug, PartialEq)]
pub enum Object<R> {
    Idx(usize),
    Real(R),
}

impl<R: Real> fmt::Display for Object<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Object::Idx(i) => write!(f, "#{i}"),
            Object::Real(x) => write!(f, "{x}"),
        }
    }
}

type HomRule<R> = Arc<dyn Fn(&Object<R>, &Object<R>) -> QuantaleValue<R> + Send + Sync>;

#[derive(Clone)]
enum Carrier<R> {
    Finite {
        labels: Vec<String>,
        hom: Vec<Vec<QuantaleValue<R>>>,
    },
    Rule {
        name: String,
        hom: HomRule<R>,
        probe: Vec<Object<R>>,
        hint: Option<Vec<Object<R>>>,
    },
}

/// A quantale-enriched category.
#[derive(Clone)]
pub struct QCategory<R> {
    quantale: Quantale<R>,
    carrier: Carrier<R>,
}

impl<R: Real> fmt::Debug for QCategory<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.carrier {
            Carrier::Finite { labels, .. } => write!(
                f,
                "QCategory({}, finite: {:?})",
                self.quantale.tag(),
                labels
            ),
            Carrier::Rule { name, .. } => {
                write!(f, "QCategory({}, rule: {name})", self.quantale.tag())
            }
        }
    }
}

impl<R: Real> QCategory<R> {
    /// Finite category from a hom matrix; `hom[i][j]` is the hom from object
    /// `i` to object `j`. Entries must be square and from the quantale's
    /// instance; the category axioms are *not* enforced here (see
    /// [`check_category`]).
    pub fn finite(
        quantale: Quantale<R>,
        labels: Vec<String>,
        hom: Vec<Vec<QuantaleValue<R>>>,
    ) -> Result<Self> {
        let n = labels.len();
        if hom.len() != n || hom.iter().any(|row| row.len() != n) {
            return Err(Error::InvalidArgument(format!(
                "hom matrix must be {n}x{n} to match the objects"
            )));
        }
        for row in &hom {
            for v in row {
                if v.tag() != quantale.tag() {
                    return Err(Error::InstanceMismatch {
                        op: "category hom entry",
                        left: quantale.tag().name(),
                        right: v.tag().name(),
                    });
                }
            }
        }
        Ok(QCategory {
            quantale,
            carrier: Carrier::Finite { labels, hom },
        })
    }

    /// Like [`QCategory::finite`] with default labels `"0", "1", …`.
    pub fn finite_unlabeled(quantale: Quantale<R>, hom: Vec<Vec<QuantaleValue<R>>>) -> Result<Self> {
        let labels = (0..hom.len()).map(|i| i.to_string()).collect();
        Self::finite(quantale, labels, hom)
    }

    /// Rule-based category: hom evaluation plus a finite probe set for
    /// sampled axiom checks and an optional search hint for representability
    /// queries.
    pub fn rule(
        quantale: Quantale<R>,
        name: impl Into<String>,
        hom: HomRule<R>,
        probe: Vec<Object<R>>,
        hint: Option<Vec<Object<R>>>,
    ) -> Self {
        QCategory {
            quantale,
            carrier: Carrier::Rule {
                name: name.into(),
                hom,
                probe,
                hint,
            },
        }
    }

    /// The one-object category whose single hom is the unit.
    pub fn unit_category(quantale: Quantale<R>) -> Self {
        let unit = quantale.unit();
        QCategory {
            quantale,
            carrier: Carrier::Finite {
                labels: vec!["*".into()],
                hom: vec![vec![unit]],
            },
        }
    }

    pub fn quantale(&self) -> &Quantale<R> {
        &self.quantale
    }

    pub fn is_finite(&self) -> bool {
        matches!(self.carrier, Carrier::Finite { .. })
    }

    /// Number of objects of a finite carrier.
    pub fn len(&self) -> Option<usize> {
        match &self.carrier {
            Carrier::Finite { labels, .. } => Some(labels.len()),
            Carrier::Rule { .. } => None,
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == Some(0)
    }

    /// All objects of a finite carrier.
    pub fn objects(&self) -> Option<Vec<Object<R>>> {
        match &self.carrier {
            Carrier::Finite { labels, .. } => {
                Some((0..labels.len()).map(Object::Idx).collect())
            }
            Carrier::Rule { .. } => None,
        }
    }

    /// The finite object set used for searches: all objects when finite, the
    /// search hint otherwise.
    pub fn search_space(&self) -> Option<Vec<Object<R>>> {
        match &self.carrier {
            Carrier::Finite { .. } => self.objects(),
            Carrier::Rule { hint, .. } => hint.clone(),
        }
    }

    /// The finite object set used for sampled checks: all objects when
    /// finite, the probe set otherwise.
    pub fn probe_space(&self) -> Vec<Object<R>> {
        match &self.carrier {
            Carrier::Finite { .. } => self.objects().unwrap_or_default(),
            Carrier::Rule { probe, .. } => probe.clone(),
        }
    }

    pub fn label(&self, obj: &Object<R>) -> String {
        match (&self.carrier, obj) {
            (Carrier::Finite { labels, .. }, Object::Idx(i)) if *i < labels.len() => {
                labels[*i].clone()
            }
            _ => obj.to_string(),
        }
    }

    /// Resolves a label (or decimal index) of a finite carrier.
    pub fn object_by_label(&self, label: &str) -> Result<Object<R>> {
        match &self.carrier {
            Carrier::Finite { labels, .. } => {
                if let Some(i) = labels.iter().position(|l| l == label) {
                    return Ok(Object::Idx(i));
                }
                if let Ok(i) = label.parse::<usize>() {
                    if i < labels.len() {
                        return Ok(Object::Idx(i));
                    }
                }
                Err(Error::UnknownObject(label.into()))
            }
            Carrier::Rule { .. } => label
                .parse::<f64>()
                .ok()
                .and_then(R::from_f64)
                .map(Object::Real)
                .ok_or_else(|| Error::UnknownObject(label.into())),
        }
    }

    pub fn hom(&self, x: &Object<R>, y: &Object<R>) -> Result<QuantaleValue<R>> {
        match (&self.carrier, x, y) {
            (Carrier::Finite { hom, .. }, Object::Idx(i), Object::Idx(j)) => {
                if *i >= hom.len() || *j >= hom.len() {
                    return Err(Error::UnknownObject(format!("#{i} or #{j}")));
                }
                Ok(hom[*i][*j].clone())
            }
            (Carrier::Rule { hom, .. }, _, _) => Ok(hom(x, y)),
            _ => Err(Error::UnknownObject(format!("{x} or {y}"))),
        }
    }

    /// The underlying order on objects: `x ≤ y` iff `unit ≤ hom(x, y)`.
    pub fn object_leq(&self, x: &Object<R>, y: &Object<R>) -> Result<bool> {
        self.quantale.is_above_unit(&self.hom(x, y)?)
    }

    /// Isomorphy of objects: order in both directions.
    pub fn object_iso(&self, x: &Object<R>, y: &Object<R>) -> Result<bool> {
        Ok(self.object_leq(x, y)? && self.object_leq(y, x)?)
    }

    /// True when every hom between probe objects is symmetric.
    pub fn is_symmetric(&self) -> Result<bool> {
        let objs = self.probe_space();
        for x in &objs {
            for y in &objs {
                let fwd = self.hom(x, y)?;
                let bwd = self.hom(y, x)?;
                if !self.quantale.eq_values(&fwd, &bwd)? {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }

    /// True when no hom between probe objects is the bottom element.
    pub fn all_homs_non_bottom(&self) -> Result<bool> {
        let objs = self.probe_space();
        for x in &objs {
            for y in &objs {
                if self.quantale.is_bottom(&self.hom(x, y)?)? {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }

    /// Repairs a finite hom matrix into a category: forces `unit ≤ hom(x, x)`
    /// by joining the unit onto the diagonal, then closes transitively
    /// (Floyd-Warshall over join/tensor). All four instances are integral,
    /// so paths through cycles never beat simple paths and one sweep per
    /// intermediate object suffices.
    pub fn transitively_closed(&self) -> Result<QCategory<R>> {
        let Carrier::Finite { labels, hom } = &self.carrier else {
            return Err(Error::Unsupported(
                "transitive closure needs a finite carrier".into(),
            ));
        };
        let q = &self.quantale;
        let n = labels.len();
        let mut m = hom.clone();
        let unit = q.unit();
        for (i, row) in m.iter_mut().enumerate() {
            row[i] = q.join2(&row[i], &unit)?;
        }
        for k in 0..n {
            for i in 0..n {
                for j in 0..n {
                    let via = q.tensor(&m[i][k], &m[k][j])?;
                    m[i][j] = q.join2(&m[i][j], &via)?;
                }
            }
        }
        QCategory::finite(q.clone(), labels.clone(), m)
    }
}

/// Checks the composition and identity laws. Exhaustive on finite carriers,
/// probe-sampled on rule-based ones (disclosed in the report).
pub fn check_category<R: Real>(c: &QCategory<R>) -> Result<CheckReport> {
    let objs = c.probe_space();
    let scope = if c.is_finite() {
        Scope::Exhaustive
    } else {
        Scope::Sampled { cases: objs.len() }
    };
    let mut report = CheckReport::new("category-axioms", scope);
    if !c.is_finite() {
        report.note("rule-based carrier: laws checked on the declared probe set only");
    }
    let q = c.quantale();
    for x in &objs {
        let selfhom = c.hom(x, x)?;
        if !q.is_above_unit(&selfhom)? {
            report.violate(
                "identity",
                format!("unit ≰ hom({0}, {0}) = {selfhom}", c.label(x)),
            );
        }
    }
    for x in &objs {
        for y in &objs {
            for z in &objs {
                let xy = c.hom(x, y)?;
                let yz = c.hom(y, z)?;
                let xz = c.hom(x, z)?;
                let comp = q.tensor(&xy, &yz)?;
                if !q.leq(&comp, &xz)? {
                    report.violate(
                        "composition",
                        format!(
                            "hom({x}, {y}) ∘ hom({y}, {z}) = {comp} ≰ hom({x}, {z}) = {xz}",
                            x = c.label(x),
                            y = c.label(y),
                            z = c.label(z)
                        ),
                    );
                }
            }
        }
    }
    Ok(report)
}

type ObjectMap<R> = Arc<dyn Fn(&Object<R>) -> Object<R> + Send + Sync>;

#[derive(Clone)]
enum FunctorMap<R> {
    Table(Vec<usize>),
    Rule(ObjectMap<R>),
}

/// A structure-preserving map of Q-categories:
/// `hom(x, y) ≤ hom(Fx, Fy)`.
#[derive(Clone)]
pub struct QFunctor<R> {
    source: Arc<QCategory<R>>,
    target: Arc<QCategory<R>>,
    map: FunctorMap<R>,
}

impl<R: Real> fmt::Debug for QFunctor<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.map {
            FunctorMap::Table(t) => write!(f, "QFunctor(table {t:?})"),
            FunctorMap::Rule(_) => write!(f, "QFunctor(rule)"),
        }
    }
}

impl<R: Real> QFunctor<R> {
    /// Functor between finite carriers given by an index table.
    pub fn table(
        source: Arc<QCategory<R>>,
        target: Arc<QCategory<R>>,
        map: Vec<usize>,
    ) -> Result<Self> {
        let Some(n) = source.len() else {
            return Err(Error::Unsupported("table functor needs a finite source".into()));
        };
        let Some(m) = target.len() else {
            return Err(Error::Unsupported("table functor needs a finite target".into()));
        };
        if !source.quantale().same_structure(target.quantale()) {
            return Err(Error::Incompatible(
                "functor endpoints must share the quantale".into(),
            ));
        }
        if map.len() != n || map.iter().any(|&j| j >= m) {
            return Err(Error::InvalidArgument(format!(
                "functor table must map {n} objects into 0..{m}"
            )));
        }
        Ok(QFunctor {
            source,
            target,
            map: FunctorMap::Table(map),
        })
    }

    /// Endomap of a finite carrier.
    pub fn endo_table(category: Arc<QCategory<R>>, map: Vec<usize>) -> Result<Self> {
        Self::table(category.clone(), category, map)
    }

    /// Rule-based functor.
    pub fn rule(source: Arc<QCategory<R>>, target: Arc<QCategory<R>>, map: ObjectMap<R>) -> Result<Self> {
        if !source.quantale().same_structure(target.quantale()) {
            return Err(Error::Incompatible(
                "functor endpoints must share the quantale".into(),
            ));
        }
        Ok(QFunctor {
            source,
            target,
            map: FunctorMap::Rule(map),
        })
    }

    pub fn identity(category: Arc<QCategory<R>>) -> Self {
        match category.len() {
            Some(n) => QFunctor {
                source: category.clone(),
                target: category,
                map: FunctorMap::Table((0..n).collect()),
            },
            None => QFunctor {
                source: category.clone(),
                target: category,
                map: FunctorMap::Rule(Arc::new(|x: &Object<R>| x.clone())),
            },
        }
    }

    pub fn source(&self) -> &Arc<QCategory<R>> {
        &self.source
    }

    pub fn target(&self) -> &Arc<QCategory<R>> {
        &self.target
    }

    pub fn is_endo(&self) -> bool {
        Arc::ptr_eq(&self.source, &self.target)
    }

    pub fn apply(&self, x: &Object<R>) -> Result<Object<R>> {
        match (&self.map, x) {
            (FunctorMap::Table(t), Object::Idx(i)) => t
                .get(*i)
                .map(|&j| Object::Idx(j))
                .ok_or_else(|| Error::UnknownObject(format!("#{i}"))),
            (FunctorMap::Rule(f), _) => Ok(f(x)),
            _ => Err(Error::UnknownObject(x.to_string())),
        }
    }

    /// Composition `other ∘ self` (apply `self` first).
    pub fn then(&self, other: &QFunctor<R>) -> Result<QFunctor<R>> {
        match (&self.map, &other.map) {
            (FunctorMap::Table(f), FunctorMap::Table(g)) => {
                let composed = f.iter().map(|&i| g[i]).collect();
                QFunctor::table(self.source.clone(), other.target.clone(), composed)
            }
            _ => {
                let f = self.clone();
                let g = other.clone();
                QFunctor::rule(
                    self.source.clone(),
                    other.target.clone(),
                    Arc::new(move |x| {
                        let mid = f.apply(x).expect("composition applies the first functor");
                        g.apply(&mid).expect("composition applies the second functor")
                    }),
                )
            }
        }
    }
}

/// Checks functoriality: `hom(x', x) ≤ hom(Fx', Fx)` on the probe set.
pub fn check_functor<R: Real>(f: &QFunctor<R>) -> Result<CheckReport> {
    let objs = f.source().probe_space();
    let scope = if f.source().is_finite() {
        Scope::Exhaustive
    } else {
        Scope::Sampled { cases: objs.len() }
    };
    let mut report = CheckReport::new("functoriality", scope);
    if !f.source().is_finite() {
        report.note("rule-based carrier: checked on the declared probe set only");
    }
    let q = f.source().quantale();
    for x in &objs {
        for y in &objs {
            let fx = f.apply(x)?;
            let fy = f.apply(y)?;
            let before = f.source().hom(x, y)?;
            let after = f.target().hom(&fx, &fy)?;
            if !q.leq(&before, &after)? {
                report.violate(
                    "functoriality",
                    format!(
                        "hom({}, {}) = {before} ≰ hom(F·, F·) = {after}",
                        f.source().label(x),
                        f.source().label(y)
                    ),
                );
            }
        }
    }
    Ok(report)
}

/// Local order on parallel functors, computed elementwise:
/// `F ≤ G` iff `unit ≤ hom(Fa, Ga)` for every probe object `a`.
pub fn functor_leq<R: Real>(f: &QFunctor<R>, g: &QFunctor<R>) -> Result<bool> {
    if !f.source().quantale().same_structure(g.source().quantale()) {
        return Err(Error::Incompatible("functors over different quantales".into()));
    }
    for a in &f.source().probe_space() {
        let fa = f.apply(a)?;
        let ga = g.apply(a)?;
        if !f.target().object_leq(&fa, &ga)? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Isomorphy of parallel functors: order in both directions.
pub fn functor_iso<R: Real>(f: &QFunctor<R>, g: &QFunctor<R>) -> Result<bool> {
    Ok(functor_leq(f, g)? && functor_leq(g, f)?)
}
