//! The way-below relation and finite-lattice support.
//!
//! `a ≪ b` holds when every directed set whose supremum dominates `b`
//! already contains a member dominating `a`. On a complete *linear* lattice
//! this reduces to a closed form: `a ≪ b` iff `a` is bottom, or `a < b`, or
//! (`a = b` and `b ≠ ⋁{x | x < b}`, i.e. `b` is not approached from below).
//!
//! For the three linear instances the closed form is evaluated against the
//! full continuum carrier; on the distance-distribution instance the relation
//! is left unsupported (whether that lattice is continuous is open). User
//! fixtures may instead declare a finite sub-lattice, where the relation is
//! decided by brute-force enumeration of directed subsets.

use crate::error::{Error, Result};
use crate::quantale::{InstanceTag, Quantale, QuantaleValue};
use crate::real::Real;

/// Why a way-below query holds or fails.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum WayBelowRationale {
    /// `a` is the bottom element.
    ZeroCase,
    /// `a` is strictly below `b`.
    StrictBelow,
    /// `a = b` and `b` is isolated from below (not the supremum of the
    /// strictly smaller elements).
    IsolatedEqual,
    Refuted,
}

/// The outcome of a way-below query, with its justification.
#[derive(Clone, Debug)]
pub struct WayBelowWitness<R> {
    pub a: QuantaleValue<R>,
    pub b: QuantaleValue<R>,
    pub holds: bool,
    pub rationale: WayBelowRationale,
}

impl<R: Real> WayBelowWitness<R> {
    fn new(a: QuantaleValue<R>, b: QuantaleValue<R>, rationale: WayBelowRationale) -> Self {
        WayBelowWitness {
            a,
            b,
            holds: rationale != WayBelowRationale::Refuted,
            rationale,
        }
    }
}

/// Way-below on the full carrier of a linear instance, by the closed form.
///
/// In the continuum carriers (`[0,∞]`, `[0,1]`) every non-bottom element is
/// the supremum of the strictly smaller ones, so the isolated-equal case can
/// only arise in the Boolean instance. The distance-distribution instance is
/// unsupported.
pub fn way_below<R: Real>(
    q: &Quantale<R>,
    a: &QuantaleValue<R>,
    b: &QuantaleValue<R>,
) -> Result<WayBelowWitness<R>> {
    if a.tag() != q.tag() || b.tag() != q.tag() {
        return Err(Error::InstanceMismatch {
            op: "way_below",
            left: q.tag().name(),
            right: if a.tag() != q.tag() { a.tag() } else { b.tag() }.name(),
        });
    }
    if q.tag() == InstanceTag::Delta {
        return Err(Error::Unsupported(
            "way-below on the distance-distribution lattice (continuity is an open question)"
                .into(),
        ));
    }
    let rationale = if q.is_bottom(a)? {
        WayBelowRationale::ZeroCase
    } else if q.leq(a, b)? && !q.eq_values(a, b)? {
        WayBelowRationale::StrictBelow
    } else if q.eq_values(a, b)? && q.tag() == InstanceTag::Boolean {
        // b = 1 in the Boolean lattice: ⋁{x | x < 1} = 0 ≠ 1.
        WayBelowRationale::IsolatedEqual
    } else {
        WayBelowRationale::Refuted
    };
    Ok(WayBelowWitness::new(a.clone(), b.clone(), rationale))
}

/// A user-declared finite sub-lattice of a quantale's carrier.
///
/// The elements must be closed under pairwise join and meet (checked at
/// construction). Within a finite lattice the way-below relation is decided
/// by enumerating directed subsets, which also serves as the oracle for the
/// linear closed form on chains.
#[derive(Clone, Debug)]
pub struct FiniteLattice<R> {
    quantale: Quantale<R>,
    elements: Vec<QuantaleValue<R>>,
}

impl<R: Real> FiniteLattice<R> {
    pub fn new(quantale: Quantale<R>, elements: Vec<QuantaleValue<R>>) -> Result<Self> {
        if elements.is_empty() {
            return Err(Error::InvalidArgument("finite lattice needs elements".into()));
        }
        if elements.len() > 20 {
            return Err(Error::InvalidArgument(
                "finite lattice enumeration is limited to 20 elements".into(),
            ));
        }
        let lat = FiniteLattice { quantale, elements };
        for a in &lat.elements {
            for b in &lat.elements {
                let j = lat.quantale.join2(a, b)?;
                let m = lat.quantale.meet2(a, b)?;
                if lat.index_of(&j)?.is_none() || lat.index_of(&m)?.is_none() {
                    return Err(Error::InvalidArgument(format!(
                        "elements are not closed under join/meet (witness {a}, {b})"
                    )));
                }
            }
        }
        Ok(lat)
    }

    pub fn elements(&self) -> &[QuantaleValue<R>] {
        &self.elements
    }

    pub fn quantale(&self) -> &Quantale<R> {
        &self.quantale
    }

    fn index_of(&self, v: &QuantaleValue<R>) -> Result<Option<usize>> {
        for (i, e) in self.elements.iter().enumerate() {
            if self.quantale.eq_values(e, v)? {
                return Ok(Some(i));
            }
        }
        Ok(None)
    }

    /// True when the total order restricted to the elements is linear.
    pub fn is_chain(&self) -> Result<bool> {
        for a in &self.elements {
            for b in &self.elements {
                if !self.quantale.leq(a, b)? && !self.quantale.leq(b, a)? {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }

    fn bottom(&self) -> Result<QuantaleValue<R>> {
        self.quantale.meet(self.elements.iter())
    }

    /// Decides `a ≪ b` inside this lattice by enumerating every directed
    /// subset `D` and checking `b ≤ ⋁D ⟹ ∃d ∈ D: a ≤ d`.
    pub fn way_below_enumerated(
        &self,
        a: &QuantaleValue<R>,
        b: &QuantaleValue<R>,
    ) -> Result<WayBelowWitness<R>> {
        let q = &self.quantale;
        let n = self.elements.len();
        let mut holds = true;
        'subsets: for mask in 1usize..(1 << n) {
            let subset: Vec<&QuantaleValue<R>> = (0..n)
                .filter(|i| mask & (1 << i) != 0)
                .map(|i| &self.elements[i])
                .collect();
            // Directedness: every pair has an upper bound inside the subset.
            for x in &subset {
                for y in &subset {
                    let mut bounded = false;
                    for z in &subset {
                        if q.leq(x, z)? && q.leq(y, z)? {
                            bounded = true;
                            break;
                        }
                    }
                    if !bounded {
                        continue 'subsets;
                    }
                }
            }
            let sup = q.join(subset.iter().copied())?;
            if q.leq(b, &sup)? {
                let mut witnessed = false;
                for d in &subset {
                    if q.leq(a, d)? {
                        witnessed = true;
                        break;
                    }
                }
                if !witnessed {
                    holds = false;
                    break;
                }
            }
        }
        let rationale = if !holds {
            WayBelowRationale::Refuted
        } else if q.eq_values(a, &self.bottom()?)? {
            WayBelowRationale::ZeroCase
        } else if q.leq(a, b)? && !q.eq_values(a, b)? {
            WayBelowRationale::StrictBelow
        } else {
            WayBelowRationale::IsolatedEqual
        };
        Ok(WayBelowWitness::new(a.clone(), b.clone(), rationale))
    }

    /// The linear closed form evaluated inside this lattice (requires a
    /// chain): `a ≪ b` iff `a` is the least element, or `a < b`, or
    /// (`a = b` and `b ≠ ⋁{x ∈ L | x < b}`).
    pub fn way_below_linear(
        &self,
        a: &QuantaleValue<R>,
        b: &QuantaleValue<R>,
    ) -> Result<WayBelowWitness<R>> {
        if !self.is_chain()? {
            return Err(Error::Unsupported(
                "the linear way-below characterization needs a chain".into(),
            ));
        }
        let q = &self.quantale;
        let rationale = if q.eq_values(a, &self.bottom()?)? {
            WayBelowRationale::ZeroCase
        } else if q.leq(a, b)? && !q.eq_values(a, b)? {
            WayBelowRationale::StrictBelow
        } else if q.eq_values(a, b)? {
            let mut below = Vec::new();
            for x in &self.elements {
                if q.leq(x, b)? && !q.eq_values(x, b)? {
                    below.push(x.clone());
                }
            }
            let sup_below = q.join(below.iter())?;
            if q.eq_values(&sup_below, b)? {
                WayBelowRationale::Refuted
            } else {
                WayBelowRationale::IsolatedEqual
            }
        } else {
            WayBelowRationale::Refuted
        };
        Ok(WayBelowWitness::new(a.clone(), b.clone(), rationale))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quantale::TNorm;

    type V = QuantaleValue<f64>;

    fn ui(x: f64) -> V {
        V::UnitInterval(x)
    }

    #[test]
    fn strict_below_holds_in_the_continuum() {
        let q = Quantale::<f64>::unit_interval(TNorm::Product);
        let w = way_below(&q, &ui(0.3), &ui(0.5)).unwrap();
        assert!(w.holds);
        assert_eq!(w.rationale, WayBelowRationale::StrictBelow);
    }

    #[test]
    fn reflexive_case_refuted_in_the_continuum() {
        // The directed set {0.5 - 1/n} has supremum 0.5 but no member ≥ 0.5.
        let q = Quantale::<f64>::unit_interval(TNorm::Product);
        let w = way_below(&q, &ui(0.5), &ui(0.5)).unwrap();
        assert!(!w.holds);
        assert_eq!(w.rationale, WayBelowRationale::Refuted);
    }

    #[test]
    fn lawvere_uses_the_reversed_order() {
        let q = Quantale::<f64>::lawvere();
        // Bottom is ∞; strictly below means numerically greater.
        let w = way_below(&q, &V::Lawvere(f64::INFINITY), &V::Lawvere(1.0)).unwrap();
        assert_eq!(w.rationale, WayBelowRationale::ZeroCase);
        let w = way_below(&q, &V::Lawvere(2.0), &V::Lawvere(1.0)).unwrap();
        assert_eq!(w.rationale, WayBelowRationale::StrictBelow);
        let w = way_below(&q, &V::Lawvere(1.0), &V::Lawvere(1.0)).unwrap();
        assert!(!w.holds);
        // The unit 0 is approached from below (numerically from above), so it
        // is not way below itself, yet every positive distance is: the lattice
        // is continuous at the unit.
        let w = way_below(&q, &V::Lawvere(0.0), &V::Lawvere(0.0)).unwrap();
        assert!(!w.holds);
        let w = way_below(&q, &V::Lawvere(0.25), &V::Lawvere(0.0)).unwrap();
        assert!(w.holds);
    }

    #[test]
    fn boolean_top_is_isolated() {
        let q = Quantale::<f64>::boolean();
        let w = way_below(&q, &V::Boolean(true), &V::Boolean(true)).unwrap();
        assert!(w.holds);
        assert_eq!(w.rationale, WayBelowRationale::IsolatedEqual);
        let w = way_below(&q, &V::Boolean(true), &V::Boolean(false)).unwrap();
        assert!(!w.holds);
    }

    #[test]
    fn delta_is_unsupported() {
        let q = Quantale::<f64>::delta(TNorm::Minimum);
        let e = QuantaleValue::Delta(crate::step::StepDistribution::unit());
        assert!(matches!(
            way_below(&q, &e, &e),
            Err(Error::Unsupported(_))
        ));
    }

    #[test]
    fn finite_chain_self_way_below() {
        let q = Quantale::<f64>::unit_interval(TNorm::Product);
        let lat = FiniteLattice::new(q, vec![ui(0.0), ui(0.5), ui(1.0)]).unwrap();
        let w = lat.way_below_enumerated(&ui(0.5), &ui(0.5)).unwrap();
        assert!(w.holds);
        assert_eq!(w.rationale, WayBelowRationale::IsolatedEqual);
        let lin = lat.way_below_linear(&ui(0.5), &ui(0.5)).unwrap();
        assert!(lin.holds);
        assert_eq!(lin.rationale, WayBelowRationale::IsolatedEqual);
    }

    #[test]
    fn enumeration_agrees_with_linear_form_on_a_chain() {
        let q = Quantale::<f64>::lawvere();
        let elems: Vec<V> = [0.0, 0.5, 1.0, 2.0, f64::INFINITY]
            .iter()
            .map(|x| V::Lawvere(*x))
            .collect();
        let lat = FiniteLattice::new(q, elems.clone()).unwrap();
        for a in &elems {
            for b in &elems {
                let brute = lat.way_below_enumerated(a, b).unwrap();
                let linear = lat.way_below_linear(a, b).unwrap();
                assert_eq!(brute.holds, linear.holds, "a={a} b={b}");
                assert_eq!(brute.rationale, linear.rationale, "a={a} b={b}");
            }
        }
    }

    #[test]
    fn lattice_must_be_closed() {
        use crate::step::StepDistribution;
        let q = Quantale::<f64>::delta(TNorm::Minimum);
        // Two incomparable step functions without their pointwise join.
        let f = V::Delta(StepDistribution::new(vec![0.5], vec![0.6]).unwrap());
        let g = V::Delta(StepDistribution::new(vec![1.0], vec![0.8]).unwrap());
        assert!(FiniteLattice::new(q.clone(), vec![f, g]).is_err());
        assert!(FiniteLattice::new(q, vec![]).is_err());
    }
}
