//! Left-continuous step functions `[0, ∞] → [0, 1]`: the carrier of the
//! distance-distribution quantale.
//!
//! A [`StepDistribution`] is nondecreasing, left-continuous, and satisfies
//! `f(0) = 0` (the supremum over the empty set). It is stored as a finite
//! list of jumps: a jump at position `p` with value `v` means the function
//! equals `v` on `(p, p']` up to the next jump, and the last plateau extends
//! through `∞`. The value at `0` is always `0`, and left-continuity forbids
//! a jump at `∞` (the value there is the left limit), so jump positions are
//! finite reals `≥ 0`. The unit distribution `e` is the single jump `(0, 1)`.
//!
//! All three lattice/monoid operations are closed on this representation and
//! computed without grid discretization: join and meet are pointwise on the
//! merged jump positions, and the convolution product places its jumps on
//! pairwise sums of the input jump positions.

use crate::error::{Error, Result};
use crate::real::{r64, Real};
use std::fmt;

#[derive(Clone, Debug, PartialEq)]
pub struct StepDistribution<R> {
    /// Strictly increasing finite jump positions, each `≥ 0`.
    positions: Vec<R>,
    /// Strictly increasing plateau values in `(0, 1]`, one per jump.
    values: Vec<R>,
}

impl<R: Real> StepDistribution<R> {
    /// The constant-zero distribution (bottom of the lattice).
    pub fn zero() -> Self {
        StepDistribution {
            positions: Vec::new(),
            values: Vec::new(),
        }
    }

    /// The unit `e`: `e(0) = 0` and `e(t) = 1` for `t > 0`. Also the top element.
    pub fn unit() -> Self {
        StepDistribution {
            positions: vec![R::zero()],
            values: vec![R::one()],
        }
    }

    /// `step(b)`: `0` on `[0, b]` and `1` on `(b, ∞]`. `step(∞)` degenerates
    /// to the zero distribution.
    pub fn step_at(b: R) -> Result<Self> {
        if b < R::zero() || b.is_nan() {
            return Err(Error::InvalidStep(format!("step position {b} out of range")));
        }
        if b.is_infinite() {
            return Ok(Self::zero());
        }
        Ok(StepDistribution {
            positions: vec![b],
            values: vec![R::one()],
        })
    }

    /// Validating constructor from parallel breakpoint/value lists.
    ///
    /// Breakpoints must be finite, `≥ 0`, and strictly increasing; values must
    /// lie in `[0, 1]` and be nondecreasing. Redundant entries (zero plateaus,
    /// repeated values) are normalized away.
    pub fn new(breakpoints: Vec<R>, values: Vec<R>) -> Result<Self> {
        if breakpoints.len() != values.len() {
            return Err(Error::InvalidStep(format!(
                "{} breakpoints but {} values",
                breakpoints.len(),
                values.len()
            )));
        }
        for (i, b) in breakpoints.iter().enumerate() {
            if b.is_nan() || *b < R::zero() {
                return Err(Error::InvalidStep(format!("breakpoint {b} out of range")));
            }
            if b.is_infinite() {
                return Err(Error::InvalidStep(
                    "breakpoint at infinity has no effect under left-continuity".into(),
                ));
            }
            if i > 0 && breakpoints[i - 1] >= *b {
                return Err(Error::InvalidStep(format!(
                    "breakpoints must be strictly increasing ({} then {b})",
                    breakpoints[i - 1]
                )));
            }
        }
        for (i, v) in values.iter().enumerate() {
            if v.is_nan() || *v < R::zero() || *v > R::one() {
                return Err(Error::InvalidStep(format!("value {v} outside [0, 1]")));
            }
            if i > 0 && values[i - 1] > *v {
                return Err(Error::InvalidStep(format!(
                    "values must be nondecreasing ({} then {v})",
                    values[i - 1]
                )));
            }
        }
        let jumps: Vec<(R, R)> = breakpoints.into_iter().zip(values).collect();
        Ok(Self::from_jumps(jumps))
    }

    /// Normalizing constructor from arbitrary `(position, value)` pairs.
    ///
    /// Sorts by position, takes the running maximum of clamped values, merges
    /// equal positions, and drops plateaus that do not increase the function.
    pub fn from_jumps(mut jumps: Vec<(R, R)>) -> Self {
        jumps.retain(|(p, _)| p.is_finite() && *p >= R::zero());
        jumps.sort_by(|a, b| a.0.partial_cmp(&b.0).expect("finite positions"));
        let mut positions = Vec::new();
        let mut values: Vec<R> = Vec::new();
        for (p, v) in jumps {
            let v = v.min(R::one()).max(R::zero());
            let last = values.last().copied().unwrap_or_else(R::zero);
            if v <= last {
                continue;
            }
            if positions.last().is_some_and(|q: &R| *q == p) {
                *values.last_mut().unwrap() = v;
            } else {
                positions.push(p);
                values.push(v);
            }
        }
        StepDistribution { positions, values }
    }

    pub fn breakpoints(&self) -> &[R] {
        &self.positions
    }

    pub fn plateau_values(&self) -> &[R] {
        &self.values
    }

    pub fn is_zero(&self) -> bool {
        self.positions.is_empty()
    }

    /// The value at `∞`, i.e. the supremum of the function.
    pub fn last_value(&self) -> R {
        self.values.last().copied().unwrap_or_else(R::zero)
    }

    /// Evaluates the function at `t`. Left-continuous: at a jump position the
    /// pre-jump value is returned, and `eval(∞)` is the last plateau.
    pub fn eval(&self, t: R) -> R {
        if t <= R::zero() || t.is_nan() {
            return R::zero();
        }
        let idx = self.positions.partition_point(|p| *p < t);
        if idx == 0 {
            R::zero()
        } else {
            self.values[idx - 1]
        }
    }

    /// The value just after `t`: the plateau on `(t, t + ε)`.
    pub(crate) fn value_after(&self, t: R) -> R {
        let idx = self.positions.partition_point(|p| *p <= t);
        if idx == 0 {
            R::zero()
        } else {
            self.values[idx - 1]
        }
    }

    fn pointwise(&self, other: &Self, pick: impl Fn(R, R) -> R) -> Self {
        let mut merged: Vec<R> = Vec::with_capacity(self.positions.len() + other.positions.len());
        merged.extend_from_slice(&self.positions);
        merged.extend_from_slice(&other.positions);
        merged.sort_by(|a, b| a.partial_cmp(b).expect("finite positions"));
        merged.dedup();
        let jumps = merged
            .into_iter()
            .map(|p| (p, pick(self.value_after(p), other.value_after(p))))
            .collect();
        Self::from_jumps(jumps)
    }

    /// Pointwise maximum (the lattice join).
    pub fn join(&self, other: &Self) -> Self {
        self.pointwise(other, |a, b| a.max(b))
    }

    /// Pointwise minimum (the lattice meet). The minimum of two left-continuous
    /// step functions is again left-continuous, so no regularization is needed
    /// beyond the standard normalization.
    pub fn meet(&self, other: &Self) -> Self {
        self.pointwise(other, |a, b| a.min(b))
    }

    /// Sup-convolution `(f ∗ g)(t) = ⋁_{r+s=t} T(f(r), g(s))` for a t-norm `T`.
    ///
    /// On step functions the result is again a step function whose jumps lie on
    /// pairwise sums of the input jump positions: the plateau just above the
    /// sum `p + q` is the best `T(v, w)` over all jump pairs with `p' + q' ≤
    /// p + q`. Computed exactly over those finitely many candidates.
    pub fn convolve(&self, other: &Self, tnorm: impl Fn(R, R) -> R) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        let mut jumps = Vec::with_capacity(self.positions.len() * other.positions.len());
        for (p, v) in self.positions.iter().zip(&self.values) {
            for (q, w) in other.positions.iter().zip(&other.values) {
                jumps.push((*p + *q, tnorm(*v, *w)));
            }
        }
        jumps.sort_by(|a, b| a.0.partial_cmp(&b.0).expect("finite positions"));
        // Running maximum: later (larger-sum) pairs may carry smaller t-norm
        // values than an earlier dominating pair.
        let mut best = R::zero();
        for jump in &mut jumps {
            best = best.max(jump.1);
            jump.1 = best;
        }
        Self::from_jumps(jumps)
    }

    /// Precomposition with `t ↦ k·t` for `k > 0`: returns `u(k·t)` as a step
    /// function (each jump position divided by `k`).
    pub fn precompose_scale(&self, k: R) -> Result<Self> {
        if !(k > R::zero()) || !k.is_finite() {
            return Err(Error::InvalidArgument(format!(
                "time scale must be a positive finite real, got {k}"
            )));
        }
        let jumps = self
            .positions
            .iter()
            .zip(&self.values)
            .map(|(p, v)| (*p / k, *v))
            .collect();
        Ok(Self::from_jumps(jumps))
    }

    /// Representative evaluation points: one inside each maximal interval on
    /// which both functions are constant, after clustering jump positions
    /// closer than `pos_tol` (so that float jitter in jump positions does not
    /// register as a pointwise difference).
    fn comparison_points(&self, other: &Self, pos_tol: R) -> Vec<R> {
        let mut merged: Vec<R> = Vec::with_capacity(self.positions.len() + other.positions.len());
        merged.extend_from_slice(&self.positions);
        merged.extend_from_slice(&other.positions);
        merged.sort_by(|a, b| a.partial_cmp(b).expect("finite positions"));
        let mut reps = Vec::new();
        let mut i = 0;
        while i < merged.len() {
            let mut end = merged[i];
            let mut j = i + 1;
            while j < merged.len() && merged[j] - end <= pos_tol {
                end = merged[j];
                j += 1;
            }
            let rep = if j < merged.len() {
                (end + merged[j]) * r64(0.5)
            } else {
                end + R::one()
            };
            reps.push(rep);
            i = j;
        }
        reps
    }

    /// Pointwise order up to tolerances: `self(t) ≤ other(t) + val_tol` away
    /// from `pos_tol`-neighbourhoods of the jump positions.
    pub fn leq_within(&self, other: &Self, val_tol: R, pos_tol: R) -> bool {
        self.comparison_points(other, pos_tol)
            .into_iter()
            .all(|t| self.eval(t) <= other.eval(t) + val_tol)
    }

    /// Two-sided [`Self::leq_within`].
    pub fn approx_eq(&self, other: &Self, val_tol: R, pos_tol: R) -> bool {
        self.leq_within(other, val_tol, pos_tol) && other.leq_within(self, val_tol, pos_tol)
    }

    /// Worst pointwise amount by which `self ≤ other` fails (0 when it holds).
    pub fn leq_defect(&self, other: &Self, pos_tol: R) -> R {
        self.comparison_points(other, pos_tol)
            .into_iter()
            .map(|t| (self.eval(t) - other.eval(t)).max(R::zero()))
            .fold(R::zero(), |acc, d| acc.max(d))
    }

    /// Membership in the finitary sub-carrier: `u(∞) = 1` (within `val_tol`)
    /// or `u = 0`.
    pub fn is_finitary(&self, val_tol: R) -> bool {
        self.is_zero() || (R::one() - self.last_value()).abs() <= val_tol
    }
}

impl<R: Real> fmt::Display for StepDistribution<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        if self.positions.len() == 1 && self.positions[0] == R::zero() && self.values[0] == R::one()
        {
            return write!(f, "e");
        }
        write!(f, "step{{")?;
        for (i, (p, v)) in self.positions.iter().zip(&self.values).enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{p}→{v}")?;
        }
        write!(f, "}}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    type Step = StepDistribution<f64>;

    const TOL: f64 = 1e-9;

    fn tmin(a: f64, b: f64) -> f64 {
        a.min(b)
    }

    #[test]
    fn zero_everywhere() {
        let z = Step::zero();
        for t in [0.0, 0.5, 3.0, f64::INFINITY] {
            assert_eq!(z.eval(t), 0.0);
        }
    }

    #[test]
    fn unit_is_one_above_zero() {
        let e = Step::unit();
        assert_eq!(e.eval(0.0), 0.0);
        assert_eq!(e.eval(1e-12), 1.0);
        assert_eq!(e.eval(f64::INFINITY), 1.0);
    }

    #[test]
    fn value_at_zero_is_always_zero() {
        let f = Step::new(vec![0.0, 1.0], vec![0.3, 0.9]).unwrap();
        assert_eq!(f.eval(0.0), 0.0);
        // Left-continuity at each jump: the pre-jump value is returned.
        assert_eq!(f.eval(1.0), 0.3);
        assert_eq!(f.eval(1.0 + 1e-12), 0.9);
    }

    #[test]
    fn new_rejects_malformed_input() {
        assert!(Step::new(vec![1.0], vec![0.5, 0.6]).is_err());
        assert!(Step::new(vec![2.0, 1.0], vec![0.2, 0.4]).is_err());
        assert!(Step::new(vec![1.0, 2.0], vec![0.5, 0.4]).is_err());
        assert!(Step::new(vec![1.0], vec![1.5]).is_err());
        assert!(Step::new(vec![-1.0], vec![0.5]).is_err());
        assert!(Step::new(vec![f64::INFINITY], vec![0.5]).is_err());
    }

    #[test]
    fn normalization_drops_redundant_jumps() {
        let f = Step::from_jumps(vec![(2.0, 0.5), (1.0, 0.5), (3.0, 0.5), (4.0, 0.9)]);
        assert_eq!(f.breakpoints(), &[1.0, 4.0]);
        assert_eq!(f.plateau_values(), &[0.5, 0.9]);
    }

    #[test]
    fn join_meet_match_pointwise_probe() {
        let f = Step::new(vec![0.5, 2.0], vec![0.3, 0.8]).unwrap();
        let g = Step::new(vec![1.0], vec![0.6]).unwrap();
        let j = f.join(&g);
        let m = f.meet(&g);
        for k in 0..200 {
            let t = 0.025 * k as f64 + 0.0125;
            assert!((j.eval(t) - f.eval(t).max(g.eval(t))).abs() <= TOL, "join at {t}");
            assert!((m.eval(t) - f.eval(t).min(g.eval(t))).abs() <= TOL, "meet at {t}");
        }
    }

    #[test]
    fn convolution_of_crisp_steps_adds_positions() {
        let f = Step::step_at(1.0).unwrap();
        let g = Step::step_at(2.0).unwrap();
        let h = f.convolve(&g, tmin);
        assert_eq!(h, Step::step_at(3.0).unwrap());
    }

    #[test]
    fn unit_is_neutral_for_convolution() {
        let f = Step::new(vec![0.5, 2.0], vec![0.3, 0.8]).unwrap();
        let e = Step::unit();
        assert_eq!(f.convolve(&e, tmin), f);
        assert_eq!(e.convolve(&f, tmin), f);
    }

    #[test]
    fn convolution_with_zero_annihilates() {
        let f = Step::new(vec![0.5], vec![0.4]).unwrap();
        assert!(f.convolve(&Step::zero(), tmin).is_zero());
    }

    #[test]
    fn precompose_scale_divides_positions() {
        let f = Step::new(vec![1.0, 4.0], vec![0.5, 1.0]).unwrap();
        let g = f.precompose_scale(2.0).unwrap();
        assert_eq!(g.breakpoints(), &[0.5, 2.0]);
        assert_eq!(g.plateau_values(), &[0.5, 1.0]);
        assert!(f.precompose_scale(0.0).is_err());
    }

    #[test]
    fn comparison_ignores_position_jitter() {
        let f = Step::new(vec![1.0], vec![0.7]).unwrap();
        let g = Step::new(vec![1.0 + 1e-13], vec![0.7]).unwrap();
        assert!(f.approx_eq(&g, TOL, TOL));
        let h = Step::new(vec![1.5], vec![0.7]).unwrap();
        assert!(!f.approx_eq(&h, TOL, TOL));
        assert!(h.leq_within(&f, TOL, TOL));
        assert!(!f.leq_within(&h, TOL, TOL));
    }

    #[test]
    fn finitary_predicate() {
        assert!(Step::zero().is_finitary(TOL));
        assert!(Step::unit().is_finitary(TOL));
        assert!(Step::step_at(3.0).unwrap().is_finitary(TOL));
        let half = Step::from_jumps(vec![(0.0, 0.5)]);
        assert!(!half.is_finitary(TOL));
    }
}
