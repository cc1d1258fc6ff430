//! Shared generators and independent oracles for the integration suites.
//!
//! Everything here recomputes expectations from scratch (dense grids, brute
//! force) and never calls the kernel paths it is used to check.

use qcat::category::QCategory;
use qcat::quantale::{Quantale, QuantaleValue, TNorm};
use qcat::step::StepDistribution;
use rand::rngs::StdRng;
use rand::Rng;

pub const PITCH: f64 = 1e-3;

/// Random step distribution with jump positions on the `PITCH` grid and
/// plateau values on a 0.05 grid. Keeping test data on coarse lattices makes
/// the dense-grid comparisons immune to float jitter at jump edges.
pub fn random_grid_step(rng: &mut StdRng, max_jumps: usize, max_pos_ticks: u32) -> StepDistribution<f64> {
    let jumps = rng.gen_range(0..=max_jumps);
    let mut pairs = Vec::with_capacity(jumps);
    for _ in 0..jumps {
        let pos = rng.gen_range(0..=max_pos_ticks) as f64 * PITCH;
        let val = rng.gen_range(1..=20) as f64 * 0.05;
        pairs.push((pos, val));
    }
    StepDistribution::from_jumps(pairs)
}

/// Dense-grid value of the sup-convolution `(f ∗ g)(t)`: the supremum over a
/// quarter-pitch sweep of `r` of `T(f(r), g(t − r))`. Exact for grid-aligned
/// inputs evaluated at half-pitch-offset points, because every optimal
/// plateau overlap spans at least half a pitch and therefore contains a
/// quarter-pitch sweep point strictly in its interior.
pub fn grid_convolve(
    f: &StepDistribution<f64>,
    g: &StepDistribution<f64>,
    tnorm: &TNorm<f64>,
    t: f64,
) -> f64 {
    let quarter = PITCH / 4.0;
    let steps = (t / quarter).floor() as i64;
    let mut best: f64 = 0.0;
    for j in 0..=steps {
        let r = j as f64 * quarter;
        let s = t - r;
        if s < 0.0 {
            break;
        }
        best = best.max(tnorm.apply(f.eval(r), g.eval(s)));
    }
    best
}

/// The comparison grid for a pair of step functions: half-pitch-offset
/// points covering the support of any of `f`, `g`, `f ∗ g`.
pub fn comparison_grid(f: &StepDistribution<f64>, g: &StepDistribution<f64>) -> Vec<f64> {
    let top = |s: &StepDistribution<f64>| s.breakpoints().last().copied().unwrap_or(0.0);
    let reach = top(f) + top(g) + 3.0 * PITCH;
    let count = (reach / PITCH).ceil() as usize;
    (0..=count).map(|k| (k as f64 + 0.5) * PITCH).collect()
}

/// Random finite Q-category over one of the acceptance quantales, repaired
/// into a category by diagonal join and transitive closure.
pub fn random_category(rng: &mut StdRng, which: usize) -> QCategory<f64> {
    let n = rng.gen_range(2..=6usize);
    let (quantale, entry): (Quantale<f64>, Box<dyn FnMut(&mut StdRng) -> QuantaleValue<f64>>) =
        match which % 3 {
            0 => (
                Quantale::boolean(),
                Box::new(|rng: &mut StdRng| QuantaleValue::Boolean(rng.gen_bool(0.5))),
            ),
            1 => (
                Quantale::unit_interval(TNorm::Lukasiewicz),
                Box::new(|rng: &mut StdRng| {
                    QuantaleValue::UnitInterval(rng.gen_range(0..=4) as f64 * 0.25)
                }),
            ),
            _ => (
                Quantale::lawvere(),
                Box::new(|rng: &mut StdRng| {
                    let grid = [0.0, 0.5, 1.0, 2.0, f64::INFINITY];
                    QuantaleValue::Lawvere(grid[rng.gen_range(0..grid.len())])
                }),
            ),
        };
    let mut entry = entry;
    let hom: Vec<Vec<QuantaleValue<f64>>> = (0..n)
        .map(|_| (0..n).map(|_| entry(rng)).collect())
        .collect();
    QCategory::finite_unlabeled(quantale, hom)
        .expect("square matrix")
        .transitively_closed()
        .expect("finite carrier")
}

/// Indices of a random eventually-periodic sequence: a prefix of length
/// `≤ 4` followed by a cycle of period `≤ 3`, expanded to `len` terms.
pub fn random_eventually_periodic(rng: &mut StdRng, objects: usize, len: usize) -> Vec<usize> {
    let prefix_len = rng.gen_range(0..=4usize);
    let period = rng.gen_range(1..=3usize);
    let prefix: Vec<usize> = (0..prefix_len).map(|_| rng.gen_range(0..objects)).collect();
    let cycle: Vec<usize> = (0..period).map(|_| rng.gen_range(0..objects)).collect();
    (0..len)
        .map(|i| {
            if i < prefix_len {
                prefix[i]
            } else {
                cycle[(i - prefix_len) % period]
            }
        })
        .collect()
}
