use super::RngState;
use crate::error::{Error, Result};
use crate::lattice::PathEnsemble;
use crate::scalar::Real;

/// Parameters of the conditioned Bernoulli walk measure: independent
/// Bernoulli(`beta`) right jumps conditioned to never intersect, started
/// from the strictly increasing `initial` data and run to `horizon`.
#[derive(Clone, Debug)]
pub struct WalkParams<F> {
    pub beta: F,
    pub initial: Vec<i64>,
    pub horizon: usize,
}

impl<F: Real> WalkParams<F> {
    pub fn new(beta: F, initial: Vec<i64>, horizon: usize) -> Result<WalkParams<F>> {
        if !(beta > F::zero() && beta < F::one()) {
            return Err(Error::invariant("beta must lie in (0,1)"));
        }
        ensure_increasing(&initial)?;
        Ok(WalkParams { beta, initial, horizon })
    }
}

pub(crate) fn ensure_increasing(a: &[i64]) -> Result<()> {
    if a.is_empty() {
        return Err(Error::invariant("configuration must be nonempty"));
    }
    if a.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::invariant("configuration must be strictly increasing"));
    }
    Ok(())
}

/// Hard cap on the exact-enumeration regime of [`walk_transition`].
pub const MAX_EXACT_PARTICLES: usize = 20;

const MAX_MOVES: usize = 1 << 21;

/// Valid one-step moves from `a`: jump sets must be suffixes of every
/// maximal run of consecutive particles, otherwise two walkers collide.
/// Returns the movers as sorted index sets.
fn valid_jump_sets(a: &[i64]) -> Result<Vec<Vec<usize>>> {
    let n = a.len();
    let mut runs: Vec<(usize, usize)> = Vec::new(); // [start, end) index ranges
    let mut start = 0;
    for i in 1..=n {
        if i == n || a[i] != a[i - 1] + 1 {
            runs.push((start, i));
            start = i;
        }
    }
    let mut total: usize = 1;
    for &(s, e) in &runs {
        total = total.saturating_mul(e - s + 1);
        if total > MAX_MOVES {
            return Err(Error::infeasible(format!(
                "more than {MAX_MOVES} one-step moves; configuration too large for exact sampling"
            )));
        }
    }
    let mut sets: Vec<Vec<usize>> = vec![Vec::new()];
    for &(s, e) in &runs {
        let len = e - s;
        let mut next = Vec::with_capacity(sets.len() * (len + 1));
        for base in &sets {
            for suffix in 0..=len {
                let mut v = base.clone();
                v.extend((e - suffix)..e);
                next.push(v);
            }
        }
        sets = next;
    }
    Ok(sets)
}

/// Log-weight of the move `a -> a + 1_S` under the conditioned walk measure:
/// `|S| ln beta + (n-|S|) ln(1-beta) + ln(Delta(a') / Delta(a))`, with the
/// Vandermonde ratio accumulated factor by factor (all differences positive).
fn move_log_weight<F: Real>(a: &[i64], movers: &[usize], beta: F) -> F {
    let n = a.len();
    let k = movers.len();
    let mut lw = F::of_usize(k) * beta.ln() + F::of_usize(n - k) * (F::one() - beta).ln();
    let mut is_mover = vec![false; n];
    for &i in movers {
        is_mover[i] = true;
    }
    for j in 0..n {
        for k2 in (j + 1)..n {
            if is_mover[k2] != is_mover[j] {
                let d = F::of_i64(a[k2] - a[j]);
                let d2 = if is_mover[k2] { d + F::one() } else { d - F::one() };
                lw += (d2 / d).ln();
            }
        }
    }
    lw
}

/// The exact one-step transition distribution of the conditioned walk,
/// as `(next configuration, probability)` pairs sorted by configuration.
/// `weight_sum` is the pre-normalization total, which is identically one for
/// the true measure; it is recorded rather than assumed.
pub struct TransitionLaw<F> {
    pub moves: Vec<(Vec<i64>, F)>,
    pub weight_sum: F,
}

pub(crate) fn transition_law<F: Real>(a: &[i64], beta: F) -> Result<TransitionLaw<F>> {
    ensure_increasing(a)?;
    let sets = valid_jump_sets(a)?;
    let mut moves: Vec<(Vec<i64>, F)> = Vec::with_capacity(sets.len());
    for movers in &sets {
        let mut next = a.to_vec();
        for &i in movers {
            next[i] += 1;
        }
        let w = move_log_weight(a, movers, beta).exp();
        moves.push((next, w));
    }
    moves.sort_by(|x, y| x.0.cmp(&y.0));
    let weight_sum = moves.iter().map(|m| m.1).sum();
    Ok(TransitionLaw { moves, weight_sum })
}

/// Samples a transition law by inverse CDF over the configuration-sorted
/// moves, so that chains sharing the same uniform are coupled consistently.
pub(crate) fn sample_law<F: Real>(law: &TransitionLaw<F>, u: f64) -> (Vec<i64>, F) {
    let target = F::val(u) * law.weight_sum;
    let mut acc = F::zero();
    for (cfg, w) in &law.moves {
        acc += *w;
        if acc >= target {
            return (cfg.clone(), *w);
        }
    }
    let last = law.moves.last().expect("nonempty move list");
    (last.0.clone(), last.1)
}

/// Outcome of one exact transition.
pub struct WalkStep<F> {
    pub next: Vec<i64>,
    /// Raw (unnormalized) weight of the chosen move; along a trajectory these
    /// multiply to the path probability.
    pub step_weight: F,
    /// Pre-normalization sum of all move weights (one up to roundoff).
    pub weight_sum: F,
}

/// One exact step of the conditioned walk from `config`.
///
/// Enumeration is exact and restricted to at most [`MAX_EXACT_PARTICLES`]
/// particles.
pub fn walk_transition<F: Real>(
    config: &[i64],
    beta: F,
    rng: &mut RngState,
) -> Result<WalkStep<F>> {
    if config.len() > MAX_EXACT_PARTICLES {
        return Err(Error::infeasible(format!(
            "exact transition limited to {MAX_EXACT_PARTICLES} particles, got {}",
            config.len()
        )));
    }
    let law = transition_law(config, beta)?;
    let (next, w) = sample_law(&law, rng.uniform());
    Ok(WalkStep { next, step_weight: w, weight_sum: law.weight_sum })
}

/// Samples a whole ensemble from the conditioned walk measure, returning the
/// paths together with the product of per-step weights (which telescopes to
/// the closed-form path probability).
pub fn sample_walk_ensemble<F: Real>(
    params: &WalkParams<F>,
    rng: &mut RngState,
) -> Result<(PathEnsemble, F)> {
    let mut paths: Vec<Vec<i64>> = params.initial.iter().map(|&a| vec![a]).collect();
    let mut cfg = params.initial.clone();
    let mut log_prob = F::zero();
    for _ in 0..params.horizon {
        let step = walk_transition(&cfg, params.beta, rng)?;
        for (path, &x) in paths.iter_mut().zip(step.next.iter()) {
            path.push(x);
        }
        log_prob += step.step_weight.ln();
        cfg = step.next;
    }
    let first_label = match params.initial.iter().rposition(|&x| x <= 0) {
        Some(idx) => -(idx as i64),
        None => 1,
    };
    Ok((PathEnsemble::new(first_label, paths)?, log_prob.exp()))
}

/// Exact probability of an ensemble under the conditioned walk measure with
/// its own initial data:
/// `beta^(|q(t)|-|a|) (1-beta)^(nt-|q(t)|+|a|) Delta(q(t))/Delta(a)`.
pub fn walk_path_probability<F: Real>(ensemble: &PathEnsemble, beta: F) -> F {
    let a = ensemble.initial();
    let b = ensemble.ending();
    let n = a.len();
    let t = ensemble.horizon();
    let jumps: i64 = b.iter().sum::<i64>() - a.iter().sum::<i64>();
    let mut lp = F::of_i64(jumps) * beta.ln()
        + (F::of_usize(n * t) - F::of_i64(jumps)) * (F::one() - beta).ln();
    for j in 0..n {
        for k in (j + 1)..n {
            lp += (F::of_i64(b[k] - b[j]) / F::of_i64(a[k] - a[j])).ln();
        }
    }
    lp.exp()
}

/// Enumerates every non-intersecting trajectory from `a` over `t` steps,
/// passing the path matrix to the visitor. Combinatorial only — no weights —
/// so it can serve as an independent oracle against the closed-form law.
pub fn for_each_walk_trajectory(a: &[i64], t: usize, mut visit: impl FnMut(&[Vec<i64>])) -> Result<()> {
    ensure_increasing(a)?;
    fn rec(
        paths: &mut Vec<Vec<i64>>,
        cfg: &[i64],
        remaining: usize,
        visit: &mut impl FnMut(&[Vec<i64>]),
    ) -> Result<()> {
        if remaining == 0 {
            visit(paths);
            return Ok(());
        }
        for movers in valid_jump_sets(cfg)? {
            let mut next = cfg.to_vec();
            for &i in &movers {
                next[i] += 1;
            }
            for (p, &x) in paths.iter_mut().zip(next.iter()) {
                p.push(x);
            }
            rec(paths, &next, remaining - 1, visit)?;
            for p in paths.iter_mut() {
                p.pop();
            }
        }
        Ok(())
    }
    let mut paths: Vec<Vec<i64>> = a.iter().map(|&x| vec![x]).collect();
    rec(&mut paths, a, t, &mut visit)
}

/// Empirical check of the Azuma–Hoeffding tail for the ensemble height at a
/// single vertex of the strip.
#[derive(Clone, Debug)]
pub struct AzumaReport<F> {
    pub empirical_tail: F,
    pub bound: F,
    pub mean: F,
    pub samples: usize,
    /// Binomial standard error of the empirical tail.
    pub tail_sigma: F,
    /// Set when the empirical tail exceeds the bound by more than four
    /// standard errors; the inequality is a theorem, so this flags a bug.
    pub violation: bool,
}

/// Samples `H(point)` (normalized by `H(0,0) = 0`) under the walk measure and
/// compares the centered tail `P[|H - mean| > A]` with `2 exp(-A^2 / 2t)`.
pub fn azuma_check<F: Real>(
    params: &WalkParams<F>,
    point: (i64, usize),
    a_dev: F,
    samples: usize,
    rng: &mut RngState,
) -> Result<AzumaReport<F>> {
    if point.1 > params.horizon {
        return Err(Error::invariant("point is outside the strip"));
    }
    let mut values: Vec<i64> = Vec::with_capacity(samples);
    for _ in 0..samples {
        let (q, _) = sample_walk_ensemble(params, rng)?;
        values.push(q.height(point.0, point.1));
    }
    let mean = F::of_i64(values.iter().sum::<i64>()) / F::of_usize(samples);
    let exceed = values
        .iter()
        .filter(|&&h| (F::of_i64(h) - mean).abs() > a_dev)
        .count();
    let tail = F::of_usize(exceed) / F::of_usize(samples);
    let t = params.horizon.max(1);
    let bound = F::val(2.0) * (-(a_dev * a_dev) / (F::val(2.0) * F::of_usize(t))).exp();
    let sigma = (tail * (F::one() - tail) / F::of_usize(samples))
        .sqrt()
        .max(F::one() / F::of_usize(samples));
    Ok(AzumaReport {
        empirical_tail: tail,
        bound,
        mean,
        samples,
        tail_sigma: sigma,
        violation: tail > bound + F::val(4.0) * sigma,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn two_particle_law_matches_hand_computation() {
        let law = transition_law(&[0, 1], 0.5f64).unwrap();
        // moves sorted by configuration: (0,1), (0,2), (1,2)
        let expect = [(vec![0, 1], 0.25), (vec![0, 2], 0.5), (vec![1, 2], 0.25)];
        assert_eq!(law.moves.len(), 3);
        for ((cfg, w), (ecfg, ew)) in law.moves.iter().zip(expect.iter()) {
            assert_eq!(cfg, ecfg);
            assert!((w - ew).abs() < 1e-14);
        }
        assert!((law.weight_sum - 1.0).abs() < 1e-12);
    }

    #[test]
    fn single_particle_is_plain_bernoulli() {
        let law = transition_law(&[5], 0.3f64).unwrap();
        assert_eq!(law.moves.len(), 2);
        assert!((law.moves[0].1 - 0.7).abs() < 1e-14); // stay
        assert!((law.moves[1].1 - 0.3).abs() < 1e-14); // jump
    }

    #[test]
    fn spread_particles_have_eight_moves_summing_to_one() {
        let law = transition_law(&[0, 2, 4], 0.37f64).unwrap();
        assert_eq!(law.moves.len(), 8);
        assert!((law.weight_sum - 1.0).abs() < 1e-12);
    }

    #[test]
    fn normalization_holds_for_random_configurations() {
        let mut rng = RngState::new(17);
        for _ in 0..100 {
            let n = 1 + rng.below(10);
            let mut cfg = Vec::with_capacity(n);
            let mut x = -(rng.below(20) as i64);
            for _ in 0..n {
                cfg.push(x);
                x += 1 + rng.below(3) as i64;
            }
            let beta = 0.05 + 0.9 * rng.uniform();
            let law = transition_law(&cfg, beta).unwrap();
            assert!(
                (law.weight_sum - 1.0).abs() < 1e-10,
                "config {cfg:?} beta {beta}: sum {}",
                law.weight_sum
            );
        }
    }

    #[test]
    fn telescoping_matches_closed_form() {
        let mut rng = RngState::new(23);
        for _ in 0..50 {
            let params = WalkParams::new(0.4f64, vec![-2, 0, 1, 5], 6).unwrap();
            let (q, prob) = sample_walk_ensemble(&params, &mut rng).unwrap();
            let direct = walk_path_probability(&q, 0.4);
            assert!(
                (prob - direct).abs() <= 1e-10 * direct.max(1e-300),
                "telescoped {prob} vs direct {direct}"
            );
        }
    }

    #[test]
    fn path_probabilities_sum_to_one() {
        // All ensembles of horizon 1 from (0,1).
        let mut total = 0.0f64;
        for_each_walk_trajectory(&[0, 1], 1, |paths| {
            let q = PathEnsemble::new(0, paths.to_vec()).unwrap();
            total += walk_path_probability(&q, 0.5);
        })
        .unwrap();
        assert!((total - 1.0).abs() < 1e-12);
    }

    #[test]
    fn stationary_single_path_probability() {
        let q = PathEnsemble::constant(0, &[3], 7).unwrap();
        let p = walk_path_probability(&q, 0.25f64);
        assert!((p - 0.75f64.powi(7)).abs() < 1e-14);
    }

    #[test]
    fn azuma_bound_value_and_degenerate_horizon() {
        let params = WalkParams::new(0.5f64, vec![0, 1], 4).unwrap();
        let mut rng = RngState::new(3);
        let rep = azuma_check(&params, (0, 4), 4.0, 200, &mut rng).unwrap();
        assert!((rep.bound - 2.0 * (-2.0f64).exp()).abs() < 1e-12);

        let params0 = WalkParams::new(0.5f64, vec![0, 1], 0).unwrap();
        let rep0 = azuma_check(&params0, (0, 0), 1.0, 100, &mut rng).unwrap();
        assert_eq!(rep0.empirical_tail, 0.0);
    }

    #[test]
    fn azuma_tail_respects_bound_on_enumerable_case() {
        let params = WalkParams::new(0.5f64, vec![0, 1], 3).unwrap();
        let mut rng = RngState::new(8);
        let rep = azuma_check(&params, (1, 3), 3.0, 4000, &mut rng).unwrap();
        assert!(!rep.violation, "tail {} bound {}", rep.empirical_tail, rep.bound);
    }

    #[test]
    fn empirical_transition_frequencies_match_law() {
        let mut rng = RngState::new(31);
        let trials = 100_000;
        let mut counts = [0u64; 3];
        for _ in 0..trials {
            let step = walk_transition(&[0, 1], 0.5f64, &mut rng).unwrap();
            match step.next.as_slice() {
                [0, 1] => counts[0] += 1,
                [0, 2] => counts[1] += 1,
                [1, 2] => counts[2] += 1,
                other => panic!("unexpected move {other:?}"),
            }
        }
        for (count, p) in counts.iter().zip([0.25, 0.5, 0.25]) {
            let mean = trials as f64 * p;
            let sigma = (trials as f64 * p * (1.0 - p)).sqrt();
            assert!((*count as f64 - mean).abs() < 4.0 * sigma);
        }
    }
}
