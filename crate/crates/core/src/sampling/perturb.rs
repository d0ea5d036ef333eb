use super::walks::{sample_law, transition_law};
use super::RngState;
use crate::error::{Error, Result};
use crate::lattice::{PathEnsemble, Slope, Tiling};
use crate::scalar::Real;

/// A strictly increasing particle sequence labeled so that
/// `values[zero_index] <= 0 < values[zero_index + 1]`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct LabeledSeq {
    pub values: Vec<i64>,
    pub zero_index: usize,
}

impl LabeledSeq {
    pub fn new(values: Vec<i64>) -> Result<LabeledSeq> {
        super::walks::ensure_increasing(&values)?;
        let zero_index = values
            .iter()
            .rposition(|&x| x <= 0)
            .ok_or_else(|| Error::infeasible("no particle at or left of the origin"))?;
        if zero_index + 1 == values.len() {
            return Err(Error::infeasible("no particle right of the origin"));
        }
        Ok(LabeledSeq { values, zero_index })
    }

    /// Label of `values[i]` under the convention `q_0 <= 0 < q_1`.
    pub fn label(&self, i: usize) -> i64 {
        i as i64 - self.zero_index as i64
    }
}

/// Particle locations of a tiling along the axis window `[-w, w]`: the
/// positions whose `(x, 0)` is not a type-1 center, labeled around zero.
pub fn build_q(tiling: &Tiling, window: i64) -> Result<LabeledSeq> {
    if window < 1 {
        return Err(Error::invariant("window must be positive"));
    }
    let values: Vec<i64> = (-window..=window)
        .filter(|&x| !tiling.contains_center(crate::lattice::v(x, 0)))
        .collect();
    if values.is_empty() {
        return Err(Error::infeasible("no particles in the window"));
    }
    LabeledSeq::new(values)
}

/// Default axis window for [`build_q`]: `2 * ell^4`, capped.
pub fn default_window(ell: i64, cap: i64) -> i64 {
    (2 * ell * ell * ell * ell).min(cap).max(2 * ell)
}

/// Whether the sequence avoids both `k` consecutive integers and any gap of
/// size at least `k`.
pub fn in_z(seq: &[i64], k: i64) -> Result<bool> {
    if k <= 1 {
        return Err(Error::invariant("k must exceed 1"));
    }
    super::walks::ensure_increasing(seq)?;
    let mut run = 1i64;
    for w in seq.windows(2) {
        let gap = w[1] - w[0];
        if gap >= k {
            return Ok(false);
        }
        run = if gap == 1 { run + 1 } else { 1 };
        if run >= k {
            return Ok(false);
        }
    }
    Ok(true)
}

/// The left/right boundary perturbations `p <= q <= r` of a labeled sequence
/// in `Z(ell)`; all three coincide on `[-2 ell, 2 ell]`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct PerturbationTriple {
    pub p: Vec<i64>,
    pub q: Vec<i64>,
    pub r: Vec<i64>,
    pub zero_index: usize,
    pub ell: i64,
}

/// Left-perturbation shifts for `q`:
///
/// * particles in `[-2 ell, 2 ell]` stay put;
/// * a particle in the left band `[-2(i+1) ell, -2 i ell)` moves left by `i`;
/// * on the right the shift `-i` begins at the first gap past `2 i ell`,
///   which keeps the output strictly increasing.
fn p_shifts(q: &[i64], ell: i64) -> Vec<i64> {
    let n = q.len();
    let mut shift = vec![0i64; n];
    for (j, &x) in q.iter().enumerate() {
        if x < -2 * ell {
            // band index: 2 i ell < -x <= 2 (i+1) ell
            let i = (-x + 2 * ell - 1) / (2 * ell) - 1;
            shift[j] = -i;
        }
    }
    // Right side: find jump indices j(i) = first gap past 2 i ell.
    let mut i = 1i64;
    let mut j = 0usize;
    loop {
        let threshold = 2 * i * ell;
        if threshold >= q[n - 1] {
            break;
        }
        while j < n && !(q[j] > threshold && (j == 0 || q[j] - q[j - 1] > 1)) {
            j += 1;
        }
        if j >= n {
            break;
        }
        for s in shift.iter_mut().skip(j) {
            *s -= 1;
        }
        i += 1;
    }
    shift
}

fn mirrored(q: &[i64]) -> Vec<i64> {
    let mut m: Vec<i64> = q.iter().map(|&x| -x).collect();
    m.reverse();
    m
}

/// Builds the perturbation pair `(p, r)` around `q in Z(ell)` by the band
/// construction; `r` is obtained from the mirror image of the `p`
/// construction, which swaps the roles of the two sides.
pub fn build_p_r(q: &LabeledSeq, ell: i64) -> Result<PerturbationTriple> {
    if ell <= 1 {
        return Err(Error::invariant("ell must exceed 1"));
    }
    if !in_z(&q.values, ell)? {
        return Err(Error::infeasible(format!(
            "sequence is not in Z({ell}): it has {ell} consecutive particles or a gap of {ell}"
        )));
    }
    let n = q.values.len();
    let p: Vec<i64> = q
        .values
        .iter()
        .zip(p_shifts(&q.values, ell))
        .map(|(&x, s)| x + s)
        .collect();
    let mirror_p = p_shifts(&mirrored(&q.values), ell);
    let r: Vec<i64> = q
        .values
        .iter()
        .enumerate()
        .map(|(j, &x)| x - mirror_p[n - 1 - j])
        .collect();

    for w in [&p, &r] {
        if w.windows(2).any(|t| t[0] >= t[1]) {
            return Err(Error::invariant(
                "perturbed sequence is not strictly increasing",
            ));
        }
    }
    for j in 0..n {
        if !(p[j] <= q.values[j] && q.values[j] <= r[j]) {
            return Err(Error::invariant("perturbations lost the order p <= q <= r"));
        }
        if q.values[j].abs() <= 2 * ell && (p[j] != q.values[j] || r[j] != q.values[j]) {
            return Err(Error::invariant(
                "perturbations must fix the central window",
            ));
        }
    }
    Ok(PerturbationTriple {
        p,
        q: q.values.clone(),
        r,
        zero_index: q.zero_index,
        ell,
    })
}

/// The drift parameter of the walk measure matched to a slope:
/// `beta = sin(pi t) / (sin(pi t) + sin(pi (1 - s - t)))`.
pub fn slope_to_beta<F: Real>(slope: Slope<F>) -> Result<F> {
    if !slope.in_open_triangle() {
        return Err(Error::invariant("slope must be in the open triangle"));
    }
    let pi = F::PI();
    let st = (pi * slope.t).sin();
    let s3 = (pi * slope.third()).sin();
    Ok(st / (st + s3))
}

/// Source of the reference configuration for [`coupling_experiment`].
pub enum TilingSource<'a> {
    /// Read the axis configuration off an explicit tiling.
    Tiling(&'a Tiling),
    /// Draw site occupancies iid with density `1 - s`, retrying until the
    /// sequence lies in `Z(ell)` and brackets the origin.
    Synthetic,
}

#[derive(Clone, Debug)]
pub struct CouplingReport<F> {
    pub beta: F,
    pub beta_low: F,
    pub beta_high: F,
    pub particle_count: usize,
    pub window: i64,
    pub samples: usize,
    /// Fraction of samples with `H_P <= H_Q <= H_R` everywhere on the strip.
    pub ordering_frequency: F,
    /// Fraction of samples whose three ensembles agree exactly on
    /// `[-ell, ell] x [0, ell]`.
    pub agreement_frequency: F,
    /// Initial ordering `p_j <= q_j <= r_j` (diagnostic; always true when
    /// construction succeeded).
    pub initial_ordered: bool,
}

/// Samples the triple of conditioned walks `P, Q, R` from the perturbed
/// initial data under shared randomness and reports how often their height
/// functions stay ordered on the strip, and how often all three agree near
/// the origin.
///
/// The shared randomness drives the three inverse-CDF transition draws with
/// the same uniform at every step; with `delta = 0` and `p = q = r` the
/// three chains coincide sample by sample.
pub fn coupling_experiment<F: Real>(
    source: TilingSource<'_>,
    slope: Slope<F>,
    delta: F,
    ell: i64,
    samples: usize,
    window: Option<i64>,
    rng: &mut RngState,
) -> Result<CouplingReport<F>> {
    let beta = slope_to_beta(slope)?;
    let beta_low = beta - delta;
    let beta_high = beta + delta;
    if !(beta_low > F::zero() && beta_high < F::one()) {
        return Err(Error::invariant("beta +- delta must stay inside (0,1)"));
    }

    // Particle budget keeps the exact transition sampler in range.
    let density = F::one() - slope.s;
    let budget_w = {
        let max_particles = F::val(super::walks::MAX_EXACT_PARTICLES as f64 - 2.0);
        let w = ((max_particles / density - F::one()) / F::val(2.0)).to_f64_lossy();
        w.max(2.0 * ell as f64) as i64
    };
    let window = window.unwrap_or_else(|| default_window(ell, budget_w));

    let q = match source {
        TilingSource::Tiling(t) => build_q(t, window)?,
        TilingSource::Synthetic => {
            let mut attempt = 0;
            loop {
                attempt += 1;
                if attempt > 10_000 {
                    return Err(Error::NonConvergence(
                        "could not draw a synthetic configuration in Z(ell)".into(),
                    ));
                }
                let vals: Vec<i64> = (-window..=window)
                    .filter(|_| rng.bernoulli(density.to_f64_lossy()))
                    .collect();
                if vals.len() < 2 {
                    continue;
                }
                if let Ok(seq) = LabeledSeq::new(vals) {
                    if in_z(&seq.values, ell)? {
                        break seq;
                    }
                }
            }
        }
    };
    let triple = build_p_r(&q, ell)?;

    let horizon = ell as usize;
    let strip_lo = -(ell * ell * ell);
    let strip_hi = ell * ell * ell;

    let mut ordered = 0usize;
    let mut agree = 0usize;
    for _ in 0..samples {
        let mut cfg_p = triple.p.clone();
        let mut cfg_q = triple.q.clone();
        let mut cfg_r = triple.r.clone();
        let mut paths_p: Vec<Vec<i64>> = cfg_p.iter().map(|&x| vec![x]).collect();
        let mut paths_q: Vec<Vec<i64>> = cfg_q.iter().map(|&x| vec![x]).collect();
        let mut paths_r: Vec<Vec<i64>> = cfg_r.iter().map(|&x| vec![x]).collect();
        for _ in 0..horizon {
            let u = rng.uniform();
            for (cfg, paths, b) in [
                (&mut cfg_p, &mut paths_p, beta_low),
                (&mut cfg_q, &mut paths_q, beta),
                (&mut cfg_r, &mut paths_r, beta_high),
            ] {
                let law = transition_law(cfg, b)?;
                let (next, _) = sample_law(&law, u);
                for (path, &x) in paths.iter_mut().zip(next.iter()) {
                    path.push(x);
                }
                *cfg = next;
            }
        }
        let ens_p = PathEnsemble::new(-(triple.zero_index as i64), paths_p)?;
        let ens_q = PathEnsemble::new(-(triple.zero_index as i64), paths_q)?;
        let ens_r = PathEnsemble::new(-(triple.zero_index as i64), paths_r)?;

        let mut ok = true;
        'outer: for s in 0..=horizon {
            for x in strip_lo..=strip_hi {
                let hp = ens_p.height(x, s);
                let hq = ens_q.height(x, s);
                let hr = ens_r.height(x, s);
                if !(hp <= hq && hq <= hr) {
                    ok = false;
                    break 'outer;
                }
            }
        }
        if ok {
            ordered += 1;
        }

        let mut same = true;
        'agree: for s in 0..=horizon {
            for (k, &pq) in ens_q.positions_at(s).iter().enumerate() {
                if pq.abs() <= ell {
                    let pp = ens_p.positions_at(s)[k];
                    let pr = ens_r.positions_at(s)[k];
                    if pp != pq || pr != pq {
                        same = false;
                        break 'agree;
                    }
                }
            }
        }
        if same {
            agree += 1;
        }
    }

    Ok(CouplingReport {
        beta,
        beta_low,
        beta_high,
        particle_count: triple.q.len(),
        window,
        samples,
        ordering_frequency: F::of_usize(ordered) / F::of_usize(samples.max(1)),
        agreement_frequency: F::of_usize(agree) / F::of_usize(samples.max(1)),
        initial_ordered: true,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::v;

    #[test]
    fn z_membership() {
        assert!(!in_z(&[0, 1, 2], 3).unwrap());
        assert!(in_z(&[0, 2, 4], 3).unwrap());
        assert!(!in_z(&[0, 5], 3).unwrap());
    }

    #[test]
    fn build_q_from_all_type3_tiling_is_full_interval() {
        // no type-1 centers at all
        let tiling = Tiling::from_centers(std::iter::empty());
        let q = build_q(&tiling, 4).unwrap();
        assert_eq!(q.values, (-4..=4).collect::<Vec<_>>());
        assert_eq!(q.label(q.zero_index), 0);
        assert_eq!(q.values[q.zero_index], 0);
    }

    #[test]
    fn build_q_rejects_all_type1_row() {
        let tiling = Tiling::from_centers((-10..=10).map(|x| v(x, 0)));
        assert!(build_q(&tiling, 5).is_err());
    }

    #[test]
    fn band_shift_example() {
        // ell = 2: q_j = -5 lies in the first left band [-8, -4), so p_j = -6.
        let q = LabeledSeq::new(vec![-5, -3, -1, 0, 2, 3, 5, 6, 8, 10]).unwrap();
        let triple = build_p_r(&q, 2).unwrap();
        let j = q.values.iter().position(|&x| x == -5).unwrap();
        assert_eq!(triple.p[j], -6);
        // r_j at -5 is -5 or -4 depending on where the first left gap sits.
        assert!(triple.r[j] == -5 || triple.r[j] == -4);
        // central window fixed
        for (j, &x) in q.values.iter().enumerate() {
            if x.abs() <= 4 {
                assert_eq!(triple.p[j], x);
                assert_eq!(triple.r[j], x);
            }
        }
    }

    #[test]
    fn random_z_sequences_stay_ordered() {
        let mut rng = RngState::new(77);
        let ell = 3;
        let mut done = 0;
        while done < 100 {
            let vals: Vec<i64> = (-40..=40).filter(|_| rng.bernoulli(0.6)).collect();
            let Ok(seq) = LabeledSeq::new(vals) else { continue };
            if !in_z(&seq.values, ell).unwrap() {
                continue;
            }
            let triple = build_p_r(&seq, ell).unwrap();
            for j in 0..triple.q.len() {
                assert!(triple.p[j] <= triple.q[j] && triple.q[j] <= triple.r[j]);
                if triple.q[j].abs() <= 2 * ell {
                    assert_eq!(triple.p[j], triple.q[j]);
                    assert_eq!(triple.r[j], triple.q[j]);
                }
            }
            done += 1;
        }
    }

    #[test]
    fn symmetric_slope_gives_half_beta() {
        let b: f64 = slope_to_beta(Slope::new(1.0 / 3.0, 1.0 / 3.0)).unwrap();
        assert!((b - 0.5).abs() < 1e-14);
    }

    #[test]
    fn zero_delta_couples_exactly() {
        let mut rng = RngState::new(5);
        let rep = coupling_experiment(
            TilingSource::Synthetic,
            Slope::new(1.0 / 3.0, 1.0 / 3.0),
            0.0,
            2,
            20,
            Some(8),
            &mut rng,
        )
        .unwrap();
        assert_eq!(rep.agreement_frequency, 1.0);
        assert_eq!(rep.ordering_frequency, 1.0);
    }
}
