use super::grid::Grid;
use super::RngState;
use crate::error::{Error, Result};
use crate::lattice::{extremal_heights, BoundaryHeight, Domain, HeightFunction};

/// Single-site heat-bath dynamics on the height functions with fixed
/// boundary data. Each step picks a uniform interior vertex and resamples it
/// uniformly over its admissible values (one or two of them), which leaves
/// the uniform distribution invariant.
pub struct GlauberChain<'a> {
    grid: Grid,
    values: Vec<i64>,
    #[allow(dead_code)]
    domain: &'a Domain,
}

impl<'a> GlauberChain<'a> {
    pub fn new(domain: &'a Domain, start: &HeightFunction) -> Result<GlauberChain<'a>> {
        start.validate(domain)?;
        let grid = Grid::new(domain);
        let values = grid.flatten(start)?;
        Ok(GlauberChain { grid, values, domain })
    }

    pub fn interior_len(&self) -> usize {
        self.grid.interior().len()
    }

    /// One heat-bath update at interior slot `which` driven by `coin`.
    /// With two admissible values, `coin < 1/2` picks the larger — the
    /// convention that makes identical randomness a monotone coupling.
    #[inline]
    pub fn update(&mut self, which: usize, coin: f64) {
        let site = self.grid.interior()[which];
        let (lo, hi) = self.grid.interval(&self.values, site);
        self.values[site as usize] = if hi > lo {
            if coin < 0.5 {
                hi
            } else {
                lo
            }
        } else {
            lo
        };
    }

    pub fn step(&mut self, rng: &mut RngState) {
        let which = rng.below(self.interior_len());
        let coin = rng.uniform();
        self.update(which, coin);
    }

    /// `sweeps` passes of `interior` random single-site updates.
    pub fn run_sweeps(&mut self, sweeps: usize, rng: &mut RngState) {
        let n = self.interior_len();
        for _ in 0..sweeps.saturating_mul(n) {
            self.step(rng);
        }
    }

    pub fn height(&self) -> HeightFunction {
        self.grid.unflatten(&self.values)
    }

    pub(crate) fn values(&self) -> &[i64] {
        &self.values
    }
}

/// One heat-bath move; stand-alone convenience wrapper over [`GlauberChain`].
pub fn glauber_step(
    height: &HeightFunction,
    domain: &Domain,
    rng: &mut RngState,
) -> Result<HeightFunction> {
    let mut chain = GlauberChain::new(domain, height)?;
    if chain.interior_len() > 0 {
        chain.step(rng);
    }
    Ok(chain.height())
}

/// Approximate uniform sample from the height functions extending `boundary`:
/// a single Glauber chain started at the minimal height and run for
/// `sweeps * interior` steps. The output law is approximately uniform, with
/// accuracy controlled by `sweeps`; see [`sample_exact_cftp`] for the exact
/// alternative on small domains.
pub fn sample_uniform(
    domain: &Domain,
    boundary: &BoundaryHeight,
    sweeps: usize,
    rng: &mut RngState,
) -> Result<HeightFunction> {
    if sweeps == 0 {
        return Err(Error::invariant("sweeps must be at least 1"));
    }
    let (lo, _) = extremal_heights(domain, boundary)?;
    let mut chain = GlauberChain::new(domain, &lo)?;
    if chain.interior_len() == 0 {
        return Ok(lo);
    }
    chain.run_sweeps(sweeps, rng);
    Ok(chain.height())
}

/// Default sweep budget: `20 * extent(R)^2`.
pub fn default_sweeps(domain: &Domain) -> usize {
    let d = domain.extent().max(1) as usize;
    20 * d * d
}

/// Couples two chains with ordered boundary data by driving them with the
/// same site choices and coins; the heat-bath rule preserves the pointwise
/// order, so the outputs satisfy `H1 <= H2` everywhere.
///
/// Chain 1 starts at the minimal extension of `h1`, chain 2 at the maximal
/// extension of `h2`.
pub fn monotone_coupled_sample(
    domain: &Domain,
    h1: &BoundaryHeight,
    h2: &BoundaryHeight,
    sweeps: usize,
    rng: &mut RngState,
) -> Result<(HeightFunction, HeightFunction)> {
    if !h1.le(h2) {
        return Err(Error::invariant("boundary data not ordered: h1 <= h2 required"));
    }
    let (lo1, _) = extremal_heights(domain, h1)?;
    let (_, hi2) = extremal_heights(domain, h2)?;
    let mut c1 = GlauberChain::new(domain, &lo1)?;
    let mut c2 = GlauberChain::new(domain, &hi2)?;
    let n = c1.interior_len();
    if n > 0 {
        for _ in 0..sweeps.saturating_mul(n) {
            let which = rng.below(n);
            let coin = rng.uniform();
            c1.update(which, coin);
            c2.update(which, coin);
        }
    }
    Ok((c1.height(), c2.height()))
}

/// Exact uniform sampling by monotone coupling from the past.
///
/// Runs the sandwich chains from the minimal and maximal heights over
/// backward epochs of doubling length, reusing the randomness of later steps,
/// until they coalesce; the common state is exactly uniform. Practical only
/// when coalescence is (the step randomness at backward time `t` is derived
/// deterministically from `(seed, t)`, so epochs agree on their overlap).
pub fn sample_exact_cftp(
    domain: &Domain,
    boundary: &BoundaryHeight,
    rng: &mut RngState,
    max_epoch: usize,
) -> Result<HeightFunction> {
    let (lo, hi) = extremal_heights(domain, boundary)?;
    if lo == hi {
        return Ok(lo);
    }
    let seed_lo = (rng.uniform() * u32::MAX as f64) as u64;
    let seed_hi = (rng.uniform() * u32::MAX as f64) as u64;
    let run_seed = (seed_hi << 32) | seed_lo;

    let grid = Grid::new(domain);
    let n = grid.interior().len();
    let mut epoch_len: usize = 64.max(n);
    let mut epoch = 0usize;
    loop {
        let mut top = GlauberChain::new(domain, &hi)?;
        let mut bot = GlauberChain::new(domain, &lo)?;
        // Steps run from backward time -epoch_len up to -1.
        for t in (1..=epoch_len).rev() {
            let mut r = RngState::with_stream(run_seed, t as u64);
            let which = r.below(n);
            let coin = r.uniform();
            top.update(which, coin);
            bot.update(which, coin);
        }
        if top.values() == bot.values() {
            return Ok(top.height());
        }
        epoch += 1;
        if epoch > max_epoch {
            return Err(Error::NonConvergence(format!(
                "coupling from the past did not coalesce within {max_epoch} doublings"
            )));
        }
        epoch_len *= 2;
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::{hexagon_domain, v};

    #[test]
    fn rigid_boundary_is_fixed_point() {
        let dom = Domain::new((0..4).map(|x| v(x, 0))).unwrap();
        let bh = BoundaryHeight::new(&dom, dom.vertices().map(|u| (u, 0)).collect()).unwrap();
        let mut rng = RngState::new(1);
        let h = sample_uniform(&dom, &bh, 5, &mut rng).unwrap();
        assert!(h.iter().all(|(_, v)| v == 0));
    }

    #[test]
    fn two_point_chain_is_balanced() {
        // 1x1x1 hexagon: two states, distinguished by the center height.
        let (dom, bh) = hexagon_domain(1, 1, 1).unwrap();
        let (lo, _) = extremal_heights(&dom, &bh).unwrap();
        let mut chain = GlauberChain::new(&dom, &lo).unwrap();
        let mut rng = RngState::new(42);
        let mut counts = [0u64; 2];
        let steps = 100_000;
        for _ in 0..steps {
            chain.step(&mut rng);
            counts[chain.height().at(v(1, 1)) as usize] += 1;
        }
        // Each state has stationary probability 1/2; the chain refreshes the
        // single interior site every step, so samples are iid after step 1.
        let sigma = (steps as f64 * 0.25).sqrt();
        let dev = (counts[0] as f64 - steps as f64 / 2.0).abs();
        assert!(dev < 4.0 * sigma, "dev {dev} > 4 sigma {sigma}");
    }

    #[test]
    fn single_site_two_values_each_half() {
        let (dom, bh) = hexagon_domain(1, 1, 1).unwrap();
        let (lo, _) = extremal_heights(&dom, &bh).unwrap();
        let mut rng = RngState::new(3);
        let trials = 10_000;
        let mut ones = 0;
        for _ in 0..trials {
            let h = glauber_step(&lo, &dom, &mut rng).unwrap();
            ones += h.at(v(1, 1));
        }
        let sigma = (trials as f64 * 0.25).sqrt();
        assert!((ones as f64 - trials as f64 / 2.0).abs() < 4.0 * sigma);
    }

    #[test]
    fn coupled_chains_stay_ordered() {
        let (dom, bh) = hexagon_domain(2, 2, 2).unwrap();
        let bh2 = bh.shifted(2);
        let mut rng = RngState::new(9);
        for _ in 0..50 {
            let (a, b) = monotone_coupled_sample(&dom, &bh, &bh2, 10, &mut rng).unwrap();
            assert!(a.le(&b));
        }
    }

    #[test]
    fn equal_boundaries_coalesce_to_identical_outputs() {
        let (dom, bh) = hexagon_domain(2, 2, 2).unwrap();
        let mut rng = RngState::new(11);
        // Chain 1 starts minimal, chain 2 maximal; with equal boundary data
        // and long enough runs the monotone sandwich collapses.
        let (a, b) = monotone_coupled_sample(&dom, &bh, &bh, 400, &mut rng).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn cftp_runs_on_small_hexagon() {
        let (dom, bh) = hexagon_domain(2, 2, 2).unwrap();
        let mut rng = RngState::new(5);
        let h = sample_exact_cftp(&dom, &bh, &mut rng, 30).unwrap();
        h.validate(&dom).unwrap();
    }
}
