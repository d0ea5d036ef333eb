use std::collections::BTreeSet;
use std::ops::RangeInclusive;

use super::{v, LatticeVertex, Tiling};
use crate::error::{Error, Result};

/// A family of non-intersecting up-right paths `q_k(s)`, `k in [-m, n]`,
/// `s in [0, t]`, with per-step increments in `{0, 1}` and strict ordering
/// `q_k(s) < q_{k+1}(s)`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct PathEnsemble {
    first_label: i64,
    paths: Vec<Vec<i64>>,
    horizon: usize,
}

impl PathEnsemble {
    /// Builds an ensemble from paths listed in increasing order; label `k`
    /// of `paths[i]` is `first_label + i`.
    pub fn new(first_label: i64, paths: Vec<Vec<i64>>) -> Result<PathEnsemble> {
        if paths.is_empty() {
            return Err(Error::invariant("empty path ensemble"));
        }
        let horizon = paths[0].len().checked_sub(1).ok_or_else(|| {
            Error::invariant("paths must contain the time-zero position")
        })?;
        for p in &paths {
            if p.len() != horizon + 1 {
                return Err(Error::invariant("paths of unequal length"));
            }
            for s in 1..p.len() {
                let d = p[s] - p[s - 1];
                if d != 0 && d != 1 {
                    return Err(Error::invariant(format!(
                        "path step {d} not in {{0,1}} at time {s}"
                    )));
                }
            }
        }
        for s in 0..=horizon {
            for i in 1..paths.len() {
                if paths[i - 1][s] >= paths[i][s] {
                    return Err(Error::invariant(format!(
                        "paths intersect at time {s}: {} >= {}",
                        paths[i - 1][s],
                        paths[i][s]
                    )));
                }
            }
        }
        Ok(PathEnsemble { first_label, paths, horizon })
    }

    /// Ensemble with constant paths started from `initial`.
    pub fn constant(first_label: i64, initial: &[i64], horizon: usize) -> Result<PathEnsemble> {
        PathEnsemble::new(
            first_label,
            initial.iter().map(|&a| vec![a; horizon + 1]).collect(),
        )
    }

    pub fn horizon(&self) -> usize {
        self.horizon
    }

    pub fn path_count(&self) -> usize {
        self.paths.len()
    }

    /// Label range `-m ..= n`.
    pub fn labels(&self) -> RangeInclusive<i64> {
        self.first_label..=(self.first_label + self.paths.len() as i64 - 1)
    }

    pub fn position(&self, label: i64, s: usize) -> Option<i64> {
        let idx = usize::try_from(label - self.first_label).ok()?;
        self.paths.get(idx).map(|p| p[s])
    }

    /// Sorted particle positions at time `s`.
    pub fn positions_at(&self, s: usize) -> Vec<i64> {
        self.paths.iter().map(|p| p[s]).collect()
    }

    pub fn initial(&self) -> Vec<i64> {
        self.positions_at(0)
    }

    pub fn ending(&self) -> Vec<i64> {
        self.positions_at(self.horizon)
    }

    pub fn paths(&self) -> &[Vec<i64>] {
        &self.paths
    }

    /// The height function of the associated strip tiling, normalized by
    /// `H(0, 0) = 0`. Along the axis `H(y,0) - H(x,0) = y - x - |q(0) n [x,y)|`;
    /// vertically it grows by the number of paths crossing the column.
    pub fn height(&self, x: i64, s: usize) -> i64 {
        let q0 = &self.paths;
        let count_axis = |lo: i64, hi: i64| -> i64 {
            q0.iter().filter(|p| p[0] >= lo && p[0] < hi).count() as i64
        };
        let h_axis = if x >= 0 {
            x - count_axis(0, x)
        } else {
            x + count_axis(x, 0)
        };
        let crossings = self
            .paths
            .iter()
            .filter(|p| p[0] < x && p[s] >= x)
            .count() as i64;
        h_axis + crossings
    }
}

/// Extracts the non-intersecting path ensemble of a tiling restricted to the
/// strip `rows = s0..=s1` and window `x_window`, relabeled so time `0` is the
/// bottom row. Paths are traced through type-2 (jump) and type-3 (stay)
/// lozenges; positions not on paths are exactly the type-1 location set.
///
/// Fails with "strip not covered" when a path enters or exits through the
/// window sides, which would make the restriction ambiguous.
pub fn paths_from_tiling(
    tiling: &Tiling,
    rows: RangeInclusive<i64>,
    x_window: RangeInclusive<i64>,
) -> Result<PathEnsemble> {
    let (s0, s1) = (*rows.start(), *rows.end());
    let (xlo, xhi) = (*x_window.start(), *x_window.end());
    if s1 < s0 || xhi < xlo {
        return Err(Error::invariant("empty strip"));
    }
    let horizon = (s1 - s0) as usize;
    let is_hole = |x: i64, s: i64| tiling.contains_center(v(x, s));

    let start_positions: Vec<i64> = (xlo..=xhi).filter(|&x| !is_hole(x, s0)).collect();
    let mut paths: Vec<Vec<i64>> = start_positions.iter().map(|&x| vec![x]).collect();

    for step in 0..horizon {
        let s = s0 + step as i64;
        // Landing spots consumed at level s+1, to detect stray particles.
        let mut landed: BTreeSet<i64> = BTreeSet::new();
        let mut prev_jump_target: Option<i64> = None;
        for path in paths.iter_mut() {
            let x = *path.last().unwrap();
            // A particle jumps if its square's upper face is taken by a
            // type-1 lozenge ((x, s+1) is a hole) or by the previous
            // particle's jump landing here.
            let forced_by_left = prev_jump_target == Some(x);
            let jumps = is_hole(x, s + 1) || forced_by_left;
            let next = if jumps { x + 1 } else { x };
            if next > xhi {
                return Err(Error::infeasible(
                    "strip not covered: path exits the window".to_string(),
                ));
            }
            if is_hole(next, s + 1) {
                return Err(Error::invariant(format!(
                    "particle at ({x}, {s}) lands on a type-1 center at ({next}, {})",
                    s + 1
                )));
            }
            prev_jump_target = jumps.then_some(next);
            landed.insert(next);
            path.push(next);
        }
        // Every non-hole site at level s+1 must be a landing; otherwise a
        // path entered through the window side.
        for x in xlo..=xhi {
            if !is_hole(x, s + 1) && !landed.contains(&x) {
                return Err(Error::infeasible(format!(
                    "strip not covered: a path enters at ({x}, {})",
                    s + 1
                )));
            }
        }
    }

    // Label so that q_0 <= 0 < q_1 along the bottom row when possible,
    // mirroring the path-extraction convention; otherwise start labels at 0.
    let first_label = match start_positions.iter().rposition(|&x| x <= 0) {
        Some(idx) => -(idx as i64),
        None => 1,
    };
    PathEnsemble::new(first_label, paths)
}

/// The strip tiling associated with a path ensemble: inside `x_window`, the
/// type-1 location set at level `s` is the complement of the particle
/// positions.
pub fn tiling_from_paths(ensemble: &PathEnsemble, x_window: RangeInclusive<i64>) -> Result<Tiling> {
    let (xlo, xhi) = (*x_window.start(), *x_window.end());
    let mut centers = Vec::new();
    for s in 0..=ensemble.horizon() {
        let occupied: BTreeSet<i64> = ensemble.positions_at(s).into_iter().collect();
        if let (Some(&min), Some(&max)) = (occupied.iter().next(), occupied.iter().last()) {
            if min < xlo || max > xhi {
                return Err(Error::invariant(format!(
                    "ensemble leaves the window at time {s}"
                )));
            }
        }
        for x in xlo..=xhi {
            if !occupied.contains(&x) {
                centers.push(v(x, s as i64));
            }
        }
    }
    Ok(Tiling::from_centers(centers))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn constant_paths_round_trip() {
        // All-type-3 strip: every path is constant.
        let q = PathEnsemble::constant(0, &[-1, 1, 2], 3).unwrap();
        let tiling = tiling_from_paths(&q, -4..=5).unwrap();
        let back = paths_from_tiling(&tiling, 0..=3, -4..=5).unwrap();
        assert_eq!(back.positions_at(0), vec![-1, 1, 2]);
        for s in 0..=3 {
            assert_eq!(back.positions_at(s), vec![-1, 1, 2]);
        }
    }

    #[test]
    fn jumping_paths_round_trip() {
        let paths = vec![vec![-2, -2, -1, -1], vec![0, 1, 2, 3], vec![1, 2, 3, 4]];
        let q = PathEnsemble::new(-1, paths.clone()).unwrap();
        let tiling = tiling_from_paths(&q, -6..=7).unwrap();
        let back = paths_from_tiling(&tiling, 0..=3, -6..=7).unwrap();
        assert_eq!(back.paths(), &paths[..]);
        // labeling convention: q_0 <= 0 < q_1 at time zero
        assert_eq!(back.position(0, 0), Some(0));
        assert_eq!(back.position(-1, 0), Some(-2));
        assert_eq!(back.position(1, 0), Some(1));
    }

    #[test]
    fn intersecting_paths_rejected() {
        assert!(PathEnsemble::new(0, vec![vec![0, 1], vec![1, 1]]).is_err());
    }

    #[test]
    fn height_identity_on_strip() {
        // Height differences along a row count non-path sites.
        let q = PathEnsemble::new(0, vec![vec![-1, 0, 0], vec![1, 1, 2], vec![2, 3, 4]]).unwrap();
        for s in 0..=2 {
            let occupied: BTreeSet<i64> = q.positions_at(s).into_iter().collect();
            for x1 in -4..4 {
                for x2 in x1..=4 {
                    let holes =
                        (x1..x2).filter(|x| !occupied.contains(x)).count() as i64;
                    let paths_crossing = (x2 - x1) - holes;
                    assert_eq!(
                        x2 - x1 - (q.height(x2, s) - q.height(x1, s)),
                        paths_crossing,
                        "x1={x1} x2={x2} s={s}"
                    );
                }
            }
        }
    }
}
