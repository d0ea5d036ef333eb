use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::lattice::{
    extremal_heights, BoundaryHeight, Domain, HeightFunction, LatticeVertex,
};

pub const DEFAULT_ENUMERATION_CAP: usize = 1_000_000;

/// Visits every height function extending `boundary`, in lexicographic order
/// of the `(y, x)`-sorted value vector. The visitor receives vertices and
/// values aligned with `order`.
pub fn for_each_height(
    domain: &Domain,
    boundary: &BoundaryHeight,
    cap: usize,
    mut visit: impl FnMut(&[LatticeVertex], &[i64]),
) -> Result<usize> {
    let (lo, hi) = extremal_heights(domain, boundary)?;
    let mut order: Vec<LatticeVertex> = domain.vertices().collect();
    order.sort_by_key(|u| (u.y, u.x));
    let index: BTreeMap<LatticeVertex, usize> =
        order.iter().enumerate().map(|(i, &u)| (u, i)).collect();

    // Earlier-assigned constraint sources of each vertex: u - (1,0), u - (0,1),
    // u - (1,1) when present (raster order guarantees they precede u).
    let preds: Vec<[Option<usize>; 3]> = order
        .iter()
        .map(|&u| {
            [
                index.get(&u.offset(-1, 0)).copied(),
                index.get(&u.offset(0, -1)).copied(),
                index.get(&u.offset(-1, -1)).copied(),
            ]
        })
        .collect();
    let bounds: Vec<(i64, i64)> = order.iter().map(|&u| (lo.at(u), hi.at(u))).collect();

    let n = order.len();
    let mut values = vec![0i64; n];
    let mut count = 0usize;

    // Iterative DFS over per-vertex candidate values.
    let mut depth = 0usize;
    let mut cursor: Vec<i64> = vec![0; n + 1];
    let range_at = |depth: usize, values: &[i64]| -> (i64, i64) {
        let (mut a, mut b) = bounds[depth];
        for p in preds[depth].iter().flatten() {
            let hp = values[*p];
            a = a.max(hp);
            b = b.min(hp + 1);
        }
        (a, b)
    };
    let (a0, _) = range_at(0, &values);
    cursor[0] = a0;
    loop {
        let (a, b) = range_at(depth, &values);
        if cursor[depth] < a {
            cursor[depth] = a;
        }
        if cursor[depth] > b {
            // backtrack
            if depth == 0 {
                break;
            }
            depth -= 1;
            cursor[depth] += 1;
            continue;
        }
        values[depth] = cursor[depth];
        if depth + 1 == n {
            count += 1;
            if count > cap {
                return Err(Error::EnumerationCap { cap });
            }
            visit(&order, &values);
            cursor[depth] += 1;
        } else {
            depth += 1;
            cursor[depth] = i64::MIN; // recomputed from range_at next round
        }
    }
    Ok(count)
}

/// Exhaustive, duplicate-free list of all height functions extending the
/// boundary data. Bounded by `cap` (default [`DEFAULT_ENUMERATION_CAP`]).
pub fn enumerate_tilings(
    domain: &Domain,
    boundary: &BoundaryHeight,
    cap: usize,
) -> Result<Vec<HeightFunction>> {
    let mut out = Vec::new();
    for_each_height(domain, boundary, cap, |order, values| {
        out.push(HeightFunction::from_map_unchecked(
            order.iter().copied().zip(values.iter().copied()).collect(),
        ));
    })?;
    Ok(out)
}

/// Number of height functions extending the boundary data.
pub fn count_tilings(domain: &Domain, boundary: &BoundaryHeight, cap: usize) -> Result<usize> {
    for_each_height(domain, boundary, cap, |_, _| {})
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::hexagon_domain;

    fn hexagon_count(a: i64, b: i64, c: i64) -> usize {
        let (dom, bh) = hexagon_domain(a, b, c).unwrap();
        count_tilings(&dom, &bh, DEFAULT_ENUMERATION_CAP).unwrap()
    }

    #[test]
    fn small_hexagon_counts_match_brute_force_box_counts() {
        assert_eq!(hexagon_count(1, 1, 1), 2);
        assert_eq!(hexagon_count(2, 2, 1), 6);
        assert_eq!(hexagon_count(2, 2, 2), 20);
        assert_eq!(hexagon_count(3, 2, 1), 10);
        assert_eq!(hexagon_count(3, 3, 2), 175);
    }

    #[test]
    fn enumerated_heights_are_valid_distinct_and_sandwiched() {
        let (dom, bh) = hexagon_domain(2, 2, 2).unwrap();
        let all = enumerate_tilings(&dom, &bh, 1000).unwrap();
        assert_eq!(all.len(), 20);
        let (lo, hi) = extremal_heights(&dom, &bh).unwrap();
        for h in &all {
            h.validate(&dom).unwrap();
            assert!(lo.le(h) && h.le(&hi));
        }
        for i in 0..all.len() {
            for j in (i + 1)..all.len() {
                assert_ne!(all[i], all[j]);
            }
        }
    }

    #[test]
    fn cap_is_enforced() {
        let (dom, bh) = hexagon_domain(2, 2, 2).unwrap();
        match count_tilings(&dom, &bh, 5) {
            Err(Error::EnumerationCap { cap: 5 }) => {}
            other => panic!("expected cap error, got {other:?}"),
        }
    }
}
