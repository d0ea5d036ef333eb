use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::lattice::{BoundaryHeight, Domain, HeightFunction, LatticeVertex, FORWARD_DIRS};

const NONE: u32 = u32::MAX;

/// Indexed view of a domain for hot sampling loops: vertices flattened to
/// `0..n` with precomputed neighbor tables (three forward, three backward).
pub(crate) struct Grid {
    verts: Vec<LatticeVertex>,
    index: BTreeMap<LatticeVertex, u32>,
    forward: Vec<[u32; 3]>,
    backward: Vec<[u32; 3]>,
    interior: Vec<u32>,
}

impl Grid {
    pub fn new(domain: &Domain) -> Grid {
        let verts: Vec<LatticeVertex> = domain.vertices().collect();
        let index: BTreeMap<LatticeVertex, u32> = verts
            .iter()
            .enumerate()
            .map(|(i, &u)| (u, i as u32))
            .collect();
        let look = |u: LatticeVertex| index.get(&u).copied().unwrap_or(NONE);
        let forward = verts
            .iter()
            .map(|&u| {
                [
                    look(u.offset(FORWARD_DIRS[0].0, FORWARD_DIRS[0].1)),
                    look(u.offset(FORWARD_DIRS[1].0, FORWARD_DIRS[1].1)),
                    look(u.offset(FORWARD_DIRS[2].0, FORWARD_DIRS[2].1)),
                ]
            })
            .collect();
        let backward = verts
            .iter()
            .map(|&u| {
                [
                    look(u.offset(-FORWARD_DIRS[0].0, -FORWARD_DIRS[0].1)),
                    look(u.offset(-FORWARD_DIRS[1].0, -FORWARD_DIRS[1].1)),
                    look(u.offset(-FORWARD_DIRS[2].0, -FORWARD_DIRS[2].1)),
                ]
            })
            .collect();
        let interior = verts
            .iter()
            .enumerate()
            .filter(|(_, &u)| !domain.is_boundary(u))
            .map(|(i, _)| i as u32)
            .collect();
        Grid { verts, index, forward, backward, interior }
    }

    pub fn len(&self) -> usize {
        self.verts.len()
    }

    pub fn vertex(&self, i: u32) -> LatticeVertex {
        self.verts[i as usize]
    }

    pub fn index_of(&self, u: LatticeVertex) -> Option<u32> {
        self.index.get(&u).copied()
    }

    pub fn interior(&self) -> &[u32] {
        &self.interior
    }

    pub fn flatten(&self, h: &HeightFunction) -> Result<Vec<i64>> {
        self.verts
            .iter()
            .map(|&u| h.get(u).ok_or(Error::OutsideDomain(u)))
            .collect()
    }

    pub fn unflatten(&self, values: &[i64]) -> HeightFunction {
        HeightFunction::from_map_unchecked(
            self.verts
                .iter()
                .zip(values)
                .map(|(&u, &h)| (u, h))
                .collect(),
        )
    }

    pub fn boundary_values(&self, b: &BoundaryHeight) -> Vec<Option<i64>> {
        self.verts.iter().map(|&u| b.get(u)).collect()
    }

    /// Admissible interval at site `i` given current neighbor values; for a
    /// valid configuration it contains the current value and has length <= 1.
    #[inline]
    pub fn interval(&self, values: &[i64], i: u32) -> (i64, i64) {
        let mut lo = i64::MIN;
        let mut hi = i64::MAX;
        for &w in &self.forward[i as usize] {
            if w != NONE {
                let hw = values[w as usize];
                lo = lo.max(hw - 1);
                hi = hi.min(hw);
            }
        }
        for &p in &self.backward[i as usize] {
            if p != NONE {
                let hp = values[p as usize];
                lo = lo.max(hp);
                hi = hi.min(hp + 1);
            }
        }
        (lo, hi)
    }
}
