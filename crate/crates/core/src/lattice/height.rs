use std::collections::BTreeMap;

use super::{Domain, LatticeVertex, FORWARD_DIRS};
use crate::error::{Error, Result};

/// Integer boundary data: one value per boundary vertex of a domain.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct BoundaryHeight {
    values: BTreeMap<LatticeVertex, i64>,
}

impl BoundaryHeight {
    /// Validates that the keys are exactly the domain boundary and that the
    /// increment rule holds along boundary-boundary edges (a necessary
    /// condition for extendability).
    pub fn new(domain: &Domain, values: BTreeMap<LatticeVertex, i64>) -> Result<BoundaryHeight> {
        for u in domain.boundary() {
            if !values.contains_key(&u) {
                return Err(Error::invariant(format!("missing boundary value at {u:?}")));
            }
        }
        for u in values.keys() {
            if !domain.is_boundary(*u) {
                return Err(Error::invariant(format!(
                    "{u:?} carries a boundary value but is not a boundary vertex"
                )));
            }
        }
        let bh = BoundaryHeight { values };
        for (u, w) in domain.forward_edges() {
            if let (Some(hu), Some(hw)) = (bh.get(u), bh.get(w)) {
                let delta = hw - hu;
                if delta < 0 || delta > 1 {
                    return Err(Error::BadIncrement { from: u, to: w, delta });
                }
            }
        }
        Ok(bh)
    }

    /// Restriction of a full height function to the boundary.
    pub fn from_height(domain: &Domain, height: &HeightFunction) -> Result<BoundaryHeight> {
        let values = domain
            .boundary()
            .map(|u| height.get(u).map(|h| (u, h)).ok_or(Error::OutsideDomain(u)))
            .collect::<Result<_>>()?;
        BoundaryHeight::new(domain, values)
    }

    pub fn get(&self, u: LatticeVertex) -> Option<i64> {
        self.values.get(&u).copied()
    }

    pub fn iter(&self) -> impl Iterator<Item = (LatticeVertex, i64)> + '_ {
        self.values.iter().map(|(u, h)| (*u, *h))
    }

    /// Pointwise shift by a constant.
    pub fn shifted(&self, delta: i64) -> BoundaryHeight {
        BoundaryHeight {
            values: self.values.iter().map(|(u, h)| (*u, h + delta)).collect(),
        }
    }

    /// Pointwise order.
    pub fn le(&self, other: &BoundaryHeight) -> bool {
        self.values
            .iter()
            .all(|(u, h)| other.get(*u).is_some_and(|g| *h <= g))
    }
}

/// An integer height function on the vertices of a domain, obeying the
/// increment rule `H(v) - H(u) in {0,1}` along forward edges.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct HeightFunction {
    values: BTreeMap<LatticeVertex, i64>,
}

impl HeightFunction {
    /// Wraps a value table after validating the increment rule on `domain`.
    pub fn new(domain: &Domain, values: BTreeMap<LatticeVertex, i64>) -> Result<HeightFunction> {
        for u in domain.vertices() {
            if !values.contains_key(&u) {
                return Err(Error::invariant(format!("missing height at {u:?}")));
            }
        }
        let hf = HeightFunction { values };
        hf.validate(domain)?;
        Ok(hf)
    }

    pub(crate) fn from_map_unchecked(values: BTreeMap<LatticeVertex, i64>) -> HeightFunction {
        HeightFunction { values }
    }

    /// Checks the increment rule along every forward edge of the domain,
    /// reporting the first offending edge.
    pub fn validate(&self, domain: &Domain) -> Result<()> {
        for (u, w) in domain.forward_edges() {
            let delta = self.values[&w] - self.values[&u];
            if delta < 0 || delta > 1 {
                return Err(Error::BadIncrement { from: u, to: w, delta });
            }
        }
        Ok(())
    }

    pub fn get(&self, u: LatticeVertex) -> Option<i64> {
        self.values.get(&u).copied()
    }

    /// Direct access for hot loops; panics off-domain.
    #[inline]
    pub fn at(&self, u: LatticeVertex) -> i64 {
        self.values[&u]
    }

    pub(crate) fn set(&mut self, u: LatticeVertex, h: i64) {
        self.values.insert(u, h);
    }

    pub fn iter(&self) -> impl Iterator<Item = (LatticeVertex, i64)> + '_ {
        self.values.iter().map(|(u, h)| (*u, *h))
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn shifted(&self, delta: i64) -> HeightFunction {
        HeightFunction {
            values: self.values.iter().map(|(u, h)| (*u, h + delta)).collect(),
        }
    }

    pub fn le(&self, other: &HeightFunction) -> bool {
        self.values
            .iter()
            .all(|(u, h)| other.get(*u).is_some_and(|g| *h <= g))
    }
}

/// Fixpoint relaxation for the pointwise extremal extensions of boundary
/// data. Every forward edge `(u, w)` imposes `H(u) <= H(w) <= H(u) + 1`;
/// the constraint set is a distributive lattice, so when it is consistent the
/// relaxations below converge to its least and greatest elements.
fn relax(
    domain: &Domain,
    boundary: &BoundaryHeight,
    maximal: bool,
) -> Result<BTreeMap<LatticeVertex, i64>> {
    let span = domain.extent() + 2;
    let sentinel = if maximal { span } else { -span };
    let mut h: BTreeMap<LatticeVertex, i64> = domain
        .vertices()
        .map(|u| {
            let base = boundary.get(u);
            (u, base.map_or_else(|| base_guess(boundary, sentinel), |b| b))
        })
        .collect();

    fn base_guess(boundary: &BoundaryHeight, sentinel: i64) -> i64 {
        // Interior seed: beyond any feasible value in the relaxation direction.
        let anchor = boundary.iter().next().map(|(_, h)| h).unwrap_or(0);
        anchor + sentinel
    }

    let edges: Vec<(LatticeVertex, LatticeVertex)> = domain.forward_edges().collect();
    loop {
        let mut changed = false;
        for &(u, w) in &edges {
            let (hu, hw) = (h[&u], h[&w]);
            if maximal {
                // H(w) <= H(u) + 1 and H(u) <= H(w)
                if hw > hu + 1 {
                    h.insert(w, hu + 1);
                    changed = true;
                } else if hu > hw {
                    h.insert(u, hw);
                    changed = true;
                }
            } else {
                // H(w) >= H(u) and H(u) >= H(w) - 1
                if hw < h[&u] {
                    h.insert(w, h[&u]);
                    changed = true;
                } else if h[&u] < h[&w] - 1 {
                    h.insert(u, h[&w] - 1);
                    changed = true;
                }
            }
        }
        if !changed {
            break;
        }
    }

    for (u, b) in boundary.iter() {
        if h[&u] != b {
            return Err(Error::Untileable);
        }
    }
    Ok(h)
}

/// Pointwise minimal and maximal height functions extending the boundary
/// data, in this order. Errors with [`Error::Untileable`] when no extension
/// exists.
pub fn extremal_heights(
    domain: &Domain,
    boundary: &BoundaryHeight,
) -> Result<(HeightFunction, HeightFunction)> {
    let hi = relax(domain, boundary, true)?;
    let lo = relax(domain, boundary, false)?;
    for u in domain.vertices() {
        if lo[&u] > hi[&u] {
            return Err(Error::Untileable);
        }
    }
    Ok((
        HeightFunction { values: lo },
        HeightFunction { values: hi },
    ))
}

/// Whether the boundary data admits at least one height-function extension.
pub fn is_tileable(domain: &Domain, boundary: &BoundaryHeight) -> bool {
    extremal_heights(domain, boundary).is_ok()
}

/// Admissible values at `u` given the current heights of its neighbors: the
/// interval cut out by the increment rule, which has one or two elements for
/// a valid configuration.
pub(crate) fn local_interval(domain: &Domain, height: &HeightFunction, u: LatticeVertex) -> (i64, i64) {
    let mut lo = i64::MIN;
    let mut hi = i64::MAX;
    for &(dx, dy) in &FORWARD_DIRS {
        let w = u.offset(dx, dy);
        if domain.contains(w) {
            let hw = height.at(w);
            lo = lo.max(hw - 1);
            hi = hi.min(hw);
        }
        let p = u.offset(-dx, -dy);
        if domain.contains(p) {
            let hp = height.at(p);
            lo = lo.max(hp);
            hi = hi.min(hp + 1);
        }
    }
    (lo, hi)
}

#[cfg(test)]
mod tests {
    use super::super::hexagon_domain;
    use super::*;

    #[test]
    fn extremals_on_unit_hexagon_differ_at_center() {
        let (dom, bh) = hexagon_domain(1, 1, 1).unwrap();
        let (lo, hi) = extremal_heights(&dom, &bh).unwrap();
        assert_eq!(lo.at(super::super::v(1, 1)), 0);
        assert_eq!(hi.at(super::super::v(1, 1)), 1);
        assert!(lo.le(&hi));
        assert!(lo != hi);
    }

    #[test]
    fn hexagons_are_tileable() {
        for a in 1..=3 {
            for b in 1..=3 {
                for c in 1..=3 {
                    let (dom, bh) = hexagon_domain(a, b, c).unwrap();
                    assert!(is_tileable(&dom, &bh), "hexagon {a}x{b}x{c}");
                }
            }
        }
    }

    #[test]
    fn increment_of_two_is_untileable() {
        let (dom, bh) = hexagon_domain(2, 2, 2).unwrap();
        // Corrupt one boundary value to create a forbidden jump.
        let mut vals: BTreeMap<LatticeVertex, i64> = bh.iter().collect();
        let u = super::super::v(1, 0);
        vals.insert(u, 2);
        assert!(BoundaryHeight::new(&dom, vals).is_err());
    }

    #[test]
    fn rigid_boundary_has_equal_extremals() {
        // Slope-(1,0)-like data on a 1x1x1 hexagon is not rigid, but the
        // all-zero boundary on a single-row strip is.
        let dom = Domain::new((0..4).map(|x| super::super::v(x, 0))).unwrap();
        let bh = BoundaryHeight::new(&dom, dom.vertices().map(|u| (u, 0)).collect()).unwrap();
        let (lo, hi) = extremal_heights(&dom, &bh).unwrap();
        assert_eq!(lo, hi);
    }
}
