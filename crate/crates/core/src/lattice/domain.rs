use std::collections::{BTreeMap, BTreeSet, VecDeque};

use super::{v, BoundaryHeight, LatticeVertex, FORWARD_DIRS};
use crate::error::{Error, Result};

/// A finite simply-connected induced subgraph of the triangular lattice.
///
/// Edges are implicit: every lattice edge between two stored vertices belongs
/// to the domain. The boundary is the set of vertices adjacent (in the full
/// lattice) to a vertex outside the domain.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Domain {
    vertices: BTreeSet<LatticeVertex>,
    boundary: BTreeSet<LatticeVertex>,
}

/// All six lattice neighbors of a vertex.
pub(crate) fn neighbors(u: LatticeVertex) -> [LatticeVertex; 6] {
    [
        u.offset(1, 0),
        u.offset(-1, 0),
        u.offset(0, 1),
        u.offset(0, -1),
        u.offset(1, 1),
        u.offset(-1, -1),
    ]
}

impl Domain {
    /// Builds a domain from its vertex set, validating connectivity and
    /// simple connectivity (no enclosed holes) by flood fill.
    pub fn new(vertices: impl IntoIterator<Item = LatticeVertex>) -> Result<Domain> {
        let vertices: BTreeSet<LatticeVertex> = vertices.into_iter().collect();
        if vertices.is_empty() {
            return Err(Error::invariant("domain must be nonempty"));
        }

        // Connectivity of the induced subgraph.
        let start = *vertices.iter().next().unwrap();
        let mut seen = BTreeSet::new();
        seen.insert(start);
        let mut queue = VecDeque::from([start]);
        while let Some(u) = queue.pop_front() {
            for n in neighbors(u) {
                if vertices.contains(&n) && seen.insert(n) {
                    queue.push_back(n);
                }
            }
        }
        if seen.len() != vertices.len() {
            return Err(Error::invariant("domain is not connected"));
        }

        // Simple connectivity: every complement vertex in a margin-padded
        // bounding box must reach the box frame.
        let min_x = vertices.iter().map(|u| u.x).min().unwrap() - 1;
        let max_x = vertices.iter().map(|u| u.x).max().unwrap() + 1;
        let min_y = vertices.iter().map(|u| u.y).min().unwrap() - 1;
        let max_y = vertices.iter().map(|u| u.y).max().unwrap() + 1;
        let corner = v(min_x, min_y);
        let mut outside = BTreeSet::new();
        outside.insert(corner);
        let mut queue = VecDeque::from([corner]);
        while let Some(u) = queue.pop_front() {
            for n in neighbors(u) {
                if n.x < min_x || n.x > max_x || n.y < min_y || n.y > max_y {
                    continue;
                }
                if !vertices.contains(&n) && outside.insert(n) {
                    queue.push_back(n);
                }
            }
        }
        let box_area = ((max_x - min_x + 1) * (max_y - min_y + 1)) as usize;
        if outside.len() + vertices.len() != box_area {
            return Err(Error::NotSimplyConnected);
        }

        let boundary = vertices
            .iter()
            .copied()
            .filter(|&u| neighbors(u).iter().any(|n| !vertices.contains(n)))
            .collect();

        Ok(Domain { vertices, boundary })
    }

    pub fn contains(&self, u: LatticeVertex) -> bool {
        self.vertices.contains(&u)
    }

    pub fn is_boundary(&self, u: LatticeVertex) -> bool {
        self.boundary.contains(&u)
    }

    pub fn vertices(&self) -> impl Iterator<Item = LatticeVertex> + '_ {
        self.vertices.iter().copied()
    }

    pub fn boundary(&self) -> impl Iterator<Item = LatticeVertex> + '_ {
        self.boundary.iter().copied()
    }

    pub fn interior(&self) -> impl Iterator<Item = LatticeVertex> + '_ {
        self.vertices
            .iter()
            .copied()
            .filter(move |u| !self.boundary.contains(u))
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn boundary_len(&self) -> usize {
        self.boundary.len()
    }

    pub fn interior_len(&self) -> usize {
        self.vertices.len() - self.boundary.len()
    }

    /// Graph diameter proxy: the L-infinity extent of the vertex set.
    pub fn extent(&self) -> i64 {
        let min_x = self.vertices.iter().map(|u| u.x).min().unwrap();
        let max_x = self.vertices.iter().map(|u| u.x).max().unwrap();
        let min_y = self.vertices.iter().map(|u| u.y).min().unwrap();
        let max_y = self.vertices.iter().map(|u| u.y).max().unwrap();
        (max_x - min_x).max(max_y - min_y)
    }

    /// Forward edges `(u, u + d)` with both endpoints in the domain.
    pub fn forward_edges(&self) -> impl Iterator<Item = (LatticeVertex, LatticeVertex)> + '_ {
        self.vertices.iter().flat_map(move |&u| {
            FORWARD_DIRS.iter().filter_map(move |&(dx, dy)| {
                let w = u.offset(dx, dy);
                self.contains(w).then_some((u, w))
            })
        })
    }
}

/// The `A x B x C` hexagon together with its unique boundary height function
/// normalized to vanish at the origin.
///
/// Vertex set: all lattice points with `0 <= x <= A + C`, `0 <= y <= B + C`,
/// `x - y <= A`, `y - x <= B`. Boundary heights: `0` on the two sides through
/// the origin, `y` on `x = y + A`, `x` on `y = x + B`, and `C` on the two far
/// sides.
pub fn hexagon_domain(a: i64, b: i64, c: i64) -> Result<(Domain, BoundaryHeight)> {
    if a < 1 || b < 1 || c < 1 {
        return Err(Error::invariant("hexagon sides must be positive"));
    }
    let mut verts = Vec::new();
    for x in 0..=(a + c) {
        for y in 0..=(b + c) {
            if x - y <= a && y - x <= b {
                verts.push(v(x, y));
            }
        }
    }
    let domain = Domain::new(verts)?;
    let mut values = BTreeMap::new();
    for u in domain.boundary() {
        let h = if u.x == 0 || u.y == 0 {
            0
        } else if u.x - u.y == a {
            u.y
        } else if u.y - u.x == b {
            u.x
        } else if u.x == a + c || u.y == b + c {
            c
        } else {
            unreachable!("hexagon boundary classification");
        };
        values.insert(u, h);
    }
    let boundary = BoundaryHeight::new(&domain, values)?;
    Ok((domain, boundary))
}

/// The lattice ball `{x^2 + y^2 < N^2}`.
pub fn disk_domain(n: i64) -> Result<Domain> {
    if n < 1 {
        return Err(Error::invariant("disk radius must be positive"));
    }
    let mut verts = Vec::new();
    for x in -n..=n {
        for y in -n..=n {
            if x * x + y * y < n * n {
                verts.push(v(x, y));
            }
        }
    }
    Domain::new(verts)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn unit_hexagon_has_seven_vertices() {
        let (dom, bh) = hexagon_domain(1, 1, 1).unwrap();
        assert_eq!(dom.len(), 7);
        assert!(dom.contains(v(2, 2)));
        assert_eq!(bh.get(v(2, 2)), Some(1));
        // only the center (1,1) is interior
        assert_eq!(dom.interior().collect::<Vec<_>>(), vec![v(1, 1)]);
    }

    #[test]
    fn hexagon_543_matches_figure_heights() {
        let (_, bh) = hexagon_domain(5, 4, 3).unwrap();
        assert_eq!(bh.get(v(8, 7)), Some(3));
        assert_eq!(bh.get(v(5, 0)), Some(0));
        assert_eq!(bh.get(v(6, 1)), Some(1));
        assert_eq!(bh.get(v(1, 5)), Some(1));
        assert_eq!(bh.get(v(0, 4)), Some(0));
    }

    #[test]
    fn disk_sizes() {
        assert_eq!(disk_domain(1).unwrap().len(), 1);
        let d2 = disk_domain(2).unwrap();
        assert_eq!(d2.len(), 9);
        let d5 = disk_domain(5).unwrap();
        for u in d5.boundary() {
            assert!(neighbors(u).iter().any(|n| !d5.contains(*n)));
        }
    }

    #[test]
    fn hole_is_rejected() {
        // 5x5 block minus its center
        let verts = (0..5)
            .flat_map(|x| (0..5).map(move |y| v(x, y)))
            .filter(|&u| u != v(2, 2));
        match Domain::new(verts) {
            Err(Error::NotSimplyConnected) => {}
            other => panic!("expected hole rejection, got {other:?}"),
        }
    }
}
