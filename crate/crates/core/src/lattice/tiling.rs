use std::collections::{BTreeMap, BTreeSet, VecDeque};

use super::{v, Domain, HeightFunction, LatticeVertex};
use crate::error::{Error, Result};

/// One of the two triangular faces of the unit square at `anchor`.
///
/// `Lower` is `{a, a+(1,0), a+(1,1)}`, `Upper` is `{a, a+(0,1), a+(1,1)}`.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub enum FaceKind {
    Lower,
    Upper,
}

#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct Face {
    pub anchor: LatticeVertex,
    pub kind: FaceKind,
}

impl Face {
    pub fn lower(anchor: LatticeVertex) -> Face {
        Face { anchor, kind: FaceKind::Lower }
    }

    pub fn upper(anchor: LatticeVertex) -> Face {
        Face { anchor, kind: FaceKind::Upper }
    }

    pub fn vertices(&self) -> [LatticeVertex; 3] {
        let a = self.anchor;
        match self.kind {
            FaceKind::Lower => [a, a.offset(1, 0), a.offset(1, 1)],
            FaceKind::Upper => [a, a.offset(0, 1), a.offset(1, 1)],
        }
    }

    pub fn in_domain(&self, domain: &Domain) -> bool {
        self.vertices().iter().all(|&u| domain.contains(u))
    }
}

/// Lozenge orientations.
///
/// With anchor `a`: type 1 occupies `Upper(a)` and `Lower(a + (0,1))` (glued
/// across the horizontal edge at height `a.y + 1`); type 2 occupies
/// `Lower(a)` and `Upper(a + (1,0))` (vertical glue edge); type 3 occupies
/// both faces of the square at `a` (diagonal glue edge).
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub enum LozengeType {
    One,
    Two,
    Three,
}

#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct Lozenge {
    pub kind: LozengeType,
    pub anchor: LatticeVertex,
}

impl Lozenge {
    pub fn faces(&self) -> [Face; 2] {
        let a = self.anchor;
        match self.kind {
            LozengeType::One => [Face::upper(a), Face::lower(a.offset(0, 1))],
            LozengeType::Two => [Face::lower(a), Face::upper(a.offset(1, 0))],
            LozengeType::Three => [Face::lower(a), Face::upper(a)],
        }
    }

    /// The four corners in drawing order.
    pub fn corners(&self) -> [LatticeVertex; 4] {
        let a = self.anchor;
        match self.kind {
            LozengeType::One => [a, a.offset(0, 1), a.offset(1, 2), a.offset(1, 1)],
            LozengeType::Two => [a, a.offset(1, 0), a.offset(2, 1), a.offset(1, 1)],
            LozengeType::Three => [a, a.offset(1, 0), a.offset(1, 1), a.offset(0, 1)],
        }
    }

    /// The type-1 location-set point, when applicable: the integer point
    /// `(x, y)` with `(x + 1/2, y)` the lozenge center.
    pub fn type1_center(&self) -> Option<LatticeVertex> {
        match self.kind {
            LozengeType::One => Some(self.anchor.offset(0, 1)),
            _ => None,
        }
    }
}

/// A lozenge tiling, canonically encoded by its type-1 location set: the
/// integer points `(x, y)` such that `(x + 1/2, y)` is the center of a
/// type-1 lozenge.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Tiling {
    type1_centers: BTreeSet<LatticeVertex>,
}

impl Tiling {
    pub fn from_centers(centers: impl IntoIterator<Item = LatticeVertex>) -> Tiling {
        Tiling {
            type1_centers: centers.into_iter().collect(),
        }
    }

    pub fn type1_centers(&self) -> impl Iterator<Item = LatticeVertex> + '_ {
        self.type1_centers.iter().copied()
    }

    pub fn contains_center(&self, u: LatticeVertex) -> bool {
        self.type1_centers.contains(&u)
    }

    pub fn center_count(&self) -> usize {
        self.type1_centers.len()
    }

    /// Reconstructs the full face matching of this tiling on `domain`.
    ///
    /// Type-1 lozenges are read off the location set; the remaining faces of
    /// each square row pair into type-2/type-3 lozenges along chains
    /// `..., Lower(x-1), Upper(x), Lower(x), Upper(x+1), ...` whose perfect
    /// matching is unique. Fails when the location set is inconsistent with
    /// a tiling of the domain.
    pub fn face_matching(&self, domain: &Domain) -> Result<Vec<Lozenge>> {
        let faces: BTreeSet<Face> = domain_faces(domain).collect();
        let mut consumed: BTreeSet<Face> = BTreeSet::new();
        let mut lozenges = Vec::new();

        for &c in &self.type1_centers {
            let loz = Lozenge { kind: LozengeType::One, anchor: c.offset(0, -1) };
            let [f1, f2] = loz.faces();
            if !faces.contains(&f1) && !faces.contains(&f2) {
                return Err(Error::invariant(format!(
                    "type-1 center {c:?} touches no face of the domain"
                )));
            }
            for f in [f1, f2] {
                if !consumed.insert(f) {
                    return Err(Error::invariant(format!(
                        "face {f:?} claimed by two type-1 lozenges"
                    )));
                }
            }
            lozenges.push(loz);
        }

        // Row chains over the remaining faces. Order within a row y:
        // Upper(x) < Lower(x) < Upper(x+1).
        let mut rows: BTreeMap<i64, Vec<(i64, FaceKind)>> = BTreeMap::new();
        for f in faces.iter().filter(|f| !consumed.contains(f)) {
            rows.entry(f.anchor.y).or_default().push((f.anchor.x, f.kind));
        }
        for (y, mut row) in rows {
            row.sort_by_key(|&(x, kind)| (x, kind == FaceKind::Lower));
            let mut chain: Vec<(i64, FaceKind)> = Vec::new();
            let mut flush = |chain: &mut Vec<(i64, FaceKind)>| -> Result<()> {
                if chain.len() % 2 != 0 {
                    return Err(Error::invariant(format!(
                        "unmatchable face chain in row {y} starting at {:?}",
                        chain.first()
                    )));
                }
                for pair in chain.chunks(2) {
                    let loz = match (pair[0], pair[1]) {
                        ((x, FaceKind::Upper), (x2, FaceKind::Lower)) if x == x2 => {
                            Lozenge { kind: LozengeType::Three, anchor: v(x, y) }
                        }
                        ((x, FaceKind::Lower), (x2, FaceKind::Upper)) if x2 == x + 1 => {
                            Lozenge { kind: LozengeType::Two, anchor: v(x, y) }
                        }
                        (a, b) => {
                            return Err(Error::invariant(format!(
                                "non-adjacent faces {a:?}, {b:?} forced together in row {y}"
                            )))
                        }
                    };
                    lozenges.push(loz);
                }
                chain.clear();
                Ok(())
            };
            for &(x, kind) in &row {
                let adjacent = match (chain.last(), kind) {
                    (None, _) => true,
                    (Some(&(px, FaceKind::Upper)), FaceKind::Lower) => px == x,
                    (Some(&(px, FaceKind::Lower)), FaceKind::Upper) => px + 1 == x,
                    _ => false,
                };
                if !adjacent {
                    flush(&mut chain)?;
                }
                chain.push((x, kind));
            }
            flush(&mut chain)?;
        }
        Ok(lozenges)
    }
}

/// All faces with all three vertices in the domain.
pub fn domain_faces(domain: &Domain) -> impl Iterator<Item = Face> + '_ {
    domain.vertices().flat_map(move |a| {
        [Face::lower(a), Face::upper(a)]
            .into_iter()
            .filter(|f| f.in_domain(domain))
    })
}

/// Height increments along the three forward edges of a face, as dictated by
/// the lozenge the face belongs to. Edge order for `Lower(a)`:
/// `a->a+(1,0)`, `a+(1,0)->a+(1,1)`, `a->a+(1,1)`; for `Upper(a)`:
/// `a->a+(0,1)`, `a+(0,1)->a+(1,1)`, `a->a+(1,1)`.
fn face_increments(face: Face, loz: &Lozenge) -> [i64; 3] {
    match (face.kind, loz.kind) {
        (FaceKind::Lower, LozengeType::One) => [1, 0, 1],   // upper half of a type-1
        (FaceKind::Lower, LozengeType::Two) => [0, 1, 1],   // left half of a type-2
        (FaceKind::Lower, LozengeType::Three) => [0, 0, 0],
        (FaceKind::Upper, LozengeType::One) => [0, 1, 1],   // lower half of a type-1
        (FaceKind::Upper, LozengeType::Two) => [1, 0, 1],   // right half of a type-2
        (FaceKind::Upper, LozengeType::Three) => [0, 0, 0],
    }
}

fn face_edges(face: Face) -> [(LatticeVertex, LatticeVertex); 3] {
    let a = face.anchor;
    match face.kind {
        FaceKind::Lower => [
            (a, a.offset(1, 0)),
            (a.offset(1, 0), a.offset(1, 1)),
            (a, a.offset(1, 1)),
        ],
        FaceKind::Upper => [
            (a, a.offset(0, 1)),
            (a.offset(0, 1), a.offset(1, 1)),
            (a, a.offset(1, 1)),
        ],
    }
}

/// Integrates the height function of a tiling over the domain, normalized by
/// `H(anchor) = anchor_value`.
pub fn height_from_tiling(
    tiling: &Tiling,
    domain: &Domain,
    anchor: LatticeVertex,
    anchor_value: i64,
) -> Result<HeightFunction> {
    if !domain.contains(anchor) {
        return Err(Error::OutsideDomain(anchor));
    }
    let lozenges = tiling.face_matching(domain)?;

    // Edge increments from the face matching; shared edges must agree.
    let mut incr: BTreeMap<(LatticeVertex, LatticeVertex), i64> = BTreeMap::new();
    for loz in &lozenges {
        for face in loz.faces() {
            for ((u, w), d) in face_edges(face).into_iter().zip(face_increments(face, loz)) {
                if let Some(prev) = incr.insert((u, w), d) {
                    if prev != d {
                        return Err(Error::invariant(format!(
                            "conflicting increments on edge {u:?} -> {w:?}"
                        )));
                    }
                }
            }
        }
    }

    let mut values = BTreeMap::new();
    values.insert(anchor, anchor_value);
    let mut queue = VecDeque::from([anchor]);
    while let Some(u) = queue.pop_front() {
        let hu = values[&u];
        for (&(a, b), &d) in incr.range((u, v(i64::MIN, i64::MIN))..=(u, v(i64::MAX, i64::MAX))) {
            debug_assert_eq!(a, u);
            if domain.contains(b) && !values.contains_key(&b) {
                values.insert(b, hu + d);
                queue.push_back(b);
            }
        }
        // Backward traversal over edges ending at u.
        for (&(a, b), &d) in incr.iter() {
            if b == u && domain.contains(a) && !values.contains_key(&a) {
                values.insert(a, values[&u] - d);
                queue.push_back(a);
            }
        }
    }

    if values.len() != domain.len() {
        return Err(Error::invariant(
            "tiling does not reach every domain vertex",
        ));
    }
    let hf = HeightFunction::from_map_unchecked(values);
    hf.validate(domain)?;
    Ok(hf)
}

/// Reads the tiling off a height function: the type-1 location set is exactly
/// the set of horizontal forward edges with increment one.
pub fn tiling_from_height(height: &HeightFunction, domain: &Domain) -> Result<Tiling> {
    height.validate(domain)?;
    let mut centers = BTreeSet::new();
    for u in domain.vertices() {
        let w = u.offset(1, 0);
        if domain.contains(w) && height.at(w) - height.at(u) == 1 {
            centers.insert(u);
        }
    }
    Ok(Tiling { type1_centers: centers })
}

/// Classifies every in-domain face by the lozenge it belongs to, reading the
/// increments of the height function directly. Unlike
/// [`Tiling::face_matching`] this handles free tilings, where a boundary
/// lozenge may keep one face outside the domain.
pub fn lozenges_from_height(
    height: &HeightFunction,
    domain: &Domain,
) -> Result<Vec<(Face, Lozenge)>> {
    height.validate(domain)?;
    let mut out = Vec::new();
    for face in domain_faces(domain) {
        let [e0, e1, _] = face_edges(face);
        let d0 = height.at(e0.1) - height.at(e0.0);
        let d1 = height.at(e1.1) - height.at(e1.0);
        let a = face.anchor;
        let loz = match (face.kind, d0, d1) {
            (FaceKind::Lower, 1, 0) => Lozenge { kind: LozengeType::One, anchor: a.offset(0, -1) },
            (FaceKind::Lower, 0, 1) => Lozenge { kind: LozengeType::Two, anchor: a },
            (FaceKind::Lower, 0, 0) => Lozenge { kind: LozengeType::Three, anchor: a },
            (FaceKind::Upper, 0, 1) => Lozenge { kind: LozengeType::One, anchor: a },
            (FaceKind::Upper, 1, 0) => Lozenge { kind: LozengeType::Two, anchor: a.offset(-1, 0) },
            (FaceKind::Upper, 0, 0) => Lozenge { kind: LozengeType::Three, anchor: a },
            _ => {
                return Err(Error::invariant(format!(
                    "face {face:?} has increments ({d0},{d1}) matching no lozenge"
                )))
            }
        };
        out.push((face, loz));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::super::{extremal_heights, hexagon_domain};
    use super::*;

    /// The height table of the 5x4x3 hexagon tiling depicted in the source
    /// figure, row by row.
    fn figure_heights() -> BTreeMap<LatticeVertex, i64> {
        let rows: [(i64, i64, &[i64]); 8] = [
            (0, 0, &[0, 0, 0, 0, 0, 0]),
            (1, 0, &[0, 0, 0, 0, 1, 1, 1]),
            (2, 0, &[0, 0, 0, 1, 1, 1, 2, 2]),
            (3, 0, &[0, 0, 1, 1, 2, 2, 2, 2, 3]),
            (4, 0, &[0, 1, 1, 1, 2, 2, 2, 3, 3]),
            (5, 1, &[1, 1, 2, 2, 2, 2, 3, 3]),
            (6, 2, &[2, 2, 2, 2, 3, 3, 3]),
            (7, 3, &[3, 3, 3, 3, 3, 3]),
        ];
        let mut m = BTreeMap::new();
        for (y, x0, vals) in rows {
            for (i, &h) in vals.iter().enumerate() {
                m.insert(v(x0 + i as i64, y), h);
            }
        }
        m
    }

    #[test]
    fn figure_tiling_round_trip() {
        let (dom, _) = hexagon_domain(5, 4, 3).unwrap();
        let hf = HeightFunction::new(&dom, figure_heights()).unwrap();
        let tiling = tiling_from_height(&hf, &dom).unwrap();
        let back = height_from_tiling(&tiling, &dom, v(0, 0), 0).unwrap();
        assert_eq!(back, hf);
        assert_eq!(back.at(v(8, 7)), 3);
        assert_eq!(back.at(v(5, 0)), 0);
    }

    #[test]
    fn zero_heights_make_all_type3() {
        // The all-zero height on a hexagon is a free tiling: every in-domain
        // face sits in a type-3 lozenge (some poke past the boundary).
        let (dom, _) = hexagon_domain(2, 2, 2).unwrap();
        let hf = HeightFunction::new(&dom, dom.vertices().map(|u| (u, 0)).collect()).unwrap();
        let tiling = tiling_from_height(&hf, &dom).unwrap();
        assert_eq!(tiling.center_count(), 0);
        for (_, loz) in lozenges_from_height(&hf, &dom).unwrap() {
            assert_eq!(loz.kind, LozengeType::Three);
        }
    }

    #[test]
    fn minimal_hexagon_height_matches_empty_stack() {
        // The pointwise-minimal height of the hexagon boundary is the empty
        // box stack: zero on the bottom-left boundary edges.
        let (dom, bh) = hexagon_domain(3, 2, 2).unwrap();
        let (lo, _) = extremal_heights(&dom, &bh).unwrap();
        for u in dom.vertices().filter(|u| u.y == 0) {
            assert_eq!(lo.at(u), 0);
        }
        for u in dom.vertices().filter(|u| u.x == 0) {
            assert_eq!(lo.at(u), 0);
        }
    }
}
