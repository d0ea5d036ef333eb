//! The triangular lattice, its domains, height functions, tilings and
//! non-intersecting path ensembles, plus the exact bijections among them.
//!
//! Conventions. The lattice has vertex set `Z^2` with edges in the directions
//! `(1,0)`, `(0,1)` and `(1,1)` (and their negatives). The unit square at
//! `(x,y)` is split by its main diagonal into a lower face
//! `{(x,y),(x+1,y),(x+1,y+1)}` and an upper face `{(x,y),(x,y+1),(x+1,y+1)}`.
//! A lozenge glues two faces across a shared edge:
//!
//! * type 1 across the horizontal edge `(x,y+1)-(x+1,y+1)`,
//! * type 2 across the vertical edge `(x+1,y)-(x+1,y+1)`,
//! * type 3 across the diagonal of one square.
//!
//! A height function gains `+1` across exactly the glue edge of a type-1
//! (horizontal steps) or type-2 (vertical steps) lozenge and is constant on
//! every other lozenge edge. A tiling is canonically encoded by the set of
//! integer points `(x,y)` such that `(x + 1/2, y)` is the center of a type-1
//! lozenge.

mod domain;
mod height;
mod paths;
mod tiling;

pub use domain::{disk_domain, hexagon_domain, Domain};
pub use height::{extremal_heights, is_tileable, BoundaryHeight, HeightFunction};
pub use paths::{paths_from_tiling, tiling_from_paths, PathEnsemble};
pub use tiling::{
    domain_faces, height_from_tiling, lozenges_from_height, tiling_from_height, Face, FaceKind,
    Lozenge, LozengeType, Tiling,
};

use crate::scalar::Real;

/// A vertex of the triangular lattice.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct LatticeVertex {
    pub x: i64,
    pub y: i64,
}

/// Shorthand constructor.
#[inline]
pub const fn v(x: i64, y: i64) -> LatticeVertex {
    LatticeVertex { x, y }
}

impl LatticeVertex {
    #[inline]
    pub fn offset(self, dx: i64, dy: i64) -> LatticeVertex {
        v(self.x + dx, self.y + dy)
    }
}

/// Forward edge directions of the lattice; height increments along these lie
/// in `{0, 1}`.
pub const FORWARD_DIRS: [(i64, i64); 3] = [(1, 0), (0, 1), (1, 1)];

/// A local tile-density pair `(s, t)` in the closed triangle
/// `{s, t >= 0, s + t <= 1}`.
#[derive(Clone, Copy, PartialEq, Debug)]
pub struct Slope<F> {
    pub s: F,
    pub t: F,
}

impl<F: Real> Slope<F> {
    pub fn new(s: F, t: F) -> Self {
        Slope { s, t }
    }

    /// Membership in the closed triangle.
    pub fn in_closed_triangle(&self) -> bool {
        self.s >= F::zero() && self.t >= F::zero() && self.s + self.t <= F::one()
    }

    /// Membership in the open triangle.
    pub fn in_open_triangle(&self) -> bool {
        self.s > F::zero() && self.t > F::zero() && self.s + self.t < F::one()
    }

    /// Euclidean distance to the boundary of the triangle, for points inside
    /// (zero outside).
    pub fn boundary_distance(&self) -> F {
        if !self.in_closed_triangle() {
            return F::zero();
        }
        let diag = (F::one() - self.s - self.t) / F::val(std::f64::consts::SQRT_2);
        self.s.min(self.t).min(diag)
    }

    /// Membership in the `eps`-interior of the triangle.
    pub fn in_eps_interior(&self, eps: F) -> bool {
        self.in_open_triangle() && self.boundary_distance() > eps
    }

    /// Third density `1 - s - t`.
    pub fn third(&self) -> F {
        F::one() - self.s - self.t
    }

    /// Clamp to the `eps`-interior, moving offending coordinates just inside.
    pub fn clamped(&self, eps: F) -> Slope<F> {
        let mut s = self.s.max(eps);
        let mut t = self.t.max(eps);
        let excess = s + t - (F::one() - eps);
        if excess > F::zero() {
            let half = excess / F::val(2.0);
            s = (s - half).max(eps);
            t = (t - half).max(eps);
            let still = s + t - (F::one() - eps);
            if still > F::zero() {
                if s > t {
                    s = s - still;
                } else {
                    t = t - still;
                }
            }
        }
        Slope { s, t }
    }
}

#[cfg(test)]
mod slope_tests {
    use super::*;

    #[test]
    fn triangle_membership() {
        assert!(Slope::new(0.3, 0.3).in_open_triangle());
        assert!(!Slope::new(0.0, 0.5).in_open_triangle());
        assert!(Slope::new(0.0, 0.5).in_closed_triangle());
        assert!(!Slope::new(0.6, 0.6).in_closed_triangle());
    }

    #[test]
    fn eps_interior_uses_distance() {
        // (0.3, 0.3): distance to the hypotenuse is 0.4/sqrt(2) ~ 0.2828
        let sl = Slope::new(0.3, 0.3);
        assert!(sl.in_eps_interior(0.28));
        assert!(!sl.in_eps_interior(0.29));
    }

    #[test]
    fn clamp_stays_in_triangle() {
        let eps = 1e-8;
        for &(s, t) in &[(0.0, 0.0), (1.0, 0.0), (0.7, 0.7), (-0.2, 0.5), (1.2, -0.1)] {
            let c = Slope::new(s, t).clamped(eps);
            assert!(c.s >= eps && c.t >= eps && c.s + c.t <= 1.0 - eps + 1e-15);
        }
    }
}
