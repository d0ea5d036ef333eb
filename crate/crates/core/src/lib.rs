//! Lozenge tilings of finite triangular-lattice domains and the exactly
//! solvable structures attached to them.
//!
//! The crate is organized around six subsystems:
//!
//! * [`lattice`] — domains, height functions, tilings, non-intersecting path
//!   ensembles, and the exact bijections among them.
//! * [`sampling`] — Glauber dynamics and exact samplers for uniform height
//!   functions, the conditioned Bernoulli walk measure, and the
//!   boundary-perturbation constructions used in coupling experiments.
//! * [`kernels`] — numerical evaluation of the extended discrete sine kernel
//!   (incomplete beta kernel), the finite walk kernel, and determinantal
//!   correlation probabilities.
//! * [`variational`] — Lobachevsky function, surface tension, the entropy
//!   functional, and the discrete limit-shape maximizer.
//! * [`torus`] — exact torus partition functions, their thermodynamic limit,
//!   slope/weight duality, and the Legendre identity tying the two to the
//!   surface tension.
//! * [`linearity`] — the dyadic approximate-linearity scanner for 1-Lipschitz
//!   functions on triangles.
//!
//! Numeric routines are generic over the scalar type through [`scalar::Real`]
//! (`f32` or `f64`); lattice combinatorics are exact integer arithmetic.
//! Concrete `f64` aliases for the generic types live at the crate root.

pub mod error;
pub mod experiments;
pub mod io;
pub mod kernels;
pub mod lattice;
pub mod linearity;
pub mod render;
pub mod sampling;
pub mod scalar;
pub mod torus;
pub mod variational;

pub use error::{Error, Result};
pub use lattice::{
    BoundaryHeight, Domain, HeightFunction, LatticeVertex, PathEnsemble, Slope, Tiling,
};
pub use sampling::RngState;

/// Default scalar used by the command-line surface and experiments.
pub type F = f64;

pub type Slope64 = Slope<f64>;
pub type ComplexSlope64 = kernels::ComplexSlope<f64>;
pub type QuadratureSpec64 = kernels::QuadratureSpec<f64>;
pub type SurfaceTensionEval64 = variational::SurfaceTensionEval<f64>;
pub type DiscreteProfile64 = variational::DiscreteProfile<f64>;
pub type TorusWeights64 = torus::TorusWeights<f64>;
pub type WalkParams64 = sampling::WalkParams<f64>;
