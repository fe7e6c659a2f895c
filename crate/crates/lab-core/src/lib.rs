//! Numerical laboratory for the Dirichlet and Neumann Laplacian on the
//! half-space in power-weighted Sobolev spaces.
//!
//! The crate evaluates the explicit heat semigroups by kernel quadrature,
//! resolvents by rotated Laplace quadrature, and the holomorphic functional
//! calculus by contour integration, and checks the resulting operator
//! estimates (Hardy inequalities, commutator identities, sectoriality,
//! semigroup growth rates, blow-up examples, elliptic and parabolic maximal
//! regularity) against independent analytic oracles.

pub mod axial;
pub mod commutator;
pub mod cx;
pub mod error;
pub mod field;
pub mod fit;
pub mod hardy;
pub mod hinf;
pub mod kernel;
pub mod norms;
pub mod ops;
pub mod quad;
pub mod rates;
pub mod sector;
pub mod resolvent;
pub mod sampled;
pub mod semigroup;
pub mod space;
pub mod spectral;
pub mod special;
pub mod tangential;

pub use error::{LabError, Result};
pub use space::{Bc, PowerWeight, SpaceParams};
