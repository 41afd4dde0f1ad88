//! Exact computations for self-maps of `S^n x S^n` fixing the diagonal.
//!
//! The crate is layered bottom-up:
//!
//! * [`matrix`] and [`fgab`]: Smith normal form and finitely generated
//!   abelian groups, the kernel everything else reduces to.
//! * [`gamma`]: Whitehead's quadratic functor `Γ`, its torsion `ΓT`, and the
//!   groups `M(η)` and `Γ²₂(η)` attached to a quadratic map.
//! * [`spheres`]: the table of homotopy data of spheres used by the built-in
//!   targets `S^n` and `S^n x S^n`.
//! * [`monoids`]: the matrix monoids `N` and `M`, the bimodule `V_n ⊕ V_n`
//!   and the split extension `M_n`.
//! * [`orbits`]: realizable pairs, isotropy groups `I_u` and `J_u`, orbit
//!   decompositions and the self-map monoid.
//! * [`gammaseq`]: five-dimensional `Γ`-sequences, bracket subgroups and
//!   examples with non-trivial fundamental action.

pub mod error;
pub mod fgab;
pub mod gamma;
pub mod gammaseq;
pub mod json;
pub mod matrix;
pub mod monoids;
pub mod orbits;
pub mod spheres;

pub use error::{Error, Result};
pub use fgab::{Element, FgAbGroup, Homomorphism, Invariants, Subgroup};
pub use matrix::{smith_normal_form, IntMatrix, SmithForm};
