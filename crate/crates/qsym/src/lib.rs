//! Quasi-continuous q-deformed symmetry toolkit.
//!
//! Implements the machinery that interpolates discrete space-time symmetries
//! (inversions, reflections) into one-parameter families via q-deformed
//! dilation operators, and machine-checks the identities the construction
//! rests on:
//!
//! - [`series`]: truncated complex power series in up to three variables,
//!   the substrate every operator acts on.
//! - [`qcore`]: deformation parameter, symmetric q-numbers, q-derivative,
//!   Jackson q-integral, q-exponential.
//! - [`dilation`]: diagonal operator realizations on the monomial basis,
//!   their 3D composites and analytic limits.
//! - [`symmetry1d`]: Hamiltonian invariance recursions, the q-gauge
//!   potential transformation, the q-independent solver, partition
//!   potentials, and the deformed Coulomb curves.
//! - [`ncalgebra`]: non-commutative polynomial engine with q-commutation
//!   rewrite rules, normal ordering, and 2x2 matrix checks of the discrete
//!   symmetry algebra.
//! - [`ncplane`]: the non-commutative-plane free-particle PDE, quarter-order
//!   modified Bessel functions, and residual verification of the claimed
//!   closed-form solution.
//! - [`perturb`]: first-order physics near the endpoints, induced vector
//!   potential, path-dependent phases, effective magnetic field.
//! - [`ledger`]: the machine-readable record of every verified identity.
//! - [`cli`]: configuration and command implementations behind the `qsym`
//!   binary.

pub mod cli;
pub mod dilation;
pub mod ledger;
pub mod ncalgebra;
pub mod ncplane;
pub mod perturb;
pub mod qcore;
pub mod series;
pub mod symmetry1d;

pub use qcore::Deformation;
pub use series::TruncatedSeries;
