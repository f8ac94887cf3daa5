//! Explicit objects of the multilinear circle method for prime-weighted
//! polynomial ergodic averages.
//!
//! The crate is organised bottom-up:
//!
//! * [`arithmetic`]: linear sieve tables, von Mangoldt, Ramanujan sums.
//! * [`approximants`]: Cramér, Heath-Brown and scale-linked weights.
//! * [`signals`]: finitely supported signals on the integers, the
//!   multilinear averages, their duals and the bilinear pairing.
//! * [`gowers`]: certified grid estimates of little Gowers norms.
//! * [`variation`]: exact r-variation norms and the Rademacher-Menshov
//!   ratio harness.
//! * [`circle_method`]: heights, Farey sets, major arcs, Gauss sums, the
//!   discrete and continuous symbols, the major-arc scan and the
//!   Ionescu-Wainger projection on cyclic groups.
//! * [`padic`]: unit-group averages, character eigenvalues and fiber counts.
//! * [`rotation`]: circle rotations and convergence experiments.
//!
//! Throughout, `e(θ) = exp(-2πiθ)`; see [`numeric::e`].

pub mod approximants;
pub mod arithmetic;
pub mod circle_method;
pub mod error;
pub mod gowers;
pub mod numeric;
pub mod padic;
pub mod polynomial;
pub mod rotation;
pub mod signals;
pub mod variation;

pub use error::{Error, Result};
pub use num_complex::Complex64;
