//! Two-body quantum reflection.
//!
//! A particle of mass `m` reflecting from a second body of mass `M` is
//! treated as a single two-body eigenstate problem. Centre-of-mass and
//! relative coordinates separate the motion; the reflecting body's own
//! wavefunction then carries its share of the interference.
//!
//! The crate builds those eigenstates (hard mirror, finite barrier or
//! well, infinite well, weakly reflecting surfaces), superposes them into
//! wavegroups over a velocity spectrum, and analyses the resulting joint
//! probability density. A split-step propagator is included as an
//! independent check, and a small set of closed-form estimators covers the
//! thermal decoherence arguments.
//!
//! ```
//! use twobody::{Constants, Pair, eigen::Eigenstate};
//!
//! let pair = Pair::new(1.0, 100.0).unwrap();
//! let state = Eigenstate::mirror(pair, 1.0, 0.6, Constants::NATURAL).unwrap();
//! let p = state.pdf(-1.3, 0.4);
//! assert!(p <= 4.0 + 1e-12);
//! ```

pub mod analysis;
pub mod audit;
pub mod commands;
pub mod decoherence;
pub mod eigen;
mod error;
pub mod grid;
pub mod image;
pub mod kinematics;
pub mod oracle;
pub mod packet;
pub mod presets;
pub mod quadrature;
pub mod report;
pub mod scenario;
pub mod slab;
pub mod snapshot;
mod sum;
pub mod units;
pub mod wavegroup;

pub use error::{Error, Result};
pub use grid::{Axis, Grid};
pub use kinematics::Pair;
pub use num_complex::Complex64;
pub use units::{Constants, UnitSystem};
