//! Numerical kinematics of the three inertia groups.
//!
//! Three transformation groups of four-dimensional spacetime, each the
//! symmetry group of a mechanics: the Aristotle group (rotations, spatial
//! translations, clock shifts), the Galilei group (plus boosts) and the
//! Poincaré group (affine maps preserving the form `x² + y² + z² - t²`).
//! Elements are validated on construction, the structural theorems about
//! these groups ship as executable oracles in [`verify`], and the familiar
//! relativistic formulas in [`relativity`] come with group-theoretic cross
//! checks.
//!
//! ```
//! use inertia::groups::{GroupPolicy, LorentzMatrix, boost_decompose, standard_boost};
//! use nalgebra::Vector3;
//!
//! let half_c = standard_boost(Vector3::new(0.5, 0.0, 0.0)).unwrap();
//! let twice = LorentzMatrix::new(half_c.matrix() * half_c.matrix(), GroupPolicy::default()).unwrap();
//! assert!((boost_decompose(&twice).beta.x - 0.8).abs() <= 1e-12);
//! ```
//!
//! The guide under `book/` walks through the library chapter by chapter;
//! its code blocks compile and run below as doctests, so guide and library
//! cannot drift apart silently.

pub mod cli;
pub mod groups;
pub(crate) mod linalg;
pub mod motions;
pub mod relativity;
pub mod sample;
pub mod spacetime;
pub mod verify;

/// Runs every Rust snippet in the guide as a doctest.
#[cfg(doctest)]
mod book {
    macro_rules! chapter {
        ($name:ident, $file:literal) => {
            #[doc = include_str!(concat!("../../../book/src/", $file))]
            pub struct $name;
        };
    }

    chapter!(Introduction, "introduction.md");
    chapter!(Events, "events.md");
    chapter!(Groups, "groups.md");
    chapter!(Boosts, "boosts.md");
    chapter!(Motions, "motions.md");
    chapter!(NoSpace, "no-space.md");
    chapter!(NoTime, "no-time.md");
    chapter!(Simultaneity, "simultaneity.md");
    chapter!(Relativity, "relativity.md");
    chapter!(Cli, "cli.md");
}
