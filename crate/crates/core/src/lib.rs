//! Exact computations with cones, fs monoids, affine toric charts and
//! monoid charts of log morphisms.
//!
//! * [`lattice`]: Smith normal form, sublattices, kernels, saturations and
//!   direct complements.
//! * [`cone`]: rational polyhedral cones, duals and faces.
//! * [`monoid`]: affine monoids, Hilbert bases, saturation and minimal
//!   elements of sets of tuples.
//! * [`toric_chart`]: boundary ideals, orbits and torus factors of affine
//!   toric varieties.
//! * [`log_morphism`]: log smoothness, log étaleness and strictness of
//!   monoid charts.
//! * [`base_change`]: saturated base change of a dominant chart.
//! * [`oracle`]: brute-force counterparts used by the tests.
//! * [`cli`]: the `toroidal` command.
//!
//! ```
//! use toroidal::lattice::vector::vector;
//! use toroidal::toric_chart::ToricChart;
//!
//! let quadric = ToricChart::new(2, &[vector(&[1, 0]), vector(&[1, 2])]).unwrap();
//! let hb = quadric.dual_monoid().generators();
//! assert_eq!(hb, &[vector(&[0, 1]), vector(&[1, 0]), vector(&[2, -1])]);
//! ```

pub mod error;
pub mod lattice;
pub mod cone;
pub mod monoid;
pub mod toric_chart;
pub mod log_morphism;
pub mod base_change;
pub mod oracle;
pub mod cli;

// The book chapters are compiled as doc tests.
#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../book/src/introduction.md")]
    mod introduction {}
    #[doc = include_str!("../../../book/src/lattices.md")]
    mod lattices {}
    #[doc = include_str!("../../../book/src/cones.md")]
    mod cones {}
    #[doc = include_str!("../../../book/src/monoids.md")]
    mod monoids {}
    #[doc = include_str!("../../../book/src/toric-charts.md")]
    mod toric_charts {}
    #[doc = include_str!("../../../book/src/monoid-charts.md")]
    mod monoid_charts {}
    #[doc = include_str!("../../../book/src/base-change.md")]
    mod base_change {}
    #[doc = include_str!("../../../book/src/oracles.md")]
    mod oracles {}
    #[doc = include_str!("../../../book/src/command-line.md")]
    mod command_line {}
    #[doc = include_str!("../../../README.md")]
    mod readme {}
}
