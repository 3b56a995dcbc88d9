//! Exact counting of gons, holes and islands of planar point sets embedded
//! in the real projective plane.
//!
//! A finite planar point set in general position determines k-gons (subsets
//! in convex position), k-holes (gons with empty interiors) and k-islands
//! (hulls of k-tuples containing no outside point). Viewed inside the
//! projective plane these notions change: removing a projective line yields
//! a different affine chart, a subset may be convex in one chart and not in
//! another, and a subset can span several distinct projective gons. This
//! crate provides the exact predicates, the projective semantics, the
//! classical extremal point families and two independent counting routes
//! (exhaustive oracles and polynomial pair-sweep counters) for these
//! structures, plus a command-line harness.
//!
//! Modules:
//!
//! * [`rational`], [`geom`]: exact scalars, points, orientation, hulls and
//!   the separation predicates.
//! * [`projective`]: charts, double-chain wedges, gon signatures, holes.
//! * [`generators`]: Horton sets, perturbed grids, cup-cap free sets,
//!   tangent clusters, double chains, witnesses, uniform samples.
//! * [`oracle`]: exhaustive counters, classifiers and census routines.
//! * [`fast`]: the pair-sweep counters and the largest-gon search.
//! * [`experiments`]: closed-form verification, randomized experiments,
//!   witness search and construction reports.
//! * [`io`]: the point-set text format.
//! * [`guide`]: the book, with runnable examples.

pub mod experiments;
pub mod fast;
pub mod generators;
pub mod geom;
pub mod guide;
pub mod io;
pub mod oracle;
pub mod orient;
pub mod projective;
pub mod rational;

pub use geom::{Point, PointSet};
pub use projective::{CountKind, CountTable, GonSignature};
