//! Exact combinatorics of wonderful and spherical varieties.
//!
//! This crate computes, in exact integer/rational arithmetic, the
//! combinatorial invariants attached to a wonderful variety and more general
//! spherical varieties:
//!
//! - the Picard lattice in the color basis, with nef/ample/effective tests
//!   and boundary divisor classes ([`divclass`]),
//! - the effective cone with its extremal rays classified into fixed
//!   boundary rays, Schubert pullback rays, and mixed rank-one rays,
//! - section-module decompositions of graded pieces of the total coordinate
//!   (Cox) ring, with exact module dimensions,
//! - the orbit poset of the spectrum of the Cox ring ([`coxcomb`]),
//! - equivariant and ordinary divisor class groups with their torsion, via
//!   Smith normal form ([`clgroup`]),
//! - root-system and weight-lattice infrastructure for all finite types
//!   ([`rootsys`]) and exact polyhedral/lattice primitives ([`intlin`]).
//!
//! The central data model is the [`datum::SphericalDatum`]: spherical roots,
//! colors with their weights, and the integer pairing between them. Group
//! compactifications are built directly from a type descriptor:
//!
//! ```
//! use coxring::datum::group_compactification;
//! use coxring::divclass::{boundary_class, eff_extremal_rays};
//!
//! let b2 = group_compactification("B2").unwrap();
//! assert!(b2.validate().passed());
//! // boundary classes are the simple roots in fundamental-weight coordinates
//! assert_eq!(boundary_class(&b2, 0).0, coxring::intlin::int_vec(&[2, -2]));
//! assert_eq!(eff_extremal_rays(&b2).unwrap().len(), 2);
//! ```
//!
//! A thin command-line front end (`coxring`) exposes the same reports; see
//! the crate examples for end-to-end tours of each capability.

pub mod clgroup;
pub mod coxcomb;
pub mod datum;
pub mod divclass;
pub mod intlin;
pub mod report;
pub mod rootsys;
