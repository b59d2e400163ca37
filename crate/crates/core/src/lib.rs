//! Exact arithmetic for a one-parameter deformation of the polynomial algebra
//! `ℚ[ξ, z]`, the Weyl-algebra symbol calculus it models, Laguerre polynomial
//! identities obtained from it, and bounded power-closure experiments on
//! candidate Mathieu subspaces.
//!
//! All arithmetic is over arbitrary-precision rationals; nothing is floating point.

pub mod cli;
pub mod combinatorics;
pub mod deformation;
pub mod error;
pub mod frontend;
pub mod identities;
pub mod laguerre;
pub mod linalg;
pub mod mathieu;
pub mod multi_index;
pub mod poly;
pub mod report;
pub mod weyl;

pub use deformation::{StarContext, StarTaylor};
pub use error::{AlgebraError, Result};
pub use frontend::{parse_poly, parse_weyl, print_poly, print_weyl, OutputRecord, ParseError};
pub use laguerre::LaguerreSpec;
pub use mathieu::{power_experiment, ExperimentReport, MembershipOracle, PowerKind};
pub use multi_index::MultiIndex;
pub use poly::{int, rat, Monomial, Poly, Rat, ZPoly};
pub use report::CheckReport;
pub use weyl::WeylOp;
