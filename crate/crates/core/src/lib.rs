//! Milnor fibration invariants of mixed polynomials `f(z, z̄)`: Newton
//! boundaries, face-type checks, toric Milnor fiber Euler characteristics,
//! zeta functions, mixed coverings and regular toric subdivisions.

pub mod chi;
pub mod covering;
pub mod error;
pub mod faces;
pub mod lattice;
pub mod mixedpoly;
pub mod newton;
pub mod report;
pub mod toricfan;
mod parse;
pub mod zeta;

pub use chi::{ChiRecord, ChiStrategy, CurveParams, Provenance, SuppliedChi};
pub use covering::CoveringMap;
pub use error::{Error, Result};
pub use faces::{FaceFunction, Homogeneity, NondegeneracyVerdict};
pub use mixedpoly::{ExponentPair, MixedMonomial, MixedPolynomial, Subset, WeightVector};
pub use newton::{Facet, NewtonBoundary};
pub use report::{analyze, AnalysisOptions, AnalysisReport};
pub use toricfan::{ChartPullback, Cone, DivisorGraph, Fan, LaurentMixedMonomial};
pub use zeta::{FactoredZeta, ZetaContribution};
