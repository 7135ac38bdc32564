//! Exact constructions for log-canonical embeddings of marked nodal curves
//! and for checking operad axioms on several instances.

pub mod certificate;
pub mod curves;
pub mod dualgraph;
pub mod error;
pub mod exactla;
pub mod gluing;
pub mod modular;
pub mod permops;
pub mod poly;
pub mod verify;

pub use certificate::{CancelToken, CertOptions, Method};
pub use curves::{embed, section_space, EmbeddedCurve, MarkedCurve, Point, SectionBasis};
pub use dualgraph::{CanonicalGraph, DualGraph, GradedSignature};
pub use error::{Error, Result};
pub use exactla::{Matrix, Rational, Subspace};
pub use gluing::{GlueOptions, GluingReport};
pub use permops::{Permutation, PlusPermutation};
pub use verify::{AxiomReport, AxiomRunConfig, ComponentType};
