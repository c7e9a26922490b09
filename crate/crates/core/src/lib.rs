//! Exact harmonic multiplicities for two order-3 Vinberg pairs:
//! (SL₃×SL₃×SL₃, C³⊗C³⊗C³) inside E6 and (SL₉, Λ³C⁹) inside E8.
//!
//! Every multiplicity is computed by independent routes that must agree:
//! the closed-form propositions ([`multiplicity`]), character averaging over
//! the finite centralizer groups ([`centralizers`]), and a graded brute-force
//! decomposition of Sym^d(V) ([`oracle`]). All arithmetic is exact.

pub mod arith;
pub mod cartan;
pub mod centralizers;
pub mod characters;
pub mod error;
pub mod multiplicity;
pub mod oracle;
pub mod weights;

pub use arith::{BigRational, Cyclotomic};
pub use characters::{
    char_at, chi_mu_limit, freudenthal_diagram, weyl_dimension, EigenvalueMultiset, WeightDiagram,
};
pub use error::{Error, Result};
pub use weights::{pairing, residue_sets, rho, HighestWeight, PositiveRoot, ResidueSets};
pub use centralizers::{FiniteGroup, MonomialMatrix, TripleElement};
pub use multiplicity::{Case, E6Weight, Method, MultiplicityEngine, MultiplicityReport, RangeSpec};
pub use oracle::{GradedDecomposition, HilbertSeries, ScaleLimits, WeightMultTable};
