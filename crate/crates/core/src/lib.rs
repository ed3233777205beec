//! Degree-based graph entropy of k-uniform hypergraphs.
//!
//! * [`hypergraph`]: the validated hypergraph value, degrees, connectivity,
//!   cyclomatic classification and pendency.
//! * [`entropy`]: `I_d^t`, `h = Σ d log d` and closed-form extremal bounds
//!   for supertrees, unicyclic and bicyclic hypergraphs.
//! * [`transforms`]: edge-moving and edge-releasing with their `h`
//!   monotonicity and class-closure checks.
//! * [`families`]: power hypergraphs, hyperstars and the extremal families,
//!   with recognizers and a small-instance isomorphism test.
//! * [`enumerate`]: exhaustive labeled enumeration of each class, sharded
//!   extremal reports and theorem verdicts.

pub mod entropy;
pub mod enumerate;
pub mod families;
pub mod hypergraph;
pub mod transforms;

pub use entropy::{degree_entropy, h_bounds, h_value, theorem_bounds, BoundPair, EntropyValue};
pub use enumerate::{
    enumerate_class, extremal_report, random_instance, verify_theorem, EnumerateError, ExtremalReport, ReportOptions,
    Theorem,
};
pub use families::{family_member, hyperstar, is_isomorphic, loose_path, membership, power, FamilyTag, Graph};
pub use hypergraph::{
    ClassTag, CycleClass, DegreeSequence, Hypergraph, HypergraphError, Pendency, StructureClass, Vertex,
};
pub use transforms::{edge_release, move_edges, MoveSpec, TransformError};
