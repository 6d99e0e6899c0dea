//! Exact combinatorics of affine root systems at facet barycentres:
//! the first filtration jump, the abelianised quotient's lines, stability of
//! functionals as polyhedral cone triviality, depth as a min-max linear
//! program, and Iwahori-Weyl intertwining candidates.
//!
//! All arithmetic is exact over arbitrary-precision rationals.

pub mod abelianization;
pub mod affine;
pub mod chevalley;
pub mod depth;
pub mod error;
pub mod fm;
pub mod intertwine;
pub mod linalg;
pub mod lp;
pub mod rational;
pub mod rootsys;
pub mod stability;

pub use abelianization::{compute_sx, support, Functional, SxEntry, VxSpace};
pub use affine::{
    alcove_stabilizer, barycentre_of_facet, delta2_x, delta_x, facet_barycentres, kac_to_point, point_to_kac, psi_x_band,
    simple_affine_roots, AffineRoot, BuildingPoint, DeltaData, IwahoriWeylElement, KacCoords, Lattice,
};
pub use chevalley::{c_constant, commutator_expansion, m_constant, CommutatorTerm, StructureConstants};
pub use depth::{min_depth, rx, DepthResult};
pub use error::{Error, Result};
pub use intertwine::{enumerate_candidates, filter_support, filter_zeros, intertwiners};
pub use rational::Q;
pub use rootsys::{build_root_system, weyl_group, CoweightVector, Family, Root, RootSystem, WeylElement};
pub use stability::{
    is_cone_trivial, is_fq_stable, positive_affine_relation, ConeCertificate, ConeVerdict, SupportProfile,
};
