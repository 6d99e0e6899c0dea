//! Fixed inputs shared by the benchmarks.

use epikit_core::affine::{kac_to_point, KacCoords};
use epikit_core::{compute_sx, AffineRoot, BuildingPoint, Root, RootSystem, SupportProfile};

pub fn system(name: &str) -> RootSystem {
    name.parse().expect("valid type")
}

/// Barycentre of the fundamental alcove.
pub fn alcove(sys: &RootSystem) -> BuildingPoint {
    kac_to_point(sys, &KacCoords::new(vec![1; sys.rank + 1]).expect("nonzero")).expect("rank")
}

/// Exact support of the functional nonzero on every line at the alcove, `p = q = 2`.
pub fn alcove_profile(sys: &RootSystem) -> SupportProfile {
    SupportProfile::exact(compute_sx(sys, 2, 2, &alcove(sys)).expect("supported").roots())
}

pub fn affine(g: &[i64], n: i64) -> AffineRoot {
    AffineRoot::new(Root::new(g.to_vec()), n)
}
