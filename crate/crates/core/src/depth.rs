//! Exact min-max depth: the least `r` such that some point `y` has
//! `psi(y) <= r` for every root in a profile's lower support.

use num_traits::{One, Zero};

use crate::affine::{barycentre_delta, AffineRoot, BuildingPoint};
use crate::error::{Error, Result};
use crate::lp::{LinearProgram, LpOutcome, Relation};
use crate::rational::{qi, Q};
use crate::rootsys::{CoweightVector, RootSystem};
use crate::stability::{first_unstable, SupportProfile};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DepthResult {
    pub depth: Q,
    /// Lexicographically smallest optimal point for the minimizing profile.
    pub witness: BuildingPoint,
    /// Index of the first profile attaining the minimum.
    pub profile: usize,
}

fn constraints(roots: &[AffineRoot], n: usize) -> LinearProgram {
    // Variables y_0..y_{n-1}, r.
    let mut lp = LinearProgram::new(n + 1, true);
    for psi in roots {
        let mut row: Vec<Q> = psi.gradient.coords.iter().map(|&c| qi(c)).collect();
        row.push(-Q::one());
        lp.add(row, Relation::Le, qi(-psi.level));
    }
    lp
}

fn unit(n: usize, k: usize) -> Vec<Q> {
    let mut v = vec![Q::zero(); n];
    v[k] = Q::one();
    v
}

/// `min_y max_psi psi(y)` over the given roots, with the lexicographically
/// smallest optimal `y`. `None` if unbounded below.
pub fn minmax(roots: &[AffineRoot], rank: usize) -> Option<(Q, BuildingPoint)> {
    let base = constraints(roots, rank);
    let r = match base.clone().minimize(unit(rank + 1, rank)).solve() {
        LpOutcome::Optimal { value, .. } => value,
        _ => return None,
    };
    let mut lp = base;
    lp.add(unit(rank + 1, rank), Relation::Eq, r.clone());
    let mut y = Vec::with_capacity(rank);
    for k in 0..rank {
        let (_, v) = lp.clone().minimize(unit(rank + 1, k)).solve().optimal()?;
        lp.add(unit(rank + 1, k), Relation::Eq, v.clone());
        y.push(v);
    }
    Some((r, CoweightVector::new(y)))
}

/// Dual of [`minmax`]: `max sum a_psi level(psi)` over convex weights with `sum a_psi grad(psi) = 0`.
pub fn minmax_dual(roots: &[AffineRoot], rank: usize) -> Option<(Q, Vec<Q>)> {
    let m = roots.len();
    let mut lp = LinearProgram::new(m, false);
    for j in 0..rank {
        lp.add(roots.iter().map(|p| qi(p.gradient.coords[j])).collect(), Relation::Eq, Q::zero());
    }
    lp.add(vec![Q::one(); m], Relation::Eq, Q::one());
    let obj: Vec<Q> = roots.iter().map(|p| qi(-p.level)).collect();
    let (a, v) = lp.minimize(obj).solve().optimal()?;
    Some((-v, a))
}

/// Minimum over profiles of the min-max value of the lower support.
pub fn min_depth(sys: &RootSystem, family: &[SupportProfile]) -> Result<DepthResult> {
    if let Some(i) = first_unstable(family)? {
        return Err(Error::Unstable(i));
    }
    let mut best: Option<DepthResult> = None;
    for (i, p) in family.iter().enumerate() {
        let roots: Vec<AffineRoot> = p.lower.iter().cloned().collect();
        if let Some(r) = roots.iter().find(|r| r.gradient.rank() != sys.rank) {
            return Err(Error::RankMismatch { expected: sys.rank, got: r.gradient.rank() });
        }
        let (depth, witness) = minmax(&roots, sys.rank).expect("stable profiles give bounded programs");
        if best.as_ref().map_or(true, |b| depth < b.depth) {
            best = Some(DepthResult { depth, witness, profile: i });
        }
    }
    Ok(best.expect("nonempty family"))
}

/// The first filtration jump `r(x) = delta(x)` at a facet barycentre.
pub fn rx(sys: &RootSystem, x: &BuildingPoint) -> Result<Q> {
    barycentre_delta(sys, x)
}
