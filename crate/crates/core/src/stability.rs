//! Cone triviality of support gradients, with certificates either way.
//!
//! `{gamma : <alpha, gamma> <= 0 for all alpha in S} = {0}` holds exactly when
//! the gradients span and admit a strictly positive linear relation.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::affine::AffineRoot;
use crate::error::{Error, Result};
use crate::fm::nontrivial_ray;
use crate::linalg::{independent_subset, rank_int};
use crate::lp::{LinearProgram, Relation};
use crate::rational::{primitive_ray, qi, Q};
use crate::rootsys::{CoweightVector, Root};

/// Lower and upper bounds on the support of one orbit representative.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SupportProfile {
    pub lower: BTreeSet<AffineRoot>,
    pub upper: BTreeSet<AffineRoot>,
}

impl SupportProfile {
    /// Fails unless `lower` is contained in `upper`.
    pub fn new(
        lower: impl IntoIterator<Item = AffineRoot>,
        upper: impl IntoIterator<Item = AffineRoot>,
    ) -> Result<Self> {
        let lower: BTreeSet<AffineRoot> = lower.into_iter().collect();
        let upper: BTreeSet<AffineRoot> = upper.into_iter().collect();
        if !lower.is_subset(&upper) {
            return Err(Error::InvalidInput("lower support is not contained in upper".into()));
        }
        Ok(SupportProfile { lower, upper })
    }

    /// Profile whose support is known exactly.
    pub fn exact(roots: impl IntoIterator<Item = AffineRoot>) -> Self {
        let s: BTreeSet<AffineRoot> = roots.into_iter().collect();
        SupportProfile { lower: s.clone(), upper: s }
    }

    pub fn lower_gradients(&self) -> Vec<Root> {
        self.lower.iter().map(|r| r.gradient.clone()).collect()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ConeCertificate {
    /// Nonzero integer coweight pairing non-positively with every gradient.
    NontrivialRay(Vec<BigInt>),
    /// Strictly positive coefficients summing the gradients to zero, and a
    /// subset of gradients forming a basis.
    PositiveCombination { coeffs: Vec<(Root, Q)>, spanning: Vec<Root> },
}

impl ConeCertificate {
    /// Re-checks the certificate against `gradients` by direct arithmetic.
    pub fn verify(&self, gradients: &[Root]) -> bool {
        let Some(n) = gradients.first().map(Root::rank) else {
            return false;
        };
        match self {
            ConeCertificate::NontrivialRay(g) => {
                g.len() == n
                    && g.iter().any(|c| !c.is_zero())
                    && gradients.iter().all(|a| {
                        let s: BigInt = a.coords.iter().zip(g).map(|(x, y)| BigInt::from(*x) * y).sum();
                        !s.is_positive()
                    })
            }
            ConeCertificate::PositiveCombination { coeffs, spanning } => {
                let set: BTreeSet<&Root> = gradients.iter().collect();
                let covers = coeffs.iter().map(|(r, _)| r).collect::<BTreeSet<_>>() == set;
                let positive = coeffs.iter().all(|(_, c)| c.is_positive());
                let mut sum = vec![Q::zero(); n];
                for (r, c) in coeffs {
                    for (s, &x) in sum.iter_mut().zip(&r.coords) {
                        *s += c * qi(x);
                    }
                }
                let spans = spanning.len() == n
                    && spanning.iter().all(|r| set.contains(r))
                    && rank_int(&spanning.iter().map(|r| r.coords.clone()).collect::<Vec<_>>()) == n;
                covers && positive && sum.iter().all(Zero::is_zero) && spans
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConeVerdict {
    pub trivial: bool,
    pub certificate: ConeCertificate,
}

fn dedup(gradients: &[Root]) -> Vec<Root> {
    gradients.iter().cloned().collect::<BTreeSet<_>>().into_iter().collect()
}

/// Exact LP decider: strictly positive relation among the gradients plus full rank.
///
/// Returns the certificate when the cone is trivial.
pub fn cone_trivial_lp(gradients: &[Root]) -> Option<ConeCertificate> {
    let g = dedup(gradients);
    let n = g.first()?.rank();
    let rows: Vec<Vec<i64>> = g.iter().map(|r| r.coords.clone()).collect();
    if rank_int(&rows) < n {
        return None;
    }
    let m = g.len();
    let mut lp = LinearProgram::new(m, false);
    for j in 0..n {
        lp.add((0..m).map(|k| qi(g[k].coords[j])).collect(), Relation::Eq, Q::zero());
    }
    for k in 0..m {
        let mut row = vec![Q::zero(); m];
        row[k] = Q::one();
        lp.add(row, Relation::Ge, Q::one());
    }
    let a = lp.feasible_point()?;
    let spanning = independent_subset(&rows).into_iter().map(|i| g[i].clone()).collect();
    Some(ConeCertificate::PositiveCombination { coeffs: g.into_iter().zip(a).collect(), spanning })
}

/// Fourier-Motzkin decider: `None` when the cone is trivial, else a ray.
pub fn cone_ray_fm(gradients: &[Root]) -> Option<Vec<BigInt>> {
    let rows: Vec<Vec<i64>> = dedup(gradients).into_iter().map(|r| r.coords).collect();
    nontrivial_ray(&rows)
}

/// Decides whether only `gamma = 0` pairs non-positively with every gradient.
pub fn is_cone_trivial(gradients: &[Root]) -> Result<ConeVerdict> {
    if gradients.is_empty() {
        return Err(Error::InvalidInput("empty gradient set".into()));
    }
    let n = gradients[0].rank();
    if let Some(r) = gradients.iter().find(|r| r.rank() != n) {
        return Err(Error::RankMismatch { expected: n, got: r.rank() });
    }
    match cone_ray_fm(gradients) {
        Some(ray) => Ok(ConeVerdict { trivial: false, certificate: ConeCertificate::NontrivialRay(ray) }),
        None => {
            let cert = cone_trivial_lp(gradients).expect("Fourier-Motzkin and LP deciders disagree");
            Ok(ConeVerdict { trivial: true, certificate: cert })
        }
    }
}

/// `a_psi >= 0`, not all zero, with `sum a_psi grad(psi) = 0`, of maximal support.
///
/// Scaled so the constant `sum a_psi level(psi)` is 1 when it is positive,
/// otherwise to a primitive integer vector.
pub fn positive_affine_relation(roots: &[AffineRoot]) -> Option<Vec<(AffineRoot, Q)>> {
    let roots: Vec<AffineRoot> = roots.iter().cloned().collect::<BTreeSet<_>>().into_iter().collect();
    let n = roots.first()?.gradient.rank();
    let m = roots.len();
    let mut total = vec![Q::zero(); m];
    for k in 0..m {
        if !total[k].is_zero() {
            continue;
        }
        let mut lp = LinearProgram::new(m, false);
        for j in 0..n {
            lp.add((0..m).map(|i| qi(roots[i].gradient.coords[j])).collect(), Relation::Eq, Q::zero());
        }
        let mut row = vec![Q::zero(); m];
        row[k] = Q::one();
        lp.add(row, Relation::Ge, Q::one());
        if let Some(a) = lp.feasible_point() {
            for (t, v) in total.iter_mut().zip(a) {
                *t += v;
            }
        }
    }
    if total.iter().all(Zero::is_zero) {
        return None;
    }
    let constant: Q = total.iter().zip(&roots).map(|(a, r)| a * qi(r.level)).sum();
    let scaled: Vec<Q> = if constant.is_positive() {
        total.iter().map(|a| a / &constant).collect()
    } else {
        primitive_ray(&total).into_iter().map(Q::from_integer).collect()
    };
    Some(roots.into_iter().zip(scaled).filter(|(_, a)| !a.is_zero()).collect())
}

/// Whether every profile's lower support set has trivial cone.
pub fn is_fq_stable(family: &[SupportProfile]) -> Result<bool> {
    Ok(first_unstable(family)?.is_none())
}

/// Index of the first profile whose lower set does not force stability.
pub fn first_unstable(family: &[SupportProfile]) -> Result<Option<usize>> {
    if family.is_empty() {
        return Err(Error::EmptyFamily);
    }
    for (i, p) in family.iter().enumerate() {
        if p.lower.is_empty() {
            return Err(Error::InvalidInput(format!("profile {i} has an empty lower set")));
        }
        if !is_cone_trivial(&p.lower_gradients())?.trivial {
            return Ok(Some(i));
        }
    }
    Ok(None)
}

/// The coweight of a ray certificate.
pub fn ray_coweight(ray: &[BigInt]) -> CoweightVector {
    CoweightVector::new(ray.iter().cloned().map(Q::from_integer).collect())
}
