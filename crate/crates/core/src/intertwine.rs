//! Iwahori-Weyl elements that may intertwine the character attached to a
//! stable functional, and two necessary conditions that prune them.

use std::collections::{BTreeSet, HashMap};

use num_traits::{One, Signed, Zero};
use rayon::prelude::*;

use crate::affine::{delta_x, simple_affine_roots, AffineRoot, BuildingPoint, IwahoriWeylElement, Lattice};
use crate::error::{Error, Result};
use crate::linalg::{inverse, to_q};
use crate::lp::{LinearProgram, Relation};
use crate::rational::{ceil_i64, common_denominator, dot_iq, floor_i64, qi, Q};
use crate::rootsys::{weyl_group, RootSystem, WeylElement};
use crate::stability::{is_cone_trivial, SupportProfile};

/// Integer test for membership of a coweight in the coroot lattice.
struct CorootTest {
    /// `den * A^{-1}`.
    scaled_inverse: Vec<Vec<i64>>,
    den: i64,
}

impl CorootTest {
    fn new(sys: &RootSystem) -> Self {
        let inv = inverse(&to_q(&sys.cartan)).expect("Cartan matrix is invertible");
        let flat: Vec<Q> = inv.iter().flatten().cloned().collect();
        let d = common_denominator(&flat);
        let dq = Q::from_integer(d.clone());
        let scaled_inverse = inv
            .iter()
            .map(|row| row.iter().map(|v| i64::try_from((v * &dq).to_integer()).expect("small")).collect())
            .collect();
        CorootTest { scaled_inverse, den: i64::try_from(d).expect("small") }
    }

    fn contains(&self, mu: &[i64]) -> bool {
        self.scaled_inverse
            .iter()
            .all(|row| row.iter().zip(mu).map(|(a, b)| a * b).sum::<i64>() % self.den == 0)
    }
}

/// Coordinate bounds of `{y : psi(y) <= 1 for psi in support}`.
fn bounding_box(support: &[AffineRoot], rank: usize) -> Result<Vec<(Q, Q)>> {
    let mut base = LinearProgram::new(rank, true);
    for psi in support {
        base.add(psi.gradient.coords.iter().map(|&c| qi(c)).collect(), Relation::Le, qi(1 - psi.level));
    }
    let mut out = Vec::with_capacity(rank);
    for j in 0..rank {
        let mut obj = vec![Q::zero(); rank];
        obj[j] = Q::one();
        let lo = base.clone().minimize(obj.clone()).solve().optimal().ok_or(Error::NonCompact)?.1;
        obj[j] = -Q::one();
        let hi = -base.clone().minimize(obj).solve().optimal().ok_or(Error::NonCompact)?.1;
        out.push((lo, hi));
    }
    Ok(out)
}

fn sort_elements(v: &mut Vec<IwahoriWeylElement>) {
    v.sort_by(|a, b| {
        (a.finite.word.len(), &a.finite.word, &a.translation).cmp(&(
            b.finite.word.len(),
            &b.finite.word,
            &b.translation,
        ))
    });
    v.dedup();
}

/// Finite Weyl group plus a lookup from coweight matrix to canonical element.
struct WeylTable {
    elements: Vec<WeylElement>,
    by_matrix: HashMap<Vec<Vec<i64>>, usize>,
}

impl WeylTable {
    fn new(sys: &RootSystem) -> Result<Self> {
        let elements = weyl_group(sys)?;
        let by_matrix = elements.iter().enumerate().map(|(i, w)| (w.coweight_matrix.clone(), i)).collect();
        Ok(WeylTable { elements, by_matrix })
    }

    fn canonical(&self, w: &WeylElement) -> WeylElement {
        self.elements[self.by_matrix[&w.coweight_matrix]].clone()
    }
}

fn enumerate_with(
    sys: &RootSystem,
    table: &WeylTable,
    x: &BuildingPoint,
    support: &[AffineRoot],
    lattice: Lattice,
) -> Result<Vec<IwahoriWeylElement>> {
    if support.is_empty() {
        return Err(Error::NonCompact);
    }
    let grads: Vec<_> = support.iter().map(|r| r.gradient.clone()).collect();
    if !is_cone_trivial(&grads)?.trivial {
        return Err(Error::NonCompact);
    }
    let n = sys.rank;
    let bbox = bounding_box(support, n)?;
    let coroot = CorootTest::new(sys);
    let mut found: Vec<IwahoriWeylElement> = table
        .elements
        .par_iter()
        .flat_map_iter(|v| {
            // u = t_nu v, y = u(x) = v(x) + nu must satisfy psi(y) <= 1.
            let vx = v.apply_coweight(x);
            let lo: Vec<i64> = (0..n).map(|j| ceil_i64(&(&bbox[j].0 - &vx.coords[j]))).collect();
            let hi: Vec<i64> = (0..n).map(|j| floor_i64(&(&bbox[j].1 - &vx.coords[j]))).collect();
            // <grad, nu> <= floor(1 - level - <grad, v(x)>).
            let caps: Vec<i64> = support
                .iter()
                .map(|p| floor_i64(&(qi(1 - p.level) - dot_iq(&p.gradient.coords, &vx.coords))))
                .collect();
            let mut local = Vec::new();
            if lo.iter().zip(&hi).any(|(l, h)| l > h) {
                return local.into_iter();
            }
            let mut nu = lo.clone();
            loop {
                let ok = support.iter().zip(&caps).all(|(p, &c)| {
                    p.gradient.coords.iter().zip(&nu).map(|(a, b)| a * b).sum::<i64>() <= c
                });
                if ok && (lattice == Lattice::Adjoint || coroot.contains(&nu)) {
                    let u = IwahoriWeylElement::new(nu.clone(), v.clone());
                    let w = u.inverse();
                    local.push(IwahoriWeylElement::new(w.translation, table.canonical(&w.finite)));
                }
                let mut k = 0;
                while k < n {
                    if nu[k] < hi[k] {
                        nu[k] += 1;
                        break;
                    }
                    nu[k] = lo[k];
                    k += 1;
                }
                if k == n {
                    break;
                }
            }
            local.into_iter()
        })
        .collect();
    sort_elements(&mut found);
    Ok(found)
}

/// All `w` with `psi(w^{-1}(x)) <= 1` for every `psi` in `support`.
pub fn enumerate_candidates(
    sys: &RootSystem,
    x: &BuildingPoint,
    support: &[AffineRoot],
    lattice: Lattice,
) -> Result<Vec<IwahoriWeylElement>> {
    let table = WeylTable::new(sys)?;
    enumerate_with(sys, &table, x, support, lattice)
}

fn positive_at(x: &BuildingPoint) -> impl Fn(&AffineRoot) -> bool + '_ {
    move |r: &AffineRoot| r.eval(x).is_positive()
}

fn support_ok(w: &IwahoriWeylElement, b: &SupportProfile, a: &SupportProfile, x: &BuildingPoint) -> bool {
    let pos = positive_at(x);
    b.lower.iter().all(|psi| {
        let img = w.act_root(psi);
        !pos(&img) || a.upper.contains(&img)
    })
}

/// Whether some pair of profiles `(b, a)` has `w(b.lower)` inside `a.upper`
/// wherever the image is positive at `x`.
pub fn filter_support(w: &IwahoriWeylElement, profiles: &[SupportProfile], x: &BuildingPoint) -> bool {
    profiles.iter().any(|b| profiles.iter().any(|a| support_ok(w, b, a, x)))
}

/// Whether the affine functions `thetas` have a common zero on the closure of
/// the facet whose barycentre is `x`.
pub fn common_zero_on_facet(sys: &RootSystem, x: &BuildingPoint, thetas: &[AffineRoot]) -> bool {
    let n = sys.rank;
    let mut lp = LinearProgram::new(n, true);
    let row = |r: &AffineRoot| r.gradient.coords.iter().map(|&c| qi(c)).collect::<Vec<Q>>();
    for psi in simple_affine_roots(sys) {
        let rel = if psi.eval(x).is_zero() { Relation::Eq } else { Relation::Ge };
        lp.add(row(&psi), rel, qi(-psi.level));
    }
    for t in thetas {
        lp.add(row(t), Relation::Eq, qi(-t.level));
    }
    lp.feasible_point().is_some()
}

/// Images under `w` of `roots` that are positive at `x`.
fn positive_images(w: &IwahoriWeylElement, roots: &BTreeSet<AffineRoot>, x: &BuildingPoint) -> Vec<AffineRoot> {
    let pos = positive_at(x);
    roots.iter().map(|r| w.act_root(r)).filter(|r| pos(r)).collect()
}

/// Whether some profile `b` leaves `w(b.upper)`, cut to the roots positive
/// at `x`, without a common zero on the closed facet of `x`.
///
/// The upper set is used because the true support lies between the bounds
/// and a common zero of a larger set is one of every subset.
pub fn filter_zeros(sys: &RootSystem, w: &IwahoriWeylElement, profiles: &[SupportProfile], x: &BuildingPoint) -> bool {
    profiles.iter().any(|b| {
        let thetas = positive_images(w, &b.upper, x);
        !thetas.is_empty() && !common_zero_on_facet(sys, x, &thetas)
    })
}

/// Zeros test for a fixed pair: images of `b.upper` that could lie in the support of `a`.
fn zeros_ok(sys: &RootSystem, w: &IwahoriWeylElement, b: &SupportProfile, a: &SupportProfile, x: &BuildingPoint) -> bool {
    let thetas: Vec<AffineRoot> =
        positive_images(w, &b.upper, x).into_iter().filter(|t| a.upper.contains(t)).collect();
    !thetas.is_empty() && !common_zero_on_facet(sys, x, &thetas)
}

fn within_bound(w: &IwahoriWeylElement, b: &SupportProfile, x: &BuildingPoint) -> bool {
    let y = w.inverse().act_point(x);
    b.lower.iter().all(|psi| psi.eval(&y) <= Q::one())
}

/// Candidates that pass the bound, the support filter and the zeros filter
/// for a common pair of profiles.
pub fn intertwiners(
    sys: &RootSystem,
    x: &BuildingPoint,
    profiles: &[SupportProfile],
    lattice: Lattice,
) -> Result<Vec<IwahoriWeylElement>> {
    if profiles.is_empty() {
        return Err(Error::EmptyFamily);
    }
    delta_x(sys, x)?;
    let table = WeylTable::new(sys)?;
    let mut candidates = Vec::new();
    for p in profiles {
        let support: Vec<AffineRoot> = p.lower.iter().cloned().collect();
        candidates.extend(enumerate_with(sys, &table, x, &support, lattice)?);
    }
    sort_elements(&mut candidates);
    let survivors: Vec<IwahoriWeylElement> = candidates
        .into_par_iter()
        .filter(|w| {
            profiles.iter().any(|b| {
                within_bound(w, b, x)
                    && profiles.iter().any(|a| support_ok(w, b, a, x) && zeros_ok(sys, w, b, a, x))
            })
        })
        .collect();
    let mut survivors = survivors;
    sort_elements(&mut survivors);
    Ok(survivors)
}
