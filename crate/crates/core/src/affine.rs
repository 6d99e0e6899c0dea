//! Affine roots on the standard apartment, Kac coordinates, the first
//! filtration jump at a facet barycentre, and the Iwahori-Weyl group.

use std::collections::BTreeSet;
use std::fmt;

use num_integer::Integer;
use num_traits::{One, Signed};

use crate::error::{Error, Result};
use crate::rational::{ceil_i64, dot_iq, floor_i64, Q};
use crate::rootsys::{weyl_group, CoweightVector, Root, RootSystem, WeylElement};

/// Points of the apartment, in fundamental-coweight coordinates with the
/// hyperspecial vertex as origin.
pub type BuildingPoint = CoweightVector;

/// The affine function `gradient + level`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct AffineRoot {
    pub gradient: Root,
    pub level: i64,
}

impl AffineRoot {
    pub fn new(gradient: Root, level: i64) -> Self {
        AffineRoot { gradient, level }
    }

    pub fn eval(&self, x: &BuildingPoint) -> Q {
        dot_iq(&self.gradient.coords, &x.coords) + Q::from_integer(self.level.into())
    }

    pub fn add(&self, other: &AffineRoot) -> AffineRoot {
        AffineRoot::new(&self.gradient + &other.gradient, self.level + other.level)
    }

    pub fn sub(&self, other: &AffineRoot) -> AffineRoot {
        AffineRoot::new(&self.gradient - &other.gradient, self.level - other.level)
    }

    pub fn scale(&self, k: i64) -> AffineRoot {
        AffineRoot::new(self.gradient.scale(k), self.level * k)
    }

    pub fn is_affine_root_of(&self, sys: &RootSystem) -> bool {
        sys.is_root(&self.gradient)
    }
}

impl fmt::Display for AffineRoot {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.level {
            0 => write!(f, "{}", self.gradient),
            n => {
                let g = self.gradient.to_string();
                if g.starts_with('-') {
                    write!(f, "{n}{g}")
                } else {
                    write!(f, "{n}+{g}")
                }
            }
        }
    }
}

/// `[1 - alpha_0, alpha_1, ..., alpha_n]`.
pub fn simple_affine_roots(sys: &RootSystem) -> Vec<AffineRoot> {
    let mut out = vec![AffineRoot::new(-&sys.highest_root, 1)];
    out.extend(sys.simple_roots.iter().map(|a| AffineRoot::new(a.clone(), 0)));
    out
}

/// Kac coordinates `(b_0, ..., b_n)`, affine node first, then Bourbaki order.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct KacCoords {
    pub b: Vec<u64>,
}

impl KacCoords {
    /// Normalizes by the gcd. Fails on an empty or all-zero list.
    pub fn new(b: Vec<u64>) -> Result<Self> {
        let g = b.iter().fold(0u64, |acc, &x| acc.gcd(&x));
        if g == 0 {
            return Err(Error::InvalidKac("all coordinates are zero".into()));
        }
        Ok(KacCoords { b: b.into_iter().map(|x| x / g).collect() })
    }

    /// `m = sum marks_i b_i`.
    pub fn normalizer(&self, sys: &RootSystem) -> u64 {
        self.b.iter().zip(&sys.marks).map(|(&b, &m)| b * m as u64).sum()
    }
}

fn check_len(sys: &RootSystem, k: &KacCoords) -> Result<()> {
    if k.b.len() != sys.rank + 1 {
        return Err(Error::InvalidKac(format!(
            "expected {} coordinates for {}, got {}",
            sys.rank + 1,
            sys.name(),
            k.b.len()
        )));
    }
    Ok(())
}

/// The point where each simple affine root `psi_i` takes the value `b_i / m`.
pub fn kac_to_point(sys: &RootSystem, k: &KacCoords) -> Result<BuildingPoint> {
    check_len(sys, k)?;
    let m = k.normalizer(sys) as i64;
    Ok(CoweightVector::new(k.b[1..].iter().map(|&b| Q::new((b as i64).into(), m.into())).collect()))
}

/// Inverse of [`kac_to_point`] for rational points of the closed alcove.
pub fn point_to_kac(sys: &RootSystem, x: &BuildingPoint) -> Result<KacCoords> {
    if x.rank() != sys.rank {
        return Err(Error::RankMismatch { expected: sys.rank, got: x.rank() });
    }
    let values: Vec<Q> = simple_affine_roots(sys).iter().map(|p| p.eval(x)).collect();
    if values.iter().any(Q::is_negative) {
        return Err(Error::InvalidKac("point lies outside the closed alcove".into()));
    }
    let d = crate::rational::common_denominator(&values);
    let ints: Vec<u64> = values
        .iter()
        .map(|v| u64::try_from((v * &d).to_integer()).expect("fits"))
        .collect();
    KacCoords::new(ints)
}

/// Barycentre of the face of the closed alcove on which exactly the simple
/// affine roots with the given indices (0 for the affine node) vanish.
pub fn barycentre_of_facet(sys: &RootSystem, vanishing: &[usize]) -> Result<BuildingPoint> {
    let n = sys.rank + 1;
    if let Some(&i) = vanishing.iter().find(|&&i| i >= n) {
        return Err(Error::InvalidKac(format!("node {i} out of range 0..{n}")));
    }
    let b = (0..n).map(|i| u64::from(!vanishing.contains(&i))).collect();
    kac_to_point(sys, &KacCoords::new(b)?)
}

/// Barycentres of all faces of the closed alcove, one per nonempty node subset.
pub fn facet_barycentres(sys: &RootSystem) -> Vec<KacCoords> {
    let n = sys.rank + 1;
    (1u64..(1 << n))
        .map(|mask| KacCoords::new((0..n).map(|i| (mask >> i) & 1).collect()).expect("nonzero"))
        .collect()
}

/// All affine roots with `lo < psi(x) < hi` (or `<=` when the flag is false).
pub fn psi_x_band(
    sys: &RootSystem,
    x: &BuildingPoint,
    lo: &Q,
    hi: &Q,
    lo_strict: bool,
    hi_strict: bool,
) -> Vec<AffineRoot> {
    let mut out = Vec::new();
    for a in &sys.all_roots {
        let v = dot_iq(&a.coords, &x.coords);
        // n ranges over integers with lo <= v + n <= hi.
        let n_lo = ceil_i64(&(lo - &v));
        let n_hi = floor_i64(&(hi - &v));
        for n in n_lo..=n_hi {
            let val = &v + Q::from_integer(n.into());
            if (lo_strict && &val == lo) || (hi_strict && &val == hi) {
                continue;
            }
            out.push(AffineRoot::new(a.clone(), n));
        }
    }
    out.sort();
    out
}

/// `Delta(x)` with its common value `delta(x)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DeltaData {
    pub delta: Q,
    pub roots: Vec<AffineRoot>,
}

/// Value of the first jump, provided `x` is a facet barycentre of the closed alcove.
pub fn barycentre_delta(sys: &RootSystem, x: &BuildingPoint) -> Result<Q> {
    if x.rank() != sys.rank {
        return Err(Error::RankMismatch { expected: sys.rank, got: x.rank() });
    }
    let values: Vec<Q> = simple_affine_roots(sys).iter().map(|p| p.eval(x)).collect();
    if values.iter().any(Q::is_negative) {
        return Err(Error::NotBarycentre);
    }
    let positive: BTreeSet<&Q> = values.iter().filter(|v| v.is_positive()).collect();
    match positive.len() {
        1 => Ok((*positive.iter().next().expect("one")).clone()),
        _ => Err(Error::NotBarycentre),
    }
}

pub fn delta_x(sys: &RootSystem, x: &BuildingPoint) -> Result<DeltaData> {
    let delta = barycentre_delta(sys, x)?;
    let roots = psi_x_band(sys, x, &delta, &delta, false, false);
    Ok(DeltaData { delta, roots })
}

/// Affine roots taking the value `2 delta(x)` at `x`.
pub fn delta2_x(sys: &RootSystem, x: &BuildingPoint) -> Result<Vec<AffineRoot>> {
    let two = barycentre_delta(sys, x)? * Q::from_integer(2.into());
    Ok(psi_x_band(sys, x, &two, &two, false, false))
}

/// Which translation lattice the Iwahori-Weyl group is built on.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Lattice {
    /// Coroot lattice.
    SimplyConnected,
    /// Coweight lattice.
    Adjoint,
}

impl Lattice {
    pub fn contains(self, sys: &RootSystem, mu: &[i64]) -> bool {
        match self {
            Lattice::Adjoint => true,
            Lattice::SimplyConnected => sys.in_coroot_lattice(mu),
        }
    }
}

impl std::str::FromStr for Lattice {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "simply-connected" | "sc" => Ok(Lattice::SimplyConnected),
            "adjoint" | "ad" => Ok(Lattice::Adjoint),
            other => Err(Error::InvalidInput(format!("unknown lattice {other:?}"))),
        }
    }
}

/// `t_mu v`: first `v`, then translation by `mu`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct IwahoriWeylElement {
    /// Coweight coordinates.
    pub translation: Vec<i64>,
    pub finite: WeylElement,
}

impl IwahoriWeylElement {
    pub fn identity(rank: usize) -> Self {
        IwahoriWeylElement { translation: vec![0; rank], finite: WeylElement::identity(rank) }
    }

    pub fn new(translation: Vec<i64>, finite: WeylElement) -> Self {
        IwahoriWeylElement { translation, finite }
    }

    pub fn finite(finite: WeylElement) -> Self {
        let n = finite.rank();
        IwahoriWeylElement { translation: vec![0; n], finite }
    }

    pub fn translation(mu: Vec<i64>) -> Self {
        let n = mu.len();
        IwahoriWeylElement { translation: mu, finite: WeylElement::identity(n) }
    }

    pub fn is_identity(&self) -> bool {
        self.translation.iter().all(|&c| c == 0) && self.finite.is_identity()
    }

    /// `(t_mu v)(t_nu u) = t_{mu + v nu} (v u)`.
    pub fn compose(&self, other: &IwahoriWeylElement) -> IwahoriWeylElement {
        let vnu = self.finite.apply_coweight_int(&other.translation);
        IwahoriWeylElement {
            translation: self.translation.iter().zip(&vnu).map(|(a, b)| a + b).collect(),
            finite: self.finite.compose(&other.finite),
        }
    }

    pub fn inverse(&self) -> IwahoriWeylElement {
        let vinv = self.finite.inverse();
        let t = vinv.apply_coweight_int(&self.translation);
        IwahoriWeylElement { translation: t.into_iter().map(|c| -c).collect(), finite: vinv }
    }

    pub fn act_point(&self, x: &BuildingPoint) -> BuildingPoint {
        let mut y = self.finite.apply_coweight(x);
        for (c, &m) in y.coords.iter_mut().zip(&self.translation) {
            *c += Q::from_integer(m.into());
        }
        y
    }

    /// `(t_mu v)(alpha + n) = v(alpha) + n - <v(alpha), mu>`.
    pub fn act_root(&self, psi: &AffineRoot) -> AffineRoot {
        let g = self.finite.apply_root(&psi.gradient);
        let shift: i64 = g.coords.iter().zip(&self.translation).map(|(a, b)| a * b).sum();
        AffineRoot::new(g, psi.level - shift)
    }

    /// Same element with the finite part's word normalized to the shortest
    /// lexicographically first one.
    pub fn canonical(&self, sys: &RootSystem) -> IwahoriWeylElement {
        IwahoriWeylElement {
            translation: self.translation.clone(),
            finite: canonical_weyl(sys, &self.finite),
        }
    }
}

/// Re-express a Weyl element with its breadth-first reduced word.
pub fn canonical_weyl(sys: &RootSystem, w: &WeylElement) -> WeylElement {
    // Peel off left descents in index order.
    let mut word = Vec::new();
    let mut cur = w.clone();
    while !cur.is_identity() {
        let i = (0..sys.rank)
            .find(|&i| !cur.inverse().apply_root(&sys.simple_roots[i]).is_positive())
            .expect("nonidentity element has a left descent");
        word.push(i);
        cur = WeylElement::simple(sys, i).compose(&cur);
    }
    WeylElement::from_word(sys, &word).expect("valid word")
}

/// Nonidentity elements of the extended affine Weyl group stabilising the
/// fundamental alcove, for the given lattice.
pub fn alcove_stabilizer(sys: &RootSystem, lattice: Lattice) -> Vec<IwahoriWeylElement> {
    let n = sys.rank;
    let bary = kac_to_point(sys, &KacCoords::new(vec![1; n + 1]).expect("ones")).expect("length");
    let pi = simple_affine_roots(sys);
    let pi_set: BTreeSet<&AffineRoot> = pi.iter().collect();
    let mut out = Vec::new();
    for j in 0..n {
        if sys.marks[j + 1] != 1 {
            continue;
        }
        let mu = sys.fundamental_coweight(j);
        if !lattice.contains(sys, &mu) {
            continue;
        }
        // Need v with v(bary) = bary - mu.
        let mut target = bary.clone();
        target.coords[j] -= Q::one();
        let (u, dominant) = dominantize(sys, &target);
        if dominant != bary {
            continue;
        }
        let v = u.inverse();
        let w = IwahoriWeylElement::new(mu, v).canonical(sys);
        if pi.iter().all(|p| pi_set.contains(&w.act_root(p))) && !w.is_identity() {
            out.push(w);
        }
    }
    out
}

/// Returns `u` with `u(y)` dominant, and `u(y)`.
pub fn dominantize(sys: &RootSystem, y: &CoweightVector) -> (WeylElement, CoweightVector) {
    let mut u = WeylElement::identity(sys.rank);
    let mut cur = y.clone();
    while let Some(i) = (0..sys.rank).find(|&i| cur.coords[i].is_negative()) {
        let s = WeylElement::simple(sys, i);
        cur = s.apply_coweight(&cur);
        u = s.compose(&u);
    }
    (u, cur)
}

/// Elements of the finite Weyl group, each as an Iwahori-Weyl element with zero translation.
pub fn finite_weyl_elements(sys: &RootSystem) -> Result<Vec<IwahoriWeylElement>> {
    Ok(weyl_group(sys)?.into_iter().map(IwahoriWeylElement::finite).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{q, qi};

    fn sys(s: &str) -> RootSystem {
        s.parse().unwrap()
    }

    fn ar(g: &[i64], n: i64) -> AffineRoot {
        AffineRoot::new(Root::new(g.to_vec()), n)
    }

    #[test]
    fn g2_alcove_values() {
        let g2 = sys("G2");
        let x = kac_to_point(&g2, &KacCoords::new(vec![1, 1, 1]).unwrap()).unwrap();
        for p in simple_affine_roots(&g2) {
            assert_eq!(p.eval(&x), q(1, 6));
        }
        let d = delta_x(&g2, &x).unwrap();
        assert_eq!(d.delta, q(1, 6));
        assert_eq!(d.roots.len(), 3);
        assert_eq!(psi_x_band(&g2, &x, &qi(0), &qi(1), true, true).len(), 12);
    }

    #[test]
    fn g2_wall_point() {
        let g2 = sys("G2");
        // Bourbaki order: alpha_2 vanishes.
        let x = kac_to_point(&g2, &KacCoords::new(vec![1, 1, 0]).unwrap()).unwrap();
        assert_eq!(ar(&[0, 1], 0).eval(&x), qi(0));
        let d = delta_x(&g2, &x).unwrap();
        assert_eq!(d.delta, q(1, 4));
        let expected: BTreeSet<AffineRoot> =
            [ar(&[-3, -2], 1), ar(&[-3, -1], 1), ar(&[1, 0], 0), ar(&[1, 1], 0)].into_iter().collect();
        assert_eq!(d.roots.into_iter().collect::<BTreeSet<_>>(), expected);
        let z = kac_to_point(&g2, &KacCoords::new(vec![3, 1, 0]).unwrap()).unwrap();
        assert_eq!(z.coords, vec![q(1, 6), qi(0)]);
    }

    #[test]
    fn facet_by_vanishing_nodes() {
        let g2: RootSystem = "G2".parse().unwrap();
        let x = barycentre_of_facet(&g2, &[2]).unwrap();
        assert_eq!(x, kac_to_point(&g2, &KacCoords::new(vec![1, 1, 0]).unwrap()).unwrap());
        assert!(barycentre_of_facet(&g2, &[0, 1, 2]).is_err());
        assert!(barycentre_of_facet(&g2, &[3]).is_err());
        // Diagram reading 3,0,1 is Bourbaki 3,1,0: the point (1/6) omega_1.
        let z = kac_to_point(&g2, &KacCoords::new(vec![3, 1, 0]).unwrap()).unwrap();
        assert_eq!(z.coords, vec![q(1, 6), qi(0)]);
    }

    #[test]
    fn kac_round_trip_and_origin() {
        let b4 = sys("B4");
        for k in facet_barycentres(&b4) {
            let x = kac_to_point(&b4, &k).unwrap();
            assert_eq!(point_to_kac(&b4, &x).unwrap(), k);
        }
        let x0 = kac_to_point(&b4, &KacCoords::new(vec![1, 0, 0, 0, 0]).unwrap()).unwrap();
        assert!(x0.coords.iter().all(num_traits::Zero::is_zero));
        assert!(psi_x_band(&b4, &x0, &qi(0), &qi(1), true, true).is_empty());
        assert!(KacCoords::new(vec![0, 0]).is_err());
        assert!(kac_to_point(&b4, &KacCoords::new(vec![1, 1]).unwrap()).is_err());
    }

    #[test]
    fn not_barycentre() {
        let a2 = sys("A2");
        let x = CoweightVector::new(vec![q(1, 4), q(1, 2)]);
        assert_eq!(delta_x(&a2, &x), Err(Error::NotBarycentre));
    }

    #[test]
    fn reflection_and_translation() {
        let g2 = sys("G2");
        let s1 = IwahoriWeylElement::finite(WeylElement::simple(&g2, 0));
        assert_eq!(s1.act_root(&ar(&[0, 1], 0)), ar(&[3, 1], 0));
        let t = IwahoriWeylElement::translation(g2.coroot_coweight(&g2.simple_roots[0]));
        assert_eq!(t.act_root(&ar(&[1, 0], 0)), ar(&[1, 0], -2));
        let e = IwahoriWeylElement::identity(2);
        assert_eq!(e.act_root(&ar(&[1, 1], 3)), ar(&[1, 1], 3));
    }

    #[test]
    fn group_laws() {
        let b3 = sys("B3");
        let a = IwahoriWeylElement::new(vec![1, -2, 0], WeylElement::from_word(&b3, &[0, 2, 1]).unwrap());
        let b = IwahoriWeylElement::new(vec![0, 1, 3], WeylElement::from_word(&b3, &[2, 1]).unwrap());
        let x = CoweightVector::new(vec![q(1, 7), q(2, 5), qi(-1)]);
        assert_eq!(a.compose(&b).act_point(&x), a.act_point(&b.act_point(&x)));
        assert!(a.compose(&a.inverse()).is_identity());
        let psi = ar(&[1, 1, 1], 2);
        assert_eq!(a.compose(&b).act_root(&psi), a.act_root(&b.act_root(&psi)));
    }

    #[test]
    fn stabilisers() {
        let b5 = sys("B5");
        let ad = alcove_stabilizer(&b5, Lattice::Adjoint);
        assert_eq!(ad.len(), 1);
        let sigma = &ad[0];
        assert!(sigma.compose(sigma).is_identity());
        let pi = simple_affine_roots(&b5);
        assert_eq!(sigma.act_root(&pi[0]), pi[1]);
        assert_eq!(sigma.act_root(&pi[1]), pi[0]);
        for p in &pi[2..] {
            assert_eq!(&sigma.act_root(p), p);
        }
        assert!(alcove_stabilizer(&b5, Lattice::SimplyConnected).is_empty());
        assert!(alcove_stabilizer(&sys("G2"), Lattice::Adjoint).is_empty());
        assert_eq!(alcove_stabilizer(&sys("A3"), Lattice::Adjoint).len(), 3);
        assert!(alcove_stabilizer(&sys("A3"), Lattice::SimplyConnected).is_empty());
    }

    #[test]
    fn canonical_words() {
        let b3 = sys("B3");
        let w = WeylElement::from_word(&b3, &[1, 0, 0, 1, 2]).unwrap();
        let c = canonical_weyl(&b3, &w);
        assert_eq!(c.word, vec![2]);
        assert_eq!(c.matrix, w.matrix);
    }
}
