//! The index set of lines of the abelianised first filtration quotient at a
//! facet barycentre, and supports of functionals on it.

use std::collections::{BTreeMap, BTreeSet};

use petgraph::unionfind::UnionFind;

use crate::affine::{delta2_x, delta_x, kac_to_point, AffineRoot, BuildingPoint, KacCoords};
use crate::error::{Error, Result};
use crate::rational::Q;
use crate::rootsys::{Family, Root, RootSystem};
use num_traits::{One, Zero};

/// One line of the vector space: a single affine root, or an identified tuple.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum SxEntry {
    Single(AffineRoot),
    Tuple(Vec<AffineRoot>),
}

impl SxEntry {
    pub fn roots(&self) -> &[AffineRoot] {
        match self {
            SxEntry::Single(r) => std::slice::from_ref(r),
            SxEntry::Tuple(rs) => rs,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VxSpace {
    pub x: BuildingPoint,
    pub q: u64,
    /// Sorted: singles before tuples.
    pub entries: Vec<SxEntry>,
}

impl VxSpace {
    pub fn dim(&self) -> usize {
        self.entries.len()
    }

    /// Every affine root appearing in some entry.
    pub fn roots(&self) -> BTreeSet<AffineRoot> {
        self.entries.iter().flat_map(|e| e.roots().iter().cloned()).collect()
    }
}

/// A functional, by its value (an element of `F_q`, encoded as an integer) on each line.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Functional {
    pub values: BTreeMap<SxEntry, u64>,
}

impl Functional {
    pub fn new(values: BTreeMap<SxEntry, u64>) -> Self {
        Functional { values }
    }

    /// Nonzero (value 1) on every listed entry.
    pub fn indicator<'a>(entries: impl IntoIterator<Item = &'a SxEntry>) -> Self {
        Functional { values: entries.into_iter().map(|e| (e.clone(), 1)).collect() }
    }
}

/// Affine roots on whose root subgroups the functional is nontrivial.
pub fn support(lambda: &Functional) -> BTreeSet<AffineRoot> {
    lambda
        .values
        .iter()
        .filter(|(_, &v)| v != 0)
        .flat_map(|(e, _)| e.roots().iter().cloned())
        .collect()
}

fn is_prime(p: u64) -> bool {
    p >= 2 && (2..).take_while(|d| d * d <= p).all(|d| p % d != 0)
}

/// Checks that `p` is prime and `q` a power of `p`.
pub fn check_field(p: u64, q: u64) -> Result<()> {
    if !is_prime(p) {
        return Err(Error::InvalidInput(format!("{p} is not prime")));
    }
    let mut r = q;
    while r > 1 && r % p == 0 {
        r /= p;
    }
    if r != 1 || q < p {
        return Err(Error::InvalidInput(format!("{q} is not a power of {p}")));
    }
    Ok(())
}

fn ar(g: &[i64], n: i64) -> AffineRoot {
    AffineRoot::new(Root::new(g.to_vec()), n)
}

fn sorted(mut entries: Vec<SxEntry>) -> Vec<SxEntry> {
    entries.sort();
    entries.dedup();
    entries
}

/// Hand-computed answers for type G2 in characteristics 2 and 3 (Kac in Bourbaki order).
fn g2_table(sys: &RootSystem, p: u64, q: u64, x: &BuildingPoint) -> Result<Vec<SxEntry>> {
    let at = |b: Vec<u64>| kac_to_point(sys, &KacCoords::new(b).expect("nonzero")).expect("G2");
    let unsupported = || Error::Unsupported(format!("G2 with p = {p}, q = {q} at this point is not tabulated"));
    if *x == at(vec![1, 1, 1]) && p == 2 && q == 2 {
        return Ok(sorted(vec![
            SxEntry::Single(ar(&[-3, -2], 1)),
            SxEntry::Single(ar(&[1, 0], 0)),
            SxEntry::Single(ar(&[0, 1], 0)),
            SxEntry::Tuple(vec![ar(&[1, 1], 0), ar(&[2, 1], 0)]),
        ]));
    }
    if *x == at(vec![1, 0, 1]) && p == 2 && q == 2 {
        let d = delta_x(sys, x)?;
        return Ok(sorted(d.roots.into_iter().map(SxEntry::Single).collect()));
    }
    if *x == at(vec![1, 1, 0]) && p == 3 {
        let d = delta_x(sys, x)?;
        let mut entries: Vec<SxEntry> = d.roots.into_iter().map(SxEntry::Single).collect();
        entries.push(SxEntry::Single(ar(&[3, 1], 0)));
        entries.push(SxEntry::Single(ar(&[3, 2], 0)));
        return Ok(sorted(entries));
    }
    Err(unsupported())
}

/// Computes the lines of the abelianisation at the facet barycentre `x`.
pub fn compute_sx(sys: &RootSystem, p: u64, q: u64, x: &BuildingPoint) -> Result<VxSpace> {
    check_field(p, q)?;
    let d = delta_x(sys, x)?;
    let make = |entries| Ok(VxSpace { x: x.clone(), q, entries });
    if d.delta >= Q::one() {
        return make(Vec::new());
    }
    let delta_only = || sorted(d.roots.iter().cloned().map(SxEntry::Single).collect());
    let generic = match sys.family {
        Family::A | Family::D | Family::E => true,
        Family::B | Family::C | Family::F => p > 2,
        Family::G => p > 3,
    };
    if generic {
        return make(delta_only());
    }
    if sys.family == Family::G {
        return make(g2_table(sys, p, q, x)?);
    }
    make(characteristic_two(sys, q, x, &d.roots)?)
}

/// The rewrite procedure for types B, C, F in characteristic 2.
fn characteristic_two(
    sys: &RootSystem,
    q: u64,
    x: &BuildingPoint,
    delta: &[AffineRoot],
) -> Result<Vec<SxEntry>> {
    let below_one = |r: &AffineRoot| r.eval(x) < Q::one() && r.eval(x) > Q::zero();
    let is_aff = |r: &AffineRoot| sys.is_root(&r.gradient);
    let delta_set: BTreeSet<AffineRoot> = delta.iter().cloned().collect();
    let delta2: Vec<AffineRoot> = delta2_x(sys, x)?;

    let mut singles: BTreeSet<AffineRoot> = delta_set.clone();
    for a in delta {
        for b in delta {
            for cand in [a.add(b), a.scale(2).add(b)] {
                if is_aff(&cand) && below_one(&cand) {
                    singles.insert(cand);
                }
            }
        }
    }
    let mut pairs: BTreeSet<(AffineRoot, AffineRoot)> = BTreeSet::new();

    for psi in delta {
        for theta in delta {
            let sum = &psi.gradient + &theta.gradient;
            let diff = &psi.gradient - &theta.gradient;
            if !sys.is_root(&sum) || sys.is_root(&diff) {
                continue;
            }
            let pt = sys.coroot_pairing_unchecked(&psi.gradient, &theta.gradient);
            let tp = sys.coroot_pairing_unchecked(&theta.gradient, &psi.gradient);
            if pt == -1 && tp == -1 {
                singles.remove(&psi.add(theta));
            } else if pt == -1 && tp == -2 {
                pairs.insert((psi.add(theta), psi.scale(2).add(theta)));
            }
        }
    }

    let mut doomed = Vec::new();
    for eps in delta {
        for eta in &delta2 {
            let s = eps.add(eta);
            if singles.contains(&s) && !delta_set.contains(&eta.sub(eps)) {
                doomed.push(s);
            }
        }
    }
    for s in doomed {
        singles.remove(&s);
    }

    let bound = singles.len() + pairs.len() + 1;
    for iteration in 0.. {
        assert!(iteration <= bound, "cascade failed to converge");
        let broken: Vec<(AffineRoot, AffineRoot)> = pairs
            .iter()
            .filter(|(a, b)| !singles.contains(a) || !singles.contains(b))
            .cloned()
            .collect();
        if broken.is_empty() {
            break;
        }
        for (a, b) in broken {
            singles.remove(&a);
            singles.remove(&b);
            pairs.remove(&(a, b));
        }
    }

    let verts: Vec<AffineRoot> = singles.into_iter().collect();
    let pos: BTreeMap<&AffineRoot, usize> = verts.iter().enumerate().map(|(i, r)| (r, i)).collect();
    let mut uf = UnionFind::<usize>::new(verts.len());
    for (a, b) in &pairs {
        uf.union(pos[a], pos[b]);
    }
    let mut comps: BTreeMap<usize, Vec<AffineRoot>> = BTreeMap::new();
    for (i, r) in verts.iter().enumerate() {
        comps.entry(uf.find(i)).or_default().push(r.clone());
    }
    let entries: Vec<SxEntry> = comps
        .into_values()
        .filter_map(|mut c| {
            if c.len() == 1 {
                c.pop().map(SxEntry::Single)
            } else if q == 2 {
                c.sort();
                Some(SxEntry::Tuple(c))
            } else {
                None
            }
        })
        .collect();
    Ok(sorted(entries))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::affine::{facet_barycentres, simple_affine_roots};

    fn sys(s: &str) -> RootSystem {
        s.parse().unwrap()
    }

    fn alcove(s: &RootSystem) -> BuildingPoint {
        kac_to_point(s, &KacCoords::new(vec![1; s.rank + 1]).unwrap()).unwrap()
    }

    #[test]
    fn field_checks() {
        assert!(check_field(2, 8).is_ok());
        assert!(check_field(3, 9).is_ok());
        assert!(check_field(4, 4).is_err());
        assert!(check_field(2, 6).is_err());
        assert!(check_field(3, 1).is_err());
    }

    #[test]
    fn g2_alcove_q2() {
        let g2 = sys("G2");
        let v = compute_sx(&g2, 2, 2, &alcove(&g2)).unwrap();
        assert_eq!(v.dim(), 4);
        assert!(v.entries.contains(&SxEntry::Tuple(vec![ar(&[1, 1], 0), ar(&[2, 1], 0)])));
        assert!(matches!(compute_sx(&g2, 3, 3, &alcove(&g2)), Err(Error::Unsupported(_))));
        assert_eq!(compute_sx(&g2, 5, 5, &alcove(&g2)).unwrap().dim(), 3);
    }

    #[test]
    fn b_alcove() {
        for n in [3usize, 4, 5] {
            let b = sys(&format!("B{n}"));
            let v = compute_sx(&b, 2, 2, &alcove(&b)).unwrap();
            let mut expected: Vec<SxEntry> =
                simple_affine_roots(&b).into_iter().map(SxEntry::Single).collect();
            let mut u = vec![0i64; n];
            u[n - 2] = 1;
            u[n - 1] = 1;
            let mut w = u.clone();
            w[n - 1] = 2;
            expected.push(SxEntry::Tuple(vec![ar(&u, 0), ar(&w, 0)]));
            assert_eq!(v.entries, sorted(expected), "B{n}");
            let v4 = compute_sx(&b, 2, 4, &alcove(&b)).unwrap();
            assert_eq!(v4.roots(), simple_affine_roots(&b).into_iter().collect());
        }
    }

    #[test]
    fn f4_wall() {
        // Bourbaki Kac (1,1,0,1,1): alpha_2 vanishes.
        let f4 = sys("F4");
        let x = kac_to_point(&f4, &KacCoords::new(vec![1, 1, 0, 1, 1]).unwrap()).unwrap();
        let v = compute_sx(&f4, 2, 2, &x).unwrap();
        let d = delta_x(&f4, &x).unwrap();
        let mut expected: Vec<SxEntry> = d.roots.into_iter().map(SxEntry::Single).collect();
        expected.push(SxEntry::Single(ar(&[0, 1, 2, 0], 0)));
        assert_eq!(v.entries, sorted(expected));
    }

    #[test]
    fn origin_is_empty() {
        let b3 = sys("B3");
        let x0 = kac_to_point(&b3, &KacCoords::new(vec![1, 0, 0, 0]).unwrap()).unwrap();
        assert_eq!(compute_sx(&b3, 2, 2, &x0).unwrap().dim(), 0);
    }

    #[test]
    fn delta_always_present() {
        for name in ["B3", "C3", "F4"] {
            let s = sys(name);
            for k in facet_barycentres(&s) {
                let x = kac_to_point(&s, &k).unwrap();
                let v = compute_sx(&s, 2, 2, &x).unwrap();
                let roots = v.roots();
                for r in delta_x(&s, &x).unwrap().roots {
                    if r.eval(&x) < Q::one() {
                        assert!(roots.contains(&r), "{name} {:?} lost {r}", k.b);
                    }
                }
                for r in &roots {
                    assert!(r.eval(&x) > Q::zero() && r.eval(&x) < Q::one());
                }
            }
        }
    }

    #[test]
    fn supports() {
        let g2 = sys("G2");
        let v = compute_sx(&g2, 2, 2, &alcove(&g2)).unwrap();
        let chosen: Vec<&SxEntry> = v
            .entries
            .iter()
            .filter(|e| !matches!(e, SxEntry::Single(r) if r.gradient.coords == vec![1, 0]))
            .collect();
        let s = support(&Functional::indicator(chosen));
        let expected: BTreeSet<AffineRoot> =
            [ar(&[-3, -2], 1), ar(&[0, 1], 0), ar(&[1, 1], 0), ar(&[2, 1], 0)].into_iter().collect();
        assert_eq!(s, expected);
        assert!(support(&Functional::default()).is_empty());
        let mut zero = Functional::indicator(&v.entries);
        for val in zero.values.values_mut() {
            *val = 0;
        }
        assert!(support(&zero).is_empty());
    }
}
