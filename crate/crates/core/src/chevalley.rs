//! Chevalley structure constants and the commutator formula for affine roots.
//!
//! Signs follow the extraspecial-pair convention: positive roots are totally
//! ordered lexicographically on their simple-root coordinates, and
//! `N_{xi, zeta} = +(p + 1)` for every extraspecial pair `(xi, zeta)`. All
//! other `N` are forced by the standard identities.

use std::collections::HashMap;

use crate::affine::{AffineRoot, BuildingPoint};
use crate::error::{Error, Result};
use crate::rational::Q;
use crate::rootsys::{Root, RootSystem};
use num_traits::{One, Zero};

/// Exponent pairs `(i, j)` that can occur in a commutator.
pub const ADMISSIBLE: [(u32, u32); 7] = [(1, 1), (2, 1), (1, 2), (3, 1), (1, 3), (3, 2), (2, 3)];

/// Table of `N_{a, b}` for a fixed root system.
#[derive(Debug, Clone)]
pub struct StructureConstants<'a> {
    sys: &'a RootSystem,
    /// Keyed by positions in `sys.all_roots`, positive pairs only.
    positive: HashMap<(usize, usize), i64>,
}

fn lex_less(a: &Root, b: &Root) -> bool {
    a.coords < b.coords
}

impl<'a> StructureConstants<'a> {
    pub fn new(sys: &'a RootSystem) -> Self {
        let mut table = StructureConstants { sys, positive: HashMap::new() };
        // Positive roots are already sorted by height.
        for c in &sys.positive_roots {
            let mut pairs: Vec<(Root, Root)> = sys
                .positive_roots
                .iter()
                .filter_map(|r| {
                    let s = c - r;
                    (s.is_positive() && sys.is_root(&s) && lex_less(r, &s)).then(|| (r.clone(), s))
                })
                .collect();
            if pairs.is_empty() {
                continue;
            }
            pairs.sort_by(|x, y| x.0.coords.cmp(&y.0.coords));
            let (xi, zeta) = pairs[0].clone();
            let (p, _) = sys.root_string(&xi, &zeta).expect("independent roots");
            let n_xz = p as i64 + 1;
            table.set_positive(&xi, &zeta, n_xz);
            for (r, s) in pairs.into_iter().skip(1) {
                let c2 = sys.norm(c);
                let mut acc = Q::zero();
                let s_xi = &s - &xi;
                if sys.is_root(&s_xi) {
                    let t = table.n(&s, &-&xi) * table.n(&r, &-&zeta);
                    acc += Q::new(t.into(), sys.norm(&s_xi).into());
                }
                let r_xi = &r - &xi;
                if sys.is_root(&r_xi) {
                    let t = table.n(&-&xi, &r) * table.n(&s, &-&zeta);
                    acc += Q::new(t.into(), sys.norm(&r_xi).into());
                }
                let val = acc * Q::from_integer(c2.into()) / Q::from_integer(n_xz.into());
                assert!(val.is_integer(), "non-integral structure constant");
                let v: i64 = val.to_integer().try_into().expect("small");
                table.set_positive(&r, &s, v);
            }
        }
        table
    }

    fn set_positive(&mut self, r: &Root, s: &Root, v: i64) {
        let i = self.sys.root_index(r).expect("root");
        let j = self.sys.root_index(s).expect("root");
        self.positive.insert((i, j), v);
        self.positive.insert((j, i), -v);
    }

    pub fn system(&self) -> &RootSystem {
        self.sys
    }

    /// `N_{a, b}`, zero when `a + b` is not a root.
    pub fn n(&self, a: &Root, b: &Root) -> i64 {
        let sys = self.sys;
        let sum = a + b;
        if !sys.is_root(&sum) || !sys.is_root(a) || !sys.is_root(b) {
            return 0;
        }
        match (a.is_positive(), b.is_positive()) {
            (true, true) => {
                let i = sys.root_index(a).expect("root");
                let j = sys.root_index(b).expect("root");
                self.positive[&(i, j)]
            }
            (false, false) => -self.n(&-a, &-b),
            _ => {
                // a + b + t = 0: N_{a,b}/(t,t) = N_{b,t}/(a,a) = N_{t,a}/(b,b).
                let t = -&sum;
                let tt = sys.norm(&t);
                let (num, den) = if t.is_positive() == b.is_positive() {
                    (self.n(b, &t) * tt, sys.norm(a))
                } else {
                    (self.n(&t, a) * tt, sys.norm(b))
                };
                debug_assert_eq!(num % den, 0);
                num / den
            }
        }
    }
}

fn binom(n: u64, k: u64) -> u64 {
    (0..k).fold(1u64, |acc, i| acc * (n - i) / (i + 1))
}

/// `M_{alpha, beta, i} = (1/i!) prod_{k < i} N_{alpha, beta + k alpha}`.
pub fn m_constant(sc: &StructureConstants<'_>, alpha: &Root, beta: &Root, i: u32) -> Result<i64> {
    let sys = sc.system();
    sys.root_string(alpha, beta)?;
    if i == 0 || !sys.is_root(&beta.add_scaled(alpha, i as i64)) {
        return Err(Error::NotARoot(format!("{} + {i}*({alpha})", beta)));
    }
    let mut prod: i64 = 1;
    for k in 0..i {
        prod *= sc.n(alpha, &beta.add_scaled(alpha, k as i64));
    }
    let fact: i64 = (1..=i as i64).product();
    debug_assert_eq!(prod % fact, 0);
    Ok(prod / fact)
}

/// Magnitude predicted for `M_{alpha, beta, i}`: `binom(p + i, i)`.
pub fn m_magnitude(sys: &RootSystem, alpha: &Root, beta: &Root, i: u32) -> Result<u64> {
    let (p, _) = sys.root_string(alpha, beta)?;
    Ok(binom(u64::from(p + i), u64::from(i)))
}

/// The commutator constant `C_{alpha, beta, i, j}`.
pub fn c_constant(sc: &StructureConstants<'_>, alpha: &Root, beta: &Root, i: u32, j: u32) -> Result<i64> {
    if !ADMISSIBLE.contains(&(i, j)) {
        return Err(Error::InadmissiblePair { i, j });
    }
    let sys = sc.system();
    let target = alpha.scale(i as i64).add_scaled(beta, j as i64);
    if !sys.is_root(&target) {
        return Err(Error::NotARoot(target.to_string()));
    }
    let sum = alpha + beta;
    match (i, j) {
        (_, 1) => m_constant(sc, alpha, beta, i),
        (1, _) => {
            let m = m_constant(sc, beta, alpha, j)?;
            Ok(if j % 2 == 0 { m } else { -m })
        }
        (3, 2) => {
            let m = m_constant(sc, &sum, alpha, 2)?;
            debug_assert_eq!(m % 3, 0);
            Ok(m / 3)
        }
        (2, 3) => {
            let m = m_constant(sc, &sum, beta, 2)?;
            debug_assert_eq!((2 * m) % 3, 0);
            Ok(-2 * m / 3)
        }
        _ => unreachable!(),
    }
}

/// One term `C (-r)^i s^j` of the commutator `[u_psi(r), u_phi(s)]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CommutatorTerm {
    pub i: u32,
    pub j: u32,
    pub root: AffineRoot,
    pub coefficient: i64,
}

/// Terms of the commutator of `u_psi` and `u_phi` modulo the subgroup at depth 1.
pub fn commutator_expansion(
    sc: &StructureConstants<'_>,
    psi: &AffineRoot,
    phi: &AffineRoot,
    x: &BuildingPoint,
) -> Result<Vec<CommutatorTerm>> {
    let sys = sc.system();
    let vp = psi.eval(x);
    let vf = phi.eval(x);
    let one = Q::one();
    if !(vp > Q::zero() && vp < one && vf > Q::zero() && vf < one) {
        return Err(Error::Precondition("both roots must take values in (0, 1)".into()));
    }
    if (&psi.gradient + &phi.gradient).is_zero() {
        return Err(Error::Precondition("psi + phi is constant".into()));
    }
    let mut terms = Vec::new();
    let mut pairs = ADMISSIBLE.to_vec();
    pairs.sort_by_key(|&(i, j)| (i + j, std::cmp::Reverse(i)));
    for (i, j) in pairs {
        let grad = psi.gradient.scale(i as i64).add_scaled(&phi.gradient, j as i64);
        if !sys.is_root(&grad) {
            continue;
        }
        let root = AffineRoot::new(grad, i as i64 * psi.level + j as i64 * phi.level);
        let v = root.eval(x);
        if v > Q::zero() && v < one {
            let coefficient = c_constant(sc, &psi.gradient, &phi.gradient, i, j)?;
            terms.push(CommutatorTerm { i, j, root, coefficient });
        }
    }
    Ok(terms)
}
