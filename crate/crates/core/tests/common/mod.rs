//! Independent oracles shared by the property suite and the acceptance runner.
#![allow(dead_code)]

use std::collections::{BTreeMap, BTreeSet};

use epikit_core::abelianization::compute_sx;
use epikit_core::affine::{delta_x, facet_barycentres, kac_to_point, psi_x_band};
use epikit_core::chevalley::{c_constant, m_constant, m_magnitude, StructureConstants, ADMISSIBLE};
use epikit_core::linalg::rank_int;
use epikit_core::rational::Q;
use epikit_core::stability::{cone_ray_fm, cone_trivial_lp, is_cone_trivial};
use epikit_core::{AffineRoot, CoweightVector, IwahoriWeylElement, Root, RootSystem, WeylElement};
use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

pub fn sys(name: &str) -> RootSystem {
    name.parse().unwrap()
}

pub fn systems_of_rank(n: usize) -> Vec<RootSystem> {
    let names: &[&str] = match n {
        1 => &["A1"],
        2 => &["A2", "B2", "G2"],
        3 => &["A3", "B3", "C3"],
        4 => &["A4", "B4", "C4", "D4", "F4"],
        5 => &["A5", "B5", "C5", "D5"],
        6 => &["A6", "B6", "C6", "D6", "E6"],
        _ => &[],
    };
    names.iter().map(|s| sys(s)).collect()
}

pub fn systems_up_to(n: usize) -> Vec<RootSystem> {
    (1..=n).flat_map(systems_of_rank).collect()
}

pub fn ar(g: &[i64], n: i64) -> AffineRoot {
    AffineRoot::new(Root::new(g.to_vec()), n)
}

/// Gradients of Delta(x) span, and every root in (0, 1] outside Delta(x)
/// drops into (0, 1] after subtracting some root of Delta(x).
pub fn delta_span(s: &RootSystem) -> Result<(), String> {
    for k in facet_barycentres(s) {
        let x = kac_to_point(s, &k).unwrap();
        let d = delta_x(s, &x).unwrap();
        let rows: Vec<Vec<i64>> = d.roots.iter().map(|r| r.gradient.coords.clone()).collect();
        if rank_int(&rows) != s.rank {
            return Err(format!("{} {:?}: Delta does not span", s.name(), k.b));
        }
        let band: BTreeSet<AffineRoot> = psi_x_band(s, &x, &Q::zero(), &Q::one(), true, false).into_iter().collect();
        for psi in &band {
            if d.roots.contains(psi) {
                continue;
            }
            if !d.roots.iter().any(|t| band.contains(&psi.sub(t))) {
                return Err(format!("{} {:?}: no theta for {psi}", s.name(), k.b));
            }
        }
    }
    Ok(())
}

/// Roots in the band (0, 1) that are not a sum of two roots in the band.
pub fn indecomposable_band(s: &RootSystem, x: &CoweightVector) -> BTreeSet<AffineRoot> {
    let band: BTreeSet<AffineRoot> = psi_x_band(s, x, &Q::zero(), &Q::one(), true, true).into_iter().collect();
    band.iter()
        .filter(|psi| !band.iter().any(|t| band.contains(&psi.sub(t))))
        .cloned()
        .collect()
}

/// For `p > 3`, and `p = 2` on simply laced types, the lines of the
/// abelianisation are the indecomposable roots of the band.
pub fn generic_abelianization(s: &RootSystem, p: u64) -> Result<(), String> {
    for k in facet_barycentres(s) {
        let x = kac_to_point(s, &k).unwrap();
        let got = compute_sx(s, p, p, &x).map_err(|e| e.to_string())?.roots();
        let want = indecomposable_band(s, &x);
        if got != want {
            return Err(format!("{} p={p} {:?}", s.name(), k.b));
        }
    }
    Ok(())
}

/// Search `[-bound, bound]^n` for a nonzero `gamma` pairing non-positively with every row.
pub fn brute_force_ray(rows: &[Vec<i64>], bound: i64) -> Option<Vec<i64>> {
    let n = rows[0].len();
    let side = (2 * bound + 1) as usize;
    let total = side.pow(n as u32);
    (0..total).into_par_iter().find_map_any(|mut code| {
        let mut g = vec![0i64; n];
        for c in g.iter_mut() {
            *c = (code % side) as i64 - bound;
            code /= side;
        }
        if g.iter().all(|&c| c == 0) {
            return None;
        }
        rows.iter()
            .all(|r| r.iter().zip(&g).map(|(a, b)| a * b).sum::<i64>() <= 0)
            .then_some(g)
    })
}

/// Random root subset of a random system of the given rank.
pub fn random_support(rng: &mut ChaCha8Rng, rank: usize) -> Vec<Root> {
    let systems = systems_of_rank(rank);
    let s = &systems[rng.gen_range(0..systems.len())];
    let k = rng.gen_range(1..=2 * rank + 2);
    (0..k).map(|_| s.all_roots[rng.gen_range(0..s.all_roots.len())].clone()).collect()
}

/// FM and LP deciders agree, certificates verify, and no small integer ray
/// contradicts a triviality verdict.
pub fn fm_lp_agreement(seed: u64, per_rank: usize, max_rank: usize, bound: i64) -> Result<(usize, usize), String> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut trivial = 0;
    let mut checked = 0;
    for rank in 1..=max_rank {
        let sets: Vec<Vec<Root>> = (0..per_rank).map(|_| random_support(&mut rng, rank)).collect();
        let results: Vec<Result<bool, String>> = sets
            .par_iter()
            .map(|g| {
                let fm = cone_ray_fm(g);
                let lp = cone_trivial_lp(g);
                if fm.is_none() != lp.is_some() {
                    return Err(format!("deciders disagree on {g:?}"));
                }
                let v = is_cone_trivial(g).map_err(|e| e.to_string())?;
                if !v.certificate.verify(g) {
                    return Err(format!("certificate fails on {g:?}"));
                }
                let rows: Vec<Vec<i64>> = g.iter().map(|r| r.coords.clone()).collect();
                if v.trivial {
                    if let Some(ray) = brute_force_ray(&rows, bound) {
                        return Err(format!("falsifier found {ray:?} for {g:?}"));
                    }
                }
                Ok(v.trivial)
            })
            .collect();
        for r in results {
            trivial += usize::from(r?);
            checked += 1;
        }
    }
    Ok((checked, trivial))
}

pub fn random_affine_weyl(rng: &mut ChaCha8Rng, s: &RootSystem) -> IwahoriWeylElement {
    let len = rng.gen_range(0..12);
    let word: Vec<usize> = (0..len).map(|_| rng.gen_range(0..s.rank)).collect();
    let t: Vec<i64> = (0..s.rank).map(|_| rng.gen_range(-3..=3)).collect();
    IwahoriWeylElement::new(t, WeylElement::from_word(s, &word).unwrap())
}

pub fn random_point(rng: &mut ChaCha8Rng, rank: usize) -> CoweightVector {
    CoweightVector::new((0..rank).map(|_| Q::new(rng.gen_range(-24..=24).into(), rng.gen_range(1..=12).into())).collect())
}

/// `psi(x) = w(psi)(w(x))` on random triples.
pub fn weyl_equivariance(seed: u64, samples: usize) -> Result<(), String> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let systems = systems_up_to(6);
    for _ in 0..samples {
        let s = &systems[rng.gen_range(0..systems.len())];
        let w = random_affine_weyl(&mut rng, s);
        let a = s.all_roots[rng.gen_range(0..s.all_roots.len())].clone();
        let psi = AffineRoot::new(a, rng.gen_range(-5..=5));
        let x = random_point(&mut rng, s.rank);
        let img = w.act_root(&psi);
        if !s.is_root(&img.gradient) || psi.eval(&x) != img.eval(&w.act_point(&x)) {
            return Err(format!("{} {:?} {psi}", s.name(), w.finite.word));
        }
    }
    Ok(())
}

/// Elements of the Chevalley Lie algebra: root vectors by index, then Cartan coordinates.
type LieVec = BTreeMap<usize, i64>;

fn add_into(acc: &mut LieVec, v: &LieVec, k: i64) {
    for (&i, &c) in v {
        let e = acc.entry(i).or_insert(0);
        *e += k * c;
        if *e == 0 {
            acc.remove(&i);
        }
    }
}

struct Lie<'a> {
    s: &'a RootSystem,
    sc: StructureConstants<'a>,
    m: usize,
}

impl<'a> Lie<'a> {
    fn new(s: &'a RootSystem) -> Self {
        Lie { s, sc: StructureConstants::new(s), m: s.all_roots.len() }
    }

    fn h_of(&self, a: &Root) -> LieVec {
        // a^vee in simple coroots: a_i (alpha_i, alpha_i) / (a, a).
        let na = self.s.norm(a);
        let mut v = LieVec::new();
        for i in 0..self.s.rank {
            let c = a.coords[i] * self.s.norm(&self.s.simple_roots[i]);
            assert_eq!(c % na, 0);
            if c != 0 {
                v.insert(self.m + i, c / na);
            }
        }
        v
    }

    fn bracket_basis(&self, x: usize, y: usize) -> LieVec {
        let m = self.m;
        let mut out = LieVec::new();
        match (x < m, y < m) {
            (false, false) => {}
            (true, true) => {
                let (a, b) = (&self.s.all_roots[x], &self.s.all_roots[y]);
                let sum = a + b;
                if sum.is_zero() {
                    return self.h_of(a);
                }
                let n = self.sc.n(a, b);
                if n != 0 {
                    out.insert(self.s.root_index(&sum).unwrap(), n);
                }
            }
            (false, true) => {
                let i = x - m;
                let b = &self.s.all_roots[y];
                let c: i64 = (0..self.s.rank).map(|j| b.coords[j] * self.s.cartan[j][i]).sum();
                if c != 0 {
                    out.insert(y, c);
                }
            }
            (true, false) => {
                let v = self.bracket_basis(y, x);
                add_into(&mut out, &v, -1);
            }
        }
        out
    }

    fn bracket(&self, u: &LieVec, v: &LieVec) -> LieVec {
        let mut out = LieVec::new();
        for (&i, &a) in u {
            for (&j, &b) in v {
                add_into(&mut out, &self.bracket_basis(i, j), a * b);
            }
        }
        out
    }
}

/// Jacobi identity on every triple of basis vectors.
pub fn jacobi(s: &RootSystem) -> Result<(), String> {
    let lie = Lie::new(s);
    let dim = lie.m + s.rank;
    let unit = |i: usize| LieVec::from([(i, 1)]);
    (0..dim).into_par_iter().try_for_each(|i| {
        for j in 0..dim {
            for k in 0..dim {
                let (x, y, z) = (unit(i), unit(j), unit(k));
                let mut t = lie.bracket(&x, &lie.bracket(&y, &z));
                add_into(&mut t, &lie.bracket(&y, &lie.bracket(&z, &x)), 1);
                add_into(&mut t, &lie.bracket(&z, &lie.bracket(&x, &y)), 1);
                if !t.is_empty() {
                    return Err(format!("{}: Jacobi fails on {i},{j},{k}", s.name()));
                }
            }
        }
        Ok(())
    })
}

/// Commutator constants have magnitude 1, 2 or 3, `|C_{a,b,1,1}| = 1` when
/// `b - a` is not a root, and `|N_{a,b}| = p + 1`.
pub fn constant_magnitudes(s: &RootSystem) -> Result<(), String> {
    let sc = StructureConstants::new(s);
    for a in &s.all_roots {
        for b in &s.all_roots {
            if (a + b).is_zero() || a == b {
                continue;
            }
            if s.is_root(&(a + b)) {
                let (p, _) = s.root_string(a, b).unwrap();
                if sc.n(a, b).unsigned_abs() != u64::from(p + 1) {
                    return Err(format!("{}: |N({a}, {b})| != p + 1", s.name()));
                }
                if !s.is_root(&(b - a)) && c_constant(&sc, a, b, 1, 1).unwrap().abs() != 1 {
                    return Err(format!("{}: |C_11({a}, {b})| != 1", s.name()));
                }
            }
            for i in 1..=3u32 {
                if s.is_root(&b.add_scaled(a, i64::from(i))) {
                    let m = m_constant(&sc, a, b, i).unwrap();
                    if m.unsigned_abs() != m_magnitude(s, a, b, i).unwrap() {
                        return Err(format!("{}: |M({a}, {b}, {i})|", s.name()));
                    }
                }
            }
            for &(i, j) in &ADMISSIBLE {
                let t = a.scale(i64::from(i)).add_scaled(b, i64::from(j));
                if s.is_root(&t) {
                    let c = c_constant(&sc, a, b, i, j).unwrap().abs();
                    if !(1..=3).contains(&c) {
                        return Err(format!("{}: |C({a}, {b}, {i}, {j})| = {c}", s.name()));
                    }
                }
            }
        }
    }
    Ok(())
}
