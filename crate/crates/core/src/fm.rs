//! Fourier-Motzkin elimination over the integers.
//!
//! Rows are kept primitive and deduplicated; Chernikov's rule discards rows
//! built from too many originals. A feasible point is recovered by back
//! substitution, taking each coordinate as close to zero as its bounds allow.

use std::collections::HashMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::rational::{primitive_ray, Q};

#[derive(Debug, Clone)]
struct Row {
    coeffs: Vec<BigInt>,
    rhs: BigInt,
    /// Original rows this one was combined from (only tracked for up to 128 originals).
    history: u128,
}

impl Row {
    fn normalize(mut self) -> Self {
        let g = self.coeffs.iter().fold(self.rhs.abs(), |acc, c| acc.gcd(c));
        if !g.is_zero() && !g.is_one() {
            for c in self.coeffs.iter_mut() {
                *c /= &g;
            }
            self.rhs /= &g;
        }
        self
    }
}

enum Step {
    Rows(Vec<Row>),
    Infeasible,
}

fn eliminate(rows: Vec<Row>, k: usize, prune: bool) -> Step {
    let mut pos = Vec::new();
    let mut neg = Vec::new();
    let mut out: HashMap<Vec<BigInt>, Row> = HashMap::new();
    let push = |r: Row, out: &mut HashMap<Vec<BigInt>, Row>| -> bool {
        let r = r.normalize();
        if r.coeffs.iter().all(Zero::is_zero) {
            return !r.rhs.is_negative();
        }
        match out.get(&r.coeffs) {
            Some(old)
                if old.rhs < r.rhs
                    || (old.rhs == r.rhs && old.history.count_ones() <= r.history.count_ones()) => {}
            _ => {
                out.insert(r.coeffs.clone(), r);
            }
        }
        true
    };
    for r in rows {
        match r.coeffs[k].sign() {
            num_bigint::Sign::Plus => pos.push(r),
            num_bigint::Sign::Minus => neg.push(r),
            num_bigint::Sign::NoSign => {
                if !push(r, &mut out) {
                    return Step::Infeasible;
                }
            }
        }
    }
    for p in &pos {
        for n in &neg {
            let history = p.history | n.history;
            if prune && history.count_ones() as usize > k + 2 {
                continue;
            }
            let a = &p.coeffs[k];
            let b = -&n.coeffs[k];
            let coeffs = p.coeffs.iter().zip(&n.coeffs).map(|(x, y)| x * &b + y * a).collect();
            let rhs = &p.rhs * &b + &n.rhs * a;
            if !push(Row { coeffs, rhs, history }, &mut out) {
                return Step::Infeasible;
            }
        }
    }
    let mut rows: Vec<Row> = out.into_values().collect();
    rows.sort_by(|x, y| x.coeffs.cmp(&y.coeffs));
    Step::Rows(rows)
}

fn satisfies(a: &[Vec<BigInt>], b: &[BigInt], x: &[Q]) -> bool {
    a.iter().zip(b).all(|(row, rhs)| {
        let lhs: Q = row.iter().zip(x).map(|(c, v)| Q::from_integer(c.clone()) * v).sum();
        lhs <= Q::from_integer(rhs.clone())
    })
}

/// A rational `x` with `a x <= b`, or `None` if the system is infeasible.
///
/// Pruning only discards rows, so an infeasible verdict under pruning is
/// final; a point that fails the exact check triggers an unpruned rerun.
pub fn fm_solve(a: &[Vec<BigInt>], b: &[BigInt]) -> Option<Vec<Q>> {
    let pruned = solve_with(a, b, a.len() <= 128)?;
    if satisfies(a, b, &pruned) {
        return Some(pruned);
    }
    let x = solve_with(a, b, false)?;
    debug_assert!(satisfies(a, b, &x));
    Some(x)
}

fn solve_with(a: &[Vec<BigInt>], b: &[BigInt], prune: bool) -> Option<Vec<Q>> {
    let n = a.first().map_or(0, Vec::len);
    let mut current: Vec<Row> = a
        .iter()
        .zip(b)
        .enumerate()
        .map(|(i, (c, r))| Row {
            coeffs: c.clone(),
            rhs: r.clone(),
            history: if prune { 1u128 << i } else { 0 },
        })
        .collect();
    // Rows with no variables at all are checked up front.
    if current.iter().any(|r| r.coeffs.iter().all(Zero::is_zero) && r.rhs.is_negative()) {
        return None;
    }
    let mut stages = Vec::with_capacity(n);
    for k in 0..n {
        stages.push(current.clone());
        match eliminate(current, k, prune) {
            Step::Rows(r) => current = r,
            Step::Infeasible => return None,
        }
    }
    if current.iter().any(|r| r.rhs.is_negative()) {
        return None;
    }
    let mut x = vec![Q::zero(); n];
    for k in (0..n).rev() {
        let mut lo: Option<Q> = None;
        let mut hi: Option<Q> = None;
        for r in &stages[k] {
            let c = &r.coeffs[k];
            if c.is_zero() {
                continue;
            }
            let mut rest = Q::from_integer(r.rhs.clone());
            for j in k + 1..n {
                if !r.coeffs[j].is_zero() {
                    rest -= &x[j] * Q::from_integer(r.coeffs[j].clone());
                }
            }
            let bound = rest / Q::from_integer(c.clone());
            if c.is_positive() {
                if hi.as_ref().map_or(true, |h| bound < *h) {
                    hi = Some(bound);
                }
            } else if lo.as_ref().map_or(true, |l| bound > *l) {
                lo = Some(bound);
            }
        }
        let zero = Q::zero();
        x[k] = match (lo, hi) {
            (Some(l), _) if l > zero => l,
            (_, Some(h)) if h < zero => h,
            _ => zero,
        };
    }
    Some(x)
}

/// A nonzero integer `gamma` with `<alpha, gamma> <= 0` for every row `alpha`,
/// or `None` when that cone is `{0}`.
pub fn nontrivial_ray(gradients: &[Vec<i64>]) -> Option<Vec<BigInt>> {
    let n = gradients.first().map_or(0, Vec::len);
    let base: Vec<Vec<BigInt>> =
        gradients.iter().map(|g| g.iter().map(|&c| BigInt::from(c)).collect()).collect();
    let mut rays: Vec<Vec<Q>> = Vec::new();
    for j in 0..n {
        for s in [-1i64, 1] {
            let mut a = base.clone();
            let mut b = vec![BigInt::zero(); a.len()];
            let mut row = vec![BigInt::zero(); n];
            row[j] = BigInt::from(s);
            a.push(row);
            b.push(BigInt::from(-1));
            if let Some(x) = fm_solve(&a, &b) {
                rays.push(x);
            }
        }
    }
    let first = rays.first()?.clone();
    let mut sum = vec![Q::zero(); n];
    for r in &rays {
        for (s, v) in sum.iter_mut().zip(r) {
            *s += v;
        }
    }
    let chosen = if sum.iter().all(Zero::is_zero) { first } else { sum };
    Some(primitive_ray(&chosen))
}
