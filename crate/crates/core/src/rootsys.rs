//! Finite root systems of types A to G, Bourbaki numbering.
//!
//! Roots are integer vectors in the simple-root basis. Coweights are rational
//! vectors in the fundamental-coweight basis, so `<root, coweight>` is a dot
//! product.

use std::collections::{HashMap, HashSet, VecDeque};
use std::fmt;
use std::ops::{Add, Neg, Sub};
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::linalg::{identity_int, mat_mul_int, mat_vec_int};
use crate::rational::{dot_iq, Q};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Family {
    A,
    B,
    C,
    D,
    E,
    F,
    G,
}

impl Family {
    pub fn letter(self) -> char {
        match self {
            Family::A => 'A',
            Family::B => 'B',
            Family::C => 'C',
            Family::D => 'D',
            Family::E => 'E',
            Family::F => 'F',
            Family::G => 'G',
        }
    }
}

impl FromStr for Family {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_uppercase().as_str() {
            "A" => Ok(Family::A),
            "B" => Ok(Family::B),
            "C" => Ok(Family::C),
            "D" => Ok(Family::D),
            "E" => Ok(Family::E),
            "F" => Ok(Family::F),
            "G" => Ok(Family::G),
            other => Err(Error::InvalidType(other.to_string())),
        }
    }
}

/// A root, or any integer vector in the simple-root basis.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Root {
    pub coords: Vec<i64>,
}

impl Root {
    pub fn new(coords: Vec<i64>) -> Self {
        Root { coords }
    }

    pub fn zero(rank: usize) -> Self {
        Root { coords: vec![0; rank] }
    }

    /// The `i`-th simple root, 0-based.
    pub fn simple(rank: usize, i: usize) -> Self {
        let mut coords = vec![0; rank];
        coords[i] = 1;
        Root { coords }
    }

    pub fn rank(&self) -> usize {
        self.coords.len()
    }

    pub fn height(&self) -> i64 {
        self.coords.iter().sum()
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(|&c| c == 0)
    }

    pub fn is_positive(&self) -> bool {
        !self.is_zero() && self.coords.iter().all(|&c| c >= 0)
    }

    pub fn scale(&self, k: i64) -> Root {
        Root { coords: self.coords.iter().map(|c| c * k).collect() }
    }

    pub fn add_scaled(&self, other: &Root, k: i64) -> Root {
        Root {
            coords: self.coords.iter().zip(&other.coords).map(|(a, b)| a + k * b).collect(),
        }
    }
}

impl Add for &Root {
    type Output = Root;
    fn add(self, rhs: &Root) -> Root {
        self.add_scaled(rhs, 1)
    }
}

impl Sub for &Root {
    type Output = Root;
    fn sub(self, rhs: &Root) -> Root {
        self.add_scaled(rhs, -1)
    }
}

impl Neg for &Root {
    type Output = Root;
    fn neg(self) -> Root {
        self.scale(-1)
    }
}

impl fmt::Display for Root {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, &c) in self.coords.iter().enumerate() {
            if c == 0 {
                continue;
            }
            if c < 0 {
                write!(f, "-")?;
            } else if !first {
                write!(f, "+")?;
            }
            if c.abs() != 1 {
                write!(f, "{}", c.abs())?;
            }
            write!(f, "a{}", i + 1)?;
            first = false;
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

/// A rational vector in the fundamental-coweight basis.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CoweightVector {
    pub coords: Vec<Q>,
}

impl CoweightVector {
    pub fn new(coords: Vec<Q>) -> Self {
        CoweightVector { coords }
    }

    pub fn zero(rank: usize) -> Self {
        CoweightVector { coords: vec![Q::from_integer(0.into()); rank] }
    }

    pub fn from_ints(v: &[i64]) -> Self {
        CoweightVector { coords: v.iter().map(|&x| Q::from_integer(x.into())).collect() }
    }

    pub fn rank(&self) -> usize {
        self.coords.len()
    }
}

#[derive(Debug, Clone)]
pub struct RootSystem {
    pub family: Family,
    pub rank: usize,
    /// `cartan[i][j] = <alpha_i, alpha_j^vee>`.
    pub cartan: Vec<Vec<i64>>,
    /// Gram matrix of the invariant form, shortest roots of squared length 2.
    pub gram: Vec<Vec<i64>>,
    pub simple_roots: Vec<Root>,
    /// Positive roots ordered by height, then lexicographically.
    pub positive_roots: Vec<Root>,
    /// Positive roots followed by their negatives.
    pub all_roots: Vec<Root>,
    pub highest_root: Root,
    /// `marks[0] = 1` for the affine node, then the coefficients of the highest root.
    pub marks: Vec<i64>,
    index: HashMap<Root, usize>,
}

fn gram_matrix(family: Family, n: usize) -> Result<Vec<Vec<i64>>> {
    let bad = || Error::InvalidType(format!("{}{}", family.letter(), n));
    let valid = match family {
        Family::A => n >= 1,
        Family::B | Family::C => n >= 2,
        Family::D => n >= 4,
        Family::E => (6..=8).contains(&n),
        Family::F => n == 4,
        Family::G => n == 2,
    };
    if !valid {
        return Err(bad());
    }
    let mut g = vec![vec![0i64; n]; n];
    let link = |g: &mut Vec<Vec<i64>>, i: usize, j: usize, v: i64| {
        g[i][j] = v;
        g[j][i] = v;
    };
    match family {
        Family::A => {
            for i in 0..n {
                g[i][i] = 2;
            }
            for i in 0..n - 1 {
                link(&mut g, i, i + 1, -1);
            }
        }
        Family::B => {
            for i in 0..n {
                g[i][i] = if i + 1 == n { 2 } else { 4 };
            }
            for i in 0..n - 1 {
                link(&mut g, i, i + 1, -2);
            }
        }
        Family::C => {
            for i in 0..n {
                g[i][i] = if i + 1 == n { 4 } else { 2 };
            }
            for i in 0..n - 1 {
                link(&mut g, i, i + 1, if i + 2 == n { -2 } else { -1 });
            }
        }
        Family::D => {
            for i in 0..n {
                g[i][i] = 2;
            }
            for i in 0..n - 2 {
                link(&mut g, i, i + 1, -1);
            }
            link(&mut g, n - 3, n - 1, -1);
        }
        Family::E => {
            for i in 0..n {
                g[i][i] = 2;
            }
            link(&mut g, 0, 2, -1);
            link(&mut g, 1, 3, -1);
            for i in 2..n - 1 {
                link(&mut g, i, i + 1, -1);
            }
        }
        Family::F => {
            g[0][0] = 4;
            g[1][1] = 4;
            g[2][2] = 2;
            g[3][3] = 2;
            link(&mut g, 0, 1, -2);
            link(&mut g, 1, 2, -2);
            link(&mut g, 2, 3, -1);
        }
        Family::G => {
            g[0][0] = 2;
            g[1][1] = 6;
            link(&mut g, 0, 1, -3);
        }
    }
    Ok(g)
}

/// Builds the root system of the given type.
pub fn build_root_system(family: Family, rank: usize) -> Result<RootSystem> {
    let gram = gram_matrix(family, rank)?;
    let n = rank;
    let cartan: Vec<Vec<i64>> = (0..n)
        .map(|i| (0..n).map(|j| 2 * gram[i][j] / gram[j][j]).collect())
        .collect();
    let simple_roots: Vec<Root> = (0..n).map(|i| Root::simple(n, i)).collect();

    // Closure of the simple roots under simple reflections.
    let mut seen: HashSet<Root> = simple_roots.iter().cloned().collect();
    let mut queue: VecDeque<Root> = simple_roots.iter().cloned().collect();
    while let Some(beta) = queue.pop_front() {
        for i in 0..n {
            let pairing: i64 = (0..n).map(|j| beta.coords[j] * cartan[j][i]).sum();
            if pairing == 0 {
                continue;
            }
            let mut image = beta.clone();
            image.coords[i] -= pairing;
            if seen.insert(image.clone()) {
                queue.push_back(image);
            }
        }
    }
    let mut positive_roots: Vec<Root> = seen.into_iter().filter(Root::is_positive).collect();
    positive_roots.sort_by(|a, b| a.height().cmp(&b.height()).then_with(|| a.cmp(b)));
    let highest_root = positive_roots.last().expect("nonempty").clone();
    let mut all_roots = positive_roots.clone();
    all_roots.extend(positive_roots.iter().map(|r| -r));
    let index = all_roots.iter().enumerate().map(|(i, r)| (r.clone(), i)).collect();
    let mut marks = vec![1];
    marks.extend(highest_root.coords.iter().copied());
    Ok(RootSystem {
        family,
        rank,
        cartan,
        gram,
        simple_roots,
        positive_roots,
        all_roots,
        highest_root,
        marks,
        index,
    })
}

impl FromStr for RootSystem {
    type Err = Error;

    /// Parses names such as `"G2"` or `"b5"`.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let bad = || Error::InvalidType(s.to_string());
        let mut chars = s.chars();
        let letter = chars.next().ok_or_else(bad)?;
        let family: Family = letter.to_string().parse().map_err(|_| bad())?;
        let rank: usize = chars.as_str().parse().map_err(|_| bad())?;
        build_root_system(family, rank).map_err(|_| bad())
    }
}

impl RootSystem {
    pub fn name(&self) -> String {
        format!("{}{}", self.family.letter(), self.rank)
    }

    pub fn num_roots(&self) -> usize {
        self.all_roots.len()
    }

    pub fn is_root(&self, r: &Root) -> bool {
        self.index.contains_key(r)
    }

    /// Position of `r` in `all_roots`.
    pub fn root_index(&self, r: &Root) -> Option<usize> {
        self.index.get(r).copied()
    }

    pub fn is_simply_laced(&self) -> bool {
        matches!(self.family, Family::A | Family::D | Family::E)
    }

    fn check_rank(&self, len: usize) -> Result<()> {
        if len != self.rank {
            return Err(Error::RankMismatch { expected: self.rank, got: len });
        }
        Ok(())
    }

    fn check_root(&self, r: &Root) -> Result<()> {
        self.check_rank(r.rank())?;
        if !self.is_root(r) {
            return Err(Error::NotARoot(r.to_string()));
        }
        Ok(())
    }

    /// The invariant form `(a, b)` on the root lattice.
    pub fn inner(&self, a: &Root, b: &Root) -> i64 {
        let mut s = 0;
        for i in 0..self.rank {
            if a.coords[i] == 0 {
                continue;
            }
            for j in 0..self.rank {
                s += a.coords[i] * self.gram[i][j] * b.coords[j];
            }
        }
        s
    }

    pub fn norm(&self, a: &Root) -> i64 {
        self.inner(a, a)
    }

    pub fn is_long(&self, a: &Root) -> bool {
        let max = (0..self.rank).map(|i| self.gram[i][i]).max().unwrap_or(2);
        self.norm(a) == max
    }

    /// `<alpha, gamma>` for a root (or lattice vector) and a coweight.
    pub fn pairing(&self, alpha: &Root, gamma: &CoweightVector) -> Result<Q> {
        self.check_rank(alpha.rank())?;
        self.check_rank(gamma.rank())?;
        Ok(dot_iq(&alpha.coords, &gamma.coords))
    }

    /// `(p, q)` such that `beta - p alpha, ..., beta + q alpha` is the alpha-string through beta.
    pub fn root_string(&self, alpha: &Root, beta: &Root) -> Result<(u32, u32)> {
        self.check_root(alpha)?;
        self.check_root(beta)?;
        if alpha == beta || alpha == &-beta {
            return Err(Error::LinearlyDependent(format!("{alpha} and {beta}")));
        }
        let mut p = 0;
        while self.is_root(&beta.add_scaled(alpha, -(p as i64 + 1))) {
            p += 1;
        }
        let mut q = 0;
        while self.is_root(&beta.add_scaled(alpha, q as i64 + 1)) {
            q += 1;
        }
        Ok((p, q))
    }

    /// `<alpha, beta^vee>`, from the invariant form.
    pub fn coroot_pairing(&self, alpha: &Root, beta: &Root) -> Result<i64> {
        self.check_root(alpha)?;
        self.check_root(beta)?;
        Ok(self.coroot_pairing_unchecked(alpha, beta))
    }

    pub(crate) fn coroot_pairing_unchecked(&self, alpha: &Root, beta: &Root) -> i64 {
        let num = 2 * self.inner(alpha, beta);
        let den = self.norm(beta);
        debug_assert_eq!(num % den, 0);
        num / den
    }

    /// `<alpha, beta^vee>` as `p - q` of the beta-string through alpha.
    pub fn coroot_pairing_by_strings(&self, alpha: &Root, beta: &Root) -> Result<i64> {
        if alpha == beta {
            return Ok(2);
        }
        if alpha == &-beta {
            return Ok(-2);
        }
        let (p, q) = self.root_string(beta, alpha)?;
        Ok(p as i64 - q as i64)
    }

    /// The coroot of `alpha` in fundamental-coweight coordinates.
    pub fn coroot_coweight(&self, alpha: &Root) -> Vec<i64> {
        (0..self.rank)
            .map(|j| self.coroot_pairing_unchecked(&self.simple_roots[j], alpha))
            .collect()
    }

    /// Fundamental coweight `omega_i^vee` (0-based).
    pub fn fundamental_coweight(&self, i: usize) -> Vec<i64> {
        let mut v = vec![0; self.rank];
        v[i] = 1;
        v
    }

    /// Reflection of `beta` in the hyperplane of `alpha`.
    pub fn reflect(&self, alpha: &Root, beta: &Root) -> Root {
        beta.add_scaled(alpha, -self.coroot_pairing_unchecked(beta, alpha))
    }

    /// Whether the integer coweight `mu` lies in the coroot lattice.
    pub fn in_coroot_lattice(&self, mu: &[i64]) -> bool {
        let a = crate::linalg::to_q(&self.cartan);
        let b: Vec<Q> = mu.iter().map(|&x| Q::from_integer(x.into())).collect();
        match crate::linalg::solve(&a, &b) {
            Some(c) => c.iter().all(|x| x.is_integer()),
            None => false,
        }
    }

    /// Order of the finite Weyl group.
    pub fn weyl_order(&self) -> u128 {
        let n = self.rank as u128;
        let fact = |k: u128| (1..=k).product::<u128>();
        match self.family {
            Family::A => fact(n + 1),
            Family::B | Family::C => (1u128 << n) * fact(n),
            Family::D => (1u128 << (n - 1)) * fact(n),
            Family::E => match n {
                6 => 51_840,
                7 => 2_903_040,
                _ => 696_729_600,
            },
            Family::F => 1152,
            Family::G => 12,
        }
    }
}

/// Largest Weyl group this crate will enumerate.
pub const WEYL_ENUMERATION_LIMIT: u128 = 2_000_000;

/// An element of the finite Weyl group.
///
/// The word `[i1, ..., ik]` denotes `s_{i1} ... s_{ik}` (0-based indices).
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct WeylElement {
    pub word: Vec<usize>,
    /// Action on root coordinates (column vectors).
    pub matrix: Vec<Vec<i64>>,
    /// Action on coweight coordinates.
    pub coweight_matrix: Vec<Vec<i64>>,
}

impl WeylElement {
    pub fn identity(rank: usize) -> Self {
        WeylElement {
            word: Vec::new(),
            matrix: identity_int(rank),
            coweight_matrix: identity_int(rank),
        }
    }

    pub fn simple(sys: &RootSystem, i: usize) -> Self {
        let n = sys.rank;
        let mut m = identity_int(n);
        // s_i(alpha_j) = alpha_j - A[j][i] alpha_i: column j gets -A[j][i] in row i.
        for j in 0..n {
            m[i][j] -= sys.cartan[j][i];
        }
        // s_i(gamma) = gamma - <alpha_i, gamma> alpha_i^vee, alpha_i^vee = column i of A.
        let mut c = identity_int(n);
        for k in 0..n {
            c[k][i] -= sys.cartan[k][i];
        }
        WeylElement { word: vec![i], matrix: m, coweight_matrix: c }
    }

    pub fn from_word(sys: &RootSystem, word: &[usize]) -> Result<Self> {
        let mut w = WeylElement::identity(sys.rank);
        for &i in word {
            if i >= sys.rank {
                return Err(Error::InvalidInput(format!("reflection index {i} out of range")));
            }
            w = w.compose(&WeylElement::simple(sys, i));
        }
        Ok(w)
    }

    pub fn rank(&self) -> usize {
        self.matrix.len()
    }

    pub fn is_identity(&self) -> bool {
        self.matrix == identity_int(self.rank())
    }

    /// `self * other`.
    pub fn compose(&self, other: &WeylElement) -> WeylElement {
        let mut word = self.word.clone();
        word.extend_from_slice(&other.word);
        WeylElement {
            word,
            matrix: mat_mul_int(&self.matrix, &other.matrix),
            coweight_matrix: mat_mul_int(&self.coweight_matrix, &other.coweight_matrix),
        }
    }

    pub fn inverse(&self) -> WeylElement {
        let word: Vec<usize> = self.word.iter().rev().copied().collect();
        // The coweight action is the inverse transpose of the root action.
        WeylElement {
            word,
            matrix: crate::linalg::transpose_int(&self.coweight_matrix),
            coweight_matrix: crate::linalg::transpose_int(&self.matrix),
        }
    }

    pub fn apply_root(&self, r: &Root) -> Root {
        Root::new(mat_vec_int(&self.matrix, &r.coords))
    }

    pub fn apply_coweight(&self, g: &CoweightVector) -> CoweightVector {
        CoweightVector::new(crate::linalg::mat_vec_q(&self.coweight_matrix, &g.coords))
    }

    pub fn apply_coweight_int(&self, g: &[i64]) -> Vec<i64> {
        mat_vec_int(&self.coweight_matrix, g)
    }

    /// Word in 1-based Bourbaki indices.
    pub fn word_1based(&self) -> Vec<usize> {
        self.word.iter().map(|i| i + 1).collect()
    }
}

/// All elements of the finite Weyl group in breadth-first order.
///
/// Each element carries its lexicographically first reduced word.
pub fn weyl_group(sys: &RootSystem) -> Result<Vec<WeylElement>> {
    let order = sys.weyl_order();
    if order > WEYL_ENUMERATION_LIMIT {
        return Err(Error::TooLarge(order));
    }
    let n = sys.rank;
    let gens: Vec<WeylElement> = (0..n).map(|i| WeylElement::simple(sys, i)).collect();
    // An element is determined by its image of the regular coweight (1, ..., 1).
    let rho = vec![1i64; n];
    let mut seen: HashSet<Vec<i64>> = HashSet::new();
    let id = WeylElement::identity(n);
    seen.insert(id.apply_coweight_int(&rho));
    let mut out = vec![id];
    let mut head = 0;
    while head < out.len() {
        let w = out[head].clone();
        head += 1;
        for g in &gens {
            let next = w.compose(g);
            if seen.insert(next.apply_coweight_int(&rho)) {
                out.push(next);
            }
        }
    }
    debug_assert_eq!(out.len() as u128, order);
    Ok(out)
}
