//! Root systems of the simple Lie algebras with a fixed base, and the
//! Chevalley structure constants rescaled so that every root vector pairs
//! to 1 with its opposite under the Killing form.
//!
//! Roots are stored as integer coordinate vectors in the simple-root basis.
//! The basis of the Lie algebra is indexed as: `0..rank` for the simple
//! coroots spanning the Cartan subalgebra, then one index per root in a
//! fixed order (all positive roots sorted by height then lexicographically,
//! followed by their negatives in the same order).

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

use crate::error::{Error, Result};

fn q(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

fn qr(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

// ---------------------------------------------------------------------------
// type labels
// ---------------------------------------------------------------------------

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum Series {
    A,
    B,
    C,
    D,
    E,
    F,
    G,
}

impl fmt::Display for Series {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let c = match self {
            Series::A => 'A',
            Series::B => 'B',
            Series::C => 'C',
            Series::D => 'D',
            Series::E => 'E',
            Series::F => 'F',
            Series::G => 'G',
        };
        write!(f, "{c}")
    }
}

/// A simple type such as `B6` or `G2`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct TypeLabel {
    pub series: Series,
    pub rank: usize,
}

impl TypeLabel {
    pub fn new(series: Series, rank: usize) -> Result<Self> {
        let ok = match series {
            Series::A => rank >= 1,
            Series::B => rank >= 2,
            Series::C => rank >= 3,
            Series::D => rank >= 4,
            Series::E => (6..=8).contains(&rank),
            Series::F => rank == 4,
            Series::G => rank == 2,
        };
        if ok {
            Ok(TypeLabel { series, rank })
        } else {
            Err(Error::InvalidAlgebra(alloc::format!("{series}{rank}")))
        }
    }

    pub fn parse(s: &str) -> Result<Self> {
        let mut chars = s.chars();
        let series = match chars.next() {
            Some('A') | Some('a') => Series::A,
            Some('B') | Some('b') => Series::B,
            Some('C') | Some('c') => Series::C,
            Some('D') | Some('d') => Series::D,
            Some('E') | Some('e') => Series::E,
            Some('F') | Some('f') => Series::F,
            Some('G') | Some('g') => Series::G,
            _ => return Err(Error::InvalidAlgebra(String::from(s))),
        };
        let rank: usize = chars
            .as_str()
            .parse()
            .map_err(|_| Error::InvalidAlgebra(String::from(s)))?;
        TypeLabel::new(series, rank)
    }

    /// Number of roots of the system, from the classical count.
    pub fn root_count(&self) -> usize {
        let n = self.rank;
        match self.series {
            Series::A => n * (n + 1),
            Series::B | Series::C => 2 * n * n,
            Series::D => 2 * n * (n - 1),
            Series::E => match n {
                6 => 72,
                7 => 126,
                _ => 240,
            },
            Series::F => 48,
            Series::G => 12,
        }
    }
}

impl fmt::Display for TypeLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", self.series, self.rank)
    }
}

/// Simple roots in an explicit rational Euclidean realization.
///
/// For the B series the short root is the first simple root, so that for
/// example the positive roots of B2 are `a1, a2, a1+a2, 2a1+a2`. All other
/// series follow the usual textbook numbering.
fn realization(label: TypeLabel) -> Vec<Vec<BigRational>> {
    let n = label.rank;
    let e = |dim: usize, i: usize| -> Vec<BigRational> {
        let mut v = vec![q(0); dim];
        v[i] = q(1);
        v
    };
    let diff = |dim: usize, i: usize, j: usize| -> Vec<BigRational> {
        let mut v = vec![q(0); dim];
        v[i] = q(1);
        v[j] = q(-1);
        v
    };
    match label.series {
        Series::A => (0..n).map(|i| diff(n + 1, i, i + 1)).collect(),
        Series::B => {
            // a1 = e1 (short), ai = ei - e(i-1)
            let mut roots = vec![e(n, 0)];
            for i in 1..n {
                roots.push(diff(n, i, i - 1));
            }
            roots
        }
        Series::C => {
            let mut roots: Vec<Vec<BigRational>> = (0..n - 1).map(|i| diff(n, i, i + 1)).collect();
            let mut last = vec![q(0); n];
            last[n - 1] = q(2);
            roots.push(last);
            roots
        }
        Series::D => {
            let mut roots: Vec<Vec<BigRational>> = (0..n - 1).map(|i| diff(n, i, i + 1)).collect();
            let mut last = vec![q(0); n];
            last[n - 2] = q(1);
            last[n - 1] = q(1);
            roots.push(last);
            roots
        }
        Series::E => {
            let mut a1 = vec![qr(-1, 2); 8];
            a1[0] = qr(1, 2);
            a1[7] = qr(1, 2);
            let mut a2 = vec![q(0); 8];
            a2[0] = q(1);
            a2[1] = q(1);
            let mut roots = vec![a1, a2];
            for i in 3..=n {
                roots.push(diff(8, i - 2, i - 3));
            }
            roots
        }
        Series::F => {
            let mut a4 = vec![qr(-1, 2); 4];
            a4[0] = qr(1, 2);
            vec![diff(4, 1, 2), diff(4, 2, 3), e(4, 3), a4]
        }
        Series::G => {
            let a2 = vec![q(-2), q(1), q(1)];
            vec![diff(3, 0, 1), a2]
        }
    }
}

// ---------------------------------------------------------------------------
// Root and RootSystem
// ---------------------------------------------------------------------------

/// A root in simple-root coordinates.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct Root {
    pub coords: Vec<i64>,
}

impl Root {
    pub fn height(&self) -> i64 {
        self.coords.iter().sum()
    }

    pub fn is_positive(&self) -> bool {
        self.coords.iter().all(|&c| c >= 0) && self.coords.iter().any(|&c| c > 0)
    }

    fn neg(&self) -> Root {
        Root { coords: self.coords.iter().map(|c| -c).collect() }
    }
}

/// Coefficient of a basis element of the Lie algebra in a bracket value:
/// Cartan generators are `0..rank`, root vectors follow in root order.
pub type BasisTerm = (usize, BigRational);

/// A simple root system with its Chevalley data.
pub struct RootSystem {
    label: TypeLabel,
    rank: usize,
    roots: Vec<Root>,
    index: BTreeMap<Vec<i64>, usize>,
    n_pos: usize,
    /// pairing[k][i] = <alpha_k, alpha_i^vee>
    pairing: Vec<Vec<i64>>,
    gram: Vec<Vec<BigRational>>,
    /// squared length of each root
    len2: Vec<BigRational>,
    /// s_b(g) as root indices
    reflections: Vec<Vec<usize>>,
    /// index of root_i + root_j when that sum is a root
    sums: Vec<Vec<Option<usize>>>,
    /// index of -root
    negs: Vec<usize>,
    /// structure constants for the rescaled basis, all pairs with root sum
    n_table: BTreeMap<(usize, usize), BigRational>,
    /// coroot of each positive root over the simple coroots
    coroots: Vec<Vec<i64>>,
    /// Killing pairing of the Chevalley pair (X_a, X_-a) per positive root
    k_values: Vec<BigRational>,
}

impl RootSystem {
    /// Construct the full root system and structure constants for a type.
    pub fn build(label: TypeLabel) -> Result<RootSystem> {
        let rank = label.rank;
        let simples = realization(label);
        let dim = simples[0].len();
        let dot = |a: &[BigRational], b: &[BigRational]| -> BigRational {
            a.iter().zip(b.iter()).map(|(x, y)| x * y).sum()
        };
        let gram: Vec<Vec<BigRational>> = (0..rank)
            .map(|i| (0..rank).map(|j| dot(&simples[i], &simples[j])).collect())
            .collect();
        let _ = dim;
        // pairing[k][i] = 2 (a_k, a_i) / (a_i, a_i), always an integer
        let pairing: Vec<Vec<i64>> = (0..rank)
            .map(|k| {
                (0..rank)
                    .map(|i| {
                        let v = q(2) * &gram[k][i] / &gram[i][i];
                        debug_assert!(v.is_integer());
                        v.to_integer().to_i64().unwrap()
                    })
                    .collect()
            })
            .collect();

        // closure of the simple roots under the simple reflections
        let reflect = |coords: &[i64], i: usize| -> Vec<i64> {
            let pair: i64 = coords.iter().enumerate().map(|(k, &c)| c * pairing[k][i]).sum();
            let mut out = coords.to_vec();
            out[i] -= pair;
            out
        };
        let mut set: BTreeSet<Vec<i64>> = BTreeSet::new();
        let mut queue: Vec<Vec<i64>> = Vec::new();
        for i in 0..rank {
            let mut v = vec![0i64; rank];
            v[i] = 1;
            set.insert(v.clone());
            queue.push(v);
        }
        while let Some(c) = queue.pop() {
            for i in 0..rank {
                let r = reflect(&c, i);
                if set.insert(r.clone()) {
                    queue.push(r);
                }
            }
        }

        let mut positives: Vec<Root> = Vec::new();
        for c in &set {
            let root = Root { coords: c.clone() };
            let pos = c.iter().all(|&x| x >= 0);
            let negv = c.iter().all(|&x| x <= 0);
            if !pos && !negv {
                return Err(Error::InvalidAlgebra(alloc::format!(
                    "root {c:?} has mixed signs"
                )));
            }
            if pos {
                positives.push(root);
            }
        }
        positives.sort_by_key(|r| (r.height(), r.coords.clone()));
        let n_pos = positives.len();
        let mut roots = positives;
        for i in 0..n_pos {
            let neg = roots[i].neg();
            roots.push(neg);
        }
        let index: BTreeMap<Vec<i64>, usize> =
            roots.iter().enumerate().map(|(i, r)| (r.coords.clone(), i)).collect();
        let negs: Vec<usize> =
            (0..roots.len()).map(|i| index[&roots[i].neg().coords]).collect();

        // inner products of arbitrary roots via the Gram matrix
        let inner = |a: &[i64], b: &[i64]| -> BigRational {
            let mut acc = BigRational::zero();
            for (i, &ai) in a.iter().enumerate() {
                if ai == 0 {
                    continue;
                }
                for (j, &bj) in b.iter().enumerate() {
                    if bj == 0 {
                        continue;
                    }
                    acc += q(ai) * q(bj) * &gram[i][j];
                }
            }
            acc
        };
        let len2: Vec<BigRational> =
            roots.iter().map(|r| inner(&r.coords, &r.coords)).collect();

        let reflections: Vec<Vec<usize>> = (0..roots.len())
            .map(|b| {
                (0..roots.len())
                    .map(|g| {
                        let pr = q(2) * inner(&roots[g].coords, &roots[b].coords) / &len2[b];
                        debug_assert!(pr.is_integer());
                        let k = pr.to_integer().to_i64().unwrap();
                        let coords: Vec<i64> = roots[g]
                            .coords
                            .iter()
                            .zip(roots[b].coords.iter())
                            .map(|(&gc, &bc)| gc - k * bc)
                            .collect();
                        index[&coords]
                    })
                    .collect()
            })
            .collect();

        let sums: Vec<Vec<Option<usize>>> = (0..roots.len())
            .map(|i| {
                (0..roots.len())
                    .map(|j| {
                        let coords: Vec<i64> = roots[i]
                            .coords
                            .iter()
                            .zip(roots[j].coords.iter())
                            .map(|(a, b)| a + b)
                            .collect();
                        index.get(&coords).copied()
                    })
                    .collect()
            })
            .collect();

        let mut rs = RootSystem {
            label,
            rank,
            roots,
            index,
            n_pos,
            pairing,
            gram,
            len2,
            reflections,
            sums,
            negs,
            n_table: BTreeMap::new(),
            coroots: Vec::new(),
            k_values: Vec::new(),
        };
        rs.build_structure_constants();
        Ok(rs)
    }

    pub fn label(&self) -> TypeLabel {
        self.label
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn roots(&self) -> &[Root] {
        &self.roots
    }

    pub fn num_roots(&self) -> usize {
        self.roots.len()
    }

    pub fn num_positive(&self) -> usize {
        self.n_pos
    }

    pub fn root(&self, i: usize) -> &Root {
        &self.roots[i]
    }

    pub fn neg_index(&self, i: usize) -> usize {
        self.negs[i]
    }

    pub fn sum_index(&self, i: usize, j: usize) -> Option<usize> {
        self.sums[i][j]
    }

    /// Index of the image of root `g` under the reflection in root `b`.
    pub fn reflect_root(&self, b: usize, g: usize) -> usize {
        self.reflections[b][g]
    }

    pub fn is_root(&self, coords: &[i64]) -> bool {
        self.index.contains_key(coords)
    }

    pub fn root_index(&self, coords: &[i64]) -> Option<usize> {
        self.index.get(coords).copied()
    }

    pub fn inner_product(&self, a: usize, b: usize) -> BigRational {
        let mut acc = BigRational::zero();
        for (i, &ai) in self.roots[a].coords.iter().enumerate() {
            if ai == 0 {
                continue;
            }
            for (j, &bj) in self.roots[b].coords.iter().enumerate() {
                if bj == 0 {
                    continue;
                }
                acc += q(ai) * q(bj) * &self.gram[i][j];
            }
        }
        acc
    }

    /// `<root_g, root_b^vee>`, an integer.
    pub fn pair_with_coroot(&self, g: usize, b: usize) -> i64 {
        let v = q(2) * self.inner_product(g, b) / &self.len2[b];
        debug_assert!(v.is_integer());
        v.to_integer().to_i64().unwrap()
    }

    /// `<root_g, alpha_i^vee>` for a simple coroot, an integer.
    pub fn pair_with_simple_coroot(&self, g: usize, i: usize) -> i64 {
        self.roots[g]
            .coords
            .iter()
            .enumerate()
            .map(|(k, &c)| c * self.pairing[k][i])
            .sum()
    }

    pub fn gram_matrix(&self) -> &[Vec<BigRational>] {
        &self.gram
    }

    // -- Chevalley structure constants -------------------------------------

    /// Chevalley constants by the extraspecial pair method: for each
    /// non-simple positive root the minimal special pair gets the positive
    /// sign and string length; every other constant is forced by the
    /// invariance and Jacobi relations.
    fn build_structure_constants(&mut self) {
        let mut pos_n: BTreeMap<(usize, usize), BigRational> = BTreeMap::new();

        // string length p: largest k with b - k*a a root
        let string_down = |rs: &RootSystem, a: usize, b: usize| -> i64 {
            let mut p = 0i64;
            let mut cur = b;
            loop {
                let na = rs.negs[a];
                match rs.sums[cur][na] {
                    Some(nx) => {
                        p += 1;
                        cur = nx;
                    }
                    None => break,
                }
            }
            p
        };

        for gamma in 0..self.n_pos {
            if self.roots[gamma].height() < 2 {
                continue;
            }
            // all special pairs (a < b positive) with a + b = gamma
            let mut pairs: Vec<(usize, usize)> = Vec::new();
            for a in 0..self.n_pos {
                if a >= gamma {
                    break;
                }
                let bc: Vec<i64> = self.roots[gamma]
                    .coords
                    .iter()
                    .zip(self.roots[a].coords.iter())
                    .map(|(g, x)| g - x)
                    .collect();
                if let Some(&b) = self.index.get(&bc) {
                    if b < self.n_pos && a < b {
                        pairs.push((a, b));
                    }
                }
            }
            debug_assert!(!pairs.is_empty());
            let (ea, eb) = pairs[0]; // minimal first component: extraspecial
            let p = string_down(self, ea, eb);
            pos_n.insert((ea, eb), q(p + 1));

            for &(x, y) in pairs.iter().skip(1) {
                // four-root Jacobi relation on (ea, eb, -x, -y)
                let gamma_len = self.len2[gamma].clone();
                let mut total = BigRational::zero();
                if let Some(bx) = self.sums[eb][self.negs[x]] {
                    // N(eb,-x) * N(ea,-y) / (eb - x, eb - x)
                    let t = self.lookup(&pos_n, eb, self.negs[x])
                        * self.lookup(&pos_n, ea, self.negs[y])
                        / &self.len2[bx];
                    total += t;
                }
                if let Some(ax) = self.sums[ea][self.negs[x]] {
                    // N(-x,ea) * N(eb,-y) / (ea - x, ea - x)
                    let t = self.lookup(&pos_n, self.negs[x], ea)
                        * self.lookup(&pos_n, eb, self.negs[y])
                        / &self.len2[ax];
                    total += t;
                }
                let n_esp = pos_n[&(ea, eb)].clone();
                let val = gamma_len * total / n_esp;
                debug_assert!(!val.is_zero());
                pos_n.insert((x, y), val);
            }
        }

        // coroots and Killing pairings per positive root
        let mut coroots = Vec::with_capacity(self.n_pos);
        let mut k_values = Vec::with_capacity(self.n_pos);
        for a in 0..self.n_pos {
            let co: Vec<i64> = (0..self.rank)
                .map(|i| {
                    let v = q(self.roots[a].coords[i]) * &self.gram[i][i] / &self.len2[a];
                    debug_assert!(v.is_integer());
                    v.to_integer().to_i64().unwrap()
                })
                .collect();
            coroots.push(co);
            // K(H_a, H_a) / 2 with K(h,h') = sum over roots of d(h) d(h')
            let mut s = 0i64;
            for d in 0..self.num_roots() {
                let pd = self.pair_with_coroot(d, a);
                s += pd * pd;
            }
            debug_assert!(s % 2 == 0);
            k_values.push(q(s / 2));
        }
        self.coroots = coroots;
        self.k_values = k_values;

        // materialize the full table for the rescaled basis
        // E_a = X_a for positive a, E_a = X_a / k_{-a} for negative a
        let scale = |rs: &RootSystem, i: usize| -> BigRational {
            if i < rs.n_pos {
                BigRational::one()
            } else {
                rs.k_values[rs.negs[i]].clone()
            }
        };
        let mut table = BTreeMap::new();
        for i in 0..self.num_roots() {
            for j in 0..self.num_roots() {
                if let Some(s) = self.sums[i][j] {
                    let raw = self.lookup(&pos_n, i, j);
                    let val = raw * scale(self, s) / (scale(self, i) * scale(self, j));
                    table.insert((i, j), val);
                }
            }
        }
        self.n_table = table;
    }

    /// Chevalley constant `N_{a,b}` for arbitrary root indices with root
    /// sum, reduced to the positive special-pair table by antisymmetry,
    /// negation symmetry, and the invariant-form relation.
    fn lookup(
        &self,
        pos_n: &BTreeMap<(usize, usize), BigRational>,
        a: usize,
        b: usize,
    ) -> BigRational {
        let c = self.sums[a][b].expect("lookup requires a + b to be a root");
        let a_pos = a < self.n_pos;
        let b_pos = b < self.n_pos;
        match (a_pos, b_pos) {
            (true, true) => {
                if a < b {
                    pos_n[&(a, b)].clone()
                } else {
                    -pos_n[&(b, a)].clone()
                }
            }
            (false, false) => -self.lookup(pos_n, self.negs[a], self.negs[b]),
            (true, false) => {
                if c < self.n_pos {
                    // N(a,b) = -(c,c)/(a,a) * N(-b, c), with -b + c = a
                    -(&self.len2[c] / &self.len2[a]) * self.lookup(pos_n, self.negs[b], c)
                } else {
                    // N(a,b) = -(c,c)/(b,b) * N(a, -c), with a + (-c) = -b
                    -(&self.len2[c] / &self.len2[b]) * self.lookup(pos_n, a, self.negs[c])
                }
            }
            (false, true) => -self.lookup(pos_n, b, a),
        }
    }

    /// Structure constant of `[E_a, E_b] = N E_{a+b}` in the rescaled
    /// basis, `None` when `a + b` is not a root.
    pub fn n_constant(&self, a: usize, b: usize) -> Option<&BigRational> {
        self.n_table.get(&(a, b))
    }

    /// Killing pairing `(X_a, X_{-a})` of the unscaled Chevalley vectors
    /// for a positive root index.
    pub fn killing_pair(&self, a: usize) -> &BigRational {
        &self.k_values[a]
    }

    /// Coroot of a positive root over the simple coroots.
    pub fn coroot(&self, a: usize) -> &[i64] {
        &self.coroots[a]
    }

    /// Killing form on the Cartan basis of simple coroots.
    pub fn killing_cartan(&self, i: usize, j: usize) -> BigRational {
        let mut s = 0i64;
        for d in 0..self.num_roots() {
            s += self.pair_with_simple_coroot(d, i) * self.pair_with_simple_coroot(d, j);
        }
        q(s)
    }

    // -- basis-level bracket ------------------------------------------------

    pub fn basis_dim(&self) -> usize {
        self.rank + self.num_roots()
    }

    /// Lie bracket of two basis elements. Basis indices `< rank` are the
    /// simple coroots `H_i`; index `rank + r` is the root vector of root `r`.
    pub fn bracket_basis(&self, x: usize, y: usize) -> Vec<BasisTerm> {
        let r = self.rank;
        match (x < r, y < r) {
            (true, true) => Vec::new(),
            (true, false) => {
                let g = y - r;
                let c = self.pair_with_simple_coroot(g, x);
                if c == 0 {
                    Vec::new()
                } else {
                    vec![(y, q(c))]
                }
            }
            (false, true) => {
                let g = x - r;
                let c = self.pair_with_simple_coroot(g, y);
                if c == 0 {
                    Vec::new()
                } else {
                    vec![(x, q(-c))]
                }
            }
            (false, false) => {
                let a = x - r;
                let b = y - r;
                if self.negs[a] == b {
                    // [E_a, E_{-a}] = H_a / k_a in the rescaled basis
                    let (pos, sign) = if a < self.n_pos { (a, 1i64) } else { (b, -1i64) };
                    let k = &self.k_values[pos];
                    self.coroots[pos]
                        .iter()
                        .enumerate()
                        .filter(|(_, &m)| m != 0)
                        .map(|(i, &m)| (i, q(sign * m) / k))
                        .collect()
                } else if let Some(s) = self.sums[a][b] {
                    vec![(r + s, self.n_table[&(a, b)].clone())]
                } else {
                    Vec::new()
                }
            }
        }
    }
}

impl fmt::Debug for RootSystem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "RootSystem({}, {} roots)", self.label, self.num_roots())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::collections::BTreeMap;
    use num_traits::Signed;

    fn build(s: &str) -> RootSystem {
        RootSystem::build(TypeLabel::parse(s).unwrap()).unwrap()
    }

    #[test]
    fn parse_labels() {
        assert!(TypeLabel::parse("B6").is_ok());
        assert!(TypeLabel::parse("G2").is_ok());
        assert!(TypeLabel::parse("E7").is_ok());
        assert!(TypeLabel::parse("C2").is_err());
        assert!(TypeLabel::parse("E9").is_err());
        assert!(TypeLabel::parse("H4").is_err());
        assert!(TypeLabel::parse("A0").is_err());
    }

    #[test]
    fn a1_roots() {
        let rs = build("A1");
        assert_eq!(rs.num_roots(), 2);
    }

    #[test]
    fn b2_roots_exact() {
        let rs = build("B2");
        assert_eq!(rs.num_roots(), 8);
        let pos: Vec<Vec<i64>> =
            (0..rs.num_positive()).map(|i| rs.root(i).coords.clone()).collect();
        assert!(pos.contains(&vec![1, 0]));
        assert!(pos.contains(&vec![0, 1]));
        assert!(pos.contains(&vec![1, 1]));
        assert!(pos.contains(&vec![2, 1]));
        assert!(rs.is_root(&[2, 1]));
        assert!(!rs.is_root(&[1, 2]));
    }

    #[test]
    fn root_counts_match_classical_formulas() {
        for s in ["A1", "A2", "A3", "B2", "B3", "B6", "C3", "D4", "G2", "F4", "E6", "E7", "E8"] {
            let label = TypeLabel::parse(s).unwrap();
            let rs = RootSystem::build(label).unwrap();
            assert_eq!(rs.num_roots(), label.root_count(), "count mismatch for {s}");
        }
    }

    #[test]
    fn g2_positive_roots() {
        let rs = build("G2");
        let pos: Vec<Vec<i64>> =
            (0..rs.num_positive()).map(|i| rs.root(i).coords.clone()).collect();
        for expect in [
            vec![1, 0],
            vec![0, 1],
            vec![1, 1],
            vec![2, 1],
            vec![3, 1],
            vec![3, 2],
        ] {
            assert!(pos.contains(&expect), "missing {expect:?}");
        }
    }

    #[test]
    fn closure_under_reflections_small_rank() {
        for s in ["A1", "A2", "B2", "A3", "B3", "C3", "G2"] {
            let rs = build(s);
            for b in 0..rs.num_roots() {
                for g in 0..rs.num_roots() {
                    let img = rs.reflect_root(b, g);
                    assert!(img < rs.num_roots());
                }
                assert_eq!(rs.reflect_root(b, rs.reflect_root(b, 0)), 0);
            }
            for i in 0..rs.num_roots() {
                assert!(rs.is_root(&rs.root(rs.neg_index(i)).coords));
            }
        }
    }

    #[test]
    fn structure_constants_basics() {
        let rs = build("A2");
        let a1 = rs.root_index(&[1, 0]).unwrap();
        let a2 = rs.root_index(&[0, 1]).unwrap();
        let n = rs.n_constant(a1, a2).unwrap();
        assert_eq!(n.abs(), q(1));
        // zero iff not a root: a1 + a1 is not a root
        assert!(rs.n_constant(a1, a1).is_none());

        let g2 = build("G2");
        let a1 = g2.root_index(&[1, 0]).unwrap();
        let a12 = g2.root_index(&[1, 1]).unwrap();
        assert_eq!(g2.n_constant(a1, a12).unwrap().abs(), q(2));
    }

    #[test]
    fn chevalley_magnitude_is_string_length() {
        // |N(a,b)| = p + 1 for positive pairs in the unscaled basis; both
        // roots positive means the rescaled table agrees with the raw one.
        for s in ["A2", "B2", "G2", "A3"] {
            let rs = build(s);
            for a in 0..rs.num_positive() {
                for b in 0..rs.num_positive() {
                    if a == b {
                        continue;
                    }
                    if let Some(c) = rs.sum_index(a, b) {
                        if c >= rs.num_positive() {
                            continue;
                        }
                        let mut p = 0i64;
                        let mut cur = b;
                        while let Some(nx) = rs.sum_index(cur, rs.neg_index(a)) {
                            p += 1;
                            cur = nx;
                        }
                        let n = rs.n_constant(a, b).unwrap();
                        assert_eq!(n.abs(), q(p + 1), "{s}: |N| != p+1 at ({a},{b})");
                    }
                }
            }
        }
    }

    #[test]
    fn antisymmetry_of_constants() {
        for s in ["A2", "B2", "G2"] {
            let rs = build(s);
            for i in 0..rs.num_roots() {
                for j in 0..rs.num_roots() {
                    match (rs.n_constant(i, j), rs.n_constant(j, i)) {
                        (Some(x), Some(y)) => assert_eq!(x, &-y.clone()),
                        (None, None) => {}
                        _ => panic!("asymmetric table"),
                    }
                }
            }
        }
    }

    /// dense bracket of linear combinations, for the Jacobi check
    fn bracket_dense(
        rs: &RootSystem,
        a: &BTreeMap<usize, BigRational>,
        b: &BTreeMap<usize, BigRational>,
    ) -> BTreeMap<usize, BigRational> {
        let mut out: BTreeMap<usize, BigRational> = BTreeMap::new();
        for (&i, ci) in a {
            for (&j, cj) in b {
                for (k, v) in rs.bracket_basis(i, j) {
                    let t = ci * cj * v;
                    let slot = out.entry(k).or_insert_with(BigRational::zero);
                    *slot += t;
                    if slot.is_zero() {
                        out.remove(&k);
                    }
                }
            }
        }
        out
    }

    fn single(i: usize) -> BTreeMap<usize, BigRational> {
        let mut m = BTreeMap::new();
        m.insert(i, BigRational::one());
        m
    }

    fn jacobi_ok(rs: &RootSystem, x: usize, y: usize, z: usize) -> bool {
        let xe = single(x);
        let ye = single(y);
        let ze = single(z);
        let mut total: BTreeMap<usize, BigRational> = BTreeMap::new();
        for (a, b, c) in [(&xe, &ye, &ze), (&ye, &ze, &xe), (&ze, &xe, &ye)] {
            let inner = bracket_dense(rs, a, b);
            let outer = bracket_dense(rs, &inner, c);
            for (k, v) in outer {
                let slot = total.entry(k).or_insert_with(BigRational::zero);
                *slot += v;
                if slot.is_zero() {
                    total.remove(&k);
                }
            }
        }
        total.is_empty()
    }

    #[test]
    fn jacobi_exhaustive_small_rank() {
        for s in ["A1", "A2", "B2", "G2"] {
            let rs = build(s);
            let dim = rs.basis_dim();
            for x in 0..dim {
                for y in x..dim {
                    for z in y..dim {
                        assert!(jacobi_ok(&rs, x, y, z), "{s}: jacobi fails at {x},{y},{z}");
                    }
                }
            }
        }
    }

    #[test]
    fn jacobi_sampled_rank3() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand::rngs::StdRng::seed_from_u64(5);
        for s in ["A3", "B3", "C3"] {
            let rs = build(s);
            let dim = rs.basis_dim();
            for _ in 0..2000 {
                let x = rng.gen_range(0..dim);
                let y = rng.gen_range(0..dim);
                let z = rng.gen_range(0..dim);
                assert!(jacobi_ok(&rs, x, y, z), "{s}: jacobi fails at {x},{y},{z}");
            }
        }
    }

    #[test]
    fn killing_normalization() {
        // [E_a, E_{-a}] must be the Killing-dual Cartan element of a:
        // K(t_a, H_i) = <a, a_i^vee> for every simple coroot H_i.
        for s in ["A1", "A2", "B2", "G2", "B3"] {
            let rs = build(s);
            for a in 0..rs.num_positive() {
                let terms = rs.bracket_basis(rs.rank() + a, rs.rank() + rs.neg_index(a));
                for i in 0..rs.rank() {
                    let mut lhs = BigRational::zero();
                    for (h, c) in &terms {
                        assert!(*h < rs.rank());
                        lhs += c * rs.killing_cartan(*h, i);
                    }
                    assert_eq!(lhs, q(rs.pair_with_simple_coroot(a, i)), "{s}: t_a wrong");
                }
            }
        }
    }

    #[test]
    fn killing_pair_matches_adjoint_trace() {
        // independent check of the closed-form Killing pairing against the
        // actual trace of ad(X_a) ad(X_{-a}) in the unscaled basis
        for s in ["A1", "A2", "B2"] {
            let rs = build(s);
            for a in 0..rs.num_positive() {
                let an = rs.neg_index(a);
                let k = rs.killing_pair(a).clone();
                // trace over the rescaled basis of ad(E_a) ad(E_{-a}) equals
                // K(E_a, E_{-a}) = 1 after rescaling; so K(X_a, X_{-a}) = k.
                let mut trace = BigRational::zero();
                let dim = rs.basis_dim();
                for u in 0..dim {
                    // [E_{-a}, u] then [E_a, .], coefficient at u
                    for (w, c1) in rs.bracket_basis(rs.rank() + an, u) {
                        for (v, c2) in rs.bracket_basis(rs.rank() + a, w) {
                            if v == u {
                                trace += &c1 * &c2;
                            }
                        }
                    }
                }
                assert_eq!(trace, BigRational::one(), "{s}: (E_a, E_-a) != 1");
                assert!(k > BigRational::zero());
            }
        }
    }

    #[test]
    fn exceptional_smoke() {
        let f4 = build("F4");
        assert_eq!(f4.num_roots(), 48);
        use rand::{Rng, SeedableRng};
        let mut rng = rand::rngs::StdRng::seed_from_u64(17);
        let dim = f4.basis_dim();
        for _ in 0..200 {
            let x = rng.gen_range(0..dim);
            let y = rng.gen_range(0..dim);
            let z = rng.gen_range(0..dim);
            assert!(jacobi_ok(&f4, x, y, z));
        }
    }
}
