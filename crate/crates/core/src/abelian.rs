//! Integer-lattice linear algebra: Smith normal form, finitely generated
//! abelian groups presented as lattice quotients, their torsion and
//! characters, and subgroups with free quotient.

use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::scalars::CycQ;

// ---------------------------------------------------------------------------
// IntMatrix
// ---------------------------------------------------------------------------

/// Dense integer matrix with arbitrary-precision entries.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<BigInt>,
}

impl IntMatrix {
    pub fn zero(rows: usize, cols: usize) -> Self {
        IntMatrix { rows, cols, data: vec![BigInt::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = IntMatrix::zero(n, n);
        for i in 0..n {
            m.set(i, i, BigInt::one());
        }
        m
    }

    pub fn from_rows_i64(rows: &[Vec<i64>], cols: usize) -> Self {
        let mut m = IntMatrix::zero(rows.len(), cols);
        for (i, r) in rows.iter().enumerate() {
            assert_eq!(r.len(), cols);
            for (j, v) in r.iter().enumerate() {
                m.set(i, j, BigInt::from(*v));
            }
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<BigInt>>, cols: usize) -> Self {
        let mut m = IntMatrix::zero(rows.len(), cols);
        for (i, r) in rows.into_iter().enumerate() {
            assert_eq!(r.len(), cols);
            for (j, v) in r.into_iter().enumerate() {
                m.set(i, j, v);
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &BigInt {
        &self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: BigInt) {
        self.data[r * self.cols + c] = v;
    }

    pub fn row(&self, r: usize) -> &[BigInt] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn mul(&self, other: &IntMatrix) -> IntMatrix {
        assert_eq!(self.cols, other.rows);
        let mut out = IntMatrix::zero(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let t = a * other.get(k, j);
                    out.data[i * other.cols + j] += t;
                }
            }
        }
        out
    }

    /// `x * self` for a row vector `x`.
    pub fn mul_row_vec(&self, x: &[BigInt]) -> Vec<BigInt> {
        assert_eq!(x.len(), self.rows);
        let mut out = vec![BigInt::zero(); self.cols];
        for (i, xi) in x.iter().enumerate() {
            if xi.is_zero() {
                continue;
            }
            for j in 0..self.cols {
                out[j] += xi * self.get(i, j);
            }
        }
        out
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for c in 0..self.cols {
            self.data.swap(a * self.cols + c, b * self.cols + c);
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for r in 0..self.rows {
            self.data.swap(r * self.cols + a, r * self.cols + b);
        }
    }

    /// row a += k * row b
    fn row_add(&mut self, a: usize, b: usize, k: &BigInt) {
        if k.is_zero() {
            return;
        }
        for c in 0..self.cols {
            let t = k * self.get(b, c);
            self.data[a * self.cols + c] += t;
        }
    }

    /// col a += k * col b
    fn col_add(&mut self, a: usize, b: usize, k: &BigInt) {
        if k.is_zero() {
            return;
        }
        for r in 0..self.rows {
            let t = k * self.get(r, b);
            self.data[r * self.cols + a] += t;
        }
    }

    fn negate_row(&mut self, a: usize) {
        for c in 0..self.cols {
            let v = -self.get(a, c).clone();
            self.set(a, c, v);
        }
    }

    fn negate_col(&mut self, a: usize) {
        for r in 0..self.rows {
            let v = -self.get(r, a).clone();
            self.set(r, a, v);
        }
    }

    /// Determinant by fraction-free (Bareiss) elimination. Square only.
    pub fn det(&self) -> BigInt {
        assert_eq!(self.rows, self.cols);
        let n = self.rows;
        if n == 0 {
            return BigInt::one();
        }
        let mut m = self.clone();
        let mut sign = BigInt::one();
        let mut prev = BigInt::one();
        for k in 0..n - 1 {
            if m.get(k, k).is_zero() {
                let Some(p) = (k + 1..n).find(|&r| !m.get(r, k).is_zero()) else {
                    return BigInt::zero();
                };
                m.swap_rows(k, p);
                sign = -sign;
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let v = (m.get(k, k) * m.get(i, j) - m.get(i, k) * m.get(k, j)) / &prev;
                    m.set(i, j, v);
                }
                m.set(i, k, BigInt::zero());
            }
            prev = m.get(k, k).clone();
        }
        sign * m.get(n - 1, n - 1).clone()
    }
}

// ---------------------------------------------------------------------------
// Smith normal form
// ---------------------------------------------------------------------------

/// `u * a * v = d` with `u`, `v` unimodular and `d` diagonal satisfying the
/// divisibility chain. The inverses of the transforms are tracked as well.
#[derive(Clone, Debug)]
pub struct SmithNormalForm {
    pub d: IntMatrix,
    pub u: IntMatrix,
    pub v: IntMatrix,
    pub u_inv: IntMatrix,
    pub v_inv: IntMatrix,
    pub rank: usize,
}

impl SmithNormalForm {
    pub fn invariant_factors(&self) -> Vec<BigInt> {
        (0..self.rank).map(|i| self.d.get(i, i).clone()).collect()
    }
}

/// Smallest-absolute-value pivot in the trailing submatrix, ties broken by
/// lowest row then column index.
fn find_pivot(a: &IntMatrix, t: usize) -> Option<(usize, usize)> {
    let mut best: Option<(BigInt, usize, usize)> = None;
    for i in t..a.rows() {
        for j in t..a.cols() {
            let v = a.get(i, j);
            if v.is_zero() {
                continue;
            }
            let abs = v.abs();
            match &best {
                Some((b, _, _)) if *b <= abs => {}
                _ => best = Some((abs, i, j)),
            }
        }
    }
    best.map(|(_, i, j)| (i, j))
}

pub fn smith_normal_form(a: &IntMatrix) -> SmithNormalForm {
    let rows = a.rows();
    let cols = a.cols();
    let mut d = a.clone();
    let mut u = IntMatrix::identity(rows);
    let mut u_inv = IntMatrix::identity(rows);
    let mut v = IntMatrix::identity(cols);
    let mut v_inv = IntMatrix::identity(cols);

    // elementary operation wrappers keeping U, V and their inverses in sync
    macro_rules! row_op {
        ($i:expr, $j:expr, $k:expr) => {{
            let k = $k;
            d.row_add($i, $j, &k);
            u.row_add($i, $j, &k);
            u_inv.col_add($j, $i, &(-&k));
        }};
    }
    macro_rules! col_op {
        ($i:expr, $j:expr, $k:expr) => {{
            let k = $k;
            d.col_add($i, $j, &k);
            v.col_add($i, $j, &k);
            v_inv.row_add($j, $i, &(-&k));
        }};
    }

    let mut t = 0;
    while t < rows.min(cols) {
        let Some((pi, pj)) = find_pivot(&d, t) else {
            break;
        };
        if pi != t {
            d.swap_rows(t, pi);
            u.swap_rows(t, pi);
            u_inv.swap_cols(t, pi);
        }
        if pj != t {
            d.swap_cols(t, pj);
            v.swap_cols(t, pj);
            v_inv.swap_rows(t, pj);
        }
        let mut clean = true;
        for i in t + 1..rows {
            if !d.get(i, t).is_zero() {
                let q = d.get(i, t).div_floor(d.get(t, t));
                row_op!(i, t, -q);
                if !d.get(i, t).is_zero() {
                    clean = false;
                }
            }
        }
        for j in t + 1..cols {
            if !d.get(t, j).is_zero() {
                let q = d.get(t, j).div_floor(d.get(t, t));
                col_op!(j, t, -q);
                if !d.get(t, j).is_zero() {
                    clean = false;
                }
            }
        }
        if !clean {
            continue; // smaller remainders exist; re-pivot
        }
        // divisibility over the trailing submatrix
        let pivot = d.get(t, t).clone();
        let mut fixed = true;
        'scan: for i in t + 1..rows {
            for j in t + 1..cols {
                if !d.get(i, j).mod_floor(&pivot).is_zero() {
                    row_op!(t, i, BigInt::one());
                    fixed = false;
                    break 'scan;
                }
            }
        }
        if !fixed {
            continue;
        }
        if d.get(t, t).is_negative() {
            d.negate_row(t);
            u.negate_row(t);
            u_inv.negate_col(t);
        }
        t += 1;
    }
    let rank = (0..rows.min(cols)).take_while(|&i| !d.get(i, i).is_zero()).count();
    SmithNormalForm { d, u, v, u_inv, v_inv, rank }
}

/// Solve `y * a = b` over the integers, using a precomputed SNF of `a`.
/// The solution component in the free directions is chosen zero. Returns
/// `None` when no integer solution exists.
pub fn solve_left(snf: &SmithNormalForm, b: &[BigInt]) -> Option<Vec<BigInt>> {
    let cols = snf.v.rows();
    let rows = snf.u.cols();
    assert_eq!(b.len(), cols);
    let c = snf.v.mul_row_vec(b);
    let mut w = vec![BigInt::zero(); rows];
    for i in 0..cols {
        if i < snf.rank {
            let (q, r) = c[i].div_rem(snf.d.get(i, i));
            if !r.is_zero() {
                return None;
            }
            w[i] = q;
        } else if !c[i].is_zero() {
            return None;
        }
    }
    Some(snf.u.mul_row_vec(&w))
}

// ---------------------------------------------------------------------------
// AbelianGroup
// ---------------------------------------------------------------------------

/// A finitely generated abelian group presented as the quotient of an
/// ambient lattice `Z^n` by a sublattice, in invariant-factor form.
///
/// Canonical coordinates are the torsion residues (one per invariant
/// factor `d_i >= 2`) followed by the free coordinates.
#[derive(Clone, Debug)]
pub struct AbelianGroup {
    ambient_rank: usize,
    factors: Vec<BigInt>,
    free_rank: usize,
    v: IntMatrix,
    v_inv: IntMatrix,
    torsion_cols: Vec<usize>,
    free_cols: Vec<usize>,
}

/// An element in canonical coordinates: residues modulo the invariant
/// factors, then a free integer vector.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct GroupElement {
    pub torsion: Vec<BigInt>,
    pub free: Vec<BigInt>,
}

impl GroupElement {
    pub fn is_zero(&self) -> bool {
        self.torsion.iter().all(|t| t.is_zero()) && self.free.iter().all(|f| f.is_zero())
    }

    pub fn is_torsion(&self) -> bool {
        self.free.iter().all(|f| f.is_zero())
    }
}

/// Quotient of `Z^ambient_rank` by the row span of `sublattice_gens`.
pub fn quotient(ambient_rank: usize, sublattice_gens: &IntMatrix) -> AbelianGroup {
    assert_eq!(sublattice_gens.cols(), ambient_rank);
    let snf = smith_normal_form(sublattice_gens);
    let mut torsion_cols = Vec::new();
    for i in 0..snf.rank {
        if snf.d.get(i, i).abs() > BigInt::one() {
            torsion_cols.push(i);
        }
    }
    let free_cols: Vec<usize> = (snf.rank..ambient_rank).collect();
    AbelianGroup {
        ambient_rank,
        factors: torsion_cols.iter().map(|&i| snf.d.get(i, i).clone()).collect(),
        free_rank: ambient_rank - snf.rank,
        v: snf.v,
        v_inv: snf.v_inv,
        torsion_cols,
        free_cols,
    }
}

impl AbelianGroup {
    /// Free group `Z^n` (quotient by the zero lattice).
    pub fn free(n: usize) -> AbelianGroup {
        quotient(n, &IntMatrix::zero(0, n))
    }

    pub fn ambient_rank(&self) -> usize {
        self.ambient_rank
    }

    pub fn invariant_factors(&self) -> &[BigInt] {
        &self.factors
    }

    pub fn free_rank(&self) -> usize {
        self.free_rank
    }

    pub fn is_trivial(&self) -> bool {
        self.factors.is_empty() && self.free_rank == 0
    }

    pub fn is_finite(&self) -> bool {
        self.free_rank == 0
    }

    pub fn order(&self) -> Option<BigInt> {
        if self.free_rank > 0 {
            return None;
        }
        Some(self.factors.iter().fold(BigInt::one(), |a, d| a * d))
    }

    /// Number of canonical coordinates (torsion + free).
    pub fn coord_len(&self) -> usize {
        self.factors.len() + self.free_rank
    }

    pub fn project(&self, x: &[BigInt]) -> GroupElement {
        assert_eq!(x.len(), self.ambient_rank);
        let y = self.v.mul_row_vec(x);
        let torsion = self
            .torsion_cols
            .iter()
            .zip(self.factors.iter())
            .map(|(&c, d)| y[c].mod_floor(d))
            .collect();
        let free = self.free_cols.iter().map(|&c| y[c].clone()).collect();
        GroupElement { torsion, free }
    }

    pub fn project_i64(&self, x: &[i64]) -> GroupElement {
        let v: Vec<BigInt> = x.iter().map(|&a| BigInt::from(a)).collect();
        self.project(&v)
    }

    /// A preimage of an element in the ambient lattice.
    pub fn lift(&self, e: &GroupElement) -> Vec<BigInt> {
        let mut out = vec![BigInt::zero(); self.ambient_rank];
        for (&c, t) in self.torsion_cols.iter().zip(e.torsion.iter()) {
            for j in 0..self.ambient_rank {
                out[j] += t * self.v_inv.get(c, j);
            }
        }
        for (&c, f) in self.free_cols.iter().zip(e.free.iter()) {
            for j in 0..self.ambient_rank {
                out[j] += f * self.v_inv.get(c, j);
            }
        }
        out
    }

    pub fn zero_element(&self) -> GroupElement {
        GroupElement {
            torsion: vec![BigInt::zero(); self.factors.len()],
            free: vec![BigInt::zero(); self.free_rank],
        }
    }

    pub fn add(&self, a: &GroupElement, b: &GroupElement) -> GroupElement {
        GroupElement {
            torsion: a
                .torsion
                .iter()
                .zip(b.torsion.iter())
                .zip(self.factors.iter())
                .map(|((x, y), d)| (x + y).mod_floor(d))
                .collect(),
            free: a.free.iter().zip(b.free.iter()).map(|(x, y)| x + y).collect(),
        }
    }

    pub fn neg(&self, a: &GroupElement) -> GroupElement {
        GroupElement {
            torsion: a
                .torsion
                .iter()
                .zip(self.factors.iter())
                .map(|(x, d)| (-x).mod_floor(d))
                .collect(),
            free: a.free.iter().map(|x| -x).collect(),
        }
    }

    /// Canonical coordinates as one integer vector (torsion residues first).
    pub fn coords(&self, a: &GroupElement) -> Vec<BigInt> {
        a.torsion.iter().chain(a.free.iter()).cloned().collect()
    }

    pub fn element_from_coords(&self, coords: &[BigInt]) -> GroupElement {
        assert_eq!(coords.len(), self.coord_len());
        let (t, f) = coords.split_at(self.factors.len());
        GroupElement {
            torsion: t.iter().zip(self.factors.iter()).map(|(x, d)| x.mod_floor(d)).collect(),
            free: f.to_vec(),
        }
    }

    /// The torsion part, as a group in its own right (ambient = canonical
    /// torsion coordinates).
    pub fn torsion_subgroup(&self) -> AbelianGroup {
        let t = self.factors.len();
        let mut rel = IntMatrix::zero(t, t);
        for (i, d) in self.factors.iter().enumerate() {
            rel.set(i, i, d.clone());
        }
        quotient(t, &rel)
    }

    /// Torsion cyclicity; with `torsion_only = false` the whole group must
    /// be cyclic.
    pub fn is_cyclic(&self, torsion_only: bool) -> bool {
        if torsion_only {
            self.factors.len() <= 1
        } else {
            (self.free_rank == 0 && self.factors.len() <= 1)
                || (self.free_rank == 1 && self.factors.is_empty())
        }
    }

    /// All elements of the torsion part (free coordinates zero).
    pub fn torsion_elements(&self) -> Vec<GroupElement> {
        let mut out = vec![self.zero_element()];
        for (i, d) in self.factors.iter().enumerate() {
            let dn = d.to_usize().expect("torsion factor too large to enumerate");
            let mut next = Vec::with_capacity(out.len() * dn);
            for e in out {
                for r in 0..dn {
                    let mut e2 = e.clone();
                    e2.torsion[i] = BigInt::from(r);
                    next.push(e2);
                }
            }
            out = next;
        }
        out
    }

    /// Relation rows `d_i * e_i` in canonical coordinates.
    fn relation_rows(&self) -> IntMatrix {
        let n = self.coord_len();
        let t = self.factors.len();
        let mut rel = IntMatrix::zero(t, n);
        for (i, d) in self.factors.iter().enumerate() {
            rel.set(i, i, d.clone());
        }
        rel
    }

    /// Canonical generators: one per torsion factor, one per free rank.
    pub fn canonical_generators(&self) -> Vec<GroupElement> {
        let n = self.coord_len();
        (0..n)
            .map(|i| {
                let mut coords = vec![BigInt::zero(); n];
                coords[i] = BigInt::one();
                self.element_from_coords(&coords)
            })
            .collect()
    }

    pub fn torsion_generators(&self) -> Vec<GroupElement> {
        self.canonical_generators().into_iter().take(self.factors.len()).collect()
    }
}

// ---------------------------------------------------------------------------
// Characters
// ---------------------------------------------------------------------------

/// A character of a finite abelian group, given by root-of-unity exponents
/// on the canonical torsion generators.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Character {
    orders: Vec<BigInt>,
    exponents: Vec<BigInt>,
}

impl Character {
    pub fn exponents(&self) -> &[BigInt] {
        &self.exponents
    }

    pub fn eval(&self, e: &GroupElement) -> CycQ {
        let mut acc = CycQ::one();
        for ((d, k), t) in self.orders.iter().zip(self.exponents.iter()).zip(e.torsion.iter()) {
            let du = d.to_u32().expect("torsion order too large");
            let exp = (k * t).mod_floor(d).to_i64().unwrap();
            let z = CycQ::root_of_unity(du).expect("order >= 1");
            acc = &acc * &z.pow(exp).expect("root of unity power");
        }
        acc
    }

    /// Value on a canonical torsion generator.
    pub fn generator_value(&self, i: usize) -> CycQ {
        let du = self.orders[i].to_u32().unwrap();
        let z = CycQ::root_of_unity(du).unwrap();
        z.pow(self.exponents[i].to_i64().unwrap()).unwrap()
    }
}

/// All characters of the torsion part of `g`; `g` must be finite.
pub fn characters_of_torsion(g: &AbelianGroup) -> Result<Vec<Character>> {
    if !g.is_finite() {
        return Err(Error::GroupInfinite);
    }
    let orders: Vec<BigInt> = g.invariant_factors().to_vec();
    let mut out = vec![Character { orders: orders.clone(), exponents: Vec::new() }];
    for d in &orders {
        let dn = d.to_usize().expect("torsion factor too large");
        let mut next = Vec::with_capacity(out.len() * dn);
        for ch in out {
            for k in 0..dn {
                let mut exps = ch.exponents.clone();
                exps.push(BigInt::from(k));
                next.push(Character { orders: orders.clone(), exponents: exps });
            }
        }
        out = next;
    }
    Ok(out)
}

// ---------------------------------------------------------------------------
// Subgroups
// ---------------------------------------------------------------------------

/// A subgroup of an [`AbelianGroup`] given by generators, with membership
/// solving and the presentation of the quotient by the subgroup.
#[derive(Clone, Debug)]
pub struct Subgroup {
    gens: Vec<GroupElement>,
    stacked: IntMatrix,
    snf: SmithNormalForm,
    quotient: AbelianGroup,
}

impl Subgroup {
    pub fn new(group: &AbelianGroup, gens: Vec<GroupElement>) -> Subgroup {
        let n = group.coord_len();
        let rel = group.relation_rows();
        let mut rows: Vec<Vec<BigInt>> = gens.iter().map(|g| group.coords(g)).collect();
        for i in 0..rel.rows() {
            rows.push(rel.row(i).to_vec());
        }
        let stacked = IntMatrix::from_rows(rows, n);
        let snf = smith_normal_form(&stacked);
        let q = quotient(n, &stacked);
        Subgroup { gens, stacked, snf, quotient: q }
    }

    pub fn generators(&self) -> &[GroupElement] {
        &self.gens
    }

    /// Integer coefficients on the generators expressing `x`, when `x` lies
    /// in the subgroup.
    pub fn contains(&self, group: &AbelianGroup, x: &GroupElement) -> Option<Vec<BigInt>> {
        let coords = group.coords(x);
        let y = solve_left(&self.snf, &coords)?;
        Some(y[..self.gens.len()].to_vec())
    }

    /// The quotient of the ambient group by this subgroup.
    pub fn quotient_group(&self) -> &AbelianGroup {
        &self.quotient
    }

    /// True when the quotient by the subgroup is free, i.e. the subgroup
    /// contains the torsion and its free part is saturated.
    pub fn has_free_quotient(&self) -> bool {
        self.quotient.invariant_factors().is_empty()
    }

    /// True when the subgroup meets the torsion only in zero.
    pub fn is_torsion_free(&self, group: &AbelianGroup) -> bool {
        group
            .torsion_elements()
            .iter()
            .all(|t| t.is_zero() || self.contains(group, t).is_none())
    }

    /// Projection of an element to the quotient group.
    pub fn project_to_quotient(&self, group: &AbelianGroup, x: &GroupElement) -> GroupElement {
        self.quotient.project(&group.coords(x))
    }

    /// Basis of the left kernel of the stacked generator/relation matrix;
    /// used for homomorphism consistency certificates.
    pub fn relation_kernel(&self) -> Vec<Vec<BigInt>> {
        let rows = self.stacked.rows();
        (self.snf.rank..rows).map(|i| self.snf.u.row(i).to_vec()).collect()
    }
}

/// The smallest subgroup containing the generators and the torsion such
/// that the quotient is free, together with preimages of a basis of the
/// free quotient.
pub fn saturate(group: &AbelianGroup, gens: &[GroupElement]) -> (Subgroup, Vec<GroupElement>) {
    let k = group.free_rank();
    let t = group.invariant_factors().len();
    let free_rows: Vec<Vec<BigInt>> = gens.iter().map(|g| g.free.clone()).collect();
    let m = IntMatrix::from_rows(free_rows, k);
    let snf = smith_normal_form(&m);
    // saturation of the free-part lattice: first `rank` rows of V^{-1}
    let mut sat_gens: Vec<GroupElement> = group.torsion_generators();
    for i in 0..snf.rank {
        sat_gens.push(GroupElement {
            torsion: vec![BigInt::zero(); t],
            free: snf.v_inv.row(i).to_vec(),
        });
    }
    // preimages of a basis of the free quotient: remaining rows of V^{-1}
    let quotient_basis: Vec<GroupElement> = (snf.rank..k)
        .map(|i| GroupElement {
            torsion: vec![BigInt::zero(); t],
            free: snf.v_inv.row(i).to_vec(),
        })
        .collect();
    (Subgroup::new(group, sat_gens), quotient_basis)
}

// ---------------------------------------------------------------------------
// Homomorphism data
// ---------------------------------------------------------------------------

/// Values of a homomorphism on subgroup generators: multiplicative into the
/// nonzero scalars (a chi), or additive into the scalars (a lambda).
#[derive(Clone, Debug)]
pub struct HomomorphismData {
    pub values: Vec<CycQ>,
    pub multiplicative: bool,
}

impl HomomorphismData {
    pub fn chi(values: Vec<CycQ>) -> Self {
        HomomorphismData { values, multiplicative: true }
    }

    pub fn lambda(values: Vec<CycQ>) -> Self {
        HomomorphismData { values, multiplicative: false }
    }

    /// Check that the values respect every relation among the generators.
    pub fn validate(&self, sub: &Subgroup) -> Result<()> {
        if self.values.len() != sub.gens.len() {
            return Err(Error::InconsistentHomomorphism);
        }
        if self.multiplicative && self.values.iter().any(|v| v.is_zero()) {
            return Err(Error::InconsistentHomomorphism);
        }
        for rel in sub.relation_kernel() {
            let coeffs = &rel[..sub.gens.len()];
            if self.multiplicative {
                let mut acc = CycQ::one();
                for (c, v) in coeffs.iter().zip(self.values.iter()) {
                    let e = c.to_i64().ok_or(Error::InconsistentHomomorphism)?;
                    acc = &acc * &v.pow(e).map_err(|_| Error::InconsistentHomomorphism)?;
                }
                if !acc.is_one() {
                    return Err(Error::InconsistentHomomorphism);
                }
            } else {
                let mut acc = CycQ::zero();
                for (c, v) in coeffs.iter().zip(self.values.iter()) {
                    let r = BigRational::from_integer(c.clone());
                    acc = &acc + &v.scale(&r);
                }
                if !acc.is_zero() {
                    return Err(Error::InconsistentHomomorphism);
                }
            }
        }
        Ok(())
    }

    /// Evaluate on an element of the subgroup.
    pub fn eval(&self, group: &AbelianGroup, sub: &Subgroup, x: &GroupElement) -> Result<CycQ> {
        let coeffs = sub.contains(group, x).ok_or(Error::NotInSubgroup)?;
        if self.multiplicative {
            let mut acc = CycQ::one();
            for (c, v) in coeffs.iter().zip(self.values.iter()) {
                let e = c.to_i64().ok_or(Error::InconsistentHomomorphism)?;
                acc = &acc * &v.pow(e)?;
            }
            Ok(acc)
        } else {
            let mut acc = CycQ::zero();
            for (c, v) in coeffs.iter().zip(self.values.iter()) {
                acc = &acc + &v.scale(&BigRational::from_integer(c.clone()));
            }
            Ok(acc)
        }
    }
}
