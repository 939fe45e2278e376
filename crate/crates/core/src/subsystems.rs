//! Closed symmetric root subsystems, the Levi and Dynkin construction
//! steps, chain application and enumeration, the lattice quotient attached
//! to a subsystem, and structural checks on its torsion.
//!
//! A chain step acts on the simple system of the current subsystem. The
//! canonical simple system is the one inherited from the ambient
//! positivity, with its elements sorted by height then lexicographically;
//! a `Twist` step re-chooses the simple system by reflecting it in one of
//! its own members, which is what makes every subsystem reachable.

use alloc::collections::{BTreeMap, BTreeSet, BinaryHeap};
use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;
use core::cmp::Reverse;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};

use crate::abelian::{self, AbelianGroup, GroupElement, IntMatrix};
use crate::error::{Error, Result};
use crate::rootsys::RootSystem;

/// One step of a construction chain.
///
/// Indices refer to the current (possibly twisted) simple system of the
/// subsystem the step is applied to.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum Step {
    /// Keep the roots lying in the span of the selected base elements.
    Levi(Vec<usize>),
    /// Keep the roots whose coefficient on the selected base element is
    /// divisible by `n`.
    Dynkin { index: usize, n: u32 },
    /// Replace the working simple system by its image under reflections in
    /// its own elements, applied in sequence.
    Twist(Vec<usize>),
}

/// A closed symmetric subsystem of the ambient root system, with the chain
/// that produced it and its canonical base.
#[derive(Clone, Debug)]
pub struct Subsystem {
    rs: Arc<RootSystem>,
    roots: BTreeSet<usize>,
    chain: Vec<Step>,
    base: Vec<usize>,
}

/// The quotient of the root lattice by the sublattice spanned by the
/// subsystem, with the image of every ambient root.
#[derive(Clone, Debug)]
pub struct GammaTable {
    pub group: AbelianGroup,
    /// image of each root, indexed like the ambient root list
    pub images: Vec<GroupElement>,
}

impl GammaTable {
    /// Roots of the complement whose image is zero (expected empty; the
    /// classification formulas implicitly require nonzero images).
    pub fn zero_image_complement_roots(&self, sub: &Subsystem) -> Vec<usize> {
        (0..sub.rs.num_roots())
            .filter(|i| !sub.roots.contains(i) && self.images[*i].is_zero())
            .collect()
    }
}

fn check_closed_symmetric(rs: &RootSystem, roots: &BTreeSet<usize>) -> Result<()> {
    for &i in roots {
        if !roots.contains(&rs.neg_index(i)) {
            return Err(Error::NotSymmetric(rs.root(i).coords.clone()));
        }
        for &j in roots {
            if let Some(s) = rs.sum_index(i, j) {
                if !roots.contains(&s) {
                    return Err(Error::NotClosed(rs.root(s).coords.clone()));
                }
            }
        }
    }
    Ok(())
}

/// Indecomposable positive elements of a closed symmetric subset, sorted
/// by height then lexicographically, with the decomposition check that
/// every positive element is a nonnegative integer combination of them.
pub fn base_of_subsystem(rs: &RootSystem, roots: &BTreeSet<usize>) -> Result<Vec<usize>> {
    let positives: Vec<usize> = roots.iter().copied().filter(|&i| i < rs.num_positive()).collect();
    let mut base = Vec::new();
    'outer: for &c in &positives {
        for &a in &positives {
            for &b in &positives {
                if rs.sum_index(a, b) == Some(c) {
                    continue 'outer;
                }
            }
        }
        base.push(c);
    }
    base.sort_by_key(|&i| (rs.root(i).height(), rs.root(i).coords.clone()));
    // verification: greedy decomposition of every positive element
    for &p in &positives {
        let mut cur = p;
        'decompose: loop {
            if base.contains(&cur) {
                break;
            }
            for &b in &base {
                if let Some(rest) = rs.sum_index(cur, rs.neg_index(b)) {
                    if roots.contains(&rest) && rest < rs.num_positive() {
                        cur = rest;
                        continue 'decompose;
                    }
                }
            }
            return Err(Error::BaseExpansion(rs.root(p).coords.clone()));
        }
    }
    Ok(base)
}

/// Exact rational expansion of a root over an arbitrary independent base,
/// with an integrality check.
fn expand_over_base(rs: &RootSystem, base: &[usize], root: usize) -> Result<Vec<i64>> {
    let rank = rs.rank();
    // solve sum_j x_j * base_j = root by Gaussian elimination over Q
    let mut m: Vec<Vec<BigRational>> = (0..rank)
        .map(|r| {
            let mut row: Vec<BigRational> = base
                .iter()
                .map(|&b| BigRational::from_integer(BigInt::from(rs.root(b).coords[r])))
                .collect();
            row.push(BigRational::from_integer(BigInt::from(rs.root(root).coords[r])));
            row
        })
        .collect();
    let ncols = base.len();
    let mut prow = 0;
    let mut pivots = Vec::new();
    for col in 0..ncols {
        let Some(pr) = (prow..rank).find(|&r| !m[r][col].is_zero()) else {
            continue;
        };
        m.swap(prow, pr);
        let inv = m[prow][col].clone();
        for c in col..=ncols {
            m[prow][c] = &m[prow][c] / &inv;
        }
        for r in 0..rank {
            if r != prow && !m[r][col].is_zero() {
                let f = m[r][col].clone();
                for c in col..=ncols {
                    let t = &f * &m[prow][c];
                    m[r][c] -= t;
                }
            }
        }
        pivots.push(col);
        prow += 1;
    }
    for r in prow..rank {
        if !m[r][ncols].is_zero() {
            return Err(Error::BaseExpansion(rs.root(root).coords.clone()));
        }
    }
    let mut out = vec![0i64; ncols];
    for (i, &col) in pivots.iter().enumerate() {
        let v = &m[i][ncols];
        if !v.is_integer() {
            return Err(Error::BaseExpansion(rs.root(root).coords.clone()));
        }
        out[col] = v.to_integer().to_i64().ok_or(Error::BaseExpansion(
            rs.root(root).coords.clone(),
        ))?;
    }
    Ok(out)
}

fn levi_filter(
    rs: &RootSystem,
    roots: &BTreeSet<usize>,
    base: &[usize],
    sigma: &BTreeSet<usize>,
) -> Result<BTreeSet<usize>> {
    let mut out = BTreeSet::new();
    for &r in roots {
        let coeffs = expand_over_base(rs, base, r)?;
        if coeffs.iter().enumerate().all(|(j, &c)| c == 0 || sigma.contains(&j)) {
            out.insert(r);
        }
    }
    Ok(out)
}

fn dynkin_filter(
    rs: &RootSystem,
    roots: &BTreeSet<usize>,
    base: &[usize],
    index: usize,
    n: u32,
) -> Result<BTreeSet<usize>> {
    let mut out = BTreeSet::new();
    for &r in roots {
        let coeffs = expand_over_base(rs, base, r)?;
        if coeffs[index].rem_euclid(n as i64) == 0 {
            out.insert(r);
        }
    }
    Ok(out)
}

impl Subsystem {
    /// The full system (empty chain).
    pub fn full(rs: Arc<RootSystem>) -> Subsystem {
        let roots: BTreeSet<usize> = (0..rs.num_roots()).collect();
        let base = base_of_subsystem(&rs, &roots).expect("full system has a base");
        Subsystem { rs, roots, chain: Vec::new(), base }
    }

    /// A subsystem from an explicit root set; validates closedness and
    /// symmetry. The chain is empty ("as given").
    pub fn from_root_set(rs: Arc<RootSystem>, roots: BTreeSet<usize>) -> Result<Subsystem> {
        check_closed_symmetric(&rs, &roots)?;
        let base = base_of_subsystem(&rs, &roots)?;
        Ok(Subsystem { rs, roots, chain: Vec::new(), base })
    }

    pub fn root_system(&self) -> &Arc<RootSystem> {
        &self.rs
    }

    pub fn roots(&self) -> &BTreeSet<usize> {
        &self.roots
    }

    pub fn chain(&self) -> &[Step] {
        &self.chain
    }

    /// Canonical simple system of the subsystem, as root indices.
    pub fn base(&self) -> &[usize] {
        &self.base
    }

    pub fn contains(&self, root: usize) -> bool {
        self.roots.contains(&root)
    }

    /// Complement `Omega \ P` as root indices.
    pub fn complement(&self) -> Vec<usize> {
        (0..self.rs.num_roots()).filter(|i| !self.roots.contains(i)).collect()
    }

    fn with_result(
        &self,
        roots: BTreeSet<usize>,
        step: Step,
        twist: Option<Vec<usize>>,
    ) -> Result<Subsystem> {
        check_closed_symmetric(&self.rs, &roots)?;
        let base = base_of_subsystem(&self.rs, &roots)?;
        let mut chain = self.chain.clone();
        if let Some(w) = twist {
            if !w.is_empty() {
                chain.push(Step::Twist(w));
            }
        }
        chain.push(step);
        Ok(Subsystem { rs: self.rs.clone(), roots, chain, base })
    }

    /// Levi step on the canonical base: keep the roots in the integer span
    /// of the selected base elements.
    pub fn levi_step(&self, sigma_indices: &[usize]) -> Result<Subsystem> {
        let sigma = self.validate_indices(sigma_indices)?;
        let roots = levi_filter(&self.rs, &self.roots, &self.base, &sigma)?;
        self.with_result(roots, Step::Levi(sigma_indices.to_vec()), None)
    }

    /// Dynkin step on the canonical base: keep the roots whose coefficient
    /// on the chosen base element is divisible by `n`.
    pub fn dynkin_step(&self, alpha_index: usize, n: u32) -> Result<Subsystem> {
        if n < 2 {
            return Err(Error::InvalidModulus(n));
        }
        if alpha_index >= self.base.len() {
            return Err(Error::IndexOutOfRange { index: alpha_index, len: self.base.len() });
        }
        let roots = dynkin_filter(&self.rs, &self.roots, &self.base, alpha_index, n)?;
        self.with_result(roots, Step::Dynkin { index: alpha_index, n }, None)
    }

    fn validate_indices(&self, indices: &[usize]) -> Result<BTreeSet<usize>> {
        let mut out = BTreeSet::new();
        for &i in indices {
            if i >= self.base.len() {
                return Err(Error::IndexOutOfRange { index: i, len: self.base.len() });
            }
            out.insert(i);
        }
        Ok(out)
    }

    /// The lattice quotient `Z(Omega)/Z(P)` with the image of every root.
    pub fn gamma(&self) -> GammaTable {
        gamma_of_set(&self.rs, &self.roots)
    }
}

/// Quotient of the root lattice by the span of a root set, with per-root
/// images.
pub fn gamma_of_set(rs: &RootSystem, roots: &BTreeSet<usize>) -> GammaTable {
    let rank = rs.rank();
    let rows: Vec<Vec<i64>> = roots.iter().map(|&i| rs.root(i).coords.clone()).collect();
    let m = IntMatrix::from_rows_i64(&rows, rank);
    let group = abelian::quotient(rank, &m);
    let images = (0..rs.num_roots())
        .map(|i| group.project_i64(&rs.root(i).coords))
        .collect();
    GammaTable { group, images }
}

/// Left fold of the steps starting from the full system. Twist steps
/// re-choose the working simple system for the following step.
pub fn apply_chain(rs: Arc<RootSystem>, steps: &[Step]) -> Result<Subsystem> {
    let mut current = Subsystem::full(rs);
    let mut twisted: Option<Vec<usize>> = None;
    let mut pending_twist: Vec<usize> = Vec::new();
    for step in steps {
        match step {
            Step::Twist(word) => {
                let mut base = twisted.take().unwrap_or_else(|| current.base.clone());
                for &j in word {
                    if j >= base.len() {
                        return Err(Error::IndexOutOfRange { index: j, len: base.len() });
                    }
                    let b = base[j];
                    base = base.iter().map(|&g| current.rs.reflect_root(b, g)).collect();
                }
                pending_twist.extend(word.iter().copied());
                twisted = Some(base);
            }
            Step::Levi(indices) => {
                let base = twisted.take().unwrap_or_else(|| current.base.clone());
                let mut sigma = BTreeSet::new();
                for &i in indices {
                    if i >= base.len() {
                        return Err(Error::IndexOutOfRange { index: i, len: base.len() });
                    }
                    sigma.insert(i);
                }
                let roots = levi_filter(&current.rs, &current.roots, &base, &sigma)?;
                let twist_word = core::mem::take(&mut pending_twist);
                current = current.with_result(
                    roots,
                    Step::Levi(indices.clone()),
                    Some(twist_word),
                )?;
            }
            Step::Dynkin { index, n } => {
                if *n < 2 {
                    return Err(Error::InvalidModulus(*n));
                }
                let base = twisted.take().unwrap_or_else(|| current.base.clone());
                if *index >= base.len() {
                    return Err(Error::IndexOutOfRange { index: *index, len: base.len() });
                }
                let roots = dynkin_filter(&current.rs, &current.roots, &base, *index, *n)?;
                let twist_word = core::mem::take(&mut pending_twist);
                current = current.with_result(
                    roots,
                    Step::Dynkin { index: *index, n: *n },
                    Some(twist_word),
                )?;
            }
        }
    }
    Ok(current)
}

// ---------------------------------------------------------------------------
// brute force oracle
// ---------------------------------------------------------------------------

/// All closed symmetric subsets of the root system, by exhaustive search
/// over sets of root pairs. Guarded to `|Omega| <= 18`.
pub fn brute_force_closed_subsets(rs: &RootSystem) -> Result<Vec<BTreeSet<usize>>> {
    if rs.num_roots() > 18 {
        return Err(Error::BudgetExceeded("brute force requires |Omega| <= 18"));
    }
    let np = rs.num_positive();
    let mut out = Vec::new();
    'subset: for mask in 0u32..(1 << np) {
        let mut set = BTreeSet::new();
        for p in 0..np {
            if mask & (1 << p) != 0 {
                set.insert(p);
                set.insert(rs.neg_index(p));
            }
        }
        for &i in &set {
            for &j in &set {
                if let Some(s) = rs.sum_index(i, j) {
                    if !set.contains(&s) {
                        continue 'subset;
                    }
                }
            }
        }
        out.push(set);
    }
    Ok(out)
}

// ---------------------------------------------------------------------------
// enumeration
// ---------------------------------------------------------------------------

/// Enumerated subsystem record: one witnessing chain and the best known
/// step statistics over all witnessed chains.
#[derive(Clone, Debug)]
pub struct SubsystemRecord {
    pub roots: BTreeSet<usize>,
    pub witness: Vec<Step>,
    pub min_dynkin: u32,
    pub steps: u32,
}

#[derive(Clone, Debug)]
pub struct Enumeration {
    pub records: BTreeMap<Vec<usize>, SubsystemRecord>,
    /// true when the node budget cut the search short
    pub truncated: bool,
    pub max_steps: u32,
    pub max_n: u32,
}

impl Enumeration {
    pub fn get(&self, roots: &BTreeSet<usize>) -> Option<&SubsystemRecord> {
        let key: Vec<usize> = roots.iter().copied().collect();
        self.records.get(&key)
    }

    pub fn sets(&self) -> impl Iterator<Item = &Vec<usize>> {
        self.records.keys()
    }
}

/// Default Dynkin modulus bound: largest coefficient of the highest root
/// plus one.
pub fn default_max_n(rs: &RootSystem) -> u32 {
    let mut best = 1i64;
    for i in 0..rs.num_positive() {
        for &c in &rs.root(i).coords {
            best = best.max(c);
        }
    }
    best as u32 + 1
}

/// Options for [`enumerate_subsystems`].
#[derive(Clone, Copy, Debug)]
pub struct EnumerateOptions {
    pub max_steps: u32,
    pub max_n: u32,
    /// When set, close each step under the Weyl group of the current
    /// subsystem (the paper-level step allows any simple system). Without
    /// it only the canonical simple system is used at each step.
    pub orbits: bool,
    /// Bound on the number of distinct subsystems retained.
    pub node_budget: usize,
}

impl EnumerateOptions {
    pub fn new(rs: &RootSystem) -> Self {
        EnumerateOptions {
            max_steps: rs.rank() as u32 + 1,
            max_n: default_max_n(rs),
            orbits: true,
            node_budget: 200_000,
        }
    }
}

/// All distinct subsystems reachable by chains within the budget,
/// deduplicated by the root set. Records keep one witnessing chain and the
/// minimum number of Dynkin steps over witnessed chains.
pub fn enumerate_subsystems(rs: &Arc<RootSystem>, opts: &EnumerateOptions) -> Enumeration {
    let full = Subsystem::full(rs.clone());
    let full_key: Vec<usize> = full.roots.iter().copied().collect();
    let mut records: BTreeMap<Vec<usize>, SubsystemRecord> = BTreeMap::new();
    records.insert(
        full_key.clone(),
        SubsystemRecord { roots: full.roots.clone(), witness: Vec::new(), min_dynkin: 0, steps: 0 },
    );
    let mut truncated = false;
    // priority: fewest dynkin steps, then fewest steps, then the set
    let mut heap: BinaryHeap<Reverse<(u32, u32, Vec<usize>)>> = BinaryHeap::new();
    heap.push(Reverse((0, 0, full_key)));

    while let Some(Reverse((dynkin, steps, key))) = heap.pop() {
        let rec = &records[&key];
        if rec.min_dynkin != dynkin || rec.steps != steps {
            continue; // stale entry
        }
        if steps >= opts.max_steps {
            continue;
        }
        let set: BTreeSet<usize> = key.iter().copied().collect();
        let Ok(base) = base_of_subsystem(rs, &set) else {
            continue;
        };
        let witness = rec.witness.clone();
        // expansions over the canonical base, for fast step filters
        let expansions: BTreeMap<usize, Vec<i64>> = set
            .iter()
            .map(|&r| (r, expand_over_base(rs, &base, r).expect("subsystem root expands")))
            .collect();

        let mut successors: Vec<(BTreeSet<usize>, Step)> = Vec::new();
        // Levi steps over proper subsets of the base
        let b = base.len();
        if b <= 16 {
            for mask in 0u32..(1 << b) {
                if mask == (1u32 << b) - 1 {
                    continue; // identity
                }
                let mut sub = BTreeSet::new();
                for &r in &set {
                    let co = &expansions[&r];
                    if co.iter().enumerate().all(|(j, &c)| c == 0 || mask & (1 << j) != 0) {
                        sub.insert(r);
                    }
                }
                let indices: Vec<usize> = (0..b).filter(|j| mask & (1 << j) != 0).collect();
                successors.push((sub, Step::Levi(indices)));
            }
        }
        // Dynkin steps
        for idx in 0..b {
            for n in 2..=opts.max_n {
                let mut sub = BTreeSet::new();
                for &r in &set {
                    if expansions[&r][idx].rem_euclid(n as i64) == 0 {
                        sub.insert(r);
                    }
                }
                if sub.len() == set.len() {
                    continue;
                }
                successors.push((sub, Step::Dynkin { index: idx, n }));
            }
        }

        for (succ, step) in successors {
            let is_dynkin = matches!(step, Step::Dynkin { .. });
            let nd = dynkin + is_dynkin as u32;
            let ns = steps + 1;
            // orbit of the successor under the Weyl group of the current
            // subsystem, with reflection words for the witnesses
            let mut orbit: BTreeMap<Vec<usize>, Vec<usize>> = BTreeMap::new();
            let succ_key: Vec<usize> = succ.iter().copied().collect();
            orbit.insert(succ_key, Vec::new());
            if opts.orbits {
                let mut queue: Vec<Vec<usize>> = orbit.keys().cloned().collect();
                while let Some(cur) = queue.pop() {
                    let word = orbit[&cur].clone();
                    for (j, &bj) in base.iter().enumerate() {
                        let img: BTreeSet<usize> =
                            cur.iter().map(|&g| rs.reflect_root(bj, g)).collect();
                        let img_key: Vec<usize> = img.iter().copied().collect();
                        if !orbit.contains_key(&img_key) {
                            let mut w = vec![j];
                            w.extend(word.iter().copied());
                            orbit.insert(img_key.clone(), w);
                            queue.push(img_key);
                        }
                    }
                }
            }
            for (img_key, word) in orbit {
                let better = match records.get(&img_key) {
                    Some(r) => (nd, ns) < (r.min_dynkin, r.steps),
                    None => true,
                };
                if !better {
                    continue;
                }
                if !records.contains_key(&img_key) && records.len() >= opts.node_budget {
                    truncated = true;
                    continue;
                }
                let mut w = witness.clone();
                if !word.is_empty() {
                    w.push(Step::Twist(word));
                }
                w.push(step.clone());
                let roots_set: BTreeSet<usize> = img_key.iter().copied().collect();
                records.insert(
                    img_key.clone(),
                    SubsystemRecord { roots: roots_set, witness: w, min_dynkin: nd, steps: ns },
                );
                heap.push(Reverse((nd, ns, img_key)));
            }
        }
    }
    Enumeration { records, truncated, max_steps: opts.max_steps, max_n: opts.max_n }
}

// ---------------------------------------------------------------------------
// torsion census and structural checks
// ---------------------------------------------------------------------------

/// Frequency table of torsion isomorphism types over a set of subsystems.
#[derive(Clone, Debug, Default)]
pub struct TorsionCensus {
    pub counts: BTreeMap<Vec<u64>, usize>,
    pub truncated: bool,
}

fn torsion_type(g: &AbelianGroup) -> Vec<u64> {
    g.invariant_factors().iter().map(|d| d.to_u64().expect("small factor")).collect()
}

/// Census over the brute-force subsystems when the system is small enough,
/// otherwise over chain enumeration.
pub fn torsion_census(rs: &Arc<RootSystem>, opts: &EnumerateOptions) -> Result<TorsionCensus> {
    let mut census = TorsionCensus::default();
    if rs.num_roots() <= 18 {
        for set in brute_force_closed_subsets(rs)? {
            let gamma = gamma_of_set(rs, &set);
            *census.counts.entry(torsion_type(&gamma.group)).or_insert(0) += 1;
        }
    } else {
        let en = enumerate_subsystems(rs, opts);
        census.truncated = en.truncated;
        for key in en.sets() {
            let set: BTreeSet<usize> = key.iter().copied().collect();
            let gamma = gamma_of_set(rs, &set);
            *census.counts.entry(torsion_type(&gamma.group)).or_insert(0) += 1;
        }
    }
    Ok(census)
}

/// Verdicts for the four structural statements about the torsion of the
/// quotient group, checked on one subsystem.
#[derive(Clone, Debug)]
pub struct TorsionReport {
    pub torsion_free: bool,
    /// torsion-free if and only if a pure-Levi witnessing chain exists
    /// (within the enumeration budget)
    pub levi_iff_free: Option<bool>,
    pub cyclic: bool,
    /// cyclic if and only if a witnessing chain with at most one Dynkin
    /// step exists (within the enumeration budget)
    pub cyclic_iff_one_dynkin: Option<bool>,
    /// when cyclic: every nonzero torsion element is the image of a root
    pub nonzero_torsion_covered: Option<bool>,
    /// when non-cyclic: every character of the torsion kills the image of
    /// some root
    pub characters_kill_root_image: Option<bool>,
}

/// Instance check of the four torsion statements for one subsystem.
/// The enumeration context supplies chain witnesses for the first two.
pub fn check_torsion_statements(
    sub: &Subsystem,
    enumeration: Option<&Enumeration>,
) -> Result<TorsionReport> {
    let gamma = sub.gamma();
    let torsion_free = gamma.group.invariant_factors().is_empty();
    let cyclic = gamma.group.is_cyclic(true);

    let (levi_iff_free, cyclic_iff_one_dynkin) = match enumeration {
        Some(en) => {
            let rec = en.get(sub.roots()).ok_or(Error::BudgetExceeded(
                "subsystem not found in the enumeration context",
            ))?;
            (
                Some(torsion_free == (rec.min_dynkin == 0)),
                Some(cyclic == (rec.min_dynkin <= 1)),
            )
        }
        None => (None, None),
    };

    let torsion_root_images: BTreeSet<Vec<BigInt>> = (0..sub.rs.num_roots())
        .filter(|i| !sub.roots.contains(i))
        .map(|i| &gamma.images[i])
        .filter(|img| img.is_torsion())
        .map(|img| gamma.group.coords(img))
        .collect();

    let nonzero_torsion_covered = if cyclic {
        Some(gamma.group.torsion_elements().iter().all(|t| {
            t.is_zero() || torsion_root_images.contains(&gamma.group.coords(t))
        }))
    } else {
        None
    };

    let characters_kill_root_image = if !cyclic {
        let tor = gamma.group.torsion_subgroup();
        let chars = abelian::characters_of_torsion(&tor)?;
        let images: Vec<GroupElement> = torsion_root_images
            .iter()
            .map(|coords| {
                let elem_coords: Vec<BigInt> =
                    coords[..tor.coord_len()].to_vec();
                tor.element_from_coords(&elem_coords)
            })
            .collect();
        Some(chars.iter().all(|ch| images.iter().any(|img| ch.eval(img).is_one())))
    } else {
        None
    };

    Ok(TorsionReport {
        torsion_free,
        levi_iff_free,
        cyclic,
        cyclic_iff_one_dynkin,
        nonzero_torsion_covered,
        characters_kill_root_image,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rootsys::TypeLabel;

    fn build(s: &str) -> Arc<RootSystem> {
        Arc::new(RootSystem::build(TypeLabel::parse(s).unwrap()).unwrap())
    }

    fn coords_set(sub: &Subsystem) -> BTreeSet<Vec<i64>> {
        sub.roots().iter().map(|&i| sub.root_system().root(i).coords.clone()).collect()
    }

    fn expect_set(v: &[Vec<i64>]) -> BTreeSet<Vec<i64>> {
        v.iter().cloned().collect()
    }

    #[test]
    fn levi_steps_examples() {
        let a3 = build("A3");
        let full = Subsystem::full(a3.clone());
        // base sorted lexicographically: [a3, a2, a1]
        assert_eq!(full.base().len(), 3);
        let sigma_a1_a3 = vec![0, 2];
        let sub = full.levi_step(&sigma_a1_a3).unwrap();
        assert_eq!(
            coords_set(&sub),
            expect_set(&[
                vec![0, 0, 1],
                vec![0, 0, -1],
                vec![1, 0, 0],
                vec![-1, 0, 0]
            ])
        );
        // identity step
        let same = full.levi_step(&[0, 1, 2]).unwrap();
        assert_eq!(same.roots(), full.roots());
        // empty step: torus
        let torus = full.levi_step(&[]).unwrap();
        assert!(torus.roots().is_empty());
        assert!(torus.base().is_empty());
        // out of range
        assert!(matches!(full.levi_step(&[5]), Err(Error::IndexOutOfRange { .. })));
    }

    #[test]
    fn dynkin_steps_examples() {
        // B2: base is [a2=(0,1), a1=(1,0)]; dynkin on a1 with n=2 keeps the
        // two orthogonal long roots
        let b2 = build("B2");
        let full = Subsystem::full(b2.clone());
        let sub = full.dynkin_step(1, 2).unwrap();
        assert_eq!(
            coords_set(&sub),
            expect_set(&[vec![0, 1], vec![0, -1], vec![2, 1], vec![-2, -1]])
        );
        // its base: {a2, 2a1+a2}
        let base_coords: Vec<Vec<i64>> =
            sub.base().iter().map(|&i| b2.root(i).coords.clone()).collect();
        assert_eq!(base_coords, vec![vec![0, 1], vec![2, 1]]);

        // G2: dynkin on a1 (index 1) with n=3 gives the long-root A2
        let g2 = build("G2");
        let full = Subsystem::full(g2.clone());
        let sub = full.dynkin_step(1, 3).unwrap();
        assert_eq!(
            coords_set(&sub),
            expect_set(&[
                vec![0, 1],
                vec![0, -1],
                vec![3, 1],
                vec![-3, -1],
                vec![3, 2],
                vec![-3, -2]
            ])
        );

        // A1: dynkin kills everything
        let a1 = build("A1");
        let sub = Subsystem::full(a1).dynkin_step(0, 2).unwrap();
        assert!(sub.roots().is_empty());

        // modulus below 2 rejected
        let b2full = Subsystem::full(b2);
        assert_eq!(b2full.dynkin_step(0, 1).unwrap_err(), Error::InvalidModulus(1));
    }

    #[test]
    fn base_of_full_system_is_simple_roots() {
        let b3 = build("B3");
        let full = Subsystem::full(b3.clone());
        let base_coords: BTreeSet<Vec<i64>> =
            full.base().iter().map(|&i| b3.root(i).coords.clone()).collect();
        assert_eq!(
            base_coords,
            expect_set(&[vec![1, 0, 0], vec![0, 1, 0], vec![0, 0, 1]])
        );
    }

    #[test]
    fn apply_chain_examples() {
        let b2 = build("B2");
        let sub = apply_chain(b2.clone(), &[Step::Dynkin { index: 1, n: 2 }]).unwrap();
        assert_eq!(sub.roots().len(), 4);
        let full = apply_chain(b2, &[]).unwrap();
        assert_eq!(full.roots().len(), 8);

        let a3 = build("A3");
        let sub = apply_chain(a3, &[Step::Levi(vec![0, 2])]).unwrap();
        assert_eq!(sub.roots().len(), 4);
    }

    #[test]
    fn twist_reaches_short_pair_in_b2() {
        // {(1,1), (-1,-1)} is not reachable from the canonical base, but a
        // twist re-chooses the simple system
        let b2 = build("B2");
        let sub = apply_chain(
            b2.clone(),
            &[Step::Twist(vec![0]), Step::Levi(vec![0])],
        )
        .unwrap();
        // s_{a2}: base [a2, a1] reflected in position 0 gives
        // [(0,-1), (1,1)]; Levi on position 1 keeps the span of (1,1)
        let sub2 = apply_chain(
            b2,
            &[Step::Twist(vec![0]), Step::Levi(vec![1])],
        )
        .unwrap();
        let got = coords_set(&sub);
        let got2 = coords_set(&sub2);
        let short_pair = expect_set(&[vec![1, 1], vec![-1, -1]]);
        assert!(got == short_pair || got2 == short_pair, "{got:?} / {got2:?}");
    }

    #[test]
    fn brute_force_small_systems() {
        let a1 = build("A1");
        assert_eq!(brute_force_closed_subsets(&a1).unwrap().len(), 2);

        let a2 = build("A2");
        let sets = brute_force_closed_subsets(&a2).unwrap();
        assert_eq!(sets.len(), 5); // empty, full, three pairs

        let b6 = build("B6");
        assert!(brute_force_closed_subsets(&b6).is_err());
    }

    #[test]
    fn enumeration_matches_brute_force_a2_b2() {
        for s in ["A1", "A2", "B2"] {
            let rs = build(s);
            let opts = EnumerateOptions::new(&rs);
            let en = enumerate_subsystems(&rs, &opts);
            let brute: BTreeSet<Vec<usize>> = brute_force_closed_subsets(&rs)
                .unwrap()
                .into_iter()
                .map(|s| s.into_iter().collect())
                .collect();
            let reached: BTreeSet<Vec<usize>> = en.sets().cloned().collect();
            assert_eq!(reached, brute, "{s}: chain-reachable != closed symmetric");
            assert!(!en.truncated);
        }
    }

    #[test]
    fn enumeration_examples_within_small_budgets() {
        // B2 with two steps and n <= 2 already reaches all seven subsystems
        let b2 = build("B2");
        let opts =
            EnumerateOptions { max_steps: 2, max_n: 2, orbits: true, node_budget: 10_000 };
        let en = enumerate_subsystems(&b2, &opts);
        assert_eq!(en.records.len(), 7);
        let empty: Vec<usize> = Vec::new();
        assert!(en.records.contains_key(&empty));
        let long_pair_sub = {
            let a2 = b2.root_index(&[0, 1]).unwrap();
            let l2 = b2.root_index(&[2, 1]).unwrap();
            let mut v = vec![a2, b2.neg_index(a2), l2, b2.neg_index(l2)];
            v.sort_unstable();
            v
        };
        assert!(en.records.contains_key(&long_pair_sub));

        // G2 with two steps and n <= 3 includes the long-root A2 and the
        // orthogonal-pair subsystem
        let g2 = build("G2");
        let opts =
            EnumerateOptions { max_steps: 2, max_n: 3, orbits: true, node_budget: 10_000 };
        let en = enumerate_subsystems(&g2, &opts);
        let sl3 = apply_chain(g2.clone(), &[Step::Dynkin { index: 1, n: 3 }]).unwrap();
        let sl2sl2 = apply_chain(g2.clone(), &[Step::Dynkin { index: 0, n: 2 }]).unwrap();
        for sub in [sl3, sl2sl2] {
            let key: Vec<usize> = sub.roots().iter().copied().collect();
            assert!(en.records.contains_key(&key));
        }
    }

    #[test]
    fn witnesses_replay() {
        let rs = build("B2");
        let opts = EnumerateOptions::new(&rs);
        let en = enumerate_subsystems(&rs, &opts);
        for (key, rec) in &en.records {
            let sub = apply_chain(rs.clone(), &rec.witness).unwrap();
            let got: Vec<usize> = sub.roots().iter().copied().collect();
            assert_eq!(&got, key, "witness does not replay");
        }
    }

    #[test]
    fn gamma_examples() {
        use num_bigint::BigInt;
        // A3 Levi {a1, a3}: quotient is Z
        let a3 = build("A3");
        let sub = apply_chain(a3, &[Step::Levi(vec![0, 2])]).unwrap();
        let g = sub.gamma();
        assert_eq!(g.group.free_rank(), 1);
        assert!(g.group.invariant_factors().is_empty());

        // G2 dynkin n=3: quotient is Z3
        let g2 = build("G2");
        let sub = apply_chain(g2, &[Step::Dynkin { index: 1, n: 3 }]).unwrap();
        let g = sub.gamma();
        assert_eq!(g.group.free_rank(), 0);
        assert_eq!(g.group.invariant_factors(), &[BigInt::from(3)]);
        // both nonzero classes are hit by root images
        let nonzero: BTreeSet<Vec<BigInt>> = g
            .zero_image_complement_roots(&sub)
            .iter()
            .map(|_| Vec::new())
            .collect();
        assert!(nonzero.is_empty());
    }

    #[test]
    fn torsion_census_small() {
        let a2 = build("A2");
        let census = torsion_census(&a2, &EnumerateOptions::new(&a2)).unwrap();
        assert_eq!(census.counts.len(), 1);
        assert!(census.counts.contains_key(&vec![]));

        let b2 = build("B2");
        let census = torsion_census(&b2, &EnumerateOptions::new(&b2)).unwrap();
        let keys: Vec<Vec<u64>> = census.counts.keys().cloned().collect();
        assert_eq!(keys, vec![vec![], vec![2]]);

        let g2 = build("G2");
        let census = torsion_census(&g2, &EnumerateOptions::new(&g2)).unwrap();
        let keys: Vec<Vec<u64>> = census.counts.keys().cloned().collect();
        assert_eq!(keys, vec![vec![], vec![2], vec![3]]);
    }

    #[test]
    fn torsion_statements_basic() {
        let a3 = build("A3");
        let opts = EnumerateOptions::new(&a3);
        let en = enumerate_subsystems(&a3, &opts);
        let sub = apply_chain(a3, &[Step::Levi(vec![0, 2])]).unwrap();
        let rep = check_torsion_statements(&sub, Some(&en)).unwrap();
        assert!(rep.torsion_free);
        assert_eq!(rep.levi_iff_free, Some(true));

        let g2 = build("G2");
        let sub = apply_chain(g2, &[Step::Dynkin { index: 1, n: 3 }]).unwrap();
        let rep = check_torsion_statements(&sub, None).unwrap();
        assert!(rep.cyclic);
        assert_eq!(rep.nonzero_torsion_covered, Some(true));
    }

    #[test]
    fn from_root_set_validates() {
        let b2 = build("B2");
        // {a1} alone is not symmetric
        let a1 = b2.root_index(&[1, 0]).unwrap();
        let bad: BTreeSet<usize> = [a1].into_iter().collect();
        assert!(matches!(
            Subsystem::from_root_set(b2.clone(), bad),
            Err(Error::NotSymmetric(_))
        ));
        // {a1, -a1, a2, -a2} is symmetric but not closed (a1+a2 is a root)
        let a2 = b2.root_index(&[0, 1]).unwrap();
        let bad2: BTreeSet<usize> =
            [a1, b2.neg_index(a1), a2, b2.neg_index(a2)].into_iter().collect();
        assert!(matches!(
            Subsystem::from_root_set(b2.clone(), bad2),
            Err(Error::NotClosed(_))
        ));
        // the long pair is fine
        let long1 = b2.root_index(&[0, 1]).unwrap();
        let long2 = b2.root_index(&[2, 1]).unwrap();
        let good: BTreeSet<usize> =
            [long1, b2.neg_index(long1), long2, b2.neg_index(long2)].into_iter().collect();
        assert!(Subsystem::from_root_set(b2, good).is_ok());
    }
}
