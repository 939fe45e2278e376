//! Exact exterior-algebra computations over the Lie-algebra basis: wedge
//! products, the algebraic Schouten bracket, the classical r-matrix and its
//! square, projection to the tangent space at the base point, and the
//! verification oracle for bracket specs.
//!
//! Monomials are strictly increasing tuples of basis indices (Cartan
//! generators first, then root vectors); coefficients are exact cyclotomic
//! scalars.

use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;

#[cfg(test)]
use num_rational::BigRational;

use crate::brackets::BracketSpec;
use crate::error::{Error, Result};
use crate::rootsys::RootSystem;
use crate::scalars::CycQ;
use crate::subsystems::{GammaTable, Subsystem};

/// An exact-coefficient element of the exterior algebra over the basis of
/// the Lie algebra, in canonical sorted form with no zero terms.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Multivector {
    degree: usize,
    terms: BTreeMap<Vec<u32>, CycQ>,
}

impl Multivector {
    pub fn zero(degree: usize) -> Self {
        Multivector { degree, terms: BTreeMap::new() }
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<u32>, &CycQ)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Add a single wedge monomial, canonicalizing index order and sign.
    /// Monomials with a repeated index vanish.
    pub fn add_term(&mut self, mut indices: Vec<u32>, coeff: CycQ) {
        debug_assert_eq!(indices.len(), self.degree);
        if coeff.is_zero() {
            return;
        }
        // insertion sort, counting transpositions
        let mut swaps = 0usize;
        for i in 1..indices.len() {
            let mut j = i;
            while j > 0 && indices[j - 1] > indices[j] {
                indices.swap(j - 1, j);
                swaps += 1;
                j -= 1;
            }
        }
        if indices.windows(2).any(|w| w[0] == w[1]) {
            return;
        }
        let signed = if swaps % 2 == 0 { coeff } else { -coeff };
        match self.terms.get_mut(&indices) {
            Some(v) => {
                *v = &*v + &signed;
                if v.is_zero() {
                    self.terms.remove(&indices);
                }
            }
            None => {
                self.terms.insert(indices, signed);
            }
        }
    }

    pub fn add(&self, other: &Multivector) -> Multivector {
        debug_assert_eq!(self.degree, other.degree);
        let mut out = self.clone();
        for (idx, c) in &other.terms {
            out.add_term(idx.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &Multivector) -> Multivector {
        self.add(&other.scale(&CycQ::from_int(-1)))
    }

    pub fn scale(&self, s: &CycQ) -> Multivector {
        if s.is_zero() {
            return Multivector::zero(self.degree);
        }
        Multivector {
            degree: self.degree,
            terms: self.terms.iter().map(|(k, v)| (k.clone(), v * s)).collect(),
        }
    }

    /// Exterior product.
    pub fn wedge(&self, other: &Multivector) -> Multivector {
        let mut out = Multivector::zero(self.degree + other.degree);
        for (xs, cx) in &self.terms {
            for (ys, cy) in &other.terms {
                let mut idx = xs.clone();
                idx.extend_from_slice(ys);
                out.add_term(idx, cx * cy);
            }
        }
        out
    }

    /// Algebraic Schouten bracket: for monomials,
    /// `[x_1^..^x_p, y_1^..^y_q] = sum (-1)^{i+j} [x_i,y_j]^x\i^y\j`,
    /// extended bilinearly. Degree-1 inputs reduce to the Lie bracket.
    pub fn schouten(&self, other: &Multivector, rs: &RootSystem) -> Multivector {
        let mut out = Multivector::zero(self.degree + other.degree - 1);
        for (xs, cx) in &self.terms {
            for (ys, cy) in &other.terms {
                let cxy = cx * cy;
                for (i, &xi) in xs.iter().enumerate() {
                    for (j, &yj) in ys.iter().enumerate() {
                        let bracket = rs.bracket_basis(xi as usize, yj as usize);
                        if bracket.is_empty() {
                            continue;
                        }
                        let negative = (i + j) % 2 == 1; // (-1)^{(i+1)+(j+1)}
                        let mut rest: Vec<u32> = Vec::with_capacity(xs.len() + ys.len() - 1);
                        rest.push(0); // slot for the bracket element
                        rest.extend(xs.iter().enumerate().filter(|&(k, _)| k != i).map(|(_, &v)| v));
                        rest.extend(ys.iter().enumerate().filter(|&(k, _)| k != j).map(|(_, &v)| v));
                        for (k, coeff) in &bracket {
                            let mut idx = rest.clone();
                            idx[0] = *k as u32;
                            let mut c = cxy.scale(coeff);
                            if negative {
                                c = -c;
                            }
                            out.add_term(idx, c);
                        }
                    }
                }
            }
        }
        out
    }

    /// Action of `ad(x)` for a basis element, extended as a derivation of
    /// the exterior algebra.
    pub fn ad_action(&self, x: usize, rs: &RootSystem) -> Multivector {
        let mut out = Multivector::zero(self.degree);
        for (xs, c) in &self.terms {
            for (i, &xi) in xs.iter().enumerate() {
                for (k, coeff) in rs.bracket_basis(x, xi as usize) {
                    let mut idx = xs.clone();
                    idx[i] = k as u32;
                    out.add_term(idx, c.scale(&coeff));
                }
            }
        }
        out
    }

    /// Drop every monomial containing a Cartan element or a root vector of
    /// the subsystem: the value of an invariant polyvector at the base
    /// point, expressed over the complement.
    pub fn project_to_m(&self, sub: &Subsystem) -> Multivector {
        let rank = sub.root_system().rank() as u32;
        let mut out = Multivector::zero(self.degree);
        'term: for (xs, c) in &self.terms {
            for &i in xs {
                if i < rank || sub.contains((i - rank) as usize) {
                    continue 'term;
                }
            }
            out.terms.insert(xs.clone(), c.clone());
        }
        out
    }

    /// The scalar ratio `self / other` when the two are proportional.
    pub fn proportionality(&self, other: &Multivector) -> Result<CycQ> {
        if other.is_zero() {
            return if self.is_zero() { Ok(CycQ::zero()) } else { Err(Error::NotProportional) };
        }
        let (k0, v0) = other.terms.iter().next().expect("nonzero");
        let ratio = match self.terms.get(k0) {
            Some(v) => v.div(v0)?,
            None => CycQ::zero(),
        };
        if self == &other.scale(&ratio) {
            Ok(ratio)
        } else {
            Err(Error::NotProportional)
        }
    }
}

/// Degree-1 basis monomial.
pub fn basis_vector(index: usize) -> Multivector {
    let mut m = Multivector::zero(1);
    m.add_term(vec![index as u32], CycQ::one());
    m
}

/// The classical r-matrix `sum over positive roots of E_a ^ E_{-a}`.
pub fn r_matrix(rs: &RootSystem) -> Multivector {
    let rank = rs.rank();
    let mut r = Multivector::zero(2);
    for a in 0..rs.num_positive() {
        r.add_term(
            vec![(rank + a) as u32, (rank + rs.neg_index(a)) as u32],
            CycQ::one(),
        );
    }
    r
}

/// The invariant trivector `[r, r]`.
pub fn phi(rs: &RootSystem) -> Multivector {
    let r = r_matrix(rs);
    r.schouten(&r, rs)
}

/// The bivector of a coefficient spec: one term `c(class) E_a ^ E_{-a}`
/// per positive complement root.
pub fn bivector_from_spec(
    spec: &BracketSpec,
    sub: &Subsystem,
    gamma: &GammaTable,
) -> Result<Multivector> {
    let rs = sub.root_system();
    let rank = rs.rank();
    let mut s = Multivector::zero(2);
    for r in sub.complement() {
        if r >= rs.num_positive() {
            continue;
        }
        let c = spec
            .coefficient_of_root(gamma, r)
            .ok_or_else(|| Error::MissingCoefficient(rs.root(r).coords.clone()))?;
        s.add_term(
            vec![(rank + r) as u32, (rank + rs.neg_index(r)) as u32],
            c.clone(),
        );
    }
    Ok(s)
}

/// The admissible bracket `s - r_M` of a phi-bracket spec at the base
/// point: coefficient `c(class) - 1` on each positive complement pair.
pub fn admissible_bivector(
    spec: &BracketSpec,
    sub: &Subsystem,
    gamma: &GammaTable,
) -> Result<Multivector> {
    let rs = sub.root_system();
    let rank = rs.rank();
    let mut nu = Multivector::zero(2);
    for (r, c) in crate::brackets::admissible_coefficients(spec, sub, gamma)? {
        nu.add_term(vec![(rank + r) as u32, (rank + rs.neg_index(r)) as u32], c);
    }
    Ok(nu)
}

/// Verdict of the invariance check, with the failing generators.
#[derive(Clone, Debug)]
pub struct InvarianceReport {
    pub invariant: bool,
    /// basis indices of subalgebra generators whose action does not vanish
    pub failures: Vec<usize>,
}

/// Check that the induced action of every subalgebra generator (Cartan
/// basis and subsystem root vectors) annihilates the bivector modulo the
/// subalgebra directions.
pub fn check_k_invariance(s: &Multivector, sub: &Subsystem) -> InvarianceReport {
    let rs = sub.root_system();
    let rank = rs.rank();
    let mut failures = Vec::new();
    for h in 0..rank {
        if !s.ad_action(h, rs).project_to_m(sub).is_zero() {
            failures.push(h);
        }
    }
    for &b in sub.roots() {
        let x = rank + b;
        if !s.ad_action(x, rs).project_to_m(sub).is_zero() {
            failures.push(x);
        }
    }
    InvarianceReport { invariant: failures.is_empty(), failures }
}

/// The global calibration constant relating `[s, s]` to the projection of
/// `[r, r]` for the standard bracket: measured once on the rank-2 type A
/// torus, where the standard phi-bracket bivector coincides with the
/// r-matrix.
pub fn kappa0() -> CycQ {
    let rs = RootSystem::build(crate::rootsys::TypeLabel::parse("A2").unwrap())
        .expect("A2 builds");
    let rs = alloc::sync::Arc::new(rs);
    let sub = crate::subsystems::apply_chain(rs.clone(), &[crate::subsystems::Step::Levi(vec![])])
        .expect("torus subsystem");
    let r = r_matrix(&rs);
    let ss = r.schouten(&r, &rs).project_to_m(&sub);
    let ph = phi(&rs).project_to_m(&sub);
    ss.proportionality(&ph).expect("[r,r] projects proportionally to itself")
}

/// Outcome of the oracle verification of a bracket spec.
#[derive(Clone, Debug)]
pub struct VerifyReport {
    pub ok: bool,
    pub kappa0: CycQ,
    /// `[s,s]_m - kappa^2 kappa0 phi_m`, empty when the spec verifies
    pub residual: Multivector,
}

/// Verify a spec against the Schouten oracle: the projected square of its
/// bivector must equal `kappa^2 * kappa0` times the projected invariant
/// trivector.
pub fn verify_bracket(spec: &BracketSpec, sub: &Subsystem, gamma: &GammaTable) -> Result<VerifyReport> {
    let rs = sub.root_system();
    let k0 = kappa0();
    let s = bivector_from_spec(spec, sub, gamma)?;
    let ss = s.schouten(&s, rs).project_to_m(sub);
    let expected = phi(rs).project_to_m(sub).scale(&(&spec.kappa2 * &k0));
    let residual = ss.sub(&expected);
    Ok(VerifyReport { ok: residual.is_zero(), kappa0: k0, residual })
}
