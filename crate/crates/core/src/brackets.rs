//! Classification of invariant bivectors on the homogeneous space attached
//! to a subsystem: phi-brackets from a character on a subgroup with free
//! quotient, invariant Poisson brackets from an additive homomorphism on a
//! torsion-free subgroup, the coefficient equation they satisfy, and
//! existence criteria read off the quotient group.

use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_traits::Zero;

use crate::abelian::{
    characters_of_torsion, saturate, AbelianGroup, GroupElement, HomomorphismData, Subgroup,
};
use crate::error::{Error, Result};
use crate::scalars::CycQ;
use crate::subsystems::{GammaTable, Subsystem};

// ---------------------------------------------------------------------------
// ordering tags
// ---------------------------------------------------------------------------

/// A translation-invariant linear order on the free quotient: lexicographic
/// after permuting coordinates and flipping signs.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OrderingTag {
    pub perm: Vec<usize>,
    pub negate: Vec<bool>,
}

impl OrderingTag {
    pub fn lex(dim: usize) -> Self {
        OrderingTag { perm: (0..dim).collect(), negate: vec![false; dim] }
    }

    pub fn validate(&self, dim: usize) -> Result<()> {
        if self.perm.len() != dim || self.negate.len() != dim {
            return Err(Error::InvalidOrderingTag);
        }
        let mut seen = vec![false; dim];
        for &p in &self.perm {
            if p >= dim || seen[p] {
                return Err(Error::InvalidOrderingTag);
            }
            seen[p] = true;
        }
        Ok(())
    }

    /// Sign of a free-coordinate vector under the order; zero maps to 0.
    pub fn sign(&self, free: &[BigInt]) -> i32 {
        for (&p, &neg) in self.perm.iter().zip(self.negate.iter()) {
            let v = &free[p];
            if v.is_zero() {
                continue;
            }
            let positive = *v > BigInt::zero();
            return if positive != neg { 1 } else { -1 };
        }
        0
    }
}

// ---------------------------------------------------------------------------
// bracket specs
// ---------------------------------------------------------------------------

/// How a coefficient map was produced.
#[derive(Clone, Debug)]
pub enum Provenance {
    Phi { psi_gens: Vec<GroupElement>, chi_values: Vec<CycQ>, ordering: OrderingTag },
    Poisson { psi_gens: Vec<GroupElement>, lambda_values: Vec<CycQ> },
    Explicit,
}

/// An antisymmetric, class-constant coefficient map on the image of the
/// complement roots, together with the kappa^2 of its coefficient equation
/// (1 for phi-brackets, 0 for Poisson brackets).
#[derive(Clone, Debug)]
pub struct BracketSpec {
    pub kappa2: CycQ,
    coeffs: BTreeMap<GroupElement, CycQ>,
    pub provenance: Provenance,
}

impl BracketSpec {
    /// Coefficient of a class, when the class is in the domain.
    pub fn coefficient(&self, class: &GroupElement) -> Option<&CycQ> {
        self.coeffs.get(class)
    }

    pub fn classes(&self) -> impl Iterator<Item = (&GroupElement, &CycQ)> {
        self.coeffs.iter()
    }

    pub fn num_classes(&self) -> usize {
        self.coeffs.len()
    }

    /// Coefficient for a root index of the ambient system.
    pub fn coefficient_of_root(&self, gamma: &GammaTable, root: usize) -> Option<&CycQ> {
        self.coeffs.get(&gamma.images[root])
    }

    /// Explicit spec from a class/coefficient map; validates antisymmetry,
    /// and that the domain is exactly the image of the complement.
    pub fn explicit(
        sub: &Subsystem,
        gamma: &GammaTable,
        coeffs: BTreeMap<GroupElement, CycQ>,
        kappa2: CycQ,
    ) -> Result<BracketSpec> {
        let rs = sub.root_system();
        for r in sub.complement() {
            let img = &gamma.images[r];
            if !coeffs.contains_key(img) {
                return Err(Error::MissingCoefficient(rs.root(r).coords.clone()));
            }
        }
        for (class, value) in &coeffs {
            let neg = gamma.group.neg(class);
            match coeffs.get(&neg) {
                Some(opp) if *opp == -value => {}
                _ => {
                    // name a complement root in the offending class if any
                    let offender = sub
                        .complement()
                        .into_iter()
                        .find(|&r| &gamma.images[r] == class)
                        .map(|r| rs.root(r).coords.clone())
                        .unwrap_or_default();
                    return Err(Error::InconsistentCoefficients(offender));
                }
            }
        }
        Ok(BracketSpec { kappa2, coeffs, provenance: Provenance::Explicit })
    }

    /// Copy with one class pair perturbed: `c(x) += delta`, `c(-x) -= delta`.
    /// Keeps antisymmetry; used by verification suites.
    pub fn perturb_class(
        &self,
        group: &AbelianGroup,
        class: &GroupElement,
        delta: &CycQ,
    ) -> BracketSpec {
        let mut coeffs = self.coeffs.clone();
        if let Some(v) = coeffs.get_mut(class) {
            *v = &*v + delta;
        }
        let neg = group.neg(class);
        if neg != *class {
            if let Some(v) = coeffs.get_mut(&neg) {
                *v = &*v - delta;
            }
        }
        BracketSpec { kappa2: self.kappa2.clone(), coeffs, provenance: Provenance::Explicit }
    }
}

// ---------------------------------------------------------------------------
// constructions
// ---------------------------------------------------------------------------

/// Coefficients of a phi-bracket from a subgroup with free quotient, a
/// character avoiding 1 on root images, and a linear order on the quotient:
/// `(chi+1)/(chi-1)` on the subgroup, otherwise the sign of the projection.
pub fn phi_bracket(
    sub: &Subsystem,
    gamma: &GammaTable,
    psi: &Subgroup,
    chi: &HomomorphismData,
    ordering: &OrderingTag,
) -> Result<BracketSpec> {
    if !chi.multiplicative {
        return Err(Error::InconsistentHomomorphism);
    }
    chi.validate(psi)?;
    if !psi.has_free_quotient() {
        return Err(Error::QuotientNotFree);
    }
    let quot_rank = psi.quotient_group().free_rank();
    ordering.validate(quot_rank)?;
    let group = &gamma.group;
    let rs = sub.root_system();
    let one = CycQ::one();
    let mut coeffs = BTreeMap::new();
    for r in sub.complement() {
        let img = gamma.images[r].clone();
        if img.is_zero() {
            return Err(Error::ZeroClassImage(rs.root(r).coords.clone()));
        }
        if coeffs.contains_key(&img) {
            continue;
        }
        let value = if psi.contains(group, &img).is_some() {
            let v = chi.eval(group, psi, &img)?;
            if v.is_one() {
                return Err(Error::ChiValueOne(rs.root(r).coords.clone()));
            }
            (&v + &one).div(&(&v - &one))?
        } else {
            let proj = psi.project_to_quotient(group, &img);
            match ordering.sign(&proj.free) {
                1 => CycQ::one(),
                -1 => CycQ::from_int(-1),
                _ => return Err(Error::ZeroClassImage(rs.root(r).coords.clone())),
            }
        };
        coeffs.insert(img, value);
    }
    let spec = BracketSpec {
        kappa2: CycQ::one(),
        coeffs,
        provenance: Provenance::Phi {
            psi_gens: psi.generators().to_vec(),
            chi_values: chi.values.clone(),
            ordering: ordering.clone(),
        },
    };
    debug_assert!(antisymmetric(&spec, group));
    Ok(spec)
}

/// Coefficients of an invariant Poisson bracket from a torsion-free
/// subgroup and an additive homomorphism nonzero on its root images:
/// `1/lambda` on the subgroup, zero elsewhere.
pub fn poisson_bracket(
    sub: &Subsystem,
    gamma: &GammaTable,
    psi: &Subgroup,
    lambda: &HomomorphismData,
) -> Result<BracketSpec> {
    if lambda.multiplicative {
        return Err(Error::InconsistentHomomorphism);
    }
    let group = &gamma.group;
    if !psi.is_torsion_free(group) {
        return Err(Error::PsiHasTorsion);
    }
    lambda.validate(psi)?;
    let rs = sub.root_system();
    let mut coeffs = BTreeMap::new();
    for r in sub.complement() {
        let img = gamma.images[r].clone();
        if img.is_zero() {
            return Err(Error::ZeroClassImage(rs.root(r).coords.clone()));
        }
        if coeffs.contains_key(&img) {
            continue;
        }
        let value = if psi.contains(group, &img).is_some() {
            let v = lambda.eval(group, psi, &img)?;
            if v.is_zero() {
                return Err(Error::LambdaZero(rs.root(r).coords.clone()));
            }
            CycQ::one().div(&v)?
        } else {
            CycQ::zero()
        };
        coeffs.insert(img, value);
    }
    let spec = BracketSpec {
        kappa2: CycQ::zero(),
        coeffs,
        provenance: Provenance::Poisson {
            psi_gens: psi.generators().to_vec(),
            lambda_values: lambda.values.clone(),
        },
    };
    debug_assert!(antisymmetric(&spec, group));
    Ok(spec)
}

fn antisymmetric(spec: &BracketSpec, group: &AbelianGroup) -> bool {
    spec.coeffs.iter().all(|(class, v)| {
        spec.coeffs.get(&group.neg(class)).map_or(false, |opp| *opp == -v)
    })
}

// ---------------------------------------------------------------------------
// coefficient equation
// ---------------------------------------------------------------------------

#[derive(Clone, Debug)]
pub struct EquationReport {
    pub holds: bool,
    pub violations: Vec<(GroupElement, GroupElement)>,
}

/// Check `c(x+y)(c(x)+c(y)) = c(x)c(y) + kappa^2` for every pair of domain
/// classes whose sum is again a domain class.
pub fn check_coefficient_equation(
    spec: &BracketSpec,
    group: &AbelianGroup,
    kappa2: &CycQ,
) -> EquationReport {
    let mut violations = Vec::new();
    for (x, cx) in &spec.coeffs {
        for (y, cy) in &spec.coeffs {
            let s = group.add(x, y);
            let Some(cs) = spec.coeffs.get(&s) else {
                continue;
            };
            let lhs = cs * &(cx + cy);
            let rhs = &(cx * cy) + kappa2;
            if lhs != rhs {
                violations.push((x.clone(), y.clone()));
            }
        }
    }
    EquationReport { holds: violations.is_empty(), violations }
}

// ---------------------------------------------------------------------------
// existence
// ---------------------------------------------------------------------------

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Existence {
    pub phi_exists: bool,
    pub nonzero_poisson_exists: bool,
    pub admissible_exists: bool,
}

/// Existence of brackets read off the group structure alone: phi-brackets
/// exactly when the torsion is cyclic, nonzero Poisson brackets exactly
/// when the group is infinite; admissible brackets follow the phi case.
pub fn existence(gamma: &GammaTable) -> Existence {
    let phi = gamma.group.is_cyclic(true);
    let poisson = !gamma.group.is_finite();
    Existence { phi_exists: phi, nonzero_poisson_exists: poisson, admissible_exists: phi }
}

/// Outcome of the constructive search matching [`existence`].
#[derive(Clone, Debug)]
pub struct Crosscheck {
    pub phi_witness: Option<BracketSpec>,
    pub poisson_witness: Option<BracketSpec>,
    pub matches_existence: bool,
}

/// Attempt actual constructions: search characters on the torsion
/// saturation for a phi-bracket, and a root image of infinite order for a
/// nonzero Poisson bracket; compare the outcome with [`existence`].
pub fn constructive_existence_crosscheck(
    sub: &Subsystem,
    gamma: &GammaTable,
) -> Result<Crosscheck> {
    let group = &gamma.group;
    let complement = sub.complement();

    // phi: Psi = saturation of the torsion; chi must avoid 1 on the
    // torsion root images, so search all characters of the torsion
    let (psi, _) = saturate(group, &[]);
    let tor = group.torsion_subgroup();
    let chars = characters_of_torsion(&tor)?;
    let quot_rank = psi.quotient_group().free_rank();
    let ordering = OrderingTag::lex(quot_rank);
    let mut phi_witness = None;
    for ch in &chars {
        let values: Vec<CycQ> =
            (0..group.invariant_factors().len()).map(|i| ch.generator_value(i)).collect();
        // free generators of the saturation (none here beyond torsion)
        let n_extra = psi.generators().len() - values.len();
        let mut vals = values;
        vals.extend((0..n_extra).map(|_| CycQ::one()));
        let chi = HomomorphismData::chi(vals);
        match phi_bracket(sub, gamma, &psi, &chi, &ordering) {
            Ok(spec) => {
                phi_witness = Some(spec);
                break;
            }
            Err(Error::ChiValueOne(_)) => continue,
            Err(e) => return Err(e),
        }
    }

    // poisson: a root image of infinite order generates a torsion-free
    // subgroup on which lambda = 1 works
    let mut poisson_witness = None;
    for &r in &complement {
        let img = &gamma.images[r];
        if img.is_torsion() {
            continue;
        }
        let psi = Subgroup::new(group, vec![img.clone()]);
        let lambda = HomomorphismData::lambda(vec![CycQ::one()]);
        match poisson_bracket(sub, gamma, &psi, &lambda) {
            Ok(spec) => {
                poisson_witness = Some(spec);
                break;
            }
            Err(Error::LambdaZero(_)) => continue,
            Err(e) => return Err(e),
        }
    }

    let verdicts = existence(gamma);
    let matches_existence = (phi_witness.is_some() == verdicts.phi_exists)
        && (poisson_witness.is_some() == verdicts.nonzero_poisson_exists);
    Ok(Crosscheck { phi_witness, poisson_witness, matches_existence })
}

// ---------------------------------------------------------------------------
// admissible brackets
// ---------------------------------------------------------------------------

/// Per-positive-root coefficients of the admissible bracket `s - r_M` at
/// the base point: `c(class) - 1` on each positive complement root.
pub fn admissible_coefficients(
    spec: &BracketSpec,
    sub: &Subsystem,
    gamma: &GammaTable,
) -> Result<Vec<(usize, CycQ)>> {
    if !spec.kappa2.is_one() {
        return Err(Error::NotPhiBracket);
    }
    let rs = sub.root_system();
    let one = CycQ::one();
    let mut out = Vec::new();
    for r in sub.complement() {
        if r >= rs.num_positive() {
            continue;
        }
        let c = spec
            .coefficient_of_root(gamma, r)
            .ok_or_else(|| Error::MissingCoefficient(rs.root(r).coords.clone()))?;
        out.push((r, c - &one));
    }
    Ok(out)
}
