//! Existence tests and enumeration of Taft algebra actions.
//!
//! Four enumerators cover the landscape: `enumerate_eta_actions` lists the
//! grade-preserving families on a GWA for a given Taft algebra,
//! `thicken` starts from a cyclic group action (an automorphism eta of
//! known order) and finds the Taft algebras extending it, `kt_actions`
//! classifies actions on the polynomial ring k[t] alone, and
//! `omega_actions` lists the grade-reversing families at q = -1. Families
//! describe polynomial coefficients as free slots rather than listing
//! concrete polynomials; every concretization of an emitted family passes
//! the module-algebra verifier.

use std::collections::BTreeMap;

use num_integer::Integer;

use crate::error::{Error, Result};
use crate::gwa::Algebra;
use crate::hopfact::{ActionSpec, TaftAlgebra};
use crate::qpoly::{gamma_number, TPoly};
use crate::scalars::CycloNum;

/// Which existence condition ruled an action out.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FailedCondition {
    /// The support of h meets more than one congruence class modulo m.
    SupportClass,
    /// No k coprime to m has lcm(m, ord(q^k)) = n.
    OrderCondition,
}

impl std::fmt::Display for FailedCondition {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            FailedCondition::SupportClass => {
                write!(f, "supp(h) is not contained in a single congruence class modulo m")
            }
            FailedCondition::OrderCondition => {
                write!(f, "no k coprime to m satisfies lcm(m, ord(q^k)) = n")
            }
        }
    }
}

/// Outcome of the existence test, with a witness exponent when positive.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExistenceCertificate {
    pub verdict: bool,
    pub witness_k: Option<u64>,
    pub failed_condition: Option<FailedCondition>,
}

/// Where an emitted family comes from.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Provenance {
    /// Direct enumeration of grade-preserving actions on the GWA.
    EtaAction,
    /// Extension of a cyclic group action to a Taft algebra action.
    Thickened,
    /// Action on the polynomial ring k[t].
    PolynomialRing,
    /// Grade-reversing action at q = -1.
    OmegaAction,
}

impl Provenance {
    pub fn as_str(self) -> &'static str {
        match self {
            Provenance::EtaAction => "eta_action",
            Provenance::Thickened => "thickened",
            Provenance::PolynomialRing => "polynomial_ring",
            Provenance::OmegaAction => "omega_action",
        }
    }
}

/// A family of grade-preserving actions: fixed gamma, mu, and top degree d,
/// with one free coefficient per support slot. The leading slot must be
/// concretized with a nonzero scalar; other slots admit any scalar.
#[derive(Debug, Clone)]
pub struct ActionFamily {
    taft: TaftAlgebra,
    gamma: CycloNum,
    mu: CycloNum,
    d: u64,
    support_pattern: Vec<u64>,
    provenance: Provenance,
    inner_faithful: bool,
}

impl ActionFamily {
    pub fn taft(&self) -> &TaftAlgebra {
        &self.taft
    }

    pub fn gamma(&self) -> &CycloNum {
        &self.gamma
    }

    pub fn mu(&self) -> &CycloNum {
        &self.mu
    }

    /// Degree of every concretized phi.
    pub fn d(&self) -> u64 {
        self.d
    }

    /// Admissible exponents of phi, in descending order starting at d.
    pub fn support_pattern(&self) -> &[u64] {
        &self.support_pattern
    }

    /// The free coefficient slots, one per support exponent.
    pub fn free_coefficients(&self) -> &[u64] {
        &self.support_pattern
    }

    pub fn provenance(&self) -> Provenance {
        self.provenance
    }

    pub fn inner_faithful(&self) -> bool {
        self.inner_faithful
    }

    /// Builds the spec for a coefficient assignment. Keys must be support
    /// slots and the leading slot d must get a nonzero scalar.
    pub fn concretize(
        &self,
        algebra: &Algebra,
        coeffs: &BTreeMap<u64, CycloNum>,
    ) -> Result<ActionSpec> {
        for e in coeffs.keys() {
            if !self.support_pattern.contains(e) {
                return Err(Error::InvalidAction(format!(
                    "exponent {e} is not a free slot of this family"
                )));
            }
        }
        match coeffs.get(&self.d) {
            Some(c) if !c.is_zero() => {}
            _ => {
                return Err(Error::InvalidAction(format!(
                    "leading slot {} needs a nonzero coefficient",
                    self.d
                )))
            }
        }
        let pairs: Vec<(u64, CycloNum)> = coeffs.iter().map(|(e, c)| (*e, c.clone())).collect();
        let phi = TPoly::from_terms(algebra.field(), &pairs);
        ActionSpec::eta(algebra, self.gamma.clone(), self.mu.clone(), phi)
    }

    /// Concretizes with coefficient 1 in every slot.
    pub fn concretize_ones(&self, algebra: &Algebra) -> Result<ActionSpec> {
        let one = algebra.field().one();
        let coeffs = self
            .support_pattern
            .iter()
            .map(|e| (*e, one.clone()))
            .collect();
        self.concretize(algebra, &coeffs)
    }
}

/// Existence certificate together with any families found.
#[derive(Debug, Clone)]
pub struct EnumerationOutcome {
    pub certificate: ExistenceCertificate,
    pub families: Vec<ActionFamily>,
}

/// Thickening verdict with the families realizing it.
#[derive(Debug, Clone)]
pub struct ThickenOutcome {
    pub verdict: bool,
    pub witness_k: Option<u64>,
    pub families: Vec<ActionFamily>,
}

fn existence_conditions(algebra: &Algebra, taft: &TaftAlgebra) -> ExistenceCertificate {
    let m = taft.m();
    let class = algebra
        .h()
        .support_class(m)
        .expect("h is nonzero by construction");
    if class.is_none() {
        return ExistenceCertificate {
            verdict: false,
            witness_k: None,
            failed_condition: Some(FailedCondition::SupportClass),
        };
    }
    let oq = algebra.q_order();
    for k in 1..=m.lcm(&oq) {
        if k.gcd(&m) == 1 {
            let ord_qk = oq / oq.gcd(&k);
            if m.lcm(&ord_qk) == taft.n() {
                return ExistenceCertificate {
                    verdict: true,
                    witness_k: Some(k),
                    failed_condition: None,
                };
            }
        }
    }
    ExistenceCertificate {
        verdict: false,
        witness_k: None,
        failed_condition: Some(FailedCondition::OrderCondition),
    }
}

/// Decides whether any inner-faithful grade-preserving action of T exists
/// on A: the support of h must sit in one class mod m, and some power q^k
/// with k coprime to m must satisfy lcm(m, ord(q^k)) = n. The smallest
/// such k is the witness.
pub fn existence(algebra: &Algebra, taft: &TaftAlgebra) -> Result<ExistenceCertificate> {
    if algebra.q_order() == 2 {
        return Err(Error::Unsupported(
            "q = -1 is the grade-reversing case, use omega_actions; eta enumeration also remains available".to_string(),
        ));
    }
    Ok(existence_conditions(algebra, taft))
}

fn mod_inverse(a: u64, m: u64) -> Option<u64> {
    (1..m).find(|e| (a % m) * e % m == 1)
}

/// Support slots {d, d-m, ...} that survive the defining relations: a slot
/// i >= 1 needs q^i = q^d, and slot 0 additionally needs mu = q^{-1} and
/// gamma^D = 1.
fn eta_support_pattern(
    algebra: &Algebra,
    gamma: &CycloNum,
    mu: &CycloNum,
    d: u64,
    m: u64,
) -> Vec<u64> {
    let q_d = algebra.q_pow(d as i64);
    let dd = algebra.h_degree() as i64;
    let mut slots = Vec::new();
    let mut i = d as i64;
    while i >= 0 {
        let keep = if i == 0 {
            q_d.is_one() && *mu == algebra.q_pow(-1) && gamma.pow(dd).unwrap().is_one()
        } else {
            algebra.q_pow(i) == q_d
        };
        if keep {
            slots.push(i as u64);
        }
        i -= m as i64;
    }
    slots
}

/// Lists the grade-preserving families with top degree at most d_max.
///
/// For each d with gcd(d-1, m) = 1 there is a unique m-th root gamma with
/// gamma^{d-1} = lambda; mu then ranges over the roots of unity with
/// lcm(m, ord(mu)) = n and (mu q^{1-d})^m = 1. If the existence test fails
/// the family list is empty and the certificate says why.
pub fn enumerate_eta_actions(
    algebra: &Algebra,
    taft: &TaftAlgebra,
    d_max: u64,
) -> EnumerationOutcome {
    let certificate = existence_conditions(algebra, taft);
    if !certificate.verdict {
        return EnumerationOutcome {
            certificate,
            families: Vec::new(),
        };
    }
    let m = taft.m();
    let n = taft.n();
    let mut families = Vec::new();
    for d in 1..=d_max {
        if (d - 1).gcd(&m) != 1 {
            continue;
        }
        let e = mod_inverse(d - 1, m).expect("d - 1 is invertible modulo m");
        let gamma = taft.lambda().pow(e as i64).unwrap();
        for mu in algebra.field().roots_of_unity() {
            let ord_mu = mu.root_order().expect("roots_of_unity yields roots");
            if m.lcm(&ord_mu) != n {
                continue;
            }
            let omega = &mu * &algebra.q_pow(1 - d as i64);
            if !omega.pow(m as i64).unwrap().is_one() {
                continue;
            }
            let support_pattern = eta_support_pattern(algebra, &gamma, &mu, d, m);
            families.push(ActionFamily {
                taft: taft.clone(),
                gamma: gamma.clone(),
                mu,
                d,
                support_pattern,
                provenance: Provenance::EtaAction,
                inner_faithful: true,
            });
        }
    }
    EnumerationOutcome {
        certificate,
        families,
    }
}

/// Extends the cyclic group action generated by eta_{gamma, mu} of order n
/// to Taft algebra actions.
///
/// The verdict asks for k coprime to m = ord(gamma) with (mu q^k)^m = 1.
/// Families are indexed by the admissible degrees d <= d_max, carry
/// lambda = gamma^{d-1}, and pair each with the Taft algebra T_n(lambda, m).
pub fn thicken(
    algebra: &Algebra,
    gamma: &CycloNum,
    mu: &CycloNum,
    n: u64,
    d_max: u64,
) -> Result<ThickenOutcome> {
    if algebra.q_order() == 2 {
        return Err(Error::Unsupported(
            "thickening requires q^2 != 1".to_string(),
        ));
    }
    let og = gamma
        .root_order()
        .ok_or_else(|| Error::NotRootOfUnity(format!("gamma = {gamma}")))?;
    let om = mu
        .root_order()
        .ok_or_else(|| Error::NotRootOfUnity(format!("mu = {mu}")))?;
    let ell = algebra.ell();
    if ell != 0 && !gamma.pow(ell as i64)?.is_one() {
        return Err(Error::Precondition(format!(
            "eta is not an automorphism: gamma^{ell} != 1"
        )));
    }
    let order = og.lcm(&om);
    if order != n {
        return Err(Error::Precondition(format!(
            "eta has order {order}, not the requested {n}"
        )));
    }
    let m = og;
    if m <= 1 {
        return Err(Error::Precondition(
            "ord(gamma) must exceed 1".to_string(),
        ));
    }
    let oq = algebra.q_order();
    let mut witness_k = None;
    for k in 1..=m.lcm(&oq) {
        if k.gcd(&m) == 1 {
            let c = &(mu * &algebra.q_pow(k as i64)).pow(m as i64).unwrap();
            if c.is_one() {
                witness_k = Some(k);
                break;
            }
        }
    }
    let mut families = Vec::new();
    if witness_k.is_some() {
        for d in 2..=d_max {
            if (d - 1).gcd(&m) != 1 {
                continue;
            }
            let omega = mu * &algebra.q_pow(1 - d as i64);
            if !omega.pow(m as i64).unwrap().is_one() {
                continue;
            }
            let lambda = gamma.pow(d as i64 - 1).unwrap();
            let taft = TaftAlgebra::new(n, m, lambda)?;
            let support_pattern = eta_support_pattern(algebra, gamma, mu, d, m);
            families.push(ActionFamily {
                taft,
                gamma: gamma.clone(),
                mu: mu.clone(),
                d,
                support_pattern,
                provenance: Provenance::Thickened,
                inner_faithful: true,
            });
        }
    }
    Ok(ThickenOutcome {
        verdict: witness_k.is_some(),
        witness_k,
        families,
    })
}

/// A family of actions on the polynomial ring k[t]: g(t) = gamma t and
/// x(t) = phi with phi supported on {d, d-m, ...}.
#[derive(Debug, Clone)]
pub struct KtFamily {
    taft: TaftAlgebra,
    gamma: CycloNum,
    d: u64,
    support_pattern: Vec<u64>,
    inner_faithful: bool,
}

impl KtFamily {
    pub fn taft(&self) -> &TaftAlgebra {
        &self.taft
    }

    pub fn gamma(&self) -> &CycloNum {
        &self.gamma
    }

    pub fn d(&self) -> u64 {
        self.d
    }

    pub fn support_pattern(&self) -> &[u64] {
        &self.support_pattern
    }

    pub fn inner_faithful(&self) -> bool {
        self.inner_faithful
    }

    /// The concrete phi with coefficient 1 in every slot.
    pub fn concretize_ones(&self) -> TPoly {
        let field = self.gamma.field();
        let one = field.one();
        let pairs: Vec<(u64, CycloNum)> = self
            .support_pattern
            .iter()
            .map(|e| (*e, one.clone()))
            .collect();
        TPoly::from_terms(field, &pairs)
    }
}

/// One named check in a k[t] verification report.
#[derive(Debug, Clone)]
pub struct KtCheck {
    pub name: &'static str,
    pub passed: bool,
    pub witness: Option<String>,
}

/// Report of `verify_kt`: the action data is g(t) = gamma t, x(t) = phi.
#[derive(Debug, Clone)]
pub struct KtReport {
    pub checks: Vec<KtCheck>,
    pub inner_faithful: bool,
}

impl KtReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }
}

/// Lists the k[t]-action families for the given gamma with top degree at
/// most d_max. Families require ord(gamma) = m, lambda = gamma^{d-1}, and
/// gcd(d-1, m) = 1; the support pattern is the full progression
/// {d, d-m, ...} down to zero. Inner-faithful exactly when m = n.
pub fn kt_actions(taft: &TaftAlgebra, gamma: &CycloNum, d_max: u64) -> Result<Vec<KtFamily>> {
    if gamma.is_zero() || gamma.is_one() {
        return Err(Error::Precondition(
            "gamma must differ from 0 and 1: those force phi = 0 and admit no inner-faithful action".to_string(),
        ));
    }
    let og = gamma
        .root_order()
        .ok_or_else(|| Error::NotRootOfUnity(format!("gamma = {gamma}")))?;
    let m = taft.m();
    let mut families = Vec::new();
    if og != m {
        return Ok(families);
    }
    for d in 2..=d_max {
        if (d - 1).gcd(&m) != 1 {
            continue;
        }
        if gamma.pow(d as i64 - 1).unwrap() != *taft.lambda() {
            continue;
        }
        let mut support_pattern = Vec::new();
        let mut i = d as i64;
        while i >= 0 {
            support_pattern.push(i as u64);
            i -= m as i64;
        }
        families.push(KtFamily {
            taft: taft.clone(),
            gamma: gamma.clone(),
            d,
            support_pattern,
            inner_faithful: m == taft.n(),
        });
    }
    Ok(families)
}

/// Verifies a concrete k[t] action: g^n fixes t, the skew commutation
/// relation holds on t, x^m(t) = 0 by exact iteration, and the scalar
/// product of the iteration formula contains a vanishing factor.
pub fn verify_kt(taft: &TaftAlgebra, gamma: &CycloNum, phi: &TPoly) -> Result<KtReport> {
    if gamma.is_zero() || gamma.is_one() {
        return Err(Error::Precondition(
            "gamma must differ from 0 and 1".to_string(),
        ));
    }
    let mut checks = Vec::new();

    let g_ok = gamma
        .pow(taft.n() as i64)
        .map(|c| c.is_one())
        .unwrap_or(false);
    checks.push(KtCheck {
        name: "g_order",
        passed: g_ok,
        witness: if g_ok {
            None
        } else {
            Some(format!("gamma^{} != 1", taft.n()))
        },
    });

    let skew = &phi.twist(gamma) - &phi.scale(&(taft.lambda() * gamma));
    checks.push(KtCheck {
        name: "skew_commutation",
        passed: skew.is_zero(),
        witness: if skew.is_zero() {
            None
        } else {
            Some(format!("phi(gamma t) - lambda gamma phi(t) = {skew}"))
        },
    });

    let mut img = TPoly::t(phi.field());
    for _ in 0..taft.m() {
        img = phi * &img.gamma_derivative(gamma);
    }
    checks.push(KtCheck {
        name: "x_nilpotent_iterated",
        passed: img.is_zero(),
        witness: if img.is_zero() {
            None
        } else {
            Some(format!("x^{}(t) = {img}", taft.m()))
        },
    });

    let product_check = match phi.degree() {
        None => KtCheck {
            name: "product_formula",
            passed: true,
            witness: Some("phi = 0, nothing to check".to_string()),
        },
        Some(d) => {
            let mut vanishing = None;
            for i in 0..taft.m() {
                let idx = 1 + (i as i64) * (d as i64 - 1);
                if idx < 0 {
                    break;
                }
                if gamma_number(idx as u64, gamma).is_zero() {
                    vanishing = Some(idx as u64);
                    break;
                }
            }
            KtCheck {
                name: "product_formula",
                passed: vanishing.is_some(),
                witness: match vanishing {
                    Some(idx) => Some(format!("factor [{idx}] vanishes")),
                    None => Some("no factor of the scalar product vanishes".to_string()),
                },
            }
        }
    };
    checks.push(product_check);

    let all_passed = checks.iter().all(|c| c.passed);
    let inner_faithful = all_passed
        && !phi.is_zero()
        && taft.m() == taft.n()
        && gamma.root_order() == Some(taft.m());
    Ok(KtReport {
        checks,
        inner_faithful,
    })
}

/// A family of grade-reversing actions at q = -1: fixed mu and top degree
/// of alpha11, with the support pattern a single parity class.
#[derive(Debug, Clone)]
pub struct OmegaFamily {
    taft: TaftAlgebra,
    mu: CycloNum,
    degree: u64,
    sign: i8,
    support_pattern: Vec<u64>,
    inner_faithful: bool,
}

impl OmegaFamily {
    pub fn taft(&self) -> &TaftAlgebra {
        &self.taft
    }

    pub fn mu(&self) -> &CycloNum {
        &self.mu
    }

    /// Degree of every concretized alpha11.
    pub fn degree(&self) -> u64 {
        self.degree
    }

    /// The twist sign: +1 for even support, -1 for odd.
    pub fn sign(&self) -> i8 {
        self.sign
    }

    pub fn support_pattern(&self) -> &[u64] {
        &self.support_pattern
    }

    pub fn inner_faithful(&self) -> bool {
        self.inner_faithful
    }

    /// Builds the spec for a coefficient assignment on the support slots.
    pub fn concretize(
        &self,
        algebra: &Algebra,
        coeffs: &BTreeMap<u64, CycloNum>,
    ) -> Result<ActionSpec> {
        for e in coeffs.keys() {
            if !self.support_pattern.contains(e) {
                return Err(Error::InvalidAction(format!(
                    "exponent {e} is not a free slot of this family"
                )));
            }
        }
        match coeffs.get(&self.degree) {
            Some(c) if !c.is_zero() => {}
            _ => {
                return Err(Error::InvalidAction(format!(
                    "leading slot {} needs a nonzero coefficient",
                    self.degree
                )))
            }
        }
        let pairs: Vec<(u64, CycloNum)> = coeffs.iter().map(|(e, c)| (*e, c.clone())).collect();
        let alpha11 = TPoly::from_terms(algebra.field(), &pairs);
        ActionSpec::omega(algebra, self.mu.clone(), alpha11)
    }

    /// Concretizes with coefficient 1 in every slot.
    pub fn concretize_ones(&self, algebra: &Algebra) -> Result<ActionSpec> {
        let one = algebra.field().one();
        let coeffs = self
            .support_pattern
            .iter()
            .map(|e| (*e, one.clone()))
            .collect();
        self.concretize(algebra, &coeffs)
    }
}

/// Lists the grade-reversing families at q = -1 with deg(alpha11) at most
/// deg_max.
///
/// Families exist only when m = 2 (so lambda = -1), every exponent of h is
/// even (h(-t) = h with even degree D), and n = 2, the order of g. One
/// family per root of unity mu and top degree, the support pattern being
/// the parity class of the degree.
pub fn omega_actions(
    algebra: &Algebra,
    taft: &TaftAlgebra,
    deg_max: u64,
) -> Result<Vec<OmegaFamily>> {
    if algebra.q_order() != 2 {
        return Err(Error::Unsupported(
            "grade-reversing actions require q = -1".to_string(),
        ));
    }
    let mut families = Vec::new();
    if taft.m() != 2 || taft.n() != 2 {
        return Ok(families);
    }
    let class = algebra
        .h()
        .support_class(2)
        .expect("h is nonzero by construction");
    let dd = algebra.h_degree();
    if class != Some(0) || dd % 2 != 0 {
        return Ok(families);
    }
    for mu in algebra.field().roots_of_unity() {
        for degree in 0..=deg_max {
            let sign: i8 = if degree % 2 == 0 { 1 } else { -1 };
            let mut support_pattern = Vec::new();
            let mut i = degree as i64;
            while i >= 0 {
                support_pattern.push(i as u64);
                i -= 2;
            }
            families.push(OmegaFamily {
                taft: taft.clone(),
                mu: mu.clone(),
                degree,
                sign,
                support_pattern,
                inner_faithful: true,
            });
        }
    }
    Ok(families)
}
