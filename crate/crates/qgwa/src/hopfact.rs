//! Generalized Taft algebras and their actions on a quantum GWA.
//!
//! A `TaftAlgebra` is the Hopf algebra T_n(lambda, m) generated by a grouplike
//! g with g^n = 1 and a skew-primitive x with x^m = 0 and gx = lambda xg.
//! An `ActionSpec` pins down candidate actions of g and x on the generators
//! t, u, v of a GWA. Specs come in two kinds: `Eta`, where g scales each
//! generator, and `Omega`, available only at q = -1, where g swaps u and v.
//! `verify_module_algebra` tests the module-algebra axioms against every
//! defining relation and reports each check separately with a witness for
//! any failure.

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::gwa::{Algebra, GwaElement};
use crate::qpoly::{gamma_number, TPoly};
use crate::scalars::CycloNum;

/// The generalized Taft algebra T_n(lambda, m).
#[derive(Clone, PartialEq, Eq)]
pub struct TaftAlgebra {
    n: u64,
    m: u64,
    lambda: CycloNum,
}

impl TaftAlgebra {
    /// Requires m > 1, m dividing n, and lambda of multiplicative order
    /// exactly m.
    pub fn new(n: u64, m: u64, lambda: CycloNum) -> Result<TaftAlgebra> {
        if m <= 1 {
            return Err(Error::InvalidAction(format!(
                "nilpotency index m must exceed 1, got {m}"
            )));
        }
        if n == 0 || n % m != 0 {
            return Err(Error::InvalidAction(format!("m = {m} must divide n = {n}")));
        }
        match lambda.root_order() {
            Some(ord) if ord == m => Ok(TaftAlgebra { n, m, lambda }),
            Some(ord) => Err(Error::InvalidAction(format!(
                "lambda must have order {m}, but has order {ord}"
            ))),
            None => Err(Error::InvalidAction(
                "lambda is not a root of unity".to_string(),
            )),
        }
    }

    /// Order of the grouplike g.
    pub fn n(&self) -> u64 {
        self.n
    }

    /// Nilpotency index of the skew-primitive x.
    pub fn m(&self) -> u64 {
        self.m
    }

    /// The commutation scalar in gx = lambda xg.
    pub fn lambda(&self) -> &CycloNum {
        &self.lambda
    }
}

impl std::fmt::Debug for TaftAlgebra {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "T_{}({}, {})", self.n, self.lambda, self.m)
    }
}

/// Action data for the grade-preserving kind: g scales t by gamma, v by mu,
/// and u by mu^{-1} gamma^D where D = deg h, while x sends t to phi.
///
/// The coefficients of x on u and v are derived from phi at construction:
/// with d = deg phi, alpha11 = (1 - mu^{-1} gamma^D q^{d-1})/(1 - gamma) phi'
/// and alpha22 = (1 - mu q^{1-d})/(1 - gamma) phi', where phi' drops the
/// constant term of phi and divides by t. Both are zero when phi = 0 or
/// gamma = 1.
#[derive(Clone)]
pub struct EtaSpec {
    algebra: Algebra,
    gamma: CycloNum,
    mu: CycloNum,
    phi: TPoly,
    alpha11: TPoly,
    alpha22: TPoly,
}

impl PartialEq for EtaSpec {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.algebra, &other.algebra)
            && self.gamma == other.gamma
            && self.mu == other.mu
            && self.phi == other.phi
    }
}

impl Eq for EtaSpec {}

/// Action data for the grade-reversing kind at q = -1: g sends t to t,
/// v to mu u, u to mu^{-1} (-1)^D v, and x acts by
/// x(u) = alpha11 u + alpha21 v, x(v) = alpha12 u + alpha22 v with
/// alpha22 = -alpha11, alpha12 = -mu sigma(alpha11),
/// alpha21 = mu^{-1} sigma^{-1}(alpha11), and x(t) = 0.
///
/// alpha11 must satisfy sigma(alpha11) = sign * alpha11 for a sign of +1
/// or -1, recorded at construction.
#[derive(Clone)]
pub struct OmegaSpec {
    algebra: Algebra,
    gamma: CycloNum,
    mu: CycloNum,
    alpha11: TPoly,
    alpha12: TPoly,
    alpha21: TPoly,
    alpha22: TPoly,
    sign: i8,
}

impl PartialEq for OmegaSpec {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.algebra, &other.algebra)
            && self.mu == other.mu
            && self.alpha11 == other.alpha11
    }
}

impl Eq for OmegaSpec {}

/// A candidate action of a Taft algebra on a GWA.
#[derive(Clone, PartialEq, Eq)]
pub enum ActionSpec {
    Eta(EtaSpec),
    Omega(OmegaSpec),
}

impl ActionSpec {
    /// Builds a grade-preserving spec. gamma and mu must be nonzero roots of
    /// unity; phi is any polynomial, including zero. Whether the data
    /// actually defines a module-algebra action is the verifier's business,
    /// so specs that break individual axioms are constructible on purpose.
    pub fn eta(algebra: &Algebra, gamma: CycloNum, mu: CycloNum, phi: TPoly) -> Result<ActionSpec> {
        assert!(
            Arc::ptr_eq(gamma.field(), algebra.field()) && Arc::ptr_eq(mu.field(), algebra.field()),
            "spec scalars must live in the algebra's ambient field"
        );
        if gamma.root_order().is_none() {
            return Err(Error::NotRootOfUnity(format!("gamma = {gamma}")));
        }
        if mu.root_order().is_none() {
            return Err(Error::NotRootOfUnity(format!("mu = {mu}")));
        }
        let field = algebra.field();
        let one = field.one();
        let (alpha11, alpha22) = match phi.degree() {
            Some(d) if !gamma.is_one() => {
                let phi1 = phi.shift_trunc(1);
                let dd = algebra.h_degree() as i64;
                let denom = &one - &gamma;
                let c11 = (&one - &(&(&mu.inv()? * &gamma.pow(dd)?) * &algebra.q_pow(d as i64 - 1)))
                    .div(&denom)?;
                let c22 = (&one - &(&mu * &algebra.q_pow(1 - d as i64))).div(&denom)?;
                (phi1.scale(&c11), phi1.scale(&c22))
            }
            _ => (TPoly::zero(field), TPoly::zero(field)),
        };
        Ok(ActionSpec::Eta(EtaSpec {
            algebra: algebra.clone(),
            gamma,
            mu,
            phi,
            alpha11,
            alpha22,
        }))
    }

    /// Builds a grade-reversing spec. Requires q = -1, mu a nonzero root of
    /// unity, and sigma(alpha11) = +/- alpha11; the sign is derived. The
    /// scalar gamma is fixed at -1.
    pub fn omega(algebra: &Algebra, mu: CycloNum, alpha11: TPoly) -> Result<ActionSpec> {
        assert!(
            Arc::ptr_eq(mu.field(), algebra.field()),
            "spec scalars must live in the algebra's ambient field"
        );
        if algebra.q_order() != 2 {
            return Err(Error::InvalidAction(
                "the grade-reversing kind requires q = -1".to_string(),
            ));
        }
        if mu.root_order().is_none() {
            return Err(Error::NotRootOfUnity(format!("mu = {mu}")));
        }
        let field = algebra.field();
        let q = algebra.q();
        let twisted = alpha11.twist(q);
        let sign = if twisted == alpha11 {
            1
        } else if twisted == -&alpha11 {
            -1
        } else {
            return Err(Error::InvalidAction(
                "alpha11 must satisfy sigma(alpha11) = +/- alpha11".to_string(),
            ));
        };
        let alpha12 = twisted.scale(&-&mu);
        let alpha21 = alpha11.twist(&q.inv()?).scale(&mu.inv()?);
        let alpha22 = -&alpha11;
        Ok(ActionSpec::Omega(OmegaSpec {
            algebra: algebra.clone(),
            gamma: field.integer(-1),
            mu,
            alpha11,
            alpha12,
            alpha21,
            alpha22,
            sign,
        }))
    }

    /// The algebra the spec was built against.
    pub fn algebra(&self) -> &Algebra {
        match self {
            ActionSpec::Eta(s) => &s.algebra,
            ActionSpec::Omega(s) => &s.algebra,
        }
    }

    /// The scaling factor of g on t (always -1 for the Omega kind).
    pub fn gamma(&self) -> &CycloNum {
        match self {
            ActionSpec::Eta(s) => &s.gamma,
            ActionSpec::Omega(s) => &s.gamma,
        }
    }

    /// The scaling factor of g on v.
    pub fn mu(&self) -> &CycloNum {
        match self {
            ActionSpec::Eta(s) => &s.mu,
            ActionSpec::Omega(s) => &s.mu,
        }
    }

    /// The image x(t); zero for the Omega kind.
    pub fn phi(&self) -> TPoly {
        match self {
            ActionSpec::Eta(s) => s.phi.clone(),
            ActionSpec::Omega(s) => TPoly::zero(s.algebra.field()),
        }
    }

    /// Coefficient of u in x(u).
    pub fn alpha11(&self) -> &TPoly {
        match self {
            ActionSpec::Eta(s) => &s.alpha11,
            ActionSpec::Omega(s) => &s.alpha11,
        }
    }

    /// Coefficient of v in x(v).
    pub fn alpha22(&self) -> &TPoly {
        match self {
            ActionSpec::Eta(s) => &s.alpha22,
            ActionSpec::Omega(s) => &s.alpha22,
        }
    }

    /// The twist sign of alpha11 for the Omega kind.
    pub fn sign(&self) -> Option<i8> {
        match self {
            ActionSpec::Eta(_) => None,
            ActionSpec::Omega(s) => Some(s.sign),
        }
    }

    /// "eta" or "omega".
    pub fn kind(&self) -> &'static str {
        match self {
            ActionSpec::Eta(_) => "eta",
            ActionSpec::Omega(_) => "omega",
        }
    }
}

impl std::fmt::Debug for ActionSpec {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            ActionSpec::Eta(s) => write!(
                f,
                "Eta {{ gamma: {}, mu: {}, phi: {} }}",
                s.gamma, s.mu, s.phi
            ),
            ActionSpec::Omega(s) => write!(
                f,
                "Omega {{ mu: {}, alpha11: {}, sign: {} }}",
                s.mu, s.alpha11, s.sign
            ),
        }
    }
}

fn assert_same_algebra(algebra: &Algebra, spec: &ActionSpec) {
    assert!(
        Arc::ptr_eq(algebra, spec.algebra()),
        "spec was built against a different algebra"
    );
}

/// The order of the automorphism eta_{gamma, mu}, which is
/// lcm(ord gamma, ord mu). Errors if either scalar is not a root of unity.
pub fn order_of_eta(_algebra: &Algebra, gamma: &CycloNum, mu: &CycloNum) -> Result<u64> {
    let og = gamma
        .root_order()
        .ok_or_else(|| Error::NotRootOfUnity(format!("gamma = {gamma}")))?;
    let om = mu
        .root_order()
        .ok_or_else(|| Error::NotRootOfUnity(format!("mu = {mu}")))?;
    Ok(num_integer::lcm(og, om))
}

/// Applies g to an element, componentwise on the graded normal form.
pub fn apply_g(algebra: &Algebra, spec: &ActionSpec, e: &GwaElement) -> GwaElement {
    assert_same_algebra(algebra, spec);
    let dd = algebra.h_degree() as i64;
    let mut out = GwaElement::zero(algebra);
    match spec {
        ActionSpec::Eta(s) => {
            let u_scale = &s.mu.inv().expect("mu is a root of unity") * &s.gamma.pow(dd).unwrap();
            for (k, f) in e.iter() {
                let c = if k >= 0 {
                    u_scale.pow(k).unwrap()
                } else {
                    s.mu.pow(-k).unwrap()
                };
                out = &out + &GwaElement::monomial(algebra, f.twist(&s.gamma).scale(&c), k);
            }
        }
        ActionSpec::Omega(s) => {
            let neg_gamma = -&s.gamma;
            let u_scale = &s.mu.inv().expect("mu is a root of unity") * &s.gamma.pow(dd).unwrap();
            for (k, f) in e.iter() {
                let c = if k >= 0 {
                    u_scale.pow(k).unwrap()
                } else {
                    s.mu.pow(-k).unwrap()
                };
                out = &out + &GwaElement::monomial(algebra, f.twist(&neg_gamma).scale(&c), -k);
            }
        }
    }
    out
}

fn x_on_u_power(algebra: &Algebra, spec: &ActionSpec, k: u64) -> GwaElement {
    if k == 0 {
        return GwaElement::zero(algebra);
    }
    let x_u = match spec {
        ActionSpec::Eta(s) => GwaElement::monomial(algebra, s.alpha11.clone(), 1),
        ActionSpec::Omega(s) => {
            &GwaElement::monomial(algebra, s.alpha11.clone(), 1)
                + &GwaElement::monomial(algebra, s.alpha21.clone(), -1)
        }
    };
    if k == 1 {
        return x_u;
    }
    let g_u = apply_g(algebra, spec, &GwaElement::gen_u(algebra));
    let rest = x_on_u_power(algebra, spec, k - 1);
    let tail = GwaElement::monomial(algebra, TPoly::one(algebra.field()), (k - 1) as i64);
    &(&g_u * &rest) + &(&x_u * &tail)
}

fn x_on_v_power(algebra: &Algebra, spec: &ActionSpec, k: u64) -> GwaElement {
    if k == 0 {
        return GwaElement::zero(algebra);
    }
    let x_v = match spec {
        ActionSpec::Eta(s) => GwaElement::monomial(algebra, s.alpha22.clone(), -1),
        ActionSpec::Omega(s) => {
            &GwaElement::monomial(algebra, s.alpha12.clone(), 1)
                + &GwaElement::monomial(algebra, s.alpha22.clone(), -1)
        }
    };
    if k == 1 {
        return x_v;
    }
    let g_v = apply_g(algebra, spec, &GwaElement::gen_v(algebra));
    let rest = x_on_v_power(algebra, spec, k - 1);
    let tail = GwaElement::monomial(algebra, TPoly::one(algebra.field()), -((k - 1) as i64));
    &(&g_v * &rest) + &(&x_v * &tail)
}

/// Applies x to an element.
///
/// Each graded component f(t) w^k (w = u or v) is expanded by the
/// skew-Leibniz rule x(ab) = g(a) x(b) + x(a) b with a = f(t) and b = w^k.
/// Powers are handled by iterated skew-Leibniz in the same way, and on
/// polynomials x(f) = phi * delta_gamma(f), which is zero for the Omega
/// kind since phi = 0 there.
pub fn apply_x(algebra: &Algebra, spec: &ActionSpec, e: &GwaElement) -> GwaElement {
    assert_same_algebra(algebra, spec);
    let mut out = GwaElement::zero(algebra);
    for (k, f) in e.iter() {
        let x_f = match spec {
            ActionSpec::Eta(s) => &s.phi * &f.gamma_derivative(&s.gamma),
            ActionSpec::Omega(_) => TPoly::zero(algebra.field()),
        };
        let g_f = match spec {
            ActionSpec::Eta(s) => f.twist(&s.gamma),
            ActionSpec::Omega(s) => f.twist(&-&s.gamma),
        };
        let x_wk = if k >= 0 {
            x_on_u_power(algebra, spec, k as u64)
        } else {
            x_on_v_power(algebra, spec, (-k) as u64)
        };
        out = &out + &(&GwaElement::from_poly(algebra, g_f) * &x_wk);
        out = &out + &GwaElement::monomial(algebra, x_f, k);
    }
    out
}

/// Order of the g-action as an automorphism of A, found by iterating
/// apply_g on the generators. Returns None if no period at most `cap`
/// exists.
pub fn g_action_order(algebra: &Algebra, spec: &ActionSpec, cap: u64) -> Option<u64> {
    let gens = [
        GwaElement::gen_t(algebra),
        GwaElement::gen_u(algebra),
        GwaElement::gen_v(algebra),
    ];
    let mut images = gens.clone();
    for r in 1..=cap {
        for img in images.iter_mut() {
            *img = apply_g(algebra, spec, img);
        }
        if images == gens {
            return Some(r);
        }
    }
    None
}

/// The named checks making up a verification report.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CheckName {
    GOrder,
    GRespectsRelations,
    RelationVuh,
    RelationUvh,
    RelationUt,
    RelationVt,
    SkewCommutationU,
    SkewCommutationV,
    SkewCommutationT,
    XNilpotentT,
    XNilpotentU,
    XNilpotentV,
    WeaklyGraded,
    Graded,
    InnerFaithful,
}

impl CheckName {
    pub const ALL: [CheckName; 15] = [
        CheckName::GOrder,
        CheckName::GRespectsRelations,
        CheckName::RelationVuh,
        CheckName::RelationUvh,
        CheckName::RelationUt,
        CheckName::RelationVt,
        CheckName::SkewCommutationU,
        CheckName::SkewCommutationV,
        CheckName::SkewCommutationT,
        CheckName::XNilpotentT,
        CheckName::XNilpotentU,
        CheckName::XNilpotentV,
        CheckName::WeaklyGraded,
        CheckName::Graded,
        CheckName::InnerFaithful,
    ];

    /// Stable snake_case identifier used in reports and JSON output.
    pub fn as_str(self) -> &'static str {
        match self {
            CheckName::GOrder => "g_order",
            CheckName::GRespectsRelations => "g_respects_relations",
            CheckName::RelationVuh => "relation_vuh",
            CheckName::RelationUvh => "relation_uvh",
            CheckName::RelationUt => "relation_ut",
            CheckName::RelationVt => "relation_vt",
            CheckName::SkewCommutationU => "skew_commutation_u",
            CheckName::SkewCommutationV => "skew_commutation_v",
            CheckName::SkewCommutationT => "skew_commutation_t",
            CheckName::XNilpotentT => "x_nilpotent_t",
            CheckName::XNilpotentU => "x_nilpotent_u",
            CheckName::XNilpotentV => "x_nilpotent_v",
            CheckName::WeaklyGraded => "weakly_graded",
            CheckName::Graded => "graded",
            CheckName::InnerFaithful => "inner_faithful",
        }
    }

    /// Checks that do not count toward the overall verdict: gradedness in
    /// the strict sense fails legitimately for the Omega kind, and
    /// inner-faithfulness is a property of a valid action rather than an
    /// axiom.
    pub fn informational(self) -> bool {
        matches!(self, CheckName::Graded | CheckName::InnerFaithful)
    }
}

impl std::fmt::Display for CheckName {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.as_str())
    }
}

/// One verifier check with its outcome and, on failure, a witness.
#[derive(Debug, Clone)]
pub struct CheckOutcome {
    pub name: CheckName,
    pub passed: bool,
    pub witness: Option<String>,
}

/// The full result of `verify_module_algebra`: one outcome per check in
/// `CheckName::ALL`, in that order.
#[derive(Debug, Clone)]
pub struct VerificationReport {
    checks: Vec<CheckOutcome>,
}

impl VerificationReport {
    pub fn checks(&self) -> &[CheckOutcome] {
        &self.checks
    }

    pub fn get(&self, name: CheckName) -> &CheckOutcome {
        self.checks
            .iter()
            .find(|c| c.name == name)
            .expect("report contains every check")
    }

    /// True when every non-informational check passed.
    pub fn passed(&self) -> bool {
        self.checks
            .iter()
            .all(|c| c.passed || c.name.informational())
    }

    /// The non-informational checks that failed.
    pub fn failures(&self) -> Vec<&CheckOutcome> {
        self.checks
            .iter()
            .filter(|c| !c.passed && !c.name.informational())
            .collect()
    }
}

fn residual_check(name: CheckName, residual: GwaElement, label: &str) -> CheckOutcome {
    if residual.is_zero() {
        CheckOutcome {
            name,
            passed: true,
            witness: None,
        }
    } else {
        CheckOutcome {
            name,
            passed: false,
            witness: Some(format!("{label} has nonzero residual {residual}")),
        }
    }
}

/// Runs every module-algebra check for the spec against T = T_n(lambda, m).
///
/// The relation checks apply x to both sides of each defining relation
/// through the skew-Leibniz rule on the factors, so a spec that breaks an
/// axiom produces a nonzero residual in exact normal form.
pub fn verify_module_algebra(
    algebra: &Algebra,
    taft: &TaftAlgebra,
    spec: &ActionSpec,
) -> VerificationReport {
    assert_same_algebra(algebra, spec);
    let field = algebra.field();
    let t = GwaElement::gen_t(algebra);
    let u = GwaElement::gen_u(algebra);
    let v = GwaElement::gen_v(algebra);
    let g = |e: &GwaElement| apply_g(algebra, spec, e);
    let x = |e: &GwaElement| apply_x(algebra, spec, e);
    let q_el = GwaElement::scalar(algebra, algebra.q().clone());
    let q_inv_el = GwaElement::scalar(algebra, algebra.q_pow(-1));
    let mut checks = Vec::with_capacity(CheckName::ALL.len());

    let cap = 4 * num_integer::lcm(2, field.order());
    let g_order = g_action_order(algebra, spec, cap);
    checks.push(match g_order {
        Some(r) if taft.n() % r == 0 => CheckOutcome {
            name: CheckName::GOrder,
            passed: true,
            witness: None,
        },
        Some(r) => CheckOutcome {
            name: CheckName::GOrder,
            passed: false,
            witness: Some(format!("g-action has order {r}, which does not divide n = {}", taft.n())),
        },
        None => CheckOutcome {
            name: CheckName::GOrder,
            passed: false,
            witness: Some(format!("g-action has no period up to {cap}")),
        },
    });

    let scale_t = spec.gamma().clone();
    let scale_t = match spec {
        ActionSpec::Eta(_) => scale_t,
        ActionSpec::Omega(_) => -&scale_t,
    };
    let h_at_gt = GwaElement::from_poly(algebra, algebra.h().twist(&scale_t));
    let sh_at_gt = GwaElement::from_poly(algebra, algebra.sigma_h(1).twist(&scale_t));
    let g_rels = [
        ("g on ut = q tu", &(&g(&u) * &g(&t)) - &(&q_el * &(&g(&t) * &g(&u)))),
        ("g on vt = q^{-1} tv", &(&g(&v) * &g(&t)) - &(&q_inv_el * &(&g(&t) * &g(&v)))),
        ("g on vu = h(t)", &(&g(&v) * &g(&u)) - &h_at_gt),
        ("g on uv = h(qt)", &(&g(&u) * &g(&v)) - &sh_at_gt),
    ];
    let g_rel_fail = g_rels.iter().find(|(_, r)| !r.is_zero());
    checks.push(match g_rel_fail {
        None => CheckOutcome {
            name: CheckName::GRespectsRelations,
            passed: true,
            witness: None,
        },
        Some((label, r)) => CheckOutcome {
            name: CheckName::GRespectsRelations,
            passed: false,
            witness: Some(format!("{label} has nonzero residual {r}")),
        },
    });

    let h_el = GwaElement::from_poly(algebra, algebra.h().clone());
    let sh_el = GwaElement::from_poly(algebra, algebra.sigma_h(1));
    let x_vu = &(&g(&v) * &x(&u)) + &(&x(&v) * &u);
    checks.push(residual_check(
        CheckName::RelationVuh,
        &x_vu - &x(&h_el),
        "x on vu = h(t)",
    ));
    let x_uv = &(&g(&u) * &x(&v)) + &(&x(&u) * &v);
    checks.push(residual_check(
        CheckName::RelationUvh,
        &x_uv - &x(&sh_el),
        "x on uv = h(qt)",
    ));
    let x_ut = &(&g(&u) * &x(&t)) + &(&x(&u) * &t);
    let x_tu = &(&g(&t) * &x(&u)) + &(&x(&t) * &u);
    checks.push(residual_check(
        CheckName::RelationUt,
        &x_ut - &(&q_el * &x_tu),
        "x on ut = q tu",
    ));
    let x_vt = &(&g(&v) * &x(&t)) + &(&x(&v) * &t);
    let x_tv = &(&g(&t) * &x(&v)) + &(&x(&t) * &v);
    checks.push(residual_check(
        CheckName::RelationVt,
        &x_vt - &(&q_inv_el * &x_tv),
        "x on vt = q^{-1} tv",
    ));

    let lambda_el = GwaElement::scalar(algebra, taft.lambda().clone());
    for (name, w) in [
        (CheckName::SkewCommutationU, &u),
        (CheckName::SkewCommutationV, &v),
        (CheckName::SkewCommutationT, &t),
    ] {
        let residual = &g(&x(w)) - &(&lambda_el * &x(&g(w)));
        checks.push(residual_check(name, residual, "gx = lambda xg"));
    }

    for (name, w, label) in [
        (CheckName::XNilpotentT, &t, "x^m(t)"),
        (CheckName::XNilpotentU, &u, "x^m(u)"),
        (CheckName::XNilpotentV, &v, "x^m(v)"),
    ] {
        let mut img = (*w).clone();
        for _ in 0..taft.m() {
            img = x(&img);
        }
        checks.push(residual_check(name, img, label));
    }

    let probes = [
        t.clone(),
        u.clone(),
        v.clone(),
        GwaElement::monomial(algebra, TPoly::from_terms(field, &[(2, field.one())]), 1),
        GwaElement::monomial(algebra, TPoly::t(field), -2),
        GwaElement::monomial(algebra, TPoly::one(field), 3),
        GwaElement::from_poly(algebra, TPoly::from_terms(field, &[(3, field.one()), (0, field.integer(2))])),
    ];
    let grade_violation = |strict: bool| -> Option<String> {
        for p in &probes {
            let k = p.grades()[0];
            let bad = g(p)
                .grades()
                .into_iter()
                .find(|&j| if strict { j != k } else { j != k && j != -k });
            if let Some(j) = bad {
                return Some(format!("g sends a grade {k} element into grade {j}"));
            }
        }
        for w in [&t, &u, &v] {
            let k = w.grades()[0];
            let bad = x(w)
                .grades()
                .into_iter()
                .find(|&j| if strict { j != k } else { j != k && j != -k });
            if let Some(j) = bad {
                return Some(format!("x sends a grade {k} generator into grade {j}"));
            }
        }
        None
    };
    let weak = grade_violation(false);
    checks.push(CheckOutcome {
        name: CheckName::WeaklyGraded,
        passed: weak.is_none(),
        witness: weak,
    });
    let strict = grade_violation(true);
    checks.push(CheckOutcome {
        name: CheckName::Graded,
        passed: strict.is_none(),
        witness: strict,
    });

    let x_witness = [("t", &t), ("u", &u), ("v", &v)]
        .into_iter()
        .find(|(_, w)| !x(w).is_zero())
        .map(|(name, _)| name);
    let faithful = match (g_order, x_witness) {
        (Some(r), Some(w)) if r == taft.n() => (
            true,
            format!("g-action has order {r} = n and x acts nonzero on {w}"),
        ),
        (Some(r), Some(_)) => (
            false,
            format!("g-action has order {r}, but n = {}", taft.n()),
        ),
        (Some(_), None) => (false, "x annihilates t, u, and v".to_string()),
        (None, _) => (false, format!("g-action has no period up to {cap}")),
    };
    checks.push(CheckOutcome {
        name: CheckName::InnerFaithful,
        passed: faithful.0,
        witness: Some(faithful.1),
    });

    VerificationReport { checks }
}

/// Why a verified spec is or is not inner-faithful.
#[derive(Debug, Clone)]
pub struct FaithfulnessCertificate {
    pub inner_faithful: bool,
    pub detail: String,
}

/// Decides inner-faithfulness for a spec that passes verification.
///
/// The action is inner-faithful exactly when the g-action has order n and
/// x acts nonzero on some generator. Errors if the spec fails any
/// non-informational check.
pub fn is_inner_faithful(
    algebra: &Algebra,
    taft: &TaftAlgebra,
    spec: &ActionSpec,
) -> Result<FaithfulnessCertificate> {
    let report = verify_module_algebra(algebra, taft, spec);
    if !report.passed() {
        let failed: Vec<&str> = report.failures().iter().map(|c| c.name.as_str()).collect();
        return Err(Error::Precondition(format!(
            "spec fails verification: {}",
            failed.join(", ")
        )));
    }
    let outcome = report.get(CheckName::InnerFaithful);
    Ok(FaithfulnessCertificate {
        inner_faithful: outcome.passed,
        detail: outcome.witness.clone().unwrap_or_default(),
    })
}

/// The scalar [k]_omega with omega = mu q^{1-d}, the eigenvalue ratio
/// appearing in x(v^k) for a valid spec.
pub fn v_power_eigenvalue(algebra: &Algebra, spec: &ActionSpec, k: u64) -> CycloNum {
    let d = spec
        .phi()
        .degree()
        .expect("eigenvalue requires nonzero phi") as i64;
    let omega = &spec.mu().clone() * &algebra.q_pow(1 - d);
    gamma_number(k, &omega)
}

/// The scalar [k]_omega with omega = mu^{-1} gamma^D q^{d-1}, the analogue
/// for x(u^k).
pub fn u_power_eigenvalue(algebra: &Algebra, spec: &ActionSpec, k: u64) -> CycloNum {
    let d = spec
        .phi()
        .degree()
        .expect("eigenvalue requires nonzero phi") as i64;
    let dd = algebra.h_degree() as i64;
    let omega = &(&spec.mu().inv().expect("mu is a root of unity")
        * &spec.gamma().pow(dd).unwrap())
        * &algebra.q_pow(d - 1);
    gamma_number(k, &omega)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gwa::GwaAlgebra;
    use crate::scalars::AmbientField;

    fn quantum_plane_setup() -> (Algebra, TaftAlgebra, ActionSpec) {
        let field = AmbientField::new(6);
        let q = field.zeta_pow(2);
        let algebra = GwaAlgebra::new(&field, q.clone(), TPoly::t(&field)).unwrap();
        let taft = TaftAlgebra::new(3, 3, q.clone()).unwrap();
        let phi = TPoly::monomial(field.one(), 2);
        let spec = ActionSpec::eta(&algebra, q, field.one(), phi).unwrap();
        (algebra, taft, spec)
    }

    #[test]
    fn taft_constructor_rejects_bad_data() {
        let field = AmbientField::new(6);
        assert!(TaftAlgebra::new(3, 1, field.one()).is_err());
        assert!(TaftAlgebra::new(4, 3, field.zeta_pow(2)).is_err());
        assert!(TaftAlgebra::new(6, 3, field.zeta()).is_err());
        let taft = TaftAlgebra::new(6, 3, field.zeta_pow(2)).unwrap();
        assert_eq!(taft.n(), 6);
        assert_eq!(taft.m(), 3);
        assert_eq!(taft.lambda().root_order(), Some(3));
    }

    #[test]
    fn derived_alphas_match_closed_form() {
        let (algebra, _, spec) = quantum_plane_setup();
        let field = algebra.field();
        let q = algebra.q();
        let expected11 = TPoly::monomial(&field.one() + q, 1);
        let expected22 = TPoly::monomial(-&q.pow(2).unwrap(), 1);
        assert_eq!(spec.alpha11(), &expected11);
        assert_eq!(spec.alpha22(), &expected22);
    }

    #[test]
    fn x_on_polynomials_multiplies_derivative_by_phi() {
        let (algebra, _, spec) = quantum_plane_setup();
        let field = algebra.field();
        let gamma = spec.gamma().clone();
        let f = TPoly::from_terms(
            field,
            &[(5, field.integer(3)), (1, field.integer(-2)), (0, field.one())],
        );
        let expected = &spec.phi() * &f.gamma_derivative(&gamma);
        let image = apply_x(&algebra, &spec, &GwaElement::from_poly(&algebra, f));
        assert_eq!(image, GwaElement::from_poly(&algebra, expected));
    }

    #[test]
    fn x_on_generator_powers_matches_eigenvalue_form() {
        let (algebra, _, spec) = quantum_plane_setup();
        let field = algebra.field();
        for k in 1..=4u64 {
            let vk = GwaElement::monomial(&algebra, TPoly::one(field), -(k as i64));
            let expected = GwaElement::monomial(
                &algebra,
                spec.alpha22().scale(&v_power_eigenvalue(&algebra, &spec, k)),
                -(k as i64),
            );
            assert_eq!(apply_x(&algebra, &spec, &vk), expected);
            let uk = GwaElement::monomial(&algebra, TPoly::one(field), k as i64);
            let expected = GwaElement::monomial(
                &algebra,
                spec.alpha11().scale(&u_power_eigenvalue(&algebra, &spec, k)),
                k as i64,
            );
            assert_eq!(apply_x(&algebra, &spec, &uk), expected);
        }
    }

    #[test]
    fn quantum_plane_action_passes_every_check() {
        let (algebra, taft, spec) = quantum_plane_setup();
        let report = verify_module_algebra(&algebra, &taft, &spec);
        for check in report.checks() {
            assert!(check.passed, "{} failed: {:?}", check.name, check.witness);
        }
        assert!(report.passed());
        let cert = is_inner_faithful(&algebra, &taft, &spec).unwrap();
        assert!(cert.inner_faithful);
        assert!(cert.detail.contains("order 3"));
    }

    #[test]
    fn report_lists_each_check_once() {
        let (algebra, taft, spec) = quantum_plane_setup();
        let report = verify_module_algebra(&algebra, &taft, &spec);
        assert_eq!(report.checks().len(), CheckName::ALL.len());
        for name in CheckName::ALL {
            assert_eq!(
                report.checks().iter().filter(|c| c.name == name).count(),
                1
            );
        }
    }

    #[test]
    fn gamma_one_spec_fails_skew_commutation() {
        let field = AmbientField::new(6);
        let q = field.zeta_pow(2);
        let algebra = GwaAlgebra::new(&field, q.clone(), TPoly::t(&field)).unwrap();
        let taft = TaftAlgebra::new(3, 3, q).unwrap();
        let phi = TPoly::monomial(field.one(), 2);
        let spec = ActionSpec::eta(&algebra, field.one(), field.one(), phi).unwrap();
        let report = verify_module_algebra(&algebra, &taft, &spec);
        assert!(!report.passed());
        let bad = report.get(CheckName::SkewCommutationT);
        assert!(!bad.passed);
        assert!(bad.witness.is_some());
        assert!(is_inner_faithful(&algebra, &taft, &spec).is_err());
    }

    #[test]
    fn nilpotency_mutant_is_detected() {
        let field = AmbientField::new(6);
        let q = field.zeta_pow(2);
        let algebra = GwaAlgebra::new(&field, q.clone(), TPoly::t(&field)).unwrap();
        let taft = TaftAlgebra::new(6, 3, q.clone()).unwrap();
        let phi = TPoly::monomial(field.one(), 2);
        let spec = ActionSpec::eta(&algebra, q, field.integer(-1), phi).unwrap();
        let report = verify_module_algebra(&algebra, &taft, &spec);
        assert!(report.get(CheckName::GOrder).passed);
        assert!(report.get(CheckName::RelationVuh).passed);
        assert!(report.get(CheckName::XNilpotentT).passed);
        assert!(!report.get(CheckName::XNilpotentU).passed);
        assert!(!report.get(CheckName::XNilpotentV).passed);
    }

    #[test]
    fn multiclass_support_breaks_g_relations() {
        let field = AmbientField::new(6);
        let q = field.zeta_pow(2);
        let h = TPoly::from_terms(&field, &[(3, field.one()), (1, field.one())]);
        let algebra = GwaAlgebra::new(&field, q.clone(), h).unwrap();
        let taft = TaftAlgebra::new(3, 3, q.clone()).unwrap();
        let phi = TPoly::monomial(field.one(), 2);
        let spec = ActionSpec::eta(&algebra, q, field.one(), phi).unwrap();
        let report = verify_module_algebra(&algebra, &taft, &spec);
        let bad = report.get(CheckName::GRespectsRelations);
        assert!(!bad.passed);
        assert!(bad.witness.as_deref().unwrap().contains("vu = h(t)"));
    }

    #[test]
    fn scaling_factor_on_u_ignores_support_choice_when_valid() {
        let field = AmbientField::new(2);
        let gamma = field.integer(-1);
        let h = TPoly::from_terms(&field, &[(3, field.one()), (1, field.one())]);
        let ell = h.ell_invariant().unwrap();
        assert_eq!(ell, 2);
        assert!(gamma.pow(ell as i64).unwrap().is_one());
        for e in h.support() {
            assert_eq!(gamma.pow(e as i64).unwrap(), gamma.pow(3).unwrap());
        }
    }

    #[test]
    fn skew_commutation_holds_on_monomials_for_valid_spec() {
        let (algebra, taft, spec) = quantum_plane_setup();
        let field = algebra.field();
        let lambda = GwaElement::scalar(&algebra, taft.lambda().clone());
        for grade in -3i64..=3 {
            for e in 0..=3u64 {
                let w = GwaElement::monomial(&algebra, TPoly::monomial(field.one(), e), grade);
                let lhs = apply_g(&algebra, &spec, &apply_x(&algebra, &spec, &w));
                let rhs = &lambda * &apply_x(&algebra, &spec, &apply_g(&algebra, &spec, &w));
                assert_eq!(lhs, rhs);
            }
        }
    }

    #[test]
    fn order_of_eta_takes_lcms() {
        let field = AmbientField::new(30);
        let algebra = GwaAlgebra::new(&field, field.zeta(), TPoly::t(&field)).unwrap();
        let gamma3 = field.zeta_pow(10);
        let mu5 = field.zeta_pow(6);
        assert_eq!(order_of_eta(&algebra, &gamma3, &field.one()).unwrap(), 3);
        assert_eq!(order_of_eta(&algebra, &gamma3, &mu5).unwrap(), 15);
        assert_eq!(order_of_eta(&algebra, &field.one(), &field.one()).unwrap(), 1);
        assert!(order_of_eta(&algebra, &field.integer(2), &field.one()).is_err());
    }

    #[test]
    fn omega_spec_swaps_generators() {
        let field = AmbientField::new(2);
        let q = field.integer(-1);
        let h = TPoly::monomial(field.one(), 2);
        let algebra = GwaAlgebra::new(&field, q, h).unwrap();
        let spec = ActionSpec::omega(&algebra, field.one(), TPoly::one(&field)).unwrap();
        assert_eq!(spec.sign(), Some(1));
        let u = GwaElement::gen_u(&algebra);
        let v = GwaElement::gen_v(&algebra);
        let t = GwaElement::gen_t(&algebra);
        assert_eq!(apply_g(&algebra, &spec, &u), v);
        assert_eq!(apply_g(&algebra, &spec, &v), u);
        assert_eq!(apply_g(&algebra, &spec, &t), t);
        assert_eq!(g_action_order(&algebra, &spec, 16), Some(2));
    }

    #[test]
    fn sweedler_style_omega_action_verifies() {
        let field = AmbientField::new(2);
        let q = field.integer(-1);
        let h = TPoly::monomial(field.one(), 2);
        let algebra = GwaAlgebra::new(&field, q, h).unwrap();
        let taft = TaftAlgebra::new(2, 2, field.integer(-1)).unwrap();
        let spec = ActionSpec::omega(&algebra, field.one(), TPoly::one(&field)).unwrap();
        let report = verify_module_algebra(&algebra, &taft, &spec);
        for check in report.checks() {
            if check.name == CheckName::Graded {
                assert!(!check.passed);
            } else {
                assert!(check.passed, "{} failed: {:?}", check.name, check.witness);
            }
        }
        assert!(report.passed());
        let cert = is_inner_faithful(&algebra, &taft, &spec).unwrap();
        assert!(cert.inner_faithful);
    }

    #[test]
    fn omega_requires_q_minus_one_and_twist_symmetry() {
        let field = AmbientField::new(6);
        let q3 = field.zeta_pow(2);
        let algebra = GwaAlgebra::new(&field, q3, TPoly::t(&field)).unwrap();
        assert!(ActionSpec::omega(&algebra, field.one(), TPoly::one(&field)).is_err());
        let field2 = AmbientField::new(2);
        let algebra2 = GwaAlgebra::new(
            &field2,
            field2.integer(-1),
            TPoly::monomial(field2.one(), 2),
        )
        .unwrap();
        let asym = TPoly::from_terms(&field2, &[(2, field2.one()), (1, field2.one())]);
        assert!(ActionSpec::omega(&algebra2, field2.one(), asym).is_err());
        let odd = TPoly::monomial(field2.one(), 3);
        let spec = ActionSpec::omega(&algebra2, field2.one(), odd).unwrap();
        assert_eq!(spec.sign(), Some(-1));
    }
}
