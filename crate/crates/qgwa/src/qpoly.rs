//! Sparse polynomials in t over the ambient field, plus the q-calculus.
//!
//! [`TPoly`] stores exponent -> coefficient with no zero coefficients, so
//! equality is structural and the zero polynomial is the empty map (its
//! degree is None, a distinguished value rather than a sentinel number).
//!
//! The calculus operations:
//!
//! - gamma-number [k]_gamma = 1 + gamma + ... + gamma^{k-1},
//! - gamma-derivative delta(t^k) = [k]_gamma t^{k-1}, which for gamma != 1
//!   equals (f(t) - f(gamma t)) / (t - gamma t) and for gamma = 1 is d/dt,
//! - twist f(t) -> f(c t),
//! - shift_trunc f -> f^{(k)}, dropping the k lowest coefficients and
//!   shifting the rest down.
//!
//! The gamma-derivative satisfies both Leibniz forms
//! delta(fg) = f(gamma t) delta(g) + delta(f) g
//!           = f delta(g) + delta(f) g(gamma t)
//! and is nilpotent of index ord(gamma) on polynomials; these are exercised
//! by the property tests.

use std::collections::BTreeMap;
use std::fmt;

use num_integer::Integer;
use num_traits::One;

use crate::error::{Error, Result};
use crate::scalars::{CycloNum, Field, Rat};

/// Sparse polynomial in t with exact cyclotomic coefficients.
#[derive(Clone)]
pub struct TPoly {
    field: Field,
    terms: BTreeMap<u64, CycloNum>,
}

impl TPoly {
    /// The zero polynomial.
    pub fn zero(field: &Field) -> TPoly {
        TPoly {
            field: field.clone(),
            terms: BTreeMap::new(),
        }
    }

    /// The constant polynomial one.
    pub fn one(field: &Field) -> TPoly {
        TPoly::constant(field.one())
    }

    /// The monomial t.
    pub fn t(field: &Field) -> TPoly {
        TPoly::monomial(field.one(), 1)
    }

    /// A constant polynomial.
    pub fn constant(c: CycloNum) -> TPoly {
        TPoly::monomial(c, 0)
    }

    /// c * t^e.
    pub fn monomial(c: CycloNum, e: u64) -> TPoly {
        let field = c.field().clone();
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(e, c);
        }
        TPoly { field, terms }
    }

    /// Builds a polynomial from exponent/coefficient pairs (zero
    /// coefficients are dropped, repeated exponents are summed).
    pub fn from_terms(field: &Field, pairs: &[(u64, CycloNum)]) -> TPoly {
        let mut out = TPoly::zero(field);
        for (e, c) in pairs {
            out.add_term(*e, c.clone());
        }
        out
    }

    fn add_term(&mut self, e: u64, c: CycloNum) {
        if c.is_zero() {
            return;
        }
        match self.terms.remove(&e) {
            None => {
                self.terms.insert(e, c);
            }
            Some(old) => {
                let sum = &old + &c;
                if !sum.is_zero() {
                    self.terms.insert(e, sum);
                }
            }
        }
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Degree, or None for the zero polynomial.
    pub fn degree(&self) -> Option<u64> {
        self.terms.keys().next_back().copied()
    }

    /// Smallest exponent in the support, or None for zero.
    pub fn min_exponent(&self) -> Option<u64> {
        self.terms.keys().next().copied()
    }

    /// Coefficient of t^e (zero if absent).
    pub fn coeff(&self, e: u64) -> CycloNum {
        self.terms.get(&e).cloned().unwrap_or_else(|| self.field.zero())
    }

    /// Leading coefficient, or None for zero.
    pub fn leading_coeff(&self) -> Option<&CycloNum> {
        self.terms.values().next_back()
    }

    /// Exponents with nonzero coefficient, ascending.
    pub fn support(&self) -> Vec<u64> {
        self.terms.keys().copied().collect()
    }

    /// Iterates (exponent, coefficient) pairs in ascending exponent order.
    pub fn iter(&self) -> impl Iterator<Item = (u64, &CycloNum)> {
        self.terms.iter().map(|(e, c)| (*e, c))
    }

    /// Scalar multiple.
    pub fn scale(&self, c: &CycloNum) -> TPoly {
        if c.is_zero() {
            return TPoly::zero(&self.field);
        }
        let terms = self.terms.iter().map(|(e, a)| (*e, a * c)).collect();
        TPoly {
            field: self.field.clone(),
            terms,
        }
    }

    /// Multiplies by t^e.
    pub fn mul_t_power(&self, e: u64) -> TPoly {
        let terms = self.terms.iter().map(|(k, c)| (k + e, c.clone())).collect();
        TPoly {
            field: self.field.clone(),
            terms,
        }
    }

    /// The twist f(t) -> f(c t).
    pub fn twist(&self, c: &CycloNum) -> TPoly {
        let mut out = TPoly::zero(&self.field);
        for (e, a) in &self.terms {
            let factor = c.pow(*e as i64).expect("twist scalar power");
            out.add_term(*e, a * &factor);
        }
        out
    }

    /// f^{(k)}: drops the k lowest coefficients and shifts the rest down,
    /// sum_i f_{i+k} t^i.
    pub fn shift_trunc(&self, k: u64) -> TPoly {
        let mut out = TPoly::zero(&self.field);
        for (e, a) in &self.terms {
            if *e >= k {
                out.add_term(e - k, a.clone());
            }
        }
        out
    }

    /// The gamma-derivative: t^k -> [k]_gamma t^{k-1}.
    pub fn gamma_derivative(&self, gamma: &CycloNum) -> TPoly {
        let mut out = TPoly::zero(&self.field);
        for (e, a) in &self.terms {
            if *e == 0 {
                continue;
            }
            let factor = gamma_number(*e, gamma);
            out.add_term(e - 1, &factor * a);
        }
        out
    }

    /// Substitutes t -> t^k (exponent inflation). Requires k >= 1.
    pub fn inflate(&self, k: u64) -> TPoly {
        assert!(k >= 1, "inflate requires a positive factor");
        let terms = self.terms.iter().map(|(e, c)| (e * k, c.clone())).collect();
        TPoly {
            field: self.field.clone(),
            terms,
        }
    }

    /// Inverse of [`TPoly::inflate`]: returns f with self = f(t^k) if every
    /// exponent is divisible by k, None otherwise. Requires k >= 1.
    pub fn deflate(&self, k: u64) -> Option<TPoly> {
        assert!(k >= 1, "deflate requires a positive factor");
        let mut out = TPoly::zero(&self.field);
        for (e, c) in &self.terms {
            if e % k != 0 {
                return None;
            }
            out.add_term(e / k, c.clone());
        }
        Some(out)
    }

    /// Evaluates at a scalar.
    pub fn eval(&self, x: &CycloNum) -> CycloNum {
        let mut acc = self.field.zero();
        for (e, c) in &self.terms {
            let p = x.pow(*e as i64).expect("evaluation power");
            acc = &acc + &(c * &p);
        }
        acc
    }

    /// The residue class of the support modulo m if the support is
    /// contained in a single class, None if it meets several classes.
    /// Errors on the zero polynomial. Requires m >= 1.
    pub fn support_class(&self, m: u64) -> Result<Option<u64>> {
        assert!(m >= 1, "support_class requires m >= 1");
        let mut classes = self.terms.keys().map(|e| e % m);
        let first = classes
            .next()
            .ok_or(Error::ZeroPolynomial("support class"))?;
        if classes.all(|c| c == first) {
            Ok(Some(first))
        } else {
            Ok(None)
        }
    }

    /// The gcd of all pairwise support differences; 0 for a monomial
    /// (no differences). Errors on the zero polynomial.
    pub fn ell_invariant(&self) -> Result<u64> {
        let support = self.support();
        let base = *support
            .first()
            .ok_or(Error::ZeroPolynomial("ell-invariant"))?;
        let mut g = 0u64;
        for e in &support[1..] {
            g = g.gcd(&(e - base));
        }
        Ok(g)
    }
}

impl PartialEq for TPoly {
    fn eq(&self, other: &Self) -> bool {
        self.field.order() == other.field.order() && self.terms == other.terms
    }
}

impl Eq for TPoly {}

impl fmt::Debug for TPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

impl std::ops::Add for &TPoly {
    type Output = TPoly;
    fn add(self, rhs: &TPoly) -> TPoly {
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(*e, c.clone());
        }
        out
    }
}

impl std::ops::Sub for &TPoly {
    type Output = TPoly;
    fn sub(self, rhs: &TPoly) -> TPoly {
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(*e, -c);
        }
        out
    }
}

impl std::ops::Neg for &TPoly {
    type Output = TPoly;
    fn neg(self) -> TPoly {
        let terms = self.terms.iter().map(|(e, c)| (*e, -c)).collect();
        TPoly {
            field: self.field.clone(),
            terms,
        }
    }
}

impl std::ops::Mul for &TPoly {
    type Output = TPoly;
    fn mul(self, rhs: &TPoly) -> TPoly {
        let mut out = TPoly::zero(&self.field);
        for (e1, c1) in &self.terms {
            for (e2, c2) in &rhs.terms {
                out.add_term(e1 + e2, c1 * c2);
            }
        }
        out
    }
}

impl fmt::Display for TPoly {
    /// Canonical form: terms in descending exponent, coefficients rendered
    /// as scalar literals, multi-term coefficients parenthesized.
    /// Examples: "t^3 + 1/2*t", "(z + 1)*t^2", "-t", "0".
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (e, c) in self.terms.iter().rev() {
            let (sign_neg, body) = coeff_body(c, *e > 0);
            if first {
                if sign_neg {
                    write!(f, "-")?;
                }
                first = false;
            } else if sign_neg {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let tpart = match e {
                0 => String::new(),
                1 => "t".to_string(),
                _ => format!("t^{}", e),
            };
            match (body.is_empty(), tpart.is_empty()) {
                (true, true) => write!(f, "1")?,
                (true, false) => write!(f, "{}", tpart)?,
                (false, true) => write!(f, "{}", body)?,
                (false, false) => write!(f, "{}*{}", body, tpart)?,
            }
        }
        Ok(())
    }
}

/// Renders a coefficient for use inside a product term. Returns
/// (sign_is_negative, body); an empty body means the factor 1 and
/// `has_suffix` tells whether a t- or u/v-part follows (a bare constant
/// must still print its magnitude).
pub(crate) fn coeff_body(c: &CycloNum, has_suffix: bool) -> (bool, String) {
    if let Some(r) = c.as_rational() {
        let neg = r < Rat::from_integer(0.into());
        let mag = if neg { -r } else { r };
        if mag.is_one() && has_suffix {
            return (neg, String::new());
        }
        return (neg, mag.to_string());
    }
    // Single basis term r*z^j: keep it unparenthesized with its sign out.
    let nonzero: Vec<(usize, &Rat)> = c
        .coeffs()
        .iter()
        .enumerate()
        .filter(|(_, r)| !num_traits::Zero::is_zero(*r))
        .collect();
    if nonzero.len() == 1 {
        let (j, r) = nonzero[0];
        let neg = r < &Rat::from_integer(0.into());
        let mag = if neg { -r.clone() } else { r.clone() };
        let zpart = if j == 1 {
            "z".to_string()
        } else {
            format!("z^{}", j)
        };
        let body = if mag.is_one() {
            zpart
        } else {
            format!("{}*{}", mag, zpart)
        };
        return (neg, body);
    }
    (false, format!("({})", c))
}

/// The gamma-number [k]_gamma = 1 + gamma + ... + gamma^{k-1}; equals
/// (1 - gamma^k) / (1 - gamma) when gamma != 1 and k when gamma = 1.
pub fn gamma_number(k: u64, gamma: &CycloNum) -> CycloNum {
    let field = gamma.field();
    let mut acc = field.zero();
    let mut p = field.one();
    for _ in 0..k {
        acc = &acc + &p;
        p = &p * gamma;
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalars::AmbientField;

    fn poly(field: &Field, pairs: &[(u64, i64)]) -> TPoly {
        let terms: Vec<(u64, CycloNum)> =
            pairs.iter().map(|&(e, c)| (e, field.integer(c))).collect();
        TPoly::from_terms(field, &terms)
    }

    #[test]
    fn gamma_number_examples() {
        let field = AmbientField::new(12);
        let zeta3 = field.zeta_pow(4);
        assert!(gamma_number(3, &zeta3).is_zero());
        assert!(gamma_number(2, &field.integer(-1)).is_zero());
        assert_eq!(gamma_number(4, &field.one()), field.integer(4));
    }

    #[test]
    fn gamma_derivative_examples() {
        let field = AmbientField::new(6);
        let f = poly(&field, &[(3, 1)]);
        let expected = poly(&field, &[(2, 3)]);
        assert_eq!(f.gamma_derivative(&field.one()), expected);

        let zeta3 = field.zeta_pow(2);
        let g = poly(&field, &[(3, 1), (6, 1)]);
        assert!(g.gamma_derivative(&zeta3).is_zero());
    }

    #[test]
    fn gamma_derivative_matches_difference_quotient() {
        let field = AmbientField::new(12);
        let gamma = field.zeta_pow(3);
        let f = poly(&field, &[(0, 2), (1, -1), (4, 3), (7, 5)]);
        // (f(t) - f(gamma t)) / ((1 - gamma) t), computed term by term.
        let numer = &f - &f.twist(&gamma);
        let scale = (&field.one() - &gamma).inv().unwrap();
        let expected = numer.shift_trunc(1).scale(&scale);
        assert_eq!(f.gamma_derivative(&gamma), expected);
    }

    #[test]
    fn twist_examples() {
        let field = AmbientField::new(6);
        let f = poly(&field, &[(2, 1), (0, 1)]);
        assert_eq!(f.twist(&field.one()), f);
        assert_eq!(f.twist(&field.integer(-1)), f);

        let g = TPoly::t(&field);
        let q = field.zeta();
        assert_eq!(g.twist(&q), TPoly::monomial(q.clone(), 1));
    }

    #[test]
    fn shift_trunc_examples() {
        let field = AmbientField::new(6);
        let f = poly(&field, &[(2, 1), (1, 2), (0, 3)]);
        assert_eq!(f.shift_trunc(1), poly(&field, &[(1, 1), (0, 2)]));
        let m = poly(&field, &[(5, 1)]);
        assert_eq!(m.shift_trunc(1), poly(&field, &[(4, 1)]));
        let c = poly(&field, &[(0, 3)]);
        assert!(c.shift_trunc(1).is_zero());
    }

    #[test]
    fn support_class_examples() {
        let field = AmbientField::new(6);
        let f = poly(&field, &[(5, 1), (2, 1)]);
        assert_eq!(f.support_class(3), Ok(Some(2)));
        let g = poly(&field, &[(2, 1), (1, 1)]);
        assert_eq!(g.support_class(3), Ok(None));
        let z = TPoly::zero(&field);
        assert_eq!(
            z.support_class(3),
            Err(Error::ZeroPolynomial("support class"))
        );
    }

    #[test]
    fn ell_invariant_examples() {
        let field = AmbientField::new(6);
        assert_eq!(poly(&field, &[(3, 1), (1, 1)]).ell_invariant(), Ok(2));
        assert_eq!(
            poly(&field, &[(4, 1), (2, 1), (0, 1)]).ell_invariant(),
            Ok(2)
        );
        assert_eq!(poly(&field, &[(7, 1)]).ell_invariant(), Ok(0));
        assert_eq!(
            TPoly::zero(&field).ell_invariant(),
            Err(Error::ZeroPolynomial("ell-invariant"))
        );
    }

    #[test]
    fn degree_of_zero_is_none() {
        let field = AmbientField::new(6);
        assert_eq!(TPoly::zero(&field).degree(), None);
        assert_eq!(poly(&field, &[(0, 5)]).degree(), Some(0));
    }

    #[test]
    fn leibniz_both_forms_spot() {
        let field = AmbientField::new(12);
        let gamma = field.zeta_pow(4);
        let f = poly(&field, &[(2, 1), (5, -3)]);
        let g = poly(&field, &[(1, 2), (3, 1), (0, 1)]);
        let prod = &f * &g;
        let d = prod.gamma_derivative(&gamma);
        let lhs1 = &(&f.twist(&gamma) * &g.gamma_derivative(&gamma))
            + &(&f.gamma_derivative(&gamma) * &g);
        let lhs2 = &(&f * &g.gamma_derivative(&gamma))
            + &(&f.gamma_derivative(&gamma) * &g.twist(&gamma));
        assert_eq!(d, lhs1);
        assert_eq!(d, lhs2);
    }

    #[test]
    fn nilpotency_spot() {
        let field = AmbientField::new(12);
        for (j, ord) in [(6, 2u64), (4, 3), (3, 4), (2, 6)] {
            let gamma = field.zeta_pow(j);
            assert_eq!(gamma.root_order(), Some(ord));
            let mut f = poly(&field, &[(0, 1), (1, 1), (2, 1), (3, 1), (4, 1), (5, 1)]);
            for _ in 0..ord {
                f = f.gamma_derivative(&gamma);
            }
            assert!(f.is_zero(), "delta^{} not zero for ord {}", ord, ord);
        }
    }

    #[test]
    fn single_class_derivative_shortcut() {
        // For supp(f) in one class mod ord(gamma) and deg f = k,
        // delta(f) = [k]_gamma f^(1).
        let field = AmbientField::new(12);
        let gamma = field.zeta_pow(4);
        let f = poly(&field, &[(7, 2), (4, -1), (1, 5)]);
        let k = f.degree().unwrap();
        let expected = f.shift_trunc(1).scale(&gamma_number(k, &gamma));
        assert_eq!(f.gamma_derivative(&gamma), expected);

        // Including the 0-in-support edge: [0]_gamma = 0 kills the shifted
        // constant term in exactly the right way.
        let g = poly(&field, &[(6, 1), (3, 1), (0, 1)]);
        let k = g.degree().unwrap();
        let expected = g.shift_trunc(1).scale(&gamma_number(k, &gamma));
        assert_eq!(g.gamma_derivative(&gamma), expected);
    }

    #[test]
    fn inflate_deflate_round_trip() {
        let field = AmbientField::new(6);
        let f = poly(&field, &[(0, 1), (2, 3)]);
        let g = f.inflate(3);
        assert_eq!(g.support(), vec![0, 6]);
        assert_eq!(g.deflate(3), Some(f));
        assert_eq!(g.deflate(4), None);
    }

    #[test]
    fn display_forms() {
        let field = AmbientField::new(6);
        assert_eq!(TPoly::zero(&field).to_string(), "0");
        assert_eq!(poly(&field, &[(3, 1), (1, -2)]).to_string(), "t^3 - 2*t");
        let f = &TPoly::monomial(field.zeta(), 2) + &poly(&field, &[(2, 1)]);
        assert_eq!(f.to_string(), "(z + 1)*t^2");
        let halft = TPoly::monomial(field.rational(crate::scalars::rat(1) / crate::scalars::rat(2)), 1);
        assert_eq!(halft.to_string(), "1/2*t");
    }
}
