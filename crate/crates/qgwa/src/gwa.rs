//! The quantum generalized Weyl algebra and its Z-graded normal form.
//!
//! A = k[t](u, v, sigma, h) is generated by t, u, v subject to
//!
//!   u t = q t u,   v t = q^{-1} t v,   v u = h(t),   u v = h(q t),
//!
//! where q is a root of unity of order at least 2 and h is a non-constant
//! polynomial. A is Z-graded with deg t = 0, deg u = 1, deg v = -1, and
//! every element has a unique normal form
//!
//!   sum_k f_k(t) * w_k,   w_k = u^k for k > 0, w_k = v^{-k} for k < 0.
//!
//! [`GwaElement`] stores exactly that map from grade to coefficient
//! polynomial. Multiplication straightens products with the closed forms
//! for u^i v^j and v^j u^i (products of twisted h's).
//!
//! [`word_reduce`] is an independent oracle: it rewrites free words in
//! {t, u, v} step by step with the four oriented rules above until no
//! redex remains. The two routes are implemented separately on purpose and
//! are compared against each other by the test suite.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::qpoly::{coeff_body, TPoly};
use crate::scalars::{CycloNum, Field};

/// Immutable description of one quantum GWA.
pub struct GwaAlgebra {
    field: Field,
    q: CycloNum,
    q_order: u64,
    h: TPoly,
    h_degree: u64,
    ell: u64,
}

/// Shared handle to a [`GwaAlgebra`].
pub type Algebra = Arc<GwaAlgebra>;

impl GwaAlgebra {
    /// Validates the defining data and builds the algebra.
    ///
    /// Requires q to be a root of unity of order >= 2 and h to be
    /// non-constant; the error identifies the failed condition.
    pub fn new(field: &Field, q: CycloNum, h: TPoly) -> Result<Algebra> {
        let q_order = match q.root_order() {
            None => {
                return Err(Error::InvalidAlgebra(format!(
                    "q = {} is not a root of unity",
                    q
                )))
            }
            Some(1) => {
                return Err(Error::InvalidAlgebra(
                    "q = 1 is excluded; q must have order at least 2".into(),
                ))
            }
            Some(ord) => ord,
        };
        let h_degree = match h.degree() {
            None => {
                return Err(Error::InvalidAlgebra(
                    "h is zero; it must be non-constant of positive degree".into(),
                ))
            }
            Some(0) => {
                return Err(Error::InvalidAlgebra(format!(
                    "h = {} is constant; it must have positive degree",
                    h
                )))
            }
            Some(d) => d,
        };
        let ell = h.ell_invariant().expect("nonzero h has an ell-invariant");
        Ok(Arc::new(GwaAlgebra {
            field: field.clone(),
            q,
            q_order,
            h,
            h_degree,
            ell,
        }))
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn q(&self) -> &CycloNum {
        &self.q
    }

    pub fn q_order(&self) -> u64 {
        self.q_order
    }

    pub fn h(&self) -> &TPoly {
        &self.h
    }

    /// deg h, written D throughout the crate.
    pub fn h_degree(&self) -> u64 {
        self.h_degree
    }

    /// The gcd of pairwise support differences of h; 0 for monomial h.
    pub fn ell(&self) -> u64 {
        self.ell
    }

    /// sigma^l(h) = h(q^l t).
    pub fn sigma_h(&self, l: i64) -> TPoly {
        self.h.twist(&self.q.pow(l).expect("q is invertible"))
    }

    /// q^l as a scalar.
    pub fn q_pow(&self, l: i64) -> CycloNum {
        self.q.pow(l).expect("q is invertible")
    }
}

impl fmt::Debug for GwaAlgebra {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GWA(q = {}, h = {})", self.q, self.h)
    }
}

/// An element of the algebra in Z-graded normal form.
#[derive(Clone)]
pub struct GwaElement {
    algebra: Algebra,
    components: BTreeMap<i64, TPoly>,
}

impl GwaElement {
    pub fn zero(algebra: &Algebra) -> GwaElement {
        GwaElement {
            algebra: algebra.clone(),
            components: BTreeMap::new(),
        }
    }

    pub fn one(algebra: &Algebra) -> GwaElement {
        GwaElement::from_poly(algebra, TPoly::one(&algebra.field))
    }

    /// Embeds a scalar.
    pub fn scalar(algebra: &Algebra, c: CycloNum) -> GwaElement {
        GwaElement::from_poly(algebra, TPoly::constant(c))
    }

    /// Embeds a polynomial in t (grade 0).
    pub fn from_poly(algebra: &Algebra, f: TPoly) -> GwaElement {
        GwaElement::monomial(algebra, f, 0)
    }

    /// f(t) * u^k for k > 0, f(t) * v^{-k} for k < 0, f(t) for k = 0.
    pub fn monomial(algebra: &Algebra, f: TPoly, grade: i64) -> GwaElement {
        let mut components = BTreeMap::new();
        if !f.is_zero() {
            components.insert(grade, f);
        }
        GwaElement {
            algebra: algebra.clone(),
            components,
        }
    }

    pub fn gen_t(algebra: &Algebra) -> GwaElement {
        GwaElement::from_poly(algebra, TPoly::t(&algebra.field))
    }

    pub fn gen_u(algebra: &Algebra) -> GwaElement {
        GwaElement::monomial(algebra, TPoly::one(&algebra.field), 1)
    }

    pub fn gen_v(algebra: &Algebra) -> GwaElement {
        GwaElement::monomial(algebra, TPoly::one(&algebra.field), -1)
    }

    pub fn algebra(&self) -> &Algebra {
        &self.algebra
    }

    pub fn is_zero(&self) -> bool {
        self.components.is_empty()
    }

    /// The coefficient polynomial of grade k (zero if absent).
    pub fn grade_component(&self, k: i64) -> TPoly {
        self.components
            .get(&k)
            .cloned()
            .unwrap_or_else(|| TPoly::zero(&self.algebra.field))
    }

    /// Grades with nonzero component, ascending.
    pub fn grades(&self) -> Vec<i64> {
        self.components.keys().copied().collect()
    }

    /// Iterates (grade, polynomial) pairs in ascending grade order.
    pub fn iter(&self) -> impl Iterator<Item = (i64, &TPoly)> {
        self.components.iter().map(|(k, f)| (*k, f))
    }

    /// Largest t-degree appearing in any component, or None for zero.
    pub fn t_degree(&self) -> Option<u64> {
        self.components
            .values()
            .filter_map(|f| f.degree())
            .max()
    }

    fn add_component(&mut self, grade: i64, f: TPoly) {
        if f.is_zero() {
            return;
        }
        match self.components.remove(&grade) {
            None => {
                self.components.insert(grade, f);
            }
            Some(old) => {
                let sum = &old + &f;
                if !sum.is_zero() {
                    self.components.insert(grade, sum);
                }
            }
        }
    }

    pub fn scale(&self, c: &CycloNum) -> GwaElement {
        if c.is_zero() {
            return GwaElement::zero(&self.algebra);
        }
        let components = self
            .components
            .iter()
            .map(|(k, f)| (*k, f.scale(c)))
            .collect();
        GwaElement {
            algebra: self.algebra.clone(),
            components,
        }
    }

    /// Repeated multiplication.
    pub fn pow(&self, e: u64) -> GwaElement {
        let mut result = GwaElement::one(&self.algebra);
        for _ in 0..e {
            result = &result * self;
        }
        result
    }

    fn assert_same_algebra(&self, other: &GwaElement) {
        assert!(
            Arc::ptr_eq(&self.algebra, &other.algebra)
                || (self.algebra.q == other.algebra.q && self.algebra.h == other.algebra.h),
            "elements from different algebras"
        );
    }
}

impl PartialEq for GwaElement {
    fn eq(&self, other: &Self) -> bool {
        self.components == other.components
    }
}

impl Eq for GwaElement {}

impl std::ops::Add for &GwaElement {
    type Output = GwaElement;
    fn add(self, rhs: &GwaElement) -> GwaElement {
        self.assert_same_algebra(rhs);
        let mut out = self.clone();
        for (k, f) in &rhs.components {
            out.add_component(*k, f.clone());
        }
        out
    }
}

impl std::ops::Sub for &GwaElement {
    type Output = GwaElement;
    fn sub(self, rhs: &GwaElement) -> GwaElement {
        self.assert_same_algebra(rhs);
        let mut out = self.clone();
        for (k, f) in &rhs.components {
            out.add_component(*k, -f);
        }
        out
    }
}

impl std::ops::Neg for &GwaElement {
    type Output = GwaElement;
    fn neg(self) -> GwaElement {
        let components = self.components.iter().map(|(k, f)| (*k, -f)).collect();
        GwaElement {
            algebra: self.algebra.clone(),
            components,
        }
    }
}

impl std::ops::Mul for &GwaElement {
    type Output = GwaElement;
    /// Closed-form straightening. For components f(t) w_k and g(t) w_l the
    /// product is f(t) g(q^k t) c_{k,l}(t) w_{k+l}, where c_{k,l} collects
    /// the twisted h-factors released when w_k passes w_l:
    ///
    ///   u^i v^j = prod_{s=i-j+1}^{i} h(q^s t) u^{i-j}        (i >= j)
    ///   u^i v^j = prod_{s=1}^{i} h(q^s t) v^{j-i}            (i <  j)
    ///   v^j u^i = prod_{s=0}^{j-1} h(q^{-s} t) u^{i-j}       (i >= j)
    ///   v^j u^i = prod_{s=j-i}^{j-1} h(q^{-s} t) v^{j-i}     (i <  j)
    fn mul(self, rhs: &GwaElement) -> GwaElement {
        self.assert_same_algebra(rhs);
        let algebra = &self.algebra;
        let mut out = GwaElement::zero(algebra);
        for (&k, f) in &self.components {
            for (&l, g) in &rhs.components {
                let mut poly = f * &g.twist(&algebra.q_pow(k));
                if !(k >= 0 && l >= 0 || k <= 0 && l <= 0) {
                    poly = &poly * &transition(algebra, k, l);
                }
                out.add_component(k + l, poly);
            }
        }
        out
    }
}

/// The polynomial c_{k,l} with w_k w_l = c_{k,l}(t) w_{k+l}, for k, l of
/// opposite signs.
fn transition(algebra: &Algebra, k: i64, l: i64) -> TPoly {
    let mut prod = TPoly::one(&algebra.field);
    if k > 0 && l < 0 {
        let i = k;
        let j = -l;
        let range = if i >= j { i - j + 1..=i } else { 1..=i };
        for s in range {
            prod = &prod * &algebra.sigma_h(s);
        }
    } else if k < 0 && l > 0 {
        let j = -k;
        let i = l;
        let range = if i >= j { 0..=j - 1 } else { j - i..=j - 1 };
        for s in range {
            prod = &prod * &algebra.sigma_h(-s);
        }
    }
    prod
}

impl fmt::Display for GwaElement {
    /// Canonical form: grades descending (u-powers first, then the grade-0
    /// part, then v-powers), t-exponents descending within a grade.
    /// Examples: "3*t^2*u + v", "t - 1", "0".
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, poly) in self.components.iter().rev() {
            let wpart = match *k {
                0 => String::new(),
                1 => "u".to_string(),
                -1 => "v".to_string(),
                k if k > 1 => format!("u^{}", k),
                k => format!("v^{}", -k),
            };
            for (e, c) in poly.iter().collect::<Vec<_>>().into_iter().rev() {
                let tpart = match e {
                    0 => String::new(),
                    1 => "t".to_string(),
                    _ => format!("t^{}", e),
                };
                let (neg, body) = coeff_body(c, !(tpart.is_empty() && wpart.is_empty()));
                if first {
                    if neg {
                        write!(f, "-")?;
                    }
                    first = false;
                } else if neg {
                    write!(f, " - ")?;
                } else {
                    write!(f, " + ")?;
                }
                let mut pieces: Vec<&str> = Vec::new();
                if !body.is_empty() {
                    pieces.push(&body);
                }
                if !tpart.is_empty() {
                    pieces.push(&tpart);
                }
                if !wpart.is_empty() {
                    pieces.push(&wpart);
                }
                if pieces.is_empty() {
                    write!(f, "1")?;
                } else {
                    write!(f, "{}", pieces.join("*"))?;
                }
            }
        }
        Ok(())
    }
}

impl fmt::Debug for GwaElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

/// A letter of a free word in the generators.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Letter {
    T,
    U,
    V,
}

impl Letter {
    /// Parses a word like "vut" (whitespace allowed).
    pub fn parse_word(s: &str) -> Result<Vec<Letter>> {
        let mut out = Vec::new();
        for (i, ch) in s.chars().enumerate() {
            match ch {
                't' => out.push(Letter::T),
                'u' => out.push(Letter::U),
                'v' => out.push(Letter::V),
                c if c.is_whitespace() => {}
                c => {
                    return Err(Error::Parse {
                        line: 1,
                        col: i + 1,
                        msg: format!("invalid word letter '{}'", c),
                    })
                }
            }
        }
        Ok(out)
    }
}

/// Reduces a free word in {t, u, v} to normal form by single-step
/// rewriting, independently of the closed-form multiplication.
///
/// The oriented rules are applied at the leftmost redex until none
/// remains:
///
///   u t -> q (t u)        v t -> q^{-1} (t v)
///   u v -> h(q t)         v u -> h(t)
///
/// Each h-rule replaces the pair by one word c t^e per term of h, so the
/// worklist tracks scalar-weighted words. Termination: the pair
/// (#\{u,v\}-letters, #inversions of a t after a u/v) drops
/// lexicographically at every step.
pub fn word_reduce(algebra: &Algebra, word: &[Letter]) -> GwaElement {
    let mut result = GwaElement::zero(algebra);
    let mut work: Vec<(CycloNum, Vec<Letter>)> =
        vec![(algebra.field.one(), word.to_vec())];
    while let Some((coeff, w)) = work.pop() {
        match find_redex(&w) {
            None => {
                result = &result + &normal_word_element(algebra, &coeff, &w);
            }
            Some(i) => match (w[i], w[i + 1]) {
                (Letter::U, Letter::T) => {
                    let mut nw = w.clone();
                    nw.swap(i, i + 1);
                    work.push((&coeff * &algebra.q_pow(1), nw));
                }
                (Letter::V, Letter::T) => {
                    let mut nw = w.clone();
                    nw.swap(i, i + 1);
                    work.push((&coeff * &algebra.q_pow(-1), nw));
                }
                (Letter::U, Letter::V) => {
                    expand_h(algebra, &coeff, &w, i, true, &mut work);
                }
                (Letter::V, Letter::U) => {
                    expand_h(algebra, &coeff, &w, i, false, &mut work);
                }
                _ => unreachable!("find_redex returned a non-redex"),
            },
        }
    }
    result
}

/// Replaces w[i], w[i+1] (a uv or vu pair) by the terms of h(qt) or h(t).
fn expand_h(
    algebra: &Algebra,
    coeff: &CycloNum,
    w: &[Letter],
    i: usize,
    twisted: bool,
    work: &mut Vec<(CycloNum, Vec<Letter>)>,
) {
    let poly = if twisted {
        algebra.h.twist(&algebra.q)
    } else {
        algebra.h.clone()
    };
    for (e, c) in poly.iter() {
        let mut nw = Vec::with_capacity(w.len() - 2 + e as usize);
        nw.extend_from_slice(&w[..i]);
        nw.extend(std::iter::repeat(Letter::T).take(e as usize));
        nw.extend_from_slice(&w[i + 2..]);
        work.push((coeff * c, nw));
    }
}

fn find_redex(w: &[Letter]) -> Option<usize> {
    w.windows(2).position(|pair| {
        matches!(
            (pair[0], pair[1]),
            (Letter::U, Letter::T)
                | (Letter::V, Letter::T)
                | (Letter::U, Letter::V)
                | (Letter::V, Letter::U)
        )
    })
}

/// Converts a redex-free word c * t^a (u^b | v^b) into an element.
fn normal_word_element(algebra: &Algebra, coeff: &CycloNum, w: &[Letter]) -> GwaElement {
    let a = w.iter().take_while(|&&l| l == Letter::T).count();
    let rest = &w[a..];
    debug_assert!(
        rest.iter().all(|&l| l == rest[0]) && !rest.contains(&Letter::T),
        "word is not in normal form"
    );
    let grade = match rest.first() {
        None => 0,
        Some(Letter::U) => rest.len() as i64,
        Some(Letter::V) => -(rest.len() as i64),
        Some(Letter::T) => unreachable!(),
    };
    GwaElement::monomial(
        algebra,
        TPoly::monomial(coeff.clone(), a as u64),
        grade,
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalars::AmbientField;

    fn quantum_plane() -> Algebra {
        let field = AmbientField::new(6);
        let q = field.zeta_pow(2);
        GwaAlgebra::new(&field, q, TPoly::t(&field)).unwrap()
    }

    fn quantum_weyl() -> Algebra {
        let field = AmbientField::new(6);
        let q = field.zeta_pow(2);
        let h = &TPoly::t(&field) - &TPoly::one(&field);
        GwaAlgebra::new(&field, q, h).unwrap()
    }

    #[test]
    fn constructor_rejects_bad_data() {
        let field = AmbientField::new(6);
        let err = GwaAlgebra::new(&field, field.one(), TPoly::t(&field)).unwrap_err();
        assert!(matches!(err, Error::InvalidAlgebra(ref msg) if msg.contains("q")));

        let err = GwaAlgebra::new(&field, field.integer(2), TPoly::t(&field)).unwrap_err();
        assert!(matches!(err, Error::InvalidAlgebra(ref msg) if msg.contains("root of unity")));

        let err =
            GwaAlgebra::new(&field, field.integer(-1), TPoly::one(&field)).unwrap_err();
        assert!(matches!(err, Error::InvalidAlgebra(ref msg) if msg.contains("constant")));

        let err =
            GwaAlgebra::new(&field, field.integer(-1), TPoly::zero(&field)).unwrap_err();
        assert!(matches!(err, Error::InvalidAlgebra(ref msg) if msg.contains("zero")));
    }

    #[test]
    fn defining_relations_hold_in_normal_form() {
        for algebra in [quantum_plane(), quantum_weyl()] {
            let t = GwaElement::gen_t(&algebra);
            let u = GwaElement::gen_u(&algebra);
            let v = GwaElement::gen_v(&algebra);
            let q = algebra.q().clone();

            let vu = &v * &u;
            assert_eq!(vu, GwaElement::from_poly(&algebra, algebra.h().clone()));

            let uv = &u * &v;
            assert_eq!(
                uv,
                GwaElement::from_poly(&algebra, algebra.h().twist(&q))
            );

            let ut = &u * &t;
            assert_eq!(ut, (&t * &u).scale(&q));

            let vt = &v * &t;
            assert_eq!(vt, (&t * &v).scale(&q.inv().unwrap()));
        }
    }

    #[test]
    fn uu_v_reduces_to_twisted_monomial() {
        // In the quantum plane with q = zeta_3: u^2 v = q^2 t u.
        let algebra = quantum_plane();
        let u = GwaElement::gen_u(&algebra);
        let v = GwaElement::gen_v(&algebra);
        let lhs = &(&u * &u) * &v;
        let expected = GwaElement::monomial(
            &algebra,
            TPoly::monomial(algebra.q_pow(2), 1),
            1,
        );
        assert_eq!(lhs, expected);
    }

    #[test]
    fn word_reduce_examples() {
        for algebra in [quantum_plane(), quantum_weyl()] {
            // vut -> h(t) t
            let w = Letter::parse_word("vut").unwrap();
            let expected =
                GwaElement::from_poly(&algebra, &algebra.h().clone() * &TPoly::t(algebra.field()));
            assert_eq!(word_reduce(&algebra, &w), expected);

            // tu is already normal
            let w = Letter::parse_word("tu").unwrap();
            let expected =
                GwaElement::monomial(&algebra, TPoly::t(algebra.field()), 1);
            assert_eq!(word_reduce(&algebra, &w), expected);
        }

        // uv in the quantum plane is q t
        let algebra = quantum_plane();
        let w = Letter::parse_word("uv").unwrap();
        let expected = GwaElement::from_poly(
            &algebra,
            TPoly::monomial(algebra.q_pow(1), 1),
        );
        assert_eq!(word_reduce(&algebra, &w), expected);
    }

    #[test]
    fn closed_form_matches_oracle_on_mixed_powers() {
        let field = AmbientField::new(12);
        let configs = [
            (field.zeta_pow(4), TPoly::t(&field)),
            (field.integer(-1), TPoly::monomial(field.one(), 2)),
            (
                field.zeta_pow(3),
                &TPoly::t(&field) - &TPoly::one(&field),
            ),
        ];
        for (q, h) in configs {
            let algebra = GwaAlgebra::new(&field, q, h).unwrap();
            let u = GwaElement::gen_u(&algebra);
            let v = GwaElement::gen_v(&algebra);
            for i in 0..=4u64 {
                for j in 0..=4u64 {
                    let mut word = vec![Letter::U; i as usize];
                    word.extend(vec![Letter::V; j as usize]);
                    let closed = &u.pow(i) * &v.pow(j);
                    assert_eq!(
                        closed,
                        word_reduce(&algebra, &word),
                        "u^{} v^{} mismatch",
                        i,
                        j
                    );

                    let mut word = vec![Letter::V; j as usize];
                    word.extend(vec![Letter::U; i as usize]);
                    let closed = &v.pow(j) * &u.pow(i);
                    assert_eq!(
                        closed,
                        word_reduce(&algebra, &word),
                        "v^{} u^{} mismatch",
                        j,
                        i
                    );
                }
            }
        }
    }

    #[test]
    fn grade_component_examples() {
        let algebra = quantum_plane();
        let u = GwaElement::gen_u(&algebra);
        let v = GwaElement::gen_v(&algebra);
        let t = GwaElement::gen_t(&algebra);
        let e = &(&(&t * &t) * &u).scale(&algebra.field().integer(3)) + &v;
        assert_eq!(
            e.grade_component(1),
            TPoly::monomial(algebra.field().integer(3), 2)
        );
        assert_eq!(e.grade_component(-1), TPoly::one(algebra.field()));
        assert!(e.grade_component(0).is_zero());
        assert!(GwaElement::zero(&algebra).grade_component(2).is_zero());
    }

    #[test]
    fn associativity_spot_checks() {
        let algebra = quantum_weyl();
        let u = GwaElement::gen_u(&algebra);
        let v = GwaElement::gen_v(&algebra);
        let t = GwaElement::gen_t(&algebra);
        let a = &(&u * &u) + &t;
        let b = &(&v * &t) + &GwaElement::one(&algebra);
        let c = &(&v * &v) - &(&t * &u);
        let left = &(&a * &b) * &c;
        let right = &a * &(&b * &c);
        assert_eq!(left, right);
    }

    #[test]
    fn display_forms() {
        let algebra = quantum_weyl();
        let u = GwaElement::gen_u(&algebra);
        let v = GwaElement::gen_v(&algebra);
        let t = GwaElement::gen_t(&algebra);
        assert_eq!(GwaElement::zero(&algebra).to_string(), "0");
        assert_eq!((&v * &u).to_string(), "t - 1");
        let e = &(&(&t * &t) * &u).scale(&algebra.field().integer(3)) + &v;
        assert_eq!(e.to_string(), "3*t^2*u + v");
        assert_eq!(
            GwaElement::monomial(&algebra, TPoly::one(algebra.field()), -3).to_string(),
            "v^3"
        );
    }
}
