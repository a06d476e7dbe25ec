//! Exact arithmetic in a fixed ambient cyclotomic field Q(zeta_N).
//!
//! Every scalar in the system is an element of Q(zeta_N) for one ambient N
//! chosen at session start, stored in the power basis 1, zeta, ...,
//! zeta^{phi(N)-1} fully reduced modulo the N-th cyclotomic polynomial.
//! Coefficients are exact rationals, so equality is coefficient-wise and
//! no rounding happens anywhere.
//!
//! Division is realized by extended Euclidean inversion against Phi_N and
//! every computed inverse is verified by multiplying back. Root-of-unity
//! detection tests a^j = 1 for j up to lcm(2, N); the roots of unity of
//! Q(zeta_N) are exactly +/- zeta_N^j, so the bound is sharp.

use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Exact rational number; the coefficient type for everything in the crate.
pub type Rat = BigRational;

/// Convenience constructor for small integer rationals.
pub fn rat(k: i64) -> Rat {
    BigRational::from_integer(BigInt::from(k))
}

/// The ambient field Q(zeta_N), shared by every scalar of a session.
///
/// Holds N and the modulus Phi_N as a dense monic coefficient vector
/// (ascending powers, exact rationals). The modulus has degree phi(N) and
/// divides x^N - 1 exactly.
pub struct AmbientField {
    n: u64,
    modulus: Vec<Rat>,
    degree: usize,
}

/// Shared handle to an [`AmbientField`].
pub type Field = Arc<AmbientField>;

impl AmbientField {
    /// Builds Q(zeta_N). Requires n >= 1.
    pub fn new(n: u64) -> Field {
        assert!(n >= 1, "ambient root-of-unity order must be positive");
        let modulus = cyclotomic_polynomial(n);
        let degree = modulus.len() - 1;
        Arc::new(AmbientField { n, modulus, degree })
    }

    /// The ambient order N.
    pub fn order(&self) -> u64 {
        self.n
    }

    /// phi(N), the degree of the modulus and the length of coefficient
    /// vectors.
    pub fn degree(&self) -> usize {
        self.degree
    }

    /// The modulus Phi_N as dense ascending coefficients.
    pub fn modulus(&self) -> &[Rat] {
        &self.modulus
    }

    /// The zero scalar.
    pub fn zero(self: &Arc<Self>) -> CycloNum {
        CycloNum {
            field: self.clone(),
            coeffs: vec![Rat::zero(); self.degree],
        }
    }

    /// The scalar one.
    pub fn one(self: &Arc<Self>) -> CycloNum {
        self.integer(1)
    }

    /// Embeds a small integer.
    pub fn integer(self: &Arc<Self>, k: i64) -> CycloNum {
        self.rational(rat(k))
    }

    /// Embeds an exact rational.
    pub fn rational(self: &Arc<Self>, r: Rat) -> CycloNum {
        let mut coeffs = vec![Rat::zero(); self.degree];
        coeffs[0] = r;
        CycloNum {
            field: self.clone(),
            coeffs,
        }
    }

    /// The primitive root zeta_N.
    pub fn zeta(self: &Arc<Self>) -> CycloNum {
        self.zeta_pow(1)
    }

    /// zeta_N^j for any integer j (reduced mod N).
    pub fn zeta_pow(self: &Arc<Self>, j: i64) -> CycloNum {
        let n = self.n as i64;
        let e = j.rem_euclid(n) as usize;
        let mut dense = vec![Rat::zero(); e + 1];
        dense[e] = Rat::one();
        CycloNum::from_dense(self, dense)
    }

    /// All roots of unity contained in Q(zeta_N): zeta_N^j for even N,
    /// and additionally their negatives when N is odd. Deterministic order.
    pub fn roots_of_unity(self: &Arc<Self>) -> Vec<CycloNum> {
        let mut out: Vec<CycloNum> = (0..self.n).map(|j| self.zeta_pow(j as i64)).collect();
        if self.n % 2 != 0 {
            let negs: Vec<CycloNum> = out.iter().map(|z| -z).collect();
            out.extend(negs);
        }
        out
    }
}

impl fmt::Debug for AmbientField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Q(zeta_{})", self.n)
    }
}

/// An exact element of Q(zeta_N) in the reduced power basis.
#[derive(Clone)]
pub struct CycloNum {
    field: Field,
    coeffs: Vec<Rat>,
}

impl CycloNum {
    fn from_dense(field: &Field, mut dense: Vec<Rat>) -> CycloNum {
        reduce_mod(&mut dense, &field.modulus);
        dense.resize(field.degree, Rat::zero());
        CycloNum {
            field: field.clone(),
            coeffs: dense,
        }
    }

    /// The ambient field handle.
    pub fn field(&self) -> &Field {
        &self.field
    }

    /// Reduced power-basis coefficients, length phi(N).
    pub fn coeffs(&self) -> &[Rat] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Rat::is_zero)
    }

    pub fn is_one(&self) -> bool {
        self.coeffs[0].is_one() && self.coeffs[1..].iter().all(Rat::is_zero)
    }

    /// Returns the value as a rational if it lies in Q.
    pub fn as_rational(&self) -> Option<Rat> {
        if self.coeffs[1..].iter().all(Rat::is_zero) {
            Some(self.coeffs[0].clone())
        } else {
            None
        }
    }

    /// Multiplicative inverse via the extended Euclidean algorithm against
    /// Phi_N, verified by multiplying back.
    pub fn inv(&self) -> Result<CycloNum> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let mut a = self.coeffs.clone();
        poly_trim(&mut a);
        let (g, s, _) = poly_ext_gcd(&a, &self.field.modulus);
        if g.len() != 1 {
            return Err(Error::Internal(
                "gcd with the cyclotomic modulus is not a constant".into(),
            ));
        }
        let scale = g[0].recip();
        let inv = CycloNum::from_dense(&self.field, s.iter().map(|c| c * &scale).collect());
        if !(&inv * self).is_one() {
            return Err(Error::Internal(
                "computed inverse failed the multiplication check".into(),
            ));
        }
        Ok(inv)
    }

    /// Exact division.
    pub fn div(&self, other: &CycloNum) -> Result<CycloNum> {
        Ok(self * &other.inv()?)
    }

    /// Integer power; negative exponents invert first (error on zero).
    pub fn pow(&self, e: i64) -> Result<CycloNum> {
        let base = if e < 0 { self.inv()? } else { self.clone() };
        Ok(base.pow_u64(e.unsigned_abs()))
    }

    fn pow_u64(&self, mut e: u64) -> CycloNum {
        let mut result = self.field.one();
        let mut base = self.clone();
        while e > 0 {
            if e & 1 == 1 {
                result = &result * &base;
            }
            base = &base * &base;
            e >>= 1;
        }
        result
    }

    /// The multiplicative order if this is a root of unity, None otherwise
    /// (in particular for zero). Tests a^j = 1 for j up to lcm(2, N).
    pub fn root_order(&self) -> Option<u64> {
        if self.is_zero() {
            return None;
        }
        let n = self.field.n;
        let bound = if n % 2 == 0 { n } else { 2 * n };
        let mut p = self.clone();
        for j in 1..=bound {
            if p.is_one() {
                return Some(j);
            }
            p = &p * self;
        }
        None
    }

    fn assert_same_field(&self, other: &CycloNum) {
        assert_eq!(
            self.field.n, other.field.n,
            "scalars from different ambient fields"
        );
    }
}

impl PartialEq for CycloNum {
    fn eq(&self, other: &Self) -> bool {
        self.field.n == other.field.n && self.coeffs == other.coeffs
    }
}

impl Eq for CycloNum {}

impl fmt::Debug for CycloNum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

impl fmt::Display for CycloNum {
    /// Canonical literal: basis terms in descending powers of z, joined
    /// with signs, coefficients as reduced rationals. Examples: "0", "-1",
    /// "z^2 + 1", "3/2*z^5".
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for j in (0..self.coeffs.len()).rev() {
            let c = &self.coeffs[j];
            if c.is_zero() {
                continue;
            }
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
                first = false;
            } else if c.is_negative() {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let mag = c.abs();
            if j == 0 {
                write!(f, "{}", mag)?;
            } else {
                if !mag.is_one() {
                    write!(f, "{}*", mag)?;
                }
                if j == 1 {
                    write!(f, "z")?;
                } else {
                    write!(f, "z^{}", j)?;
                }
            }
        }
        Ok(())
    }
}

impl std::ops::Add for &CycloNum {
    type Output = CycloNum;
    fn add(self, rhs: &CycloNum) -> CycloNum {
        self.assert_same_field(rhs);
        let coeffs = self
            .coeffs
            .iter()
            .zip(&rhs.coeffs)
            .map(|(a, b)| a + b)
            .collect();
        CycloNum {
            field: self.field.clone(),
            coeffs,
        }
    }
}

impl std::ops::Sub for &CycloNum {
    type Output = CycloNum;
    fn sub(self, rhs: &CycloNum) -> CycloNum {
        self.assert_same_field(rhs);
        let coeffs = self
            .coeffs
            .iter()
            .zip(&rhs.coeffs)
            .map(|(a, b)| a - b)
            .collect();
        CycloNum {
            field: self.field.clone(),
            coeffs,
        }
    }
}

impl std::ops::Neg for &CycloNum {
    type Output = CycloNum;
    fn neg(self) -> CycloNum {
        CycloNum {
            field: self.field.clone(),
            coeffs: self.coeffs.iter().map(|a| -a).collect(),
        }
    }
}

impl std::ops::Mul for &CycloNum {
    type Output = CycloNum;
    fn mul(self, rhs: &CycloNum) -> CycloNum {
        self.assert_same_field(rhs);
        if self.is_zero() || rhs.is_zero() {
            return self.field.zero();
        }
        let deg = self.field.degree;
        let mut dense = vec![Rat::zero(); 2 * deg - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                dense[i + j] += a * b;
            }
        }
        CycloNum::from_dense(&self.field, dense)
    }
}

/// The N-th cyclotomic polynomial Phi_N as dense ascending rational
/// coefficients, computed by dividing x^N - 1 by Phi_d for every proper
/// divisor d of N.
pub fn cyclotomic_polynomial(n: u64) -> Vec<Rat> {
    let mut acc = vec![Rat::zero(); (n + 1) as usize];
    acc[0] = -Rat::one();
    acc[n as usize] = Rat::one();
    for d in 1..n {
        if n % d == 0 {
            let phi_d = cyclotomic_polynomial(d);
            acc = poly_div_exact(&acc, &phi_d);
        }
    }
    acc
}

fn poly_trim(v: &mut Vec<Rat>) {
    while v.len() > 1 && v.last().map_or(false, Rat::is_zero) {
        v.pop();
    }
    if v.len() == 1 && v[0].is_zero() {
        v.clear();
    }
}

fn poly_is_zero(v: &[Rat]) -> bool {
    v.iter().all(Rat::is_zero)
}

fn poly_mul(a: &[Rat], b: &[Rat]) -> Vec<Rat> {
    if poly_is_zero(a) || poly_is_zero(b) {
        return Vec::new();
    }
    let mut out = vec![Rat::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            if y.is_zero() {
                continue;
            }
            out[i + j] += x * y;
        }
    }
    poly_trim(&mut out);
    out
}

fn poly_sub(a: &[Rat], b: &[Rat]) -> Vec<Rat> {
    let mut out = vec![Rat::zero(); a.len().max(b.len())];
    for (i, x) in a.iter().enumerate() {
        out[i] += x;
    }
    for (i, y) in b.iter().enumerate() {
        out[i] -= y;
    }
    poly_trim(&mut out);
    out
}

/// Long division in Q[x]; divisor must be nonzero.
fn poly_divmod(num: &[Rat], den: &[Rat]) -> (Vec<Rat>, Vec<Rat>) {
    let mut den = den.to_vec();
    poly_trim(&mut den);
    assert!(!den.is_empty(), "polynomial division by zero");
    let mut rem = num.to_vec();
    poly_trim(&mut rem);
    if rem.len() < den.len() {
        return (Vec::new(), rem);
    }
    let lead = den.last().unwrap().clone();
    let mut quot = vec![Rat::zero(); rem.len() - den.len() + 1];
    while !rem.is_empty() && rem.len() >= den.len() {
        let shift = rem.len() - den.len();
        let c = rem.last().unwrap() / &lead;
        quot[shift] = c.clone();
        for (i, dc) in den.iter().enumerate() {
            let delta = &c * dc;
            rem[shift + i] -= delta;
        }
        poly_trim(&mut rem);
    }
    poly_trim(&mut quot);
    (quot, rem)
}

fn poly_div_exact(num: &[Rat], den: &[Rat]) -> Vec<Rat> {
    let (q, r) = poly_divmod(num, den);
    assert!(poly_is_zero(&r), "division was not exact");
    q
}

/// Extended Euclidean algorithm in Q[x]: returns (g, s, t) with
/// s*a + t*b = g.
fn poly_ext_gcd(a: &[Rat], b: &[Rat]) -> (Vec<Rat>, Vec<Rat>, Vec<Rat>) {
    let mut r0 = a.to_vec();
    let mut r1 = b.to_vec();
    poly_trim(&mut r0);
    poly_trim(&mut r1);
    let mut s0 = vec![Rat::one()];
    let mut s1: Vec<Rat> = Vec::new();
    let mut t0: Vec<Rat> = Vec::new();
    let mut t1 = vec![Rat::one()];
    while !r1.is_empty() {
        let (q, r) = poly_divmod(&r0, &r1);
        let s2 = poly_sub(&s0, &poly_mul(&q, &s1));
        let t2 = poly_sub(&t0, &poly_mul(&q, &t1));
        r0 = r1;
        r1 = r;
        s0 = s1;
        s1 = s2;
        t0 = t1;
        t1 = t2;
    }
    (r0, s0, t0)
}

/// Reduces a dense polynomial in zeta modulo the (monic) modulus in place.
fn reduce_mod(dense: &mut Vec<Rat>, modulus: &[Rat]) {
    let deg = modulus.len() - 1;
    while dense.len() > deg {
        let top = dense.len() - 1;
        let c = dense[top].clone();
        if !c.is_zero() {
            let base = top - deg;
            for (i, mc) in modulus[..deg].iter().enumerate() {
                let delta = &c * mc;
                dense[base + i] -= delta;
            }
        }
        dense.pop();
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_integer::Integer;

    fn dense(coeffs: &[i64]) -> Vec<Rat> {
        let mut v: Vec<Rat> = coeffs.iter().map(|&c| rat(c)).collect();
        poly_trim(&mut v);
        v
    }

    #[test]
    fn cyclotomic_small_cases() {
        assert_eq!(cyclotomic_polynomial(1), dense(&[-1, 1]));
        assert_eq!(cyclotomic_polynomial(2), dense(&[1, 1]));
        assert_eq!(cyclotomic_polynomial(3), dense(&[1, 1, 1]));
        assert_eq!(cyclotomic_polynomial(6), dense(&[1, -1, 1]));
        assert_eq!(cyclotomic_polynomial(12), dense(&[1, 0, -1, 0, 1]));
    }

    #[test]
    fn cyclotomic_product_recovers_power() {
        for n in [6u64, 12, 8, 10] {
            let mut prod = vec![Rat::one()];
            for d in 1..=n {
                if n % d == 0 {
                    prod = poly_mul(&prod, &cyclotomic_polynomial(d));
                }
            }
            let mut expected = vec![Rat::zero(); (n + 1) as usize];
            expected[0] = -Rat::one();
            expected[n as usize] = Rat::one();
            assert_eq!(prod, expected);
        }
    }

    #[test]
    fn modulus_vanishes_on_zeta() {
        for n in 1..=16u64 {
            let field = AmbientField::new(n);
            let zeta = field.zeta();
            let mut value = field.zero();
            for (i, c) in field.modulus().iter().enumerate() {
                let term = &field.rational(c.clone()) * &zeta.pow(i as i64).unwrap();
                value = &value + &term;
            }
            assert!(value.is_zero(), "Phi_{}(zeta_{}) != 0", n, n);
        }
    }

    #[test]
    fn cube_root_product() {
        let field = AmbientField::new(3);
        let z = field.zeta();
        let one = field.one();
        let prod = &(&one - &z) * &(&one - &z.pow(2).unwrap());
        assert_eq!(prod, field.integer(3));
    }

    #[test]
    fn inverse_of_root_is_complementary_power() {
        let field = AmbientField::new(12);
        for j in 1..12 {
            let z = field.zeta_pow(j);
            assert_eq!(z.inv().unwrap(), field.zeta_pow(12 - j));
        }
    }

    #[test]
    fn inverse_of_one_minus_zeta3() {
        let field = AmbientField::new(3);
        let z = field.zeta();
        let one = field.one();
        let a = &one - &z;
        let expected = (&one - &z.pow(2).unwrap())
            .div(&field.integer(3))
            .unwrap();
        assert_eq!(a.inv().unwrap(), expected);
        assert!((&a.inv().unwrap() * &a).is_one());
    }

    #[test]
    fn division_round_trips() {
        let field = AmbientField::new(12);
        let samples = [
            field.one(),
            &field.zeta_pow(5) + &field.rational(rat(3) / rat(2)),
            &field.zeta_pow(7) - &field.integer(2),
            field.rational(rat(-5) / rat(3)),
        ];
        for a in &samples {
            for b in &samples {
                let q = a.div(b).unwrap();
                assert_eq!(&q * b, a.clone());
            }
        }
    }

    #[test]
    fn division_by_zero_is_an_error() {
        let field = AmbientField::new(6);
        assert_eq!(field.one().div(&field.zero()), Err(Error::DivisionByZero));
        assert_eq!(field.zero().inv(), Err(Error::DivisionByZero));
    }

    #[test]
    fn root_order_examples() {
        let field = AmbientField::new(12);
        assert_eq!(field.zeta_pow(8).root_order(), Some(3));
        assert_eq!(field.one().root_order(), Some(1));
        assert_eq!(field.integer(-1).root_order(), Some(2));
        assert_eq!(field.integer(2).root_order(), None);
        assert_eq!(field.zero().root_order(), None);
    }

    #[test]
    fn root_order_matches_gcd_formula() {
        let n = 12u64;
        let field = AmbientField::new(n);
        for j in 0..n {
            let expected = n / n.gcd(&j);
            assert_eq!(field.zeta_pow(j as i64).root_order(), Some(expected));
        }
    }

    #[test]
    fn roots_of_unity_inventory() {
        let even = AmbientField::new(6);
        let roots = even.roots_of_unity();
        assert_eq!(roots.len(), 6);
        for r in &roots {
            assert!(6 % r.root_order().unwrap() == 0);
        }

        let odd = AmbientField::new(3);
        let roots = odd.roots_of_unity();
        assert_eq!(roots.len(), 6);
        assert!(roots.iter().any(|r| r.root_order() == Some(6)));
    }

    #[test]
    fn negative_powers() {
        let field = AmbientField::new(6);
        let z = field.zeta();
        assert_eq!(z.pow(-1).unwrap(), field.zeta_pow(5));
        assert_eq!(z.pow(-7).unwrap(), field.zeta_pow(-7));
        assert_eq!(field.integer(2).pow(-2).unwrap(), field.rational(rat(1) / rat(4)));
    }

    #[test]
    fn display_forms() {
        let field = AmbientField::new(12);
        assert_eq!(field.zero().to_string(), "0");
        assert_eq!(field.integer(-1).to_string(), "-1");
        assert_eq!(field.zeta().to_string(), "z");
        let a = &field.zeta_pow(2) + &field.one();
        assert_eq!(a.to_string(), "z^2 + 1");
        let b = &field.rational(rat(3) / rat(2)) * &field.zeta_pow(3);
        assert_eq!(b.to_string(), "3/2*z^3");
        let c = &field.zero() - &field.zeta();
        assert_eq!(c.to_string(), "-z");
    }
}
