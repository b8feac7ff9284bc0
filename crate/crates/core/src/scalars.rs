//! Exact arithmetic in the cyclotomic field Q(zeta_N).
//!
//! An element is a rational coefficient vector of length phi(N) in the power
//! basis `1, z, ..., z^(phi(N)-1)` of `Q[z]/Phi_N(z)`. Every operation reduces
//! modulo `Phi_N`, so the coefficient vector is a canonical form and equality
//! is plain vector equality.

use std::collections::HashMap;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::str::FromStr;
use std::sync::{Arc, Mutex, OnceLock};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Precomputed data for one cyclotomic field.
#[derive(Debug)]
pub struct CycField {
    order: u32,
    degree: usize,
    /// Coefficients of Phi_N, lowest degree first, monic.
    modulus: Vec<i64>,
    /// `powers[k]` is `z^k mod Phi_N` for `k < max(2 * degree, N)`.
    powers: Vec<Vec<i64>>,
}

impl CycField {
    pub fn order(&self) -> u32 {
        self.order
    }

    /// phi(N), the dimension over Q.
    pub fn degree(&self) -> usize {
        self.degree
    }

    /// Coefficients of the N-th cyclotomic polynomial, lowest degree first.
    pub fn modulus(&self) -> &[i64] {
        &self.modulus
    }
}

fn field_cache() -> &'static Mutex<HashMap<u32, Arc<CycField>>> {
    static CACHE: OnceLock<Mutex<HashMap<u32, Arc<CycField>>>> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

/// Returns the shared field descriptor for Q(zeta_N).
pub fn field(order: u32) -> Arc<CycField> {
    assert!(order >= 1, "cyclotomic order must be positive");
    let mut cache = field_cache().lock().expect("field cache poisoned");
    if let Some(f) = cache.get(&order) {
        return f.clone();
    }
    let modulus = cyclotomic_polynomial(order);
    let degree = modulus.len() - 1;
    let count = (2 * degree).max(order as usize);
    let mut powers = Vec::with_capacity(count);
    let mut cur = vec![0i64; degree];
    cur[0] = 1;
    for _ in 0..count {
        powers.push(cur.clone());
        // multiply by z and reduce the overflow coefficient using monic Phi_N
        let top = cur[degree - 1];
        for i in (1..degree).rev() {
            cur[i] = cur[i - 1] - top * modulus[i];
        }
        cur[0] = -top * modulus[0];
    }
    let f = Arc::new(CycField {
        order,
        degree,
        modulus,
        powers,
    });
    cache.insert(order, f.clone());
    f
}

/// Integer coefficients of Phi_n, lowest degree first.
pub fn cyclotomic_polynomial(n: u32) -> Vec<i64> {
    // x^n - 1 divided by Phi_d for every proper divisor d
    let mut num = vec![0i64; n as usize + 1];
    num[0] = -1;
    num[n as usize] = 1;
    for d in 1..n {
        if n.is_multiple_of(d) {
            num = exact_div_monic(&num, &cyclotomic_polynomial(d));
        }
    }
    num
}

fn exact_div_monic(num: &[i64], den: &[i64]) -> Vec<i64> {
    let mut rem = num.to_vec();
    let dd = den.len() - 1;
    let qlen = rem.len() - dd;
    let mut quot = vec![0i64; qlen];
    for k in (0..qlen).rev() {
        let c = rem[k + dd];
        quot[k] = c;
        for (i, &d) in den.iter().enumerate() {
            rem[k + i] -= c * d;
        }
    }
    debug_assert!(rem.iter().all(|&x| x == 0));
    quot
}

/// Exact element of Q(zeta_N).
#[derive(Clone)]
pub struct CycScalar {
    field: Arc<CycField>,
    coeffs: Vec<BigRational>,
}

/// Binary field operations accepted by [`arith`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ArithOp {
    Add,
    Sub,
    Mul,
    Div,
}

/// Exact field arithmetic with explicit order checking.
pub fn arith(a: &CycScalar, b: &CycScalar, op: ArithOp) -> Result<CycScalar> {
    match op {
        ArithOp::Add => a.checked_add(b),
        ArithOp::Sub => a.checked_sub(b),
        ArithOp::Mul => a.checked_mul(b),
        ArithOp::Div => a.checked_div(b),
    }
}

/// `zeta_N^(k mod N)`.
pub fn root_of_unity(order: u32, k: i64) -> CycScalar {
    CycScalar::root_of_unity(order, k)
}

/// Multiplicative inverse; fails on zero.
pub fn invert(a: &CycScalar) -> Result<CycScalar> {
    a.inverse()
}

impl CycScalar {
    pub fn zero(order: u32) -> Self {
        let field = field(order);
        let coeffs = vec![BigRational::zero(); field.degree];
        CycScalar { field, coeffs }
    }

    pub fn one(order: u32) -> Self {
        Self::from_integer(order, 1)
    }

    pub fn from_integer(order: u32, value: i64) -> Self {
        Self::from_rational(order, BigRational::from_integer(BigInt::from(value)))
    }

    pub fn from_rational(order: u32, value: BigRational) -> Self {
        let mut s = Self::zero(order);
        s.coeffs[0] = value;
        s
    }

    pub fn root_of_unity(order: u32, k: i64) -> Self {
        let field = field(order);
        let e = k.rem_euclid(order as i64) as usize;
        let coeffs = field.powers[e]
            .iter()
            .map(|&c| BigRational::from_integer(BigInt::from(c)))
            .collect();
        CycScalar { field, coeffs }
    }

    /// Builds an element from power-basis coefficients; longer inputs are reduced.
    pub fn from_coeffs(order: u32, coeffs: Vec<BigRational>) -> Self {
        let field = field(order);
        let mut out = vec![BigRational::zero(); field.degree];
        for (k, c) in coeffs.into_iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            add_scaled_power(&field, &mut out, k, &c);
        }
        CycScalar { field, coeffs: out }
    }

    pub fn order(&self) -> u32 {
        self.field.order
    }

    pub fn field(&self) -> &Arc<CycField> {
        &self.field
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    pub fn is_one(&self) -> bool {
        self.coeffs[0].is_one() && self.coeffs[1..].iter().all(Zero::is_zero)
    }

    /// The rational value when the element lies in Q.
    pub fn as_rational(&self) -> Option<&BigRational> {
        if self.coeffs[1..].iter().all(Zero::is_zero) {
            Some(&self.coeffs[0])
        } else {
            None
        }
    }

    fn check(&self, other: &Self) -> Result<()> {
        if self.field.order != other.field.order {
            Err(Error::OrderMismatch(self.field.order, other.field.order))
        } else {
            Ok(())
        }
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        let coeffs = self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(a, b)| a + b)
            .collect();
        Ok(CycScalar {
            field: self.field.clone(),
            coeffs,
        })
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        let coeffs = self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(a, b)| a - b)
            .collect();
        Ok(CycScalar {
            field: self.field.clone(),
            coeffs,
        })
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        let d = self.field.degree;
        let mut prod = vec![BigRational::zero(); 2 * d - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                if !b.is_zero() {
                    prod[i + j] += a * b;
                }
            }
        }
        let mut out = vec![BigRational::zero(); d];
        for (k, c) in prod.iter().enumerate() {
            if !c.is_zero() {
                add_scaled_power(&self.field, &mut out, k, c);
            }
        }
        Ok(CycScalar {
            field: self.field.clone(),
            coeffs: out,
        })
    }

    pub fn checked_div(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        self.checked_mul(&other.inverse()?)
    }

    /// Inverse by the extended Euclidean algorithm against Phi_N.
    pub fn inverse(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if let Some(q) = self.as_rational() {
            return Ok(Self::from_rational(self.order(), q.recip()));
        }
        let phi: Vec<BigRational> = self
            .field
            .modulus
            .iter()
            .map(|&c| BigRational::from_integer(BigInt::from(c)))
            .collect();
        // invariant: s_i * a == r_i (mod Phi)
        let mut r0 = phi;
        let mut r1 = trim(self.coeffs.clone());
        let mut s0: Vec<BigRational> = Vec::new();
        let mut s1 = vec![BigRational::one()];
        while !(r1.len() == 1 && !r1[0].is_zero()) {
            let (q, r) = poly_divrem(&r0, &r1);
            let s2 = poly_sub(&s0, &poly_mul(&q, &s1));
            r0 = std::mem::replace(&mut r1, r);
            s0 = std::mem::replace(&mut s1, s2);
            debug_assert!(!r1.is_empty(), "Phi_N is irreducible so the gcd is a unit");
        }
        let inv_lead = r1[0].recip();
        let coeffs: Vec<BigRational> = s1.into_iter().map(|c| c * &inv_lead).collect();
        Ok(Self::from_coeffs(self.order(), coeffs))
    }

    pub fn pow(&self, mut e: u64) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one(self.order());
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            e >>= 1;
        }
        acc
    }

    pub fn scale(&self, q: &BigRational) -> Self {
        CycScalar {
            field: self.field.clone(),
            coeffs: self.coeffs.iter().map(|c| c * q).collect(),
        }
    }

    /// The same number in Q(zeta_M): rationals move freely, otherwise N must
    /// divide M (z is sent to zeta_M^(M/N)).
    pub fn to_order(&self, target: u32) -> Result<Self> {
        if target == self.field.order {
            return Ok(self.clone());
        }
        if let Some(q) = self.as_rational() {
            return Ok(Self::from_rational(target, q.clone()));
        }
        if !target.is_multiple_of(self.field.order) {
            return Err(Error::OrderMismatch(self.field.order, target));
        }
        let step = (target / self.field.order) as usize;
        let mut spread = vec![BigRational::zero(); target as usize];
        for (k, c) in self.coeffs.iter().enumerate() {
            spread[k * step] = c.clone();
        }
        Ok(Self::from_coeffs(target, spread))
    }

    /// In-place `self += other`; orders must agree.
    pub fn add_assign_ref(&mut self, other: &Self) {
        assert_eq!(self.field.order, other.field.order, "cyclotomic order mismatch");
        for (a, b) in self.coeffs.iter_mut().zip(&other.coeffs) {
            *a += b;
        }
    }

    /// Parses the textual form produced by `Display`, e.g. `-3/2+z-1/4*z^3`.
    pub fn parse(order: u32, text: &str) -> std::result::Result<Self, String> {
        let t: String = text.chars().filter(|c| !c.is_whitespace()).collect();
        if t.is_empty() {
            return Err("empty scalar".into());
        }
        let mut terms = Vec::new();
        let mut start = 0;
        let bytes = t.as_bytes();
        for i in 1..bytes.len() {
            if (bytes[i] == b'+' || bytes[i] == b'-') && bytes[i - 1] != b'^' {
                terms.push(&t[start..i]);
                start = i;
            }
        }
        terms.push(&t[start..]);
        let mut acc = vec![BigRational::zero(); order as usize];
        for term in terms {
            let (neg, body) = match term.as_bytes()[0] {
                b'-' => (true, &term[1..]),
                b'+' => (false, &term[1..]),
                _ => (false, term),
            };
            let (coef, power) = parse_term(body)?;
            let coef = if neg { -coef } else { coef };
            let k = power.rem_euclid(order as i64) as usize;
            acc[k] += coef;
        }
        Ok(Self::from_coeffs(order, acc))
    }
}

fn parse_term(body: &str) -> std::result::Result<(BigRational, i64), String> {
    if body.is_empty() {
        return Err("dangling sign in scalar".into());
    }
    let (coef_part, z_part) = match body.find('z') {
        Some(pos) => {
            let coef = body[..pos].trim_end_matches('*');
            (coef, Some(&body[pos + 1..]))
        }
        None => (body, None),
    };
    let coef = if coef_part.is_empty() {
        BigRational::one()
    } else {
        BigRational::from_str(coef_part).map_err(|_| format!("bad rational `{coef_part}`"))?
    };
    let power = match z_part {
        None => 0,
        Some("") => 1,
        Some(p) => p
            .strip_prefix('^')
            .ok_or_else(|| format!("expected `^` after z in `{body}`"))?
            .parse::<i64>()
            .map_err(|_| format!("bad exponent in `{body}`"))?,
    };
    Ok((coef, power))
}

fn add_scaled_power(field: &CycField, out: &mut [BigRational], k: usize, c: &BigRational) {
    let e = if k < field.powers.len() {
        k
    } else {
        k % field.order as usize
    };
    for (slot, &p) in out.iter_mut().zip(&field.powers[e]) {
        if p != 0 {
            *slot += c * BigRational::from_integer(BigInt::from(p));
        }
    }
}

fn trim(mut p: Vec<BigRational>) -> Vec<BigRational> {
    while p.last().is_some_and(Zero::is_zero) {
        p.pop();
    }
    p
}

fn poly_mul(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![BigRational::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    trim(out)
}

fn poly_sub(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
    let n = a.len().max(b.len());
    let mut out = vec![BigRational::zero(); n];
    for (i, x) in a.iter().enumerate() {
        out[i] += x;
    }
    for (i, y) in b.iter().enumerate() {
        out[i] -= y;
    }
    trim(out)
}

fn poly_divrem(a: &[BigRational], b: &[BigRational]) -> (Vec<BigRational>, Vec<BigRational>) {
    let mut rem = trim(a.to_vec());
    let db = b.len() - 1;
    if rem.len() < b.len() {
        return (Vec::new(), rem);
    }
    let mut quot = vec![BigRational::zero(); rem.len() - db];
    let lead_inv = b[db].recip();
    while rem.len() >= b.len() {
        let k = rem.len() - b.len();
        let c = rem.last().unwrap() * &lead_inv;
        for (i, y) in b.iter().enumerate() {
            rem[k + i] -= &c * y;
        }
        quot[k] = c;
        rem = trim(rem);
    }
    (trim(quot), rem)
}

impl PartialEq for CycScalar {
    fn eq(&self, other: &Self) -> bool {
        self.field.order == other.field.order && self.coeffs == other.coeffs
    }
}

impl Eq for CycScalar {}

impl Hash for CycScalar {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.field.order.hash(state);
        self.coeffs.hash(state);
    }
}

impl fmt::Debug for CycScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CycScalar[N={}]({})", self.order(), self)
    }
}

impl fmt::Display for CycScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let mag = c.abs();
            if neg {
                f.write_str("-")?;
            } else if !first {
                f.write_str("+")?;
            }
            first = false;
            match k {
                0 => write!(f, "{mag}")?,
                _ => {
                    if !mag.is_one() {
                        write!(f, "{mag}*")?;
                    }
                    if k == 1 {
                        f.write_str("z")?;
                    } else {
                        write!(f, "z^{k}")?;
                    }
                }
            }
        }
        if first {
            f.write_str("0")?;
        }
        Ok(())
    }
}

macro_rules! binop {
    ($trait:ident, $method:ident, $checked:ident) => {
        impl std::ops::$trait<&CycScalar> for &CycScalar {
            type Output = CycScalar;
            /// Panics when the two operands live in different cyclotomic fields.
            fn $method(self, rhs: &CycScalar) -> CycScalar {
                self.$checked(rhs).expect("cyclotomic order mismatch")
            }
        }
        impl std::ops::$trait<CycScalar> for CycScalar {
            type Output = CycScalar;
            fn $method(self, rhs: CycScalar) -> CycScalar {
                (&self).$method(&rhs)
            }
        }
    };
}

binop!(Add, add, checked_add);
binop!(Sub, sub, checked_sub);
binop!(Mul, mul, checked_mul);

impl std::ops::Neg for &CycScalar {
    type Output = CycScalar;
    fn neg(self) -> CycScalar {
        CycScalar {
            field: self.field.clone(),
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

impl std::ops::Neg for CycScalar {
    type Output = CycScalar;
    fn neg(self) -> CycScalar {
        -&self
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(BigInt::from(n), BigInt::from(d))
    }

    #[test]
    fn cyclotomic_polynomials_small() {
        assert_eq!(cyclotomic_polynomial(1), vec![-1, 1]);
        assert_eq!(cyclotomic_polynomial(2), vec![1, 1]);
        assert_eq!(cyclotomic_polynomial(3), vec![1, 1, 1]);
        assert_eq!(cyclotomic_polynomial(4), vec![1, 0, 1]);
        assert_eq!(cyclotomic_polynomial(6), vec![1, -1, 1]);
        assert_eq!(cyclotomic_polynomial(8), vec![1, 0, 0, 0, 1]);
        assert_eq!(cyclotomic_polynomial(12), vec![1, 0, -1, 0, 1]);
    }

    #[test]
    fn i_squared_is_minus_one() {
        let i = CycScalar::root_of_unity(4, 1);
        assert_eq!(&i * &i, CycScalar::from_integer(4, -1));
        assert_eq!(root_of_unity(4, 2), CycScalar::from_integer(4, -1));
        assert!(root_of_unity(6, 6).is_one());
        assert!(root_of_unity(4, 1).pow(4).is_one());
    }

    #[test]
    fn third_roots_sum_to_zero() {
        let z = root_of_unity(3, 1);
        let s = &(&(&z * &z) + &z) + &CycScalar::one(3);
        assert!(s.is_zero());
    }

    #[test]
    fn zeta_has_exact_order() {
        for n in 1..=12u32 {
            let z = root_of_unity(n, 1);
            for k in 1..n {
                assert!(!z.pow(k as u64).is_one(), "zeta_{n}^{k} == 1");
            }
            assert!(z.pow(n as u64).is_one());
            // Phi_N(zeta) = 0
            let phi = cyclotomic_polynomial(n);
            let mut acc = CycScalar::zero(n);
            for (k, &c) in phi.iter().enumerate() {
                acc = &acc + &z.pow(k as u64).scale(&q(c, 1));
            }
            assert!(acc.is_zero());
        }
    }

    #[test]
    fn inverses() {
        assert!(invert(&CycScalar::one(5)).unwrap().is_one());
        for n in 1..=12u32 {
            for k in 0..n as i64 {
                let z = root_of_unity(n, k);
                assert_eq!(invert(&z).unwrap(), root_of_unity(n, n as i64 - k));
            }
        }
        let a = &CycScalar::one(3) + &root_of_unity(3, 1);
        assert!((&invert(&a).unwrap() * &a).is_one());
        assert_eq!(invert(&CycScalar::zero(7)), Err(Error::DivisionByZero));
        assert_eq!(
            arith(&CycScalar::one(3), &CycScalar::zero(3), ArithOp::Div),
            Err(Error::DivisionByZero)
        );
    }

    #[test]
    fn order_mismatch_is_an_error() {
        let a = CycScalar::one(3);
        let b = CycScalar::one(4);
        assert_eq!(arith(&a, &b, ArithOp::Add), Err(Error::OrderMismatch(3, 4)));
    }

    #[test]
    fn display_parse_round_trip() {
        let x = CycScalar::from_coeffs(8, vec![q(-3, 2), q(1, 1), q(0, 1), q(-1, 4)]);
        let text = x.to_string();
        assert_eq!(text, "-3/2+z-1/4*z^3");
        assert_eq!(CycScalar::parse(8, &text).unwrap(), x);
        assert_eq!(CycScalar::parse(4, "z^2").unwrap(), CycScalar::from_integer(4, -1));
        assert_eq!(CycScalar::parse(4, "0").unwrap(), CycScalar::zero(4));
        assert!(CycScalar::parse(4, "1/0x").is_err());
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        fn scalar(order: u32) -> impl Strategy<Value = CycScalar> {
            let deg = field(order).degree();
            proptest::collection::vec((-6i64..6, 1i64..5), deg).prop_map(move |v| {
                CycScalar::from_coeffs(order, v.into_iter().map(|(n, d)| q(n, d)).collect())
            })
        }

        fn triple() -> impl Strategy<Value = (CycScalar, CycScalar, CycScalar)> {
            (1u32..=12).prop_flat_map(|n| (scalar(n), scalar(n), scalar(n)))
        }

        proptest! {
            #[test]
            fn field_axioms((a, b, c) in triple()) {
                prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
                prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
                prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
                prop_assert_eq!(&a * &b, &b * &a);
                prop_assert_eq!(&a + &CycScalar::zero(a.order()), a.clone());
                if !a.is_zero() {
                    prop_assert!((&a * &a.inverse().unwrap()).is_one());
                }
            }

            #[test]
            fn parse_inverts_display(a in (1u32..=12).prop_flat_map(scalar)) {
                prop_assert_eq!(CycScalar::parse(a.order(), &a.to_string()).unwrap(), a);
            }
        }
    }

    #[test]
    fn change_of_order() {
        let i4 = CycScalar::root_of_unity(4, 1);
        let i12 = i4.to_order(12).unwrap();
        assert_eq!(i12, CycScalar::root_of_unity(12, 3));
        assert_eq!(&i12 * &i12, CycScalar::from_integer(12, -1));
        assert_eq!(CycScalar::from_integer(2, -3).to_order(5).unwrap(), CycScalar::from_integer(5, -3));
        assert!(i4.to_order(6).is_err());
    }
}
