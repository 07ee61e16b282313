//! Elements of the cyclotomic fields Q(zeta_N) with exact arithmetic.
//!
//! Key operations:
//! - `cyclotomic_polynomial`: the minimal polynomial Φ_N of zeta_N.
//! - `CycloNumber`: reduced power-basis representation, field arithmetic
//!   (extended-GCD inversion), embeddings into larger fields, square roots
//!   of positive rationals via Gauss sums, complex approximation, JSON I/O.
//!
//! Design notes:
//! - Every value is eagerly reduced mod Φ_N, so representations are unique
//!   and equality is structural after embedding into the lcm order.
//! - Reduction uses cached rows x^e mod Φ_N for e up to max(2φ(N)−2, N−1),
//!   which covers both products and embeddings.

use crate::{NumError, Rational};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, ToPrimitive, Zero as NumZero};
use serde_json::{json, Value};
use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, AddAssign, Div, Mul, Neg, Sub, SubAssign};
use std::sync::{Arc, Mutex, OnceLock};

/// Euler's totient function.
pub fn euler_phi(n: u32) -> u32 {
    let mut m = n;
    let mut result = n;
    let mut p = 2;
    while p * p <= m {
        if m % p == 0 {
            while m % p == 0 {
                m /= p;
            }
            result -= result / p;
        }
        p += 1;
    }
    if m > 1 {
        result -= result / m;
    }
    result
}

fn divisors(n: u32) -> Vec<u32> {
    let mut ds = Vec::new();
    for d in 1..=n {
        if d * d > n {
            break;
        }
        if n % d == 0 {
            ds.push(d);
            if d != n / d {
                ds.push(n / d);
            }
        }
    }
    ds.sort_unstable();
    ds
}

/// Exact division of integer polynomials (low-to-high coefficients), `den` monic.
fn poly_div_exact_int(num: &[BigInt], den: &[BigInt]) -> Vec<BigInt> {
    let dn = num.len() - 1;
    let dd = den.len() - 1;
    assert!(dn >= dd && den[dd].is_one_int());
    let mut rem: Vec<BigInt> = num.to_vec();
    let mut quo = vec![BigInt::from(0); dn - dd + 1];
    for k in (0..=dn - dd).rev() {
        let c = rem[k + dd].clone();
        if !c.is_zero() {
            quo[k] = c.clone();
            for j in 0..=dd {
                let t = &den[j] * &c;
                rem[k + j] -= t;
            }
        }
    }
    assert!(rem.iter().all(|c| c.is_zero()), "inexact polynomial division");
    quo
}

trait IsOneInt {
    fn is_one_int(&self) -> bool;
}
impl IsOneInt for BigInt {
    fn is_one_int(&self) -> bool {
        *self == BigInt::from(1)
    }
}

fn cyclo_cache() -> &'static Mutex<HashMap<u32, Arc<Vec<BigInt>>>> {
    static CACHE: OnceLock<Mutex<HashMap<u32, Arc<Vec<BigInt>>>>> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

/// Integer coefficients of Φ_N, low to high, monic of degree φ(N).
fn cyclo_poly_int(n: u32) -> Arc<Vec<BigInt>> {
    if let Some(p) = cyclo_cache().lock().unwrap().get(&n) {
        return Arc::clone(p);
    }
    let poly = if n == 1 {
        vec![BigInt::from(-1), BigInt::from(1)]
    } else {
        // (x^n − 1) divided by the product of Φ_d over proper divisors d | n.
        let mut num = vec![BigInt::from(0); n as usize + 1];
        num[0] = BigInt::from(-1);
        num[n as usize] = BigInt::from(1);
        let mut quo = num;
        for d in divisors(n) {
            if d < n {
                let phi_d = cyclo_poly_int(d);
                quo = poly_div_exact_int(&quo, &phi_d);
            }
        }
        quo
    };
    let arc = Arc::new(poly);
    cyclo_cache()
        .lock()
        .unwrap()
        .entry(n)
        .or_insert_with(|| Arc::clone(&arc));
    arc
}

/// The N-th cyclotomic polynomial Φ_N as rational coefficients, low to high.
pub fn cyclotomic_polynomial(n: u32) -> Vec<Rational> {
    assert!(n >= 1, "cyclotomic order must be positive");
    cyclo_poly_int(n)
        .iter()
        .map(|c| Rational::from(c.clone()))
        .collect()
}

/// Cached per-field reduction data: rows x^e mod Φ_N for e = φ(N) .. max_exp.
struct FieldData {
    phi: usize,
    rem_rows: Vec<Vec<Rational>>,
}

impl FieldData {
    fn build(n: u32) -> FieldData {
        let phi = euler_phi(n) as usize;
        let min_poly = cyclo_poly_int(n);
        let max_exp = (2 * phi).saturating_sub(2).max(n as usize - 1);
        let mut rem_rows: Vec<Vec<Rational>> = Vec::new();
        if max_exp >= phi {
            let base: Vec<Rational> = (0..phi)
                .map(|j| Rational::from(-&min_poly[j]))
                .collect();
            rem_rows.push(base);
            for _ in phi + 1..=max_exp {
                let prev = rem_rows.last().unwrap();
                let overflow = prev[phi - 1].clone();
                let mut next = vec![Rational::zero(); phi];
                for j in 1..phi {
                    next[j] = prev[j - 1].clone();
                }
                if !overflow.is_zero() {
                    let first = &rem_rows[0];
                    for j in 0..phi {
                        if !first[j].is_zero() {
                            next[j] += &overflow * &first[j];
                        }
                    }
                }
                rem_rows.push(next);
            }
        }
        FieldData { phi, rem_rows }
    }

    /// Reduces a coefficient vector of degree < len to the power basis.
    fn reduce(&self, conv: Vec<Rational>) -> Vec<Rational> {
        let phi = self.phi;
        assert!(
            conv.len() <= phi + self.rem_rows.len(),
            "exponent exceeds cached reduction table"
        );
        let mut out = vec![Rational::zero(); phi];
        for (e, c) in conv.into_iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if e < phi {
                out[e] += c;
            } else {
                let row = &self.rem_rows[e - phi];
                for j in 0..phi {
                    if !row[j].is_zero() {
                        out[j] += &c * &row[j];
                    }
                }
            }
        }
        out
    }
}

fn field_cache() -> &'static Mutex<HashMap<u32, Arc<FieldData>>> {
    static CACHE: OnceLock<Mutex<HashMap<u32, Arc<FieldData>>>> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

fn field_data(n: u32) -> Arc<FieldData> {
    if let Some(fd) = field_cache().lock().unwrap().get(&n) {
        return Arc::clone(fd);
    }
    let fd = Arc::new(FieldData::build(n));
    field_cache()
        .lock()
        .unwrap()
        .entry(n)
        .or_insert_with(|| Arc::clone(&fd));
    fd
}

/// An element of Q(zeta_N) in the reduced power basis 1, ζ, …, ζ^{φ(N)−1}.
#[derive(Clone)]
pub struct CycloNumber {
    order: u32,
    coeffs: Vec<Rational>,
}

impl CycloNumber {
    fn from_reduced(order: u32, coeffs: Vec<Rational>) -> CycloNumber {
        debug_assert_eq!(coeffs.len(), euler_phi(order) as usize);
        CycloNumber { order, coeffs }
    }

    /// The additive identity.
    pub fn zero() -> CycloNumber {
        CycloNumber::from_reduced(1, vec![Rational::zero()])
    }

    /// The multiplicative identity.
    pub fn one() -> CycloNumber {
        CycloNumber::from_reduced(1, vec![Rational::from(BigInt::from(1))])
    }

    /// Embeds a rational number.
    pub fn rational(r: Rational) -> CycloNumber {
        CycloNumber::from_reduced(1, vec![r])
    }

    /// Embeds an integer.
    pub fn from_int(n: i64) -> CycloNumber {
        CycloNumber::rational(Rational::from(BigInt::from(n)))
    }

    /// The primitive root ζ_N raised to the k-th power, reduced mod Φ_N.
    pub fn root_of_unity(n: u32, k: i64) -> CycloNumber {
        assert!(n >= 1, "root order must be positive");
        let e = k.rem_euclid(n as i64) as usize;
        let fd = field_data(n);
        let mut conv = vec![Rational::zero(); e + 1];
        conv[e] = Rational::from(BigInt::from(1));
        CycloNumber::from_reduced(n, fd.reduce(conv))
    }

    /// The imaginary unit i = ζ_4.
    pub fn i() -> CycloNumber {
        CycloNumber::root_of_unity(4, 1)
    }

    /// The field order N of the current representation.
    pub fn order(&self) -> u32 {
        self.order
    }

    /// Coefficients in the power basis 1, ζ_N, …, ζ_N^{φ(N)−1}.
    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    /// Whether this is the zero element.
    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    /// Whether this is the unit element.
    pub fn is_one(&self) -> bool {
        self.as_rational().is_some_and(|r| r.is_one_rat())
    }

    /// Returns the value as a rational if it lies in Q.
    pub fn as_rational(&self) -> Option<Rational> {
        if self.coeffs[1..].iter().all(|c| c.is_zero()) {
            Some(self.coeffs[0].clone())
        } else {
            None
        }
    }

    /// Re-represents the element in Q(zeta_N) for a multiple N of the order.
    pub fn embed(&self, n: u32) -> Result<CycloNumber, NumError> {
        if n == self.order {
            return Ok(self.clone());
        }
        if n % self.order != 0 {
            return Err(NumError::IncompatibleOrder {
                order: self.order,
                target: n,
            });
        }
        let stretch = (n / self.order) as usize;
        let fd = field_data(n);
        let mut conv = vec![Rational::zero(); (self.coeffs.len() - 1) * stretch + 1];
        for (i, c) in self.coeffs.iter().enumerate() {
            if !c.is_zero() {
                conv[i * stretch] = c.clone();
            }
        }
        Ok(CycloNumber::from_reduced(n, fd.reduce(conv)))
    }

    fn unify(a: &CycloNumber, b: &CycloNumber) -> (CycloNumber, CycloNumber) {
        if a.order == b.order {
            (a.clone(), b.clone())
        } else {
            let n = a.order.lcm(&b.order);
            (a.embed(n).unwrap(), b.embed(n).unwrap())
        }
    }

    fn add_impl(a: &CycloNumber, b: &CycloNumber) -> CycloNumber {
        let (mut x, y) = CycloNumber::unify(a, b);
        for (c, d) in x.coeffs.iter_mut().zip(y.coeffs.iter()) {
            *c += d;
        }
        x
    }

    fn sub_impl(a: &CycloNumber, b: &CycloNumber) -> CycloNumber {
        let (mut x, y) = CycloNumber::unify(a, b);
        for (c, d) in x.coeffs.iter_mut().zip(y.coeffs.iter()) {
            *c -= d;
        }
        x
    }

    fn neg_impl(a: &CycloNumber) -> CycloNumber {
        CycloNumber {
            order: a.order,
            coeffs: a.coeffs.iter().map(|c| -c.clone()).collect(),
        }
    }

    fn mul_impl(a: &CycloNumber, b: &CycloNumber) -> CycloNumber {
        // Rational scaling avoids any order lift.
        if let Some(r) = a.as_rational() {
            return b.mul_rat(&r);
        }
        if let Some(r) = b.as_rational() {
            return a.mul_rat(&r);
        }
        let (x, y) = CycloNumber::unify(a, b);
        let fd = field_data(x.order);
        let phi = fd.phi;
        let mut conv = vec![Rational::zero(); 2 * phi - 1];
        for (i, c) in x.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            for (j, d) in y.coeffs.iter().enumerate() {
                if !d.is_zero() {
                    conv[i + j] += c * d;
                }
            }
        }
        CycloNumber::from_reduced(x.order, fd.reduce(conv))
    }

    /// Multiplies by a rational scalar without changing the field order.
    pub fn mul_rat(&self, r: &Rational) -> CycloNumber {
        if r.is_zero() {
            return CycloNumber {
                order: self.order,
                coeffs: vec![Rational::zero(); self.coeffs.len()],
            };
        }
        CycloNumber {
            order: self.order,
            coeffs: self.coeffs.iter().map(|c| c * r).collect(),
        }
    }

    /// The multiplicative inverse, via extended GCD modulo Φ_N.
    pub fn inv(&self) -> Result<CycloNumber, NumError> {
        if self.is_zero() {
            return Err(NumError::DivisionByZero);
        }
        if let Some(r) = self.as_rational() {
            return Ok(CycloNumber::rational(r.recip()).embed(self.order).unwrap());
        }
        let phi_poly: Vec<Rational> = cyclotomic_polynomial(self.order);
        let f: Vec<Rational> = self.coeffs.clone();
        let inv_poly = poly_inverse_mod(&f, &phi_poly);
        let fd = field_data(self.order);
        let mut conv = inv_poly;
        conv.resize(fd.phi, Rational::zero());
        Ok(CycloNumber::from_reduced(self.order, fd.reduce(conv)))
    }

    /// Exact division; errors on a zero divisor.
    pub fn checked_div(&self, b: &CycloNumber) -> Result<CycloNumber, NumError> {
        Ok(CycloNumber::mul_impl(self, &b.inv()?))
    }

    /// Integer power, negative exponents through the inverse.
    pub fn pow(&self, k: i64) -> Result<CycloNumber, NumError> {
        if k < 0 {
            return self.inv()?.pow(-k);
        }
        let mut result = CycloNumber::one();
        let mut base = self.clone();
        let mut e = k as u64;
        while e > 0 {
            if e & 1 == 1 {
                result = CycloNumber::mul_impl(&result, &base);
            }
            e >>= 1;
            if e > 0 {
                base = CycloNumber::mul_impl(&base, &base);
            }
        }
        Ok(result)
    }

    /// Numerical approximation as (re, im); diagnostics only, float precision.
    pub fn approx_complex(&self, _precision: u32) -> (f64, f64) {
        let n = self.order as f64;
        let mut re = 0.0;
        let mut im = 0.0;
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let v = c.to_f64().unwrap_or(f64::NAN);
            let theta = 2.0 * std::f64::consts::PI * (k as f64) / n;
            re += v * theta.cos();
            im += v * theta.sin();
        }
        (re, im)
    }

    /// Deterministic key for hashing at the current order.
    pub fn key_string(&self) -> String {
        let mut s = format!("{}|", self.order);
        for c in &self.coeffs {
            s.push_str(&c.numer().to_string());
            s.push('/');
            s.push_str(&c.denom().to_string());
            s.push(',');
        }
        s
    }

    /// Serializes as { "order": N, "coeffs": [["num","den"], …] }.
    pub fn to_json(&self) -> Value {
        json!({
            "order": self.order,
            "coeffs": self.coeffs.iter()
                .map(|c| json!([c.numer().to_string(), c.denom().to_string()]))
                .collect::<Vec<_>>(),
        })
    }

    /// Parses the serialization produced by `to_json`.
    pub fn from_json(v: &Value) -> Result<CycloNumber, NumError> {
        let order = v
            .get("order")
            .and_then(Value::as_u64)
            .ok_or_else(|| NumError::Malformed("missing order".into()))? as u32;
        if order == 0 {
            return Err(NumError::Malformed("order must be positive".into()));
        }
        let coeffs_json = v
            .get("coeffs")
            .and_then(Value::as_array)
            .ok_or_else(|| NumError::Malformed("missing coeffs".into()))?;
        if coeffs_json.len() != euler_phi(order) as usize {
            return Err(NumError::Malformed(format!(
                "expected {} coefficients for order {}, got {}",
                euler_phi(order),
                order,
                coeffs_json.len()
            )));
        }
        let mut coeffs = Vec::with_capacity(coeffs_json.len());
        for c in coeffs_json {
            let pair = c
                .as_array()
                .filter(|p| p.len() == 2)
                .ok_or_else(|| NumError::Malformed("coefficient is not a pair".into()))?;
            let num = pair[0]
                .as_str()
                .ok_or_else(|| NumError::Malformed("numerator is not a string".into()))?;
            let den = pair[1]
                .as_str()
                .ok_or_else(|| NumError::Malformed("denominator is not a string".into()))?;
            coeffs.push(crate::rat_from_strings(num, den)?);
        }
        Ok(CycloNumber::from_reduced(order, coeffs))
    }
}

trait IsOneRat {
    fn is_one_rat(&self) -> bool;
}
impl IsOneRat for Rational {
    fn is_one_rat(&self) -> bool {
        self.numer() == self.denom()
    }
}

/// Inverse of f modulo the monic polynomial m over Q, deg f < deg m, f ≠ 0.
fn poly_inverse_mod(f: &[Rational], m: &[Rational]) -> Vec<Rational> {
    let mut r0: Vec<Rational> = m.to_vec();
    let mut r1: Vec<Rational> = f.to_vec();
    poly_trim(&mut r0);
    poly_trim(&mut r1);
    let mut s0: Vec<Rational> = vec![];
    let mut s1: Vec<Rational> = vec![Rational::from(BigInt::from(1))];
    while !r1.is_empty() {
        let (q, r2) = poly_divmod(&r0, &r1);
        let qs1 = poly_mul(&q, &s1);
        let s2 = poly_sub(&s0, &qs1);
        r0 = std::mem::take(&mut r1);
        r1 = r2;
        s0 = std::mem::take(&mut s1);
        s1 = s2;
    }
    assert_eq!(r0.len(), 1, "cyclotomic modulus must be coprime to nonzero f");
    let g = r0[0].clone();
    s0.iter().map(|c| c / &g).collect()
}

fn poly_trim(v: &mut Vec<Rational>) {
    while v.last().is_some_and(|c| c.is_zero()) {
        v.pop();
    }
}

fn poly_sub(a: &[Rational], b: &[Rational]) -> Vec<Rational> {
    let mut out = vec![Rational::zero(); a.len().max(b.len())];
    for (i, c) in a.iter().enumerate() {
        out[i] += c;
    }
    for (i, c) in b.iter().enumerate() {
        out[i] -= c;
    }
    poly_trim(&mut out);
    out
}

fn poly_mul(a: &[Rational], b: &[Rational]) -> Vec<Rational> {
    if a.is_empty() || b.is_empty() {
        return vec![];
    }
    let mut out = vec![Rational::zero(); a.len() + b.len() - 1];
    for (i, c) in a.iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        for (j, d) in b.iter().enumerate() {
            if !d.is_zero() {
                out[i + j] += c * d;
            }
        }
    }
    poly_trim(&mut out);
    out
}

fn poly_divmod(a: &[Rational], b: &[Rational]) -> (Vec<Rational>, Vec<Rational>) {
    assert!(!b.is_empty(), "division by zero polynomial");
    let mut rem: Vec<Rational> = a.to_vec();
    poly_trim(&mut rem);
    let db = b.len() - 1;
    let lead = &b[db];
    if rem.len() <= db {
        return (vec![], rem);
    }
    let mut quo = vec![Rational::zero(); rem.len() - db];
    while rem.len() > db {
        let da = rem.len() - 1;
        let c = rem.last().unwrap() / lead;
        quo[da - db] = c.clone();
        for j in 0..=db {
            let t = &b[j] * &c;
            rem[da - db + j] -= t;
        }
        poly_trim(&mut rem);
    }
    poly_trim(&mut quo);
    (quo, rem)
}

fn legendre_symbol(k: u64, p: u64) -> i64 {
    // k^((p−1)/2) mod p for odd prime p; returns ±1 for k not divisible by p.
    let mut result: u64 = 1;
    let mut base = k % p;
    let mut e = (p - 1) / 2;
    while e > 0 {
        if e & 1 == 1 {
            result = result * base % p;
        }
        base = base * base % p;
        e >>= 1;
    }
    if result == p - 1 {
        -1
    } else {
        result as i64
    }
}

fn gauss_sqrt_prime(p: u64) -> CycloNumber {
    if p == 2 {
        return CycloNumber::root_of_unity(8, 1) + CycloNumber::root_of_unity(8, 7);
    }
    // Quadratic Gauss sum: Σ_k (k|p) ζ_p^k = √p for p ≡ 1 (4), i√p for p ≡ 3 (4).
    let mut g = CycloNumber::zero();
    for k in 1..p {
        let zeta_k = CycloNumber::root_of_unity(p as u32, k as i64);
        if legendre_symbol(k, p) == 1 {
            g = g + zeta_k;
        } else {
            g = g - zeta_k;
        }
    }
    if p % 4 == 3 {
        g = g * CycloNumber::root_of_unity(4, 3);
    }
    g
}

/// Exact √n as the positive real root, for a positive integer n.
pub fn sqrt_positive_integer(n: u64) -> CycloNumber {
    assert!(n >= 1, "radicand must be positive");
    let mut square_part: u64 = 1;
    let mut free_part: u64 = 1;
    let mut m = n;
    let mut p = 2;
    while p * p <= m {
        if m % p == 0 {
            let mut e = 0;
            while m % p == 0 {
                m /= p;
                e += 1;
            }
            square_part *= p.pow(e / 2);
            if e % 2 == 1 {
                free_part *= p;
            }
        }
        p += 1;
    }
    if m > 1 {
        free_part *= m;
    }
    let mut result = CycloNumber::from_int(square_part as i64);
    let mut q = free_part;
    let mut d = 2;
    while d * d <= q {
        if q % d == 0 {
            result = result * gauss_sqrt_prime(d);
            q /= d;
        } else {
            d += 1;
        }
    }
    if q > 1 {
        result = result * gauss_sqrt_prime(q);
    }
    result
}

/// Exact √r as the positive real root, for a positive rational r.
pub fn sqrt_rational(r: &Rational) -> Result<CycloNumber, NumError> {
    if !r.is_positive() {
        return Err(NumError::Malformed(format!("radicand {r} is not positive")));
    }
    let num = r.numer().to_u64().ok_or_else(|| {
        NumError::Malformed("radicand numerator too large for square root".into())
    })?;
    let den = r.denom().to_u64().ok_or_else(|| {
        NumError::Malformed("radicand denominator too large for square root".into())
    })?;
    // √(a/b) = √(ab)/b.
    let root = sqrt_positive_integer(num * den);
    Ok(root.mul_rat(&Rational::new(BigInt::from(1), BigInt::from(den))))
}

impl PartialEq for CycloNumber {
    fn eq(&self, other: &CycloNumber) -> bool {
        if self.order == other.order {
            return self.coeffs == other.coeffs;
        }
        let (a, b) = CycloNumber::unify(self, other);
        a.coeffs == b.coeffs
    }
}

impl Eq for CycloNumber {}

impl fmt::Debug for CycloNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CycloNumber({self})")
    }
}

impl fmt::Display for CycloNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let mag = if neg { -c.clone() } else { c.clone() };
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
            let mag_is_one = mag.numer() == mag.denom();
            if k == 0 {
                write!(f, "{mag}")?;
            } else {
                if !mag_is_one {
                    write!(f, "{mag}*")?;
                }
                if k == 1 {
                    write!(f, "z{}", self.order)?;
                } else {
                    write!(f, "z{}^{}", self.order, k)?;
                }
            }
        }
        Ok(())
    }
}

macro_rules! forward_binop {
    ($trait:ident, $method:ident, $impl_fn:path) => {
        impl $trait for CycloNumber {
            type Output = CycloNumber;
            fn $method(self, rhs: CycloNumber) -> CycloNumber {
                $impl_fn(&self, &rhs)
            }
        }
        impl $trait<&CycloNumber> for CycloNumber {
            type Output = CycloNumber;
            fn $method(self, rhs: &CycloNumber) -> CycloNumber {
                $impl_fn(&self, rhs)
            }
        }
        impl $trait<CycloNumber> for &CycloNumber {
            type Output = CycloNumber;
            fn $method(self, rhs: CycloNumber) -> CycloNumber {
                $impl_fn(self, &rhs)
            }
        }
        impl $trait<&CycloNumber> for &CycloNumber {
            type Output = CycloNumber;
            fn $method(self, rhs: &CycloNumber) -> CycloNumber {
                $impl_fn(self, rhs)
            }
        }
    };
}

forward_binop!(Add, add, CycloNumber::add_impl);
forward_binop!(Sub, sub, CycloNumber::sub_impl);
forward_binop!(Mul, mul, CycloNumber::mul_impl);

impl Div for CycloNumber {
    type Output = CycloNumber;
    fn div(self, rhs: CycloNumber) -> CycloNumber {
        self.checked_div(&rhs).expect("division by zero")
    }
}

impl Div<&CycloNumber> for &CycloNumber {
    type Output = CycloNumber;
    fn div(self, rhs: &CycloNumber) -> CycloNumber {
        self.checked_div(rhs).expect("division by zero")
    }
}

impl Neg for CycloNumber {
    type Output = CycloNumber;
    fn neg(self) -> CycloNumber {
        CycloNumber::neg_impl(&self)
    }
}

impl Neg for &CycloNumber {
    type Output = CycloNumber;
    fn neg(self) -> CycloNumber {
        CycloNumber::neg_impl(self)
    }
}

impl AddAssign<&CycloNumber> for CycloNumber {
    fn add_assign(&mut self, rhs: &CycloNumber) {
        if self.order == rhs.order {
            for (c, d) in self.coeffs.iter_mut().zip(rhs.coeffs.iter()) {
                *c += d;
            }
        } else {
            *self = CycloNumber::add_impl(self, rhs);
        }
    }
}

impl SubAssign<&CycloNumber> for CycloNumber {
    fn sub_assign(&mut self, rhs: &CycloNumber) {
        if self.order == rhs.order {
            for (c, d) in self.coeffs.iter_mut().zip(rhs.coeffs.iter()) {
                *c -= d;
            }
        } else {
            *self = CycloNumber::sub_impl(self, rhs);
        }
    }
}

impl num_traits::Zero for CycloNumber {
    fn zero() -> CycloNumber {
        CycloNumber::zero()
    }
    fn is_zero(&self) -> bool {
        CycloNumber::is_zero(self)
    }
}

impl num_traits::One for CycloNumber {
    fn one() -> CycloNumber {
        CycloNumber::one()
    }
    fn is_one(&self) -> bool {
        CycloNumber::is_one(self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::{rat, rat_int};

    #[test]
    fn totient_values() {
        let expected = [(1, 1), (2, 1), (3, 2), (4, 2), (8, 4), (12, 4), (20, 8), (24, 8), (36, 12)];
        for (n, phi) in expected {
            assert_eq!(euler_phi(n), phi);
        }
    }

    #[test]
    fn cyclotomic_polynomial_examples() {
        assert_eq!(cyclotomic_polynomial(1), vec![rat_int(-1), rat_int(1)]);
        assert_eq!(cyclotomic_polynomial(4), vec![rat_int(1), rat_int(0), rat_int(1)]);
        assert_eq!(
            cyclotomic_polynomial(12),
            vec![rat_int(1), rat_int(0), rat_int(-1), rat_int(0), rat_int(1)]
        );
    }

    #[test]
    fn primitive_cube_root_satisfies_minimal_polynomial() {
        let w = CycloNumber::root_of_unity(3, 1);
        let lhs = &w * &w + &w + CycloNumber::one();
        assert!(lhs.is_zero());
    }

    #[test]
    fn sqrt_two_as_zeta8_sum() {
        let s = CycloNumber::root_of_unity(8, 1) + CycloNumber::root_of_unity(8, 7);
        assert_eq!(&s * &s, CycloNumber::from_int(2));
    }

    #[test]
    fn twelfth_root_has_order_twelve() {
        let z = CycloNumber::root_of_unity(12, 1);
        assert!(z.pow(12).unwrap().is_one());
        for k in 1..12 {
            assert!(!z.pow(k).unwrap().is_one());
        }
    }

    #[test]
    fn product_of_conjugate_factors() {
        let w = CycloNumber::root_of_unity(3, 1);
        let w2 = CycloNumber::root_of_unity(3, 2);
        let p = (CycloNumber::one() + w) * (CycloNumber::one() + w2);
        assert!(p.is_one());
    }

    #[test]
    fn zeta6_from_cube_root() {
        // ζ_6 = (1 + i√3)/2 with i√3 = 2ζ_3 + 1.
        let i_sqrt3 = CycloNumber::root_of_unity(3, 1).mul_rat(&rat_int(2)) + CycloNumber::one();
        let lhs = (CycloNumber::one() + i_sqrt3).mul_rat(&rat(1, 2));
        assert_eq!(lhs, CycloNumber::root_of_unity(6, 1));
    }

    #[test]
    fn embedding_into_multiple_order() {
        let w = CycloNumber::root_of_unity(3, 1);
        let e = w.embed(12).unwrap();
        assert_eq!(e, CycloNumber::root_of_unity(12, 4));
        assert_eq!(e.order(), 12);
        assert_eq!(
            CycloNumber::rational(rat_int(1)).embed(12).unwrap(),
            CycloNumber::one()
        );
        assert!(matches!(
            w.embed(8),
            Err(NumError::IncompatibleOrder { order: 3, target: 8 })
        ));
    }

    #[test]
    fn embedding_is_ring_morphism() {
        let a = CycloNumber::root_of_unity(6, 1) + CycloNumber::from_int(2);
        let b = CycloNumber::root_of_unity(6, 5).mul_rat(&rat(3, 2)) - CycloNumber::one();
        let lhs = (&a * &b).embed(24).unwrap();
        let rhs = a.embed(24).unwrap() * b.embed(24).unwrap();
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn inverse_recovers_unit() {
        let a = CycloNumber::from_int(2) + CycloNumber::root_of_unity(5, 1).mul_rat(&rat_int(3));
        let inv = a.inv().unwrap();
        assert!((a * inv).is_one());
        assert_eq!(CycloNumber::zero().inv(), Err(NumError::DivisionByZero));
    }

    #[test]
    fn division_matches_multiplication_by_inverse() {
        let a = CycloNumber::root_of_unity(12, 7) + CycloNumber::from_int(1);
        let b = CycloNumber::root_of_unity(12, 5) - CycloNumber::from_int(3);
        let q = a.checked_div(&b).unwrap();
        assert_eq!(q * b, a);
    }

    #[test]
    fn gauss_sum_square_roots() {
        for n in [2u64, 3, 5, 6, 7, 10, 12, 15, 30] {
            let s = sqrt_positive_integer(n);
            assert_eq!(&s * &s, CycloNumber::from_int(n as i64), "sqrt({n})^2");
            let (re, im) = s.approx_complex(10);
            assert!(re > 0.0, "sqrt({n}) should embed as the positive root");
            assert!(im.abs() < 1e-9, "sqrt({n}) should be real");
            assert!((re - (n as f64).sqrt()).abs() < 1e-9);
        }
    }

    #[test]
    fn rational_square_root() {
        let r = rat(3, 4);
        let s = sqrt_rational(&r).unwrap();
        assert_eq!(&s * &s, CycloNumber::rational(r));
        assert!(sqrt_rational(&rat(-1, 2)).is_err());
    }

    #[test]
    fn approximation_examples() {
        let (re, im) = CycloNumber::root_of_unity(4, 1).approx_complex(10);
        assert!(re.abs() < 1e-12 && (im - 1.0).abs() < 1e-12);
        let s = CycloNumber::root_of_unity(8, 1) + CycloNumber::root_of_unity(8, 7);
        let (re, im) = s.approx_complex(10);
        assert!((re - std::f64::consts::SQRT_2).abs() < 1e-12 && im.abs() < 1e-12);
        assert_eq!(CycloNumber::zero().approx_complex(10), (0.0, 0.0));
    }

    #[test]
    fn json_round_trip() {
        let a = CycloNumber::root_of_unity(12, 5).mul_rat(&rat(-7, 3)) + CycloNumber::from_int(4);
        let v = a.to_json();
        let b = CycloNumber::from_json(&v).unwrap();
        assert_eq!(a, b);
        assert_eq!(v["order"], 12);
        assert_eq!(v["coeffs"].as_array().unwrap().len(), 4);
    }

    #[test]
    fn json_rejects_wrong_coefficient_count() {
        let v = json!({"order": 12, "coeffs": [["1","1"]]});
        assert!(CycloNumber::from_json(&v).is_err());
    }

    #[test]
    fn display_is_readable() {
        let a = CycloNumber::root_of_unity(8, 1).mul_rat(&rat(1, 2)) - CycloNumber::from_int(3);
        assert_eq!(a.to_string(), "-3 + 1/2*z8");
        assert_eq!(CycloNumber::zero().to_string(), "0");
    }
}
