//! Sparse multivariate polynomials over cyclotomic numbers.
//!
//! Design notes:
//! - Terms live in a hash map keyed by exponent vectors; canonical order
//!   (serialization, display, division) is graded-lex, leading term first.
//! - Exact division repeatedly cancels the graded-lex leading term and fails
//!   with `InexactDivision` when a leading term is not divisible.

use crate::frame::{same_frame, VarFrame};
use crate::PolyError;
use exactnum::{CycloNumber, Rational};
use num_bigint::BigInt;
use serde_json::{json, Value};
use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};
use std::sync::Arc;

/// A sparse polynomial over Q(zeta_N) coefficients in a fixed frame.
#[derive(Clone)]
pub struct MultiPoly {
    frame: Arc<VarFrame>,
    terms: HashMap<Vec<u16>, CycloNumber>,
}

impl MultiPoly {
    /// The zero polynomial.
    pub fn zero(frame: &Arc<VarFrame>) -> MultiPoly {
        MultiPoly {
            frame: Arc::clone(frame),
            terms: HashMap::new(),
        }
    }

    /// A constant polynomial.
    pub fn constant(frame: &Arc<VarFrame>, c: CycloNumber) -> MultiPoly {
        let mut p = MultiPoly::zero(frame);
        if !c.is_zero() {
            p.terms.insert(vec![0; frame.len()], c);
        }
        p
    }

    /// The constant 1.
    pub fn one(frame: &Arc<VarFrame>) -> MultiPoly {
        MultiPoly::constant(frame, CycloNumber::one())
    }

    /// The i-th coordinate function (0-based).
    pub fn var(frame: &Arc<VarFrame>, i: usize) -> MultiPoly {
        assert!(i < frame.len());
        let mut exp = vec![0u16; frame.len()];
        exp[i] = 1;
        MultiPoly::monomial(frame, exp, CycloNumber::one())
    }

    /// A single term c·z^exp.
    pub fn monomial(frame: &Arc<VarFrame>, exp: Vec<u16>, coeff: CycloNumber) -> MultiPoly {
        assert_eq!(exp.len(), frame.len(), "exponent length must match frame");
        let mut p = MultiPoly::zero(frame);
        if !coeff.is_zero() {
            p.terms.insert(exp, coeff);
        }
        p
    }

    /// The coordinate frame.
    pub fn frame(&self) -> &Arc<VarFrame> {
        &self.frame
    }

    /// Whether this is the zero polynomial.
    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Number of stored (nonzero) terms.
    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Iterates over (exponent, coefficient) pairs in arbitrary order.
    pub fn terms(&self) -> impl Iterator<Item = (&Vec<u16>, &CycloNumber)> {
        self.terms.iter()
    }

    /// The coefficient of z^exp (zero if absent).
    pub fn coeff(&self, exp: &[u16]) -> CycloNumber {
        self.terms.get(exp).cloned().unwrap_or_else(CycloNumber::zero)
    }

    fn insert_add(&mut self, exp: Vec<u16>, c: CycloNumber) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(exp) {
            std::collections::hash_map::Entry::Occupied(mut e) => {
                *e.get_mut() += &c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
            std::collections::hash_map::Entry::Vacant(e) => {
                e.insert(c);
            }
        }
    }

    fn require_same_frame(&self, other: &MultiPoly) -> Result<(), PolyError> {
        if same_frame(&self.frame, &other.frame) {
            Ok(())
        } else {
            Err(PolyError::FrameMismatch(format!(
                "{} vs {}",
                self.frame, other.frame
            )))
        }
    }

    /// Sum; errors if the frames differ.
    pub fn checked_add(&self, rhs: &MultiPoly) -> Result<MultiPoly, PolyError> {
        self.require_same_frame(rhs)?;
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.insert_add(e.clone(), c.clone());
        }
        Ok(out)
    }

    /// Difference; errors if the frames differ.
    pub fn checked_sub(&self, rhs: &MultiPoly) -> Result<MultiPoly, PolyError> {
        self.require_same_frame(rhs)?;
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.insert_add(e.clone(), -c);
        }
        Ok(out)
    }

    /// Product; errors if the frames differ.
    pub fn checked_mul(&self, rhs: &MultiPoly) -> Result<MultiPoly, PolyError> {
        self.require_same_frame(rhs)?;
        let mut out = MultiPoly::zero(&self.frame);
        for (ea, ca) in &self.terms {
            for (eb, cb) in &rhs.terms {
                let exp: Vec<u16> = ea.iter().zip(eb).map(|(&x, &y)| x + y).collect();
                out.insert_add(exp, ca * cb);
            }
        }
        Ok(out)
    }

    /// Scales by a field element.
    pub fn mul_scalar(&self, c: &CycloNumber) -> MultiPoly {
        if c.is_zero() {
            return MultiPoly::zero(&self.frame);
        }
        MultiPoly {
            frame: Arc::clone(&self.frame),
            terms: self.terms.iter().map(|(e, v)| (e.clone(), v * c)).collect(),
        }
    }

    /// Scales by a rational.
    pub fn mul_rat(&self, r: &Rational) -> MultiPoly {
        use num_traits::Zero;
        if r.is_zero() {
            return MultiPoly::zero(&self.frame);
        }
        MultiPoly {
            frame: Arc::clone(&self.frame),
            terms: self
                .terms
                .iter()
                .map(|(e, v)| (e.clone(), v.mul_rat(r)))
                .collect(),
        }
    }

    /// Non-negative integer power by repeated squaring.
    pub fn pow(&self, k: u32) -> MultiPoly {
        let mut result = MultiPoly::one(&self.frame);
        let mut base = self.clone();
        let mut e = k;
        while e > 0 {
            if e & 1 == 1 {
                result = &result * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        result
    }

    /// The iterated partial derivative ∂^a P / ∂z^a.
    pub fn partial_derivative(&self, a: &[u16]) -> MultiPoly {
        assert_eq!(a.len(), self.frame.len(), "multi-index length must match frame");
        let mut out = MultiPoly::zero(&self.frame);
        'term: for (exp, c) in &self.terms {
            let mut factor = BigInt::from(1);
            let mut new_exp = exp.clone();
            for i in 0..a.len() {
                if exp[i] < a[i] {
                    continue 'term;
                }
                for k in 0..a[i] {
                    factor *= BigInt::from(exp[i] - k);
                }
                new_exp[i] = exp[i] - a[i];
            }
            out.insert_add(new_exp, c.mul_rat(&Rational::from(factor)));
        }
        out
    }

    /// The first partial derivative ∂P/∂z_i (0-based variable index).
    pub fn partial(&self, i: usize) -> MultiPoly {
        let mut a = vec![0u16; self.frame.len()];
        a[i] = 1;
        self.partial_derivative(&a)
    }

    /// Exact evaluation at a point.
    pub fn evaluate(&self, point: &[CycloNumber]) -> CycloNumber {
        assert_eq!(point.len(), self.frame.len(), "point length must match frame");
        let n = point.len();
        let mut max_e = vec![0u16; n];
        for exp in self.terms.keys() {
            for i in 0..n {
                max_e[i] = max_e[i].max(exp[i]);
            }
        }
        let powers: Vec<Vec<CycloNumber>> = (0..n)
            .map(|i| {
                let mut v = Vec::with_capacity(max_e[i] as usize + 1);
                v.push(CycloNumber::one());
                for k in 1..=max_e[i] as usize {
                    let next = &v[k - 1] * &point[i];
                    v.push(next);
                }
                v
            })
            .collect();
        let mut total = CycloNumber::zero();
        for (exp, c) in &self.terms {
            let mut term = c.clone();
            for i in 0..n {
                if exp[i] > 0 {
                    term = term * &powers[i][exp[i] as usize];
                }
            }
            total += &term;
        }
        total
    }

    /// Substitutes one polynomial per variable; result lives in the
    /// substitutions' shared frame.
    pub fn compose(&self, subs: &[MultiPoly]) -> Result<MultiPoly, PolyError> {
        if subs.len() != self.frame.len() {
            return Err(PolyError::FrameMismatch(format!(
                "{} substitutions for frame {}",
                subs.len(),
                self.frame
            )));
        }
        let target = &subs[0].frame;
        for s in subs {
            if !same_frame(target, &s.frame) {
                return Err(PolyError::FrameMismatch(
                    "substitutions must share one frame".into(),
                ));
            }
        }
        let n = self.frame.len();
        let mut max_e = vec![0u16; n];
        for exp in self.terms.keys() {
            for i in 0..n {
                max_e[i] = max_e[i].max(exp[i]);
            }
        }
        let powers: Vec<Vec<MultiPoly>> = (0..n)
            .map(|i| {
                let mut v = Vec::with_capacity(max_e[i] as usize + 1);
                v.push(MultiPoly::one(target));
                for k in 1..=max_e[i] as usize {
                    let next = &v[k - 1] * &subs[i];
                    v.push(next);
                }
                v
            })
            .collect();
        let mut total = MultiPoly::zero(target);
        for (exp, c) in &self.terms {
            let mut term = MultiPoly::constant(target, c.clone());
            for i in 0..n {
                if exp[i] > 0 {
                    term = &term * &powers[i][exp[i] as usize];
                }
            }
            total += &term;
        }
        Ok(total)
    }

    /// The graded-lex leading term, if the polynomial is nonzero.
    pub fn leading_term(&self) -> Option<(&Vec<u16>, &CycloNumber)> {
        self.terms
            .iter()
            .max_by_key(|(e, _)| (e.iter().map(|&x| x as u32).sum::<u32>(), (*e).clone()))
    }

    /// Terms sorted leading-first (graded-lex descending).
    pub fn sorted_terms_desc(&self) -> Vec<(Vec<u16>, CycloNumber)> {
        let mut v: Vec<(Vec<u16>, CycloNumber)> = self
            .terms
            .iter()
            .map(|(e, c)| (e.clone(), c.clone()))
            .collect();
        v.sort_by(|(a, _), (b, _)| {
            let da: u32 = a.iter().map(|&x| x as u32).sum();
            let db: u32 = b.iter().map(|&x| x as u32).sum();
            db.cmp(&da).then_with(|| b.cmp(a))
        });
        v
    }

    /// Exact quotient P/Q; errors when division leaves a remainder.
    pub fn exact_divide(&self, q: &MultiPoly) -> Result<MultiPoly, PolyError> {
        self.require_same_frame(q)?;
        assert!(!q.is_zero(), "division by the zero polynomial");
        let (lt_exp, lt_c) = q.leading_term().unwrap();
        let lt_exp = lt_exp.clone();
        let lt_c = lt_c.clone();
        let lt_c_inv = lt_c.inv().expect("leading coefficient is nonzero");
        let mut work: BTreeMap<(u32, Vec<u16>), CycloNumber> = self
            .terms
            .iter()
            .map(|(e, c)| ((e.iter().map(|&x| x as u32).sum(), e.clone()), c.clone()))
            .collect();
        let mut quotient = MultiPoly::zero(&self.frame);
        while let Some(((_, exp), c)) = work.pop_last() {
            if c.is_zero() {
                continue;
            }
            if exp.iter().zip(&lt_exp).any(|(&e, &l)| e < l) {
                return Err(PolyError::InexactDivision);
            }
            let t_exp: Vec<u16> = exp.iter().zip(&lt_exp).map(|(&e, &l)| e - l).collect();
            let t_c = &c * &lt_c_inv;
            for (qe, qc) in &q.terms {
                if *qe == lt_exp {
                    continue;
                }
                let target_exp: Vec<u16> = t_exp.iter().zip(qe).map(|(&x, &y)| x + y).collect();
                let key = (target_exp.iter().map(|&x| x as u32).sum(), target_exp);
                let delta = &t_c * qc;
                match work.entry(key) {
                    std::collections::btree_map::Entry::Occupied(mut e) => {
                        *e.get_mut() -= &delta;
                        if e.get().is_zero() {
                            e.remove();
                        }
                    }
                    std::collections::btree_map::Entry::Vacant(e) => {
                        e.insert(-delta);
                    }
                }
            }
            quotient.insert_add(t_exp, t_c);
        }
        Ok(quotient)
    }

    /// The common total degree if homogeneous (zero counts as homogeneous of
    /// any degree and returns None).
    pub fn homogeneous_degree(&self) -> Option<u32> {
        let mut degree = None;
        for exp in self.terms.keys() {
            let d: u32 = exp.iter().map(|&x| x as u32).sum();
            match degree {
                None => degree = Some(d),
                Some(existing) if existing != d => return None,
                _ => {}
            }
        }
        degree
    }

    /// The common weighted degree a·d over the frame weights, if homogeneous.
    pub fn weighted_degree(&self) -> Option<u32> {
        let weights = self.frame.weights()?;
        let mut degree = None;
        for exp in self.terms.keys() {
            let d: u32 = exp
                .iter()
                .zip(weights)
                .map(|(&e, &w)| e as u32 * w)
                .sum();
            match degree {
                None => degree = Some(d),
                Some(existing) if existing != d => return None,
                _ => {}
            }
        }
        degree
    }

    /// Serializes with terms in graded-lex order, leading term first.
    pub fn to_json(&self) -> Value {
        let terms: Vec<Value> = self
            .sorted_terms_desc()
            .into_iter()
            .map(|(e, c)| json!({ "exp": e, "coeff": c.to_json() }))
            .collect();
        json!({
            "vars": self.frame.names(),
            "weights": self.frame.weights(),
            "terms": terms,
        })
    }

    /// Parses the serialization produced by `to_json`.
    pub fn from_json(v: &Value) -> Result<MultiPoly, PolyError> {
        let vars = v
            .get("vars")
            .and_then(Value::as_array)
            .ok_or_else(|| PolyError::Malformed("missing vars".into()))?;
        let names: Vec<String> = vars
            .iter()
            .map(|s| {
                s.as_str()
                    .map(str::to_owned)
                    .ok_or_else(|| PolyError::Malformed("variable name is not a string".into()))
            })
            .collect::<Result<_, _>>()?;
        let frame = match v.get("weights") {
            None | Some(Value::Null) => VarFrame::new(names),
            Some(w) => {
                let weights: Vec<u32> = w
                    .as_array()
                    .ok_or_else(|| PolyError::Malformed("weights is not an array".into()))?
                    .iter()
                    .map(|x| {
                        x.as_u64()
                            .map(|u| u as u32)
                            .ok_or_else(|| PolyError::Malformed("bad weight".into()))
                    })
                    .collect::<Result<_, _>>()?;
                VarFrame::weighted(names, weights)
            }
        };
        let mut poly = MultiPoly::zero(&frame);
        let terms = v
            .get("terms")
            .and_then(Value::as_array)
            .ok_or_else(|| PolyError::Malformed("missing terms".into()))?;
        for t in terms {
            let exp: Vec<u16> = t
                .get("exp")
                .and_then(Value::as_array)
                .ok_or_else(|| PolyError::Malformed("term missing exp".into()))?
                .iter()
                .map(|x| {
                    x.as_u64()
                        .map(|u| u as u16)
                        .ok_or_else(|| PolyError::Malformed("bad exponent".into()))
                })
                .collect::<Result<_, _>>()?;
            if exp.len() != frame.len() {
                return Err(PolyError::Malformed("exponent length mismatch".into()));
            }
            let coeff = t
                .get("coeff")
                .ok_or_else(|| PolyError::Malformed("term missing coeff".into()))
                .and_then(|c| {
                    CycloNumber::from_json(c).map_err(|e| PolyError::Malformed(e.to_string()))
                })?;
            poly.insert_add(exp, coeff);
        }
        Ok(poly)
    }
}

impl PartialEq for MultiPoly {
    fn eq(&self, other: &MultiPoly) -> bool {
        if !same_frame(&self.frame, &other.frame) || self.terms.len() != other.terms.len() {
            return false;
        }
        self.terms
            .iter()
            .all(|(e, c)| other.terms.get(e).is_some_and(|d| c == d))
    }
}

impl Eq for MultiPoly {}

macro_rules! forward_poly_binop {
    ($trait:ident, $method:ident, $checked:ident) => {
        impl $trait for &MultiPoly {
            type Output = MultiPoly;
            fn $method(self, rhs: &MultiPoly) -> MultiPoly {
                self.$checked(rhs).expect("operand frames must match")
            }
        }
        impl $trait for MultiPoly {
            type Output = MultiPoly;
            fn $method(self, rhs: MultiPoly) -> MultiPoly {
                (&self).$method(&rhs)
            }
        }
        impl $trait<&MultiPoly> for MultiPoly {
            type Output = MultiPoly;
            fn $method(self, rhs: &MultiPoly) -> MultiPoly {
                (&self).$method(rhs)
            }
        }
    };
}

forward_poly_binop!(Add, add, checked_add);
forward_poly_binop!(Sub, sub, checked_sub);
forward_poly_binop!(Mul, mul, checked_mul);

impl AddAssign<&MultiPoly> for MultiPoly {
    fn add_assign(&mut self, rhs: &MultiPoly) {
        assert!(
            same_frame(&self.frame, &rhs.frame),
            "operand frames must match"
        );
        for (e, c) in &rhs.terms {
            self.insert_add(e.clone(), c.clone());
        }
    }
}

impl SubAssign<&MultiPoly> for MultiPoly {
    fn sub_assign(&mut self, rhs: &MultiPoly) {
        assert!(
            same_frame(&self.frame, &rhs.frame),
            "operand frames must match"
        );
        for (e, c) in &rhs.terms {
            self.insert_add(e.clone(), -c);
        }
    }
}

impl Neg for &MultiPoly {
    type Output = MultiPoly;
    fn neg(self) -> MultiPoly {
        MultiPoly {
            frame: Arc::clone(&self.frame),
            terms: self.terms.iter().map(|(e, c)| (e.clone(), -c)).collect(),
        }
    }
}

impl Neg for MultiPoly {
    type Output = MultiPoly;
    fn neg(self) -> MultiPoly {
        -&self
    }
}

impl fmt::Display for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (exp, coeff) in self.sorted_terms_desc() {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            let mono: Vec<String> = exp
                .iter()
                .enumerate()
                .filter(|(_, &e)| e > 0)
                .map(|(i, &e)| {
                    if e == 1 {
                        self.frame.name(i).to_string()
                    } else {
                        format!("{}^{}", self.frame.name(i), e)
                    }
                })
                .collect();
            if mono.is_empty() {
                write!(f, "({coeff})")?;
            } else if coeff.is_one() {
                write!(f, "{}", mono.join("*"))?;
            } else {
                write!(f, "({})*{}", coeff, mono.join("*"))?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "MultiPoly({self})")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use exactnum::rat;

    fn z2() -> Arc<VarFrame> {
        VarFrame::standard("z", 2)
    }

    #[test]
    fn difference_of_squares() {
        let f = z2();
        let z1 = MultiPoly::var(&f, 0);
        let z2v = MultiPoly::var(&f, 1);
        let p = (&z1 + &z2v) * (&z1 - &z2v);
        let expected = &(&z1 * &z1) - &(&z2v * &z2v);
        assert_eq!(p, expected);
    }

    #[test]
    fn additive_inverse_cancels() {
        let f = z2();
        let p = MultiPoly::monomial(&f, vec![2, 1], CycloNumber::from_int(3))
            + MultiPoly::var(&f, 1);
        let q = &p + &p.mul_rat(&rat(-1, 1));
        assert!(q.is_zero());
    }

    #[test]
    fn iterated_partial_derivative() {
        let f = z2();
        // ∂²(z1³ z2)/∂z1² = 6 z1 z2.
        let p = MultiPoly::monomial(&f, vec![3, 1], CycloNumber::one());
        let d = p.partial_derivative(&[2, 0]);
        assert_eq!(
            d,
            MultiPoly::monomial(&f, vec![1, 1], CycloNumber::from_int(6))
        );
        assert!(MultiPoly::one(&f).partial(0).is_zero());
    }

    #[test]
    fn derivative_of_own_monomial_is_factorial() {
        let f = VarFrame::standard("z", 3);
        let a = [3u16, 0, 2];
        let p = MultiPoly::monomial(&f, a.to_vec(), CycloNumber::one());
        let d = p.partial_derivative(&a);
        let point = vec![CycloNumber::from_int(5); 3];
        assert_eq!(d.evaluate(&point), CycloNumber::from_int(12));
    }

    #[test]
    fn evaluation_uses_exact_arithmetic() {
        let f = z2();
        let p = MultiPoly::monomial(&f, vec![1, 1], CycloNumber::one());
        let half = CycloNumber::rational(rat(1, 2));
        assert_eq!(
            p.evaluate(&[half.clone(), half]),
            CycloNumber::rational(rat(1, 4))
        );
    }

    #[test]
    fn composition_with_identity_is_identity() {
        let f = z2();
        let p = MultiPoly::monomial(&f, vec![2, 3], CycloNumber::from_int(7))
            + MultiPoly::var(&f, 0);
        let id = [MultiPoly::var(&f, 0), MultiPoly::var(&f, 1)];
        assert_eq!(p.compose(&id).unwrap(), p);
    }

    #[test]
    fn composition_errors_on_wrong_arity() {
        let f = z2();
        let p = MultiPoly::var(&f, 0);
        assert!(matches!(
            p.compose(&[MultiPoly::var(&f, 0)]),
            Err(PolyError::FrameMismatch(_))
        ));
    }

    #[test]
    fn exact_division_examples() {
        let f = z2();
        let z1 = MultiPoly::var(&f, 0);
        let z2v = MultiPoly::var(&f, 1);
        let num = &(&z1 * &z1) - &(&z2v * &z2v);
        let den = &z1 - &z2v;
        assert_eq!(num.exact_divide(&den).unwrap(), &z1 + &z2v);
        let bad = &num + &MultiPoly::one(&f);
        assert_eq!(bad.exact_divide(&den), Err(PolyError::InexactDivision));
    }

    #[test]
    fn leading_term_is_graded_lex_max() {
        let f = z2();
        let p = MultiPoly::monomial(&f, vec![1, 2], CycloNumber::one())
            + MultiPoly::monomial(&f, vec![2, 1], CycloNumber::from_int(5))
            + MultiPoly::var(&f, 0);
        let (e, c) = p.leading_term().unwrap();
        assert_eq!(e, &vec![2, 1]);
        assert_eq!(c, &CycloNumber::from_int(5));
    }

    #[test]
    fn weighted_degree_checks_homogeneity() {
        let f = VarFrame::standard_weighted("x", vec![12, 6]);
        let p = MultiPoly::var(&f, 0) + MultiPoly::monomial(&f, vec![0, 2], CycloNumber::from_int(4));
        assert_eq!(p.weighted_degree(), Some(12));
        let q = &p + &MultiPoly::var(&f, 1);
        assert_eq!(q.weighted_degree(), None);
    }

    #[test]
    fn serialization_round_trips_and_orders_terms() {
        let f = VarFrame::standard_weighted("x", vec![4, 2]);
        let p = MultiPoly::monomial(&f, vec![0, 2], CycloNumber::root_of_unity(3, 1))
            + MultiPoly::var(&f, 0).mul_rat(&rat(-5, 3))
            + MultiPoly::monomial(&f, vec![1, 1], CycloNumber::one());
        let v = p.to_json();
        let exps: Vec<Vec<u64>> = v["terms"]
            .as_array()
            .unwrap()
            .iter()
            .map(|t| {
                t["exp"]
                    .as_array()
                    .unwrap()
                    .iter()
                    .map(|x| x.as_u64().unwrap())
                    .collect()
            })
            .collect();
        assert_eq!(exps, vec![vec![1, 1], vec![0, 2], vec![1, 0]]);
        assert_eq!(MultiPoly::from_json(&v).unwrap(), p);
    }
}
