//! Rewriting invariant polynomials in terms of basic invariants, plus the
//! discriminant and Jacobian utilities built on that.

use std::sync::Arc;

use exactnum::CycloNumber;
use polyring::{same_frame, weighted_monomials, MultiPoly, VarFrame};

use crate::group::ReflectionGroup;
use crate::GroupError;

/// Memoized powers of a fixed list of basic invariants, shared across
/// repeated rewrites against the same basis.
pub struct MonomialBasisCache<'a> {
    invariants: &'a [MultiPoly],
    powers: Vec<Vec<MultiPoly>>,
}

impl<'a> MonomialBasisCache<'a> {
    pub fn new(invariants: &'a [MultiPoly]) -> MonomialBasisCache<'a> {
        assert!(!invariants.is_empty(), "an invariant basis is required");
        let frame = invariants[0].frame();
        for p in invariants {
            assert!(same_frame(frame, p.frame()), "invariants share one frame");
        }
        let powers = invariants
            .iter()
            .map(|p| vec![MultiPoly::one(p.frame())])
            .collect();
        MonomialBasisCache { invariants, powers }
    }

    /// The expansion Π_i invariants_i^{b_i} in the invariants' frame.
    pub fn expansion(&mut self, exps: &[u16]) -> MultiPoly {
        assert_eq!(exps.len(), self.invariants.len(), "exponent length mismatch");
        for (i, &k) in exps.iter().enumerate() {
            while self.powers[i].len() <= k as usize {
                let next = self.powers[i].last().expect("power list is seeded")
                    * &self.invariants[i];
                self.powers[i].push(next);
            }
        }
        let mut acc = MultiPoly::one(self.invariants[0].frame());
        for (i, &k) in exps.iter().enumerate() {
            if k > 0 {
                acc = &acc * &self.powers[i][k as usize];
            }
        }
        acc
    }
}

/// Writes a homogeneous polynomial in the algebra generated by the cached
/// basic invariants: the result R satisfies R(x) with x_i ↦ invariants_i
/// reproducing the input exactly. Degrees are the weights of the x-frame.
pub fn invariantize(
    p: &MultiPoly,
    degrees: &[u32],
    x_frame: &Arc<VarFrame>,
    cache: &mut MonomialBasisCache<'_>,
) -> Result<MultiPoly, GroupError> {
    assert_eq!(degrees.len(), x_frame.len(), "weight/frame length mismatch");
    if p.is_zero() {
        return Ok(MultiPoly::zero(x_frame));
    }
    let degree = p.homogeneous_degree().ok_or_else(|| {
        GroupError::InvariantizationFailed("the polynomial is not homogeneous".into())
    })?;
    let candidates = weighted_monomials(degrees, degree, 0, 0).indices;
    if candidates.is_empty() {
        return Err(GroupError::InvariantizationFailed(format!(
            "no invariant monomial reaches degree {degree}"
        )));
    }
    let expansions: Vec<MultiPoly> = candidates.iter().map(|b| cache.expansion(b)).collect();

    let mut monomials: Vec<Vec<u16>> = p.terms().map(|(e, _)| e.clone()).collect();
    for e in &expansions {
        monomials.extend(e.terms().map(|(exp, _)| exp.clone()));
    }
    monomials.sort();
    monomials.dedup();
    monomials.reverse();

    // Row-reduce equations (one per ambient monomial) until the coefficient
    // columns reach full rank; a certified global check replaces inspecting
    // the remaining rows.
    let width = candidates.len();
    let mut pivot_rows: Vec<(usize, Vec<CycloNumber>, CycloNumber)> = Vec::new();
    for mono in &monomials {
        let mut row: Vec<CycloNumber> = expansions.iter().map(|e| e.coeff(mono)).collect();
        let mut rhs = p.coeff(mono);
        for (col, prow, prhs) in &pivot_rows {
            let factor = row[*col].clone();
            if factor.is_zero() {
                continue;
            }
            for (r, pr) in row.iter_mut().zip(prow) {
                *r -= &(&factor * pr);
            }
            rhs -= &(&factor * prhs);
        }
        match row.iter().position(|c| !c.is_zero()) {
            Some(col) => {
                let scale = row[col].inv().expect("pivot is nonzero");
                for r in &mut row {
                    *r = &*r * &scale;
                }
                rhs = &rhs * &scale;
                pivot_rows.push((col, row, rhs));
                if pivot_rows.len() == width {
                    break;
                }
            }
            None => {
                if !rhs.is_zero() {
                    return Err(GroupError::InvariantizationFailed(
                        "the polynomial is not in the invariant algebra".into(),
                    ));
                }
            }
        }
    }

    for k in (0..pivot_rows.len()).rev() {
        let (col, _, rhs) = {
            let (c, _, r) = &pivot_rows[k];
            (*c, (), r.clone())
        };
        for j in 0..k {
            let factor = pivot_rows[j].1[col].clone();
            if factor.is_zero() {
                continue;
            }
            pivot_rows[j].1[col] = CycloNumber::zero();
            pivot_rows[j].2 -= &(&factor * &rhs);
        }
    }

    let mut solution = vec![CycloNumber::zero(); width];
    for (col, _, rhs) in &pivot_rows {
        solution[*col] = rhs.clone();
    }

    let mut check = MultiPoly::zero(p.frame());
    let mut result = MultiPoly::zero(x_frame);
    for ((b, c), e) in candidates.iter().zip(&solution).zip(&expansions) {
        if c.is_zero() {
            continue;
        }
        check += &e.mul_scalar(c);
        result += &MultiPoly::monomial(x_frame, b.clone(), c.clone());
    }
    if check != *p {
        return Err(GroupError::InvariantizationFailed(
            "the polynomial is not in the invariant algebra".into(),
        ));
    }
    Ok(result)
}

/// The product Π_H L_H^{e_H} over all reflection hyperplanes, in ambient
/// coordinates.
pub fn discriminant_form(group: &ReflectionGroup) -> Result<MultiPoly, GroupError> {
    let frame = group.ambient_frame();
    let mut acc = MultiPoly::one(frame);
    for h in group.hyperplanes()? {
        acc = &acc * &h.linear_form(frame).pow(h.order);
    }
    Ok(acc)
}

/// The discriminant written in the basic invariants and scaled so the
/// coefficient of x_1^rank is 1.
pub fn discriminant(
    group: &ReflectionGroup,
    x_frame: &Arc<VarFrame>,
) -> Result<MultiPoly, GroupError> {
    let delta = discriminant_form(group)?;
    let invariants = group.basic_invariants()?;
    let mut cache = MonomialBasisCache::new(invariants);
    let expressed = invariantize(&delta, group.degrees(), x_frame, &mut cache)?;
    let mut top = vec![0u16; group.rank()];
    top[0] = group.rank() as u16;
    let kappa = expressed.coeff(&top);
    if kappa.is_zero() {
        return Err(GroupError::InvariantizationFailed(
            "the discriminant has no top power of x1 to normalize".into(),
        ));
    }
    Ok(expressed.mul_scalar(&kappa.inv().expect("nonzero coefficient")))
}

/// Rows ∂polys_i/∂u_j of the Jacobian.
pub fn jacobian(polys: &[MultiPoly]) -> Vec<Vec<MultiPoly>> {
    assert!(!polys.is_empty(), "jacobian of an empty list");
    let n = polys[0].frame().len();
    polys
        .iter()
        .map(|p| (0..n).map(|j| p.partial(j)).collect())
        .collect()
}

/// Determinant of a small square matrix of polynomials by first-row Laplace
/// expansion.
pub fn poly_det(m: &[Vec<MultiPoly>]) -> MultiPoly {
    let n = m.len();
    assert!(m.iter().all(|row| row.len() == n), "square matrix required");
    if n == 1 {
        return m[0][0].clone();
    }
    let frame = m[0][0].frame();
    let mut acc = MultiPoly::zero(frame);
    for j in 0..n {
        if m[0][j].is_zero() {
            continue;
        }
        let minor: Vec<Vec<MultiPoly>> = (1..n)
            .map(|r| {
                (0..n)
                    .filter(|&c| c != j)
                    .map(|c| m[r][c].clone())
                    .collect()
            })
            .collect();
        let cofactor = &m[0][j] * &poly_det(&minor);
        if j % 2 == 0 {
            acc += &cofactor;
        } else {
            acc -= &cofactor;
        }
    }
    acc
}
