//! The reflection-group model: enumeration, hyperplanes, basic invariants,
//! and the Reynolds/Molien verification oracles.

use std::collections::{BTreeMap, HashSet, VecDeque};
use std::sync::{Arc, OnceLock};

use exactla::Matrix;
use exactnum::{rat, CycloNumber};
use polyring::{MultiPoly, VarFrame};

use crate::catalog::CatalogTriplet;
use crate::invariantize::{jacobian, poly_det};
use crate::GroupError;

/// Default enumeration cap; covers every catalog instance with room to spare.
pub const DEFAULT_CAP: usize = 10_000;

/// A reflection hyperplane together with the order of its pointwise
/// stabilizer.
#[derive(Debug, Clone)]
pub struct Hyperplane {
    /// Coefficients of the defining linear form L_H in the ambient
    /// coordinates, scaled so the first nonzero coefficient is 1.
    pub form: Vec<CycloNumber>,
    /// Order e(H) of the cyclic subgroup fixing the hyperplane pointwise.
    pub order: u32,
}

impl Hyperplane {
    /// The linear form L_H as a degree-one polynomial in the given frame.
    pub fn linear_form(&self, frame: &Arc<VarFrame>) -> MultiPoly {
        assert_eq!(frame.len(), self.form.len(), "frame size mismatch");
        let mut p = MultiPoly::zero(frame);
        for (j, c) in self.form.iter().enumerate() {
            if !c.is_zero() {
                p += &MultiPoly::var(frame, j).mul_scalar(c);
            }
        }
        p
    }

    /// Evaluates L_H at a point.
    pub fn evaluate(&self, point: &[CycloNumber]) -> CycloNumber {
        assert_eq!(point.len(), self.form.len(), "point size mismatch");
        let mut acc = CycloNumber::zero();
        for (c, v) in self.form.iter().zip(point) {
            acc += &(c * v);
        }
        acc
    }
}

/// How a group's basic invariants are obtained.
pub(crate) enum InvariantRecipe {
    /// Explicit polynomials in the ambient frame, aligned with the degrees.
    Closed(Vec<MultiPoly>),
    /// Group-average monomial seeds of each degree and normalize monically.
    Reynolds,
}

/// A finite complex reflection group with its catalog data and lazily
/// computed enumeration, hyperplanes, and basic invariants.
pub struct ReflectionGroup {
    pub(crate) name: String,
    pub(crate) field_order: u32,
    pub(crate) generators: Vec<Matrix>,
    pub(crate) degrees: Vec<u32>,
    pub(crate) codegrees: Vec<u32>,
    pub(crate) ambient: Arc<VarFrame>,
    pub(crate) recipe: InvariantRecipe,
    pub(crate) triplet_data: Option<CatalogTriplet>,
    pub(crate) coxeter: bool,
    pub(crate) cap: usize,
    elements: OnceLock<Result<Vec<Matrix>, GroupError>>,
    hyperplanes: OnceLock<Result<Vec<Hyperplane>, GroupError>>,
    invariants: OnceLock<Result<Vec<MultiPoly>, GroupError>>,
}

impl std::fmt::Debug for ReflectionGroup {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("ReflectionGroup")
            .field("name", &self.name)
            .field("rank", &self.degrees.len())
            .field("degrees", &self.degrees)
            .field("field_order", &self.field_order)
            .finish()
    }
}

impl ReflectionGroup {
    pub(crate) fn assemble(
        name: String,
        field_order: u32,
        generators: Vec<Matrix>,
        degrees: Vec<u32>,
        codegrees: Vec<u32>,
        recipe: InvariantRecipe,
        triplet_data: Option<CatalogTriplet>,
        coxeter: bool,
    ) -> ReflectionGroup {
        let rank = degrees.len();
        assert!(rank > 0, "a reflection group needs at least one degree");
        assert_eq!(codegrees.len(), rank, "degree/codegree length mismatch");
        assert!(!generators.is_empty(), "a reflection group needs generators");
        for g in &generators {
            assert_eq!(g.rows(), rank, "generator row count mismatch");
            assert_eq!(g.cols(), rank, "generator column count mismatch");
        }
        let generators = generators
            .into_iter()
            .map(|g| {
                g.embed(field_order)
                    .expect("generator entries lie in the declared field")
            })
            .collect();
        ReflectionGroup {
            name,
            field_order,
            generators,
            degrees,
            codegrees,
            ambient: VarFrame::standard("u", rank),
            recipe,
            triplet_data,
            coxeter,
            cap: DEFAULT_CAP,
            elements: OnceLock::new(),
            hyperplanes: OnceLock::new(),
            invariants: OnceLock::new(),
        }
    }

    /// Builds a group from raw generators and degree data. The result is not
    /// checked against the catalog; enumeration, Molien degrees, and the
    /// invariance of any supplied invariants serve as the verification path.
    pub fn from_generators(
        name: &str,
        generators: Vec<Matrix>,
        degrees: Vec<u32>,
        codegrees: Vec<u32>,
        invariants: Option<Vec<MultiPoly>>,
    ) -> Result<ReflectionGroup, GroupError> {
        if generators.is_empty() {
            return Err(GroupError::UnsupportedParams(
                "at least one generator is required".into(),
            ));
        }
        if degrees.is_empty() || degrees.len() != codegrees.len() {
            return Err(GroupError::UnsupportedParams(
                "degrees and codegrees must be nonempty and of equal length".into(),
            ));
        }
        let rank = degrees.len();
        let mut field_order = 1u32;
        for g in &generators {
            if g.rows() != rank || g.cols() != rank {
                return Err(GroupError::UnsupportedParams(format!(
                    "generators must be {rank}x{rank} matrices"
                )));
            }
            for i in 0..rank {
                for j in 0..rank {
                    field_order = lcm_u32(field_order, g.get(i, j).order());
                }
            }
        }
        if let Some(polys) = &invariants {
            for p in polys {
                for (_, c) in p.terms() {
                    field_order = lcm_u32(field_order, c.order());
                }
            }
        }
        let recipe = match invariants {
            Some(polys) => {
                let frame = VarFrame::standard("u", rank);
                let moved = polys
                    .into_iter()
                    .map(|p| {
                        let mut q = MultiPoly::zero(&frame);
                        for (e, c) in p.terms() {
                            q += &MultiPoly::monomial(&frame, e.clone(), c.clone());
                        }
                        q
                    })
                    .collect();
                InvariantRecipe::Closed(moved)
            }
            None => InvariantRecipe::Reynolds,
        };
        Ok(ReflectionGroup::assemble(
            name.to_string(),
            field_order,
            generators,
            degrees,
            codegrees,
            recipe,
            None,
            false,
        ))
    }

    /// The display name, e.g. "G5" or "G(3,3,3)".
    pub fn name(&self) -> &str {
        &self.name
    }

    /// The rank n of the standard representation.
    pub fn rank(&self) -> usize {
        self.degrees.len()
    }

    /// The cyclotomic field order N every stored matrix entry lives in.
    pub fn field_order(&self) -> u32 {
        self.field_order
    }

    /// The generators, embedded at the group field order.
    pub fn generators(&self) -> &[Matrix] {
        &self.generators
    }

    /// The degrees d_1 ≥ … in the catalog's per-family arrangement
    /// (d_1 is always the maximum).
    pub fn degrees(&self) -> &[u32] {
        &self.degrees
    }

    /// The codegrees aligned with the degrees.
    pub fn codegrees(&self) -> &[u32] {
        &self.codegrees
    }

    /// The ambient coordinate frame u_1, …, u_n.
    pub fn ambient_frame(&self) -> &Arc<VarFrame> {
        &self.ambient
    }

    /// Catalog admissible-triplet data, when the group ships with one.
    pub fn catalog_triplet(&self) -> Option<&CatalogTriplet> {
        self.triplet_data.as_ref()
    }

    /// Whether the group is a finite Coxeter group in the catalog sense.
    pub fn is_coxeter(&self) -> bool {
        self.coxeter
    }

    /// Whether degrees and codegrees pair up as d_α + d*_α = d_1.
    pub fn is_duality(&self) -> bool {
        let d1 = self.degrees[0];
        self.degrees
            .iter()
            .zip(&self.codegrees)
            .all(|(d, c)| d + c == d1)
    }

    /// Replaces the enumeration cap. Must be called before the first
    /// enumeration; later calls have no effect on cached results.
    pub fn set_cap(&mut self, cap: usize) {
        self.cap = cap;
    }

    /// The product of the degrees, which equals the group order.
    pub fn expected_order(&self) -> u64 {
        self.degrees.iter().map(|&d| d as u64).product()
    }

    /// All group elements in deterministic breadth-first order, identity
    /// first.
    pub fn elements(&self) -> Result<&[Matrix], GroupError> {
        self.elements
            .get_or_init(|| self.enumerate())
            .as_ref()
            .map(|v| v.as_slice())
            .map_err(Clone::clone)
    }

    /// The group order, via enumeration.
    pub fn order(&self) -> Result<usize, GroupError> {
        Ok(self.elements()?.len())
    }

    fn enumerate(&self) -> Result<Vec<Matrix>, GroupError> {
        let identity = Matrix::identity(self.rank())
            .embed(self.field_order)
            .expect("identity embeds in any field");
        let mut seen = HashSet::new();
        let mut out = Vec::new();
        let mut queue = VecDeque::new();
        seen.insert(identity.key_string());
        out.push(identity.clone());
        queue.push_back(identity);
        while let Some(m) = queue.pop_front() {
            for gen in &self.generators {
                let next = &m * gen;
                if seen.insert(next.key_string()) {
                    if out.len() >= self.cap {
                        return Err(GroupError::CapExceeded { cap: self.cap });
                    }
                    out.push(next.clone());
                    queue.push_back(next);
                }
            }
        }
        Ok(out)
    }

    /// The reflection hyperplanes, sorted by their serialized linear form.
    pub fn hyperplanes(&self) -> Result<&[Hyperplane], GroupError> {
        self.hyperplanes
            .get_or_init(|| self.compute_hyperplanes())
            .as_ref()
            .map(|v| v.as_slice())
            .map_err(Clone::clone)
    }

    fn compute_hyperplanes(&self) -> Result<Vec<Hyperplane>, GroupError> {
        let elements = self.elements()?;
        let n = self.rank();
        let identity = &elements[0];
        let mut table: BTreeMap<String, (Vec<CycloNumber>, u32)> = BTreeMap::new();
        for e in elements.iter().skip(1) {
            let diff = e.checked_sub(identity).expect("same shape");
            if diff.kernel().len() != n - 1 {
                continue;
            }
            let row = (0..n)
                .map(|i| diff.row(i).to_vec())
                .find(|r| r.iter().any(|c| !c.is_zero()))
                .expect("a reflection differs from the identity");
            let lead = row
                .iter()
                .find(|c| !c.is_zero())
                .expect("nonzero row")
                .inv()
                .expect("nonzero entry");
            let form: Vec<CycloNumber> = row.iter().map(|c| c * &lead).collect();
            let key = form
                .iter()
                .map(CycloNumber::key_string)
                .collect::<Vec<_>>()
                .join("|");
            let entry = table.entry(key).or_insert((form, 1));
            entry.1 += 1;
        }
        Ok(table
            .into_values()
            .map(|(form, order)| Hyperplane { form, order })
            .collect())
    }

    /// The number of reflections, Σ_H (e(H) − 1).
    pub fn reflection_count(&self) -> Result<u32, GroupError> {
        Ok(self.hyperplanes()?.iter().map(|h| h.order - 1).sum())
    }

    /// Substitutes the linear action of g into a polynomial: (F∘g)(u) = F(gu).
    pub fn act(&self, g: &Matrix, f: &MultiPoly) -> MultiPoly {
        let frame = f.frame();
        let n = self.rank();
        assert_eq!(frame.len(), n, "polynomial frame size mismatch");
        let subs: Vec<MultiPoly> = (0..n)
            .map(|i| {
                let mut form = MultiPoly::zero(frame);
                for j in 0..n {
                    let c = g.get(i, j);
                    if !c.is_zero() {
                        form += &MultiPoly::var(frame, j).mul_scalar(c);
                    }
                }
                form
            })
            .collect();
        f.compose(&subs)
            .expect("linear substitution preserves the frame")
    }

    /// The Reynolds operator |G|⁻¹ Σ_g F∘g.
    pub fn reynolds(&self, f: &MultiPoly) -> Result<MultiPoly, GroupError> {
        let elements = self.elements()?;
        let mut sum = MultiPoly::zero(f.frame());
        for e in elements {
            sum += &self.act(e, f);
        }
        Ok(sum.mul_rat(&rat(1, elements.len() as i64)))
    }

    /// Recovers the degree multiset from the Molien series
    /// |G|⁻¹ Σ_g det(I − tg)⁻¹ = Π_α (1 − t^{d_α})⁻¹.
    pub fn molien_degrees(&self) -> Result<Vec<u32>, GroupError> {
        let elements = self.elements()?;
        let trunc = self.degrees.iter().sum::<u32>() as usize;
        let mut series = vec![CycloNumber::zero(); trunc + 1];
        for e in elements {
            let charpoly = det_one_minus_tg(e, self.rank());
            let inv = series_inverse(&charpoly, trunc);
            for (s, c) in series.iter_mut().zip(inv) {
                *s += &c;
            }
        }
        let scale = rat(1, elements.len() as i64);
        for s in &mut series {
            *s = s.mul_rat(&scale);
        }
        let mut b = series_inverse(&series, trunc);
        let mut found = Vec::new();
        for _ in 0..self.rank() {
            let k = (1..=trunc)
                .find(|&k| !b[k].is_zero())
                .ok_or(GroupError::FactorizationFailed)?;
            for j in k..=trunc {
                let carried = b[j - k].clone();
                b[j] += &carried;
            }
            found.push(k as u32);
        }
        if !b[0].is_one() || b[1..].iter().any(|c| !c.is_zero()) {
            return Err(GroupError::FactorizationFailed);
        }
        found.sort_unstable();
        Ok(found)
    }

    /// Counts (𝔞(d), 𝔟(d)) = (#{α : d | d_α}, #{α : d | d*_α}); a codegree of
    /// 0 is divisible by every d.
    pub fn regularity_counts(degrees: &[u32], codegrees: &[u32], d: u32) -> (usize, usize) {
        assert!(d > 0, "regularity counts need a positive d");
        let a = degrees.iter().filter(|&&x| x % d == 0).count();
        let b = codegrees.iter().filter(|&&x| x % d == 0).count();
        (a, b)
    }

    /// (𝔞(d_1), 𝔟(d_1)) for this group's data; an admissible triplet exists
    /// if and only if both counts agree.
    pub fn regularity_at_top_degree(&self) -> (usize, usize) {
        Self::regularity_counts(&self.degrees, &self.codegrees, self.degrees[0])
    }

    /// The order of the centralizer of g, by enumeration.
    pub fn centralizer_order(&self, g: &Matrix) -> Result<usize, GroupError> {
        let elements = self.elements()?;
        let g = g
            .embed(self.field_order)
            .expect("element entries lie in the group field");
        Ok(elements.iter().filter(|e| *e * &g == &g * *e).count())
    }

    /// The catalog basic invariants in the ambient frame, aligned with the
    /// degrees. Invariance under the generators and algebraic independence
    /// are checked once at materialization.
    pub fn basic_invariants(&self) -> Result<&[MultiPoly], GroupError> {
        self.invariants
            .get_or_init(|| self.compute_invariants())
            .as_ref()
            .map(|v| v.as_slice())
            .map_err(Clone::clone)
    }

    fn compute_invariants(&self) -> Result<Vec<MultiPoly>, GroupError> {
        let polys = match &self.recipe {
            InvariantRecipe::Closed(polys) => polys.clone(),
            InvariantRecipe::Reynolds => self.reynolds_invariants()?,
        };
        if polys.len() != self.rank() {
            return Err(GroupError::InvariantizationFailed(
                "one basic invariant per degree is required".into(),
            ));
        }
        for (p, &d) in polys.iter().zip(&self.degrees) {
            if p.homogeneous_degree() != Some(d) {
                return Err(GroupError::InvariantizationFailed(format!(
                    "basic invariant is not homogeneous of degree {d}"
                )));
            }
        }
        for gen in &self.generators {
            for p in &polys {
                if self.act(gen, p) != *p {
                    return Err(GroupError::InvariantizationFailed(
                        "polynomial is not invariant under the generators".into(),
                    ));
                }
            }
        }
        if poly_det(&jacobian(&polys)).is_zero() {
            return Err(GroupError::InvariantizationFailed(
                "basic invariants are algebraically dependent".into(),
            ));
        }
        Ok(polys)
    }

    fn reynolds_invariants(&self) -> Result<Vec<MultiPoly>, GroupError> {
        let n = self.rank();
        let mut out = Vec::with_capacity(n);
        for &d in &self.degrees {
            let mut found = None;
            for exp in monomials_of_degree(n, d) {
                let seed = MultiPoly::monomial(&self.ambient, exp, CycloNumber::one());
                let averaged = self.reynolds(&seed)?;
                if !averaged.is_zero() {
                    let (_, lead) = averaged.leading_term().expect("nonzero polynomial");
                    let monic = averaged.mul_scalar(&lead.inv().expect("nonzero coefficient"));
                    found = Some(monic);
                    break;
                }
            }
            out.push(found.ok_or_else(|| {
                GroupError::InvariantizationFailed(format!(
                    "no invariant of degree {d} found by group averaging"
                ))
            })?);
        }
        Ok(out)
    }
}

fn lcm_u32(a: u32, b: u32) -> u32 {
    let gcd = {
        let (mut x, mut y) = (a, b);
        while y != 0 {
            (x, y) = (y, x % y);
        }
        x
    };
    a / gcd * b
}

/// Monomial exponents of total degree d in n variables, in descending
/// lexicographic order (u_1^d first).
fn monomials_of_degree(n: usize, d: u32) -> Vec<Vec<u16>> {
    let weights = vec![1u32; n];
    let mut indices = polyring::weighted_monomials(&weights, d, 0, 0).indices;
    indices.reverse();
    indices
}

fn trace(m: &Matrix) -> CycloNumber {
    let mut acc = CycloNumber::zero();
    for i in 0..m.rows() {
        acc += m.get(i, i);
    }
    acc
}

/// Coefficients of det(I − t·g) = Σ_k (−1)^k e_k t^k, with the elementary
/// symmetric functions of the eigenvalues recovered from the power sums
/// tr(g^j) by Newton's identities.
fn det_one_minus_tg(g: &Matrix, n: usize) -> Vec<CycloNumber> {
    let mut power_sums = Vec::with_capacity(n);
    let mut power = g.clone();
    for j in 1..=n {
        if j > 1 {
            power = &power * g;
        }
        power_sums.push(trace(&power));
    }
    let mut e = vec![CycloNumber::one()];
    for k in 1..=n {
        let mut acc = CycloNumber::zero();
        for i in 1..=k {
            let term = &e[k - i] * &power_sums[i - 1];
            if i % 2 == 1 {
                acc += &term;
            } else {
                acc -= &term;
            }
        }
        e.push(acc.mul_rat(&rat(1, k as i64)));
    }
    (0..=n)
        .map(|k| if k % 2 == 0 { e[k].clone() } else { -&e[k] })
        .collect()
}

/// The truncated power-series inverse of b, requiring b_0 ≠ 0.
fn series_inverse(b: &[CycloNumber], trunc: usize) -> Vec<CycloNumber> {
    let lead = b[0].inv().expect("series has invertible constant term");
    let mut c = vec![CycloNumber::zero(); trunc + 1];
    c[0] = lead.clone();
    for k in 1..=trunc {
        let mut acc = CycloNumber::zero();
        for j in 1..=k.min(b.len() - 1) {
            acc += &(&b[j] * &c[k - j]);
        }
        c[k] = -&(&acc * &lead);
    }
    c
}
