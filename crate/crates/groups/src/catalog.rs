//! The group catalog: generators, degrees, basic invariants, and the
//! distinguished admissible-triplet data for the supported rank-2
//! exceptional groups and the two infinite families.

use std::sync::Arc;

use exactla::Matrix;
use exactnum::{rat, sqrt_positive_integer, CycloNumber};
use polyring::{MultiPoly, VarFrame};

use crate::group::{InvariantRecipe, ReflectionGroup};
use crate::GroupError;

/// Triplet data shipped with a catalog group: a regular element g of order
/// d_1, the eigenvalue ζ = e^{2πi/d_1}, and a graded eigenframe P = √s·M
/// given by one shared radicand s and a cyclotomic matrix M whose column α
/// spans the ζ^{1−d_α} eigenspace of g. The first column is the regular
/// eigenvector direction.
#[derive(Debug, Clone)]
pub struct CatalogTriplet {
    pub g: Matrix,
    pub zeta: CycloNumber,
    pub radicand: CycloNumber,
    pub frame_m: Matrix,
}

impl CatalogTriplet {
    /// The regular eigenvector direction (the first frame column).
    pub fn q_direction(&self) -> Vec<CycloNumber> {
        self.frame_m.col(0)
    }
}

/// Looks up a group by name, e.g. "G5", "G13", "G(3,3,3)", or "G(2,1,4)".
pub fn catalog_group(name: &str) -> Result<ReflectionGroup, GroupError> {
    let compact: String = name.chars().filter(|c| !c.is_whitespace()).collect();
    let body = compact
        .strip_prefix('G')
        .or_else(|| compact.strip_prefix('g'))
        .ok_or_else(|| GroupError::UnknownGroup(name.to_string()))?;
    if let Some(params) = body.strip_prefix('(').and_then(|s| s.strip_suffix(')')) {
        let fields: Vec<&str> = params.split(',').collect();
        if fields.len() != 3 {
            return Err(GroupError::UnknownGroup(name.to_string()));
        }
        let parsed: Result<Vec<u32>, _> = fields.iter().map(|f| f.parse::<u32>()).collect();
        let Ok(nums) = parsed else {
            return Err(GroupError::UnknownGroup(name.to_string()));
        };
        let (m, p, n) = (nums[0], nums[1], nums[2]);
        if m < 2 {
            return Err(GroupError::UnsupportedParams(format!(
                "G({m},{p},{n}): the catalog requires m >= 2"
            )));
        }
        if p != 1 && p != m {
            return Err(GroupError::UnsupportedParams(format!(
                "G({m},{p},{n}): only p = 1 and p = m are in the catalog"
            )));
        }
        if !(2..=4).contains(&n) {
            return Err(GroupError::UnsupportedParams(format!(
                "G({m},{p},{n}): only ranks 2, 3, 4 are in the catalog"
            )));
        }
        if p == m {
            Ok(build_mmn(m, n as usize))
        } else {
            Ok(build_m1n(m, n as usize))
        }
    } else {
        match body.parse::<u32>() {
            Ok(5) => Ok(g5()),
            Ok(6) => Ok(g6()),
            Ok(12) => Ok(g12()),
            Ok(13) => Ok(g13()),
            Ok(22) => Ok(g22()),
            _ => Err(GroupError::UnknownGroup(name.to_string())),
        }
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

fn mat2(entries: [CycloNumber; 4]) -> Matrix {
    let [a, b, c, d] = entries;
    Matrix::from_rows(vec![vec![a, b], vec![c, d]])
}

fn embed_all(m: Matrix, order: u32) -> Matrix {
    m.embed(order).expect("catalog entries lie in the declared field")
}

/// e_k(u_1^p, …, u_r^p) over the whole frame.
fn elementary_symmetric_powered(frame: &Arc<VarFrame>, k: usize, power: u16) -> MultiPoly {
    let r = frame.len();
    let mut acc = MultiPoly::zero(frame);
    for mask in 0u32..(1 << r) {
        if mask.count_ones() as usize != k {
            continue;
        }
        let mut exp = vec![0u16; r];
        for (j, e) in exp.iter_mut().enumerate() {
            if mask & (1 << j) != 0 {
                *e = power;
            }
        }
        acc += &MultiPoly::monomial(frame, exp, CycloNumber::one());
    }
    acc
}

/// The quartic and sextic tetrahedral semi-invariants shared by G5 and G6.
fn tetrahedral_pair(frame: &Arc<VarFrame>) -> (MultiPoly, MultiPoly) {
    let i_sqrt3 = CycloNumber::root_of_unity(3, 1).mul_rat(&rat(2, 1)) + CycloNumber::one();
    let f = MultiPoly::monomial(frame, vec![4, 0], CycloNumber::one())
        + &MultiPoly::monomial(frame, vec![2, 2], i_sqrt3.mul_rat(&rat(2, 1)))
        + &MultiPoly::monomial(frame, vec![0, 4], CycloNumber::one());
    let t = MultiPoly::monomial(frame, vec![5, 1], CycloNumber::one())
        - &MultiPoly::monomial(frame, vec![1, 5], CycloNumber::one());
    (f, t)
}

fn g5_generators() -> (Matrix, Matrix) {
    let omega = CycloNumber::root_of_unity(3, 1);
    let i = CycloNumber::i();
    let one = CycloNumber::one();
    let half_omega = omega.mul_rat(&rat(1, 2));
    let r1 = mat2([
        &(-&one - &i) * &half_omega,
        &(&one - &i) * &half_omega,
        &(-&one - &i) * &half_omega,
        &(-&one + &i) * &half_omega,
    ]);
    let r2p = mat2([
        &(-&one + &i) * &half_omega,
        &(&one - &i) * &half_omega,
        &(-&one - &i) * &half_omega,
        &(-&one - &i) * &half_omega,
    ]);
    (r1, r2p)
}

fn g5() -> ReflectionGroup {
    let order = 24;
    let (r1, r2p) = g5_generators();
    let frame = VarFrame::standard("u", 2);
    let (f, t) = tetrahedral_pair(&frame);
    let g = (&r2p * &r1).inverse().expect("group element");
    let zeta = CycloNumber::root_of_unity(12, 1);
    let half_sqrt2 = sqrt_positive_integer(2).mul_rat(&rat(1, 2));
    let frame_m = mat2([
        half_sqrt2.clone(),
        -&half_sqrt2,
        half_sqrt2.clone(),
        half_sqrt2.clone(),
    ]);
    let triplet = CatalogTriplet {
        g: embed_all(g, order),
        zeta: zeta.embed(order).expect("field order"),
        radicand: CycloNumber::one().embed(order).expect("field order"),
        frame_m: embed_all(frame_m, order),
    };
    ReflectionGroup::assemble(
        "G5".into(),
        order,
        vec![r1, r2p],
        vec![12, 6],
        vec![0, 6],
        InvariantRecipe::Closed(vec![f.pow(3), t]),
        Some(triplet),
        false,
    )
}

fn g6() -> ReflectionGroup {
    let order = 24;
    let (r1, _) = g5_generators();
    let r = mat2([
        CycloNumber::one(),
        CycloNumber::zero(),
        CycloNumber::zero(),
        -&CycloNumber::one(),
    ]);
    let frame = VarFrame::standard("u", 2);
    let (f, t) = tetrahedral_pair(&frame);
    let g = (&r1 * &r).inverse().expect("group element");
    let zeta = CycloNumber::root_of_unity(12, 1);
    let i = CycloNumber::i();
    let one = CycloNumber::one();
    let s2 = sqrt_positive_integer(2);
    let s3 = sqrt_positive_integer(3);
    let s6 = sqrt_positive_integer(6);
    let three_minus_s3 = CycloNumber::from_int(3) - &s3;
    let frame_m = mat2([
        &(&one - &i) * &s3.mul_rat(&rat(1, 6)),
        &(&i - &one) * &(&three_minus_s3 * &s2.mul_rat(&rat(1, 12))),
        three_minus_s3.mul_rat(&rat(1, 6)),
        s6.mul_rat(&rat(1, 6)),
    ]);
    let radicand = CycloNumber::from_int(3) + &s3;
    let triplet = CatalogTriplet {
        g: embed_all(g, order),
        zeta: zeta.embed(order).expect("field order"),
        radicand: radicand.embed(order).expect("field order"),
        frame_m: embed_all(frame_m, order),
    };
    ReflectionGroup::assemble(
        "G6".into(),
        order,
        vec![r, r1],
        vec![12, 4],
        vec![0, 8],
        InvariantRecipe::Closed(vec![t.pow(2), f]),
        Some(triplet),
        false,
    )
}

fn octahedral_reflections() -> (Matrix, Matrix, Matrix) {
    let half_sqrt2 = sqrt_positive_integer(2).mul_rat(&rat(1, 2));
    let one = CycloNumber::one();
    let i = CycloNumber::i();
    let r3 = mat2([
        half_sqrt2.clone(),
        -&half_sqrt2,
        -&half_sqrt2,
        -&half_sqrt2,
    ]);
    let r3p = mat2([
        half_sqrt2.clone(),
        half_sqrt2.clone(),
        half_sqrt2.clone(),
        -&half_sqrt2,
    ]);
    let r3pp = mat2([
        CycloNumber::zero(),
        &(&one + &i) * &half_sqrt2,
        &(&one - &i) * &half_sqrt2,
        CycloNumber::zero(),
    ]);
    (r3, r3p, r3pp)
}

/// Frame whose first column is the given direction and whose second column
/// is read off the ζ^{1−d_2} eigenspace of g, scaled to lead with 1.
fn frame_from_eigenspace(g: &Matrix, zeta: &CycloNumber, d2: u32, q: Vec<CycloNumber>) -> Matrix {
    let lambda = zeta.pow(1 - d2 as i64).expect("root of unity");
    let basis = g.eigenspace(&lambda);
    assert_eq!(basis.len(), 1, "expected a simple eigenvalue");
    let raw = &basis[0];
    let lead = raw
        .iter()
        .find(|c| !c.is_zero())
        .expect("eigenvector is nonzero")
        .inv()
        .expect("nonzero entry");
    let col2: Vec<CycloNumber> = raw.iter().map(|c| c * &lead).collect();
    Matrix::from_rows(vec![
        vec![q[0].clone(), col2[0].clone()],
        vec![q[1].clone(), col2[1].clone()],
    ])
}

fn g12() -> ReflectionGroup {
    let order = 8;
    let (r3, r3p, r3pp) = octahedral_reflections();
    let g = &(&r3pp * &r3p) * &r3;
    let zeta = CycloNumber::root_of_unity(8, 1).embed(order).expect("field order");
    let g = embed_all(g, order);
    let frame_m = embed_all(Matrix::identity(2), order);
    let triplet = CatalogTriplet {
        g: g.clone(),
        zeta,
        radicand: CycloNumber::one().embed(order).expect("field order"),
        frame_m,
    };
    ReflectionGroup::assemble(
        "G12".into(),
        order,
        vec![r3, r3p, r3pp],
        vec![8, 6],
        vec![0, 10],
        InvariantRecipe::Reynolds,
        Some(triplet),
        false,
    )
}

fn g13() -> ReflectionGroup {
    let order = 24;
    let (r3, _, r3pp) = octahedral_reflections();
    let r = mat2([
        CycloNumber::one(),
        CycloNumber::zero(),
        CycloNumber::zero(),
        -&CycloNumber::one(),
    ]);
    let g = embed_all(&(&r * &r3) * &r3pp, order);
    let zeta = CycloNumber::root_of_unity(12, 1).embed(order).expect("field order");
    let one = CycloNumber::one();
    let i = CycloNumber::i();
    let s3 = sqrt_positive_integer(3);
    let q = vec![
        (&(&one + &i) * &(&s3 - &one)).mul_rat(&rat(1, 2)),
        CycloNumber::one(),
    ];
    let radicand = (CycloNumber::from_int(3) - &s3).inv().expect("nonzero");
    let frame_m = embed_all(frame_from_eigenspace(&g, &zeta, 8, q), order);
    let triplet = CatalogTriplet {
        g: g.clone(),
        zeta,
        radicand: radicand.embed(order).expect("field order"),
        frame_m,
    };
    ReflectionGroup::assemble(
        "G13".into(),
        order,
        vec![r, r3, r3pp],
        vec![12, 8],
        vec![0, 16],
        InvariantRecipe::Reynolds,
        Some(triplet),
        false,
    )
}

fn g22() -> ReflectionGroup {
    let order = 20;
    let one = CycloNumber::one();
    let i = CycloNumber::i();
    let half = rat(1, 2);
    let r = mat2([
        CycloNumber::one(),
        CycloNumber::zero(),
        CycloNumber::zero(),
        -&CycloNumber::one(),
    ]);
    let rp = mat2([
        CycloNumber::zero(),
        CycloNumber::one(),
        CycloNumber::one(),
        CycloNumber::zero(),
    ]);
    let c = (CycloNumber::root_of_unity(5, 1) + &CycloNumber::root_of_unity(5, 4)).mul_rat(&half);
    let rpp = mat2([
        one.mul_rat(&half) + &c,
        one.mul_rat(&half) + &(&i * &c),
        one.mul_rat(&half) - &(&i * &c),
        -&(one.mul_rat(&half) + &c),
    ]);
    let g = embed_all(&(&rpp * &rp) * &r, order);
    let zeta = CycloNumber::root_of_unity(20, 1);
    let sqrt5 = (CycloNumber::root_of_unity(5, 1) + &CycloNumber::root_of_unity(5, 4))
        .mul_rat(&rat(2, 1))
        + &one;
    let sin_fifth = (&(CycloNumber::root_of_unity(10, 1) - &CycloNumber::root_of_unity(10, 9))
        / &i)
        .mul_rat(&half);
    let cos_fifth =
        (CycloNumber::root_of_unity(10, 1) + &CycloNumber::root_of_unity(10, 9)).mul_rat(&half);
    let tan_fifth = &sin_fifth / &cos_fifth;
    let sqrt_ten = sin_fifth.mul_rat(&rat(4, 1));
    let q_top = -&(CycloNumber::from_int(2) + &sqrt_ten);
    let q = vec![&q_top / &(&sqrt5 + &one), CycloNumber::one()];
    let w = CycloNumber::from_int(5) - &sqrt5 + &tan_fifth.mul_rat(&rat(2, 1));
    let radicand = w.inv().expect("nonzero");
    let frame_m = embed_all(frame_from_eigenspace(&g, &zeta, 12, q), order);
    let triplet = CatalogTriplet {
        g: g.clone(),
        zeta: zeta.embed(order).expect("field order"),
        radicand: radicand.embed(order).expect("field order"),
        frame_m,
    };
    ReflectionGroup::assemble(
        "G22".into(),
        order,
        vec![r, rp, rpp],
        vec![20, 12],
        vec![0, 28],
        InvariantRecipe::Reynolds,
        Some(triplet),
        false,
    )
}

fn swap_matrix(rank: usize, i: usize) -> Matrix {
    let mut rows = vec![vec![CycloNumber::zero(); rank]; rank];
    for (j, row) in rows.iter_mut().enumerate() {
        let target = if j == i {
            i + 1
        } else if j == i + 1 {
            i
        } else {
            j
        };
        row[target] = CycloNumber::one();
    }
    Matrix::from_rows(rows)
}

/// The regular element shared by both families: an n-cycle block carrying
/// ζ_{nm}^n, extended by ζ_{nm}^{−n} on the last coordinate when present.
fn family_regular_element(rank: usize, n: usize, nm: u32) -> Matrix {
    let mut rows = vec![vec![CycloNumber::zero(); rank]; rank];
    for (i, row) in rows.iter_mut().enumerate().take(n - 1) {
        row[i + 1] = CycloNumber::one();
    }
    rows[n - 1][0] = CycloNumber::root_of_unity(nm, n as i64);
    if rank > n {
        rows[n][n] = CycloNumber::root_of_unity(nm, -(n as i64));
    }
    Matrix::from_rows(rows)
}

/// Frame columns (1/√n)(1, λ_i, …, λ_i^{n−1}) for λ_i = ζ_{nm}^{1+(i−1)m},
/// extended by the last standard basis vector when the rank exceeds n.
fn family_frame(rank: usize, n: usize, m: u32) -> Matrix {
    let nm = n as u32 * m;
    let scale = match n {
        1 => CycloNumber::one(),
        _ => sqrt_positive_integer(n as u64)
            .inv()
            .expect("positive square root"),
    };
    let mut rows = vec![vec![CycloNumber::zero(); rank]; rank];
    for col in 0..n {
        let lambda = CycloNumber::root_of_unity(nm, 1 + col as i64 * m as i64);
        for (row, rows_i) in rows.iter_mut().enumerate().take(n) {
            rows_i[col] = lambda.pow(row as i64).expect("root of unity") * &scale;
        }
    }
    if rank > n {
        rows[n][n] = CycloNumber::one();
    }
    Matrix::from_rows(rows)
}

fn build_mmn(m: u32, rank: usize) -> ReflectionGroup {
    let n = rank - 1;
    let nm = n as u32 * m;
    let order = match n {
        1 => m,
        2 => lcm_u32(2 * m, 8),
        _ => lcm_u32(3 * m, 12),
    };
    let mut generators: Vec<Matrix> = (0..n).map(|i| swap_matrix(rank, i)).collect();
    let mut s_rows = vec![vec![CycloNumber::zero(); rank]; rank];
    s_rows[0][1] = CycloNumber::root_of_unity(nm, -(n as i64));
    s_rows[1][0] = CycloNumber::root_of_unity(nm, n as i64);
    for (j, row) in s_rows.iter_mut().enumerate().skip(2) {
        row[j] = CycloNumber::one();
    }
    generators.push(Matrix::from_rows(s_rows));
    let frame = VarFrame::standard("u", rank);
    let mut invariants: Vec<MultiPoly> = (1..=n)
        .map(|i| elementary_symmetric_powered(&frame, rank - i, m as u16))
        .collect();
    invariants.push(elementary_symmetric_powered(&frame, rank, 1));
    let mut degrees: Vec<u32> = (1..=n).map(|i| (rank as u32 - i as u32) * m).collect();
    degrees.push(rank as u32);
    let mut codegrees: Vec<u32> = (0..n as u32).map(|i| i * m).collect();
    codegrees.push(nm - rank as u32);
    let triplet = CatalogTriplet {
        g: embed_all(family_regular_element(rank, n, nm), order),
        zeta: CycloNumber::root_of_unity(nm, 1).embed(order).expect("field order"),
        radicand: CycloNumber::one().embed(order).expect("field order"),
        frame_m: embed_all(family_frame(rank, n, m), order),
    };
    ReflectionGroup::assemble(
        format!("G({m},{m},{rank})"),
        order,
        generators,
        degrees,
        codegrees,
        InvariantRecipe::Closed(invariants),
        Some(triplet),
        rank == 2 || m == 2,
    )
}

fn build_m1n(m: u32, n: usize) -> ReflectionGroup {
    let nm = n as u32 * m;
    let order = match n {
        2 => lcm_u32(2 * m, 8),
        3 => lcm_u32(3 * m, 12),
        _ => 4 * m,
    };
    let mut generators: Vec<Matrix> = (0..n - 1).map(|i| swap_matrix(n, i)).collect();
    let mut t_rows = vec![vec![CycloNumber::zero(); n]; n];
    t_rows[0][0] = CycloNumber::root_of_unity(nm, n as i64);
    for (j, row) in t_rows.iter_mut().enumerate().skip(1) {
        row[j] = CycloNumber::one();
    }
    generators.push(Matrix::from_rows(t_rows));
    let frame = VarFrame::standard("u", n);
    let invariants: Vec<MultiPoly> = (1..=n)
        .map(|i| elementary_symmetric_powered(&frame, n + 1 - i, m as u16))
        .collect();
    let degrees: Vec<u32> = (1..=n as u32).map(|i| (n as u32 + 1 - i) * m).collect();
    let codegrees: Vec<u32> = (0..n as u32).map(|i| i * m).collect();
    let triplet = CatalogTriplet {
        g: embed_all(family_regular_element(n, n, nm), order),
        zeta: CycloNumber::root_of_unity(nm, 1).embed(order).expect("field order"),
        radicand: CycloNumber::one().embed(order).expect("field order"),
        frame_m: embed_all(family_frame(n, n, m), order),
    };
    ReflectionGroup::assemble(
        format!("G({m},1,{n})"),
        order,
        generators,
        degrees,
        codegrees,
        InvariantRecipe::Closed(invariants),
        Some(triplet),
        m == 2,
    )
}
