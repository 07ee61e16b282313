//! Enumeration of weighted-degree multi-index sets.

use num_bigint::BigInt;

/// The defining constraint of a multi-index set.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IndexDescriptor {
    pub weights: Vec<u32>,
    pub target: u32,
    pub min_support: u32,
    pub zero_prefix: usize,
}

/// A finite set of exponent vectors satisfying a weighted-degree constraint,
/// sorted by total degree ascending, then lexicographically.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MultiIndexSet {
    pub indices: Vec<Vec<u16>>,
    pub descriptor: IndexDescriptor,
}

impl MultiIndexSet {
    /// Number of indices in the set.
    pub fn len(&self) -> usize {
        self.indices.len()
    }

    /// Whether the set is empty.
    pub fn is_empty(&self) -> bool {
        self.indices.is_empty()
    }

    /// Iterates over the exponent vectors in canonical order.
    pub fn iter(&self) -> std::slice::Iter<'_, Vec<u16>> {
        self.indices.iter()
    }
}

impl<'a> IntoIterator for &'a MultiIndexSet {
    type Item = &'a Vec<u16>;
    type IntoIter = std::slice::Iter<'a, Vec<u16>>;
    fn into_iter(self) -> Self::IntoIter {
        self.indices.iter()
    }
}

/// All a with a·weights = target, |a| ≥ min_support, a_1 = ⋯ = a_{zero_prefix} = 0.
pub fn weighted_monomials(
    weights: &[u32],
    target: u32,
    min_support: u32,
    zero_prefix: usize,
) -> MultiIndexSet {
    assert!(weights.iter().all(|&d| d > 0), "weights must be positive");
    assert!(zero_prefix <= weights.len());
    let mut indices = Vec::new();
    let mut current = vec![0u16; weights.len()];
    enumerate(weights, zero_prefix, target, &mut current, &mut indices);
    indices.retain(|a| a.iter().map(|&e| e as u32).sum::<u32>() >= min_support);
    indices.sort_by_key(|a| (a.iter().map(|&e| e as u32).sum::<u32>(), a.clone()));
    MultiIndexSet {
        indices,
        descriptor: IndexDescriptor {
            weights: weights.to_vec(),
            target,
            min_support,
            zero_prefix,
        },
    }
}

fn enumerate(
    weights: &[u32],
    position: usize,
    remaining: u32,
    current: &mut Vec<u16>,
    out: &mut Vec<Vec<u16>>,
) {
    if position == weights.len() {
        if remaining == 0 {
            out.push(current.clone());
        }
        return;
    }
    let d = weights[position];
    let max_e = remaining / d;
    for e in 0..=max_e {
        current[position] = e as u16;
        enumerate(weights, position + 1, remaining - e * d, current, out);
    }
    current[position] = 0;
}

/// The multi-index factorial a! = Π a_i!.
pub fn multi_factorial(a: &[u16]) -> BigInt {
    let mut result = BigInt::from(1);
    for &e in a {
        for k in 2..=e as u64 {
            result *= k;
        }
    }
    result
}

/// The support size l(a) = #{i : a_i ≠ 0}.
pub fn support_size(a: &[u16]) -> usize {
    a.iter().filter(|&&e| e != 0).count()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn dihedral_degree_example() {
        // d = (4, 2), D = 4, support ≥ 2, first coordinate forced to zero.
        let s = weighted_monomials(&[4, 2], 4, 2, 1);
        assert_eq!(s.indices, vec![vec![0, 2]]);
    }

    #[test]
    fn degree_twelve_six_index_sets() {
        let s1 = weighted_monomials(&[12, 6], 12, 2, 0);
        assert_eq!(s1.indices, vec![vec![0, 2]]);
        let s2 = weighted_monomials(&[12, 6], 6, 2, 0);
        assert!(s2.is_empty());
    }

    #[test]
    fn sorting_is_total_degree_then_lex() {
        let s = weighted_monomials(&[2, 1, 1], 4, 0, 0);
        let sums: Vec<u32> = s
            .indices
            .iter()
            .map(|a| a.iter().map(|&e| e as u32).sum())
            .collect();
        let mut sorted = sums.clone();
        sorted.sort_unstable();
        assert_eq!(sums, sorted);
        assert!(s.indices.contains(&vec![2, 0, 0]));
        assert!(s.indices.contains(&vec![0, 4, 0]));
        assert_eq!(s.indices.first(), Some(&vec![2, 0, 0]));
    }

    #[test]
    fn zero_prefix_constrains_leading_entries() {
        let s = weighted_monomials(&[3, 2, 1], 6, 1, 1);
        assert!(s.indices.iter().all(|a| a[0] == 0));
        assert!(s.indices.contains(&vec![0, 3, 0]));
        assert!(s.indices.contains(&vec![0, 0, 6]));
    }

    #[test]
    fn factorial_and_support() {
        assert_eq!(multi_factorial(&[3, 0, 2]), BigInt::from(12));
        assert_eq!(multi_factorial(&[0, 0]), BigInt::from(1));
        assert_eq!(support_size(&[3, 0, 2]), 2);
    }
}
