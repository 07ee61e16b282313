//! Named, optionally weighted, coordinate frames for polynomials.

use std::fmt;
use std::sync::Arc;

/// An ordered coordinate system, optionally carrying positive integer weights.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VarFrame {
    names: Vec<String>,
    weights: Option<Vec<u32>>,
}

impl VarFrame {
    /// A frame with the given distinct variable names and no weights.
    pub fn new(names: Vec<String>) -> Arc<VarFrame> {
        VarFrame::build(names, None)
    }

    /// A frame with names and matching positive weights.
    pub fn weighted(names: Vec<String>, weights: Vec<u32>) -> Arc<VarFrame> {
        VarFrame::build(names, Some(weights))
    }

    /// A frame named `prefix1, …, prefixn` ("z", 3 gives z1, z2, z3).
    pub fn standard(prefix: &str, n: usize) -> Arc<VarFrame> {
        VarFrame::new((1..=n).map(|i| format!("{prefix}{i}")).collect())
    }

    /// A standard frame carrying weights.
    pub fn standard_weighted(prefix: &str, weights: Vec<u32>) -> Arc<VarFrame> {
        let names = (1..=weights.len()).map(|i| format!("{prefix}{i}")).collect();
        VarFrame::weighted(names, weights)
    }

    fn build(names: Vec<String>, weights: Option<Vec<u32>>) -> Arc<VarFrame> {
        assert!(!names.is_empty(), "frame must have at least one variable");
        for i in 0..names.len() {
            for j in i + 1..names.len() {
                assert_ne!(names[i], names[j], "variable names must be distinct");
            }
        }
        if let Some(w) = &weights {
            assert_eq!(w.len(), names.len(), "one weight per variable");
            assert!(w.iter().all(|&d| d > 0), "weights must be positive");
        }
        Arc::new(VarFrame { names, weights })
    }

    /// Number of variables.
    pub fn len(&self) -> usize {
        self.names.len()
    }

    /// Whether the frame is empty (never true by construction).
    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    /// All variable names in order.
    pub fn names(&self) -> &[String] {
        &self.names
    }

    /// The i-th variable name (0-based).
    pub fn name(&self, i: usize) -> &str {
        &self.names[i]
    }

    /// The attached weights, if any.
    pub fn weights(&self) -> Option<&[u32]> {
        self.weights.as_deref()
    }
}

impl fmt::Display for VarFrame {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})", self.names.join(", "))
    }
}

/// Whether two frames agree (same names, same weights).
pub fn same_frame(a: &Arc<VarFrame>, b: &Arc<VarFrame>) -> bool {
    Arc::ptr_eq(a, b) || **a == **b
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn standard_frames_are_named_in_order() {
        let f = VarFrame::standard("z", 3);
        assert_eq!(f.names(), ["z1", "z2", "z3"]);
        assert_eq!(f.len(), 3);
        assert!(f.weights().is_none());
    }

    #[test]
    fn weighted_frames_keep_weights() {
        let f = VarFrame::standard_weighted("x", vec![12, 6]);
        assert_eq!(f.weights(), Some(&[12u32, 6][..]));
        assert_eq!(f.name(1), "x2");
    }

    #[test]
    fn frame_equality_is_structural() {
        let a = VarFrame::standard("z", 2);
        let b = VarFrame::standard("z", 2);
        assert!(same_frame(&a, &b));
        let c = VarFrame::standard_weighted("z", vec![1, 1]);
        assert!(!same_frame(&a, &c));
    }

    #[test]
    #[should_panic(expected = "distinct")]
    fn duplicate_names_are_rejected() {
        VarFrame::new(vec!["a".into(), "a".into()]);
    }
}
