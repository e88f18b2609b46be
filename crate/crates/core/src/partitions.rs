//! Integer partitions.
//!
//! A [`Partition`] stores its parts in weakly decreasing order; its conjugate
//! is computed on first use and cached. Column lengths are addressed with the
//! 1-based [`Partition::col`], matching the usual `λ'_i` notation.

use std::fmt;
use std::hash::{Hash, Hasher};
use std::str::FromStr;
use std::sync::OnceLock;

use crate::error::{Error, Result};

#[derive(Clone)]
pub struct Partition {
    parts: Vec<usize>,
    conj: OnceLock<Vec<usize>>,
}

impl Partition {
    /// Validates and wraps a part list. Trailing zeros are dropped.
    pub fn new(mut parts: Vec<usize>) -> Result<Self> {
        while parts.last() == Some(&0) {
            parts.pop();
        }
        if parts.contains(&0) || parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::Domain(format!("{parts:?} is not a partition")));
        }
        Ok(Self::from_sorted(parts))
    }

    pub(crate) fn from_sorted(parts: Vec<usize>) -> Self {
        debug_assert!(parts.windows(2).all(|w| w[0] >= w[1]) && !parts.contains(&0));
        Self {
            parts,
            conj: OnceLock::new(),
        }
    }

    /// Sorts arbitrary nonnegative integers into a partition.
    pub fn from_unsorted(mut parts: Vec<usize>) -> Self {
        parts.retain(|&x| x > 0);
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Self::from_sorted(parts)
    }

    pub fn empty() -> Self {
        Self::from_sorted(Vec::new())
    }

    /// The box `(m^d)`: `d` parts equal to `m`.
    pub fn rect(m: usize, d: usize) -> Self {
        if m == 0 {
            Self::empty()
        } else {
            Self::from_sorted(vec![m; d])
        }
    }

    pub fn parts(&self) -> &[usize] {
        &self.parts
    }

    /// Number of nonzero parts, `ℓ(λ)`.
    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    /// `|λ|`.
    pub fn size(&self) -> usize {
        self.parts.iter().sum()
    }

    /// Part `i` counted from 0, or 0 past the end.
    pub fn part(&self, i: usize) -> usize {
        self.parts.get(i).copied().unwrap_or(0)
    }

    /// Column lengths `λ'_1 >= λ'_2 >= ...`.
    pub fn conj_parts(&self) -> &[usize] {
        self.conj.get_or_init(|| {
            let width = self.part(0);
            (1..=width)
                .map(|i| self.parts.iter().take_while(|&&p| p >= i).count())
                .collect()
        })
    }

    /// `λ'_i` for `i >= 1`, 0 past the last column.
    pub fn col(&self, i: usize) -> usize {
        assert!(i >= 1, "columns are 1-based");
        self.conj_parts().get(i - 1).copied().unwrap_or(0)
    }

    pub fn conjugate(&self) -> Partition {
        Self::from_sorted(self.conj_parts().to_vec())
    }

    /// `μ ⊆ λ` for `μ = self`.
    pub fn is_subset_of(&self, lambda: &Partition) -> bool {
        self.len() <= lambda.len() && self.parts.iter().zip(&lambda.parts).all(|(a, b)| a <= b)
    }

    /// Number of parts equal to `j`.
    pub fn multiplicity(&self, j: usize) -> usize {
        self.parts.iter().filter(|&&p| p == j).count()
    }

    /// `n(λ) = Σ (i-1) λ_i`.
    pub fn n(&self) -> usize {
        self.parts.iter().enumerate().map(|(i, p)| i * p).sum()
    }

    /// `Σ λ'_i^2`.
    pub fn sum_col_squares(&self) -> usize {
        self.conj_parts().iter().map(|c| c * c).sum()
    }
}

impl PartialEq for Partition {
    fn eq(&self, other: &Self) -> bool {
        self.parts == other.parts
    }
}

impl Eq for Partition {}

impl Hash for Partition {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.parts.hash(state);
    }
}

impl PartialOrd for Partition {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

/// Lexicographic order on part lists.
impl Ord for Partition {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.parts.cmp(&other.parts)
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("[")?;
        for (i, p) in self.parts.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{p}")?;
        }
        f.write_str("]")
    }
}

impl fmt::Debug for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Parses `[3,1]`, `3,1`, `[]` or the empty string.
impl FromStr for Partition {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let inner = s
            .strip_prefix('[')
            .and_then(|r| r.strip_suffix(']'))
            .unwrap_or(s)
            .trim();
        if inner.is_empty() {
            return Ok(Self::empty());
        }
        let parts = inner
            .split(',')
            .map(|x| {
                x.trim()
                    .parse::<usize>()
                    .map_err(|e| Error::Parse(format!("{x:?}: {e}")))
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(parts)
    }
}

/// `μ ⊆ λ`: every part of `μ` is at most the corresponding part of `λ`.
pub fn contains(mu: &Partition, lambda: &Partition) -> bool {
    mu.is_subset_of(lambda)
}

pub fn conjugate(lambda: &Partition) -> Partition {
    lambda.conjugate()
}

/// The complement of `μ` in the box `(m^d)`, rotated by 180 degrees.
///
/// ```
/// use quotzeta::partitions::{box_complement, Partition};
/// let mu: Partition = "[2]".parse().unwrap();
/// assert_eq!(box_complement(3, 2, &mu).unwrap().to_string(), "[3,1]");
/// ```
pub fn box_complement(m: usize, d: usize, mu: &Partition) -> Result<Partition> {
    if !mu.is_subset_of(&Partition::rect(m, d)) {
        return Err(Error::Domain(format!("{mu} does not fit in the box ({m}^{d})")));
    }
    Ok(Partition::from_unsorted(
        (0..d).map(|i| m - mu.part(d - 1 - i)).collect(),
    ))
}

/// Partitions of `n` with parts at most `max_part` and at most `max_len`
/// parts, in reverse lexicographic order (largest first part first).
pub fn partitions_bounded(n: usize, max_part: usize, max_len: usize) -> Vec<Partition> {
    fn go(n: usize, max_part: usize, max_len: usize, cur: &mut Vec<usize>, out: &mut Vec<Partition>) {
        if n == 0 {
            out.push(Partition::from_sorted(cur.clone()));
            return;
        }
        if max_len == 0 {
            return;
        }
        for first in (1..=max_part.min(n)).rev() {
            if first * max_len < n {
                break;
            }
            cur.push(first);
            go(n - first, first, max_len - 1, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(n, max_part, max_len, &mut Vec::new(), &mut out);
    out
}

/// All partitions of `n`, in reverse lexicographic order.
pub fn partitions_of(n: usize) -> Vec<Partition> {
    partitions_bounded(n, n, n)
}

/// Every `μ ⊆ (m^d)`, graded by `|μ|` and then in reverse lexicographic
/// order. The iterator is lazy and can be recreated freely.
///
/// ```
/// use quotzeta::partitions::iterate_box;
/// let all: Vec<String> = iterate_box(2, 2).map(|p| p.to_string()).collect();
/// assert_eq!(all, ["[]", "[1]", "[2]", "[1,1]", "[2,1]", "[2,2]"]);
/// ```
pub fn iterate_box(m: usize, d: usize) -> impl Iterator<Item = Partition> {
    (0..=m * d).flat_map(move |n| partitions_bounded(n, m, d))
}

/// Every `μ` with `μ_1 <= m` and `|μ| <= max_size`, graded by size.
pub fn iterate_bounded_parts(m: usize, max_size: usize) -> impl Iterator<Item = Partition> {
    (0..=max_size).flat_map(move |n| {
        if m == 0 && n > 0 {
            Vec::new()
        } else {
            partitions_bounded(n, m, n)
        }
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn part(s: &str) -> Partition {
        s.parse().unwrap()
    }

    #[test]
    fn conjugate_examples() {
        assert_eq!(Partition::empty().conjugate(), Partition::empty());
        assert_eq!(part("3,1").conjugate(), part("2,1,1"));
        assert_eq!(Partition::rect(3, 2).conjugate(), Partition::rect(2, 3));
        assert_eq!(part("3,1").col(1), 2);
        assert_eq!(part("3,1").col(4), 0);
    }

    #[test]
    fn validation_and_text() {
        assert!(Partition::new(vec![1, 2]).is_err());
        assert_eq!(Partition::new(vec![2, 1, 0]).unwrap(), part("[2,1]"));
        assert_eq!(part("[]"), Partition::empty());
        assert_eq!(part("3,1").to_string(), "[3,1]");
        assert!("a,b".parse::<Partition>().is_err());
    }

    #[test]
    fn containment_examples() {
        assert!(contains(&Partition::empty(), &part("2,1")));
        assert!(contains(&part("2,1"), &part("2,2")));
        assert!(!contains(&part("3"), &part("2,2")));
        assert!(!contains(&part("1,1,1"), &part("2,2")));
    }

    #[test]
    fn complement_examples() {
        assert_eq!(box_complement(2, 2, &Partition::empty()).unwrap(), part("2,2"));
        assert_eq!(box_complement(2, 2, &part("2,2")).unwrap(), Partition::empty());
        assert_eq!(box_complement(3, 2, &part("2")).unwrap(), part("3,1"));
        assert!(box_complement(1, 1, &part("2")).is_err());
    }

    #[test]
    fn enumeration_examples() {
        let names = |it: Vec<Partition>| it.iter().map(|p| p.to_string()).collect::<Vec<_>>();
        assert_eq!(names(iterate_box(1, 1).collect()), ["[]", "[1]"]);
        assert_eq!(names(iterate_box(1, 2).collect()), ["[]", "[1]", "[1,1]"]);
        assert_eq!(iterate_box(2, 2).count(), 6);
        assert_eq!(
            names(iterate_bounded_parts(1, 3).collect()),
            ["[]", "[1]", "[1,1]", "[1,1,1]"]
        );
        assert_eq!(
            names(iterate_bounded_parts(2, 2).collect()),
            ["[]", "[1]", "[2]", "[1,1]"]
        );
        assert_eq!(names(iterate_bounded_parts(0, 5).collect()), ["[]"]);
        assert_eq!(partitions_of(5).len(), 7);
    }

    /// Lattice paths from corner to corner of an m x d grid: C(m+d, d).
    fn lattice_paths(m: usize, d: usize) -> usize {
        if m == 0 || d == 0 {
            1
        } else {
            lattice_paths(m - 1, d) + lattice_paths(m, d - 1)
        }
    }

    #[test]
    fn box_enumeration_counts_lattice_paths() {
        for m in 0..=4 {
            for d in 0..=4 {
                let all: Vec<_> = iterate_box(m, d).collect();
                let set: std::collections::HashSet<_> = all.iter().cloned().collect();
                assert_eq!(set.len(), all.len(), "duplicates for ({m},{d})");
                assert_eq!(all.len(), lattice_paths(m, d), "({m},{d})");
                assert!(all.iter().all(|mu| mu.is_subset_of(&Partition::rect(m, d))));
            }
        }
    }

    fn arb_partition() -> impl Strategy<Value = Partition> {
        prop::collection::vec(0usize..6, 0..6).prop_map(Partition::from_unsorted)
    }

    proptest! {
        #[test]
        fn conjugation_is_an_involution(l in arb_partition()) {
            prop_assert_eq!(l.conjugate().conjugate(), l.clone());
            prop_assert_eq!(l.conjugate().size(), l.size());
        }

        #[test]
        fn conjugation_preserves_containment(a in arb_partition(), b in arb_partition()) {
            prop_assert_eq!(contains(&a, &b), contains(&a.conjugate(), &b.conjugate()));
        }

        #[test]
        fn complement_is_an_involution(m in 0usize..5, d in 0usize..5, seed in prop::collection::vec(0usize..5, 0..5)) {
            let mu = Partition::from_unsorted(seed.into_iter().take(d).map(|x| x.min(m)).collect());
            let c = box_complement(m, d, &mu).unwrap();
            prop_assert_eq!(box_complement(m, d, &c).unwrap(), mu.clone());
            prop_assert_eq!(mu.size() + c.size(), m * d);
        }

        #[test]
        fn text_round_trip(l in arb_partition()) {
            prop_assert_eq!(l.to_string().parse::<Partition>().unwrap(), l);
        }
    }
}
