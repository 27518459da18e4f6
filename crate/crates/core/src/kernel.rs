//! Min-plus argmin over two vectors.
//!
//! Given `a` and `b` of equal length, find `i` minimising `a[i] + b[i]`.
//! [`naive_select`] scans every index. [`select`] walks both vectors in
//! ascending order in lockstep and stops as soon as some index has been seen
//! within the first `r` ranks of *both* orders: every index not yet examined
//! is then no smaller than that index in either vector, so it cannot improve
//! on the incumbent. For uncorrelated inputs the expected stopping rank grows
//! like `sqrt(V)`.

use std::cmp::Ordering;

use crate::error::{Error, Result};
use crate::scalar::{is_extended_weight, Weight};

/// Ascending order of one vector: `perm[r]` is the index holding the rank-`r`
/// value and `inv` is its inverse. Ties are ordered by ascending index.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SortedIndex {
    perm: Vec<usize>,
    inv: Vec<usize>,
}

impl SortedIndex {
    /// Builds from an explicit permutation, checking that it is a bijection.
    pub fn from_perm(perm: Vec<usize>) -> Result<Self> {
        let n = perm.len();
        let mut inv = vec![usize::MAX; n];
        for (rank, &idx) in perm.iter().enumerate() {
            if idx >= n || inv[idx] != usize::MAX {
                return Err(Error::invalid(format!(
                    "permutation entry {idx} at rank {rank} is out of range or repeated"
                )));
            }
            inv[idx] = rank;
        }
        Ok(SortedIndex { perm, inv })
    }

    pub fn perm(&self) -> &[usize] {
        &self.perm
    }

    pub fn inv(&self) -> &[usize] {
        &self.inv
    }

    pub fn len(&self) -> usize {
        self.perm.len()
    }

    pub fn is_empty(&self) -> bool {
        self.perm.is_empty()
    }

    /// Index of the rank-`r` element.
    #[inline]
    pub fn at_rank(&self, r: usize) -> usize {
        self.perm[r]
    }

    /// Rank of index `i`.
    #[inline]
    pub fn rank_of(&self, i: usize) -> usize {
        self.inv[i]
    }

    /// Checks that this index sorts `values` under the (value, index) order.
    pub fn validate_for<T: Weight>(&self, values: &[T]) -> Result<()> {
        if values.len() != self.perm.len() {
            return Err(Error::invalid(format!(
                "sorted index has length {}, values have length {}",
                self.perm.len(),
                values.len()
            )));
        }
        for w in self.perm.windows(2) {
            if by_value_then_index(values, w[0], w[1]) != Ordering::Less {
                return Err(Error::invalid(format!(
                    "sorted index places {} before {} but their values are out of order",
                    w[0], w[1]
                )));
            }
        }
        Ok(())
    }
}

fn by_value_then_index<T: Weight>(values: &[T], i: usize, j: usize) -> Ordering {
    values[i]
        .partial_cmp(&values[j])
        .expect("NaN rejected before sorting")
        .then(i.cmp(&j))
}

fn check_values<T: Weight>(values: &[T]) -> Result<()> {
    if values.is_empty() {
        return Err(Error::invalid("cannot sort an empty vector"));
    }
    if let Some(i) = values.iter().position(|&x| !is_extended_weight(x)) {
        return Err(Error::invalid(format!(
            "value {} at index {i} is not an extended weight",
            values[i]
        )));
    }
    Ok(())
}

/// Sorts `values` ascending, `+inf` last, ties by index.
pub fn sort_index<T: Weight>(values: &[T]) -> Result<SortedIndex> {
    check_values(values)?;
    Ok(sort_index_prechecked(values))
}

pub(crate) fn sort_index_prechecked<T: Weight>(values: &[T]) -> SortedIndex {
    let mut perm: Vec<usize> = (0..values.len()).collect();
    // (value, index) keys are distinct, so an unstable sort is deterministic.
    perm.sort_unstable_by(|&i, &j| by_value_then_index(values, i, j));
    let mut inv = vec![0; perm.len()];
    for (rank, &idx) in perm.iter().enumerate() {
        inv[idx] = rank;
    }
    SortedIndex { perm, inv }
}

/// A vector paired with the index that sorts it.
///
/// The sorted order is validated once here and then reused by any number of
/// [`select`] calls.
#[derive(Debug, Clone, Copy)]
pub struct SortedList<'a, T> {
    values: &'a [T],
    index: &'a SortedIndex,
}

impl<'a, T: Weight> SortedList<'a, T> {
    pub fn new(values: &'a [T], index: &'a SortedIndex) -> Result<Self> {
        check_values(values)?;
        index.validate_for(values)?;
        Ok(SortedList { values, index })
    }

    /// Pairs values with an index produced by [`sort_index_prechecked`] on
    /// the same values.
    pub(crate) fn trusted(values: &'a [T], index: &'a SortedIndex) -> Self {
        debug_assert_eq!(values.len(), index.len());
        SortedList { values, index }
    }

    pub fn values(&self) -> &'a [T] {
        self.values
    }

    pub fn index(&self) -> &'a SortedIndex {
        self.index
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }
}

/// Outcome of one argmin call.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct KernelResult<T> {
    /// An index attaining the minimum.
    pub best: usize,
    /// `a[best] + b[best]`.
    pub min_value: T,
    /// Number of ranks examined, counting the initial rank-0 probe. For the
    /// sorted kernel this is the crossing rank of the two orders.
    pub iterations: usize,
}

/// Linear-scan argmin. Returns the first index on ties; `iterations = V`.
pub fn naive_select<T: Weight>(a: &[T], b: &[T]) -> Result<KernelResult<T>> {
    if a.len() != b.len() {
        return Err(Error::invalid(format!(
            "length mismatch: {} vs {}",
            a.len(),
            b.len()
        )));
    }
    if a.is_empty() {
        return Err(Error::invalid("cannot select from empty vectors"));
    }
    Ok(naive_scan(a, b))
}

pub(crate) fn naive_scan<T: Weight>(a: &[T], b: &[T]) -> KernelResult<T> {
    let mut best = 0;
    let mut min_value = a[0] + b[0];
    for (i, (&x, &y)) in a.iter().zip(b).enumerate().skip(1) {
        let s = x + y;
        if s < min_value {
            min_value = s;
            best = i;
        }
    }
    KernelResult {
        best,
        min_value,
        iterations: a.len(),
    }
}

/// Sorted early-termination argmin over two pre-sorted lists.
pub fn select<T: Weight>(a: SortedList<'_, T>, b: SortedList<'_, T>) -> Result<KernelResult<T>> {
    if a.len() != b.len() {
        return Err(Error::invalid(format!(
            "length mismatch: {} vs {}",
            a.len(),
            b.len()
        )));
    }
    if a.is_empty() {
        return Err(Error::invalid("cannot select from empty vectors"));
    }
    Ok(select_sorted(a, b))
}

/// Validates both sorted indices against their vectors, then runs [`select`].
pub fn minplus_select<T: Weight>(
    a: &[T],
    b: &[T],
    sa: &SortedIndex,
    sb: &SortedIndex,
) -> Result<KernelResult<T>> {
    select(SortedList::new(a, sa)?, SortedList::new(b, sb)?)
}

pub(crate) fn select_sorted<T: Weight>(a: SortedList<'_, T>, b: SortedList<'_, T>) -> KernelResult<T> {
    let (va, pa) = (a.values, a.index);
    let (vb, pb) = (b.values, b.index);
    let inf = T::infinity();

    let a0 = pa.perm[0];
    let b0 = pb.perm[0];
    let mut best = a0;
    let mut min_value = va[a0] + vb[a0];
    if b0 != a0 {
        let s = va[b0] + vb[b0];
        if s < min_value {
            best = b0;
            min_value = s;
        }
    }

    // end_a: smallest a-rank among indices seen in b-order, and vice versa.
    // Once start reaches either, some index lies inside both rank prefixes.
    let mut end_a = pa.inv[b0];
    let mut end_b = pb.inv[a0];
    let mut start = 0;
    while start < end_a || start < end_b {
        // Every unseen index has a-rank and b-rank above `start`; an infinite
        // frontier on either side means every remaining sum is infinite.
        if va[pa.perm[start]] == inf || vb[pb.perm[start]] == inf {
            break;
        }
        start += 1;

        let i = pa.perm[start];
        let s = va[i] + vb[i];
        if s < min_value {
            best = i;
            min_value = s;
        }
        end_b = end_b.min(pb.inv[i]);

        let j = pb.perm[start];
        if j != i {
            let s = va[j] + vb[j];
            if s < min_value {
                best = j;
                min_value = s;
            }
        }
        end_a = end_a.min(pa.inv[j]);
    }

    KernelResult {
        best,
        min_value,
        iterations: start + 1,
    }
}

/// Crossing rank of a permutation: the smallest `m` such that some `r < m`
/// has `perm[r] < m`. This is the iteration count [`select`] reports when
/// `perm` maps a-ranks to b-ranks and no infinities are present.
pub fn crossing_rank(perm: &[usize]) -> usize {
    perm.iter()
        .enumerate()
        .map(|(r, &p)| r.max(p) + 1)
        .min()
        .unwrap_or(0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn run(a: &[f64], b: &[f64]) -> KernelResult<f64> {
        let sa = sort_index(a).unwrap();
        let sb = sort_index(b).unwrap();
        minplus_select(a, b, &sa, &sb).unwrap()
    }

    #[test]
    fn sort_index_basic() {
        let s = sort_index(&[3.0, 1.0, 2.0]).unwrap();
        assert_eq!(s.perm(), &[1, 2, 0]);
        assert_eq!(s.inv(), &[2, 0, 1]);

        let s = sort_index(&[5.0]).unwrap();
        assert_eq!(s.perm(), &[0]);
        assert_eq!(s.inv(), &[0]);
    }

    #[test]
    fn sort_index_ties_by_index() {
        let s = sort_index(&[1.0, 1.0, 0.5]).unwrap();
        assert_eq!(s.perm(), &[2, 0, 1]);
    }

    #[test]
    fn sort_index_infinity_last() {
        let s = sort_index(&[f64::INFINITY, 2.0, f64::INFINITY, -1.0]).unwrap();
        assert_eq!(s.perm(), &[3, 1, 0, 2]);
    }

    #[test]
    fn sort_index_rejects_empty_and_nan() {
        assert!(matches!(sort_index::<f64>(&[]), Err(Error::InvalidInput(_))));
        assert!(matches!(sort_index(&[1.0, f64::NAN]), Err(Error::InvalidInput(_))));
    }

    #[test]
    fn correlated_lists_stop_immediately() {
        let r = run(&[3.0, 1.0, 2.0], &[30.0, 10.0, 20.0]);
        assert_eq!((r.best, r.min_value, r.iterations), (1, 11.0, 1));
    }

    #[test]
    fn mixed_lists_match_hand_scan() {
        let a = [0.1, 0.9, 0.5];
        let b = [0.2, 0.05, 0.9];
        // sums: 0.1+0.2, 0.9+0.05, 0.5+0.9
        let r = run(&a, &b);
        assert_eq!(r.best, 0);
        assert_eq!(r.min_value, 0.1 + 0.2);
        let n = naive_select(&a, &b).unwrap();
        assert_eq!((n.best, n.min_value, n.iterations), (0, 0.1 + 0.2, 3));
    }

    #[test]
    fn anti_correlated_all_tie() {
        let a = [1.0, 2.0, 3.0, 4.0];
        let b = [4.0, 3.0, 2.0, 1.0];
        let r = run(&a, &b);
        assert_eq!(r.min_value, 5.0);
        assert_eq!(a[r.best] + b[r.best], 5.0);
        // reversed orders cross at the middle
        assert_eq!(r.iterations, 3);
    }

    #[test]
    fn all_sums_infinite() {
        let a = [f64::INFINITY, 1.0];
        let b = [2.0, f64::INFINITY];
        let r = run(&a, &b);
        assert_eq!(r.min_value, f64::INFINITY);
        assert!(r.best < 2);
        assert!(r.iterations <= 2);
    }

    #[test]
    fn fully_infinite_lists_exit_at_first_rank() {
        let a = vec![f64::INFINITY; 50];
        let b = vec![f64::INFINITY; 50];
        let r = run(&a, &b);
        assert_eq!(r.iterations, 1);
        // b-order is the reverse of a-order, the worst case without infinities
        let b2: Vec<f64> = (0..50).map(|i| (50 - i) as f64).collect();
        let r = run(&a, &b2);
        assert_eq!(r.iterations, 1);
        assert_eq!(r.min_value, f64::INFINITY);
    }

    #[test]
    fn naive_select_edge_cases() {
        let r = naive_select(&[5.0], &[3.0]).unwrap();
        assert_eq!((r.best, r.min_value, r.iterations), (0, 8.0, 1));
        let r = naive_select(&[1.0, 1.0], &[1.0, 1.0]).unwrap();
        assert_eq!((r.best, r.min_value), (0, 2.0));
        assert!(naive_select(&[1.0], &[1.0, 2.0]).is_err());
        assert!(naive_select::<f64>(&[], &[]).is_err());
    }

    #[test]
    fn mismatched_or_inconsistent_indices_are_rejected() {
        let a = [1.0, 2.0, 3.0];
        let b = [3.0, 2.0, 1.0];
        let sa = sort_index(&a).unwrap();
        let sb = sort_index(&b).unwrap();
        // sa does not sort b
        assert!(matches!(
            minplus_select(&a, &b, &sa, &sa),
            Err(Error::InvalidInput(_))
        ));
        let short = sort_index(&[1.0, 2.0]).unwrap();
        assert!(minplus_select(&a, &b, &short, &sb).is_err());
        assert!(minplus_select(&a, &b[..2], &sa, &short).is_err());
        assert!(SortedIndex::from_perm(vec![0, 0, 1]).is_err());
    }

    #[test]
    fn crossing_rank_small_cases() {
        assert_eq!(crossing_rank(&[0]), 1);
        assert_eq!(crossing_rank(&[0, 1]), 1);
        assert_eq!(crossing_rank(&[1, 0]), 2);
        assert_eq!(crossing_rank(&[3, 2, 1, 0]), 3);
    }

    fn weight() -> impl Strategy<Value = f64> {
        prop_oneof![
            6 => -10.0f64..10.0,
            2 => (0i32..4).prop_map(f64::from),
            1 => Just(f64::INFINITY),
        ]
    }

    fn pair() -> impl Strategy<Value = (Vec<f64>, Vec<f64>)> {
        (1usize..200).prop_flat_map(|n| {
            (
                proptest::collection::vec(weight(), n),
                proptest::collection::vec(weight(), n),
            )
        })
    }

    proptest! {
        #[test]
        fn matches_naive_scan((a, b) in pair()) {
            let fast = run(&a, &b);
            let slow = naive_select(&a, &b).unwrap();
            prop_assert_eq!(fast.min_value.to_bits(), slow.min_value.to_bits());
            prop_assert_eq!((a[fast.best] + b[fast.best]).to_bits(), fast.min_value.to_bits());
            prop_assert!(fast.iterations >= 1);
            prop_assert!(fast.iterations <= a.len() / 2 + 1);
        }

        #[test]
        fn finite_prefix_bounds_iterations((a, b) in pair(), k in 0usize..200) {
            let n = a.len();
            let k = k.min(n);
            // keep only the k smallest entries of each list finite
            let cut = |v: &[f64]| {
                let s = sort_index(v).unwrap();
                let mut out = v.to_vec();
                for r in k..n {
                    out[s.at_rank(r)] = f64::INFINITY;
                }
                out
            };
            let (a, b) = (cut(&a), cut(&b));
            let r = run(&a, &b);
            prop_assert!(r.iterations <= (n / 2 + 1).min(k + 1));
            prop_assert_eq!(r.min_value.to_bits(), naive_select(&a, &b).unwrap().min_value.to_bits());
        }

        #[test]
        fn iterations_equal_crossing_rank(a in proptest::collection::vec(-1.0f64..1.0, 1..300), seed in any::<u64>()) {
            use rand::{seq::SliceRandom, SeedableRng};
            let mut b = a.clone();
            b.shuffle(&mut rand_chacha::ChaCha8Rng::seed_from_u64(seed));
            let sa = sort_index(&a).unwrap();
            let sb = sort_index(&b).unwrap();
            let r = minplus_select(&a, &b, &sa, &sb).unwrap();
            let rank_map: Vec<usize> = sa.perm().iter().map(|&i| sb.rank_of(i)).collect();
            prop_assert_eq!(r.iterations, crossing_rank(&rank_map));
        }

        #[test]
        fn sort_index_invariants(v in proptest::collection::vec(weight(), 1..100)) {
            let s = sort_index(&v).unwrap();
            prop_assert!(s.validate_for(&v).is_ok());
            for (r, &i) in s.perm().iter().enumerate() {
                prop_assert_eq!(s.rank_of(i), r);
            }
        }
    }
}
