use std::cmp::Ordering;
use std::fmt;

/// Largest vertex count a complex may have.
pub const MAX_VERTICES: usize = 64;

/// A set of vertex indices packed into a 64-bit mask.
///
/// Ordering is lexicographic on the ascending index sequence, so `{0,1,2} < {0,2} < {1}`
/// and a proper prefix sorts first. This is the canonical facet order.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct VertexSet(pub u64);

impl VertexSet {
    pub const EMPTY: VertexSet = VertexSet(0);

    pub fn singleton(v: usize) -> Self {
        VertexSet(1u64 << v)
    }

    pub fn from_indices<I: IntoIterator<Item = usize>>(it: I) -> Self {
        VertexSet(it.into_iter().fold(0u64, |m, v| m | (1u64 << v)))
    }

    /// All vertices `0..n`.
    pub fn full(n: usize) -> Self {
        if n >= 64 {
            VertexSet(u64::MAX)
        } else {
            VertexSet((1u64 << n) - 1)
        }
    }

    #[inline]
    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    #[inline]
    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    #[inline]
    pub fn contains(self, v: usize) -> bool {
        self.0 >> v & 1 == 1
    }

    #[inline]
    pub fn insert(&mut self, v: usize) {
        self.0 |= 1u64 << v;
    }

    #[inline]
    pub fn is_subset(self, other: VertexSet) -> bool {
        self.0 & !other.0 == 0
    }

    #[inline]
    pub fn union(self, other: VertexSet) -> VertexSet {
        VertexSet(self.0 | other.0)
    }

    #[inline]
    pub fn intersection(self, other: VertexSet) -> VertexSet {
        VertexSet(self.0 & other.0)
    }

    #[inline]
    pub fn difference(self, other: VertexSet) -> VertexSet {
        VertexSet(self.0 & !other.0)
    }

    pub fn first(self) -> Option<usize> {
        (self.0 != 0).then(|| self.0.trailing_zeros() as usize)
    }

    /// Ascending vertex indices.
    pub fn iter(self) -> Iter {
        Iter(self.0)
    }

    /// All subsets of `self` with exactly `k` elements, in canonical order.
    pub fn subsets_of_size(self, k: usize) -> Vec<VertexSet> {
        fn walk(items: &[usize], k: usize, acc: u64, out: &mut Vec<VertexSet>) {
            if k == 0 {
                out.push(VertexSet(acc));
                return;
            }
            for i in 0..items.len() {
                if items.len() - i < k {
                    break;
                }
                walk(&items[i + 1..], k - 1, acc | 1u64 << items[i], out);
            }
        }
        let items: Vec<usize> = self.iter().collect();
        let mut out = Vec::new();
        walk(&items, k, 0, &mut out);
        out
    }

    /// Every non-empty subset of `self`.
    pub fn nonempty_subsets(self) -> impl Iterator<Item = VertexSet> {
        let m = self.0;
        let mut sub = m;
        let mut done = m == 0;
        std::iter::from_fn(move || {
            if done {
                return None;
            }
            let cur = sub;
            sub = (sub.wrapping_sub(1)) & m;
            if sub == 0 {
                done = true;
            }
            Some(VertexSet(cur))
        })
    }
}

pub struct Iter(u64);

impl Iterator for Iter {
    type Item = usize;

    fn next(&mut self) -> Option<usize> {
        if self.0 == 0 {
            return None;
        }
        let v = self.0.trailing_zeros() as usize;
        self.0 &= self.0 - 1;
        Some(v)
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let n = self.0.count_ones() as usize;
        (n, Some(n))
    }
}

impl Ord for VertexSet {
    fn cmp(&self, other: &Self) -> Ordering {
        self.iter().cmp(other.iter())
    }
}

impl PartialOrd for VertexSet {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for VertexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn lexicographic_order() {
        let a = VertexSet::from_indices([0, 1, 2]);
        let b = VertexSet::from_indices([0, 2]);
        let c = VertexSet::from_indices([1]);
        let d = VertexSet::from_indices([0, 1]);
        assert!(a < b && b < c);
        assert!(d < a);
    }

    #[test]
    fn subsets_of_size_counts() {
        let s = VertexSet::full(5);
        assert_eq!(s.subsets_of_size(0).len(), 1);
        assert_eq!(s.subsets_of_size(2).len(), 10);
        assert_eq!(s.subsets_of_size(3).len(), 10);
        assert_eq!(s.subsets_of_size(5).len(), 1);
        assert!(s.subsets_of_size(6).is_empty());
        let odd = VertexSet::from_indices([1, 4, 9]);
        assert_eq!(
            odd.subsets_of_size(2),
            vec![VertexSet::from_indices([1, 4]), VertexSet::from_indices([1, 9]), VertexSet::from_indices([4, 9])]
        );
    }

    #[test]
    fn nonempty_subsets_enumerates_all() {
        let s = VertexSet::from_indices([2, 3, 7]);
        let mut subs: Vec<_> = s.nonempty_subsets().collect();
        subs.sort();
        assert_eq!(subs.len(), 7);
        assert!(subs.iter().all(|x| x.is_subset(s) && !x.is_empty()));
        assert_eq!(VertexSet::EMPTY.nonempty_subsets().count(), 0);
    }
}
