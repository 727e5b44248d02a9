use std::fmt;

use crate::sets::Subset;

/// A total height map on the ground set, indexed like the ground set.
///
/// Only the weak order a height function induces matters to every predicate
/// in this crate, so [`normalize_heights`] can compress any map to ranks
/// `0..k` without changing behaviour.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct HeightFunction {
    heights: Vec<u64>,
}

impl HeightFunction {
    pub fn new(heights: Vec<u64>) -> Self {
        HeightFunction { heights }
    }

    pub fn constant(size: usize, value: u64) -> Self {
        HeightFunction::new(vec![value; size])
    }

    /// 1 on `s`, 0 elsewhere. Makes `s` an island of any domain containing it.
    pub fn indicator(s: &Subset) -> Self {
        HeightFunction::new(
            (0..s.universe_size())
                .map(|i| u64::from(s.contains(i)))
                .collect(),
        )
    }

    pub fn len(&self) -> usize {
        self.heights.len()
    }

    pub fn is_empty(&self) -> bool {
        self.heights.is_empty()
    }

    pub fn get(&self, point: usize) -> u64 {
        self.heights[point]
    }

    pub fn as_slice(&self) -> &[u64] {
        &self.heights
    }

    /// Minimum height over the members of `s`, `None` for the empty set.
    pub fn min_over(&self, s: &Subset) -> Option<u64> {
        s.iter().map(|i| self.heights[i]).min()
    }

    pub fn is_injective(&self) -> bool {
        let mut sorted = self.heights.clone();
        sorted.sort_unstable();
        sorted.windows(2).all(|w| w[0] != w[1])
    }

    /// Range is exactly `{0, …, k−1}` for some `k`.
    pub fn is_normalized(&self) -> bool {
        let mut distinct = self.heights.clone();
        distinct.sort_unstable();
        distinct.dedup();
        distinct.iter().enumerate().all(|(i, &v)| v == i as u64)
    }

    pub fn normalized(&self) -> HeightFunction {
        normalize_heights(self)
    }
}

impl fmt::Debug for HeightFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(&self.heights).finish()
    }
}

/// Rank compression: the order-isomorphic height function with range
/// `{0, …, k−1}`, where `k` is the number of distinct input values.
pub fn normalize_heights(h: &HeightFunction) -> HeightFunction {
    let mut distinct = h.heights.clone();
    distinct.sort_unstable();
    distinct.dedup();
    HeightFunction::new(
        h.heights
            .iter()
            .map(|v| distinct.binary_search(v).expect("value present") as u64)
            .collect(),
    )
}
