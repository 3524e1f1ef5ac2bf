//! Increasing multi-indices as bitmasks and the signs of the wedge product.

/// A strictly increasing set of axes, stored as a bitmask.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct MultiIndex(pub u8);

impl MultiIndex {
    pub fn from_axes(axes: &[usize]) -> Self {
        MultiIndex(axes.iter().fold(0u8, |m, &a| m | (1 << a)))
    }

    pub fn degree(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn contains(self, axis: usize) -> bool {
        self.0 & (1 << axis) != 0
    }

    pub fn axes(self) -> impl Iterator<Item = usize> {
        (0..8).filter(move |a| self.0 & (1 << a) != 0)
    }

    pub fn without(self, axis: usize) -> Self {
        MultiIndex(self.0 & !(1 << axis))
    }

    /// Number of axes in the set strictly below `axis`.
    pub fn rank_of(self, axis: usize) -> usize {
        (self.0 & ((1u8 << axis) - 1)).count_ones() as usize
    }
}

pub fn binomial(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

/// All degree-`k` multi-indices over `dim` axes in lexicographic order.
pub fn multi_indices(dim: usize, k: usize) -> Vec<MultiIndex> {
    fn rec(start: usize, dim: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<MultiIndex>) {
        if cur.len() == k {
            out.push(MultiIndex::from_axes(cur));
            return;
        }
        for a in start..dim {
            cur.push(a);
            rec(a + 1, dim, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::with_capacity(binomial(dim, k));
    rec(0, dim, k, &mut Vec::with_capacity(k), &mut out);
    out
}

/// Sign of `dx^I ∧ dx^J = ± dx^{I∪J}` for disjoint `I`, `J`.
pub fn wedge_sign(i: MultiIndex, j: MultiIndex) -> f64 {
    let inversions: usize = j.axes().map(|b| i.axes().filter(|&a| a > b).count()).sum();
    if inversions.is_multiple_of(2) {
        1.0
    } else {
        -1.0
    }
}

/// Position lookup: `table[mask]` is the component slot of that index.
pub(crate) fn lookup_table(dim: usize, k: usize) -> Vec<usize> {
    let mut table = vec![usize::MAX; 1 << dim];
    for (slot, m) in multi_indices(dim, k).into_iter().enumerate() {
        table[m.0 as usize] = slot;
    }
    table
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn counts_and_order() {
        assert_eq!(multi_indices(4, 2).len(), 6);
        assert_eq!(multi_indices(3, 0), vec![MultiIndex(0)]);
        let idx: Vec<Vec<usize>> = multi_indices(3, 2).iter().map(|m| m.axes().collect()).collect();
        assert_eq!(idx, vec![vec![0, 1], vec![0, 2], vec![1, 2]]);
    }

    #[test]
    fn shuffle_signs() {
        let a = MultiIndex::from_axes(&[0]);
        let b = MultiIndex::from_axes(&[1]);
        assert_eq!(wedge_sign(a, b), 1.0);
        assert_eq!(wedge_sign(b, a), -1.0);
        assert_eq!(
            wedge_sign(MultiIndex::from_axes(&[1, 2]), MultiIndex::from_axes(&[0])),
            1.0
        );
        assert_eq!(
            wedge_sign(MultiIndex::from_axes(&[1, 3]), MultiIndex::from_axes(&[0, 2])),
            -1.0
        );
    }
}
