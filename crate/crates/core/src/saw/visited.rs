/// Vertex set used by the depth-first searches: a single word for graphs with
/// at most 64 vertices, a dynamic bitset otherwise.
pub(crate) trait VisitedSet: Clone + Send {
    fn empty(n: usize) -> Self;
    fn contains(&self, v: usize) -> bool;
    fn insert(&mut self, v: usize);
    fn remove(&mut self, v: usize);
}

impl VisitedSet for u64 {
    fn empty(n: usize) -> Self {
        debug_assert!(n <= 64);
        0
    }

    #[inline]
    fn contains(&self, v: usize) -> bool {
        *self >> v & 1 == 1
    }

    #[inline]
    fn insert(&mut self, v: usize) {
        *self |= 1 << v;
    }

    #[inline]
    fn remove(&mut self, v: usize) {
        *self &= !(1 << v);
    }
}

#[derive(Clone, Debug)]
pub(crate) struct BitSet(Vec<u64>);

impl VisitedSet for BitSet {
    fn empty(n: usize) -> Self {
        BitSet(vec![0; n.div_ceil(64)])
    }

    #[inline]
    fn contains(&self, v: usize) -> bool {
        self.0[v / 64] >> (v % 64) & 1 == 1
    }

    #[inline]
    fn insert(&mut self, v: usize) {
        self.0[v / 64] |= 1 << (v % 64);
    }

    #[inline]
    fn remove(&mut self, v: usize) {
        self.0[v / 64] &= !(1 << (v % 64));
    }
}
