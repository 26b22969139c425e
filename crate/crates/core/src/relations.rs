//! Equivalences, binary relations, Green's relations and the natural quasi-orders.

use std::fmt;

use crate::error::{Error, Result};
use crate::table::{Elem, SemiringTable};

/// An equivalence relation stored as canonical block labels.
///
/// Blocks are numbered `0, 1, …` in order of their least element, so two
/// partitions are equal iff they describe the same equivalence.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct Partition {
    labels: Vec<usize>,
}

impl Partition {
    /// Canonicalizes arbitrary block labels.
    pub fn from_labels(raw: &[usize]) -> Partition {
        let mut map: Vec<(usize, usize)> = Vec::new();
        let labels = raw
            .iter()
            .map(|&r| match map.iter().find(|(k, _)| *k == r) {
                Some(&(_, v)) => v,
                None => {
                    let v = map.len();
                    map.push((r, v));
                    v
                }
            })
            .collect();
        Partition { labels }
    }

    pub fn from_blocks(order: usize, blocks: &[Vec<Elem>]) -> Result<Partition> {
        let mut raw = vec![usize::MAX; order];
        for (i, block) in blocks.iter().enumerate() {
            for &e in block {
                if e >= order || raw[e] != usize::MAX {
                    return Err(Error::Structure(format!("element {e} repeated or out of range")));
                }
                raw[e] = i;
            }
        }
        if raw.contains(&usize::MAX) {
            return Err(Error::Structure("blocks do not cover every element".into()));
        }
        Ok(Partition::from_labels(&raw))
    }

    pub fn equality(order: usize) -> Partition {
        Partition { labels: (0..order).collect() }
    }

    pub fn universal(order: usize) -> Partition {
        Partition { labels: vec![0; order] }
    }

    pub fn order(&self) -> usize {
        self.labels.len()
    }

    pub fn labels(&self) -> &[usize] {
        &self.labels
    }

    pub fn block_of(&self, a: Elem) -> usize {
        self.labels[a]
    }

    pub fn block_count(&self) -> usize {
        self.labels.iter().max().map_or(0, |m| m + 1)
    }

    #[inline]
    pub fn related(&self, a: Elem, b: Elem) -> bool {
        self.labels[a] == self.labels[b]
    }

    /// Blocks as sorted element lists, in block-label order.
    pub fn blocks(&self) -> Vec<Vec<Elem>> {
        let mut blocks = vec![Vec::new(); self.block_count()];
        for (e, &l) in self.labels.iter().enumerate() {
            blocks[l].push(e);
        }
        blocks
    }

    /// Least element of each block.
    pub fn representatives(&self) -> Vec<Elem> {
        self.blocks().iter().map(|b| b[0]).collect()
    }

    pub fn is_equality(&self) -> bool {
        self.block_count() == self.order()
    }

    pub fn is_universal(&self) -> bool {
        self.block_count() <= 1
    }

    /// `self ⊆ other` as relations.
    pub fn refines(&self, other: &Partition) -> bool {
        let n = self.order();
        (0..n).all(|a| (a + 1..n).all(|b| !self.related(a, b) || other.related(a, b)))
    }

    pub fn meet(&self, other: &Partition) -> Partition {
        let pairs: Vec<(usize, usize)> = self.labels.iter().zip(&other.labels).map(|(&a, &b)| (a, b)).collect();
        let raw: Vec<usize> = pairs.iter().map(|p| pairs.iter().position(|q| q == p).unwrap()).collect();
        Partition::from_labels(&raw)
    }

    pub fn join(&self, other: &Partition) -> Partition {
        let mut uf = UnionFind::new(self.order());
        for p in [self, other] {
            for block in p.blocks() {
                for w in block.windows(2) {
                    uf.union(w[0], w[1]);
                }
            }
        }
        uf.to_partition()
    }

    pub fn to_relation(&self) -> BinRelation {
        let n = self.order();
        let mut r = BinRelation::empty(n);
        for a in 0..n {
            for b in 0..n {
                if self.related(a, b) {
                    r.insert(a, b);
                }
            }
        }
        r
    }

    /// Blocks rendered with element names.
    pub fn named_blocks(&self, t: &SemiringTable) -> Vec<Vec<String>> {
        let mut blocks: Vec<Vec<String>> = self
            .blocks()
            .iter()
            .map(|b| {
                let mut names: Vec<String> = b.iter().map(|&e| t.name(e).to_string()).collect();
                names.sort();
                names
            })
            .collect();
        blocks.sort();
        blocks
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let blocks: Vec<String> = self
            .blocks()
            .iter()
            .map(|b| {
                let items: Vec<String> = b.iter().map(ToString::to_string).collect();
                format!("{{{}}}", items.join(","))
            })
            .collect();
        write!(f, "{{{}}}", blocks.join(","))
    }
}

/// Disjoint-set forest with path halving and union by size.
#[derive(Clone, Debug)]
pub struct UnionFind {
    parent: Vec<usize>,
    size: Vec<usize>,
}

impl UnionFind {
    pub fn new(n: usize) -> Self {
        UnionFind { parent: (0..n).collect(), size: vec![1; n] }
    }

    pub fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    /// Merges the classes of `a` and `b`; returns false if already merged.
    pub fn union(&mut self, a: usize, b: usize) -> bool {
        let (mut ra, mut rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        if self.size[ra] < self.size[rb] {
            std::mem::swap(&mut ra, &mut rb);
        }
        self.parent[rb] = ra;
        self.size[ra] += self.size[rb];
        true
    }

    pub fn to_partition(&mut self) -> Partition {
        let raw: Vec<usize> = (0..self.parent.len()).map(|x| self.find(x)).collect();
        Partition::from_labels(&raw)
    }
}

/// An arbitrary binary relation on `{0, …, n-1}`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct BinRelation {
    order: usize,
    bits: Vec<bool>,
}

impl BinRelation {
    pub fn empty(order: usize) -> Self {
        BinRelation { order, bits: vec![false; order * order] }
    }

    pub fn identity(order: usize) -> Self {
        Self::from_fn(order, |a, b| a == b)
    }

    pub fn from_fn(order: usize, mut f: impl FnMut(Elem, Elem) -> bool) -> Self {
        let mut r = Self::empty(order);
        for a in 0..order {
            for b in 0..order {
                r.bits[a * order + b] = f(a, b);
            }
        }
        r
    }

    pub fn order(&self) -> usize {
        self.order
    }

    #[inline]
    pub fn contains(&self, a: Elem, b: Elem) -> bool {
        self.bits[a * self.order + b]
    }

    pub fn insert(&mut self, a: Elem, b: Elem) {
        self.bits[a * self.order + b] = true;
    }

    pub fn pairs(&self) -> impl Iterator<Item = (Elem, Elem)> + '_ {
        let n = self.order;
        (0..n).flat_map(move |a| (0..n).map(move |b| (a, b))).filter(|&(a, b)| self.contains(a, b))
    }

    pub fn len(&self) -> usize {
        self.bits.iter().filter(|&&b| b).count()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn is_reflexive(&self) -> bool {
        (0..self.order).all(|a| self.contains(a, a))
    }

    pub fn is_symmetric(&self) -> bool {
        self.pairs().all(|(a, b)| self.contains(b, a))
    }

    pub fn is_antisymmetric(&self) -> bool {
        self.pairs().all(|(a, b)| a == b || !self.contains(b, a))
    }

    pub fn is_transitive(&self) -> bool {
        let n = self.order;
        self.pairs().all(|(a, b)| (0..n).all(|c| !self.contains(b, c) || self.contains(a, c)))
    }

    pub fn is_equivalence(&self) -> bool {
        self.is_reflexive() && self.is_symmetric() && self.is_transitive()
    }

    pub fn is_universal(&self) -> bool {
        self.bits.iter().all(|&b| b)
    }

    pub fn is_subset(&self, other: &BinRelation) -> bool {
        self.pairs().all(|(a, b)| other.contains(a, b))
    }

    pub fn intersection(&self, other: &BinRelation) -> BinRelation {
        BinRelation::from_fn(self.order, |a, b| self.contains(a, b) && other.contains(a, b))
    }

    /// Relational composition: `a (self ∘ other) c ⟺ ∃b. a self b ∧ b other c`.
    pub fn compose(&self, other: &BinRelation) -> BinRelation {
        let n = self.order;
        BinRelation::from_fn(n, |a, c| (0..n).any(|b| self.contains(a, b) && other.contains(b, c)))
    }

    /// Warshall's algorithm.
    pub fn transitive_closure(&self) -> BinRelation {
        let n = self.order;
        let mut r = self.clone();
        for k in 0..n {
            for a in 0..n {
                if r.contains(a, k) {
                    for b in 0..n {
                        if r.contains(k, b) {
                            r.insert(a, b);
                        }
                    }
                }
            }
        }
        r
    }

    /// The partition of an equivalence relation, or `None` if not one.
    pub fn to_partition(&self) -> Option<Partition> {
        if !self.is_equivalence() {
            return None;
        }
        let raw: Vec<usize> =
            (0..self.order).map(|a| (0..self.order).find(|&b| self.contains(a, b)).unwrap()).collect();
        Some(Partition::from_labels(&raw))
    }

    /// Pairs rendered with element names.
    pub fn named_pairs(&self, t: &SemiringTable) -> Vec<(String, String)> {
        self.pairs().map(|(a, b)| (t.name(a).to_string(), t.name(b).to_string())).collect()
    }
}

/// Green's `L`, `R`, `D` of one band reduct.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct GreenTriple {
    pub l: Partition,
    pub r: Partition,
    pub d: Partition,
}

fn green_of(n: usize, op: impl Fn(Elem, Elem) -> Elem, reduct: &str) -> Result<GreenTriple> {
    let l = BinRelation::from_fn(n, |a, b| op(a, b) == a && op(b, a) == b);
    let r = BinRelation::from_fn(n, |a, b| op(a, b) == b && op(b, a) == a);
    let d = BinRelation::from_fn(n, |a, b| op(op(a, b), a) == a && op(op(b, a), b) == b);
    let part = |rel: BinRelation, which: &str| {
        rel.to_partition()
            .ok_or_else(|| Error::Consistency(format!("Green's {which} on the {reduct} reduct is not an equivalence")))
    };
    Ok(GreenTriple { l: part(l, "L")?, r: part(r, "R")?, d: part(d, "D")? })
}

/// Green's relations of the multiplicative band `(S, ·)`.
pub fn green_mult(t: &SemiringTable) -> Result<GreenTriple> {
    green_of(t.order(), |a, b| t.mul(a, b), "multiplicative")
}

/// Green's relations of the additive band `(S, +)`.
pub fn green_add(t: &SemiringTable) -> Result<GreenTriple> {
    green_of(t.order(), |a, b| t.add(a, b), "additive")
}

/// The six natural quasi-orders of an idempotent semiring.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct QuasiOrders {
    /// `a ≤ˡ₊ b ⟺ b = a + b`
    pub left_add: BinRelation,
    /// `a ≤ʳ₊ b ⟺ b = b + a`
    pub right_add: BinRelation,
    /// `a ≤ˡ· b ⟺ a = ba`
    pub left_mul: BinRelation,
    /// `a ≤ʳ· b ⟺ a = ab`
    pub right_mul: BinRelation,
    /// `≤₊ = ≤ˡ₊ ∩ ≤ʳ₊`
    pub add: BinRelation,
    /// `≤· = ≤ˡ· ∩ ≤ʳ·`
    pub mul: BinRelation,
}

pub fn quasi_orders(t: &SemiringTable) -> QuasiOrders {
    let n = t.order();
    let left_add = BinRelation::from_fn(n, |a, b| t.add(a, b) == b);
    let right_add = BinRelation::from_fn(n, |a, b| t.add(b, a) == b);
    let left_mul = BinRelation::from_fn(n, |a, b| t.mul(b, a) == a);
    let right_mul = BinRelation::from_fn(n, |a, b| t.mul(a, b) == a);
    let add = left_add.intersection(&right_add);
    let mul = left_mul.intersection(&right_mul);
    QuasiOrders { left_add, right_add, left_mul, right_mul, add, mul }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::examples::{chain, three_element, two_lattice};

    fn blocks(p: &Partition) -> Vec<Vec<Elem>> {
        p.blocks()
    }

    #[test]
    fn green_mult_three_element() {
        let g = green_mult(&three_element()).unwrap();
        assert_eq!(blocks(&g.d), vec![vec![0, 1], vec![2]]);
        assert_eq!(blocks(&g.l), vec![vec![0, 1], vec![2]]);
        assert!(g.r.is_equality());
    }

    #[test]
    fn green_add_three_element() {
        let g = green_add(&three_element()).unwrap();
        assert!(g.d.is_equality());
    }

    #[test]
    fn green_trivial_and_lattice() {
        let t = SemiringTable::trivial();
        for g in [green_mult(&t).unwrap(), green_add(&t).unwrap()] {
            assert_eq!(g.l, Partition::universal(1));
            assert_eq!(g.d, Partition::equality(1));
        }
        assert!(green_add(&two_lattice()).unwrap().d.is_equality());
    }

    #[test]
    fn quasi_orders_lattice() {
        let q = quasi_orders(&two_lattice());
        assert!(q.add.contains(0, 1));
        assert!(!q.add.contains(1, 0));
        assert_eq!(q.add.len(), 3);
        let q3 = quasi_orders(&chain(3));
        assert!(q3.add.is_antisymmetric() && q3.add.is_transitive());
    }

    #[test]
    fn quasi_order_example() {
        let q = quasi_orders(&three_element());
        // ca = a
        assert!(q.left_mul.contains(0, 2));
        for r in [&q.left_add, &q.right_add, &q.left_mul, &q.right_mul] {
            assert!(r.is_reflexive() && r.is_transitive());
        }
        assert!(q.add.is_antisymmetric() && q.mul.is_antisymmetric());
    }

    #[test]
    fn partition_algebra() {
        let p = Partition::from_labels(&[5, 5, 2, 9]);
        assert_eq!(p.labels(), &[0, 0, 1, 2]);
        let q = Partition::from_blocks(4, &[vec![0], vec![1, 2], vec![3]]).unwrap();
        assert_eq!(p.meet(&q), Partition::equality(4));
        assert_eq!(p.join(&q).blocks(), vec![vec![0, 1, 2], vec![3]]);
        assert!(Partition::equality(4).refines(&p));
        assert!(p.refines(&Partition::universal(4)));
        assert!(!p.refines(&q));
        assert!(Partition::from_blocks(3, &[vec![0, 1]]).is_err());
        assert_eq!(p.to_string(), "{{0,1},{2},{3}}");
    }

    #[test]
    fn relation_closure() {
        let mut r = BinRelation::identity(3);
        r.insert(0, 1);
        r.insert(1, 2);
        assert!(!r.is_transitive());
        let c = r.transitive_closure();
        assert!(c.contains(0, 2) && c.is_transitive());
        assert!(r.to_partition().is_none());
    }
}
