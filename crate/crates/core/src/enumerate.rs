//! Exhaustive generation of idempotent semirings of a fixed order.
//!
//! The `+` table is filled first (every complete `+` table is a band), then
//! the `·` table. Cells are assigned in row-major order with the diagonal
//! fixed by idempotency; after each assignment every associativity and
//! distributivity instance whose lookups are all defined is re-checked.

use std::collections::BTreeSet;
use std::ops::ControlFlow;
use std::time::{Duration, Instant};

use crate::error::{Error, Result};
use crate::structure::{malcev_membership, ClassExpr};
use crate::table::{Elem, SemiringTable};

const UNSET: usize = usize::MAX;

/// Largest order the enumerator accepts.
pub const MAX_ENUM_ORDER: usize = 5;

#[derive(Clone, Debug)]
pub struct EnumConfig {
    pub order: usize,
    /// Yield one canonical representative per isomorphism class.
    pub up_to_iso: bool,
    pub filter: Option<ClassExpr>,
    /// Search nodes (cell assignments tried) before giving up.
    pub max_nodes: u64,
    pub max_duration: Duration,
}

impl EnumConfig {
    pub fn new(order: usize) -> EnumConfig {
        EnumConfig {
            order,
            up_to_iso: false,
            filter: None,
            max_nodes: 10_000_000,
            max_duration: Duration::from_secs(30 * 60),
        }
    }

    pub fn up_to_iso(mut self, yes: bool) -> Self {
        self.up_to_iso = yes;
        self
    }

    pub fn filter(mut self, expr: ClassExpr) -> Self {
        self.filter = Some(expr);
        self
    }

    pub fn max_nodes(mut self, nodes: u64) -> Self {
        self.max_nodes = nodes;
        self
    }

    pub fn max_duration(mut self, d: Duration) -> Self {
        self.max_duration = d;
        self
    }

    fn check(&self) -> Result<()> {
        if self.order == 0 {
            return Err(Error::Precondition("order must be at least 1".into()));
        }
        if self.order > MAX_ENUM_ORDER {
            return Err(Error::Resource(format!(
                "enumeration of order {} exceeds the supported maximum {MAX_ENUM_ORDER}",
                self.order
            )));
        }
        if self.max_nodes == 0 || self.max_duration.is_zero() {
            return Err(Error::Precondition("budget must be positive".into()));
        }
        Ok(())
    }
}

/// Output of [`enumerate_idempotent_semirings`].
#[derive(Clone, Debug)]
pub struct Enumeration {
    pub semirings: Vec<SemiringTable>,
    /// False when the budget ran out; the list is then partial.
    pub complete: bool,
    pub nodes: u64,
}

struct Search<'a, F> {
    n: usize,
    add: Vec<Elem>,
    mul: Vec<Elem>,
    nodes: u64,
    max_nodes: u64,
    deadline: Instant,
    exhausted: bool,
    visit: &'a mut F,
}

impl<F: FnMut(&SemiringTable) -> ControlFlow<()>> Search<'_, F> {
    #[inline]
    fn get(table: &[Elem], n: usize, a: Elem, b: Elem) -> Option<Elem> {
        let v = table[a * n + b];
        (v != UNSET).then_some(v)
    }

    fn assoc_ok(table: &[Elem], n: usize) -> bool {
        for x in 0..n {
            for y in 0..n {
                let Some(xy) = Self::get(table, n, x, y) else { continue };
                for z in 0..n {
                    let Some(l) = Self::get(table, n, xy, z) else { continue };
                    let Some(yz) = Self::get(table, n, y, z) else { continue };
                    let Some(r) = Self::get(table, n, x, yz) else { continue };
                    if l != r {
                        return false;
                    }
                }
            }
        }
        true
    }

    /// Distributivity instances touching the freshly set `·` cell `(i, j)`.
    fn distrib_ok(&self, i: Elem, j: Elem) -> bool {
        let n = self.n;
        let (add, mul) = (&self.add, &self.mul);
        let m = |a, b| Self::get(mul, n, a, b);
        let s = |a: Elem, b: Elem| add[a * n + b];
        for x in 0..n {
            for y in 0..n {
                for z in 0..n {
                    // x(y+z) = xy + xz
                    if x == i && (s(y, z) == j || y == j || z == j) {
                        if let (Some(l), Some(a), Some(b)) = (m(x, s(y, z)), m(x, y), m(x, z)) {
                            if l != s(a, b) {
                                return false;
                            }
                        }
                    }
                    // (x+y)z = xz + yz
                    if z == j && (s(x, y) == i || x == i || y == i) {
                        if let (Some(l), Some(a), Some(b)) = (m(s(x, y), z), m(x, z), m(y, z)) {
                            if l != s(a, b) {
                                return false;
                            }
                        }
                    }
                }
            }
        }
        true
    }

    fn out_of_budget(&mut self) -> bool {
        if self.nodes >= self.max_nodes || (self.nodes.is_multiple_of(4096) && Instant::now() >= self.deadline) {
            self.exhausted = true;
        }
        self.exhausted
    }

    /// Cells `0..n²` are `+` cells, `n²..2n²` are `·` cells.
    fn run(&mut self, cell: usize) -> ControlFlow<()> {
        let n = self.n;
        if cell == 2 * n * n {
            let t = SemiringTable::new(n, self.add.clone(), self.mul.clone()).expect("complete table");
            debug_assert!(t.is_idempotent_semiring());
            return (self.visit)(&t);
        }
        let (is_mul, idx) = if cell < n * n { (false, cell) } else { (true, cell - n * n) };
        let (i, j) = (idx / n, idx % n);
        if i == j {
            return self.run(cell + 1);
        }
        for v in 0..n {
            self.nodes += 1;
            if self.out_of_budget() {
                return ControlFlow::Break(());
            }
            let ok = if is_mul {
                self.mul[idx] = v;
                Self::assoc_ok(&self.mul, n) && self.distrib_ok(i, j)
            } else {
                self.add[idx] = v;
                Self::assoc_ok(&self.add, n)
            };
            if ok {
                self.run(cell + 1)?;
            }
        }
        if is_mul {
            self.mul[idx] = UNSET;
        } else {
            self.add[idx] = UNSET;
        }
        ControlFlow::Continue(())
    }
}

/// Visits every labeled idempotent semiring of order `n` in search order.
///
/// Returns `(complete, nodes)`; the visitor can stop the search early by
/// breaking, which also reports `complete = false`.
pub fn for_each_labeled(
    cfg: &EnumConfig,
    mut visit: impl FnMut(&SemiringTable) -> ControlFlow<()>,
) -> Result<(bool, u64)> {
    cfg.check()?;
    let n = cfg.order;
    let mut add = vec![UNSET; n * n];
    let mut mul = vec![UNSET; n * n];
    for a in 0..n {
        add[a * n + a] = a;
        mul[a * n + a] = a;
    }
    let mut search = Search {
        n,
        add,
        mul,
        nodes: 0,
        max_nodes: cfg.max_nodes,
        deadline: Instant::now() + cfg.max_duration,
        exhausted: false,
        visit: &mut visit,
    };
    let flow = search.run(0);
    Ok((flow.is_continue() && !search.exhausted, search.nodes))
}

/// All idempotent semirings of `cfg.order`, labeled or one per isomorphism class.
///
/// Labeled results come in search order; isomorphism representatives are
/// canonical forms sorted by their tables.
pub fn enumerate_idempotent_semirings(cfg: &EnumConfig) -> Result<Enumeration> {
    let mut semirings = Vec::new();
    let mut reps: BTreeSet<(Vec<Elem>, Vec<Elem>)> = BTreeSet::new();
    let mut failure = None;
    let (complete, nodes) = for_each_labeled(cfg, |t| {
        if cfg.up_to_iso {
            let c = canonical_form(t);
            reps.insert((c.add_table().to_vec(), c.mul_table().to_vec()));
        } else {
            semirings.push(t.clone());
        }
        ControlFlow::Continue(())
    })?;
    if cfg.up_to_iso {
        semirings =
            reps.into_iter().map(|(a, m)| SemiringTable::new(cfg.order, a, m).expect("canonical table")).collect();
    }
    if let Some(expr) = &cfg.filter {
        let mut kept = Vec::new();
        for t in semirings {
            match malcev_membership(&t, expr) {
                Ok(r) if r.member => kept.push(t),
                Ok(_) => {}
                Err(e) => {
                    failure = Some(e);
                    break;
                }
            }
        }
        semirings = kept;
    }
    if let Some(e) = failure {
        return Err(e);
    }
    Ok(Enumeration { semirings, complete, nodes })
}

/// Lexicographically least `(+, ·)` table pair over all relabelings.
///
/// Names of the result are the defaults `e0..e{n-1}`.
pub fn canonical_form(t: &SemiringTable) -> SemiringTable {
    let n = t.order();
    let mut best: Option<(Vec<Elem>, Vec<Elem>)> = None;
    for_each_permutation(n, |perm| {
        let p = t.permuted(perm);
        let key = (p.add_table().to_vec(), p.mul_table().to_vec());
        if best.as_ref().is_none_or(|b| key < *b) {
            best = Some(key);
        }
    });
    let (add, mul) = best.expect("at least one permutation");
    SemiringTable::new(n, add, mul).expect("canonical table")
}

/// Number of relabelings fixing both tables.
pub fn automorphism_count(t: &SemiringTable) -> usize {
    let mut count = 0;
    for_each_permutation(t.order(), |perm| {
        let p = t.permuted(perm);
        if p.add_table() == t.add_table() && p.mul_table() == t.mul_table() {
            count += 1;
        }
    });
    count
}

/// Calls `f` on every permutation of `0..n` in lexicographic order.
pub fn for_each_permutation(n: usize, mut f: impl FnMut(&[usize])) {
    let mut perm: Vec<usize> = (0..n).collect();
    loop {
        f(&perm);
        let Some(i) = (1..n).rev().find(|&i| perm[i - 1] < perm[i]) else {
            return;
        };
        let j = (i..n).rev().find(|&j| perm[j] > perm[i - 1]).expect("successor exists");
        perm.swap(i - 1, j);
        perm[i..].reverse();
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::examples::{left_zero_join, right_zero_join, three_element};
    use crate::structure::is_isomorphic;

    #[test]
    fn order_one() {
        let e = enumerate_idempotent_semirings(&EnumConfig::new(1)).unwrap();
        assert!(e.complete);
        assert_eq!(e.semirings.len(), 1);
    }

    #[test]
    fn canonical_form_examples() {
        let one = SemiringTable::trivial();
        assert_eq!(canonical_form(&one), one);
        let t = three_element();
        let c = canonical_form(&t);
        for_each_permutation(3, |p| assert_eq!(canonical_form(&t.permuted(p)), c));
        assert_ne!(canonical_form(&left_zero_join()), canonical_form(&right_zero_join()));
    }

    #[test]
    fn budget_exhaustion_is_reported() {
        let e = enumerate_idempotent_semirings(&EnumConfig::new(3).max_nodes(10)).unwrap();
        assert!(!e.complete);
        assert!(EnumConfig::new(0).check().is_err());
        assert!(EnumConfig::new(6).check().is_err());
    }

    #[test]
    fn yielded_tables_are_distinct_and_valid() {
        let e = enumerate_idempotent_semirings(&EnumConfig::new(3)).unwrap();
        let set: std::collections::HashSet<_> =
            e.semirings.iter().map(|t| (t.add_table().to_vec(), t.mul_table().to_vec())).collect();
        assert_eq!(set.len(), e.semirings.len());
        assert!(e.semirings.iter().all(|t| t.validate().is_idempotent_semiring));
        assert!(e.semirings.iter().any(|t| is_isomorphic(t, &three_element()).is_some()));
    }

    #[test]
    fn automorphisms() {
        assert_eq!(automorphism_count(&three_element()), 1);
        assert_eq!(automorphism_count(&SemiringTable::trivial()), 1);
    }
}
