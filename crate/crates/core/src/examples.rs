//! Small named semirings used throughout tests and documentation.

use crate::table::SemiringTable;

fn named(names: &[&str], add: &[&[usize]], mul: &[&[usize]]) -> SemiringTable {
    let add: Vec<usize> = add.concat();
    let mul: Vec<usize> = mul.concat();
    SemiringTable::with_names(names.iter().map(|s| s.to_string()).collect(), add, mul).expect("well-formed example")
}

/// Three-element idempotent semiring on `{a, b, c}` on which σ is not transitive.
pub fn three_element() -> SemiringTable {
    named(&["a", "b", "c"], &[&[0, 1, 2], &[1, 1, 1], &[2, 1, 2]], &[&[0, 0, 0], &[1, 1, 1], &[0, 1, 2]])
}

/// The two-element distributive lattice `{0, 1}` with `+` = join and `·` = meet.
pub fn two_lattice() -> SemiringTable {
    chain(2)
}

/// The chain `0 < 1 < … < n-1` with `+` = max and `·` = min.
pub fn chain(n: usize) -> SemiringTable {
    let add = (0..n).flat_map(|a| (0..n).map(move |b| a.max(b))).collect();
    let mul = (0..n).flat_map(|a| (0..n).map(move |b| a.min(b))).collect();
    let names = (0..n).map(|i| i.to_string()).collect();
    SemiringTable::with_names(names, add, mul).expect("chain")
}

/// Two elements, `+` = join on `0 < 1`, `·` left zero (`xy = x`).
pub fn left_zero_join() -> SemiringTable {
    named(&["0", "1"], &[&[0, 1], &[1, 1]], &[&[0, 0], &[1, 1]])
}

/// Two elements, `+` = join on `0 < 1`, `·` right zero (`xy = y`).
pub fn right_zero_join() -> SemiringTable {
    named(&["0", "1"], &[&[0, 1], &[1, 1]], &[&[0, 1], &[0, 1]])
}
