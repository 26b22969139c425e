//! Finite two-operation algebras given by Cayley tables.

use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};

/// An element of a finite algebra, identified by its 0-based index.
pub type Elem = usize;

/// A finite algebra `(S, +, ·)` of order `n` given by two `n × n` tables.
///
/// Row index is the left operand. Construction only checks that the tables
/// are square and in range; the semiring axioms are checked explicitly with
/// [`SemiringTable::validate`].
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct SemiringTable {
    order: usize,
    names: Vec<String>,
    add: Vec<Elem>,
    mul: Vec<Elem>,
}

impl SemiringTable {
    /// Builds a table with default names `e0..e{n-1}`.
    pub fn new(order: usize, add: Vec<Elem>, mul: Vec<Elem>) -> Result<Self> {
        let names = default_names(order);
        Self::with_names(names, add, mul)
    }

    pub fn with_names(names: Vec<String>, add: Vec<Elem>, mul: Vec<Elem>) -> Result<Self> {
        let order = names.len();
        if order == 0 {
            return Err(Error::Structure("order must be positive".into()));
        }
        for (label, table) in [("+", &add), ("·", &mul)] {
            if table.len() != order * order {
                return Err(Error::Structure(format!(
                    "{label} table has {} entries, expected {}",
                    table.len(),
                    order * order
                )));
            }
            if let Some(bad) = table.iter().find(|&&v| v >= order) {
                return Err(Error::Structure(format!("{label} table entry {bad} out of range for order {order}")));
            }
        }
        let mut sorted = names.clone();
        sorted.sort();
        sorted.dedup();
        if sorted.len() != order {
            return Err(Error::Structure("element names must be distinct".into()));
        }
        if names.iter().any(|n| n.is_empty() || n.chars().any(char::is_whitespace)) {
            return Err(Error::Structure("element names must be non-empty and contain no whitespace".into()));
        }
        Ok(SemiringTable { order, names, add, mul })
    }

    /// Builds a table from row-major nested vectors.
    pub fn from_rows(add: &[Vec<Elem>], mul: &[Vec<Elem>]) -> Result<Self> {
        let n = add.len();
        if mul.len() != n || add.iter().chain(mul).any(|r| r.len() != n) {
            return Err(Error::Structure("tables must be square and of equal order".into()));
        }
        Self::new(n, add.concat(), mul.concat())
    }

    /// The one-element algebra.
    pub fn trivial() -> Self {
        SemiringTable::new(1, vec![0], vec![0]).expect("trivial table")
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn name(&self, a: Elem) -> &str {
        &self.names[a]
    }

    pub fn index_of(&self, name: &str) -> Option<Elem> {
        self.names.iter().position(|n| n == name)
    }

    #[inline]
    pub fn add(&self, a: Elem, b: Elem) -> Elem {
        self.add[a * self.order + b]
    }

    #[inline]
    pub fn mul(&self, a: Elem, b: Elem) -> Elem {
        self.mul[a * self.order + b]
    }

    /// Row-major `+` table.
    pub fn add_table(&self) -> &[Elem] {
        &self.add
    }

    /// Row-major `·` table.
    pub fn mul_table(&self) -> &[Elem] {
        &self.mul
    }

    pub fn elements(&self) -> std::ops::Range<Elem> {
        0..self.order
    }

    /// Same tables with new display names.
    pub fn renamed(&self, names: Vec<String>) -> Result<Self> {
        Self::with_names(names, self.add.clone(), self.mul.clone())
    }

    /// The image of this table under the relabeling `a ↦ perm[a]`.
    pub fn permuted(&self, perm: &[Elem]) -> SemiringTable {
        let n = self.order;
        debug_assert_eq!(perm.len(), n);
        let mut add = vec![0; n * n];
        let mut mul = vec![0; n * n];
        let mut names = vec![String::new(); n];
        for a in 0..n {
            names[perm[a]] = self.names[a].clone();
            for b in 0..n {
                add[perm[a] * n + perm[b]] = perm[self.add(a, b)];
                mul[perm[a] * n + perm[b]] = perm[self.mul(a, b)];
            }
        }
        SemiringTable { order: n, names, add, mul }
    }

    /// The subalgebra on `elems` if it is closed under both operations.
    ///
    /// Elements of the result are numbered in the order given.
    pub fn subalgebra(&self, elems: &[Elem]) -> Option<SemiringTable> {
        let k = elems.len();
        let mut local = vec![usize::MAX; self.order];
        for (i, &e) in elems.iter().enumerate() {
            local[e] = i;
        }
        let mut add = Vec::with_capacity(k * k);
        let mut mul = Vec::with_capacity(k * k);
        for &a in elems {
            for &b in elems {
                let s = local[self.add(a, b)];
                let p = local[self.mul(a, b)];
                if s == usize::MAX || p == usize::MAX {
                    return None;
                }
                add.push(s);
                mul.push(p);
            }
        }
        let names = elems.iter().map(|&e| self.names[e].clone()).collect();
        Some(SemiringTable { order: k, names, add, mul })
    }

    /// Exhaustively checks the semiring axioms.
    pub fn validate(&self) -> ValidationReport {
        validate_semiring(self)
    }

    pub fn is_idempotent_semiring(&self) -> bool {
        let n = self.order;
        (0..n).all(|a| self.add(a, a) == a && self.mul(a, a) == a) && self.is_semiring()
    }

    /// Early-exit semiring check (no witness collection).
    pub fn is_semiring(&self) -> bool {
        let n = self.order;
        for x in 0..n {
            for y in 0..n {
                for z in 0..n {
                    let (xy_a, yz_a) = (self.add(x, y), self.add(y, z));
                    if self.add(xy_a, z) != self.add(x, yz_a) {
                        return false;
                    }
                    let (xy_m, yz_m) = (self.mul(x, y), self.mul(y, z));
                    if self.mul(xy_m, z) != self.mul(x, yz_m) {
                        return false;
                    }
                    if self.mul(x, yz_a) != self.add(self.mul(x, y), self.mul(x, z)) {
                        return false;
                    }
                    if self.mul(xy_a, z) != self.add(self.mul(x, z), self.mul(y, z)) {
                        return false;
                    }
                }
            }
        }
        true
    }

    /// Renders the table in the semiring text format.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let n = self.order;
        out.push_str(&format!("{n}\n"));
        out.push_str(&self.names.join(" "));
        out.push('\n');
        for table in [&self.add, &self.mul] {
            for a in 0..n {
                let row: Vec<&str> = (0..n).map(|b| self.names[table[a * n + b]].as_str()).collect();
                out.push_str(&row.join(" "));
                out.push('\n');
            }
            if std::ptr::eq(table, &self.add) {
                out.push('\n');
            }
        }
        out
    }

    /// Parses the semiring text format.
    ///
    /// ```text
    /// 3
    /// a b c
    /// a b c
    /// b b b
    /// c b c
    ///
    /// a a a
    /// b b b
    /// a b c
    /// ```
    ///
    /// The names line may be omitted, in which case elements are `e0..e{n-1}`.
    pub fn parse(text: &str) -> Result<Self> {
        let lines: Vec<&str> = text.lines().map(str::trim).collect();
        let mut it = lines.iter().enumerate().skip_while(|(_, l)| l.is_empty());
        let (_, first) = it.next().ok_or_else(|| Error::Parse("empty input".into()))?;
        let n: usize = first.parse().map_err(|_| Error::Parse(format!("expected order on line 1, found {first:?}")))?;
        if n == 0 {
            return Err(Error::Parse("order must be positive".into()));
        }
        let rest: Vec<(usize, &str)> = it.map(|(i, l)| (i + 1, *l)).collect();
        let split = rest
            .iter()
            .position(|(_, l)| l.is_empty())
            .ok_or_else(|| Error::Parse("missing blank line between + and · tables".into()))?;
        let head = &rest[..split];
        let tail: Vec<(usize, &str)> = rest[split..].iter().copied().skip_while(|(_, l)| l.is_empty()).collect();
        let tail_len = tail.iter().rposition(|(_, l)| !l.is_empty()).map_or(0, |p| p + 1);
        let tail = &tail[..tail_len];

        let (names, add_rows) = match head.len() {
            len if len == n + 1 => {
                let names: Vec<String> = head[0].1.split_whitespace().map(String::from).collect();
                if names.len() != n {
                    return Err(Error::Parse(format!("line {}: expected {n} names, found {}", head[0].0, names.len())));
                }
                (names, &head[1..])
            }
            len if len == n => (default_names(n), head),
            len => {
                return Err(Error::Parse(format!(
                    "expected {n} rows for the + table (optionally preceded by names), found {len} lines"
                )))
            }
        };
        if tail.len() != n {
            return Err(Error::Parse(format!("expected {n} rows for the · table, found {}", tail.len())));
        }
        let lookup = |line: usize, tok: &str| -> Result<Elem> {
            names
                .iter()
                .position(|x| x == tok)
                .ok_or_else(|| Error::Parse(format!("line {line}: unknown element {tok:?}")))
        };
        let read = |rows: &[(usize, &str)]| -> Result<Vec<Elem>> {
            let mut out = Vec::with_capacity(n * n);
            for &(line, row) in rows {
                let toks: Vec<&str> = row.split_whitespace().collect();
                if toks.len() != n {
                    return Err(Error::Parse(format!("line {line}: expected {n} entries, found {}", toks.len())));
                }
                for tok in toks {
                    out.push(lookup(line, tok)?);
                }
            }
            Ok(out)
        };
        let add = read(add_rows)?;
        let mul = read(tail)?;
        SemiringTable::with_names(names, add, mul).map_err(|e| Error::Parse(e.to_string()))
    }
}

impl fmt::Display for SemiringTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

pub(crate) fn default_names(n: usize) -> Vec<String> {
    (0..n).map(|i| format!("e{i}")).collect()
}

/// Semiring axioms checked by [`validate_semiring`].
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Axiom {
    AddAssociative,
    MulAssociative,
    LeftDistributive,
    RightDistributive,
    AddIdempotent,
    MulIdempotent,
}

impl Axiom {
    pub fn name(self) -> &'static str {
        match self {
            Axiom::AddAssociative => "add_associative",
            Axiom::MulAssociative => "mul_associative",
            Axiom::LeftDistributive => "left_distributive",
            Axiom::RightDistributive => "right_distributive",
            Axiom::AddIdempotent => "add_idempotent",
            Axiom::MulIdempotent => "mul_idempotent",
        }
    }

    fn is_semiring_axiom(self) -> bool {
        !matches!(self, Axiom::AddIdempotent | Axiom::MulIdempotent)
    }
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct Violation {
    pub axiom: Axiom,
    pub witness: Vec<Elem>,
}

/// Result of an exhaustive axiom check.
///
/// Each violated axiom is reported once, with its lexicographically first
/// failing tuple.
#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct ValidationReport {
    pub is_semiring: bool,
    pub is_idempotent_semiring: bool,
    pub violations: Vec<Violation>,
}

pub fn validate_semiring(t: &SemiringTable) -> ValidationReport {
    let n = t.order();
    let mut violations = Vec::new();
    let mut first = |axiom: Axiom, found: Option<Vec<Elem>>| {
        if let Some(witness) = found {
            violations.push(Violation { axiom, witness });
        }
    };
    let triples = || (0..n).flat_map(move |x| (0..n).flat_map(move |y| (0..n).map(move |z| (x, y, z))));
    first(
        Axiom::AddAssociative,
        triples().find(|&(x, y, z)| t.add(t.add(x, y), z) != t.add(x, t.add(y, z))).map(|(x, y, z)| vec![x, y, z]),
    );
    first(
        Axiom::MulAssociative,
        triples().find(|&(x, y, z)| t.mul(t.mul(x, y), z) != t.mul(x, t.mul(y, z))).map(|(x, y, z)| vec![x, y, z]),
    );
    first(
        Axiom::LeftDistributive,
        triples()
            .find(|&(x, y, z)| t.mul(x, t.add(y, z)) != t.add(t.mul(x, y), t.mul(x, z)))
            .map(|(x, y, z)| vec![x, y, z]),
    );
    first(
        Axiom::RightDistributive,
        triples()
            .find(|&(x, y, z)| t.mul(t.add(x, y), z) != t.add(t.mul(x, z), t.mul(y, z)))
            .map(|(x, y, z)| vec![x, y, z]),
    );
    first(Axiom::AddIdempotent, (0..n).find(|&x| t.add(x, x) != x).map(|x| vec![x]));
    first(Axiom::MulIdempotent, (0..n).find(|&x| t.mul(x, x) != x).map(|x| vec![x]));
    let is_semiring = violations.iter().all(|v| !v.axiom.is_semiring_axiom());
    let is_idempotent_semiring = violations.is_empty();
    ValidationReport { is_semiring, is_idempotent_semiring, violations }
}

/// Checks `t` and returns it unchanged if it is an idempotent semiring.
pub fn require_idempotent(t: &SemiringTable) -> Result<()> {
    let report = t.validate();
    if report.is_idempotent_semiring {
        Ok(())
    } else {
        let v = &report.violations[0];
        let witness: Vec<&str> = v.witness.iter().map(|&e| t.name(e)).collect();
        Err(Error::NotIdempotentSemiring(format!("{} fails at ({})", v.axiom.name(), witness.join(", "))))
    }
}
