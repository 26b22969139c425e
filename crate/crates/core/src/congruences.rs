//! Congruences, σ, σ* and the least distributive lattice congruence η.

use std::collections::BTreeSet;

use crate::error::{Error, Result};
use crate::relations::{BinRelation, Partition, UnionFind};
use crate::structure::{is_distributive_lattice, quotient};
use crate::table::{Elem, SemiringTable};

/// Default largest order for which the full congruence lattice is computed.
pub const DEFAULT_CONGRUENCE_BOUND: usize = 8;

pub fn is_congruence(t: &SemiringTable, p: &Partition) -> Result<bool> {
    if p.order() != t.order() {
        return Err(Error::Precondition(format!("partition of order {} on algebra of order {}", p.order(), t.order())));
    }
    let n = t.order();
    for a in 0..n {
        for b in a + 1..n {
            if !p.related(a, b) {
                continue;
            }
            for c in 0..n {
                if !p.related(t.add(a, c), t.add(b, c))
                    || !p.related(t.add(c, a), t.add(c, b))
                    || !p.related(t.mul(a, c), t.mul(b, c))
                    || !p.related(t.mul(c, a), t.mul(c, b))
                {
                    return Ok(false);
                }
            }
        }
    }
    Ok(true)
}

/// Least congruence containing every pair of `seed`.
///
/// Union-find with a queue of merged pairs; each merge enqueues the four
/// one-sided translates of the merged pair.
pub fn congruence_closure(t: &SemiringTable, seed: &BinRelation) -> Partition {
    let pairs: Vec<(Elem, Elem)> = seed.pairs().collect();
    closure_of_pairs(t, &pairs)
}

pub(crate) fn closure_of_pairs(t: &SemiringTable, seed: &[(Elem, Elem)]) -> Partition {
    let n = t.order();
    let mut uf = UnionFind::new(n);
    let mut queue: Vec<(Elem, Elem)> = Vec::new();
    for &(a, b) in seed {
        if uf.union(a, b) {
            queue.push((a, b));
        }
    }
    // The merged pairs generate the current equivalence, so translating
    // only those reaches the same fixpoint as translating every related pair.
    while let Some((a, b)) = queue.pop() {
        for c in 0..n {
            for (x, y) in [
                (t.add(a, c), t.add(b, c)),
                (t.add(c, a), t.add(c, b)),
                (t.mul(a, c), t.mul(b, c)),
                (t.mul(c, a), t.mul(c, b)),
            ] {
                if uf.union(x, y) {
                    queue.push((x, y));
                }
            }
        }
    }
    uf.to_partition()
}

/// `a σ b ⟺ aba = aba+a+aba ∧ bab = bab+b+bab`.
pub fn sigma(t: &SemiringTable) -> BinRelation {
    let half = |a: Elem, b: Elem| {
        let aba = t.mul(t.mul(a, b), a);
        t.add(t.add(aba, a), aba) == aba
    };
    BinRelation::from_fn(t.order(), |a, b| half(a, b) && half(b, a))
}

/// A witness `x` for `a σ* b`, i.e. `axbxa = axbxa+a+axbxa` and
/// `bxaxb = bxaxb+b+bxaxb`.
pub fn sigma_star_witness(t: &SemiringTable, a: Elem, b: Elem) -> Option<Elem> {
    let half = |a: Elem, b: Elem, x: Elem| {
        let ax = t.mul(a, x);
        let axbxa = t.mul(t.mul(t.mul(ax, b), x), a);
        t.add(t.add(axbxa, a), axbxa) == axbxa
    };
    t.elements().find(|&x| half(a, b, x) && half(b, a, x))
}

pub fn sigma_star(t: &SemiringTable) -> BinRelation {
    BinRelation::from_fn(t.order(), |a, b| sigma_star_witness(t, a, b).is_some())
}

/// Route used by [`least_dl_congruence`].
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub enum EtaMethod {
    /// Meet of every congruence with a distributive lattice quotient.
    MeetOracle,
    /// Congruence generated by σ.
    SigmaClosure,
    /// The equivalence σ*.
    SigmaStar,
}

impl EtaMethod {
    pub const ALL: [EtaMethod; 3] = [EtaMethod::MeetOracle, EtaMethod::SigmaClosure, EtaMethod::SigmaStar];

    pub fn name(self) -> &'static str {
        match self {
            EtaMethod::MeetOracle => "meet_oracle",
            EtaMethod::SigmaClosure => "sigma_closure",
            EtaMethod::SigmaStar => "sigma_star",
        }
    }
}

/// The least distributive lattice congruence η.
pub fn least_dl_congruence(t: &SemiringTable, method: EtaMethod) -> Result<Partition> {
    match method {
        EtaMethod::MeetOracle => {
            let set = all_congruences(t)?;
            Ok(set
                .entries
                .iter()
                .filter(|c| c.quotient_is_distributive_lattice)
                .fold(Partition::universal(t.order()), |acc, c| acc.meet(&c.partition)))
        }
        EtaMethod::SigmaClosure => Ok(congruence_closure(t, &sigma(t))),
        EtaMethod::SigmaStar => {
            sigma_star(t).to_partition().ok_or_else(|| Error::Consistency("σ* is not an equivalence relation".into()))
        }
    }
}

/// η via the σ closure (no enumeration of congruences needed).
pub fn eta(t: &SemiringTable) -> Partition {
    congruence_closure(t, &sigma(t))
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct CongruenceEntry {
    pub partition: Partition,
    pub quotient_is_distributive_lattice: bool,
}

/// Every congruence of a finite algebra, sorted by canonical labels.
///
/// The universal congruence comes first and the equality last.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct CongruenceSet {
    pub entries: Vec<CongruenceEntry>,
}

impl CongruenceSet {
    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn contains(&self, p: &Partition) -> bool {
        self.entries.iter().any(|e| &e.partition == p)
    }

    pub fn partitions(&self) -> impl Iterator<Item = &Partition> {
        self.entries.iter().map(|e| &e.partition)
    }
}

pub fn all_congruences(t: &SemiringTable) -> Result<CongruenceSet> {
    all_congruences_bounded(t, DEFAULT_CONGRUENCE_BOUND)
}

/// Principal congruences closed under joins.
pub fn all_congruences_bounded(t: &SemiringTable, bound: usize) -> Result<CongruenceSet> {
    let n = t.order();
    if n > bound {
        return Err(Error::Resource(format!("congruence lattice of order {n} exceeds bound {bound}")));
    }
    let mut found: BTreeSet<Partition> = BTreeSet::new();
    found.insert(Partition::equality(n));
    let mut principal = Vec::new();
    for a in 0..n {
        for b in a + 1..n {
            let p = closure_of_pairs(t, &[(a, b)]);
            if found.insert(p.clone()) {
                principal.push(p);
            }
        }
    }
    // Every congruence is a join of principal ones; join new elements with
    // the principals until nothing new appears.
    let mut frontier: Vec<Partition> = principal.clone();
    while !frontier.is_empty() {
        let mut next = Vec::new();
        for p in &frontier {
            for q in &principal {
                let j = p.join(q);
                if found.insert(j.clone()) {
                    next.push(j);
                }
            }
        }
        frontier = next;
    }
    let entries = found
        .into_iter()
        .map(|partition| {
            let (q, _) = quotient(t, &partition).expect("closure yields a congruence");
            CongruenceEntry { quotient_is_distributive_lattice: is_distributive_lattice(&q), partition }
        })
        .collect();
    Ok(CongruenceSet { entries })
}
