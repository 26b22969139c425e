//! Quotients, Malcev products, spined products and isomorphism.

use std::fmt;

use crate::congruences::{all_congruences, eta, is_congruence};
use crate::error::{Error, Result};
use crate::relations::{green_mult, Partition};
use crate::table::{Elem, SemiringTable};
use crate::varieties::{catalog, variety, VarietySpec};

/// The quotient `t/c` and the projection `t → t/c`.
///
/// Block `i` of `c` becomes element `i`; operations are computed on the least
/// element of each block and checked against every other representative.
pub fn quotient(t: &SemiringTable, c: &Partition) -> Result<(SemiringTable, Vec<Elem>)> {
    if !is_congruence(t, c)? {
        return Err(Error::Precondition(format!("{c} is not a congruence")));
    }
    let blocks = c.blocks();
    let k = blocks.len();
    let mut add = vec![0; k * k];
    let mut mul = vec![0; k * k];
    for (i, bi) in blocks.iter().enumerate() {
        for (j, bj) in blocks.iter().enumerate() {
            let s = c.block_of(t.add(bi[0], bj[0]));
            let p = c.block_of(t.mul(bi[0], bj[0]));
            for &x in bi {
                for &y in bj {
                    if c.block_of(t.add(x, y)) != s || c.block_of(t.mul(x, y)) != p {
                        return Err(Error::Consistency(format!(
                            "quotient operation on {c} depends on representatives"
                        )));
                    }
                }
            }
            add[i * k + j] = s;
            mul[i * k + j] = p;
        }
    }
    let names = blocks
        .iter()
        .map(|b| match b.as_slice() {
            [single] => t.name(*single).to_string(),
            _ => {
                let parts: Vec<&str> = b.iter().map(|&e| t.name(e)).collect();
                format!("{{{}}}", parts.join(","))
            }
        })
        .collect();
    let q = SemiringTable::with_names(names, add, mul)?;
    Ok((q, c.labels().to_vec()))
}

/// `+` and `·` commutative and `x + xy ≈ x`.
pub fn is_distributive_lattice(t: &SemiringTable) -> bool {
    let n = t.order();
    let lattice = (0..n).all(|a| {
        (0..n).all(|b| t.add(a, b) == t.add(b, a) && t.mul(a, b) == t.mul(b, a) && t.add(a, t.mul(a, b)) == a)
    });
    if lattice && t.is_semiring() {
        debug_assert!((0..n).all(|a| (0..n).all(|b| t.mul(a, t.add(a, b)) == a)));
    }
    lattice
}

/// `map` preserves both operations.
pub fn is_homomorphism(src: &SemiringTable, dst: &SemiringTable, map: &[Elem]) -> bool {
    let n = src.order();
    map.len() == n
        && map.iter().all(|&m| m < dst.order())
        && (0..n).all(|a| {
            (0..n)
                .all(|b| map[src.add(a, b)] == dst.add(map[a], map[b]) && map[src.mul(a, b)] == dst.mul(map[a], map[b]))
        })
}

fn is_surjective(map: &[Elem], order: usize) -> bool {
    let mut hit = vec![false; order];
    for &m in map {
        if m < order {
            hit[m] = true;
        }
    }
    hit.into_iter().all(|h| h)
}

/// A class of idempotent semirings: a variety, or a Malcev product `V ∘ W`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub enum ClassExpr {
    Named(VarietySpec),
    Malcev(Box<ClassExpr>, Box<ClassExpr>),
}

impl ClassExpr {
    pub fn named(v: VarietySpec) -> ClassExpr {
        ClassExpr::Named(v)
    }

    pub fn malcev(left: ClassExpr, right: ClassExpr) -> ClassExpr {
        ClassExpr::Malcev(Box::new(left), Box::new(right))
    }

    /// Parses `NAME`, `A o B` or `A ∘ B` with parentheses; `o` is
    /// right-associative.
    pub fn parse(src: &str) -> Result<ClassExpr> {
        let normalized = src.replace('∘', " o ").replace('(', " ( ").replace(')', " ) ");
        let tokens: Vec<&str> = normalized.split_whitespace().collect();
        let mut pos = 0;
        let expr = parse_class(&tokens, &mut pos)?;
        if pos != tokens.len() {
            return Err(Error::Parse(format!("trailing input in class expression {src:?}")));
        }
        Ok(expr)
    }
}

fn parse_class(tokens: &[&str], pos: &mut usize) -> Result<ClassExpr> {
    let left = match tokens.get(*pos) {
        Some(&"(") => {
            *pos += 1;
            let e = parse_class(tokens, pos)?;
            if tokens.get(*pos) != Some(&")") {
                return Err(Error::Parse("expected ')' in class expression".into()));
            }
            *pos += 1;
            e
        }
        Some(name) if *name != ")" && *name != "o" => {
            *pos += 1;
            ClassExpr::Named(variety(name)?)
        }
        _ => return Err(Error::Parse("expected variety name in class expression".into())),
    };
    if tokens.get(*pos) == Some(&"o") {
        *pos += 1;
        let right = parse_class(tokens, pos)?;
        return Ok(ClassExpr::malcev(left, right));
    }
    Ok(left)
}

impl fmt::Display for ClassExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ClassExpr::Named(v) => write!(f, "{v}"),
            ClassExpr::Malcev(l, r) => {
                match **l {
                    ClassExpr::Malcev(..) => write!(f, "({l})")?,
                    _ => write!(f, "{l}")?,
                }
                write!(f, " o {r}")
            }
        }
    }
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct MalcevResult {
    pub member: bool,
    /// The congruence ρ realizing a Malcev product; `None` for named varieties.
    pub witness: Option<Partition>,
}

/// Membership in a class expression.
///
/// For `V ∘ W`, congruences are tried in canonical order (coarsest labels
/// first); a class belongs to `V` only if it is closed under both operations
/// and the resulting subsemiring is in `V`.
pub fn malcev_membership(t: &SemiringTable, expr: &ClassExpr) -> Result<MalcevResult> {
    match expr {
        ClassExpr::Named(v) => Ok(MalcevResult { member: v.contains(t), witness: None }),
        ClassExpr::Malcev(left, right) => {
            for rho in all_congruences(t)?.partitions() {
                if malcev_witness_ok(t, rho, left, right)? {
                    return Ok(MalcevResult { member: true, witness: Some(rho.clone()) });
                }
            }
            Ok(MalcevResult { member: false, witness: None })
        }
    }
}

fn malcev_witness_ok(t: &SemiringTable, rho: &Partition, left: &ClassExpr, right: &ClassExpr) -> Result<bool> {
    for block in rho.blocks() {
        let Some(sub) = t.subalgebra(&block) else {
            return Ok(false);
        };
        if !malcev_membership(&sub, left)?.member {
            return Ok(false);
        }
    }
    let (q, _) = quotient(t, rho)?;
    Ok(malcev_membership(&q, right)?.member)
}

/// The fiber product of `s1` and `s2` over `d`, with its element pairs.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct SpinedProduct {
    pub table: SemiringTable,
    /// `pairs[i]` is the `(s1, s2)` pair behind element `i`, in lexicographic order.
    pub pairs: Vec<(Elem, Elem)>,
}

pub fn spined_product(
    s1: &SemiringTable,
    s2: &SemiringTable,
    d: &SemiringTable,
    phi1: &[Elem],
    phi2: &[Elem],
) -> Result<SpinedProduct> {
    for (name, s, phi) in [("phi1", s1, phi1), ("phi2", s2, phi2)] {
        if !is_homomorphism(s, d, phi) {
            return Err(Error::Precondition(format!("{name} is not a homomorphism onto the spine")));
        }
        if !is_surjective(phi, d.order()) {
            return Err(Error::Precondition(format!("{name} is not surjective")));
        }
    }
    let pairs: Vec<(Elem, Elem)> =
        s1.elements().flat_map(|a| s2.elements().map(move |b| (a, b))).filter(|&(a, b)| phi1[a] == phi2[b]).collect();
    let index = |p: (Elem, Elem)| pairs.binary_search(&p).expect("fiber is closed");
    let k = pairs.len();
    let mut add = Vec::with_capacity(k * k);
    let mut mul = Vec::with_capacity(k * k);
    for &(a1, a2) in &pairs {
        for &(b1, b2) in &pairs {
            add.push(index((s1.add(a1, b1), s2.add(a2, b2))));
            mul.push(index((s1.mul(a1, b1), s2.mul(a2, b2))));
        }
    }
    let names = pairs.iter().map(|&(a, b)| format!("({},{})", s1.name(a), s2.name(b))).collect();
    let table = SemiringTable::with_names(names, add, mul)?;
    if !table.is_idempotent_semiring() {
        return Err(Error::Consistency("spined product is not an idempotent semiring".into()));
    }
    Ok(SpinedProduct { table, pairs })
}

/// `S ≅ S/L̇ ×_{S/Ḋ} S/Ṙ` for a semiring in `D•`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct SpinedDecomposition {
    /// `S/L̇`, a member of `R•`.
    pub s1: SemiringTable,
    /// `S/Ṙ`, a member of `L•`.
    pub s2: SemiringTable,
    /// `S/Ḋ`, a distributive lattice.
    pub d: SemiringTable,
    pub phi1: Vec<Elem>,
    pub phi2: Vec<Elem>,
    /// `theta[a] = (L_a, R_a)`.
    pub theta: Vec<(Elem, Elem)>,
}

impl SpinedDecomposition {
    /// The spined product of the parts.
    pub fn rebuild(&self) -> Result<SpinedProduct> {
        spined_product(&self.s1, &self.s2, &self.d, &self.phi1, &self.phi2)
    }
}

pub fn spined_decompose(t: &SemiringTable) -> Result<SpinedDecomposition> {
    if let Some((id, check)) = catalog::d_dot().first_failure(t) {
        let witness: Vec<&str> = check.counterexample.unwrap_or_default().iter().map(|&e| t.name(e)).collect();
        return Err(Error::Precondition(format!("not in D_dot: {id} fails at ({})", witness.join(", "))));
    }
    let green = green_mult(t)?;
    let fail = |what: &str| Error::Consistency(format!("spined decomposition: {what}"));
    if !is_congruence(t, &green.l)? {
        return Err(fail("L̇ is not a congruence"));
    }
    if !is_congruence(t, &green.r)? {
        return Err(fail("Ṙ is not a congruence"));
    }
    if green.d != eta(t) {
        return Err(fail("Ḋ differs from η"));
    }
    let composed = green.l.to_relation().compose(&green.r.to_relation());
    if composed != green.d.to_relation() {
        return Err(fail("Ḋ differs from L̇∘Ṙ"));
    }
    let (s1, to_s1) = quotient(t, &green.l)?;
    let (s2, to_s2) = quotient(t, &green.r)?;
    let (d, to_d) = quotient(t, &green.d)?;
    if !catalog::r_dot().contains(&s1) {
        return Err(fail("S/L̇ is not in R_dot"));
    }
    if !catalog::l_dot().contains(&s2) {
        return Err(fail("S/Ṙ is not in L_dot"));
    }
    if !is_distributive_lattice(&d) {
        return Err(fail("S/Ḋ is not a distributive lattice"));
    }
    let mut phi1 = vec![usize::MAX; s1.order()];
    let mut phi2 = vec![usize::MAX; s2.order()];
    for a in t.elements() {
        phi1[to_s1[a]] = to_d[a];
        phi2[to_s2[a]] = to_d[a];
    }
    let theta: Vec<(Elem, Elem)> = t.elements().map(|a| (to_s1[a], to_s2[a])).collect();
    let decomposition = SpinedDecomposition { s1, s2, d, phi1, phi2, theta };

    let product = decomposition.rebuild()?;
    let theta_index: Vec<Elem> = decomposition
        .theta
        .iter()
        .map(|p| product.pairs.binary_search(p).map_err(|_| fail("θ leaves the fiber product")))
        .collect::<Result<_>>()?;
    if product.table.order() != t.order() || !is_surjective(&theta_index, product.table.order()) {
        return Err(fail("θ is not a bijection onto the fiber product"));
    }
    if !is_homomorphism(t, &product.table, &theta_index) {
        return Err(fail("θ is not a homomorphism"));
    }
    Ok(decomposition)
}

/// Iso-invariant profile of an element: how it absorbs and is absorbed.
fn profile(t: &SemiringTable, a: Elem) -> [usize; 6] {
    let n = t.order();
    let count = |f: &dyn Fn(Elem) -> bool| (0..n).filter(|&b| f(b)).count();
    [
        count(&|b| t.add(a, b) == a),
        count(&|b| t.add(b, a) == a),
        count(&|b| t.add(a, b) == b),
        count(&|b| t.mul(a, b) == a),
        count(&|b| t.mul(b, a) == a),
        count(&|b| t.mul(a, b) == b),
    ]
}

/// A bijection `f` with `f(a+b) = f(a)+f(b)` and `f(ab) = f(a)f(b)`.
///
/// Returns the lexicographically least such bijection (as the image list).
pub fn is_isomorphic(s: &SemiringTable, t: &SemiringTable) -> Option<Vec<Elem>> {
    let n = s.order();
    if n != t.order() {
        return None;
    }
    let ps: Vec<_> = (0..n).map(|a| profile(s, a)).collect();
    let pt: Vec<_> = (0..n).map(|a| profile(t, a)).collect();
    let mut sorted_s = ps.clone();
    let mut sorted_t = pt.clone();
    sorted_s.sort();
    sorted_t.sort();
    if sorted_s != sorted_t {
        return None;
    }
    let mut map = vec![usize::MAX; n];
    let mut used = vec![false; n];
    fn consistent(s: &SemiringTable, t: &SemiringTable, map: &[Elem], upto: usize) -> bool {
        let a = upto;
        (0..=upto).all(|b| {
            [(a, b), (b, a)].into_iter().all(|(x, y)| {
                let sum = s.add(x, y);
                let prod = s.mul(x, y);
                (map[sum] == usize::MAX || map[sum] == t.add(map[x], map[y]))
                    && (map[prod] == usize::MAX || map[prod] == t.mul(map[x], map[y]))
            })
        })
    }
    fn go(
        s: &SemiringTable,
        t: &SemiringTable,
        ps: &[[usize; 6]],
        pt: &[[usize; 6]],
        map: &mut Vec<Elem>,
        used: &mut Vec<bool>,
        a: usize,
    ) -> bool {
        let n = s.order();
        if a == n {
            return is_homomorphism(s, t, map);
        }
        for target in 0..n {
            if used[target] || ps[a] != pt[target] {
                continue;
            }
            map[a] = target;
            used[target] = true;
            // every pair with both sides mapped must agree wherever the result is mapped
            let ok = (0..=a).all(|k| consistent(s, t, map, k));
            if ok && go(s, t, ps, pt, map, used, a + 1) {
                return true;
            }
            used[target] = false;
            map[a] = usize::MAX;
        }
        false
    }
    go(s, t, &ps, &pt, &mut map, &mut used, 0).then_some(map)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::examples::{chain, left_zero_join, right_zero_join, three_element, two_lattice};

    fn naive_isomorphism(s: &SemiringTable, t: &SemiringTable) -> Option<Vec<Elem>> {
        let n = s.order();
        if n != t.order() {
            return None;
        }
        let mut perm: Vec<Elem> = (0..n).collect();
        loop {
            if is_homomorphism(s, t, &perm) {
                return Some(perm);
            }
            // next lexicographic permutation
            let i = (1..n).rev().find(|&i| perm[i - 1] < perm[i])?;
            let j = (i..n).rev().find(|&j| perm[j] > perm[i - 1]).unwrap();
            perm.swap(i - 1, j);
            perm[i..].reverse();
        }
    }

    #[test]
    fn quotient_examples() {
        let t = three_element();
        let (q, proj) = quotient(&t, &Partition::universal(3)).unwrap();
        assert_eq!(q.order(), 1);
        assert_eq!(proj, vec![0, 0, 0]);
        let (q, _) = quotient(&t, &Partition::equality(3)).unwrap();
        assert!(is_isomorphic(&q, &t).is_some());
        let ab_c = Partition::from_blocks(3, &[vec![0, 1], vec![2]]).unwrap();
        assert!(matches!(quotient(&t, &ab_c), Err(Error::Precondition(_))));
        // chain 0 < 1 < 2 collapsed to {0,1} < {2}
        let c3 = chain(3);
        let (q, proj) = quotient(&c3, &ab_c).unwrap();
        assert!(q.validate().is_idempotent_semiring);
        assert_eq!(q.names(), &["{0,1}", "2"]);
        assert_eq!(proj, vec![0, 0, 1]);
        assert_eq!((q.add(0, 1), q.mul(0, 1), q.add(1, 1)), (1, 0, 1));
        assert!(is_isomorphic(&q, &two_lattice()).is_some());
    }

    #[test]
    fn distributive_lattice_recognition() {
        assert!(is_distributive_lattice(&two_lattice()));
        assert!(is_distributive_lattice(&chain(3)));
        assert!(is_distributive_lattice(&SemiringTable::trivial()));
        assert!(!is_distributive_lattice(&three_element()));
        assert!(!is_distributive_lattice(&left_zero_join()));
    }

    #[test]
    fn malcev_examples() {
        let lz_d = ClassExpr::parse("LZ_dot o D").unwrap();
        let r = malcev_membership(&two_lattice(), &lz_d).unwrap();
        assert!(r.member);
        assert_eq!(r.witness, Some(Partition::equality(2)));
        // only the trivial congruences exist: S itself is not in D and ca = a ≠ c
        let t = three_element();
        let r = malcev_membership(&t, &lz_d).unwrap();
        assert!(!r.member);
        assert_eq!(r.witness, None);
        let r = malcev_membership(&chain(3), &lz_d).unwrap();
        assert_eq!(r.witness, Some(Partition::equality(3)));
        let r =
            malcev_membership(&SemiringTable::trivial(), &ClassExpr::parse("LZ_dot o (RZ_plus o D)").unwrap()).unwrap();
        assert!(r.member);
    }

    #[test]
    fn class_expr_parsing() {
        let e = ClassExpr::parse("RB_dot o (LZ_plus o D)").unwrap();
        assert_eq!(e.to_string(), "RB_dot o LZ_plus o D");
        let e = ClassExpr::parse("(LZ_dot ∘ D) ∘ D").unwrap();
        assert_eq!(e.to_string(), "(LZ_dot o D) o D");
        assert!(ClassExpr::parse("LZ_dot o").is_err());
        assert!(ClassExpr::parse("Foo").is_err());
        assert!(ClassExpr::parse("(D").is_err());
    }

    #[test]
    fn spined_products_small() {
        let one = SemiringTable::trivial();
        let p = spined_product(&one, &one, &one, &[0], &[0]).unwrap();
        assert_eq!(p.table.order(), 1);
        let t = three_element();
        let p = spined_product(&t, &one, &one, &[0, 0, 0], &[0]).unwrap();
        assert!(is_isomorphic(&p.table, &t).is_some());
        // left-zero and right-zero semirings over the two-element lattice via the identity maps
        let lz = left_zero_join();
        let rz = right_zero_join();
        let d = two_lattice();
        let fiber = spined_product(&lz, &rz, &d, &[0, 1], &[0, 1]);
        // xy = x is not a lattice homomorphism, so the identity is refused
        assert!(fiber.is_err());
        let p = spined_product(&lz, &rz, &one, &[0, 0], &[0, 0]).unwrap();
        assert_eq!(p.table.order(), 4);
        assert!(p.table.validate().is_idempotent_semiring);
    }

    #[test]
    fn spined_product_rejects_non_surjective() {
        let one = SemiringTable::trivial();
        let d = two_lattice();
        assert!(matches!(spined_product(&one, &one, &d, &[0], &[0]), Err(Error::Precondition(_))));
    }

    #[test]
    fn decompose_examples() {
        let dec = spined_decompose(&SemiringTable::trivial()).unwrap();
        assert_eq!((dec.s1.order(), dec.s2.order(), dec.d.order()), (1, 1, 1));
        for t in [two_lattice(), chain(3)] {
            let dec = spined_decompose(&t).unwrap();
            assert!(is_isomorphic(&dec.rebuild().unwrap().table, &t).is_some());
        }
        assert!(matches!(spined_decompose(&three_element()), Err(Error::Precondition(_))));
    }

    #[test]
    fn isomorphism_examples() {
        let t = three_element();
        assert_eq!(is_isomorphic(&t, &t), Some(vec![0, 1, 2]));
        let cyc = [1, 2, 0];
        let u = t.permuted(&cyc);
        let f = is_isomorphic(&t, &u).unwrap();
        assert!(is_homomorphism(&t, &u, &f));
        assert_eq!(f, cyc.to_vec());
        let back = is_isomorphic(&u, &t).unwrap();
        assert_eq!(back, vec![2, 0, 1]);
        assert_eq!(is_isomorphic(&left_zero_join(), &right_zero_join()), None);
        assert_eq!(naive_isomorphism(&left_zero_join(), &right_zero_join()), None);
    }

    #[test]
    fn isomorphism_agrees_with_naive_search() {
        let t = three_element();
        for perm in [[0, 1, 2], [0, 2, 1], [1, 0, 2], [1, 2, 0], [2, 0, 1], [2, 1, 0]] {
            let u = t.permuted(&perm);
            assert_eq!(is_isomorphic(&t, &u), naive_isomorphism(&t, &u));
        }
        assert_eq!(is_isomorphic(&chain(3), &t), None);
    }
}
