use std::sync::OnceLock;

use proptest::prelude::*;
use proptest::sample::Index;

use semiring_lab::structure::is_homomorphism;
use semiring_lab::{all_congruences, catalog, eta, green_mult, is_isomorphic, sigma, EnumConfig, SemiringTable};

fn order_three() -> &'static [SemiringTable] {
    static ALL: OnceLock<Vec<SemiringTable>> = OnceLock::new();
    ALL.get_or_init(|| semiring_lab::enumerate_idempotent_semirings(&EnumConfig::new(3)).unwrap().semirings)
}

fn pick(ix: &Index) -> &'static SemiringTable {
    let all = order_three();
    &all[ix.index(all.len())]
}

fn perm() -> impl Strategy<Value = Vec<usize>> {
    Just(vec![0usize, 1, 2]).prop_shuffle()
}

proptest! {
    #[test]
    fn identities_survive_relabeling(ix in any::<Index>(), p in perm()) {
        let t = pick(&ix);
        let u = t.permuted(&p);
        for v in catalog::all() {
            prop_assert_eq!(v.contains(t), v.contains(&u), "{}", v);
        }
        let renamed = t.renamed(vec!["p".into(), "q".into(), "r".into()]).unwrap();
        for v in catalog::all() {
            prop_assert_eq!(v.contains(t), v.contains(&renamed));
        }
    }

    #[test]
    fn validation_is_pure(ix in any::<Index>(), p in perm()) {
        let t = pick(&ix);
        let first = t.validate();
        prop_assert_eq!(&first, &t.validate());
        prop_assert!(first.is_idempotent_semiring);
        prop_assert!(t.permuted(&p).validate().is_idempotent_semiring);
    }

    #[test]
    fn isomorphism_is_symmetric(a in any::<Index>(), b in any::<Index>(), p in perm()) {
        let (s, t) = (pick(&a), pick(&b));
        prop_assert_eq!(is_isomorphic(s, t).is_some(), is_isomorphic(t, s).is_some());
        let u = s.permuted(&p);
        let f = is_isomorphic(s, &u);
        prop_assert!(f.is_some());
        prop_assert!(is_homomorphism(s, &u, &f.unwrap()));
    }

    #[test]
    fn relations_transport_along_relabeling(ix in any::<Index>(), p in perm()) {
        let t = pick(&ix);
        let u = t.permuted(&p);
        let (e, f) = (eta(t), eta(&u));
        let (s, r) = (sigma(t), sigma(&u));
        let (g, h) = (green_mult(t).unwrap(), green_mult(&u).unwrap());
        for a in 0..3 {
            for b in 0..3 {
                prop_assert_eq!(e.related(a, b), f.related(p[a], p[b]));
                prop_assert_eq!(s.contains(a, b), r.contains(p[a], p[b]));
                prop_assert_eq!(g.d.related(a, b), h.d.related(p[a], p[b]));
            }
        }
        prop_assert_eq!(all_congruences(t).unwrap().len(), all_congruences(&u).unwrap().len());
    }

    #[test]
    fn text_round_trip(ix in any::<Index>()) {
        let t = pick(&ix);
        prop_assert_eq!(&SemiringTable::parse(&t.to_text()).unwrap(), t);
    }
}
