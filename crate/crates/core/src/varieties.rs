//! Catalog of idempotent semiring varieties and membership by identity checking.

use std::fmt;

use crate::error::{Error, Result};
use crate::table::SemiringTable;
use crate::term::{satisfies_identity, Identity, IdentityCheck};

/// A variety of idempotent semirings defined by identities on top of the
/// idempotent semiring axioms.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct VarietySpec {
    pub name: String,
    pub identities: Vec<Identity>,
}

impl VarietySpec {
    pub fn new(name: impl Into<String>, identities: &[&str]) -> VarietySpec {
        VarietySpec {
            name: name.into(),
            identities: identities.iter().map(|s| Identity::parse(s).expect("catalog identity parses")).collect(),
        }
    }

    /// First failing identity with its counterexample, if any.
    pub fn first_failure(&self, t: &SemiringTable) -> Option<(&Identity, IdentityCheck)> {
        self.identities.iter().find_map(|id| {
            let check = satisfies_identity(t, id);
            (!check.holds).then_some((id, check))
        })
    }

    pub fn contains(&self, t: &SemiringTable) -> bool {
        variety_membership(t, self)
    }
}

impl fmt::Display for VarietySpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.name)
    }
}

/// Conjunction of the defining identities. Assumes `t` is an idempotent semiring.
pub fn variety_membership(t: &SemiringTable, v: &VarietySpec) -> bool {
    v.identities.iter().all(|id| id.holds_in(t))
}

/// Named varieties. Catalog names are ASCII: `_plus` for the additive
/// superscript `+`, `_dot` for the multiplicative `•`.
pub mod catalog {
    use super::VarietySpec;

    /// All idempotent semirings.
    pub fn i() -> VarietySpec {
        VarietySpec::new("I", &[])
    }
    /// Additive reduct is a rectangular band.
    pub fn r_plus() -> VarietySpec {
        VarietySpec::new("R_plus", &["x+y+x = x"])
    }
    /// Multiplicative reduct is a rectangular band.
    pub fn rb_dot() -> VarietySpec {
        VarietySpec::new("RB_dot", &["xyx = x"])
    }
    pub fn lz_plus() -> VarietySpec {
        VarietySpec::new("LZ_plus", &["x+y = x"])
    }
    pub fn rz_plus() -> VarietySpec {
        VarietySpec::new("RZ_plus", &["x+y = y"])
    }
    pub fn lz_dot() -> VarietySpec {
        VarietySpec::new("LZ_dot", &["xy = x"])
    }
    pub fn rz_dot() -> VarietySpec {
        VarietySpec::new("RZ_dot", &["xy = y"])
    }
    pub fn lnb_dot() -> VarietySpec {
        VarietySpec::new("LNB_dot", &["xyz = xzy"])
    }
    pub fn rnb_dot() -> VarietySpec {
        VarietySpec::new("RNB_dot", &["xyz = yxz"])
    }
    pub fn lqbi() -> VarietySpec {
        VarietySpec::new("LQBi", &["x+xy+x = x"])
    }
    pub fn rqbi() -> VarietySpec {
        VarietySpec::new("RQBi", &["x+yx+x = x"])
    }
    pub fn bi() -> VarietySpec {
        VarietySpec::new("Bi", &["x+xy+x = x", "x+yx+x = x"])
    }
    pub fn ln() -> VarietySpec {
        VarietySpec::new("LN", &["x+xyx = x"])
    }
    pub fn rn() -> VarietySpec {
        VarietySpec::new("RN", &["xyx+x = x"])
    }
    pub fn n() -> VarietySpec {
        VarietySpec::new("N", &["x+xyx+x = x"])
    }
    pub fn sl_plus() -> VarietySpec {
        VarietySpec::new("Sl_plus", &["x+y = y+x"])
    }
    /// Distributive lattices.
    pub fn d() -> VarietySpec {
        VarietySpec::new("D", &["x+y = y+x", "xy = yx", "x+xy = x"])
    }
    /// η equals Green's D of the multiplicative reduct.
    pub fn d_dot() -> VarietySpec {
        VarietySpec::new("D_dot", &["x = xyx+x+xyx"])
    }
    /// η equals Green's L of the multiplicative reduct.
    pub fn l_dot() -> VarietySpec {
        VarietySpec::new("L_dot", &["x = xy+x+xy"])
    }
    /// η equals Green's R of the multiplicative reduct.
    pub fn r_dot() -> VarietySpec {
        VarietySpec::new("R_dot", &["x = yx+x+yx"])
    }
    /// η equals Green's L of the additive reduct.
    pub fn l_plus() -> VarietySpec {
        VarietySpec::new("L_plus", &["x+yxy = x"])
    }

    pub fn all() -> Vec<VarietySpec> {
        vec![
            i(),
            r_plus(),
            rb_dot(),
            lz_plus(),
            rz_plus(),
            lz_dot(),
            rz_dot(),
            lnb_dot(),
            rnb_dot(),
            lqbi(),
            rqbi(),
            bi(),
            ln(),
            rn(),
            n(),
            sl_plus(),
            d(),
            d_dot(),
            l_dot(),
            r_dot(),
            l_plus(),
        ]
    }

    pub fn by_name(name: &str) -> Option<VarietySpec> {
        all().into_iter().find(|v| v.name.eq_ignore_ascii_case(name))
    }
}

/// Looks a variety up by catalog name.
pub fn variety(name: &str) -> Result<VarietySpec> {
    catalog::by_name(name).ok_or_else(|| Error::Unknown(format!("variety {name:?}")))
}

#[cfg(test)]
mod tests {
    use super::catalog::*;
    use super::*;
    use crate::examples::{chain, left_zero_join, right_zero_join, three_element, two_lattice};

    #[test]
    fn example_memberships() {
        let t = three_element();
        assert!(!n().contains(&t));
        assert!(!lz_dot().contains(&t));
        assert!(i().contains(&t));
        assert!(d().contains(&two_lattice()));
        assert!(d().contains(&chain(3)));
        assert!(lz_dot().contains(&left_zero_join()));
        assert!(rz_dot().contains(&right_zero_join()));
        assert!(!d().contains(&left_zero_join()));
    }

    #[test]
    fn lattice_is_in_the_dotted_varieties() {
        let t = two_lattice();
        for v in [d_dot(), l_dot(), r_dot(), n(), ln(), rn(), bi(), sl_plus()] {
            assert!(v.contains(&t), "{v}");
        }
    }

    #[test]
    fn failure_reports_identity() {
        let t = three_element();
        let v = n();
        let (id, check) = v.first_failure(&t).unwrap();
        assert_eq!(id.to_string(), "x+xyx+x ≈ x");
        assert_eq!(check.counterexample, Some(vec![2, 1]));
    }

    #[test]
    fn lookup() {
        assert_eq!(variety("d_dot").unwrap().name, "D_dot");
        assert!(variety("nope").is_err());
        let names: Vec<String> = catalog::all().into_iter().map(|v| v.name).collect();
        let mut dedup = names.clone();
        dedup.sort();
        dedup.dedup();
        assert_eq!(dedup.len(), names.len());
    }
}
