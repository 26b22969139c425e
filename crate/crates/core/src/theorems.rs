//! Per-instance checks of the equivalence and implication theorems about
//! η, Green's relations and the varieties `D•`, `L•`, `R•`.
//!
//! Each theorem is evaluated as a list of conditions grouped into clauses.
//! An equivalence clause lists its equivalent conditions; an implication
//! `P ⟹ Q` is listed as the pair `P`, `P ∧ Q`. A report is consistent when
//! all conditions within every clause agree.

use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::congruences::{eta, is_congruence, least_dl_congruence, sigma, sigma_star, EtaMethod};
use crate::error::{Error, Result};
use crate::relations::{green_add, green_mult, quasi_orders, GreenTriple, Partition};
use crate::structure::{malcev_membership, quotient, spined_decompose, ClassExpr};
use crate::table::SemiringTable;
use crate::term::Identity;
use crate::varieties::catalog;

#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug, Serialize)]
pub enum TheoremId {
    #[serde(rename = "LEMMA_1_1")]
    Lemma1_1,
    #[serde(rename = "LEMMA_1_2")]
    Lemma1_2,
    #[serde(rename = "THM_2_3")]
    Thm2_3,
    #[serde(rename = "LEMMA_2_4")]
    Lemma2_4,
    #[serde(rename = "THM_2_5")]
    Thm2_5,
    #[serde(rename = "THM_3_1")]
    Thm3_1,
    #[serde(rename = "LEMMA_3_2")]
    Lemma3_2,
    #[serde(rename = "THM_3_3")]
    Thm3_3,
    #[serde(rename = "THM_3_4")]
    Thm3_4,
    #[serde(rename = "LEMMA_REGBAND")]
    LemmaRegband,
    #[serde(rename = "LEMMA_DDOT_EQ")]
    LemmaDdotEq,
    #[serde(rename = "LEMMA_NBD")]
    LemmaNbd,
    #[serde(rename = "THM_NORMAL")]
    ThmNormal,
    #[serde(rename = "THM_LNB")]
    ThmLnb,
    #[serde(rename = "LEMMA_4_2")]
    Lemma4_2,
    #[serde(rename = "THM_4_1")]
    Thm4_1,
    #[serde(rename = "THM_4_3")]
    Thm4_3,
    #[serde(rename = "BAND_SEMIRING_REGULAR")]
    BandSemiringRegular,
    #[serde(rename = "COR_JOIN")]
    CorJoin,
}

impl TheoremId {
    pub const ALL: [TheoremId; 19] = [
        TheoremId::Lemma1_1,
        TheoremId::Lemma1_2,
        TheoremId::Thm2_3,
        TheoremId::Lemma2_4,
        TheoremId::Thm2_5,
        TheoremId::Thm3_1,
        TheoremId::Lemma3_2,
        TheoremId::Thm3_3,
        TheoremId::Thm3_4,
        TheoremId::LemmaRegband,
        TheoremId::LemmaDdotEq,
        TheoremId::LemmaNbd,
        TheoremId::ThmNormal,
        TheoremId::ThmLnb,
        TheoremId::Lemma4_2,
        TheoremId::Thm4_1,
        TheoremId::Thm4_3,
        TheoremId::BandSemiringRegular,
        TheoremId::CorJoin,
    ];

    pub fn name(self) -> &'static str {
        match self {
            TheoremId::Lemma1_1 => "LEMMA_1_1",
            TheoremId::Lemma1_2 => "LEMMA_1_2",
            TheoremId::Thm2_3 => "THM_2_3",
            TheoremId::Lemma2_4 => "LEMMA_2_4",
            TheoremId::Thm2_5 => "THM_2_5",
            TheoremId::Thm3_1 => "THM_3_1",
            TheoremId::Lemma3_2 => "LEMMA_3_2",
            TheoremId::Thm3_3 => "THM_3_3",
            TheoremId::Thm3_4 => "THM_3_4",
            TheoremId::LemmaRegband => "LEMMA_REGBAND",
            TheoremId::LemmaDdotEq => "LEMMA_DDOT_EQ",
            TheoremId::LemmaNbd => "LEMMA_NBD",
            TheoremId::ThmNormal => "THM_NORMAL",
            TheoremId::ThmLnb => "THM_LNB",
            TheoremId::Lemma4_2 => "LEMMA_4_2",
            TheoremId::Thm4_1 => "THM_4_1",
            TheoremId::Thm4_3 => "THM_4_3",
            TheoremId::BandSemiringRegular => "BAND_SEMIRING_REGULAR",
            TheoremId::CorJoin => "COR_JOIN",
        }
    }
}

impl fmt::Display for TheoremId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for TheoremId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        TheoremId::ALL
            .into_iter()
            .find(|id| id.name().eq_ignore_ascii_case(s))
            .ok_or_else(|| Error::Unknown(format!("theorem {s:?}")))
    }
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct Condition {
    pub clause: &'static str,
    pub label: String,
    pub value: bool,
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct TheoremReport {
    pub theorem: TheoremId,
    pub conditions: Vec<Condition>,
    pub consistent: bool,
}

impl TheoremReport {
    fn new(theorem: TheoremId, conditions: Vec<Condition>) -> TheoremReport {
        let consistent =
            conditions.iter().all(|c| conditions.iter().filter(|d| d.clause == c.clause).all(|d| d.value == c.value));
        TheoremReport { theorem, conditions, consistent }
    }
}

/// Which Green's relation to compare η with.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub enum GreenRelation {
    DPlus,
    LPlus,
    RPlus,
    DDot,
    LDot,
    RDot,
}

/// Whether η equals the named Green's relation as a partition.
pub fn eta_equals_relation(t: &SemiringTable, which: GreenRelation) -> Result<bool> {
    let e = eta(t);
    let g = match which {
        GreenRelation::DPlus | GreenRelation::LPlus | GreenRelation::RPlus => green_add(t)?,
        _ => green_mult(t)?,
    };
    Ok(e == *pick(&g, which))
}

fn pick(g: &GreenTriple, which: GreenRelation) -> &Partition {
    match which {
        GreenRelation::DPlus | GreenRelation::DDot => &g.d,
        GreenRelation::LPlus | GreenRelation::LDot => &g.l,
        GreenRelation::RPlus | GreenRelation::RDot => &g.r,
    }
}

/// Everything the theorem checks share, computed once per semiring.
struct Facts<'a> {
    t: &'a SemiringTable,
    eta: Partition,
    add: GreenTriple,
    mul: GreenTriple,
}

impl<'a> Facts<'a> {
    fn new(t: &'a SemiringTable) -> Result<Self> {
        Ok(Facts { t, eta: eta(t), add: green_add(t)?, mul: green_mult(t)? })
    }

    fn holds(&self, identity: &str) -> bool {
        Identity::parse(identity).expect("theorem identity parses").holds_in(self.t)
    }

    fn in_class(&self, expr: &str) -> Result<bool> {
        let e = ClassExpr::parse(expr)?;
        Ok(malcev_membership(self.t, &e)?.member)
    }
}

struct Conds(Vec<Condition>);

impl Conds {
    fn push(&mut self, clause: &'static str, label: impl Into<String>, value: bool) {
        self.0.push(Condition { clause, label: label.into(), value });
    }

    /// `P ⟹ Q` as the two conditions `P` and `P ∧ Q`.
    fn implies(&mut self, clause: &'static str, p: &str, pv: bool, q: &str, qv: bool) {
        self.push(clause, p, pv);
        self.push(clause, format!("{p} and {q}"), pv && qv);
    }
}

/// Evaluates every condition of `theorem` on `t`.
pub fn verify_theorem(t: &SemiringTable, theorem: TheoremId) -> Result<TheoremReport> {
    let f = Facts::new(t)?;
    let mut c = Conds(Vec::new());
    let n_member = catalog::n().contains(t);
    let d_dot = catalog::d_dot().contains(t);
    match theorem {
        TheoremId::Lemma1_1 => {
            c.push("i", "eta = D+", f.eta == f.add.d);
            c.push("i", "x+xy+x = x and x+yx+x = x", f.holds("x+xy+x = x") && f.holds("x+yx+x = x"));
            c.push("i", "S in R_plus o D", f.in_class("R_plus o D")?);
        }
        TheoremId::Lemma1_2 => {
            c.push("i", "eta = L+", f.eta == f.add.l);
            c.push("i", "S in LN and D. <= L+", catalog::ln().contains(t) && f.mul.d.refines(&f.add.l));
            c.push("i", "x+yxy = x", f.holds("x+yxy = x"));
            c.push("i", "S in LZ_plus o D", f.in_class("LZ_plus o D")?);
        }
        TheoremId::Thm2_3 => {
            let meet = least_dl_congruence(t, EtaMethod::MeetOracle)?;
            let star = sigma_star(t);
            c.push("i", "true", true);
            c.push("i", "Cg(sigma) = meet of DL congruences", f.eta == meet);
            c.push("i", "sigma* = transitive closure of sigma", star == sigma(t).transitive_closure());
            c.push("i", "sigma* induces the meet of DL congruences", star.to_partition().as_ref() == Some(&meet));
        }
        TheoremId::Lemma2_4 => {
            c.push("i", "S in N", n_member);
            c.push("i", "xz+xyz+xz = xz", f.holds("xz+xyz+xz = xz"));
        }
        TheoremId::Thm2_5 => {
            let s = sigma(t);
            let induces = s.to_partition().as_ref() == Some(&f.eta);
            c.implies("i", "S in N", n_member, "sigma transitive and sigma = eta", s.is_transitive() && induces);
        }
        TheoremId::Thm3_1 => {
            c.push("i", "eta = D.", f.eta == f.mul.d);
            c.push("i", "S in N and D+ <= D.", n_member && f.add.d.refines(&f.mul.d));
            c.push("i", "x = xyx+x+xyx", f.holds("x = xyx+x+xyx"));
        }
        TheoremId::Lemma3_2 => {
            c.push("i", "x+xy+x = x", f.holds("x+xy+x = x"));
            c.push("i", "S in N and R. <= D+", n_member && f.mul.r.refines(&f.add.d));
            c.push("ii", "x+yx+x = x", f.holds("x+yx+x = x"));
            c.push("ii", "S in N and L. <= D+", n_member && f.mul.l.refines(&f.add.d));
        }
        TheoremId::Thm3_3 => {
            let q = quasi_orders(t);
            c.push("i", "eta = L.", f.eta == f.mul.l);
            c.push("i", "D+ <= L. and x+xy+x = x", f.add.d.refines(&f.mul.l) && f.holds("x+xy+x = x"));
            c.push(
                "i",
                "S in N and R. <= D+ <= L.",
                n_member && f.mul.r.refines(&f.add.d) && f.add.d.refines(&f.mul.l),
            );
            c.push("i", "<=l. within <=+", q.left_mul.is_subset(&q.add));
            c.push("i", "x = xy+x+xy", f.holds("x = xy+x+xy"));
            c.push("i", "x = x(y+x+y)", f.holds("x = x(y+x+y)"));
        }
        TheoremId::Thm3_4 => {
            let q = quasi_orders(t);
            c.push("i", "eta = R.", f.eta == f.mul.r);
            c.push("i", "D+ <= R. and x+yx+x = x", f.add.d.refines(&f.mul.r) && f.holds("x+yx+x = x"));
            c.push(
                "i",
                "S in N and L. <= D+ <= R.",
                n_member && f.mul.l.refines(&f.add.d) && f.add.d.refines(&f.mul.r),
            );
            c.push("i", "<=r. within <=+", q.right_mul.is_subset(&q.add));
            c.push("i", "x = yx+x+yx", f.holds("x = yx+x+yx"));
            c.push("i", "x = (y+x+y)x", f.holds("x = (y+x+y)x"));
        }
        TheoremId::LemmaRegband => {
            c.push("i", "true", true);
            c.push("i", "xyzx = xyzx+xyxzx+xyzx", f.holds("xyzx = xyzx+xyxzx+xyzx"));
            c.push("i", "xyxzx = xyxzx+xyzx+xyxzx", f.holds("xyxzx = xyxzx+xyzx+xyxzx"));
        }
        TheoremId::LemmaDdotEq => {
            c.push("i", "S in D_dot", d_dot);
            c.push("i", "xz = xz+xyz and xz = xyz+xz", f.holds("xz = xz+xyz") && f.holds("xz = xyz+xz"));
            c.push("i", "xz = xyz+xz+xyz", f.holds("xz = xyz+xz+xyz"));
        }
        TheoremId::LemmaNbd => {
            c.implies("i", "S in D_dot", d_dot, "xyzx = xzyx+xyzx+xzyx", f.holds("xyzx = xzyx+xyzx+xzyx"));
        }
        TheoremId::ThmNormal => {
            c.implies("i", "S in D_dot", d_dot, "xyzx = xzyx", f.holds("xyzx = xzyx"));
        }
        TheoremId::ThmLnb => {
            c.push("i", "S in LNB_dot and D_dot", catalog::lnb_dot().contains(t) && d_dot);
            c.push("i", "xz = xzy+xz+xzy", f.holds("xz = xzy+xz+xzy"));
            c.push("i", "S in L_dot", catalog::l_dot().contains(t));
            c.push("ii", "S in RNB_dot and D_dot", catalog::rnb_dot().contains(t) && d_dot);
            c.push("ii", "zx = yzx+zx+yzx", f.holds("zx = yzx+zx+yzx"));
            c.push("ii", "S in R_dot", catalog::r_dot().contains(t));
        }
        TheoremId::Lemma4_2 => {
            let d_cong = is_congruence(t, &f.mul.d)?;
            let quotient_ok = if d_cong {
                let (q, _) = quotient(t, &f.mul.d)?;
                malcev_membership(&q, &ClassExpr::parse("LZ_plus o D")?)?.member
            } else {
                false
            };
            c.push("i", "S in LN", catalog::ln().contains(t));
            c.push("i", "D. congruence and S/D. in LZ_plus o D", d_cong && quotient_ok);
        }
        TheoremId::Thm4_1 => {
            c.push("i", "S in L_dot", catalog::l_dot().contains(t));
            c.push("i", "S in LZ_dot o D", f.in_class("LZ_dot o D")?);
            c.push("ii", "S in R_dot", catalog::r_dot().contains(t));
            c.push("ii", "S in RZ_dot o D", f.in_class("RZ_dot o D")?);
        }
        TheoremId::Thm4_3 => {
            c.push("i", "S in LN", catalog::ln().contains(t));
            c.push("i", "S in RB_dot o (LZ_plus o D)", f.in_class("RB_dot o (LZ_plus o D)")?);
            c.push("ii", "S in RN", catalog::rn().contains(t));
            c.push("ii", "S in RB_dot o (RZ_plus o D)", f.in_class("RB_dot o (RZ_plus o D)")?);
        }
        TheoremId::BandSemiringRegular => {
            c.implies("i", "S in Bi", catalog::bi().contains(t), "x+y+z+x = x+y+x+z+x", f.holds("x+y+z+x = x+y+x+z+x"));
        }
        TheoremId::CorJoin => {
            let decomposes = match spined_decompose(t) {
                Ok(_) => true,
                Err(Error::Precondition(_)) => false,
                Err(e) => return Err(e),
            };
            c.push("i", "S in D_dot", d_dot);
            c.push("i", "spined decomposition succeeds", decomposes);
        }
    }
    Ok(TheoremReport::new(theorem, c.0))
}

/// Readings of the class on the right of `LN = R∘(LZ⁺∘D)` (and its dual),
/// with the first factor taken as the rectangular-band variety, as `R•`
/// (`η = Ṙ`), or as `L•` (`η = L̇`).
#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct Thm43Readings {
    pub ln: bool,
    pub rn: bool,
    pub rb_dot_lz_plus_d: bool,
    pub r_dot_lz_plus_d: bool,
    pub l_dot_lz_plus_d: bool,
    pub rb_dot_rz_plus_d: bool,
    pub r_dot_rz_plus_d: bool,
    pub l_dot_rz_plus_d: bool,
}

pub fn thm_4_3_readings(t: &SemiringTable) -> Result<Thm43Readings> {
    let m = |s: &str| -> Result<bool> { Ok(malcev_membership(t, &ClassExpr::parse(s)?)?.member) };
    Ok(Thm43Readings {
        ln: catalog::ln().contains(t),
        rn: catalog::rn().contains(t),
        rb_dot_lz_plus_d: m("RB_dot o (LZ_plus o D)")?,
        r_dot_lz_plus_d: m("R_dot o (LZ_plus o D)")?,
        l_dot_lz_plus_d: m("L_dot o (LZ_plus o D)")?,
        rb_dot_rz_plus_d: m("RB_dot o (RZ_plus o D)")?,
        r_dot_rz_plus_d: m("R_dot o (RZ_plus o D)")?,
        l_dot_rz_plus_d: m("L_dot o (RZ_plus o D)")?,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::examples::{three_element, two_lattice};

    #[test]
    fn thm_3_1_on_example_is_all_false() {
        let r = verify_theorem(&three_element(), TheoremId::Thm3_1).unwrap();
        assert!(r.consistent);
        assert!(r.conditions.iter().all(|c| !c.value));
    }

    #[test]
    fn thm_3_3_on_lattice_is_all_true() {
        let r = verify_theorem(&two_lattice(), TheoremId::Thm3_3).unwrap();
        assert!(r.consistent);
        assert!(r.conditions.iter().all(|c| c.value));
    }

    #[test]
    fn trivial_is_consistent_everywhere() {
        for id in TheoremId::ALL {
            assert!(verify_theorem(&SemiringTable::trivial(), id).unwrap().consistent, "{id}");
        }
    }

    #[test]
    fn eta_vs_green() {
        assert!(eta_equals_relation(&two_lattice(), GreenRelation::DDot).unwrap());
        assert!(!eta_equals_relation(&three_element(), GreenRelation::DDot).unwrap());
        assert!(!eta_equals_relation(&three_element(), GreenRelation::DPlus).unwrap());
    }

    #[test]
    fn ids_parse() {
        for id in TheoremId::ALL {
            assert_eq!(id.name().parse::<TheoremId>().unwrap(), id);
        }
        assert!("THM_9_9".parse::<TheoremId>().is_err());
    }

    #[test]
    fn consistency_is_per_clause() {
        let r = TheoremReport::new(
            TheoremId::Thm4_1,
            vec![
                Condition { clause: "i", label: "a".into(), value: true },
                Condition { clause: "i", label: "b".into(), value: true },
                Condition { clause: "ii", label: "c".into(), value: false },
                Condition { clause: "ii", label: "d".into(), value: false },
            ],
        );
        assert!(r.consistent);
    }
}
