//! Terms over `+` and `·`, identities, and exhaustive identity checking.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::table::{Elem, SemiringTable};

#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub enum Term {
    Var(usize),
    Add(Box<Term>, Box<Term>),
    Mul(Box<Term>, Box<Term>),
}

#[allow(clippy::should_implement_trait)]
impl Term {
    pub fn var(i: usize) -> Term {
        Term::Var(i)
    }

    pub fn add(l: Term, r: Term) -> Term {
        Term::Add(Box::new(l), Box::new(r))
    }

    pub fn mul(l: Term, r: Term) -> Term {
        Term::Mul(Box::new(l), Box::new(r))
    }

    /// One more than the largest variable index, or 0 for no variables.
    pub fn nvars(&self) -> usize {
        match self {
            Term::Var(i) => i + 1,
            Term::Add(l, r) | Term::Mul(l, r) => l.nvars().max(r.nvars()),
        }
    }

    /// Applies `f` to every variable index.
    pub fn map_vars(&self, f: &impl Fn(usize) -> usize) -> Term {
        match self {
            Term::Var(i) => Term::Var(f(*i)),
            Term::Add(l, r) => Term::add(l.map_vars(f), r.map_vars(f)),
            Term::Mul(l, r) => Term::mul(l.map_vars(f), r.map_vars(f)),
        }
    }

    /// Evaluates without bounds checks on the assignment.
    #[inline]
    fn eval_unchecked(&self, t: &SemiringTable, env: &[Elem]) -> Elem {
        match self {
            Term::Var(i) => env[*i],
            Term::Add(l, r) => t.add(l.eval_unchecked(t, env), r.eval_unchecked(t, env)),
            Term::Mul(l, r) => t.mul(l.eval_unchecked(t, env), r.eval_unchecked(t, env)),
        }
    }

    fn write(&self, f: &mut fmt::Formatter<'_>, in_product: bool) -> fmt::Result {
        match self {
            Term::Var(i) => f.write_str(&var_name(*i)),
            Term::Add(l, r) => {
                if in_product {
                    f.write_str("(")?;
                }
                l.write(f, false)?;
                f.write_str("+")?;
                r.write(f, false)?;
                if in_product {
                    f.write_str(")")?;
                }
                Ok(())
            }
            Term::Mul(l, r) => {
                l.write(f, true)?;
                r.write(f, true)
            }
        }
    }
}

const VAR_LETTERS: &str = "xyzwuvst";

fn var_name(i: usize) -> String {
    match VAR_LETTERS.chars().nth(i) {
        Some(c) => c.to_string(),
        None => format!("v{i}"),
    }
}

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.write(f, false)
    }
}

/// Value of `term` under `assignment`.
pub fn eval_term(t: &SemiringTable, term: &Term, assignment: &[Elem]) -> Result<Elem> {
    let needed = term.nvars();
    if assignment.len() < needed {
        return Err(Error::Precondition(format!("term uses {needed} variables, assignment has {}", assignment.len())));
    }
    if let Some(&bad) = assignment.iter().find(|&&e| e >= t.order()) {
        return Err(Error::Precondition(format!("element {bad} out of range")));
    }
    Ok(term.eval_unchecked(t, assignment))
}

/// An equation `lhs ≈ rhs` in `nvars` variables.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Identity {
    pub lhs: Term,
    pub rhs: Term,
    pub nvars: usize,
}

impl Identity {
    pub fn new(lhs: Term, rhs: Term) -> Identity {
        let nvars = lhs.nvars().max(rhs.nvars());
        Identity { lhs, rhs, nvars }
    }

    /// Parses `"lhs = rhs"` (also accepts `≈`).
    ///
    /// Variables are single letters; `x, y, z, w, u, v, s, t` get indices in
    /// that order, any other letters follow alphabetically. Indices are made
    /// contiguous over the letters actually used. Juxtaposition is `·`, which
    /// binds tighter than `+`.
    pub fn parse(src: &str) -> Result<Identity> {
        let normalized = src.replace('≈', "=");
        let (l, r) = normalized.split_once('=').ok_or_else(|| Error::Parse(format!("identity {src:?} has no '='")))?;
        let mut letters: Vec<char> = normalized.chars().filter(char::is_ascii_alphabetic).collect();
        letters.sort_by_key(|&c| (VAR_LETTERS.find(c).unwrap_or(usize::MAX), c));
        letters.dedup();
        let lhs = TermParser::new(l, &letters).parse_all()?;
        let rhs = TermParser::new(r, &letters).parse_all()?;
        Ok(Identity::new(lhs, rhs))
    }

    /// Lexicographically first assignment on which the two sides differ.
    pub fn counterexample(&self, t: &SemiringTable) -> Option<Vec<Elem>> {
        let n = t.order();
        let k = self.nvars;
        let mut env = vec![0; k];
        loop {
            if self.lhs.eval_unchecked(t, &env) != self.rhs.eval_unchecked(t, &env) {
                return Some(env);
            }
            // odometer with the last variable fastest
            let mut pos = k;
            loop {
                if pos == 0 {
                    return None;
                }
                pos -= 1;
                env[pos] += 1;
                if env[pos] < n {
                    break;
                }
                env[pos] = 0;
            }
        }
    }

    pub fn holds_in(&self, t: &SemiringTable) -> bool {
        self.counterexample(t).is_none()
    }
}

impl fmt::Display for Identity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} ≈ {}", self.lhs, self.rhs)
    }
}

impl FromStr for Identity {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Identity::parse(s)
    }
}

/// Outcome of [`satisfies_identity`].
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct IdentityCheck {
    pub holds: bool,
    /// First failing assignment, indexed by variable.
    pub counterexample: Option<Vec<Elem>>,
}

/// Exhaustive check of `id` over all `nⁿᵛᵃʳˢ` assignments.
pub fn satisfies_identity(t: &SemiringTable, id: &Identity) -> IdentityCheck {
    let counterexample = id.counterexample(t);
    IdentityCheck { holds: counterexample.is_none(), counterexample }
}

struct TermParser<'a> {
    chars: Vec<char>,
    pos: usize,
    letters: &'a [char],
}

impl<'a> TermParser<'a> {
    fn new(src: &str, letters: &'a [char]) -> Self {
        TermParser {
            chars: src.chars().filter(|c| !c.is_whitespace() && *c != '·' && *c != '*').collect(),
            pos: 0,
            letters,
        }
    }

    fn parse_all(mut self) -> Result<Term> {
        let t = self.sum()?;
        if self.pos != self.chars.len() {
            return Err(self.error("trailing input"));
        }
        Ok(t)
    }

    fn error(&self, msg: &str) -> Error {
        let src: String = self.chars.iter().collect();
        Error::Parse(format!("{msg} at position {} in {src:?}", self.pos))
    }

    fn peek(&self) -> Option<char> {
        self.chars.get(self.pos).copied()
    }

    fn sum(&mut self) -> Result<Term> {
        let mut acc = self.product()?;
        while self.peek() == Some('+') {
            self.pos += 1;
            let rhs = self.product()?;
            acc = Term::add(acc, rhs);
        }
        Ok(acc)
    }

    fn product(&mut self) -> Result<Term> {
        let mut acc = self.factor()?;
        while matches!(self.peek(), Some(c) if c == '(' || c.is_ascii_alphabetic()) {
            let rhs = self.factor()?;
            acc = Term::mul(acc, rhs);
        }
        Ok(acc)
    }

    fn factor(&mut self) -> Result<Term> {
        match self.peek() {
            Some('(') => {
                self.pos += 1;
                let t = self.sum()?;
                if self.peek() != Some(')') {
                    return Err(self.error("expected ')'"));
                }
                self.pos += 1;
                Ok(t)
            }
            Some(c) if c.is_ascii_alphabetic() => {
                self.pos += 1;
                let idx = self.letters.iter().position(|&l| l == c).expect("letter collected");
                Ok(Term::Var(idx))
            }
            _ => Err(self.error("expected variable or '('")),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::examples::{three_element, two_lattice};

    const A: Elem = 0;
    const B: Elem = 1;
    const C: Elem = 2;

    #[test]
    fn eval_examples() {
        let t = three_element();
        let id = Identity::parse("x+xyx+x = x").unwrap();
        assert_eq!(eval_term(&t, &id.lhs, &[C, B]).unwrap(), B);
        let xyx = Identity::parse("xyx = x").unwrap().lhs;
        assert_eq!(eval_term(&t, &xyx, &[A, B]).unwrap(), A);
        for e in t.elements() {
            assert_eq!(eval_term(&t, &Term::var(0), &[e]).unwrap(), e);
        }
    }

    #[test]
    fn eval_rejects_short_assignment() {
        let t = three_element();
        let id = Identity::parse("xy = yx").unwrap();
        assert!(eval_term(&t, &id.lhs, &[0]).is_err());
        assert!(eval_term(&t, &id.lhs, &[0, 7]).is_err());
    }

    #[test]
    fn commutativity_fails_at_a_b() {
        let t = three_element();
        let check = satisfies_identity(&t, &Identity::parse("xy = yx").unwrap());
        assert!(!check.holds);
        assert_eq!(check.counterexample, Some(vec![A, B]));
    }

    #[test]
    fn n_identity_fails_at_c_b() {
        let t = three_element();
        let check = satisfies_identity(&t, &Identity::parse("x+xyx+x = x").unwrap());
        assert!(!check.holds);
        assert_eq!(check.counterexample, Some(vec![C, B]));
    }

    #[test]
    fn idempotency_holds() {
        for t in [three_element(), two_lattice()] {
            assert!(satisfies_identity(&t, &Identity::parse("x+x = x").unwrap()).holds);
            assert!(satisfies_identity(&t, &Identity::parse("xx = x").unwrap()).holds);
        }
    }

    #[test]
    fn parser_precedence_and_display() {
        let id = Identity::parse("x ≈ x(y+x+y)").unwrap();
        assert_eq!(id.nvars, 2);
        assert_eq!(id.to_string(), "x ≈ x(y+x+y)");
        let id = Identity::parse("xz = xyz+xz").unwrap();
        // x, y, z keep their canonical order
        assert_eq!(id.to_string(), "xz ≈ xyz+xz");
        assert_eq!(id.nvars, 3);
        assert!(Identity::parse("x+ = x").is_err());
        assert!(Identity::parse("x(y = x").is_err());
        assert!(Identity::parse("xy").is_err());
    }

    #[test]
    fn parser_compacts_variables() {
        let id = Identity::parse("xz = zx").unwrap();
        assert_eq!(id.nvars, 2);
        assert_eq!(id.lhs, Term::mul(Term::var(0), Term::var(1)));
    }
}
