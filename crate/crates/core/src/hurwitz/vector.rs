use std::fmt;
use std::str::FromStr;

use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::group::{check_modulus, generates, DihedralAut, DihedralElement};

/// A vector `(c_1, ..., c_d; a_1, b_1, ..., a_g', b_g')` in `D_n`.
///
/// Vectors with the same shape compare lexicographically entry by entry, `c` first.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct HurwitzVector {
    n: u32,
    g_prime: u32,
    c: Vec<DihedralElement>,
    ab: Vec<DihedralElement>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case", tag = "reason")]
pub enum HsFailure {
    FailsNontrivial { position: usize },
    FailsGeneration,
    FailsEvaluation { value: DihedralElement },
}

impl fmt::Display for HsFailure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            HsFailure::FailsNontrivial { position } => write!(f, "fails_nontrivial (c_{} = e)", position + 1),
            HsFailure::FailsGeneration => write!(f, "fails_generation"),
            HsFailure::FailsEvaluation { value } => write!(f, "fails_evaluation (ev = {value})"),
        }
    }
}

impl HurwitzVector {
    pub fn new(n: u32, g_prime: u32, c: Vec<DihedralElement>, ab: Vec<DihedralElement>) -> Result<Self> {
        check_modulus(n)?;
        if ab.len() != 2 * g_prime as usize {
            return Err(Error::precondition(format!(
                "expected {} handle entries for g' = {g_prime}, got {}",
                2 * g_prime,
                ab.len()
            )));
        }
        for e in c.iter().chain(&ab) {
            if e.n() != n {
                return Err(Error::ModulusMismatch(n, e.n()));
            }
        }
        Ok(Self { n, g_prime, c, ab })
    }

    /// Builds a vector from entries written in the element grammar.
    pub fn from_strs(n: u32, g_prime: u32, c: &[&str], ab: &[&str]) -> Result<Self> {
        let parse = |items: &[&str]| items.iter().map(|s| DihedralElement::parse(n, s)).collect::<Result<Vec<_>>>();
        Self::new(n, g_prime, parse(c)?, parse(ab)?)
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn g_prime(&self) -> u32 {
        self.g_prime
    }

    pub fn d(&self) -> usize {
        self.c.len()
    }

    pub fn len(&self) -> usize {
        self.c.len() + self.ab.len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn c(&self) -> &[DihedralElement] {
        &self.c
    }

    pub fn ab(&self) -> &[DihedralElement] {
        &self.ab
    }

    /// `a_l`, with `l` counted from 1.
    pub fn a(&self, l: usize) -> DihedralElement {
        self.ab[2 * (l - 1)]
    }

    /// `b_l`, with `l` counted from 1.
    pub fn b(&self, l: usize) -> DihedralElement {
        self.ab[2 * (l - 1) + 1]
    }

    pub fn entries(&self) -> impl Iterator<Item = &DihedralElement> {
        self.c.iter().chain(&self.ab)
    }

    pub fn same_shape(&self, other: &Self) -> bool {
        self.n == other.n && self.g_prime == other.g_prime && self.d() == other.d()
    }

    /// `∏ c_j · ∏ [a_i, b_i]`.
    pub fn evaluate(&self) -> DihedralElement {
        let mut acc = DihedralElement::identity(self.n);
        for c in &self.c {
            acc = acc * *c;
        }
        for pair in self.ab.chunks(2) {
            acc = acc * pair[0].commutator(&pair[1]);
        }
        acc
    }

    pub fn check_hurwitz(&self) -> std::result::Result<(), HsFailure> {
        if let Some(position) = self.c.iter().position(|c| c.is_identity()) {
            return Err(HsFailure::FailsNontrivial { position });
        }
        let all: Vec<_> = self.entries().copied().collect();
        if !generates(self.n, &all) {
            return Err(HsFailure::FailsGeneration);
        }
        let value = self.evaluate();
        if !value.is_identity() {
            return Err(HsFailure::FailsEvaluation { value });
        }
        Ok(())
    }

    pub fn is_hurwitz_system(&self) -> bool {
        self.check_hurwitz().is_ok()
    }

    pub(crate) fn require_hurwitz(&self) -> Result<()> {
        self.check_hurwitz().map_err(Error::NotHurwitz)
    }

    pub fn map_entries(&self, f: impl Fn(&DihedralElement) -> DihedralElement) -> Self {
        Self {
            n: self.n,
            g_prime: self.g_prime,
            c: self.c.iter().map(&f).collect(),
            ab: self.ab.iter().map(&f).collect(),
        }
    }

    pub fn apply_aut(&self, f: &DihedralAut) -> Self {
        self.map_entries(|e| f.apply(e))
    }

    pub fn conjugate_by(&self, g: &DihedralElement) -> Self {
        self.map_entries(|e| e.conjugate_by(g))
    }

    pub(crate) fn to_indices(&self) -> Vec<u8> {
        self.entries().map(|e| e.index() as u8).collect()
    }

    pub(crate) fn from_indices(n: u32, g_prime: u32, d: usize, idx: &[u8]) -> Self {
        let el = |i: &u8| DihedralElement::from_index(n, *i as usize);
        Self { n, g_prime, c: idx[..d].iter().map(el).collect(), ab: idx[d..].iter().map(el).collect() }
    }
}

fn write_list(f: &mut fmt::Formatter<'_>, items: &[DihedralElement]) -> fmt::Result {
    write!(f, "[")?;
    for (i, e) in items.iter().enumerate() {
        if i > 0 {
            write!(f, ",")?;
        }
        write!(f, "{e}")?;
    }
    write!(f, "]")
}

impl fmt::Display for HurwitzVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "n={} g={} c=", self.n, self.g_prime)?;
        write_list(f, &self.c)?;
        write!(f, " ab=")?;
        write_list(f, &self.ab)
    }
}

impl FromStr for HurwitzVector {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let mut n = None;
        let mut g = None;
        let mut c = None;
        let mut ab = None;
        let mut rest = s.trim();
        while !rest.is_empty() {
            let (key, after) = rest.split_once('=').ok_or_else(|| Error::parse(format!("expected key=value in {s:?}")))?;
            let key = key.trim();
            let after = after.trim_start();
            let (value, tail) = if after.starts_with('[') {
                let close = after.find(']').ok_or_else(|| Error::parse(format!("unclosed list in {s:?}")))?;
                (&after[..=close], &after[close + 1..])
            } else {
                let end = after.find(char::is_whitespace).unwrap_or(after.len());
                (&after[..end], &after[end..])
            };
            let number = |v: &str| v.parse::<u32>().map_err(|_| Error::parse(format!("bad integer {v:?}")));
            let list = |v: &str| -> Vec<String> {
                let inner = v.trim_start_matches('[').trim_end_matches(']');
                inner.split(',').map(str::trim).filter(|t| !t.is_empty()).map(String::from).collect()
            };
            let slot_taken = match key {
                "n" => n.replace(number(value)?).is_some(),
                "g" => g.replace(number(value)?).is_some(),
                "c" if value.starts_with('[') => c.replace(list(value)).is_some(),
                "ab" if value.starts_with('[') => ab.replace(list(value)).is_some(),
                _ => return Err(Error::parse(format!("unexpected field {key:?}"))),
            };
            if slot_taken {
                return Err(Error::parse(format!("duplicate field {key:?}")));
            }
            rest = tail.trim_start();
        }
        let missing = |k: &str| Error::parse(format!("missing field {k:?}"));
        let n = n.ok_or_else(|| missing("n"))?;
        let g = g.ok_or_else(|| missing("g"))?;
        let parse_all = |items: Vec<String>| {
            items.iter().map(|t| DihedralElement::parse(n, t)).collect::<Result<Vec<_>>>()
        };
        let c = parse_all(c.ok_or_else(|| missing("c"))?)?;
        let ab = parse_all(ab.ok_or_else(|| missing("ab"))?)?;
        Self::new(n, g, c, ab)
    }
}

impl Serialize for HurwitzVector {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(s: &str) -> HurwitzVector {
        s.parse().unwrap()
    }

    #[test]
    fn evaluation_examples() {
        assert!(v("n=4 g=2 c=[] ab=[y,e,x,e]").evaluate().is_identity());
        assert!(v("n=3 g=1 c=[x] ab=[x*y,y]").evaluate().is_identity());
        let yx = v("n=5 g=0 c=[y,x] ab=[]").evaluate();
        assert_eq!(yx, DihedralElement::parse(5, "x^4*y").unwrap());
    }

    #[test]
    fn membership_examples() {
        assert!(v("n=4 g=2 c=[] ab=[y,e,x,e]").is_hurwitz_system());
        assert_eq!(v("n=3 g=0 c=[x,x,x] ab=[]").check_hurwitz(), Err(HsFailure::FailsGeneration));
        assert!(v("n=3 g=1 c=[y,y] ab=[x,e]").is_hurwitz_system());
        assert_eq!(
            v("n=3 g=1 c=[e,y] ab=[x,e]").check_hurwitz(),
            Err(HsFailure::FailsNontrivial { position: 0 })
        );
        assert!(matches!(v("n=3 g=0 c=[y,x*y] ab=[]").check_hurwitz(), Err(HsFailure::FailsEvaluation { .. })));
    }

    #[test]
    fn text_round_trip() {
        let text = "n=6 g=1 c=[x^5,x*y,x^2*y] ab=[y,e]";
        assert_eq!(v(text).to_string(), text);
        assert_eq!(v("  n=3   g=0 c=[ y , y ]  ab=[] ").to_string(), "n=3 g=0 c=[y,y] ab=[]");
    }

    #[test]
    fn malformed_text() {
        for bad in [
            "n=3 g=1 c=[] ab=[x]",
            "n=3 g=0 c=[x^3] ab=[]",
            "n=3 c=[] ab=[]",
            "n=3 g=0 c=[] ab=[] z=1",
            "n=3 g=0 c=[x ab=[]",
            "n=1 g=0 c=[] ab=[]",
        ] {
            assert!(bad.parse::<HurwitzVector>().is_err(), "{bad}");
        }
    }

    #[test]
    fn handle_accessors() {
        let w = v("n=5 g=2 c=[] ab=[y,x,x^2,x^3]");
        assert_eq!(w.a(2).to_string(), "x^2");
        assert_eq!(w.b(1).to_string(), "x");
    }
}
