//! Payload elements, finite sets of elements and finite function tables.
//!
//! Everything the library manipulates (letters, carrier elements of
//! algebras, states of machines, contexts) is an [`Elem`]. Elements are
//! cheap to clone: composite variants share their contents through `Arc`.

use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::moconad::MVal;

/// A value drawn from some finite set.
///
/// The derived ordering is total and is used as the canonical order
/// everywhere (sorted carriers, sorted function tables, canonical JSON).
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Elem {
    Symbol(Arc<str>),
    Int(i64),
    Pair(Arc<(Elem, Elem)>),
    Seq(Arc<[Elem]>),
    FnTable(FnTable),
    Wrapped(Arc<MVal>),
}

impl Elem {
    pub fn sym(name: &str) -> Elem {
        Elem::Symbol(Arc::from(name))
    }

    pub fn int(n: i64) -> Elem {
        Elem::Int(n)
    }

    pub fn pair(a: Elem, b: Elem) -> Elem {
        Elem::Pair(Arc::new((a, b)))
    }

    pub fn seq(items: Vec<Elem>) -> Elem {
        Elem::Seq(Arc::from(items))
    }

    pub fn wrap(value: MVal) -> Elem {
        Elem::Wrapped(Arc::new(value))
    }

    /// The canonical one-point element used by `shape`.
    pub fn dot() -> Elem {
        Elem::sym("•")
    }

    pub fn as_pair(&self) -> Option<(&Elem, &Elem)> {
        match self {
            Elem::Pair(p) => Some((&p.0, &p.1)),
            _ => None,
        }
    }

    pub fn as_seq(&self) -> Option<&[Elem]> {
        match self {
            Elem::Seq(s) => Some(s),
            _ => None,
        }
    }

    pub fn as_table(&self) -> Option<&FnTable> {
        match self {
            Elem::FnTable(t) => Some(t),
            _ => None,
        }
    }

    pub fn as_wrapped(&self) -> Option<&MVal> {
        match self {
            Elem::Wrapped(v) => Some(v),
            _ => None,
        }
    }
}

impl fmt::Display for Elem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Elem::Symbol(s) => write!(f, "{s}"),
            Elem::Int(n) => write!(f, "{n}"),
            Elem::Pair(p) => write!(f, "({}, {})", p.0, p.1),
            Elem::Seq(items) => {
                write!(f, "[")?;
                for (i, x) in items.iter().enumerate() {
                    if i > 0 {
                        write!(f, ", ")?;
                    }
                    write!(f, "{x}")?;
                }
                write!(f, "]")
            }
            Elem::FnTable(t) => write!(f, "{t}"),
            Elem::Wrapped(v) => write!(f, "{v}"),
        }
    }
}

impl fmt::Debug for Elem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl From<&str> for Elem {
    fn from(s: &str) -> Elem {
        Elem::sym(s)
    }
}

impl From<i64> for Elem {
    fn from(n: i64) -> Elem {
        Elem::Int(n)
    }
}

/// A finite set of elements kept sorted and duplicate free.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct ElemSet {
    items: Arc<[Elem]>,
}

impl ElemSet {
    pub fn new(mut items: Vec<Elem>) -> ElemSet {
        items.sort();
        items.dedup();
        ElemSet { items: Arc::from(items) }
    }

    pub fn len(&self) -> usize {
        self.items.len()
    }

    pub fn is_empty(&self) -> bool {
        self.items.is_empty()
    }

    pub fn iter(&self) -> std::slice::Iter<'_, Elem> {
        self.items.iter()
    }

    pub fn as_slice(&self) -> &[Elem] {
        &self.items
    }

    pub fn get(&self, i: usize) -> &Elem {
        &self.items[i]
    }

    pub fn index_of(&self, x: &Elem) -> Option<usize> {
        self.items.binary_search(x).ok()
    }

    pub fn contains(&self, x: &Elem) -> bool {
        self.index_of(x).is_some()
    }

    pub fn is_subset(&self, other: &ElemSet) -> bool {
        self.iter().all(|x| other.contains(x))
    }

    /// Index of `x`, or a `NotInSet` error naming `what`.
    pub fn require(&self, x: &Elem, what: &str) -> Result<usize> {
        self.index_of(x).ok_or_else(|| Error::NotInSet { what: what.to_string(), elem: x.to_string() })
    }
}

impl fmt::Debug for ElemSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.items.iter()).finish()
    }
}

impl<'a> IntoIterator for &'a ElemSet {
    type Item = &'a Elem;
    type IntoIter = std::slice::Iter<'a, Elem>;
    fn into_iter(self) -> Self::IntoIter {
        self.items.iter()
    }
}

impl FromIterator<Elem> for ElemSet {
    fn from_iter<I: IntoIterator<Item = Elem>>(iter: I) -> Self {
        ElemSet::new(iter.into_iter().collect())
    }
}

/// A total function on a finite, sorted domain.
///
/// Two tables are equal exactly when they have the same domain and agree
/// everywhere, so tables can serve as carrier elements (contexts,
/// behaviours of Mealy machines, second components of wreath products).
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct FnTable {
    domain: ElemSet,
    values: Arc<[Elem]>,
}

impl FnTable {
    /// Builds a table from a domain and the images of its elements, in the
    /// domain's sorted order.
    pub fn from_values(domain: ElemSet, values: Vec<Elem>) -> Result<FnTable> {
        if domain.len() != values.len() {
            return Err(Error::Structure(format!(
                "function table has {} values for a domain of {} elements",
                values.len(),
                domain.len()
            )));
        }
        Ok(FnTable { domain, values: Arc::from(values) })
    }

    /// Builds a table from `[input, output]` pairs; every input must be
    /// distinct.
    pub fn from_pairs(pairs: Vec<(Elem, Elem)>) -> Result<FnTable> {
        let mut pairs = pairs;
        pairs.sort_by(|a, b| a.0.cmp(&b.0));
        for w in pairs.windows(2) {
            if w[0].0 == w[1].0 {
                return Err(Error::Structure(format!("function table maps {} twice", w[0].0)));
            }
        }
        let (dom, vals): (Vec<Elem>, Vec<Elem>) = pairs.into_iter().unzip();
        Ok(FnTable { domain: ElemSet { items: Arc::from(dom) }, values: Arc::from(vals) })
    }

    pub fn tabulate(domain: &ElemSet, mut f: impl FnMut(&Elem) -> Elem) -> FnTable {
        let values: Vec<Elem> = domain.iter().map(&mut f).collect();
        FnTable { domain: domain.clone(), values: Arc::from(values) }
    }

    pub fn try_tabulate(domain: &ElemSet, mut f: impl FnMut(&Elem) -> Result<Elem>) -> Result<FnTable> {
        let values = domain.iter().map(&mut f).collect::<Result<Vec<Elem>>>()?;
        Ok(FnTable { domain: domain.clone(), values: Arc::from(values) })
    }

    pub fn identity(domain: &ElemSet) -> FnTable {
        FnTable { domain: domain.clone(), values: Arc::from(domain.as_slice().to_vec()) }
    }

    pub fn domain(&self) -> &ElemSet {
        &self.domain
    }

    pub fn values(&self) -> &[Elem] {
        &self.values
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn get(&self, x: &Elem) -> Option<&Elem> {
        self.domain.index_of(x).map(|i| &self.values[i])
    }

    pub fn apply(&self, x: &Elem) -> Result<Elem> {
        self.get(x)
            .cloned()
            .ok_or_else(|| Error::NotInSet { what: "function table domain".into(), elem: x.to_string() })
    }

    pub fn pairs(&self) -> impl Iterator<Item = (&Elem, &Elem)> {
        self.domain.iter().zip(self.values.iter())
    }

    /// `self ∘ inner`: first `inner`, then `self`.
    pub fn compose(&self, inner: &FnTable) -> Result<FnTable> {
        FnTable::try_tabulate(&inner.domain, |x| self.apply(inner.get(x).expect("own domain")))
    }

    pub fn is_identity(&self) -> bool {
        self.domain.as_slice() == &self.values[..]
    }

    /// Every total function from `domain` to `codomain`, in lexicographic
    /// order of their value vectors.
    pub fn all_functions(domain: &ElemSet, codomain: &ElemSet) -> Vec<FnTable> {
        let n = domain.len();
        let k = codomain.len();
        if k == 0 {
            return if n == 0 { vec![FnTable::identity(domain)] } else { Vec::new() };
        }
        let mut out = Vec::new();
        let mut digits = vec![0usize; n];
        loop {
            let values = digits.iter().map(|&d| codomain.get(d).clone()).collect();
            out.push(FnTable { domain: domain.clone(), values });
            let mut i = n;
            loop {
                if i == 0 {
                    return out;
                }
                i -= 1;
                digits[i] += 1;
                if digits[i] < k {
                    break;
                }
                digits[i] = 0;
            }
        }
    }
}

impl fmt::Display for FnTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, (x, y)) in self.pairs().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{x}↦{y}")?;
        }
        write!(f, "}}")
    }
}

impl fmt::Debug for FnTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn set(xs: &[&str]) -> ElemSet {
        xs.iter().map(|x| Elem::sym(x)).collect()
    }

    #[test]
    fn elem_set_sorts_and_dedups() {
        let s = set(&["b", "a", "b"]);
        assert_eq!(s.len(), 2);
        assert_eq!(s.get(0), &Elem::sym("a"));
        assert_eq!(s.index_of(&Elem::sym("b")), Some(1));
    }

    #[test]
    fn compose_applies_inner_first() {
        let d = set(&["a", "b"]);
        let swap = FnTable::tabulate(&d, |x| if x == &Elem::sym("a") { Elem::sym("b") } else { Elem::sym("a") });
        let const_a = FnTable::tabulate(&d, |_| Elem::sym("a"));
        let c = const_a.compose(&swap).unwrap();
        assert_eq!(c, const_a);
        let c2 = swap.compose(&const_a).unwrap();
        assert!(c2.values().iter().all(|v| v == &Elem::sym("b")));
        assert!(swap.compose(&swap).unwrap().is_identity());
    }

    #[test]
    fn all_functions_counts() {
        let d = set(&["a", "b", "c"]);
        let e = set(&["x", "y"]);
        let fs = FnTable::all_functions(&d, &e);
        assert_eq!(fs.len(), 8);
        let mut sorted = fs.clone();
        sorted.sort();
        assert_eq!(sorted, fs);
    }

    #[test]
    fn from_pairs_rejects_duplicates() {
        let p = vec![(Elem::sym("a"), Elem::int(1)), (Elem::sym("a"), Elem::int(2))];
        assert!(FnTable::from_pairs(p).is_err());
    }
}
