//! Multiplication tables of finite semigroups and monoids.

use crate::elem::{Elem, ElemSet};
use crate::error::{Error, Result};

/// An associative binary operation on a finite set, stored row-major over
/// the sorted carrier.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SemigroupTable {
    set: ElemSet,
    table: Vec<u32>,
}

fn check_closed(set: &ElemSet, table: &[u32]) -> Result<()> {
    let n = set.len();
    if n == 0 {
        return Err(Error::Structure("a semigroup needs a nonempty carrier".into()));
    }
    if table.len() != n * n {
        return Err(Error::Structure(format!("a table over {n} elements needs {} entries", n * n)));
    }
    if let Some(bad) = table.iter().find(|&&v| v as usize >= n) {
        return Err(Error::Structure(format!("table entry {bad} is outside the carrier")));
    }
    Ok(())
}

fn first_non_associative(n: usize, mul: impl Fn(usize, usize) -> usize) -> Option<(usize, usize, usize)> {
    for a in 0..n {
        for b in 0..n {
            let ab = mul(a, b);
            for c in 0..n {
                if mul(ab, c) != mul(a, mul(b, c)) {
                    return Some((a, b, c));
                }
            }
        }
    }
    None
}

impl SemigroupTable {
    /// Builds a table from indices into `set`; rejects non-associative tables
    /// and reports the first failing triple.
    pub fn from_indices(set: ElemSet, table: Vec<u32>) -> Result<SemigroupTable> {
        check_closed(&set, &table)?;
        let n = set.len();
        if let Some((a, b, c)) = first_non_associative(n, |x, y| table[x * n + y] as usize) {
            return Err(Error::NotAssociative {
                a: set.get(a).to_string(),
                b: set.get(b).to_string(),
                c: set.get(c).to_string(),
            });
        }
        Ok(SemigroupTable { set, table })
    }

    /// Builds a table whose associativity is guaranteed by construction
    /// (for instance composition of transformations).
    pub(crate) fn from_fn_associative(
        set: ElemSet,
        mut mul: impl FnMut(&Elem, &Elem) -> Result<Elem>,
    ) -> Result<SemigroupTable> {
        let mut table = Vec::with_capacity(set.len() * set.len());
        for x in set.iter() {
            for y in set.iter() {
                let z = mul(x, y)?;
                table.push(set.require(&z, "closed carrier")? as u32);
            }
        }
        check_closed(&set, &table)?;
        Ok(SemigroupTable { set, table })
    }

    /// Builds a table from a product function on elements.
    pub fn from_fn(set: ElemSet, mut mul: impl FnMut(&Elem, &Elem) -> Elem) -> Result<SemigroupTable> {
        let mut table = Vec::with_capacity(set.len() * set.len());
        for x in set.iter() {
            for y in set.iter() {
                let z = mul(x, y);
                table.push(set.require(&z, "semigroup carrier")? as u32);
            }
        }
        SemigroupTable::from_indices(set, table)
    }

    /// Builds a table from `((x, y), x·y)` entries covering every pair.
    pub fn from_entries(set: ElemSet, entries: &[((Elem, Elem), Elem)]) -> Result<SemigroupTable> {
        let n = set.len();
        let mut table = vec![u32::MAX; n * n];
        for ((x, y), z) in entries {
            let i = set.require(x, "semigroup carrier")?;
            let j = set.require(y, "semigroup carrier")?;
            let k = set.require(z, "semigroup carrier")?;
            if table[i * n + j] != u32::MAX {
                return Err(Error::Structure(format!("product {x}·{y} is given twice")));
            }
            table[i * n + j] = k as u32;
        }
        if let Some(p) = table.iter().position(|&v| v == u32::MAX) {
            return Err(Error::Structure(format!("product {}·{} is missing", set.get(p / n), set.get(p % n))));
        }
        SemigroupTable::from_indices(set, table)
    }

    pub fn carrier(&self) -> &ElemSet {
        &self.set
    }

    pub fn len(&self) -> usize {
        self.set.len()
    }

    pub fn is_empty(&self) -> bool {
        self.set.is_empty()
    }

    pub fn mul_idx(&self, a: usize, b: usize) -> usize {
        self.table[a * self.set.len() + b] as usize
    }

    pub fn mul(&self, a: &Elem, b: &Elem) -> Result<Elem> {
        let i = self.set.require(a, "semigroup carrier")?;
        let j = self.set.require(b, "semigroup carrier")?;
        Ok(self.set.get(self.mul_idx(i, j)).clone())
    }

    pub fn indices(&self) -> &[u32] {
        &self.table
    }

    /// `((x, y), x·y)` for every pair, in carrier order.
    pub fn entries(&self) -> Vec<((Elem, Elem), Elem)> {
        let n = self.set.len();
        let mut out = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                out.push((
                    (self.set.get(i).clone(), self.set.get(j).clone()),
                    self.set.get(self.mul_idx(i, j)).clone(),
                ));
            }
        }
        out
    }

    /// Index of a two-sided identity, if there is one.
    pub fn identity(&self) -> Option<usize> {
        let n = self.set.len();
        (0..n).find(|&e| (0..n).all(|x| self.mul_idx(e, x) == x && self.mul_idx(x, e) == x))
    }

    /// Whether the semigroup is a group.
    pub fn is_group(&self) -> bool {
        let n = self.set.len();
        match self.identity() {
            None => false,
            Some(e) => (0..n).all(|x| (0..n).any(|y| self.mul_idx(x, y) == e && self.mul_idx(y, x) == e)),
        }
    }

    /// The opposite semigroup, `x ·op y = y · x`.
    pub fn opposite(&self) -> SemigroupTable {
        let n = self.set.len();
        let table = (0..n * n).map(|p| self.table[(p % n) * n + p / n]).collect();
        SemigroupTable { set: self.set.clone(), table }
    }
}

/// A finite monoid: a semigroup table with a designated identity.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct MonoidTable {
    semigroup: SemigroupTable,
    identity: usize,
}

impl MonoidTable {
    pub fn new(semigroup: SemigroupTable, identity: &Elem) -> Result<MonoidTable> {
        let e = semigroup.carrier().require(identity, "monoid carrier")?;
        let n = semigroup.len();
        if let Some(x) = (0..n).find(|&x| semigroup.mul_idx(e, x) != x || semigroup.mul_idx(x, e) != x) {
            return Err(Error::Structure(format!(
                "{identity} is not an identity: it fails against {}",
                semigroup.carrier().get(x)
            )));
        }
        Ok(MonoidTable { semigroup, identity: e })
    }

    pub fn semigroup(&self) -> &SemigroupTable {
        &self.semigroup
    }

    pub fn carrier(&self) -> &ElemSet {
        self.semigroup.carrier()
    }

    pub fn len(&self) -> usize {
        self.semigroup.len()
    }

    pub fn is_empty(&self) -> bool {
        self.semigroup.is_empty()
    }

    pub fn identity_idx(&self) -> usize {
        self.identity
    }

    pub fn identity(&self) -> &Elem {
        self.carrier().get(self.identity)
    }

    pub fn mul_idx(&self, a: usize, b: usize) -> usize {
        self.semigroup.mul_idx(a, b)
    }

    /// Product of a sequence of indices, left to right (identity if empty).
    pub fn product(&self, items: impl IntoIterator<Item = usize>) -> usize {
        items.into_iter().fold(self.identity, |acc, x| self.mul_idx(acc, x))
    }
}

/// Closes a set of generators under a binary operation, starting from the
/// given seeds. Fails once more than `cap` elements appear.
pub fn close_under(
    seeds: Vec<Elem>,
    mut mul: impl FnMut(&Elem, &Elem) -> Result<Elem>,
    cap: usize,
    what: &str,
) -> Result<ElemSet> {
    let mut elems: Vec<Elem> = Vec::new();
    let mut seen = std::collections::HashSet::new();
    for s in seeds {
        if seen.insert(s.clone()) {
            elems.push(s);
        }
    }
    let generators = elems.clone();
    let mut i = 0;
    while i < elems.len() {
        let x = elems[i].clone();
        for g in &generators {
            for z in [mul(&x, g)?, mul(g, &x)?] {
                if seen.insert(z.clone()) {
                    elems.push(z);
                    if elems.len() > cap {
                        return Err(Error::CapExceeded {
                            what: what.to_string(),
                            size: format!("more than {cap}"),
                            cap: cap as u64,
                        });
                    }
                }
            }
        }
        i += 1;
    }
    Ok(ElemSet::new(elems))
}
