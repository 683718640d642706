//! Pointed-list algebras on triples `(prefix, letter, suffix)` over a
//! finite monoid.
//!
//! Each letter `a` has a monoid element `δ(a)`, a triple `(m₁, a, m₂)` stands
//! for `m₁·δ(a)·m₂`, and the product of `[t₁, …, (p, a, s)̲, …, tₙ]` is
//! `(t₁⋯tᵢ₋₁·p, a, s·tᵢ₊₁⋯tₙ)`.

use crate::algebra::tables::MonoidTable;
use crate::elem::{Elem, ElemSet, FnTable};
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct TripleAlgebra {
    monoid: MonoidTable,
    letters: ElemSet,
    letter_elems: Vec<u32>,
    carrier: ElemSet,
}

impl TripleAlgebra {
    pub fn new(monoid: MonoidTable, letter_map: &FnTable) -> Result<TripleAlgebra> {
        let letters = letter_map.domain().clone();
        if letters.is_empty() {
            return Err(Error::Structure("a triple algebra needs at least one letter".into()));
        }
        let letter_elems = letter_map
            .values()
            .iter()
            .map(|m| monoid.carrier().require(m, "monoid").map(|i| i as u32))
            .collect::<Result<_>>()?;
        let mut carrier = Vec::with_capacity(monoid.len() * monoid.len() * letters.len());
        for m1 in monoid.carrier().iter() {
            for a in letters.iter() {
                for m2 in monoid.carrier().iter() {
                    carrier.push(Elem::seq(vec![m1.clone(), a.clone(), m2.clone()]));
                }
            }
        }
        Ok(TripleAlgebra { monoid, letters, letter_elems, carrier: ElemSet::new(carrier) })
    }

    pub fn monoid(&self) -> &MonoidTable {
        &self.monoid
    }

    pub fn letters(&self) -> &ElemSet {
        &self.letters
    }

    pub fn carrier(&self) -> &ElemSet {
        &self.carrier
    }

    pub fn letter_map(&self) -> FnTable {
        FnTable::from_values(
            self.letters.clone(),
            self.letter_elems.iter().map(|&i| self.monoid.carrier().get(i as usize).clone()).collect(),
        )
        .expect("letter table")
    }

    /// `(1, a, 1)`.
    pub fn letter(&self, a: &Elem) -> Result<Elem> {
        self.letters.require(a, "letters")?;
        let one = self.monoid.identity().clone();
        Ok(Elem::seq(vec![one.clone(), a.clone(), one]))
    }

    /// Splits a carrier element into monoid indices and the letter index.
    pub fn parts(&self, x: &Elem) -> Result<(usize, usize, usize)> {
        let bad = || Error::NotInSet { what: "triple carrier".into(), elem: x.to_string() };
        let xs = x.as_seq().filter(|xs| xs.len() == 3).ok_or_else(bad)?;
        let m = self.monoid.carrier();
        Ok((
            m.index_of(&xs[0]).ok_or_else(bad)?,
            self.letters.index_of(&xs[1]).ok_or_else(bad)?,
            m.index_of(&xs[2]).ok_or_else(bad)?,
        ))
    }

    /// `m₁·δ(a)·m₂` for a carrier element.
    pub fn total(&self, x: &Elem) -> Result<usize> {
        let (p, a, s) = self.parts(x)?;
        Ok(self.monoid.product([p, self.letter_elems[a] as usize, s]))
    }

    pub fn evaluate(&self, items: &[Elem], focus: usize) -> Result<Elem> {
        let left = self.monoid.product(items[..focus].iter().map(|x| self.total(x)).collect::<Result<Vec<_>>>()?);
        let right = self.monoid.product(items[focus + 1..].iter().map(|x| self.total(x)).collect::<Result<Vec<_>>>()?);
        let (p, a, s) = self.parts(&items[focus])?;
        let m = self.monoid.carrier();
        Ok(Elem::seq(vec![
            m.get(self.monoid.mul_idx(left, p)).clone(),
            self.letters.get(a).clone(),
            m.get(self.monoid.mul_idx(s, right)).clone(),
        ]))
    }
}
