//! Behaviour semigroups of Mealy machines.
//!
//! A behaviour is a table `Q → Q × Γ` recording, for each starting state,
//! the state reached after reading an infix and the output emitted on its
//! last letter. Reading `w` then `v` gives `f_wv = f_v ∘ π₁ ∘ f_w`.

use crate::algebra::tables::close_under;
use crate::elem::{Elem, ElemSet, FnTable};
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct BehaviourSemigroup {
    states: ElemSet,
    carrier: ElemSet,
    /// When set, the product is taken in the opposite order, which is how
    /// right-to-left machines fold suffixes.
    opposite: bool,
}

/// `f · g = g ∘ π₁ ∘ f`.
pub fn then(f: &FnTable, g: &FnTable) -> Result<FnTable> {
    FnTable::try_tabulate(f.domain(), |q| {
        let (next, _) = f
            .apply(q)?
            .as_pair()
            .map(|(a, b)| (a.clone(), b.clone()))
            .ok_or_else(|| Error::Structure("a behaviour maps states to (state, output) pairs".into()))?;
        g.apply(&next)
    })
}

impl BehaviourSemigroup {
    /// The subsemigroup generated by the given behaviours.
    pub fn generated(
        states: ElemSet,
        generators: &[FnTable],
        opposite: bool,
        cap: usize,
    ) -> Result<BehaviourSemigroup> {
        for g in generators {
            if g.domain() != &states {
                return Err(Error::Structure("behaviours must be tables on the state set".into()));
            }
        }
        let carrier = close_under(
            generators.iter().cloned().map(Elem::FnTable).collect(),
            |x, y| Ok(Elem::FnTable(then(x.as_table().expect("table"), y.as_table().expect("table"))?)),
            cap,
            "behaviour semigroup",
        )?;
        Ok(BehaviourSemigroup { states, carrier, opposite })
    }

    /// Rebuilds a behaviour semigroup from its listed carrier, checking
    /// that the carrier is closed under the product.
    pub fn from_parts(states: ElemSet, carrier: ElemSet, opposite: bool) -> Result<BehaviourSemigroup> {
        for f in carrier.iter() {
            match f.as_table() {
                Some(t) if t.domain() == &states => {}
                _ => return Err(Error::Structure(format!("{f} is not a behaviour on the state set"))),
            }
        }
        let b = BehaviourSemigroup { states, carrier, opposite };
        for x in b.carrier.iter() {
            for y in b.carrier.iter() {
                let z = b.mul(x, y)?;
                if !b.carrier.contains(&z) {
                    return Err(Error::ClosureNotStable(format!("{x}·{y} leaves the behaviour carrier")));
                }
            }
        }
        Ok(b)
    }

    pub fn states(&self) -> &ElemSet {
        &self.states
    }

    pub fn carrier(&self) -> &ElemSet {
        &self.carrier
    }

    pub fn is_opposite(&self) -> bool {
        self.opposite
    }

    pub fn mul(&self, x: &Elem, y: &Elem) -> Result<Elem> {
        let table = |e: &Elem| {
            e.as_table()
                .cloned()
                .ok_or_else(|| Error::NotInSet { what: "behaviour semigroup".into(), elem: e.to_string() })
        };
        let (f, g) = (table(x)?, table(y)?);
        let r = if self.opposite { then(&g, &f)? } else { then(&f, &g)? };
        Ok(Elem::FnTable(r))
    }
}
