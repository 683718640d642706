//! Finite Eilenberg-Moore algebras given by finite presentations.
//!
//! A [`FiniteAlgebra`] pairs a functor instance with a carrier and a
//! [`Presentation`] from which the product `∏ : M A → A` is computed.
//! Semigroup tables serve the two list comonads, [`PointedPresentation`]s
//! and [`TripleAlgebra`]s serve pointed lists, [`TermAutomaton`]s serve
//! pointed terms, and wreath products serve every instance.

pub mod behaviour;
pub mod context;
pub mod pointed;
pub mod tables;
pub mod term;
pub mod triple;
pub mod wreath;

use std::sync::Arc;

pub use behaviour::BehaviourSemigroup;
pub use context::{context, context_monoid, is_aperiodic, is_m_group, ContextMonoid};
pub use pointed::{decompose_pointed_algebra, decompose_with_generators, Decomposition, PointedPresentation};
pub use tables::{MonoidTable, SemigroupTable};
pub use term::TermAutomaton;
pub use triple::TripleAlgebra;
pub use wreath::{ClassicalWreath, WreathAlgebra};

use crate::elem::{Elem, ElemSet, FnTable};
use crate::error::{Error, Result};
use crate::functors::{enumerate_nested, enumerate_values};
use crate::moconad::{FunctorKind, MVal, Moconad, MoconadOps};

/// Default cap on the number of carrier elements that may be materialised.
pub const DEFAULT_CARRIER_CAP: usize = 100_000;

/// The carrier of an algebra: either listed, or the lazily described
/// carrier `first × (contexts → second)` of a wreath product.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Carrier {
    Listed(ElemSet),
    Wreath(Arc<WreathCarrier>),
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct WreathCarrier {
    pub first: ElemSet,
    /// Domain of the second component's tables.
    pub contexts: ElemSet,
    pub second: Carrier,
}

impl Carrier {
    pub fn contains(&self, x: &Elem) -> bool {
        match self {
            Carrier::Listed(s) => s.contains(x),
            Carrier::Wreath(w) => match x.as_pair() {
                Some((a, Elem::FnTable(f))) => {
                    w.first.contains(a) && f.domain() == &w.contexts && f.values().iter().all(|v| w.second.contains(v))
                }
                _ => false,
            },
        }
    }

    /// Number of elements, saturating at `u128::MAX`.
    pub fn size(&self) -> u128 {
        match self {
            Carrier::Listed(s) => s.len() as u128,
            Carrier::Wreath(w) => {
                let second = w.second.size();
                let mut tables: u128 = 1;
                for _ in 0..w.contexts.len() {
                    tables = tables.saturating_mul(second);
                }
                tables.saturating_mul(w.first.len() as u128)
            }
        }
    }

    pub fn as_listed(&self) -> Option<&ElemSet> {
        match self {
            Carrier::Listed(s) => Some(s),
            Carrier::Wreath(_) => None,
        }
    }

    /// Every element, refusing when there are more than `cap`.
    pub fn elements(&self, cap: usize) -> Result<ElemSet> {
        match self {
            Carrier::Listed(s) => Ok(s.clone()),
            Carrier::Wreath(w) => {
                let size = self.size();
                if size > cap as u128 {
                    return Err(Error::CapExceeded {
                        what: "wreath product carrier".into(),
                        size: if size == u128::MAX { "too many".into() } else { size.to_string() },
                        cap: cap as u64,
                    });
                }
                let second = w.second.elements(cap)?;
                let tables = FnTable::all_functions(&w.contexts, &second);
                let mut out = Vec::with_capacity(size as usize);
                for a in w.first.iter() {
                    for t in &tables {
                        out.push(Elem::pair(a.clone(), Elem::FnTable(t.clone())));
                    }
                }
                Ok(ElemSet::new(out))
            }
        }
    }
}

/// How the product of an algebra is computed.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Presentation {
    /// Prefix or suffix lists: the product folds the table.
    Semigroup(SemigroupTable),
    /// Prefix or suffix lists: behaviours of a Mealy machine.
    Behaviour(Arc<BehaviourSemigroup>),
    Pointed(Arc<PointedPresentation>),
    Triple(Arc<TripleAlgebra>),
    Term(Arc<TermAutomaton>),
    Wreath(Arc<WreathAlgebra>),
    Classical(Arc<ClassicalWreath>),
}

impl Presentation {
    pub fn kind_name(&self) -> &'static str {
        match self {
            Presentation::Semigroup(_) => "semigroup",
            Presentation::Behaviour(_) => "behaviour",
            Presentation::Pointed(_) => "pointed-presentation",
            Presentation::Triple(_) => "relation-triple",
            Presentation::Term(_) => "term-automaton",
            Presentation::Wreath(_) => "wreath",
            Presentation::Classical(_) => "classical-wreath",
        }
    }
}

/// A finite algebra for one functor instance.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FiniteAlgebra {
    inst: Moconad,
    carrier: Carrier,
    presentation: Presentation,
}

fn list_kind(kind: FunctorKind) -> Result<()> {
    match kind {
        FunctorKind::PrefixList | FunctorKind::SuffixList => Ok(()),
        other => {
            Err(Error::InstanceMismatch { expected: "prefix-list or suffix-list".into(), found: other.name().into() })
        }
    }
}

impl FiniteAlgebra {
    /// The algebra whose product folds an associative table.
    pub fn from_semigroup(table: SemigroupTable, kind: FunctorKind) -> Result<FiniteAlgebra> {
        list_kind(kind)?;
        Ok(FiniteAlgebra {
            inst: Moconad::new(kind, None)?,
            carrier: Carrier::Listed(table.carrier().clone()),
            presentation: Presentation::Semigroup(table),
        })
    }

    pub fn from_behaviour(b: BehaviourSemigroup, kind: FunctorKind) -> Result<FiniteAlgebra> {
        list_kind(kind)?;
        Ok(FiniteAlgebra {
            inst: Moconad::new(kind, None)?,
            carrier: Carrier::Listed(b.carrier().clone()),
            presentation: Presentation::Behaviour(Arc::new(b)),
        })
    }

    pub fn from_pointed(p: PointedPresentation) -> FiniteAlgebra {
        FiniteAlgebra {
            inst: Moconad::pointed_list(),
            carrier: Carrier::Listed(p.carrier().clone()),
            presentation: Presentation::Pointed(Arc::new(p)),
        }
    }

    pub fn from_triple(t: TripleAlgebra) -> FiniteAlgebra {
        FiniteAlgebra {
            inst: Moconad::pointed_list(),
            carrier: Carrier::Listed(t.carrier().clone()),
            presentation: Presentation::Triple(Arc::new(t)),
        }
    }

    pub fn from_term(t: TermAutomaton) -> Result<FiniteAlgebra> {
        Ok(FiniteAlgebra {
            inst: Moconad::pointed_term(t.alphabet().clone())?,
            carrier: Carrier::Listed(t.carrier().clone()),
            presentation: Presentation::Term(Arc::new(t)),
        })
    }

    pub(crate) fn from_parts(inst: Moconad, carrier: Carrier, presentation: Presentation) -> FiniteAlgebra {
        FiniteAlgebra { inst, carrier, presentation }
    }

    pub fn instance(&self) -> &Moconad {
        &self.inst
    }

    pub fn kind(&self) -> FunctorKind {
        self.inst.kind()
    }

    pub fn carrier(&self) -> &Carrier {
        &self.carrier
    }

    pub fn presentation(&self) -> &Presentation {
        &self.presentation
    }

    /// The carrier as a set, materialising wreath carriers up to `cap`.
    pub fn carrier_elements(&self, cap: usize) -> Result<ElemSet> {
        self.carrier.elements(cap)
    }

    /// The carrier when it is stored as a list.
    pub fn listed_carrier(&self) -> Result<&ElemSet> {
        self.carrier.as_listed().ok_or_else(|| {
            Error::Unsupported("this operation needs an explicitly listed carrier, not a wreath product".into())
        })
    }

    /// `∏(m)`, after checking that `m` is a well-formed value of the
    /// instance whose payloads lie in the carrier.
    pub fn evaluate(&self, m: &MVal) -> Result<Elem> {
        if m.kind() != self.inst.kind() {
            return Err(Error::InstanceMismatch { expected: self.inst.name().into(), found: m.kind().name().into() });
        }
        self.inst.validate(m)?;
        for (label, x) in m.position_labels().iter().zip(m.payloads()) {
            if !self.carrier.contains(x) {
                return Err(Error::NotInSet { what: format!("carrier (position {label})"), elem: x.to_string() });
            }
        }
        self.evaluate_unchecked(m)
    }

    /// `∏(m)` for a value already known to be well formed.
    pub(crate) fn evaluate_unchecked(&self, m: &MVal) -> Result<Elem> {
        match (&self.presentation, m) {
            (Presentation::Semigroup(t), MVal::PrefixList(xs) | MVal::SuffixList(xs)) => {
                let set = t.carrier();
                let mut acc = set.require(&xs[0], "carrier")?;
                for x in &xs[1..] {
                    acc = t.mul_idx(acc, set.require(x, "carrier")?);
                }
                Ok(set.get(acc).clone())
            }
            (Presentation::Behaviour(b), MVal::PrefixList(xs) | MVal::SuffixList(xs)) => {
                let mut acc = xs[0].clone();
                for x in &xs[1..] {
                    acc = b.mul(&acc, x)?;
                }
                Ok(acc)
            }
            (Presentation::Classical(c), MVal::PrefixList(xs)) => {
                let mut acc = xs[0].clone();
                for x in &xs[1..] {
                    acc = c.mul(&acc, x)?;
                }
                Ok(acc)
            }
            (Presentation::Pointed(p), MVal::PointedList { items, focus }) => {
                let set = p.carrier();
                let idx = items.iter().map(|x| set.require(x, "carrier")).collect::<Result<Vec<_>>>()?;
                Ok(set.get(p.evaluate_indices(&idx, *focus)).clone())
            }
            (Presentation::Triple(t), MVal::PointedList { items, focus }) => t.evaluate(items, *focus),
            (Presentation::Term(a), MVal::PointedTerm(t)) => a.evaluate(t),
            (Presentation::Wreath(w), _) => w.evaluate(&self.inst, m),
            (p, m) => Err(Error::InstanceMismatch { expected: p.kind_name().into(), found: m.kind().name().into() }),
        }
    }

    /// `∏([x, y])` for the two list instances.
    pub fn mul(&self, x: &Elem, y: &Elem) -> Result<Elem> {
        let m = match self.inst.kind() {
            FunctorKind::PrefixList => MVal::PrefixList(vec![x.clone(), y.clone()]),
            FunctorKind::SuffixList => MVal::SuffixList(vec![x.clone(), y.clone()]),
            other => {
                return Err(Error::InstanceMismatch {
                    expected: "prefix-list or suffix-list".into(),
                    found: other.name().into(),
                })
            }
        };
        self.evaluate_unchecked(&m)
    }

    /// Checks `∏(η(x)) = x` on the carrier and `∏(μ(l)) = ∏(M∏(l))` on all
    /// nested values of total size at most `bound`; reports the first
    /// failure.
    pub fn verify_em_axioms(&self, bound: usize) -> Result<()> {
        let carrier = self.carrier_elements(DEFAULT_CARRIER_CAP)?;
        for x in carrier.iter() {
            let got = self.evaluate_unchecked(&self.inst.unit(x.clone()))?;
            if &got != x {
                return Err(Error::Structure(format!("unit axiom fails at {x}: product of the singleton is {got}")));
            }
        }
        for l in enumerate_nested(&self.inst, &carrier, bound, 2) {
            let lhs = self.evaluate_unchecked(&self.inst.flatten(&l)?)?;
            let inner = l.try_map(&mut |v| self.evaluate_unchecked(v.as_wrapped().expect("nested value")))?;
            let rhs = self.evaluate_unchecked(&inner)?;
            if lhs != rhs {
                return Err(Error::Structure(format!(
                    "multiplication axiom fails at {l}: product of the flattening is {lhs}, product of products is {rhs}"
                )));
            }
        }
        Ok(())
    }

    /// The table `x ↦ ∏(put(m, x))`.
    pub fn context(&self, m: &MVal) -> Result<FnTable> {
        let carrier = self.listed_carrier()?;
        FnTable::try_tabulate(carrier, |x| self.evaluate_unchecked(&self.inst.put(m, x.clone())))
    }

    /// Same as [`FiniteAlgebra::context`] over a given carrier set, used for
    /// carriers that are materialised on demand.
    pub(crate) fn context_over(&self, carrier: &ElemSet, m: &MVal) -> Result<FnTable> {
        FnTable::try_tabulate(carrier, |x| self.evaluate_unchecked(&self.inst.put(m, x.clone())))
    }
}

/// The algebra of an associative table for prefix or suffix lists.
pub fn algebra_from_semigroup(table: SemigroupTable, kind: FunctorKind) -> Result<FiniteAlgebra> {
    FiniteAlgebra::from_semigroup(table, kind)
}

/// The table `x·y = ∏([x, y])` of a list algebra.
pub fn semigroup_from_algebra(alg: &FiniteAlgebra) -> Result<SemigroupTable> {
    list_kind(alg.kind())?;
    if let Presentation::Semigroup(t) = alg.presentation() {
        return Ok(t.clone());
    }
    let carrier = alg.carrier_elements(DEFAULT_CARRIER_CAP)?;
    SemigroupTable::from_fn_associative(carrier, |x, y| alg.mul(x, y))
}

/// Every value of the algebra's instance over its carrier up to `bound`.
pub fn carrier_values(alg: &FiniteAlgebra, bound: usize) -> Result<Vec<MVal>> {
    Ok(enumerate_values(alg.instance(), &alg.carrier_elements(DEFAULT_CARRIER_CAP)?, bound))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn bits() -> ElemSet {
        [Elem::int(0), Elem::int(1)].into_iter().collect()
    }

    fn parity() -> SemigroupTable {
        SemigroupTable::from_indices(bits(), vec![0, 1, 1, 0]).unwrap()
    }

    #[test]
    fn parity_fold() {
        let alg = algebra_from_semigroup(parity(), FunctorKind::PrefixList).unwrap();
        let m = MVal::PrefixList(vec![Elem::int(1), Elem::int(1), Elem::int(1)]);
        assert_eq!(alg.evaluate(&m).unwrap(), Elem::int(1));
        alg.verify_em_axioms(4).unwrap();
        assert_eq!(semigroup_from_algebra(&alg).unwrap(), parity());
    }

    #[test]
    fn max_fold_and_foreign_payload() {
        let max = SemigroupTable::from_indices(bits(), vec![0, 1, 1, 1]).unwrap();
        let alg = algebra_from_semigroup(max, FunctorKind::SuffixList).unwrap();
        let m = MVal::SuffixList(vec![Elem::int(0), Elem::int(1), Elem::int(0)]);
        assert_eq!(alg.evaluate(&m).unwrap(), Elem::int(1));
        let bad = MVal::SuffixList(vec![Elem::int(0), Elem::int(7)]);
        assert!(matches!(alg.evaluate(&bad), Err(Error::NotInSet { .. })));
    }

    #[test]
    fn semigroup_algebra_rejects_pointed_kind() {
        assert!(algebra_from_semigroup(parity(), FunctorKind::PointedList).is_err());
    }

    #[test]
    fn prefix_context_is_left_multiplication() {
        let alg = algebra_from_semigroup(parity(), FunctorKind::PrefixList).unwrap();
        let m = MVal::PrefixList(vec![Elem::int(1), Elem::int(0), Elem::int(0)]);
        let ctx = alg.context(&m).unwrap();
        assert_eq!(ctx.apply(&Elem::int(0)).unwrap(), Elem::int(1));
        assert_eq!(ctx.apply(&Elem::int(1)).unwrap(), Elem::int(0));
    }
}
