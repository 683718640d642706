//! Contexts `ctx_l(x) = ∏(put(l, x))` and the context monoid.

use crate::algebra::{FiniteAlgebra, DEFAULT_CARRIER_CAP};
use crate::elem::{Elem, ElemSet, FnTable};
use crate::error::{Error, Result};
use crate::functors::{count_values, enumerate_values};
use crate::moconad::MVal;

/// Largest number of values the context monoid enumeration will visit.
pub const CONTEXT_ENUMERATION_CAP: u128 = 2_000_000;

/// The context of `m` as a table on the carrier.
pub fn context(alg: &FiniteAlgebra, m: &MVal) -> Result<FnTable> {
    alg.evaluate(m)?;
    alg.context(m)
}

/// The set of all contexts of an algebra, closed under composition.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ContextMonoid {
    carrier: ElemSet,
    contexts: ElemSet,
}

impl ContextMonoid {
    /// The contexts as `FnTable` elements, in canonical order.
    pub fn contexts(&self) -> &ElemSet {
        &self.contexts
    }

    pub fn len(&self) -> usize {
        self.contexts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.contexts.is_empty()
    }

    pub fn tables(&self) -> impl Iterator<Item = &FnTable> {
        self.contexts.iter().map(|c| c.as_table().expect("context table"))
    }

    pub fn contains(&self, f: &FnTable) -> bool {
        self.contexts.contains(&Elem::FnTable(f.clone()))
    }

    /// Every member has a two-sided inverse among the members.
    pub fn is_group(&self) -> bool {
        let id = FnTable::identity(&self.carrier);
        self.tables().all(|f| {
            self.tables().any(|g| {
                f.compose(g).map(|x| x == id).unwrap_or(false) && g.compose(f).map(|x| x == id).unwrap_or(false)
            })
        })
    }

    /// Every member `f` has some `n ≤ |C|` with `fⁿ⁺¹ = fⁿ`.
    pub fn is_aperiodic(&self) -> bool {
        let n = self.contexts.len();
        self.tables().all(|f| {
            let mut power = f.clone();
            for _ in 0..n {
                let next = f.compose(&power).expect("same carrier");
                if next == power {
                    return true;
                }
                power = next;
            }
            false
        })
    }
}

/// Collects the contexts of every value of size at most `bound` (default
/// `|carrier| + 2`) and checks that the result is closed under composition.
pub fn context_monoid(alg: &FiniteAlgebra, bound: Option<usize>) -> Result<ContextMonoid> {
    let carrier = alg.carrier_elements(DEFAULT_CARRIER_CAP)?;
    let bound = bound.unwrap_or(carrier.len() + 2);
    let count = count_values(alg.instance(), carrier.len(), bound);
    if count > CONTEXT_ENUMERATION_CAP {
        return Err(Error::CapExceeded {
            what: "context enumeration".into(),
            size: count.to_string(),
            cap: CONTEXT_ENUMERATION_CAP as u64,
        });
    }
    let mut found = std::collections::BTreeSet::new();
    for m in enumerate_values(alg.instance(), &carrier, bound) {
        found.insert(alg.context_over(&carrier, &m)?);
    }
    let contexts: ElemSet = found.iter().cloned().map(Elem::FnTable).collect();
    for f in &found {
        for g in &found {
            let fg = f.compose(g)?;
            if !found.contains(&fg) {
                return Err(Error::ClosureNotStable(format!(
                    "the composition {f} ∘ {g} is not the context of any value of size at most {bound}"
                )));
            }
        }
    }
    Ok(ContextMonoid { carrier, contexts })
}

/// Whether the context monoid is a group.
pub fn is_m_group(alg: &FiniteAlgebra) -> Result<bool> {
    Ok(context_monoid(alg, None)?.is_group())
}

/// Whether the context monoid contains no nontrivial group.
pub fn is_aperiodic(alg: &FiniteAlgebra) -> Result<bool> {
    Ok(context_monoid(alg, None)?.is_aperiodic())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{algebra_from_semigroup, SemigroupTable};
    use crate::moconad::FunctorKind;

    fn table(values: Vec<u32>) -> FiniteAlgebra {
        let bits: ElemSet = [Elem::int(0), Elem::int(1)].into_iter().collect();
        algebra_from_semigroup(SemigroupTable::from_indices(bits, values).unwrap(), FunctorKind::PrefixList).unwrap()
    }

    #[test]
    fn parity_is_a_group_and_max_is_aperiodic() {
        let parity = table(vec![0, 1, 1, 0]);
        let cm = context_monoid(&parity, None).unwrap();
        assert_eq!(cm.len(), 2);
        assert!(cm.is_group());
        assert!(!cm.is_aperiodic());

        let max = table(vec![0, 1, 1, 1]);
        assert!(!is_m_group(&max).unwrap());
        assert!(is_aperiodic(&max).unwrap());
    }

    #[test]
    fn singleton_context_is_identity() {
        let max = table(vec![0, 1, 1, 1]);
        let c = context(&max, &MVal::PrefixList(vec![Elem::int(1)])).unwrap();
        assert!(c.is_identity());
    }
}
