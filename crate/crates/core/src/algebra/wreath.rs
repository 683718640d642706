//! Wreath products of algebras.
//!
//! The generalized wreath product of `S₁` and `S₂` has carrier
//! `S₁ × (S₁^{S₁} → S₂)`; an element `(s, f)` stores an `S₁` value and, for
//! every context `c` an `S₁` value might be placed in, the `S₂` value it
//! contributes. The classical wreath product for prefix lists uses
//! `S₁ × (S₁¹ → S₂)` with `(s, f)·(t, g) = (s·t, x ↦ f(x)·g(x·s))`.

use std::sync::Arc;

use crate::algebra::context::context_monoid;
use crate::algebra::{Carrier, FiniteAlgebra, Presentation, WreathCarrier};
use crate::elem::{Elem, ElemSet, FnTable};
use crate::error::{Error, Result};
use crate::moconad::{FunctorKind, MVal, Moconad, MoconadOps};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct WreathAlgebra {
    first: FiniteAlgebra,
    second: FiniteAlgebra,
    first_carrier: ElemSet,
    domain: ElemSet,
    identity: Elem,
    restricted: bool,
}

fn same_instance(a: &FiniteAlgebra, b: &FiniteAlgebra) -> Result<()> {
    if a.instance() != b.instance() {
        return Err(Error::InstanceMismatch { expected: a.instance().to_string(), found: b.instance().to_string() });
    }
    Ok(())
}

fn split(x: &Elem) -> Result<(&Elem, &FnTable)> {
    match x.as_pair() {
        Some((a, Elem::FnTable(f))) => Ok((a, f)),
        _ => Err(Error::NotInSet { what: "wreath product carrier".into(), elem: x.to_string() }),
    }
}

impl WreathAlgebra {
    /// The generalized wreath product. The second component ranges over all
    /// of `S₁^{S₁}` unless `restricted`, in which case it ranges over the
    /// contexts of `S₁` only. Refuses when the function space has more than
    /// `cap` elements.
    pub fn product(
        first: &FiniteAlgebra,
        second: &FiniteAlgebra,
        restricted: bool,
        cap: usize,
    ) -> Result<FiniteAlgebra> {
        same_instance(first, second)?;
        let s1 = first.carrier_elements(cap)?;
        let domain = if restricted {
            context_monoid(first, None)?.contexts().clone()
        } else {
            let n = s1.len() as u32;
            let size = (s1.len() as u128).checked_pow(n).unwrap_or(u128::MAX);
            if size > cap as u128 {
                return Err(Error::CapExceeded {
                    what: "function space of the first carrier".into(),
                    size: if size == u128::MAX { "too many".into() } else { size.to_string() },
                    cap: cap as u64,
                });
            }
            FnTable::all_functions(&s1, &s1).into_iter().map(Elem::FnTable).collect()
        };
        let identity = Elem::FnTable(FnTable::identity(&s1));
        let carrier = Carrier::Wreath(Arc::new(WreathCarrier {
            first: s1.clone(),
            contexts: domain.clone(),
            second: second.carrier().clone(),
        }));
        let w = WreathAlgebra {
            first: first.clone(),
            second: second.clone(),
            first_carrier: s1,
            domain,
            identity,
            restricted,
        };
        Ok(FiniteAlgebra::from_parts(first.instance().clone(), carrier, Presentation::Wreath(Arc::new(w))))
    }

    pub fn first(&self) -> &FiniteAlgebra {
        &self.first
    }

    pub fn second(&self) -> &FiniteAlgebra {
        &self.second
    }

    pub fn first_carrier(&self) -> &ElemSet {
        &self.first_carrier
    }

    /// The functions `S₁ → S₁` indexing the second component.
    pub fn domain(&self) -> &ElemSet {
        &self.domain
    }

    /// The identity function on `S₁`, the empty context.
    pub fn identity(&self) -> &Elem {
        &self.identity
    }

    pub fn is_restricted(&self) -> bool {
        self.restricted
    }

    /// `∏₃(l) = (∏₁(Mπ₁ l), c ↦ ∏₂ over views v of δ l of π₂(ε v)(c ∘ ctx₁(Mπ₁ v)))`.
    pub(crate) fn evaluate(&self, inst: &Moconad, l: &MVal) -> Result<Elem> {
        let firsts = l.try_map(&mut |x| Ok(split(x)?.0.clone()))?;
        let f1 = self.first.evaluate_unchecked(&firsts)?;
        let views = inst.expand(l);
        let mut per_view = Vec::new();
        for v in views.payloads() {
            let v = v.as_wrapped().expect("expanded value");
            let top = inst.extract(v);
            let (_, f) = split(&top)?;
            let u = v.try_map(&mut |x| Ok(split(x)?.0.clone()))?;
            per_view.push((f.clone(), self.first.context_over(&self.first_carrier, &u)?));
        }
        let mut values = Vec::with_capacity(self.domain.len());
        for c in self.domain.iter() {
            let c = c.as_table().expect("function table");
            let mut i = 0;
            let seconds = views.try_map(&mut |_| {
                let (f, ctx) = &per_view[i];
                i += 1;
                f.apply(&Elem::FnTable(c.compose(ctx)?))
            })?;
            values.push(self.second.evaluate_unchecked(&seconds)?);
        }
        Ok(Elem::pair(f1, Elem::FnTable(FnTable::from_values(self.domain.clone(), values)?)))
    }
}

/// The classical wreath product of two prefix-list algebras.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ClassicalWreath {
    first: FiniteAlgebra,
    second: FiniteAlgebra,
    domain: ElemSet,
}

impl ClassicalWreath {
    pub fn product(first: &FiniteAlgebra, second: &FiniteAlgebra, cap: usize) -> Result<FiniteAlgebra> {
        same_instance(first, second)?;
        if first.kind() != FunctorKind::PrefixList {
            return Err(Error::InstanceMismatch { expected: "prefix-list".into(), found: first.kind().name().into() });
        }
        let s1 = first.carrier_elements(cap)?;
        let domain: ElemSet =
            std::iter::once(ClassicalWreath::one()).chain(s1.iter().map(ClassicalWreath::lift)).collect();
        let carrier = Carrier::Wreath(Arc::new(WreathCarrier {
            first: s1,
            contexts: domain.clone(),
            second: second.carrier().clone(),
        }));
        let w = ClassicalWreath { first: first.clone(), second: second.clone(), domain };
        Ok(FiniteAlgebra::from_parts(first.instance().clone(), carrier, Presentation::Classical(Arc::new(w))))
    }

    /// The adjoined identity of `S₁¹`.
    pub fn one() -> Elem {
        Elem::seq(Vec::new())
    }

    /// An element of `S₁` seen in `S₁¹`.
    pub fn lift(s: &Elem) -> Elem {
        Elem::seq(vec![s.clone()])
    }

    pub fn first(&self) -> &FiniteAlgebra {
        &self.first
    }

    pub fn second(&self) -> &FiniteAlgebra {
        &self.second
    }

    /// `S₁¹`.
    pub fn domain(&self) -> &ElemSet {
        &self.domain
    }

    /// `x·s` in `S₁¹`.
    pub fn act(&self, x: &Elem, s: &Elem) -> Result<Elem> {
        match x.as_seq() {
            Some([]) => Ok(ClassicalWreath::lift(s)),
            Some([y]) => Ok(ClassicalWreath::lift(&self.first.mul(y, s)?)),
            _ => Err(Error::NotInSet { what: "S₁¹".into(), elem: x.to_string() }),
        }
    }

    /// `(s, f)·(t, g) = (s·t, x ↦ f(x)·g(x·s))`.
    pub fn mul(&self, a: &Elem, b: &Elem) -> Result<Elem> {
        let (s, f) = split(a)?;
        let (t, g) = split(b)?;
        let st = self.first.mul(s, t)?;
        let h = FnTable::try_tabulate(&self.domain, |x| self.second.mul(&f.apply(x)?, &g.apply(&self.act(x, s)?)?))?;
        Ok(Elem::pair(st, Elem::FnTable(h)))
    }
}
