//! Composition of transductions through wreath products.

use std::sync::Arc;

use crate::algebra::{ClassicalWreath, Presentation, WreathAlgebra, DEFAULT_CARRIER_CAP};
use crate::elem::{Elem, FnTable};
use crate::error::{Error, Result};
use crate::moconad::MVal;
use crate::transduction::{OutputMap, Transduction};

/// Options for [`compose_transductions_with`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ComposeOptions {
    /// Index the second component by the contexts of the first algebra
    /// instead of all functions on its carrier. Experimental.
    pub restrict_to_contexts: bool,
    /// Largest function space the product may tabulate over.
    pub cap: usize,
}

impl Default for ComposeOptions {
    fn default() -> Self {
        ComposeOptions { restrict_to_contexts: false, cap: DEFAULT_CARRIER_CAP }
    }
}

fn check_chain(f: &Transduction, g: &Transduction) -> Result<()> {
    if f.instance() != g.instance() {
        return Err(Error::InstanceMismatch { expected: f.instance().to_string(), found: g.instance().to_string() });
    }
    if !f.output_alphabet().is_subset(g.input_alphabet()) {
        let missing: Vec<String> =
            f.output_alphabet().iter().filter(|b| !g.input_alphabet().contains(b)).map(|b| b.to_string()).collect();
        return Err(Error::AlphabetMismatch(format!(
            "the first transduction can output {} which the second does not read",
            missing.join(", ")
        )));
    }
    Ok(())
}

/// `G ∘ F` as a single transduction over the generalized wreath product.
pub fn compose_transductions(f: &Transduction, g: &Transduction) -> Result<Transduction> {
    compose_transductions_with(f, g, ComposeOptions::default())
}

pub fn compose_transductions_with(f: &Transduction, g: &Transduction, options: ComposeOptions) -> Result<Transduction> {
    check_chain(f, g)?;
    let alg = WreathAlgebra::product(f.algebra(), g.algebra(), options.restrict_to_contexts, options.cap)?;
    let Presentation::Wreath(w) = alg.presentation() else { unreachable!("wreath product") };
    let h3 = FnTable::try_tabulate(f.input_alphabet(), |a| {
        let s = f.input_map().apply(a)?;
        // c ↦ h₂(λ₁(c(h₁ a)))
        let second = FnTable::try_tabulate(w.domain(), |c| {
            let c = c.as_table().expect("function table");
            g.input_map().apply(&f.output_of(&c.apply(&s)?)?)
        })?;
        Ok(Elem::pair(s, Elem::FnTable(second)))
    })?;
    let out = OutputMap::Readout { key: w.identity().clone(), inner: Arc::new(g.output_map().clone()) };
    Transduction::from_parts(alg.clone(), h3, g.output_alphabet().clone(), out)
}

/// `G ∘ F` for prefix lists through the classical wreath product.
pub fn classical_wreath_compose(f: &Transduction, g: &Transduction) -> Result<Transduction> {
    check_chain(f, g)?;
    let alg = ClassicalWreath::product(f.algebra(), g.algebra(), DEFAULT_CARRIER_CAP)?;
    let Presentation::Classical(w) = alg.presentation() else { unreachable!("classical wreath product") };
    let h = FnTable::try_tabulate(f.input_alphabet(), |a| {
        let s = f.input_map().apply(a)?;
        // x ↦ h₂(λ₁(x·h₁(a)))
        let second = FnTable::try_tabulate(w.domain(), |x| {
            let xs = w.act(x, &s)?;
            let xs = xs.as_seq().expect("lifted element")[0].clone();
            g.input_map().apply(&f.output_of(&xs)?)
        })?;
        Ok(Elem::pair(s, Elem::FnTable(second)))
    })?;
    let out = OutputMap::Readout { key: ClassicalWreath::one(), inner: Arc::new(g.output_map().clone()) };
    Transduction::from_parts(alg.clone(), h, g.output_alphabet().clone(), out)
}

/// Runs `F` then `G`.
pub fn oracle_compose(f: &Transduction, g: &Transduction, w: &MVal) -> Result<MVal> {
    g.apply(&f.apply(w)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{algebra_from_semigroup, SemigroupTable};
    use crate::elem::ElemSet;
    use crate::functors::enumerate_values;
    use crate::moconad::{FunctorKind, Moconad};

    fn bits() -> ElemSet {
        [Elem::int(0), Elem::int(1)].into_iter().collect()
    }

    fn parity(kind: FunctorKind) -> Transduction {
        let table = SemigroupTable::from_indices(bits(), vec![0, 1, 1, 0]).unwrap();
        let alg = algebra_from_semigroup(table, kind).unwrap();
        Transduction::new(alg, FnTable::identity(&bits()), bits(), FnTable::identity(&bits())).unwrap()
    }

    #[test]
    fn parity_after_parity() {
        let f = parity(FunctorKind::PrefixList);
        let composed = compose_transductions(&f, &f).unwrap();
        let classical = classical_wreath_compose(&f, &f).unwrap();
        let w = MVal::PrefixList(vec![Elem::int(1), Elem::int(0), Elem::int(1)]);
        // [1,0,1] → [1,1,0] → [1,0,0]
        let expected = MVal::PrefixList(vec![Elem::int(1), Elem::int(0), Elem::int(0)]);
        assert_eq!(oracle_compose(&f, &f, &w).unwrap(), expected);
        assert_eq!(composed.apply(&w).unwrap(), expected);
        assert_eq!(classical.apply(&w).unwrap(), expected);
    }

    #[test]
    fn composition_matches_sequential_runs() {
        for kind in [FunctorKind::PrefixList, FunctorKind::SuffixList] {
            let f = parity(kind);
            let id = Transduction::identity(f.instance(), &bits()).unwrap();
            let fg = compose_transductions(&f, &id).unwrap();
            let gf = compose_transductions(&id, &f).unwrap();
            for w in enumerate_values(&Moconad::new(kind, None).unwrap(), &bits(), 5) {
                let expected = f.apply(&w).unwrap();
                assert_eq!(fg.apply(&w).unwrap(), expected);
                assert_eq!(gf.apply(&w).unwrap(), expected);
            }
        }
    }

    #[test]
    fn alphabet_mismatch() {
        let f = parity(FunctorKind::PrefixList);
        let ab: ElemSet = [Elem::sym("a")].into_iter().collect();
        let g = Transduction::identity(f.instance(), &ab).unwrap();
        assert!(matches!(compose_transductions(&f, &g), Err(Error::AlphabetMismatch(_))));
    }
}
