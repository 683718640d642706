//! Recognizable languages and transductions.
//!
//! A transduction is the pipeline `M h ; δ ; M ∏ ; M λ`: letters are mapped
//! into the algebra, every position is replaced by its view, each view is
//! multiplied out, and the result is read off by the output map.

use std::collections::BTreeMap;
use std::sync::Arc;

use crate::algebra::{FiniteAlgebra, MonoidTable, PointedPresentation, SemigroupTable, TermAutomaton};
use crate::elem::{Elem, ElemSet, FnTable};
use crate::error::{Error, Result};
use crate::moconad::{FunctorKind, MVal, Moconad, MoconadOps, RankedAlphabet};

/// The output map `λ` of a transduction.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum OutputMap {
    /// An explicit table on a listed carrier.
    Table(FnTable),
    /// For wreath carriers: `λ(s, f) = inner(f(key))`.
    Readout { key: Elem, inner: Arc<OutputMap> },
}

impl OutputMap {
    pub fn apply(&self, x: &Elem) -> Result<Elem> {
        match self {
            OutputMap::Table(t) => t.apply(x),
            OutputMap::Readout { key, inner } => match x.as_pair() {
                Some((_, Elem::FnTable(f))) => inner.apply(&f.apply(key)?),
                _ => Err(Error::NotInSet { what: "wreath product carrier".into(), elem: x.to_string() }),
            },
        }
    }
}

/// Finds the first payload of `w` outside `alphabet`, naming its position.
fn check_letters(w: &MVal, alphabet: &ElemSet) -> Result<()> {
    for (label, x) in w.position_labels().iter().zip(w.payloads()) {
        if !alphabet.contains(x) {
            return Err(Error::UnmappedLetter { position: label.clone(), letter: x.to_string() });
        }
    }
    Ok(())
}

fn check_input(inst: &Moconad, w: &MVal, alphabet: &ElemSet) -> Result<()> {
    if w.kind() != inst.kind() {
        return Err(Error::InstanceMismatch { expected: inst.name().into(), found: w.kind().name().into() });
    }
    inst.validate(w)?;
    check_letters(w, alphabet)
}

fn check_input_map(alg: &FiniteAlgebra, input_map: &FnTable) -> Result<()> {
    if input_map.domain().is_empty() {
        return Err(Error::Structure("input alphabet must be nonempty".into()));
    }
    for (a, x) in input_map.pairs() {
        if !alg.carrier().contains(x) {
            return Err(Error::NotInSet { what: format!("carrier (image of letter {a})"), elem: x.to_string() });
        }
    }
    Ok(())
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Transduction {
    alg: FiniteAlgebra,
    input_map: FnTable,
    output_alphabet: ElemSet,
    output_map: OutputMap,
}

impl Transduction {
    /// Builds a transduction from an algebra with a listed carrier; `λ` must
    /// be total on the carrier with values in `output_alphabet`.
    pub fn new(
        alg: FiniteAlgebra,
        input_map: FnTable,
        output_alphabet: ElemSet,
        output_map: FnTable,
    ) -> Result<Transduction> {
        check_input_map(&alg, &input_map)?;
        let carrier = alg.listed_carrier()?;
        if output_map.domain() != carrier {
            return Err(Error::Structure("output map must be defined exactly on the carrier".into()));
        }
        for (x, b) in output_map.pairs() {
            if !output_alphabet.contains(b) {
                return Err(Error::NotInSet { what: format!("output alphabet (image of {x})"), elem: b.to_string() });
            }
        }
        Ok(Transduction { alg, input_map, output_alphabet, output_map: OutputMap::Table(output_map) })
    }

    /// Builds a transduction without checking the output map against a
    /// listed carrier; used for wreath products.
    pub(crate) fn from_parts(
        alg: FiniteAlgebra,
        input_map: FnTable,
        output_alphabet: ElemSet,
        output_map: OutputMap,
    ) -> Result<Transduction> {
        check_input_map(&alg, &input_map)?;
        Ok(Transduction { alg, input_map, output_alphabet, output_map })
    }

    /// The transduction that copies its input, over any instance.
    pub fn identity(inst: &Moconad, alphabet: &ElemSet) -> Result<Transduction> {
        let alg = identity_algebra(inst, alphabet)?;
        let id = FnTable::identity(alphabet);
        Transduction::new(alg, id.clone(), alphabet.clone(), id)
    }

    pub fn algebra(&self) -> &FiniteAlgebra {
        &self.alg
    }

    pub fn instance(&self) -> &Moconad {
        self.alg.instance()
    }

    pub fn input_alphabet(&self) -> &ElemSet {
        self.input_map.domain()
    }

    pub fn output_alphabet(&self) -> &ElemSet {
        &self.output_alphabet
    }

    pub fn input_map(&self) -> &FnTable {
        &self.input_map
    }

    pub fn output_map(&self) -> &OutputMap {
        &self.output_map
    }

    /// `λ(x)`.
    pub fn output_of(&self, x: &Elem) -> Result<Elem> {
        self.output_map.apply(x)
    }

    /// `M λ (M ∏ (δ (M h w)))`.
    pub fn apply(&self, w: &MVal) -> Result<MVal> {
        let inst = self.alg.instance();
        check_input(inst, w, self.input_alphabet())?;
        let mapped = w.try_map(&mut |a| self.input_map.apply(a))?;
        inst.expand(&mapped)
            .try_map(&mut |v| self.output_map.apply(&self.alg.evaluate_unchecked(v.as_wrapped().expect("view"))?))
    }
}

/// An algebra that remembers the distinguished letter: right-zero for prefix
/// lists, left-zero for suffix lists, projection for pointed values.
pub fn identity_algebra(inst: &Moconad, alphabet: &ElemSet) -> Result<FiniteAlgebra> {
    if alphabet.is_empty() {
        return Err(Error::Structure("alphabet must be nonempty".into()));
    }
    let n = alphabet.len() as u32;
    match inst.kind() {
        FunctorKind::PrefixList | FunctorKind::SuffixList => {
            let right_zero = inst.kind() == FunctorKind::PrefixList;
            let table = (0..n * n).map(|p| if right_zero { p % n } else { p / n }).collect();
            FiniteAlgebra::from_semigroup(SemigroupTable::from_indices(alphabet.clone(), table)?, inst.kind())
        }
        FunctorKind::PointedList => {
            let one: ElemSet = [Elem::int(0)].into_iter().collect();
            let trivial = MonoidTable::new(SemigroupTable::from_indices(one.clone(), vec![0])?, &Elem::int(0))?;
            let to_one = FnTable::tabulate(alphabet, |_| Elem::int(0));
            let g: Vec<_> = alphabet.iter().map(|a| ((Elem::int(0), a.clone(), Elem::int(0)), a.clone())).collect();
            let p = PointedPresentation::new(alphabet.clone(), trivial.clone(), trivial, &to_one, &to_one, &g)?;
            Ok(FiniteAlgebra::from_pointed(p))
        }
        FunctorKind::PointedTerm => {
            let ranked = inst.alphabet().expect("term instance has an alphabet").clone();
            Ok(FiniteAlgebra::from_term(single_state_automaton(&ranked, alphabet)?)?)
        }
    }
}

/// A term automaton with one state whose actions are all the identity.
fn single_state_automaton(ranked: &RankedAlphabet, carrier: &ElemSet) -> Result<TermAutomaton> {
    let q = Elem::sym("q");
    let states: ElemSet = [q.clone()].into_iter().collect();
    let kappa = FnTable::tabulate(carrier, |_| q.clone());
    let mut transitions = BTreeMap::new();
    let mut actions = Vec::new();
    for (s, k) in ranked.symbols() {
        transitions.insert(s.to_string(), vec![(vec![q.clone(); k], q.clone())]);
        for slot in 0..k {
            actions.push((s.to_string(), slot, vec![q.clone(); k - 1], FnTable::identity(carrier)));
        }
    }
    TermAutomaton::new(ranked.clone(), carrier.clone(), states, &kappa, &transitions, &actions)
}

/// A recognizer: `w ∈ L` iff `accept(∏(M h w))`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LanguageRecognizer {
    alg: FiniteAlgebra,
    input_map: FnTable,
    accept: FnTable,
}

impl LanguageRecognizer {
    /// `accept` maps the carrier to the symbols `Yes` and `No`.
    pub fn new(alg: FiniteAlgebra, input_map: FnTable, accept: FnTable) -> Result<LanguageRecognizer> {
        check_input_map(&alg, &input_map)?;
        if accept.domain() != alg.listed_carrier()? {
            return Err(Error::Structure("acceptance map must be defined exactly on the carrier".into()));
        }
        if let Some((x, v)) = accept.pairs().find(|(_, v)| **v != Elem::sym("Yes") && **v != Elem::sym("No")) {
            return Err(Error::Structure(format!("acceptance of {x} is {v}, expected Yes or No")));
        }
        Ok(LanguageRecognizer { alg, input_map, accept })
    }

    pub fn recognize(&self, w: &MVal) -> Result<bool> {
        check_input(self.alg.instance(), w, self.input_map.domain())?;
        let mapped = w.try_map(&mut |a| self.input_map.apply(a))?;
        Ok(self.accept.apply(&self.alg.evaluate_unchecked(&mapped)?)? == Elem::sym("Yes"))
    }
}

/// A transduction whose output map produces a whole value per position;
/// the outputs are flattened, so shapes may change.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RelaxedTransduction {
    alg: FiniteAlgebra,
    input_map: FnTable,
    output_map: FnTable,
}

impl RelaxedTransduction {
    /// `output_map` sends each carrier element to a wrapped value of the
    /// algebra's instance.
    pub fn new(alg: FiniteAlgebra, input_map: FnTable, output_map: FnTable) -> Result<RelaxedTransduction> {
        check_input_map(&alg, &input_map)?;
        if output_map.domain() != alg.listed_carrier()? {
            return Err(Error::Structure("output map must be defined exactly on the carrier".into()));
        }
        for (x, v) in output_map.pairs() {
            let inner = v
                .as_wrapped()
                .ok_or_else(|| Error::Structure(format!("output of {x} must be a wrapped value, found {v}")))?;
            alg.instance().validate(inner)?;
            if inner.kind() != alg.kind() {
                return Err(Error::InstanceMismatch {
                    expected: alg.instance().name().into(),
                    found: inner.kind().name().into(),
                });
            }
        }
        Ok(RelaxedTransduction { alg, input_map, output_map })
    }

    /// `μ (M λ (M ∏ (δ (M h w))))`.
    pub fn apply_relaxed(&self, w: &MVal) -> Result<MVal> {
        let inst = self.alg.instance();
        check_input(inst, w, self.input_map.domain())?;
        let mapped = w.try_map(&mut |a| self.input_map.apply(a))?;
        let blocks = inst
            .expand(&mapped)
            .try_map(&mut |v| self.output_map.apply(&self.alg.evaluate_unchecked(v.as_wrapped().expect("view"))?))?;
        inst.flatten(&blocks)
    }
}

/// Outcome of a shape-preservation check.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ShapeVerdict {
    Preserved { checked: usize },
    Violated { input: MVal, output: MVal },
}

/// Runs `f` on every input and reports the first whose output has a
/// different shape.
pub fn check_shape_preserved<'a>(
    inst: &Moconad,
    f: impl Fn(&MVal) -> Result<MVal>,
    inputs: impl IntoIterator<Item = &'a MVal>,
) -> Result<ShapeVerdict> {
    let mut checked = 0;
    for w in inputs {
        let out = f(w)?;
        if out.kind() != w.kind() || inst.shape(&out) != inst.shape(w) {
            return Ok(ShapeVerdict::Violated { input: w.clone(), output: out });
        }
        checked += 1;
    }
    Ok(ShapeVerdict::Preserved { checked })
}
