//! Mealy machines, unambiguous Mealy machines, and their conversions to and
//! from transductions.

use std::collections::{BTreeMap, BTreeSet, HashMap, VecDeque};

use crate::algebra::tables::close_under;
use crate::algebra::{
    decompose_with_generators, BehaviourSemigroup, ClassicalWreath, FiniteAlgebra, MonoidTable, SemigroupTable,
    TripleAlgebra, DEFAULT_CARRIER_CAP,
};
use crate::elem::{Elem, ElemSet, FnTable};
use crate::error::{Error, Result};
use crate::moconad::{FunctorKind, MVal};
use crate::transduction::Transduction;

/// A finite word.
pub type Word = Vec<Elem>;

fn check_word(w: &[Elem], alphabet: &ElemSet) -> Result<()> {
    if w.is_empty() {
        return Err(Error::Structure("words must be nonempty".into()));
    }
    for (i, a) in w.iter().enumerate() {
        if !alphabet.contains(a) {
            return Err(Error::UnmappedLetter { position: (i + 1).to_string(), letter: a.to_string() });
        }
    }
    Ok(())
}

/// Every word of length `1..=max_len` over `alphabet`, shortest first and
/// lexicographic within a length.
pub fn all_words(alphabet: &ElemSet, max_len: usize) -> Vec<Word> {
    let mut out = Vec::new();
    let mut layer: Vec<Word> = vec![Vec::new()];
    for _ in 0..max_len {
        let mut next = Vec::with_capacity(layer.len() * alphabet.len());
        for w in &layer {
            for a in alphabet.iter() {
                let mut v = w.clone();
                v.push(a.clone());
                next.push(v);
            }
        }
        out.extend(next.iter().cloned());
        layer = next;
    }
    out
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Direction {
    LeftToRight,
    RightToLeft,
}

impl Direction {
    pub fn name(self) -> &'static str {
        match self {
            Direction::LeftToRight => "left-to-right",
            Direction::RightToLeft => "right-to-left",
        }
    }

    pub fn from_name(s: &str) -> Option<Direction> {
        match s {
            "left-to-right" => Some(Direction::LeftToRight),
            "right-to-left" => Some(Direction::RightToLeft),
            _ => None,
        }
    }
}

/// A deterministic letter-to-letter transducer.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MealyMachine {
    states: ElemSet,
    initial: Elem,
    input_alphabet: ElemSet,
    output_alphabet: ElemSet,
    /// Indexed by `state · |Σ| + letter`.
    delta: Vec<(u32, u32)>,
    direction: Direction,
}

/// `((state, letter), (next state, output))`.
pub type MealyRow = ((Elem, Elem), (Elem, Elem));

impl MealyMachine {
    pub fn new(
        states: ElemSet,
        initial: Elem,
        input_alphabet: ElemSet,
        output_alphabet: ElemSet,
        transitions: &[MealyRow],
        direction: Direction,
    ) -> Result<MealyMachine> {
        if input_alphabet.is_empty() {
            return Err(Error::Structure("input alphabet must be nonempty".into()));
        }
        states.require(&initial, "states")?;
        let k = input_alphabet.len();
        let mut delta = vec![(u32::MAX, u32::MAX); states.len() * k];
        for ((q, a), (r, b)) in transitions {
            let i = states.require(q, "states")? * k + input_alphabet.require(a, "input alphabet")?;
            if delta[i].0 != u32::MAX {
                return Err(Error::Structure(format!("transition from {q} on {a} is given twice")));
            }
            delta[i] = (states.require(r, "states")? as u32, output_alphabet.require(b, "output alphabet")? as u32);
        }
        if let Some(p) = delta.iter().position(|d| d.0 == u32::MAX) {
            return Err(Error::Structure(format!(
                "transition from {} on {} is missing",
                states.get(p / k),
                input_alphabet.get(p % k)
            )));
        }
        Ok(MealyMachine { states, initial, input_alphabet, output_alphabet, delta, direction })
    }

    pub fn states(&self) -> &ElemSet {
        &self.states
    }

    pub fn initial(&self) -> &Elem {
        &self.initial
    }

    pub fn input_alphabet(&self) -> &ElemSet {
        &self.input_alphabet
    }

    pub fn output_alphabet(&self) -> &ElemSet {
        &self.output_alphabet
    }

    pub fn direction(&self) -> Direction {
        self.direction
    }

    pub fn transitions(&self) -> Vec<MealyRow> {
        let k = self.input_alphabet.len();
        self.delta
            .iter()
            .enumerate()
            .map(|(i, &(r, b))| {
                (
                    (self.states.get(i / k).clone(), self.input_alphabet.get(i % k).clone()),
                    (self.states.get(r as usize).clone(), self.output_alphabet.get(b as usize).clone()),
                )
            })
            .collect()
    }

    /// `δ(q, a)`.
    pub fn step(&self, q: &Elem, a: &Elem) -> Result<(Elem, Elem)> {
        let i = self.states.require(q, "states")? * self.input_alphabet.len()
            + self.input_alphabet.require(a, "input alphabet")?;
        let (r, b) = self.delta[i];
        Ok((self.states.get(r as usize).clone(), self.output_alphabet.get(b as usize).clone()))
    }

    fn run_forward(&self, w: &[Elem]) -> Result<Word> {
        let mut q = self.initial.clone();
        let mut out = Vec::with_capacity(w.len());
        for a in w {
            let (r, b) = self.step(&q, a)?;
            out.push(b);
            q = r;
        }
        Ok(out)
    }

    /// Threads the state through the word; right-to-left machines read the
    /// reversed word and reverse their output.
    pub fn run(&self, w: &[Elem]) -> Result<Word> {
        check_word(w, &self.input_alphabet)?;
        match self.direction {
            Direction::LeftToRight => self.run_forward(w),
            Direction::RightToLeft => {
                let rev: Word = w.iter().rev().cloned().collect();
                let mut out = self.run_forward(&rev)?;
                out.reverse();
                Ok(out)
            }
        }
    }

    /// The behaviour of one letter, `q ↦ δ(q, a)`.
    pub fn letter_behaviour(&self, a: &Elem) -> Result<FnTable> {
        FnTable::try_tabulate(&self.states, |q| {
            let (r, b) = self.step(q, a)?;
            Ok(Elem::pair(r, b))
        })
    }

    /// The behaviour of a word read in the machine's reading order.
    pub fn behaviour(&self, w: &[Elem]) -> Result<FnTable> {
        check_word(w, &self.input_alphabet)?;
        let mut f = self.letter_behaviour(&w[0])?;
        for a in &w[1..] {
            f = crate::algebra::behaviour::then(&f, &self.letter_behaviour(a)?)?;
        }
        Ok(f)
    }

    /// The transduction over the behaviour semigroup: prefix lists for
    /// left-to-right machines, suffix lists for right-to-left ones.
    pub fn to_transduction(&self) -> Result<Transduction> {
        let generators: Vec<FnTable> =
            self.input_alphabet.iter().map(|a| self.letter_behaviour(a)).collect::<Result<_>>()?;
        let (kind, opposite) = match self.direction {
            Direction::LeftToRight => (FunctorKind::PrefixList, false),
            Direction::RightToLeft => (FunctorKind::SuffixList, true),
        };
        let sg = BehaviourSemigroup::generated(self.states.clone(), &generators, opposite, DEFAULT_CARRIER_CAP)?;
        let carrier = sg.carrier().clone();
        let alg = FiniteAlgebra::from_behaviour(sg, kind)?;
        let h = FnTable::from_values(self.input_alphabet.clone(), generators.into_iter().map(Elem::FnTable).collect())?;
        let lambda = FnTable::try_tabulate(&carrier, |f| {
            let out = f.as_table().expect("behaviour").apply(&self.initial)?;
            Ok(out.as_pair().expect("state and output").1.clone())
        })?;
        Transduction::new(alg, h, self.output_alphabet.clone(), lambda)
    }

    /// The machine on `S¹` with `δ(s, a) = (s·h(a), λ(s·h(a)))`, from a
    /// prefix-list transduction (or its right-to-left mirror from a
    /// suffix-list one). A fresh identity `[]` is always adjoined; the
    /// other states are `[s]`. Only states reachable from `[]` are kept
    /// when the carrier is not listed.
    pub fn from_transduction(t: &Transduction) -> Result<MealyMachine> {
        let alg = t.algebra();
        let direction = match alg.kind() {
            FunctorKind::PrefixList => Direction::LeftToRight,
            FunctorKind::SuffixList => Direction::RightToLeft,
            other => {
                return Err(Error::InstanceMismatch {
                    expected: "prefix-list or suffix-list".into(),
                    found: other.name().into(),
                })
            }
        };
        let one = ClassicalWreath::one();
        let next = |x: &Elem, a: &Elem| -> Result<Elem> {
            let ha = t.input_map().apply(a)?;
            match x.as_seq() {
                Some([]) => Ok(ha),
                Some([s]) => match direction {
                    Direction::LeftToRight => alg.mul(s, &ha),
                    Direction::RightToLeft => alg.mul(&ha, s),
                },
                _ => Err(Error::NotInSet { what: "states".into(), elem: x.to_string() }),
            }
        };
        let mut states: Vec<Elem> = vec![one.clone()];
        if let Some(carrier) = alg.carrier().as_listed() {
            states.extend(carrier.iter().map(ClassicalWreath::lift));
        } else {
            let mut seen: BTreeSet<Elem> = [one.clone()].into_iter().collect();
            let mut queue = VecDeque::from([one.clone()]);
            while let Some(x) = queue.pop_front() {
                for a in t.input_alphabet().iter() {
                    let y = ClassicalWreath::lift(&next(&x, a)?);
                    if seen.insert(y.clone()) {
                        if seen.len() > DEFAULT_CARRIER_CAP {
                            return Err(Error::CapExceeded {
                                what: "reachable machine states".into(),
                                size: format!("more than {DEFAULT_CARRIER_CAP}"),
                                cap: DEFAULT_CARRIER_CAP as u64,
                            });
                        }
                        states.push(y.clone());
                        queue.push_back(y);
                    }
                }
            }
        }
        let mut rows = Vec::with_capacity(states.len() * t.input_alphabet().len());
        for x in &states {
            for a in t.input_alphabet().iter() {
                let s = next(x, a)?;
                let b = t.output_of(&s)?;
                rows.push(((x.clone(), a.clone()), (ClassicalWreath::lift(&s), b)));
            }
        }
        MealyMachine::new(
            ElemSet::new(states),
            one,
            t.input_alphabet().clone(),
            t.output_alphabet().clone(),
            &rows,
            direction,
        )
    }
}

/// `(source, letter, target, output)`.
pub type Transition = (Elem, Elem, Elem, Elem);

/// A nondeterministic letter-to-letter transducer meant to have exactly one
/// accepting run per nonempty word. Runs are sequences of transitions, so a
/// transition listed twice yields two runs.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UnambiguousMealy {
    states: ElemSet,
    initial: ElemSet,
    finals: ElemSet,
    input_alphabet: ElemSet,
    output_alphabet: ElemSet,
    transitions: Vec<Transition>,
    /// Per transition: (source, letter, target, output) indices.
    idx: Vec<(usize, usize, usize, usize)>,
}

/// Result of [`UnambiguousMealy::check_unambiguous`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum UnambiguityVerdict {
    Unambiguous,
    /// A shortest word with no accepting run.
    NoRun(Word),
    /// A shortest word with at least two accepting runs.
    MultipleRuns(Word),
}

impl UnambiguityVerdict {
    pub fn is_unambiguous(&self) -> bool {
        matches!(self, UnambiguityVerdict::Unambiguous)
    }

    pub fn witness(&self) -> Option<&Word> {
        match self {
            UnambiguityVerdict::Unambiguous => None,
            UnambiguityVerdict::NoRun(w) | UnambiguityVerdict::MultipleRuns(w) => Some(w),
        }
    }
}

fn word_text(w: &[Elem]) -> String {
    w.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(" ")
}

impl UnambiguousMealy {
    pub fn new(
        states: ElemSet,
        initial: ElemSet,
        finals: ElemSet,
        input_alphabet: ElemSet,
        output_alphabet: ElemSet,
        transitions: Vec<Transition>,
    ) -> Result<UnambiguousMealy> {
        if input_alphabet.is_empty() {
            return Err(Error::Structure("input alphabet must be nonempty".into()));
        }
        if !initial.is_subset(&states) || !finals.is_subset(&states) {
            return Err(Error::Structure("initial and final states must be states".into()));
        }
        let idx = transitions
            .iter()
            .map(|(p, a, q, b)| {
                Ok((
                    states.require(p, "states")?,
                    input_alphabet.require(a, "input alphabet")?,
                    states.require(q, "states")?,
                    output_alphabet.require(b, "output alphabet")?,
                ))
            })
            .collect::<Result<_>>()?;
        Ok(UnambiguousMealy { states, initial, finals, input_alphabet, output_alphabet, transitions, idx })
    }

    pub fn states(&self) -> &ElemSet {
        &self.states
    }

    pub fn initial(&self) -> &ElemSet {
        &self.initial
    }

    pub fn finals(&self) -> &ElemSet {
        &self.finals
    }

    pub fn input_alphabet(&self) -> &ElemSet {
        &self.input_alphabet
    }

    pub fn output_alphabet(&self) -> &ElemSet {
        &self.output_alphabet
    }

    pub fn transitions(&self) -> &[Transition] {
        &self.transitions
    }

    fn initial_idx(&self) -> Vec<usize> {
        self.initial.iter().map(|q| self.states.index_of(q).expect("subset")).collect()
    }

    fn is_final(&self, q: usize) -> bool {
        self.finals.contains(self.states.get(q))
    }

    /// Decides whether every nonempty word has exactly one accepting run.
    ///
    /// Existence is checked on the subset automaton of the output-erased
    /// machine: every subset reachable by a nonempty word must meet the
    /// final states. Uniqueness is checked on the product of the machine
    /// with itself, tracking whether two runs have diverged. Both searches
    /// are breadth-first, so the witness is a shortest word. `max_len`
    /// only bounds the length of a reported witness; `None` means no bound.
    #[allow(clippy::needless_range_loop)]
    pub fn check_unambiguous(&self, max_len: Option<usize>) -> UnambiguityVerdict {
        let k = self.input_alphabet.len();
        let nq = self.states.len();
        let mut by_source: Vec<Vec<Vec<usize>>> = vec![vec![Vec::new(); k]; nq];
        for (t, &(p, a, _, _)) in self.idx.iter().enumerate() {
            by_source[p][a].push(t);
        }
        let within = |len: usize| max_len.is_none_or(|m| len <= m);

        // Existence: subsets reachable by nonempty words.
        let mut start = self.initial_idx();
        start.sort();
        let mut parents: HashMap<Vec<usize>, (Vec<usize>, usize)> = HashMap::new();
        let mut depth: HashMap<Vec<usize>, usize> = HashMap::new();
        let mut queue = VecDeque::from([(start, 0usize)]);
        while let Some((set, len)) = queue.pop_front() {
            if !within(len + 1) {
                continue;
            }
            for a in 0..k {
                let next: Vec<usize> = set
                    .iter()
                    .flat_map(|&p| by_source[p][a].iter().map(|&t| self.idx[t].2))
                    .collect::<BTreeSet<_>>()
                    .into_iter()
                    .collect();
                if depth.contains_key(&next) {
                    continue;
                }
                depth.insert(next.clone(), len + 1);
                parents.insert(next.clone(), (set.clone(), a));
                if !next.iter().any(|&q| self.is_final(q)) {
                    let mut letters = Vec::new();
                    let mut cur = next;
                    for _ in 0..len + 1 {
                        let (prev, a) = parents[&cur].clone();
                        letters.push(self.input_alphabet.get(a).clone());
                        cur = prev;
                    }
                    letters.reverse();
                    return UnambiguityVerdict::NoRun(letters);
                }
                queue.push_back((next, len + 1));
            }
        }

        // Uniqueness: pairs of runs, with a flag once they differ.
        type Node = (usize, usize, bool);
        let mut parents: HashMap<Node, (Node, usize)> = HashMap::new();
        let mut depth: HashMap<Node, usize> = HashMap::new();
        let mut queue = VecDeque::new();
        for &p in &self.initial_idx() {
            for &q in &self.initial_idx() {
                let n = (p, q, false);
                depth.insert(n, 0);
                queue.push_back(n);
            }
        }
        while let Some(n @ (p, q, diverged)) = queue.pop_front() {
            let len = depth[&n];
            if !within(len + 1) {
                continue;
            }
            for a in 0..k {
                for &t1 in &by_source[p][a] {
                    for &t2 in &by_source[q][a] {
                        let m = (self.idx[t1].2, self.idx[t2].2, diverged || t1 != t2);
                        if depth.contains_key(&m) {
                            continue;
                        }
                        depth.insert(m, len + 1);
                        parents.insert(m, (n, a));
                        if m.2 && self.is_final(m.0) && self.is_final(m.1) {
                            let mut letters = Vec::new();
                            let mut cur = m;
                            while let Some(&(prev, a)) = parents.get(&cur) {
                                letters.push(self.input_alphabet.get(a).clone());
                                cur = prev;
                            }
                            letters.reverse();
                            return UnambiguityVerdict::MultipleRuns(letters);
                        }
                        queue.push_back(m);
                    }
                }
            }
        }
        UnambiguityVerdict::Unambiguous
    }

    /// Number of accepting runs on `w`, saturating at `cap`.
    pub fn count_runs(&self, w: &[Elem], cap: usize) -> Result<usize> {
        check_word(w, &self.input_alphabet)?;
        let counts = self.forward_counts(w, cap);
        Ok((0..self.states.len())
            .filter(|&q| self.is_final(q))
            .map(|q| counts[w.len()][q])
            .fold(0, |a, b| (a + b).min(cap)))
    }

    fn forward_counts(&self, w: &[Elem], cap: usize) -> Vec<Vec<usize>> {
        let nq = self.states.len();
        let mut counts = vec![vec![0usize; nq]; w.len() + 1];
        for q in self.initial_idx() {
            counts[0][q] = 1;
        }
        for (i, a) in w.iter().enumerate() {
            let a = self.input_alphabet.index_of(a).expect("checked");
            for &(p, b, q, _) in &self.idx {
                if b == a && counts[i][p] > 0 {
                    counts[i + 1][q] = (counts[i + 1][q] + counts[i][p]).min(cap);
                }
            }
        }
        counts
    }

    /// The output of the unique accepting run on `w`.
    pub fn run(&self, w: &[Elem]) -> Result<Word> {
        check_word(w, &self.input_alphabet)?;
        let counts = self.forward_counts(w, 2);
        let n = w.len();
        let total: usize = (0..self.states.len()).filter(|&q| self.is_final(q)).map(|q| counts[n][q]).sum();
        if total != 1 {
            return Err(Error::Ambiguous(format!(
                "the word {} has {} accepting runs",
                word_text(w),
                if total == 0 { "no" } else { "several" }
            )));
        }
        let mut q = (0..self.states.len()).find(|&q| self.is_final(q) && counts[n][q] == 1).expect("one run");
        let mut out = vec![Elem::int(0); n];
        for i in (0..n).rev() {
            let a = self.input_alphabet.index_of(&w[i]).expect("checked");
            let &(p, _, _, b) = self
                .idx
                .iter()
                .find(|&&(p, b, r, _)| b == a && r == q && counts[i][p] > 0)
                .expect("run continues backwards");
            out[i] = self.output_alphabet.get(b).clone();
            q = p;
        }
        Ok(out)
    }

    fn relation_of_letter(&self, a: usize) -> Elem {
        relation(self.idx.iter().filter(|t| t.1 == a).map(|t| (t.0, t.2)).collect(), &self.states)
    }

    /// The pointed-list transduction on `M × Σ × M`, where `M` is the
    /// monoid of relations generated by the letters. Fails when the machine
    /// is not unambiguous.
    pub fn to_transduction(&self) -> Result<Transduction> {
        match self.check_unambiguous(None) {
            UnambiguityVerdict::Unambiguous => {}
            UnambiguityVerdict::NoRun(w) => {
                return Err(Error::Ambiguous(format!("the word {} has no accepting run", word_text(&w))))
            }
            UnambiguityVerdict::MultipleRuns(w) => {
                return Err(Error::Ambiguous(format!("the word {} has several accepting runs", word_text(&w))))
            }
        }
        let k = self.input_alphabet.len();
        let identity = relation((0..self.states.len()).map(|q| (q, q)).collect(), &self.states);
        let letters: Vec<Elem> = (0..k).map(|a| self.relation_of_letter(a)).collect();
        let mut seeds = vec![identity.clone()];
        seeds.extend(letters.iter().cloned());
        let compose = |x: &Elem, y: &Elem| Ok(compose_relations(x, y));
        let set = close_under(seeds, compose, DEFAULT_CARRIER_CAP, "relation monoid")?;
        let monoid = MonoidTable::new(SemigroupTable::from_fn_associative(set, compose)?, &identity)?;
        let letter_map = FnTable::from_values(self.input_alphabet.clone(), letters)?;
        let triple = TripleAlgebra::new(monoid, &letter_map)?;
        let h = FnTable::try_tabulate(&self.input_alphabet, |a| triple.letter(a))?;
        let default = self
            .output_alphabet
            .iter()
            .next()
            .ok_or_else(|| Error::Structure("output alphabet must be nonempty".into()))?
            .clone();
        let lambda = FnTable::try_tabulate(triple.carrier(), |x| {
            Ok(self.output_candidates(x)?.into_iter().next().unwrap_or_else(|| default.clone()))
        })?;
        let alg = FiniteAlgebra::from_triple(triple);
        Transduction::new(alg, h, self.output_alphabet.clone(), lambda)
    }

    /// Outputs `b` such that some run passes through a transition
    /// `q -a/b-> q'` with `(q₀, q) ∈ p` for an initial `q₀` and
    /// `(q', q_f) ∈ s` for a final `q_f`, for the triple `(p, a, s)`.
    pub fn output_candidates(&self, triple: &Elem) -> Result<Vec<Elem>> {
        let bad = || Error::NotInSet { what: "relation triples".into(), elem: triple.to_string() };
        let parts = triple.as_seq().filter(|xs| xs.len() == 3).ok_or_else(bad)?;
        let p = relation_pairs(&parts[0], &self.states)?;
        let a = self.input_alphabet.index_of(&parts[1]).ok_or_else(bad)?;
        let s = relation_pairs(&parts[2], &self.states)?;
        let init = self.initial_idx();
        let mut out = BTreeSet::new();
        for &(q, b, r, o) in &self.idx {
            if b != a {
                continue;
            }
            let starts = init.iter().any(|&q0| p.contains(&(q0, q)));
            let ends = s.iter().any(|&(x, qf)| x == r && self.is_final(qf));
            if starts && ends {
                out.insert(self.output_alphabet.get(o).clone());
            }
        }
        Ok(out.into_iter().collect())
    }

    /// The machine with states `M_L × M_R` obtained from the decomposition of
    /// a pointed-list transduction restricted to the images of letters.
    /// States are labelled by pairs of monoid indices.
    pub fn from_transduction(t: &Transduction) -> Result<UnambiguousMealy> {
        let alg = t.algebra();
        if alg.kind() != FunctorKind::PointedList {
            return Err(Error::InstanceMismatch { expected: "pointed-list".into(), found: alg.kind().name().into() });
        }
        let carrier = alg.listed_carrier()?;
        let generators: ElemSet = t.input_map().values().iter().cloned().collect();
        let oracle = |m: &MVal| alg.evaluate_unchecked(m);
        let dec = decompose_with_generators(carrier, &generators, &oracle, DEFAULT_CARRIER_CAP)?;
        let (nl, nr) = (dec.left.len(), dec.right.len());
        let label = |l: usize, r: usize| Elem::pair(Elem::int(l as i64), Elem::int(r as i64));
        let mut states = Vec::with_capacity(nl * nr);
        for l in 0..nl {
            for r in 0..nr {
                states.push(label(l, r));
            }
        }
        let one_l = dec.left.identity_idx();
        let one_r = dec.right.identity_idx();
        let initial: ElemSet = (0..nr).map(|r| label(one_l, r)).collect();
        let finals: ElemSet = (0..nl).map(|l| label(l, one_r)).collect();
        let mut transitions = Vec::new();
        let mut cache: BTreeMap<(usize, usize, usize), Elem> = BTreeMap::new();
        for (ai, a) in t.input_alphabet().iter().enumerate() {
            let x = t.input_map().apply(a)?;
            let hl = dec.left_of(&x).expect("generator");
            let hr = dec.right_of(&x).expect("generator");
            for l in 0..nl {
                for r in 0..nr {
                    let out = match cache.get(&(l, ai, r)) {
                        Some(b) => b.clone(),
                        None => {
                            let b = t.output_of(&dec.g(l, &x, r)?)?;
                            cache.insert((l, ai, r), b.clone());
                            b
                        }
                    };
                    transitions.push((
                        label(l, dec.right.mul_idx(hr, r)),
                        a.clone(),
                        label(dec.left.mul_idx(l, hl), r),
                        out,
                    ));
                }
            }
        }
        UnambiguousMealy::new(
            ElemSet::new(states),
            initial,
            finals,
            t.input_alphabet().clone(),
            t.output_alphabet().clone(),
            transitions,
        )
    }
}

/// A relation on the states as a sorted sequence of index pairs.
fn relation(mut pairs: Vec<(usize, usize)>, states: &ElemSet) -> Elem {
    pairs.sort();
    pairs.dedup();
    Elem::seq(pairs.into_iter().map(|(p, q)| Elem::pair(states.get(p).clone(), states.get(q).clone())).collect())
}

fn relation_pairs(r: &Elem, states: &ElemSet) -> Result<BTreeSet<(usize, usize)>> {
    let bad = || Error::NotInSet { what: "relations on the states".into(), elem: r.to_string() };
    r.as_seq()
        .ok_or_else(bad)?
        .iter()
        .map(|e| {
            let (p, q) = e.as_pair().ok_or_else(bad)?;
            Ok((states.index_of(p).ok_or_else(bad)?, states.index_of(q).ok_or_else(bad)?))
        })
        .collect()
}

/// `f · g`: first `f`, then `g`.
fn compose_relations(f: &Elem, g: &Elem) -> Elem {
    let f = f.as_seq().expect("relation");
    let g = g.as_seq().expect("relation");
    let mut out = BTreeSet::new();
    for x in f {
        let (p, q) = x.as_pair().expect("pair");
        for y in g {
            let (q2, r) = y.as_pair().expect("pair");
            if q == q2 {
                out.insert(Elem::pair(p.clone(), r.clone()));
            }
        }
    }
    Elem::seq(out.into_iter().collect())
}

/// `[a₁, …, a̲ᵢ, …, aₙ]` for a 1-based `i`.
pub fn underline(w: &[Elem], i: usize) -> Result<MVal> {
    if i == 0 || i > w.len() {
        return Err(Error::Structure(format!("position {i} is outside 1..={}", w.len())));
    }
    Ok(MVal::PointedList { items: w.to_vec(), focus: i - 1 })
}

/// Drops the underline.
pub fn forget(v: &MVal) -> Result<Word> {
    match v {
        MVal::PointedList { items, .. } => Ok(items.clone()),
        other => Err(Error::InstanceMismatch { expected: "pointed-list".into(), found: other.kind().name().into() }),
    }
}

/// `φ(f) = forget ∘ f ∘ underline₁`.
pub fn phi<'a>(f: impl Fn(&MVal) -> Result<MVal> + 'a) -> impl Fn(&[Elem]) -> Result<Word> + 'a {
    move |w| forget(&f(&underline(w, 1)?)?)
}

/// The left-to-right machine that changes the first `a` to `c` and every
/// other letter to `d`.
pub fn change_first_a_machine() -> MealyMachine {
    let s = |x: &str| Elem::sym(x);
    let rows = vec![
        ((s("start"), s("a")), (s("seen"), s("c"))),
        ((s("start"), s("b")), (s("start"), s("d"))),
        ((s("seen"), s("a")), (s("seen"), s("d"))),
        ((s("seen"), s("b")), (s("seen"), s("d"))),
    ];
    MealyMachine::new(
        [s("start"), s("seen")].into_iter().collect(),
        s("start"),
        [s("a"), s("b")].into_iter().collect(),
        [s("c"), s("d")].into_iter().collect(),
        &rows,
        Direction::LeftToRight,
    )
    .expect("well formed")
}

/// The unambiguous machine over `{a, b}` that replaces the first letter
/// with the last one: it guesses the last letter `x` up front, outputs it,
/// copies the middle, and checks the guess on the last letter.
pub fn replace_first_with_last_machine() -> UnambiguousMealy {
    let s = |x: &str| Elem::sym(x);
    let letters = ["a", "b"];
    let mut transitions = Vec::new();
    for x in letters {
        let i = s(&format!("i_{x}"));
        let m = s(&format!("m_{x}"));
        transitions.push((i.clone(), s(x), s("f"), s(x)));
        for c in letters {
            transitions.push((i.clone(), s(c), m.clone(), s(x)));
            transitions.push((m.clone(), s(c), m.clone(), s(c)));
        }
        transitions.push((m.clone(), s(x), s("f"), s(x)));
    }
    UnambiguousMealy::new(
        ["i_a", "i_b", "m_a", "m_b", "f"].iter().map(|x| s(x)).collect(),
        [s("i_a"), s("i_b")].into_iter().collect(),
        [s("f")].into_iter().collect(),
        [s("a"), s("b")].into_iter().collect(),
        [s("a"), s("b")].into_iter().collect(),
        transitions,
    )
    .expect("well formed")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(s: &str) -> Word {
        s.chars().map(|c| Elem::sym(&c.to_string())).collect()
    }

    #[test]
    fn change_first_a() {
        let m = change_first_a_machine();
        assert_eq!(m.run(&w("aab")).unwrap(), w("cdd"));
        assert_eq!(m.run(&w("bba")).unwrap(), w("ddc"));
        assert!(matches!(m.run(&w("abz")), Err(Error::UnmappedLetter { .. })));
    }

    #[test]
    fn replace_first_with_last() {
        let u = replace_first_with_last_machine();
        assert!(u.check_unambiguous(None).is_unambiguous());
        assert_eq!(u.run(&w("ab")).unwrap(), w("bb"));
        assert_eq!(u.run(&w("abba")).unwrap(), w("abba"));
        assert_eq!(u.run(&w("a")).unwrap(), w("a"));
    }

    #[test]
    fn duplicated_transition_is_ambiguous_on_one_letter() {
        let u = replace_first_with_last_machine();
        let mut ts = u.transitions().to_vec();
        ts.push(ts[0].clone());
        let dup = UnambiguousMealy::new(
            u.states().clone(),
            u.initial().clone(),
            u.finals().clone(),
            u.input_alphabet().clone(),
            u.output_alphabet().clone(),
            ts,
        )
        .unwrap();
        let verdict = dup.check_unambiguous(None);
        assert!(matches!(verdict, UnambiguityVerdict::MultipleRuns(ref x) if x.len() == 1), "{verdict:?}");
    }

    #[test]
    fn empty_initial_set_has_no_run() {
        let u = replace_first_with_last_machine();
        let none = UnambiguousMealy::new(
            u.states().clone(),
            ElemSet::default(),
            u.finals().clone(),
            u.input_alphabet().clone(),
            u.output_alphabet().clone(),
            u.transitions().to_vec(),
        )
        .unwrap();
        assert_eq!(none.check_unambiguous(None), UnambiguityVerdict::NoRun(w("a")));
    }

    #[test]
    fn underline_and_forget() {
        let v = underline(&w("abc"), 2).unwrap();
        assert_eq!(v, MVal::PointedList { items: w("abc"), focus: 1 });
        assert_eq!(forget(&v).unwrap(), w("abc"));
        assert!(underline(&w("abc"), 4).is_err());
    }
}
