//! Small algebras, transductions and machines for testing: exhaustive lists
//! where they are small and seeded random draws otherwise.

use std::collections::BTreeMap;
use std::sync::OnceLock;

use rand::seq::SliceRandom;
use rand::Rng;

use crate::algebra::{decompose_pointed_algebra, FiniteAlgebra, SemigroupTable, TermAutomaton};
use crate::elem::{Elem, ElemSet, FnTable};
use crate::error::Result;
use crate::mealy::{Direction, MealyMachine};
use crate::moconad::{FunctorKind, MVal, Moconad, RankedAlphabet};
use crate::transduction::Transduction;

/// `{0, …, n-1}` as integers.
pub fn int_carrier(n: usize) -> ElemSet {
    (0..n as i64).map(Elem::int).collect()
}

/// The first `n` of `a, b, c, …`.
pub fn letters(n: usize) -> ElemSet {
    (0..n).map(|i| Elem::sym(&((b'a' + i as u8) as char).to_string())).collect()
}

/// Every associative table on `{0, …, n-1}` (labelled, not up to
/// isomorphism), in lexicographic order of the table.
pub fn associative_tables(n: usize) -> Vec<SemigroupTable> {
    let carrier = int_carrier(n);
    let cells = n * n;
    let mut out = Vec::new();
    let mut digits = vec![0u32; cells];
    loop {
        if let Ok(t) = SemigroupTable::from_indices(carrier.clone(), digits.clone()) {
            out.push(t);
        }
        let mut i = cells;
        loop {
            if i == 0 {
                return out;
            }
            i -= 1;
            digits[i] += 1;
            if (digits[i] as usize) < n {
                break;
            }
            digits[i] = 0;
        }
    }
}

fn cached_tables(n: usize) -> &'static [SemigroupTable] {
    static CACHE: [OnceLock<Vec<SemigroupTable>>; 4] =
        [OnceLock::new(), OnceLock::new(), OnceLock::new(), OnceLock::new()];
    CACHE[n].get_or_init(|| associative_tables(n))
}

/// A uniformly chosen associative table of a uniformly chosen order in
/// `1..=max_order` (at most 3).
pub fn random_semigroup<R: Rng>(rng: &mut R, max_order: usize) -> SemigroupTable {
    let n = rng.gen_range(1..=max_order.clamp(1, 3));
    cached_tables(n).choose(rng).expect("nonempty").clone()
}

/// Left and right actions of a pointed-list algebra: `left[a][x] = ∏([a, x̲])`
/// and `right[b][x] = ∏([x̲, b])`, by carrier index.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Actions {
    pub left: Vec<Vec<usize>>,
    pub right: Vec<Vec<usize>>,
}

impl Actions {
    /// `L_{a₁} ∘ … ∘ L_{aᵢ₋₁} ∘ R_{aₙ} ∘ … ∘ R_{aᵢ₊₁} (aᵢ)`.
    pub fn product(&self, items: &[usize], focus: usize) -> usize {
        let mut x = items[focus];
        for &b in &items[focus + 1..] {
            x = self.right[b][x];
        }
        for &a in items[..focus].iter().rev() {
            x = self.left[a][x];
        }
        x
    }
}

fn all_action_families(n: usize) -> Vec<Vec<Vec<usize>>> {
    let tables: Vec<Vec<usize>> = {
        let mut out = Vec::new();
        let mut digits = vec![0usize; n];
        loop {
            out.push(digits.clone());
            let mut i = n;
            loop {
                if i == 0 {
                    break;
                }
                i -= 1;
                digits[i] += 1;
                if digits[i] < n {
                    break;
                }
                digits[i] = 0;
            }
            if digits.iter().all(|&d| d == 0) {
                break;
            }
        }
        out
    };
    let mut families = Vec::new();
    let mut choice = vec![0usize; n];
    loop {
        families.push(choice.iter().map(|&c| tables[c].clone()).collect());
        let mut i = n;
        loop {
            if i == 0 {
                return families;
            }
            i -= 1;
            choice[i] += 1;
            if choice[i] < tables.len() {
                break;
            }
            choice[i] = 0;
        }
    }
}

fn compose(f: &[usize], g: &[usize]) -> Vec<usize> {
    g.iter().map(|&x| f[x]).collect()
}

/// Every pair of action families on `n` elements satisfying
/// `L_{L_a(b)} = L_{R_b(a)} = L_a∘L_b`, `R_{R_b(a)} = R_{L_a(b)} = R_b∘R_a`
/// and `L_a∘R_b = R_b∘L_a`, which make [`Actions::product`] an algebra.
pub fn pointed_actions(n: usize) -> Vec<Actions> {
    let families = all_action_families(n);
    let lefts: Vec<&Vec<Vec<usize>>> =
        families.iter().filter(|l| (0..n).all(|a| (0..n).all(|b| l[l[a][b]] == compose(&l[a], &l[b])))).collect();
    let rights: Vec<&Vec<Vec<usize>>> =
        families.iter().filter(|r| (0..n).all(|a| (0..n).all(|b| r[r[b][a]] == compose(&r[b], &r[a])))).collect();
    let mut out = Vec::new();
    for l in &lefts {
        for r in &rights {
            let ok = (0..n).all(|a| {
                (0..n).all(|b| {
                    l[r[b][a]] == compose(&l[a], &l[b])
                        && r[l[a][b]] == compose(&r[b], &r[a])
                        && compose(&l[a], &r[b]) == compose(&r[b], &l[a])
                })
            });
            if ok {
                out.push(Actions { left: (*l).clone(), right: (*r).clone() });
            }
        }
    }
    out
}

fn cached_actions(n: usize) -> &'static [Actions] {
    static CACHE: [OnceLock<Vec<Actions>>; 4] = [OnceLock::new(), OnceLock::new(), OnceLock::new(), OnceLock::new()];
    CACHE[n].get_or_init(|| pointed_actions(n))
}

/// The algebra of a family of actions, presented through its decomposition.
pub fn pointed_algebra_from_actions(n: usize, actions: &Actions) -> Result<FiniteAlgebra> {
    let carrier = int_carrier(n);
    let oracle = |m: &MVal| -> Result<Elem> {
        let MVal::PointedList { items, focus } = m else { unreachable!("pointed lists only") };
        let idx: Vec<usize> = items.iter().map(|x| carrier.require(x, "carrier")).collect::<Result<_>>()?;
        Ok(Elem::int(actions.product(&idx, *focus) as i64))
    };
    let p = decompose_pointed_algebra(&carrier, &oracle, crate::algebra::pointed::DEFAULT_MONOID_CAP)?;
    Ok(FiniteAlgebra::from_pointed(p))
}

/// A random pointed-list algebra with at most `max_size` (≤ 3) elements.
pub fn random_pointed_algebra<R: Rng>(rng: &mut R, max_size: usize) -> FiniteAlgebra {
    let n = rng.gen_range(1..=max_size.clamp(1, 3));
    let actions = cached_actions(n).choose(rng).expect("the projection is always valid");
    pointed_algebra_from_actions(n, actions).expect("valid actions")
}

/// A random term automaton over `alphabet` with at most `max_size`
/// carrier elements: a surjective `κ`, random transitions, and actions
/// chosen uniformly among those compatible with them.
pub fn random_term_automaton<R: Rng>(rng: &mut R, alphabet: &RankedAlphabet, max_size: usize) -> TermAutomaton {
    let n = rng.gen_range(1..=max_size.max(1));
    let nq = rng.gen_range(1..=n);
    let carrier = int_carrier(n);
    let states: ElemSet = (0..nq).map(|i| Elem::sym(&format!("q{i}"))).collect();
    let mut kappa: Vec<usize> = (0..n).map(|i| if i < nq { i } else { rng.gen_range(0..nq) }).collect();
    kappa.shuffle(rng);
    let kappa_table = FnTable::from_values(carrier.clone(), kappa.iter().map(|&q| states.get(q).clone()).collect())
        .expect("carrier table");
    let fibre: Vec<Vec<usize>> = (0..nq).map(|q| (0..n).filter(|&a| kappa[a] == q).collect()).collect();
    let mut transitions = BTreeMap::new();
    let mut delta: BTreeMap<String, Vec<usize>> = BTreeMap::new();
    for (s, k) in alphabet.symbols() {
        let size = nq.pow(k as u32);
        let table: Vec<usize> = (0..size).map(|_| rng.gen_range(0..nq)).collect();
        let rows = table
            .iter()
            .enumerate()
            .map(|(i, &q)| {
                (digits(i, nq, k).into_iter().map(|d| states.get(d).clone()).collect(), states.get(q).clone())
            })
            .collect();
        transitions.insert(s.to_string(), rows);
        delta.insert(s.to_string(), table);
    }
    let mut actions = Vec::new();
    for (s, k) in alphabet.symbols() {
        for slot in 0..k {
            for idx in 0..nq.pow(k as u32 - 1) {
                let others = digits(idx, nq, k - 1);
                let values: Vec<Elem> = (0..n)
                    .map(|a| {
                        let mut args = others.clone();
                        args.insert(slot, kappa[a]);
                        let target = delta[s.as_ref()][args.iter().fold(0, |acc, &d| acc * nq + d)];
                        Elem::int(*fibre[target].choose(rng).expect("κ is surjective") as i64)
                    })
                    .collect();
                let t = FnTable::from_values(carrier.clone(), values).expect("carrier table");
                actions.push((s.to_string(), slot, others.iter().map(|&d| states.get(d).clone()).collect(), t));
            }
        }
    }
    TermAutomaton::new(alphabet.clone(), carrier, states, &kappa_table, &transitions, &actions)
        .expect("compatible by construction")
}

fn digits(mut index: usize, base: usize, len: usize) -> Vec<usize> {
    let mut out = vec![0; len];
    for slot in out.iter_mut().rev() {
        *slot = index % base;
        index /= base;
    }
    out
}

/// A random algebra for `inst` with at most `max_size` elements.
pub fn random_algebra<R: Rng>(rng: &mut R, inst: &Moconad, max_size: usize) -> FiniteAlgebra {
    match inst.kind() {
        FunctorKind::PrefixList | FunctorKind::SuffixList => {
            FiniteAlgebra::from_semigroup(random_semigroup(rng, max_size), inst.kind()).expect("list kind")
        }
        FunctorKind::PointedList => random_pointed_algebra(rng, max_size),
        FunctorKind::PointedTerm => {
            let alphabet = inst.alphabet().expect("term alphabet");
            FiniteAlgebra::from_term(random_term_automaton(rng, alphabet, max_size)).expect("term instance")
        }
    }
}

/// A random transduction reading `input`, writing a random alphabet of
/// `1..=max_alphabet` letters, over an algebra of at most `max_size`
/// elements.
pub fn random_transduction<R: Rng>(
    rng: &mut R,
    inst: &Moconad,
    input: &ElemSet,
    max_size: usize,
    max_alphabet: usize,
) -> Transduction {
    let alg = random_algebra(rng, inst, max_size);
    let carrier = alg.listed_carrier().expect("listed").clone();
    let output = letters(rng.gen_range(1..=max_alphabet.max(1)));
    let h = FnTable::tabulate(input, |_| carrier.get(rng.gen_range(0..carrier.len())).clone());
    let lambda = FnTable::tabulate(&carrier, |_| output.get(rng.gen_range(0..output.len())).clone());
    Transduction::new(alg, h, output, lambda).expect("well formed")
}

/// A pair `(F, G)` where `G` reads exactly what `F` writes.
pub fn random_transduction_pair<R: Rng>(
    rng: &mut R,
    inst: &Moconad,
    max_size: usize,
    max_alphabet: usize,
) -> (Transduction, Transduction) {
    let input = letters(rng.gen_range(1..=max_alphabet.max(1)));
    let f = random_transduction(rng, inst, &input, max_size, max_alphabet);
    let g = random_transduction(rng, inst, &f.output_alphabet().clone(), max_size, max_alphabet);
    (f, g)
}

/// A random complete Mealy machine with `1..=max_states` states.
pub fn random_mealy<R: Rng>(
    rng: &mut R,
    max_states: usize,
    input: &ElemSet,
    output: &ElemSet,
    direction: Direction,
) -> MealyMachine {
    let n = rng.gen_range(1..=max_states.max(1));
    let states: ElemSet = (0..n).map(|i| Elem::sym(&format!("q{i}"))).collect();
    let mut rows = Vec::new();
    for q in states.iter() {
        for a in input.iter() {
            let r = states.get(rng.gen_range(0..n)).clone();
            let b = output.get(rng.gen_range(0..output.len())).clone();
            rows.push(((q.clone(), a.clone()), (r, b)));
        }
    }
    MealyMachine::new(states.clone(), states.get(0).clone(), input.clone(), output.clone(), &rows, direction)
        .expect("complete by construction")
}

/// The ranked alphabet used for term corpora: `f` binary, `g` unary, `c`
/// a constant.
pub fn term_alphabet() -> RankedAlphabet {
    RankedAlphabet::new([("f", 2), ("g", 1), ("c", 0)])
}
