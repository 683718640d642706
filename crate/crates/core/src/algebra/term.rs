//! Pointed-term algebras presented by a bottom-up automaton and focus
//! actions.
//!
//! Subtrees that do not contain the focus are summarised by a state: a
//! leaf labelled `x` has state `κ(x)` and an inner node `s` has state
//! `δ_s(q₁, …, qₖ)`. Along the path from the focused leaf to the root the
//! carrier value is transformed by one action per ancestor, selected by the
//! ancestor's symbol, the slot holding the focus and the states of the other
//! children. Compatibility `κ(act(a)) = δ_s(…, κ(a), …)` makes the resulting
//! product satisfy both algebra axioms.

use std::collections::BTreeMap;
use std::sync::Arc;

use crate::elem::{Elem, ElemSet, FnTable};
use crate::error::{Error, Result};
use crate::moconad::{Node, PointedTerm, RankedAlphabet};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct TermAutomaton {
    alphabet: RankedAlphabet,
    carrier: ElemSet,
    states: ElemSet,
    kappa: Vec<u32>,
    /// Per symbol, indexed by the children states in mixed radix (first
    /// child most significant).
    delta: BTreeMap<Arc<str>, Vec<u32>>,
    /// Per `(symbol, slot)`, indexed like `delta` over the other children,
    /// each entry a carrier-to-carrier table by index.
    actions: BTreeMap<(Arc<str>, usize), Vec<Vec<u32>>>,
}

/// One focus action as supplied by a caller: symbol, 0-based slot, states of
/// the other children in order, and the carrier table.
pub type ActionEntry = (String, usize, Vec<Elem>, FnTable);

fn radix_index(digits: impl IntoIterator<Item = usize>, base: usize) -> usize {
    digits.into_iter().fold(0, |acc, d| acc * base + d)
}

fn radix_digits(mut index: usize, base: usize, len: usize) -> Vec<usize> {
    let mut out = vec![0; len];
    for slot in out.iter_mut().rev() {
        *slot = index % base;
        index /= base;
    }
    out
}

impl TermAutomaton {
    /// Builds and validates an automaton. Every symbol needs a complete
    /// transition table, every `(symbol, slot, other states)` an action,
    /// and every action must be compatible with `κ` and `δ`.
    pub fn new(
        alphabet: RankedAlphabet,
        carrier: ElemSet,
        states: ElemSet,
        kappa: &FnTable,
        transitions: &BTreeMap<String, Vec<(Vec<Elem>, Elem)>>,
        actions: &[ActionEntry],
    ) -> Result<TermAutomaton> {
        if carrier.is_empty() || states.is_empty() {
            return Err(Error::Structure("carrier and states must be nonempty".into()));
        }
        if alphabet.is_empty() {
            return Err(Error::Structure("ranked alphabet must be nonempty".into()));
        }
        if kappa.domain() != &carrier {
            return Err(Error::Structure("κ must be defined exactly on the carrier".into()));
        }
        let kappa: Vec<u32> =
            kappa.values().iter().map(|q| states.require(q, "states").map(|i| i as u32)).collect::<Result<_>>()?;
        let nq = states.len();
        let mut delta = BTreeMap::new();
        for (sym, arity) in alphabet.symbols() {
            let rows = transitions
                .get(sym.as_ref())
                .ok_or_else(|| Error::Structure(format!("no transitions for symbol {sym}")))?;
            let mut table = vec![u32::MAX; nq.pow(arity as u32)];
            for (args, out) in rows {
                if args.len() != arity {
                    return Err(Error::Structure(format!(
                        "transition of {sym} has {} arguments, arity is {arity}",
                        args.len()
                    )));
                }
                let idx =
                    radix_index(args.iter().map(|q| states.require(q, "states")).collect::<Result<Vec<_>>>()?, nq);
                if table[idx] != u32::MAX {
                    return Err(Error::Structure(format!("transition of {sym} on {args:?} is given twice")));
                }
                table[idx] = states.require(out, "states")? as u32;
            }
            if let Some(p) = table.iter().position(|&v| v == u32::MAX) {
                let args: Vec<String> = radix_digits(p, nq, arity).iter().map(|&i| states.get(i).to_string()).collect();
                return Err(Error::Structure(format!("transition of {sym} on ({}) is missing", args.join(", "))));
            }
            delta.insert(sym.clone(), table);
        }
        for s in transitions.keys() {
            if alphabet.arity(s).is_none() {
                return Err(Error::Structure(format!("transitions given for unknown symbol {s}")));
            }
        }
        let mut acts: BTreeMap<(Arc<str>, usize), Vec<Vec<u32>>> = BTreeMap::new();
        for (sym, arity) in alphabet.symbols() {
            for slot in 0..arity {
                acts.insert((sym.clone(), slot), vec![Vec::new(); nq.pow(arity as u32 - 1)]);
            }
        }
        for (sym, slot, others, table) in actions {
            let arity =
                alphabet.arity(sym).ok_or_else(|| Error::Structure(format!("action for unknown symbol {sym}")))?;
            if *slot >= arity || others.len() + 1 != arity {
                return Err(Error::Structure(format!(
                    "action for {sym} at slot {} does not fit arity {arity}",
                    slot + 1
                )));
            }
            if table.domain() != &carrier {
                return Err(Error::Structure(format!("action for {sym} must be a table on the carrier")));
            }
            let idx = radix_index(others.iter().map(|q| states.require(q, "states")).collect::<Result<Vec<_>>>()?, nq);
            let key = (Arc::<str>::from(sym.as_str()), *slot);
            let entry = &mut acts.get_mut(&key).expect("prepared")[idx];
            if !entry.is_empty() {
                return Err(Error::Structure(format!("action for {sym} at slot {} is given twice", slot + 1)));
            }
            *entry = table
                .values()
                .iter()
                .map(|v| carrier.require(v, "carrier").map(|i| i as u32))
                .collect::<Result<_>>()?;
        }
        let automaton = TermAutomaton { alphabet, carrier, states, kappa, delta, actions: acts };
        automaton.check_actions()?;
        Ok(automaton)
    }

    fn check_actions(&self) -> Result<()> {
        let nq = self.states.len();
        for ((sym, slot), tables) in &self.actions {
            let arity = self.alphabet.arity(sym).expect("known");
            for (idx, table) in tables.iter().enumerate() {
                let others = radix_digits(idx, nq, arity - 1);
                if table.is_empty() {
                    let names: Vec<String> = others.iter().map(|&i| self.states.get(i).to_string()).collect();
                    return Err(Error::Structure(format!(
                        "action for {sym} at slot {} with other children ({}) is missing",
                        slot + 1,
                        names.join(", ")
                    )));
                }
                for (a, &b) in table.iter().enumerate() {
                    let mut args = others.clone();
                    args.insert(*slot, self.kappa[a] as usize);
                    let expected = self.delta[sym][radix_index(args, nq)];
                    if self.kappa[b as usize] != expected {
                        return Err(Error::Structure(format!(
                            "action for {sym} at slot {} sends {} to {}, whose state differs from the transition",
                            slot + 1,
                            self.carrier.get(a),
                            self.carrier.get(b as usize)
                        )));
                    }
                }
            }
        }
        Ok(())
    }

    pub fn alphabet(&self) -> &RankedAlphabet {
        &self.alphabet
    }

    pub fn carrier(&self) -> &ElemSet {
        &self.carrier
    }

    pub fn states(&self) -> &ElemSet {
        &self.states
    }

    pub fn kappa(&self) -> FnTable {
        FnTable::tabulate(&self.carrier, |x| {
            self.states.get(self.kappa[self.carrier.index_of(x).expect("carrier")] as usize).clone()
        })
    }

    /// Transition rows per symbol, in index order.
    pub fn transitions(&self) -> BTreeMap<String, Vec<(Vec<Elem>, Elem)>> {
        let nq = self.states.len();
        self.delta
            .iter()
            .map(|(s, table)| {
                let arity = self.alphabet.arity(s).expect("known");
                let rows = table
                    .iter()
                    .enumerate()
                    .map(|(i, &q)| {
                        let args = radix_digits(i, nq, arity).into_iter().map(|d| self.states.get(d).clone()).collect();
                        (args, self.states.get(q as usize).clone())
                    })
                    .collect();
                (s.to_string(), rows)
            })
            .collect()
    }

    pub fn actions(&self) -> Vec<ActionEntry> {
        let nq = self.states.len();
        let mut out = Vec::new();
        for ((sym, slot), tables) in &self.actions {
            let arity = self.alphabet.arity(sym).expect("known");
            for (idx, table) in tables.iter().enumerate() {
                let others = radix_digits(idx, nq, arity - 1).into_iter().map(|d| self.states.get(d).clone()).collect();
                let t = FnTable::from_values(
                    self.carrier.clone(),
                    table.iter().map(|&b| self.carrier.get(b as usize).clone()).collect(),
                )
                .expect("carrier table");
                out.push((sym.to_string(), *slot, others, t));
            }
        }
        out
    }

    fn state_of(&self, n: &Node) -> Result<usize> {
        match n {
            Node::Leaf(x) => Ok(self.kappa[self.carrier.require(x, "carrier")?] as usize),
            Node::Inner(s, cs) => {
                let table = self.delta.get(s).ok_or_else(|| Error::Structure(format!("unknown symbol {s}")))?;
                let mut idx = 0;
                for c in cs {
                    idx = idx * self.states.len() + self.state_of(c)?;
                }
                Ok(table[idx] as usize)
            }
        }
    }

    fn eval_path(&self, n: &Node, path: &[usize]) -> Result<usize> {
        match (n, path.split_first()) {
            (Node::Leaf(x), None) => self.carrier.require(x, "carrier"),
            (Node::Inner(s, cs), Some((&slot, rest))) => {
                let below = self.eval_path(&cs[slot], rest)?;
                let mut idx = 0;
                for (i, c) in cs.iter().enumerate() {
                    if i != slot {
                        idx = idx * self.states.len() + self.state_of(c)?;
                    }
                }
                Ok(self.actions[&(s.clone(), slot)][idx][below] as usize)
            }
            _ => Err(Error::Structure("focus path does not end at a leaf".into())),
        }
    }

    /// Product of a pointed term whose leaves are carrier elements.
    pub fn evaluate(&self, t: &PointedTerm) -> Result<Elem> {
        Ok(self.carrier.get(self.eval_path(&t.root, &t.focus)?).clone())
    }
}
