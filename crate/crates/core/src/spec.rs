//! JSON spec documents.
//!
//! Every document is an object with a `"kind"` field. Function tables are
//! arrays of `[input, output]` pairs sorted by input, and documents are
//! written with sorted keys and no floats, so saving is byte-stable.
//!
//! | kind | fields |
//! |------|--------|
//! | `semigroup` | `carrier`, `table` with `[[x, y], x·y]` rows |
//! | `pointed-presentation` | `carrier`, `left`, `right` (monoids), `h_left`, `h_right`, `g` with `[[l, a, r], g]` rows |
//! | `term-automaton` | `alphabet`, `carrier`, `states`, `kappa`, `transitions`, `actions` |
//! | `transduction` | `functor`, `algebra`, `input_map`, `output_alphabet`, `output_map` |
//! | `mealy` | `states`, `initial`, `input_alphabet`, `output_alphabet`, `direction`, `transitions` |
//! | `unambiguous-mealy` | `states`, `initial`, `final`, `input_alphabet`, `output_alphabet`, `transitions` |
//! | `word` | `letters` |
//! | `pointed-word` | `letters`, `focus` (1-based) |
//! | `term` | `root`, `focus` (1-based path) |
//!
//! Inside a transduction, `algebra` is one of the three presentation kinds
//! above, or `behaviour`, `relation-triple`, `wreath` or
//! `classical-wreath`, which describe algebras built by conversions and
//! compositions.

use std::collections::BTreeMap;
use std::path::Path;
use std::sync::Arc;

use serde_json::{json, Map, Value};

use crate::algebra::{
    BehaviourSemigroup, ClassicalWreath, FiniteAlgebra, MonoidTable, PointedPresentation, Presentation, SemigroupTable,
    TermAutomaton, TripleAlgebra, WreathAlgebra, DEFAULT_CARRIER_CAP,
};
use crate::elem::{Elem, FnTable};
use crate::error::{Error, Result};
use crate::json::{
    alphabet_from_json, alphabet_to_json, elem_from_json, elem_to_json, mval_from_json, mval_to_json, node_to_json,
    set_from_json, set_to_json, table_from_json, table_to_json, to_canonical_string,
};
use crate::mealy::{Direction, MealyMachine, UnambiguousMealy, Word};
use crate::moconad::{FunctorKind, MVal, PointedTerm};
use crate::transduction::{OutputMap, Transduction};

/// A parsed document.
#[derive(Clone, Debug, PartialEq)]
pub enum SpecDocument {
    Semigroup(SemigroupTable),
    PointedPresentation(PointedPresentation),
    TermAutomaton(TermAutomaton),
    Transduction(Transduction),
    Mealy(MealyMachine),
    UnambiguousMealy(UnambiguousMealy),
    Word(Word),
    PointedWord(MVal),
    Term(MVal),
}

fn schema(msg: impl Into<String>) -> Error {
    Error::Schema(msg.into())
}

/// Any error raised while building an object from a document means the
/// document is malformed.
fn as_schema(e: Error) -> Error {
    if e.is_schema() {
        e
    } else {
        Error::Schema(e.to_string())
    }
}

fn field<'a>(o: &'a Map<String, Value>, name: &str) -> Result<&'a Value> {
    o.get(name).ok_or_else(|| schema(format!("missing field {name:?}")))
}

fn object<'a>(v: &'a Value, what: &str) -> Result<&'a Map<String, Value>> {
    v.as_object().ok_or_else(|| schema(format!("{what} must be an object")))
}

fn array<'a>(v: &'a Value, what: &str) -> Result<&'a Vec<Value>> {
    v.as_array().ok_or_else(|| schema(format!("{what} must be an array")))
}

fn string<'a>(v: &'a Value, what: &str) -> Result<&'a str> {
    v.as_str().ok_or_else(|| schema(format!("{what} must be a string")))
}

fn with_kind(kind: &str, mut o: Map<String, Value>) -> Value {
    o.insert("kind".into(), json!(kind));
    Value::Object(o)
}

fn rows_from_json(v: &Value, width: usize, what: &str) -> Result<Vec<(Vec<Elem>, Elem)>> {
    array(v, what)?
        .iter()
        .map(|row| {
            let row = row
                .as_array()
                .filter(|r| r.len() == 2)
                .ok_or_else(|| schema(format!("{what} rows are [input, output]")))?;
            let input = array(&row[0], what)?;
            if input.len() != width {
                return Err(schema(format!("{what} inputs have {width} components")));
            }
            Ok((input.iter().map(elem_from_json).collect::<Result<_>>()?, elem_from_json(&row[1])?))
        })
        .collect()
}

fn semigroup_to_json(t: &SemigroupTable) -> Map<String, Value> {
    let mut o = Map::new();
    o.insert("carrier".into(), set_to_json(t.carrier()));
    o.insert(
        "table".into(),
        Value::Array(
            t.entries()
                .iter()
                .map(|((x, y), z)| json!([[elem_to_json(x), elem_to_json(y)], elem_to_json(z)]))
                .collect(),
        ),
    );
    o
}

fn semigroup_from_json(o: &Map<String, Value>) -> Result<SemigroupTable> {
    let carrier = set_from_json(field(o, "carrier")?)?;
    let rows = rows_from_json(field(o, "table")?, 2, "table")?;
    let entries: Vec<_> = rows.into_iter().map(|(xy, z)| ((xy[0].clone(), xy[1].clone()), z)).collect();
    SemigroupTable::from_entries(carrier, &entries).map_err(as_schema)
}

fn monoid_to_json(m: &MonoidTable) -> Value {
    let mut o = semigroup_to_json(m.semigroup());
    o.insert("identity".into(), elem_to_json(m.identity()));
    Value::Object(o)
}

fn monoid_from_json(v: &Value) -> Result<MonoidTable> {
    let o = object(v, "monoid")?;
    let sg = semigroup_from_json(o)?;
    MonoidTable::new(sg, &elem_from_json(field(o, "identity")?)?).map_err(as_schema)
}

fn pointed_to_json(p: &PointedPresentation) -> Map<String, Value> {
    let mut o = Map::new();
    o.insert("carrier".into(), set_to_json(p.carrier()));
    o.insert("left".into(), monoid_to_json(p.left()));
    o.insert("right".into(), monoid_to_json(p.right()));
    o.insert("h_left".into(), table_to_json(&p.h_left()));
    o.insert("h_right".into(), table_to_json(&p.h_right()));
    o.insert(
        "g".into(),
        Value::Array(
            p.g_entries()
                .iter()
                .map(|((l, a, r), x)| json!([[elem_to_json(l), elem_to_json(a), elem_to_json(r)], elem_to_json(x)]))
                .collect(),
        ),
    );
    o
}

fn pointed_from_json(o: &Map<String, Value>) -> Result<PointedPresentation> {
    let carrier = set_from_json(field(o, "carrier")?)?;
    let left = monoid_from_json(field(o, "left")?)?;
    let right = monoid_from_json(field(o, "right")?)?;
    let hl = table_from_json(field(o, "h_left")?)?;
    let hr = table_from_json(field(o, "h_right")?)?;
    let g: Vec<_> = rows_from_json(field(o, "g")?, 3, "g")?
        .into_iter()
        .map(|(k, x)| ((k[0].clone(), k[1].clone(), k[2].clone()), x))
        .collect();
    PointedPresentation::new(carrier, left, right, &hl, &hr, &g).map_err(as_schema)
}

fn term_to_json(t: &TermAutomaton) -> Map<String, Value> {
    let mut o = Map::new();
    o.insert("alphabet".into(), alphabet_to_json(t.alphabet()));
    o.insert("carrier".into(), set_to_json(t.carrier()));
    o.insert("states".into(), set_to_json(t.states()));
    o.insert("kappa".into(), table_to_json(&t.kappa()));
    let transitions: Map<String, Value> = t
        .transitions()
        .into_iter()
        .map(|(s, rows)| {
            let rows = rows
                .iter()
                .map(|(args, q)| json!([args.iter().map(elem_to_json).collect::<Vec<_>>(), elem_to_json(q)]))
                .collect();
            (s, Value::Array(rows))
        })
        .collect();
    o.insert("transitions".into(), Value::Object(transitions));
    o.insert(
        "actions".into(),
        Value::Array(
            t.actions()
                .iter()
                .map(|(s, slot, others, table)| {
                    json!({
                        "symbol": s,
                        "slot": slot + 1,
                        "others": others.iter().map(elem_to_json).collect::<Vec<_>>(),
                        "table": table_to_json(table),
                    })
                })
                .collect(),
        ),
    );
    o
}

fn term_from_json(o: &Map<String, Value>) -> Result<TermAutomaton> {
    let alphabet = alphabet_from_json(field(o, "alphabet")?)?;
    let carrier = set_from_json(field(o, "carrier")?)?;
    let states = set_from_json(field(o, "states")?)?;
    let kappa = table_from_json(field(o, "kappa")?)?;
    let mut transitions = BTreeMap::new();
    for (s, rows) in object(field(o, "transitions")?, "transitions")? {
        let arity = alphabet.arity(s).ok_or_else(|| schema(format!("transitions for unknown symbol {s}")))?;
        transitions.insert(s.clone(), rows_from_json(rows, arity, "transitions")?);
    }
    let mut actions = Vec::new();
    for a in array(field(o, "actions")?, "actions")? {
        let a = object(a, "action")?;
        let slot = field(a, "slot")?.as_u64().filter(|&s| s >= 1).ok_or_else(|| schema("action slots are 1-based"))?;
        actions.push((
            string(field(a, "symbol")?, "action symbol")?.to_string(),
            slot as usize - 1,
            array(field(a, "others")?, "others")?.iter().map(elem_from_json).collect::<Result<_>>()?,
            table_from_json(field(a, "table")?)?,
        ));
    }
    TermAutomaton::new(alphabet, carrier, states, &kappa, &transitions, &actions).map_err(as_schema)
}

/// An algebra inside a transduction document.
pub fn algebra_to_json(alg: &FiniteAlgebra) -> Value {
    match alg.presentation() {
        Presentation::Semigroup(t) => with_kind("semigroup", semigroup_to_json(t)),
        Presentation::Pointed(p) => with_kind("pointed-presentation", pointed_to_json(p)),
        Presentation::Term(t) => with_kind("term-automaton", term_to_json(t)),
        Presentation::Behaviour(b) => {
            let mut o = Map::new();
            o.insert("states".into(), set_to_json(b.states()));
            o.insert("carrier".into(), set_to_json(b.carrier()));
            o.insert("opposite".into(), json!(b.is_opposite()));
            with_kind("behaviour", o)
        }
        Presentation::Triple(t) => {
            let mut o = Map::new();
            o.insert("monoid".into(), monoid_to_json(t.monoid()));
            o.insert("letters".into(), table_to_json(&t.letter_map()));
            with_kind("relation-triple", o)
        }
        Presentation::Wreath(w) => {
            let mut o = Map::new();
            o.insert("first".into(), algebra_to_json(w.first()));
            o.insert("second".into(), algebra_to_json(w.second()));
            o.insert("restricted".into(), json!(w.is_restricted()));
            with_kind("wreath", o)
        }
        Presentation::Classical(c) => {
            let mut o = Map::new();
            o.insert("first".into(), algebra_to_json(c.first()));
            o.insert("second".into(), algebra_to_json(c.second()));
            with_kind("classical-wreath", o)
        }
    }
}

/// Reads an algebra for the given functor.
pub fn algebra_from_json(v: &Value, kind: FunctorKind) -> Result<FiniteAlgebra> {
    let o = object(v, "algebra")?;
    let alg = match string(field(o, "kind")?, "algebra kind")? {
        "semigroup" => FiniteAlgebra::from_semigroup(semigroup_from_json(o)?, kind),
        "pointed-presentation" => Ok(FiniteAlgebra::from_pointed(pointed_from_json(o)?)),
        "term-automaton" => FiniteAlgebra::from_term(term_from_json(o)?),
        "behaviour" => {
            let b = BehaviourSemigroup::from_parts(
                set_from_json(field(o, "states")?)?,
                set_from_json(field(o, "carrier")?)?,
                field(o, "opposite")?.as_bool().ok_or_else(|| schema("opposite must be a boolean"))?,
            )
            .map_err(as_schema)?;
            FiniteAlgebra::from_behaviour(b, kind)
        }
        "relation-triple" => {
            let monoid = monoid_from_json(field(o, "monoid")?)?;
            let letters = table_from_json(field(o, "letters")?)?;
            Ok(FiniteAlgebra::from_triple(TripleAlgebra::new(monoid, &letters).map_err(as_schema)?))
        }
        "wreath" => {
            let first = algebra_from_json(field(o, "first")?, kind)?;
            let second = algebra_from_json(field(o, "second")?, kind)?;
            let restricted = field(o, "restricted")?.as_bool().ok_or_else(|| schema("restricted must be a boolean"))?;
            WreathAlgebra::product(&first, &second, restricted, DEFAULT_CARRIER_CAP)
        }
        "classical-wreath" => {
            let first = algebra_from_json(field(o, "first")?, kind)?;
            let second = algebra_from_json(field(o, "second")?, kind)?;
            ClassicalWreath::product(&first, &second, DEFAULT_CARRIER_CAP)
        }
        other => return Err(schema(format!("unknown algebra kind {other:?}"))),
    }
    .map_err(as_schema)?;
    if alg.kind() != kind {
        return Err(schema(format!(
            "a {} algebra cannot serve the functor {}",
            alg.presentation().kind_name(),
            kind.name()
        )));
    }
    Ok(alg)
}

fn output_map_to_json(m: &OutputMap) -> Value {
    match m {
        OutputMap::Table(t) => table_to_json(t),
        OutputMap::Readout { key, inner } => json!({ "key": elem_to_json(key), "inner": output_map_to_json(inner) }),
    }
}

fn output_map_from_json(v: &Value) -> Result<OutputMap> {
    match v {
        Value::Array(_) => Ok(OutputMap::Table(table_from_json(v)?)),
        Value::Object(o) => Ok(OutputMap::Readout {
            key: elem_from_json(field(o, "key")?)?,
            inner: Arc::new(output_map_from_json(field(o, "inner")?)?),
        }),
        _ => Err(schema("output map must be a table or a readout object")),
    }
}

pub fn transduction_to_json(t: &Transduction) -> Value {
    let mut o = Map::new();
    o.insert("functor".into(), json!(t.instance().name()));
    o.insert("algebra".into(), algebra_to_json(t.algebra()));
    o.insert("input_map".into(), table_to_json(t.input_map()));
    o.insert("output_alphabet".into(), set_to_json(t.output_alphabet()));
    o.insert("output_map".into(), output_map_to_json(t.output_map()));
    with_kind("transduction", o)
}

fn transduction_from_json(o: &Map<String, Value>) -> Result<Transduction> {
    let name = string(field(o, "functor")?, "functor")?;
    let kind = FunctorKind::from_name(name).ok_or_else(|| schema(format!("unknown functor {name:?}")))?;
    let alg = algebra_from_json(field(o, "algebra")?, kind)?;
    let h = table_from_json(field(o, "input_map")?)?;
    let gamma = set_from_json(field(o, "output_alphabet")?)?;
    let out = match output_map_from_json(field(o, "output_map")?)? {
        OutputMap::Table(t) if alg.carrier().as_listed().is_some() => Transduction::new(alg, h, gamma, t),
        other => Transduction::from_parts(alg, h, gamma, other),
    };
    out.map_err(as_schema)
}

fn mealy_to_json(m: &MealyMachine) -> Value {
    let mut o = Map::new();
    o.insert("states".into(), set_to_json(m.states()));
    o.insert("initial".into(), elem_to_json(m.initial()));
    o.insert("input_alphabet".into(), set_to_json(m.input_alphabet()));
    o.insert("output_alphabet".into(), set_to_json(m.output_alphabet()));
    o.insert("direction".into(), json!(m.direction().name()));
    o.insert(
        "transitions".into(),
        Value::Array(
            m.transitions()
                .iter()
                .map(|((q, a), (r, b))| json!([[elem_to_json(q), elem_to_json(a)], [elem_to_json(r), elem_to_json(b)]]))
                .collect(),
        ),
    );
    with_kind("mealy", o)
}

fn mealy_from_json(o: &Map<String, Value>) -> Result<MealyMachine> {
    let direction = match o.get("direction") {
        None => Direction::LeftToRight,
        Some(d) => {
            let d = string(d, "direction")?;
            Direction::from_name(d).ok_or_else(|| schema(format!("unknown direction {d:?}")))?
        }
    };
    let mut rows = Vec::new();
    for r in array(field(o, "transitions")?, "transitions")? {
        let r = r
            .as_array()
            .filter(|r| r.len() == 2)
            .ok_or_else(|| schema("transitions are [[state, letter], [state, output]]"))?;
        let pair = |v: &Value| -> Result<(Elem, Elem)> {
            let p = v.as_array().filter(|p| p.len() == 2).ok_or_else(|| schema("transition parts are pairs"))?;
            Ok((elem_from_json(&p[0])?, elem_from_json(&p[1])?))
        };
        rows.push((pair(&r[0])?, pair(&r[1])?));
    }
    MealyMachine::new(
        set_from_json(field(o, "states")?)?,
        elem_from_json(field(o, "initial")?)?,
        set_from_json(field(o, "input_alphabet")?)?,
        set_from_json(field(o, "output_alphabet")?)?,
        &rows,
        direction,
    )
    .map_err(as_schema)
}

fn unambiguous_to_json(u: &UnambiguousMealy) -> Value {
    let mut o = Map::new();
    o.insert("states".into(), set_to_json(u.states()));
    o.insert("initial".into(), set_to_json(u.initial()));
    o.insert("final".into(), set_to_json(u.finals()));
    o.insert("input_alphabet".into(), set_to_json(u.input_alphabet()));
    o.insert("output_alphabet".into(), set_to_json(u.output_alphabet()));
    o.insert(
        "transitions".into(),
        Value::Array(
            u.transitions()
                .iter()
                .map(|(p, a, q, b)| json!([elem_to_json(p), elem_to_json(a), elem_to_json(q), elem_to_json(b)]))
                .collect(),
        ),
    );
    with_kind("unambiguous-mealy", o)
}

fn unambiguous_from_json(o: &Map<String, Value>) -> Result<UnambiguousMealy> {
    let mut transitions = Vec::new();
    for t in array(field(o, "transitions")?, "transitions")? {
        let t = t
            .as_array()
            .filter(|t| t.len() == 4)
            .ok_or_else(|| schema("transitions are [source, letter, target, output]"))?;
        transitions.push((
            elem_from_json(&t[0])?,
            elem_from_json(&t[1])?,
            elem_from_json(&t[2])?,
            elem_from_json(&t[3])?,
        ));
    }
    UnambiguousMealy::new(
        set_from_json(field(o, "states")?)?,
        set_from_json(field(o, "initial")?)?,
        set_from_json(field(o, "final")?)?,
        set_from_json(field(o, "input_alphabet")?)?,
        set_from_json(field(o, "output_alphabet")?)?,
        transitions,
    )
    .map_err(as_schema)
}

fn letters_from_json(o: &Map<String, Value>) -> Result<Word> {
    let w: Word = array(field(o, "letters")?, "letters")?.iter().map(elem_from_json).collect::<Result<_>>()?;
    if w.is_empty() {
        return Err(schema("words must be nonempty"));
    }
    Ok(w)
}

impl SpecDocument {
    pub fn kind(&self) -> &'static str {
        match self {
            SpecDocument::Semigroup(_) => "semigroup",
            SpecDocument::PointedPresentation(_) => "pointed-presentation",
            SpecDocument::TermAutomaton(_) => "term-automaton",
            SpecDocument::Transduction(_) => "transduction",
            SpecDocument::Mealy(_) => "mealy",
            SpecDocument::UnambiguousMealy(_) => "unambiguous-mealy",
            SpecDocument::Word(_) => "word",
            SpecDocument::PointedWord(_) => "pointed-word",
            SpecDocument::Term(_) => "term",
        }
    }

    pub fn from_json(v: &Value) -> Result<SpecDocument> {
        let o = object(v, "document")?;
        let kind = string(field(o, "kind")?, "kind")?;
        Ok(match kind {
            "semigroup" => SpecDocument::Semigroup(semigroup_from_json(o)?),
            "pointed-presentation" => SpecDocument::PointedPresentation(pointed_from_json(o)?),
            "term-automaton" => SpecDocument::TermAutomaton(term_from_json(o)?),
            "transduction" => SpecDocument::Transduction(transduction_from_json(o)?),
            "mealy" => SpecDocument::Mealy(mealy_from_json(o)?),
            "unambiguous-mealy" => SpecDocument::UnambiguousMealy(unambiguous_from_json(o)?),
            "word" => SpecDocument::Word(letters_from_json(o)?),
            "pointed-word" => {
                let items = letters_from_json(o)?;
                let focus = field(o, "focus")?.as_u64().ok_or_else(|| schema("focus must be a positive integer"))?;
                if focus == 0 || focus as usize > items.len() {
                    return Err(schema(format!("focus {focus} is outside 1..={}", items.len())));
                }
                SpecDocument::PointedWord(MVal::PointedList { items, focus: focus as usize - 1 })
            }
            "term" => {
                let m = mval_from_json(&json!({
                    "functor": "pointed-term",
                    "root": field(o, "root")?,
                    "focus": field(o, "focus")?,
                }))?;
                SpecDocument::Term(m)
            }
            other => return Err(schema(format!("unknown document kind {other:?}"))),
        })
    }

    pub fn to_json(&self) -> Value {
        match self {
            SpecDocument::Semigroup(t) => with_kind("semigroup", semigroup_to_json(t)),
            SpecDocument::PointedPresentation(p) => with_kind("pointed-presentation", pointed_to_json(p)),
            SpecDocument::TermAutomaton(t) => with_kind("term-automaton", term_to_json(t)),
            SpecDocument::Transduction(t) => transduction_to_json(t),
            SpecDocument::Mealy(m) => mealy_to_json(m),
            SpecDocument::UnambiguousMealy(u) => unambiguous_to_json(u),
            SpecDocument::Word(w) => {
                json!({ "kind": "word", "letters": w.iter().map(elem_to_json).collect::<Vec<_>>() })
            }
            SpecDocument::PointedWord(m) => {
                let MVal::PointedList { items, focus } = m else { unreachable!("pointed word") };
                json!({
                    "kind": "pointed-word",
                    "letters": items.iter().map(elem_to_json).collect::<Vec<_>>(),
                    "focus": focus + 1,
                })
            }
            SpecDocument::Term(m) => {
                let MVal::PointedTerm(PointedTerm { root, focus }) = m else { unreachable!("term") };
                json!({
                    "kind": "term",
                    "root": node_to_json(root),
                    "focus": focus.iter().map(|i| i + 1).collect::<Vec<_>>(),
                })
            }
        }
    }

    /// The document for a functor value: words for the two list functors,
    /// pointed words and terms otherwise.
    pub fn from_value(m: &MVal) -> SpecDocument {
        match m {
            MVal::PrefixList(xs) | MVal::SuffixList(xs) => SpecDocument::Word(xs.clone()),
            MVal::PointedList { .. } => SpecDocument::PointedWord(m.clone()),
            MVal::PointedTerm(_) => SpecDocument::Term(m.clone()),
        }
    }

    pub fn parse(text: &str) -> Result<SpecDocument> {
        let v: Value = serde_json::from_str(text)?;
        SpecDocument::from_json(&v)
    }

    pub fn load(path: &Path) -> Result<SpecDocument> {
        let text = std::fs::read_to_string(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
        SpecDocument::parse(&text)
    }

    /// Canonical text followed by a newline.
    pub fn to_canonical(&self) -> String {
        let mut s = to_canonical_string(&self.to_json());
        s.push('\n');
        s
    }

    pub fn save(&self, path: &Path) -> Result<()> {
        std::fs::write(path, self.to_canonical()).map_err(|e| Error::Io(format!("{}: {e}", path.display())))
    }
}

/// A value document for a functor, used by the CLI's `--json-input`.
pub fn value_to_json(m: &MVal) -> Value {
    mval_to_json(m)
}

/// Reads a function table written as `{"table": ...}` or as rows.
pub fn fn_table_from_json(v: &Value) -> Result<FnTable> {
    match v {
        Value::Object(o) if o.contains_key("table") => table_from_json(field(o, "table")?),
        _ => table_from_json(v),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::mealy::{change_first_a_machine, replace_first_with_last_machine};

    fn round_trip(d: &SpecDocument) {
        let text = d.to_canonical();
        let back = SpecDocument::parse(&text).unwrap();
        assert_eq!(&back, d);
        assert_eq!(back.to_canonical(), text);
    }

    #[test]
    fn machines_round_trip() {
        round_trip(&SpecDocument::Mealy(change_first_a_machine()));
        round_trip(&SpecDocument::UnambiguousMealy(replace_first_with_last_machine()));
    }

    #[test]
    fn converted_transductions_round_trip() {
        round_trip(&SpecDocument::Transduction(change_first_a_machine().to_transduction().unwrap()));
        round_trip(&SpecDocument::Transduction(replace_first_with_last_machine().to_transduction().unwrap()));
    }

    #[test]
    fn words_round_trip() {
        round_trip(&SpecDocument::Word(vec![Elem::sym("a"), Elem::int(3)]));
        round_trip(&SpecDocument::PointedWord(MVal::PointedList {
            items: vec![Elem::sym("a"), Elem::sym("b")],
            focus: 1,
        }));
    }

    #[test]
    fn keys_are_sorted() {
        let text = SpecDocument::Word(vec![Elem::sym("a")]).to_canonical();
        assert_eq!(text, "{\"kind\":\"word\",\"letters\":[\"a\"]}\n");
    }

    #[test]
    fn non_associative_table_is_a_schema_error() {
        let doc = json!({
            "kind": "semigroup",
            "carrier": [0, 1],
            "table": [[[0, 0], 1], [[0, 1], 1], [[1, 0], 0], [[1, 1], 0]],
        });
        assert!(matches!(SpecDocument::from_json(&doc), Err(Error::Schema(_))));
    }
}
