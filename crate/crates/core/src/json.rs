//! JSON encoding of elements and functor values.
//!
//! Encoding:
//! * `Symbol` → string, `Int` → integer,
//! * `Pair` → `{"pair": [l, r]}`, `Seq` → `{"seq": [...]}`,
//! * `FnTable` → `{"table": [[input, output], ...]}` sorted by input,
//! * `Wrapped` → `{"wrapped": <value>}`.
//!
//! Values are `{"functor": name, "items": [...]}` for lists, with a 1-based
//! `"focus"` for pointed lists, and `{"functor": "pointed-term", "root":
//! node, "focus": [1-based child indices]}` for terms, where a node is
//! `{"leaf": elem}` or `{"symbol": s, "children": [...]}`.
//!
//! Objects are emitted through `serde_json::Value`, whose maps are sorted,
//! so the output is canonical.

use serde_json::{json, Map, Value};

use crate::elem::{Elem, ElemSet, FnTable};
use crate::error::{Error, Result};
use crate::moconad::{FunctorKind, MVal, Node, PointedTerm, RankedAlphabet};

fn schema(msg: impl Into<String>) -> Error {
    Error::Schema(msg.into())
}

pub fn elem_to_json(e: &Elem) -> Value {
    match e {
        Elem::Symbol(s) => Value::String(s.to_string()),
        Elem::Int(n) => json!(n),
        Elem::Pair(p) => json!({ "pair": [elem_to_json(&p.0), elem_to_json(&p.1)] }),
        Elem::Seq(xs) => json!({ "seq": xs.iter().map(elem_to_json).collect::<Vec<_>>() }),
        Elem::FnTable(t) => json!({ "table": table_to_json(t) }),
        Elem::Wrapped(v) => json!({ "wrapped": mval_to_json(v) }),
    }
}

pub fn elem_from_json(v: &Value) -> Result<Elem> {
    match v {
        Value::String(s) => Ok(Elem::sym(s)),
        Value::Number(n) => {
            n.as_i64().map(Elem::Int).ok_or_else(|| schema(format!("only integers are allowed, found {n}")))
        }
        Value::Object(m) if m.len() == 1 => {
            let (k, inner) = m.iter().next().expect("one entry");
            match k.as_str() {
                "pair" => {
                    let xs = inner.as_array().filter(|a| a.len() == 2).ok_or_else(|| schema("pair needs two items"))?;
                    Ok(Elem::pair(elem_from_json(&xs[0])?, elem_from_json(&xs[1])?))
                }
                "seq" => {
                    let xs = inner.as_array().ok_or_else(|| schema("seq needs an array"))?;
                    Ok(Elem::seq(xs.iter().map(elem_from_json).collect::<Result<_>>()?))
                }
                "table" => Ok(Elem::FnTable(table_from_json(inner)?)),
                "wrapped" => Ok(Elem::wrap(mval_from_json(inner)?)),
                other => Err(schema(format!("unknown element tag {other:?}"))),
            }
        }
        other => Err(schema(format!("cannot read an element from {other}"))),
    }
}

pub fn table_to_json(t: &FnTable) -> Value {
    Value::Array(t.pairs().map(|(x, y)| json!([elem_to_json(x), elem_to_json(y)])).collect())
}

pub fn table_from_json(v: &Value) -> Result<FnTable> {
    let rows = v.as_array().ok_or_else(|| schema("function table must be an array of pairs"))?;
    let mut pairs = Vec::with_capacity(rows.len());
    for r in rows {
        let r = r.as_array().filter(|r| r.len() == 2).ok_or_else(|| schema("table rows are [input, output]"))?;
        pairs.push((elem_from_json(&r[0])?, elem_from_json(&r[1])?));
    }
    FnTable::from_pairs(pairs).map_err(|e| schema(e.to_string()))
}

pub fn set_to_json(s: &ElemSet) -> Value {
    Value::Array(s.iter().map(elem_to_json).collect())
}

pub fn set_from_json(v: &Value) -> Result<ElemSet> {
    let xs = v.as_array().ok_or_else(|| schema("expected an array of elements"))?;
    let items: Vec<Elem> = xs.iter().map(elem_from_json).collect::<Result<_>>()?;
    let set = ElemSet::new(items.clone());
    if set.len() != items.len() {
        return Err(schema("set lists an element twice"));
    }
    Ok(set)
}

pub fn node_to_json(n: &Node) -> Value {
    match n {
        Node::Leaf(x) => json!({ "leaf": elem_to_json(x) }),
        Node::Inner(s, cs) => json!({
            "symbol": s.to_string(),
            "children": cs.iter().map(node_to_json).collect::<Vec<_>>(),
        }),
    }
}

pub fn node_from_json(v: &Value) -> Result<Node> {
    let m = v.as_object().ok_or_else(|| schema("tree nodes are objects"))?;
    if let Some(x) = m.get("leaf") {
        return Ok(Node::Leaf(elem_from_json(x)?));
    }
    let s = m.get("symbol").and_then(Value::as_str).ok_or_else(|| schema("inner node needs a symbol"))?;
    let children = match m.get("children") {
        None => Vec::new(),
        Some(c) => c
            .as_array()
            .ok_or_else(|| schema("children must be an array"))?
            .iter()
            .map(node_from_json)
            .collect::<Result<_>>()?,
    };
    Ok(Node::inner(s, children))
}

pub fn mval_to_json(m: &MVal) -> Value {
    let mut o = Map::new();
    o.insert("functor".into(), json!(m.kind().name()));
    match m {
        MVal::PrefixList(xs) | MVal::SuffixList(xs) => {
            o.insert("items".into(), Value::Array(xs.iter().map(elem_to_json).collect()));
        }
        MVal::PointedList { items, focus } => {
            o.insert("items".into(), Value::Array(items.iter().map(elem_to_json).collect()));
            o.insert("focus".into(), json!(focus + 1));
        }
        MVal::PointedTerm(t) => {
            o.insert("root".into(), node_to_json(&t.root));
            o.insert("focus".into(), json!(t.focus.iter().map(|i| i + 1).collect::<Vec<_>>()));
        }
    }
    Value::Object(o)
}

/// Reads a value; structural validity (focus in range, focus on a leaf) is
/// checked, arities are not (they depend on the instance).
pub fn mval_from_json(v: &Value) -> Result<MVal> {
    let m = v.as_object().ok_or_else(|| schema("functor values are objects"))?;
    let name = m.get("functor").and_then(Value::as_str).ok_or_else(|| schema("value needs a functor name"))?;
    let kind = FunctorKind::from_name(name).ok_or_else(|| schema(format!("unknown functor {name:?}")))?;
    let items = || -> Result<Vec<Elem>> {
        m.get("items")
            .and_then(Value::as_array)
            .ok_or_else(|| schema("list value needs items"))?
            .iter()
            .map(elem_from_json)
            .collect()
    };
    let value = match kind {
        FunctorKind::PrefixList => MVal::PrefixList(items()?),
        FunctorKind::SuffixList => MVal::SuffixList(items()?),
        FunctorKind::PointedList => {
            let items = items()?;
            let focus = m.get("focus").and_then(Value::as_u64).ok_or_else(|| schema("pointed list needs a focus"))?;
            if focus == 0 || focus as usize > items.len() {
                return Err(schema(format!("focus {focus} is outside 1..={}", items.len())));
            }
            MVal::PointedList { items, focus: focus as usize - 1 }
        }
        FunctorKind::PointedTerm => {
            let root = node_from_json(m.get("root").ok_or_else(|| schema("term needs a root"))?)?;
            let focus = path_from_json(m.get("focus").ok_or_else(|| schema("term needs a focus path"))?)?;
            MVal::PointedTerm(PointedTerm::new(root, focus).map_err(|e| schema(e.to_string()))?)
        }
    };
    if let Some(xs) = value.items() {
        if xs.is_empty() {
            return Err(schema("lists must be nonempty"));
        }
    }
    Ok(value)
}

/// A 1-based child path, returned 0-based.
pub fn path_from_json(v: &Value) -> Result<Vec<usize>> {
    v.as_array()
        .ok_or_else(|| schema("focus path must be an array"))?
        .iter()
        .map(|i| match i.as_u64() {
            Some(i) if i >= 1 => Ok(i as usize - 1),
            _ => Err(schema("focus path entries are positive integers")),
        })
        .collect()
}

pub fn alphabet_to_json(a: &RankedAlphabet) -> Value {
    Value::Object(a.symbols().map(|(s, k)| (s.to_string(), json!(k))).collect())
}

pub fn alphabet_from_json(v: &Value) -> Result<RankedAlphabet> {
    let m = v.as_object().ok_or_else(|| schema("ranked alphabet is an object symbol → arity"))?;
    let mut out = Vec::new();
    for (s, k) in m {
        let k = k.as_u64().ok_or_else(|| schema(format!("arity of {s} must be a non-negative integer")))?;
        out.push((s.clone(), k as usize));
    }
    Ok(RankedAlphabet::new(out))
}

/// Canonical text: sorted keys, no insignificant whitespace.
pub fn to_canonical_string(v: &Value) -> String {
    serde_json::to_string(v).expect("serializable")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn elements_round_trip() {
        let t = FnTable::from_pairs(vec![(Elem::int(1), Elem::sym("x")), (Elem::int(0), Elem::sym("y"))]).unwrap();
        let inner = MVal::PointedList { items: vec![Elem::sym("a"), Elem::int(2)], focus: 1 };
        let e = Elem::seq(vec![Elem::pair(Elem::sym("a"), Elem::int(-3)), Elem::FnTable(t), Elem::wrap(inner)]);
        assert_eq!(elem_from_json(&elem_to_json(&e)).unwrap(), e);
    }

    #[test]
    fn table_rows_are_sorted() {
        let t = FnTable::from_pairs(vec![(Elem::sym("b"), Elem::int(1)), (Elem::sym("a"), Elem::int(2))]).unwrap();
        assert_eq!(to_canonical_string(&table_to_json(&t)), r#"[["a",2],["b",1]]"#);
    }

    #[test]
    fn term_round_trip_uses_one_based_paths() {
        let root = Node::inner("f", vec![Node::leaf(Elem::sym("x")), Node::inner("c", vec![])]);
        let m = MVal::PointedTerm(PointedTerm::new(root, vec![0]).unwrap());
        let j = mval_to_json(&m);
        assert_eq!(j["focus"], json!([1]));
        assert_eq!(mval_from_json(&j).unwrap(), m);
    }

    #[test]
    fn rejects_bad_focus() {
        let j = json!({"functor": "pointed-list", "items": ["a"], "focus": 2});
        assert!(matches!(mval_from_json(&j), Err(Error::Schema(_))));
        assert!(elem_from_json(&json!(1.5)).is_err());
    }
}
