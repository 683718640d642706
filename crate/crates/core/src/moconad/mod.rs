//! The four functor instances and their monad/comonad structure.
//!
//! A [`Moconad`] names an instance (prefix lists, suffix lists, pointed
//! lists, pointed terms over a ranked alphabet). Values of the functor are
//! [`MVal`]s whose payloads are arbitrary [`Elem`]s; a value of `M M X` is an
//! `MVal` whose payloads are `Elem::Wrapped` values of the same instance.
//!
//! The structure maps live behind the [`MoconadOps`] trait so that the law
//! checker can run against deliberately broken variants (see
//! [`crate::lawcheck::Mutant`]).

mod laws;
mod term;

use std::fmt;

pub use laws::{LawArg, LawId, Sort};
pub use term::{Node, PointedTerm, RankedAlphabet};

use crate::elem::Elem;
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum FunctorKind {
    PrefixList,
    SuffixList,
    PointedList,
    PointedTerm,
}

impl FunctorKind {
    pub const ALL: [FunctorKind; 4] =
        [FunctorKind::PrefixList, FunctorKind::SuffixList, FunctorKind::PointedList, FunctorKind::PointedTerm];

    pub fn name(self) -> &'static str {
        match self {
            FunctorKind::PrefixList => "prefix-list",
            FunctorKind::SuffixList => "suffix-list",
            FunctorKind::PointedList => "pointed-list",
            FunctorKind::PointedTerm => "pointed-term",
        }
    }

    pub fn from_name(name: &str) -> Option<FunctorKind> {
        FunctorKind::ALL.into_iter().find(|k| k.name() == name)
    }
}

impl fmt::Display for FunctorKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// A functor instance. Pointed terms carry their ranked alphabet.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Moconad {
    kind: FunctorKind,
    alphabet: Option<RankedAlphabet>,
}

impl Moconad {
    pub fn prefix_list() -> Moconad {
        Moconad { kind: FunctorKind::PrefixList, alphabet: None }
    }

    pub fn suffix_list() -> Moconad {
        Moconad { kind: FunctorKind::SuffixList, alphabet: None }
    }

    pub fn pointed_list() -> Moconad {
        Moconad { kind: FunctorKind::PointedList, alphabet: None }
    }

    pub fn pointed_term(alphabet: RankedAlphabet) -> Result<Moconad> {
        if alphabet.is_empty() {
            return Err(Error::Structure("pointed terms need a nonempty ranked alphabet".into()));
        }
        Ok(Moconad { kind: FunctorKind::PointedTerm, alphabet: Some(alphabet) })
    }

    /// Builds an instance from its kind; the ranked alphabet must be given
    /// exactly for pointed terms.
    pub fn new(kind: FunctorKind, alphabet: Option<RankedAlphabet>) -> Result<Moconad> {
        match (kind, alphabet) {
            (FunctorKind::PointedTerm, Some(a)) => Moconad::pointed_term(a),
            (FunctorKind::PointedTerm, None) => Err(Error::Structure("pointed terms need a ranked alphabet".into())),
            (_, Some(_)) => Err(Error::Structure(format!("{kind} takes no ranked alphabet"))),
            (k, None) => Ok(Moconad { kind: k, alphabet: None }),
        }
    }

    pub fn kind(&self) -> FunctorKind {
        self.kind
    }

    pub fn alphabet(&self) -> Option<&RankedAlphabet> {
        self.alphabet.as_ref()
    }

    pub fn name(&self) -> &'static str {
        self.kind.name()
    }

    /// Checks that `m` is a well-formed value of this instance. Payloads are
    /// not inspected.
    pub fn validate(&self, m: &MVal) -> Result<()> {
        if m.kind() != self.kind {
            return Err(Error::InstanceMismatch { expected: self.kind.name().into(), found: m.kind().name().into() });
        }
        match m {
            MVal::PrefixList(items) | MVal::SuffixList(items) => {
                if items.is_empty() {
                    return Err(Error::Structure("lists must be nonempty".into()));
                }
            }
            MVal::PointedList { items, focus } => {
                if items.is_empty() {
                    return Err(Error::Structure("lists must be nonempty".into()));
                }
                if *focus >= items.len() {
                    return Err(Error::Structure(format!(
                        "focus {} is outside a list of length {}",
                        focus + 1,
                        items.len()
                    )));
                }
            }
            MVal::PointedTerm(t) => {
                t.root.check_arities(self.alphabet.as_ref().expect("term instance has an alphabet"))?;
                PointedTerm::new(t.root.clone(), t.focus.clone())?;
            }
        }
        Ok(())
    }

    /// Validates `m` and additionally requires every payload to be a valid
    /// wrapped value of this instance (a value of `M M X`).
    pub fn validate_nested(&self, m: &MVal, depth: usize) -> Result<()> {
        self.validate(m)?;
        if depth > 1 {
            for p in m.payloads() {
                let inner =
                    p.as_wrapped().ok_or_else(|| Error::Structure(format!("payload {p} is not a wrapped value")))?;
                self.validate_nested(inner, depth - 1)?;
            }
        }
        Ok(())
    }

    pub fn make_list(&self, items: Vec<Elem>) -> Result<MVal> {
        let m = match self.kind {
            FunctorKind::PrefixList => MVal::PrefixList(items),
            FunctorKind::SuffixList => MVal::SuffixList(items),
            _ => return Err(Error::Structure(format!("{} values are not plain lists", self.kind))),
        };
        self.validate(&m)?;
        Ok(m)
    }

    /// A pointed list with a 0-based focus.
    pub fn make_pointed(&self, items: Vec<Elem>, focus: usize) -> Result<MVal> {
        if self.kind != FunctorKind::PointedList {
            return Err(Error::Structure(format!("{} values are not pointed lists", self.kind)));
        }
        let m = MVal::PointedList { items, focus };
        self.validate(&m)?;
        Ok(m)
    }

    /// A pointed term with a path of 0-based child indices.
    pub fn make_term(&self, root: Node, focus: Vec<usize>) -> Result<MVal> {
        if self.kind != FunctorKind::PointedTerm {
            return Err(Error::Structure(format!("{} values are not terms", self.kind)));
        }
        let m = MVal::PointedTerm(PointedTerm::new(root, focus)?);
        self.validate(&m)?;
        Ok(m)
    }
}

impl fmt::Display for Moconad {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// A value of one of the functors.
///
/// Invariants (checked by [`Moconad::validate`]): lists are nonempty,
/// pointed-list foci are in range, term foci name a leaf.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum MVal {
    PrefixList(Vec<Elem>),
    SuffixList(Vec<Elem>),
    PointedList { items: Vec<Elem>, focus: usize },
    PointedTerm(PointedTerm),
}

impl MVal {
    pub fn kind(&self) -> FunctorKind {
        match self {
            MVal::PrefixList(_) => FunctorKind::PrefixList,
            MVal::SuffixList(_) => FunctorKind::SuffixList,
            MVal::PointedList { .. } => FunctorKind::PointedList,
            MVal::PointedTerm(_) => FunctorKind::PointedTerm,
        }
    }

    /// Item count for lists, node count for terms.
    pub fn size(&self) -> usize {
        match self {
            MVal::PrefixList(xs) | MVal::SuffixList(xs) | MVal::PointedList { items: xs, .. } => xs.len(),
            MVal::PointedTerm(t) => t.root.size(),
        }
    }

    /// Payloads in positional order (left to right).
    pub fn payloads(&self) -> Vec<&Elem> {
        match self {
            MVal::PrefixList(xs) | MVal::SuffixList(xs) | MVal::PointedList { items: xs, .. } => xs.iter().collect(),
            MVal::PointedTerm(t) => t.root.leaves(),
        }
    }

    /// Human-readable names of the payload positions, aligned with
    /// [`MVal::payloads`]: 1-based indices for lists, 1-based child paths
    /// for terms.
    pub fn position_labels(&self) -> Vec<String> {
        match self {
            MVal::PointedTerm(t) => t
                .root
                .leaf_paths()
                .iter()
                .map(|p| {
                    let parts: Vec<String> = p.iter().map(|i| (i + 1).to_string()).collect();
                    format!("[{}]", parts.join(","))
                })
                .collect(),
            _ => (1..=self.size()).map(|i| i.to_string()).collect(),
        }
    }

    pub fn map(&self, f: &dyn Fn(&Elem) -> Elem) -> MVal {
        self.map_mut(&mut |x| f(x))
    }

    pub fn map_mut(&self, f: &mut dyn FnMut(&Elem) -> Elem) -> MVal {
        match self {
            MVal::PrefixList(xs) => MVal::PrefixList(xs.iter().map(&mut *f).collect()),
            MVal::SuffixList(xs) => MVal::SuffixList(xs.iter().map(&mut *f).collect()),
            MVal::PointedList { items, focus } => {
                MVal::PointedList { items: items.iter().map(&mut *f).collect(), focus: *focus }
            }
            MVal::PointedTerm(t) => {
                MVal::PointedTerm(PointedTerm { root: t.root.map_leaves(f), focus: t.focus.clone() })
            }
        }
    }

    pub fn try_map(&self, f: &mut dyn FnMut(&Elem) -> Result<Elem>) -> Result<MVal> {
        Ok(match self {
            MVal::PrefixList(xs) => MVal::PrefixList(xs.iter().map(&mut *f).collect::<Result<_>>()?),
            MVal::SuffixList(xs) => MVal::SuffixList(xs.iter().map(&mut *f).collect::<Result<_>>()?),
            MVal::PointedList { items, focus } => {
                MVal::PointedList { items: items.iter().map(&mut *f).collect::<Result<_>>()?, focus: *focus }
            }
            MVal::PointedTerm(t) => {
                MVal::PointedTerm(PointedTerm { root: t.root.try_map_leaves(f)?, focus: t.focus.clone() })
            }
        })
    }

    /// Maps positions to values, giving `f` the label of each position.
    pub fn try_map_labelled(&self, f: &mut dyn FnMut(&str, &Elem) -> Result<Elem>) -> Result<MVal> {
        let labels = self.position_labels();
        let mut i = 0;
        self.try_map(&mut |x| {
            let r = f(&labels[i], x);
            i += 1;
            r
        })
    }

    /// The list items for the three list instances.
    pub fn items(&self) -> Option<&[Elem]> {
        match self {
            MVal::PrefixList(xs) | MVal::SuffixList(xs) | MVal::PointedList { items: xs, .. } => Some(xs),
            MVal::PointedTerm(_) => None,
        }
    }
}

impl fmt::Display for MVal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MVal::PrefixList(xs) | MVal::SuffixList(xs) => {
                write!(f, "[")?;
                for (i, x) in xs.iter().enumerate() {
                    if i > 0 {
                        write!(f, ", ")?;
                    }
                    write!(f, "{x}")?;
                }
                write!(f, "]")
            }
            MVal::PointedList { items, focus } => {
                write!(f, "[")?;
                for (i, x) in items.iter().enumerate() {
                    if i > 0 {
                        write!(f, ", ")?;
                    }
                    if i == *focus {
                        write!(f, "‹{x}›")?;
                    } else {
                        write!(f, "{x}")?;
                    }
                }
                write!(f, "]")
            }
            MVal::PointedTerm(t) => write!(f, "{t}"),
        }
    }
}

impl fmt::Debug for MVal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

fn unwrap_inner(x: &Elem, kind: FunctorKind) -> Result<&MVal> {
    let v = x.as_wrapped().ok_or_else(|| Error::Structure(format!("flatten expects wrapped values, found {x}")))?;
    if v.kind() != kind {
        return Err(Error::InstanceMismatch { expected: kind.name().into(), found: v.kind().name().into() });
    }
    Ok(v)
}

/// The structure maps of a monad/comonad functor with `put`.
///
/// `map`, `strength`, `shape` and `concat` have default definitions in
/// terms of the others.
pub trait MoconadOps: Send + Sync {
    fn instance(&self) -> &Moconad;

    fn map(&self, m: &MVal, f: &dyn Fn(&Elem) -> Elem) -> MVal {
        m.map(f)
    }

    fn unit(&self, x: Elem) -> MVal;

    fn flatten(&self, mm: &MVal) -> Result<MVal>;

    fn extract(&self, m: &MVal) -> Elem;

    fn expand(&self, m: &MVal) -> MVal;

    fn put(&self, m: &MVal, x: Elem) -> MVal;

    /// Pairs every payload of `m` with `a`.
    fn strength(&self, a: &Elem, m: &MVal) -> MVal {
        self.map(m, &|y| Elem::pair(a.clone(), y.clone()))
    }

    fn shape(&self, m: &MVal) -> MVal {
        self.map(m, &|_| Elem::dot())
    }

    /// Places `l` at the distinguished position of `k` and flattens.
    fn concat(&self, k: &MVal, l: &MVal) -> Result<MVal> {
        let singletons = self.map(k, &|x| Elem::wrap(self.unit(x.clone())));
        let placed = self.put(&singletons, Elem::wrap(l.clone()));
        self.flatten(&placed)
    }
}

impl MoconadOps for Moconad {
    fn instance(&self) -> &Moconad {
        self
    }

    fn unit(&self, x: Elem) -> MVal {
        match self.kind {
            FunctorKind::PrefixList => MVal::PrefixList(vec![x]),
            FunctorKind::SuffixList => MVal::SuffixList(vec![x]),
            FunctorKind::PointedList => MVal::PointedList { items: vec![x], focus: 0 },
            FunctorKind::PointedTerm => MVal::PointedTerm(PointedTerm { root: Node::Leaf(x), focus: Vec::new() }),
        }
    }

    fn flatten(&self, mm: &MVal) -> Result<MVal> {
        let kind = mm.kind();
        match mm {
            MVal::PrefixList(xs) | MVal::SuffixList(xs) => {
                let mut out = Vec::new();
                for x in xs {
                    out.extend(unwrap_inner(x, kind)?.items().expect("list").iter().cloned());
                }
                Ok(if kind == FunctorKind::PrefixList { MVal::PrefixList(out) } else { MVal::SuffixList(out) })
            }
            MVal::PointedList { items, focus } => {
                let mut out = Vec::new();
                let mut new_focus = 0;
                for (i, x) in items.iter().enumerate() {
                    let inner = unwrap_inner(x, kind)?;
                    let MVal::PointedList { items: ys, focus: f } = inner else { unreachable!() };
                    if i == *focus {
                        new_focus = out.len() + f;
                    }
                    out.extend(ys.iter().cloned());
                }
                Ok(MVal::PointedList { items: out, focus: new_focus })
            }
            MVal::PointedTerm(t) => {
                fn subst(n: &Node) -> Result<Node> {
                    match n {
                        Node::Leaf(x) => match unwrap_inner(x, FunctorKind::PointedTerm)? {
                            MVal::PointedTerm(inner) => Ok(inner.root.clone()),
                            _ => unreachable!(),
                        },
                        Node::Inner(s, cs) => Ok(Node::Inner(s.clone(), cs.iter().map(subst).collect::<Result<_>>()?)),
                    }
                }
                let root = subst(&t.root)?;
                let MVal::PointedTerm(inner) = unwrap_inner(t.focused(), kind)? else { unreachable!() };
                let mut focus = t.focus.clone();
                focus.extend(inner.focus.iter().copied());
                Ok(MVal::PointedTerm(PointedTerm { root, focus }))
            }
        }
    }

    fn extract(&self, m: &MVal) -> Elem {
        match m {
            MVal::PrefixList(xs) => xs.last().expect("nonempty").clone(),
            MVal::SuffixList(xs) => xs[0].clone(),
            MVal::PointedList { items, focus } => items[*focus].clone(),
            MVal::PointedTerm(t) => t.focused().clone(),
        }
    }

    fn expand(&self, m: &MVal) -> MVal {
        match m {
            MVal::PrefixList(xs) => {
                MVal::PrefixList((1..=xs.len()).map(|i| Elem::wrap(MVal::PrefixList(xs[..i].to_vec()))).collect())
            }
            MVal::SuffixList(xs) => {
                MVal::SuffixList((0..xs.len()).map(|i| Elem::wrap(MVal::SuffixList(xs[i..].to_vec()))).collect())
            }
            MVal::PointedList { items, focus } => MVal::PointedList {
                items: (0..items.len())
                    .map(|i| Elem::wrap(MVal::PointedList { items: items.clone(), focus: i }))
                    .collect(),
                focus: *focus,
            },
            MVal::PointedTerm(t) => {
                let paths = t.root.leaf_paths();
                let mut k = 0;
                let root = t.root.map_leaves(&mut |_| {
                    let v = Elem::wrap(MVal::PointedTerm(t.with_focus(paths[k].clone())));
                    k += 1;
                    v
                });
                MVal::PointedTerm(PointedTerm { root, focus: t.focus.clone() })
            }
        }
    }

    fn put(&self, m: &MVal, x: Elem) -> MVal {
        match m {
            MVal::PrefixList(xs) => {
                let mut ys = xs.clone();
                *ys.last_mut().expect("nonempty") = x;
                MVal::PrefixList(ys)
            }
            MVal::SuffixList(xs) => {
                let mut ys = xs.clone();
                ys[0] = x;
                MVal::SuffixList(ys)
            }
            MVal::PointedList { items, focus } => {
                let mut ys = items.clone();
                ys[*focus] = x;
                MVal::PointedList { items: ys, focus: *focus }
            }
            MVal::PointedTerm(t) => MVal::PointedTerm(PointedTerm {
                root: t.root.replace_at(&t.focus, Node::Leaf(x)),
                focus: t.focus.clone(),
            }),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ints(xs: &[i64]) -> Vec<Elem> {
        xs.iter().map(|&x| Elem::int(x)).collect()
    }

    fn pl(xs: &[i64], focus: usize) -> MVal {
        MVal::PointedList { items: ints(xs), focus }
    }

    #[test]
    fn pointed_flatten_keeps_inner_focus_of_outer_block() {
        let m = Moconad::pointed_list();
        let mm = MVal::PointedList {
            items: vec![Elem::wrap(pl(&[1, 2, 3], 1)), Elem::wrap(pl(&[4, 5, 6], 0)), Elem::wrap(pl(&[7, 8], 1))],
            focus: 1,
        };
        assert_eq!(m.flatten(&mm).unwrap(), pl(&[1, 2, 3, 4, 5, 6, 7, 8], 3));
    }

    #[test]
    fn pointed_expand_refocuses_every_position() {
        let m = Moconad::pointed_list();
        let e = m.expand(&pl(&[1, 2, 3], 1));
        let want = MVal::PointedList { items: (0..3).map(|i| Elem::wrap(pl(&[1, 2, 3], i))).collect(), focus: 1 };
        assert_eq!(e, want);
    }

    #[test]
    fn concat_examples() {
        let p = Moconad::prefix_list();
        let k = MVal::PrefixList(ints(&[1, 2, 3]));
        let l = MVal::PrefixList(ints(&[4, 5, 6]));
        assert_eq!(p.concat(&k, &l).unwrap(), MVal::PrefixList(ints(&[1, 2, 4, 5, 6])));
        let q = Moconad::pointed_list();
        // The focused 2 is overridden by the whole second list.
        assert_eq!(q.concat(&pl(&[1, 2, 3], 1), &pl(&[4, 5, 6], 2)).unwrap(), pl(&[1, 4, 5, 6, 3], 3));
    }

    #[test]
    fn suffix_structure() {
        let s = Moconad::suffix_list();
        let v = MVal::SuffixList(ints(&[1, 2, 3]));
        assert_eq!(s.extract(&v), Elem::int(1));
        assert_eq!(s.put(&v, Elem::int(9)), MVal::SuffixList(ints(&[9, 2, 3])));
        let e = s.expand(&v);
        assert_eq!(e.items().unwrap()[1], Elem::wrap(MVal::SuffixList(ints(&[2, 3]))));
    }

    #[test]
    fn term_flatten_concatenates_focus_paths() {
        let m = Moconad::pointed_term(RankedAlphabet::new([("f", 2), ("g", 1)])).unwrap();
        let inner =
            MVal::PointedTerm(PointedTerm::new(Node::inner("g", vec![Node::leaf(Elem::int(1))]), vec![0]).unwrap());
        let other = m.unit(Elem::int(2));
        let outer = MVal::PointedTerm(
            PointedTerm::new(
                Node::inner("f", vec![Node::leaf(Elem::wrap(other)), Node::leaf(Elem::wrap(inner))]),
                vec![1],
            )
            .unwrap(),
        );
        let flat = m.flatten(&outer).unwrap();
        let MVal::PointedTerm(t) = &flat else { panic!() };
        assert_eq!(t.focus, vec![1, 0]);
        assert_eq!(m.extract(&flat), Elem::int(1));
        m.validate(&flat).unwrap();
    }

    #[test]
    fn validation_rejects_bad_values() {
        assert!(Moconad::prefix_list().make_list(vec![]).is_err());
        assert!(Moconad::pointed_list().make_pointed(ints(&[1, 2, 3]), 3).is_err());
        assert!(Moconad::pointed_term(RankedAlphabet::default()).is_err());
        let m = Moconad::pointed_term(RankedAlphabet::new([("a", 2), ("c", 0)])).unwrap();
        let ok = Node::inner("a", vec![Node::leaf(Elem::sym("x")), Node::inner("c", vec![])]);
        assert!(m.make_term(ok.clone(), vec![0]).is_ok());
        assert!(m.make_term(ok, vec![1]).is_err());
        let bad = Node::inner("a", vec![Node::leaf(Elem::sym("x"))]);
        assert!(m.make_term(bad, vec![0]).is_err());
    }
}
