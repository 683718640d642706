//! Finite trees over a ranked alphabet with payload-labelled leaves and one
//! focused leaf.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use crate::elem::Elem;
use crate::error::{Error, Result};

/// Symbols with their arities. Arity-zero symbols are constants: they are
/// inner nodes without children, never payload positions.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct RankedAlphabet {
    arities: BTreeMap<Arc<str>, usize>,
}

impl RankedAlphabet {
    pub fn new<S: AsRef<str>>(symbols: impl IntoIterator<Item = (S, usize)>) -> RankedAlphabet {
        RankedAlphabet { arities: symbols.into_iter().map(|(s, a)| (Arc::from(s.as_ref()), a)).collect() }
    }

    pub fn arity(&self, symbol: &str) -> Option<usize> {
        self.arities.get(symbol).copied()
    }

    pub fn is_empty(&self) -> bool {
        self.arities.is_empty()
    }

    pub fn symbols(&self) -> impl Iterator<Item = (&Arc<str>, usize)> {
        self.arities.iter().map(|(s, a)| (s, *a))
    }

    pub fn max_arity(&self) -> usize {
        self.arities.values().copied().max().unwrap_or(0)
    }
}

#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Node {
    Leaf(Elem),
    Inner(Arc<str>, Vec<Node>),
}

impl Node {
    pub fn leaf(x: Elem) -> Node {
        Node::Leaf(x)
    }

    pub fn inner(symbol: &str, children: Vec<Node>) -> Node {
        Node::Inner(Arc::from(symbol), children)
    }

    /// Number of nodes, leaves and constants included.
    pub fn size(&self) -> usize {
        match self {
            Node::Leaf(_) => 1,
            Node::Inner(_, cs) => 1 + cs.iter().map(Node::size).sum::<usize>(),
        }
    }

    pub fn leaf_count(&self) -> usize {
        match self {
            Node::Leaf(_) => 1,
            Node::Inner(_, cs) => cs.iter().map(Node::leaf_count).sum(),
        }
    }

    /// Paths (0-based child indices) to every leaf, left to right.
    pub fn leaf_paths(&self) -> Vec<Vec<usize>> {
        fn go(n: &Node, path: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
            match n {
                Node::Leaf(_) => out.push(path.clone()),
                Node::Inner(_, cs) => {
                    for (i, c) in cs.iter().enumerate() {
                        path.push(i);
                        go(c, path, out);
                        path.pop();
                    }
                }
            }
        }
        let mut out = Vec::new();
        go(self, &mut Vec::new(), &mut out);
        out
    }

    /// Payloads of the leaves, left to right.
    pub fn leaves(&self) -> Vec<&Elem> {
        fn go<'a>(n: &'a Node, out: &mut Vec<&'a Elem>) {
            match n {
                Node::Leaf(x) => out.push(x),
                Node::Inner(_, cs) => cs.iter().for_each(|c| go(c, out)),
            }
        }
        let mut out = Vec::new();
        go(self, &mut out);
        out
    }

    pub fn at(&self, path: &[usize]) -> Option<&Node> {
        let mut n = self;
        for &i in path {
            match n {
                Node::Inner(_, cs) => n = cs.get(i)?,
                Node::Leaf(_) => return None,
            }
        }
        Some(n)
    }

    /// Replaces the subtree at `path`. Panics if the path does not exist.
    pub fn replace_at(&self, path: &[usize], new: Node) -> Node {
        match path.split_first() {
            None => new,
            Some((&i, rest)) => match self {
                Node::Inner(s, cs) => {
                    let mut cs = cs.clone();
                    cs[i] = cs[i].replace_at(rest, new);
                    Node::Inner(s.clone(), cs)
                }
                Node::Leaf(_) => panic!("path runs through a leaf"),
            },
        }
    }

    pub fn map_leaves(&self, f: &mut dyn FnMut(&Elem) -> Elem) -> Node {
        match self {
            Node::Leaf(x) => Node::Leaf(f(x)),
            Node::Inner(s, cs) => Node::Inner(s.clone(), cs.iter().map(|c| c.map_leaves(f)).collect()),
        }
    }

    pub fn try_map_leaves(&self, f: &mut dyn FnMut(&Elem) -> Result<Elem>) -> Result<Node> {
        Ok(match self {
            Node::Leaf(x) => Node::Leaf(f(x)?),
            Node::Inner(s, cs) => {
                Node::Inner(s.clone(), cs.iter().map(|c| c.try_map_leaves(f)).collect::<Result<_>>()?)
            }
        })
    }

    /// Checks every inner node against the alphabet.
    pub fn check_arities(&self, alphabet: &RankedAlphabet) -> Result<()> {
        match self {
            Node::Leaf(_) => Ok(()),
            Node::Inner(s, cs) => {
                let ar = alphabet
                    .arity(s)
                    .ok_or_else(|| Error::Structure(format!("symbol {s} is not in the ranked alphabet")))?;
                if ar != cs.len() {
                    return Err(Error::Structure(format!("symbol {s} has arity {ar} but {} children", cs.len())));
                }
                cs.iter().try_for_each(|c| c.check_arities(alphabet))
            }
        }
    }
}

impl fmt::Display for Node {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Node::Leaf(x) => write!(f, "{x}"),
            Node::Inner(s, cs) if cs.is_empty() => write!(f, "{s}"),
            Node::Inner(s, cs) => {
                write!(f, "{s}(")?;
                for (i, c) in cs.iter().enumerate() {
                    if i > 0 {
                        write!(f, ", ")?;
                    }
                    write!(f, "{c}")?;
                }
                write!(f, ")")
            }
        }
    }
}

impl fmt::Debug for Node {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// A tree with one distinguished leaf, addressed by a path of 0-based
/// child indices from the root.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct PointedTerm {
    pub root: Node,
    pub focus: Vec<usize>,
}

impl PointedTerm {
    /// Builds a pointed term, checking only that the focus names a leaf.
    pub fn new(root: Node, focus: Vec<usize>) -> Result<PointedTerm> {
        match root.at(&focus) {
            Some(Node::Leaf(_)) => Ok(PointedTerm { root, focus }),
            Some(Node::Inner(..)) => {
                Err(Error::Structure(format!("focus path {focus:?} names an inner node, not a leaf")))
            }
            None => Err(Error::Structure(format!("focus path {focus:?} does not exist"))),
        }
    }

    pub fn focused(&self) -> &Elem {
        match self.root.at(&self.focus) {
            Some(Node::Leaf(x)) => x,
            _ => panic!("pointed term invariant broken: focus is not a leaf"),
        }
    }

    pub fn with_focus(&self, focus: Vec<usize>) -> PointedTerm {
        PointedTerm { root: self.root.clone(), focus }
    }
}

impl fmt::Display for PointedTerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fn go(n: &Node, path: &mut Vec<usize>, focus: &[usize], f: &mut fmt::Formatter<'_>) -> fmt::Result {
            match n {
                Node::Leaf(x) if path.as_slice() == focus => write!(f, "‹{x}›"),
                Node::Leaf(x) => write!(f, "{x}"),
                Node::Inner(s, cs) if cs.is_empty() => write!(f, "{s}"),
                Node::Inner(s, cs) => {
                    write!(f, "{s}(")?;
                    for (i, c) in cs.iter().enumerate() {
                        if i > 0 {
                            write!(f, ", ")?;
                        }
                        path.push(i);
                        go(c, path, focus, f)?;
                        path.pop();
                    }
                    write!(f, ")")
                }
            }
        }
        go(&self.root, &mut Vec::new(), &self.focus, f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn x(s: &str) -> Node {
        Node::leaf(Elem::sym(s))
    }

    #[test]
    fn leaf_paths_left_to_right() {
        let t = Node::inner("f", vec![Node::inner("g", vec![x("a")]), Node::inner("c", vec![]), x("b")]);
        assert_eq!(t.leaf_paths(), vec![vec![0, 0], vec![2]]);
        assert_eq!(t.size(), 5);
        assert_eq!(t.leaf_count(), 2);
    }

    #[test]
    fn focus_must_be_leaf() {
        let t = Node::inner("f", vec![x("a"), Node::inner("c", vec![])]);
        assert!(PointedTerm::new(t.clone(), vec![0]).is_ok());
        assert!(PointedTerm::new(t.clone(), vec![1]).is_err());
        assert!(PointedTerm::new(t.clone(), vec![]).is_err());
        assert!(PointedTerm::new(t, vec![3]).is_err());
    }
}
