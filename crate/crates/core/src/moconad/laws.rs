//! The closed catalog of laws, each as an executable equation between two
//! composite expressions built from the structure maps.

use std::fmt;

use crate::elem::{Elem, FnTable};
use crate::error::{Error, Result};
use crate::moconad::{MVal, MoconadOps};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum LawId {
    FunctorId,
    FunctorCompose,
    MonadFlattenNatural,
    MonadUnitNatural,
    MonadAssoc,
    MonadUnitLeft,
    MonadUnitRight,
    ComonadExpandNatural,
    ComonadExtractNatural,
    ComonadCoassoc,
    ComonadCounitLeft,
    ComonadCounitRight,
    PutNatural,
    FlattenExtract,
    SingletonExpand,
    SingletonExtract,
    GetPut,
    PutGet,
    PutPut,
    PutAssoc,
    SingletonPut,
    FlattenExpand,
    FlattenExpandAltEquiv,
}

/// The kinds of argument a law quantifies over.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Sort {
    /// A payload `x ∈ X`.
    Payload,
    /// A function `f: X → Y`.
    Function,
    /// Two composable functions `g: X → Y`, `f: Y → Z`.
    FunctionPair,
    /// A value of `M X` (depth 1), `M M X` (depth 2) or `M M M X` (depth 3).
    Value(u8),
}

/// One argument of a law instance.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub enum LawArg {
    Payload(Elem),
    Function(FnTable),
    FunctionPair(FnTable, FnTable),
    Value(MVal),
}

impl fmt::Display for LawArg {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LawArg::Payload(x) => write!(f, "{x}"),
            LawArg::Function(t) => write!(f, "{t}"),
            LawArg::FunctionPair(g, h) => write!(f, "g = {g}, f = {h}"),
            LawArg::Value(m) => write!(f, "{m}"),
        }
    }
}

impl LawId {
    pub const ALL: [LawId; 23] = [
        LawId::FunctorId,
        LawId::FunctorCompose,
        LawId::MonadFlattenNatural,
        LawId::MonadUnitNatural,
        LawId::MonadAssoc,
        LawId::MonadUnitLeft,
        LawId::MonadUnitRight,
        LawId::ComonadExpandNatural,
        LawId::ComonadExtractNatural,
        LawId::ComonadCoassoc,
        LawId::ComonadCounitLeft,
        LawId::ComonadCounitRight,
        LawId::PutNatural,
        LawId::FlattenExtract,
        LawId::SingletonExpand,
        LawId::SingletonExtract,
        LawId::GetPut,
        LawId::PutGet,
        LawId::PutPut,
        LawId::PutAssoc,
        LawId::SingletonPut,
        LawId::FlattenExpand,
        LawId::FlattenExpandAltEquiv,
    ];

    pub fn name(self) -> &'static str {
        match self {
            LawId::FunctorId => "functor-id-law",
            LawId::FunctorCompose => "functor-compose",
            LawId::MonadFlattenNatural => "monad-μ-natural",
            LawId::MonadUnitNatural => "monad-η-natural",
            LawId::MonadAssoc => "monad-assoc",
            LawId::MonadUnitLeft => "monad-unit-left",
            LawId::MonadUnitRight => "monad-unit-right",
            LawId::ComonadExpandNatural => "comonad-δ-natural",
            LawId::ComonadExtractNatural => "comonad-ε-natural",
            LawId::ComonadCoassoc => "comonad-coassoc",
            LawId::ComonadCounitLeft => "comonad-counit-left",
            LawId::ComonadCounitRight => "comonad-counit-right",
            LawId::PutNatural => "put-natural",
            LawId::FlattenExtract => "flatten-extract",
            LawId::SingletonExpand => "singleton-expand",
            LawId::SingletonExtract => "singleton-extract",
            LawId::GetPut => "get-put",
            LawId::PutGet => "put-get",
            LawId::PutPut => "put-put",
            LawId::PutAssoc => "put-assoc",
            LawId::SingletonPut => "singleton-put",
            LawId::FlattenExpand => "flatten-expand",
            LawId::FlattenExpandAltEquiv => "flatten-expand-alt-equiv",
        }
    }

    pub fn from_name(name: &str) -> Option<LawId> {
        LawId::ALL.into_iter().find(|l| l.name() == name)
    }

    /// The equation, written out for reports.
    pub fn statement(self) -> &'static str {
        match self {
            LawId::FunctorId => "map id m = m",
            LawId::FunctorCompose => "map (f ∘ g) m = map f (map g m)",
            LawId::MonadFlattenNatural => "map f (μ mm) = μ (map (map f) mm)",
            LawId::MonadUnitNatural => "map f (η x) = η (f x)",
            LawId::MonadAssoc => "μ (μ mmm) = μ (map μ mmm)",
            LawId::MonadUnitLeft => "μ (η m) = m",
            LawId::MonadUnitRight => "μ (map η m) = m",
            LawId::ComonadExpandNatural => "δ (map f m) = map (map f) (δ m)",
            LawId::ComonadExtractNatural => "ε (map f m) = f (ε m)",
            LawId::ComonadCoassoc => "δ (δ m) = map δ (δ m)",
            LawId::ComonadCounitLeft => "ε (δ m) = m",
            LawId::ComonadCounitRight => "map ε (δ m) = m",
            LawId::PutNatural => "map f (put m x) = put (map f m) (f x)",
            LawId::FlattenExtract => "ε (μ mm) = ε (ε mm)",
            LawId::SingletonExpand => "δ (η x) = map η (η x)",
            LawId::SingletonExtract => "ε (η x) = x",
            LawId::GetPut => "ε (put m x) = x",
            LawId::PutGet => "put m (ε m) = m",
            LawId::PutPut => "put (put m x) y = put m y",
            LawId::PutAssoc => "put (μ (put mm m)) x = μ (put mm (put m x))",
            LawId::SingletonPut => "put (η x) y = η y",
            LawId::FlattenExpand => "δ (μ mm) = μ (map (map μ ∘ map put ∘ strength ∘ ⟨id, δ ∘ ε⟩) (δ mm))",
            LawId::FlattenExpandAltEquiv => {
                "μ (map (map μ ∘ map put ∘ strength ∘ ⟨id, δ ∘ ε⟩) (δ mm)) = \
                 (map μ ∘ μ ∘ map (map put) ∘ map strength ∘ map ⟨map ε, ε⟩ ∘ δ ∘ map δ) mm"
            }
        }
    }

    pub fn signature(self) -> &'static [Sort] {
        use Sort::*;
        match self {
            LawId::FunctorId => &[Value(1)],
            LawId::FunctorCompose => &[FunctionPair, Value(1)],
            LawId::MonadFlattenNatural => &[Function, Value(2)],
            LawId::MonadUnitNatural => &[Function, Payload],
            LawId::MonadAssoc => &[Value(3)],
            LawId::MonadUnitLeft => &[Value(1)],
            LawId::MonadUnitRight => &[Value(1)],
            LawId::ComonadExpandNatural => &[Function, Value(1)],
            LawId::ComonadExtractNatural => &[Function, Value(1)],
            LawId::ComonadCoassoc => &[Value(1)],
            LawId::ComonadCounitLeft => &[Value(1)],
            LawId::ComonadCounitRight => &[Value(1)],
            LawId::PutNatural => &[Function, Value(1), Payload],
            LawId::FlattenExtract => &[Value(2)],
            LawId::SingletonExpand => &[Payload],
            LawId::SingletonExtract => &[Payload],
            LawId::GetPut => &[Value(1), Payload],
            LawId::PutGet => &[Value(1)],
            LawId::PutPut => &[Value(1), Payload, Payload],
            LawId::PutAssoc => &[Value(2), Value(1), Payload],
            LawId::SingletonPut => &[Payload, Payload],
            LawId::FlattenExpand => &[Value(2)],
            LawId::FlattenExpandAltEquiv => &[Value(2)],
        }
    }

    /// Evaluates both sides of the law on `args` (which must follow
    /// [`LawId::signature`]). Structural errors raised while evaluating a
    /// side are returned as errors; callers treat them as failures.
    pub fn evaluate(self, ops: &dyn MoconadOps, args: &[LawArg]) -> Result<(Elem, Elem)> {
        let w = Elem::wrap;
        let sig = self.signature();
        if args.len() != sig.len() {
            return Err(Error::Structure(format!("{} takes {} arguments, got {}", self.name(), sig.len(), args.len())));
        }
        let value = |i: usize| -> Result<&MVal> {
            match &args[i] {
                LawArg::Value(m) => Ok(m),
                other => Err(Error::Structure(format!("expected a value, got {other}"))),
            }
        };
        let payload = |i: usize| -> Result<&Elem> {
            match &args[i] {
                LawArg::Payload(x) => Ok(x),
                other => Err(Error::Structure(format!("expected a payload, got {other}"))),
            }
        };
        let function = |i: usize| -> Result<&FnTable> {
            match &args[i] {
                LawArg::Function(f) => Ok(f),
                other => Err(Error::Structure(format!("expected a function, got {other}"))),
            }
        };
        let apply = |f: &FnTable, x: &Elem| f.get(x).cloned().unwrap_or_else(|| x.clone());

        Ok(match self {
            LawId::FunctorId => {
                let m = value(0)?;
                (w(ops.map(m, &|x| x.clone())), w(m.clone()))
            }
            LawId::FunctorCompose => {
                let LawArg::FunctionPair(g, f) = &args[0] else {
                    return Err(Error::Structure("expected a function pair".into()));
                };
                let m = value(1)?;
                let lhs = ops.map(m, &|x| apply(f, &apply(g, x)));
                let rhs = ops.map(&ops.map(m, &|x| apply(g, x)), &|x| apply(f, x));
                (w(lhs), w(rhs))
            }
            LawId::MonadFlattenNatural => {
                let f = function(0)?;
                let mm = value(1)?;
                let lhs = ops.map(&ops.flatten(mm)?, &|x| apply(f, x));
                let inner = map_inner(mm, &mut |m| Ok(ops.map(m, &|x| apply(f, x))))?;
                (w(lhs), w(ops.flatten(&inner)?))
            }
            LawId::MonadUnitNatural => {
                let f = function(0)?;
                let x = payload(1)?;
                (w(ops.map(&ops.unit(x.clone()), &|y| apply(f, y))), w(ops.unit(apply(f, x))))
            }
            LawId::MonadAssoc => {
                let mmm = value(0)?;
                let lhs = ops.flatten(&ops.flatten(mmm)?)?;
                let rhs = ops.flatten(&map_inner(mmm, &mut |mm| ops.flatten(mm))?)?;
                (w(lhs), w(rhs))
            }
            LawId::MonadUnitLeft => {
                let m = value(0)?;
                (w(ops.flatten(&ops.unit(w(m.clone())))?), w(m.clone()))
            }
            LawId::MonadUnitRight => {
                let m = value(0)?;
                let units = ops.map(m, &|x| w(ops.unit(x.clone())));
                (w(ops.flatten(&units)?), w(m.clone()))
            }
            LawId::ComonadExpandNatural => {
                let f = function(0)?;
                let m = value(1)?;
                let lhs = ops.expand(&ops.map(m, &|x| apply(f, x)));
                let rhs = map_inner(&ops.expand(m), &mut |v| Ok(ops.map(v, &|x| apply(f, x))))?;
                (w(lhs), w(rhs))
            }
            LawId::ComonadExtractNatural => {
                let f = function(0)?;
                let m = value(1)?;
                (ops.extract(&ops.map(m, &|x| apply(f, x))), apply(f, &ops.extract(m)))
            }
            LawId::ComonadCoassoc => {
                let m = value(0)?;
                let d = ops.expand(m);
                let lhs = ops.expand(&d);
                let rhs = map_inner(&d, &mut |v| Ok(ops.expand(v)))?;
                (w(lhs), w(rhs))
            }
            LawId::ComonadCounitLeft => {
                let m = value(0)?;
                (ops.extract(&ops.expand(m)), w(m.clone()))
            }
            LawId::ComonadCounitRight => {
                let m = value(0)?;
                let d = ops.expand(m);
                let back = ops.map(&d, &|v| match v.as_wrapped() {
                    Some(inner) => ops.extract(inner),
                    None => v.clone(),
                });
                (w(back), w(m.clone()))
            }
            LawId::PutNatural => {
                let f = function(0)?;
                let m = value(1)?;
                let x = payload(2)?;
                let lhs = ops.map(&ops.put(m, x.clone()), &|y| apply(f, y));
                let rhs = ops.put(&ops.map(m, &|y| apply(f, y)), apply(f, x));
                (w(lhs), w(rhs))
            }
            LawId::FlattenExtract => {
                let mm = value(0)?;
                let lhs = ops.extract(&ops.flatten(mm)?);
                let outer = ops.extract(mm);
                let rhs = ops.extract(unwrap(&outer)?);
                (lhs, rhs)
            }
            LawId::SingletonExpand => {
                let x = payload(0)?;
                let eta = ops.unit(x.clone());
                let lhs = ops.expand(&eta);
                let rhs = ops.map(&eta, &|y| w(ops.unit(y.clone())));
                (w(lhs), w(rhs))
            }
            LawId::SingletonExtract => {
                let x = payload(0)?;
                (ops.extract(&ops.unit(x.clone())), x.clone())
            }
            LawId::GetPut => {
                let m = value(0)?;
                let x = payload(1)?;
                (ops.extract(&ops.put(m, x.clone())), x.clone())
            }
            LawId::PutGet => {
                let m = value(0)?;
                (w(ops.put(m, ops.extract(m))), w(m.clone()))
            }
            LawId::PutPut => {
                let m = value(0)?;
                let x = payload(1)?;
                let y = payload(2)?;
                (w(ops.put(&ops.put(m, x.clone()), y.clone())), w(ops.put(m, y.clone())))
            }
            LawId::PutAssoc => {
                let mm = value(0)?;
                let m = value(1)?;
                let x = payload(2)?;
                let lhs = ops.put(&ops.flatten(&ops.put(mm, w(m.clone())))?, x.clone());
                let rhs = ops.flatten(&ops.put(mm, w(ops.put(m, x.clone()))))?;
                (w(lhs), w(rhs))
            }
            LawId::SingletonPut => {
                let x = payload(0)?;
                let y = payload(1)?;
                (w(ops.put(&ops.unit(x.clone()), y.clone())), w(ops.unit(y.clone())))
            }
            LawId::FlattenExpand => {
                let mm = value(0)?;
                let lhs = ops.expand(&ops.flatten(mm)?);
                (w(lhs), w(flatten_expand_top(ops, mm)?))
            }
            LawId::FlattenExpandAltEquiv => {
                let mm = value(0)?;
                (w(flatten_expand_top(ops, mm)?), w(flatten_expand_alt(ops, mm)?))
            }
        })
    }

    /// Whether `args` make the two sides of the law agree.
    pub fn holds(self, ops: &dyn MoconadOps, args: &[LawArg]) -> bool {
        matches!(self.evaluate(ops, args), Ok((l, r)) if l == r)
    }
}

impl fmt::Display for LawId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

fn unwrap(e: &Elem) -> Result<&MVal> {
    e.as_wrapped().ok_or_else(|| Error::Structure(format!("expected a wrapped value, found {e}")))
}

/// Applies `f` to every inner value of a nested value.
fn map_inner(outer: &MVal, f: &mut dyn FnMut(&MVal) -> Result<MVal>) -> Result<MVal> {
    outer.try_map(&mut |x| Ok(Elem::wrap(f(unwrap(x)?)?)))
}

/// `μ (map work (δ mm))` with
/// `work y = map μ (map put (strength y (δ (ε y))))`.
fn flatten_expand_top(ops: &dyn MoconadOps, mm: &MVal) -> Result<MVal> {
    let views = ops.expand(mm);
    let worked = map_inner(&views, &mut |y| {
        let focused = ops.extract(y);
        let re_expanded = ops.expand(unwrap(&focused)?);
        let paired = ops.strength(&Elem::wrap(y.clone()), &re_expanded);
        let put_back = paired.try_map(&mut |p| {
            let (a, z) = p.as_pair().ok_or_else(|| Error::Structure("expected a pair".into()))?;
            Ok(Elem::wrap(ops.put(unwrap(a)?, z.clone())))
        })?;
        map_inner(&put_back, &mut |v| ops.flatten(v))
    })?;
    ops.flatten(&worked)
}

/// `(map μ ∘ μ ∘ map (map put) ∘ map strength ∘ map ⟨map ε, ε⟩ ∘ δ ∘ map δ) mm`.
fn flatten_expand_alt(ops: &dyn MoconadOps, mm: &MVal) -> Result<MVal> {
    let expanded_blocks = map_inner(mm, &mut |m| Ok(ops.expand(m)))?;
    let views = ops.expand(&expanded_blocks);
    let worked = map_inner(&views, &mut |y| {
        let originals = y.try_map(&mut |d| Ok(ops.extract(unwrap(d)?)))?;
        let focused = ops.extract(y);
        let paired = ops.strength(&Elem::wrap(originals), unwrap(&focused)?);
        paired.try_map(&mut |p| {
            let (a, z) = p.as_pair().ok_or_else(|| Error::Structure("expected a pair".into()))?;
            Ok(Elem::wrap(ops.put(unwrap(a)?, z.clone())))
        })
    })?;
    let flat = ops.flatten(&worked)?;
    map_inner(&flat, &mut |v| ops.flatten(v))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::moconad::Moconad;

    fn pre(xs: &[i64]) -> MVal {
        MVal::PrefixList(xs.iter().map(|&x| Elem::int(x)).collect())
    }

    #[test]
    fn catalog_is_closed_and_named_uniquely() {
        let mut names: Vec<_> = LawId::ALL.iter().map(|l| l.name()).collect();
        names.sort();
        names.dedup();
        assert_eq!(names.len(), 23);
        for l in LawId::ALL {
            assert_eq!(LawId::from_name(l.name()), Some(l));
        }
    }

    #[test]
    fn flatten_expand_trace_on_prefix_lists() {
        let p = Moconad::prefix_list();
        let mm =
            MVal::PrefixList(vec![Elem::wrap(pre(&[1, 2])), Elem::wrap(pre(&[3, 4])), Elem::wrap(pre(&[5, 6, 7]))]);
        let flat = p.flatten(&mm).unwrap();
        assert_eq!(flat, pre(&[1, 2, 3, 4, 5, 6, 7]));
        let want = MVal::PrefixList((1..=7).map(|n| Elem::wrap(pre(&(1..=n).collect::<Vec<_>>()))).collect());
        assert_eq!(p.expand(&flat), want);
        assert_eq!(flatten_expand_top(&p, &mm).unwrap(), want);
        assert_eq!(flatten_expand_alt(&p, &mm).unwrap(), want);
    }

    #[test]
    fn work_of_last_view_matches_hand_trace() {
        let p = Moconad::prefix_list();
        let mm =
            MVal::PrefixList(vec![Elem::wrap(pre(&[1, 2])), Elem::wrap(pre(&[3, 4])), Elem::wrap(pre(&[5, 6, 7]))]);
        let views = p.expand(&mm);
        let last = views.items().unwrap().last().unwrap().as_wrapped().unwrap().clone();
        let re = p.expand(p.extract(&last).as_wrapped().unwrap());
        let paired = p.strength(&Elem::wrap(last.clone()), &re);
        let worked = paired.map(&|pr| {
            let (a, z) = pr.as_pair().unwrap();
            Elem::wrap(p.flatten(&p.put(a.as_wrapped().unwrap(), z.clone())).unwrap())
        });
        let want = MVal::PrefixList(vec![
            Elem::wrap(pre(&[1, 2, 3, 4, 5])),
            Elem::wrap(pre(&[1, 2, 3, 4, 5, 6])),
            Elem::wrap(pre(&[1, 2, 3, 4, 5, 6, 7])),
        ]);
        assert_eq!(worked, want);
    }

    #[test]
    fn map_compose_example() {
        let p = Moconad::prefix_list();
        let d: crate::elem::ElemSet = (0..8).map(Elem::int).collect();
        let g = FnTable::tabulate(&d, |x| match x {
            Elem::Int(n) => Elem::int(n + 1),
            _ => unreachable!(),
        });
        let f = FnTable::tabulate(&d, |x| match x {
            Elem::Int(n) => Elem::int(2 * n),
            _ => unreachable!(),
        });
        let args = [LawArg::FunctionPair(g, f), LawArg::Value(pre(&[1, 2]))];
        let (l, r) = LawId::FunctorCompose.evaluate(&p, &args).unwrap();
        assert_eq!(l, Elem::wrap(pre(&[4, 6])));
        assert_eq!(l, r);
    }
}
