//! Exhaustive and seeded-random checking of the law catalog, counterexample
//! minimization and deliberately broken structure maps for mutation testing.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde_json::{json, Value};

use crate::elem::{Elem, ElemSet, FnTable};
use crate::error::{Error, Result};
use crate::functors::{count_nested, enumerate_nested, nested_size, NestedSampler};
use crate::json::{elem_to_json, mval_to_json, table_to_json};
use crate::moconad::{FunctorKind, LawArg, LawId, MVal, Moconad, MoconadOps, PointedTerm, RankedAlphabet, Sort};

/// Size limits for generated law arguments.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Bounds {
    /// Size bound for arguments of sort `M X`.
    pub value: usize,
    /// Bound on the flattened size of `M M X` and `M M M X` arguments.
    pub nested: usize,
    /// Number of payload symbols (`a`, `b`, ...).
    pub domain_size: usize,
}

impl Bounds {
    pub fn default_for(kind: FunctorKind) -> Bounds {
        match kind {
            FunctorKind::PointedTerm => Bounds { value: 7, nested: 5, domain_size: 2 },
            _ => Bounds { value: 4, nested: 4, domain_size: 2 },
        }
    }

    /// The same bound for plain and nested arguments.
    pub fn uniform(bound: usize, domain_size: usize) -> Bounds {
        Bounds { value: bound, nested: bound, domain_size }
    }

    fn for_depth(&self, depth: u8) -> usize {
        if depth <= 1 {
            self.value
        } else {
            self.nested
        }
    }
}

/// The ranked alphabet used for pointed terms when none is given.
pub fn default_term_alphabet() -> RankedAlphabet {
    RankedAlphabet::new([("f", 2), ("g", 1), ("c", 0)])
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Strategy {
    Exhaustive(Bounds),
    Random { seed: u64, samples: u64, bounds: Bounds },
}

impl Strategy {
    fn bounds(&self) -> Bounds {
        match self {
            Strategy::Exhaustive(b) | Strategy::Random { bounds: b, .. } => *b,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Verdict {
    Pass,
    Fail { counterexample: Vec<LawArg>, lhs: Elem, rhs: Elem },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LawReport {
    pub law: LawId,
    pub instance: FunctorKind,
    pub strategy: Strategy,
    pub verdict: Verdict,
    pub cases_checked: u64,
}

impl LawReport {
    pub fn passed(&self) -> bool {
        self.verdict == Verdict::Pass
    }

    pub fn to_json(&self) -> Value {
        let strategy = match self.strategy {
            Strategy::Exhaustive(b) => json!({
                "kind": "exhaustive",
                "bound": b.value,
                "nested_bound": b.nested,
                "domain_size": b.domain_size,
            }),
            Strategy::Random { seed, samples, bounds } => json!({
                "kind": "random",
                "seed": seed,
                "samples": samples,
                "bound": bounds.value,
                "nested_bound": bounds.nested,
                "domain_size": bounds.domain_size,
            }),
        };
        let verdict = match &self.verdict {
            Verdict::Pass => json!("pass"),
            Verdict::Fail { counterexample, lhs, rhs } => json!({
                "fail": {
                    "counterexample": counterexample.iter().map(law_arg_to_json).collect::<Vec<_>>(),
                    "lhs": elem_to_json(lhs),
                    "rhs": elem_to_json(rhs),
                }
            }),
        };
        json!({
            "law": self.law.name(),
            "instance": self.instance.name(),
            "strategy": strategy,
            "verdict": verdict,
            "cases_checked": self.cases_checked,
        })
    }
}

pub fn law_arg_to_json(a: &LawArg) -> Value {
    match a {
        LawArg::Payload(x) => json!({ "payload": elem_to_json(x) }),
        LawArg::Function(f) => json!({ "function": table_to_json(f) }),
        LawArg::FunctionPair(g, f) => json!({ "functions": [table_to_json(g), table_to_json(f)] }),
        LawArg::Value(m) => json!({ "value": mval_to_json(m) }),
    }
}

/// The payload domain `{a, b, ...}` of the given size.
pub fn payload_domain(size: usize) -> ElemSet {
    (0..size)
        .map(|i| {
            let c = (b'a' + (i % 26) as u8) as char;
            if i < 26 {
                Elem::sym(&c.to_string())
            } else {
                Elem::sym(&format!("{c}{}", i / 26))
            }
        })
        .collect()
}

fn int_domain(k: usize) -> ElemSet {
    (0..k as i64).map(Elem::int).collect()
}

fn all_functions(domain: &ElemSet) -> Vec<FnTable> {
    (1..=3).flat_map(|k| FnTable::all_functions(domain, &int_domain(k))).collect()
}

fn all_function_pairs(domain: &ElemSet) -> Vec<(FnTable, FnTable)> {
    let gs = FnTable::all_functions(domain, &int_domain(2));
    let fs = FnTable::all_functions(&int_domain(2), &int_domain(3));
    gs.iter().flat_map(|g| fs.iter().map(move |f| (g.clone(), f.clone()))).collect()
}

/// Every argument of the given sort, in canonical order.
fn arguments(inst: &Moconad, sort: Sort, domain: &ElemSet, bounds: &Bounds) -> Vec<LawArg> {
    match sort {
        Sort::Payload => domain.iter().cloned().map(LawArg::Payload).collect(),
        Sort::Function => all_functions(domain).into_iter().map(LawArg::Function).collect(),
        Sort::FunctionPair => all_function_pairs(domain).into_iter().map(|(g, f)| LawArg::FunctionPair(g, f)).collect(),
        Sort::Value(d) => {
            enumerate_nested(inst, domain, bounds.for_depth(d), d as usize).into_iter().map(LawArg::Value).collect()
        }
    }
}

/// The number of cases an exhaustive check of `law` visits, computed from
/// closed-form counts without enumerating anything.
pub fn predicted_cases(law: LawId, inst: &Moconad, bounds: &Bounds) -> u128 {
    let d = bounds.domain_size as u128;
    law.signature()
        .iter()
        .map(|s| match s {
            Sort::Payload => d,
            Sort::Function => 1 + 2u128.pow(d as u32) + 3u128.pow(d as u32),
            Sort::FunctionPair => 2u128.pow(d as u32) * 9,
            Sort::Value(k) => count_nested(inst, bounds.domain_size, bounds.for_depth(*k), *k as usize),
        })
        .product()
}

fn decode(mut index: u64, radices: &[u64]) -> Vec<usize> {
    let mut digits = vec![0usize; radices.len()];
    for i in (0..radices.len()).rev() {
        digits[i] = (index % radices[i]) as usize;
        index /= radices[i];
    }
    digits
}

fn failure(law: LawId, ops: &dyn MoconadOps, args: &[LawArg]) -> Option<(Elem, Elem)> {
    match law.evaluate(ops, args) {
        Ok((l, r)) if l == r => None,
        Ok((l, r)) => Some((l, r)),
        Err(e) => Some((Elem::sym(&format!("error: {e}")), Elem::sym("no value"))),
    }
}

fn random_arg<R: Rng>(sort: Sort, domain: &ElemSet, samplers: &[NestedSampler<'_>], rng: &mut R) -> LawArg {
    let random_table =
        |rng: &mut R, dom: &ElemSet, k: usize| FnTable::tabulate(dom, |_| Elem::int(rng.gen_range(0..k as i64)));
    match sort {
        Sort::Payload => LawArg::Payload(domain.get(rng.gen_range(0..domain.len())).clone()),
        Sort::Function => {
            let k = rng.gen_range(1..=3);
            LawArg::Function(random_table(rng, domain, k))
        }
        Sort::FunctionPair => {
            let g = random_table(rng, domain, 2);
            let f = random_table(rng, &int_domain(2), 3);
            LawArg::FunctionPair(g, f)
        }
        Sort::Value(d) => LawArg::Value(samplers[d as usize - 1].sample(rng)),
    }
}

/// Checks one law against the given structure maps.
pub fn check_law_with(ops: &dyn MoconadOps, law: LawId, strategy: Strategy) -> Result<LawReport> {
    let inst = ops.instance();
    let bounds = strategy.bounds();
    if bounds.value == 0 || bounds.nested == 0 || bounds.domain_size == 0 {
        return Err(Error::Structure("bounds and domain size must be positive".into()));
    }
    let domain = payload_domain(bounds.domain_size);
    let sig = law.signature();
    let (found, cases) = match strategy {
        Strategy::Exhaustive(_) => {
            let lists: Vec<Vec<LawArg>> = sig.iter().map(|s| arguments(inst, *s, &domain, &bounds)).collect();
            let radices: Vec<u64> = lists.iter().map(|l| l.len() as u64).collect();
            let total: u64 = radices.iter().product();
            let hit = (0..total).into_par_iter().find_map_first(|i| {
                let args: Vec<LawArg> = decode(i, &radices).iter().zip(&lists).map(|(&d, l)| l[d].clone()).collect();
                failure(law, ops, &args).map(|(l, r)| (args, l, r))
            });
            (hit, total)
        }
        Strategy::Random { seed, samples, .. } => {
            let samplers: Vec<NestedSampler<'_>> =
                (1..=3u8).map(|d| NestedSampler::new(inst, &domain, bounds.for_depth(d), d as usize)).collect();
            let hit = (0..samples).into_par_iter().find_map_first(|i| {
                let mut rng = ChaCha8Rng::seed_from_u64(seed);
                rng.set_stream(i);
                let args: Vec<LawArg> = sig.iter().map(|s| random_arg(*s, &domain, &samplers, &mut rng)).collect();
                failure(law, ops, &args).map(|(l, r)| (args, l, r))
            });
            (hit, samples)
        }
    };
    let verdict = match found {
        None => Verdict::Pass,
        Some((args, lhs, rhs)) => Verdict::Fail { counterexample: args, lhs, rhs },
    };
    Ok(LawReport { law, instance: inst.kind(), strategy, verdict, cases_checked: cases })
}

pub fn check_law(law: LawId, inst: &Moconad, strategy: Strategy) -> Result<LawReport> {
    check_law_with(inst, law, strategy)
}

/// Runs the whole catalog, in catalog order.
pub fn check_all_laws_with(ops: &dyn MoconadOps, strategy: Strategy) -> Result<Vec<LawReport>> {
    LawId::ALL.iter().map(|&law| check_law_with(ops, law, strategy)).collect()
}

pub fn check_all_laws(inst: &Moconad, strategy: Strategy) -> Result<Vec<LawReport>> {
    check_all_laws_with(inst, strategy)
}

/// Base payloads occurring anywhere in the arguments.
fn payloads_of(args: &[LawArg]) -> ElemSet {
    fn walk(e: &Elem, out: &mut Vec<Elem>) {
        match e.as_wrapped() {
            Some(m) => m.payloads().into_iter().for_each(|p| walk(p, out)),
            None => out.push(e.clone()),
        }
    }
    let mut out = Vec::new();
    for a in args {
        match a {
            LawArg::Payload(x) => out.push(x.clone()),
            LawArg::Value(m) => m.payloads().into_iter().for_each(|p| walk(p, &mut out)),
            LawArg::Function(f) => out.extend(f.domain().iter().cloned()),
            LawArg::FunctionPair(g, _) => out.extend(g.domain().iter().cloned()),
        }
    }
    ElemSet::new(out)
}

fn value_depth(m: &MVal) -> usize {
    match m.payloads().first().and_then(|p| p.as_wrapped()) {
        Some(inner) => 1 + value_depth(inner),
        None => 1,
    }
}

/// Candidates strictly smaller than `current` in canonical order, smallest
/// first.
fn smaller_candidates(inst: &Moconad, current: &LawArg, domain: &ElemSet) -> Vec<LawArg> {
    match current {
        LawArg::Payload(x) => domain.iter().filter(|y| *y < x).cloned().map(LawArg::Payload).collect(),
        LawArg::Function(f) => {
            let codomain: ElemSet = f.values().iter().cloned().collect();
            FnTable::all_functions(f.domain(), &codomain).into_iter().filter(|g| g < f).map(LawArg::Function).collect()
        }
        LawArg::FunctionPair(..) => Vec::new(),
        LawArg::Value(m) => {
            let depth = value_depth(m);
            let size = nested_size(inst, m, depth);
            enumerate_nested(inst, domain, size, depth)
                .into_iter()
                .filter(|v| {
                    let s = nested_size(inst, v, depth);
                    (s, v) < (size, m)
                })
                .map(LawArg::Value)
                .collect()
        }
    }
}

/// Shrinks failing inputs by repeatedly replacing one argument with the
/// canonically smallest smaller argument that still fails. The result fails
/// and no single-argument replacement by a smaller candidate fails.
pub fn minimize_counterexample_with(ops: &dyn MoconadOps, law: LawId, inputs: &[LawArg]) -> Result<Vec<LawArg>> {
    if failure(law, ops, inputs).is_none() {
        return Err(Error::Structure(format!("inputs satisfy {law}; nothing to minimize")));
    }
    let inst = ops.instance();
    let domain = payloads_of(inputs);
    let mut current = inputs.to_vec();
    'outer: loop {
        for i in 0..current.len() {
            for cand in smaller_candidates(inst, &current[i], &domain) {
                let mut trial = current.clone();
                trial[i] = cand;
                if failure(law, ops, &trial).is_some() {
                    current = trial;
                    continue 'outer;
                }
            }
        }
        return Ok(current);
    }
}

pub fn minimize_counterexample(law: LawId, inst: &Moconad, inputs: &[LawArg]) -> Result<Vec<LawArg>> {
    minimize_counterexample_with(inst, law, inputs)
}

/// Seeded implementation mistakes used to confirm that the law suite
/// detects broken structure maps.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Mutation {
    /// Prefix-list `put` overwrites the first item instead of the last.
    PrefixPutReplacesFirst,
    /// Prefix-list `expand` produces suffixes instead of prefixes.
    PrefixExpandGivesSuffixes,
    /// Suffix-list `put` overwrites the last item instead of the first.
    SuffixPutReplacesLast,
    /// Pointed-list `flatten` puts the focus at the start of the outer
    /// focused block, ignoring the inner focus.
    PointedFlattenIgnoresInnerFocus,
    /// Pointed-list `extract` returns the first item.
    PointedExtractFirst,
    /// Pointed-term `expand` puts the outer focus at the first leaf.
    TermExpandFocusAtFirstLeaf,
}

impl Mutation {
    pub const ALL: [Mutation; 6] = [
        Mutation::PrefixPutReplacesFirst,
        Mutation::PrefixExpandGivesSuffixes,
        Mutation::SuffixPutReplacesLast,
        Mutation::PointedFlattenIgnoresInnerFocus,
        Mutation::PointedExtractFirst,
        Mutation::TermExpandFocusAtFirstLeaf,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Mutation::PrefixPutReplacesFirst => "prefix-list put replaces first",
            Mutation::PrefixExpandGivesSuffixes => "prefix-list expand gives suffixes",
            Mutation::SuffixPutReplacesLast => "suffix-list put replaces last",
            Mutation::PointedFlattenIgnoresInnerFocus => "pointed-list flatten ignores inner focus",
            Mutation::PointedExtractFirst => "pointed-list extract returns first",
            Mutation::TermExpandFocusAtFirstLeaf => "pointed-term expand focuses first leaf",
        }
    }

    pub fn kind(self) -> FunctorKind {
        match self {
            Mutation::PrefixPutReplacesFirst | Mutation::PrefixExpandGivesSuffixes => FunctorKind::PrefixList,
            Mutation::SuffixPutReplacesLast => FunctorKind::SuffixList,
            Mutation::PointedFlattenIgnoresInnerFocus | Mutation::PointedExtractFirst => FunctorKind::PointedList,
            Mutation::TermExpandFocusAtFirstLeaf => FunctorKind::PointedTerm,
        }
    }
}

/// An instance whose structure maps carry one [`Mutation`].
#[derive(Clone, Debug)]
pub struct Mutant {
    base: Moconad,
    mutation: Mutation,
}

impl Mutant {
    pub fn new(mutation: Mutation) -> Mutant {
        let base = match mutation.kind() {
            FunctorKind::PrefixList => Moconad::prefix_list(),
            FunctorKind::SuffixList => Moconad::suffix_list(),
            FunctorKind::PointedList => Moconad::pointed_list(),
            FunctorKind::PointedTerm => Moconad::pointed_term(default_term_alphabet()).expect("nonempty"),
        };
        Mutant { base, mutation }
    }

    pub fn mutation(&self) -> Mutation {
        self.mutation
    }
}

impl MoconadOps for Mutant {
    fn instance(&self) -> &Moconad {
        &self.base
    }

    fn unit(&self, x: Elem) -> MVal {
        self.base.unit(x)
    }

    fn flatten(&self, mm: &MVal) -> Result<MVal> {
        let flat = self.base.flatten(mm)?;
        if self.mutation != Mutation::PointedFlattenIgnoresInnerFocus {
            return Ok(flat);
        }
        let MVal::PointedList { items: outer, focus } = mm else { return Ok(flat) };
        let start: usize =
            outer[..*focus].iter().map(|x| x.as_wrapped().and_then(|m| m.items()).map_or(0, |xs| xs.len())).sum();
        let MVal::PointedList { items, .. } = flat else { return Ok(flat) };
        Ok(MVal::PointedList { items, focus: start })
    }

    fn extract(&self, m: &MVal) -> Elem {
        match (self.mutation, m) {
            (Mutation::PointedExtractFirst, MVal::PointedList { items, .. }) => items[0].clone(),
            _ => self.base.extract(m),
        }
    }

    fn expand(&self, m: &MVal) -> MVal {
        match (self.mutation, m) {
            (Mutation::PrefixExpandGivesSuffixes, MVal::PrefixList(xs)) => {
                MVal::PrefixList((0..xs.len()).map(|i| Elem::wrap(MVal::PrefixList(xs[i..].to_vec()))).collect())
            }
            (Mutation::TermExpandFocusAtFirstLeaf, MVal::PointedTerm(_)) => match self.base.expand(m) {
                MVal::PointedTerm(t) => {
                    let first = t.root.leaf_paths().into_iter().next().expect("a leaf");
                    MVal::PointedTerm(PointedTerm { root: t.root, focus: first })
                }
                other => other,
            },
            _ => self.base.expand(m),
        }
    }

    fn put(&self, m: &MVal, x: Elem) -> MVal {
        match (self.mutation, m) {
            (Mutation::PrefixPutReplacesFirst, MVal::PrefixList(xs)) => {
                let mut ys = xs.clone();
                ys[0] = x;
                MVal::PrefixList(ys)
            }
            (Mutation::SuffixPutReplacesLast, MVal::SuffixList(xs)) => {
                let mut ys = xs.clone();
                *ys.last_mut().expect("nonempty") = x;
                MVal::SuffixList(ys)
            }
            _ => self.base.put(m, x),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn small() -> Strategy {
        Strategy::Exhaustive(Bounds::uniform(3, 2))
    }

    #[test]
    fn flatten_extract_prefix_bound_three() {
        let r = check_law(LawId::FlattenExtract, &Moconad::prefix_list(), small()).unwrap();
        assert!(r.passed());
        assert_eq!(
            r.cases_checked as u128,
            predicted_cases(LawId::FlattenExtract, &Moconad::prefix_list(), &Bounds::uniform(3, 2))
        );
    }

    #[test]
    fn put_put_on_every_instance() {
        for inst in [
            Moconad::prefix_list(),
            Moconad::suffix_list(),
            Moconad::pointed_list(),
            Moconad::pointed_term(default_term_alphabet()).unwrap(),
        ] {
            let r = check_law(LawId::PutPut, &inst, small()).unwrap();
            assert!(r.passed(), "{inst}");
        }
    }

    #[test]
    fn broken_put_fails_get_put_and_shrinks() {
        let m = Mutant::new(Mutation::PrefixPutReplacesFirst);
        let r = check_law_with(&m, LawId::GetPut, small()).unwrap();
        let Verdict::Fail { counterexample, .. } = r.verdict else { panic!("mutant passed") };
        let big = vec![
            LawArg::Value(MVal::PrefixList(vec![Elem::sym("b"), Elem::sym("a"), Elem::sym("b"), Elem::sym("a")])),
            LawArg::Payload(Elem::sym("b")),
        ];
        let small = minimize_counterexample_with(&m, LawId::GetPut, &big).unwrap();
        let LawArg::Value(v) = &small[0] else { panic!() };
        assert!(v.size() <= 2);
        assert!(!LawId::GetPut.holds(&m, &small));
        let again = minimize_counterexample_with(&m, LawId::GetPut, &small).unwrap();
        assert_eq!(again, small);
        assert!(!LawId::GetPut.holds(&m, &counterexample));
    }

    #[test]
    fn minimize_rejects_passing_inputs() {
        let p = Moconad::prefix_list();
        let args = vec![LawArg::Value(MVal::PrefixList(vec![Elem::sym("a")])), LawArg::Payload(Elem::sym("a"))];
        assert!(minimize_counterexample(LawId::GetPut, &p, &args).is_err());
    }

    #[test]
    fn random_strategy_is_reproducible() {
        let s = Strategy::Random { seed: 42, samples: 200, bounds: Bounds::uniform(6, 2) };
        let p = Moconad::pointed_list();
        let a = check_law(LawId::PutAssoc, &p, s).unwrap();
        assert!(a.passed());
        assert_eq!(a.cases_checked, 200);
        let m = Mutant::new(Mutation::PointedFlattenIgnoresInnerFocus);
        let x = check_law_with(&m, LawId::FlattenExtract, s).unwrap();
        let y = check_law_with(&m, LawId::FlattenExtract, s).unwrap();
        assert!(!x.passed());
        assert_eq!(x, y);
    }
}
