//! Canonical enumeration, counting and seeded sampling of functor values.
//!
//! Sizes: a list's size is its item count and a term's size is its node
//! count. For nested values (`M M X`, `M M M X`) the size is the size of the
//! fully flattened value, i.e. every payload contributes the size of the
//! inner value it wraps.
//!
//! Canonical order: by size, then by the derived order on [`MVal`] (which
//! compares payloads lexicographically before foci).

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::elem::{Elem, ElemSet};
use crate::moconad::{FunctorKind, MVal, Moconad, MoconadOps, Node, PointedTerm};

/// Payload choices grouped by size: `by_size[w]` holds payloads of size `w`.
#[derive(Clone, Debug)]
pub struct WeightedPayloads {
    by_size: Vec<Vec<Elem>>,
}

impl WeightedPayloads {
    /// Plain payloads, each of size one.
    pub fn flat(domain: &ElemSet) -> WeightedPayloads {
        WeightedPayloads { by_size: vec![Vec::new(), domain.as_slice().to_vec()] }
    }

    /// Wrapped values of `inst` as payloads, weighted by their size.
    pub fn wrapped(values: &[(usize, MVal)]) -> WeightedPayloads {
        let mut by_size: Vec<Vec<Elem>> = vec![Vec::new()];
        for (w, v) in values {
            while by_size.len() <= *w {
                by_size.push(Vec::new());
            }
            by_size[*w].push(Elem::wrap(v.clone()));
        }
        WeightedPayloads { by_size }
    }

    fn of_size(&self, w: usize) -> &[Elem] {
        self.by_size.get(w).map(|v| v.as_slice()).unwrap_or(&[])
    }
}

/// Every value of `inst` with plain payloads from `domain` and size at most
/// `bound`, in canonical order.
pub fn enumerate_values(inst: &Moconad, domain: &ElemSet, bound: usize) -> Vec<MVal> {
    enumerate_weighted(inst, &WeightedPayloads::flat(domain), bound).into_iter().map(|(_, v)| v).collect()
}

/// Values of depth `depth` (1 for `M X`, 2 for `M M X`, ...) whose total
/// flattened size is at most `bound`, in canonical order.
pub fn enumerate_nested(inst: &Moconad, domain: &ElemSet, bound: usize, depth: usize) -> Vec<MVal> {
    enumerate_nested_sized(inst, domain, bound, depth).into_iter().map(|(_, v)| v).collect()
}

fn enumerate_nested_sized(inst: &Moconad, domain: &ElemSet, bound: usize, depth: usize) -> Vec<(usize, MVal)> {
    assert!(depth >= 1, "depth starts at 1");
    let mut level = enumerate_weighted(inst, &WeightedPayloads::flat(domain), bound);
    for _ in 1..depth {
        level = enumerate_weighted(inst, &WeightedPayloads::wrapped(&level), bound);
    }
    level
}

/// Values whose payloads are drawn from `payloads`, with total size (payload
/// sizes plus inner term nodes) at most `bound`, paired with their size.
pub fn enumerate_weighted(inst: &Moconad, payloads: &WeightedPayloads, bound: usize) -> Vec<(usize, MVal)> {
    let mut buckets: Vec<Vec<MVal>> = vec![Vec::new(); bound + 1];
    match inst.kind() {
        FunctorKind::PrefixList | FunctorKind::SuffixList | FunctorKind::PointedList => {
            let seqs = sequences(payloads, bound);
            for (n, bucket) in buckets.iter_mut().enumerate().skip(1) {
                for s in &seqs[n] {
                    match inst.kind() {
                        FunctorKind::PrefixList => bucket.push(MVal::PrefixList(s.clone())),
                        FunctorKind::SuffixList => bucket.push(MVal::SuffixList(s.clone())),
                        _ => {
                            for focus in 0..s.len() {
                                bucket.push(MVal::PointedList { items: s.clone(), focus });
                            }
                        }
                    }
                }
            }
        }
        FunctorKind::PointedTerm => {
            let (_, pointed) = trees(inst, payloads, bound);
            for (n, ts) in pointed.into_iter().enumerate() {
                buckets[n] = ts.into_iter().map(MVal::PointedTerm).collect();
            }
        }
    }
    let mut out = Vec::new();
    for (n, mut bucket) in buckets.into_iter().enumerate() {
        bucket.sort();
        out.extend(bucket.into_iter().map(|v| (n, v)));
    }
    out
}

/// All sequences (including the empty one at size 0) by total size.
fn sequences(payloads: &WeightedPayloads, bound: usize) -> Vec<Vec<Vec<Elem>>> {
    let mut seqs: Vec<Vec<Vec<Elem>>> = vec![vec![Vec::new()]];
    for n in 1..=bound {
        let mut here = Vec::new();
        for w in 1..=n {
            for p in payloads.of_size(w) {
                for tail in &seqs[n - w] {
                    let mut s = Vec::with_capacity(tail.len() + 1);
                    s.push(p.clone());
                    s.extend(tail.iter().cloned());
                    here.push(s);
                }
            }
        }
        seqs.push(here);
    }
    seqs
}

/// All ways to split `total` into `k` positive parts.
fn compositions(total: usize, k: usize) -> Vec<Vec<usize>> {
    if k == 0 {
        return if total == 0 { vec![Vec::new()] } else { Vec::new() };
    }
    let mut out = Vec::new();
    for first in 1..=total.saturating_sub(k - 1) {
        for mut rest in compositions(total - first, k - 1) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}

/// Plain and pointed trees by size.
fn trees(inst: &Moconad, payloads: &WeightedPayloads, bound: usize) -> (Vec<Vec<Node>>, Vec<Vec<PointedTerm>>) {
    let alphabet = inst.alphabet().expect("term instance has an alphabet");
    let mut plain: Vec<Vec<Node>> = vec![Vec::new(); bound + 1];
    let mut pointed: Vec<Vec<PointedTerm>> = vec![Vec::new(); bound + 1];
    for n in 1..=bound {
        for p in payloads.of_size(n) {
            plain[n].push(Node::Leaf(p.clone()));
            pointed[n].push(PointedTerm { root: Node::Leaf(p.clone()), focus: Vec::new() });
        }
        for (sym, k) in alphabet.symbols() {
            if k == 0 {
                if n == 1 {
                    plain[1].push(Node::Inner(sym.clone(), Vec::new()));
                }
                continue;
            }
            for parts in compositions(n - 1, k) {
                // Unpointed: cartesian product of the children.
                let mut combos: Vec<Vec<Node>> = vec![Vec::new()];
                for &w in &parts {
                    let mut next = Vec::new();
                    for c in &combos {
                        for t in &plain[w] {
                            let mut c2 = c.clone();
                            c2.push(t.clone());
                            next.push(c2);
                        }
                    }
                    combos = next;
                }
                for cs in combos {
                    plain[n].push(Node::Inner(sym.clone(), cs));
                }
                // Pointed: one child carries the focus.
                for j in 0..k {
                    let mut combos: Vec<(Vec<Node>, Vec<usize>)> = vec![(Vec::new(), Vec::new())];
                    for (i, &w) in parts.iter().enumerate() {
                        let mut next = Vec::new();
                        for (c, f) in &combos {
                            if i == j {
                                for t in &pointed[w] {
                                    let mut c2 = c.clone();
                                    c2.push(t.root.clone());
                                    let mut f2 = vec![j];
                                    f2.extend(t.focus.iter().copied());
                                    next.push((c2, f2));
                                }
                            } else {
                                for t in &plain[w] {
                                    let mut c2 = c.clone();
                                    c2.push(t.clone());
                                    next.push((c2, f.clone()));
                                }
                            }
                        }
                        combos = next;
                    }
                    for (cs, focus) in combos {
                        pointed[n].push(PointedTerm { root: Node::Inner(sym.clone(), cs), focus });
                    }
                }
            }
        }
    }
    (plain, pointed)
}

/// Counting tables used both for closed-form counts and for uniform
/// sampling.
#[derive(Clone, Debug)]
struct Counts {
    /// Payload counts by size.
    leaf: Vec<u128>,
    /// Sequences (lists) or unpointed trees by size; `plain[0] = 1` for lists.
    plain: Vec<u128>,
    /// Values of the instance by size.
    values: Vec<u128>,
}

fn convolve(a: &[u128], b: &[u128], bound: usize) -> Vec<u128> {
    let mut out = vec![0u128; bound + 1];
    for i in 0..=bound {
        for j in 0..=bound - i {
            out[i + j] = out[i + j].saturating_add(a[i].saturating_mul(b[j]));
        }
    }
    out
}

fn unit_series(bound: usize) -> Vec<u128> {
    let mut one = vec![0u128; bound + 1];
    one[0] = 1;
    one
}

impl Counts {
    fn new(inst: &Moconad, leaf: Vec<u128>, bound: usize) -> Counts {
        match inst.kind() {
            FunctorKind::PrefixList | FunctorKind::SuffixList | FunctorKind::PointedList => {
                let mut seq = unit_series(bound);
                for n in 1..=bound {
                    seq[n] = (1..=n).map(|w| leaf[w].saturating_mul(seq[n - w])).fold(0, u128::saturating_add);
                }
                let values = if inst.kind() == FunctorKind::PointedList {
                    let marked = convolve(&convolve(&seq, &leaf, bound), &seq, bound);
                    let mut v = marked;
                    v[0] = 0;
                    v
                } else {
                    let mut v = seq.clone();
                    v[0] = 0;
                    v
                };
                Counts { leaf, plain: seq, values }
            }
            FunctorKind::PointedTerm => {
                let alphabet = inst.alphabet().expect("term instance has an alphabet");
                let mut plain = vec![0u128; bound + 1];
                let mut pointed = vec![0u128; bound + 1];
                for n in 1..=bound {
                    let mut t = leaf[n];
                    let mut p = leaf[n];
                    for (_, k) in alphabet.symbols() {
                        if k == 0 {
                            if n == 1 {
                                t += 1;
                            }
                            continue;
                        }
                        // Only sizes below n are needed, and they are final.
                        let mut pow = unit_series(bound);
                        for _ in 0..k {
                            pow = convolve(&pow, &plain, bound);
                        }
                        t = t.saturating_add(pow[n - 1]);
                        let mut mixed = pointed.clone();
                        for _ in 1..k {
                            mixed = convolve(&mixed, &plain, bound);
                        }
                        p = p.saturating_add((k as u128).saturating_mul(mixed[n - 1]));
                    }
                    plain[n] = t;
                    pointed[n] = p;
                }
                Counts { leaf, plain, values: pointed }
            }
        }
    }
}

/// Number of values of `inst` over a payload domain of `domain_size`
/// elements with size at most `bound`.
pub fn count_values(inst: &Moconad, domain_size: usize, bound: usize) -> u128 {
    count_nested(inst, domain_size, bound, 1)
}

/// Number of depth-`depth` nested values with total size at most `bound`.
pub fn count_nested(inst: &Moconad, domain_size: usize, bound: usize, depth: usize) -> u128 {
    let counts = nested_counts(inst, domain_size, bound, depth);
    counts.values.iter().fold(0, |a, &b| a.saturating_add(b))
}

fn nested_counts(inst: &Moconad, domain_size: usize, bound: usize, depth: usize) -> Counts {
    let mut leaf = vec![0u128; bound + 1];
    if bound >= 1 {
        leaf[1] = domain_size as u128;
    }
    let mut counts = Counts::new(inst, leaf, bound);
    for _ in 1..depth {
        counts = Counts::new(inst, counts.values.clone(), bound);
    }
    counts
}

fn pick_weighted<R: Rng>(rng: &mut R, weights: &[u128]) -> usize {
    let total: u128 = weights.iter().fold(0, |a, &b| a.saturating_add(b));
    assert!(total > 0, "nothing to sample");
    let mut r = rng.gen_range(0..total);
    for (i, &w) in weights.iter().enumerate() {
        if r < w {
            return i;
        }
        r -= w;
    }
    unreachable!()
}

/// Uniform sampler for values of a fixed depth.
struct Sampler<'a> {
    inst: &'a Moconad,
    domain: &'a ElemSet,
    /// `levels[d]` holds the counts for depth `d + 1`.
    levels: Vec<Counts>,
}

impl<'a> Sampler<'a> {
    fn new(inst: &'a Moconad, domain: &'a ElemSet, bound: usize, depth: usize) -> Sampler<'a> {
        let mut levels = Vec::new();
        for d in 1..=depth {
            levels.push(nested_counts(inst, domain.len(), bound, d));
        }
        Sampler { inst, domain, levels }
    }

    /// A uniformly random payload of size `w` at depth `level` (0 = plain).
    fn payload<R: Rng>(&self, rng: &mut R, level: usize, w: usize) -> Elem {
        if level == 0 {
            debug_assert_eq!(w, 1);
            return self.domain.get(rng.gen_range(0..self.domain.len())).clone();
        }
        Elem::wrap(self.value(rng, level - 1, w))
    }

    fn sequence<R: Rng>(&self, rng: &mut R, level: usize, mut n: usize) -> Vec<Elem> {
        let c = &self.levels[level];
        let mut out = Vec::new();
        while n > 0 {
            let weights: Vec<u128> =
                (0..=n).map(|w| if w == 0 { 0 } else { c.leaf[w].saturating_mul(c.plain[n - w]) }).collect();
            let w = pick_weighted(rng, &weights);
            out.push(self.payload(rng, level, w));
            n -= w;
        }
        out
    }

    /// A uniformly random value of size exactly `n` at depth `level + 1`.
    fn value<R: Rng>(&self, rng: &mut R, level: usize, n: usize) -> MVal {
        let c = &self.levels[level];
        match self.inst.kind() {
            FunctorKind::PrefixList => MVal::PrefixList(self.sequence(rng, level, n)),
            FunctorKind::SuffixList => MVal::SuffixList(self.sequence(rng, level, n)),
            FunctorKind::PointedList => {
                // Split n = left + focused + right.
                let mut choices = Vec::new();
                let mut weights = Vec::new();
                for left in 0..n {
                    for w in 1..=n - left {
                        choices.push((left, w));
                        weights.push(c.plain[left].saturating_mul(c.leaf[w]).saturating_mul(c.plain[n - left - w]));
                    }
                }
                let (left, w) = choices[pick_weighted(rng, &weights)];
                let mut items = self.sequence(rng, level, left);
                let focus = items.len();
                items.push(self.payload(rng, level, w));
                items.extend(self.sequence(rng, level, n - left - w));
                MVal::PointedList { items, focus }
            }
            FunctorKind::PointedTerm => MVal::PointedTerm(self.pointed_tree(rng, level, n)),
        }
    }

    fn tree<R: Rng>(&self, rng: &mut R, level: usize, n: usize) -> Node {
        let c = &self.levels[level];
        let alphabet = self.inst.alphabet().expect("alphabet");
        let symbols: Vec<_> = alphabet.symbols().collect();
        let mut weights = vec![c.leaf[n]];
        for (_, k) in &symbols {
            weights.push(if *k == 0 { u128::from(n == 1) } else { self.tuple_count(&vec![false; *k], level, n - 1) });
        }
        let i = pick_weighted(rng, &weights);
        if i == 0 {
            return Node::Leaf(self.payload(rng, level, n));
        }
        let (sym, k) = symbols[i - 1];
        let sizes = self.tuple_sizes(rng, &vec![false; k], level, n - 1);
        Node::Inner(sym.clone(), sizes.into_iter().map(|w| self.tree(rng, level, w)).collect())
    }

    fn pointed_tree<R: Rng>(&self, rng: &mut R, level: usize, n: usize) -> PointedTerm {
        let c = &self.levels[level];
        let alphabet = self.inst.alphabet().expect("alphabet");
        let mut options: Vec<Option<(std::sync::Arc<str>, usize, usize)>> = vec![None];
        let mut weights = vec![c.leaf[n]];
        for (sym, k) in alphabet.symbols() {
            for j in 0..k {
                let mut marks = vec![false; k];
                marks[j] = true;
                options.push(Some((sym.clone(), k, j)));
                weights.push(self.tuple_count(&marks, level, n - 1));
            }
        }
        match &options[pick_weighted(rng, &weights)] {
            None => PointedTerm { root: Node::Leaf(self.payload(rng, level, n)), focus: Vec::new() },
            Some((sym, k, j)) => {
                let mut marks = vec![false; *k];
                marks[*j] = true;
                let sizes = self.tuple_sizes(rng, &marks, level, n - 1);
                let mut children = Vec::new();
                let mut focus = vec![*j];
                for (i, w) in sizes.into_iter().enumerate() {
                    if i == *j {
                        let t = self.pointed_tree(rng, level, w);
                        focus.extend(t.focus);
                        children.push(t.root);
                    } else {
                        children.push(self.tree(rng, level, w));
                    }
                }
                PointedTerm { root: Node::Inner(sym.clone(), children), focus }
            }
        }
    }

    /// Number of child tuples of total size `m` where marked positions are
    /// pointed trees and the rest plain trees.
    fn tuple_count(&self, marks: &[bool], level: usize, m: usize) -> u128 {
        let c = &self.levels[level];
        let mut acc = unit_series(m);
        for &pointed in marks {
            let series = if pointed { &c.values } else { &c.plain };
            acc = convolve(&acc, &series[..=m], m);
        }
        acc[m]
    }

    fn tuple_sizes<R: Rng>(&self, rng: &mut R, marks: &[bool], level: usize, mut m: usize) -> Vec<usize> {
        let c = &self.levels[level];
        let mut sizes = Vec::new();
        for (i, &pointed) in marks.iter().enumerate() {
            let series = if pointed { &c.values } else { &c.plain };
            let rest = &marks[i + 1..];
            let weights: Vec<u128> = (0..=m)
                .map(|w| if w == 0 { 0 } else { series[w].saturating_mul(self.tuple_count(rest, level, m - w)) })
                .collect();
            let w = pick_weighted(rng, &weights);
            sizes.push(w);
            m -= w;
        }
        sizes
    }

    fn sizes_available(&self, level: usize) -> Vec<usize> {
        self.levels[level].values.iter().enumerate().filter(|(_, &c)| c > 0).map(|(n, _)| n).collect()
    }

    /// A value of a uniformly chosen available size, uniform within that size.
    fn sample<R: Rng>(&self, rng: &mut R, level: usize) -> MVal {
        let sizes = self.sizes_available(level);
        let n = sizes[rng.gen_range(0..sizes.len())];
        self.value(rng, level, n)
    }
}

/// Deterministic pseudo-random values of size at most `bound`: each sample
/// picks a size uniformly among the achievable sizes and then a value
/// uniformly among those of that size.
pub fn sample_values(inst: &Moconad, domain: &ElemSet, bound: usize, seed: u64, count: usize) -> Vec<MVal> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let sampler = Sampler::new(inst, domain, bound, 1);
    (0..count).map(|_| sampler.sample(&mut rng, 0)).collect()
}

/// Like [`sample_values`] for nested values of the given depth, drawing from
/// a caller-supplied generator.
pub fn sample_nested<R: Rng>(inst: &Moconad, domain: &ElemSet, bound: usize, depth: usize, rng: &mut R) -> MVal {
    let sampler = Sampler::new(inst, domain, bound, depth);
    sampler.sample(rng, depth - 1)
}

/// A reusable sampler for repeated draws at a fixed depth.
pub struct NestedSampler<'a> {
    inner: Sampler<'a>,
    depth: usize,
}

impl<'a> NestedSampler<'a> {
    pub fn new(inst: &'a Moconad, domain: &'a ElemSet, bound: usize, depth: usize) -> NestedSampler<'a> {
        NestedSampler { inner: Sampler::new(inst, domain, bound, depth), depth }
    }

    pub fn sample<R: Rng>(&self, rng: &mut R) -> MVal {
        self.inner.sample(rng, self.depth - 1)
    }
}

/// Size of a nested value: the size of its full flattening.
pub fn nested_size(inst: &Moconad, m: &MVal, depth: usize) -> usize {
    let mut v = m.clone();
    for _ in 1..depth {
        v = inst.flatten(&v).expect("nested value");
    }
    v.size()
}
