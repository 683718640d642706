//! Acceptance checks. Each criterion prints one line,
//! `criterion N: PASS|FAIL <detail>`, and the test fails if any criterion
//! does. Bounds and limits are pinned below.

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::{Duration, Instant};

use moconad_core::algebra::{algebra_from_semigroup, context, is_m_group, SemigroupTable, WreathAlgebra};
use moconad_core::composition::{classical_wreath_compose, compose_transductions, oracle_compose};
use moconad_core::corpus::{associative_tables, letters, random_mealy, random_transduction, random_transduction_pair};
use moconad_core::functors::{enumerate_nested, enumerate_values};
use moconad_core::lawcheck::{
    check_all_laws, check_all_laws_with, default_term_alphabet, Bounds, Mutant, Mutation, Strategy,
};
use moconad_core::mealy::{
    all_words, change_first_a_machine, phi, replace_first_with_last_machine, Direction, MealyMachine,
    UnambiguityVerdict, UnambiguousMealy, Word,
};
use moconad_core::transduction::{
    check_shape_preserved, identity_algebra, RelaxedTransduction, ShapeVerdict, Transduction,
};
use moconad_core::{Elem, ElemSet, FnTable, FunctorKind, LawId, MVal, Moconad, MoconadOps};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// Criterion 1: wall-clock limit for the whole law suite.
const LAW_SUITE_LIMIT: Duration = Duration::from_secs(300);
/// Criterion 1: how many distinct mutations must be caught.
const MUTATIONS_REQUIRED: usize = 5;
/// Criteria 3, 8 and 9: random pairs per instance and their size limits.
const PAIRS_PER_INSTANCE: usize = 20;
const MAX_CARRIER: usize = 3;
const MAX_ALPHABET: usize = 3;
const COMPOSE_INPUT_BOUND: usize = 5;
/// Criterion 4: nested inputs of total size at most this.
const WREATH_NESTED_BOUND: usize = 3;
/// Criterion 5.
const MEALY_MACHINES: u64 = 10;
const MEALY_MAX_STATES: usize = 4;
const MEALY_WORD_BOUND: usize = 6;
const UNAMBIGUOUS_WORD_BOUND: usize = 5;
/// Criterion 6.
const CONTEXT_VALUE_BOUND: usize = 4;
/// Criterion 8.
const SHAPE_BOUND: usize = 4;

type Check = Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn e2s<T>(r: moconad_core::Result<T>) -> Result<T, String> {
    r.map_err(|e| e.to_string())
}

fn instances() -> Vec<Moconad> {
    vec![
        Moconad::prefix_list(),
        Moconad::suffix_list(),
        Moconad::pointed_list(),
        Moconad::pointed_term(default_term_alphabet()).unwrap(),
    ]
}

fn pairs(inst: &Moconad) -> Vec<(Transduction, Transduction)> {
    let mut rng = ChaCha8Rng::seed_from_u64(0xC0FFEE ^ inst.kind() as u64);
    (0..PAIRS_PER_INSTANCE).map(|_| random_transduction_pair(&mut rng, inst, MAX_CARRIER, MAX_ALPHABET)).collect()
}

fn criterion_1() -> Check {
    let start = Instant::now();
    let mut cases = 0u64;
    for inst in instances() {
        let reports = e2s(check_all_laws(&inst, Strategy::Exhaustive(Bounds::default_for(inst.kind()))))?;
        ensure(reports.len() == LawId::ALL.len(), || format!("{} reports for {inst}", reports.len()))?;
        for r in &reports {
            ensure(r.passed(), || format!("{} fails on {inst}: {:?}", r.law, r.verdict))?;
            cases += r.cases_checked;
        }
    }
    let elapsed = start.elapsed();
    ensure(elapsed < LAW_SUITE_LIMIT, || format!("law suite took {elapsed:?}"))?;

    let mut caught = Vec::new();
    for mutation in Mutation::ALL {
        let mutant = Mutant::new(mutation);
        let reports = e2s(check_all_laws_with(&mutant, Strategy::Exhaustive(Bounds::default_for(mutation.kind()))))?;
        let failing: Vec<_> = reports.iter().filter(|r| !r.passed()).map(|r| r.law.name()).collect();
        if !failing.is_empty() {
            caught.push(format!("{} by {}", mutation.name(), failing.len()));
        }
    }
    ensure(caught.len() >= MUTATIONS_REQUIRED, || format!("only {} mutations caught: {caught:?}", caught.len()))?;
    Ok(format!(
        "23 laws x 4 instances, {cases} cases in {:.1}s; {}/{} mutations caught ({})",
        elapsed.as_secs_f64(),
        caught.len(),
        Mutation::ALL.len(),
        caught.join(", ")
    ))
}

fn criterion_2() -> Check {
    let p = Moconad::prefix_list();
    let ints = |xs: &[i64]| MVal::PrefixList(xs.iter().map(|&x| Elem::int(x)).collect());
    let nested = |xss: &[&[i64]]| MVal::PrefixList(xss.iter().map(|xs| Elem::wrap(ints(xs))).collect());
    let mm = nested(&[&[1, 2], &[3, 4], &[5, 6, 7]]);

    let flat = e2s(p.flatten(&mm))?;
    ensure(flat == ints(&[1, 2, 3, 4, 5, 6, 7]), || format!("flatten gave {flat}"))?;

    // The work function on the last view of δ(mm): pair that view with the
    // prefixes of its focused block, put each prefix in, flatten.
    let views = p.expand(&mm);
    let last = views.items().unwrap().last().unwrap().as_wrapped().unwrap().clone();
    let block = p.extract(&last);
    let prefixes = p.expand(block.as_wrapped().unwrap());
    let worked = e2s(p.strength(&Elem::wrap(last.clone()), &prefixes).try_map(&mut |pair| {
        let (view, z) = pair.as_pair().unwrap();
        Ok(Elem::wrap(p.flatten(&p.put(view.as_wrapped().unwrap(), z.clone()))?))
    }))?;
    let expected_work = nested(&[&[1, 2, 3, 4, 5], &[1, 2, 3, 4, 5, 6], &[1, 2, 3, 4, 5, 6, 7]]);
    ensure(worked == expected_work, || format!("work of the last view gave {worked}"))?;

    let seven: Vec<Vec<i64>> = (1..=7).map(|n| (1..=n).collect()).collect();
    let seven_refs: Vec<&[i64]> = seven.iter().map(|v| v.as_slice()).collect();
    let expected = nested(&seven_refs);
    let top = p.expand(&flat);
    ensure(top == expected, || format!("δ(μ mm) gave {top}"))?;
    let (lhs, rhs) = e2s(LawId::FlattenExpand.evaluate(&p, &[moconad_core::LawArg::Value(mm.clone())]))?;
    ensure(lhs == rhs && lhs == Elem::wrap(expected.clone()), || format!("flatten-expand sides {lhs} / {rhs}"))?;
    Ok(format!("work intermediate {worked}; result has {} prefixes ending in {}", 7, ints(&[1, 2, 3, 4, 5, 6, 7])))
}

fn criterion_3() -> Check {
    let mut summary = Vec::new();
    for inst in instances() {
        let mut inputs = 0usize;
        for (i, (f, g)) in pairs(&inst).iter().enumerate() {
            let fg = e2s(compose_transductions(f, g))?;
            for w in enumerate_values(&inst, f.input_alphabet(), COMPOSE_INPUT_BOUND) {
                let (got, want) = (e2s(fg.apply(&w))?, e2s(oracle_compose(f, g, &w))?);
                ensure(got == want, || format!("{inst} pair {i} on {w}: {got} vs {want}"))?;
                inputs += 1;
            }
        }
        summary.push(format!("{inst} {PAIRS_PER_INSTANCE} pairs/{inputs} inputs"));
    }
    Ok(summary.join(", "))
}

fn criterion_4() -> Check {
    let tables = associative_tables(2);
    let mut checked = 0usize;
    let mut nested_inputs = 0usize;
    let kinds = [FunctorKind::PrefixList, FunctorKind::SuffixList];
    for (i, t1) in tables.iter().enumerate() {
        let t2 = &tables[(i * 3 + 1) % tables.len()];
        for kind in kinds {
            let a1 = e2s(algebra_from_semigroup(t1.clone(), kind))?;
            let a2 = e2s(algebra_from_semigroup(t2.clone(), kind))?;
            let w = e2s(WreathAlgebra::product(&a1, &a2, false, 1 << 16))?;
            let inst = w.instance().clone();
            let carrier = e2s(w.carrier_elements(1 << 16))?;
            ensure(carrier.len() == 32, || format!("carrier has {} elements", carrier.len()))?;
            for x in carrier.iter() {
                let got = e2s(w.evaluate(&inst.unit(x.clone())))?;
                ensure(&got == x, || format!("unit invariance fails at {x}"))?;
            }
            for mm in enumerate_nested(&inst, &carrier, WREATH_NESTED_BOUND, 2) {
                let flat = e2s(w.evaluate(&e2s(inst.flatten(&mm))?))?;
                let inner = e2s(mm.try_map(&mut |v| w.evaluate(v.as_wrapped().expect("nested value"))))?;
                let nested = e2s(w.evaluate(&inner))?;
                ensure(flat == nested, || format!("associativity fails on {mm}"))?;
                nested_inputs += 1;
            }
            checked += 1;
        }
    }
    Ok(format!("{checked} products of 2-element algebras, 32 units each, {nested_inputs} nested inputs"))
}

fn words_of(t: &Transduction, w: &[Elem]) -> moconad_core::Result<Word> {
    let inst = t.instance();
    match inst.kind() {
        FunctorKind::PointedList => phi(|m| t.apply(m))(w),
        _ => Ok(t.apply(&inst.make_list(w.to_vec())?)?.items().unwrap().to_vec()),
    }
}

fn as_unambiguous(m: &MealyMachine) -> moconad_core::Result<UnambiguousMealy> {
    let initial: ElemSet = [m.initial().clone()].into_iter().collect();
    let transitions = m.transitions().into_iter().map(|((q, a), (r, b))| (q, a, r, b)).collect();
    UnambiguousMealy::new(
        m.states().clone(),
        initial,
        m.states().clone(),
        m.input_alphabet().clone(),
        m.output_alphabet().clone(),
        transitions,
    )
}

fn unambiguous_round_trip(u: &UnambiguousMealy, label: &str) -> Result<usize, String> {
    ensure(u.check_unambiguous(None) == UnambiguityVerdict::Unambiguous, || format!("{label} is ambiguous"))?;
    let t = e2s(u.to_transduction())?;
    let back = e2s(UnambiguousMealy::from_transduction(&t))?;
    let mut n = 0;
    for w in all_words(u.input_alphabet(), UNAMBIGUOUS_WORD_BOUND) {
        let want = e2s(u.run(&w))?;
        ensure(e2s(words_of(&t, &w))? == want, || format!("{label}: transduction differs on {w:?}"))?;
        ensure(e2s(back.run(&w))? == want, || format!("{label}: rebuilt machine differs on {w:?}"))?;
        n += 1;
    }
    Ok(n)
}

fn criterion_5() -> Check {
    let ab = letters(2);
    for seed in 0..MEALY_MACHINES {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let m = random_mealy(&mut rng, MEALY_MAX_STATES, &ab, &ab, Direction::LeftToRight);
        let t = e2s(m.to_transduction())?;
        ensure(t.instance().kind() == FunctorKind::PrefixList, || "left-to-right machines give prefix lists".into())?;
        let back = e2s(MealyMachine::from_transduction(&t))?;
        for w in all_words(&ab, MEALY_WORD_BOUND) {
            let want = e2s(m.run(&w))?;
            ensure(e2s(words_of(&t, &w))? == want, || format!("machine {seed}: transduction differs on {w:?}"))?;
            ensure(e2s(back.run(&w))? == want, || format!("machine {seed}: rebuilt machine differs on {w:?}"))?;
        }
    }
    let mut words = unambiguous_round_trip(&replace_first_with_last_machine(), "replace-first-with-last")?;
    words += unambiguous_round_trip(&e2s(as_unambiguous(&change_first_a_machine()))?, "change-first-a")?;
    for seed in 0..MEALY_MACHINES {
        let mut rng = ChaCha8Rng::seed_from_u64(100 + seed);
        let t = random_transduction(&mut rng, &Moconad::pointed_list(), &ab, MAX_CARRIER, 2);
        let u = e2s(UnambiguousMealy::from_transduction(&t))?;
        words += unambiguous_round_trip(&u, &format!("pointed transduction {seed}"))?;
    }
    Ok(format!(
        "{MEALY_MACHINES} machines on words <= {MEALY_WORD_BOUND}; 2 example machines + {MEALY_MACHINES} pointed transductions, {words} words <= {UNAMBIGUOUS_WORD_BOUND}"
    ))
}

fn criterion_6() -> Check {
    let mut algebras = 0;
    let mut checks = 0usize;
    for t in associative_tables(2) {
        for kind in [FunctorKind::PrefixList, FunctorKind::SuffixList] {
            let alg = e2s(algebra_from_semigroup(t.clone(), kind))?;
            let inst = alg.instance().clone();
            let carrier = e2s(alg.listed_carrier())?.clone();
            let values = enumerate_values(&inst, &carrier, CONTEXT_VALUE_BOUND);
            let contexts: Vec<FnTable> = values.iter().map(|m| e2s(context(&alg, m))).collect::<Result<_, _>>()?;
            for (m, c) in values.iter().zip(&contexts) {
                for a in carrier.iter() {
                    ensure(&e2s(context(&alg, &inst.put(m, a.clone())))? == c, || {
                        format!("ctxPutInvariant fails at {m}")
                    })?;
                    checks += 1;
                }
            }
            for a in carrier.iter() {
                ensure(e2s(context(&alg, &inst.unit(a.clone())))?.is_identity(), || format!("ctxUnitId fails at {a}"))?;
                checks += 1;
            }
            for (k, ck) in values.iter().zip(&contexts) {
                for (l, cl) in values.iter().zip(&contexts) {
                    let joined = e2s(context(&alg, &e2s(inst.concat(k, l))?))?;
                    ensure(e2s(ck.compose(cl))? == joined, || format!("concatCtx fails at {k}, {l}"))?;
                    checks += 1;
                }
            }
            algebras += 1;
        }
    }
    Ok(format!("{algebras} algebras from the 8 associative tables, {checks} checks on values <= {CONTEXT_VALUE_BOUND}"))
}

/// `S¹` is a group, computed by adjoining a unit when `S` lacks one and
/// searching for inverses.
fn s1_is_group(t: &SemigroupTable) -> bool {
    let n = t.len();
    let has_unit = t.identity().is_some();
    let size = if has_unit { n } else { n + 1 };
    // index n is the adjoined unit
    let mul = |a: usize, b: usize| -> usize {
        match (a == n, b == n) {
            (true, _) => b,
            (_, true) => a,
            _ => t.mul_idx(a, b),
        }
    };
    let unit = t.identity().unwrap_or(n);
    (0..size).all(|a| (0..size).any(|b| mul(a, b) == unit && mul(b, a) == unit))
}

fn criterion_7() -> Check {
    let mut total = 0;
    let mut disagreements = Vec::new();
    for order in 1..=3 {
        for t in associative_tables(order) {
            let alg = e2s(algebra_from_semigroup(t.clone(), FunctorKind::PrefixList))?;
            let m_group = e2s(is_m_group(&alg))?;
            let brute = s1_is_group(&t);
            if m_group != brute {
                disagreements.push(format!("{:?} (isMGroup {m_group}, S1 group {brute})", t.indices()));
            }
            total += 1;
        }
    }
    ensure(disagreements.is_empty(), || {
        format!(
            "{} of {total} tables disagree, e.g. {}; their left translations do not separate S1, so C_S is a proper quotient of S1",
            disagreements.len(),
            disagreements.iter().take(3).cloned().collect::<Vec<_>>().join("; ")
        )
    })?;
    Ok(format!("{total} tables agree"))
}

fn criterion_8() -> Check {
    let mut corpus: Vec<Transduction> = Vec::new();
    for inst in instances() {
        for (f, g) in pairs(&inst).into_iter().take(8) {
            corpus.push(e2s(compose_transductions(&f, &g))?);
            corpus.push(f);
            corpus.push(g);
        }
        corpus.push(e2s(Transduction::identity(&inst, &letters(2)))?);
    }
    corpus.push(e2s(change_first_a_machine().to_transduction())?);
    corpus.push(e2s(replace_first_with_last_machine().to_transduction())?);
    let mut checked = 0;
    for t in &corpus {
        let inputs = enumerate_values(t.instance(), t.input_alphabet(), SHAPE_BOUND);
        match e2s(check_shape_preserved(t.instance(), |w| t.apply(w), &inputs))? {
            ShapeVerdict::Preserved { checked: n } => checked += n,
            ShapeVerdict::Violated { input, output } => {
                return Err(format!("{} transduction maps {input} to {output}", t.instance()));
            }
        }
    }

    let ab = letters(2);
    let inst = Moconad::prefix_list();
    let dup = FnTable::tabulate(&ab, |x| Elem::wrap(MVal::PrefixList(vec![x.clone(), x.clone()])));
    let relaxed = e2s(RelaxedTransduction::new(e2s(identity_algebra(&inst, &ab))?, FnTable::identity(&ab), dup))?;
    let inputs = enumerate_values(&inst, &ab, SHAPE_BOUND);
    let control = match e2s(check_shape_preserved(&inst, |w| relaxed.apply_relaxed(w), &inputs))? {
        ShapeVerdict::Violated { input, output } => format!("{input} -> {output}"),
        ShapeVerdict::Preserved { .. } => return Err("duplicate-letter relaxed transduction kept every shape".into()),
    };
    Ok(format!(
        "{} transductions, {checked} inputs <= {SHAPE_BOUND}, no violations; negative control {control}",
        corpus.len()
    ))
}

fn criterion_9() -> Check {
    let inst = Moconad::prefix_list();
    let mut inputs = 0;
    for (i, (f, g)) in pairs(&inst).iter().enumerate() {
        let generalized = e2s(compose_transductions(f, g))?;
        let classical = e2s(classical_wreath_compose(f, g))?;
        for w in enumerate_values(&inst, f.input_alphabet(), COMPOSE_INPUT_BOUND) {
            let (a, b) = (e2s(generalized.apply(&w))?, e2s(classical.apply(&w))?);
            ensure(a == b, || format!("pair {i} on {w}: {a} vs {b}"))?;
            inputs += 1;
        }
    }
    Ok(format!("{PAIRS_PER_INSTANCE} prefix pairs, {inputs} inputs <= {COMPOSE_INPUT_BOUND}"))
}

#[test]
fn acceptance() {
    let criteria: [(u8, fn() -> Check); 9] = [
        (1, criterion_1),
        (2, criterion_2),
        (3, criterion_3),
        (4, criterion_4),
        (5, criterion_5),
        (6, criterion_6),
        (7, criterion_7),
        (8, criterion_8),
        (9, criterion_9),
    ];
    let mut failed = Vec::new();
    for (n, check) in criteria {
        let start = Instant::now();
        let outcome = catch_unwind(AssertUnwindSafe(check)).unwrap_or_else(|_| Err("panicked".into()));
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("criterion {n}: PASS {detail} [{secs:.1}s]"),
            Err(detail) => {
                println!("criterion {n}: FAIL {detail} [{secs:.1}s]");
                failed.push(n);
            }
        }
    }
    assert!(failed.is_empty(), "failed criteria: {failed:?}");
}
