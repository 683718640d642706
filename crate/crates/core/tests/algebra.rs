use moconad_core::algebra::pointed::DEFAULT_MONOID_CAP;
use moconad_core::algebra::{
    algebra_from_semigroup, context, context_monoid, decompose_pointed_algebra, is_m_group, FiniteAlgebra,
};
use moconad_core::corpus::{associative_tables, random_algebra, random_pointed_algebra, term_alphabet};
use moconad_core::functors::enumerate_values;
use moconad_core::{Elem, FunctorKind, MVal, Moconad, MoconadOps};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn list_algebras(order: usize) -> Vec<FiniteAlgebra> {
    let mut out = Vec::new();
    for t in associative_tables(order) {
        for kind in [FunctorKind::PrefixList, FunctorKind::SuffixList] {
            out.push(algebra_from_semigroup(t.clone(), kind).unwrap());
        }
    }
    out
}

#[test]
fn context_lemmas_on_two_element_tables() {
    for alg in list_algebras(2) {
        let inst = alg.instance().clone();
        let carrier = alg.listed_carrier().unwrap().clone();
        let values = enumerate_values(&inst, &carrier, 4);
        for m in &values {
            let c = context(&alg, m).unwrap();
            for a in carrier.iter() {
                assert_eq!(context(&alg, &inst.put(m, a.clone())).unwrap(), c);
            }
        }
        for a in carrier.iter() {
            assert!(context(&alg, &inst.unit(a.clone())).unwrap().is_identity());
        }
        for k in values.iter().filter(|v| v.size() <= 2) {
            for l in values.iter().filter(|v| v.size() <= 2) {
                let lhs = context(&alg, k).unwrap().compose(&context(&alg, l).unwrap()).unwrap();
                assert_eq!(lhs, context(&alg, &inst.concat(k, l).unwrap()).unwrap());
            }
        }
    }
}

/// For prefix lists the context of `[s₁, …, sₙ]` is left multiplication by
/// `s₁⋯sₙ₋₁`.
#[test]
fn prefix_contexts_are_left_translations() {
    for t in associative_tables(2).into_iter().chain(associative_tables(3).into_iter().step_by(7)) {
        let alg = algebra_from_semigroup(t.clone(), FunctorKind::PrefixList).unwrap();
        for m in enumerate_values(alg.instance(), t.carrier(), 3) {
            let xs = m.items().unwrap();
            let c = context(&alg, &m).unwrap();
            for x in t.carrier().iter() {
                let expected = xs[..xs.len() - 1].iter().rev().fold(x.clone(), |acc, s| t.mul(s, &acc).unwrap());
                assert_eq!(c.apply(x).unwrap(), expected);
            }
        }
    }
}

#[test]
fn context_monoid_is_closed() {
    for alg in list_algebras(3).into_iter().step_by(5) {
        let cm = context_monoid(&alg, None).unwrap();
        for f in cm.tables() {
            for g in cm.tables() {
                assert!(cm.contains(&f.compose(g).unwrap()));
            }
        }
    }
}

/// The left regular action of `S¹` on `S` is faithful.
fn left_faithful(t: &moconad_core::algebra::SemigroupTable) -> bool {
    let n = t.len();
    let rows: Vec<Vec<usize>> = (0..n).map(|s| (0..n).map(|x| t.mul_idx(s, x)).collect()).collect();
    let identity: Vec<usize> = (0..n).collect();
    let mut seen = std::collections::HashSet::new();
    let distinct = rows.iter().all(|r| seen.insert(r.clone()));
    let needs_unit = t.identity().is_none();
    distinct && !(needs_unit && rows.contains(&identity))
}

/// `S¹` is a group exactly when `S` already has an identity and is a group:
/// an adjoined unit is never a product of two elements of `S`.
fn monoid_closure_is_group(t: &moconad_core::algebra::SemigroupTable) -> bool {
    t.identity().is_some() && t.is_group()
}

#[test]
fn m_group_matches_brute_force_for_left_faithful_tables() {
    let mut checked = 0;
    for n in 1..=3 {
        for t in associative_tables(n).into_iter().filter(left_faithful) {
            let alg = algebra_from_semigroup(t.clone(), FunctorKind::PrefixList).unwrap();
            assert_eq!(is_m_group(&alg).unwrap(), monoid_closure_is_group(&t), "{:?}", t.indices());
            checked += 1;
        }
    }
    assert!(checked > 10);
}

#[test]
fn em_axioms_hold_for_random_algebras() {
    let instances = [
        Moconad::prefix_list(),
        Moconad::suffix_list(),
        Moconad::pointed_list(),
        Moconad::pointed_term(term_alphabet()).unwrap(),
    ];
    for inst in instances {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..4 {
            let alg = random_algebra(&mut rng, &inst, 3);
            alg.verify_em_axioms(3).unwrap();
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn pointed_decomposition_reproduces_products(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let alg = random_pointed_algebra(&mut rng, 3);
        let carrier = alg.listed_carrier().unwrap().clone();
        let oracle = |m: &MVal| alg.evaluate(m);
        let p = decompose_pointed_algebra(&carrier, &oracle, DEFAULT_MONOID_CAP).unwrap();
        let rebuilt = FiniteAlgebra::from_pointed(p);
        for m in enumerate_values(alg.instance(), &carrier, 4) {
            prop_assert_eq!(rebuilt.evaluate(&m).unwrap(), alg.evaluate(&m).unwrap());
        }
    }

    #[test]
    fn list_products_are_left_folds(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let t = moconad_core::corpus::random_semigroup(&mut rng, 4);
        let alg = algebra_from_semigroup(t.clone(), FunctorKind::PrefixList).unwrap();
        for m in enumerate_values(alg.instance(), t.carrier(), 4) {
            let folded = m.items().unwrap().iter().skip(1)
                .fold(m.items().unwrap()[0].clone(), |acc: Elem, x| t.mul(&acc, x).unwrap());
            prop_assert_eq!(alg.evaluate(&m).unwrap(), folded);
        }
    }
}
