use moconad_core::composition::{
    classical_wreath_compose, compose_transductions, compose_transductions_with, oracle_compose, ComposeOptions,
};
use moconad_core::corpus::{letters, random_transduction_pair, term_alphabet};
use moconad_core::functors::enumerate_values;
use moconad_core::transduction::Transduction;
use moconad_core::{Moconad, MoconadOps};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn instances() -> Vec<Moconad> {
    vec![
        Moconad::prefix_list(),
        Moconad::suffix_list(),
        Moconad::pointed_list(),
        Moconad::pointed_term(term_alphabet()).unwrap(),
    ]
}

#[test]
fn composed_equals_sequential_on_random_pairs() {
    for inst in instances() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..5 {
            let (f, g) = random_transduction_pair(&mut rng, &inst, 3, 3);
            let fg = compose_transductions(&f, &g).unwrap();
            for w in enumerate_values(&inst, f.input_alphabet(), 4) {
                assert_eq!(fg.apply(&w).unwrap(), oracle_compose(&f, &g, &w).unwrap(), "{} on {w}", inst.name());
            }
        }
    }
}

#[test]
fn composing_with_the_identity_changes_nothing() {
    for inst in instances() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let (f, _) = random_transduction_pair(&mut rng, &inst, 3, 2);
        let id = Transduction::identity(&inst, f.output_alphabet()).unwrap();
        let fg = compose_transductions(&f, &id).unwrap();
        for w in enumerate_values(&inst, f.input_alphabet(), 4) {
            assert_eq!(fg.apply(&w).unwrap(), f.apply(&w).unwrap());
        }
    }
}

#[test]
fn classical_agrees_with_generalized_for_prefix_lists() {
    let inst = Moconad::prefix_list();
    let mut rng = ChaCha8Rng::seed_from_u64(23);
    for _ in 0..5 {
        let (f, g) = random_transduction_pair(&mut rng, &inst, 3, 3);
        let a = compose_transductions(&f, &g).unwrap();
        let b = classical_wreath_compose(&f, &g).unwrap();
        for w in enumerate_values(&inst, f.input_alphabet(), 5) {
            assert_eq!(a.apply(&w).unwrap(), b.apply(&w).unwrap());
        }
    }
}

#[test]
fn restricting_to_contexts_agrees_on_lists() {
    for inst in instances().into_iter().take(3) {
        let mut rng = ChaCha8Rng::seed_from_u64(31);
        for _ in 0..3 {
            let (f, g) = random_transduction_pair(&mut rng, &inst, 3, 2);
            let full = compose_transductions(&f, &g).unwrap();
            let restricted =
                compose_transductions_with(&f, &g, ComposeOptions { restrict_to_contexts: true, ..Default::default() })
                    .unwrap();
            for w in enumerate_values(&inst, f.input_alphabet(), 4) {
                assert_eq!(full.apply(&w).unwrap(), restricted.apply(&w).unwrap());
            }
        }
    }
}

#[test]
fn outputs_keep_the_input_shape() {
    let inst = Moconad::pointed_list();
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    let (f, g) = random_transduction_pair(&mut rng, &inst, 3, 3);
    let fg = compose_transductions(&f, &g).unwrap();
    for w in enumerate_values(&inst, &letters(f.input_alphabet().len()), 4) {
        assert_eq!(inst.shape(&fg.apply(&w).unwrap()), inst.shape(&w));
    }
}
