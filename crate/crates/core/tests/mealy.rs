use moconad_core::corpus::{letters, random_mealy, random_transduction};
use moconad_core::mealy::{
    all_words, change_first_a_machine, phi, replace_first_with_last_machine, Direction, MealyMachine,
    UnambiguityVerdict, UnambiguousMealy, Word,
};
use moconad_core::transduction::Transduction;
use moconad_core::{Elem, Moconad, MoconadOps};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn on_list(t: &Transduction, w: &[Elem]) -> Word {
    let m = t.instance().make_list(w.to_vec()).unwrap();
    t.apply(&m).unwrap().items().unwrap().to_vec()
}

fn on_pointed(t: &Transduction, w: &[Elem]) -> Word {
    phi(|m| t.apply(m))(w).unwrap()
}

/// A direct simulation: the output at position `i` comes from the state
/// reached after `i` letters, scanning in the machine's direction.
fn simulate(m: &MealyMachine, w: &[Elem]) -> Word {
    let mut q = m.initial().clone();
    let mut out = vec![Elem::int(0); w.len()];
    let order: Vec<usize> = match m.direction() {
        Direction::LeftToRight => (0..w.len()).collect(),
        Direction::RightToLeft => (0..w.len()).rev().collect(),
    };
    for i in order {
        let (r, b) = m.step(&q, &w[i]).unwrap();
        out[i] = b;
        q = r;
    }
    out
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn mealy_round_trip(seed in any::<u64>(), right_to_left in any::<bool>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let dir = if right_to_left { Direction::RightToLeft } else { Direction::LeftToRight };
        let m = random_mealy(&mut rng, 4, &letters(2), &letters(2), dir);
        let t = m.to_transduction().unwrap();
        let back = MealyMachine::from_transduction(&t).unwrap();
        for w in all_words(&letters(2), 6) {
            let expected = simulate(&m, &w);
            prop_assert_eq!(m.run(&w).unwrap(), expected.clone());
            prop_assert_eq!(on_list(&t, &w), expected.clone());
            prop_assert_eq!(back.run(&w).unwrap(), expected);
        }
    }

    #[test]
    fn pointed_round_trip(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let t = random_transduction(&mut rng, &Moconad::pointed_list(), &letters(2), 3, 2);
        let u = UnambiguousMealy::from_transduction(&t).unwrap();
        prop_assert_eq!(u.check_unambiguous(Some(5)), UnambiguityVerdict::Unambiguous);
        let t2 = u.to_transduction().unwrap();
        for w in all_words(&letters(2), 5) {
            let expected = on_pointed(&t, &w);
            prop_assert_eq!(u.count_runs(&w, 3).unwrap(), 1);
            prop_assert_eq!(u.run(&w).unwrap(), expected.clone());
            prop_assert_eq!(on_pointed(&t2, &w), expected);
        }
    }
}

#[test]
fn example_machines_round_trip() {
    let m = change_first_a_machine();
    let t = m.to_transduction().unwrap();
    for w in all_words(m.input_alphabet(), 6) {
        assert_eq!(on_list(&t, &w), m.run(&w).unwrap());
    }

    let u = replace_first_with_last_machine();
    assert_eq!(u.check_unambiguous(None), UnambiguityVerdict::Unambiguous);
    let t = u.to_transduction().unwrap();
    let back = UnambiguousMealy::from_transduction(&t).unwrap();
    for w in all_words(u.input_alphabet(), 5) {
        let expected: Word = {
            let mut v = w.clone();
            v[0] = w[w.len() - 1].clone();
            v
        };
        assert_eq!(u.run(&w).unwrap(), expected);
        assert_eq!(on_pointed(&t, &w), expected);
        assert_eq!(back.run(&w).unwrap(), expected);
    }
}

#[test]
fn pointed_outputs_ignore_the_focus() {
    let u = replace_first_with_last_machine();
    let t = u.to_transduction().unwrap();
    let inst = t.instance().clone();
    for w in all_words(u.input_alphabet(), 4) {
        let first = on_pointed(&t, &w);
        for i in 0..w.len() {
            let out = t.apply(&inst.make_pointed(w.clone(), i).unwrap()).unwrap();
            assert_eq!(out.items().unwrap(), &first[..]);
            assert_eq!(inst.extract(&out), first[i]);
        }
    }
}
