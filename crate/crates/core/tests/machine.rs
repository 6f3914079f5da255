use lltm_core::machine::{
    abs_step, rel_step, run, step_config, window_of, AbsWindow, Configuration, Move, RelWindow, TuringMachine,
};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn machine() -> impl Strategy<Value = TuringMachine> {
    (2usize..=3, 1usize..=3, any::<bool>(), any::<u64>())
        .prop_map(|(s, n, stay, seed)| TuringMachine::random(s, n, stay, &mut ChaCha8Rng::seed_from_u64(seed)))
}

fn config(m: &TuringMachine) -> impl Strategy<Value = Configuration> {
    let word = proptest::collection::vec(0..m.alphabet(), 0..6);
    (word.clone(), word, 0..m.states()).prop_map(|(l, r, q)| Configuration::new(l, r, q))
}

fn machine_and_config() -> impl Strategy<Value = (TuringMachine, Configuration)> {
    machine().prop_flat_map(|m| {
        let c = config(&m);
        (Just(m), c)
    })
}

/// The tape read left to right and the head position in it.
fn tape(c: &Configuration) -> (Vec<usize>, usize) {
    let mut t = c.left.clone();
    t.extend(c.right.iter().rev());
    (t, c.left.len().saturating_sub(1))
}

proptest! {
    #[test]
    fn stepping_is_deterministic((m, c) in machine_and_config()) {
        prop_assert_eq!(step_config(&m, &c), step_config(&m, &c));
    }

    #[test]
    fn runs_compose((m, c) in machine_and_config(), p in 0usize..5, q in 0usize..5) {
        prop_assert_eq!(run(&m, &c, p + q), run(&m, &run(&m, &c, p), q));
    }

    #[test]
    fn one_step_writes_one_cell((m, c) in machine_and_config()) {
        let next = step_config(&m, &c);
        let (s2, q2, d) = m.delta(c.left.last().copied().unwrap_or(0), c.state);
        prop_assert_eq!(next.state, q2);
        let written = match d {
            Move::Left => next.right.last().copied(),
            Move::Right => next.left.iter().rev().nth(1).copied(),
            Move::Stay => next.left.last().copied(),
        };
        prop_assert_eq!(written, Some(s2));
        let grown = next.left.len() + next.right.len();
        prop_assert!(grown >= c.left.len() + c.right.len());
        prop_assert!(grown <= c.left.len().max(1) + c.right.len().max(1));
    }

    #[test]
    fn relative_windows_follow_configurations(
        m in machine(),
        seed in any::<u64>(),
        h in 0usize..4,
    ) {
        let mut r = ChaCha8Rng::seed_from_u64(seed);
        let symbols: Vec<usize> = (0..2 * h + 1).map(|_| rand::Rng::random_range(&mut r, 0..m.alphabet())).collect();
        let q = rand::Rng::random_range(&mut r, 0..m.states());
        let w = RelWindow::new(symbols.clone());
        let c = Configuration::new(symbols[..=h].to_vec(), symbols[h + 1..].iter().rev().copied().collect(), q);
        let next = step_config(&m, &c);
        let (x, y) = window_of(&next, h + 2, h + 1);
        let (w2, q2) = rel_step(&m, &w, q);
        prop_assert_eq!(w2.symbols, [x, y].concat());
        prop_assert_eq!(q2, next.state);
    }

    #[test]
    fn absolute_windows_follow_configurations(
        m in machine(),
        seed in any::<u64>(),
        h in 3usize..7,
    ) {
        let mut r = ChaCha8Rng::seed_from_u64(seed);
        let symbols: Vec<usize> = (0..h).map(|_| rand::Rng::random_range(&mut r, 0..m.alphabet())).collect();
        let head = rand::Rng::random_range(&mut r, 1..h - 1);
        let state = rand::Rng::random_range(&mut r, 0..m.states());
        let w = AbsWindow { symbols: symbols.clone(), state, head };
        let c = Configuration::new(symbols[..=head].to_vec(), symbols[head + 1..].iter().rev().copied().collect(), state);
        let next = step_config(&m, &c);
        let w2 = abs_step(&m, &w);
        let (t, pos) = tape(&next);
        prop_assert_eq!(w2.symbols, t);
        prop_assert_eq!(w2.head, pos);
        prop_assert_eq!(w2.state, next.state);
    }

    #[test]
    fn json_round_trip(m in machine()) {
        let back = TuringMachine::from_json(&m.to_json()).unwrap();
        prop_assert_eq!(back.to_json(), m.to_json());
    }
}

#[test]
fn abs_step_wraps_at_both_ends() {
    let m = TuringMachine::new(2, 1, false, |s, _| (1 - s, 0, if s == 0 { Move::Left } else { Move::Right })).unwrap();
    let w = AbsWindow { symbols: vec![0, 1, 1], state: 0, head: 0 };
    let w = abs_step(&m, &w);
    assert_eq!((w.symbols.as_slice(), w.head), (&[1, 1, 1][..], 2));
    let w = abs_step(&m, &w);
    assert_eq!((w.symbols.as_slice(), w.head), (&[1, 1, 0][..], 0));
}

#[test]
fn blank_cells_appear_on_demand() {
    let m = TuringMachine::new(2, 1, false, |_, _| (1, 0, Move::Left)).unwrap();
    let c = run(&m, &Configuration::new(vec![], vec![], 0), 3);
    assert_eq!(c, Configuration::new(vec![], vec![0, 1, 1, 1], 0));
}
