//! Brute-force Turing machine oracle.
//!
//! A configuration `⟨S, T, q⟩` stores the left tape with the scanned symbol
//! last, and the right tape reversed, so the cell right of the head is the
//! last entry of `T`. Symbol 0 is the blank.

use std::fmt;

use rand::Rng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Move {
    #[serde(rename = "L")]
    Left,
    #[serde(rename = "R")]
    Right,
    #[serde(rename = "S")]
    Stay,
}

impl Move {
    /// Direction index used by the encodings: left 0, right 1, stay 2.
    pub fn index(self) -> usize {
        match self {
            Move::Left => 0,
            Move::Right => 1,
            Move::Stay => 2,
        }
    }

    pub fn from_index(i: usize) -> Option<Move> {
        [Move::Left, Move::Right, Move::Stay].get(i).copied()
    }
}

#[derive(Error, Debug, Clone, PartialEq, Eq)]
pub enum MachineError {
    #[error("malformed machine: {0}")]
    Malformed(String),
}

fn malformed(msg: impl Into<String>) -> MachineError {
    MachineError::Malformed(msg.into())
}

/// A deterministic machine with a total transition table.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TuringMachine {
    alphabet: usize,
    states: usize,
    allow_stay: bool,
    // indexed by sigma * states + q
    delta: Vec<(usize, usize, Move)>,
}

impl TuringMachine {
    /// `delta(σ, q)` for every symbol and state.
    pub fn new(
        alphabet: usize,
        states: usize,
        allow_stay: bool,
        delta: impl Fn(usize, usize) -> (usize, usize, Move),
    ) -> Result<TuringMachine, MachineError> {
        if alphabet < 2 || states < 1 {
            return Err(malformed("need at least two symbols and one state"));
        }
        let mut table = Vec::with_capacity(alphabet * states);
        for s in 0..alphabet {
            for q in 0..states {
                let (s2, q2, d) = delta(s, q);
                if s2 >= alphabet || q2 >= states {
                    return Err(malformed(format!("delta({s},{q}) leaves the alphabet or state set")));
                }
                if d == Move::Stay && !allow_stay {
                    return Err(malformed("stay moves are not enabled"));
                }
                table.push((s2, q2, d));
            }
        }
        Ok(TuringMachine {
            alphabet,
            states,
            allow_stay,
            delta: table,
        })
    }

    /// A pseudorandom machine.
    pub fn random(alphabet: usize, states: usize, allow_stay: bool, rng: &mut ChaCha8Rng) -> TuringMachine {
        let moves = if allow_stay { 3 } else { 2 };
        let table: Vec<(usize, usize, Move)> = (0..alphabet * states)
            .map(|_| {
                (
                    rng.random_range(0..alphabet),
                    rng.random_range(0..states),
                    Move::from_index(rng.random_range(0..moves)).expect("move index"),
                )
            })
            .collect();
        TuringMachine::new(alphabet, states, allow_stay, |s, q| table[s * states + q]).expect("valid table")
    }

    pub fn alphabet(&self) -> usize {
        self.alphabet
    }

    pub fn states(&self) -> usize {
        self.states
    }

    pub fn allow_stay(&self) -> bool {
        self.allow_stay
    }

    /// Number of move directions: 2, or 3 with stay moves.
    pub fn moves(&self) -> usize {
        if self.allow_stay {
            3
        } else {
            2
        }
    }

    pub fn delta(&self, sigma: usize, q: usize) -> (usize, usize, Move) {
        self.delta[sigma * self.states + q]
    }

    /// Component `i` of `δ(σ, q)` as an index: symbol, state, or direction.
    pub fn delta_i(&self, i: usize, sigma: usize, q: usize) -> usize {
        let (s, q2, d) = self.delta(sigma, q);
        match i {
            0 => s,
            1 => q2,
            2 => d.index(),
            _ => panic!("delta component {i} out of range"),
        }
    }

    pub fn from_json(text: &str) -> Result<TuringMachine, MachineError> {
        let f: MachineFile = serde_json::from_str(text).map_err(|e| malformed(e.to_string()))?;
        let allow_stay = match f.moves.as_str() {
            "LR" => false,
            "LRS" => true,
            other => return Err(malformed(format!("moves must be LR or LRS, found {other}"))),
        };
        if f.alphabet < 2 || f.states < 1 {
            return Err(malformed("need at least two symbols and one state"));
        }
        let mut table: Vec<Option<(usize, usize, Move)>> = vec![None; f.alphabet * f.states];
        for (s, q, s2, q2, d) in f.delta {
            if s >= f.alphabet || q >= f.states {
                return Err(malformed(format!("entry ({s},{q}) out of range")));
            }
            let slot = &mut table[s * f.states + q];
            if slot.is_some() {
                return Err(malformed(format!("duplicate entry ({s},{q})")));
            }
            *slot = Some((s2, q2, d));
        }
        if table.iter().any(Option::is_none) {
            return Err(malformed("delta table is partial"));
        }
        TuringMachine::new(f.alphabet, f.states, allow_stay, |s, q| {
            table[s * f.states + q].expect("total")
        })
    }

    pub fn to_json(&self) -> String {
        let mut delta = Vec::new();
        for s in 0..self.alphabet {
            for q in 0..self.states {
                let (s2, q2, d) = self.delta(s, q);
                delta.push((s, q, s2, q2, d));
            }
        }
        let f = MachineFile {
            states: self.states,
            alphabet: self.alphabet,
            moves: if self.allow_stay { "LRS" } else { "LR" }.to_string(),
            delta,
        };
        serde_json::to_string(&f).expect("serializable")
    }
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct MachineFile {
    states: usize,
    alphabet: usize,
    moves: String,
    delta: Vec<(usize, usize, usize, usize, Move)>,
}

/// A Turing configuration `⟨S, T, q⟩`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Configuration {
    pub left: Vec<usize>,
    pub right: Vec<usize>,
    pub state: usize,
}

impl Configuration {
    pub fn new(left: Vec<usize>, right: Vec<usize>, state: usize) -> Configuration {
        Configuration { left, right, state }
    }
}

/// Renders a symbol string as digits.
pub fn show_word(w: &[usize]) -> String {
    w.iter().map(|d| char::from_digit(*d as u32, 36).unwrap_or('?')).collect()
}

/// Parses a digit string.
pub fn parse_word(s: &str) -> Option<Vec<usize>> {
    s.chars().map(|c| c.to_digit(36).map(|d| d as usize)).collect()
}

impl fmt::Display for Configuration {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "<\"{}\",\"{}\",{}>", show_word(&self.left), show_word(&self.right), self.state)
    }
}

/// One transition step.
pub fn step_config(m: &TuringMachine, c: &Configuration) -> Configuration {
    let mut s = c.left.clone();
    let mut t = c.right.clone();
    let sigma = s.pop().unwrap_or(0);
    let tau = t.pop().unwrap_or(0);
    let (s2, q2, d) = m.delta(sigma, c.state);
    match d {
        Move::Left => {
            t.push(tau);
            t.push(s2);
        }
        Move::Right => {
            s.push(s2);
            s.push(tau);
        }
        Move::Stay => {
            s.push(s2);
            t.push(tau);
        }
    }
    Configuration::new(s, t, q2)
}

pub fn run(m: &TuringMachine, c: &Configuration, p: usize) -> Configuration {
    (0..p).fold(c.clone(), |acc, _| step_config(m, &acc))
}

/// Tape symbols `σ₋ₕ … σₕ` around the head, which is at the centre.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RelWindow {
    pub symbols: Vec<usize>,
}

impl RelWindow {
    pub fn new(symbols: Vec<usize>) -> RelWindow {
        assert!(symbols.len() % 2 == 1, "relative windows have odd length");
        RelWindow { symbols }
    }

    pub fn radius(&self) -> usize {
        self.symbols.len() / 2
    }

    /// Symbol at relative position `m`, blank outside the window.
    pub fn at(&self, m: isize) -> usize {
        let i = m + self.radius() as isize;
        if i < 0 {
            return 0;
        }
        self.symbols.get(i as usize).copied().unwrap_or(0)
    }
}

/// One step on a relative window; the result has radius `h + 1` and is
/// centred on the new head position.
pub fn rel_step(m: &TuringMachine, w: &RelWindow, q: usize) -> (RelWindow, usize) {
    let h = w.radius() as isize;
    let (s2, q2, d) = m.delta(w.at(0), q);
    let shift = match d {
        Move::Left => -1,
        Move::Right => 1,
        Move::Stay => 0,
    };
    let updated = |k: isize| if k == 0 { s2 } else { w.at(k) };
    let symbols = (-h - 1..=h + 1).map(|k| updated(k + shift)).collect();
    (RelWindow::new(symbols), q2)
}

/// A circular tape of `h` cells with the head at `head`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AbsWindow {
    pub symbols: Vec<usize>,
    pub state: usize,
    pub head: usize,
}

pub fn abs_step(m: &TuringMachine, w: &AbsWindow) -> AbsWindow {
    let h = w.symbols.len();
    let (s2, q2, d) = m.delta(w.symbols[w.head], w.state);
    let mut symbols = w.symbols.clone();
    symbols[w.head] = s2;
    let head = match d {
        Move::Left => (w.head + h - 1) % h,
        Move::Right => (w.head + 1) % h,
        Move::Stay => w.head,
    };
    AbsWindow {
        symbols,
        state: q2,
        head,
    }
}

/// The `a` cells ending at the head and the `b` cells right of it,
/// blank-padded.
pub fn window_of(c: &Configuration, a: usize, b: usize) -> (Vec<usize>, Vec<usize>) {
    let n = c.left.len();
    let x = (0..a)
        .map(|k| {
            let back = a - k;
            if back <= n {
                c.left[n - back]
            } else {
                0
            }
        })
        .collect();
    let y = (0..b).map(|k| c.right.iter().rev().nth(k).copied().unwrap_or(0)).collect();
    (x, y)
}

/// The configuration with `x₁ … x_a y₁ … y_b` on the tape and the head on `x_a`.
pub fn config_of(x: &[usize], y: &[usize], q: usize) -> Configuration {
    Configuration::new(x.to_vec(), y.iter().rev().copied().collect(), q)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn writer_right() -> TuringMachine {
        TuringMachine::new(2, 1, false, |_, q| (1, q, Move::Right)).unwrap()
    }

    #[test]
    fn writer_right_step() {
        let c = Configuration::new(vec![0], vec![], 0);
        assert_eq!(step_config(&writer_right(), &c), Configuration::new(vec![1, 0], vec![], 0));
    }

    #[test]
    fn left_move_step() {
        let m = TuringMachine::new(2, 1, false, |s, q| if s == 1 { (0, q, Move::Left) } else { (s, q, Move::Right) }).unwrap();
        let c = Configuration::new(vec![0, 1], vec![1], 0);
        assert_eq!(step_config(&m, &c), Configuration::new(vec![0], vec![1, 0], 0));
    }

    #[test]
    fn stay_step_replaces_in_place() {
        let m = TuringMachine::new(2, 1, true, |_, q| (1, q, Move::Stay)).unwrap();
        let c = Configuration::new(vec![0, 0], vec![1], 0);
        assert_eq!(step_config(&m, &c), Configuration::new(vec![0, 1], vec![1], 0));
    }

    #[test]
    fn rel_step_h0_left() {
        let m = TuringMachine::new(2, 1, false, |_, q| (1, q, Move::Left)).unwrap();
        let (w, _) = rel_step(&m, &RelWindow::new(vec![0]), 0);
        assert_eq!(w.symbols, vec![0, 0, 1]);
    }

    #[test]
    fn abs_step_wraps() {
        let m = TuringMachine::new(2, 1, false, |s, q| (s, q, Move::Left)).unwrap();
        let w = AbsWindow {
            symbols: vec![0, 1, 0],
            state: 0,
            head: 0,
        };
        assert_eq!(abs_step(&m, &w).head, 2);
    }

    #[test]
    fn windows() {
        assert_eq!(config_of(&[0], &[0], 0), Configuration::new(vec![0], vec![0], 0));
        let c = Configuration::new(vec![1], vec![], 0);
        assert_eq!(window_of(&c, 3, 2), (vec![0, 0, 1], vec![0, 0]));
        let c = config_of(&[1, 0], &[1, 1, 0], 0);
        assert_eq!(window_of(&c, 2, 3), (vec![1, 0], vec![1, 1, 0]));
    }

    #[test]
    fn json_round_trip_and_partial_rejection() {
        let m = writer_right();
        assert_eq!(TuringMachine::from_json(&m.to_json()).unwrap(), m);
        let partial = r#"{"states":1,"alphabet":2,"moves":"LR","delta":[[0,0,1,0,"R"]]}"#;
        assert!(TuringMachine::from_json(partial).is_err());
    }
}
