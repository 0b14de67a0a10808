//! Deterministic Turing machines over end-marked tapes, their simulation,
//! and the encoding of runs as word problems of 2-balanced symmetric
//! string rewriting systems.
//!
//! The tape always has the shape `$ w ¢` and never changes length. End
//! markers are hard: a transition may neither overwrite them nor move the
//! head past them, which the simulator enforces step by step. A machine in
//! accepting normal form halts with every interior cell holding the blank
//! symbol `_` and the head parked on `$`; that single accepting
//! configuration is what the endpoint encoder targets.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use crate::alphabet::{fresh_symbol, Alphabet, Symbol, Word};
use crate::error::{Error, Result};
use crate::rewriting::{Rule, RewritingSystem};

pub const LEFT_MARKER: &str = "$";
pub const RIGHT_MARKER: &str = "\u{a2}"; // ¢
pub const BLANK: &str = "_";
pub const PAD: &str = "\u{2423}"; // ␣

#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Debug, Hash)]
pub enum HeadMove {
    Stay,
    Left,
    Right,
}

impl fmt::Display for HeadMove {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            HeadMove::Stay => "S",
            HeadMove::Left => "L",
            HeadMove::Right => "R",
        })
    }
}

pub type Transition = (Symbol, Symbol, HeadMove);

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct TuringMachine {
    pub tape_alphabet: Alphabet,
    pub states: Alphabet,
    pub initial: Symbol,
    pub accepting: Symbol,
    pub rejecting: Symbol,
    pub delta: BTreeMap<(Symbol, Symbol), Transition>,
}

impl TuringMachine {
    pub fn left_marker(&self) -> Symbol {
        Symbol::new(LEFT_MARKER)
    }

    pub fn right_marker(&self) -> Symbol {
        Symbol::new(RIGHT_MARKER)
    }

    /// The designated blank, present only when the tape alphabet has a `_`.
    pub fn blank(&self) -> Option<Symbol> {
        self.tape_alphabet.get(BLANK).cloned()
    }

    /// Structural checks: markers present, named states exist, delta entries
    /// reference known states and symbols, halting states own no entries.
    pub fn validate(&self) -> Result<()> {
        for marker in [LEFT_MARKER, RIGHT_MARKER] {
            if !self.tape_alphabet.contains(marker) {
                return Err(Error::validation(format!(
                    "tape alphabet is missing the end marker {marker}"
                )));
            }
        }
        for (name, state) in [
            ("initial", &self.initial),
            ("accepting", &self.accepting),
            ("rejecting", &self.rejecting),
        ] {
            if !self.states.contains(state.as_str()) {
                return Err(Error::validation(format!("{name} state {state} is unknown")));
            }
        }
        for ((q, a), (p, b, _)) in &self.delta {
            if q == &self.accepting || q == &self.rejecting {
                return Err(Error::validation(format!(
                    "halting state {q} must have no outgoing transitions"
                )));
            }
            for s in [q, p] {
                if !self.states.contains(s.as_str()) {
                    return Err(Error::validation(format!("transition uses unknown state {s}")));
                }
            }
            for s in [a, b] {
                if !self.tape_alphabet.contains(s.as_str()) {
                    return Err(Error::validation(format!(
                        "transition uses unknown tape symbol {s}"
                    )));
                }
            }
        }
        Ok(())
    }

    /// End-marker discipline, checkable without running the machine:
    /// on `$` write `$` and stay or move right; on `¢` write `¢` and move
    /// left (staying would have no rewriting-rule counterpart); elsewhere
    /// never write a marker.
    pub fn check_static_guards(&self) -> Result<()> {
        self.validate()?;
        let (lm, rm) = (self.left_marker(), self.right_marker());
        for ((q, a), (_, b, mv)) in &self.delta {
            if *a == lm && (*b != lm || *mv == HeadMove::Left) {
                return Err(Error::validation(format!(
                    "transition on ({q}, {a}) must keep the left marker and not move left"
                )));
            }
            if *a == rm && (*b != rm || *mv != HeadMove::Left) {
                return Err(Error::validation(format!(
                    "transition on ({q}, {a}) must keep the right marker and move left"
                )));
            }
            if *a != lm && *a != rm && (*b == lm || *b == rm) {
                return Err(Error::validation(format!(
                    "transition on ({q}, {a}) writes an end marker into the interior"
                )));
            }
        }
        Ok(())
    }

    /// True when delta is defined on every (non-halting state, symbol) pair.
    pub fn is_total(&self) -> bool {
        self.states
            .iter()
            .filter(|q| **q != self.accepting && **q != self.rejecting)
            .all(|q| {
                self.tape_alphabet
                    .iter()
                    .all(|a| self.delta.contains_key(&(q.clone(), a.clone())))
            })
    }
}

/// A machine configuration: end-marked tape, head index, control state.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct TmConfiguration {
    pub tape: Vec<Symbol>,
    pub head: usize,
    pub state: Symbol,
}

/// Builds `$ x ¢` with the head on `$` in the initial state.
pub fn initial_configuration(m: &TuringMachine, input: &Word) -> Result<TmConfiguration> {
    let (lm, rm) = (m.left_marker(), m.right_marker());
    for sym in input.iter() {
        if !m.tape_alphabet.contains(sym.as_str()) || *sym == lm || *sym == rm {
            return Err(Error::validation(format!(
                "input symbol {sym} is not a non-marker tape symbol"
            )));
        }
    }
    let mut tape = vec![lm];
    tape.extend(input.iter().cloned());
    tape.push(rm);
    Ok(TmConfiguration {
        tape,
        head: 0,
        state: m.initial.clone(),
    })
}

/// The normal-form accepting configuration for an input of length `n`:
/// tape `$ _ ... _ ¢`, head on `$`. Needs the blank symbol when `n > 0`.
pub fn accepting_configuration(m: &TuringMachine, input_len: usize) -> Result<TmConfiguration> {
    let mut tape = vec![m.left_marker()];
    if input_len > 0 {
        let blank = m.blank().ok_or_else(|| {
            Error::validation(
                "accepting normal form on non-empty input needs a blank tape symbol `_`",
            )
        })?;
        tape.extend(std::iter::repeat(blank).take(input_len));
    }
    tape.push(m.right_marker());
    Ok(TmConfiguration {
        tape,
        head: 0,
        state: m.accepting.clone(),
    })
}

/// The unique successor configuration. Errors on halting states, missing
/// transitions, overwritten end markers and head moves off the tape.
pub fn tm_step(m: &TuringMachine, c: &TmConfiguration) -> Result<TmConfiguration> {
    if c.state == m.accepting || c.state == m.rejecting {
        return Err(Error::validation(format!(
            "machine already halted in state {}",
            c.state
        )));
    }
    let read = c
        .tape
        .get(c.head)
        .ok_or_else(|| Error::validation("head is off the tape"))?
        .clone();
    let (p, write, mv) = m
        .delta
        .get(&(c.state.clone(), read.clone()))
        .ok_or_else(|| {
            Error::validation(format!("no transition for ({}, {read})", c.state))
        })?
        .clone();
    let (lm, rm) = (m.left_marker(), m.right_marker());
    if (read == lm || read == rm) && write != read {
        return Err(Error::validation(format!(
            "transition overwrites the end marker {read}"
        )));
    }
    if read != lm && read != rm && (write == lm || write == rm) {
        return Err(Error::validation(format!(
            "transition writes the end marker {write} into the interior"
        )));
    }
    let head = match mv {
        HeadMove::Stay => c.head,
        HeadMove::Left => c
            .head
            .checked_sub(1)
            .ok_or_else(|| Error::validation("head moved past the left end marker"))?,
        HeadMove::Right => {
            if c.head + 1 >= c.tape.len() {
                return Err(Error::validation("head moved past the right end marker"));
            }
            c.head + 1
        }
    };
    let mut tape = c.tape.clone();
    tape[c.head] = write;
    Ok(TmConfiguration {
        tape,
        head,
        state: p,
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum RunOutcome {
    Accepts(TmConfiguration),
    Rejects(TmConfiguration),
    /// Revisited a configuration, so the machine runs forever.
    Loops,
}

/// Runs the machine from `$ x ¢`, recording the configuration trace.
/// Rejecting machines may loop forever, hence the step cap; on a space
/// this small a revisited configuration already proves divergence.
pub fn tm_run(
    m: &TuringMachine,
    input: &Word,
    max_steps: usize,
) -> Result<(RunOutcome, Vec<TmConfiguration>)> {
    let mut current = initial_configuration(m, input)?;
    let mut trace = vec![current.clone()];
    let mut seen: BTreeSet<TmConfiguration> = BTreeSet::new();
    seen.insert(current.clone());
    for _ in 0..max_steps {
        if current.state == m.accepting {
            return Ok((RunOutcome::Accepts(current), trace));
        }
        if current.state == m.rejecting {
            return Ok((RunOutcome::Rejects(current), trace));
        }
        current = tm_step(m, &current)?;
        trace.push(current.clone());
        if !seen.insert(current.clone()) {
            return Ok((RunOutcome::Loops, trace));
        }
    }
    if current.state == m.accepting {
        return Ok((RunOutcome::Accepts(current), trace));
    }
    if current.state == m.rejecting {
        return Ok((RunOutcome::Rejects(current), trace));
    }
    Err(Error::resource(format!(
        "machine did not halt within {max_steps} steps"
    )))
}

/// Naming scheme for configuration words: the configuration alphabet
/// contains the tape symbols, one head symbol `(q,a)` per state and tape
/// symbol, and a padding symbol that no rewriting rule ever touches.
#[derive(Clone, Debug)]
pub struct ConfigEncoder {
    pub machine: TuringMachine,
    pub alphabet: Alphabet,
    pub pad: Symbol,
    head: BTreeMap<(Symbol, Symbol), Symbol>,
}

impl ConfigEncoder {
    pub fn new(machine: &TuringMachine) -> Result<Self> {
        machine.validate()?;
        let mut alphabet = machine.tape_alphabet.clone();
        let mut head = BTreeMap::new();
        for q in &machine.states {
            for a in &machine.tape_alphabet {
                let sym = fresh_symbol(&format!("({q},{a})"), &alphabet);
                alphabet.insert(sym.clone());
                head.insert((q.clone(), a.clone()), sym);
            }
        }
        let pad = fresh_symbol(PAD, &alphabet);
        alphabet.insert(pad.clone());
        Ok(ConfigEncoder {
            machine: machine.clone(),
            alphabet,
            pad,
            head,
        })
    }

    pub fn head_symbol(&self, state: &Symbol, read: &Symbol) -> Result<Symbol> {
        self.head
            .get(&(state.clone(), read.clone()))
            .cloned()
            .ok_or_else(|| Error::validation(format!("no head symbol for ({state},{read})")))
    }

    /// The tape with the head cell replaced by `(state, symbol)`, padded on
    /// the right to exactly `space` symbols.
    pub fn encode(&self, c: &TmConfiguration, space: usize) -> Result<Word> {
        if c.tape.len() > space {
            return Err(Error::validation(format!(
                "tape of length {} does not fit in space {space}",
                c.tape.len()
            )));
        }
        if c.head >= c.tape.len() {
            return Err(Error::validation("head is off the tape"));
        }
        let mut out = Vec::with_capacity(space);
        for (i, sym) in c.tape.iter().enumerate() {
            if i == c.head {
                out.push(self.head_symbol(&c.state, sym)?);
            } else {
                out.push(sym.clone());
            }
        }
        out.resize(space, self.pad.clone());
        Ok(Word::new(out))
    }

    /// Directed rewriting rules that mirror one machine step at the head
    /// position, one rule per (transition, context symbol).
    pub fn directed_step_rules(&self) -> Result<Vec<Rule>> {
        let mut out = Vec::new();
        for ((q, a), (p, b, mv)) in &self.machine.delta {
            for c in &self.machine.tape_alphabet {
                let rule = match mv {
                    HeadMove::Stay => Rule::new(
                        Word::new(vec![self.head_symbol(q, a)?, c.clone()]),
                        Word::new(vec![self.head_symbol(p, b)?, c.clone()]),
                    )?,
                    HeadMove::Right => Rule::new(
                        Word::new(vec![self.head_symbol(q, a)?, c.clone()]),
                        Word::new(vec![b.clone(), self.head_symbol(p, c)?]),
                    )?,
                    HeadMove::Left => Rule::new(
                        Word::new(vec![c.clone(), self.head_symbol(q, a)?]),
                        Word::new(vec![self.head_symbol(p, c)?, b.clone()]),
                    )?,
                };
                out.push(rule);
            }
        }
        Ok(out)
    }

    /// The symmetric closure of the directed step rules: a 2-balanced
    /// symmetric system over the configuration alphabet.
    pub fn simulation_system(&self) -> Result<RewritingSystem> {
        let pairs = self
            .directed_step_rules()?
            .into_iter()
            .map(|r| (r.lhs, r.rhs));
        RewritingSystem::symmetric(self.alphabet.clone(), pairs)
    }

    /// Encoded initial and accepting configurations for `input`, both of
    /// length exactly `space`.
    pub fn endpoints(&self, input: &Word, space: usize) -> Result<(Word, Word)> {
        if input.len() + 2 > space {
            return Err(Error::validation(format!(
                "space {space} is too small for an input of length {}",
                input.len()
            )));
        }
        let s = self.encode(&initial_configuration(&self.machine, input)?, space)?;
        let t = self.encode(&accepting_configuration(&self.machine, input.len())?, space)?;
        Ok((s, t))
    }
}

/// Shorthand: the 2-balanced symmetric simulation system of a machine.
pub fn tm_to_srs(m: &TuringMachine) -> Result<RewritingSystem> {
    ConfigEncoder::new(m)?.simulation_system()
}

/// Shorthand: the encoded endpoint pair of a machine on `input`.
pub fn make_endpoints(m: &TuringMachine, input: &Word, space: usize) -> Result<(Word, Word)> {
    ConfigEncoder::new(m)?.endpoints(input, space)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum NormalFormReport {
    /// Accepted in the normal-form configuration after this many steps.
    AcceptsInNormalForm(usize),
    Rejects,
    Loops,
    /// Accepted, but the halting configuration is not the normal form.
    AcceptsOffNormalForm(TmConfiguration),
}

impl NormalFormReport {
    pub fn accepts(&self) -> bool {
        matches!(self, NormalFormReport::AcceptsInNormalForm(_))
    }
}

/// Checks the accepting normal form on one input: static guard discipline,
/// then a full run; an accepting run must end in the cleared-tape
/// configuration with the head parked on the left marker.
pub fn validate_normal_form(
    m: &TuringMachine,
    input: &Word,
    max_steps: usize,
) -> Result<NormalFormReport> {
    m.check_static_guards()?;
    let (outcome, trace) = tm_run(m, input, max_steps)?;
    Ok(match outcome {
        RunOutcome::Accepts(config) => {
            if config == accepting_configuration(m, input.len())? {
                NormalFormReport::AcceptsInNormalForm(trace.len() - 1)
            } else {
                NormalFormReport::AcceptsOffNormalForm(config)
            }
        }
        RunOutcome::Rejects(_) => NormalFormReport::Rejects,
        RunOutcome::Loops => NormalFormReport::Loops,
    })
}

pub mod samples {
    //! Ready-made machines for demos and tests.

    use std::collections::BTreeMap;

    use super::{HeadMove, TuringMachine, BLANK, LEFT_MARKER, RIGHT_MARKER};
    use crate::alphabet::{Alphabet, Symbol};

    fn sym(s: &str) -> Symbol {
        Symbol::new(s)
    }

    fn alphabet(names: &[&str]) -> Alphabet {
        names.iter().map(|s| Symbol::new(s)).collect()
    }

    /// Walks right over the input blanking every cell, bounces off the
    /// right marker, returns to the left marker and accepts. In accepting
    /// normal form on every input over `_` and `a`.
    pub fn sweep_and_clear() -> TuringMachine {
        let mut delta = BTreeMap::new();
        delta.insert(
            (sym("q0"), sym(LEFT_MARKER)),
            (sym("q0"), sym(LEFT_MARKER), HeadMove::Right),
        );
        delta.insert((sym("q0"), sym("a")), (sym("q0"), sym(BLANK), HeadMove::Right));
        delta.insert((sym("q0"), sym(BLANK)), (sym("q0"), sym(BLANK), HeadMove::Right));
        delta.insert(
            (sym("q0"), sym(RIGHT_MARKER)),
            (sym("q1"), sym(RIGHT_MARKER), HeadMove::Left),
        );
        delta.insert((sym("q1"), sym(BLANK)), (sym("q1"), sym(BLANK), HeadMove::Left));
        delta.insert((sym("q1"), sym("a")), (sym("q1"), sym(BLANK), HeadMove::Left));
        delta.insert(
            (sym("q1"), sym(LEFT_MARKER)),
            (sym("qacc"), sym(LEFT_MARKER), HeadMove::Stay),
        );
        delta.insert(
            (sym("q1"), sym(RIGHT_MARKER)),
            (sym("q1"), sym(RIGHT_MARKER), HeadMove::Left),
        );
        TuringMachine {
            tape_alphabet: alphabet(&[LEFT_MARKER, RIGHT_MARKER, BLANK, "a"]),
            states: alphabet(&["q0", "q1", "qacc", "qrej"]),
            initial: sym("q0"),
            accepting: sym("qacc"),
            rejecting: sym("qrej"),
            delta,
        }
    }

    /// Accepts exactly the inputs over `a` of even length: sweeps right
    /// flipping a parity state while clearing, rejects on odd parity.
    pub fn even_length_checker() -> TuringMachine {
        let mut delta = BTreeMap::new();
        for (state, other) in [("q0", "q1"), ("q1", "q0")] {
            delta.insert(
                (sym(state), sym("a")),
                (sym(other), sym(BLANK), HeadMove::Right),
            );
            delta.insert(
                (sym(state), sym(BLANK)),
                (sym(state), sym(BLANK), HeadMove::Right),
            );
        }
        delta.insert(
            (sym("q0"), sym(LEFT_MARKER)),
            (sym("q0"), sym(LEFT_MARKER), HeadMove::Right),
        );
        delta.insert(
            (sym("q1"), sym(LEFT_MARKER)),
            (sym("q1"), sym(LEFT_MARKER), HeadMove::Right),
        );
        delta.insert(
            (sym("q0"), sym(RIGHT_MARKER)),
            (sym("qb"), sym(RIGHT_MARKER), HeadMove::Left),
        );
        delta.insert(
            (sym("q1"), sym(RIGHT_MARKER)),
            (sym("qrej"), sym(RIGHT_MARKER), HeadMove::Left),
        );
        // qb walks back to the left end and accepts
        delta.insert((sym("qb"), sym(BLANK)), (sym("qb"), sym(BLANK), HeadMove::Left));
        delta.insert((sym("qb"), sym("a")), (sym("qb"), sym(BLANK), HeadMove::Left));
        delta.insert(
            (sym("qb"), sym(LEFT_MARKER)),
            (sym("qacc"), sym(LEFT_MARKER), HeadMove::Stay),
        );
        delta.insert(
            (sym("qb"), sym(RIGHT_MARKER)),
            (sym("qb"), sym(RIGHT_MARKER), HeadMove::Left),
        );
        TuringMachine {
            tape_alphabet: alphabet(&[LEFT_MARKER, RIGHT_MARKER, BLANK, "a"]),
            states: alphabet(&["q0", "q1", "qb", "qacc", "qrej"]),
            initial: sym("q0"),
            accepting: sym("qacc"),
            rejecting: sym("qrej"),
            delta,
        }
    }
}
