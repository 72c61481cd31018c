// Licensed under the Apache License, Version 2.0 (the "License"); you may
// not use this file except in compliance with the License. You may obtain
// a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS, WITHOUT
// WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied. See the
// License for the specific language governing permissions and limitations
// under the License.

//! Sparse Pauli strings with an exact global phase.
//!
//! A [`PauliString`] stores only its non-identity letters, keyed by global
//! qubit id, together with a phase `i^k` for `k` in `0..4`. Multiplication
//! tracks the phase exactly, so sign relations between encoded operators can
//! be checked without any floating point.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::ops::Mul;
use std::str::FromStr;

use thiserror::Error;

pub type QubitId = u32;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Pauli {
    X,
    Y,
    Z,
}

impl Pauli {
    /// Product of two single-qubit letters: `(letter, phase exponent)`.
    /// `None` as letter means identity.
    fn mul(self, other: Pauli) -> (Option<Pauli>, u8) {
        use Pauli::*;
        match (self, other) {
            (X, X) | (Y, Y) | (Z, Z) => (None, 0),
            (X, Y) => (Some(Z), 1),
            (Y, X) => (Some(Z), 3),
            (Y, Z) => (Some(X), 1),
            (Z, Y) => (Some(X), 3),
            (Z, X) => (Some(Y), 1),
            (X, Z) => (Some(Y), 3),
        }
    }

    fn symbol(self) -> char {
        match self {
            Pauli::X => 'X',
            Pauli::Y => 'Y',
            Pauli::Z => 'Z',
        }
    }
}

/// Global phase `i^exponent`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub struct Phase(u8);

impl Phase {
    pub const ONE: Phase = Phase(0);
    pub const I: Phase = Phase(1);
    pub const MINUS_ONE: Phase = Phase(2);
    pub const MINUS_I: Phase = Phase(3);

    pub fn from_exponent(k: u32) -> Phase {
        Phase((k % 4) as u8)
    }

    pub fn exponent(self) -> u8 {
        self.0
    }

    pub fn is_real(self) -> bool {
        self.0 % 2 == 0
    }
}

impl Mul for Phase {
    type Output = Phase;
    fn mul(self, rhs: Phase) -> Phase {
        Phase((self.0 + rhs.0) % 4)
    }
}

impl fmt::Display for Phase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self.0 {
            0 => "+",
            1 => "+i",
            2 => "-",
            _ => "-i",
        })
    }
}

/// A Pauli string in canonical sparse form: identity letters are never stored.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct PauliString {
    phase: Phase,
    factors: BTreeMap<QubitId, Pauli>,
}

impl PauliString {
    pub fn identity() -> Self {
        Self::default()
    }

    pub fn single(qubit: QubitId, letter: Pauli) -> Self {
        Self {
            phase: Phase::ONE,
            factors: BTreeMap::from([(qubit, letter)]),
        }
    }

    /// Builds a string from `(qubit, letter)` pairs applied left to right, so
    /// repeated qubits are multiplied together with the correct phase.
    pub fn from_factors<I>(phase: Phase, factors: I) -> Self
    where
        I: IntoIterator<Item = (QubitId, Pauli)>,
    {
        let mut out = Self {
            phase,
            factors: BTreeMap::new(),
        };
        for (q, p) in factors {
            out.mul_letter_right(q, p);
        }
        out
    }

    pub fn phase(&self) -> Phase {
        self.phase
    }

    pub fn with_phase(mut self, phase: Phase) -> Self {
        self.phase = phase;
        self
    }

    pub fn scaled(mut self, phase: Phase) -> Self {
        self.phase = self.phase * phase;
        self
    }

    pub fn get(&self, qubit: QubitId) -> Option<Pauli> {
        self.factors.get(&qubit).copied()
    }

    pub fn factors(&self) -> impl Iterator<Item = (QubitId, Pauli)> + '_ {
        self.factors.iter().map(|(&q, &p)| (q, p))
    }

    pub fn weight(&self) -> usize {
        self.factors.len()
    }

    pub fn is_identity(&self) -> bool {
        self.factors.is_empty()
    }

    /// Qubits carrying a non-identity letter.
    pub fn support(&self) -> BTreeSet<QubitId> {
        self.factors.keys().copied().collect()
    }

    fn mul_letter_right(&mut self, qubit: QubitId, letter: Pauli) {
        match self.factors.get(&qubit).copied() {
            None => {
                self.factors.insert(qubit, letter);
            }
            Some(current) => {
                let (result, k) = current.mul(letter);
                self.phase = self.phase * Phase(k);
                match result {
                    Some(p) => {
                        self.factors.insert(qubit, p);
                    }
                    None => {
                        self.factors.remove(&qubit);
                    }
                }
            }
        }
    }

    /// Group product `self * rhs` with exact phase.
    pub fn multiply(&self, rhs: &PauliString) -> PauliString {
        let mut out = self.clone();
        out.phase = out.phase * rhs.phase;
        for (&q, &p) in &rhs.factors {
            out.mul_letter_right(q, p);
        }
        out
    }

    /// True iff the two strings commute: the number of qubits on which both
    /// act with different letters is even.
    pub fn commutes(&self, other: &PauliString) -> bool {
        let (small, large) = if self.factors.len() <= other.factors.len() {
            (self, other)
        } else {
            (other, self)
        };
        let anticommuting = small
            .factors
            .iter()
            .filter(|(q, p)| matches!(large.factors.get(q), Some(o) if o != *p))
            .count();
        anticommuting % 2 == 0
    }

    /// Same operator up to global phase.
    pub fn same_letters(&self, other: &PauliString) -> bool {
        self.factors == other.factors
    }
}

impl Mul for &PauliString {
    type Output = PauliString;
    fn mul(self, rhs: &PauliString) -> PauliString {
        self.multiply(rhs)
    }
}

impl Mul for PauliString {
    type Output = PauliString;
    fn mul(self, rhs: PauliString) -> PauliString {
        self.multiply(&rhs)
    }
}

/// Renders as `"<phase> <letter><qubit> ..."`, e.g. `"-i X3 Z7"`, with
/// qubits ascending. The identity renders as `"+ I"` (or `"-i I"` etc.).
impl fmt::Display for PauliString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.phase)?;
        if self.factors.is_empty() {
            return f.write_str(" I");
        }
        for (q, p) in &self.factors {
            write!(f, " {}{}", p.symbol(), q)?;
        }
        Ok(())
    }
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ParsePauliError {
    #[error("missing phase token")]
    MissingPhase,
    #[error("invalid phase token `{0}`")]
    BadPhase(String),
    #[error("invalid factor `{0}`")]
    BadFactor(String),
    #[error("qubit {0} appears more than once")]
    RepeatedQubit(QubitId),
}

impl FromStr for PauliString {
    type Err = ParsePauliError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let mut tokens = s.split_whitespace();
        let phase = match tokens.next().ok_or(ParsePauliError::MissingPhase)? {
            "+" => Phase::ONE,
            "+i" => Phase::I,
            "-" => Phase::MINUS_ONE,
            "-i" => Phase::MINUS_I,
            other => return Err(ParsePauliError::BadPhase(other.to_string())),
        };
        let mut factors = BTreeMap::new();
        for tok in tokens {
            if tok == "I" {
                continue;
            }
            let mut chars = tok.chars();
            let letter = match chars.next() {
                Some('X') => Pauli::X,
                Some('Y') => Pauli::Y,
                Some('Z') => Pauli::Z,
                _ => return Err(ParsePauliError::BadFactor(tok.to_string())),
            };
            let q: QubitId = chars
                .as_str()
                .parse()
                .map_err(|_| ParsePauliError::BadFactor(tok.to_string()))?;
            if factors.insert(q, letter).is_some() {
                return Err(ParsePauliError::RepeatedQubit(q));
            }
        }
        Ok(PauliString { phase, factors })
    }
}
