//! Exact n-qubit Pauli string algebra with phase tracking over {+1, +i, -1, -i},
//! plus dense matrix realizations and the two-qubit error basis.

use crate::linalg::{kron, CMat, ONE, ZERO};
use ndarray::array;
use num_complex::Complex64 as C64;
use std::fmt;
use std::str::FromStr;
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum PauliError {
    #[error("pauli strings have different lengths ({0} vs {1})")]
    LengthMismatch(usize, usize),
    #[error("cannot parse {0:?} as a pauli string")]
    Parse(String),
}

/// Single-qubit Pauli letter; the ordering `I < X < Y < Z` fixes the error
/// basis indexing used by every other module.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Pauli {
    I = 0,
    X = 1,
    Y = 2,
    Z = 3,
}

impl Pauli {
    pub const ALL: [Pauli; 4] = [Pauli::I, Pauli::X, Pauli::Y, Pauli::Z];

    pub fn index(self) -> usize {
        self as usize
    }

    pub fn from_index(i: usize) -> Pauli {
        Self::ALL[i]
    }

    pub fn symbol(self) -> char {
        match self {
            Pauli::I => 'I',
            Pauli::X => 'X',
            Pauli::Y => 'Y',
            Pauli::Z => 'Z',
        }
    }

    pub fn from_symbol(c: char) -> Option<Pauli> {
        match c {
            'I' => Some(Pauli::I),
            'X' => Some(Pauli::X),
            'Y' => Some(Pauli::Y),
            'Z' => Some(Pauli::Z),
            _ => None,
        }
    }

    pub fn matrix(self) -> CMat {
        let i = C64::new(0.0, 1.0);
        match self {
            Pauli::I => array![[ONE, ZERO], [ZERO, ONE]],
            Pauli::X => array![[ZERO, ONE], [ONE, ZERO]],
            Pauli::Y => array![[ZERO, -i], [i, ZERO]],
            Pauli::Z => array![[ONE, ZERO], [ZERO, -ONE]],
        }
    }

    /// Product of two letters as `(phase, letter)`, e.g. `X*Y = (+i, Z)`.
    pub fn mul(self, other: Pauli) -> (Phase, Pauli) {
        use Pauli::*;
        match (self, other) {
            (I, p) => (Phase::ONE, p),
            (p, I) => (Phase::ONE, p),
            (a, b) if a == b => (Phase::ONE, I),
            (X, Y) => (Phase::PLUS_I, Z),
            (Y, Z) => (Phase::PLUS_I, X),
            (Z, X) => (Phase::PLUS_I, Y),
            (Y, X) => (Phase::MINUS_I, Z),
            (Z, Y) => (Phase::MINUS_I, X),
            (X, Z) => (Phase::MINUS_I, Y),
            _ => unreachable!(),
        }
    }

    /// True when the two letters anticommute (both non-identity and distinct).
    pub fn anticommutes(self, other: Pauli) -> bool {
        self != Pauli::I && other != Pauli::I && self != other
    }
}

/// Power of `i`: the exact phase group {+1, +i, -1, -i}.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Phase(u8);

impl Phase {
    pub const ONE: Phase = Phase(0);
    pub const PLUS_I: Phase = Phase(1);
    pub const MINUS_ONE: Phase = Phase(2);
    pub const MINUS_I: Phase = Phase(3);

    pub fn mul(self, other: Phase) -> Phase {
        Phase((self.0 + other.0) % 4)
    }

    pub fn conj(self) -> Phase {
        Phase((4 - self.0) % 4)
    }

    pub fn to_c64(self) -> C64 {
        match self.0 {
            0 => C64::new(1.0, 0.0),
            1 => C64::new(0.0, 1.0),
            2 => C64::new(-1.0, 0.0),
            _ => C64::new(0.0, -1.0),
        }
    }

    pub fn is_real(self) -> bool {
        self.0 % 2 == 0
    }

    fn prefix(self) -> &'static str {
        match self.0 {
            0 => "+",
            1 => "+i",
            2 => "-",
            _ => "-i",
        }
    }
}

/// An n-qubit Pauli operator with explicit phase: `phase * P_1 ⊗ ... ⊗ P_n`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PauliString {
    pub phase: Phase,
    pub letters: Vec<Pauli>,
}

impl PauliString {
    pub fn new(phase: Phase, letters: Vec<Pauli>) -> PauliString {
        assert!(!letters.is_empty(), "pauli string needs at least one qubit");
        PauliString { phase, letters }
    }

    pub fn identity(n: usize) -> PauliString {
        PauliString::new(Phase::ONE, vec![Pauli::I; n])
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    /// Always false: strings carry at least one qubit by construction.
    pub fn is_empty(&self) -> bool {
        false
    }

    /// Exact product; phases accumulate per qubit.
    pub fn mul(&self, other: &PauliString) -> Result<PauliString, PauliError> {
        if self.len() != other.len() {
            return Err(PauliError::LengthMismatch(self.len(), other.len()));
        }
        let mut phase = self.phase.mul(other.phase);
        let mut letters = Vec::with_capacity(self.len());
        for (&a, &b) in self.letters.iter().zip(&other.letters) {
            let (p, c) = a.mul(b);
            phase = phase.mul(p);
            letters.push(c);
        }
        Ok(PauliString { phase, letters })
    }

    /// True iff `self * other == other * self`: even parity of anticommuting sites.
    pub fn commutes(&self, other: &PauliString) -> Result<bool, PauliError> {
        if self.len() != other.len() {
            return Err(PauliError::LengthMismatch(self.len(), other.len()));
        }
        let anti = self
            .letters
            .iter()
            .zip(&other.letters)
            .filter(|(&a, &b)| a.anticommutes(b))
            .count();
        Ok(anti % 2 == 0)
    }

    /// Dense `2^n x 2^n` matrix `phase * kron(letters)`.
    pub fn matrix(&self) -> CMat {
        let mut m = self.letters[0].matrix();
        for &p in &self.letters[1..] {
            m = kron(&m, &p.matrix());
        }
        m.mapv(|z| z * self.phase.to_c64())
    }

    /// Append identities on `extra` further qubits (error on P, identity on ancilla).
    pub fn extend_with_identity(&self, extra: usize) -> PauliString {
        let mut letters = self.letters.clone();
        letters.extend(std::iter::repeat_n(Pauli::I, extra));
        PauliString::new(self.phase, letters)
    }

    /// Phase-free copy.
    pub fn unphased(&self) -> PauliString {
        PauliString::new(Phase::ONE, self.letters.clone())
    }
}

impl fmt::Display for PauliString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.phase.prefix())?;
        for p in &self.letters {
            write!(f, "{}", p.symbol())?;
        }
        Ok(())
    }
}

impl FromStr for PauliString {
    type Err = PauliError;

    /// Parses the rendering produced by `Display`, e.g. `"+iIY"`, `"-ZX"`,
    /// `"XX"` (missing sign means `+`).
    fn from_str(s: &str) -> Result<PauliString, PauliError> {
        let err = || PauliError::Parse(s.to_string());
        let (phase, rest) = if let Some(r) = s.strip_prefix("+i") {
            (Phase::PLUS_I, r)
        } else if let Some(r) = s.strip_prefix("-i") {
            (Phase::MINUS_I, r)
        } else if let Some(r) = s.strip_prefix('+') {
            (Phase::ONE, r)
        } else if let Some(r) = s.strip_prefix('-') {
            (Phase::MINUS_ONE, r)
        } else {
            (Phase::ONE, s)
        };
        if rest.is_empty() {
            return Err(err());
        }
        let letters = rest
            .chars()
            .map(Pauli::from_symbol)
            .collect::<Option<Vec<_>>>()
            .ok_or_else(err)?;
        Ok(PauliString::new(phase, letters))
    }
}

/// The `4^n` phase-free Pauli strings in lexicographic order with `I<X<Y<Z`
/// and the leftmost qubit most significant: for n = 2 the indices run
/// `II, IX, IY, IZ, XI, ..., ZZ`.
pub fn error_basis(n: usize) -> Vec<PauliString> {
    assert!(n >= 1);
    let count = 4usize.pow(n as u32);
    (0..count)
        .map(|idx| {
            let mut letters = vec![Pauli::I; n];
            let mut rem = idx;
            for q in (0..n).rev() {
                letters[q] = Pauli::from_index(rem % 4);
                rem /= 4;
            }
            PauliString::new(Phase::ONE, letters)
        })
        .collect()
}

/// Index of a phase-free two-qubit string in [`error_basis`]`(2)`.
pub fn basis_index_2q(p: &PauliString) -> usize {
    debug_assert_eq!(p.len(), 2);
    p.letters[0].index() * 4 + p.letters[1].index()
}

/// Two-letter label (e.g. "IZ") of error-basis index `l`.
pub fn basis_label_2q(l: usize) -> String {
    let p1 = Pauli::from_index(l / 4);
    let p2 = Pauli::from_index(l % 4);
    format!("{}{}", p1.symbol(), p2.symbol())
}

/// Parse a two-letter label (e.g. "IZ") into its error-basis index.
pub fn basis_index_from_label(label: &str) -> Option<usize> {
    let mut chars = label.chars();
    let a = Pauli::from_symbol(chars.next()?)?;
    let b = Pauli::from_symbol(chars.next()?)?;
    if chars.next().is_some() {
        return None;
    }
    Some(a.index() * 4 + b.index())
}

/// Index of the two-qubit string with its letters interchanged.
pub fn swap_index_2q(l: usize) -> usize {
    (l % 4) * 4 + l / 4
}
