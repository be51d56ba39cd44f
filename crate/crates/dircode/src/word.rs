//! Direction words: parsing, compressed formatting, the symmetry group
//! (dihedral relabelings, reversal with inversion, cyclic shifts), orbits,
//! and canonical representatives.

use std::collections::BTreeSet;
use std::fmt;

use thiserror::Error;

/// One cardinal step. Declaration order fixes the letter order used for
/// lexicographic comparison: N < E < S < W.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Letter {
    N,
    E,
    S,
    W,
}

impl Letter {
    pub fn step(self) -> (i64, i64) {
        match self {
            Letter::N => (0, 1),
            Letter::E => (1, 0),
            Letter::S => (0, -1),
            Letter::W => (-1, 0),
        }
    }

    /// N <-> S, E <-> W.
    pub fn inverse(self) -> Letter {
        match self {
            Letter::N => Letter::S,
            Letter::S => Letter::N,
            Letter::E => Letter::W,
            Letter::W => Letter::E,
        }
    }

    pub fn char(self) -> char {
        match self {
            Letter::N => 'N',
            Letter::E => 'E',
            Letter::S => 'S',
            Letter::W => 'W',
        }
    }

    fn index(self) -> usize {
        match self {
            Letter::N => 0,
            Letter::E => 1,
            Letter::S => 2,
            Letter::W => 3,
        }
    }
}

pub const LETTERS: [Letter; 4] = [Letter::N, Letter::E, Letter::S, Letter::W];

#[derive(Debug, Error, PartialEq, Eq)]
pub enum WordError {
    #[error("empty word")]
    Empty,
    #[error("illegal character '{ch}' at position {pos}")]
    IllegalCharacter { ch: char, pos: usize },
    #[error("exponent 0 at position {pos}")]
    ZeroExponent { pos: usize },
    #[error("exponent with no preceding letter at position {pos}")]
    DanglingExponent { pos: usize },
    #[error("cyclic shift {shift} out of range for word of length {len}")]
    ShiftOutOfRange { shift: usize, len: usize },
}

/// A direction word: a nonempty sequence of cardinal steps.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct DirectionWord {
    letters: Vec<Letter>,
}

impl DirectionWord {
    pub fn new(letters: Vec<Letter>) -> Result<Self, WordError> {
        if letters.is_empty() {
            return Err(WordError::Empty);
        }
        Ok(DirectionWord { letters })
    }

    pub fn letters(&self) -> &[Letter] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// True iff the route returns to its starting point (step vectors sum
    /// to zero). Cyclic-shift equivalence is only geometrically justified
    /// for closed routes; callers applying shifts to open routes can use
    /// this to flag the situation.
    pub fn is_closed(&self) -> bool {
        let sum = self
            .letters
            .iter()
            .fold((0i64, 0i64), |(x, y), l| {
                let (dx, dy) = l.step();
                (x + dx, y + dy)
            });
        sum == (0, 0)
    }
}

impl fmt::Display for DirectionWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", format_word(self, true))
    }
}

impl std::str::FromStr for DirectionWord {
    type Err = WordError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        parse_word(s)
    }
}

/// Parse compressed word text. Grammar: (LETTER exponent?)+ with
/// LETTER in {N,E,S,W} and exponent a positive integer, optionally
/// preceded by '^'. Both "NE2N" and "NE^2N" are accepted.
pub fn parse_word(text: &str) -> Result<DirectionWord, WordError> {
    if text.is_empty() {
        return Err(WordError::Empty);
    }
    let mut letters = Vec::new();
    let chars: Vec<char> = text.chars().collect();
    let mut i = 0;
    while i < chars.len() {
        let ch = chars[i];
        let letter = match ch {
            'N' => Letter::N,
            'E' => Letter::E,
            'S' => Letter::S,
            'W' => Letter::W,
            '^' | '0'..='9' => return Err(WordError::DanglingExponent { pos: i }),
            other => return Err(WordError::IllegalCharacter { ch: other, pos: i }),
        };
        i += 1;
        let mut caret = false;
        if i < chars.len() && chars[i] == '^' {
            caret = true;
            i += 1;
        }
        let digits_start = i;
        while i < chars.len() && chars[i].is_ascii_digit() {
            i += 1;
        }
        if digits_start == i {
            if caret {
                // '^' must be followed by digits
                return Err(WordError::IllegalCharacter {
                    ch: '^',
                    pos: digits_start - 1,
                });
            }
            letters.push(letter);
        } else {
            let count: usize = chars[digits_start..i]
                .iter()
                .collect::<String>()
                .parse()
                .map_err(|_| WordError::IllegalCharacter {
                    ch: chars[digits_start],
                    pos: digits_start,
                })?;
            if count == 0 {
                return Err(WordError::ZeroExponent { pos: digits_start });
            }
            letters.extend(std::iter::repeat(letter).take(count));
        }
    }
    DirectionWord::new(letters)
}

/// Format a word; compressed form uses run-length exponents for runs >= 2.
pub fn format_word(w: &DirectionWord, compressed: bool) -> String {
    if !compressed {
        return w.letters.iter().map(|l| l.char()).collect();
    }
    let mut out = String::new();
    let mut iter = w.letters.iter().peekable();
    while let Some(&l) = iter.next() {
        let mut run = 1;
        while iter.peek() == Some(&&l) {
            iter.next();
            run += 1;
        }
        out.push(l.char());
        if run >= 2 {
            out.push_str(&run.to_string());
        }
    }
    out
}

/// One element of the word symmetry group: a cyclic shift, optional
/// reversal-with-inversion, then a dihedral letter permutation, applied in
/// that order.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SymmetryElement {
    pub dihedral: [Letter; 4],
    pub reversed: bool,
    pub shift: usize,
}

impl SymmetryElement {
    pub fn identity() -> Self {
        SymmetryElement {
            dihedral: LETTERS,
            reversed: false,
            shift: 0,
        }
    }
}

/// The eight square symmetries as permutations of {N,E,S,W}:
/// rotations by 0/90/180/270 degrees and their compositions with the
/// reflection fixing N,S and swapping E,W.
pub fn dihedral_elements() -> [[Letter; 4]; 8] {
    // 90-degree rotation: N -> E -> S -> W -> N
    let rot = |l: Letter| match l {
        Letter::N => Letter::E,
        Letter::E => Letter::S,
        Letter::S => Letter::W,
        Letter::W => Letter::N,
    };
    let refl = |l: Letter| match l {
        Letter::E => Letter::W,
        Letter::W => Letter::E,
        other => other,
    };
    let mut out = [[Letter::N; 4]; 8];
    for k in 0..4 {
        for flip in 0..2 {
            let mut perm = [Letter::N; 4];
            for (i, &l) in LETTERS.iter().enumerate() {
                let mut image = l;
                if flip == 1 {
                    image = refl(image);
                }
                for _ in 0..k {
                    image = rot(image);
                }
                perm[i] = image;
            }
            out[k * 2 + flip] = perm;
        }
    }
    out
}

/// Apply a symmetry element: cyclic shift first, then (if reversed)
/// reverse the sequence with letterwise inversion, then the dihedral
/// permutation.
pub fn apply_symmetry(w: &DirectionWord, g: &SymmetryElement) -> Result<DirectionWord, WordError> {
    if g.shift >= w.len() {
        return Err(WordError::ShiftOutOfRange {
            shift: g.shift,
            len: w.len(),
        });
    }
    let mut letters: Vec<Letter> = w.letters[g.shift..]
        .iter()
        .chain(&w.letters[..g.shift])
        .copied()
        .collect();
    if g.reversed {
        letters.reverse();
        for l in letters.iter_mut() {
            *l = l.inverse();
        }
    }
    for l in letters.iter_mut() {
        *l = g.dihedral[l.index()];
    }
    DirectionWord::new(letters)
}

/// All distinct words in the orbit of `w` under the group generated by the
/// eight dihedral relabelings, reversal-with-inversion, and (when
/// `include_cyclic`) all cyclic shifts. Size at most 16 * len.
pub fn word_orbit(w: &DirectionWord, include_cyclic: bool) -> BTreeSet<DirectionWord> {
    let shifts = if include_cyclic { w.len() } else { 1 };
    let mut orbit = BTreeSet::new();
    for shift in 0..shifts {
        for reversed in [false, true] {
            for dihedral in dihedral_elements() {
                let g = SymmetryElement {
                    dihedral,
                    reversed,
                    shift,
                };
                orbit.insert(apply_symmetry(w, &g).expect("shift in range"));
            }
        }
    }
    orbit
}

/// Orbit minimum under the fixed letter order N < E < S < W.
pub fn canonical_word(w: &DirectionWord, include_cyclic: bool) -> DirectionWord {
    word_orbit(w, include_cyclic)
        .into_iter()
        .next()
        .expect("orbit contains the word itself")
}
