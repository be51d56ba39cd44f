//! Geometry of a direction word: support pattern, difference multiset,
//! odd-multiplicity difference lattice, coset labels, route realizability,
//! and the conservative torus admissibility bound.

use std::collections::{BTreeMap, BTreeSet};

use thiserror::Error;

use crate::word::{parse_word, DirectionWord, Letter, LETTERS};

pub type Vec2 = (i64, i64);

#[derive(Debug, Error, PartialEq, Eq)]
pub enum LatticeError {
    #[error("degenerate lattice (rank {0} < 2)")]
    Degenerate(usize),
    #[error("generator {0:?} has odd coordinate sum; lattice does not preserve the ancilla sublattice")]
    OddParityGenerator(Vec2),
}

/// Ordered offsets Q_1..Q_w of a word, relative to an ancilla anchor.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SupportPattern {
    offsets: Vec<Vec2>,
}

impl SupportPattern {
    pub fn offsets(&self) -> &[Vec2] {
        &self.offsets
    }

    pub fn word_length(&self) -> usize {
        self.offsets.len()
    }

    /// Distinct offsets as a set (can be smaller than the word length).
    pub fn offset_set(&self) -> BTreeSet<Vec2> {
        self.offsets.iter().copied().collect()
    }
}

/// Q_j = 2 * (d_1 + ... + d_{j-1}) + d_j, in route order.
pub fn support_pattern(w: &DirectionWord) -> SupportPattern {
    let mut prefix = (0i64, 0i64);
    let mut offsets = Vec::with_capacity(w.len());
    for letter in w.letters() {
        let (dx, dy) = letter.step();
        offsets.push((2 * prefix.0 + dx, 2 * prefix.1 + dy));
        prefix.0 += dx;
        prefix.1 += dy;
    }
    SupportPattern { offsets }
}

/// Pairwise differences Q_j - Q_i over index pairs i < j, with
/// multiplicities. Repeated offsets contribute the zero difference.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct DifferenceMultiset {
    entries: BTreeMap<Vec2, usize>,
}

impl DifferenceMultiset {
    pub fn entries(&self) -> &BTreeMap<Vec2, usize> {
        &self.entries
    }

    pub fn total(&self) -> usize {
        self.entries.values().sum()
    }

    pub fn multiplicity(&self, v: Vec2) -> usize {
        self.entries.get(&v).copied().unwrap_or(0)
    }
}

pub fn difference_multiset(p: &SupportPattern) -> DifferenceMultiset {
    let mut entries = BTreeMap::new();
    let q = p.offsets();
    for j in 1..q.len() {
        for i in 0..j {
            let v = (q[j].0 - q[i].0, q[j].1 - q[i].1);
            *entries.entry(v).or_insert(0) += 1;
        }
    }
    DifferenceMultiset { entries }
}

/// Keys with odd multiplicity.
pub fn odd_difference_set(d: &DifferenceMultiset) -> BTreeSet<Vec2> {
    d.entries
        .iter()
        .filter(|(_, &m)| m % 2 == 1)
        .map(|(&v, _)| v)
        .collect()
}

/// A rank <= 2 sublattice of Z^2 in Hermite normal form.
///
/// Rank-2 basis is {(a,0),(b,c)} with a > 0, c > 0, 0 <= b < a, which is
/// unique, so lattice comparison is plain equality. Rank-1 basis is a single
/// vector normalized to have positive x, or x = 0 and positive y.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntegerLattice {
    basis: Vec<Vec2>,
}

impl IntegerLattice {
    pub fn lattice_rank(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[Vec2] {
        &self.basis
    }

    /// |Z^2 : L| when rank 2.
    pub fn index(&self) -> Option<u64> {
        if self.basis.len() == 2 {
            let (a, _) = self.basis[0];
            let (_, c) = self.basis[1];
            Some((a * c).unsigned_abs())
        } else {
            None
        }
    }

    pub fn contains(&self, v: Vec2) -> bool {
        match self.basis.len() {
            0 => v == (0, 0),
            1 => {
                let (bx, by) = self.basis[0];
                // v = k * b for integer k
                if bx != 0 {
                    v.0 % bx == 0 && v.1 == (v.0 / bx) * by
                } else {
                    v.0 == 0 && v.1 % by == 0
                }
            }
            _ => self.reduce(v) == (0, 0),
        }
    }

    /// Canonical residue of a site modulo a rank-2 basis: result lies in
    /// [0,a) x [0,c). Two sites share a residue iff their difference is in
    /// the lattice.
    pub fn reduce(&self, site: Vec2) -> Vec2 {
        assert_eq!(self.basis.len(), 2, "reduce requires a rank-2 lattice");
        let (a, _) = self.basis[0];
        let (b, c) = self.basis[1];
        let k = site.1.div_euclid(c);
        let y = site.1 - k * c;
        let x = (site.0 - k * b).rem_euclid(a);
        (x, y)
    }
}

fn gcd(a: i64, b: i64) -> i64 {
    let (mut a, mut b) = (a.abs(), b.abs());
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

/// Hermite-normal-form lattice spanned by the given generators; zero
/// vectors are ignored.
pub fn lattice_from_generators<I: IntoIterator<Item = Vec2>>(gens: I) -> IntegerLattice {
    let mut gens: Vec<Vec2> = gens.into_iter().filter(|&v| v != (0, 0)).collect();
    if gens.is_empty() {
        return IntegerLattice { basis: vec![] };
    }
    // Reduce the y-components to a single carrier vector by the Euclidean
    // algorithm on pairs, keeping the lattice unchanged at every step.
    loop {
        gens.sort_by_key(|&(_, y)| (y == 0, y.abs()));
        if gens[0].1 == 0 {
            break; // all y-components are zero
        }
        let carrier = gens[0];
        let mut changed = false;
        for g in gens.iter_mut().skip(1) {
            if g.1 != 0 {
                let q = g.1.div_euclid(carrier.1);
                g.0 -= q * carrier.0;
                g.1 -= q * carrier.1;
                changed = true;
            }
        }
        if !changed {
            break;
        }
        gens.retain(|&v| v != (0, 0));
        if gens.len() == 1 {
            break;
        }
    }
    let carrier = if gens[0].1 != 0 { Some(gens[0]) } else { None };
    let horizontals: Vec<i64> = gens
        .iter()
        .skip(if carrier.is_some() { 1 } else { 0 })
        .map(|&(x, _)| x)
        .collect();
    let a = horizontals.iter().fold(0, |acc, &x| gcd(acc, x));
    match (carrier, a) {
        (None, a) => {
            debug_assert!(a != 0);
            IntegerLattice {
                basis: vec![(a.abs(), 0)],
            }
        }
        (Some((bx, by)), 0) => {
            // rank 1, non-horizontal: normalize sign
            let (bx, by) = if by < 0 || (by == 0 && bx < 0) {
                (-bx, -by)
            } else {
                (bx, by)
            };
            IntegerLattice {
                basis: vec![(bx, by)],
            }
        }
        (Some((bx, by)), a) => {
            let a = a.abs();
            let (bx, by) = if by < 0 { (-bx, -by) } else { (bx, by) };
            IntegerLattice {
                basis: vec![(a, 0), (bx.rem_euclid(a), by)],
            }
        }
    }
}

/// Number of ancilla cosets of a rank-2 lattice whose generators preserve
/// the checkerboard parity: index / 2.
pub fn ancilla_coset_count(l: &IntegerLattice) -> Result<u64, LatticeError> {
    if l.lattice_rank() < 2 {
        return Err(LatticeError::Degenerate(l.lattice_rank()));
    }
    for &v in l.basis() {
        if (v.0 + v.1).rem_euclid(2) != 0 {
            return Err(LatticeError::OddParityGenerator(v));
        }
    }
    Ok(l.index().expect("rank 2") / 2)
}

/// Canonical coset label of a site: its residue modulo the HNF basis.
pub fn coset_label(l: &IntegerLattice, site: Vec2) -> Result<Vec2, LatticeError> {
    if l.lattice_rank() < 2 {
        return Err(LatticeError::Degenerate(l.lattice_rank()));
    }
    Ok(l.reduce(site))
}

/// Sum of two cardinal steps: the alphabet of consecutive-offset
/// differences.
pub fn two_step_alphabet() -> BTreeSet<Vec2> {
    let mut out = BTreeSet::new();
    for a in LETTERS {
        for b in LETTERS {
            let (ax, ay) = a.step();
            let (bx, by) = b.step();
            out.insert((ax + bx, ay + by));
        }
    }
    out
}

/// Why a given offset ordering is not realizable by a single route.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum NotRealizable {
    /// Q_1 is not a cardinal unit step.
    FirstOffsetNotCardinal { offset: Vec2 },
    /// Q_{pos+1} - Q_pos is outside the two-step alphabet.
    GapOutsideAlphabet { position: usize, gap: Vec2 },
    /// The recursion d_{j+1} = (Q_{j+1} - Q_j) - d_j left the alphabet.
    RecursionLeavesAlphabet { position: usize, step: Vec2 },
    /// Exhaustive search over orderings found no witness.
    SearchExhausted,
    /// No element of the set is a cardinal unit step.
    NoCardinalFirstOffset,
}

impl std::fmt::Display for NotRealizable {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            NotRealizable::FirstOffsetNotCardinal { offset } => {
                write!(f, "first offset {offset:?} is not a cardinal step")
            }
            NotRealizable::GapOutsideAlphabet { position, gap } => write!(
                f,
                "difference {gap:?} at position {position} is not a sum of two cardinal steps"
            ),
            NotRealizable::RecursionLeavesAlphabet { position, step } => write!(
                f,
                "reconstruction produced non-cardinal step {step:?} at position {position}"
            ),
            NotRealizable::SearchExhausted => write!(f, "search exhausted: no valid ordering"),
            NotRealizable::NoCardinalFirstOffset => write!(f, "no cardinal first offset"),
        }
    }
}

fn letter_from_step(step: Vec2) -> Option<Letter> {
    LETTERS.iter().copied().find(|l| l.step() == step)
}

/// Reconstruct the unique word realizing the given offset ordering via
/// d_1 = Q_1, d_{j+1} = (Q_{j+1} - Q_j) - d_j; reports the first failing
/// condition otherwise.
pub fn reconstruct_word(offsets: &[Vec2]) -> Result<DirectionWord, NotRealizable> {
    let first = *offsets.first().ok_or(NotRealizable::SearchExhausted)?;
    let mut current = letter_from_step(first)
        .ok_or(NotRealizable::FirstOffsetNotCardinal { offset: first })?;
    let sigma = two_step_alphabet();
    let mut letters = vec![current];
    for j in 0..offsets.len() - 1 {
        let gap = (offsets[j + 1].0 - offsets[j].0, offsets[j + 1].1 - offsets[j].1);
        if !sigma.contains(&gap) {
            return Err(NotRealizable::GapOutsideAlphabet { position: j, gap });
        }
        let (cx, cy) = current.step();
        let step = (gap.0 - cx, gap.1 - cy);
        current = letter_from_step(step)
            .ok_or(NotRealizable::RecursionLeavesAlphabet { position: j + 1, step })?;
        letters.push(current);
    }
    Ok(DirectionWord::new(letters).expect("nonempty"))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Realizability {
    Realizable {
        word: DirectionWord,
        ordering: Vec<Vec2>,
    },
    NotRealizable(NotRealizable),
}

#[derive(Debug, Error, PartialEq, Eq)]
#[error("offset set of size {size} exceeds the search bound {bound}")]
pub struct SizeBoundExceeded {
    pub size: usize,
    pub bound: usize,
}

pub const DEFAULT_REALIZABILITY_BOUND: usize = 10;

/// Decide whether an offset set equals P(W) for some single word, by
/// depth-first search over orderings. Candidate first offsets are tried in
/// lexicographic order; extensions are pruned by the two-step alphabet and
/// the letter recursion.
pub fn is_realizable(
    offsets: &BTreeSet<Vec2>,
    bound: usize,
) -> Result<Realizability, SizeBoundExceeded> {
    if offsets.len() > bound {
        return Err(SizeBoundExceeded {
            size: offsets.len(),
            bound,
        });
    }
    let starts: Vec<Vec2> = offsets
        .iter()
        .copied()
        .filter(|&q| letter_from_step(q).is_some())
        .collect();
    if starts.is_empty() {
        return Ok(Realizability::NotRealizable(
            NotRealizable::NoCardinalFirstOffset,
        ));
    }
    let sigma = two_step_alphabet();
    for start in starts {
        let mut used = vec![start];
        let mut remaining: BTreeSet<Vec2> = offsets.clone();
        remaining.remove(&start);
        let first = letter_from_step(start).expect("filtered");
        if let Some(word) = dfs(&mut used, &mut remaining, first, &sigma) {
            let ordering = used.clone();
            return Ok(Realizability::Realizable { word, ordering });
        }
    }
    Ok(Realizability::NotRealizable(NotRealizable::SearchExhausted))
}

fn dfs(
    used: &mut Vec<Vec2>,
    remaining: &mut BTreeSet<Vec2>,
    last_letter: Letter,
    sigma: &BTreeSet<Vec2>,
) -> Option<DirectionWord> {
    if remaining.is_empty() {
        return reconstruct_word(used).ok();
    }
    let last = *used.last().expect("nonempty");
    let candidates: Vec<Vec2> = remaining
        .iter()
        .copied()
        .filter(|&q| sigma.contains(&(q.0 - last.0, q.1 - last.1)))
        .collect();
    for q in candidates {
        let gap = (q.0 - last.0, q.1 - last.1);
        let (lx, ly) = last_letter.step();
        let step = (gap.0 - lx, gap.1 - ly);
        let Some(next_letter) = letter_from_step(step) else {
            continue;
        };
        used.push(q);
        remaining.remove(&q);
        if let Some(word) = dfs(used, remaining, next_letter, sigma) {
            return Some(word);
        }
        remaining.insert(q);
        used.pop();
    }
    None
}

/// Smallest even (L_x, L_y) such that no nonzero element of
/// D(W) or D(W) +- D(W) vanishes modulo the torus, where
/// D(W) = {+-(Q_j - Q_i)}.
pub fn admissible_rectangle_bound(p: &SupportPattern) -> (u64, u64) {
    let q = p.offsets();
    let mut d: BTreeSet<Vec2> = BTreeSet::new();
    for j in 1..q.len() {
        for i in 0..j {
            let v = (q[j].0 - q[i].0, q[j].1 - q[i].1);
            d.insert(v);
            d.insert((-v.0, -v.1));
        }
    }
    let mut all: BTreeSet<Vec2> = d.clone();
    for &a in &d {
        for &b in &d {
            all.insert((a.0 + b.0, a.1 + b.1));
            all.insert((a.0 - b.0, a.1 - b.1));
        }
    }
    let max_x = all.iter().map(|v| v.0.unsigned_abs()).max().unwrap_or(0);
    let max_y = all.iter().map(|v| v.1.unsigned_abs()).max().unwrap_or(0);
    let next_even_above = |m: u64| {
        let candidate = m + 1;
        if candidate % 2 == 0 {
            candidate
        } else {
            candidate + 1
        }
    };
    (next_even_above(max_x), next_even_above(max_y))
}

/// Convenience: P(W), its odd-difference set, and L(W) for a word.
pub fn odd_difference_lattice(w: &DirectionWord) -> (BTreeSet<Vec2>, IntegerLattice) {
    let p = support_pattern(w);
    let odd = odd_difference_set(&difference_multiset(&p));
    let lattice = lattice_from_generators(odd.iter().copied());
    (odd, lattice)
}

/// Parse helper used by tests and the CLI examples.
pub fn pattern_of(text: &str) -> SupportPattern {
    support_pattern(&parse_word(text).expect("valid word"))
}
