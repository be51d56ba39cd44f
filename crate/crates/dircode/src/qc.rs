//! Quasi-cyclic reduction over the coarse ring
//! F2[u,v]/(u^a - 1, v^b - 1) with a = L_x/2, b = L_y/2: check vectors,
//! annihilator dimensions, the horizontal-sum identities, and closed-form
//! k predictions for the thin-rectangle family.

use serde::Serialize;
use thiserror::Error;

use crate::gf2::{BitMatrix, BitVec};
use crate::pattern::support_pattern;
use crate::word::DirectionWord;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum QcError {
    #[error("ring dimensions must be positive, got ({0}, {1})")]
    BadRing(usize, usize),
    #[error("ring mismatch: ({0}, {1}) vs ({2}, {3})")]
    RingMismatch(usize, usize, usize, usize),
    #[error("thin-rectangle side must be even, got {0}")]
    OddSide(u64),
}

/// The coarse ring R = F2[u,v]/(u^a - 1, v^b - 1).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct RingSpec {
    pub a: usize,
    pub b: usize,
}

impl RingSpec {
    pub fn new(a: usize, b: usize) -> Result<Self, QcError> {
        if a == 0 || b == 0 {
            return Err(QcError::BadRing(a, b));
        }
        Ok(RingSpec { a, b })
    }

    pub fn from_torus_sides(lx: i64, ly: i64) -> Result<Self, QcError> {
        if lx < 2 || ly < 2 || lx % 2 != 0 || ly % 2 != 0 {
            return Err(QcError::BadRing(lx.max(0) as usize / 2, ly.max(0) as usize / 2));
        }
        RingSpec::new((lx / 2) as usize, (ly / 2) as usize)
    }

    pub fn dim(&self) -> usize {
        self.a * self.b
    }
}

/// Dense element of R as an a x b coefficient grid; entry (i, j) is the
/// coefficient of u^i v^j.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RingElement {
    spec: RingSpec,
    coeffs: Vec<bool>,
}

impl RingElement {
    pub fn zero(spec: RingSpec) -> Self {
        RingElement {
            spec,
            coeffs: vec![false; spec.dim()],
        }
    }

    pub fn one(spec: RingSpec) -> Self {
        RingElement::monomial(spec, 0, 0)
    }

    /// u^i v^j with exponents reduced modulo (a, b).
    pub fn monomial(spec: RingSpec, i: i64, j: i64) -> Self {
        let mut e = RingElement::zero(spec);
        e.toggle(i, j);
        e
    }

    pub fn from_terms(spec: RingSpec, terms: &[(i64, i64)]) -> Self {
        let mut e = RingElement::zero(spec);
        for &(i, j) in terms {
            e.toggle(i, j);
        }
        e
    }

    pub fn spec(&self) -> RingSpec {
        self.spec
    }

    fn idx(&self, i: i64, j: i64) -> usize {
        let i = i.rem_euclid(self.spec.a as i64) as usize;
        let j = j.rem_euclid(self.spec.b as i64) as usize;
        i * self.spec.b + j
    }

    pub fn coeff(&self, i: i64, j: i64) -> bool {
        self.coeffs[self.idx(i, j)]
    }

    pub fn toggle(&mut self, i: i64, j: i64) {
        let idx = self.idx(i, j);
        self.coeffs[idx] = !self.coeffs[idx];
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|&c| !c)
    }

    pub fn add_assign(&mut self, other: &RingElement) {
        assert_eq!(self.spec, other.spec);
        for (c, o) in self.coeffs.iter_mut().zip(&other.coeffs) {
            *c ^= o;
        }
    }

    /// Supports as (u-exponent, v-exponent), sorted by (v, u) to match
    /// the textual form.
    pub fn terms(&self) -> Vec<(usize, usize)> {
        let mut out: Vec<(usize, usize)> = (0..self.spec.a)
            .flat_map(|i| (0..self.spec.b).map(move |j| (i, j)))
            .filter(|&(i, j)| self.coeffs[i * self.spec.b + j])
            .collect();
        out.sort_by_key(|&(i, j)| (j, i));
        out
    }

    /// Flat F2 coefficient vector, index i*b + j.
    pub fn to_bitvec(&self) -> BitVec {
        let mut v = BitVec::zeros(self.spec.dim());
        for (idx, &c) in self.coeffs.iter().enumerate() {
            if c {
                v.set(idx, true);
            }
        }
        v
    }
}

impl std::fmt::Display for RingElement {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let terms = self.terms();
        if terms.is_empty() {
            return write!(f, "0");
        }
        let mut parts = Vec::with_capacity(terms.len());
        for (i, j) in terms {
            let mut factors = Vec::new();
            match i {
                0 => {}
                1 => factors.push("u".to_string()),
                _ => factors.push(format!("u^{i}")),
            }
            match j {
                0 => {}
                1 => factors.push("v".to_string()),
                _ => factors.push(format!("v^{j}")),
            }
            if factors.is_empty() {
                parts.push("1".to_string());
            } else {
                parts.push(factors.join("*"));
            }
        }
        write!(f, "{}", parts.join(" + "))
    }
}

/// Naive cyclic convolution in R.
pub fn ring_mul(x: &RingElement, y: &RingElement) -> Result<RingElement, QcError> {
    if x.spec != y.spec {
        return Err(QcError::RingMismatch(x.spec.a, x.spec.b, y.spec.a, y.spec.b));
    }
    let spec = x.spec;
    let mut out = RingElement::zero(spec);
    for i in 0..spec.a {
        for j in 0..spec.b {
            if !x.coeffs[i * spec.b + j] {
                continue;
            }
            for p in 0..spec.a {
                for q in 0..spec.b {
                    if y.coeffs[p * spec.b + q] {
                        out.toggle((i + p) as i64, (j + q) as i64);
                    }
                }
            }
        }
    }
    Ok(out)
}

/// The horizontal sum S_u = 1 + u + ... + u^{a-1}.
pub fn su(spec: RingSpec) -> RingElement {
    let terms: Vec<(i64, i64)> = (0..spec.a as i64).map(|i| (i, 0)).collect();
    RingElement::from_terms(spec, &terms)
}

/// Two-component check vector (h0, h1) over R: h0 addresses the
/// even-even data class, h1 the odd-odd class.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QcVector {
    pub h0: RingElement,
    pub h1: RingElement,
}

/// QC check vectors of a word on the given ring: the X vector from the
/// base ancilla (1,0) and the Z vector from (0,1). Each offset Q of the
/// support pattern contributes one monomial, split by the parity of Q.
pub fn qc_check_vectors(w: &DirectionWord, spec: RingSpec) -> (QcVector, QcVector) {
    let mut x = QcVector {
        h0: RingElement::zero(spec),
        h1: RingElement::zero(spec),
    };
    let mut z = QcVector {
        h0: RingElement::zero(spec),
        h1: RingElement::zero(spec),
    };
    for &(qx, qy) in support_pattern(w).offsets() {
        debug_assert_eq!((qx + qy).rem_euclid(2), 1, "offsets reach data sites");
        if qx.rem_euclid(2) == 1 {
            // X target (1+qx, qy) is even-even; Z target (qx, 1+qy) is odd-odd
            x.h0.toggle((1 + qx).div_euclid(2), qy.div_euclid(2));
            z.h1.toggle((qx - 1).div_euclid(2), qy.div_euclid(2));
        } else {
            // X target is odd-odd; Z target is even-even
            x.h1.toggle(qx.div_euclid(2), (qy - 1).div_euclid(2));
            z.h0.toggle(qx.div_euclid(2), (1 + qy).div_euclid(2));
        }
    }
    (x, z)
}

/// Data-index support of the check row obtained by expanding the QC
/// vector at cell (i, j): coefficient (p, q) of m*h0 hits data index of
/// site (2p, 2q), of m*h1 the site (2p+1, 2q+1), on the torus (2a, 2b).
pub fn expanded_row(v: &QcVector, i: i64, j: i64) -> Result<Vec<usize>, QcError> {
    let spec = v.h0.spec();
    let m = RingElement::monomial(spec, i, j);
    let e0 = ring_mul(&m, &v.h0)?;
    let e1 = ring_mul(&m, &v.h1)?;
    let mut out: Vec<usize> = e0
        .terms()
        .into_iter()
        .map(|(p, q)| 2 * q * spec.a + p)
        .chain(e1.terms().into_iter().map(|(p, q)| (2 * q + 1) * spec.a + p))
        .collect();
    out.sort_unstable();
    Ok(out)
}

/// dim over F2 of {f in R : f*h0 = f*h1 = 0}, as the kernel dimension of
/// the stacked (a*b) x (2*a*b) multiplication matrix.
pub fn annihilator_dim(v: &QcVector) -> usize {
    let spec = v.h0.spec();
    let n = spec.dim();
    let mut rows = Vec::with_capacity(n);
    for i in 0..spec.a as i64 {
        for j in 0..spec.b as i64 {
            let m = RingElement::monomial(spec, i, j);
            let p0 = ring_mul(&m, &v.h0).expect("same ring");
            let p1 = ring_mul(&m, &v.h1).expect("same ring");
            let mut row = BitVec::zeros(2 * n);
            for (idx, &c) in p0.coeffs.iter().enumerate() {
                if c {
                    row.set(idx, true);
                }
            }
            for (idx, &c) in p1.coeffs.iter().enumerate() {
                if c {
                    row.set(n + idx, true);
                }
            }
            rows.push(row);
        }
    }
    let matrix = BitMatrix::from_rows(&rows);
    n - matrix.rank()
}

/// Closed-form logical dimension under row alternation:
/// dim Ann(x-vector) + dim Ann(z-vector).
pub fn predicted_k(w: &DirectionWord, spec: RingSpec) -> usize {
    let (x, z) = qc_check_vectors(w, spec);
    annihilator_dim(&x) + annihilator_dim(&z)
}

fn f2poly_deg(p: &[bool]) -> Option<usize> {
    p.iter().rposition(|&c| c)
}

/// Remainder of a modulo b in F2[v]; b must be nonzero.
fn f2poly_rem(a: &[bool], b: &[bool]) -> Vec<bool> {
    let db = f2poly_deg(b).expect("nonzero divisor");
    let mut r = a.to_vec();
    while let Some(dr) = f2poly_deg(&r) {
        if dr < db {
            break;
        }
        let shift = dr - db;
        for i in 0..=db {
            if b[i] {
                r[i + shift] = !r[i + shift];
            }
        }
    }
    r
}

/// Degree of gcd(1 + v + v^2, v^m - 1) over F2: 2 if 3 | m, else 0.
pub fn poly_gcd_degree(m: u64) -> u64 {
    assert!(m >= 1);
    // dense F2[v] polynomials, coefficient of v^i at index i
    let mut a = vec![false; m as usize + 1];
    a[0] = true;
    a[m as usize] = true;
    let mut b = vec![true, true, true];
    while f2poly_deg(&b).is_some() {
        let r = f2poly_rem(&a, &b);
        a = b;
        b = r;
    }
    f2poly_deg(&a).unwrap_or(0) as u64
}

/// Logical dimension of the case word NE2NE2N on the thin rectangle
/// (2d, d): 4 when 6 | d, otherwise 0.
pub fn collapse_k(d: u64) -> Result<u64, QcError> {
    if d % 2 != 0 {
        return Err(QcError::OddSide(d));
    }
    Ok(2 * poly_gcd_degree(d / 2))
}

/// Products S_u*h0 and S_u*h1 of a word's X vector, with the two
/// identities that hold for the case word on every ring.
#[derive(Debug, Clone)]
pub struct SuReductionReport {
    pub su_h0: RingElement,
    pub su_h1: RingElement,
    /// S_u * h0 = 0
    pub h0_annihilated: bool,
    /// S_u * h1 = S_u * (1 + v + v^2)
    pub h1_reduces: bool,
}

pub fn su_reduction_check(w: &DirectionWord, spec: RingSpec) -> SuReductionReport {
    let (x, _) = qc_check_vectors(w, spec);
    let s = su(spec);
    let su_h0 = ring_mul(&s, &x.h0).expect("same ring");
    let su_h1 = ring_mul(&s, &x.h1).expect("same ring");
    let target = ring_mul(
        &s,
        &RingElement::from_terms(spec, &[(0, 0), (0, 1), (0, 2)]),
    )
    .expect("same ring");
    SuReductionReport {
        h0_annihilated: su_h0.is_zero(),
        h1_reduces: su_h1 == target,
        su_h0,
        su_h1,
    }
}
