//! Checkerboard torus, layouts, check-matrix construction, exact code
//! parameters with a small-weight distance screen, and the explicit
//! dependency / commuting-motif certificates for the structured torus
//! family.

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::gf2::{BitMatrix, BitVec, RowSpace};
use crate::pattern::{ancilla_coset_count, support_pattern, IntegerLattice, Vec2};
use crate::word::{format_word, DirectionWord};
use crate::ExecMode;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum TorusError {
    #[error("torus dimensions must be even and >= 2, got {0}x{1}")]
    BadDimensions(i64, i64),
    #[error("site {0:?} is not a data site")]
    NotDataSite(Vec2),
    #[error("site {0:?} is not an ancilla site")]
    NotAncillaSite(Vec2),
    #[error("lattice is incompatible with the torus: {0}")]
    IncompatibleLattice(String),
    #[error("wrap-around collision: anchor {anchor:?} reaches only {distinct} of {expected} targets")]
    WrapCollision {
        anchor: Vec2,
        distinct: usize,
        expected: usize,
    },
    #[error("instance does not commute (H_X H_Z^T != 0)")]
    NonCommuting,
    #[error("layout is not coset-constant")]
    NotCosetConstant,
}

/// The torus Z_Lx x Z_Ly with even sides; data qubits on even-parity
/// sites, ancillas on odd-parity sites.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CheckerboardTorus {
    lx: i64,
    ly: i64,
}

impl CheckerboardTorus {
    pub fn new(lx: i64, ly: i64) -> Result<Self, TorusError> {
        if lx < 2 || ly < 2 || lx % 2 != 0 || ly % 2 != 0 {
            return Err(TorusError::BadDimensions(lx, ly));
        }
        Ok(CheckerboardTorus { lx, ly })
    }

    pub fn lx(&self) -> i64 {
        self.lx
    }

    pub fn ly(&self) -> i64 {
        self.ly
    }

    /// Data-qubit count, n = Lx * Ly / 2.
    pub fn n(&self) -> usize {
        (self.lx * self.ly / 2) as usize
    }

    pub fn reduce(&self, site: Vec2) -> Vec2 {
        (site.0.rem_euclid(self.lx), site.1.rem_euclid(self.ly))
    }

    pub fn is_data(&self, site: Vec2) -> bool {
        let (x, y) = self.reduce(site);
        (x + y) % 2 == 0
    }

    pub fn is_ancilla(&self, site: Vec2) -> bool {
        !self.is_data(site)
    }

    /// Lexicographic index of a data site: loop y outer, x inner, counting
    /// only even-parity sites.
    pub fn data_index(&self, site: Vec2) -> Result<usize, TorusError> {
        let (x, y) = self.reduce(site);
        if (x + y) % 2 != 0 {
            return Err(TorusError::NotDataSite(site));
        }
        Ok((y * (self.lx / 2) + x / 2) as usize)
    }

    pub fn ancilla_index(&self, site: Vec2) -> Result<usize, TorusError> {
        let (x, y) = self.reduce(site);
        if (x + y) % 2 != 1 {
            return Err(TorusError::NotAncillaSite(site));
        }
        Ok((y * (self.lx / 2) + x / 2) as usize)
    }

    pub fn data_sites(&self) -> Vec<Vec2> {
        self.sites_with_parity(0)
    }

    pub fn ancilla_sites(&self) -> Vec<Vec2> {
        self.sites_with_parity(1)
    }

    fn sites_with_parity(&self, parity: i64) -> Vec<Vec2> {
        let mut out = Vec::with_capacity(self.n());
        for y in 0..self.ly {
            for x in 0..self.lx {
                if (x + y) % 2 == parity {
                    out.push((x, y));
                }
            }
        }
        out
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub enum CheckType {
    X,
    Z,
}

impl CheckType {
    pub fn flipped(self) -> CheckType {
        match self {
            CheckType::X => CheckType::Z,
            CheckType::Z => CheckType::X,
        }
    }

    pub fn char(self) -> char {
        match self {
            CheckType::X => 'X',
            CheckType::Z => 'Z',
        }
    }
}

/// Assignment of each ancilla site to an X- or Z-check.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Layout {
    /// Ancillas with even y measure X, odd y measure Z.
    RowAlternating,
    /// Constant on each coset of the given lattice; `labels` pairs each
    /// coset label (sorted) with its check type.
    CosetConstant {
        lattice: IntegerLattice,
        labels: Vec<(Vec2, CheckType)>,
    },
    /// Arbitrary per-site assignment; used for deliberately broken layouts
    /// in negative tests, not produced by the enumerators.
    Explicit(BTreeMap<Vec2, CheckType>),
}

impl Layout {
    pub fn check_type(&self, t: &CheckerboardTorus, site: Vec2) -> Result<CheckType, TorusError> {
        let reduced = t.reduce(site);
        if !t.is_ancilla(reduced) {
            return Err(TorusError::NotAncillaSite(site));
        }
        match self {
            Layout::RowAlternating => Ok(if reduced.1 % 2 == 0 {
                CheckType::X
            } else {
                CheckType::Z
            }),
            Layout::CosetConstant { lattice, labels } => {
                let label = lattice.reduce(reduced);
                labels
                    .iter()
                    .find(|(l, _)| *l == label)
                    .map(|(_, ty)| *ty)
                    .ok_or_else(|| {
                        TorusError::IncompatibleLattice(format!("unlabeled coset {label:?}"))
                    })
            }
            Layout::Explicit(map) => map
                .get(&reduced)
                .copied()
                .ok_or(TorusError::NotAncillaSite(site)),
        }
    }

    pub fn descriptor(&self) -> String {
        match self {
            Layout::RowAlternating => "row-alt".to_string(),
            Layout::CosetConstant { labels, .. } => {
                let bits: String = labels.iter().map(|(_, ty)| ty.char()).collect();
                format!("coset:{bits}")
            }
            Layout::Explicit(_) => "explicit".to_string(),
        }
    }

    /// Copy of this layout with one ancilla site's type flipped. The
    /// result is generally not coset-constant; it exists for negative
    /// commutation tests.
    pub fn with_flipped_site(
        &self,
        t: &CheckerboardTorus,
        site: Vec2,
    ) -> Result<Layout, TorusError> {
        let mut map = BTreeMap::new();
        for a in t.ancilla_sites() {
            map.insert(a, self.check_type(t, a)?);
        }
        let reduced = t.reduce(site);
        let entry = map
            .get_mut(&reduced)
            .ok_or(TorusError::NotAncillaSite(site))?;
        *entry = entry.flipped();
        Ok(Layout::Explicit(map))
    }
}

pub fn row_alternating_layout(_t: &CheckerboardTorus) -> Layout {
    Layout::RowAlternating
}

/// Sorted distinct coset labels of the torus's ancilla sites, after
/// checking lattice/torus compatibility.
pub fn ancilla_labels(
    t: &CheckerboardTorus,
    l: &IntegerLattice,
) -> Result<Vec<Vec2>, TorusError> {
    let c = ancilla_coset_count(l)
        .map_err(|e| TorusError::IncompatibleLattice(e.to_string()))?;
    if !l.contains((t.lx, 0)) || !l.contains((0, t.ly)) {
        return Err(TorusError::IncompatibleLattice(format!(
            "torus vectors ({},0),(0,{}) are not both in the lattice",
            t.lx, t.ly
        )));
    }
    let labels: BTreeSet<Vec2> = t
        .ancilla_sites()
        .into_iter()
        .map(|site| l.reduce(site))
        .collect();
    if labels.len() as u64 != c {
        return Err(TorusError::IncompatibleLattice(format!(
            "{} coset labels on the torus, expected {c}",
            labels.len()
        )));
    }
    Ok(labels.into_iter().collect())
}

/// All coset-constant layouts on the torus, one per labeling of the c
/// cosets, quotiented by the global X<->Z swap: the first coset is always
/// X, giving 2^(c-1) layouts.
pub fn enumerate_coset_layouts(
    t: &CheckerboardTorus,
    l: &IntegerLattice,
) -> Result<Vec<Layout>, TorusError> {
    let labels = ancilla_labels(t, l)?;
    let c = labels.len();
    let mut out = Vec::with_capacity(1 << (c - 1));
    for mask in 0u64..(1 << (c - 1)) {
        let mut assignment = Vec::with_capacity(c);
        for (i, &label) in labels.iter().enumerate() {
            let ty = if i == 0 {
                CheckType::X
            } else if (mask >> (i - 1)) & 1 == 1 {
                CheckType::Z
            } else {
                CheckType::X
            };
            assignment.push((label, ty));
        }
        out.push(Layout::CosetConstant {
            lattice: l.clone(),
            labels: assignment,
        });
    }
    Ok(out)
}

/// The distinct permutations of the sorted coset labels induced by even
/// translations of the torus.
pub fn translation_coset_permutations(
    t: &CheckerboardTorus,
    l: &IntegerLattice,
) -> Result<Vec<Vec<usize>>, TorusError> {
    let labels = ancilla_labels(t, l)?;
    let position: BTreeMap<Vec2, usize> = labels
        .iter()
        .enumerate()
        .map(|(i, &lab)| (lab, i))
        .collect();
    let mut perms = BTreeSet::new();
    for i in 0..t.lx / 2 {
        for j in 0..t.ly / 2 {
            let tau = (2 * i, 2 * j);
            let perm: Vec<usize> = labels
                .iter()
                .map(|&lab| position[&l.reduce((lab.0 + tau.0, lab.1 + tau.1))])
                .collect();
            perms.insert(perm);
        }
    }
    Ok(perms.into_iter().collect())
}

/// Orbit minimum of a coset-constant layout under translation-induced
/// coset permutations, with the global flip fixing the first coset to X.
pub fn canonical_layout(lay: &Layout, perms: &[Vec<usize>]) -> Result<Layout, TorusError> {
    let Layout::CosetConstant { lattice, labels } = lay else {
        return Err(TorusError::NotCosetConstant);
    };
    let bits: Vec<CheckType> = labels.iter().map(|(_, ty)| *ty).collect();
    let mut best: Option<Vec<CheckType>> = None;
    let identity: Vec<usize> = (0..bits.len()).collect();
    for perm in perms.iter().chain(std::iter::once(&identity)) {
        let mut permuted: Vec<CheckType> = perm.iter().map(|&p| bits[p]).collect();
        if permuted[0] != CheckType::X {
            for b in permuted.iter_mut() {
                *b = b.flipped();
            }
        }
        if best.as_ref().is_none_or(|b| permuted < *b) {
            best = Some(permuted);
        }
    }
    let best = best.expect("identity always considered");
    Ok(Layout::CosetConstant {
        lattice: lattice.clone(),
        labels: labels
            .iter()
            .zip(best)
            .map(|(&(lab, _), ty)| (lab, ty))
            .collect(),
    })
}

/// A (word, torus, layout) triple realized as explicit H_X, H_Z.
#[derive(Debug, Clone)]
pub struct CodeInstance {
    word: DirectionWord,
    torus: CheckerboardTorus,
    layout: Layout,
    h_x: BitMatrix,
    h_z: BitMatrix,
    x_anchors: Vec<Vec2>,
    z_anchors: Vec<Vec2>,
}

/// Distance screen outcome for one Pauli type.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum DistanceResult {
    Exact(usize),
    GreaterThan(usize),
    /// k = 0: there are no logical operators.
    NotDefined,
}

impl DistanceResult {
    /// Lower bound implied by the result; used as a sort key.
    pub fn lower_bound(&self) -> usize {
        match self {
            DistanceResult::Exact(d) => *d,
            DistanceResult::GreaterThan(c) => c + 1,
            DistanceResult::NotDefined => 0,
        }
    }
}

impl std::fmt::Display for DistanceResult {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            DistanceResult::Exact(d) => write!(f, "{d}"),
            DistanceResult::GreaterThan(c) => write!(f, ">{c}"),
            DistanceResult::NotDefined => write!(f, "-"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CodeParameters {
    pub n: usize,
    pub k: usize,
    pub d_x: DistanceResult,
    pub d_z: DistanceResult,
}

pub fn build_code(
    w: &DirectionWord,
    t: &CheckerboardTorus,
    lay: &Layout,
) -> Result<CodeInstance, TorusError> {
    build_code_opts(w, t, lay, false)
}

/// With `strict_wrap`, reject anchors whose translated support collapses
/// modulo the torus.
pub fn build_code_opts(
    w: &DirectionWord,
    t: &CheckerboardTorus,
    lay: &Layout,
    strict_wrap: bool,
) -> Result<CodeInstance, TorusError> {
    let pattern = support_pattern(w);
    let n = t.n();
    let mut x_rows = Vec::new();
    let mut z_rows = Vec::new();
    let mut x_anchors = Vec::new();
    let mut z_anchors = Vec::new();
    for anchor in t.ancilla_sites() {
        let mut row = BitVec::zeros(n);
        let mut targets = BTreeSet::new();
        for &(qx, qy) in pattern.offsets() {
            let site = t.reduce((anchor.0 + qx, anchor.1 + qy));
            targets.insert(site);
            row.toggle(t.data_index(site)?);
        }
        if strict_wrap && targets.len() < pattern.word_length() {
            return Err(TorusError::WrapCollision {
                anchor,
                distinct: targets.len(),
                expected: pattern.word_length(),
            });
        }
        match lay.check_type(t, anchor)? {
            CheckType::X => {
                x_rows.push(row);
                x_anchors.push(anchor);
            }
            CheckType::Z => {
                z_rows.push(row);
                z_anchors.push(anchor);
            }
        }
    }
    let h_x = if x_rows.is_empty() {
        BitMatrix::zeros(0, n)
    } else {
        BitMatrix::from_rows(&x_rows)
    };
    let h_z = if z_rows.is_empty() {
        BitMatrix::zeros(0, n)
    } else {
        BitMatrix::from_rows(&z_rows)
    };
    Ok(CodeInstance {
        word: w.clone(),
        torus: *t,
        layout: lay.clone(),
        h_x,
        h_z,
        x_anchors,
        z_anchors,
    })
}

impl CodeInstance {
    pub fn word(&self) -> &DirectionWord {
        &self.word
    }

    pub fn torus(&self) -> &CheckerboardTorus {
        &self.torus
    }

    pub fn layout(&self) -> &Layout {
        &self.layout
    }

    pub fn h_x(&self) -> &BitMatrix {
        &self.h_x
    }

    pub fn h_z(&self) -> &BitMatrix {
        &self.h_z
    }

    pub fn x_anchors(&self) -> &[Vec2] {
        &self.x_anchors
    }

    pub fn z_anchors(&self) -> &[Vec2] {
        &self.z_anchors
    }

    pub fn n(&self) -> usize {
        self.torus.n()
    }

    pub fn verify_commutation(&self) -> bool {
        if self.h_x.rows() == 0 || self.h_z.rows() == 0 {
            return true;
        }
        self.h_x
            .mul_mod2(&self.h_z.transpose())
            .expect("shapes agree")
            .is_zero()
    }

    pub fn code_parameters(&self, w_max: usize) -> Result<CodeParameters, TorusError> {
        self.code_parameters_mode(w_max, ExecMode::default())
    }

    pub fn code_parameters_mode(
        &self,
        w_max: usize,
        mode: ExecMode,
    ) -> Result<CodeParameters, TorusError> {
        if !self.verify_commutation() {
            return Err(TorusError::NonCommuting);
        }
        let n = self.n();
        let rx = self.h_x.rank();
        let rz = self.h_z.rank();
        let k = n - rx - rz;
        // dependency-count cross-check
        let k_deps = self.h_x.left_kernel_dim() + self.h_z.left_kernel_dim()
            + (n - self.h_x.rows() - self.h_z.rows());
        assert_eq!(k, k_deps, "rank and left-kernel routes disagree");
        if k == 0 {
            return Ok(CodeParameters {
                n,
                k,
                d_x: DistanceResult::NotDefined,
                d_z: DistanceResult::NotDefined,
            });
        }
        let d_x = distance_screen(&self.h_z, &self.h_x, n, w_max, mode);
        let d_z = distance_screen(&self.h_x, &self.h_z, n, w_max, mode);
        Ok(CodeParameters { n, k, d_x, d_z })
    }

    /// JSON shape used by the `build` subcommand: word text, torus sides,
    /// layout descriptor, and both matrices as per-row sorted column
    /// indices.
    pub fn to_json(&self) -> serde_json::Value {
        let rows_of = |m: &BitMatrix| -> Vec<Vec<usize>> {
            (0..m.rows()).map(|r| m.row(r).support()).collect()
        };
        serde_json::json!({
            "word": format_word(&self.word, true),
            "lx": self.torus.lx,
            "ly": self.torus.ly,
            "layout": self.layout.descriptor(),
            "h_x": rows_of(&self.h_x),
            "h_z": rows_of(&self.h_z),
        })
    }
}

/// Minimum weight of a vector in ker(stabilizer) outside row(logical_side),
/// searched over all supports of weight 1..=w_max.
fn distance_screen(
    stabilizer: &BitMatrix,
    same_side: &BitMatrix,
    n: usize,
    w_max: usize,
    mode: ExecMode,
) -> DistanceResult {
    let cols: Vec<BitVec> = (0..n).map(|c| stabilizer.column(c)).collect();
    let rowspace = RowSpace::new(same_side);
    for weight in 1..=w_max {
        let found = match mode {
            ExecMode::Sequential => {
                (0..n).any(|first| search_from(&cols, &rowspace, n, first, weight))
            }
            #[cfg(feature = "parallel")]
            ExecMode::Parallel => {
                use rayon::prelude::*;
                (0..n)
                    .into_par_iter()
                    .any(|first| search_from(&cols, &rowspace, n, first, weight))
            }
        };
        if found {
            return DistanceResult::Exact(weight);
        }
    }
    DistanceResult::GreaterThan(w_max)
}

fn search_from(
    cols: &[BitVec],
    rowspace: &RowSpace,
    n: usize,
    first: usize,
    weight: usize,
) -> bool {
    if first + weight > n {
        return false;
    }
    let mut syndrome = cols[first].clone();
    let mut support = vec![first];
    extend(cols, rowspace, n, &mut syndrome, &mut support, weight - 1)
}

fn extend(
    cols: &[BitVec],
    rowspace: &RowSpace,
    n: usize,
    syndrome: &mut BitVec,
    support: &mut Vec<usize>,
    remaining: usize,
) -> bool {
    if remaining == 0 {
        if !syndrome.is_zero() {
            return false;
        }
        let v = BitVec::from_support(n, support);
        return !rowspace.contains(&v);
    }
    let start = support.last().copied().unwrap_or(0) + 1;
    for next in start..=(n - remaining) {
        syndrome.xor_assign(&cols[next]);
        support.push(next);
        if extend(cols, rowspace, n, syndrome, support, remaining - 1) {
            return true;
        }
        support.pop();
        syndrome.xor_assign(&cols[next]);
    }
    false
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum CertificateError {
    #[error("certificate requires the row-alternating layout")]
    NotRowAlternating,
    #[error("certificate requires 6 | L_y (got L_y = {0})")]
    HeightNotMultipleOfSix(i64),
    #[error("word does not have the even-count residue property for anchor classes {0:?}")]
    ResidueProperty(Vec<i64>),
    #[error("relation over anchor classes {0:?} does not sum to zero")]
    RelationFailed(Vec<i64>),
}

/// Explicit zero-sum check-row sets: two X-relations and two Z-relations
/// built from anchor-row residue classes modulo 6.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DependencyCertificate {
    /// Row-index sets into H_X, each verified to sum to the zero row.
    pub x_relations: Vec<Vec<usize>>,
    /// Row-index sets into H_Z, likewise verified.
    pub z_relations: Vec<Vec<usize>>,
}

/// Build and verify the residue-class dependency certificate on a
/// row-alternating instance with 6 | L_y. The anchor classes are
/// y = 0 or 2 (mod 6) and y = 0 or 4 (mod 6) for X, and the odd
/// counterparts y = 1 or 3, y = 1 or 5 for Z.
pub fn dependency_certificate(c: &CodeInstance) -> Result<DependencyCertificate, CertificateError> {
    if c.layout != Layout::RowAlternating {
        return Err(CertificateError::NotRowAlternating);
    }
    let ly = c.torus.ly();
    if ly % 6 != 0 {
        return Err(CertificateError::HeightNotMultipleOfSix(ly));
    }
    // residue counts of the offset y-coordinates mod 6
    let mut counts = [0usize; 6];
    for &(_, qy) in support_pattern(&c.word).offsets() {
        counts[qy.rem_euclid(6) as usize] += 1;
    }
    let class_sets: [(&[i64], CheckType); 4] = [
        (&[0, 2], CheckType::X),
        (&[0, 4], CheckType::X),
        (&[1, 3], CheckType::Z),
        (&[1, 5], CheckType::Z),
    ];
    // even-count property: every data row must be covered an even number
    // of times by anchors in the class
    for (classes, _) in &class_sets {
        for y in 0..6i64 {
            let hits: usize = classes
                .iter()
                .map(|&cl| counts[(y - cl).rem_euclid(6) as usize])
                .sum();
            if hits % 2 != 0 {
                return Err(CertificateError::ResidueProperty(classes.to_vec()));
            }
        }
    }
    let mut x_relations = Vec::new();
    let mut z_relations = Vec::new();
    for (classes, ty) in class_sets {
        let (anchors, matrix) = match ty {
            CheckType::X => (&c.x_anchors, &c.h_x),
            CheckType::Z => (&c.z_anchors, &c.h_z),
        };
        let rows: Vec<usize> = anchors
            .iter()
            .enumerate()
            .filter(|(_, a)| classes.contains(&a.1.rem_euclid(6)))
            .map(|(i, _)| i)
            .collect();
        let mut acc = BitVec::zeros(c.n());
        for &r in &rows {
            acc.xor_assign(&matrix.row(r));
        }
        if !acc.is_zero() {
            return Err(CertificateError::RelationFailed(classes.to_vec()));
        }
        match ty {
            CheckType::X => x_relations.push(rows),
            CheckType::Z => z_relations.push(rows),
        }
    }
    debug_assert_ne!(x_relations[0], x_relations[1]);
    debug_assert_ne!(z_relations[0], z_relations[1]);
    Ok(DependencyCertificate {
        x_relations,
        z_relations,
    })
}

/// Data support {p + j t, p + r + j t : j = 0..m-1} on the torus.
pub fn motif_operator(
    t: &CheckerboardTorus,
    p: Vec2,
    r: Vec2,
    tvec: Vec2,
    m: usize,
) -> Result<BTreeSet<Vec2>, TorusError> {
    let mut support = BTreeSet::new();
    for j in 0..m as i64 {
        for base in [p, (p.0 + r.0, p.1 + r.1)] {
            let site = t.reduce((base.0 + j * tvec.0, base.1 + j * tvec.1));
            if !t.is_data(site) {
                return Err(TorusError::NotDataSite(site));
            }
            support.insert(site);
        }
    }
    Ok(support)
}

/// True iff an operator of the given type on the given data support
/// commutes with every opposite-type check.
pub fn motif_commutes(
    c: &CodeInstance,
    support: &BTreeSet<Vec2>,
    motif_type: CheckType,
) -> Result<bool, TorusError> {
    let mut v = BitVec::zeros(c.n());
    for &site in support {
        v.set(c.torus.data_index(site)?, true);
    }
    let opposite = match motif_type {
        CheckType::X => &c.h_z,
        CheckType::Z => &c.h_x,
    };
    Ok(opposite.mul_vec(&v).expect("length matches").is_zero())
}

/// All data sites p whose weight-2m motif of the given Pauli type
/// commutes with every opposite-type check.
pub fn suitable_motif_sites(
    c: &CodeInstance,
    r: Vec2,
    tvec: Vec2,
    m: usize,
    motif_type: CheckType,
) -> Result<Vec<Vec2>, TorusError> {
    let mut out = Vec::new();
    for p in c.torus.data_sites() {
        let support = motif_operator(&c.torus, p, r, tvec, m)?;
        if support.len() != 2 * m {
            continue;
        }
        if motif_commutes(c, &support, motif_type)? {
            out.push(p);
        }
    }
    Ok(out)
}
