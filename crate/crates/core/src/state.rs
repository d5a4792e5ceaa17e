//! Vacuum-plus-pair states and the two pair-sector bases.

use core::fmt;

use crate::{c, Error, Result, C64};

const ZERO: C64 = c(0.0, 0.0);
const ONE: C64 = c(1.0, 0.0);
const R: f64 = core::f64::consts::FRAC_1_SQRT_2;

/// Rectilinear product state of one photon in each spatial mode.
///
/// The discriminant is the index into [`PairState::pairs`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum RectLabel {
    HH = 0,
    HV = 1,
    VH = 2,
    VV = 3,
}

impl RectLabel {
    pub const ALL: [RectLabel; 4] = [RectLabel::HH, RectLabel::HV, RectLabel::VH, RectLabel::VV];

    #[inline]
    pub const fn index(self) -> usize {
        self as usize
    }

    pub const fn from_index(i: usize) -> Option<Self> {
        match i {
            0 => Some(RectLabel::HH),
            1 => Some(RectLabel::HV),
            2 => Some(RectLabel::VH),
            3 => Some(RectLabel::VV),
            _ => None,
        }
    }

    /// Unit vector for this label.
    pub fn vector(self) -> [C64; 4] {
        let mut v = [ZERO; 4];
        v[self.index()] = ONE;
        v
    }

    pub const fn name(self) -> &'static str {
        match self {
            RectLabel::HH => "HH",
            RectLabel::HV => "HV",
            RectLabel::VH => "VH",
            RectLabel::VV => "VV",
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        Self::ALL.into_iter().find(|l| l.name().eq_ignore_ascii_case(s))
    }
}

impl fmt::Display for RectLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// The four maximally entangled polarization states.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum BellLabel {
    PsiPlus,
    PsiMinus,
    PhiPlus,
    PhiMinus,
}

impl BellLabel {
    pub const ALL: [BellLabel; 4] = [
        BellLabel::PsiPlus,
        BellLabel::PsiMinus,
        BellLabel::PhiPlus,
        BellLabel::PhiMinus,
    ];

    pub fn vector(self) -> [C64; 4] {
        bell_vector(self)
    }

    /// Kebab-case name used on the command line (`psi-minus`, ...).
    pub const fn name(self) -> &'static str {
        match self {
            BellLabel::PsiPlus => "psi-plus",
            BellLabel::PsiMinus => "psi-minus",
            BellLabel::PhiPlus => "phi-plus",
            BellLabel::PhiMinus => "phi-minus",
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        let norm = |x: &str| {
            x.bytes()
                .filter(|b| *b != b'-' && *b != b'_')
                .map(|b| b.to_ascii_lowercase())
                .eq(s
                    .bytes()
                    .filter(|b| *b != b'-' && *b != b'_')
                    .map(|b| b.to_ascii_lowercase()))
        };
        Self::ALL.into_iter().find(|l| norm(l.name()))
    }
}

impl fmt::Display for BellLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Unit 4-vector of a Bell state in `(HH, HV, VH, VV)` order.
///
/// `psi±` = (|V>|H> ± |H>|V>)/√2 and `phi±` = (|H>|H> ± |V>|V>)/√2, so the
/// singlet `psi-` is `(0, -1, 1, 0)/√2`.
pub fn bell_vector(label: BellLabel) -> [C64; 4] {
    match label {
        BellLabel::PsiMinus => [ZERO, c(-R, 0.0), c(R, 0.0), ZERO],
        BellLabel::PsiPlus => [ZERO, c(R, 0.0), c(R, 0.0), ZERO],
        BellLabel::PhiPlus => [c(R, 0.0), ZERO, ZERO, c(R, 0.0)],
        BellLabel::PhiMinus => [c(R, 0.0), ZERO, ZERO, c(-R, 0.0)],
    }
}

/// `|0> + Σ pairs[k] |k>`, stored unnormalized.
///
/// Normalization is only applied when probabilities are computed, so the
/// affine switch algebra stays exact.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PairState {
    pub vacuum: C64,
    pub pairs: [C64; 4],
}

impl PairState {
    pub const fn new(vacuum: C64, pairs: [C64; 4]) -> Self {
        Self { vacuum, pairs }
    }

    pub const fn vacuum_only() -> Self {
        Self::new(ONE, [ZERO; 4])
    }

    /// `|0> + scale·|label>`.
    pub fn rectilinear(scale: C64, label: RectLabel) -> Self {
        make_downconversion_state(scale, label.vector())
    }

    /// `|0> + scale·|label>` for a Bell label; `scale = -ε` gives the
    /// creator's outputs.
    pub fn bell(scale: C64, label: BellLabel) -> Self {
        make_downconversion_state(scale, bell_vector(label))
    }

    pub fn pair(&self, label: RectLabel) -> C64 {
        self.pairs[label.index()]
    }

    pub fn pair_norm_sq(&self) -> f64 {
        self.pairs.iter().map(|a| a.norm_sqr()).sum()
    }

    pub fn total_norm_sq(&self) -> f64 {
        self.vacuum.norm_sqr() + self.pair_norm_sq()
    }

    /// Largest `|a - b|` over the vacuum and the four pair amplitudes.
    pub fn max_deviation(&self, other: &PairState) -> f64 {
        self.pairs
            .iter()
            .zip(other.pairs.iter())
            .map(|(a, b)| (a - b).norm())
            .fold((self.vacuum - other.vacuum).norm(), f64::max)
    }
}

impl Default for PairState {
    fn default() -> Self {
        Self::vacuum_only()
    }
}

/// Source output `|0> + epsilon·(coeffs)`; coefficients are taken as given.
pub fn make_downconversion_state(epsilon: C64, coeffs: [C64; 4]) -> PairState {
    PairState::new(ONE, coeffs.map(|x| epsilon * x))
}

/// Hermitian inner product `<a|b>` of two pair vectors.
pub fn inner(a: &[C64; 4], b: &[C64; 4]) -> C64 {
    a.iter().zip(b.iter()).map(|(x, y)| x.conj() * y).sum()
}

/// Phase-insensitive overlap of the pair sectors, ignoring the vacuum term.
pub fn pair_fidelity(a: &PairState, b: &PairState) -> Result<f64> {
    let na = a.pair_norm_sq();
    let nb = b.pair_norm_sq();
    if na == 0.0 || nb == 0.0 {
        return Err(Error::NoPairComponent);
    }
    Ok((inner(&a.pairs, &b.pairs).norm_sqr() / (na * nb)).min(1.0))
}

/// Phase-sensitive, amplitude-by-amplitude comparison.
pub fn assert_close(a: &PairState, b: &PairState, tol: f64) -> bool {
    a.max_deviation(b) <= tol
}

/// Writes a pair vector as `α·v` when it is parallel to one of `basis`
/// within `tol` (fidelity `>= 1 - tol`); returns the index and `α`.
pub fn decompose_on(pairs: &[C64; 4], basis: &[[C64; 4]], tol: f64) -> Option<(usize, C64)> {
    let norm_sq: f64 = pairs.iter().map(|a| a.norm_sqr()).sum();
    if norm_sq == 0.0 {
        return None;
    }
    basis.iter().enumerate().find_map(|(i, v)| {
        let coeff = inner(v, pairs);
        (coeff.norm_sqr() / norm_sq >= 1.0 - tol).then_some((i, coeff))
    })
}

/// Identifies a pair vector as `α·|bell>`.
pub fn as_bell(pairs: &[C64; 4], tol: f64) -> Option<(BellLabel, C64)> {
    let basis = BellLabel::ALL.map(bell_vector);
    decompose_on(pairs, &basis, tol).map(|(i, a)| (BellLabel::ALL[i], a))
}

/// Identifies a pair vector as `α·|rect>`.
pub fn as_rectilinear(pairs: &[C64; 4], tol: f64) -> Option<(RectLabel, C64)> {
    let basis = RectLabel::ALL.map(RectLabel::vector);
    decompose_on(pairs, &basis, tol).map(|(i, a)| (RectLabel::ALL[i], a))
}
