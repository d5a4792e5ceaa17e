//! Rectilinear discriminator: a polarizing beam splitter on each spatial mode
//! with a photon counter on each output port.
//!
//! Detector assignment: D1 = H₁, D2 = V₁, D3 = H₂, D4 = V₂, so a D1·D4
//! coincidence heralds `|H>₁|V>₂`.

use core::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::circuits::{bell_analyzer, CREATION_MAP};
use crate::state::{BellLabel, PairState, RectLabel};
use crate::{Error, Result, C64};

/// Share of the coincidence probability a single outcome must carry for
/// [`identify_bell`] to name a Bell state.
pub const IDENTIFY_PURITY: f64 = 1.0 - 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Outcome {
    D1D3 = 0,
    D1D4 = 1,
    D2D3 = 2,
    D2D4 = 3,
    NoCoincidence = 4,
}

impl Outcome {
    pub const ALL: [Outcome; 5] = [
        Outcome::D1D3,
        Outcome::D1D4,
        Outcome::D2D3,
        Outcome::D2D4,
        Outcome::NoCoincidence,
    ];

    pub const fn index(self) -> usize {
        self as usize
    }

    pub const fn from_rect(label: RectLabel) -> Self {
        match label {
            RectLabel::HH => Outcome::D1D3,
            RectLabel::HV => Outcome::D1D4,
            RectLabel::VH => Outcome::D2D3,
            RectLabel::VV => Outcome::D2D4,
        }
    }

    pub const fn rect(self) -> Option<RectLabel> {
        match self {
            Outcome::D1D3 => Some(RectLabel::HH),
            Outcome::D1D4 => Some(RectLabel::HV),
            Outcome::D2D3 => Some(RectLabel::VH),
            Outcome::D2D4 => Some(RectLabel::VV),
            Outcome::NoCoincidence => None,
        }
    }

    pub const fn name(self) -> &'static str {
        match self {
            Outcome::D1D3 => "D1.D3",
            Outcome::D1D4 => "D1.D4",
            Outcome::D2D3 => "D2.D3",
            Outcome::D2D4 => "D2.D4",
            Outcome::NoCoincidence => "none",
        }
    }
}

impl fmt::Display for Outcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OutcomeDistribution {
    p: [f64; 5],
}

impl OutcomeDistribution {
    /// Validates and wraps raw probabilities in [`Outcome::ALL`] order.
    pub fn from_probabilities(p: [f64; 5]) -> Option<Self> {
        let sum: f64 = p.iter().sum();
        (p.iter().all(|x| *x >= 0.0 && x.is_finite()) && (sum - 1.0).abs() <= 1e-12).then_some(Self { p })
    }

    pub fn get(&self, outcome: Outcome) -> f64 {
        self.p[outcome.index()]
    }

    pub fn probabilities(&self) -> &[f64; 5] {
        &self.p
    }

    pub fn coincidence_total(&self) -> f64 {
        self.p[..4].iter().sum()
    }
}

/// Exact outcome probabilities. Each coincidence has probability
/// `η²|p_k|² / ‖state‖²`; everything else, vacuum included, is
/// `NoCoincidence`.
pub fn outcome_distribution(state: &PairState, efficiency: f64) -> Result<OutcomeDistribution> {
    if !(0.0..=1.0).contains(&efficiency) {
        return Err(Error::Efficiency(efficiency));
    }
    let total = state.total_norm_sq();
    if !(total > 0.0 && total.is_finite()) {
        return Err(Error::ZeroNorm);
    }
    let eta2 = efficiency * efficiency;
    let mut p = [0.0; 5];
    for (slot, amp) in p.iter_mut().zip(state.pairs) {
        *slot = eta2 * amp.norm_sqr() / total;
    }
    let coincidences: f64 = p[..4].iter().sum();
    p[4] = (1.0 - coincidences).max(0.0);
    Ok(OutcomeDistribution { p })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ShotRecord {
    pub shots: u64,
    pub seed: u64,
    counts: [u64; 5],
}

impl ShotRecord {
    pub fn count(&self, outcome: Outcome) -> u64 {
        self.counts[outcome.index()]
    }

    pub fn counts(&self) -> &[u64; 5] {
        &self.counts
    }

    pub fn frequency(&self, outcome: Outcome) -> f64 {
        if self.shots == 0 {
            0.0
        } else {
            self.count(outcome) as f64 / self.shots as f64
        }
    }
}

/// Independent categorical draws from `dist`, reproducible from `seed`
/// (ChaCha8 stream, inverse-CDF lookup).
pub fn sample_shots(dist: &OutcomeDistribution, shots: u64, seed: u64) -> ShotRecord {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut cdf = [0.0; 5];
    let mut acc = 0.0;
    for (c, p) in cdf.iter_mut().zip(dist.p) {
        acc += p;
        *c = acc;
    }
    // Rounding can leave the last bucket a hair short of 1.
    let last = dist.p.iter().rposition(|p| *p > 0.0).unwrap_or(4);
    let mut counts = [0u64; 5];
    for _ in 0..shots {
        let u: f64 = rng.random();
        let k = cdf.iter().position(|c| u < *c).unwrap_or(last).min(last);
        counts[k] += 1;
    }
    ShotRecord { shots, seed, counts }
}

/// Rectilinear outcome that the analyzer maps each Bell state onto.
pub fn detection_outcome(label: BellLabel) -> Outcome {
    let (rect, _) = CREATION_MAP.iter().find(|(_, b)| *b == label).copied().unwrap();
    Outcome::from_rect(rect)
}

fn bell_for_rect(rect: RectLabel) -> BellLabel {
    CREATION_MAP.iter().find(|(r, _)| *r == rect).map(|(_, b)| *b).unwrap()
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Identification {
    pub label: Option<BellLabel>,
    pub outcome: Option<Outcome>,
    /// Normalized success probability `|a|² / ‖state‖²` of the heralding
    /// coincidence (zero when unidentified).
    pub probability: f64,
    /// The same weight without the normalization, `|a|²`.
    pub unnormalized_probability: f64,
    pub distribution: OutcomeDistribution,
}

/// Runs the analyzer tuned to `epsilon` and reads off the Bell label when a
/// single coincidence outcome carries the coincidence probability.
///
/// Inputs that are not `|0> - ε|bell>` for the given `ε` spread over several
/// outcomes and yield `label: None`.
pub fn identify_bell(input: &PairState, epsilon: C64) -> Result<Identification> {
    let out = bell_analyzer(epsilon)?.run(input);
    let distribution = outcome_distribution(&out, 1.0)?;
    let total = distribution.coincidence_total();
    let best = Outcome::ALL[..4]
        .iter()
        .copied()
        .max_by(|a, b| distribution.get(*a).total_cmp(&distribution.get(*b)))
        .unwrap();
    let pure = total > 0.0 && distribution.get(best) >= IDENTIFY_PURITY * total;
    Ok(if pure {
        let rect = best.rect().unwrap();
        Identification {
            label: Some(bell_for_rect(rect)),
            outcome: Some(best),
            probability: distribution.get(best),
            unnormalized_probability: out.pair(rect).norm_sqr(),
            distribution,
        }
    } else {
        Identification {
            label: None,
            outcome: None,
            probability: 0.0,
            unnormalized_probability: 0.0,
            distribution,
        }
    })
}
