//! Optical elements acting on a [`PairState`]: half-wave plates lifted to the
//! pair sector, and the pumped conditional-phase switch.

use core::ops::Mul;

use num_traits::Float;

use crate::state::{PairState, RectLabel};
use crate::{c, Error, Result, C64};

const ZERO: C64 = c(0.0, 0.0);
const ONE: C64 = c(1.0, 0.0);

/// Single-photon polarization operator on `(H, V)`.
pub type Jones = [[C64; 2]; 2];

/// Spatial mode a single-photon element sits in.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Mode {
    One,
    Two,
}

/// Which modes carry a 22.5° half-wave plate.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum HadamardModes {
    Mode1Only,
    Mode2Only,
    Both,
}

/// Linear map on the pair amplitudes in `(HH, HV, VH, VV)` order. The vacuum
/// amplitude is never touched.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TwoModeGate {
    matrix: [[C64; 4]; 4],
}

impl TwoModeGate {
    pub const fn from_matrix(matrix: [[C64; 4]; 4]) -> Self {
        Self { matrix }
    }

    pub fn identity() -> Self {
        let mut m = [[ZERO; 4]; 4];
        for (i, row) in m.iter_mut().enumerate() {
            row[i] = ONE;
        }
        Self::from_matrix(m)
    }

    /// `diag(1, 1, 1, -1)`: the textbook controlled-π on `|1>|1>`.
    pub fn controlled_pi() -> Self {
        let mut g = Self::identity();
        g.matrix[3][3] = -ONE;
        g
    }

    /// `a ⊗ b`, with `a` acting on mode 1.
    pub fn kron(a: &Jones, b: &Jones) -> Self {
        let mut m = [[ZERO; 4]; 4];
        for (r, row) in m.iter_mut().enumerate() {
            for (col, entry) in row.iter_mut().enumerate() {
                *entry = a[r / 2][col / 2] * b[r % 2][col % 2];
            }
        }
        Self::from_matrix(m)
    }

    pub fn on_mode(jones: &Jones, mode: Mode) -> Self {
        let id = [[ONE, ZERO], [ZERO, ONE]];
        match mode {
            Mode::One => Self::kron(jones, &id),
            Mode::Two => Self::kron(&id, jones),
        }
    }

    pub fn matrix(&self) -> &[[C64; 4]; 4] {
        &self.matrix
    }

    pub fn apply(&self, v: &[C64; 4]) -> [C64; 4] {
        core::array::from_fn(|r| (0..4).map(|k| self.matrix[r][k] * v[k]).sum())
    }

    pub fn adjoint(&self) -> Self {
        Self::from_matrix(core::array::from_fn(|r| {
            core::array::from_fn(|k| self.matrix[k][r].conj())
        }))
    }

    /// Gate that applies `self` first and then `next`.
    pub fn then(&self, next: &TwoModeGate) -> Self {
        *next * *self
    }

    pub fn max_abs_diff(&self, other: &TwoModeGate) -> f64 {
        self.matrix
            .iter()
            .flatten()
            .zip(other.matrix.iter().flatten())
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }

    pub fn is_unitary(&self, tol: f64) -> bool {
        (self.adjoint() * *self).max_abs_diff(&Self::identity()) <= tol
    }
}

impl Mul for TwoModeGate {
    type Output = TwoModeGate;

    fn mul(self, rhs: TwoModeGate) -> TwoModeGate {
        TwoModeGate::from_matrix(core::array::from_fn(|r| {
            core::array::from_fn(|col| (0..4).map(|k| self.matrix[r][k] * rhs.matrix[k][col]).sum())
        }))
    }
}

/// Half-wave plate with fast axis at `theta` radians from horizontal.
pub fn half_wave_plate(theta: f64) -> Jones {
    let (s, c2) = Float::sin_cos(2.0 * theta);
    [[c(c2, 0.0), c(s, 0.0)], [c(s, 0.0), c(-c2, 0.0)]]
}

/// Hadamard gates `H = [[1, 1], [1, -1]]/√2` on the chosen modes. Entries are
/// exact (`±1/√2` or `±1/2`).
pub fn hadamard_gate(modes: HadamardModes) -> TwoModeGate {
    let sign = [[ONE, ONE], [ONE, -ONE]];
    let id = [[ONE, ZERO], [ZERO, ONE]];
    let (m, scale) = match modes {
        HadamardModes::Mode1Only => (TwoModeGate::kron(&sign, &id), core::f64::consts::FRAC_1_SQRT_2),
        HadamardModes::Mode2Only => (TwoModeGate::kron(&id, &sign), core::f64::consts::FRAC_1_SQRT_2),
        HadamardModes::Both => (TwoModeGate::kron(&sign, &sign), 0.5),
    };
    TwoModeGate::from_matrix(m.matrix.map(|row| row.map(|x| x * scale)))
}

/// Half-wave plate at angle `theta` (radians) in one mode. At `π/8` this is
/// the Hadamard on that mode.
pub fn waveplate_gate(theta: f64, mode: Mode) -> TwoModeGate {
    TwoModeGate::on_mode(&half_wave_plate(theta), mode)
}

pub fn apply_gate(state: &PairState, gate: &TwoModeGate) -> PairState {
    PairState::new(state.vacuum, gate.apply(&state.pairs))
}

/// Physical provenance of an injection amplitude. `hbar` is fixed to 1.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CrystalParams {
    /// Nonlinear coupling `g`.
    pub coupling: C64,
    /// Classical pump amplitude `ζ`.
    pub pump_amplitude: C64,
    pub interaction_time: f64,
    pub hbar: f64,
    /// Signal/idler frequency `ω`; the pump sits at `2ω`.
    pub signal_frequency: f64,
}

impl CrystalParams {
    pub fn new(coupling: C64, pump_amplitude: C64, interaction_time: f64, signal_frequency: f64) -> Self {
        Self {
            coupling,
            pump_amplitude,
            interaction_time,
            hbar: 1.0,
            signal_frequency,
        }
    }

    pub fn pump_frequency(&self) -> f64 {
        2.0 * self.signal_frequency
    }

    /// `-i t g ζ / ħ`: the pair amplitude created in one pass.
    pub fn injection(&self) -> C64 {
        c(0.0, -1.0) * self.coupling * self.pump_amplitude * (self.interaction_time / self.hbar)
    }
}

/// The pumped crystal reduced to what the circuits need: a complex amplitude
/// `injection` added to one pair class.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SwitchSettings {
    pub injection: C64,
    pub target: RectLabel,
    pub crystal: Option<CrystalParams>,
}

impl SwitchSettings {
    pub fn new(injection: C64, target: RectLabel) -> Self {
        Self {
            injection,
            target,
            crystal: None,
        }
    }

    /// Type-I phase matching into `HH`.
    pub fn hh(injection: C64) -> Self {
        Self::new(injection, RectLabel::HH)
    }

    pub fn from_crystal(crystal: CrystalParams, target: RectLabel) -> Result<Self> {
        if !(crystal.interaction_time.is_finite() && crystal.interaction_time >= 0.0) {
            return Err(Error::Crystal("interaction time must be finite and >= 0"));
        }
        if crystal.hbar != 1.0 {
            return Err(Error::Crystal("hbar is fixed to 1"));
        }
        let injection = crystal.injection();
        if !(injection.re.is_finite() && injection.im.is_finite()) {
            return Err(Error::Crystal("non-finite injection"));
        }
        Ok(Self {
            injection,
            target,
            crystal: Some(crystal),
        })
    }
}

/// First-order action of the pumped crystal: `pairs[target] += injection`.
///
/// Affine and not norm preserving; see [`norm_change`].
pub fn apply_switch(state: &PairState, settings: &SwitchSettings) -> PairState {
    let mut out = *state;
    out.pairs[settings.target.index()] += settings.injection;
    out
}

/// Injection that negates the target amplitude (the π condition `μ = -2εα`).
pub fn required_injection_for_pi(state: &PairState, target: RectLabel) -> C64 {
    -2.0 * state.pair(target)
}

/// `‖after‖² - ‖before‖² = |μ|² + 2 Re(μ* a_target)`.
pub fn norm_change(state: &PairState, settings: &SwitchSettings) -> f64 {
    let mu = settings.injection;
    mu.norm_sqr() + 2.0 * (mu.conj() * state.pair(settings.target)).re
}

#[cfg(test)]
mod tests {
    use super::*;
    use core::f64::consts::{FRAC_1_SQRT_2 as R, FRAC_PI_4, FRAC_PI_8};

    fn real(v: [f64; 4]) -> [C64; 4] {
        v.map(|x| c(x, 0.0))
    }

    fn close(a: &[C64; 4], b: &[C64; 4], tol: f64) -> bool {
        a.iter().zip(b).all(|(x, y)| (x - y).norm() <= tol)
    }

    #[test]
    fn hadamard_both_matches_printed_matrix() {
        let signs = [
            [1.0, 1.0, 1.0, 1.0],
            [1.0, -1.0, 1.0, -1.0],
            [1.0, 1.0, -1.0, -1.0],
            [1.0, -1.0, -1.0, 1.0],
        ];
        let want = TwoModeGate::from_matrix(signs.map(|r| r.map(|x| c(0.5 * x, 0.0))));
        assert_eq!(hadamard_gate(HadamardModes::Both), want);
    }

    #[test]
    fn hadamard_mode1_matches_printed_matrix() {
        let signs = [
            [1.0, 0.0, 1.0, 0.0],
            [0.0, 1.0, 0.0, 1.0],
            [1.0, 0.0, -1.0, 0.0],
            [0.0, 1.0, 0.0, -1.0],
        ];
        let want = TwoModeGate::from_matrix(signs.map(|r| r.map(|x| c(R * x, 0.0))));
        assert_eq!(hadamard_gate(HadamardModes::Mode1Only), want);
    }

    #[test]
    fn hadamard_on_hh() {
        let out = hadamard_gate(HadamardModes::Both).apply(&RectLabel::HH.vector());
        assert!(close(&out, &real([0.5; 4]), 1e-15));
    }

    #[test]
    fn hadamard_mode1_is_involution() {
        let h = hadamard_gate(HadamardModes::Mode1Only);
        for l in RectLabel::ALL {
            assert!(close(&h.apply(&h.apply(&l.vector())), &l.vector(), 1e-15));
        }
    }

    #[test]
    fn hadamard_mode1_on_singlet() {
        // (α+γ, β+δ, α-γ, β-δ)/√2 with (α, β, γ, δ) = (0, -1, 1, 0)/√2
        let out = hadamard_gate(HadamardModes::Mode1Only).apply(&real([0.0, -R, R, 0.0]));
        assert!(close(&out, &real([0.5, -0.5, -0.5, -0.5]), 1e-15));
        // the controlled-π then flips the last entry
        let out = TwoModeGate::controlled_pi().apply(&out);
        assert!(close(&out, &real([0.5, -0.5, -0.5, 0.5]), 1e-15));
    }

    #[test]
    fn waveplate_special_angles() {
        let v = real([1.0, 2.0, 3.0, 4.0]);
        let g0 = waveplate_gate(0.0, Mode::One);
        assert!(close(&g0.apply(&v), &real([1.0, 2.0, -3.0, -4.0]), 0.0));

        let swap = waveplate_gate(FRAC_PI_4, Mode::Two);
        assert!(close(&swap.apply(&v), &real([2.0, 1.0, 4.0, 3.0]), 1e-15));

        for (mode, h) in [
            (Mode::One, HadamardModes::Mode1Only),
            (Mode::Two, HadamardModes::Mode2Only),
        ] {
            assert!(waveplate_gate(FRAC_PI_8, mode).max_abs_diff(&hadamard_gate(h)) <= 1e-15);
        }
    }

    #[test]
    fn gate_leaves_vacuum() {
        let s = PairState::vacuum_only();
        assert_eq!(apply_gate(&s, &waveplate_gate(0.3, Mode::Two)), s);
    }

    #[test]
    fn gate_on_general_state() {
        let (a, b, g, d) = (c(0.3, 0.1), c(-0.2, 0.0), c(0.0, 0.7), c(0.5, -0.5));
        let eps = c(0.01, 0.0);
        let s = PairState::new(ONE, [a, b, g, d].map(|x| eps * x));

        let out = apply_gate(&s, &hadamard_gate(HadamardModes::Both));
        let want = [a + b + g + d, a - b + g - d, a + b - g - d, a - b - g + d].map(|x| eps * 0.5 * x);
        assert!(close(&out.pairs, &want, 1e-15));
        assert_eq!(out.vacuum, ONE);

        let out = apply_gate(&s, &hadamard_gate(HadamardModes::Mode1Only));
        let want = [a + g, b + d, a - g, b - d].map(|x| eps * R * x);
        assert!(close(&out.pairs, &want, 1e-15));
    }

    #[test]
    fn switch_examples() {
        let eps = c(0.01, 0.0);
        let s = PairState::new(ONE, real([0.3, 0.2, 0.1, 0.4]).map(|x| eps * x));
        assert_eq!(apply_switch(&s, &SwitchSettings::hh(ZERO)), s);

        let mu = c(0.0, -0.004);
        let out = apply_switch(&s, &SwitchSettings::hh(mu));
        assert_eq!(out.pairs[0], eps * (c(0.3, 0.0) + mu / eps));
        assert_eq!(out.pairs[1..], s.pairs[1..]);

        let s = PairState::new(ONE, [eps * 0.5; 4]);
        let out = apply_switch(&s, &SwitchSettings::hh(-eps));
        assert!(close(&out.pairs, &[-0.5 * eps, 0.5 * eps, 0.5 * eps, 0.5 * eps], 1e-18));
    }

    #[test]
    fn required_injection_examples() {
        let s = PairState::new(ONE, real([0.1, 0.0, 0.0, 0.0]));
        assert_eq!(required_injection_for_pi(&s, RectLabel::HH), c(-0.2, 0.0));

        let s = PairState::new(ONE, real([0.0, 0.1, 0.0, 0.0]));
        let mu = required_injection_for_pi(&s, RectLabel::HH);
        assert_eq!(mu, ZERO);
        assert_eq!(apply_switch(&s, &SwitchSettings::hh(mu)), s);

        let s = PairState::new(ONE, [c(0.0, 0.05), ZERO, ZERO, ZERO]);
        let mu = required_injection_for_pi(&s, RectLabel::HH);
        assert_eq!(mu, c(0.0, -0.1));
        let out = apply_switch(&s, &SwitchSettings::hh(mu));
        assert_eq!(out.pairs, [c(0.0, -0.05), ZERO, ZERO, ZERO]);
    }

    #[test]
    fn norm_change_examples() {
        let s = PairState::new(ONE, real([0.1, 0.0, 0.0, 0.0]));
        assert_eq!(norm_change(&s, &SwitchSettings::hh(ZERO)), 0.0);
        assert!(norm_change(&s, &SwitchSettings::hh(c(-0.2, 0.0))).abs() < 1e-18);
        let v = PairState::new(ONE, [ZERO; 4]);
        assert!((norm_change(&v, &SwitchSettings::hh(c(0.1, 0.0))) - 0.01).abs() < 1e-17);
    }

    #[test]
    fn crystal_injection() {
        let crystal = CrystalParams::new(c(0.5, 0.0), c(0.0, 2.0), 0.1, 1.0);
        let s = SwitchSettings::from_crystal(crystal, RectLabel::HH).unwrap();
        // -i * 0.1 * 0.5 * 2i = 0.1
        assert!((s.injection - c(0.1, 0.0)).norm() < 1e-16);
        assert_eq!(crystal.pump_frequency(), 2.0);

        let mut bad = crystal;
        bad.interaction_time = -1.0;
        assert!(SwitchSettings::from_crystal(bad, RectLabel::HH).is_err());
        let mut bad = crystal;
        bad.hbar = 2.0;
        assert!(SwitchSettings::from_crystal(bad, RectLabel::HH).is_err());
    }
}
