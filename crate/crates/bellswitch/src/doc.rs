//! Circuit description files.
//!
//! ```json
//! {
//!   "version": 1,
//!   "epsilon": {"re": 0.01, "im": 0.0},
//!   "elements": [
//!     {"kind": "waveplate", "theta_degrees": 22.5, "mode": 1},
//!     {"kind": "switch", "injection": {"re": -0.01, "im": 0.0}, "target": "HH"}
//!   ],
//!   "input": {"kind": "rectilinear", "label": "HH"}
//! }
//! ```
//!
//! Inputs: `rectilinear` is `|0> + ε|label>`, `bell` is `|0> - ε|label>`
//! (the creator's output convention), `raw` gives `amplitudes` for
//! `HH, HV, VH, VV` and an optional `vacuum` (default 1).

use std::fmt;

use bellswitch_core::circuits::Device;
use bellswitch_core::elements::{apply_gate, apply_switch, Jones, Mode, SwitchSettings, TwoModeGate};
use bellswitch_core::state::{BellLabel, PairState, RectLabel};
use bellswitch_core::C64;
use serde::de::{self, Deserializer};
use serde::{Deserialize, Serialize, Serializer};

use crate::CliError;

pub const DOC_VERSION: u32 = 1;

/// Complex number as `{re, im}`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Cx {
    pub re: f64,
    pub im: f64,
}

/// Negative zeros are written as `0`.
impl From<C64> for Cx {
    fn from(z: C64) -> Self {
        Self {
            re: z.re + 0.0,
            im: z.im + 0.0,
        }
    }
}

impl From<Cx> for C64 {
    fn from(z: Cx) -> Self {
        C64::new(z.re, z.im)
    }
}

impl fmt::Display for Cx {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{:+}i", self.re, self.im)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Version;

impl Serialize for Version {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_u32(DOC_VERSION)
    }
}

impl<'de> Deserialize<'de> for Version {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let v = u64::deserialize(d)?;
        if v == u64::from(DOC_VERSION) {
            Ok(Version)
        } else {
            Err(de::Error::custom(format_args!(
                "unsupported version {v} (expected {DOC_VERSION})"
            )))
        }
    }
}

/// Spatial mode, written `1` or `2`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ModeNo(pub Mode);

impl Serialize for ModeNo {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_u8(match self.0 {
            Mode::One => 1,
            Mode::Two => 2,
        })
    }
}

impl<'de> Deserialize<'de> for ModeNo {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        match u64::deserialize(d)? {
            1 => Ok(ModeNo(Mode::One)),
            2 => Ok(ModeNo(Mode::Two)),
            m => Err(de::Error::custom(format_args!("mode must be 1 or 2, got {m}"))),
        }
    }
}

macro_rules! label_serde {
    ($name:ident, $inner:ty, $what:literal) => {
        #[derive(Debug, Clone, Copy, PartialEq, Eq)]
        pub struct $name(pub $inner);

        impl Serialize for $name {
            fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
                s.serialize_str(self.0.name())
            }
        }

        impl<'de> Deserialize<'de> for $name {
            fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
                let s = String::deserialize(d)?;
                <$inner>::parse(&s)
                    .map($name)
                    .ok_or_else(|| de::Error::custom(format_args!(concat!("unknown ", $what, " label {:?}"), s)))
            }
        }
    };
}

label_serde!(Rect, RectLabel, "rectilinear");
label_serde!(Bell, BellLabel, "Bell");

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase", deny_unknown_fields)]
pub enum ElementDoc {
    Waveplate { theta_degrees: f64, mode: ModeNo },
    Switch { injection: Cx, target: Rect },
}

fn one() -> Cx {
    Cx { re: 1.0, im: 0.0 }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase", deny_unknown_fields)]
pub enum InputDoc {
    Rectilinear {
        label: Rect,
    },
    Bell {
        label: Bell,
    },
    Raw {
        #[serde(default = "one")]
        vacuum: Cx,
        amplitudes: [Cx; 4],
    },
}

impl InputDoc {
    pub fn state(&self, epsilon: C64) -> PairState {
        match self {
            InputDoc::Rectilinear { label } => PairState::rectilinear(epsilon, label.0),
            InputDoc::Bell { label } => PairState::bell(-epsilon, label.0),
            InputDoc::Raw { vacuum, amplitudes } => PairState::new((*vacuum).into(), amplitudes.map(C64::from)),
        }
    }

    pub fn describe(&self) -> String {
        match self {
            InputDoc::Rectilinear { label } => format!("|0> + e|{}>", label.0),
            InputDoc::Bell { label } => format!("|0> - e|{}>", label.0),
            InputDoc::Raw { .. } => "raw amplitudes".to_owned(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CircuitDoc {
    pub version: Version,
    pub epsilon: Cx,
    pub elements: Vec<ElementDoc>,
    pub input: InputDoc,
}

impl CircuitDoc {
    pub fn parse(text: &str) -> Result<Self, CliError> {
        serde_json::from_str(text).map_err(CliError::Parse)
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("circuit docs always serialize");
        s.push('\n');
        s
    }

    /// The optical device for `epsilon`, plates at 22.5°.
    pub fn device(which: Device, epsilon: C64, input: InputDoc) -> Self {
        let plate = |mode| ElementDoc::Waveplate {
            theta_degrees: 22.5,
            mode: ModeNo(mode),
        };
        let switch = ElementDoc::Switch {
            injection: which.nominal_injection(epsilon).into(),
            target: Rect(RectLabel::HH),
        };
        let elements = match which {
            Device::Creator => vec![plate(Mode::One), plate(Mode::Two), switch, plate(Mode::One)],
            Device::Analyzer => vec![plate(Mode::One), switch, plate(Mode::One), plate(Mode::Two)],
        };
        Self {
            version: Version,
            epsilon: epsilon.into(),
            elements,
            input,
        }
    }

    /// Groups the elements into stages: each maximal run of wave plates is
    /// one stage, each switch is its own.
    pub fn stages(&self) -> Vec<Stage> {
        let mut out: Vec<Stage> = Vec::new();
        for e in &self.elements {
            match *e {
                ElementDoc::Waveplate { theta_degrees, mode } => {
                    let g = TwoModeGate::on_mode(&half_wave_plate_degrees(theta_degrees), mode.0);
                    let label = format!("plate {theta_degrees} deg on mode {}", mode_no(mode.0));
                    match out.last_mut() {
                        Some(Stage::Plates { gate, labels }) => {
                            *gate = snap(g * *gate);
                            labels.push(label);
                        }
                        _ => out.push(Stage::Plates {
                            gate: g,
                            labels: vec![label],
                        }),
                    }
                }
                ElementDoc::Switch { injection, target } => {
                    out.push(Stage::Switch(SwitchSettings::new(injection.into(), target.0)))
                }
            }
        }
        out
    }
}

/// Rounds entries lying within a few ulps of `0, ±1/2, ±1/√2, ±1` onto those
/// values, so products of exact plates stay exact.
fn snap(g: TwoModeGate) -> TwoModeGate {
    const EXACT: [f64; 3] = [0.5, std::f64::consts::FRAC_1_SQRT_2, 1.0];
    let fix = |x: f64| {
        EXACT
            .iter()
            .find(|t| (x.abs() - **t).abs() <= 4.0 * f64::EPSILON)
            .map_or(x, |t| t.copysign(x))
    };
    let fix0 = |x: f64| if x.abs() <= 4.0 * f64::EPSILON { 0.0 } else { fix(x) };
    TwoModeGate::from_matrix(g.matrix().map(|row| row.map(|z| C64::new(fix0(z.re), fix0(z.im)))))
}

fn mode_no(m: Mode) -> u8 {
    match m {
        Mode::One => 1,
        Mode::Two => 2,
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum Stage {
    Plates { gate: TwoModeGate, labels: Vec<String> },
    Switch(SwitchSettings),
}

impl Stage {
    pub fn apply(&self, s: &PairState) -> PairState {
        match self {
            Stage::Plates { gate, .. } => apply_gate(s, gate),
            Stage::Switch(set) => apply_switch(s, set),
        }
    }

    pub fn describe(&self) -> String {
        match self {
            Stage::Plates { labels, .. } => labels.join(", "),
            Stage::Switch(set) => format!("switch {} on {}", Cx::from(set.injection), set.target),
        }
    }
}

/// Half-wave plate with its axis at `theta` degrees. Angles whose double is a
/// multiple of 45° use exact entries so the 22.5° plate is the Hadamard.
pub fn half_wave_plate_degrees(theta: f64) -> Jones {
    let two = 2.0 * theta;
    let (s, co) = if two % 45.0 == 0.0 {
        let r = std::f64::consts::FRAC_1_SQRT_2;
        const TABLE: [(f64, f64); 8] = [
            (0.0, 1.0),
            (1.0, 1.0),
            (1.0, 0.0),
            (1.0, -1.0),
            (0.0, -1.0),
            (-1.0, -1.0),
            (-1.0, 0.0),
            (-1.0, 1.0),
        ];
        let k = (two / 45.0).rem_euclid(8.0) as usize;
        let (s, co) = TABLE[k];
        if k % 2 == 1 {
            (s * r, co * r)
        } else {
            (s, co)
        }
    } else {
        two.to_radians().sin_cos()
    };
    let z = |x: f64| C64::new(x, 0.0);
    [[z(co), z(s)], [z(s), z(-co)]]
}
