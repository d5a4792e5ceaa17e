//! Report records. Each serializes to JSON for `--format machine` and has a
//! plain-text rendering; both print floats in shortest round-trip form, so
//! they carry the same numbers.

use std::fmt::Write as _;

use bellswitch_core::state::PairState;
use serde::Serialize;

use crate::doc::Cx;

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Text,
    Machine,
}

pub trait Render: Serialize {
    fn text(&self) -> String;

    fn render(&self, format: Format) -> String {
        match format {
            Format::Text => self.text(),
            Format::Machine => {
                let mut s = serde_json::to_string_pretty(self).expect("reports always serialize");
                s.push('\n');
                s
            }
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct StateOut {
    pub vacuum: Cx,
    /// `HH, HV, VH, VV`.
    pub pair_amps: [Cx; 4],
}

impl From<&PairState> for StateOut {
    fn from(s: &PairState) -> Self {
        Self {
            vacuum: s.vacuum.into(),
            pair_amps: s.pairs.map(Cx::from),
        }
    }
}

impl StateOut {
    fn line(&self) -> String {
        let [hh, hv, vh, vv] = self.pair_amps;
        format!("vacuum {}  HH {hh}  HV {hv}  VH {vh}  VV {vv}", self.vacuum)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct StageOut {
    pub stage: usize,
    pub element: String,
    pub state: StateOut,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Decomposition {
    pub label: String,
    pub coefficient: Cx,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RunReport {
    pub input: String,
    pub epsilon: Cx,
    pub input_state: StateOut,
    pub stages: Vec<StageOut>,
    pub final_state: StateOut,
    /// Final pair sector written as `c·|bell>`, when it is one.
    pub bell: Option<Decomposition>,
    /// Final pair sector written as `c·|rect>`, when it is one.
    pub rectilinear: Option<Decomposition>,
}

impl RunReport {
    fn write_text(&self, out: &mut String) {
        let _ = writeln!(out, "input    {}  (epsilon {})", self.input, self.epsilon);
        let _ = writeln!(out, "         {}", self.input_state.line());
        for s in &self.stages {
            let _ = writeln!(out, "stage {}  {}", s.stage, s.element);
            let _ = writeln!(out, "         {}", s.state.line());
        }
        let _ = writeln!(out, "final    {}", self.final_state.line());
        if let Some(b) = &self.bell {
            let _ = writeln!(out, "bell     {} x {}", b.label, b.coefficient);
        }
        if let Some(r) = &self.rectilinear {
            let _ = writeln!(out, "rect     {} x {}", r.label, r.coefficient);
        }
    }
}

impl Render for RunReport {
    fn text(&self) -> String {
        let mut out = String::new();
        self.write_text(&mut out);
        out
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Verdict {
    pub rectilinear: String,
    pub outcome: String,
    /// `|a|² / ‖state‖²`.
    pub probability: f64,
    /// `|a|²`.
    pub unnormalized_probability: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct AnalyzeReport {
    #[serde(flatten)]
    pub run: RunReport,
    pub verdict: Option<Verdict>,
}

impl Render for AnalyzeReport {
    fn text(&self) -> String {
        let mut out = String::new();
        self.run.write_text(&mut out);
        match &self.verdict {
            Some(v) => {
                let _ = writeln!(
                    out,
                    "verdict  {} ({})  probability {}  unnormalized {}",
                    v.rectilinear, v.outcome, v.probability, v.unnormalized_probability
                );
            }
            None => out.push_str("verdict  none: coincidences spread over several outcomes\n"),
        }
        out
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RowOut {
    pub input: String,
    pub expected: String,
    pub computed: StateOut,
    pub max_deviation: f64,
    pub pass: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct PrefactorOut {
    pub closed_form_deviation: f64,
    pub sqrt2_prefactor_deviation: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DeviceTable {
    pub device: String,
    pub rows: Vec<RowOut>,
    pub max_deviation: f64,
    pub pass: bool,
    pub prefactor: Option<PrefactorOut>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TablesReport {
    pub epsilon: Cx,
    pub tol: f64,
    pub tables: Vec<DeviceTable>,
    pub pass: bool,
}

impl Render for TablesReport {
    fn text(&self) -> String {
        let mut out = String::new();
        for t in &self.tables {
            let _ = writeln!(out, "{}  epsilon {}  tol {:e}", t.device, self.epsilon, self.tol);
            for r in &t.rows {
                let _ = writeln!(
                    out,
                    "  {}  {}  ->  {}  max deviation {:e}",
                    if r.pass { "PASS" } else { "FAIL" },
                    r.input,
                    r.expected,
                    r.max_deviation
                );
            }
            if let Some(p) = t.prefactor {
                let _ = writeln!(
                    out,
                    "  prefactor e/sqrt2: deviation {:e}; prefactor sqrt2*e: deviation {:e}",
                    p.closed_form_deviation, p.sqrt2_prefactor_deviation
                );
            }
        }
        let rows: usize = self.tables.iter().map(|t| t.rows.len()).sum();
        let passed: usize = self.tables.iter().flat_map(|t| &t.rows).filter(|r| r.pass).count();
        let _ = writeln!(out, "{passed}/{rows} rows pass");
        out
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ScaleRow {
    pub scale: f64,
    pub max_deviation: f64,
    pub vacuum_deviation: f64,
    pub double_pair: Cx,
    pub out_of_model_norm: f64,
    pub truncation_estimate: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ValidateReport {
    pub base: String,
    pub base_injection: Cx,
    pub n_max: u8,
    pub rows: Vec<ScaleRow>,
    pub exponent: Option<f64>,
    pub window: [f64; 2],
    pub pass: bool,
}

impl Render for ValidateReport {
    fn text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(
            out,
            "base {}  injection {} x scale  n_max {}",
            self.base, self.base_injection, self.n_max
        );
        let _ = writeln!(
            out,
            "scale  max_deviation  double_pair  out_of_model  truncation_estimate"
        );
        for r in &self.rows {
            let _ = writeln!(
                out,
                "{:e}  {:e}  {}  {:e}  {:e}",
                r.scale, r.max_deviation, r.double_pair, r.out_of_model_norm, r.truncation_estimate
            );
        }
        match self.exponent {
            Some(e) => {
                let _ = writeln!(
                    out,
                    "exponent {e}  window [{}, {}]  {}",
                    self.window[0],
                    self.window[1],
                    if self.pass { "PASS" } else { "FAIL" }
                );
            }
            None => out.push_str("exponent undefined: every deviation is zero  FAIL\n"),
        }
        out
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CountOut {
    pub outcome: String,
    pub count: u64,
    pub expected_probability: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SampleReport {
    pub bell: String,
    pub epsilon: Cx,
    pub efficiency: f64,
    pub shots: u64,
    pub seed: u64,
    pub counts: Vec<CountOut>,
    pub heralded_outcome: String,
    pub coincidence_rate: f64,
    pub expected_rate: f64,
    /// `(count - n p) / sqrt(n p (1 - p))` for the heralded outcome.
    pub z_score: Option<f64>,
}

impl Render for SampleReport {
    fn text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(
            out,
            "bell {}  epsilon {}  efficiency {}  shots {}  seed {}",
            self.bell, self.epsilon, self.efficiency, self.shots, self.seed
        );
        for c in &self.counts {
            let _ = writeln!(out, "  {:<6} {}  (p = {})", c.outcome, c.count, c.expected_probability);
        }
        let _ = writeln!(
            out,
            "heralded {}  coincidence rate {}  expected {}",
            self.heralded_outcome, self.coincidence_rate, self.expected_rate
        );
        match self.z_score {
            Some(z) => {
                let _ = writeln!(out, "z {z}");
            }
            None => out.push_str("z undefined\n"),
        }
        out
    }
}
