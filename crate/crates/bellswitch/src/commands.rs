//! The subcommands as plain functions returning report records.

use std::path::Path;

use bellswitch_core::circuits::{mapping_report, Device, CREATION_MAP};
use bellswitch_core::detection::{outcome_distribution, sample_shots, Outcome, IDENTIFY_PURITY};
use bellswitch_core::oracle::{error_scaling_study, generic_scaling_base};
use bellswitch_core::state::{as_bell, as_rectilinear, BellLabel, PairState, RectLabel};
use bellswitch_core::{Error, C64, EXACT_TOL};

use crate::doc::{Bell, CircuitDoc, InputDoc, Rect};
use crate::report::{
    AnalyzeReport, CountOut, Decomposition, DeviceTable, PrefactorOut, RowOut, RunReport, SampleReport, ScaleRow,
    StageOut, StateOut, TablesReport, ValidateReport, Verdict,
};
use crate::CliError;

pub const EXPONENT_WINDOW: [f64; 2] = [1.8, 2.2];

fn nonzero(epsilon: C64) -> Result<C64, CliError> {
    if epsilon == C64::new(0.0, 0.0) {
        Err(Error::ZeroEpsilon.into())
    } else {
        Ok(epsilon)
    }
}

pub fn run_doc(doc: &CircuitDoc) -> RunReport {
    let epsilon = C64::from(doc.epsilon);
    let input_state = doc.input.state(epsilon);
    let mut state = input_state;
    let stages = doc
        .stages()
        .iter()
        .enumerate()
        .map(|(i, stage)| {
            state = stage.apply(&state);
            StageOut {
                stage: i + 1,
                element: stage.describe(),
                state: StateOut::from(&state),
            }
        })
        .collect();
    RunReport {
        input: doc.input.describe(),
        epsilon: doc.epsilon,
        input_state: StateOut::from(&input_state),
        stages,
        final_state: StateOut::from(&state),
        bell: as_bell(&state.pairs, EXACT_TOL).map(|(l, c)| Decomposition {
            label: l.name().to_owned(),
            coefficient: c.into(),
        }),
        rectilinear: as_rectilinear(&state.pairs, EXACT_TOL).map(|(l, c)| Decomposition {
            label: l.name().to_owned(),
            coefficient: c.into(),
        }),
    }
}

pub fn creator_doc(input: RectLabel, epsilon: C64) -> CircuitDoc {
    CircuitDoc::device(Device::Creator, epsilon, InputDoc::Rectilinear { label: Rect(input) })
}

pub fn analyzer_doc(bell: BellLabel, epsilon: C64) -> CircuitDoc {
    CircuitDoc::device(Device::Analyzer, epsilon, InputDoc::Bell { label: Bell(bell) })
}

pub fn create(input: RectLabel, epsilon: C64) -> Result<RunReport, CliError> {
    Ok(run_doc(&creator_doc(input, nonzero(epsilon)?)))
}

pub fn run_file(path: &Path) -> Result<RunReport, CliError> {
    let text = std::fs::read_to_string(path).map_err(|source| CliError::Io {
        path: path.to_owned(),
        source,
    })?;
    Ok(run_doc(&CircuitDoc::parse(&text)?))
}

pub fn analyze(bell: BellLabel, epsilon: C64) -> Result<AnalyzeReport, CliError> {
    let doc = analyzer_doc(bell, nonzero(epsilon)?);
    let run = run_doc(&doc);
    let out = doc.stages().iter().fold(doc.input.state(epsilon), |s, st| st.apply(&s));
    let dist = outcome_distribution(&out, 1.0)?;
    let total = dist.coincidence_total();
    let verdict = Outcome::ALL[..4]
        .iter()
        .copied()
        .find(|o| total > 0.0 && dist.get(*o) >= IDENTIFY_PURITY * total)
        .map(|o| {
            let rect = o.rect().expect("coincidence outcome");
            Verdict {
                rectilinear: rect.name().to_owned(),
                outcome: o.name().to_owned(),
                probability: dist.get(o),
                unnormalized_probability: out.pair(rect).norm_sqr(),
            }
        });
    Ok(AnalyzeReport { run, verdict })
}

pub fn tables(epsilon: C64, tol: f64) -> Result<TablesReport, CliError> {
    if tol.is_nan() || tol <= 0.0 {
        return Err(CliError::Usage(format!("--tol must be positive, got {tol}")));
    }
    let epsilon = nonzero(epsilon)?;
    let mut tables = Vec::new();
    for which in [Device::Creator, Device::Analyzer] {
        let r = mapping_report(which, epsilon, tol)?;
        tables.push(DeviceTable {
            device: which.name().to_owned(),
            rows: r
                .rows
                .iter()
                .map(|row| RowOut {
                    input: row.entry.input_desc.clone(),
                    expected: row.entry.expected_desc.clone(),
                    computed: StateOut::from(&row.computed),
                    max_deviation: row.max_deviation,
                    pass: row.max_deviation <= tol,
                })
                .collect(),
            max_deviation: r.max_deviation(),
            pass: r.passed(),
            prefactor: r.prefactor.map(|p| PrefactorOut {
                closed_form_deviation: p.closed_form_deviation,
                sqrt2_prefactor_deviation: p.sqrt2_prefactor_deviation,
            }),
        });
    }
    let pass = tables.iter().all(|t| t.pass);
    Ok(TablesReport {
        epsilon: epsilon.into(),
        tol,
        tables,
        pass,
    })
}

/// Reference state for the scaling study.
#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum ScalingBase {
    /// `|0> + s(HH + HV + VH + VV)/2` with injection `+s`.
    Generic,
    /// `|0> + s|HH>` with the π injection `-2s`.
    PiHh,
}

impl ScalingBase {
    pub fn state(self) -> (PairState, C64) {
        match self {
            ScalingBase::Generic => generic_scaling_base(),
            ScalingBase::PiHh => (
                PairState::rectilinear(C64::new(1.0, 0.0), RectLabel::HH),
                C64::new(-2.0, 0.0),
            ),
        }
    }

    fn name(self) -> &'static str {
        match self {
            ScalingBase::Generic => "generic",
            ScalingBase::PiHh => "pi-hh",
        }
    }
}

pub fn validate(scales: &[f64], n_max: u8, base: ScalingBase) -> Result<ValidateReport, CliError> {
    let (state, mu) = base.state();
    let study = error_scaling_study(scales, &state, mu, n_max)?;
    let rows = study
        .rows
        .iter()
        .zip(&study.reports)
        .map(|(&(scale, max_deviation), r)| ScaleRow {
            scale,
            max_deviation,
            vacuum_deviation: r.vacuum_deviation,
            double_pair: r.double_pair.into(),
            out_of_model_norm: r.out_of_model_norm,
            truncation_estimate: r.truncation_estimate,
        })
        .collect();
    let pass = study
        .exponent
        .is_some_and(|e| (EXPONENT_WINDOW[0]..=EXPONENT_WINDOW[1]).contains(&e));
    Ok(ValidateReport {
        base: base.name().to_owned(),
        base_injection: mu.into(),
        n_max,
        rows,
        exponent: study.exponent,
        window: EXPONENT_WINDOW,
        pass,
    })
}

pub fn sample(bell: BellLabel, epsilon: C64, efficiency: f64, shots: u64, seed: u64) -> Result<SampleReport, CliError> {
    let doc = analyzer_doc(bell, nonzero(epsilon)?);
    let out = doc.stages().iter().fold(doc.input.state(epsilon), |s, st| st.apply(&s));
    let dist = outcome_distribution(&out, efficiency)?;
    let record = sample_shots(&dist, shots, seed);
    let (rect, _) = CREATION_MAP
        .iter()
        .copied()
        .find(|(_, b)| *b == bell)
        .expect("every Bell label is tabulated");
    let heralded = Outcome::from_rect(rect);
    let p = dist.get(heralded);
    let coincidences: u64 = Outcome::ALL[..4].iter().map(|o| record.count(*o)).sum();
    let n = shots as f64;
    let spread = (n * p * (1.0 - p)).sqrt();
    let z_score = (spread > 0.0).then(|| (record.count(heralded) as f64 - n * p) / spread);
    Ok(SampleReport {
        bell: bell.name().to_owned(),
        epsilon: epsilon.into(),
        efficiency,
        shots,
        seed,
        counts: Outcome::ALL
            .iter()
            .map(|o| CountOut {
                outcome: o.name().to_owned(),
                count: record.count(*o),
                expected_probability: dist.get(*o),
            })
            .collect(),
        heralded_outcome: heralded.name().to_owned(),
        coincidence_rate: if shots == 0 { 0.0 } else { coincidences as f64 / n },
        expected_rate: dist.coincidence_total(),
        z_score,
    })
}
