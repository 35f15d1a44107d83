//! Figure data: information against a single parameter.

use std::fmt::Write as _;
use std::process::ExitCode;

use clap::{Args, ValueEnum};
use photodist_core::entropy::{
    block_entropies_of, hermite_inequality, poisson_information_closed_form, poisson_residue_information_trig,
    q_coherent_information,
};
use photodist_core::photon_dist::adaptive;
use photodist_core::{
    deformed_distribution, pn_hermite, DeformationSpec, OneModeGaussianState, PartitionScheme, PhotonDistribution,
};
use rayon::prelude::*;
use serde_json::json;

use crate::error::CliError;
use crate::output::{emit, f, json_f, json_text};
use crate::{Common, Format};

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Measure {
    /// Residue-class entropy H(2), computed from the distribution
    #[default]
    Residue,
    /// Closed-form expression for the same curve
    ClosedForm,
    /// H(1) + H(2) - H(12)
    Mutual,
}

#[derive(Args, Debug, Clone)]
pub struct FigureArgs {
    /// 1: Poisson pairs, 2: Poisson residues mod 3, 3: q-coherent, 4: squeezed vacuum
    #[arg(long)]
    pub fig: u8,

    #[arg(long, value_enum, default_value_t = Measure::Residue)]
    pub measure: Measure,

    #[arg(long)]
    pub min: Option<f64>,
    #[arg(long)]
    pub max: Option<f64>,
    #[arg(long)]
    pub step: Option<f64>,

    /// q-coherent deformation for --fig 3
    #[arg(long, default_value_t = 2.0)]
    pub lambda: f64,
}

/// (parameter name, min, max, step, first grid point skipped)
fn defaults(fig: u8) -> Result<(&'static str, f64, f64, f64, bool), CliError> {
    match fig {
        1 | 2 => Ok(("x_bar", 0.0, 10.0, 0.05, false)),
        3 => Ok(("alpha", 0.0, 2.0, 0.02, true)),
        4 => Ok(("r", 0.0, 3.0, 0.02, false)),
        _ => Err(CliError::Config(format!("unknown figure id {fig} (expected 1, 2, 3 or 4)"))),
    }
}

fn distribution(
    common: &Common,
    mut compute: impl FnMut(usize) -> photodist_core::Result<PhotonDistribution>,
) -> Result<Vec<f64>, CliError> {
    let d = match common.n_max {
        Some(n) => compute(n)?,
        None => adaptive(compute)?,
    };
    Ok(d.real_values())
}

fn point(common: &Common, args: &FigureArgs, v: f64) -> Result<f64, CliError> {
    let m = if args.fig == 2 { 3 } else { 2 };
    let scheme = PartitionScheme::new(m)?;
    if args.measure == Measure::ClosedForm {
        return Ok(match args.fig {
            1 => poisson_information_closed_form(v),
            2 => poisson_residue_information_trig(v),
            3 => {
                let spec = DeformationSpec::q_coherent(v * v, args.lambda);
                let n = match common.n_max {
                    Some(n) => n,
                    None => adaptive(|n| deformed_distribution(&spec, n))?.truncation(),
                };
                q_coherent_information(v * v, args.lambda, n)?.lhs
            }
            _ => {
                let state = OneModeGaussianState::squeezed_vacuum(v);
                let n = match common.n_max {
                    Some(n) => n,
                    None => adaptive(|n| pn_hermite(&state, n))?.truncation(),
                };
                hermite_inequality(&state, n)?.margin
            }
        });
    }
    let values = match args.fig {
        1 | 2 => distribution(common, |n| deformed_distribution(&DeformationSpec::poisson(v), n))?,
        3 => distribution(common, |n| deformed_distribution(&DeformationSpec::q_coherent(v * v, args.lambda), n))?,
        _ => {
            let state = OneModeGaussianState::squeezed_vacuum(v);
            distribution(common, |n| pn_hermite(&state, n))?
        }
    };
    let r = block_entropies_of(&values, scheme);
    Ok(match args.measure {
        Measure::Mutual => r.information,
        _ => r.h_sub2,
    })
}

pub fn figures(common: &Common, args: &FigureArgs) -> Result<ExitCode, CliError> {
    let (name, min0, max0, step0, skip_first) = defaults(args.fig)?;
    let (min, max, step) = (args.min.unwrap_or(min0), args.max.unwrap_or(max0), args.step.unwrap_or(step0));
    if !(step > 0.0 && min.is_finite() && max.is_finite() && max >= min && min >= 0.0) {
        return Err(CliError::Config("figure range needs 0 <= min <= max and step > 0".into()));
    }
    let count = ((max - min) / step + 1e-9).floor() as usize;
    let start = usize::from(skip_first && args.min.is_none());
    let params: Vec<f64> = (start..=count).map(|k| min + k as f64 * step).collect();
    let values: Vec<f64> = params
        .par_iter()
        .map(|&v| point(common, args, v))
        .collect::<Result<_, _>>()?;

    let text = match common.format {
        Format::Csv => {
            let mut out = format!("{name},information\n");
            for (p, i) in params.iter().zip(&values) {
                let _ = writeln!(out, "{},{}", f(*p), f(*i));
            }
            out
        }
        Format::Json => {
            let rows: Vec<_> = params
                .iter()
                .zip(&values)
                .map(|(p, i)| json!({ name: json_f(*p), "information": json_f(*i) }))
                .collect();
            json_text(&json!({ "figure": args.fig, "rows": rows }))
        }
    };
    emit(common, &text)?;
    Ok(ExitCode::SUCCESS)
}
