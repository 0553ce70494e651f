use std::path::PathBuf;

use anyhow::{bail, Context};
use clap::{Args, ValueEnum};
use garnier::complex::CxJson;
use garnier::garnier::{Params, SolutionId};
use garnier::ode::LimitStage;
use garnier::C64;

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum Stage {
    First,
    Second,
    Third,
}

impl From<Stage> for LimitStage {
    fn from(s: Stage) -> Self {
        match s {
            Stage::First => LimitStage::First,
            Stage::Second => LimitStage::Second,
            Stage::Third => LimitStage::Third,
        }
    }
}

/// Options shared by every subcommand.
#[derive(Args, Clone, Debug)]
pub struct RunConfig {
    /// Parameter tuple: inline JSON (starting with `{`) or a path to a JSON file.
    #[arg(long, global = true)]
    pub params: Option<String>,
    /// Seed of the parameter sampler, used when --params is absent.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Solution number.
    #[arg(long, global = true, default_value_t = 1, value_parser = clap::value_parser!(u8).range(1..=8))]
    pub solution: u8,
    /// Truncation order of the series.
    #[arg(long, global = true, default_value_t = 6, value_parser = clap::value_parser!(u32).range(1..))]
    pub order: u32,
    /// Residual tolerance of `verify`.
    #[arg(long, global = true, default_value_t = 1e-9, value_parser = positive)]
    pub tol_series: f64,
    /// Identity tolerance; defaults to 1e-10 for closed forms and 1e-6 for loops.
    #[arg(long, global = true, value_parser = positive)]
    pub tol_monodromy: Option<f64>,
    /// Limit stage for the limit-equation commands.
    #[arg(long, global = true, value_enum, default_value_t = Stage::Second)]
    pub equation: Stage,
    /// Write the report here instead of standard output.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
}

fn positive(s: &str) -> Result<f64, String> {
    match s.parse::<f64>() {
        Ok(v) if v > 0.0 && v.is_finite() => Ok(v),
        _ => Err(format!("`{s}` is not a positive number")),
    }
}

impl RunConfig {
    pub fn solution_id(&self) -> SolutionId {
        SolutionId::new(self.solution).expect("range checked by clap")
    }

    pub fn order(&self) -> usize {
        self.order as usize
    }

    /// Explicit tuple if given, otherwise a seeded draw.
    pub fn load_params(&self) -> anyhow::Result<Params> {
        match &self.params {
            Some(src) => parse_params(src),
            None => Ok(garnier::pipeline::sample_params(self.seed)?),
        }
    }
}

/// Accepts `alphaInf` or derives it from the Fuchs relation.
pub fn parse_params(src: &str) -> anyhow::Result<Params> {
    let text = if src.trim_start().starts_with('{') {
        src.to_string()
    } else {
        std::fs::read_to_string(src).with_context(|| format!("reading parameters from {src}"))?
    };
    let v: serde_json::Value = serde_json::from_str(&text).context("parameters are not valid JSON")?;
    let get = |k: &str| -> anyhow::Result<Option<C64>> {
        match v.get(k) {
            None => Ok(None),
            Some(x) => Ok(Some(serde_json::from_value::<CxJson>(x.clone()).with_context(|| format!("field {k}"))?.into())),
        }
    };
    let need = |k: &str| -> anyhow::Result<C64> {
        match get(k)? {
            Some(z) => Ok(z),
            None => bail!("missing parameter {k}"),
        }
    };
    let mut p = Params::from_fuchs(need("alpha0")?, need("alpha1")?, need("alpha2")?, need("nu")?, need("eta")?);
    if let Some(ai) = get("alphaInf")?.or(get("alpha_inf")?) {
        p.alpha_inf = ai;
    }
    Ok(p)
}
