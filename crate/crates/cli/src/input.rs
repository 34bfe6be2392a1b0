//! Parsing of `--input` function specifications.

use std::path::Path;

use booth_core::class::{construct_member, extremal_f0, koebe, BlaschkeSchwarz};
use booth_core::{BoothParameter, TruncatedSeries};
use num_complex::Complex64;

use crate::CliError;

/// A function to certify or tabulate.
#[derive(Clone, Debug, PartialEq)]
pub enum InputSpec {
    F0,
    Koebe,
    Identity,
    /// `blaschke:ξr,ξi;β1r,β1i;...`, expanded with `construct_member`.
    Blaschke(BlaschkeSchwarz),
    File(String),
}

impl InputSpec {
    pub fn parse(text: &str) -> Result<Self, CliError> {
        match text {
            "f0" => Ok(Self::F0),
            "koebe" => Ok(Self::Koebe),
            "identity" => Ok(Self::Identity),
            _ => match text.strip_prefix("blaschke:") {
                Some(rest) => parse_blaschke(rest).map(Self::Blaschke),
                None => Ok(Self::File(text.to_string())),
            },
        }
    }

    /// Builds the series. File inputs keep their own order.
    pub fn build(&self, p: BoothParameter, order: usize) -> Result<TruncatedSeries, CliError> {
        Ok(match self {
            Self::F0 => extremal_f0(p, order)?,
            Self::Koebe => koebe(order),
            Self::Identity => TruncatedSeries::identity(order),
            Self::Blaschke(w) => construct_member(p, &w.spec(order)?)?,
            Self::File(path) => read_series(Path::new(path))?,
        })
    }
}

fn parse_complex(text: &str) -> Result<Complex64, CliError> {
    let parts: Vec<&str> = text.split(',').map(str::trim).collect();
    let num = |s: &str| s.parse::<f64>().map_err(|_| CliError::Usage(format!("bad number '{s}' in '{text}'")));
    match parts.as_slice() {
        [re] => Ok(Complex64::new(num(re)?, 0.0)),
        [re, im] => Ok(Complex64::new(num(re)?, num(im)?)),
        _ => Err(CliError::Usage(format!("expected 're' or 're,im', got '{text}'"))),
    }
}

fn parse_blaschke(text: &str) -> Result<BlaschkeSchwarz, CliError> {
    let mut values = text.split(';').filter(|s| !s.trim().is_empty()).map(parse_complex);
    let xi = values.next().ok_or_else(|| CliError::Usage("blaschke spec needs at least ξ".into()))??;
    let zeros = values.collect::<Result<Vec<_>, _>>()?;
    BlaschkeSchwarz::new(xi, zeros).map_err(CliError::from)
}

/// Parses `re` or `re,im` (used for `--mu`).
pub fn parse_mu(text: &str) -> Result<Complex64, String> {
    parse_complex(text).map_err(|e| e.to_string())
}

pub fn read_series(path: &Path) -> Result<TruncatedSeries, CliError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::Usage(format!("cannot read series file {}: {e}", path.display())))?;
    Ok(TruncatedSeries::from_document(&text)?)
}
