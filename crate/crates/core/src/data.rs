//! Headered CSV readers for the datasets each model accepts.
//!
//! Columns are located by name, so their order is free and extra columns are
//! ignored. Every required cell must parse as a finite number.

use std::fs::File;
use std::io::Read;
use std::path::Path;

use crate::error::{Error, Result};
use crate::models::linear_or::RegressionData;
use crate::models::mvn_ball::{MvnSample, Vec5, DIM};
use crate::models::normal_mean::UnivariateSample;
use crate::models::nuisance::SimpleRegressionData;
use crate::models::ModelId;

/// Reads the named columns of a headered CSV, returning one vector per
/// requested column in the order given.
pub fn read_columns<R: Read>(reader: R, columns: &[&str]) -> Result<Vec<Vec<f64>>> {
    let mut rdr = csv::ReaderBuilder::new()
        .trim(csv::Trim::All)
        .comment(Some(b'#'))
        .from_reader(reader);
    let headers = rdr.headers()?.clone();
    let mut index = Vec::with_capacity(columns.len());
    for &name in columns {
        let mut hits = headers.iter().enumerate().filter(|(_, h)| *h == name);
        match (hits.next(), hits.next()) {
            (Some((i, _)), None) => index.push(i),
            (None, _) => return Err(Error::Schema(format!("missing column `{name}`"))),
            (Some(_), Some(_)) => return Err(Error::Schema(format!("duplicate column `{name}`"))),
        }
    }
    let mut out = vec![Vec::new(); columns.len()];
    for (row, record) in rdr.records().enumerate() {
        let record = record?;
        for ((&i, &name), col) in index.iter().zip(columns).zip(out.iter_mut()) {
            let cell = record.get(i).unwrap_or("");
            let value: f64 = cell.parse().map_err(|_| {
                Error::Schema(format!(
                    "row {}: column `{name}` is not a number: `{cell}`",
                    row + 1
                ))
            })?;
            if !value.is_finite() {
                return Err(Error::Schema(format!(
                    "row {}: column `{name}` is not finite",
                    row + 1
                )));
            }
            col.push(value);
        }
    }
    Ok(out)
}

fn take<const K: usize>(cols: Vec<Vec<f64>>) -> [Vec<f64>; K] {
    cols.try_into().expect("column count matches request")
}

pub fn parse_interval<R: Read>(reader: R) -> Result<UnivariateSample> {
    let [y] = take(read_columns(reader, ModelId::Interval.columns())?);
    UnivariateSample::new(y)
}

pub fn parse_or_null<R: Read>(reader: R) -> Result<RegressionData> {
    let [x1, x2, y] = take(read_columns(reader, ModelId::OrNull.columns())?);
    RegressionData::new(x1, x2, y)
}

pub fn parse_nuisance<R: Read>(reader: R) -> Result<SimpleRegressionData> {
    let [x, y] = take(read_columns(reader, ModelId::Nuisance.columns())?);
    SimpleRegressionData::new(x, y)
}

pub fn parse_ball<R: Read>(reader: R) -> Result<MvnSample> {
    let cols: [Vec<f64>; DIM] = take(read_columns(reader, ModelId::Ball.columns())?);
    let rows = (0..cols[0].len())
        .map(|i| -> Vec5 { std::array::from_fn(|k| cols[k][i]) })
        .collect();
    MvnSample::new(rows)
}

/// A parsed dataset for any model.
#[derive(Debug, Clone, PartialEq)]
pub enum Dataset {
    Interval(UnivariateSample),
    OrNull(RegressionData),
    Nuisance(SimpleRegressionData),
    Ball(MvnSample),
}

impl Dataset {
    pub fn model(&self) -> ModelId {
        match self {
            Dataset::Interval(_) => ModelId::Interval,
            Dataset::OrNull(_) => ModelId::OrNull,
            Dataset::Nuisance(_) => ModelId::Nuisance,
            Dataset::Ball(_) => ModelId::Ball,
        }
    }
}

pub fn parse_dataset<R: Read>(model: ModelId, reader: R) -> Result<Dataset> {
    Ok(match model {
        ModelId::Interval => Dataset::Interval(parse_interval(reader)?),
        ModelId::OrNull => Dataset::OrNull(parse_or_null(reader)?),
        ModelId::Nuisance => Dataset::Nuisance(parse_nuisance(reader)?),
        ModelId::Ball => Dataset::Ball(parse_ball(reader)?),
    })
}

pub fn read_dataset(model: ModelId, path: impl AsRef<Path>) -> Result<Dataset> {
    parse_dataset(model, File::open(path)?)
}
