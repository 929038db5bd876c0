//! Canonical JSON formats. Keys are emitted sorted and polynomials in their canonical text
//! form, so serializing a parsed file reproduces it byte for byte.

use std::collections::BTreeMap;

use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};

use crate::connection::{ConnectionChart, MatrixJet};
use crate::error::{JetError, Result};
use crate::hodge::{FlagChart, FlagJet};
use crate::jet_algebra::{JetPoint, TruncatedSeries};
use crate::jet_scheme::{AffineScheme, PolyMap, PolySystem};
use crate::linalg::Matrix;
use crate::poly::{parse_polynomial, Polynomial, RationalFunction};
use crate::rational::{self, Rational};

/// Pretty-printed JSON with sorted keys.
pub fn canonical<T: Serialize>(value: &T) -> String {
    let v = serde_json::to_value(value).expect("serializable");
    serde_json::to_string_pretty(&v).expect("serializable")
}

fn read<T: DeserializeOwned>(text: &str) -> Result<T> {
    serde_json::from_str(text).map_err(|e| JetError::Parse(e.to_string()))
}

#[derive(Serialize, Deserialize, Clone, Debug, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct RationalFunctionFile {
    pub num: String,
    pub den: String,
}

impl RationalFunctionFile {
    fn from_rf(f: &RationalFunction, names: &[String]) -> Self {
        RationalFunctionFile {
            num: f.numerator().to_text(names),
            den: f.denominator().to_text(names),
        }
    }

    fn to_rf(&self, names: &[String]) -> Result<RationalFunction> {
        RationalFunction::new(
            parse_polynomial(&self.num, names)?,
            parse_polynomial(&self.den, names)?,
        )
    }
}

/// Connection file. `connection[i][j][l]` is `c_{ij,l}` for `∇v^i = Σ_j c_ij v^j`.
#[derive(Serialize, Deserialize, Clone, Debug, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct ConnectionFile {
    pub n: usize,
    pub m: usize,
    pub weight: u32,
    pub filtration_dims: Vec<usize>,
    pub variables: Vec<String>,
    pub connection: Vec<Vec<Vec<RationalFunctionFile>>>,
    pub gram: Vec<Vec<RationalFunctionFile>>,
    pub polarization: Vec<Vec<i64>>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub examples: BTreeMap<String, Vec<String>>,
}

impl ConnectionFile {
    pub fn from_chart(chart: &ConnectionChart) -> Self {
        let names = chart.variables();
        let (n, m) = (chart.n(), chart.m());
        let q = chart.polarization();
        ConnectionFile {
            n,
            m,
            weight: chart.weight(),
            filtration_dims: chart.filtration_dims().to_vec(),
            variables: names.to_vec(),
            connection: (0..m)
                .map(|i| {
                    (0..m)
                        .map(|j| {
                            (0..n)
                                .map(|l| RationalFunctionFile::from_rf(chart.coeff(i, j, l), names))
                                .collect()
                        })
                        .collect()
                })
                .collect(),
            gram: (0..m)
                .map(|i| {
                    (0..m)
                        .map(|k| RationalFunctionFile::from_rf(chart.gram_entry(i, k), names))
                        .collect()
                })
                .collect(),
            polarization: (0..m)
                .map(|i| {
                    (0..m)
                        .map(|j| {
                            i64::try_from(q[(i, j)].to_integer())
                                .expect("small integral polarization")
                        })
                        .collect()
                })
                .collect(),
            examples: chart
                .basepoints()
                .iter()
                .map(|(k, v)| (k.clone(), v.iter().map(rational::format).collect()))
                .collect(),
        }
    }

    pub fn to_chart(&self) -> Result<ConnectionChart> {
        if self.variables.len() != self.n {
            return Err(JetError::Parse(format!(
                "\"n\" is {} but {} variables are listed",
                self.n,
                self.variables.len()
            )));
        }
        if self.connection.len() != self.m {
            return Err(JetError::Parse(format!(
                "\"m\" is {} but the connection has {} rows",
                self.m,
                self.connection.len()
            )));
        }
        let names = &self.variables;
        let coeffs = self
            .connection
            .iter()
            .map(|row| {
                row.iter()
                    .map(|e| e.iter().map(|f| f.to_rf(names)).collect::<Result<Vec<_>>>())
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        let gram = self
            .gram
            .iter()
            .map(|row| {
                row.iter()
                    .map(|f| f.to_rf(names))
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        let q: Vec<Vec<Rational>> = self
            .polarization
            .iter()
            .map(|row| row.iter().map(|&x| rational::int(x)).collect())
            .collect();
        let mut chart = ConnectionChart::new(
            names.clone(),
            self.weight,
            self.filtration_dims.clone(),
            coeffs,
            gram,
            Matrix::from_rows(q)?,
        )?;
        for (name, point) in &self.examples {
            let point = point
                .iter()
                .map(|s| rational::parse(s))
                .collect::<Result<Vec<_>>>()?;
            chart = chart.with_basepoint(name, point)?;
        }
        Ok(chart)
    }
}

pub fn chart_to_json(chart: &ConnectionChart) -> String {
    canonical(&ConnectionFile::from_chart(chart))
}

pub fn chart_from_json(text: &str) -> Result<ConnectionChart> {
    read::<ConnectionFile>(text)?.to_chart()
}

/// `{"variables": [...], "equations": [...]}`; used for schemes and polynomial systems.
#[derive(Serialize, Deserialize, Clone, Debug, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct SystemFile {
    pub variables: Vec<String>,
    pub equations: Vec<String>,
}

fn parse_all(texts: &[String], names: &[String]) -> Result<Vec<Polynomial>> {
    texts.iter().map(|t| parse_polynomial(t, names)).collect()
}

pub fn scheme_to_json(s: &AffineScheme) -> String {
    canonical(&SystemFile {
        variables: s.variables().to_vec(),
        equations: s
            .generators()
            .iter()
            .map(|g| g.to_text(s.variables()))
            .collect(),
    })
}

pub fn scheme_from_json(text: &str) -> Result<AffineScheme> {
    let f: SystemFile = read(text)?;
    AffineScheme::new(f.variables.clone(), parse_all(&f.equations, &f.variables)?)
}

pub fn system_to_json(s: &PolySystem) -> String {
    canonical(&SystemFile {
        variables: s.variables.clone(),
        equations: s.equation_texts(),
    })
}

pub fn system_from_json(text: &str) -> Result<PolySystem> {
    let f: SystemFile = read(text)?;
    Ok(PolySystem {
        equations: parse_all(&f.equations, &f.variables)?,
        variables: f.variables,
    })
}

/// `{"variables": [...], "components": [...]}`.
#[derive(Serialize, Deserialize, Clone, Debug, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct MapFile {
    pub variables: Vec<String>,
    pub components: Vec<String>,
}

pub fn map_to_json(g: &PolyMap) -> String {
    canonical(&MapFile {
        variables: g.variables.clone(),
        components: g.component_texts(),
    })
}

pub fn map_from_json(text: &str) -> Result<PolyMap> {
    let f: MapFile = read(text)?;
    PolyMap::new(f.variables.clone(), parse_all(&f.components, &f.variables)?)
}

/// `{"dims": d, "order": r, "series": [...]}` with series in `t1..td`.
#[derive(Serialize, Deserialize, Clone, Debug, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct JetFile {
    pub dims: usize,
    pub order: u32,
    pub series: Vec<String>,
}

pub fn jet_to_json(j: &JetPoint) -> String {
    canonical(&JetFile {
        dims: j.dims(),
        order: j.order(),
        series: j.series().iter().map(TruncatedSeries::to_text).collect(),
    })
}

pub fn jet_from_json(text: &str) -> Result<JetPoint> {
    let f: JetFile = read(text)?;
    JetPoint::new(
        f.series
            .iter()
            .map(|s| TruncatedSeries::parse(s, f.dims, f.order))
            .collect::<Result<Vec<_>>>()?,
    )
}

/// `{"dims", "order", "entries": [[...]]}`, entries row-major.
#[derive(Serialize, Deserialize, Clone, Debug, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct MatrixJetFile {
    pub dims: usize,
    pub order: u32,
    pub entries: Vec<Vec<String>>,
}

pub fn matrix_jet_to_json(f: &MatrixJet) -> String {
    canonical(&MatrixJetFile {
        dims: f.dims(),
        order: f.order(),
        entries: f
            .to_rows()
            .iter()
            .map(|row| row.iter().map(TruncatedSeries::to_text).collect())
            .collect(),
    })
}

pub fn matrix_jet_from_json(text: &str) -> Result<MatrixJet> {
    let f: MatrixJetFile = read(text)?;
    MatrixJet::from_rows(
        f.entries
            .iter()
            .map(|row| {
                row.iter()
                    .map(|s| TruncatedSeries::parse(s, f.dims, f.order))
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?,
    )
}

/// Pivot sets are cumulative per flag step and 1-based.
#[derive(Serialize, Deserialize, Clone, Debug, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct FlagChartFile {
    pub m: usize,
    pub steps: Vec<usize>,
    pub pivots: Vec<Vec<usize>>,
}

#[derive(Serialize, Deserialize, Clone, Debug, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct FlagJetFile {
    pub chart: FlagChartFile,
    pub dims: usize,
    pub order: u32,
    pub coords: BTreeMap<String, String>,
}

pub fn flag_jet_to_json(f: &FlagJet) -> String {
    let chart = f.chart();
    canonical(&FlagJetFile {
        chart: FlagChartFile {
            m: chart.m(),
            steps: chart.steps().to_vec(),
            pivots: (0..chart.steps().len())
                .map(|b| chart.pivot_set(b).iter().map(|i| i + 1).collect())
                .collect(),
        },
        dims: f.dims(),
        order: f.order(),
        coords: f
            .named_coords()
            .into_iter()
            .map(|(k, s)| (k, s.to_text()))
            .collect(),
    })
}

pub fn flag_jet_from_json(text: &str) -> Result<FlagJet> {
    let f: FlagJetFile = read(text)?;
    if f.chart.pivots.iter().flatten().any(|&i| i == 0) {
        return Err(JetError::Parse("pivot rows are 1-based".into()));
    }
    let sets: Vec<Vec<usize>> = f
        .chart
        .pivots
        .iter()
        .map(|s| s.iter().map(|i| i - 1).collect())
        .collect();
    let chart = FlagChart::new(f.chart.m, f.chart.steps.clone(), &sets)?;
    let names = chart.coordinate_names();
    if names.len() != f.coords.len() {
        return Err(JetError::Parse(format!(
            "chart has {} coordinates, file lists {}",
            names.len(),
            f.coords.len()
        )));
    }
    let coords = names
        .iter()
        .map(|name| {
            let text = f
                .coords
                .get(name)
                .ok_or_else(|| JetError::Parse(format!("missing coordinate {name}")))?;
            TruncatedSeries::parse(text, f.dims, f.order)
        })
        .collect::<Result<Vec<_>>>()?;
    FlagJet::new(chart, f.dims, f.order, coords)
}

/// A constant matrix as rows of rational strings.
pub fn matrix_to_json(m: &Matrix) -> String {
    let rows: Vec<Vec<String>> = m
        .to_rows()
        .iter()
        .map(|row| row.iter().map(rational::format).collect())
        .collect();
    canonical(&rows)
}

/// Accepts rows of rational strings or integers.
pub fn matrix_from_json(text: &str) -> Result<Matrix> {
    #[derive(Deserialize)]
    #[serde(untagged)]
    enum Entry {
        Int(i64),
        Text(String),
    }
    let rows: Vec<Vec<Entry>> = read(text)?;
    let rows = rows
        .into_iter()
        .map(|row| {
            row.into_iter()
                .map(|e| match e {
                    Entry::Int(i) => Ok(rational::int(i)),
                    Entry::Text(s) => rational::parse(&s),
                })
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<Vec<_>>>()?;
    Matrix::from_rows(rows)
}
