//! Batch runs behind the command line: configuration, tables and the
//! per-command drivers.
//!
//! Every table cell is a string. Numbers go through [`fmt15`] so the CSV and
//! JSON encodings of one run carry identical values.

use std::fmt;
use std::ops::RangeInclusive;
use std::path::PathBuf;
use std::str::FromStr;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::contour::{self, MAX_SAMPLES};
use crate::error::{Error, Result};
use crate::oracle::{self, OracleConfig};
use crate::phase::{coefficient_dump, WkbSeries, N_MAX};
use crate::series::{self, reduce_parameters, ProblemParams};
use crate::swkb::{self, SusyContext};

/// Gate on `|numeric − closed form|` for `n = 0`, `n = 1` and even `n`.
pub const CONTOUR_GATE_EVEN: f64 = 1e-6;
/// Gate on `|numeric|` for odd `n ≥ 3`.
pub const CONTOUR_GATE_ODD: f64 = 1e-8;
/// Gate on `|CBC integral − n_θ π|`.
pub const CBC_GATE: f64 = 1e-8;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Command {
    Quantize,
    Contour,
    Swkb,
    Oracle,
    Report,
    Coefficients,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum Format {
    #[default]
    Csv,
    Json,
}

impl FromStr for Format {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "csv" => Ok(Format::Csv),
            "json" => Ok(Format::Json),
            other => Err(format!("unknown format '{other}' (expected csv or json)")),
        }
    }
}

/// Inclusive integer range written `a..b`; a bare `a` means `a..a`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct IntRange {
    pub lo: u32,
    pub hi: u32,
}

impl IntRange {
    pub fn new(lo: u32, hi: u32) -> std::result::Result<Self, String> {
        if lo > hi {
            return Err(format!("empty range {lo}..{hi}"));
        }
        Ok(Self { lo, hi })
    }

    pub fn single(v: u32) -> Self {
        Self { lo: v, hi: v }
    }

    pub fn iter(&self) -> RangeInclusive<u32> {
        self.lo..=self.hi
    }
}

impl FromStr for IntRange {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        let parse = |t: &str| {
            t.trim()
                .parse::<u32>()
                .map_err(|_| format!("'{t}' is not a non-negative integer"))
        };
        match s.split_once("..") {
            Some((a, b)) => IntRange::new(parse(a)?, parse(b)?),
            None => Ok(IntRange::single(parse(s)?)),
        }
    }
}

impl fmt::Display for IntRange {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}..{}", self.lo, self.hi)
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct RunConfig {
    pub command: Command,
    pub m_range: IntRange,
    pub n_theta_range: IntRange,
    /// Replaces `n_theta_range` for `oracle`, `report` and `contour` when set.
    pub l_range: Option<IntRange>,
    pub order: usize,
    pub samples: usize,
    /// Agreement required of oracle and report rows.
    pub tolerance: f64,
    pub format: Format,
    pub out: Option<PathBuf>,
}

impl RunConfig {
    pub fn new(command: Command) -> Self {
        Self {
            command,
            m_range: IntRange::single(1),
            n_theta_range: IntRange::single(0),
            l_range: None,
            order: 4,
            samples: contour::DEFAULT_SAMPLES,
            tolerance: 1e-6,
            format: Format::Csv,
            out: None,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.m_range.lo < 1 {
            return Err(Error::config("m", "lower bound must be at least 1"));
        }
        if self.samples < 256 || !self.samples.is_multiple_of(2) || self.samples > MAX_SAMPLES {
            return Err(Error::config(
                "samples",
                format!(
                    "must be even and in 256..={MAX_SAMPLES}, got {}",
                    self.samples
                ),
            ));
        }
        if !(self.tolerance.is_finite() && self.tolerance > 0.0) {
            return Err(Error::config(
                "tolerance",
                "must be a positive finite number",
            ));
        }
        match self.command {
            Command::Contour if self.order > N_MAX => {
                return Err(Error::config("order", format!("must not exceed {N_MAX}")));
            }
            Command::Coefficients if self.order < 1 || self.order > N_MAX => {
                return Err(Error::config("order", format!("must lie in 1..={N_MAX}")));
            }
            _ => {}
        }
        if self.levels().is_empty() {
            return Err(Error::config(
                "l",
                "no level with l ≥ m in the requested ranges",
            ));
        }
        Ok(())
    }

    /// `(m, l)` pairs in row order.
    pub fn levels(&self) -> Vec<(u32, u32)> {
        let mut out = Vec::new();
        for m in self.m_range.iter() {
            match self.l_range {
                Some(lr) => out.extend(lr.iter().filter(|&l| l >= m).map(|l| (m, l))),
                None => out.extend(self.n_theta_range.iter().map(|n| (m, m + n))),
            }
        }
        out
    }
}

/// `%.15g`: 15 significant digits, trailing zeros dropped.
pub fn fmt15(x: f64) -> String {
    if x.is_nan() {
        return "NaN".into();
    }
    if x.is_infinite() {
        return if x > 0.0 { "inf".into() } else { "-inf".into() };
    }
    if x == 0.0 {
        return if x.is_sign_negative() {
            "-0".into()
        } else {
            "0".into()
        };
    }
    let sci = format!("{x:.14e}");
    let (mantissa, exp) = sci.split_once('e').expect("exponent present");
    let exp: i32 = exp.parse().expect("integer exponent");
    if !(-4..15).contains(&exp) {
        let mantissa = trim_zeros(mantissa);
        let sign = if exp < 0 { '-' } else { '+' };
        return format!("{mantissa}e{sign}{:02}", exp.abs());
    }
    let decimals = (14 - exp) as usize;
    trim_zeros(&format!("{x:.decimals$}")).to_string()
}

fn trim_zeros(s: &str) -> &str {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.')
    } else {
        s
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Table {
    pub columns: Vec<String>,
    pub rows: Vec<Vec<String>>,
}

impl Table {
    pub fn new(columns: &[&str]) -> Self {
        Self {
            columns: columns.iter().map(|c| c.to_string()).collect(),
            rows: Vec::new(),
        }
    }

    pub fn column(&self, name: &str) -> Option<usize> {
        self.columns.iter().position(|c| c == name)
    }

    /// Cell `name` of `row` parsed as a number.
    pub fn value(&self, row: usize, name: &str) -> Option<f64> {
        self.rows.get(row)?.get(self.column(name)?)?.parse().ok()
    }

    pub fn to_csv(&self) -> Result<String> {
        let mut w = csv::Writer::from_writer(Vec::new());
        let out = |e: csv::Error| Error::Output(e.to_string());
        w.write_record(&self.columns).map_err(out)?;
        for row in &self.rows {
            w.write_record(row).map_err(out)?;
        }
        let bytes = w.into_inner().map_err(|e| Error::Output(e.to_string()))?;
        String::from_utf8(bytes).map_err(|e| Error::Output(e.to_string()))
    }

    pub fn from_csv(text: &str) -> Result<Self> {
        let mut r = csv::Reader::from_reader(text.as_bytes());
        let out = |e: csv::Error| Error::Output(e.to_string());
        let columns = r.headers().map_err(out)?.iter().map(String::from).collect();
        let rows = r
            .records()
            .map(|rec| rec.map(|r| r.iter().map(String::from).collect()))
            .collect::<std::result::Result<_, _>>()
            .map_err(out)?;
        Ok(Self { columns, rows })
    }

    pub fn to_json(&self) -> Result<String> {
        let mut s = serde_json::to_string(self).map_err(|e| Error::Output(e.to_string()))?;
        s.push('\n');
        Ok(s)
    }

    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Output(e.to_string()))
    }

    pub fn render(&self, format: Format) -> Result<String> {
        match format {
            Format::Csv => self.to_csv(),
            Format::Json => self.to_json(),
        }
    }
}

/// What a command produced. A non-empty `failures` list means exit code 3.
#[derive(Clone, Debug, PartialEq)]
pub struct RunOutput {
    pub body: String,
    pub failures: Vec<String>,
}

/// Validates `cfg` and runs its command.
pub fn run(cfg: &RunConfig) -> Result<RunOutput> {
    cfg.validate()?;
    if cfg.command == Command::Coefficients {
        return Ok(RunOutput {
            body: run_coefficients(cfg)? + "\n",
            failures: Vec::new(),
        });
    }
    let (table, failures) = match cfg.command {
        Command::Quantize => (run_quantize(cfg)?, Vec::new()),
        Command::Contour => run_contour(cfg)?,
        Command::Swkb => run_swkb(cfg)?,
        Command::Oracle => run_oracle(cfg)?,
        Command::Report => run_report(cfg)?,
        Command::Coefficients => unreachable!(),
    };
    Ok(RunOutput {
        body: table.render(cfg.format)?,
        failures,
    })
}

fn grid_pairs(cfg: &RunConfig) -> Vec<(u32, u32)> {
    cfg.m_range
        .iter()
        .flat_map(|m| cfg.n_theta_range.iter().map(move |n| (m, n)))
        .collect()
}

pub fn run_quantize(cfg: &RunConfig) -> Result<Table> {
    let mut table = Table::new(&[
        "m",
        "n_theta",
        "N",
        "E_N",
        "lambda2_N",
        "lambda2_exact",
        "residual",
    ]);
    let blocks: Vec<Vec<Vec<String>>> = grid_pairs(cfg)
        .par_iter()
        .map(|&(m, n)| -> Result<Vec<Vec<String>>> {
            let p = ProblemParams::new(m, n)?;
            let row = |label: String, e: f64, l2: f64, exact: f64| {
                vec![
                    m.to_string(),
                    n.to_string(),
                    label,
                    fmt15(e),
                    fmt15(l2),
                    fmt15(exact),
                    fmt15((l2 - exact).abs()),
                ]
            };
            let mut rows = Vec::with_capacity(cfg.order + 3);
            for order in 0..=cfg.order {
                let r = series::partial_sum_energy::<f64>(&p, order)?;
                rows.push(row(order.to_string(), r.e, r.lambda2, r.lambda2_exact));
            }
            let s = series::summed_quantization::<f64>(&p);
            rows.push(row("summed".into(), s.e, s.lambda2, s.lambda2_exact));
            let t = series::torus_limit::<f64>(&p);
            rows.push(row("torus".into(), t + 0.25, t, s.lambda2_exact));
            Ok(rows)
        })
        .collect::<Result<_>>()?;
    table.rows = blocks.into_iter().flatten().collect();
    Ok(table)
}

/// Gate for `∮dσₙ`: returns the threshold on `|numeric − closed form|`.
pub fn contour_gate(n: usize) -> f64 {
    if n >= 3 && n % 2 == 1 {
        CONTOUR_GATE_ODD
    } else {
        CONTOUR_GATE_EVEN
    }
}

pub fn run_contour(cfg: &RunConfig) -> Result<(Table, Vec<String>)> {
    let series = WkbSeries::up_to(cfg.order.max(1));
    let mut table = Table::new(&[
        "n",
        "m",
        "l",
        "E",
        "U",
        "numeric",
        "closed_form",
        "abs_error",
        "samples_used",
    ]);
    let jobs: Vec<(u32, u32, usize)> = cfg
        .levels()
        .into_iter()
        .flat_map(|(m, l)| (0..=cfg.order).map(move |n| (m, l, n)))
        .collect();
    let results: Vec<(Vec<String>, Option<String>)> = jobs
        .par_iter()
        .map(|&(m, l, n)| -> Result<(Vec<String>, Option<String>)> {
            let lf = l as f64;
            let (u, e) = reduce_parameters(m, lf * (lf + 1.0));
            let rep = contour::integral_report(&series, n, e, u, cfg.samples)
                .map_err(|err| Error::GateFailure(format!("n={n}, m={m}, l={l}: {err}")))?;
            let closed = rep.closed_form.unwrap_or(f64::NAN);
            let err = rep.abs_error().unwrap_or(f64::NAN);
            let failure = (err.is_nan() || err >= contour_gate(n)).then(|| {
                format!(
                    "n={n}, m={m}, l={l}: |numeric − closed form| = {err:e} exceeds {:e}",
                    contour_gate(n)
                )
            });
            let row = vec![
                n.to_string(),
                m.to_string(),
                l.to_string(),
                fmt15(e),
                fmt15(u),
                fmt15(rep.numeric.value),
                fmt15(closed),
                fmt15(err),
                rep.numeric.samples.to_string(),
            ];
            Ok((row, failure))
        })
        .collect::<Result<_>>()?;
    let mut failures = Vec::new();
    for (row, failure) in results {
        table.rows.push(row);
        failures.extend(failure);
    }
    Ok((table, failures))
}

pub fn run_swkb(cfg: &RunConfig) -> Result<(Table, Vec<String>)> {
    let mut table = Table::new(&[
        "m",
        "n_theta",
        "e_minus",
        "lambda2_swkb",
        "lambda2_exact",
        "cbc_numeric",
        "cbc_target",
        "abs_error",
    ]);
    let results: Vec<(Vec<String>, Option<String>)> = grid_pairs(cfg)
        .par_iter()
        .map(|&(m, n)| -> Result<(Vec<String>, Option<String>)> {
            let ctx = SusyContext::new(m)?;
            let level = swkb::swkb_spectrum::<f64>(&ctx, n)?;
            let l = (m + n) as u64;
            let cbc = swkb::cbc_integral(&ctx, level.e_minus)?;
            let target = n as f64 * std::f64::consts::PI;
            let err = (cbc - target).abs();
            let mut failure = None;
            if level.lambda2_exact != l * (l + 1) {
                failure = Some(format!(
                    "m={m}, n_theta={n}: SWKB λ² {} ≠ {}",
                    level.lambda2_exact,
                    l * (l + 1)
                ));
            } else if !(err < CBC_GATE) {
                failure = Some(format!(
                    "m={m}, n_theta={n}: CBC error {err:e} exceeds {CBC_GATE:e}"
                ));
            }
            let row = vec![
                m.to_string(),
                n.to_string(),
                level.e_minus_exact.to_string(),
                level.lambda2_exact.to_string(),
                (l * (l + 1)).to_string(),
                fmt15(cbc),
                fmt15(target),
                fmt15(err),
            ];
            Ok((row, failure))
        })
        .collect::<Result<_>>()?;
    let mut failures = Vec::new();
    for (row, failure) in results {
        table.rows.push(row);
        failures.extend(failure);
    }
    Ok((table, failures))
}

pub fn run_oracle(cfg: &RunConfig) -> Result<(Table, Vec<String>)> {
    let ocfg = OracleConfig::<f64>::default();
    let mut table = Table::new(&[
        "m",
        "l",
        "E",
        "lambda2",
        "lambda2_exact",
        "abs_error",
        "node_count",
    ]);
    let results: Vec<(Vec<String>, Option<String>)> = cfg
        .levels()
        .par_iter()
        .map(|&(m, l)| -> Result<(Vec<String>, Option<String>)> {
            let r = oracle::solve_level(m, l, &ocfg)?;
            let exact = (l as u64 * (l as u64 + 1)) as f64;
            let err = (r.lambda2 - exact).abs();
            let failure = (!(err < cfg.tolerance)).then(|| {
                format!(
                    "m={m}, l={l}: oracle error {err:e} exceeds {:e}",
                    cfg.tolerance
                )
            });
            let row = vec![
                m.to_string(),
                l.to_string(),
                fmt15(r.e),
                fmt15(r.lambda2),
                fmt15(exact),
                fmt15(err),
                r.node_count.to_string(),
            ];
            Ok((row, failure))
        })
        .collect::<Result<_>>()?;
    let mut failures = Vec::new();
    for (row, failure) in results {
        table.rows.push(row);
        failures.extend(failure);
    }
    Ok((table, failures))
}

/// One row of the cross-method comparison.
#[derive(Clone, Debug, PartialEq)]
pub struct SpectrumRow {
    pub m: u32,
    pub l: u32,
    pub exact: f64,
    pub torus: f64,
    pub wkb_n: Result<f64>,
    pub wkb_summed: f64,
    pub swkb: Result<f64>,
    pub oracle: Result<f64>,
}

impl SpectrumRow {
    pub fn compute(m: u32, l: u32, order: usize, ocfg: &OracleConfig<f64>) -> Result<Self> {
        let p = ProblemParams::new(
            m,
            l.checked_sub(m)
                .ok_or_else(|| Error::domain("need l ≥ m"))?,
        )?;
        let swkb = SusyContext::new(m)
            .and_then(|ctx| swkb::swkb_spectrum::<f64>(&ctx, p.n_theta()))
            .map(|lev| lev.lambda2);
        Ok(Self {
            m,
            l,
            exact: p.lambda2_exact(),
            torus: series::torus_limit(&p),
            wkb_n: series::partial_sum_energy::<f64>(&p, order).map(|r| r.lambda2),
            wkb_summed: series::summed_quantization::<f64>(&p).lambda2,
            swkb,
            oracle: oracle::solve_level(m, l, ocfg).map(|r| r.lambda2),
        })
    }

    /// Largest deviation from `l(l + 1)` among summed WKB, SWKB and oracle.
    pub fn max_abs_error(&self) -> f64 {
        let mut worst = (self.wkb_summed - self.exact).abs();
        for v in [&self.swkb, &self.oracle] {
            match v {
                Ok(x) => worst = worst.max((x - self.exact).abs()),
                Err(_) => return f64::NAN,
            }
        }
        worst
    }

    /// Largest pairwise difference among summed WKB, SWKB and oracle.
    pub fn spread(&self) -> f64 {
        let (Ok(s), Ok(o)) = (&self.swkb, &self.oracle) else {
            return f64::NAN;
        };
        let vals = [self.wkb_summed, *s, *o];
        let hi = vals.iter().copied().fold(f64::NEG_INFINITY, f64::max);
        let lo = vals.iter().copied().fold(f64::INFINITY, f64::min);
        hi - lo
    }

    pub fn status(&self, tolerance: f64) -> String {
        for (name, v) in [
            ("wkb_N", &self.wkb_n),
            ("swkb", &self.swkb),
            ("oracle", &self.oracle),
        ] {
            if let Err(e) = v {
                return format!("error: {name}: {e}");
            }
        }
        let err = self.max_abs_error();
        if err < tolerance {
            "ok".into()
        } else {
            format!("fail: max_abs_error {err:e} exceeds {tolerance:e}")
        }
    }
}

pub fn run_report(cfg: &RunConfig) -> Result<(Table, Vec<String>)> {
    let ocfg = OracleConfig::<f64>::default();
    let mut table = Table::new(&[
        "m",
        "l",
        "lambda2_exact",
        "lambda2_torus",
        "lambda2_wkb_N",
        "lambda2_wkb_summed",
        "lambda2_swkb",
        "lambda2_oracle",
        "max_abs_error",
        "status",
    ]);
    let rows: Vec<SpectrumRow> = cfg
        .levels()
        .par_iter()
        .map(|&(m, l)| SpectrumRow::compute(m, l, cfg.order, &ocfg))
        .collect::<Result<_>>()?;
    let cell = |v: &Result<f64>| v.as_ref().map_or_else(|_| fmt15(f64::NAN), |x| fmt15(*x));
    let mut failures = Vec::new();
    for r in &rows {
        let status = r.status(cfg.tolerance);
        if status != "ok" {
            failures.push(format!("m={}, l={}: {status}", r.m, r.l));
        }
        table.rows.push(vec![
            r.m.to_string(),
            r.l.to_string(),
            fmt15(r.exact),
            fmt15(r.torus),
            cell(&r.wkb_n),
            fmt15(r.wkb_summed),
            cell(&r.swkb),
            cell(&r.oracle),
            fmt15(r.max_abs_error()),
            status,
        ]);
    }
    Ok((table, failures))
}

/// JSON dump of `C_{n,l}` for `n = 1..=order`.
pub fn run_coefficients(cfg: &RunConfig) -> Result<String> {
    let series = WkbSeries::up_to(cfg.order);
    coefficient_dump(&series.canonical_table()?)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fmt15_matches_printf_g() {
        assert_eq!(fmt15(2.0), "2");
        assert_eq!(fmt15(0.25), "0.25");
        assert_eq!(fmt15(1.0 / 3.0), "0.333333333333333");
        assert_eq!(fmt15(-std::f64::consts::PI), "-3.14159265358979");
        assert_eq!(fmt15(123456789012345.0), "123456789012345");
        assert_eq!(fmt15(1234567890123456.0), "1.23456789012346e+15");
        assert_eq!(fmt15(1e-5), "1e-05");
        assert_eq!(fmt15(1.5e-4), "0.00015");
        assert_eq!(fmt15(2.5e-12), "2.5e-12");
        assert_eq!(fmt15(0.0), "0");
        assert_eq!(fmt15(f64::NAN), "NaN");
        assert_eq!(fmt15(9.9999999999999999), "10");
    }

    #[test]
    fn ranges() {
        assert_eq!(
            "1..3".parse::<IntRange>().unwrap(),
            IntRange { lo: 1, hi: 3 }
        );
        assert_eq!("4".parse::<IntRange>().unwrap(), IntRange::single(4));
        assert!("3..1".parse::<IntRange>().is_err());
        assert!("a..1".parse::<IntRange>().is_err());
        assert!("-1..1".parse::<IntRange>().is_err());
    }

    #[test]
    fn config_validation_names_the_field() {
        let mut cfg = RunConfig::new(Command::Quantize);
        cfg.m_range = IntRange::single(0);
        assert!(matches!(cfg.validate(), Err(Error::InvalidConfig { field, .. }) if field == "m"));
        let mut cfg = RunConfig::new(Command::Contour);
        cfg.order = N_MAX + 1;
        assert!(
            matches!(cfg.validate(), Err(Error::InvalidConfig { field, .. }) if field == "order")
        );
        let mut cfg = RunConfig::new(Command::Oracle);
        cfg.m_range = IntRange::new(3, 4).unwrap();
        cfg.l_range = Some(IntRange::new(1, 2).unwrap());
        assert!(matches!(cfg.validate(), Err(Error::InvalidConfig { field, .. }) if field == "l"));
        let mut cfg = RunConfig::new(Command::Report);
        cfg.samples = 255;
        assert!(cfg.validate().is_err());
    }

    #[test]
    fn levels_from_l_or_n_theta() {
        let mut cfg = RunConfig::new(Command::Report);
        cfg.m_range = IntRange::new(1, 2).unwrap();
        cfg.n_theta_range = IntRange::new(0, 1).unwrap();
        assert_eq!(cfg.levels(), vec![(1, 1), (1, 2), (2, 2), (2, 3)]);
        cfg.l_range = Some(IntRange::new(1, 2).unwrap());
        assert_eq!(cfg.levels(), vec![(1, 1), (1, 2), (2, 2)]);
    }

    #[test]
    fn quantize_rows() {
        let mut cfg = RunConfig::new(Command::Quantize);
        cfg.order = 3;
        let t = run_quantize(&cfg).unwrap();
        assert_eq!(t.rows.len(), 6);
        assert_eq!(t.rows[3][2], "3");
        assert!((t.value(3, "lambda2_N").unwrap() - 2.0010).abs() < 1e-4);
        assert_eq!(t.rows[4][2], "summed");
        assert_eq!(t.value(4, "lambda2_N"), Some(2.0));
        assert_eq!(t.rows[5][2], "torus");
        assert_eq!(t.value(5, "residual"), Some(0.25));
    }

    #[test]
    fn table_round_trips() {
        let mut cfg = RunConfig::new(Command::Quantize);
        cfg.m_range = IntRange::new(1, 2).unwrap();
        let t = run_quantize(&cfg).unwrap();
        assert_eq!(Table::from_json(&t.to_json().unwrap()).unwrap(), t);
        assert_eq!(Table::from_csv(&t.to_csv().unwrap()).unwrap(), t);
        assert!(!t.to_csv().unwrap().contains('\r'));
    }

    #[test]
    fn swkb_rows() {
        let mut cfg = RunConfig::new(Command::Swkb);
        cfg.n_theta_range = IntRange::new(0, 2).unwrap();
        let (t, failures) = run_swkb(&cfg).unwrap();
        assert!(failures.is_empty(), "{failures:?}");
        assert_eq!(t.rows[1][2], "4");
        assert_eq!(t.rows[1][3], "6");
        assert_eq!(t.rows[2][2], "10");
    }

    #[test]
    fn coefficient_command() {
        let mut cfg = RunConfig::new(Command::Coefficients);
        cfg.order = 2;
        let out = run(&cfg).unwrap();
        assert!(out.body.contains("\"wPow\": -5"));
        cfg.order = 0;
        assert!(run(&cfg).is_err());
    }
}
