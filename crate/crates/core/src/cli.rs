//! Command-line front end: one structured input document per job, exact
//! `key = value` reports (or JSON), distinct exit codes per failure kind.

use std::ffi::OsString;
use std::fmt::Write as _;
use std::io::{Read, Write};
use std::path::PathBuf;

use clap::{Parser, ValueEnum};
use num_bigint::BigInt;
use serde::Deserialize;
use serde_json::{json, Map, Value};

use crate::exactnum::{
    format_rational, parse_rational, set_precision_cap, AlgScalar, LogLinear, Rational,
};
use crate::heights::{
    adelic_weights, chow_bezout, chow_weight, chow_weight_hypersurface, chow_weights, cycle_degree,
    essential_minimum, height_bezout, height_degree_bounds, hypersurface_minima,
    monomial_intersection, multiheight, normalized_height, point_height, successive_minima,
    zhang_check, zhang_family, ZhangParameters,
};
use crate::lattice::format_vec;
use crate::roof::roof;
use crate::toric::{
    compare_embeddings, degree, f_a_integral, from_binomial_ideal, ideal_generators,
    minkowski_sandwich, multidegree, obstruction_indices, pluecker, reduce_to_full_rank,
    segre_degree, BinomialIdeal, ExponentConfig, ToricData,
};
use crate::{Error, Result};

pub const EXIT_OK: i32 = 0;
pub const EXIT_INPUT_INVALID: i32 = 2;
pub const EXIT_HYPOTHESIS: i32 = 3;
pub const EXIT_CHARACTER: i32 = 4;
pub const EXIT_PRECISION: i32 = 5;
pub const EXIT_ASSERTION: i32 = 6;

#[derive(Parser, Debug)]
#[command(
    name = "toric-arith",
    version,
    about = "Exact invariants of projective toric varieties"
)]
pub struct Cli {
    #[arg(value_enum)]
    pub command: Command,
    /// Input document (TOML, or JSON when it starts with `{`); stdin when absent or `-`
    pub input: Option<PathBuf>,
    /// Print the report as JSON
    #[arg(long)]
    pub json: bool,
    /// Fractional digits of decimal approximations
    #[arg(long, default_value_t = 20)]
    pub digits: usize,
    /// Precision cap in bits for certified sign decisions
    #[arg(long)]
    pub precision_cap: Option<u32>,
    /// Write the roof subdivision cells as CSV (chow-weight only)
    #[arg(long)]
    pub cells: Option<PathBuf>,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum Command {
    Degree,
    Multidegree,
    Kernel,
    Ideal,
    FromIdeal,
    Obstruction,
    Sandwich,
    Pluecker,
    CompareEmbeddings,
    ChowWeight,
    ChowWeightHypersurface,
    Height,
    PointHeight,
    Multiheight,
    IntersectMonomial,
    BezoutDegree,
    BezoutChow,
    BezoutHeight,
    EssMin,
    Minima,
    ZhangCheck,
    ZhangFamily,
    Bounds,
}

impl Command {
    pub fn name(&self) -> String {
        self.to_possible_value()
            .expect("no skipped variants")
            .get_name()
            .to_string()
    }
}

/// A number given either as a bare integer or as a string in the exact grammar.
#[derive(Deserialize, Debug, Clone, PartialEq)]
#[serde(untagged)]
pub enum Entry {
    Int(i64),
    Text(String),
}

impl Entry {
    fn text(&self) -> String {
        match self {
            Entry::Int(k) => k.to_string(),
            Entry::Text(s) => s.clone(),
        }
    }

    fn log_linear(&self) -> Result<LogLinear> {
        self.text().parse()
    }

    fn scalar(&self) -> Result<AlgScalar> {
        self.text().parse()
    }

    fn rational(&self) -> Result<Rational> {
        parse_rational(self.text().trim())
    }
}

#[derive(Deserialize, Debug, Clone, Default, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct Factor {
    pub exponents: Vec<Vec<i64>>,
    pub coefficients: Option<Vec<Entry>>,
}

#[derive(Deserialize, Debug, Clone, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct HypersurfaceInput {
    pub plus: Vec<i64>,
    pub minus: Vec<i64>,
    pub lambda: Entry,
}

/// Family targets, all as rational multiples of log 2.
#[derive(Deserialize, Debug, Clone, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct FamilyInput {
    pub n: usize,
    pub mu: Vec<Entry>,
    pub nu: Entry,
    pub eps1: Entry,
    pub eps2: Entry,
}

#[derive(Deserialize, Debug, Clone, Default, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct Payload {
    pub exponents: Option<Vec<Vec<i64>>>,
    /// torus dimension, needed only when it cannot be read off the points
    pub dim: Option<usize>,
    pub coefficients: Option<Vec<Entry>>,
    pub tau: Option<Vec<Entry>>,
    pub b: Option<Vec<i64>>,
    pub c: Option<Vec<usize>>,
    pub factors: Option<Vec<Factor>>,
    /// second configuration of compare-embeddings
    pub other: Option<Vec<Vec<i64>>>,
    pub monomials: Option<Vec<Vec<i64>>>,
    /// lattice basis of from-ideal
    pub relations: Option<Vec<Vec<i64>>>,
    /// character values on `relations`
    pub values: Option<Vec<Entry>>,
    pub hypersurface: Option<HypersurfaceInput>,
    pub family: Option<FamilyInput>,
}

impl Payload {
    /// TOML, or JSON when the document starts with `{`.
    pub fn parse(text: &str) -> Result<Payload> {
        if text.trim_start().starts_with('{') {
            serde_json::from_str(text).map_err(|e| Error::InvalidInput(e.to_string()))
        } else {
            toml::from_str(text).map_err(|e| Error::InvalidInput(e.to_string()))
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct OutputOptions {
    pub json: bool,
    pub digits: usize,
    pub cells: Option<PathBuf>,
}

impl Default for OutputOptions {
    fn default() -> Self {
        OutputOptions {
            json: false,
            digits: 20,
            cells: None,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct JobSpec {
    pub command: Command,
    pub payload: Payload,
    pub options: OutputOptions,
}

#[derive(Debug, Clone, PartialEq)]
pub enum Field {
    Exact(LogLinear),
    Int(BigInt),
    Rational(Rational),
    Vector(Vec<BigInt>),
    Text(String),
    Bool(bool),
}

#[derive(Debug, Clone, Default, PartialEq)]
pub struct Report {
    pub fields: Vec<(String, Field)>,
}

impl Report {
    fn push(&mut self, key: impl Into<String>, f: Field) {
        self.fields.push((key.into(), f));
    }

    fn exact(&mut self, key: impl Into<String>, v: LogLinear) {
        self.push(key, Field::Exact(v));
    }

    fn int(&mut self, key: impl Into<String>, v: impl Into<BigInt>) {
        self.push(key, Field::Int(v.into()));
    }

    fn text(&mut self, key: impl Into<String>, v: impl ToString) {
        self.push(key, Field::Text(v.to_string()));
    }

    fn flag(&mut self, key: impl Into<String>, v: bool) {
        self.push(key, Field::Bool(v));
    }

    fn vector(&mut self, key: impl Into<String>, v: &[BigInt]) {
        self.push(key, Field::Vector(v.to_vec()));
    }

    pub fn get(&self, key: &str) -> Option<&Field> {
        self.fields.iter().find(|(k, _)| k == key).map(|(_, f)| f)
    }

    /// `key = value` lines; exact log values get a `.decimal` companion.
    pub fn render_text(&self, digits: usize) -> String {
        let mut out = String::new();
        for (k, f) in &self.fields {
            let _ = writeln!(out, "{k} = {}", render_field(f));
            if let Field::Exact(v) = f {
                if !v.log_coefficients().is_empty() {
                    let _ = writeln!(out, "{k}.decimal = {}", v.to_decimal(digits));
                }
            }
        }
        out
    }

    pub fn render_json(&self, digits: usize) -> Value {
        let mut m = Map::new();
        for (k, f) in &self.fields {
            let v = match f {
                Field::Exact(v) => json!({
                    "exact": v.to_string(),
                    "decimal": v.to_decimal(digits),
                    "error_bound": format!("1e-{digits}"),
                }),
                Field::Bool(b) => Value::Bool(*b),
                other => Value::String(render_field(other)),
            };
            m.insert(k.clone(), v);
        }
        Value::Object(m)
    }
}

fn render_field(f: &Field) -> String {
    match f {
        Field::Exact(v) => v.to_string(),
        Field::Int(v) => v.to_string(),
        Field::Rational(r) => format_rational(r),
        Field::Vector(v) => format_vec(v),
        Field::Text(s) => s.clone(),
        Field::Bool(b) => b.to_string(),
    }
}

/// Split a text report back into `(key, value)` pairs.
pub fn parse_report(text: &str) -> Vec<(String, String)> {
    text.lines()
        .filter_map(|l| l.split_once(" = "))
        .map(|(k, v)| (k.to_string(), v.to_string()))
        .collect()
}

pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::HypothesisNotSatisfied { .. } | Error::MinimaNotProved => EXIT_HYPOTHESIS,
        Error::CharacterNotRepresentable(_) => EXIT_CHARACTER,
        Error::PrecisionCapExceeded { .. } => EXIT_PRECISION,
        Error::AssertionViolated(_) | Error::NoPrimeInRange { .. } => EXIT_ASSERTION,
        _ => EXIT_INPUT_INVALID,
    }
}

fn missing(field: &str) -> Error {
    Error::InvalidInput(format!("missing field `{field}`"))
}

fn bigs(v: &[i64]) -> Vec<BigInt> {
    v.iter().map(|&x| BigInt::from(x)).collect()
}

fn config_of(points: &[Vec<i64>], dim: Option<usize>) -> Result<ExponentConfig> {
    let pts: Vec<Vec<BigInt>> = points.iter().map(|p| bigs(p)).collect();
    match dim {
        Some(n) => ExponentConfig::with_dim(n, pts),
        None => ExponentConfig::new(pts),
    }
}

fn scalars(entries: &[Entry]) -> Result<Vec<AlgScalar>> {
    entries.iter().map(Entry::scalar).collect()
}

impl Payload {
    fn config(&self) -> Result<ExponentConfig> {
        config_of(
            self.exponents
                .as_ref()
                .ok_or_else(|| missing("exponents"))?,
            self.dim,
        )
    }

    fn toric(&self) -> Result<ToricData> {
        let a = self.config()?;
        match &self.coefficients {
            None => Ok(ToricData::torus(a)),
            Some(c) => ToricData::new(a, scalars(c)?),
        }
    }

    fn tau(&self) -> Result<Vec<LogLinear>> {
        self.tau
            .as_ref()
            .ok_or_else(|| missing("tau"))?
            .iter()
            .map(Entry::log_linear)
            .collect()
    }

    fn b(&self) -> Result<Vec<BigInt>> {
        Ok(bigs(self.b.as_ref().ok_or_else(|| missing("b"))?))
    }

    fn factors(&self) -> Result<(Vec<ExponentConfig>, Vec<Vec<AlgScalar>>, Vec<usize>)> {
        let fs = self.factors.as_ref().ok_or_else(|| missing("factors"))?;
        let n = self.dim;
        let mut configs = Vec::new();
        let mut alphas = Vec::new();
        for f in fs {
            let a = config_of(&f.exponents, n)?;
            alphas.push(match &f.coefficients {
                None => vec![AlgScalar::one(); a.points().len()],
                Some(c) => scalars(c)?,
            });
            configs.push(a);
        }
        let c = self.c.clone().ok_or_else(|| missing("c"))?;
        Ok((configs, alphas, c))
    }
}

/// Run one job.
pub fn run_job(job: &JobSpec) -> Result<Report> {
    let p = &job.payload;
    let mut r = Report::default();
    r.text("command", job.command.name());
    match job.command {
        Command::Degree => {
            let a = p.config()?;
            r.int("n", a.n());
            r.int("N", a.big_n());
            r.int("rank", a.rank());
            r.flag("reduced", a.is_reduced());
            r.int("degree", degree(&a));
        }
        Command::Multidegree => {
            let (configs, _, c) = p.factors()?;
            r.int("multidegree", multidegree(&configs, &c)?);
        }
        Command::Kernel => {
            let a = p.config()?;
            r.int("kernel.rank", a.kernel().rank());
            for (i, g) in a.kernel().basis().iter().enumerate() {
                r.vector(format!("kernel.{i}"), g);
            }
        }
        Command::Ideal => {
            let x = p.toric()?;
            for (i, g) in ideal_generators(&x).iter().enumerate() {
                r.text(format!("generator.{i}"), g);
            }
        }
        Command::FromIdeal => {
            let rel = p.relations.as_ref().ok_or_else(|| missing("relations"))?;
            let dim = rel
                .first()
                .map(Vec::len)
                .ok_or_else(|| Error::InvalidInput("empty `relations`".into()))?;
            let values = match &p.values {
                Some(v) => scalars(v)?,
                None => vec![AlgScalar::one(); rel.len()],
            };
            let ideal = BinomialIdeal::new(dim, rel.iter().map(|g| bigs(g)).collect(), values)?;
            let x = from_binomial_ideal(&ideal)?;
            for (i, a) in x.config.points().iter().enumerate() {
                r.vector(format!("exponent.{i}"), a);
            }
            for (i, c) in x.alpha.iter().enumerate() {
                r.text(format!("coefficient.{i}"), c);
            }
            r.int("degree", x.degree());
            r.exact("height", normalized_height(&x)?);
        }
        Command::Obstruction => {
            let x = p.toric()?;
            for (i, o) in obstruction_indices(&x)?.iter().enumerate() {
                r.push(format!("omega.{}", i + 1), Field::Rational(o.omega.clone()));
                r.text(format!("witness.{}", i + 1), &o.witness);
            }
        }
        Command::Sandwich => {
            let x = p.toric()?;
            let s = minkowski_sandwich(&x)?;
            r.int("degree", s.degree);
            r.push("omega_product", Field::Rational(s.omega_product));
            r.int("codim", s.codim);
            r.text(
                "sharp_constant",
                format!(
                    "({})^2 / pi^{}",
                    format_rational(&s.sharp_sq_rational),
                    s.sharp_pi_power
                ),
            );
            r.flag("lower", s.lower);
            r.flag("sharp", s.sharp);
            r.flag("weak", s.weak);
            r.flag("verified", s.lower && s.sharp && s.weak);
        }
        Command::Pluecker => {
            let a = p.config()?;
            let d = pluecker(&a);
            for (idx, m) in &d.minors {
                let name: Vec<String> = idx.iter().map(|i| i.to_string()).collect();
                r.int(format!("minor.{}", name.join(",")), m.clone());
            }
            r.int("gcd", d.gcd.clone());
            r.int("schmidt_height_sq", d.schmidt_height_sq());
            r.int("segre_degree", segre_degree(&a));
            r.push("f_a_integral", Field::Rational(f_a_integral(&a)?));
        }
        Command::CompareEmbeddings => {
            let a = p.config()?;
            let b = config_of(p.other.as_ref().ok_or_else(|| missing("other"))?, p.dim)?;
            let e = compare_embeddings(&a, &b)?;
            r.flag("is_projection", e.is_projection);
            if let Some(d) = e.projection_degree {
                r.int("projection_degree", d);
            }
            r.flag("is_isomorphism", e.is_isomorphism);
        }
        Command::ChowWeight => {
            let a = p.config()?;
            let tau = p.tau()?;
            r.exact("chow_weight", chow_weight(&a, &tau)?);
            if let Some(path) = &job.options.cells {
                let (red, _) = reduce_to_full_rank(&a);
                let csv = roof(red.points(), &tau)?.cells_csv();
                std::fs::write(path, csv)
                    .map_err(|e| Error::InvalidInput(format!("{}: {e}", path.display())))?;
                r.text("cells", path.display());
            }
        }
        Command::ChowWeightHypersurface => {
            let mons: Vec<Vec<BigInt>> = p
                .monomials
                .as_ref()
                .ok_or_else(|| missing("monomials"))?
                .iter()
                .map(|m| bigs(m))
                .collect();
            r.exact("chow_weight", chow_weight_hypersurface(&mons, &p.tau()?)?);
        }
        Command::Height => {
            let x = p.toric()?;
            let weights = chow_weights(&x.config, &adelic_weights(&x.alpha))?;
            let h: LogLinear = weights.iter().map(|(_, e)| e).sum();
            let deg = x.degree();
            r.exact("height", h.clone());
            r.int("degree", deg.clone());
            r.exact("height_over_degree", h.scale(&Rational::new(1.into(), deg)));
            for (place, e) in weights {
                r.exact(format!("chow_weight.{place}"), e);
            }
        }
        Command::PointHeight => {
            let c = p
                .coefficients
                .as_ref()
                .ok_or_else(|| missing("coefficients"))?;
            r.exact("point_height", point_height(&scalars(c)?)?);
        }
        Command::Multiheight => {
            let (configs, alphas, c) = p.factors()?;
            r.exact("multiheight", multiheight(&configs, &alphas, &c)?);
        }
        Command::IntersectMonomial | Command::BezoutDegree => {
            let x = p.toric()?;
            let cycle = monomial_intersection(&x, &p.b()?)?;
            r.int("D", cycle.divisor.degree().clone());
            r.vector("M", cycle.divisor.m());
            if job.command == Command::IntersectMonomial {
                for (i, c) in cycle.components.iter().enumerate() {
                    let facet: Vec<BigInt> = c.facet.iter().map(|&k| BigInt::from(k)).collect();
                    r.vector(format!("component.{i}.facet"), &facet);
                    r.vector(format!("component.{i}.normal"), &c.normal);
                    r.int(format!("component.{i}.index"), c.index.clone());
                    r.int(
                        format!("component.{i}.multiplicity"),
                        c.multiplicity.clone(),
                    );
                    r.int(format!("component.{i}.degree"), c.component.degree());
                }
            }
            let d = cycle_degree(&cycle);
            r.int("cycle_degree", d.clone());
            r.int("d_times_degree", cycle.divisor.degree() * x.degree());
            r.flag("verified", true);
        }
        Command::BezoutChow => {
            let rep = chow_bezout(&p.config()?, &p.tau()?, &p.b()?)?;
            r.exact("lhs", rep.lhs);
            r.exact("rhs", rep.rhs);
            r.exact("d_times_weight", rep.d_times_weight);
            r.exact("correction", rep.correction);
            r.flag("equal", rep.equal);
            if let Some(ok) = rep.inequality {
                r.flag("inequality", ok);
            }
            r.flag("verified", true);
        }
        Command::BezoutHeight => {
            let rep = height_bezout(&p.toric()?, &p.b()?)?;
            r.exact("cycle_height", rep.cycle_height);
            r.exact("d_times_height", rep.d_times_height);
            r.exact("correction", rep.correction);
            r.flag("equal", rep.equal);
            if let Some(ok) = rep.inequality {
                r.flag("inequality", ok);
            }
            r.flag("verified", true);
        }
        Command::EssMin => {
            r.exact("essential_minimum", essential_minimum(&p.toric()?)?);
        }
        Command::Minima => {
            if let Some(h) = &p.hypersurface {
                let m = hypersurface_minima(&bigs(&h.plus), &bigs(&h.minus), &h.lambda.scalar()?)?;
                r.exact("essential_minimum", m.essential_minimum);
                r.exact("height_over_degree", m.height_over_degree);
                r.int("degree", m.degree);
            } else {
                let prof = successive_minima(&p.toric()?)?;
                for (i, e) in prof.entries.iter().enumerate() {
                    let k = i + 1;
                    match &e.value {
                        Some(v) => r.exact(format!("minimum.{k}"), v.clone()),
                        None => r.text(format!("minimum.{k}"), "none"),
                    }
                    if let Some(f) = &e.face {
                        let f: Vec<BigInt> = f.iter().map(|&j| BigInt::from(j)).collect();
                        r.vector(format!("minimum.{k}.face"), &f);
                    }
                    r.text(format!("minimum.{k}.status"), e.status.as_str());
                }
            }
        }
        Command::ZhangCheck => {
            let z = zhang_check(&p.toric()?)?;
            for (i, m) in z.minima.iter().enumerate() {
                r.exact(format!("minimum.{}", i + 1), m.clone());
            }
            r.exact("sum", z.sum);
            r.exact("height_over_degree", z.height_over_degree);
            r.exact("upper", z.upper);
            r.flag("verified", true);
        }
        Command::ZhangFamily => {
            let f = p.family.as_ref().ok_or_else(|| missing("family"))?;
            let params = ZhangParameters {
                n: f.n,
                mu: f.mu.iter().map(Entry::rational).collect::<Result<_>>()?,
                nu: f.nu.rational()?,
                eps1: f.eps1.rational()?,
                eps2: f.eps2.rational()?,
            };
            let fam = zhang_family(&params)?;
            r.int("d", fam.d);
            r.int("k", fam.k);
            r.int("f", fam.f);
            r.int("ell", fam.ell.clone());
            r.push("lambda", Field::Rational(fam.lambda.clone()));
            r.int("degree", fam.data.degree());
            for (i, q) in fam.predicted.iter().enumerate() {
                r.exact(format!("predicted_minimum.{}", i + 1), q.clone());
            }
            r.exact("theta", fam.theta.clone());
            r.exact("height", fam.height.clone());
            r.exact("height_over_degree", fam.height_over_degree.clone());
            r.exact("excess", fam.excess.clone());
            r.exact("excess_bound", fam.excess_bound.clone());
            r.exact("nu_bound", fam.nu_bound.clone());
            for (i, a) in fam.data.config.points().iter().enumerate() {
                r.vector(format!("exponent.{i}"), a);
            }
            for (i, c) in fam.data.alpha.iter().enumerate() {
                r.text(format!("coefficient.{i}"), c);
            }
            r.flag("verified", true);
        }
        Command::Bounds => {
            let b = height_degree_bounds(&p.toric()?)?;
            r.exact("lower", b.lower);
            r.exact("height_over_degree", b.height_over_degree);
            r.exact("upper", b.upper);
            r.flag("verified", true);
        }
    }
    Ok(r)
}

fn error_report(command: Option<Command>, e: &Error) -> Report {
    let mut r = Report::default();
    if let Some(c) = command {
        r.text("command", c.name());
    }
    r.text("status", "error");
    r.text("reason", e.reason());
    r.text("message", e);
    r
}

/// Parse arguments, read the input, run the job and print the report.
/// Returns the process exit status.
pub fn run<I, T>(args: I, stdin: &mut dyn Read, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            if e.use_stderr() {
                let _ = write!(err, "{}", e.render());
                return EXIT_INPUT_INVALID;
            }
            let _ = write!(out, "{}", e.render());
            return EXIT_OK;
        }
    };
    if let Some(bits) = cli.precision_cap {
        set_precision_cap(bits);
    }
    let options = OutputOptions {
        json: cli.json,
        digits: cli.digits,
        cells: cli.cells.clone(),
    };
    let text = match read_input(cli.input.as_ref(), stdin) {
        Ok(t) => t,
        Err(e) => return emit(Some(cli.command), Err(e), &options, out, err),
    };
    let result = Payload::parse(&text).and_then(|payload| {
        run_job(&JobSpec {
            command: cli.command,
            payload,
            options: options.clone(),
        })
    });
    emit(Some(cli.command), result, &options, out, err)
}

fn read_input(path: Option<&PathBuf>, stdin: &mut dyn Read) -> Result<String> {
    let mut text = String::new();
    match path {
        Some(p) if p.as_os_str() != "-" => {
            text = std::fs::read_to_string(p)
                .map_err(|e| Error::InvalidInput(format!("{}: {e}", p.display())))?;
        }
        _ => {
            stdin
                .read_to_string(&mut text)
                .map_err(|e| Error::InvalidInput(e.to_string()))?;
        }
    }
    Ok(text)
}

fn emit(
    command: Option<Command>,
    result: Result<Report>,
    o: &OutputOptions,
    out: &mut dyn Write,
    err: &mut dyn Write,
) -> i32 {
    let (report, code) = match result {
        Ok(r) => (r, EXIT_OK),
        Err(e) => {
            let _ = writeln!(err, "error [{}]: {e}", e.reason());
            (error_report(command, &e), exit_code(&e))
        }
    };
    let _ = if o.json {
        writeln!(
            out,
            "{}",
            serde_json::to_string_pretty(&report.render_json(o.digits)).expect("json")
        )
    } else {
        write!(out, "{}", report.render_text(o.digits))
    };
    code
}

#[cfg(test)]
mod tests {
    use super::*;

    fn job(command: Command, doc: &str) -> Result<Report> {
        run_job(&JobSpec {
            command,
            payload: Payload::parse(doc).unwrap(),
            options: OutputOptions::default(),
        })
    }

    #[test]
    fn height_of_the_cubic() {
        let r = job(
            Command::Height,
            "exponents = [[0],[1],[2],[3]]\ncoefficients = [1, 2, 3, 4]\n",
        )
        .unwrap();
        let text = r.render_text(4);
        assert!(text.contains("height = 2*log(2) + 2*log(3)\n"));
        assert!(text.contains("height.decimal = 3.5835 (±1e-4)\n"));
    }

    #[test]
    fn kernel_of_the_quartic_surface() {
        let doc = r#"{"exponents": [[0,0],[1,0],[2,1],[1,2]], "coefficients": [1, 1, 3, 1]}"#;
        let r = job(Command::Kernel, doc).unwrap();
        assert_eq!(
            r.get("kernel.0"),
            Some(&Field::Vector(bigs(&[2, -3, 2, -1])))
        );
    }

    #[test]
    fn command_names() {
        assert_eq!(Command::FromIdeal.name(), "from-ideal");
        assert_eq!(
            Command::ChowWeightHypersurface.name(),
            "chow-weight-hypersurface"
        );
        assert_eq!(Command::EssMin.name(), "ess-min");
    }

    #[test]
    fn exit_codes_by_reason() {
        let mut out = Vec::new();
        let mut err = Vec::new();
        let mut input = "exponents = [[0],[0],[1]]\ncoefficients = [1, 2, 3]\n".as_bytes();
        let code = run(["toric-arith", "ess-min"], &mut input, &mut out, &mut err);
        assert_eq!(code, EXIT_HYPOTHESIS);
        let text = String::from_utf8(out).unwrap();
        assert!(text.contains("reason = hypothesis-not-satisfied"));
        let mut bad = "exponents = 3".as_bytes();
        assert_eq!(
            run(
                ["toric-arith", "degree"],
                &mut bad,
                &mut Vec::new(),
                &mut Vec::new()
            ),
            EXIT_INPUT_INVALID
        );
    }
}
