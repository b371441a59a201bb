//! The command driver: one job in, one report out.

use serde::{Deserialize, Serialize};

use crate::cli::json::{
    parse_matrix, CosetJson, MatrixInput, PolygonJson, RadiusJson, SlopeJson, SpectrumJson,
};
use crate::cli::parse::parse_operator;
use crate::cli::selftest::{selftest_with, SelftestOptions, SelftestReport};
use crate::diffop::{cyclic_vector, DiffOperator};
use crate::error::{Error, Result};
use crate::exponents::cosets_with_multiplicity;
use crate::factor::{decompose_reg_irr, slope_factor};
use crate::newton::{edge_polynomial_slope0, newton_polygon};
use crate::ramify::{
    check_block_decomposition, check_eq22, check_pushforward_spectrum, pushforward_by, Module,
};
use crate::rat::{self, Rat};
use crate::spectrum::{numeric_radii, spectrum_of_operator, verify_operator_spectrum};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Command {
    Spectrum,
    Newton,
    Factor,
    Cyclic,
    Ramify,
    Selftest,
}

#[derive(Clone, Debug)]
pub struct JobSpec {
    pub command: Command,
    /// Operator text; ignored when `matrix` is set.
    pub operator: Option<String>,
    /// Matrix input as JSON text.
    pub matrix: Option<String>,
    /// Ramification factor: the module is pulled back to `k((S^(1/m)))`
    /// (for `ramify`, the factor to check).
    pub ram: Option<u32>,
    /// Relative precision, in grid steps, of every inexact inversion.
    pub precision: u32,
    pub radius: Option<Rat>,
    pub verify: bool,
    pub seed: u64,
    /// Cases per property for `selftest`.
    pub count: usize,
    /// Slope to split off for `factor`; the regular part when absent.
    pub slope: Option<Rat>,
    /// Negative control for `selftest`: run with a broken commutation rule.
    pub corrupt_derivation: bool,
}

impl JobSpec {
    pub fn new(command: Command) -> Self {
        JobSpec {
            command,
            operator: None,
            matrix: None,
            ram: None,
            precision: 50,
            radius: None,
            verify: false,
            seed: 0,
            count: 25,
            slope: None,
            corrupt_derivation: false,
        }
    }

    pub fn operator(command: Command, text: &str) -> Self {
        JobSpec {
            operator: Some(text.to_string()),
            ..Self::new(command)
        }
    }
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct VerificationJson {
    pub ok: bool,
    pub regular_factor: String,
    pub irregular_factor: String,
    pub indicial_polynomial: String,
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct FactorJson {
    pub slope: String,
    pub left: String,
    pub right: String,
    pub precision: String,
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct CyclicJson {
    pub vector: Vec<String>,
    pub operator: String,
    pub attempts: usize,
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct RamifyJson {
    pub factor: u32,
    pub pullback: Option<String>,
    pub pushforward: MatrixInput,
    pub translates_agree: bool,
    pub block_decomposition: bool,
    pub pushforward_spectrum_agrees: bool,
}

#[derive(Clone, Debug, Default, Serialize, Deserialize, PartialEq, Eq)]
pub struct Report {
    pub command: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub input: Option<String>,
    /// Canonical form of the operator analysed.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub operator: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub polygon: Option<PolygonJson>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub slopes: Vec<SlopeJson>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub edge_polynomial: Option<String>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub cosets: Vec<CosetJson>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub spectrum: Option<SpectrumJson>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub radii: Option<Vec<RadiusJson>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub verification: Option<VerificationJson>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub factorization: Option<FactorJson>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub cyclic: Option<CyclicJson>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub ramify: Option<RamifyJson>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub selftest: Option<SelftestReport>,
    /// Plot of the polygon for the text rendering.
    #[serde(skip)]
    pub ascii_polygon: Option<String>,
}

fn command_name(c: Command) -> &'static str {
    match c {
        Command::Spectrum => "spectrum",
        Command::Newton => "newton",
        Command::Factor => "factor",
        Command::Cyclic => "cyclic",
        Command::Ramify => "ramify",
        Command::Selftest => "selftest",
    }
}

fn load_module(job: &JobSpec) -> Result<Module> {
    if let Some(m) = &job.matrix {
        return Ok(Module::Matrix(parse_matrix(m, job.precision)?));
    }
    let text = job
        .operator
        .as_deref()
        .ok_or_else(|| Error::precondition("no operator or matrix given"))?;
    Ok(Module::Operator(parse_operator(text, job.precision)?))
}

/// The operator whose polygon is analysed: the input itself or the cyclic
/// relation of a matrix, pulled back when `ram` is given.
fn working_operator(job: &JobSpec, module: &Module) -> Result<(DiffOperator, Option<CyclicJson>)> {
    let module = match job.ram {
        Some(m) if m >= 1 => module.pullback(m),
        Some(_) => return Err(Error::precondition("ram must be positive")),
        None => module.clone(),
    };
    match module {
        Module::Operator(p) => Ok((p, None)),
        Module::Matrix(g) => {
            let cv = cyclic_vector(&g, job.precision)?;
            let info = CyclicJson {
                vector: cv.vector.iter().map(|c| c.to_string()).collect(),
                operator: cv.operator.to_string(),
                attempts: cv.attempts,
            };
            Ok((cv.operator, Some(info)))
        }
    }
}

fn polygon_section(report: &mut Report, p: &DiffOperator) -> Result<()> {
    let np = newton_polygon(p)?;
    report.ascii_polygon = Some(np.ascii());
    report.slopes = np
        .edges
        .iter()
        .map(|e| SlopeJson {
            slope: rat::format(&e.slope),
            multiplicity: e.width,
        })
        .collect();
    report.polygon = Some(PolygonJson::from(&np));
    let edge = edge_polynomial_slope0(p)?;
    report.edge_polynomial = edge.as_ref().map(|e| e.poly.to_string());
    if let Some(e) = edge {
        report.cosets = cosets_with_multiplicity(&e.poly.monic(), p.ram())
            .iter()
            .map(|(c, k)| CosetJson::new(c, Some(*k)))
            .collect();
    }
    Ok(())
}

pub fn run(job: &JobSpec) -> Result<Report> {
    if job.precision == 0 {
        return Err(Error::precondition("precision must be at least 1"));
    }
    if let Some(r) = &job.radius {
        if !(*r > Rat::from_integer(0.into()) && *r < Rat::from_integer(1.into())) {
            return Err(Error::precondition(format!(
                "radius must lie in (0,1), got {}",
                rat::format(r)
            )));
        }
    }
    let mut report = Report {
        command: command_name(job.command).to_string(),
        input: job.operator.clone().filter(|_| job.matrix.is_none()),
        ..Report::default()
    };
    match job.command {
        Command::Selftest => {
            let r = selftest_with(&SelftestOptions {
                seed: job.seed,
                count: job.count,
                corrupt_derivation: job.corrupt_derivation,
            });
            let passed = r.passed;
            report.selftest = Some(r);
            if !passed {
                return Err(Error::InternalMismatch(format!(
                    "selftest failed: {}",
                    serde_json::to_string(&report.selftest).unwrap_or_default()
                )));
            }
        }
        Command::Spectrum | Command::Newton => {
            let module = load_module(job)?;
            let (p, cyclic) = working_operator(job, &module)?;
            report.operator = Some(p.to_string());
            report.cyclic = cyclic;
            polygon_section(&mut report, &p)?;
            if job.command == Command::Spectrum {
                let sp = spectrum_of_operator(&p)?;
                if let Some(r) = &job.radius {
                    report.radii = Some(numeric_radii(&sp, r)?.iter().map(RadiusJson::from).collect());
                }
                if job.verify {
                    let v = verify_operator_spectrum(&p, &sp, job.precision)?;
                    report.verification = Some(VerificationJson {
                        ok: true,
                        regular_factor: v.regular_factor.to_string(),
                        irregular_factor: v.irregular_factor.to_string(),
                        indicial_polynomial: v.indicial.to_string(),
                    });
                }
                report.spectrum = Some(SpectrumJson::from(&sp));
            }
        }
        Command::Factor => {
            let module = load_module(job)?;
            let (p, cyclic) = working_operator(job, &module)?;
            report.cyclic = cyclic;
            let p = p.make_monic(job.precision)?;
            report.operator = Some(p.to_string());
            report.factorization = Some(match &job.slope {
                Some(g) => {
                    let f = slope_factor(&p, g, None)?;
                    FactorJson {
                        slope: rat::format(g),
                        left: f.left.to_string(),
                        right: f.right.to_string(),
                        precision: rat::format(&f.precision),
                    }
                }
                None => {
                    let (reg, irr) = decompose_reg_irr(&p, None)?;
                    FactorJson {
                        slope: "0".into(),
                        left: reg.to_string(),
                        right: irr.to_string(),
                        precision: rat::format(&crate::factor::default_target(&p, &Rat::from_integer(0.into()))?),
                    }
                }
            });
        }
        Command::Cyclic => {
            let module = load_module(job)?;
            let g = module.to_matrix(job.precision)?;
            let cv = cyclic_vector(&g, job.precision)?;
            report.operator = Some(cv.operator.to_string());
            report.cyclic = Some(CyclicJson {
                vector: cv.vector.iter().map(|c| c.to_string()).collect(),
                operator: cv.operator.to_string(),
                attempts: cv.attempts,
            });
        }
        Command::Ramify => {
            let module = load_module(job)?;
            let m = job.ram.unwrap_or(2);
            if m == 0 {
                return Err(Error::precondition("ram must be positive"));
            }
            let pulled = module.pullback(m);
            let matrix = pulled.to_matrix(job.precision)?;
            let pushed = pushforward_by(&matrix, m)?;
            let base_matrix = module.to_matrix(job.precision)?;
            let section = RamifyJson {
                factor: m,
                pullback: match &pulled {
                    Module::Operator(p) => Some(p.to_string()),
                    Module::Matrix(_) => None,
                },
                pushforward: MatrixInput::from_module(&pushed),
                translates_agree: check_eq22(&module, m, job.precision)?,
                block_decomposition: check_block_decomposition(&base_matrix, m)?,
                pushforward_spectrum_agrees: check_pushforward_spectrum(&module, m, job.precision)?,
            };
            let ok = section.translates_agree
                && section.block_decomposition
                && section.pushforward_spectrum_agrees;
            report.ramify = Some(section);
            if !ok {
                return Err(Error::InternalMismatch(format!(
                    "ramification checks failed: {}",
                    serde_json::to_string(&report.ramify).unwrap_or_default()
                )));
            }
        }
    }
    Ok(report)
}

/// Human-readable rendering of a report.
pub fn render_text(r: &Report) -> String {
    let mut out = String::new();
    if let Some(op) = &r.operator {
        out.push_str(&format!("operator: {op}\n"));
    }
    if let Some(c) = &r.cyclic {
        out.push_str(&format!(
            "cyclic vector: ({}) after {} candidate(s)\n",
            c.vector.join(", "),
            c.attempts
        ));
    }
    if let Some(np) = &r.polygon {
        let v: Vec<String> = np.vertices.iter().map(|(i, h)| format!("({i}, {h})")).collect();
        out.push_str(&format!("newton polygon: {}\n", v.join(" ")));
        if let Some(a) = &r.ascii_polygon {
            out.push_str(a);
        }
        let s: Vec<String> = r
            .slopes
            .iter()
            .map(|s| format!("{} (x{})", s.slope, s.multiplicity))
            .collect();
        out.push_str(&format!("slopes: {}\n", s.join(", ")));
    }
    if let Some(e) = &r.edge_polynomial {
        out.push_str(&format!("slope-0 edge polynomial: {e}\n"));
    }
    if let Some(sp) = &r.spectrum {
        if let Ok(s) = sp.to_spectrum() {
            out.push_str(&format!("spectrum: {s}\n"));
        }
    }
    if let Some(radii) = &r.radii {
        for x in radii {
            out.push_str(&format!("  gamma {} -> radius {}\n", x.gamma, x.radius));
        }
    }
    if let Some(v) = &r.verification {
        out.push_str(&format!(
            "verified via factorization: regular {} | irregular {} | indicial {}\n",
            v.regular_factor, v.irregular_factor, v.indicial_polynomial
        ));
    }
    if let Some(f) = &r.factorization {
        out.push_str(&format!(
            "factorization at slope {} (to S^({})):\n  R = {}\n  Q = {}\n",
            f.slope, f.precision, f.left, f.right
        ));
    }
    if let Some(rm) = &r.ramify {
        if let Some(p) = &rm.pullback {
            out.push_str(&format!("pullback (m = {}): {p}\n", rm.factor));
        }
        out.push_str("pushforward of the pullback:\n");
        for row in &rm.pushforward.entries {
            out.push_str(&format!("  [{}]\n", row.join(", ")));
        }
        out.push_str(&format!(
            "translates agree: {}\nblock decomposition: {}\npushforward spectrum agrees: {}\n",
            rm.translates_agree, rm.block_decomposition, rm.pushforward_spectrum_agrees
        ));
    }
    if let Some(st) = &r.selftest {
        for p in &st.properties {
            let status = if p.failures == 0 { "ok" } else { "FAIL" };
            out.push_str(&format!("{:<24} {status} ({} cases)\n", p.name, p.cases));
            if let Some(w) = &p.witness {
                out.push_str(&format!("    witness: {w}\n"));
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn euler_job() {
        let r = run(&JobSpec::operator(Command::Spectrum, "D")).unwrap();
        let sp = r.spectrum.unwrap();
        assert_eq!(sp.gauss, vec!["0"]);
        assert_eq!(sp.cosets[0].min_poly, "x");
    }

    #[test]
    fn precondition_errors() {
        assert!(matches!(run(&JobSpec::new(Command::Spectrum)), Err(Error::Precondition(_))));
        let mut job = JobSpec::operator(Command::Spectrum, "D");
        job.radius = Some(rat::int(2));
        assert!(matches!(run(&job), Err(Error::Precondition(_))));
    }
}
