//! One function per verb. Each returns the text for stdout and the exit
//! code; errors become exit code 2 in `main`.

use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};

use assoc_core::associator::{
    check_cyclotomic, check_drinfeld, check_elliptic, gt_act, gt_compose, gtell_act, gtell_compose, gtgamma_act,
    gtgamma_compose, solve_drinfeld, verify_gt, OctagonReading, Report, Verdict,
};
use assoc_core::families::{gamma_action, symmetric_action, Family, GammaTuple, Permutation};
use assoc_core::malcev::{word_eval, GroupContext, ModelKind, Word};
use assoc_core::operadic::{
    elliptic_module_compose, insertion_coproduct, insertion_coproduct_cyclotomic, insertion_coproduct_elliptic,
    moperad_compose_module, moperad_compose_monoid, operad_compose, PartialMap,
};
use assoc_core::series::{parse_series, write_series, TruncatedSeries};
use assoc_core::Rational;
use serde::Serialize;

use crate::cache::DiskTables;
use crate::error::{CliError, CliResult};
use crate::files::{Candidate, GroupFile};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Text,
    Report,
}

pub struct Outcome {
    pub stdout: String,
    pub code: u8,
}

impl Outcome {
    fn ok(stdout: String) -> Self {
        Outcome { stdout, code: 0 }
    }
}

fn read(path: &Path) -> CliResult<String> {
    fs::read_to_string(path).map_err(|e| CliError::io(path, e))
}

fn in_file<T>(path: &Path, r: assoc_core::Result<T>) -> CliResult<T> {
    r.map_err(|e| match e {
        assoc_core::Error::Parse(message) => CliError::File { path: path.to_path_buf(), message },
        other => CliError::Engine(other),
    })
}

fn read_series(path: &Path) -> CliResult<TruncatedSeries> {
    in_file(path, parse_series(&read(path)?))
}

fn read_candidate(path: &Path) -> CliResult<Candidate> {
    in_file(path, Candidate::parse(&read(path)?))
}

fn read_group(path: &Path) -> CliResult<GroupFile> {
    in_file(path, GroupFile::parse(&read(path)?))
}

/// Writes `text` to `out` when given, otherwise returns it for stdout.
fn emit(text: String, out: Option<&Path>) -> CliResult<Outcome> {
    match out {
        Some(path) => {
            fs::write(path, text).map_err(|e| CliError::io(path, e))?;
            Ok(Outcome::ok(String::new()))
        }
        None => Ok(Outcome::ok(text)),
    }
}

fn json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("plain data serializes");
    s.push('\n');
    s
}

#[derive(Serialize)]
struct DimsReport<'a> {
    family: String,
    maxdeg: u32,
    dims: &'a [u128],
}

pub fn dims(tables: &DiskTables, family: &Family, maxdeg: u32, format: Format) -> CliResult<Outcome> {
    let table = tables.get(family, maxdeg)?;
    let dims = (0..=maxdeg).map(|d| table.hilbert_dim(d)).collect::<assoc_core::Result<Vec<_>>>()?;
    let text = match format {
        Format::Text => dims.iter().enumerate().map(|(d, n)| format!("{d} {n}\n")).collect(),
        Format::Report => json(&DimsReport { family: family.to_string(), maxdeg, dims: &dims }),
    };
    Ok(Outcome::ok(text))
}

#[derive(Serialize)]
struct EquationJson {
    name: String,
    status: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    deg: Option<u32>,
    #[serde(skip_serializing_if = "Option::is_none")]
    residual_terms: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    residual: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    reason: Option<String>,
}

#[derive(Serialize)]
struct VerifyReport {
    kind: String,
    maxdeg: u32,
    passed: bool,
    equations: Vec<EquationJson>,
}

fn render_report(kind: String, maxdeg: u32, report: &Report, format: Format) -> Outcome {
    let code = if report.passed() { 0 } else { 1 };
    let stdout = match format {
        Format::Text => {
            let mut out = String::new();
            for e in &report.entries {
                let _ = writeln!(out, "{e}");
                if let Verdict::Fail { residual: Some(r), .. } = &e.verdict {
                    let _ = writeln!(out, "  residual {r}");
                }
            }
            out
        }
        Format::Report => {
            let equations = report
                .entries
                .iter()
                .map(|e| {
                    let (status, reason, residual) = match &e.verdict {
                        Verdict::Pass => ("PASS", None, None),
                        Verdict::Fail { residual, .. } => ("FAIL", None, residual.as_ref().map(|r| r.to_string())),
                        Verdict::Skip(reason) => ("SKIP", Some(reason.clone()), None),
                    };
                    let summary = e.summary();
                    EquationJson {
                        name: e.name.clone(),
                        status,
                        deg: summary.map(|s| s.0),
                        residual_terms: summary.map(|s| s.1),
                        residual,
                        reason,
                    }
                })
                .collect();
            json(&VerifyReport { kind, maxdeg, passed: report.passed(), equations })
        }
    };
    Outcome { stdout, code }
}

pub fn verify(
    tables: &DiskTables,
    path: &Path,
    maxdeg: Option<u32>,
    reading: OctagonReading,
    format: Format,
) -> CliResult<Outcome> {
    let text = read(path)?;
    let is_candidate = text
        .lines()
        .map(|l| l.split('#').next().unwrap_or("").trim())
        .find(|l| !l.is_empty())
        .is_some_and(|l| l.starts_with("candidate"));
    if !is_candidate {
        let GroupFile::Gt(g) = in_file(path, GroupFile::parse(&text))? else {
            return Err(CliError::Usage("only candidates and `gt` elements can be verified".into()));
        };
        let g = match maxdeg {
            Some(d) => assoc_core::associator::GtElement::new(g.mu.clone(), g.f.truncate(d)?)?,
            None => g,
        };
        let report = verify_gt(&g)?;
        return Ok(render_report("gt".into(), g.maxdeg(), &report, format));
    }
    let mut candidate = in_file(path, Candidate::parse(&text))?;
    if let Some(d) = maxdeg {
        if d > candidate.maxdeg() {
            return Err(CliError::Usage(format!(
                "--maxdeg {d} exceeds the candidate's truncation degree {}",
                candidate.maxdeg()
            )));
        }
        candidate = candidate.truncate(d)?;
    }
    let (kind, report) = match &candidate {
        Candidate::Drinfeld(c) => ("drinfeld".to_string(), check_drinfeld(c, tables)?),
        Candidate::Cyclotomic(c) => (format!("cyclotomic({})", c.order), check_cyclotomic(c, reading, tables)?),
        Candidate::Elliptic(c) => ("elliptic".to_string(), check_elliptic(c, tables)?),
    };
    Ok(render_report(kind, candidate.maxdeg(), &report, format))
}

#[derive(Serialize)]
struct FreeParameterJson {
    degree: u32,
    word: String,
}

#[derive(Serialize)]
struct SolveReport {
    candidate: String,
    free_parameters: Vec<FreeParameterJson>,
}

pub fn solve(tables: &DiskTables, lambda: &Rational, maxdeg: u32, out: Option<&Path>, format: Format) -> CliResult<Outcome> {
    let sol = solve_drinfeld(lambda, maxdeg, tables)?;
    let text = Candidate::Drinfeld(sol.candidate).write();
    match format {
        Format::Text => emit(text, out),
        Format::Report => {
            let free_parameters = sol
                .free_parameters
                .iter()
                .map(|p| FreeParameterJson {
                    degree: p.degree,
                    word: p.word.iter().map(|&l| if l == 0 { 'x' } else { 'y' }).collect(),
                })
                .collect();
            if let Some(path) = out {
                fs::write(path, &text).map_err(|e| CliError::io(path, e))?;
            }
            Ok(Outcome::ok(json(&SolveReport { candidate: text, free_parameters })))
        }
    }
}

fn kind_mismatch(kind: &str, found: &GroupFile, path: &Path) -> CliError {
    CliError::File { path: path.to_path_buf(), message: format!("expected a `{kind}` element, found `{}`", found.kind()) }
}

pub fn compose(kind: &str, first: &Path, second: &Path, out: Option<&Path>) -> CliResult<Outcome> {
    let a = read_group(first)?;
    let b = read_group(second)?;
    for (g, p) in [(&a, first), (&b, second)] {
        if g.kind() != kind {
            return Err(kind_mismatch(kind, g, p));
        }
    }
    let product = match (&a, &b) {
        (GroupFile::Gt(a), GroupFile::Gt(b)) => GroupFile::Gt(gt_compose(a, b)?),
        (GroupFile::GtGamma(a), GroupFile::GtGamma(b)) => GroupFile::GtGamma(gtgamma_compose(a, b)?),
        (GroupFile::GtEll(a), GroupFile::GtEll(b)) => GroupFile::GtEll(gtell_compose(a, b)?),
        _ => unreachable!("kinds checked above"),
    };
    emit(product.write(), out)
}

pub fn act(kind: &str, element: &Path, candidate: &Path, out: Option<&Path>) -> CliResult<Outcome> {
    let g = read_group(element)?;
    if g.kind() != kind {
        return Err(kind_mismatch(kind, &g, element));
    }
    let c = read_candidate(candidate)?;
    let result = match (&g, &c) {
        (GroupFile::Gt(g), Candidate::Drinfeld(c)) => Candidate::Drinfeld(gt_act(g, c)?),
        (GroupFile::GtGamma(g), Candidate::Cyclotomic(c)) => Candidate::Cyclotomic(gtgamma_act(g, c)?),
        (GroupFile::GtEll(g), Candidate::Elliptic(c)) => Candidate::Elliptic(gtell_act(g, c)?),
        _ => {
            return Err(CliError::Usage(format!("a `{kind}` element does not act on this kind of candidate")));
        }
    };
    emit(result.write(), out)
}

pub fn op_compose(
    tables: &DiskTables,
    host: &Path,
    guest: &Path,
    slot: Option<usize>,
    out: Option<&Path>,
) -> CliResult<Outcome> {
    let a = read_series(host)?;
    let b = read_series(guest)?;
    let need_slot = || slot.ok_or_else(|| CliError::Usage("--slot is required for this composition".into()));
    let result = match (a.alphabet().family(), b.alphabet().family()) {
        (Family::Dk(_), Family::Dk(_)) => operad_compose(tables, need_slot()?, &a, &b)?,
        (Family::CyclotomicDk { .. }, Family::Dk(_)) => moperad_compose_module(tables, need_slot()?, &a, &b)?,
        (Family::CyclotomicDk { .. }, Family::CyclotomicDk { .. }) => {
            if slot.is_some() {
                return Err(CliError::Usage("the monoid composition takes no --slot".into()));
            }
            moperad_compose_monoid(tables, &a, &b)?
        }
        (Family::Elliptic(_) | Family::ReducedElliptic(_), Family::Dk(_)) => {
            elliptic_module_compose(tables, need_slot()?, &a, &b)?
        }
        (fa, fb) => return Err(CliError::Usage(format!("no composition of {fa} with {fb}"))),
    };
    emit(write_series(&result), out)
}

pub fn op_insert(pmap: &str, input: &Path, out: Option<&Path>) -> CliResult<Outcome> {
    let f: PartialMap = pmap.parse()?;
    let x = read_series(input)?;
    let result = match x.alphabet().family() {
        Family::CyclotomicDk { order, .. } => insertion_coproduct_cyclotomic(&f, &x, *order)?,
        Family::Elliptic(_) | Family::ReducedElliptic(_) => insertion_coproduct_elliptic(&f, &x)?,
        _ => insertion_coproduct(&f, &x)?,
    };
    emit(write_series(&result), out)
}

pub fn op_act(perm: Option<&str>, gamma: Option<&str>, input: &Path, out: Option<&Path>) -> CliResult<Outcome> {
    let x = read_series(input)?;
    let result = match (perm, gamma) {
        (Some(p), None) => symmetric_action(&p.parse::<Permutation>()?, &x)?,
        (None, Some(g)) => {
            let order = x
                .alphabet()
                .family()
                .order()
                .ok_or_else(|| CliError::Usage("--gamma needs a tGamma series".into()))?;
            gamma_action(&GammaTuple::parse(g, order)?, &x)?
        }
        _ => return Err(CliError::Usage("give exactly one of --perm and --gamma".into())),
    };
    emit(write_series(&result), out)
}

pub fn word(word: &str, context: &ModelKind, maxdeg: u32) -> CliResult<Outcome> {
    let w: Word = word.parse()?;
    let ctx = GroupContext::new(context.clone(), maxdeg)?;
    Ok(Outcome::ok(word_eval(&w, &ctx)?.to_string()))
}

/// Paths given as `-` mean stdout.
pub fn out_path(p: &Option<PathBuf>) -> Option<&Path> {
    p.as_deref().filter(|p| p.as_os_str() != "-")
}
