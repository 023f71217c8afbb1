use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use rayon::prelude::*;

use sepscan_core::criteria::{any_detected, evaluate, scan_threshold};
use sepscan_core::normalform::{normal_form_with, NormalFormOptions};
use sepscan_core::states::StateFamily;
use sepscan_core::witness::{canonical_bipartite, canonical_multipartite, expectation, witness_from_state, Witness};
use sepscan_core::{DensityMatrix, Error};

use crate::args::{CheckArgs, Cli, Command, CriterionArg, FamilyName, FamilyParams, NfArgs, ScanArgs, SourceArgs, WitnessArgs};
use crate::io::{write_json, StateFile};
use crate::report::{BatchReport, InputDescriptor, NormalFormSummary, Report, WitnessReport, BATCH_SCHEMA};
use crate::{CliError, EXIT_OK};

/// Runs one invocation, printing to `stdout`/`stderr`. Returns the exit code.
pub fn run(cli: &Cli, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32 {
    let (command, output) = match &cli.command {
        Command::Check(a) => ("check", &a.output),
        Command::Scan(a) => ("scan", &a.output),
        Command::Nf(a) => ("nf", &a.output),
        Command::Witness(a) => ("witness", &a.output),
    };
    if let Command::Check(a) = &cli.command {
        if let Some(dir) = &a.batch {
            return run_batch(a, dir, stdout, stderr);
        }
    }
    let mut report = Report::new(command);
    let result = match &cli.command {
        Command::Check(a) => check(a, &mut report),
        Command::Scan(a) => scan(a, &mut report),
        Command::Nf(a) => nf(a, &mut report),
        Command::Witness(a) => witness(a, &mut report),
    };
    let mut code = EXIT_OK;
    if let Err(e) = &result {
        report.fail(e);
        code = e.exit_code;
    }
    let report_path = match &cli.command {
        Command::Nf(a) => a.report.as_deref(),
        _ => output.out.as_deref(),
    };
    if let Some(path) = report_path {
        if let Err(e) = write_json(path, &report) {
            let _ = writeln!(stderr, "sepscan: {e}");
            return e.exit_code;
        }
    }
    emit(&report, output.json, stdout);
    if let Err(e) = result {
        let _ = writeln!(stderr, "sepscan: {e}");
    }
    code
}

fn emit<T: serde::Serialize + Human>(report: &T, json: bool, stdout: &mut dyn Write) {
    let text = if json {
        serde_json::to_string_pretty(report).expect("reports serialize")
    } else {
        report.human()
    };
    let _ = writeln!(stdout, "{text}");
}

trait Human {
    fn human(&self) -> String;
}

impl Human for Report {
    fn human(&self) -> String {
        Report::human(self)
    }
}

impl Human for BatchReport {
    fn human(&self) -> String {
        self.reports
            .iter()
            .map(|r| {
                let name = match &r.input {
                    Some(InputDescriptor::File { path }) => path.clone(),
                    _ => String::new(),
                };
                format!("== {name}\n{}", r.human())
            })
            .collect::<Vec<_>>()
            .join("\n")
    }
}

pub fn family(params: &FamilyParams) -> Result<StateFamily, CliError> {
    let Some(name) = params.family else {
        return Err(CliError::input("a state source is required: --file PATH or --family NAME"));
    };
    let dims = params.dims.clone();
    Ok(match name {
        FamilyName::Acin => StateFamily::Acin { a: params.a, b: params.b, c: params.c },
        FamilyName::Isotropic => StateFamily::Isotropic { d: params.d },
        FamilyName::Bell => StateFamily::Bell,
        FamilyName::Ghz => StateFamily::Ghz { n: params.m },
        FamilyName::MaxEntangled => StateFamily::MaxEntangled { m: params.m, n: params.n },
        FamilyName::MaximallyMixed => StateFamily::MaximallyMixed { dims },
        FamilyName::RandomFullRank => StateFamily::RandomFullRank { dims, seed: params.seed },
        FamilyName::RandomSeparable => {
            let terms = params.terms.unwrap_or_else(|| params.dims.iter().product());
            StateFamily::RandomSeparable { dims, terms, seed: params.seed }
        }
    })
}

fn has_source(src: &SourceArgs) -> bool {
    src.file.is_some() || src.params.family.is_some()
}

fn load_file(path: &Path) -> Result<(InputDescriptor, DensityMatrix), CliError> {
    let rho = StateFile::read(path)?.to_density().map_err(|e| {
        let mut err = CliError::from(e);
        err.message = format!("{}: {}", path.display(), err.message);
        err
    })?;
    Ok((InputDescriptor::File { path: path.display().to_string() }, rho))
}

fn load(src: &SourceArgs) -> Result<(InputDescriptor, DensityMatrix), CliError> {
    if let Some(path) = &src.file {
        return load_file(path);
    }
    let fam = family(&src.params)?;
    let rho = fam.at(src.p)?;
    Ok((InputDescriptor::Family { family: fam, p: src.p }, rho))
}

/// Evaluates the requested criteria. `all` skips the bipartite-only ones on
/// states with more than two parties.
fn check_state(rho: &DensityMatrix, criterion: CriterionArg, use_nf: bool, report: &mut Report) -> Result<(), CliError> {
    if use_nf {
        let r = normal_form_with(rho, NormalFormOptions::default())?;
        report.normal_form = Some(NormalFormSummary::from_result(&r));
    }
    for id in criterion.ids() {
        if criterion == CriterionArg::All && id.bipartite_only() && rho.num_parties() != 2 {
            continue;
        }
        report.verdicts.extend(evaluate(rho, id, use_nf)?);
    }
    report.detected = Some(any_detected(&report.verdicts));
    Ok(())
}

fn check(a: &CheckArgs, report: &mut Report) -> Result<(), CliError> {
    let (input, rho) = load(&a.source)?;
    report.input = Some(input);
    check_state(&rho, a.criterion, a.normal_form, report)
}

fn check_one(path: &Path, a: &CheckArgs) -> (Report, i32) {
    let mut report = Report::new("check");
    report.input = Some(InputDescriptor::File { path: path.display().to_string() });
    let result = load_file(path).and_then(|(_, rho)| check_state(&rho, a.criterion, a.normal_form, &mut report));
    match result {
        Ok(()) => (report, EXIT_OK),
        Err(e) => {
            report.fail(&e);
            (report, e.exit_code)
        }
    }
}

fn batch_files(dir: &Path) -> Result<Vec<PathBuf>, CliError> {
    let entries = fs::read_dir(dir).map_err(|e| CliError::input(format!("{}: {e}", dir.display())))?;
    let mut files: Vec<PathBuf> = entries
        .filter_map(|e| e.ok().map(|e| e.path()))
        .filter(|p| p.is_file() && p.extension().is_some_and(|x| x == "json"))
        .collect();
    files.sort();
    Ok(files)
}

/// Files are checked concurrently; reports keep file-name order. The exit
/// code is the largest of the per-file codes.
fn run_batch(a: &CheckArgs, dir: &Path, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32 {
    let files = match batch_files(dir) {
        Ok(f) => f,
        Err(e) => {
            let _ = writeln!(stderr, "sepscan: {e}");
            return e.exit_code;
        }
    };
    let results: Vec<(Report, i32)> = files.par_iter().map(|p| check_one(p, a)).collect();
    let code = results.iter().map(|r| r.1).max().unwrap_or(EXIT_OK);
    let batch = BatchReport {
        schema: BATCH_SCHEMA.into(),
        tool_version: env!("CARGO_PKG_VERSION").into(),
        reports: results.into_iter().map(|r| r.0).collect(),
    };
    if let Some(path) = &a.output.out {
        if let Err(e) = write_json(path, &batch) {
            let _ = writeln!(stderr, "sepscan: {e}");
            return e.exit_code;
        }
    }
    emit(&batch, a.output.json, stdout);
    code
}

fn scan(a: &ScanArgs, report: &mut Report) -> Result<(), CliError> {
    let fam = family(&a.params)?;
    report.input = Some(InputDescriptor::FamilyScan { family: fam.clone(), p_lo: a.p_lo, p_hi: a.p_hi });
    let [id] = a.criterion.ids()[..] else {
        return Err(Error::BadParameter("scan needs a single criterion, not 'all'".into()).into());
    };
    let result = scan_threshold(|p| fam.at(p), id, a.normal_form, a.p_lo, a.p_hi, a.tol)?;
    report.scan = Some(result);
    Ok(())
}

fn nf(a: &NfArgs, report: &mut Report) -> Result<(), CliError> {
    let (input, rho) = load(&a.source)?;
    report.input = Some(input);
    let opts = NormalFormOptions { tol: a.tol, max_sweeps: a.max_sweeps, ..NormalFormOptions::default() };
    let r = match normal_form_with(&rho, opts) {
        Ok(r) => r,
        Err(Error::NoConvergence { best }) => {
            report.normal_form = Some(NormalFormSummary::from_result(&best));
            return Err(Error::NoConvergence { best }.into());
        }
        Err(e) => return Err(e.into()),
    };
    let mut summary = NormalFormSummary::from_result(&r);
    if let Some(path) = &a.output.out {
        StateFile::from_density(&r.nf).write(path)?;
        summary.output = Some(path.display().to_string());
    }
    report.normal_form = Some(summary);
    Ok(())
}

fn witness(a: &WitnessArgs, report: &mut Report) -> Result<(), CliError> {
    let built: Witness;
    let mut state = None;
    if let Some(mn) = &a.canonical {
        built = canonical_bipartite(mn[0], mn[1])?;
        report.input = Some(InputDescriptor::Canonical { dims: mn.clone() });
    } else if let Some(dims) = &a.canonical_multi {
        built = canonical_multipartite(dims)?;
        report.input = Some(InputDescriptor::Canonical { dims: dims.clone() });
    } else {
        let (input, rho) = match &a.from_state {
            Some(path) => load_file(path)?,
            None => load(&a.source)?,
        };
        report.input = Some(input);
        built = witness_from_state(&rho)?;
        state = Some(rho);
    }
    // a canonical witness is evaluated on an extra state if one is given
    if state.is_none() && has_source(&a.source) {
        let (input, rho) = load(&a.source)?;
        report.input = Some(input);
        state = Some(rho);
    }
    let value = state.as_ref().map(|rho| expectation(&built, rho)).transpose()?;
    report.witness = Some(WitnessReport { summary: built.summary(), expectation: value });
    Ok(())
}
