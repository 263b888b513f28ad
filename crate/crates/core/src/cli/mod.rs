//! Command-line front end: verification suites, R-matrix emission and link invariants.
//!
//! Exit codes: 0 when every check passes (or the computation converged), 1 when a check
//! fails, 2 for invalid flags, configuration or parameters.

mod config;
mod output;

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Parser, ValueEnum};
use num_rational::BigRational;
use rand::{Rng, SeedableRng};

pub use config::{parse_complex, parse_config, read_config};
pub use output::{render, Format, Record};

use crate::braid::{check_turaev, link_invariant, parse_braid};
use crate::classical::check_cybe;
use crate::error::{Error, Result};
use crate::fock::{
    conformal_weight, matrix_to_csv, matrix_to_json, pi3_rmatrix_literal, ribbon_spectrum, rinv_formula_matrix,
    rmatrix_formula_matrix, Reading, RepParams, C,
};
use crate::hopf_verify::{
    algebra_for, check_casimir, check_hopf_axioms, check_qybe, check_quasitriangular, check_r_twist_form,
    check_spectral_qybe, check_twist_conditions, check_u_ribbon, check_v_element, Recorder,
};
use crate::pbw::Preset;
use crate::rtt::{self, Rewriting, Sym};
use crate::series::{rat, Truncation};

pub const SEED_VAR: &str = "QHEIS_SEED";
const DEFAULT_SEED: u64 = 0x5eed;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Command {
    VerifyHopf,
    VerifyQybe,
    VerifyCybe,
    VerifyTwist,
    VerifyRibbon,
    VerifyRtt,
    Rmatrix,
    BraidInvariant,
    TuraevCheck,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum PresetArg {
    StandardH,
    NonstandardW,
    TwoParameter,
}

impl From<PresetArg> for Preset {
    fn from(p: PresetArg) -> Self {
        match p {
            PresetArg::StandardH => Preset::StandardH,
            PresetArg::NonstandardW => Preset::NonstandardW,
            PresetArg::TwoParameter => Preset::TwoParameter,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum RepArg {
    /// The undeformed three-dimensional representation, exact in `h`, `w`.
    Pi3,
    /// Two truncated Fock modules, numeric.
    Fock,
}

#[derive(Debug, Parser)]
#[command(name = "qheis", version, about = "Deformed Heisenberg Hopf algebra workbench", args_override_self = true)]
pub struct RunConfig {
    /// What to run (may also come from the config file).
    #[arg(value_enum)]
    pub command: Option<Command>,

    /// Flat key=value file mirroring the flag names; flags override it.
    #[arg(long)]
    pub config: Option<PathBuf>,

    /// Algebra preset; every preset when omitted.
    #[arg(long, value_enum)]
    pub preset: Option<PresetArg>,

    #[arg(long, default_value_t = 3, value_parser = clap::value_parser!(u32).range(1..))]
    pub kh: u32,

    #[arg(long, default_value_t = 3, value_parser = clap::value_parser!(u32).range(1..))]
    pub kw: u32,

    #[arg(long, default_value = "0.3", value_parser = parse_complex)]
    pub h: C,

    #[arg(long, default_value = "0.2", value_parser = parse_complex)]
    pub w: C,

    #[arg(long, default_value = "1", value_parser = parse_complex)]
    pub e: C,

    #[arg(long, default_value = "0", value_parser = parse_complex)]
    pub n: C,

    /// Color of the second factor for `rmatrix --rep fock`; defaults to `e`, `n`.
    #[arg(long, value_parser = parse_complex)]
    pub e2: Option<C>,

    #[arg(long, value_parser = parse_complex)]
    pub n2: Option<C>,

    /// States per Fock module.
    #[arg(long, default_value_t = 12, value_parser = clap::value_parser!(u64).range(2..))]
    pub cutoff: u64,

    #[arg(long, default_value_t = 1e-8, value_parser = positive)]
    pub tolerance: f64,

    /// Spectral factors `x_u,x_v` as rationals, e.g. `2,1/2`; repeatable.
    #[arg(long = "spectral", value_parser = parse_pair)]
    pub spectral: Vec<(BigRational, BigRational)>,

    #[arg(long, value_enum, default_value_t = RepArg::Pi3)]
    pub rep: RepArg,

    /// Emit the inverse R-matrix.
    #[arg(long)]
    pub inverse: bool,

    /// Use the formula exactly as printed instead of the corrected one.
    #[arg(long)]
    pub literal: bool,

    /// Braid word such as `B3: s1 s2^-1 s1`.
    #[arg(long)]
    pub braid: Option<String>,

    /// Rows checked by `turaev-check`.
    #[arg(long, default_value_t = 4)]
    pub rows: usize,

    /// Random words sampled for the confluence check of `verify-rtt`.
    #[arg(long, default_value_t = 64)]
    pub samples: usize,

    #[arg(long, value_enum, default_value_t = Format::Json)]
    pub format: Format,

    /// Output file instead of stdout.
    #[arg(long)]
    pub output: Option<PathBuf>,

    /// Leave timings out so identical runs give identical bytes.
    #[arg(long)]
    pub compare: bool,
}

fn positive(s: &str) -> std::result::Result<f64, String> {
    match s.parse::<f64>() {
        Ok(x) if x > 0.0 && x.is_finite() => Ok(x),
        _ => Err(format!("expected a positive number, got '{s}'")),
    }
}

fn parse_rational(s: &str) -> std::result::Result<BigRational, String> {
    let bad = || format!("invalid rational '{s}'");
    let (n, d) = s.trim().split_once('/').unwrap_or((s.trim(), "1"));
    let n: i64 = n.trim().parse().map_err(|_| bad())?;
    let d: i64 = d.trim().parse().map_err(|_| bad())?;
    if d == 0 {
        return Err(bad());
    }
    Ok(rat(n, d))
}

fn parse_pair(s: &str) -> std::result::Result<(BigRational, BigRational), String> {
    let (a, b) = s.split_once(',').ok_or_else(|| format!("expected x_u,x_v, got '{s}'"))?;
    Ok((parse_rational(a)?, parse_rational(b)?))
}

/// Parses flags, merging a config file underneath them. On failure returns the message and
/// the exit code to use.
pub fn parse_args<I, T>(args: I) -> std::result::Result<RunConfig, (String, i32)>
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let args: Vec<OsString> = args.into_iter().map(Into::into).collect();
    let clap_err = |e: clap::Error| (e.render().to_string(), e.exit_code());
    let first = RunConfig::try_parse_from(&args).map_err(clap_err)?;
    let Some(path) = first.config.clone() else {
        return require_command(first);
    };
    let (file_command, file_args) = read_config(&path).map_err(|e| (format!("error: {e}\n"), 2))?;
    let mut merged: Vec<OsString> = args.iter().take(1).cloned().collect();
    merged.extend(file_args.into_iter().map(OsString::from));
    merged.extend(args.iter().skip(1).cloned());
    let mut cfg = RunConfig::try_parse_from(&merged).map_err(clap_err)?;
    if cfg.command.is_none() {
        if let Some(name) = file_command {
            cfg.command = Some(
                Command::from_str(&name, false).map_err(|_| (format!("error: unknown command '{name}' in config\n"), 2))?,
            );
        }
    }
    require_command(cfg)
}

fn require_command(cfg: RunConfig) -> std::result::Result<RunConfig, (String, i32)> {
    if cfg.command.is_none() {
        use clap::CommandFactory;
        let usage = RunConfig::command().render_usage().to_string();
        return Err((format!("error: no command given\n\n{usage}\n"), 2));
    }
    Ok(cfg)
}

fn seed() -> Result<u64> {
    match std::env::var(SEED_VAR) {
        Ok(s) => s.trim().parse().map_err(|_| Error::Config(format!("{SEED_VAR} must be an unsigned integer, got '{s}'"))),
        Err(_) => Ok(DEFAULT_SEED),
    }
}

impl RunConfig {
    fn truncation(&self) -> Truncation {
        Truncation::new(self.kh, self.kw)
    }

    fn presets(&self) -> Vec<Preset> {
        match self.preset {
            Some(p) => vec![p.into()],
            None => Preset::ALL.to_vec(),
        }
    }

    fn rep_params(&self) -> Result<RepParams> {
        RepParams::new(self.h, self.w, self.e, self.n, self.cutoff as usize)
    }
}

/// Runs the selected command and returns its records.
pub fn execute(cfg: &RunConfig) -> Result<Vec<Record>> {
    let command = cfg.command.ok_or_else(|| Error::Config("no command given".into()))?;
    let trunc = cfg.truncation();
    let mut out = Vec::new();
    match command {
        Command::VerifyHopf => {
            for preset in cfg.presets() {
                let alg = algebra_for(preset, trunc);
                out.push(Record::Report(check_hopf_axioms(&alg, preset)?));
                out.push(Record::Report(check_quasitriangular(&alg, preset)?));
            }
        }
        Command::VerifyQybe => {
            for preset in cfg.presets() {
                out.push(Record::Report(check_qybe(&algebra_for(preset, trunc), preset)?));
            }
            if !cfg.spectral.is_empty() {
                let alg = algebra_for(Preset::TwoParameter, trunc);
                for (xu, xv) in &cfg.spectral {
                    out.push(Record::Report(check_spectral_qybe(&alg, xu, xv)?));
                }
            }
        }
        Command::VerifyCybe => {
            let pairs = if cfg.spectral.is_empty() {
                let grid = [rat(1, 1), rat(2, 1), rat(3, 1), rat(1, 2)];
                grid.iter().flat_map(|a| grid.iter().map(move |b| (a.clone(), b.clone()))).collect()
            } else {
                cfg.spectral.clone()
            };
            out.push(Record::Report(check_cybe(&pairs)));
        }
        Command::VerifyTwist => {
            let alg = algebra_for(Preset::TwoParameter, trunc);
            out.push(Record::Report(check_twist_conditions(&alg)?));
            out.push(Record::Report(check_v_element(&alg)?));
            out.push(Record::Report(check_r_twist_form(&alg)?));
            for preset in cfg.presets() {
                out.push(Record::Report(check_casimir(&algebra_for(preset, trunc), preset)?));
            }
        }
        Command::VerifyRibbon => {
            for preset in cfg.presets() {
                out.push(Record::Report(check_u_ribbon(&algebra_for(preset, trunc), preset)?));
            }
            let p = cfg.rep_params()?;
            let spectrum = ribbon_spectrum(&p, cfg.tolerance);
            let delta = conformal_weight(C::new(spectrum.eigenvalue[0], spectrum.eigenvalue[1]));
            let mut value = serde_json::to_value(&spectrum).expect("spectrum serializes");
            let obj = value.as_object_mut().expect("spectrum is an object");
            obj.insert("check".into(), "ribbon_spectrum".into());
            obj.insert("D".into(), cfg.cutoff.into());
            obj.insert("conformal_weight".into(), serde_json::json!([delta.re, delta.im]));
            obj.insert(
                "conformal_weight_note".into(),
                "interpretation: principal solution of e^{2 pi i Delta} = theta eigenvalue".into(),
            );
            out.push(Record::Object { value, pass: spectrum.scalar });
        }
        Command::VerifyRtt => {
            out.push(Record::Report(rtt::check_rtt(trunc)?));
            out.push(Record::Report(rtt::check_mutations(trunc)?));
            out.push(Record::Report(rtt::check_group_hopf(trunc)?));
            out.push(Record::Report(rtt::check_reductions(trunc)?));
            out.push(Record::Report(confluence_sample(trunc, cfg.samples, seed()?)));
        }
        Command::Rmatrix => out.push(rmatrix_record(cfg)?),
        Command::BraidInvariant => {
            let src = cfg.braid.as_deref().ok_or_else(|| Error::Config("braid-invariant needs --braid".into()))?;
            let word = parse_braid(src)?;
            let res = link_invariant(&word, &cfg.rep_params()?, cfg.tolerance);
            let mut value = serde_json::to_value(&res).expect("result serializes");
            value.as_object_mut().expect("result is an object").insert("notes".into(), serde_json::json!(res.notes));
            out.push(Record::Object { value, pass: res.converged });
        }
        Command::TuraevCheck => {
            out.push(Record::Report(check_turaev(&cfg.rep_params()?, cfg.rows, cfg.tolerance)?));
        }
    }
    Ok(out)
}

/// Normal forms under leftmost and rightmost rewriting agree on random words of length ≤ 6.
fn confluence_sample(trunc: Truncation, samples: usize, seed: u64) -> crate::hopf_verify::CheckReport {
    let mut rng = rand::rngs::StdRng::seed_from_u64(seed);
    let left = Rewriting::with(trunc, None, rtt::Strategy::Leftmost);
    let right = Rewriting::with(trunc, None, rtt::Strategy::Rightmost);
    let mut rec = Recorder::labelled("rtt_confluence", "F_{h,w}", trunc);
    for _ in 0..samples {
        let len = rng.gen_range(0..=6);
        let word: Vec<Sym> = (0..len).map(|_| Sym::ALL[rng.gen_range(0..Sym::ALL.len())]).collect();
        let a = left.reduce(&left.word(word.clone()));
        let b = right.reduce(&right.word(word.clone()));
        let label: String = word.iter().map(|s| s.name()).collect();
        rec.condition(&format!("confluent on {label}"), a == b && a.is_normal());
    }
    rec.note(format!("{samples} words, seed {seed}"));
    rec.finish()
}

fn rmatrix_record(cfg: &RunConfig) -> Result<Record> {
    match cfg.rep {
        RepArg::Pi3 => {
            let m = pi3_rmatrix_literal(cfg.truncation());
            let cells: Vec<Vec<String>> = m.iter().map(|r| r.iter().map(|c| c.to_string()).collect()).collect();
            let json = serde_json::json!({ "rep": "pi3", "K_h": cfg.kh, "K_w": cfg.kw, "matrix": cells });
            let mut w = csv::WriterBuilder::new().from_writer(Vec::new());
            for row in &cells {
                w.write_record(row).map_err(|e| Error::Config(e.to_string()))?;
            }
            let csv = String::from_utf8(w.into_inner().map_err(|e| Error::Config(e.to_string()))?)
                .expect("csv is utf-8");
            let width = cells.iter().flatten().map(|c| c.len()).max().unwrap_or(1);
            let text = cells
                .iter()
                .map(|r| r.iter().map(|c| format!("{c:>width$}")).collect::<Vec<_>>().join("  "))
                .collect::<Vec<_>>()
                .join("\n");
            Ok(Record::Matrix { json, csv, text })
        }
        RepArg::Fock => {
            let p1 = cfg.rep_params()?;
            let p2 = p1.with_color(cfg.e2.unwrap_or(cfg.e), cfg.n2.unwrap_or(cfg.n));
            let reading = if cfg.literal { Reading::Literal } else { Reading::Corrected };
            let m = if cfg.inverse {
                rinv_formula_matrix(&p1, &p2, reading)
            } else {
                rmatrix_formula_matrix(&p1, &p2, reading)
            };
            let json = serde_json::json!({
                "rep": "fock",
                "D": cfg.cutoff,
                "inverse": cfg.inverse,
                "reading": reading,
                "matrix": matrix_to_json(&m),
            });
            let text = format!("{m:.6}");
            Ok(Record::Matrix { json, csv: matrix_to_csv(&m), text })
        }
    }
}

/// Full entry point; returns the process exit code.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cfg = match parse_args(args) {
        Ok(cfg) => cfg,
        Err((msg, code)) => {
            // help and version requests come back with code 0 and go to stdout
            let sink: &mut dyn Write = if code == 0 { stdout } else { stderr };
            let _ = sink.write_all(msg.as_bytes());
            return code;
        }
    };
    let records = match execute(&cfg) {
        Ok(r) => r,
        Err(e) => {
            let _ = writeln!(stderr, "error: {e}");
            return 2;
        }
    };
    let text = render(&records, cfg.format, cfg.compare);
    let written = match &cfg.output {
        Some(path) => std::fs::write(path, text.as_bytes()),
        None => stdout.write_all(text.as_bytes()),
    };
    if let Err(e) = written {
        let _ = writeln!(stderr, "error: cannot write output: {e}");
        return 2;
    }
    if records.iter().all(Record::pass) {
        0
    } else {
        1
    }
}
