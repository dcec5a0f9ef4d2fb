//! `subspace-ent` command line.
//!
//! Exit codes: 0 success (or `Detected` for `check`), 3 `NotDetected`, 2 usage error, 1 runtime error.

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use subspace_ent::criterion::{check_claim, Claim, CriterionReport, Verdict};
use subspace_ent::experiments::{self, SweepResult};
use subspace_ent::io::{format_state, format_subspace, parse_index_list, parse_params, parse_state, parse_subspace};
use subspace_ent::measures::{self, MeasureSpec, MeasureValue, OptimizerConfig, DEFAULT_SEED};
use subspace_ent::oracle::{min_entanglement_grid_2d, min_subspace_entanglement, OracleResult};
use subspace_ent::states::{self, CompositionVector};
use subspace_ent::validation::{self, Fault, Suite, ValidationReport};
use subspace_ent::{Error, PureState, Subspace};

/// Directory for figure files when `--out` is not given.
pub const OUT_DIR_ENV: &str = "SUBSPACE_ENT_OUT";

pub const EXIT_OK: u8 = 0;
pub const EXIT_RUNTIME: u8 = 1;
pub const EXIT_USAGE: u8 = 2;
pub const EXIT_NOT_DETECTED: u8 = 3;

#[derive(Parser, Debug)]
#[command(name = "subspace-ent", version, about = "Entanglement of subspaces: measures, criterion checks, oracles and figure sweeps")]
pub struct Cli {
    #[command(flatten)]
    pub global: GlobalArgs,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Args, Debug, Clone)]
pub struct GlobalArgs {
    /// Master seed for randomized optimizer restarts
    #[arg(long, global = true, default_value_t = DEFAULT_SEED)]
    pub seed: u64,
    /// Optimizer restarts per see-saw
    #[arg(long, global = true, default_value_t = 64)]
    pub restarts: usize,
    /// Worker threads (default: all cores)
    #[arg(long, global = true)]
    pub threads: Option<usize>,
    /// Output format (default: csv for figure sweeps, json otherwise)
    #[arg(long, global = true, value_enum)]
    pub format: Option<Format>,
    /// Output file (default: stdout, or `$SUBSPACE_ENT_OUT/figK.csv` for sweeps)
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Write a named state in the state file format
    MakeState {
        #[arg(long, value_enum)]
        family: StateFamily,
        /// Comma-separated key=value parameters, e.g. `n=3,d=2`
        #[arg(long, default_value = "")]
        params: String,
    },
    /// Write a named subspace in the subspace file format
    MakeSubspace {
        #[arg(long, value_enum)]
        family: SubspaceFamily,
        #[arg(long, default_value = "")]
        params: String,
    },
    /// Evaluate a geometric measure of a state
    Measure {
        #[arg(long, value_enum)]
        kind: MeasureKind,
        /// Rank order for `er` and `gme`
        #[arg(long)]
        r: Option<usize>,
        /// Producibility order for `producib`
        #[arg(long)]
        k: Option<usize>,
        #[arg(long)]
        state: PathBuf,
    },
    /// Apply the subspace criterion to the basis in a subspace file
    Check {
        #[arg(long)]
        subspace: PathBuf,
        /// ces | ges | rank:R | depth:K | gme-rank:R
        #[arg(long, value_parser = parse_claim)]
        claim: Claim,
    },
    /// Estimate the minimal entanglement of a subspace directly
    Oracle {
        #[arg(long)]
        subspace: PathBuf,
        /// gm | ggm | er:R | gme:R
        #[arg(long, value_parser = parse_measure)]
        measure: MeasureSpec,
        /// Use the 2-D grid at this resolution instead of the projector see-saw
        #[arg(long)]
        grid: Option<usize>,
    },
    /// Qubit Dicke CES thresholds
    Fig1 {
        #[arg(long, default_value_t = 400)]
        nmax: u64,
        /// Include odd N (central pair of states)
        #[arg(long)]
        odd: bool,
    },
    /// Antisymmetric subspace detection region
    Fig2 {
        #[arg(long, default_value_t = 50)]
        dmax: u64,
    },
    /// Qudit Dicke GES dimensions for 3 <= N <= 10, 3 <= d <= 11
    Fig3,
    /// Maximal qudit Dicke GGM against N
    #[command(name = "figD")]
    FigD {
        #[arg(long, value_delimiter = ',', default_value = "3,4,5")]
        d: Vec<usize>,
        #[arg(long, default_value_t = 2)]
        nmin: usize,
        #[arg(long, default_value_t = 20)]
        nmax: usize,
    },
    /// Run the property suites
    Validate {
        #[arg(value_enum, default_value_t = SuiteArg::Quick)]
        suite: SuiteArg,
        /// Shift every criterion bound by this amount (negative control)
        #[arg(long, hide = true)]
        inject_fault: Option<f64>,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum StateFamily {
    Ghz,
    Dicke,
    Bell,
    Antisym,
    Ame,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum SubspaceFamily {
    Bell,
    Ghz,
    GhzW,
    GhzWRotated,
    Antisym,
    Dicke,
    Upb,
    RankPair,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum MeasureKind {
    Gm,
    Ggm,
    Er,
    Producib,
    Gme,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum SuiteArg {
    Quick,
    Full,
}

fn parse_claim(s: &str) -> Result<Claim, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

fn parse_measure(s: &str) -> Result<MeasureSpec, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

/// JSON envelope naming the schema file under `schemas/`.
#[derive(Serialize)]
struct Envelope<'a, T: Serialize> {
    schema: &'a str,
    #[serde(flatten)]
    body: T,
}

#[derive(Serialize)]
struct MeasureOutput {
    measure: String,
    #[serde(flatten)]
    value: MeasureValue,
}

#[derive(Serialize)]
struct CheckOutput {
    verdict_label: &'static str,
    #[serde(flatten)]
    report: CriterionReport,
}

/// Runs the command line and returns the process exit code.
pub fn dispatch<I, T>(args: I) -> u8
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
        }
    };
    if let Some(n) = cli.global.threads {
        // Fails only if a pool already exists (e.g. repeated in-process calls); keep that one.
        let _ = rayon::ThreadPoolBuilder::new().num_threads(n.max(1)).build_global();
    }
    match run(&cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            EXIT_RUNTIME
        }
    }
}

type CliResult<T> = Result<T, Box<dyn std::error::Error>>;

fn config(g: &GlobalArgs) -> OptimizerConfig {
    OptimizerConfig { restarts: g.restarts, seed: g.seed, ..Default::default() }
}

fn run(cli: &Cli) -> CliResult<u8> {
    let g = &cli.global;
    match &cli.command {
        Command::MakeState { family, params } => {
            let psi = make_state(*family, params)?;
            emit(g, None, &format_state(&psi))?;
        }
        Command::MakeSubspace { family, params } => {
            let v = make_subspace(*family, params)?;
            emit(g, None, &format_subspace(&v))?;
        }
        Command::Measure { kind, r, k, state } => {
            let psi = parse_state(&read(state)?)?;
            let spec = measure_spec(*kind, *r, *k)?;
            let value = measures::evaluate(&psi, spec, &config(g))?;
            if !value.method.is_certified() {
                eprintln!("warning: {spec} was computed by see-saw; the value may over-estimate the measure");
            }
            emit_json(g, "measure.v1", &MeasureOutput { measure: spec.to_string(), value })?;
        }
        Command::Check { subspace, claim } => {
            let v = parse_subspace(&read(subspace)?)?;
            let report = check_claim(&v, *claim, &config(g))?;
            if report.verdict == Verdict::Detected && !report.certified {
                eprintln!("warning: see-saw values fed this verdict; detection is heuristic");
            }
            let code = if report.verdict.is_detected() { EXIT_OK } else { EXIT_NOT_DETECTED };
            emit_json(g, "check.v1", &CheckOutput { verdict_label: report.verdict_label(), report })?;
            return Ok(code);
        }
        Command::Oracle { subspace, measure, grid } => {
            let v = parse_subspace(&read(subspace)?)?;
            let result: OracleResult = match grid {
                Some(res) => min_entanglement_grid_2d(&v, *measure, *res, &config(g))?,
                None => min_subspace_entanglement(&v, *measure, &config(g))?,
            };
            emit_json(g, "oracle.v1", &result)?;
        }
        Command::Fig1 { nmax, odd } => emit_sweep(g, "fig1", &experiments::fig1_sweep(*nmax, *odd)?)?,
        Command::Fig2 { dmax } => emit_sweep(g, "fig2", &experiments::antisym_detection_region(*dmax)?.sweep)?,
        Command::Fig3 => emit_sweep(g, "fig3", &experiments::fig3_sweep()?)?,
        Command::FigD { d, nmin, nmax } => {
            if nmin > nmax {
                return Err(Error::param(format!("empty range {nmin}..={nmax}")).into());
            }
            emit_sweep(g, "figD", &experiments::max_ggm_dicke_curve(d, *nmin..=*nmax)?)?
        }
        Command::Validate { suite, inject_fault } => {
            let suite = match suite {
                SuiteArg::Quick => Suite::Quick,
                SuiteArg::Full => Suite::Full,
            };
            let fault = Fault { bound_offset: inject_fault.unwrap_or(0.0) };
            let report: ValidationReport = validation::validate(suite, fault);
            emit_json(g, "validate.v1", &report)?;
            if !report.passed {
                eprintln!("failed: {}", report.failures().join("; "));
                return Ok(EXIT_RUNTIME);
            }
        }
    }
    Ok(EXIT_OK)
}

fn read(path: &Path) -> CliResult<String> {
    std::fs::read_to_string(path).map_err(|e| format!("cannot read {}: {e}", path.display()).into())
}

fn measure_spec(kind: MeasureKind, r: Option<usize>, k: Option<usize>) -> CliResult<MeasureSpec> {
    let need = |v: Option<usize>, flag: &str| v.ok_or_else(|| Error::param(format!("--kind needs {flag}")));
    Ok(match kind {
        MeasureKind::Gm => MeasureSpec::Gm,
        MeasureKind::Ggm => MeasureSpec::Ggm,
        MeasureKind::Er => MeasureSpec::SchmidtBounded { r: need(r, "--r")? },
        MeasureKind::Gme => MeasureSpec::GmeBoundedRank { r: need(r, "--r")? },
        MeasureKind::Producib => MeasureSpec::Producibility { k: need(k, "--k")? },
    })
}

struct Params(std::collections::BTreeMap<String, String>);

impl Params {
    fn parse(text: &str) -> CliResult<Self> {
        Ok(Self(parse_params(text)?))
    }

    fn usize(&self, key: &str) -> CliResult<usize> {
        let v = self.0.get(key).ok_or_else(|| Error::param(format!("missing parameter `{key}`")))?;
        v.parse().map_err(|_| Error::param(format!("parameter `{key}` must be a nonnegative integer, got `{v}`")).into())
    }

    fn usize_or(&self, key: &str, default: usize) -> CliResult<usize> {
        if self.0.contains_key(key) {
            self.usize(key)
        } else {
            Ok(default)
        }
    }

    fn list(&self, key: &str) -> CliResult<Vec<usize>> {
        let v = self.0.get(key).ok_or_else(|| Error::param(format!("missing parameter `{key}`")))?;
        Ok(parse_index_list(v)?)
    }

    fn has(&self, key: &str) -> bool {
        self.0.contains_key(key)
    }
}

fn make_state(family: StateFamily, params: &str) -> CliResult<PureState> {
    let p = Params::parse(params)?;
    Ok(match family {
        StateFamily::Ghz => states::ghz_shifted(p.usize("n")?, p.usize_or("d", 2)?, p.usize_or("j", 0)?)?,
        StateFamily::Dicke if p.has("kvec") => states::dicke_qudit(&CompositionVector::new(p.list("kvec")?)?)?,
        StateFamily::Dicke => states::dicke_qubit(p.usize("n")?, p.usize("k")?)?,
        StateFamily::Bell => states::bell_basis_vector(p.usize("d")?, p.usize_or("j", 0)?)?,
        StateFamily::Antisym => {
            let basis = states::antisymmetric_basis(p.usize("n")?, p.usize("d")?)?;
            let i = p.usize_or("index", 0)?;
            let len = basis.len();
            basis.into_iter().nth(i).ok_or_else(|| Error::param(format!("index {i} out of range (0..{len})")))?
        }
        StateFamily::Ame => states::ame_state(p.usize("n")?, p.usize("d")?)?,
    })
}

fn make_subspace(family: SubspaceFamily, params: &str) -> CliResult<Subspace> {
    let p = Params::parse(params)?;
    Ok(match family {
        SubspaceFamily::Bell => states::bell_subspace(p.usize("d")?, &p.list("idx")?)?,
        SubspaceFamily::Ghz => states::shifted_ghz_subspace(p.usize("n")?, p.usize("d")?, &p.list("idx")?)?,
        SubspaceFamily::GhzW => states::ghz_w_subspace(p.usize("n")?)?,
        SubspaceFamily::GhzWRotated => states::ghz_w_rotated_subspace()?,
        SubspaceFamily::Antisym => {
            let basis = states::antisymmetric_basis(p.usize("n")?, p.usize("d")?)?;
            let k = p.usize_or("k", basis.len())?;
            Subspace::new(basis).and_then(|v| v.truncated(k))?
        }
        SubspaceFamily::Dicke => {
            let n = p.usize("n")?;
            Subspace::new(p.list("ks")?.into_iter().map(|k| states::dicke_qubit(n, k)).collect::<Result<_, _>>()?)?
        }
        SubspaceFamily::Upb => states::upb_complement_3qubit(),
        SubspaceFamily::RankPair => states::rank_two_four_pair()?,
    })
}

fn write_to(path: Option<&Path>, text: &str) -> CliResult<()> {
    match path {
        Some(path) => {
            if let Some(dir) = path.parent().filter(|d| !d.as_os_str().is_empty()) {
                std::fs::create_dir_all(dir)?;
            }
            std::fs::write(path, text).map_err(|e| format!("cannot write {}: {e}", path.display()))?;
        }
        None => {
            let mut out = std::io::stdout().lock();
            out.write_all(text.as_bytes())?;
            out.flush()?;
        }
    }
    Ok(())
}

fn emit(g: &GlobalArgs, default_file: Option<PathBuf>, text: &str) -> CliResult<()> {
    write_to(g.out.clone().or(default_file).as_deref(), text)
}

fn emit_json<T: Serialize>(g: &GlobalArgs, schema: &str, body: &T) -> CliResult<()> {
    if g.format == Some(Format::Csv) {
        return Err(Error::param("--format csv is only available for figure sweeps").into());
    }
    let mut text = serde_json::to_string_pretty(&Envelope { schema, body })?;
    text.push('\n');
    emit(g, None, &text)
}

fn emit_sweep(g: &GlobalArgs, name: &str, sweep: &SweepResult) -> CliResult<()> {
    sweep.check_grid()?;
    let (text, ext) = match g.format.unwrap_or(Format::Csv) {
        Format::Csv => (sweep.to_csv(), "csv"),
        Format::Json => {
            let mut s = serde_json::to_string_pretty(&Envelope { schema: "sweep.v1", body: sweep })?;
            s.push('\n');
            (s, "json")
        }
    };
    let dir = std::env::var_os(OUT_DIR_ENV).map(PathBuf::from).unwrap_or_else(|| PathBuf::from("."));
    let path = g.out.clone().unwrap_or_else(|| dir.join(format!("{name}.{ext}")));
    write_to(Some(&path), &text)?;
    eprintln!("wrote {}", path.display());
    Ok(())
}
