//! Command-line front end: simulation, enumeration, verification, and
//! phase-diagram runs that emit CSV/JSON artifacts.
//!
//! Everything here is a thin, testable library layer; the `minwalk` binary
//! only parses arguments and routes to the `cmd_*` functions.
//!
//! Artifact rules:
//! * every real number is written with 17 significant digits, enough to
//!   round-trip a 64-bit float;
//! * every output embeds the config hash (first line `# config <sha256>`
//!   in CSV, a `configHash` field in JSON), so results are traceable;
//! * identical config + seed produce byte-identical outputs at any thread
//!   count; the only run-dependent field is the manifest timestamp.
//!
//! Exit codes: 0 success (including diagnostic verdicts), 1 runtime error,
//! 2 configuration or hypothesis error, 3 statistical failure.

use std::fs;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::closed_form::Regime;
use crate::error::{Error, Result};
use crate::model::{enumerate_distribution, ModelParams};
use crate::simulate::{run_ensemble_checkpointed, Engine};
use crate::verify::{
    lil_diagnostic, phase_diagram, verify_clt, verify_limit_q0, verify_regime, verify_slln,
    PhaseDiagram, Thresholds, Verdict, VerificationReport, VerifyConfig, REPORT_SCHEMA_VERSION,
};

// ---------------------------------------------------------------------------
// Run configuration
// ---------------------------------------------------------------------------

/// Walk parameters as they appear in config files.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase", default, deny_unknown_fields)]
pub struct ParamsConfig {
    pub p: f64,
    pub q: f64,
    pub s: f64,
}

impl Default for ParamsConfig {
    fn default() -> Self {
        ParamsConfig { p: 0.5, q: 0.5, s: 0.5 }
    }
}

/// Where artifacts land: `<dir>/<stem>.<kind>`. The stem defaults to the
/// command name.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase", default, deny_unknown_fields)]
pub struct OutputConfig {
    pub dir: String,
    pub stem: Option<String>,
}

impl Default for OutputConfig {
    fn default() -> Self {
        OutputConfig { dir: ".".into(), stem: None }
    }
}

/// Observation times: the string "pow2" (powers of two up to n, plus n) or
/// an explicit strictly increasing list.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum CheckpointSpec {
    Named(String),
    Explicit(Vec<u64>),
}

impl Default for CheckpointSpec {
    fn default() -> Self {
        CheckpointSpec::Named("pow2".into())
    }
}

/// One run, fully specified. Serializable round-trip: parse(emit(c)) == c.
/// Defaults: p=q=s=0.5, n=65536, replicas=100000, paths=32, seed=7,
/// stream=0, checkpoints "pow2", engine "reduced", default thresholds,
/// output dir ".".
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase", default, deny_unknown_fields)]
pub struct RunConfig {
    pub params: ParamsConfig,
    pub n: u64,
    pub replicas: u64,
    pub paths: u64,
    pub seed: u64,
    pub stream: u64,
    pub checkpoints: CheckpointSpec,
    pub engine: Engine,
    pub thresholds: Thresholds,
    pub output: OutputConfig,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            params: ParamsConfig::default(),
            n: 1 << 16,
            replicas: 100_000,
            paths: 32,
            seed: 7,
            stream: 0,
            checkpoints: CheckpointSpec::default(),
            engine: Engine::Reduced,
            thresholds: Thresholds::default(),
            output: OutputConfig::default(),
        }
    }
}

impl RunConfig {
    pub fn model_params(&self) -> Result<ModelParams> {
        ModelParams::new(self.params.p, self.params.q, self.params.s)
    }

    /// Explicit checkpoint list, or None for the "pow2" policy.
    pub fn checkpoint_list(&self) -> Result<Option<Vec<u64>>> {
        match &self.checkpoints {
            CheckpointSpec::Named(name) if name == "pow2" => Ok(None),
            CheckpointSpec::Named(other) => Err(Error::Config(format!(
                "unknown checkpoint value '{other}' (expected \"pow2\" or a list of times)"
            ))),
            CheckpointSpec::Explicit(times) => {
                if times.is_empty() {
                    return Err(Error::Config("checkpoint list is empty".into()));
                }
                if times[0] == 0 || times.windows(2).any(|w| w[0] >= w[1]) {
                    return Err(Error::Config(
                        "checkpoints must be strictly increasing and >= 1".into(),
                    ));
                }
                Ok(Some(times.clone()))
            }
        }
    }

    /// Times for the stats CSV: the explicit list, or 1, 2, 4, ... plus n.
    pub fn simulate_times(&self) -> Result<Vec<u64>> {
        if let Some(times) = self.checkpoint_list()? {
            return Ok(times);
        }
        if self.n == 0 {
            return Err(Error::out_of_range("n", "n >= 1 required"));
        }
        let mut times = Vec::new();
        let mut t = 1u64;
        while t <= self.n {
            times.push(t);
            t = t.saturating_mul(2);
        }
        if times.last() != Some(&self.n) {
            times.push(self.n);
        }
        Ok(times)
    }

    /// The same plan as a verification config.
    pub fn to_verify_config(&self) -> Result<VerifyConfig> {
        Ok(VerifyConfig {
            n: self.n,
            replicas: self.replicas,
            paths: self.paths,
            seed: self.seed,
            stream: self.stream,
            engine: self.engine,
            checkpoints: self.checkpoint_list()?,
            thresholds: self.thresholds,
        })
    }

    fn stem_or<'a>(&'a self, fallback: &'a str) -> &'a str {
        self.output.stem.as_deref().unwrap_or(fallback)
    }
}

/// Reads a config file (JSON, possibly partial: missing fields take their
/// defaults; unknown fields are rejected).
pub fn load_config(path: &Path) -> Result<RunConfig> {
    let text = fs::read_to_string(path)
        .map_err(|e| Error::Config(format!("cannot read config {}: {e}", path.display())))?;
    serde_json::from_str(&text)
        .map_err(|e| Error::Config(format!("config file {}: {e}", path.display())))
}

/// SHA-256 of the canonical (compact JSON) form of the config, with the
/// output block normalized away: the hash covers exactly the fields that
/// determine the numbers, so runs landing in different directories still
/// hash alike.
pub fn config_hash(config: &RunConfig) -> String {
    let mut canonical = config.clone();
    canonical.output = OutputConfig::default();
    let bytes = serde_json::to_vec(&canonical).expect("config serializes");
    let mut hasher = Sha256::new();
    hasher.update(&bytes);
    format!("{:x}", hasher.finalize())
}

// ---------------------------------------------------------------------------
// Artifact writers
// ---------------------------------------------------------------------------

/// 17 significant digits: lossless for every f64.
fn fmt_real(x: f64) -> String {
    format!("{x:.16e}")
}

#[derive(Serialize)]
#[serde(rename_all = "camelCase")]
struct Manifest<'a> {
    schema_version: u32,
    tool: &'static str,
    version: &'static str,
    command: &'a str,
    config_hash: &'a str,
    /// The only field that differs between identical runs.
    created_unix_ms: u128,
    config: &'a RunConfig,
}

fn write_manifest(
    dir: &Path,
    stem: &str,
    command: &str,
    config: &RunConfig,
    hash: &str,
) -> Result<PathBuf> {
    let manifest = Manifest {
        schema_version: REPORT_SCHEMA_VERSION,
        tool: "minwalk",
        version: env!("CARGO_PKG_VERSION"),
        command,
        config_hash: hash,
        created_unix_ms: std::time::SystemTime::now()
            .duration_since(std::time::UNIX_EPOCH)
            .map(|d| d.as_millis())
            .unwrap_or(0),
        config,
    };
    let path = dir.join(format!("{stem}.manifest.json"));
    fs::write(&path, serde_json::to_string_pretty(&manifest)?)?;
    Ok(path)
}

fn ensure_dir(config: &RunConfig) -> Result<PathBuf> {
    let dir = PathBuf::from(&config.output.dir);
    fs::create_dir_all(&dir)?;
    Ok(dir)
}

fn regime_label(regime: Regime) -> &'static str {
    match regime {
        Regime::Degenerate => "degenerate",
        Regime::Subdiffusive => "subdiffusive",
        Regime::Diffusive => "diffusive",
        Regime::Marginal => "marginal",
        Regime::Superdiffusive => "superdiffusive",
    }
}

// ---------------------------------------------------------------------------
// Commands
// ---------------------------------------------------------------------------

/// Samples an ensemble at the configured checkpoints and writes
/// `<stem>.stats.csv` (checkpoint, count, mean, var, m3, m4, min, max)
/// plus `<stem>.manifest.json`. `var` is the unbiased sample variance;
/// m3/m4 are population central moments.
pub fn cmd_simulate(config: &RunConfig) -> Result<Vec<PathBuf>> {
    let params = config.model_params()?;
    let times = config.simulate_times()?;
    let slots = run_ensemble_checkpointed(
        &params,
        &times,
        config.replicas,
        config.seed,
        config.stream,
        config.engine,
    )?;
    let hash = config_hash(config);
    let dir = ensure_dir(config)?;
    let stem = config.stem_or("simulate");

    let mut csv = format!("# config {hash}\ncheckpoint,count,mean,var,m3,m4,min,max\n");
    for stats in &slots {
        csv.push_str(&format!(
            "{},{},{},{},{},{},{},{}\n",
            stats.time,
            stats.count,
            fmt_real(stats.mean()),
            fmt_real(stats.variance()),
            fmt_real(stats.m3()),
            fmt_real(stats.m4()),
            stats.min,
            stats.max
        ));
    }
    let csv_path = dir.join(format!("{stem}.stats.csv"));
    fs::write(&csv_path, csv)?;
    let manifest_path = write_manifest(&dir, stem, "simulate", config, &hash)?;
    Ok(vec![csv_path, manifest_path])
}

/// Writes the exact endpoint distribution at n: `<stem>.pmf.csv`
/// (x, probability) plus the manifest.
pub fn cmd_enumerate(config: &RunConfig) -> Result<Vec<PathBuf>> {
    let params = config.model_params()?;
    let table = enumerate_distribution(&params, config.n)?;
    let hash = config_hash(config);
    let dir = ensure_dir(config)?;
    let stem = config.stem_or("enumerate");

    let mut csv = format!("# config {hash}\nx,probability\n");
    for (x, prob) in table.iter() {
        csv.push_str(&format!("{x},{}\n", fmt_real(prob)));
    }
    let csv_path = dir.join(format!("{stem}.pmf.csv"));
    fs::write(&csv_path, csv)?;
    let manifest_path = write_manifest(&dir, stem, "enumerate", config, &hash)?;
    Ok(vec![csv_path, manifest_path])
}

/// Which theorem a `verify` invocation checks.
#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum TheoremArg {
    Slln,
    Clt,
    Limit,
    Regime,
    LilDiag,
    All,
}

/// Runs the selected verification(s) and writes `<stem>.report.json`
/// (configHash + reports array), `<stem>.summary.txt`, and the manifest.
/// `all` runs every check whose hypotheses the parameters satisfy.
pub fn cmd_verify(
    theorem: TheoremArg,
    config: &RunConfig,
) -> Result<(Vec<VerificationReport>, Vec<PathBuf>)> {
    let params = config.model_params()?;
    let vcfg = config.to_verify_config()?;
    let alpha = params.alpha_snapped();
    let mut reports = Vec::new();
    match theorem {
        TheoremArg::Slln => reports.push(verify_slln(&params, &vcfg)?),
        TheoremArg::Clt => reports.push(verify_clt(&params, &vcfg)?),
        TheoremArg::Limit => {
            if params.q != 0.0 {
                return Err(Error::HypothesisViolation(
                    "the martingale limit law requires q = 0".into(),
                ));
            }
            reports.push(verify_limit_q0(params.s, params.p, &vcfg)?);
        }
        TheoremArg::Regime => reports.push(verify_regime(&params, &vcfg)?),
        TheoremArg::LilDiag => reports.push(lil_diagnostic(&params, &vcfg)?),
        TheoremArg::All => {
            if alpha < 1.0 {
                reports.push(verify_slln(&params, &vcfg)?);
            }
            if params.q > 0.0 && params.p < 1.0 && alpha <= 0.5 {
                reports.push(verify_clt(&params, &vcfg)?);
                reports.push(lil_diagnostic(&params, &vcfg)?);
            }
            if params.q == 0.0 && params.p > 0.5 && params.p < 1.0 && params.s > 0.0 {
                reports.push(verify_limit_q0(params.s, params.p, &vcfg)?);
            }
            reports.push(verify_regime(&params, &vcfg)?);
        }
    }

    let hash = config_hash(config);
    let dir = ensure_dir(config)?;
    let stem_owned;
    let stem = match &config.output.stem {
        Some(s) => s.as_str(),
        None => {
            stem_owned = format!(
                "verify-{}",
                match theorem {
                    TheoremArg::Slln => "slln",
                    TheoremArg::Clt => "clt",
                    TheoremArg::Limit => "limit",
                    TheoremArg::Regime => "regime",
                    TheoremArg::LilDiag => "lil-diag",
                    TheoremArg::All => "all",
                }
            );
            stem_owned.as_str()
        }
    };

    #[derive(Serialize)]
    #[serde(rename_all = "camelCase")]
    struct ReportFile<'a> {
        schema_version: u32,
        config_hash: &'a str,
        reports: &'a [VerificationReport],
    }
    let report_path = dir.join(format!("{stem}.report.json"));
    fs::write(
        &report_path,
        serde_json::to_string_pretty(&ReportFile {
            schema_version: REPORT_SCHEMA_VERSION,
            config_hash: &hash,
            reports: &reports,
        })?,
    )?;
    let summary: String = reports.iter().map(|r| r.summary()).collect();
    let summary_path = dir.join(format!("{stem}.summary.txt"));
    fs::write(&summary_path, &summary)?;
    let manifest_path = write_manifest(&dir, stem, "verify", config, &hash)?;
    Ok((reports, vec![report_path, summary_path, manifest_path]))
}

/// Exit code for a set of verification reports: 3 when any gated check
/// failed, 0 otherwise (diagnostic verdicts are successes).
pub fn verdict_exit_code(reports: &[VerificationReport]) -> i32 {
    if reports.iter().any(|r| r.verdict == Verdict::Fail) {
        3
    } else {
        0
    }
}

/// Parses a phase-diagram grid: "diagonal" (p = q in {0.2, 0.35, 0.5}),
/// "q0-row" (q = 0, p in {0.6, 0.7, 0.8, 0.9}), or explicit
/// "p,q,s;p,q,s;..." triples.
pub fn parse_grid(grid: &str) -> Result<Vec<ModelParams>> {
    match grid.trim() {
        "diagonal" => [0.2, 0.35, 0.5]
            .iter()
            .map(|&v| ModelParams::new(v, v, 0.5))
            .collect(),
        "q0-row" => [0.6, 0.7, 0.8, 0.9]
            .iter()
            .map(|&p| ModelParams::new(p, 0.0, 0.5))
            .collect(),
        "" => Err(Error::Config("phase diagram needs a non-empty grid".into())),
        explicit => explicit
            .split(';')
            .map(|triple| {
                let parts: Vec<&str> = triple.split(',').map(str::trim).collect();
                if parts.len() != 3 {
                    return Err(Error::Config(format!(
                        "grid point '{triple}' is not a p,q,s triple"
                    )));
                }
                let nums: Vec<f64> = parts
                    .iter()
                    .map(|t| {
                        t.parse::<f64>()
                            .map_err(|_| Error::Config(format!("bad number '{t}' in grid")))
                    })
                    .collect::<Result<_>>()?;
                ModelParams::new(nums[0], nums[1], nums[2])
            })
            .collect(),
    }
}

/// Measures the variance-growth exponent on each grid point and writes
/// `<stem>.phase.csv` (p, q, s, alpha, regime, predictedExponent,
/// measuredExponent, agree, growth) plus the manifest.
pub fn cmd_phase_diagram(
    grid_spec: &str,
    config: &RunConfig,
) -> Result<(PhaseDiagram, Vec<PathBuf>)> {
    let grid = parse_grid(grid_spec)?;
    let vcfg = config.to_verify_config()?;
    let diagram = phase_diagram(&grid, &vcfg)?;
    let hash = config_hash(config);
    let dir = ensure_dir(config)?;
    let stem = config.stem_or("phase");

    let mut csv = format!(
        "# config {hash}\np,q,s,alpha,regime,predictedExponent,measuredExponent,agree,growth\n"
    );
    for point in &diagram.points {
        let pr = &point.params;
        csv.push_str(&format!(
            "{},{},{},{},{},{},{},{},{}\n",
            fmt_real(pr.p),
            fmt_real(pr.q),
            fmt_real(pr.s),
            fmt_real(pr.alpha()),
            regime_label(point.law.regime),
            point.law.variance_exponent.map(fmt_real).unwrap_or_default(),
            fmt_real(point.measured_exponent),
            point.agree.map(|a| a.to_string()).unwrap_or_default(),
            point.law.growth
        ));
    }
    let csv_path = dir.join(format!("{stem}.phase.csv"));
    fs::write(&csv_path, csv)?;
    let manifest_path = write_manifest(&dir, stem, "phase-diagram", config, &hash)?;
    Ok((diagram, vec![csv_path, manifest_path]))
}

/// Exit code for a phase diagram: 3 when any point with a predicted
/// exponent disagrees, 0 otherwise.
pub fn phase_exit_code(diagram: &PhaseDiagram) -> i32 {
    if diagram.points.iter().any(|p| p.agree == Some(false)) {
        3
    } else {
        0
    }
}

// ---------------------------------------------------------------------------
// Argument parsing and dispatch
// ---------------------------------------------------------------------------

/// Command-line interface. Precedence: flags > config file > defaults.
#[derive(Parser, Debug)]
#[command(
    name = "minwalk",
    version,
    about = "Simulation and verification lab for a minimal random walk with memory"
)]
pub struct Cli {
    /// JSON config file; flags override its values.
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,
    /// Step-repeat probability p.
    #[arg(long, global = true)]
    pub p: Option<f64>,
    /// Fresh-step probability q.
    #[arg(long, global = true)]
    pub q: Option<f64>,
    /// First-step probability s.
    #[arg(long, global = true)]
    pub s: Option<f64>,
    /// Trajectory length.
    #[arg(long, global = true)]
    pub n: Option<u64>,
    /// Ensemble size.
    #[arg(long, global = true)]
    pub replicas: Option<u64>,
    /// Path count for trajectory-based checks.
    #[arg(long, global = true)]
    pub paths: Option<u64>,
    #[arg(long, global = true)]
    pub seed: Option<u64>,
    #[arg(long, global = true)]
    pub stream: Option<u64>,
    /// "pow2" or comma-separated times, e.g. "16,256,4096".
    #[arg(long, global = true)]
    pub checkpoints: Option<String>,
    /// Sampling engine: reduced | naive.
    #[arg(long, global = true)]
    pub engine: Option<String>,
    /// Output directory.
    #[arg(long = "out-dir", global = true)]
    pub out_dir: Option<String>,
    /// Artifact filename stem (default: the command name).
    #[arg(long, global = true)]
    pub stem: Option<String>,
    /// Worker threads (overrides MINWALK_THREADS; default: one per core).
    #[arg(long, global = true)]
    pub threads: Option<usize>,
    /// KS p-value gate for verification runs.
    #[arg(long = "ks-p-min", global = true)]
    pub ks_p_min: Option<f64>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Sample an ensemble and write checkpointed statistics.
    Simulate,
    /// Write the exact endpoint distribution at n.
    Enumerate,
    /// Check a limit theorem against simulation.
    Verify {
        #[arg(value_enum)]
        theorem: TheoremArg,
    },
    /// Measure variance-growth exponents across a parameter grid.
    PhaseDiagram {
        /// "diagonal", "q0-row", or explicit "p,q,s;p,q,s;..." triples.
        #[arg(long, default_value = "diagonal")]
        grid: String,
    },
}

fn parse_engine(name: &str) -> Result<Engine> {
    match name {
        "reduced" => Ok(Engine::Reduced),
        "naive" => Ok(Engine::Naive),
        other => Err(Error::Config(format!(
            "unknown engine '{other}' (expected reduced | naive)"
        ))),
    }
}

fn parse_checkpoints(text: &str) -> Result<CheckpointSpec> {
    if text == "pow2" {
        return Ok(CheckpointSpec::Named("pow2".into()));
    }
    let times: Vec<u64> = text
        .split(',')
        .map(|t| {
            t.trim()
                .parse::<u64>()
                .map_err(|_| Error::Config(format!("bad checkpoint '{t}'")))
        })
        .collect::<Result<_>>()?;
    Ok(CheckpointSpec::Explicit(times))
}

/// Folds defaults, the optional config file, and flag overrides into the
/// effective run configuration.
pub fn build_config(cli: &Cli) -> Result<RunConfig> {
    let mut config = match &cli.config {
        Some(path) => load_config(path)?,
        None => RunConfig::default(),
    };
    if let Some(v) = cli.p {
        config.params.p = v;
    }
    if let Some(v) = cli.q {
        config.params.q = v;
    }
    if let Some(v) = cli.s {
        config.params.s = v;
    }
    if let Some(v) = cli.n {
        config.n = v;
    }
    if let Some(v) = cli.replicas {
        config.replicas = v;
    }
    if let Some(v) = cli.paths {
        config.paths = v;
    }
    if let Some(v) = cli.seed {
        config.seed = v;
    }
    if let Some(v) = cli.stream {
        config.stream = v;
    }
    if let Some(text) = &cli.checkpoints {
        config.checkpoints = parse_checkpoints(text)?;
    }
    if let Some(name) = &cli.engine {
        config.engine = parse_engine(name)?;
    }
    if let Some(dir) = &cli.out_dir {
        config.output.dir = dir.clone();
    }
    if let Some(stem) = &cli.stem {
        config.output.stem = Some(stem.clone());
    }
    if let Some(v) = cli.ks_p_min {
        config.thresholds.ks_p_min = v;
    }
    Ok(config)
}

/// Full CLI entry point: parses `args`, runs the command, prints results,
/// and returns the process exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            // clap handles --help/--version as "errors" with success status.
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    let threads = cli.threads.or_else(|| {
        std::env::var("MINWALK_THREADS")
            .ok()
            .and_then(|v| v.parse().ok())
    });
    if let Some(t) = threads {
        // Only the first global-pool build wins; later calls are no-ops.
        let _ = rayon::ThreadPoolBuilder::new().num_threads(t).build_global();
    }
    match dispatch(&cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}

fn dispatch(cli: &Cli) -> Result<i32> {
    let config = build_config(cli)?;
    match &cli.command {
        Command::Simulate => {
            for path in cmd_simulate(&config)? {
                println!("wrote {}", path.display());
            }
            Ok(0)
        }
        Command::Enumerate => {
            for path in cmd_enumerate(&config)? {
                println!("wrote {}", path.display());
            }
            Ok(0)
        }
        Command::Verify { theorem } => {
            let (reports, paths) = cmd_verify(*theorem, &config)?;
            for report in &reports {
                print!("{}", report.summary());
            }
            for path in paths {
                println!("wrote {}", path.display());
            }
            Ok(verdict_exit_code(&reports))
        }
        Command::PhaseDiagram { grid } => {
            let (diagram, paths) = cmd_phase_diagram(grid, &config)?;
            for point in &diagram.points {
                println!(
                    "p={} q={} s={}: {} measured {:.4} predicted {} agree {}",
                    point.params.p,
                    point.params.q,
                    point.params.s,
                    regime_label(point.law.regime),
                    point.measured_exponent,
                    point
                        .law
                        .variance_exponent
                        .map(|e| format!("{e:.4}"))
                        .unwrap_or_else(|| "-".into()),
                    point
                        .agree
                        .map(|a| a.to_string())
                        .unwrap_or_else(|| "-".into())
                );
            }
            for path in paths {
                println!("wrote {}", path.display());
            }
            Ok(phase_exit_code(&diagram))
        }
    }
}
