use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use airbench::core::model::Split;
use airbench::core::scoring::{ScoreReport, ScoringConfig};
use airbench::core::synthflow::GenerationConfig;
use airbench::error::{Error, Result, EXIT_REJECTED};
use airbench::harness::{
    default_store_path, evaluate_benchmark, leaderboard_list, render_report, run_benchmark, run_inference,
    score_evaluation, Builtin, Evaluation, InferenceOptions, PredictorKind, PredictorSpec, RunOptions,
    Runner, TrainingSpec,
};
use airbench::io::{generate_benchmark, load_generation_config, load_scoring_config, split_dir};
use clap::{Args, Parser, Subcommand};

#[derive(Parser)]
#[command(name = "airbench", version, about = "Airfoil surrogate benchmark: generate, evaluate, score, rank")]
struct Cli {
    #[command(subcommand)]
    command: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Generate train/test/ood_test datasets from a generation config.
    Generate {
        #[arg(long)]
        config: Option<PathBuf>,
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long)]
        out: PathBuf,
    },
    /// Run a predictor on a benchmark and write its raw metrics.
    Evaluate {
        bench_dir: PathBuf,
        #[command(flatten)]
        predictor: PredictorArgs,
        /// Scoring config supplying the field-criterion definitions.
        #[arg(long)]
        config: Option<PathBuf>,
        #[arg(long)]
        out: PathBuf,
    },
    /// Score a metrics file.
    Score {
        metrics: PathBuf,
        #[arg(long)]
        config: Option<PathBuf>,
        /// Where to write the score report; printed only when absent.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Evaluate, score, and append to the leaderboard.
    Run {
        bench_dir: PathBuf,
        #[command(flatten)]
        predictor: PredictorArgs,
        #[arg(long)]
        config: Option<PathBuf>,
        /// Directory receiving metrics.json, score.json, report.txt and entry.json.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Leaderboard file; defaults to $AIRBENCH_STORE or ./leaderboard.jsonl.
        #[arg(long)]
        store: Option<PathBuf>,
        /// Leave the timestamp out of the leaderboard entry.
        #[arg(long)]
        no_timestamp: bool,
    },
    /// List leaderboard entries, best first.
    Leaderboard {
        #[arg(long)]
        store: Option<PathBuf>,
        /// Print entries as JSON lines.
        #[arg(long)]
        json: bool,
    },
    /// Render a score report file as a table.
    Report { score: PathBuf },
    /// Run a builtin predictor through the external file protocol.
    Predict {
        name: String,
        dataset_dir: PathBuf,
        pred_dir: PathBuf,
        /// Training split; defaults to the `train` directory next to the dataset.
        #[arg(long)]
        train: Option<PathBuf>,
    },
}

#[derive(Args)]
struct PredictorArgs {
    /// Builtin predictor: oracle, constant or knn:<k>.
    #[arg(long, conflicts_with = "external", required_unless_present = "external")]
    predictor: Option<String>,
    /// External command line, called as `<cmd> <dataset_dir> <pred_dir>`.
    #[arg(long)]
    external: Option<String>,
    /// Working directory of the external command.
    #[arg(long)]
    working_dir: Option<PathBuf>,
    /// Training command line, called as `<cmd> <train_dir>`.
    #[arg(long, requires = "train_budget")]
    train_cmd: Option<String>,
    /// Training wall-clock budget in seconds.
    #[arg(long, requires = "train_cmd")]
    train_budget: Option<f64>,
    #[arg(long)]
    label: Option<String>,
    /// Time inference this many times and keep the minimum.
    #[arg(long, default_value_t = 1)]
    repeat: u32,
    /// Report this inference time (seconds per split) instead of measuring.
    #[arg(long)]
    fixed_time: Option<f64>,
    /// Keep prediction files here instead of a temporary directory.
    #[arg(long)]
    work_dir: Option<PathBuf>,
}

fn split_command(line: &str) -> Result<Vec<String>> {
    match shlex::split(line) {
        Some(words) if !words.is_empty() => Ok(words),
        _ => Err(Error::Spec(format!("cannot parse command line `{line}`"))),
    }
}

impl PredictorArgs {
    fn spec(&self) -> Result<PredictorSpec> {
        let (kind, default_label) = match (&self.predictor, &self.external) {
            (Some(name), _) => (PredictorKind::Builtin(name.clone()), name.clone()),
            (None, Some(line)) => (
                PredictorKind::External { command: split_command(line)?, working_dir: self.working_dir.clone() },
                line.clone(),
            ),
            (None, None) => return Err(Error::Spec("either --predictor or --external is required".into())),
        };
        let training = match (&self.train_cmd, self.train_budget) {
            (Some(cmd), Some(budget_s)) => {
                Some(TrainingSpec { command: split_command(cmd)?, budget_s, working_dir: self.working_dir.clone() })
            }
            _ => None,
        };
        let spec = PredictorSpec { kind, training, label: self.label.clone().unwrap_or(default_label) };
        spec.validate()?;
        Ok(spec)
    }

    fn options(&self) -> RunOptions {
        RunOptions {
            inference: InferenceOptions { repeat: self.repeat, fixed_time_s: self.fixed_time, observer: None },
            work_dir: self.work_dir.clone(),
            store: None,
            record_timestamp: false,
        }
    }
}

fn scoring_config(path: &Option<PathBuf>) -> Result<ScoringConfig> {
    match path {
        Some(p) => load_scoring_config(p),
        None => Ok(ScoringConfig::default()),
    }
}

fn write_json<T: serde::Serialize>(path: &Path, value: &T) -> Result<()> {
    let mut bytes = serde_json::to_vec_pretty(value).expect("plain data always serializes");
    bytes.push(b'\n');
    if let Some(parent) = path.parent().filter(|p| !p.as_os_str().is_empty()) {
        fs::create_dir_all(parent).map_err(|e| Error::Io { path: parent.into(), source: e })?;
    }
    fs::write(path, bytes).map_err(|e| Error::Io { path: path.into(), source: e })
}

fn read_json<T: serde::de::DeserializeOwned>(path: &Path) -> Result<T> {
    let text = fs::read_to_string(path).map_err(|e| Error::Io { path: path.into(), source: e })?;
    serde_json::from_str(&text)
        .map_err(|e| Error::Format { path: path.into(), line: Some(e.line() as u64), message: e.to_string() })
}

fn finish(report: &ScoreReport) -> u8 {
    print!("{}", render_report(report));
    if report.rejection.is_some() {
        EXIT_REJECTED as u8
    } else {
        0
    }
}

fn execute(cli: Cli) -> Result<u8> {
    match cli.command {
        Cmd::Generate { config, seed, out } => {
            let mut c = match &config {
                Some(p) => load_generation_config(p)?,
                None => GenerationConfig::default(),
            };
            if let Some(s) = seed {
                c.seed = s;
            }
            let digests = generate_benchmark(&c, &out)?;
            for (split, d) in &digests.splits {
                println!("{split}: {d}");
            }
            Ok(0)
        }
        Cmd::Evaluate { bench_dir, predictor, config, out } => {
            let scoring = scoring_config(&config)?;
            let evaluation =
                evaluate_benchmark(&predictor.spec()?, &bench_dir, &scoring.field_criteria, &predictor.options())?;
            write_json(&out, &evaluation)?;
            Ok(if evaluation.metrics.training_rejection.is_some() { EXIT_REJECTED as u8 } else { 0 })
        }
        Cmd::Score { metrics, config, out } => {
            let evaluation: Evaluation = read_json(&metrics)?;
            let (report, _) = score_evaluation(&evaluation, &scoring_config(&config)?)?;
            if let Some(out) = out {
                write_json(&out, &report)?;
            }
            Ok(finish(&report))
        }
        Cmd::Run { bench_dir, predictor, config, out, store, no_timestamp } => {
            let scoring = scoring_config(&config)?;
            let mut options = predictor.options();
            options.record_timestamp = !no_timestamp;
            options.store = Some(store.unwrap_or_else(default_store_path));
            let outcome = run_benchmark(&predictor.spec()?, &bench_dir, &scoring, &options)?;
            if let Some(dir) = out {
                write_json(&dir.join("metrics.json"), &outcome.evaluation)?;
                write_json(&dir.join("score.json"), &outcome.report)?;
                write_json(&dir.join("entry.json"), &outcome.entry)?;
                fs::write(dir.join("report.txt"), render_report(&outcome.report))
                    .map_err(|e| Error::Io { path: dir.join("report.txt"), source: e })?;
            }
            Ok(finish(&outcome.report))
        }
        Cmd::Leaderboard { store, json } => {
            let entries = leaderboard_list(&store.unwrap_or_else(default_store_path))?;
            for (rank, e) in entries.iter().enumerate() {
                if json {
                    println!("{}", serde_json::to_string(e).expect("plain data always serializes"));
                } else {
                    let note = e.rejection.as_deref().map(|r| format!("  [rejected: {r}]")).unwrap_or_default();
                    println!("{:>3}  {:>6.1}%  {:<24} {:?}{note}", rank + 1, 100.0 * e.global, e.label, e.timing);
                }
            }
            Ok(0)
        }
        Cmd::Report { score } => {
            let report: ScoreReport = read_json(&score)?;
            print!("{}", render_report(&report));
            Ok(0)
        }
        Cmd::Predict { name, dataset_dir, pred_dir, train } => {
            let train_dir = match train {
                Some(t) => t,
                None => dataset_dir.parent().map(|p| split_dir(p, Split::Train)).unwrap_or_default(),
            };
            let builtin = Builtin::parse(&name)?;
            let train = match builtin {
                Builtin::Oracle => airbench::core::model::Dataset {
                    split: Split::Train,
                    samples: Vec::new(),
                    generation_config_digest: String::new(),
                },
                _ => airbench::io::read_dataset(&train_dir)?,
            };
            let runner = Runner::Builtin(builtin.fit(&train)?);
            run_inference(&runner, &dataset_dir, &pred_dir, &InferenceOptions::default())?;
            Ok(0)
        }
    }
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = Cli::parse();
    match execute(cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
