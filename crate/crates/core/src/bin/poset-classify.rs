use std::collections::BTreeSet;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use poset_classify::classifier::{duplicate_object, Prediction, TrainOptions};
use poset_classify::dataio::{
    self, format_solution, load_model, parse_dataset, parse_dataset_document, parse_instance,
    parse_order_spec, save_model, to_training_set, OrderSpec, RawDataset,
};
use poset_classify::dualization::covering_to_element;
use poset_classify::eval::{evaluate, EvalConfig};
use poset_classify::random::{random_rows, random_space, MIXED};
use poset_classify::{CoveringMatrix, Element, Enumerator, Method, TiePolicy, TrainedModel};

#[derive(Parser)]
#[command(name = "poset-classify", version, about = "Logical classification over products of partial orders")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Train a model and write it as TOML.
    Train {
        #[command(flatten)]
        data: DataArgs,
        #[command(flatten)]
        train: TrainArgs,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Classify every row of a dataset with a saved model.
    Predict {
        #[command(flatten)]
        data: DataArgs,
        #[arg(long)]
        model: PathBuf,
        #[arg(long, value_enum, default_value_t = Tie::Abstain)]
        tie: Tie,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Stratified cross-validation; writes a TOML metrics report.
    Evaluate {
        #[command(flatten)]
        data: DataArgs,
        #[command(flatten)]
        train: TrainArgs,
        #[arg(long, default_value_t = 3)]
        folds: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, value_enum, default_value_t = Tie::Abstain)]
        tie: Tie,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Enumerate the ordered irredundant coverings of an instance.
    Dualize {
        #[arg(long)]
        instance: PathBuf,
        #[arg(long)]
        max_rank: Option<usize>,
        /// Split the search tree across threads.
        #[arg(long)]
        parallel: bool,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Compare the enumerator with a brute-force scan of the product.
    OracleCheck {
        #[arg(long, conflicts_with = "random", required_unless_present = "random")]
        instance: Option<PathBuf>,
        /// Number of seeded random instances to check.
        #[arg(long)]
        random: Option<usize>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

#[derive(Args)]
struct DataArgs {
    /// CSV with a header row (needs --orders), or a TOML dataset with the
    /// order spec inline.
    #[arg(long)]
    data: PathBuf,
    /// TOML order spec for a CSV dataset.
    #[arg(long)]
    orders: Option<PathBuf>,
}

#[derive(Args)]
struct TrainArgs {
    #[arg(long, default_value = "representative")]
    method: Method,
    #[arg(long)]
    max_rank: Option<usize>,
    /// Append reversed copies of all features.
    #[arg(long)]
    duplicate: bool,
}

#[derive(Clone, Copy, ValueEnum)]
enum Tie {
    Abstain,
    LowestIndex,
}

impl From<Tie> for TiePolicy {
    fn from(t: Tie) -> Self {
        match t {
            Tie::Abstain => TiePolicy::Abstain,
            Tie::LowestIndex => TiePolicy::LowestIndex,
        }
    }
}

enum Failure {
    Invalid(String),
    Mismatch(String),
}

impl<E: std::fmt::Display> From<E> for Failure {
    fn from(e: E) -> Self {
        Failure::Invalid(e.to_string())
    }
}

fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| Failure::Invalid(format!("{}: {e}", path.display())))
}

fn context<T, E: std::fmt::Display>(path: &Path, r: Result<T, E>) -> Result<T, Failure> {
    r.map_err(|e| Failure::Invalid(format!("{}: {e}", path.display())))
}

fn write_out(out: &Option<PathBuf>, text: &str) -> Result<(), Failure> {
    match out {
        Some(p) => fs::write(p, text).map_err(|e| Failure::Invalid(format!("{}: {e}", p.display()))),
        None => match std::io::stdout().lock().write_all(text.as_bytes()) {
            Err(e) if e.kind() != std::io::ErrorKind::BrokenPipe => Err(e.into()),
            _ => Ok(()),
        },
    }
}

fn load_data(args: &DataArgs) -> Result<(OrderSpec, RawDataset), Failure> {
    let text = read(&args.data)?;
    match &args.orders {
        Some(o) => {
            let spec = context(o, parse_order_spec(&read(o)?))?;
            let raw = context(&args.data, parse_dataset(&text, &spec))?;
            Ok((spec, raw))
        }
        None => context(&args.data, parse_dataset_document(&text)),
    }
}

fn run(cli: Cli) -> Result<(), Failure> {
    match cli.command {
        Command::Train { data, train, out } => {
            let (spec, raw) = load_data(&data)?;
            let ts = to_training_set(&spec, &raw, train.duplicate)?;
            let opts = TrainOptions { max_rank: train.max_rank, parallel: true };
            let model = TrainedModel::train(&ts, train.method, opts)?;
            write_out(&out, &save_model(&model)?)
        }
        Command::Predict { data, model, tie, out } => {
            let (spec, raw) = load_data(&data)?;
            let model = context(&model, load_model(&read(&model)?, &spec))?;
            let mut text = String::from("row,actual,predicted");
            for c in &model.classes {
                text.push_str(&format!(",score:{}", c.name));
            }
            text.push('\n');
            let mut correct = 0;
            for (i, row) in raw.rows.iter().enumerate() {
                let mut s = dataio::encode_object(&spec, row, raw.lines[i])?;
                if model.duplicated {
                    s = duplicate_object(&s);
                }
                let predicted = match model.classify(&s, tie.into())? {
                    Prediction::Class(k) => model.classes[k].name.as_str(),
                    Prediction::Abstain => "",
                };
                correct += (predicted == raw.classes[i]) as usize;
                text.push_str(&format!("{},{},{predicted}", i + 1, raw.classes[i]));
                for sc in model.estimate(&s)? {
                    text.push_str(&format!(",{:.6}", sc.normalized));
                }
                text.push('\n');
            }
            write_out(&out, &text)?;
            eprintln!("accuracy {:.4} ({correct}/{})", correct as f64 / raw.len() as f64, raw.len());
            Ok(())
        }
        Command::Evaluate { data, train, folds, seed, tie, out } => {
            let (spec, raw) = load_data(&data)?;
            let ts = to_training_set(&spec, &raw, false)?;
            let cfg = EvalConfig {
                method: train.method,
                folds,
                seed,
                max_rank: train.max_rank,
                duplicate: train.duplicate || spec.duplicate_reversed,
                tie: tie.into(),
                parallel: true,
            };
            write_out(&out, &evaluate(&ts, &cfg)?.to_toml())
        }
        Command::Dualize { instance, max_rank, parallel, out } => {
            let (_, m) = context(&instance, parse_instance(&read(&instance)?))?;
            let en = Enumerator::new(&m)?.max_rank(max_rank);
            let sols = if parallel { en.collect_parallel() } else { en.collect() };
            let mut text = String::new();
            for s in &sols {
                text.push_str(&format_solution(m.space(), s));
                text.push('\n');
            }
            write_out(&out, &text)
        }
        Command::OracleCheck { instance, random, seed } => {
            if let Some(path) = instance {
                let (_, m) = context(&path, parse_instance(&read(&path)?))?;
                check(&m)?;
                println!("ok: 1 instance");
            } else {
                let count = random.unwrap_or(0);
                let mut rng = ChaCha8Rng::seed_from_u64(seed);
                for i in 0..count {
                    let sp = random_space(&mut rng, MIXED, 4, 4);
                    let rows = random_rows(&mut rng, &sp, 12);
                    let m = CoveringMatrix::new(sp, rows)?;
                    check(&m).map_err(|f| match f {
                        Failure::Mismatch(s) => Failure::Mismatch(format!("instance {i}: {s}")),
                        other => other,
                    })?;
                }
                println!("ok: {count} instances");
            }
            Ok(())
        }
    }
}

fn check(m: &CoveringMatrix) -> Result<(), Failure> {
    let sp = m.space();
    let mut got = BTreeSet::new();
    for s in Enumerator::new(m)?.collect() {
        let x = covering_to_element(sp, &s.covering)?;
        if !got.insert(x.clone()) {
            return Err(Failure::Mismatch(format!("{x} emitted twice")));
        }
    }
    let want: BTreeSet<Element> = sp.brute_force_max_independent(m.rows())?.into_iter().collect();
    if got != want {
        let missing: Vec<String> = want.difference(&got).map(|x| x.to_string()).collect();
        let extra: Vec<String> = got.difference(&want).map(|x| x.to_string()).collect();
        return Err(Failure::Mismatch(format!(
            "missing [{}], extra [{}]",
            missing.join(" "),
            extra.join(" ")
        )));
    }
    Ok(())
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Invalid(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Mismatch(msg)) => {
            eprintln!("oracle mismatch: {msg}");
            ExitCode::from(3)
        }
    }
}
