//! `workbench`: parse, transform and decide descriptors, build exact trade-off tables
//! and run the two proof schemes.
//!
//! Exit status: 0 for a definite answer, 2 for Unknown, 1 for any error.

mod verify;

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{anyhow, bail, Context};
use clap::{Args, Parser, Subcommand, ValueEnum};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::json;

use workbench_core::schemes::{self, SchemeConfig, SchemeReport};
use workbench_core::systems::{self, Question, SchemeKind};
use workbench_core::tradeoff::{self, Mode, Strategy, TradeoffConfig};
use workbench_core::{sample, Alphabet, Descriptor, MeasureKind, Morphism, Nfa, Side, SizeMeasure, SystemId, Verdict, Word};

use verify::Oracle;

#[derive(Parser)]
#[command(name = "workbench", version, about = "Descriptional systems workbench: automata, grammars, trade-offs")]
struct Cli {
    /// Machine-readable JSON output
    #[arg(long, global = true)]
    json: bool,

    /// Worker threads for the trade-off and scheme engines
    #[arg(long, global = true, value_name = "K")]
    jobs: Option<usize>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Decide emptiness, finiteness or membership of a descriptor
    Decide {
        file: PathBuf,
        #[arg(value_enum)]
        question: QuestionArg,
        /// The word for `member`; `_` is the empty word
        #[arg(long)]
        word: Option<String>,
    },
    /// Apply a closure operation; the result keeps the input's format
    Closure(ClosureArgs),
    /// Exact trade-off table for small sizes
    Tradeoff(TradeoffArgs),
    /// Run a proof scheme and write its JSON report, or re-validate a stored report
    Scheme(SchemeArgs),
    /// Mechanical precondition check of a scheme for a pair of systems
    Preconditions {
        #[arg(long)]
        from: SystemId,
        #[arg(long)]
        to: SystemId,
        #[arg(long)]
        scheme: SchemeKind,
    },
    /// Seeded random descriptors
    Sample(SampleArgs),
}

#[derive(Clone, Copy, ValueEnum)]
enum QuestionArg {
    Empty,
    Finite,
    Member,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum ClosureOp {
    Up,
    Down,
    Union,
    Intersect,
    Concat,
    Morphism,
    InverseMorphism,
    Substitute,
}

#[derive(Clone, Copy, ValueEnum)]
enum SideArg {
    Left,
    Right,
}

#[derive(Args)]
struct ClosureArgs {
    file: PathBuf,
    #[arg(value_enum)]
    op: ClosureOp,
    /// Second operand for union, intersect and concat
    #[arg(long, value_name = "FILE")]
    with: Option<PathBuf>,
    /// Where concat puts the regular operand
    #[arg(long, value_enum, default_value = "right")]
    side: SideArg,
    /// Morphism images, e.g. `a=xy,b=_`
    #[arg(long)]
    map: Option<String>,
    /// Codomain of a forward morphism (default: the input alphabet)
    #[arg(long)]
    target_alphabet: Option<String>,
    /// Substitution images, e.g. `a=img_a.nfa,b=img_b.nfa`
    #[arg(long)]
    images: Option<String>,
    #[arg(short, long)]
    output: Option<PathBuf>,
    /// Check membership of every word up to length L against an exact oracle
    #[arg(long, value_name = "L")]
    verify_bounded: Option<usize>,
}

#[derive(Clone, Copy, ValueEnum)]
enum ModeArg {
    Exhaustive,
    Promise,
}

#[derive(Clone, Copy, ValueEnum)]
enum StrategyArg {
    Schema,
    Shortcut,
}

#[derive(Args)]
struct TradeoffArgs {
    #[arg(long)]
    from: SystemId,
    #[arg(long)]
    to: SystemId,
    #[arg(long, default_value = "ab")]
    alphabet: String,
    /// A size `3` or an inclusive range `1..3`
    #[arg(long, default_value = "1..2")]
    n: String,
    #[arg(long, value_enum, default_value = "exhaustive")]
    mode: ModeArg,
    /// Source descriptors asserted to lie in the target family (promise mode)
    #[arg(long, num_args = 1.., value_name = "FILE")]
    promise: Vec<PathBuf>,
    /// Skip descriptors that are isomorphic copies of an earlier one
    #[arg(long)]
    prune_iso: bool,
    #[arg(long, value_enum, default_value = "schema")]
    strategy: StrategyArg,
    #[arg(long)]
    from_measure: Option<MeasureKind>,
    #[arg(long)]
    to_measure: Option<MeasureKind>,
    /// Directory receiving the witness descriptors
    #[arg(long)]
    witness_dir: Option<PathBuf>,
    /// Largest enumeration the engine accepts
    #[arg(long, env = "WORKBENCH_CEILING")]
    ceiling: Option<u64>,
}

#[derive(Args)]
struct SchemeArgs {
    #[arg(required_unless_present = "check")]
    kind: Option<SchemeKind>,
    #[arg(long, required_unless_present = "check")]
    input: Option<PathBuf>,
    /// The assumed recursive bound; enumerates targets up to this size
    #[arg(long, required_unless_present = "check")]
    bound: Option<usize>,
    /// Step budget of the dovetailed search
    #[arg(long, default_value_t = schemes::DEFAULT_BUDGET)]
    budget: u64,
    #[arg(long, env = "WORKBENCH_CEILING")]
    ceiling: Option<u64>,
    #[arg(short, long)]
    output: Option<PathBuf>,
    /// Re-validate a stored report
    #[arg(long, value_name = "REPORT", conflicts_with_all = ["kind", "input", "bound"])]
    check: Option<PathBuf>,
}

#[derive(Clone, Copy, ValueEnum)]
enum SampleKind {
    Nfa,
    Dfa,
    Cfg,
    FiniteNfa,
}

#[derive(Args)]
struct SampleArgs {
    #[arg(value_enum)]
    kind: SampleKind,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value_t = 1)]
    count: usize,
    #[arg(long, default_value = "ab")]
    alphabet: String,
    /// Maximum states, or maximum productions for grammars
    #[arg(long, default_value_t = 4)]
    size: usize,
    /// Write `sample-<i>.<ext>` files here instead of printing
    #[arg(long)]
    out_dir: Option<PathBuf>,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(1) } else { ExitCode::SUCCESS };
        }
    };
    match run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
    }
}

fn run(cli: Cli) -> anyhow::Result<ExitCode> {
    let json = cli.json;
    match cli.command {
        Command::Decide { file, question, word } => decide(&file, question, word.as_deref(), json),
        Command::Closure(args) => closure(&args),
        Command::Tradeoff(args) => run_tradeoff(&args, cli.jobs, json),
        Command::Scheme(args) => scheme(&args, cli.jobs),
        Command::Preconditions { from, to, scheme } => {
            let report = systems::check_scheme_preconditions(from, to, scheme);
            if json {
                say(&serde_json::to_string_pretty(&report)?);
            } else {
                out(&report.to_string());
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Sample(args) => run_sample(&args),
    }
}

fn load(path: &Path) -> anyhow::Result<Descriptor> {
    let text = fs::read_to_string(path).with_context(|| format!("cannot read {}", path.display()))?;
    let hint = path.extension().and_then(|e| e.to_str()).and_then(SystemId::from_tag);
    Descriptor::parse(&text, hint).map_err(|e| anyhow!("{}: {e}", path.display()))
}

fn alphabet(spec: &str) -> anyhow::Result<Alphabet> {
    Ok(Alphabet::new(spec.chars())?)
}

/// Writes to stdout; a closed pipe ends the output quietly.
fn out(text: &str) {
    let mut stdout = std::io::stdout().lock();
    let _ = stdout.write_all(text.as_bytes()).and_then(|_| stdout.flush());
}

fn say(line: &str) {
    out(&format!("{line}\n"));
}

fn emit(text: &str, output: Option<&Path>) -> anyhow::Result<()> {
    match output {
        Some(p) => fs::write(p, text).with_context(|| format!("cannot write {}", p.display())),
        None => {
            out(text);
            Ok(())
        }
    }
}

fn decide(file: &Path, question: QuestionArg, word: Option<&str>, json: bool) -> anyhow::Result<ExitCode> {
    let d = load(file)?;
    let q = match (question, word) {
        (QuestionArg::Empty, None) => Question::Empty,
        (QuestionArg::Finite, None) => Question::Finite,
        (QuestionArg::Member, Some(w)) => Question::Member(Word::from_text(w)),
        (QuestionArg::Member, None) => bail!("`member` needs --word"),
        (_, Some(_)) => bail!("--word only applies to `member`"),
    };
    let verdict = systems::decide(&d, &q)?;
    let text = match verdict {
        Verdict::True => "True",
        Verdict::False => "False",
        Verdict::Unknown { .. } => "Unknown",
    };
    if json {
        say(&json!({ "file": file.display().to_string(), "system": d.system(), "verdict": verdict }).to_string());
    } else {
        say(text);
    }
    Ok(if verdict.is_definite() { ExitCode::SUCCESS } else { ExitCode::from(2) })
}

/// Parses `a=xy,b=_` into `(symbol, image)` pairs.
fn parse_pairs(spec: &str) -> anyhow::Result<Vec<(char, String)>> {
    spec.split(',')
        .map(|item| {
            let (k, v) = item.split_once('=').ok_or_else(|| anyhow!("expected `symbol=value`, found `{item}`"))?;
            let mut chars = k.trim().chars();
            match (chars.next(), chars.next()) {
                (Some(c), None) => Ok((c, v.trim().to_string())),
                _ => bail!("`{k}` is not a single symbol"),
            }
        })
        .collect()
}

fn closure(args: &ClosureArgs) -> anyhow::Result<ExitCode> {
    let input = load(&args.file)?;
    let second = || -> anyhow::Result<Descriptor> {
        let path = args.with.as_ref().ok_or_else(|| anyhow!("this operation needs --with FILE"))?;
        load(path)
    };
    let map = || -> anyhow::Result<Vec<(char, Word)>> {
        let spec = args.map.as_ref().ok_or_else(|| anyhow!("this operation needs --map"))?;
        Ok(parse_pairs(spec)?.into_iter().map(|(c, w)| (c, Word::from_text(&w))).collect())
    };
    let (result, oracle) = match args.op {
        ClosureOp::Up => (systems::up(&input)?, Oracle::Up(input.clone())),
        ClosureOp::Down => (systems::down(&input)?, Oracle::Down(input.clone())),
        ClosureOp::Union => {
            let other = second()?;
            (systems::union(&input, &other)?, Oracle::Union(input.clone(), other))
        }
        ClosureOp::Intersect => {
            let regular = second()?.to_min_dfa().context("the --with operand must be regular")?;
            (systems::intersect_regular(&input, &regular)?, Oracle::Intersect(input.clone(), regular))
        }
        ClosureOp::Concat => {
            let regular = second()?.to_nfa().context("the --with operand must be regular")?;
            let side = match args.side {
                SideArg::Left => Side::Left,
                SideArg::Right => Side::Right,
            };
            (systems::concat_regular(&input, &regular, side)?, Oracle::Concat(input.clone(), regular, side))
        }
        ClosureOp::Morphism => {
            let target = match &args.target_alphabet {
                Some(t) => alphabet(t)?,
                None => input.alphabet().clone(),
            };
            let h = Morphism::new(input.alphabet().clone(), target, map()?)?;
            (systems::morphism(&input, &h)?, Oracle::Morphism(input.clone(), h))
        }
        ClosureOp::InverseMorphism => {
            systems::require_capability(input.system(), "inverse-morphism", "inverse_morphism_constructive")?;
            let pairs = map()?;
            let source = Alphabet::new(pairs.iter().map(|p| p.0))?;
            let h = Morphism::new(source, input.alphabet().clone(), pairs)?;
            (systems::inverse_morphism(&input, &h)?, Oracle::InverseMorphism(input.clone(), h))
        }
        ClosureOp::Substitute => {
            let spec = args.images.as_ref().ok_or_else(|| anyhow!("substitute needs --images"))?;
            let mut images: Vec<Option<Nfa>> = vec![None; input.alphabet().len()];
            for (c, file) in parse_pairs(spec)? {
                let a = input.alphabet().index_of(c).ok_or_else(|| anyhow!("`{c}` is not in the input alphabet"))?;
                images[a] = Some(load(Path::new(&file))?.to_nfa().with_context(|| format!("{file} must be regular"))?);
            }
            let images = images
                .into_iter()
                .enumerate()
                .map(|(a, img)| img.ok_or_else(|| anyhow!("no image for `{}`", input.alphabet().symbol(a))))
                .collect::<anyhow::Result<Vec<_>>>()?;
            (systems::substitute(&input, &images)?, Oracle::Substitute(input.clone(), images))
        }
    };
    if let Some(len) = args.verify_bounded {
        let checked = verify::verify_bounded(&result, &oracle, len)?;
        eprintln!("verified: {checked} words up to length {len} agree with the oracle");
    }
    emit(&result.to_text(), args.output.as_deref())?;
    Ok(ExitCode::SUCCESS)
}

/// `3` or `1..3`.
fn parse_range(spec: &str) -> anyhow::Result<(usize, usize)> {
    let (lo, hi) = match spec.split_once("..") {
        Some((lo, hi)) => (lo.trim().parse()?, hi.trim_start_matches('=').trim().parse()?),
        None => {
            let n = spec.trim().parse()?;
            (n, n)
        }
    };
    if lo == 0 || lo > hi {
        bail!("`{spec}` is not a range of positive sizes");
    }
    Ok((lo, hi))
}

fn run_tradeoff(args: &TradeoffArgs, jobs: Option<usize>, json: bool) -> anyhow::Result<ExitCode> {
    let mut config = TradeoffConfig::new(alphabet(&args.alphabet)?, args.from, args.to);
    if let Some(kind) = args.from_measure {
        config.source = SizeMeasure::new(args.from, kind)?;
    }
    if let Some(kind) = args.to_measure {
        config.target = SizeMeasure::new(args.to, kind)?;
    }
    config.mode = match args.mode {
        ModeArg::Exhaustive => {
            if !args.promise.is_empty() {
                bail!("--promise needs --mode promise");
            }
            Mode::Exhaustive
        }
        ModeArg::Promise => {
            if args.promise.is_empty() {
                bail!("promise mode needs --promise FILE...");
            }
            Mode::Promise(args.promise.iter().map(|p| load(p)).collect::<anyhow::Result<_>>()?)
        }
    };
    config.strategy = match args.strategy {
        StrategyArg::Schema => Strategy::Schema,
        StrategyArg::Shortcut => Strategy::Shortcut,
    };
    config.prune_iso = args.prune_iso;
    config.jobs = jobs;
    if let Some(c) = args.ceiling {
        config.ceiling = c;
    }
    let (lo, hi) = parse_range(&args.n)?;
    let table = tradeoff::tradeoff_table(&config, lo..=hi)?;
    let dir = args.witness_dir.as_ref().map(|d| d.display().to_string()).unwrap_or_default();
    if let Some(d) = &args.witness_dir {
        fs::create_dir_all(d).with_context(|| format!("cannot create {}", d.display()))?;
        for (name, text) in table.witness_files() {
            fs::write(d.join(&name), text).with_context(|| format!("cannot write {name}"))?;
        }
    }
    if json {
        say(&serde_json::to_string_pretty(&table.to_json(&dir))?);
    } else {
        out(&table.to_csv(&dir));
    }
    Ok(ExitCode::SUCCESS)
}

fn scheme(args: &SchemeArgs, jobs: Option<usize>) -> anyhow::Result<ExitCode> {
    if let Some(path) = &args.check {
        let text = fs::read_to_string(path).with_context(|| format!("cannot read {}", path.display()))?;
        let report = schemes::check_report(&text).map_err(|e| anyhow!("{}: {e}", path.display()))?;
        let kind = match report {
            SchemeReport::Down(_) => "down",
            SchemeReport::Up(_) => "up",
        };
        say(&format!("valid {kind}-scheme report: verdict {}", report.verdict()));
        return Ok(ExitCode::SUCCESS);
    }
    let (Some(kind), Some(input), Some(bound)) = (args.kind, &args.input, args.bound) else {
        bail!("scheme needs a kind, --input and --bound");
    };
    let d = load(input)?;
    let mut config = SchemeConfig::new(bound);
    config.budget = args.budget;
    config.jobs = jobs;
    if let Some(c) = args.ceiling {
        config.ceiling = c;
    }
    let report = match kind {
        SchemeKind::Down => schemes::run_down_scheme_report(&d, &config)?,
        SchemeKind::Up => schemes::run_up_scheme_report(&d, &config)?,
    };
    emit(&report.to_json(), args.output.as_deref())?;
    Ok(ExitCode::SUCCESS)
}

fn run_sample(args: &SampleArgs) -> anyhow::Result<ExitCode> {
    let a = alphabet(&args.alphabet)?;
    if args.size == 0 {
        bail!("--size must be positive");
    }
    let mut rng = ChaCha8Rng::seed_from_u64(args.seed);
    let samples: Vec<Descriptor> = (0..args.count)
        .map(|_| match args.kind {
            SampleKind::Nfa => Descriptor::Nfa(sample::random_nfa(&mut rng, &a, args.size, 0.3)),
            SampleKind::Dfa => Descriptor::Dfa(sample::random_dfa(&mut rng, &a, args.size)),
            SampleKind::Cfg => Descriptor::Cfg(sample::random_cfg(&mut rng, &a, args.size, 3, 3)),
            SampleKind::FiniteNfa => Descriptor::Nfa(sample::random_finite_nfa(&mut rng, &a, args.size)),
        })
        .collect();
    match &args.out_dir {
        Some(dir) => {
            fs::create_dir_all(dir).with_context(|| format!("cannot create {}", dir.display()))?;
            for (i, d) in samples.iter().enumerate() {
                fs::write(dir.join(format!("sample-{i}.{}", d.system().tag())), d.to_text())?;
            }
        }
        None => {
            let texts: Vec<String> = samples.iter().map(Descriptor::to_text).collect();
            out(&texts.join("\n"));
        }
    }
    Ok(ExitCode::SUCCESS)
}
