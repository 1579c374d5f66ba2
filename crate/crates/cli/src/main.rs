use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use anyhow::{bail, Context, Result};
use clap::parser::ValueSource;
use clap::{ArgMatches, Args, CommandFactory, FromArgMatches, Parser, Subcommand};
use qnlp_core::corpus::{CorpusModel, Lexicon, PreprocessParams, Reducer, TaggerMode, ENV_NAMES};
use qnlp_core::encoder::encode;
use qnlp_core::hamming::represent;
use qnlp_core::overlap::{
    analytic_overlap, rank_candidates, ranked_csv, swap_test_overlap, OverlapMethod,
};
use qnlp_core::patterns::{resolve_pattern, Codebook, PatternFile, PatternSet};
use qnlp_core::BitPattern;

const CSV_FORMAT: &str = "qnlp-csv/1";
const DEFAULT_SHOTS: u64 = 50_000;

#[derive(Parser)]
#[command(
    name = "qnlp",
    version,
    about = "Encode noun-verb-noun meaning spaces and compare sentences by Hamming-weighted overlap"
)]
struct Cli {
    #[command(flatten)]
    common: Common,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
#[command(next_help_heading = "Common options")]
struct Common {
    /// Sampling seed.
    #[arg(long, global = true, default_value_t = 1)]
    seed: u64,
    /// Measurement shots (overlap: switches to the SWAP test).
    #[arg(long, global = true)]
    shots: Option<u64>,
    /// Pattern file: one bit-string and optional label per line.
    #[arg(long, global = true, value_name = "FILE")]
    patterns: Option<PathBuf>,
    /// Corpus model written by `prepare`.
    #[arg(long, global = true, value_name = "FILE")]
    model: Option<PathBuf>,
    /// Output file (stdout when omitted).
    #[arg(long, global = true, value_name = "FILE")]
    out: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Command {
    /// Build a corpus model from text.
    Prepare(PrepareArgs),
    /// Weight the stored patterns by distance to a test pattern and sample.
    Represent {
        /// Bit-string or `subject,verb,object` triple.
        test: String,
    },
    /// Overlaps between represented test patterns.
    Overlap {
        /// Two or more test patterns, compared pairwise.
        tests: Vec<String>,
        /// Reference pattern for `--candidates`.
        #[arg(long)]
        reference: Option<String>,
        /// File of candidate patterns (bit-strings or triples), one per line.
        #[arg(long, value_name = "FILE")]
        candidates: Option<PathBuf>,
    },
    /// Encode the memory and report gate counts.
    ReportGates,
}

#[derive(Args)]
struct PrepareArgs {
    /// Corpus text.
    corpus: PathBuf,
    /// Read `token<TAB>tag` lines instead of running the built-in tagger.
    #[arg(long)]
    pre_tagged: bool,
    /// TOML file with fixed bases and projections.
    #[arg(long, value_name = "FILE")]
    lexicon: Option<PathBuf>,
    /// Noun basis size (even).
    #[arg(long, env = "NUM_BASIS_NOUN", default_value_t = 8)]
    n_nouns: usize,
    /// Verb basis size (even).
    #[arg(long, env = "NUM_BASIS_VERB", default_value_t = 4)]
    n_verbs: usize,
    /// Max distance for projecting a noun onto the noun basis.
    #[arg(long, env = "BASIS_NOUN_DIST_CUTOFF", default_value_t = 5)]
    w_nouns: usize,
    /// Max distance for projecting a verb onto the verb basis.
    #[arg(long, env = "BASIS_VERB_DIST_CUTOFF", default_value_t = 5)]
    w_verbs: usize,
    /// Max distance between a verb and its subject or object.
    #[arg(long, env = "VERB_NOUN_DIST_CUTOFF", default_value_t = 4)]
    w_vn: usize,
    /// How token distances are reduced over positions: min, mean or median.
    #[arg(long, default_value = "min")]
    reducer: Reducer,
}

fn source(m: &ArgMatches, id: &str) -> &'static str {
    match m.value_source(id) {
        Some(ValueSource::CommandLine) => "flag",
        Some(ValueSource::EnvVariable) => "env",
        Some(ValueSource::DefaultValue) => "default",
        _ => "unset",
    }
}

struct Header(String);

impl Header {
    fn new(command: &str) -> Self {
        let mut h = Header(String::new());
        h.line(&format!("qnlp {command} {}", env!("CARGO_PKG_VERSION")));
        h.line(&format!("format = {CSV_FORMAT}"));
        h
    }

    fn line(&mut self, s: &str) {
        let _ = writeln!(self.0, "# {s}");
    }

    fn value(&mut self, name: &str, value: impl std::fmt::Display, from: &str) {
        self.line(&format!("{name} = {value} ({from})"));
    }
}

fn write_output(out: Option<&Path>, text: &str) -> Result<()> {
    match out {
        Some(p) => std::fs::write(p, text).with_context(|| format!("writing {}", p.display())),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn read(path: &Path) -> Result<String> {
    std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))
}

struct Memory {
    patterns: PatternSet,
    codebook: Codebook,
}

impl Memory {
    fn load(common: &Common, header: &mut Header) -> Result<Self> {
        match (&common.patterns, &common.model) {
            (Some(p), None) => {
                header.value("patterns", p.display(), "flag");
                let file = PatternFile::parse(&read(p)?)
                    .with_context(|| format!("parsing {}", p.display()))?;
                Ok(Memory {
                    patterns: file.patterns,
                    codebook: file.codebook,
                })
            }
            (None, Some(m)) => {
                header.value("model", m.display(), "flag");
                let model = CorpusModel::from_json(&read(m)?)
                    .with_context(|| format!("loading {}", m.display()))?;
                let patterns = model
                    .pattern_set()
                    .context("the model holds no noun-verb-noun patterns")?;
                Ok(Memory {
                    patterns,
                    codebook: model.codebook(),
                })
            }
            _ => bail!("give exactly one of --patterns or --model"),
        }
    }

    fn resolve(&self, spec: &str) -> Result<BitPattern> {
        resolve_pattern(spec, self.patterns.width(), &self.codebook)
            .with_context(|| format!("resolving test pattern '{spec}'"))
    }

    fn label(&self, p: BitPattern) -> Option<String> {
        self.patterns
            .label_of(p)
            .map(str::to_string)
            .or_else(|| self.codebook.label(p))
    }
}

fn prepare(args: &PrepareArgs, m: &ArgMatches, common: &Common) -> Result<()> {
    let params = PreprocessParams {
        n_nouns: args.n_nouns,
        n_verbs: args.n_verbs,
        w_nouns: args.w_nouns,
        w_verbs: args.w_verbs,
        w_vn: args.w_vn,
        reducer: args.reducer,
    };
    let mut header = Header::new("prepare");
    header.value("corpus", args.corpus.display(), "flag");
    let values = [
        params.n_nouns,
        params.n_verbs,
        params.w_nouns,
        params.w_verbs,
        params.w_vn,
    ];
    let ids = ["n_nouns", "n_verbs", "w_nouns", "w_verbs", "w_vn"];
    for ((env, id), v) in ENV_NAMES.iter().zip(ids).zip(values) {
        let from = match (source(m, id), std::env::var(env)) {
            ("flag", Ok(shadowed)) => format!("flag, overrides env {shadowed}"),
            (from, _) => from.to_string(),
        };
        header.value(env, v, &from);
    }
    header.value(
        "reducer",
        format!("{:?}", params.reducer).to_lowercase(),
        source(m, "reducer"),
    );

    let text = read(&args.corpus)?;
    let mode = if args.pre_tagged {
        TaggerMode::PreTagged
    } else {
        TaggerMode::Builtin
    };
    let model = match &args.lexicon {
        Some(path) => {
            header.value("lexicon", path.display(), "flag");
            let lexicon = Lexicon::from_toml(&read(path)?)
                .with_context(|| format!("parsing {}", path.display()))?;
            CorpusModel::with_lexicon(&text, mode, &lexicon, params)?
        }
        None => CorpusModel::build(&text, mode, params)?,
    };
    for w in &model.warnings {
        eprintln!("warning: {w}");
    }
    if model.patterns.is_empty() {
        bail!(
            "no noun-verb-noun sentences found in {} ({} tokens); a larger VERB_NOUN_DIST_CUTOFF or projection cutoff may help",
            args.corpus.display(),
            model.tokens.len()
        );
    }

    let mut summary = header.0;
    for (name, space) in [
        ("subject", &model.subject),
        ("verb", &model.verb),
        ("object", &model.object),
    ] {
        let codes: Vec<String> = space
            .basis
            .tokens
            .iter()
            .zip(&space.basis.codes)
            .map(|(t, c)| format!("{t}={c}"))
            .collect();
        let _ = writeln!(summary, "{name} basis: {}", codes.join(" "));
    }
    let _ = writeln!(
        summary,
        "{} sentences, {} distinct patterns of width {}",
        model.sentences.len(),
        model.patterns.len(),
        model.width()
    );
    match &common.out {
        Some(path) => {
            write_output(Some(path), &model.to_json())?;
            let _ = writeln!(summary, "model written to {}", path.display());
            print!("{summary}");
        }
        None => {
            eprint!("{summary}");
            println!("{}", model.to_json());
        }
    }
    Ok(())
}

fn represent_cmd(test: &str, m: &ArgMatches, common: &Common) -> Result<()> {
    let mut header = Header::new("represent");
    let memory = Memory::load(common, &mut header)?;
    let x = memory.resolve(test)?;
    let shots = common.shots.unwrap_or(DEFAULT_SHOTS);
    if shots == 0 {
        bail!("--shots must be at least 1");
    }
    header.value("seed", common.seed, source(m, "seed"));
    header.value(
        "shots",
        shots,
        if common.shots.is_some() {
            "flag"
        } else {
            "default"
        },
    );
    header.value("test", format!("{test} -> {x}"), "flag");

    let encoded = encode(&memory.patterns)?;
    let mut rep = represent(&encoded, x)?;
    let dist = rep.sample(shots, common.seed)?;
    header.value(
        "success_probability",
        format!("{:.12}", dist.success_probability),
        "computed",
    );
    write_output(
        common.out.as_deref(),
        &format!("{}{}", header.0, dist.to_csv()),
    )
}

fn candidate_lines(text: &str, memory: &Memory) -> Result<Vec<(Option<String>, BitPattern)>> {
    let mut out = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let first = line.split_whitespace().next().unwrap_or_default();
        let (pattern, label) = if first.chars().all(|c| c == '0' || c == '1') {
            let p = memory.resolve(first)?;
            let rest = line[first.len()..].trim();
            (p, (!rest.is_empty()).then(|| rest.to_string()))
        } else {
            (
                memory
                    .resolve(line)
                    .with_context(|| format!("candidates line {}", i + 1))?,
                None,
            )
        };
        out.push((label.or_else(|| memory.label(pattern)), pattern));
    }
    if out.is_empty() {
        bail!("candidate file lists no patterns");
    }
    Ok(out)
}

fn method_name(m: OverlapMethod) -> &'static str {
    match m {
        OverlapMethod::Analytic => "analytic",
        OverlapMethod::SwapTest => "swap-test",
    }
}

fn overlap_cmd(
    tests: &[String],
    reference: Option<&str>,
    candidates: Option<&Path>,
    m: &ArgMatches,
    common: &Common,
) -> Result<()> {
    let mut header = Header::new("overlap");
    let memory = Memory::load(common, &mut header)?;
    if common.shots == Some(0) {
        bail!("--shots must be at least 1");
    }
    match common.shots {
        Some(s) => {
            header.value("method", "swap-test", "flag");
            header.value("shots", s, "flag");
            header.value("seed", common.seed, source(m, "seed"));
        }
        None => header.value("method", "analytic", "default"),
    }

    let body = if let Some(path) = candidates {
        let reference = match (reference, tests) {
            (Some(r), []) => r,
            (None, [r]) => r.as_str(),
            _ => bail!("--candidates needs exactly one reference pattern"),
        };
        let x = memory.resolve(reference)?;
        header.value("reference", format!("{reference} -> {x}"), "flag");
        header.value("candidates", path.display(), "flag");
        let list = candidate_lines(&read(path)?, &memory)?;
        let rows = rank_candidates(&memory.patterns, x, &list, common.shots, common.seed)?;
        ranked_csv(&rows)
    } else {
        if tests.len() < 2 || reference.is_some() {
            bail!("give two or more test patterns, or --reference with --candidates");
        }
        let xs = tests
            .iter()
            .map(|t| memory.resolve(t))
            .collect::<Result<Vec<_>>>()?;
        let mut body =
            String::from("label_a,pattern_a,label_b,pattern_b,overlap,fidelity_sq,method\n");
        let mut k = 0u64;
        for i in 0..xs.len() {
            for j in i + 1..xs.len() {
                let r = match common.shots {
                    None => analytic_overlap(&memory.patterns, xs[i], xs[j])?,
                    Some(s) => swap_test_overlap(
                        &memory.patterns,
                        xs[i],
                        xs[j],
                        s,
                        common.seed.wrapping_add(k),
                    )?,
                };
                k += 1;
                let label = |p| memory.label(p).unwrap_or_default().replace(',', " ");
                let _ = writeln!(
                    body,
                    "{},{},{},{},{:.6},{:.6},{}",
                    label(xs[i]),
                    xs[i],
                    label(xs[j]),
                    xs[j],
                    r.overlap,
                    r.fidelity_sq,
                    method_name(r.method)
                );
            }
        }
        body
    };
    write_output(common.out.as_deref(), &format!("{}{body}", header.0))
}

fn report_gates(common: &Common) -> Result<()> {
    let mut header = Header::new("report-gates");
    let memory = Memory::load(common, &mut header)?;
    let encoded = encode(&memory.patterns)?;
    header.value("pattern_count", memory.patterns.len(), "computed");
    header.value("width", memory.patterns.width(), "computed");
    header.value("qubits", encoded.layout.num_qubits(), "computed");
    header.value(
        "deviation",
        format!("{:.3e}", encoded.deviation_from_ideal()),
        "computed",
    );
    write_output(
        common.out.as_deref(),
        &format!("{}{}", header.0, encoded.gates.to_report()),
    )
}

fn main() -> Result<()> {
    let matches = Cli::command().get_matches();
    let cli = Cli::from_arg_matches(&matches)?;
    let (_, sub) = matches.subcommand().expect("subcommand is required");
    match &cli.command {
        Command::Prepare(args) => prepare(args, sub, &cli.common),
        Command::Represent { test } => represent_cmd(test, sub, &cli.common),
        Command::Overlap {
            tests,
            reference,
            candidates,
        } => overlap_cmd(
            tests,
            reference.as_deref(),
            candidates.as_deref(),
            sub,
            &cli.common,
        ),
        Command::ReportGates => report_gates(&cli.common),
    }
}
