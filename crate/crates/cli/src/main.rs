use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use tlink_core::invariants::{bundle, InvariantBundle};
use tlink_core::oracle::{certify_bundle, cross_validate, oracle_word, SweepConfig};
use tlink_core::{
    classify, classify_spec, BraidWord, CertificateKind, FullTwistForm, ReportRow, SweepReport,
    TLinkSpec, VerdictKind, DEFAULT_JONES_GUARD,
};

/// Exit status for bad arguments or unparsable input.
const EXIT_USAGE: u8 = 1;
/// Exit status when the classifier and the oracle contradict each other.
const EXIT_CONTRADICTION: u8 = 2;

#[derive(Parser)]
#[command(
    name = "tlink",
    version,
    about = "Braid invariants and torus-link recognition for T-links"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print component count, Euler characteristic, braid index, Alexander and Jones polynomials.
    Invariants(InputArgs),
    /// Show the strand-absorbing rewrite (or the p/q flip) of a T-link.
    Rewrite {
        /// T-link expression, e.g. "T((3,3),(5,2))".
        tlink: String,
    },
    /// Decide whether a T-link is provably not a torus link.
    Classify {
        tlink: String,
        #[arg(long)]
        json: bool,
    },
    /// Compare invariants against every torus link with the same Euler characteristic.
    Certify(InputArgs),
    /// Classify and certify every T-link in a parameter box.
    Sweep(SweepArgs),
}

#[derive(Args)]
struct InputArgs {
    /// T-link expression "T((r1,s1),...)" or braid word "n=K: e1,e2,...".
    input: String,
    /// Skip the Jones polynomial for words with more crossings than this.
    #[arg(long, default_value_t = DEFAULT_JONES_GUARD)]
    jones_guard: usize,
    #[arg(long)]
    json: bool,
}

#[derive(Args)]
struct SweepArgs {
    #[arg(long, default_value_t = 7)]
    max_p: u32,
    #[arg(long, default_value_t = 2)]
    max_s: u32,
    #[arg(long, default_value_t = 2)]
    max_n: usize,
    /// Report file; format follows the extension unless --format is given.
    /// Without it the JSON report goes to stdout.
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, value_enum)]
    format: Option<Format>,
    /// Worker threads (default: one per core).
    #[arg(long)]
    jobs: Option<usize>,
    #[arg(long, default_value_t = DEFAULT_JONES_GUARD)]
    jones_guard: usize,
    /// Record per-row wall-clock time. Makes output run-dependent.
    #[arg(long)]
    timings: bool,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
}

/// Failure carrying the exit status it maps to.
struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    fn usage(message: impl Into<String>) -> Self {
        Self {
            code: EXIT_USAGE,
            message: message.into(),
        }
    }
}

impl From<anyhow::Error> for Failure {
    fn from(e: anyhow::Error) -> Self {
        Self::usage(format!("{e:#}"))
    }
}

type Outcome = std::result::Result<(), Failure>;

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() {
                ExitCode::from(EXIT_USAGE)
            } else {
                ExitCode::SUCCESS
            };
        }
    };
    let outcome = match cli.command {
        Command::Invariants(args) => invariants(&args),
        Command::Rewrite { tlink } => rewrite(&tlink),
        Command::Classify { tlink, json } => classify_cmd(&tlink, json),
        Command::Certify(args) => certify_cmd(&args),
        Command::Sweep(args) => sweep(&args),
    };
    match outcome {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}

enum Input {
    Link(TLinkSpec),
    Word(BraidWord),
}

impl Input {
    fn word(&self) -> BraidWord {
        match self {
            Input::Link(spec) => spec.standard_braid(),
            Input::Word(w) => w.clone(),
        }
    }
}

fn parse_input(text: &str) -> std::result::Result<Input, Failure> {
    if text.trim_start().starts_with('T') {
        parse_tlink(text).map(Input::Link)
    } else {
        text.parse::<BraidWord>()
            .map(Input::Word)
            .map_err(|e| Failure::usage(format!("{e}\n{}", caret(text, e.offset()))))
    }
}

fn parse_tlink(text: &str) -> std::result::Result<TLinkSpec, Failure> {
    text.parse::<TLinkSpec>()
        .map_err(|e| Failure::usage(format!("{e}\n{}", caret(text, e.offset()))))
}

/// The input with a marker under the offending byte.
fn caret(text: &str, offset: Option<usize>) -> String {
    match offset {
        Some(at) => {
            let pad = text.get(..at).map_or(at, |s| s.chars().count());
            format!("  {text}\n  {}^", " ".repeat(pad))
        }
        None => format!("  {text}"),
    }
}

fn full_twist_form(spec: &TLinkSpec) -> std::result::Result<FullTwistForm, Failure> {
    spec.try_full_twist_form()
        .map_err(|e| Failure::usage(format!("{spec} is not in full-twist form: {e}")))
}

fn print_json<T: serde::Serialize>(value: &T) -> Outcome {
    let text = serde_json::to_string_pretty(value).context("serializing output")?;
    println!("{text}");
    Ok(())
}

fn print_bundle(inv: &InvariantBundle, guard: usize) {
    let opt = |x: Option<String>, missing: &str| x.unwrap_or_else(|| missing.to_string());
    println!("strands:      {}", inv.strands);
    println!("components:   {}", inv.components);
    println!("letters:      {}", inv.letters);
    println!(
        "euler char:   {}",
        opt(inv.euler_char.map(|x| x.to_string()), "(word not positive)")
    );
    println!(
        "braid index:  {}",
        opt(
            inv.braid_index.map(|x| x.to_string()),
            "(no full twist detected)"
        )
    );
    println!("alexander:    {}", inv.alexander);
    println!(
        "jones:        {}",
        opt(
            inv.jones.as_ref().map(|j| j.to_string()),
            &format!("(over crossing guard {guard})")
        )
    );
}

fn invariants(args: &InputArgs) -> Outcome {
    let word = parse_input(&args.input)?.word();
    let inv = bundle(&word, args.jones_guard);
    if args.json {
        print_json(&inv)
    } else {
        println!("word:         {word}");
        print_bundle(&inv, args.jones_guard);
        Ok(())
    }
}

fn rewrite(text: &str) -> Outcome {
    let spec = parse_tlink(text)?;
    let form = full_twist_form(&spec)?;
    let twists: Vec<String> = form
        .twists()
        .iter()
        .map(|(a, s)| format!("({a},{s})"))
        .collect();
    println!(
        "{spec}: full twists {} on T({},{})",
        twists.join(","),
        form.p(),
        form.q()
    );
    if form.q() < form.a_max() {
        let trace = form
            .absorb_strands()
            .map_err(|e| Failure::usage(e.to_string()))?;
        for (j, step) in trace.steps().iter().enumerate() {
            println!("  {j}: {}", step.pretty());
        }
    } else {
        let flipped = form.flip_pq().map_err(|e| Failure::usage(e.to_string()))?;
        let word = flipped.standard_braid();
        println!(
            "  a_n = {} < q = {}: p and q swap roles",
            form.a_max(),
            form.q()
        );
        println!(
            "  {flipped}: {} on {} strands",
            word.pretty(),
            word.strands()
        );
    }
    Ok(())
}

fn classify_cmd(text: &str, json: bool) -> Outcome {
    let spec = parse_tlink(text)?;
    let verdict = classify_spec(&spec);
    if json {
        print_json(&verdict)?;
    } else {
        println!("{verdict}");
    }
    if verdict.kind == VerdictKind::InvalidInput {
        return Err(Failure::usage(format!(
            "{spec} is outside the classifier's domain"
        )));
    }
    Ok(())
}

fn certify_cmd(args: &InputArgs) -> Outcome {
    let guard = args.jones_guard;
    match parse_input(&args.input)? {
        Input::Word(word) => {
            word.require_positive()
                .map_err(|e| Failure::usage(e.to_string()))?;
            let inv = bundle(&word, guard);
            let certificate = certify_bundle(&inv, guard);
            if args.json {
                print_json(&certificate)
            } else {
                println!("{certificate}");
                Ok(())
            }
        }
        Input::Link(spec) => {
            let form = full_twist_form(&spec)?;
            let verdict = classify(&form);
            let word = oracle_word(&form).map_err(|e| Failure::usage(e.to_string()))?;
            let inv = bundle(&word, guard);
            let certificate = certify_bundle(&inv, guard);
            let contradiction = verdict.kind == VerdictKind::NotTorusLink
                && certificate.kind == CertificateKind::TorusMatch;
            if args.json {
                let row = ReportRow::new(spec.clone(), verdict, Some(certificate), Some(inv), 0);
                print_json(&row)?;
            } else {
                println!(
                    "word:         {} on {} strands",
                    word.pretty(),
                    word.strands()
                );
                println!("verdict:      {verdict}");
                println!("certificate:  {certificate}");
            }
            if contradiction {
                return Err(Failure {
                    code: EXIT_CONTRADICTION,
                    message: format!(
                        "{spec}: classifier says NotTorusLink but invariants match a torus link"
                    ),
                });
            }
            Ok(())
        }
    }
}

fn sweep(args: &SweepArgs) -> Outcome {
    if args.jobs == Some(0) {
        return Err(Failure::usage("--jobs must be at least 1"));
    }
    let cfg = SweepConfig {
        max_p: args.max_p,
        max_s: args.max_s,
        max_n: args.max_n,
        guard: args.jones_guard,
        jobs: args.jobs,
        record_timing: args.timings,
    };
    let report = cross_validate(&cfg).map_err(|e| Failure::usage(e.to_string()))?;
    let format = args.format.unwrap_or_else(|| match &args.out {
        Some(path) if has_extension(path, "csv") => Format::Csv,
        _ => Format::Json,
    });
    match &args.out {
        Some(path) => {
            let file =
                File::create(path).with_context(|| format!("creating {}", path.display()))?;
            write_report(&report, format, BufWriter::new(file))
                .with_context(|| format!("writing {}", path.display()))?;
        }
        None => write_report(&report, format, io::stdout().lock()).context("writing report")?,
    }
    let s = &report.summary;
    eprintln!(
        "{} instances: {} NotTorusLink ({} confirmed, {} inconclusive, {} contradictions), {} exceptional, {} deferred",
        s.instances, s.not_torus_verdicts, s.confirmed, s.inconclusive, s.disagreements, s.exceptional, s.deferred
    );
    if let Some(row) = report.disagreeing_rows().next() {
        return Err(Failure {
            code: EXIT_CONTRADICTION,
            message: format!("{} contradictions, first at {}", s.disagreements, row.input),
        });
    }
    Ok(())
}

fn has_extension(path: &Path, ext: &str) -> bool {
    path.extension()
        .is_some_and(|e| e.eq_ignore_ascii_case(ext))
}

fn write_report(report: &SweepReport, format: Format, mut out: impl Write) -> Result<()> {
    match format {
        Format::Json => {
            serde_json::to_writer_pretty(&mut out, report)?;
            writeln!(out)?;
        }
        Format::Csv => {
            let mut w = csv::Writer::from_writer(&mut out);
            for row in &report.rows {
                w.serialize(row.to_record())?;
            }
            w.flush()?;
        }
    }
    out.flush()?;
    Ok(())
}
