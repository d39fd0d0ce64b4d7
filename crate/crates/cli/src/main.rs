//! `ybtwist`: check set-theoretic Yang-Baxter solutions, braces and their
//! twists from the command line.
//!
//! Exit codes: 0 all identities hold, 1 an identity failed, 2 malformed
//! input, 3 resource limit, 64 usage error. The worker count follows
//! `RAYON_NUM_THREADS`.

use std::fs;
use std::io::{self, Read, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;
use ybtwist::baxter::{
    verify_baxterization, verify_baxterized_factorization, verify_crossing, verify_spectral_ybe, verify_unitarity,
    verify_yangian_twist,
};
use ybtwist::brace::{enumerate_braces, solution_from_brace, validate_brace, LeftBrace};
use ybtwist::corpus::{build_corpus, frozen_counts};
use ybtwist::exec::{self, Strategy};
use ybtwist::frt::{coproduct_blocks, verify_exchange, verify_rtt};
use ybtwist::lyubashenko::{verify_lyubashenko, LyubashenkoData};
use ybtwist::multi_twist::{check_budget, n_twist, verify_cocycle, verify_factorization, verify_intertwining, Flavor};
use ybtwist::solution::{enumerate_solutions, validate_solution, FiniteSolution};
use ybtwist::twist::{twist_alt, twist_closed_form, verify_twists};
use ybtwist::{Error, VerificationReport};

#[derive(Parser)]
#[command(name = "ybtwist", version, about = "Exact checks for set-theoretic Yang-Baxter solutions and their twists")]
struct Cli {
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    format: Format,
    /// Include per-check wall times (output is then not byte-reproducible).
    #[arg(long, global = true)]
    timings: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Args)]
struct Input {
    /// Solution file (one JSON document, or one per line); standard input if omitted.
    file: Option<PathBuf>,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum FlavorArg {
    F,
    G,
    Both,
}

impl FlavorArg {
    fn flavors(self) -> &'static [Flavor] {
        match self {
            FlavorArg::F => &[Flavor::F],
            FlavorArg::G => &[Flavor::G],
            FlavorArg::Both => &Flavor::BOTH,
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum BaxterCheck {
    All,
    Ybe,
    Unitarity,
    Crossing,
    Twist,
    Monodromy,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum FrtCheck {
    All,
    Rtt,
    Exchange,
    Blocks,
}

#[derive(Subcommand)]
enum Command {
    /// Validate non-degeneracy, involutivity and the braid relation.
    CheckSolution(Input),
    /// Validate the brace axioms.
    CheckBrace(Input),
    /// Print the solution of a brace.
    FromBrace(Input),
    /// Print every solution (or brace) of the given size, one per line.
    Enumerate {
        #[arg(long)]
        size: usize,
        #[arg(long)]
        braces: bool,
    },
    /// Build the two-site twists and check them.
    MakeTwist {
        #[command(flatten)]
        input: Input,
        #[arg(long, value_enum, default_value_t = FlavorArg::Both)]
        flavor: FlavorArg,
        /// Also print the twist matrices in coordinate form.
        #[arg(long)]
        dump: bool,
    },
    /// Check admissibility and the monodromy factorization on n sites.
    VerifyTwist {
        #[command(flatten)]
        input: Input,
        #[arg(long, default_value_t = 2)]
        n: usize,
        #[arg(long, value_enum, default_value_t = FlavorArg::Both)]
        flavor: FlavorArg,
    },
    /// Check the spectral-parameter identities.
    Baxterize {
        #[command(flatten)]
        input: Input,
        #[arg(long, value_enum, default_value_t = BaxterCheck::All)]
        check: BaxterCheck,
        /// Largest number of sites for the monodromy checks.
        #[arg(long, default_value_t = 2)]
        max_n: usize,
    },
    /// Check the quantum-algebra relations in the evaluation representation.
    Frt {
        #[command(flatten)]
        input: Input,
        #[arg(long, value_enum, default_value_t = FrtCheck::All)]
        check: FrtCheck,
    },
    /// Check the Lyubashenko solution of a permutation given in cycle notation.
    Lyubashenko {
        #[arg(long)]
        tau: String,
        #[arg(long)]
        size: usize,
        #[arg(long, default_value = "all")]
        check: String,
        #[arg(long, default_value_t = 3)]
        max_n: usize,
    },
    /// Write the bundled corpus, or check an existing copy is current.
    Corpus {
        #[arg(long)]
        out: PathBuf,
        /// Rewrite the directory even if it exists.
        #[arg(long)]
        regenerate: bool,
    },
}

const EXIT_FAIL: u8 = 1;
const EXIT_MALFORMED: u8 = 2;
const EXIT_RESOURCE: u8 = 3;
const EXIT_USAGE: u8 = 64;

fn exit_code(e: &Error) -> u8 {
    match e {
        Error::Malformed(_) => EXIT_MALFORMED,
        Error::ResourceLimit(_) => EXIT_RESOURCE,
        _ => EXIT_FAIL,
    }
}

struct Output {
    format: Format,
    timings: bool,
    reports: Vec<VerificationReport>,
    documents: Vec<serde_json::Value>,
    text: String,
}

impl Output {
    fn report(&mut self, r: VerificationReport) {
        if self.format == Format::Text {
            self.text.push_str(&r.to_text(self.timings));
        }
        self.reports.push(r);
    }

    fn document(&mut self, line: String, value: serde_json::Value) {
        if self.format == Format::Text {
            self.text.push_str(&line);
            self.text.push('\n');
        }
        self.documents.push(value);
    }

    fn passed(&self) -> bool {
        self.reports.iter().all(VerificationReport::all_passed)
    }

    fn flush(self) -> io::Result<()> {
        let mut stdout = io::stdout().lock();
        match self.format {
            Format::Text => stdout.write_all(self.text.as_bytes())?,
            Format::Json => {
                let reports: Vec<_> = self
                    .reports
                    .iter()
                    .map(|r| if self.timings { r.to_json_with_timings() } else { r.to_json() })
                    .collect();
                let mut doc = json!({ "passed": self.reports.iter().all(VerificationReport::all_passed), "reports": reports });
                if !self.documents.is_empty() {
                    doc["documents"] = json!(self.documents);
                }
                writeln!(stdout, "{}", serde_json::to_string_pretty(&doc).expect("serializes"))?;
            }
        }
        stdout.flush()
    }
}

fn read_input(input: &Input) -> Result<String, Error> {
    let mut text = String::new();
    match &input.file {
        Some(p) => {
            text = fs::read_to_string(p).map_err(|e| Error::Malformed(format!("{}: {e}", p.display())))?;
        }
        None => {
            io::stdin()
                .read_to_string(&mut text)
                .map_err(|e| Error::Malformed(format!("standard input: {e}")))?;
        }
    }
    Ok(text)
}

fn parse_all<T: serde::de::DeserializeOwned>(text: &str) -> Result<Vec<T>, Error> {
    let items = serde_json::Deserializer::from_str(text)
        .into_iter::<T>()
        .collect::<Result<Vec<T>, _>>()
        .map_err(|e| Error::Malformed(e.to_string()))?;
    if items.is_empty() {
        return Err(Error::Malformed("no document in input".into()));
    }
    Ok(items)
}

/// Reads solutions sorted into canonical order.
fn read_solutions(input: &Input) -> Result<Vec<FiniteSolution>, Error> {
    let mut sols: Vec<FiniteSolution> = parse_all(&read_input(input)?)?;
    sols.sort();
    Ok(sols)
}

/// Validates every solution; if any fails, its report is emitted and the
/// command stops there.
fn gate(out: &mut Output, sols: &[FiniteSolution]) -> bool {
    let mut ok = true;
    for sol in sols {
        let r = validate_solution(sol);
        if !r.all_passed() {
            ok = false;
            out.report(r);
        }
    }
    ok
}

/// Runs `f` on every solution in parallel and emits the reports in order.
fn fan_out<F>(out: &mut Output, sols: &[FiniteSolution], f: F) -> Result<(), Error>
where
    F: Fn(&FiniteSolution) -> Result<VerificationReport, Error> + Sync + Send,
{
    for r in exec::map(Strategy::default(), sols, f) {
        out.report(r?);
    }
    Ok(())
}

fn run(cli: Cli, out: &mut Output) -> Result<(), Error> {
    match cli.command {
        Command::CheckSolution(input) => {
            for sol in read_solutions(&input)? {
                out.report(validate_solution(&sol));
            }
        }
        Command::CheckBrace(input) => {
            let braces: Vec<LeftBrace> = parse_all(&read_input(&input)?)?;
            for b in braces {
                out.report(validate_brace(&b));
            }
        }
        Command::FromBrace(input) => {
            let braces: Vec<LeftBrace> = parse_all(&read_input(&input)?)?;
            for b in braces {
                let r = validate_brace(&b);
                if !r.all_passed() {
                    out.report(r);
                    continue;
                }
                let sol = solution_from_brace(&b)?;
                out.document(sol.to_json_string(), serde_json::to_value(&sol).expect("serializes"));
            }
        }
        Command::Enumerate { size, braces } => {
            if braces {
                for b in enumerate_braces(size)? {
                    out.document(b.to_json_string(), serde_json::to_value(&b).expect("serializes"));
                }
            } else {
                for s in enumerate_solutions(size)? {
                    out.document(s.to_json_string(), serde_json::to_value(&s).expect("serializes"));
                }
            }
        }
        Command::MakeTwist { input, flavor, dump } => {
            let sols = read_solutions(&input)?;
            if !gate(out, &sols) {
                return Ok(());
            }
            fan_out(out, &sols, verify_twists)?;
            if dump {
                for sol in &sols {
                    for &f in flavor.flavors() {
                        let m = match f {
                            Flavor::F => twist_closed_form(sol),
                            Flavor::G => twist_alt(sol),
                        };
                        let line = format!("# {} {f}\n{}", sol.canonical_hash(), m.to_coordinate_string());
                        let value = json!({ "subject": sol.canonical_hash(), "flavor": f.to_string(), "matrix": m.to_coordinate_string() });
                        out.document(line.trim_end().to_string(), value);
                    }
                }
            }
        }
        Command::VerifyTwist { input, n, flavor } => {
            let sols = read_solutions(&input)?;
            if n == 0 {
                return Err(Error::Malformed("--n must be at least 1".into()));
            }
            for sol in &sols {
                check_budget(sol.size(), n + 1)?;
            }
            if !gate(out, &sols) {
                return Ok(());
            }
            let flavors = flavor.flavors();
            fan_out(out, &sols, |sol| {
                let mut r = VerificationReport::new(sol.canonical_hash());
                for &f in flavors {
                    r.absorb(&format!("{f}/intertwining"), verify_intertwining(sol, f)?);
                    r.absorb(&format!("{f}/cocycle"), verify_cocycle(sol, f)?);
                    let recursion = match n_twist(sol, n, f) {
                        Ok(_) => None,
                        Err(Error::Admissibility { witness, .. }) => Some(witness),
                        Err(e) => return Err(e),
                    };
                    r.record(format!("{f}/recursion-{n}"), recursion);
                    r.absorb(&format!("{f}/monodromy-{n}"), verify_factorization(sol, n, f)?);
                }
                Ok(r)
            })?;
        }
        Command::Baxterize { input, check, max_n } => {
            let sols = read_solutions(&input)?;
            for sol in &sols {
                check_budget(sol.size(), max_n + 1)?;
            }
            if !gate(out, &sols) {
                return Ok(());
            }
            fan_out(out, &sols, |sol| match check {
                BaxterCheck::All => verify_baxterization(sol, max_n),
                BaxterCheck::Ybe => verify_spectral_ybe(sol),
                BaxterCheck::Unitarity => verify_unitarity(sol),
                BaxterCheck::Crossing => verify_crossing(sol),
                BaxterCheck::Twist => verify_yangian_twist(sol),
                BaxterCheck::Monodromy => {
                    let mut r = VerificationReport::new(sol.canonical_hash());
                    for big_n in 1..=max_n {
                        r.absorb(&format!("monodromy-{big_n}"), verify_baxterized_factorization(sol, big_n)?);
                    }
                    Ok(r)
                }
            })?;
        }
        Command::Frt { input, check } => {
            let sols = read_solutions(&input)?;
            if !gate(out, &sols) {
                return Ok(());
            }
            fan_out(out, &sols, |sol| {
                let mut r = VerificationReport::new(sol.canonical_hash());
                if matches!(check, FrtCheck::All | FrtCheck::Rtt) {
                    r.absorb("rtt", verify_rtt(sol)?);
                }
                if matches!(check, FrtCheck::All | FrtCheck::Exchange) {
                    r.absorb("exchange", verify_exchange(sol));
                }
                if matches!(check, FrtCheck::All | FrtCheck::Blocks) {
                    r.absorb("blocks", coproduct_blocks(sol)?);
                }
                Ok(r)
            })?;
        }
        Command::Lyubashenko {
            tau,
            size,
            check,
            max_n,
        } => {
            if check != "all" {
                return Err(Error::Malformed(format!("unknown check {check:?}; only \"all\" is available")));
            }
            check_budget(size, max_n + 1)?;
            let data = LyubashenkoData::from_cycles(&tau, size)?;
            out.report(verify_lyubashenko(&data, max_n)?);
        }
        Command::Corpus { out: dir, regenerate } => {
            let corpus = build_corpus()?;
            let mut r = VerificationReport::new("corpus");
            r.record("frozen-counts", (corpus.counts() != frozen_counts()).then(Vec::new));
            if regenerate || !dir.join("manifest.json").exists() {
                corpus.write_to(&dir)?;
            }
            let stale = corpus.stale_files(&dir);
            r.record("up-to-date", (!stale.is_empty()).then(|| vec![stale.len()]));
            for name in &stale {
                eprintln!("stale: {name}");
            }
            let counts = serde_json::to_value(corpus.counts()).expect("serializes");
            out.document(format!("solutions {}", corpus.len()), counts);
            out.report(r);
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(EXIT_USAGE) } else { ExitCode::SUCCESS };
        }
    };
    let mut out = Output {
        format: cli.format,
        timings: cli.timings,
        reports: Vec::new(),
        documents: Vec::new(),
        text: String::new(),
    };
    match run(cli, &mut out) {
        Ok(()) => {
            let passed = out.passed();
            if out.flush().is_err() {
                return ExitCode::from(EXIT_FAIL);
            }
            if passed {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(EXIT_FAIL)
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code(&e))
        }
    }
}
