//! Batch command surface over `deltacalc`.
//!
//! [`run`] never touches the process: it returns a [`CommandResult`] holding
//! the rendered stdout and, on failure, the diagnostic and exit code.

use std::fmt::Write as _;
use std::path::Path;

use clap::{Args, Parser, Subcommand, ValueEnum};
use rand::Rng;
use serde_json::{json, Value};

use deltacalc::artin::{
    andre_report, closed_form_projection, gamma2_nilpotency_index, gamma2_oracle_expand, ArtinRing, MixedElement,
};
use deltacalc::delta::{alpha_to_delta, annihilation_order, compose, theta, AlphaWord, Annihilation, DeltaElement, DeltaWord};
use deltacalc::expr::{eval_delta, eval_generator, eval_s, parse_delta, parse_s};
use deltacalc::f2::{GradedDims, Gf2};
use deltacalc::gamma::{
    delta_act, free_generators, gamma_axiom_suite, nilpotency_probe, s_dims, s_generators, AxiomReport, Generator,
    ProbeKind, ProbeOutcome, SElement, SamplePool,
};
use deltacalc::spectral::e1_page;
use deltacalc::ErrorKind;

const EXIT_CODES: &str = "\
Exit status:
  0  success
  1  a verification command found a counterexample
  2  usage error (unknown subcommand, bad flag)
  3  syntax error in an expression or JSON argument
  4  precondition violated (index below 2, inadmissible word, ...)
  5  integer out of range (indices and degrees must be below 2^32)
  6  invalid input (unknown generator, invalid ring, unreadable file)

JSON arguments (--hq, --ring, --element) accept inline JSON or a file path.
DELTA_CALC_THREADS caps worker threads (0 or unset = one per core).";

#[derive(Debug, Parser)]
#[command(name = "delta-calc", version, about = "Mod 2 higher divided squares: Adem reduction, bases, actions, E1 pages, Artin rings")]
#[command(after_help = EXIT_CODES)]
struct Cli {
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    format: Format,
    /// Seed for randomized verification commands.
    #[arg(long, default_value_t = 0, global = true)]
    seed: u64,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Reduce a sum of δ-words to admissible form.
    Reduce { expr: String },
    /// Compose two δ-expressions and reduce.
    Compose { a: String, b: String },
    /// Excess, degree, length and admissibility of one δ-word.
    Stats { word: String },
    /// Least s with θ(s,t)·δ_j = 0.
    Annihilate {
        #[arg(long)]
        j: u64,
        #[arg(long)]
        t: u32,
        #[arg(long, default_value_t = 16)]
        max_s: u32,
    },
    /// The composite δ_{2^{s+t}} … δ_{2^{t+1}}.
    Theta {
        #[arg(long)]
        s: u32,
        #[arg(long)]
        t: u32,
    },
    /// Rewrite an α-word acting on degree N as a δ-word.
    Alpha2delta {
        #[arg(long, value_delimiter = ',', required = true)]
        word: Vec<u64>,
        #[arg(long)]
        degree: u64,
    },
    /// Free generators δ_I x_n of 𝒮(F(n)) up to a degree.
    Sgens {
        #[arg(long)]
        n: u64,
        #[arg(long)]
        max_degree: u64,
    },
    /// Dimensions of 𝒮(W) for W given by graded dimensions.
    Sbasis {
        #[arg(long)]
        hq: String,
        #[arg(long)]
        max_degree: u64,
        #[arg(long)]
        by_weight: bool,
    },
    /// Apply δ_i to an element of 𝒮(W).
    Act {
        #[arg(long)]
        i: u64,
        #[arg(long)]
        on: String,
    },
    /// Iterate an α-operation on a generator modulo decomposables.
    Probe {
        #[arg(long)]
        kind: String,
        #[arg(long)]
        gen: String,
        #[arg(long, default_value_t = 10)]
        max_iter: usize,
    },
    /// E¹ page of the fundamental spectral sequence.
    E1 {
        #[arg(long)]
        hq: String,
        #[arg(long)]
        max_t: u64,
    },
    /// Multiply two elements of an Artin ring.
    RingMul {
        #[command(flatten)]
        ring: RingArg,
        a: String,
        b: String,
    },
    /// Nilpotency index of the maximal ideal.
    MIndex {
        #[command(flatten)]
        ring: RingArg,
    },
    /// γ₂-nilpotency of a chain-level witness over an Artin ring.
    Nilpotency {
        #[command(flatten)]
        ring: RingArg,
        #[arg(long)]
        element: String,
        /// Also expand γ₂^s directly and compare with the closed form.
        #[arg(long)]
        oracle: bool,
        #[arg(long, requires = "oracle")]
        s: Option<u32>,
    },
    /// Randomized check of the divided power axioms.
    Axioms {
        #[arg(long, default_value_t = 1000)]
        trials: usize,
    },
}

#[derive(Debug, Args)]
struct RingArg {
    #[arg(long = "ring")]
    ring: String,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FailureKind {
    Verification,
    Usage,
    Syntax,
    Precondition,
    Range,
    Input,
}

impl FailureKind {
    pub fn exit_code(self) -> i32 {
        match self {
            FailureKind::Verification => 1,
            FailureKind::Usage => 2,
            FailureKind::Syntax => 3,
            FailureKind::Precondition => 4,
            FailureKind::Range => 5,
            FailureKind::Input => 6,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum Status {
    Ok,
    Error { kind: FailureKind, message: String },
}

#[derive(Debug, Clone, PartialEq)]
pub struct CommandResult {
    pub status: Status,
    /// Machine output for stdout.
    pub stdout: String,
}

impl CommandResult {
    pub fn exit_code(&self) -> i32 {
        match &self.status {
            Status::Ok => 0,
            Status::Error { kind, .. } => kind.exit_code(),
        }
    }

    pub fn is_ok(&self) -> bool {
        self.status == Status::Ok
    }
}

struct Failure {
    kind: FailureKind,
    message: String,
}

impl From<deltacalc::Error> for Failure {
    fn from(e: deltacalc::Error) -> Self {
        let kind = match e.kind() {
            ErrorKind::Range => FailureKind::Range,
            ErrorKind::Syntax => FailureKind::Syntax,
            ErrorKind::Precondition => FailureKind::Precondition,
            ErrorKind::Input => FailureKind::Input,
        };
        Failure { kind, message: e.to_string() }
    }
}

fn input_error(message: String) -> Failure {
    Failure { kind: FailureKind::Input, message }
}

/// Both renderings of one result, built together so they carry the same content.
struct Output {
    json: Value,
    text: String,
    verified: bool,
}

impl Output {
    fn new(json: Value, text: impl Into<String>) -> Self {
        Output { json, text: text.into(), verified: true }
    }
}

/// Parses `argv` (program name first) and runs the subcommand.
pub fn run<I, T>(argv: I) -> CommandResult
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            use clap::error::ErrorKind as K;
            return match e.kind() {
                K::DisplayHelp | K::DisplayVersion => CommandResult { status: Status::Ok, stdout: e.to_string() },
                _ => CommandResult {
                    status: Status::Error { kind: FailureKind::Usage, message: e.to_string() },
                    stdout: String::new(),
                },
            };
        }
    };
    match execute(&cli) {
        Ok(out) => {
            let mut stdout = match cli.format {
                Format::Json => serde_json::to_string(&out.json).expect("serialisable"),
                Format::Text => out.text,
            };
            if !stdout.ends_with('\n') {
                stdout.push('\n');
            }
            let status = if out.verified {
                Status::Ok
            } else {
                Status::Error { kind: FailureKind::Verification, message: "verification failed".into() }
            };
            CommandResult { status, stdout }
        }
        Err(f) => CommandResult { status: Status::Error { kind: f.kind, message: f.message }, stdout: String::new() },
    }
}

/// Applies `DELTA_CALC_THREADS` to the global worker pool.
pub fn configure_threads() -> Result<(), String> {
    let Ok(v) = std::env::var("DELTA_CALC_THREADS") else {
        return Ok(());
    };
    let n: usize = v.trim().parse().map_err(|_| format!("DELTA_CALC_THREADS must be a non-negative integer, got `{v}`"))?;
    rayon::ThreadPoolBuilder::new().num_threads(n).build_global().map_err(|e| e.to_string())
}

/// Inline JSON when the argument looks like JSON, otherwise a file to read.
fn json_arg(arg: &str) -> Result<String, Failure> {
    let t = arg.trim_start();
    if t.starts_with('{') || t.starts_with('[') {
        return Ok(arg.to_string());
    }
    std::fs::read_to_string(Path::new(arg)).map_err(|e| input_error(format!("cannot read `{arg}`: {e}")))
}

fn dims_arg(arg: &str) -> Result<GradedDims, Failure> {
    Ok(serde_json::from_str(&json_arg(arg)?).map_err(deltacalc::Error::from)?)
}

fn ring_arg(r: &RingArg) -> Result<ArtinRing, Failure> {
    Ok(ArtinRing::from_json(&json_arg(&r.ring)?)?)
}

fn delta_json(e: &DeltaElement) -> Value {
    let terms: Vec<String> = e.terms().rev().map(|w| w.to_string()).collect();
    json!({ "result": e.to_string(), "terms": terms })
}

fn s_json(e: &SElement) -> Value {
    let terms: Vec<String> = e.monomials().map(|m| m.to_string()).collect();
    json!({ "result": e.to_string(), "terms": terms })
}

fn single_word(text: &str) -> Result<DeltaWord, Failure> {
    let ast = parse_delta(text)?;
    match <[DeltaWord; 1]>::try_from(ast.words) {
        Ok([w]) => Ok(w),
        Err(_) => Err(deltacalc::Error::Precondition("expected a single δ-word".into()).into()),
    }
}

fn dims_text(dims: &GradedDims) -> String {
    let mut s = String::from("degree  dim\n");
    for (d, n) in dims.iter() {
        let _ = writeln!(s, "{d:>6}  {n}");
    }
    s
}

fn execute(cli: &Cli) -> Result<Output, Failure> {
    Ok(match &cli.command {
        Command::Reduce { expr } => {
            let e = eval_delta(&parse_delta(expr)?)?;
            Output::new(delta_json(&e), e.to_string())
        }
        Command::Compose { a, b } => {
            let e = compose(&eval_delta(&parse_delta(a)?)?, &eval_delta(&parse_delta(b)?)?);
            Output::new(delta_json(&e), e.to_string())
        }
        Command::Stats { word } => {
            let w = single_word(word)?;
            let json = json!({
                "word": w.to_string(),
                "excess": w.excess(),
                "degree": w.degree(),
                "length": w.len(),
                "admissible": w.is_admissible(),
            });
            let text = format!(
                "word: {w}\nexcess: {}\ndegree: {}\nlength: {}\nadmissible: {}",
                w.excess(),
                w.degree(),
                w.len(),
                w.is_admissible()
            );
            Output::new(json, text)
        }
        Command::Annihilate { j, t, max_s } => match annihilation_order(*j, *t, *max_s)? {
            Annihilation::Annihilated { s } => Output::new(json!({ "s": s }), format!("s = {s}")),
            Annihilation::NotWithin { s_max } => Output::new(
                json!({ "s": null, "s_max": s_max }),
                format!("not annihilated for s <= {s_max}"),
            ),
        },
        Command::Theta { s, t } => {
            let w = theta(*s, *t)?;
            Output::new(json!({ "word": w.to_string(), "indices": w.indices(), "degree": w.degree() }), w.to_string())
        }
        Command::Alpha2delta { word, degree } => {
            let w = alpha_to_delta(&AlphaWord::new(word.clone(), *degree))?;
            let json = json!({ "alpha": word, "degree": degree, "delta": w.to_string(), "indices": w.indices() });
            Output::new(json, w.to_string())
        }
        Command::Sgens { n, max_degree } => {
            let gens = s_generators(*n, *max_degree)?;
            let list: Vec<Value> = gens
                .iter()
                .map(|g| json!({ "generator": g.to_string(), "word": g.word().indices(), "degree": g.degree(), "weight": g.weight() }))
                .collect();
            let mut text = String::from("degree  weight  generator\n");
            for g in &gens {
                let _ = writeln!(text, "{:>6}  {:>6}  {g}", g.degree(), g.weight());
            }
            Output::new(json!({ "n": n, "generators": list }), text)
        }
        Command::Sbasis { hq, max_degree, by_weight } => {
            let w = dims_arg(hq)?;
            let dims = s_dims(&w, *max_degree)?;
            let total = dims.total();
            let mut json = json!({ "max_degree": max_degree, "dims": total });
            let mut text = dims_text(&total);
            if *by_weight {
                let mut slices = serde_json::Map::new();
                let mut weights: Vec<u64> = dims.iter().map(|(wt, _, _)| wt).collect();
                weights.dedup();
                text.push_str("\nby weight\n");
                for wt in weights {
                    let slice = dims.slice(wt);
                    let row: Vec<String> = slice.iter().map(|(d, n)| format!("{d}:{n}")).collect();
                    let _ = writeln!(text, "{wt:>6}  {}", row.join(" "));
                    slices.insert(wt.to_string(), serde_json::to_value(&slice).expect("serialisable"));
                }
                json["by_weight"] = Value::Object(slices);
            }
            Output::new(json, text)
        }
        Command::Act { i, on } => {
            let x = eval_s(&parse_s(on)?)?;
            let y = delta_act(*i, &x)?;
            Output::new(s_json(&y), y.to_string())
        }
        Command::Probe { kind, gen, max_iter } => {
            let kind: ProbeKind = kind.parse()?;
            let g = eval_generator(&parse_s(gen)?)?;
            let report = nilpotency_probe(kind, &g, *max_iter)?;
            let iterates: Vec<String> = report.iterates.iter().map(|x| x.to_string()).collect();
            let (outcome, summary) = match report.outcome {
                ProbeOutcome::Nilpotent { order } => {
                    (json!({ "outcome": "nilpotent", "order": order }), format!("nilpotent: iterate {order} vanishes"))
                }
                ProbeOutcome::NonvanishingThrough { iterations } => (
                    json!({ "outcome": "nonvanishing_through", "iterations": iterations }),
                    format!("nonvanishing through {iterations} iterations"),
                ),
            };
            let mut text = format!("{kind} on {g}: {summary}\n");
            for (k, x) in iterates.iter().enumerate() {
                let _ = writeln!(text, "{:>3}  {x}", k + 1);
            }
            Output::new(json!({ "kind": kind.to_string(), "generator": g.to_string(), "result": outcome, "iterates": iterates }), text)
        }
        Command::E1 { hq, max_t } => {
            let table = e1_page(&dims_arg(hq)?, *max_t)?;
            Output::new(table.to_json(), table.to_string())
        }
        Command::RingMul { ring, a, b } => {
            let r = ring_arg(ring)?;
            let p = deltacalc::f2::CoeffRing::mul(&r, &r.parse(a)?, &r.parse(b)?);
            Output::new(json!({ "result": r.format(&p) }), r.format(&p))
        }
        Command::MIndex { ring } => {
            let r = ring_arg(ring)?;
            let report = andre_report(&r, &[]);
            let json = json!({ "m_index": report.m_index, "dimension": r.dimension(), "bound": report.bound });
            let text = format!("m_index: {}\ndimension: {}\nbound: {}", report.m_index, r.dimension(), report.bound);
            Output::new(json, text)
        }
        Command::Nilpotency { ring, element, oracle, s } => {
            let r = ring_arg(ring)?;
            let w = MixedElement::from_json(&r, &json_arg(element)?)?;
            let report = andre_report(&r, std::slice::from_ref(&w));
            let mut json = serde_json::to_value(&report).expect("serialisable");
            json["consistent"] = json!(report.consistent());
            let mut text = format!(
                "element: {}\nindex: {}\nm_index: {}\nbound: {}\nconsistent: {}\n",
                w.format(&r),
                report.witnesses[0].index,
                report.m_index,
                report.bound,
                report.consistent()
            );
            let mut verified = report.consistent();
            if *oracle {
                let s = s.unwrap_or_else(|| gamma2_nilpotency_index(&r, &w));
                let expanded = gamma2_oracle_expand(&r, &w, s)?.modulo_products();
                let closed = closed_form_projection(&r, &w, s);
                let show = |x: &deltacalc::gamma::DpElement<_, _>| x.display_with(|c| Some(r.format(c)));
                let agree = expanded == closed;
                verified &= agree;
                json["oracle"] = json!({ "s": s, "expansion": show(&expanded), "closed_form": show(&closed), "agree": agree });
                let _ = write!(
                    text,
                    "oracle s = {s}\n  expansion:   {}\n  closed form: {}\n  agree: {agree}\n",
                    show(&expanded),
                    show(&closed)
                );
            }
            let _ = write!(text, "reasoning:\n{}", report.reasoning.iter().map(|l| format!("  {l}\n")).collect::<String>());
            Output { json, text, verified }
        }
        Command::Axioms { trials } => axioms(*trials, cli.seed)?,
    })
}

fn axioms(trials: usize, seed: u64) -> Result<Output, Failure> {
    if trials == 0 {
        return Err(deltacalc::Error::Precondition("--trials must be positive".into()).into());
    }
    let w: GradedDims = [(2, 1), (3, 2)].into_iter().collect();
    let gens = free_generators(&w, 9)?;
    let pool = SamplePool::new(&gens, 9);
    let over_gf2 = gamma_axiom_suite(&Gf2, &pool, |rng| rng.gen_bool(0.75), trials, seed);
    let r = ArtinRing::truncated("t", 4)?;
    let basis = r.standard_monomials();
    let over_t4 = gamma_axiom_suite(
        &r,
        &pool,
        |rng| r.from_monomials(basis.iter().filter(|_| rng.gen_bool(0.5)).cloned()),
        trials,
        seed,
    );
    let mut text = String::new();
    let mut sections = Vec::new();
    for (name, report) in [("GF(2)", &over_gf2), ("GF(2)[t]/(t^4)", &over_t4)] {
        let _ = writeln!(text, "coefficients {name}: {}", if report.all_passed() { "all passed" } else { "FAILED" });
        for o in &report.outcomes {
            let _ = writeln!(text, "  ({}) {:<52} {}/{} failed", o.axiom, o.statement, o.failures, o.instances);
        }
        sections.push(json!({ "coefficients": name, "all_passed": report.all_passed(), "report": report }));
    }
    let verified = [&over_gf2, &over_t4].iter().all(|r: &&AxiomReport| r.all_passed());
    Ok(Output {
        json: json!({ "seed": seed, "trials": trials, "all_passed": verified, "suites": sections }),
        text,
        verified,
    })
}
