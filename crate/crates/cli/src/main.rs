//! `cbrws`: generate, check and use rewriting systems for graphs of circle
//! bundles.
//!
//! Exit codes: 0 verified, 1 usage or parse error, 2 refuted, 3 inconclusive.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use cbrws::graph::{BundleGraph, BundlePresentation};
use cbrws::kb::{check_complete, complete, CompletionLimits, Verdict, DEFAULT_RESOLVE_STEP_CAP, DEFAULT_RULE_CAP};
use cbrws::normal::{block_decompose, growth_series, TwoBundleLayout};
use cbrws::orders::{lemma_precedence, rpo_greater, DisorderCache, Precedence, DEFAULT_LENGTH_CAP};
use cbrws::reduce::{reduce_counted, reduce_random, rewrite_once, DEFAULT_STEP_CAP};
use cbrws::{Error, RewritingSystem, RuleFamily, Word};
use clap::{Parser, Subcommand, ValueEnum};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::json;

const EXIT_USAGE: u8 = 1;
const EXIT_REFUTED: u8 = 2;
const EXIT_INCONCLUSIVE: u8 = 3;

#[derive(Parser, Debug)]
#[command(name = "cbrws", version, about = "Complete rewriting systems for graphs of circle bundles")]
struct Cli {
    /// Emit one JSON object per line instead of text.
    #[arg(long, global = true)]
    structured: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Variant {
    Full,
    Restricted,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Write the rewriting system of a graph as `.rws`.
    Generate {
        #[arg(long)]
        graph: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, value_enum, default_value = "full")]
        variant: Variant,
    },
    /// Print the normal form of a word and the number of steps taken.
    Reduce {
        #[arg(long)]
        system: PathBuf,
        /// Whitespace separated letters, e.g. 'a.v.1 b.v.1^-1'.
        word: String,
        #[arg(long, default_value_t = DEFAULT_STEP_CAP)]
        step_cap: usize,
        /// Also reduce under this many random strategies and compare.
        #[arg(long, default_value_t = 0)]
        strategies: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Resolve every critical pair.
    Check {
        #[arg(long)]
        system: PathBuf,
        #[arg(long, default_value_t = DEFAULT_RESOLVE_STEP_CAP)]
        step_cap: usize,
        /// List resolved pairs too.
        #[arg(long)]
        all: bool,
    },
    /// Knuth-Bendix completion with RPO orientation.
    Complete {
        #[arg(long)]
        system: PathBuf,
        /// Tiers greatest first, e.g. 'x^-1 > x > y^-1 > y'. Defaults to
        /// declaration order with inverses above their letters.
        #[arg(long)]
        precedence: Option<String>,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, default_value_t = DEFAULT_RULE_CAP)]
        rule_cap: usize,
        #[arg(long, default_value_t = DEFAULT_RESOLVE_STEP_CAP)]
        step_cap: usize,
    },
    /// Count irreducible words by length.
    Growth {
        #[arg(long)]
        system: PathBuf,
        #[arg(long, default_value_t = 10)]
        max_len: usize,
        #[arg(long, default_value_t = DEFAULT_RESOLVE_STEP_CAP)]
        step_cap: usize,
    },
    /// Check the termination orders for a graph's rules.
    OrderCheck {
        #[arg(long)]
        graph: PathBuf,
        /// Also apply every rule at every position of every word up to this
        /// length over the letters of loops and their vertices.
        #[arg(long, default_value_t = 3)]
        max_len: usize,
    },
    /// Split an irreducible word of a two-vertex system into blocks.
    Decompose {
        #[arg(long)]
        graph: PathBuf,
        word: String,
    },
}

struct Failure {
    code: u8,
    message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Failure {
        let code = if matches!(e, Error::StepCapExceeded { .. }) { EXIT_INCONCLUSIVE } else { EXIT_USAGE };
        Failure { code, message: e.to_string() }
    }
}

type Outcome = Result<u8, Failure>;

fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| Failure { code: EXIT_USAGE, message: format!("{}: {e}", path.display()) })
}

fn write_or_print(out: Option<&Path>, text: &str) -> Result<(), Failure> {
    match out {
        Some(p) => fs::write(p, text).map_err(|e| Failure { code: EXIT_USAGE, message: format!("{}: {e}", p.display()) }),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn load_system(path: &Path) -> Result<RewritingSystem, Failure> {
    RewritingSystem::from_rws(&read(path)?).map_err(|e| Failure { code: EXIT_USAGE, message: format!("{}: {e}", path.display()) })
}

fn load_graph(path: &Path) -> Result<BundleGraph, Failure> {
    BundleGraph::from_gob(&read(path)?).map_err(|e| Failure { code: EXIT_USAGE, message: format!("{}: {e}", path.display()) })
}

struct Out {
    structured: bool,
}

impl Out {
    fn emit(&self, text: impl AsRef<str>, value: serde_json::Value) {
        if self.structured {
            println!("{value}");
        } else {
            println!("{}", text.as_ref());
        }
    }
}

fn generate(out: &Out, graph: &Path, dest: Option<&Path>, variant: Variant) -> Outcome {
    let g = load_graph(graph)?;
    let p = BundlePresentation::new(&g)?;
    let sys = match variant {
        Variant::Full => p.system(),
        Variant::Restricted => p.restricted().restricted().clone(),
    };
    let families: serde_json::Map<String, serde_json::Value> = RuleFamily::ALL
        .iter()
        .map(|&f| (f.name().to_string(), json!(sys.count_family(f))))
        .filter(|(_, n)| n != &json!(0))
        .collect();
    let summary = families.iter().map(|(k, v)| format!("{k} {v}")).collect::<Vec<_>>().join(", ");
    match dest {
        Some(path) => {
            write_or_print(Some(path), &sys.to_rws())?;
            out.emit(
                format!("{} rules ({summary})", sys.len()),
                json!({"command": "generate", "rules": sys.len(), "families": families, "out": path.display().to_string()}),
            );
        }
        None => {
            print!("{}", sys.to_rws());
            eprintln!("{} rules ({summary})", sys.len());
        }
    }
    Ok(0)
}

fn reduce_cmd(out: &Out, system: &Path, word: &str, step_cap: usize, strategies: usize, seed: u64) -> Outcome {
    let sys = load_system(system)?;
    let w = sys.parse_word(word)?;
    let r = reduce_counted(&w, &sys, step_cap)?;
    let nf = sys.format_word(&r.word);
    out.emit(format!("{nf}\t{} steps", r.steps), json!({"command": "reduce", "normal_form": nf, "steps": r.steps}));
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for i in 0..strategies {
        let other = reduce_random(&w, &sys, &mut rng, step_cap)?;
        if other != r.word {
            let alt = sys.format_word(&other);
            out.emit(
                format!("strategy {i} disagrees: {alt}"),
                json!({"command": "reduce", "strategy": i, "normal_form": alt, "agrees": false}),
            );
            return Ok(EXIT_REFUTED);
        }
    }
    Ok(0)
}

fn check(out: &Out, system: &Path, step_cap: usize, all: bool) -> Outcome {
    let sys = load_system(system)?;
    let report = check_complete(&sys, step_cap);
    let a = sys.alphabet();
    for r in &report.reports {
        if all || !r.resolved() {
            out.emit(r.line(a), json!({"command": "check", "pair": r.line(a), "resolved": r.resolved()}));
        }
    }
    let verdict = report.verdict();
    let name = match verdict {
        Verdict::Complete => "complete",
        Verdict::Refuted => "refuted",
        Verdict::Inconclusive => "inconclusive",
    };
    out.emit(
        report.to_string(),
        json!({"command": "check", "pairs": report.pair_count(), "resolved": report.resolved_count(), "verdict": name}),
    );
    Ok(match verdict {
        Verdict::Complete => 0,
        Verdict::Refuted => EXIT_REFUTED,
        Verdict::Inconclusive => EXIT_INCONCLUSIVE,
    })
}

fn complete_cmd(
    out: &Out,
    system: &Path,
    precedence: Option<&str>,
    dest: Option<&Path>,
    limits: CompletionLimits,
) -> Outcome {
    let sys = load_system(system)?;
    let prec = match precedence {
        Some(text) => Precedence::parse(sys.alphabet().clone(), text)?,
        None => Precedence::declaration_order(sys.alphabet().clone()),
    };
    let done = match complete(&sys, &prec, limits) {
        Ok(done) => done,
        Err(e @ (Error::RuleCap(_) | Error::StepCapExceeded { .. })) => {
            out.emit(e.to_string(), json!({"command": "complete", "error": e.to_string()}));
            return Ok(EXIT_INCONCLUSIVE);
        }
        Err(e) => return Err(e.into()),
    };
    match dest {
        Some(path) => {
            write_or_print(Some(path), &done.to_rws())?;
            out.emit(
                format!("{} rules", done.len()),
                json!({"command": "complete", "rules": done.len(), "out": path.display().to_string()}),
            );
        }
        None => print!("{}", done.to_rws()),
    }
    Ok(0)
}

fn growth(out: &Out, system: &Path, max_len: usize, step_cap: usize) -> Outcome {
    let sys = load_system(system)?;
    let series = growth_series(&sys, max_len, step_cap)?;
    if let Some(w) = &series.warning {
        if out.structured {
            println!("{}", json!({"command": "growth", "warning": w}));
        } else {
            eprintln!("warning: {w}");
        }
    }
    for (len, c) in series.counts.iter().enumerate() {
        out.emit(format!("{len}\t{c}"), json!({"command": "growth", "length": len, "count": c.to_string()}));
    }
    Ok(0)
}

fn order_check(out: &Out, graph: &Path, max_len: usize) -> Outcome {
    let g = load_graph(graph)?;
    let p = BundlePresentation::new(&g)?;
    let prec = lemma_precedence(&p);
    let partition = p.restricted();
    let restricted = partition.restricted();
    let full = p.system();
    let mut failures = 0;
    for rule in restricted.rules() {
        if !rpo_greater(&rule.lhs, &rule.rhs, &prec)? {
            failures += 1;
            let r = restricted.format_rule(rule);
            out.emit(format!("NOT RPO-DECREASING {r}"), json!({"command": "order-check", "rule": r, "order": "rpo", "ok": false}));
        }
    }
    let mut cache = DisorderCache::new(&partition, DEFAULT_LENGTH_CAP);
    for rule in full.rules() {
        if !cache.psi_greater(&rule.lhs, &rule.rhs)? {
            failures += 1;
            let r = full.format_rule(rule);
            out.emit(format!("NOT PSI-DECREASING {r}"), json!({"command": "order-check", "rule": r, "order": "psi", "ok": false}));
        }
    }
    // Rules applied inside words over the loop letters and their vertex fibers.
    let letters = p.letters();
    let mut sample = Vec::new();
    for (l, loop_letters) in letters.loops.iter().enumerate() {
        for x in [letters.fiber[p.loop_vertex(l)], loop_letters.r, loop_letters.s, loop_letters.t] {
            if !sample.contains(&x) {
                sample.extend([x, x.inverse()]);
            }
        }
    }
    let mut applications = 0u64;
    let mut layer = vec![Word::empty()];
    for _ in 0..max_len {
        let mut next = Vec::new();
        for w in &layer {
            for &l in &sample {
                let mut v = w.clone();
                v.push(l);
                let before = cache.psi_profile(&v)?;
                for occ in full.matcher().all_occurrences(&v) {
                    let after_word = rewrite_once(&v, occ.position, full.rule(occ.rule))?;
                    applications += 1;
                    if cache.psi_profile(&after_word)? >= before {
                        failures += 1;
                        let (a, b) = (full.format_word(&v), full.format_word(&after_word));
                        out.emit(
                            format!("NOT PSI-DECREASING {a} -> {b}"),
                            json!({"command": "order-check", "word": a, "result": b, "order": "psi", "ok": false}),
                        );
                    }
                }
                next.push(v);
            }
        }
        layer = next;
    }
    let summary = format!(
        "{} restricted rules RPO-checked, {} rules psi-checked, {applications} applications in context, {failures} failures",
        restricted.len(),
        full.len()
    );
    out.emit(
        &summary,
        json!({"command": "order-check", "restricted_rules": restricted.len(), "rules": full.len(), "applications": applications, "failures": failures}),
    );
    Ok(if failures == 0 { 0 } else { EXIT_REFUTED })
}

fn decompose(out: &Out, graph: &Path, word: &str) -> Outcome {
    let g = load_graph(graph)?;
    let p = BundlePresentation::new(&g)?;
    let layout = TwoBundleLayout::new(&p)?;
    let sys = p.system();
    let theta = sys.parse_word(word)?;
    let d = block_decompose(&theta, &sys, &layout)?;
    let a = sys.alphabet();
    let shown = d.display(a).to_string();
    let blocks: Vec<_> = d
        .blocks
        .iter()
        .map(|b| json!({"u": a.format(&b.u), "v": a.format(&b.v), "w": a.format(&b.w)}))
        .collect();
    out.emit(
        format!("k = {}\t{}", d.k(), if shown.is_empty() { "1" } else { &shown }),
        json!({"command": "decompose", "k": d.k(), "blocks": blocks}),
    );
    Ok(0)
}

fn run(cli: Cli) -> Outcome {
    let out = Out { structured: cli.structured };
    match cli.command {
        Command::Generate { graph, out: dest, variant } => generate(&out, &graph, dest.as_deref(), variant),
        Command::Reduce { system, word, step_cap, strategies, seed } => {
            reduce_cmd(&out, &system, &word, step_cap, strategies, seed)
        }
        Command::Check { system, step_cap, all } => check(&out, &system, step_cap, all),
        Command::Complete { system, precedence, out: dest, rule_cap, step_cap } => {
            complete_cmd(&out, &system, precedence.as_deref(), dest.as_deref(), CompletionLimits { rule_cap, step_cap })
        }
        Command::Growth { system, max_len, step_cap } => growth(&out, &system, max_len, step_cap),
        Command::OrderCheck { graph, max_len } => order_check(&out, &graph, max_len),
        Command::Decompose { graph, word } => decompose(&out, &graph, &word),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let structured = cli.structured;
    let code = match run(cli) {
        Ok(code) => code,
        Err(f) => {
            if structured {
                println!("{}", json!({"error": f.message, "exit": f.code}));
            } else {
                eprintln!("error: {}", f.message);
            }
            f.code
        }
    };
    let _ = std::io::stdout().flush();
    ExitCode::from(code)
}
