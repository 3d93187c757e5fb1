//! Command-line front end shared by the `grouptk` binary and the tests.

use std::fmt::Write as _;
use std::path::Path;

use clap::{Args, Parser, Subcommand, ValueEnum};
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use serde_json::{json, Value};

use crate::colimit::{
    colimit_hypothesis, h1_gmn, hopf_h3_check, is_connected_tuple, pi_1_colimit_finite, pi_1_colimit_pc, pi_2_colimit_n3,
    pi_n_colimit, search_disconnected_triples, Connectivity, FormulaReport, NormalTuple, Pi1Report, SubgroupLattice,
};
use crate::error::{Error, Result};
use crate::finite::{catalog, catalog_presentation, named_subgroup, realize_with, FinSubgroup, FiniteGroup, Strategy};
use crate::intmat::AbelianInvariants;
use crate::nilpotent::{PcGroup, PcSubgroup, DEFAULT_BASIS_BUDGET};
use crate::presentation::{parse_presentation, parse_word, Presentation};
use crate::tensor::{boundary_image, build_e, build_t, check_soundness, kernel_of_boundary, TensorPresentation};
use crate::word::{hopf_element, indexed_alphabet, Generator, Word};
use crate::wu::{braid_check, membership_check, wu_group, WuConfiguration};

pub const SCHEMA_VERSION: u32 = 1;
/// Overrides the Hall basis budget of the nilpotent engine.
pub const BUDGET_ENV: &str = "GROUPTK_BUDGET";
/// Overrides the default coset limit.
pub const COSET_LIMIT_ENV: &str = "GROUPTK_COSET_LIMIT";
const DEFAULT_LIMIT: usize = 1_000_000;
const DEFAULT_SEED: u64 = 0x5eed;

pub const EXIT_OK: i32 = 0;
pub const EXIT_INPUT: i32 = 1;
pub const EXIT_HYPOTHESIS: i32 = 2;
pub const EXIT_BUDGET: i32 = 3;

#[derive(Debug, Parser)]
#[command(name = "grouptk", version, about = "Homotopy and homology formulas for colimits of classifying spaces")]
pub struct Cli {
    /// Emit a JSON report instead of text.
    #[arg(long, global = true)]
    pub json: bool,
    #[command(subcommand)]
    pub verb: Verb,
}

#[derive(Debug, Args, Clone)]
pub struct GroupArgs {
    /// `catalog:NAME`, `free:RANK`, a presentation file or inline presentation.
    #[arg(long)]
    pub group: String,
    /// Comma-separated subgroups: catalog names, `whole`, `trivial`,
    /// `center`, `derived`, `N<k>`, `gamma<k>` or `ncl(w1; w2)`.
    #[arg(long, default_value = "")]
    pub subgroups: String,
    /// Nilpotency class for `free:` groups.
    #[arg(long, default_value_t = 3)]
    pub class: usize,
    /// Coset enumeration limit.
    #[arg(long)]
    pub limit: Option<usize>,
}

#[derive(Debug, Clone, Copy, ValueEnum, PartialEq, Eq)]
pub enum StrategyArg {
    Hlt,
    Felsch,
    Both,
}

#[derive(Debug, Subcommand)]
pub enum Verb {
    /// Connectivity of a tuple of normal subgroups, or a search for a
    /// disconnected normal triple over the catalog.
    Connectivity {
        #[arg(long)]
        group: Option<String>,
        #[arg(long, default_value = "")]
        subgroups: String,
        #[arg(long, default_value_t = 3)]
        class: usize,
        #[arg(long)]
        limit: Option<usize>,
        /// Search all catalog groups up to this order.
        #[arg(long)]
        search_up_to: Option<usize>,
    },
    /// π_n of the colimit for an n-tuple (π_1 for a single subgroup).
    Pi {
        #[arg(long)]
        n: usize,
        #[command(flatten)]
        g: GroupArgs,
    },
    /// π_2 of the colimit of three subgroups.
    Pi2 {
        #[command(flatten)]
        g: GroupArgs,
        /// Instead of the given triple, draw this many random normal triples
        /// and compare all six orderings.
        #[arg(long)]
        random: Option<usize>,
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
    },
    /// H_1(G, M, N).
    H1 {
        #[command(flatten)]
        g: GroupArgs,
    },
    /// Truncated Hopf-type check for H_3 of a two-relator group.
    H3check {
        /// Presentation whose two relators are r and s.
        #[arg(long)]
        input: String,
        #[arg(long, default_value_t = 3)]
        class: usize,
    },
    /// Build T(N_1, .., N_n) (or E(G, M, N)) and check the boundary map.
    Tensor {
        #[command(flatten)]
        g: GroupArgs,
        /// Build E(G, M, N) from two subgroups M, N.
        #[arg(long)]
        e: bool,
        /// Print the presentation.
        #[arg(long)]
        dsl: bool,
    },
    /// Kernel of the boundary map of T(N_1, .., N_n).
    Kernel {
        #[command(flatten)]
        g: GroupArgs,
        #[arg(long)]
        e: bool,
        #[arg(long, value_enum, default_value = "both")]
        strategy: StrategyArg,
    },
    /// The truncated Wu quotient for π_{n+1}(S²).
    Wu {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        class: usize,
    },
    /// Membership of a Hopf composite element in the Wu quotient.
    Hopf {
        /// Nesting depth k of E(k, k); defaults to n - 1.
        #[arg(long)]
        k: Option<usize>,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        class: usize,
        #[arg(long, default_value_t = 1)]
        power: i64,
    },
    /// The pure braid style triple of normal closures.
    Braid {
        #[arg(long, default_value_t = 3)]
        class: usize,
    },
    /// Triviality of a balanced presentation by coset enumeration.
    Akcheck {
        /// Index n of ⟨x1, x2 | x1^n x2^-(n+1), x1 x2 x1 x2^-1 x1^-1 x2^-1⟩.
        #[arg(long)]
        n: Option<usize>,
        #[arg(long)]
        input: Option<String>,
        #[arg(long)]
        limit: Option<usize>,
        #[arg(long, value_enum, default_value = "hlt")]
        strategy: StrategyArg,
    },
}

impl Verb {
    fn name(&self) -> &'static str {
        match self {
            Verb::Connectivity { .. } => "connectivity",
            Verb::Pi { .. } => "pi",
            Verb::Pi2 { .. } => "pi2",
            Verb::H1 { .. } => "h1",
            Verb::H3check { .. } => "h3check",
            Verb::Tensor { .. } => "tensor",
            Verb::Kernel { .. } => "kernel",
            Verb::Wu { .. } => "wu",
            Verb::Hopf { .. } => "hopf",
            Verb::Braid { .. } => "braid",
            Verb::Akcheck { .. } => "akcheck",
        }
    }
}

/// Result of one invocation.
#[derive(Debug, Clone)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::Hypothesis(_) => EXIT_HYPOTHESIS,
        Error::LimitExceeded { .. } | Error::BudgetExceeded(_) | Error::Overflow(_) => EXIT_BUDGET,
        _ => EXIT_INPUT,
    }
}

fn error_kind(e: &Error) -> &'static str {
    match e {
        Error::Syntax { .. } => "syntax",
        Error::UnknownGenerator { .. } => "unknown-generator",
        Error::InvalidArgument(_) => "invalid-argument",
        Error::ParentMismatch => "parent-mismatch",
        Error::NotNormal(_) => "not-normal",
        Error::NotContained(_) => "not-contained",
        Error::NonAbelianQuotient(_) => "nonabelian-quotient",
        Error::LimitExceeded { .. } => "limit-exceeded",
        Error::BudgetExceeded(_) => "budget-exceeded",
        Error::Hypothesis(_) => "hypothesis",
        Error::Overflow(_) => "overflow",
        Error::UnknownGroup(_) => "unknown-group",
    }
}

/// Parses `args` (including the program name) and runs the job.
pub fn run_args<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    match Cli::try_parse_from(args) {
        Ok(cli) => run(&cli),
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INPUT } else { EXIT_OK };
            let text = e.render().to_string();
            if code == EXIT_OK {
                Outcome { code, stdout: text, stderr: String::new() }
            } else {
                Outcome { code, stdout: String::new(), stderr: text }
            }
        }
    }
}

pub fn run(cli: &Cli) -> Outcome {
    let verb = cli.verb.name();
    match dispatch(&cli.verb) {
        Ok(report) => {
            let stdout = if cli.json {
                let v = json!({ "schema": SCHEMA_VERSION, "verb": verb, "result": report.json });
                format!("{}\n", serde_json::to_string_pretty(&v).expect("report serializes"))
            } else {
                report.text
            };
            Outcome { code: report.code, stdout, stderr: String::new() }
        }
        Err(e) => {
            let code = exit_code(&e);
            if cli.json {
                let v = json!({
                    "schema": SCHEMA_VERSION,
                    "verb": verb,
                    "error": { "kind": error_kind(&e), "message": e.to_string(), "exit_code": code },
                });
                let stdout = format!("{}\n", serde_json::to_string_pretty(&v).expect("report serializes"));
                Outcome { code, stdout, stderr: String::new() }
            } else {
                Outcome { code, stdout: String::new(), stderr: format!("grouptk {verb}: {e}\n") }
            }
        }
    }
}

struct Report {
    code: i32,
    json: Value,
    text: String,
}

impl Report {
    fn ok(value: &impl Serialize, text: String) -> Result<Report> {
        Ok(Report { code: EXIT_OK, json: to_value(value), text })
    }
}

fn to_value(v: &impl Serialize) -> Value {
    serde_json::to_value(v).expect("report serializes")
}

fn env_usize(name: &str) -> Result<Option<usize>> {
    match std::env::var(name) {
        Ok(v) => v
            .trim()
            .parse()
            .map(Some)
            .map_err(|_| Error::InvalidArgument(format!("{name} must be a positive integer, got `{v}`"))),
        Err(_) => Ok(None),
    }
}

fn basis_budget() -> Result<usize> {
    Ok(env_usize(BUDGET_ENV)?.unwrap_or(DEFAULT_BASIS_BUDGET))
}

fn coset_limit(flag: Option<usize>) -> Result<usize> {
    match flag {
        Some(l) => Ok(l),
        None => Ok(env_usize(COSET_LIMIT_ENV)?.unwrap_or(DEFAULT_LIMIT)),
    }
}

enum Ambient {
    Finite { name: Option<String>, group: FiniteGroup },
    Free(PcGroup),
}

/// Reads a presentation from a file path or inline text.
fn read_presentation(spec: &str) -> Result<Presentation> {
    let path = Path::new(spec);
    if path.is_file() {
        let text = std::fs::read_to_string(path).map_err(|e| Error::InvalidArgument(format!("{spec}: {e}")))?;
        parse_presentation(&text)
    } else {
        parse_presentation(spec)
    }
}

fn load_ambient(spec: &str, class: usize, limit: usize) -> Result<Ambient> {
    if let Some(name) = spec.strip_prefix("catalog:") {
        catalog_presentation(name)?;
        return Ok(Ambient::Finite { name: Some(name.to_string()), group: catalog(name)? });
    }
    if let Some(rank) = spec.strip_prefix("free:") {
        let rank: usize = rank.trim().parse().map_err(|_| Error::InvalidArgument(format!("bad rank in `{spec}`")))?;
        if rank == 0 {
            return Err(Error::InvalidArgument("rank must be positive".into()));
        }
        let names = indexed_alphabet("a", rank + 1).split_off(1);
        return Ok(Ambient::Free(PcGroup::new(names, class, basis_budget()?)?));
    }
    let p = read_presentation(spec)?;
    Ok(Ambient::Finite { name: None, group: realize_with(&p, limit, Strategy::Hlt)? })
}

/// Splits on commas outside parentheses.
pub fn split_top(s: &str) -> Vec<String> {
    let mut out = Vec::new();
    let mut depth = 0i32;
    let mut cur = String::new();
    for ch in s.chars() {
        match ch {
            '(' => depth += 1,
            ')' => depth -= 1,
            ',' if depth == 0 => {
                out.push(cur.trim().to_string());
                cur.clear();
                continue;
            }
            _ => {}
        }
        cur.push(ch);
    }
    if !cur.trim().is_empty() {
        out.push(cur.trim().to_string());
    }
    out
}

fn ncl_words(spec: &str, alphabet: &[Generator]) -> Result<Option<Vec<Word>>> {
    let lower = spec.to_ascii_lowercase();
    if !(lower.starts_with("ncl(") && lower.ends_with(')')) {
        return Ok(None);
    }
    let inner = &spec[4..spec.len() - 1];
    inner.split(';').filter(|w| !w.trim().is_empty()).map(|w| parse_word(w.trim(), alphabet)).collect::<Result<_>>().map(Some)
}

/// Resolves one subgroup spec (see `GroupArgs::subgroups`) in a finite group.
pub fn resolve_subgroup(name: Option<&str>, g: &FiniteGroup, spec: &str) -> Result<FinSubgroup> {
    if let Some(words) = ncl_words(spec, g.generator_names())? {
        let seeds: Vec<_> = words.iter().map(|w| g.eval(w)).collect();
        return Ok(g.normal_closure(&seeds));
    }
    named_subgroup(name.unwrap_or(""), g, spec)
}

fn pc_subgroup(f: &PcGroup, spec: &str) -> Result<PcSubgroup> {
    if let Some(words) = ncl_words(spec, f.names())? {
        let seeds = words.iter().map(|w| f.collect(w)).collect::<Result<Vec<_>>>()?;
        return f.normal_closure(&seeds);
    }
    let key = spec.trim().to_ascii_lowercase();
    match key.as_str() {
        "g" | "whole" => Ok(f.whole()),
        "1" | "trivial" => Ok(f.trivial()),
        "derived" => Ok(f.lower_central(2)),
        _ => {
            if let Some(w) = key.strip_prefix("gamma").and_then(|s| s.parse::<usize>().ok()) {
                if w >= 1 {
                    return Ok(f.lower_central(w));
                }
            }
            Err(Error::InvalidArgument(format!("unknown subgroup `{spec}` (use whole, trivial, gamma<k> or ncl(..))")))
        }
    }
}

enum Tuple {
    Finite(Vec<FinSubgroup>),
    Free(Vec<PcSubgroup>),
}

fn load_tuple(g: &GroupArgs) -> Result<Tuple> {
    let amb = load_ambient(&g.group, g.class, coset_limit(g.limit)?)?;
    let specs = split_top(&g.subgroups);
    match amb {
        Ambient::Finite { name, group } => {
            let subs = specs.iter().map(|s| resolve_subgroup(name.as_deref(), &group, s)).collect::<Result<_>>()?;
            Ok(Tuple::Finite(subs))
        }
        Ambient::Free(f) => Ok(Tuple::Free(specs.iter().map(|s| pc_subgroup(&f, s)).collect::<Result<_>>()?)),
    }
}

fn need(count: usize, got: usize, what: &str) -> Result<()> {
    if count != got {
        return Err(Error::InvalidArgument(format!("{what} needs {count} subgroups, got {got}")));
    }
    Ok(())
}

fn dispatch(verb: &Verb) -> Result<Report> {
    match verb {
        Verb::Connectivity { group, subgroups, class, limit, search_up_to } => {
            if let Some(max) = search_up_to {
                return search(*max);
            }
            let Some(group) = group else {
                return Err(Error::InvalidArgument("connectivity needs --group or --search-up-to".into()));
            };
            let g = GroupArgs { group: group.clone(), subgroups: subgroups.clone(), class: *class, limit: *limit };
            match load_tuple(&g)? {
                Tuple::Finite(s) => connectivity(&NormalTuple::new(s)?),
                Tuple::Free(s) => connectivity(&NormalTuple::new(s)?),
            }
        }
        Verb::Pi { n, g } => {
            let tuple = load_tuple(g)?;
            match tuple {
                Tuple::Finite(s) => {
                    need(*n, s.len(), "pi")?;
                    let t = NormalTuple::new(s)?;
                    if *n == 1 {
                        pi1(pi_1_colimit_finite(&t)?)
                    } else {
                        formula(&pi_n_colimit(&t)?)
                    }
                }
                Tuple::Free(s) => {
                    need(*n, s.len(), "pi")?;
                    let t = NormalTuple::new(s)?;
                    if *n == 1 {
                        pi1(pi_1_colimit_pc(&t)?)
                    } else {
                        formula(&pi_n_colimit(&t)?)
                    }
                }
            }
        }
        Verb::Pi2 { g, random, seed } => {
            if let Some(count) = random {
                return pi2_random(g, *count, *seed);
            }
            match load_tuple(g)? {
                Tuple::Finite(s) => {
                    need(3, s.len(), "pi2")?;
                    formula(&pi_2_colimit_n3(&s[0], &s[1], &s[2])?)
                }
                Tuple::Free(s) => {
                    need(3, s.len(), "pi2")?;
                    formula(&pi_2_colimit_n3(&s[0], &s[1], &s[2])?)
                }
            }
        }
        Verb::H1 { g } => match load_tuple(g)? {
            Tuple::Finite(s) => {
                need(2, s.len(), "h1")?;
                formula(&h1_gmn(&s[0], &s[1])?)
            }
            Tuple::Free(s) => {
                need(2, s.len(), "h1")?;
                formula(&h1_gmn(&s[0], &s[1])?)
            }
        },
        Verb::H3check { input, class } => {
            let p = read_presentation(input)?;
            if p.relators().len() != 2 {
                return Err(Error::InvalidArgument("h3check needs exactly two relators r, s".into()));
            }
            let f = PcGroup::new(p.generators().to_vec(), *class, basis_budget()?)?;
            formula(&hopf_h3_check(&f, &p.relators()[0], &p.relators()[1])?)
        }
        Verb::Tensor { g, e, dsl } => {
            let tp = load_tensor(g, *e)?;
            tensor(&tp, *dsl)
        }
        Verb::Kernel { g, e, strategy } => {
            let tp = load_tensor(g, *e)?;
            kernel(&tp, coset_limit(g.limit)?, *strategy)
        }
        Verb::Wu { n, class } => {
            let cfg = WuConfiguration::with_budget(*n, *class, basis_budget()?)?;
            let r = wu_group(&cfg)?;
            let mut text = String::new();
            let _ = writeln!(text, "Wu quotient for pi_{}(S^2) at class {}", n + 1, class);
            let _ = writeln!(text, "  {}", r.label);
            let _ = writeln!(text, "  basis size {}, generating tuples {} ({} distinct)", r.basis_size, r.generating_tuples, r.distinct_commutators);
            let _ = writeln!(text, "  numerator Hirsch length {}, denominator Hirsch length {}", r.numerator_igs_size, r.denominator_igs_size);
            let _ = writeln!(text, "  central: {}", yes_no(r.central));
            write_invariants(&mut text, &r.invariants);
            if let Some(m) = &r.hopf {
                let _ = writeln!(text, "  hopf element {}", m.word);
                let _ = writeln!(text, "    in numerator: {}", yes_no(m.in_numerator));
                let _ = writeln!(text, "    in denominator: {}", yes_no(m.in_denominator));
                match (m.order_in_quotient, m.infinite_at_this_class) {
                    (_, true) => {
                        let _ = writeln!(text, "    order in quotient: infinite");
                    }
                    (Some(o), _) => {
                        let _ = writeln!(text, "    order in quotient: {o}");
                    }
                    _ => {}
                }
            }
            if let Some(gen) = r.hopf_generates {
                let _ = writeln!(text, "  generated by the hopf element: {}", yes_no(gen));
            }
            Report::ok(&r, text)
        }
        Verb::Hopf { k, n, class, power } => {
            let k = k.unwrap_or(n.saturating_sub(1));
            let cfg = WuConfiguration::with_budget(*n, *class, basis_budget()?)?;
            let w = hopf_element(k)?.pow(*power);
            let m = membership_check(&w, &cfg)?;
            let mut text = String::new();
            let _ = writeln!(text, "hopf element E({k},{k})^{power} in the Wu quotient n={n} class={class}");
            let _ = writeln!(text, "  word: {}", m.word);
            let _ = writeln!(text, "  in numerator: {}", yes_no(m.in_numerator));
            let _ = writeln!(text, "  in denominator: {}", yes_no(m.in_denominator));
            if m.infinite_at_this_class {
                let _ = writeln!(text, "  order in quotient: infinite");
            } else if let Some(o) = m.order_in_quotient {
                let _ = writeln!(text, "  order in quotient: {o}");
            }
            Report::ok(&json!({ "k": k, "power": power, "membership": to_value(&m) }), text)
        }
        Verb::Braid { class } => {
            let r = braid_check(*class)?;
            let mut text = String::new();
            let _ = writeln!(text, "braid triple at class {class}: relators {}", r.relators.join(", "));
            for p in &r.pairs {
                let _ = writeln!(
                    text,
                    "  R{} ∩ R{} = [R{}, R{}]: {} (Hirsch lengths {} / {})",
                    p.i,
                    p.j,
                    p.i,
                    p.j,
                    yes_no(p.equal),
                    p.intersection_igs_size,
                    p.commutator_igs_size
                );
            }
            Report::ok(&r, text)
        }
        Verb::Akcheck { n, input, limit, strategy } => akcheck(*n, input.as_deref(), coset_limit(*limit)?, *strategy),
    }
}

fn yes_no(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

fn write_invariants(text: &mut String, inv: &AbelianInvariants) {
    let torsion: Vec<String> = inv.torsion.iter().map(|t| t.to_string()).collect();
    let _ = writeln!(text, "  group: {inv}");
    let _ = writeln!(text, "  free rank: {}", inv.free_rank);
    let _ = writeln!(text, "  torsion: [{}]", torsion.join(", "));
}

fn write_checks(text: &mut String, checks: &[Connectivity]) {
    for c in checks {
        let sub: Vec<String> = c.subtuple.iter().map(|i| i.to_string()).collect();
        let verdict = if c.connected { "connected".to_string() } else { format!("NOT connected, witness {}", c.witness.as_ref().map(|w| w.to_string()).unwrap_or_default()) };
        let _ = writeln!(text, "  hypothesis ({}): {} after {} instances", sub.join(","), verdict, c.instances_checked);
    }
}

fn formula(r: &FormulaReport) -> Result<Report> {
    let mut text = String::new();
    let _ = writeln!(text, "{}", r.formula);
    for i in &r.inputs {
        let _ = writeln!(text, "  {i}");
    }
    write_checks(&mut text, &r.hypothesis_checks);
    let _ = writeln!(text, "  numerator: {}", r.numerator);
    let _ = writeln!(text, "  denominator: {}", r.denominator);
    match &r.invariants {
        Some(inv) => write_invariants(&mut text, inv),
        None => {
            let _ = writeln!(text, "  group: not abelian");
        }
    }
    for n in &r.notes {
        let _ = writeln!(text, "  note: {n}");
    }
    Report::ok(r, text)
}

fn pi1(r: Pi1Report) -> Result<Report> {
    let mut text = String::new();
    let _ = writeln!(text, "{} ({})", r.formula, r.label);
    for i in &r.inputs {
        let _ = writeln!(text, "  {i}");
    }
    let _ = writeln!(text, "  product: {}", r.product);
    if let Some(o) = r.order {
        let _ = writeln!(text, "  order: {o}");
    }
    if let Some(h) = r.hirsch_length {
        let _ = writeln!(text, "  Hirsch length: {h}");
    }
    let _ = writeln!(text, "  abelianization: {}", r.abelianization);
    Report::ok(&r, text)
}

fn connectivity<S: SubgroupLattice>(t: &NormalTuple<S>) -> Result<Report> {
    let whole = is_connected_tuple(t)?;
    let hypothesis = colimit_hypothesis(t)?;
    let mut text = String::new();
    let _ = writeln!(text, "tuple of {} normal subgroups", t.len());
    write_checks(&mut text, std::slice::from_ref(&whole));
    let _ = writeln!(text, "(n-1)-subtuples:");
    write_checks(&mut text, &hypothesis);
    let ok = hypothesis.iter().all(|c| c.connected);
    let _ = writeln!(text, "formula hypothesis holds: {}", yes_no(ok));
    Report::ok(&json!({ "tuple": to_value(&whole), "subtuples": to_value(&hypothesis), "hypothesis_holds": ok }), text)
}

fn search(max: usize) -> Result<Report> {
    let s = search_disconnected_triples(max)?;
    let mut text = String::new();
    let _ = writeln!(text, "searched {} groups of order ≤ {}, {} normal triples", s.groups_searched, s.max_order, s.triples_checked);
    match &s.witness {
        Some(w) => {
            let _ = writeln!(
                text,
                "disconnected triple in {}: normal subgroups N{}, N{}, N{} of orders {:?}, witness {}",
                w.group,
                w.normal_indices[0],
                w.normal_indices[1],
                w.normal_indices[2],
                w.orders,
                w.check.witness.as_ref().map(|x| x.to_string()).unwrap_or_default()
            );
        }
        None => {
            let _ = writeln!(text, "no disconnected normal triple exists in this range");
        }
    }
    Report::ok(&s, text)
}

fn pi2_random(g: &GroupArgs, count: usize, seed: u64) -> Result<Report> {
    let limit = coset_limit(g.limit)?;
    let Ambient::Finite { group, .. } = load_ambient(&g.group, g.class, limit)? else {
        return Err(Error::InvalidArgument("random sampling needs a finite group".into()));
    };
    let normals = group.normal_subgroups();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let perms = [[0, 1, 2], [0, 2, 1], [1, 0, 2], [1, 2, 0], [2, 0, 1], [2, 1, 0]];
    let mut samples = Vec::new();
    let mut all_symmetric = true;
    for _ in 0..count {
        let pick: Vec<&FinSubgroup> = (0..3).map(|_| normals.choose(&mut rng).expect("nonempty")).collect();
        let mut values = Vec::new();
        for p in perms {
            let r = pi_2_colimit_n3(pick[p[0]], pick[p[1]], pick[p[2]])?;
            values.push(r.invariants.map(|i| i.to_string()).unwrap_or_else(|| "not abelian".into()));
        }
        let symmetric = values.iter().all(|v| *v == values[0]);
        all_symmetric &= symmetric;
        samples.push(json!({
            "orders": pick.iter().map(|s| s.order()).collect::<Vec<_>>(),
            "values": values,
            "symmetric": symmetric,
        }));
    }
    let text = format!("{count} random normal triples (seed {seed}): invariants identical under all orderings: {}\n", yes_no(all_symmetric));
    Report::ok(&json!({ "seed": seed, "samples": samples, "all_symmetric": all_symmetric }), text)
}

fn load_tensor(g: &GroupArgs, e: bool) -> Result<TensorPresentation> {
    let Tuple::Finite(subs) = load_tuple(g)? else {
        return Err(Error::InvalidArgument("the tensor construction needs a finite group".into()));
    };
    if e {
        need(2, subs.len(), "E(G, M, N)")?;
        build_e(&subs[0], &subs[1])
    } else {
        build_t(&NormalTuple::new(subs)?)
    }
}

fn tensor(tp: &TensorPresentation, dsl: bool) -> Result<Report> {
    let sound = check_soundness(tp);
    let image = boundary_image(tp);
    let counts: Vec<Value> = tp.family_counts().iter().map(|(f, c)| json!({ "family": f, "relators": c })).collect();
    let mut text = String::new();
    let _ = writeln!(text, "T for n={} over a group of order {}", tp.n(), tp.group().order());
    let _ = writeln!(text, "  symbols: {}", tp.symbols().len());
    for (f, c) in tp.family_counts() {
        let _ = writeln!(text, "  {} relators: {}", f.label(), c);
    }
    let _ = writeln!(text, "  boundary image order: {}", image.order());
    let _ = writeln!(text, "  relators mapping to 1: {}/{}", sound.relators_checked - sound.failures.len().min(sound.relators_checked), sound.relators_checked);
    let _ = writeln!(text, "  crossed module checks: {} ({})", sound.crossed_module_checks, if sound.is_sound() { "ok" } else { "FAILED" });
    if dsl {
        let _ = writeln!(text, "{}", tp.to_dsl());
    }
    let mut v = json!({
        "n": tp.n(),
        "ambient_order": tp.group().order(),
        "symbols": tp.symbols().len(),
        "families": counts,
        "image_order": image.order(),
        "soundness": to_value(&sound),
    });
    if dsl {
        v["presentation"] = Value::String(tp.to_dsl());
    }
    Ok(Report { code: EXIT_OK, json: v, text })
}

fn kernel(tp: &TensorPresentation, limit: usize, strategy: StrategyArg) -> Result<Report> {
    let strategies: &[Strategy] = match strategy {
        StrategyArg::Hlt => &[Strategy::Hlt],
        StrategyArg::Felsch => &[Strategy::Felsch],
        StrategyArg::Both => &[Strategy::Hlt, Strategy::Felsch],
    };
    let reports = strategies.iter().map(|&s| kernel_of_boundary(tp, limit, s)).collect::<Result<Vec<_>>>()?;
    let agree = reports.windows(2).all(|w| {
        (w[0].t_order, w[0].kernel_order, &w[0].invariants) == (w[1].t_order, w[1].kernel_order, &w[1].invariants)
    });
    let consistent = reports.iter().all(|r| r.is_consistent());
    let mut text = String::new();
    let _ = writeln!(text, "ker(∂: T → G) for n={} over a group of order {}", tp.n(), tp.group().order());
    for r in &reports {
        let _ = writeln!(
            text,
            "  {:?}: |T| = {}, |∂T| = {}, |ker| = {}, ker^ab = {}, abelian: {}, central: {}",
            r.strategy,
            r.t_order,
            r.image_order,
            r.kernel_order,
            r.invariants,
            yes_no(r.kernel_abelian),
            yes_no(r.kernel_central)
        );
        if !r.kernel_abelian {
            let _ = writeln!(text, "  note: kernel is not abelian; its abelianization is reported");
        }
    }
    let _ = writeln!(text, "  rewriting cross-check: {}", yes_no(consistent));
    if reports.len() > 1 {
        let _ = writeln!(text, "  strategies agree: {}", yes_no(agree));
    }
    Report::ok(&json!({ "runs": to_value(&reports), "strategies_agree": agree, "consistent": consistent }), text)
}

fn ak_presentation(n: usize) -> Result<Presentation> {
    parse_presentation(&format!("gens: x1, x2 | rels: x1^{n}*x2^-{}, x1*x2*x1*x2^-1*x1^-1*x2^-1", n + 1))
}

fn akcheck(n: Option<usize>, input: Option<&str>, limit: usize, strategy: StrategyArg) -> Result<Report> {
    let p = match (n, input) {
        (Some(n), None) => ak_presentation(n)?,
        (None, Some(text)) => read_presentation(text)?,
        _ => return Err(Error::InvalidArgument("akcheck needs exactly one of --n or --input".into())),
    };
    let strategy = match strategy {
        StrategyArg::Felsch => Strategy::Felsch,
        _ => Strategy::Hlt,
    };
    let table = crate::finite::enumerate_cosets(&p, &[], limit, strategy)?;
    if !table.is_complete() {
        return Err(Error::LimitExceeded { limit });
    }
    let order = table.len();
    let text = format!("presentation: {}\n  order: {order}\n  trivial group: {}\n", p.render(), yes_no(order == 1));
    Report::ok(
        &json!({ "presentation": p.render(), "order": order, "trivial": order == 1, "cosets_defined": table.defined, "max_live": table.max_live }),
        text,
    )
}
