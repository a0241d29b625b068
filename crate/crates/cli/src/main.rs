use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use wordmap_core::analysis::{
    abelian_from_distset, abelian_invariants_from_distset, build_witness_word, compare_distsets,
    nilpotent_from_1var_distset, nilpotent_from_nvar_distset, sylow_extract, DEFAULT_NODE_BUDGET,
};
use wordmap_core::catalog;
use wordmap_core::engine::{
    distribution_set, fiber_distribution, EnumOptions, FiberOptions, DEFAULT_MAP_CAP, DEFAULT_TUPLE_BUDGET,
};
use wordmap_core::group::{
    abelian_invariants_oracle, abelianization_order, center, derived_subgroup, is_abelian_oracle,
    is_nilpotent_oracle, GroupSpecOptions, DEFAULT_SIZE_LIMIT,
};
use wordmap_core::verify::{verify, verify_sweep, VerifyOptions, THEOREMS};
use wordmap_core::{parse_word, Error, GroupTable};

const GROUP_GRAMMAR: &str = "\
group specs: C<n> | D<2n> (dihedral, named by its order: D8 has order 8) | Q8 | S<n> | A<n> (n <= 6)
             | Heis<p> (order p^3, exponent p, odd prime p) | cayley:<path> | perm:<cycles;cycles>
             products with 'x', e.g. C2xQ8";

const WORD_GRAMMAR: &str = "\
word := term+ ; term := atom ('^' int)? ; atom := var | const | '1' | '(' word ')' | '[' word ',' word ']'
var := 'x' digits | 'x' | 'y' | 'z' ; const := 'g' digits ; [a,b] = a^-1 b^-1 a b";

#[derive(Parser)]
#[command(
    name = "wordmap",
    version,
    about = "Exact fiber distributions of word maps on finite groups",
    after_help = GROUP_GRAMMAR
)]
struct Cli {
    #[command(flatten)]
    common: Common,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Common {
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
    /// Maximum number of word evaluations per fiber count.
    #[arg(long, global = true, default_value_t = DEFAULT_TUPLE_BUDGET)]
    tuple_budget: u64,
    /// Maximum number of word maps enumerated in F_n(G).
    #[arg(long, global = true, default_value_t = DEFAULT_MAP_CAP)]
    map_cap: usize,
    /// Backtracking nodes allowed when comparing distribution sets.
    #[arg(long, global = true, default_value_t = DEFAULT_NODE_BUDGET)]
    node_budget: u64,
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Worker threads; defaults to the available parallelism.
    #[arg(long, global = true)]
    threads: Option<usize>,
    /// Largest group order accepted from a spec.
    #[arg(long, global = true, default_value_t = DEFAULT_SIZE_LIMIT)]
    size_limit: usize,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Tsv,
}

#[derive(Clone, Copy, ValueEnum)]
enum CheckKind {
    Nilpotent,
    Abelian,
    Invariants,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Method {
    Oracle,
    Dist1,
    Dist2,
}

#[derive(Subcommand)]
enum Command {
    /// Summary of a group: order, exponent, nilpotency, abelian invariants.
    Group {
        #[arg(long)]
        group: String,
    },
    /// Fiber distribution of one word map.
    Dist {
        #[arg(long)]
        group: String,
        #[arg(long)]
        word: String,
        /// Number of variables; at least the largest index in the word.
        #[arg(long)]
        vars: Option<usize>,
        /// Comma-separated element indices bound to g0, g1, ...
        #[arg(long)]
        params: Option<String>,
    },
    /// Distribution set of all n-variable word maps.
    Distset {
        #[arg(long)]
        group: String,
        #[arg(long, default_value_t = 1)]
        vars: usize,
    },
    /// Surjective non-uniform witness word for a non-nilpotent group.
    Witness {
        #[arg(long)]
        group: String,
    },
    /// Structural property by oracle or from distribution sets alone.
    Check {
        #[arg(value_enum)]
        property: CheckKind,
        #[arg(long)]
        group: String,
        #[arg(long, value_enum, default_value_t = Method::Oracle)]
        method: Method,
        /// Number of variables for dist2.
        #[arg(long, default_value_t = 2)]
        vars: usize,
    },
    /// Whether two groups have the same distribution set.
    Compare {
        #[arg(long)]
        group: String,
        #[arg(long)]
        group2: String,
        #[arg(long, default_value_t = 1)]
        vars: usize,
    },
    /// Distribution set of a Sylow subgroup, extracted from the group's set.
    Sylow {
        #[arg(long)]
        group: String,
        #[arg(long)]
        prime: u64,
        #[arg(long, default_value_t = 1)]
        vars: usize,
    },
    /// Run a verification claim, or `all`.
    Verify {
        /// uniform-theorem, n1-nilpotent, abelian-lemma, cj-identify, sylow-product,
        /// amit-vishne, amit-conjecture, frobenius, corollary-xc, or all
        theorem: String,
        #[arg(long)]
        group: Option<String>,
        /// Sweep the builtin catalog and any Cayley files under WORDMAP_CATALOG.
        #[arg(long)]
        catalog: bool,
        #[arg(long, default_value_t = 2)]
        vars: usize,
    },
}

enum Failure {
    Usage(String),
    Core(Error, &'static str),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Core(e, "")
    }
}

type CliResult<T> = Result<T, Failure>;

/// Attaches the flag whose value caused a core error.
trait Flag<T> {
    fn flag(self, flag: &'static str) -> CliResult<T>;
}

impl<T> Flag<T> for Result<T, Error> {
    fn flag(self, flag: &'static str) -> CliResult<T> {
        self.map_err(|e| Failure::Core(e, flag))
    }
}

struct Ctx {
    common: Common,
}

impl Ctx {
    fn group(&self, spec: &str, flag: &'static str) -> CliResult<GroupTable> {
        let opts = GroupSpecOptions { size_limit: self.common.size_limit, ..Default::default() };
        opts.build(spec).flag(flag)
    }

    fn fiber(&self) -> FiberOptions {
        FiberOptions { tuple_budget: self.common.tuple_budget, ..Default::default() }
    }

    fn enumeration(&self) -> EnumOptions {
        EnumOptions::with_cap(self.common.map_cap)
    }

    fn verify_options(&self, arity: usize) -> VerifyOptions {
        VerifyOptions {
            groups: GroupSpecOptions { size_limit: self.common.size_limit, ..Default::default() },
            enumeration: self.enumeration(),
            fiber: self.fiber(),
            node_budget: self.common.node_budget,
            seed: self.common.seed,
            arity,
        }
    }
}

enum Output {
    Json(Value),
    Text(String),
}

fn key_value_tsv(v: &Value) -> String {
    match v {
        Value::Object(map) => map.iter().map(|(k, v)| format!("{k}\t{v}\n")).collect(),
        Value::Array(items) => items.iter().map(key_value_tsv).collect(),
        other => format!("{other}\n"),
    }
}

fn report_tsv(v: &Value) -> String {
    let line = |r: &Value| format!("{}\t{}\t{}\n", r["claim"].as_str().unwrap_or(""), r["group"].as_str().unwrap_or(""), r["verdict"].as_str().unwrap_or(""));
    match v {
        Value::Array(items) => items.iter().map(line).collect(),
        r => line(r),
    }
}

fn run(cli: Cli) -> CliResult<Output> {
    let ctx = Ctx { common: cli.common };
    let tsv = ctx.common.format == Format::Tsv;
    match cli.command {
        Command::Group { group } => {
            let g = ctx.group(&group, "--group")?;
            if tsv {
                let rows: String = g
                    .elements()
                    .map(|a| g.row(a).iter().map(u16::to_string).collect::<Vec<_>>().join("\t") + "\n")
                    .collect();
                return Ok(Output::Text(rows));
            }
            Ok(Output::Json(json!({
                "spec": group,
                "order": g.order(),
                "exponent": g.exponent(),
                "abelian": is_abelian_oracle(&g),
                "nilpotent": is_nilpotent_oracle(&g),
                "center_order": center(&g).len(),
                "derived_order": derived_subgroup(&g).len(),
                "abelianization_order": abelianization_order(&g),
                "invariants": abelian_invariants_oracle(&g),
                "element_orders": g.element_orders(),
                "labels": g.labels(),
            })))
        }
        Command::Dist { group, word, vars, params } => {
            let g = ctx.group(&group, "--group")?;
            let w = parse_word(&word, vars).flag("--word")?;
            let params = match params {
                None => Vec::new(),
                Some(text) => text
                    .split(',')
                    .map(|s| s.trim().parse::<usize>())
                    .collect::<Result<Vec<_>, _>>()
                    .map_err(|_| Failure::Usage(format!("--params expects comma-separated element indices, got {text:?}")))?,
            };
            let n = vars.unwrap_or(w.arity());
            let d = fiber_distribution(&w, &g, n, &params, &ctx.fiber()).flag("--params")?;
            if tsv {
                let line: Vec<String> = d.counts().iter().map(u64::to_string).collect();
                return Ok(Output::Text(line.join("\t") + "\n"));
            }
            Ok(Output::Json(d.to_json()))
        }
        Command::Distset { group, vars } => {
            let g = ctx.group(&group, "--group")?;
            let d = distribution_set(&g, vars, &ctx.enumeration())?;
            Ok(if tsv { Output::Text(d.to_tsv()) } else { Output::Json(d.to_json()) })
        }
        Command::Witness { group } => {
            let g = ctx.group(&group, "--group")?;
            let w = build_witness_word(&g, &ctx.fiber())?;
            let value = json!({
                "group": group,
                "nilpotent": w.is_none(),
                "witness": w.as_ref().map(|w| &w.data),
                "distribution": w.as_ref().map(|w| w.distribution.to_json()),
            });
            Ok(if tsv { Output::Text(key_value_tsv(&value)) } else { Output::Json(value) })
        }
        Command::Check { property, group, method, vars } => {
            let g = ctx.group(&group, "--group")?;
            let value = check(&ctx, property, &group, &g, method, vars)?;
            Ok(if tsv { Output::Text(key_value_tsv(&value)) } else { Output::Json(value) })
        }
        Command::Compare { group, group2, vars } => {
            let g1 = ctx.group(&group, "--group")?;
            let g2 = ctx.group(&group2, "--group2")?;
            let d1 = distribution_set(&g1, vars, &ctx.enumeration())?;
            let d2 = distribution_set(&g2, vars, &ctx.enumeration())?;
            let cmp = compare_distsets(&d1, &d2, ctx.common.node_budget)?;
            let mut value = serde_json::to_value(&cmp).expect("comparison serializes");
            let obj = value.as_object_mut().expect("tagged enum is an object");
            obj.insert("group".into(), json!(group));
            obj.insert("group2".into(), json!(group2));
            obj.insert("arity".into(), json!(vars));
            Ok(if tsv { Output::Text(key_value_tsv(&value)) } else { Output::Json(value) })
        }
        Command::Sylow { group, prime, vars } => {
            let g = ctx.group(&group, "--group")?;
            let d = distribution_set(&g, vars, &ctx.enumeration())?;
            let s = sylow_extract(&d, prime).flag("--prime")?;
            Ok(if tsv { Output::Text(s.to_tsv()) } else { Output::Json(s.to_json()) })
        }
        Command::Verify { theorem, group, catalog: sweep, vars } => {
            let opts = ctx.verify_options(vars);
            let theorems: Vec<&str> = if theorem == "all" { THEOREMS.to_vec() } else { vec![theorem.as_str()] };
            if let Some(t) = theorems.iter().find(|t| !THEOREMS.contains(t)) {
                return Err(Failure::Usage(format!(
                    "unknown theorem {t:?}; expected one of: {}, all",
                    THEOREMS.join(", ")
                )));
            }
            let value = if sweep {
                let specs = catalog::catalog()?;
                serde_json::to_value(verify_sweep(&theorems, &specs, &opts)?).expect("reports serialize")
            } else if theorems.len() == 1 {
                let spec = match (&group, theorems[0]) {
                    (Some(g), _) => g.as_str(),
                    (None, "amit-vishne") => "S3",
                    (None, t) => return Err(Failure::Usage(format!("verify {t} needs --group or --catalog"))),
                };
                verify(theorems[0], spec, &opts).flag("--group")?.to_json()
            } else {
                let spec = group.ok_or_else(|| Failure::Usage("verify all needs --group or --catalog".into()))?;
                serde_json::to_value(verify_sweep(&theorems, &[spec], &opts)?).expect("reports serialize")
            };
            Ok(if tsv { Output::Text(report_tsv(&value)) } else { Output::Json(value) })
        }
    }
}

fn check(ctx: &Ctx, property: CheckKind, spec: &str, g: &GroupTable, method: Method, vars: usize) -> CliResult<Value> {
    let name = match property {
        CheckKind::Nilpotent => "nilpotent",
        CheckKind::Abelian => "abelian",
        CheckKind::Invariants => "invariants",
    };
    let arity = match method {
        Method::Oracle => None,
        Method::Dist1 => Some(1),
        Method::Dist2 => {
            if vars < 2 {
                return Err(Failure::Usage("--method dist2 needs --vars of at least 2".into()));
            }
            Some(vars)
        }
    };
    let dist = match arity {
        Some(n) => Some(distribution_set(g, n, &ctx.enumeration())?),
        None => None,
    };
    let mut reason = None;
    let result = match (property, &dist) {
        (CheckKind::Nilpotent, None) => json!(is_nilpotent_oracle(g)),
        (CheckKind::Nilpotent, Some(d)) if d.arity() == 1 => json!(nilpotent_from_1var_distset(d)?),
        (CheckKind::Nilpotent, Some(d)) => json!(nilpotent_from_nvar_distset(d)?),
        (CheckKind::Abelian, None) => json!(is_abelian_oracle(g)),
        (CheckKind::Abelian, Some(d)) if d.arity() == 1 => {
            return Err(Failure::Usage(
                "abelianness is not decided by 1-variable distributions; use --method dist2 or oracle".into(),
            ))
        }
        (CheckKind::Abelian, Some(d)) => json!(abelian_from_distset(d)?),
        (CheckKind::Invariants, None) => {
            let inv = abelian_invariants_oracle(g);
            if inv.is_none() {
                reason = Some("not abelian");
            }
            json!(inv)
        }
        (CheckKind::Invariants, Some(d)) => {
            if d.arity() >= 2 && !abelian_from_distset(d)? {
                reason = Some("not abelian");
                Value::Null
            } else {
                json!(abelian_invariants_from_distset(d, g.order())?)
            }
        }
    };
    let mut value = json!({
        "check": name,
        "group": spec,
        "method": match method { Method::Oracle => "oracle", Method::Dist1 => "dist1", Method::Dist2 => "dist2" },
        "arity": arity,
        "result": result,
    });
    if let Some(r) = reason {
        value["reason"] = json!(r);
    }
    Ok(value)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    if let Some(n) = cli.common.threads {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(n).build_global() {
            eprintln!("error: --threads: {e}");
            return ExitCode::from(1);
        }
    }
    match run(cli) {
        Ok(Output::Json(v)) => {
            println!("{v}");
            ExitCode::SUCCESS
        }
        Ok(Output::Text(t)) => {
            print!("{t}");
            ExitCode::SUCCESS
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Core(e, flag)) => {
            let prefix = if flag.is_empty() { String::new() } else { format!("{flag}: ") };
            eprintln!("error: {prefix}{e}");
            match e {
                Error::UnknownSpec(_) => eprintln!("{GROUP_GRAMMAR}"),
                Error::Syntax { .. } | Error::ArityMismatch { .. } => eprintln!("{WORD_GRAMMAR}"),
                _ => {}
            }
            ExitCode::from(if e.is_budget() { 2 } else { 1 })
        }
    }
}
