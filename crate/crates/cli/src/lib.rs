//! Command-line front end: argument parsing, dispatch and exit codes.
//!
//! Exit codes: 0 success or empty report, 1 violations or infeasible,
//! 2 usage, I/O or parse error, 3 node budget exhausted.

use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use num_bigint::BigUint;
use serde_json::{json, Value};
use wschur::search::DEFAULT_BUDGET;
use wschur::{
    base_partition, bound, bound_table, compute_ws, find_seeds, iterate, parse_partition,
    serialize_partition, step_hazards, validate_seed, verify, verify_first, BigOrder, ConditionSet,
    ConstructError, Partition, SearchMode, ViolationReport,
};

mod render;

pub const EXIT_OK: i32 = 0;
pub const EXIT_VIOLATIONS: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_BUDGET: i32 = 3;

#[derive(Parser, Debug)]
#[command(
    name = "wschur",
    version = concat!(env!("CARGO_PKG_VERSION"), " (wsp format 1)"),
    about = "Construct, verify and search for weak Schur partitions"
)]
pub struct Cli {
    /// Emit a single JSON document on stdout
    #[arg(long, global = true)]
    pub json: bool,

    /// Suppress informational messages on stderr
    #[arg(long, short, global = true)]
    pub quiet: bool,

    /// Worker threads: a number, or `auto`
    #[arg(long, global = true, default_value = "auto", value_parser = parse_threads)]
    pub threads: usize,

    #[command(subcommand)]
    pub command: Command,
}

fn parse_threads(s: &str) -> Result<usize, String> {
    match s {
        "auto" => Ok(0),
        _ => match s.parse::<usize>() {
            Ok(0) | Err(_) => Err(format!("expected a positive number or `auto`, got `{s}`")),
            Ok(k) => Ok(k),
        },
    }
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Check a .wsp partition file
    Verify(VerifyArgs),
    /// Iterate the construction up to a target subset count
    Generate(GenerateArgs),
    /// Lower bound on WS(s) given by the construction
    Bound {
        #[arg(long = "s")]
        s: u32,
    },
    /// Constructed bounds next to published orders
    Table {
        #[arg(long = "max-s")]
        max_s: u32,
        #[arg(long)]
        markdown: bool,
    },
    /// Exhaustive search
    #[command(subcommand)]
    Search(SearchCommand),
}

#[derive(Args, Debug)]
pub struct VerifyArgs {
    pub file: PathBuf,
    /// `all` or a comma list of 1, 2, 3
    #[arg(long, default_value = "all")]
    pub conditions: String,
    /// Stop at the first violation
    #[arg(long)]
    pub first_only: bool,
    /// Run the seed check (all conditions, order and look-ahead advisory)
    #[arg(long)]
    pub seed_check: bool,
    /// Also report patterns that break the conditions after one construction step
    #[arg(long)]
    pub hazards: bool,
}

#[derive(Args, Debug)]
pub struct GenerateArgs {
    /// Target subset count
    #[arg(long = "s")]
    pub s: usize,
    /// Starting partition (default: the built-in order-21 partition)
    #[arg(long)]
    pub seed: Option<PathBuf>,
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Print where every new element came from
    #[arg(long)]
    pub trace: bool,
}

#[derive(Subcommand, Debug)]
pub enum SearchCommand {
    /// Largest n with a weak Schur partition into s subsets
    Ws {
        #[arg(long = "s")]
        s: usize,
        #[arg(long, default_value_t = 100)]
        cap: u32,
        #[arg(long, default_value_t = DEFAULT_BUDGET)]
        budget: u64,
        /// Write the witness here
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Partitions that can start the construction
    Seeds {
        #[arg(long = "s")]
        s: usize,
        #[arg(long = "n")]
        n: u32,
        #[arg(long, default_value_t = 10)]
        limit: usize,
        #[arg(long, default_value_t = DEFAULT_BUDGET)]
        budget: u64,
        /// Write each seed as seed-<k>.wsp here
        #[arg(long)]
        out_dir: Option<PathBuf>,
    },
}

/// A failure that ends the run with a nonzero exit code.
#[derive(Debug)]
struct Failure {
    code: i32,
    kind: &'static str,
    message: String,
    line: Option<usize>,
}

impl Failure {
    fn usage(message: impl Into<String>) -> Self {
        Self {
            code: EXIT_USAGE,
            kind: "usage",
            message: message.into(),
            line: None,
        }
    }

    fn io(path: &Path, e: std::io::Error) -> Self {
        Self {
            code: EXIT_USAGE,
            kind: "io",
            message: format!("{}: {e}", path.display()),
            line: None,
        }
    }
}

struct Io<'a> {
    out: &'a mut dyn Write,
    err: &'a mut dyn Write,
    json: bool,
    quiet: bool,
}

impl Io<'_> {
    fn info(&mut self, msg: &str) {
        if !self.quiet && !self.json {
            let _ = writeln!(self.err, "{msg}");
        }
    }

    fn json(&mut self, value: &Value) -> Result<(), Failure> {
        let text = serde_json::to_string_pretty(value).expect("values built here always serialize");
        writeln!(self.out, "{text}").map_err(|e| Failure::io(Path::new("<stdout>"), e))
    }

    fn text(&mut self, text: &str) -> Result<(), Failure> {
        self.out
            .write_all(text.as_bytes())
            .map_err(|e| Failure::io(Path::new("<stdout>"), e))
    }
}

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let target: &mut dyn Write = if e.use_stderr() { err } else { out };
            let _ = write!(target, "{}", e.render());
            return code;
        }
    };
    run_cli(cli, out, err)
}

pub fn run_cli(cli: Cli, out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    let pool = match rayon::ThreadPoolBuilder::new()
        .num_threads(cli.threads)
        .build()
    {
        Ok(pool) => pool,
        Err(e) => {
            let _ = writeln!(err, "error: cannot start worker threads: {e}");
            return EXIT_USAGE;
        }
    };
    log::debug!("{} worker thread(s)", pool.current_num_threads());
    let json = cli.json;
    // the sinks are not `Send`, so output is collected in the pool and copied out afterwards
    let (result, stdout_buf, stderr_buf) = pool.install(|| {
        let (mut o, mut e) = (Vec::new(), Vec::new());
        let mut io = Io {
            out: &mut o,
            err: &mut e,
            json,
            quiet: cli.quiet,
        };
        let result = dispatch(&cli.command, &mut io);
        (result, o, e)
    });
    let _ = out.write_all(&stdout_buf);
    let _ = err.write_all(&stderr_buf);
    match result {
        Ok(code) => code,
        Err(f) => {
            if json {
                let mut v = json!({ "error": f.message, "kind": f.kind, "exit_code": f.code });
                if let Some(line) = f.line {
                    v["line"] = json!(line);
                }
                let _ = writeln!(err, "{}", serde_json::to_string(&v).unwrap());
            } else {
                let _ = writeln!(err, "error: {}", f.message);
            }
            f.code
        }
    }
}

fn dispatch(command: &Command, io: &mut Io) -> Result<i32, Failure> {
    match command {
        Command::Verify(args) => cmd_verify(args, io),
        Command::Generate(args) => cmd_generate(args, io),
        Command::Bound { s } => cmd_bound(*s, io),
        Command::Table { max_s, markdown } => cmd_table(*max_s, *markdown, io),
        Command::Search(SearchCommand::Ws {
            s,
            cap,
            budget,
            out,
        }) => cmd_search_ws(*s, *cap, *budget, out.as_deref(), io),
        Command::Search(SearchCommand::Seeds {
            s,
            n,
            limit,
            budget,
            out_dir,
        }) => cmd_search_seeds(*s, *n, *limit, *budget, out_dir.as_deref(), io),
    }
}

fn read_partition(path: &Path) -> Result<Partition, Failure> {
    let text = fs::read_to_string(path).map_err(|e| Failure::io(path, e))?;
    parse_partition(&text).map_err(|e| Failure {
        code: EXIT_USAGE,
        kind: "parse",
        message: format!("{}: {e}", path.display()),
        line: Some(e.line),
    })
}

fn write_file(path: &Path, contents: &str) -> Result<(), Failure> {
    fs::write(path, contents).map_err(|e| Failure::io(path, e))
}

fn cmd_verify(args: &VerifyArgs, io: &mut Io) -> Result<i32, Failure> {
    let which = ConditionSet::parse(&args.conditions).ok_or_else(|| {
        Failure::usage(format!(
            "bad --conditions `{}`: use `all` or e.g. `1,2`",
            args.conditions
        ))
    })?;
    let p = read_partition(&args.file)?;
    let mut report: ViolationReport = if args.seed_check {
        validate_seed(&p)
    } else if args.first_only {
        verify_first(&p, which)
    } else {
        verify(&p, which)
    };
    if args.first_only {
        report.violations.truncate(1);
    }
    if args.hazards && (!args.first_only || report.is_empty()) {
        let mut hazards = step_hazards(&p);
        if args.first_only {
            hazards.truncate(1);
        }
        report.violations.extend(hazards);
    }
    if io.json {
        io.json(&serde_json::to_value(&report).expect("reports serialize"))?;
    } else {
        io.text(&format!(
            "{}: s={} n={}\n{report}",
            args.file.display(),
            p.s(),
            p.n()
        ))?;
    }
    Ok(if report.is_empty() {
        EXIT_OK
    } else {
        EXIT_VIOLATIONS
    })
}

fn cmd_generate(args: &GenerateArgs, io: &mut Io) -> Result<i32, Failure> {
    let seed = match &args.seed {
        Some(path) => read_partition(path)?,
        None => base_partition(),
    };
    let steps = args.s.checked_sub(seed.s()).ok_or_else(|| {
        Failure::usage(format!(
            "target --s {} is below the seed's {} subsets",
            args.s,
            seed.s()
        ))
    })?;
    let chain = match iterate(&seed, steps) {
        Ok(chain) => chain,
        Err(e) => {
            let code = match e {
                ConstructError::Overflow(_) => EXIT_USAGE,
                ConstructError::AtStep { ref source, .. }
                    if matches!(**source, ConstructError::Overflow(_)) =>
                {
                    EXIT_USAGE
                }
                _ => EXIT_VIOLATIONS,
            };
            return Err(Failure {
                code,
                kind: "construction",
                message: e.to_string(),
                line: None,
            });
        }
    };
    let last = chain.last().map_or(&seed, |(p, _)| p);
    let text = serialize_partition(last);
    if let Some(out) = &args.out {
        write_file(out, &text)?;
        io.info(&format!(
            "wrote {} (s={} n={})",
            out.display(),
            last.s(),
            last.n()
        ));
    }

    if io.json {
        let mut doc = json!({
            "s": last.s(),
            "n": last.n(),
            "seed": { "s": seed.s(), "n": seed.n() },
            "steps": steps,
            "out": args.out.as_ref().map(|p| p.display().to_string()),
        });
        if args.trace {
            let traces: Vec<_> = chain.iter().map(|(_, t)| t).collect();
            doc["trace"] = serde_json::to_value(traces).expect("traces serialize");
        }
        if args.out.is_none() {
            doc["partition"] = serde_json::to_value(last).expect("partitions serialize");
        }
        io.json(&doc)?;
    } else {
        if args.trace && !io.quiet {
            for (k, (p, t)) in chain.iter().enumerate() {
                let _ = write!(io.err, "{}", render::trace(k + 1, p.s(), t));
            }
        }
        if args.out.is_none() {
            io.text(&text)?;
        }
    }
    Ok(EXIT_OK)
}

fn cmd_bound(s: u32, io: &mut Io) -> Result<i32, Failure> {
    let order: BigOrder = bound(s).map_err(|e| Failure::usage(e.to_string()))?;
    if io.json {
        io.json(&json!({ "s": s, "order": render::order_json(&order), "source": "construction" }))?;
    } else {
        io.text(&format!("{order}\n"))?;
    }
    Ok(EXIT_OK)
}

fn cmd_table(max_s: u32, markdown: bool, io: &mut Io) -> Result<i32, Failure> {
    let table = bound_table::<BigUint>(max_s).map_err(|e| Failure::usage(e.to_string()))?;
    if io.json {
        io.json(&render::table_json(&table))?;
    } else {
        io.text(&render::table_text(&table, markdown))?;
    }
    Ok(EXIT_OK)
}

fn cmd_search_ws(
    s: usize,
    cap: u32,
    budget: u64,
    out: Option<&Path>,
    io: &mut Io,
) -> Result<i32, Failure> {
    if s == 0 {
        return Err(Failure::usage("--s must be at least 1"));
    }
    let result = compute_ws(s, cap, budget);
    if let (Some(path), Some(w)) = (out, &result.witness) {
        write_file(path, &serialize_partition(w))?;
        io.info(&format!("wrote {}", path.display()));
    }
    if io.json {
        io.json(&serde_json::to_value(&result).expect("search results serialize"))?;
    } else {
        io.text(&render::search_summary(&result))?;
    }
    Ok(if result.budget_exhausted {
        EXIT_BUDGET
    } else if result.mode == SearchMode::Exact || result.best_n > 0 {
        EXIT_OK
    } else {
        EXIT_VIOLATIONS
    })
}

fn cmd_search_seeds(
    s: usize,
    n: u32,
    limit: usize,
    budget: u64,
    out_dir: Option<&Path>,
    io: &mut Io,
) -> Result<i32, Failure> {
    if s == 0 || n == 0 {
        return Err(Failure::usage("--s and --n must be positive"));
    }
    let found = match find_seeds(s, n, limit, budget) {
        Ok(found) => found,
        Err(e) => {
            return Err(Failure {
                code: EXIT_BUDGET,
                kind: "budget",
                message: e.to_string(),
                line: None,
            });
        }
    };
    if let Some(dir) = out_dir {
        fs::create_dir_all(dir).map_err(|e| Failure::io(dir, e))?;
        for (k, seed) in found.seeds.iter().enumerate() {
            write_file(
                &dir.join(format!("seed-{}.wsp", k + 1)),
                &serialize_partition(seed),
            )?;
        }
    }
    if io.json {
        io.json(&json!({
            "s": s,
            "n": n,
            "count": found.seeds.len(),
            "complete": found.complete,
            "nodes_visited": found.nodes_visited,
            "rejected_by_verifier": found.rejected_by_verifier,
            "seeds": found.seeds,
        }))?;
    } else {
        let mut text = String::new();
        for (k, seed) in found.seeds.iter().enumerate() {
            text.push_str(&format!("# seed {}\n{}", k + 1, serialize_partition(seed)));
        }
        io.text(&text)?;
        io.info(&format!(
            "{} seed(s); {}; {} nodes",
            found.seeds.len(),
            if found.complete {
                "search complete"
            } else {
                "limit reached"
            },
            found.nodes_visited
        ));
    }
    Ok(if found.seeds.is_empty() {
        EXIT_VIOLATIONS
    } else {
        EXIT_OK
    })
}
