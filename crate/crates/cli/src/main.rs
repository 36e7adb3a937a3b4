use std::fmt::Write as _;
use std::fs;
use std::io::{self, Read, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};
use rand::seq::index::sample;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use onetwo::classify::{
    canonical, discrimination_audit, gauge_orbit, signature, triviality, within_tolerance,
};
use onetwo::factor::brute_force_sat;
use onetwo::gadgets::{
    binary_distinct, binary_threshold, nae_clause, range_t, sat_clause, single_clause_instance,
    truth_table_of, two_false, Dictionary,
};
use onetwo::satfront::{decode, encode, parse_dimacs, stats, Cnf, IndexMap};
use onetwo::solver::{solve_one_in_two_with, SolverConfig};
use onetwo::tdm::{decode_3dm, reduce_to_3dm, solve_3dm_bruteforce, validate_3dm};
use onetwo::{
    build_factor_graph, validate_solution, ClauseKind, FactorGraph, GadgetMatrix, OitmInstance,
    TruthTable,
};

/// One-in-Two Matching toolkit: SAT encodings, exact solvers, 3DM
/// reduction and clause gadgets.
#[derive(Parser)]
#[command(name = "onetwo", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Kinds {
    Sat,
    Nae,
}

impl Kinds {
    fn kind(self) -> ClauseKind {
        match self {
            Self::Sat => ClauseKind::Sat,
            Self::Nae => ClauseKind::Nae,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum Expect {
    Sat,
}

#[derive(Subcommand)]
enum Command {
    /// Encode a DIMACS CNF file as a One-in-Two instance.
    Encode {
        /// DIMACS file, `-` for stdin.
        input: PathBuf,
        /// Instance output; the index map goes to `<output>.map`.
        #[arg(short, long)]
        output: Option<PathBuf>,
        /// Clause semantics applied to every clause.
        #[arg(long, value_enum, default_value = "sat")]
        kinds: Kinds,
        /// Explicit path for the index map.
        #[arg(long)]
        map: Option<PathBuf>,
    },
    /// Solve a One-in-Two instance (optimize weighted ones).
    Solve {
        input: PathBuf,
        /// Exit with status 1 unless a solution (within budget) exists.
        #[arg(long, value_enum)]
        expect: Option<Expect>,
        /// Index map used to print the decoded CNF assignment; defaults to
        /// `<input>.map` when that file exists.
        #[arg(long)]
        map: Option<PathBuf>,
        /// Search-node budget of the decision search.
        #[arg(long)]
        node_limit: Option<u64>,
    },
    /// Cross-check encode + solve + decode against exhaustive SAT search.
    Verify {
        /// DIMACS files to check.
        files: Vec<PathBuf>,
        /// Number of random 3-CNF formulas to add.
        #[arg(long, default_value_t = 0)]
        random: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Variables per random formula.
        #[arg(long, default_value_t = 8)]
        vars: usize,
        /// Clauses per random formula.
        #[arg(long, default_value_t = 10)]
        clauses: usize,
        #[arg(long, value_enum, default_value = "sat")]
        kinds: Kinds,
    },
    /// Reduce a One-in-Two instance to 3-dimensional matching.
    Reduce3dm {
        input: PathBuf,
        #[arg(short, long)]
        output: Option<PathBuf>,
        /// Also solve the 3DM instance by exhaustive search (n <= 8).
        #[arg(long)]
        solve: bool,
    },
    /// Build a clause gadget and print its matrix and truth table.
    Gadget {
        #[command(subcommand)]
        family: Family,
        /// Print the stand-alone clause instance instead.
        #[arg(long, global = true)]
        instance: bool,
    },
    /// Gauge class, signature and triviality of a truth table.
    Classify {
        /// Number of literals.
        #[arg(long)]
        k: usize,
        /// Table index n(T).
        #[arg(long, required_unless_present = "audit")]
        table: Option<u64>,
        /// Print the signature discrimination audit for all classes of `k`.
        #[arg(long)]
        audit: bool,
    },
    /// Size accounting of the encoding of a DIMACS file.
    Stats {
        input: PathBuf,
        #[arg(long, value_enum, default_value = "sat")]
        kinds: Kinds,
    },
}

#[derive(Subcommand)]
enum Family {
    /// OR of k literals.
    Sat {
        #[arg(long)]
        k: usize,
    },
    /// Not-all-equal over k literals.
    Nae {
        #[arg(long)]
        k: usize,
    },
    /// False on all-false and on false..false followed by h trues.
    TwoFalse {
        #[arg(long)]
        k: usize,
        #[arg(long)]
        h: usize,
    },
    /// Number of true literals in min..=max.
    Range {
        #[arg(long)]
        k: usize,
        #[arg(long)]
        min: usize,
        #[arg(long)]
        max: usize,
    },
    /// Binary number u1..uk at most q.
    Threshold {
        #[arg(long)]
        k: usize,
        #[arg(long)]
        q: u64,
    },
    /// The two h-bit halves differ.
    Distinct {
        #[arg(long)]
        h: usize,
    },
    /// A matrix for the 4-literal table n(T) from the built-in dictionary.
    Dict {
        #[arg(long)]
        table: u64,
    },
}

fn read_input(path: &Path) -> Result<String> {
    if path.as_os_str() == "-" {
        let mut s = String::new();
        io::stdin()
            .read_to_string(&mut s)
            .context("reading stdin")?;
        return Ok(s);
    }
    fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))
}

fn write_file(path: &Path, text: &str) -> Result<()> {
    fs::write(path, text).with_context(|| format!("writing {}", path.display()))
}

fn load_graph(path: &Path, kinds: Kinds) -> Result<FactorGraph> {
    let cnf =
        parse_dimacs(&read_input(path)?).with_context(|| format!("parsing {}", path.display()))?;
    Ok(build_factor_graph(&cnf)?.with_kind(kinds.kind())?)
}

fn sidecar(path: &Path) -> PathBuf {
    let mut s = path.as_os_str().to_owned();
    s.push(".map");
    PathBuf::from(s)
}

fn dimacs_assignment(a: &[bool]) -> String {
    let mut line = String::from("v");
    for (i, &b) in a.iter().enumerate() {
        let v = i as i64 + 1;
        let _ = write!(line, " {}", if b { v } else { -v });
    }
    line.push_str(" 0");
    line
}

/// Output text and the exit status it implies.
struct Report {
    text: String,
    ok: bool,
}

impl Report {
    fn ok(text: String) -> Self {
        Self { text, ok: true }
    }
}

fn cmd_encode(
    input: &Path,
    output: Option<&Path>,
    kinds: Kinds,
    map: Option<&Path>,
) -> Result<Report> {
    let fg = load_graph(input, kinds)?;
    let (inst, index) = encode(&fg)?;
    let s = stats(&inst, &fg)?;
    let text = format!("{inst}{s}");
    let map_path = map.map(Path::to_path_buf).or_else(|| output.map(sidecar));
    if let Some(p) = &map_path {
        write_file(p, &index.to_string())?;
    }
    match output {
        Some(out) => {
            write_file(out, &text)?;
            let mut msg = format!("wrote {}", out.display());
            if let Some(p) = &map_path {
                let _ = write!(msg, " and {}", p.display());
            }
            Ok(Report::ok(format!("{msg}\n{s}")))
        }
        None => Ok(Report::ok(text)),
    }
}

fn cmd_solve(
    input: &Path,
    expect: Option<Expect>,
    map: Option<&Path>,
    node_limit: Option<u64>,
) -> Result<Report> {
    let inst = OitmInstance::parse(&read_input(input)?)
        .with_context(|| format!("parsing {}", input.display()))?;
    let mut cfg = SolverConfig::default();
    if let Some(n) = node_limit {
        cfg.node_limit = n;
    }
    let out = solve_one_in_two_with(&inst, &cfg)?;
    let map_path = match map {
        Some(p) => Some(p.to_path_buf()),
        None => Some(sidecar(input)).filter(|p| p.is_file()),
    };
    let mut text = String::new();
    match out.solution() {
        None => text.push_str("s UNSAT\n"),
        Some(sol) => {
            text.push_str("s SAT\n");
            text.push_str(&sol.to_string());
            if let (Some(cost), Some(budget)) = (out.cost(), inst.budget()) {
                let verdict = if cost <= budget { "within" } else { "over" };
                let _ = writeln!(text, "cost {cost}\nbudget {budget} ({verdict})");
            }
            if let Some(p) = map_path {
                let index = IndexMap::parse(&read_input(&p)?)
                    .with_context(|| format!("parsing {}", p.display()))?;
                let a = decode(sol, &index)?;
                let _ = writeln!(text, "{}", dimacs_assignment(&a));
            }
        }
    }
    let ok = match expect {
        Some(Expect::Sat) => out.within_budget(&inst),
        None => true,
    };
    Ok(Report { text, ok })
}

fn random_cnf(rng: &mut ChaCha8Rng, n: usize, m: usize) -> Cnf {
    let clauses = (0..m)
        .map(|_| {
            sample(rng, n, 3)
                .into_iter()
                .map(|v| {
                    let v = v as i32 + 1;
                    if rng.gen_bool(0.5) {
                        v
                    } else {
                        -v
                    }
                })
                .collect()
        })
        .collect();
    Cnf::new(n, clauses)
}

/// One verify line: `None` when the checks agree, else the failure.
fn check_formula(fg: &FactorGraph) -> Result<(bool, Option<String>)> {
    let oracle = brute_force_sat(fg)?.is_some();
    let (inst, map) = encode(fg)?;
    let out = solve_one_in_two_with(&inst, &SolverConfig::default())?;
    if out.is_sat() != oracle {
        return Ok((
            oracle,
            Some(format!(
                "solver says {}, oracle says {}",
                verdict(out.is_sat()),
                verdict(oracle)
            )),
        ));
    }
    if let Some(sol) = out.solution() {
        if !validate_solution(&inst, sol)?.valid {
            return Ok((oracle, Some("solution does not validate".into())));
        }
        match decode(sol, &map) {
            Ok(a) if fg.is_satisfied_by(&a) => {}
            Ok(_) => return Ok((oracle, Some("decoded assignment violates a clause".into()))),
            Err(e) => return Ok((oracle, Some(format!("decode failed: {e}")))),
        }
    }
    Ok((oracle, None))
}

fn verdict(sat: bool) -> &'static str {
    if sat {
        "SAT"
    } else {
        "UNSAT"
    }
}

fn cmd_verify(
    files: &[PathBuf],
    random: usize,
    seed: u64,
    vars: usize,
    clauses: usize,
    kinds: Kinds,
) -> Result<Report> {
    if files.is_empty() && random == 0 {
        bail!("nothing to verify: give DIMACS files or --random N");
    }
    if random > 0 && vars < 3 {
        bail!("--vars must be at least 3 for random 3-CNF");
    }
    let mut cases: Vec<(String, FactorGraph)> = Vec::new();
    for f in files {
        cases.push((f.display().to_string(), load_graph(f, kinds)?));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for i in 0..random {
        let cnf = random_cnf(&mut rng, vars, clauses);
        let fg = build_factor_graph(&cnf)?.with_kind(kinds.kind())?;
        cases.push((format!("random {} (seed {seed})", i + 1), fg));
    }
    let mut text = String::new();
    let mut failures = 0;
    for (name, fg) in &cases {
        let (oracle, problem) = check_formula(fg)?;
        match problem {
            None => {
                let _ = writeln!(text, "[PASS] {name}: {}", verdict(oracle));
            }
            Some(p) => {
                failures += 1;
                let _ = writeln!(text, "[FAIL] {name}: {p}");
            }
        }
    }
    let _ = writeln!(
        text,
        "verify: {} of {} passed",
        cases.len() - failures,
        cases.len()
    );
    Ok(Report {
        text,
        ok: failures == 0,
    })
}

fn cmd_reduce3dm(input: &Path, output: Option<&Path>, solve: bool) -> Result<Report> {
    let inst = OitmInstance::parse(&read_input(input)?)
        .with_context(|| format!("parsing {}", input.display()))?;
    let (tdm, ctx) = reduce_to_3dm(&inst);
    let mut text = format!("{tdm}# triples {}\n# n {}\n", tdm.len(), tdm.n());
    if let Some(out) = output {
        write_file(out, &text)?;
        text = format!("wrote {}\n# triples {}\n", out.display(), tdm.len());
    }
    if solve {
        match solve_3dm_bruteforce(&tdm)? {
            None => text.push_str("s UNSAT\n"),
            Some(sol) => {
                text.push_str("s SAT\n");
                text.push_str(&sol.to_string());
                if let Some(cost) = validate_3dm(&tdm, &sol).cost {
                    let _ = writeln!(text, "cost {cost}");
                }
                text.push_str(&decode_3dm(&sol, &ctx)?.to_string());
            }
        }
    }
    Ok(Report::ok(text))
}

fn describe_gadget(g: &GadgetMatrix, title: &str) -> Result<String> {
    let t = truth_table_of(g)?;
    let bytes: Vec<String> = g.row_bytes().iter().map(u64::to_string).collect();
    let mut text = format!("# {title}\n");
    let _ = writeln!(text, "k {}\nones {}", g.arity(), g.ones());
    text.push_str(&g.to_string());
    let _ = writeln!(text, "rows {}", bytes.join(" "));
    match t.index_u64() {
        Some(n) => {
            let _ = writeln!(text, "|T| {}\nn(T) {n}", t.len());
        }
        None => {
            let _ = writeln!(text, "|T| {}\nn(T) {}", t.len(), t.index());
        }
    }
    text.push_str(&t.to_string());
    Ok(text)
}

fn cmd_gadget(family: &Family, instance: bool) -> Result<Report> {
    let (g, title) = match *family {
        Family::Sat { k } => (sat_clause(k)?, format!("sat k={k}")),
        Family::Nae { k } => (nae_clause(k)?, format!("nae k={k}")),
        Family::TwoFalse { k, h } => (two_false(k, h)?, format!("two-false k={k} h={h}")),
        Family::Range { k, min, max } => {
            (range_t(k, min, max)?, format!("range k={k} {min}..={max}"))
        }
        Family::Threshold { k, q } => (binary_threshold(k, q)?, format!("threshold k={k} q={q}")),
        Family::Distinct { h } => (binary_distinct(h)?, format!("distinct h={h}")),
        Family::Dict { table } => {
            let t = TruthTable::from_index_u64(4, table)?;
            let m = Dictionary::builtin()
                .realize(&t)?
                .with_context(|| format!("no dictionary entry covers the class of {table}"))?;
            (m, format!("dictionary n(T)={table}"))
        }
    };
    if instance {
        return Ok(Report::ok(single_clause_instance(&g).to_string()));
    }
    Ok(Report::ok(describe_gadget(&g, &title)?))
}

fn cmd_classify(k: usize, table: Option<u64>, audit: bool) -> Result<Report> {
    let mut text = String::new();
    if let Some(n) = table {
        let t = TruthTable::from_index_u64(k, n)?;
        let canon = canonical(&t)?;
        let orbit = gauge_orbit(&t)?.len();
        let _ = writeln!(text, "k {k}\nn(T) {n}\n|T| {}", t.len());
        let _ = writeln!(text, "canonical {}\norbit {orbit}", canon.index());
        match signature(&t) {
            Ok(s) => {
                let _ = writeln!(text, "signature {s}");
            }
            Err(e) => {
                let _ = writeln!(text, "signature unavailable ({e})");
            }
        }
        match triviality(&t) {
            Some(r) => {
                let _ = writeln!(text, "trivial {r}");
            }
            None => text.push_str("trivial no\n"),
        }
        if k == 4 {
            let dict = Dictionary::builtin();
            match dict.lookup(&t) {
                Some(e) => {
                    let printed = &e.signature;
                    let agrees = signature(&t).is_ok_and(|s| within_tolerance(&s, printed));
                    let _ = writeln!(
                        text,
                        "dictionary {} ones {} printed signature {printed} ({})",
                        e.table_index,
                        e.ones,
                        if agrees { "agrees" } else { "differs" }
                    );
                }
                None => text.push_str("dictionary none\n"),
            }
        }
    }
    if audit {
        text.push_str(&discrimination_audit(k)?.to_string());
    }
    Ok(Report::ok(text))
}

fn cmd_stats(input: &Path, kinds: Kinds) -> Result<Report> {
    let fg = load_graph(input, kinds)?;
    let (inst, _) = encode(&fg)?;
    let s = stats(&inst, &fg)?;
    let verdict = if s.matches_prediction() && s.quadrant_pure {
        "yes"
    } else {
        "no"
    };
    Ok(Report::ok(format!("{s}# matches {verdict}\n")))
}

fn run(cli: &Cli) -> Result<Report> {
    match &cli.command {
        Command::Encode {
            input,
            output,
            kinds,
            map,
        } => cmd_encode(input, output.as_deref(), *kinds, map.as_deref()),
        Command::Solve {
            input,
            expect,
            map,
            node_limit,
        } => cmd_solve(input, *expect, map.as_deref(), *node_limit),
        Command::Verify {
            files,
            random,
            seed,
            vars,
            clauses,
            kinds,
        } => cmd_verify(files, *random, *seed, *vars, *clauses, *kinds),
        Command::Reduce3dm {
            input,
            output,
            solve,
        } => cmd_reduce3dm(input, output.as_deref(), *solve),
        Command::Gadget { family, instance } => cmd_gadget(family, *instance),
        Command::Classify { k, table, audit } => cmd_classify(*k, *table, *audit),
        Command::Stats { input, kinds } => cmd_stats(input, *kinds),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(report) => {
            let mut out = io::stdout().lock();
            if out
                .write_all(report.text.as_bytes())
                .and_then(|_| out.flush())
                .is_err()
            {
                return ExitCode::from(2);
            }
            if report.ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
