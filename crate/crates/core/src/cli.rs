//! Command-line front end.
//!
//! Exit codes: 0 for success (feasible, found, check passed), 1 for a
//! negative outcome (infeasible, exhausted, budget exceeded, unclassified,
//! failed check), 2 for usage or input errors. With `--json`, standard
//! output carries exactly one JSON document and nothing else.

use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use serde::Serialize;
use serde_json::json;

use crate::enumerate::random_square;
use crate::error::Error;
use crate::feasibility::{decide_k_weight, weight_spectrum, WeightDecision};
use crate::group::{group_sum_identity, lemma22_check, AbelianGroup};
use crate::io::{read_square, read_weight};
use crate::latin::{classify, LatinSquare, PartialWeightClass, WeightMatrix};
use crate::pattern::step_type;
use crate::plex::{
    count_near_transversals, count_transversals, find_k_plex, find_near_transversal,
    near_transversals, parity_report, NearOutcome, PlexOutcome, SearchBudget,
    MAX_NEAR_COUNT_ORDER,
};
use crate::survey::survey_no_odd_weight;
use crate::weights::{is_maximal_near_one_weight, two_weight, uniform_weight};

#[derive(Debug, Parser)]
#[command(name = "kweights", version, about = "k-weights and k-plexes of latin squares")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Generate a square in `.ls` format.
    #[command(subcommand)]
    Gen(GenCommand),
    /// Construct, verify or decide k-weights.
    #[command(subcommand)]
    Weight(WeightCommand),
    /// Search for k-plexes.
    #[command(subcommand)]
    Plex(PlexCommand),
    /// Count transversals and near transversals.
    #[command(subcommand)]
    Transversal(TransversalCommand),
    /// Transversal and near-transversal counts with residues.
    Parity {
        file: PathBuf,
        #[arg(long)]
        json: bool,
    },
    /// Mechanical checks of the group identities and dichotomies.
    #[command(subcommand)]
    Verify(VerifyCommand),
    /// Exhaustive surveys at small orders.
    #[command(subcommand)]
    Survey(SurveyCommand),
}

#[derive(Debug, Args)]
struct OutputArg {
    /// Write to this file instead of standard output.
    #[arg(short, long)]
    output: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
enum GenCommand {
    /// Cayley table of Z_N.
    Cyclic {
        n: usize,
        #[command(flatten)]
        out: OutputArg,
    },
    /// Cayley table of a group given as `cyclic:N` or `sum:M1,M2,...`.
    Group {
        spec: String,
        #[command(flatten)]
        out: OutputArg,
    },
    /// q-step square over a base square (a file or a group spec).
    Step {
        #[arg(long)]
        base: String,
        #[arg(long)]
        q: usize,
        #[command(flatten)]
        out: OutputArg,
    },
    /// Seeded (non-uniform) random square.
    Random {
        n: usize,
        #[arg(long)]
        seed: u64,
        #[command(flatten)]
        out: OutputArg,
    },
}

#[derive(Debug, Subcommand)]
enum WeightCommand {
    /// Build a 1-weight (odd order), a 2-weight, or the uniform n-weight.
    Construct {
        file: PathBuf,
        /// `1`, `2`, `n`, or the order itself.
        #[arg(long)]
        k: String,
        /// Anchor cell `r,c` for the 2-weight and the odd-order 1-weight.
        #[arg(long)]
        anchor: Option<String>,
        #[command(flatten)]
        out: OutputArg,
    },
    /// Classify a weight file against a square.
    Verify {
        file: PathBuf,
        weight: PathBuf,
        #[arg(long, allow_hyphen_values = true)]
        k: i64,
        #[arg(long)]
        json: bool,
    },
    /// Decide k-weight existence exactly.
    Decide {
        file: PathBuf,
        #[arg(long, allow_hyphen_values = true)]
        k: i64,
        #[arg(long)]
        json: bool,
    },
    /// Print `all` or `even`.
    Spectrum {
        file: PathBuf,
        #[arg(long)]
        json: bool,
    },
}

#[derive(Debug, Subcommand)]
enum PlexCommand {
    Find {
        file: PathBuf,
        #[arg(long)]
        k: i64,
        #[arg(long)]
        max_nodes: Option<u64>,
        #[arg(long)]
        json: bool,
    },
}

#[derive(Debug, Subcommand)]
enum TransversalCommand {
    Count {
        file: PathBuf,
        #[arg(long)]
        json: bool,
    },
    Near {
        file: PathBuf,
        #[arg(long)]
        maximal: bool,
        #[arg(long)]
        json: bool,
    },
}

#[derive(Debug, Subcommand)]
enum VerifyCommand {
    /// Compare k(s - r - c) with its predicted value for a partial k-weight.
    Lemma22 {
        #[arg(long)]
        group: String,
        weight: PathBuf,
        #[arg(long, allow_hyphen_values = true)]
        k: i64,
        #[arg(long)]
        json: bool,
    },
    /// Check the transversal / maximal near transversal dichotomy.
    Dichotomy {
        #[arg(long)]
        group: String,
        #[arg(long)]
        json: bool,
    },
    /// Evaluate the weighted group sum identity.
    Identity {
        #[arg(long)]
        group: String,
        weight: PathBuf,
        #[arg(long)]
        json: bool,
    },
}

#[derive(Debug, Subcommand)]
enum SurveyCommand {
    NoOddWeight {
        #[arg(long)]
        order: usize,
        #[arg(long)]
        json: bool,
    },
}

/// Result of one invocation: exit code plus the text for each stream.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct CommandOutcome {
    pub exit_code: i32,
    pub stdout: String,
    pub stderr: String,
}

impl CommandOutcome {
    fn ok(stdout: String) -> Self {
        CommandOutcome {
            exit_code: 0,
            stdout,
            stderr: String::new(),
        }
    }

    fn with_code(exit_code: i32, stdout: String) -> Self {
        CommandOutcome {
            exit_code,
            stdout,
            stderr: String::new(),
        }
    }

    fn input_error(message: impl std::fmt::Display) -> Self {
        CommandOutcome {
            exit_code: 2,
            stdout: String::new(),
            stderr: format!("error: {message}\n"),
        }
    }
}

impl From<Error> for CommandOutcome {
    fn from(e: Error) -> Self {
        CommandOutcome::input_error(e)
    }
}

type CmdResult = std::result::Result<CommandOutcome, CommandOutcome>;

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I) -> CommandOutcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            return if code == 0 {
                CommandOutcome::ok(text)
            } else {
                CommandOutcome {
                    exit_code: 2,
                    stdout: String::new(),
                    stderr: text,
                }
            };
        }
    };
    dispatch(cli.command).unwrap_or_else(|e| e)
}

fn dispatch(command: Command) -> CmdResult {
    match command {
        Command::Gen(cmd) => gen(cmd),
        Command::Weight(cmd) => weight(cmd),
        Command::Plex(PlexCommand::Find {
            file,
            k,
            max_nodes,
            json,
        }) => plex_find(&file, k, max_nodes, json),
        Command::Transversal(TransversalCommand::Count { file, json }) => transversal_count(&file, json),
        Command::Transversal(TransversalCommand::Near { file, maximal, json }) => {
            transversal_near(&file, maximal, json)
        }
        Command::Parity { file, json } => parity(&file, json),
        Command::Verify(cmd) => verify(cmd),
        Command::Survey(SurveyCommand::NoOddWeight { order, json }) => survey(order, json),
    }
}

fn emit(out: &OutputArg, text: String) -> CmdResult {
    match &out.output {
        Some(path) => {
            std::fs::write(path, text)
                .map_err(|e| CommandOutcome::input_error(format!("{}: {e}", path.display())))?;
            Ok(CommandOutcome::ok(String::new()))
        }
        None => Ok(CommandOutcome::ok(text)),
    }
}

fn to_json(value: &impl Serialize) -> String {
    let mut s = serde_json::to_string(value).expect("serializable");
    s.push('\n');
    s
}

fn group_spec(spec: &str) -> std::result::Result<AbelianGroup, CommandOutcome> {
    spec.parse::<AbelianGroup>().map_err(CommandOutcome::from)
}

fn square_file(path: &Path) -> std::result::Result<LatinSquare, CommandOutcome> {
    read_square(path).map_err(|e| CommandOutcome::input_error(format!("{}: {e}", path.display())))
}

fn weight_file(path: &Path) -> std::result::Result<WeightMatrix, CommandOutcome> {
    read_weight(path).map_err(|e| CommandOutcome::input_error(format!("{}: {e}", path.display())))
}

fn gen(cmd: GenCommand) -> CmdResult {
    match cmd {
        GenCommand::Cyclic { n, out } => {
            let g = AbelianGroup::cyclic(n)?;
            emit(&out, g.cayley_table().to_string())
        }
        GenCommand::Group { spec, out } => emit(&out, group_spec(&spec)?.cayley_table().to_string()),
        GenCommand::Step { base, q, out } => {
            let base_square = if base.contains(':') && !Path::new(&base).exists() {
                group_spec(&base)?.cayley_table()
            } else {
                square_file(Path::new(&base))?
            };
            let (square, _) = step_type(&base_square, q)?;
            emit(&out, square.to_string())
        }
        GenCommand::Random { n, seed, out } => emit(&out, random_square(n, seed)?.to_string()),
    }
}

fn parse_anchor(text: &str, square: &LatinSquare) -> std::result::Result<crate::latin::CellTriple, CommandOutcome> {
    let bad = || CommandOutcome::input_error(format!("anchor must be `r,c` inside the square, got {text:?}"));
    let (r, c) = text.split_once(',').ok_or_else(bad)?;
    let r: usize = r.trim().parse().map_err(|_| bad())?;
    let c: usize = c.trim().parse().map_err(|_| bad())?;
    if r >= square.order() || c >= square.order() {
        return Err(bad());
    }
    Ok(square.triple(r, c))
}

fn describe(class: &PartialWeightClass) -> String {
    match class {
        PartialWeightClass::Exact { k } => format!("exact {k}-weight"),
        PartialWeightClass::Partial {
            k,
            length,
            missing_rows,
            missing_cols,
            missing_symbols,
        } => format!(
            "partial {k}-weight of length {length}; missing rows {missing_rows:?} columns {missing_cols:?} symbols {missing_symbols:?}"
        ),
        PartialWeightClass::Unclassified => "unclassified".to_string(),
    }
}

fn weight(cmd: WeightCommand) -> CmdResult {
    match cmd {
        WeightCommand::Construct { file, k, anchor, out } => {
            let square = square_file(&file)?;
            let n = square.order();
            let anchor = match anchor {
                Some(a) => parse_anchor(&a, &square)?,
                None => square.triple(0, 0),
            };
            let k = if k == "n" {
                n as i64
            } else {
                k.parse::<i64>()
                    .map_err(|_| CommandOutcome::input_error(format!("--k must be 1, 2 or n, got {k:?}")))?
            };
            let w = match k {
                1 => crate::weights::one_weight_odd_at(&square, anchor)?,
                2 => two_weight(&square, anchor)?,
                k if k == n as i64 => uniform_weight(&square),
                _ => {
                    return Err(CommandOutcome::input_error(format!(
                        "no construction for k = {k}; use `weight decide`"
                    )))
                }
            };
            emit(&out, w.to_string())
        }
        WeightCommand::Verify { file, weight, k, json } => {
            let square = square_file(&file)?;
            let w = weight_file(&weight)?;
            let class = classify(&square, &w, k)?;
            let code = i32::from(class == PartialWeightClass::Unclassified);
            let text = if json {
                to_json(&class)
            } else {
                format!("{}\n", describe(&class))
            };
            Ok(CommandOutcome::with_code(code, text))
        }
        WeightCommand::Decide { file, k, json } => {
            let square = square_file(&file)?;
            let decision = decide_k_weight(&square, k)?;
            let feasible = decision.is_feasible();
            let text = match (&decision, json) {
                (WeightDecision::Feasible(w), true) => {
                    to_json(&json!({"feasible": true, "k": k, "witness": w.to_rows()}))
                }
                (WeightDecision::Infeasible(c), true) => {
                    to_json(&json!({"feasible": false, "k": k, "certificate": c.to_strings()}))
                }
                (WeightDecision::Feasible(w), false) => format!("feasible: {k}-weight\n{w}"),
                (WeightDecision::Infeasible(c), false) => format!(
                    "infeasible: no {k}-weight\ncertificate: {}\n",
                    c.to_strings().join(" ")
                ),
            };
            Ok(CommandOutcome::with_code(i32::from(!feasible), text))
        }
        WeightCommand::Spectrum { file, json } => {
            let spectrum = weight_spectrum(&square_file(&file)?)?;
            let text = if json {
                to_json(&json!({"spectrum": spectrum.label()}))
            } else {
                format!("{}\n", spectrum.label())
            };
            Ok(CommandOutcome::ok(text))
        }
    }
}

fn zero_one_rows(n: usize, cells: &[(usize, usize)]) -> Vec<Vec<i64>> {
    WeightMatrix::indicator(n, cells).to_rows()
}

fn plex_find(file: &Path, k: i64, max_nodes: Option<u64>, json: bool) -> CmdResult {
    let square = square_file(file)?;
    let budget = max_nodes.map_or_else(SearchBudget::default, |max_nodes| SearchBudget { max_nodes });
    let outcome = find_k_plex(&square, k, budget)?;
    let (label, code, witness) = match &outcome {
        PlexOutcome::Found(sel) => ("found", 0, Some(zero_one_rows(square.order(), &sel.cells()))),
        PlexOutcome::Exhausted => ("exhausted", 1, None),
        PlexOutcome::BudgetExceeded => ("budget", 1, None),
    };
    let text = if json {
        let mut v = json!({"outcome": label});
        if let Some(w) = &witness {
            v["witness"] = json!(w);
        }
        to_json(&v)
    } else {
        let mut s = format!("{label}\n");
        if let PlexOutcome::Found(sel) = &outcome {
            s.push_str(&sel.to_weight().to_string());
        }
        s
    };
    Ok(CommandOutcome::with_code(code, text))
}

fn transversal_count(file: &Path, json: bool) -> CmdResult {
    let count = count_transversals(&square_file(file)?)?;
    let label = if count > 0 { "found" } else { "exhausted" };
    let text = if json {
        to_json(&json!({"outcome": label, "count": count}))
    } else {
        format!("{count}\n")
    };
    Ok(CommandOutcome::with_code(i32::from(count == 0), text))
}

fn transversal_near(file: &Path, maximal: bool, json: bool) -> CmdResult {
    let square = square_file(file)?;
    let n = square.order();
    if n > MAX_NEAR_COUNT_ORDER {
        return Err(Error::OrderTooLarge {
            order: n,
            cap: MAX_NEAR_COUNT_ORDER,
        }
        .into());
    }
    let count = count_near_transversals(&square, maximal)?;
    let witness = if maximal {
        near_transversals(&square)?
            .into_iter()
            .find(|t| t.is_maximal(&square))
    } else {
        match find_near_transversal(&square) {
            NearOutcome::Found(t) => Some(t),
            NearOutcome::Exhausted => None,
        }
    };
    let label = if count > 0 { "found" } else { "exhausted" };
    let text = if json {
        let mut v = json!({"outcome": label, "count": count});
        if let Some(t) = &witness {
            v["witness"] = json!(zero_one_rows(n, &t.cells));
        }
        to_json(&v)
    } else {
        let mut s = format!("{count}\n");
        if let Some(t) = &witness {
            s.push_str(&t.to_weight(n).to_string());
        }
        s
    };
    Ok(CommandOutcome::with_code(i32::from(count == 0), text))
}

fn parity(file: &Path, json: bool) -> CmdResult {
    let report = parity_report(&square_file(file)?)?;
    let text = if json {
        to_json(&report)
    } else {
        format!(
            "transversals {} (mod 2 = {})\nnear transversals {} (mod 4 = {})\n",
            report.transversal_count,
            report.transversal_count_mod2,
            report.near_transversal_count,
            report.near_transversal_count_mod4
        )
    };
    Ok(CommandOutcome::ok(text))
}

/// Facts behind the 1-weight / maximal near 1-weight dichotomy for a group.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DichotomyReport {
    pub group: String,
    pub transversals: u64,
    pub maximal_near_transversals: u64,
    pub one_weight_exists: bool,
    pub unique_involution: bool,
    /// Maximality of the enumerated near transversals, when it is the same for all.
    pub near_maximality: Option<bool>,
    pub holds: bool,
}

pub fn dichotomy_report(group: &AbelianGroup) -> crate::error::Result<DichotomyReport> {
    let table = group.cayley_table();
    let transversals = count_transversals(&table)?;
    let maximal = count_near_transversals(&table, true)?;
    let one_weight_exists = decide_k_weight(&table, 1)?.is_feasible();
    let involution = group.unique_involution().is_some();
    let mut flags = near_transversals(&table)?
        .iter()
        .map(|t| is_maximal_near_one_weight(group, &t.to_weight(table.order())))
        .collect::<crate::error::Result<Vec<bool>>>()?;
    flags.dedup();
    let near_maximality = match flags[..] {
        [single] => Some(single),
        _ => None,
    };
    let holds = (transversals > 0) != (maximal > 0)
        && one_weight_exists != (maximal > 0)
        && near_maximality == Some(involution);
    Ok(DichotomyReport {
        group: group.to_string(),
        transversals,
        maximal_near_transversals: maximal,
        one_weight_exists,
        unique_involution: involution,
        near_maximality,
        holds,
    })
}

fn verify(cmd: VerifyCommand) -> CmdResult {
    match cmd {
        VerifyCommand::Lemma22 { group, weight, k, json } => {
            let g = group_spec(&group)?;
            let w = weight_file(&weight)?;
            let report = lemma22_check(&g, &w, k)?;
            let text = if json {
                to_json(&report)
            } else {
                format!(
                    "delta={} expected={} {}\n",
                    report.delta,
                    report.expected,
                    if report.matches { "match" } else { "MISMATCH" }
                )
            };
            Ok(CommandOutcome::with_code(i32::from(!report.matches), text))
        }
        VerifyCommand::Dichotomy { group, json } => {
            let g = group_spec(&group)?;
            let report = dichotomy_report(&g)?;
            let text = if json {
                to_json(&report)
            } else {
                let summary = if report.transversals > 0 {
                    "transversal exists; no maximal near 1-weight"
                } else {
                    "no transversal; maximal near 1-weight exists"
                };
                let status = if report.holds { "" } else { "\nDICHOTOMY FAILED" };
                format!(
                    "{summary}\ntransversals {} maximal near transversals {} 1-weight {} unique involution {}{status}\n",
                    report.transversals,
                    report.maximal_near_transversals,
                    report.one_weight_exists,
                    report.unique_involution
                )
            };
            Ok(CommandOutcome::with_code(i32::from(!report.holds), text))
        }
        VerifyCommand::Identity { group, weight, json } => {
            let g = group_spec(&group)?;
            let w = weight_file(&weight)?;
            let value = group_sum_identity(&g, &w)?;
            let is_identity = value == g.identity();
            let text = if json {
                to_json(&json!({"value": value, "identity": is_identity}))
            } else {
                format!("{value}\n")
            };
            Ok(CommandOutcome::with_code(i32::from(!is_identity), text))
        }
    }
}

fn survey(order: usize, json: bool) -> CmdResult {
    let report = survey_no_odd_weight(order)?;
    if json {
        return Ok(CommandOutcome::ok(to_json(&report)));
    }
    let mut text = format!(
        "order {}: {} squares, {} with all weights, {} with only even weights\n",
        report.order, report.total_squares, report.all_integers, report.evens_only
    );
    for c in &report.classes {
        text.push_str(&format!(
            "{} ({}-block): {} isotopic, {} of them evens-only{}\n",
            c.label,
            if c.odd_block { "odd" } else { "even" },
            c.isotopic_total,
            c.isotopic_evens_only,
            if c.matches_evens_only {
                "; equals the evens-only set"
            } else {
                ""
            }
        ));
    }
    let aligned = report
        .evens_only_squares
        .iter()
        .filter(|s| s.aligned.iter().any(|a| a.detected))
        .count();
    text.push_str(&format!(
        "evens-only squares with an aligned Z_2m block pattern: {aligned}/{}\n",
        report.evens_only
    ));
    Ok(CommandOutcome::ok(text))
}
