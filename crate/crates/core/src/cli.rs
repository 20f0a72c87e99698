//! Command-line front end.
//!
//! Exit codes: 0 when the queried property holds, 1 when it fails (a
//! certificate is printed), 2 on input or usage errors.

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::json;

use crate::error::Error;
use crate::extensions::{greatest_extension, sample_extensions, witness_from_report};
use crate::graph::WeightedGraph;
use crate::io::{parse_graph, Format};
use crate::metrizability::{check_cycle_condition, classify};
use crate::report::{
    analyze, parse_pair, to_json_string, CycleJson, DefectJson, DistancesJson, MetrizabilityJson, UniquenessJson,
    WitnessJson,
};
use crate::shortest_path::DistanceMatrix;
use crate::uniqueness::{DefectAnalyzer, Mode};

pub const EXIT_HOLDS: i32 = 0;
pub const EXIT_FAILS: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Debug, Parser)]
#[command(
    name = "metric-continuation",
    version,
    about = "Continuation of edge weights to metrics"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Decide whether the weight is (pseudo)metrizable.
    Check(Common),
    /// Print the greatest extension, the shortest-path pseudometric.
    Extend(Common),
    /// Decide whether the continuation is unique.
    Unique(Common),
    /// Build a second extension at `--pair`, or sample several without it.
    Witness(Common),
    /// Run everything and print the full report.
    Analyze(Common),
}

#[derive(Debug, Args)]
struct Common {
    /// Graph document (`.json`, otherwise an edge list).
    file: PathBuf,
    #[arg(long, value_enum)]
    format: Option<FormatArg>,
    #[arg(long, value_enum, default_value = "metric")]
    mode: ModeArg,
    /// Emit JSON instead of a human-readable table.
    #[arg(long)]
    json: bool,
    /// Vertex pair `u,v` for `witness`.
    #[arg(long)]
    pair: Option<String>,
    /// Enumeration cap; with `check`, also runs the cycle-enumeration oracle.
    #[arg(long)]
    cap: Option<usize>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Number of extensions sampled by `witness` without `--pair`.
    #[arg(long, default_value_t = 4)]
    count: usize,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum FormatArg {
    Json,
    Edges,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum ModeArg {
    Metric,
    Pseudometric,
}

impl From<ModeArg> for Mode {
    fn from(m: ModeArg) -> Mode {
        match m {
            ModeArg::Metric => Mode::Metric,
            ModeArg::Pseudometric => Mode::Pseudometric,
        }
    }
}

/// Output of one invocation, before rendering.
struct Outcome {
    code: i32,
    json: serde_json::Value,
    text: String,
}

/// Parses `args` (including the program name), runs the command and writes
/// its output. Returns the exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_HOLDS };
            let target: &mut dyn Write = if e.use_stderr() { err } else { out };
            let _ = write!(target, "{}", e.render());
            return code;
        }
    };
    let (name, common) = match &cli.command {
        Command::Check(c) => ("check", c),
        Command::Extend(c) => ("extend", c),
        Command::Unique(c) => ("unique", c),
        Command::Witness(c) => ("witness", c),
        Command::Analyze(c) => ("analyze", c),
    };
    let graph = match load(common) {
        Ok(g) => g,
        Err(message) => {
            let _ = writeln!(err, "error: {message}");
            return EXIT_USAGE;
        }
    };
    let result = match cli.command {
        Command::Check(_) => check(&graph, common),
        Command::Extend(_) => extend(&graph),
        Command::Unique(_) => unique(&graph, common),
        Command::Witness(_) => witness(&graph, common),
        Command::Analyze(_) => analyze_cmd(&graph, common),
    };
    match result {
        Ok(outcome) => {
            let rendered = if common.json {
                format!("{}\n", to_json_string(&outcome.json))
            } else {
                outcome.text
            };
            let _ = out.write_all(rendered.as_bytes());
            outcome.code
        }
        Err(e) => {
            let _ = writeln!(err, "error: {name}: {e}");
            EXIT_USAGE
        }
    }
}

fn load(common: &Common) -> Result<WeightedGraph, String> {
    let bytes = std::fs::read(&common.file).map_err(|e| format!("{}: {e}", common.file.display()))?;
    let format = match common.format {
        Some(FormatArg::Json) => Format::Json,
        Some(FormatArg::Edges) => Format::EdgeList,
        None => Format::from_path(&common.file),
    };
    parse_graph(&bytes, format).map_err(|e| format!("{}: {e}", common.file.display()))
}

fn value<T: Serialize>(v: &T) -> serde_json::Value {
    serde_json::to_value(v).expect("reports serialize")
}

fn pair_text(p: &[String; 2]) -> String {
    format!("({}, {})", p[0], p[1])
}

fn check(g: &WeightedGraph, common: &Common) -> Result<Outcome, Error> {
    let verdict = classify(g)?;
    let report = MetrizabilityJson::new(g, &verdict)?;
    let holds = match Mode::from(common.mode) {
        Mode::Metric => verdict.metrizable,
        Mode::Pseudometric => verdict.pseudometrizable,
    };
    let mut text = format!(
        "pseudometrizable: {}\nmetrizable: {}\n",
        verdict.pseudometrizable, verdict.metrizable
    );
    if let Some(e) = &report.violating_edge {
        text += &format!(
            "violating edge: {{{}, {}}} weight {} > distance {}\n",
            e.a, e.b, e.weight.exact, e.distance.exact
        );
    }
    if let Some(c) = &report.shortcut_cycle {
        text += &cycle_line("violating cycle", c);
    }
    if let Some(p) = &report.zero_distance_pair {
        text += &format!("zero distance pair: {}\n", pair_text(p));
    }
    let mut json = json!({ "metrizability": value(&report) });
    if let Some(cap) = common.cap {
        let oracle = check_cycle_condition(g, cap)?;
        let cycle = oracle.as_ref().map(|c| CycleJson::new(g, c));
        text += &format!(
            "cycle oracle agrees: {}\n",
            oracle.is_none() == verdict.pseudometrizable
        );
        json["cycle_oracle"] = json!({ "holds": oracle.is_none(), "violating_cycle": value(&cycle) });
    }
    Ok(Outcome {
        code: if holds { EXIT_HOLDS } else { EXIT_FAILS },
        json,
        text,
    })
}

fn cycle_line(title: &str, c: &CycleJson) -> String {
    format!(
        "{title}: {} (2 * {} > {})\n",
        c.vertices.join("-"),
        c.max_edge_weight.exact,
        c.total_weight.exact
    )
}

fn not_admissible(e: &Error) -> bool {
    matches!(e, Error::NotMetrizable(_) | Error::NotPseudometrizable(_))
}

fn refusal(e: Error) -> Outcome {
    Outcome {
        code: EXIT_FAILS,
        json: json!({ "error": e.to_string() }),
        text: format!("{e}\n"),
    }
}

fn extend(g: &WeightedGraph) -> Result<Outcome, Error> {
    match greatest_extension(g) {
        Ok(d) => Ok(Outcome {
            code: EXIT_HOLDS,
            json: json!({ "distances": value(&DistancesJson::from(&d)) }),
            text: matrix_table(&d),
        }),
        Err(e @ Error::NotPseudometrizable(_)) => Ok(refusal(e)),
        Err(e) => Err(e),
    }
}

fn unique(g: &WeightedGraph, common: &Common) -> Result<Outcome, Error> {
    let analyzer = match DefectAnalyzer::new(g, common.mode.into()) {
        Ok(a) => a,
        Err(e) if not_admissible(&e) => return Ok(refusal(e)),
        Err(e) => return Err(e),
    };
    let verdict = analyzer.decide();
    let report = UniquenessJson::new(g, &verdict);
    let mut text = format!("unique: {}\nmode: {}\n", verdict.unique, mode_name(verdict.mode));
    for r in &report.slack_pairs {
        text += &defect_line("slack pair", r);
    }
    if verdict.mode == Mode::Pseudometric {
        let zeros: Vec<String> = report.zero_distance_pairs.iter().map(pair_text).collect();
        text += &format!(
            "zero distance pairs: {}\n",
            if zeros.is_empty() {
                "none".into()
            } else {
                zeros.join(" ")
            }
        );
    }
    Ok(Outcome {
        code: if verdict.unique { EXIT_HOLDS } else { EXIT_FAILS },
        json: json!({ "uniqueness": value(&report) }),
        text,
    })
}

fn defect_line(title: &str, r: &DefectJson) -> String {
    format!(
        "{title}: {} d={} Q={} slack={} ({}) via {}\n",
        pair_text(&r.pair),
        r.d_value.exact,
        r.q_sup.exact,
        r.slack.exact,
        r.slack.approx,
        r.argmax_path.join("-")
    )
}

fn witness(g: &WeightedGraph, common: &Common) -> Result<Outcome, Error> {
    let mode = Mode::from(common.mode);
    let Some(pair) = &common.pair else {
        let samples = match sample_extensions(g, common.count, common.seed) {
            Ok(s) => s,
            Err(e) if not_admissible(&e) => return Ok(refusal(e)),
            Err(e) => return Err(e),
        };
        let mut text = String::new();
        let mut items = Vec::new();
        for s in &samples {
            let lowered = s
                .lowered_pair
                .map(|(a, b)| [g.label(a).to_string(), g.label(b).to_string()]);
            text += &match &lowered {
                Some(p) => format!("extension lowered at {}\n", pair_text(p)),
                None => "greatest extension\n".to_string(),
            };
            text += &matrix_table(&s.distances);
            items.push(json!({ "lowered_pair": lowered, "distances": value(&DistancesJson::from(&s.distances)) }));
        }
        return Ok(Outcome {
            code: if samples.len() > 1 { EXIT_HOLDS } else { EXIT_FAILS },
            json: json!({ "samples": items }),
            text,
        });
    };
    let (u, v) = parse_pair(g, pair)?;
    let analyzer = match DefectAnalyzer::new(g, mode) {
        Ok(a) => a,
        Err(e) if not_admissible(&e) => return Ok(refusal(e)),
        Err(e) => return Err(e),
    };
    let report = analyzer.defect_supremum(u, v)?;
    match witness_from_report(g, &report) {
        Ok(w) => {
            let j = WitnessJson::new(g, &w);
            let text = format!(
                "witness at {}: value {} ({}) < {}\n{}",
                pair_text(&j.pair),
                j.value.exact,
                j.value.approx,
                report.d_value,
                matrix_table(&w.distances)
            );
            Ok(Outcome {
                code: EXIT_HOLDS,
                json: json!({ "witness": value(&j) }),
                text,
            })
        }
        Err(e @ Error::NoSlack(..)) => Ok(refusal(e)),
        Err(e) => Err(e),
    }
}

fn analyze_cmd(g: &WeightedGraph, common: &Common) -> Result<Outcome, Error> {
    let report = analyze(g, common.mode.into())?;
    let mut text = format!(
        "schema version: {}\npseudometrizable: {}\nmetrizable: {}\n",
        report.schema_version, report.metrizability.pseudometrizable, report.metrizability.metrizable
    );
    let unique = report.uniqueness.as_ref().is_some_and(|u| u.unique);
    match &report.uniqueness {
        Some(u) => text += &format!("unique: {}\nmode: {}\n", u.unique, mode_name(u.mode)),
        None => text += "unique: n/a (weight does not meet the mode's precondition)\n",
    }
    text += "distances:\n";
    text += &table(&report.distances);
    for d in &report.defects {
        text += &defect_line("defect", d);
    }
    for w in &report.witnesses {
        text += &format!("witness at {}: value {}\n", pair_text(&w.pair), w.value.exact);
    }
    Ok(Outcome {
        code: if unique { EXIT_HOLDS } else { EXIT_FAILS },
        json: value(&report),
        text,
    })
}

fn mode_name(m: Mode) -> &'static str {
    match m {
        Mode::Metric => "metric",
        Mode::Pseudometric => "pseudometric",
    }
}

fn matrix_table(d: &DistanceMatrix) -> String {
    table(&DistancesJson::from(d))
}

fn table(d: &DistancesJson) -> String {
    let cells: Vec<Vec<&str>> = d
        .matrix
        .iter()
        .map(|r| r.iter().map(|n| n.exact.as_str()).collect())
        .collect();
    let width = d
        .vertices
        .iter()
        .map(String::len)
        .chain(cells.iter().flatten().map(|c| c.len()))
        .max()
        .unwrap_or(1);
    let mut out = format!("{:>width$}", "");
    for v in &d.vertices {
        out += &format!(" {v:>width$}");
    }
    out.push('\n');
    for (v, row) in d.vertices.iter().zip(&cells) {
        out += &format!("{v:>width$}");
        for c in row {
            out += &format!(" {c:>width$}");
        }
        out.push('\n');
    }
    out
}
