//! Command dispatch for the `latoffoli` binary.
//!
//! [`execute`] renders a command to a string and an exit status without
//! touching stdout, so commands are testable in-process; [`run`] adds the
//! output file handling.

use std::fmt::{self, Write as _};
use std::fs;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use latoffoli::qasm::{from_qasm, to_qasm};
use latoffoli::reference::{CONFIGURATION_COUNTS, TQC_ROWS};
use latoffoli::verifier::{check_and_behavior, AndTruthTable};
use latoffoli::{
    transpile, CostReport, CouplingLayout, Mode, NClass, Placement, Preset, ToffoliSpec, TqcReport, Transpiled,
};
use serde::Serialize;

pub const EXIT_OK: u8 = 0;
pub const EXIT_VERIFY_FAILED: u8 = 1;
pub const EXIT_INVALID_INPUT: u8 = 2;

#[derive(Parser, Debug)]
#[command(name = "latoffoli", version, about = "Layout-aware multi-controlled Toffoli synthesis")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Synthesize, route and emit a circuit (default format: qasm).
    Synth(GateArgs),
    /// Check AND behaviour on every control basis input (default format: text).
    Verify(VerifyArgs),
    /// Report N1, N2, XC, D and TQC (default format: text).
    Cost(GateArgs),
    /// Reproduce the configuration-count or cost tables (default format: text).
    Table(TableArgs),
    /// Describe the preset coupling layouts, or one given by --layout.
    Layouts(LayoutsArgs),
}

#[derive(Args, Debug)]
pub struct GateArgs {
    /// Preset name (linear5, tlike5, ilike7), device name, or layout JSON file.
    #[arg(long)]
    pub layout: String,
    /// Total gate size: controls plus target.
    #[arg(long)]
    pub n: usize,
    /// Physical qubits as `target,c0,c1,...`.
    #[arg(long)]
    pub placement: Option<Placement>,
    #[arg(long, value_enum, default_value_t = ModeArg::LayoutAware)]
    pub mode: ModeArg,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Args, Debug)]
pub struct VerifyArgs {
    /// Check this OpenQASM file instead of synthesizing a circuit.
    #[arg(long)]
    pub circuit: Option<PathBuf>,
    #[arg(long, required_unless_present = "circuit")]
    pub layout: Option<String>,
    /// Gate size; defaults to the circuit width when --circuit is given.
    #[arg(long, required_unless_present = "circuit")]
    pub n: Option<usize>,
    /// Physical qubits as `target,c0,c1,...`; with --circuit this names the
    /// gate's qubits in the file.
    #[arg(long)]
    pub placement: Option<Placement>,
    #[arg(long, value_enum, default_value_t = ModeArg::LayoutAware)]
    pub mode: ModeArg,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Args, Debug)]
pub struct TableArgs {
    #[arg(value_enum)]
    pub which: TableKind,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Args, Debug)]
pub struct LayoutsArgs {
    #[arg(long)]
    pub layout: Option<String>,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Args, Debug)]
pub struct OutputArgs {
    #[arg(long, value_enum)]
    pub format: Option<Format>,
    /// Write to this file instead of stdout.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
    Csv,
    Qasm,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum ModeArg {
    LayoutAware,
    Conventional,
}

impl From<ModeArg> for Mode {
    fn from(m: ModeArg) -> Mode {
        match m {
            ModeArg::LayoutAware => Mode::LayoutAware,
            ModeArg::Conventional => Mode::Conventional,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum TableKind {
    /// Maximum star configurations per preset and n.
    #[value(name = "3")]
    Configurations,
    /// Layout-aware costs beside the published figures.
    #[value(name = "4-layout-aware")]
    LayoutAware,
    /// Conventional baseline: n = 3 computed, larger n cited.
    #[value(name = "4-conventional")]
    Conventional,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CliError {
    pub code: u8,
    pub message: String,
}

impl CliError {
    fn invalid(message: impl Into<String>) -> CliError {
        CliError {
            code: EXIT_INVALID_INPUT,
            message: message.into(),
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.message)
    }
}

impl std::error::Error for CliError {}

impl From<latoffoli::Error> for CliError {
    fn from(e: latoffoli::Error) -> CliError {
        CliError::invalid(e.to_string())
    }
}

/// A rendered command result.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Rendered {
    pub body: String,
    pub code: u8,
}

impl Rendered {
    fn ok(body: String) -> Rendered {
        Rendered { body, code: EXIT_OK }
    }
}

type CliResult<T> = Result<T, CliError>;

/// Runs a command and writes its output to `--out` or stdout. Returns the
/// process exit code.
pub fn run(cli: &Cli) -> CliResult<u8> {
    let rendered = execute(cli)?;
    match output_path(&cli.command) {
        Some(path) => fs::write(path, &rendered.body)
            .map_err(|e| CliError::invalid(format!("cannot write {}: {e}", path.display())))?,
        None => print!("{}", rendered.body),
    }
    Ok(rendered.code)
}

fn output_path(command: &Command) -> Option<&Path> {
    let out = match command {
        Command::Synth(a) | Command::Cost(a) => &a.output.out,
        Command::Verify(a) => &a.output.out,
        Command::Table(a) => &a.output.out,
        Command::Layouts(a) => &a.output.out,
    };
    out.as_deref()
}

pub fn execute(cli: &Cli) -> CliResult<Rendered> {
    match &cli.command {
        Command::Synth(args) => cmd_synth(args),
        Command::Verify(args) => cmd_verify(args),
        Command::Cost(args) => cmd_cost(args),
        Command::Table(args) => cmd_table(args),
        Command::Layouts(args) => cmd_layouts(args),
    }
}

/// Resolves a preset or device name, falling back to a layout JSON file.
pub fn load_layout(spec: &str) -> CliResult<CouplingLayout> {
    if let Ok(preset) = spec.parse::<Preset>() {
        return Ok(preset.layout());
    }
    let path = Path::new(spec);
    if !path.exists() {
        return Err(latoffoli::Error::UnknownLayout(spec.to_string()).into());
    }
    let text = fs::read_to_string(path).map_err(|e| CliError::invalid(format!("cannot read {spec}: {e}")))?;
    Ok(CouplingLayout::from_json(&text)?)
}

fn format_or(requested: Option<Format>, default: Format, allowed: &[Format], command: &str) -> CliResult<Format> {
    let format = requested.unwrap_or(default);
    if allowed.contains(&format) {
        Ok(format)
    } else {
        Err(CliError::invalid(format!(
            "{command} does not support --format {}",
            format.to_possible_value().expect("no skipped variants").get_name()
        )))
    }
}

fn build(args: &GateArgs) -> CliResult<Transpiled> {
    let layout = load_layout(&args.layout)?;
    Ok(transpile(&layout, args.n, args.mode.into(), args.placement.clone())?)
}

fn to_json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("report serializes");
    s.push('\n');
    s
}

fn to_csv<T: Serialize>(rows: impl IntoIterator<Item = T>) -> String {
    let mut writer = csv::Writer::from_writer(Vec::new());
    for row in rows {
        writer.serialize(row).expect("in-memory csv write");
    }
    String::from_utf8(writer.into_inner().expect("in-memory csv flush")).expect("csv is utf-8")
}

/// Left-aligned plain-text table.
fn text_table(headers: &[&str], rows: &[Vec<String>]) -> String {
    let mut widths: Vec<usize> = headers.iter().map(|h| h.len()).collect();
    for row in rows {
        for (w, cell) in widths.iter_mut().zip(row) {
            *w = (*w).max(cell.len());
        }
    }
    let line = |cells: &mut dyn Iterator<Item = &str>| {
        let joined: Vec<String> = cells.zip(&widths).map(|(c, &w)| format!("{c:<w$}")).collect();
        joined.join("  ").trim_end().to_string() + "\n"
    };
    let mut out = line(&mut headers.iter().copied());
    out += &line(&mut widths.iter().map(|&w| "-".repeat(w)).collect::<Vec<_>>().iter().map(String::as_str));
    for row in rows {
        out += &line(&mut row.iter().map(String::as_str));
    }
    out
}

#[derive(Serialize)]
struct SynthDocument {
    report: CostReport,
    class: NClass,
    qasm: String,
}

#[derive(Serialize)]
struct CostRow {
    layout: String,
    n: usize,
    mode: Mode,
    class: NClass,
    n1: usize,
    n2: usize,
    xc: usize,
    depth: usize,
    tqc: usize,
    placement: String,
}

fn cost_row(t: &Transpiled) -> CostRow {
    let r = t.tqc;
    CostRow {
        layout: t.mapped.layout.name().to_string(),
        n: t.logical.n(),
        mode: t.mode,
        class: t.class,
        n1: r.n1,
        n2: r.n2,
        xc: r.xc,
        depth: r.depth,
        tqc: r.tqc,
        placement: placement_arg(&t.placement),
    }
}

/// `target,c0,c1,...`, the same syntax `--placement` accepts.
fn placement_arg(p: &Placement) -> String {
    std::iter::once(p.target)
        .chain(p.controls.iter().copied())
        .map(|q| q.to_string())
        .collect::<Vec<_>>()
        .join(",")
}

fn describe(t: &Transpiled) -> String {
    format!(
        "{} {}-qubit gate on {} ({}), placement {}\n{}\n",
        t.mode,
        t.logical.n(),
        t.mapped.layout.name(),
        t.class,
        t.placement,
        t.tqc
    )
}

pub fn cmd_synth(args: &GateArgs) -> CliResult<Rendered> {
    let format = format_or(args.output.format, Format::Qasm, &[Format::Qasm, Format::Json, Format::Text], "synth")?;
    let t = build(args)?;
    let qasm = to_qasm(&t.mapped.circuit);
    let body = match format {
        Format::Qasm => qasm,
        Format::Json => to_json(&SynthDocument {
            report: t.report(),
            class: t.class,
            qasm,
        }),
        _ => {
            let mut out = describe(&t);
            for gate in t.mapped.circuit.gates() {
                writeln!(out, "  {gate}").expect("write to string");
            }
            out
        }
    };
    Ok(Rendered::ok(body))
}

pub fn cmd_cost(args: &GateArgs) -> CliResult<Rendered> {
    let format = format_or(args.output.format, Format::Text, &[Format::Text, Format::Json, Format::Csv], "cost")?;
    let t = build(args)?;
    let body = match format {
        Format::Json => to_json(&cost_row(&t)),
        Format::Csv => to_csv([cost_row(&t)]),
        _ => describe(&t),
    };
    Ok(Rendered::ok(body))
}

#[derive(Serialize)]
struct VerifyDocument {
    source: String,
    target: usize,
    controls: Vec<usize>,
    passed: bool,
    rows: Vec<VerifyRow>,
}

#[derive(Serialize)]
struct VerifyRow {
    /// Control values, control 0 first.
    controls: String,
    expected_target: u8,
    probability: f64,
    passed: bool,
}

pub fn cmd_verify(args: &VerifyArgs) -> CliResult<Rendered> {
    let format = format_or(args.output.format, Format::Text, &[Format::Text, Format::Json, Format::Csv], "verify")?;
    let (source, circuit, spec) = match &args.circuit {
        Some(path) => {
            let text = fs::read_to_string(path)
                .map_err(|e| CliError::invalid(format!("cannot read {}: {e}", path.display())))?;
            let circuit = from_qasm(&text)?.expand_macros();
            let spec = match (&args.placement, args.n) {
                (Some(p), n) => {
                    if n.is_some_and(|n| n != p.n()) {
                        return Err(CliError::invalid(format!("placement lists {} qubits but n = {}", p.n(), n.unwrap_or(0))));
                    }
                    ToffoliSpec::new(p.controls.iter().copied(), p.target)?
                }
                (None, n) => ToffoliSpec::logical(n.unwrap_or(circuit.num_qubits()))?,
            };
            (path.display().to_string(), circuit, spec)
        }
        None => {
            let gate = GateArgs {
                layout: args.layout.clone().expect("required by clap"),
                n: args.n.expect("required by clap"),
                placement: args.placement.clone(),
                mode: args.mode,
                output: OutputArgs { format: None, out: None },
            };
            let t = build(&gate)?;
            let spec = t.physical_spec()?;
            let source = format!("{} n={} on {}", t.mode, t.logical.n(), t.mapped.layout.name());
            (source, t.mapped.circuit, spec)
        }
    };
    let table = check_and_behavior(&circuit, &spec)?;
    let passed = table.all_passed();
    let body = match format {
        Format::Json => to_json(&VerifyDocument {
            source,
            target: spec.target().0,
            controls: spec.controls().iter().map(|q| q.0).collect(),
            passed,
            rows: verify_rows(&table),
        }),
        Format::Csv => to_csv(verify_rows(&table)),
        _ => {
            let failures = table.failures().count();
            let controls: Vec<String> = spec.controls().iter().map(|q| q.to_string()).collect();
            let mut out = format!("{source}: controls [{}] target {}\n{table}", controls.join(", "), spec.target());
            if passed {
                writeln!(out, "all {} inputs pass", table.rows.len()).expect("write to string");
            } else {
                writeln!(out, "{failures} of {} inputs FAIL", table.rows.len()).expect("write to string");
            }
            out
        }
    };
    Ok(Rendered {
        body,
        code: if passed { EXIT_OK } else { EXIT_VERIFY_FAILED },
    })
}

fn verify_rows(table: &AndTruthTable) -> Vec<VerifyRow> {
    table
        .rows
        .iter()
        .map(|r| VerifyRow {
            controls: r.controls.iter().map(|&b| if b { '1' } else { '0' }).collect(),
            expected_target: u8::from(r.expected_target),
            probability: r.probability,
            passed: r.passed,
        })
        .collect()
}

#[derive(Serialize)]
struct ConfigurationRow {
    layout: &'static str,
    device: &'static str,
    n: usize,
    /// Empty when no qubit has enough neighbours.
    configurations: Option<usize>,
}

#[derive(Serialize)]
struct CostTableRow {
    layout: &'static str,
    device: &'static str,
    n: usize,
    class: Option<NClass>,
    /// `exact` (star placement, matches), `match`, `router-dependent` or
    /// `external` (published only).
    status: &'static str,
    n1: Option<usize>,
    n2: Option<usize>,
    xc: Option<usize>,
    depth: Option<usize>,
    tqc: Option<usize>,
    published_n1: usize,
    published_n2: usize,
    published_xc: usize,
    published_depth: usize,
    published_tqc: usize,
}

fn cost_table_row(preset: Preset, n: usize, computed: Option<&Transpiled>, published: TqcReport) -> CostTableRow {
    let ours = computed.map(|t| t.tqc);
    let status = match computed {
        None => "external",
        Some(t) if t.tqc == published && t.placement.is_star(&t.mapped.layout) => "exact",
        Some(t) if t.tqc == published => "match",
        Some(_) => "router-dependent",
    };
    CostTableRow {
        layout: preset.name(),
        device: preset.device(),
        n,
        class: computed.map(|t| t.class),
        status,
        n1: ours.map(|r| r.n1),
        n2: ours.map(|r| r.n2),
        xc: ours.map(|r| r.xc),
        depth: ours.map(|r| r.depth),
        tqc: ours.map(|r| r.tqc),
        published_n1: published.n1,
        published_n2: published.n2,
        published_xc: published.xc,
        published_depth: published.depth,
        published_tqc: published.tqc,
    }
}

fn opt(v: Option<impl ToString>) -> String {
    v.map_or_else(|| "-".to_string(), |v| v.to_string())
}

pub fn cmd_table(args: &TableArgs) -> CliResult<Rendered> {
    let format = format_or(args.output.format, Format::Text, &[Format::Text, Format::Json, Format::Csv], "table")?;
    let body = match args.which {
        TableKind::Configurations => {
            let rows: Vec<ConfigurationRow> = CONFIGURATION_COUNTS
                .iter()
                .map(|&(preset, n, _)| {
                    let found = latoffoli::enumerate_configurations(&preset.layout(), n)
                        .expect("n is 3 or 4")
                        .len();
                    ConfigurationRow {
                        layout: preset.name(),
                        device: preset.device(),
                        n,
                        configurations: (found > 0).then_some(found),
                    }
                })
                .collect();
            match format {
                Format::Json => to_json(&rows),
                Format::Csv => to_csv(rows),
                _ => {
                    let cells: Vec<Vec<String>> = rows
                        .iter()
                        .map(|r| {
                            vec![
                                r.layout.to_string(),
                                r.device.to_string(),
                                r.n.to_string(),
                                r.configurations.map_or_else(|| "N.A.".to_string(), |c| c.to_string()),
                            ]
                        })
                        .collect();
                    text_table(&["layout", "device", "n", "configurations"], &cells)
                }
            }
        }
        TableKind::LayoutAware | TableKind::Conventional => {
            let conventional = args.which == TableKind::Conventional;
            let mut rows = Vec::with_capacity(TQC_ROWS.len());
            for row in TQC_ROWS {
                let published = if conventional { row.conventional } else { row.layout_aware };
                let computed = if conventional && row.n > 3 {
                    None
                } else {
                    let mode = if conventional { Mode::Conventional } else { Mode::LayoutAware };
                    Some(transpile(&row.preset.layout(), row.n, mode, None)?)
                };
                rows.push(cost_table_row(row.preset, row.n, computed.as_ref(), published));
            }
            match format {
                Format::Json => to_json(&rows),
                Format::Csv => to_csv(rows),
                _ => {
                    let cells: Vec<Vec<String>> = rows
                        .iter()
                        .map(|r| {
                            vec![
                                r.layout.to_string(),
                                r.n.to_string(),
                                opt(r.class),
                                opt(r.n1),
                                opt(r.n2),
                                opt(r.xc),
                                opt(r.depth),
                                opt(r.tqc),
                                format!(
                                    "{}/{}/{}/{}/{}",
                                    r.published_n1, r.published_n2, r.published_xc, r.published_depth, r.published_tqc
                                ),
                                r.status.to_string(),
                            ]
                        })
                        .collect();
                    text_table(
                        &["layout", "n", "class", "N1", "N2", "XC", "D", "TQC", "published N1/N2/XC/D/TQC", "status"],
                        &cells,
                    )
                }
            }
        }
    };
    Ok(Rendered::ok(body))
}

#[derive(Serialize)]
struct LayoutRow {
    name: String,
    device: Option<&'static str>,
    num_qubits: usize,
    max_degree: usize,
    edges: Vec<[usize; 2]>,
}

fn layout_row(layout: &CouplingLayout, device: Option<&'static str>) -> LayoutRow {
    LayoutRow {
        name: layout.name().to_string(),
        device,
        num_qubits: layout.num_qubits(),
        max_degree: layout.max_degree(),
        edges: layout.edges().map(|(a, b)| [a, b]).collect(),
    }
}

pub fn cmd_layouts(args: &LayoutsArgs) -> CliResult<Rendered> {
    let format = format_or(args.output.format, Format::Text, &[Format::Text, Format::Json], "layouts")?;
    let rows: Vec<LayoutRow> = match &args.layout {
        Some(spec) => {
            let device = spec.parse::<Preset>().ok().map(Preset::device);
            vec![layout_row(&load_layout(spec)?, device)]
        }
        None => Preset::ALL.iter().map(|p| layout_row(&p.layout(), Some(p.device()))).collect(),
    };
    let body = match format {
        Format::Json => to_json(&rows),
        _ => {
            let cells: Vec<Vec<String>> = rows
                .iter()
                .map(|r| {
                    let edges: Vec<String> = r.edges.iter().map(|[a, b]| format!("{a}-{b}")).collect();
                    vec![
                        r.name.clone(),
                        opt(r.device),
                        r.num_qubits.to_string(),
                        r.max_degree.to_string(),
                        edges.join(" "),
                    ]
                })
                .collect();
            text_table(&["layout", "device", "qubits", "max degree", "edges"], &cells)
        }
    };
    Ok(Rendered::ok(body))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn exec(args: &[&str]) -> CliResult<Rendered> {
        let cli = Cli::try_parse_from(std::iter::once("latoffoli").chain(args.iter().copied())).unwrap();
        execute(&cli)
    }

    #[test]
    fn cli_definition_is_consistent() {
        use clap::CommandFactory;
        Cli::command().debug_assert();
    }

    #[test]
    fn synth_counts_gate_lines() {
        let out = exec(&["synth", "--layout", "tlike5", "--n", "3"]).unwrap();
        let lines: Vec<&str> = out.body.lines().collect();
        assert_eq!(lines.iter().filter(|l| l.starts_with("rz") || l.starts_with("sx")).count(), 8);
        assert_eq!(lines.iter().filter(|l| l.starts_with("cx")).count(), 3);
    }

    #[test]
    fn capacity_error_is_invalid_input() {
        let err = exec(&["synth", "--layout", "linear5", "--n", "9"]).unwrap_err();
        assert_eq!(err.code, EXIT_INVALID_INPUT);
        assert!(err.message.contains("n exceeds layout capacity"), "{}", err.message);
    }

    #[test]
    fn unsupported_format_is_rejected() {
        let err = exec(&["layouts", "--format", "qasm"]).unwrap_err();
        assert_eq!(err.code, EXIT_INVALID_INPUT);
    }

    #[test]
    fn unknown_layout_is_rejected() {
        let err = exec(&["cost", "--layout", "no-such-layout", "--n", "3"]).unwrap_err();
        assert_eq!(err.code, EXIT_INVALID_INPUT);
    }

    #[test]
    fn cost_table_flags_exact_rows() {
        let out = exec(&["table", "4-layout-aware", "--format", "csv"]).unwrap();
        let ilike3 = out.body.lines().find(|l| l.starts_with("ilike7,ibmq_perth,3,")).unwrap();
        assert!(ilike3.contains(",exact,8,3,0,11,22,"), "{ilike3}");
        let tlike5 = out.body.lines().find(|l| l.starts_with("tlike5,ibmq_quito,5,")).unwrap();
        assert!(tlike5.contains(",20,21,2,35,78,20,21,2,35,78"), "{tlike5}");
    }

    #[test]
    fn text_table_aligns_columns() {
        let t = text_table(&["a", "bb"], &[vec!["xxx".into(), "y".into()]]);
        assert_eq!(t, "a    bb\n---  --\nxxx  y\n");
    }
}
