use std::collections::BTreeMap;
use std::fs;
use std::io::Write as _;
use std::ops::RangeInclusive;
use std::path::Path;
use std::process::ExitCode;

use clap::Args;
use spanlab::families::{FamilySpec, NamedGraph};
use spanlab::io::{
    emit_edge_list, emit_graph6, emit_witness_dot, parse_edge_list, parse_graph6, ParseError,
};
use spanlab::verify::{
    canonical_form, check_theorems, cut_edge_bound, enumerate_connected, is_isomorphic,
    random_graphs, CheckOptions, EnumerationReport, VerifyError, DEDUP_MAX_N,
};
use spanlab::{compute_span, compute_spans, extract_witness_tracks, Graph, MovementRule};

use crate::{Format, GraphInput, RuleChoice, RunOptions, SingleRule};

pub struct Output {
    pub machine: bool,
}

#[derive(Debug)]
pub struct CliError {
    pub code: u8,
    pub message: String,
}

impl CliError {
    fn new(code: u8, message: impl Into<String>) -> Self {
        CliError {
            code,
            message: message.into(),
        }
    }
}

impl From<VerifyError> for CliError {
    fn from(err: VerifyError) -> Self {
        let code = match err {
            VerifyError::TooLarge { .. } => 4,
            VerifyError::OrderTooSmall(_) => 2,
        };
        CliError::new(code, err.to_string())
    }
}

type CmdResult = Result<ExitCode, CliError>;

fn read_graph(input: &GraphInput) -> Result<Graph, CliError> {
    let path = &input.file;
    let text = fs::read_to_string(path)
        .map_err(|e| CliError::new(2, format!("{}: {e}", path.display())))?;
    let format = input.format.unwrap_or_else(|| guess_format(path));
    let parsed = match format {
        Format::Edgelist => parse_edge_list(&text),
        Format::Graph6 => {
            let lines: Vec<&str> = text
                .lines()
                .map(str::trim)
                .filter(|l| !l.is_empty() && !l.starts_with(">>graph6<<"))
                .collect();
            match lines.as_slice() {
                [line] => parse_graph6(line),
                _ => {
                    return Err(CliError::new(
                        2,
                        format!(
                            "{}: expected exactly one graph6 line, found {}",
                            path.display(),
                            lines.len()
                        ),
                    ))
                }
            }
        }
    };
    parsed.map_err(|e: ParseError| {
        let code = if e.is_disconnected() { 3 } else { 2 };
        CliError::new(code, format!("{}: {e}", path.display()))
    })
}

fn guess_format(path: &Path) -> Format {
    match path.extension().and_then(|e| e.to_str()) {
        Some("g6") => Format::Graph6,
        _ => Format::Edgelist,
    }
}

fn single(rule: SingleRule) -> MovementRule {
    match rule {
        SingleRule::Strong => MovementRule::Traditional,
        SingleRule::Direct => MovementRule::Active,
        SingleRule::Cartesian => MovementRule::Lazy,
    }
}

/// Left-aligned columns separated by two spaces.
fn table(rows: &[Vec<String>]) -> String {
    let cols = rows.iter().map(Vec::len).max().unwrap_or(0);
    let widths: Vec<usize> = (0..cols)
        .map(|c| {
            rows.iter()
                .filter_map(|r| r.get(c))
                .map(String::len)
                .max()
                .unwrap_or(0)
        })
        .collect();
    let mut out = String::new();
    for row in rows {
        let line: Vec<String> = row
            .iter()
            .enumerate()
            .map(|(c, cell)| format!("{cell:<width$}", width = widths[c]))
            .collect();
        out.push_str(line.join("  ").trim_end());
        out.push('\n');
    }
    out
}

pub fn span(_out: &Output, input: &GraphInput, rule: RuleChoice) -> CmdResult {
    let g = read_graph(input)?;
    let rules: Vec<MovementRule> = match rule {
        RuleChoice::Strong => vec![MovementRule::Traditional],
        RuleChoice::Direct => vec![MovementRule::Active],
        RuleChoice::Cartesian => vec![MovementRule::Lazy],
        RuleChoice::All => MovementRule::ALL.to_vec(),
    };
    let mut fields = vec![format!("rad={}", g.radius())];
    for r in rules {
        fields.push(format!(
            "{}={}",
            r.product_name(),
            compute_span(&g, r).value
        ));
    }
    println!("{}", fields.join(" "));
    Ok(ExitCode::SUCCESS)
}

pub fn witness(out: &Output, input: &GraphInput, rule: SingleRule) -> CmdResult {
    let g = read_graph(input)?;
    let rule = single(rule);
    let report = compute_span(&g, rule);
    let tracks = extract_witness_tracks(&g, &report);
    let dot = emit_witness_dot(&g, &tracks).map_err(|e| CliError::new(1, e.to_string()))?;

    let stderr = std::io::stderr();
    let mut err = stderr.lock();
    if out.machine {
        let _ = writeln!(
            err,
            "rule={} span={} steps={}",
            rule.product_name(),
            report.value,
            tracks.len()
        );
        for (i, ((a, b), d)) in tracks.positions().zip(tracks.distances(&g)).enumerate() {
            let _ = writeln!(
                err,
                "step={} alice={} bob={} distance={d}",
                i + 1,
                g.label(a),
                g.label(b)
            );
        }
    } else {
        let _ = writeln!(
            err,
            "{} span {} over {} steps",
            rule.product_name(),
            report.value,
            tracks.len()
        );
        let mut rows = vec![
            vec!["step".to_string()],
            vec!["Alice".to_string()],
            vec!["Bob".to_string()],
            vec!["distance".to_string()],
        ];
        for (i, ((a, b), d)) in tracks.positions().zip(tracks.distances(&g)).enumerate() {
            rows[0].push((i + 1).to_string());
            rows[1].push(g.label(a));
            rows[2].push(g.label(b));
            rows[3].push(d.to_string());
        }
        let _ = write!(err, "{}", table(&rows));
    }
    print!("{dot}");
    Ok(ExitCode::SUCCESS)
}

#[derive(Debug, Args)]
pub struct FamilySweep {
    /// Largest n for P_n.
    #[arg(long, default_value_t = 10)]
    max_path: usize,
    /// Largest n for C_n.
    #[arg(long, default_value_t = 10)]
    max_cycle: usize,
    /// Largest n for Q_n.
    #[arg(long, default_value_t = 4)]
    max_cube: usize,
    /// Largest r and s for K_{r,s}.
    #[arg(long, default_value_t = 4)]
    max_bipartite: usize,
    /// Largest n for K_n, S_n and W_n.
    #[arg(long, default_value_t = 8)]
    max_complete: usize,
    /// Largest n for PC_n.
    #[arg(long, default_value_t = 9)]
    max_paramecium: usize,
    /// Largest h for BT_h.
    #[arg(long, default_value_t = 4)]
    max_tree: usize,
}

impl FamilySweep {
    pub fn specs(&self) -> Vec<FamilySpec> {
        let mut specs = Vec::new();
        specs.extend((2..=self.max_path).map(FamilySpec::Path));
        specs.extend((3..=self.max_cycle).map(FamilySpec::Cycle));
        specs.extend((2..=self.max_cube).map(FamilySpec::Hypercube));
        for r in 2..=self.max_bipartite {
            specs.extend((2..=self.max_bipartite).map(|s| FamilySpec::CompleteBipartite(r, s)));
        }
        specs.extend((3..=self.max_complete).map(FamilySpec::Complete));
        specs.extend((4..=self.max_complete).map(FamilySpec::Star));
        specs.extend((4..=self.max_complete).map(FamilySpec::Wheel));
        specs.extend((3..=self.max_paramecium).map(FamilySpec::Paramecium));
        specs.extend((1..=self.max_tree).map(FamilySpec::PerfectBinaryTree));
        specs
    }
}

pub fn families(out: &Output, sweep: &FamilySweep) -> CmdResult {
    let mut rows = vec![vec![
        "graph".to_string(),
        "rad".to_string(),
        "computed".to_string(),
        "expected".to_string(),
        "result".to_string(),
    ]];
    let mut failures = 0;
    for spec in sweep.specs() {
        let g = spec
            .generate()
            .map_err(|e| CliError::new(2, e.to_string()))?;
        let expected = spec
            .expected_spans()
            .map_err(|e| CliError::new(2, e.to_string()))?;
        let computed = compute_spans(&g);
        let pass = computed == expected && g.radius() == spec.expected_radius().unwrap_or(u32::MAX);
        failures += usize::from(!pass);
        let verdict = if pass { "PASS" } else { "FAIL" };
        if out.machine {
            println!(
                "graph={spec} rad={} strong={} direct={} cartesian={} expected={},{},{} result={verdict}",
                g.radius(),
                computed.strong,
                computed.direct,
                computed.cartesian,
                expected.strong,
                expected.direct,
                expected.cartesian,
            );
        } else {
            rows.push(vec![
                spec.to_string(),
                g.radius().to_string(),
                computed.to_string(),
                expected.to_string(),
                verdict.to_string(),
            ]);
        }
    }
    let total = sweep.specs().len();
    if out.machine {
        println!(
            "rows={total} failures={failures} result={}",
            if failures == 0 { "PASS" } else { "FAIL" }
        );
    } else {
        print!("{}", table(&rows));
        if failures == 0 {
            println!("PASS ({total} rows)");
        } else {
            println!("FAIL ({failures} of {total} rows)");
        }
    }
    Ok(if failures == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    })
}

fn check_options(run: &RunOptions) -> CheckOptions {
    CheckOptions {
        jobs: run.jobs.map(usize::from),
        oracle_max_n: usize::from(run.oracle_max_n),
        witnesses: run.witnesses,
        keep_records: run.summary.is_some(),
    }
}

/// Name for a few graphs worth pointing out in listings.
fn known_name(g: &Graph) -> Option<String> {
    let n = g.n();
    if n % 2 == 0 && n >= 6 {
        let pc = FamilySpec::Paramecium(n / 2).generate().ok()?;
        if is_isomorphic(g, &pc).ok()? {
            return Some(format!("PC_{}", n / 2));
        }
    }
    None
}

fn print_report(out: &Output, report: &EnumerationReport, run: &RunOptions) -> CmdResult {
    if let Some(path) = &run.summary {
        let mut text = String::new();
        for record in &report.records {
            text.push_str(&serde_json::to_string(record).expect("records serialize"));
            text.push('\n');
        }
        fs::write(path, text).map_err(|e| CliError::new(2, format!("{}: {e}", path.display())))?;
    }

    // Graphs with cartesian > direct, one per isomorphism class when small.
    let mut positives: BTreeMap<String, Option<String>> = BTreeMap::new();
    for code in &report.cartesian_gt_direct {
        let g = parse_graph6(code).expect("report holds valid graph6");
        let key = if g.n() <= DEDUP_MAX_N {
            emit_graph6(&canonical_form(&g)?)
        } else {
            code.clone()
        };
        let name = known_name(&g);
        positives.entry(key).or_insert(name);
    }

    let order = report
        .n
        .map(|n| n.to_string())
        .unwrap_or_else(|| "mixed".into());
    if out.machine {
        println!(
            "n={order} graphs={} oracle={} counterexamples={} cartesian_gt_direct={} classes={}",
            report.graphs_checked,
            report.oracle_checked,
            report.counterexamples.len(),
            report.cartesian_gt_direct.len(),
            positives.len()
        );
        for c in &report.counterexamples {
            println!(
                "counterexample graph6={} property={:?}",
                c.graph6, c.property
            );
        }
        for (code, name) in &positives {
            match name {
                Some(name) => println!("cartesian_gt_direct graph6={code} name={name}"),
                None => println!("cartesian_gt_direct graph6={code}"),
            }
        }
    } else {
        println!(
            "order {order}: {} graphs checked, {} against the oracle",
            report.graphs_checked, report.oracle_checked
        );
        println!(
            "{} counterexamples; {} graphs with cartesian>direct",
            report.counterexamples.len(),
            report.cartesian_gt_direct.len()
        );
        for c in &report.counterexamples {
            println!("  counterexample {}  {}", c.graph6, c.property);
        }
        if !positives.is_empty() {
            println!("cartesian>direct, {} isomorphism classes:", positives.len());
            for (code, name) in &positives {
                match name {
                    Some(name) => println!("  {code}  {name}"),
                    None => println!("  {code}"),
                }
            }
        }
    }
    Ok(if report.passed() {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    })
}

pub fn verify_enumerate(out: &Output, n: usize, dedup: bool, run: &RunOptions) -> CmdResult {
    let corpus = enumerate_connected(n, dedup)?;
    let report = check_theorems(corpus, &check_options(run));
    print_report(out, &report, run)
}

pub fn verify_random(
    out: &Output,
    count: usize,
    seed: u64,
    orders: RangeInclusive<usize>,
    p: f64,
    run: &RunOptions,
) -> CmdResult {
    if orders.is_empty() || *orders.start() == 0 {
        return Err(CliError::new(2, "need 1 <= min-n <= max-n"));
    }
    if !(p > 0.0 && p <= 1.0) {
        return Err(CliError::new(2, "edge probability must be in (0, 1]"));
    }
    if *orders.end() > spanlab::io::GRAPH6_MAX_N {
        return Err(CliError::new(4, "random graphs are limited to 62 vertices"));
    }
    let report = check_theorems(random_graphs(count, orders, p, seed), &check_options(run));
    print_report(out, &report, run)
}

pub fn bounds(out: &Output, input: &GraphInput) -> CmdResult {
    let g = read_graph(input)?;
    let radius = g.radius();
    let strong = compute_span(&g, MovementRule::Traditional).value;
    let cut = cut_edge_bound(&g);
    let cut_text = match &cut {
        Ok(Some(c)) => c.to_string(),
        Ok(None) => "no bridge".to_string(),
        Err(_) => "n/a".to_string(),
    };
    let ok = strong <= radius
        && cut
            .as_ref()
            .map_or(true, |c| c.map_or(true, |c| strong <= c));
    if out.machine {
        let cut_field = match &cut {
            Ok(Some(c)) => c.to_string(),
            Ok(None) => "none".to_string(),
            Err(_) => "na".to_string(),
        };
        println!("rad={radius} cut={cut_field} strong={strong} ok={ok}");
    } else {
        let rows = vec![
            vec!["radius bound".to_string(), radius.to_string()],
            vec!["cut-edge bound".to_string(), cut_text],
            vec!["strong span".to_string(), strong.to_string()],
        ];
        print!("{}", table(&rows));
        println!("{}", if ok { "PASS" } else { "FAIL" });
    }
    Ok(if ok {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    })
}

pub fn named(out: &Output, id: Option<&str>, list: bool, format: Format) -> CmdResult {
    if list {
        let mut rows = Vec::new();
        for g in NamedGraph::ALL {
            let graph = g.graph();
            let printed = g
                .printed_direct_cartesian()
                .map(|(d, c)| format!("direct={d} cartesian={c}"))
                .unwrap_or_default();
            if out.machine {
                let line = format!(
                    "id={} n={} m={} {printed}",
                    g.id(),
                    graph.n(),
                    graph.edge_count()
                );
                println!("{}", line.trim_end());
            } else {
                rows.push(vec![
                    g.id().to_string(),
                    format!("n={}", graph.n()),
                    format!("m={}", graph.edge_count()),
                    printed,
                ]);
            }
        }
        print!("{}", table(&rows));
        return Ok(ExitCode::SUCCESS);
    }
    let id = id.expect("clap requires an id without --list");
    let g: NamedGraph = id
        .parse()
        .map_err(|e: spanlab::families::FamilyError| CliError::new(2, e.to_string()))?;
    let graph = g.graph();
    match format {
        Format::Edgelist => print!("{}", emit_edge_list(&graph)),
        Format::Graph6 => println!("{}", emit_graph6(&graph)),
    }
    Ok(ExitCode::SUCCESS)
}
