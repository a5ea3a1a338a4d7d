//! Command-line front end: construct codes from the four families, analyze
//! weight data of arbitrary generator matrices, verify closed forms against
//! the enumeration oracles, and regenerate the bundled reference tables.
//!
//! Exit codes: 0 success / verification passed, 1 verification mismatch,
//! 2 invalid parameters or input, 3 enumeration budget exceeded.

use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use ghwcodes::codes::{CodeJson, GriesmerReport, LinearCode, OptimalityStatus, WeightTableJson};
use ghwcodes::constructions::{
    closed_form, construct, verify, verify_against, ConstructionSpec, SpecJson,
};
use ghwcodes::Error;

#[derive(Parser)]
#[command(
    name = "ghwcodes",
    version,
    about = "Few-weight linear codes: construction, weight data, verification"
)]
struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Pretty)]
    format: Format,
    /// Enumeration budget: the number of subspaces or codewords any single
    /// oracle call may touch.
    #[arg(
        long,
        global = true,
        env = "GHWCODES_BUDGET",
        default_value_t = 10_000_000
    )]
    budget: u64,
    /// Worker threads for enumeration; any value produces identical output.
    #[arg(long, global = true, default_value_t = 1)]
    parallel: usize,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Pretty,
    Json,
    Tsv,
}

#[derive(Subcommand)]
enum Command {
    /// Build a code from family parameters and write its JSON description.
    Construct {
        #[command(flatten)]
        family: FamilyArgs,
        /// Output path for the code JSON; stdout when omitted.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Compute weight data for a code loaded from JSON or built inline.
    Analyze {
        /// Path to a code JSON file.
        #[arg(long = "in", value_name = "PATH", conflicts_with = "spec")]
        input: Option<PathBuf>,
        /// Inline construction spec JSON, e.g.
        /// '{"family":"T42","q":2,"k":5,"u2":2,"u3":3}'.
        #[arg(long)]
        spec: Option<String>,
        /// Subcode support weight distributions: "all" or a comma list of r.
        #[arg(long)]
        sswd: Option<String>,
        /// Generalized Hamming weights: "all" or a comma list of r.
        #[arg(long)]
        ghw: Option<String>,
        /// Full weight distribution.
        #[arg(long)]
        wd: bool,
        /// Griesmer defects per r with the optimality verdict.
        #[arg(long)]
        griesmer: bool,
        /// Print weight tables densely, including zero multiplicities.
        #[arg(long)]
        dense: bool,
    },
    /// Check every closed form of a family spec against the oracles.
    Verify {
        #[command(flatten)]
        family: FamilyArgs,
        /// "all" or a comma list of r values to check.
        #[arg(long, default_value = "all")]
        r: String,
    },
    /// Regenerate one of the bundled reference tables (1-4).
    Table {
        #[arg(long = "paper-table", value_name = "N")]
        paper_table: u8,
    },
    /// Exercise the verification harness: a clean spec must pass and an
    /// injected corruption must be caught.
    Selftest,
}

#[derive(Args)]
struct FamilyArgs {
    /// t33, t35, t42 or t51.
    #[arg(long)]
    family: String,
    #[arg(long)]
    q: u64,
    #[arg(long)]
    k: usize,
    /// Simplex copy count (t33, t35).
    #[arg(long)]
    t: Option<usize>,
    /// Puncturing flag dimensions, e.g. --u 2,3 (t33, t35).
    #[arg(long, value_delimiter = ',')]
    u: Option<Vec<usize>>,
    /// First puncturing dimension (t42).
    #[arg(long)]
    u2: Option<usize>,
    /// Second puncturing dimension (t42).
    #[arg(long)]
    u3: Option<usize>,
    /// Number of removed Vandermonde columns (t51).
    #[arg(long)]
    m: Option<usize>,
}

impl FamilyArgs {
    fn to_spec(&self) -> Result<ConstructionSpec, Error> {
        let json = SpecJson {
            family: self.family.clone(),
            q: self.q,
            k: self.k,
            t: self.t,
            u: self.u.clone(),
            u2: self.u2,
            u3: self.u3,
            m: self.m,
        };
        ConstructionSpec::try_from(&json)
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if cli.budget == 0 || cli.parallel == 0 {
        eprintln!("error: --budget and --parallel must be at least 1");
        return ExitCode::from(2);
    }
    match run(&cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            match e {
                Error::BudgetExceeded { .. } => ExitCode::from(3),
                _ => ExitCode::from(2),
            }
        }
    }
}

fn run(cli: &Cli) -> Result<u8, Error> {
    match &cli.command {
        Command::Construct { family, out } => cmd_construct(cli, family, out.as_deref()),
        Command::Analyze {
            input,
            spec,
            sswd,
            ghw,
            wd,
            griesmer,
            dense,
        } => cmd_analyze(
            cli,
            input.as_deref(),
            spec.as_deref(),
            sswd.as_deref(),
            ghw.as_deref(),
            *wd,
            *griesmer,
            *dense,
        ),
        Command::Verify { family, r } => cmd_verify(cli, family, r),
        Command::Table { paper_table } => cmd_table(cli, *paper_table),
        Command::Selftest => cmd_selftest(cli),
    }
}

fn code_label(code: &LinearCode) -> String {
    format!("[{},{}]_{}", code.n(), code.k(), code.q())
}

fn cmd_construct(
    cli: &Cli,
    family: &FamilyArgs,
    out: Option<&std::path::Path>,
) -> Result<u8, Error> {
    let spec = family.to_spec()?;
    let code = construct(&spec)?;
    let json = serde_json::to_string_pretty(&CodeJson::from(&code))
        .map_err(|e| Error::InvalidInput(e.to_string()))?;

    // The minimum distance is oracle work; report it only when the budget
    // allows.
    let header = match code.ghw(1, cli.budget, cli.parallel) {
        Ok(d) => format!("[{},{},{}]_{}", code.n(), code.k(), d, code.q()),
        Err(Error::BudgetExceeded { .. }) => code_label(&code),
        Err(e) => return Err(e),
    };

    match out {
        Some(path) => {
            fs::write(path, json + "\n")
                .map_err(|e| Error::InvalidInput(format!("cannot write {path:?}: {e}")))?;
            println!("{header} -> {}", path.display());
        }
        None => {
            eprintln!("{header}");
            println!("{json}");
        }
    }
    Ok(0)
}

fn parse_r_selection(text: &str, k: usize) -> Result<Vec<usize>, Error> {
    if text.trim() == "all" {
        return Ok((1..=k).collect());
    }
    let mut rs = Vec::new();
    for part in text.split(',') {
        let r: usize = part
            .trim()
            .parse()
            .map_err(|_| Error::InvalidInput(format!("bad r value {part:?}")))?;
        if r == 0 || r > k {
            return Err(Error::InvalidInput(format!("r = {r} outside 1..={k}")));
        }
        rs.push(r);
    }
    rs.sort_unstable();
    rs.dedup();
    Ok(rs)
}

fn load_code(input: Option<&std::path::Path>, spec: Option<&str>) -> Result<LinearCode, Error> {
    match (input, spec) {
        (Some(path), None) => {
            let text = fs::read_to_string(path)
                .map_err(|e| Error::InvalidInput(format!("cannot read {path:?}: {e}")))?;
            let json: CodeJson = serde_json::from_str(&text)
                .map_err(|e| Error::InvalidInput(format!("bad code JSON: {e}")))?;
            LinearCode::try_from(&json)
        }
        (None, Some(text)) => {
            let json: SpecJson = serde_json::from_str(text)
                .map_err(|e| Error::InvalidInput(format!("bad spec JSON: {e}")))?;
            construct(&ConstructionSpec::try_from(&json)?)
        }
        _ => Err(Error::InvalidInput(
            "exactly one of --in or --spec is required".into(),
        )),
    }
}

/// Weight-table rows in a fixed order; r = 0 denotes the full distribution.
fn table_rows(
    code_id: &str,
    r: usize,
    table: &ghwcodes::codes::WeightTable,
    dense: bool,
    n: usize,
) -> Vec<(String, usize, usize, String)> {
    if dense {
        let lo = if r == 0 { 0 } else { 1 };
        (lo..=n)
            .map(|w| (code_id.to_string(), r, w, table.get(w).to_string()))
            .collect()
    } else {
        table
            .pairs()
            .map(|(w, c)| (code_id.to_string(), r, w, c.to_string()))
            .collect()
    }
}

fn braces(table: &ghwcodes::codes::WeightTable) -> String {
    let inner: Vec<String> = table
        .pairs()
        .filter(|(w, _)| *w > 0)
        .map(|(w, c)| format!("[{w},{c}]"))
        .collect();
    format!("{{{}}}", inner.join(","))
}

fn print_tsv_weight_rows(rows: &[(String, usize, usize, String)]) {
    println!("code_id\tr\tweight\tmultiplicity");
    for (id, r, w, c) in rows {
        println!("{id}\t{r}\t{w}\t{c}");
    }
}

fn griesmer_json(g: &GriesmerReport) -> serde_json::Value {
    serde_json::to_value(g).expect("report serializes")
}

#[allow(clippy::too_many_arguments)]
fn cmd_analyze(
    cli: &Cli,
    input: Option<&std::path::Path>,
    spec: Option<&str>,
    sswd: Option<&str>,
    ghw: Option<&str>,
    wd: bool,
    griesmer: bool,
    dense: bool,
) -> Result<u8, Error> {
    let code = load_code(input, spec)?;
    let id = code_label(&code);
    let k = code.k();
    let n = code.n();

    let sswd_rs = sswd.map(|t| parse_r_selection(t, k)).transpose()?;
    let ghw_rs = ghw.map(|t| parse_r_selection(t, k)).transpose()?;

    let wd_table = if wd {
        Some(code.weight_distribution(cli.budget, cli.parallel)?)
    } else {
        None
    };
    let mut sswd_tables = Vec::new();
    if let Some(rs) = &sswd_rs {
        for &r in rs {
            sswd_tables.push((r, code.sswd_bruteforce(r, cli.budget, cli.parallel)?));
        }
    }
    let mut ghw_values = Vec::new();
    if let Some(rs) = &ghw_rs {
        for &r in rs {
            ghw_values.push((r, code.ghw(r, cli.budget, cli.parallel)?));
        }
    }
    let griesmer_report = if griesmer {
        Some(code.griesmer_report(cli.budget, cli.parallel)?)
    } else {
        None
    };

    match cli.format {
        Format::Pretty => {
            println!("{id} full_support={}", code.full_support());
            if let Some(t) = &wd_table {
                println!("WD: {}", braces(t));
            }
            for (r, t) in &sswd_tables {
                println!("{r}-SSWD: {}", braces(t));
            }
            if !ghw_values.is_empty() {
                let parts: Vec<String> = ghw_values
                    .iter()
                    .map(|(r, d)| format!("d_{r}={d}"))
                    .collect();
                println!("GHW: {}", parts.join(" "));
            }
            if let Some(g) = &griesmer_report {
                if !g.full_support {
                    println!("warning: code has zero columns; defects assume full support");
                }
                for row in &g.rows {
                    println!(
                        "griesmer r={} d_r={} sum={} defect={}",
                        row.r, row.d_r, row.griesmer_sum, row.defect
                    );
                }
                println!(
                    "griesmer_index={} distance_optimal={}",
                    g.r_griesmer_index
                        .map_or("none".to_string(), |r| r.to_string()),
                    match g.distance_optimal {
                        OptimalityStatus::ProvenOptimal => "proven_optimal",
                        OptimalityStatus::NotDetermined => "not_determined",
                    }
                );
            }
        }
        Format::Json => {
            let mut obj = serde_json::json!({
                "code": {
                    "id": id,
                    "n": n,
                    "k": k,
                    "q": code.q(),
                    "full_support": code.full_support(),
                }
            });
            if let Some(t) = &wd_table {
                obj["wd"] = serde_json::to_value(WeightTableJson::from(t)).unwrap();
            }
            if !sswd_tables.is_empty() {
                obj["sswd"] = serde_json::Value::Array(
                    sswd_tables
                        .iter()
                        .map(|(_, t)| serde_json::to_value(WeightTableJson::from(t)).unwrap())
                        .collect(),
                );
            }
            if !ghw_values.is_empty() {
                obj["ghw"] = serde_json::Value::Array(
                    ghw_values
                        .iter()
                        .map(|(r, d)| serde_json::json!({"r": r, "d_r": d}))
                        .collect(),
                );
            }
            if let Some(g) = &griesmer_report {
                obj["griesmer"] = griesmer_json(g);
            }
            println!("{}", serde_json::to_string_pretty(&obj).unwrap());
        }
        Format::Tsv => {
            let mut rows = Vec::new();
            if let Some(t) = &wd_table {
                rows.extend(table_rows(&id, 0, t, dense, n));
            }
            for (r, t) in &sswd_tables {
                rows.extend(table_rows(&id, *r, t, dense, n));
            }
            if !rows.is_empty() {
                print_tsv_weight_rows(&rows);
            }
            if !ghw_values.is_empty() {
                println!("# ghw");
                println!("code_id\tr\td_r");
                for (r, d) in &ghw_values {
                    println!("{id}\t{r}\t{d}");
                }
            }
            if let Some(g) = &griesmer_report {
                println!("# griesmer");
                println!("code_id\tr\td_r\tgriesmer_sum\tdefect");
                for row in &g.rows {
                    println!(
                        "{id}\t{}\t{}\t{}\t{}",
                        row.r, row.d_r, row.griesmer_sum, row.defect
                    );
                }
            }
        }
    }
    Ok(0)
}

fn cmd_verify(cli: &Cli, family: &FamilyArgs, r: &str) -> Result<u8, Error> {
    let spec = family.to_spec()?;
    let rs = parse_r_selection(r, spec.k())?;
    let report = verify(&spec, &rs, cli.budget, cli.parallel)?;
    print_verification(cli, &report);
    if !report.ok() {
        Ok(1)
    } else if !report.skipped.is_empty() {
        Ok(3)
    } else {
        Ok(0)
    }
}

fn print_verification(cli: &Cli, report: &ghwcodes::constructions::VerificationReport) {
    match cli.format {
        Format::Json => {
            println!(
                "{}",
                serde_json::to_string_pretty(&report.to_json()).unwrap()
            );
        }
        Format::Pretty | Format::Tsv => {
            println!(
                "verify {} [{},{}]: {} ({} checks, {} mismatches, {} skipped)",
                report.spec,
                report.n,
                report.k,
                if report.ok() { "ok" } else { "MISMATCH" },
                report.checks_run,
                report.mismatches.len(),
                report.skipped.len()
            );
            for m in &report.mismatches {
                let r = m.r.map_or(String::new(), |r| format!(" r={r}"));
                let w = m.weight.map_or(String::new(), |w| format!(" weight={w}"));
                println!(
                    "mismatch {}{r}{w}: closed-form {} vs oracle {}",
                    m.check, m.expected, m.actual
                );
            }
            for s in &report.skipped {
                let r = s.r.map_or(String::new(), |r| format!(" r={r}"));
                println!("skipped {}{r}: {}", s.check, s.reason);
            }
        }
    }
}

/// The two codes of each bundled reference table and the r values it prints.
fn reference_table_specs(
    idx: u8,
) -> Result<Vec<(&'static str, ConstructionSpec, Vec<usize>)>, Error> {
    let specs = match idx {
        1 => vec![
            (
                "C1",
                ConstructionSpec::T33 {
                    q: 2,
                    k: 4,
                    t: 2,
                    u: vec![2, 3],
                },
                vec![1, 2, 3],
            ),
            (
                "C2",
                ConstructionSpec::T33 {
                    q: 2,
                    k: 4,
                    t: 3,
                    u: vec![2, 3],
                },
                vec![1, 2, 3],
            ),
        ],
        2 => vec![
            (
                "C1",
                ConstructionSpec::T35 {
                    q: 3,
                    k: 4,
                    t: 1,
                    u: vec![1, 2],
                },
                vec![1, 2, 3],
            ),
            (
                "C2",
                ConstructionSpec::T35 {
                    q: 3,
                    k: 4,
                    t: 1,
                    u: vec![1, 3],
                },
                vec![1, 2, 3],
            ),
        ],
        3 => vec![
            (
                "C1",
                ConstructionSpec::T42 {
                    q: 2,
                    k: 5,
                    u2: 2,
                    u3: 3,
                },
                vec![1, 2, 3, 4],
            ),
            (
                "C2",
                ConstructionSpec::T42 {
                    q: 2,
                    k: 5,
                    u2: 2,
                    u3: 4,
                },
                vec![1, 2, 3, 4],
            ),
        ],
        4 => vec![
            (
                "C1",
                ConstructionSpec::T51 { q: 3, k: 3, m: 3 },
                vec![1, 2, 3],
            ),
            (
                "C2",
                ConstructionSpec::T51 { q: 5, k: 4, m: 5 },
                vec![1, 2, 3],
            ),
        ],
        other => {
            return Err(Error::InvalidInput(format!(
                "reference table {other} does not exist; pick 1-4"
            )))
        }
    };
    Ok(specs)
}

fn cmd_table(cli: &Cli, idx: u8) -> Result<u8, Error> {
    let mut rows: Vec<(String, usize, usize, String)> = Vec::new();
    let mut pretty_lines: Vec<String> = Vec::new();
    for (label, spec, rs) in reference_table_specs(idx)? {
        let code = construct(&spec)?;
        pretty_lines.push(format!("{label} {} {}", code_label(&code), spec));
        for r in rs {
            let table = code.sswd_bruteforce(r, cli.budget, cli.parallel)?;
            pretty_lines.push(format!("{label} {r}-SSWD: {}", braces(&table)));
            rows.extend(table_rows(label, r, &table, false, code.n()));
        }
    }
    match cli.format {
        Format::Pretty => {
            for line in pretty_lines {
                println!("{line}");
            }
        }
        Format::Json => {
            let json_rows: Vec<serde_json::Value> = rows
                .iter()
                .map(|(id, r, w, c)| {
                    serde_json::json!({
                        "code_id": id,
                        "r": r,
                        "weight": w,
                        "multiplicity": c,
                    })
                })
                .collect();
            println!(
                "{}",
                serde_json::to_string_pretty(&serde_json::json!({
                    "table": idx,
                    "rows": json_rows,
                }))
                .unwrap()
            );
        }
        Format::Tsv => print_tsv_weight_rows(&rows),
    }
    Ok(0)
}

fn cmd_selftest(cli: &Cli) -> Result<u8, Error> {
    let spec = ConstructionSpec::T33 {
        q: 2,
        k: 4,
        t: 2,
        u: vec![2, 3],
    };
    let rs = vec![1, 2, 3, 4];

    let clean = verify(&spec, &rs, cli.budget, cli.parallel)?;
    let clean_ok = clean.ok() && clean.skipped.is_empty();

    // Corrupt one multiplicity and make sure the harness reports exactly
    // that one disagreement.
    let mut bundle = closed_form(&spec, cli.budget)?;
    let mut corrupted = ghwcodes::codes::WeightTable::new(ghwcodes::codes::TableRole::Sswd(2));
    for (w, c) in bundle.sswd[1].pairs() {
        if w == 15 {
            corrupted.add(w, c + 1u32);
        } else {
            corrupted.add(w, c.clone());
        }
    }
    bundle.sswd[1] = corrupted;
    let caught = verify_against(&spec, &bundle, &[2], cli.budget, cli.parallel)?;
    let corruption_detected = caught.mismatches.len() == 1
        && caught.mismatches[0].check == "sswd"
        && caught.mismatches[0].weight == Some(15);

    match cli.format {
        Format::Json => println!(
            "{}",
            serde_json::to_string_pretty(&serde_json::json!({
                "clean_ok": clean_ok,
                "corruption_detected": corruption_detected,
            }))
            .unwrap()
        ),
        _ => {
            println!("clean verify: {}", if clean_ok { "ok" } else { "FAILED" });
            println!(
                "injected corruption detected: {}",
                if corruption_detected { "yes" } else { "NO" }
            );
        }
    }
    Ok(if clean_ok && corruption_detected { 0 } else { 1 })
}
