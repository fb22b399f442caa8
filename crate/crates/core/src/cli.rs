//! Command-line front end. `run` is pure apart from the thread pool setup:
//! it returns the exit code and the rendered output.

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};

use crate::admissible::{check_wf_bijection, enumerate, enumerate_shifted, exceptional_partition, LevelData};
use crate::brst::{module_homology, sl2_verma_homology, ComplexOptions, FiniteModule, Variant};
use crate::characters::{bk_nonvanishing, euler_character, phi0, phi0_scaled, scan_partition};
use crate::error::{Error, Result};
use crate::rational::{format_rational, int, parse_rational, parse_rational_list};
use crate::rootdata::{CentralizerCartan, GoodGrading, Partition, RowPermutationGroup};
use crate::weights::AffineWeight;

#[derive(Debug, Parser)]
#[command(name = "wchar", version, about = "Characters of type-A W-algebras at admissible level")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Json, global = true)]
    pub format: Format,
    /// Shorthand for `--format table`.
    #[arg(long, global = true)]
    pub table: bool,
    /// Shorthand for `--format csv`.
    #[arg(long, global = true)]
    pub csv: bool,
    /// Shorthand for `--format json` (the default).
    #[arg(long, global = true)]
    pub json: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Table,
    Csv,
}

#[derive(Debug, Args)]
pub struct LevelArgs {
    #[arg(long)]
    pub n: Option<usize>,
    #[arg(long)]
    pub partition: String,
    #[arg(long)]
    pub p: i64,
    #[arg(long)]
    pub q: i64,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Good grading of a partition.
    Grading {
        #[arg(long)]
        n: Option<usize>,
        #[arg(long)]
        partition: String,
    },
    /// Principal admissible weights with membership flags and classes.
    Admissible(LevelArgs),
    /// The exceptional partition for `k + n = p / q`.
    Exceptional {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        p: i64,
        #[arg(long)]
        q: i64,
        /// Also scan every partition for almost convergence.
        #[arg(long)]
        scan: bool,
    },
    /// Euler-Poincare character as a truncated q-series.
    Character {
        #[command(flatten)]
        level: LevelArgs,
        /// `q <lambda_bar + rho_bar, alpha_i^vee>` for the simple roots.
        #[arg(long, allow_hyphen_values = true)]
        weight: String,
        #[arg(long, default_value_t = 8)]
        order: u32,
        #[arg(long, default_value_t = 6)]
        cone_depth: u32,
    },
    /// Top-part character and its limit at the origin.
    Phi0 {
        #[command(flatten)]
        level: LevelArgs,
        #[arg(long, allow_hyphen_values = true)]
        weight: String,
    },
    /// Nonvanishing criterion and W^f classes.
    Classify {
        #[arg(long)]
        n: Option<usize>,
        #[arg(long)]
        partition: String,
        #[arg(long)]
        p: Option<i64>,
        #[arg(long)]
        q: Option<i64>,
        /// Check a single finite weight `lambda_bar` (epsilon coordinates) instead.
        #[arg(long, allow_hyphen_values = true)]
        lambda_bar: Option<String>,
    },
    /// Brute-force BRST homology of a finite-dimensional module.
    Oracle {
        #[arg(long)]
        n: Option<usize>,
        #[arg(long)]
        partition: String,
        /// `trivial`, `vector`, `adjoint`, `hw <labels>` or `verma` (sl_2).
        #[arg(long, num_args = 1..=2, required = true)]
        module: Vec<String>,
        /// `<lambda_bar + rho_bar, alpha^vee>` for `--module verma`.
        #[arg(long, allow_hyphen_values = true)]
        verma_x: Option<String>,
        #[arg(long, default_value_t = 8)]
        verma_depth: usize,
        /// Use all negative roots instead of the grading-negative ones.
        #[arg(long)]
        nminus: bool,
        #[arg(long, default_value = "1")]
        chi_scale: String,
    },
    /// Run the acceptance suites.
    Verify {
        #[arg(long)]
        criterion: Option<u8>,
    },
}

/// Rendered result of one invocation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

fn partition_for(n: Option<usize>, s: &str) -> Result<Partition> {
    let part = Partition::parse(s)?;
    if let Some(n) = n {
        if part.n() != n {
            return Err(Error::InvalidPartition(format!("{s} is not a partition of {n}")));
        }
    }
    Ok(part)
}

fn setup(level: &LevelArgs) -> Result<(LevelData, GoodGrading)> {
    let part = partition_for(level.n, &level.partition)?;
    let data = LevelData::new(part.n(), level.p, level.q)?;
    Ok((data, GoodGrading::new(&part)?))
}

fn weight_from(level: &LevelData, s: &str) -> Result<AffineWeight> {
    let j = parse_rational_list(s)?;
    if j.len() + 1 != level.n {
        return Err(Error::InvalidInput(format!("--weight needs {} entries", level.n - 1)));
    }
    Ok(AffineWeight::from_shifted_simple(&j, level.q, level.k()))
}

/// A tabular view: header and rows of cells.
struct Table {
    header: Vec<String>,
    rows: Vec<Vec<String>>,
}

impl Table {
    fn new(header: &[&str]) -> Self {
        Self {
            header: header.iter().map(ToString::to_string).collect(),
            rows: Vec::new(),
        }
    }

    fn push(&mut self, row: Vec<String>) {
        self.rows.push(row);
    }

    fn render(&self, format: Format) -> String {
        match format {
            Format::Csv => {
                let quote = |c: &String| {
                    if c.contains([',', '"']) {
                        format!("\"{}\"", c.replace('"', "\"\""))
                    } else {
                        c.clone()
                    }
                };
                std::iter::once(&self.header)
                    .chain(&self.rows)
                    .map(|r| r.iter().map(quote).collect::<Vec<_>>().join(","))
                    .map(|l| l + "\n")
                    .collect()
            }
            _ => {
                let mut widths: Vec<usize> = self.header.iter().map(String::len).collect();
                for r in &self.rows {
                    for (w, c) in widths.iter_mut().zip(r) {
                        *w = (*w).max(c.len());
                    }
                }
                std::iter::once(&self.header)
                    .chain(&self.rows)
                    .map(|r| {
                        let cells: Vec<String> = r.iter().zip(&widths).map(|(c, w)| format!("{c:<w$}")).collect();
                        cells.join("  ").trim_end().to_string() + "\n"
                    })
                    .collect()
            }
        }
    }
}

struct Rendered {
    json: Value,
    table: Table,
    /// Nonzero exit for report-valued failures (verify).
    code: i32,
}

fn join<T: ToString>(v: &[T]) -> String {
    v.iter().map(ToString::to_string).collect::<Vec<_>>().join(" ")
}

fn with_schema<T: Serialize>(v: &T) -> Value {
    let mut value = serde_json::to_value(v).expect("serializable");
    if let Value::Object(map) = &mut value {
        map.insert("schema".into(), json!(1));
    }
    value
}

fn execute(cmd: &Command) -> Result<Rendered> {
    match cmd {
        Command::Grading { n, partition } => {
            let part = partition_for(*n, partition)?;
            let g = GoodGrading::new(&part)?;
            let audit = g.audit()?;
            let mut json = serde_json::to_value(g.to_json()).expect("serializable");
            json["audit"] = serde_json::to_value(&audit).expect("serializable");
            let mut table = Table::new(&["box", "row", "col", "x0", "h0"]);
            for b in 0..g.n() {
                table.push(vec![
                    (b + 1).to_string(),
                    g.row(b).to_string(),
                    g.col(b).to_string(),
                    format_rational(&g.x0()[b]),
                    g.h0()[b].to_string(),
                ]);
            }
            table.push(vec!["d_chi".into(), g.dchi().to_string()]);
            Ok(Rendered { json, table, code: 0 })
        }
        Command::Admissible(level) => {
            let (data, g) = setup(level)?;
            let set = enumerate(&data, &g)?;
            let report = check_wf_bijection(&set, &RowPermutationGroup::new(&g), g.partition() == &exceptional_partition(data.n, data.p, data.q)?);
            let mut json = with_schema(&set);
            json["counts"] = json!({
                "admissible": set.weights.len(),
                "mtilde": set.mtilde_count(),
                "mk": set.mk_count(),
                "classes": set.classes.len(),
            });
            json["bijection"] = serde_json::to_value(&report).expect("serializable");
            let mut table = Table::new(&["J", "simple", "mtilde", "p0plus", "mk", "class"]);
            for w in &set.weights {
                table.push(vec![
                    join(&w.shifted),
                    join(&w.simple),
                    w.in_mtilde.to_string(),
                    w.in_p0plus.to_string(),
                    w.in_mk.to_string(),
                    w.class.map_or("-".into(), |c| c.to_string()),
                ]);
            }
            Ok(Rendered { json, table, code: 0 })
        }
        Command::Exceptional { n, p, q, scan } => {
            let part = exceptional_partition(*n, *p, *q)?;
            let mut json = json!({"schema": 1, "n": n, "p": p, "q": q, "partition": part.to_string()});
            let mut table = Table::new(&["partition", "mtilde", "almost_convergent", "zero", "divergent"]);
            if *scan {
                let level = LevelData::new(*n, *p, *q)?;
                let shifted = enumerate_shifted(&level);
                let mut scans = Vec::new();
                for other in Partition::all(*n) {
                    let s = scan_partition(&shifted, *q, &GoodGrading::new(&other)?)?;
                    table.push(vec![
                        s.partition.clone(),
                        s.mtilde.to_string(),
                        s.almost_convergent.to_string(),
                        s.zero.to_string(),
                        s.divergent.as_ref().map_or("-".into(), |j| join(j)),
                    ]);
                    scans.push(s);
                }
                json["scan"] = serde_json::to_value(&scans).expect("serializable");
            } else {
                table.push(vec![part.to_string()]);
            }
            Ok(Rendered { json, table, code: 0 })
        }
        Command::Character {
            level,
            weight,
            order,
            cone_depth,
        } => {
            let (data, g) = setup(level)?;
            let lam = weight_from(&data, weight)?;
            let c = CentralizerCartan::new(&g);
            let ch = euler_character(&lam, &g, &c, *order, *cone_depth)?;
            let json = serde_json::to_value(ch.to_json()).expect("serializable");
            let mut table = Table::new(&["d", "xi", "coefficient"]);
            for ((d, xi), v) in &ch.terms {
                table.push(vec![d.to_string(), join(xi), v.to_string()]);
            }
            Ok(Rendered { json, table, code: 0 })
        }
        Command::Phi0 { level, weight } => {
            let (data, g) = setup(level)?;
            let lam = weight_from(&data, weight)?;
            let c = CentralizerCartan::new(&g);
            let ph = phi0(&lam, &g, &c)?;
            let json = with_schema(&ph);
            let mut table = Table::new(&["xi", "coefficient"]);
            for (xi, v) in &ph.numerator {
                table.push(vec![join(xi), v.to_string()]);
            }
            table.push(vec!["limit".into(), ph.dimlimit.as_string()]);
            Ok(Rendered { json, table, code: 0 })
        }
        Command::Classify {
            n,
            partition,
            p,
            q,
            lambda_bar,
        } => {
            let part = partition_for(*n, partition)?;
            let g = GoodGrading::new(&part)?;
            if let Some(s) = lambda_bar {
                let lam = parse_rational_list(s)?;
                if lam.len() != g.n() {
                    return Err(Error::InvalidInput(format!("--lambda-bar needs {} entries", g.n())));
                }
                let ok = bk_nonvanishing(&lam, &g);
                let mut table = Table::new(&["lambda_bar", "nonvanishing"]);
                table.push(vec![s.clone(), ok.to_string()]);
                let json = json!({"schema": 1, "lambda_bar": s, "nonvanishing": ok});
                return Ok(Rendered { json, table, code: 0 });
            }
            let (Some(p), Some(q)) = (p, q) else {
                return Err(Error::InvalidInput("classify needs --p and --q, or --lambda-bar".into()));
            };
            let data = LevelData::new(part.n(), *p, *q)?;
            let set = enumerate(&data, &g)?;
            let c = CentralizerCartan::new(&g);
            let exceptional = part == exceptional_partition(data.n, *p, *q)?;
            let report = check_wf_bijection(&set, &RowPermutationGroup::new(&g), exceptional);
            let mut rows = Vec::new();
            let mut table = Table::new(&["J", "class", "mk", "nonvanishing", "limit"]);
            for w in set.mtilde() {
                let lam_bar: Vec<_> = w.weight.classical().to_vec();
                let nonvanishing = bk_nonvanishing(&lam_bar, &g);
                let limit = phi0_scaled(&w.shifted, *q, &g, &c)?.dimlimit.as_string();
                table.push(vec![
                    join(&w.shifted),
                    w.class.map_or("-".into(), |c| c.to_string()),
                    w.in_mk.to_string(),
                    nonvanishing.to_string(),
                    limit.clone(),
                ]);
                rows.push(json!({
                    "J": w.shifted,
                    "class": w.class,
                    "in_mk": w.in_mk,
                    "nonvanishing": nonvanishing,
                    "dimlimit": limit,
                }));
            }
            let json = json!({
                "schema": 1,
                "partition": part.to_string(),
                "exceptional": exceptional,
                "weights": rows,
                "bijection": report,
            });
            Ok(Rendered { json, table, code: 0 })
        }
        Command::Oracle {
            n,
            partition,
            module,
            verma_x,
            verma_depth,
            nminus,
            chi_scale,
        } => {
            let part = partition_for(*n, partition)?;
            let g = GoodGrading::new(&part)?;
            let opts = ComplexOptions {
                variant: if *nminus {
                    Variant::NegativeNilradical
                } else {
                    Variant::GradingNegative
                },
                chi_scale: parse_rational(chi_scale)?,
            };
            if opts.chi_scale == int(0) {
                return Err(Error::InvalidInput("--chi-scale must be nonzero".into()));
            }
            let kind = module[0].as_str();
            let arg = module.get(1);
            let nn = g.n();
            let report = match kind {
                "trivial" => module_homology(&FiniteModule::trivial(nn), &g, opts)?,
                "vector" => module_homology(&FiniteModule::vector(nn), &g, opts)?,
                "adjoint" => module_homology(&FiniteModule::adjoint(nn), &g, opts)?,
                "hw" => {
                    let labels: Vec<u32> = arg
                        .ok_or_else(|| Error::InvalidInput("hw needs Dynkin labels".into()))?
                        .split(',')
                        .map(|s| s.trim().parse::<u32>())
                        .collect::<std::result::Result<_, _>>()
                        .map_err(|e| Error::InvalidInput(format!("Dynkin labels: {e}")))?;
                    if labels.len() + 1 != nn {
                        return Err(Error::InvalidInput(format!("hw needs {} labels", nn - 1)));
                    }
                    module_homology(&FiniteModule::highest_weight(&labels), &g, opts)?
                }
                "verma" => {
                    let x = verma_x
                        .as_deref()
                        .ok_or_else(|| Error::InvalidInput("--module verma needs --verma-x".into()))?;
                    let x = parse_rational(x)?;
                    sl2_verma_homology(x, *verma_depth, &g)?
                }
                other => return Err(Error::InvalidInput(format!("unknown module {other}"))),
            };
            let json = with_schema(&report);
            let mut table = Table::new(&["degree", "chain_dim", "homology"]);
            for (p, (c, h)) in report.chain_dims.iter().zip(&report.dims).enumerate() {
                table.push(vec![p.to_string(), c.to_string(), h.to_string()]);
            }
            Ok(Rendered { json, table, code: 0 })
        }
        Command::Verify { criterion } => {
            let mut reports = Vec::new();
            let mut code = 0;
            for id in 1..=8u8 {
                if criterion.is_some_and(|c| c != id) {
                    continue;
                }
                let r = crate::verify::run_all(Some(id)).pop().expect("one suite");
                let failed = !r.passed;
                reports.push(r);
                if failed {
                    code = 2;
                    break;
                }
            }
            let mut table = Table::new(&["criterion", "result", "checks", "seconds", "detail"]);
            for r in &reports {
                table.push(vec![
                    r.id.to_string(),
                    if r.passed { "PASS".into() } else { "FAIL".into() },
                    r.checked.to_string(),
                    format!("{:.2}", r.seconds),
                    r.repro.as_ref().map_or(r.detail.clone(), |c| format!("{} (reproduce: {c})", r.detail)),
                ]);
            }
            // the only nondeterministic field is the timing
            let json = json!({"schema": 1, "passed": code == 0, "criteria": reports});
            Ok(Rendered { json, table, code })
        }
    }
}

fn init_threads() {
    if let Some(n) = std::env::var("WCHAR_THREADS").ok().and_then(|s| s.parse::<usize>().ok()) {
        // a second call (tests) fails harmlessly
        let _ = rayon::ThreadPoolBuilder::new().num_threads(n.max(1)).build_global();
    }
}

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let text = e.render().to_string();
            return if code == 0 {
                Outcome {
                    code,
                    stdout: text,
                    stderr: String::new(),
                }
            } else {
                Outcome {
                    code,
                    stdout: String::new(),
                    stderr: text,
                }
            };
        }
    };
    init_threads();
    let format = if cli.table {
        Format::Table
    } else if cli.csv {
        Format::Csv
    } else if cli.json {
        Format::Json
    } else {
        cli.format
    };
    match execute(&cli.command) {
        Ok(r) => Outcome {
            code: r.code,
            stdout: match format {
                Format::Json => serde_json::to_string_pretty(&r.json).expect("serializable") + "\n",
                f => r.table.render(f),
            },
            stderr: String::new(),
        },
        Err(e) => {
            let code = if e.is_audit_failure() { 2 } else { 1 };
            let kind = if code == 2 { "audit failure" } else { "precondition failed" };
            Outcome {
                code,
                stdout: String::new(),
                stderr: format!("wchar: {kind}: {e}\n"),
            }
        }
    }
}
