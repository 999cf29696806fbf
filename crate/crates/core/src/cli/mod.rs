//! The `llfact` command line: `info`, `verify`, `count` and `table`.

pub mod cache;
pub mod report;
pub mod verify;

use std::ffi::OsString;
use std::path::PathBuf;
use std::sync::Arc;
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};

pub use report::{Check, Format, Report, Row};
pub use verify::{build_report, enumerate, Enumerated};

use crate::closedform::{self, format_entries};
use crate::error::{Error, Result};
use crate::facto;
use crate::groups::{Budget, Group, GroupSpec};
use crate::ncp::build_nc;
use cache::Cache;

pub const VERSION: &str = env!("CARGO_PKG_VERSION");

/// Exit status for a failed check.
pub const EXIT_FAIL: i32 = 1;
/// Exit status for a parse or usage error.
pub const EXIT_USAGE: i32 = 2;
/// Exit status for a budget refusal.
pub const EXIT_BUDGET: i32 = 3;

#[derive(Debug, Parser)]
#[command(name = "llfact", version, about = "Exact factorization counts for well-generated reflection groups")]
pub struct Cli {
    /// Output format.
    #[arg(long, value_enum, default_value = "md", global = true)]
    pub format: Format,
    /// JSON file caching enumeration results.
    #[arg(long, global = true)]
    pub cache: Option<PathBuf>,
    /// Ignore the cache even when `--cache` is given.
    #[arg(long, global = true)]
    pub no_cache: bool,
    /// Largest group order to enumerate (also unlocks E7).
    #[arg(long, global = true)]
    pub budget: Option<u64>,
    /// Record wall-clock time in the report.
    #[arg(long, global = true)]
    pub timings: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Degree data and closed-form counts.
    Info { group: String },
    /// Run the full identity suite; exits 1 if any check fails.
    Verify {
        group: String,
        /// Largest p for the multichain and binomial identities.
        #[arg(long, default_value_t = 4)]
        p_max: u32,
    },
    /// Count factorizations of the Coxeter element.
    Count {
        group: String,
        kind: CountKind,
        /// Number of blocks, for `fact-k`.
        k: Option<usize>,
        /// Block lengths such as `2,1,1`, for `composition`.
        #[arg(long)]
        composition: Option<String>,
    },
    /// Show a table row next to the enumerated one, or a whole family.
    Table {
        /// A group such as `H4`, or a row label such as `G(e,e,4)` or `B_n`.
        name: Option<String>,
        /// Write the table as JSON to this path.
        #[arg(long)]
        export: Option<PathBuf>,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum CountKind {
    Red,
    FactK,
    Composition,
    ByClass,
}

/// Exit status for an error.
pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::BudgetExceeded { .. } => EXIT_BUDGET,
        Error::Parse(_)
        | Error::UnsupportedGroup(_)
        | Error::InvalidParameter(_)
        | Error::InvalidComposition(_)
        | Error::RankTooSmall { .. } => EXIT_USAGE,
        _ => EXIT_FAIL,
    }
}

/// Parses arguments, runs the command, prints the report and returns the exit status.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { EXIT_USAGE } else { 0 };
        }
    };
    let start = Instant::now();
    match execute(&cli) {
        Ok(mut report) => {
            if cli.timings {
                report.meta.seconds = Some(format!("{:.3}", start.elapsed().as_secs_f64()));
            }
            print!("{}", report.render(cli.format));
            if report.pass() {
                0
            } else {
                EXIT_FAIL
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            exit_code(&e)
        }
    }
}

fn budget_of(cli: &Cli) -> Budget {
    cli.budget.map(Budget::explicit).unwrap_or_default()
}

fn parse_group(s: &str) -> Result<GroupSpec> {
    s.parse()
}

/// Runs a parsed command line.
pub fn execute(cli: &Cli) -> Result<Report> {
    let budget = budget_of(cli);
    match &cli.command {
        Command::Info { group } => info(parse_group(group)?, budget),
        Command::Verify { group, p_max } => {
            let cache = if cli.no_cache { None } else { cli.cache.clone() };
            verify_cached(parse_group(group)?, budget, *p_max, cache)
        }
        Command::Count { group, kind, k, composition } => {
            count(parse_group(group)?, budget, *kind, *k, composition.as_deref())
        }
        Command::Table { name, export } => table(name.as_deref(), budget, export.clone()),
    }
}

/// Degree data and closed forms; nothing is enumerated.
pub fn info(spec: GroupSpec, budget: Budget) -> Result<Report> {
    let group = Group::new(spec, budget)?;
    let mut r = Report::new(spec.to_string(), budget.max_order);
    let degrees: Vec<String> = group.degrees().iter().map(ToString::to_string).collect();
    r.value("rank", group.rank());
    r.value("degrees", degrees.join(", "));
    r.value("h", group.coxeter_number());
    r.value("|W|", group.order());
    r.value("reflections", group.reflections().len());
    r.value("Cat", closedform::chapoton_rhs(&group, 1)?);
    r.value("LL-number", closedform::ll_number(&group)?);
    r.value("deg D_LL", closedform::deg_discriminant(&group));
    r.value("deg J_LL", closedform::deg_jacobian(&group));
    if group.rank() >= 2 {
        r.value("submaximal total", closedform::submax_total_closed(&group)?);
    }
    match closedform::expected_ll_data(spec) {
        Ok(row) => r.value("table row", row),
        Err(Error::NoTableRow(why)) => r.note(why),
        Err(e) => return Err(e),
    }
    Ok(r)
}

/// The identity suite without a cache.
pub fn verify(spec: GroupSpec, budget: Budget, p_max: u32) -> Result<Report> {
    verify_cached(spec, budget, p_max, None)
}

pub fn verify_cached(spec: GroupSpec, budget: Budget, p_max: u32, cache: Option<PathBuf>) -> Result<Report> {
    budget.check(spec)?;
    let group = Arc::new(Group::new(spec, budget)?);
    let data = match cache {
        Some(path) => {
            let mut cache = Cache::open(&path);
            match cache.get(&spec.to_string(), VERSION, p_max) {
                Some(hit) => hit.clone(),
                None => {
                    let data = enumerate(&group, p_max)?;
                    cache.insert(data.clone());
                    cache.save()?;
                    data
                }
            }
        }
        None => enumerate(&group, p_max)?,
    };
    build_report(&group, &data)
}

fn parse_composition(s: &str) -> Result<Vec<usize>> {
    s.split(',')
        .map(|x| x.trim().parse().map_err(|_| Error::Parse(format!("bad composition {s:?}"))))
        .collect()
}

pub fn count(spec: GroupSpec, budget: Budget, kind: CountKind, k: Option<usize>, composition: Option<&str>) -> Result<Report> {
    budget.check(spec)?;
    let group = Arc::new(Group::new(spec, budget)?);
    let nc = build_nc(group)?;
    let mut r = Report::new(spec.to_string(), budget.max_order);
    match kind {
        CountKind::Red => r.value("|Red(c)|", facto::count_reduced_decompositions(&nc)),
        CountKind::FactK => {
            let k = k.ok_or_else(|| Error::Parse("fact-k needs the number of blocks".into()))?;
            r.value(format!("fact_{k}"), facto::count_fact_k(&nc, k)?);
        }
        CountKind::Composition => {
            let s = composition.ok_or_else(|| Error::Parse("composition needs --composition".into()))?;
            let comp = parse_composition(s)?;
            r.value(format!("fact({s})"), facto::count_fact_by_composition(&nc, &comp)?);
        }
        CountKind::ByClass => {
            for c in verify::class_rows(&nc)? {
                r.value(format!("{} {}", c.label, c.class_id), &c.count);
                r.rows.push(row_of(&c));
            }
        }
    }
    Ok(r)
}

fn row_of(c: &verify::ClassData) -> Row {
    Row {
        class_id: c.class_id.clone(),
        r: c.r.to_string(),
        u: c.u.to_string(),
        count: c.count.clone(),
        d1p: c.d1p.to_string(),
        hp: c.hp.to_string(),
    }
}

pub fn table(name: Option<&str>, budget: Budget, export: Option<PathBuf>) -> Result<Report> {
    let mut r = match name {
        None if export.is_some() => Report::new("table", budget.max_order),
        None => return Err(Error::Parse("table needs a group, a row label or --export".into())),
        Some(name) => match parse_group(name) {
            Ok(spec) => table_for_group(spec, budget)?,
            Err(group_err) => {
                let rows = closedform::find_rows(name);
                if rows.is_empty() {
                    return Err(group_err);
                }
                let mut r = Report::new(name, budget.max_order);
                for row in rows {
                    let entries: Vec<String> = row.entries.iter().map(|[p, u]| format!("{p}·({u})")).collect();
                    r.value(
                        format!("{} [{}]", row.label, row.condition()),
                        format!("prefactor {}; {}", row.prefactor, entries.join(" + ")),
                    );
                    if !row.isodiscriminantal.is_empty() {
                        r.note(format!("{}: isodiscriminantal {}", row.label, row.isodiscriminantal.join(", ")));
                    }
                }
                r
            }
        },
    };
    if let Some(path) = export {
        cache::write_atomic(&path, closedform::export_table_json().as_bytes())?;
        r.note(format!("table written to {}", path.display()));
    }
    Ok(r)
}

fn table_for_group(spec: GroupSpec, budget: Budget) -> Result<Report> {
    let mut r = Report::new(spec.to_string(), budget.max_order);
    let expected = match closedform::expected_ll_data(spec) {
        Ok(row) => {
            r.value("expected", format!("{} (prefactor {})", format_entries(&row.sorted_entries()), row.prefactor));
            Some(row)
        }
        Err(Error::NoTableRow(why)) => {
            r.note(why);
            None
        }
        Err(e) => return Err(e),
    };
    if let Err(e @ Error::BudgetExceeded { .. }) = budget.check(spec) {
        r.note(format!("enumeration skipped: {e}"));
        return Ok(r);
    }
    let nc = build_nc(Arc::new(Group::new(spec, budget)?))?;
    let classes = verify::class_rows(&nc)?;
    let mut pairs: Vec<(u64, u64)> = classes.iter().map(|c| (c.r, c.u)).collect();
    pairs.sort_unstable();
    r.value("enumerated", format_entries(&pairs));
    r.rows = classes.iter().map(row_of).collect();
    if let Some(row) = expected {
        r.check(Check::new(format!("table row {}", row.label), format_entries(&row.sorted_entries()), format_entries(&pairs)));
    }
    Ok(r)
}
