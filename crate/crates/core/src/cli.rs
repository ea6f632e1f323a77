//! Command-line front end.

use std::fmt::Write as _;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::campaign::{obstruct, Campaign};
use crate::catalog::{catalog, lookup, Knot, KnotEntry};
use crate::covers::{entropy_profile, EntropyOptions, EntropyProfile, GrowthRule};
use crate::error::{Error, Result};
use crate::groups::{group_family, GroupSpec, DEFAULT_ORDER_BOUND};
use crate::homs::{SearchBudget, DEFAULT_SEARCH_BUDGET};
use crate::presentation::Presentation;
use crate::twisted::{fibering_report, FiberingReport, TwistedOptions};

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_BUDGET: i32 = 3;
pub const EXIT_INTERNAL: i32 = 4;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Tsv,
    Text,
}

#[derive(Debug, Parser)]
#[command(name = "knotshift", version, about = "Twisted Alexander polynomials and fibering obstructions for knots")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,

    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    pub format: Format,

    /// Worker threads (0: one per core).
    #[arg(long, global = true, default_value_t = 0)]
    pub jobs: usize,

    /// Node budget for each homomorphism search.
    #[arg(long, global = true, env = "KNOTSHIFT_BUDGET", default_value_t = DEFAULT_SEARCH_BUDGET,
          value_parser = clap::value_parser!(u64).range(1..))]
    pub budget: u64,

    /// Largest group order accepted in a group spec.
    #[arg(long, global = true, default_value_t = DEFAULT_ORDER_BOUND)]
    pub order_bound: usize,

    /// Extra knots, one `name; strands; braid; genus; fibered` per line.
    #[arg(long, global = true)]
    pub knots_file: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// List the knot catalog.
    Knots {
        /// Show one knot only.
        #[arg(long)]
        name: Option<String>,
    },
    /// Twisted Alexander polynomials of every representation into a group.
    Twisted {
        #[command(flatten)]
        knot: KnotArgs,
        /// Target group, e.g. `symmetric:3` or `perm:(0 1 2);(0 1)`.
        #[arg(long)]
        group: String,
        /// Compose with the regular representation of the group.
        #[arg(long)]
        regular: bool,
        /// Skip the second column block recomputation.
        #[arg(long)]
        no_recheck: bool,
    },
    /// Periodic point counts over cyclic branched covers.
    Entropy {
        #[command(flatten)]
        knot: KnotArgs,
        /// Target group.
        #[arg(long)]
        group: String,
        /// Largest cover degree.
        #[arg(long, value_parser = clap::value_parser!(u64).range(2..))]
        rmax: u64,
        /// Growth threshold on successive rates.
        #[arg(long, default_value_t = 0.05)]
        delta: f64,
        /// Number of trailing rates compared.
        #[arg(long, default_value_t = 3)]
        window: usize,
        /// Use unbranched covers.
        #[arg(long)]
        unbranched: bool,
    },
    /// Search small groups for fibering obstructions.
    Obstruct {
        #[command(flatten)]
        knot: KnotArgs,
        /// Largest group order in the sweep.
        #[arg(long, default_value_t = 24)]
        max_order: usize,
        /// Skip the second column block recomputation.
        #[arg(long)]
        no_recheck: bool,
    },
}

#[derive(Debug, Args)]
pub struct KnotArgs {
    /// Catalog name, or a label for `--pres`.
    pub knot: String,
    /// Read the knot group from a presentation file.
    #[arg(long)]
    pub pres: Option<PathBuf>,
}

/// Rendered output and whether any search ran out of budget.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Output {
    pub text: String,
    pub overflow: bool,
}

pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::BudgetExceeded { .. } => EXIT_BUDGET,
        Error::Internal(_) => EXIT_INTERNAL,
        _ => EXIT_USAGE,
    }
}

fn extra_knots(cli: &Cli) -> Result<Vec<KnotEntry>> {
    match &cli.knots_file {
        Some(path) => KnotEntry::parse_file(&std::fs::read_to_string(path)?),
        None => Ok(Vec::new()),
    }
}

fn resolve_knot(cli: &Cli, args: &KnotArgs) -> Result<Knot> {
    if let Some(path) = &args.pres {
        let (presentation, genus) = Presentation::parse_text(&std::fs::read_to_string(path)?)?;
        return Ok(Knot { name: args.knot.clone(), presentation, genus, fibered: None });
    }
    if let Some(e) = extra_knots(cli)?.into_iter().find(|e| e.name == args.knot) {
        return e.knot();
    }
    lookup(&args.knot)?.knot()
}

fn json<T: serde::Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("serializable");
    s.push('\n');
    s
}

/// Runs a parsed command line.
pub fn run(cli: &Cli) -> Result<Output> {
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(cli.jobs)
        .build()
        .map_err(|e| Error::Internal(e.to_string()))?;
    pool.install(|| dispatch(cli))
}

fn dispatch(cli: &Cli) -> Result<Output> {
    let budget = SearchBudget { max_nodes: cli.budget };
    let group = |spec: &str| -> Result<_> { group_family(&spec.parse::<GroupSpec>()?, cli.order_bound) };
    match &cli.command {
        Command::Knots { name } => {
            let mut entries: Vec<KnotEntry> = catalog().to_vec();
            entries.extend(extra_knots(cli)?);
            if let Some(n) = name {
                entries.retain(|e| &e.name == n);
                if entries.is_empty() {
                    return Err(Error::UnknownKnot(n.clone()));
                }
            }
            Ok(Output { text: render_knots(&entries, cli.format), overflow: false })
        }
        Command::Twisted { knot, group: spec, regular, no_recheck } => {
            let knot = resolve_knot(cli, knot)?;
            let g = group(spec)?;
            let options = TwistedOptions { recheck_column: !no_recheck, budget, ..Default::default() };
            let report = fibering_report(&knot, &g, *regular, options)?;
            Ok(Output { text: render_twisted(&report, cli.format), overflow: false })
        }
        Command::Entropy { knot, group: spec, rmax, delta, window, unbranched } => {
            let knot = resolve_knot(cli, knot)?;
            let g = group(spec)?;
            let options = EntropyOptions {
                rule: GrowthRule { delta: *delta, window: *window },
                budget,
                unbranched: *unbranched,
            };
            let profile = entropy_profile(&knot.name, &knot.presentation, &g, *rmax as usize, options)?;
            let overflow = profile.counts.iter().any(Option::is_none);
            Ok(Output { text: render_entropy(&profile, cli.format), overflow })
        }
        Command::Obstruct { knot, max_order, no_recheck } => {
            let knot = resolve_knot(cli, knot)?;
            let options = TwistedOptions { recheck_column: !no_recheck, budget, ..Default::default() };
            let c = obstruct(&knot, *max_order, options)?;
            let overflow = c.sweep.outcomes.iter().any(|o| o.budget_exceeded);
            Ok(Output { text: render_campaign(&c, cli.format), overflow })
        }
    }
}

fn render_knots(entries: &[KnotEntry], format: Format) -> String {
    let rows: Vec<_> = entries.iter().map(KnotEntry::summary).collect();
    match format {
        Format::Json => json(&rows),
        Format::Tsv | Format::Text => {
            let sep = if format == Format::Tsv { "\t" } else { "  " };
            let mut out = ["name", "strands", "braid", "genus", "fibered", "alexander"].join(sep);
            out.push('\n');
            for r in rows {
                let braid: Vec<String> = r.braid.iter().map(|b| b.to_string()).collect();
                let cells = [
                    r.name,
                    r.strands.to_string(),
                    braid.join(","),
                    r.genus.to_string(),
                    r.fibered.to_string(),
                    r.alexander,
                ];
                out.push_str(&cells.join(sep));
                out.push('\n');
            }
            out
        }
    }
}

fn render_twisted(report: &FiberingReport, format: Format) -> String {
    let opt = |v: Option<i64>| v.map_or("-".to_string(), |x| x.to_string());
    let optb = |v: Option<bool>| v.map_or("-".to_string(), |x| x.to_string());
    match format {
        Format::Json => json(&report.to_json()),
        Format::Tsv => {
            let mut out = String::from("knot\tgroup\trepresentation\trep_images\tn\torbit_count\tdelta\tmonic\tdegree\tdegree_expected\tverdict\n");
            for r in &report.reports {
                let j = r.to_json();
                let _ = writeln!(
                    out,
                    "{}\t{}\t{}\t{}\t{}\t{}\t{}\t{}\t{}\t{}\t{}",
                    j.knot,
                    j.group,
                    serde_json::to_value(j.representation).unwrap().as_str().unwrap(),
                    j.rep_images.join(","),
                    j.n,
                    j.orbit_count,
                    j.delta,
                    optb(j.monic),
                    opt(j.degree),
                    opt(j.degree_expected),
                    j.verdict
                );
            }
            out
        }
        Format::Text => {
            let mut out = String::new();
            let rep = serde_json::to_value(report.representation).unwrap();
            let _ = writeln!(
                out,
                "{} against {} ({} representation), {} homomorphisms",
                report.knot,
                report.group,
                rep.as_str().unwrap(),
                report.reports.len()
            );
            for r in &report.reports {
                let _ = writeln!(
                    out,
                    "[{}] n={} O={} delta={} monic={} degree={} expected={} {}",
                    r.rep_images.join(", "),
                    r.n,
                    r.orbit_count,
                    r.delta,
                    optb(r.is_monic),
                    opt(r.degree_actual),
                    opt(r.degree_expected),
                    r.verdict()
                );
            }
            let _ = writeln!(out, "verdict: {}", report.verdict());
            out
        }
    }
}

fn render_entropy(p: &EntropyProfile, format: Format) -> String {
    match format {
        Format::Json => json(p),
        Format::Tsv => p.to_tsv(),
        Format::Text => {
            let mut out = format!("{} against {}\n", p.knot, p.group);
            for (i, (c, rate)) in p.counts.iter().zip(&p.rates).enumerate() {
                let c = c.map_or("overflow".to_string(), |c| c.to_string());
                let rate = rate.map_or("-".to_string(), |x| format!("{:.6}", x));
                let _ = writeln!(out, "r={} count={} rate={}", i + 1, c, rate);
            }
            let _ = writeln!(
                out,
                "verdict: {} (heuristic; delta={}, window={})",
                p.verdict, p.rule.delta, p.rule.window
            );
            out
        }
    }
}

fn render_campaign(c: &Campaign, format: Format) -> String {
    let rep = |r| serde_json::to_value(r).unwrap().as_str().unwrap().to_string();
    match format {
        Format::Json => json(c),
        Format::Tsv => {
            let mut out = String::from(
                "knot\tgroup\trepresentation\torder\thom_count\tvanishing\tnon_monic\tdegree_mismatch\tbudget_exceeded\n",
            );
            for o in &c.sweep.outcomes {
                let _ = writeln!(
                    out,
                    "{}\t{}\t{}\t{}\t{}\t{}\t{}\t{}\t{}",
                    c.knot,
                    o.group,
                    rep(o.representation),
                    o.order,
                    o.hom_count.map_or("-".to_string(), |h| h.to_string()),
                    o.vanishing,
                    o.non_monic,
                    o.degree_mismatch,
                    o.budget_exceeded
                );
            }
            out
        }
        Format::Text => {
            let mut out = String::new();
            let cl = &c.classical;
            let _ = writeln!(
                out,
                "{}: classical delta={} monic={} degree={} expected={}",
                c.knot,
                cl.delta,
                cl.monic,
                cl.degree,
                cl.degree_expected.map_or("-".to_string(), |d| d.to_string())
            );
            for o in &c.sweep.outcomes {
                let homs = o.hom_count.map_or("budget exceeded".to_string(), |h| format!("{} homs", h));
                let _ = writeln!(
                    out,
                    "  {} {} (order {}): {}, vanishing={} non_monic={} degree_mismatch={}",
                    o.group,
                    rep(o.representation),
                    o.order,
                    homs,
                    o.vanishing,
                    o.non_monic,
                    o.degree_mismatch
                );
            }
            match &c.sweep.witness {
                Some(w) => {
                    let _ = writeln!(
                        out,
                        "vanishing witness: {} {} [{}] n={} O={} second column agrees={}",
                        w.group,
                        rep(w.representation),
                        w.rep_images.join(", "),
                        w.n,
                        w.orbit_count,
                        w.second_column_agrees.map_or("-".to_string(), |b| b.to_string())
                    );
                }
                None if c.sweep.exhausted => {
                    let _ = writeln!(
                        out,
                        "no vanishing witness up to order {} (not a proof of fiberedness)",
                        c.sweep.max_order
                    );
                }
                None => {
                    let _ = writeln!(out, "no vanishing witness found; some searches exceeded the budget");
                }
            }
            let cert = serde_json::to_value(&c.certificates).unwrap();
            let held: Vec<&str> = cert
                .as_object()
                .unwrap()
                .iter()
                .filter(|(_, v)| v.as_bool() == Some(true))
                .map(|(k, _)| k.as_str())
                .collect();
            let _ = writeln!(
                out,
                "established: {}",
                if held.is_empty() { "none".to_string() } else { held.join(", ") }
            );
            let _ = writeln!(out, "verdict: {}", c.verdict);
            out
        }
    }
}

/// Parses `args`, runs, prints, and returns the process exit code.
pub fn main_with_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
        }
    };
    match run(&cli) {
        Ok(out) => {
            print!("{}", out.text);
            if out.overflow {
                eprintln!("error: search budget exceeded for part of the run");
                EXIT_BUDGET
            } else {
                EXIT_OK
            }
        }
        Err(e) => {
            eprintln!("error: {}", e);
            exit_code(&e)
        }
    }
}
