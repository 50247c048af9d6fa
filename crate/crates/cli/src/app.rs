//! Subcommand dispatch.

use std::io::Write;
use std::path::{Path, PathBuf};

use anyhow::{bail, Context};
use clap::{Args, Parser, Subcommand, ValueEnum};
use cyclotorsion::curves::{graph_curve, minimal_translate, MobiusMap, TorusCurve};
use cyclotorsion::fixtures;
use cyclotorsion::polytope::toric_bezout_bound;
use cyclotorsion::torsion::{
    analyze, bound_torsion_with, sequential, Analysis, EnumerationResult, Intersection, Options,
    OrderScanner,
};
use cyclotorsion::{FamilyCase, TorsionPoint};
use rayon::prelude::*;
use serde::Serialize;

use crate::parse::parse_matrix_file;
use crate::report::{
    bound_json, common_order, distribution_json, points_json, witness_json, ReportDocument,
};

/// Exit status for a finite enumeration or a successful command.
pub const EXIT_OK: i32 = 0;
/// Exit status for any parse or math error.
pub const EXIT_ERROR: i32 = 1;
/// Exit status when the curve carries infinitely many torsion points.
pub const EXIT_INFINITE: i32 = 2;

#[derive(Parser, Debug)]
#[command(
    name = "cyclotorsion",
    version,
    about = "Roots-of-unity pairs on graph curves of cyclotomic Möbius maps"
)]
pub struct Cli {
    #[command(flatten)]
    pub global: GlobalArgs,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Args, Debug, Clone, Default)]
pub struct GlobalArgs {
    /// Emit JSON instead of a table.
    #[arg(long, global = true)]
    pub json: bool,
    /// Worker threads for family intersections and oracle scans.
    #[arg(long, global = true, value_name = "K")]
    pub threads: Option<usize>,
    /// Modulus D of the translate search (default 2·lcm(level, 4)).
    #[arg(long, global = true, value_name = "D")]
    pub translate_modulus: Option<u64>,
}

#[derive(Subcommand, Debug, Clone)]
pub enum Command {
    /// List all torsion points (exit 2 when there are infinitely many).
    Enumerate { file: PathBuf },
    /// Case analysis and uniform bound.
    Bound { file: PathBuf },
    /// Torsion points per member of the conjugate family.
    Distribute { file: PathBuf },
    /// Check a built-in example against its golden tables.
    VerifyExample { which: Example },
    /// Exhaustive search up to a joint order.
    Oracle {
        file: PathBuf,
        #[arg(long, value_name = "M")]
        max_order: u64,
    },
    /// Entries re-expressed over their smallest cyclotomic field.
    Reduce { file: PathBuf },
    /// Toric Bézout bound of two graph curves.
    Polytope { first: PathBuf, second: PathBuf },
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
pub enum Example {
    S1,
    S2,
}

fn load(path: &Path) -> anyhow::Result<crate::parse::MatrixFile> {
    let text =
        std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    parse_matrix_file(&text).with_context(|| format!("parsing {}", path.display()))
}

fn load_curve(path: &Path) -> anyhow::Result<TorusCurve> {
    Ok(graph_curve(&load(path)?.to_mobius()?))
}

struct Ctx<'a> {
    args: &'a GlobalArgs,
}

impl Ctx<'_> {
    fn options(&self) -> Options {
        Options {
            translate_modulus: self.args.translate_modulus,
        }
    }

    fn parallel(&self) -> bool {
        self.args.threads.is_some_and(|k| k > 1)
    }

    fn analyze(&self, f: &TorusCurve) -> cyclotorsion::Result<Analysis> {
        if self.parallel() {
            analyze(f, &self.options(), |base, members| {
                members
                    .par_iter()
                    .map(|(_, m)| cyclotorsion::torsion::intersect(base, m))
                    .collect::<Result<Vec<Intersection>, _>>()
            })
        } else {
            analyze(f, &self.options(), sequential)
        }
    }
}

fn case_and_conductor(a: &Analysis, f: &TorusCurve) -> (FamilyCase, u64) {
    match a {
        Analysis::Degenerate(_) => (FamilyCase::II, f.level()),
        Analysis::Family(fa) => (fa.family.case, fa.translate.conductor),
    }
}

fn emit(out: &mut dyn Write, json: bool, doc: &ReportDocument) -> anyhow::Result<()> {
    if json {
        writeln!(out, "{}", doc.to_json())?;
    } else {
        write!(out, "{}", doc.to_table())?;
    }
    Ok(())
}

/// Runs a parsed command line, writing the report to `out`, and returns
/// the exit status.
pub fn run(cli: &Cli, out: &mut dyn Write) -> anyhow::Result<i32> {
    match cli.global.threads {
        Some(k) if k > 1 => {
            let pool = rayon::ThreadPoolBuilder::new().num_threads(k).build()?;
            let mut buf = Vec::new();
            let code = pool.install(|| dispatch(cli, &mut buf))?;
            out.write_all(&buf)?;
            Ok(code)
        }
        Some(0) => bail!("--threads must be positive"),
        _ => dispatch(cli, out),
    }
}

fn dispatch(cli: &Cli, out: &mut dyn Write) -> anyhow::Result<i32> {
    let ctx = Ctx { args: &cli.global };
    let json = cli.global.json;
    match &cli.command {
        Command::Enumerate { file } => {
            let f = load_curve(file)?;
            let analysis = ctx.analyze(&f)?;
            let (case, conductor) = case_and_conductor(&analysis, &f);
            let mut doc = ReportDocument {
                case: Some(case.to_string()),
                conductor: Some(conductor),
                ..Default::default()
            };
            let code = match analysis.enumeration() {
                EnumerationResult::Finite(pts) => {
                    doc.points = Some(points_json(&pts, common_order(&pts)));
                    EXIT_OK
                }
                EnumerationResult::Infinite(w) => {
                    doc.witness = Some(witness_json(&w));
                    doc.notes
                        .push(format!("infinitely many torsion points on {w}"));
                    EXIT_INFINITE
                }
            };
            emit(out, json, &doc)?;
            Ok(code)
        }
        Command::Bound { file } => {
            let f = load_curve(file)?;
            let b = bound_torsion_with(&f, &ctx.options())?;
            let doc = ReportDocument {
                case: Some(b.case.to_string()),
                conductor: Some(b.conductor),
                bound: Some(bound_json(&b)),
                notes: b.notes.iter().map(|s| s.to_string()).collect(),
                ..Default::default()
            };
            emit(out, json, &doc)?;
            Ok(EXIT_OK)
        }
        Command::Distribute { file } => {
            let f = load_curve(file)?;
            let doc = distribution_doc(&ctx, &f)?;
            emit(out, json, &doc)?;
            Ok(EXIT_OK)
        }
        Command::VerifyExample { which } => verify_example(&ctx, *which, out),
        Command::Oracle { file, max_order } => {
            let f = load_curve(file)?;
            let pts = oracle(&f, *max_order, ctx.parallel())?;
            let doc = ReportDocument {
                points: Some(points_json(&pts, common_order(&pts))),
                notes: vec![format!(
                    "exhaustive search over joint orders up to {max_order}"
                )],
                ..Default::default()
            };
            emit(out, json, &doc)?;
            Ok(EXIT_OK)
        }
        Command::Reduce { file } => {
            let m = load(file)?;
            reduce(&ctx, &m, out)?;
            Ok(EXIT_OK)
        }
        Command::Polytope { first, second } => {
            let (f, g) = (load_curve(first)?, load_curve(second)?);
            let b = toric_bezout_bound(&f, &g);
            if json {
                #[derive(Serialize)]
                struct Out {
                    bound: String,
                }
                writeln!(
                    out,
                    "{}",
                    serde_json::to_string_pretty(&Out {
                        bound: b.to_string()
                    })?
                )?;
            } else {
                writeln!(out, "toric Bézout bound: {b}")?;
            }
            Ok(EXIT_OK)
        }
    }
}

fn distribution_doc(ctx: &Ctx, f: &TorusCurve) -> anyhow::Result<ReportDocument> {
    let analysis = ctx.analyze(f)?;
    let Analysis::Family(fa) = &analysis else {
        if analysis.enumeration().is_infinite() {
            bail!(cyclotorsion::Error::InfiniteFamily);
        }
        bail!("binomial curves have no conjugate family");
    };
    let table = fa.distribution();
    let pts = fa.points();
    let n = common_order(&pts);
    Ok(ReportDocument {
        case: Some(table.case.to_string()),
        conductor: Some(table.conductor),
        points: Some(points_json(&pts, n)),
        distribution: Some(distribution_json(&table, n)),
        ..Default::default()
    })
}

/// All points of joint order at most `max_order`, sorted. Orders are
/// scanned on the current rayon pool when `parallel` is set.
pub fn oracle(f: &TorusCurve, max_order: u64, parallel: bool) -> anyhow::Result<Vec<TorsionPoint>> {
    if max_order == 0 {
        bail!("--max-order must be positive");
    }
    let scanner = OrderScanner::new(f);
    let chunks: Vec<Vec<TorsionPoint>> = if parallel {
        (1..=max_order)
            .into_par_iter()
            .map(|n| scanner.scan(n))
            .collect::<Result<_, _>>()?
    } else {
        (1..=max_order)
            .map(|n| scanner.scan(n))
            .collect::<Result<_, _>>()?
    };
    let mut pts: Vec<TorsionPoint> = chunks.into_iter().flatten().collect();
    pts.sort();
    Ok(pts)
}

fn golden(level: u64, list: &[(i64, i64)]) -> Vec<TorsionPoint> {
    let mut v: Vec<_> = list
        .iter()
        .map(|&(j, k)| TorsionPoint::from_exponents(level, j, k).expect("fixture level"))
        .collect();
    v.sort();
    v
}

/// Outcome of checking one built-in example.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Verification {
    pub points: usize,
    pub points_match: bool,
    pub distribution_match: bool,
    pub bound_total: Option<u64>,
    pub document: ReportDocument,
}

pub fn verify(args: &GlobalArgs, which: Example) -> anyhow::Result<Verification> {
    let ctx = Ctx { args };
    let (gamma, level, pts, rows): (MobiusMap, u64, &[(i64, i64)], &[fixtures::DistributionRow]) =
        match which {
            Example::S1 => (
                fixtures::gamma1(),
                fixtures::S1_LEVEL,
                fixtures::S1_POINTS,
                fixtures::S1_DISTRIBUTION,
            ),
            Example::S2 => (
                fixtures::gamma2(),
                fixtures::S2_LEVEL,
                fixtures::S2_POINTS,
                fixtures::S2_DISTRIBUTION,
            ),
        };
    let f = graph_curve(&gamma);
    let mut doc = distribution_doc(&ctx, &f)?;
    let bound = bound_torsion_with(&f, &ctx.options())?;
    doc.bound = Some(bound_json(&bound));
    doc.notes = fixtures::NOTES.iter().map(|s| s.to_string()).collect();
    let Analysis::Family(fa) = ctx.analyze(&f)? else {
        bail!("example curve is unexpectedly binomial");
    };
    let found = fa.points();
    let points_match = found == golden(level, pts);
    let table = fa.distribution();
    let distribution_match = table.rows.len() == rows.len()
        && table.rows.iter().zip(rows).all(|(r, &(idx, gp, extra))| {
            r.label == format!("f{idx}") && r.points == golden(level, gp) && r.nontorsion == extra
        });
    Ok(Verification {
        points: found.len(),
        points_match,
        distribution_match,
        bound_total: bound.total,
        document: doc,
    })
}

fn verify_example(ctx: &Ctx, which: Example, out: &mut dyn Write) -> anyhow::Result<i32> {
    let v = verify(ctx.args, which)?;
    let ok = |b: bool| if b { "OK" } else { "FAILED" };
    if ctx.args.json {
        writeln!(out, "{}", v.document.to_json())?;
    } else {
        writeln!(out, "{} points, match: {}", v.points, ok(v.points_match))?;
        writeln!(out, "distribution, match: {}", ok(v.distribution_match))?;
        let total = v
            .bound_total
            .map_or("infinite".to_string(), |t| t.to_string());
        writeln!(out, "bound: {total}")?;
    }
    Ok(if v.points_match && v.distribution_match {
        EXIT_OK
    } else {
        EXIT_ERROR
    })
}

fn reduce(ctx: &Ctx, m: &crate::parse::MatrixFile, out: &mut dyn Write) -> anyhow::Result<()> {
    #[derive(Serialize)]
    struct Entry {
        key: &'static str,
        level: u64,
        expr: String,
    }
    #[derive(Serialize)]
    struct Out {
        order: u64,
        entries: Vec<Entry>,
        conductor: Option<u64>,
        translate: Option<[String; 2]>,
    }
    let entries: Vec<Entry> = ["a", "b", "c", "d"]
        .iter()
        .zip(&m.entries)
        .map(|(&key, e)| {
            let r = e.conductor_reduce();
            Entry {
                key,
                level: r.level(),
                expr: r.to_expression("z"),
            }
        })
        .collect();
    let f = graph_curve(&m.to_mobius()?);
    let mt = minimal_translate(&f, ctx.args.translate_modulus).ok();
    let doc = Out {
        order: m.order,
        entries,
        conductor: mt.as_ref().map(|t| t.conductor),
        translate: mt.as_ref().map(|t| [t.zx.to_string(), t.zy.to_string()]),
    };
    if ctx.args.json {
        writeln!(out, "{}", serde_json::to_string_pretty(&doc)?)?;
    } else {
        for e in &doc.entries {
            writeln!(out, "{} = {}    (z = ζ{})", e.key, e.expr, e.level)?;
        }
        match (&doc.conductor, &doc.translate) {
            (Some(n), Some([zx, zy])) => writeln!(
                out,
                "graph curve: conductor {n} after translating by ({zx}, {zy})"
            )?,
            _ => writeln!(out, "graph curve: binomial, no translate search")?,
        }
    }
    Ok(())
}
