use std::path::PathBuf;

use clap::{Args, ValueEnum};
use fibered_torsion::fibered::{
    lift_character_to_rep, main_theorem_torsion, CatalogEntry, FiberedKnot, LiftSign, TorsionReport,
};
use fibered_torsion::linalg::C64;
use fibered_torsion::{Error, Tolerances};
use rayon::prelude::*;
use serde::Serialize;

use crate::compute::{complete_point, fmt_c, tidy};
use crate::grid::Grid;
use crate::{tolerances, CliError, CliResult, KnotArgs, Sign};

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum SweepFormat {
    Csv,
    Json,
}

#[derive(Args, Debug)]
pub struct SweepArgs {
    #[command(flatten)]
    knot: KnotArgs,
    /// Axis `name=start:end:steps`; repeat for a product grid.
    #[arg(long, value_name = "SPEC", required = true, allow_hyphen_values = true)]
    grid: Vec<String>,
    #[arg(long, value_enum, default_value_t = Sign::Plus)]
    lift: Sign,
    /// Output file; standard output when absent.
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = SweepFormat::Csv)]
    format: SweepFormat,
    #[arg(long)]
    tol: Option<f64>,
}

struct Row {
    grid: Vec<f64>,
    point: Option<[C64; 3]>,
    outcome: Result<TorsionReport, Error>,
}

fn evaluate(
    fk: &FiberedKnot,
    grid: &Grid,
    values: Vec<f64>,
    sign: LiftSign,
    tol: &Tolerances,
) -> Row {
    let point = complete_point(fk, grid.known(&values), tol);
    let outcome = point.as_ref().map_err(Clone::clone).and_then(|p| {
        let rep = lift_character_to_rep(fk, p, sign, tol)?;
        let report = main_theorem_torsion(fk, &rep, tol)?;
        if !(report.torsion.re.is_finite() && report.torsion.im.is_finite()) {
            return Err(Error::UnitEigenvalueDivision(fmt_c(report.torsion)));
        }
        Ok(report)
    });
    Row {
        grid: values,
        point: point.ok(),
        outcome,
    }
}

fn num(v: f64) -> String {
    tidy(v).to_string()
}

fn to_csv(grid: &Grid, rows: &[Row]) -> CliResult<Vec<u8>> {
    let mut w = csv::Writer::from_writer(Vec::new());
    let mut header: Vec<String> = grid.axes.iter().map(|a| a.name.clone()).collect();
    for i in 1..=3 {
        header.push(format!("x{i}_re"));
        header.push(format!("x{i}_im"));
    }
    header.extend(
        [
            "torsion_re",
            "torsion_im",
            "epsilon0",
            "eigenvalues",
            "error",
        ]
        .map(String::from),
    );
    let csv_err = |e: csv::Error| Error::Io(e.to_string());
    w.write_record(&header).map_err(csv_err)?;
    for row in rows {
        let mut rec: Vec<String> = row.grid.iter().map(|&v| num(v)).collect();
        match row.point {
            Some(p) => rec.extend(p.iter().flat_map(|z| [num(z.re), num(z.im)])),
            None => rec.extend(std::iter::repeat_n(String::new(), 6)),
        }
        match &row.outcome {
            Ok(r) => {
                let ev: Vec<String> = r.eigenvalues.iter().map(|z| fmt_c(*z)).collect();
                rec.extend([
                    num(r.torsion.re),
                    num(r.torsion.im),
                    r.epsilon0.to_string(),
                    ev.join(";"),
                    String::new(),
                ]);
            }
            Err(e) => {
                rec.extend(std::iter::repeat_n(String::new(), 4));
                rec.push(e.code().to_string());
            }
        }
        w.write_record(&rec).map_err(csv_err)?;
    }
    w.into_inner().map_err(|e| Error::Io(e.to_string()).into())
}

#[derive(Serialize)]
struct JsonRow {
    grid: Vec<(String, f64)>,
    point: Option<[[f64; 2]; 3]>,
    report: Option<fibered_torsion::fibered::TorsionReportJson>,
    error: Option<String>,
    message: Option<String>,
}

#[derive(Serialize)]
struct Summary {
    rows: usize,
    failures: usize,
    torsion_re_min: Option<f64>,
    torsion_re_max: Option<f64>,
}

#[derive(Serialize)]
struct JsonSweep {
    knot: String,
    rows: Vec<JsonRow>,
    summary: Summary,
}

fn summary(rows: &[Row]) -> Summary {
    let values: Vec<f64> = rows
        .iter()
        .filter_map(|r| r.outcome.as_ref().ok().map(|t| t.torsion.re))
        .collect();
    Summary {
        rows: rows.len(),
        failures: rows.len() - values.len(),
        torsion_re_min: values.iter().copied().reduce(f64::min),
        torsion_re_max: values.iter().copied().reduce(f64::max),
    }
}

fn to_json(fk: &FiberedKnot, grid: &Grid, rows: &[Row]) -> Vec<u8> {
    let out = JsonSweep {
        knot: fk.name.clone(),
        rows: rows
            .iter()
            .map(|r| JsonRow {
                grid: grid
                    .axes
                    .iter()
                    .map(|a| a.name.clone())
                    .zip(r.grid.iter().map(|&v| tidy(v)))
                    .collect(),
                point: r.point.map(|p| p.map(|z| [tidy(z.re), tidy(z.im)])),
                report: r.outcome.as_ref().ok().map(TorsionReport::to_json),
                error: r.outcome.as_ref().err().map(|e| e.code().to_string()),
                message: r.outcome.as_ref().err().map(|e| e.to_string()),
            })
            .collect(),
        summary: summary(rows),
    };
    let mut bytes = serde_json::to_vec_pretty(&out).expect("sweep serializes");
    bytes.push(b'\n');
    bytes
}

pub fn run(args: &SweepArgs) -> CliResult<()> {
    let tol = tolerances(args.tol)?;
    let grid = Grid::parse(&args.grid)?;
    let fk = match args.knot.resolve()? {
        CatalogEntry::Fibered(fk) => fk,
        CatalogEntry::Torus { .. } => {
            return Err(CliError::Usage(
                "sweeps need a fibered knot definition; torus entries are closed form only".into(),
            ))
        }
    };
    let sign: LiftSign = args.lift.into();
    let rows: Vec<Row> = grid
        .points()
        .into_par_iter()
        .map(|values| evaluate(&fk, &grid, values, sign, &tol))
        .collect();
    let bytes = match args.format {
        SweepFormat::Csv => to_csv(&grid, &rows)?,
        SweepFormat::Json => to_json(&fk, &grid, &rows),
    };
    match &args.out {
        Some(path) => std::fs::write(path, &bytes)
            .map_err(|e| Error::Io(format!("{}: {e}", path.display())))?,
        None => {
            use std::io::Write;
            std::io::stdout()
                .write_all(&bytes)
                .map_err(|e| Error::Io(e.to_string()))?;
        }
    }
    let s = summary(&rows);
    let range = match (s.torsion_re_min, s.torsion_re_max) {
        (Some(lo), Some(hi)) => format!("; torsion_re in [{lo}, {hi}]"),
        _ => String::new(),
    };
    eprintln!("{} points, {} failed{range}", s.rows, s.failures);
    Ok(())
}
