use clap::Args;
use fibered_torsion::fibered::{
    character_point, figure_eight_holonomy, fixed_point_characters, lift_character_to_rep,
    main_theorem_torsion, torus_closed_form, CatalogEntry, FiberedKnot, TorsionReport,
};
use fibered_torsion::linalg::C64;
use fibered_torsion::{Error, Tolerances};
use serde::Serialize;

use crate::{tolerances, CliError, CliResult, KnotArgs, Sign, TextOrJson};

#[derive(Args, Debug)]
pub struct ComputeArgs {
    #[command(flatten)]
    knot: KnotArgs,
    /// Character point `x1,x2,x3` (complex entries like `1.5+0.87i`); empty
    /// entries are solved from the fixed-point locus.
    #[arg(long, value_name = "X1,X2,X3", allow_hyphen_values = true)]
    x: Option<String>,
    /// Figure-eight holonomy lift with meridian trace ±2.
    #[arg(long, value_enum, conflicts_with = "x")]
    holonomy: Option<Sign>,
    /// Sign of the meridian when lifting `--x`.
    #[arg(long, value_enum, default_value_t = Sign::Plus)]
    lift: Sign,
    /// Character indices `a,b` for torus knots.
    #[arg(long, value_name = "A,B")]
    ab: Option<String>,
    #[arg(long)]
    tol: Option<f64>,
    #[arg(long, value_enum, default_value_t = TextOrJson::Text)]
    format: TextOrJson,
}

/// `-0.0` prints as `0`.
pub fn tidy(v: f64) -> f64 {
    v + 0.0
}

pub fn fmt_c(z: C64) -> String {
    format!("{}{:+}i", tidy(z.re), tidy(z.im))
}

fn round12(v: f64, scale: f64) -> f64 {
    if v.abs() < 1e-12 * scale {
        return 0.0;
    }
    tidy(format!("{v:.11e}").parse().unwrap_or(v))
}

/// Twelve significant digits, dropping parts below 1e-12 of the magnitude.
fn fmt_short(z: C64) -> String {
    let scale = z.norm().max(1.0);
    let (re, im) = (round12(z.re, scale), round12(z.im, scale));
    if im == 0.0 {
        format!("{re}")
    } else {
        format!("{re}{im:+}i")
    }
}

pub fn parse_point(s: &str) -> CliResult<[Option<C64>; 3]> {
    let parts: Vec<&str> = s.split(',').map(str::trim).collect();
    if parts.len() > 3 {
        return Err(CliError::Usage(format!(
            "expected at most three coordinates, got `{s}`"
        )));
    }
    let mut out = [None; 3];
    for (i, p) in parts.iter().enumerate() {
        if !p.is_empty() {
            let z = p
                .parse::<C64>()
                .map_err(|_| CliError::Usage(format!("cannot parse coordinate `{p}`")))?;
            out[i] = Some(z);
        }
    }
    if out.iter().all(Option::is_none) {
        return Err(CliError::Usage("no coordinates given".into()));
    }
    Ok(out)
}

/// Fill missing coordinates from the fixed-point locus of the knot.
pub fn complete_point(
    fk: &FiberedKnot,
    known: [Option<C64>; 3],
    tol: &Tolerances,
) -> fibered_torsion::Result<[C64; 3]> {
    if let [Some(a), Some(b), Some(c)] = known {
        return Ok([a, b, c]);
    }
    fixed_point_characters(fk)?.complete(known, tol)
}

#[derive(Serialize)]
struct ComputeJson {
    knot: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    point: Option<[[f64; 2]; 3]>,
    #[serde(flatten)]
    report: fibered_torsion::fibered::TorsionReportJson,
}

#[derive(Serialize)]
struct ClosedFormJson {
    knot: String,
    a: u32,
    b: u32,
    method: &'static str,
    torsion_re: f64,
    torsion_im: f64,
}

fn parse_ab(s: &str) -> CliResult<(u32, u32)> {
    let parts: Vec<&str> = s.split(',').map(str::trim).collect();
    match parts.as_slice() {
        [a, b] => match (a.parse(), b.parse()) {
            (Ok(a), Ok(b)) => Ok((a, b)),
            _ => Err(CliError::Usage(format!("cannot parse `--ab {s}`"))),
        },
        _ => Err(CliError::Usage(format!(
            "`--ab` takes two integers, got `{s}`"
        ))),
    }
}

pub fn run(args: &ComputeArgs) -> CliResult<()> {
    let tol = tolerances(args.tol)?;
    match args.knot.resolve()? {
        CatalogEntry::Torus { p, q } => {
            let ab = args
                .ab
                .as_deref()
                .ok_or_else(|| CliError::Usage("torus knots need `--ab a,b`".into()))?;
            let (a, b) = parse_ab(ab)?;
            let value = torus_closed_form(p, q, a, b)?;
            let out = ClosedFormJson {
                knot: format!("torus_{p}_{q}"),
                a,
                b,
                method: "closed_form",
                torsion_re: value,
                torsion_im: 0.0,
            };
            match args.format {
                TextOrJson::Json => println!(
                    "{}",
                    serde_json::to_string_pretty(&out).expect("serializes")
                ),
                TextOrJson::Text => {
                    println!("knot        {}", out.knot);
                    println!("character   a = {a}, b = {b}");
                    println!("torsion     {}", fmt_short(C64::new(value, 0.0)));
                    println!("method      closed_form");
                }
            }
            Ok(())
        }
        CatalogEntry::Fibered(fk) => {
            if args.ab.is_some() {
                return Err(CliError::Usage("`--ab` applies to torus knots only".into()));
            }
            let rep = match (&args.x, args.holonomy) {
                (Some(x), None) => {
                    let point = complete_point(&fk, parse_point(x)?, &tol)?;
                    lift_character_to_rep(&fk, &point, args.lift.into(), &tol)?
                }
                (None, Some(sign)) => {
                    if fk.name != "figure_eight" {
                        return Err(Error::UnsupportedLocus(format!(
                            "no holonomy representation is built in for `{}`",
                            fk.name
                        ))
                        .into());
                    }
                    figure_eight_holonomy(&fk, sign.into(), &tol)?
                }
                _ => return Err(CliError::Usage("give `--x` or `--holonomy`".into())),
            };
            let report = main_theorem_torsion(&fk, &rep, &tol)?;
            let point = (fk.genus == 1).then(|| character_point(&rep));
            print_report(&fk, point, &report, args.format);
            Ok(())
        }
    }
}

fn print_report(
    fk: &FiberedKnot,
    point: Option<[C64; 3]>,
    report: &TorsionReport,
    format: TextOrJson,
) {
    match format {
        TextOrJson::Json => {
            let out = ComputeJson {
                knot: fk.name.clone(),
                point: point.map(|p| p.map(|z| [tidy(z.re), tidy(z.im)])),
                report: report.to_json(),
            };
            println!(
                "{}",
                serde_json::to_string_pretty(&out).expect("serializes")
            );
        }
        TextOrJson::Text => {
            let ev: Vec<String> = report.eigenvalues.iter().map(|z| fmt_short(*z)).collect();
            println!("knot        {}", fk.name);
            if let Some(point) = point {
                let p: Vec<String> = point.iter().map(|z| fmt_short(*z)).collect();
                println!("point       {}", p.join(", "));
            }
            println!("torsion     {}", fmt_short(report.torsion));
            println!("epsilon0    {:+}", report.epsilon0);
            println!("eigenvalues {}", ev.join("; "));
            println!("unit gap    {:.3e}", report.unit_eigenvalue_gap);
            if let Some(j) = &report.jacobian {
                println!("jacobian    deviation {:.3e}", j.deviation);
            }
        }
    }
}
