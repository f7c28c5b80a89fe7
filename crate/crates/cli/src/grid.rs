//! Grid specs `name=start:end:steps` over character coordinates.
//!
//! Axis names are `x1`, `x2`, `x3` (real parts) and `x1_im`, `x2_im`,
//! `x3_im` (imaginary parts); `x` and `x_im` stand for `x1` and `x1_im`.

use fibered_torsion::linalg::C64;

use crate::{CliError, CliResult};

#[derive(Debug, Clone, PartialEq)]
pub struct Axis {
    pub name: String,
    pub coord: usize,
    pub imaginary: bool,
    pub values: Vec<f64>,
}

fn axis_target(name: &str) -> Option<(usize, bool)> {
    let (base, imaginary) = match name.strip_suffix("_im") {
        Some(b) => (b, true),
        None => (name, false),
    };
    let coord = match base {
        "x" | "x1" => 0,
        "x2" => 1,
        "x3" => 2,
        _ => return None,
    };
    Some((coord, imaginary))
}

pub fn parse_axis(spec: &str) -> CliResult<Axis> {
    let bad = |why: &str| CliError::Usage(format!("bad grid `{spec}`: {why}"));
    let (name, range) = spec
        .split_once('=')
        .ok_or_else(|| bad("expected name=start:end:steps"))?;
    let name = name.trim();
    let (coord, imaginary) = axis_target(name).ok_or_else(|| bad("unknown coordinate"))?;
    let parts: Vec<&str> = range.split(':').map(str::trim).collect();
    let [start, end, steps] = parts.as_slice() else {
        return Err(bad("expected start:end:steps"));
    };
    let start: f64 = start.parse().map_err(|_| bad("start is not a number"))?;
    let end: f64 = end.parse().map_err(|_| bad("end is not a number"))?;
    let steps: usize = steps
        .parse()
        .map_err(|_| bad("steps is not a nonnegative integer"))?;
    if !start.is_finite() || !end.is_finite() {
        return Err(bad("range must be finite"));
    }
    if steps == 0 {
        return Err(bad("empty grid (steps = 0)"));
    }
    let values = if steps == 1 {
        vec![start]
    } else {
        (0..steps)
            .map(|k| start + (end - start) * k as f64 / (steps - 1) as f64)
            .collect()
    };
    Ok(Axis {
        name: name.to_string(),
        coord,
        imaginary,
        values,
    })
}

#[derive(Debug, Clone)]
pub struct Grid {
    pub axes: Vec<Axis>,
}

impl Grid {
    pub fn parse(specs: &[String]) -> CliResult<Self> {
        if specs.is_empty() {
            return Err(CliError::Usage(
                "empty grid: give at least one `--grid`".into(),
            ));
        }
        let axes: Vec<Axis> = specs
            .iter()
            .map(|s| parse_axis(s))
            .collect::<CliResult<_>>()?;
        for (i, a) in axes.iter().enumerate() {
            if axes[..i]
                .iter()
                .any(|b| (b.coord, b.imaginary) == (a.coord, a.imaginary))
            {
                return Err(CliError::Usage(format!(
                    "coordinate `{}` appears twice",
                    a.name
                )));
            }
        }
        Ok(Grid { axes })
    }

    /// All grid points, the first axis varying slowest.
    pub fn points(&self) -> Vec<Vec<f64>> {
        let mut out = vec![Vec::new()];
        for axis in &self.axes {
            out = out
                .into_iter()
                .flat_map(|prefix| {
                    axis.values.iter().map(move |&v| {
                        let mut p = prefix.clone();
                        p.push(v);
                        p
                    })
                })
                .collect();
        }
        out
    }

    /// Coordinates fixed by a grid point; the rest are left to the locus.
    pub fn known(&self, values: &[f64]) -> [Option<C64>; 3] {
        let mut out: [Option<C64>; 3] = [None; 3];
        for (axis, &v) in self.axes.iter().zip(values) {
            let z = out[axis.coord].get_or_insert(C64::new(0.0, 0.0));
            if axis.imaginary {
                z.im = v;
            } else {
                z.re = v;
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn axis_endpoints_and_spacing() {
        let a = parse_axis("x=-1:2:4").unwrap();
        assert_eq!(a.values, vec![-1.0, 0.0, 1.0, 2.0]);
        assert_eq!((a.coord, a.imaginary), (0, false));
        assert_eq!(parse_axis("x3_im=0.5:9:1").unwrap().values, vec![0.5]);
    }

    #[test]
    fn malformed_axes() {
        for spec in [
            "x=0:1:0",
            "y=0:1:3",
            "x1=0:1",
            "x1=a:1:2",
            "x2=0:inf:3",
            "x1",
        ] {
            assert!(
                matches!(parse_axis(spec), Err(CliError::Usage(_))),
                "{spec}"
            );
        }
        assert!(Grid::parse(&[]).is_err());
        assert!(Grid::parse(&["x=0:1:2".into(), "x1=0:1:2".into()]).is_err());
    }

    #[test]
    fn product_order_and_known_coordinates() {
        let g = Grid::parse(&["x1=0:1:2".into(), "x1_im=5:6:2".into(), "x3=7:7:1".into()]).unwrap();
        let pts = g.points();
        assert_eq!(
            pts,
            vec![
                vec![0.0, 5.0, 7.0],
                vec![0.0, 6.0, 7.0],
                vec![1.0, 5.0, 7.0],
                vec![1.0, 6.0, 7.0],
            ]
        );
        let k = g.known(&pts[1]);
        assert_eq!(
            k,
            [Some(C64::new(0.0, 6.0)), None, Some(C64::new(7.0, 0.0))]
        );
    }
}
