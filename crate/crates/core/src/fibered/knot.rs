use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::poly::TraceCoordMap;
use crate::error::{Error, Result};
use crate::group::{GroupPresentation, Word};

pub const MERIDIAN: &str = "t";

/// A fibered knot given by the monodromy of a once-punctured genus-g fiber.
///
/// The knot group is `⟨a₁, b₁, …, a_g, b_g, t | t⁻¹ x t = φ(x)⟩`; generator
/// indices `0..2g` are the fiber generators and `2g` is the meridian `t`.
#[derive(Debug, Clone, PartialEq)]
pub struct FiberedKnot {
    pub name: String,
    pub genus: usize,
    pub fiber_generators: Vec<String>,
    /// `φ(x)` for every fiber generator, as words in the fiber generators.
    pub monodromy: Vec<Word>,
    pub trace_map: Option<TraceCoordMap>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
struct KnotJson {
    name: String,
    genus: usize,
    fiber_generators: Vec<String>,
    monodromy: BTreeMap<String, String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    trace_map: Option<Vec<String>>,
}

impl FiberedKnot {
    pub fn new(
        name: &str,
        fiber_generators: &[&str],
        monodromy: &[&str],
        trace_map: Option<&[&str]>,
    ) -> Result<Self> {
        let names: Vec<String> = fiber_generators.iter().map(|s| s.to_string()).collect();
        if names.is_empty() || !names.len().is_multiple_of(2) {
            return Err(Error::InvalidKnot(
                "the fiber needs an even, positive number of generators".into(),
            ));
        }
        if names.iter().any(|n| n == MERIDIAN) {
            return Err(Error::InvalidKnot(format!(
                "`{MERIDIAN}` is reserved for the meridian"
            )));
        }
        if names.iter().any(|n| n.to_lowercase() != *n || n.is_empty()) {
            return Err(Error::InvalidKnot(
                "generator names must be non-empty lower case".into(),
            ));
        }
        if monodromy.len() != names.len() {
            return Err(Error::InvalidKnot(format!(
                "{} monodromy images for {} generators",
                monodromy.len(),
                names.len()
            )));
        }
        let words = monodromy
            .iter()
            .map(|w| {
                Word::parse(w, &names).map_err(|e| match e {
                    Error::UnknownGenerator(g) => Error::InvalidKnot(format!(
                        "monodromy image `{w}` uses `{g}`, which is not a fiber generator"
                    )),
                    other => other,
                })
            })
            .collect::<Result<Vec<_>>>()?;
        let trace_map = match trace_map {
            Some(parts) => {
                if names.len() != 2 {
                    return Err(Error::InvalidKnot(
                        "trace maps are only supported in genus 1".into(),
                    ));
                }
                Some(TraceCoordMap::parse(parts)?)
            }
            None => None,
        };
        Ok(FiberedKnot {
            name: name.to_string(),
            genus: names.len() / 2,
            fiber_generators: names,
            monodromy: words,
            trace_map,
        })
    }

    pub fn from_json_str(s: &str) -> Result<Self> {
        let j: KnotJson = serde_json::from_str(s).map_err(|e| Error::Parse(e.to_string()))?;
        let images: Vec<&str> = j
            .fiber_generators
            .iter()
            .map(|g| {
                j.monodromy
                    .get(g)
                    .map(|s| s.as_str())
                    .ok_or_else(|| Error::InvalidKnot(format!("no monodromy image for `{g}`")))
            })
            .collect::<Result<_>>()?;
        let gens: Vec<&str> = j.fiber_generators.iter().map(|s| s.as_str()).collect();
        let tm: Option<Vec<&str>> = j
            .trace_map
            .as_ref()
            .map(|v| v.iter().map(|s| s.as_str()).collect());
        let knot = Self::new(&j.name, &gens, &images, tm.as_deref())?;
        if knot.genus != j.genus {
            return Err(Error::InvalidKnot(format!(
                "genus {} does not match {} fiber generators",
                j.genus,
                gens.len()
            )));
        }
        Ok(knot)
    }

    pub fn to_json_string(&self) -> String {
        let j = KnotJson {
            name: self.name.clone(),
            genus: self.genus,
            fiber_generators: self.fiber_generators.clone(),
            monodromy: self
                .fiber_generators
                .iter()
                .zip(&self.monodromy)
                .map(|(g, w)| (g.clone(), w.display(&self.fiber_generators).to_string()))
                .collect(),
            trace_map: self.trace_map.as_ref().map(|t| t.strings()),
        };
        serde_json::to_string_pretty(&j).expect("serializable")
    }

    pub fn fiber_rank(&self) -> usize {
        self.fiber_generators.len()
    }

    pub fn meridian_index(&self) -> usize {
        self.fiber_rank()
    }

    /// Presentation of the knot group with relators `t⁻¹ x t φ(x)⁻¹`.
    pub fn presentation(&self) -> GroupPresentation {
        let mut names = self.fiber_generators.clone();
        names.push(MERIDIAN.to_string());
        let t = Word::generator(self.meridian_index());
        let relators = self
            .monodromy
            .iter()
            .enumerate()
            .map(|(i, phi)| t.inverse() * Word::generator(i) * &t * phi.inverse())
            .collect();
        GroupPresentation::new(names, relators).expect("indices are in range")
    }

    /// Free group on the fiber generators.
    pub fn fiber_presentation(&self) -> GroupPresentation {
        GroupPresentation::new(self.fiber_generators.clone(), Vec::new()).expect("no relators")
    }

    /// Boundary of the fiber `γ = ∏ [aᵢ, bᵢ]`.
    pub fn longitude(&self) -> Word {
        (0..self.genus).fold(Word::empty(), |acc, i| {
            acc * Word::commutator(&Word::generator(2 * i), &Word::generator(2 * i + 1))
        })
    }
}

/// Entry `(i, j)` is the exponent sum of generator `i` in `φ(x_j)`: the
/// matrix of `φ*` on `H¹(F; ℤ)` in the dual basis.
pub fn abelianized_monodromy(fk: &FiberedKnot) -> Vec<Vec<i64>> {
    let n = fk.fiber_rank();
    (0..n)
        .map(|i| (0..n).map(|j| fk.monodromy[j].exponent_sum(i)).collect())
        .collect()
}

/// Exact determinant of an integer matrix (fraction-free elimination).
pub fn integer_det(m: &[Vec<i64>]) -> i128 {
    let n = m.len();
    if n == 0 {
        return 1;
    }
    let mut a: Vec<Vec<i128>> = m
        .iter()
        .map(|r| r.iter().map(|&x| x as i128).collect())
        .collect();
    let mut sign = 1i128;
    let mut prev = 1i128;
    for k in 0..n - 1 {
        if a[k][k] == 0 {
            match (k + 1..n).find(|&r| a[r][k] != 0) {
                Some(r) => {
                    a.swap(k, r);
                    sign = -sign;
                }
                None => return 0,
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) / prev;
            }
        }
        prev = a[k][k];
    }
    sign * a[n - 1][n - 1]
}

/// `sgn det(I − φ*)`.
pub fn epsilon0(fk: &FiberedKnot) -> Result<i32> {
    let m = abelianized_monodromy(fk);
    let n = m.len();
    let id_minus: Vec<Vec<i64>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| if i == j { 1 } else { 0 } - m[i][j])
                .collect()
        })
        .collect();
    match integer_det(&id_minus).signum() {
        0 => Err(Error::DegenerateMonodromy),
        s => Ok(s as i32),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn integer_determinants() {
        assert_eq!(integer_det(&[vec![1, 2], vec![3, 4]]), -2);
        assert_eq!(integer_det(&[vec![0, 1], vec![1, 0]]), -1);
        assert_eq!(
            integer_det(&[vec![2, 0, 1], vec![1, 3, 2], vec![1, 1, 2]]),
            6
        );
        assert_eq!(integer_det(&[vec![1, 2], vec![2, 4]]), 0);
        assert_eq!(
            integer_det(&[vec![0, 0, 1], vec![0, 2, 0], vec![3, 0, 0]]),
            -6
        );
    }

    #[test]
    fn identity_monodromy() {
        let k = FiberedKnot::new("id", &["a", "b"], &["a", "b"], None).unwrap();
        assert_eq!(abelianized_monodromy(&k), vec![vec![1, 0], vec![0, 1]]);
        assert_eq!(epsilon0(&k), Err(Error::DegenerateMonodromy));
    }

    #[test]
    fn rejects_meridian_in_monodromy() {
        assert!(matches!(
            FiberedKnot::new("bad", &["a", "b"], &["a t", "b"], None),
            Err(Error::InvalidKnot(_))
        ));
    }

    #[test]
    fn json_round_trip() {
        let k = FiberedKnot::new(
            "k",
            &["a", "b"],
            &["a b", "b a b"],
            Some(&["x3", "x1", "x2"]),
        )
        .unwrap();
        assert_eq!(FiberedKnot::from_json_str(&k.to_json_string()).unwrap(), k);
    }

    #[test]
    fn presentation_relators() {
        let k = FiberedKnot::new("k", &["a", "b"], &["a b", "b a b"], None).unwrap();
        let p = k.presentation();
        assert_eq!(p.generators, vec!["a", "b", "t"]);
        assert_eq!(
            p.relators[1].display(&p.generators).to_string(),
            "T b t B A B"
        );
        assert_eq!(k.longitude().display(&p.generators).to_string(), "a b A B");
    }
}
