//! JSON fixtures for based complexes.
//!
//! Matrices are row-major lists of rows; an entry is either a number or a
//! `[re, im]` pair. Homology bases are lists of vectors per degree, `null`
//! where a degree has none.

use serde::{Deserialize, Serialize};

use super::{BasedChainComplex, Direction};
use crate::error::{Error, Result};
use crate::linalg::{self, CMat, C64};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum JsonScalar {
    Real(f64),
    Complex([f64; 2]),
}

impl From<JsonScalar> for C64 {
    fn from(s: JsonScalar) -> C64 {
        match s {
            JsonScalar::Real(x) => C64::new(x, 0.0),
            JsonScalar::Complex([re, im]) => C64::new(re, im),
        }
    }
}

impl From<C64> for JsonScalar {
    fn from(z: C64) -> JsonScalar {
        if z.im == 0.0 {
            JsonScalar::Real(z.re)
        } else {
            JsonScalar::Complex([z.re, z.im])
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ComplexFixture {
    #[serde(default)]
    pub direction: Direction,
    pub dims: Vec<usize>,
    pub boundaries: Vec<Vec<Vec<JsonScalar>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub homology_bases: Option<Vec<Option<Vec<Vec<JsonScalar>>>>>,
}

fn matrix_from_rows(rows: &[Vec<JsonScalar>], nrows: usize, ncols: usize) -> Result<CMat> {
    if rows.len() != nrows || rows.iter().any(|r| r.len() != ncols) {
        return Err(Error::DimensionMismatch(format!(
            "expected a {nrows} × {ncols} matrix"
        )));
    }
    Ok(CMat::from_fn(nrows, ncols, |i, j| rows[i][j].into()))
}

fn rows_from_matrix(m: &CMat) -> Vec<Vec<JsonScalar>> {
    m.row_iter()
        .map(|r| r.iter().map(|&z| z.into()).collect())
        .collect()
}

impl ComplexFixture {
    pub fn to_complex(&self) -> Result<BasedChainComplex> {
        let n = self.dims.len();
        if self.boundaries.len() != n.saturating_sub(1) {
            return Err(Error::DimensionMismatch(format!(
                "{n} degrees need {} boundary matrices",
                n.saturating_sub(1)
            )));
        }
        let mut diffs = Vec::with_capacity(self.boundaries.len());
        for (k, rows) in self.boundaries.iter().enumerate() {
            let (r, c) = match self.direction {
                Direction::Chain => (self.dims[k], self.dims[k + 1]),
                Direction::Cochain => (self.dims[k + 1], self.dims[k]),
            };
            // Empty matrices may be written as [] regardless of column count.
            if r == 0 {
                diffs.push(CMat::zeros(0, c));
            } else {
                diffs.push(matrix_from_rows(rows, r, c)?);
            }
        }
        let mut complex = BasedChainComplex::new(self.direction, self.dims.clone(), diffs)?;
        if let Some(bases) = &self.homology_bases {
            if bases.len() != n {
                return Err(Error::DimensionMismatch(format!(
                    "homology_bases needs {n} entries"
                )));
            }
            for (k, entry) in bases.iter().enumerate() {
                if let Some(vectors) = entry {
                    let cols: Vec<linalg::CVec> = vectors
                        .iter()
                        .map(|v| {
                            if v.len() != self.dims[k] {
                                Err(Error::DimensionMismatch(format!(
                                    "homology vector in degree {k} has length {}",
                                    v.len()
                                )))
                            } else {
                                Ok(linalg::CVec::from_iterator(
                                    v.len(),
                                    v.iter().map(|&s| C64::from(s)),
                                ))
                            }
                        })
                        .collect::<Result<_>>()?;
                    complex.set_homology_basis(
                        k,
                        Some(linalg::columns_to_matrix(self.dims[k], &cols)),
                    )?;
                }
            }
        }
        Ok(complex)
    }

    pub fn from_complex(c: &BasedChainComplex) -> Self {
        let any = (0..c.degree_count()).any(|k| c.homology_basis(k).is_some());
        ComplexFixture {
            direction: c.direction(),
            dims: c.dims().to_vec(),
            boundaries: c.differentials().iter().map(rows_from_matrix).collect(),
            homology_bases: any.then(|| {
                (0..c.degree_count())
                    .map(|k| {
                        c.homology_basis(k).map(|h| {
                            h.column_iter()
                                .map(|col| col.iter().map(|&z| z.into()).collect())
                                .collect()
                        })
                    })
                    .collect()
            }),
        }
    }
}

impl BasedChainComplex {
    pub fn from_json_str(s: &str) -> Result<Self> {
        let fixture: ComplexFixture =
            serde_json::from_str(s).map_err(|e| Error::Parse(e.to_string()))?;
        fixture.to_complex()
    }

    pub fn to_json_string(&self) -> String {
        serde_json::to_string_pretty(&ComplexFixture::from_complex(self))
            .expect("fixture serialization cannot fail")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tolerance::Tolerances;
    use crate::torsion::torsion;

    #[test]
    fn parses_mixed_entries() {
        let s = r#"{"dims":[1,1],"boundaries":[[[[0.0,2.0]]]]}"#;
        let c = BasedChainComplex::from_json_str(s).unwrap();
        let t = torsion(&c, &Tolerances::default()).unwrap();
        assert!((t - C64::new(0.0, -0.5)).norm() < 1e-14);
    }

    #[test]
    fn round_trip() {
        let s = r#"{"direction":"cochain","dims":[1,2],"boundaries":[[[1],[0]]],
                    "homology_bases":[null,[[0,1]]]}"#;
        let c = BasedChainComplex::from_json_str(s).unwrap();
        let back = BasedChainComplex::from_json_str(&c.to_json_string()).unwrap();
        assert_eq!(c, back);
    }

    #[test]
    fn rejects_bad_shape() {
        let s = r#"{"dims":[1,2],"boundaries":[[[1]]]}"#;
        assert!(matches!(
            BasedChainComplex::from_json_str(s),
            Err(Error::DimensionMismatch(_))
        ));
    }
}
