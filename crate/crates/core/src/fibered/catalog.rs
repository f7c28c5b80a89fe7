use serde::Serialize;

use super::knot::FiberedKnot;
use crate::error::{Error, Result};

pub fn trefoil() -> FiberedKnot {
    FiberedKnot::new(
        "trefoil",
        &["a", "b"],
        &["a B A", "a b"],
        Some(&["x2", "x3", "x1"]),
    )
    .expect("static definition")
}

pub fn figure_eight() -> FiberedKnot {
    FiberedKnot::new(
        "figure_eight",
        &["a", "b"],
        &["a b", "b a b"],
        Some(&["x3", "x2*x3 - x1", "x2*x3^2 - x1*x3 - x2"]),
    )
    .expect("static definition")
}

fn gcd(a: u32, b: u32) -> u32 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// `−16/(p²q²) · sin²(πa/p) · sin²(πb/q)` for the irreducible SU(2)
/// characters of the `(p, q)` torus knot.
pub fn torus_closed_form(p: u32, q: u32, a: u32, b: u32) -> Result<f64> {
    if gcd(p, q) != 1 {
        return Err(Error::NotCoprime { p, q });
    }
    if a == 0 || a >= p {
        return Err(Error::AOutOfRange { a, p });
    }
    if b == 0 || b >= q {
        return Err(Error::BOutOfRange { b, q });
    }
    if a % 2 != b % 2 {
        return Err(Error::ParityViolation { a, b });
    }
    let pi = std::f64::consts::PI;
    let (pf, qf) = (p as f64, q as f64);
    let sa = (pi * a as f64 / pf).sin();
    let sb = (pi * b as f64 / qf).sin();
    Ok(-16.0 / (pf * pf * qf * qf) * sa * sa * sb * sb)
}

#[derive(Debug, Clone)]
pub enum CatalogEntry {
    Fibered(FiberedKnot),
    Torus { p: u32, q: u32 },
}

#[derive(Debug, Clone, Serialize)]
pub struct CatalogListing {
    pub name: String,
    pub genus: usize,
    pub methods: Vec<&'static str>,
}

impl CatalogEntry {
    pub fn name(&self) -> String {
        match self {
            CatalogEntry::Fibered(k) => k.name.clone(),
            CatalogEntry::Torus { p, q } => format!("torus_{p}_{q}"),
        }
    }

    pub fn genus(&self) -> usize {
        match self {
            CatalogEntry::Fibered(k) => k.genus,
            CatalogEntry::Torus { p, q } => ((p - 1) * (q - 1) / 2) as usize,
        }
    }

    pub fn methods(&self) -> Vec<&'static str> {
        match self {
            CatalogEntry::Fibered(k) if k.trace_map.is_some() => vec!["cohomology", "jacobian"],
            CatalogEntry::Fibered(_) => vec!["cohomology"],
            CatalogEntry::Torus { .. } => vec!["closed_form"],
        }
    }

    pub fn listing(&self) -> CatalogListing {
        CatalogListing {
            name: self.name(),
            genus: self.genus(),
            methods: self.methods(),
        }
    }
}

pub fn catalog() -> Vec<CatalogEntry> {
    vec![
        CatalogEntry::Fibered(trefoil()),
        CatalogEntry::Fibered(figure_eight()),
        CatalogEntry::Torus { p: 2, q: 3 },
        CatalogEntry::Torus { p: 2, q: 5 },
        CatalogEntry::Torus { p: 3, q: 4 },
        CatalogEntry::Torus { p: 3, q: 5 },
    ]
}

/// Look up a catalog entry; `torus_p_q` is accepted for any coprime `p, q ≥ 2`.
pub fn lookup(name: &str) -> Result<CatalogEntry> {
    if let Some(rest) = name.strip_prefix("torus_") {
        let parts: Vec<&str> = rest.split('_').collect();
        if let [p, q] = parts.as_slice() {
            if let (Ok(p), Ok(q)) = (p.parse::<u32>(), q.parse::<u32>()) {
                if p < 2 || q < 2 {
                    return Err(Error::UnknownKnot(name.to_string()));
                }
                if gcd(p, q) != 1 {
                    return Err(Error::NotCoprime { p, q });
                }
                return Ok(CatalogEntry::Torus { p, q });
            }
        }
        return Err(Error::UnknownKnot(name.to_string()));
    }
    catalog()
        .into_iter()
        .find(|e| e.name() == name)
        .ok_or_else(|| Error::UnknownKnot(name.to_string()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fibered::{abelianized_monodromy, epsilon0};

    #[test]
    fn closed_form_values() {
        assert!((torus_closed_form(2, 3, 1, 1).unwrap() + 1.0 / 3.0).abs() < 1e-15);
        let s = (std::f64::consts::PI / 5.0).sin();
        assert!((torus_closed_form(2, 5, 1, 1).unwrap() + 0.16 * s * s).abs() < 1e-15);
        assert!((torus_closed_form(2, 5, 1, 1).unwrap() + 0.0552786404).abs() < 1e-9);
    }

    #[test]
    fn closed_form_errors() {
        assert_eq!(
            torus_closed_form(3, 4, 1, 2),
            Err(Error::ParityViolation { a: 1, b: 2 })
        );
        assert_eq!(
            torus_closed_form(2, 4, 1, 1),
            Err(Error::NotCoprime { p: 2, q: 4 })
        );
        assert_eq!(
            torus_closed_form(2, 3, 2, 1),
            Err(Error::AOutOfRange { a: 2, p: 2 })
        );
        assert_eq!(
            torus_closed_form(2, 3, 1, 3),
            Err(Error::BOutOfRange { b: 3, q: 3 })
        );
    }

    #[test]
    fn catalog_monodromy() {
        assert_eq!(
            abelianized_monodromy(&trefoil()),
            vec![vec![0, 1], vec![-1, 1]]
        );
        assert_eq!(
            abelianized_monodromy(&figure_eight()),
            vec![vec![1, 1], vec![1, 2]]
        );
        assert_eq!(epsilon0(&trefoil()), Ok(1));
        assert_eq!(epsilon0(&figure_eight()), Ok(-1));
    }

    #[test]
    fn lookup_names() {
        assert!(matches!(lookup("trefoil"), Ok(CatalogEntry::Fibered(_))));
        assert!(matches!(
            lookup("torus_4_7"),
            Ok(CatalogEntry::Torus { p: 4, q: 7 })
        ));
        assert!(matches!(lookup("torus_4_6"), Err(Error::NotCoprime { .. })));
        assert!(matches!(lookup("unknot"), Err(Error::UnknownKnot(_))));
        assert_eq!(lookup("torus_3_5").unwrap().genus(), 4);
    }
}
