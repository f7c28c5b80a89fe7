//! Integer polynomials in the trace coordinates `x1, x2, x3`.

use std::collections::BTreeMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::linalg::{CMat, C64};

pub type Exponents = [u32; 3];

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Polynomial {
    terms: BTreeMap<Exponents, i64>,
}

impl Polynomial {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn constant(c: i64) -> Self {
        Self::from_terms([([0, 0, 0], c)])
    }

    /// The coordinate `x_{i+1}`.
    pub fn var(i: usize) -> Self {
        let mut e = [0; 3];
        e[i] = 1;
        Self::from_terms([(e, 1)])
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (Exponents, i64)>) -> Self {
        let mut p = Polynomial::zero();
        for (e, c) in terms {
            p.add_term(e, c);
        }
        p
    }

    fn add_term(&mut self, e: Exponents, c: i64) {
        let entry = self.terms.entry(e).or_insert(0);
        *entry += c;
        if *entry == 0 {
            self.terms.remove(&e);
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Exponents, &i64)> {
        self.terms.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn degree_in(&self, var: usize) -> u32 {
        self.terms.keys().map(|e| e[var]).max().unwrap_or(0)
    }

    pub fn total_degree(&self) -> u32 {
        self.terms.keys().map(|e| e.iter().sum()).max().unwrap_or(0)
    }

    pub fn add(&self, other: &Polynomial) -> Polynomial {
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(*e, *c);
        }
        out
    }

    pub fn sub(&self, other: &Polynomial) -> Polynomial {
        self.add(&other.scale(-1))
    }

    pub fn scale(&self, k: i64) -> Polynomial {
        Self::from_terms(self.terms.iter().map(|(e, c)| (*e, c * k)))
    }

    pub fn mul(&self, other: &Polynomial) -> Polynomial {
        let mut out = Polynomial::zero();
        for (e1, c1) in &self.terms {
            for (e2, c2) in &other.terms {
                out.add_term([e1[0] + e2[0], e1[1] + e2[1], e1[2] + e2[2]], c1 * c2);
            }
        }
        out
    }

    pub fn pow(&self, n: u32) -> Polynomial {
        (0..n).fold(Polynomial::constant(1), |acc, _| acc.mul(self))
    }

    pub fn derivative(&self, var: usize) -> Polynomial {
        Self::from_terms(self.terms.iter().filter(|(e, _)| e[var] > 0).map(|(e, c)| {
            let mut d = *e;
            d[var] -= 1;
            (d, c * e[var] as i64)
        }))
    }

    pub fn eval(&self, x: &[C64; 3]) -> C64 {
        self.terms
            .iter()
            .map(|(e, c)| {
                x[0].powu(e[0]) * x[1].powu(e[1]) * x[2].powu(e[2]) * C64::new(*c as f64, 0.0)
            })
            .sum()
    }

    /// `p(q₁, q₂, q₃)`.
    pub fn compose(&self, q: &[Polynomial; 3]) -> Polynomial {
        let mut out = Polynomial::zero();
        for (e, c) in &self.terms {
            let m = q[0].pow(e[0]).mul(&q[1].pow(e[1])).mul(&q[2].pow(e[2]));
            out = out.add(&m.scale(*c));
        }
        out
    }

    /// Replace `x_var` by `q`.
    pub fn substitute(&self, var: usize, q: &Polynomial) -> Polynomial {
        let mut images = [Polynomial::var(0), Polynomial::var(1), Polynomial::var(2)];
        images[var] = q.clone();
        self.compose(&images)
    }

    /// Coefficients in `x_var` as polynomials in the other variables,
    /// lowest degree first.
    pub fn coefficients_in(&self, var: usize) -> Vec<Polynomial> {
        let mut out = vec![Polynomial::zero(); self.degree_in(var) as usize + 1];
        for (e, c) in &self.terms {
            let mut rest = *e;
            rest[var] = 0;
            out[e[var] as usize].add_term(rest, *c);
        }
        out
    }

    /// Leading monomial in graded lexicographic order.
    pub fn leading(&self) -> Option<(Exponents, i64)> {
        self.terms
            .iter()
            .max_by_key(|(e, _)| (e.iter().sum::<u32>(), **e))
            .map(|(e, c)| (*e, *c))
    }

    /// Parse sums of monomials such as `x2*x3^2 - x1x3 - 2*x2 + 1`.
    pub fn parse(s: &str) -> Result<Polynomial> {
        Parser {
            s: s.as_bytes(),
            pos: 0,
        }
        .polynomial()
    }
}

struct Parser<'a> {
    s: &'a [u8],
    pos: usize,
}

impl Parser<'_> {
    fn skip_ws(&mut self) {
        while self.pos < self.s.len() && self.s[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.s.get(self.pos).copied()
    }

    fn err(&self, what: &str) -> Error {
        Error::Parse(format!(
            "{what} at position {} in polynomial `{}`",
            self.pos,
            String::from_utf8_lossy(self.s)
        ))
    }

    fn number(&mut self) -> Option<u64> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.s.len() && self.s[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        std::str::from_utf8(&self.s[start..self.pos])
            .ok()
            .and_then(|t| t.parse().ok())
    }

    fn polynomial(&mut self) -> Result<Polynomial> {
        let mut out = Polynomial::zero();
        let mut sign = 1i64;
        if let Some(b'-') = self.peek() {
            self.pos += 1;
            sign = -1;
        } else if let Some(b'+') = self.peek() {
            self.pos += 1;
        }
        loop {
            let (e, c) = self.monomial()?;
            out.add_term(e, sign * c);
            match self.peek() {
                None => return Ok(out),
                Some(b'+') => sign = 1,
                Some(b'-') => sign = -1,
                Some(_) => return Err(self.err("expected + or -")),
            }
            self.pos += 1;
        }
    }

    fn monomial(&mut self) -> Result<(Exponents, i64)> {
        let mut coeff = 1i64;
        let mut e = [0u32; 3];
        loop {
            match self.peek() {
                Some(b) if b.is_ascii_digit() => {
                    coeff *= self.number().ok_or_else(|| self.err("bad number"))? as i64;
                }
                Some(b'x') => {
                    self.pos += 1;
                    let idx = match self.s.get(self.pos) {
                        Some(b'1') => 0,
                        Some(b'2') => 1,
                        Some(b'3') => 2,
                        _ => return Err(self.err("expected x1, x2 or x3")),
                    };
                    self.pos += 1;
                    let mut power = 1;
                    if self.peek() == Some(b'^') {
                        self.pos += 1;
                        power = self.number().ok_or_else(|| self.err("bad exponent"))? as u32;
                    }
                    e[idx] += power;
                }
                _ => return Err(self.err("expected a monomial")),
            }
            match self.peek() {
                Some(b'*') => self.pos += 1,
                Some(b'x') => {}
                _ => break,
            }
        }
        Ok((e, coeff))
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        let mut ordered: Vec<_> = self.terms.iter().collect();
        ordered.sort_by_key(|(e, _)| std::cmp::Reverse((e.iter().sum::<u32>(), **e)));
        for (e, &c) in ordered {
            let mut factors = Vec::new();
            for (i, &k) in e.iter().enumerate() {
                match k {
                    0 => {}
                    1 => factors.push(format!("x{}", i + 1)),
                    _ => factors.push(format!("x{}^{k}", i + 1)),
                }
            }
            let mag = c.unsigned_abs();
            let body = match (factors.is_empty(), mag) {
                (true, _) => mag.to_string(),
                (false, 1) => factors.join("*"),
                (false, _) => format!("{mag}*{}", factors.join("*")),
            };
            if first {
                if c < 0 {
                    write!(f, "-")?;
                }
                write!(f, "{body}")?;
                first = false;
            } else {
                write!(f, " {} {body}", if c < 0 { '-' } else { '+' })?;
            }
        }
        Ok(())
    }
}

/// Action of the monodromy on the trace coordinates of a genus-1 fiber.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TraceCoordMap {
    pub components: [Polynomial; 3],
}

impl TraceCoordMap {
    pub fn identity() -> Self {
        TraceCoordMap {
            components: [Polynomial::var(0), Polynomial::var(1), Polynomial::var(2)],
        }
    }

    pub fn parse(parts: &[&str]) -> Result<Self> {
        if parts.len() != 3 {
            return Err(Error::Parse(format!(
                "trace map needs three polynomials, got {}",
                parts.len()
            )));
        }
        Ok(TraceCoordMap {
            components: [
                Polynomial::parse(parts[0])?,
                Polynomial::parse(parts[1])?,
                Polynomial::parse(parts[2])?,
            ],
        })
    }

    pub fn eval(&self, x: &[C64; 3]) -> [C64; 3] {
        [
            self.components[0].eval(x),
            self.components[1].eval(x),
            self.components[2].eval(x),
        ]
    }

    pub fn strings(&self) -> Vec<String> {
        self.components.iter().map(|p| p.to_string()).collect()
    }
}

/// `(∂P_i/∂x_j)` at `point`.
pub fn trace_jacobian(p: &TraceCoordMap, point: &[C64; 3]) -> CMat {
    CMat::from_fn(3, 3, |i, j| p.components[i].derivative(j).eval(point))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{c, from_real};

    fn figure_eight() -> TraceCoordMap {
        TraceCoordMap::parse(&["x3", "x2*x3 - x1", "x2x3^2 - x1x3 - x2"]).unwrap()
    }

    #[test]
    fn parse_and_display() {
        let p = Polynomial::parse("x2x3^2 - x1*x3 - x2 + 3").unwrap();
        assert_eq!(p.to_string(), "x2*x3^2 - x1*x3 - x2 + 3");
        assert_eq!(Polynomial::parse(&p.to_string()).unwrap(), p);
        assert!(Polynomial::parse("x4").is_err());
        assert!(Polynomial::parse("x1 +").is_err());
    }

    #[test]
    fn arithmetic() {
        let x1 = Polynomial::var(0);
        let x2 = Polynomial::var(1);
        let sq = x1.add(&x2).pow(2);
        assert_eq!(sq, Polynomial::parse("x1^2 + 2x1x2 + x2^2").unwrap());
        assert_eq!(sq.derivative(0), Polynomial::parse("2x1 + 2x2").unwrap());
        assert!(sq.sub(&sq).is_zero());
    }

    #[test]
    fn trefoil_jacobian_is_a_permutation() {
        let p = TraceCoordMap::parse(&["x2", "x3", "x1"]).unwrap();
        let j = trace_jacobian(&p, &[c(0.3, 0.0), c(1.0, 2.0), c(-1.0, 0.0)]);
        assert_eq!(j, from_real(3, 3, &[0., 1., 0., 0., 0., 1., 1., 0., 0.]));
    }

    #[test]
    fn identity_jacobian() {
        let j = trace_jacobian(&TraceCoordMap::identity(), &[c(1.0, 0.0); 3]);
        assert_eq!(j, CMat::identity(3, 3));
    }

    #[test]
    fn figure_eight_jacobian_at_origin() {
        let j = trace_jacobian(&figure_eight(), &[c(0.0, 0.0); 3]);
        assert_eq!(j, from_real(3, 3, &[0., 0., 1., -1., 0., 0., 0., -1., 0.]));
    }

    #[test]
    fn commutator_trace_is_invariant() {
        let kappa = Polynomial::parse("x1^2 + x2^2 + x3^2 - x1x2x3 - 2").unwrap();
        for p in [
            figure_eight(),
            TraceCoordMap::parse(&["x2", "x3", "x1"]).unwrap(),
        ] {
            assert_eq!(kappa.compose(&p.components), kappa);
        }
    }
}
