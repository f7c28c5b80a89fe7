//! Characters fixed by the monodromy and their lifts to representations of
//! the knot group (genus 1).

use std::fmt;

use nalgebra::Matrix2;
use rand::Rng;
use serde::{Deserialize, Serialize};

use super::knot::FiberedKnot;
use super::poly::Polynomial;
use crate::error::{Error, Result};
use crate::group::{commutator_trace, sl2, sl2_det, sl2_trace, Flavor, Representation, Sl2Matrix};
use crate::linalg::{self, CMat, C64, ONE, ZERO};
use crate::tolerance::Tolerances;

/// Fixed locus of the trace map written as `x_j = f(…)` substitutions plus
/// remaining polynomial relations in the free coordinates.
#[derive(Debug, Clone, PartialEq)]
pub struct FixedLocus {
    pub substitutions: Vec<(usize, Polynomial)>,
    pub relations: Vec<Polynomial>,
}

impl FixedLocus {
    pub fn is_everything(&self) -> bool {
        self.substitutions.is_empty() && self.relations.is_empty()
    }

    /// Coordinates that are not eliminated by a substitution.
    pub fn free_coordinates(&self) -> Vec<usize> {
        (0..3)
            .filter(|i| !self.substitutions.iter().any(|(j, _)| j == i))
            .collect()
    }

    /// Complete a partial point onto the locus.
    ///
    /// Missing free coordinates are solved from the relations (at most one
    /// unknown); among several roots the one with the smallest imaginary
    /// part, then the smallest real part, is taken.
    pub fn complete(&self, known: [Option<C64>; 3], tol: &Tolerances) -> Result<[C64; 3]> {
        let free = self.free_coordinates();
        let unknown: Vec<usize> = free
            .iter()
            .copied()
            .filter(|&i| known[i].is_none())
            .collect();
        let mut x = [ZERO; 3];
        for &i in &free {
            if let Some(v) = known[i] {
                x[i] = v;
            }
        }
        match unknown.len() {
            0 => {}
            1 => {
                let var = unknown[0];
                let rel = self
                    .relations
                    .iter()
                    .find(|r| r.degree_in(var) > 0)
                    .ok_or_else(|| {
                        Error::UnsupportedLocus(format!("x{} is unconstrained", var + 1))
                    })?;
                let coeffs: Vec<C64> = rel
                    .coefficients_in(var)
                    .iter()
                    .map(|c| c.eval(&x))
                    .collect();
                let mut roots = polynomial_roots(&coeffs)?;
                roots.sort_by(|a, b| {
                    a.im.abs()
                        .total_cmp(&b.im.abs())
                        .then(a.re.total_cmp(&b.re))
                        .then(a.im.total_cmp(&b.im))
                });
                x[var] = *roots.first().ok_or_else(|| {
                    Error::UnsupportedLocus(format!(
                        "relation has no root in x{} at this point",
                        var + 1
                    ))
                })?;
            }
            _ => {
                return Err(Error::UnsupportedLocus(format!(
                    "{} free coordinates missing",
                    unknown.len()
                )))
            }
        }
        for (j, f) in &self.substitutions {
            match known[*j] {
                Some(v) if (v - f.eval(&x)).norm() > 1e-8 * v.norm().max(1.0) => {
                    return Err(Error::UnsupportedLocus(format!(
                        "x{} = {v} is off the locus",
                        j + 1
                    )))
                }
                _ => {}
            }
        }
        let subs: Vec<(usize, C64)> = self
            .substitutions
            .iter()
            .map(|(j, f)| (*j, f.eval(&x)))
            .collect();
        for (j, v) in subs {
            x[j] = v;
        }
        for r in &self.relations {
            let v = r.eval(&x);
            if v.norm()
                > tol.relator.max(1e-8)
                    * x.iter()
                        .map(|z| z.norm())
                        .fold(1.0, f64::max)
                        .powi(r.total_degree() as i32)
            {
                return Err(Error::UnsupportedLocus(format!(
                    "point violates the relation {r} = 0 (residual {:.3e})",
                    v.norm()
                )));
            }
        }
        Ok(x)
    }

    /// Random point on the locus: free coordinates drawn from `[-2.5, 2.5]`
    /// (plus an imaginary part in `[-1, 1]` unless `real`), the last one
    /// solved from the relations.
    pub fn sample<R: Rng + ?Sized>(
        &self,
        rng: &mut R,
        real: bool,
        tol: &Tolerances,
    ) -> Result<[C64; 3]> {
        let free = self.free_coordinates();
        let solved = free
            .iter()
            .rev()
            .copied()
            .find(|&i| self.relations.iter().any(|r| r.degree_in(i) > 0));
        let mut known = [None; 3];
        for &i in &free {
            if Some(i) != solved {
                let im = if real { 0.0 } else { rng.gen_range(-1.0..1.0) };
                known[i] = Some(C64::new(rng.gen_range(-2.5..2.5), im));
            }
        }
        self.complete(known, tol)
    }
}

impl fmt::Display for FixedLocus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_everything() {
            return write!(f, "all of (x1, x2, x3)");
        }
        let mut parts: Vec<String> = self
            .substitutions
            .iter()
            .map(|(j, p)| format!("x{} = {p}", j + 1))
            .collect();
        parts.extend(self.relations.iter().map(|r| format!("{r} = 0")));
        write!(f, "{}", parts.join(", "))
    }
}

/// Roots of `Σ c_k z^k` (lowest degree first) from the companion matrix.
pub fn polynomial_roots(coeffs: &[C64]) -> Result<Vec<C64>> {
    let scale = coeffs.iter().map(|c| c.norm()).fold(0.0, f64::max);
    let mut deg = coeffs.len();
    while deg > 0 && coeffs[deg - 1].norm() <= 1e-14 * scale.max(1e-300) {
        deg -= 1;
    }
    if deg <= 1 {
        return Ok(Vec::new());
    }
    let n = deg - 1;
    let lead = coeffs[n];
    let mut comp = CMat::zeros(n, n);
    for i in 1..n {
        comp[(i, i - 1)] = ONE;
    }
    for i in 0..n {
        comp[(i, n - 1)] = -coeffs[i] / lead;
    }
    linalg::eigenvalues(&comp)
}

fn leading_substitution(r: &Polynomial) -> Option<(usize, Polynomial)> {
    // Prefer eliminating the highest-index coordinate.
    for var in (0..3).rev() {
        let cs = r.coefficients_in(var);
        if cs.len() != 2 {
            continue;
        }
        let lin = &cs[1];
        if lin.total_degree() != 0 {
            continue;
        }
        let Some((_, c)) = lin.leading() else {
            continue;
        };
        if c.abs() != 1 {
            continue;
        }
        // r = c·x_var + rest  ⇒  x_var = −c·rest.
        return Some((var, cs[0].scale(-c)));
    }
    None
}

/// Rewrite `p` modulo `rules` (leading monomial → rest), repeatedly.
fn reduce_by(p: &Polynomial, rules: &[Polynomial]) -> Polynomial {
    let mut p = p.clone();
    'outer: for _ in 0..256 {
        for rule in rules {
            let Some((lead, lc)) = rule.leading() else {
                continue;
            };
            if lc.abs() != 1 {
                continue;
            }
            let hit = p
                .terms()
                .find(|(e, _)| (0..3).all(|i| e[i] >= lead[i]))
                .map(|(e, &c)| ([e[0] - lead[0], e[1] - lead[1], e[2] - lead[2]], c));
            if let Some((quotient_e, c)) = hit {
                let q = Polynomial::from_terms([(quotient_e, c * lc)]);
                p = p.sub(&rule.mul(&q));
                continue 'outer;
            }
        }
        break;
    }
    p
}

/// The fixed locus `P(x) = x` of the knot's trace map.
pub fn fixed_point_characters(fk: &FiberedKnot) -> Result<FixedLocus> {
    let p = fk.trace_map.as_ref().ok_or(Error::NoTraceMap)?;
    let mut pending: Vec<Polynomial> = (0..3)
        .map(|i| p.components[i].sub(&Polynomial::var(i)))
        .filter(|r| !r.is_zero())
        .collect();
    let mut substitutions: Vec<(usize, Polynomial)> = Vec::new();
    loop {
        let found = pending
            .iter()
            .enumerate()
            .find_map(|(k, r)| leading_substitution(r).map(|s| (k, s)));
        let Some((k, (var, f))) = found else { break };
        pending.remove(k);
        for r in pending.iter_mut() {
            *r = r.substitute(var, &f);
        }
        for (_, g) in substitutions.iter_mut() {
            *g = g.substitute(var, &f);
        }
        substitutions.push((var, f));
        pending.retain(|r| !r.is_zero());
    }
    // Remove relations implied by the others.
    let mut relations: Vec<Polynomial> = Vec::new();
    pending.sort_by_key(|r| (r.total_degree(), r.terms().count()));
    for r in pending {
        let reduced = reduce_by(&r, &relations);
        if !reduced.is_zero() {
            relations.push(r);
        }
    }
    substitutions.sort_by_key(|(j, _)| *j);
    Ok(FixedLocus {
        substitutions,
        relations,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum LiftSign {
    Plus,
    Minus,
}

impl LiftSign {
    pub fn factor(&self) -> C64 {
        match self {
            LiftSign::Plus => ONE,
            LiftSign::Minus => -ONE,
        }
    }
}

/// Principal root `(x + √(x² − 4))/2` of `z² − x z + 1`.
fn trace_root(x: C64) -> C64 {
    (x + (x * x - 4.0).sqrt()) / 2.0
}

/// Solve `Y T = T X` for all pairs, returning the null vector of the
/// stacked system as a matrix together with the two smallest singular
/// values.
fn intertwiner(pairs: &[(Sl2Matrix, Sl2Matrix)]) -> (Sl2Matrix, f64, f64, f64) {
    // Row-major vec(T) = (t00, t01, t10, t11).
    let mut sys = CMat::zeros(4 * pairs.len(), 4);
    for (k, (x, y)) in pairs.iter().enumerate() {
        for i in 0..2 {
            for j in 0..2 {
                let row = 4 * k + 2 * i + j;
                // (Y T)_{ij} = Σ_l Y_il T_lj ; (T X)_{ij} = Σ_l T_il X_lj
                for l in 0..2 {
                    sys[(row, 2 * l + j)] += y[(i, l)];
                    sys[(row, 2 * i + l)] -= x[(l, j)];
                }
            }
        }
    }
    // Four rows per pair and at least one pair, so `s` has four entries.
    let svd = linalg::Svd::new(&sys);
    let sv = &svd.s;
    let null = svd.v.column(3);
    let t = Matrix2::new(null[0], null[1], null[2], null[3]);
    (t, sv[3], sv[2], sv[0])
}

/// Representation of the knot group with prescribed fiber character.
///
/// The fiber matrices are `A = [[α, 1], [0, 1/α]]` and
/// `B = [[β, 0], [r, 1/β]]` with `α`, `β` principal roots of the trace
/// quadratics and `r` fixed by `Tr AB = x3`. The meridian is the
/// intertwiner of the monodromy, scaled to determinant one by the principal
/// square root; `Minus` negates it.
pub fn lift_character_to_rep(
    fk: &FiberedKnot,
    point: &[C64; 3],
    sign: LiftSign,
    tol: &Tolerances,
) -> Result<Representation> {
    if fk.genus != 1 {
        return Err(Error::NoTraceMap);
    }
    let [x1, x2, x3] = *point;
    let kappa = commutator_trace(x1, x2, x3);
    let scale = point.iter().map(|z| z.norm()).fold(1.0, f64::max);
    if (kappa - 2.0 * ONE).norm() <= 1e-8 * scale * scale {
        return Err(Error::ReducibleCharacter(format!("{kappa}")));
    }
    let alpha = trace_root(x1);
    let beta = trace_root(x2);
    let r = x3 - alpha * beta - ONE / (alpha * beta);
    let a = sl2(alpha, ONE, ZERO, ONE / alpha);
    let b = sl2(beta, ZERO, r, ONE / beta);
    let fiber = Representation {
        images: vec![a, b],
        flavor: Flavor::Sl2C,
    };
    let xa = fiber.evaluate_word(&fk.monodromy[0]);
    let xb = fiber.evaluate_word(&fk.monodromy[1]);
    let (t, smin, snext, smax) = intertwiner(&[(xa, a), (xb, b)]);
    if smin > tol.relator * smax.max(1.0) {
        return Err(Error::NoIntertwiner(smin));
    }
    if snext <= tol.relator * smax.max(1.0) {
        return Err(Error::ReducibleCharacter(format!(
            "{kappa} (intertwiners form a space of dimension ≥ 2)"
        )));
    }
    let det = sl2_det(&t);
    if det.norm() <= 1e-10 {
        return Err(Error::SingularIntertwiner);
    }
    let t = t / det.sqrt() * sign.factor();
    let rep = Representation::new(vec![a, b, t], Flavor::Sl2C, tol)?;
    rep.check_relators(&fk.presentation(), tol)?;
    Ok(rep)
}

/// Character of the figure-eight holonomy: `x1 = (3 + i√3)/2`,
/// `x2 = x̄1`, `x3 = x1`.
pub fn figure_eight_holonomy_point() -> [C64; 3] {
    let x1 = C64::new(1.5, 3f64.sqrt() / 2.0);
    [x1, x1.conj(), x1]
}

/// Lift of the figure-eight holonomy conjugated so that the meridian is
/// `[[±1, 1], [0, ±1]]`.
pub fn figure_eight_holonomy(
    fk: &FiberedKnot,
    sign: LiftSign,
    tol: &Tolerances,
) -> Result<Representation> {
    let point = figure_eight_holonomy_point();
    let target = sign.factor() * 2.0;
    let mut rep = lift_character_to_rep(fk, &point, LiftSign::Plus, tol)?;
    let mi = fk.meridian_index();
    if (sl2_trace(rep.image(mi)) - target).norm() > 1e-6 {
        rep = lift_character_to_rep(fk, &point, LiftSign::Minus, tol)?;
    }
    let t = *rep.image(mi);
    let eig = sign.factor();
    let shifted = t - Sl2Matrix::identity() * eig;
    let shifted_c = CMat::from_fn(2, 2, |i, j| shifted[(i, j)]);
    let kernel = linalg::kernel(&shifted_c, &Tolerances::default().with_rank_rel(1e-6));
    if kernel.ncols() != 1 {
        return Err(Error::UnsupportedLocus(
            "meridian of the holonomy lift is not parabolic".into(),
        ));
    }
    let e = kernel.column(0).into_owned();
    let e_mat = CMat::from_column_slice(2, 1, e.as_slice());
    let f = linalg::least_squares(&shifted_c, &e_mat, tol);
    let p_inv = Matrix2::new(e[0], f[(0, 0)], e[1], f[(1, 0)]);
    let d = sl2_det(&p_inv);
    let p_inv = p_inv / d.sqrt();
    let p = crate::group::sl2_inverse(&p_inv);
    let out = rep.conjugate(&p);
    out.check_relators(&fk.presentation(), tol)?;
    Ok(out)
}
