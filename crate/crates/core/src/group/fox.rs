//! Fox free differential calculus and the integral group ring.

use std::collections::BTreeMap;

use super::lie::{adjoint, AdMatrix};
use super::rep::Representation;
use super::word::Word;
use crate::linalg::C64;

/// Finite sum `Σ nᵢ wᵢ` of reduced words with integer coefficients.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct GroupRingElement {
    terms: Vec<(i64, Word)>,
}

impl GroupRingElement {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::from_terms(vec![(1, Word::empty())])
    }

    /// Reduce words, merge duplicates and drop zero coefficients.
    pub fn from_terms(terms: Vec<(i64, Word)>) -> Self {
        let mut acc: BTreeMap<Word, i64> = BTreeMap::new();
        for (n, w) in terms {
            *acc.entry(w.reduce()).or_insert(0) += n;
        }
        GroupRingElement {
            terms: acc
                .into_iter()
                .filter(|(_, n)| *n != 0)
                .map(|(w, n)| (n, w))
                .collect(),
        }
    }

    pub fn terms(&self) -> &[(i64, Word)] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add(&self, other: &GroupRingElement) -> GroupRingElement {
        let mut t = self.terms.clone();
        t.extend(other.terms.iter().cloned());
        Self::from_terms(t)
    }

    pub fn neg(&self) -> GroupRingElement {
        GroupRingElement {
            terms: self.terms.iter().map(|(n, w)| (-n, w.clone())).collect(),
        }
    }

    /// Left multiplication by a group element.
    pub fn left_mul(&self, w: &Word) -> GroupRingElement {
        Self::from_terms(self.terms.iter().map(|(n, v)| (*n, w * v)).collect())
    }

    /// Augmentation `Σ nᵢ`.
    pub fn augmentation(&self) -> i64 {
        self.terms.iter().map(|(n, _)| n).sum()
    }
}

/// `∂w/∂g` with `∂(uv) = ∂u + u ∂v`, `∂g/∂g = 1`, `∂g⁻¹/∂g = −g⁻¹`.
pub fn fox_derivative(w: &Word, generator: usize) -> GroupRingElement {
    let mut prefix = Word::empty();
    let mut terms = Vec::new();
    for l in &w.letters {
        if l.generator == generator {
            if l.exponent == 1 {
                terms.push((1, prefix.clone()));
            } else {
                let mut p = prefix.clone();
                p.letters.push(*l);
                terms.push((-1, p));
            }
        }
        prefix.letters.push(*l);
    }
    GroupRingElement::from_terms(terms)
}

/// `Σ nᵢ Ad(ρ(wᵢ))`.
pub fn evaluate_group_ring(rep: &Representation, e: &GroupRingElement) -> AdMatrix {
    e.terms.iter().fold(AdMatrix::zeros(), |acc, (n, w)| {
        acc + adjoint(&rep.evaluate_word(w), rep.flavor) * C64::new(*n as f64, 0.0)
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::word::{Letter, Word};

    fn names() -> Vec<String> {
        vec!["u".into(), "v".into()]
    }

    #[test]
    fn axioms() {
        let n = names();
        let u = Word::generator(0);
        assert_eq!(fox_derivative(&u, 0), GroupRingElement::one());
        assert!(fox_derivative(&u, 1).is_zero());
        let uv = Word::parse("u v", &n).unwrap();
        assert_eq!(
            fox_derivative(&uv, 1),
            GroupRingElement::from_terms(vec![(1, u.clone())])
        );
        let ui = Word::from_letters(vec![Letter::new(0, -1)]);
        assert_eq!(
            fox_derivative(&ui, 0),
            GroupRingElement::from_terms(vec![(-1, ui.clone())])
        );
    }

    #[test]
    fn fundamental_formula_augmentation() {
        // ε(∂w/∂g) is the exponent sum of g in w.
        let n = names();
        let w = Word::parse("u v U U v v", &n).unwrap();
        for g in 0..2 {
            assert_eq!(fox_derivative(&w, g).augmentation(), w.exponent_sum(g));
        }
    }

    #[test]
    fn cancellation_normalizes() {
        let w = Word::generator(0);
        let e = GroupRingElement::from_terms(vec![(1, w.clone()), (-1, w)]);
        assert!(e.is_zero());
    }
}
