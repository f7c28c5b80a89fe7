use std::fmt;
use std::ops::Mul;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Letter {
    pub generator: usize,
    /// +1 or −1.
    pub exponent: i8,
}

impl Letter {
    pub fn new(generator: usize, exponent: i8) -> Self {
        debug_assert!(exponent == 1 || exponent == -1);
        Letter {
            generator,
            exponent,
        }
    }

    pub fn inverse(self) -> Self {
        Letter::new(self.generator, -self.exponent)
    }
}

/// Element of a free group as a list of letters (not necessarily reduced).
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Word {
    pub letters: Vec<Letter>,
}

impl Word {
    pub fn empty() -> Self {
        Word::default()
    }

    pub fn generator(g: usize) -> Self {
        Word {
            letters: vec![Letter::new(g, 1)],
        }
    }

    pub fn from_letters(letters: Vec<Letter>) -> Self {
        Word { letters }
    }

    /// Parse a word in generator names; an upper-case name denotes the
    /// inverse. Tokens are whitespace separated; when all names are single
    /// characters, tokens may also be run together (`"aBA"`). `"1"` and the
    /// empty string are the identity.
    pub fn parse(s: &str, names: &[String]) -> Result<Self> {
        let single = names.iter().all(|n| n.chars().count() == 1);
        let mut letters = Vec::new();
        for token in s.split_whitespace() {
            if token == "1" {
                continue;
            }
            if let Some(l) = lookup(token, names) {
                letters.push(l);
            } else if single {
                for ch in token.chars() {
                    let t = ch.to_string();
                    letters.push(lookup(&t, names).ok_or(Error::UnknownGenerator(t))?);
                }
            } else {
                return Err(Error::UnknownGenerator(token.to_string()));
            }
        }
        Ok(Word { letters })
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    /// Free reduction.
    pub fn reduce(&self) -> Word {
        let mut out: Vec<Letter> = Vec::with_capacity(self.letters.len());
        for &l in &self.letters {
            if out.last() == Some(&l.inverse()) {
                out.pop();
            } else {
                out.push(l);
            }
        }
        Word { letters: out }
    }

    pub fn inverse(&self) -> Word {
        Word {
            letters: self.letters.iter().rev().map(|l| l.inverse()).collect(),
        }
    }

    pub fn exponent_sum(&self, generator: usize) -> i64 {
        self.letters
            .iter()
            .filter(|l| l.generator == generator)
            .map(|l| l.exponent as i64)
            .sum()
    }

    pub fn max_generator(&self) -> Option<usize> {
        self.letters.iter().map(|l| l.generator).max()
    }

    pub fn contains_generator(&self, g: usize) -> bool {
        self.letters.iter().any(|l| l.generator == g)
    }

    /// Substitute a word for every generator.
    pub fn substitute(&self, images: &[Word]) -> Word {
        let mut out = Word::empty();
        for l in &self.letters {
            let w = &images[l.generator];
            if l.exponent == 1 {
                out.letters.extend_from_slice(&w.letters);
            } else {
                out.letters.extend(w.inverse().letters);
            }
        }
        out
    }

    /// `[u, v] = u v u⁻¹ v⁻¹`.
    pub fn commutator(u: &Word, v: &Word) -> Word {
        u * v * u.inverse() * v.inverse()
    }

    pub fn display<'a>(&'a self, names: &'a [String]) -> WordDisplay<'a> {
        WordDisplay { word: self, names }
    }
}

fn lookup(token: &str, names: &[String]) -> Option<Letter> {
    if let Some(i) = names.iter().position(|n| n == token) {
        return Some(Letter::new(i, 1));
    }
    let lower = token.to_lowercase();
    if lower != token {
        if let Some(i) = names.iter().position(|n| *n == lower) {
            return Some(Letter::new(i, -1));
        }
    }
    None
}

impl Mul for &Word {
    type Output = Word;
    fn mul(self, rhs: &Word) -> Word {
        let mut letters = self.letters.clone();
        letters.extend_from_slice(&rhs.letters);
        Word { letters }
    }
}

impl Mul<Word> for Word {
    type Output = Word;
    fn mul(mut self, rhs: Word) -> Word {
        self.letters.extend(rhs.letters);
        self
    }
}

impl Mul<&Word> for Word {
    type Output = Word;
    fn mul(mut self, rhs: &Word) -> Word {
        self.letters.extend_from_slice(&rhs.letters);
        self
    }
}

pub struct WordDisplay<'a> {
    word: &'a Word,
    names: &'a [String],
}

impl fmt::Display for WordDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.word.is_empty() {
            return write!(f, "1");
        }
        let parts: Vec<String> = self
            .word
            .letters
            .iter()
            .map(|l| {
                let name = &self.names[l.generator];
                if l.exponent == 1 {
                    name.clone()
                } else {
                    name.to_uppercase()
                }
            })
            .collect();
        write!(f, "{}", parts.join(" "))
    }
}

/// Finite presentation ⟨generators | relators⟩.
#[derive(Debug, Clone, PartialEq)]
pub struct GroupPresentation {
    pub generators: Vec<String>,
    pub relators: Vec<Word>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
struct PresentationJson {
    generators: Vec<String>,
    relators: Vec<String>,
}

impl GroupPresentation {
    pub fn new(generators: Vec<String>, relators: Vec<Word>) -> Result<Self> {
        for (i, r) in relators.iter().enumerate() {
            if r.max_generator().is_some_and(|g| g >= generators.len()) {
                return Err(Error::Parse(format!(
                    "relator {i} references a generator outside the presentation"
                )));
            }
        }
        Ok(GroupPresentation {
            generators,
            relators,
        })
    }

    pub fn parse(generators: &[&str], relators: &[&str]) -> Result<Self> {
        let names: Vec<String> = generators.iter().map(|s| s.to_string()).collect();
        let rels = relators
            .iter()
            .map(|r| Word::parse(r, &names))
            .collect::<Result<Vec<_>>>()?;
        Self::new(names, rels)
    }

    pub fn free(generators: &[&str]) -> Self {
        Self::parse(generators, &[]).expect("no relators to parse")
    }

    /// ⟨m, l | m l m⁻¹ l⁻¹⟩.
    pub fn torus() -> Self {
        Self::parse(&["m", "l"], &["m l M L"]).expect("static presentation")
    }

    pub fn generator_count(&self) -> usize {
        self.generators.len()
    }

    pub fn word(&self, s: &str) -> Result<Word> {
        Word::parse(s, &self.generators)
    }

    pub fn from_json_str(s: &str) -> Result<Self> {
        let j: PresentationJson =
            serde_json::from_str(s).map_err(|e| Error::Parse(e.to_string()))?;
        let rels: Vec<&str> = j.relators.iter().map(|s| s.as_str()).collect();
        let gens: Vec<&str> = j.generators.iter().map(|s| s.as_str()).collect();
        Self::parse(&gens, &rels)
    }

    pub fn to_json_string(&self) -> String {
        let j = PresentationJson {
            generators: self.generators.clone(),
            relators: self
                .relators
                .iter()
                .map(|r| r.display(&self.generators).to_string())
                .collect(),
        };
        serde_json::to_string_pretty(&j).expect("serializable")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn names() -> Vec<String> {
        vec!["a".into(), "b".into(), "t".into()]
    }

    #[test]
    fn parse_spaced_and_compact() {
        let n = names();
        let w = Word::parse("T a t B A", &n).unwrap();
        assert_eq!(w, Word::parse("TatBA", &n).unwrap());
        assert_eq!(w.len(), 5);
        assert_eq!(w.letters[0], Letter::new(2, -1));
        assert_eq!(w.display(&n).to_string(), "T a t B A");
    }

    #[test]
    fn unknown_generator() {
        assert_eq!(
            Word::parse("a x", &names()),
            Err(Error::UnknownGenerator("x".into()))
        );
    }

    #[test]
    fn reduction_and_inverse() {
        let n = names();
        let w = Word::parse("a b B A t", &n).unwrap();
        assert_eq!(w.reduce(), Word::generator(2));
        let u = Word::parse("a b T", &n).unwrap();
        assert!((&u * &u.inverse()).reduce().is_empty());
        assert!(Word::parse("1", &n).unwrap().is_empty());
    }

    #[test]
    fn exponent_sums() {
        let w = Word::parse("a B A b b", &names()).unwrap();
        assert_eq!(w.exponent_sum(0), 0);
        assert_eq!(w.exponent_sum(1), 1);
    }

    #[test]
    fn presentation_json_round_trip() {
        let p = GroupPresentation::parse(&["a", "b", "t"], &["T a t B A", "T b t B A B"]).unwrap();
        let q = GroupPresentation::from_json_str(&p.to_json_string()).unwrap();
        assert_eq!(p, q);
    }

    #[test]
    fn substitution() {
        let n = names();
        let images = vec![
            Word::parse("a b", &n).unwrap(),
            Word::parse("b a b", &n).unwrap(),
            Word::generator(2),
        ];
        let w = Word::parse("a B", &n).unwrap().substitute(&images);
        assert_eq!(w.reduce(), Word::parse("a b B A B", &n).unwrap().reduce());
    }
}
