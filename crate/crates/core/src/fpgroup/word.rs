//! Words in a free group: sequences of signed generator letters.

use std::collections::BTreeMap;
use std::fmt;

use super::FpError;

/// Sign of a single letter: the generator or its inverse.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub fn flip(self) -> Sign {
        match self {
            Sign::Plus => Sign::Minus,
            Sign::Minus => Sign::Plus,
        }
    }

    pub fn exponent(self) -> i64 {
        match self {
            Sign::Plus => 1,
            Sign::Minus => -1,
        }
    }
}

/// One letter of a word: a 0-based generator index with a sign.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Letter {
    pub gen: usize,
    pub sign: Sign,
}

impl Letter {
    pub fn pos(gen: usize) -> Letter {
        Letter {
            gen,
            sign: Sign::Plus,
        }
    }

    pub fn neg(gen: usize) -> Letter {
        Letter {
            gen,
            sign: Sign::Minus,
        }
    }

    pub fn inverse(self) -> Letter {
        Letter {
            gen: self.gen,
            sign: self.sign.flip(),
        }
    }

    fn cancels(self, other: Letter) -> bool {
        self.gen == other.gen && self.sign != other.sign
    }
}

/// A freely reduced word. The empty word is the identity.
///
/// Construction always reduces, so no adjacent pair `x x^-1` survives.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Word {
    letters: Vec<Letter>,
}

/// Freely reduce a raw letter sequence with a stack pass.
pub fn free_reduce(raw: &[Letter]) -> Word {
    let mut stack: Vec<Letter> = Vec::with_capacity(raw.len());
    for &l in raw {
        match stack.last() {
            Some(&top) if top.cancels(l) => {
                stack.pop();
            }
            _ => stack.push(l),
        }
    }
    Word { letters: stack }
}

impl Word {
    pub fn identity() -> Word {
        Word {
            letters: Vec::new(),
        }
    }

    pub fn generator(gen: usize) -> Word {
        Word {
            letters: vec![Letter::pos(gen)],
        }
    }

    pub fn from_letters(raw: Vec<Letter>) -> Word {
        free_reduce(&raw)
    }

    /// Builds a word from (generator, exponent) pairs, e.g. `[(0, 2), (1, -1)]` = a^2 b^-1.
    pub fn from_exponents(pairs: &[(usize, i64)]) -> Word {
        let mut raw = Vec::new();
        for &(gen, exp) in pairs {
            let sign = if exp >= 0 { Sign::Plus } else { Sign::Minus };
            for _ in 0..exp.unsigned_abs() {
                raw.push(Letter { gen, sign });
            }
        }
        free_reduce(&raw)
    }

    pub fn letters(&self) -> &[Letter] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn is_identity(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn inverse(&self) -> Word {
        Word {
            letters: self.letters.iter().rev().map(|l| l.inverse()).collect(),
        }
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut raw = self.letters.clone();
        raw.extend_from_slice(&other.letters);
        free_reduce(&raw)
    }

    pub fn pow(&self, exp: i64) -> Word {
        let base = if exp >= 0 {
            self.clone()
        } else {
            self.inverse()
        };
        let mut out = Word::identity();
        for _ in 0..exp.unsigned_abs() {
            out = out.concat(&base);
        }
        out
    }

    /// Commutator x y x^-1 y^-1, stored expanded.
    pub fn commutator(x: &Word, y: &Word) -> Word {
        x.concat(y).concat(&x.inverse()).concat(&y.inverse())
    }

    /// Cyclic reduction: strips matching inverse letters from the two ends.
    pub fn cyclically_reduce(&self) -> Word {
        let mut letters = self.letters.clone();
        while letters.len() >= 2 {
            let first = letters[0];
            let last = *letters.last().unwrap();
            if first.cancels(last) {
                letters.remove(0);
                letters.pop();
            } else {
                break;
            }
        }
        Word { letters }
    }

    /// Largest generator index occurring in the word, if any.
    pub fn max_gen(&self) -> Option<usize> {
        self.letters.iter().map(|l| l.gen).max()
    }

    /// Exponent sum per generator, for the abelianized relation matrix.
    pub fn exponent_sums(&self, n_gens: usize) -> Vec<i64> {
        let mut sums = vec![0i64; n_gens];
        for l in &self.letters {
            sums[l.gen] += l.sign.exponent();
        }
        sums
    }

    pub fn count_occurrences(&self, gen: usize) -> usize {
        self.letters.iter().filter(|l| l.gen == gen).count()
    }

    /// Homomorphic image: replaces each generator by its image word.
    ///
    /// Every generator occurring in the word must have an image.
    pub fn substitute(&self, images: &BTreeMap<usize, Word>) -> Result<Word, FpError> {
        let mut raw = Vec::new();
        for l in &self.letters {
            let image = images
                .get(&l.gen)
                .ok_or(FpError::MissingImage { generator: l.gen })?;
            match l.sign {
                Sign::Plus => raw.extend_from_slice(image.letters()),
                Sign::Minus => raw.extend(image.letters.iter().rev().map(|x| x.inverse())),
            }
        }
        Ok(free_reduce(&raw))
    }

    /// Renders the word over the given generator names, `1` for the identity.
    pub fn display<'a>(&'a self, names: &'a [String]) -> WordDisplay<'a> {
        WordDisplay { word: self, names }
    }
}

pub struct WordDisplay<'a> {
    word: &'a Word,
    names: &'a [String],
}

impl fmt::Display for WordDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.word.is_identity() {
            return write!(f, "1");
        }
        // run-length collapse into name^k
        let mut i = 0;
        let letters = self.word.letters();
        let mut first = true;
        while i < letters.len() {
            let l = letters[i];
            let mut j = i + 1;
            while j < letters.len() && letters[j] == l {
                j += 1;
            }
            let exp = (j - i) as i64 * l.sign.exponent();
            if !first {
                write!(f, " ")?;
            }
            first = false;
            let name = &self.names[l.gen];
            if exp == 1 {
                write!(f, "{name}")?;
            } else {
                write!(f, "{name}^{exp}")?;
            }
            i = j;
        }
        Ok(())
    }
}
