//! Finitely presented groups and their abelian invariants.

use std::fmt;

use serde::{Deserialize, Serialize};

use super::snf::smith_normal_form;
use super::word::Word;
use super::FpError;

/// A finite presentation: named generators and relator words.
///
/// Relators are stored freely and cyclically reduced; empty relators are kept
/// (simplification removes them) so that assembly code never loses track of
/// how many relations it produced.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Presentation {
    generators: Vec<String>,
    relators: Vec<Word>,
}

impl Presentation {
    pub fn new<S: Into<String>>(
        generators: Vec<S>,
        relators: Vec<Word>,
    ) -> Result<Presentation, FpError> {
        let generators: Vec<String> = generators.into_iter().map(Into::into).collect();
        for (i, g) in generators.iter().enumerate() {
            if generators[..i].contains(g) {
                return Err(FpError::DuplicateGenerator { name: g.clone() });
            }
        }
        let mut reduced = Vec::with_capacity(relators.len());
        for r in relators {
            if let Some(max) = r.max_gen() {
                if max >= generators.len() {
                    return Err(FpError::GeneratorIndexOutOfRange {
                        index: max,
                        count: generators.len(),
                    });
                }
            }
            reduced.push(r.cyclically_reduce());
        }
        Ok(Presentation {
            generators,
            relators: reduced,
        })
    }

    pub fn trivial() -> Presentation {
        Presentation {
            generators: Vec::new(),
            relators: Vec::new(),
        }
    }

    /// Free group of the given rank with default names.
    pub fn free(names: Vec<String>) -> Result<Presentation, FpError> {
        Presentation::new(names, Vec::new())
    }

    pub fn generators(&self) -> &[String] {
        &self.generators
    }

    pub fn relators(&self) -> &[Word] {
        &self.relators
    }

    pub fn generator_index(&self, name: &str) -> Option<usize> {
        self.generators.iter().position(|g| g == name)
    }

    pub fn is_empty_presentation(&self) -> bool {
        self.generators.is_empty() && self.relators.iter().all(Word::is_identity)
    }

    /// Free of the given rank: n generators and no (nonempty) relators.
    pub fn is_free_of_rank(&self, rank: usize) -> bool {
        self.generators.len() == rank && self.relators.iter().all(Word::is_identity)
    }

    /// The standard genus-g surface presentation over the given 2g names
    /// (one product-of-commutators relator; `[x, y]` alone for g = 1).
    pub fn surface_group(names: Vec<String>) -> Result<Presentation, FpError> {
        if !names.len().is_multiple_of(2) {
            return Err(FpError::BadSurfaceGenerators { count: names.len() });
        }
        let g = names.len() / 2;
        let mut relator = Word::identity();
        for i in 0..g {
            let x = Word::generator(2 * i);
            let y = Word::generator(2 * i + 1);
            relator = relator.concat(&Word::commutator(&x, &y));
        }
        let relators = if g == 0 { Vec::new() } else { vec![relator] };
        Presentation::new(names, relators)
    }

    /// Free abelian presentation: all pairwise commutators.
    pub fn free_abelian(names: Vec<String>) -> Result<Presentation, FpError> {
        let n = names.len();
        let mut relators = Vec::new();
        for i in 0..n {
            for j in (i + 1)..n {
                relators.push(Word::commutator(&Word::generator(i), &Word::generator(j)));
            }
        }
        Presentation::new(names, relators)
    }

    /// Exponent-sum relation matrix: one row per relator.
    pub fn relation_matrix(&self) -> Vec<Vec<i64>> {
        self.relators
            .iter()
            .map(|r| r.exponent_sums(self.generators.len()))
            .collect()
    }

    pub fn abelian_invariants(&self) -> AbelianInvariants {
        let diag = smith_normal_form(&self.relation_matrix());
        let rank = diag.len();
        let torsion: Vec<i64> = diag.into_iter().filter(|&d| d > 1).collect();
        AbelianInvariants {
            free_rank: self.generators.len() - rank,
            torsion,
        }
    }

    pub fn display(&self) -> PresentationDisplay<'_> {
        PresentationDisplay(self)
    }
}

pub struct PresentationDisplay<'a>(&'a Presentation);

impl fmt::Display for PresentationDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "< {} | ", self.0.generators.join(", "))?;
        let rels: Vec<String> = self
            .0
            .relators
            .iter()
            .filter(|r| !r.is_identity())
            .map(|r| r.display(&self.0.generators).to_string())
            .collect();
        write!(f, "{} >", rels.join(", "))
    }
}

/// Invariant factors of the abelianization: free rank plus a divisor chain.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AbelianInvariants {
    pub free_rank: usize,
    /// d_1 | d_2 | ... with every entry >= 2.
    pub torsion: Vec<i64>,
}

impl AbelianInvariants {
    pub fn trivial() -> AbelianInvariants {
        AbelianInvariants {
            free_rank: 0,
            torsion: Vec::new(),
        }
    }

    pub fn is_trivial(&self) -> bool {
        self.free_rank == 0 && self.torsion.is_empty()
    }

    /// Normal form of a list of cyclic factors Z_{n_i} (n = 0 meaning Z).
    pub fn from_cyclic_factors(factors: &[i64]) -> AbelianInvariants {
        let n = factors.len();
        let mut matrix = vec![vec![0i64; n]; n];
        for (i, &f) in factors.iter().enumerate() {
            matrix[i][i] = f;
        }
        let diag = smith_normal_form(&matrix);
        let rank = diag.len();
        AbelianInvariants {
            free_rank: n - rank,
            torsion: diag.into_iter().filter(|&d| d > 1).collect(),
        }
    }
}

impl fmt::Display for AbelianInvariants {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_trivial() {
            return write!(f, "trivial");
        }
        let mut parts = Vec::new();
        match self.free_rank {
            0 => {}
            1 => parts.push("Z".to_string()),
            k => parts.push(format!("Z^{k}")),
        }
        for d in &self.torsion {
            parts.push(format!("Z_{d}"));
        }
        write!(f, "{}", parts.join(" x "))
    }
}
