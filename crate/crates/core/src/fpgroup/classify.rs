//! Combined group classification: simplify, abelianize, enumerate.

use std::fmt;

use serde::{Deserialize, Serialize};

use super::coset::{todd_coxeter, Enumeration};
use super::presentation::{AbelianInvariants, Presentation};
use super::tietze::tietze_simplify;

/// Rewrite passes allotted to simplification inside `classify_group`.
const TIETZE_PASSES: usize = 64;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Triviality {
    ProvedTrivial,
    ProvedNontrivial,
    Unknown,
}

impl fmt::Display for Triviality {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Triviality::ProvedTrivial => write!(f, "proved trivial"),
            Triviality::ProvedNontrivial => write!(f, "proved nontrivial"),
            Triviality::Unknown => write!(f, "unknown"),
        }
    }
}

/// Everything the engine can certify about a presented group.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroupVerdict {
    pub triviality: Triviality,
    /// Group order, when coset enumeration over the trivial subgroup closed.
    pub finite_index: Option<usize>,
    pub abelian: AbelianInvariants,
    /// Tietze-simplified presentation, kept as the certificate for free groups.
    pub simplified: Presentation,
}

impl GroupVerdict {
    pub fn proved_trivial(&self) -> bool {
        self.triviality == Triviality::ProvedTrivial
    }

    /// The `pi1 = Z` certificate: one free generator after simplification.
    pub fn certified_infinite_cyclic(&self) -> bool {
        self.simplified.is_free_of_rank(1)
            && self.abelian
                == AbelianInvariants {
                    free_rank: 1,
                    torsion: vec![],
                }
    }
}

/// Classifies a presented group within the given coset budget.
///
/// Triviality is only ever claimed on hard evidence: the simplified
/// presentation is empty, or enumeration over the trivial subgroup closed
/// with index 1. Enumeration is skipped when the abelianization already
/// shows the group is infinite.
pub fn classify_group(p: &Presentation, max_cosets: usize) -> GroupVerdict {
    let simplified = tietze_simplify(p, TIETZE_PASSES);
    let abelian = simplified.abelian_invariants();
    debug_assert_eq!(abelian, p.abelian_invariants());

    let enumeration = if abelian.free_rank > 0 {
        // infinite abelianization: the enumeration can never close
        None
    } else {
        match todd_coxeter(&simplified, &[], max_cosets) {
            Enumeration::Index(n) => Some(n),
            Enumeration::Exceeded => None,
        }
    };

    let triviality = if enumeration == Some(1) || simplified.is_empty_presentation() {
        Triviality::ProvedTrivial
    } else if !abelian.is_trivial() || enumeration.is_some_and(|n| n > 1) {
        Triviality::ProvedNontrivial
    } else {
        Triviality::Unknown
    };

    if triviality == Triviality::ProvedTrivial {
        debug_assert!(abelian.is_trivial());
    }

    GroupVerdict {
        triviality,
        finite_index: enumeration,
        abelian,
        simplified,
    }
}
