//! Construction-script AST.
//!
//! The same statement list deserializes from the line-oriented `.scn`
//! syntax and from a JSON document; both routes produce this tree.

use serde::{Deserialize, Serialize};

use crate::surgery::RimFate;

/// A formal word over named generators: (name, exponent) factors.
pub type FormalWord = Vec<(String, i64)>;

/// An integer literal or a `$name` parameter reference.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum IntOrParam {
    Lit(i64),
    Param(String),
}

impl IntOrParam {
    pub fn resolve(&self, params: &std::collections::BTreeMap<String, i64>) -> Result<i64, String> {
        match self {
            IntOrParam::Lit(v) => Ok(*v),
            IntOrParam::Param(name) => params
                .get(name)
                .copied()
                .ok_or_else(|| format!("undefined parameter ${name}")),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Script {
    /// Parameters with defaults, overridable at run time.
    #[serde(default)]
    pub params: Vec<(String, i64)>,
    pub statements: Vec<Statement>,
}

impl Script {
    pub fn empty() -> Script {
        Script {
            params: Vec::new(),
            statements: Vec::new(),
        }
    }

    /// Copy with source positions zeroed, for comparing round-tripped ASTs.
    pub fn normalized(&self) -> Script {
        Script {
            params: self.params.clone(),
            statements: self
                .statements
                .iter()
                .map(|s| Statement {
                    line: 0,
                    kind: s.kind.clone(),
                })
                .collect(),
        }
    }
}

/// One statement, tagged with its 1-based source line.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Statement {
    #[serde(default)]
    pub line: usize,
    #[serde(flatten)]
    pub kind: StatementKind,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "stmt", rename_all = "snake_case")]
pub enum StatementKind {
    Block {
        name: String,
        ctor: BlockCtor,
    },
    Product {
        name: String,
        left: String,
        right: String,
    },
    Glue {
        name: String,
        /// side-1 generator -> formal word over primed side-2 generators
        /// (primes stripped; the meridian rule is implicit and fixed)
        images: Vec<(String, FormalWord)>,
    },
    FiberSum {
        name: String,
        model1: String,
        marking1: String,
        model2: String,
        marking2: String,
        glue: String,
        directives: Vec<Directive>,
    },
    Mark {
        name: String,
        model: String,
        torus_gens: Vec<String>,
        normal_euler: i64,
        transverse_sphere: bool,
        /// marking generator (or "mu") -> word over ambient pi1 generators
        images: Vec<(String, FormalWord)>,
    },
    Luttinger {
        name: String,
        model: String,
        marking: String,
        curve: String,
        power: IntOrParam,
        sign: i8,
        kill: Option<(String, String)>,
    },
    McgCheck {
        family: String,
        genus: u32,
    },
    Family {
        g_from: u32,
        g_to: u32,
        n_from: u32,
        n_to: u32,
    },
    Assert {
        model: String,
        property: Property,
        value: AssertValue,
    },
    Report {
        model: String,
    },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum BlockCtor {
    Surface {
        genus: u32,
        gens: Option<Vec<String>>,
    },
    RationalSurface {
        k: u32,
    },
    EllipticSurface {
        n: u32,
    },
    Declare(DeclareFields),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DeclareFields {
    pub dim: u8,
    /// euler (dim 2), (c1_sq, c2) (dim 4) or (c1_cubed, c1c2, c3) (dim 6)
    pub chern: Vec<i64>,
    pub signature: Option<i64>,
    pub betti: Vec<i64>,
    pub pi1_gens: Vec<String>,
    pub pi1_relators: Vec<FormalWord>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "directive", rename_all = "snake_case")]
pub enum Directive {
    Keep {
        side: u8,
        label: String,
        new_label: Option<String>,
    },
    Sew {
        label1: String,
        label2: String,
        new_label: String,
    },
    Rim {
        circle: String,
        fate: RimFate,
    },
    BasisComplete,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Property {
    Pi1,
    Chern,
    Cy,
    B2,
    Signature,
    C1Evals,
    Form,
}

impl Property {
    pub fn parse(s: &str) -> Option<Property> {
        Some(match s {
            "pi1" => Property::Pi1,
            "chern" => Property::Chern,
            "cy" => Property::Cy,
            "b2" => Property::B2,
            "signature" => Property::Signature,
            "c1_evals" => Property::C1Evals,
            "form" => Property::Form,
            _ => return None,
        })
    }

    pub fn name(&self) -> &'static str {
        match self {
            Property::Pi1 => "pi1",
            Property::Chern => "chern",
            Property::Cy => "cy",
            Property::B2 => "b2",
            Property::Signature => "signature",
            Property::C1Evals => "c1_evals",
            Property::Form => "form",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "expect", rename_all = "snake_case")]
pub enum AssertValue {
    /// pi1: proved trivial by enumeration or an empty presentation.
    Trivial,
    /// pi1: cyclic factors Z_{n_i}; n = 0 means a free Z factor. A value
    /// resolving to Z alone demands the free-rank-1 certificate, a value
    /// resolving to the trivial group demands ProvedTrivial.
    Abelian { factors: Vec<IntOrParam> },
    /// chern: dimension-matched tuple.
    Chern { values: Vec<i64> },
    /// cy: expected verdict name.
    Cy { verdict: String },
    /// b2 / signature / c1_evals: integer comparison.
    Int { value: i64 },
    /// form: invariant tuple.
    Form {
        rank: usize,
        positive: usize,
        negative: usize,
        even: bool,
        unimodular: bool,
    },
}
