//! Manifold models: dimension-tagged invariant records.
//!
//! A model carries exactly the data the surgery calculus consumes: Chern
//! numbers, Betti numbers, a fundamental-group presentation, a declared
//! H2 basis with c1-evaluations, and codimension-2 submanifold markings
//! with complement pi1 data. No smooth or symplectic structure is
//! represented; models are immutable once constructed.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::fpgroup::{FpError, Presentation, Word};
use crate::lattice::{self, AmbientDiagonalForm, IntLattice};

pub const MERIDIAN: &str = "mu";

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BlockError {
    #[error("expected a dimension-{expected} model, `{name}` has dimension {got}")]
    DimensionMismatch { name: String, expected: u8, got: u8 },
    #[error("betti vector violates Poincare duality: b{k} = {bk} but b{dual} = {bdual}")]
    PoincareDuality {
        k: usize,
        bk: i64,
        dual: usize,
        bdual: i64,
    },
    #[error("alternating betti sum {betti_sum} does not equal the top Chern number {top_chern}")]
    EulerMismatch { betti_sum: i64, top_chern: i64 },
    #[error("betti vector has {got} entries, dimension {dim} needs {need}")]
    BettiLength { got: usize, dim: u8, need: usize },
    #[error("declared-complete basis lists {listed} essential classes but b2 = {b2}")]
    BasisCount { listed: usize, b2: i64 },
    #[error("marking `{name}` has no transverse sphere: complement pi1 is unknown")]
    NoTransverseSphere { name: String },
    #[error("marking `{marking}`: boundary image missing for generator `{generator}`")]
    MissingBoundaryImage { marking: String, generator: String },
    #[error("marking `{marking}`: `{name}` is not an ambient pi1 generator")]
    UnknownAmbientGenerator { marking: String, name: String },
    #[error(
        "marking `{marking}`: meridian must map to the identity when a transverse sphere exists"
    )]
    MeridianNotKilled { marking: String },
    #[error("duplicate h2 label `{0}`")]
    DuplicateLabel(String),
    #[error("pi1 generator names collide in product: `{0}`")]
    GeneratorNameClash(String),
    #[error("elliptic surface needs n >= 1")]
    EllipticIndex,
    #[error("group error: {0}")]
    Group(#[from] FpError),
    #[error("lattice error: {0}")]
    Lattice(#[from] lattice::LatticeError),
}

/// Chern numbers, tagged by real dimension.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum ChernNumbers {
    Dim2 { euler: i64 },
    Dim4 { c1_sq: i64, c2: i64 },
    Dim6 { c1_cubed: i64, c1c2: i64, c3: i64 },
}

impl ChernNumbers {
    pub fn dim(&self) -> u8 {
        match self {
            ChernNumbers::Dim2 { .. } => 2,
            ChernNumbers::Dim4 { .. } => 4,
            ChernNumbers::Dim6 { .. } => 6,
        }
    }

    /// Top Chern number = Euler characteristic.
    pub fn top(&self) -> i64 {
        match *self {
            ChernNumbers::Dim2 { euler } => euler,
            ChernNumbers::Dim4 { c2, .. } => c2,
            ChernNumbers::Dim6 { c3, .. } => c3,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum ClassKind {
    Sphere,
    Torus,
    GenusG(u32),
    FourTorus,
}

impl std::fmt::Display for ClassKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            ClassKind::Sphere => write!(f, "sphere"),
            ClassKind::Torus => write!(f, "torus"),
            ClassKind::GenusG(g) => write!(f, "genus-{g}"),
            ClassKind::FourTorus => write!(f, "4-torus"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub enum ClassStatus {
    Essential,
    KilledBy(String),
}

/// One declared H2 basis class.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassRecord {
    pub label: String,
    pub kind: ClassKind,
    /// Self-intersection, present only in dimension-4 ambients.
    pub self_pairing: Option<i64>,
    pub c1_eval: i64,
    pub status: ClassStatus,
}

impl ClassRecord {
    pub fn is_essential(&self) -> bool {
        self.status == ClassStatus::Essential
    }
}

/// Codimension-2 marking: a submanifold with complement pi1 data.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SubmanifoldMarking {
    pub name: String,
    pub submanifold: Box<ManifoldModel>,
    pub normal_euler: i64,
    pub has_transverse_sphere: bool,
    /// pi1 of the complement; equals ambient pi1 when a transverse sphere exists.
    pub complement_pi1: Presentation,
    /// Images of each submanifold generator and of the meridian in complement pi1.
    pub boundary_images: BTreeMap<String, Word>,
    /// [Y].[C] for each ambient h2 label the marking knows about.
    pub class_pairings: BTreeMap<String, i64>,
}

impl SubmanifoldMarking {
    pub fn image_of(&self, generator: &str) -> Result<&Word, BlockError> {
        self.boundary_images
            .get(generator)
            .ok_or_else(|| BlockError::MissingBoundaryImage {
                marking: self.name.clone(),
                generator: generator.to_string(),
            })
    }

    pub fn meridian_image(&self) -> Result<&Word, BlockError> {
        self.image_of(MERIDIAN)
    }

    pub fn submanifold_generators(&self) -> Vec<String> {
        self.submanifold.pi1.generators().to_vec()
    }
}

/// The central invariant record.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ManifoldModel {
    pub name: String,
    pub dim: u8,
    pub chern: ChernNumbers,
    /// Signature of the intersection form, dimension 4 only.
    pub signature: Option<i64>,
    pub betti: Vec<i64>,
    /// Derivation qualifiers, keyed by betti index (e.g. "declared basis").
    pub betti_notes: BTreeMap<usize, String>,
    pub pi1: Presentation,
    pub h2_basis: Vec<ClassRecord>,
    pub h2_complete: bool,
    /// Full intersection pairing of the declared basis, dimension 4 only.
    pub form: Option<IntLattice>,
    pub markings: BTreeMap<String, SubmanifoldMarking>,
    pub provenance: Vec<String>,
}

impl ManifoldModel {
    pub fn euler(&self) -> i64 {
        self.chern.top()
    }

    pub fn essential_classes(&self) -> impl Iterator<Item = &ClassRecord> {
        self.h2_basis.iter().filter(|c| c.is_essential())
    }

    pub fn essential_count(&self) -> usize {
        self.essential_classes().count()
    }

    pub fn class(&self, label: &str) -> Option<&ClassRecord> {
        self.h2_basis.iter().find(|c| c.label == label)
    }

    pub fn marking(&self, name: &str) -> Option<&SubmanifoldMarking> {
        self.markings.get(name)
    }

    pub fn expect_dim(&self, expected: u8) -> Result<(), BlockError> {
        if self.dim != expected {
            return Err(BlockError::DimensionMismatch {
                name: self.name.clone(),
                expected,
                got: self.dim,
            });
        }
        Ok(())
    }

    /// Consistency gate run by every constructor: Poincare duality, the
    /// Euler identity with the top Chern number, label uniqueness, and the
    /// basis count when the basis is declared complete.
    pub fn validate(&self) -> Result<(), BlockError> {
        let need = self.dim as usize + 1;
        if self.betti.len() != need {
            return Err(BlockError::BettiLength {
                got: self.betti.len(),
                dim: self.dim,
                need,
            });
        }
        for k in 0..need {
            let dual = self.dim as usize - k;
            if self.betti[k] != self.betti[dual] {
                return Err(BlockError::PoincareDuality {
                    k,
                    bk: self.betti[k],
                    dual,
                    bdual: self.betti[dual],
                });
            }
        }
        let alternating: i64 = self
            .betti
            .iter()
            .enumerate()
            .map(|(k, &b)| if k % 2 == 0 { b } else { -b })
            .sum();
        if alternating != self.chern.top() {
            return Err(BlockError::EulerMismatch {
                betti_sum: alternating,
                top_chern: self.chern.top(),
            });
        }
        let mut seen = Vec::new();
        for c in &self.h2_basis {
            if seen.contains(&&c.label) {
                return Err(BlockError::DuplicateLabel(c.label.clone()));
            }
            seen.push(&c.label);
        }
        if self.h2_complete && self.dim >= 2 {
            let listed = self.essential_count();
            if listed as i64 != self.betti[2] {
                return Err(BlockError::BasisCount {
                    listed,
                    b2: self.betti[2],
                });
            }
        }
        Ok(())
    }

    pub fn with_provenance(mut self, line: String) -> ManifoldModel {
        self.provenance.push(line);
        self
    }
}

/// Closed orientable surface of genus g.
///
/// Generator names may be supplied (the constructions use c, d for a
/// product-torus factor and a, b for a fiber); defaults are a, b at genus
/// one and x1, y1, ... otherwise.
pub fn surface(
    name: &str,
    genus: u32,
    gen_names: Option<Vec<String>>,
) -> Result<ManifoldModel, BlockError> {
    let names = match gen_names {
        Some(names) => names,
        None if genus == 1 => vec!["a".to_string(), "b".to_string()],
        None => (1..=genus)
            .flat_map(|i| [format!("x{i}"), format!("y{i}")])
            .collect(),
    };
    if names.len() != 2 * genus as usize {
        return Err(FpError::BadSurfaceGenerators { count: names.len() }.into());
    }
    let model = ManifoldModel {
        name: name.to_string(),
        dim: 2,
        chern: ChernNumbers::Dim2 {
            euler: 2 - 2 * genus as i64,
        },
        signature: None,
        betti: vec![1, 2 * genus as i64, 1],
        betti_notes: BTreeMap::new(),
        pi1: Presentation::surface_group(names)?,
        h2_basis: Vec::new(),
        h2_complete: false,
        form: None,
        markings: BTreeMap::new(),
        provenance: vec![format!("surface(genus={genus})")],
    };
    model.validate()?;
    Ok(model)
}

/// CP^2 # k CP^2-bar.
pub fn rational_surface(name: &str, k: u32) -> Result<ManifoldModel, BlockError> {
    let k = k as i64;
    let model = ManifoldModel {
        name: name.to_string(),
        dim: 4,
        chern: ChernNumbers::Dim4 {
            c1_sq: 9 - k,
            c2: 3 + k,
        },
        signature: Some(1 - k),
        betti: vec![1, 0, 1 + k, 0, 1],
        betti_notes: BTreeMap::new(),
        pi1: Presentation::trivial(),
        h2_basis: Vec::new(),
        h2_complete: false,
        form: None,
        markings: BTreeMap::new(),
        provenance: vec![format!("rational_surface(k={k})")],
    };
    model.validate()?;
    Ok(model)
}

/// The simply connected elliptic surface E(n) without multiple fibers.
///
/// For n in {1, 2} the model carries the explicit basis (c1 evaluates as
/// (2-n) * (f . class)) and the full intersection form; for larger n only
/// the numerical invariants. The fiber marking `F` is always present: the
/// sphere section meets the fiber once, so the complement pi1 is trivial.
pub fn elliptic_surface(name: &str, n: u32) -> Result<ManifoldModel, BlockError> {
    if n == 0 {
        return Err(BlockError::EllipticIndex);
    }
    let n_i = n as i64;
    let (h2_basis, form, h2_complete, fiber_pairings) = match n {
        1 => e1_basis()?,
        2 => e2_basis()?,
        _ => (Vec::new(), None, false, BTreeMap::new()),
    };

    let mut model = ManifoldModel {
        name: name.to_string(),
        dim: 4,
        chern: ChernNumbers::Dim4 {
            c1_sq: 0,
            c2: 12 * n_i,
        },
        signature: Some(-8 * n_i),
        betti: vec![1, 0, 12 * n_i - 2, 0, 1],
        betti_notes: BTreeMap::new(),
        pi1: Presentation::trivial(),
        h2_basis,
        h2_complete,
        form,
        markings: BTreeMap::new(),
        provenance: vec![format!("elliptic_surface(n={n})")],
    };

    let fiber = surface("F", 1, Some(vec!["a".to_string(), "b".to_string()]))?;
    let mut images = BTreeMap::new();
    images.insert("a".to_string(), Word::identity());
    images.insert("b".to_string(), Word::identity());
    let marking = complement_pi1_via_sphere(&model, fiber, "F", 0, true, images, fiber_pairings)?;
    model.markings.insert("F".to_string(), marking);
    model.validate()?;
    Ok(model)
}

/// E(1) basis per the ten explicit vectors in <+1, -1^9>.
#[allow(clippy::type_complexity)]
fn e1_basis() -> Result<
    (
        Vec<ClassRecord>,
        Option<IntLattice>,
        bool,
        BTreeMap<String, i64>,
    ),
    BlockError,
> {
    let ambient = AmbientDiagonalForm::new(1, 9);
    let vectors = lattice::e1_basis_vectors();
    let labels = lattice::e1_basis_labels();
    let form = lattice::gram_from_vectors(&ambient, &vectors, labels.clone())?;
    let mut classes = Vec::new();
    let mut fiber_pairings = BTreeMap::new();
    for (i, label) in labels.iter().enumerate() {
        let f_dot = form.entry(0, i);
        fiber_pairings.insert(label.clone(), f_dot);
        classes.push(ClassRecord {
            label: label.clone(),
            kind: if i == 0 {
                ClassKind::Torus
            } else {
                ClassKind::Sphere
            },
            self_pairing: Some(form.entry(i, i)),
            c1_eval: f_dot, // c1(E(1)) = (2-1) f
            status: ClassStatus::Essential,
        });
    }
    Ok((classes, Some(form), true, fiber_pairings))
}

/// E(2) basis per the fiber-sum description: two Milnor-fiber copies of
/// -E8, the nucleus pair (f, sigma with sigma^2 = -2), and two rim
/// torus / dual-sphere pairs.
#[allow(clippy::type_complexity)]
fn e2_basis() -> Result<
    (
        Vec<ClassRecord>,
        Option<IntLattice>,
        bool,
        BTreeMap<String, i64>,
    ),
    BlockError,
> {
    let minus_e8 = lattice::standard_form(lattice::StandardForm::MinusE8);
    let chain_labels: Vec<String> = (1..=7)
        .map(|i| format!("e{i}-e{}", i + 1))
        .chain(["-h+e6+e7+e8".to_string()])
        .collect();

    let nucleus = IntLattice::new(vec!["f", "sigma"], vec![vec![0, 1], vec![1, -2]])?;
    let rim = |r: &str, s: &str| IntLattice::new(vec![r, s], vec![vec![0, 1], vec![1, -2]]);

    let mut form = nucleus;
    let copy = |suffix: &str| -> Result<IntLattice, BlockError> {
        let labels: Vec<String> = chain_labels
            .iter()
            .map(|l| format!("{l}{suffix}"))
            .collect();
        Ok(IntLattice::new(labels, minus_e8.gram().to_vec())?)
    };
    form = lattice::direct_sum(&form, &copy("")?);
    form = lattice::direct_sum(&form, &copy("'")?);
    form = lattice::direct_sum(&form, &rim("R1", "S1")?);
    form = lattice::direct_sum(&form, &rim("R2", "S2")?);

    let mut classes = Vec::new();
    let mut fiber_pairings = BTreeMap::new();
    for (i, label) in form.labels().to_vec().iter().enumerate() {
        let kind = if label == "f" || label.starts_with('R') {
            ClassKind::Torus
        } else {
            ClassKind::Sphere
        };
        fiber_pairings.insert(label.clone(), form.entry(0, i));
        classes.push(ClassRecord {
            label: label.clone(),
            kind,
            self_pairing: Some(form.entry(i, i)),
            c1_eval: 0, // c1(E(2)) = 0 . f
            status: ClassStatus::Essential,
        });
    }
    Ok((classes, Some(form), true, fiber_pairings))
}

/// Builds a marking whose complement pi1 is known through the transverse
/// sphere criterion: the inclusion complement -> ambient is a pi1
/// isomorphism, and the meridian bounds a disk on the sphere.
pub fn complement_pi1_via_sphere(
    ambient: &ManifoldModel,
    submanifold: ManifoldModel,
    name: &str,
    normal_euler: i64,
    has_transverse_sphere: bool,
    declared_images: BTreeMap<String, Word>,
    class_pairings: BTreeMap<String, i64>,
) -> Result<SubmanifoldMarking, BlockError> {
    if !has_transverse_sphere {
        return Err(BlockError::NoTransverseSphere {
            name: name.to_string(),
        });
    }
    let complement_pi1 = ambient.pi1.clone();
    let mut boundary_images = BTreeMap::new();
    for gen in submanifold.pi1.generators() {
        let image = declared_images
            .get(gen)
            .ok_or_else(|| BlockError::MissingBoundaryImage {
                marking: name.to_string(),
                generator: gen.clone(),
            })?
            .clone();
        if let Some(max) = image.max_gen() {
            if max >= complement_pi1.generators().len() {
                return Err(BlockError::UnknownAmbientGenerator {
                    marking: name.to_string(),
                    name: format!("#{max}"),
                });
            }
        }
        boundary_images.insert(gen.clone(), image);
    }
    if let Some(mu) = declared_images.get(MERIDIAN) {
        if !mu.is_identity() {
            return Err(BlockError::MeridianNotKilled {
                marking: name.to_string(),
            });
        }
    }
    boundary_images.insert(MERIDIAN.to_string(), Word::identity());
    Ok(SubmanifoldMarking {
        name: name.to_string(),
        submanifold: Box::new(submanifold),
        normal_euler,
        has_transverse_sphere,
        complement_pi1,
        boundary_images,
        class_pairings,
    })
}

/// Product of two surfaces as a dimension-4 model (T^4, Sigma_g x Sigma_h).
pub fn surface_product(
    name: &str,
    s1: &ManifoldModel,
    s2: &ManifoldModel,
) -> Result<ManifoldModel, BlockError> {
    s1.expect_dim(2)?;
    s2.expect_dim(2)?;
    let e1 = s1.euler();
    let e2 = s2.euler();
    let betti = kunneth(&s1.betti, &s2.betti, 4);
    let model = ManifoldModel {
        name: name.to_string(),
        dim: 4,
        chern: ChernNumbers::Dim4 {
            c1_sq: 2 * e1 * e2,
            c2: e1 * e2,
        },
        signature: Some(0),
        betti,
        betti_notes: BTreeMap::new(),
        pi1: product_presentation(&s1.pi1, &s2.pi1)?,
        h2_basis: Vec::new(),
        h2_complete: false,
        form: None,
        markings: BTreeMap::new(),
        provenance: vec![format!("surface_product({}, {})", s1.name, s2.name)],
    };
    model.validate()?;
    Ok(model)
}

/// A 4-torus with named circle generators, for rim-torus markings.
pub fn four_torus(name: &str, gen_names: Vec<String>) -> Result<ManifoldModel, BlockError> {
    if gen_names.len() != 4 {
        return Err(FpError::BadSurfaceGenerators {
            count: gen_names.len(),
        }
        .into());
    }
    let model = ManifoldModel {
        name: name.to_string(),
        dim: 4,
        chern: ChernNumbers::Dim4 { c1_sq: 0, c2: 0 },
        signature: Some(0),
        betti: vec![1, 4, 6, 4, 1],
        betti_notes: BTreeMap::new(),
        pi1: Presentation::free_abelian(gen_names)?,
        h2_basis: Vec::new(),
        h2_complete: false,
        form: None,
        markings: BTreeMap::new(),
        provenance: vec!["four_torus".to_string()],
    };
    model.validate()?;
    Ok(model)
}

fn kunneth(b1: &[i64], b2: &[i64], dim: usize) -> Vec<i64> {
    (0..=dim)
        .map(|k| {
            (0..=k)
                .map(|i| {
                    let x = b1.get(i).copied().unwrap_or(0);
                    let y = b2.get(k - i).copied().unwrap_or(0);
                    x * y
                })
                .sum()
        })
        .collect()
}

/// Direct-product presentation: both generator sets, both relator sets,
/// and all cross commutators.
fn product_presentation(p: &Presentation, q: &Presentation) -> Result<Presentation, BlockError> {
    for g in q.generators() {
        if p.generators().contains(g) {
            return Err(BlockError::GeneratorNameClash(g.clone()));
        }
    }
    let np = p.generators().len();
    let mut gens: Vec<String> = p.generators().to_vec();
    gens.extend(q.generators().iter().cloned());
    let mut relators: Vec<Word> = p.relators().to_vec();
    for r in q.relators() {
        relators.push(shift_word(r, np));
    }
    for i in 0..np {
        for j in 0..q.generators().len() {
            relators.push(Word::commutator(
                &Word::generator(i),
                &Word::generator(np + j),
            ));
        }
    }
    Ok(Presentation::new(gens, relators)?)
}

pub(crate) fn shift_word(w: &Word, offset: usize) -> Word {
    Word::from_letters(
        w.letters()
            .iter()
            .map(|l| crate::fpgroup::Letter {
                gen: l.gen + offset,
                sign: l.sign,
            })
            .collect(),
    )
}

/// M x S for a 4-manifold M and surface S.
///
/// Chern numbers by the Whitney product formula, Betti numbers by
/// Kunneth, pi1 the direct product. The declared basis lists M's classes
/// plus pt x S; sphere-transverse markings of M lift to Y x S markings
/// whose complement pi1 is again the ambient group.
pub fn product(
    name: &str,
    m: &ManifoldModel,
    s: &ManifoldModel,
) -> Result<ManifoldModel, BlockError> {
    m.expect_dim(4)?;
    s.expect_dim(2)?;
    let es = s.euler();
    let ChernNumbers::Dim4 { c1_sq, c2 } = m.chern else {
        unreachable!()
    };

    let pi1 = product_presentation(&m.pi1, &s.pi1)?;
    let betti = kunneth(&m.betti, &s.betti, 6);

    let pt_label = format!("pt_x_{}", s.name);
    let mut h2_basis: Vec<ClassRecord> = m
        .h2_basis
        .iter()
        .map(|c| ClassRecord {
            label: c.label.clone(),
            kind: c.kind,
            self_pairing: None,
            c1_eval: c.c1_eval,
            status: c.status.clone(),
        })
        .collect();
    let s_genus_kind = match s.euler() {
        2 => ClassKind::Sphere,
        0 => ClassKind::Torus,
        e => ClassKind::GenusG(((2 - e) / 2) as u32),
    };
    h2_basis.push(ClassRecord {
        label: pt_label.clone(),
        kind: s_genus_kind,
        self_pairing: None,
        c1_eval: es,
        status: ClassStatus::Essential,
    });

    let h2_complete = m.h2_complete && h2_basis.len() as i64 == betti[2];

    let mut model = ManifoldModel {
        name: name.to_string(),
        dim: 6,
        chern: ChernNumbers::Dim6 {
            c1_cubed: 3 * c1_sq * es,
            c1c2: (c1_sq + c2) * es,
            c3: c2 * es,
        },
        signature: None,
        betti,
        betti_notes: BTreeMap::new(),
        pi1,
        h2_basis,
        h2_complete,
        form: None,
        markings: BTreeMap::new(),
        provenance: vec![format!("product({}, {})", m.name, s.name)],
    };
    if es == 0 {
        model.provenance.push(format!(
            "{pt_label}: c1 evaluation 0 (push-off disjoint from the marked fiber)"
        ));
    }

    // lift sphere-transverse markings Y -> Y x S
    let np = m.pi1.generators().len();
    for (mname, mk) in &m.markings {
        if !mk.has_transverse_sphere {
            continue;
        }
        let lifted_sub = surface_product(
            &format!("{}x{}", mk.submanifold.name, s.name),
            &mk.submanifold,
            s,
        )?;
        let mut images = BTreeMap::new();
        for gen in mk.submanifold.pi1.generators() {
            // image words lived in pi1(M); M generators come first in the product
            images.insert(gen.clone(), mk.boundary_images[gen].clone());
        }
        for (j, gen) in s.pi1.generators().iter().enumerate() {
            images.insert(gen.clone(), Word::generator(np + j));
        }
        let mut pairings: BTreeMap<String, i64> = mk.class_pairings.clone();
        pairings.insert(pt_label.clone(), 0);
        let lifted = complement_pi1_via_sphere(
            &model,
            lifted_sub,
            mname,
            mk.normal_euler,
            true,
            images,
            pairings,
        )?;
        model.markings.insert(mname.clone(), lifted);
    }

    model.validate()?;
    Ok(model)
}

/// Raw invariants for a user-declared opaque block.
#[derive(Debug, Clone)]
pub struct DeclaredBlock {
    pub name: String,
    pub dim: u8,
    pub chern: ChernNumbers,
    pub signature: Option<i64>,
    pub betti: Vec<i64>,
    pub pi1: Presentation,
}

/// Stores a user-declared block after checking Poincare duality and the
/// Euler identity. No geometry is re-derived.
pub fn declare_block(raw: DeclaredBlock) -> Result<ManifoldModel, BlockError> {
    if raw.chern.dim() != raw.dim {
        return Err(BlockError::DimensionMismatch {
            name: raw.name.clone(),
            expected: raw.dim,
            got: raw.chern.dim(),
        });
    }
    let model = ManifoldModel {
        name: raw.name,
        dim: raw.dim,
        chern: raw.chern,
        signature: raw.signature,
        betti: raw.betti,
        betti_notes: BTreeMap::new(),
        pi1: raw.pi1,
        h2_basis: Vec::new(),
        h2_complete: false,
        form: None,
        markings: BTreeMap::new(),
        provenance: vec!["declared".to_string()],
    };
    model.validate()?;
    Ok(model)
}

/// Attaches a genus-g fiber marking with trivial boundary images, as for
/// the fiber of a Lefschetz fibration with a sphere section on a simply
/// connected total space.
pub fn with_trivial_fiber_marking(
    mut model: ManifoldModel,
    genus: u32,
) -> Result<ManifoldModel, BlockError> {
    let fiber = surface("F", genus, None)?;
    let mut images = BTreeMap::new();
    for gen in fiber.pi1.generators() {
        images.insert(gen.clone(), Word::identity());
    }
    let marking = complement_pi1_via_sphere(&model, fiber, "F", 0, true, images, BTreeMap::new())?;
    model.markings.insert("F".to_string(), marking);
    Ok(model)
}
