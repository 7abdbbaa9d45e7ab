//! Script execution: statements run in order against the block and
//! surgery operations, assertions are recorded (never aborting), and any
//! operation error aborts with the failing statement's line.

use std::collections::BTreeMap;

use super::ast::*;
use super::report::{model_section, EulerCheck, McgSection, Report};
use super::ScriptError;
use crate::blocks::{self, ChernNumbers, ManifoldModel};
use crate::fpgroup::{classify_group, AbelianInvariants, GroupVerdict, Presentation, Word};
use crate::lattice;
use crate::mcg;
use crate::surgery::{self, GluingMap, H2Directive, LuttingerSpec};

/// Default coset budget: every bundled scenario closes far below this.
pub const DEFAULT_MAX_COSETS: usize = 100_000;

#[derive(Debug, Clone)]
pub struct RunOptions {
    pub scenario: String,
    pub max_cosets: usize,
    /// Overrides for `param` declarations.
    pub params: BTreeMap<String, i64>,
}

impl Default for RunOptions {
    fn default() -> RunOptions {
        RunOptions {
            scenario: "script".to_string(),
            max_cosets: DEFAULT_MAX_COSETS,
            params: BTreeMap::new(),
        }
    }
}

struct Runtime {
    models: BTreeMap<String, ManifoldModel>,
    glues: BTreeMap<String, GluingMap>,
    verdicts: BTreeMap<String, GroupVerdict>,
    params: BTreeMap<String, i64>,
    max_cosets: usize,
}

impl Runtime {
    fn model(&self, name: &str, line: usize) -> Result<&ManifoldModel, ScriptError> {
        self.models
            .get(name)
            .ok_or_else(|| ScriptError::UndefinedName {
                line,
                name: name.to_string(),
            })
    }

    /// Classification is cached per model name; rebinding a name clears it.
    fn verdict(&mut self, name: &str, line: usize) -> Result<GroupVerdict, ScriptError> {
        if let Some(v) = self.verdicts.get(name) {
            return Ok(v.clone());
        }
        let pi1 = self.model(name, line)?.pi1.clone();
        let v = classify_group(&pi1, self.max_cosets);
        self.verdicts.insert(name.to_string(), v.clone());
        Ok(v)
    }

    fn bind(&mut self, name: &str, model: ManifoldModel) {
        self.verdicts.remove(name);
        self.models.insert(name.to_string(), model);
    }
}

pub fn run_script(script: &Script, opts: &RunOptions) -> Result<Report, ScriptError> {
    let mut params: BTreeMap<String, i64> = script.params.iter().cloned().collect();
    for (name, value) in &opts.params {
        if !params.contains_key(name) {
            return Err(ScriptError::Invalid {
                line: 0,
                message: format!("override for undeclared parameter `{name}`"),
            });
        }
        params.insert(name.clone(), *value);
    }

    let mut rt = Runtime {
        models: BTreeMap::new(),
        glues: BTreeMap::new(),
        verdicts: BTreeMap::new(),
        params,
        max_cosets: opts.max_cosets,
    };
    let mut report = Report::new(&opts.scenario);

    for stmt in &script.statements {
        execute(stmt, &mut rt, &mut report)?;
    }
    Ok(report)
}

fn fail(line: usize, e: impl std::fmt::Display) -> ScriptError {
    ScriptError::Run {
        line,
        message: e.to_string(),
    }
}

fn execute(stmt: &Statement, rt: &mut Runtime, report: &mut Report) -> Result<(), ScriptError> {
    let line = stmt.line;
    match &stmt.kind {
        StatementKind::Block { name, ctor } => {
            let model = build_block(name, ctor, line)?;
            rt.bind(name, model);
        }
        StatementKind::Product { name, left, right } => {
            let m = rt.model(left, line)?;
            let s = rt.model(right, line)?;
            let model = blocks::product(name, m, s).map_err(|e| fail(line, e))?;
            rt.bind(name, model);
        }
        StatementKind::Glue { name, images } => {
            rt.glues.insert(
                name.clone(),
                GluingMap {
                    name: name.clone(),
                    images: images.clone(),
                },
            );
        }
        StatementKind::FiberSum {
            name,
            model1,
            marking1,
            model2,
            marking2,
            glue,
            directives,
        } => {
            let m1 = rt.model(model1, line)?.clone();
            let m2 = rt.model(model2, line)?.clone();
            let g = rt
                .glues
                .get(glue)
                .ok_or_else(|| ScriptError::UndefinedName {
                    line,
                    name: glue.clone(),
                })?
                .clone();
            let dirs = lower_directives(directives);
            let model = surgery::fiber_sum(name, &m1, marking1, &m2, marking2, &g, &dirs)
                .map_err(|e| fail(line, e))?;
            rt.bind(name, model);
        }
        StatementKind::Mark {
            name,
            model,
            torus_gens,
            normal_euler,
            transverse_sphere,
            images,
        } => {
            let ambient = rt.model(model, line)?.clone();
            ambient.expect_dim(6).map_err(|e| fail(line, e))?;
            let torus = blocks::four_torus(name, torus_gens.clone()).map_err(|e| fail(line, e))?;
            let mut image_words = BTreeMap::new();
            for (gen, formal) in images {
                let word = word_over(&ambient.pi1, formal)
                    .map_err(|msg| fail(line, format!("marking `{name}`: {msg}")))?;
                image_words.insert(gen.clone(), word);
            }
            let marking = blocks::complement_pi1_via_sphere(
                &ambient,
                torus,
                name,
                *normal_euler,
                *transverse_sphere,
                image_words,
                BTreeMap::new(),
            )
            .map_err(|e| fail(line, e))?;
            let mut updated = ambient;
            updated.markings.insert(name.clone(), marking);
            updated.provenance.push(format!("mark {name} (4-torus)"));
            rt.bind(model, updated);
        }
        StatementKind::Luttinger {
            name,
            model,
            marking,
            curve,
            power,
            sign,
            kill,
        } => {
            let m = rt.model(model, line)?.clone();
            let p = power
                .resolve(&rt.params)
                .map_err(|msg| ScriptError::Invalid { line, message: msg })?;
            let spec = LuttingerSpec {
                marking: marking.clone(),
                curve: curve.clone(),
                power: p,
                sign: *sign,
                killed_pair: kill.clone(),
            };
            let out = surgery::luttinger(name, &m, &spec).map_err(|e| fail(line, e))?;
            rt.bind(name, out);
        }
        StatementKind::McgCheck { family, genus } => {
            run_mcg_check(family, *genus, line, report)?;
        }
        StatementKind::Family {
            g_from,
            g_to,
            n_from,
            n_to,
        } => {
            for g in *g_from..=*g_to {
                for n in *n_from..=*n_to {
                    let row = surgery::lefschetz_family(g, n).map_err(|e| fail(line, e))?;
                    report.record_assertion(
                        line,
                        format!("family g={g} n={n}: congruences mod (2, 24, 2)"),
                        row.congruences_ok,
                        format!("sum={:?} block={:?}", row.sum_triple, row.block_triple),
                    );
                    if g == 1 {
                        report.record_assertion(
                            line,
                            format!("family g=1 n={n}: sum formula equals the closed form"),
                            row.sum_matches_closed_form,
                            format!("sum={:?} closed={:?}", row.sum_triple, row.closed_form),
                        );
                    }
                    report.family.push(row);
                }
            }
        }
        StatementKind::Assert {
            model,
            property,
            value,
        } => {
            run_assert(model, *property, value, line, rt, report)?;
        }
        StatementKind::Report { model } => {
            let m = rt.model(model, line)?.clone();
            let verdict = rt.verdict(model, line)?;
            let cy = if m.dim == 6 {
                Some(surgery::cy_check(&m).map_err(|e| fail(line, e))?)
            } else {
                None
            };
            report.models.push(model_section(&m, &verdict, cy));
        }
    }
    Ok(())
}

fn build_block(name: &str, ctor: &BlockCtor, line: usize) -> Result<ManifoldModel, ScriptError> {
    match ctor {
        BlockCtor::Surface { genus, gens } => {
            blocks::surface(name, *genus, gens.clone()).map_err(|e| fail(line, e))
        }
        BlockCtor::RationalSurface { k } => {
            blocks::rational_surface(name, *k).map_err(|e| fail(line, e))
        }
        BlockCtor::EllipticSurface { n } => {
            blocks::elliptic_surface(name, *n).map_err(|e| fail(line, e))
        }
        BlockCtor::Declare(d) => {
            let chern = match (d.dim, d.chern.as_slice()) {
                (2, [euler]) => ChernNumbers::Dim2 { euler: *euler },
                (4, [c1_sq, c2]) => ChernNumbers::Dim4 {
                    c1_sq: *c1_sq,
                    c2: *c2,
                },
                (6, [c1_cubed, c1c2, c3]) => ChernNumbers::Dim6 {
                    c1_cubed: *c1_cubed,
                    c1c2: *c1c2,
                    c3: *c3,
                },
                (dim, chern) => {
                    return Err(ScriptError::Invalid {
                        line,
                        message: format!(
                            "declare dim {dim} takes {} chern numbers, got {}",
                            match dim {
                                2 => 1,
                                4 => 2,
                                _ => 3,
                            },
                            chern.len()
                        ),
                    })
                }
            };
            let pi1 = presentation_from(&d.pi1_gens, &d.pi1_relators)
                .map_err(|msg| ScriptError::Invalid { line, message: msg })?;
            blocks::declare_block(blocks::DeclaredBlock {
                name: name.to_string(),
                dim: d.dim,
                chern,
                signature: d.signature,
                betti: d.betti.clone(),
                pi1,
            })
            .map_err(|e| fail(line, e))
        }
    }
}

fn presentation_from(gens: &[String], relators: &[FormalWord]) -> Result<Presentation, String> {
    let base = Presentation::free(gens.to_vec()).map_err(|e| e.to_string())?;
    let mut words = Vec::new();
    for formal in relators {
        words.push(word_over(&base, formal)?);
    }
    Presentation::new(gens.to_vec(), words).map_err(|e| e.to_string())
}

fn word_over(pres: &Presentation, formal: &FormalWord) -> Result<Word, String> {
    let mut w = Word::identity();
    for (name, exp) in formal {
        let idx = pres
            .generator_index(name)
            .ok_or_else(|| format!("`{name}` is not a generator of {}", pres.display()))?;
        w = w.concat(&Word::generator(idx).pow(*exp));
    }
    Ok(w)
}

fn lower_directives(directives: &[Directive]) -> Vec<H2Directive> {
    directives
        .iter()
        .map(|d| match d {
            Directive::Keep {
                side,
                label,
                new_label,
            } => H2Directive::Keep {
                side: *side,
                label: label.clone(),
                new_label: new_label.clone().unwrap_or_else(|| {
                    if *side == 1 {
                        label.clone()
                    } else {
                        format!("{label}'")
                    }
                }),
            },
            Directive::Sew {
                label1,
                label2,
                new_label,
            } => H2Directive::Sew {
                label1: label1.clone(),
                label2: label2.clone(),
                new_label: new_label.clone(),
            },
            Directive::Rim { circle, fate } => H2Directive::Rim {
                circle: circle.clone(),
                fate: fate.clone(),
            },
            Directive::BasisComplete => H2Directive::BasisComplete,
        })
        .collect()
}

fn run_mcg_check(
    family: &str,
    genus: u32,
    line: usize,
    report: &mut Report,
) -> Result<(), ScriptError> {
    let fam: mcg::RelatorFamily = family
        .parse()
        .map_err(|msg: String| ScriptError::Invalid { line, message: msg })?;
    let word = mcg::relator_family(fam, genus as usize).map_err(|e| fail(line, e))?;
    let matrix = mcg::word_matrix(&word).map_err(|e| fail(line, e))?;
    let word_is_identity = mcg::is_identity(&matrix);
    report.record_assertion(
        line,
        format!("mcg {fam} g={genus}: relator word acts as the identity on H1"),
        word_is_identity,
        if word_is_identity {
            "identity".to_string()
        } else {
            "nonidentity matrix".to_string()
        },
    );

    let mut half = None;
    let mut euler = None;
    if fam == mcg::RelatorFamily::X {
        let hw = mcg::half_word_x(genus as usize).map_err(|e| fail(line, e))?;
        let hm = mcg::word_matrix(&hw).map_err(|e| fail(line, e))?;
        let is_minus = mcg::is_minus_identity(&hm);
        half = Some(is_minus);
        report.record_assertion(
            line,
            format!("mcg X g={genus}: half word acts as -identity (hyperelliptic involution)"),
            is_minus,
            if is_minus {
                "-identity".to_string()
            } else {
                "unexpected matrix".to_string()
            },
        );

        let n_crit = word.len();
        let chi = mcg::lefschetz_euler(genus as usize, n_crit);
        let rational = blocks::rational_surface("chk", 4 * genus + 5).map_err(|e| fail(line, e))?;
        let chi_rs = rational.euler();
        let matches = chi == chi_rs;
        euler = Some(EulerCheck {
            n_crit,
            chi,
            chi_rational_surface: chi_rs,
            matches,
        });
        report.record_assertion(
            line,
            format!(
                "mcg X g={genus}: lefschetz euler count matches CP2 # {} CP2bar",
                4 * genus + 5
            ),
            matches,
            format!("chi = {chi} vs {chi_rs}"),
        );
    }

    report.mcg.push(McgSection {
        family: fam.to_string(),
        genus,
        word_length: word.len(),
        word_is_identity,
        half_word_is_minus_identity: half,
        euler,
        note:
            "H1-faithful only: Sp(2g,Z) equality is necessary, not sufficient, for an MCG identity"
                .to_string(),
    });
    Ok(())
}

fn run_assert(
    model_name: &str,
    property: Property,
    value: &AssertValue,
    line: usize,
    rt: &mut Runtime,
    report: &mut Report,
) -> Result<(), ScriptError> {
    let model = rt.model(model_name, line)?.clone();
    let text_value = assert_value_text(value, &rt.params);
    let text = format!("{model_name}.{} == {text_value}", property.name());

    let (pass, got) = match (property, value) {
        (Property::Pi1, AssertValue::Trivial) => {
            let v = rt.verdict(model_name, line)?;
            (
                v.proved_trivial(),
                format!("{} ({})", v.triviality, v.abelian),
            )
        }
        (Property::Pi1, AssertValue::Abelian { factors }) => {
            let mut resolved = Vec::new();
            for f in factors {
                resolved.push(
                    f.resolve(&rt.params)
                        .map_err(|msg| ScriptError::Invalid { line, message: msg })?,
                );
            }
            let expected = AbelianInvariants::from_cyclic_factors(&resolved);
            let v = rt.verdict(model_name, line)?;
            let pass = if expected.is_trivial() {
                v.proved_trivial()
            } else if expected
                == (AbelianInvariants {
                    free_rank: 1,
                    torsion: vec![],
                })
            {
                v.certified_infinite_cyclic()
            } else {
                v.abelian == expected
            };
            (pass, format!("{} ({})", v.triviality, v.abelian))
        }
        (Property::Chern, AssertValue::Chern { values }) => {
            let actual: Vec<i64> = match model.chern {
                ChernNumbers::Dim2 { euler } => vec![euler],
                ChernNumbers::Dim4 { c1_sq, c2 } => vec![c1_sq, c2],
                ChernNumbers::Dim6 { c1_cubed, c1c2, c3 } => vec![c1_cubed, c1c2, c3],
            };
            (actual == *values, format!("{actual:?}"))
        }
        (Property::Cy, AssertValue::Cy { verdict }) => {
            let cy = surgery::cy_check(&model).map_err(|e| fail(line, e))?;
            let got = cy.verdict.to_string();
            (got == *verdict, got)
        }
        (Property::B2, AssertValue::Int { value }) => {
            let b2 = model.betti.get(2).copied().unwrap_or(0);
            (b2 == *value, b2.to_string())
        }
        (Property::Signature, AssertValue::Int { value }) => match model.signature {
            Some(sig) => (sig == *value, sig.to_string()),
            None => (false, "no signature (dimension != 4)".to_string()),
        },
        (Property::C1Evals, AssertValue::Int { value }) => {
            let bad: Vec<String> = model
                .essential_classes()
                .filter(|c| c.c1_eval != *value)
                .map(|c| format!("{}={}", c.label, c.c1_eval))
                .collect();
            if bad.is_empty() {
                (
                    true,
                    format!(
                        "all {} essential evaluations = {value}",
                        model.essential_count()
                    ),
                )
            } else {
                (false, bad.join(", "))
            }
        }
        (
            Property::Form,
            AssertValue::Form {
                rank,
                positive,
                negative,
                even,
                unimodular,
            },
        ) => match &model.form {
            Some(f) => {
                let c = lattice::classify_form(f);
                let pass = c.rank == *rank
                    && c.signature.positive == *positive
                    && c.signature.negative == *negative
                    && c.even == *even
                    && c.unimodular == *unimodular;
                (
                    pass,
                    format!(
                        "rank {} signature ({},{}) {} {}",
                        c.rank,
                        c.signature.positive,
                        c.signature.negative,
                        if c.even { "even" } else { "odd" },
                        if c.unimodular {
                            "unimodular"
                        } else {
                            "nonunimodular"
                        }
                    ),
                )
            }
            None => (false, "no intersection form recorded".to_string()),
        },
        (prop, _) => {
            return Err(ScriptError::Invalid {
                line,
                message: format!("assert value does not fit property `{}`", prop.name()),
            })
        }
    };

    report.record_assertion(line, text, pass, got);
    Ok(())
}

fn assert_value_text(value: &AssertValue, params: &BTreeMap<String, i64>) -> String {
    match value {
        AssertValue::Trivial => "trivial".to_string(),
        AssertValue::Abelian { factors } => factors
            .iter()
            .map(|f| match f {
                IntOrParam::Lit(0) => "Z".to_string(),
                IntOrParam::Lit(n) => format!("Z_{n}"),
                IntOrParam::Param(p) => match params.get(p) {
                    Some(v) => format!("Z_{v}"),
                    None => format!("Z_${p}"),
                },
            })
            .collect::<Vec<_>>()
            .join(" x "),
        AssertValue::Chern { values } => format!("{values:?}"),
        AssertValue::Cy { verdict } => verdict.clone(),
        AssertValue::Int { value } => value.to_string(),
        AssertValue::Form {
            rank,
            positive,
            negative,
            even,
            unimodular,
        } => format!(
            "(rank {rank}, signature ({positive}, {negative}), {}, {})",
            if *even { "even" } else { "odd" },
            if *unimodular {
                "unimodular"
            } else {
                "nonunimodular"
            }
        ),
    }
}
