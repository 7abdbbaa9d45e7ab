//! Deterministic invariant reports, text and JSON.
//!
//! Reports are byte-for-byte reproducible for identical input and tool
//! version: no timestamps, no absolute paths, stable field order.

use serde::{Deserialize, Serialize};

use crate::blocks::{ChernNumbers, ClassStatus, ManifoldModel};
use crate::fpgroup::{GroupVerdict, Triviality};
use crate::lattice;
use crate::surgery::{CyVerdict, FamilyRow};

pub const REPORT_SCHEMA: &str = "surgery-calc.report.v1";

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Report {
    pub schema: String,
    pub scenario: String,
    pub models: Vec<ModelSection>,
    pub mcg: Vec<McgSection>,
    pub family: Vec<FamilyRow>,
    pub assertions: Vec<AssertionOutcome>,
    pub summary: Summary,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, Default)]
pub struct Summary {
    pub pass: usize,
    pub fail: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ModelSection {
    pub name: String,
    pub dim: u8,
    pub chern: std::collections::BTreeMap<String, i64>,
    pub signature: Option<i64>,
    pub betti: Vec<i64>,
    pub betti_notes: Vec<(usize, String)>,
    pub pi1: Pi1Section,
    pub classes: Vec<ClassLine>,
    pub basis_complete: bool,
    pub form: Option<FormSection>,
    pub cy: Option<CySection>,
    pub markings: Vec<MarkingLine>,
    pub provenance: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Pi1Section {
    pub presentation: String,
    pub verdict: String,
    pub order: Option<usize>,
    pub abelian: String,
    pub simplified: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassLine {
    pub label: String,
    pub kind: String,
    pub c1_eval: i64,
    pub self_pairing: Option<i64>,
    pub status: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FormSection {
    pub rank: usize,
    pub positive: usize,
    pub negative: usize,
    pub zero: usize,
    pub even: bool,
    pub unimodular: bool,
    pub determinant: i64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CySection {
    pub chern_zero: bool,
    pub c1_evals_zero: bool,
    pub basis_complete: bool,
    pub verdict: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MarkingLine {
    pub name: String,
    pub submanifold: String,
    pub normal_euler: i64,
    pub transverse_sphere: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct McgSection {
    pub family: String,
    pub genus: u32,
    pub word_length: usize,
    pub word_is_identity: bool,
    /// Family X only: the half word acts as -identity.
    pub half_word_is_minus_identity: Option<bool>,
    /// Family X only: chi(2(2-2g) + n_crit) against chi(CP^2 # (4g+5) CP^2-bar).
    pub euler: Option<EulerCheck>,
    pub note: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EulerCheck {
    pub n_crit: usize,
    pub chi: i64,
    pub chi_rational_surface: i64,
    pub matches: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AssertionOutcome {
    pub line: usize,
    pub text: String,
    pub pass: bool,
    pub got: String,
}

impl Report {
    pub fn new(scenario: &str) -> Report {
        Report {
            schema: REPORT_SCHEMA.to_string(),
            scenario: scenario.to_string(),
            models: Vec::new(),
            mcg: Vec::new(),
            family: Vec::new(),
            assertions: Vec::new(),
            summary: Summary::default(),
        }
    }

    pub fn record_assertion(&mut self, line: usize, text: String, pass: bool, got: String) {
        if pass {
            self.summary.pass += 1;
        } else {
            self.summary.fail += 1;
        }
        self.assertions.push(AssertionOutcome {
            line,
            text,
            pass,
            got,
        });
    }

    pub fn all_passed(&self) -> bool {
        self.summary.fail == 0
    }

    pub fn model(&self, name: &str) -> Option<&ModelSection> {
        self.models.iter().find(|m| m.name == name)
    }
}

pub fn model_section(
    model: &ManifoldModel,
    verdict: &GroupVerdict,
    cy: Option<CyVerdict>,
) -> ModelSection {
    let chern: std::collections::BTreeMap<String, i64> = match model.chern {
        ChernNumbers::Dim2 { euler } => [("euler".to_string(), euler)].into(),
        ChernNumbers::Dim4 { c1_sq, c2 } => {
            [("c1_sq".to_string(), c1_sq), ("c2".to_string(), c2)].into()
        }
        ChernNumbers::Dim6 { c1_cubed, c1c2, c3 } => [
            ("c1_cubed".to_string(), c1_cubed),
            ("c1c2".to_string(), c1c2),
            ("c3".to_string(), c3),
        ]
        .into(),
    };
    let classes = model
        .h2_basis
        .iter()
        .map(|c| ClassLine {
            label: c.label.clone(),
            kind: c.kind.to_string(),
            c1_eval: c.c1_eval,
            self_pairing: c.self_pairing,
            status: match &c.status {
                ClassStatus::Essential => "essential".to_string(),
                ClassStatus::KilledBy(op) => format!("killed by {op}"),
            },
        })
        .collect();
    let form = model.form.as_ref().map(|f| {
        let c = lattice::classify_form(f);
        FormSection {
            rank: c.rank,
            positive: c.signature.positive,
            negative: c.signature.negative,
            zero: c.signature.zero,
            even: c.even,
            unimodular: c.unimodular,
            determinant: lattice::determinant(f),
        }
    });
    let markings = model
        .markings
        .values()
        .map(|mk| MarkingLine {
            name: mk.name.clone(),
            submanifold: format!("dim-{} ({})", mk.submanifold.dim, mk.submanifold.name),
            normal_euler: mk.normal_euler,
            transverse_sphere: mk.has_transverse_sphere,
        })
        .collect();
    ModelSection {
        name: model.name.clone(),
        dim: model.dim,
        chern,
        signature: model.signature,
        betti: model.betti.clone(),
        betti_notes: model
            .betti_notes
            .iter()
            .map(|(k, v)| (*k, v.clone()))
            .collect(),
        pi1: Pi1Section {
            presentation: model.pi1.display().to_string(),
            verdict: match verdict.triviality {
                Triviality::ProvedTrivial => "proved trivial".to_string(),
                Triviality::ProvedNontrivial => "proved nontrivial".to_string(),
                Triviality::Unknown => "unknown".to_string(),
            },
            order: verdict.finite_index,
            abelian: verdict.abelian.to_string(),
            simplified: verdict.simplified.display().to_string(),
        },
        classes,
        basis_complete: model.h2_complete,
        form,
        cy: cy.map(|v| CySection {
            chern_zero: v.chern_zero,
            c1_evals_zero: v.c1_evals_zero,
            basis_complete: v.basis_complete,
            verdict: v.verdict.to_string(),
        }),
        markings,
        provenance: model.provenance.clone(),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ReportFormat {
    Text,
    Json,
}

impl std::str::FromStr for ReportFormat {
    type Err = String;
    fn from_str(s: &str) -> Result<ReportFormat, String> {
        match s {
            "text" => Ok(ReportFormat::Text),
            "json" => Ok(ReportFormat::Json),
            other => Err(format!("unknown format `{other}` (expected text or json)")),
        }
    }
}

pub fn emit_report(report: &Report, format: ReportFormat) -> String {
    match format {
        ReportFormat::Json => {
            let mut s = serde_json::to_string_pretty(report).expect("report serializes");
            s.push('\n');
            s
        }
        ReportFormat::Text => emit_text(report),
    }
}

fn emit_text(r: &Report) -> String {
    let mut out = String::new();
    out.push_str(&format!("== {} :: {} ==\n", r.schema, r.scenario));

    for m in &r.models {
        out.push_str(&format!("\nmodel {} (dim {})\n", m.name, m.dim));
        let chern = m
            .chern
            .iter()
            .map(|(k, v)| format!("{k} = {v}"))
            .collect::<Vec<_>>()
            .join("   ");
        out.push_str(&format!("  chern      {chern}\n"));
        if let Some(sig) = m.signature {
            out.push_str(&format!("  signature  {sig}\n"));
        }
        let betti = m
            .betti
            .iter()
            .enumerate()
            .map(|(k, b)| format!("b{k}={b}"))
            .collect::<Vec<_>>()
            .join(" ");
        out.push_str(&format!("  betti      {betti}\n"));
        for (k, note) in &m.betti_notes {
            out.push_str(&format!("             [b{k}: {note}]\n"));
        }
        out.push_str(&format!("  pi1        {}\n", m.pi1.presentation));
        let order = m
            .pi1
            .order
            .map(|n| n.to_string())
            .unwrap_or_else(|| "-".to_string());
        out.push_str(&format!(
            "             verdict: {}   order: {}   abelian: {}\n",
            m.pi1.verdict, order, m.pi1.abelian
        ));
        out.push_str(&format!("             simplified: {}\n", m.pi1.simplified));
        if !m.classes.is_empty() {
            let essential = m.classes.iter().filter(|c| c.status == "essential").count();
            out.push_str(&format!(
                "  h2 basis   {essential} essential classes ({})\n",
                if m.basis_complete {
                    "declared complete"
                } else {
                    "not declared complete"
                }
            ));
            let width = m.classes.iter().map(|c| c.label.len()).max().unwrap_or(0);
            for c in &m.classes {
                let sp = c
                    .self_pairing
                    .map(|v| format!("  self={v}"))
                    .unwrap_or_default();
                let status = if c.status == "essential" {
                    String::new()
                } else {
                    format!("  [{}]", c.status)
                };
                out.push_str(&format!(
                    "    {:width$}  {:8} c1_eval={}{sp}{status}\n",
                    c.label, c.kind, c.c1_eval
                ));
            }
        }
        if let Some(f) = &m.form {
            out.push_str(&format!(
                "  form       rank {} signature ({},{}) {} {} det {}\n",
                f.rank,
                f.positive,
                f.negative,
                if f.even { "even" } else { "odd" },
                if f.unimodular {
                    "unimodular"
                } else {
                    "nonunimodular"
                },
                f.determinant
            ));
        }
        if let Some(cy) = &m.cy {
            out.push_str(&format!(
                "  cy         chern_zero={} c1_evals_zero={} basis_complete={} -> {}\n",
                yesno(cy.chern_zero),
                yesno(cy.c1_evals_zero),
                yesno(cy.basis_complete),
                cy.verdict
            ));
        }
        for mk in &m.markings {
            out.push_str(&format!(
                "  marking    {} on {}  normal_euler={}  transverse_sphere={}\n",
                mk.name,
                mk.submanifold,
                mk.normal_euler,
                yesno(mk.transverse_sphere)
            ));
        }
        for p in &m.provenance {
            out.push_str(&format!("  .. {p}\n"));
        }
    }

    for s in &r.mcg {
        out.push_str(&format!(
            "\nmcg {} g={}  word length {}  identity on H1: {}",
            s.family,
            s.genus,
            s.word_length,
            yesno(s.word_is_identity)
        ));
        if let Some(h) = s.half_word_is_minus_identity {
            out.push_str(&format!("  half word = -I: {}", yesno(h)));
        }
        out.push('\n');
        if let Some(e) = &s.euler {
            out.push_str(&format!(
                "  euler: 2(2-2g) + {} = {} vs chi(CP2 # (4g+5) CP2bar) = {}  {}\n",
                e.n_crit,
                e.chi,
                e.chi_rational_surface,
                if e.matches { "agree" } else { "DISAGREE" }
            ));
        }
        out.push_str(&format!("  note: {}\n", s.note));
    }

    for row in &r.family {
        out.push_str(&format!(
            "\nfamily g={} n={}\n  block (c1^3, c1c2, c3) = {:?}\n  sum via the sum formulas   = {:?}\n  closed form                = {:?}  {}\n  congruences (mod 2, 24, 2): {}\n",
            row.genus,
            row.n_fold,
            row.block_triple,
            row.sum_triple,
            row.closed_form,
            if row.sum_matches_closed_form { "(agree)" } else { "(MISMATCH, reported not asserted)" },
            if row.congruences_ok { "ok" } else { "VIOLATED" }
        ));
    }

    if !r.assertions.is_empty() {
        out.push_str("\nassertions\n");
        for a in &r.assertions {
            out.push_str(&format!(
                "  {} line {:>3}: {}",
                if a.pass { "PASS" } else { "FAIL" },
                a.line,
                a.text
            ));
            if !a.pass {
                out.push_str(&format!("   (got {})", a.got));
            }
            out.push('\n');
        }
    }
    out.push_str(&format!(
        "\nsummary pass={} fail={}\n",
        r.summary.pass, r.summary.fail
    ));
    out
}

fn yesno(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}
