//! Canonical serializer for scripts: parse(emit(parse(text))) == parse(text).

use super::ast::*;
use crate::surgery::RimFate;

pub fn emit_script(script: &Script) -> String {
    let mut out = String::new();
    for (name, default) in &script.params {
        out.push_str(&format!("param {name} = {default}\n"));
    }
    for stmt in &script.statements {
        emit_statement(&mut out, &stmt.kind);
    }
    out
}

pub fn emit_script_json(script: &Script) -> String {
    let mut s = serde_json::to_string_pretty(script).expect("script serializes");
    s.push('\n');
    s
}

fn quote_label(label: &str) -> String {
    let plain = label
        .chars()
        .all(|c| c.is_alphanumeric() || ['_', '\'', '-', '$'].contains(&c))
        && !label.starts_with("->")
        && !label.is_empty()
        && label.parse::<i64>().is_err();
    if plain {
        label.to_string()
    } else {
        format!("\"{label}\"")
    }
}

fn fmt_word(word: &FormalWord) -> String {
    if word.is_empty() {
        return "1".to_string();
    }
    word.iter()
        .map(|(name, exp)| {
            if *exp == 1 {
                name.clone()
            } else {
                format!("{name}^{exp}")
            }
        })
        .collect::<Vec<_>>()
        .join(" ")
}

fn fmt_primed_word(word: &FormalWord) -> String {
    if word.is_empty() {
        return "1".to_string();
    }
    word.iter()
        .map(|(name, exp)| {
            if *exp == 1 {
                format!("{name}'")
            } else {
                format!("{name}'^{exp}")
            }
        })
        .collect::<Vec<_>>()
        .join(" ")
}

fn fmt_int_or_param(v: &IntOrParam) -> String {
    match v {
        IntOrParam::Lit(n) => n.to_string(),
        IntOrParam::Param(p) => format!("${p}"),
    }
}

fn emit_statement(out: &mut String, kind: &StatementKind) {
    match kind {
        StatementKind::Block { name, ctor } => {
            let body = match ctor {
                BlockCtor::Surface { genus, gens } => match gens {
                    Some(gens) => {
                        format!("surface {{ genus: {genus}, gens: [{}] }}", gens.join(", "))
                    }
                    None => format!("surface {{ genus: {genus} }}"),
                },
                BlockCtor::RationalSurface { k } => format!("rational_surface {{ k: {k} }}"),
                BlockCtor::EllipticSurface { n } => format!("elliptic_surface {{ n: {n} }}"),
                BlockCtor::Declare(d) => {
                    let chern = d
                        .chern
                        .iter()
                        .map(|v| v.to_string())
                        .collect::<Vec<_>>()
                        .join(", ");
                    let betti = d
                        .betti
                        .iter()
                        .map(|v| v.to_string())
                        .collect::<Vec<_>>()
                        .join(", ");
                    let mut s = format!("declare {{ dim: {}, chern: ({chern}), ", d.dim);
                    if let Some(sig) = d.signature {
                        s.push_str(&format!("signature: {sig}, "));
                    }
                    s.push_str(&format!("betti: [{betti}]"));
                    if !d.pi1_gens.is_empty() {
                        s.push_str(&format!(", pi1_gens: [{}]", d.pi1_gens.join(", ")));
                    }
                    if !d.pi1_relators.is_empty() {
                        let rels = d
                            .pi1_relators
                            .iter()
                            .map(fmt_word)
                            .collect::<Vec<_>>()
                            .join(", ");
                        s.push_str(&format!(", pi1_relators: [{rels}]"));
                    }
                    s.push_str(" }");
                    s
                }
            };
            out.push_str(&format!("block {name} = {body}\n"));
        }
        StatementKind::Product { name, left, right } => {
            out.push_str(&format!("product {name} = {left} x {right}\n"));
        }
        StatementKind::Glue { name, images } => {
            out.push_str(&format!("glue {name} {{\n"));
            for (gen, word) in images {
                out.push_str(&format!("  {gen} -> {}\n", fmt_primed_word(word)));
            }
            out.push_str("  mu -> mu'^-1\n}\n");
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
            out.push_str(&format!(
                "fiber_sum {name} = {model1}.{marking1} + {model2}.{marking2} via {glue} {{\n"
            ));
            for d in directives {
                match d {
                    Directive::Keep {
                        side,
                        label,
                        new_label,
                    } => {
                        out.push_str(&format!("  keep {side}.{}", quote_label(label)));
                        if let Some(nl) = new_label {
                            out.push_str(&format!(" as {}", quote_label(nl)));
                        }
                        out.push('\n');
                    }
                    Directive::Sew {
                        label1,
                        label2,
                        new_label,
                    } => {
                        out.push_str(&format!(
                            "  sew 1.{} + 2.{} as {}\n",
                            quote_label(label1),
                            quote_label(label2),
                            quote_label(new_label)
                        ));
                    }
                    Directive::Rim { circle, fate } => match fate {
                        RimFate::Nullhomologous => out.push_str(&format!("  rim {circle} null\n")),
                        RimFate::Essential {
                            torus_label,
                            sphere_label,
                        } => {
                            out.push_str(&format!(
                                "  rim {circle} essential as ({}, {})\n",
                                quote_label(torus_label),
                                quote_label(sphere_label)
                            ));
                        }
                    },
                    Directive::BasisComplete => out.push_str("  basis complete\n"),
                }
            }
            out.push_str("}\n");
        }
        StatementKind::Mark {
            name,
            model,
            torus_gens,
            normal_euler,
            transverse_sphere,
            images,
        } => {
            out.push_str(&format!("mark {name} on {model} {{\n"));
            out.push_str(&format!("  torus: [{}]\n", torus_gens.join(", ")));
            out.push_str(&format!("  normal_euler: {normal_euler}\n"));
            out.push_str(&format!(
                "  transverse_sphere: {}\n",
                if *transverse_sphere { "true" } else { "false" }
            ));
            out.push_str("  images {\n");
            for (gen, word) in images {
                out.push_str(&format!("    {gen} -> {}\n", fmt_word(word)));
            }
            out.push_str("  }\n}\n");
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
            out.push_str(&format!(
                "luttinger {name} = {model} ({marking}, {curve}^{}, {})",
                fmt_int_or_param(power),
                if *sign >= 0 { "+1" } else { "-1" }
            ));
            if let Some((rim, sphere)) = kill {
                out.push_str(&format!(
                    " kill ({}, {})",
                    quote_label(rim),
                    quote_label(sphere)
                ));
            }
            out.push('\n');
        }
        StatementKind::McgCheck { family, genus } => {
            out.push_str(&format!("mcg_check {family} {genus}\n"));
        }
        StatementKind::Family {
            g_from,
            g_to,
            n_from,
            n_to,
        } => {
            out.push_str(&format!(
                "family lefschetz {{ g: {g_from}..{g_to}, n: {n_from}..{n_to} }}\n"
            ));
        }
        StatementKind::Assert {
            model,
            property,
            value,
        } => {
            let value_str = match value {
                AssertValue::Trivial => "trivial".to_string(),
                AssertValue::Abelian { factors } => {
                    if factors.is_empty() {
                        "trivial".to_string()
                    } else {
                        factors
                            .iter()
                            .map(|f| match f {
                                IntOrParam::Lit(0) => "Z".to_string(),
                                IntOrParam::Lit(n) => format!("Z_{n}"),
                                IntOrParam::Param(p) => format!("Z_${p}"),
                            })
                            .collect::<Vec<_>>()
                            .join(" x ")
                    }
                }
                AssertValue::Chern { values } => format!(
                    "({})",
                    values
                        .iter()
                        .map(|v| v.to_string())
                        .collect::<Vec<_>>()
                        .join(", ")
                ),
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
            };
            out.push_str(&format!(
                "assert {model}.{} == {value_str}\n",
                property.name()
            ));
        }
        StatementKind::Report { model } => {
            out.push_str(&format!("report {model}\n"));
        }
    }
}
