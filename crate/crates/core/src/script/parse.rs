//! Recursive-descent parser for construction scripts.
//!
//! Outside braces a newline ends a statement; inside braces newlines and
//! commas both separate items. Name resolution (no forward references,
//! single assignment) happens here so errors carry source positions.

use std::collections::BTreeSet;

use super::ast::*;
use super::lex::{tokenize, Spanned, Tok};
use super::ScriptError;
use crate::surgery::RimFate;

pub fn parse_script(text: &str) -> Result<Script, ScriptError> {
    let trimmed = text.trim_start();
    if trimmed.starts_with('{') {
        // JSON-compatible document mode
        let script: Script = serde_json::from_str(text).map_err(|e| ScriptError::Json {
            message: e.to_string(),
        })?;
        validate_names(&script)?;
        return Ok(script);
    }
    let toks = tokenize(text)?;
    let mut p = Parser { toks, pos: 0 };
    let script = p.script()?;
    validate_names(&script)?;
    Ok(script)
}

/// Every name must be defined before use, and defined at most once.
fn validate_names(script: &Script) -> Result<(), ScriptError> {
    let mut models: BTreeSet<String> = BTreeSet::new();
    let mut glues: BTreeSet<String> = BTreeSet::new();
    let mut params: BTreeSet<String> = BTreeSet::new();
    for (name, _) in &script.params {
        if !params.insert(name.clone()) {
            return Err(ScriptError::DuplicateName {
                line: 0,
                name: name.clone(),
            });
        }
    }

    fn defined(set: &BTreeSet<String>, name: &str, line: usize) -> Result<(), ScriptError> {
        if set.contains(name) {
            Ok(())
        } else {
            Err(ScriptError::UndefinedName {
                line,
                name: name.to_string(),
            })
        }
    }
    fn fresh(
        models: &BTreeSet<String>,
        glues: &BTreeSet<String>,
        name: &str,
        line: usize,
    ) -> Result<(), ScriptError> {
        if models.contains(name) || glues.contains(name) {
            Err(ScriptError::DuplicateName {
                line,
                name: name.to_string(),
            })
        } else {
            Ok(())
        }
    }
    fn check_param(
        params: &BTreeSet<String>,
        v: &IntOrParam,
        line: usize,
    ) -> Result<(), ScriptError> {
        if let IntOrParam::Param(p) = v {
            if !params.contains(p) {
                return Err(ScriptError::UndefinedName {
                    line,
                    name: format!("${p}"),
                });
            }
        }
        Ok(())
    }

    for stmt in &script.statements {
        let line = stmt.line;
        match &stmt.kind {
            StatementKind::Block { name, .. } => {
                fresh(&models, &glues, name, line)?;
                models.insert(name.clone());
            }
            StatementKind::Product { name, left, right } => {
                defined(&models, left, line)?;
                defined(&models, right, line)?;
                fresh(&models, &glues, name, line)?;
                models.insert(name.clone());
            }
            StatementKind::Glue { name, .. } => {
                fresh(&models, &glues, name, line)?;
                glues.insert(name.clone());
            }
            StatementKind::FiberSum {
                name,
                model1,
                model2,
                glue,
                ..
            } => {
                defined(&models, model1, line)?;
                defined(&models, model2, line)?;
                defined(&glues, glue, line)?;
                fresh(&models, &glues, name, line)?;
                models.insert(name.clone());
            }
            StatementKind::Mark { model, .. } => defined(&models, model, line)?,
            StatementKind::Luttinger {
                name, model, power, ..
            } => {
                defined(&models, model, line)?;
                check_param(&params, power, line)?;
                fresh(&models, &glues, name, line)?;
                models.insert(name.clone());
            }
            StatementKind::Assert { model, value, .. } => {
                defined(&models, model, line)?;
                if let AssertValue::Abelian { factors } = value {
                    for f in factors {
                        check_param(&params, f, line)?;
                    }
                }
            }
            StatementKind::Report { model } => defined(&models, model, line)?,
            StatementKind::McgCheck { family, genus } => {
                if family.parse::<crate::mcg::RelatorFamily>().is_err() {
                    return Err(ScriptError::Invalid {
                        line,
                        message: format!("unknown relator family `{family}`"),
                    });
                }
                if *genus == 0 {
                    return Err(ScriptError::Invalid {
                        line,
                        message: "mcg_check needs genus >= 1".to_string(),
                    });
                }
            }
            StatementKind::Family {
                g_from,
                g_to,
                n_from,
                n_to,
            } => {
                if *g_from == 0 || *n_from == 0 || g_to < g_from || n_to < n_from {
                    return Err(ScriptError::Invalid {
                        line,
                        message: "family ranges need 1 <= from <= to".to_string(),
                    });
                }
            }
        }
    }
    Ok(())
}

struct Parser {
    toks: Vec<Spanned>,
    pos: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Spanned> {
        self.toks.get(self.pos)
    }

    fn next(&mut self) -> Option<Spanned> {
        let t = self.toks.get(self.pos).cloned();
        if t.is_some() {
            self.pos += 1;
        }
        t
    }

    fn here(&self) -> (usize, usize) {
        self.toks
            .get(self.pos.min(self.toks.len().saturating_sub(1)))
            .map(|t| (t.line, t.col))
            .unwrap_or((0, 0))
    }

    fn err<T>(&self, message: impl Into<String>) -> Result<T, ScriptError> {
        let (line, col) = self.here();
        Err(ScriptError::Syntax {
            line,
            col,
            message: message.into(),
        })
    }

    fn skip_newlines(&mut self) {
        while matches!(self.peek().map(|t| &t.tok), Some(Tok::Newline)) {
            self.pos += 1;
        }
    }

    fn expect_sym(&mut self, sym: &str) -> Result<(), ScriptError> {
        match self.next() {
            Some(Spanned {
                tok: Tok::Sym(s), ..
            }) if s == sym => Ok(()),
            other => {
                self.pos = self.pos.saturating_sub(usize::from(other.is_some()));
                self.err(format!("expected `{sym}`"))
            }
        }
    }

    fn eat_sym(&mut self, sym: &str) -> bool {
        if matches!(self.peek().map(|t| &t.tok), Some(Tok::Sym(s)) if *s == sym) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn word(&mut self) -> Result<String, ScriptError> {
        match self.next() {
            Some(Spanned {
                tok: Tok::Word(w), ..
            }) => Ok(w),
            other => {
                self.pos = self.pos.saturating_sub(usize::from(other.is_some()));
                self.err("expected a name")
            }
        }
    }

    fn label(&mut self) -> Result<String, ScriptError> {
        match self.next() {
            Some(Spanned {
                tok: Tok::Word(w), ..
            }) => Ok(w),
            Some(Spanned {
                tok: Tok::Quoted(s),
                ..
            }) => Ok(s),
            other => {
                self.pos = self.pos.saturating_sub(usize::from(other.is_some()));
                self.err("expected a label")
            }
        }
    }

    fn keyword(&mut self, kw: &str) -> Result<(), ScriptError> {
        let w = self.word()?;
        if w == kw {
            Ok(())
        } else {
            self.pos -= 1;
            self.err(format!("expected `{kw}`"))
        }
    }

    fn int(&mut self) -> Result<i64, ScriptError> {
        let mut negative = false;
        // a leading `+` lexes as a symbol
        if self.eat_sym("+") {
            negative = false;
        }
        let w = self.word()?;
        let w = if negative { format!("-{w}") } else { w };
        w.parse::<i64>().map_err(|_| {
            self.pos -= 1;
            ScriptError::Syntax {
                line: self.here().0,
                col: self.here().1,
                message: format!("expected an integer, found `{w}`"),
            }
        })
    }

    fn uint(&mut self) -> Result<u32, ScriptError> {
        let v = self.int()?;
        u32::try_from(v).map_err(|_| ScriptError::Syntax {
            line: self.here().0,
            col: self.here().1,
            message: format!("expected a nonnegative integer, found {v}"),
        })
    }

    fn int_or_param(&mut self) -> Result<IntOrParam, ScriptError> {
        match self.peek().map(|t| t.tok.clone()) {
            Some(Tok::Word(w)) if w.starts_with('$') => {
                self.pos += 1;
                Ok(IntOrParam::Param(w[1..].to_string()))
            }
            _ => Ok(IntOrParam::Lit(self.int()?)),
        }
    }

    /// name[^exp] name[^exp] ... | 1
    fn formal_word(&mut self, stop: &[&str]) -> Result<FormalWord, ScriptError> {
        let mut out = Vec::new();
        loop {
            match self.peek().map(|t| t.tok.clone()) {
                Some(Tok::Word(w)) => {
                    if w == "1" && out.is_empty() {
                        self.pos += 1;
                        return Ok(out);
                    }
                    self.pos += 1;
                    let exp = if self.eat_sym("^") { self.int()? } else { 1 };
                    out.push((w, exp));
                }
                Some(Tok::Sym(s)) if stop.contains(&s) => break,
                Some(Tok::Newline) | None => break,
                _ => return self.err("expected a generator word"),
            }
        }
        if out.is_empty() {
            return self.err("expected a generator word");
        }
        Ok(out)
    }

    fn name_list(&mut self) -> Result<Vec<String>, ScriptError> {
        self.expect_sym("[")?;
        let mut names = Vec::new();
        loop {
            if self.eat_sym("]") {
                break;
            }
            names.push(self.word()?);
            if !self.eat_sym(",") && !matches!(self.peek().map(|t| &t.tok), Some(Tok::Sym("]"))) {
                return self.err("expected `,` or `]`");
            }
        }
        Ok(names)
    }

    fn int_list(&mut self) -> Result<Vec<i64>, ScriptError> {
        self.expect_sym("[")?;
        let mut values = Vec::new();
        loop {
            if self.eat_sym("]") {
                break;
            }
            values.push(self.int()?);
            if !self.eat_sym(",") && !matches!(self.peek().map(|t| &t.tok), Some(Tok::Sym("]"))) {
                return self.err("expected `,` or `]`");
            }
        }
        Ok(values)
    }

    fn end_statement(&mut self) -> Result<(), ScriptError> {
        match self.peek().map(|t| &t.tok) {
            Some(Tok::Newline) | None => {
                self.skip_newlines();
                Ok(())
            }
            _ => self.err("expected end of statement"),
        }
    }

    fn script(&mut self) -> Result<Script, ScriptError> {
        let mut script = Script::empty();
        loop {
            self.skip_newlines();
            let Some(t) = self.peek().cloned() else { break };
            let line = t.line;
            let Tok::Word(kw) = t.tok else {
                return self.err("expected a statement keyword");
            };
            self.pos += 1;
            match kw.as_str() {
                "param" => {
                    let name = self.word()?;
                    self.expect_sym("=")?;
                    let default = self.int()?;
                    script.params.push((name, default));
                    self.end_statement()?;
                }
                "block" => {
                    let name = self.word()?;
                    self.expect_sym("=")?;
                    let ctor = self.block_ctor()?;
                    script.statements.push(Statement {
                        line,
                        kind: StatementKind::Block { name, ctor },
                    });
                    self.end_statement()?;
                }
                "product" => {
                    let name = self.word()?;
                    self.expect_sym("=")?;
                    let left = self.word()?;
                    self.keyword("x")?;
                    let right = self.word()?;
                    script.statements.push(Statement {
                        line,
                        kind: StatementKind::Product { name, left, right },
                    });
                    self.end_statement()?;
                }
                "glue" => {
                    let name = self.word()?;
                    let images = self.glue_table()?;
                    script.statements.push(Statement {
                        line,
                        kind: StatementKind::Glue { name, images },
                    });
                    self.end_statement()?;
                }
                "fiber_sum" => {
                    let kind = self.fiber_sum()?;
                    script.statements.push(Statement { line, kind });
                    self.end_statement()?;
                }
                "mark" => {
                    let kind = self.mark()?;
                    script.statements.push(Statement { line, kind });
                    self.end_statement()?;
                }
                "luttinger" => {
                    let kind = self.luttinger()?;
                    script.statements.push(Statement { line, kind });
                    self.end_statement()?;
                }
                "mcg_check" => {
                    let family = self.word()?;
                    let genus = self.uint()?;
                    script.statements.push(Statement {
                        line,
                        kind: StatementKind::McgCheck { family, genus },
                    });
                    self.end_statement()?;
                }
                "family" => {
                    let kind = self.family()?;
                    script.statements.push(Statement { line, kind });
                    self.end_statement()?;
                }
                "assert" => {
                    let kind = self.assert()?;
                    script.statements.push(Statement { line, kind });
                    self.end_statement()?;
                }
                "report" => {
                    let model = self.word()?;
                    script.statements.push(Statement {
                        line,
                        kind: StatementKind::Report { model },
                    });
                    self.end_statement()?;
                }
                other => {
                    self.pos -= 1;
                    return self.err(format!("unknown statement kind `{other}`"));
                }
            }
        }
        Ok(script)
    }

    fn block_ctor(&mut self) -> Result<BlockCtor, ScriptError> {
        let kind = self.word()?;
        match kind.as_str() {
            "surface" => {
                let mut genus = None;
                let mut gens = None;
                self.kv_block(|p, key| {
                    match key {
                        "genus" => genus = Some(p.uint()?),
                        "gens" => gens = Some(p.name_list()?),
                        _ => return p.err(format!("unknown surface field `{key}`")),
                    }
                    Ok(())
                })?;
                let Some(genus) = genus else {
                    return self.err("surface needs `genus`");
                };
                Ok(BlockCtor::Surface { genus, gens })
            }
            "rational_surface" => {
                let mut k = None;
                self.kv_block(|p, key| {
                    match key {
                        "k" => k = Some(p.uint()?),
                        _ => return p.err(format!("unknown rational_surface field `{key}`")),
                    }
                    Ok(())
                })?;
                let Some(k) = k else {
                    return self.err("rational_surface needs `k`");
                };
                Ok(BlockCtor::RationalSurface { k })
            }
            "elliptic_surface" => {
                let mut n = None;
                self.kv_block(|p, key| {
                    match key {
                        "n" => n = Some(p.uint()?),
                        _ => return p.err(format!("unknown elliptic_surface field `{key}`")),
                    }
                    Ok(())
                })?;
                let Some(n) = n else {
                    return self.err("elliptic_surface needs `n`");
                };
                Ok(BlockCtor::EllipticSurface { n })
            }
            "declare" => {
                let mut dim = None;
                let mut chern = None;
                let mut signature = None;
                let mut betti = None;
                let mut pi1_gens = Vec::new();
                let mut pi1_relators: Vec<FormalWord> = Vec::new();
                self.kv_block(|p, key| {
                    match key {
                        "dim" => dim = Some(p.uint()? as u8),
                        "chern" => chern = Some(p.paren_ints()?),
                        "signature" => signature = Some(p.int()?),
                        "betti" => betti = Some(p.int_list()?),
                        "pi1_gens" => pi1_gens = p.name_list()?,
                        "pi1_relators" => {
                            p.expect_sym("[")?;
                            loop {
                                if p.eat_sym("]") {
                                    break;
                                }
                                pi1_relators.push(p.formal_word(&["]", ","])?);
                                if !p.eat_sym(",")
                                    && !matches!(p.peek().map(|t| &t.tok), Some(Tok::Sym("]")))
                                {
                                    return p.err("expected `,` or `]`");
                                }
                            }
                        }
                        _ => return p.err(format!("unknown declare field `{key}`")),
                    }
                    Ok(())
                })?;
                let (Some(dim), Some(chern), Some(betti)) = (dim, chern, betti) else {
                    return self.err("declare needs `dim`, `chern`, and `betti`");
                };
                Ok(BlockCtor::Declare(DeclareFields {
                    dim,
                    chern,
                    signature,
                    betti,
                    pi1_gens,
                    pi1_relators,
                }))
            }
            other => {
                self.pos -= 1;
                self.err(format!("unknown block constructor `{other}`"))
            }
        }
    }

    /// `{ key: value, ... }` with newline or comma separation.
    fn kv_block(
        &mut self,
        mut field: impl FnMut(&mut Self, &str) -> Result<(), ScriptError>,
    ) -> Result<(), ScriptError> {
        self.expect_sym("{")?;
        loop {
            self.skip_newlines();
            if self.eat_sym("}") {
                break;
            }
            let key = self.word()?;
            self.expect_sym(":")?;
            field(self, &key)?;
            if !self.eat_sym(",") {
                self.skip_newlines();
                if self.eat_sym("}") {
                    break;
                }
            }
        }
        Ok(())
    }

    fn paren_ints(&mut self) -> Result<Vec<i64>, ScriptError> {
        self.expect_sym("(")?;
        let mut values = Vec::new();
        loop {
            if self.eat_sym(")") {
                break;
            }
            values.push(self.int()?);
            if !self.eat_sym(",") && !matches!(self.peek().map(|t| &t.tok), Some(Tok::Sym(")"))) {
                return self.err("expected `,` or `)`");
            }
        }
        Ok(values)
    }

    /// `{ a -> c', ..., mu -> mu'^-1 }`; the meridian row, if written, must
    /// be exactly mu -> mu'^-1. Primes on the right are notation for side 2
    /// and are stripped.
    fn glue_table(&mut self) -> Result<Vec<(String, FormalWord)>, ScriptError> {
        self.expect_sym("{")?;
        let mut images = Vec::new();
        loop {
            self.skip_newlines();
            if self.eat_sym("}") {
                break;
            }
            let gen = self.word()?;
            self.expect_sym("->")?;
            if gen == "mu" {
                // enforced syntactically: mu'^-1 and nothing else
                let w = self.word()?;
                if w != "mu'" {
                    self.pos -= 1;
                    return self.err("the meridian rule is fixed: write `mu -> mu'^-1`");
                }
                self.expect_sym("^")?;
                let e = self.int()?;
                if e != -1 {
                    return self.err("the meridian rule is fixed: write `mu -> mu'^-1`");
                }
            } else {
                let formal = self.formal_word(&[",", "}"])?;
                let mut stripped = Vec::new();
                for (name, exp) in formal {
                    let Some(base) = name.strip_suffix('\'') else {
                        return self.err(format!(
                            "gluing images live in side-2 generators; write `{name}'`"
                        ));
                    };
                    stripped.push((base.to_string(), exp));
                }
                images.push((gen, stripped));
            }
            if !self.eat_sym(",") {
                self.skip_newlines();
                if self.eat_sym("}") {
                    break;
                }
            }
        }
        Ok(images)
    }

    fn side_ref(&mut self) -> Result<(u8, String), ScriptError> {
        let side = self.int()?;
        if side != 1 && side != 2 {
            return self.err("side must be 1 or 2");
        }
        self.expect_sym(".")?;
        Ok((side as u8, self.label()?))
    }

    fn fiber_sum(&mut self) -> Result<StatementKind, ScriptError> {
        let name = self.word()?;
        self.expect_sym("=")?;
        let model1 = self.word()?;
        self.expect_sym(".")?;
        let marking1 = self.word()?;
        self.expect_sym("+")?;
        let model2 = self.word()?;
        self.expect_sym(".")?;
        let marking2 = self.word()?;
        self.keyword("via")?;
        let glue = self.word()?;

        let mut directives = Vec::new();
        self.expect_sym("{")?;
        loop {
            self.skip_newlines();
            if self.eat_sym("}") {
                break;
            }
            let kw = self.word()?;
            match kw.as_str() {
                "keep" => {
                    let (side, label) = self.side_ref()?;
                    let new_label = if matches!(self.peek().map(|t| &t.tok), Some(Tok::Word(w)) if w == "as")
                    {
                        self.pos += 1;
                        Some(self.label()?)
                    } else {
                        None
                    };
                    directives.push(Directive::Keep {
                        side,
                        label,
                        new_label,
                    });
                }
                "sew" => {
                    let (s1, label1) = self.side_ref()?;
                    self.expect_sym("+")?;
                    let (s2, label2) = self.side_ref()?;
                    if s1 != 1 || s2 != 2 {
                        return self.err("sew takes `1.<label> + 2.<label>`");
                    }
                    self.keyword("as")?;
                    let new_label = self.label()?;
                    directives.push(Directive::Sew {
                        label1,
                        label2,
                        new_label,
                    });
                }
                "rim" => {
                    let circle = self.word()?;
                    let fate_word = self.word()?;
                    let fate = match fate_word.as_str() {
                        "null" => RimFate::Nullhomologous,
                        "essential" => {
                            self.keyword("as")?;
                            self.expect_sym("(")?;
                            let torus_label = self.label()?;
                            self.expect_sym(",")?;
                            let sphere_label = self.label()?;
                            self.expect_sym(")")?;
                            RimFate::Essential {
                                torus_label,
                                sphere_label,
                            }
                        }
                        other => {
                            self.pos -= 1;
                            return self.err(format!(
                                "rim fate is `null` or `essential`, found `{other}`"
                            ));
                        }
                    };
                    directives.push(Directive::Rim { circle, fate });
                }
                "basis" => {
                    self.keyword("complete")?;
                    directives.push(Directive::BasisComplete);
                }
                other => {
                    self.pos -= 1;
                    return self.err(format!("unknown h2 directive `{other}`"));
                }
            }
            if !self.eat_sym(",") {
                self.skip_newlines();
                if self.eat_sym("}") {
                    break;
                }
            }
        }
        Ok(StatementKind::FiberSum {
            name,
            model1,
            marking1,
            model2,
            marking2,
            glue,
            directives,
        })
    }

    fn mark(&mut self) -> Result<StatementKind, ScriptError> {
        let name = self.word()?;
        self.keyword("on")?;
        let model = self.word()?;
        let mut torus_gens = None;
        let mut normal_euler = 0;
        let mut transverse_sphere = false;
        let mut images = Vec::new();
        self.expect_sym("{")?;
        loop {
            self.skip_newlines();
            if self.eat_sym("}") {
                break;
            }
            let key = self.word()?;
            match key.as_str() {
                "torus" => {
                    self.expect_sym(":")?;
                    torus_gens = Some(self.name_list()?);
                }
                "normal_euler" => {
                    self.expect_sym(":")?;
                    normal_euler = self.int()?;
                }
                "transverse_sphere" => {
                    self.expect_sym(":")?;
                    let w = self.word()?;
                    transverse_sphere = match w.as_str() {
                        "true" | "yes" => true,
                        "false" | "no" => false,
                        _ => return self.err("transverse_sphere is true/false"),
                    };
                }
                "images" => {
                    self.expect_sym("{")?;
                    loop {
                        self.skip_newlines();
                        if self.eat_sym("}") {
                            break;
                        }
                        let gen = self.word()?;
                        self.expect_sym("->")?;
                        let word = self.formal_word(&[",", "}"])?;
                        images.push((gen, word));
                        if !self.eat_sym(",") {
                            self.skip_newlines();
                            if self.eat_sym("}") {
                                break;
                            }
                        }
                    }
                }
                other => return self.err(format!("unknown mark field `{other}`")),
            }
            if !self.eat_sym(",") {
                self.skip_newlines();
                if self.eat_sym("}") {
                    break;
                }
            }
        }
        let Some(torus_gens) = torus_gens else {
            return self.err("mark needs `torus: [..]`");
        };
        Ok(StatementKind::Mark {
            name,
            model,
            torus_gens,
            normal_euler,
            transverse_sphere,
            images,
        })
    }

    fn luttinger(&mut self) -> Result<StatementKind, ScriptError> {
        let name = self.word()?;
        self.expect_sym("=")?;
        let model = self.word()?;
        self.expect_sym("(")?;
        let marking = self.word()?;
        self.expect_sym(",")?;
        let curve = self.word()?;
        self.expect_sym("^")?;
        let power = self.int_or_param()?;
        self.expect_sym(",")?;
        let sign = if self.eat_sym("+") {
            let one = self.int()?;
            if one != 1 {
                return self.err("sign is +1 or -1");
            }
            1
        } else {
            let v = self.int()?;
            match v {
                1 => 1,
                -1 => -1,
                _ => return self.err("sign is +1 or -1"),
            }
        };
        self.expect_sym(")")?;
        let kill = if matches!(self.peek().map(|t| &t.tok), Some(Tok::Word(w)) if w == "kill") {
            self.pos += 1;
            self.expect_sym("(")?;
            let rim = self.label()?;
            self.expect_sym(",")?;
            let sphere = self.label()?;
            self.expect_sym(")")?;
            Some((rim, sphere))
        } else {
            None
        };
        Ok(StatementKind::Luttinger {
            name,
            model,
            marking,
            curve,
            power,
            sign,
            kill,
        })
    }

    fn family(&mut self) -> Result<StatementKind, ScriptError> {
        self.keyword("lefschetz")?;
        let mut g = (1, 1);
        let mut n = (1, 1);
        self.kv_block(|p, key| {
            let range = p.range()?;
            match key {
                "g" => g = range,
                "n" => n = range,
                _ => return p.err(format!("unknown family field `{key}`")),
            }
            Ok(())
        })?;
        Ok(StatementKind::Family {
            g_from: g.0,
            g_to: g.1,
            n_from: n.0,
            n_to: n.1,
        })
    }

    fn range(&mut self) -> Result<(u32, u32), ScriptError> {
        let from = self.uint()?;
        if self.eat_sym(".") {
            self.expect_sym(".")?;
            let to = self.uint()?;
            Ok((from, to))
        } else {
            Ok((from, from))
        }
    }

    fn assert(&mut self) -> Result<StatementKind, ScriptError> {
        let model = self.word()?;
        self.expect_sym(".")?;
        let prop_word = self.word()?;
        let Some(property) = Property::parse(&prop_word) else {
            self.pos -= 1;
            return self.err(format!("unknown assert property `{prop_word}`"));
        };
        self.expect_sym("=")?;
        self.expect_sym("=")?;
        let value = self.assert_value(property)?;
        Ok(StatementKind::Assert {
            model,
            property,
            value,
        })
    }

    fn assert_value(&mut self, property: Property) -> Result<AssertValue, ScriptError> {
        match property {
            Property::Pi1 => {
                // trivial | Z-factor products: Z, Z^2, Z_6, Z_$p x Z_$q
                let first = self.word()?;
                if first == "trivial" {
                    return Ok(AssertValue::Trivial);
                }
                let mut factors = self.z_factor(&first)?;
                while matches!(self.peek().map(|t| &t.tok), Some(Tok::Word(w)) if w == "x") {
                    self.pos += 1;
                    let w = self.word()?;
                    factors.extend(self.z_factor(&w)?);
                }
                Ok(AssertValue::Abelian { factors })
            }
            Property::Chern => Ok(AssertValue::Chern {
                values: self.paren_ints()?,
            }),
            Property::Cy => {
                let verdict = self.word()?;
                if !["CY_certified", "CY_on_declared_basis", "NotCY"].contains(&verdict.as_str()) {
                    self.pos -= 1;
                    return self.err(format!("unknown CY verdict `{verdict}`"));
                }
                Ok(AssertValue::Cy { verdict })
            }
            Property::B2 | Property::Signature | Property::C1Evals => {
                Ok(AssertValue::Int { value: self.int()? })
            }
            Property::Form => {
                // (rank 22, signature (3, 19), even, unimodular)
                self.expect_sym("(")?;
                self.keyword("rank")?;
                let rank = self.uint()? as usize;
                self.expect_sym(",")?;
                self.keyword("signature")?;
                self.expect_sym("(")?;
                let positive = self.uint()? as usize;
                self.expect_sym(",")?;
                let negative = self.uint()? as usize;
                self.expect_sym(")")?;
                self.expect_sym(",")?;
                let parity = self.word()?;
                let even = match parity.as_str() {
                    "even" => true,
                    "odd" => false,
                    _ => return self.err("parity is `even` or `odd`"),
                };
                self.expect_sym(",")?;
                let uni = self.word()?;
                let unimodular = match uni.as_str() {
                    "unimodular" => true,
                    "nonunimodular" => false,
                    _ => return self.err("expected `unimodular` or `nonunimodular`"),
                };
                self.expect_sym(")")?;
                Ok(AssertValue::Form {
                    rank,
                    positive,
                    negative,
                    even,
                    unimodular,
                })
            }
        }
    }

    /// One factor of an abelian value: Z (free), Z^k, Z_n, Z_$p.
    fn z_factor(&mut self, word: &str) -> Result<Vec<IntOrParam>, ScriptError> {
        if word == "Z" {
            if self.eat_sym("^") {
                let k = self.uint()?;
                return Ok(vec![IntOrParam::Lit(0); k as usize]);
            }
            return Ok(vec![IntOrParam::Lit(0)]);
        }
        if let Some(rest) = word.strip_prefix("Z_") {
            if let Some(param) = rest.strip_prefix('$') {
                return Ok(vec![IntOrParam::Param(param.to_string())]);
            }
            if let Ok(n) = rest.parse::<i64>() {
                if n >= 0 {
                    return Ok(vec![IntOrParam::Lit(n)]);
                }
            }
        }
        self.pos -= 1;
        self.err(format!(
            "expected an abelian factor like Z, Z^2, Z_6, or Z_$p; found `{word}`"
        ))
    }
}
