//! Tokenizer for the line-oriented script syntax.

use super::ScriptError;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Tok {
    /// Bare word: names, keywords, numbers, things like `e1-e2` or `mu'`.
    Word(String),
    /// Quoted string, for labels with characters the grammar reserves.
    Quoted(String),
    /// One of  { } ( ) [ ] = , : . ^ + ->
    Sym(&'static str),
    Newline,
}

#[derive(Debug, Clone)]
pub struct Spanned {
    pub tok: Tok,
    pub line: usize,
    pub col: usize,
}

const WORD_EXTRA: &[char] = &['_', '\'', '-', '$'];

fn is_word_char(c: char) -> bool {
    c.is_alphanumeric() || WORD_EXTRA.contains(&c)
}

pub fn tokenize(text: &str) -> Result<Vec<Spanned>, ScriptError> {
    let mut out = Vec::new();
    for (li, raw_line) in text.lines().enumerate() {
        let line = li + 1;
        let content = match raw_line.find('#') {
            Some(i) => &raw_line[..i],
            None => raw_line,
        };
        let chars: Vec<char> = content.chars().collect();
        let mut i = 0;
        while i < chars.len() {
            let c = chars[i];
            let col = i + 1;
            if c.is_whitespace() {
                i += 1;
                continue;
            }
            if c == '"' {
                let start = i + 1;
                let mut j = start;
                while j < chars.len() && chars[j] != '"' {
                    j += 1;
                }
                if j == chars.len() {
                    return Err(ScriptError::Syntax {
                        line,
                        col,
                        message: "unterminated string".to_string(),
                    });
                }
                out.push(Spanned {
                    tok: Tok::Quoted(chars[start..j].iter().collect()),
                    line,
                    col,
                });
                i = j + 1;
                continue;
            }
            if c == '-' && i + 1 < chars.len() && chars[i + 1] == '>' {
                out.push(Spanned {
                    tok: Tok::Sym("->"),
                    line,
                    col,
                });
                i += 2;
                continue;
            }
            if let Some(sym) = match c {
                '{' => Some("{"),
                '}' => Some("}"),
                '(' => Some("("),
                ')' => Some(")"),
                '[' => Some("["),
                ']' => Some("]"),
                '=' => Some("="),
                ',' => Some(","),
                ':' => Some(":"),
                '.' => Some("."),
                '^' => Some("^"),
                '+' => Some("+"),
                _ => None,
            } {
                out.push(Spanned {
                    tok: Tok::Sym(sym),
                    line,
                    col,
                });
                i += 1;
                continue;
            }
            if is_word_char(c) {
                let start = i;
                while i < chars.len() && is_word_char(chars[i]) {
                    // stop a word before an arrow so `a->b` still lexes
                    if chars[i] == '-' && i + 1 < chars.len() && chars[i + 1] == '>' {
                        break;
                    }
                    i += 1;
                }
                out.push(Spanned {
                    tok: Tok::Word(chars[start..i].iter().collect()),
                    line,
                    col,
                });
                continue;
            }
            return Err(ScriptError::Syntax {
                line,
                col,
                message: format!("unexpected character `{c}`"),
            });
        }
        out.push(Spanned {
            tok: Tok::Newline,
            line,
            col: chars.len() + 1,
        });
    }
    Ok(out)
}
