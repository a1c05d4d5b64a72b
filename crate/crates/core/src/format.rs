//! The line-oriented `.agq` bound quiver format.
//!
//! ```text
//! # comment
//! algebra NAME
//! vertex V1 V2 ...
//! arrow NAME : SRC -> TGT
//! rel A B        # the path A then B is zero
//! ```

use std::collections::HashMap;
use std::fmt::Write as _;

use thiserror::Error;

use crate::quiver::{AlmostGentlePair, BoundQuiverSpec, ValidationReport};

#[derive(Clone, Debug, PartialEq, Eq, Error)]
#[error("{line}:{column}: {message}")]
pub struct ParseError {
    pub line: usize,
    pub column: usize,
    pub message: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum LoadError {
    #[error("parse error at {0}")]
    Parse(#[from] ParseError),
    #[error("invalid bound quiver:\n{0}")]
    Invalid(ValidationReport),
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Token<'a> {
    Name(&'a str),
    Colon,
    Arrow,
}

fn is_name_char(c: char) -> bool {
    c.is_ascii_alphanumeric() || c == '_' || c == '\''
}

fn tokenize(line: &str, lineno: usize) -> Result<Vec<(usize, Token<'_>)>, ParseError> {
    let line = line.split('#').next().unwrap_or("");
    let mut out = Vec::new();
    let mut chars = line.char_indices().peekable();
    while let Some(&(i, c)) = chars.peek() {
        let column = line[..i].chars().count() + 1;
        if c.is_whitespace() {
            chars.next();
        } else if c == ':' {
            chars.next();
            out.push((column, Token::Colon));
        } else if c == '-' {
            chars.next();
            match chars.next() {
                Some((_, '>')) => out.push((column, Token::Arrow)),
                _ => return Err(ParseError { line: lineno, column, message: "expected '->'".into() }),
            }
        } else if is_name_char(c) {
            let mut end = i;
            while let Some(&(j, d)) = chars.peek() {
                if !is_name_char(d) {
                    break;
                }
                end = j + d.len_utf8();
                chars.next();
            }
            out.push((column, Token::Name(&line[i..end])));
        } else {
            return Err(ParseError { line: lineno, column, message: format!("unexpected character {c:?}") });
        }
    }
    Ok(out)
}

/// Parses `.agq` text into a named spec. Semantic checks (composability,
/// the almost gentle conditions) are left to validation.
pub fn parse_agq(text: &str) -> Result<BoundQuiverSpec, ParseError> {
    let mut spec = BoundQuiverSpec::default();
    let mut vertex_lines: HashMap<String, usize> = HashMap::new();
    let mut arrow_lines: HashMap<String, usize> = HashMap::new();
    let mut rel_lines: HashMap<(String, String), usize> = HashMap::new();
    for (idx, raw) in text.lines().enumerate() {
        let lineno = idx + 1;
        let tokens = tokenize(raw, lineno)?;
        let Some((col, head)) = tokens.first().cloned() else { continue };
        let err = |column: usize, message: String| ParseError { line: lineno, column, message };
        let end_column = raw.split('#').next().unwrap_or("").trim_end().chars().count() + 1;
        let names = |from: usize| -> Result<Vec<(usize, &str)>, ParseError> {
            tokens[from..]
                .iter()
                .map(|(c, t)| match t {
                    Token::Name(n) => Ok((*c, *n)),
                    _ => Err(err(*c, "expected a name".into())),
                })
                .collect()
        };
        match head {
            Token::Name("algebra") => {
                let rest = names(1)?;
                if rest.len() != 1 {
                    return Err(err(col, "expected `algebra NAME`".into()));
                }
                if spec.name.is_some() {
                    return Err(err(col, "algebra name given twice".into()));
                }
                spec.name = Some(rest[0].1.to_string());
            }
            Token::Name("vertex") => {
                let rest = names(1)?;
                if rest.is_empty() {
                    return Err(err(end_column, "expected at least one vertex name".into()));
                }
                for (c, v) in rest {
                    if let Some(first) = vertex_lines.insert(v.to_string(), lineno) {
                        return Err(err(c, format!("vertex {v} already declared on line {first}")));
                    }
                    spec.vertices.push(v.to_string());
                }
            }
            Token::Name("arrow") => {
                let shape: Vec<_> = tokens.iter().map(|(_, t)| t.clone()).collect();
                let (name, source, target) = match shape.as_slice() {
                    [_, Token::Name(n), Token::Colon, Token::Name(s), Token::Arrow, Token::Name(t)] => (*n, *s, *t),
                    _ => {
                        let column = tokens.get(1).map_or(end_column, |(c, _)| *c);
                        return Err(err(column, "expected `arrow NAME : SRC -> TGT`".into()));
                    }
                };
                if let Some(first) = arrow_lines.insert(name.to_string(), lineno) {
                    return Err(err(tokens[1].0, format!("arrow {name} already declared on line {first}")));
                }
                spec.arrows.push((name.to_string(), source.to_string(), target.to_string()));
            }
            Token::Name("rel") => {
                let rest = names(1)?;
                if rest.len() != 2 {
                    return Err(err(col, "expected `rel A B`".into()));
                }
                let key = (rest[0].1.to_string(), rest[1].1.to_string());
                if let Some(first) = rel_lines.insert(key.clone(), lineno) {
                    return Err(err(col, format!("relation {} {} already listed on line {first}", key.0, key.1)));
                }
                spec.relations.push(key);
            }
            Token::Name(other) => return Err(err(col, format!("unknown keyword {other:?}"))),
            _ => return Err(err(col, "expected a keyword".into())),
        }
    }
    Ok(spec)
}

/// Parses and validates.
pub fn load_agq(text: &str) -> Result<AlmostGentlePair, LoadError> {
    parse_agq(text)?.build().map_err(LoadError::Invalid)
}

/// Canonical text: name, one vertex line, arrows and relations in
/// declaration order.
pub fn emit_agq(pair: &AlmostGentlePair) -> String {
    let mut out = String::new();
    let q = pair.quiver();
    writeln!(out, "algebra {}", pair.name()).unwrap();
    if q.vertex_count() > 0 {
        let names: Vec<&str> = q.vertices().map(|v| q.vertex_name(v)).collect();
        writeln!(out, "vertex {}", names.join(" ")).unwrap();
    }
    for a in q.arrows() {
        writeln!(out, "arrow {} : {} -> {}", q.arrow_name(a), q.vertex_name(q.source(a)), q.vertex_name(q.target(a)))
            .unwrap();
    }
    for (a, b) in pair.relations().iter() {
        writeln!(out, "rel {} {}", q.arrow_name(a), q.arrow_name(b)).unwrap();
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quiver::Violation;

    #[test]
    fn single_arrow_auto_declares() {
        let pair = load_agq("arrow a : 1 -> 2").unwrap();
        assert_eq!(pair.vertex_count(), 2);
        assert_eq!(pair.arrow_count(), 1);
    }

    #[test]
    fn duplicate_arrow_names_report_both_lines() {
        let err = parse_agq("arrow a : 1 -> 2\n\narrow a : 2 -> 3\n").unwrap_err();
        assert_eq!(err.line, 3);
        assert!(err.message.contains("line 1"), "{err}");
    }

    #[test]
    fn noncomposable_relation_is_a_validation_failure() {
        let err = load_agq("arrow a : 1 -> 2\narrow b : 3 -> 4\nrel a b\n").unwrap_err();
        match err {
            LoadError::Invalid(r) => assert!(matches!(r.violations[0], Violation::NonComposableRelation { .. })),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn apostrophes_and_comments() {
        let pair = load_agq("vertex 3 3' # primes are name characters\narrow x : 3 -> 3'\n").unwrap();
        assert_eq!(pair.vertex_name(pair.target(pair.arrow("x").unwrap())), "3'");
    }

    #[test]
    fn syntax_errors_have_positions() {
        let err = parse_agq("arrow a 1 -> 2").unwrap_err();
        assert_eq!((err.line, err.column), (1, 7));
        let err = parse_agq("vertex 1\nfoo 2").unwrap_err();
        assert_eq!((err.line, err.column), (2, 1));
        let err = parse_agq("arrow a : 1 - 2").unwrap_err();
        assert_eq!((err.line, err.column), (1, 13));
    }

    #[test]
    fn emit_is_a_fixed_point() {
        let pair = crate::fixtures::fig1();
        let text = emit_agq(&pair);
        let again = load_agq(&text).unwrap();
        assert_eq!(again, pair);
        assert_eq!(emit_agq(&again), text);
    }
}
