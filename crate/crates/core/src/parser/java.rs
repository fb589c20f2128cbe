//! Declaration scanner for a Java subset.
//!
//! Only method heads at the body depth of the first top-level class or
//! interface are extracted. Bodies, field initializers, nested types and
//! initializer blocks are skipped by bracket counting over a token stream
//! from which comments and literals have already been removed.

use super::{InterfaceModel, MethodDecl, ParameterDecl, ParseError, SourceType};

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    Ident(String),
    Punct(char),
    /// Numeric, string, char and text-block literals collapse to one token.
    Literal,
}

impl Tok {
    fn is_punct(&self, c: char) -> bool {
        matches!(self, Tok::Punct(p) if *p == c)
    }

    fn ident(&self) -> Option<&str> {
        match self {
            Tok::Ident(s) => Some(s),
            _ => None,
        }
    }
}

const MODIFIERS: &[&str] = &[
    "public",
    "protected",
    "private",
    "static",
    "final",
    "abstract",
    "synchronized",
    "native",
    "transient",
    "volatile",
    "strictfp",
    "default",
];

const TYPE_KEYWORDS: &[&str] = &["class", "interface", "enum", "record"];

fn lex(text: &str, path: &str) -> Result<Vec<Tok>, ParseError> {
    let chars: Vec<char> = text.chars().collect();
    let mut toks = Vec::new();
    let mut brackets: Vec<char> = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        if c.is_whitespace() {
            i += 1;
        } else if c == '/' && chars.get(i + 1) == Some(&'/') {
            while i < chars.len() && chars[i] != '\n' {
                i += 1;
            }
        } else if c == '/' && chars.get(i + 1) == Some(&'*') {
            i += 2;
            loop {
                if i + 1 >= chars.len() {
                    return Err(ParseError::syntax(path, "unterminated block comment"));
                }
                if chars[i] == '*' && chars[i + 1] == '/' {
                    i += 2;
                    break;
                }
                i += 1;
            }
        } else if c == '"' && chars.get(i + 1) == Some(&'"') && chars.get(i + 2) == Some(&'"') {
            i += 3;
            loop {
                if i + 2 >= chars.len() {
                    return Err(ParseError::syntax(path, "unterminated text block"));
                }
                if chars[i] == '\\' {
                    i += 2;
                    continue;
                }
                if chars[i] == '"' && chars[i + 1] == '"' && chars[i + 2] == '"' {
                    i += 3;
                    break;
                }
                i += 1;
            }
            toks.push(Tok::Literal);
        } else if c == '"' || c == '\'' {
            i += 1;
            loop {
                match chars.get(i) {
                    None | Some('\n') => {
                        return Err(ParseError::syntax(path, "unterminated literal"))
                    }
                    Some('\\') => i += 2,
                    Some(&q) if q == c => {
                        i += 1;
                        break;
                    }
                    Some(_) => i += 1,
                }
            }
            toks.push(Tok::Literal);
        } else if c.is_ascii_digit() {
            while i < chars.len() && (chars[i].is_ascii_alphanumeric() || chars[i] == '.' || chars[i] == '_') {
                i += 1;
            }
            toks.push(Tok::Literal);
        } else if c.is_alphabetic() || c == '_' || c == '$' {
            let start = i;
            while i < chars.len() && (chars[i].is_alphanumeric() || chars[i] == '_' || chars[i] == '$') {
                i += 1;
            }
            toks.push(Tok::Ident(chars[start..i].iter().collect()));
        } else {
            match c {
                '(' | '{' | '[' => brackets.push(c),
                ')' | '}' | ']' => {
                    let open = match c {
                        ')' => '(',
                        '}' => '{',
                        _ => '[',
                    };
                    if brackets.pop() != Some(open) {
                        return Err(ParseError::syntax(path, format!("unbalanced '{c}'")));
                    }
                }
                _ => {}
            }
            toks.push(Tok::Punct(c));
            i += 1;
        }
    }
    if let Some(open) = brackets.last() {
        return Err(ParseError::syntax(path, format!("unbalanced '{open}'")));
    }
    Ok(toks)
}

/// Index just past the bracket matching the opener at `start`.
fn skip_balanced(toks: &[Tok], start: usize) -> usize {
    let mut depth = 0usize;
    let mut i = start;
    while i < toks.len() {
        match &toks[i] {
            Tok::Punct('(' | '{' | '[') => depth += 1,
            Tok::Punct(')' | '}' | ']') => {
                depth -= 1;
                if depth == 0 {
                    return i + 1;
                }
            }
            _ => {}
        }
        i += 1;
    }
    toks.len()
}

/// Index just past the matching `>` of a generic argument list opened at `start`.
fn skip_angles(toks: &[Tok], start: usize) -> usize {
    let mut depth = 0usize;
    let mut i = start;
    while i < toks.len() {
        if toks[i].is_punct('<') {
            depth += 1;
        } else if toks[i].is_punct('>') {
            depth -= 1;
            if depth == 0 {
                return i + 1;
            }
        }
        i += 1;
    }
    toks.len()
}

fn render(toks: &[Tok]) -> String {
    let mut out = String::new();
    let mut prev_word = false;
    for t in toks {
        match t {
            Tok::Ident(s) => {
                if prev_word {
                    out.push(' ');
                }
                out.push_str(s);
                prev_word = true;
            }
            Tok::Punct(c) => {
                if *c == ',' {
                    out.push_str(", ");
                } else {
                    out.push(*c);
                }
                prev_word = false;
            }
            Tok::Literal => {
                out.push('_');
                prev_word = false;
            }
        }
    }
    out.trim().to_string()
}

/// Drops annotations (`@Name`, `@a.b.Name(...)`) from a token run.
fn strip_annotations(toks: &[Tok]) -> Vec<Tok> {
    let mut out = Vec::new();
    let mut i = 0;
    while i < toks.len() {
        if toks[i].is_punct('@') && toks.get(i + 1).and_then(Tok::ident) != Some("interface") {
            i += 1;
            while i < toks.len() {
                if toks[i].ident().is_some() {
                    i += 1;
                    if toks.get(i).is_some_and(|t| t.is_punct('.')) {
                        i += 1;
                        continue;
                    }
                }
                break;
            }
            if toks.get(i).is_some_and(|t| t.is_punct('(')) {
                i = skip_balanced(toks, i);
            }
        } else {
            out.push(toks[i].clone());
            i += 1;
        }
    }
    out
}

pub fn parse_java(text: &str, path: &str) -> Result<InterfaceModel, ParseError> {
    let toks = lex(text, path)?;

    // First top-level type declaration: `class` or `interface` at depth 0.
    let mut depth = 0usize;
    let mut class_at = None;
    for (i, t) in toks.iter().enumerate() {
        match t {
            Tok::Punct('{') => depth += 1,
            Tok::Punct('}') => depth -= 1,
            Tok::Ident(s) if depth == 0 && (s == "class" || s == "interface") => {
                let after_at = i > 0 && toks[i - 1].is_punct('@');
                if !after_at {
                    class_at = Some(i);
                    break;
                }
            }
            _ => {}
        }
    }
    let class_at = class_at.ok_or_else(|| ParseError::syntax(path, "no class declaration found"))?;
    let class_name = toks
        .get(class_at + 1)
        .and_then(Tok::ident)
        .ok_or_else(|| ParseError::syntax(path, "class declaration without a name"))?
        .to_string();
    let open = (class_at..toks.len())
        .find(|&i| toks[i].is_punct('{'))
        .ok_or_else(|| ParseError::syntax(path, format!("class {class_name} has no body")))?;
    let close = skip_balanced(&toks, open) - 1;

    let mut methods = Vec::new();
    let mut head: Vec<Tok> = Vec::new();
    let mut i = open + 1;
    while i < close {
        let t = &toks[i];
        match t {
            Tok::Punct(';') => {
                head.clear();
                i += 1;
            }
            Tok::Punct('=') => {
                // Field initializer: skip to the terminating `;` at member depth.
                while i < close && !toks[i].is_punct(';') {
                    if matches!(toks[i], Tok::Punct('(' | '{' | '[')) {
                        i = skip_balanced(&toks, i);
                    } else {
                        i += 1;
                    }
                }
                head.clear();
            }
            Tok::Punct('{') => {
                // Nested type, initializer block, or enum-like body.
                i = skip_balanced(&toks, i);
                head.clear();
            }
            Tok::Punct('@') => {
                // Keep annotations out of the head, including their arguments.
                let start = i;
                i += 1;
                while i < close && toks[i].ident().is_some() {
                    i += 1;
                    if toks[i].is_punct('.') {
                        i += 1;
                    } else {
                        break;
                    }
                }
                if i < close && toks[i].is_punct('(') {
                    i = skip_balanced(&toks, i);
                }
                if toks.get(start + 1).and_then(Tok::ident) == Some("interface") {
                    head.push(Tok::Ident("interface".into()));
                }
            }
            Tok::Punct('(') => {
                let params_end = skip_balanced(&toks, i);
                let member = parse_member(&head, &toks[i + 1..params_end - 1], &class_name, path)?;
                i = params_end;
                // Skip `throws ...` and any default value up to the body or `;`.
                while i < close && !toks[i].is_punct('{') && !toks[i].is_punct(';') {
                    i += 1;
                }
                if i < close && toks[i].is_punct('{') {
                    i = skip_balanced(&toks, i);
                } else {
                    i += 1;
                }
                head.clear();
                if let Some(m) = member {
                    methods.push(m);
                }
            }
            _ => {
                head.push(t.clone());
                i += 1;
            }
        }
    }

    InterfaceModel::new(path, SourceType::Java, class_name, methods)
}

/// Interprets a member head followed by a parenthesised list. Returns `None`
/// for constructors and anything that is not a method declaration.
fn parse_member(
    head: &[Tok],
    params: &[Tok],
    class_name: &str,
    path: &str,
) -> Result<Option<MethodDecl>, ParseError> {
    let before_name = &head[..head.len().saturating_sub(1)];
    if before_name
        .iter()
        .any(|t| t.ident().is_some_and(|s| TYPE_KEYWORDS.contains(&s)))
    {
        return Ok(None);
    }
    let mut rest: Vec<Tok> = head
        .iter()
        .filter(|t| !t.ident().is_some_and(|s| MODIFIERS.contains(&s)))
        .cloned()
        .collect();
    if rest.first().is_some_and(|t| t.is_punct('<')) {
        let end = skip_angles(&rest, 0);
        rest.drain(..end);
    }
    let Some((name_tok, return_toks)) = rest.split_last() else {
        return Ok(None);
    };
    let Some(name) = name_tok.ident() else {
        return Ok(None);
    };
    if return_toks.is_empty() {
        // Constructor (or a bare call expression, which cannot occur here).
        debug_assert!(name == class_name || !name.is_empty());
        return Ok(None);
    }
    let return_type = render(return_toks);
    let parameters = parse_params(params, name, path)?;
    let method = MethodDecl::new(name, return_type, parameters)
        .map_err(|e| ParseError::syntax(path, e.to_string()))?;
    Ok(Some(method))
}

fn parse_params(toks: &[Tok], method: &str, path: &str) -> Result<Vec<ParameterDecl>, ParseError> {
    let toks = strip_annotations(toks);
    let mut out = Vec::new();
    let mut start = 0;
    let mut angle = 0i32;
    let mut i = 0;
    while i <= toks.len() {
        let at_end = i == toks.len();
        if !at_end {
            match toks[i] {
                Tok::Punct('<') => angle += 1,
                Tok::Punct('>') => angle -= 1,
                _ => {}
            }
        }
        if at_end || (angle == 0 && toks[i].is_punct(',')) {
            let piece = &toks[start..i];
            if !piece.is_empty() {
                out.push(parse_param(piece, method, path)?);
            } else if !at_end || start > 0 {
                return Err(ParseError::syntax(
                    path,
                    format!("empty parameter in method {method}"),
                ));
            }
            start = i + 1;
        }
        i += 1;
    }
    Ok(out)
}

fn parse_param(piece: &[Tok], method: &str, path: &str) -> Result<ParameterDecl, ParseError> {
    let mut piece: Vec<Tok> = piece
        .iter()
        .filter(|t| t.ident() != Some("final"))
        .cloned()
        .collect();
    // C-style array suffix on the name: `int values[]`.
    let mut suffix = String::new();
    while piece.len() >= 2
        && piece[piece.len() - 1].is_punct(']')
        && piece[piece.len() - 2].is_punct('[')
        && piece.len() > 2
        && piece[piece.len() - 3].ident().is_some()
    {
        piece.truncate(piece.len() - 2);
        suffix.push_str("[]");
    }
    let Some((name_tok, type_toks)) = piece.split_last() else {
        return Err(ParseError::syntax(path, format!("empty parameter in method {method}")));
    };
    let name = name_tok.ident().ok_or_else(|| {
        ParseError::syntax(path, format!("malformed parameter list in method {method}"))
    })?;
    if type_toks.is_empty() {
        return Err(ParseError::syntax(
            path,
            format!("parameter {name} of method {method} has no type"),
        ));
    }
    let declared_type = format!("{}{suffix}", render(type_toks));
    ParameterDecl::new(name, declared_type).map_err(|e| ParseError::syntax(path, e.to_string()))
}
