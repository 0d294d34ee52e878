//! Parser for the `.qa` presentation format.
//!
//! ```text
//! algebra k[x]/(x^2) over Q
//! vertices: a
//! arrows:
//!   x: a -> a
//! relations:
//!   x*x
//! ```

use num_bigint::BigInt;

use super::{Presentation, Quiver, Relation};
use crate::error::{ParseError, ParseErrorKind, PresentationError};
use crate::field::Field;

#[derive(Clone, Copy, PartialEq, Eq)]
enum Section {
    Header,
    AwaitVertices,
    Vertices,
    Arrows,
    Relations,
}

fn syntax(line: usize, column: usize, msg: impl Into<String>) -> ParseError {
    ParseError {
        line,
        column,
        kind: ParseErrorKind::Syntax(msg.into()),
    }
}

fn invalid(line: usize, column: usize, err: PresentationError) -> ParseError {
    ParseError {
        line,
        column,
        kind: ParseErrorKind::Invalid(err),
    }
}

/// Whitespace-separated words with their 1-based columns.
fn words(text: &str) -> Vec<(usize, &str)> {
    let mut out = Vec::new();
    let mut start = None;
    for (i, ch) in text.char_indices() {
        match (ch.is_whitespace(), start) {
            (true, Some(s)) => {
                out.push((s, &text[s..i]));
                start = None;
            }
            (false, None) => start = Some(i),
            _ => {}
        }
    }
    if let Some(s) = start {
        out.push((s, &text[s..]));
    }
    out.into_iter().map(|(s, w)| (s + 1, w)).collect()
}

fn parse_field(word: &str, line: usize, col: usize) -> Result<Field, ParseError> {
    if word == "Q" {
        return Ok(Field::Rational);
    }
    let p = word
        .strip_prefix('F')
        .and_then(|d| d.parse::<u64>().ok())
        .ok_or_else(|| syntax(line, col, format!("expected `Q` or `F<p>`, found `{word}`")))?;
    Field::prime(p).map_err(|e| syntax(line, col, e.to_string()))
}

/// Parses a `.qa` document.
pub fn parse_presentation(text: &str) -> Result<Presentation, ParseError> {
    let mut section = Section::Header;
    let mut name = String::new();
    let mut field = Field::Rational;
    let mut quiver = Quiver::new(Vec::new(), Vec::new()).expect("empty quiver is valid");
    let mut relations = Vec::new();
    let mut last_line = 0;

    for (n, raw) in text.lines().enumerate() {
        let line = n + 1;
        last_line = line;
        let content = raw.split('#').next().unwrap_or("");
        let ws = words(content);
        let Some(&(col0, first)) = ws.first() else { continue };

        if section == Section::Header {
            if first != "algebra" {
                return Err(syntax(line, col0, "expected `algebra <name> over <field>`"));
            }
            if ws.len() != 4 || ws[2].1 != "over" {
                return Err(syntax(line, col0, "expected `algebra <name> over <field>`"));
            }
            name = ws[1].1.to_string();
            field = parse_field(ws[3].1, line, ws[3].0)?;
            section = Section::AwaitVertices;
            continue;
        }

        let next = match first {
            "vertices:" => Some(Section::Vertices),
            "arrows:" => Some(Section::Arrows),
            "relations:" => Some(Section::Relations),
            _ => None,
        };
        if let Some(next) = next {
            let allowed = matches!(
                (section, next),
                (Section::AwaitVertices, Section::Vertices)
                    | (Section::Vertices, Section::Arrows)
                    | (Section::Vertices, Section::Relations)
                    | (Section::Arrows, Section::Relations)
            );
            if !allowed {
                return Err(syntax(line, col0, format!("unexpected section `{first}`")));
            }
            section = next;
            if next == Section::Vertices {
                for &(c, w) in &ws[1..] {
                    quiver.add_vertex(w.to_string()).map_err(|e| invalid(line, c, e))?;
                }
            } else if ws.len() > 1 {
                return Err(syntax(line, ws[1].0, format!("unexpected text after `{first}`")));
            }
            continue;
        }

        match section {
            Section::Header => unreachable!(),
            Section::AwaitVertices => return Err(syntax(line, col0, "expected `vertices:`")),
            Section::Vertices => {
                for &(c, w) in &ws {
                    quiver.add_vertex(w.to_string()).map_err(|e| invalid(line, c, e))?;
                }
            }
            Section::Arrows => parse_arrow_line(&mut quiver, content, line)?,
            Section::Relations => relations.push(parse_relation(&quiver, field, content, line)?),
        }
    }

    match section {
        Section::Header => Err(syntax(last_line.max(1), 1, "missing `algebra` header")),
        Section::AwaitVertices => Err(syntax(last_line, 1, "missing `vertices:` section")),
        _ => Ok(Presentation::new(name, field, quiver, relations)),
    }
}

fn parse_arrow_line(quiver: &mut Quiver, content: &str, line: usize) -> Result<(), ParseError> {
    // label: src -> tgt
    let first_col = content.len() - content.trim_start().len() + 1;
    let Some(colon) = content.find(':') else {
        return Err(syntax(line, first_col, "expected `label: source -> target`"));
    };
    let label = content[..colon].trim();
    let rest = &content[colon + 1..];
    let Some(arrow) = rest.find("->") else {
        return Err(syntax(line, colon + 2, "expected `->`"));
    };
    let src = rest[..arrow].trim();
    let tgt = rest[arrow + 2..].trim();
    let src_col = colon + 2 + (rest.len() - rest.trim_start().len());
    let tgt_col = colon + 1 + arrow + 2 + (rest[arrow + 2..].len() - rest[arrow + 2..].trim_start().len()) + 1;
    if label.is_empty() || src.is_empty() || tgt.is_empty() {
        return Err(syntax(line, first_col, "expected `label: source -> target`"));
    }
    if src.contains(char::is_whitespace) || tgt.contains(char::is_whitespace) {
        return Err(syntax(line, src_col, "vertex labels must be single identifiers"));
    }
    if quiver.vertex(src).is_err() {
        return Err(invalid(line, src_col, PresentationError::UnknownVertex(src.into())));
    }
    if quiver.vertex(tgt).is_err() {
        return Err(invalid(line, tgt_col, PresentationError::UnknownVertex(tgt.into())));
    }
    quiver
        .add_arrow(label.to_string(), src, tgt)
        .map_err(|e| invalid(line, first_col, e))?;
    Ok(())
}

#[derive(Debug, Clone, PartialEq)]
enum Tok<'a> {
    Word(&'a str),
    Number(&'a str),
    Star,
    Slash,
    Plus,
    Minus,
}

fn tokenize(content: &str, line: usize) -> Result<Vec<(usize, Tok<'_>)>, ParseError> {
    let bytes = content.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let b = bytes[i];
        let col = i + 1;
        if b.is_ascii_whitespace() {
            i += 1;
            continue;
        }
        let single = match b {
            b'*' => Some(Tok::Star),
            b'/' => Some(Tok::Slash),
            b'+' => Some(Tok::Plus),
            b'-' => Some(Tok::Minus),
            _ => None,
        };
        if let Some(t) = single {
            out.push((col, t));
            i += 1;
            continue;
        }
        if b.is_ascii_alphanumeric() || b == b'_' {
            let start = i;
            while i < bytes.len() && (bytes[i].is_ascii_alphanumeric() || bytes[i] == b'_') {
                i += 1;
            }
            let w = &content[start..i];
            let tok = if w.bytes().all(|c| c.is_ascii_digit()) {
                Tok::Number(w)
            } else {
                Tok::Word(w)
            };
            out.push((col, tok));
            continue;
        }
        let ch = content[i..].chars().next().unwrap_or('?');
        return Err(syntax(line, col, format!("unexpected character `{ch}`")));
    }
    Ok(out)
}

fn parse_relation(quiver: &Quiver, field: Field, content: &str, line: usize) -> Result<Relation, ParseError> {
    let toks = tokenize(content, line)?;
    let end_col = content.len() + 1;
    let mut pos = 0;
    let mut terms = Vec::new();
    let peek = |pos: usize| toks.get(pos).map(|(c, t)| (*c, t.clone()));
    let first_col = toks.first().map(|t| t.0).unwrap_or(1);

    loop {
        // sign
        let mut negative = false;
        match peek(pos) {
            Some((_, Tok::Plus)) => pos += 1,
            Some((_, Tok::Minus)) => {
                negative = true;
                pos += 1;
            }
            Some(_) if terms.is_empty() => {}
            Some((c, _)) => return Err(syntax(line, c, "expected `+` or `-` between terms")),
            None => break,
        }
        let term_col = peek(pos).map(|t| t.0).unwrap_or(end_col);

        // optional coefficient
        let (mut num, mut den) = (BigInt::from(1), BigInt::from(1));
        if let Some((c, Tok::Number(n))) = peek(pos) {
            num = n.parse().map_err(|_| syntax(line, c, "bad integer"))?;
            pos += 1;
            if let Some((_, Tok::Slash)) = peek(pos) {
                pos += 1;
                match peek(pos) {
                    Some((c, Tok::Number(d))) => {
                        den = d.parse().map_err(|_| syntax(line, c, "bad integer"))?;
                        pos += 1;
                    }
                    other => {
                        let c = other.map(|t| t.0).unwrap_or(end_col);
                        return Err(syntax(line, c, "expected denominator"));
                    }
                }
            }
            match peek(pos) {
                Some((_, Tok::Star)) => pos += 1,
                other => {
                    let c = other.map(|t| t.0).unwrap_or(end_col);
                    return Err(syntax(line, c, "expected `*` after coefficient"));
                }
            }
        }
        if negative {
            num = -num;
        }
        let coeff = field
            .from_ratio(&num, &den)
            .map_err(|e| invalid(line, term_col, e.into()))?;

        // path
        let mut arrows = Vec::new();
        loop {
            match peek(pos) {
                Some((c, Tok::Word(w))) => {
                    let a = quiver.arrow(w).map_err(|e| invalid(line, c, e))?;
                    arrows.push(a);
                    pos += 1;
                }
                other => {
                    let c = other.map(|t| t.0).unwrap_or(end_col);
                    return Err(syntax(line, c, "expected an arrow label"));
                }
            }
            if let Some((_, Tok::Star)) = peek(pos) {
                pos += 1;
            } else {
                break;
            }
        }
        let path = quiver.path(arrows).map_err(|e| invalid(line, term_col, e))?;
        terms.push((coeff, path));
    }

    Relation::new(quiver, terms).map_err(|e| invalid(line, first_col, e))
}
