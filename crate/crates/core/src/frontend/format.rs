//! Line-oriented textual net format.
//!
//! ```text
//! # comment
//! place p1 tokens=1
//! place p2
//! trans a : p1 -> p2
//! trans c : p2 ->
//! ```
//!
//! Identifiers match `[A-Za-z0-9_]+`. Places must be declared before a
//! transition mentions them.

use std::fmt;

use thiserror::Error;

use crate::net::{Marking, Net, NetBuilder, NetError, PlaceId, Tokens};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub struct ParseError {
    pub line: usize,
    pub column: usize,
    pub message: String,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}: {}", self.line, self.column, self.message)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok<'a> {
    Ident(&'a str),
    Colon,
    Arrow,
    Eq,
}

impl fmt::Display for Tok<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Tok::Ident(s) => write!(f, "{s:?}"),
            Tok::Colon => f.write_str("':'"),
            Tok::Arrow => f.write_str("'->'"),
            Tok::Eq => f.write_str("'='"),
        }
    }
}

/// Tokens of one line with 1-based columns (in characters).
fn lex(line: &str, line_no: usize) -> Result<Vec<(usize, Tok<'_>)>, ParseError> {
    let mut toks = Vec::new();
    let mut chars = line.char_indices().enumerate().peekable();
    while let Some((col0, (start, c))) = chars.next() {
        let column = col0 + 1;
        match c {
            '#' => break,
            c if c.is_whitespace() => {}
            ':' => toks.push((column, Tok::Colon)),
            '=' => toks.push((column, Tok::Eq)),
            '-' => match chars.peek() {
                Some((_, (_, '>'))) => {
                    chars.next();
                    toks.push((column, Tok::Arrow));
                }
                _ => {
                    return Err(ParseError {
                        line: line_no,
                        column,
                        message: "expected '->'".into(),
                    })
                }
            },
            c if c.is_ascii_alphanumeric() || c == '_' => {
                let mut end = start + c.len_utf8();
                while let Some(&(_, (i, d))) = chars.peek() {
                    if d.is_ascii_alphanumeric() || d == '_' {
                        end = i + d.len_utf8();
                        chars.next();
                    } else {
                        break;
                    }
                }
                toks.push((column, Tok::Ident(&line[start..end])));
            }
            other => {
                return Err(ParseError {
                    line: line_no,
                    column,
                    message: format!("unexpected character {other:?}"),
                })
            }
        }
    }
    Ok(toks)
}

struct LineParser<'a> {
    toks: Vec<(usize, Tok<'a>)>,
    pos: usize,
    line: usize,
    end_column: usize,
}

impl<'a> LineParser<'a> {
    fn error(&self, column: usize, message: impl Into<String>) -> ParseError {
        ParseError {
            line: self.line,
            column,
            message: message.into(),
        }
    }

    fn column(&self) -> usize {
        self.toks
            .get(self.pos)
            .map(|(c, _)| *c)
            .unwrap_or(self.end_column)
    }

    fn peek(&self) -> Option<&Tok<'a>> {
        self.toks.get(self.pos).map(|(_, t)| t)
    }

    fn next(&mut self) -> Option<(usize, Tok<'a>)> {
        let tok = self.toks.get(self.pos).cloned();
        self.pos += 1;
        tok
    }

    fn ident(&mut self, what: &str) -> Result<(usize, &'a str), ParseError> {
        match self.next() {
            Some((c, Tok::Ident(s))) => Ok((c, s)),
            Some((c, t)) => Err(self.error(c, format!("expected {what}, found {t}"))),
            None => Err(self.error(self.end_column, format!("expected {what}"))),
        }
    }

    fn expect(&mut self, want: Tok<'static>) -> Result<(), ParseError> {
        match self.next() {
            Some((_, t)) if t == want => Ok(()),
            Some((c, t)) => Err(self.error(c, format!("expected {want}, found {t}"))),
            None => Err(self.error(self.end_column, format!("expected {want}"))),
        }
    }

    fn finish(&self) -> Result<(), ParseError> {
        match self.toks.get(self.pos) {
            None => Ok(()),
            Some((c, t)) => Err(self.error(*c, format!("unexpected {t}"))),
        }
    }
}

/// Parses raw bytes, rejecting invalid UTF-8 with a positioned error.
pub fn parse_bytes(bytes: &[u8]) -> Result<(Net, Marking), ParseError> {
    match std::str::from_utf8(bytes) {
        Ok(text) => parse(text),
        Err(e) => {
            let valid = &bytes[..e.valid_up_to()];
            let line = valid.iter().filter(|&&b| b == b'\n').count() + 1;
            let line_start = valid.iter().rposition(|&b| b == b'\n').map_or(0, |i| i + 1);
            // valid prefix, so this cannot fail
            let column =
                std::str::from_utf8(&valid[line_start..]).map_or(1, |s| s.chars().count() + 1);
            Err(ParseError {
                line,
                column,
                message: "invalid UTF-8".into(),
            })
        }
    }
}

pub fn parse(text: &str) -> Result<(Net, Marking), ParseError> {
    let mut builder = NetBuilder::new();
    let mut tokens: Vec<Tokens> = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let toks = lex(raw, line)?;
        if toks.is_empty() {
            continue;
        }
        let mut lp = LineParser {
            toks,
            pos: 0,
            line,
            end_column: raw.chars().count() + 1,
        };
        let (kw_col, keyword) = lp.ident("'place' or 'trans'")?;
        match keyword {
            "place" => {
                let (col, name) = lp.ident("place identifier")?;
                let mut count: Tokens = 0;
                if lp.peek().is_some() {
                    let (c, key) = lp.ident("'tokens'")?;
                    if key != "tokens" {
                        return Err(lp.error(c, format!("expected 'tokens', found {key:?}")));
                    }
                    lp.expect(Tok::Eq)?;
                    let (c, digits) = lp.ident("token count")?;
                    count = parse_count(digits)
                        .ok_or_else(|| lp.error(c, format!("invalid token count {digits:?}")))?;
                }
                lp.finish()?;
                builder
                    .add_place(name)
                    .map_err(|e| lp.error(col, net_error_message(&e)))?;
                tokens.push(count);
            }
            "trans" => {
                let (col, name) = lp.ident("transition identifier")?;
                lp.expect(Tok::Colon)?;
                let mut inputs: Vec<PlaceId> = Vec::new();
                let mut outputs: Vec<PlaceId> = Vec::new();
                let mut seen_arrow = false;
                while let Some((c, tok)) = lp.next() {
                    match tok {
                        Tok::Arrow if !seen_arrow => seen_arrow = true,
                        Tok::Ident(place) => {
                            let Some(p) = builder.place(place) else {
                                let msg = if builder.has_transition(place) || place == name {
                                    format!("{place:?} is a transition, not a place")
                                } else {
                                    format!("unknown place {place:?}")
                                };
                                return Err(lp.error(c, msg));
                            };
                            let side = if seen_arrow {
                                &mut outputs
                            } else {
                                &mut inputs
                            };
                            if side.contains(&p) {
                                let msg = if seen_arrow {
                                    format!("duplicate arc {name} -> {place}")
                                } else {
                                    format!("duplicate arc {place} -> {name}")
                                };
                                return Err(lp.error(c, msg));
                            }
                            side.push(p);
                        }
                        other => return Err(lp.error(c, format!("unexpected {other}"))),
                    }
                }
                if !seen_arrow {
                    return Err(lp.error(lp.column(), "expected '->'"));
                }
                builder
                    .add_transition(name, &inputs, &outputs)
                    .map_err(|e| lp.error(col, net_error_message(&e)))?;
            }
            other => {
                return Err(lp.error(
                    kw_col,
                    format!("expected 'place' or 'trans', found {other:?}"),
                ))
            }
        }
    }
    let net = builder.build();
    let m0 = Marking::new(&net, tokens).expect("one count per declared place");
    Ok((net, m0))
}

fn parse_count(digits: &str) -> Option<Tokens> {
    if !digits.bytes().all(|b| b.is_ascii_digit()) {
        return None;
    }
    digits.parse().ok()
}

fn net_error_message(e: &NetError) -> String {
    match e {
        NetError::IdCollision(id) => format!("id collision: {id:?} is already declared"),
        other => other.to_string(),
    }
}

/// Renders the canonical text: places first, then transitions, both in
/// declaration order; `tokens=` only when nonzero.
pub fn print(net: &Net, m0: &Marking) -> String {
    let mut out = String::new();
    for p in net.places() {
        out.push_str("place ");
        out.push_str(net.place_name(p));
        if m0[p] > 0 {
            out.push_str(&format!(" tokens={}", m0[p]));
        }
        out.push('\n');
    }
    for t in net.transitions() {
        out.push_str("trans ");
        out.push_str(net.transition_name(t));
        out.push_str(" :");
        for p in net.preset(t) {
            out.push(' ');
            out.push_str(net.place_name(p));
        }
        out.push_str(" ->");
        for p in net.postset(t) {
            out.push(' ');
            out.push_str(net.place_name(p));
        }
        out.push('\n');
    }
    out
}
