//! Parser for the bracketed FD text format.
//!
//! The grammar is small: a document is a sequence of `NAME [ body ]` blocks,
//! a body is a sequence of `KEY = value;` entries and nested blocks, values
//! are identifiers, enumerated tags, coordinate pairs `( f , f )`, or
//! `id, part` pairs. `//` starts a line comment. Keywords and block names are
//! case-insensitive; identifiers are case-sensitive.

use super::validate::validate_fd;
use super::*;
use thiserror::Error;

#[derive(Debug, Error, PartialEq)]
pub enum ParseError {
    #[error("syntax error at {line}:{col}: expected {expected}, found {found}")]
    Syntax { line: u32, col: u32, expected: String, found: String },
    #[error("unknown {what} value `{value}` at {line}:{col}")]
    UnknownValue { line: u32, col: u32, what: &'static str, value: String },
    #[error("duplicate {key} entry at {line}:{col}")]
    DuplicateKey { line: u32, col: u32, key: String },
    #[error("duplicate {name} block at {line}:{col}")]
    DuplicateBlock { line: u32, col: u32, name: String },
    #[error("missing {key} entry in {block} block ending at {line}:{col}")]
    MissingKey { line: u32, col: u32, block: &'static str, key: &'static str },
    #[error("invalid description: {}", .0.iter().map(|v| v.to_string()).collect::<Vec<_>>().join("; "))]
    Invalid(Vec<Violation>),
}

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Ident(String),
    Number(f64),
    LBracket,
    RBracket,
    LParen,
    RParen,
    Equals,
    Semi,
    Comma,
    Eof,
}

impl Tok {
    fn describe(&self) -> String {
        match self {
            Tok::Ident(s) => format!("`{s}`"),
            Tok::Number(n) => format!("number `{n:?}`"),
            Tok::LBracket => "`[`".into(),
            Tok::RBracket => "`]`".into(),
            Tok::LParen => "`(`".into(),
            Tok::RParen => "`)`".into(),
            Tok::Equals => "`=`".into(),
            Tok::Semi => "`;`".into(),
            Tok::Comma => "`,`".into(),
            Tok::Eof => "end of input".into(),
        }
    }
}

#[derive(Debug, Clone)]
struct Spanned {
    tok: Tok,
    line: u32,
    col: u32,
}

fn lex(text: &str) -> Result<Vec<Spanned>, ParseError> {
    let mut out = Vec::new();
    let mut chars = text.chars().peekable();
    let mut line: u32 = 1;
    let mut col: u32 = 1;

    macro_rules! bump {
        () => {{
            let c = chars.next();
            if c == Some('\n') {
                line += 1;
                col = 1;
            } else if c.is_some() {
                col += 1;
            }
            c
        }};
    }

    while let Some(&c) = chars.peek() {
        let (tline, tcol) = (line, col);
        match c {
            ' ' | '\t' | '\r' | '\n' => {
                bump!();
            }
            '/' => {
                bump!();
                if chars.peek() == Some(&'/') {
                    while let Some(&n) = chars.peek() {
                        if n == '\n' {
                            break;
                        }
                        bump!();
                    }
                } else {
                    return Err(ParseError::Syntax {
                        line: tline,
                        col: tcol,
                        expected: "`//` comment".into(),
                        found: "`/`".into(),
                    });
                }
            }
            '[' => {
                bump!();
                out.push(Spanned { tok: Tok::LBracket, line: tline, col: tcol });
            }
            ']' => {
                bump!();
                out.push(Spanned { tok: Tok::RBracket, line: tline, col: tcol });
            }
            '(' => {
                bump!();
                out.push(Spanned { tok: Tok::LParen, line: tline, col: tcol });
            }
            ')' => {
                bump!();
                out.push(Spanned { tok: Tok::RParen, line: tline, col: tcol });
            }
            '=' => {
                bump!();
                out.push(Spanned { tok: Tok::Equals, line: tline, col: tcol });
            }
            ';' => {
                bump!();
                out.push(Spanned { tok: Tok::Semi, line: tline, col: tcol });
            }
            ',' => {
                bump!();
                out.push(Spanned { tok: Tok::Comma, line: tline, col: tcol });
            }
            '+' | '-' | '.' | '0'..='9' => {
                let mut buf = String::new();
                buf.push(bump!().unwrap());
                while let Some(&n) = chars.peek() {
                    if n.is_ascii_digit() || n == '.' {
                        buf.push(bump!().unwrap());
                    } else {
                        break;
                    }
                }
                let value: f64 = buf.parse().map_err(|_| ParseError::Syntax {
                    line: tline,
                    col: tcol,
                    expected: "a decimal number".into(),
                    found: format!("`{buf}`"),
                })?;
                out.push(Spanned { tok: Tok::Number(value), line: tline, col: tcol });
            }
            c if c.is_alphabetic() || c == '_' => {
                let mut buf = String::new();
                buf.push(bump!().unwrap());
                while let Some(&n) = chars.peek() {
                    if n.is_alphanumeric() || n == '_' {
                        buf.push(bump!().unwrap());
                    } else {
                        break;
                    }
                }
                out.push(Spanned { tok: Tok::Ident(buf), line: tline, col: tcol });
            }
            other => {
                return Err(ParseError::Syntax {
                    line: tline,
                    col: tcol,
                    expected: "a token".into(),
                    found: format!("`{other}`"),
                });
            }
        }
    }
    out.push(Spanned { tok: Tok::Eof, line, col });
    Ok(out)
}

struct Parser {
    toks: Vec<Spanned>,
    pos: usize,
}

impl Parser {
    fn peek(&self) -> &Spanned {
        &self.toks[self.pos.min(self.toks.len() - 1)]
    }

    fn next(&mut self) -> Spanned {
        let t = self.toks[self.pos.min(self.toks.len() - 1)].clone();
        if self.pos < self.toks.len() - 1 {
            self.pos += 1;
        }
        t
    }

    fn err(&self, expected: impl Into<String>) -> ParseError {
        let t = self.peek();
        ParseError::Syntax {
            line: t.line,
            col: t.col,
            expected: expected.into(),
            found: t.tok.describe(),
        }
    }

    /// Consume an identifier whose upper-cased form equals `kw`.
    fn expect_keyword(&mut self, kw: &str) -> Result<(), ParseError> {
        match &self.peek().tok {
            Tok::Ident(s) if s.eq_ignore_ascii_case(kw) => {
                self.next();
                Ok(())
            }
            _ => Err(self.err(format!("`{kw}`"))),
        }
    }

    /// Peek an identifier as an upper-cased keyword, without consuming.
    fn peek_keyword(&self) -> Option<String> {
        match &self.peek().tok {
            Tok::Ident(s) => Some(s.to_ascii_uppercase()),
            _ => None,
        }
    }

    fn expect(&mut self, tok: Tok, what: &str) -> Result<(), ParseError> {
        if self.peek().tok == tok {
            self.next();
            Ok(())
        } else {
            Err(self.err(what))
        }
    }

    fn ident(&mut self, what: &str) -> Result<(String, u32, u32), ParseError> {
        match self.peek().tok.clone() {
            Tok::Ident(s) => {
                let t = self.next();
                Ok((s, t.line, t.col))
            }
            _ => Err(self.err(what)),
        }
    }

    fn number(&mut self) -> Result<f64, ParseError> {
        match self.peek().tok {
            Tok::Number(n) => {
                self.next();
                Ok(n)
            }
            _ => Err(self.err("a number")),
        }
    }

    /// `( x , y )`
    fn coord(&mut self) -> Result<Point2, ParseError> {
        self.expect(Tok::LParen, "`(`")?;
        let x = self.number()?;
        self.expect(Tok::Comma, "`,`")?;
        let y = self.number()?;
        self.expect(Tok::RParen, "`)`")?;
        Ok(Point2::new(x, y))
    }

    /// `id , part`
    fn id_part(&mut self) -> Result<(String, VehiclePart), ParseError> {
        let (id, _, _) = self.ident("an object id")?;
        self.expect(Tok::Comma, "`,`")?;
        let (part, line, col) = self.ident("a vehicle part")?;
        let part = VehiclePart::from_str(&part.to_ascii_lowercase())
            .ok_or(ParseError::UnknownValue { line, col, what: "vehicle part", value: part })?;
        Ok((id, part))
    }

    fn enum_value<T>(
        &mut self,
        what: &'static str,
        from: impl Fn(&str) -> Option<T>,
    ) -> Result<T, ParseError> {
        let (s, line, col) = self.ident(what)?;
        from(&s.to_ascii_lowercase()).ok_or(ParseError::UnknownValue { line, col, what, value: s })
    }
}

/// One `KEY = ...;` entry inside an object block, or a nested CHAIN block.
enum Entry {
    Kind(String, u32, u32),
    Id(String),
    Coord(Point2),
    Color(LightColor),
    InitDirection(Direction),
    Actor(String, VehiclePart),
    Victim(String, VehiclePart),
    Chain(Vec<EventKind>),
}

/// Parse the body of an object block: entries until `]`.
fn object_entries(p: &mut Parser, block: &'static str) -> Result<Vec<Entry>, ParseError> {
    let mut entries = Vec::new();
    let mut seen: Vec<String> = Vec::new();
    loop {
        if p.peek().tok == Tok::RBracket {
            p.next();
            return Ok(entries);
        }
        let kw = p.peek_keyword().ok_or_else(|| p.err("an entry key or `]`"))?;
        let Spanned { line, col, .. } = *p.peek();
        if seen.contains(&kw) {
            return Err(ParseError::DuplicateKey { line, col, key: kw });
        }
        seen.push(kw.clone());
        p.next();
        match kw.as_str() {
            "CHAIN" => {
                p.expect(Tok::LBracket, "`[`")?;
                let mut events = Vec::new();
                while p.peek().tok != Tok::RBracket {
                    p.expect_keyword("EVENT")?;
                    p.expect(Tok::LBracket, "`[`")?;
                    p.expect_keyword("KIND")?;
                    p.expect(Tok::Equals, "`=`")?;
                    events.push(p.enum_value("event kind", EventKind::from_str)?);
                    p.expect(Tok::Semi, "`;`")?;
                    p.expect(Tok::RBracket, "`]`")?;
                }
                p.next();
                entries.push(Entry::Chain(events));
            }
            "KIND" => {
                p.expect(Tok::Equals, "`=`")?;
                let (v, vline, vcol) = p.ident("a kind value")?;
                p.expect(Tok::Semi, "`;`")?;
                entries.push(Entry::Kind(v, vline, vcol));
            }
            "ID" => {
                p.expect(Tok::Equals, "`=`")?;
                let (v, _, _) = p.ident("an identifier")?;
                p.expect(Tok::Semi, "`;`")?;
                entries.push(Entry::Id(v));
            }
            "COORD" => {
                p.expect(Tok::Equals, "`=`")?;
                let c = p.coord()?;
                p.expect(Tok::Semi, "`;`")?;
                entries.push(Entry::Coord(c));
            }
            "COLOR" => {
                p.expect(Tok::Equals, "`=`")?;
                let c = p.enum_value("light color", LightColor::from_str)?;
                p.expect(Tok::Semi, "`;`")?;
                entries.push(Entry::Color(c));
            }
            "INITDIRECTION" => {
                p.expect(Tok::Equals, "`=`")?;
                let d = p.enum_value("direction", Direction::from_str)?;
                p.expect(Tok::Semi, "`;`")?;
                entries.push(Entry::InitDirection(d));
            }
            "ACTOR" => {
                p.expect(Tok::Equals, "`=`")?;
                let (id, part) = p.id_part()?;
                p.expect(Tok::Semi, "`;`")?;
                entries.push(Entry::Actor(id, part));
            }
            "VICTIM" => {
                p.expect(Tok::Equals, "`=`")?;
                let (id, part) = p.id_part()?;
                p.expect(Tok::Semi, "`;`")?;
                entries.push(Entry::Victim(id, part));
            }
            other => {
                return Err(ParseError::Syntax {
                    line,
                    col,
                    expected: format!("a {block} entry"),
                    found: format!("`{other}`"),
                });
            }
        }
    }
}

fn find_id(entries: &[Entry]) -> Option<String> {
    entries.iter().find_map(|e| match e {
        Entry::Id(id) => Some(id.clone()),
        _ => None,
    })
}

fn find_coord(entries: &[Entry]) -> Option<Point2> {
    entries.iter().find_map(|e| match e {
        Entry::Coord(c) => Some(*c),
        _ => None,
    })
}

fn require_id(entries: &[Entry], block: &'static str, p: &Parser) -> Result<String, ParseError> {
    find_id(entries).ok_or({
        let t = p.peek();
        ParseError::MissingKey { line: t.line, col: t.col, block, key: "ID" }
    })
}

fn parse_static_body(p: &mut Parser, statics: &mut Vec<StaticObject>) -> Result<(), ParseError> {
    loop {
        if p.peek().tok == Tok::RBracket {
            p.next();
            return Ok(());
        }
        let kw = p.peek_keyword().ok_or_else(|| p.err("a static object block or `]`"))?;
        let Spanned { line, col, .. } = *p.peek();
        p.next();
        p.expect(Tok::LBracket, "`[`")?;
        match kw.as_str() {
            "ROAD" => {
                if statics.iter().any(|s| matches!(s, StaticObject::Road { .. })) {
                    return Err(ParseError::DuplicateBlock { line, col, name: "ROAD".into() });
                }
                let entries = object_entries(p, "ROAD")?;
                let kind = entries
                    .iter()
                    .find_map(|e| match e {
                        Entry::Kind(v, l, c) => Some((v.clone(), *l, *c)),
                        _ => None,
                    })
                    .ok_or(ParseError::MissingKey { line, col, block: "ROAD", key: "KIND" })?;
                let road = RoadKind::from_str(&kind.0.to_ascii_lowercase()).ok_or(
                    ParseError::UnknownValue {
                        line: kind.1,
                        col: kind.2,
                        what: "road kind",
                        value: kind.0,
                    },
                )?;
                statics.push(StaticObject::Road { kind: road });
            }
            "TREE" => {
                let entries = object_entries(p, "TREE")?;
                let id = require_id(&entries, "TREE", p)?;
                statics.push(StaticObject::Tree { id, coord: find_coord(&entries) });
            }
            "LIGHT" => {
                let entries = object_entries(p, "LIGHT")?;
                let id = require_id(&entries, "LIGHT", p)?;
                let color = entries
                    .iter()
                    .find_map(|e| match e {
                        Entry::Color(c) => Some(*c),
                        _ => None,
                    })
                    .unwrap_or(LightColor::Inactive);
                statics.push(StaticObject::Light { id, coord: find_coord(&entries), color });
            }
            "STOPSIGN" => {
                let entries = object_entries(p, "STOPSIGN")?;
                statics.push(StaticObject::StopSign { coord: find_coord(&entries) });
            }
            "CROSSING" => {
                let entries = object_entries(p, "CROSSING")?;
                statics.push(StaticObject::Crossing { coord: find_coord(&entries) });
            }
            other => {
                return Err(ParseError::Syntax {
                    line,
                    col,
                    expected: "ROAD, TREE, LIGHT, STOPSIGN, or CROSSING".into(),
                    found: format!("`{other}`"),
                });
            }
        }
    }
}

fn parse_dynamic_body(p: &mut Parser, dynamics: &mut Vec<Vehicle>) -> Result<(), ParseError> {
    loop {
        if p.peek().tok == Tok::RBracket {
            p.next();
            return Ok(());
        }
        p.expect_keyword("VEHICLE")?;
        p.expect(Tok::LBracket, "`[`")?;
        let entries = object_entries(p, "VEHICLE")?;
        let id = require_id(&entries, "VEHICLE", p)?;
        let mut vehicle = Vehicle::new(id);
        for e in entries {
            match e {
                Entry::Kind(v, l, c) => {
                    vehicle.kind = VehicleKind::from_str(&v.to_ascii_lowercase()).ok_or(
                        ParseError::UnknownValue {
                            line: l,
                            col: c,
                            what: "vehicle kind",
                            value: v,
                        },
                    )?;
                }
                Entry::InitDirection(d) => vehicle.init_direction = Some(d),
                Entry::Chain(events) => vehicle.chain = events,
                _ => {}
            }
        }
        dynamics.push(vehicle);
    }
}

fn parse_accident_body(p: &mut Parser, collisions: &mut Vec<Collision>) -> Result<(), ParseError> {
    loop {
        if p.peek().tok == Tok::RBracket {
            p.next();
            return Ok(());
        }
        let Spanned { line, col, .. } = *p.peek();
        p.expect_keyword("COLLISION")?;
        p.expect(Tok::LBracket, "`[`")?;
        let entries = object_entries(p, "COLLISION")?;
        let mut actor = None;
        let mut victim = None;
        let mut coord = None;
        for e in entries {
            match e {
                Entry::Actor(id, part) => actor = Some((id, part)),
                Entry::Victim(id, part) => victim = Some((id, part)),
                Entry::Coord(c) => coord = Some(c),
                _ => {}
            }
        }
        let (actor, actor_part) =
            actor.ok_or(ParseError::MissingKey { line, col, block: "COLLISION", key: "ACTOR" })?;
        let (victim, victim_part) = victim.ok_or(ParseError::MissingKey {
            line,
            col,
            block: "COLLISION",
            key: "VICTIM",
        })?;
        collisions.push(Collision { actor, actor_part, victim, victim_part, coord });
    }
}

/// Parse a complete FD document.
///
/// Accepts the three top-level blocks in any order, each at most once.
/// The returned description always satisfies the structural invariants:
/// unique ids, resolvable references, dynamic actors, exactly one road.
pub fn parse_fd(text: &str) -> Result<FormalDescription, ParseError> {
    let fd = parse_fd_unchecked(text)?;
    let violations = validate_fd(&fd);
    if violations.is_empty() {
        Ok(fd)
    } else {
        Err(ParseError::Invalid(violations))
    }
}

/// Parse the document structure alone, skipping the reference/uniqueness
/// gate. `validate_fd` turns the skipped checks into data.
pub fn parse_fd_unchecked(text: &str) -> Result<FormalDescription, ParseError> {
    let toks = lex(text)?;
    let mut p = Parser { toks, pos: 0 };
    let mut fd = FormalDescription::default();
    let mut seen: Vec<String> = Vec::new();

    loop {
        if p.peek().tok == Tok::Eof {
            break;
        }
        let kw = p.peek_keyword().ok_or_else(|| p.err("STATIC, DYNAMIC, or ACCIDENT"))?;
        let Spanned { line, col, .. } = *p.peek();
        if seen.contains(&kw) {
            return Err(ParseError::DuplicateBlock { line, col, name: kw });
        }
        match kw.as_str() {
            "STATIC" => {
                p.next();
                p.expect(Tok::LBracket, "`[`")?;
                parse_static_body(&mut p, &mut fd.statics)?;
            }
            "DYNAMIC" => {
                p.next();
                p.expect(Tok::LBracket, "`[`")?;
                parse_dynamic_body(&mut p, &mut fd.dynamics)?;
            }
            "ACCIDENT" => {
                p.next();
                p.expect(Tok::LBracket, "`[`")?;
                parse_accident_body(&mut p, &mut fd.collisions)?;
            }
            _ => return Err(p.err("STATIC, DYNAMIC, or ACCIDENT")),
        }
        seen.push(kw);
    }

    Ok(fd)
}
