//! Ring expressions: `Zmod(6)`, `product(GF(2), GF(3))`,
//! `polyquot(GF(2), [0,0,1])`, `sdprod_alg(GF(3), GF(3))`, ...
//!
//! ```text
//! expr := ctor "(" args ")"
//! args := arg ("," arg)*
//! arg  := INT | "[" INT ("," INT)* "]" | STRING | expr
//! ```
//!
//! Constructor names are case-insensitive. Coefficient lists are in
//! ascending degree, the last entry being the leading coefficient.

use std::fmt;
use std::path::{Path, PathBuf};

use thiserror::Error;

use crate::construct::{make_function_ring, make_gf, make_poly_quotient, make_product, make_zmod, prime_power};
use crate::error::FinringError;
use crate::hom::RingHom;
use crate::ring::{FiniteRing, RingDoc};
use crate::semidirect::{algebra_actions, build_sdprod, prime_field_embedding, SemidirectDoc};

/// Byte range plus the 1-based line and column of its start.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub struct Span {
    pub start: usize,
    pub end: usize,
    pub line: usize,
    pub column: usize,
}

impl fmt::Display for Span {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", self.line, self.column)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ExprKind {
    Zmod(usize),
    Gf { p: usize, k: usize },
    Product(Box<Expr>, Box<Expr>),
    PolyQuot(Box<Expr>, Vec<usize>),
    FnRing(usize, Box<Expr>),
    SdProdAlg { algebra: Box<Expr>, field: Box<Expr>, embedding: Option<String> },
    SdProdFile(String),
    TableFile(String),
}

#[derive(Clone, Debug, Eq)]
pub struct Expr {
    pub kind: ExprKind,
    pub span: Span,
}

/// Structural equality; spans are ignored.
impl PartialEq for Expr {
    fn eq(&self, other: &Self) -> bool {
        self.kind == other.kind
    }
}

impl Expr {
    pub fn new(kind: ExprKind) -> Expr {
        Expr { kind, span: Span::default() }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ParseErrorKind {
    Lexical,
    Syntax,
    Overflow,
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
#[error("{}", self.describe())]
pub struct ParseError {
    pub kind: ParseErrorKind,
    pub span: Span,
    pub expected: Vec<String>,
    pub found: String,
    pub message: Option<String>,
}

impl ParseError {
    fn describe(&self) -> String {
        let what = match self.kind {
            ParseErrorKind::Lexical => "lexical error",
            ParseErrorKind::Syntax => "syntax error",
            ParseErrorKind::Overflow => "numeric overflow",
        };
        let mut s = format!("{what} at {} ({})", self.span, self.found);
        if let Some(m) = &self.message {
            s.push_str(": ");
            s.push_str(m);
        }
        if !self.expected.is_empty() {
            s.push_str(", expected ");
            s.push_str(&self.expected.join(" or "));
        }
        s
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum ExprError {
    #[error("{0}")]
    Parse(#[from] ParseError),
    #[error("evaluation error at {span}: {error}")]
    Eval { span: Span, error: Box<FinringError> },
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    Ident(String),
    Int(usize),
    Str(String),
    LParen,
    RParen,
    LBracket,
    RBracket,
    Comma,
    Eof,
}

impl Tok {
    fn describe(&self) -> String {
        match self {
            Tok::Ident(s) => format!("identifier {s:?}"),
            Tok::Int(n) => format!("integer {n}"),
            Tok::Str(s) => format!("string {s:?}"),
            Tok::LParen => "\"(\"".into(),
            Tok::RParen => "\")\"".into(),
            Tok::LBracket => "\"[\"".into(),
            Tok::RBracket => "\"]\"".into(),
            Tok::Comma => "\",\"".into(),
            Tok::Eof => "end-of-input".into(),
        }
    }
}

struct Lexer<'a> {
    src: &'a str,
    pos: usize,
    line: usize,
    column: usize,
}

impl<'a> Lexer<'a> {
    fn peek_char(&self) -> Option<char> {
        self.src[self.pos..].chars().next()
    }

    fn bump(&mut self) -> Option<char> {
        let c = self.peek_char()?;
        self.pos += c.len_utf8();
        if c == '\n' {
            self.line += 1;
            self.column = 1;
        } else {
            self.column += 1;
        }
        Some(c)
    }

    fn here(&self) -> Span {
        Span { start: self.pos, end: self.pos, line: self.line, column: self.column }
    }

    fn lex_error(&self, start: Span, found: String, message: &str) -> ParseError {
        ParseError {
            kind: ParseErrorKind::Lexical,
            span: Span { end: self.pos, ..start },
            expected: Vec::new(),
            found,
            message: Some(message.into()),
        }
    }

    fn next(&mut self) -> Result<(Tok, Span), ParseError> {
        while self.peek_char().is_some_and(char::is_whitespace) {
            self.bump();
        }
        let start = self.here();
        let Some(c) = self.bump() else { return Ok((Tok::Eof, start)) };
        let tok = match c {
            '(' => Tok::LParen,
            ')' => Tok::RParen,
            '[' => Tok::LBracket,
            ']' => Tok::RBracket,
            ',' => Tok::Comma,
            '"' => {
                let mut s = String::new();
                loop {
                    match self.bump() {
                        None => return Err(self.lex_error(start, "end-of-input".into(), "unterminated string")),
                        Some('"') => break,
                        Some('\\') => match self.bump() {
                            Some(e @ ('"' | '\\')) => s.push(e),
                            Some(e) => return Err(self.lex_error(start, format!("\\{e}"), "unknown escape")),
                            None => return Err(self.lex_error(start, "end-of-input".into(), "unterminated string")),
                        },
                        Some(ch) => s.push(ch),
                    }
                }
                Tok::Str(s)
            }
            d if d.is_ascii_digit() => {
                while self.peek_char().is_some_and(|c| c.is_ascii_digit()) {
                    self.bump();
                }
                let text = &self.src[start.start..self.pos];
                match text.parse::<usize>() {
                    Ok(n) => Tok::Int(n),
                    Err(_) => {
                        return Err(ParseError {
                            kind: ParseErrorKind::Overflow,
                            span: Span { end: self.pos, ..start },
                            expected: Vec::new(),
                            found: text.into(),
                            message: Some(format!("literal exceeds {}", usize::MAX)),
                        })
                    }
                }
            }
            a if a.is_ascii_alphabetic() || a == '_' => {
                while self.peek_char().is_some_and(|c| c.is_ascii_alphanumeric() || c == '_') {
                    self.bump();
                }
                Tok::Ident(self.src[start.start..self.pos].to_string())
            }
            other => return Err(self.lex_error(start, format!("{other:?}"), "unexpected character")),
        };
        Ok((tok, Span { end: self.pos, ..start }))
    }
}

struct Parser<'a> {
    lexer: Lexer<'a>,
    tok: Tok,
    span: Span,
}

const CTORS: &[&str] = &["Zmod", "GF", "product", "polyquot", "fnring", "sdprod_alg", "sdprod_file", "table_file"];

impl<'a> Parser<'a> {
    fn advance(&mut self) -> Result<(), ParseError> {
        let (tok, span) = self.lexer.next()?;
        self.tok = tok;
        self.span = span;
        Ok(())
    }

    fn unexpected(&self, expected: &[&str]) -> ParseError {
        ParseError {
            kind: ParseErrorKind::Syntax,
            span: self.span,
            expected: expected.iter().map(|s| s.to_string()).collect(),
            found: self.tok.describe(),
            message: None,
        }
    }

    fn expect(&mut self, want: Tok, name: &str) -> Result<(), ParseError> {
        if self.tok != want {
            return Err(self.unexpected(&[name]));
        }
        self.advance()
    }

    fn int(&mut self) -> Result<(usize, Span), ParseError> {
        match self.tok {
            Tok::Int(n) => {
                let sp = self.span;
                self.advance()?;
                Ok((n, sp))
            }
            _ => Err(self.unexpected(&["integer"])),
        }
    }

    fn string(&mut self) -> Result<String, ParseError> {
        match &self.tok {
            Tok::Str(s) => {
                let s = s.clone();
                self.advance()?;
                Ok(s)
            }
            _ => Err(self.unexpected(&["string"])),
        }
    }

    fn coeffs(&mut self) -> Result<Vec<usize>, ParseError> {
        self.expect(Tok::LBracket, "\"[\"")?;
        let mut out = vec![self.int()?.0];
        loop {
            match self.tok {
                Tok::Comma => {
                    self.advance()?;
                    out.push(self.int()?.0);
                }
                Tok::RBracket => {
                    self.advance()?;
                    return Ok(out);
                }
                _ => return Err(self.unexpected(&["\",\"", "\"]\""])),
            }
        }
    }

    fn comma(&mut self) -> Result<(), ParseError> {
        self.expect(Tok::Comma, "\",\"")
    }

    fn expr(&mut self) -> Result<Expr, ParseError> {
        let start = self.span;
        let name = match &self.tok {
            Tok::Ident(s) => s.clone(),
            _ => return Err(self.unexpected(CTORS)),
        };
        let Some(ctor) = CTORS.iter().find(|c| c.eq_ignore_ascii_case(&name)) else {
            return Err(ParseError { message: Some(format!("unknown constructor {name:?}")), ..self.unexpected(CTORS) });
        };
        self.advance()?;
        self.expect(Tok::LParen, "\"(\"")?;
        let kind = match *ctor {
            "Zmod" => ExprKind::Zmod(self.int()?.0),
            "GF" => {
                let (q, _) = self.int()?;
                if self.tok == Tok::Comma {
                    self.advance()?;
                    ExprKind::Gf { p: q, k: self.int()?.0 }
                } else {
                    // A non-prime-power order is kept as written and rejected at evaluation.
                    let (p, k) = prime_power(q).unwrap_or((q, 1));
                    ExprKind::Gf { p, k }
                }
            }
            "product" => {
                let a = self.expr()?;
                self.comma()?;
                ExprKind::Product(Box::new(a), Box::new(self.expr()?))
            }
            "polyquot" => {
                let f = self.expr()?;
                self.comma()?;
                ExprKind::PolyQuot(Box::new(f), self.coeffs()?)
            }
            "fnring" => {
                let (n, _) = self.int()?;
                self.comma()?;
                ExprKind::FnRing(n, Box::new(self.expr()?))
            }
            "sdprod_alg" => {
                let algebra = Box::new(self.expr()?);
                self.comma()?;
                let field = Box::new(self.expr()?);
                let embedding = if self.tok == Tok::Comma {
                    self.advance()?;
                    Some(self.string()?)
                } else {
                    None
                };
                ExprKind::SdProdAlg { algebra, field, embedding }
            }
            "sdprod_file" => ExprKind::SdProdFile(self.string()?),
            "table_file" => ExprKind::TableFile(self.string()?),
            _ => unreachable!("constructor list and match arms agree"),
        };
        if self.tok != Tok::RParen {
            return Err(self.unexpected(&["\")\""]));
        }
        let end = self.span.end;
        self.advance()?;
        Ok(Expr { kind, span: Span { end, ..start } })
    }
}

pub fn parse(input: &str) -> Result<Expr, ParseError> {
    let mut p = Parser {
        lexer: Lexer { src: input, pos: 0, line: 1, column: 1 },
        tok: Tok::Eof,
        span: Span::default(),
    };
    p.advance()?;
    let e = p.expr()?;
    if p.tok != Tok::Eof {
        return Err(p.unexpected(&["end-of-input"]));
    }
    Ok(e)
}

fn quote(s: &str) -> String {
    let mut out = String::from("\"");
    for c in s.chars() {
        if c == '"' || c == '\\' {
            out.push('\\');
        }
        out.push(c);
    }
    out.push('"');
    out
}

/// Canonical text of an expression; `parse(&render(e)) == Ok(e)`.
pub fn render(e: &Expr) -> String {
    match &e.kind {
        ExprKind::Zmod(n) => format!("Zmod({n})"),
        ExprKind::Gf { p, k: 1 } => format!("GF({p})"),
        ExprKind::Gf { p, k } => format!("GF({p},{k})"),
        ExprKind::Product(a, b) => format!("product({}, {})", render(a), render(b)),
        ExprKind::PolyQuot(f, c) => {
            let cs: Vec<String> = c.iter().map(usize::to_string).collect();
            format!("polyquot({}, [{}])", render(f), cs.join(","))
        }
        ExprKind::FnRing(n, f) => format!("fnring({n}, {})", render(f)),
        ExprKind::SdProdAlg { algebra, field, embedding: None } => {
            format!("sdprod_alg({}, {})", render(algebra), render(field))
        }
        ExprKind::SdProdAlg { algebra, field, embedding: Some(path) } => {
            format!("sdprod_alg({}, {}, {})", render(algebra), render(field), quote(path))
        }
        ExprKind::SdProdFile(p) => format!("sdprod_file({})", quote(p)),
        ExprKind::TableFile(p) => format!("table_file({})", quote(p)),
    }
}

impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&render(self))
    }
}

/// Evaluates with relative paths resolved against the working directory.
pub fn eval(e: &Expr) -> Result<FiniteRing, ExprError> {
    eval_in(e, Path::new("."))
}

/// Evaluates with relative paths resolved against `base`.
pub fn eval_in(e: &Expr, base: &Path) -> Result<FiniteRing, ExprError> {
    let at = |error: FinringError| ExprError::Eval { span: e.span, error: Box::new(error) };
    let read = |p: &str| -> Result<String, ExprError> {
        let path: PathBuf = base.join(p);
        std::fs::read_to_string(&path)
            .map_err(|err| at(FinringError::Io { path: path.display().to_string(), message: err.to_string() }))
    };
    let ring = match &e.kind {
        ExprKind::Zmod(n) => make_zmod(*n).map_err(at)?,
        ExprKind::Gf { p, k } => make_gf(*p, *k).map_err(at)?,
        ExprKind::Product(a, b) => make_product(&eval_in(a, base)?, &eval_in(b, base)?).map_err(at)?,
        ExprKind::PolyQuot(f, c) => make_poly_quotient(&eval_in(f, base)?, c).map_err(at)?,
        ExprKind::FnRing(n, f) => make_function_ring(*n, &eval_in(f, base)?).map_err(at)?,
        ExprKind::SdProdAlg { algebra, field, embedding } => {
            let a = eval_in(algebra, base)?;
            let kappa = eval_in(field, base)?;
            let embed = match embedding {
                Some(p) => {
                    let text = read(p)?;
                    let map: Vec<usize> = serde_json::from_str(&text)
                        .map_err(|err| at(FinringError::Document(format!("{p}: {err}"))))?;
                    if map.len() != kappa.order() || map.iter().any(|&v| v >= a.order()) {
                        return Err(at(FinringError::Document(format!(
                            "{p}: embedding must list {} indices below {}",
                            kappa.order(),
                            a.order()
                        ))));
                    }
                    RingHom::new(kappa.clone(), a.clone(), map, true)
                }
                None if a.same_tables(&kappa) => RingHom::identity(&a),
                None => prime_field_embedding(&a, &kappa).map_err(|err| ExprError::Eval { span: field.span, error: Box::new(err) })?,
            };
            build_sdprod(&algebra_actions(&a, &kappa, &embed).map_err(at)?).map_err(at)?
        }
        ExprKind::SdProdFile(p) => {
            let doc = SemidirectDoc::from_json(&read(p)?).map_err(at)?;
            build_sdprod(&doc.to_spec().map_err(at)?).map_err(at)?
        }
        ExprKind::TableFile(p) => {
            let doc = RingDoc::from_json(&read(p)?).map_err(at)?;
            FiniteRing::from_doc(&doc, p.clone()).map_err(at)?
        }
    };
    Ok(ring)
}

/// `parse` then `eval`.
pub fn eval_str(input: &str) -> Result<FiniteRing, ExprError> {
    eval(&parse(input)?)
}
