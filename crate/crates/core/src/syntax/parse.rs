use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use thiserror::Error;

use crate::error::ProgramError;
use crate::htc::Var;
use crate::linear::{complement, Bounds, Comparator, LinearAtom};
use crate::program::{Rule, TAtom, TProgram};
use crate::translate::RESERVED_PREFIX;

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum ParseErrorKind {
    #[error("{0}")]
    Syntax(String),
    #[error("unknown directive `#{0}`")]
    UnknownDirective(String),
    #[error("invalid bounds {lo}..{hi}: lower bound exceeds upper bound")]
    BoundInversion { lo: i64, hi: i64 },
    #[error("duplicate #bounds directive")]
    DuplicateBounds,
    #[error(transparent)]
    Program(ProgramError),
}

/// A syntax or semantic error at a 1-based line and column.
#[derive(Clone, Debug, PartialEq, Eq, Error)]
#[error("{line}:{column}: {kind}")]
pub struct ParseError {
    pub line: usize,
    pub column: usize,
    pub kind: ParseErrorKind,
}

/// Directives as written in the source.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Directives {
    pub bounds: Option<Bounds>,
    pub externals: Vec<LinearAtom>,
    pub founded: Vec<LinearAtom>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SourceProgram {
    pub text: String,
    pub program: TProgram,
    pub directives: Directives,
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    Ident(String),
    Int(i64),
    Not,
    Sum,
    LBrace,
    RBrace,
    Semi,
    Star,
    DotDot,
    Dot,
    If,
    Comma,
    Cmp(Comparator),
    Directive(String),
    Eof,
}

impl fmt::Display for Tok {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Tok::Ident(s) => write!(f, "`{s}`"),
            Tok::Int(i) => write!(f, "`{i}`"),
            Tok::Not => f.write_str("`not`"),
            Tok::Sum => f.write_str("`&sum`"),
            Tok::LBrace => f.write_str("`{`"),
            Tok::RBrace => f.write_str("`}`"),
            Tok::Semi => f.write_str("`;`"),
            Tok::Star => f.write_str("`*`"),
            Tok::DotDot => f.write_str("`..`"),
            Tok::Dot => f.write_str("`.`"),
            Tok::If => f.write_str("`:-`"),
            Tok::Comma => f.write_str("`,`"),
            Tok::Cmp(c) => write!(f, "`{c}`"),
            Tok::Directive(d) => write!(f, "`#{d}`"),
            Tok::Eof => f.write_str("end of input"),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
struct Pos {
    line: usize,
    column: usize,
}

impl Pos {
    fn error(self, kind: ParseErrorKind) -> ParseError {
        ParseError {
            line: self.line,
            column: self.column,
            kind,
        }
    }

    fn syntax(self, msg: impl Into<String>) -> ParseError {
        self.error(ParseErrorKind::Syntax(msg.into()))
    }
}

struct Token {
    tok: Tok,
    pos: Pos,
}

fn is_ident_start(c: char) -> bool {
    c.is_ascii_alphabetic() || c == '_'
}

fn is_ident_char(c: char) -> bool {
    c.is_ascii_alphanumeric() || c == '_'
}

fn lex(text: &str) -> Result<Vec<Token>, ParseError> {
    let chars: Vec<char> = text.chars().collect();
    let mut out = Vec::new();
    let (mut i, mut line, mut column) = (0, 1, 1);
    let word = |start: usize| -> usize {
        let mut j = start;
        while j < chars.len() && is_ident_char(chars[j]) {
            j += 1;
        }
        j
    };
    while i < chars.len() {
        let c = chars[i];
        let pos = Pos { line, column };
        let next = chars.get(i + 1).copied();
        let (tok, len) = match c {
            '\n' => {
                i += 1;
                line += 1;
                column = 1;
                continue;
            }
            c if c.is_whitespace() => {
                i += 1;
                column += 1;
                continue;
            }
            '%' => {
                while i < chars.len() && chars[i] != '\n' {
                    i += 1;
                }
                continue;
            }
            '{' => (Tok::LBrace, 1),
            '}' => (Tok::RBrace, 1),
            ';' => (Tok::Semi, 1),
            '*' => (Tok::Star, 1),
            ',' => (Tok::Comma, 1),
            '.' if next == Some('.') => (Tok::DotDot, 2),
            '.' => (Tok::Dot, 1),
            ':' if next == Some('-') => (Tok::If, 2),
            '<' if next == Some('=') => (Tok::Cmp(Comparator::Le), 2),
            '<' => (Tok::Cmp(Comparator::Lt), 1),
            '>' if next == Some('=') => (Tok::Cmp(Comparator::Ge), 2),
            '>' => (Tok::Cmp(Comparator::Gt), 1),
            '=' => (Tok::Cmp(Comparator::Eq), 1),
            '!' if next == Some('=') => (Tok::Cmp(Comparator::Ne), 2),
            '&' => {
                let end = word(i + 1);
                let name: String = chars[i + 1..end].iter().collect();
                if name != "sum" {
                    return Err(pos.syntax(format!("unknown theory term `&{name}`")));
                }
                (Tok::Sum, end - i)
            }
            '#' => {
                let end = word(i + 1);
                let name: String = chars[i + 1..end].iter().collect();
                if name.is_empty() {
                    return Err(pos.syntax("expected directive name after `#`"));
                }
                (Tok::Directive(name), end - i)
            }
            c if c.is_ascii_digit() || (c == '-' && next.is_some_and(|d| d.is_ascii_digit())) => {
                let mut end = i + 1;
                while end < chars.len() && chars[end].is_ascii_digit() {
                    end += 1;
                }
                let lit: String = chars[i..end].iter().collect();
                let value = lit
                    .parse::<i64>()
                    .map_err(|_| pos.syntax(format!("integer literal `{lit}` out of range")))?;
                (Tok::Int(value), end - i)
            }
            c if is_ident_start(c) => {
                let end = word(i);
                let name: String = chars[i..end].iter().collect();
                if name == "not" {
                    (Tok::Not, end - i)
                } else {
                    (Tok::Ident(name), end - i)
                }
            }
            c => return Err(pos.syntax(format!("unexpected character {c:?}"))),
        };
        out.push(Token { tok, pos });
        i += len;
        column += len;
    }
    out.push(Token {
        tok: Tok::Eof,
        pos: Pos { line, column },
    });
    Ok(out)
}

struct Parser {
    toks: Vec<Token>,
    at: usize,
    rules: Vec<Rule>,
    directives: Directives,
    founded_at: Vec<Pos>,
    regular_seen: BTreeMap<Var, Pos>,
    theory_var_seen: BTreeMap<Var, Pos>,
}

impl Parser {
    fn peek(&self) -> &Token {
        &self.toks[self.at.min(self.toks.len() - 1)]
    }

    fn bump(&mut self) -> (Tok, Pos) {
        let t = self.peek();
        let r = (t.tok.clone(), t.pos);
        if self.at < self.toks.len() - 1 {
            self.at += 1;
        }
        r
    }

    fn expect(&mut self, want: Tok) -> Result<Pos, ParseError> {
        let (tok, pos) = self.bump();
        if tok == want {
            Ok(pos)
        } else {
            Err(pos.syntax(format!("expected {want}, found {tok}")))
        }
    }

    fn ident(&mut self, name: String, pos: Pos) -> Result<Var, ParseError> {
        if name.starts_with(RESERVED_PREFIX) {
            return Err(
                pos.error(ParseErrorKind::Program(ProgramError::ReservedIdentifier(
                    name,
                ))),
            );
        }
        Ok(Var::from(name))
    }

    fn int(&mut self) -> Result<i64, ParseError> {
        match self.bump() {
            (Tok::Int(i), _) => Ok(i),
            (tok, pos) => Err(pos.syntax(format!("expected integer, found {tok}"))),
        }
    }

    fn theory_atom(&mut self) -> Result<LinearAtom, ParseError> {
        self.expect(Tok::Sum)?;
        self.expect(Tok::LBrace)?;
        let mut terms = Vec::new();
        loop {
            let (tok, pos) = self.bump();
            let (k, name, pos) = match tok {
                Tok::Int(k) => {
                    self.expect(Tok::Star)?;
                    match self.bump() {
                        (Tok::Ident(n), p) => (k, n, p),
                        (tok, p) => return Err(p.syntax(format!("expected variable, found {tok}"))),
                    }
                }
                Tok::Ident(n) => (1, n, pos),
                tok => return Err(pos.syntax(format!("expected term, found {tok}"))),
            };
            let var = self.ident(name, pos)?;
            self.theory_var_seen.entry(var.clone()).or_insert(pos);
            terms.push((k, var));
            match self.bump() {
                (Tok::Semi, _) => continue,
                (Tok::RBrace, _) => break,
                (tok, pos) => return Err(pos.syntax(format!("expected `;` or `}}`, found {tok}"))),
            }
        }
        let cmp = match self.bump() {
            (Tok::Cmp(c), _) => c,
            (tok, pos) => return Err(pos.syntax(format!("expected comparison, found {tok}"))),
        };
        let bound = self.int()?;
        LinearAtom::new(terms, cmp, bound)
            .map_err(|e| self.peek().pos.error(ParseErrorKind::Program(e)))
    }

    fn atom(&mut self) -> Result<TAtom, ParseError> {
        match self.peek().tok.clone() {
            Tok::Sum => Ok(TAtom::Th(self.theory_atom()?)),
            Tok::Ident(name) => {
                let (_, pos) = self.bump();
                let var = self.ident(name, pos)?;
                self.regular_seen.entry(var.clone()).or_insert(pos);
                Ok(TAtom::Reg(var))
            }
            tok => Err(self
                .peek()
                .pos
                .syntax(format!("expected atom, found {tok}"))),
        }
    }

    fn body(&mut self) -> Result<(Vec<TAtom>, Vec<TAtom>), ParseError> {
        let (mut pos, mut neg) = (Vec::new(), Vec::new());
        loop {
            if self.peek().tok == Tok::Not {
                self.bump();
                neg.push(self.atom()?);
            } else {
                pos.push(self.atom()?);
            }
            match self.bump() {
                (Tok::Comma, _) => continue,
                (Tok::Dot, _) => return Ok((pos, neg)),
                (tok, p) => return Err(p.syntax(format!("expected `,` or `.`, found {tok}"))),
            }
        }
    }

    fn directive(&mut self, name: String, pos: Pos) -> Result<(), ParseError> {
        match name.as_str() {
            "bounds" => {
                let lo = self.int()?;
                self.expect(Tok::DotDot)?;
                let hi = self.int()?;
                self.expect(Tok::Dot)?;
                if self.directives.bounds.is_some() {
                    return Err(pos.error(ParseErrorKind::DuplicateBounds));
                }
                let b = Bounds::new(lo, hi)
                    .map_err(|_| pos.error(ParseErrorKind::BoundInversion { lo, hi }))?;
                self.directives.bounds = Some(b);
            }
            "external" => {
                let s = self.theory_atom()?;
                self.expect(Tok::Dot)?;
                self.directives.externals.push(s);
            }
            "founded" => {
                let s = self.theory_atom()?;
                self.expect(Tok::Dot)?;
                self.directives.founded.push(s);
                self.founded_at.push(pos);
            }
            _ => return Err(pos.error(ParseErrorKind::UnknownDirective(name))),
        }
        Ok(())
    }

    fn statement(&mut self) -> Result<(), ParseError> {
        match self.peek().tok.clone() {
            Tok::Directive(name) => {
                let (_, pos) = self.bump();
                self.directive(name, pos)
            }
            Tok::If => {
                self.bump();
                let (pos, neg) = self.body()?;
                self.rules.push(Rule::new(None, pos, neg));
                Ok(())
            }
            _ => {
                let head = self.atom()?;
                match self.bump() {
                    (Tok::Dot, _) => {
                        self.rules.push(Rule::fact(head));
                        Ok(())
                    }
                    (Tok::If, _) => {
                        let (pos, neg) = self.body()?;
                        self.rules.push(Rule::new(Some(head), pos, neg));
                        Ok(())
                    }
                    (tok, p) => Err(p.syntax(format!("expected `.` or `:-`, found {tok}"))),
                }
            }
        }
    }

    fn check_founded(&self) -> Result<(), ParseError> {
        let body: BTreeSet<&LinearAtom> = self
            .rules
            .iter()
            .flat_map(Rule::body_atoms)
            .filter_map(TAtom::theory)
            .collect();
        let declared: BTreeSet<&LinearAtom> = self.directives.externals.iter().collect();
        for (s, pos) in self.directives.founded.iter().zip(&self.founded_at) {
            let c = complement(s);
            let program_error = |e| pos.error(ParseErrorKind::Program(e));
            if body.contains(s) {
                return Err(program_error(ProgramError::FoundedInBody(s.to_string())));
            }
            if declared.contains(s) || declared.contains(&c) {
                return Err(program_error(ProgramError::ExternalAndFounded(
                    s.to_string(),
                )));
            }
            if body.contains(&c) {
                return Err(program_error(ProgramError::FoundedIsExternal(
                    s.to_string(),
                )));
            }
        }
        Ok(())
    }

    fn check_clashes(&self) -> Result<(), ParseError> {
        let clash = self
            .regular_seen
            .iter()
            .filter_map(|(v, p)| self.theory_var_seen.get(v).map(|q| (v, (*p).max(*q))))
            .min_by_key(|(_, p)| *p);
        match clash {
            Some((v, pos)) => Err(pos.error(ParseErrorKind::Program(ProgramError::NameClash(
                v.to_string(),
            )))),
            None => Ok(()),
        }
    }
}

/// Parses program text. Body theory atoms and `#external` atoms become
/// external, closed under complement; other head theory atoms are founded.
pub fn parse_program(text: &str) -> Result<SourceProgram, ParseError> {
    let mut p = Parser {
        toks: lex(text)?,
        at: 0,
        rules: Vec::new(),
        directives: Directives::default(),
        founded_at: Vec::new(),
        regular_seen: BTreeMap::new(),
        theory_var_seen: BTreeMap::new(),
    };
    while p.peek().tok != Tok::Eof {
        p.statement()?;
    }
    p.check_founded()?;
    p.check_clashes()?;
    let end = p.peek().pos;
    let program = TProgram::new(
        p.rules,
        p.directives.externals.iter().cloned(),
        p.directives.bounds.unwrap_or_default(),
    )
    .map_err(|e| end.error(ParseErrorKind::Program(e)))?;
    Ok(SourceProgram {
        text: text.to_string(),
        program,
        directives: p.directives,
    })
}
