//! Text format for programs.
//!
//! ```text
//! program  ::= { rule }
//! rule     ::= head [ arrow [ body ] ] "."
//! head     ::= atom { "x" atom }
//! arrow    ::= "<-" | ":-"
//! body     ::= literal { "," literal }
//! literal  ::= atom | "not" atom
//! atom     ::= [a-z] [A-Za-z0-9_]*        (except the reserved word "not")
//! ```
//!
//! `%` starts a comment that runs to the end of the line. In a head, `x` in a
//! separator position is the ordered disjunction; elsewhere it is an atom.

use crate::error::{Error, Result};
use crate::program::{Atom, Program, Rule};

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    Ident(String),
    Arrow,
    Comma,
    Dot,
}

#[derive(Clone, Debug)]
struct Spanned {
    tok: Tok,
    line: usize,
    column: usize,
}

fn syntax(line: usize, column: usize, message: impl Into<String>) -> Error {
    Error::Syntax {
        line,
        column,
        message: message.into(),
    }
}

fn lex(text: &str) -> Result<(Vec<Spanned>, (usize, usize))> {
    let mut out = Vec::new();
    let mut line = 1;
    let mut column = 1;
    let mut chars = text.chars().peekable();
    while let Some(&c) = chars.peek() {
        let (l, col) = (line, column);
        match c {
            '\n' => {
                chars.next();
                line += 1;
                column = 1;
            }
            c if c.is_whitespace() => {
                chars.next();
                column += 1;
            }
            '%' => {
                while let Some(&c) = chars.peek() {
                    if c == '\n' {
                        break;
                    }
                    chars.next();
                    column += 1;
                }
            }
            ',' | '.' => {
                chars.next();
                column += 1;
                let tok = if c == ',' { Tok::Comma } else { Tok::Dot };
                out.push(Spanned { tok, line: l, column: col });
            }
            '<' | ':' => {
                chars.next();
                column += 1;
                if chars.peek() == Some(&'-') {
                    chars.next();
                    column += 1;
                    out.push(Spanned {
                        tok: Tok::Arrow,
                        line: l,
                        column: col,
                    });
                } else {
                    return Err(syntax(l, col, format!("expected `-` after `{c}`")));
                }
            }
            c if c.is_ascii_lowercase() => {
                let mut name = String::new();
                while let Some(&c) = chars.peek() {
                    if c.is_ascii_alphanumeric() || c == '_' {
                        name.push(c);
                        chars.next();
                        column += 1;
                    } else {
                        break;
                    }
                }
                out.push(Spanned {
                    tok: Tok::Ident(name),
                    line: l,
                    column: col,
                });
            }
            other => {
                return Err(syntax(l, col, format!("unexpected character `{other}`")));
            }
        }
    }
    Ok((out, (line, column)))
}

struct Parser {
    toks: Vec<Spanned>,
    pos: usize,
    end: (usize, usize),
}

impl Parser {
    fn peek(&self) -> Option<&Spanned> {
        self.toks.get(self.pos)
    }

    fn here(&self) -> (usize, usize) {
        self.peek().map(|t| (t.line, t.column)).unwrap_or(self.end)
    }

    fn error(&self, expected: &str) -> Error {
        let (line, column) = self.here();
        let found = match self.peek().map(|t| &t.tok) {
            None => "end of input".to_string(),
            Some(Tok::Ident(s)) => format!("`{s}`"),
            Some(Tok::Arrow) => "`<-`".to_string(),
            Some(Tok::Comma) => "`,`".to_string(),
            Some(Tok::Dot) => "`.`".to_string(),
        };
        syntax(line, column, format!("expected {expected}, found {found}"))
    }

    fn atom(&mut self) -> Result<Atom> {
        match self.peek().map(|t| &t.tok) {
            Some(Tok::Ident(name)) if name == "not" => {
                let (line, column) = self.here();
                Err(syntax(line, column, "`not` is reserved and cannot be used as an atom"))
            }
            Some(Tok::Ident(name)) => {
                let atom = Atom::new(name);
                self.pos += 1;
                Ok(atom)
            }
            _ => Err(self.error("an atom")),
        }
    }

    fn eat(&mut self, tok: &Tok) -> bool {
        if self.peek().map(|t| &t.tok) == Some(tok) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn rule(&mut self) -> Result<Rule> {
        if matches!(self.peek().map(|t| &t.tok), Some(Tok::Arrow)) {
            return Err(self.error("a head atom (rule heads cannot be empty)"));
        }
        let mut head = vec![self.atom()?];
        while matches!(self.peek().map(|t| &t.tok), Some(Tok::Ident(s)) if s == "x") {
            self.pos += 1;
            head.push(self.atom()?);
        }
        let mut pos = Vec::new();
        let mut neg = Vec::new();
        if self.eat(&Tok::Arrow) && !matches!(self.peek().map(|t| &t.tok), Some(Tok::Dot)) {
            loop {
                if matches!(self.peek().map(|t| &t.tok), Some(Tok::Ident(s)) if s == "not") {
                    self.pos += 1;
                    neg.push(self.atom()?);
                } else {
                    pos.push(self.atom()?);
                }
                if !self.eat(&Tok::Comma) {
                    break;
                }
            }
        }
        if !self.eat(&Tok::Dot) {
            return Err(self.error(if pos.is_empty() && neg.is_empty() {
                "`x`, `<-` or `.`"
            } else {
                "`,` or `.`"
            }));
        }
        Rule::new(head, pos, neg)
    }
}

/// Parses program text. Duplicate rules are merged.
pub fn parse_program(text: &str) -> Result<Program> {
    let (toks, end) = lex(text)?;
    let mut parser = Parser { toks, pos: 0, end };
    let mut program = Program::new();
    while parser.peek().is_some() {
        program.push(parser.rule()?);
    }
    Ok(program)
}

/// One rule per line, in insertion order. The empty program is the empty string.
pub fn serialize_program(program: &Program) -> String {
    program.to_string()
}
