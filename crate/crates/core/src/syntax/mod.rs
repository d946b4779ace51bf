//! Concrete syntax for terms, types and `.lin` source files.
//!
//! ```text
//! term   := '\' IDENT [':' unit] '.' term | '/\' TYIDENT '.' term | sum
//! sum    := scaled (('+' | '-') scaled)*
//! scaled := SCALAR '.' (scaled | lam) | app
//! app    := postfix postfix*
//! postfix:= primary ('[' unit ']')*
//! primary:= IDENT | '0' | '(' term ')' | '(' '0' ':' type ')'
//! type   := 'forall' X '.' type | prefix ['->' type]
//! prefix := SCALAR '.' prefix | X | 'Zero' | '(' type ')'
//! file   := decl* term ['::' type]
//! decl   := 'let' x '=' term ';' | 'type' X '=' type ';' | 'assume' x ':' type ';'
//! ```
//!
//! `t - r` is read as `t + (-1).r`, and `t - α.r` as `t + (-α).r`.

mod lexer;
mod parser;

use std::fmt;

use thiserror::Error;

use crate::scalar::Scalar;
use crate::term::Term;
use crate::types::Type;

pub use lexer::{lex, Pos, Tok};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub struct ParseError {
    pub line: usize,
    pub col: usize,
    pub message: String,
}

impl ParseError {
    pub fn new(line: usize, col: usize, message: impl Into<String>) -> Self {
        ParseError { line, col, message: message.into() }
    }
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}: {}", self.line, self.col, self.message)
    }
}

/// Names visible while parsing: term definitions (inlined at use sites) and
/// type aliases (expanded at use sites).
#[derive(Clone, Debug, Default)]
pub struct Scope {
    pub defs: Vec<(String, Term)>,
    pub aliases: Vec<(String, Type)>,
}

impl Scope {
    pub fn def(&self, name: &str) -> Option<&Term> {
        self.defs.iter().rev().find(|(n, _)| n == name).map(|(_, t)| t)
    }

    pub fn alias(&self, name: &str) -> Option<&Type> {
        self.aliases.iter().rev().find(|(n, _)| n == name).map(|(_, t)| t)
    }

    pub fn extend(&mut self, other: &Scope) {
        self.defs.extend(other.defs.iter().cloned());
        self.aliases.extend(other.aliases.iter().cloned());
    }
}

/// A parsed `.lin` file. Definitions are already inlined into `main`.
#[derive(Clone, Debug)]
pub struct SourceFile {
    pub scope: Scope,
    pub assumptions: Vec<(String, Type)>,
    pub main: Term,
    pub ascription: Option<Type>,
}

pub fn parse_term(src: &str) -> Result<Term, ParseError> {
    parse_term_in(src, &Scope::default())
}

pub fn parse_term_in(src: &str, scope: &Scope) -> Result<Term, ParseError> {
    parser::Parser::new(src, scope, None)?.whole_term()
}

/// Parse a term in which `?` stands for `hole` wherever a scalar literal may
/// appear.
pub fn parse_term_with_hole(src: &str, scope: &Scope, hole: &Scalar) -> Result<Term, ParseError> {
    parser::Parser::new(src, scope, Some(hole.clone()))?.whole_term()
}

pub fn parse_type(src: &str) -> Result<Type, ParseError> {
    parse_type_in(src, &Scope::default())
}

pub fn parse_type_in(src: &str, scope: &Scope) -> Result<Type, ParseError> {
    parser::Parser::new(src, scope, None)?.whole_type()
}

pub fn parse_source(src: &str, prelude: &Scope) -> Result<SourceFile, ParseError> {
    parser::Parser::new(src, prelude, None)?.source_file()
}
