use super::lexer::{lex, Pos, Tok};
use super::{ParseError, Scope, SourceFile};
use crate::scalar::Scalar;
use crate::term::{Hint, Term};
use crate::types::Type;

pub struct Parser {
    toks: Vec<(Tok, Pos)>,
    i: usize,
    scope: Scope,
    binders: Vec<String>,
    ty_binders: Vec<String>,
    hole: Option<Scalar>,
}

type PResult<T> = Result<T, ParseError>;

impl Parser {
    pub fn new(src: &str, scope: &Scope, hole: Option<Scalar>) -> PResult<Parser> {
        Ok(Parser {
            toks: lex(src)?,
            i: 0,
            scope: scope.clone(),
            binders: Vec::new(),
            ty_binders: Vec::new(),
            hole,
        })
    }

    fn peek(&self) -> &Tok {
        &self.toks[self.i].0
    }

    fn peek_at(&self, k: usize) -> &Tok {
        &self.toks[(self.i + k).min(self.toks.len() - 1)].0
    }

    fn pos(&self) -> Pos {
        self.toks[self.i].1
    }

    fn bump(&mut self) -> Tok {
        let t = self.toks[self.i].0.clone();
        if self.i + 1 < self.toks.len() {
            self.i += 1;
        }
        t
    }

    fn error<T>(&self, msg: impl Into<String>) -> PResult<T> {
        let p = self.pos();
        Err(ParseError::new(p.line, p.col, msg))
    }

    fn expect(&mut self, tok: Tok, what: &str) -> PResult<()> {
        if *self.peek() == tok {
            self.bump();
            Ok(())
        } else {
            self.error(format!("expected {what}, found {}", describe(self.peek())))
        }
    }

    fn ident(&mut self, what: &str) -> PResult<String> {
        match self.peek().clone() {
            Tok::Ident(name) => {
                self.bump();
                Ok(name)
            }
            other => self.error(format!("expected {what}, found {}", describe(&other))),
        }
    }

    fn eof(&mut self) -> PResult<()> {
        self.expect(Tok::Eof, "end of input")
    }

    pub fn whole_term(mut self) -> PResult<Term> {
        let t = self.term()?;
        self.eof()?;
        Ok(t)
    }

    pub fn whole_type(mut self) -> PResult<Type> {
        let t = self.ty()?;
        self.eof()?;
        Ok(t)
    }

    pub fn source_file(mut self) -> PResult<SourceFile> {
        let mut local = Scope::default();
        let mut assumptions: Vec<(String, Type)> = Vec::new();
        loop {
            match self.peek() {
                Tok::Let => {
                    self.bump();
                    let name = self.ident("definition name")?;
                    self.expect(Tok::Equals, "`=`")?;
                    let body = self.term()?;
                    self.expect(Tok::Semi, "`;`")?;
                    self.scope.defs.push((name.clone(), body.clone()));
                    local.defs.push((name, body));
                }
                Tok::Type => {
                    self.bump();
                    let name = self.ident("type alias name")?;
                    self.expect(Tok::Equals, "`=`")?;
                    let ty = self.ty()?;
                    self.expect(Tok::Semi, "`;`")?;
                    self.scope.aliases.push((name.clone(), ty.clone()));
                    local.aliases.push((name, ty));
                }
                Tok::Assume => {
                    self.bump();
                    let pos = self.pos();
                    let name = self.ident("variable name")?;
                    self.expect(Tok::Colon, "`:`")?;
                    let ty = self.ty()?;
                    self.expect(Tok::Semi, "`;`")?;
                    if assumptions.iter().any(|(n, _)| *n == name) {
                        return Err(ParseError::new(pos.line, pos.col, format!("`{name}` assumed twice")));
                    }
                    assumptions.push((name, ty));
                }
                _ => break,
            }
        }
        let main = self.term()?;
        let ascription = if *self.peek() == Tok::DoubleColon {
            self.bump();
            Some(self.ty()?)
        } else {
            None
        };
        self.eof()?;
        Ok(SourceFile { scope: local, assumptions, main, ascription })
    }

    fn term(&mut self) -> PResult<Term> {
        match self.peek() {
            Tok::Lambda | Tok::BigLambda => self.lam(),
            _ => self.sum(),
        }
    }

    fn lam(&mut self) -> PResult<Term> {
        match self.bump() {
            Tok::Lambda => {
                let name = self.ident("binder name")?;
                let ann = if *self.peek() == Tok::Colon {
                    self.bump();
                    let pos = self.pos();
                    let ty = self.ty()?;
                    if !ty.is_unit() {
                        return Err(ParseError::new(
                            pos.line,
                            pos.col,
                            format!("binder annotation `{ty}` is not a unit type"),
                        ));
                    }
                    Some(ty)
                } else {
                    None
                };
                self.expect(Tok::Dot, "`.`")?;
                self.binders.push(name.clone());
                let body = self.term();
                self.binders.pop();
                Ok(Term::Abs(Hint(name), ann, Box::new(body?)))
            }
            Tok::BigLambda => {
                let name = self.ident("type variable")?;
                self.expect(Tok::Dot, "`.`")?;
                self.ty_binders.push(name.clone());
                let body = self.term();
                self.ty_binders.pop();
                Ok(Term::TyAbs(name, Box::new(body?)))
            }
            _ => unreachable!(),
        }
    }

    fn sum(&mut self) -> PResult<Term> {
        let mut addends = vec![self.scaled()?];
        loop {
            match self.peek() {
                Tok::Plus => {
                    self.bump();
                    addends.push(self.scaled()?);
                }
                Tok::Minus => {
                    self.bump();
                    addends.push(self.negated()?);
                }
                _ => break,
            }
        }
        Ok(Term::sum(addends))
    }

    /// Operand of a binary minus. A literal coefficient is negated in place.
    fn negated(&mut self) -> PResult<Term> {
        if self.scalar_prefix_len().is_some() {
            let coeff = self.scalar()?;
            self.expect(Tok::Dot, "`.`")?;
            let body = self.scale_body()?;
            Ok(Term::scale(-coeff, body))
        } else {
            Ok(Term::scale(Scalar::from_int(-1), self.scaled()?))
        }
    }

    /// Number of tokens of a scalar literal followed by `.` at the cursor.
    fn scalar_prefix_len(&self) -> Option<usize> {
        let mut k = 0;
        if *self.peek_at(k) == Tok::Hole {
            return (*self.peek_at(1) == Tok::Dot).then_some(1);
        }
        if *self.peek_at(k) == Tok::Minus {
            k += 1;
        }
        if !matches!(self.peek_at(k), Tok::Int(_)) {
            return None;
        }
        k += 1;
        if *self.peek_at(k) == Tok::Slash && matches!(self.peek_at(k + 1), Tok::Int(_)) {
            k += 2;
        }
        (*self.peek_at(k) == Tok::Dot).then_some(k)
    }

    fn scalar(&mut self) -> PResult<Scalar> {
        let pos = self.pos();
        if *self.peek() == Tok::Hole {
            self.bump();
            return match &self.hole {
                Some(h) => Ok(h.clone()),
                None => Err(ParseError::new(pos.line, pos.col, "scalar hole `?` outside a template")),
            };
        }
        let mut text = String::new();
        if *self.peek() == Tok::Minus {
            self.bump();
            text.push('-');
        }
        match self.bump() {
            Tok::Int(n) => text.push_str(&n),
            other => return Err(ParseError::new(pos.line, pos.col, format!("expected scalar, found {}", describe(&other)))),
        }
        if *self.peek() == Tok::Slash {
            self.bump();
            match self.bump() {
                Tok::Int(d) => {
                    text.push('/');
                    text.push_str(&d);
                }
                other => {
                    return Err(ParseError::new(pos.line, pos.col, format!("expected denominator, found {}", describe(&other))))
                }
            }
        }
        text.parse().map_err(|e| ParseError::new(pos.line, pos.col, format!("{e}")))
    }

    fn scaled(&mut self) -> PResult<Term> {
        if self.scalar_prefix_len().is_some() {
            let coeff = self.scalar()?;
            self.expect(Tok::Dot, "`.`")?;
            let body = self.scale_body()?;
            Ok(Term::scale(coeff, body))
        } else if matches!(self.peek(), Tok::Minus) {
            self.error("expected a term; a leading `-` must start a scalar literal such as `-1.t`")
        } else {
            self.app()
        }
    }

    fn scale_body(&mut self) -> PResult<Term> {
        match self.peek() {
            Tok::Lambda | Tok::BigLambda => self.lam(),
            _ => self.scaled(),
        }
    }

    fn starts_argument(&self) -> bool {
        match self.peek() {
            Tok::Ident(_) | Tok::LParen => true,
            Tok::Int(n) => n == "0" && !matches!(self.peek_at(1), Tok::Dot | Tok::Slash),
            _ => false,
        }
    }

    fn app(&mut self) -> PResult<Term> {
        let mut fun = self.postfix()?;
        while self.starts_argument() {
            let arg = self.postfix()?;
            fun = Term::app(fun, arg);
        }
        Ok(fun)
    }

    fn postfix(&mut self) -> PResult<Term> {
        let mut t = self.primary()?;
        while *self.peek() == Tok::LBracket {
            self.bump();
            let pos = self.pos();
            let ty = self.ty()?;
            if !ty.is_unit() {
                return Err(ParseError::new(pos.line, pos.col, format!("type argument `{ty}` is not a unit type")));
            }
            self.expect(Tok::RBracket, "`]`")?;
            t = Term::ty_app(t, ty);
        }
        Ok(t)
    }

    fn primary(&mut self) -> PResult<Term> {
        match self.peek().clone() {
            Tok::Ident(name) => {
                self.bump();
                if let Some(k) = self.binders.iter().rev().position(|b| *b == name) {
                    Ok(Term::Bound(k))
                } else if let Some(def) = self.scope.def(&name) {
                    Ok(def.clone())
                } else {
                    Ok(Term::Var(name))
                }
            }
            Tok::Int(n) if n == "0" => {
                self.bump();
                Ok(Term::zero())
            }
            Tok::LParen => {
                self.bump();
                let inner = self.term()?;
                let t = if *self.peek() == Tok::Colon {
                    if inner != Term::zero() {
                        return self.error("only `0` may carry a type annotation");
                    }
                    self.bump();
                    Term::Zero(Some(self.ty()?))
                } else {
                    inner
                };
                self.expect(Tok::RParen, "`)`")?;
                Ok(t)
            }
            other => self.error(format!("expected a term, found {}", describe(&other))),
        }
    }

    fn ty(&mut self) -> PResult<Type> {
        if *self.peek() == Tok::Forall {
            self.bump();
            let name = self.ident("type variable")?;
            self.expect(Tok::Dot, "`.`")?;
            self.ty_binders.push(name.clone());
            let body = self.ty();
            self.ty_binders.pop();
            return Ok(Type::Forall(name, Box::new(body?)));
        }
        let pos = self.pos();
        let dom = self.ty_prefix()?;
        if *self.peek() == Tok::Arrow {
            self.bump();
            if !dom.is_unit() {
                return Err(ParseError::new(
                    pos.line,
                    pos.col,
                    format!("arrow domain `{dom}` is not a unit type"),
                ));
            }
            let cod = self.ty()?;
            Ok(Type::Arrow(Box::new(dom), Box::new(cod)))
        } else {
            Ok(dom)
        }
    }

    fn ty_prefix(&mut self) -> PResult<Type> {
        if self.scalar_prefix_len().is_some() {
            let coeff = self.scalar()?;
            self.expect(Tok::Dot, "`.`")?;
            let body = if *self.peek() == Tok::Forall { self.ty()? } else { self.ty_prefix()? };
            return Ok(Type::Scale(coeff, Box::new(body)));
        }
        match self.peek().clone() {
            Tok::Ident(name) => {
                self.bump();
                let shadowed = self.ty_binders.contains(&name);
                if name == "Zero" && !shadowed {
                    Ok(Type::Zero)
                } else if let (false, Some(alias)) = (shadowed, self.scope.alias(&name)) {
                    Ok(alias.clone())
                } else {
                    Ok(Type::Var(name))
                }
            }
            Tok::LParen => {
                self.bump();
                let t = self.ty()?;
                self.expect(Tok::RParen, "`)`")?;
                Ok(t)
            }
            other => self.error(format!("expected a type, found {}", describe(&other))),
        }
    }
}

fn describe(tok: &Tok) -> String {
    match tok {
        Tok::Ident(s) => format!("identifier `{s}`"),
        Tok::Int(s) => format!("number `{s}`"),
        Tok::Eof => "end of input".to_string(),
        Tok::Slash => "`/`".into(),
        Tok::Dot => "`.`".into(),
        Tok::Lambda => "`\\`".into(),
        Tok::BigLambda => "`/\\`".into(),
        Tok::Plus => "`+`".into(),
        Tok::Minus => "`-`".into(),
        Tok::LParen => "`(`".into(),
        Tok::RParen => "`)`".into(),
        Tok::LBracket => "`[`".into(),
        Tok::RBracket => "`]`".into(),
        Tok::Colon => "`:`".into(),
        Tok::DoubleColon => "`::`".into(),
        Tok::Semi => "`;`".into(),
        Tok::Equals => "`=`".into(),
        Tok::Arrow => "`->`".into(),
        Tok::Hole => "`?`".into(),
        Tok::Forall => "`forall`".into(),
        Tok::Let => "`let`".into(),
        Tok::Type => "`type`".into(),
        Tok::Assume => "`assume`".into(),
    }
}
