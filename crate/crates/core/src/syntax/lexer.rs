use super::ParseError;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Tok {
    Ident(String),
    Int(String),
    Slash,
    Dot,
    Lambda,
    BigLambda,
    Plus,
    Minus,
    LParen,
    RParen,
    LBracket,
    RBracket,
    Colon,
    DoubleColon,
    Semi,
    Equals,
    Arrow,
    Hole,
    Forall,
    Let,
    Type,
    Assume,
    Eof,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Pos {
    pub line: usize,
    pub col: usize,
}

pub fn lex(src: &str) -> Result<Vec<(Tok, Pos)>, ParseError> {
    let chars: Vec<char> = src.chars().collect();
    let mut toks = Vec::new();
    let (mut i, mut line, mut col) = (0, 1, 1);
    while i < chars.len() {
        let c = chars[i];
        let pos = Pos { line, col };
        let next = chars.get(i + 1).copied();
        let mut width = 1;
        let tok = match c {
            '\n' => {
                i += 1;
                line += 1;
                col = 1;
                continue;
            }
            c if c.is_whitespace() => None,
            '#' => {
                while i < chars.len() && chars[i] != '\n' {
                    i += 1;
                }
                continue;
            }
            '/' if next == Some('\\') => {
                width = 2;
                Some(Tok::BigLambda)
            }
            '-' if next == Some('>') => {
                width = 2;
                Some(Tok::Arrow)
            }
            ':' if next == Some(':') => {
                width = 2;
                Some(Tok::DoubleColon)
            }
            '\\' | 'λ' => Some(Tok::Lambda),
            'Λ' => Some(Tok::BigLambda),
            '∀' => Some(Tok::Forall),
            '→' => Some(Tok::Arrow),
            '/' => Some(Tok::Slash),
            '.' => Some(Tok::Dot),
            '+' => Some(Tok::Plus),
            '-' | '−' => Some(Tok::Minus),
            '(' => Some(Tok::LParen),
            ')' => Some(Tok::RParen),
            '[' => Some(Tok::LBracket),
            ']' => Some(Tok::RBracket),
            ':' => Some(Tok::Colon),
            ';' => Some(Tok::Semi),
            '=' => Some(Tok::Equals),
            '?' => Some(Tok::Hole),
            c if c.is_ascii_digit() => {
                let start = i;
                while i + width < chars.len() && chars[i + width].is_ascii_digit() {
                    width += 1;
                }
                Some(Tok::Int(chars[start..start + width].iter().collect()))
            }
            c if c.is_alphabetic() || c == '_' => {
                let start = i;
                while i + width < chars.len() && {
                    let d = chars[i + width];
                    d.is_alphanumeric() || d == '_' || d == '\''
                } {
                    width += 1;
                }
                let word: String = chars[start..start + width].iter().collect();
                Some(match word.as_str() {
                    "forall" => Tok::Forall,
                    "let" => Tok::Let,
                    "type" => Tok::Type,
                    "assume" => Tok::Assume,
                    _ => Tok::Ident(word),
                })
            }
            other => {
                return Err(ParseError::new(line, col, format!("unexpected character `{other}`")));
            }
        };
        if let Some(tok) = tok {
            toks.push((tok, pos));
        }
        i += width;
        col += width;
    }
    toks.push((Tok::Eof, Pos { line, col }));
    Ok(toks)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn kinds(src: &str) -> Vec<Tok> {
        lex(src).unwrap().into_iter().map(|(t, _)| t).collect()
    }

    #[test]
    fn lexes_mixed_input() {
        assert_eq!(
            kinds(r"/\X. \x:X. 1/2.x - y # trailing"),
            vec![
                Tok::BigLambda,
                Tok::Ident("X".into()),
                Tok::Dot,
                Tok::Lambda,
                Tok::Ident("x".into()),
                Tok::Colon,
                Tok::Ident("X".into()),
                Tok::Dot,
                Tok::Int("1".into()),
                Tok::Slash,
                Tok::Int("2".into()),
                Tok::Dot,
                Tok::Ident("x".into()),
                Tok::Minus,
                Tok::Ident("y".into()),
                Tok::Eof,
            ]
        );
    }

    #[test]
    fn tracks_positions() {
        let toks = lex("x\n  y").unwrap();
        assert_eq!(toks[1].1, Pos { line: 2, col: 3 });
    }

    #[test]
    fn rejects_unknown_characters() {
        let err = lex("x $ y").unwrap_err();
        assert_eq!((err.line, err.col), (1, 3));
    }
}
