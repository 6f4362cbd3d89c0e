use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) enum Tok {
    /// A bare identifier or keyword.
    Word(String),
    /// A double-quoted identifier; never a keyword.
    Quoted(String),
    Sym(char),
    Eof,
}

impl Tok {
    pub(crate) fn describe(&self) -> String {
        match self {
            Tok::Word(w) => format!("`{w}`"),
            Tok::Quoted(w) => format!("\"{w}\""),
            Tok::Sym(c) => format!("`{c}`"),
            Tok::Eof => "end of input".to_string(),
        }
    }
}

#[derive(Clone, Debug)]
pub(crate) struct Token {
    pub tok: Tok,
    pub line: usize,
    pub col: usize,
}

pub(crate) const SYMBOLS: &str = "{}(),;=<>[]&|";

/// Characters allowed in unquoted identifiers besides alphanumerics.
pub(crate) fn is_bare_char(c: char) -> bool {
    c.is_alphanumeric() || "_'.#:^-⊤⊥".contains(c)
}

pub(crate) fn tokenize(text: &str) -> Result<Vec<Token>> {
    let mut out = Vec::new();
    let mut chars = text.chars().peekable();
    let (mut line, mut col) = (1, 1);
    let bump = |c: char, line: &mut usize, col: &mut usize| {
        if c == '\n' {
            *line += 1;
            *col = 1;
        } else {
            *col += 1;
        }
    };
    while let Some(&c) = chars.peek() {
        let (l0, c0) = (line, col);
        if c.is_whitespace() {
            chars.next();
            bump(c, &mut line, &mut col);
        } else if c == '/' {
            chars.next();
            bump(c, &mut line, &mut col);
            if chars.peek() != Some(&'/') {
                return Err(Error::Syntax {
                    line: l0,
                    col: c0,
                    expected: vec!["`//`".into()],
                    found: "`/`".into(),
                });
            }
            while let Some(&c) = chars.peek() {
                if c == '\n' {
                    break;
                }
                chars.next();
                bump(c, &mut line, &mut col);
            }
        } else if SYMBOLS.contains(c) {
            chars.next();
            bump(c, &mut line, &mut col);
            out.push(Token { tok: Tok::Sym(c), line: l0, col: c0 });
        } else if c == '"' {
            chars.next();
            bump(c, &mut line, &mut col);
            let mut s = String::new();
            loop {
                let Some(c) = chars.next() else {
                    return Err(Error::Syntax {
                        line,
                        col,
                        expected: vec!["`\"`".into()],
                        found: "end of input".into(),
                    });
                };
                bump(c, &mut line, &mut col);
                match c {
                    '"' => break,
                    '\\' => {
                        let esc = chars.next();
                        match esc {
                            Some(e @ ('"' | '\\')) => {
                                bump(e, &mut line, &mut col);
                                s.push(e);
                            }
                            other => {
                                return Err(Error::Syntax {
                                    line,
                                    col,
                                    expected: vec!["`\\\"`".into(), "`\\\\`".into()],
                                    found: other.map_or("end of input".into(), |e| format!("`\\{e}`")),
                                })
                            }
                        }
                    }
                    '\n' => {
                        return Err(Error::Syntax {
                            line: l0,
                            col: c0,
                            expected: vec!["`\"`".into()],
                            found: "end of line".into(),
                        })
                    }
                    _ => s.push(c),
                }
            }
            out.push(Token { tok: Tok::Quoted(s), line: l0, col: c0 });
        } else if is_bare_char(c) {
            let mut s = String::new();
            while let Some(&c) = chars.peek() {
                if !is_bare_char(c) {
                    break;
                }
                s.push(c);
                chars.next();
                bump(c, &mut line, &mut col);
            }
            out.push(Token { tok: Tok::Word(s), line: l0, col: c0 });
        } else {
            return Err(Error::Syntax {
                line: l0,
                col: c0,
                expected: vec!["identifier".into(), "punctuation".into()],
                found: format!("`{c}`"),
            });
        }
    }
    out.push(Token { tok: Tok::Eof, line, col });
    Ok(out)
}
