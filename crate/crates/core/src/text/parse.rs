use super::lexer::{tokenize, Tok, Token};
use super::RESERVED;
use crate::error::{Error, Result};
use crate::model::{Alphabet, Dmts, Formula, HmlDecl, Interner, Kind, Moves, Naa, Spec, SupportMode};

struct Parser {
    toks: Vec<Token>,
    pos: usize,
}

impl Parser {
    fn peek(&self) -> &Tok {
        &self.toks[self.pos].tok
    }

    fn advance(&mut self) -> Tok {
        let t = self.toks[self.pos].tok.clone();
        if self.pos + 1 < self.toks.len() {
            self.pos += 1;
        }
        t
    }

    fn error(&self, expected: &[&str]) -> Error {
        let t = &self.toks[self.pos];
        Error::Syntax {
            line: t.line,
            col: t.col,
            expected: expected.iter().map(|s| s.to_string()).collect(),
            found: t.tok.describe(),
        }
    }

    fn at_sym(&self, c: char) -> bool {
        *self.peek() == Tok::Sym(c)
    }

    fn eat_sym(&mut self, c: char) -> bool {
        let hit = self.at_sym(c);
        if hit {
            self.advance();
        }
        hit
    }

    fn expect_sym(&mut self, c: char) -> Result<()> {
        if self.eat_sym(c) {
            Ok(())
        } else {
            Err(self.error(&[&format!("`{c}`")]))
        }
    }

    fn at_keyword(&self, w: &str) -> bool {
        matches!(self.peek(), Tok::Word(x) if x == w)
    }

    fn expect_keyword(&mut self, w: &str) -> Result<()> {
        if self.at_keyword(w) {
            self.advance();
            Ok(())
        } else {
            Err(self.error(&[&format!("`{w}`")]))
        }
    }

    fn at_ident(&self) -> bool {
        match self.peek() {
            Tok::Word(w) => !RESERVED.contains(&w.as_str()),
            Tok::Quoted(_) => true,
            _ => false,
        }
    }

    fn ident(&mut self) -> Result<String> {
        if !self.at_ident() {
            return Err(self.error(&["identifier"]));
        }
        match self.advance() {
            Tok::Word(w) | Tok::Quoted(w) => Ok(w),
            _ => unreachable!(),
        }
    }

    fn ident_list(&mut self, allow_empty: bool) -> Result<Vec<String>> {
        let mut out = Vec::new();
        if allow_empty && self.at_sym(';') {
            return Ok(out);
        }
        out.push(self.ident()?);
        while self.eat_sym(',') {
            out.push(self.ident()?);
        }
        Ok(out)
    }

    fn action(&mut self, alphabet: &Alphabet) -> Result<usize> {
        let name = self.ident()?;
        alphabet.index_of(&name).ok_or(Error::UnknownAction(name))
    }

    /// `{ (a, t), ... }` with targets interned into `states`.
    fn move_set(&mut self, alphabet: &Alphabet, states: &mut Interner) -> Result<Moves> {
        self.expect_sym('{')?;
        let mut set = Moves::new();
        if self.eat_sym('}') {
            return Ok(set);
        }
        loop {
            self.expect_sym('(')?;
            let a = self.action(alphabet)?;
            self.expect_sym(',')?;
            let t = states.intern(&self.ident()?);
            self.expect_sym(')')?;
            set.push((a, t));
            if self.eat_sym('}') {
                return Ok(set);
            }
            if !self.eat_sym(',') {
                return Err(self.error(&["`,`", "`}`"]));
            }
        }
    }

    fn document(&mut self, mode: SupportMode) -> Result<Spec> {
        let kind = match self.peek() {
            Tok::Word(w) => Kind::from_keyword(w),
            _ => None,
        };
        let Some(kind) = kind else {
            return Err(self.error(&["`lts`", "`mts`", "`dmts`", "`naa`", "`hml`"]));
        };
        self.advance();
        self.expect_sym('{')?;
        self.expect_keyword("alphabet")?;
        let alphabet = Alphabet::new(self.ident_list(false)?)?;
        self.expect_sym(';')?;
        self.expect_keyword("init")?;
        let init = self.ident_list(true)?;
        self.expect_sym(';')?;
        let spec = match kind {
            Kind::Lts | Kind::Mts | Kind::Dmts => self.transition_body(kind, alphabet, init, mode)?,
            Kind::Naa => self.naa_body(alphabet, init)?,
            Kind::Hml => self.hml_body(alphabet, init)?,
        };
        self.expect_sym('}')?;
        if *self.peek() != Tok::Eof {
            return Err(self.error(&["end of input"]));
        }
        Ok(spec)
    }

    fn transition_body(&mut self, kind: Kind, alphabet: Alphabet, init: Vec<String>, mode: SupportMode) -> Result<Spec> {
        let mut states = Interner::default();
        let initials: Vec<usize> = init.iter().map(|s| states.intern(s)).collect();
        let mut may: Vec<Moves> = Vec::new();
        let mut must: Vec<Vec<Moves>> = Vec::new();
        let mut saw_must = false;
        let grow = |may: &mut Vec<Moves>, must: &mut Vec<Vec<Moves>>, n: usize| {
            may.resize(n, Moves::new());
            must.resize(n, Vec::new());
        };
        loop {
            if self.at_keyword("may") {
                self.advance();
                let s = states.intern(&self.ident()?);
                let a = self.action(&alphabet)?;
                let t = states.intern(&self.ident()?);
                self.expect_sym(';')?;
                grow(&mut may, &mut must, states.len());
                may[s].push((a, t));
            } else if self.at_keyword("must") {
                self.advance();
                saw_must = true;
                let s = states.intern(&self.ident()?);
                let set = self.move_set(&alphabet, &mut states)?;
                self.expect_sym(';')?;
                grow(&mut may, &mut must, states.len());
                must[s].push(set);
            } else if self.at_keyword("state") {
                self.advance();
                states.intern(&self.ident()?);
                self.expect_sym(';')?;
            } else if self.at_sym('}') {
                break;
            } else {
                return Err(self.error(&["`may`", "`must`", "`state`", "`}`"]));
            }
        }
        grow(&mut may, &mut must, states.len());
        if kind == Kind::Lts && !saw_must {
            must = may.iter().map(|m| m.iter().map(|&p| vec![p]).collect()).collect();
        }
        let d = Dmts::new(alphabet, states.into_names(), initials, may, must, mode)?;
        match kind {
            Kind::Lts => {
                if d.initials().len() != 1 {
                    return Err(Error::InvariantViolation(format!(
                        "an LTS needs exactly one initial state, found {}",
                        d.initials().len()
                    )));
                }
                d.to_lts().map(Spec::Lts).ok_or_else(|| {
                    Error::InvariantViolation("LTS must-lines have to mirror the may-lines one to one".into())
                })
            }
            Kind::Mts => {
                d.as_mts()?;
                Ok(Spec::Mts(d))
            }
            _ => Ok(Spec::Dmts(d)),
        }
    }

    fn naa_body(&mut self, alphabet: Alphabet, init: Vec<String>) -> Result<Spec> {
        let mut states = Interner::default();
        let initials: Vec<usize> = init.iter().map(|s| states.intern(s)).collect();
        let mut tran: Vec<Option<Vec<Moves>>> = Vec::new();
        loop {
            if self.at_keyword("state") {
                self.advance();
                let name = self.ident()?;
                let s = states.intern(&name);
                self.expect_sym('{')?;
                let mut family = Vec::new();
                if !self.eat_sym('}') {
                    loop {
                        family.push(self.move_set(&alphabet, &mut states)?);
                        if self.eat_sym('}') {
                            break;
                        }
                        if !self.eat_sym(',') {
                            return Err(self.error(&["`,`", "`}`"]));
                        }
                    }
                }
                self.expect_sym(';')?;
                tran.resize(states.len(), None);
                if tran[s].is_some() {
                    return Err(Error::DuplicateState(name));
                }
                tran[s] = Some(family);
            } else if self.at_sym('}') {
                break;
            } else {
                return Err(self.error(&["`state`", "`}`"]));
            }
        }
        tran.resize(states.len(), None);
        let names = states.into_names();
        let tran = tran
            .into_iter()
            .enumerate()
            .map(|(s, f)| f.ok_or_else(|| Error::UnknownState(names[s].clone())))
            .collect::<Result<Vec<_>>>()?;
        Ok(Spec::Naa(Naa::new(alphabet, names, initials, tran)?))
    }

    fn hml_body(&mut self, alphabet: Alphabet, init: Vec<String>) -> Result<Spec> {
        let mut vars = Interner::default();
        let initials: Vec<usize> = init.iter().map(|x| vars.intern(x)).collect();
        let mut decl: Vec<Option<Formula>> = Vec::new();
        while !self.at_sym('}') {
            if !self.at_ident() {
                return Err(self.error(&["identifier", "`}`"]));
            }
            let name = self.ident()?;
            let x = vars.intern(&name);
            self.expect_sym('=')?;
            let f = self.disjunction(&alphabet, &mut vars)?;
            self.expect_sym(';')?;
            decl.resize(vars.len(), None);
            if decl[x].is_some() {
                return Err(Error::InvariantViolation(format!("variable `{name}` is defined twice")));
            }
            decl[x] = Some(f);
        }
        decl.resize(vars.len(), None);
        let names = vars.into_names();
        let decl = decl
            .into_iter()
            .enumerate()
            .map(|(x, f)| f.ok_or_else(|| Error::UnboundVariable(names[x].clone())))
            .collect::<Result<Vec<_>>>()?;
        Ok(Spec::Hml(HmlDecl::new(alphabet, names, initials, decl)?))
    }

    fn disjunction(&mut self, alphabet: &Alphabet, vars: &mut Interner) -> Result<Formula> {
        let mut f = self.conjunction(alphabet, vars)?;
        while self.eat_sym('|') {
            f = Formula::or(f, self.conjunction(alphabet, vars)?);
        }
        Ok(f)
    }

    fn conjunction(&mut self, alphabet: &Alphabet, vars: &mut Interner) -> Result<Formula> {
        let mut f = self.unary(alphabet, vars)?;
        while self.eat_sym('&') {
            f = Formula::and(f, self.unary(alphabet, vars)?);
        }
        Ok(f)
    }

    fn unary(&mut self, alphabet: &Alphabet, vars: &mut Interner) -> Result<Formula> {
        if self.at_keyword("tt") {
            self.advance();
            Ok(Formula::True)
        } else if self.at_keyword("ff") {
            self.advance();
            Ok(Formula::False)
        } else if self.eat_sym('<') {
            let a = self.action(alphabet)?;
            self.expect_sym('>')?;
            Ok(Formula::diamond(a, self.unary(alphabet, vars)?))
        } else if self.eat_sym('[') {
            let a = self.action(alphabet)?;
            self.expect_sym(']')?;
            Ok(Formula::boxed(a, self.unary(alphabet, vars)?))
        } else if self.eat_sym('(') {
            let f = self.disjunction(alphabet, vars)?;
            self.expect_sym(')')?;
            Ok(f)
        } else if self.at_ident() {
            Ok(Formula::Var(vars.intern(&self.ident()?)))
        } else {
            Err(self.error(&["`tt`", "`ff`", "identifier", "`<`", "`[`", "`(`"]))
        }
    }
}

pub(crate) fn parse_document(text: &str, mode: SupportMode) -> Result<Spec> {
    let toks = tokenize(text)?;
    Parser { toks, pos: 0 }.document(mode)
}
