//! S-expression reader for formulas.

use std::collections::BTreeSet;

use thiserror::Error;

use super::formula::{ClassTerm, Formula, Var};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ParseError {
    #[error("syntax error at byte {pos}: {msg}")]
    Syntax { pos: usize, msg: String },
    #[error("scope error: {0}")]
    Scope(String),
}

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Open,
    Close,
    Word(String),
}

fn is_ident_char(c: char) -> bool {
    c.is_ascii_alphanumeric() || matches!(c, '_' | '\'' | '.')
}

fn tokenize(text: &str) -> Result<Vec<(usize, Tok)>, ParseError> {
    let mut out = Vec::new();
    let mut it = text.char_indices().peekable();
    while let Some(&(i, c)) = it.peek() {
        match c {
            '(' => {
                out.push((i, Tok::Open));
                it.next();
            }
            ')' => {
                out.push((i, Tok::Close));
                it.next();
            }
            c if c.is_whitespace() => {
                it.next();
            }
            '=' => {
                out.push((i, Tok::Word("=".into())));
                it.next();
            }
            c if is_ident_char(c) => {
                let mut w = String::new();
                while let Some(&(_, c)) = it.peek() {
                    if !is_ident_char(c) {
                        break;
                    }
                    w.push(c);
                    it.next();
                }
                out.push((i, Tok::Word(w)));
            }
            other => {
                return Err(ParseError::Syntax {
                    pos: i,
                    msg: format!("unexpected character {other:?}"),
                })
            }
        }
    }
    Ok(out)
}

struct Parser {
    toks: Vec<(usize, Tok)>,
    at: usize,
    end: usize,
}

impl Parser {
    fn pos(&self) -> usize {
        self.toks.get(self.at).map(|t| t.0).unwrap_or(self.end)
    }

    fn err<T>(&self, msg: impl Into<String>) -> Result<T, ParseError> {
        Err(ParseError::Syntax {
            pos: self.pos(),
            msg: msg.into(),
        })
    }

    fn next(&mut self) -> Option<Tok> {
        let t = self.toks.get(self.at).map(|t| t.1.clone());
        self.at += 1;
        t
    }

    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.at).map(|t| &t.1)
    }

    fn expect_open(&mut self) -> Result<(), ParseError> {
        match self.peek() {
            Some(Tok::Open) => {
                self.at += 1;
                Ok(())
            }
            _ => self.err("expected '('"),
        }
    }

    fn expect_close(&mut self) -> Result<(), ParseError> {
        match self.peek() {
            Some(Tok::Close) => {
                self.at += 1;
                Ok(())
            }
            _ => self.err("expected ')'"),
        }
    }

    fn ident(&mut self) -> Result<Var, ParseError> {
        match self.peek() {
            Some(Tok::Word(w)) if w != "=" => {
                let w = w.clone();
                self.at += 1;
                Ok(w)
            }
            _ => self.err("expected a variable"),
        }
    }

    fn class_term(&mut self) -> Result<ClassTerm, ParseError> {
        if let Some(Tok::Open) = self.peek() {
            self.at += 1;
            match self.next() {
                Some(Tok::Word(w)) if w == "below" => {}
                _ => {
                    self.at -= 1;
                    return self.err("expected 'below'");
                }
            }
            let c = self.ident()?;
            let x = self.ident()?;
            self.expect_close()?;
            Ok(ClassTerm::Below(c, x))
        } else {
            Ok(ClassTerm::Sym(self.ident()?))
        }
    }

    fn formula(&mut self) -> Result<Formula, ParseError> {
        use Formula::*;
        self.expect_open()?;
        let head_pos = self.pos();
        let head = match self.next() {
            Some(Tok::Word(w)) => w,
            _ => {
                self.at -= 1;
                return self.err("expected an operator");
            }
        };
        let b = |f: Formula| Box::new(f);
        let f = match head.as_str() {
            "=" => Eq(self.ident()?, self.ident()?),
            "in" => In(self.ident()?, self.ident()?),
            "inclass" => {
                let mut args = vec![self.ident()?];
                if matches!(self.peek(), Some(Tok::Word(_)))
                    && !matches!(self.toks.get(self.at + 1), Some((_, Tok::Close)))
                {
                    args.push(self.ident()?);
                }
                InClass(args, self.class_term()?)
            }
            "tr" => Tr(self.ident()?, self.ident()?, self.ident()?),
            "code" => Code(self.class_term()?),
            "pen" => Pen(self.ident()?, self.class_term()?),
            "iso" => Iso(self.class_term()?, self.class_term()?),
            "vin" => Vin(self.class_term()?, self.class_term()?),
            "inH" => InH(self.ident()?),
            "subsetOfH" => SubsetOfH(self.ident()?),
            "not" => Not(b(self.formula()?)),
            "implies" => Implies(b(self.formula()?), b(self.formula()?)),
            "and" | "or" => {
                let mut fs = Vec::new();
                while let Some(Tok::Open) = self.peek() {
                    fs.push(self.formula()?);
                }
                if head == "and" {
                    And(fs)
                } else {
                    Or(fs)
                }
            }
            "ex" => Exists(self.ident()?, b(self.formula()?)),
            "all" => Forall(self.ident()?, b(self.formula()?)),
            "exin" => ExistsIn(self.ident()?, self.ident()?, b(self.formula()?)),
            "allin" => ForallIn(self.ident()?, self.ident()?, b(self.formula()?)),
            "exC" => ExistsClass(self.ident()?, b(self.formula()?)),
            "allC" => ForallClass(self.ident()?, b(self.formula()?)),
            other => {
                return Err(ParseError::Syntax {
                    pos: head_pos,
                    msg: format!("unknown operator {other:?}"),
                })
            }
        };
        self.expect_close()?;
        Ok(f)
    }
}

/// Parses one formula and checks scoping.
pub fn parse_formula(text: &str) -> Result<Formula, ParseError> {
    let toks = tokenize(text)?;
    let mut p = Parser {
        toks,
        at: 0,
        end: text.len(),
    };
    let f = p.formula()?;
    if p.at < p.toks.len() {
        return p.err("trailing input");
    }
    check_scope(&f)?;
    Ok(f)
}

/// Rejects names used both as set and as class variables, and `(exin x x φ)`.
pub fn check_scope(f: &Formula) -> Result<(), ParseError> {
    let mut sets = BTreeSet::new();
    let mut classes = BTreeSet::new();
    sorts(f, &mut sets, &mut classes)?;
    if let Some(n) = sets.intersection(&classes).next() {
        return Err(ParseError::Scope(format!(
            "{n} is used both as a set and as a class variable"
        )));
    }
    Ok(())
}

fn sorts(
    f: &Formula,
    sets: &mut BTreeSet<Var>,
    classes: &mut BTreeSet<Var>,
) -> Result<(), ParseError> {
    use Formula::*;
    let mut term = |t: &ClassTerm, sets: &mut BTreeSet<Var>| match t {
        ClassTerm::Sym(c) => {
            classes.insert(c.clone());
        }
        ClassTerm::Below(c, x) => {
            classes.insert(c.clone());
            sets.insert(x.clone());
        }
    };
    match f {
        Eq(u, v) | In(u, v) => {
            sets.insert(u.clone());
            sets.insert(v.clone());
        }
        InClass(us, c) => {
            sets.extend(us.iter().cloned());
            term(c, sets);
        }
        Tr(u, v, w) => {
            sets.extend([u.clone(), v.clone(), w.clone()]);
        }
        Code(c) => term(c, sets),
        Pen(x, c) => {
            sets.insert(x.clone());
            term(c, sets);
        }
        Iso(a, b) | Vin(a, b) => {
            term(a, sets);
            term(b, sets);
        }
        InH(x) | SubsetOfH(x) | Exists(x, _) | Forall(x, _) => {
            sets.insert(x.clone());
        }
        ExistsIn(x, y, _) | ForallIn(x, y, _) => {
            if x == y {
                return Err(ParseError::Scope(format!(
                    "bounded quantifier binds {x} over itself"
                )));
            }
            sets.insert(x.clone());
            sets.insert(y.clone());
        }
        ExistsClass(x, _) | ForallClass(x, _) => {
            classes.insert(x.clone());
        }
        _ => {}
    }
    for c in f.children() {
        sorts(c, sets, classes)?;
    }
    Ok(())
}

impl std::str::FromStr for Formula {
    type Err = ParseError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        parse_formula(s)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::logic::formula::build::*;

    #[test]
    fn examples() {
        assert_eq!(
            parse_formula("(ex x (all y (not (in y x))))").unwrap(),
            ex("x", all("y", not(mem("y", "x"))))
        );
        assert_eq!(parse_formula("(in x x)").unwrap(), mem("x", "x"));
        assert_eq!(
            parse_formula("(exC X (inclass a X))").unwrap(),
            ex_c("X", inclass("a", "X"))
        );
    }

    #[test]
    fn round_trip_canonical_text() {
        for s in [
            "(and)",
            "(or (= x y) (tr a b c))",
            "(inclass u v (below Y z))",
            "(implies (iso X (below Y n)) (vin X Y))",
            "(allin z x (ex j (inclass j z Y)))",
            "(allC X (pen n X))",
            "(and (code T) (inH x) (subsetOfH y))",
        ] {
            assert_eq!(parse_formula(s).unwrap().to_string(), s);
        }
    }

    #[test]
    fn errors() {
        assert!(matches!(
            parse_formula("(in x"),
            Err(ParseError::Syntax { pos: 5, .. })
        ));
        assert!(matches!(
            parse_formula("(foo x)"),
            Err(ParseError::Syntax { pos: 1, .. })
        ));
        assert!(matches!(
            parse_formula("(in x y) z"),
            Err(ParseError::Syntax { pos: 9, .. })
        ));
        assert!(matches!(
            parse_formula("(in x @)"),
            Err(ParseError::Syntax { pos: 6, .. })
        ));
        assert!(matches!(
            parse_formula("(exC X (in X y))"),
            Err(ParseError::Scope(_))
        ));
        assert!(matches!(
            parse_formula("(exin x x (= x x))"),
            Err(ParseError::Scope(_))
        ));
    }
}
