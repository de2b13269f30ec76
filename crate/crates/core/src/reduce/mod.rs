//! Ring systems and group systems, their text format, compilers in both
//! directions, exhaustive solvers and equisolvability checks.

mod circuit;
mod corpus;
mod g2r;
mod r2g;
mod solve;

use std::fmt;
use std::sync::Arc;

pub use circuit::{polynomial_to_circuit, Circuit, Gate, Operand};
pub use corpus::{
    compile_other_side, context_of, load_corpus, reparses, run_roundtrip, CorpusEntry, RoundtripEntry, RoundtripReport,
};
pub use g2r::{compile_group_to_ring, encode_bounded_elementary, GroupVarEncoding};
pub use r2g::{compile_ring_to_group, SizeReport};
pub use solve::{
    solve_group_system, solve_ring_system, verify_equisolvability, Equisolvability, PairReport, Verdict,
    DEFAULT_ASSIGNMENT_BUDGET,
};

use crate::chevalley::{representation_for, RepKind, Representation};
use crate::error::{Error, Result};
use crate::group::GroupContext;
use crate::rings::{Expr, ExprParser, FinRing, Poly, PolyRing, Ring, RingSpec};
use crate::rootsys::{RootSystem, RootSystemId};
use crate::words::{parse_word_at, Word};

/// A trailing `# key text` comment; `map` notes carry variable provenance.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Note {
    pub key: String,
    pub text: String,
}

impl Note {
    pub fn new(key: &str, text: impl Into<String>) -> Self {
        Note { key: key.into(), text: text.into() }
    }

    pub fn map(src: &str, tgt: &[String]) -> Self {
        Note::new("map", format!("{src} -> {}", tgt.join(",")))
    }
}

/// `(source variable, target variables)` from the `# map` notes.
pub fn provenance(notes: &[Note]) -> Vec<(String, Vec<String>)> {
    notes
        .iter()
        .filter(|n| n.key == "map")
        .filter_map(|n| {
            let (src, tgt) = n.text.split_once("->")?;
            let tgt = tgt.split(',').map(|s| s.trim().to_string()).filter(|s| !s.is_empty()).collect();
            Some((src.trim().to_string(), tgt))
        })
        .collect()
}

fn note_value<'a>(notes: &'a [Note], key: &str) -> Option<&'a str> {
    notes.iter().find(|n| n.key == key).map(|n| n.text.as_str())
}

/// Polynomial equations over a finite ring.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RingSystem {
    pub ring: RingSpec,
    pub vars: Vec<String>,
    pub equations: Vec<(Expr, Expr)>,
    pub notes: Vec<Note>,
}

impl RingSystem {
    pub fn finite_ring(&self) -> Result<FinRing> {
        FinRing::parse(&self.ring.to_string())
    }

    /// Variables followed by the ring's named constants.
    pub fn poly_ring(&self) -> Result<PolyRing> {
        let ring = self.finite_ring()?;
        let names = self.vars.iter().cloned().chain(ring.symbols().into_iter().map(|(s, _)| s)).collect();
        Ok(PolyRing::from_names(names))
    }

    /// `lhs - rhs` for each equation, over [`RingSystem::poly_ring`].
    pub fn polys(&self) -> Result<Vec<Poly>> {
        let pr = self.poly_ring()?;
        let lookup = |s: &str| pr.names().iter().position(|n| n == s).map(|i| pr.var(i));
        self.equations
            .iter()
            .map(|(l, r)| Ok(pr.sub(&l.eval(&pr, &lookup)?, &r.eval(&pr, &lookup)?)))
            .collect()
    }

    /// Whether `values` (one per variable) solves every equation.
    pub fn holds(&self, ring: &FinRing, values: &[u16]) -> Result<bool> {
        let syms = ring.symbols();
        let lookup = |s: &str| {
            self.vars
                .iter()
                .position(|v| v == s)
                .map(|i| values[i])
                .or_else(|| syms.iter().find(|(n, _)| n == s).map(|(_, v)| *v))
        };
        for (l, r) in &self.equations {
            if l.eval(ring, &lookup)? != r.eval(ring, &lookup)? {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

impl fmt::Display for RingSystem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "ring {};", self.ring)?;
        if !self.vars.is_empty() {
            writeln!(f, "var {};", self.vars.join(", "))?;
        }
        for (l, r) in &self.equations {
            writeln!(f, "eq {l} = {r};")?;
        }
        self.notes.iter().try_for_each(|n| writeln!(f, "# {} {}", n.key, n.text))
    }
}

/// Word equations in `G_π(Φ, R)`.
#[derive(Debug, Clone)]
pub struct GroupSystem {
    pub rep: Arc<Representation>,
    pub ring: RingSpec,
    pub vars: Vec<String>,
    pub equations: Vec<(Word, Word)>,
    pub notes: Vec<Note>,
}

impl PartialEq for GroupSystem {
    fn eq(&self, other: &Self) -> bool {
        self.rep.label() == other.rep.label()
            && self.ring == other.ring
            && self.vars == other.vars
            && self.equations == other.equations
            && self.notes == other.notes
    }
}

impl GroupSystem {
    pub fn rs(&self) -> &RootSystem {
        &self.rep.rs
    }

    pub fn context(&self) -> Result<GroupContext<FinRing>> {
        Ok(GroupContext::new(self.rep.clone(), FinRing::parse(&self.ring.to_string())?))
    }

    /// `lhs · rhs⁻¹` for each equation.
    pub fn words(&self) -> Vec<Word> {
        self.equations
            .iter()
            .map(|(l, r)| match r {
                Word::Identity => l.clone(),
                _ => Word::prod(vec![l.clone(), r.clone().inv()]),
            })
            .collect()
    }

    pub fn header(&self) -> String {
        format!("group {} {};", self.rep.label(), self.ring)
    }
}

impl fmt::Display for GroupSystem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{}", self.header())?;
        if !self.vars.is_empty() {
            writeln!(f, "var {};", self.vars.join(", "))?;
        }
        let rs = self.rs();
        for (l, r) in &self.equations {
            writeln!(f, "eq {} = {};", l.display(rs), r.display(rs))?;
        }
        self.notes.iter().try_for_each(|n| writeln!(f, "# {} {}", n.key, n.text))
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum System {
    Ring(RingSystem),
    Group(GroupSystem),
}

impl System {
    pub fn notes(&self) -> &[Note] {
        match self {
            System::Ring(s) => &s.notes,
            System::Group(s) => &s.notes,
        }
    }

    /// The `# expect sat|unsat` annotation, if present.
    pub fn expected(&self) -> Option<bool> {
        match note_value(self.notes(), "expect")?.trim() {
            "sat" => Some(true),
            "unsat" => Some(false),
            _ => None,
        }
    }
}

impl fmt::Display for System {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            System::Ring(s) => s.fmt(f),
            System::Group(s) => s.fmt(f),
        }
    }
}

struct Statement<'a> {
    text: &'a str,
    start: usize,
}

/// Line and column (1-based) of byte offset `pos` in `src`.
fn line_col(src: &str, pos: usize) -> (usize, usize) {
    let before = &src[..pos.min(src.len())];
    let line = before.matches('\n').count() + 1;
    let col = before.len() - before.rfind('\n').map_or(0, |i| i + 1) + 1;
    (line, col)
}

/// Splits on `;` outside brackets; `#` starts a comment running to the end of the line.
fn split_statements<'s>(src: &'s str) -> Result<(Vec<Statement<'s>>, Vec<Note>)> {
    let bytes = src.as_bytes();
    let mut stmts = Vec::new();
    let mut notes = Vec::new();
    let mut pieces: Vec<(usize, usize)> = Vec::new();
    let mut depth = 0i32;
    let mut start = 0;
    let mut i = 0;
    let flush = |pieces: &mut Vec<(usize, usize)>, stmts: &mut Vec<Statement<'s>>| -> Result<()> {
        pieces.retain(|&(a, b)| !src[a..b].trim().is_empty());
        match pieces.as_slice() {
            [] => {}
            [(a, b)] => {
                let raw = &src[*a..*b];
                let trimmed = raw.trim_start();
                stmts.push(Statement { text: trimmed.trim_end(), start: a + raw.len() - trimmed.len() });
            }
            _ => return Err(syntax_at(src, pieces[1].0, "comment inside a statement")),
        }
        pieces.clear();
        Ok(())
    };
    while i < bytes.len() {
        match bytes[i] {
            b'#' => {
                let end = src[i..].find('\n').map_or(src.len(), |k| i + k);
                let body = src[i + 1..end].trim();
                let (key, text) = body.split_once(char::is_whitespace).unwrap_or((body, ""));
                if !key.is_empty() {
                    notes.push(Note::new(key, text.trim()));
                }
                pieces.push((start, i));
                start = end;
                i = end;
                continue;
            }
            b'(' | b'[' => depth += 1,
            b')' | b']' => depth -= 1,
            b';' if depth == 0 => {
                pieces.push((start, i));
                flush(&mut pieces, &mut stmts)?;
                start = i + 1;
            }
            _ => {}
        }
        i += 1;
    }
    pieces.push((start, src.len()));
    flush(&mut pieces, &mut stmts)?;
    if depth != 0 {
        return Err(syntax_at(src, src.len(), "unbalanced brackets"));
    }
    Ok((stmts, notes))
}

/// Rebases an error from a statement-local parser onto the whole source.
fn relocate(src: &str, st: &Statement, offset: usize, e: Error) -> Error {
    match e {
        Error::Syntax { col, msg, .. } => {
            let (line, col) = line_col(src, st.start + offset + col - 1);
            Error::Syntax { line, col, msg }
        }
        other => other,
    }
}

fn syntax_at(src: &str, pos: usize, msg: impl Into<String>) -> Error {
    let (line, col) = line_col(src, pos);
    Error::Syntax { line, col, msg: msg.into() }
}

fn keyword<'a>(st: &Statement<'a>) -> (&'a str, &'a str, usize) {
    let kw_len = st.text.find(|c: char| !c.is_ascii_alphabetic()).unwrap_or(st.text.len());
    let rest = &st.text[kw_len..];
    (&st.text[..kw_len], rest, kw_len)
}

fn parse_var_list(src: &str, st: &Statement, rest: &str, offset: usize, out: &mut Vec<String>) -> Result<()> {
    let mut p = ExprParser::new(rest, 1, 0);
    loop {
        let name = p.ident().ok_or_else(|| relocate(src, st, offset, p.error("expected a variable name")))?;
        if out.contains(&name) {
            return Err(relocate(src, st, offset, p.error(format!("variable `{name}` declared twice"))));
        }
        out.push(name);
        if !p.eat(b',') {
            break;
        }
    }
    if !p.at_end() {
        return Err(relocate(src, st, offset, p.error("unexpected trailing input")));
    }
    Ok(())
}

fn check_expr_symbols(e: &Expr, vars: &[String], consts: &[String], allow_div: bool) -> Result<()> {
    fn no_div(e: &Expr) -> bool {
        match e {
            Expr::Div(..) => false,
            Expr::Int(_) | Expr::Sym(_) => true,
            Expr::Neg(a) | Expr::Pow(a, _) => no_div(a),
            Expr::Add(a, b) | Expr::Sub(a, b) | Expr::Mul(a, b) => no_div(a) && no_div(b),
        }
    }
    let mut syms = Vec::new();
    e.symbols(&mut syms);
    match syms.into_iter().find(|s| !vars.contains(s) && !consts.contains(s)) {
        Some(s) => Err(Error::UnknownSymbol(s)),
        None if !allow_div && !no_div(e) => Err(Error::UnknownSymbol("/".into())),
        None => Ok(()),
    }
}

pub fn parse_system(src: &str) -> Result<System> {
    let (stmts, _) = split_statements(src)?;
    let first = stmts.first().ok_or_else(|| syntax_at(src, 0, "missing header"))?;
    match keyword(first).0 {
        "ring" => parse_ring_system(src).map(System::Ring),
        "group" => parse_group_system(src).map(System::Group),
        _ => Err(syntax_at(src, first.start, "expected `ring` or `group` header")),
    }
}

pub fn parse_ring_system(src: &str) -> Result<RingSystem> {
    let (stmts, notes) = split_statements(src)?;
    let first = stmts.first().ok_or_else(|| syntax_at(src, 0, "missing header"))?;
    let (kw, rest, _) = keyword(first);
    if kw != "ring" {
        return Err(syntax_at(src, first.start, "expected `ring <spec>`"));
    }
    let ring = RingSpec::parse(rest.trim())?;
    if !ring.is_finite() {
        return Err(Error::InfiniteRing);
    }
    let consts: Vec<String> = FinRing::parse(&ring.to_string())?.symbols().into_iter().map(|(s, _)| s).collect();
    let mut vars = Vec::new();
    let mut equations = Vec::new();
    for st in &stmts[1..] {
        let (kw, rest, off) = keyword(st);
        match kw {
            "var" => parse_var_list(src, st, rest, off, &mut vars)?,
            "eq" => {
                let mut p = ExprParser::new(rest, 1, 0);
                let lhs = p.expr().map_err(|e| relocate(src, st, off, e))?;
                p.expect(b'=').map_err(|e| relocate(src, st, off, e))?;
                let rhs = p.expr().map_err(|e| relocate(src, st, off, e))?;
                if !p.at_end() {
                    return Err(relocate(src, st, off, p.error("unexpected trailing input")));
                }
                check_expr_symbols(&lhs, &vars, &consts, false)?;
                check_expr_symbols(&rhs, &vars, &consts, false)?;
                equations.push((lhs, rhs));
            }
            _ => return Err(syntax_at(src, st.start, "expected `var` or `eq`")),
        }
    }
    Ok(RingSystem { ring, vars, equations, notes })
}

fn check_word(w: &Word, vars: &[String], consts: &[String]) -> Result<()> {
    let mut vs = Vec::new();
    w.vars(&mut vs);
    if let Some(v) = vs.into_iter().find(|v| !vars.contains(v)) {
        return Err(Error::UnknownSymbol(v));
    }
    let mut lits = Vec::new();
    w.literals(&mut lits);
    lits.iter().try_for_each(|l| check_expr_symbols(&l.param, &[], consts, true))
}

pub fn parse_group_system(src: &str) -> Result<GroupSystem> {
    let (stmts, notes) = split_statements(src)?;
    let first = stmts.first().ok_or_else(|| syntax_at(src, 0, "missing header"))?;
    let (kw, rest, _) = keyword(first);
    let parts: Vec<&str> = rest.split_whitespace().collect();
    if kw != "group" || parts.len() != 3 {
        return Err(syntax_at(src, first.start, "expected `group <system> <rep> <ring>`"));
    }
    let id: RootSystemId = parts[0].parse()?;
    let rep = representation_for(id, RepKind::parse(parts[1])?)?;
    let ring = RingSpec::parse(parts[2])?;
    if !ring.is_finite() {
        return Err(Error::InfiniteRing);
    }
    let consts: Vec<String> = FinRing::parse(&ring.to_string())?.symbols().into_iter().map(|(s, _)| s).collect();
    let mut vars = Vec::new();
    let mut equations = Vec::new();
    for st in &stmts[1..] {
        let (kw, rest, off) = keyword(st);
        match kw {
            "var" => parse_var_list(src, st, rest, off, &mut vars)?,
            "eq" => {
                let mut p = ExprParser::new(rest, 1, 0);
                let lhs = parse_word_at(&mut p, &rep.rs).map_err(|e| relocate(src, st, off, e))?;
                p.expect(b'=').map_err(|e| relocate(src, st, off, e))?;
                let rhs = parse_word_at(&mut p, &rep.rs).map_err(|e| relocate(src, st, off, e))?;
                if !p.at_end() {
                    return Err(relocate(src, st, off, p.error("unexpected trailing input")));
                }
                check_word(&lhs, &vars, &consts)?;
                check_word(&rhs, &vars, &consts)?;
                equations.push((lhs, rhs));
            }
            _ => return Err(syntax_at(src, st.start, "expected `var` or `eq`")),
        }
    }
    Ok(GroupSystem { rep, ring, vars, equations, notes })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ring_round_trip() {
        let s = parse_ring_system("ring Z/3; var x; eq x^2 - 2 = 0").unwrap();
        assert_eq!(s.vars, ["x"]);
        let text = s.to_string();
        assert_eq!(text, "ring Z/3;\nvar x;\neq x^2 - 2 = 0;\n");
        assert_eq!(parse_ring_system(&text).unwrap(), s);
    }

    #[test]
    fn group_round_trip() {
        let s = parse_group_system("group C2 sp Z/3; var v; eq [v, x(a1;1)] = 1").unwrap();
        let text = s.to_string();
        assert_eq!(parse_group_system(&text).unwrap(), s);
        let s = parse_group_system("group A2 sl GF(4);\nvar u, v;\neq u*v^-1*x(a1+a2;g+1) = [u, w(a1;1)];\n# map a -> u,v\n").unwrap();
        assert_eq!(provenance(&s.notes), vec![("a".to_string(), vec!["u".to_string(), "v".to_string()])]);
        assert_eq!(parse_group_system(&s.to_string()).unwrap(), s);
    }

    #[test]
    fn syntax_errors_carry_position() {
        match parse_ring_system("ring Z/3;\nvar x;\neq x^ = 0;") {
            Err(Error::Syntax { line, col, .. }) => assert_eq!((line, col), (3, 7)),
            other => panic!("{other:?}"),
        }
        assert!(matches!(parse_ring_system("ring Z/3; eq y = 0;"), Err(Error::UnknownSymbol(_))));
        assert!(matches!(parse_group_system("group A2 sl GF(2); var v; eq x(e9;1) = v;"), Err(Error::UnknownSymbol(_))));
        assert!(matches!(parse_group_system("group A2 sl GF(2); var v; eq [v, x(a1;1) = 1;"), Err(Error::Syntax { .. })));
    }

    #[test]
    fn ring_polys_and_holds() {
        let s = parse_ring_system("ring GF(4); var x; eq x^2 + x = 1").unwrap();
        let ps = s.polys().unwrap();
        assert_eq!(ps.len(), 1);
        let ring = s.finite_ring().unwrap();
        let sols: Vec<u16> = ring.elements().unwrap().into_iter().filter(|&a| s.holds(&ring, &[a]).unwrap()).collect();
        assert_eq!(sols.len(), 2);
    }
}
