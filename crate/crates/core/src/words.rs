//! Group words over named variables and generator literals, and an exhaustive
//! solver for systems of word equations over an enumerated finite group.

use std::collections::BTreeSet;

use crate::error::{Error, Result};
use crate::group::{GenKind, GeneratorLiteral, GroupContext, GroupTable};
use crate::matrix::Matrix;
use crate::rings::{Expr, ExprParser, Ring};
use crate::rootsys::RootSystem;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Word {
    Identity,
    Var(String),
    Gen(GeneratorLiteral),
    Inv(Box<Word>),
    Pow(Box<Word>, i64),
    Prod(Vec<Word>),
    /// `[a, b] = a b a⁻¹ b⁻¹`
    Comm(Box<Word>, Box<Word>),
}

impl Word {
    pub fn var(name: &str) -> Word {
        Word::Var(name.to_string())
    }

    pub fn gen(kind: GenKind, root: usize, param: i64) -> Word {
        // negative literals in the shape the parser produces
        let abs = Expr::Int(param.unsigned_abs().into());
        let param = if param < 0 { Expr::Neg(Box::new(abs)) } else { abs };
        Word::Gen(GeneratorLiteral { kind, root, param })
    }

    pub fn x(root: usize, param: i64) -> Word {
        Word::gen(GenKind::X, root, param)
    }

    pub fn x_expr(root: usize, param: Expr) -> Word {
        Word::Gen(GeneratorLiteral { kind: GenKind::X, root, param })
    }

    pub fn inv(self) -> Word {
        Word::Inv(Box::new(self))
    }

    pub fn comm(a: Word, b: Word) -> Word {
        Word::Comm(Box::new(a), Box::new(b))
    }

    /// Product with nested products flattened and identities dropped.
    pub fn prod(factors: Vec<Word>) -> Word {
        let mut out = Vec::new();
        for f in factors {
            match f {
                Word::Prod(inner) => out.extend(inner),
                Word::Identity => {}
                f => out.push(f),
            }
        }
        match out.len() {
            0 => Word::Identity,
            1 => out.pop().unwrap(),
            _ => Word::Prod(out),
        }
    }

    /// Variables in order of first occurrence.
    pub fn vars(&self, out: &mut Vec<String>) {
        match self {
            Word::Identity | Word::Gen(_) => {}
            Word::Var(v) => {
                if !out.contains(v) {
                    out.push(v.clone());
                }
            }
            Word::Inv(a) | Word::Pow(a, _) => a.vars(out),
            Word::Prod(fs) => fs.iter().for_each(|f| f.vars(out)),
            Word::Comm(a, b) => {
                a.vars(out);
                b.vars(out);
            }
        }
    }

    pub fn literals(&self, out: &mut Vec<GeneratorLiteral>) {
        match self {
            Word::Identity | Word::Var(_) => {}
            Word::Gen(g) => {
                if !out.contains(g) {
                    out.push(g.clone());
                }
            }
            Word::Inv(a) | Word::Pow(a, _) => a.literals(out),
            Word::Prod(fs) => fs.iter().for_each(|f| f.literals(out)),
            Word::Comm(a, b) => {
                a.literals(out);
                b.literals(out);
            }
        }
    }

    /// Renames variables through `f`.
    pub fn rename(&self, f: &dyn Fn(&str) -> String) -> Word {
        match self {
            Word::Identity | Word::Gen(_) => self.clone(),
            Word::Var(v) => Word::Var(f(v)),
            Word::Inv(a) => Word::Inv(Box::new(a.rename(f))),
            Word::Pow(a, k) => Word::Pow(Box::new(a.rename(f)), *k),
            Word::Prod(fs) => Word::Prod(fs.iter().map(|w| w.rename(f)).collect()),
            Word::Comm(a, b) => Word::Comm(Box::new(a.rename(f)), Box::new(b.rename(f))),
        }
    }

    fn is_atom(&self) -> bool {
        matches!(self, Word::Identity | Word::Var(_) | Word::Gen(_) | Word::Comm(..))
    }

    pub fn display(&self, rs: &RootSystem) -> String {
        let wrap = |w: &Word| if w.is_atom() { w.display(rs) } else { format!("({})", w.display(rs)) };
        match self {
            Word::Identity => "1".into(),
            Word::Var(v) => v.clone(),
            Word::Gen(g) => g.display(rs),
            Word::Inv(a) => format!("{}^-1", wrap(a)),
            Word::Pow(a, k) => format!("{}^{k}", wrap(a)),
            Word::Prod(fs) => fs
                .iter()
                .map(|f| if matches!(f, Word::Prod(_)) { format!("({})", f.display(rs)) } else { f.display(rs) })
                .collect::<Vec<_>>()
                .join("*"),
            Word::Comm(a, b) => format!("[{}, {}]", a.display(rs), b.display(rs)),
        }
    }
}

/// Parses a group word: variables, `1`, `x(<root>;<param>)`, `w(..)`, `h(..)`,
/// `[a, b]`, parentheses, `^k` with `k` a possibly negative integer, and `*`.
pub fn parse_word(text: &str, rs: &RootSystem) -> Result<Word> {
    let mut p = ExprParser::new(text, 1, 0);
    let w = parse_word_at(&mut p, rs)?;
    if !p.at_end() {
        return Err(p.error("unexpected trailing input"));
    }
    Ok(w)
}

pub(crate) fn parse_word_at(p: &mut ExprParser, rs: &RootSystem) -> Result<Word> {
    let mut factors = vec![parse_factor(p, rs)?];
    while p.eat(b'*') {
        factors.push(parse_factor(p, rs)?);
    }
    Ok(if factors.len() == 1 { factors.pop().unwrap() } else { Word::prod(factors) })
}

fn parse_factor(p: &mut ExprParser, rs: &RootSystem) -> Result<Word> {
    let mut w = parse_atom(p, rs)?;
    while p.eat(b'^') {
        let neg = p.eat(b'-');
        let k = p.integer().ok_or_else(|| p.error("expected an integer exponent"))?;
        let k: i64 = k.try_into().map_err(|_| p.error("exponent too large"))?;
        let k = if neg { -k } else { k };
        w = if k == -1 { Word::Inv(Box::new(w)) } else { Word::Pow(Box::new(w), k) };
    }
    Ok(w)
}

fn parse_atom(p: &mut ExprParser, rs: &RootSystem) -> Result<Word> {
    if p.eat(b'(') {
        let w = parse_word_at(p, rs)?;
        p.expect(b')')?;
        return Ok(w);
    }
    if p.eat(b'[') {
        let a = parse_word_at(p, rs)?;
        p.expect(b',')?;
        let b = parse_word_at(p, rs)?;
        p.expect(b']')?;
        return Ok(Word::comm(a, b));
    }
    if p.peek() == Some(b'1') && !p.peek_at(1).is_some_and(|c| c.is_ascii_digit()) {
        p.pos += 1;
        return Ok(Word::Identity);
    }
    let Some(name) = p.ident() else {
        return Err(p.error("expected a group word"));
    };
    let kind = match name.as_str() {
        "x" => Some(GenKind::X),
        "w" => Some(GenKind::W),
        "h" => Some(GenKind::H),
        _ => None,
    };
    match kind {
        Some(kind) if p.eat(b'(') => {
            let root_text = p.take_until(b";)");
            let root = rs.parse_root(root_text).map_err(|_| Error::UnknownSymbol(root_text.to_string()))?;
            p.expect(b';')?;
            let param = p.expr()?;
            p.expect(b')')?;
            Ok(Word::Gen(GeneratorLiteral { kind, root, param }))
        }
        _ => Ok(Word::Var(name)),
    }
}

/// Resolves inverses through the group table when possible.
pub struct Evaluator<'a, R: Ring> {
    pub ctx: &'a GroupContext<R>,
    pub table: Option<&'a GroupTable<R::Elem>>,
}

impl<'a, R: Ring> Evaluator<'a, R> {
    pub fn new(ctx: &'a GroupContext<R>, table: Option<&'a GroupTable<R::Elem>>) -> Self {
        Evaluator { ctx, table }
    }

    pub fn inverse(&self, g: &Matrix<R::Elem>) -> Result<Matrix<R::Elem>> {
        if let Some(t) = self.table {
            if let Some(i) = t.index_of(g) {
                return Ok(t.element(t.inverse_index(i)).clone());
            }
        }
        self.ctx.inverse(g)
    }

    /// Evaluates a word with variable values from `lookup`.
    pub fn eval(&self, w: &Word, lookup: &dyn Fn(&str) -> Option<Matrix<R::Elem>>) -> Result<Matrix<R::Elem>> {
        let ctx = self.ctx;
        Ok(match w {
            Word::Identity => ctx.identity(),
            Word::Var(v) => lookup(v).ok_or_else(|| Error::UnknownSymbol(v.clone()))?,
            Word::Gen(g) => ctx.generator(g, &|_| None)?,
            Word::Inv(a) => self.inverse(&self.eval(a, lookup)?)?,
            Word::Pow(a, k) => {
                let base = self.eval(a, lookup)?;
                let base = if *k < 0 { self.inverse(&base)? } else { base };
                let mut acc = ctx.identity();
                for _ in 0..k.unsigned_abs() {
                    acc = ctx.mul(&acc, &base);
                }
                acc
            }
            Word::Prod(fs) => {
                let mut acc = ctx.identity();
                for f in fs {
                    acc = ctx.mul(&acc, &self.eval(f, lookup)?);
                }
                acc
            }
            Word::Comm(a, b) => ctx.commutator(&self.eval(a, lookup)?, &self.eval(b, lookup)?)?,
        })
    }
}

#[derive(Debug, Clone)]
enum Flat<E> {
    Const(Matrix<E>),
    Var(usize, bool),
}

/// Equations `w_i = 1` compiled to flat factor lists over variable indices.
#[derive(Debug, Clone)]
pub struct WordSystem<E> {
    pub vars: Vec<String>,
    eqs: Vec<Vec<Flat<E>>>,
    /// Distinct variables per equation with occurrence counts.
    occurrences: Vec<Vec<(usize, usize)>>,
}

impl<E: Clone + Eq + std::hash::Hash> WordSystem<E> {
    pub fn compile<R: Ring<Elem = E>>(ev: &Evaluator<R>, vars: &[String], equations: &[Word]) -> Result<Self> {
        let mut eqs = Vec::new();
        let mut occurrences = Vec::new();
        for w in equations {
            let mut flat = Vec::new();
            flatten(ev, vars, w, false, &mut flat)?;
            let merged = merge_consts(ev, flat);
            let mut occ: Vec<(usize, usize)> = Vec::new();
            for f in &merged {
                if let Flat::Var(v, _) = f {
                    match occ.iter_mut().find(|(x, _)| x == v) {
                        Some(e) => e.1 += 1,
                        None => occ.push((*v, 1)),
                    }
                }
            }
            eqs.push(merged);
            occurrences.push(occ);
        }
        Ok(WordSystem { vars: vars.to_vec(), eqs, occurrences })
    }

    pub fn num_equations(&self) -> usize {
        self.eqs.len()
    }

    fn eval_eq<R: Ring<Elem = E>>(&self, ev: &Evaluator<R>, e: usize, values: &[Option<Matrix<E>>]) -> Result<Matrix<E>> {
        let mut acc = ev.ctx.identity();
        for f in &self.eqs[e] {
            acc = match f {
                Flat::Const(m) => ev.ctx.mul(&acc, m),
                Flat::Var(v, inv) => {
                    let m = values[*v].as_ref().expect("assigned");
                    if *inv {
                        ev.ctx.mul(&acc, &ev.inverse(m)?)
                    } else {
                        ev.ctx.mul(&acc, m)
                    }
                }
            };
        }
        Ok(acc)
    }

    /// Whether a full assignment satisfies every equation.
    pub fn holds<R: Ring<Elem = E>>(&self, ev: &Evaluator<R>, values: &[Matrix<E>]) -> Result<bool> {
        let values: Vec<Option<Matrix<E>>> = values.iter().cloned().map(Some).collect();
        for e in 0..self.eqs.len() {
            if !self.eval_eq(ev, e, &values)?.is_identity(&ev.ctx.ring) {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

fn flatten<R: Ring>(ev: &Evaluator<R>, vars: &[String], w: &Word, inv: bool, out: &mut Vec<Flat<R::Elem>>) -> Result<()> {
    match w {
        Word::Identity => {}
        Word::Var(v) => {
            let i = vars.iter().position(|x| x == v).ok_or_else(|| Error::UnknownSymbol(v.clone()))?;
            out.push(Flat::Var(i, inv));
        }
        Word::Gen(_) => {
            let m = ev.eval(w, &|_| None)?;
            out.push(Flat::Const(if inv { ev.inverse(&m)? } else { m }));
        }
        Word::Inv(a) => flatten(ev, vars, a, !inv, out)?,
        Word::Pow(a, k) => {
            let inner_inv = inv ^ (*k < 0);
            for _ in 0..k.unsigned_abs() {
                flatten(ev, vars, a, inner_inv, out)?;
            }
        }
        Word::Prod(fs) => {
            if inv {
                for f in fs.iter().rev() {
                    flatten(ev, vars, f, true, out)?;
                }
            } else {
                for f in fs {
                    flatten(ev, vars, f, false, out)?;
                }
            }
        }
        Word::Comm(a, b) => {
            let seq = [(a, false), (b, false), (a, true), (b, true)];
            if inv {
                // (a b a⁻¹ b⁻¹)⁻¹ = b a b⁻¹ a⁻¹
                for (x, i) in seq.iter().rev() {
                    flatten(ev, vars, x, !i, out)?;
                }
            } else {
                for (x, i) in seq {
                    flatten(ev, vars, x, i, out)?;
                }
            }
        }
    }
    Ok(())
}

fn merge_consts<R: Ring>(ev: &Evaluator<R>, flat: Vec<Flat<R::Elem>>) -> Vec<Flat<R::Elem>> {
    let mut out: Vec<Flat<R::Elem>> = Vec::new();
    for f in flat {
        match (out.last_mut(), f) {
            (Some(Flat::Const(a)), Flat::Const(b)) => *a = ev.ctx.mul(a, &b),
            (_, f) => out.push(f),
        }
    }
    out.retain(|f| !matches!(f, Flat::Const(m) if m.is_identity(&ev.ctx.ring)));
    out
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SolveMode {
    /// Stop at the first solution.
    First,
    /// Count every solution.
    Count,
    /// Collect the distinct values of the listed variables over all solutions.
    Project(Vec<usize>),
}

#[derive(Debug, Clone)]
pub struct SolveOutcome<E> {
    pub satisfiable: bool,
    pub witness: Option<Vec<Matrix<E>>>,
    /// Number of solutions found (all of them unless the mode is `First`).
    pub count: u64,
    /// Table indices of projected values.
    pub projections: BTreeSet<Vec<usize>>,
    /// Assignments tried.
    pub nodes: u64,
}

/// Exhaustive search over `table` with two reductions: a variable occurring
/// once in an equation whose other variables are bound is solved for
/// directly, and branching uses the smallest domain after single-variable
/// equations have been applied as filters.
pub fn solve_words<R: Ring>(
    ev: &Evaluator<R>,
    table: &GroupTable<R::Elem>,
    sys: &WordSystem<R::Elem>,
    mode: &SolveMode,
    budget: u64,
) -> Result<SolveOutcome<R::Elem>> {
    let n = sys.vars.len();
    let mut var_eqs = vec![Vec::new(); n];
    let mut unary = vec![Vec::new(); n];
    for (e, occ) in sys.occurrences.iter().enumerate() {
        for &(v, _) in occ {
            var_eqs[v].push(e);
        }
        if occ.len() == 1 {
            unary[occ[0].0].push(e);
        }
    }
    let mut s = Search {
        ev,
        table,
        sys,
        var_eqs,
        unary,
        domains: vec![None; n],
        values: vec![None; n],
        mode,
        out: SolveOutcome {
            satisfiable: false,
            witness: None,
            count: 0,
            projections: BTreeSet::new(),
            nodes: 0,
        },
        budget,
    };
    for e in 0..sys.eqs.len() {
        if sys.occurrences[e].is_empty() && !sys.eval_eq(ev, e, &s.values)?.is_identity(&ev.ctx.ring) {
            return Ok(s.out);
        }
    }
    s.run()?;
    Ok(s.out)
}

struct Search<'a, 'b, R: Ring> {
    ev: &'a Evaluator<'b, R>,
    table: &'a GroupTable<R::Elem>,
    sys: &'a WordSystem<R::Elem>,
    var_eqs: Vec<Vec<usize>>,
    unary: Vec<Vec<usize>>,
    domains: Vec<Option<Vec<u32>>>,
    values: Vec<Option<Matrix<R::Elem>>>,
    mode: &'a SolveMode,
    out: SolveOutcome<R::Elem>,
    budget: u64,
}

impl<R: Ring> Search<'_, '_, R> {
    fn tick(&mut self) -> Result<()> {
        self.out.nodes += 1;
        if self.out.nodes > self.budget {
            return Err(Error::BudgetExceeded);
        }
        Ok(())
    }

    /// Checks the equations completed by binding `v`.
    fn consistent(&self, v: usize, skip_unary: bool) -> Result<bool> {
        for &e in &self.var_eqs[v] {
            if skip_unary && self.sys.occurrences[e].len() == 1 {
                continue;
            }
            if self.sys.occurrences[e].iter().all(|(x, _)| self.values[*x].is_some())
                && !self.sys.eval_eq(self.ev, e, &self.values)?.is_identity(&self.ev.ctx.ring)
            {
                return Ok(false);
            }
        }
        Ok(true)
    }

    fn deducible(&self) -> Option<(usize, usize)> {
        for (e, occ) in self.sys.occurrences.iter().enumerate() {
            let mut free = occ.iter().filter(|(x, _)| self.values[*x].is_none());
            if let (Some(&(v, 1)), None) = (free.next(), free.next()) {
                return Some((e, v));
            }
        }
        None
    }

    /// Solves `A · v^{±1} · B = 1` for `v`.
    fn deduce(&self, e: usize, v: usize) -> Result<Matrix<R::Elem>> {
        let ctx = self.ev.ctx;
        let flat = &self.sys.eqs[e];
        let pos = flat.iter().position(|f| matches!(f, Flat::Var(x, _) if *x == v)).unwrap();
        let product = |fs: &[Flat<R::Elem>]| -> Result<Matrix<R::Elem>> {
            let mut acc = ctx.identity();
            for f in fs {
                acc = match f {
                    Flat::Const(m) => ctx.mul(&acc, m),
                    Flat::Var(x, inv) => {
                        let m = self.values[*x].as_ref().unwrap();
                        if *inv {
                            ctx.mul(&acc, &self.ev.inverse(m)?)
                        } else {
                            ctx.mul(&acc, m)
                        }
                    }
                };
            }
            Ok(acc)
        };
        let a = product(&flat[..pos])?;
        let b = product(&flat[pos + 1..])?;
        let ba = ctx.mul(&b, &a);
        match flat[pos] {
            Flat::Var(_, true) => Ok(ba),
            _ => self.ev.inverse(&ba),
        }
    }

    fn domain(&mut self, v: usize) -> Result<usize> {
        if self.domains[v].is_none() {
            let d: Vec<u32> = if self.unary[v].is_empty() {
                (0..self.table.len() as u32).collect()
            } else {
                use rayon::prelude::*;
                let (ev, sys, table, eqs) = (self.ev, self.sys, self.table, &self.unary[v]);
                let n = self.values.len();
                (0..table.len() as u32)
                    .into_par_iter()
                    .filter(|&i| {
                        let mut vals = vec![None; n];
                        vals[v] = Some(table.element(i as usize).clone());
                        eqs.iter().all(|&e| {
                            sys.eval_eq(ev, e, &vals).map(|m| m.is_identity(&ev.ctx.ring)).unwrap_or(false)
                        })
                    })
                    .collect()
            };
            self.domains[v] = Some(d);
        }
        Ok(self.domains[v].as_ref().unwrap().len())
    }

    fn record(&mut self) -> bool {
        self.out.satisfiable = true;
        self.out.count += 1;
        if self.out.witness.is_none() {
            self.out.witness = Some(self.values.iter().map(|v| v.clone().unwrap()).collect());
        }
        if let SolveMode::Project(vs) = self.mode {
            let key = vs
                .iter()
                .map(|&v| self.table.index_of(self.values[v].as_ref().unwrap()).expect("group element"))
                .collect();
            self.out.projections.insert(key);
        }
        *self.mode == SolveMode::First
    }

    /// Returns `true` when the search should stop.
    fn run(&mut self) -> Result<bool> {
        let mut trail = Vec::new();
        let undo = |s: &mut Self, trail: &[usize]| trail.iter().for_each(|&v| s.values[v] = None);
        while let Some((e, v)) = self.deducible() {
            self.tick()?;
            let val = self.deduce(e, v)?;
            self.values[v] = Some(val);
            trail.push(v);
            if !self.consistent(v, false)? {
                undo(self, &trail);
                return Ok(false);
            }
        }
        let unbound: Vec<usize> = (0..self.values.len()).filter(|&v| self.values[v].is_none()).collect();
        if unbound.is_empty() {
            let stop = self.record();
            undo(self, &trail);
            return Ok(stop);
        }
        let mut best = unbound[0];
        let mut best_len = usize::MAX;
        for v in unbound {
            let len = self.domain(v)?;
            if len < best_len {
                best = v;
                best_len = len;
            }
        }
        let domain = self.domains[best].clone().unwrap();
        for i in domain {
            self.tick()?;
            self.values[best] = Some(self.table.element(i as usize).clone());
            if self.consistent(best, true)? && self.run()? {
                self.values[best] = None;
                undo(self, &trail);
                return Ok(true);
            }
        }
        self.values[best] = None;
        undo(self, &trail);
        Ok(false)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::chevalley::{representation_for, RepKind};
    use crate::group::{enumerate_group, DEFAULT_ELEMENT_CAP};
    use crate::rings::FinRing;

    fn sl3(ring: &str) -> GroupContext<FinRing> {
        GroupContext::new(representation_for("A2".parse().unwrap(), RepKind::NaturalSl).unwrap(), FinRing::parse(ring).unwrap())
    }

    #[test]
    fn parse_and_print() {
        let c = sl3("GF(2)");
        let rs = c.rs();
        for s in [
            "[v, x(a1;1)]",
            "v^-1*x(a1+a2;2)*y",
            "(v*y)^-1",
            "x*[y, x(a2;1)]^-1",
            "1",
            "w(-a1;1)*h(a2;g + 1)",
            "(v^-1)^-1",
            "[[a, b], c]^3",
        ] {
            let w = parse_word(s, rs).unwrap();
            assert_eq!(w.display(rs), s);
            assert_eq!(parse_word(&w.display(rs), rs).unwrap(), w);
        }
        assert!(matches!(parse_word("x(a3;1)", rs), Err(Error::UnknownSymbol(_))));
        assert!(matches!(parse_word("[v, x(a1;1)", rs), Err(Error::Syntax { .. })));
        assert!(matches!(parse_word("v^", rs), Err(Error::Syntax { .. })));
    }

    #[test]
    fn flattening_matches_evaluation() {
        let c = sl3("GF(3)");
        let rs = c.rs();
        let ev = Evaluator::new(&c, None);
        let w = parse_word("[v*x(a1;1), y^-1]^-1*(v*y)^2*[x(a2;2), v]", rs).unwrap();
        let vars = vec!["v".to_string(), "y".to_string()];
        let sys = WordSystem::compile(&ev, &vars, std::slice::from_ref(&w)).unwrap();
        let v = c.x(rs.simple()[1], &2);
        let y = c.mul(&c.x(rs.neg(0), &1), &c.x(2, &2));
        let direct = ev
            .eval(&w, &|s| match s {
                "v" => Some(v.clone()),
                "y" => Some(y.clone()),
                _ => None,
            })
            .unwrap();
        let via = sys.eval_eq(&ev, 0, &[Some(v), Some(y)]).unwrap();
        assert_eq!(direct, via);
    }

    #[test]
    fn centralizer_of_transvection() {
        let c = sl3("GF(2)");
        let table = enumerate_group(&c, DEFAULT_ELEMENT_CAP).unwrap();
        let ev = Evaluator::new(&c, Some(&table));
        let rs = c.rs();
        let eq = parse_word("[v, x(a1;1)]", rs).unwrap();
        let sys = WordSystem::compile(&ev, &["v".into()], &[eq]).unwrap();
        let out = solve_words(&ev, &table, &sys, &SolveMode::Count, u64::MAX).unwrap();
        // 21 transvections form one class in a group of order 168
        assert_eq!(out.count, 8);
        let direct = crate::group::centralizer(&c, &table, &[c.x_one(rs.simple()[0]).clone()]);
        assert_eq!(out.count as usize, direct.len());
        let empty = WordSystem::compile(&ev, &[], &[]).unwrap();
        let out = solve_words(&ev, &table, &empty, &SolveMode::First, 10).unwrap();
        assert!(out.satisfiable && out.witness.unwrap().is_empty());
    }

    #[test]
    fn deduction_agrees_with_brute_force() {
        let c = sl3("GF(2)");
        let table = enumerate_group(&c, DEFAULT_ELEMENT_CAP).unwrap();
        let ev = Evaluator::new(&c, Some(&table));
        let rs = c.rs();
        let vars: Vec<String> = vec!["v".into(), "y".into()];
        let eqs = vec![parse_word("v*y*v^-1*x(a1;1)^-1", rs).unwrap(), parse_word("[y, x(a2;1)]", rs).unwrap()];
        let sys = WordSystem::compile(&ev, &vars, &eqs).unwrap();
        let out = solve_words(&ev, &table, &sys, &SolveMode::Count, u64::MAX).unwrap();
        let mut brute = 0;
        for v in table.elements() {
            for y in table.elements() {
                if sys.holds(&ev, &[v.clone(), y.clone()]).unwrap() {
                    brute += 1;
                }
            }
        }
        assert_eq!(out.count, brute);
        assert!(brute > 0);
        assert!(out.nodes < 168 * 20);
    }
}
