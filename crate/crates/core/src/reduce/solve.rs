use std::collections::HashMap;
use std::fmt;

use super::{g2r, provenance, r2g, GroupSystem, RingSystem, System};
use crate::chevalley::derive_commutator_table;
use crate::dioph::RingInterpretation;
use crate::error::{Error, Result};
use crate::group::{enumerate_group, GroupContext, GroupTable};
use crate::matrix::Matrix;
use crate::rings::{FinRing, Ring};
use crate::words::{solve_words, Evaluator, SolveMode, WordSystem};

pub const DEFAULT_ASSIGNMENT_BUDGET: u64 = 50_000_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Verdict {
    Sat,
    Unsat,
    BudgetExceeded,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::Sat => "SAT",
            Verdict::Unsat => "UNSAT",
            Verdict::BudgetExceeded => "BUDGET",
        })
    }
}

#[derive(Debug, Clone)]
pub struct Solution<W> {
    pub satisfiable: bool,
    pub witness: Option<W>,
    /// Number of solutions, in counting mode.
    pub count: Option<u64>,
    pub nodes: u64,
}

impl<W> Solution<W> {
    pub fn verdict(&self) -> Verdict {
        if self.satisfiable {
            Verdict::Sat
        } else {
            Verdict::Unsat
        }
    }
}

struct CompiledPoly {
    terms: Vec<(u16, Vec<(usize, u32)>)>,
    vars: Vec<usize>,
}

struct RingSearch<'a> {
    ring: &'a FinRing,
    elems: Vec<u16>,
    polys: Vec<CompiledPoly>,
    var_polys: Vec<Vec<usize>>,
    open: Vec<usize>,
    value: Vec<Option<u16>>,
    trail: Vec<usize>,
    nodes: u64,
    budget: u64,
    count_all: bool,
    count: u64,
    witness: Option<Vec<u16>>,
}

impl RingSearch<'_> {
    fn eval(&self, p: usize, extra: Option<(usize, u16)>) -> u16 {
        let r = self.ring;
        let mut acc = r.zero();
        for (c, factors) in &self.polys[p].terms {
            let mut t = *c;
            for &(v, e) in factors {
                let x = match extra {
                    Some((u, val)) if u == v => val,
                    _ => self.value[v].expect("assigned"),
                };
                t = r.mul(&t, &r.pow(&x, e as u64));
            }
            acc = r.add(&acc, &t);
        }
        acc
    }

    /// Returns `false` if a fully assigned polynomial became nonzero.
    fn assign(&mut self, v: usize, val: u16) -> bool {
        self.value[v] = Some(val);
        self.trail.push(v);
        let mut ok = true;
        for k in 0..self.var_polys[v].len() {
            let p = self.var_polys[v][k];
            self.open[p] -= 1;
            if self.open[p] == 0 && ok && self.eval(p, None) != 0 {
                ok = false;
            }
        }
        ok
    }

    fn undo(&mut self, mark: usize) {
        while self.trail.len() > mark {
            let v = self.trail.pop().unwrap();
            self.value[v] = None;
            for &p in &self.var_polys[v] {
                self.open[p] += 1;
            }
        }
    }

    fn roots(&self, p: usize) -> (usize, Vec<u16>) {
        let u = *self.polys[p].vars.iter().find(|&&v| self.value[v].is_none()).unwrap();
        (u, self.elems.iter().copied().filter(|&x| self.eval(p, Some((u, x))) == 0).collect())
    }

    /// Assigns variables forced by polynomials with one open variable.
    /// Returns `None` on conflict, else the smallest multi-root branch.
    fn propagate(&mut self) -> Option<Option<(usize, Vec<u16>)>> {
        'outer: loop {
            let mut best: Option<(usize, Vec<u16>)> = None;
            for p in 0..self.polys.len() {
                if self.open[p] != 1 {
                    continue;
                }
                let (u, roots) = self.roots(p);
                match roots.len() {
                    0 => return None,
                    1 => {
                        if !self.assign(u, roots[0]) {
                            return None;
                        }
                        continue 'outer;
                    }
                    n if best.as_ref().is_none_or(|b| n < b.1.len()) => best = Some((u, roots)),
                    _ => {}
                }
            }
            return Some(best);
        }
    }

    fn search(&mut self) -> Result<bool> {
        self.nodes += 1;
        if self.nodes > self.budget {
            return Err(Error::BudgetExceeded);
        }
        let mark = self.trail.len();
        let Some(branch) = self.propagate() else {
            self.undo(mark);
            return Ok(false);
        };
        let branch = branch.or_else(|| {
            let p = (0..self.polys.len()).filter(|&p| self.open[p] > 0).min_by_key(|&p| self.open[p])?;
            let u = *self.polys[p].vars.iter().find(|&&v| self.value[v].is_none())?;
            Some((u, self.elems.clone()))
        });
        match branch {
            None => {
                let free = self.value.iter().filter(|v| v.is_none()).count() as u32;
                self.count = self.count.saturating_add((self.elems.len() as u64).saturating_pow(free));
                if self.witness.is_none() {
                    self.witness = Some(self.value.iter().map(|v| v.unwrap_or(0)).collect());
                }
                if !self.count_all {
                    return Ok(true);
                }
            }
            Some((u, candidates)) => {
                for x in candidates {
                    let m = self.trail.len();
                    if self.assign(u, x) && self.search()? {
                        return Ok(true);
                    }
                    self.undo(m);
                }
            }
        }
        self.undo(mark);
        Ok(false)
    }
}

/// Exhaustive search with propagation through single-open-variable polynomials.
pub fn solve_ring_system(sys: &RingSystem, count: bool, budget: u64) -> Result<Solution<Vec<u16>>> {
    let ring = sys.finite_ring()?;
    let n = sys.vars.len();
    let syms = ring.symbols();
    let mut polys = Vec::new();
    for p in sys.polys()? {
        if p.is_zero() {
            continue;
        }
        let mut terms = Vec::new();
        let mut vars = Vec::new();
        for (m, c) in p.terms() {
            let mut coeff = ring.from_int(c);
            let mut factors = Vec::new();
            for (v, &e) in m.0.iter().enumerate().filter(|(_, &e)| e > 0) {
                if v < n {
                    factors.push((v, e));
                    if !vars.contains(&v) {
                        vars.push(v);
                    }
                } else {
                    coeff = ring.mul(&coeff, &ring.pow(&syms[v - n].1, e as u64));
                }
            }
            terms.push((coeff, factors));
        }
        polys.push(CompiledPoly { terms, vars });
    }
    let mut var_polys = vec![Vec::new(); n];
    for (i, p) in polys.iter().enumerate() {
        p.vars.iter().for_each(|&v| var_polys[v].push(i));
    }
    let mut s = RingSearch {
        ring: &ring,
        elems: ring.elements()?,
        open: polys.iter().map(|p| p.vars.len()).collect(),
        polys,
        var_polys,
        value: vec![None; n],
        trail: Vec::new(),
        nodes: 0,
        budget,
        count_all: count,
        count: 0,
        witness: None,
    };
    // constant polynomials
    if (0..s.polys.len()).any(|p| s.open[p] == 0 && s.eval(p, None) != 0) {
        return Ok(Solution { satisfiable: false, witness: None, count: count.then_some(0), nodes: 0 });
    }
    s.search()?;
    let witness = s.witness.take();
    if let Some(w) = &witness {
        if !sys.holds(&ring, w)? {
            return Err(Error::MalformedTable("ring solver produced a non-solution".into()));
        }
    }
    Ok(Solution { satisfiable: witness.is_some(), witness, count: count.then_some(s.count), nodes: s.nodes })
}

/// A context with its enumerated group.
pub struct GroupUniverse {
    pub ctx: GroupContext<FinRing>,
    pub table: GroupTable<u16>,
}

impl GroupUniverse {
    pub fn build(sys: &GroupSystem, element_cap: usize) -> Result<Self> {
        let ctx = sys.context()?;
        let table = enumerate_group(&ctx, element_cap)?;
        Ok(GroupUniverse { ctx, table })
    }

    pub fn solve(&self, sys: &GroupSystem, count: bool, budget: u64) -> Result<Solution<Vec<Matrix<u16>>>> {
        let ev = Evaluator::new(&self.ctx, Some(&self.table));
        let ws = WordSystem::compile(&ev, &sys.vars, &sys.words())?;
        let mode = if count { SolveMode::Count } else { SolveMode::First };
        let out = solve_words(&ev, &self.table, &ws, &mode, budget)?;
        if let Some(w) = &out.witness {
            if !self.holds(sys, w)? {
                return Err(Error::MalformedTable("word solver produced a non-solution".into()));
            }
        }
        Ok(Solution { satisfiable: out.satisfiable, witness: out.witness, count: count.then_some(out.count), nodes: out.nodes })
    }

    /// Direct evaluation of every equation, with each value checked to be in the group.
    pub fn holds(&self, sys: &GroupSystem, values: &[Matrix<u16>]) -> Result<bool> {
        if values.iter().any(|g| !self.table.contains(g)) {
            return Ok(false);
        }
        let ev = Evaluator::new(&self.ctx, None);
        let lookup = |v: &str| sys.vars.iter().position(|n| n == v).map(|i| values[i].clone());
        for w in sys.words() {
            if !ev.eval(&w, &lookup)?.is_identity(&self.ctx.ring) {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

pub fn solve_group_system(
    sys: &GroupSystem,
    count: bool,
    element_cap: usize,
    budget: u64,
) -> Result<Solution<Vec<Matrix<u16>>>> {
    GroupUniverse::build(sys, element_cap)?.solve(sys, count, budget)
}

#[derive(Debug, Clone)]
pub struct PairReport {
    pub name: String,
    pub source: Verdict,
    pub target: Verdict,
    /// Whether the target witness pulled back to a checked source solution.
    pub pullback: Option<bool>,
}

impl PairReport {
    pub fn agrees(&self) -> bool {
        self.source != Verdict::BudgetExceeded && self.source == self.target && self.pullback != Some(false)
    }
}

#[derive(Debug, Clone, Default)]
pub struct Equisolvability {
    pub pairs: Vec<PairReport>,
}

impl Equisolvability {
    pub fn all_agree(&self) -> bool {
        self.pairs.iter().all(PairReport::agrees)
    }
}

#[derive(Default)]
struct Universes(HashMap<String, GroupUniverse>);

impl Universes {
    fn get(&mut self, sys: &GroupSystem, cap: usize) -> Result<&GroupUniverse> {
        let key = sys.header();
        if !self.0.contains_key(&key) {
            self.0.insert(key.clone(), GroupUniverse::build(sys, cap)?);
        }
        Ok(&self.0[&key])
    }
}

fn verdict_of<W>(r: Result<Solution<W>>) -> Result<(Verdict, Option<W>)> {
    match r {
        Ok(s) => Ok((s.verdict(), s.witness)),
        Err(Error::BudgetExceeded) => Ok((Verdict::BudgetExceeded, None)),
        Err(e) => Err(e),
    }
}

/// Solves both sides of each `(name, source, compiled)` triple and pulls
/// every target witness back through the `# map` notes.
pub fn verify_equisolvability(
    pairs: &[(String, System, System)],
    element_cap: usize,
    budget: u64,
) -> Result<Equisolvability> {
    let mut universes = Universes::default();
    let mut report = Equisolvability::default();
    for (name, src, tgt) in pairs {
        let mut solve = |s: &System| -> Result<(Verdict, Option<Witness>)> {
            Ok(match s {
                System::Ring(r) => {
                    let (v, w) = verdict_of(solve_ring_system(r, false, budget))?;
                    (v, w.map(Witness::Ring))
                }
                System::Group(g) => {
                    let (v, w) = verdict_of(universes.get(g, element_cap)?.solve(g, false, budget))?;
                    (v, w.map(Witness::Group))
                }
            })
        };
        let (source, _) = solve(src)?;
        let (target, witness) = solve(tgt)?;
        let pullback = match (witness, src, tgt) {
            (Some(Witness::Group(w)), System::Ring(r), System::Group(g)) => Some(pull_back_to_ring(r, g, &w)?),
            (Some(Witness::Ring(w)), System::Group(g), System::Ring(r)) => {
                let u = universes.get(g, element_cap)?;
                let values = g2r::pull_back(g, r, &u.ctx, &w)?;
                Some(values.is_some_and(|v| u.holds(g, &v).unwrap_or(false)))
            }
            _ => None,
        };
        report.pairs.push(PairReport { name: name.clone(), source, target, pullback });
    }
    Ok(report)
}

enum Witness {
    Ring(Vec<u16>),
    Group(Vec<Matrix<u16>>),
}

/// Decodes the carrier elements named by the provenance map and checks the source equations.
pub fn pull_back_to_ring(src: &RingSystem, tgt: &GroupSystem, witness: &[Matrix<u16>]) -> Result<bool> {
    let ctx = tgt.context()?;
    let comm = derive_commutator_table(&tgt.rep)?;
    let carrier = r2g::carrier_of(tgt)?;
    let interp = RingInterpretation::new(&ctx, &comm, carrier)?;
    let map = provenance(&tgt.notes);
    let mut values = Vec::new();
    for v in &src.vars {
        let Some((_, tv)) = map.iter().find(|(s, _)| s == v) else { return Ok(false) };
        let Some(i) = tv.first().and_then(|t| tgt.vars.iter().position(|n| n == t)) else { return Ok(false) };
        match interp.decode(&witness[i]) {
            Some(a) => values.push(a),
            None => return Ok(false),
        }
    }
    src.holds(&ctx.ring, &values)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::DEFAULT_ELEMENT_CAP;
    use crate::reduce::{
        compile_group_to_ring, compile_ring_to_group, parse_group_system, parse_ring_system, GroupVarEncoding,
    };

    #[test]
    fn ring_solver_basics() {
        let s = parse_ring_system("ring GF(3); var x; eq x^2 - 2 = 0;").unwrap();
        assert!(!solve_ring_system(&s, false, 1000).unwrap().satisfiable);
        let s = parse_ring_system("ring GF(3); var x; eq x^2 - 1 = 0;").unwrap();
        assert_eq!(solve_ring_system(&s, true, 1000).unwrap().count, Some(2));
        let s = parse_ring_system("ring GF(2);").unwrap();
        let out = solve_ring_system(&s, false, 10).unwrap();
        assert!(out.satisfiable && out.witness == Some(vec![]));
        let s = parse_ring_system("ring GF(4); var x, y; eq x^2 + x + 1 = 0; eq x*y = 1;").unwrap();
        assert_eq!(solve_ring_system(&s, true, 1000).unwrap().count, Some(2));
        let s = parse_ring_system("ring Z/4; var x, y, z; eq 2*x = 0;").unwrap();
        assert_eq!(solve_ring_system(&s, true, 1000).unwrap().count, Some(2 * 16));
    }

    #[test]
    fn ring_solver_counts_match_brute_force() {
        let text = "ring Z/6; var a, b, c; eq a*b + c^2 = 1; eq a + b*c = 3*c;";
        let s = parse_ring_system(text).unwrap();
        let ring = s.finite_ring().unwrap();
        let mut brute = 0;
        for a in 0..6 {
            for b in 0..6 {
                for c in 0..6 {
                    brute += s.holds(&ring, &[a, b, c]).unwrap() as u64;
                }
            }
        }
        assert_eq!(solve_ring_system(&s, true, 100_000).unwrap().count, Some(brute));
    }

    #[test]
    fn group_solver_counts_transvection_centralizer() {
        let s = parse_group_system("group A2 sl GF(2); var v; eq [v, x(a1;1)] = 1;").unwrap();
        let out = solve_group_system(&s, true, DEFAULT_ELEMENT_CAP, u64::MAX).unwrap();
        assert_eq!(out.count, Some(8));
    }

    fn sl3() -> std::sync::Arc<crate::chevalley::Representation> {
        crate::chevalley::representation_for("A2".parse().unwrap(), crate::chevalley::RepKind::NaturalSl).unwrap()
    }

    #[test]
    fn compiled_examples_are_equisolvable() {
        let mut pairs = Vec::new();
        for text in [
            "ring GF(3); var x; eq x^2 - 1 = 0;",
            "ring GF(3); var x; eq x^2 - 2 = 0;",
            "ring GF(4); var x; eq x^2 + x + 1 = 0;",
        ] {
            let src = parse_ring_system(text).unwrap();
            let (tgt, _) = compile_ring_to_group(&src, sl3(), None).unwrap();
            pairs.push((text.to_string(), System::Ring(src), System::Group(tgt)));
        }
        let g = parse_group_system("group A2 sl GF(2); var v; eq v*v = x(a1;1);").unwrap();
        let r = compile_group_to_ring(&g, GroupVarEncoding::Scheme).unwrap();
        pairs.push(("square root".into(), System::Group(g), System::Ring(r)));
        let report = verify_equisolvability(&pairs, DEFAULT_ELEMENT_CAP, DEFAULT_ASSIGNMENT_BUDGET).unwrap();
        assert!(report.all_agree(), "{report:?}");
        let sat: Vec<_> = report.pairs.iter().map(|p| p.pullback).collect();
        assert_eq!(sat, vec![Some(true), None, Some(true), Some(true)]);
    }

    #[test]
    fn dropped_membership_equation_is_caught() {
        let src = parse_ring_system("ring GF(2); var x; eq x + x = 1;").unwrap();
        let (mut tgt, _) = compile_ring_to_group(&src, sl3(), None).unwrap();
        let k = tgt
            .equations
            .iter()
            .position(|(l, _)| l.display(tgt.rs()) == "[w4, x(a2;1)]*w2^-1")
            .expect("membership equation of the first product operand");
        tgt.equations.remove(k);
        let pairs = [("corrupted".to_string(), System::Ring(src), System::Group(tgt))];
        let report = verify_equisolvability(&pairs, DEFAULT_ELEMENT_CAP, DEFAULT_ASSIGNMENT_BUDGET).unwrap();
        assert_eq!(report.pairs[0].source, Verdict::Unsat);
        assert_eq!(report.pairs[0].target, Verdict::Sat);
        assert!(!report.all_agree());
    }
}
