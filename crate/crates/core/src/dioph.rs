//! Γ-sets and double centralizers, positive-primitive definitions of root
//! subgroups, and the ring interpreted on a root subgroup.

use std::collections::BTreeSet;

use crate::chevalley::{CommTerm, CommutatorTable, WeightLattice};
use crate::decomp::peel_left;
use crate::error::{Error, Result};
use crate::group::{center, centralizer, GeneratorLiteral, GroupContext, GroupTable};
use crate::matrix::Matrix;
use crate::rings::{Expr, Ring};
use crate::rootsys::{generate_weyl, Family, RootSystem};
use crate::words::{solve_words, Evaluator, SolveMode, Word, WordSystem};

type M<R> = Matrix<<R as Ring>::Elem>;

/// `Γ_α = {β : [x_β(1), x_α(1)] = 1}` over the context's ring.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GammaSet {
    pub alpha: usize,
    pub members: Vec<usize>,
}

pub fn gamma_set<R: Ring>(ctx: &GroupContext<R>, alpha: usize) -> GammaSet {
    let xa = ctx.x_one(alpha);
    let members = (0..ctx.rs().len()).filter(|&b| ctx.commutes(ctx.x_one(b), xa)).collect();
    GammaSet { alpha, members }
}

fn rank2_doubly_laced(rs: &RootSystem) -> bool {
    matches!(rs.id.family, Family::B | Family::C) && rs.rank() == 2
}

/// Short roots of `C_l` (and of `B_2`), where `C_G(Γ_α)` is larger than `Z·X_α`.
pub fn is_exceptional(rs: &RootSystem, a: usize) -> bool {
    !rs.is_long(a) && (rs.id.family == Family::C || rank2_doubly_laced(rs))
}

/// Root subgroups whose product with the center is the expected `C_G(Γ_α)`.
pub fn predicted_factors(rs: &RootSystem, a: usize) -> Vec<usize> {
    let mut out = vec![a];
    if is_exceptional(rs, a) {
        out.extend((0..rs.len()).filter(|&d| rs.is_long(d) && rs.inner(d, a) > 0));
    }
    out
}

#[derive(Debug, Clone)]
pub struct CentralizerReport {
    pub alpha: usize,
    /// Table indices of `C_G(Γ_α)`.
    pub computed: Vec<usize>,
    /// Table indices of `Z(G)·∏ X_δ` over [`predicted_factors`].
    pub predicted: Vec<usize>,
    /// Computed but not predicted.
    pub unexpected: Vec<usize>,
    /// Predicted but not computed.
    pub missing: Vec<usize>,
}

impl CentralizerReport {
    pub fn equal(&self) -> bool {
        self.unexpected.is_empty() && self.missing.is_empty()
    }

    pub fn verdict(&self) -> &'static str {
        if self.equal() {
            "equal"
        } else {
            "unequal"
        }
    }
}

pub fn double_centralizer_report<R: Ring>(
    ctx: &GroupContext<R>,
    table: &GroupTable<R::Elem>,
    alpha: usize,
) -> Result<CentralizerReport> {
    let gamma: Vec<M<R>> = gamma_set(ctx, alpha).members.iter().map(|&b| ctx.x_one(b).clone()).collect();
    let computed = centralizer(ctx, table, &gamma);
    let z = center(ctx, table)?;
    let elems = ctx.ring.elements()?;
    let mut unipotents = vec![ctx.identity()];
    for r in predicted_factors(ctx.rs(), alpha) {
        unipotents = unipotents.iter().flat_map(|u| elems.iter().map(move |t| (u, t))).map(|(u, t)| ctx.mul(u, &ctx.x(r, t))).collect();
    }
    let mut predicted = BTreeSet::new();
    for u in &unipotents {
        for &c in &z {
            let g = ctx.mul(table.element(c), u);
            let i = table.index_of(&g).ok_or_else(|| Error::MalformedTable("predicted element outside the group".into()))?;
            predicted.insert(i);
        }
    }
    let computed_set: BTreeSet<usize> = computed.iter().copied().collect();
    Ok(CentralizerReport {
        alpha,
        unexpected: computed_set.difference(&predicted).copied().collect(),
        missing: predicted.difference(&computed_set).copied().collect(),
        predicted: predicted.into_iter().collect(),
        computed,
    })
}

/// A positive-primitive formula `∃ y (⋀ w_i = 1)` with free variables first.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PPFormula {
    pub free_vars: Vec<String>,
    pub exist_vars: Vec<String>,
    pub equations: Vec<Word>,
}

impl PPFormula {
    pub fn vars(&self) -> Vec<String> {
        self.free_vars.iter().chain(&self.exist_vars).cloned().collect()
    }

    pub fn constants(&self) -> Vec<GeneratorLiteral> {
        let mut out = Vec::new();
        self.equations.iter().for_each(|w| w.literals(&mut out));
        out
    }

    /// The formula as a group system, with the free variables named in a comment.
    pub fn to_text(&self, header: &str, rs: &RootSystem) -> String {
        let mut s = format!("{header}\n# free {}\n", self.free_vars.join(", "));
        s.push_str(&format!("var {};\n", self.vars().join(", ")));
        for w in &self.equations {
            s.push_str(&format!("eq {} = 1;\n", w.display(rs)));
        }
        s
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Target {
    X(usize),
    /// `{x_{e_1+e_2}(t) x_{2e_2}(t)}` in `C_2`.
    Y,
}

impl Target {
    pub fn label(&self, rs: &RootSystem) -> String {
        match self {
            Target::X(a) => format!("X{}", rs.name(*a)),
            Target::Y => "Y".into(),
        }
    }

    /// `Xa1+a2`, `Xe1+e2` or `Y`.
    pub fn parse(text: &str, rs: &RootSystem) -> Result<Target> {
        match text.trim() {
            "Y" => Ok(Target::Y),
            t => match t.strip_prefix('X') {
                Some(root) => Ok(Target::X(rs.parse_root(root)?)),
                None => Err(Error::UnknownSymbol(text.to_string())),
            },
        }
    }
}

/// The `C_2` roots `2e_1, e_2-e_1, e_1+e_2, 2e_2`.
fn c2_y_roots(rs: &RootSystem) -> Result<[usize; 4]> {
    if !(rs.id.family == Family::C && rs.rank() == 2) {
        return Err(Error::TargetUnavailable("Y is defined for C2 only".into()));
    }
    Ok([rs.parse_root("2e1")?, rs.parse_root("e2-e1")?, rs.parse_root("e1+e2")?, rs.parse_root("2e2")?])
}

/// `(α, β, c)` with `[x_α(t), x_β(u)] = x_γ(c t u)`, `c = ±1`; simple roots tried first.
pub fn single_term_pair(rs: &RootSystem, comm: &CommutatorTable, gamma: usize) -> Option<(usize, usize, i64)> {
    let order: Vec<usize> = rs.simple().iter().copied().chain(0..rs.len()).collect();
    for &a in &order {
        for &b in &order {
            if let [CommTerm { i: 1, j: 1, root, c, .. }] = comm.get(a, b) {
                if *root == gamma && c.abs() == 1 {
                    return Some((a, b, *c));
                }
            }
        }
    }
    None
}

/// `(α, β, γ, δ, c1, c2)` with `[x_α(t), x_β(u)] = x_γ(c1 t u) x_δ(c2 t u²)`, `c1, c2 = ±1`.
fn two_term_pattern(
    rs: &RootSystem,
    comm: &CommutatorTable,
    pick: impl Fn(usize, usize) -> bool,
) -> Option<(usize, usize, usize, usize, i64, i64)> {
    for a in 0..rs.len() {
        for b in 0..rs.len() {
            if let [CommTerm { i: 1, j: 1, root: g, c: c1, .. }, CommTerm { i: 1, j: 2, root: d, c: c2, .. }] =
                comm.get(a, b)
            {
                if c1.abs() == 1 && c2.abs() == 1 && pick(*g, *d) {
                    return Some((a, b, *g, *d, *c1, *c2));
                }
            }
        }
    }
    None
}

/// `c` with `g x_src(1) g⁻¹ = x_dst(c)`, `c = ±1`.
fn conj_sign<R: Ring>(ctx: &GroupContext<R>, g: &M<R>, g_inv: &M<R>, src: usize, dst: usize) -> Result<i64> {
    let m = ctx.mul(&ctx.mul(g, ctx.x_one(src)), g_inv);
    if m == *ctx.x_one(dst) {
        Ok(1)
    } else if m == ctx.x(dst, &ctx.ring.from_i64(-1)) {
        Ok(-1)
    } else {
        Err(Error::MalformedTable("Weyl conjugation does not map root subgroups".into()))
    }
}

fn half_is_unit<R: Ring>(ring: &R) -> bool {
    ring.is_unit(&ring.from_i64(2))
}

/// `w_α(1) = x_α(1) x_{-α}(1)⁻¹ x_α(1)` over the constants `x_β(1)`.
pub fn weyl_word(rs: &RootSystem, a: usize) -> Word {
    Word::prod(vec![Word::x(a, 1), Word::x(rs.neg(a), 1).inv(), Word::x(a, 1)])
}

/// Accumulates equations and existential witnesses for positive-primitive
/// definitions; several definitions can share one builder.
pub struct FormulaBuilder<'a, R: Ring> {
    pub ctx: &'a GroupContext<R>,
    pub comm: &'a CommutatorTable,
    pub vars: Vec<String>,
    pub equations: Vec<Word>,
    prefix: String,
    next: usize,
}

impl<'a, R: Ring> FormulaBuilder<'a, R> {
    pub fn new(ctx: &'a GroupContext<R>, comm: &'a CommutatorTable, prefix: &str) -> Self {
        FormulaBuilder { ctx, comm, vars: Vec::new(), equations: Vec::new(), prefix: prefix.into(), next: 0 }
    }

    pub fn declare(&mut self, name: &str) {
        if !self.vars.iter().any(|v| v == name) {
            self.vars.push(name.to_string());
        }
    }

    pub fn fresh(&mut self) -> String {
        loop {
            self.next += 1;
            let name = format!("{}{}", self.prefix, self.next);
            if !self.vars.contains(&name) {
                self.vars.push(name.clone());
                return name;
            }
        }
    }

    pub fn push(&mut self, w: Word) {
        self.equations.push(w);
    }

    fn rs(&self) -> &'a RootSystem {
        self.ctx.rs()
    }

    /// `v ∈ C_G(Γ_α)`.
    pub fn centralizer(&mut self, v: &str, a: usize) {
        for b in gamma_set(self.ctx, a).members {
            self.push(Word::comm(Word::var(v), Word::x(b, 1)));
        }
    }

    /// `v ∈ X_α` or `v ∈ Z(G)·X_α`; used where a central factor is harmless.
    pub fn modulo_center(&mut self, v: &str, a: usize) -> Result<()> {
        if is_exceptional(self.rs(), a) {
            self.target(v, Target::X(a))
        } else {
            self.centralizer(v, a);
            Ok(())
        }
    }

    /// `v` lies exactly in the target subgroup.
    pub fn target(&mut self, v: &str, target: Target) -> Result<()> {
        let rs = self.rs();
        let g = match target {
            Target::Y => return self.y_set(v),
            Target::X(g) => g,
        };
        let adjoint = self.ctx.rep.lattice == WeightLattice::Adjoint;
        if rank2_doubly_laced(rs) {
            let half = half_is_unit(&self.ctx.ring);
            if !adjoint && !half {
                return Err(Error::TargetUnavailable(format!(
                    "X{} in simply connected {} without 1/2; use Y",
                    rs.name(g),
                    rs.id
                )));
            }
            return if is_exceptional(rs, g) {
                self.rank2_short(v, g, true)
            } else if adjoint {
                self.centralizer(v, g);
                Ok(())
            } else {
                self.rank2_long(v, g)
            };
        }
        if adjoint && !is_exceptional(rs, g) {
            self.centralizer(v, g);
            return Ok(());
        }
        if let Some((a, b, _)) = single_term_pair(rs, self.comm, g) {
            if !is_exceptional(rs, a) {
                let y = self.fresh();
                self.centralizer(&y, a);
                self.push(Word::prod(vec![Word::var(v), Word::comm(Word::var(&y), Word::x(b, 1)).inv()]));
                return Ok(());
            }
        }
        match rs.id.family {
            Family::B if !rs.is_long(g) => {
                let (a, b, _, d, _, _) = two_term_pattern(rs, self.comm, |x, _| x == g)
                    .ok_or_else(|| Error::TargetUnavailable(rs.name(g)))?;
                let y = self.fresh();
                self.target(&y, Target::X(a))?;
                let z = self.fresh();
                self.target(&z, Target::X(d))?;
                self.centralizer(v, g);
                self.push(Word::prod(vec![Word::var(v).inv(), Word::comm(Word::var(&y), Word::x(b, 1)), Word::var(&z)]));
                Ok(())
            }
            Family::C if rs.is_long(g) => {
                let (a, b, s, _, _, _) = two_term_pattern(rs, self.comm, |_, d| d == g)
                    .ok_or_else(|| Error::TargetUnavailable(rs.name(g)))?;
                let y = self.fresh();
                self.centralizer(&y, a);
                let z = self.fresh();
                self.target(&z, Target::X(s))?;
                self.centralizer(v, g);
                self.push(Word::prod(vec![Word::var(v).inv(), Word::comm(Word::var(&y), Word::x(b, 1)), Word::var(&z)]));
                Ok(())
            }
            Family::C => self.cl_short(v, g),
            _ => Err(Error::TargetUnavailable(rs.name(g))),
        }
    }

    /// `X_{e_1-e_3} = [[C_G(Γ_{e_1-e_2}), x_{e_2-e_3}(1)], x_{e_1+e_2}(1)]`, moved to `γ` by the Weyl group.
    fn cl_short(&mut self, v: &str, g: usize) -> Result<()> {
        let rs = self.rs();
        let base = [rs.parse_root("e1-e2")?, rs.parse_root("e2-e3")?, rs.parse_root("e1+e2")?];
        let t0 = rs.parse_root("e1-e3")?;
        let w = generate_weyl(rs, usize::MAX)?
            .into_iter()
            .find(|w| w.apply(t0) == g)
            .ok_or_else(|| Error::TargetUnavailable(rs.name(g)))?;
        let [a, b, c] = base.map(|r| w.apply(r));
        let y = self.fresh();
        self.centralizer(&y, a);
        let chain = Word::comm(Word::comm(Word::var(&y), Word::x(b, 1)), Word::x(c, 1));
        self.push(Word::prod(vec![Word::var(v), chain.inv()]));
        Ok(())
    }

    /// Short `γ` in a rank-2 doubly laced system:
    /// `{[y, x_β(1)] · ŵ y^e ŵ⁻¹ : y ∈ X_α}` with `ŵ = w_β(1)` sending `α` to `α+2β`.
    fn rank2_short(&mut self, v: &str, g: usize, exact: bool) -> Result<()> {
        let rs = self.rs();
        let (a, b, _, d, _, c2) = two_term_pattern(rs, self.comm, |x, _| x == g)
            .ok_or_else(|| Error::TargetUnavailable(rs.name(g)))?;
        let one = self.ctx.ring.one();
        let w = self.ctx.w(b, &one)?;
        let w_inv = self.ctx.inverse(&w)?;
        let c = conj_sign(self.ctx, &w, &w_inv, a, d)?;
        let y = self.fresh();
        if exact && self.ctx.rep.lattice != WeightLattice::Adjoint {
            self.rank2_long(&y, a)?;
        } else {
            self.centralizer(&y, a);
        }
        let yw = if -c2 * c == 1 { Word::var(&y) } else { Word::var(&y).inv() };
        let ww = weyl_word(rs, b);
        self.push(Word::prod(vec![
            Word::var(v).inv(),
            Word::comm(Word::var(&y), Word::x(b, 1)),
            ww.clone(),
            yw,
            ww.inv(),
        ]));
        Ok(())
    }

    /// Long `γ` with `1/2 ∈ R`: `X_γ = [Z·X_s, x_{s'}(1/2)]` where `[x_s(t), x_{s'}(u)] = x_γ(±2tu)`.
    fn rank2_long(&mut self, v: &str, g: usize) -> Result<()> {
        let rs = self.rs();
        let mut found = None;
        'outer: for s in 0..rs.len() {
            for s2 in 0..rs.len() {
                if let [CommTerm { i: 1, j: 1, root, c, .. }] = self.comm.get(s, s2) {
                    if *root == g && c.abs() == 2 {
                        found = Some((s, s2));
                        break 'outer;
                    }
                }
            }
        }
        let (s, s2) = found.ok_or_else(|| Error::TargetUnavailable(rs.name(g)))?;
        let y = self.fresh();
        self.rank2_short(&y, s, false)?;
        let half = Expr::Div(Box::new(Expr::Int(1.into())), Box::new(Expr::Int(2.into())));
        self.push(Word::prod(vec![Word::var(v), Word::comm(Word::var(&y), Word::x_expr(s2, half)).inv()]));
        Ok(())
    }

    /// `Y = [C_G(Γ_{2e_1}), x_{e_2-e_1}(u_0)]` with `u_0 = ±1` matching the signs.
    fn y_set(&mut self, v: &str) -> Result<()> {
        let rs = self.rs();
        let [a, b, _, _] = c2_y_roots(rs)?;
        let (c1, c2) = y_signs(rs, self.comm)?;
        let y = self.fresh();
        self.centralizer(&y, a);
        self.push(Word::prod(vec![Word::var(v), Word::comm(Word::var(&y), Word::x(b, c1 * c2)).inv()]));
        Ok(())
    }

    pub fn finish(self, free: &[&str]) -> PPFormula {
        let free_vars: Vec<String> = free.iter().map(|s| s.to_string()).collect();
        PPFormula {
            exist_vars: self.vars.into_iter().filter(|v| !free_vars.contains(v)).collect(),
            free_vars,
            equations: self.equations,
        }
    }
}

fn y_signs(rs: &RootSystem, comm: &CommutatorTable) -> Result<(i64, i64)> {
    let [a, b, g, d] = c2_y_roots(rs)?;
    match comm.get(a, b) {
        [CommTerm { i: 1, j: 1, root: r1, c: c1, .. }, CommTerm { i: 1, j: 2, root: r2, c: c2, .. }]
            if *r1 == g && *r2 == d =>
        {
            Ok((*c1, *c2))
        }
        _ => Err(Error::MalformedTable("unexpected C2 commutator shape".into())),
    }
}

/// A formula with one free variable `x` defining the target subgroup.
pub fn e_define_subgroup<R: Ring>(ctx: &GroupContext<R>, comm: &CommutatorTable, target: Target) -> Result<PPFormula> {
    let mut b = FormulaBuilder::new(ctx, comm, "y");
    b.declare("x");
    b.target("x", target)?;
    Ok(b.finish(&["x"]))
}

/// Table indices of the intended subgroup, from its parametrization.
pub fn target_elements<R: Ring>(ctx: &GroupContext<R>, table: &GroupTable<R::Elem>, target: Target) -> Result<Vec<usize>> {
    let rs = ctx.rs();
    let mut out = BTreeSet::new();
    for t in ctx.ring.elements()? {
        let g = match target {
            Target::X(a) => ctx.x(a, &t),
            Target::Y => {
                let [_, _, g, d] = c2_y_roots(rs)?;
                ctx.mul(&ctx.x(g, &t), &ctx.x(d, &t))
            }
        };
        out.insert(table.index_of(&g).ok_or_else(|| Error::MalformedTable("element outside the group".into()))?);
    }
    Ok(out.into_iter().collect())
}

/// Table indices of the values of the first free variable over all solutions.
pub fn solution_set<R: Ring>(
    ctx: &GroupContext<R>,
    table: &GroupTable<R::Elem>,
    formula: &PPFormula,
    budget: u64,
) -> Result<Vec<usize>> {
    let ev = Evaluator::new(ctx, Some(table));
    let sys = WordSystem::compile(&ev, &formula.vars(), &formula.equations)?;
    let out = solve_words(&ev, table, &sys, &SolveMode::Project(vec![0]), budget)?;
    Ok(out.projections.into_iter().map(|p| p[0]).collect())
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Carrier {
    X(usize),
    /// `{x_{e_1+e_2}(t) x_{2e_2}(t)}` in `C_2`.
    Y,
}

impl From<Target> for Carrier {
    fn from(t: Target) -> Self {
        match t {
            Target::X(a) => Carrier::X(a),
            Target::Y => Carrier::Y,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum InterpretationCase {
    /// Inside an `A_2` subsystem: `x ⊗ y = [x_1, y_1]`.
    A2 = 1,
    /// Short roots of `G_2`, transported from a long root.
    G2Short = 2,
    /// Rank 2 doubly laced with every `X_γ` definable.
    B2 = 3,
    /// `C_2`, simply connected, on `Y`.
    C2Y = 4,
}

/// The ring `R` carried by a root subgroup (or by `Y`), with the operations
/// computed by group operations in the context.
pub struct RingInterpretation<'a, R: Ring> {
    pub ctx: &'a GroupContext<R>,
    pub comm: &'a CommutatorTable,
    pub case: InterpretationCase,
    pub carrier: Carrier,
    alpha: usize,
    beta: usize,
    gamma: usize,
    delta: usize,
    /// `φ(a)` has parameter `κ a`.
    kappa: i64,
    /// Sign of the `x_γ` term of `[x_α(t), x_β(1)]`.
    c1: i64,
    c2: i64,
    weyl: Option<(M<R>, M<R>)>,
    /// Case 2: roots of `[x_α(t), x_β(1)]` in table order.
    mu_roots: Vec<usize>,
    inner: Option<Box<RingInterpretation<'a, R>>>,
}

/// Chooses the carrier used by default: `X_{α_1+α_2}` when the first two
/// simple roots span `A_2`, otherwise the first suitable root, and `Y` in
/// simply connected `C_2` without `1/2`.
pub fn default_carrier<R: Ring>(ctx: &GroupContext<R>, comm: &CommutatorTable) -> Result<Carrier> {
    let rs = ctx.rs();
    if rank2_doubly_laced(rs) {
        if ctx.rep.lattice == WeightLattice::Adjoint || half_is_unit(&ctx.ring) {
            let (_, _, g, _, _, _) =
                two_term_pattern(rs, comm, |g, _| rs.is_positive(g)).ok_or_else(|| Error::CaseUnavailable(rs.id.to_string()))?;
            return Ok(Carrier::X(g));
        }
        return if rs.id.family == Family::C {
            Ok(Carrier::Y)
        } else {
            Err(Error::CaseUnavailable(rs.id.to_string()))
        };
    }
    let s = rs.simple();
    if let Some(g) = rs.sum(s[0], s[1]) {
        if matches!(comm.get(s[0], s[1]), [CommTerm { i: 1, j: 1, c, .. }] if c.abs() == 1) {
            return Ok(Carrier::X(g));
        }
    }
    (0..rs.num_positive())
        .find(|&g| single_term_pair(rs, comm, g).is_some())
        .map(Carrier::X)
        .ok_or_else(|| Error::CaseUnavailable(rs.id.to_string()))
}

impl<'a, R: Ring> RingInterpretation<'a, R> {
    pub fn new(ctx: &'a GroupContext<R>, comm: &'a CommutatorTable, carrier: Carrier) -> Result<Self> {
        let rs = ctx.rs();
        let one = ctx.ring.one();
        let base = |case, alpha, beta, gamma, delta, kappa, c1, c2| RingInterpretation {
            ctx,
            comm,
            case,
            carrier: carrier.clone(),
            alpha,
            beta,
            gamma,
            delta,
            kappa,
            c1,
            c2,
            weyl: None,
            mu_roots: Vec::new(),
            inner: None,
        };
        let g = match carrier {
            Carrier::Y => {
                let [a, b, g, d] = c2_y_roots(rs).map_err(|_| Error::CaseUnavailable("Y needs C2".into()))?;
                let (c1, c2) = y_signs(rs, comm)?;
                let w = ctx.w(a, &one)?;
                let w_inv = ctx.inverse(&w)?;
                let c_prime = conj_sign(ctx, &w_inv, &w, g, b)?;
                let mut out = base(InterpretationCase::C2Y, a, b, g, d, c1 * c2 * c_prime, c1, c2);
                out.weyl = Some((w, w_inv));
                return Ok(out);
            }
            Carrier::X(g) => g,
        };
        if let Some((a, b, c)) = single_term_pair(rs, comm, g) {
            return Ok(base(InterpretationCase::A2, a, b, g, g, c, c, 0));
        }
        if rs.id.family == Family::G && !rs.is_long(g) {
            for a in (0..rs.len()).filter(|&a| rs.is_long(a)) {
                for b in (0..rs.len()).filter(|&b| !rs.is_long(b)) {
                    let terms = comm.get(a, b);
                    if let Some(CommTerm { i: 1, j: 1, root, c, .. }) = terms.first() {
                        if *root == g && c.abs() == 1 && single_term_pair(rs, comm, a).is_some() {
                            let inner = RingInterpretation::new(ctx, comm, Carrier::X(a))?;
                            let mut out = base(InterpretationCase::G2Short, a, b, g, g, c * inner.kappa, *c, 0);
                            out.mu_roots = terms.iter().map(|t| t.root).collect();
                            out.inner = Some(Box::new(inner));
                            return Ok(out);
                        }
                    }
                }
            }
        }
        if rank2_doubly_laced(rs) {
            if !(ctx.rep.lattice == WeightLattice::Adjoint || half_is_unit(&ctx.ring)) {
                return Err(Error::CaseUnavailable(format!("X{} in simply connected {} without 1/2", rs.name(g), rs.id)));
            }
            if let Some((a, b, _, d, c1, c2)) = two_term_pattern(rs, comm, |x, _| x == g) {
                if rs.reflect(a, g) == b {
                    let w = ctx.w(a, &one)?;
                    let w_inv = ctx.inverse(&w)?;
                    let cw = conj_sign(ctx, &w, &w_inv, g, b)?;
                    let mut out = base(InterpretationCase::B2, a, b, g, d, cw, c1, c2);
                    out.weyl = Some((w, w_inv));
                    return Ok(out);
                }
            }
        }
        Err(Error::CaseUnavailable(format!("X{} in {}", rs.name(g), rs.id)))
    }

    pub fn target(&self) -> Target {
        match self.carrier {
            Carrier::X(a) => Target::X(a),
            Carrier::Y => Target::Y,
        }
    }

    fn sgn(&self, c: i64) -> R::Elem {
        self.ctx.ring.from_i64(c)
    }

    fn y_elem(&self, t: &R::Elem) -> M<R> {
        self.ctx.mul(&self.ctx.x(self.gamma, t), &self.ctx.x(self.delta, t))
    }

    fn mu(&self, g: &M<R>) -> Result<M<R>> {
        let ctx = self.ctx;
        let m = ctx.commutator(g, ctx.x_one(self.beta))?;
        let params = peel_left(ctx, &m, &self.mu_roots).ok_or(Error::NotInCarrier)?;
        Ok(ctx.x(self.gamma, &params[0]))
    }

    fn mu_inv(&self, g: &M<R>) -> Result<M<R>> {
        let s = self.ctx.x_parameter(g, self.gamma).ok_or(Error::NotInCarrier)?;
        Ok(self.ctx.x(self.alpha, &self.ctx.ring.mul(&s, &self.sgn(self.c1))))
    }

    /// `φ(a)`.
    pub fn encode(&self, a: &R::Elem) -> M<R> {
        let ring = &self.ctx.ring;
        let t = ring.mul(a, &self.sgn(self.kappa));
        match self.case {
            InterpretationCase::C2Y => self.y_elem(&t),
            InterpretationCase::G2Short => {
                let inner = self.inner.as_ref().unwrap();
                self.mu(&inner.encode(a)).expect("μ is defined on the long carrier")
            }
            _ => self.ctx.x(self.gamma, &t),
        }
    }

    /// `φ⁻¹(g)`, or `None` outside the carrier.
    pub fn decode(&self, g: &M<R>) -> Option<R::Elem> {
        let ring = &self.ctx.ring;
        match self.case {
            InterpretationCase::C2Y => {
                let p = peel_left(self.ctx, g, &[self.gamma, self.delta])?;
                (p[0] == p[1]).then(|| ring.mul(&p[0], &self.sgn(self.kappa)))
            }
            InterpretationCase::G2Short => self.inner.as_ref().unwrap().decode(&self.mu_inv(g).ok()?),
            _ => self.ctx.x_parameter(g, self.gamma).map(|p| ring.mul(&p, &self.sgn(self.kappa))),
        }
    }

    pub fn oplus(&self, x: &M<R>, y: &M<R>) -> M<R> {
        self.ctx.mul(x, y)
    }

    /// `x ⊗ y`, with the witnesses of the definition read off the carrier parameters.
    pub fn otimes(&self, x: &M<R>, y: &M<R>) -> Result<M<R>> {
        let ctx = self.ctx;
        let ring = &ctx.ring;
        let a = self.decode(x).ok_or(Error::NotInCarrier)?;
        let b = self.decode(y).ok_or(Error::NotInCarrier)?;
        match self.case {
            InterpretationCase::A2 => {
                // [x_1, x_β(1)] = x and [x_α(1), y_1] = y
                let x1 = ctx.x(self.alpha, &a);
                let y1 = ctx.x(self.beta, &b);
                ctx.commutator(&x1, &y1)
            }
            InterpretationCase::G2Short => {
                let inner = self.inner.as_ref().unwrap();
                self.mu(&inner.otimes(&self.mu_inv(x)?, &self.mu_inv(y)?)?)
            }
            InterpretationCase::B2 | InterpretationCase::C2Y => {
                let (w, w_inv) = self.weyl.as_ref().unwrap();
                let (x1, y2) = if self.case == InterpretationCase::B2 {
                    // x = X_γ ∩ [x_1, x_β(1)]·X_δ, y_2 = ŵ y ŵ⁻¹
                    let t = ring.mul(&a, &self.sgn(self.c1 * self.kappa));
                    (ctx.x(self.alpha, &t), ctx.mul(&ctx.mul(w, y), w_inv))
                } else {
                    // [x_1, x_β(u_0)] = x, y_2 = ŵ⁻¹ y ŵ
                    let t = ring.mul(&a, &self.sgn(self.c2 * self.kappa));
                    (ctx.x(self.alpha, &t), ctx.mul(&ctx.mul(w_inv, y), w))
                };
                let m = ctx.commutator(&x1, &y2)?;
                let p = peel_left(ctx, &m, &[self.gamma, self.delta]).ok_or(Error::NotInCarrier)?;
                Ok(if self.case == InterpretationCase::C2Y { self.y_elem(&p[0]) } else { ctx.x(self.gamma, &p[0]) })
            }
        }
    }

    /// `φ(c)` as a word in generator literals.
    pub fn constant_word(&self, c: &Expr) -> Word {
        let scaled = match (self.kappa, c) {
            (1, _) => c.clone(),
            (_, Expr::Neg(inner)) => (**inner).clone(),
            _ => Expr::Neg(Box::new(c.clone())),
        };
        match self.case {
            InterpretationCase::C2Y => {
                Word::prod(vec![Word::x_expr(self.gamma, scaled.clone()), Word::x_expr(self.delta, scaled)])
            }
            InterpretationCase::G2Short => {
                // μ(φ_long(c)) has parameter κ c
                Word::x_expr(self.gamma, scaled)
            }
            _ => Word::x_expr(self.gamma, scaled),
        }
    }

    /// Equations forcing `z = x ⊗ y` for `x, y` in the carrier, with fresh witnesses.
    pub fn add_otimes(&self, b: &mut FormulaBuilder<R>, x: &str, y: &str, z: &str) -> Result<()> {
        let rs = self.ctx.rs();
        let var = Word::var;
        match self.case {
            InterpretationCase::A2 => {
                let x1 = b.fresh();
                let y1 = b.fresh();
                b.modulo_center(&x1, self.alpha)?;
                b.modulo_center(&y1, self.beta)?;
                b.push(Word::prod(vec![Word::comm(var(&x1), Word::x(self.beta, 1)), var(x).inv()]));
                b.push(Word::prod(vec![Word::comm(Word::x(self.alpha, 1), var(&y1)), var(y).inv()]));
                b.push(Word::prod(vec![var(z), Word::comm(var(&x1), var(&y1)).inv()]));
            }
            InterpretationCase::G2Short => {
                let inner = self.inner.as_ref().unwrap();
                let [xl, yl, zl] = [b.fresh(), b.fresh(), b.fresh()];
                for (short, long) in [(x, &xl), (y, &yl), (z, &zl)] {
                    b.target(long, Target::X(self.alpha))?;
                    self.add_mu(b, long, short)?;
                }
                b.target(z, Target::X(self.gamma))?;
                inner.add_otimes(b, &xl, &yl, &zl)?;
            }
            InterpretationCase::B2 => {
                let x1 = b.fresh();
                b.modulo_center(&x1, self.alpha)?;
                let p = b.fresh();
                b.modulo_center(&p, self.delta)?;
                b.push(Word::prod(vec![var(x).inv(), Word::comm(var(&x1), Word::x(self.beta, 1)), var(&p)]));
                let y2 = b.fresh();
                let ww = weyl_word(rs, self.alpha);
                b.push(Word::prod(vec![var(&y2).inv(), ww.clone(), var(y), ww.inv()]));
                let q = b.fresh();
                b.modulo_center(&q, self.delta)?;
                b.push(Word::prod(vec![var(z).inv(), Word::comm(var(&x1), var(&y2)), var(&q)]));
                b.target(z, Target::X(self.gamma))?;
            }
            InterpretationCase::C2Y => {
                let x1 = b.fresh();
                b.centralizer(&x1, self.alpha);
                b.push(Word::prod(vec![Word::comm(var(&x1), Word::x(self.beta, self.c1 * self.c2)), var(x).inv()]));
                let y2 = b.fresh();
                let ww = weyl_word(rs, self.alpha);
                b.push(Word::prod(vec![var(&y2).inv(), ww.clone().inv(), var(y), ww]));
                let q = b.fresh();
                b.centralizer(&q, self.delta);
                b.push(Word::prod(vec![var(z).inv(), Word::comm(var(&x1), var(&y2)), var(&q)]));
                b.target(z, Target::Y)?;
            }
        }
        Ok(())
    }

    /// `short = μ(long)`: `short = [long, x_β(1)] · p_k ⋯ p_2` with `p_i ∈ X_{r_i}`.
    fn add_mu(&self, b: &mut FormulaBuilder<R>, long: &str, short: &str) -> Result<()> {
        let mut factors = vec![Word::var(short).inv(), Word::comm(Word::var(long), Word::x(self.beta, 1))];
        for &r in self.mu_roots[1..].iter().rev() {
            let p = b.fresh();
            b.target(&p, Target::X(r))?;
            factors.push(Word::var(&p));
        }
        b.push(Word::prod(factors));
        Ok(())
    }

    /// `x ⊗ y = z` as a formula with free variables `x, y, z`.
    pub fn otimes_formula(&self) -> Result<PPFormula> {
        let mut b = FormulaBuilder::new(self.ctx, self.comm, "w");
        for v in ["x", "y", "z"] {
            b.declare(v);
        }
        self.add_otimes(&mut b, "x", "y", "z")?;
        Ok(b.finish(&["x", "y", "z"]))
    }
}

/// Outcome of checking `φ(a+b) = φ(a) ⊕ φ(b)` and `φ(ab) = φ(a) ⊗ φ(b)`.
#[derive(Debug, Clone, Default)]
pub struct RingCheckReport {
    pub pairs: usize,
    /// `(a, b)` rendered in the ring's notation.
    pub add_failures: Vec<(String, String)>,
    pub mul_failures: Vec<(String, String)>,
    /// Elements `a` with `φ⁻¹(φ(a)) ≠ a`.
    pub injectivity_failures: Vec<String>,
}

impl RingCheckReport {
    pub fn passed(&self) -> bool {
        self.add_failures.is_empty() && self.mul_failures.is_empty() && self.injectivity_failures.is_empty()
    }
}

pub fn verify_ring_isomorphism<R: Ring>(interp: &RingInterpretation<R>) -> Result<RingCheckReport> {
    use rayon::prelude::*;
    let ring = &interp.ctx.ring;
    let elems = ring.elements()?;
    let phi: Vec<M<R>> = elems.iter().map(|a| interp.encode(a)).collect();
    let mut report = RingCheckReport { pairs: elems.len() * elems.len(), ..Default::default() };
    for (a, g) in elems.iter().zip(&phi) {
        if interp.decode(g).as_ref() != Some(a) {
            report.injectivity_failures.push(ring.format(a));
        }
    }
    let results: Vec<(usize, usize, bool, bool)> = (0..elems.len())
        .into_par_iter()
        .flat_map_iter(|i| (0..elems.len()).map(move |j| (i, j)))
        .map(|(i, j)| {
            let (a, b) = (&elems[i], &elems[j]);
            let add_ok = interp.oplus(&phi[i], &phi[j]) == interp.encode(&ring.add(a, b));
            let mul_ok = interp.otimes(&phi[i], &phi[j]).ok() == Some(interp.encode(&ring.mul(a, b)));
            (i, j, add_ok, mul_ok)
        })
        .collect();
    for (i, j, add_ok, mul_ok) in results {
        let pair = || (ring.format(&elems[i]), ring.format(&elems[j]));
        if !add_ok {
            report.add_failures.push(pair());
        }
        if !mul_ok {
            report.mul_failures.push(pair());
        }
    }
    Ok(report)
}

/// Ring axioms checked directly on the carrier with `⊕` and `⊗`.
#[derive(Debug, Clone, Default)]
pub struct AxiomReport {
    pub triples: usize,
    pub associativity_failures: usize,
    pub distributivity_failures: usize,
    pub commutativity_failures: usize,
}

impl AxiomReport {
    pub fn passed(&self) -> bool {
        self.associativity_failures == 0 && self.distributivity_failures == 0 && self.commutativity_failures == 0
    }
}

pub fn verify_carrier_axioms<R: Ring>(interp: &RingInterpretation<R>) -> Result<AxiomReport> {
    let elems = interp.ctx.ring.elements()?;
    let carrier: Vec<M<R>> = elems.iter().map(|a| interp.encode(a)).collect();
    let mut report = AxiomReport::default();
    for x in &carrier {
        for y in &carrier {
            if interp.otimes(x, y)? != interp.otimes(y, x)? {
                report.commutativity_failures += 1;
            }
            for z in &carrier {
                report.triples += 1;
                let xy = interp.otimes(x, y)?;
                if interp.otimes(&xy, z)? != interp.otimes(x, &interp.otimes(y, z)?)? {
                    report.associativity_failures += 1;
                }
                if interp.otimes(x, &interp.oplus(y, z))? != interp.oplus(&xy, &interp.otimes(x, z)?) {
                    report.distributivity_failures += 1;
                }
            }
        }
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::chevalley::{derive_commutator_table, representation_for, RepKind};
    use crate::group::{enumerate_group, DEFAULT_ELEMENT_CAP};
    use crate::rings::FinRing;

    fn setup(sys: &str, kind: RepKind, ring: &str) -> (GroupContext<FinRing>, CommutatorTable) {
        let rep = representation_for(sys.parse().unwrap(), kind).unwrap();
        let comm = derive_commutator_table(&rep).unwrap();
        (GroupContext::new(rep, FinRing::parse(ring).unwrap()), comm)
    }

    fn names(rs: &RootSystem, roots: &[usize]) -> Vec<String> {
        let mut v: Vec<String> = roots.iter().map(|&r| rs.coord_string(r)).collect();
        v.sort();
        v
    }

    #[test]
    fn gamma_examples() {
        let (c, _) = setup("A2", RepKind::NaturalSl, "GF(2)");
        let rs = c.rs();
        let g = gamma_set(&c, rs.simple()[0]);
        let expected = [rs.simple()[0], rs.parse_root("a1+a2").unwrap(), rs.parse_root("-a2").unwrap()];
        assert_eq!(names(rs, &g.members), names(rs, &expected));

        let (c, _) = setup("C2", RepKind::NaturalSp, "GF(3)");
        let rs = c.rs();
        let g = gamma_set(&c, rs.parse_root("2e1").unwrap());
        let expected: Vec<usize> = ["2e1", "2e2", "-2e2", "e1+e2", "e1-e2"].iter().map(|s| rs.parse_root(s).unwrap()).collect();
        assert_eq!(names(rs, &g.members), names(rs, &expected));

        let (c, _) = setup("C2", RepKind::NaturalSp, "GF(2)");
        let rs = c.rs();
        let g = gamma_set(&c, rs.parse_root("e1+e2").unwrap());
        assert!(g.members.contains(&rs.parse_root("e2-e1").unwrap()));
    }

    #[test]
    fn gamma_is_symmetric() {
        for (sys, kind) in [("A3", RepKind::NaturalSl), ("C3", RepKind::NaturalSp), ("G2", RepKind::Adjoint)] {
            for ring in ["GF(2)", "GF(3)"] {
                let (c, _) = setup(sys, kind, ring);
                let n = c.rs().len();
                let sets: Vec<GammaSet> = (0..n).map(|a| gamma_set(&c, a)).collect();
                for a in 0..n {
                    assert!(sets[a].members.contains(&a));
                    for &b in &sets[a].members {
                        assert!(sets[b].members.contains(&a));
                    }
                }
            }
        }
    }

    #[test]
    fn double_centralizer_examples() {
        let (c, _) = setup("A2", RepKind::NaturalSl, "GF(2)");
        let t = enumerate_group(&c, DEFAULT_ELEMENT_CAP).unwrap();
        let r = double_centralizer_report(&c, &t, c.rs().simple()[0]).unwrap();
        assert!(r.equal());
        assert_eq!(r.computed.len(), 2);

        let (c, _) = setup("C2", RepKind::NaturalSp, "GF(3)");
        let t = enumerate_group(&c, DEFAULT_ELEMENT_CAP).unwrap();
        for root in ["e1+e2", "2e1", "e1-e2", "-2e2"] {
            let r = double_centralizer_report(&c, &t, c.rs().parse_root(root).unwrap()).unwrap();
            assert!(r.equal(), "{root}");
            if root == "e1+e2" {
                assert_eq!(r.computed.len(), 54);
            }
        }
    }

    #[test]
    fn e_define_examples() {
        let (c, comm) = setup("A2", RepKind::NaturalSl, "GF(3)");
        let t = enumerate_group(&c, DEFAULT_ELEMENT_CAP).unwrap();
        let rs = c.rs();
        let g = rs.parse_root("a1+a2").unwrap();
        let f = e_define_subgroup(&c, &comm, Target::X(g)).unwrap();
        assert_eq!(f.exist_vars.len(), 1);
        assert_eq!(f.equations.len(), gamma_set(&c, rs.simple()[0]).members.len() + 1);
        let sols = solution_set(&c, &t, &f, u64::MAX).unwrap();
        assert_eq!(sols.len(), 3);
        assert_eq!(sols, target_elements(&c, &t, Target::X(g)).unwrap());
        assert!(sols.contains(&0));

        let (c, comm) = setup("C2", RepKind::NaturalSp, "GF(2)");
        let t = enumerate_group(&c, DEFAULT_ELEMENT_CAP).unwrap();
        let f = e_define_subgroup(&c, &comm, Target::Y).unwrap();
        let sols = solution_set(&c, &t, &f, u64::MAX).unwrap();
        assert_eq!(sols, target_elements(&c, &t, Target::Y).unwrap());
        assert_eq!(sols.len(), 2);
        assert!(matches!(
            e_define_subgroup(&c, &comm, Target::X(0)),
            Err(Error::TargetUnavailable(_))
        ));
    }

    #[test]
    fn e_define_every_root_of_sp4_gf3() {
        let (c, comm) = setup("C2", RepKind::NaturalSp, "GF(3)");
        let t = enumerate_group(&c, DEFAULT_ELEMENT_CAP).unwrap();
        for g in 0..c.rs().len() {
            let f = e_define_subgroup(&c, &comm, Target::X(g)).unwrap();
            let sols = solution_set(&c, &t, &f, u64::MAX).unwrap();
            assert_eq!(sols, target_elements(&c, &t, Target::X(g)).unwrap(), "{}", c.rs().name(g));
        }
    }

    #[test]
    fn ring_interpretation_cases() {
        let (c, comm) = setup("A2", RepKind::NaturalSl, "Z/6");
        let carrier = default_carrier(&c, &comm).unwrap();
        let i = RingInterpretation::new(&c, &comm, carrier).unwrap();
        assert_eq!(i.case, InterpretationCase::A2);
        assert_eq!(i.oplus(&i.encode(&2), &i.encode(&3)), i.encode(&5));
        assert!(i.otimes(&i.encode(&2), &i.encode(&3)).unwrap().is_identity(&c.ring));
        let r = verify_ring_isomorphism(&i).unwrap();
        assert!(r.passed() && r.pairs == 36);
        assert!(verify_carrier_axioms(&i).unwrap().passed());

        for ring in ["GF(5)", "GF(3)"] {
            let (c, comm) = setup("C2", RepKind::NaturalSp, ring);
            let i = RingInterpretation::new(&c, &comm, default_carrier(&c, &comm).unwrap()).unwrap();
            assert_eq!(i.case, InterpretationCase::B2);
            assert!(verify_ring_isomorphism(&i).unwrap().passed());
            let one = i.encode(&1);
            for a in c.ring.elements().unwrap() {
                let x = i.encode(&a);
                assert_eq!(i.otimes(&one, &x).unwrap(), x);
                assert_eq!(i.otimes(&x, &one).unwrap(), x);
            }
        }
        for ring in ["Z/4", "GF(2)"] {
            let (c, comm) = setup("C2", RepKind::NaturalSp, ring);
            let carrier = default_carrier(&c, &comm).unwrap();
            assert_eq!(carrier, Carrier::Y);
            let i = RingInterpretation::new(&c, &comm, carrier).unwrap();
            let r = verify_ring_isomorphism(&i).unwrap();
            assert!(r.passed(), "{ring} {r:?}");
            assert!(verify_carrier_axioms(&i).unwrap().passed());
        }
        let (c, comm) = setup("G2", RepKind::Adjoint, "GF(2)");
        let short = (0..c.rs().len()).find(|&g| !c.rs().is_long(g)).unwrap();
        let i = RingInterpretation::new(&c, &comm, Carrier::X(short)).unwrap();
        assert_eq!(i.case, InterpretationCase::G2Short);
        assert!(verify_ring_isomorphism(&i).unwrap().passed());
    }

    #[test]
    fn otimes_formula_defines_the_graph() {
        for (sys, kind, ring) in [
            ("A2", RepKind::NaturalSl, "GF(2)"),
            ("A2", RepKind::NaturalSl, "GF(3)"),
            ("C2", RepKind::NaturalSp, "GF(2)"),
            ("C2", RepKind::NaturalSp, "GF(3)"),
        ] {
            let (c, comm) = setup(sys, kind, ring);
            let t = enumerate_group(&c, DEFAULT_ELEMENT_CAP).unwrap();
            let interp = RingInterpretation::new(&c, &comm, default_carrier(&c, &comm).unwrap()).unwrap();
            let mut b = FormulaBuilder::new(&c, &comm, "w");
            for v in ["x", "y", "z"] {
                b.declare(v);
            }
            b.target("x", interp.target()).unwrap();
            b.target("y", interp.target()).unwrap();
            interp.add_otimes(&mut b, "x", "y", "z").unwrap();
            let f = b.finish(&["x", "y", "z"]);
            let ev = Evaluator::new(&c, Some(&t));
            let s = WordSystem::compile(&ev, &f.vars(), &f.equations).unwrap();
            let out = solve_words(&ev, &t, &s, &SolveMode::Project(vec![0, 1, 2]), u64::MAX).unwrap();
            let elems = c.ring.elements().unwrap();
            let idx = |g: &M<FinRing>| t.index_of(g).unwrap();
            let expected: BTreeSet<Vec<usize>> = elems
                .iter()
                .flat_map(|a| elems.iter().map(move |b| (a, b)))
                .map(|(a, b)| {
                    let (x, y) = (interp.encode(a), interp.encode(b));
                    vec![idx(&x), idx(&y), idx(&interp.encode(&c.ring.mul(a, b)))]
                })
                .collect();
            assert_eq!(out.projections, expected, "{sys} {ring}");
        }
    }

    #[test]
    fn c3_short_roots_from_predicted_centralizers() {
        let (c, comm) = setup("C3", RepKind::NaturalSp, "GF(3)");
        let rs = c.rs();
        let elems = c.ring.elements().unwrap();
        let minus = c.ring.from_i64(-1);
        let center = [c.identity(), c.identity().map(|e| c.ring.mul(e, &minus))];
        for g in (0..rs.len()).filter(|&g| !rs.is_long(g)) {
            let f = e_define_subgroup(&c, &comm, Target::X(g)).unwrap();
            let (last, conds) = f.equations.split_last().unwrap();
            let ev = Evaluator::new(&c, None);
            let mut image = BTreeSet::new();
            let mut ys = center.to_vec();
            let y_root = (0..rs.len())
                .find(|&a| {
                    let members = gamma_set(&c, a).members;
                    conds.len() == members.len()
                        && members.iter().all(|&m| conds.contains(&Word::comm(Word::var(&f.exist_vars[0]), Word::x(m, 1))))
                })
                .unwrap();
            for r in predicted_factors(rs, y_root) {
                ys = ys.iter().flat_map(|u| elems.iter().map(move |t| (u, t))).map(|(u, t)| c.mul(u, &c.x(r, t))).collect();
            }
            for y in &ys {
                let lookup = |v: &str| if v == f.exist_vars[0] { Some(y.clone()) } else { None };
                for w in conds {
                    assert!(ev.eval(w, &lookup).unwrap().is_identity(&c.ring));
                }
                let with_v = |v: &str| if v == "x" { Some(c.identity()) } else { lookup(v) };
                image.insert(c.inverse(&ev.eval(last, &with_v).unwrap()).unwrap());
            }
            let expected: BTreeSet<_> = elems.iter().map(|t| c.x(g, t)).collect();
            assert_eq!(image, expected, "{}", rs.name(g));
        }
    }
}
