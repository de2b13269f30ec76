//! Bruhat decomposition over finite fields, Gauss `UTV` decomposition over
//! local rings, the opposite-root shift identities, and CRT splitting.

use std::collections::{BTreeMap, HashMap};

use rayon::prelude::*;

use crate::chevalley::CommutatorTable;
use crate::error::{Error, Result};
use crate::group::{GroupContext, GroupTable};
use crate::matrix::Matrix;
use crate::rings::{crt_split, FinRing, Ring};
use crate::rootsys::{generate_weyl, RootSystem, WeylElement};

type M<R> = Matrix<<R as Ring>::Elem>;

/// Relative weights of the representation basis, as simple-root coefficient vectors.
pub fn basis_weights<R: Ring>(ctx: &GroupContext<R>) -> Vec<Vec<i32>> {
    let rs = ctx.rs();
    let n = ctx.dim();
    let mut w: Vec<Option<Vec<i32>>> = vec![None; n];
    w[0] = Some(vec![0; rs.rank()]);
    let mut changed = true;
    while changed {
        changed = false;
        for a in 0..rs.len() {
            let e = ctx.rep.root_matrix(a);
            let coeffs = &rs.root(a).coeffs;
            for r in 0..n {
                for c in 0..n {
                    if e.get(r, c) == 0 {
                        continue;
                    }
                    match (&w[r], &w[c]) {
                        (None, Some(wc)) => {
                            w[r] = Some(wc.iter().zip(coeffs).map(|(x, y)| x + y).collect());
                            changed = true;
                        }
                        (Some(wr), None) => {
                            w[c] = Some(wr.iter().zip(coeffs).map(|(x, y)| x - y).collect());
                            changed = true;
                        }
                        _ => {}
                    }
                }
            }
        }
    }
    w.into_iter().map(|x| x.expect("representation is indecomposable")).collect()
}

/// Position of a `±1` entry of `π(e_α)` and that entry.
fn unit_entry<R: Ring>(ctx: &GroupContext<R>, a: usize) -> (usize, i64) {
    let e = ctx.rep.root_matrix(a);
    let pos = e.data.iter().position(|&v| v == 1 || v == -1).expect("root element has a unit entry");
    (pos, e.data[pos])
}

/// Reads `m = ∏ x_{roots[k]}(a_k)` by peeling factors from the left.
pub fn peel_left<R: Ring>(ctx: &GroupContext<R>, m: &M<R>, roots: &[usize]) -> Option<Vec<R::Elem>> {
    let ring = &ctx.ring;
    let mut cur = m.clone();
    let mut out = Vec::with_capacity(roots.len());
    for &a in roots {
        let (pos, sign) = unit_entry(ctx, a);
        let t = ring.mul(&cur.entries()[pos], &ring.from_i64(sign));
        if !ring.is_zero(&t) {
            cur = ctx.mul(&ctx.x(a, &ring.neg(&t)), &cur);
        }
        out.push(t);
    }
    cur.is_identity(ring).then_some(out)
}

/// Reads `m = ∏ x_{roots[k]}(a_k)` (rightmost factor `roots[0]`) by peeling from the right.
fn peel_right<R: Ring>(ctx: &GroupContext<R>, m: &M<R>, roots: &[usize]) -> Option<Vec<R::Elem>> {
    let ring = &ctx.ring;
    let mut cur = m.clone();
    let mut out = Vec::with_capacity(roots.len());
    for &a in roots {
        let (pos, sign) = unit_entry(ctx, a);
        let t = ring.mul(&cur.entries()[pos], &ring.from_i64(sign));
        if !ring.is_zero(&t) {
            cur = ctx.mul(&cur, &ctx.x(a, &ring.neg(&t)));
        }
        out.push(t);
    }
    cur.is_identity(ring).then_some(out)
}

/// `∏ h_{α_i}(u_i)` over the simple roots.
pub fn torus_element<R: Ring>(ctx: &GroupContext<R>, params: &[R::Elem]) -> Result<M<R>> {
    let mut t = ctx.identity();
    for (&a, u) in ctx.rs().simple().iter().zip(params) {
        if !ctx.ring.is_one(u) {
            t = ctx.mul(&t, &ctx.h(a, u)?);
        }
    }
    Ok(t)
}

/// Simple-root parameters of `h_α(u)`, via the coroot expansion of `α`.
pub fn torus_params_of_h<R: Ring>(ctx: &GroupContext<R>, a: usize, u: &R::Elem) -> Result<Vec<R::Elem>> {
    ctx.rep
        .table
        .cartan_part(a)
        .iter()
        .map(|&c| ctx.ring.pow_signed(u, c).ok_or(Error::NonUnitParameter))
        .collect()
}

/// The finite torus `{∏ h_{α_i}(u_i)}`, indexed by matrix.
#[derive(Debug, Clone)]
pub struct Torus<E> {
    pub elements: Vec<(Vec<E>, Matrix<E>)>,
    lookup: HashMap<Matrix<E>, usize>,
}

impl<E: Clone + Eq + std::hash::Hash> Torus<E> {
    pub fn build<R: Ring<Elem = E>>(ctx: &GroupContext<R>) -> Result<Self> {
        let units = ctx.ring.units()?;
        let mut tuples: Vec<Vec<E>> = vec![Vec::new()];
        for _ in 0..ctx.rs().rank() {
            tuples = tuples
                .into_iter()
                .flat_map(|t| {
                    units.iter().map(move |u| {
                        let mut t = t.clone();
                        t.push(u.clone());
                        t
                    })
                })
                .collect();
        }
        let mut elements = Vec::new();
        let mut lookup = HashMap::new();
        for t in tuples {
            let m = torus_element(ctx, &t)?;
            if !lookup.contains_key(&m) {
                lookup.insert(m.clone(), elements.len());
                elements.push((t, m));
            }
        }
        Ok(Torus { elements, lookup })
    }

    pub fn params_of(&self, m: &Matrix<E>) -> Option<&[E]> {
        self.lookup.get(m).map(|&i| self.elements[i].0.as_slice())
    }
}

/// Fixed lift `ŵ = ∏ w_{α_{i_k}}(1)` along the stored reduced word.
pub fn weyl_lift<R: Ring>(ctx: &GroupContext<R>, w: &WeylElement) -> Result<M<R>> {
    let one = ctx.ring.one();
    let mut m = ctx.identity();
    for &i in &w.reduced_word {
        m = ctx.mul(&m, &ctx.w(ctx.rs().simple()[i], &one)?);
    }
    Ok(m)
}

/// Positive roots sent to negative roots by `w`, in height order.
pub fn inversion_roots(rs: &RootSystem, w: &WeylElement) -> Vec<usize> {
    (0..rs.num_positive()).filter(|&i| !rs.is_positive(w.apply(i))).collect()
}

/// `g = t · ∏ x_{α_i}(a_i) · ŵ · ∏ x_{α_i}(b_i)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct BruhatForm<E> {
    /// `h_{α_i}(u_i)` parameters over the simple roots.
    pub t: Vec<E>,
    /// All positive roots in height order.
    pub a: Vec<(usize, E)>,
    pub w: WeylElement,
    /// All positive roots in height order; zero where `w(α_i) > 0`.
    pub b: Vec<(usize, E)>,
}

impl<E: Clone + Eq + std::hash::Hash> BruhatForm<E> {
    pub fn recompose<R: Ring<Elem = E>>(&self, ctx: &GroupContext<R>) -> Result<Matrix<E>> {
        let mut g = torus_element(ctx, &self.t)?;
        for (r, p) in &self.a {
            g = ctx.mul(&g, &ctx.x(*r, p));
        }
        g = ctx.mul(&g, &weyl_lift(ctx, &self.w)?);
        for (r, p) in &self.b {
            g = ctx.mul(&g, &ctx.x(*r, p));
        }
        Ok(g)
    }

    /// `b_i = 0` whenever `w(α_i)` is positive.
    pub fn satisfies_constraint<R: Ring<Elem = E>>(&self, ctx: &GroupContext<R>) -> bool {
        let rs = ctx.rs();
        self.b.iter().all(|(r, p)| !rs.is_positive(self.w.apply(*r)) || ctx.ring.is_zero(p))
    }

    /// The form as a generator word, omitting trivial factors.
    pub fn display<R: Ring<Elem = E>>(&self, ctx: &GroupContext<R>) -> String {
        let rs = ctx.rs();
        let ring = &ctx.ring;
        let mut parts = torus_word(ctx, &self.t);
        parts.extend(self.a.iter().filter(|(_, p)| !ring.is_zero(p)).map(|(r, p)| x_word(rs, ring, *r, p)));
        for &i in &self.w.reduced_word {
            parts.push(format!("w({};1)", rs.name(rs.simple()[i])));
        }
        parts.extend(self.b.iter().filter(|(_, p)| !ring.is_zero(p)).map(|(r, p)| x_word(rs, ring, *r, p)));
        if parts.is_empty() {
            "1".into()
        } else {
            parts.join("*")
        }
    }
}

fn x_word<R: Ring>(rs: &RootSystem, ring: &R, r: usize, p: &R::Elem) -> String {
    format!("x({};{})", rs.name(r), ring.format(p))
}

fn torus_word<R: Ring>(ctx: &GroupContext<R>, t: &[R::Elem]) -> Vec<String> {
    let rs = ctx.rs();
    rs.simple()
        .iter()
        .zip(t)
        .filter(|(_, u)| !ctx.ring.is_one(u))
        .map(|(&a, u)| format!("h({};{})", rs.name(a), ctx.ring.format(u)))
        .collect()
}

/// Label of a Bruhat cell, e.g. `s1*s2` or `1`.
pub fn cell_label(w: &WeylElement) -> String {
    if w.reduced_word.is_empty() {
        "1".into()
    } else {
        w.reduced_word.iter().map(|i| format!("s{}", i + 1)).collect::<Vec<_>>().join("*")
    }
}

fn tuples<E: Clone>(values: &[E], len: usize) -> Vec<Vec<E>> {
    let mut out: Vec<Vec<E>> = vec![Vec::new()];
    for _ in 0..len {
        out = out
            .into_iter()
            .flat_map(|t| {
                values.iter().map(move |v| {
                    let mut t = t.clone();
                    t.push(v.clone());
                    t
                })
            })
            .collect();
    }
    out
}

fn with_zeros<E: Clone>(m: usize, zero: &E, support: &[usize], values: &[E]) -> Vec<(usize, E)> {
    let mut out: Vec<(usize, E)> = (0..m).map(|i| (i, zero.clone())).collect();
    for (&i, v) in support.iter().zip(values) {
        out[i].1 = v.clone();
    }
    out
}

/// Exhaustive cell search: every `(t, u)` on the left, every `(w, u')` on the right.
pub struct BruhatOracle<'a, R: Ring> {
    ctx: &'a GroupContext<R>,
    weyl: Vec<WeylElement>,
    /// `((t · u)⁻¹, t, a)`
    lefts: Vec<(M<R>, Vec<R::Elem>, Vec<R::Elem>)>,
    /// `ŵ · u'` → `(w index, b)` for every admissible right part
    rights: HashMap<M<R>, Vec<(usize, Vec<R::Elem>)>>,
}

impl<'a, R: Ring> BruhatOracle<'a, R> {
    /// Fails with `BudgetExceeded` when `|T|·|U|·Σ_w |U_w|` exceeds `budget`.
    pub fn new(ctx: &'a GroupContext<R>, budget: usize) -> Result<Self> {
        let ring = &ctx.ring;
        if !ring.is_field() || !ring.is_finite() {
            return Err(Error::NotLocal);
        }
        let rs = ctx.rs();
        let m = rs.num_positive();
        let q = ring.elements()?.len();
        let weyl = generate_weyl(rs, budget.max(1))?;
        let torus = Torus::build(ctx)?;
        let u_size = (q as f64).powi(m as i32);
        let right_size: f64 = weyl.iter().map(|w| (q as f64).powi(inversion_roots(rs, w).len() as i32)).sum();
        if torus.elements.len() as f64 * u_size * right_size > budget as f64 {
            return Err(Error::BudgetExceeded);
        }
        let elems = ring.elements()?;
        let positive: Vec<usize> = (0..m).collect();
        let lefts = tuples(&elems, m)
            .into_par_iter()
            .flat_map_iter(|a| {
                let mut u = ctx.identity();
                for (&r, p) in positive.iter().zip(&a) {
                    u = ctx.mul(&u, &ctx.x(r, p));
                }
                torus
                    .elements
                    .iter()
                    .map(|(t, tm)| {
                        let left = ctx.mul(tm, &u);
                        (ctx.inverse(&left).expect("group element"), t.clone(), a.clone())
                    })
                    .collect::<Vec<_>>()
            })
            .collect();
        let mut rights: HashMap<M<R>, Vec<(usize, Vec<R::Elem>)>> = HashMap::new();
        for (wi, w) in weyl.iter().enumerate() {
            let lift = weyl_lift(ctx, w)?;
            let inv = inversion_roots(rs, w);
            for b in tuples(&elems, inv.len()) {
                let mut g = lift.clone();
                for (&r, p) in inv.iter().zip(&b) {
                    g = ctx.mul(&g, &ctx.x(r, p));
                }
                rights.entry(g).or_default().push((wi, b));
            }
        }
        Ok(BruhatOracle { ctx, weyl, lefts, rights })
    }

    fn form(&self, t: &[R::Elem], a: &[R::Elem], wi: usize, b: &[R::Elem]) -> BruhatForm<R::Elem> {
        let rs = self.ctx.rs();
        let zero = self.ctx.ring.zero();
        let w = self.weyl[wi].clone();
        let inv = inversion_roots(rs, &w);
        BruhatForm {
            t: t.to_vec(),
            a: a.iter().cloned().enumerate().collect(),
            b: with_zeros(rs.num_positive(), &zero, &inv, b),
            w,
        }
    }

    /// Every matching form (uniqueness audit).
    pub fn audit(&self, g: &M<R>) -> Vec<BruhatForm<R::Elem>> {
        let mut out = Vec::new();
        for (inv_left, t, a) in &self.lefts {
            let right = self.ctx.mul(inv_left, g);
            if let Some(hits) = self.rights.get(&right) {
                for (wi, b) in hits {
                    out.push(self.form(t, a, *wi, b));
                }
            }
        }
        out
    }

    pub fn decompose(&self, g: &M<R>) -> Result<BruhatForm<R::Elem>> {
        for (inv_left, t, a) in &self.lefts {
            let right = self.ctx.mul(inv_left, g);
            if let Some(hits) = self.rights.get(&right) {
                let (wi, b) = &hits[0];
                return Ok(self.form(t, a, *wi, b));
            }
        }
        Err(Error::MalformedTable("element lies in no Bruhat cell".into()))
    }
}

/// Default search budget for the Bruhat oracle.
pub const DEFAULT_ORACLE_BUDGET: usize = 10_000_000;

pub fn bruhat_oracle<R: Ring>(ctx: &GroupContext<R>, g: &M<R>) -> Result<BruhatForm<R::Elem>> {
    BruhatOracle::new(ctx, DEFAULT_ORACLE_BUDGET)?.decompose(g)
}

/// Per-cell solver: for each `w` in length order and each `u'`, test whether
/// `g·(ŵu')⁻¹` is in `B` by its weight profile, then read `t` and `u` off it.
pub struct BruhatSolver<'a, R: Ring> {
    ctx: &'a GroupContext<R>,
    weights: Vec<Vec<i32>>,
    cells: Vec<(WeylElement, Vec<usize>, M<R>)>,
    torus: Torus<R::Elem>,
    elems: Vec<R::Elem>,
}

impl<'a, R: Ring> BruhatSolver<'a, R> {
    pub fn new(ctx: &'a GroupContext<R>) -> Result<Self> {
        if !ctx.ring.is_field() || !ctx.ring.is_finite() {
            return Err(Error::NotLocal);
        }
        let rs = ctx.rs();
        let cells = generate_weyl(rs, usize::MAX)?
            .into_iter()
            .map(|w| {
                let inv = inversion_roots(rs, &w);
                let lift_inv = ctx.inverse(&weyl_lift(ctx, &w)?)?;
                Ok((w, inv, lift_inv))
            })
            .collect::<Result<_>>()?;
        Ok(BruhatSolver {
            ctx,
            weights: basis_weights(ctx),
            cells,
            torus: Torus::build(ctx)?,
            elems: ctx.ring.elements()?,
        })
    }

    fn in_borel_profile(&self, m: &M<R>) -> bool {
        let n = m.dim();
        let ring = &self.ctx.ring;
        (0..n).all(|r| {
            (0..n).all(|c| {
                ring.is_zero(m.get(r, c)) || self.weights[r].iter().zip(&self.weights[c]).all(|(x, y)| x >= y)
            })
        })
    }

    /// Splits `m ∈ B` as `t·u`.
    fn split_borel(&self, m: &M<R>) -> Option<(Vec<R::Elem>, Vec<R::Elem>)> {
        let ctx = self.ctx;
        let n = m.dim();
        let mut diag = ctx.identity();
        for r in 0..n {
            for c in 0..n {
                if self.weights[r] == self.weights[c] {
                    diag.set(r, c, m.get(r, c).clone());
                }
            }
        }
        let idx = self.torus.lookup.get(&diag)?;
        let (t, tm) = &self.torus.elements[*idx];
        let u = ctx.mul(&ctx.inverse(tm).ok()?, m);
        let positive: Vec<usize> = (0..ctx.rs().num_positive()).collect();
        let a = peel_left(ctx, &u, &positive)?;
        Some((t.clone(), a))
    }

    pub fn decompose(&self, g: &M<R>) -> Result<BruhatForm<R::Elem>> {
        let ctx = self.ctx;
        let ring = &ctx.ring;
        let m = ctx.rs().num_positive();
        for (w, inv, lift_inv) in &self.cells {
            for b in tuples(&self.elems, inv.len()) {
                // g · (ŵ ∏ x(b))⁻¹ = g · x(b_k)⁻¹ … x(b_1)⁻¹ · ŵ⁻¹
                let mut cur = g.clone();
                for (&r, p) in inv.iter().zip(&b).rev() {
                    cur = ctx.mul(&cur, &ctx.x(r, &ring.neg(p)));
                }
                let cur = ctx.mul(&cur, lift_inv);
                if !self.in_borel_profile(&cur) {
                    continue;
                }
                let Some((t, a)) = self.split_borel(&cur) else { continue };
                let form = BruhatForm {
                    t,
                    a: a.into_iter().enumerate().collect(),
                    w: w.clone(),
                    b: with_zeros(m, &ring.zero(), inv, &b),
                };
                if form.recompose(ctx)? == *g {
                    return Ok(form);
                }
            }
        }
        Err(Error::MalformedTable("element lies in no Bruhat cell".into()))
    }
}

pub fn bruhat_decompose<R: Ring>(ctx: &GroupContext<R>, g: &M<R>) -> Result<BruhatForm<R::Elem>> {
    BruhatSolver::new(ctx)?.decompose(g)
}

/// Uniqueness audit and cell census over a complete group table.
#[derive(Debug, Clone, Default)]
pub struct BruhatAudit {
    /// Cell label → number of elements.
    pub census: BTreeMap<String, usize>,
    /// Elements with zero or several forms.
    pub non_unique: Vec<usize>,
    pub total: usize,
}

pub fn bruhat_audit<R: Ring>(ctx: &GroupContext<R>, table: &GroupTable<R::Elem>, budget: usize) -> Result<BruhatAudit> {
    let oracle = BruhatOracle::new(ctx, budget)?;
    let results: Vec<(usize, Vec<BruhatForm<R::Elem>>)> =
        (0..table.len()).into_par_iter().map(|i| (i, oracle.audit(table.element(i)))).collect();
    let mut audit = BruhatAudit { total: table.len(), ..Default::default() };
    for (i, forms) in results {
        if forms.len() != 1 {
            audit.non_unique.push(i);
            continue;
        }
        *audit.census.entry(cell_label(&forms[0].w)).or_default() += 1;
    }
    Ok(audit)
}

/// Parameters `(h, x, v)` with `x_{-γ}(s) x_γ(t) = h_γ(h) x_γ(x) x_{-γ}(v)`.
pub fn opposite_shift<R: Ring>(ring: &R, s: &R::Elem, t: &R::Elem) -> Result<(R::Elem, R::Elem, R::Elem)> {
    let d = ring.add(&ring.one(), &ring.mul(s, t));
    let inv = ring.inverse(&d).ok_or(Error::NonUnitDenominator)?;
    Ok((inv.clone(), ring.mul(t, &d), ring.mul(s, &inv)))
}

/// Parameters `(h, x, v)` with `x_γ(1) x_{-γ}(s) x_γ(1)⁻¹ = h_γ(h) x_γ(x) x_{-γ}(v)`.
pub fn opposite_shift_conjugate<R: Ring>(ring: &R, s: &R::Elem) -> Result<(R::Elem, R::Elem, R::Elem)> {
    let d = ring.sub(&ring.one(), s);
    let inv = ring.inverse(&d).ok_or(Error::NonUnitDenominator)?;
    Ok((inv.clone(), ring.sub(&ring.mul(s, s), s), ring.mul(s, &inv)))
}

/// `h_γ(h) x_γ(x) x_{-γ}(v)` in the context.
pub fn shift_product<R: Ring>(ctx: &GroupContext<R>, gamma: usize, p: &(R::Elem, R::Elem, R::Elem)) -> Result<M<R>> {
    let neg = ctx.rs().neg(gamma);
    Ok(ctx.mul(&ctx.mul(&ctx.h(gamma, &p.0)?, &ctx.x(gamma, &p.1)), &ctx.x(neg, &p.2)))
}

/// `g = ∏ x_{α_i}(r_i) · t · x_{-α_m}(s_m) ⋯ x_{-α_1}(s_1)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct UtvForm<E> {
    /// Positive roots in height order.
    pub r: Vec<(usize, E)>,
    /// `h_{α_i}(u_i)` parameters over the simple roots.
    pub t: Vec<E>,
    /// `(α_i, s_i)` for positive `α_i` in height order; the factor is `x_{-α_i}(s_i)`.
    pub s: Vec<(usize, E)>,
}

impl<E: Clone + Eq + std::hash::Hash> UtvForm<E> {
    pub fn recompose<R: Ring<Elem = E>>(&self, ctx: &GroupContext<R>) -> Result<Matrix<E>> {
        let rs = ctx.rs();
        let mut g = ctx.identity();
        for (r, p) in &self.r {
            g = ctx.mul(&g, &ctx.x(*r, p));
        }
        g = ctx.mul(&g, &torus_element(ctx, &self.t)?);
        for (r, p) in self.s.iter().rev() {
            g = ctx.mul(&g, &ctx.x(rs.neg(*r), p));
        }
        Ok(g)
    }

    pub fn display<R: Ring<Elem = E>>(&self, ctx: &GroupContext<R>) -> String {
        let rs = ctx.rs();
        let ring = &ctx.ring;
        let mut parts: Vec<String> =
            self.r.iter().filter(|(_, p)| !ring.is_zero(p)).map(|(r, p)| x_word(rs, ring, *r, p)).collect();
        parts.extend(torus_word(ctx, &self.t));
        parts.extend(
            self.s.iter().rev().filter(|(_, p)| !ring.is_zero(p)).map(|(r, p)| x_word(rs, ring, rs.neg(*r), p)),
        );
        if parts.is_empty() {
            "1".into()
        } else {
            parts.join("*")
        }
    }
}

/// Input to [`utv_decompose`]: a matrix or a word in the generators.
#[derive(Debug, Clone)]
pub enum UtvInput<E> {
    Matrix(Matrix<E>),
    Word(Vec<WordFactor<E>>),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum WordFactor<E> {
    X(usize, E),
    /// `h_α(u)` for any root `α`.
    H(usize, E),
    /// `w_α(u)`.
    W(usize, E),
}

pub fn evaluate_word<R: Ring>(ctx: &GroupContext<R>, word: &[WordFactor<R::Elem>]) -> Result<M<R>> {
    let mut g = ctx.identity();
    for f in word {
        let m = match f {
            WordFactor::X(a, t) => ctx.x(*a, t),
            WordFactor::H(a, t) => ctx.h(*a, t)?,
            WordFactor::W(a, t) => ctx.w(*a, t)?,
        };
        g = ctx.mul(&g, &m);
    }
    Ok(g)
}

/// Default rewriting step budget for word inputs.
pub const DEFAULT_REWRITE_BUDGET: usize = 100_000;

/// Gauss decomposition. `Err(NotInBigCell)` is a legitimate outcome.
///
/// Matrices are split by unit-pivot elimination in a weight-compatible basis
/// order. Words are first brought to normal form by rewriting; when a crossing
/// `x_{-γ}(s) x_γ(t)` has `1 + st` not a unit the word is evaluated and the
/// matrix path decides.
pub fn utv_decompose<R: Ring>(
    ctx: &GroupContext<R>,
    comm: &CommutatorTable,
    input: &UtvInput<R::Elem>,
    budget: usize,
) -> Result<UtvForm<R::Elem>> {
    if !ctx.ring.is_local() {
        return Err(Error::NotLocal);
    }
    match input {
        UtvInput::Matrix(m) => utv_from_matrix(ctx, m),
        UtvInput::Word(word) => match rewrite_to_utv(ctx, comm, word, budget) {
            Err(Error::NotInBigCell) => utv_from_matrix(ctx, &evaluate_word(ctx, word)?),
            other => other,
        },
    }
}

/// `g = U·D·L` by elimination from the bottom-right, then peeling.
pub fn utv_from_matrix<R: Ring>(ctx: &GroupContext<R>, g: &M<R>) -> Result<UtvForm<R::Elem>> {
    let ring = &ctx.ring;
    let rs = ctx.rs();
    let n = ctx.dim();
    let weights = basis_weights(ctx);
    // basis sorted by decreasing weight height: positive root elements are upper triangular
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by_key(|&i| (-weights[i].iter().sum::<i32>(), i));
    let a: Vec<Vec<R::Elem>> = order.iter().map(|&r| order.iter().map(|&c| g.get(r, c).clone()).collect()).collect();
    // A = U D L  ⇔  elimination on rows/columns from the last index upwards
    let mut work = a;
    let mut upper = vec![vec![ring.zero(); n]; n];
    let mut lower = vec![vec![ring.zero(); n]; n];
    let mut diag = vec![ring.zero(); n];
    for k in (0..n).rev() {
        let p = work[k][k].clone();
        let inv = ring.inverse(&p).ok_or(Error::NotInBigCell)?;
        diag[k] = p;
        upper[k][k] = ring.one();
        lower[k][k] = ring.one();
        for i in 0..k {
            upper[i][k] = ring.mul(&work[i][k], &inv);
            lower[k][i] = ring.mul(&work[k][i], &inv);
        }
        for i in 0..k {
            for j in 0..k {
                let sub = ring.mul(&ring.mul(&upper[i][k], &diag[k]), &lower[k][j]);
                work[i][j] = ring.sub(&work[i][j], &sub);
            }
        }
    }
    let unpermute = |m: &[Vec<R::Elem>]| {
        let mut out = Matrix::zero(ring, n);
        for (i, &r) in order.iter().enumerate() {
            for (j, &c) in order.iter().enumerate() {
                out.set(r, c, m[i][j].clone());
            }
        }
        out
    };
    let u = unpermute(&upper);
    let l = unpermute(&lower);
    let mut d = Matrix::zero(ring, n);
    for (i, &r) in order.iter().enumerate() {
        d.set(r, r, diag[i].clone());
    }
    let torus = Torus::build(ctx)?;
    let t = torus.params_of(&d).ok_or(Error::NotInBigCell)?.to_vec();
    let positive: Vec<usize> = (0..rs.num_positive()).collect();
    let r = peel_left(ctx, &u, &positive).ok_or(Error::NotInBigCell)?;
    let negative: Vec<usize> = positive.iter().map(|&i| rs.neg(i)).collect();
    let s = peel_right(ctx, &l, &negative).ok_or(Error::NotInBigCell)?;
    let form = UtvForm {
        r: r.into_iter().enumerate().collect(),
        t,
        s: s.into_iter().enumerate().collect(),
    };
    debug_assert!(form.recompose(ctx)? == *g);
    Ok(form)
}

#[derive(Debug, Clone)]
enum Factor<E> {
    X(usize, E),
    T(Vec<E>),
}

/// Brings a word to `U·T·V` normal form with R1, R2, the torus action and the
/// opposite-root shift. `NotInBigCell` signals a non-unit crossing.
pub fn rewrite_to_utv<R: Ring>(
    ctx: &GroupContext<R>,
    comm: &CommutatorTable,
    word: &[WordFactor<R::Elem>],
    budget: usize,
) -> Result<UtvForm<R::Elem>> {
    let ring = &ctx.ring;
    let rs = ctx.rs();
    let m = rs.num_positive();
    let simple = rs.simple();
    let one = ring.one();
    let mut fs: Vec<Factor<R::Elem>> = Vec::new();
    for f in word {
        match f {
            WordFactor::X(a, t) => fs.push(Factor::X(*a, t.clone())),
            WordFactor::H(a, u) => fs.push(Factor::T(torus_params_of_h(ctx, *a, u)?)),
            WordFactor::W(a, u) => {
                let inv = ring.inverse(u).ok_or(Error::NonUnitParameter)?;
                fs.push(Factor::X(*a, u.clone()));
                fs.push(Factor::X(rs.neg(*a), ring.neg(&inv)));
                fs.push(Factor::X(*a, u.clone()));
            }
        }
    }
    // key order: positive roots by index, torus, negative roots by decreasing height
    let key = |f: &Factor<R::Elem>| -> (u8, usize) {
        match f {
            Factor::X(a, _) if *a < m => (0, *a),
            Factor::T(_) => (1, 0),
            Factor::X(a, _) => (2, 2 * m - 1 - *a),
        }
    };
    let chi = |t: &[R::Elem], b: usize| -> Result<R::Elem> {
        let mut c = one.clone();
        for (&g, u) in simple.iter().zip(t) {
            c = ring.mul(&c, &ring.pow_signed(u, rs.pairing(b, g) as i64).ok_or(Error::NonUnitParameter)?);
        }
        Ok(c)
    };
    let mut steps = 0;
    let mut i = 0;
    while i + 1 < fs.len() {
        if let Factor::X(_, t) = &fs[i] {
            if ring.is_zero(t) {
                fs.remove(i);
                i = i.saturating_sub(1);
                continue;
            }
        }
        let (ka, kb) = (key(&fs[i]), key(&fs[i + 1]));
        if ka < kb {
            i += 1;
            continue;
        }
        steps += 1;
        if steps > budget {
            return Err(Error::RewriteDivergence);
        }
        let replacement: Vec<Factor<R::Elem>> = match (&fs[i], &fs[i + 1]) {
            (Factor::T(p), Factor::T(q)) => vec![Factor::T(p.iter().zip(q).map(|(a, b)| ring.mul(a, b)).collect())],
            (Factor::X(a, t), Factor::X(b, u)) if a == b => vec![Factor::X(*a, ring.add(t, u))],
            // x_β(u) · t = t · x_β(χ(β)⁻¹ u)
            (Factor::X(b, u), Factor::T(t)) => {
                let c = ring.inverse(&chi(t, *b)?).ok_or(Error::NonUnitParameter)?;
                vec![Factor::T(t.clone()), Factor::X(*b, ring.mul(&c, u))]
            }
            // t · x_β(u) = x_β(χ(β) u) · t
            (Factor::T(t), Factor::X(b, u)) => vec![Factor::X(*b, ring.mul(&chi(t, *b)?, u)), Factor::T(t.clone())],
            (Factor::X(a, s), Factor::X(b, t)) if *b == rs.neg(*a) => {
                // x_{-γ}(s) x_γ(t) = h_γ(1/(1+st)) x_γ(t(1+st)) x_{-γ}(s/(1+st))
                let (h, x, v) = opposite_shift(ring, s, t).map_err(|_| Error::NotInBigCell)?;
                vec![Factor::T(torus_params_of_h(ctx, *b, &h)?), Factor::X(*b, x), Factor::X(*a, v)]
            }
            (Factor::X(a, t), Factor::X(b, u)) => {
                // x_a(t) x_b(u) = [x_a(t), x_b(u)] x_b(u) x_a(t)
                let mut out: Vec<Factor<R::Elem>> = comm
                    .get(*a, *b)
                    .iter()
                    .map(|c| {
                        let p = ring.mul(
                            &ring.from_i64(c.c),
                            &ring.mul(&ring.pow(t, c.i as u64), &ring.pow(u, c.j as u64)),
                        );
                        Factor::X(c.root, p)
                    })
                    .collect();
                out.push(Factor::X(*b, u.clone()));
                out.push(Factor::X(*a, t.clone()));
                out
            }
        };
        fs.splice(i..i + 2, replacement);
        i = i.saturating_sub(1);
    }
    fs.retain(|f| !matches!(f, Factor::X(_, t) if ring.is_zero(t)));
    let mut r: Vec<(usize, R::Elem)> = (0..m).map(|i| (i, ring.zero())).collect();
    let mut s = r.clone();
    let mut t = vec![one.clone(); rs.rank()];
    for f in fs {
        match f {
            Factor::X(a, p) if a < m => r[a].1 = p,
            Factor::X(a, p) => s[rs.neg(a)].1 = p,
            Factor::T(p) => t = p,
        }
    }
    Ok(UtvForm { r, t, s })
}

/// Reduction of a group element over `Z/n` to each primary factor `Z/p^k`.
pub fn group_crt_split(ctx: &GroupContext<FinRing>, g: &Matrix<u16>) -> Result<Vec<Matrix<u16>>> {
    let split = crt_split(&ctx.ring)?;
    Ok((0..split.factors.len()).map(|k| g.map(|&a| split.project_onto(k, a))).collect())
}

/// Contexts over the primary factors of `Z/n`.
pub fn crt_contexts(ctx: &GroupContext<FinRing>) -> Result<Vec<GroupContext<FinRing>>> {
    let split = crt_split(&ctx.ring)?;
    Ok(split.factors.iter().map(|f| GroupContext::new(ctx.rep.clone(), f.clone())).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::chevalley::{derive_commutator_table, representation_for, RepKind};
    use crate::group::{enumerate_group, DEFAULT_ELEMENT_CAP};

    fn ctx(name: &str, kind: RepKind, ring: &str) -> GroupContext<FinRing> {
        let rep = representation_for(name.parse().unwrap(), kind).unwrap();
        GroupContext::new(rep, FinRing::parse(ring).unwrap())
    }

    #[test]
    fn weyl_lift_conjugates_root_subgroups() {
        let c = ctx("C2", RepKind::NaturalSp, "GF(3)");
        let rs = c.rs();
        for w in generate_weyl(rs, 100).unwrap() {
            let lift = weyl_lift(&c, &w).unwrap();
            let lift_inv = c.inverse(&lift).unwrap();
            for a in 0..rs.len() {
                let conj = c.mul(&c.mul(&lift, c.x_one(a)), &lift_inv);
                let target = w.apply(a);
                assert!(conj == *c.x_one(target) || conj == c.x(target, &2));
            }
        }
    }

    #[test]
    fn bruhat_examples() {
        let c = ctx("A2", RepKind::NaturalSl, "GF(2)");
        let rs = c.rs();
        let a1 = rs.simple()[0];
        let oracle = BruhatOracle::new(&c, DEFAULT_ORACLE_BUDGET).unwrap();
        let id = oracle.decompose(&c.identity()).unwrap();
        assert!(id.w.is_identity());
        assert!(id.a.iter().chain(&id.b).all(|(_, p)| *p == 0));
        let g = c.x(rs.neg(a1), &1);
        let f = oracle.decompose(&g).unwrap();
        assert_eq!(f.w.reduced_word, vec![0]);
        assert_eq!(f.a[a1].1, 1);
        assert_eq!(f.b[a1].1, 1);
        assert_eq!(bruhat_decompose(&c, &g).unwrap(), f);

        let c3 = ctx("A2", RepKind::NaturalSl, "GF(3)");
        let h = c3.h(c3.rs().simple()[0], &2).unwrap();
        let f = bruhat_decompose(&c3, &h).unwrap();
        assert!(f.w.is_identity());
        assert!(f.a.iter().chain(&f.b).all(|(_, p)| *p == 0));
        assert_eq!(f.recompose(&c3).unwrap(), h);
    }

    #[test]
    fn bruhat_census_sl3_gf2() {
        let c = ctx("A2", RepKind::NaturalSl, "GF(2)");
        let table = enumerate_group(&c, DEFAULT_ELEMENT_CAP).unwrap();
        let audit = bruhat_audit(&c, &table, DEFAULT_ORACLE_BUDGET).unwrap();
        assert!(audit.non_unique.is_empty());
        let mut sizes: Vec<usize> = audit.census.values().copied().collect();
        sizes.sort();
        assert_eq!(sizes, vec![8, 16, 16, 32, 32, 64]);
    }

    #[test]
    fn shift_identities() {
        for ring in ["Z/4", "Z/9", "GF(2)", "GF(3)"] {
            let c = ctx("C2", RepKind::NaturalSp, ring);
            let r = &c.ring;
            for gamma in 0..c.rs().len() {
                for s in r.elements().unwrap() {
                    for t in r.elements().unwrap() {
                        let lhs = c.mul(&c.x(c.rs().neg(gamma), &s), &c.x(gamma, &t));
                        match opposite_shift(r, &s, &t) {
                            Ok(p) => assert_eq!(shift_product(&c, gamma, &p).unwrap(), lhs),
                            Err(e) => assert_eq!(e, Error::NonUnitDenominator),
                        }
                    }
                    let x1 = c.x_one(gamma);
                    let lhs = c.conjugate(&c.x(c.rs().neg(gamma), &s), x1).unwrap();
                    if let Ok(p) = opposite_shift_conjugate(r, &s) {
                        assert_eq!(shift_product(&c, gamma, &p).unwrap(), lhs);
                    }
                }
            }
        }
        let z4 = FinRing::zmod(4).unwrap();
        assert_eq!(opposite_shift(&z4, &2, &1).unwrap(), (3, 3, 2));
        assert_eq!(opposite_shift(&z4, &0, &3).unwrap(), (1, 3, 0));
        assert_eq!(opposite_shift(&z4, &3, &0).unwrap(), (1, 0, 3));
    }

    #[test]
    fn utv_examples() {
        let c = ctx("C2", RepKind::NaturalSp, "Z/4");
        let comm = derive_commutator_table(&c.rep).unwrap();
        let rs = c.rs();
        let a = rs.simple()[0];
        let w = c.w(a, &1).unwrap();
        assert!(matches!(utv_from_matrix(&c, &w), Err(Error::NotInBigCell)));
        let word = vec![WordFactor::W(a, 1)];
        assert!(matches!(
            utv_decompose(&c, &comm, &UtvInput::Word(word), DEFAULT_REWRITE_BUDGET),
            Err(Error::NotInBigCell)
        ));

        let word = vec![WordFactor::X(rs.neg(a), 2), WordFactor::X(a, 1)];
        let f = utv_decompose(&c, &comm, &UtvInput::Word(word.clone()), DEFAULT_REWRITE_BUDGET).unwrap();
        assert_eq!(f.t, torus_params_of_h(&c, a, &3).unwrap());
        assert_eq!(f.recompose(&c).unwrap(), evaluate_word(&c, &word).unwrap());
        let g = evaluate_word(&c, &word).unwrap();
        assert_eq!(utv_from_matrix(&c, &g).unwrap(), f);

        // already in normal form
        let b = rs.simple()[1];
        let word = vec![WordFactor::X(b, 3), WordFactor::H(a, 3), WordFactor::X(rs.neg(b), 2)];
        let f = utv_decompose(&c, &comm, &UtvInput::Word(word), DEFAULT_REWRITE_BUDGET).unwrap();
        assert_eq!(f.r[b].1, 3);
        assert_eq!(f.s[b].1, 2);
    }

    #[test]
    fn crt_split_examples() {
        let c = ctx("A2", RepKind::NaturalSl, "Z/6");
        let a = c.rs().simple()[0];
        let parts = group_crt_split(&c, &c.x(a, &3)).unwrap();
        let cs = crt_contexts(&c).unwrap();
        assert_eq!(parts[0], cs[0].x(a, &1));
        assert_eq!(parts[1], cs[1].x(a, &0));
        let id = group_crt_split(&c, &c.identity()).unwrap();
        assert!(id.iter().zip(&cs).all(|(g, k)| g.is_identity(&k.ring)));
    }

    #[test]
    fn oracle_and_solver_agree() {
        for (name, kind) in [("A2", RepKind::NaturalSl), ("C2", RepKind::NaturalSp)] {
            let c = ctx(name, kind, "GF(2)");
            let table = enumerate_group(&c, DEFAULT_ELEMENT_CAP).unwrap();
            let oracle = BruhatOracle::new(&c, DEFAULT_ORACLE_BUDGET).unwrap();
            let solver = BruhatSolver::new(&c).unwrap();
            for g in table.elements() {
                let forms = oracle.audit(g);
                assert_eq!(forms.len(), 1);
                let f = solver.decompose(g).unwrap();
                assert_eq!(f, forms[0]);
                assert!(f.satisfies_constraint(&c));
                assert_eq!(f.recompose(&c).unwrap(), *g);
            }
        }
    }

    #[test]
    fn random_big_cell_round_trips() {
        use rand::{Rng as _, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        for ring in ["Z/9", "Z/8"] {
            let c = ctx("C2", RepKind::NaturalSp, ring);
            let comm = derive_commutator_table(&c.rep).unwrap();
            let rs = c.rs();
            let m = rs.num_positive();
            let elems = c.ring.elements().unwrap();
            let units = c.ring.units().unwrap();
            let radical = c.ring.radical().unwrap();
            for _ in 0..500 {
                let mut word = Vec::new();
                for _ in 0..rng.gen_range(1..8) {
                    let a = rng.gen_range(0..rs.len());
                    word.push(match rng.gen_range(0..3) {
                        0 if a < m => WordFactor::X(a, elems[rng.gen_range(0..elems.len())]),
                        0 | 1 => WordFactor::X(a, radical[rng.gen_range(0..radical.len())]),
                        _ => WordFactor::H(a, units[rng.gen_range(0..units.len())]),
                    });
                }
                let g = evaluate_word(&c, &word).unwrap();
                let from_word =
                    utv_decompose(&c, &comm, &UtvInput::Word(word), DEFAULT_REWRITE_BUDGET).unwrap();
                let from_matrix = utv_from_matrix(&c, &g).unwrap();
                assert_eq!(from_word, from_matrix);
                assert_eq!(from_word.recompose(&c).unwrap(), g);
            }
        }
    }
}
