//! Elementary Chevalley groups as exact matrix groups.

use std::fmt;
use std::sync::Arc;

use indexmap::IndexSet;
use rayon::prelude::*;

use crate::chevalley::{CommutatorTable, Representation};
use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::rings::{Expr, PolyRing, Ring};
use crate::rootsys::RootSystem;

pub type GroupElement<E> = Matrix<E>;

/// Default element cap for [`enumerate_group`].
pub const DEFAULT_ELEMENT_CAP: usize = 2_000_000;

/// A Chevalley group `G_π(Φ, R)` fixed by a representation and a ring.
#[derive(Debug, Clone)]
pub struct GroupContext<R: Ring> {
    pub rep: Arc<Representation>,
    pub ring: R,
    divided: Vec<Vec<Matrix<R::Elem>>>,
    ones: Vec<Matrix<R::Elem>>,
}

impl<R: Ring> GroupContext<R> {
    pub fn new(rep: Arc<Representation>, ring: R) -> Self {
        let divided: Vec<Vec<_>> = (0..rep.rs.len())
            .map(|a| rep.divided_powers(a).iter().map(|m| m.to_ring(&ring)).collect())
            .collect();
        let mut ctx = GroupContext { rep, ring, divided, ones: Vec::new() };
        let one = ctx.ring.one();
        ctx.ones = (0..ctx.rs().len()).map(|a| ctx.x(a, &one)).collect();
        ctx
    }

    pub fn rs(&self) -> &RootSystem {
        &self.rep.rs
    }

    pub fn dim(&self) -> usize {
        self.rep.dim
    }

    pub fn identity(&self) -> Matrix<R::Elem> {
        Matrix::identity(&self.ring, self.dim())
    }

    /// `x_α(t) = Σ t^k π(e_α)^k / k!`.
    pub fn x(&self, a: usize, t: &R::Elem) -> Matrix<R::Elem> {
        let ring = &self.ring;
        let mut acc = self.divided[a][0].clone();
        let mut power = ring.one();
        for d in &self.divided[a][1..] {
            power = ring.mul(&power, t);
            if ring.is_zero(&power) {
                break;
            }
            acc = acc.add(ring, &d.scale(ring, &power));
        }
        acc
    }

    /// Cached `x_α(1)`.
    pub fn x_one(&self, a: usize) -> &Matrix<R::Elem> {
        &self.ones[a]
    }

    /// `w_α(t) = x_α(t) x_{-α}(-t⁻¹) x_α(t)`.
    pub fn w(&self, a: usize, t: &R::Elem) -> Result<Matrix<R::Elem>> {
        let inv = self.ring.inverse(t).ok_or(Error::NonUnitParameter)?;
        let xa = self.x(a, t);
        let xm = self.x(self.rs().neg(a), &self.ring.neg(&inv));
        Ok(xa.mul(&self.ring, &xm).mul(&self.ring, &xa))
    }

    /// `h_α(t) = w_α(t) w_α(1)⁻¹`.
    pub fn h(&self, a: usize, t: &R::Elem) -> Result<Matrix<R::Elem>> {
        let wt = self.w(a, t)?;
        // w_α(1)⁻¹ = w_α(-1)
        let w1_inv = self.w(a, &self.ring.neg(&self.ring.one()))?;
        Ok(wt.mul(&self.ring, &w1_inv))
    }

    pub fn mul(&self, g: &Matrix<R::Elem>, h: &Matrix<R::Elem>) -> Matrix<R::Elem> {
        g.mul(&self.ring, h)
    }

    pub fn try_mul(&self, g: &Matrix<R::Elem>, h: &Matrix<R::Elem>) -> Result<Matrix<R::Elem>> {
        g.try_mul(&self.ring, h)
    }

    pub fn inverse(&self, g: &Matrix<R::Elem>) -> Result<Matrix<R::Elem>> {
        g.inverse(&self.ring).ok_or(Error::NotInvertible)
    }

    /// `[g, h] = g h g⁻¹ h⁻¹`.
    pub fn commutator(&self, g: &Matrix<R::Elem>, h: &Matrix<R::Elem>) -> Result<Matrix<R::Elem>> {
        let gh = self.try_mul(g, h)?;
        let hg = self.mul(h, g);
        Ok(self.mul(&gh, &self.inverse(&hg)?))
    }

    /// `h g h⁻¹`.
    pub fn conjugate(&self, g: &Matrix<R::Elem>, h: &Matrix<R::Elem>) -> Result<Matrix<R::Elem>> {
        Ok(self.mul(&self.try_mul(h, g)?, &self.inverse(h)?))
    }

    pub fn commutes(&self, g: &Matrix<R::Elem>, h: &Matrix<R::Elem>) -> bool {
        self.mul(g, h) == self.mul(h, g)
    }

    /// Reads `t` from `g = x_α(t)`, or `None` if `g` is not in `X_α`.
    pub fn x_parameter(&self, g: &Matrix<R::Elem>, a: usize) -> Option<R::Elem> {
        let e = self.rep.root_matrix(a);
        let pos = e.data.iter().position(|&v| v == 1 || v == -1)?;
        let t = self.ring.mul(&g.entries()[pos], &self.ring.from_i64(e.data[pos]));
        (self.x(a, &t) == *g).then_some(t)
    }

    /// Evaluates a generator literal, resolving parameter symbols through `lookup`.
    pub fn generator(
        &self,
        lit: &GeneratorLiteral,
        lookup: &dyn Fn(&str) -> Option<R::Elem>,
    ) -> Result<Matrix<R::Elem>> {
        let syms = self.ring.symbols();
        let resolve = |s: &str| lookup(s).or_else(|| syms.iter().find(|(n, _)| n == s).map(|(_, v)| v.clone()));
        let t = lit.param.eval(&self.ring, &resolve)?;
        match lit.kind {
            GenKind::X => Ok(self.x(lit.root, &t)),
            GenKind::W => self.w(lit.root, &t),
            GenKind::H => self.h(lit.root, &t),
        }
    }

    /// The generating set used for enumeration: `x_α(g)` for additive
    /// generators `g`, and `h_α(u)` for simple `α` and units `u ≠ 1`.
    pub fn generators(&self) -> Result<Vec<(String, Matrix<R::Elem>)>> {
        let rs = self.rs();
        let mut out = Vec::new();
        for a in 0..rs.len() {
            for g in self.ring.additive_generators() {
                out.push((format!("x({};{})", rs.name(a), self.ring.format(&g)), self.x(a, &g)));
            }
        }
        let units = self.ring.units()?;
        for &a in rs.simple() {
            for u in units.iter().filter(|u| !self.ring.is_one(u)) {
                out.push((format!("h({};{})", rs.name(a), self.ring.format(u)), self.h(a, u)?));
            }
        }
        Ok(out)
    }

    pub fn format(&self, g: &Matrix<R::Elem>) -> String {
        g.display(&self.ring)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum GenKind {
    X,
    W,
    H,
}

/// `x(<root>;<t>)`, `w(<root>;<t>)` or `h(<root>;<t>)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct GeneratorLiteral {
    pub kind: GenKind,
    pub root: usize,
    pub param: Expr,
}

impl GeneratorLiteral {
    pub fn display(&self, rs: &RootSystem) -> String {
        let k = match self.kind {
            GenKind::X => 'x',
            GenKind::W => 'w',
            GenKind::H => 'h',
        };
        format!("{k}({};{})", rs.name(self.root), self.param)
    }
}

impl fmt::Display for GenKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            GenKind::X => "x",
            GenKind::W => "w",
            GenKind::H => "h",
        })
    }
}

/// All elements of a finite group, in BFS discovery order.
#[derive(Debug, Clone)]
pub struct GroupTable<E> {
    elements: IndexSet<Matrix<E>>,
    inverses: Vec<u32>,
    pub generator_labels: Vec<String>,
    pub depth: usize,
}

impl<E: Clone + Eq + std::hash::Hash> GroupTable<E> {
    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn element(&self, i: usize) -> &Matrix<E> {
        &self.elements[i]
    }

    pub fn elements(&self) -> impl Iterator<Item = &Matrix<E>> {
        self.elements.iter()
    }

    pub fn index_of(&self, g: &Matrix<E>) -> Option<usize> {
        self.elements.get_index_of(g)
    }

    pub fn contains(&self, g: &Matrix<E>) -> bool {
        self.elements.contains(g)
    }

    pub fn inverse_index(&self, i: usize) -> usize {
        self.inverses[i] as usize
    }
}

/// Breadth-first closure of [`GroupContext::generators`] from the identity.
pub fn enumerate_group<R: Ring>(ctx: &GroupContext<R>, cap: usize) -> Result<GroupTable<R::Elem>> {
    if !ctx.ring.is_finite() {
        return Err(Error::InfiniteRing);
    }
    let gens = ctx.generators()?;
    let gen_inv: Vec<_> = gens.iter().map(|(_, g)| ctx.inverse(g)).collect::<Result<_>>()?;
    let mut elements = IndexSet::new();
    elements.insert(ctx.identity());
    let mut parent: Vec<(u32, u32)> = vec![(0, 0)];
    let mut start = 0;
    let mut depth = 0;
    const CHUNK: usize = 1 << 14;
    while start < elements.len() {
        let end = elements.len();
        let mut lo = start;
        while lo < end {
            let hi = (lo + CHUNK).min(end);
            let products: Vec<Vec<Matrix<R::Elem>>> = (lo..hi)
                .into_par_iter()
                .map(|i| gens.iter().map(|(_, g)| ctx.mul(&elements[i], g)).collect())
                .collect();
            for (off, prods) in products.into_iter().enumerate() {
                for (k, p) in prods.into_iter().enumerate() {
                    if elements.insert(p) {
                        parent.push(((lo + off) as u32, k as u32));
                        if elements.len() > cap {
                            return Err(Error::CapExceeded(cap));
                        }
                    }
                }
            }
            lo = hi;
        }
        start = end;
        depth += 1;
    }
    // g = p·s  ⇒  g⁻¹ = s⁻¹·p⁻¹, with p discovered before g
    let mut inverses = vec![0u32; elements.len()];
    for i in 1..elements.len() {
        let (p, k) = parent[i];
        let inv = ctx.mul(&gen_inv[k as usize], &elements[inverses[p as usize] as usize]);
        inverses[i] = match elements.get_index_of(&inv) {
            Some(j) => j as u32,
            None => return Err(Error::MalformedTable("group is not closed under inversion".into())),
        };
    }
    Ok(GroupTable {
        elements,
        inverses,
        generator_labels: gens.into_iter().map(|(l, _)| l).collect(),
        depth: depth - 1,
    })
}

/// Indices of the elements commuting with every element of `s`.
pub fn centralizer<R: Ring>(
    ctx: &GroupContext<R>,
    table: &GroupTable<R::Elem>,
    s: &[Matrix<R::Elem>],
) -> Vec<usize> {
    (0..table.len())
        .into_par_iter()
        .filter(|&i| {
            let g = table.element(i);
            s.iter().all(|x| ctx.commutes(g, x))
        })
        .collect()
}

/// Indices of central elements (those commuting with every generator).
pub fn center<R: Ring>(ctx: &GroupContext<R>, table: &GroupTable<R::Elem>) -> Result<Vec<usize>> {
    let gens: Vec<_> = ctx.generators()?.into_iter().map(|(_, g)| g).collect();
    Ok(centralizer(ctx, table, &gens))
}

/// One checked relation instance.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RelationCheck {
    pub relation: &'static str,
    pub instance: String,
    pub passed: bool,
}

#[derive(Debug, Clone, Default)]
pub struct RelationReport {
    pub checks: Vec<RelationCheck>,
}

impl RelationReport {
    fn push(&mut self, relation: &'static str, instance: String, passed: bool) {
        self.checks.push(RelationCheck { relation, instance, passed });
    }

    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &RelationCheck> {
        self.checks.iter().filter(|c| !c.passed)
    }

    pub fn count(&self, relation: &str) -> usize {
        self.checks.iter().filter(|c| c.relation == relation).count()
    }

    pub fn merge(&mut self, other: RelationReport) {
        self.checks.extend(other.checks);
    }
}

/// R1 and R2 as identities over `Z[t, u]`.
pub fn verify_relations_symbolic(rep: &Arc<Representation>, comm: &CommutatorTable) -> RelationReport {
    let ring = PolyRing::new(&["t", "u"]);
    let ctx = GroupContext::new(Arc::clone(rep), ring.clone());
    let rs = ctx.rs();
    let (t, u) = (ring.var(0), ring.var(1));
    let mut report = RelationReport::default();
    for a in 0..rs.len() {
        let lhs = ctx.mul(&ctx.x(a, &t), &ctx.x(a, &u));
        report.push("R1", rs.name(a), lhs == ctx.x(a, &ring.add(&t, &u)));
    }
    let checks: Vec<(String, bool)> = comm
        .sorted()
        .into_par_iter()
        .map(|(&(a, b), terms)| {
            let xa = ctx.x(a, &t);
            let xb = ctx.x(b, &u);
            let lhs = ctx
                .mul(&ctx.mul(&xa, &xb), &ctx.mul(&ctx.x(a, &ring.neg(&t)), &ctx.x(b, &ring.neg(&u))));
            let mut rhs = ctx.identity();
            for term in terms {
                let p = ring.monomial(&[term.i, term.j], term.c);
                rhs = ctx.mul(&rhs, &ctx.x(term.root, &p));
            }
            (format!("{}, {}", rs.name(a), rs.name(b)), lhs == rhs)
        })
        .collect();
    for (inst, ok) in checks {
        report.push("R2", inst, ok);
    }
    report
}

/// The sign `c` in `w_α x_β(t) w_α⁻¹ = x_{w_α(β)}(c t)`, if it is `±1` for `t = 1`.
pub fn r5_sign<R: Ring>(ctx: &GroupContext<R>, a: usize, b: usize) -> Result<Option<i64>> {
    let w = ctx.w(a, &ctx.ring.one())?;
    let lhs = ctx.conjugate(ctx.x_one(b), &w)?;
    let target = ctx.rs().reflect(a, b);
    if lhs == *ctx.x_one(target) {
        Ok(Some(1))
    } else if lhs == ctx.x(target, &ctx.ring.from_i64(-1)) {
        Ok(Some(-1))
    } else {
        Ok(None)
    }
}

/// R3 to R6 and the torus action, exhaustively in the unit parameters.
pub fn verify_relations<R: Ring>(ctx: &GroupContext<R>) -> Result<RelationReport> {
    let ring = &ctx.ring;
    let rs = ctx.rs();
    let units = ring.units()?;
    let elements = ring.elements()?;
    let one = ring.one();
    let mut report = RelationReport::default();
    let roots: Vec<usize> = (0..rs.len()).collect();

    for &a in &roots {
        let w1 = ctx.w(a, &one)?;
        let xa = ctx.x_one(a);
        let def = ctx.mul(&ctx.mul(xa, &ctx.x(rs.neg(a), &ring.neg(&one))), xa);
        report.push("R3", format!("w({}) = w({};1)", rs.name(a), rs.name(a)), def == w1);
        for t in &units {
            let ok = ctx.w(a, t)? == ctx.mul(&ctx.h(a, t)?, &w1);
            report.push("R3", format!("w({};{}) = h·w", rs.name(a), ring.format(t)), ok);
        }
    }

    let per_alpha: Vec<Result<RelationReport>> = roots
        .par_iter()
        .map(|&a| {
            let mut rep = RelationReport::default();
            let w1 = ctx.w(a, &one)?;
            let w1_inv = ctx.inverse(&w1)?;
            let conj = |g: &Matrix<R::Elem>| ctx.mul(&ctx.mul(&w1, g), &w1_inv);
            for &b in &roots {
                let wb = rs.reflect(a, b);
                for t in &units {
                    let ok = conj(&ctx.h(b, t)?) == ctx.h(wb, t)?;
                    rep.push("R4", format!("{}, {}, t={}", rs.name(a), rs.name(b), ring.format(t)), ok);
                }
                let c = r5_sign(ctx, a, b)?;
                let mut ok = c.is_some();
                if let Some(c) = c {
                    let c = ring.from_i64(c);
                    for t in &units {
                        ok &= conj(&ctx.x(b, t)) == ctx.x(wb, &ring.mul(&c, t));
                    }
                }
                rep.push("R5", format!("{}, {}", rs.name(a), rs.name(b)), ok);
                for t in &units {
                    let h = ctx.h(a, t)?;
                    let h_inv = ctx.inverse(&h)?;
                    let k = rs.pairing(b, a) as i64;
                    let scale = ring.pow_signed(t, k).ok_or(Error::NonUnitParameter)?;
                    let mut ok = true;
                    for u in &elements {
                        ok &= ctx.mul(&ctx.mul(&h, &ctx.x(b, u)), &h_inv) == ctx.x(b, &ring.mul(&scale, u));
                    }
                    rep.push("R6", format!("{}, {}, t={}", rs.name(a), rs.name(b), ring.format(t)), ok);
                }
            }
            Ok(rep)
        })
        .collect();
    for r in per_alpha {
        report.merge(r?);
    }

    // torus action h(χ) x_β(ξ) h(χ)⁻¹ = x_β(χ(β) ξ) with h(χ) = ∏ h_γ(u_γ) over simple γ
    let simple = rs.simple().to_vec();
    let mut tuples: Vec<Vec<R::Elem>> = vec![Vec::new()];
    for _ in &simple {
        tuples = tuples
            .into_iter()
            .flat_map(|t| units.iter().map(move |u| [t.clone(), vec![u.clone()]].concat()))
            .collect();
    }
    for tuple in tuples {
        let mut h = ctx.identity();
        for (&g, u) in simple.iter().zip(&tuple) {
            h = ctx.mul(&h, &ctx.h(g, u)?);
        }
        let h_inv = ctx.inverse(&h)?;
        let mut ok = true;
        for &b in &roots {
            let mut chi = one.clone();
            for (&g, u) in simple.iter().zip(&tuple) {
                chi = ring.mul(&chi, &ring.pow_signed(u, rs.pairing(b, g) as i64).ok_or(Error::NonUnitParameter)?);
            }
            for xi in &elements {
                ok &= ctx.mul(&ctx.mul(&h, &ctx.x(b, xi)), &h_inv) == ctx.x(b, &ring.mul(&chi, xi));
            }
        }
        let label: Vec<String> = tuple.iter().map(|u| ring.format(u)).collect();
        report.push("e4", format!("u=({})", label.join(",")), ok);
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::chevalley::{derive_commutator_table, representation_for, RepKind};
    use crate::rings::FinRing;

    fn ctx(name: &str, kind: RepKind, ring: &str) -> GroupContext<FinRing> {
        let rep = representation_for(name.parse().unwrap(), kind).unwrap();
        GroupContext::new(rep, FinRing::parse(ring).unwrap())
    }

    #[test]
    fn basic_elements() {
        let c = ctx("A2", RepKind::NaturalSl, "GF(3)");
        let rs = c.rs();
        let a1 = rs.simple()[0];
        assert!(c.x(a1, &0).is_identity(&c.ring));
        let x = c.x(a1, &2);
        assert_eq!(c.format(&x), "[[1,2,0],[0,1,0],[0,0,1]]");
        assert_eq!(c.mul(&c.x(a1, &1), &c.x(a1, &2)), c.x(a1, &0));
        assert_eq!(c.inverse(&x).unwrap(), c.x(a1, &1));
        assert!(c.h(a1, &1).unwrap().is_identity(&c.ring));
        assert!(matches!(c.w(a1, &0), Err(Error::NonUnitParameter)));
        assert_eq!(c.x_parameter(&x, a1), Some(2));
        assert_eq!(c.x_parameter(&x, rs.simple()[1]), None);
    }

    #[test]
    fn commutator_in_a2() {
        let c = ctx("A2", RepKind::NaturalSl, "GF(3)");
        let rs = c.rs();
        let (a, b) = (rs.simple()[0], rs.simple()[1]);
        let comm = c.commutator(&c.x(a, &1), &c.x(b, &1)).unwrap();
        let ab = rs.sum(a, b).unwrap();
        let n = c.rep.table.n(a, b).unwrap();
        assert_eq!(comm, c.x(ab, &c.ring.from_i64(n)));
        let e1 = rs.parse_root("e1-e2").unwrap();
        let e3 = rs.parse_root("e1-e3").unwrap();
        assert!(c.commutator(&c.x(e1, &1), &c.x(e3, &1)).unwrap().is_identity(&c.ring));
    }

    #[test]
    fn r6_example() {
        let c = ctx("A2", RepKind::NaturalSl, "GF(5)");
        let rs = c.rs();
        let (a, b) = (rs.simple()[0], rs.simple()[1]);
        let h = c.h(a, &2).unwrap();
        let lhs = c.conjugate(&c.x(b, &3), &h).unwrap();
        // t^{-1} u with t = 2, u = 3 over GF(5)
        assert_eq!(lhs, c.x(b, &4));
    }

    #[test]
    fn group_orders() {
        for (name, kind, ring, order) in [
            ("A2", RepKind::NaturalSl, "GF(2)", 168),
            ("C2", RepKind::NaturalSp, "GF(2)", 720),
            ("A2", RepKind::NaturalSl, "GF(3)", 5616),
            ("A2", RepKind::NaturalSl, "GF(4)", 60480),
            ("A2", RepKind::NaturalSl, "Z/4", 43008),
        ] {
            let c = ctx(name, kind, ring);
            let t = enumerate_group(&c, DEFAULT_ELEMENT_CAP).unwrap();
            assert_eq!(t.len(), order, "{name} {ring}");
            for i in (0..t.len()).step_by(97) {
                let j = t.inverse_index(i);
                assert!(c.mul(t.element(i), t.element(j)).is_identity(&c.ring));
            }
        }
        let c = ctx("A2", RepKind::NaturalSl, "GF(2)");
        assert!(matches!(enumerate_group(&c, 100), Err(Error::CapExceeded(100))));
    }

    #[test]
    fn centers() {
        let c = ctx("A2", RepKind::NaturalSl, "GF(2)");
        let t = enumerate_group(&c, DEFAULT_ELEMENT_CAP).unwrap();
        assert_eq!(center(&c, &t).unwrap(), vec![0]);
        assert_eq!(centralizer(&c, &t, &[c.identity()]).len(), 168);
        let c = ctx("C2", RepKind::NaturalSp, "GF(3)");
        let t = enumerate_group(&c, DEFAULT_ELEMENT_CAP).unwrap();
        assert_eq!(t.len(), 51840);
        let z = center(&c, &t).unwrap();
        assert_eq!(z.len(), 2);
        let minus = c.identity().scale(&c.ring, &2);
        assert!(z.iter().any(|&i| *t.element(i) == minus));
    }

    #[test]
    fn relations_hold() {
        for (name, kind) in [("A2", RepKind::NaturalSl), ("C2", RepKind::NaturalSp), ("G2", RepKind::Adjoint)] {
            let rep = representation_for(name.parse().unwrap(), kind).unwrap();
            let comm = derive_commutator_table(&rep).unwrap();
            let sym = verify_relations_symbolic(&rep, &comm);
            assert!(sym.all_passed(), "{name}: {:?}", sym.failures().next());
            for ring in ["GF(2)", "GF(3)", "Z/4"] {
                let c = GroupContext::new(Arc::clone(&rep), FinRing::parse(ring).unwrap());
                let r = verify_relations(&c).unwrap();
                assert!(r.all_passed(), "{name} {ring}: {:?}", r.failures().next());
                assert!(r.count("e4") > 0);
            }
        }
    }
}
