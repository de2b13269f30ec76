use std::collections::HashMap;

use super::{note_value, provenance, GroupSystem, Note, RingSystem};
use crate::chevalley::{symbolic_x, RepKind, Representation};
use crate::error::{Error, Result};
use crate::group::{GeneratorLiteral, GroupContext};
use crate::matrix::{IntMatrix, Matrix};
use crate::rings::{parse_expr, Expr, FinRing, Poly, PolyRing, Ring};
use crate::rootsys::RootSystem;
use crate::words::Word;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GroupVarEncoding {
    /// Matrix entries, membership equations and an inverse companion.
    Scheme,
    /// A product of `L·|Φ|` root unipotents with ring parameters.
    Elementary(usize),
}

/// `v = ∏ x_{r_k}(t_k)` over `L` sweeps of the roots in index order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ElementaryEncoding {
    pub var: String,
    pub params: Vec<String>,
    pub roots: Vec<usize>,
}

pub fn encode_bounded_elementary(rs: &RootSystem, var: &str, l: usize) -> ElementaryEncoding {
    let roots: Vec<usize> = (0..l).flat_map(|_| 0..rs.len()).collect();
    let params = (1..=roots.len()).map(|k| format!("{var}_t{k}")).collect();
    ElementaryEncoding { var: var.to_string(), params, roots }
}

impl ElementaryEncoding {
    pub fn evaluate<R: Ring>(&self, ctx: &GroupContext<R>, values: &[R::Elem]) -> Matrix<R::Elem> {
        self.roots.iter().zip(values).fold(ctx.identity(), |acc, (&r, t)| ctx.mul(&acc, &ctx.x(r, t)))
    }

    /// The product and its inverse over `pr`, parameters starting at variable `offset`.
    fn symbolic(&self, rep: &Representation, pr: &PolyRing, offset: usize) -> (Matrix<Poly>, Matrix<Poly>) {
        let mut fwd = Matrix::identity(pr, rep.dim);
        let mut inv = Matrix::identity(pr, rep.dim);
        for (k, &r) in self.roots.iter().enumerate() {
            let t = pr.var(offset + k);
            fwd = fwd.mul(pr, &symbolic_x(rep, pr, r, &t));
            inv = symbolic_x(rep, pr, r, &pr.neg(&t)).mul(pr, &inv);
        }
        (fwd, inv)
    }
}

/// The alternating form `[[0, I], [-I, 0]]` preserved by the natural symplectic matrices.
pub fn symplectic_form(dim: usize) -> IntMatrix {
    let l = dim / 2;
    let mut j = IntMatrix::zero(dim);
    for i in 0..l {
        j.set(i, l + i, 1);
        j.set(l + i, i, -1);
    }
    j
}

fn scheme_names(v: &str, n: usize) -> (Vec<String>, Vec<String>) {
    let cells: Vec<(usize, usize)> = (1..=n).flat_map(|i| (1..=n).map(move |j| (i, j))).collect();
    (
        cells.iter().map(|(i, j)| format!("{v}_{i}_{j}")).collect(),
        cells.iter().map(|(i, j)| format!("{v}_inv_{i}_{j}")).collect(),
    )
}

struct Lowering<'a> {
    pr: PolyRing,
    ctx: GroupContext<FinRing>,
    mats: HashMap<String, (Matrix<Poly>, Matrix<Poly>)>,
    consts: HashMap<(GeneratorLiteral, bool), Matrix<Poly>>,
    sym_names: &'a [String],
}

impl Lowering<'_> {
    fn lift(&self, g: &Matrix<u16>) -> Result<Matrix<Poly>> {
        let pr = &self.pr;
        let lookup = |s: &str| self.sym_names.iter().any(|n| n == s).then(|| pr.var(pr.names().iter().position(|n| n == s).unwrap()));
        let data = g
            .entries()
            .iter()
            .map(|e| parse_expr(&self.ctx.ring.format(e))?.eval(pr, &lookup))
            .collect::<Result<Vec<_>>>()?;
        Ok(Matrix::from_vec(g.dim(), data))
    }

    fn word(&mut self, w: &Word, inverse: bool) -> Result<Matrix<Poly>> {
        let pr = self.pr.clone();
        Ok(match w {
            Word::Identity => Matrix::identity(&pr, self.ctx.dim()),
            Word::Var(v) => {
                let (m, mi) = self.mats.get(v).ok_or_else(|| Error::UnknownSymbol(v.clone()))?;
                if inverse { mi.clone() } else { m.clone() }
            }
            Word::Gen(lit) => {
                let key = (lit.clone(), inverse);
                if let Some(m) = self.consts.get(&key) {
                    return Ok(m.clone());
                }
                let g = self.ctx.generator(lit, &|_| None)?;
                let g = if inverse { self.ctx.inverse(&g)? } else { g };
                let m = self.lift(&g)?;
                self.consts.insert(key, m.clone());
                m
            }
            Word::Inv(a) => self.word(a, !inverse)?,
            Word::Pow(a, k) => {
                let base = self.word(a, inverse ^ (*k < 0))?;
                (0..k.unsigned_abs()).fold(Matrix::identity(&pr, self.ctx.dim()), |acc, _| acc.mul(&pr, &base))
            }
            Word::Prod(fs) => {
                let mut acc = Matrix::identity(&pr, self.ctx.dim());
                let order: Vec<&Word> = if inverse { fs.iter().rev().collect() } else { fs.iter().collect() };
                for f in order {
                    acc = acc.mul(&pr, &self.word(f, inverse)?);
                }
                acc
            }
            Word::Comm(a, b) => {
                // [a, b]⁻¹ = [b, a]
                let (a, b) = if inverse { (b, a) } else { (a, b) };
                let m = [self.word(a, false)?, self.word(b, false)?, self.word(a, true)?, self.word(b, true)?];
                m[0].mul(&pr, &m[1]).mul(&pr, &m[2]).mul(&pr, &m[3])
            }
        })
    }
}

fn membership(rep: &Representation, pr: &PolyRing, m: &Matrix<Poly>) -> Vec<Poly> {
    let n = rep.dim;
    match rep.kind {
        RepKind::NaturalSl => vec![pr.sub(&m.det(pr), &pr.one())],
        RepKind::NaturalSp => {
            let j = symplectic_form(n).to_ring(pr);
            m.transpose().mul(pr, &j).mul(pr, m).sub(pr, &j).entries().to_vec()
        }
        RepKind::Adjoint => {
            // m[e_i, e_j] = [m e_i, m e_j]
            let table = &rep.table;
            let mut out = Vec::new();
            for i in 0..n {
                for j in i + 1..n {
                    let mut lhs = vec![pr.zero(); n];
                    for (l, c) in table.bracket_basis(i, j) {
                        for (k, slot) in lhs.iter_mut().enumerate() {
                            *slot = pr.add(slot, &pr.mul(&pr.from_i64(c), m.get(k, l)));
                        }
                    }
                    let mut rhs = vec![pr.zero(); n];
                    for p in 0..n {
                        for q in 0..n {
                            let prod = pr.mul(m.get(p, i), m.get(q, j));
                            if prod.is_zero() {
                                continue;
                            }
                            for (k, c) in table.bracket_basis(p, q) {
                                rhs[k] = pr.add(&rhs[k], &pr.mul(&pr.from_i64(c), &prod));
                            }
                        }
                    }
                    out.extend(lhs.iter().zip(&rhs).map(|(a, b)| pr.sub(a, b)));
                }
            }
            out
        }
    }
}

fn to_expr(p: &Poly, names: &[String]) -> Result<Expr> {
    parse_expr(&p.display(names))
}

/// Polynomial equations over the same ring whose solutions are the matrix
/// entries (or elementary parameters) of solutions of `sys`.
pub fn compile_group_to_ring(sys: &GroupSystem, encoding: GroupVarEncoding) -> Result<RingSystem> {
    let ctx = sys.context()?;
    let rep = sys.rep.clone();
    let n = rep.dim;
    let sym_names: Vec<String> = ctx.ring.symbols().into_iter().map(|(s, _)| s).collect();
    let mut ring_vars = Vec::new();
    let mut notes = Vec::new();
    let mut encodings = Vec::new();
    for v in &sys.vars {
        match encoding {
            GroupVarEncoding::Scheme => {
                let (entries, inverse) = scheme_names(v, n);
                notes.push(Note::map(v, &entries));
                ring_vars.extend(entries);
                ring_vars.extend(inverse);
            }
            GroupVarEncoding::Elementary(l) => {
                let e = encode_bounded_elementary(sys.rs(), v, l);
                notes.push(Note::map(v, &e.params));
                ring_vars.extend(e.params.iter().cloned());
                encodings.push(e);
            }
        }
    }
    notes.push(Note::new(
        "encoding",
        match encoding {
            GroupVarEncoding::Scheme => "scheme".to_string(),
            GroupVarEncoding::Elementary(l) => format!("elementary L={l}"),
        },
    ));
    let names: Vec<String> = ring_vars.iter().chain(&sym_names).cloned().collect();
    let pr = PolyRing::from_names(names.clone());
    let mut polys = Vec::new();
    let mut mats = HashMap::new();
    let mut offset = 0;
    for (k, v) in sys.vars.iter().enumerate() {
        match encoding {
            GroupVarEncoding::Scheme => {
                let m = Matrix::from_vec(n, (0..n * n).map(|i| pr.var(offset + i)).collect());
                let mi = Matrix::from_vec(n, (0..n * n).map(|i| pr.var(offset + n * n + i)).collect());
                polys.extend(membership(&rep, &pr, &m));
                polys.extend(m.mul(&pr, &mi).sub(&pr, &Matrix::identity(&pr, n)).entries().iter().cloned());
                mats.insert(v.clone(), (m, mi));
                offset += 2 * n * n;
            }
            GroupVarEncoding::Elementary(_) => {
                let e = &encodings[k];
                mats.insert(v.clone(), e.symbolic(&rep, &pr, offset));
                offset += e.params.len();
            }
        }
    }
    let mut low = Lowering { pr: pr.clone(), ctx, mats, consts: HashMap::new(), sym_names: &sym_names };
    for (l, r) in &sys.equations {
        let diff = low.word(l, false)?.sub(&pr, &low.word(r, false)?);
        polys.extend(diff.entries().iter().cloned());
    }
    let zero = Expr::Int(0.into());
    let equations = polys.iter().map(|p| Ok((to_expr(p, &names)?, zero.clone()))).collect::<Result<_>>()?;
    Ok(RingSystem { ring: sys.ring.clone(), vars: ring_vars, equations, notes })
}

/// Group values of the source variables read from a ring witness of the compiled system.
pub(crate) fn pull_back(
    src: &GroupSystem,
    compiled: &RingSystem,
    ctx: &GroupContext<FinRing>,
    witness: &[u16],
) -> Result<Option<Vec<Matrix<u16>>>> {
    let map = provenance(&compiled.notes);
    let enc = note_value(&compiled.notes, "encoding").unwrap_or("scheme");
    let width: Option<usize> = enc.strip_prefix("elementary L=").and_then(|l| l.trim().parse().ok());
    let mut out = Vec::new();
    for v in &src.vars {
        let Some((_, names)) = map.iter().find(|(s, _)| s == v) else { return Ok(None) };
        let Some(vals) = names
            .iter()
            .map(|t| compiled.vars.iter().position(|n| n == t).map(|i| witness[i]))
            .collect::<Option<Vec<u16>>>()
        else {
            return Ok(None);
        };
        out.push(match width {
            Some(l) => encode_bounded_elementary(src.rs(), v, l).evaluate(ctx, &vals),
            None => Matrix::from_vec(ctx.dim(), vals),
        });
    }
    Ok(Some(out))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::{enumerate_group, DEFAULT_ELEMENT_CAP};
    use crate::reduce::{parse_group_system, parse_ring_system, solve_group_system, solve_ring_system};
    use std::collections::BTreeSet;

    #[test]
    fn sl3_square_root_of_transvection() {
        let g = parse_group_system("group A2 sl GF(2); var v; eq v*v = x(a1;1);").unwrap();
        let r = compile_group_to_ring(&g, GroupVarEncoding::Scheme).unwrap();
        assert_eq!(r.vars.len(), 18);
        assert_eq!(r.equations.len(), 1 + 9 + 9);
        let det = r.polys().unwrap()[0].clone();
        assert_eq!(det.num_terms(), 7);
        assert_eq!(parse_ring_system(&r.to_string()).unwrap(), r);
        let out = solve_ring_system(&r, false, 10_000_000).unwrap();
        assert!(out.satisfiable);
        let ctx = g.context().unwrap();
        let vals = pull_back(&g, &r, &ctx, &out.witness.unwrap()).unwrap().unwrap();
        let t = enumerate_group(&ctx, DEFAULT_ELEMENT_CAP).unwrap();
        assert!(t.contains(&vals[0]));
        assert_eq!(ctx.mul(&vals[0], &vals[0]), *ctx.x_one(ctx.rs().simple()[0]));
        assert!(solve_group_system(&g, false, DEFAULT_ELEMENT_CAP, u64::MAX).unwrap().satisfiable);
    }

    #[test]
    fn symplectic_block_has_sixteen_equations() {
        let g = parse_group_system("group C2 sp GF(3); var v;").unwrap();
        let r = compile_group_to_ring(&g, GroupVarEncoding::Scheme).unwrap();
        assert_eq!(r.equations.len(), 16 + 16);
        let ctx = g.context().unwrap();
        let j = symplectic_form(4).to_ring(&ctx.ring);
        for a in 0..ctx.rs().len() {
            let x = ctx.x_one(a);
            assert_eq!(x.transpose().mul(&ctx.ring, &j).mul(&ctx.ring, x), j);
        }
    }

    #[test]
    fn membership_equations_hold_on_the_group() {
        for (sys, kind) in [("A2", "sl"), ("C2", "sp"), ("A2", "ad")] {
            let g = parse_group_system(&format!("group {sys} {kind} GF(2); var v;")).unwrap();
            let r = compile_group_to_ring(&g, GroupVarEncoding::Scheme).unwrap();
            let ctx = g.context().unwrap();
            let t = enumerate_group(&ctx, DEFAULT_ELEMENT_CAP).unwrap();
            for m in t.elements().step_by(7) {
                let inv = ctx.inverse(m).unwrap();
                let vals: Vec<u16> = m.entries().iter().chain(inv.entries()).copied().collect();
                assert!(r.holds(&ctx.ring, &vals).unwrap(), "{sys} {kind}");
            }
        }
    }

    #[test]
    fn elementary_encoding() {
        let g = parse_group_system("group C2 sp GF(2); var v;").unwrap();
        let rs = g.rs();
        assert_eq!(encode_bounded_elementary(rs, "v", 1).params.len(), 8);
        let e = encode_bounded_elementary(rs, "v", 2);
        assert_eq!(e.params.len(), 16);
        let ctx = g.context().unwrap();
        let mut image = BTreeSet::new();
        for bits in 0u32..1 << 16 {
            let vals: Vec<u16> = (0..16).map(|k| (bits >> k & 1) as u16).collect();
            image.insert(e.evaluate(&ctx, &vals));
        }
        assert_eq!(image.len(), 720);

        let g = parse_group_system("group A2 sl GF(2); var v; eq [v, x(a1;1)] = 1;").unwrap();
        let r = compile_group_to_ring(&g, GroupVarEncoding::Elementary(1)).unwrap();
        assert_eq!(r.vars.len(), 6);
        let out = solve_ring_system(&r, false, 1_000_000).unwrap();
        let ctx = g.context().unwrap();
        let vals = pull_back(&g, &r, &ctx, &out.witness.unwrap()).unwrap().unwrap();
        assert!(ctx.commutes(&vals[0], ctx.x_one(ctx.rs().simple()[0])));
    }
}
