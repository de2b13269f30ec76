//! Chevalley-basis structure constants, integral representations and
//! commutator coefficient tables.

use std::collections::HashMap;
use std::fmt::Write as _;
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::ToPrimitive;

use crate::error::{Error, Result};
use crate::matrix::{IntMatrix, Matrix};
use crate::rings::{Monomial, Poly, PolyRing, Ring};
use crate::rootsys::{build_root_system, Family, RootSystem, RootSystemId};

/// The only built-in sign convention: extraspecial pairs in the stored root
/// order all get positive structure constants.
pub const EXTRASPECIAL_V1: &str = "extraspecial-v1";

/// Structure constants `N(a, b)` of a Chevalley basis, keyed by root indices.
#[derive(Debug, Clone)]
pub struct ChevalleyBasisTable {
    pub rs: Arc<RootSystem>,
    n: HashMap<(usize, usize), i64>,
    /// Coefficients of `h_a` over the simple coroots `h_1..h_l`.
    cartan: Vec<Vec<i64>>,
    pub convention: String,
}

impl ChevalleyBasisTable {
    /// `N(a, b)`, or `None` when `a + b` is not a root.
    pub fn n(&self, a: usize, b: usize) -> Option<i64> {
        self.n.get(&(a, b)).copied()
    }

    pub fn cartan_part(&self, a: usize) -> &[i64] {
        &self.cartan[a]
    }

    /// Extraspecial pair `(a, b)` of a non-simple positive root.
    pub fn extraspecial_pair(&self, xi: usize) -> Option<(usize, usize)> {
        extraspecial_pair(&self.rs, xi)
    }

    /// All defined entries in a fixed order.
    pub fn entries(&self) -> Vec<((usize, usize), i64)> {
        let mut v: Vec<_> = self.n.iter().map(|(&k, &x)| (k, x)).collect();
        v.sort();
        v
    }

    pub fn dim(&self) -> usize {
        self.rs.len() + self.rs.rank()
    }

    /// Basis position of `e_a` in the Lie algebra (positive roots, Cartan, negative roots).
    pub fn root_slot(&self, a: usize) -> usize {
        let m = self.rs.num_positive();
        if a < m {
            a
        } else {
            a + self.rs.rank()
        }
    }

    /// Lie bracket of two basis elements as a sparse vector.
    pub fn bracket_basis(&self, x: usize, y: usize) -> Vec<(usize, i64)> {
        let rs = &self.rs;
        let m = rs.num_positive();
        let l = rs.rank();
        let classify = |s: usize| -> std::result::Result<usize, usize> {
            if s < m {
                Ok(s)
            } else if s < m + l {
                Err(s - m)
            } else {
                Ok(s - l)
            }
        };
        match (classify(x), classify(y)) {
            (Err(_), Err(_)) => vec![],
            (Err(i), Ok(b)) => {
                let c = rs.pairing(b, rs.simple()[i]) as i64;
                if c == 0 {
                    vec![]
                } else {
                    vec![(self.root_slot(b), c)]
                }
            }
            (Ok(a), Err(i)) => {
                let c = -(rs.pairing(a, rs.simple()[i]) as i64);
                if c == 0 {
                    vec![]
                } else {
                    vec![(self.root_slot(a), c)]
                }
            }
            (Ok(a), Ok(b)) => {
                if b == rs.neg(a) {
                    self.cartan[a]
                        .iter()
                        .enumerate()
                        .filter(|(_, &c)| c != 0)
                        .map(|(i, &c)| (m + i, c))
                        .collect()
                } else if let Some(s) = rs.sum(a, b) {
                    vec![(self.root_slot(s), self.n[&(a, b)])]
                } else {
                    vec![]
                }
            }
        }
    }

    fn bracket_vec(&self, x: &[(usize, i64)], y: &[(usize, i64)]) -> HashMap<usize, i64> {
        let mut out: HashMap<usize, i64> = HashMap::new();
        for &(i, a) in x {
            for &(j, b) in y {
                for (k, c) in self.bracket_basis(i, j) {
                    *out.entry(k).or_default() += a * b * c;
                }
            }
        }
        out.retain(|_, v| *v != 0);
        out
    }

    /// Checks the Jacobi identity on every triple of basis elements.
    pub fn jacobi_holds(&self) -> bool {
        let d = self.dim();
        for i in 0..d {
            for j in 0..d {
                let ij: Vec<_> = self.bracket_basis(i, j);
                for k in 0..d {
                    let jk = self.bracket_basis(j, k);
                    let ki = self.bracket_basis(k, i);
                    let mut total: HashMap<usize, i64> = HashMap::new();
                    for (t, part) in [
                        (vec![(i, 1)], jk),
                        (vec![(j, 1)], ki),
                        (vec![(k, 1)], ij.clone()),
                    ] {
                        for (s, v) in self.bracket_vec(&t, &part) {
                            *total.entry(s).or_default() += v;
                        }
                    }
                    if total.values().any(|&v| v != 0) {
                        return false;
                    }
                }
            }
        }
        true
    }
}

fn extraspecial_pair(rs: &RootSystem, xi: usize) -> Option<(usize, usize)> {
    if xi >= rs.num_positive() || rs.height(xi) < 2 {
        return None;
    }
    (0..rs.num_positive()).find_map(|a| {
        let b = rs.combo(xi, 1, a, -1)?;
        rs.is_positive(b).then_some((a, b))
    })
}

/// Builds the structure constants for `rs` under the named convention.
pub fn build_chevalley_basis(rs: &Arc<RootSystem>, convention: &str) -> Result<ChevalleyBasisTable> {
    if convention != EXTRASPECIAL_V1 {
        return Err(Error::UnknownConvention(convention.to_string()));
    }
    let n_roots = rs.len();
    let mut sums: Vec<Option<usize>> = vec![None; n_roots * n_roots];
    let mut mag: HashMap<(usize, usize), i64> = HashMap::new();
    for a in 0..n_roots {
        for b in 0..n_roots {
            if let Some(s) = rs.sum(a, b) {
                sums[a * n_roots + b] = Some(s);
                mag.insert((a, b), rs.string_down(a, b) as i64 + 1);
            }
        }
    }
    let sum = |a: usize, b: usize| sums[a * n_roots + b];
    let mut sign: HashMap<(usize, usize), i64> = HashMap::new();
    for xi in 0..rs.num_positive() {
        if let Some(pair) = extraspecial_pair(rs, xi) {
            sign.insert(pair, 1);
        }
    }

    let value = |sign: &HashMap<(usize, usize), i64>, a: usize, b: usize| -> Option<i64> {
        sign.get(&(a, b)).map(|s| s * mag[&(a, b)])
    };
    let pairs: Vec<(usize, usize)> = {
        let mut v: Vec<_> = mag.keys().copied().collect();
        v.sort_unstable();
        v
    };

    loop {
        let before = sign.len();
        // antisymmetry, N(-a,-b) = -N(a,b), and the cyclic rule for a + b + c = 0
        for &(a, b) in &pairs {
            let Some(s) = sign.get(&(a, b)).copied() else { continue };
            sign.entry((b, a)).or_insert(-s);
            sign.entry((rs.neg(a), rs.neg(b))).or_insert(-s);
            let c = rs.neg(sum(a, b).unwrap());
            sign.entry((b, c)).or_insert(s);
            sign.entry((c, a)).or_insert(s);
        }
        // Jacobi identity on e_a, e_b, e_c with a + b + c a root
        for &(a, b) in &pairs {
            let s = sum(a, b).unwrap();
            for c in 0..n_roots {
                if sum(c, s).is_none() {
                    continue;
                }
                let triple = [(a, b, c), (b, c, a), (c, a, b)];
                // coefficient of e_{a+b+c} in [e_x, [e_y, e_z]]
                let mut known = 0i64;
                let mut unknown: Vec<((usize, usize), i64)> = Vec::new();
                let mut blocked = false;
                for &(x, y, z) in &triple {
                    if y == rs.neg(z) {
                        known -= rs.pairing(x, y) as i64;
                        continue;
                    }
                    let Some(yz) = sum(y, z) else { continue };
                    let v1 = value(&sign, y, z);
                    let v2 = value(&sign, x, yz);
                    match (v1, v2) {
                        (Some(p), Some(q)) => known += p * q,
                        (Some(p), None) => unknown.push(((x, yz), p * mag[&(x, yz)])),
                        (None, Some(q)) => unknown.push(((y, z), q * mag[&(y, z)])),
                        (None, None) => blocked = true,
                    }
                }
                if blocked || unknown.len() != 1 {
                    continue;
                }
                let (key, scale) = unknown[0];
                // sign * scale + known = 0
                if scale == 0 || known % scale != 0 || (known / scale).abs() != 1 {
                    continue;
                }
                sign.entry(key).or_insert(-known / scale);
            }
        }
        if sign.len() == before {
            break;
        }
    }
    if sign.len() != pairs.len() {
        return Err(Error::MalformedTable(format!(
            "sign propagation left {} structure constants undetermined",
            pairs.len() - sign.len()
        )));
    }
    let n: HashMap<(usize, usize), i64> = pairs.iter().map(|&k| (k, sign[&k] * mag[&k])).collect();

    let simple = rs.simple();
    let cartan = (0..n_roots)
        .map(|a| {
            let na = rs.norm2(a) as i64;
            rs.root(a)
                .coeffs
                .iter()
                .zip(simple)
                .map(|(&c, &s)| c as i64 * rs.norm2(s) as i64 / na)
                .collect()
        })
        .collect();
    Ok(ChevalleyBasisTable { rs: Arc::clone(rs), n, cartan, convention: convention.to_string() })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum RepKind {
    Adjoint,
    /// `SL_{l+1}` on its natural module (type A only).
    NaturalSl,
    /// `Sp_{2l}` on its natural module (type C only).
    NaturalSp,
}

impl RepKind {
    pub fn parse(s: &str) -> Result<Self> {
        match s {
            "ad" | "adjoint" => Ok(RepKind::Adjoint),
            "sl" | "natural-sl" => Ok(RepKind::NaturalSl),
            "sp" | "natural-sp" => Ok(RepKind::NaturalSp),
            _ => Err(Error::UnknownSymbol(s.to_string())),
        }
    }

    pub fn short_name(self) -> &'static str {
        match self {
            RepKind::Adjoint => "ad",
            RepKind::NaturalSl => "sl",
            RepKind::NaturalSp => "sp",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum WeightLattice {
    SimplyConnected,
    Adjoint,
}

/// An integral representation: root-element matrices and their divided powers.
#[derive(Debug, Clone)]
pub struct Representation {
    pub rs: Arc<RootSystem>,
    pub table: Arc<ChevalleyBasisTable>,
    pub kind: RepKind,
    pub dim: usize,
    pub lattice: WeightLattice,
    /// `divided[a][k] = π(e_a)^k / k!`, `k = 0..=nilpotency bound`.
    divided: Vec<Vec<IntMatrix>>,
}

impl Representation {
    pub fn root_matrix(&self, a: usize) -> &IntMatrix {
        &self.divided[a][1]
    }

    pub fn divided_powers(&self, a: usize) -> &[IntMatrix] {
        &self.divided[a]
    }

    /// Identifier used in headers and cache keys, e.g. `C2 sp`.
    pub fn label(&self) -> String {
        format!("{} {}", self.rs.id, self.kind.short_name())
    }
}

fn natural_root_matrices(rs: &RootSystem, kind: RepKind) -> Vec<IntMatrix> {
    let l = rs.rank();
    (0..rs.len())
        .map(|a| {
            let c = &rs.root(a).coords;
            match kind {
                RepKind::NaturalSl => {
                    let mut m = IntMatrix::zero(l + 1);
                    let i = c.iter().position(|&x| x > 0).unwrap();
                    let j = c.iter().position(|&x| x < 0).unwrap();
                    m.set(i, j, 1);
                    m
                }
                _ => {
                    // basis e_1..e_l, f_1..f_l with form J = [[0, I], [-I, 0]]
                    let mut m = IntMatrix::zero(2 * l);
                    let nz: Vec<(usize, i32)> =
                        c.iter().enumerate().filter(|(_, &x)| x != 0).map(|(i, &x)| (i, x)).collect();
                    match nz.as_slice() {
                        [(i, x)] => {
                            if *x > 0 {
                                m.set(*i, l + i, 1);
                            } else {
                                m.set(l + i, *i, 1);
                            }
                        }
                        [(i, x), (j, y)] => match (*x > 0, *y > 0) {
                            (true, false) => {
                                m.set(*i, *j, 1);
                                m.set(l + j, l + i, -1);
                            }
                            (false, true) => {
                                m.set(*j, *i, 1);
                                m.set(l + i, l + j, -1);
                            }
                            (true, true) => {
                                m.set(*i, l + j, 1);
                                m.set(*j, l + i, 1);
                            }
                            (false, false) => {
                                m.set(l + j, *i, 1);
                                m.set(l + i, *j, 1);
                            }
                        },
                        _ => unreachable!("type C roots have one or two nonzero coordinates"),
                    }
                    m
                }
            }
        })
        .collect()
}

/// Rescales natural root matrices by signs so that their brackets reproduce `table`.
fn align_signs(rs: &RootSystem, table: &ChevalleyBasisTable, mats: &mut [IntMatrix]) -> Result<()> {
    let bracket_coeff = |mats: &[IntMatrix], a: usize, b: usize| -> i64 {
        let s = rs.sum(a, b).unwrap();
        let br = mats[a].commutator(&mats[b]);
        let target = &mats[s];
        let pos = target.data.iter().position(|&x| x != 0).unwrap();
        br.data[pos] / target.data[pos]
    };
    let m = rs.num_positive();
    for xi in 0..m {
        let Some((a, b)) = table.extraspecial_pair(xi) else { continue };
        let have = bracket_coeff(mats, a, b);
        let want = table.n(a, b).unwrap();
        if have == -want {
            mats[xi] = mats[xi].scale(-1);
            mats[xi + m] = mats[xi + m].scale(-1);
        } else if have != want {
            return Err(Error::MalformedTable(format!("natural matrices give N = {have}, expected ±{want}")));
        }
    }
    for ((a, b), v) in table.entries() {
        if bracket_coeff(mats, a, b) != v {
            return Err(Error::MalformedTable(format!("natural structure constant mismatch at ({a}, {b})")));
        }
    }
    Ok(())
}

fn adjoint_root_matrices(table: &ChevalleyBasisTable) -> Vec<IntMatrix> {
    let d = table.dim();
    (0..table.rs.len())
        .map(|a| {
            let x = table.root_slot(a);
            let mut m = IntMatrix::zero(d);
            for col in 0..d {
                for (row, c) in table.bracket_basis(x, col) {
                    m.set(row, col, c);
                }
            }
            m
        })
        .collect()
}

pub fn build_representation(table: &Arc<ChevalleyBasisTable>, kind: RepKind) -> Result<Representation> {
    let rs = Arc::clone(&table.rs);
    let mismatch = || Error::KindMismatch { kind: kind.short_name().into(), system: rs.id.to_string() };
    let (mut mats, lattice) = match kind {
        RepKind::Adjoint => (adjoint_root_matrices(table), WeightLattice::Adjoint),
        RepKind::NaturalSl if rs.id.family == Family::A => {
            (natural_root_matrices(&rs, kind), WeightLattice::SimplyConnected)
        }
        RepKind::NaturalSp if rs.id.family == Family::C => {
            (natural_root_matrices(&rs, kind), WeightLattice::SimplyConnected)
        }
        _ => return Err(mismatch()),
    };
    if kind != RepKind::Adjoint {
        align_signs(&rs, table, &mut mats)?;
    }
    let dim = mats[0].n;
    let divided = mats
        .into_iter()
        .map(|x| {
            let mut powers = vec![IntMatrix::identity(dim), x.clone()];
            let mut k = 2;
            loop {
                let next = powers[k - 1].mul(&x);
                if next.is_zero() {
                    break;
                }
                let next = next
                    .div_exact(k as i64)
                    .expect("divided powers of a Chevalley basis element are integral");
                powers.push(next);
                k += 1;
            }
            powers
        })
        .collect();
    Ok(Representation { rs, table: Arc::clone(table), kind, dim, lattice, divided })
}

/// Convenience: root system, structure constants and representation in one call.
pub fn representation_for(id: RootSystemId, kind: RepKind) -> Result<Arc<Representation>> {
    let rs = Arc::new(build_root_system(id)?);
    let table = Arc::new(build_chevalley_basis(&rs, EXTRASPECIAL_V1)?);
    Ok(Arc::new(build_representation(&table, kind)?))
}

/// One factor `x_{i a + j b}(c t^i u^j)` of a commutator.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct CommTerm {
    pub i: u32,
    pub j: u32,
    pub root: usize,
    pub c: i64,
}

/// Commutator coefficients `[x_a(t), x_b(u)] = ∏ x_{ia+jb}(c_ij t^i u^j)`,
/// factors ordered by `(i + j, i)`.
#[derive(Debug, Clone, Default)]
pub struct CommutatorTable {
    pub entries: HashMap<(usize, usize), Vec<CommTerm>>,
}

impl CommutatorTable {
    pub fn get(&self, a: usize, b: usize) -> &[CommTerm] {
        self.entries.get(&(a, b)).map(Vec::as_slice).unwrap_or(&[])
    }

    pub fn sorted(&self) -> Vec<(&(usize, usize), &Vec<CommTerm>)> {
        let mut v: Vec<_> = self.entries.iter().collect();
        v.sort_by_key(|(k, _)| **k);
        v
    }
}

/// Candidate `(i, j, root)` with `i a + j b ∈ Φ`, in product order.
pub fn commutator_candidates(rs: &RootSystem, a: usize, b: usize) -> Vec<(u32, u32, usize)> {
    let mut out = Vec::new();
    for i in 1..=3u32 {
        for j in 1..=3u32 {
            if let Some(r) = rs.combo(a, i as i32, b, j as i32) {
                out.push((i, j, r));
            }
        }
    }
    out.sort_by_key(|&(i, j, _)| (i + j, i));
    out
}

/// `x_a(p)` over a polynomial ring, with `p` any polynomial.
pub fn symbolic_x(rep: &Representation, ring: &PolyRing, a: usize, p: &Poly) -> Matrix<Poly> {
    let mut acc = Matrix::zero(ring, rep.dim);
    let mut power = ring.one();
    for d in rep.divided_powers(a) {
        acc = acc.add(ring, &d.to_ring(ring).scale(ring, &power));
        power = ring.mul(&power, p);
    }
    acc
}

fn tu_ring() -> PolyRing {
    PolyRing::new(&["t", "u"])
}

/// `[x_a(t), x_b(u)]` over `Z[t, u]`.
pub fn symbolic_commutator(rep: &Representation, a: usize, b: usize) -> Matrix<Poly> {
    let r = tu_ring();
    let t = r.var(0);
    let u = r.var(1);
    let xa = symbolic_x(rep, &r, a, &t);
    let xb = symbolic_x(rep, &r, b, &u);
    let xa_inv = symbolic_x(rep, &r, a, &r.neg(&t));
    let xb_inv = symbolic_x(rep, &r, b, &r.neg(&u));
    xa.mul(&r, &xb).mul(&r, &xa_inv).mul(&r, &xb_inv)
}

/// Peels the commutator of one pair into ordered factors.
pub fn peel_pair(rep: &Representation, a: usize, b: usize) -> Result<Vec<CommTerm>> {
    let rs = &rep.rs;
    let r = tu_ring();
    let mut m = symbolic_commutator(rep, a, b);
    let ident = Matrix::identity(&r, rep.dim);
    let mut out = Vec::new();
    for (i, j, root) in commutator_candidates(rs, a, b) {
        let mono = Monomial(vec![i, j]);
        let x = rep.root_matrix(root);
        let pos = x.data.iter().position(|&v| v != 0).unwrap();
        let residual = m.sub(&r, &ident);
        let coeff = residual.entries()[pos].coeff(&mono);
        let xv = BigInt::from(x.data[pos]);
        if &coeff % &xv != BigInt::from(0) {
            return Err(Error::PeelFailure(rs.name(a), rs.name(b)));
        }
        let c = (coeff / xv).to_i64().ok_or_else(|| Error::PeelFailure(rs.name(a), rs.name(b)))?;
        if c == 0 {
            continue;
        }
        let factor_inv = symbolic_x(rep, &r, root, &Poly::monomial(mono, -c));
        m = factor_inv.mul(&r, &m);
        out.push(CommTerm { i, j, root, c });
    }
    if !m.is_identity(&r) {
        return Err(Error::PeelFailure(rs.name(a), rs.name(b)));
    }
    Ok(out)
}

/// Derives the full commutator table of `rep` by symbolic peeling.
pub fn derive_commutator_table(rep: &Representation) -> Result<CommutatorTable> {
    use rayon::prelude::*;
    let rs = &rep.rs;
    let pairs: Vec<(usize, usize)> = (0..rs.len())
        .flat_map(|a| (0..rs.len()).map(move |b| (a, b)))
        .filter(|&(a, b)| rs.are_independent(a, b))
        .collect();
    let entries: Result<HashMap<_, _>> = pairs
        .par_iter()
        .map(|&(a, b)| peel_pair(rep, a, b).map(|v| ((a, b), v)))
        .collect();
    Ok(CommutatorTable { entries: entries? })
}

/// Serializes structure constants and commutator coefficients as a `chevtab v1` table.
pub fn export_tables(table: &ChevalleyBasisTable, comm: &CommutatorTable) -> String {
    let rs = &table.rs;
    let mut out = format!("chevtab v1 {} {}\n", rs.id, table.convention);
    for ((a, b), v) in table.entries() {
        let _ = writeln!(out, "N {} {} {}", rs.coord_string(a), rs.coord_string(b), v);
    }
    for ((a, b), terms) in comm.sorted() {
        for t in terms {
            let _ = writeln!(out, "C {} {} {} {} {}", rs.coord_string(*a), rs.coord_string(*b), t.i, t.j, t.c);
        }
    }
    out
}

/// Parsed contents of a `chevtab v1` table.
#[derive(Debug, Clone)]
pub struct ImportedTables {
    pub system: RootSystemId,
    pub convention: String,
    pub n: HashMap<(usize, usize), i64>,
    pub comm: CommutatorTable,
}

pub fn import_tables(text: &str) -> Result<ImportedTables> {
    let bad = |m: &str| Error::MalformedTable(m.to_string());
    let mut lines = text.lines();
    let header: Vec<&str> = lines.next().ok_or_else(|| bad("empty"))?.split_whitespace().collect();
    if header.len() != 4 || header[0] != "chevtab" || header[1] != "v1" {
        return Err(bad("header"));
    }
    let system: RootSystemId = header[2].parse()?;
    let rs = build_root_system(system)?;
    let mut n = HashMap::new();
    let mut comm = CommutatorTable::default();
    for line in lines.filter(|l| !l.trim().is_empty()) {
        let f: Vec<&str> = line.split_whitespace().collect();
        let root = |s: &str| rs.parse_root(s).map_err(|_| bad(line));
        let int = |s: &str| s.parse::<i64>().map_err(|_| bad(line));
        match f.as_slice() {
            ["N", a, b, v] => {
                n.insert((root(a)?, root(b)?), int(v)?);
            }
            ["C", a, b, i, j, c] => {
                let (a, b) = (root(a)?, root(b)?);
                let (i, j) = (int(i)? as u32, int(j)? as u32);
                let r = rs.combo(a, i as i32, b, j as i32).ok_or_else(|| bad(line))?;
                comm.entries.entry((a, b)).or_default().push(CommTerm { i, j, root: r, c: int(c)? });
            }
            _ => return Err(bad(line)),
        }
    }
    Ok(ImportedTables { system, convention: header[3].to_string(), n, comm })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn table(name: &str) -> Arc<ChevalleyBasisTable> {
        let rs = Arc::new(build_root_system(name.parse().unwrap()).unwrap());
        Arc::new(build_chevalley_basis(&rs, EXTRASPECIAL_V1).unwrap())
    }

    #[test]
    fn table_invariants() {
        for name in ["A2", "A3", "B2", "C2", "B3", "C3", "D4", "G2", "F4"] {
            let t = table(name);
            let rs = &t.rs;
            for a in 0..rs.len() {
                for b in 0..rs.len() {
                    match rs.sum(a, b) {
                        Some(_) => {
                            let v = t.n(a, b).unwrap();
                            assert_eq!(t.n(b, a), Some(-v));
                            assert_eq!(v.abs(), rs.string_down(a, b) as i64 + 1);
                        }
                        None => assert_eq!(t.n(a, b), None),
                    }
                }
            }
            for xi in 0..rs.num_positive() {
                if let Some((a, b)) = t.extraspecial_pair(xi) {
                    assert!(t.n(a, b).unwrap() > 0);
                }
            }
            assert!(t.jacobi_holds(), "{name}");
        }
    }

    #[test]
    fn unknown_convention() {
        let rs = Arc::new(build_root_system("A2".parse().unwrap()).unwrap());
        assert!(matches!(build_chevalley_basis(&rs, "other"), Err(Error::UnknownConvention(_))));
    }

    #[test]
    fn g2_chain_constant() {
        // α long, β short; N(β, α+β) has |N| = p + 1 with p = 1
        let t = table("G2");
        let rs = &t.rs;
        let (short, long) = (rs.simple()[0], rs.simple()[1]);
        let a_plus_b = rs.sum(short, long).unwrap();
        assert_eq!(rs.string_down(short, a_plus_b), 1);
        assert_eq!(t.n(short, a_plus_b).unwrap().abs(), 2);
    }

    #[test]
    fn representation_dimensions() {
        let dim = |name: &str, kind| representation_for(name.parse().unwrap(), kind).unwrap().dim;
        assert_eq!(dim("A2", RepKind::Adjoint), 8);
        assert_eq!(dim("G2", RepKind::Adjoint), 14);
        assert_eq!(dim("A2", RepKind::NaturalSl), 3);
        assert_eq!(dim("C3", RepKind::NaturalSp), 6);
        assert!(matches!(
            representation_for("B2".parse().unwrap(), RepKind::NaturalSp),
            Err(Error::KindMismatch { .. })
        ));
    }

    #[test]
    fn natural_sl_transvection() {
        let rep = representation_for("A2".parse().unwrap(), RepKind::NaturalSl).unwrap();
        let a1 = rep.rs.simple()[0];
        let mut e12 = IntMatrix::zero(3);
        e12.set(0, 1, 1);
        assert_eq!(rep.root_matrix(a1), &e12);
        assert_eq!(rep.divided_powers(a1).len(), 2);
    }

    #[test]
    fn natural_reps_share_the_table() {
        // align_signs already checks every constant; building must succeed for all ranks tested
        for name in ["A2", "A3", "A4"] {
            representation_for(name.parse().unwrap(), RepKind::NaturalSl).unwrap();
        }
        for name in ["C2", "C3", "C4"] {
            representation_for(name.parse().unwrap(), RepKind::NaturalSp).unwrap();
        }
    }

    #[test]
    fn orthogonal_pair_has_empty_commutator() {
        let rep = representation_for("C2".parse().unwrap(), RepKind::NaturalSp).unwrap();
        let rs = &rep.rs;
        let e1 = rs.parse_root("2e1").unwrap();
        let e2 = rs.parse_root("2e2").unwrap();
        assert!(peel_pair(&rep, e1, e2).unwrap().is_empty());
    }

    #[test]
    fn b2_and_g2_magnitudes() {
        let rep = representation_for("C2".parse().unwrap(), RepKind::NaturalSp).unwrap();
        let rs = &rep.rs;
        let long = rs.parse_root("2e1").unwrap();
        let short = rs.parse_root("e2-e1").unwrap();
        let mags: Vec<i64> = peel_pair(&rep, long, short).unwrap().iter().map(|t| t.c.abs()).collect();
        assert_eq!(mags, vec![1, 1]);

        let rep = representation_for("G2".parse().unwrap(), RepKind::Adjoint).unwrap();
        let rs = &rep.rs;
        let (b, a) = (rs.simple()[0], rs.simple()[1]);
        let ab = rs.sum(a, b).unwrap();
        let terms = peel_pair(&rep, ab, b).unwrap();
        let mags: Vec<i64> = terms.iter().map(|t| t.c.abs()).collect();
        assert_eq!(mags, vec![2, 3, 3]);
    }

    #[test]
    fn export_import_roundtrip() {
        let rep = representation_for("B2".parse().unwrap(), RepKind::Adjoint).unwrap();
        let comm = derive_commutator_table(&rep).unwrap();
        let text = export_tables(&rep.table, &comm);
        assert!(text.starts_with("chevtab v1 B2 extraspecial-v1\n"));
        let back = import_tables(&text).unwrap();
        assert_eq!(back.n.len(), rep.table.entries().len());
        for ((a, b), v) in rep.table.entries() {
            assert_eq!(back.n[&(a, b)], v);
        }
        for (k, terms) in &comm.entries {
            assert_eq!(back.comm.get(k.0, k.1), terms.as_slice());
        }
        assert!(import_tables("chevtab v2 B2 x").is_err());
    }
}
