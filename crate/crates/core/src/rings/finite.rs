use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::ToPrimitive;

use super::{Ring, RingSpec};
use crate::error::{Error, Result};

/// Largest field order for which addition and multiplication tables are built.
const MAX_FIELD_ORDER: u64 = 1024;
const MAX_MODULUS: u64 = u16::MAX as u64;

#[derive(Debug)]
struct FieldTables {
    p: u64,
    k: usize,
    /// Monic modulus, coefficients low to high (length `k + 1`).
    modulus: Vec<u64>,
    add: Vec<u16>,
    mul: Vec<u16>,
    neg: Vec<u16>,
    inv: Vec<u16>,
    default_modulus: bool,
}

#[derive(Debug, Clone)]
enum Kind {
    Zmod { n: u64, prime_powers: Vec<(u64, u32)> },
    Field(Arc<FieldTables>),
}

/// `Z/n` or a finite field `GF(p^k)`, elements encoded as `u16`.
///
/// `Z/n` residues are stored as themselves. A field element
/// `c_0 + c_1 x + ... + c_{k-1} x^{k-1}` is stored as `sum c_i p^i`.
#[derive(Debug, Clone)]
pub struct FinRing {
    kind: Kind,
    order: u64,
}

pub(crate) fn factorize(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= n {
        if n % p == 0 {
            let mut k = 0;
            while n % p == 0 {
                n /= p;
                k += 1;
            }
            out.push((p, k));
        }
        p += 1;
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

// Polynomials over GF(p), coefficients low to high, no trailing zeros.
fn poly_trim(mut a: Vec<u64>) -> Vec<u64> {
    while a.last() == Some(&0) {
        a.pop();
    }
    a
}

fn poly_rem(a: &[u64], m: &[u64], p: u64) -> Vec<u64> {
    let mut r = poly_trim(a.to_vec());
    let dm = m.len() - 1;
    let lead_inv = mod_inverse(m[dm], p).expect("nonzero leading coefficient");
    while r.len() > dm {
        let shift = r.len() - 1 - dm;
        let c = r[r.len() - 1] * lead_inv % p;
        for (i, &mi) in m.iter().enumerate() {
            r[shift + i] = (r[shift + i] + p - c * mi % p) % p;
        }
        r = poly_trim(r);
    }
    r
}

fn mod_inverse(a: u64, n: u64) -> Option<u64> {
    let e = BigInt::from(a).extended_gcd(&BigInt::from(n));
    if e.gcd != BigInt::from(1) {
        return None;
    }
    e.x.mod_floor(&BigInt::from(n)).to_u64()
}

fn is_irreducible(f: &[u64], p: u64) -> bool {
    let deg = f.len() - 1;
    if deg == 0 {
        return false;
    }
    // trial division by every monic polynomial of degree 1..=deg/2
    for d in 1..=deg / 2 {
        let count = p.pow(d as u32);
        for code in 0..count {
            let mut g = digits(code, p, d);
            g.push(1);
            if poly_rem(f, &g, p).is_empty() {
                return false;
            }
        }
    }
    true
}

fn digits(mut code: u64, p: u64, k: usize) -> Vec<u64> {
    let mut out = Vec::with_capacity(k);
    for _ in 0..k {
        out.push(code % p);
        code /= p;
    }
    out
}

fn undigits(c: &[u64], p: u64) -> u64 {
    c.iter().rev().fold(0, |acc, &d| acc * p + d)
}

fn build_tables(p: u64, modulus: Vec<u64>) -> FieldTables {
    let k = modulus.len() - 1;
    let q = p.pow(k as u32) as usize;
    let mut add = vec![0u16; q * q];
    let mut mul = vec![0u16; q * q];
    for a in 0..q {
        let da = digits(a as u64, p, k);
        for b in a..q {
            let db = digits(b as u64, p, k);
            let s: Vec<u64> = da.iter().zip(&db).map(|(x, y)| (x + y) % p).collect();
            let s = undigits(&s, p) as u16;
            let mut prod = vec![0u64; 2 * k];
            for (i, x) in da.iter().enumerate() {
                for (j, y) in db.iter().enumerate() {
                    prod[i + j] = (prod[i + j] + x * y) % p;
                }
            }
            let mut r = poly_rem(&prod, &modulus, p);
            r.resize(k, 0);
            let m = undigits(&r, p) as u16;
            add[a * q + b] = s;
            add[b * q + a] = s;
            mul[a * q + b] = m;
            mul[b * q + a] = m;
        }
    }
    let mut neg = vec![0u16; q];
    let mut inv = vec![0u16; q];
    for a in 0..q {
        for b in 0..q {
            if add[a * q + b] == 0 {
                neg[a] = b as u16;
            }
            if mul[a * q + b] == 1 {
                inv[a] = b as u16;
            }
        }
    }
    FieldTables { p, k, modulus, add, mul, neg, inv, default_modulus: true }
}

impl FinRing {
    pub fn zmod(n: u64) -> Result<Self> {
        if n < 2 {
            return Err(Error::BadModulus(format!("n = {n} must be at least 2")));
        }
        if n > MAX_MODULUS {
            return Err(Error::BadModulus(format!("n = {n} exceeds {MAX_MODULUS}")));
        }
        Ok(FinRing { kind: Kind::Zmod { n, prime_powers: factorize(n) }, order: n })
    }

    /// `GF(p^k)`; with `modulus = None` the first primitive irreducible
    /// polynomial in enumeration order is chosen.
    pub fn gf(p: u64, k: usize, modulus: Option<Vec<u64>>) -> Result<Self> {
        let pf = factorize(p);
        if pf.len() != 1 || pf[0].1 != 1 || k == 0 {
            return Err(Error::BadModulus(format!("GF({p}^{k}) is not a field order")));
        }
        let q = p.pow(k as u32);
        if q > MAX_FIELD_ORDER {
            return Err(Error::BadModulus(format!("field order {q} exceeds {MAX_FIELD_ORDER}")));
        }
        let modulus = match modulus {
            Some(f) => {
                let f: Vec<u64> = f.iter().map(|c| c % p).collect();
                let f = poly_trim(f);
                if f.len() != k + 1 || f[k] != 1 || !is_irreducible(&f, p) {
                    return Err(Error::ReducibleModulusPolynomial);
                }
                f
            }
            None => {
                if k == 1 {
                    vec![0, 1]
                } else {
                    find_primitive(p, k)
                }
            }
        };
        let default = if k == 1 { vec![0, 1] } else { find_primitive(p, k) };
        let mut tables = build_tables(p, modulus);
        tables.default_modulus = tables.modulus == default;
        Ok(FinRing { kind: Kind::Field(Arc::new(tables)), order: q })
    }

    pub fn parse(text: &str) -> Result<Self> {
        match RingSpec::parse(text)? {
            RingSpec::ModN(n) => FinRing::zmod(n),
            RingSpec::Gf { p, k, modulus } => FinRing::gf(p, k, modulus),
            _ => Err(Error::InfiniteRing),
        }
    }

    pub fn order(&self) -> u64 {
        self.order
    }

    pub fn characteristic(&self) -> u64 {
        match &self.kind {
            Kind::Zmod { n, .. } => *n,
            Kind::Field(t) => t.p,
        }
    }

    /// The modulus `n` for `Z/n`.
    pub fn modulus_n(&self) -> Option<u64> {
        match &self.kind {
            Kind::Zmod { n, .. } => Some(*n),
            Kind::Field(_) => None,
        }
    }

    /// The class of `x` in `GF(p^k)` (the chosen field generator), or `1` in `Z/n`.
    pub fn generator(&self) -> u16 {
        match &self.kind {
            Kind::Field(t) if t.k > 1 => t.p as u16,
            _ => 1,
        }
    }

    /// Radical for `Z/p^k` (multiples of `p`) or `{0}` for a field.
    pub fn radical(&self) -> Result<Vec<u16>> {
        let els = self.elements()?;
        let mut out = Vec::new();
        for a in els {
            if self.in_radical(&a)? {
                out.push(a);
            }
        }
        Ok(out)
    }
}

fn find_primitive(p: u64, k: usize) -> Vec<u64> {
    let q = p.pow(k as u32);
    for code in 0..p.pow(k as u32) {
        let mut f = digits(code, p, k);
        f.push(1);
        if f[0] == 0 || !is_irreducible(&f, p) {
            continue;
        }
        // x must have multiplicative order q - 1
        let t = build_tables(p, f.clone());
        let x = p as usize;
        let mut acc = 1usize;
        let mut ord = 0;
        loop {
            acc = t.mul[acc * q as usize + x] as usize;
            ord += 1;
            if acc == 1 {
                break;
            }
        }
        if ord == q - 1 {
            return f;
        }
    }
    unreachable!("every finite field has a primitive polynomial")
}

impl Ring for FinRing {
    type Elem = u16;

    fn zero(&self) -> u16 {
        0
    }
    fn one(&self) -> u16 {
        1
    }
    fn from_int(&self, n: &BigInt) -> u16 {
        let c = n.mod_floor(&BigInt::from(self.characteristic())).to_u64().unwrap();
        c as u16
    }
    fn from_i64(&self, n: i64) -> u16 {
        n.rem_euclid(self.characteristic() as i64) as u16
    }
    #[inline]
    fn add(&self, a: &u16, b: &u16) -> u16 {
        match &self.kind {
            Kind::Zmod { n, .. } => ((*a as u64 + *b as u64) % n) as u16,
            Kind::Field(t) => t.add[*a as usize * self.order as usize + *b as usize],
        }
    }
    #[inline]
    fn neg(&self, a: &u16) -> u16 {
        match &self.kind {
            Kind::Zmod { n, .. } => ((n - *a as u64) % n) as u16,
            Kind::Field(t) => t.neg[*a as usize],
        }
    }
    #[inline]
    fn mul(&self, a: &u16, b: &u16) -> u16 {
        match &self.kind {
            Kind::Zmod { n, .. } => (*a as u64 * *b as u64 % n) as u16,
            Kind::Field(t) => t.mul[*a as usize * self.order as usize + *b as usize],
        }
    }
    fn inverse(&self, a: &u16) -> Option<u16> {
        match &self.kind {
            Kind::Zmod { n, .. } => mod_inverse(*a as u64, *n).map(|x| x as u16),
            Kind::Field(t) => (*a != 0).then(|| t.inv[*a as usize]),
        }
    }
    fn format(&self, a: &u16) -> String {
        match &self.kind {
            Kind::Field(t) if t.k > 1 => {
                let d = digits(*a as u64, t.p, t.k);
                let mut terms = Vec::new();
                for (i, &c) in d.iter().enumerate().rev() {
                    if c == 0 {
                        continue;
                    }
                    let mono = match i {
                        0 => String::new(),
                        1 => "g".to_string(),
                        _ => format!("g^{i}"),
                    };
                    terms.push(match (c, i) {
                        (_, 0) => c.to_string(),
                        (1, _) => mono,
                        _ => format!("{c}*{mono}"),
                    });
                }
                if terms.is_empty() {
                    "0".into()
                } else {
                    terms.join("+")
                }
            }
            _ => a.to_string(),
        }
    }
    fn spec(&self) -> RingSpec {
        match &self.kind {
            Kind::Zmod { n, .. } => RingSpec::ModN(*n),
            Kind::Field(t) => RingSpec::Gf {
                p: t.p,
                k: t.k,
                modulus: if t.default_modulus { None } else { Some(t.modulus.clone()) },
            },
        }
    }
    fn is_finite(&self) -> bool {
        true
    }
    fn is_field(&self) -> bool {
        match &self.kind {
            Kind::Zmod { prime_powers, .. } => prime_powers.len() == 1 && prime_powers[0].1 == 1,
            Kind::Field(_) => true,
        }
    }
    fn is_local(&self) -> bool {
        match &self.kind {
            Kind::Zmod { prime_powers, .. } => prime_powers.len() == 1,
            Kind::Field(_) => true,
        }
    }
    fn elements(&self) -> Result<Vec<u16>> {
        Ok((0..self.order as u16).collect())
    }
    fn symbols(&self) -> Vec<(String, u16)> {
        match &self.kind {
            Kind::Field(t) if t.k > 1 => vec![("g".to_string(), self.generator())],
            _ => Vec::new(),
        }
    }
    fn additive_generators(&self) -> Vec<u16> {
        match &self.kind {
            Kind::Zmod { .. } => vec![1],
            Kind::Field(t) => (0..t.k).map(|i| t.p.pow(i as u32) as u16).collect(),
        }
    }
    fn in_radical(&self, a: &u16) -> Result<bool> {
        match &self.kind {
            Kind::Zmod { prime_powers, .. } if prime_powers.len() == 1 => {
                Ok(*a as u64 % prime_powers[0].0 == 0)
            }
            Kind::Zmod { .. } => Err(Error::NotLocal),
            Kind::Field(_) => Ok(*a == 0),
        }
    }
}

/// The decomposition `Z/n ≅ ∏ Z/p^k` together with its projections.
#[derive(Debug, Clone)]
pub struct CrtSplit {
    pub n: u64,
    pub factors: Vec<FinRing>,
}

impl CrtSplit {
    pub fn project(&self, a: u16) -> Vec<u16> {
        self.factors
            .iter()
            .map(|f| (a as u64 % f.order()) as u16)
            .collect()
    }

    pub fn project_onto(&self, factor: usize, a: u16) -> u16 {
        (a as u64 % self.factors[factor].order()) as u16
    }

    /// Inverse of [`CrtSplit::project`].
    pub fn lift(&self, parts: &[u16]) -> u16 {
        let mut x = BigInt::from(0);
        let n = BigInt::from(self.n);
        for (f, &r) in self.factors.iter().zip(parts) {
            let m = BigInt::from(f.order());
            let rest = &n / &m;
            let inv = mod_inverse((&rest % &m).to_u64().unwrap(), f.order()).unwrap_or(0);
            x += BigInt::from(r) * rest * BigInt::from(inv);
        }
        x.mod_floor(&n).to_u64().unwrap() as u16
    }
}

/// Splits `Z/n` into its local factors `Z/p^k`.
pub fn crt_split(ring: &FinRing) -> Result<CrtSplit> {
    match &ring.kind {
        Kind::Zmod { n, prime_powers } => Ok(CrtSplit {
            n: *n,
            factors: prime_powers
                .iter()
                .map(|&(p, k)| FinRing::zmod(p.pow(k)))
                .collect::<Result<_>>()?,
        }),
        Kind::Field(_) => Err(Error::BadModulus("CRT splitting applies to Z/n".into())),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn flags() {
        let z6 = FinRing::zmod(6).unwrap();
        assert!(!z6.is_local() && !z6.is_field());
        let z9 = FinRing::zmod(9).unwrap();
        assert!(z9.is_local() && !z9.is_field());
        assert_eq!(z9.radical().unwrap(), vec![0, 3, 6]);
        let f4 = FinRing::parse("GF(4)").unwrap();
        assert!(f4.is_field());
        assert_eq!(f4.elements().unwrap().len(), 4);
        assert_eq!(f4.elements().unwrap()[0], 0);
        assert!(FinRing::zmod(1).is_err());
        assert_eq!(FinRing::gf(2, 2, Some(vec![1, 0, 1])).unwrap_err(), Error::ReducibleModulusPolynomial);
        assert!(FinRing::gf(2, 2, Some(vec![1, 1, 1])).is_ok());
    }

    #[test]
    fn enumeration_and_units() {
        let z4 = FinRing::zmod(4).unwrap();
        assert_eq!(z4.elements().unwrap(), vec![0, 1, 2, 3]);
        assert_eq!(FinRing::zmod(2).unwrap().units().unwrap(), vec![1]);
        let f9 = FinRing::parse("GF(9)").unwrap();
        assert_eq!(f9.units().unwrap().len(), 8);
        // the chosen generator is primitive
        let g = f9.generator();
        let orders: Vec<u64> = (1..=8).filter(|&e| f9.pow(&g, e) == 1).collect();
        assert_eq!(orders, vec![8]);
        // x^2 + x + 1 = 0 has a root in GF(4)
        let f4 = FinRing::parse("GF(4)").unwrap();
        let roots = f4
            .elements()
            .unwrap()
            .into_iter()
            .filter(|a| f4.add(&f4.add(&f4.mul(a, a), a), &1) == 0)
            .count();
        assert_eq!(roots, 2);
    }

    #[test]
    fn crt_examples() {
        let orders = |n| {
            crt_split(&FinRing::zmod(n).unwrap())
                .unwrap()
                .factors
                .iter()
                .map(|f| f.order())
                .collect::<Vec<_>>()
        };
        assert_eq!(orders(6), vec![2, 3]);
        assert_eq!(orders(12), vec![4, 3]);
        assert_eq!(orders(9), vec![9]);
    }

    #[test]
    fn crt_is_injective_ring_homomorphism() {
        for n in 2..=60u64 {
            let r = FinRing::zmod(n).unwrap();
            let split = crt_split(&r).unwrap();
            assert!(split.factors.iter().all(|f| f.is_local()));
            let mut seen = std::collections::HashSet::new();
            for a in r.elements().unwrap() {
                let img = split.project(a);
                assert_eq!(split.lift(&img), a);
                assert!(seen.insert(img));
            }
            for a in [0u16, 1, (n - 1) as u16, (n / 2) as u16] {
                for b in [1u16, (n / 3) as u16, (n - 1) as u16] {
                    let lhs = split.project(r.mul(&a, &b));
                    let rhs: Vec<u16> = split
                        .project(a)
                        .iter()
                        .zip(split.project(b))
                        .zip(&split.factors)
                        .map(|((x, y), f)| f.mul(x, &y))
                        .collect();
                    assert_eq!(lhs, rhs);
                }
            }
        }
    }

    #[test]
    fn radical_membership_examples() {
        let z9 = FinRing::zmod(9).unwrap();
        assert!(z9.in_radical(&3).unwrap());
        assert!(!z9.in_radical(&2).unwrap());
        let f5 = FinRing::parse("GF(5)").unwrap();
        assert!(f5.in_radical(&0).unwrap());
        assert!(!f5.in_radical(&4).unwrap());
    }
}
