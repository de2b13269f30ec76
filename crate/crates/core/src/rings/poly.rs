use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::{Ring, RingSpec};

/// Exponent vector, ordered graded-lexicographically.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Monomial(pub Vec<u32>);

impl Monomial {
    pub fn one(nvars: usize) -> Self {
        Monomial(vec![0; nvars])
    }

    pub fn var(nvars: usize, i: usize) -> Self {
        let mut e = vec![0; nvars];
        e[i] = 1;
        Monomial(e)
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    fn mul(&self, other: &Monomial) -> Monomial {
        let n = self.0.len().max(other.0.len());
        Monomial(
            (0..n)
                .map(|i| self.0.get(i).copied().unwrap_or(0) + other.0.get(i).copied().unwrap_or(0))
                .collect(),
        )
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Sparse multivariate polynomial with integer coefficients.
///
/// Terms are kept in graded-lexicographic order with no zero coefficients,
/// so structural equality is polynomial equality.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Poly {
    terms: BTreeMap<Monomial, BigInt>,
}

impl Poly {
    pub fn zero() -> Self {
        Poly::default()
    }

    pub fn constant(nvars: usize, c: impl Into<BigInt>) -> Self {
        let mut p = Poly::zero();
        p.add_term(Monomial::one(nvars), c.into());
        p
    }

    pub fn var(nvars: usize, i: usize) -> Self {
        let mut p = Poly::zero();
        p.add_term(Monomial::var(nvars, i), BigInt::one());
        p
    }

    pub fn monomial(mono: Monomial, c: impl Into<BigInt>) -> Self {
        let mut p = Poly::zero();
        p.add_term(mono, c.into());
        p
    }

    fn add_term(&mut self, mono: Monomial, c: BigInt) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(mono);
        match entry {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &BigInt)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coeff(&self, mono: &Monomial) -> BigInt {
        self.terms.get(mono).cloned().unwrap_or_default()
    }

    /// Constant value if the polynomial has degree ≤ 0.
    pub fn as_constant(&self) -> Option<BigInt> {
        match self.terms.len() {
            0 => Some(BigInt::zero()),
            1 => {
                let (m, c) = self.terms.iter().next().unwrap();
                (m.degree() == 0).then(|| c.clone())
            }
            _ => None,
        }
    }

    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().map(Monomial::degree).max()
    }

    /// Indices of variables that occur.
    pub fn variables(&self) -> Vec<usize> {
        let mut out: Vec<usize> = Vec::new();
        for m in self.terms.keys() {
            for (i, &e) in m.0.iter().enumerate() {
                if e > 0 && !out.contains(&i) {
                    out.push(i);
                }
            }
        }
        out.sort_unstable();
        out
    }

    pub fn add(&self, other: &Poly) -> Poly {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }

    pub fn neg(&self) -> Poly {
        Poly { terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect() }
    }

    pub fn sub(&self, other: &Poly) -> Poly {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Poly) -> Poly {
        let mut out = Poly::zero();
        for (m1, c1) in &self.terms {
            for (m2, c2) in &other.terms {
                out.add_term(m1.mul(m2), c1 * c2);
            }
        }
        out
    }

    pub fn scale(&self, c: &BigInt) -> Poly {
        let mut out = Poly::zero();
        for (m, x) in &self.terms {
            out.add_term(m.clone(), x * c);
        }
        out
    }

    pub fn pow(&self, e: u32) -> Poly {
        let nvars = self.terms.keys().next().map(|m| m.0.len()).unwrap_or(0);
        let mut acc = Poly::constant(nvars, 1);
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    /// Evaluates with the variables replaced by elements of `ring`.
    pub fn eval<R: Ring>(&self, ring: &R, values: &[R::Elem]) -> R::Elem {
        let mut acc = ring.zero();
        for (m, c) in &self.terms {
            let mut t = ring.from_int(c);
            for (i, &e) in m.0.iter().enumerate() {
                if e > 0 {
                    t = ring.mul(&t, &ring.pow(&values[i], e as u64));
                }
            }
            acc = ring.add(&acc, &t);
        }
        acc
    }

    /// Renders with the given variable names, highest terms first.
    pub fn display(&self, names: &[String]) -> String {
        if self.terms.is_empty() {
            return "0".into();
        }
        let mut out = String::new();
        for (i, (m, c)) in self.terms.iter().rev().enumerate() {
            let mut factors = Vec::new();
            for (v, &e) in m.0.iter().enumerate() {
                match e {
                    0 => {}
                    1 => factors.push(names[v].clone()),
                    _ => factors.push(format!("{}^{}", names[v], e)),
                }
            }
            let mag = c.abs();
            let body = if factors.is_empty() {
                mag.to_string()
            } else if mag.is_one() {
                factors.join("*")
            } else {
                format!("{}*{}", mag, factors.join("*"))
            };
            if i == 0 {
                if c.is_negative() {
                    out.push('-');
                }
            } else {
                out.push_str(if c.is_negative() { " - " } else { " + " });
            }
            out.push_str(&body);
        }
        out
    }
}

/// `Z[vars]`.
#[derive(Debug, Clone)]
pub struct PolyRing {
    vars: Arc<Vec<String>>,
}

impl PolyRing {
    pub fn new(vars: &[&str]) -> Self {
        PolyRing { vars: Arc::new(vars.iter().map(|s| s.to_string()).collect()) }
    }

    pub fn from_names(vars: Vec<String>) -> Self {
        PolyRing { vars: Arc::new(vars) }
    }

    pub fn nvars(&self) -> usize {
        self.vars.len()
    }

    pub fn names(&self) -> &[String] {
        &self.vars
    }

    pub fn var(&self, i: usize) -> Poly {
        Poly::var(self.nvars(), i)
    }

    pub fn monomial(&self, exps: &[u32], c: i64) -> Poly {
        Poly::monomial(Monomial(exps.to_vec()), c)
    }
}

impl Ring for PolyRing {
    type Elem = Poly;

    fn zero(&self) -> Poly {
        Poly::zero()
    }
    fn one(&self) -> Poly {
        Poly::constant(self.nvars(), 1)
    }
    fn from_int(&self, n: &BigInt) -> Poly {
        Poly::constant(self.nvars(), n.clone())
    }
    fn add(&self, a: &Poly, b: &Poly) -> Poly {
        a.add(b)
    }
    fn neg(&self, a: &Poly) -> Poly {
        a.neg()
    }
    fn mul(&self, a: &Poly, b: &Poly) -> Poly {
        a.mul(b)
    }
    fn inverse(&self, a: &Poly) -> Option<Poly> {
        let c = a.as_constant()?;
        (c.abs().is_one()).then(|| a.clone())
    }
    fn format(&self, a: &Poly) -> String {
        a.display(&self.vars)
    }
    fn symbols(&self) -> Vec<(String, Poly)> {
        (0..self.nvars()).map(|i| (self.vars[i].clone(), self.var(i))).collect()
    }
    fn spec(&self) -> RingSpec {
        RingSpec::PolyZ(self.vars.to_vec())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rings::Integers;
    use rand::{Rng as _, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn grlex_order_and_display() {
        let r = PolyRing::new(&["x", "y"]);
        let x = r.var(0);
        let y = r.var(1);
        let p = r.add(&r.mul(&x, &x), &r.sub(&y, &r.from_i64(2)));
        assert_eq!(r.format(&p), "x^2 + y - 2");
        let keys: Vec<_> = p.terms().map(|(m, _)| m.clone()).collect();
        let mut sorted = keys.clone();
        sorted.sort();
        assert_eq!(keys, sorted);
        assert_eq!(r.format(&r.neg(&p)), "-x^2 - y + 2");
        assert!(r.sub(&p, &p).is_zero());
    }

    #[test]
    fn multiplication_is_an_evaluation_homomorphism() {
        let r = PolyRing::new(&["t", "u", "v"]);
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let rand_poly = |rng: &mut ChaCha8Rng| {
            let mut p = Poly::zero();
            for _ in 0..4 {
                let e: Vec<u32> = (0..3).map(|_| rng.gen_range(0..3)).collect();
                p = p.add(&r.monomial(&e, rng.gen_range(-5..6)));
            }
            p
        };
        for _ in 0..10 {
            let a = rand_poly(&mut rng);
            let b = rand_poly(&mut rng);
            let ab = r.mul(&a, &b);
            for _ in 0..20 {
                let pt: Vec<BigInt> = (0..3).map(|_| BigInt::from(rng.gen_range(-7..8))).collect();
                let z = Integers;
                assert_eq!(ab.eval(&z, &pt), a.eval(&z, &pt) * b.eval(&z, &pt));
            }
        }
    }
}
