//! Exact commutative rings.
//!
//! Every ring implements [`Ring`]; elements are plain values whose meaning is
//! given by the ring they are used with. Finite rings (`Z/n`, `GF(q)`) share a
//! single compact implementation, [`FinRing`], so group code over any finite
//! ring is monomorphised once.

mod expr;
mod finite;
mod integers;
mod poly;
mod spec;

use std::fmt;
use std::hash::Hash;

use num_bigint::BigInt;

use crate::error::{Error, Result};

pub use expr::{parse_element, parse_expr, Expr};
pub(crate) use expr::ExprParser;
pub use finite::{crt_split, CrtSplit, FinRing};
pub use integers::{Integers, Rationals};
pub use poly::{Monomial, Poly, PolyRing};
pub use spec::{make_ring, AnyRing, RingSpec};

pub trait Ring: Clone + fmt::Debug + Send + Sync {
    type Elem: Clone + Eq + Hash + Ord + fmt::Debug + Send + Sync;

    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn from_int(&self, n: &BigInt) -> Self::Elem;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn inverse(&self, a: &Self::Elem) -> Option<Self::Elem>;
    fn format(&self, a: &Self::Elem) -> String;
    fn spec(&self) -> RingSpec;

    fn is_finite(&self) -> bool {
        false
    }
    fn is_field(&self) -> bool {
        false
    }
    fn is_local(&self) -> bool {
        self.is_field()
    }

    /// Canonical enumeration of a finite ring.
    fn elements(&self) -> Result<Vec<Self::Elem>> {
        Err(Error::InfiniteRing)
    }

    /// A set generating the additive group (as a group, not a ring).
    fn additive_generators(&self) -> Vec<Self::Elem> {
        vec![self.one()]
    }

    /// Named constants accepted in element literals.
    fn symbols(&self) -> Vec<(String, Self::Elem)> {
        Vec::new()
    }

    fn from_i64(&self, n: i64) -> Self::Elem {
        self.from_int(&BigInt::from(n))
    }
    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        self.add(a, &self.neg(b))
    }
    fn is_zero(&self, a: &Self::Elem) -> bool {
        *a == self.zero()
    }
    fn is_one(&self, a: &Self::Elem) -> bool {
        *a == self.one()
    }
    fn is_unit(&self, a: &Self::Elem) -> bool {
        self.inverse(a).is_some()
    }
    fn pow(&self, a: &Self::Elem, mut e: u64) -> Self::Elem {
        let mut base = a.clone();
        let mut acc = self.one();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            base = self.mul(&base, &base);
            e >>= 1;
        }
        acc
    }
    /// `a^e` for a possibly negative exponent; `None` if `a` is not a unit and `e < 0`.
    fn pow_signed(&self, a: &Self::Elem, e: i64) -> Option<Self::Elem> {
        if e >= 0 {
            Some(self.pow(a, e as u64))
        } else {
            self.inverse(a).map(|inv| self.pow(&inv, e.unsigned_abs()))
        }
    }

    fn units(&self) -> Result<Vec<Self::Elem>> {
        Ok(self.elements()?.into_iter().filter(|a| self.is_unit(a)).collect())
    }

    /// Membership in the unique maximal ideal.
    fn in_radical(&self, a: &Self::Elem) -> Result<bool> {
        if self.is_local() {
            Ok(!self.is_unit(a))
        } else {
            Err(Error::NotLocal)
        }
    }
}

/// Free-function form of [`Ring::in_radical`].
pub fn radical_membership<R: Ring>(ring: &R, a: &R::Elem) -> Result<bool> {
    ring.in_radical(a)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng as _, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn check_axioms<R: Ring>(r: &R, sample: &[R::Elem]) {
        for a in sample {
            for b in sample {
                assert_eq!(r.add(a, b), r.add(b, a));
                assert_eq!(r.mul(a, b), r.mul(b, a));
                for c in sample.iter().take(6) {
                    assert_eq!(r.add(&r.add(a, b), c), r.add(a, &r.add(b, c)));
                    assert_eq!(r.mul(&r.mul(a, b), c), r.mul(a, &r.mul(b, c)));
                    assert_eq!(r.mul(a, &r.add(b, c)), r.add(&r.mul(a, b), &r.mul(a, c)));
                }
            }
            assert_eq!(r.add(a, &r.neg(a)), r.zero());
            assert_eq!(r.mul(a, &r.one()), *a);
            if let Some(inv) = r.inverse(a) {
                assert_eq!(r.mul(a, &inv), r.one());
            }
        }
        assert_ne!(r.zero(), r.one());
    }

    #[test]
    fn axioms_hold_for_every_kind() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for spec in ["Z/6", "Z/9", "Z/12", "GF(4)", "GF(8)", "GF(9)", "GF(5)", "Z/2"] {
            let r = FinRing::parse(spec).unwrap();
            let els = r.elements().unwrap();
            let sample: Vec<_> = (0..12).map(|_| els[rng.gen_range(0..els.len())]).collect();
            check_axioms(&r, &sample);
        }
        let z = Integers;
        let sample: Vec<BigInt> = (0..8).map(|_| BigInt::from(rng.gen_range(-50i64..50))).collect();
        check_axioms(&z, &sample);
        let q = Rationals;
        let sample: Vec<_> = (0..8)
            .map(|_| num_rational::BigRational::new(rng.gen_range(-9i64..9).into(), rng.gen_range(1i64..9).into()))
            .collect();
        check_axioms(&q, &sample);
        let p = PolyRing::new(&["t", "u"]);
        let t = p.var(0);
        let u = p.var(1);
        let sample = vec![
            t.clone(),
            u.clone(),
            p.add(&t, &p.from_i64(3)),
            p.mul(&t, &p.sub(&u, &p.one())),
            p.from_i64(-2),
        ];
        check_axioms(&p, &sample);
    }

    #[test]
    fn local_rings_split_into_units_and_radical() {
        for n in [4u64, 8, 9, 25, 27, 2, 3] {
            let r = FinRing::zmod(n).unwrap();
            assert!(r.is_local());
            for a in r.elements().unwrap() {
                assert!(r.is_unit(&a) ^ radical_membership(&r, &a).unwrap());
            }
        }
        let r = FinRing::zmod(6).unwrap();
        assert!(!r.is_local());
        assert_eq!(radical_membership(&r, &2), Err(Error::NotLocal));
    }
}
