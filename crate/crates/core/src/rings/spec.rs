use std::fmt;

use super::{FinRing, Integers, PolyRing, Rationals, Ring};
use crate::error::{Error, Result};

/// Textual ring description: `Z`, `Q`, `Z/6`, `GF(4)`, `GF(3^2;f=x^2+1)`, `ZPoly[t,u]`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum RingSpec {
    Integers,
    Rationals,
    ModN(u64),
    /// `modulus` holds low-to-high coefficients of a monic irreducible; `None` selects the default.
    Gf { p: u64, k: usize, modulus: Option<Vec<u64>> },
    PolyZ(Vec<String>),
}

fn parse_modulus_poly(text: &str, p: u64) -> Result<Vec<u64>> {
    let bad = || Error::BadRingSpec(text.to_string());
    let s: String = text.chars().filter(|c| !c.is_whitespace()).collect();
    let mut coeffs: Vec<u64> = Vec::new();
    let normalized = s.replace('-', "+-");
    for term in normalized.split('+').filter(|t| !t.is_empty()) {
        let (neg, term) = match term.strip_prefix('-') {
            Some(t) => (true, t),
            None => (false, term),
        };
        let (c, e) = if let Some(pos) = term.find('x') {
            let cpart = term[..pos].trim_end_matches('*');
            let c: u64 = if cpart.is_empty() { 1 } else { cpart.parse().map_err(|_| bad())? };
            let rest = &term[pos + 1..];
            let e: usize = if rest.is_empty() {
                1
            } else {
                rest.strip_prefix('^').ok_or_else(bad)?.parse().map_err(|_| bad())?
            };
            (c, e)
        } else {
            (term.parse().map_err(|_| bad())?, 0)
        };
        if coeffs.len() <= e {
            coeffs.resize(e + 1, 0);
        }
        let c = c % p;
        coeffs[e] = (coeffs[e] + if neg { p - c } else { c }) % p;
    }
    Ok(coeffs)
}

impl RingSpec {
    pub fn parse(text: &str) -> Result<Self> {
        let s: String = text.chars().filter(|c| !c.is_whitespace()).collect();
        let bad = || Error::BadRingSpec(text.to_string());
        match s.as_str() {
            "Z" => return Ok(RingSpec::Integers),
            "Q" => return Ok(RingSpec::Rationals),
            _ => {}
        }
        if let Some(n) = s.strip_prefix("Z/") {
            return Ok(RingSpec::ModN(n.parse().map_err(|_| bad())?));
        }
        if let Some(vars) = s.strip_prefix("ZPoly[").and_then(|x| x.strip_suffix(']')) {
            let names: Vec<String> = vars.split(',').map(str::to_string).collect();
            if names.iter().any(|n| n.is_empty()) {
                return Err(bad());
            }
            return Ok(RingSpec::PolyZ(names));
        }
        if let Some(inner) = s.strip_prefix("GF(").and_then(|x| x.strip_suffix(')')) {
            let (order, f) = match inner.split_once(';') {
                Some((o, f)) => (o, Some(f.strip_prefix("f=").ok_or_else(bad)?)),
                None => (inner, None),
            };
            let (p, k) = match order.split_once('^') {
                Some((p, k)) => (p.parse().map_err(|_| bad())?, k.parse().map_err(|_| bad())?),
                None => {
                    let q: u64 = order.parse().map_err(|_| bad())?;
                    let pf = super::finite::factorize(q);
                    if pf.len() != 1 {
                        return Err(Error::BadModulus(format!("{q} is not a prime power")));
                    }
                    (pf[0].0, pf[0].1 as usize)
                }
            };
            let modulus = f.map(|f| parse_modulus_poly(f, p)).transpose()?;
            return Ok(RingSpec::Gf { p, k, modulus });
        }
        Err(bad())
    }

    pub fn is_finite(&self) -> bool {
        matches!(self, RingSpec::ModN(_) | RingSpec::Gf { .. })
    }
}

impl fmt::Display for RingSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RingSpec::Integers => write!(f, "Z"),
            RingSpec::Rationals => write!(f, "Q"),
            RingSpec::ModN(n) => write!(f, "Z/{n}"),
            RingSpec::Gf { p, k, modulus: None } => write!(f, "GF({})", p.pow(*k as u32)),
            RingSpec::Gf { p, k, modulus: Some(m) } => {
                let mut terms = Vec::new();
                for (e, &c) in m.iter().enumerate().rev() {
                    if c == 0 {
                        continue;
                    }
                    let mono = match e {
                        0 => String::new(),
                        1 => "x".into(),
                        _ => format!("x^{e}"),
                    };
                    terms.push(match (c, e) {
                        (_, 0) => c.to_string(),
                        (1, _) => mono,
                        _ => format!("{c}*{mono}"),
                    });
                }
                write!(f, "GF({p}^{k};f={})", terms.join("+"))
            }
            RingSpec::PolyZ(v) => write!(f, "ZPoly[{}]", v.join(",")),
        }
    }
}

/// A ring chosen at run time.
#[derive(Debug, Clone)]
pub enum AnyRing {
    Finite(FinRing),
    Integers(Integers),
    Rationals(Rationals),
    Poly(PolyRing),
}

impl AnyRing {
    pub fn spec(&self) -> RingSpec {
        match self {
            AnyRing::Finite(r) => r.spec(),
            AnyRing::Integers(r) => r.spec(),
            AnyRing::Rationals(r) => r.spec(),
            AnyRing::Poly(r) => r.spec(),
        }
    }

    pub fn is_finite(&self) -> bool {
        matches!(self, AnyRing::Finite(_))
    }

    pub fn is_field(&self) -> bool {
        match self {
            AnyRing::Finite(r) => r.is_field(),
            AnyRing::Rationals(_) => true,
            _ => false,
        }
    }

    pub fn is_local(&self) -> bool {
        match self {
            AnyRing::Finite(r) => r.is_local(),
            AnyRing::Rationals(_) => true,
            _ => false,
        }
    }

    pub fn as_finite(&self) -> Result<&FinRing> {
        match self {
            AnyRing::Finite(r) => Ok(r),
            _ => Err(Error::InfiniteRing),
        }
    }
}

pub fn make_ring(spec: &RingSpec) -> Result<AnyRing> {
    Ok(match spec {
        RingSpec::Integers => AnyRing::Integers(Integers),
        RingSpec::Rationals => AnyRing::Rationals(Rationals),
        RingSpec::ModN(n) => AnyRing::Finite(FinRing::zmod(*n)?),
        RingSpec::Gf { p, k, modulus } => AnyRing::Finite(FinRing::gf(*p, *k, modulus.clone())?),
        RingSpec::PolyZ(vars) => AnyRing::Poly(PolyRing::from_names(vars.clone())),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_print() {
        for s in ["Z", "Q", "Z/6", "GF(4)", "ZPoly[t,u]", "GF(3^2;f=x^2+1)"] {
            let spec = RingSpec::parse(s).unwrap();
            assert_eq!(spec.to_string(), s);
        }
        assert_eq!(RingSpec::parse("GF(2^2)").unwrap().to_string(), "GF(4)");
        assert!(RingSpec::parse("GF(6)").is_err());
        assert!(RingSpec::parse("Z/x").is_err());
        assert!(make_ring(&RingSpec::parse("GF(2^2;f=x^2+1)").unwrap()).is_err());
    }

    #[test]
    fn flags_through_make_ring() {
        let r = make_ring(&RingSpec::parse("Z/9").unwrap()).unwrap();
        assert!(r.is_local() && r.is_finite() && !r.is_field());
        let q = make_ring(&RingSpec::Rationals).unwrap();
        assert!(q.is_field() && !q.is_finite());
        let z = make_ring(&RingSpec::Integers).unwrap();
        assert!(matches!(z.as_finite(), Err(Error::InfiniteRing)));
        assert!(Integers.elements().is_err());
    }
}
