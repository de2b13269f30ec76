use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::Result;
use crate::rings::{Expr, Poly, Ring};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Operand {
    Var(usize),
    Gate(usize),
    /// An integer or a named ring constant.
    Const(Expr),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Gate {
    Add(Operand, Operand),
    Mul(Operand, Operand),
    Const(Expr),
}

/// A straight-line program with one output gate per source polynomial.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Circuit {
    pub inputs: Vec<String>,
    pub gates: Vec<Gate>,
    pub outputs: Vec<usize>,
}

type Terms = Vec<(Vec<u32>, BigInt)>;

struct Builder<'a> {
    names: &'a [String],
    n_inputs: usize,
    gates: Vec<Gate>,
}

impl Builder<'_> {
    fn push(&mut self, g: Gate) -> Operand {
        self.gates.push(g);
        Operand::Gate(self.gates.len() - 1)
    }

    fn leaf(&self, v: usize) -> Operand {
        if v < self.n_inputs {
            Operand::Var(v)
        } else {
            Operand::Const(Expr::Sym(self.names[v].clone()))
        }
    }

    fn mul(&mut self, a: Operand, b: Operand) -> Operand {
        let is_one = |o: &Operand| matches!(o, Operand::Const(Expr::Int(n)) if n.is_one());
        if is_one(&a) {
            b
        } else if is_one(&b) {
            a
        } else {
            self.push(Gate::Mul(a, b))
        }
    }

    /// Horner in the first variable present, recursively in the coefficients.
    fn compile(&mut self, terms: &Terms) -> Operand {
        let Some(v) = (0..self.names.len()).find(|&v| terms.iter().any(|(m, _)| m[v] > 0)) else {
            let c: BigInt = terms.iter().map(|(_, c)| c).sum();
            return Operand::Const(int_expr(c));
        };
        if let [(m, c)] = terms.as_slice() {
            if c.is_one() && m.iter().sum::<u32>() == 1 {
                return self.leaf(v);
            }
        }
        let mut groups: BTreeMap<u32, Terms> = BTreeMap::new();
        for (m, c) in terms {
            let mut rest = m.clone();
            rest[v] = 0;
            groups.entry(m[v]).or_default().push((rest, c.clone()));
        }
        let d = *groups.keys().next_back().unwrap();
        let mut acc = self.compile(&groups[&d]);
        for k in (0..d).rev() {
            let x = self.leaf(v);
            acc = self.mul(acc, x);
            if let Some(g) = groups.get(&k) {
                let rhs = self.compile(g);
                acc = self.push(Gate::Add(acc, rhs));
            }
        }
        acc
    }

    fn output(&mut self, p: &Poly) -> usize {
        let terms: Terms = p.terms().map(|(m, c)| (pad(&m.0, self.names.len()), c.clone())).collect();
        match self.compile(&terms) {
            Operand::Gate(g) => g,
            Operand::Const(c) => {
                self.push(Gate::Const(c));
                self.gates.len() - 1
            }
            v @ Operand::Var(_) => {
                self.push(Gate::Add(v, Operand::Const(Expr::Int(BigInt::zero()))));
                self.gates.len() - 1
            }
        }
    }
}

/// Negative integers in the shape the parser produces.
fn int_expr(c: BigInt) -> Expr {
    if c < BigInt::zero() {
        Expr::Neg(Box::new(Expr::Int(-c)))
    } else {
        Expr::Int(c)
    }
}

fn pad(m: &[u32], n: usize) -> Vec<u32> {
    let mut v = m.to_vec();
    v.resize(n, 0);
    v
}

/// A single polynomial over the variables `names`; the first `n_inputs` are
/// circuit inputs and the rest are named ring constants.
pub fn polynomial_to_circuit(p: &Poly, names: &[String], n_inputs: usize) -> Circuit {
    Circuit::from_polys(std::slice::from_ref(p), names, n_inputs)
}

impl Circuit {
    pub fn from_polys(polys: &[Poly], names: &[String], n_inputs: usize) -> Circuit {
        let mut b = Builder { names, n_inputs, gates: Vec::new() };
        let outputs = polys.iter().map(|p| b.output(p)).collect();
        Circuit { inputs: names[..n_inputs].to_vec(), gates: b.gates, outputs }
    }

    /// Values of all gates.
    pub fn eval_gates<R: Ring>(
        &self,
        ring: &R,
        inputs: &[R::Elem],
        consts: &dyn Fn(&str) -> Option<R::Elem>,
    ) -> Result<Vec<R::Elem>> {
        let mut vals: Vec<R::Elem> = Vec::with_capacity(self.gates.len());
        for g in &self.gates {
            let get = |o: &Operand, vals: &[R::Elem]| -> Result<R::Elem> {
                Ok(match o {
                    Operand::Var(i) => inputs[*i].clone(),
                    Operand::Gate(j) => vals[*j].clone(),
                    Operand::Const(c) => c.eval(ring, consts)?,
                })
            };
            let v = match g {
                Gate::Add(a, b) => ring.add(&get(a, &vals)?, &get(b, &vals)?),
                Gate::Mul(a, b) => ring.mul(&get(a, &vals)?, &get(b, &vals)?),
                Gate::Const(c) => c.eval(ring, consts)?,
            };
            vals.push(v);
        }
        Ok(vals)
    }

    pub fn eval<R: Ring>(
        &self,
        ring: &R,
        inputs: &[R::Elem],
        consts: &dyn Fn(&str) -> Option<R::Elem>,
    ) -> Result<Vec<R::Elem>> {
        let vals = self.eval_gates(ring, inputs, consts)?;
        Ok(self.outputs.iter().map(|&o| vals[o].clone()).collect())
    }

    pub fn num_mul(&self) -> usize {
        self.gates.iter().filter(|g| matches!(g, Gate::Mul(..))).count()
    }
}

impl fmt::Display for Circuit {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let show = |o: &Operand| match o {
            Operand::Var(i) => self.inputs[*i].clone(),
            Operand::Gate(j) => format!("g{j}"),
            Operand::Const(c) => c.to_string(),
        };
        for (i, g) in self.gates.iter().enumerate() {
            match g {
                Gate::Add(a, b) => writeln!(f, "g{i} = {} + {}", show(a), show(b))?,
                Gate::Mul(a, b) => writeln!(f, "g{i} = {} * {}", show(a), show(b))?,
                Gate::Const(c) => writeln!(f, "g{i} = {c}")?,
            }
        }
        let outs: Vec<String> = self.outputs.iter().map(|o| format!("g{o}")).collect();
        writeln!(f, "out {}", outs.join(", "))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rings::{parse_expr, PolyRing};

    fn circuit(text: &str, vars: &[&str]) -> (Circuit, Poly, PolyRing) {
        let pr = PolyRing::new(vars);
        let lookup = |s: &str| pr.names().iter().position(|n| n == s).map(|i| pr.var(i));
        let p = parse_expr(text).unwrap().eval(&pr, &lookup).unwrap();
        let names = pr.names().to_vec();
        (polynomial_to_circuit(&p, &names, vars.len()), p, pr)
    }

    #[test]
    fn gate_counts() {
        assert_eq!(circuit("x^2 + x + 1", &["x"]).0.gates.len(), 3);
        let (c, _, _) = circuit("5", &["x"]);
        assert_eq!(c.gates, vec![Gate::Const(Expr::Int(5.into()))]);
        assert_eq!(circuit("x*y + 2", &["x", "y"]).0.gates.len(), 2);
    }

    #[test]
    fn evaluation_matches_polynomial() {
        for (text, vars) in [
            ("x^2 + x + 1", vec!["x"]),
            ("x*y + 2", vec!["x", "y"]),
            ("3*x^3*y - 2*x*z^2 + y^4 - 7", vec!["x", "y", "z"]),
            ("x", vec!["x"]),
            ("x^5 - x", vec!["x"]),
            ("0", vec!["x"]),
        ] {
            let (c, p, pr) = circuit(text, &vars);
            let inputs: Vec<Poly> = (0..vars.len()).map(|i| pr.var(i)).collect();
            assert_eq!(c.eval(&pr, &inputs, &|_| None).unwrap(), vec![p], "{text}");
        }
    }
}
