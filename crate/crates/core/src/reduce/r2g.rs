use std::collections::HashMap;
use std::sync::Arc;

use super::{note_value, Circuit, Gate, GroupSystem, Note, Operand, RingSystem};
use crate::chevalley::{derive_commutator_table, Representation};
use crate::dioph::{default_carrier, gamma_set, Carrier, FormulaBuilder, RingInterpretation, Target};
use crate::error::{Error, Result};
use crate::group::GroupContext;
use crate::rings::Expr;
use crate::words::Word;

/// Counts behind the linear size bound of a compiled system.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SizeReport {
    pub source_vars: usize,
    pub gates: usize,
    pub mul_gates: usize,
    pub target_vars: usize,
    pub target_equations: usize,
    /// Largest `|Γ_α|` in the context.
    pub max_gamma: usize,
    /// Equations and variables added per source variable, per `⊕`/constant gate and per `⊗` gate.
    pub per_var: usize,
    pub per_add: usize,
    pub per_mul: usize,
    /// Largest number of existential witnesses introduced by one `⊗` gate.
    pub mul_existentials: usize,
}

impl SizeReport {
    pub fn circuit_size(&self) -> usize {
        self.source_vars + self.gates
    }

    pub fn target_size(&self) -> usize {
        self.target_vars + self.target_equations
    }

    /// `target ≤ per_var·vars + per_mul·muls + per_add·(other gates + constants) + outputs`.
    pub fn linear_bound(&self) -> usize {
        self.per_var * self.source_vars + self.per_mul * self.mul_gates + 2 * self.per_add * self.gates + self.gates
    }

    pub fn within_bound(&self) -> bool {
        self.target_size() <= self.linear_bound()
    }
}

/// The carrier named by the `# carrier` note.
pub fn carrier_of(sys: &GroupSystem) -> Result<Carrier> {
    let text = note_value(&sys.notes, "carrier").ok_or_else(|| Error::UnknownSymbol("carrier".into()))?;
    Ok(Target::parse(text, sys.rs())?.into())
}

struct Compiler<'a, 'b> {
    b: FormulaBuilder<'a, crate::rings::FinRing>,
    interp: &'b RingInterpretation<'a, crate::rings::FinRing>,
    consts: HashMap<Expr, String>,
}

impl Compiler<'_, '_> {
    fn constant(&mut self, c: &Expr) -> String {
        if let Some(v) = self.consts.get(c) {
            return v.clone();
        }
        let v = self.b.fresh();
        self.b.push(Word::prod(vec![Word::var(&v), self.interp.constant_word(c).inv()]));
        self.consts.insert(c.clone(), v.clone());
        v
    }

    fn operand(&mut self, o: &Operand, inputs: &[String], gates: &[String]) -> String {
        match o {
            Operand::Var(i) => inputs[*i].clone(),
            Operand::Gate(j) => gates[*j].clone(),
            Operand::Const(c) => self.constant(c),
        }
    }
}

/// Interprets the ring in `rep` over the system's ring and translates each gate.
/// The carrier defaults to [`default_carrier`].
pub fn compile_ring_to_group(
    sys: &RingSystem,
    rep: Arc<Representation>,
    carrier: Option<Carrier>,
) -> Result<(GroupSystem, SizeReport)> {
    let ring = sys.finite_ring()?;
    let ctx = GroupContext::new(rep.clone(), ring);
    let comm = derive_commutator_table(&rep)?;
    let carrier = match carrier {
        Some(c) => c,
        None => default_carrier(&ctx, &comm)?,
    };
    let interp = RingInterpretation::new(&ctx, &comm, carrier.clone())?;
    let target = interp.target();

    let polys = sys.polys()?;
    let names = sys.poly_ring()?.names().to_vec();
    let circuit = Circuit::from_polys(&polys, &names, sys.vars.len());

    let mut c = Compiler { b: FormulaBuilder::new(&ctx, &comm, "w"), interp: &interp, consts: HashMap::new() };
    for v in &sys.vars {
        c.b.declare(v);
    }
    let size = |b: &FormulaBuilder<_>| b.vars.len() + b.equations.len();
    let (mut per_var, mut per_add, mut per_mul, mut mul_existentials) = (0, 0, 0, 0);
    for v in &sys.vars {
        let before = size(&c.b);
        c.b.target(v, target)?;
        per_var = per_var.max(size(&c.b) - before);
    }
    let mut gate_vars = Vec::new();
    for g in &circuit.gates {
        let before = size(&c.b);
        let z = match g {
            Gate::Add(x, y) => {
                let (x, y) = (c.operand(x, &sys.vars, &gate_vars), c.operand(y, &sys.vars, &gate_vars));
                let z = c.b.fresh();
                c.b.push(Word::prod(vec![Word::var(&z).inv(), Word::var(&x), Word::var(&y)]));
                per_add = per_add.max(size(&c.b) - before);
                z
            }
            Gate::Mul(x, y) => {
                let (x, y) = (c.operand(x, &sys.vars, &gate_vars), c.operand(y, &sys.vars, &gate_vars));
                let z = c.b.fresh();
                let vars_before = c.b.vars.len();
                interp.add_otimes(&mut c.b, &x, &y, &z)?;
                per_mul = per_mul.max(size(&c.b) - before);
                mul_existentials = mul_existentials.max(c.b.vars.len() - vars_before - 1);
                z
            }
            Gate::Const(k) => c.constant(k),
        };
        gate_vars.push(z);
    }
    for &o in &circuit.outputs {
        c.b.push(Word::var(&gate_vars[o]));
    }
    let report = SizeReport {
        source_vars: sys.vars.len(),
        gates: circuit.gates.len(),
        mul_gates: circuit.num_mul(),
        target_vars: c.b.vars.len(),
        target_equations: c.b.equations.len(),
        max_gamma: (0..ctx.rs().len()).map(|a| gamma_set(&ctx, a).members.len()).max().unwrap_or(0),
        per_var,
        per_add,
        per_mul,
        mul_existentials,
    };
    let mut notes: Vec<Note> = sys.vars.iter().map(|v| Note::map(v, std::slice::from_ref(v))).collect();
    notes.push(Note::new("carrier", target.label(ctx.rs())));
    let out = GroupSystem {
        rep,
        ring: sys.ring.clone(),
        vars: c.b.vars,
        equations: c.b.equations.into_iter().map(|w| (w, Word::Identity)).collect(),
        notes,
    };
    Ok((out, report))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::chevalley::{representation_for, RepKind};
    use crate::group::DEFAULT_ELEMENT_CAP;
    use crate::reduce::{parse_group_system, parse_ring_system, solve_group_system, solve_ring_system};

    fn sl3() -> Arc<Representation> {
        representation_for("A2".parse().unwrap(), RepKind::NaturalSl).unwrap()
    }

    fn check(text: &str, rep: Arc<Representation>, expect: bool) -> GroupSystem {
        let src = parse_ring_system(text).unwrap();
        assert_eq!(solve_ring_system(&src, false, 100_000).unwrap().satisfiable, expect);
        let (g, size) = compile_ring_to_group(&src, rep, None).unwrap();
        assert!(size.within_bound(), "{size:?}");
        let reparsed = parse_group_system(&g.to_string()).unwrap();
        assert_eq!(reparsed.to_string(), g.to_string());
        assert!(reparsed == g);
        let out = solve_group_system(&g, false, DEFAULT_ELEMENT_CAP, 10_000_000).unwrap();
        assert_eq!(out.satisfiable, expect, "{text}");
        if let Some(w) = out.witness {
            assert!(super::super::solve::pull_back_to_ring(&src, &g, &w).unwrap());
        }
        g
    }

    #[test]
    fn spec_examples_over_sl3() {
        let g = check("ring GF(3); var x; eq x^2 - 1 = 0;", sl3(), true);
        assert_eq!(g.vars[0], "x");
        check("ring GF(3); var x; eq x^2 - 2 = 0;", sl3(), false);
        check("ring GF(4); var x; eq x^2 + x + 1 = 0;", sl3(), true);
    }

    #[test]
    fn other_carriers() {
        let sp4 = representation_for("C2".parse().unwrap(), RepKind::NaturalSp).unwrap();
        check("ring GF(3); var x, y; eq x*y - 1 = 0; eq x + y = 0;", sp4.clone(), false);
        check("ring GF(3); var x, y; eq x*y = 2; eq x + y = 0;", sp4.clone(), true);
        check("ring GF(2); var x; eq x^2 + x + 1 = 0;", sp4.clone(), false);
        check("ring GF(2); var x, y; eq x*y + x = 1;", sp4, true);
    }

    #[test]
    fn size_grows_by_a_fixed_step_per_factor() {
        for rep in [sl3(), representation_for("C2".parse().unwrap(), RepKind::NaturalSp).unwrap()] {
            let sizes: Vec<usize> = (2..7)
                .map(|n| {
                    let vars: Vec<String> = (0..n).map(|i| format!("a{i}")).collect();
                    let text = format!("ring GF(3); var {}; eq {} = 1;", vars.join(", "), vars.join("*"));
                    let (g, size) = compile_ring_to_group(&parse_ring_system(&text).unwrap(), rep.clone(), None).unwrap();
                    assert!(size.within_bound(), "{size:?}");
                    assert_eq!(size.target_size(), g.vars.len() + g.equations.len());
                    size.target_size()
                })
                .collect();
            let steps: Vec<usize> = sizes.windows(2).map(|w| w[1] - w[0]).collect();
            assert!(steps.windows(2).all(|w| w[0] == w[1]), "{steps:?}");
        }
    }
}
