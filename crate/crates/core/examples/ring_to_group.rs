//! Compiles polynomial systems into word equations in SL3 and decides both
//! sides exhaustively.

use chevdioph::chevalley::{representation_for, RepKind};
use chevdioph::group::DEFAULT_ELEMENT_CAP;
use chevdioph::reduce::{compile_ring_to_group, parse_ring_system, solve_group_system, solve_ring_system, Circuit};

fn main() -> chevdioph::Result<()> {
    let rep = representation_for("A2".parse()?, RepKind::NaturalSl)?;
    for text in ["ring GF(3); var x; eq x^2 - 1 = 0;", "ring GF(3); var x; eq x^2 - 2 = 0;", "ring GF(4); var x; eq x^2 + x + 1 = 0;"] {
        let src = parse_ring_system(text)?;
        let names = src.poly_ring()?.names().to_vec();
        print!("{src}{}", Circuit::from_polys(&src.polys()?, &names, src.vars.len()));
        let (group, size) = compile_ring_to_group(&src, rep.clone(), None)?;
        print!("{group}");
        let ring_side = solve_ring_system(&src, false, 1_000_000)?;
        let group_side = solve_group_system(&group, false, DEFAULT_ELEMENT_CAP, 100_000_000)?;
        println!(
            "# size {} -> {} (bound {}), ring {}, group {}\n",
            size.circuit_size(),
            size.target_size(),
            size.linear_bound(),
            ring_side.verdict(),
            group_side.verdict()
        );
    }
    Ok(())
}
