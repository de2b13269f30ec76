//! Word equations in SL3(GF(2)) rewritten as polynomial equations on matrix
//! entries, and the bounded elementary encoding.

use chevdioph::reduce::{
    compile_group_to_ring, encode_bounded_elementary, parse_group_system, solve_group_system, solve_ring_system,
    GroupVarEncoding,
};

fn main() -> chevdioph::Result<()> {
    let g = parse_group_system("group A2 sl GF(2); var v; eq v*v = x(a1;1);")?;
    let scheme = compile_group_to_ring(&g, GroupVarEncoding::Scheme)?;
    println!("{} ring variables, {} equations", scheme.vars.len(), scheme.equations.len());
    print!("{scheme}");
    let ring_side = solve_ring_system(&scheme, true, 100_000_000)?;
    let group_side = solve_group_system(&g, true, 2_000_000, 100_000_000)?;
    println!("# ring {} ({:?} solutions), group {} ({:?} solutions)", ring_side.verdict(), ring_side.count, group_side.verdict(), group_side.count);

    let enc = encode_bounded_elementary(g.rs(), "v", 1);
    println!("\n# elementary encoding, one sweep: {} parameters over {:?}", enc.params.len(), enc.roots);
    let elementary = compile_group_to_ring(&g, GroupVarEncoding::Elementary(1))?;
    println!("# {}", solve_ring_system(&elementary, false, 100_000_000)?.verdict());
    Ok(())
}
