//! Emits pp-formulas for root subgroups and checks their solution sets by
//! enumeration.

use chevdioph::chevalley::{derive_commutator_table, representation_for, RepKind};
use chevdioph::dioph::{e_define_subgroup, solution_set, target_elements, Target};
use chevdioph::group::{enumerate_group, GroupContext, DEFAULT_ELEMENT_CAP};
use chevdioph::rings::{FinRing, Ring};

fn main() -> chevdioph::Result<()> {
    let cases = [
        ("A2", RepKind::NaturalSl, "GF(3)", "Xa1+a2"),
        ("C2", RepKind::NaturalSp, "GF(3)", "Xa1"),
        ("C2", RepKind::NaturalSp, "GF(2)", "Y"),
    ];
    for (system, kind, ring, target) in cases {
        let rep = representation_for(system.parse()?, kind)?;
        let comm = derive_commutator_table(&rep)?;
        let ctx = GroupContext::new(rep, FinRing::parse(ring)?);
        let target = Target::parse(target, ctx.rs())?;
        let formula = e_define_subgroup(&ctx, &comm, target)?;
        let header = format!("group {} {};", ctx.rep.label(), ctx.ring.spec());
        print!("{}", formula.to_text(&header, ctx.rs()));
        let table = enumerate_group(&ctx, DEFAULT_ELEMENT_CAP)?;
        let mut got = solution_set(&ctx, &table, &formula, u64::MAX)?;
        let mut want = target_elements(&ctx, &table, target)?;
        got.sort_unstable();
        want.sort_unstable();
        println!("# {} solutions, matches the subgroup: {}\n", got.len(), got == want);
    }
    Ok(())
}
