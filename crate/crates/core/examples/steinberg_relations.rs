use chevdioph::chevalley::{derive_commutator_table, representation_for, RepKind};
use chevdioph::group::{verify_relations, verify_relations_symbolic, GroupContext};
use chevdioph::rings::FinRing;

fn main() -> chevdioph::Result<()> {
    for (system, kind) in [("A2", RepKind::NaturalSl), ("C2", RepKind::NaturalSp), ("G2", RepKind::Adjoint)] {
        let rep = representation_for(system.parse()?, kind)?;
        let comm = derive_commutator_table(&rep)?;
        let symbolic = verify_relations_symbolic(&rep, &comm);
        println!("{}: symbolic {} checks, all passed: {}", rep.label(), symbolic.checks.len(), symbolic.all_passed());
        for ring in ["GF(2)", "GF(3)", "Z/4"] {
            let ctx = GroupContext::new(rep.clone(), FinRing::parse(ring)?);
            let report = verify_relations(&ctx)?;
            println!("  over {ring}: {} checks, all passed: {}", report.checks.len(), report.all_passed());
        }
    }
    Ok(())
}
