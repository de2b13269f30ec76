//! Compares the centralizer of the set Gamma with its predicted shape
//! (center times a product of root subgroups).

use chevdioph::chevalley::{representation_for, RepKind};
use chevdioph::dioph::{double_centralizer_report, gamma_set, predicted_factors};
use chevdioph::group::{enumerate_group, GroupContext, DEFAULT_ELEMENT_CAP};
use chevdioph::rings::FinRing;

fn main() -> chevdioph::Result<()> {
    let cases = [("A2", RepKind::NaturalSl, "GF(3)"), ("C2", RepKind::NaturalSp, "GF(3)"), ("G2", RepKind::Adjoint, "GF(2)")];
    for (system, kind, ring) in cases {
        let ctx = GroupContext::new(representation_for(system.parse()?, kind)?, FinRing::parse(ring)?);
        let table = enumerate_group(&ctx, DEFAULT_ELEMENT_CAP)?;
        let rs = ctx.rs();
        println!("{} over {ring} ({} elements)", ctx.rep.label(), table.len());
        for a in 0..rs.num_positive() {
            let gamma = gamma_set(&ctx, a);
            let r = double_centralizer_report(&ctx, &table, a)?;
            let predicted: Vec<String> = predicted_factors(rs, a).iter().map(|&d| rs.name(d)).collect();
            println!(
                "  {:<10} |Gamma| = {:<2} |C| = {:<5} predicted Z*X[{}]: {}",
                rs.name(a),
                gamma.members.len(),
                r.computed.len(),
                predicted.join(","),
                r.verdict()
            );
        }
    }
    Ok(())
}
