//! Bruhat cells of SL3(GF(2)) and Sp4(GF(2)), and the form of one element.

use chevdioph::chevalley::{representation_for, RepKind};
use chevdioph::decomp::{bruhat_audit, bruhat_decompose, DEFAULT_ORACLE_BUDGET};
use chevdioph::group::{enumerate_group, GroupContext, DEFAULT_ELEMENT_CAP};
use chevdioph::rings::FinRing;
use chevdioph::words::{parse_word, Evaluator};

fn main() -> chevdioph::Result<()> {
    for (system, kind) in [("A2", RepKind::NaturalSl), ("C2", RepKind::NaturalSp)] {
        let ctx = GroupContext::new(representation_for(system.parse()?, kind)?, FinRing::parse("GF(2)")?);
        let table = enumerate_group(&ctx, DEFAULT_ELEMENT_CAP)?;
        let audit = bruhat_audit(&ctx, &table, DEFAULT_ORACLE_BUDGET)?;
        println!("{} over GF(2): {} elements, {} without a unique form", ctx.rep.label(), audit.total, audit.non_unique.len());
        for (cell, n) in &audit.census {
            println!("  {cell:<12} {n}");
        }
    }

    let ctx = GroupContext::new(representation_for("A2".parse()?, RepKind::NaturalSl)?, FinRing::parse("GF(2)")?);
    let word = parse_word("x(-a1;1)*x(a2;1)*w(a2;1)", ctx.rs())?;
    let g = Evaluator::new(&ctx, None).eval(&word, &|_| None)?;
    println!("{} = {}", word.display(ctx.rs()), bruhat_decompose(&ctx, &g)?.display(&ctx));
    Ok(())
}
