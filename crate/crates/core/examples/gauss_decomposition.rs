//! Gauss (big cell) decomposition over local rings.

use chevdioph::chevalley::{derive_commutator_table, representation_for, RepKind};
use chevdioph::decomp::{utv_decompose, UtvInput, WordFactor, DEFAULT_REWRITE_BUDGET};
use chevdioph::group::GroupContext;
use chevdioph::rings::FinRing;
use chevdioph::Error;

fn main() -> chevdioph::Result<()> {
    let rep = representation_for("C2".parse()?, RepKind::NaturalSp)?;
    let comm = derive_commutator_table(&rep)?;
    let ctx = GroupContext::new(rep, FinRing::parse("Z/9")?);
    let (a1, a2) = (ctx.rs().simple()[0], ctx.rs().simple()[1]);
    let neg = |a| ctx.rs().neg(a);

    let words = [
        vec![WordFactor::X(neg(a1), 3), WordFactor::X(a2, 2), WordFactor::X(neg(a2), 4)],
        vec![WordFactor::X(a1, 1), WordFactor::H(a2, 2), WordFactor::X(neg(a1), 5)],
        vec![WordFactor::W(a1, 1)],
    ];
    let show = |word: &[WordFactor<u16>]| {
        let parts: Vec<String> = word
            .iter()
            .map(|f| match f {
                WordFactor::X(a, t) => format!("x({};{t})", ctx.rs().name(*a)),
                WordFactor::H(a, t) => format!("h({};{t})", ctx.rs().name(*a)),
                WordFactor::W(a, t) => format!("w({};{t})", ctx.rs().name(*a)),
            })
            .collect();
        parts.join("*")
    };
    for word in words {
        match utv_decompose(&ctx, &comm, &UtvInput::Word(word.clone()), DEFAULT_REWRITE_BUDGET) {
            Ok(f) => println!("{} = {}", show(&word), f.display(&ctx)),
            Err(Error::NotInBigCell) => println!("{} is not in the big cell", show(&word)),
            Err(e) => return Err(e),
        }
    }
    Ok(())
}
