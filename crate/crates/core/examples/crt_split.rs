//! Splitting SL3(Z/6) into SL3(Z/2) x SL3(Z/3).

use chevdioph::chevalley::{representation_for, RepKind};
use chevdioph::decomp::{crt_contexts, group_crt_split};
use chevdioph::group::GroupContext;
use chevdioph::rings::{FinRing, Ring};

fn main() -> chevdioph::Result<()> {
    let ctx = GroupContext::new(representation_for("A2".parse()?, RepKind::NaturalSl)?, FinRing::parse("Z/6")?);
    let parts = crt_contexts(&ctx)?;
    let g = ctx.mul(&ctx.x(0, &5), &ctx.x(ctx.rs().neg(1), &4));
    let h = ctx.w(1, &1)?;
    let gh = ctx.mul(&g, &h);
    let (sg, sh, sgh) = (group_crt_split(&ctx, &g)?, group_crt_split(&ctx, &h)?, group_crt_split(&ctx, &gh)?);
    for (k, part) in parts.iter().enumerate() {
        let ok = part.mul(&sg[k], &sh[k]) == sgh[k];
        println!("over {}: g = {}  multiplicative: {ok}", part.ring.spec(), part.format(&sg[k]));
    }
    Ok(())
}
