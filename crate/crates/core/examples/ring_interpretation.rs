//! The ring interpreted on a root subgroup (or on Y), with sum and product
//! computed inside the group.

use chevdioph::chevalley::{derive_commutator_table, representation_for, RepKind};
use chevdioph::dioph::{default_carrier, verify_carrier_axioms, verify_ring_isomorphism, RingInterpretation};
use chevdioph::group::GroupContext;
use chevdioph::rings::{FinRing, Ring};

fn main() -> chevdioph::Result<()> {
    let cases = [
        ("A2", RepKind::NaturalSl, "Z/6"),
        ("C2", RepKind::NaturalSp, "GF(5)"),
        ("C2", RepKind::NaturalSp, "Z/4"),
        ("G2", RepKind::Adjoint, "GF(2)"),
    ];
    for (system, kind, ring) in cases {
        let rep = representation_for(system.parse()?, kind)?;
        let comm = derive_commutator_table(&rep)?;
        let ctx = GroupContext::new(rep, FinRing::parse(ring)?);
        let interp = RingInterpretation::new(&ctx, &comm, default_carrier(&ctx, &comm)?)?;
        let iso = verify_ring_isomorphism(&interp)?;
        let axioms = verify_carrier_axioms(&interp)?;
        println!(
            "{} over {ring}: carrier {}, isomorphism {} ({} pairs), ring axioms {}",
            ctx.rep.label(),
            interp.target().label(ctx.rs()),
            iso.passed(),
            iso.pairs,
            axioms.passed()
        );
        let two = ctx.ring.from_i64(2);
        let three = ctx.ring.from_i64(3);
        let product = interp.otimes(&interp.encode(&two), &interp.encode(&three))?;
        println!("  decode(phi(2) (x) phi(3)) = {}", interp.decode(&product).map_or("-".into(), |v| ctx.ring.format(&v)));
    }
    Ok(())
}
