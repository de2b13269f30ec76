//! Derives the commutator coefficients of G2 by symbolic peeling and prints
//! the chevtab table.

use chevdioph::chevalley::{derive_commutator_table, export_tables, representation_for, RepKind};

fn main() -> chevdioph::Result<()> {
    let rep = representation_for("G2".parse()?, RepKind::Adjoint)?;
    let comm = derive_commutator_table(&rep)?;
    let rs = &rep.rs;
    let (a, b) = (rs.simple()[1], rs.simple()[0]);
    for (x, y) in [(a, b), (rs.sum(a, b).unwrap(), b)] {
        let terms: Vec<String> = comm
            .get(x, y)
            .iter()
            .map(|t| format!("x_{}({} t^{} u^{})", rs.name(t.root), t.c, t.i, t.j))
            .collect();
        println!("[x_{}(t), x_{}(u)] = {}", rs.name(x), rs.name(y), terms.join(" "));
    }
    println!();
    print!("{}", export_tables(&rep.table, &comm));
    Ok(())
}
