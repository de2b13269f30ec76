//! Roots, heights and Weyl group orders for a few indecomposable systems.
//!
//! ```bash
//! cargo run --example root_systems -- G2 F4
//! ```

use chevdioph::rootsys::{build_root_system, generate_weyl};

fn main() -> chevdioph::Result<()> {
    let mut names: Vec<String> = std::env::args().skip(1).collect();
    if names.is_empty() {
        names = ["A2", "B3", "C3", "G2"].map(String::from).to_vec();
    }
    for name in names {
        let rs = build_root_system(name.parse()?)?;
        let weyl = generate_weyl(&rs, 1_000_000)?;
        println!("{}: {} roots, {} positive, |W| = {}", rs.id, rs.len(), rs.num_positive(), weyl.len());
        let top = rs.highest_root();
        println!("  highest root {} = {} (height {})", rs.name(top), rs.coord_string(top), rs.height(top));
        for &s in rs.simple() {
            println!("  simple {:<4} {}", rs.name(s), rs.coord_string(s));
        }
    }
    Ok(())
}
