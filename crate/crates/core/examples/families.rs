//! The extremal families and their signature ratios.
//!
//! ```bash
//! cargo run --release --example families
//! ```

use num_traits::ToPrimitive;
use psi_classes::generators::{generate_inductive, generate_pd, generate_qk_auto, generate_two_var};
use psi_classes::poly::RealSparsePoly;
use psi_classes::psi::{in_psi_diagonal, min_psi_index, AnyPoly};

fn show(name: &str, p: &RealSparsePoly, d: u32) {
    let sig = p.sign_counts();
    let ratio = sig.ratio().map(|r| r.to_f64().unwrap()).unwrap_or(0.0);
    println!("{name:<28} {sig:<14} ratio {ratio:.4}  in Psi_{d}: {}", in_psi_diagonal(p, d).member);
}

fn main() -> psi_classes::Result<()> {
    for degree in [12, 24, 48] {
        show(&format!("p_D n=3 D={degree}"), &generate_pd(3, degree), 1);
    }
    for (d, m) in [(1, 3), (2, 3), (3, 2)] {
        show(&format!("two-variable d={d} m={m}"), &generate_two_var(d, m)?, d);
    }
    show("inductive n=3 d=4 nu=2 k=30", &generate_inductive(3, 4, 30, Some(2), true)?, 4);
    for k in 2..=5 {
        let q = generate_qk_auto(3, k)?;
        let d = min_psi_index(&AnyPoly::Real(q.poly), 16)?;
        println!("q_{k} with eps = {}: smallest d = {d:?}", q.epsilon);
    }
    Ok(())
}
