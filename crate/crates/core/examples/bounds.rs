//! Ratio ceilings and the fiber-counting certificate.
//!
//! ```bash
//! cargo run --example bounds
//! ```

use psi_classes::bounds::{pigeonhole_certificate, verify_min_positive, verify_ratio_bound};
use psi_classes::generators::{example_fig2, generate_two_var};

fn main() -> psi_classes::Result<()> {
    let p = example_fig2();
    let report = verify_ratio_bound(p.sign_counts(), 3, 1);
    println!("figure 2: {} against bound {}: satisfied {}", report.signature, report.bound, report.satisfied);
    println!("at least n positives: {}", verify_min_positive(&p, 1)?);

    let cert = pigeonhole_certificate(&p)?;
    for (neg, pos) in &cert.assignment {
        println!("  {neg} -> {pos}");
    }
    println!("largest fiber {}, least positive {:?}", cert.max_fiber, cert.least_monomial.map(|m| m.to_string()));

    let q = generate_two_var(3, 2)?;
    let report = verify_ratio_bound(q.sign_counts(), 2, 3);
    println!("two-variable d=3 m=2: {} against bound {}", report.signature, report.bound);
    Ok(())
}
