//! Membership in the classes Psi_d, for diagonal and Hermitian inputs.
//!
//! ```bash
//! cargo run --example membership
//! ```

use psi_classes::generators::{example_fig2, generate_lambda_example};
use psi_classes::poly::{rat, ratio, GaussianRational, HermitianPoly, MultiIndex};
use psi_classes::psi::{in_psi, in_psi_diagonal, min_psi_index, verify_certificate, AnyPoly, Certificate};

fn main() -> psi_classes::Result<()> {
    let p = example_fig2();
    let report = in_psi_diagonal(&p, 1);
    println!("figure-2 polynomial: {} terms, in Psi_1: {}", p.len(), report.member);

    for lambda in [8, 12, 15] {
        let q = generate_lambda_example(&rat(lambda));
        let d = min_psi_index(&AnyPoly::Real(q), 64)?;
        println!("(x+y)^4 - {lambda} x^2 y^2: smallest d = {d:?}");
    }

    // |z1 - z2|^2 is a square; |z1|^2 + |z2|^2 - 3 Re(z1 conj(z2)) is negative at z1 = z2
    for off in [ratio(-1, 1), ratio(-3, 2)] {
        let e = |a: [u32; 2], b: [u32; 2], c| (MultiIndex::from(a), MultiIndex::from(b), GaussianRational::real(c));
        let r = HermitianPoly::from_entries(2, [e([1, 0], [1, 0], rat(1)), e([0, 1], [0, 1], rat(1)), e([1, 0], [0, 1], off.clone())])?;
        let input = AnyPoly::Hermitian(r);
        for d in 0..2 {
            let report = in_psi(&input, d)?;
            let kind = match &report.certificate {
                Certificate::Psd { inertia, .. } => format!("semidefinite, inertia {inertia:?}"),
                Certificate::NegativeDirection { value, .. } => format!("negative direction, value {value}"),
                _ => unreachable!(),
            };
            let ok = verify_certificate(&input, &report)?;
            println!("off-diagonal {off}, d = {d}: member {} ({kind}); certificate checks: {ok}", report.member);
        }
    }
    Ok(())
}
