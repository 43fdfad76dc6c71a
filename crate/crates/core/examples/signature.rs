//! Signature pairs and holomorphic decompositions of Hermitian forms.
//!
//! ```bash
//! cargo run --example signature
//! ```

use psi_classes::inertia::{holomorphic_decomposition, signature};
use psi_classes::poly::{rat, GaussianRational, HermitianPoly, MultiIndex};

fn main() -> psi_classes::Result<()> {
    let e = |a: [u32; 2], b: [u32; 2], re: i64, im: i64| {
        (MultiIndex::from(a), MultiIndex::from(b), GaussianRational::new(rat(re), rat(im)))
    };
    let r = HermitianPoly::from_entries(
        2,
        [e([2, 0], [2, 0], 3, 0), e([1, 1], [1, 1], -1, 0), e([0, 2], [0, 2], 2, 0), e([2, 0], [1, 1], 1, 1), e([1, 1], [0, 2], 0, 2)],
    )?;
    println!("signature: {}", signature(&r)?);

    let dec = holomorphic_decomposition(&r)?;
    println!("basis: {:?}", dec.basis.iter().map(|b| b.to_string()).collect::<Vec<_>>());
    for (row, s) in dec.plus_rows.iter().zip(&dec.plus_scales) {
        println!("  + {s} |{}|^2", row.iter().map(|c| format!("({c})")).collect::<Vec<_>>().join(", "));
    }
    for (row, s) in dec.minus_rows.iter().zip(&dec.minus_scales) {
        println!("  - {s} |{}|^2", row.iter().map(|c| format!("({c})")).collect::<Vec<_>>().join(", "));
    }
    println!("reconstructs exactly: {}", dec.reconstruct(2) == r);
    Ok(())
}
