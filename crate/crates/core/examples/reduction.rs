//! Partial row-echelon reduction of a decomposed Psi_1 member.
//!
//! ```bash
//! cargo run --example reduction
//! ```

use num_complex::Complex64;
use psi_classes::poly::{rat, ratio, GaussianRational, HermitianPoly, MultiIndex};
use psi_classes::reduction::{is_partial_row_echelon, partial_row_echelon, DecomposedForm, Tolerances};

fn main() -> psi_classes::Result<()> {
    // |z1^2 + z2^2|^2 + |z1 z2|^2 - (1/9)|z1^2 - z2^2|^2: both blocks lead at z1^2
    let basis = [MultiIndex::from([2, 0]), MultiIndex::from([1, 1]), MultiIndex::from([0, 2])];
    let g = |v: i64| GaussianRational::real(rat(v));
    let r = HermitianPoly::from_weighted_rows(
        2,
        &basis,
        &[vec![g(1), g(0), g(1)], vec![g(0), g(1), g(0)], vec![g(1), g(0), g(-1)]],
        &[rat(1), rat(1), -ratio(1, 9)],
    );
    let c = |v: f64| Complex64::new(v, 0.0);
    let plus = vec![vec![c(1.0), c(0.0), c(1.0)], vec![c(0.0), c(1.0), c(0.0)]];
    let minus = vec![vec![c(1.0 / 3.0), c(0.0), c(-1.0 / 3.0)]];
    let form = DecomposedForm::new(2, basis.to_vec(), plus, minus)?.with_origin(r);
    println!("input signature {}, echelon: {}", form.signature(), is_partial_row_echelon(&form));

    let red = partial_row_echelon(&form, &Tolerances::default())?;
    for s in &red.steps {
        println!("step at column {}: rows {:?}, lambda {:?}", s.pivot_col, s.rows, s.lambda_used.as_ref().map(|l| l.to_string()));
        println!("  T = [[{:.4}, {:.4}], [{:.4}, {:.4}]]", s.t[0][0], s.t[0][1], s.t[1][0], s.t[1][1]);
    }
    println!("output echelon: {}", is_partial_row_echelon(&red.form));
    println!("reconstruction error {:.2e}, J-defect ratio {:.2e}", red.reconstruction_error(), red.max_j_defect_ratio());
    Ok(())
}
