//! Newton diagrams of the figure polynomials as SVG and ASCII.
//!
//! ```bash
//! cargo run --example diagram > fig2.svg
//! ```

use psi_classes::diagram::{render, DiagramFormat, DiagramSpec};
use psi_classes::generators::{example_fig1, example_fig2};
use psi_classes::search::SignPattern;

fn main() -> psi_classes::Result<()> {
    let fig1 = SignPattern::from_poly(&example_fig1())?;
    eprint!("{}", render(&DiagramSpec { pattern: &fig1, format: DiagramFormat::Ascii, simplices: false })?);
    let fig2 = SignPattern::from_poly(&example_fig2())?;
    eprint!("{}", render(&DiagramSpec { pattern: &fig2, format: DiagramFormat::Ascii, simplices: false })?);
    print!("{}", render(&DiagramSpec { pattern: &fig2, format: DiagramFormat::Svg, simplices: true })?);
    Ok(())
}
