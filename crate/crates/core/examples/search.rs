//! Sign-pattern search for large N-/N+ ratios.
//!
//! ```bash
//! cargo run --release --example search
//! ```

use psi_classes::poly::MultiIndex;
use psi_classes::search::{search_max_ratio, SearchConfig, Strategy};
use psi_classes::Error;

fn main() -> psi_classes::Result<()> {
    let mut exhaustive = SearchConfig::new(Strategy::Exhaustive);
    exhaustive.budget = 1 << 22;
    exhaustive.support =
        Some(MultiIndex::all_of_degree(3, 6).into_iter().filter(|a| a.exps().iter().all(|&e| e <= 4)).collect());
    let best = search_max_ratio(3, 6, 1, &exhaustive)?;
    println!("exhaustive n=3 D=6: ratio {} after {} evaluations", best.ratio, best.evaluations);
    println!("  positive: {:?}", best.best.positive().map(|a| a.to_string()).collect::<Vec<_>>());
    println!("  negative: {:?}", best.best.negative().map(|a| a.to_string()).collect::<Vec<_>>());

    let mut local = SearchConfig::new(Strategy::Local);
    local.seed = 7;
    local.budget = 50_000;
    let res = match search_max_ratio(3, 10, 2, &local) {
        Ok(r) => r,
        Err(Error::BudgetExhausted(r)) => *r,
        Err(e) => return Err(e),
    };
    println!("local n=3 D=10 d=2 seed 7: ratio {} ({}), {} evaluations", res.ratio, res.best.counts(), res.evaluations);
    Ok(())
}
