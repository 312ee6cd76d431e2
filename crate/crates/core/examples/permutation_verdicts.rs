//! Exhaustive verdicts for small (p, k, alpha), and the mu_{q+1} method above the budget.

use permtri::conjecture::expected_verdict;
use permtri::ff::QuadExtCtx;
use permtri::permlab::{is_permutation_exhaustive, mu_collision_search, verify_witness, SearchOptions, TrinomialParams};

fn main() -> permtri::Result<()> {
    let opts = SearchOptions::default();
    for (p, k, a) in [(7, 1, -3), (7, 2, -1), (7, 2, 1), (11, 1, -3), (11, 2, 1)] {
        let quad = QuadExtCtx::new(p, k)?;
        let alpha = quad.base().from_int(a);
        let params = TrinomialParams::with_unit_beta(&quad, alpha)?;
        let r = is_permutation_exhaustive(&params, &opts)?;
        println!(
            "p={p} k={k} alpha={a}: {:?} (expected {:?}), witness {:?}, verified {}",
            r.verdict,
            expected_verdict(&quad, alpha),
            r.witness,
            verify_witness(&params, &r)?
        );
    }

    let quad = QuadExtCtx::new(11, 3)?;
    let alpha = quad.base().from_int(-1);
    let params = TrinomialParams::with_unit_beta(&quad, alpha)?;
    let r = mu_collision_search(&params, &opts)?;
    println!(
        "p=11 k=3 alpha=-1 via mu_(q+1): {:?}, mu pair {:?}, lifted witness verified {}",
        r.verdict,
        r.mu_witness,
        verify_witness(&params, &r)?
    );
    Ok(())
}
