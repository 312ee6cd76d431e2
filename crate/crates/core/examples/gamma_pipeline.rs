//! Solving f(X) = h^{pq} through the gamma-equation and comparing with a field scan.

use permtri::conjecture::{brute_force_preimages, gamma_root_pipeline};
use permtri::ff::QuadExtCtx;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn main() -> permtri::Result<()> {
    let quad = QuadExtCtx::new(11, 2)?;
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let mut shown = 0;
    while shown < 8 {
        let alpha = quad.base().random_nonzero(&mut rng);
        let h = quad.ext().random(&mut rng);
        if (alpha + 2).is_zero() || quad.in_base(h) {
            continue;
        }
        let a = quad.lift(alpha);
        let res = gamma_root_pipeline(&quad, a, h)?;
        let scan = brute_force_preimages(&quad, a, h)?;
        println!(
            "alpha={alpha} h={h}: {} admissible gamma, {} preimages by scan, equal: {}",
            res.gammas.len(),
            scan.len(),
            res.solutions == scan
        );
        shown += 1;
    }
    Ok(())
}
