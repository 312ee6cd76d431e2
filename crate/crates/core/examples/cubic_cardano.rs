//! Closed-form roots of the cubic attached to (z, mu, T), checked against generic root finding.

use permtri::charsum::neg_one_roots;
use permtri::cubic::{gamma_cubic, CardanoSolver};
use permtri::ff::{nth_roots, FieldCtx};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn main() -> permtri::Result<()> {
    let (p, k) = (11u64, 3usize);
    let f = FieldCtx::new(p, 2 * k)?;
    let zetas = neg_one_roots(&f, (p.pow(k as u32) - 1) / (p - 1));
    let solver = CardanoSolver::new(&f)?;
    let u = nth_roots(f.from_int(-1), (p - 1) as usize)[0];
    let half = f.from_int(2).inv();
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let mut shown = 0;
    while shown < 5 {
        let zeta = *zetas.choose(&mut rng).expect("nonempty");
        let mu = f.random(&mut rng).trace_to(k)?;
        let t = u * f.from_int(rng.gen_range(1..p) as i64);
        if mu.is_zero() || mu == half {
            continue;
        }
        let chk = match solver.check(zeta, mu, t) {
            Ok(c) => c,
            Err(permtri::Error::Precondition(_)) => continue,
            Err(e) => return Err(e),
        };
        println!(
            "relative degree {}: roots {:?}; generic agrees {}, both forms agree {}, branch-invariant {}",
            chk.ext_degree, chk.cardano, chk.agree, chk.forms_agree, chk.branch_invariant
        );
        let g = gamma_cubic(zeta, mu, t);
        println!("  gamma cubic coefficients: {}", g.iter().map(|c| c.to_string()).collect::<Vec<_>>().join(" | "));
        shown += 1;
    }
    Ok(())
}
