//! Roots of X^{p^n} - A X - B over F_{p^l}: the three cases and a comparison with a scan.

use permtri::ff::FieldCtx;
use permtri::lintri::{brute_roots, classify, norm_criterion, LinTriInstance};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn main() -> permtri::Result<()> {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for (p, l, n) in [(5, 4, 2), (7, 3, 1), (11, 2, 1), (5, 6, 3)] {
        let field = FieldCtx::new(p, l)?;
        for _ in 0..3 {
            let a = field.random_nonzero(&mut rng);
            let b = field.random(&mut rng);
            let inst = LinTriInstance::new(n, a, b)?;
            let cls = classify(&inst)?;
            let roots = cls.roots();
            let scan = brute_roots(&inst)?;
            println!(
                "p={p} l={l} n={n} d={} A={a} B={b}: {} with {} roots, scan agrees {}, norm criterion {}",
                inst.d,
                cls.case_name(),
                roots.len(),
                roots == scan,
                norm_criterion(inst.alpha(inst.m - 1), inst.d)
            );
        }
    }
    Ok(())
}
