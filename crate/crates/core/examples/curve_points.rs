//! Point counts of the F_q-model of the collision curve at p = 11, k = 4.

use permtri::curvelab::{build_f_alpha, curve_count, default_probe_degree, singular_probe};
use permtri::ff::QuadExtCtx;

fn main() -> permtri::Result<()> {
    let quad = QuadExtCtx::new(11, 4)?;
    let base = quad.base();
    for a in [1i64, 3, 5] {
        let alpha = base.from_int(a);
        let res = curve_count(&quad, alpha)?;
        let c = &res.counts;
        println!(
            "alpha={} deg={} affine={} off-diagonal={} window=[{:.0}, {:.0}] ok={}",
            c.alpha, c.total_degree, c.affine_count, c.off_diagonal_count, c.lower_bound, c.upper_bound, c.within_bounds
        );
        if let Some(col) = &res.collision {
            println!("  point {:?} -> mu pair, g equal: {}, f witness verified: {}", col.point, col.g_equal, col.witness_verified);
        }
    }

    let alpha = base.from_int(3);
    let spec = build_f_alpha(alpha)?;
    println!("F1(X,X) = -alpha (X-1)^p (X^(p-2)-1): {}", spec.check_diagonal());
    let probe = singular_probe(alpha, default_probe_degree(11, 4))?;
    println!("singular probe over F_11^{}: {:?}", probe.degree, probe);
    Ok(())
}
