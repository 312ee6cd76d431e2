//! The reduction of f to g on mu_{q+1}: parametrisation, power form, and gcd conditions.

use permtri::ff::QuadExtCtx;
use permtri::permlab::{g_alpha, g_alpha_power_form, mu_enumerate, reduction_gcds, TrinomialParams};

fn main() -> permtri::Result<()> {
    let quad = QuadExtCtx::new(11, 2)?;
    let q = 121u64;
    let group = mu_enumerate(&quad);
    println!("|mu_(q+1)| = {} (q + 1 = {})", group.len(), q + 1);
    println!("all satisfy a^(q+1) = 1: {}", group.elements().all(|a| a.pow_u64(q + 1).is_one()));
    let (g1, g2) = reduction_gcds(11, 2);
    println!("gcd(q+p-1, q-1) = {g1}, gcd(q+p-1, q^2-1) = {g2}");

    for a in [-1i64, 1, -2] {
        let alpha = quad.base().from_int(a);
        let params = TrinomialParams::with_unit_beta(&quad, alpha)?;
        let mut agree = true;
        let mut images = Vec::new();
        let mut poles = 0;
        for x in group.elements() {
            let g = g_alpha(&params, x);
            if g.zero_denominator {
                poles += 1;
                continue;
            }
            agree &= g.value == g_alpha_power_form(&params, x);
            images.push(g.value);
        }
        images.sort();
        images.dedup();
        let g1 = g_alpha(&params, quad.ext().one());
        println!(
            "alpha={a}: power form agrees {agree}, zero denominators {poles}, distinct values {}, g(1) = {}",
            images.len(),
            g1.value
        );
    }
    Ok(())
}
