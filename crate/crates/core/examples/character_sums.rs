//! Quadratic-character sums over F_{11^3}: the Weil bound, the vanishing linear sum, and the
//! search for z with eta(z) = eta(4(z - 1) mu + 1) = -1.

use permtri::charsum::{mu_q1_roots_of_unity, CharSums, ExponentForm};
use permtri::ff::FieldCtx;

fn main() -> permtri::Result<()> {
    let f = FieldCtx::new(11, 3)?;
    let cs = CharSums::new(&f)?;
    let scan = cs.weil_scan();
    let max = scan.iter().filter(|r| !r.square_case).map(|r| r.sum_value.abs()).max().unwrap_or(0);
    println!("q = 1331, sqrt(q) = {:.3}", scan[0].bound);
    println!("max |S(mu)| over mu != 1/4: {max}; all within bound: {}", scan.iter().all(|r| r.square_case || r.satisfied));
    for r in scan.iter().filter(|r| r.square_case) {
        println!("mu = {} (= 1/4): S = {} = q - 1", r.mu, r.sum_value);
    }
    let mu = f.parse("3,1,4")?;
    println!("linear sum at mu={mu}: {}", cs.linear_sum(mu)?);
    println!("z for mu={mu}: {:?}", cs.zeta_search(mu).map(|z| z.to_string()));
    println!("{:?}", cs.zeta_count(mu)?);
    let zetas = mu_q1_roots_of_unity(&f, ExponentForm::PSquaredPlusPPlusOne);
    println!("z^(p^2+p+1) = -1 has {} solutions in F_11^3", zetas.len());
    Ok(())
}
