//! Arithmetic in F_{11^3}: modulus, Frobenius, traces, norms, square roots and polynomial roots.

use permtri::ff::{roots_in_field, FieldCtx, QuadExtCtx, UniPoly};

fn main() -> permtri::Result<()> {
    let f = FieldCtx::new(11, 3)?;
    println!("F_{}^{}: modulus (c0 first) {:?}", f.p(), f.degree(), f.modulus());

    let x = f.parse("2,7,-1")?;
    let y = f.gen();
    println!("x = {x}, y = {y}");
    println!("x + y = {}, x * y = {}, x / y = {}", x + y, x * y, x / y);
    println!("x^(11^3) = {}", x.pow_u64(1331));
    println!("frob(x) = {}, x^11 = {}", x.frobenius(1), x.pow_u64(11));
    println!("Tr(x) = {}, N(x) = {}", x.trace_to(1)?, x.norm_to(1)?);
    println!("order of y: {:?}", y.multiplicative_order());
    println!("inv(0) = {}", f.zero().inv());

    match (x * x).sqrt() {
        Some((a, b)) => println!("sqrt(x^2) = {{{a}, {b}}}"),
        None => println!("x^2 has no square root"),
    }
    println!("eta(x) = {}, eta(y) = {}", x.quad_char()?, y.quad_char()?);

    // X^3 - 2 over F_11^3
    let poly = UniPoly::from_ints(&f, &[-2, 0, 0, 1]);
    let roots = roots_in_field(&poly)?;
    println!("roots of X^3 - 2: {}", roots.iter().map(|r| r.to_string()).collect::<Vec<_>>().join(" | "));

    let quad = QuadExtCtx::new(11, 2)?;
    let z = quad.ext().parse("1,2,3,4")?;
    println!(
        "in F_11^4 over F_11^2: i = {}, Tr = {}, N = {}, conj = {}",
        quad.i(),
        quad.rel_trace(z),
        quad.rel_norm(z),
        quad.conj(z)
    );
    Ok(())
}
