//! k = 2: for alpha = -1 every value h^{pq} has exactly one preimage; for other alpha a
//! certified value with zero or two preimages.

use permtri::conjecture::{k2_brute_u, k2_nonperm_witness, k2_uniqueness};
use permtri::ff::QuadExtCtx;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn main() -> permtri::Result<()> {
    let quad = QuadExtCtx::new(11, 2)?;
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for _ in 0..5 {
        let h = quad.ext().random(&mut rng);
        let u = k2_uniqueness(&quad, h)?;
        let brute = k2_brute_u(&quad, h)?;
        println!("h={} u={} via {:?}; scan finds {:?}", u.h, u.u, u.branch, brute.iter().map(|x| x.to_string()).collect::<Vec<_>>());
    }
    for a in [1i64, 2, 5] {
        let w = k2_nonperm_witness(&quad, quad.base().from_int(a))?;
        println!("alpha={a}: {:?}, verified {}, exhaustive agrees {}", w.certificate, w.verified, w.exhaustive_agrees);
    }
    Ok(())
}
