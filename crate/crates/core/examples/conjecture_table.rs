//! Verdict table for p = 7 and k = 1, 2, 3 against the known answer, as CSV.

use permtri::conjecture::{conjecture_table, table_csv};
use permtri::permlab::SearchOptions;

fn main() -> permtri::Result<()> {
    let rows = conjecture_table(7, &[1, 2, 3], &SearchOptions::default())?;
    print!("{}", table_csv(&rows));
    let pp: Vec<_> = rows.iter().filter(|r| r.verdict == permtri::permlab::Verdict::Permutation).collect();
    println!("permutations: {:?}", pp.iter().map(|r| (r.k, r.alpha.clone())).collect::<Vec<_>>());
    println!("all match: {}", rows.iter().all(|r| r.matches_expected && r.witness_verified));
    Ok(())
}
