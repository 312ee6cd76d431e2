//! mu-census at p = 11 under the default mask and under each single condition.

use std::collections::BTreeSet;

use permtri::conjecture::{default_mask, mu_census, CensusCondition};

fn main() -> permtri::Result<()> {
    let report = mu_census(11, &default_mask())?;
    println!("{}", serde_json::to_string_pretty(&report).expect("report serializes"));

    let literal: BTreeSet<_> = [CensusCondition::ZetaNonresidue, CensusCondition::LNonresidue].into();
    let r = mu_census(11, &literal)?;
    println!("character conditions only: {} of {}", r.qualifying_count, r.total);
    let none = mu_census(11, &BTreeSet::new())?;
    println!("no conditions: {} distinct mu over {} values of z", none.qualifying_count, none.zeta_count);
    Ok(())
}
