//! Census of mu in F_{p^3} reachable from the t = 0 branch: for each z with
//! z^{p^2+p+1} = -1 the mu solving mu^p - A mu - B = 0 with
//! A = (z - 1)/(z^2 (z^p - 1)) and B = -(z^2 - 1)/(4 z^2 (z^p - 1)).

use std::collections::{BTreeMap, BTreeSet};

use serde::Serialize;

use crate::charsum::{mu_q1_roots_of_unity, CharSums, ExponentForm};
use crate::error::{Error, Result};
use crate::ff::{FieldCtx, FieldElement};
use crate::lintri::{classify, LinTriInstance};

/// Filters applied to (z, mu) pairs before they are counted.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum CensusCondition {
    /// eta(z) = -1
    ZetaNonresidue,
    /// eta(4(z - 1) mu + 1) = -1
    LNonresidue,
    /// mu not in F_p
    MuOutsidePrimeField,
    MuNonzero,
    /// mu != 1/2
    MuNotHalf,
    /// 4(z - 1) mu + 1 != 0
    LNonzero,
}

impl CensusCondition {
    pub const ALL: [CensusCondition; 6] = [
        CensusCondition::ZetaNonresidue,
        CensusCondition::LNonresidue,
        CensusCondition::MuOutsidePrimeField,
        CensusCondition::MuNonzero,
        CensusCondition::MuNotHalf,
        CensusCondition::LNonzero,
    ];

    pub fn name(self) -> &'static str {
        match self {
            CensusCondition::ZetaNonresidue => "zeta_nonresidue",
            CensusCondition::LNonresidue => "l_nonresidue",
            CensusCondition::MuOutsidePrimeField => "mu_outside_prime_field",
            CensusCondition::MuNonzero => "mu_nonzero",
            CensusCondition::MuNotHalf => "mu_not_half",
            CensusCondition::LNonzero => "l_nonzero",
        }
    }

    pub fn parse(s: &str) -> Result<Self> {
        Self::ALL
            .into_iter()
            .find(|c| c.name() == s)
            .ok_or_else(|| Error::Parse {
                text: s.to_string(),
                reason: "unknown census condition".into(),
            })
    }
}

/// The mask that reproduces the published count.
pub fn default_mask() -> BTreeSet<CensusCondition> {
    [
        CensusCondition::ZetaNonresidue,
        CensusCondition::LNonresidue,
        CensusCondition::MuOutsidePrimeField,
    ]
    .into_iter()
    .collect()
}

#[derive(Debug, Clone, Serialize)]
pub struct CensusReport {
    pub p: u32,
    /// |F_{p^3}^*|
    pub total: u64,
    pub qualifying_count: usize,
    pub condition_mask: Vec<CensusCondition>,
    pub zeta_count: usize,
    /// Number of z whose equation has each root count, e.g. {11: 133}.
    pub roots_per_zeta: BTreeMap<usize, usize>,
    /// Largest number of mu shared by two distinct z.
    pub max_shared: usize,
    /// Pairs of distinct z sharing a mu.
    pub sharing_pairs: usize,
    /// (p^2 + p)/2
    pub lower_bound: u64,
}

/// (A, B) of the linearized equation mu^p - A mu - B = 0 attached to z.
pub fn census_coefficients<'f>(zeta: FieldElement<'f>) -> (FieldElement<'f>, FieldElement<'f>) {
    let z2 = zeta * zeta;
    let den = z2 * (zeta.frobenius(1) - 1);
    let a = (zeta - 1) / den;
    let b = -((z2 - 1) / (den * 4));
    (a, b)
}

pub fn mu_census(p: u64, mask: &BTreeSet<CensusCondition>) -> Result<CensusReport> {
    let field = FieldCtx::new(p, 3)?;
    census_in(&field, mask)
}

pub fn census_in(field: &FieldCtx, mask: &BTreeSet<CensusCondition>) -> Result<CensusReport> {
    if field.degree() != 3 {
        return Err(Error::BadDegree(field.degree()));
    }
    let sums = CharSums::new(field)?;
    let zetas = mu_q1_roots_of_unity(field, ExponentForm::PSquaredPlusPPlusOne);
    let half = field.from_int(2).inv();
    let mut roots_per_zeta = BTreeMap::new();
    let mut owners: BTreeMap<FieldElement<'_>, Vec<usize>> = BTreeMap::new();
    let mut qualifying = BTreeSet::new();
    for (zi, &zeta) in zetas.iter().enumerate() {
        let (a, b) = census_coefficients(zeta);
        let inst = LinTriInstance::new(1, a, b)?;
        let mus = classify(&inst)?.roots();
        *roots_per_zeta.entry(mus.len()).or_insert(0) += 1;
        for &mu in &mus {
            owners.entry(mu).or_default().push(zi);
            let l = (zeta - 1) * mu * 4 + 1;
            let keep = mask.iter().all(|c| match c {
                CensusCondition::ZetaNonresidue => sums.eta(zeta) == -1,
                CensusCondition::LNonresidue => sums.eta(l) == -1,
                CensusCondition::MuOutsidePrimeField => !mu.in_prime_field(),
                CensusCondition::MuNonzero => !mu.is_zero(),
                CensusCondition::MuNotHalf => mu != half,
                CensusCondition::LNonzero => !l.is_zero(),
            });
            if keep {
                qualifying.insert(mu);
            }
        }
    }
    let mut pair_counts: BTreeMap<(usize, usize), usize> = BTreeMap::new();
    for zs in owners.values() {
        for i in 0..zs.len() {
            for j in i + 1..zs.len() {
                *pair_counts.entry((zs[i], zs[j])).or_insert(0) += 1;
            }
        }
    }
    let p = field.p() as u64;
    Ok(CensusReport {
        p: field.p(),
        total: field.size().unwrap_or(0) - 1,
        qualifying_count: qualifying.len(),
        condition_mask: mask.iter().copied().collect(),
        zeta_count: zetas.len(),
        roots_per_zeta,
        max_shared: pair_counts.values().copied().max().unwrap_or(0),
        sharing_pairs: pair_counts.len(),
        lower_bound: (p * p + p) / 2,
    })
}
