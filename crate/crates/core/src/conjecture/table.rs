//! Verdict tables over all alpha in F_q^* for several k.

use rayon::prelude::*;
use serde::Serialize;

use super::{expected_verdict, verdict};
use crate::error::Result;
use crate::ff::QuadExtCtx;
use crate::permlab::{Method, SearchOptions, Verdict};

#[derive(Debug, Clone, Serialize)]
pub struct TableRow {
    pub p: u32,
    pub k: usize,
    pub alpha: String,
    pub verdict: Verdict,
    pub method: Method,
    /// "x;y" with ':' inside elements, empty for permutations.
    pub witness: String,
    pub witness_verified: bool,
    pub expected: Verdict,
    pub matches_expected: bool,
    pub elapsed_ms: u64,
}

fn csv_element(s: &str) -> String {
    s.replace(',', ":")
}

/// Every alpha in F_q^* for each k, in (k, canonical alpha) order.
pub fn conjecture_table(p: u64, ks: &[usize], opts: &SearchOptions) -> Result<Vec<TableRow>> {
    let mut rows = Vec::new();
    for &k in ks {
        let quad = QuadExtCtx::new(p, k)?;
        let base = quad.base();
        let n = base.size().unwrap_or(0);
        let mut part: Vec<(u64, TableRow)> = (1..n)
            .into_par_iter()
            .map(|i| {
                let alpha = base.element_at(i);
                let (report, verified) = verdict(&quad, alpha, opts)?;
                let expected = expected_verdict(&quad, alpha);
                Ok((
                    i,
                    TableRow {
                        p: report.p,
                        k: report.k,
                        alpha: csv_element(&report.alpha),
                        verdict: report.verdict,
                        method: report.method,
                        witness: report
                            .witness
                            .as_ref()
                            .map(|[a, b]| format!("{};{}", csv_element(a), csv_element(b)))
                            .unwrap_or_default(),
                        witness_verified: verified,
                        expected,
                        matches_expected: expected == report.verdict,
                        elapsed_ms: report.elapsed_ms,
                    },
                ))
            })
            .collect::<Result<_>>()?;
        part.sort_by_key(|r| r.0);
        rows.extend(part.into_iter().map(|r| r.1));
    }
    Ok(rows)
}

fn verdict_name(v: Verdict) -> &'static str {
    match v {
        Verdict::Permutation => "permutation",
        Verdict::NotPermutation => "not_permutation",
    }
}

fn method_name(m: Method) -> &'static str {
    match m {
        Method::Exhaustive => "exhaustive",
        Method::MuCollision => "mu_collision",
    }
}

pub const CSV_HEADER: &str = "p,k,alpha,verdict,method,witness,elapsed_ms";

pub fn table_csv(rows: &[TableRow]) -> String {
    let mut out = String::from(CSV_HEADER);
    out.push('\n');
    for r in rows {
        out.push_str(&format!(
            "{},{},{},{},{},{},{}\n",
            r.p,
            r.k,
            r.alpha,
            verdict_name(r.verdict),
            method_name(r.method),
            r.witness,
            r.elapsed_ms
        ));
    }
    out
}
