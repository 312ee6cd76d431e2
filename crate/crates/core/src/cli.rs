//! Command-line front end. Every subcommand emits JSON (default), CSV or text; output depends
//! only on the arguments and the seed.

use std::collections::BTreeSet;
use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;
use serde_json::Value;

use crate::charsum::CharSums;
use crate::conjecture::{
    self, census::CensusCondition, k2_brute_u, k2_nonperm_witness, k2_uniqueness, mu_census, table_csv,
};
use crate::curvelab::{curve_count, default_probe_degree, singular_probe, CurveCountResult, SingularReport};
use crate::error::{Error, Result};
use crate::ff::{FieldCtx, FieldElement, QuadExtCtx};
use crate::lintri::{self, LinTriInstance};
use crate::permlab::{
    self, g_alpha, g_alpha_power_form, mu_enumerate, reduction_gcds, SearchOptions, TrinomialParams, Verdict,
    BUDGET_ENV, DEFAULT_EXHAUSTIVE_BUDGET,
};

pub const EXIT_OK: i32 = 0;
pub const EXIT_VIOLATION: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Text,
}

#[derive(Debug, Parser)]
#[command(name = "permtri", version, about = "Permutation checks for X^{q(p-1)+1} + aX^{pq} + X^{q+p-1} over F_{q^2}")]
pub struct RunConfig {
    #[command(subcommand)]
    pub command: Command,

    #[arg(long, global = true, value_enum, default_value = "json")]
    pub format: Format,

    /// Write the report here instead of stdout.
    #[arg(long, global = true)]
    pub output: Option<PathBuf>,

    /// Worker threads (0 = all cores). Never affects the output.
    #[arg(long, global = true, default_value_t = 0)]
    pub workers: usize,

    #[arg(long, global = true, default_value_t = 1)]
    pub seed: u64,

    /// Largest q^2 decided by exhaustive evaluation; larger fields use mu_{q+1} collisions.
    #[arg(long, global = true, env = BUDGET_ENV, default_value_t = DEFAULT_EXHAUSTIVE_BUDGET)]
    pub budget: u128,

    /// Record wall-clock times (makes output non-reproducible).
    #[arg(long, global = true)]
    pub timing: bool,
}

#[derive(Debug, Args)]
pub struct FieldArgs {
    #[arg(long)]
    pub p: u64,
    #[arg(long, default_value_t = 1)]
    pub k: usize,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Decide whether f permutes F_{q^2}.
    PpCheck {
        #[command(flatten)]
        field: FieldArgs,
        /// Element of F_q: an integer or c0,c1,... low degree first.
        #[arg(long, allow_hyphen_values = true)]
        alpha: String,
        #[arg(long, allow_hyphen_values = true, default_value = "1")]
        beta: String,
        /// Exit 1 unless f is a permutation.
        #[arg(long)]
        certify: bool,
    },
    /// Check the reduction to g on mu_{q+1} and decide by collisions there.
    MuCheck {
        #[command(flatten)]
        field: FieldArgs,
        #[arg(long, allow_hyphen_values = true)]
        alpha: String,
    },
    /// Roots of X^{p^n} - A X - B over F_{p^l}, compared with a scan.
    Lintri {
        #[arg(long)]
        p: u64,
        #[arg(long)]
        l: usize,
        #[arg(long)]
        n: usize,
        #[arg(long = "A", allow_hyphen_values = true)]
        a: String,
        #[arg(long = "B", allow_hyphen_values = true)]
        b: String,
        /// Skip the brute-force comparison.
        #[arg(long)]
        no_check: bool,
    },
    /// Character sums S(mu) with the Weil bound, for given mu or all of F_q^*.
    Charsum {
        #[command(flatten)]
        field: FieldArgs,
        #[arg(long, allow_hyphen_values = true)]
        mu: Vec<String>,
    },
    /// F_q-points of the collision curve model, with a singular-point probe.
    CurveCount {
        #[command(flatten)]
        field: FieldArgs,
        #[arg(long, allow_hyphen_values = true, required = true)]
        alpha: Vec<String>,
        /// Probe degrees (multiples of k); default lcm(k, ord_{p-2}(p)).
        #[arg(long, value_delimiter = ',')]
        degrees: Vec<usize>,
    },
    /// Count the mu in F_{p^3} attached to z with z^{p^2+p+1} = -1.
    Census {
        #[arg(long)]
        p: u64,
        /// Conditions to impose; default zeta_nonresidue,l_nonresidue,mu_outside_prime_field.
        #[arg(long, value_delimiter = ',')]
        conditions: Option<Vec<String>>,
    },
    /// alpha = -1, k = 2: the unique u in F_{p^2} with f(u - h) = h^{pq}.
    K2Unique {
        #[arg(long)]
        p: u64,
        #[arg(long, allow_hyphen_values = true)]
        h: Vec<String>,
        /// Random h to draw (seeded) when no --h is given.
        #[arg(long, default_value_t = 10)]
        samples: usize,
        #[arg(long)]
        no_check: bool,
    },
    /// k = 2, alpha != -1: a certified value with zero or several preimages.
    K2Witness {
        #[arg(long)]
        p: u64,
        /// Default: every alpha in F_q^* other than -1 and -2.
        #[arg(long, allow_hyphen_values = true)]
        alpha: Vec<String>,
    },
    /// Verdicts for every alpha in F_q^* against the known answer.
    ConjectureTable {
        #[arg(long)]
        p: u64,
        #[arg(long, value_delimiter = ',', required = true)]
        k: Vec<usize>,
    },
}

/// A finished report: JSON document, CSV rows and whether every checked claim held.
#[derive(Debug, Clone)]
pub struct Emitted {
    pub exit_code: i32,
    pub json: Value,
    pub rows: Vec<Value>,
    /// Replaces the generic CSV rendering.
    pub csv: Option<String>,
}

impl Emitted {
    fn new<T: Serialize>(ok: bool, doc: &T, rows: Vec<Value>) -> Result<Self> {
        Ok(Emitted {
            exit_code: if ok { EXIT_OK } else { EXIT_VIOLATION },
            json: to_value(doc)?,
            rows,
            csv: None,
        })
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Json => {
                let mut s = serde_json::to_string_pretty(&self.json).expect("value serializes");
                s.push('\n');
                s
            }
            Format::Csv => self.csv.clone().unwrap_or_else(|| csv_from_rows(&self.rows)),
            Format::Text => text_from_rows(&self.rows),
        }
    }
}

fn to_value<T: Serialize>(x: &T) -> Result<Value> {
    serde_json::to_value(x).map_err(|e| Error::Construction(e.to_string()))
}

fn flatten(prefix: &str, v: &Value, out: &mut Vec<(String, String)>) {
    let key = |k: &str| if prefix.is_empty() { k.to_string() } else { format!("{prefix}.{k}") };
    match v {
        Value::Object(m) => {
            for (k, x) in m {
                flatten(&key(k), x, out);
            }
        }
        Value::Array(xs) if xs.iter().all(|x| !x.is_object() && !x.is_array()) => {
            let parts: Vec<String> = xs.iter().map(scalar).collect();
            out.push((prefix.to_string(), parts.join(";")));
        }
        Value::Array(xs) => out.push((prefix.to_string(), format!("[{}]", xs.len()))),
        _ => out.push((prefix.to_string(), scalar(v))),
    }
}

fn scalar(v: &Value) -> String {
    let s = match v {
        Value::Null => String::new(),
        Value::String(s) => s.clone(),
        other => other.to_string(),
    };
    s.replace(',', ":")
}

fn flat_rows(rows: &[Value]) -> Vec<Vec<(String, String)>> {
    rows.iter()
        .map(|r| {
            let mut out = Vec::new();
            flatten("", r, &mut out);
            out
        })
        .collect()
}

/// Columns are the union over all rows in order of first appearance; fields never contain commas.
pub fn csv_from_rows(rows: &[Value]) -> String {
    let flat = flat_rows(rows);
    let mut header: Vec<&str> = Vec::new();
    for row in &flat {
        for (k, _) in row {
            if !header.contains(&k.as_str()) {
                header.push(k);
            }
        }
    }
    if header.is_empty() {
        return String::new();
    }
    let mut s = header.join(",");
    s.push('\n');
    for row in &flat {
        let cells: Vec<&str> = header
            .iter()
            .map(|h| row.iter().find(|(k, _)| k == h).map_or("", |(_, v)| v.as_str()))
            .collect();
        s.push_str(&cells.join(","));
        s.push('\n');
    }
    s
}

fn text_from_rows(rows: &[Value]) -> String {
    let mut s = String::new();
    for (i, row) in flat_rows(rows).iter().enumerate() {
        if i > 0 {
            s.push('\n');
        }
        for (k, v) in row {
            s.push_str(&format!("{k}: {v}\n"));
        }
    }
    s
}

fn parse_in<'f>(field: &'f FieldCtx, text: &str) -> Result<FieldElement<'f>> {
    field.parse(text)
}

fn is_usage(e: &Error) -> bool {
    matches!(
        e,
        Error::NotPrime(_)
            | Error::PrimeTooLarge(_)
            | Error::BadDegree(_)
            | Error::Parse { .. }
            | Error::BudgetExceeded { .. }
            | Error::NotInSubfield(_)
            | Error::Precondition(_)
            | Error::EvenCharacteristic
    )
}

fn options(cfg: &RunConfig) -> SearchOptions {
    SearchOptions {
        exhaustive_budget: cfg.budget,
        record_timing: cfg.timing,
    }
}

fn guard(size: u64, budget: u128) -> Result<()> {
    if size as u128 > budget {
        return Err(Error::BudgetExceeded {
            size: size as u128,
            budget,
        });
    }
    Ok(())
}

#[derive(Debug, Serialize)]
struct PpCheckOut {
    #[serde(flatten)]
    report: permlab::PermReport,
    beta: String,
    witness_verified: bool,
}

fn pp_check(cfg: &RunConfig, f: &FieldArgs, alpha: &str, beta: &str, certify: bool) -> Result<Emitted> {
    let quad = QuadExtCtx::new(f.p, f.k)?;
    let a = parse_in(quad.base(), alpha)?;
    let b = parse_in(quad.base(), beta)?;
    let params = TrinomialParams::new(&quad, a, b)?;
    let report = permlab::verdict(&params, &options(cfg))?;
    let verified = permlab::verify_witness(&params, &report)?;
    let ok = verified && (!certify || report.verdict == Verdict::Permutation);
    let out = PpCheckOut {
        report,
        beta: b.to_string(),
        witness_verified: verified,
    };
    let row = to_value(&out)?;
    Emitted::new(ok, &out, vec![row])
}

#[derive(Debug, Serialize)]
struct MuCheckOut {
    p: u32,
    k: usize,
    alpha: String,
    group_size: usize,
    all_in_group: bool,
    /// gcd(q + p - 1, q - 1) must be 1; gcd(q + p - 1, q^2 - 1) is informational.
    gcd_q_minus_1: String,
    gcd_q2_minus_1: String,
    power_form_agrees: bool,
    zero_denominators: usize,
    g_at_one_is_zero: bool,
    alpha_is_minus_two: bool,
    /// g is injective on mu_{q+1} and never hits a zero denominator.
    g_permutes_mu: bool,
    verdict: Verdict,
    witness: Option<[String; 2]>,
    mu_witness: Option<[String; 2]>,
    witness_verified: bool,
}

fn mu_check(cfg: &RunConfig, f: &FieldArgs, alpha: &str) -> Result<Emitted> {
    let quad = QuadExtCtx::new(f.p, f.k)?;
    guard(quad.base().size().unwrap_or(u64::MAX), cfg.budget)?;
    let a = parse_in(quad.base(), alpha)?;
    let params = TrinomialParams::with_unit_beta(&quad, a)?;
    let group = mu_enumerate(&quad);
    let q = quad.base().size().expect("guarded");
    let elems: Vec<_> = group.elements().collect();
    let all_in_group = elems.iter().all(|x| x.pow_u64(q + 1).is_one());
    let values: Vec<_> = elems.par_iter().map(|&x| g_alpha(&params, x)).collect();
    let power_form_agrees = elems
        .par_iter()
        .zip(values.par_iter())
        .all(|(&x, v)| v.zero_denominator || g_alpha_power_form(&params, x) == v.value);
    let zero_denominators = values.iter().filter(|v| v.zero_denominator).count();
    let distinct: BTreeSet<_> = values.iter().filter(|v| !v.zero_denominator).map(|v| v.value).collect();
    let g_permutes_mu = zero_denominators == 0 && distinct.len() == elems.len();
    let g1 = g_alpha(&params, quad.ext().one());
    let (g_small, g_big) = reduction_gcds(quad.p(), quad.k());
    let report = permlab::mu_collision_search(&params, &options(cfg))?;
    let verified = permlab::verify_witness(&params, &report)?;
    let g_at_one_is_zero = g1.value.is_zero() && !g1.zero_denominator;
    let alpha_is_minus_two = (a + 2).is_zero();
    let gcd_ok = g_small == 1u32.into();
    let ok = all_in_group
        && elems.len() as u64 == q + 1
        && power_form_agrees
        && gcd_ok
        && g_at_one_is_zero == alpha_is_minus_two
        && verified
        && (g_permutes_mu == (report.verdict == Verdict::Permutation));
    let out = MuCheckOut {
        p: quad.p(),
        k: quad.k(),
        alpha: a.to_string(),
        group_size: elems.len(),
        all_in_group,
        gcd_q_minus_1: g_small.to_string(),
        gcd_q2_minus_1: g_big.to_string(),
        power_form_agrees,
        zero_denominators,
        g_at_one_is_zero,
        alpha_is_minus_two,
        g_permutes_mu,
        verdict: report.verdict,
        witness: report.witness,
        mu_witness: report.mu_witness,
        witness_verified: verified,
    };
    let row = to_value(&out)?;
    Emitted::new(ok, &out, vec![row])
}

fn lintri_cmd(p: u64, l: usize, n: usize, a: &str, b: &str, check: bool) -> Result<Emitted> {
    let field = FieldCtx::new(p, l)?;
    let a = parse_in(&field, a)?;
    let b = parse_in(&field, b)?;
    let inst = LinTriInstance::new(n, a, b)?;
    let cls = lintri::classify(&inst)?;
    let rep = lintri::report(&inst, &cls, check)?;
    let ok = rep.brute_force_agrees.unwrap_or(true);
    let row = to_value(&rep)?;
    Emitted::new(ok, &rep, vec![row])
}

#[derive(Debug, Serialize)]
struct CharsumRow {
    mu: String,
    sum: i64,
    bound_ok: bool,
    square_case: bool,
    linear_sum: i64,
    zeta: Option<String>,
}

#[derive(Debug, Serialize)]
struct CharsumOut {
    q: u64,
    rows: Vec<CharsumRow>,
    /// Every non-square mu satisfies |S| <= sqrt(q); the square case has S = q - 1.
    weil_holds: bool,
    linear_sums_vanish: bool,
    zeta_found_for_all: bool,
}

fn charsum_cmd(cfg: &RunConfig, f: &FieldArgs, mus: &[String]) -> Result<Emitted> {
    let field = FieldCtx::new(f.p, f.k)?;
    guard(field.size().unwrap_or(u64::MAX), cfg.budget)?;
    let sums = CharSums::new(&field)?;
    let q = field.size().expect("guarded");
    let mu_list: Vec<FieldElement<'_>> = if mus.is_empty() {
        field.elements().skip(1).collect()
    } else {
        mus.iter().map(|m| parse_in(&field, m)).collect::<Result<_>>()?
    };
    let rows: Vec<CharsumRow> = mu_list
        .par_iter()
        .map(|&mu| {
            let r = sums.weil_sum(mu)?;
            Ok(CharsumRow {
                mu: r.mu,
                sum: r.sum_value,
                bound_ok: r.satisfied,
                square_case: r.square_case,
                linear_sum: sums.linear_sum(mu)?,
                zeta: sums.zeta_search(mu).map(|z| z.to_string()),
            })
        })
        .collect::<Result<_>>()?;
    let weil_holds = rows
        .iter()
        .all(|r| if r.square_case { r.sum == q as i64 - 1 } else { r.bound_ok });
    let linear_sums_vanish = rows.iter().all(|r| r.linear_sum == 0);
    let zeta_found_for_all = rows.iter().all(|r| r.zeta.is_some());
    let csv_rows = rows.iter().map(to_value).collect::<Result<_>>()?;
    let out = CharsumOut {
        q,
        rows,
        weil_holds,
        linear_sums_vanish,
        zeta_found_for_all,
    };
    Emitted::new(weil_holds && linear_sums_vanish, &out, csv_rows)
}

#[derive(Debug, Serialize)]
struct CurveOut {
    #[serde(flatten)]
    count: CurveCountResult,
    singular: Vec<SingularReport>,
    /// No singular points off the diagonal and only (1, 1) on it.
    singular_clean: bool,
}

fn curve_cmd(f: &FieldArgs, alphas: &[String], degrees: &[usize]) -> Result<Emitted> {
    let quad = QuadExtCtx::new(f.p, f.k)?;
    let degrees: Vec<usize> = if degrees.is_empty() {
        vec![default_probe_degree(quad.p(), quad.k())]
    } else {
        degrees.to_vec()
    };
    let mut outs = Vec::new();
    let mut ok = true;
    for text in alphas {
        let alpha = parse_in(quad.base(), text)?;
        let count = curve_count(&quad, alpha)?;
        let singular = degrees
            .iter()
            .map(|&d| singular_probe(alpha, d))
            .collect::<Result<Vec<_>>>()?;
        let singular_clean = singular
            .iter()
            .all(|s| s.unit_branch == 0 && s.type_three == 0 && s.diagonal_only_unit);
        ok &= count.counts.within_bounds
            && singular_clean
            && count.collision.as_ref().is_none_or(|c| c.g_equal && c.witness_verified);
        outs.push(CurveOut {
            count,
            singular,
            singular_clean,
        });
    }
    let rows = outs
        .iter()
        .map(|o| {
            let mut v = to_value(&o.count)?;
            if let Value::Object(m) = &mut v {
                m.insert("singular_clean".into(), Value::Bool(o.singular_clean));
            }
            Ok(v)
        })
        .collect::<Result<_>>()?;
    Emitted::new(ok, &outs, rows)
}

fn census_cmd(p: u64, conditions: &Option<Vec<String>>) -> Result<Emitted> {
    let mask: BTreeSet<CensusCondition> = match conditions {
        None => conjecture::default_mask(),
        Some(list) => list
            .iter()
            .filter(|s| !s.trim().is_empty())
            .map(|s| CensusCondition::parse(s.trim()))
            .collect::<Result<_>>()?,
    };
    let rep = mu_census(p, &mask)?;
    let mut row = to_value(&rep)?;
    if let Value::Object(m) = &mut row {
        let per: Vec<String> = rep.roots_per_zeta.iter().map(|(k, v)| format!("{k}:{v}")).collect();
        m.insert("roots_per_zeta".into(), Value::String(per.join(";")));
    }
    Emitted::new(true, &rep, vec![row])
}

#[derive(Debug, Serialize)]
struct K2UniqueRow {
    #[serde(flatten)]
    unique: conjecture::K2Unique,
    brute_force: Option<Vec<String>>,
    agrees: Option<bool>,
}

fn k2_unique_cmd(cfg: &RunConfig, p: u64, hs: &[String], samples: usize, check: bool) -> Result<Emitted> {
    let quad = QuadExtCtx::new(p, 2)?;
    let ext = quad.ext();
    let list: Vec<FieldElement<'_>> = if hs.is_empty() {
        let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
        (0..samples).map(|_| ext.random(&mut rng)).collect()
    } else {
        hs.iter().map(|h| parse_in(ext, h)).collect::<Result<_>>()?
    };
    let rows: Vec<K2UniqueRow> = list
        .par_iter()
        .map(|&h| {
            let unique = k2_uniqueness(&quad, h)?;
            let brute = if check { Some(k2_brute_u(&quad, h)?) } else { None };
            let agrees = brute.as_ref().map(|b| b.len() == 1 && b[0].to_string() == unique.u);
            Ok(K2UniqueRow {
                unique,
                brute_force: brute.map(|b| b.iter().map(|x| x.to_string()).collect()),
                agrees,
            })
        })
        .collect::<Result<_>>()?;
    let ok = rows.iter().all(|r| r.agrees.unwrap_or(true));
    let csv_rows = rows.iter().map(to_value).collect::<Result<_>>()?;
    Emitted::new(ok, &rows, csv_rows)
}

fn k2_witness_cmd(p: u64, alphas: &[String]) -> Result<Emitted> {
    let quad = QuadExtCtx::new(p, 2)?;
    let base = quad.base();
    let list: Vec<FieldElement<'_>> = if alphas.is_empty() {
        base.elements()
            .skip(1)
            .filter(|&a| !(a + 1).is_zero() && !(a + 2).is_zero())
            .collect()
    } else {
        alphas.iter().map(|a| parse_in(base, a)).collect::<Result<_>>()?
    };
    let rows: Vec<conjecture::K2Witness> = list
        .par_iter()
        .map(|&a| k2_nonperm_witness(&quad, a))
        .collect::<Result<_>>()?;
    let ok = rows.iter().all(|w| w.verified && w.exhaustive_agrees);
    let csv_rows = rows
        .iter()
        .map(|w| {
            let mut v = to_value(w)?;
            if let Value::Object(m) = &mut v {
                m.remove("h_search");
            }
            Ok(v)
        })
        .collect::<Result<_>>()?;
    Emitted::new(ok, &rows, csv_rows)
}

fn table_cmd(cfg: &RunConfig, p: u64, ks: &[usize]) -> Result<Emitted> {
    let rows = conjecture::conjecture_table(p, ks, &options(cfg))?;
    let ok = rows.iter().all(|r| r.matches_expected && r.witness_verified);
    let csv_rows = rows.iter().map(to_value).collect::<Result<_>>()?;
    let mut e = Emitted::new(ok, &rows, csv_rows)?;
    e.csv = Some(table_csv(&rows));
    Ok(e)
}

/// Runs the selected subcommand on the current rayon pool.
pub fn dispatch(cfg: &RunConfig) -> Result<Emitted> {
    match &cfg.command {
        Command::PpCheck {
            field,
            alpha,
            beta,
            certify,
        } => pp_check(cfg, field, alpha, beta, *certify),
        Command::MuCheck { field, alpha } => mu_check(cfg, field, alpha),
        Command::Lintri { p, l, n, a, b, no_check } => lintri_cmd(*p, *l, *n, a, b, !no_check),
        Command::Charsum { field, mu } => charsum_cmd(cfg, field, mu),
        Command::CurveCount { field, alpha, degrees } => curve_cmd(field, alpha, degrees),
        Command::Census { p, conditions } => census_cmd(*p, conditions),
        Command::K2Unique {
            p,
            h,
            samples,
            no_check,
        } => k2_unique_cmd(cfg, *p, h, *samples, !no_check),
        Command::K2Witness { p, alpha } => k2_witness_cmd(*p, alpha),
        Command::ConjectureTable { p, k } => table_cmd(cfg, *p, k),
    }
}

/// Parses `args`, runs the command on a pool of `--workers` threads and writes the report.
/// Returns the process exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cfg = match RunConfig::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
        }
    };
    let pool = match rayon::ThreadPoolBuilder::new().num_threads(cfg.workers).build() {
        Ok(p) => p,
        Err(e) => {
            eprintln!("error: {e}");
            return EXIT_USAGE;
        }
    };
    let emitted = match pool.install(|| dispatch(&cfg)) {
        Ok(e) => e,
        Err(e) => {
            eprintln!("error: {e}");
            return if is_usage(&e) { EXIT_USAGE } else { EXIT_VIOLATION };
        }
    };
    let body = emitted.render(cfg.format);
    let written = match &cfg.output {
        Some(path) => std::fs::write(path, body),
        None => std::io::stdout().lock().write_all(body.as_bytes()),
    };
    if let Err(e) = written {
        eprintln!("error: {e}");
        return EXIT_VIOLATION;
    }
    emitted.exit_code
}
