//! Named verification checks over one instance and the certificate that records them.

pub mod instance;

use std::collections::BTreeMap;
use std::time::{SystemTime, UNIX_EPOCH};

use serde::Serialize;
use serde_json::{json, Value};

use crate::analytic::lambda::{identity_tolerance, lambda_check_with, GrowthTable, LinearFormReport};
use crate::analytic::PrecisionContext;
use crate::error::{Error, Result};
use crate::exact::CycloField;
use crate::forms::{
    build_f, check_denominators, partial_fractions_product, partial_fractions_solve, FormFamily, Params,
    PartialFractionTable, PeriodicFunction, SMatrix,
};
use crate::pade::{
    basis_hash, build_m, build_p, check_order_at_infinity, check_order_at_unity, check_order_at_zero,
    check_transfer, has_zero_row, rank_over_cyclotomic, s_column_space, verify_product,
};

pub use instance::Instance;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Skipped,
}

#[derive(Clone, Debug, Serialize)]
pub struct Verdict {
    pub status: Status,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub reason: Option<String>,
    #[serde(skip_serializing_if = "BTreeMap::is_empty")]
    pub details: BTreeMap<String, Value>,
}

impl Verdict {
    pub fn from_bool(ok: bool) -> Self {
        Verdict {
            status: if ok { Status::Pass } else { Status::Fail },
            reason: None,
            details: BTreeMap::new(),
        }
    }

    pub fn fail(reason: impl Into<String>) -> Self {
        Verdict {
            status: Status::Fail,
            reason: Some(reason.into()),
            details: BTreeMap::new(),
        }
    }

    pub fn skipped(reason: impl Into<String>) -> Self {
        Verdict {
            status: Status::Skipped,
            reason: Some(reason.into()),
            details: BTreeMap::new(),
        }
    }

    pub fn with(mut self, key: &str, value: Value) -> Self {
        self.details.insert(key.to_string(), value);
        self
    }

    fn from_result(r: Result<Verdict>) -> Self {
        r.unwrap_or_else(|e| Verdict::fail(e.to_string()))
    }
}

#[derive(Clone, Copy, Debug)]
pub struct CheckOptions {
    /// Derivative levels built; `None` takes `min(d_0 - 1, 3(a+N))`.
    pub k_max: Option<usize>,
    pub precision: PrecisionContext,
    /// The central identity is checked for `k <= lambda_levels`.
    pub lambda_levels: usize,
}

impl Default for CheckOptions {
    fn default() -> Self {
        CheckOptions {
            k_max: None,
            precision: PrecisionContext::default(),
            lambda_levels: 3,
        }
    }
}

/// Everything a check may look at, built once per instance.
pub struct CheckInput {
    pub params: Params,
    pub f: PeriodicFunction,
    pub options: CheckOptions,
    pub table: PartialFractionTable,
    pub table_source: &'static str,
    pub family: FormFamily,
    pub s: std::result::Result<SMatrix, String>,
}

impl CheckInput {
    pub fn build(params: &Params, f: &PeriodicFunction, options: CheckOptions) -> Result<Self> {
        if !params.big_n.is_multiple_of(f.period()) {
            return Err(Error::InvalidParams(format!("T = {} divides N", f.period())));
        }
        let (table, table_source) = match partial_fractions_product(params) {
            Ok(t) => (t, "product"),
            Err(_) => (partial_fractions_solve(&build_f(params), params)?, "solve"),
        };
        let k_max = params.k_max(options.k_max);
        let family = FormFamily::build(params, &table, k_max)?;
        let s = family.compute_ski().map_err(|e| e.to_string());
        Ok(CheckInput {
            params: *params,
            f: f.clone(),
            options,
            table,
            table_source,
            family,
            s,
        })
    }

    fn s(&self) -> Result<&SMatrix> {
        self.s
            .as_ref()
            .map_err(|e| Error::Precondition(format!("no integer matrix: {e}")))
    }

    fn lambda_levels(&self) -> usize {
        let by_decay = (self.params.d0() - 2).max(0) as usize;
        self.options.lambda_levels.min(self.family.levels()).min(by_decay)
    }
}

pub trait Check: Send + Sync {
    fn name(&self) -> &'static str;
    fn run(&self, input: &CheckInput) -> Verdict;
}

struct Integrality;
struct Denominators;
struct CrossOracle;
struct Orders;
struct Transfer;
struct Product;
struct Rank;
struct ZeroRow;
struct Lambda;

impl Check for Integrality {
    fn name(&self) -> &'static str {
        "integrality"
    }

    fn run(&self, input: &CheckInput) -> Verdict {
        match &input.s {
            Ok(s) => Verdict::from_bool(true)
                .with("levels", json!(s.len()))
                .with("entries", json!(s.iter().map(Vec::len).sum::<usize>())),
            Err(e) => Verdict::fail(e.clone()),
        }
    }
}

impl Check for Denominators {
    fn name(&self) -> &'static str {
        "denominators"
    }

    fn run(&self, input: &CheckInput) -> Verdict {
        Verdict::from_bool(check_denominators(&input.table, &input.params))
    }
}

impl Check for CrossOracle {
    fn name(&self) -> &'static str {
        "cross_oracle"
    }

    fn run(&self, input: &CheckInput) -> Verdict {
        Verdict::from_result((|| {
            let product = match partial_fractions_product(&input.params) {
                Ok(t) => t,
                Err(e) => return Ok(Verdict::skipped(format!("product method does not apply: {e}"))),
            };
            let solved = partial_fractions_solve(&build_f(&input.params), &input.params)?;
            let tables_agree = product.entries == solved.entries;
            let transfer = check_transfer(&input.family, 3)?;
            Ok(Verdict::from_bool(tables_agree && transfer)
                .with("tables_agree", json!(tables_agree))
                .with("transfer", json!(transfer)))
        })())
    }
}

impl Check for Orders {
    fn name(&self) -> &'static str {
        "orders"
    }

    fn run(&self, input: &CheckInput) -> Verdict {
        Verdict::from_result((|| {
            let f = build_f(&input.params);
            let zero = check_order_at_zero(&f, &input.params)?;
            let infinity = check_order_at_infinity(&f, &input.params)?;
            let unity = check_order_at_unity(&input.table.polynomials(), input.params.d0());
            Ok(Verdict::from_bool(zero && infinity && unity)
                .with("zero", json!(zero))
                .with("infinity", json!(infinity))
                .with("unity", json!(unity)))
        })())
    }
}

impl Check for Transfer {
    fn name(&self) -> &'static str {
        "transfer"
    }

    fn run(&self, input: &CheckInput) -> Verdict {
        let k = input.family.levels().min(3);
        Verdict::from_result(check_transfer(&input.family, k).map(|ok| Verdict::from_bool(ok).with("levels", json!(k))))
    }
}

impl Check for Product {
    fn name(&self) -> &'static str {
        "product"
    }

    fn run(&self, input: &CheckInput) -> Verdict {
        Verdict::from_result((|| {
            let s = input.s()?;
            let params = &input.params;
            let field = CycloField::new(params.big_n);
            let m = build_m(params.a as usize, params.big_n as usize, params.p, &input.family.delta, &field);
            let p = build_p(&input.family, &field);
            Ok(Verdict::from_bool(verify_product(&m, &p, s)?))
        })())
    }
}

impl Check for Rank {
    fn name(&self) -> &'static str {
        "rank"
    }

    fn run(&self, input: &CheckInput) -> Verdict {
        Verdict::from_result((|| {
            let field = CycloField::new(input.params.big_n);
            let rank = rank_over_cyclotomic(&build_p(&input.family, &field))?;
            let target = input.params.q() - 1;
            let mut v = Verdict::from_bool(rank == target)
                .with("rank", json!(rank))
                .with("target", json!(target));
            if rank < target {
                v.reason = Some(format!("rank {rank} below target {target}"));
            }
            Ok(v)
        })())
    }
}

impl Check for ZeroRow {
    fn name(&self) -> &'static str {
        "zero_row"
    }

    fn run(&self, input: &CheckInput) -> Verdict {
        let params = &input.params;
        if params.p != 0 || !params.big_n.is_multiple_of(2) {
            return Verdict::skipped("needs p = 0 and even N");
        }
        Verdict::from_result(input.s().map(|s| {
            Verdict::from_bool(has_zero_row(s, params.a as usize, params.big_n as usize))
                .with("row", json!(params.a + 1 + params.big_n / 2))
        }))
    }
}

impl Lambda {
    fn reports(input: &CheckInput) -> Result<Vec<(LinearFormReport, bool)>> {
        let s = input.s()?;
        let ctx = input.options.precision;
        let strict = ctx.bits >= PrecisionContext::DEFAULT_BITS;
        (1..=input.lambda_levels())
            .map(|k| {
                let v = lambda_check_with(&input.family, s, &input.f, k, ctx)?;
                let ok = v.holds && (!strict || v.bound_below(&identity_tolerance()));
                Ok((v.report(), ok))
            })
            .collect()
    }
}

impl Check for Lambda {
    fn name(&self) -> &'static str {
        "lambda"
    }

    fn run(&self, input: &CheckInput) -> Verdict {
        if input.lambda_levels() == 0 {
            return Verdict::skipped("d_0 < 3: no level converges after differentiation");
        }
        Verdict::from_result(Self::reports(input).map(|rows| {
            let ok = rows.iter().all(|(_, ok)| *ok);
            let reports: Vec<&LinearFormReport> = rows.iter().map(|(r, _)| r).collect();
            Verdict::from_bool(ok).with("levels", json!(reports))
        }))
    }
}

/// Every check in a fixed order.
pub fn all_checks() -> Vec<Box<dyn Check>> {
    vec![
        Box::new(Integrality),
        Box::new(Denominators),
        Box::new(CrossOracle),
        Box::new(Orders),
        Box::new(Transfer),
        Box::new(Product),
        Box::new(Rank),
        Box::new(ZeroRow),
        Box::new(Lambda),
    ]
}

pub const DEFAULT_CHECKS: &[&str] = &["integrality", "orders", "product", "rank", "lambda"];

pub fn check_names() -> Vec<&'static str> {
    all_checks().iter().map(|c| c.name()).collect()
}

/// Checks selected by a comma-separated list, in registry order; `all` selects everything.
pub fn select_checks(csv: &str) -> Result<Vec<Box<dyn Check>>> {
    let wanted: Vec<&str> = csv.split(',').map(str::trim).filter(|s| !s.is_empty()).collect();
    if wanted.contains(&"all") {
        return Ok(all_checks());
    }
    let known = check_names();
    if let Some(bad) = wanted.iter().find(|w| !known.contains(w)) {
        return Err(Error::UnknownName {
            kind: "check",
            name: bad.to_string(),
        });
    }
    Ok(all_checks().into_iter().filter(|c| wanted.contains(&c.name())).collect())
}

pub fn default_checks() -> Vec<Box<dyn Check>> {
    select_checks(&DEFAULT_CHECKS.join(",")).expect("default checks are registered")
}

#[derive(Clone, Debug, Serialize)]
pub struct NamedVerdict {
    pub name: String,
    #[serde(flatten)]
    pub verdict: Verdict,
}

#[derive(Clone, Debug, Serialize)]
pub struct Certificate {
    pub tool_version: String,
    pub timestamp: String,
    pub instance: Instance,
    pub d0: i64,
    pub k_max: usize,
    pub precision_bits: u32,
    pub partial_fractions: String,
    pub checks: Vec<NamedVerdict>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub basis_hash: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub growth: Option<GrowthTable>,
    pub all_pass: bool,
}

impl Certificate {
    pub fn verdict(&self, name: &str) -> Option<&Verdict> {
        self.checks.iter().find(|c| c.name == name).map(|c| &c.verdict)
    }

    /// JSON with the timestamp blanked, for comparing runs.
    pub fn canonical_json(&self) -> String {
        let mut c = self.clone();
        c.timestamp.clear();
        serde_json::to_string(&c).expect("certificate serializes")
    }
}

fn timestamp() -> String {
    SystemTime::now()
        .duration_since(UNIX_EPOCH)
        .map(|d| d.as_secs().to_string())
        .unwrap_or_default()
}

pub fn run_checks_on(input: &CheckInput, checks: &[Box<dyn Check>]) -> Certificate {
    let verdicts: Vec<NamedVerdict> = checks
        .iter()
        .map(|c| NamedVerdict {
            name: c.name().to_string(),
            verdict: c.run(input),
        })
        .collect();
    let all_pass = verdicts.iter().all(|v| v.verdict.status != Status::Fail);
    let hash = input
        .s
        .as_ref()
        .ok()
        .and_then(|s| s_column_space(s).ok())
        .map(|b| basis_hash(&b));
    Certificate {
        tool_version: env!("CARGO_PKG_VERSION").to_string(),
        timestamp: timestamp(),
        instance: Instance::new(&input.params, &input.f),
        d0: input.params.d0(),
        k_max: input.family.levels(),
        precision_bits: input.options.precision.bits,
        partial_fractions: input.table_source.to_string(),
        checks: verdicts,
        basis_hash: hash,
        growth: None,
        all_pass,
    }
}

pub fn run_checks(
    params: &Params,
    f: &PeriodicFunction,
    checks: &[Box<dyn Check>],
    options: CheckOptions,
) -> Result<Certificate> {
    let input = CheckInput::build(params, f, options)?;
    Ok(run_checks_on(&input, checks))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn small() -> (Params, PeriodicFunction) {
        (Params::new(4, 1, 1, 2, 1, 1).unwrap(), PeriodicFunction::from_ints(&[1]).unwrap())
    }

    #[test]
    fn default_run_passes() {
        let (params, f) = small();
        let cert = run_checks(&params, &f, &default_checks(), CheckOptions::default()).unwrap();
        assert!(cert.all_pass, "{}", serde_json::to_string_pretty(&cert).unwrap());
        let names: Vec<&str> = cert.checks.iter().map(|c| c.name.as_str()).collect();
        assert_eq!(names, DEFAULT_CHECKS);
    }

    #[test]
    fn every_check_passes_or_skips_with_reason() {
        let params = Params::new(7, 1, 2, 4, 0, 2).unwrap();
        let f = PeriodicFunction::from_ints(&[1, 0]).unwrap();
        let cert = run_checks(&params, &f, &all_checks(), CheckOptions::default()).unwrap();
        for c in &cert.checks {
            assert_ne!(c.verdict.status, Status::Fail, "{}: {:?}", c.name, c.verdict.reason);
            if c.verdict.status == Status::Skipped {
                assert!(c.verdict.reason.is_some());
            }
        }
        assert_eq!(cert.verdict("zero_row").unwrap().status, Status::Pass);
    }

    #[test]
    fn rank_below_target_for_small_n() {
        let params = Params::new(7, 1, 2, 2, 0, 2).unwrap();
        let f = PeriodicFunction::from_ints(&[1, 0]).unwrap();
        let cert = run_checks(&params, &f, &select_checks("rank").unwrap(), CheckOptions::default()).unwrap();
        let v = cert.verdict("rank").unwrap();
        assert_eq!(v.status, Status::Fail);
        assert_eq!(v.details["rank"], json!(8));
        assert!(!cert.all_pass);
    }

    #[test]
    fn unknown_check_name() {
        let err = select_checks("rank,bogus").err().unwrap();
        assert_eq!(err.to_string(), "unknown check `bogus`");
        assert_eq!(select_checks("all").unwrap().len(), all_checks().len());
    }

    #[test]
    fn certificates_are_deterministic() {
        let (params, f) = small();
        let checks = select_checks("integrality,rank").unwrap();
        let a = run_checks(&params, &f, &checks, CheckOptions::default()).unwrap();
        let b = run_checks(&params, &f, &checks, CheckOptions::default()).unwrap();
        assert_eq!(a.canonical_json(), b.canonical_json());
    }

    #[test]
    fn skipped_zero_row_for_odd_parity() {
        let (params, f) = small();
        let cert = run_checks(&params, &f, &select_checks("zero_row").unwrap(), CheckOptions::default()).unwrap();
        let v = cert.verdict("zero_row").unwrap();
        assert_eq!(v.status, Status::Skipped);
        assert!(cert.all_pass);
    }
}
