use std::fmt;
use std::str::FromStr;
use std::sync::OnceLock;

use rayon::prelude::*;
use serde::Serialize;
use serde_json::{json, Value};

use flk_core::cohomlite::{in_ell_lattice, minimal_resolution, DEFAULT_RESOLUTION_BUDGET};
use flk_core::error::{Error, Result};
use flk_core::genericuq::Side;
use flk_core::inject::{
    higman_projective, highest_root_test, projective_split_test, restrict_to, verify_borel_criterion,
    verify_reduction_borel, verify_root_criterion, AgreementRecord, HopfKind, RegularRep,
};
use flk_core::kernelalg::{KernelAlgebra, Kind, RankOneKernel};
use flk_core::qmodules::{realize, ModuleSpec, verma_character_test, zdual_check, ModContext, WeightedModule};
use flk_core::rootdata::{format_root, RootType};
use flk_core::scalars::Field;

use crate::config::RunConfig;
use crate::manifest::{Case, CorpusManifest};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Skipped,
    Error,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Suite {
    RootCrit,
    Borel,
    Reduction,
    Highest,
    Filtration,
    Zdual,
    Betti,
}

impl Suite {
    pub const ALL: [Suite; 7] =
        [Suite::RootCrit, Suite::Borel, Suite::Reduction, Suite::Highest, Suite::Filtration, Suite::Zdual, Suite::Betti];

    pub fn per_module(&self) -> bool {
        !matches!(self, Suite::Zdual | Suite::Betti)
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Suite::RootCrit => "rootcrit",
            Suite::Borel => "borel",
            Suite::Reduction => "reduction",
            Suite::Highest => "highest",
            Suite::Filtration => "filtration",
            Suite::Zdual => "zdual",
            Suite::Betti => "betti",
        })
    }
}

/// Parses `all` or a comma-separated list of suite names.
pub fn parse_suites(s: &str) -> Result<Vec<Suite>> {
    if s == "all" {
        return Ok(Suite::ALL.to_vec());
    }
    let mut out: Vec<Suite> = s.split(',').map(|t| t.trim().parse()).collect::<Result<_>>()?;
    out.sort();
    out.dedup();
    Ok(out)
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Suite::ALL
            .into_iter()
            .find(|x| x.to_string() == s)
            .ok_or_else(|| Error::Config(format!("unknown suite `{s}`")))
    }
}

/// One line of a verification report.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CaseLine {
    pub case: String,
    pub check: String,
    pub spec: String,
    pub status: Status,
    #[serde(skip_serializing_if = "Value::is_null")]
    pub record: Value,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
}

impl CaseLine {
    fn new(case: &str, check: &str, spec: &str, status: Status) -> Self {
        CaseLine { case: case.into(), check: check.into(), spec: spec.into(), status, record: Value::Null, notes: Vec::new() }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("report lines serialize")
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Report {
    pub header: String,
    pub lines: Vec<CaseLine>,
}

impl Report {
    pub fn count(&self, s: Status) -> usize {
        self.lines.iter().filter(|l| l.status == s).count()
    }

    pub fn ok(&self) -> bool {
        self.count(Status::Fail) == 0 && self.count(Status::Error) == 0
    }

    /// Line-delimited records, preceded by a header record.
    pub fn to_jsonl(&self) -> String {
        let mut s = serde_json::to_string(&json!({ "report": self.header })).expect("header serializes");
        s.push('\n');
        for l in &self.lines {
            s.push_str(&l.to_json());
            s.push('\n');
        }
        s
    }

    pub fn summary(&self) -> String {
        let mut s = format!(
            "{}: {} checks, {} pass, {} fail, {} skipped, {} error\n",
            self.header,
            self.lines.len(),
            self.count(Status::Pass),
            self.count(Status::Fail),
            self.count(Status::Skipped),
            self.count(Status::Error)
        );
        for l in self.lines.iter().filter(|l| matches!(l.status, Status::Fail | Status::Error)) {
            s.push_str(&format!("  {:?} {} {} {}\n", l.status, l.case, l.check, l.spec));
        }
        s
    }
}

/// Runs manifest cases and whole-algebra checks for one configuration.
pub struct Verifier<'a, F: Field> {
    pub cfg: &'a RunConfig,
    pub ctx: &'a ModContext<F>,
    g_rep: OnceLock<Option<RegularRep<F::Elem>>>,
}

fn kernel_dim_estimate<F: Field>(ctx: &ModContext<F>) -> usize {
    let b = ctx.bound as usize;
    if ctx.r >= 1 {
        b * b * b
    } else {
        b.pow(2 * ctx.n() as u32) * b.pow(ctx.rank() as u32)
    }
}

fn expectation(line: &mut CaseLine, expect: &std::collections::BTreeMap<String, bool>, key: &str, got: bool) {
    if let Some(&want) = expect.get(key) {
        if want != got {
            line.status = Status::Fail;
            line.notes.push(format!("expected {key}={want}, oracle says {got}"));
        }
    }
}

fn status_of(ok: bool) -> Status {
    if ok {
        Status::Pass
    } else {
        Status::Fail
    }
}

fn error_line(case: &str, check: &str, spec: &str, e: &Error) -> CaseLine {
    let status = if matches!(e, Error::Budget(_)) { Status::Skipped } else { Status::Error };
    let mut l = CaseLine::new(case, check, spec, status);
    l.notes.push(e.to_string());
    l
}

/// Whether a spec is built from restricted simples by sums, tensors and
/// duals, hence is the restriction of a module over the whole quantum group.
pub fn lifts_to_quantum_group(spec: &ModuleSpec, bound: i64) -> bool {
    use ModuleSpec::*;
    match spec {
        Trivial => true,
        Simple(w) => w.iter().all(|&x| (0..bound).contains(&x)),
        Dual(s) => lifts_to_quantum_group(s, bound),
        Tensor(a, b) | Sum(a, b) => lifts_to_quantum_group(a, bound) && lifts_to_quantum_group(b, bound),
        _ => false,
    }
}

fn binomial(n: u64, k: u64) -> u64 {
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

impl<'a, F: Field> Verifier<'a, F> {
    pub fn new(cfg: &'a RunConfig, ctx: &'a ModContext<F>) -> Self {
        Verifier { cfg, ctx, g_rep: OnceLock::new() }
    }

    /// The regular representation of the full kernel, built only when the
    /// literal split test fits the budget for some module.
    fn g_rep(&self) -> Option<&RegularRep<F::Elem>> {
        self.g_rep
            .get_or_init(|| {
                let ctx = self.ctx;
                if ctx.r >= 1 {
                    RankOneKernel::build(Kind::G, ctx.r, ctx.field().clone()).ok().map(|a| RegularRep::from_rank_one(&a))
                } else {
                    let a = KernelAlgebra::build(Kind::G, 0, ctx.z.clone()).ok()?;
                    RegularRep::from_kernel(&a).ok()
                }
            })
            .as_ref()
    }

    fn split_cross_check(&self, m: &WeightedModule<F>, rec: &mut AgreementRecord) {
        let dim_a = kernel_dim_estimate(self.ctx);
        if dim_a.saturating_mul(dim_a) > self.cfg.budget || dim_a.saturating_mul(m.dim) > self.cfg.budget {
            rec.notes.push("literal split test over the budget; trace criterion only".into());
            return;
        }
        let Some(alg) = self.g_rep() else {
            rec.notes.push("literal split test unavailable".into());
            return;
        };
        match projective_split_test(self.ctx, alg, m, self.cfg.budget) {
            Ok(v) => {
                let key = if self.ctx.r > 0 { format!("split:r{}", self.ctx.r) } else { "split".to_string() };
                let g = rec.oracle.get(&self.hopf_key(HopfKind::G)).copied();
                rec.oracle.insert(key, v);
                if g != Some(v) {
                    rec.agree = false;
                    rec.notes.push("literal split test and trace criterion differ".into());
                }
            }
            Err(e) => rec.notes.push(format!("literal split test: {e}")),
        }
    }

    fn agreement_line(&self, case: &Case, rec: AgreementRecord, expect_key: Option<(&str, String)>) -> CaseLine {
        let mut l = CaseLine::new(&case.id, &rec.check, &rec.spec, status_of(rec.agree));
        if let Some((key, oracle)) = expect_key {
            expectation(&mut l, &case.expect, key, rec.oracle[&oracle]);
        }
        l.notes = rec.notes.clone();
        l.record = serde_json::to_value(&rec).expect("records serialize");
        l
    }

    fn hopf_key(&self, kind: HopfKind) -> String {
        if self.ctx.r > 0 {
            format!("{kind}:r{}", self.ctx.r)
        } else {
            kind.to_string()
        }
    }

    fn module_checks(&self, case: &Case, m: &WeightedModule<F>, suite: Suite) -> Result<Vec<CaseLine>> {
        let ctx = self.ctx;
        let mut out = Vec::new();
        match suite {
            Suite::RootCrit if m.flags.full_u => {
                let mut rec = verify_root_criterion(ctx, m)?;
                self.split_cross_check(m, &mut rec);
                out.push(self.agreement_line(case, rec, Some(("injective", self.hopf_key(HopfKind::G)))));
            }
            Suite::Borel => {
                for (side, kind, key) in [(Side::F, HopfKind::BMinus, "injective-b-"), (Side::E, HopfKind::BPlus, "injective-b+")] {
                    if restrict_to(m, kind).is_ok() {
                        let rec = verify_borel_criterion(ctx, m, side)?;
                        out.push(self.agreement_line(case, rec, Some((key, self.hopf_key(kind)))));
                    }
                }
            }
            Suite::Reduction if m.flags.full_u => {
                let rec = verify_reduction_borel(ctx, m)?;
                out.push(self.agreement_line(case, rec, Some(("injective", self.hopf_key(HopfKind::G)))));
            }
            Suite::Highest if m.flags.full_u && lifts_to_quantum_group(&case.spec, ctx.bound as i64) => {
                let rec = highest_root_test(ctx, m)?;
                let mut l = CaseLine::new(&case.id, "highest-root", &rec.spec, status_of(rec.pass));
                expectation(&mut l, &case.expect, "injective", rec.injective);
                l.record = serde_json::to_value(&rec).expect("records serialize");
                out.push(l);
            }
            Suite::Filtration if restrict_to(m, HopfKind::BPlus).is_ok() => {
                let inj = higman_projective(ctx, m, HopfKind::BPlus)?;
                let test = verma_character_test(ctx, m);
                let ok = !(inj && test == Some(false));
                let mut l = CaseLine::new(&case.id, "verma-filtration", &m.provenance, status_of(ok));
                if test.is_none() {
                    l.notes.push("not X-graded: the character test does not apply".into());
                }
                l.record = json!({ "injective_b+": inj, "character_test": test });
                out.push(l);
            }
            _ => {}
        }
        Ok(out)
    }

    fn run_case(&self, case: &Case, suites: &[Suite]) -> Vec<CaseLine> {
        let spec = case.spec.to_string();
        let per_module: Vec<Suite> = suites.iter().copied().filter(Suite::per_module).collect();
        if per_module.is_empty() {
            return Vec::new();
        }
        let all_lines = |status: Status, note: String| -> Vec<CaseLine> {
            per_module
                .iter()
                .map(|s| {
                    let mut l = CaseLine::new(&case.id, &s.to_string(), &spec, status);
                    l.notes.push(note.clone());
                    l
                })
                .collect()
        };
        let m = match realize(self.ctx, &case.spec) {
            Ok(m) => m,
            Err(e @ Error::Budget(_)) => return all_lines(Status::Skipped, e.to_string()),
            Err(e) => return all_lines(Status::Error, e.to_string()),
        };
        if m.dim.saturating_mul(m.dim) > self.cfg.budget {
            return all_lines(Status::Skipped, format!("dim End(M) = {} exceeds the budget {}", m.dim * m.dim, self.cfg.budget));
        }
        let mut out = Vec::new();
        for s in per_module {
            match self.module_checks(case, &m, s) {
                Ok(lines) => out.extend(lines),
                Err(e) => out.push(error_line(&case.id, &s.to_string(), &spec, &e)),
            }
        }
        out
    }

    /// Dual Verma identifications over restricted weights: the hat is
    /// preserved, and swapped exactly on the Steinberg class.
    fn zdual_lines(&self) -> Vec<CaseLine> {
        let ctx = self.ctx;
        let b = ctx.bound as i64;
        let lambdas: Vec<Vec<i64>> = if ctx.r >= 1 {
            vec![vec![0], vec![ctx.ell() as i64 + 1], vec![b - 1]]
        } else {
            let cap = b.min(3);
            let mut v: Vec<Vec<i64>> = vec![vec![]];
            for _ in 0..ctx.rank() {
                v = v.into_iter().flat_map(|w| (0..cap).map(move |x| [w.clone(), vec![x]].concat())).collect();
            }
            v.push(vec![b - 1; ctx.rank()]);
            v.sort();
            v.dedup();
            v
        };
        lambdas
            .par_iter()
            .map(|lam| {
                let id = format!("zdual:{}", flk_core::qmodules::fmt_weight(lam));
                match zdual_check(ctx, lam) {
                    Ok(rep) => {
                        let steinberg = lam.iter().all(|x| (x - (b - 1)).rem_euclid(b) == 0);
                        let ok = rep.hat_preserved() && rep.hat_swapped() == steinberg;
                        let mut l = CaseLine::new(&id, "zdual", &id, status_of(ok));
                        l.record = serde_json::to_value(&rep).expect("records serialize");
                        l.notes.push(format!(
                            "identification: {}",
                            if rep.hat_swapped() && rep.hat_preserved() { "both" } else if rep.hat_preserved() { "hat preserved" } else if rep.hat_swapped() { "hat swapped" } else { "none" }
                        ));
                        l
                    }
                    Err(e) => error_line(&id, "zdual", &id, &e),
                }
            })
            .collect()
    }

    fn betti_lines(&self) -> Vec<CaseLine> {
        let ctx = self.ctx;
        let d = ctx.datum();
        let n_max = match d.type_label {
            RootType::A1 => 6,
            RootType::A2 => 4,
            _ => 0,
        };
        [Kind::UPlus, Kind::UMinus]
            .par_iter()
            .map(|kind| {
                let id = format!("betti:{kind}");
                let mut l = CaseLine::new(&id, "betti", &id, Status::Skipped);
                if ctx.r > 0 || n_max == 0 {
                    l.notes.push("resolutions are run for A1 and A2 at r = 0 only".into());
                    return l;
                }
                let res = KernelAlgebra::build(kind.clone(), 0, ctx.z.clone())
                    .and_then(|alg| minimal_resolution(&alg, n_max, DEFAULT_RESOLUTION_BUDGET));
                let res = match res {
                    Ok(r) => r,
                    Err(e) => return error_line(&id, "betti", &id, &e),
                };
                let dims: Vec<usize> =
                    res.degrees.iter().map(|ws| ws.iter().filter(|w| in_ell_lattice(&ctx.z, w)).count()).collect();
                let n = ctx.n() as u64;
                let expected: Vec<usize> = (0..=n_max as u64)
                    .map(|k| if k % 2 == 1 { 0 } else { binomial(k / 2 + n - 1, n - 1) as usize })
                    .collect();
                let table: Vec<Value> = res
                    .degrees
                    .iter()
                    .enumerate()
                    .map(|(k, ws)| json!({ "degree": k, "betti": ws.len(), "weights": ws.iter().map(|w| format_root(w)).collect::<Vec<_>>(), "cohomology": dims[k] }))
                    .collect();
                l.record = json!({ "algebra": res.algebra, "cohomology": dims, "expected": expected, "table": table });
                if ctx.ell() <= d.coxeter_number {
                    l.notes.push("ell = h: relation weights can lie in ell X, so the polynomial count is not expected".into());
                } else {
                    l.status = status_of(dims == expected);
                }
                l
            })
            .collect()
    }

    pub fn run(&self, manifest: &CorpusManifest, suites: &[Suite]) -> Report {
        let mut lines: Vec<CaseLine> =
            manifest.cases.par_iter().flat_map_iter(|c| self.run_case(c, suites)).collect();
        if suites.contains(&Suite::Zdual) {
            lines.extend(self.zdual_lines());
        }
        if suites.contains(&Suite::Betti) {
            lines.extend(self.betti_lines());
        }
        lines.sort_by(|a, b| (&a.case, &a.check).cmp(&(&b.case, &b.check)));
        let names: Vec<String> = suites.iter().map(|s| s.to_string()).collect();
        Report { header: format!("{} manifest={} suites={}", self.cfg.describe(), manifest.name, names.join(",")), lines }
    }
}

/// Runs a verification on a pool of `cfg.jobs` threads.
pub fn verify<F: Field>(cfg: &RunConfig, ctx: &ModContext<F>, manifest: &CorpusManifest, suites: &[Suite]) -> Result<Report> {
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(cfg.jobs.max(1))
        .build()
        .map_err(|e| Error::Config(format!("thread pool: {e}")))?;
    let v = Verifier::new(cfg, ctx);
    Ok(pool.install(|| v.run(manifest, suites)))
}
