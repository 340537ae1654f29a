//! The twelve acceptance criteria, one PASS/FAIL line each.

use std::collections::BTreeMap;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::Command;
use std::time::Instant;

use flk_cli::config::{FieldSpec, RunConfig};
use flk_cli::manifest::CorpusManifest;
use flk_cli::report::{verify, Report, Status, Suite};
use flk_core::genericuq::words::poly_from_word;
use flk_core::genericuq::pbw::{monomials_of_weight, weights_of_height};
use flk_core::genericuq::{qpow, GenericUq, Pbw, Side};
use flk_core::inject::{highest_root_test, support_skeleton};
use flk_core::kernelalg::{integral, socle_check, KernelAlgebra, Kind};
use flk_core::qmodules::{realize, ModContext};
use flk_core::rootdata::{check_sign_pattern, order_functional, ConvexOrder, RootDatum, RootType};
use flk_core::scalars::PrimeField;

type Outcome = Result<String, String>;

fn ensure(cond: bool, msg: impl Into<String>) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn cfg(t: RootType, ell: u32, p: u64, r: u32) -> RunConfig {
    let mut c = RunConfig::new(t, ell);
    c.field = FieldSpec::Prime(p);
    c.r = r;
    c.jobs = 4;
    c
}

fn run_suites(c: &RunConfig, suites: &[Suite]) -> Result<(Report, usize), String> {
    let manifest = CorpusManifest::default_for(c).map_err(|e| e.to_string())?;
    let field = PrimeField::new(c.field.characteristic(), c.ell).map_err(|e| e.to_string())?;
    let ctx = c.context(field).map_err(|e| e.to_string())?;
    let report = verify(c, &ctx, &manifest, suites).map_err(|e| e.to_string())?;
    Ok((report, manifest.cases.len()))
}

/// Every line passes; skipped lines count as failures here.
fn all_pass(r: &Report, what: &str) -> Result<usize, String> {
    let bad: Vec<String> = r
        .lines
        .iter()
        .filter(|l| l.status != Status::Pass)
        .map(|l| format!("{} {} {} {:?}", l.case, l.check, l.spec, l.status))
        .collect();
    ensure(bad.is_empty(), format!("{what}: {}", bad.join("; ")))?;
    Ok(r.lines.len())
}

fn kostant_dp(d: &RootDatum, nu: &[i64]) -> usize {
    let dims: Vec<usize> = nu.iter().map(|&x| x as usize + 1).collect();
    let idx = |v: &[usize]| v.iter().zip(&dims).fold(0, |a, (x, m)| a * m + x);
    let size: usize = dims.iter().product();
    let mut table = vec![0usize; size];
    table[0] = 1;
    for r in &d.positive_roots {
        let mut cur = vec![0usize; dims.len()];
        loop {
            let shifted: Option<Vec<usize>> =
                cur.iter().zip(r).map(|(&x, &c)| (x as i64 - c >= 0).then(|| (x as i64 - c) as usize)).collect();
            if let Some(s) = shifted {
                let add = table[idx(&s)];
                table[idx(&cur)] += add;
            }
            let mut k = dims.len();
            loop {
                if k == 0 {
                    break;
                }
                k -= 1;
                cur[k] += 1;
                if cur[k] < dims[k] {
                    break;
                }
                cur[k] = 0;
            }
            if cur.iter().all(|&x| x == 0) {
                break;
            }
        }
    }
    table[idx(&nu.iter().map(|&x| x as usize).collect::<Vec<_>>())]
}

fn c1_convexity() -> Outcome {
    let mut words = 0;
    for t in [RootType::A2, RootType::B2] {
        let d = RootDatum::new(t);
        for w in d.all_reduced_w0_words() {
            let o = ConvexOrder::new(&d, &w).map_err(|e| e.to_string())?;
            ensure(o.is_convex(), format!("{t:?} {w:?} not convex"))?;
            for m in 0..=o.len() {
                let f = order_functional(&d, &o, m).map_err(|e| e.to_string())?;
                ensure(check_sign_pattern(&d, &o, m, &f.vector), format!("{t:?} {w:?} m={m}"))?;
            }
            words += 1;
        }
    }
    Ok(format!("{words} reduced words"))
}

fn c2_pbw() -> Outcome {
    let mut spaces = 0;
    for t in [RootType::A2, RootType::B2] {
        let d = RootDatum::new(t);
        let p = Pbw::new(GenericUq::with_height_bound(d.clone(), 6), &d.default_w0_word()).map_err(|e| e.to_string())?;
        for h in 1..=6 {
            for nu in weights_of_height(d.rank, h) {
                let words = p.uq.quotient.weight_basis(&nu).map_err(|e| e.to_string())?;
                let monos = monomials_of_weight(p.gammas(), &nu);
                let k = kostant_dp(&d, &nu);
                ensure(words.len() == k && monos.len() == k, format!("{t:?} {nu:?}: {} {} {k}", words.len(), monos.len()))?;
                // The monomials span (every normal word expands) and there are
                // dim of them, so they form a basis.
                for w in words {
                    p.expand(Side::E, &poly_from_word(w)).map_err(|e| format!("{t:?} {nu:?}: {e}"))?;
                }
                spaces += 1;
            }
        }
    }
    Ok(format!("{spaces} weight spaces"))
}

fn c3_commutation() -> Outcome {
    let mut entries = 0;
    let mut b2_denominator = false;
    for t in [RootType::A2, RootType::B2] {
        let d = RootDatum::new(t);
        for w in d.all_reduced_w0_words() {
            let p = Pbw::new(GenericUq::new(d.clone()), &w).map_err(|e| e.to_string())?;
            let table = p.structure_table().map_err(|e| e.to_string())?;
            let g = p.gammas();
            for e in table.e_entries.iter().chain(&table.f_entries) {
                ensure(e.leading.to_ratfunc() == qpow(d.inner(&g[e.i], &g[e.j])), format!("{t:?} {w:?} leading"))?;
                for (a, c) in &e.tail {
                    ensure(a.iter().enumerate().all(|(s, &x)| x == 0 || (e.i < s && s < e.j)), "tail support")?;
                    ensure(c.in_ring(d.denominator_set()), "coefficient outside the ring")?;
                    b2_denominator |= t == RootType::B2 && c.exponents()[0] >= 1;
                }
                entries += 1;
            }
        }
    }
    ensure(b2_denominator, "no B2 coefficient needs q^2-q^-2")?;
    Ok(format!("{entries} entries, B2 denominator present"))
}

fn c4_integrals() -> Outcome {
    let ctx = ModContext::new(RootType::A2, None, PrimeField::new(7, 3).unwrap(), 0).map_err(|e| e.to_string())?;
    for m in 1..=3 {
        let alg = KernelAlgebra::build(Kind::Am(m), 0, ctx.z.clone()).map_err(|e| e.to_string())?;
        let rep = socle_check(&alg).map_err(|e| e.to_string())?;
        ensure(rep.left_dim == 1 && rep.spanned_by_integral, format!("m={m}: {rep:?}"))?;
        let int = integral(&alg).map_err(|e| e.to_string())?;
        ensure(int.m == m, format!("m={m}: integral covers {} roots", int.m))?;
    }
    Ok("A_1, A_2, A_3 invariants spanned by the integral".into())
}

fn c5_root_criterion() -> Outcome {
    let mut parts = Vec::new();
    let (mut a1, mut a2) = (0, 0);
    for (t, ell, p) in [(RootType::A1, 3, 7), (RootType::A1, 5, 11), (RootType::A2, 3, 7)] {
        let (rep, n) = run_suites(&cfg(t, ell, p, 0), &[Suite::RootCrit])?;
        let checks = all_pass(&rep, &format!("{t:?} ell={ell}"))?;
        ensure(checks == n, format!("{t:?} ell={ell}: {checks} records for {n} modules"))?;
        if t == RootType::A1 {
            a1 += n;
        } else {
            a2 += n;
        }
        parts.push(format!("{t:?}/{ell}: {n}"));
    }
    ensure(a1 >= 30 && a2 >= 15, format!("corpus too small: {a1} A1, {a2} A2"))?;
    Ok(parts.join(", "))
}

fn c6_borel() -> Outcome {
    let mut total = 0;
    for (t, ell, p) in [(RootType::A1, 3, 7), (RootType::A1, 5, 11), (RootType::A2, 3, 7)] {
        let (rep, _) = run_suites(&cfg(t, ell, p, 0), &[Suite::Borel, Suite::Reduction])?;
        total += all_pass(&rep, &format!("{t:?} ell={ell}"))?;
    }
    Ok(format!("{total} Borel and reduction records"))
}

fn c7_higher() -> Outcome {
    let (rep, n) = run_suites(&cfg(RootType::A1, 3, 7, 1), &[Suite::RootCrit, Suite::Borel])?;
    let checks = all_pass(&rep, "r=1")?;
    ensure(n >= 10, format!("only {n} modules"))?;
    let root_lines = rep.lines.iter().filter(|l| l.check == "root-criterion").count();
    ensure(root_lines == n, format!("{root_lines} root records for {n} modules"))?;
    Ok(format!("{n} modules, {checks} records"))
}

fn c8_highest_root() -> Outcome {
    let ctx = ModContext::new(RootType::A2, None, PrimeField::new(7, 3).unwrap(), 0).map_err(|e| e.to_string())?;
    let mut injective = Vec::new();
    for a in 0..3 {
        for b in 0..3 {
            let m = realize(&ctx, &format!("simple([{a},{b}])").parse().unwrap()).map_err(|e| e.to_string())?;
            let rec = highest_root_test(&ctx, &m).map_err(|e| e.to_string())?;
            ensure(rec.pass, format!("{}: {rec:?}", rec.spec))?;
            let skel = support_skeleton(&ctx, &m, Side::F).map_err(|e| e.to_string())?;
            ensure(skel.is_empty() || rec.highest_in_skeleton, format!("{}: skeleton misses the highest root", rec.spec))?;
            if rec.injective {
                injective.push(rec.spec);
            }
        }
    }
    ensure(injective == ["simple([2,2])"], format!("injective simples: {injective:?}"))?;
    Ok("nine simples, only the Steinberg module is injective".into())
}

fn c9_zdual() -> Outcome {
    let mut n = 0;
    let mut identifications = BTreeMap::new();
    for (t, p) in [(RootType::A1, 7), (RootType::A2, 7)] {
        let c = cfg(t, 3, p, 0);
        let field = PrimeField::new(p, 3).unwrap();
        let ctx = c.context(field).map_err(|e| e.to_string())?;
        let empty = CorpusManifest { name: "none".into(), cases: Vec::new() };
        let rep = verify(&c, &ctx, &empty, &[Suite::Zdual]).map_err(|e| e.to_string())?;
        n += all_pass(&rep, &format!("{t:?}"))?;
        for l in &rep.lines {
            *identifications.entry(l.notes.join(";")).or_insert(0) += 1;
            let rec = &l.record;
            ensure(
                rec["dual_verma_vs_verma"]["character_match"] == true,
                format!("{}: characters differ", l.case),
            )?;
        }
    }
    ensure(identifications.keys().all(|k| k.contains("hat preserved") || k.contains("both")), format!("{identifications:?}"))?;
    Ok(format!("{n} weights; identification {identifications:?}"))
}

fn c10_betti() -> Outcome {
    let mut out = Vec::new();
    for (t, ell, p) in [(RootType::A1, 3, 7), (RootType::A2, 5, 11)] {
        let c = cfg(t, ell, p, 0);
        let field = PrimeField::new(p, ell).unwrap();
        let ctx = c.context(field).map_err(|e| e.to_string())?;
        let empty = CorpusManifest { name: "none".into(), cases: Vec::new() };
        let rep = verify(&c, &ctx, &empty, &[Suite::Betti]).map_err(|e| e.to_string())?;
        all_pass(&rep, &format!("{t:?} ell={ell}"))?;
        let plus = rep.lines.iter().find(|l| l.case == "betti:u+").ok_or("missing u+ record")?;
        out.push(format!("{t:?}/{ell} {}", plus.record["cohomology"]));
    }
    Ok(out.join(", "))
}

fn c11_filtration() -> Outcome {
    let (mut injective, mut failing, mut total) = (0, 0, 0);
    for (t, ell, p) in [(RootType::A1, 3, 7), (RootType::A1, 5, 11), (RootType::A2, 3, 7)] {
        let (rep, _) = run_suites(&cfg(t, ell, p, 0), &[Suite::Filtration])?;
        total += all_pass(&rep, &format!("{t:?} ell={ell}"))?;
        for l in &rep.lines {
            injective += (l.record["injective_b+"] == true) as usize;
            failing += (l.record["character_test"] == false) as usize;
        }
    }
    ensure(injective > 0 && failing > 0, format!("vacuous: {injective} injective, {failing} failing the test"))?;
    Ok(format!("{total} modules, {injective} Borel-injective, {failing} fail the character test"))
}

fn c12_determinism() -> Outcome {
    let dir = std::env::temp_dir().join(format!("flk-acceptance-{}", std::process::id()));
    std::fs::create_dir_all(&dir).map_err(|e| e.to_string())?;
    let mut sizes = Vec::new();
    for (args, name) in [
        (vec!["--type", "A1", "--ell", "3", "--p", "7"], "a1"),
        (vec!["--type", "A2", "--ell", "3", "--p", "7"], "a2"),
        (vec!["--type", "A1", "--ell", "3", "--p", "7", "--r", "1"], "r1"),
    ] {
        let mut outs = Vec::new();
        for (k, jobs) in ["1", "4"].iter().enumerate() {
            let path = dir.join(format!("{name}-{k}.jsonl"));
            let status = Command::new(env!("CARGO_BIN_EXE_flk"))
                .args(&args)
                .args(["--jobs", jobs, "verify", "--out", path.to_str().unwrap()])
                .output()
                .map_err(|e| e.to_string())?;
            ensure(status.status.success(), format!("{name}: verify exited with {:?}", status.status.code()))?;
            outs.push(std::fs::read(&path).map_err(|e| e.to_string())?);
        }
        ensure(outs[0] == outs[1], format!("{name}: reports differ"))?;
        sizes.push(format!("{name} {} bytes", outs[0].len()));
    }
    std::fs::remove_dir_all(&dir).ok();
    Ok(sizes.join(", "))
}

fn main() {
    let criteria: [(&str, fn() -> Outcome); 12] = [
        ("convexity and order functionals", c1_convexity),
        ("PBW bases", c2_pbw),
        ("commutation relations", c3_commutation),
        ("integrals of A_m", c4_integrals),
        ("root subalgebra criterion", c5_root_criterion),
        ("Borel criterion and reduction", c6_borel),
        ("higher kernel r = 1", c7_higher),
        ("highest root", c8_highest_root),
        ("dual baby Vermas", c9_zdual),
        ("Borel cohomology", c10_betti),
        ("Verma filtration characters", c11_filtration),
        ("determinism", c12_determinism),
    ];
    let mut failed = 0;
    for (k, (name, f)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let res = catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|e| {
            Err(e.downcast_ref::<String>().cloned().or_else(|| e.downcast_ref::<&str>().map(|s| s.to_string())).unwrap_or_default())
        });
        let secs = start.elapsed().as_secs_f64();
        match res {
            Ok(detail) => println!("PASS {:>2} {name} ({secs:.1}s): {detail}", k + 1),
            Err(why) => {
                failed += 1;
                println!("FAIL {:>2} {name} ({secs:.1}s): {why}", k + 1);
            }
        }
    }
    println!("acceptance: {} of {} criteria pass", criteria.len() - failed, criteria.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
