use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};

use flk_core::cohomlite::{in_ell_lattice, minimal_resolution, DEFAULT_RESOLUTION_BUDGET};
use flk_core::error::{Error, Result};
use flk_core::genericuq::{parse_header, Exps, Side, StructureTable};
use flk_core::inject::{free_over_local, higman_projective, projective_split_test, support_skeleton, HopfKind, RegularRep};
use flk_core::kernelalg::{specialize_table, KernelAlgebra, Kind, RankOneKernel};
use flk_core::qmodules::{realize, ModContext, ModuleSpec};
use flk_core::rootdata::{format_root, format_word, RootType};
use flk_core::scalars::Field;

use crate::config::{FieldSpec, RunConfig};
use crate::manifest::CorpusManifest;
use crate::report::{parse_suites, verify};
use crate::with_field;

#[derive(Parser, Debug)]
#[command(name = "flk", version, about = "Small quantum groups at roots of unity and injectivity checks")]
pub struct Cli {
    #[command(flatten)]
    pub common: Common,
    #[command(subcommand)]
    pub cmd: Command,
}

#[derive(Args, Debug, Clone)]
pub struct Common {
    /// Root system type: A1, A2, B2, G2 or A3.
    #[arg(long = "type", global = true, default_value = "A1")]
    pub root_type: String,
    /// Order of the root of unity.
    #[arg(long, global = true, default_value_t = 3)]
    pub ell: u32,
    /// Characteristic of the coefficient field.
    #[arg(long, global = true)]
    pub p: Option<u64>,
    /// Level of the higher kernel.
    #[arg(long, global = true, default_value_t = 0)]
    pub r: u32,
    /// Reduced word for w0, comma separated, 1-based.
    #[arg(long, global = true)]
    pub w0: Option<String>,
    /// `cyclo`, `<p>` or `<p>^<n>`.
    #[arg(long, global = true)]
    pub field: Option<String>,
    /// Offset added to every seed in module specs.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, global = true, default_value_t = 1)]
    pub jobs: usize,
    /// Work cap per case (matrix entries).
    #[arg(long, global = true)]
    pub budget: Option<usize>,
    /// Enforce ell >= h and good p (the default).
    #[arg(long, global = true, conflicts_with = "permissive")]
    pub strict: bool,
    #[arg(long, global = true)]
    pub permissive: bool,
    /// Structure table cache to load.
    #[arg(long, global = true)]
    pub cache: Option<PathBuf>,
    #[arg(long, global = true)]
    pub manifest: Option<PathBuf>,
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
}

#[derive(Subcommand, Debug, Clone)]
pub enum Command {
    /// Print the root datum and the convex order of the w0 word.
    Roots,
    /// Compute the generic structure table and write it to the cache file.
    Build,
    /// Print the commutation relation of root vectors i < j.
    Relations {
        i: usize,
        j: usize,
        #[arg(long, default_value = "e")]
        side: String,
    },
    /// Build a module and print its matrix bundle.
    Module {
        spec: String,
        /// Also test projectivity over an algebra: g|b-|b+|u-|u+|Am:<m>|root:<k>:<side>.
        #[arg(long)]
        algebra: Option<String>,
    },
    /// Run verification suites over a manifest.
    Verify {
        /// rootcrit, borel, reduction, highest, filtration, zdual, betti or all.
        #[arg(long, default_value = "all")]
        suite: String,
    },
    /// Print the roots over whose root subalgebra a module is not free.
    Skeleton {
        spec: String,
        #[arg(long, default_value = "minus")]
        side: String,
    },
    /// Minimal resolution of the trivial module over u+ or u-.
    Betti {
        #[arg(long, default_value = "u+")]
        algebra: String,
        #[arg(long)]
        nmax: Option<usize>,
        #[arg(long)]
        json: bool,
    },
    /// Describe a structure table cache file.
    CacheInfo { path: Option<PathBuf> },
}

/// What a command prints, and the process exit code.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Outcome {
    pub stdout: String,
    pub stderr: String,
    pub code: i32,
}

impl Outcome {
    fn ok(stdout: String) -> Self {
        Outcome { stdout, stderr: String::new(), code: 0 }
    }
}

pub fn config_from(c: &Common) -> Result<RunConfig> {
    let t: RootType = c.root_type.parse()?;
    let mut cfg = RunConfig::new(t, c.ell);
    cfg.field = FieldSpec::parse(c.field.as_deref(), c.p, c.ell)?;
    cfg.r = c.r;
    if let Some(w) = &c.w0 {
        cfg.parse_w0(w)?;
    }
    cfg.seed = c.seed;
    cfg.jobs = c.jobs;
    if let Some(b) = c.budget {
        cfg.budget = b;
    }
    cfg.strict = !c.permissive;
    cfg.cache = c.cache.clone();
    Ok(cfg)
}

fn reseed(spec: &ModuleSpec, offset: u64) -> ModuleSpec {
    use ModuleSpec::*;
    let b = |s: &ModuleSpec| Box::new(reseed(s, offset));
    match spec {
        Dual(s) => Dual(b(s)),
        Tensor(x, y) => Tensor(b(x), b(y)),
        Sum(x, y) => Sum(b(x), b(y)),
        Twist(s, w) => Twist(b(s), w.clone()),
        RandSub(s, n) => RandSub(b(s), n.wrapping_add(offset)),
        Quot(s, n) => Quot(b(s), n.wrapping_add(offset)),
        MixSub(s, n) => MixSub(b(s), n.wrapping_add(offset)),
        other => other.clone(),
    }
}

fn parse_spec(cfg: &RunConfig, s: &str) -> Result<ModuleSpec> {
    Ok(reseed(&s.parse()?, cfg.seed))
}

fn write_out(path: &Path, text: &str) -> Result<()> {
    let io = |e: std::io::Error| Error::Config(format!("{}: {e}", path.display()));
    if let Some(dir) = path.parent().filter(|d| !d.as_os_str().is_empty()) {
        std::fs::create_dir_all(dir).map_err(io)?;
    }
    std::fs::write(path, text).map_err(io)
}

fn default_cache_path(cfg: &RunConfig) -> PathBuf {
    let w: String = cfg.word().iter().map(|i| (i + 1).to_string()).collect();
    PathBuf::from(format!("flk-cache/{}-w{w}.table", cfg.root_type.label()))
}

pub fn run(cli: &Cli) -> Result<Outcome> {
    let cfg = config_from(&cli.common)?;
    cfg.validate()?;
    let mut out = dispatch(cli, &cfg)?;
    if let Some(b) = cfg.banner() {
        out.stderr = format!("{b}\n{}", out.stderr);
    }
    Ok(out)
}

fn dispatch(cli: &Cli, cfg: &RunConfig) -> Result<Outcome> {
    let out_path = cli.common.out.as_deref();
    match &cli.cmd {
        Command::Roots => cmd_roots(cfg),
        Command::Build => cmd_build(cfg, out_path),
        Command::Relations { i, j, side } => cmd_relations(cfg, *i, *j, side),
        Command::CacheInfo { path } => {
            let p = path.as_deref().or(cfg.cache.as_deref()).ok_or_else(|| Error::Config("no cache file given".into()))?;
            with_field!(cfg, f => cmd_cache_info(p, f))
        }
        Command::Module { spec, algebra } => {
            with_field!(cfg, f => cmd_module(cfg, f, spec, algebra.as_deref(), out_path))
        }
        Command::Skeleton { spec, side } => with_field!(cfg, f => cmd_skeleton(cfg, f, spec, side)),
        Command::Betti { algebra, nmax, json } => {
            with_field!(cfg, f => cmd_betti(cfg, f, algebra, *nmax, *json, out_path))
        }
        Command::Verify { suite } => {
            let suites = parse_suites(suite)?;
            let mut manifest = match &cli.common.manifest {
                Some(p) => CorpusManifest::load(p)?,
                None if suites.iter().all(|s| !s.per_module()) => CorpusManifest { name: "none".into(), cases: Vec::new() },
                None => CorpusManifest::default_for(cfg)?,
            };
            for c in &mut manifest.cases {
                c.spec = reseed(&c.spec, cfg.seed);
            }
            with_field!(cfg, f => cmd_verify(cfg, f, &manifest, &suites, out_path))
        }
    }
}

fn cmd_roots(cfg: &RunConfig) -> Result<Outcome> {
    let d = cfg.datum();
    let pbw = cfg.pbw()?;
    let mut s = format!("{d}\n");
    s.push_str(&format!("convex order for w0 = {}\n", format_word(&cfg.word())));
    for (k, g) in pbw.order.gammas.iter().enumerate() {
        s.push_str(&format!("  gamma_{} = {}\n", k + 1, format_root(g)));
    }
    Ok(Outcome::ok(s))
}

fn cmd_build(cfg: &RunConfig, out: Option<&Path>) -> Result<Outcome> {
    let path = out.map(Path::to_path_buf).unwrap_or_else(|| default_cache_path(cfg));
    let pbw = cfg.pbw()?;
    let table = pbw.structure_table()?;
    table.write_cache(&path)?;
    let denominators = table
        .e_entries
        .iter()
        .chain(&table.f_entries)
        .flat_map(|e| std::iter::once(&e.leading).chain(e.tail.iter().map(|(_, c)| c)))
        .filter(|c| c.exponents() != [0, 0])
        .count();
    Ok(Outcome::ok(format!(
        "wrote {} ({} {} entries per side, {} coefficients with denominators)\n",
        path.display(),
        table.type_label.label(),
        table.e_entries.len(),
        denominators
    )))
}

fn fmt_monomial(side: Side, a: &Exps) -> String {
    let x = if side == Side::E { "E" } else { "F" };
    let parts: Vec<String> = a
        .iter()
        .enumerate()
        .filter(|(_, &e)| e > 0)
        .map(|(k, &e)| if e == 1 { format!("{x}_{}", k + 1) } else { format!("{x}_{}^{e}", k + 1) })
        .collect();
    if parts.is_empty() {
        "1".into()
    } else {
        parts.join(" ")
    }
}

fn cmd_relations(cfg: &RunConfig, i: usize, j: usize, side: &str) -> Result<Outcome> {
    let side = match side {
        "e" | "E" | "+" => Side::E,
        "f" | "F" | "-" => Side::F,
        _ => return Err(Error::Config(format!("unknown side `{side}`"))),
    };
    let pbw = cfg.pbw()?;
    let n = pbw.n();
    if i == j || i == 0 || j == 0 || i > n || j > n {
        return Err(Error::Config(format!("relations need 1 <= i < j <= {n}, got ({i},{j})")));
    }
    if i > j {
        return Err(Error::Config(format!("relations are stored for i < j; use ({j},{i})")));
    }
    let table = cfg.structure_table(&pbw)?;
    let e = table.entry(side, i - 1, j - 1).ok_or_else(|| Error::Internal("missing table entry".into()))?;
    let x = if side == Side::E { "E" } else { "F" };
    let gammas = &pbw.order.gammas;
    let mut s = format!(
        "{} w0 = {}: gamma_{i} = {}, gamma_{j} = {}\n",
        cfg.root_type.label(),
        format_word(&cfg.word()),
        format_root(&gammas[i - 1]),
        format_root(&gammas[j - 1])
    );
    s.push_str(&format!("{x}_{i} {x}_{j} = ({}) {x}_{j} {x}_{i}", e.leading));
    for (a, c) in &e.tail {
        s.push_str(&format!("\n    + ({c}) {}", fmt_monomial(side, a)));
    }
    s.push('\n');
    Ok(Outcome::ok(s))
}

fn cmd_cache_info<F: Field>(path: &Path, field: F) -> Result<Outcome> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::Config(format!("{}: {e}", path.display())))?;
    let (h, _) = parse_header(&text)?;
    let table = StructureTable::from_cache_text(&text)?;
    specialize_table(&table, &field)?;
    let max_exp = table
        .e_entries
        .iter()
        .chain(&table.f_entries)
        .flat_map(|e| std::iter::once(&e.leading).chain(e.tail.iter().map(|(_, c)| c)))
        .map(|c| c.exponents())
        .fold([0, 0], |m, x| [m[0].max(x[0]), m[1].max(x[1])]);
    Ok(Outcome::ok(format!(
        "file {}\nformat_version {}\ntype {}\nell_independent {}\nw0_word {}\nroots {}\nentries {} + {}\nmax denominator exponents {},{}\nspecializes at ell = {}: ok\n",
        path.display(),
        h.format_version,
        h.type_label.label(),
        h.ell_independent,
        format_word(&h.w0_word),
        table.omega_scalars.len(),
        table.e_entries.len(),
        table.f_entries.len(),
        max_exp[0],
        max_exp[1],
        field.ell()
    )))
}

fn projective_over<F: Field>(cfg: &RunConfig, ctx: &ModContext<F>, m: &flk_core::qmodules::WeightedModule<F>, kind: Kind) -> Result<(String, bool)> {
    Ok(match kind {
        Kind::G => ("trace criterion".into(), higman_projective(ctx, m, HopfKind::G)?),
        Kind::BMinus => ("trace criterion".into(), higman_projective(ctx, m, HopfKind::BMinus)?),
        Kind::BPlus => ("trace criterion".into(), higman_projective(ctx, m, HopfKind::BPlus)?),
        k if k.is_local() => ("Nakayama".into(), free_over_local(ctx, &k, m)?.verdict),
        k => {
            let rep = if ctx.r >= 1 {
                RegularRep::from_rank_one(&RankOneKernel::build(k, ctx.r, ctx.field().clone())?)
            } else {
                RegularRep::from_kernel(&KernelAlgebra::build(k, 0, ctx.z.clone())?)?
            };
            ("split test".into(), projective_split_test(ctx, &rep, m, cfg.budget)?)
        }
    })
}

fn cmd_module<F: Field>(cfg: &RunConfig, field: F, spec: &str, algebra: Option<&str>, out: Option<&Path>) -> Result<Outcome> {
    let ctx = cfg.context(field)?;
    let m = realize(&ctx, &parse_spec(cfg, spec)?)?;
    let bundle = m.to_text(ctx.field());
    let mut s = format!("{}: dim {}, X-graded {}\n", m.provenance, m.dim, m.graded());
    if let Some(a) = algebra {
        let kind: Kind = a.parse()?;
        let (how, v) = projective_over(cfg, &ctx, &m, kind.clone())?;
        s.push_str(&format!("projective over {kind}: {v} ({how})\n"));
    }
    match out {
        Some(p) => write_out(p, &bundle)?,
        None => s.push_str(&bundle),
    }
    Ok(Outcome::ok(s))
}

fn cmd_skeleton<F: Field>(cfg: &RunConfig, field: F, spec: &str, side: &str) -> Result<Outcome> {
    let side = match side {
        "minus" | "-" | "f" => Side::F,
        "plus" | "+" | "e" => Side::E,
        _ => return Err(Error::Config(format!("unknown side `{side}`"))),
    };
    let ctx = cfg.context(field)?;
    let m = realize(&ctx, &parse_spec(cfg, spec)?)?;
    let rep = support_skeleton(&ctx, &m, side)?;
    let mut s = format!("{} skeleton({}): {{{}}}\n", m.provenance, rep.side, rep.roots_in_skeleton.join(", "));
    s.push_str(&serde_json::to_string(&rep).expect("reports serialize"));
    s.push('\n');
    Ok(Outcome::ok(s))
}

fn cmd_betti<F: Field>(cfg: &RunConfig, field: F, algebra: &str, nmax: Option<usize>, json: bool, out: Option<&Path>) -> Result<Outcome> {
    let kind: Kind = algebra.parse()?;
    if !matches!(kind, Kind::UPlus | Kind::UMinus) {
        return Err(Error::Config(format!("betti runs over u+ or u-, not {kind}")));
    }
    if cfg.r > 0 {
        return Err(Error::Config("betti runs at r = 0 only".into()));
    }
    let n_max = nmax.unwrap_or(match cfg.root_type {
        RootType::A1 => 6,
        RootType::A2 => 4,
        _ => 2,
    });
    let ctx = cfg.context(field)?;
    let alg = KernelAlgebra::build(kind, 0, ctx.z.clone())?;
    let budget = cfg.budget.max(DEFAULT_RESOLUTION_BUDGET);
    let res = minimal_resolution(&alg, n_max, budget)?;
    let coh: Vec<usize> = res.degrees.iter().map(|ws| ws.iter().filter(|w| in_ell_lattice(&ctx.z, w)).count()).collect();
    let text = if json {
        let v = serde_json::json!({ "algebra": res.algebra, "betti": res.betti(), "weights": res.degrees, "cohomology": coh });
        format!("{v}\n")
    } else {
        let mut t = format!("# {} over {}\n# degree\tbetti\tweights\n", cfg.describe(), res.algebra);
        t.push_str(&res.to_table());
        let c: Vec<String> = coh.iter().map(|x| x.to_string()).collect();
        t.push_str(&format!("# cohomology dims {}\n", c.join(" ")));
        t
    };
    match out {
        Some(p) => {
            write_out(p, &text)?;
            Ok(Outcome::ok(format!("wrote {}\n", p.display())))
        }
        None => Ok(Outcome::ok(text)),
    }
}

fn cmd_verify<F: Field>(
    cfg: &RunConfig,
    field: F,
    manifest: &CorpusManifest,
    suites: &[crate::report::Suite],
    out: Option<&Path>,
) -> Result<Outcome> {
    let ctx = cfg.context(field)?;
    let report = verify(cfg, &ctx, manifest, suites)?;
    let jsonl = report.to_jsonl();
    let mut stdout = String::new();
    match out {
        Some(p) => write_out(p, &jsonl)?,
        None => stdout.push_str(&jsonl),
    }
    stdout.push_str(&report.summary());
    Ok(Outcome { stdout, stderr: String::new(), code: if report.ok() { 0 } else { 1 } })
}
