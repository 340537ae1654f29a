use std::path::PathBuf;
use std::sync::Arc;

use flk_core::error::{Error, Result};
use flk_core::genericuq::{GenericUq, Pbw, StructureTable};
use flk_core::kernelalg::{check_ell, ZetaData};
use flk_core::qmodules::ModContext;
use flk_core::rootdata::{format_word, parse_word, RootDatum, RootType};
use flk_core::scalars::{Cyclotomic, ExtField, Field, PrimeField};

/// Coefficient field for the root of unity.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FieldSpec {
    Cyclo,
    Prime(u64),
    Ext(u64, u32),
}

impl FieldSpec {
    /// `cyclo`, `<p>` or `<p>^<n>`. With only `p` given the smallest
    /// extension containing a primitive `ell`-th root of unity is used.
    pub fn parse(field: Option<&str>, p: Option<u64>, ell: u32) -> Result<FieldSpec> {
        let auto = |p: u64| -> Result<FieldSpec> {
            let mut q = p % ell as u64;
            for n in 1..=12u32 {
                if q == 1 {
                    return Ok(if n == 1 { FieldSpec::Prime(p) } else { FieldSpec::Ext(p, n) });
                }
                q = q * (p % ell as u64) % ell as u64;
            }
            Err(Error::Config(format!("no small extension of F_{p} contains a primitive {ell}-th root of unity")))
        };
        match (field, p) {
            (None | Some("cyclo"), None) => Ok(FieldSpec::Cyclo),
            (Some("cyclo"), Some(_)) => Err(Error::Config("--p conflicts with --field cyclo".into())),
            (None, Some(p)) => auto(p),
            (Some(s), p_flag) => {
                let (ps, n) = match s.split_once('^') {
                    Some((a, b)) => (a, Some(b.parse::<u32>().map_err(|_| Error::Config(format!("bad field `{s}`")))?)),
                    None => (s, None),
                };
                let p: u64 = ps.parse().map_err(|_| Error::Config(format!("bad field `{s}`")))?;
                if p_flag.is_some_and(|q| q != p) {
                    return Err(Error::Config(format!("--p disagrees with --field {s}")));
                }
                match n {
                    None => auto(p),
                    Some(1) => Ok(FieldSpec::Prime(p)),
                    Some(n) => Ok(FieldSpec::Ext(p, n)),
                }
            }
        }
    }

    pub fn characteristic(&self) -> u64 {
        match self {
            FieldSpec::Cyclo => 0,
            FieldSpec::Prime(p) | FieldSpec::Ext(p, _) => *p,
        }
    }
}

/// A concrete field, for dispatch through [`with_field!`](crate::with_field).
pub enum AnyField {
    Cyclo(Cyclotomic),
    Prime(PrimeField),
    Ext(ExtField),
}

/// Runs `$body` with `$f` bound to the configured field.
#[macro_export]
macro_rules! with_field {
    ($cfg:expr, $f:ident => $body:expr) => {
        match $cfg.make_field()? {
            $crate::config::AnyField::Cyclo($f) => $body,
            $crate::config::AnyField::Prime($f) => $body,
            $crate::config::AnyField::Ext($f) => $body,
        }
    };
}

#[derive(Clone, Debug)]
pub struct RunConfig {
    pub root_type: RootType,
    pub ell: u32,
    pub field: FieldSpec,
    pub r: u32,
    pub w0_word: Option<Vec<usize>>,
    pub seed: u64,
    pub jobs: usize,
    pub budget: usize,
    pub strict: bool,
    pub cache: Option<PathBuf>,
}

impl RunConfig {
    pub fn new(root_type: RootType, ell: u32) -> Self {
        RunConfig {
            root_type,
            ell,
            field: FieldSpec::Cyclo,
            r: 0,
            w0_word: None,
            seed: 0,
            jobs: 1,
            budget: flk_core::inject::DEFAULT_BUDGET,
            strict: true,
            cache: None,
        }
    }

    pub fn datum(&self) -> RootDatum {
        RootDatum::new(self.root_type)
    }

    pub fn word(&self) -> Vec<usize> {
        self.w0_word.clone().unwrap_or_else(|| self.datum().default_w0_word())
    }

    pub fn parse_w0(&mut self, s: &str) -> Result<()> {
        self.w0_word = Some(parse_word(s, self.root_type.rank())?);
        Ok(())
    }

    /// Checks the standing hypotheses. Oddness of `ell` (and `3 ∤ ell` for
    /// G2) is always enforced; strict mode adds `ell >= h` and good `p`.
    pub fn validate(&self) -> Result<()> {
        let d = self.datum();
        if let Some(bad) = check_ell(&d, self.ell) {
            return Err(Error::Config(bad));
        }
        let p = self.field.characteristic();
        if self.r >= 1 && p == 0 {
            return Err(Error::Config("--r needs a field of positive characteristic".into()));
        }
        if !self.strict {
            return Ok(());
        }
        if self.ell < d.coxeter_number {
            return Err(Error::Config(format!(
                "ell = {} is below the Coxeter number {} of {} (use --permissive)",
                self.ell,
                d.coxeter_number,
                self.root_type.label()
            )));
        }
        let bad_p = match self.root_type {
            RootType::G2 => p == 2 || p == 3,
            _ => p == 2,
        };
        if bad_p {
            return Err(Error::Config(format!("p = {p} is excluded for {} (use --permissive)", self.root_type.label())));
        }
        Ok(())
    }

    pub fn banner(&self) -> Option<&'static str> {
        (!self.strict).then_some("permissive mode: the standing hypotheses on ell and p are relaxed")
    }

    pub fn make_field(&self) -> Result<AnyField> {
        Ok(match self.field {
            FieldSpec::Cyclo => AnyField::Cyclo(Cyclotomic::new(self.ell)?),
            FieldSpec::Prime(p) => AnyField::Prime(PrimeField::new(p, self.ell)?),
            FieldSpec::Ext(p, n) => AnyField::Ext(ExtField::new(p, n, self.ell)?),
        })
    }

    pub fn pbw(&self) -> Result<Pbw> {
        Pbw::new(GenericUq::new(self.datum()), &self.word())
    }

    /// The generic table, from the cache when one is configured.
    pub fn structure_table(&self, pbw: &Pbw) -> Result<StructureTable> {
        let Some(path) = &self.cache else {
            return pbw.structure_table();
        };
        let table = StructureTable::read_cache(path)?;
        if table.type_label != self.root_type || table.w0_word != self.word() {
            return Err(Error::Config(format!(
                "cache {} is for {} with w0 = {}, not {} with w0 = {}",
                path.display(),
                table.type_label.label(),
                format_word(&table.w0_word),
                self.root_type.label(),
                format_word(&self.word())
            )));
        }
        Ok(table)
    }

    pub fn context<F: Field>(&self, field: F) -> Result<ModContext<F>> {
        let pbw = self.pbw()?;
        let table = self.structure_table(&pbw)?;
        let z = Arc::new(ZetaData::from_parts(&pbw, table, field)?);
        ModContext::from_zeta(z, self.r)
    }

    /// A short description used in report headers.
    pub fn describe(&self) -> String {
        let field = match self.field {
            FieldSpec::Cyclo => "cyclo".to_string(),
            FieldSpec::Prime(p) => format!("F_{p}"),
            FieldSpec::Ext(p, n) => format!("F_{p}^{n}"),
        };
        format!(
            "type={} ell={} field={} r={} w0={} seed={}",
            self.root_type.label(),
            self.ell,
            field,
            self.r,
            format_word(&self.word()),
            self.seed
        )
    }
}
