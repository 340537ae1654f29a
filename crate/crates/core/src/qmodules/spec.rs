//! The module description language:
//!
//! ```text
//! spec   := "trivial" | "onedim(" w ")" | "verma(" w ")" | "coverma(" w ")"
//!         | "simple(" w ")" | "dual(" spec ")" | "tensor(" spec "," spec ")"
//!         | "sum(" spec "," spec ")" | "twist(" spec "," w ")"
//!         | "randsub(" spec "," seed ")" | "quot(" spec "," seed ")"
//!         | "mixsub(" spec "," seed ")"
//! w      := int | "[" int ("," int)* "]"
//! ```
//!
//! `mixsub` produces modules that need not be `X`-graded.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::scalars::Field;

use super::construct::{self, fmt_weight};
use super::module::{ModContext, WeightedModule};
use super::simple::simple;

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ModuleSpec {
    Trivial,
    OneDim(Vec<i64>),
    Verma(Vec<i64>),
    Coverma(Vec<i64>),
    Simple(Vec<i64>),
    Dual(Box<ModuleSpec>),
    Tensor(Box<ModuleSpec>, Box<ModuleSpec>),
    Sum(Box<ModuleSpec>, Box<ModuleSpec>),
    Twist(Box<ModuleSpec>, Vec<i64>),
    RandSub(Box<ModuleSpec>, u64),
    Quot(Box<ModuleSpec>, u64),
    MixSub(Box<ModuleSpec>, u64),
}

impl fmt::Display for ModuleSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        use ModuleSpec::*;
        match self {
            Trivial => write!(f, "trivial"),
            OneDim(w) => write!(f, "onedim({})", fmt_weight(w)),
            Verma(w) => write!(f, "verma({})", fmt_weight(w)),
            Coverma(w) => write!(f, "coverma({})", fmt_weight(w)),
            Simple(w) => write!(f, "simple({})", fmt_weight(w)),
            Dual(s) => write!(f, "dual({s})"),
            Tensor(a, b) => write!(f, "tensor({a},{b})"),
            Sum(a, b) => write!(f, "sum({a},{b})"),
            Twist(s, w) => write!(f, "twist({s},{})", fmt_weight(w)),
            RandSub(s, n) => write!(f, "randsub({s},{n})"),
            Quot(s, n) => write!(f, "quot({s},{n})"),
            MixSub(s, n) => write!(f, "mixsub({s},{n})"),
        }
    }
}

struct Parser<'a> {
    s: &'a [u8],
    pos: usize,
}

impl<'a> Parser<'a> {
    fn err(&self, msg: impl Into<String>) -> Error {
        Error::Parse { pos: self.pos, msg: msg.into() }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.s.len() && self.s[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn eat(&mut self, c: u8) -> Result<()> {
        self.skip_ws();
        if self.s.get(self.pos) == Some(&c) {
            self.pos += 1;
            Ok(())
        } else {
            Err(self.err(format!("expected '{}'", c as char)))
        }
    }

    fn ident(&mut self) -> Result<String> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.s.len() && (self.s[self.pos].is_ascii_alphanumeric() || self.s[self.pos] == b'_') {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.err("expected a constructor name"));
        }
        Ok(String::from_utf8_lossy(&self.s[start..self.pos]).into_owned())
    }

    fn int(&mut self) -> Result<i64> {
        self.skip_ws();
        let start = self.pos;
        if self.s.get(self.pos) == Some(&b'-') {
            self.pos += 1;
        }
        while self.pos < self.s.len() && self.s[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        std::str::from_utf8(&self.s[start..self.pos])
            .ok()
            .and_then(|t| t.parse().ok())
            .ok_or_else(|| Error::Parse { pos: start, msg: "expected an integer".into() })
    }

    fn seed(&mut self) -> Result<u64> {
        let start = self.pos;
        let n = self.int()?;
        u64::try_from(n).map_err(|_| Error::Parse { pos: start, msg: "seed must be nonnegative".into() })
    }

    fn weight(&mut self) -> Result<Vec<i64>> {
        self.skip_ws();
        if self.s.get(self.pos) == Some(&b'[') {
            self.pos += 1;
            let mut v = vec![self.int()?];
            loop {
                self.skip_ws();
                match self.s.get(self.pos) {
                    Some(b',') => {
                        self.pos += 1;
                        v.push(self.int()?);
                    }
                    Some(b']') => {
                        self.pos += 1;
                        return Ok(v);
                    }
                    _ => return Err(self.err("expected ',' or ']' in weight")),
                }
            }
        }
        Ok(vec![self.int()?])
    }

    fn spec(&mut self) -> Result<ModuleSpec> {
        use ModuleSpec::*;
        let start = self.pos;
        let name = self.ident()?;
        if name == "trivial" {
            return Ok(Trivial);
        }
        self.eat(b'(')?;
        let out = match name.as_str() {
            "onedim" => OneDim(self.weight()?),
            "verma" => Verma(self.weight()?),
            "coverma" => Coverma(self.weight()?),
            "simple" => Simple(self.weight()?),
            "dual" => Dual(Box::new(self.spec()?)),
            "tensor" | "sum" => {
                let a = Box::new(self.spec()?);
                self.eat(b',')?;
                let b = Box::new(self.spec()?);
                if name == "tensor" {
                    Tensor(a, b)
                } else {
                    Sum(a, b)
                }
            }
            "twist" => {
                let a = Box::new(self.spec()?);
                self.eat(b',')?;
                Twist(a, self.weight()?)
            }
            "randsub" | "quot" | "mixsub" => {
                let a = Box::new(self.spec()?);
                self.eat(b',')?;
                let n = self.seed()?;
                match name.as_str() {
                    "randsub" => RandSub(a, n),
                    "quot" => Quot(a, n),
                    _ => MixSub(a, n),
                }
            }
            _ => return Err(Error::Parse { pos: start, msg: format!("unknown constructor '{name}'") }),
        };
        self.eat(b')')?;
        Ok(out)
    }
}

impl FromStr for ModuleSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let mut p = Parser { s: s.as_bytes(), pos: 0 };
        let spec = p.spec()?;
        p.skip_ws();
        if p.pos != s.len() {
            return Err(p.err("trailing input"));
        }
        Ok(spec)
    }
}

pub fn parse_module_spec(s: &str) -> Result<ModuleSpec> {
    s.parse()
}

/// Builds the module and checks grading and relations for the structures
/// its flags claim.
pub fn realize<F: Field>(ctx: &ModContext<F>, spec: &ModuleSpec) -> Result<WeightedModule<F>> {
    let m = build(ctx, spec)?;
    m.check_relations(ctx)?;
    Ok(m)
}

fn build<F: Field>(ctx: &ModContext<F>, spec: &ModuleSpec) -> Result<WeightedModule<F>> {
    use ModuleSpec::*;
    let mut m = match spec {
        Trivial => construct::trivial(ctx)?,
        OneDim(w) => construct::onedim(ctx, w)?,
        Verma(w) => construct::verma(ctx, w)?,
        Coverma(w) => construct::coverma(ctx, w)?,
        Simple(w) => simple(ctx, w)?,
        Dual(s) => construct::dual(ctx, &build(ctx, s)?)?,
        Tensor(a, b) => construct::tensor(ctx, &build(ctx, a)?, &build(ctx, b)?)?,
        Sum(a, b) => construct::sum(ctx, &build(ctx, a)?, &build(ctx, b)?)?,
        Twist(s, w) => construct::twist(ctx, &build(ctx, s)?, w)?,
        RandSub(s, n) => construct::randsub(ctx, &build(ctx, s)?, *n)?,
        Quot(s, n) => construct::quot(ctx, &build(ctx, s)?, *n)?,
        MixSub(s, n) => construct::mixsub(ctx, &build(ctx, s)?, *n)?,
    };
    m.provenance = spec.to_string();
    Ok(m)
}
