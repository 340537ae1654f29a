//! Text serialization of generic structure tables.
//!
//! ```text
//! flk-structure-table
//! format_version 1
//! type A2
//! ell_independent true
//! w0_word 1,2,1
//! omega 1 <scalar>
//! E 1 3 -> leading:<scalar> ; tail: (0,1,0)=<scalar>
//! F 1 3 -> leading:<scalar> ; tail: (0,1,0)=<scalar>
//! end
//! ```
//!
//! Indices are 1-based; scalars use the canonical localized form.

use std::path::Path;

use crate::error::{Error, Result};
use crate::rootdata::{format_word, parse_word, RootDatum, RootType};
use crate::scalars::LocalizedScalar;

use super::pbw::{Exps, Side, StructureEntry, StructureTable};

pub const CACHE_MAGIC: &str = "flk-structure-table";
pub const CACHE_FORMAT_VERSION: u32 = 1;

/// Header fields of a cache file.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CacheHeader {
    pub format_version: u32,
    pub type_label: RootType,
    pub ell_independent: bool,
    pub w0_word: Vec<usize>,
}

fn format_exps(a: &Exps) -> String {
    let parts: Vec<String> = a.iter().map(|x| x.to_string()).collect();
    format!("({})", parts.join(","))
}

fn format_entry(side: Side, e: &StructureEntry) -> String {
    let tag = match side {
        Side::E => "E",
        Side::F => "F",
    };
    let mut s = format!("{tag} {} {} -> leading:{}", e.i + 1, e.j + 1, e.leading.to_canonical_string());
    if !e.tail.is_empty() {
        let terms: Vec<String> =
            e.tail.iter().map(|(a, c)| format!("{}={}", format_exps(a), c.to_canonical_string())).collect();
        s.push_str(" ; tail: ");
        s.push_str(&terms.join(" ; "));
    }
    s
}

impl StructureTable {
    pub fn to_cache_text(&self) -> String {
        let mut s = String::new();
        s.push_str(CACHE_MAGIC);
        s.push('\n');
        s.push_str(&format!("format_version {CACHE_FORMAT_VERSION}\n"));
        s.push_str(&format!("type {}\n", self.type_label.label()));
        s.push_str("ell_independent true\n");
        s.push_str(&format!("w0_word {}\n", format_word(&self.w0_word)));
        for (k, c) in self.omega_scalars.iter().enumerate() {
            s.push_str(&format!("omega {} {}\n", k + 1, c.to_canonical_string()));
        }
        for e in &self.e_entries {
            s.push_str(&format_entry(Side::E, e));
            s.push('\n');
        }
        for e in &self.f_entries {
            s.push_str(&format_entry(Side::F, e));
            s.push('\n');
        }
        s.push_str("end\n");
        s
    }

    pub fn from_cache_text(text: &str) -> Result<StructureTable> {
        let (header, body) = parse_header(text)?;
        if header.format_version != CACHE_FORMAT_VERSION {
            return Err(Error::Format(format!(
                "cache format version {} is not supported (expected {CACHE_FORMAT_VERSION})",
                header.format_version
            )));
        }
        let n = RootDatum::new(header.type_label).num_positive_roots();
        let mut omega = Vec::new();
        let mut e_entries = Vec::new();
        let mut f_entries = Vec::new();
        let mut ended = false;
        for (lineno, line) in body {
            let bad = |msg: String| Error::Format(format!("line {lineno}: {msg}"));
            if ended {
                return Err(bad("content after `end`".into()));
            }
            if line == "end" {
                ended = true;
                continue;
            }
            if let Some(rest) = line.strip_prefix("omega ") {
                let (k, c) = rest.split_once(' ').ok_or_else(|| bad("malformed omega line".into()))?;
                let k: usize = k.parse().map_err(|_| bad(format!("bad index `{k}`")))?;
                if k != omega.len() + 1 {
                    return Err(bad(format!("omega index {k} out of sequence")));
                }
                omega.push(LocalizedScalar::parse_canonical(c).map_err(|e| bad(e.to_string()))?);
                continue;
            }
            let (side, rest) = match line.split_once(' ') {
                Some(("E", r)) => (Side::E, r),
                Some(("F", r)) => (Side::F, r),
                _ => return Err(bad(format!("unrecognized line `{line}`"))),
            };
            let entry = parse_entry(rest, n).map_err(|e| bad(e.to_string()))?;
            match side {
                Side::E => e_entries.push(entry),
                Side::F => f_entries.push(entry),
            }
        }
        if !ended {
            return Err(Error::Format("missing `end` (truncated cache?)".into()));
        }
        if omega.len() != n {
            return Err(Error::Format(format!("expected {n} omega scalars, found {}", omega.len())));
        }
        let pairs = n * n.saturating_sub(1) / 2;
        if e_entries.len() != pairs || f_entries.len() != pairs {
            return Err(Error::Format(format!(
                "expected {pairs} entries per side, found {} and {}",
                e_entries.len(),
                f_entries.len()
            )));
        }
        Ok(StructureTable {
            type_label: header.type_label,
            w0_word: header.w0_word,
            e_entries,
            f_entries,
            omega_scalars: omega,
        })
    }

    /// Writes the cache through a temporary file and a rename.
    pub fn write_cache(&self, path: &Path) -> Result<()> {
        let io = |e: std::io::Error| Error::Config(format!("{}: {e}", path.display()));
        if let Some(dir) = path.parent().filter(|d| !d.as_os_str().is_empty()) {
            std::fs::create_dir_all(dir).map_err(io)?;
        }
        let mut tmp = path.as_os_str().to_owned();
        tmp.push(format!(".tmp{}", std::process::id()));
        let tmp = std::path::PathBuf::from(tmp);
        std::fs::write(&tmp, self.to_cache_text()).map_err(io)?;
        std::fs::rename(&tmp, path).map_err(io)
    }

    pub fn read_cache(path: &Path) -> Result<StructureTable> {
        let text = std::fs::read_to_string(path).map_err(|e| Error::Config(format!("{}: {e}", path.display())))?;
        Self::from_cache_text(&text)
    }
}

type Body<'a> = Vec<(usize, &'a str)>;

/// Parses the header and returns it with the remaining numbered lines.
pub fn parse_header(text: &str) -> Result<(CacheHeader, Body<'_>)> {
    let mut lines = text.lines().enumerate().map(|(i, l)| (i + 1, l.trim())).filter(|(_, l)| !l.is_empty());
    let mut next = |key: &str| -> Result<(usize, String)> {
        let (no, l) = lines.next().ok_or_else(|| Error::Format(format!("missing `{key}`")))?;
        if key == CACHE_MAGIC {
            return if l == CACHE_MAGIC {
                Ok((no, String::new()))
            } else {
                Err(Error::Format("not a structure table cache".into()))
            };
        }
        let v = l
            .strip_prefix(key)
            .and_then(|r| r.strip_prefix(' '))
            .ok_or_else(|| Error::Format(format!("line {no}: expected `{key}`")))?;
        Ok((no, v.trim().to_string()))
    };
    next(CACHE_MAGIC)?;
    let (no, v) = next("format_version")?;
    let format_version = v.parse().map_err(|_| Error::Format(format!("line {no}: bad version `{v}`")))?;
    let (_, t) = next("type")?;
    let type_label: RootType = t.parse()?;
    let (no, v) = next("ell_independent")?;
    let ell_independent = match v.as_str() {
        "true" => true,
        "false" => false,
        _ => return Err(Error::Format(format!("line {no}: bad flag `{v}`"))),
    };
    let (_, w) = next("w0_word")?;
    let w0_word = parse_word(&w, type_label.rank())?;
    let header = CacheHeader { format_version, type_label, ell_independent, w0_word };
    let body = lines.collect();
    Ok((header, body))
}

fn parse_exps(s: &str, n: usize) -> Result<Exps> {
    let inner = s
        .strip_prefix('(')
        .and_then(|r| r.strip_suffix(')'))
        .ok_or_else(|| Error::Format(format!("bad exponent vector `{s}`")))?;
    let a: Exps = inner
        .split(',')
        .map(|x| x.trim().parse().map_err(|_| Error::Format(format!("bad exponent `{x}`"))))
        .collect::<Result<_>>()?;
    if a.len() != n {
        return Err(Error::Format(format!("exponent vector `{s}` has length {} not {n}", a.len())));
    }
    Ok(a)
}

fn parse_entry(s: &str, n: usize) -> Result<StructureEntry> {
    let (ij, rest) = s.split_once("->").ok_or_else(|| Error::Format("missing `->`".into()))?;
    let idx: Vec<usize> = ij
        .split_whitespace()
        .map(|x| x.parse().map_err(|_| Error::Format(format!("bad index `{x}`"))))
        .collect::<Result<_>>()?;
    let [i, j] = idx[..] else {
        return Err(Error::Format("expected two indices".into()));
    };
    if !(1 <= i && i < j && j <= n) {
        return Err(Error::Format(format!("pair ({i},{j}) out of range")));
    }
    let mut parts = rest.split(';').map(str::trim);
    let lead = parts
        .next()
        .and_then(|p| p.strip_prefix("leading:"))
        .ok_or_else(|| Error::Format("missing leading coefficient".into()))?;
    let leading = LocalizedScalar::parse_canonical(lead.trim())?;
    let mut tail = Vec::new();
    for (k, p) in parts.enumerate() {
        let p = if k == 0 {
            p.strip_prefix("tail:").ok_or_else(|| Error::Format("expected `tail:`".into()))?.trim()
        } else {
            p
        };
        let (a, c) = p.split_once('=').ok_or_else(|| Error::Format(format!("bad tail term `{p}`")))?;
        tail.push((parse_exps(a.trim(), n)?, LocalizedScalar::parse_canonical(c.trim())?));
    }
    Ok(StructureEntry { i: i - 1, j: j - 1, leading, tail })
}
