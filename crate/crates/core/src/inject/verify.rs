use std::collections::BTreeMap;

use serde::Serialize;

use crate::error::Result;
use crate::genericuq::Side;
use crate::kernelalg::Kind;
use crate::qmodules::{ModContext, WeightedModule};
use crate::scalars::Field;

use super::freeness::{free_over_local, free_over_root, FreenessReport, RootRef};
use super::higman::{higman_projective, restrict_to, HopfKind};

/// One line of a verification report. Disagreements are data: they are
/// recorded here, never raised.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AgreementRecord {
    pub check: String,
    pub spec: String,
    pub root_type: String,
    pub ell: u32,
    pub p: u64,
    pub r: u32,
    pub dim: usize,
    pub graded: bool,
    /// Freeness over each root subalgebra, keyed by root.
    pub per_root: BTreeMap<String, bool>,
    /// The root-wise criterion: free over every root subalgebra considered.
    pub criterion: bool,
    /// Independent verdicts, keyed by algebra.
    pub oracle: BTreeMap<String, bool>,
    pub agree: bool,
    pub notes: Vec<String>,
}

impl AgreementRecord {
    fn new<F: Field>(ctx: &ModContext<F>, check: &str, m: &WeightedModule<F>) -> Self {
        AgreementRecord {
            check: check.into(),
            spec: m.provenance.clone(),
            root_type: ctx.datum().type_label.label().into(),
            ell: ctx.ell(),
            p: ctx.field().characteristic(),
            r: ctx.r,
            dim: m.dim,
            graded: m.graded(),
            per_root: BTreeMap::new(),
            criterion: true,
            oracle: BTreeMap::new(),
            agree: true,
            notes: Vec::new(),
        }
    }

    fn roots<F: Field>(&mut self, ctx: &ModContext<F>, m: &WeightedModule<F>, roots: &[RootRef]) -> Result<()> {
        for r in roots {
            let free = free_over_root(ctx, m, *r)?.verdict;
            self.per_root.insert(r.label(ctx), free);
            self.criterion &= free;
        }
        Ok(())
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("records serialize")
    }
}

fn hopf_label<F: Field>(ctx: &ModContext<F>, kind: HopfKind) -> String {
    if ctx.r > 0 {
        format!("{kind}:r{}", ctx.r)
    } else {
        kind.to_string()
    }
}

/// Injectivity over `u(g)` (or `U(G_r)`) against freeness over every root
/// subalgebra. Without `X`-weights only the direction "injective implies
/// free over each root" is asserted; both verdicts are still logged.
pub fn verify_root_criterion<F: Field>(ctx: &ModContext<F>, m: &WeightedModule<F>) -> Result<AgreementRecord> {
    let mut rec = AgreementRecord::new(ctx, "root-criterion", m);
    rec.roots(ctx, m, &RootRef::all(ctx))?;
    let inj = higman_projective(ctx, m, HopfKind::G)?;
    rec.oracle.insert(hopf_label(ctx, HopfKind::G), inj);
    if inj && !rec.criterion {
        rec.agree = false;
        rec.notes.push("injective but not free over some root subalgebra".into());
    }
    if m.graded() {
        rec.agree &= inj == rec.criterion;
    } else {
        rec.notes.push("not X-graded: only the unconditional direction is asserted".into());
    }
    Ok(rec)
}

fn borel_parts(side: Side) -> (HopfKind, Kind) {
    match side {
        Side::F => (HopfKind::BMinus, Kind::UMinus),
        Side::E => (HopfKind::BPlus, Kind::UPlus),
    }
}

/// Injectivity of the Borel restriction against freeness over the root
/// subalgebras of that Borel; injectivity over `u(b)` and over its
/// nilpotent part must also coincide.
pub fn verify_borel_criterion<F: Field>(ctx: &ModContext<F>, m: &WeightedModule<F>, side: Side) -> Result<AgreementRecord> {
    let (hopf, unip) = borel_parts(side);
    let name = match side {
        Side::F => "borel-criterion-",
        Side::E => "borel-criterion+",
    };
    let mut rec = AgreementRecord::new(ctx, name, m);
    let mb = restrict_to(m, hopf)?;
    rec.roots(ctx, &mb, &RootRef::positive(ctx, side))?;
    let inj_b = higman_projective(ctx, &mb, hopf)?;
    let free_u = free_over_local(ctx, &unip, &mb)?;
    rec.oracle.insert(hopf_label(ctx, hopf), inj_b);
    rec.oracle.insert(free_u.algebra.clone(), free_u.verdict);
    if inj_b != free_u.verdict {
        rec.agree = false;
        rec.notes.push("Borel and nilpotent verdicts differ".into());
    }
    if inj_b && !rec.criterion {
        rec.agree = false;
        rec.notes.push("injective but not free over some root subalgebra".into());
    }
    if m.graded() {
        rec.agree &= inj_b == rec.criterion;
    } else {
        rec.notes.push("not X-graded: only the unconditional direction is asserted".into());
    }
    Ok(rec)
}

/// Injectivity over `u(g)` against injectivity of both Borel restrictions.
pub fn verify_reduction_borel<F: Field>(ctx: &ModContext<F>, m: &WeightedModule<F>) -> Result<AgreementRecord> {
    let mut rec = AgreementRecord::new(ctx, "reduction-borel", m);
    let g = higman_projective(ctx, m, HopfKind::G)?;
    let bm = higman_projective(ctx, m, HopfKind::BMinus)?;
    let bp = higman_projective(ctx, m, HopfKind::BPlus)?;
    for (k, v) in [(HopfKind::G, g), (HopfKind::BMinus, bm), (HopfKind::BPlus, bp)] {
        rec.oracle.insert(hopf_label(ctx, k), v);
    }
    rec.criterion = bm && bp;
    if g && !rec.criterion {
        rec.agree = false;
        rec.notes.push("injective but a Borel restriction is not".into());
    }
    if m.graded() {
        rec.agree &= g == rec.criterion;
    } else {
        rec.notes.push("not X-graded: only the unconditional direction is asserted".into());
    }
    Ok(rec)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SkeletonReport {
    pub side: String,
    /// Positive roots over whose root subalgebra `M` is not free.
    pub roots_in_skeleton: Vec<String>,
    pub per_root: Vec<(String, FreenessReport)>,
}

impl SkeletonReport {
    pub fn is_empty(&self) -> bool {
        self.roots_in_skeleton.is_empty()
    }
}

pub fn support_skeleton<F: Field>(ctx: &ModContext<F>, m: &WeightedModule<F>, side: Side) -> Result<SkeletonReport> {
    let mut per_root = Vec::new();
    let mut skel = Vec::new();
    for r in RootRef::positive(ctx, side) {
        let rep = free_over_root(ctx, m, r)?;
        let label = r.label(ctx);
        if !rep.verdict {
            skel.push(label.clone());
        }
        per_root.push((label, rep));
    }
    let side = match side {
        Side::F => "minus",
        Side::E => "plus",
    };
    Ok(SkeletonReport { side: side.into(), roots_in_skeleton: skel, per_root })
}

/// Position of the highest root in the convex order.
pub fn highest_root_index<F: Field>(ctx: &ModContext<F>) -> usize {
    let h = &ctx.datum().highest_root;
    ctx.z.order.gammas.iter().position(|g| g == h).expect("the highest root is positive")
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HighestRootRecord {
    pub spec: String,
    pub injective: bool,
    pub free_over_highest: bool,
    pub skeleton: Vec<String>,
    pub highest_in_skeleton: bool,
    /// Injectivity matches freeness over the highest root, and a nonempty
    /// skeleton contains the highest root.
    pub pass: bool,
}

impl HighestRootRecord {
    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("records serialize")
    }
}

pub fn highest_root_test<F: Field>(ctx: &ModContext<F>, m: &WeightedModule<F>) -> Result<HighestRootRecord> {
    let injective = higman_projective(ctx, m, HopfKind::G)?;
    let h = RootRef { k: highest_root_index(ctx), side: Side::F };
    let free_over_highest = free_over_root(ctx, m, h)?.verdict;
    let skel = support_skeleton(ctx, m, Side::F)?;
    let highest_in_skeleton = skel.roots_in_skeleton.contains(&h.label(ctx));
    let pass = injective == free_over_highest && (skel.is_empty() || highest_in_skeleton);
    Ok(HighestRootRecord {
        spec: m.provenance.clone(),
        injective,
        free_over_highest,
        skeleton: skel.roots_in_skeleton,
        highest_in_skeleton,
        pass,
    })
}
