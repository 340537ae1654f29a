use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::genericuq::{Exps, GenericUq, Pbw, Side, StructureTable, Word};
use crate::rootdata::{ConvexOrder, RootDatum, RootType};
use crate::scalars::Field;

/// `X_i X_j = leading X_j X_i + sum tail` at `q = zeta`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SpecEntry<E> {
    pub leading: E,
    pub tail: Vec<(Exps, E)>,
}

#[derive(Clone, Debug)]
pub struct SpecializedTable<F: Field> {
    pub n: usize,
    pub e: BTreeMap<(usize, usize), SpecEntry<F::Elem>>,
    pub f: BTreeMap<(usize, usize), SpecEntry<F::Elem>>,
    pub omega: Vec<F::Elem>,
}

impl<F: Field> SpecializedTable<F> {
    pub fn entry(&self, side: Side, i: usize, j: usize) -> Option<&SpecEntry<F::Elem>> {
        match side {
            Side::E => self.e.get(&(i, j)),
            Side::F => self.f.get(&(i, j)),
        }
    }
}

pub fn specialize_table<F: Field>(table: &StructureTable, field: &F) -> Result<SpecializedTable<F>> {
    let mut e = BTreeMap::new();
    let mut f = BTreeMap::new();
    for (src, dst) in [(&table.e_entries, &mut e), (&table.f_entries, &mut f)] {
        for ent in src {
            let leading = field.specialize_localized(&ent.leading)?;
            let mut tail = Vec::new();
            for (a, c) in &ent.tail {
                let c = field.specialize_localized(c)?;
                if !field.is_zero(&c) {
                    tail.push((a.clone(), c));
                }
            }
            dst.insert((ent.i, ent.j), SpecEntry { leading, tail });
        }
    }
    let omega = table.omega_scalars.iter().map(|c| field.specialize_localized(c)).collect::<Result<Vec<_>>>()?;
    Ok(SpecializedTable { n: table.omega_scalars.len(), e, f, omega })
}

/// Everything needed to compute in the kernels at `zeta` for one root datum
/// and one convex order.
#[derive(Clone, Debug)]
pub struct ZetaData<F: Field> {
    pub field: F,
    pub datum: RootDatum,
    pub order: ConvexOrder,
    pub generic_table: StructureTable,
    pub table: SpecializedTable<F>,
    /// Root vectors as polynomials in the simple generators.
    pub e_roots: Vec<Vec<(Word, F::Elem)>>,
    pub f_roots: Vec<Vec<(Word, F::Elem)>>,
    /// `ef[i][k]`: `[E_i, F_{gamma_k}] = sum c F^a K_mu` as `(a, mu, c)`.
    pub ef: Vec<Vec<Vec<(Exps, Vec<i64>, F::Elem)>>>,
    /// Position of each simple root in the order.
    pub simple_pos: Vec<usize>,
}

impl<F: Field> ZetaData<F> {
    pub fn new(t: RootType, word: Option<&[usize]>, field: F) -> Result<Self> {
        let datum = RootDatum::new(t);
        let word = word.map(|w| w.to_vec()).unwrap_or_else(|| datum.default_w0_word());
        let pbw = Pbw::new(GenericUq::new(datum), &word)?;
        Self::from_pbw(&pbw, field)
    }

    pub fn from_pbw(pbw: &Pbw, field: F) -> Result<Self> {
        let generic_table = pbw.structure_table()?;
        Self::from_parts(pbw, generic_table, field)
    }

    /// Like [`ZetaData::from_pbw`] but with a precomputed (possibly cached)
    /// generic table.
    pub fn from_parts(pbw: &Pbw, generic_table: StructureTable, field: F) -> Result<Self> {
        let datum = pbw.datum().clone();
        let n = pbw.n();
        if let Some(bad) = check_ell(&datum, field.ell()) {
            return Err(Error::Config(bad));
        }
        let table = specialize_table(&generic_table, &field)?;
        let spec_poly = |side: Side, k: usize| -> Result<Vec<(Word, F::Elem)>> {
            pbw.root_vector(side, k)
                .iter()
                .map(|(w, c)| Ok((w.clone(), field.specialize_ratfunc(c)?)))
                .collect()
        };
        let mut e_roots = Vec::new();
        let mut f_roots = Vec::new();
        for k in 0..n {
            e_roots.push(spec_poly(Side::E, k)?);
            f_roots.push(spec_poly(Side::F, k)?);
        }
        let mut ef = Vec::new();
        for i in 0..datum.rank {
            let mut row = Vec::new();
            for k in 0..n {
                let mut terms = Vec::new();
                for (a, mu, c) in pbw.commutator_e_simple_f_root(i, k)? {
                    let c = field.specialize_ratfunc(&c)?;
                    if !field.is_zero(&c) {
                        terms.push((a, mu, c));
                    }
                }
                row.push(terms);
            }
            ef.push(row);
        }
        let simple_pos = (0..datum.rank)
            .map(|i| pbw.order.position(&datum.simple_root(i)).expect("simple roots are positive"))
            .collect();
        Ok(ZetaData {
            field,
            datum,
            order: pbw.order.clone(),
            generic_table,
            table,
            e_roots,
            f_roots,
            ef,
            simple_pos,
        })
    }

    pub fn n(&self) -> usize {
        self.order.len()
    }

    pub fn rank(&self) -> usize {
        self.datum.rank
    }

    pub fn ell(&self) -> u32 {
        self.field.ell()
    }

    /// `zeta^{(mu, gamma)}` for `mu`, `gamma` in simple-root coordinates.
    pub fn zeta_inner(&self, mu: &[i64], gamma: &[i64]) -> F::Elem {
        self.field.zeta_pow(self.datum.inner(mu, gamma))
    }

    /// Weight of the PBW monomial with exponents `a` (sum of `a_k gamma_k`).
    pub fn exps_root_weight(&self, a: &[u32]) -> Vec<i64> {
        let mut w = vec![0; self.rank()];
        for (g, &x) in self.order.gammas.iter().zip(a) {
            for (wi, gi) in w.iter_mut().zip(g) {
                *wi += gi * x as i64;
            }
        }
        w
    }
}

/// The standing hypotheses on `ell`: odd, at least 3, and prime to 3 for G2.
pub fn check_ell(datum: &RootDatum, ell: u32) -> Option<String> {
    if ell < 3 || ell % 2 == 0 {
        return Some(format!("ell = {ell} must be odd and at least 3"));
    }
    if datum.type_label == RootType::G2 && ell % 3 == 0 {
        return Some(format!("ell = {ell} must be prime to 3 for G2"));
    }
    None
}
