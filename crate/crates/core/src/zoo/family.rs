//! Families `X ↦ [X, C]` of objects of a finite monoidal category.

use super::{FinSetSkeleton, Fixture};
use crate::error::{Error, Result};
use crate::fincat::{tuple_name, FinCat, FinFunctor, Mor, Ob};
use crate::indexed::{CellSite, IndexedCat, LaxMonoidalIndexed, Variance};
use crate::moncat::{Bifunctor, MonoidalData};
use std::collections::HashMap;
use std::sync::Arc;

/// `[n, C]` for discrete `n`: tuples of objects and of morphisms.
pub fn power(c: &FinCat, n: usize) -> Result<FinCat> {
    let tuples = |k: usize| -> Vec<Vec<usize>> {
        let mut out = vec![vec![]];
        for _ in 0..n {
            out = out.into_iter().flat_map(|t| (0..k).map(move |i| [t.clone(), vec![i]].concat())).collect();
        }
        out
    };
    let obs = tuples(c.n_objs());
    let mors = tuples(c.n_mors());
    let oname = |t: &[usize]| tuple_name(&t.iter().map(|&a| c.obj_name(a)).collect::<Vec<_>>());
    let oix: HashMap<String, usize> = obs.iter().enumerate().map(|(i, t)| (oname(t), i)).collect();
    let mix: HashMap<&Vec<usize>, usize> = mors.iter().enumerate().map(|(i, t)| (t, i)).collect();
    let ends = |t: &[usize], end: fn(&FinCat, Mor) -> Ob| oix[&oname(&t.iter().map(|&f| end(c, f)).collect::<Vec<_>>())];
    let mtable: Vec<(String, Ob, Ob)> = mors
        .iter()
        .map(|t| (tuple_name(&t.iter().map(|&f| c.mor_name(f)).collect::<Vec<_>>()), ends(t, FinCat::dom), ends(t, FinCat::cod)))
        .collect();
    let ids = obs.iter().map(|t| mix[&t.iter().map(|&a| c.id(a)).collect::<Vec<_>>()]).collect();
    FinCat::build(obs.iter().map(|t| oname(t)).collect(), mtable, ids, |g, f| {
        let h: Vec<Mor> = mors[g].iter().zip(&mors[f]).map(|(&a, &b)| c.try_compose(a, b)).collect::<Option<_>>()?;
        mix.get(&h).copied()
    })
}

struct Powers {
    c: Arc<FinCat>,
    cats: Vec<Arc<FinCat>>,
}

impl Powers {
    fn ob(&self, n: usize, comps: &[Ob]) -> Option<Ob> {
        self.cats[n].obj(&tuple_name(&comps.iter().map(|&a| self.c.obj_name(a)).collect::<Vec<_>>()))
    }

    fn mor(&self, n: usize, comps: &[Mor]) -> Option<Mor> {
        self.cats[n].mor(&tuple_name(&comps.iter().map(|&f| self.c.mor_name(f)).collect::<Vec<_>>()))
    }

    fn obs(&self, n: usize, a: Ob) -> Vec<Ob> {
        crate::fincat::split_tuple(self.cats[n].obj_name(a))
            .unwrap()
            .into_iter()
            .take(n)
            .map(|s| self.c.obj(&s).unwrap())
            .collect()
    }

    fn mors(&self, n: usize, k: Mor) -> Vec<Mor> {
        crate::fincat::split_tuple(self.cats[n].mor_name(k)).unwrap().into_iter().take(n).map(|s| self.c.mor(&s).unwrap()).collect()
    }
}

/// `[−, C]` on finite sets, covariant over the opposite category whose
/// coproducts are cartesian products, with the pointwise laxator
/// `(M, N) ↦ (M_i ⊗ N_j)_{(i, j)}` and unit `I` over `1`.
pub fn family_fibration(c: &MonoidalData, set_bound: usize) -> Result<Fixture> {
    if !c.tensor.is_total() {
        return Err(Error::MalformedTable("family tensor must be total".into()));
    }
    let s = FinSetSkeleton::new(set_bound)?;
    let w = s.products_in_opposite();
    let b = w.base.clone();
    let bm = w.monoidal()?;
    let size = |x: Ob| s.size(x);
    let p = Powers { c: c.base.clone(), cats: (0..=set_bound).map(|n| power(&c.base, n).map(Arc::new)).collect::<Result<_>>()? };
    let fibres: Vec<Arc<FinCat>> = b.objects().map(|x| p.cats[size(x)].clone()).collect();
    let reindex = b
        .morphisms()
        .map(|u| {
            let (m, _, t) = s.table(u);
            let (x, y) = (b.dom(u), b.cod(u));
            let obj_map = fibres[x].objects().map(|a| p.ob(m, &t.iter().map(|&i| p.obs(size(x), a)[i]).collect::<Vec<_>>()).unwrap()).collect();
            let mor_map = fibres[x].morphisms().map(|k| p.mor(m, &t.iter().map(|&i| p.mors(size(x), k)[i]).collect::<Vec<_>>()).unwrap()).collect();
            debug_assert_eq!(size(y), m);
            FinFunctor::new(fibres[x].clone(), fibres[y].clone(), obj_map, mor_map)
        })
        .collect::<Result<Vec<_>>>()?;
    let carrier = IndexedCat::strict(b.clone(), Variance::Covariant, fibres.clone(), reindex)?;
    let mut laxator = HashMap::new();
    for (x, y) in bm.tensor.defined_pairs() {
        let (m, n) = (size(x), size(y));
        let xy = bm.tensor.ob_u(x, y);
        let p = &p;
        let bi = Bifunctor::build(
            fibres[x].clone(),
            fibres[y].clone(),
            fibres[xy].clone(),
            |a, e| {
                let (ma, ne) = (p.obs(m, a), p.obs(n, e));
                p.ob(m * n, &(0..m * n).map(|k| c.tensor.ob_u(ma[k / n], ne[k % n])).collect::<Vec<_>>())
            },
            |f, g| {
                let (mf, ng) = (p.mors(m, f), p.mors(n, g));
                p.mor(m * n, &(0..m * n).map(|k| c.tensor.mor_u(mf[k / n], ng[k % n])).collect::<Vec<_>>())
            },
        );
        laxator.insert((x, y), bi);
    }
    let unit = p.ob(1, &[c.unit]).ok_or_else(|| Error::SizeLimitExceeded("set bound 0 has no unit family".into()))?;
    let cb = &c.base;
    let lax = LaxMonoidalIndexed::assemble(carrier, bm, laxator, unit, |site, x, src, tgt| {
        let n = size(x);
        let comps: Vec<Mor> = match site {
            CellSite::Laxator { .. } => p.obs(n, src).into_iter().map(|a| cb.id(a)).collect(),
            CellSite::Associator { x, y, z, a, b: e, c: u } => {
                let (ma, nb, uc) = (p.obs(size(x), a), p.obs(size(y), e), p.obs(size(z), u));
                let (ny, nz) = (size(y), size(z));
                (0..n).map(|k| c.alpha(ma[k / (ny * nz)], nb[(k / nz) % ny], uc[k % nz])).collect()
            }
            CellSite::RightUnit { a, .. } => p.obs(n, a).into_iter().map(|v| c.right_unitor.get(&v).copied()).collect::<Option<_>>()?,
            CellSite::LeftUnit { a, .. } => {
                p.obs(n, a).into_iter().map(|v| c.left_unitor.get(&v).and_then(|&l| cb.inverse(l))).collect::<Option<_>>()?
            }
            CellSite::Braid { x, y, a, b: e } => {
                let (ma, nb) = (p.obs(size(x), a), p.obs(size(y), e));
                let nx = size(x);
                let br = c.braiding.as_ref()?;
                (0..n).map(|k| br.get(&(ma[k % nx], nb[k / nx])).copied()).collect::<Option<_>>()?
            }
        };
        let k = p.mor(n, &comps)?;
        (p.cats[n].dom(k) == src && p.cats[n].cod(k) == tgt).then_some(k)
    })?;
    Ok(Fixture { name: format!("family-{set_bound}"), lax, witness: Some(w) })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corr::global_to_fibrewise;
    use crate::gen::{cyclic_monoid, delooping};
    use crate::indexed::check_lax_monoidal;

    #[test]
    fn powers_count_objects() {
        let c = cyclic_monoid(3);
        for n in 0..3 {
            let pc = power(&c.base, n).unwrap();
            assert_eq!(pc.n_objs(), 3usize.pow(n as u32));
        }
    }

    #[test]
    fn family_laws_hold() {
        for c in [cyclic_monoid(2), delooping(2)] {
            let fx = family_fibration(&c, 3).unwrap();
            let rep = check_lax_monoidal(&fx.lax).unwrap();
            assert!(rep.is_pass(), "{rep}");
            let f = global_to_fibrewise(&fx.lax, fx.witness.as_ref().unwrap()).unwrap();
            assert!(!f.structured().is_empty());
        }
    }

    #[test]
    fn fibre_tensor_is_pointwise() {
        let c = cyclic_monoid(3);
        let fx = family_fibration(&c, 4).unwrap();
        let w = fx.witness.as_ref().unwrap();
        let m = &fx.lax.carrier;
        let x = m.base.obj("2").unwrap();
        let diag = w.codiagonal(x).unwrap();
        let fib = &m.fibres[x];
        let comps = |a: Ob| crate::fincat::split_tuple(fib.obj_name(a)).unwrap();
        for a in fib.objects() {
            for e in fib.objects() {
                let t = m.reindex[diag].ob(fx.lax.mu_ob(x, x, a, e).unwrap());
                let (pa, pe) = (comps(a), comps(e));
                let expect: Vec<&str> = (0..2).map(|i| c.base.obj_name(c.tensor.ob_u(c.base.obj(&pa[i]).unwrap(), c.base.obj(&pe[i]).unwrap()))).collect();
                assert_eq!(fib.obj_name(t), tuple_name(&expect));
            }
        }
    }
}
