//! Slices `x ↦ B/x` over a base with chosen coproducts.

use super::Fixture;
use crate::error::Result;
use crate::fincat::{pair_name, FinCat, FinFunctor, Mor, Ob};
use crate::indexed::{CellSite, IndexedCat, LaxMonoidalIndexed, Variance};
use crate::moncat::{Bifunctor, CocartesianWitness};
use std::collections::HashMap;
use std::sync::Arc;

/// `B/x`: objects are morphisms `p: a → x`, morphisms `p → q` are pairs
/// `(h, q)` with `q∘h = p`.
struct Slice {
    cat: Arc<FinCat>,
}

impl Slice {
    fn new(b: &FinCat, x: Ob) -> Result<Slice> {
        let objs: Vec<Mor> = b.morphisms().filter(|&p| b.cod(p) == x).collect();
        let pos: HashMap<Mor, usize> = objs.iter().enumerate().map(|(i, &p)| (p, i)).collect();
        let mut mors = Vec::new();
        let mut index = HashMap::new();
        for &q in &objs {
            for h in b.morphisms().filter(|&h| b.cod(h) == b.dom(q)) {
                index.insert((h, q), mors.len());
                mors.push((pair_name(b.mor_name(h), b.mor_name(q)), pos[&b.compose(q, h)], pos[&q]));
            }
        }
        let ids = objs.iter().map(|&p| index[&(b.id(b.dom(p)), p)]).collect();
        let names = objs.iter().map(|&p| b.mor_name(p).to_string()).collect();
        let table: Vec<(Mor, Mor)> = {
            let mut t = vec![(0, 0); mors.len()];
            for (&k, &i) in &index {
                t[i] = k;
            }
            t
        };
        let cat = FinCat::build(names, mors, ids, |g, f| {
            let ((h2, q2), (h1, _)) = (table[g], table[f]);
            index.get(&(b.compose(h2, h1), q2)).copied()
        })?;
        Ok(Slice { cat: Arc::new(cat) })
    }

    fn ob(&self, b: &FinCat, p: Mor) -> Ob {
        self.cat.obj(b.mor_name(p)).unwrap()
    }

    fn arrow(&self, b: &FinCat, p: Ob) -> Mor {
        b.mor(self.cat.obj_name(p)).unwrap()
    }

    fn mor(&self, b: &FinCat, h: Mor, q: Mor) -> Option<Mor> {
        self.cat.mor(&pair_name(b.mor_name(h), b.mor_name(q)))
    }

    /// `(h, q)` of a slice morphism.
    fn parts(&self, b: &FinCat, k: Mor) -> (Mor, Mor) {
        let parts = crate::fincat::split_tuple(self.cat.mor_name(k)).unwrap();
        (b.mor(&parts[0]).unwrap(), b.mor(&parts[1]).unwrap())
    }
}

/// `x ↦ B/x` with post-composition and `μ(p, q) = p + q`; the associator and
/// unitor cells are the base coherence morphisms on domains.
pub fn slice_opindexed(base: Arc<FinCat>, w: &CocartesianWitness, name: &str) -> Result<Fixture> {
    let b = &*base;
    let bm = w.monoidal()?;
    let slices = b.objects().map(|x| Slice::new(b, x)).collect::<Result<Vec<_>>>()?;
    let fibres: Vec<Arc<FinCat>> = slices.iter().map(|s| s.cat.clone()).collect();
    let reindex = b
        .morphisms()
        .map(|g| {
            let (sx, sy) = (&slices[b.dom(g)], &slices[b.cod(g)]);
            let obj_map = sx.cat.objects().map(|p| sy.ob(b, b.compose(g, sx.arrow(b, p)))).collect();
            let mor_map = sx
                .cat
                .morphisms()
                .map(|k| {
                    let (h, q) = sx.parts(b, k);
                    sy.mor(b, h, b.compose(g, q)).unwrap()
                })
                .collect();
            FinFunctor::new(sx.cat.clone(), sy.cat.clone(), obj_map, mor_map)
        })
        .collect::<Result<Vec<_>>>()?;
    let carrier = IndexedCat::strict(base.clone(), Variance::Covariant, fibres, reindex)?;
    let mut laxator = HashMap::new();
    for (x, y) in bm.tensor.defined_pairs() {
        let (sx, sy, sxy) = (&slices[x], &slices[y], &slices[bm.tensor.ob_u(x, y)]);
        let bi = Bifunctor::build(
            sx.cat.clone(),
            sy.cat.clone(),
            sxy.cat.clone(),
            |p, q| bm.tensor.mor(sx.arrow(b, p), sy.arrow(b, q)).map(|pq| sxy.ob(b, pq)),
            |k, l| {
                let ((h, q1), (hh, q2)) = (sx.parts(b, k), sy.parts(b, l));
                sxy.mor(b, bm.tensor.mor(h, hh)?, bm.tensor.mor(q1, q2)?)
            },
        );
        laxator.insert((x, y), bi);
    }
    let unit = slices[bm.unit].ob(b, b.id(bm.unit));
    let dom_of = |x: Ob, a: Ob| b.dom(slices[x].arrow(b, a));
    let lax = LaxMonoidalIndexed::assemble(carrier, bm.clone(), laxator, unit, |site, x, s, t| {
        let h = match site {
            CellSite::Laxator { .. } => b.id(b.dom(slices[x].arrow(b, s))),
            CellSite::Associator { x, y, z, a, b: c, c: e } => bm.alpha(dom_of(x, a), dom_of(y, c), dom_of(z, e)),
            CellSite::RightUnit { x, a } => *bm.right_unitor.get(&dom_of(x, a))?,
            CellSite::LeftUnit { x, a } => b.inverse(*bm.left_unitor.get(&dom_of(x, a))?)?,
            CellSite::Braid { x, y, a, b: c } => *bm.braiding.as_ref()?.get(&(dom_of(x, a), dom_of(y, c)))?,
        };
        let k = slices[x].mor(b, h, slices[x].arrow(b, t))?;
        (slices[x].cat.dom(k) == s).then_some(k)
    })?;
    Ok(Fixture { name: format!("slices-{name}"), lax, witness: Some(w.clone()) })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fincat::check_category;
    use crate::gen::lattice_of;
    use crate::indexed::check_lax_monoidal;
    use crate::zoo::FinSetSkeleton;

    #[test]
    fn arrow_slices_are_point_and_arrow() {
        let (base, w) = lattice_of(&[0, 1], 1);
        let fx = slice_opindexed(base, &w, "arrow").unwrap();
        let mut sizes: Vec<(usize, usize)> = fx.lax.carrier.fibres.iter().map(|f| (f.n_objs(), f.n_mors())).collect();
        sizes.sort_unstable();
        assert_eq!(sizes, vec![(1, 1), (2, 3)]);
        let rep = check_lax_monoidal(&fx.lax).unwrap();
        assert!(rep.is_pass(), "{rep}");
    }

    #[test]
    fn finset_slices_carry_real_coherence() {
        let s = FinSetSkeleton::new(2).unwrap();
        let fx = slice_opindexed(s.cat.clone(), &s.coproducts(), "finset").unwrap();
        for f in &fx.lax.carrier.fibres {
            assert!(check_category(f).unwrap().is_pass());
        }
        let rep = check_lax_monoidal(&fx.lax).unwrap();
        assert!(rep.is_pass(), "{rep}");
        assert!(fx.lax.braid_cell.is_some());
    }
}
