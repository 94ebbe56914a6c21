//! Bounded fixtures: finite sets, graphs, slices, families, decorators and
//! Moore machines.

use crate::error::{Error, Result};
use crate::fincat::{FinCat, FinFunctor, Mor, Ob};
use crate::gen::concrete_category;
use crate::indexed::{Indexed1Cell, LaxMonoidalIndexed, MonoidalIndexedPart};
use crate::moncat::{CocartesianWitness, MonoidalFunctorData, Strength};
use std::collections::HashMap;
use std::sync::Arc;

pub mod dds;
pub mod decorator;
pub mod family;
pub mod graph;
pub mod slice;

pub use dds::{dds_apply, dds_parallel, dds_total_category, wiring_category, DdsBounds, MooreMachine, WiringDiagram};
pub use decorator::{decorator_to_network_model, Decorator, NetworkModel};
pub use family::family_fibration;
pub use graph::{graph_opindexed, vertex_opfibration, SimpleGraph};
pub use slice::slice_opindexed;

/// A lax monoidal indexed category with the coproduct witness of its base,
/// when the base tensor is cocartesian.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Fixture {
    pub name: String,
    pub lax: LaxMonoidalIndexed,
    pub witness: Option<CocartesianWitness>,
}

/// Finite sets `0..=bound` and all functions between them. Functions are
/// named `m>n:digits` with the image of `i` as the `i`-th digit.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FinSetSkeleton {
    pub bound: usize,
    pub cat: Arc<FinCat>,
    obs: Vec<Ob>,
}

pub const MAX_SET_BOUND: usize = 5;

impl FinSetSkeleton {
    pub fn new(bound: usize) -> Result<FinSetSkeleton> {
        if bound > MAX_SET_BOUND {
            return Err(Error::SizeLimitExceeded(format!("set bound {bound} exceeds {MAX_SET_BOUND}")));
        }
        let names: Vec<String> = (0..=bound).map(|n| n.to_string()).collect();
        let sizes: Vec<usize> = (0..=bound).collect();
        let mut functions = Vec::new();
        for m in 0..=bound {
            for n in 0..=bound {
                let count = n.pow(m as u32);
                for mut k in 0..count {
                    let mut t = vec![0; m];
                    for v in t.iter_mut() {
                        *v = k % n;
                        k /= n;
                    }
                    functions.push((m, n, t));
                }
            }
        }
        let cat = Arc::new(concrete_category(&names, &sizes, &functions)?);
        let obs = names.iter().map(|s| cat.obj(s).unwrap()).collect();
        Ok(FinSetSkeleton { bound, cat, obs })
    }

    pub fn ob(&self, n: usize) -> Ob {
        self.obs[n]
    }

    pub fn size(&self, x: Ob) -> usize {
        self.cat.obj_name(x).parse().unwrap()
    }

    pub fn function(&self, m: usize, n: usize, table: &[usize]) -> Option<Mor> {
        let digits: String = table.iter().map(|d| char::from_digit(*d as u32, 36).unwrap()).collect();
        self.cat.mor(&format!("{m}>{n}:{digits}"))
    }

    /// `(m, n, table)` of a morphism.
    pub fn table(&self, f: Mor) -> (usize, usize, Vec<usize>) {
        let c = &self.cat;
        let digits = c.mor_name(f).split(':').nth(1).unwrap_or("");
        let t = digits.chars().map(|ch| ch.to_digit(36).unwrap() as usize).collect();
        (self.size(c.dom(f)), self.size(c.cod(f)), t)
    }

    /// Sums `m + n ≤ bound` with `i ↦ i` and `j ↦ m + j`; `0` is initial.
    pub fn coproducts(&self) -> CocartesianWitness {
        let mut coproducts = HashMap::new();
        for m in 0..=self.bound {
            for n in 0..=self.bound - m {
                let s = m + n;
                let i1 = self.function(m, s, &(0..m).collect::<Vec<_>>()).unwrap();
                let i2 = self.function(n, s, &(m..s).collect::<Vec<_>>()).unwrap();
                coproducts.insert((self.ob(m), self.ob(n)), (self.ob(s), i1, i2));
            }
        }
        let bang = (0..=self.bound).map(|n| self.function(0, n, &[]).unwrap()).collect::<Vec<_>>();
        let mut by_ob = vec![0; bang.len()];
        for (n, f) in bang.into_iter().enumerate() {
            by_ob[self.ob(n)] = f;
        }
        CocartesianWitness { base: self.cat.clone(), coproducts, initial: self.ob(0), bang: by_ob }
    }

    /// The opposite category with products `m·n ≤ bound` as its coproducts:
    /// pairs `(i, j)` are numbered `i·n + j`, and `1` is initial.
    pub fn products_in_opposite(&self) -> CocartesianWitness {
        let op = Arc::new(self.cat.opposite());
        let mut coproducts = HashMap::new();
        for m in 0..=self.bound {
            for n in 0..=self.bound {
                let s = m * n;
                if s > self.bound {
                    continue;
                }
                let p1 = self.function(s, m, &(0..s).map(|k| k / n).collect::<Vec<_>>()).unwrap();
                let p2 = self.function(s, n, &(0..s).map(|k| k % n).collect::<Vec<_>>()).unwrap();
                coproducts.insert((self.ob(m), self.ob(n)), (self.ob(s), p1, p2));
            }
        }
        let mut bang = vec![0; self.bound + 1];
        for n in 0..=self.bound {
            bang[self.ob(n)] = self.function(n, 1.min(self.bound), &vec![0; n]).unwrap();
        }
        CocartesianWitness { base: op, coproducts, initial: self.ob(1.min(self.bound)), bang }
    }
}

fn by_name(src: &Arc<FinCat>, tgt: &Arc<FinCat>) -> Result<FinFunctor> {
    let obj_map = src.objects().map(|x| tgt.obj_or_err(src.obj_name(x))).collect::<Result<Vec<_>>>()?;
    let mor_map = src.morphisms().map(|f| tgt.mor_or_err(src.mor_name(f))).collect::<Result<Vec<_>>>()?;
    FinFunctor::new(src.clone(), tgt.clone(), obj_map, mor_map)
}

fn same(a: Ob, b: Ob, what: &str) -> Result<()> {
    if a == b {
        Ok(())
    } else {
        Err(Error::ShapeMismatch(format!("universes disagree on {what}")))
    }
}

/// Inclusion of a smaller universe into a larger one built from the same
/// names. Base, fibres and tensors are matched by name and every structure
/// cell is an identity.
pub fn universe_inclusion(lo: &Fixture, hi: &Fixture) -> Result<Indexed1Cell> {
    let (m, n) = (&lo.lax.carrier, &hi.lax.carrier);
    let base_fun = by_name(&m.base, &n.base)?;
    let ff = &base_fun;
    let components = m.base.objects().map(|x| by_name(&m.fibres[x], &n.fibres[ff.ob(x)])).collect::<Result<Vec<_>>>()?;
    let mut squares = Vec::new();
    for f in m.base.morphisms() {
        let (x, y) = (m.base.dom(f), m.base.cod(f));
        let fib = &n.fibres[ff.ob(y)];
        let mut row = Vec::new();
        for a in m.fibres[x].objects() {
            let b = components[y].ob(m.reindex[f].ob(a));
            same(n.reindex[ff.mor(f)].ob(components[x].ob(a)), b, "reindexing")?;
            row.push(fib.id(b));
        }
        squares.push(row);
    }
    let (bs, bt) = (&lo.lax.base_monoidal, &hi.lax.base_monoidal);
    let mut laxator = HashMap::new();
    let mut cells = HashMap::new();
    for (x, y) in bs.tensor.defined_pairs() {
        let xy = ff.ob(bs.tensor.ob_u(x, y));
        same(bt.tensor.ob(ff.ob(x), ff.ob(y)).unwrap_or(usize::MAX), xy, "the base tensor")?;
        laxator.insert((x, y), n.base.id(xy));
        let mut pc = HashMap::new();
        for (a, e) in lo.lax.mu(x, y).defined_pairs() {
            let b = components[bs.tensor.ob_u(x, y)].ob(lo.lax.mu(x, y).ob_u(a, e));
            let nu = hi.lax.mu_ob(ff.ob(x), ff.ob(y), components[x].ob(a), components[y].ob(e));
            same(nu.unwrap_or(usize::MAX), b, "the fibre tensor")?;
            pc.insert((a, e), n.fibres[xy].id(b));
        }
        cells.insert((x, y), pc);
    }
    same(ff.ob(bs.unit), bt.unit, "the base unit")?;
    let unit = components[bs.unit].ob(lo.lax.unit_obj);
    same(hi.lax.unit_obj, unit, "the unit")?;
    let base = MonoidalFunctorData { underlying: base_fun.clone(), laxator, unit_mor: n.base.id(bt.unit), strength: Strength::Strict, braided: false };
    let monoidal_part = Some(MonoidalIndexedPart { base, cells, unit_cell: n.fibres[bt.unit].id(unit) });
    Ok(Indexed1Cell { source: Arc::new(m.clone()), target: Arc::new(n.clone()), base_fun, components, squares, monoidal_part })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fincat::check_category;
    use crate::fib::check_fibred_1cell;
    use crate::groth::{groth_1cell, grothendieck};
    use crate::indexed::{check_indexed_1cell, check_monoidal_1cell};
    use crate::moncat::check_monoidal;

    #[test]
    fn skeleton_counts_functions() {
        let s = FinSetSkeleton::new(2).unwrap();
        assert!(check_category(&s.cat).unwrap().is_pass());
        assert_eq!(s.cat.n_mors(), 3 + 3 + 5);
        assert_eq!(s.cat.hom(s.ob(2), s.ob(2)).len(), 4);
        let f = s.function(2, 1, &[0, 0]).unwrap();
        assert_eq!(s.table(f), (2, 1, vec![0, 0]));
        assert!(FinSetSkeleton::new(MAX_SET_BOUND + 1).is_err());
    }

    #[test]
    fn skeleton_sums_and_products_are_certified() {
        let s = FinSetSkeleton::new(3).unwrap();
        let w = s.coproducts();
        assert!(w.verify().is_pass());
        let m = w.monoidal().unwrap();
        assert!(m.is_strict());
        assert!(check_monoidal(&m).unwrap().is_pass());
        let p = s.products_in_opposite();
        assert!(p.verify().is_pass());
        let pm = p.monoidal().unwrap();
        assert!(pm.is_strict());
        assert!(check_monoidal(&pm).unwrap().is_pass());
    }

    fn fibred_and_monoidal(lo: &Fixture, hi: &Fixture) -> Indexed1Cell {
        let c = universe_inclusion(lo, hi).unwrap();
        assert!(check_indexed_1cell(&c).unwrap().is_pass());
        let (gm, gn) = (grothendieck(&c.source).unwrap(), grothendieck(&c.target).unwrap());
        let p = groth_1cell(&c, &gm, &gn).unwrap();
        assert!(check_fibred_1cell(&p).unwrap().is_pass());
        let rep = check_monoidal_1cell(&c, &lo.lax, &hi.lax).unwrap();
        assert!(rep.is_pass(), "{rep}");
        c
    }

    #[test]
    fn graph_universes_include() {
        let (lo, hi) = (graph_opindexed(1).unwrap(), graph_opindexed(2).unwrap());
        let mut c = fibred_and_monoidal(&lo, &hi);
        let fibre_of = |&(x, y): &(Ob, Ob)| &hi.lax.carrier.fibres[c.base_fun.ob(lo.lax.base_monoidal.tensor.ob_u(x, y))];
        let mp = c.monoidal_part.as_mut().unwrap();
        let (xy, pc) = mp.cells.iter_mut().find(|(xy, pc)| !pc.is_empty() && fibre_of(xy).n_objs() > 1).unwrap();
        let fib = fibre_of(xy);
        *pc.values_mut().next().unwrap() = fib.morphisms().find(|&g| !fib.is_identity(g)).unwrap();
        assert!(!check_monoidal_1cell(&c, &lo.lax, &hi.lax).unwrap().is_pass());
        assert!(universe_inclusion(&hi, &lo).is_err());
    }

    #[test]
    fn machine_universes_include() {
        let small = DdsBounds { state_bound: 1, ..DdsBounds::default() };
        let lo = dds::dds_indexed(&small).unwrap().fixture;
        let hi = dds::dds_indexed(&DdsBounds::default()).unwrap().fixture;
        let mut c = fibred_and_monoidal(&lo, &hi);
        let u = hi.lax.base_monoidal.unit;
        let fib = &hi.lax.carrier.fibres[u];
        let other = fib.objects().find(|&a| a != hi.lax.unit_obj).unwrap();
        c.monoidal_part.as_mut().unwrap().unit_cell = fib.id(other);
        let rep = check_monoidal_1cell(&c, &lo.lax, &hi.lax).unwrap();
        assert!(!rep.is_pass());
    }
}
