//! Simple directed graphs with loops over bounded vertex sets.

use super::{FinSetSkeleton, Fixture};
use crate::corr::{check_cocartesian_total, unique_criterion};
use crate::error::{Error, Result};
use crate::fincat::{FinCat, FinFunctor, Ob};
use crate::groth::{monoidal_grothendieck, MonoidalGrothResult};
use crate::indexed::{IndexedCat, LaxMonoidalIndexed, Variance};
use crate::moncat::Bifunctor;
use crate::report::LawReport;
use std::collections::{BTreeSet, HashMap};
use std::sync::Arc;

pub const MAX_VERTEX_BOUND: usize = 3;

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SimpleGraph {
    pub vertices: usize,
    pub edges: BTreeSet<(usize, usize)>,
}

impl SimpleGraph {
    pub fn new(vertices: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Result<SimpleGraph> {
        let edges: BTreeSet<_> = edges.into_iter().collect();
        if edges.iter().any(|&(s, t)| s >= vertices || t >= vertices) {
            return Err(Error::MalformedTable(format!("edge outside {vertices} vertices")));
        }
        Ok(SimpleGraph { vertices, edges })
    }

    pub fn empty(vertices: usize) -> SimpleGraph {
        SimpleGraph { vertices, edges: BTreeSet::new() }
    }

    /// All graphs on `n` vertices, ordered by edge bitmask.
    pub fn all(n: usize) -> Vec<SimpleGraph> {
        let pairs: Vec<(usize, usize)> = (0..n).flat_map(|s| (0..n).map(move |t| (s, t))).collect();
        (0..1u64 << pairs.len())
            .map(|mask| SimpleGraph { vertices: n, edges: pairs.iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1).map(|(_, e)| *e).collect() })
            .collect()
    }

    /// `n:st.st…` listing edges `s → t`.
    pub fn name(&self) -> String {
        let edges: Vec<String> = self.edges.iter().map(|(s, t)| format!("{s}{t}")).collect();
        format!("{}:{}", self.vertices, edges.join("."))
    }

    pub fn parse(name: &str) -> Option<SimpleGraph> {
        let (n, rest) = name.split_once(':')?;
        let n: usize = n.parse().ok()?;
        let mut edges = Vec::new();
        for e in rest.split('.').filter(|e| !e.is_empty()) {
            let d: Vec<usize> = e.chars().map(|c| c.to_digit(10).map(|d| d as usize)).collect::<Option<_>>()?;
            let [s, t] = d[..] else { return None };
            edges.push((s, t));
        }
        SimpleGraph::new(n, edges).ok()
    }

    /// Image of the edges along a vertex map into `n` vertices.
    pub fn pushforward(&self, f: &[usize], n: usize) -> SimpleGraph {
        SimpleGraph { vertices: n, edges: self.edges.iter().map(|&(s, t)| (f[s], f[t])).collect() }
    }

    /// Disjoint union, with the vertices of `other` placed after those of `self`.
    pub fn disjoint_union(&self, other: &SimpleGraph) -> SimpleGraph {
        let k = self.vertices;
        let edges = self.edges.iter().copied().chain(other.edges.iter().map(|&(s, t)| (s + k, t + k))).collect();
        SimpleGraph { vertices: k + other.vertices, edges }
    }

    /// Edge union of two graphs on the same vertices.
    pub fn overlay(&self, other: &SimpleGraph) -> Option<SimpleGraph> {
        (self.vertices == other.vertices).then(|| SimpleGraph { vertices: self.vertices, edges: self.edges.union(&other.edges).copied().collect() })
    }
}

/// Graphs on `X` ordered by edge inclusion: the vertex-fixing homomorphisms.
fn graph_fibre(n: usize) -> (Arc<FinCat>, Vec<SimpleGraph>) {
    let gs = SimpleGraph::all(n);
    let names: Vec<String> = gs.iter().map(SimpleGraph::name).collect();
    let c = FinCat::preorder(&names, |p, q| gs[p].edges.is_subset(&gs[q].edges));
    let ordered = c.obj_names().iter().map(|s| SimpleGraph::parse(s).unwrap()).collect();
    (Arc::new(c), ordered)
}

/// `X ↦ Grph_X` over finite sets of at most `vertex_bound` elements, with edge
/// pushforward and disjoint union as laxator.
pub fn graph_opindexed(vertex_bound: usize) -> Result<Fixture> {
    if vertex_bound > MAX_VERTEX_BOUND {
        return Err(Error::SizeLimitExceeded(format!("vertex bound {vertex_bound} exceeds {MAX_VERTEX_BOUND}")));
    }
    let s = FinSetSkeleton::new(vertex_bound)?;
    let w = s.coproducts();
    let b = &s.cat;
    let (fibres, graphs): (Vec<_>, Vec<_>) = b.objects().map(|x| graph_fibre(s.size(x))).unzip();
    let at = |x: Ob, g: &SimpleGraph| fibres[x].obj(&g.name()).unwrap();
    let reindex = b
        .morphisms()
        .map(|f| {
            let (_, n, t) = s.table(f);
            let (x, y) = (b.dom(f), b.cod(f));
            FinFunctor::into_thin(fibres[x].clone(), fibres[y].clone(), graphs[x].iter().map(|g| at(y, &g.pushforward(&t, n))).collect())
        })
        .collect::<Result<Vec<_>>>()?;
    let carrier = IndexedCat::strict(b.clone(), Variance::Covariant, fibres.clone(), reindex)?;
    let bm = w.monoidal()?;
    let mut laxator = HashMap::new();
    for (x, y) in bm.tensor.defined_pairs() {
        let xy = bm.tensor.ob_u(x, y);
        let (fx, fy, fxy) = (&fibres[x], &fibres[y], &fibres[xy]);
        let union = |a: Ob, c: Ob| Some(at(xy, &graphs[x][a].disjoint_union(&graphs[y][c])));
        let bi = Bifunctor::build(fx.clone(), fy.clone(), fxy.clone(), union, |p, q| {
            let (d, c) = (union(fx.dom(p), fy.dom(q))?, union(fx.cod(p), fy.cod(q))?);
            fxy.hom(d, c).first().copied()
        });
        laxator.insert((x, y), bi);
    }
    let unit = at(s.ob(0), &SimpleGraph::empty(0));
    let lax = LaxMonoidalIndexed::ordinary(carrier, bm, laxator, unit)?;
    Ok(Fixture { name: format!("graphs-{vertex_bound}"), lax, witness: Some(w) })
}

/// Total category of graphs over all vertex sets, its projection and the
/// disjoint-union tensor, with the coproduct certification of that tensor.
pub fn vertex_opfibration(vertex_bound: usize) -> Result<(MonoidalGrothResult, LawReport)> {
    let fx = graph_opindexed(vertex_bound)?;
    let w = fx.witness.as_ref().unwrap();
    let crit = unique_criterion(&fx.lax, w)?;
    let rep = check_cocartesian_total(&fx.lax, &crit, w)?;
    Ok((monoidal_grothendieck(&fx.lax)?, rep))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::indexed::check_lax_monoidal;

    #[test]
    fn graph_names_round_trip() {
        let g = SimpleGraph::new(3, [(0, 1), (2, 2)]).unwrap();
        assert_eq!(g.name(), "3:01.22");
        assert_eq!(SimpleGraph::parse("3:01.22"), Some(g));
        assert_eq!(SimpleGraph::parse("0:"), Some(SimpleGraph::empty(0)));
        assert!(SimpleGraph::parse("1:01").is_none());
    }

    #[test]
    fn union_offsets_the_second_graph() {
        let a = SimpleGraph::new(2, [(0, 1)]).unwrap();
        let b = SimpleGraph::new(1, [(0, 0)]).unwrap();
        assert_eq!(a.disjoint_union(&b), SimpleGraph::new(3, [(0, 1), (2, 2)]).unwrap());
    }

    #[test]
    fn fixture_sizes_and_laws() {
        let fx = graph_opindexed(2).unwrap();
        let m = &fx.lax.carrier;
        let sizes: Vec<usize> = m.fibres.iter().map(|f| f.n_objs()).collect();
        assert_eq!(sizes.iter().sum::<usize>(), 19);
        assert!(m.fibres.iter().any(|f| f.n_objs() == 2));
        assert!(m.fibres.iter().any(|f| f.n_objs() == 1 && f.n_mors() == 1));
        let rep = check_lax_monoidal(&fx.lax).unwrap();
        assert!(rep.is_pass(), "{rep}");
        assert!(graph_opindexed(MAX_VERTEX_BOUND + 1).is_err());
    }
}
