//! Decorators `(FinSet, +, 0) → (Set, ×, 1)` and the network models they induce.

use super::graph::SimpleGraph;
use super::{FinSetSkeleton, Fixture};
use crate::error::{Error, Result};
use crate::fincat::{FinCat, FinFunctor, Ob};
use crate::indexed::{IndexedCat, LaxMonoidalIndexed, Variance};
use crate::moncat::Bifunctor;
use crate::report::LawReport;
use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::Arc;

/// A lax monoidal functor given by formulas on named elements. `map(f, n, a)`
/// applies `F f` for `f: m → n` given by its table; `laxator(m, n, a, b)` is
/// `φ_{m,n}(a, b)`.
#[derive(Clone, Copy)]
pub struct Decorator {
    pub name: &'static str,
    pub elements: fn(usize) -> Vec<String>,
    pub map: fn(&[usize], usize, &str) -> String,
    pub laxator: fn(usize, usize, &str, &str) -> String,
    pub unit: fn() -> String,
}

impl fmt::Debug for Decorator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Decorator({})", self.name)
    }
}

fn graph_elements(n: usize) -> Vec<String> {
    SimpleGraph::all(n).iter().map(SimpleGraph::name).collect()
}

fn graph_map(f: &[usize], n: usize, a: &str) -> String {
    SimpleGraph::parse(a).unwrap().pushforward(f, n).name()
}

fn graph_laxator(_: usize, _: usize, a: &str, b: &str) -> String {
    SimpleGraph::parse(a).unwrap().disjoint_union(&SimpleGraph::parse(b).unwrap()).name()
}

fn marks_parse(a: &str) -> (usize, Vec<usize>) {
    let (n, rest) = a.split_once(':').unwrap();
    (n.parse().unwrap(), rest.chars().map(|c| c.to_digit(10).unwrap() as usize).collect())
}

fn marks_name(n: usize, mut vs: Vec<usize>) -> String {
    vs.sort_unstable();
    vs.dedup();
    format!("{n}:{}", vs.iter().map(|v| v.to_string()).collect::<String>())
}

fn marks_elements(n: usize) -> Vec<String> {
    (0..1usize << n).map(|mask| marks_name(n, (0..n).filter(|i| mask >> i & 1 == 1).collect())).collect()
}

fn marks_map(f: &[usize], n: usize, a: &str) -> String {
    marks_name(n, marks_parse(a).1.into_iter().map(|v| f[v]).collect())
}

fn marks_laxator(m: usize, n: usize, a: &str, b: &str) -> String {
    let vs = marks_parse(a).1.into_iter().chain(marks_parse(b).1.into_iter().map(|v| v + m)).collect();
    marks_name(m + n, vs)
}

fn empty() -> String {
    "0:".into()
}

impl Decorator {
    /// `n ↦` simple graphs on `n` vertices, with edge pushforward and disjoint union.
    pub fn simple_graphs() -> Decorator {
        Decorator { name: "simple-graphs", elements: graph_elements, map: graph_map, laxator: graph_laxator, unit: empty }
    }

    /// `n ↦` subsets of `n`, with direct image and disjoint union.
    pub fn vertex_marks() -> Decorator {
        Decorator { name: "vertex-marks", elements: marks_elements, map: marks_map, laxator: marks_laxator, unit: empty }
    }
}

fn all_functions(m: usize, n: usize) -> Vec<Vec<usize>> {
    let mut out = vec![vec![]];
    for _ in 0..m {
        out = out.into_iter().flat_map(|t| (0..n).map(move |v| [t.clone(), vec![v]].concat())).collect();
    }
    out
}

/// Functoriality, laxator naturality, associativity, unit and symmetry of a
/// decorator on sets of at most `bound` elements.
pub fn check_decorator(d: &Decorator, bound: usize) -> LawReport {
    let mut rep = LawReport::new(format!("decorator {}", d.name));
    let els: Vec<Vec<String>> = (0..=bound).map(d.elements).collect();
    let check = |rep: &mut LawReport, ok: bool, law: &str, w: Vec<String>| {
        rep.tick();
        if !ok {
            rep.fail(law, w);
        }
    };
    for m in 0..=bound {
        let id: Vec<usize> = (0..m).collect();
        for a in &els[m] {
            check(&mut rep, (d.map)(&id, m, a) == *a, "identity", vec![a.clone()]);
        }
        for n in 0..=bound {
            for f in all_functions(m, n) {
                for a in &els[m] {
                    let fa = (d.map)(&f, n, a);
                    check(&mut rep, els[n].contains(&fa), "typing", vec![a.clone(), fa.clone()]);
                    for p in 0..=bound {
                        for g in all_functions(n, p) {
                            let gf: Vec<usize> = f.iter().map(|&i| g[i]).collect();
                            check(&mut rep, (d.map)(&g, p, &fa) == (d.map)(&gf, p, a), "composition", vec![a.clone()]);
                        }
                    }
                }
            }
        }
    }
    for m in 0..=bound {
        for n in 0..=bound - m {
            for a in &els[m] {
                for b in &els[n] {
                    let ab = (d.laxator)(m, n, a, b);
                    check(&mut rep, els[m + n].contains(&ab), "laxator typing", vec![a.clone(), b.clone()]);
                    let swap: Vec<usize> = (0..m).map(|i| i + n).chain(0..n).collect();
                    check(&mut rep, (d.map)(&swap, m + n, &ab) == (d.laxator)(n, m, b, a), "symmetry", vec![a.clone(), b.clone()]);
                    for p in 0..=bound - m - n {
                        for c in &els[p] {
                            let l = (d.laxator)(m + n, p, &ab, c);
                            let r = (d.laxator)(m, n + p, a, &(d.laxator)(n, p, b, c));
                            check(&mut rep, l == r, "associativity", vec![a.clone(), b.clone(), c.clone()]);
                        }
                    }
                    for m2 in 0..=bound {
                        for n2 in 0..=bound - m2 {
                            for f in all_functions(m, m2) {
                                for g in all_functions(n, n2) {
                                    let fg: Vec<usize> = f.iter().copied().chain(g.iter().map(|&v| v + m2)).collect();
                                    let lhs = (d.map)(&fg, m2 + n2, &ab);
                                    let rhs = (d.laxator)(m2, n2, &(d.map)(&f, m2, a), &(d.map)(&g, n2, b));
                                    check(&mut rep, lhs == rhs, "laxator naturality", vec![a.clone(), b.clone()]);
                                }
                            }
                        }
                    }
                }
            }
        }
        let u = (d.unit)();
        for a in &els[m] {
            check(&mut rep, (d.laxator)(0, m, &u, a) == *a, "left unit", vec![a.clone()]);
            check(&mut rep, (d.laxator)(m, 0, a, &u) == *a, "right unit", vec![a.clone()]);
        }
    }
    rep
}

/// The decorator as discrete indexed data over finite sets.
pub fn decorator_indexed(d: &Decorator, bound: usize) -> Result<Fixture> {
    let s = FinSetSkeleton::new(bound)?;
    let w = s.coproducts();
    let b = &s.cat;
    let fibres: Vec<Arc<FinCat>> = b
        .objects()
        .map(|x| {
            let els = (d.elements)(s.size(x));
            Arc::new(FinCat::discrete(&els.iter().map(|e| e.as_str()).collect::<Vec<_>>()))
        })
        .collect();
    let reindex = b
        .morphisms()
        .map(|f| {
            let (_, n, t) = s.table(f);
            let (x, y) = (b.dom(f), b.cod(f));
            let obj_map = fibres[x].objects().map(|a| fibres[y].obj(&(d.map)(&t, n, fibres[x].obj_name(a)))).collect::<Option<Vec<_>>>();
            let obj_map = obj_map.ok_or_else(|| Error::MalformedTable(format!("{} leaves its elements", d.name)))?;
            FinFunctor::into_thin(fibres[x].clone(), fibres[y].clone(), obj_map)
        })
        .collect::<Result<Vec<_>>>()?;
    let carrier = IndexedCat::strict(b.clone(), Variance::Covariant, fibres.clone(), reindex)?;
    let bm = w.monoidal()?;
    let mut laxator = HashMap::new();
    for (x, y) in bm.tensor.defined_pairs() {
        let (m, n, xy) = (s.size(x), s.size(y), bm.tensor.ob_u(x, y));
        let (fx, fy, fxy) = (&fibres[x], &fibres[y], &fibres[xy]);
        let ob = |a: Ob, c: Ob| fxy.obj(&(d.laxator)(m, n, fx.obj_name(a), fy.obj_name(c)));
        laxator.insert((x, y), Bifunctor::build(fx.clone(), fy.clone(), fxy.clone(), ob, |p, q| Some(fxy.id(ob(fx.dom(p), fy.dom(q))?))));
    }
    let unit = fibres[s.ob(0)].obj(&(d.unit)()).ok_or_else(|| Error::MalformedTable("unit is not an element".into()))?;
    let lax = LaxMonoidalIndexed::ordinary(carrier, bm, laxator, unit)?;
    Ok(Fixture { name: format!("decorator-{}-{bound}", d.name), lax, witness: Some(w) })
}

/// A finite monoid on named elements.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FinMonoid {
    pub elements: Vec<String>,
    pub mul: Vec<Vec<usize>>,
    pub unit: usize,
}

impl FinMonoid {
    pub fn check(&self, rep: &mut LawReport, label: &str) {
        let n = self.elements.len();
        let e = &self.elements;
        for a in 0..n {
            rep.tick();
            if self.mul[self.unit][a] != a || self.mul[a][self.unit] != a {
                rep.fail(format!("{label}: unit"), vec![e[a].clone()]);
            }
            for b in 0..n {
                for c in 0..n {
                    rep.tick();
                    if self.mul[self.mul[a][b]][c] != self.mul[a][self.mul[b][c]] {
                        rep.fail(format!("{label}: associativity"), vec![e[a].clone(), e[b].clone(), e[c].clone()]);
                    }
                }
            }
        }
    }

    pub fn is_commutative(&self) -> bool {
        (0..self.elements.len()).all(|a| (0..self.elements.len()).all(|b| self.mul[a][b] == self.mul[b][a]))
    }

    pub fn is_idempotent(&self) -> bool {
        (0..self.elements.len()).all(|a| self.mul[a][a] == a)
    }
}

/// Constituent monoids `F(n)` with `a·b = F(∇)φ(a, b)` and unit `F(!)φ_0`,
/// laxator components `F(m) × F(n) → F(m+n)` and the action of bijections.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NetworkModel {
    pub decorator: String,
    pub monoids: Vec<FinMonoid>,
    /// `(m, n) ↦` table `[a][b] ↦ φ(a, b)`.
    pub laxator: BTreeMap<(usize, usize), Vec<Vec<usize>>>,
    /// `(n, σ) ↦` table of `F σ`.
    pub permutations: BTreeMap<(usize, Vec<usize>), Vec<usize>>,
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    all_functions(n, n).into_iter().filter(|t| (0..n).all(|v| t.contains(&v))).collect()
}

pub fn decorator_to_network_model(d: &Decorator, n_bound: usize) -> Result<NetworkModel> {
    let els: Vec<Vec<String>> = (0..=n_bound).map(d.elements).collect();
    let index: Vec<HashMap<&str, usize>> = els.iter().map(|es| es.iter().enumerate().map(|(i, e)| (e.as_str(), i)).collect()).collect();
    let look = |n: usize, e: &str| index[n].get(e).copied().ok_or_else(|| Error::LawFailure(format!("{e} is not an element of F({n})")));
    let mut monoids = Vec::new();
    for n in 0..=n_bound {
        let codiag: Vec<usize> = (0..2 * n).map(|i| i % n.max(1)).collect();
        let mul = els[n]
            .iter()
            .map(|a| els[n].iter().map(|b| look(n, &(d.map)(&codiag, n, &(d.laxator)(n, n, a, b)))).collect::<Result<Vec<_>>>())
            .collect::<Result<Vec<_>>>()?;
        let unit = look(n, &(d.map)(&[], n, &(d.unit)()))?;
        monoids.push(FinMonoid { elements: els[n].clone(), mul, unit });
    }
    let mut laxator = BTreeMap::new();
    for m in 0..=n_bound {
        for n in 0..=n_bound - m {
            let t = els[m].iter().map(|a| els[n].iter().map(|b| look(m + n, &(d.laxator)(m, n, a, b))).collect::<Result<Vec<_>>>()).collect::<Result<Vec<_>>>()?;
            laxator.insert((m, n), t);
        }
    }
    let mut perms = BTreeMap::new();
    for n in 0..=n_bound {
        for s in permutations(n) {
            let t = els[n].iter().map(|a| look(n, &(d.map)(&s, n, a))).collect::<Result<Vec<_>>>()?;
            perms.insert((n, s), t);
        }
    }
    let nm = NetworkModel { decorator: d.name.into(), monoids, laxator, permutations: perms };
    let rep = check_network_model(&nm);
    match rep.first() {
        None => Ok(nm),
        Some(v) => Err(Error::LawFailure(format!("{}: {}", v.law, v.witness.join(", ")))),
    }
}

/// Monoid laws, commutativity, and that laxator components and bijection
/// actions are monoid morphisms.
pub fn check_network_model(nm: &NetworkModel) -> LawReport {
    let mut rep = LawReport::new(format!("network model of {}", nm.decorator));
    for (n, mo) in nm.monoids.iter().enumerate() {
        mo.check(&mut rep, &format!("F({n})"));
        rep.tick();
        if !mo.is_commutative() {
            rep.fail(format!("F({n}): commutativity"), vec![]);
        }
    }
    for (&(m, n), t) in &nm.laxator {
        let (a, b, c) = (&nm.monoids[m], &nm.monoids[n], &nm.monoids[m + n]);
        rep.tick();
        if t[a.unit][b.unit] != c.unit {
            rep.fail("laxator preserves units", vec![format!("({m}, {n})")]);
        }
        for a1 in 0..a.elements.len() {
            for a2 in 0..a.elements.len() {
                for b1 in 0..b.elements.len() {
                    for b2 in 0..b.elements.len() {
                        rep.tick();
                        if t[a.mul[a1][a2]][b.mul[b1][b2]] != c.mul[t[a1][b1]][t[a2][b2]] {
                            rep.fail("laxator preserves products", vec![a.elements[a1].clone(), a.elements[a2].clone(), b.elements[b1].clone(), b.elements[b2].clone()]);
                        }
                    }
                }
            }
        }
    }
    for ((n, s), t) in &nm.permutations {
        let mo = &nm.monoids[*n];
        rep.tick();
        if t[mo.unit] != mo.unit {
            rep.fail("bijection preserves unit", vec![format!("{s:?}")]);
        }
        for a in 0..mo.elements.len() {
            for b in 0..mo.elements.len() {
                rep.tick();
                if t[mo.mul[a][b]] != mo.mul[t[a]][t[b]] {
                    rep.fail("bijection preserves products", vec![format!("{s:?}"), mo.elements[a].clone(), mo.elements[b].clone()]);
                }
            }
        }
    }
    rep
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corr::global_to_fibrewise;

    #[test]
    fn decorators_are_lax_monoidal() {
        for d in [Decorator::simple_graphs(), Decorator::vertex_marks()] {
            let rep = check_decorator(&d, 2);
            assert!(rep.is_pass(), "{rep}");
        }
    }

    #[test]
    fn graph_network_model() {
        let nm = decorator_to_network_model(&Decorator::simple_graphs(), 3).unwrap();
        assert_eq!(nm.monoids[0].elements.len(), 1);
        assert_eq!(nm.monoids[1].elements.len(), 2);
        for m in &nm.monoids {
            assert!(m.is_commutative() && m.is_idempotent());
        }
        let m3 = &nm.monoids[3];
        let ix = |s: &str| m3.elements.iter().position(|e| e == s).unwrap();
        assert_eq!(m3.mul[ix("3:02.10")][ix("3:01.11")], ix("3:01.02.10.11"));
    }

    #[test]
    fn distinct_decorators_give_distinct_models() {
        let a = decorator_to_network_model(&Decorator::simple_graphs(), 2).unwrap();
        let b = decorator_to_network_model(&Decorator::vertex_marks(), 2).unwrap();
        assert_ne!(a, b);
    }

    #[test]
    fn transfer_agrees_with_constituent_monoid() {
        let d = Decorator::simple_graphs();
        let fx = decorator_indexed(&d, 3).unwrap();
        let f = global_to_fibrewise(&fx.lax, fx.witness.as_ref().unwrap()).unwrap();
        let nm = decorator_to_network_model(&d, 1).unwrap();
        let b = &fx.lax.carrier.base;
        let x = b.obj("1").unwrap();
        let mon = f.per_fibre[x].as_ref().unwrap();
        let fib = &fx.lax.carrier.fibres[x];
        let m1 = &nm.monoids[1];
        for (i, a) in m1.elements.iter().enumerate() {
            for (j, c) in m1.elements.iter().enumerate() {
                let t = mon.tensor.ob_u(fib.obj(a).unwrap(), fib.obj(c).unwrap());
                assert_eq!(fib.obj_name(t), m1.elements[m1.mul[i][j]]);
            }
        }
        assert_eq!(fib.obj_name(mon.unit), m1.elements[m1.unit]);
    }
}
