//! Seeded generators of finite test data: concrete categories, strict and
//! non-strict indexed categories, cocartesian lattices and lax monoidal
//! indexed categories over them.

use crate::error::{Error, Result};
use crate::fincat::{pair_name, FinCat, FinFunctor, Mor, Ob};
use crate::indexed::{IndexedCat, LaxMonoidalIndexed, Variance};
use crate::moncat::{find_cocartesian, Bifunctor, CocartesianWitness, MonoidalData, SearchLimits};
use rand::rngs::StdRng;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use std::collections::{HashMap, HashSet, VecDeque};
use std::sync::Arc;

pub fn rng(seed: u64) -> StdRng {
    StdRng::seed_from_u64(seed)
}

/// Identifier of a function `m → n` given by its table: `m>n:digits`.
pub fn function_name(m: usize, n: usize, table: &[usize]) -> String {
    let digits: String = table.iter().map(|d| char::from_digit(*d as u32, 36).unwrap()).collect();
    format!("{m}>{n}:{digits}")
}

/// Category of the given functions between finite sets, which must contain
/// identities and be closed under composition. Object `i` is named `names[i]`.
pub fn concrete_category(names: &[String], sizes: &[usize], functions: &[(Ob, Ob, Vec<usize>)]) -> Result<FinCat> {
    let mut index = HashMap::new();
    let mut mors = Vec::new();
    for (i, (d, c, t)) in functions.iter().enumerate() {
        if t.len() != sizes[*d] || t.iter().any(|&v| v >= sizes[*c]) {
            return Err(Error::MalformedTable(format!("function {i} is not typed")));
        }
        if index.insert((*d, *c, t.clone()), i).is_some() {
            return Err(Error::DuplicateName(format!("function {i}")));
        }
        let label = format!("{}>{}:{}", names[*d], names[*c], function_name(0, 0, t).trim_start_matches("0>0:"));
        mors.push((label, *d, *c));
    }
    let ids = (0..sizes.len())
        .map(|x| index.get(&(x, x, (0..sizes[x]).collect::<Vec<_>>())).copied())
        .collect::<Option<Vec<_>>>()
        .ok_or_else(|| Error::MalformedTable("identity missing".into()))?;
    FinCat::build(names.to_vec(), mors, ids, |g, f| {
        let (_, c, tg) = &functions[g];
        let (d, _, tf) = &functions[f];
        let t: Vec<usize> = tf.iter().map(|&v| tg[v]).collect();
        index.get(&(*d, *c, t)).copied()
    })
}

/// Closes a set of generating functions under composition, with identities.
/// Returns `None` when more than `cap` morphisms would be needed.
pub fn close_functions(sizes: &[usize], gens: &[(Ob, Ob, Vec<usize>)], cap: usize) -> Option<Vec<(Ob, Ob, Vec<usize>)>> {
    let mut seen: HashSet<(Ob, Ob, Vec<usize>)> = HashSet::new();
    let mut all = Vec::new();
    let mut queue = VecDeque::new();
    for (x, &n) in sizes.iter().enumerate() {
        queue.push_back((x, x, (0..n).collect::<Vec<_>>()));
    }
    queue.extend(gens.iter().cloned());
    while let Some(f) = queue.pop_front() {
        if !seen.insert(f.clone()) {
            continue;
        }
        all.push(f.clone());
        if all.len() > cap {
            return None;
        }
        for g in gens {
            if g.0 == f.1 {
                queue.push_back((f.0, g.1, f.2.iter().map(|&v| g.2[v]).collect()));
            }
            if f.0 == g.1 {
                queue.push_back((g.0, f.1, g.2.iter().map(|&v| f.2[v]).collect()));
            }
        }
    }
    Some(all)
}

/// A random category of functions on at most `max_objs` sets of size at most `max_set`.
pub fn random_category(r: &mut impl Rng, max_objs: usize, max_set: usize, cap: usize) -> FinCat {
    loop {
        let n = r.gen_range(1..=max_objs);
        let sizes: Vec<usize> = (0..n).map(|_| r.gen_range(1..=max_set)).collect();
        let k = r.gen_range(0..=n + 1);
        let gens: Vec<(Ob, Ob, Vec<usize>)> = (0..k)
            .map(|_| {
                let (d, c) = (r.gen_range(0..n), r.gen_range(0..n));
                (d, c, (0..sizes[d]).map(|_| r.gen_range(0..sizes[c])).collect())
            })
            .collect();
        let Some(all) = close_functions(&sizes, &gens, cap) else { continue };
        let names: Vec<String> = (0..n).map(|i| format!("c{i}")).collect();
        return concrete_category(&names, &sizes, &all).expect("closed family");
    }
}

/// Covariant strict data `x ↦` disjoint union of `Hom(c, x)` over chosen
/// objects `c`, reindexed by post-composition. Fibres are discrete or, on an
/// upward-closed set of objects, codiscrete.
pub fn random_strict_indexed(r: &mut impl Rng, base: Arc<FinCat>, max_fibre: usize) -> IndexedCat {
    let b = &*base;
    let mut reps: Vec<Ob> = Vec::new();
    let mut order: Vec<Ob> = b.objects().collect();
    order.shuffle(r);
    for c in order {
        let fits = b.objects().all(|x| reps.iter().chain([&c]).map(|&d| b.hom(d, x).len()).sum::<usize>() <= max_fibre);
        if fits && r.gen_bool(0.7) {
            reps.push(c);
        }
    }
    let mut codisc: HashSet<Ob> = b.objects().filter(|_| r.gen_bool(0.4)).collect();
    loop {
        let more: Vec<Ob> = codisc.iter().flat_map(|&x| b.out_of(x).iter().map(|&f| b.cod(f))).filter(|y| !codisc.contains(y)).collect();
        if more.is_empty() {
            break;
        }
        codisc.extend(more);
    }
    let elems: Vec<Vec<(usize, Mor)>> = b
        .objects()
        .map(|x| reps.iter().enumerate().flat_map(|(i, &c)| b.hom(c, x).iter().map(move |&h| (i, h))).collect())
        .collect();
    let name = |(i, h): (usize, Mor)| format!("{i}:{}", b.mor_name(h));
    let fibres: Vec<Arc<FinCat>> = b
        .objects()
        .map(|x| {
            let names: Vec<String> = elems[x].iter().map(|&e| name(e)).collect();
            Arc::new(if codisc.contains(&x) { FinCat::codiscrete(&names) } else { FinCat::preorder(&names, |p, q| p == q) })
        })
        .collect();
    let reindex = b
        .morphisms()
        .map(|f| {
            let (s, t) = (&fibres[b.dom(f)], &fibres[b.cod(f)]);
            let obj = |a: Ob| {
                let (i, h) = elems[b.dom(f)].iter().copied().find(|&e| name(e) == s.obj_name(a)).unwrap();
                t.obj(&name((i, b.compose(f, h)))).unwrap()
            };
            let obj_map: Vec<Ob> = s.objects().map(obj).collect();
            let mor_map = s.morphisms().map(|k| t.hom(obj_map[s.dom(k)], obj_map[s.cod(k)])[0]).collect();
            FinFunctor::new(s.clone(), t.clone(), obj_map, mor_map).unwrap()
        })
        .collect();
    IndexedCat::strict(base, Variance::Covariant, fibres, reindex).unwrap()
}

/// Two-object codiscrete category, used to twist strict data into pseudo data.
pub fn twist_factor() -> Arc<FinCat> {
    Arc::new(FinCat::codiscrete(&["0".to_string(), "1".to_string()]))
}

struct Twist {
    k: Arc<FinCat>,
    prods: Vec<Arc<FinCat>>,
}

impl Twist {
    fn new(fibres: &[Arc<FinCat>]) -> Twist {
        let k = twist_factor();
        let prods = fibres.iter().map(|c| Arc::new(FinCat::product(c, &k))).collect();
        Twist { k, prods }
    }

    fn ob(&self, x: Ob, c: &FinCat, a: Ob, i: Ob) -> Ob {
        self.prods[x].obj(&pair_name(c.obj_name(a), self.k.obj_name(i))).unwrap()
    }

    /// Pair of a fibre morphism and the unique `i → j` in the factor.
    fn mor(&self, x: Ob, c: &FinCat, p: Mor, i: Ob, j: Ob) -> Mor {
        let kk = self.k.hom(i, j)[0];
        self.prods[x].mor(&pair_name(c.mor_name(p), self.k.mor_name(kk))).unwrap()
    }

    fn split_ob(&self, x: Ob, c: &FinCat, e: Ob) -> (Ob, Ob) {
        let parts = crate::fincat::split_tuple(self.prods[x].obj_name(e)).unwrap();
        (c.obj(&parts[0]).unwrap(), self.k.obj(&parts[1]).unwrap())
    }

    fn split_mor(&self, x: Ob, c: &FinCat, p: Mor) -> Mor {
        let parts = crate::fincat::split_tuple(self.prods[x].mor_name(p)).unwrap();
        c.mor(&parts[0]).unwrap()
    }
}

fn random_map(r: &mut impl Rng) -> [Ob; 2] {
    [r.gen_range(0..2), r.gen_range(0..2)]
}

/// `M x × K` with `K` codiscrete on two objects, reindexing `M f × σ_f` for a
/// random `σ_f`, and cells paired with the unique comparisons in `K`.
pub fn twist(m: &IndexedCat, r: &mut impl Rng) -> IndexedCat {
    twist_with(m, &m.base.morphisms().map(|_| random_map(r)).collect::<Vec<_>>())
}

fn twist_with(m: &IndexedCat, sigma: &[[Ob; 2]]) -> IndexedCat {
    let m = &m.covariant_view();
    let b = &*m.base;
    let tw = Twist::new(&m.fibres);
    let reindex: Vec<FinFunctor> = b
        .morphisms()
        .map(|f| {
            let (x, y) = (b.dom(f), b.cod(f));
            let (cx, cy) = (&*m.fibres[x], &*m.fibres[y]);
            let (s, t) = (&tw.prods[x], &tw.prods[y]);
            let rf = &m.reindex[f];
            let obj_map: Vec<Ob> = s
                .objects()
                .map(|e| {
                    let (a, i) = tw.split_ob(x, cx, e);
                    tw.ob(y, cy, rf.ob(a), sigma[f][i])
                })
                .collect();
            let mor_map = s
                .morphisms()
                .map(|p| {
                    let q = tw.split_mor(x, cx, p);
                    let (_, i) = tw.split_ob(x, cx, s.dom(p));
                    let (_, j) = tw.split_ob(x, cx, s.cod(p));
                    tw.mor(y, cy, rf.mor(q), sigma[f][i], sigma[f][j])
                })
                .collect();
            FinFunctor::new(s.clone(), t.clone(), obj_map, mor_map).unwrap()
        })
        .collect();
    let mut compositor = HashMap::new();
    for f in b.morphisms() {
        for &g in b.out_of(b.cod(f)) {
            let gf = b.compose(g, f);
            let (x, z) = (b.dom(f), b.cod(g));
            let (cx, cz) = (&*m.fibres[x], &*m.fibres[z]);
            let comps = tw.prods[x]
                .objects()
                .map(|e| {
                    let (a, i) = tw.split_ob(x, cx, e);
                    tw.mor(z, cz, m.delta(g, f, a), sigma[gf][i], sigma[g][sigma[f][i]])
                })
                .collect();
            compositor.insert((g, f), comps);
        }
    }
    let unitor = b
        .objects()
        .map(|x| {
            let cx = &*m.fibres[x];
            let one = b.id(x);
            tw.prods[x]
                .objects()
                .map(|e| {
                    let (a, i) = tw.split_ob(x, cx, e);
                    tw.mor(x, cx, m.gamma(x, a), sigma[one][i], i)
                })
                .collect()
        })
        .collect();
    IndexedCat { base: m.base.clone(), variance: Variance::Covariant, fibres: tw.prods.clone(), reindex, compositor, unitor, strict: false }
        .detect_strict()
}

/// Twists a lax monoidal indexed category: fibres `× K`, laxator `μ × ν` for a
/// random `ν: K × K → K`, unit `(μ_0, k_0)`, every cell paired with the unique
/// comparison in `K`.
pub fn twist_lax(l: &LaxMonoidalIndexed, r: &mut impl Rng) -> LaxMonoidalIndexed {
    let m = &l.carrier;
    let b = &*m.base;
    let bm = &l.base_monoidal;
    let sigma: Vec<[Ob; 2]> = b.morphisms().map(|_| random_map(r)).collect();
    let nu = [[r.gen_range(0..2), r.gen_range(0..2)], [r.gen_range(0..2), r.gen_range(0..2)]];
    let nu0 = r.gen_range(0..2);
    let carrier = twist_with(m, &sigma);
    let tw = Twist::new(&m.fibres);
    let fc = |x: Ob| &*m.fibres[x];
    let mut laxator = HashMap::new();
    for (&(x, y), mu) in &l.laxator {
        let xy = bm.tensor.ob_u(x, y);
        let (px, py) = (&tw.prods[x], &tw.prods[y]);
        let bi = Bifunctor::build(
            px.clone(),
            py.clone(),
            tw.prods[xy].clone(),
            |e1, e2| {
                let ((a, i), (c, j)) = (tw.split_ob(x, fc(x), e1), tw.split_ob(y, fc(y), e2));
                Some(tw.ob(xy, fc(xy), mu.ob(a, c)?, nu[i][j]))
            },
            |p, q| {
                let (pa, qa) = (tw.split_mor(x, fc(x), p), tw.split_mor(y, fc(y), q));
                let (_, i) = tw.split_ob(x, fc(x), px.dom(p));
                let (_, i2) = tw.split_ob(x, fc(x), px.cod(p));
                let (_, j) = tw.split_ob(y, fc(y), py.dom(q));
                let (_, j2) = tw.split_ob(y, fc(y), py.cod(q));
                Some(tw.mor(xy, fc(xy), mu.mor(pa, qa)?, nu[i][j], nu[i2][j2]))
            },
        );
        laxator.insert((x, y), bi);
    }
    let mut laxator_cells = HashMap::new();
    for (&(f, g), cells) in &l.laxator_cells {
        let Some(fg) = bm.tensor.mor(f, g) else { continue };
        let (x, y, z) = (b.dom(f), b.dom(g), b.cod(fg));
        let mut out = HashMap::new();
        for e1 in tw.prods[x].objects() {
            for e2 in tw.prods[y].objects() {
                let ((a, i), (c, j)) = (tw.split_ob(x, fc(x), e1), tw.split_ob(y, fc(y), e2));
                let Some(&k) = cells.get(&(a, c)) else { continue };
                out.insert((e1, e2), tw.mor(z, fc(z), k, sigma[fg][nu[i][j]], nu[sigma[f][i]][sigma[g][j]]));
            }
        }
        laxator_cells.insert((f, g), out);
    }
    let mut omega = HashMap::new();
    for (&(x, y, z), cells) in &l.omega {
        let al = bm.alpha(x, y, z);
        let t = b.cod(al);
        let mut out = HashMap::new();
        for e1 in tw.prods[x].objects() {
            for e2 in tw.prods[y].objects() {
                for e3 in tw.prods[z].objects() {
                    let ((a, i), (c, j), (d, k)) = (tw.split_ob(x, fc(x), e1), tw.split_ob(y, fc(y), e2), tw.split_ob(z, fc(z), e3));
                    let Some(&w) = cells.get(&(a, c, d)) else { continue };
                    out.insert((e1, e2, e3), tw.mor(t, fc(t), w, sigma[al][nu[nu[i][j]][k]], nu[i][nu[j][k]]));
                }
            }
        }
        omega.insert((x, y, z), out);
    }
    let (mut zeta, mut xi) = (HashMap::new(), HashMap::new());
    for (&x, cells) in &l.zeta {
        let rr = bm.right_unitor[&x];
        let out = tw.prods[x]
            .objects()
            .filter_map(|e| {
                let (a, i) = tw.split_ob(x, fc(x), e);
                cells.get(&a).map(|&k| (e, tw.mor(x, fc(x), k, sigma[rr][nu[i][nu0]], i)))
            })
            .collect();
        zeta.insert(x, out);
    }
    for (&x, cells) in &l.xi {
        let lu = bm.left_unitor[&x];
        let out = tw.prods[x]
            .objects()
            .filter_map(|e| {
                let (a, i) = tw.split_ob(x, fc(x), e);
                cells.get(&a).map(|&k| (e, tw.mor(x, fc(x), k, i, sigma[lu][nu[nu0][i]])))
            })
            .collect();
        xi.insert(x, out);
    }
    let braid_cell = l.braid_cell.as_ref().map(|vs| {
        let bb = bm.braiding.as_ref().unwrap();
        vs.iter()
            .map(|(&(x, y), cells)| {
                let beta = bb[&(x, y)];
                let t = b.cod(beta);
                let mut out = HashMap::new();
                for e1 in tw.prods[x].objects() {
                    for e2 in tw.prods[y].objects() {
                        let ((a, i), (c, j)) = (tw.split_ob(x, fc(x), e1), tw.split_ob(y, fc(y), e2));
                        let Some(&k) = cells.get(&(a, c)) else { continue };
                        out.insert((e1, e2), tw.mor(t, fc(t), k, sigma[beta][nu[i][j]], nu[j][i]));
                    }
                }
                ((x, y), out)
            })
            .collect()
    });
    let unit_obj = tw.ob(bm.unit, fc(bm.unit), l.unit_obj, nu0);
    LaxMonoidalIndexed {
        carrier,
        base_monoidal: bm.clone(),
        laxator,
        laxator_cells,
        unit_obj,
        omega,
        zeta,
        xi,
        braid_cell,
        symmetric: l.symmetric,
    }
}

/// Random union-closed family of subsets of `{0..bits}` containing `∅`,
/// ordered by inclusion, with its join witness.
pub fn random_lattice(r: &mut impl Rng, bits: u32, max_objs: usize) -> (Arc<FinCat>, CocartesianWitness) {
    let mut sets: Vec<u32> = vec![0];
    let universe = 1u32 << bits;
    for _ in 0..r.gen_range(1..=max_objs) {
        let s = r.gen_range(0..universe);
        let mut next = sets.clone();
        for &t in &sets {
            next.push(t | s);
        }
        next.sort_unstable();
        next.dedup();
        if next.len() <= max_objs {
            sets = next;
        }
    }
    lattice_of(&sets, bits)
}

/// Inclusion order on the given union-closed family.
pub fn lattice_of(sets: &[u32], bits: u32) -> (Arc<FinCat>, CocartesianWitness) {
    let names: Vec<String> = sets.iter().map(|&s| (0..bits).map(|i| if s >> i & 1 == 1 { '1' } else { '0' }).collect()).collect();
    let c = Arc::new(FinCat::preorder(&names, |p, q| sets[p] & !sets[q] == 0));
    let w = find_cocartesian(&c, SearchLimits { max_objects: 64 }).expect("family contains the empty set");
    (c, w)
}

fn subposet(base: &FinCat, below: &[Ob]) -> Arc<FinCat> {
    let names: Vec<String> = below.iter().map(|&a| base.obj_name(a).to_string()).collect();
    Arc::new(FinCat::preorder(&names, |p, q| !base.hom(below[p], below[q]).is_empty()))
}

/// `x ↦ ↓x` with inclusions as reindexing and `μ(a, b) = a ∨ b`.
pub fn downset_laxator(base: &Arc<FinCat>, w: &CocartesianWitness) -> Result<LaxMonoidalIndexed> {
    let b = &**base;
    let bm = w.monoidal()?;
    let downs: Vec<Vec<Ob>> = b.objects().map(|x| b.objects().filter(|&a| !b.hom(a, x).is_empty()).collect()).collect();
    let fibres: Vec<Arc<FinCat>> = b.objects().map(|x| subposet(b, &downs[x])).collect();
    let at = |x: Ob, a: Ob| fibres[x].obj(b.obj_name(a)).unwrap();
    let lift = |s: &Arc<FinCat>, t: &Arc<FinCat>, obj: &dyn Fn(Ob) -> Ob| {
        let obj_map: Vec<Ob> = s.objects().map(obj).collect();
        let mor_map = s.morphisms().map(|k| t.hom(obj_map[s.dom(k)], obj_map[s.cod(k)])[0]).collect();
        FinFunctor::new(s.clone(), t.clone(), obj_map, mor_map)
    };
    let reindex = b
        .morphisms()
        .map(|f| {
            let (x, y) = (b.dom(f), b.cod(f));
            lift(&fibres[x], &fibres[y], &|a| at(y, downs[x][a]))
        })
        .collect::<Result<Vec<_>>>()?;
    let carrier = IndexedCat::strict(base.clone(), Variance::Covariant, fibres.clone(), reindex)?;
    let mut laxator = HashMap::new();
    for (x, y) in bm.tensor.defined_pairs() {
        let xy = bm.tensor.ob_u(x, y);
        let (fx, fy, fxy) = (&fibres[x], &fibres[y], &fibres[xy]);
        let join = |a: Ob, c: Ob| w.sum(downs[x][a], downs[y][c]).map(|j| at(xy, j));
        laxator.insert(
            (x, y),
            Bifunctor::build(fx.clone(), fy.clone(), fxy.clone(), join, |p, q| {
                let (s, t) = (join(fx.dom(p), fy.dom(q))?, join(fx.cod(p), fy.cod(q))?);
                fxy.hom(s, t).first().copied()
            }),
        );
    }
    let unit_obj = at(w.initial, w.initial);
    LaxMonoidalIndexed::ordinary(carrier, bm, laxator, unit_obj)
}

/// Discrete strict monoidal category on `Z/n` under addition.
pub fn cyclic_monoid(n: usize) -> MonoidalData {
    let names: Vec<String> = (0..n).map(|i| format!("z{i}")).collect();
    let refs: Vec<&str> = names.iter().map(|s| s.as_str()).collect();
    let c = Arc::new(FinCat::discrete(&refs));
    let ix = |i: usize| c.obj(&names[i % n]).unwrap();
    let val = |a: Ob| names.iter().position(|s| s == c.obj_name(a)).unwrap();
    let tensor = Bifunctor::build(c.clone(), c.clone(), c.clone(), |a, b| Some(ix(val(a) + val(b))), |p, q| Some(c.id(ix(val(c.dom(p)) + val(c.dom(q))))));
    let mut m = MonoidalData::strict(c.clone(), tensor, ix(0));
    m.braiding = Some(m.tensor.defined_pairs().into_iter().map(|(a, b)| ((a, b), c.id(m.tensor.ob_u(a, b)))).collect());
    m.symmetric = true;
    m
}

/// One object with endomorphisms `Z/n`; the tensor adds morphisms.
pub fn delooping(n: usize) -> MonoidalData {
    let mors: Vec<(String, Ob, Ob)> = (0..n).map(|i| (format!("g{i}"), 0, 0)).collect();
    let c = Arc::new(FinCat::build(vec!["*".into()], mors, vec![0], |g, f| Some((g + f) % n)).unwrap());
    let g = |i: usize| c.mor(&format!("g{}", i % n)).unwrap();
    let val = |p: Mor| c.mor_name(p)[1..].parse::<usize>().unwrap();
    let tensor = Bifunctor::build(c.clone(), c.clone(), c.clone(), |_, _| Some(0), |p, q| Some(g(val(p) + val(q))));
    let mut m = MonoidalData::strict(c.clone(), tensor, 0);
    m.braiding = Some([((0, 0), c.id(0))].into_iter().collect());
    m.symmetric = true;
    m
}

/// Every fibre is the strict monoidal `c`, reindexing is the identity and
/// `μ = ⊗_c`.
pub fn constant_laxator(base: &Arc<FinCat>, w: &CocartesianWitness, c: &MonoidalData) -> Result<LaxMonoidalIndexed> {
    let bm = w.monoidal()?;
    let carrier = IndexedCat::constant(base.clone(), Variance::Covariant, c.base.clone());
    let laxator = bm.tensor.defined_pairs().into_iter().map(|p| (p, c.tensor.clone())).collect();
    LaxMonoidalIndexed::ordinary(carrier, bm, laxator, c.unit)
}

/// A random lax monoidal indexed category over a random lattice: down-sets or
/// a constant cyclic monoid, twisted when `pseudo` is set.
pub fn random_cocartesian_lax(r: &mut impl Rng, pseudo: bool) -> (LaxMonoidalIndexed, CocartesianWitness) {
    let (base, w) = random_lattice(r, 2, 4);
    let l = if r.gen_bool(0.5) { downset_laxator(&base, &w) } else { constant_laxator(&base, &w, &cyclic_monoid(r.gen_range(1..=2))) }
        .expect("generated laxator");
    if pseudo {
        (twist_lax(&l, r), w)
    } else {
        (l, w)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fincat::check_category;
    use crate::indexed::{check_lax_monoidal, check_pseudofunctor};

    #[test]
    fn random_categories_are_categories() {
        let mut r = rng(1);
        for _ in 0..20 {
            let c = random_category(&mut r, 3, 2, 30);
            assert!(check_category(&c).unwrap().is_pass());
        }
    }

    #[test]
    fn strict_and_twisted_data_are_pseudofunctors() {
        let mut r = rng(2);
        for _ in 0..10 {
            let base = Arc::new(random_category(&mut r, 3, 2, 20));
            let m = random_strict_indexed(&mut r, base, 3);
            assert!(check_pseudofunctor(&m).unwrap().is_pass());
            let t = twist(&m, &mut r);
            let rep = check_pseudofunctor(&t).unwrap();
            assert!(rep.is_pass(), "{rep}");
        }
    }

    #[test]
    fn lattice_laxators_pass() {
        let mut r = rng(3);
        for i in 0..6 {
            let (l, _) = random_cocartesian_lax(&mut r, i % 2 == 1);
            let rep = check_lax_monoidal(&l).unwrap();
            assert!(rep.is_pass(), "{rep}");
        }
    }
}
