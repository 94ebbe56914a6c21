//! Indexed categories as finite pseudofunctor data, their lax monoidal
//! structure, and indexed 1-cells and 2-cells.
//!
//! Covariant data `M: X → Cat` carries `M f: M x → M y`, compositor cells
//! `δ_{g,f}: M(g∘f) ⇒ M g ∘ M f` and unitor cells `γ_x: M(1_x) ⇒ 1`.
//! Contravariant data `M: X^op → Cat` carries `M f: M y → M x`,
//! `δ_{g,f}: M f ∘ M g ⇒ M(g∘f)` and `γ_x: 1 ⇒ M(1_x)`. The two are exchanged
//! by [`IndexedCat::dual`], which takes opposites of base and fibres and keeps
//! every component; checkers work on the covariant form.

use crate::error::{Error, Result};
use crate::fincat::{check_functor, compose_functors, FinCat, FinFunctor, Mor, NatTrans, Ob};
use crate::moncat::{check_bifunctor, check_monoidal, Bifunctor, MonoidalData, MonoidalFunctorData};
use crate::report::{bail_law, LawReport};
use serde::{Deserialize, Serialize};
use std::collections::HashMap;
use std::sync::Arc;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Variance {
    Contravariant,
    Covariant,
}

/// Components keyed by a pair of fibre objects.
pub type PairCell = HashMap<(Ob, Ob), Mor>;
/// Components keyed by a triple of fibre objects.
pub type TripleCell = HashMap<(Ob, Ob, Ob), Mor>;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IndexedCat {
    pub base: Arc<FinCat>,
    pub variance: Variance,
    pub fibres: Vec<Arc<FinCat>>,
    pub reindex: Vec<FinFunctor>,
    /// `(g, f) ↦` components of `δ_{g,f}`, one per object of the source of `M(g∘f)`.
    pub compositor: HashMap<(Mor, Mor), Vec<Mor>>,
    /// `x ↦` components of `γ_x`.
    pub unitor: Vec<Vec<Mor>>,
    pub strict: bool,
}

fn missing(what: &str, at: String) -> Error {
    Error::MalformedTable(format!("{what} missing at {at}"))
}

fn identity_cell(r: &FinFunctor) -> Vec<Mor> {
    r.source.objects().map(|a| r.target.id(r.ob(a))).collect()
}

impl IndexedCat {
    /// Strict data: compositors and unitors are identities. The reindexing
    /// table must compose on the nose for the result to pass the checker.
    pub fn strict(base: Arc<FinCat>, variance: Variance, fibres: Vec<Arc<FinCat>>, reindex: Vec<FinFunctor>) -> Result<IndexedCat> {
        if fibres.len() != base.n_objs() || reindex.len() != base.n_mors() {
            return Err(Error::MalformedTable("indexed tables are not total".into()));
        }
        let mut compositor = HashMap::new();
        for f in base.morphisms() {
            for &g in base.out_of(base.cod(f)) {
                compositor.insert((g, f), identity_cell(&reindex[base.compose(g, f)]));
            }
        }
        let unitor = base.objects().map(|x| identity_cell(&reindex[base.id(x)])).collect();
        Ok(IndexedCat { base, variance, fibres, reindex, compositor, unitor, strict: true })
    }

    /// Every fibre is `fibre` and every reindexing is the identity.
    pub fn constant(base: Arc<FinCat>, variance: Variance, fibre: Arc<FinCat>) -> IndexedCat {
        let fibres = vec![fibre.clone(); base.n_objs()];
        let reindex = vec![FinFunctor::identity(fibre); base.n_mors()];
        IndexedCat::strict(base, variance, fibres, reindex).expect("constant data is total")
    }

    pub fn fibre(&self, x: Ob) -> &Arc<FinCat> {
        &self.fibres[x]
    }

    pub fn m(&self, f: Mor) -> &FinFunctor {
        &self.reindex[f]
    }

    /// Component of `δ_{g,f}` at `a`.
    pub fn delta(&self, g: Mor, f: Mor, a: Ob) -> Mor {
        self.compositor[&(g, f)][a]
    }

    /// Component of `γ_x` at `a`.
    pub fn gamma(&self, x: Ob, a: Ob) -> Mor {
        self.unitor[x][a]
    }

    pub fn total_objects(&self) -> usize {
        self.fibres.iter().map(|c| c.n_objs()).sum()
    }

    /// Exchanges variance: opposite base and fibres, same components.
    pub fn dual(&self) -> IndexedCat {
        let base = Arc::new(self.base.opposite());
        let fibres: Vec<Arc<FinCat>> = self.fibres.iter().map(|c| Arc::new(c.opposite())).collect();
        let reindex = self
            .base
            .morphisms()
            .map(|f| {
                let r = &self.reindex[f];
                let (s, t) = match self.variance {
                    Variance::Covariant => (self.base.dom(f), self.base.cod(f)),
                    Variance::Contravariant => (self.base.cod(f), self.base.dom(f)),
                };
                FinFunctor { source: fibres[s].clone(), target: fibres[t].clone(), obj_map: r.obj_map.clone(), mor_map: r.mor_map.clone() }
            })
            .collect();
        let compositor = self.compositor.iter().map(|(&(g, f), v)| ((f, g), v.clone())).collect();
        let variance = match self.variance {
            Variance::Covariant => Variance::Contravariant,
            Variance::Contravariant => Variance::Covariant,
        };
        IndexedCat { base, variance, fibres, reindex, compositor, unitor: self.unitor.clone(), strict: self.strict }
    }

    pub fn covariant_view(&self) -> IndexedCat {
        match self.variance {
            Variance::Covariant => self.clone(),
            Variance::Contravariant => self.dual(),
        }
    }

    /// `δ_{g,f}` as a transformation between functors on fibres.
    pub fn compositor_nat(&self, g: Mor, f: Mor) -> Result<NatTrans> {
        let comps = self
            .compositor
            .get(&(g, f))
            .ok_or_else(|| missing("compositor", format!("({}, {})", self.base.mor_name(g), self.base.mor_name(f))))?;
        let gf = self.base.compose(g, f);
        let (s, t) = match self.variance {
            Variance::Covariant => (self.reindex[gf].clone(), compose_functors(&self.reindex[g], &self.reindex[f])?),
            Variance::Contravariant => (compose_functors(&self.reindex[f], &self.reindex[g])?, self.reindex[gf].clone()),
        };
        NatTrans::new(s, t, comps.clone())
    }

    pub fn unitor_nat(&self, x: Ob) -> Result<NatTrans> {
        let i = self.reindex[self.base.id(x)].clone();
        let one = FinFunctor::identity(self.fibres[x].clone());
        let (s, t) = match self.variance {
            Variance::Covariant => (i, one),
            Variance::Contravariant => (one, i),
        };
        NatTrans::new(s, t, self.unitor[x].clone())
    }

    /// Sets the strict flag from the cells.
    pub fn detect_strict(mut self) -> IndexedCat {
        let b = &self.base;
        let comp_ok = self.compositor.iter().all(|(&(g, f), v)| {
            let t = &self.reindex[b.compose(g, f)].target;
            v.iter().all(|&k| t.is_identity(k))
        });
        let unit_ok = self.unitor.iter().enumerate().all(|(x, v)| v.iter().all(|&k| self.fibres[x].is_identity(k)));
        self.strict = comp_ok && unit_ok;
        self
    }
}

fn inv(c: &FinCat, f: Mor) -> Result<Mor> {
    c.inverse(f).ok_or_else(|| Error::LawFailure(format!("{} is not invertible", c.mor_name(f))))
}

/// Shapes, functoriality of every reindexing, naturality and invertibility of
/// every cell, and the associativity and unit coherence of the pseudofunctor.
pub fn check_pseudofunctor(m: &IndexedCat) -> Result<LawReport> {
    let mut rep = LawReport::new("pseudofunctor");
    let m = &m.covariant_view();
    let b = &*m.base;
    if m.fibres.len() != b.n_objs() || m.reindex.len() != b.n_mors() || m.unitor.len() != b.n_objs() {
        return Err(Error::MalformedTable("indexed tables are not total".into()));
    }
    for f in b.morphisms() {
        let r = &m.reindex[f];
        if *r.source != *m.fibres[b.dom(f)] || *r.target != *m.fibres[b.cod(f)] {
            return Err(Error::ShapeMismatch(format!("reindexing along {} has the wrong endpoints", b.mor_name(f))));
        }
        let fr = check_functor(r)?;
        if !fr.is_pass() {
            rep.absorb(fr);
            rep.note(format!("reindexing along {}", b.mor_name(f)));
            return Ok(rep);
        }
        rep.checked += fr.checked;
    }
    // Compositor cells: typing, invertibility, naturality.
    for f in b.morphisms() {
        for &g in b.out_of(b.cod(f)) {
            let comps = m
                .compositor
                .get(&(g, f))
                .ok_or_else(|| missing("compositor", format!("({}, {})", b.mor_name(g), b.mor_name(f))))?;
            let (src, tgt) = (&*m.fibres[b.dom(f)], &*m.fibres[b.cod(g)]);
            if comps.len() != src.n_objs() {
                return Err(Error::MalformedTable(format!("compositor at ({}, {}) is not total", b.mor_name(g), b.mor_name(f))));
            }
            let (mg, mf, mgf) = (&m.reindex[g], &m.reindex[f], &m.reindex[b.compose(g, f)]);
            for a in src.objects() {
                rep.tick();
                let d = comps[a];
                if tgt.dom(d) != mgf.ob(a) || tgt.cod(d) != mg.ob(mf.ob(a)) {
                    bail_law!(rep, "compositor typing", b.mor_name(g), b.mor_name(f), src.obj_name(a));
                }
                if !tgt.is_iso(d) {
                    bail_law!(rep, "compositor invertibility", b.mor_name(g), b.mor_name(f), src.obj_name(a));
                }
            }
            for k in src.morphisms() {
                rep.tick();
                let (a, a2) = (src.dom(k), src.cod(k));
                if tgt.compose(mg.mor(mf.mor(k)), comps[a]) != tgt.compose(comps[a2], mgf.mor(k)) {
                    bail_law!(rep, "compositor naturality", b.mor_name(g), b.mor_name(f), src.mor_name(k));
                }
            }
        }
    }
    for x in b.objects() {
        let fib = &*m.fibres[x];
        let comps = &m.unitor[x];
        if comps.len() != fib.n_objs() {
            return Err(Error::MalformedTable(format!("unitor at {} is not total", b.obj_name(x))));
        }
        let mi = &m.reindex[b.id(x)];
        for a in fib.objects() {
            rep.tick();
            let u = comps[a];
            if fib.dom(u) != mi.ob(a) || fib.cod(u) != a {
                bail_law!(rep, "unitor typing", b.obj_name(x), fib.obj_name(a));
            }
            if !fib.is_iso(u) {
                bail_law!(rep, "unitor invertibility", b.obj_name(x), fib.obj_name(a));
            }
        }
        for k in fib.morphisms() {
            rep.tick();
            if fib.compose(k, comps[fib.dom(k)]) != fib.compose(comps[fib.cod(k)], mi.mor(k)) {
                bail_law!(rep, "unitor naturality", b.obj_name(x), fib.mor_name(k));
            }
        }
    }
    // Associativity: Mh(δ_{g,f}) ∘ δ_{h,gf} = δ_{h,g}Mf ∘ δ_{hg,f}.
    for f in b.morphisms() {
        for &g in b.out_of(b.cod(f)) {
            for &h in b.out_of(b.cod(g)) {
                let (gf, hg) = (b.compose(g, f), b.compose(h, g));
                let fib = &*m.fibres[b.cod(h)];
                for a in m.fibres[b.dom(f)].objects() {
                    rep.tick();
                    let lhs = fib.compose(m.reindex[h].mor(m.delta(g, f, a)), m.delta(h, gf, a));
                    let rhs = fib.compose(m.delta(h, g, m.reindex[f].ob(a)), m.delta(hg, f, a));
                    if lhs != rhs {
                        bail_law!(rep, "compositor associativity", b.mor_name(h), b.mor_name(g), b.mor_name(f), m.fibres[b.dom(f)].obj_name(a));
                    }
                }
            }
        }
    }
    // Units: γ_y Mf ∘ δ_{1,f} = 1 and Mf(γ_x) ∘ δ_{f,1} = 1.
    for f in b.morphisms() {
        let (x, y) = (b.dom(f), b.cod(f));
        let fib = &*m.fibres[y];
        let mf = &m.reindex[f];
        for a in m.fibres[x].objects() {
            rep.tick();
            let left = fib.compose(m.gamma(y, mf.ob(a)), m.delta(b.id(y), f, a));
            if left != fib.id(mf.ob(a)) {
                bail_law!(rep, "left unit coherence", b.mor_name(f), m.fibres[x].obj_name(a));
            }
            let right = fib.compose(mf.mor(m.gamma(x, a)), m.delta(f, b.id(x), a));
            if right != fib.id(mf.ob(a)) {
                bail_law!(rep, "right unit coherence", b.mor_name(f), m.fibres[x].obj_name(a));
            }
        }
    }
    if m.strict {
        for (&(g, f), v) in &m.compositor {
            let t = &m.fibres[b.cod(g)];
            if v.iter().any(|&k| !t.is_identity(k)) {
                bail_law!(rep, "strictness of compositor", b.mor_name(g), b.mor_name(f));
            }
        }
        for x in b.objects() {
            if m.unitor[x].iter().any(|&k| !m.fibres[x].is_identity(k)) {
                bail_law!(rep, "strictness of unitor", b.obj_name(x));
            }
        }
    }
    Ok(rep)
}

/// A lax monoidal structure on covariant indexed data.
///
/// Over a base tensor `⊗` the laxator `μ_{x,y}: M x × M y → M(x⊗y)` comes with
/// cells `μ_{f,g}: M(f⊗g)∘μ_{x,y} ⇒ μ_{x',y'}∘(M f × M g)` and an object
/// `μ_0` of `M(I)`. The remaining cells have components
/// `ω: M(α)μ(μ(a,b),c) → μ(a,μ(b,c))`, `ζ: M(r)μ(a,μ_0) → a`,
/// `ξ: a → M(l)μ(μ_0,a)` and `v: M(b)μ(a,b) → μ(b,a)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LaxMonoidalIndexed {
    pub carrier: IndexedCat,
    pub base_monoidal: MonoidalData,
    pub laxator: HashMap<(Ob, Ob), Bifunctor>,
    pub laxator_cells: HashMap<(Mor, Mor), PairCell>,
    pub unit_obj: Ob,
    pub omega: HashMap<(Ob, Ob, Ob), TripleCell>,
    pub zeta: HashMap<Ob, HashMap<Ob, Mor>>,
    pub xi: HashMap<Ob, HashMap<Ob, Mor>>,
    pub braid_cell: Option<HashMap<(Ob, Ob), PairCell>>,
    pub symmetric: bool,
}

impl LaxMonoidalIndexed {
    pub fn mu(&self, x: Ob, y: Ob) -> &Bifunctor {
        &self.laxator[&(x, y)]
    }

    /// `μ(a, b)` for `a ∈ M x`, `b ∈ M y`.
    pub fn mu_ob(&self, x: Ob, y: Ob, a: Ob, b: Ob) -> Option<Ob> {
        self.laxator.get(&(x, y))?.ob(a, b)
    }

    pub fn cell(&self, f: Mor, g: Mor, a: Ob, b: Ob) -> Option<Mor> {
        self.laxator_cells.get(&(f, g))?.get(&(a, b)).copied()
    }

    /// Strict carrier and a laxator that is natural, associative and unital on
    /// the nose: every cell is an identity. Braid cells are included when the
    /// base is braided and the swap holds on the nose.
    pub fn ordinary(carrier: IndexedCat, base_monoidal: MonoidalData, laxator: HashMap<(Ob, Ob), Bifunctor>, unit_obj: Ob) -> Result<LaxMonoidalIndexed> {
        let fibres = carrier.fibres.clone();
        Self::assemble(carrier, base_monoidal, laxator, unit_obj, |_, x, s, t| (s == t).then(|| fibres[x].id(s)))
    }

    /// Fills every coherence cell from `cell(site, x, source, target)`, which
    /// returns a morphism `source → target` of `M x`. A missing braid cell
    /// drops the braiding; any other missing cell is an error.
    pub fn assemble(
        carrier: IndexedCat,
        base_monoidal: MonoidalData,
        laxator: HashMap<(Ob, Ob), Bifunctor>,
        unit_obj: Ob,
        cell: impl Fn(CellSite, Ob, Ob, Ob) -> Option<Mor>,
    ) -> Result<LaxMonoidalIndexed> {
        let m = &carrier;
        let b = &*m.base;
        let bm = &base_monoidal;
        let not_strict = |what: &str| Error::MalformedTable(format!("{what} cell is missing"));
        let mu = |x: Ob, y: Ob| laxator.get(&(x, y)).ok_or_else(|| missing("laxator", format!("({}, {})", b.obj_name(x), b.obj_name(y))));
        let mut laxator_cells = HashMap::new();
        for f in b.morphisms() {
            for g in b.morphisms() {
                let Some(fg) = bm.tensor.mor(f, g) else { continue };
                let (src, tgt) = (mu(b.dom(f), b.dom(g))?, mu(b.cod(f), b.cod(g))?);
                let mut cells = HashMap::new();
                for (a, c) in src.defined_pairs() {
                    let start = m.reindex[fg].ob(src.ob_u(a, c));
                    let Some(end) = tgt.ob(m.reindex[f].ob(a), m.reindex[g].ob(c)) else { continue };
                    let k = cell(CellSite::Laxator { f, g, a, b: c }, b.cod(fg), start, end).ok_or_else(|| not_strict("laxator naturality"))?;
                    cells.insert((a, c), k);
                }
                laxator_cells.insert((f, g), cells);
            }
        }
        let mut omega = HashMap::new();
        for (x, y, z) in bm.triples() {
            let (xy, yz) = (bm.tensor.ob_u(x, y), bm.tensor.ob_u(y, z));
            let al = bm.alpha(x, y, z);
            let mut cells = HashMap::new();
            for (a, c) in mu(x, y)?.defined_pairs() {
                for e in m.fibres[z].objects() {
                    let Some(lhs) = mu(xy, z)?.ob(mu(x, y)?.ob_u(a, c), e) else { continue };
                    let Some(rhs) = mu(y, z)?.ob(c, e).and_then(|ce| laxator.get(&(x, yz))?.ob(a, ce)) else { continue };
                    let site = CellSite::Associator { x, y, z, a, b: c, c: e };
                    let k = cell(site, b.cod(al), m.reindex[al].ob(lhs), rhs).ok_or_else(|| not_strict("laxator associativity"))?;
                    cells.insert((a, c, e), k);
                }
            }
            omega.insert((x, y, z), cells);
        }
        let (mut zeta, mut xi) = (HashMap::new(), HashMap::new());
        let iu = bm.unit;
        for x in b.objects() {
            let fib = &m.fibres[x];
            if let (Some(_), Some(&r)) = (bm.t(x, iu), bm.right_unitor.get(&x)) {
                let mut cells = HashMap::new();
                for a in fib.objects() {
                    let Some(au) = mu(x, iu)?.ob(a, unit_obj) else { continue };
                    let k = cell(CellSite::RightUnit { x, a }, x, m.reindex[r].ob(au), a).ok_or_else(|| not_strict("right unit law"))?;
                    cells.insert(a, k);
                }
                zeta.insert(x, cells);
            }
            if let (Some(_), Some(&lu)) = (bm.t(iu, x), bm.left_unitor.get(&x)) {
                let mut cells = HashMap::new();
                for a in fib.objects() {
                    let Some(ua) = mu(iu, x)?.ob(unit_obj, a) else { continue };
                    let k = cell(CellSite::LeftUnit { x, a }, x, a, m.reindex[lu].ob(ua)).ok_or_else(|| not_strict("left unit law"))?;
                    cells.insert(a, k);
                }
                xi.insert(x, cells);
            }
        }
        let mut braid_cell = None;
        if let Some(bb) = &bm.braiding {
            let mut all = HashMap::new();
            let mut ok = true;
            'pairs: for (x, y) in bm.tensor.defined_pairs() {
                let Some(&bxy) = bb.get(&(x, y)) else { continue };
                let mut cells = HashMap::new();
                for (a, c) in mu(x, y)?.defined_pairs() {
                    let Some(ca) = laxator.get(&(y, x)).and_then(|v| v.ob(c, a)) else { continue };
                    let start = m.reindex[bxy].ob(mu(x, y)?.ob_u(a, c));
                    let Some(k) = cell(CellSite::Braid { x, y, a, b: c }, b.cod(bxy), start, ca) else {
                        ok = false;
                        break 'pairs;
                    };
                    cells.insert((a, c), k);
                }
                all.insert((x, y), cells);
            }
            if ok {
                braid_cell = Some(all);
            }
        }
        let symmetric = braid_cell.is_some() && bm.symmetric;
        Ok(LaxMonoidalIndexed { carrier, base_monoidal, laxator, laxator_cells, unit_obj, omega, zeta, xi, braid_cell, symmetric })
    }
}

/// Position of a requested coherence cell. Objects `a`, `b`, `c` live in the
/// fibres over the first, second and third base object.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CellSite {
    Laxator { f: Mor, g: Mor, a: Ob, b: Ob },
    Associator { x: Ob, y: Ob, z: Ob, a: Ob, b: Ob, c: Ob },
    RightUnit { x: Ob, a: Ob },
    LeftUnit { x: Ob, a: Ob },
    Braid { x: Ob, y: Ob, a: Ob, b: Ob },
}

/// Checks pseudofunctor and base coherence, the laxator and its cells
/// directly, and the remaining coherence of `ω`, `ζ`, `ξ`, `v` through the
/// monoidal structure induced on the total category.
pub fn check_lax_monoidal(l: &LaxMonoidalIndexed) -> Result<LawReport> {
    let mut rep = LawReport::new("lax monoidal indexed category");
    if l.carrier.variance != Variance::Covariant {
        return Err(Error::Variance("monoidal structure is supported on covariant data".into()));
    }
    let pf = check_pseudofunctor(&l.carrier)?;
    if !pf.is_pass() {
        rep.absorb(pf);
        return Ok(rep);
    }
    rep.checked += pf.checked;
    let bm = &l.base_monoidal;
    if *bm.base != *l.carrier.base {
        return Err(Error::ShapeMismatch("base monoidal structure lives on another category".into()));
    }
    let bmr = check_monoidal(bm)?;
    if !bmr.is_pass() {
        rep.absorb(bmr);
        return Ok(rep);
    }
    rep.checked += bmr.checked;
    let m = &l.carrier;
    let b = &*m.base;
    let on = |x: Ob| b.obj_name(x).to_string();
    for (x, y) in bm.tensor.defined_pairs() {
        let mu = l.laxator.get(&(x, y)).ok_or_else(|| missing("laxator", format!("({}, {})", on(x), on(y))))?;
        let xy = bm.tensor.ob_u(x, y);
        if *mu.left != *m.fibres[x] || *mu.right != *m.fibres[y] || *mu.target != *m.fibres[xy] {
            return Err(Error::ShapeMismatch(format!("laxator at ({}, {}) has the wrong shape", on(x), on(y))));
        }
        let br = check_bifunctor(mu)?;
        if !br.is_pass() {
            rep.absorb(br);
            rep.note(format!("laxator at ({}, {})", on(x), on(y)));
            return Ok(rep);
        }
        rep.checked += br.checked;
    }
    let iu = bm.unit;
    if l.unit_obj >= m.fibres[iu].n_objs() {
        return Err(Error::UnknownObject("laxator unit".into()));
    }
    // Cells μ_{f,g}: presence, typing, invertibility, naturality.
    for f in b.morphisms() {
        for g in b.morphisms() {
            let Some(fg) = bm.tensor.mor(f, g) else { continue };
            let (x, y, x2, y2) = (b.dom(f), b.dom(g), b.cod(f), b.cod(g));
            let (mu, mu2) = (l.mu(x, y), l.mu(x2, y2));
            let tgt = &*m.fibres[b.cod(fg)];
            let (mf, mg, mfg) = (&m.reindex[f], &m.reindex[g], &m.reindex[fg]);
            let cells = l.laxator_cells.get(&(f, g)).ok_or_else(|| missing("laxator cell", format!("({}, {})", b.mor_name(f), b.mor_name(g))))?;
            for (a, c) in mu.defined_pairs() {
                rep.tick();
                let w = || vec![b.mor_name(f).to_string(), b.mor_name(g).to_string(), m.fibres[x].obj_name(a).to_string(), m.fibres[y].obj_name(c).to_string()];
                let Some(end) = mu2.ob(mf.ob(a), mg.ob(c)) else {
                    rep.fail("laxator domain stability", w());
                    return Ok(rep);
                };
                let Some(&k) = cells.get(&(a, c)) else {
                    return Err(missing("laxator cell component", w().join(", ")));
                };
                if tgt.dom(k) != mfg.ob(mu.ob_u(a, c)) || tgt.cod(k) != end {
                    rep.fail("laxator cell typing", w());
                    return Ok(rep);
                }
                if !tgt.is_iso(k) {
                    rep.fail("laxator cell invertibility", w());
                    return Ok(rep);
                }
            }
            let (fx, fy) = (&*m.fibres[x], &*m.fibres[y]);
            for p in fx.morphisms() {
                for q in fy.morphisms() {
                    let Some(pq) = mu.mor(p, q) else { continue };
                    rep.tick();
                    let lhs = tgt.compose(mu2.mor_u(mf.mor(p), mg.mor(q)), cells[&(fx.dom(p), fy.dom(q))]);
                    let rhs = tgt.compose(cells[&(fx.cod(p), fy.cod(q))], mfg.mor(pq));
                    if lhs != rhs {
                        bail_law!(rep, "laxator cell naturality", b.mor_name(f), b.mor_name(g), fx.mor_name(p), fy.mor_name(q));
                    }
                }
            }
        }
    }
    // Pseudonaturality of μ: composites and identities.
    for f in b.morphisms() {
        for g in b.morphisms() {
            let Some(fg) = bm.tensor.mor(f, g) else { continue };
            for &f2 in b.out_of(b.cod(f)) {
                for &g2 in b.out_of(b.cod(g)) {
                    let Some(fg2) = bm.tensor.mor(f2, g2) else { continue };
                    let (ff, gg) = (b.compose(f2, f), b.compose(g2, g));
                    let fgc = bm.tensor.mor_u(ff, gg);
                    let tgt = &*m.fibres[b.cod(fg2)];
                    let (x, y) = (b.dom(f), b.dom(g));
                    let mu3 = l.mu(b.cod(f2), b.cod(g2));
                    for (a, c) in l.mu(x, y).defined_pairs() {
                        rep.tick();
                        let (fa, gc) = (m.reindex[f].ob(a), m.reindex[g].ob(c));
                        let fix_a = inv(&m.fibres[b.cod(f2)], m.delta(f2, f, a))?;
                        let fix_c = inv(&m.fibres[b.cod(g2)], m.delta(g2, g, c))?;
                        let path = [
                            m.delta(fg2, fg, l.mu(x, y).ob_u(a, c)),
                            m.reindex[fg2].mor(l.cell(f, g, a, c).unwrap()),
                            l.cell(f2, g2, fa, gc).unwrap(),
                            mu3.mor_u(fix_a, fix_c),
                        ];
                        if tgt.compose_path(&path) != l.cell(ff, gg, a, c).unwrap() {
                            bail_law!(rep, "laxator cell composition", b.mor_name(f2), b.mor_name(f), b.mor_name(g2), b.mor_name(g), m.fibres[x].obj_name(a), m.fibres[y].obj_name(c));
                        }
                        debug_assert_eq!(fgc, b.compose(fg2, fg));
                    }
                }
            }
        }
    }
    for (x, y) in bm.tensor.defined_pairs() {
        let xy = bm.tensor.ob_u(x, y);
        let mu = l.mu(x, y);
        let tgt = &*m.fibres[xy];
        for (a, c) in mu.defined_pairs() {
            rep.tick();
            let ga = inv(&m.fibres[x], m.gamma(x, a))?;
            let gc = inv(&m.fibres[y], m.gamma(y, c))?;
            let want = tgt.compose(mu.mor_u(ga, gc), m.gamma(xy, mu.ob_u(a, c)));
            if l.cell(b.id(x), b.id(y), a, c) != Some(want) {
                bail_law!(rep, "laxator cell unit", on(x), on(y), m.fibres[x].obj_name(a), m.fibres[y].obj_name(c));
            }
        }
    }
    // ω, ζ, ξ, v: presence, typing, invertibility.
    for (x, y, z) in bm.triples() {
        let (xy, yz) = (bm.tensor.ob_u(x, y), bm.tensor.ob_u(y, z));
        let al = bm.alpha(x, y, z);
        let tgt = &*m.fibres[b.cod(al)];
        let cells = l.omega.get(&(x, y, z)).ok_or_else(|| missing("omega", format!("({}, {}, {})", on(x), on(y), on(z))))?;
        for (a, c) in l.mu(x, y).defined_pairs() {
            for e in m.fibres[z].objects() {
                let Some(lhs) = l.mu_ob(xy, z, l.mu(x, y).ob_u(a, c), e) else { continue };
                let Some(rhs) = l.mu_ob(y, z, c, e).and_then(|ce| l.mu_ob(x, yz, a, ce)) else { continue };
                rep.tick();
                let w = || format!("({}, {}, {})", on(x), on(y), on(z));
                let &k = cells.get(&(a, c, e)).ok_or_else(|| missing("omega component", w()))?;
                if tgt.dom(k) != m.reindex[al].ob(lhs) || tgt.cod(k) != rhs {
                    bail_law!(rep, "omega typing", on(x), on(y), on(z), m.fibres[x].obj_name(a), m.fibres[y].obj_name(c), m.fibres[z].obj_name(e));
                }
                if !tgt.is_iso(k) {
                    bail_law!(rep, "omega invertibility", on(x), on(y), on(z));
                }
            }
        }
    }
    for x in b.objects() {
        let fib = &*m.fibres[x];
        if let (Some(_), Some(&r)) = (bm.t(x, iu), bm.right_unitor.get(&x)) {
            let cells = l.zeta.get(&x).ok_or_else(|| missing("zeta", on(x)))?;
            for a in fib.objects() {
                let Some(au) = l.mu_ob(x, iu, a, l.unit_obj) else { continue };
                rep.tick();
                let &k = cells.get(&a).ok_or_else(|| missing("zeta component", on(x)))?;
                if fib.dom(k) != m.reindex[r].ob(au) || fib.cod(k) != a {
                    bail_law!(rep, "zeta typing", on(x), fib.obj_name(a));
                }
                if !fib.is_iso(k) {
                    bail_law!(rep, "zeta invertibility", on(x), fib.obj_name(a));
                }
            }
        }
        if let (Some(_), Some(&lu)) = (bm.t(iu, x), bm.left_unitor.get(&x)) {
            let cells = l.xi.get(&x).ok_or_else(|| missing("xi", on(x)))?;
            for a in fib.objects() {
                let Some(ua) = l.mu_ob(iu, x, l.unit_obj, a) else { continue };
                rep.tick();
                let &k = cells.get(&a).ok_or_else(|| missing("xi component", on(x)))?;
                if fib.dom(k) != a || fib.cod(k) != m.reindex[lu].ob(ua) {
                    bail_law!(rep, "xi typing", on(x), fib.obj_name(a));
                }
                if !fib.is_iso(k) {
                    bail_law!(rep, "xi invertibility", on(x), fib.obj_name(a));
                }
            }
        }
    }
    if let Some(vs) = &l.braid_cell {
        let Some(bb) = &bm.braiding else {
            return Err(Error::ShapeMismatch("braid cells over an unbraided base".into()));
        };
        for (x, y) in bm.tensor.defined_pairs() {
            let bxy = bb[&(x, y)];
            let tgt = &*m.fibres[b.cod(bxy)];
            let cells = vs.get(&(x, y)).ok_or_else(|| missing("braid cell", format!("({}, {})", on(x), on(y))))?;
            for (a, c) in l.mu(x, y).defined_pairs() {
                let Some(ca) = l.mu_ob(y, x, c, a) else { continue };
                rep.tick();
                let &k = cells.get(&(a, c)).ok_or_else(|| missing("braid cell component", format!("({}, {})", on(x), on(y))))?;
                if tgt.dom(k) != m.reindex[bxy].ob(l.mu(x, y).ob_u(a, c)) || tgt.cod(k) != ca {
                    bail_law!(rep, "braid cell typing", on(x), on(y), m.fibres[x].obj_name(a), m.fibres[y].obj_name(c));
                }
                if !tgt.is_iso(k) {
                    bail_law!(rep, "braid cell invertibility", on(x), on(y));
                }
            }
        }
    }
    let total = crate::groth::monoidal_grothendieck(l)?;
    let tr = check_monoidal(&total.monoidal)?;
    rep.note("coherence of omega, zeta, xi and braid cells verified on the total category");
    rep.absorb(tr);
    Ok(rep)
}

/// Pseudonatural transformation between covariant indexed categories over a
/// base functor `F`: `τ_x: M x → N(F x)` and cells `τ_f: N(F f)∘τ_x ⇒ τ_y∘M f`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Indexed1Cell {
    pub source: Arc<IndexedCat>,
    pub target: Arc<IndexedCat>,
    pub base_fun: FinFunctor,
    pub components: Vec<FinFunctor>,
    /// Per base morphism, components indexed by objects of the source fibre.
    pub squares: Vec<Vec<Mor>>,
    pub monoidal_part: Option<MonoidalIndexedPart>,
}

/// Monoidal structure on a 1-cell: a monoidal base functor `ψ` and cells
/// `m_{x,y}: N(ψ_{x,y}) ν(τ a, τ b) → τ_{x⊗y} μ(a,b)`, `m_0: N(ψ_0) ν_0 → τ_I μ_0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MonoidalIndexedPart {
    pub base: MonoidalFunctorData,
    pub cells: HashMap<(Ob, Ob), PairCell>,
    pub unit_cell: Mor,
}

impl Indexed1Cell {
    pub fn identity(m: Arc<IndexedCat>) -> Indexed1Cell {
        let b = m.base.clone();
        let components = m.fibres.iter().map(|c| FinFunctor::identity(c.clone())).collect();
        let squares = b.morphisms().map(|f| identity_cell(&m.reindex[f])).collect();
        Indexed1Cell { source: m.clone(), target: m, base_fun: FinFunctor::identity(b), components, squares, monoidal_part: None }
    }

    /// `σ ∘ τ`.
    pub fn compose(sigma: &Indexed1Cell, tau: &Indexed1Cell) -> Result<Indexed1Cell> {
        if *tau.target != *sigma.source {
            return Err(Error::ShapeMismatch("1-cells are not composable".into()));
        }
        let base_fun = compose_functors(&sigma.base_fun, &tau.base_fun)?;
        let b = &*tau.source.base;
        let f1 = &tau.base_fun;
        let components = b
            .objects()
            .map(|x| compose_functors(&sigma.components[f1.ob(x)], &tau.components[x]))
            .collect::<Result<Vec<_>>>()?;
        let p = &*sigma.target;
        let squares = b
            .morphisms()
            .map(|f| {
                let (x, y) = (b.dom(f), b.cod(f));
                let ff = f1.mor(f);
                let fib = &*p.fibres[base_fun.ob(y)];
                tau.source.fibres[x]
                    .objects()
                    .map(|a| {
                        let ta = tau.components[x].ob(a);
                        fib.compose(sigma.components[f1.ob(y)].mor(tau.squares[f][a]), sigma.squares[ff][ta])
                    })
                    .collect()
            })
            .collect();
        Ok(Indexed1Cell { source: tau.source.clone(), target: sigma.target.clone(), base_fun, components, squares, monoidal_part: None })
    }
}

pub fn check_indexed_1cell(c: &Indexed1Cell) -> Result<LawReport> {
    let mut rep = LawReport::new("indexed 1-cell");
    let (m, n) = (&*c.source, &*c.target);
    if m.variance != Variance::Covariant || n.variance != Variance::Covariant {
        return Err(Error::Variance("1-cells are checked on covariant data".into()));
    }
    let (b, bn) = (&*m.base, &*n.base);
    let ff = &c.base_fun;
    if *ff.source != *b || *ff.target != *bn {
        return Err(Error::ShapeMismatch("base functor does not run between the bases".into()));
    }
    let fr = check_functor(ff)?;
    if !fr.is_pass() {
        rep.absorb(fr);
        return Ok(rep);
    }
    if c.components.len() != b.n_objs() || c.squares.len() != b.n_mors() {
        return Err(Error::MalformedTable("1-cell tables are not total".into()));
    }
    for x in b.objects() {
        let t = &c.components[x];
        if *t.source != *m.fibres[x] || *t.target != *n.fibres[ff.ob(x)] {
            return Err(Error::ShapeMismatch(format!("component at {} has the wrong shape", b.obj_name(x))));
        }
        let r = check_functor(t)?;
        if !r.is_pass() {
            rep.absorb(r);
            return Ok(rep);
        }
        rep.checked += r.checked;
    }
    for f in b.morphisms() {
        let (x, y) = (b.dom(f), b.cod(f));
        let (src, fib) = (&*m.fibres[x], &*n.fibres[ff.ob(y)]);
        let sq = &c.squares[f];
        if sq.len() != src.n_objs() {
            return Err(Error::MalformedTable(format!("square at {} is not total", b.mor_name(f))));
        }
        let (nf, mf, tx, ty) = (&n.reindex[ff.mor(f)], &m.reindex[f], &c.components[x], &c.components[y]);
        for a in src.objects() {
            rep.tick();
            let k = sq[a];
            if fib.dom(k) != nf.ob(tx.ob(a)) || fib.cod(k) != ty.ob(mf.ob(a)) {
                bail_law!(rep, "square typing", b.mor_name(f), src.obj_name(a));
            }
            if !fib.is_iso(k) {
                bail_law!(rep, "square invertibility", b.mor_name(f), src.obj_name(a));
            }
        }
        for k in src.morphisms() {
            rep.tick();
            let lhs = fib.compose(ty.mor(mf.mor(k)), sq[src.dom(k)]);
            let rhs = fib.compose(sq[src.cod(k)], nf.mor(tx.mor(k)));
            if lhs != rhs {
                bail_law!(rep, "square naturality", b.mor_name(f), src.mor_name(k));
            }
        }
    }
    // τ_{gf} = τ_z(δ^M⁻¹) ∘ τ_g Mf ∘ N(Fg)(τ_f) ∘ δ^N_{Fg,Ff} τ_x.
    for f in b.morphisms() {
        for &g in b.out_of(b.cod(f)) {
            let (x, z) = (b.dom(f), b.cod(g));
            let gf = b.compose(g, f);
            let fib = &*n.fibres[ff.ob(z)];
            for a in m.fibres[x].objects() {
                rep.tick();
                let ta = c.components[x].ob(a);
                let fa = m.reindex[f].ob(a);
                let path = [
                    n.delta(ff.mor(g), ff.mor(f), ta),
                    n.reindex[ff.mor(g)].mor(c.squares[f][a]),
                    c.squares[g][fa],
                    c.components[z].mor(inv(&m.fibres[z], m.delta(g, f, a))?),
                ];
                if fib.compose_path(&path) != c.squares[gf][a] {
                    bail_law!(rep, "square composition", b.mor_name(g), b.mor_name(f), m.fibres[x].obj_name(a));
                }
            }
        }
    }
    for x in b.objects() {
        let fib = &*n.fibres[ff.ob(x)];
        for a in m.fibres[x].objects() {
            rep.tick();
            let ta = c.components[x].ob(a);
            let want = fib.compose(c.components[x].mor(inv(&m.fibres[x], m.gamma(x, a))?), n.gamma(ff.ob(x), ta));
            if c.squares[b.id(x)][a] != want {
                bail_law!(rep, "square unit", b.obj_name(x), m.fibres[x].obj_name(a));
            }
        }
    }
    Ok(rep)
}

/// Checks a 1-cell together with its monoidal part; the monoidality axioms
/// are verified on the induced functor between total categories.
pub fn check_monoidal_1cell(c: &Indexed1Cell, src: &LaxMonoidalIndexed, tgt: &LaxMonoidalIndexed) -> Result<LawReport> {
    let mut rep = LawReport::new("monoidal indexed 1-cell");
    let base = check_indexed_1cell(c)?;
    if !base.is_pass() {
        rep.absorb(base);
        return Ok(rep);
    }
    rep.checked += base.checked;
    let Some(mp) = &c.monoidal_part else {
        return Err(Error::ShapeMismatch("1-cell has no monoidal part".into()));
    };
    let (m, n) = (&src.carrier, &tgt.carrier);
    let b = &*m.base;
    let ff = &c.base_fun;
    if mp.base.underlying != *ff {
        return Err(Error::ShapeMismatch("monoidal base functor differs from the base functor".into()));
    }
    for (x, y) in src.base_monoidal.tensor.defined_pairs() {
        let Some(&psi) = mp.base.laxator.get(&(x, y)) else { continue };
        let xy = src.base_monoidal.tensor.ob_u(x, y);
        let fib = &*n.fibres[ff.ob(xy)];
        let cells = mp.cells.get(&(x, y)).ok_or_else(|| missing("monoidal 1-cell component", format!("({}, {})", b.obj_name(x), b.obj_name(y))))?;
        for (a, e) in src.mu(x, y).defined_pairs() {
            let (ta, te) = (c.components[x].ob(a), c.components[y].ob(e));
            let Some(nu) = tgt.mu_ob(ff.ob(x), ff.ob(y), ta, te) else { continue };
            rep.tick();
            let &k = cells.get(&(a, e)).ok_or_else(|| missing("monoidal 1-cell component", b.obj_name(x).to_string()))?;
            if fib.dom(k) != n.reindex[psi].ob(nu) || fib.cod(k) != c.components[xy].ob(src.mu(x, y).ob_u(a, e)) {
                bail_law!(rep, "monoidal cell typing", b.obj_name(x), b.obj_name(y), m.fibres[x].obj_name(a), m.fibres[y].obj_name(e));
            }
        }
    }
    let iu = src.base_monoidal.unit;
    let fib = &*n.fibres[ff.ob(iu)];
    let k = mp.unit_cell;
    rep.tick();
    if fib.dom(k) != n.reindex[mp.base.unit_mor].ob(tgt.unit_obj) || fib.cod(k) != c.components[iu].ob(src.unit_obj) {
        bail_law!(rep, "monoidal unit cell typing", fib.mor_name(k));
    }
    let ts = crate::groth::monoidal_grothendieck(src)?;
    let tt = crate::groth::monoidal_grothendieck(tgt)?;
    let tf = crate::groth::groth_monoidal_1cell(c, &ts, &tt)?;
    rep.absorb(crate::moncat::check_monoidal_functor(&tf, &ts.monoidal, &tt.monoidal)?);
    Ok(rep)
}

/// Modification between 1-cells `τ, σ: M ⇒ N` over `α: F ⇒ G`, with
/// components `m_x: N(α_x)∘τ_x ⇒ σ_x`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Indexed2Cell {
    pub source: Indexed1Cell,
    pub target: Indexed1Cell,
    pub base_nat: NatTrans,
    /// Per base object, components indexed by objects of the source fibre.
    pub modification: Vec<Vec<Mor>>,
}

impl Indexed2Cell {
    pub fn identity(t: &Indexed1Cell) -> Indexed2Cell {
        let n = &t.target;
        let alpha = NatTrans::identity(&t.base_fun);
        let modification = t
            .source
            .base
            .objects()
            .map(|x| {
                let fx = t.base_fun.ob(x);
                t.source.fibres[x].objects().map(|a| n.gamma(fx, t.components[x].ob(a))).collect()
            })
            .collect();
        Indexed2Cell { source: t.clone(), target: t.clone(), base_nat: alpha, modification }
    }
}

/// Shapes and naturality of each `m_x`, and the modification axiom, which is
/// checked as naturality of the induced transformation between total functors.
pub fn check_indexed_2cell(c: &Indexed2Cell) -> Result<LawReport> {
    let mut rep = LawReport::new("indexed 2-cell");
    let (t, s) = (&c.source, &c.target);
    if t.source != s.source || t.target != s.target {
        return Err(Error::ShapeMismatch("1-cells have different endpoints".into()));
    }
    if c.base_nat.source_fun != t.base_fun || c.base_nat.target_fun != s.base_fun {
        return Err(Error::ShapeMismatch("base transformation does not run between the base functors".into()));
    }
    let br = crate::fincat::check_nat_trans(&c.base_nat)?;
    if !br.is_pass() {
        rep.absorb(br);
        return Ok(rep);
    }
    let (m, n) = (&*t.source, &*t.target);
    let b = &*m.base;
    if c.modification.len() != b.n_objs() {
        return Err(Error::MalformedTable("modification table is not total".into()));
    }
    for x in b.objects() {
        let src = &*m.fibres[x];
        let fib = &*n.fibres[s.base_fun.ob(x)];
        let na = &n.reindex[c.base_nat.at(x)];
        let comps = &c.modification[x];
        if comps.len() != src.n_objs() {
            return Err(Error::MalformedTable(format!("modification at {} is not total", b.obj_name(x))));
        }
        for a in src.objects() {
            rep.tick();
            let k = comps[a];
            if fib.dom(k) != na.ob(t.components[x].ob(a)) || fib.cod(k) != s.components[x].ob(a) {
                bail_law!(rep, "modification typing", b.obj_name(x), src.obj_name(a));
            }
        }
    }
    let gm = crate::groth::grothendieck(m)?;
    let gn = crate::groth::grothendieck(n)?;
    let pt = crate::groth::groth_1cell(t, &gm, &gn)?;
    let ps = crate::groth::groth_1cell(s, &gm, &gn)?;
    let pm = crate::groth::groth_2cell(c, &gm, &gn, &pt, &ps)?;
    let nr = crate::fincat::check_nat_trans(&pm)?;
    if !nr.is_pass() {
        rep.fail("modification axiom", nr.first().map(|v| v.witness.clone()).unwrap_or_default());
    }
    rep.checked += nr.checked;
    Ok(rep)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn arrow_over_codiscrete() -> IndexedCat {
        let base = Arc::new(FinCat::walking_arrow());
        let fib = Arc::new(FinCat::codiscrete(&["p".to_string(), "q".to_string()]));
        IndexedCat::constant(base, Variance::Covariant, fib)
    }

    #[test]
    fn constant_passes_in_both_variances() {
        let m = arrow_over_codiscrete();
        assert!(check_pseudofunctor(&m).unwrap().is_pass());
        let d = m.dual();
        assert_eq!(d.variance, Variance::Contravariant);
        assert!(check_pseudofunctor(&d).unwrap().is_pass());
        assert_eq!(d.dual(), m);
    }

    #[test]
    fn mutated_compositor_is_witnessed() {
        let mut m = arrow_over_codiscrete();
        let b = m.base.clone();
        let f = b.mor("0<=1").unwrap();
        let fib = m.fibres[0].clone();
        let swap = fib.hom(0, 1)[0];
        let key = (b.id(1), f);
        m.compositor.get_mut(&key).unwrap()[0] = swap;
        m.strict = false;
        let rep = check_pseudofunctor(&m).unwrap();
        assert_eq!(rep.first().unwrap().law, "compositor typing");
    }

    #[test]
    fn identity_and_composite_1cells() {
        let m = Arc::new(arrow_over_codiscrete());
        let id = Indexed1Cell::identity(m.clone());
        assert!(check_indexed_1cell(&id).unwrap().is_pass());
        let twice = Indexed1Cell::compose(&id, &id).unwrap();
        assert_eq!(twice, id);
        let mut bad = id.clone();
        let f = m.base.mor("0<=1").unwrap();
        bad.squares[f][0] = m.fibres[1].hom(0, 1)[0];
        let rep = check_indexed_1cell(&bad).unwrap();
        assert_eq!(rep.first().unwrap().law, "square typing");
    }
}
