//! The Grothendieck construction, its inverse, transport of 1- and 2-cells,
//! and the monoidal structure induced on total categories.
//!
//! For covariant `M` the total category has objects `(x|a)` with `a ∈ M x` and
//! morphisms `(f|a|k): (x|a) → (y|b)` with `k: (M f) a → b`. Composition is
//! `(g|b|ℓ)∘(f|a|k) = (g∘f | a | ℓ ∘ (M g)k ∘ δ_{g,f,a})`, identities are
//! `(1_x|a|γ_{x,a})`, and `(f|a|1)` is the chosen cocartesian lift. Contravariant
//! data is processed through its dual, so its total is the opposite of the
//! covariant one over the opposite base.

use crate::error::{Error, Result};
use crate::fib::{factor_through, fibre_with_embedding, ClovenFibration, Direction, Fibred1Cell, MonoidalFibrationData};
use crate::fincat::{check_functor, tuple_name, FinCat, FinFunctor, Mor, NatTrans, Ob};
use crate::indexed::{IndexedCat, Indexed1Cell, Indexed2Cell, LaxMonoidalIndexed, Variance};
use crate::moncat::{Bifunctor, MonoidalData, MonoidalFunctorData, Strength};
use crate::report::LawReport;
use std::collections::HashMap;
use std::sync::Arc;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GrothResult {
    pub total: Arc<FinCat>,
    pub fibration: ClovenFibration,
    pub variance: Variance,
    /// Total object `↦ (x, a)`.
    pub obj_prov: Vec<(Ob, Ob)>,
    /// Total morphism `↦ (f, a, k)`, read in the covariant form.
    pub mor_prov: Vec<(Mor, Ob, Mor)>,
    obj_index: HashMap<(Ob, Ob), Ob>,
    mor_index: HashMap<(Mor, Ob, Mor), Mor>,
}

impl GrothResult {
    pub fn obj_at(&self, x: Ob, a: Ob) -> Option<Ob> {
        self.obj_index.get(&(x, a)).copied()
    }

    pub fn mor_at(&self, f: Mor, a: Ob, k: Mor) -> Option<Mor> {
        self.mor_index.get(&(f, a, k)).copied()
    }
}

fn build_covariant(m: &IndexedCat) -> Result<GrothResult> {
    let b = &*m.base;
    let mut objects = Vec::new();
    let mut oprov = Vec::new();
    let mut oix = HashMap::new();
    for x in b.objects() {
        let fib = &m.fibres[x];
        for a in fib.objects() {
            oix.insert((x, a), objects.len());
            objects.push(tuple_name(&[b.obj_name(x), fib.obj_name(a)]));
            oprov.push((x, a));
        }
    }
    let mut mors = Vec::new();
    let mut mprov = Vec::new();
    let mut mix = HashMap::new();
    for f in b.morphisms() {
        let (x, y) = (b.dom(f), b.cod(f));
        let (fx, fy) = (&m.fibres[x], &m.fibres[y]);
        for a in fx.objects() {
            let fa = m.reindex[f].ob(a);
            for &k in fy.out_of(fa) {
                mix.insert((f, a, k), mors.len());
                mors.push((tuple_name(&[b.mor_name(f), fx.obj_name(a), fy.mor_name(k)]), oix[&(x, a)], oix[&(y, fy.cod(k))]));
                mprov.push((f, a, k));
            }
        }
    }
    let identity = oprov
        .iter()
        .map(|&(x, a)| mix.get(&(b.id(x), a, m.gamma(x, a))).copied().ok_or_else(|| Error::MalformedTable(format!("unitor at {}", b.obj_name(x)))))
        .collect::<Result<Vec<_>>>()?;
    let total = FinCat::build(objects, mors, identity, |gi, fi| {
        let (f, a, k) = mprov[fi];
        let (g, _, l) = mprov[gi];
        let z = b.cod(g);
        let fib = &m.fibres[z];
        let d = m.compositor.get(&(g, f))?.get(a).copied()?;
        let kk = fib.try_compose(l, fib.try_compose(m.reindex[g].mor(k), d)?)?;
        mix.get(&(b.compose(g, f), a, kk)).copied()
    })?;
    let total = Arc::new(total);
    let mut obj_prov = vec![(0, 0); total.n_objs()];
    let mut obj_index = HashMap::new();
    for x in b.objects() {
        for a in m.fibres[x].objects() {
            let e = total.obj(&tuple_name(&[b.obj_name(x), m.fibres[x].obj_name(a)])).unwrap();
            obj_prov[e] = (x, a);
            obj_index.insert((x, a), e);
        }
    }
    let mut mor_prov = vec![(0, 0, 0); total.n_mors()];
    let mut mor_index = HashMap::new();
    for &(f, a, k) in &mprov {
        let name = tuple_name(&[b.mor_name(f), m.fibres[b.dom(f)].obj_name(a), m.fibres[b.cod(f)].mor_name(k)]);
        let e = total.mor(&name).unwrap();
        mor_prov[e] = (f, a, k);
        mor_index.insert((f, a, k), e);
    }
    let proj = FinFunctor::new(
        total.clone(),
        m.base.clone(),
        obj_prov.iter().map(|p| p.0).collect(),
        mor_prov.iter().map(|p| p.0).collect(),
    )?;
    let mut cleavage = HashMap::new();
    for f in b.morphisms() {
        let x = b.dom(f);
        for a in m.fibres[x].objects() {
            let fa = m.reindex[f].ob(a);
            let lift = mor_index[&(f, a, m.fibres[b.cod(f)].id(fa))];
            cleavage.insert((f, obj_index[&(x, a)]), lift);
        }
    }
    let fibration = ClovenFibration { total: total.clone(), base: m.base.clone(), proj, cleavage, direction: Direction::Opfibration, split: m.strict };
    Ok(GrothResult { total, fibration, variance: Variance::Covariant, obj_prov, mor_prov, obj_index, mor_index })
}

/// The total category with its projection and canonical cleavage; covariant
/// data gives an opfibration, contravariant data a fibration.
pub fn grothendieck(m: &IndexedCat) -> Result<GrothResult> {
    match m.variance {
        Variance::Covariant => build_covariant(m),
        Variance::Contravariant => {
            let g = build_covariant(&m.dual())?;
            let fibration = g.fibration.dual();
            Ok(GrothResult { total: fibration.total.clone(), fibration, variance: Variance::Contravariant, ..g })
        }
    }
}

struct FibreData {
    cat: Arc<FinCat>,
    objs: Vec<Ob>,
    mors: Vec<Mor>,
    obj_pos: HashMap<Ob, Ob>,
    mor_pos: HashMap<Mor, Mor>,
}

fn fibres_of(p: &ClovenFibration) -> Result<Vec<FibreData>> {
    p.base
        .objects()
        .map(|x| {
            let (cat, objs, mors) = fibre_with_embedding(p, x)?;
            let obj_pos = objs.iter().enumerate().map(|(i, &e)| (e, i)).collect();
            let mor_pos = mors.iter().enumerate().map(|(i, &k)| (k, i)).collect();
            Ok(FibreData { cat: Arc::new(cat), objs, mors, obj_pos, mor_pos })
        })
        .collect()
}

fn opfibration_to_indexed(p: &ClovenFibration) -> Result<IndexedCat> {
    let (t, b) = (&*p.total, &*p.base);
    let fibs = fibres_of(p)?;
    let lift = |f: Mor, e: Ob| p.lift(f, e).ok_or_else(|| Error::MissingLift(b.mor_name(f).into(), t.obj_name(e).into()));
    let vertical = |phi: Mor, theta: Mor, y: Ob| -> Result<Mor> {
        let psi = factor_through(t, &p.proj, phi, theta, b.id(y)).ok_or_else(|| Error::NotUniversal(format!("factorization of {} through {}", t.mor_name(theta), t.mor_name(phi))))?;
        Ok(fibs[y].mor_pos[&psi])
    };
    let mut reindex = Vec::new();
    for f in b.morphisms() {
        let (x, y) = (b.dom(f), b.cod(f));
        let (fx, fy) = (&fibs[x], &fibs[y]);
        let obj_map = fx.objs.iter().map(|&e| Ok(fy.obj_pos[&t.cod(lift(f, e)?)])).collect::<Result<Vec<_>>>()?;
        let mor_map = fx
            .mors
            .iter()
            .map(|&k| {
                let (l1, l2) = (lift(f, t.dom(k))?, lift(f, t.cod(k))?);
                vertical(l1, t.compose(l2, k), y)
            })
            .collect::<Result<Vec<_>>>()?;
        reindex.push(FinFunctor::new(fx.cat.clone(), fy.cat.clone(), obj_map, mor_map)?);
    }
    let mut compositor = HashMap::new();
    for f in b.morphisms() {
        for &g in b.out_of(b.cod(f)) {
            let z = b.cod(g);
            let gf = b.compose(g, f);
            let comps = fibs[b.dom(f)]
                .objs
                .iter()
                .map(|&e| {
                    let l1 = lift(f, e)?;
                    let l2 = lift(g, t.cod(l1))?;
                    vertical(lift(gf, e)?, t.compose(l2, l1), z)
                })
                .collect::<Result<Vec<_>>>()?;
            compositor.insert((g, f), comps);
        }
    }
    let unitor = b
        .objects()
        .map(|x| fibs[x].objs.iter().map(|&e| vertical(lift(b.id(x), e)?, t.id(e), x)).collect::<Result<Vec<_>>>())
        .collect::<Result<Vec<_>>>()?;
    let fibres = fibs.iter().map(|f| f.cat.clone()).collect();
    Ok(IndexedCat { base: p.base.clone(), variance: Variance::Covariant, fibres, reindex, compositor, unitor, strict: false }.detect_strict())
}

/// Fibres, reindexing along chosen lifts, and compositor and unitor cells from
/// unique factorization. Opfibrations give covariant data.
pub fn fibration_to_indexed(p: &ClovenFibration) -> Result<IndexedCat> {
    match p.direction {
        Direction::Opfibration => opfibration_to_indexed(p),
        Direction::Fibration => Ok(opfibration_to_indexed(&p.dual())?.dual()),
    }
}

/// Compares `M` with the data recovered from its total category through the
/// canonical comparison `a ↦ (x|a)`, `k ↦ (1_x | a | k∘γ_{x,a})`.
pub fn roundtrip_indexed(m: &IndexedCat) -> Result<LawReport> {
    let mut rep = LawReport::new("indexed round trip");
    let m = &m.covariant_view();
    let g = build_covariant(m)?;
    let m2 = opfibration_to_indexed(&g.fibration)?;
    let b = &*m.base;
    // Φ_x on objects and morphisms, as fibre indices of m2.
    let mut phi_o: Vec<Vec<Ob>> = Vec::new();
    let mut phi_m: Vec<Vec<Mor>> = Vec::new();
    for x in b.objects() {
        let (fx, f2) = (&*m.fibres[x], &*m2.fibres[x]);
        let obs = fx.objects().map(|a| f2.obj(g.total.obj_name(g.obj_at(x, a).unwrap())).unwrap()).collect::<Vec<_>>();
        let mut ms = Vec::new();
        for k in fx.morphisms() {
            let a = fx.dom(k);
            let kk = fx.compose(k, m.gamma(x, a));
            let Some(e) = g.mor_at(b.id(x), a, kk) else {
                return Err(Error::ComparisonFailed(format!("no vertical morphism for {}", fx.mor_name(k))));
            };
            ms.push(f2.mor(g.total.mor_name(e)).ok_or_else(|| Error::ComparisonFailed(format!("{} is not vertical", g.total.mor_name(e))))?);
        }
        let mut seen_o = obs.clone();
        seen_o.sort_unstable();
        seen_o.dedup();
        let mut seen_m = ms.clone();
        seen_m.sort_unstable();
        seen_m.dedup();
        rep.tick();
        if seen_o.len() != f2.n_objs() || seen_m.len() != f2.n_mors() || obs.len() != f2.n_objs() || ms.len() != f2.n_mors() {
            rep.fail("comparison is bijective", vec![b.obj_name(x).into()]);
            return Ok(rep);
        }
        let phi = FinFunctor::new(m.fibres[x].clone(), m2.fibres[x].clone(), obs.clone(), ms.clone())?;
        let fr = check_functor(&phi)?;
        if !fr.is_pass() {
            rep.absorb(fr);
            return Ok(rep);
        }
        phi_o.push(obs);
        phi_m.push(ms);
    }
    // Transport m2 back along Φ and compare tables.
    let inv = |v: &Vec<usize>| {
        let mut out = vec![0; v.len()];
        for (i, &j) in v.iter().enumerate() {
            out[j] = i;
        }
        out
    };
    let (ipo, ipm): (Vec<Vec<Ob>>, Vec<Vec<Mor>>) = (phi_o.iter().map(inv).collect(), phi_m.iter().map(inv).collect());
    let mut back = m.clone();
    for f in b.morphisms() {
        let (x, y) = (b.dom(f), b.cod(f));
        let r2 = &m2.reindex[f];
        let r = &mut back.reindex[f];
        r.obj_map = (0..m.fibres[x].n_objs()).map(|a| ipo[y][r2.ob(phi_o[x][a])]).collect();
        r.mor_map = (0..m.fibres[x].n_mors()).map(|k| ipm[y][r2.mor(phi_m[x][k])]).collect();
    }
    for (&(gg, f), v) in &m2.compositor {
        let z = b.cod(gg);
        let dom = b.dom(f);
        back.compositor.insert((gg, f), (0..m.fibres[dom].n_objs()).map(|a| ipm[z][v[phi_o[dom][a]]]).collect());
    }
    for x in b.objects() {
        back.unitor[x] = (0..m.fibres[x].n_objs()).map(|a| ipm[x][m2.unitor[x][phi_o[x][a]]]).collect();
    }
    back.strict = m2.strict;
    for f in b.morphisms() {
        rep.tick();
        if back.reindex[f] != m.reindex[f] {
            rep.fail("recovered reindexing agrees", vec![b.mor_name(f).into()]);
            return Ok(rep);
        }
    }
    let mut keys: Vec<_> = m.compositor.keys().copied().collect();
    keys.sort_unstable();
    for key in keys {
        rep.tick();
        if back.compositor.get(&key) != m.compositor.get(&key) {
            rep.fail("recovered compositor agrees", vec![b.mor_name(key.0).into(), b.mor_name(key.1).into()]);
            return Ok(rep);
        }
    }
    for x in b.objects() {
        rep.tick();
        if back.unitor[x] != m.unitor[x] {
            rep.fail("recovered unitor agrees", vec![b.obj_name(x).into()]);
            return Ok(rep);
        }
    }
    rep.tick();
    if back.strict != m.strict {
        rep.fail("strictness agrees", vec![]);
    }
    Ok(rep)
}

/// Compares `P` with the total category of its indexed data through
/// `(f | e | k) ↦ k ∘ Cocart(f, e)`, which must be an isomorphism over the base
/// sending canonical lifts to chosen lifts.
pub fn roundtrip_fibration(p: &ClovenFibration) -> Result<LawReport> {
    let mut rep = LawReport::new("fibration round trip");
    let op = match p.direction {
        Direction::Opfibration => p.clone(),
        Direction::Fibration => p.dual(),
    };
    let fibs = fibres_of(&op)?;
    let m = opfibration_to_indexed(&op)?;
    let g = build_covariant(&m)?;
    let (t, b) = (&*op.total, &*op.base);
    let obj_map: Vec<Ob> = g.obj_prov.iter().map(|&(x, a)| fibs[x].objs[a]).collect();
    let mut mor_map = Vec::new();
    for &(f, a, k) in &g.mor_prov {
        let e = fibs[b.dom(f)].objs[a];
        let lift = op.lift(f, e).ok_or_else(|| Error::MissingLift(b.mor_name(f).into(), t.obj_name(e).into()))?;
        mor_map.push(t.compose(fibs[b.cod(f)].mors[k], lift));
    }
    let phi = FinFunctor::new(g.total.clone(), op.total.clone(), obj_map, mor_map)?;
    let fr = check_functor(&phi)?;
    if !fr.is_pass() {
        rep.absorb(fr);
        return Ok(rep);
    }
    rep.checked += fr.checked;
    let bij = |v: &[usize], n: usize| {
        let mut s = v.to_vec();
        s.sort_unstable();
        s.dedup();
        s.len() == n && v.len() == n
    };
    rep.tick();
    if !bij(&phi.obj_map, t.n_objs()) || !bij(&phi.mor_map, t.n_mors()) {
        rep.fail("comparison is bijective", vec![]);
        return Ok(rep);
    }
    for k in g.total.morphisms() {
        rep.tick();
        if op.proj.mor(phi.mor(k)) != g.fibration.proj.mor(k) {
            rep.fail("comparison lies over the base", vec![g.total.mor_name(k).into()]);
            return Ok(rep);
        }
    }
    let mut lifts: Vec<_> = g.fibration.cleavage.iter().map(|(&(f, e), &k)| (f, e, k)).collect();
    lifts.sort_unstable();
    for (f, e, k) in lifts {
        rep.tick();
        if op.lift(f, phi.ob(e)) != Some(phi.mor(k)) {
            rep.fail("comparison preserves chosen lifts", vec![b.mor_name(f).into(), g.total.obj_name(e).into()]);
            return Ok(rep);
        }
    }
    rep.tick();
    if m.strict != p.split {
        rep.fail("split iff recovered data strict", vec![]);
    }
    Ok(rep)
}

fn covariant_only(m: &IndexedCat) -> Result<()> {
    if m.variance != Variance::Covariant {
        return Err(Error::Variance("cells are transported for covariant data".into()));
    }
    Ok(())
}

/// `P_τ(f|a|k) = (F f | τ_x a | τ_y(k) ∘ τ_{f,a})`.
pub fn groth_1cell(c: &Indexed1Cell, gm: &GrothResult, gn: &GrothResult) -> Result<Fibred1Cell> {
    covariant_only(&c.source)?;
    covariant_only(&c.target)?;
    let (m, n) = (&*c.source, &*c.target);
    let ff = &c.base_fun;
    let b = &*m.base;
    let obj_map = gm
        .obj_prov
        .iter()
        .map(|&(x, a)| gn.obj_at(ff.ob(x), c.components[x].ob(a)).ok_or_else(|| Error::UnknownObject(b.obj_name(x).into())))
        .collect::<Result<Vec<_>>>()?;
    let mor_map = gm
        .mor_prov
        .iter()
        .map(|&(f, a, k)| {
            let y = b.cod(f);
            let fib = &n.fibres[ff.ob(y)];
            let kk = fib.compose(c.components[y].mor(k), c.squares[f][a]);
            gn.mor_at(ff.mor(f), c.components[b.dom(f)].ob(a), kk).ok_or_else(|| Error::UnknownMorphism(b.mor_name(f).into()))
        })
        .collect::<Result<Vec<_>>>()?;
    let top = FinFunctor::new(gm.total.clone(), gn.total.clone(), obj_map, mor_map)?;
    Ok(Fibred1Cell { source: gm.fibration.clone(), target: gn.fibration.clone(), top, bottom: ff.clone() })
}

/// `(P_m)_{(x|a)} = (α_x | τ_x a | (m_x)_a)`.
pub fn groth_2cell(c: &Indexed2Cell, gm: &GrothResult, gn: &GrothResult, pt: &Fibred1Cell, ps: &Fibred1Cell) -> Result<NatTrans> {
    let t = &c.source;
    let components = gm
        .obj_prov
        .iter()
        .map(|&(x, a)| {
            gn.mor_at(c.base_nat.at(x), t.components[x].ob(a), c.modification[x][a])
                .ok_or_else(|| Error::UnknownMorphism(format!("modification component at {}", t.source.base.obj_name(x))))
        })
        .collect::<Result<Vec<_>>>()?;
    NatTrans::new(pt.top.clone(), ps.top.clone(), components)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MonoidalGrothResult {
    pub groth: GrothResult,
    pub monoidal: MonoidalData,
    pub base_monoidal: MonoidalData,
}

impl MonoidalGrothResult {
    pub fn fibration_data(&self) -> MonoidalFibrationData {
        MonoidalFibrationData { carrier: self.groth.fibration.clone(), total_monoidal: self.monoidal.clone(), base_monoidal: self.base_monoidal.clone() }
    }
}

/// Tensor `(x|a) ⊗ (y|b) = (x⊗y | μ(a,b))` on objects and
/// `(f|a|k) ⊗ (g|b|ℓ) = (f⊗g | μ(a,b) | μ(k,ℓ) ∘ μ_{f,g})` on morphisms, unit
/// `(I|μ_0)`, associator `(α | μ(μ(a,b),c) | ω)`, unitors `(l | μ(μ_0,a) | ξ⁻¹)`
/// and `(r | μ(a,μ_0) | ζ)`, braiding `(b | μ(a,b) | v)`.
pub fn monoidal_grothendieck(l: &LaxMonoidalIndexed) -> Result<MonoidalGrothResult> {
    covariant_only(&l.carrier)?;
    let m = &l.carrier;
    let bm = &l.base_monoidal;
    let g = build_covariant(m)?;
    let t = g.total.clone();
    let b = &*m.base;
    let tensor = Bifunctor::build(
        t.clone(),
        t.clone(),
        t.clone(),
        |e1, e2| {
            let ((x, a), (y, c)) = (g.obj_prov[e1], g.obj_prov[e2]);
            g.obj_at(bm.t(x, y)?, l.mu_ob(x, y, a, c)?)
        },
        |k1, k2| {
            let ((f, a, k), (h, c, q)) = (g.mor_prov[k1], g.mor_prov[k2]);
            let fh = bm.tensor.mor(f, h)?;
            let cell = l.cell(f, h, a, c)?;
            let kq = l.laxator.get(&(b.cod(f), b.cod(h)))?.mor(k, q)?;
            let fib = &m.fibres[b.cod(fh)];
            g.mor_at(fh, l.mu_ob(b.dom(f), b.dom(h), a, c)?, fib.try_compose(kq, cell)?)
        },
    );
    let unit = g.obj_at(bm.unit, l.unit_obj).ok_or_else(|| Error::UnknownObject("laxator unit".into()))?;
    let mut mon = MonoidalData {
        base: t.clone(),
        tensor,
        unit,
        associator: HashMap::new(),
        left_unitor: HashMap::new(),
        right_unitor: HashMap::new(),
        braiding: None,
        symmetric: l.symmetric,
    };
    let bad = |what: &str| Error::MalformedTable(format!("{what} component missing"));
    for (e1, e2, e3) in mon.triples() {
        let ((x, a), (y, c), (z, d)) = (g.obj_prov[e1], g.obj_prov[e2], g.obj_prov[e3]);
        let xy = bm.t(x, y).unwrap();
        let lhs = l.mu_ob(xy, z, l.mu_ob(x, y, a, c).unwrap(), d).unwrap();
        let w = l.omega.get(&(x, y, z)).and_then(|o| o.get(&(a, c, d))).copied().ok_or_else(|| bad("omega"))?;
        let al = g.mor_at(bm.alpha(x, y, z), lhs, w).ok_or_else(|| bad("omega"))?;
        mon.associator.insert((e1, e2, e3), al);
    }
    for e in t.objects() {
        let (x, a) = g.obj_prov[e];
        let fib = &m.fibres[x];
        if mon.t(unit, e).is_some() {
            let ua = l.mu_ob(bm.unit, x, l.unit_obj, a).unwrap();
            let xi = l.xi.get(&x).and_then(|v| v.get(&a)).copied().ok_or_else(|| bad("xi"))?;
            let xi_inv = fib.inverse(xi).ok_or_else(|| Error::LawFailure("xi is not invertible".into()))?;
            mon.left_unitor.insert(e, g.mor_at(bm.left_unitor[&x], ua, xi_inv).ok_or_else(|| bad("xi"))?);
        }
        if mon.t(e, unit).is_some() {
            let au = l.mu_ob(x, bm.unit, a, l.unit_obj).unwrap();
            let z = l.zeta.get(&x).and_then(|v| v.get(&a)).copied().ok_or_else(|| bad("zeta"))?;
            mon.right_unitor.insert(e, g.mor_at(bm.right_unitor[&x], au, z).ok_or_else(|| bad("zeta"))?);
        }
    }
    if let (Some(vs), Some(bb)) = (&l.braid_cell, &bm.braiding) {
        let mut br = HashMap::new();
        for (e1, e2) in mon.tensor.defined_pairs() {
            let ((x, a), (y, c)) = (g.obj_prov[e1], g.obj_prov[e2]);
            let v = vs.get(&(x, y)).and_then(|v| v.get(&(a, c))).copied().ok_or_else(|| bad("braid cell"))?;
            let k = g.mor_at(bb[&(x, y)], l.mu_ob(x, y, a, c).unwrap(), v).ok_or_else(|| bad("braid cell"))?;
            br.insert((e1, e2), k);
        }
        mon.braiding = Some(br);
    } else {
        mon.symmetric = false;
    }
    Ok(MonoidalGrothResult { groth: g, monoidal: mon, base_monoidal: bm.clone() })
}

/// The braiding table on the total category, when braid cells are present.
pub fn braided_symmetric_extension(l: &LaxMonoidalIndexed) -> Result<Option<HashMap<(Ob, Ob), Mor>>> {
    Ok(monoidal_grothendieck(l)?.monoidal.braiding)
}

pub(crate) fn detect_strength(c: &FinCat, laxator: &HashMap<(Ob, Ob), Mor>, unit: Mor) -> Strength {
    if laxator.values().all(|&k| c.is_identity(k)) && c.is_identity(unit) {
        Strength::Strict
    } else if laxator.values().all(|&k| c.is_iso(k)) && c.is_iso(unit) {
        Strength::Strong
    } else {
        Strength::Lax
    }
}

/// `P_τ` with laxator `(ψ_{x,y} | ν(τa,τb) | m_{x,y})` and unit `(ψ_0 | ν_0 | m_0)`.
pub fn groth_monoidal_1cell(c: &Indexed1Cell, ts: &MonoidalGrothResult, tt: &MonoidalGrothResult) -> Result<MonoidalFunctorData> {
    let mp = c.monoidal_part.as_ref().ok_or_else(|| Error::ShapeMismatch("1-cell has no monoidal part".into()))?;
    let cell = groth_1cell(c, &ts.groth, &tt.groth)?;
    let (gs, gt) = (&ts.groth, &tt.groth);
    let mut laxator = HashMap::new();
    for (e1, e2) in ts.monoidal.tensor.defined_pairs() {
        let (f1, f2) = (cell.top.ob(e1), cell.top.ob(e2));
        let Some(nu) = tt.monoidal.t(f1, f2) else { continue };
        let ((x, a), (y, b)) = (gs.obj_prov[e1], gs.obj_prov[e2]);
        let psi = mp.base.laxator.get(&(x, y)).copied().ok_or_else(|| Error::MalformedTable("base laxator".into()))?;
        let k = mp.cells.get(&(x, y)).and_then(|v| v.get(&(a, b))).copied().ok_or_else(|| Error::MalformedTable("monoidal 1-cell component".into()))?;
        let (_, nu_obj) = gt.obj_prov[nu];
        laxator.insert((e1, e2), gt.mor_at(psi, nu_obj, k).ok_or_else(|| Error::MalformedTable("monoidal 1-cell component".into()))?);
    }
    let (_, nu0) = gt.obj_prov[tt.monoidal.unit];
    let unit_mor = gt.mor_at(mp.base.unit_mor, nu0, mp.unit_cell).ok_or_else(|| Error::MalformedTable("monoidal unit cell".into()))?;
    let strength = detect_strength(&gt.total, &laxator, unit_mor);
    Ok(MonoidalFunctorData { underlying: cell.top, laxator, unit_mor, strength, braided: false })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fib::check_fibration;
    use crate::fincat::check_category;
    use crate::moncat::check_monoidal;

    /// Arrow base; fibre over 0 is discrete on two objects, over 1 a point;
    /// the contravariant reindexing picks the first object.
    fn picks_first() -> IndexedCat {
        let base = Arc::new(FinCat::walking_arrow());
        let f0 = Arc::new(FinCat::discrete(&["p", "q"]));
        let f1 = Arc::new(FinCat::terminal());
        let f = base.mor("0<=1").unwrap();
        let reindex = base
            .morphisms()
            .map(|k| {
                if k == f {
                    FinFunctor::new(f1.clone(), f0.clone(), vec![0], vec![0]).unwrap()
                } else if base.dom(k) == 0 {
                    FinFunctor::identity(f0.clone())
                } else {
                    FinFunctor::identity(f1.clone())
                }
            })
            .collect();
        IndexedCat::strict(base, Variance::Contravariant, vec![f0, f1], reindex).unwrap()
    }

    #[test]
    fn contravariant_counts() {
        let m = picks_first();
        assert!(crate::indexed::check_pseudofunctor(&m).unwrap().is_pass());
        let g = grothendieck(&m).unwrap();
        assert_eq!((g.total.n_objs(), g.total.n_mors()), (3, 4));
        assert!(check_category(&g.total).unwrap().is_pass());
        assert_eq!(g.fibration.direction, Direction::Fibration);
        let rep = check_fibration(&g.fibration).unwrap();
        assert!(rep.is_pass(), "{rep}");
        assert!(g.fibration.split);
    }

    #[test]
    fn covariant_counts_and_roundtrips() {
        let m = picks_first().dual();
        let g = grothendieck(&m).unwrap();
        assert_eq!((g.total.n_objs(), g.total.n_mors()), (3, 4));
        assert!(roundtrip_indexed(&m).unwrap().is_pass());
        assert!(roundtrip_indexed(&picks_first()).unwrap().is_pass());
        assert!(roundtrip_fibration(&g.fibration).unwrap().is_pass());
        let back = fibration_to_indexed(&grothendieck(&picks_first()).unwrap().fibration).unwrap();
        assert_eq!(back.variance, Variance::Contravariant);
        assert!(back.strict);
    }

    #[test]
    fn constant_over_terminal_is_the_fibre() {
        let c = Arc::new(FinCat::walking_arrow());
        let m = IndexedCat::constant(Arc::new(FinCat::terminal()), Variance::Covariant, c.clone());
        let g = grothendieck(&m).unwrap();
        assert_eq!((g.total.n_objs(), g.total.n_mors()), (c.n_objs(), c.n_mors()));
    }

    #[test]
    fn identity_1cell_transports_to_identity() {
        let m = Arc::new(picks_first().dual());
        let g = grothendieck(&m).unwrap();
        let id = Indexed1Cell::identity(m.clone());
        let cell = groth_1cell(&id, &g, &g).unwrap();
        assert!(cell.top.is_identity());
        let two = Indexed2Cell::identity(&id);
        assert!(crate::indexed::check_indexed_2cell(&two).unwrap().is_pass());
    }

    #[test]
    fn trivial_laxator_reproduces_base() {
        let base = Arc::new(FinCat::walking_arrow());
        let w = crate::moncat::find_cocartesian(&base, Default::default()).unwrap();
        let bm = w.monoidal().unwrap();
        let one = Arc::new(FinCat::terminal());
        let m = IndexedCat::constant(base.clone(), Variance::Covariant, one.clone());
        let mut l = LaxMonoidalIndexed {
            carrier: m,
            base_monoidal: bm.clone(),
            laxator: HashMap::new(),
            laxator_cells: HashMap::new(),
            unit_obj: 0,
            omega: HashMap::new(),
            zeta: HashMap::new(),
            xi: HashMap::new(),
            braid_cell: Some(HashMap::new()),
            symmetric: true,
        };
        let pt = || [((0, 0), 0)].into_iter().collect::<HashMap<_, _>>();
        for (x, y) in bm.tensor.defined_pairs() {
            l.laxator.insert((x, y), Bifunctor::build(one.clone(), one.clone(), one.clone(), |_, _| Some(0), |_, _| Some(0)));
            l.braid_cell.as_mut().unwrap().insert((x, y), pt());
        }
        for f in base.morphisms() {
            for h in base.morphisms() {
                l.laxator_cells.insert((f, h), pt());
            }
        }
        for t in bm.triples() {
            l.omega.insert(t, [((0, 0, 0), 0)].into_iter().collect());
        }
        for x in base.objects() {
            l.zeta.insert(x, [(0, 0)].into_iter().collect());
            l.xi.insert(x, [(0, 0)].into_iter().collect());
        }
        let rep = crate::indexed::check_lax_monoidal(&l).unwrap();
        assert!(rep.is_pass(), "{rep}");
        let total = monoidal_grothendieck(&l).unwrap();
        assert!(check_monoidal(&total.monoidal).unwrap().is_pass());
        let fr = crate::fib::check_monoidal_fibration(&total.fibration_data()).unwrap();
        assert!(fr.is_pass(), "{fr}");
    }
}
