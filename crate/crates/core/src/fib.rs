//! Cloven fibrations and opfibrations over finite categories.
//!
//! Opfibrations are handled directly; a fibration is processed as the
//! opfibration obtained by taking opposites of total and base.

use crate::error::{Error, Result};
use crate::fincat::{check_functor, check_nat_trans, FinCat, FinFunctor, Mor, NatTrans, Ob};
use crate::moncat::{check_monoidal, MonoidalData};
use crate::report::{bail_law, LawReport};
use serde::{Deserialize, Serialize};
use std::collections::HashMap;
use std::sync::Arc;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Direction {
    Fibration,
    Opfibration,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClovenFibration {
    pub total: Arc<FinCat>,
    pub base: Arc<FinCat>,
    pub proj: FinFunctor,
    /// `(f, e) ↦` chosen lift of `f` ending at `e` (fibration) or starting at `e` (opfibration).
    pub cleavage: HashMap<(Mor, Ob), Mor>,
    pub direction: Direction,
    pub split: bool,
}

impl ClovenFibration {
    pub fn dual(&self) -> ClovenFibration {
        let total = Arc::new(self.total.opposite());
        let base = Arc::new(self.base.opposite());
        let proj = self.proj.opposite(total.clone(), base.clone());
        let direction = match self.direction {
            Direction::Fibration => Direction::Opfibration,
            Direction::Opfibration => Direction::Fibration,
        };
        ClovenFibration { total, base, proj, cleavage: self.cleavage.clone(), direction, split: self.split }
    }

    fn as_opfibration(&self) -> ClovenFibration {
        match self.direction {
            Direction::Opfibration => self.clone(),
            Direction::Fibration => self.dual(),
        }
    }

    /// Objects of the total category over `x`.
    pub fn over(&self, x: Ob) -> Vec<Ob> {
        self.total.objects().filter(|&e| self.proj.ob(e) == x).collect()
    }

    pub fn lift(&self, f: Mor, e: Ob) -> Option<Mor> {
        self.cleavage.get(&(f, e)).copied()
    }

    /// Projection with the identity cleavage `(f, a) ↦ (f, 1_a)` on `X × F → X`.
    pub fn projection(base: Arc<FinCat>, fibre: Arc<FinCat>, direction: Direction) -> ClovenFibration {
        let total = Arc::new(FinCat::product(&base, &fibre));
        let proj = FinFunctor::from_fns(total.clone(), base.clone(), |e| lookup_pair_obj(&total, &base, &fibre, e).0, |k| {
            lookup_pair_mor(&total, &base, &fibre, k).0
        });
        let mut cleavage = HashMap::new();
        for f in base.morphisms() {
            for a in fibre.objects() {
                let at = match direction {
                    Direction::Opfibration => base.dom(f),
                    Direction::Fibration => base.cod(f),
                };
                let e = total.obj(&crate::fincat::pair_name(base.obj_name(at), fibre.obj_name(a))).unwrap();
                let k = total.mor(&crate::fincat::pair_name(base.mor_name(f), fibre.mor_name(fibre.id(a)))).unwrap();
                cleavage.insert((f, e), k);
            }
        }
        ClovenFibration { total, base, proj, cleavage, direction, split: true }
    }
}

fn lookup_pair_obj(total: &FinCat, base: &FinCat, fibre: &FinCat, e: Ob) -> (Ob, Ob) {
    let parts = crate::fincat::split_tuple(total.obj_name(e)).expect("pair name");
    (base.obj(&parts[0]).unwrap(), fibre.obj(&parts[1]).unwrap())
}

fn lookup_pair_mor(total: &FinCat, base: &FinCat, fibre: &FinCat, k: Mor) -> (Mor, Mor) {
    let parts = crate::fincat::split_tuple(total.mor_name(k)).expect("pair name");
    (base.mor(&parts[0]).unwrap(), fibre.mor(&parts[1]).unwrap())
}

/// Is `phi` cocartesian for `proj`: every `θ` out of `dom φ` over `g∘Pφ` factors
/// uniquely as `ψ∘φ` with `ψ` over `g`.
pub fn is_cocartesian_for(total: &FinCat, base: &FinCat, proj: &FinFunctor, phi: Mor) -> bool {
    let (e, e1) = (total.dom(phi), total.cod(phi));
    let f = proj.mor(phi);
    let y = base.cod(f);
    for e2 in total.objects() {
        let z = proj.ob(e2);
        let mut seen = std::collections::HashSet::new();
        for &psi in total.hom(e1, e2) {
            if !seen.insert((proj.mor(psi), total.compose(psi, phi))) {
                return false;
            }
        }
        let mut expected = 0;
        for &theta in total.hom(e, e2) {
            let h = proj.mor(theta);
            expected += base.hom(y, z).iter().filter(|&&g| base.compose(g, f) == h).count();
        }
        if expected != seen.len() {
            return false;
        }
    }
    true
}

pub fn is_cocartesian(p: &ClovenFibration, phi: Mor) -> bool {
    match p.direction {
        Direction::Opfibration => is_cocartesian_for(&p.total, &p.base, &p.proj, phi),
        Direction::Fibration => {
            let d = p.dual();
            is_cocartesian_for(&d.total, &d.base, &d.proj, phi)
        }
    }
}

/// Is `phi` cartesian for the projection (independent of the stated direction).
pub fn is_cartesian(p: &ClovenFibration, phi: Mor) -> bool {
    let total = p.total.opposite();
    let base = p.base.opposite();
    let proj = FinFunctor { source: Arc::new(total.clone()), target: Arc::new(base.clone()), obj_map: p.proj.obj_map.clone(), mor_map: p.proj.mor_map.clone() };
    is_cocartesian_for(&total, &base, &proj, phi)
}

/// The lifting property in the stated direction.
pub fn is_chosen_kind(p: &ClovenFibration, phi: Mor) -> bool {
    match p.direction {
        Direction::Opfibration => is_cocartesian_for(&p.total, &p.base, &p.proj, phi),
        Direction::Fibration => is_cartesian(p, phi),
    }
}

/// Picks, for every `(f, e)`, the least (by identifier) lift with the
/// universal property.
pub fn synthesize_cleavage(total: Arc<FinCat>, base: Arc<FinCat>, proj: FinFunctor, direction: Direction) -> Result<ClovenFibration> {
    let probe = ClovenFibration { total: total.clone(), base: base.clone(), proj, cleavage: HashMap::new(), direction, split: false };
    let op = probe.as_opfibration();
    let mut cleavage = HashMap::new();
    for f in op.base.morphisms() {
        for e in op.total.objects().filter(|&e| op.proj.ob(e) == op.base.dom(f)) {
            let found = op.total.out_of(e).iter().copied().find(|&k| op.proj.mor(k) == f && is_cocartesian_for(&op.total, &op.base, &op.proj, k));
            match found {
                Some(k) => {
                    cleavage.insert((f, e), k);
                }
                None => return Err(Error::MissingLift(op.base.mor_name(f).into(), op.total.obj_name(e).into())),
            }
        }
    }
    let mut p = ClovenFibration { cleavage, ..probe };
    p.split = split_holds(&p.as_opfibration());
    Ok(p)
}

fn split_holds(op: &ClovenFibration) -> bool {
    let (t, b) = (&*op.total, &*op.base);
    for x in b.objects() {
        for e in op.over(x) {
            if op.lift(b.id(x), e) != Some(t.id(e)) {
                return false;
            }
        }
    }
    for f in b.morphisms() {
        for &g in b.out_of(b.cod(f)) {
            for e in op.over(b.dom(f)) {
                let (Some(l1), Some(l3)) = (op.lift(f, e), op.lift(b.compose(g, f), e)) else { return false };
                let Some(l2) = op.lift(g, t.cod(l1)) else { return false };
                if t.compose(l2, l1) != l3 {
                    return false;
                }
            }
        }
    }
    true
}

/// Projection functoriality, a lift for every `(f, e)` with the universal
/// property, and (when flagged) the split equalities. All missing lifts are
/// reported.
pub fn check_fibration(p: &ClovenFibration) -> Result<LawReport> {
    let what = match p.direction {
        Direction::Fibration => "fibration",
        Direction::Opfibration => "opfibration",
    };
    let mut rep = LawReport::new(what);
    if *p.proj.source != *p.total || *p.proj.target != *p.base {
        return Err(Error::ShapeMismatch("projection does not run from total to base".into()));
    }
    let fr = check_functor(&p.proj)?;
    if !fr.is_pass() {
        rep.absorb(fr);
        return Ok(rep);
    }
    rep.checked += fr.checked;
    let op = p.as_opfibration();
    let (t, b) = (&*op.total, &*op.base);
    let mut missing = false;
    for f in b.morphisms() {
        for e in op.over(b.dom(f)) {
            rep.tick();
            match op.lift(f, e) {
                None => {
                    rep.fail("missing lift", vec![b.mor_name(f).into(), t.obj_name(e).into()]);
                    missing = true;
                }
                Some(k) => {
                    if t.dom(k) != e || op.proj.mor(k) != f {
                        rep.fail("lift lies over the wrong morphism", vec![b.mor_name(f).into(), t.obj_name(e).into()]);
                        return Ok(rep);
                    }
                    if !is_cocartesian_for(t, b, &op.proj, k) {
                        let law = if p.direction == Direction::Fibration { "lift is cartesian" } else { "lift is cocartesian" };
                        rep.fail(law, vec![b.mor_name(f).into(), t.obj_name(e).into()]);
                        return Ok(rep);
                    }
                }
            }
        }
    }
    if missing {
        return Ok(rep);
    }
    if p.split {
        rep.tick();
        for x in b.objects() {
            for e in op.over(x) {
                if op.lift(b.id(x), e) != Some(t.id(e)) {
                    bail_law!(rep, "split: identity lifts", b.obj_name(x), t.obj_name(e));
                }
            }
        }
        for f in b.morphisms() {
            for &g in b.out_of(b.cod(f)) {
                for e in op.over(b.dom(f)) {
                    rep.tick();
                    let l1 = op.lift(f, e).unwrap();
                    let l2 = op.lift(g, t.cod(l1)).unwrap();
                    if op.lift(b.compose(g, f), e) != Some(t.compose(l2, l1)) {
                        bail_law!(rep, "split: lifts compose", b.mor_name(g), b.mor_name(f), t.obj_name(e));
                    }
                }
            }
        }
    }
    Ok(rep)
}

/// Objects over `x` and morphisms over `1_x`, with embeddings into the total.
pub fn fibre_with_embedding(p: &ClovenFibration, x: Ob) -> Result<(FinCat, Vec<Ob>, Vec<Mor>)> {
    if x >= p.base.n_objs() {
        return Err(Error::UnknownObject(format!("{x}")));
    }
    let objs = p.over(x);
    let idx = p.base.id(x);
    Ok(p.total.subcategory(&objs, |k| p.proj.mor(k) == idx))
}

pub fn fibre(p: &ClovenFibration, x: Ob) -> Result<FinCat> {
    Ok(fibre_with_embedding(p, x)?.0)
}

/// The unique `ψ` over `g` with `ψ∘φ = θ`, if there is exactly one.
pub fn factor_through(total: &FinCat, proj: &FinFunctor, phi: Mor, theta: Mor, g: Mor) -> Option<Mor> {
    let mut hits = total.hom(total.cod(phi), total.cod(theta)).iter().copied().filter(|&psi| proj.mor(psi) == g && total.compose(psi, phi) == theta);
    let first = hits.next()?;
    hits.next().is_none().then_some(first)
}

/// Reindexing along `f`: pushforward `f_!` between fibres for an opfibration,
/// pullback `f^*` for a fibration. Fibres are given with their embeddings.
pub fn reindex(p: &ClovenFibration, f: Mor) -> Result<FinFunctor> {
    let op = p.as_opfibration();
    let (x, y) = (op.base.dom(f), op.base.cod(f));
    let (fx, ex, mx) = fibre_with_embedding(&op, x)?;
    let (fy, ey, _) = fibre_with_embedding(&op, y)?;
    let pos_y: HashMap<Ob, Ob> = ey.iter().enumerate().map(|(i, &e)| (e, i)).collect();
    let fx = Arc::new(fx);
    let fy = Arc::new(fy);
    let t = &*op.total;
    let lift = |e: Ob| op.lift(f, e).ok_or_else(|| Error::MissingLift(op.base.mor_name(f).into(), t.obj_name(e).into()));
    let mut obj_map = Vec::new();
    for &e in &ex {
        obj_map.push(pos_y[&t.cod(lift(e)?)]);
    }
    let idy = op.base.id(y);
    let mut mor_map = Vec::new();
    for &k in &mx {
        let (l1, l2) = (lift(t.dom(k))?, lift(t.cod(k))?);
        let psi = factor_through(t, &op.proj, l1, t.compose(l2, k), idy)
            .ok_or_else(|| Error::NotUniversal(format!("reindexing of {}", t.mor_name(k))))?;
        mor_map.push(fy.mor(t.mor_name(psi)).unwrap());
    }
    let r = FinFunctor::new(fx, fy, obj_map, mor_map)?;
    Ok(match p.direction {
        Direction::Opfibration => r,
        Direction::Fibration => {
            let (s, tt) = (Arc::new(r.source.opposite()), Arc::new(r.target.opposite()));
            r.opposite(s, tt)
        }
    })
}

/// Commutative square of functors `Q∘H = F∘P` between fibrations.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Fibred1Cell {
    pub source: ClovenFibration,
    pub target: ClovenFibration,
    pub top: FinFunctor,
    pub bottom: FinFunctor,
}

/// Commutation and preservation of chosen lifts; every cartesian morphism is
/// a chosen lift followed by a vertical isomorphism, so this covers them all.
pub fn check_fibred_1cell(c: &Fibred1Cell) -> Result<LawReport> {
    let mut rep = LawReport::new("fibred 1-cell");
    let (p, q) = (&c.source, &c.target);
    if *c.top.source != *p.total || *c.top.target != *q.total || *c.bottom.source != *p.base || *c.bottom.target != *q.base {
        return Err(Error::ShapeMismatch("1-cell functors have the wrong endpoints".into()));
    }
    if p.direction != q.direction {
        return Err(Error::ShapeMismatch("fibrations of different directions".into()));
    }
    for fun in [&c.top, &c.bottom] {
        let r = check_functor(fun)?;
        if !r.is_pass() {
            rep.absorb(r);
            return Ok(rep);
        }
        rep.checked += r.checked;
    }
    for e in p.total.objects() {
        rep.tick();
        if q.proj.ob(c.top.ob(e)) != c.bottom.ob(p.proj.ob(e)) {
            bail_law!(rep, "square commutes on objects", p.total.obj_name(e));
        }
    }
    for k in p.total.morphisms() {
        rep.tick();
        if q.proj.mor(c.top.mor(k)) != c.bottom.mor(p.proj.mor(k)) {
            bail_law!(rep, "square commutes on morphisms", p.total.mor_name(k));
        }
    }
    let mut lifts: Vec<_> = p.cleavage.iter().map(|(&(f, e), &k)| (f, e, k)).collect();
    lifts.sort_unstable();
    let qop = q.as_opfibration();
    for (f, e, k) in lifts {
        rep.tick();
        if !is_cocartesian_for(&qop.total, &qop.base, &qop.proj, c.top.mor(k)) {
            bail_law!(rep, "preserves lifts", p.base.mor_name(f), p.total.obj_name(e));
        }
    }
    Ok(rep)
}

/// `β: H ⇒ K` over `α: F ⇒ G`.
pub fn check_fibred_2cell(beta: &NatTrans, alpha: &NatTrans, source: &Fibred1Cell, target: &Fibred1Cell) -> Result<LawReport> {
    let mut rep = LawReport::new("fibred 2-cell");
    if beta.source_fun != source.top || beta.target_fun != target.top || alpha.source_fun != source.bottom || alpha.target_fun != target.bottom {
        return Err(Error::ShapeMismatch("2-cell does not run between the given 1-cells".into()));
    }
    for t in [beta, alpha] {
        let r = check_nat_trans(t)?;
        if !r.is_pass() {
            rep.absorb(r);
            return Ok(rep);
        }
        rep.checked += r.checked;
    }
    let (p, q) = (&source.source, &source.target);
    for e in p.total.objects() {
        rep.tick();
        if q.proj.mor(beta.at(e)) != alpha.at(p.proj.ob(e)) {
            bail_law!(rep, "lies over the base transformation", p.total.obj_name(e));
        }
    }
    Ok(rep)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MonoidalFibrationData {
    pub carrier: ClovenFibration,
    pub total_monoidal: MonoidalData,
    pub base_monoidal: MonoidalData,
}

/// Strict monoidality of the projection, preservation of chosen lifts by the
/// tensor, and invertibility of the comparison between reindexed tensors.
pub fn check_monoidal_fibration(m: &MonoidalFibrationData) -> Result<LawReport> {
    let mut rep = LawReport::new("monoidal fibration");
    let p = &m.carrier;
    let (tm, bm) = (&m.total_monoidal, &m.base_monoidal);
    if *tm.base != *p.total || *bm.base != *p.base {
        return Err(Error::ShapeMismatch("monoidal structures live on other categories".into()));
    }
    for r in [check_fibration(p)?, check_monoidal(tm)?, check_monoidal(bm)?] {
        if !r.is_pass() {
            rep.absorb(r);
            return Ok(rep);
        }
        rep.checked += r.checked;
    }
    let (t, b) = (&*p.total, &*p.base);
    let pr = &p.proj;
    for (e1, e2) in tm.tensor.defined_pairs() {
        rep.tick();
        if bm.t(pr.ob(e1), pr.ob(e2)) != Some(pr.ob(tm.tensor.ob_u(e1, e2))) {
            bail_law!(rep, "projection preserves tensor on objects", t.obj_name(e1), t.obj_name(e2));
        }
    }
    for k1 in t.morphisms() {
        for k2 in t.morphisms() {
            let Some(k) = tm.tensor.mor(k1, k2) else { continue };
            rep.tick();
            if bm.tensor.mor(pr.mor(k1), pr.mor(k2)) != Some(pr.mor(k)) {
                bail_law!(rep, "projection preserves tensor on morphisms", t.mor_name(k1), t.mor_name(k2));
            }
        }
    }
    rep.tick();
    if pr.ob(tm.unit) != bm.unit {
        bail_law!(rep, "projection preserves unit", t.obj_name(tm.unit));
    }
    for (&(a, c, d), &al) in &tm.associator {
        rep.tick();
        if bm.associator.get(&(pr.ob(a), pr.ob(c), pr.ob(d))) != Some(&pr.mor(al)) {
            bail_law!(rep, "projection preserves associator", t.obj_name(a), t.obj_name(c), t.obj_name(d));
        }
    }
    for (&a, &u) in &tm.left_unitor {
        rep.tick();
        if bm.left_unitor.get(&pr.ob(a)) != Some(&pr.mor(u)) {
            bail_law!(rep, "projection preserves left unitor", t.obj_name(a));
        }
    }
    for (&a, &u) in &tm.right_unitor {
        rep.tick();
        if bm.right_unitor.get(&pr.ob(a)) != Some(&pr.mor(u)) {
            bail_law!(rep, "projection preserves right unitor", t.obj_name(a));
        }
    }
    if let (Some(bt), Some(bb)) = (&tm.braiding, &bm.braiding) {
        for (&(a, c), &br) in bt {
            rep.tick();
            if bb.get(&(pr.ob(a), pr.ob(c))) != Some(&pr.mor(br)) {
                bail_law!(rep, "projection preserves braiding", t.obj_name(a), t.obj_name(c));
            }
        }
    }
    let mut lifts: Vec<_> = p.cleavage.iter().map(|(&(f, e), &k)| (f, e, k)).collect();
    lifts.sort_unstable();
    let op = p.as_opfibration();
    for &(f, e, k) in &lifts {
        for &(g, e2, k2) in &lifts {
            let Some(kk) = tm.tensor.mor(k, k2) else { continue };
            rep.tick();
            if !is_cocartesian_for(&op.total, &op.base, &op.proj, kk) {
                bail_law!(rep, "tensor preserves lifts", b.mor_name(f), t.obj_name(e), b.mor_name(g), t.obj_name(e2));
            }
            // Comparison between the reindexed tensor and the tensor of reindexings.
            let fg = bm.tensor.mor_u(f, g);
            let ee = tm.tensor.ob_u(e, e2);
            let Some(l) = p.lift(fg, ee) else { continue };
            let over = op.base.id(op.base.cod(fg));
            let cmp = factor_through(&op.total, &op.proj, l, kk, over);
            match cmp {
                Some(c) if op.total.is_iso(c) => {}
                _ => bail_law!(rep, "reindexed tensor comparison is invertible", b.mor_name(f), t.obj_name(e), b.mor_name(g), t.obj_name(e2)),
            }
        }
    }
    Ok(rep)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn proj_fixture(direction: Direction) -> ClovenFibration {
        let names: Vec<String> = ["0", "1", "2"].iter().map(|s| s.to_string()).collect();
        let base = Arc::new(FinCat::preorder(&names, |x, y| x <= y));
        let fib = Arc::new(FinCat::codiscrete(&["p".to_string(), "q".to_string()]));
        ClovenFibration::projection(base, fib, direction)
    }

    #[test]
    fn projection_is_split_both_ways() {
        for d in [Direction::Fibration, Direction::Opfibration] {
            let p = proj_fixture(d);
            let rep = check_fibration(&p).unwrap();
            assert!(rep.is_pass(), "{rep}");
            let fb = fibre(&p, 0).unwrap();
            assert_eq!((fb.n_objs(), fb.n_mors()), (2, 4));
            let f = p.base.mor("0<=1").unwrap();
            let r = reindex(&p, f).unwrap();
            assert!(check_functor(&r).unwrap().is_pass());
        }
    }

    #[test]
    fn identities_are_cartesian() {
        let p = proj_fixture(Direction::Fibration);
        for e in p.total.objects() {
            assert!(is_cartesian(&p, p.total.id(e)));
            assert!(is_cocartesian(&p, p.total.id(e)));
        }
    }

    #[test]
    fn recloven_with_vertical_iso_is_not_split() {
        let p = proj_fixture(Direction::Opfibration);
        let t = &p.total;
        let f = p.base.mor("0<=1").unwrap();
        let e = t.obj("(0|p)").unwrap();
        let twisted = t.mor("(0<=1|p<=q)").unwrap();
        let mut q = p.clone();
        q.cleavage.insert((f, e), twisted);
        let rep = check_fibration(&q).unwrap();
        assert_eq!(rep.first().unwrap().law, "split: lifts compose");
        q.split = false;
        assert!(check_fibration(&q).unwrap().is_pass());
    }

    #[test]
    fn missing_lifts_are_all_reported() {
        let mut p = proj_fixture(Direction::Opfibration);
        p.cleavage.clear();
        let rep = check_fibration(&p).unwrap();
        let n_missing = rep.violations.iter().filter(|v| v.law == "missing lift").count();
        assert_eq!(n_missing, 6 * 2);
    }

    #[test]
    fn synthesized_cleavage_is_valid() {
        let p = proj_fixture(Direction::Fibration);
        let q = synthesize_cleavage(p.total.clone(), p.base.clone(), p.proj.clone(), Direction::Fibration).unwrap();
        assert!(check_fibration(&q).unwrap().is_pass());
    }

    #[test]
    fn identity_fibred_cells() {
        let p = proj_fixture(Direction::Opfibration);
        let c = Fibred1Cell { source: p.clone(), target: p.clone(), top: FinFunctor::identity(p.total.clone()), bottom: FinFunctor::identity(p.base.clone()) };
        assert!(check_fibred_1cell(&c).unwrap().is_pass());
        let beta = NatTrans::identity(&c.top);
        let alpha = NatTrans::identity(&c.bottom);
        assert!(check_fibred_2cell(&beta, &alpha, &c, &c).unwrap().is_pass());
    }
}
