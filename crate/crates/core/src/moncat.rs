//! Monoidal structure on finite categories as explicit component tables.

use crate::error::{Error, Result};
use crate::fincat::{check_functor, check_nat_trans, FinCat, FinFunctor, Mor, NatTrans, Ob};
use crate::report::{bail_law, LawReport};
use std::collections::HashMap;
use std::sync::Arc;

const NONE: u32 = u32::MAX;

/// A functor out of a product `L × R`, stored as two tables. Entries may be
/// undefined outside a truncated universe; the defined object pairs form a
/// full subcategory of the product on which the table is a functor.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Bifunctor {
    pub left: Arc<FinCat>,
    pub right: Arc<FinCat>,
    pub target: Arc<FinCat>,
    obj: Vec<u32>,
    mor: Vec<u32>,
}

impl Bifunctor {
    /// Morphism entries are requested only where both endpoint pairs are defined.
    pub fn build(
        left: Arc<FinCat>,
        right: Arc<FinCat>,
        target: Arc<FinCat>,
        obj: impl Fn(Ob, Ob) -> Option<Ob>,
        mor: impl Fn(Mor, Mor) -> Option<Mor>,
    ) -> Bifunctor {
        let (ln, rn) = (left.n_objs(), right.n_objs());
        let mut otab = vec![NONE; ln * rn];
        for x in 0..ln {
            for y in 0..rn {
                if let Some(z) = obj(x, y) {
                    otab[x * rn + y] = z as u32;
                }
            }
        }
        let rm = right.n_mors();
        let mut mtab = vec![NONE; left.n_mors() * rm];
        for f in left.morphisms() {
            for g in right.morphisms() {
                let defined = otab[left.dom(f) * rn + right.dom(g)] != NONE
                    && otab[left.cod(f) * rn + right.cod(g)] != NONE;
                if defined {
                    if let Some(h) = mor(f, g) {
                        mtab[f * rm + g] = h as u32;
                    }
                }
            }
        }
        Bifunctor { left, right, target, obj: otab, mor: mtab }
    }

    pub fn ob(&self, x: Ob, y: Ob) -> Option<Ob> {
        let v = self.obj[x * self.right.n_objs() + y];
        (v != NONE).then_some(v as usize)
    }

    pub fn mor(&self, f: Mor, g: Mor) -> Option<Mor> {
        let v = self.mor[f * self.right.n_mors() + g];
        (v != NONE).then_some(v as usize)
    }

    pub fn ob_u(&self, x: Ob, y: Ob) -> Ob {
        self.ob(x, y).unwrap_or_else(|| {
            panic!("undefined on ({}, {})", self.left.obj_name(x), self.right.obj_name(y))
        })
    }

    pub fn mor_u(&self, f: Mor, g: Mor) -> Mor {
        self.mor(f, g).unwrap_or_else(|| {
            panic!("undefined on ({}, {})", self.left.mor_name(f), self.right.mor_name(g))
        })
    }

    pub fn is_total(&self) -> bool {
        !self.obj.contains(&NONE)
    }

    pub fn defined_pairs(&self) -> Vec<(Ob, Ob)> {
        let rn = self.right.n_objs();
        (0..self.left.n_objs())
            .flat_map(|x| (0..rn).map(move |y| (x, y)))
            .filter(|&(x, y)| self.ob(x, y).is_some())
            .collect()
    }

    pub fn with_mor_entry(&self, f: Mor, g: Mor, h: Mor) -> Bifunctor {
        let mut b = self.clone();
        let rm = b.right.n_mors();
        b.mor[f * rm + g] = h as u32;
        b
    }

    /// Transpose `(y, x) ↦ F(x, y)`.
    pub fn swapped(&self) -> Bifunctor {
        Bifunctor::build(
            self.right.clone(),
            self.left.clone(),
            self.target.clone(),
            |y, x| self.ob(x, y),
            |g, f| self.mor(f, g),
        )
    }
}

pub fn check_bifunctor(b: &Bifunctor) -> Result<LawReport> {
    let mut rep = LawReport::new("bifunctor");
    let (l, r, t) = (&*b.left, &*b.right, &*b.target);
    for f in l.morphisms() {
        for g in r.morphisms() {
            let ends = b.ob(l.dom(f), r.dom(g)).zip(b.ob(l.cod(f), r.cod(g)));
            match (ends, b.mor(f, g)) {
                (Some((s, e)), Some(h)) => {
                    rep.tick();
                    if t.dom(h) != s || t.cod(h) != e {
                        bail_law!(rep, "endpoint preservation", l.mor_name(f), r.mor_name(g));
                    }
                }
                (Some(_), None) => {
                    return Err(Error::MalformedTable(format!(
                        "bifunctor undefined on ({}, {})",
                        l.mor_name(f),
                        r.mor_name(g)
                    )))
                }
                _ => {}
            }
        }
    }
    for (x, y) in b.defined_pairs() {
        rep.tick();
        if b.mor(l.id(x), r.id(y)) != Some(t.id(b.ob_u(x, y))) {
            bail_law!(rep, "identity preservation", l.obj_name(x), r.obj_name(y));
        }
    }
    if b.is_total() {
        for y in r.objects() {
            for f in l.morphisms() {
                for &f2 in l.out_of(l.cod(f)) {
                    rep.tick();
                    let lhs = b.mor_u(l.compose(f2, f), r.id(y));
                    if lhs != t.compose(b.mor_u(f2, r.id(y)), b.mor_u(f, r.id(y))) {
                        bail_law!(rep, "functoriality in the first argument", l.mor_name(f2), l.mor_name(f), r.obj_name(y));
                    }
                }
            }
        }
        for x in l.objects() {
            for g in r.morphisms() {
                for &g2 in r.out_of(r.cod(g)) {
                    rep.tick();
                    let lhs = b.mor_u(l.id(x), r.compose(g2, g));
                    if lhs != t.compose(b.mor_u(l.id(x), g2), b.mor_u(l.id(x), g)) {
                        bail_law!(rep, "functoriality in the second argument", l.obj_name(x), r.mor_name(g2), r.mor_name(g));
                    }
                }
            }
        }
        for f in l.morphisms() {
            for g in r.morphisms() {
                rep.tick();
                let (x, x2, y, y2) = (l.dom(f), l.cod(f), r.dom(g), r.cod(g));
                let h = b.mor_u(f, g);
                let a = t.compose(b.mor_u(f, r.id(y2)), b.mor_u(l.id(x), g));
                let c = t.compose(b.mor_u(l.id(x2), g), b.mor_u(f, r.id(y)));
                if h != a || h != c {
                    bail_law!(rep, "interchange", l.mor_name(f), r.mor_name(g));
                }
            }
        }
    } else {
        for f in l.morphisms() {
            for g in r.morphisms() {
                let Some(h) = b.mor(f, g) else { continue };
                for &f2 in l.out_of(l.cod(f)) {
                    for &g2 in r.out_of(r.cod(g)) {
                        let Some(h2) = b.mor(f2, g2) else { continue };
                        rep.tick();
                        if b.mor(l.compose(f2, f), r.compose(g2, g)) != Some(t.compose(h2, h)) {
                            bail_law!(rep, "composite preservation", l.mor_name(f2), l.mor_name(f), r.mor_name(g2), r.mor_name(g));
                        }
                    }
                }
            }
        }
    }
    Ok(rep)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MonoidalData {
    pub base: Arc<FinCat>,
    pub tensor: Bifunctor,
    pub unit: Ob,
    /// `α_{x,y,z}: (x⊗y)⊗z → x⊗(y⊗z)`.
    pub associator: HashMap<(Ob, Ob, Ob), Mor>,
    /// `l_x: I⊗x → x`.
    pub left_unitor: HashMap<Ob, Mor>,
    /// `r_x: x⊗I → x`.
    pub right_unitor: HashMap<Ob, Mor>,
    /// `b_{x,y}: x⊗y → y⊗x`.
    pub braiding: Option<HashMap<(Ob, Ob), Mor>>,
    pub symmetric: bool,
}

impl MonoidalData {
    pub fn tensor_of(&self, x: Ob, y: Ob) -> Result<Ob> {
        let n = self.base.n_objs();
        if x >= n || y >= n {
            return Err(Error::UnknownObject(format!("{x} or {y}")));
        }
        self.tensor.ob(x, y).ok_or_else(|| {
            Error::UnknownObject(format!("{} ⊗ {}", self.base.obj_name(x), self.base.obj_name(y)))
        })
    }

    pub fn tensor_mor(&self, f: Mor, g: Mor) -> Result<Mor> {
        self.tensor.mor(f, g).ok_or_else(|| {
            Error::UnknownMorphism(format!("{} ⊗ {}", self.base.mor_name(f), self.base.mor_name(g)))
        })
    }

    pub fn t(&self, x: Ob, y: Ob) -> Option<Ob> {
        self.tensor.ob(x, y)
    }

    pub fn tm(&self, f: Mor, g: Mor) -> Mor {
        self.tensor.mor_u(f, g)
    }

    /// Triples on which both bracketings are defined.
    pub fn triples(&self) -> Vec<(Ob, Ob, Ob)> {
        let n = self.base.n_objs();
        let mut out = Vec::new();
        for x in 0..n {
            for y in 0..n {
                for z in 0..n {
                    if self.bracketings(x, y, z).is_some() {
                        out.push((x, y, z));
                    }
                }
            }
        }
        out
    }

    /// `((x⊗y)⊗z, x⊗(y⊗z))` when both are defined.
    pub fn bracketings(&self, x: Ob, y: Ob, z: Ob) -> Option<(Ob, Ob)> {
        let l = self.t(self.t(x, y)?, z)?;
        let r = self.t(x, self.t(y, z)?)?;
        Some((l, r))
    }

    pub fn alpha(&self, x: Ob, y: Ob, z: Ob) -> Mor {
        self.associator[&(x, y, z)]
    }

    /// The strict structure on a tensor whose bracketings and unit laws hold on the nose.
    pub fn strict(base: Arc<FinCat>, tensor: Bifunctor, unit: Ob) -> MonoidalData {
        let mut m = MonoidalData {
            base: base.clone(),
            tensor,
            unit,
            associator: HashMap::new(),
            left_unitor: HashMap::new(),
            right_unitor: HashMap::new(),
            braiding: None,
            symmetric: false,
        };
        for (x, y, z) in m.triples() {
            let (l, _) = m.bracketings(x, y, z).unwrap();
            m.associator.insert((x, y, z), base.id(l));
        }
        for x in base.objects() {
            if let Some(ix) = m.t(unit, x) {
                m.left_unitor.insert(x, base.id(ix));
            }
            if let Some(xi) = m.t(x, unit) {
                m.right_unitor.insert(x, base.id(xi));
            }
        }
        m
    }

    pub fn is_strict(&self) -> bool {
        let b = &self.base;
        self.associator.values().all(|&f| b.is_identity(f))
            && self.left_unitor.values().all(|&f| b.is_identity(f))
            && self.right_unitor.values().all(|&f| b.is_identity(f))
    }
}

fn inv(c: &FinCat, f: Mor) -> Option<Mor> {
    c.inverse(f)
}

/// Pentagon, triangle, naturality, invertibility and (if present) hexagons.
pub fn check_monoidal(m: &MonoidalData) -> Result<LawReport> {
    let mut rep = LawReport::new("monoidal category");
    let c = &*m.base;
    if m.tensor.left != m.base || m.tensor.right != m.base || m.tensor.target != m.base {
        return Err(Error::ShapeMismatch("tensor is not an endo-bifunctor of the base".into()));
    }
    if m.unit >= c.n_objs() {
        return Err(Error::UnknownObject("unit".into()));
    }
    let tb = check_bifunctor(&m.tensor)?;
    if !tb.is_pass() {
        rep.absorb(tb);
        return Ok(rep);
    }
    rep.checked += tb.checked;
    let name = |x: Ob| c.obj_name(x).to_string();
    let triples = m.triples();
    for &(x, y, z) in &triples {
        rep.tick();
        let Some(&a) = m.associator.get(&(x, y, z)) else {
            return Err(Error::MalformedTable(format!("associator missing at ({}, {}, {})", name(x), name(y), name(z))));
        };
        let (l, r) = m.bracketings(x, y, z).unwrap();
        if c.dom(a) != l || c.cod(a) != r {
            bail_law!(rep, "associator typing", name(x), name(y), name(z));
        }
        if !c.is_iso(a) {
            bail_law!(rep, "associator invertibility", name(x), name(y), name(z));
        }
    }
    for x in c.objects() {
        for (table, which, tx) in [(&m.left_unitor, "left unitor", m.t(m.unit, x)), (&m.right_unitor, "right unitor", m.t(x, m.unit))] {
            let Some(tx) = tx else { continue };
            rep.tick();
            let Some(&u) = table.get(&x) else {
                return Err(Error::MalformedTable(format!("{which} missing at {}", name(x))));
            };
            if c.dom(u) != tx || c.cod(u) != x {
                bail_law!(rep, format!("{which} typing"), name(x));
            }
            if !c.is_iso(u) {
                bail_law!(rep, format!("{which} invertibility"), name(x));
            }
        }
    }
    // Naturality of α.
    let total = m.tensor.is_total();
    let alpha_nat = |f: Mor, g: Mor, h: Mor, rep: &mut LawReport| -> bool {
        let (x, y, z) = (c.dom(f), c.dom(g), c.dom(h));
        let (x2, y2, z2) = (c.cod(f), c.cod(g), c.cod(h));
        if m.bracketings(x, y, z).is_none() || m.bracketings(x2, y2, z2).is_none() {
            return true;
        }
        rep.tick();
        let lhs = c.compose(m.alpha(x2, y2, z2), m.tm(m.tm(f, g), h));
        let rhs = c.compose(m.tm(f, m.tm(g, h)), m.alpha(x, y, z));
        lhs == rhs
    };
    if total {
        for f in c.morphisms() {
            for y in c.objects() {
                for z in c.objects() {
                    let (iy, iz) = (c.id(y), c.id(z));
                    for (a, b, d) in [(f, iy, iz), (iy, f, iz), (iy, iz, f)] {
                        if !alpha_nat(a, b, d, &mut rep) {
                            bail_law!(rep, "associator naturality", c.mor_name(a), c.mor_name(b), c.mor_name(d));
                        }
                    }
                }
            }
        }
    } else {
        for f in c.morphisms() {
            for g in c.morphisms() {
                if m.tensor.mor(f, g).is_none() {
                    continue;
                }
                for h in c.morphisms() {
                    if !alpha_nat(f, g, h, &mut rep) {
                        bail_law!(rep, "associator naturality", c.mor_name(f), c.mor_name(g), c.mor_name(h));
                    }
                }
            }
        }
    }
    // Naturality of l and r.
    let iu = c.id(m.unit);
    for f in c.morphisms() {
        let (x, y) = (c.dom(f), c.cod(f));
        if m.t(m.unit, x).is_some() && m.t(m.unit, y).is_some() {
            rep.tick();
            if c.compose(m.left_unitor[&y], m.tm(iu, f)) != c.compose(f, m.left_unitor[&x]) {
                bail_law!(rep, "left unitor naturality", c.mor_name(f));
            }
        }
        if m.t(x, m.unit).is_some() && m.t(y, m.unit).is_some() {
            rep.tick();
            if c.compose(m.right_unitor[&y], m.tm(f, iu)) != c.compose(f, m.right_unitor[&x]) {
                bail_law!(rep, "right unitor naturality", c.mor_name(f));
            }
        }
    }
    // Pentagon.
    let n = c.n_objs();
    for w in 0..n {
        for x in 0..n {
            let Some(wx) = m.t(w, x) else { continue };
            for y in 0..n {
                let Some(xy) = m.t(x, y) else { continue };
                for z in 0..n {
                    let (Some(yz), Some(_wxy)) = (m.t(y, z), m.t(wx, y)) else { continue };
                    let needed = [
                        m.bracketings(wx, y, z),
                        m.bracketings(w, x, yz),
                        m.bracketings(w, x, y),
                        m.bracketings(x, y, z),
                        m.bracketings(w, xy, z),
                    ];
                    if needed.iter().any(|b| b.is_none()) || m.t(m.t(w, xy).unwrap(), z).is_none() {
                        continue;
                    }
                    let outer = m.t(w, m.t(xy, z).unwrap());
                    if outer.is_none() {
                        continue;
                    }
                    rep.tick();
                    let lhs = c.compose(m.alpha(w, x, yz), m.alpha(wx, y, z));
                    let p1 = m.tm(m.alpha(w, x, y), c.id(z));
                    let p2 = m.alpha(w, xy, z);
                    let p3 = m.tm(c.id(w), m.alpha(x, y, z));
                    let rhs = c.compose_path(&[p1, p2, p3]);
                    if lhs != rhs {
                        bail_law!(rep, "pentagon", name(w), name(x), name(y), name(z));
                    }
                }
            }
        }
    }
    // Triangle: (1_x ⊗ l_y) ∘ α_{x,I,y} = r_x ⊗ 1_y.
    for x in 0..n {
        for y in 0..n {
            if m.bracketings(x, m.unit, y).is_none() {
                continue;
            }
            rep.tick();
            let lhs = c.compose(m.tm(c.id(x), m.left_unitor[&y]), m.alpha(x, m.unit, y));
            if lhs != m.tm(m.right_unitor[&x], c.id(y)) {
                bail_law!(rep, "triangle", name(x), name(y));
            }
        }
    }
    if let Some(br) = &m.braiding {
        let bp = m.tensor.defined_pairs();
        for &(x, y) in &bp {
            rep.tick();
            let Some(&b) = br.get(&(x, y)) else {
                return Err(Error::MalformedTable(format!("braiding missing at ({}, {})", name(x), name(y))));
            };
            if Some(c.dom(b)) != m.t(x, y) || Some(c.cod(b)) != m.t(y, x) {
                bail_law!(rep, "braiding typing", name(x), name(y));
            }
            if !c.is_iso(b) {
                bail_law!(rep, "braiding invertibility", name(x), name(y));
            }
        }
        for f in c.morphisms() {
            for g in c.morphisms() {
                if !total && m.tensor.mor(f, g).is_none() {
                    continue;
                }
                if total && !(c.is_identity(f) || c.is_identity(g)) {
                    continue;
                }
                let (x, y, x2, y2) = (c.dom(f), c.dom(g), c.cod(f), c.cod(g));
                rep.tick();
                if c.compose(br[&(x2, y2)], m.tm(f, g)) != c.compose(m.tm(g, f), br[&(x, y)]) {
                    bail_law!(rep, "braiding naturality", c.mor_name(f), c.mor_name(g));
                }
            }
        }
        for x in 0..n {
            for y in 0..n {
                for z in 0..n {
                    // Hexagon 1: α_{y,z,x} ∘ b_{x,y⊗z} ∘ α_{x,y,z} = (1_y⊗b_{x,z}) ∘ α_{y,x,z} ∘ (b_{x,y}⊗1_z).
                    let h1 = (|| {
                        let yz = m.t(y, z)?;
                        m.bracketings(x, y, z)?;
                        m.bracketings(y, z, x)?;
                        m.bracketings(y, x, z)?;
                        m.t(x, yz)?;
                        let lhs = c.compose_path(&[m.alpha(x, y, z), br[&(x, yz)], m.alpha(y, z, x)]);
                        let rhs = c.compose_path(&[
                            m.tm(br[&(x, y)], c.id(z)),
                            m.alpha(y, x, z),
                            m.tm(c.id(y), br[&(x, z)]),
                        ]);
                        Some(lhs == rhs)
                    })();
                    if let Some(ok) = h1 {
                        rep.tick();
                        if !ok {
                            bail_law!(rep, "hexagon (first)", name(x), name(y), name(z));
                        }
                    }
                    // Hexagon 2: α⁻¹_{z,x,y} ∘ b_{x⊗y,z} ∘ α⁻¹_{x,y,z} = (b_{x,z}⊗1_y) ∘ α⁻¹_{x,z,y} ∘ (1_x⊗b_{y,z}).
                    let h2 = (|| {
                        let xy = m.t(x, y)?;
                        m.bracketings(x, y, z)?;
                        m.bracketings(z, x, y)?;
                        m.bracketings(x, z, y)?;
                        m.t(xy, z)?;
                        let lhs = c.compose_path(&[
                            inv(c, m.alpha(x, y, z))?,
                            br[&(xy, z)],
                            inv(c, m.alpha(z, x, y))?,
                        ]);
                        let rhs = c.compose_path(&[
                            m.tm(c.id(x), br[&(y, z)]),
                            inv(c, m.alpha(x, z, y))?,
                            m.tm(br[&(x, z)], c.id(y)),
                        ]);
                        Some(lhs == rhs)
                    })();
                    if let Some(ok) = h2 {
                        rep.tick();
                        if !ok {
                            bail_law!(rep, "hexagon (second)", name(x), name(y), name(z));
                        }
                    }
                }
            }
        }
        if m.symmetric {
            for &(x, y) in &bp {
                rep.tick();
                if c.compose(br[&(y, x)], br[&(x, y)]) != c.id(m.t(x, y).unwrap()) {
                    bail_law!(rep, "symmetry", name(x), name(y));
                }
            }
        }
    } else if m.symmetric {
        rep.fail("symmetry", vec!["flag set without braiding".into()]);
    }
    Ok(rep)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Strength {
    Lax,
    Strong,
    Strict,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MonoidalFunctorData {
    pub underlying: FinFunctor,
    /// `φ_{a,b}: F a ⊗ F b → F(a⊗b)`.
    pub laxator: HashMap<(Ob, Ob), Mor>,
    /// `φ_0: I → F(I)`.
    pub unit_mor: Mor,
    pub strength: Strength,
    /// Also require compatibility with braidings.
    pub braided: bool,
}

impl MonoidalFunctorData {
    pub fn identity(m: &MonoidalData) -> MonoidalFunctorData {
        let c = &m.base;
        let laxator = m.tensor.defined_pairs().into_iter().map(|(a, b)| ((a, b), c.id(m.tensor.ob_u(a, b)))).collect();
        MonoidalFunctorData {
            underlying: FinFunctor::identity(c.clone()),
            laxator,
            unit_mor: c.id(m.unit),
            strength: Strength::Strict,
            braided: m.braiding.is_some(),
        }
    }
}

/// `G ∘ F` with laxator `G(φ^F) ∘ φ^G`.
pub fn compose_monoidal_functors(
    g: &MonoidalFunctorData,
    f: &MonoidalFunctorData,
    mid: &MonoidalData,
    tgt: &MonoidalData,
) -> Result<MonoidalFunctorData> {
    let u = crate::fincat::compose_functors(&g.underlying, &f.underlying)?;
    let d = &*tgt.base;
    let mut laxator = HashMap::new();
    for (&(a, b), &phi) in &f.laxator {
        let (fa, fb) = (f.underlying.ob(a), f.underlying.ob(b));
        if mid.t(fa, fb).is_none() {
            continue;
        }
        let Some(&psi) = g.laxator.get(&(fa, fb)) else { continue };
        laxator.insert((a, b), d.compose(g.underlying.mor(phi), psi));
    }
    let unit_mor = d.compose(g.underlying.mor(f.unit_mor), g.unit_mor);
    let strength = match (f.strength, g.strength) {
        (Strength::Strict, Strength::Strict) => Strength::Strict,
        (Strength::Lax, _) | (_, Strength::Lax) => Strength::Lax,
        _ => Strength::Strong,
    };
    Ok(MonoidalFunctorData { underlying: u, laxator, unit_mor, strength, braided: f.braided && g.braided })
}

pub fn check_monoidal_functor(f: &MonoidalFunctorData, src: &MonoidalData, tgt: &MonoidalData) -> Result<LawReport> {
    let mut rep = LawReport::new("monoidal functor");
    let fun = &f.underlying;
    if *fun.source != *src.base || *fun.target != *tgt.base {
        return Err(Error::ShapeMismatch("functor does not run between the given monoidal bases".into()));
    }
    let fr = check_functor(fun)?;
    if !fr.is_pass() {
        rep.absorb(fr);
        return Ok(rep);
    }
    let (c, d) = (&*src.base, &*tgt.base);
    let name = |x: Ob| c.obj_name(x).to_string();
    let pairs: Vec<(Ob, Ob)> = src
        .tensor
        .defined_pairs()
        .into_iter()
        .filter(|&(a, b)| tgt.t(fun.ob(a), fun.ob(b)).is_some())
        .collect();
    for &(a, b) in &pairs {
        rep.tick();
        let Some(&phi) = f.laxator.get(&(a, b)) else {
            return Err(Error::MalformedTable(format!("laxator missing at ({}, {})", name(a), name(b))));
        };
        let ab = src.t(a, b).unwrap();
        if Some(d.dom(phi)) != tgt.t(fun.ob(a), fun.ob(b)) || d.cod(phi) != fun.ob(ab) {
            bail_law!(rep, "laxator typing", name(a), name(b));
        }
    }
    let u0 = f.unit_mor;
    if d.dom(u0) != tgt.unit || d.cod(u0) != fun.ob(src.unit) {
        bail_law!(rep, "unit morphism typing", d.mor_name(u0));
    }
    // Naturality: φ_{a',b'} ∘ (F h ⊗ F k) = F(h ⊗ k) ∘ φ_{a,b}.
    let lax = |a: Ob, b: Ob| f.laxator.get(&(a, b)).copied();
    for h in c.morphisms() {
        for k in c.morphisms() {
            let Some(hk) = src.tensor.mor(h, k) else { continue };
            let (Some(p1), Some(p2)) = (lax(c.dom(h), c.dom(k)), lax(c.cod(h), c.cod(k))) else { continue };
            rep.tick();
            let lhs = d.compose(p2, tgt.tm(fun.mor(h), fun.mor(k)));
            if lhs != d.compose(fun.mor(hk), p1) {
                bail_law!(rep, "laxator naturality", c.mor_name(h), c.mor_name(k));
            }
        }
    }
    // Associativity.
    for (a, b, cc) in src.triples() {
        let res = (|| {
            let (fa, fb, fc) = (fun.ob(a), fun.ob(b), fun.ob(cc));
            tgt.bracketings(fa, fb, fc)?;
            let ab = src.t(a, b)?;
            let bc = src.t(b, cc)?;
            let lhs = d.compose_path(&[
                tgt.tensor.mor(lax(a, b)?, d.id(fc))?,
                lax(ab, cc)?,
                fun.mor(src.alpha(a, b, cc)),
            ]);
            let rhs = d.compose_path(&[
                tgt.alpha(fa, fb, fc),
                tgt.tensor.mor(d.id(fa), lax(b, cc)?)?,
                lax(a, bc)?,
            ]);
            Some(lhs == rhs)
        })();
        if let Some(ok) = res {
            rep.tick();
            if !ok {
                bail_law!(rep, "associativity", name(a), name(b), name(cc));
            }
        }
    }
    // Unit laws.
    for a in c.objects() {
        let left = (|| {
            let fa = fun.ob(a);
            let lhs = d.compose_path(&[
                tgt.tensor.mor(u0, d.id(fa))?,
                lax(src.unit, a)?,
                fun.mor(*src.left_unitor.get(&a)?),
            ]);
            Some(lhs == *tgt.left_unitor.get(&fa)?)
        })();
        let right = (|| {
            let fa = fun.ob(a);
            let lhs = d.compose_path(&[
                tgt.tensor.mor(d.id(fa), u0)?,
                lax(a, src.unit)?,
                fun.mor(*src.right_unitor.get(&a)?),
            ]);
            Some(lhs == *tgt.right_unitor.get(&fa)?)
        })();
        for (res, law) in [(left, "left unit law"), (right, "right unit law")] {
            if let Some(ok) = res {
                rep.tick();
                if !ok {
                    bail_law!(rep, law, name(a));
                }
            }
        }
    }
    match f.strength {
        Strength::Lax => {}
        Strength::Strong => {
            for (&(a, b), &phi) in &f.laxator {
                rep.tick();
                if !d.is_iso(phi) {
                    bail_law!(rep, "strong laxator invertibility", name(a), name(b));
                }
            }
            if !d.is_iso(u0) {
                bail_law!(rep, "strong unit invertibility", d.mor_name(u0));
            }
        }
        Strength::Strict => {
            for (&(a, b), &phi) in &f.laxator {
                rep.tick();
                if !d.is_identity(phi) {
                    bail_law!(rep, "strict laxator is identity", name(a), name(b));
                }
            }
            if !d.is_identity(u0) {
                bail_law!(rep, "strict unit is identity", d.mor_name(u0));
            }
        }
    }
    if f.braided {
        let (Some(bs), Some(bt)) = (&src.braiding, &tgt.braiding) else {
            return Err(Error::ShapeMismatch("braided functor between unbraided categories".into()));
        };
        for &(a, b) in &pairs {
            let (Some(p), Some(q)) = (lax(a, b), lax(b, a)) else { continue };
            if tgt.t(fun.ob(b), fun.ob(a)).is_none() {
                continue;
            }
            rep.tick();
            let lhs = d.compose(fun.mor(bs[&(a, b)]), p);
            let rhs = d.compose(q, bt[&(fun.ob(a), fun.ob(b))]);
            if lhs != rhs {
                bail_law!(rep, "braiding preservation", name(a), name(b));
            }
        }
    }
    Ok(rep)
}

/// The two monoidality squares of a transformation between monoidal functors.
pub fn check_monoidal_nat_trans(
    t: &NatTrans,
    f: &MonoidalFunctorData,
    g: &MonoidalFunctorData,
    src: &MonoidalData,
    tgt: &MonoidalData,
) -> Result<LawReport> {
    let mut rep = LawReport::new("monoidal natural transformation");
    if t.source_fun != f.underlying || t.target_fun != g.underlying {
        return Err(Error::ShapeMismatch("transformation does not run between the given functors".into()));
    }
    let nr = check_nat_trans(t)?;
    if !nr.is_pass() {
        rep.absorb(nr);
        return Ok(rep);
    }
    let (c, d) = (&*src.base, &*tgt.base);
    for (&(a, b), &pf) in &f.laxator {
        let Some(&pg) = g.laxator.get(&(a, b)) else { continue };
        let Some(tt) = tgt.tensor.mor(t.at(a), t.at(b)) else { continue };
        let ab = src.tensor.ob_u(a, b);
        rep.tick();
        if d.compose(t.at(ab), pf) != d.compose(pg, tt) {
            bail_law!(rep, "tensor square", c.obj_name(a), c.obj_name(b));
        }
    }
    rep.tick();
    if d.compose(t.at(src.unit), f.unit_mor) != g.unit_mor {
        bail_law!(rep, "unit triangle", c.obj_name(src.unit));
    }
    Ok(rep)
}

/// Chosen binary coproducts (possibly only within a truncated universe) and an
/// initial object, each certified by enumeration.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CocartesianWitness {
    pub base: Arc<FinCat>,
    /// `(x, y) ↦ (x+y, ι_x, ι_y)`.
    pub coproducts: HashMap<(Ob, Ob), (Ob, Mor, Mor)>,
    pub initial: Ob,
    /// `x ↦ !: 0 → x`.
    pub bang: Vec<Mor>,
}

#[derive(Clone, Copy, Debug)]
pub struct SearchLimits {
    pub max_objects: usize,
}

impl Default for SearchLimits {
    fn default() -> Self {
        SearchLimits { max_objects: 24 }
    }
}

pub(crate) fn is_universal(c: &FinCat, s: Ob, i1: Mor, i2: Mor) -> bool {
    let (x, y) = (c.dom(i1), c.dom(i2));
    for z in c.objects() {
        let hom = c.hom(s, z);
        if hom.len() != c.hom(x, z).len() * c.hom(y, z).len() {
            return false;
        }
        let mut seen = std::collections::HashSet::new();
        for &h in hom {
            if !seen.insert((c.compose(h, i1), c.compose(h, i2))) {
                return false;
            }
        }
    }
    true
}

pub(crate) fn find_initial(c: &FinCat) -> Option<Ob> {
    c.objects().find(|&o| c.objects().all(|x| c.hom(o, x).len() == 1))
}

/// Searches every pair for a coproduct (least object identifier, then least
/// injections) and an initial object. Pairs without a coproduct are left out.
pub fn find_cocartesian(c: &Arc<FinCat>, limits: SearchLimits) -> Result<CocartesianWitness> {
    if c.n_objs() > limits.max_objects {
        return Err(Error::SizeLimitExceeded(format!("{} objects", c.n_objs())));
    }
    let initial = find_initial(c).ok_or_else(|| Error::NotFound("no initial object".into()))?;
    let bang = c.objects().map(|x| c.hom(initial, x)[0]).collect();
    let mut coproducts = HashMap::new();
    for x in c.objects() {
        for y in c.objects() {
            'cand: for s in c.objects() {
                for &i1 in c.hom(x, s) {
                    for &i2 in c.hom(y, s) {
                        if is_universal(c, s, i1, i2) {
                            coproducts.insert((x, y), (s, i1, i2));
                            break 'cand;
                        }
                    }
                }
            }
        }
    }
    Ok(CocartesianWitness { base: c.clone(), coproducts, initial, bang })
}

impl CocartesianWitness {
    pub fn is_total(&self) -> bool {
        self.coproducts.len() == self.base.n_objs() * self.base.n_objs()
    }

    pub fn sum(&self, x: Ob, y: Ob) -> Option<Ob> {
        self.coproducts.get(&(x, y)).map(|t| t.0)
    }

    pub fn injections(&self, x: Ob, y: Ob) -> Option<(Mor, Mor)> {
        self.coproducts.get(&(x, y)).map(|t| (t.1, t.2))
    }

    /// The unique `[a, b]: x+y → z`.
    pub fn mediating(&self, a: Mor, b: Mor) -> Result<Mor> {
        let c = &self.base;
        let (x, y) = (c.dom(a), c.dom(b));
        if c.cod(a) != c.cod(b) {
            return Err(Error::ShapeMismatch("cocone legs have different codomains".into()));
        }
        let &(s, i1, i2) = self
            .coproducts
            .get(&(x, y))
            .ok_or_else(|| Error::NotFound(format!("{} + {}", c.obj_name(x), c.obj_name(y))))?;
        let hits: Vec<Mor> = c
            .hom(s, c.cod(a))
            .iter()
            .copied()
            .filter(|&h| c.compose(h, i1) == a && c.compose(h, i2) == b)
            .collect();
        match hits.as_slice() {
            [h] => Ok(*h),
            [] => Err(Error::NotUniversal(format!("no mediating morphism for ({}, {})", c.mor_name(a), c.mor_name(b)))),
            _ => Err(Error::NotUniversal(format!("ambiguous mediating morphism for ({}, {})", c.mor_name(a), c.mor_name(b)))),
        }
    }

    /// `∇_x = [1_x, 1_x]`.
    pub fn codiagonal(&self, x: Ob) -> Result<Mor> {
        let i = self.base.id(x);
        self.mediating(i, i)
    }

    pub fn verify(&self) -> LawReport {
        let c = &self.base;
        let mut rep = LawReport::new("cocartesian witness");
        for x in c.objects() {
            rep.tick();
            if c.hom(self.initial, x) != [self.bang[x]] {
                rep.fail("initiality", vec![c.obj_name(x).into()]);
                return rep;
            }
        }
        let mut keys: Vec<_> = self.coproducts.keys().copied().collect();
        keys.sort_unstable();
        for (x, y) in keys {
            let (s, i1, i2) = self.coproducts[&(x, y)];
            rep.tick();
            let typed = c.dom(i1) == x && c.dom(i2) == y && c.cod(i1) == s && c.cod(i2) == s;
            if !typed || !is_universal(c, s, i1, i2) {
                rep.fail("coproduct universal property", vec![c.obj_name(x).into(), c.obj_name(y).into()]);
                return rep;
            }
        }
        rep
    }

    /// Coproduct tensor with the canonical associator, unitors and swap braiding.
    pub fn monoidal(&self) -> Result<MonoidalData> {
        let c = self.base.clone();
        let tensor = Bifunctor::build(
            c.clone(),
            c.clone(),
            c.clone(),
            |x, y| self.sum(x, y),
            |f, g| {
                let (_, j1, _) = self.coproducts.get(&(c.cod(f), c.cod(g)))?;
                let (_, _, j2) = self.coproducts.get(&(c.cod(f), c.cod(g)))?;
                self.mediating(c.compose(*j1, f), c.compose(*j2, g)).ok()
            },
        );
        let mut m = MonoidalData {
            base: c.clone(),
            tensor,
            unit: self.initial,
            associator: HashMap::new(),
            left_unitor: HashMap::new(),
            right_unitor: HashMap::new(),
            braiding: Some(HashMap::new()),
            symmetric: true,
        };
        for (x, y, z) in m.triples() {
            let xy = m.t(x, y).unwrap();
            let yz = m.t(y, z).unwrap();
            let (ix, iyz) = self.injections(x, yz).unwrap();
            let (iy, iz) = self.injections(y, z).unwrap();
            let left = self.mediating(ix, c.compose(iyz, iy))?;
            let a = self.mediating(left, c.compose(iyz, iz))?;
            debug_assert_eq!(c.dom(a), m.t(xy, z).unwrap());
            m.associator.insert((x, y, z), a);
        }
        for x in c.objects() {
            if self.sum(self.initial, x).is_some() {
                m.left_unitor.insert(x, self.mediating(self.bang[x], c.id(x))?);
            }
            if self.sum(x, self.initial).is_some() {
                m.right_unitor.insert(x, self.mediating(c.id(x), self.bang[x])?);
            }
        }
        let mut br = HashMap::new();
        for &(x, y) in self.coproducts.keys() {
            if let Some((j1, j2)) = self.injections(y, x) {
                br.insert((x, y), self.mediating(j2, j1)?);
            }
        }
        m.braiding = Some(br);
        Ok(m)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn terminal_monoidal() -> MonoidalData {
        let t = Arc::new(FinCat::terminal());
        let tensor = Bifunctor::build(t.clone(), t.clone(), t.clone(), |_, _| Some(0), |_, _| Some(0));
        MonoidalData::strict(t, tensor, 0)
    }

    #[test]
    fn terminal_is_monoidal() {
        assert!(check_monoidal(&terminal_monoidal()).unwrap().is_pass());
        let m = terminal_monoidal();
        assert_eq!(m.tensor_of(0, 0).unwrap(), 0);
        assert!(matches!(m.tensor_of(0, 3), Err(Error::UnknownObject(_))));
    }

    #[test]
    fn walking_arrow_is_cocartesian_with_joins() {
        let a = Arc::new(FinCat::walking_arrow());
        let w = find_cocartesian(&a, SearchLimits::default()).unwrap();
        assert_eq!(a.obj_name(w.initial), "0");
        assert!(w.is_total());
        for x in a.objects() {
            for y in a.objects() {
                assert_eq!(w.sum(x, y), Some(x.max(y)));
            }
        }
        assert!(w.verify().is_pass());
        let m = w.monoidal().unwrap();
        let rep = check_monoidal(&m).unwrap();
        assert!(rep.is_pass(), "{rep}");
        assert_eq!(m.tensor_mor(a.id(0), a.id(1)).unwrap(), a.id(1));
    }

    #[test]
    fn discrete_pair_is_not_cocartesian() {
        let d = Arc::new(FinCat::discrete(&["p", "q"]));
        assert!(matches!(find_cocartesian(&d, SearchLimits::default()), Err(Error::NotFound(_))));
    }

    /// Z/2 as a one-object category, tensor given by addition.
    fn z2_monoidal() -> MonoidalData {
        let c = Arc::new(
            FinCat::from_names(
                &["*"],
                &[("e", "*", "*"), ("s", "*", "*")],
                &[("*", "e")],
                &[("e", "e", "e"), ("e", "s", "s"), ("s", "e", "s"), ("s", "s", "e")],
            )
            .unwrap(),
        );
        let cc = c.clone();
        let tensor = Bifunctor::build(c.clone(), c.clone(), c.clone(), |_, _| Some(0), move |f, g| {
            Some(if f == g { cc.id(0) } else { cc.mor("s").unwrap() })
        });
        let mut m = MonoidalData::strict(c, tensor, 0);
        m.braiding = Some([((0, 0), m.base.id(0))].into_iter().collect());
        m.symmetric = true;
        m
    }

    #[test]
    fn broken_pentagon_is_witnessed() {
        let m = z2_monoidal();
        assert!(check_monoidal(&m).unwrap().is_pass());
        let mut bad = m.clone();
        bad.associator.insert((0, 0, 0), bad.base.mor("s").unwrap());
        let rep = check_monoidal(&bad).unwrap();
        assert_eq!(rep.first().unwrap().law, "pentagon");
        assert_eq!(rep.first().unwrap().witness, vec!["*"; 4]);
    }

    #[test]
    fn lax_functor_checks() {
        let m = z2_monoidal();
        let id = MonoidalFunctorData::identity(&m);
        assert!(check_monoidal_functor(&id, &m, &m).unwrap().is_pass());
        let mut bad = id.clone();
        bad.laxator.insert((0, 0), m.base.mor("s").unwrap());
        bad.strength = Strength::Strong;
        assert!(!check_monoidal_functor(&bad, &m, &m).unwrap().is_pass());
        let t = NatTrans::identity(&id.underlying);
        assert!(check_monoidal_nat_trans(&t, &id, &id, &m, &m).unwrap().is_pass());
        let s = m.base.mor("s").unwrap();
        let flip = NatTrans::new(id.underlying.clone(), id.underlying.clone(), vec![s]).unwrap();
        let rep = check_monoidal_nat_trans(&flip, &id, &id, &m, &m).unwrap();
        assert_eq!(rep.first().unwrap().law, "tensor square");
    }

    #[test]
    fn square_poset_coproducts() {
        let names: Vec<String> = ["00", "01", "10", "11"].iter().map(|s| s.to_string()).collect();
        let c = Arc::new(FinCat::preorder(&names, |x, y| (x & !y) == 0));
        let w = find_cocartesian(&c, SearchLimits::default()).unwrap();
        assert!(w.is_total());
        assert_eq!(c.obj_name(w.sum(1, 2).unwrap()), "11");
        let m = w.monoidal().unwrap();
        assert!(check_monoidal(&m).unwrap().is_pass());
        assert!(m.is_strict());
    }
}
