//! Finite categories with explicit composition tables, functors and natural
//! transformations between them.

use crate::error::{Error, Result};
use crate::report::{bail_law, LawReport};
use std::collections::HashMap;
use std::sync::Arc;

pub type Ob = usize;
pub type Mor = usize;

const NONE: u32 = u32::MAX;

/// Escapes a component so that pair encodings can be split again.
pub fn escape(s: &str) -> String {
    let mut out = String::with_capacity(s.len());
    for ch in s.chars() {
        if matches!(ch, '\\' | '(' | ')' | '|') {
            out.push('\\');
        }
        out.push(ch);
    }
    out
}

/// Canonical encoding of a tuple of identifiers: `(a|b|...)`.
pub fn tuple_name(parts: &[&str]) -> String {
    let inner: Vec<String> = parts.iter().map(|p| escape(p)).collect();
    format!("({})", inner.join("|"))
}

pub fn pair_name(a: &str, b: &str) -> String {
    tuple_name(&[a, b])
}

/// Inverse of [`tuple_name`].
pub fn split_tuple(s: &str) -> Option<Vec<String>> {
    let inner = s.strip_prefix('(')?.strip_suffix(')')?;
    let mut parts = vec![String::new()];
    let mut chars = inner.chars();
    while let Some(ch) = chars.next() {
        match ch {
            '\\' => parts.last_mut()?.push(chars.next()?),
            '|' => parts.push(String::new()),
            '(' | ')' => return None,
            c => parts.last_mut()?.push(c),
        }
    }
    Some(parts)
}

#[derive(Clone, Debug)]
pub struct FinCat {
    objs: Vec<String>,
    mors: Vec<String>,
    dom: Vec<Ob>,
    cod: Vec<Ob>,
    ident: Vec<Mor>,
    out: Vec<Vec<Mor>>,
    pos: Vec<usize>,
    comp: Vec<Vec<u32>>,
    homs: Vec<Vec<Mor>>,
    obj_ix: HashMap<String, Ob>,
    mor_ix: HashMap<String, Mor>,
}

impl PartialEq for FinCat {
    fn eq(&self, other: &Self) -> bool {
        self.objs == other.objs
            && self.mors == other.mors
            && self.dom == other.dom
            && self.cod == other.cod
            && self.ident == other.ident
            && self.comp == other.comp
    }
}
impl Eq for FinCat {}

fn sort_perm(names: &[String]) -> Result<(Vec<usize>, Vec<String>)> {
    let mut order: Vec<usize> = (0..names.len()).collect();
    order.sort_by(|&a, &b| names[a].cmp(&names[b]));
    for w in order.windows(2) {
        if names[w[0]] == names[w[1]] {
            return Err(Error::DuplicateName(names[w[0]].clone()));
        }
    }
    let mut new_of_old = vec![0; names.len()];
    for (new, &old) in order.iter().enumerate() {
        new_of_old[old] = new;
    }
    let sorted = order.iter().map(|&i| names[i].clone()).collect();
    Ok((new_of_old, sorted))
}

impl FinCat {
    /// Builds a category from objects, morphisms `(name, dom, cod)`, an identity
    /// per object and a composition rule `(g, f) -> g∘f`, all by input index.
    /// Identifiers are sorted, so equal tables give equal values.
    /// Missing composites are kept as holes and reported by [`check_category`].
    pub fn build(
        objects: Vec<String>,
        morphisms: Vec<(String, Ob, Ob)>,
        identity: Vec<Mor>,
        mut compose: impl FnMut(Mor, Mor) -> Option<Mor>,
    ) -> Result<FinCat> {
        let n = objects.len();
        let m = morphisms.len();
        if identity.len() != n {
            return Err(Error::MalformedTable("identity table is not total".into()));
        }
        let (onew, objs) = sort_perm(&objects)?;
        let mnames: Vec<String> = morphisms.iter().map(|t| t.0.clone()).collect();
        let (mnew, mors) = sort_perm(&mnames)?;
        let mut dom = vec![0; m];
        let mut cod = vec![0; m];
        for (i, (name, d, c)) in morphisms.iter().enumerate() {
            if *d >= n || *c >= n {
                return Err(Error::UnknownObject(format!("endpoint of {name}")));
            }
            dom[mnew[i]] = onew[*d];
            cod[mnew[i]] = onew[*c];
        }
        let mut ident = vec![0; n];
        for (x, &f) in identity.iter().enumerate() {
            if f >= m {
                return Err(Error::UnknownMorphism(format!("identity of {}", objects[x])));
            }
            ident[onew[x]] = mnew[f];
        }
        let mut old_of_new = vec![0; m];
        for (old, &new) in mnew.iter().enumerate() {
            old_of_new[new] = old;
        }
        let mut out = vec![Vec::new(); n];
        for f in 0..m {
            out[dom[f]].push(f);
        }
        let mut pos = vec![0; m];
        for list in &out {
            for (k, &f) in list.iter().enumerate() {
                pos[f] = k;
            }
        }
        let mut comp = Vec::with_capacity(m);
        for f in 0..m {
            let row: Vec<u32> = out[cod[f]]
                .iter()
                .map(|&g| match compose(old_of_new[g], old_of_new[f]) {
                    Some(h) if h < m => mnew[h] as u32,
                    _ => NONE,
                })
                .collect();
            comp.push(row);
        }
        Ok(Self::finish(objs, mors, dom, cod, ident, out, pos, comp))
    }

    #[allow(clippy::too_many_arguments)]
    fn finish(
        objs: Vec<String>,
        mors: Vec<String>,
        dom: Vec<Ob>,
        cod: Vec<Ob>,
        ident: Vec<Mor>,
        out: Vec<Vec<Mor>>,
        pos: Vec<usize>,
        comp: Vec<Vec<u32>>,
    ) -> FinCat {
        let n = objs.len();
        let mut homs = vec![Vec::new(); n * n];
        for f in 0..mors.len() {
            homs[dom[f] * n + cod[f]].push(f);
        }
        let obj_ix = objs.iter().enumerate().map(|(i, s)| (s.clone(), i)).collect();
        let mor_ix = mors.iter().enumerate().map(|(i, s)| (s.clone(), i)).collect();
        FinCat { objs, mors, dom, cod, ident, out, pos, comp, homs, obj_ix, mor_ix }
    }

    /// Builds from string tables; `compose` maps `(g, f)` to `g∘f`.
    pub fn from_names(
        objects: &[&str],
        morphisms: &[(&str, &str, &str)],
        identity: &[(&str, &str)],
        compose: &[(&str, &str, &str)],
    ) -> Result<FinCat> {
        let oix: HashMap<&str, usize> = objects.iter().enumerate().map(|(i, s)| (*s, i)).collect();
        let mix: HashMap<&str, usize> =
            morphisms.iter().enumerate().map(|(i, t)| (t.0, i)).collect();
        let look_o = |s: &str| oix.get(s).copied().ok_or_else(|| Error::UnknownObject(s.into()));
        let look_m = |s: &str| mix.get(s).copied().ok_or_else(|| Error::UnknownMorphism(s.into()));
        let mut mors = Vec::new();
        for (name, d, c) in morphisms {
            mors.push((name.to_string(), look_o(d)?, look_o(c)?));
        }
        let mut ids = vec![usize::MAX; objects.len()];
        for (o, f) in identity {
            ids[look_o(o)?] = look_m(f)?;
        }
        if ids.contains(&usize::MAX) {
            return Err(Error::MalformedTable("identity table is not total".into()));
        }
        let mut table = HashMap::new();
        for (g, f, h) in compose {
            table.insert((look_m(g)?, look_m(f)?), look_m(h)?);
        }
        FinCat::build(
            objects.iter().map(|s| s.to_string()).collect(),
            mors,
            ids,
            |g, f| table.get(&(g, f)).copied(),
        )
    }

    pub fn terminal() -> FinCat {
        Self::discrete(&["*"])
    }

    pub fn discrete(names: &[&str]) -> FinCat {
        let objects: Vec<String> = names.iter().map(|s| s.to_string()).collect();
        let mors = names.iter().enumerate().map(|(i, s)| (format!("1_{s}"), i, i)).collect();
        FinCat::build(objects, mors, (0..names.len()).collect(), |g, f| (g == f).then_some(f))
            .expect("discrete category")
    }

    /// Preorder category: one morphism `x<=y` whenever `leq(x, y)`; `leq` must be
    /// reflexive and transitive.
    pub fn preorder(names: &[String], leq: impl Fn(usize, usize) -> bool) -> FinCat {
        let n = names.len();
        let mut mors = Vec::new();
        let mut index = HashMap::new();
        for x in 0..n {
            for y in 0..n {
                if leq(x, y) {
                    index.insert((x, y), mors.len());
                    let name = if x == y { format!("1_{}", names[x]) } else { format!("{}<={}", names[x], names[y]) };
                    mors.push((name, x, y));
                }
            }
        }
        let ids = (0..n).map(|x| index[&(x, x)]).collect();
        let ends: Vec<(usize, usize)> = mors.iter().map(|t| (t.1, t.2)).collect();
        FinCat::build(names.to_vec(), mors, ids, |g, f| index.get(&(ends[f].0, ends[g].1)).copied())
            .expect("preorder category")
    }

    /// `0 -> 1`.
    pub fn walking_arrow() -> FinCat {
        Self::preorder(&["0".to_string(), "1".to_string()], |x, y| x <= y)
    }

    /// Indiscrete category: exactly one morphism between any two objects.
    pub fn codiscrete(names: &[String]) -> FinCat {
        Self::preorder(names, |_, _| true)
    }

    pub fn n_objs(&self) -> usize {
        self.objs.len()
    }
    pub fn n_mors(&self) -> usize {
        self.mors.len()
    }
    pub fn objects(&self) -> std::ops::Range<Ob> {
        0..self.objs.len()
    }
    pub fn morphisms(&self) -> std::ops::Range<Mor> {
        0..self.mors.len()
    }
    pub fn obj_name(&self, x: Ob) -> &str {
        &self.objs[x]
    }
    pub fn mor_name(&self, f: Mor) -> &str {
        &self.mors[f]
    }
    pub fn obj_names(&self) -> &[String] {
        &self.objs
    }
    pub fn mor_names(&self) -> &[String] {
        &self.mors
    }
    pub fn obj(&self, name: &str) -> Option<Ob> {
        self.obj_ix.get(name).copied()
    }
    pub fn mor(&self, name: &str) -> Option<Mor> {
        self.mor_ix.get(name).copied()
    }
    pub fn obj_or_err(&self, name: &str) -> Result<Ob> {
        self.obj(name).ok_or_else(|| Error::UnknownObject(name.into()))
    }
    pub fn mor_or_err(&self, name: &str) -> Result<Mor> {
        self.mor(name).ok_or_else(|| Error::UnknownMorphism(name.into()))
    }
    pub fn dom(&self, f: Mor) -> Ob {
        self.dom[f]
    }
    pub fn cod(&self, f: Mor) -> Ob {
        self.cod[f]
    }
    pub fn id(&self, x: Ob) -> Mor {
        self.ident[x]
    }
    pub fn is_identity(&self, f: Mor) -> bool {
        self.ident[self.dom[f]] == f
    }
    pub fn out_of(&self, x: Ob) -> &[Mor] {
        &self.out[x]
    }
    pub fn hom(&self, x: Ob, y: Ob) -> &[Mor] {
        &self.homs[x * self.objs.len() + y]
    }

    pub fn try_compose(&self, g: Mor, f: Mor) -> Option<Mor> {
        if self.dom[g] != self.cod[f] {
            return None;
        }
        let h = self.comp[f][self.pos[g]];
        (h != NONE).then_some(h as usize)
    }

    /// `g∘f`; panics when the pair is not composable.
    pub fn compose(&self, g: Mor, f: Mor) -> Mor {
        self.try_compose(g, f).unwrap_or_else(|| {
            panic!("no composite {} ∘ {}", self.mors[g], self.mors[f])
        })
    }

    /// Composes a path given in diagrammatic order: `path[0]` first.
    pub fn compose_path(&self, path: &[Mor]) -> Mor {
        let mut acc = path[0];
        for &g in &path[1..] {
            acc = self.compose(g, acc);
        }
        acc
    }

    pub fn inverse(&self, f: Mor) -> Option<Mor> {
        let (x, y) = (self.dom[f], self.cod[f]);
        self.hom(y, x).iter().copied().find(|&g| {
            self.try_compose(g, f) == Some(self.ident[x]) && self.try_compose(f, g) == Some(self.ident[y])
        })
    }

    pub fn is_iso(&self, f: Mor) -> bool {
        self.inverse(f).is_some()
    }

    pub fn opposite(&self) -> FinCat {
        let n = self.objs.len();
        let m = self.mors.len();
        let mut out = vec![Vec::new(); n];
        for f in 0..m {
            out[self.cod[f]].push(f);
        }
        let mut pos = vec![0; m];
        for list in &out {
            for (k, &f) in list.iter().enumerate() {
                pos[f] = k;
            }
        }
        // op: g ∘op f = f ∘ g, for cod_op f = dom f = dom_op g = cod g.
        let mut comp = Vec::with_capacity(m);
        for f in 0..m {
            comp.push(
                out[self.dom[f]]
                    .iter()
                    .map(|&g| self.try_compose(f, g).map_or(NONE, |h| h as u32))
                    .collect(),
            );
        }
        Self::finish(
            self.objs.clone(),
            self.mors.clone(),
            self.cod.clone(),
            self.dom.clone(),
            self.ident.clone(),
            out,
            pos,
            comp,
        )
    }

    /// Product category; object and morphism identifiers are pair encodings.
    pub fn product(c: &FinCat, d: &FinCat) -> FinCat {
        let dn = d.n_objs();
        let dm = d.n_mors();
        let objects = c
            .objects()
            .flat_map(|x| d.objects().map(move |y| (x, y)))
            .map(|(x, y)| pair_name(c.obj_name(x), d.obj_name(y)))
            .collect();
        let mors = c
            .morphisms()
            .flat_map(|f| d.morphisms().map(move |g| (f, g)))
            .map(|(f, g)| {
                (
                    pair_name(c.mor_name(f), d.mor_name(g)),
                    c.dom(f) * dn + d.dom(g),
                    c.cod(f) * dn + d.cod(g),
                )
            })
            .collect();
        let ids = c.objects().flat_map(|x| d.objects().map(move |y| c.id(x) * dm + d.id(y))).collect();
        FinCat::build(objects, mors, ids, |g, f| {
            let h1 = c.try_compose(g / dm, f / dm)?;
            let h2 = d.try_compose(g % dm, f % dm)?;
            Some(h1 * dm + h2)
        })
        .expect("product of valid categories")
    }

    /// Returns a copy with one composition entry overwritten (for mutation tests).
    pub fn with_compose_entry(&self, g: Mor, f: Mor, h: Mor) -> FinCat {
        let mut c = self.clone();
        c.comp[f][c.pos[g]] = h as u32;
        c
    }

    /// Returns a copy with the objects and morphisms renamed.
    pub fn renamed(&self, obj: impl Fn(Ob) -> String, mor: impl Fn(Mor) -> String) -> Result<FinCat> {
        let objects = self.objects().map(obj).collect();
        let mors = self.morphisms().map(|f| (mor(f), self.dom[f], self.cod[f])).collect();
        FinCat::build(objects, mors, self.ident.clone(), |g, f| self.try_compose(g, f))
    }

    /// Full subcategory on the given objects, keeping only morphisms accepted by `keep`.
    /// The kept morphisms must be closed under composition and contain identities.
    pub fn subcategory(&self, objects: &[Ob], keep: impl Fn(Mor) -> bool) -> (FinCat, Vec<Ob>, Vec<Mor>) {
        let mut onew = HashMap::new();
        for (i, &x) in objects.iter().enumerate() {
            onew.insert(x, i);
        }
        let kept: Vec<Mor> = self
            .morphisms()
            .filter(|&f| onew.contains_key(&self.dom[f]) && onew.contains_key(&self.cod[f]) && keep(f))
            .collect();
        let mut mnew = HashMap::new();
        for (i, &f) in kept.iter().enumerate() {
            mnew.insert(f, i);
        }
        let cat = FinCat::build(
            objects.iter().map(|&x| self.objs[x].clone()).collect(),
            kept.iter().map(|&f| (self.mors[f].clone(), onew[&self.dom[f]], onew[&self.cod[f]])).collect(),
            objects.iter().map(|&x| mnew[&self.ident[x]]).collect(),
            |g, f| self.try_compose(kept[g], kept[f]).and_then(|h| mnew.get(&h).copied()),
        )
        .expect("subcategory");
        // Identifier sorting preserves the relative order of a sorted parent.
        let obj_embed = cat.objects().map(|x| self.obj(cat.obj_name(x)).unwrap()).collect();
        let mor_embed = cat.morphisms().map(|f| self.mor(cat.mor_name(f)).unwrap()).collect();
        (cat, obj_embed, mor_embed)
    }
}

/// Checks totality, typing, unit laws and associativity of a composition table.
pub fn check_category(c: &FinCat) -> Result<LawReport> {
    let mut rep = LawReport::new("category");
    for f in c.morphisms() {
        for &g in c.out_of(c.cod(f)) {
            let Some(h) = c.try_compose(g, f) else {
                return Err(Error::MalformedTable(format!(
                    "missing composite {} ∘ {}",
                    c.mor_name(g),
                    c.mor_name(f)
                )));
            };
            rep.tick();
            if c.dom(h) != c.dom(f) || c.cod(h) != c.cod(g) {
                bail_law!(rep, "composite typing", c.mor_name(g), c.mor_name(f));
            }
        }
    }
    for x in c.objects() {
        let i = c.id(x);
        if c.dom(i) != x || c.cod(i) != x {
            bail_law!(rep, "identity typing", c.obj_name(x));
        }
    }
    for f in c.morphisms() {
        rep.tick();
        if c.compose(f, c.id(c.dom(f))) != f || c.compose(c.id(c.cod(f)), f) != f {
            bail_law!(rep, "unit law", c.mor_name(f));
        }
    }
    for f in c.morphisms() {
        for &g in c.out_of(c.cod(f)) {
            let gf = c.compose(g, f);
            for &h in c.out_of(c.cod(g)) {
                rep.tick();
                if c.compose(h, gf) != c.compose(c.compose(h, g), f) {
                    bail_law!(rep, "associativity", c.mor_name(h), c.mor_name(g), c.mor_name(f));
                }
            }
        }
    }
    Ok(rep)
}

fn same_cat(a: &Arc<FinCat>, b: &Arc<FinCat>) -> bool {
    Arc::ptr_eq(a, b) || **a == **b
}

#[derive(Clone, Debug)]
pub struct FinFunctor {
    pub source: Arc<FinCat>,
    pub target: Arc<FinCat>,
    pub obj_map: Vec<Ob>,
    pub mor_map: Vec<Mor>,
}

impl PartialEq for FinFunctor {
    fn eq(&self, other: &Self) -> bool {
        self.obj_map == other.obj_map
            && self.mor_map == other.mor_map
            && same_cat(&self.source, &other.source)
            && same_cat(&self.target, &other.target)
    }
}
impl Eq for FinFunctor {}

impl FinFunctor {
    pub fn new(source: Arc<FinCat>, target: Arc<FinCat>, obj_map: Vec<Ob>, mor_map: Vec<Mor>) -> Result<Self> {
        if obj_map.len() != source.n_objs() || mor_map.len() != source.n_mors() {
            return Err(Error::MalformedTable("functor tables are not total".into()));
        }
        if obj_map.iter().any(|&y| y >= target.n_objs()) || mor_map.iter().any(|&g| g >= target.n_mors()) {
            return Err(Error::MalformedTable("functor table leaves the target".into()));
        }
        Ok(FinFunctor { source, target, obj_map, mor_map })
    }

    /// Builds a functor whose morphism map is derived from object and morphism names.
    pub fn from_fns(
        source: Arc<FinCat>,
        target: Arc<FinCat>,
        obj: impl Fn(Ob) -> Ob,
        mor: impl Fn(Mor) -> Mor,
    ) -> FinFunctor {
        let obj_map = source.objects().map(obj).collect();
        let mor_map = source.morphisms().map(mor).collect();
        FinFunctor { source, target, obj_map, mor_map }
    }

    /// Functor into a category with at most one morphism per hom-set,
    /// determined by its object map.
    pub fn into_thin(source: Arc<FinCat>, target: Arc<FinCat>, obj_map: Vec<Ob>) -> Result<FinFunctor> {
        let mut mor_map = Vec::with_capacity(source.n_mors());
        for k in source.morphisms() {
            match target.hom(obj_map[source.dom(k)], obj_map[source.cod(k)]) {
                [h] => mor_map.push(*h),
                _ => return Err(Error::MalformedTable(format!("no unique image for {}", source.mor_name(k)))),
            }
        }
        FinFunctor::new(source, target, obj_map, mor_map)
    }

    pub fn identity(c: Arc<FinCat>) -> FinFunctor {
        FinFunctor {
            obj_map: c.objects().collect(),
            mor_map: c.morphisms().collect(),
            source: c.clone(),
            target: c,
        }
    }

    pub fn constant(source: Arc<FinCat>, target: Arc<FinCat>, y: Ob) -> FinFunctor {
        let i = target.id(y);
        FinFunctor {
            obj_map: vec![y; source.n_objs()],
            mor_map: vec![i; source.n_mors()],
            source,
            target,
        }
    }

    pub fn ob(&self, x: Ob) -> Ob {
        self.obj_map[x]
    }
    pub fn mor(&self, f: Mor) -> Mor {
        self.mor_map[f]
    }

    pub fn is_identity(&self) -> bool {
        same_cat(&self.source, &self.target)
            && self.obj_map.iter().enumerate().all(|(i, &x)| i == x)
            && self.mor_map.iter().enumerate().all(|(i, &f)| i == f)
    }

    pub fn opposite(&self, source_op: Arc<FinCat>, target_op: Arc<FinCat>) -> FinFunctor {
        FinFunctor { source: source_op, target: target_op, obj_map: self.obj_map.clone(), mor_map: self.mor_map.clone() }
    }

    pub fn with_mor_entry(&self, f: Mor, g: Mor) -> FinFunctor {
        let mut h = self.clone();
        h.mor_map[f] = g;
        h
    }
}

/// `g ∘ f`.
pub fn compose_functors(g: &FinFunctor, f: &FinFunctor) -> Result<FinFunctor> {
    if !same_cat(&f.target, &g.source) {
        return Err(Error::ShapeMismatch("functors are not composable".into()));
    }
    Ok(FinFunctor {
        source: f.source.clone(),
        target: g.target.clone(),
        obj_map: f.obj_map.iter().map(|&x| g.obj_map[x]).collect(),
        mor_map: f.mor_map.iter().map(|&m| g.mor_map[m]).collect(),
    })
}

pub fn check_functor(fun: &FinFunctor) -> Result<LawReport> {
    let mut rep = LawReport::new("functor");
    let (c, d) = (&*fun.source, &*fun.target);
    if fun.obj_map.len() != c.n_objs() || fun.mor_map.len() != c.n_mors() {
        return Err(Error::MalformedTable("functor tables are not total".into()));
    }
    for f in c.morphisms() {
        rep.tick();
        let g = fun.mor(f);
        if d.dom(g) != fun.ob(c.dom(f)) || d.cod(g) != fun.ob(c.cod(f)) {
            bail_law!(rep, "endpoint preservation", c.mor_name(f), d.mor_name(g));
        }
    }
    for x in c.objects() {
        rep.tick();
        if fun.mor(c.id(x)) != d.id(fun.ob(x)) {
            bail_law!(rep, "identity preservation", c.obj_name(x));
        }
    }
    for f in c.morphisms() {
        for &g in c.out_of(c.cod(f)) {
            rep.tick();
            if fun.mor(c.compose(g, f)) != d.compose(fun.mor(g), fun.mor(f)) {
                bail_law!(rep, "composite preservation", c.mor_name(g), c.mor_name(f));
            }
        }
    }
    Ok(rep)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NatTrans {
    pub source_fun: FinFunctor,
    pub target_fun: FinFunctor,
    pub components: Vec<Mor>,
}

impl NatTrans {
    pub fn new(source_fun: FinFunctor, target_fun: FinFunctor, components: Vec<Mor>) -> Result<NatTrans> {
        if !same_cat(&source_fun.source, &target_fun.source) || !same_cat(&source_fun.target, &target_fun.target) {
            return Err(Error::ShapeMismatch("functors have different endpoints".into()));
        }
        if components.len() != source_fun.source.n_objs() {
            return Err(Error::MalformedTable("component table is not total".into()));
        }
        Ok(NatTrans { source_fun, target_fun, components })
    }

    pub fn identity(f: &FinFunctor) -> NatTrans {
        let components = f.obj_map.iter().map(|&y| f.target.id(y)).collect();
        NatTrans { source_fun: f.clone(), target_fun: f.clone(), components }
    }

    pub fn at(&self, x: Ob) -> Mor {
        self.components[x]
    }

    pub fn is_identity(&self) -> bool {
        let t = &self.source_fun.target;
        self.components.iter().all(|&f| t.is_identity(f))
    }

    pub fn inverse(&self) -> Option<NatTrans> {
        let t = &self.source_fun.target;
        let comps = self.components.iter().map(|&f| t.inverse(f)).collect::<Option<Vec<_>>>()?;
        Some(NatTrans { source_fun: self.target_fun.clone(), target_fun: self.source_fun.clone(), components: comps })
    }
}

pub fn check_nat_trans(t: &NatTrans) -> Result<LawReport> {
    let mut rep = LawReport::new("natural transformation");
    let (f, g) = (&t.source_fun, &t.target_fun);
    if !same_cat(&f.source, &g.source) || !same_cat(&f.target, &g.target) {
        return Err(Error::ShapeMismatch("functors have different endpoints".into()));
    }
    let (c, d) = (&*f.source, &*f.target);
    if t.components.len() != c.n_objs() {
        return Err(Error::MalformedTable("component table is not total".into()));
    }
    for x in c.objects() {
        rep.tick();
        let k = t.at(x);
        if d.dom(k) != f.ob(x) || d.cod(k) != g.ob(x) {
            bail_law!(rep, "component typing", c.obj_name(x), d.mor_name(k));
        }
    }
    for h in c.morphisms() {
        rep.tick();
        let (x, y) = (c.dom(h), c.cod(h));
        if d.compose(t.at(y), f.mor(h)) != d.compose(g.mor(h), t.at(x)) {
            bail_law!(rep, "naturality", c.mor_name(h));
        }
    }
    Ok(rep)
}

/// `s · t` for `t: F ⇒ G`, `s: G ⇒ H`.
pub fn vertical_compose(s: &NatTrans, t: &NatTrans) -> Result<NatTrans> {
    if t.target_fun != s.source_fun {
        return Err(Error::ShapeMismatch("transformations are not vertically composable".into()));
    }
    let d = &t.source_fun.target;
    let components = t.components.iter().zip(&s.components).map(|(&a, &b)| d.compose(b, a)).collect();
    Ok(NatTrans { source_fun: t.source_fun.clone(), target_fun: s.target_fun.clone(), components })
}

/// `H t: H F ⇒ H G`.
pub fn whisker_left(h: &FinFunctor, t: &NatTrans) -> Result<NatTrans> {
    Ok(NatTrans {
        source_fun: compose_functors(h, &t.source_fun)?,
        target_fun: compose_functors(h, &t.target_fun)?,
        components: t.components.iter().map(|&f| h.mor(f)).collect(),
    })
}

/// `t K: F K ⇒ G K`.
pub fn whisker_right(t: &NatTrans, k: &FinFunctor) -> Result<NatTrans> {
    Ok(NatTrans {
        source_fun: compose_functors(&t.source_fun, k)?,
        target_fun: compose_functors(&t.target_fun, k)?,
        components: k.obj_map.iter().map(|&x| t.at(x)).collect(),
    })
}

/// Horizontal composite `s * t: H F ⇒ K G` for `t: F ⇒ G`, `s: H ⇒ K`.
pub fn horizontal_compose(s: &NatTrans, t: &NatTrans) -> Result<NatTrans> {
    let left = whisker_right(s, &t.source_fun)?;
    let right = whisker_left(&s.target_fun, t)?;
    vertical_compose(&right, &left)
}

#[derive(Clone, Copy, Debug)]
pub struct IsoLimits {
    pub max_objects: usize,
    pub max_morphisms: usize,
}

impl Default for IsoLimits {
    fn default() -> Self {
        IsoLimits { max_objects: 6, max_morphisms: 40 }
    }
}

/// Brute-force isomorphism search: object bijections with morphism-map completion.
pub fn find_isomorphism(c: &Arc<FinCat>, d: &Arc<FinCat>, limits: IsoLimits) -> Result<Option<(FinFunctor, FinFunctor)>> {
    if c.n_objs() > limits.max_objects || c.n_mors() > limits.max_morphisms {
        return Err(Error::SizeLimitExceeded(format!(
            "{} objects, {} morphisms",
            c.n_objs(),
            c.n_mors()
        )));
    }
    if c.n_objs() != d.n_objs() || c.n_mors() != d.n_mors() {
        return Ok(None);
    }
    let n = c.n_objs();
    let mut search = IsoSearch { c, d, omap: vec![usize::MAX; n], used: vec![false; n], mmap: vec![usize::MAX; c.n_mors()] };
    if !search.objects(0) {
        return Ok(None);
    }
    let fwd = FinFunctor { source: c.clone(), target: d.clone(), obj_map: search.omap.clone(), mor_map: search.mmap.clone() };
    let mut inv_o = vec![0; n];
    for (x, &y) in search.omap.iter().enumerate() {
        inv_o[y] = x;
    }
    let mut inv_m = vec![0; c.n_mors()];
    for (f, &g) in search.mmap.iter().enumerate() {
        inv_m[g] = f;
    }
    let bwd = FinFunctor { source: d.clone(), target: c.clone(), obj_map: inv_o, mor_map: inv_m };
    Ok(Some((fwd, bwd)))
}

struct IsoSearch<'a> {
    c: &'a FinCat,
    d: &'a FinCat,
    omap: Vec<Ob>,
    used: Vec<bool>,
    mmap: Vec<Mor>,
}

impl IsoSearch<'_> {
    fn objects(&mut self, x: Ob) -> bool {
        let n = self.c.n_objs();
        if x == n {
            let hom_pairs: Vec<(Ob, Ob)> = (0..n).flat_map(|a| (0..n).map(move |b| (a, b))).collect();
            return self.morphisms(&hom_pairs, 0, 0);
        }
        for y in 0..n {
            if self.used[y] {
                continue;
            }
            let ok = (0..x).all(|z| {
                self.c.hom(x, z).len() == self.d.hom(y, self.omap[z]).len()
                    && self.c.hom(z, x).len() == self.d.hom(self.omap[z], y).len()
            }) && self.c.hom(x, x).len() == self.d.hom(y, y).len();
            if !ok {
                continue;
            }
            self.omap[x] = y;
            self.used[y] = true;
            if self.objects(x + 1) {
                return true;
            }
            self.used[y] = false;
        }
        self.omap[x] = usize::MAX;
        false
    }

    fn consistent(&self, f: Mor) -> bool {
        let (c, d) = (self.c, self.d);
        let img = self.mmap[f];
        if c.is_identity(f) != d.is_identity(img) {
            return false;
        }
        for &g in c.out_of(c.cod(f)) {
            if self.mmap[g] == usize::MAX {
                continue;
            }
            let h = c.compose(g, f);
            if self.mmap[h] != usize::MAX && self.mmap[h] != d.compose(self.mmap[g], img) {
                return false;
            }
        }
        for h in c.morphisms() {
            if c.cod(h) != c.dom(f) || self.mmap[h] == usize::MAX {
                continue;
            }
            let k = c.compose(f, h);
            if self.mmap[k] != usize::MAX && self.mmap[k] != d.compose(img, self.mmap[h]) {
                return false;
            }
        }
        // Composites involving f as the result.
        for a in c.morphisms() {
            if self.mmap[a] == usize::MAX {
                continue;
            }
            for &b in c.out_of(c.cod(a)) {
                if self.mmap[b] != usize::MAX && c.compose(b, a) == f && d.compose(self.mmap[b], self.mmap[a]) != img {
                    return false;
                }
            }
        }
        true
    }

    fn morphisms(&mut self, pairs: &[(Ob, Ob)], p: usize, k: usize) -> bool {
        if p == pairs.len() {
            return true;
        }
        let (x, y) = pairs[p];
        let src = self.c.hom(x, y).to_vec();
        if k == src.len() {
            return self.morphisms(pairs, p + 1, 0);
        }
        let f = src[k];
        let tgt = self.d.hom(self.omap[x], self.omap[y]).to_vec();
        for g in tgt {
            if self.mmap.contains(&g) {
                continue;
            }
            self.mmap[f] = g;
            if self.consistent(f) && self.morphisms(pairs, p, k + 1) {
                return true;
            }
            self.mmap[f] = usize::MAX;
        }
        false
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn arrow() -> Arc<FinCat> {
        Arc::new(FinCat::walking_arrow())
    }

    #[test]
    fn tuple_names_round_trip() {
        let n = tuple_name(&["a|b", "(c)", "d\\e"]);
        assert_eq!(split_tuple(&n).unwrap(), vec!["a|b", "(c)", "d\\e"]);
        assert_eq!(split_tuple("(x|y)").unwrap(), vec!["x", "y"]);
    }

    #[test]
    fn terminal_and_arrow_pass() {
        assert!(check_category(&FinCat::terminal()).unwrap().is_pass());
        let a = FinCat::walking_arrow();
        assert_eq!(a.n_mors(), 3);
        assert!(check_category(&a).unwrap().is_pass());
    }

    #[test]
    fn redirected_composite_is_witnessed() {
        let c = FinCat::from_names(
            &["x", "y"],
            &[("1x", "x", "x"), ("1y", "y", "y"), ("f", "x", "y"), ("g", "x", "y")],
            &[("x", "1x"), ("y", "1y")],
            &[
                ("1x", "1x", "1x"),
                ("1y", "1y", "1y"),
                ("f", "1x", "f"),
                ("g", "1x", "g"),
                ("1y", "f", "f"),
                ("1y", "g", "g"),
            ],
        )
        .unwrap();
        assert!(check_category(&c).unwrap().is_pass());
        let (f, g, one_y) = (c.mor("f").unwrap(), c.mor("g").unwrap(), c.mor("1y").unwrap());
        let bad = c.with_compose_entry(one_y, f, g);
        let rep = check_category(&bad).unwrap();
        assert!(!rep.is_pass());
        assert_eq!(rep.first().unwrap().witness, vec!["f".to_string()]);
        let wrong_cod = c.with_compose_entry(one_y, f, c.mor("1x").unwrap());
        let rep = check_category(&wrong_cod).unwrap();
        assert_eq!(rep.first().unwrap().witness, vec!["1y".to_string(), "f".to_string()]);
    }

    #[test]
    fn missing_entry_is_malformed() {
        let r = FinCat::from_names(&["x"], &[("1", "x", "x")], &[("x", "1")], &[]);
        assert!(matches!(check_category(&r.unwrap()), Err(Error::MalformedTable(_))));
    }

    #[test]
    fn opposite_is_involutive() {
        let a = FinCat::walking_arrow();
        let op = a.opposite();
        assert!(check_category(&op).unwrap().is_pass());
        let f = op.mor("0<=1").unwrap();
        assert_eq!(op.obj_name(op.dom(f)), "1");
        assert_eq!(op.opposite(), a);
        assert_eq!(FinCat::terminal().opposite(), FinCat::terminal());
    }

    #[test]
    fn products_count() {
        let a = FinCat::walking_arrow();
        let sq = FinCat::product(&a, &a);
        assert_eq!(sq.n_objs(), 4);
        assert_eq!(sq.n_mors(), 9);
        assert!(check_category(&sq).unwrap().is_pass());
        let d = FinCat::discrete(&["p", "q"]);
        let dd = FinCat::product(&d, &d);
        assert_eq!((dd.n_objs(), dd.n_mors()), (4, 4));
        let t = Arc::new(FinCat::product(&a, &FinCat::terminal()));
        assert!(find_isomorphism(&t, &arrow(), IsoLimits::default()).unwrap().is_some());
    }

    #[test]
    fn functor_checks() {
        let a = arrow();
        assert!(check_functor(&FinFunctor::identity(a.clone())).unwrap().is_pass());
        let t = Arc::new(FinCat::terminal());
        assert!(check_functor(&FinFunctor::constant(a.clone(), t.clone(), 0)).unwrap().is_pass());
        let sq = Arc::new(FinCat::product(&a, &a));
        let diag = FinFunctor::from_fns(
            a.clone(),
            sq.clone(),
            |x| sq.obj(&pair_name(a.obj_name(x), a.obj_name(x))).unwrap(),
            |f| sq.mor(&pair_name(a.mor_name(f), a.mor_name(f))).unwrap(),
        );
        assert!(check_functor(&diag).unwrap().is_pass());
        let f = a.mor("0<=1").unwrap();
        let broken = diag.with_mor_entry(f, sq.mor(&pair_name("0<=1", "1_0")).unwrap());
        assert!(!check_functor(&broken).unwrap().is_pass());
    }

    #[test]
    fn naturality_on_walking_arrow() {
        let a = arrow();
        let c0 = FinFunctor::constant(a.clone(), a.clone(), 0);
        let c1 = FinFunctor::constant(a.clone(), a.clone(), 1);
        let up = a.mor("0<=1").unwrap();
        let t = NatTrans::new(c0.clone(), c1.clone(), vec![up, up]).unwrap();
        assert!(check_nat_trans(&t).unwrap().is_pass());
        let id = FinFunctor::identity(a.clone());
        let to_top = NatTrans::new(id.clone(), c1, vec![up, a.id(1)]).unwrap();
        assert!(check_nat_trans(&to_top).unwrap().is_pass());
        assert!(check_nat_trans(&NatTrans::identity(&id)).unwrap().is_pass());
        // Two functors picking parallel arrows; identity components are not natural.
        let par = Arc::new(parallel_pair());
        let (f, g) = (par.mor("f").unwrap(), par.mor("g").unwrap());
        let (x, y) = (par.obj("x").unwrap(), par.obj("y").unwrap());
        let pf = FinFunctor::new(a.clone(), par.clone(), vec![x, y], vec![f, par.id(x), par.id(y)]).unwrap();
        let pg = FinFunctor::new(a.clone(), par.clone(), vec![x, y], vec![g, par.id(x), par.id(y)]).unwrap();
        assert!(check_functor(&pf).unwrap().is_pass());
        let t = NatTrans::new(pf, pg, vec![par.id(x), par.id(y)]).unwrap();
        let rep = check_nat_trans(&t).unwrap();
        assert_eq!(rep.first().unwrap().law, "naturality");
    }

    fn parallel_pair() -> FinCat {
        FinCat::from_names(
            &["x", "y"],
            &[("1x", "x", "x"), ("1y", "y", "y"), ("f", "x", "y"), ("g", "x", "y")],
            &[("x", "1x"), ("y", "1y")],
            &[
                ("1x", "1x", "1x"),
                ("1y", "1y", "1y"),
                ("f", "1x", "f"),
                ("g", "1x", "g"),
                ("1y", "f", "f"),
                ("1y", "g", "g"),
            ],
        )
        .unwrap()
    }

    #[test]
    fn interchange_law() {
        let a = arrow();
        let id = FinFunctor::identity(a.clone());
        let c0 = FinFunctor::constant(a.clone(), a.clone(), 0);
        let c1 = FinFunctor::constant(a.clone(), a.clone(), 1);
        let up = a.mor("0<=1").unwrap();
        let t1 = NatTrans::new(c0.clone(), id.clone(), vec![a.id(0), up]).unwrap();
        let t2 = NatTrans::new(id.clone(), c1.clone(), vec![up, a.id(1)]).unwrap();
        let s1 = NatTrans::identity(&id);
        let s2 = NatTrans::identity(&id);
        let lhs = horizontal_compose(&vertical_compose(&s2, &s1).unwrap(), &vertical_compose(&t2, &t1).unwrap()).unwrap();
        let rhs = vertical_compose(&horizontal_compose(&s2, &t2).unwrap(), &horizontal_compose(&s1, &t1).unwrap()).unwrap();
        assert_eq!(lhs, rhs);
        assert!(check_nat_trans(&lhs).unwrap().is_pass());
    }

    #[test]
    fn iso_search() {
        let a = arrow();
        let (f, g) = find_isomorphism(&a, &a, IsoLimits::default()).unwrap().unwrap();
        assert!(f.is_identity() && g.is_identity());
        let d = Arc::new(FinCat::discrete(&["p", "q"]));
        assert!(find_isomorphism(&d, &a, IsoLimits::default()).unwrap().is_none());
        let big = Arc::new(FinCat::discrete(&["a", "b", "c", "d", "e", "f", "g"]));
        assert!(matches!(find_isomorphism(&big, &big, IsoLimits::default()), Err(Error::SizeLimitExceeded(_))));
    }
}
