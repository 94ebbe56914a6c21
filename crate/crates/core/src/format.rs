//! Interchange format: JSON documents whose single top-level key names the
//! entity kind. Tables are keyed by identifiers in lexicographic order, so
//! dumps are canonical.

use crate::corr::FibrewiseMonoidal;
use crate::error::{Error, Result};
use crate::fib::{ClovenFibration, Direction, MonoidalFibrationData};
use crate::fincat::{split_tuple, tuple_name, FinCat, FinFunctor, Mor, Ob};
use crate::indexed::{IndexedCat, LaxMonoidalIndexed, Variance};
use crate::moncat::{Bifunctor, CocartesianWitness, MonoidalData, MonoidalFunctorData, Strength};
use serde::{Deserialize, Serialize};
use std::collections::{BTreeMap, HashMap};
use std::sync::Arc;

type Table = BTreeMap<String, String>;
type Cells = BTreeMap<String, Table>;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CategoryDoc {
    pub objects: Vec<String>,
    /// Morphism `↦ [domain, codomain]`.
    pub morphisms: BTreeMap<String, [String; 2]>,
    pub identity: Table,
    /// `(g|f) ↦ g∘f`.
    pub compose: Table,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FunctorDoc {
    pub objects: Table,
    pub morphisms: Table,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct IndexedDoc {
    pub base: CategoryDoc,
    pub variance: Variance,
    pub fibres: BTreeMap<String, CategoryDoc>,
    pub reindex: BTreeMap<String, FunctorDoc>,
    /// `(g|f) ↦` components of `δ_{g,f}`.
    pub compositor: Cells,
    pub unitor: Cells,
    pub strict: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MonoidalDoc {
    pub tensor: FunctorDoc,
    pub unit: String,
    pub associator: Table,
    pub left_unitor: Table,
    pub right_unitor: Table,
    pub braiding: Option<Table>,
    pub symmetric: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct WitnessDoc {
    /// `(x|y) ↦ [x+y, ι_x, ι_y]`.
    pub coproducts: BTreeMap<String, [String; 3]>,
    pub initial: String,
    pub bang: Table,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LaxDoc {
    pub carrier: IndexedDoc,
    pub base_monoidal: MonoidalDoc,
    pub laxator: BTreeMap<String, FunctorDoc>,
    pub laxator_cells: Cells,
    pub unit: String,
    pub omega: Cells,
    pub zeta: Cells,
    pub xi: Cells,
    pub braid: Option<Cells>,
    pub symmetric: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FibrationDoc {
    pub total: CategoryDoc,
    pub base: CategoryDoc,
    pub projection: FunctorDoc,
    /// `(f|e) ↦` chosen lift.
    pub cleavage: Table,
    pub direction: Direction,
    pub split: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MonoidalFunctorDoc {
    pub laxator: Table,
    pub unit: String,
    pub strength: String,
    pub braided: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FibrewiseDoc {
    pub carrier: IndexedDoc,
    pub per_fibre: BTreeMap<String, MonoidalDoc>,
    pub reindex_monoidal: BTreeMap<String, MonoidalFunctorDoc>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case", deny_unknown_fields)]
pub enum Document {
    Category(CategoryDoc),
    Functor { source: CategoryDoc, target: CategoryDoc, map: FunctorDoc },
    Monoidal { category: CategoryDoc, monoidal: MonoidalDoc },
    Indexed(IndexedDoc),
    LaxMonoidal { lax: LaxDoc, witness: Option<WitnessDoc> },
    Fibrewise { fibrewise: FibrewiseDoc, witness: Option<WitnessDoc> },
    Fibration(FibrationDoc),
    MonoidalFibration { fibration: FibrationDoc, total_monoidal: MonoidalDoc, base_monoidal: MonoidalDoc },
}

/// A loaded, resolved entity.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Entity {
    Category(Arc<FinCat>),
    Functor(FinFunctor),
    Monoidal(MonoidalData),
    Indexed(IndexedCat),
    LaxMonoidal { lax: LaxMonoidalIndexed, witness: Option<CocartesianWitness> },
    Fibrewise { fibrewise: FibrewiseMonoidal, witness: Option<CocartesianWitness> },
    Fibration(ClovenFibration),
    MonoidalFibration(MonoidalFibrationData),
}

impl Entity {
    pub fn kind(&self) -> &'static str {
        match self {
            Entity::Category(_) => "category",
            Entity::Functor(_) => "functor",
            Entity::Monoidal(_) => "monoidal",
            Entity::Indexed(_) => "indexed",
            Entity::LaxMonoidal { .. } => "lax-monoidal",
            Entity::Fibrewise { .. } => "fibrewise",
            Entity::Fibration(_) => "fibration",
            Entity::MonoidalFibration(_) => "monoidal-fibration",
        }
    }
}

pub fn dump(e: &Entity) -> String {
    let mut s = serde_json::to_string_pretty(&to_document(e)).expect("documents serialize");
    s.push('\n');
    s
}

pub fn load(s: &str) -> Result<Entity> {
    let mut de = serde_json::Deserializer::from_str(s);
    let doc: Document = serde_path_to_error::deserialize(&mut de).map_err(|e| {
        let inner = e.inner();
        Error::Parse(format!("line {} column {} at {}: {inner}", inner.line(), inner.column(), e.path()))
    })?;
    de.end().map_err(|e| Error::Parse(format!("line {} column {}: {e}", e.line(), e.column())))?;
    from_document(&doc)
}

fn key(parts: &[&str]) -> String {
    tuple_name(parts)
}

fn unkey(field: &str, k: &str, n: usize) -> Result<Vec<String>> {
    split_tuple(k).filter(|p| p.len() == n).ok_or_else(|| Error::Parse(format!("{field}: malformed key {k}")))
}

// ---- dumping ----

pub fn category_doc(c: &FinCat) -> CategoryDoc {
    let mut compose = Table::new();
    for f in c.morphisms() {
        for &g in c.out_of(c.cod(f)) {
            if let Some(h) = c.try_compose(g, f) {
                compose.insert(key(&[c.mor_name(g), c.mor_name(f)]), c.mor_name(h).into());
            }
        }
    }
    CategoryDoc {
        objects: c.obj_names().to_vec(),
        morphisms: c.morphisms().map(|f| (c.mor_name(f).into(), [c.obj_name(c.dom(f)).into(), c.obj_name(c.cod(f)).into()])).collect(),
        identity: c.objects().map(|x| (c.obj_name(x).into(), c.mor_name(c.id(x)).into())).collect(),
        compose,
    }
}

fn functor_doc(f: &FinFunctor) -> FunctorDoc {
    let (s, t) = (&f.source, &f.target);
    FunctorDoc {
        objects: s.objects().map(|x| (s.obj_name(x).into(), t.obj_name(f.ob(x)).into())).collect(),
        morphisms: s.morphisms().map(|k| (s.mor_name(k).into(), t.mor_name(f.mor(k)).into())).collect(),
    }
}

fn bifunctor_doc(b: &Bifunctor) -> FunctorDoc {
    let (l, r, t) = (&b.left, &b.right, &b.target);
    let mut objects = Table::new();
    let mut morphisms = Table::new();
    for (x, y) in b.defined_pairs() {
        objects.insert(key(&[l.obj_name(x), r.obj_name(y)]), t.obj_name(b.ob_u(x, y)).into());
    }
    for f in l.morphisms() {
        for g in r.morphisms() {
            if let Some(h) = b.mor(f, g) {
                morphisms.insert(key(&[l.mor_name(f), r.mor_name(g)]), t.mor_name(h).into());
            }
        }
    }
    FunctorDoc { objects, morphisms }
}

fn indexed_doc(m: &IndexedCat) -> IndexedDoc {
    let b = &m.base;
    let comps = |r: &FinFunctor, cs: &[Mor]| -> Table { r.source.objects().map(|a| (r.source.obj_name(a).into(), r.target.mor_name(cs[a]).into())).collect() };
    IndexedDoc {
        base: category_doc(b),
        variance: m.variance,
        fibres: b.objects().map(|x| (b.obj_name(x).into(), category_doc(&m.fibres[x]))).collect(),
        reindex: b.morphisms().map(|f| (b.mor_name(f).into(), functor_doc(&m.reindex[f]))).collect(),
        compositor: m.compositor.iter().map(|(&(g, f), cs)| (key(&[b.mor_name(g), b.mor_name(f)]), comps(&m.reindex[b.compose(g, f)], cs))).collect(),
        unitor: b.objects().map(|x| (b.obj_name(x).into(), comps(&m.reindex[b.id(x)], &m.unitor[x]))).collect(),
        strict: m.strict,
    }
}

fn monoidal_doc(m: &MonoidalData) -> MonoidalDoc {
    let c = &m.base;
    let on = |x: Ob| c.obj_name(x).to_string();
    let mn = |f: Mor| c.mor_name(f).to_string();
    MonoidalDoc {
        tensor: bifunctor_doc(&m.tensor),
        unit: on(m.unit),
        associator: m.associator.iter().map(|(&(x, y, z), &a)| (key(&[&on(x), &on(y), &on(z)]), mn(a))).collect(),
        left_unitor: m.left_unitor.iter().map(|(&x, &l)| (on(x), mn(l))).collect(),
        right_unitor: m.right_unitor.iter().map(|(&x, &r)| (on(x), mn(r))).collect(),
        braiding: m.braiding.as_ref().map(|br| br.iter().map(|(&(x, y), &k)| (key(&[&on(x), &on(y)]), mn(k))).collect()),
        symmetric: m.symmetric,
    }
}

fn witness_doc(w: &CocartesianWitness) -> WitnessDoc {
    let c = &w.base;
    WitnessDoc {
        coproducts: w
            .coproducts
            .iter()
            .map(|(&(x, y), &(s, i1, i2))| (key(&[c.obj_name(x), c.obj_name(y)]), [c.obj_name(s).into(), c.mor_name(i1).into(), c.mor_name(i2).into()]))
            .collect(),
        initial: c.obj_name(w.initial).into(),
        bang: c.objects().map(|x| (c.obj_name(x).into(), c.mor_name(w.bang[x]).into())).collect(),
    }
}

fn lax_doc(l: &LaxMonoidalIndexed) -> LaxDoc {
    let m = &l.carrier;
    let b = &m.base;
    let bm = &l.base_monoidal;
    let fo = |x: Ob, a: Ob| m.fibres[x].obj_name(a).to_string();
    let fm = |x: Ob, k: Mor| m.fibres[x].mor_name(k).to_string();
    let pair_cells = |cells: &HashMap<(Ob, Ob), Mor>, x: Ob, y: Ob, t: Ob| -> Table { cells.iter().map(|(&(a, c), &k)| (key(&[&fo(x, a), &fo(y, c)]), fm(t, k))).collect() };
    let unary = |cells: &HashMap<Ob, Mor>, x: Ob| -> Table { cells.iter().map(|(&a, &k)| (fo(x, a), fm(x, k))).collect() };
    LaxDoc {
        carrier: indexed_doc(m),
        base_monoidal: monoidal_doc(bm),
        laxator: l.laxator.iter().map(|(&(x, y), bi)| (key(&[b.obj_name(x), b.obj_name(y)]), bifunctor_doc(bi))).collect(),
        laxator_cells: l
            .laxator_cells
            .iter()
            .map(|(&(f, g), cells)| (key(&[b.mor_name(f), b.mor_name(g)]), pair_cells(cells, b.dom(f), b.dom(g), b.cod(bm.tm(f, g)))))
            .collect(),
        unit: fo(bm.unit, l.unit_obj),
        omega: l
            .omega
            .iter()
            .map(|(&(x, y, z), cells)| {
                let t = b.cod(bm.alpha(x, y, z));
                let tab = cells.iter().map(|(&(a, c, e), &k)| (key(&[&fo(x, a), &fo(y, c), &fo(z, e)]), fm(t, k))).collect();
                (key(&[b.obj_name(x), b.obj_name(y), b.obj_name(z)]), tab)
            })
            .collect(),
        zeta: l.zeta.iter().map(|(&x, cells)| (b.obj_name(x).into(), unary(cells, x))).collect(),
        xi: l.xi.iter().map(|(&x, cells)| (b.obj_name(x).into(), unary(cells, x))).collect(),
        braid: l.braid_cell.as_ref().map(|all| {
            all.iter().map(|(&(x, y), cells)| (key(&[b.obj_name(x), b.obj_name(y)]), pair_cells(cells, x, y, bm.tensor.ob_u(y, x)))).collect()
        }),
        symmetric: l.symmetric,
    }
}

fn fibration_doc(p: &ClovenFibration) -> FibrationDoc {
    let (t, b) = (&p.total, &p.base);
    FibrationDoc {
        total: category_doc(t),
        base: category_doc(b),
        projection: functor_doc(&p.proj),
        cleavage: p.cleavage.iter().map(|(&(f, e), &k)| (key(&[b.mor_name(f), t.obj_name(e)]), t.mor_name(k).into())).collect(),
        direction: p.direction,
        split: p.split,
    }
}

fn strength_name(s: Strength) -> &'static str {
    match s {
        Strength::Lax => "lax",
        Strength::Strong => "strong",
        Strength::Strict => "strict",
    }
}

fn fibrewise_doc(f: &FibrewiseMonoidal) -> FibrewiseDoc {
    let m = &f.carrier;
    let b = &m.base;
    FibrewiseDoc {
        carrier: indexed_doc(m),
        per_fibre: b.objects().filter_map(|x| Some((b.obj_name(x).into(), monoidal_doc(f.per_fibre[x].as_ref()?)))).collect(),
        reindex_monoidal: b
            .morphisms()
            .filter_map(|g| {
                let fd = f.reindex_monoidal[g].as_ref()?;
                let (s, t) = (&fd.underlying.source, &fd.underlying.target);
                Some((
                    b.mor_name(g).into(),
                    MonoidalFunctorDoc {
                        laxator: fd.laxator.iter().map(|(&(a, c), &k)| (key(&[s.obj_name(a), s.obj_name(c)]), t.mor_name(k).into())).collect(),
                        unit: t.mor_name(fd.unit_mor).into(),
                        strength: strength_name(fd.strength).into(),
                        braided: fd.braided,
                    },
                ))
            })
            .collect(),
    }
}

pub fn to_document(e: &Entity) -> Document {
    match e {
        Entity::Category(c) => Document::Category(category_doc(c)),
        Entity::Functor(f) => Document::Functor { source: category_doc(&f.source), target: category_doc(&f.target), map: functor_doc(f) },
        Entity::Monoidal(m) => Document::Monoidal { category: category_doc(&m.base), monoidal: monoidal_doc(m) },
        Entity::Indexed(m) => Document::Indexed(indexed_doc(m)),
        Entity::LaxMonoidal { lax, witness } => Document::LaxMonoidal { lax: lax_doc(lax), witness: witness.as_ref().map(witness_doc) },
        Entity::Fibrewise { fibrewise, witness } => Document::Fibrewise { fibrewise: fibrewise_doc(fibrewise), witness: witness.as_ref().map(witness_doc) },
        Entity::Fibration(p) => Document::Fibration(fibration_doc(p)),
        Entity::MonoidalFibration(m) => Document::MonoidalFibration {
            fibration: fibration_doc(&m.carrier),
            total_monoidal: monoidal_doc(&m.total_monoidal),
            base_monoidal: monoidal_doc(&m.base_monoidal),
        },
    }
}

// ---- loading ----

fn ob(c: &FinCat, field: &str, name: &str) -> Result<Ob> {
    c.obj(name).ok_or_else(|| Error::UnknownObject(format!("{field}: {name}")))
}

fn mo(c: &FinCat, field: &str, name: &str) -> Result<Mor> {
    c.mor(name).ok_or_else(|| Error::UnknownMorphism(format!("{field}: {name}")))
}

pub fn category_from(d: &CategoryDoc, field: &str) -> Result<Arc<FinCat>> {
    let oix: HashMap<&str, usize> = d.objects.iter().enumerate().map(|(i, s)| (s.as_str(), i)).collect();
    let names: Vec<&String> = d.morphisms.keys().collect();
    let mix: HashMap<&str, usize> = names.iter().enumerate().map(|(i, s)| (s.as_str(), i)).collect();
    let look_o = |s: &str| oix.get(s).copied().ok_or_else(|| Error::UnknownObject(format!("{field}: {s}")));
    let look_m = |s: &str| mix.get(s).copied().ok_or_else(|| Error::UnknownMorphism(format!("{field}: {s}")));
    let mors = d.morphisms.iter().map(|(n, [s, t])| Ok((n.clone(), look_o(s)?, look_o(t)?))).collect::<Result<Vec<_>>>()?;
    let ids = d.objects.iter().map(|x| look_m(d.identity.get(x).ok_or_else(|| Error::Parse(format!("{field}: no identity for {x}")))?)).collect::<Result<Vec<_>>>()?;
    let mut comp = HashMap::new();
    for (k, h) in &d.compose {
        let gf = unkey(&format!("{field}.compose"), k, 2)?;
        comp.insert((look_m(&gf[0])?, look_m(&gf[1])?), look_m(h)?);
    }
    Ok(Arc::new(FinCat::build(d.objects.clone(), mors, ids, |g, f| comp.get(&(g, f)).copied())?))
}

fn functor_from(d: &FunctorDoc, s: &Arc<FinCat>, t: &Arc<FinCat>, field: &str) -> Result<FinFunctor> {
    let obj_map = s
        .objects()
        .map(|x| ob(t, field, d.objects.get(s.obj_name(x)).ok_or_else(|| Error::Parse(format!("{field}: no image of {}", s.obj_name(x))))?))
        .collect::<Result<Vec<_>>>()?;
    let mor_map = s
        .morphisms()
        .map(|k| mo(t, field, d.morphisms.get(s.mor_name(k)).ok_or_else(|| Error::Parse(format!("{field}: no image of {}", s.mor_name(k))))?))
        .collect::<Result<Vec<_>>>()?;
    FinFunctor::new(s.clone(), t.clone(), obj_map, mor_map)
}

fn bifunctor_from(d: &FunctorDoc, l: &Arc<FinCat>, r: &Arc<FinCat>, t: &Arc<FinCat>, field: &str) -> Result<Bifunctor> {
    let mut objs = HashMap::new();
    for (k, v) in &d.objects {
        let p = unkey(field, k, 2)?;
        objs.insert((ob(l, field, &p[0])?, ob(r, field, &p[1])?), ob(t, field, v)?);
    }
    let mut mors = HashMap::new();
    for (k, v) in &d.morphisms {
        let p = unkey(field, k, 2)?;
        mors.insert((mo(l, field, &p[0])?, mo(r, field, &p[1])?), mo(t, field, v)?);
    }
    Ok(Bifunctor::build(l.clone(), r.clone(), t.clone(), |x, y| objs.get(&(x, y)).copied(), |f, g| mors.get(&(f, g)).copied()))
}

fn indexed_from(d: &IndexedDoc) -> Result<IndexedCat> {
    let base = category_from(&d.base, "base")?;
    let b = &*base;
    let fibres = b
        .objects()
        .map(|x| {
            let name = b.obj_name(x);
            category_from(d.fibres.get(name).ok_or_else(|| Error::Parse(format!("fibres: missing {name}")))?, &format!("fibres.{name}"))
        })
        .collect::<Result<Vec<_>>>()?;
    let src = |f: Mor| match d.variance {
        Variance::Covariant => (b.dom(f), b.cod(f)),
        Variance::Contravariant => (b.cod(f), b.dom(f)),
    };
    let reindex = b
        .morphisms()
        .map(|f| {
            let name = b.mor_name(f);
            let (x, y) = src(f);
            let field = format!("reindex.{name}");
            functor_from(d.reindex.get(name).ok_or_else(|| Error::Parse(format!("reindex: missing {name}")))?, &fibres[x], &fibres[y], &field)
        })
        .collect::<Result<Vec<_>>>()?;
    let comps = |tab: &Table, r: &FinFunctor, field: &str| -> Result<Vec<Mor>> {
        r.source
            .objects()
            .map(|a| mo(&r.target, field, tab.get(r.source.obj_name(a)).ok_or_else(|| Error::Parse(format!("{field}: missing {}", r.source.obj_name(a))))?))
            .collect()
    };
    let mut compositor = HashMap::new();
    for (k, tab) in &d.compositor {
        let field = format!("compositor.{k}");
        let gf = unkey(&field, k, 2)?;
        let (g, f) = (mo(b, &field, &gf[0])?, mo(b, &field, &gf[1])?);
        let h = b.try_compose(g, f).ok_or_else(|| Error::Parse(format!("{field}: not composable")))?;
        compositor.insert((g, f), comps(tab, &reindex[h], &field)?);
    }
    let unitor = b
        .objects()
        .map(|x| {
            let name = b.obj_name(x);
            let field = format!("unitor.{name}");
            comps(d.unitor.get(name).ok_or_else(|| Error::Parse(format!("unitor: missing {name}")))?, &reindex[b.id(x)], &field)
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(IndexedCat { base, variance: d.variance, fibres, reindex, compositor, unitor, strict: d.strict })
}

fn monoidal_from(d: &MonoidalDoc, c: &Arc<FinCat>, field: &str) -> Result<MonoidalData> {
    let tensor = bifunctor_from(&d.tensor, c, c, c, &format!("{field}.tensor"))?;
    let mut associator = HashMap::new();
    for (k, v) in &d.associator {
        let p = unkey(field, k, 3)?;
        associator.insert((ob(c, field, &p[0])?, ob(c, field, &p[1])?, ob(c, field, &p[2])?), mo(c, field, v)?);
    }
    let unary = |t: &Table| t.iter().map(|(k, v)| Ok((ob(c, field, k)?, mo(c, field, v)?))).collect::<Result<HashMap<_, _>>>();
    let braiding = match &d.braiding {
        None => None,
        Some(t) => {
            let mut br = HashMap::new();
            for (k, v) in t {
                let p = unkey(field, k, 2)?;
                br.insert((ob(c, field, &p[0])?, ob(c, field, &p[1])?), mo(c, field, v)?);
            }
            Some(br)
        }
    };
    Ok(MonoidalData {
        base: c.clone(),
        tensor,
        unit: ob(c, field, &d.unit)?,
        associator,
        left_unitor: unary(&d.left_unitor)?,
        right_unitor: unary(&d.right_unitor)?,
        braiding,
        symmetric: d.symmetric,
    })
}

fn witness_from(d: &WitnessDoc, c: &Arc<FinCat>) -> Result<CocartesianWitness> {
    let field = "witness";
    let mut coproducts = HashMap::new();
    for (k, [s, i1, i2]) in &d.coproducts {
        let p = unkey(field, k, 2)?;
        coproducts.insert((ob(c, field, &p[0])?, ob(c, field, &p[1])?), (ob(c, field, s)?, mo(c, field, i1)?, mo(c, field, i2)?));
    }
    let bang = c
        .objects()
        .map(|x| mo(c, field, d.bang.get(c.obj_name(x)).ok_or_else(|| Error::Parse(format!("witness: no bang for {}", c.obj_name(x))))?))
        .collect::<Result<Vec<_>>>()?;
    Ok(CocartesianWitness { base: c.clone(), coproducts, initial: ob(c, field, &d.initial)?, bang })
}

fn lax_from(d: &LaxDoc) -> Result<LaxMonoidalIndexed> {
    let carrier = indexed_from(&d.carrier)?;
    let b = carrier.base.clone();
    let bm = monoidal_from(&d.base_monoidal, &b, "base_monoidal")?;
    let fib = |x: Ob| carrier.fibres[x].clone();
    let mut laxator = HashMap::new();
    for (k, t) in &d.laxator {
        let field = format!("laxator.{k}");
        let p = unkey(&field, k, 2)?;
        let (x, y) = (ob(&b, &field, &p[0])?, ob(&b, &field, &p[1])?);
        let xy = bm.t(x, y).ok_or_else(|| Error::Parse(format!("{field}: no base tensor")))?;
        laxator.insert((x, y), bifunctor_from(t, &fib(x), &fib(y), &fib(xy), &field)?);
    }
    let pair = |t: &Table, x: Ob, y: Ob, z: Ob, field: &str| -> Result<HashMap<(Ob, Ob), Mor>> {
        let mut out = HashMap::new();
        for (k, v) in t {
            let p = unkey(field, k, 2)?;
            out.insert((ob(&fib(x), field, &p[0])?, ob(&fib(y), field, &p[1])?), mo(&fib(z), field, v)?);
        }
        Ok(out)
    };
    let mut laxator_cells = HashMap::new();
    for (k, t) in &d.laxator_cells {
        let field = format!("laxator_cells.{k}");
        let p = unkey(&field, k, 2)?;
        let (f, g) = (mo(&b, &field, &p[0])?, mo(&b, &field, &p[1])?);
        let fg = bm.tensor.mor(f, g).ok_or_else(|| Error::Parse(format!("{field}: no base tensor")))?;
        laxator_cells.insert((f, g), pair(t, b.dom(f), b.dom(g), b.cod(fg), &field)?);
    }
    let mut omega = HashMap::new();
    for (k, t) in &d.omega {
        let field = format!("omega.{k}");
        let p = unkey(&field, k, 3)?;
        let (x, y, z) = (ob(&b, &field, &p[0])?, ob(&b, &field, &p[1])?, ob(&b, &field, &p[2])?);
        let a = *bm.associator.get(&(x, y, z)).ok_or_else(|| Error::Parse(format!("{field}: no associator")))?;
        let tgt = b.cod(a);
        let mut cells = HashMap::new();
        for (kk, v) in t {
            let q = unkey(&field, kk, 3)?;
            cells.insert((ob(&fib(x), &field, &q[0])?, ob(&fib(y), &field, &q[1])?, ob(&fib(z), &field, &q[2])?), mo(&fib(tgt), &field, v)?);
        }
        omega.insert((x, y, z), cells);
    }
    let unary = |cells: &Cells, name: &str| -> Result<HashMap<Ob, HashMap<Ob, Mor>>> {
        let mut out = HashMap::new();
        for (k, t) in cells {
            let field = format!("{name}.{k}");
            let x = ob(&b, &field, k)?;
            let tab = t.iter().map(|(a, v)| Ok((ob(&fib(x), &field, a)?, mo(&fib(x), &field, v)?))).collect::<Result<HashMap<_, _>>>()?;
            out.insert(x, tab);
        }
        Ok(out)
    };
    let braid_cell = match &d.braid {
        None => None,
        Some(all) => {
            let mut out = HashMap::new();
            for (k, t) in all {
                let field = format!("braid.{k}");
                let p = unkey(&field, k, 2)?;
                let (x, y) = (ob(&b, &field, &p[0])?, ob(&b, &field, &p[1])?);
                let yx = bm.t(y, x).ok_or_else(|| Error::Parse(format!("{field}: no base tensor")))?;
                out.insert((x, y), pair(t, x, y, yx, &field)?);
            }
            Some(out)
        }
    };
    let unit_obj = ob(&fib(bm.unit), "unit", &d.unit)?;
    let zeta = unary(&d.zeta, "zeta")?;
    let xi = unary(&d.xi, "xi")?;
    Ok(LaxMonoidalIndexed { carrier, base_monoidal: bm, laxator, laxator_cells, unit_obj, omega, zeta, xi, braid_cell, symmetric: d.symmetric })
}

fn fibration_from(d: &FibrationDoc) -> Result<ClovenFibration> {
    let total = category_from(&d.total, "total")?;
    let base = category_from(&d.base, "base")?;
    let proj = functor_from(&d.projection, &total, &base, "projection")?;
    let mut cleavage = HashMap::new();
    for (k, v) in &d.cleavage {
        let p = unkey("cleavage", k, 2)?;
        cleavage.insert((mo(&base, "cleavage", &p[0])?, ob(&total, "cleavage", &p[1])?), mo(&total, "cleavage", v)?);
    }
    Ok(ClovenFibration { total, base, proj, cleavage, direction: d.direction, split: d.split })
}

fn fibrewise_from(d: &FibrewiseDoc) -> Result<FibrewiseMonoidal> {
    let carrier = indexed_from(&d.carrier)?;
    let b = carrier.base.clone();
    let mut per_fibre = vec![None; b.n_objs()];
    for (k, md) in &d.per_fibre {
        let x = ob(&b, "per_fibre", k)?;
        per_fibre[x] = Some(monoidal_from(md, &carrier.fibres[x], &format!("per_fibre.{k}"))?);
    }
    let mut reindex_monoidal = vec![None; b.n_mors()];
    for (k, fd) in &d.reindex_monoidal {
        let field = format!("reindex_monoidal.{k}");
        let g = mo(&b, &field, k)?;
        let underlying = carrier.reindex[g].clone();
        let (s, t) = (underlying.source.clone(), underlying.target.clone());
        let mut laxator = HashMap::new();
        for (kk, v) in &fd.laxator {
            let p = unkey(&field, kk, 2)?;
            laxator.insert((ob(&s, &field, &p[0])?, ob(&s, &field, &p[1])?), mo(&t, &field, v)?);
        }
        let strength = match fd.strength.as_str() {
            "lax" => Strength::Lax,
            "strong" => Strength::Strong,
            "strict" => Strength::Strict,
            other => return Err(Error::Parse(format!("{field}: unknown strength {other}"))),
        };
        reindex_monoidal[g] = Some(MonoidalFunctorData { underlying, laxator, unit_mor: mo(&t, &field, &fd.unit)?, strength, braided: fd.braided });
    }
    Ok(FibrewiseMonoidal { carrier, per_fibre, reindex_monoidal })
}

pub fn from_document(doc: &Document) -> Result<Entity> {
    Ok(match doc {
        Document::Category(category) => Entity::Category(category_from(category, "category")?),
        Document::Functor { source, target, map } => {
            let (s, t) = (category_from(source, "source")?, category_from(target, "target")?);
            Entity::Functor(functor_from(map, &s, &t, "map")?)
        }
        Document::Monoidal { category, monoidal } => {
            let c = category_from(category, "category")?;
            Entity::Monoidal(monoidal_from(monoidal, &c, "monoidal")?)
        }
        Document::Indexed(indexed) => Entity::Indexed(indexed_from(indexed)?),
        Document::LaxMonoidal { lax, witness } => {
            let l = lax_from(lax)?;
            let w = witness.as_ref().map(|w| witness_from(w, &l.carrier.base)).transpose()?;
            Entity::LaxMonoidal { lax: l, witness: w }
        }
        Document::Fibrewise { fibrewise, witness } => {
            let f = fibrewise_from(fibrewise)?;
            let w = witness.as_ref().map(|w| witness_from(w, &f.carrier.base)).transpose()?;
            Entity::Fibrewise { fibrewise: f, witness: w }
        }
        Document::Fibration(fibration) => Entity::Fibration(fibration_from(fibration)?),
        Document::MonoidalFibration { fibration, total_monoidal, base_monoidal } => {
            let p = fibration_from(fibration)?;
            let tm = monoidal_from(total_monoidal, &p.total, "total_monoidal")?;
            let bm = monoidal_from(base_monoidal, &p.base, "base_monoidal")?;
            Entity::MonoidalFibration(MonoidalFibrationData { carrier: p, total_monoidal: tm, base_monoidal: bm })
        }
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corr::global_to_fibrewise;
    use crate::gen::{downset_laxator, lattice_of, rng, twist_lax};
    use crate::groth::monoidal_grothendieck;

    fn round_trip(e: &Entity) {
        let s = dump(e);
        let back = load(&s).unwrap();
        assert_eq!(&back, e);
        assert_eq!(dump(&back), s);
    }

    #[test]
    fn entities_round_trip() {
        let (base, w) = lattice_of(&[0, 1, 2, 3], 2);
        round_trip(&Entity::Category(base.clone()));
        let l = twist_lax(&downset_laxator(&base, &w).unwrap(), &mut rng(3));
        round_trip(&Entity::Indexed(l.carrier.clone()));
        round_trip(&Entity::Monoidal(l.base_monoidal.clone()));
        round_trip(&Entity::LaxMonoidal { lax: l.clone(), witness: Some(w.clone()) });
        let f = global_to_fibrewise(&l, &w).unwrap();
        round_trip(&Entity::Fibrewise { fibrewise: f, witness: Some(w.clone()) });
        let g = monoidal_grothendieck(&l).unwrap();
        round_trip(&Entity::Fibration(g.groth.fibration.clone()));
        round_trip(&Entity::MonoidalFibration(g.fibration_data()));
        round_trip(&Entity::Functor(g.groth.fibration.proj.clone()));
    }

    #[test]
    fn parse_errors_name_their_position() {
        let Err(Error::Parse(msg)) = load("{\"category\": {\"objects\": [}}") else { panic!() };
        assert!(msg.starts_with("line 1"));
        let Err(Error::Parse(msg)) = load("{\"category\": {\n\"objects\": 3}}") else { panic!() };
        assert!(msg.starts_with("line 2") && msg.contains("category.objects"), "{msg}");
        let doc = r#"{"category": {"objects": ["a"], "morphisms": {}, "identity": {"a": "x"}, "compose": {}}}"#;
        assert!(matches!(load(doc), Err(Error::UnknownMorphism(_))));
    }
}
