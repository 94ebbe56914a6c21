//! Acceptance run: one PASS/FAIL line per criterion. Counts, tolerances and
//! runtime budgets are pinned below.

use fibcat::corr::{
    check_cocartesian_total, global_to_fibrewise, is_ordinary, roundtrip_fibrewise, roundtrip_global, unique_criterion, CocartTotalCriterion,
};
use fibcat::fib::{check_monoidal_fibration, MonoidalFibrationData};
use fibcat::fincat::{check_category, split_tuple, tuple_name, FinCat, Mor};
use fibcat::format::{dump, from_document, load, to_document, CategoryDoc, Document, Entity, FunctorDoc};
use fibcat::gen::{
    constant_laxator, cyclic_monoid, delooping, downset_laxator, lattice_of, random_category, random_cocartesian_lax, random_lattice,
    random_strict_indexed, rng, twist,
};
use fibcat::groth::{fibration_to_indexed, grothendieck, monoidal_grothendieck, roundtrip_fibration, roundtrip_indexed, MonoidalGrothResult};
use fibcat::indexed::{check_lax_monoidal, IndexedCat, LaxMonoidalIndexed};
use fibcat::moncat::{check_monoidal, find_cocartesian, CocartesianWitness, SearchLimits};
use fibcat::zoo::dds::{dds_apply, dds_parallel, equivalence_length, feedback_toggle, random_box, random_machine, random_wiring};
use fibcat::zoo::decorator::{check_network_model, decorator_indexed};
use fibcat::zoo::{
    dds_total_category, decorator_to_network_model, family_fibration, graph_opindexed, slice_opindexed,
    vertex_opfibration, DdsBounds, Decorator, FinSetSkeleton, Fixture, MooreMachine, WiringDiagram,
};
use fibcat::{LawReport, Result};
use std::sync::Arc;
use std::time::{Duration, Instant};

const STRICT_INSTANCES: usize = 200;
const PSEUDO_INSTANCES: usize = 100;
const LAX_INSTANCES: usize = 100;
const MIN_MUTATIONS: usize = 20;
const TRANSFER_INSTANCES: usize = 50;
const ORDINARY_INSTANCES: usize = 30;
const DDS_INSTANCES: usize = 200;
const GRAPH_TOTAL_OBJECTS: usize = 19;
const GRAPH_ONE_VERTEX_ELEMENTS: usize = 2;
const SPLIT_BUDGET: Duration = Duration::from_secs(60);
const PSEUDO_BUDGET: Duration = Duration::from_secs(120);
const TRANSFER_BUDGET: Duration = Duration::from_secs(120);
const DDS_BUDGET: Duration = Duration::from_secs(120);

struct Corpus {
    entities: Vec<Entity>,
    counted: usize,
    miscounted: Vec<String>,
}

impl Corpus {
    fn count(&mut self, m: &IndexedCat, total: &FinCat, label: &str) {
        self.counted += 1;
        if total.n_objs() != m.total_objects() {
            self.miscounted.push(format!("{label}: {} != {}", total.n_objs(), m.total_objects()));
        }
    }
}

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: impl Into<String>) -> Outcome {
    Outcome { pass, detail: detail.into() }
}

fn passes(r: Result<LawReport>) -> bool {
    matches!(r, Ok(rep) if rep.is_pass())
}

fn detected(r: Result<LawReport>) -> bool {
    !passes(r)
}

fn last(s: &str) -> String {
    split_tuple(s).and_then(|p| p.last().cloned()).unwrap_or_else(|| s.to_string())
}

fn strip_category(d: &CategoryDoc) -> CategoryDoc {
    let mut objects: Vec<String> = d.objects.iter().map(|s| last(s)).collect();
    objects.sort();
    CategoryDoc {
        objects,
        morphisms: d.morphisms.iter().map(|(k, [a, b])| (last(k), [last(a), last(b)])).collect(),
        identity: d.identity.iter().map(|(k, v)| (last(k), last(v))).collect(),
        compose: d
            .compose
            .iter()
            .map(|(k, v)| {
                let p = split_tuple(k).expect("pair key");
                (tuple_name(&[&last(&p[0]), &last(&p[1])]), last(v))
            })
            .collect(),
    }
}

fn strip_functor(d: &FunctorDoc) -> FunctorDoc {
    FunctorDoc {
        objects: d.objects.iter().map(|(k, v)| (last(k), last(v))).collect(),
        morphisms: d.morphisms.iter().map(|(k, v)| (last(k), last(v))).collect(),
    }
}

/// Renames the fibres recovered from a total category back along
/// `(x|a) ↦ a` and `(1_x|a|k) ↦ k`.
fn recovered(m: &IndexedCat) -> IndexedCat {
    let Document::Indexed(mut d) = to_document(&Entity::Indexed(m.clone())) else { unreachable!() };
    d.fibres = d.fibres.iter().map(|(k, c)| (k.clone(), strip_category(c))).collect();
    d.reindex = d.reindex.iter().map(|(k, f)| (k.clone(), strip_functor(f))).collect();
    let cells = |t: &std::collections::BTreeMap<String, std::collections::BTreeMap<String, String>>| {
        t.iter().map(|(k, inner)| (k.clone(), inner.iter().map(|(a, v)| (last(a), last(v))).collect())).collect()
    };
    d.compositor = cells(&d.compositor);
    d.unitor = cells(&d.unitor);
    match from_document(&Document::Indexed(d)).expect("recovered tables load") {
        Entity::Indexed(m) => m,
        _ => unreachable!(),
    }
}

fn split_round_trips(corpus: &mut Corpus) -> Outcome {
    let mut r = rng(101);
    let (mut indexed_ok, mut fibration_ok) = (0, 0);
    for i in 0..STRICT_INSTANCES {
        let base = Arc::new(random_category(&mut r, 4, 2, 30));
        let m = random_strict_indexed(&mut r, base, 3);
        let Ok(g) = grothendieck(&m) else { continue };
        corpus.count(&m, &g.total, "strict");
        let back = fibration_to_indexed(&g.fibration).map(|b| recovered(&b));
        if back.as_ref() == Ok(&m) {
            indexed_ok += 1;
        }
        let p = &g.fibration;
        let again = fibration_to_indexed(p).and_then(|b| grothendieck(&recovered(&b)));
        if matches!(&again, Ok(h) if h.fibration == *p) && passes(roundtrip_fibration(p)) {
            fibration_ok += 1;
        }
        if i % 20 == 0 {
            corpus.entities.push(Entity::Indexed(m.clone()));
            corpus.entities.push(Entity::Fibration(p.clone()));
        }
    }
    outcome(
        indexed_ok == STRICT_INSTANCES && fibration_ok == STRICT_INSTANCES,
        format!("{indexed_ok}/{STRICT_INSTANCES} indexed tables equal, {fibration_ok}/{STRICT_INSTANCES} split fibrations equal"),
    )
}

fn pseudo_round_trips(corpus: &mut Corpus) -> Outcome {
    let mut r = rng(202);
    let mut ok = 0;
    let mut non_strict = 0;
    for i in 0..PSEUDO_INSTANCES {
        let base = Arc::new(random_category(&mut r, 4, 2, 30));
        let m = twist(&random_strict_indexed(&mut r, base, 3), &mut r);
        if !m.strict {
            non_strict += 1;
        }
        if let Ok(g) = grothendieck(&m) {
            corpus.count(&m, &g.total, "pseudo");
        }
        if passes(roundtrip_indexed(&m)) {
            ok += 1;
        }
        if i % 20 == 0 {
            corpus.entities.push(Entity::Indexed(m));
        }
    }
    outcome(ok == PSEUDO_INSTANCES && non_strict > 0, format!("{ok}/{PSEUDO_INSTANCES} pass, {non_strict} with non-identity compositors"))
}

fn monoidal_total_sound(g: &MonoidalGrothResult) -> bool {
    passes(check_monoidal(&g.monoidal)) && passes(check_monoidal_fibration(&g.fibration_data()))
}

fn zoo_fixtures() -> Vec<Fixture> {
    let (arrow, wa) = lattice_of(&[0, 1], 1);
    let (square, ws) = lattice_of(&[0, 1, 2, 3], 2);
    let finset = FinSetSkeleton::new(2).unwrap();
    vec![
        graph_opindexed(2).unwrap(),
        slice_opindexed(arrow, &wa, "arrow").unwrap(),
        slice_opindexed(square, &ws, "square").unwrap(),
        slice_opindexed(finset.cat.clone(), &finset.coproducts(), "finset-2").unwrap(),
        family_fibration(&cyclic_monoid(2), 3).unwrap(),
        family_fibration(&delooping(2), 3).unwrap(),
        decorator_indexed(&Decorator::simple_graphs(), 3).unwrap(),
        decorator_indexed(&Decorator::vertex_marks(), 3).unwrap(),
    ]
}

fn other_parallel(c: &FinCat, f: Mor) -> Mor {
    c.hom(c.dom(f), c.cod(f)).iter().copied().find(|&g| g != f).unwrap_or_else(|| c.morphisms().find(|&g| g != f).expect("another morphism"))
}

type CellPick = dyn Fn(&mut LaxMonoidalIndexed) -> Option<(&mut Mor, Arc<FinCat>)>;

fn lax_mutations(l: &LaxMonoidalIndexed) -> Vec<(&'static str, LaxMonoidalIndexed)> {
    let m = &l.carrier;
    let b = &*m.base;
    let mut out = Vec::new();
    let x0 = b.objects().next().unwrap();
    let fib0 = &m.fibres[x0];

    let (&key, bi) = l.laxator.iter().min_by_key(|(k, _)| **k).unwrap();
    let (f, g) = (bi.left.morphisms().last().unwrap(), bi.right.morphisms().last().unwrap());
    let h = bi.mor_u(f, g);
    let mut v = l.clone();
    v.laxator.insert(key, bi.with_mor_entry(f, g, other_parallel(&bi.target, h)));
    out.push(("laxator morphism entry", v));

    let mut edit_pair = |name: &'static str, pick: &CellPick| {
        let mut v = l.clone();
        if let Some((slot, fibre)) = pick(&mut v) {
            *slot = other_parallel(&fibre, *slot);
            out.push((name, v));
        }
    };
    edit_pair("laxator naturality cell", &|v| {
        let (&(f, g), cell) = v.laxator_cells.iter_mut().filter(|(_, c)| !c.is_empty()).min_by_key(|(k, _)| **k)?;
        let t = v.base_monoidal.tensor.mor(f, g)?;
        let fibre = v.carrier.fibres[v.carrier.base.cod(t)].clone();
        Some((cell.values_mut().next()?, fibre))
    });
    edit_pair("associator cell", &|v| {
        let (&(x, y, z), cell) = v.omega.iter_mut().filter(|(_, c)| !c.is_empty()).min_by_key(|(k, _)| **k)?;
        let fibre = v.carrier.fibres[v.carrier.base.cod(v.base_monoidal.alpha(x, y, z))].clone();
        Some((cell.values_mut().next()?, fibre))
    });
    edit_pair("right unit cell", &|v| {
        let (&x, cell) = v.zeta.iter_mut().filter(|(_, c)| !c.is_empty()).min_by_key(|(k, _)| **k)?;
        Some((cell.values_mut().next()?, v.carrier.fibres[x].clone()))
    });
    edit_pair("left unit cell", &|v| {
        let (&x, cell) = v.xi.iter_mut().filter(|(_, c)| !c.is_empty()).min_by_key(|(k, _)| **k)?;
        Some((cell.values_mut().next()?, v.carrier.fibres[x].clone()))
    });
    edit_pair("braid cell", &|v| {
        let bm = v.base_monoidal.clone();
        let (&(x, y), cell) = v.braid_cell.as_mut()?.iter_mut().filter(|(_, c)| !c.is_empty()).min_by_key(|(k, _)| **k)?;
        let fibre = v.carrier.fibres[bm.t(y, x)?].clone();
        Some((cell.values_mut().next()?, fibre))
    });
    edit_pair("compositor component", &|v| {
        let (&(g, f), comps) = v.carrier.compositor.iter_mut().filter(|(_, c)| !c.is_empty()).min_by_key(|(k, _)| **k)?;
        let fibre = v.carrier.reindex[v.carrier.base.compose(g, f)].target.clone();
        Some((comps.first_mut()?, fibre))
    });
    edit_pair("unitor component", &|v| {
        let fibre = v.carrier.fibres[0].clone();
        Some((v.carrier.unitor[0].first_mut()?, fibre))
    });

    let f = b.morphisms().find(|&f| !b.is_identity(f)).unwrap();
    let r = &m.reindex[f];
    let k = r.source.morphisms().last().unwrap();
    let mut v = l.clone();
    v.carrier.reindex[f] = r.with_mor_entry(k, other_parallel(&r.target, r.mor(k)));
    out.push(("reindexing morphism entry", v));

    if let Some(k) = fib0.morphisms().find(|&k| !fib0.is_identity(k)) {
        let id = fib0.id(fib0.dom(k));
        let mut v = l.clone();
        v.carrier.fibres[x0] = Arc::new(fib0.with_compose_entry(k, id, id));
        out.push(("fibre composition entry", v));
    }

    let mut v = l.clone();
    let first = *v.omega.keys().min().unwrap();
    v.omega.remove(&first);
    out.push(("associator cell removed", v));

    let bm = &l.base_monoidal;
    let (&(x, y, z), &a) = bm.associator.iter().min_by_key(|(k, _)| **k).unwrap();
    let mut v = l.clone();
    v.base_monoidal.associator.insert((x, y, z), other_parallel(&bm.base, a));
    out.push(("base associator", v));
    out
}

fn total_mutations(d: &MonoidalFibrationData) -> Vec<(&'static str, MonoidalFibrationData)> {
    let mut out = Vec::new();
    let tm = &d.total_monoidal;
    let t = &*tm.base;

    let (f, g) = tm.tensor.defined_pairs().into_iter().find_map(|(x, y)| {
        let f = t.out_of(x).iter().copied().find(|&f| !t.is_identity(f))?;
        let g = t.out_of(y).iter().copied().next()?;
        tm.tensor.mor(f, g).map(|_| (f, g))
    }).unwrap();
    let mut v = d.clone();
    v.total_monoidal.tensor = tm.tensor.with_mor_entry(f, g, other_parallel(t, tm.tensor.mor_u(f, g)));
    out.push(("total tensor morphism entry", v));

    let mut edit = |name: &'static str, pick: &dyn Fn(&mut MonoidalFibrationData) -> Option<&mut Mor>| {
        let mut v = d.clone();
        let total = v.carrier.total.clone();
        if let Some(slot) = pick(&mut v) {
            *slot = other_parallel(&total, *slot);
            out.push((name, v));
        }
    };
    edit("total associator", &|v| v.total_monoidal.associator.iter_mut().min_by_key(|(k, _)| **k).map(|(_, m)| m));
    edit("total left unitor", &|v| v.total_monoidal.left_unitor.iter_mut().min_by_key(|(k, _)| **k).map(|(_, m)| m));
    edit("total right unitor", &|v| v.total_monoidal.right_unitor.iter_mut().min_by_key(|(k, _)| **k).map(|(_, m)| m));
    edit("total braiding", &|v| v.total_monoidal.braiding.as_mut()?.iter_mut().min_by_key(|(k, _)| **k).map(|(_, m)| m));
    edit("cleavage lift", &|v| v.carrier.cleavage.iter_mut().max_by_key(|(k, _)| **k).map(|(_, m)| m));

    let p = &d.carrier;
    let k = p.total.morphisms().find(|&k| !p.base.is_identity(p.proj.mor(k))).unwrap();
    let mut v = d.clone();
    v.carrier.proj = p.proj.with_mor_entry(k, other_parallel(&p.base, p.proj.mor(k)));
    out.push(("projection morphism entry", v));

    let (gk, fk) = t.morphisms().flat_map(|f| t.out_of(t.cod(f)).iter().map(move |&g| (g, f))).find(|&(g, f)| !t.is_identity(g) && !t.is_identity(f)).unwrap();
    let wrong = other_parallel(t, t.compose(gk, fk));
    let mut v = d.clone();
    let broken = Arc::new(t.with_compose_entry(gk, fk, wrong));
    v.carrier.total = broken.clone();
    v.total_monoidal.base = broken;
    out.push(("total composition entry", v));

    let mut v = d.clone();
    v.total_monoidal.unit = t.objects().find(|&x| x != tm.unit).unwrap();
    out.push(("total unit object", v));
    out
}

fn monoidal_soundness(corpus: &mut Corpus) -> Outcome {
    let mut r = rng(303);
    let (mut generated, mut sound) = (0, 0);
    let mut attempts = 0;
    while generated < LAX_INSTANCES && attempts < 4 * LAX_INSTANCES {
        attempts += 1;
        let (l, w) = random_cocartesian_lax(&mut r, attempts % 2 == 0);
        if !passes(check_lax_monoidal(&l)) {
            continue;
        }
        generated += 1;
        let Ok(g) = monoidal_grothendieck(&l) else { continue };
        corpus.count(&l.carrier, &g.groth.total, "lax");
        if monoidal_total_sound(&g) {
            sound += 1;
        }
        if generated % 25 == 0 {
            corpus.entities.push(Entity::MonoidalFibration(g.fibration_data()));
            corpus.entities.push(Entity::LaxMonoidal { lax: l, witness: Some(w) });
        }
    }
    let mut zoo_failures = Vec::new();
    let fixtures = zoo_fixtures();
    for f in &fixtures {
        match monoidal_grothendieck(&f.lax) {
            Ok(g) => {
                corpus.count(&f.lax.carrier, &g.groth.total, &f.name);
                if !monoidal_total_sound(&g) {
                    zoo_failures.push(f.name.clone());
                }
                corpus.entities.push(Entity::MonoidalFibration(g.fibration_data()));
            }
            Err(_) => zoo_failures.push(f.name.clone()),
        }
        corpus.entities.push(Entity::LaxMonoidal { lax: f.lax.clone(), witness: f.witness.clone() });
    }
    match dds_total_category(&DdsBounds::default()) {
        Ok((u, g)) => {
            corpus.count(&u.fixture.lax.carrier, &g.groth.total, "dds");
            if !monoidal_total_sound(&g) {
                zoo_failures.push("dds".into());
            }
        }
        Err(_) => zoo_failures.push("dds".into()),
    }

    let (arrow, wa) = lattice_of(&[0, 1], 1);
    let (square, ws) = lattice_of(&[0, 1, 2, 3], 2);
    let mut mutants = Vec::new();
    for (base, w) in [(arrow, wa), (square, ws)] {
        let l = constant_laxator(&base, &w, &delooping(2)).unwrap();
        for (name, v) in lax_mutations(&l) {
            let caught = detected(check_lax_monoidal(&v)) || monoidal_grothendieck(&v).map(|g| !monoidal_total_sound(&g)).unwrap_or(true);
            mutants.push((name, caught));
        }
        let d = monoidal_grothendieck(&l).unwrap().fibration_data();
        for (name, v) in total_mutations(&d) {
            let caught = detected(check_monoidal_fibration(&v)) || detected(check_monoidal(&v.total_monoidal)) || detected(check_category(&v.carrier.total));
            mutants.push((name, caught));
        }
    }
    let missed: Vec<&str> = mutants.iter().filter(|m| !m.1).map(|m| m.0).collect();
    let pass = generated >= LAX_INSTANCES && sound == generated && zoo_failures.is_empty() && mutants.len() >= MIN_MUTATIONS && missed.is_empty();
    outcome(
        pass,
        format!(
            "{sound}/{generated} generated sound, {}/{} zoo fixtures sound{}, {}/{} mutations detected{}",
            fixtures.len() + 1 - zoo_failures.len(),
            fixtures.len() + 1,
            if zoo_failures.is_empty() { String::new() } else { format!(" (failing: {})", zoo_failures.join(", ")) },
            mutants.len() - missed.len(),
            mutants.len(),
            if missed.is_empty() { String::new() } else { format!(" (missed: {})", missed.join(", ")) }
        ),
    )
}

fn both_directions(l: &LaxMonoidalIndexed, w: &CocartesianWitness) -> bool {
    passes(roundtrip_global(l, w)) && global_to_fibrewise(l, w).map(|f| passes(roundtrip_fibrewise(&f, w))).unwrap_or(false)
}

fn transfer(corpus: &mut Corpus) -> Outcome {
    let mut named = Vec::new();
    let g = graph_opindexed(2).unwrap();
    named.push(("graphs-2", g.lax.clone(), g.witness.clone().unwrap()));
    for (sets, bits, name) in [(vec![0, 1], 1, "arrow"), (vec![0, 1, 2, 3], 2, "square")] {
        let (b, w) = lattice_of(&sets, bits);
        let s = slice_opindexed(b, &w, name).unwrap();
        named.push((name, s.lax, w));
    }
    let failed: Vec<&str> = named.iter().filter(|(_, l, w)| !both_directions(l, w)).map(|(n, _, _)| *n).collect();
    let mut r = rng(404);
    let mut ok = 0;
    for i in 0..TRANSFER_INSTANCES {
        let (l, w) = random_cocartesian_lax(&mut r, i % 2 == 1);
        if both_directions(&l, &w) {
            ok += 1;
        }
        if i % 10 == 0 {
            if let Ok(f) = global_to_fibrewise(&l, &w) {
                corpus.entities.push(Entity::Fibrewise { fibrewise: f, witness: Some(w) });
            }
        }
    }
    outcome(
        failed.is_empty() && ok == TRANSFER_INSTANCES,
        format!("{}/3 fixtures, {ok}/{TRANSFER_INSTANCES} generated pass both directions", 3 - failed.len()),
    )
}

fn strictness() -> Outcome {
    let mut r = rng(505);
    let (mut ordinary, mut strict_fibres, mut fibres) = (0, 0, 0);
    let mut attempts = 0;
    while ordinary < ORDINARY_INSTANCES && attempts < 10 * ORDINARY_INSTANCES {
        attempts += 1;
        let (base, w) = random_lattice(&mut r, 2, 4);
        let l = if attempts % 2 == 0 { downset_laxator(&base, &w) } else { constant_laxator(&base, &w, &cyclic_monoid(2)) };
        let Ok(l) = l else { continue };
        if !is_ordinary(&l) {
            continue;
        }
        ordinary += 1;
        let Ok(f) = global_to_fibrewise(&l, &w) else { continue };
        for m in f.per_fibre.iter().flatten() {
            fibres += 1;
            let c = &*m.base;
            if m.associator.values().chain(m.left_unitor.values()).chain(m.right_unitor.values()).all(|&k| c.is_identity(k)) {
                strict_fibres += 1;
            }
        }
    }
    outcome(ordinary >= ORDINARY_INSTANCES && fibres > 0 && strict_fibres == fibres, format!("{ordinary} ordinary instances, {strict_fibres}/{fibres} fibre structures strict"))
}

fn certified_coproducts(g: &MonoidalGrothResult) -> (usize, usize) {
    let t = &g.groth.total;
    let found = find_cocartesian(t, SearchLimits { max_objects: 64 });
    let Ok(found) = found else { return (0, 1) };
    let pairs = g.monoidal.tensor.defined_pairs();
    let ok = pairs
        .iter()
        .filter(|&&(a, b)| {
            let s = g.monoidal.tensor.ob_u(a, b);
            found.coproducts.get(&(a, b)).is_some_and(|&(c, _, _)| t.hom(c, s).iter().any(|&k| t.is_iso(k)))
        })
        .count();
    (ok, pairs.len())
}

fn kappa_lambda() -> Outcome {
    let mut lines = Vec::new();
    let mut pass = true;
    let (g2, rep) = vertex_opfibration(2).unwrap();
    let (ok, n) = certified_coproducts(&g2);
    pass &= rep.is_pass() && ok == n;
    lines.push(format!("vertex opfibration {ok}/{n} tensors are coproducts"));
    let mut knock_out = |name: &str, l: &LaxMonoidalIndexed, w: &CocartesianWitness| -> Option<bool> {
        let crit = unique_criterion(l, w).ok()?;
        let holds = passes(check_cocartesian_total(l, &crit, w));
        let g = monoidal_grothendieck(l).ok()?;
        let (ok, n) = certified_coproducts(&g);
        let cut = CocartTotalCriterion { kappa: Default::default(), lambda: crit.lambda.clone() };
        let without = passes(check_cocartesian_total(l, &cut, w));
        lines.push(format!("{name} {ok}/{n}{}", if without { "" } else { " and fails without kappa" }));
        Some(holds && ok == n && !without)
    };
    let gf = graph_opindexed(2).unwrap();
    pass &= knock_out("graphs-2", &gf.lax, gf.witness.as_ref().unwrap()) == Some(true);
    for (sets, bits, name) in [(vec![0, 1], 1, "arrow"), (vec![0, 1, 2, 3], 2, "square")] {
        let (b, w) = lattice_of(&sets, bits);
        let s = slice_opindexed(b, &w, name).unwrap();
        pass &= knock_out(name, &s.lax, &w) == Some(true);
    }
    outcome(pass, lines.join(", "))
}

fn network_models() -> Outcome {
    let graphs = decorator_to_network_model(&Decorator::simple_graphs(), 3);
    let marks = decorator_to_network_model(&Decorator::vertex_marks(), 3);
    let (Ok(g), Ok(m)) = (graphs, marks) else { return outcome(false, "a decorator failed to map") };
    let laws = check_network_model(&g).is_pass() && check_network_model(&m).is_pass();
    let commutative = g.monoids.iter().all(|mo| mo.is_commutative());
    let one = g.monoids[1].elements.len();
    let distinct = g.monoids != m.monoids;
    outcome(
        laws && commutative && one == GRAPH_ONE_VERTEX_ELEMENTS && distinct,
        format!("monoid laws {laws}, commutative {commutative}, |F(1)| = {one}, distinct models {distinct}"),
    )
}

fn dds(corpus: &mut Corpus) -> Outcome {
    let mut r = rng(606);
    let types = vec![2];
    let (mut identity, mut composition, mut parallel, mut composed, mut paired) = (0, 0, 0, 0, 0);
    for _ in 0..DDS_INSTANCES {
        let x = random_box(&mut r, 1, 2);
        let m = random_machine(&mut r, &x, &types, 3);
        if behaviourally_equivalent(&dds_apply(&WiringDiagram::identity(&x), &m).unwrap(), &m) {
            identity += 1;
        }
        let y = random_box(&mut r, 1, 2);
        let n = random_machine(&mut r, &y, &types, 3);
        let (Some(phi), Some(chi)) = (random_wiring(&mut r, &x, 1, 2), random_wiring(&mut r, &y, 1, 2)) else { continue };
        paired += 1;
        let lhs = dds_apply(&phi.tensor(&chi), &dds_parallel(&m, &n).unwrap()).unwrap();
        let rhs = dds_parallel(&dds_apply(&phi, &m).unwrap(), &dds_apply(&chi, &n).unwrap()).unwrap();
        if behaviourally_equivalent(&lhs, &rhs) {
            parallel += 1;
        }
        let Some(psi) = random_wiring(&mut r, &phi.outer, 1, 2) else { continue };
        composed += 1;
        let lhs = dds_apply(&phi.then(&psi).unwrap(), &m).unwrap();
        let rhs = dds_apply(&psi, &dds_apply(&phi, &m).unwrap()).unwrap();
        if behaviourally_equivalent(&lhs, &rhs) {
            composition += 1;
        }
    }
    let (toggle, phi) = feedback_toggle();
    let closed = dds_apply(&phi, &toggle).unwrap();
    let outs: Vec<usize> = closed.simulate(0, &vec![vec![]; 8]).iter().map(|o| o[0]).collect();
    let period_two = outs.windows(2).all(|w| w[0] != w[1]) && outs.windows(3).all(|w| w[0] == w[2]);
    let total = dds_total_category(&DdsBounds::default());
    let fibration = match &total {
        Ok((_, g)) => passes(check_monoidal_fibration(&g.fibration_data())),
        Err(_) => false,
    };
    if let Ok((u, _)) = total {
        corpus.entities.push(Entity::LaxMonoidal { lax: u.fixture.lax, witness: None });
    }
    outcome(
        identity == DDS_INSTANCES && composition == composed && composed > 0 && parallel == paired && period_two && fibration,
        format!(
            "identity {identity}/{DDS_INSTANCES}, composition {composition}/{composed}, parallel {parallel}/{paired}, toggle period two {period_two}, total fibration {fibration}"
        ),
    )
}

fn behaviourally_equivalent(a: &MooreMachine, b: &MooreMachine) -> bool {
    fibcat::zoo::dds::behaviourally_equivalent(a, b, equivalence_length(a, b))
}

fn counting(corpus: &Corpus) -> Outcome {
    let g = vertex_opfibration(2).map(|(g, _)| g.groth.total.n_objs()).unwrap_or(0);
    outcome(
        corpus.miscounted.is_empty() && g == GRAPH_TOTAL_OBJECTS,
        format!("{} totals counted, {} mismatches, graphs-2 total has {g} objects", corpus.counted, corpus.miscounted.len()),
    )
}

fn interchange(corpus: &Corpus) -> Outcome {
    let mut ok = 0;
    for e in &corpus.entities {
        let s = dump(e);
        if load(&s).is_ok_and(|back| &back == e && dump(&back) == s) {
            ok += 1;
        }
    }
    outcome(ok == corpus.entities.len() && ok > 0, format!("{ok}/{} entities round trip bit-exactly", corpus.entities.len()))
}

fn main() {
    let mut corpus = Corpus { entities: Vec::new(), counted: 0, miscounted: Vec::new() };
    let mut all = true;
    let mut report = |id: usize, title: &str, budget: Option<Duration>, run: &mut dyn FnMut() -> Outcome| {
        let start = Instant::now();
        let o = run();
        let took = start.elapsed();
        let in_time = budget.is_none_or(|b| took <= b);
        let pass = o.pass && in_time;
        all &= pass;
        let limit = budget.map(|b| format!(" of {}s", b.as_secs())).unwrap_or_default();
        println!("{} {id:>2} {title}: {} [{:.1}s{limit}]", if pass { "PASS" } else { "FAIL" }, o.detail, took.as_secs_f64());
    };
    report(1, "split Grothendieck round trip", Some(SPLIT_BUDGET), &mut || split_round_trips(&mut corpus));
    report(2, "pseudo Grothendieck round trip", Some(PSEUDO_BUDGET), &mut || pseudo_round_trips(&mut corpus));
    report(3, "monoidal Grothendieck soundness", None, &mut || monoidal_soundness(&mut corpus));
    report(4, "fibrewise and global transfer", Some(TRANSFER_BUDGET), &mut || transfer(&mut corpus));
    report(5, "fibre structures of ordinary laxators are strict", None, &mut strictness);
    report(6, "kappa/lambda criterion", None, &mut kappa_lambda);
    report(7, "decorators to network models", None, &mut network_models);
    report(8, "dynamical system algebra", Some(DDS_BUDGET), &mut || dds(&mut corpus));
    report(9, "object counts of total categories", None, &mut || counting(&corpus));
    report(10, "interchange round trip", None, &mut || interchange(&corpus));
    if !all {
        std::process::exit(1);
    }
}
