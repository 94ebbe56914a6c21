//! Boxes, wiring diagrams and Moore machines over finite port types.

use super::Fixture;
use crate::error::{Error, Result};
use crate::fincat::{FinCat, FinFunctor, Mor, Ob};
use crate::groth::{monoidal_grothendieck, MonoidalGrothResult};
use crate::indexed::{IndexedCat, LaxMonoidalIndexed, Variance};
use crate::moncat::{Bifunctor, MonoidalData};
use rand::Rng;
use std::collections::hash_map::Entry;
use std::collections::{HashMap, HashSet, VecDeque};
use std::sync::Arc;

/// Typed ports; a type is an index into the type universe (a list of set sizes).
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Box {
    pub inputs: Vec<usize>,
    pub outputs: Vec<usize>,
}

fn digits(v: &[usize]) -> String {
    v.iter().map(|d| char::from_digit(*d as u32, 36).unwrap()).collect()
}

fn undigits(s: &str) -> Option<Vec<usize>> {
    s.chars().map(|c| c.to_digit(36).map(|d| d as usize)).collect()
}

impl Box {
    pub fn new(inputs: Vec<usize>, outputs: Vec<usize>) -> Box {
        Box { inputs, outputs }
    }

    pub fn empty() -> Box {
        Box::new(vec![], vec![])
    }

    /// `inputs:outputs`, one digit per port type.
    pub fn name(&self) -> String {
        format!("{}:{}", digits(&self.inputs), digits(&self.outputs))
    }

    pub fn parse(s: &str) -> Option<Box> {
        let (i, o) = s.split_once(':')?;
        Some(Box::new(undigits(i)?, undigits(o)?))
    }

    /// Parallel placement: ports of `self` first.
    pub fn tensor(&self, other: &Box) -> Box {
        Box::new([self.inputs.clone(), other.inputs.clone()].concat(), [self.outputs.clone(), other.outputs.clone()].concat())
    }

    fn card(types: &[usize], ports: &[usize]) -> usize {
        ports.iter().map(|&t| types[t]).product()
    }
}

/// Mixed-radix index of a tuple of port values, first port most significant.
fn encode(types: &[usize], ports: &[usize], vals: &[usize]) -> usize {
    ports.iter().zip(vals).fold(0, |acc, (&t, &v)| acc * types[t] + v)
}

fn decode(types: &[usize], ports: &[usize], mut k: usize) -> Vec<usize> {
    let mut out = vec![0; ports.len()];
    for (i, &t) in ports.iter().enumerate().rev() {
        out[i] = k % types[t];
        k /= types[t];
    }
    out
}

/// Where an inner input port reads from.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Source {
    /// An output port of the inner box.
    Inner(usize),
    /// An input port of the outer box.
    Outer(usize),
}

/// `φ: X → Y` with `φ_in: X_in → X_out + Y_in` and `φ_out: Y_out → X_out`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct WiringDiagram {
    pub inner: Box,
    pub outer: Box,
    pub feed_in: Vec<Source>,
    pub feed_out: Vec<usize>,
}

impl WiringDiagram {
    pub fn new(inner: Box, outer: Box, feed_in: Vec<Source>, feed_out: Vec<usize>) -> Result<WiringDiagram> {
        let w = WiringDiagram { inner, outer, feed_in, feed_out };
        w.check()?;
        Ok(w)
    }

    fn check(&self) -> Result<()> {
        let (x, y) = (&self.inner, &self.outer);
        if self.feed_in.len() != x.inputs.len() || self.feed_out.len() != y.outputs.len() {
            return Err(Error::TypeMismatch(format!("routing tables of {} are not total", self.name())));
        }
        for (p, src) in self.feed_in.iter().enumerate() {
            let ty = match *src {
                Source::Inner(o) => x.outputs.get(o),
                Source::Outer(i) => y.inputs.get(i),
            };
            if ty != Some(&x.inputs[p]) {
                return Err(Error::TypeMismatch(format!("inner input {p} of {}", self.name())));
            }
        }
        for (q, &o) in self.feed_out.iter().enumerate() {
            if x.outputs.get(o) != Some(&y.outputs[q]) {
                return Err(Error::TypeMismatch(format!("outer output {q} of {}", self.name())));
            }
        }
        Ok(())
    }

    pub fn identity(x: &Box) -> WiringDiagram {
        WiringDiagram { inner: x.clone(), outer: x.clone(), feed_in: (0..x.inputs.len()).map(Source::Outer).collect(), feed_out: (0..x.outputs.len()).collect() }
    }

    /// `self` followed by `psi`.
    pub fn then(&self, psi: &WiringDiagram) -> Result<WiringDiagram> {
        if self.outer != psi.inner {
            return Err(Error::ShapeMismatch(format!("{} then {}", self.name(), psi.name())));
        }
        let feed_in = self
            .feed_in
            .iter()
            .map(|&s| match s {
                Source::Inner(o) => Source::Inner(o),
                Source::Outer(i) => match psi.feed_in[i] {
                    Source::Inner(o) => Source::Inner(self.feed_out[o]),
                    Source::Outer(j) => Source::Outer(j),
                },
            })
            .collect();
        let feed_out = psi.feed_out.iter().map(|&o| self.feed_out[o]).collect();
        Ok(WiringDiagram { inner: self.inner.clone(), outer: psi.outer.clone(), feed_in, feed_out })
    }

    pub fn tensor(&self, other: &WiringDiagram) -> WiringDiagram {
        let (xo, yi) = (self.inner.outputs.len(), self.outer.inputs.len());
        let shift = |s: Source| match s {
            Source::Inner(o) => Source::Inner(o + xo),
            Source::Outer(i) => Source::Outer(i + yi),
        };
        WiringDiagram {
            inner: self.inner.tensor(&other.inner),
            outer: self.outer.tensor(&other.outer),
            feed_in: self.feed_in.iter().copied().chain(other.feed_in.iter().map(|&s| shift(s))).collect(),
            feed_out: self.feed_out.iter().copied().chain(other.feed_out.iter().map(|&o| o + xo)).collect(),
        }
    }

    /// `X=>Y/feeds/outs` with feeds `oK` (inner output) or `iK` (outer input).
    pub fn name(&self) -> String {
        let feeds: Vec<String> = self
            .feed_in
            .iter()
            .map(|s| match s {
                Source::Inner(o) => format!("o{o}"),
                Source::Outer(i) => format!("i{i}"),
            })
            .collect();
        format!("{}=>{}/{}/{}", self.inner.name(), self.outer.name(), feeds.join(","), digits(&self.feed_out))
    }

    /// Every type-respecting diagram `x → y`.
    pub fn all(x: &Box, y: &Box) -> Vec<WiringDiagram> {
        let mut feeds: Vec<Vec<Source>> = vec![vec![]];
        for &t in &x.inputs {
            let opts: Vec<Source> = (0..x.outputs.len())
                .filter(|&o| x.outputs[o] == t)
                .map(Source::Inner)
                .chain((0..y.inputs.len()).filter(|&i| y.inputs[i] == t).map(Source::Outer))
                .collect();
            feeds = feeds.into_iter().flat_map(|f| opts.iter().map(move |&s| [f.clone(), vec![s]].concat())).collect();
        }
        let mut outs: Vec<Vec<usize>> = vec![vec![]];
        for &t in &y.outputs {
            let opts: Vec<usize> = (0..x.outputs.len()).filter(|&o| x.outputs[o] == t).collect();
            outs = outs.into_iter().flat_map(|f| opts.iter().map(move |&o| [f.clone(), vec![o]].concat())).collect();
        }
        feeds
            .iter()
            .flat_map(|f| outs.iter().map(move |o| WiringDiagram { inner: x.clone(), outer: y.clone(), feed_in: f.clone(), feed_out: o.clone() }))
            .collect()
    }
}

/// States `0..states`; `update[s][k]` for the `k`-th input tuple and
/// `readout[s]` as the index of the output tuple.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct MooreMachine {
    pub boxed: Box,
    pub types: Vec<usize>,
    pub states: usize,
    pub update: Vec<Vec<usize>>,
    pub readout: Vec<usize>,
}

impl MooreMachine {
    pub fn new(boxed: Box, types: Vec<usize>, update: Vec<Vec<usize>>, readout: Vec<usize>) -> Result<MooreMachine> {
        let states = readout.len();
        let (ni, no) = (Box::card(&types, &boxed.inputs), Box::card(&types, &boxed.outputs));
        let typed = update.len() == states && update.iter().all(|row| row.len() == ni && row.iter().all(|&s| s < states)) && readout.iter().all(|&r| r < no);
        if !typed || states == 0 {
            return Err(Error::MalformedTable("update or readout is not total".into()));
        }
        Ok(MooreMachine { boxed, types, states, update, readout })
    }

    fn outputs(&self, s: usize) -> Vec<usize> {
        decode(&self.types, &self.boxed.outputs, self.readout[s])
    }

    fn n_inputs(&self) -> usize {
        Box::card(&self.types, &self.boxed.inputs)
    }

    pub fn step(&self, s: usize, input: &[usize]) -> usize {
        self.update[s][encode(&self.types, &self.boxed.inputs, input)]
    }

    /// Output tuples along a run from `s`, one more than the number of inputs.
    pub fn simulate(&self, mut s: usize, inputs: &[Vec<usize>]) -> Vec<Vec<usize>> {
        let mut out = vec![self.outputs(s)];
        for i in inputs {
            s = self.step(s, i);
            out.push(self.outputs(s));
        }
        out
    }

    /// `box/update/readout` with one digit per entry.
    pub fn name(&self) -> String {
        let upd: Vec<String> = self.update.iter().map(|r| digits(r)).collect();
        format!("{}/{}/{}", self.boxed.name(), upd.join("."), digits(&self.readout))
    }

    /// Every machine over `b` with exactly `states` states.
    pub fn all(b: &Box, types: &[usize], states: usize) -> Vec<MooreMachine> {
        let (ni, no) = (Box::card(types, &b.inputs), Box::card(types, &b.outputs));
        let cells = states * ni;
        let mut out = Vec::new();
        let n_upd = states.pow(cells as u32);
        let n_read = no.pow(states as u32);
        for u in 0..n_upd {
            let flat = decode(&vec![states; cells], &(0..cells).collect::<Vec<_>>(), u);
            let update: Vec<Vec<usize>> = flat.chunks(ni.max(1)).take(states).map(|c| c.to_vec()).collect();
            let update = if ni == 0 { vec![vec![]; states] } else { update };
            for r in 0..n_read {
                let readout = decode(&vec![no; states], &(0..states).collect::<Vec<_>>(), r);
                out.push(MooreMachine { boxed: b.clone(), types: types.to_vec(), states, update: update.clone(), readout });
            }
        }
        out
    }

    /// State maps `h` with `h∘update = update'∘(h × 1)` and `readout'∘h = readout`.
    pub fn morphisms_to(&self, other: &MooreMachine) -> Vec<Vec<usize>> {
        if self.boxed != other.boxed {
            return vec![];
        }
        (0..other.states.pow(self.states as u32))
            .map(|k| decode(&vec![other.states; self.states], &(0..self.states).collect::<Vec<_>>(), k))
            .filter(|h| {
                (0..self.states).all(|s| other.readout[h[s]] == self.readout[s] && (0..self.n_inputs()).all(|i| other.update[h[s]][i] == h[self.update[s][i]]))
            })
            .collect()
    }
}

/// The machine seen through `φ`: inner inputs read from inner outputs or outer
/// inputs, outer outputs read from inner outputs.
pub fn dds_apply(phi: &WiringDiagram, m: &MooreMachine) -> Result<MooreMachine> {
    phi.check()?;
    if phi.inner != m.boxed {
        return Err(Error::TypeMismatch(format!("machine on {} under {}", m.boxed.name(), phi.name())));
    }
    let t = &m.types;
    let y = &phi.outer;
    let ny = Box::card(t, &y.inputs);
    let mut update = vec![vec![0; ny]; m.states];
    let mut readout = vec![0; m.states];
    for s in 0..m.states {
        let out = m.outputs(s);
        readout[s] = encode(t, &y.outputs, &phi.feed_out.iter().map(|&o| out[o]).collect::<Vec<_>>());
        for (k, row) in update[s].iter_mut().enumerate() {
            let yin = decode(t, &y.inputs, k);
            let xin: Vec<usize> = phi
                .feed_in
                .iter()
                .map(|&src| match src {
                    Source::Inner(o) => out[o],
                    Source::Outer(i) => yin[i],
                })
                .collect();
            *row = m.step(s, &xin);
        }
    }
    Ok(MooreMachine { boxed: y.clone(), types: t.clone(), states: m.states, update, readout })
}

/// Both machines side by side on the parallel box; state `(s, t)` is `s·|T| + t`.
pub fn dds_parallel(m1: &MooreMachine, m2: &MooreMachine) -> Result<MooreMachine> {
    if m1.types != m2.types {
        return Err(Error::TypeMismatch("machines over different type universes".into()));
    }
    let t = &m1.types;
    let b = m1.boxed.tensor(&m2.boxed);
    let states = m1.states * m2.states;
    let k1 = m1.boxed.inputs.len();
    let mut update = vec![vec![0; Box::card(t, &b.inputs)]; states];
    let mut readout = vec![0; states];
    for s1 in 0..m1.states {
        for s2 in 0..m2.states {
            let s = s1 * m2.states + s2;
            readout[s] = encode(t, &b.outputs, &[m1.outputs(s1), m2.outputs(s2)].concat());
            for (k, row) in update[s].iter_mut().enumerate() {
                let vals = decode(t, &b.inputs, k);
                *row = m1.step(s1, &vals[..k1]) * m2.states + m2.step(s2, &vals[k1..]);
            }
        }
    }
    Ok(MooreMachine { boxed: b, types: t.clone(), states, update, readout })
}

/// Whether state `s` of `m1` and `t` of `m2` give equal outputs on every input
/// word of length at most `len`.
pub fn states_equivalent(m1: &MooreMachine, s: usize, m2: &MooreMachine, t: usize, len: usize) -> bool {
    if m1.boxed != m2.boxed || m1.types != m2.types {
        return false;
    }
    let mut depth = HashMap::from([((s, t), 0usize)]);
    let mut queue = VecDeque::from([(s, t)]);
    while let Some((a, b)) = queue.pop_front() {
        if m1.readout[a] != m2.readout[b] {
            return false;
        }
        let d = depth[&(a, b)];
        if d == len {
            continue;
        }
        for i in 0..m1.n_inputs() {
            let next = (m1.update[a][i], m2.update[b][i]);
            if let Entry::Vacant(e) = depth.entry(next) {
                e.insert(d + 1);
                queue.push_back(next);
            }
        }
    }
    true
}

/// Every state of each machine has an equivalent state in the other.
pub fn behaviourally_equivalent(m1: &MooreMachine, m2: &MooreMachine, len: usize) -> bool {
    (0..m1.states).all(|s| (0..m2.states).any(|t| states_equivalent(m1, s, m2, t, len)))
        && (0..m2.states).all(|t| (0..m1.states).any(|s| states_equivalent(m1, s, m2, t, len)))
}

/// Word length at which equivalence coincides with bisimulation.
pub fn equivalence_length(m1: &MooreMachine, m2: &MooreMachine) -> usize {
    2 * m1.states * m2.states
}

/// A two-state machine with `update(s, i) = ¬i` and `readout = s`, and the
/// diagram feeding its output back into its input.
pub fn feedback_toggle() -> (MooreMachine, WiringDiagram) {
    let b = Box::new(vec![0], vec![0]);
    let m = MooreMachine::new(b.clone(), vec![2], vec![vec![1, 0], vec![1, 0]], vec![0, 1]).unwrap();
    let phi = WiringDiagram::new(b, Box::new(vec![], vec![0]), vec![Source::Inner(0)], vec![0]).unwrap();
    (m, phi)
}

/// Boxes with at most `port_bound` inputs and outputs.
pub fn boxes(n_types: usize, port_bound: usize) -> Vec<Box> {
    let lists = |k: usize| -> Vec<Vec<usize>> {
        (0..=k)
            .flat_map(|len| (0..n_types.pow(len as u32)).map(move |c| decode(&vec![n_types; len], &(0..len).collect::<Vec<_>>(), c)))
            .collect()
    };
    lists(port_bound).into_iter().flat_map(|i| lists(port_bound).into_iter().map(move |o| Box::new(i.clone(), o))).collect()
}

/// Boxes and wiring diagrams within `port_bound`, with parallel placement as
/// a partial strict tensor.
pub fn wiring_category(types: &[usize], port_bound: usize) -> Result<(Arc<FinCat>, MonoidalData)> {
    let bs = boxes(types.len(), port_bound);
    let mut diagrams = Vec::new();
    for x in &bs {
        for y in &bs {
            diagrams.extend(WiringDiagram::all(x, y));
        }
    }
    if diagrams.len() > 20_000 {
        return Err(Error::SizeLimitExceeded(format!("{} wiring diagrams", diagrams.len())));
    }
    let bix: HashMap<&Box, usize> = bs.iter().enumerate().map(|(i, b)| (b, i)).collect();
    let dix: HashMap<&WiringDiagram, usize> = diagrams.iter().enumerate().map(|(i, d)| (d, i)).collect();
    let mors = diagrams.iter().map(|d| (d.name(), bix[&d.inner], bix[&d.outer])).collect();
    let ids = bs.iter().map(|b| dix[&WiringDiagram::identity(b)]).collect();
    let c = Arc::new(FinCat::build(bs.iter().map(Box::name).collect(), mors, ids, |g, f| {
        dix.get(&diagrams[f].then(&diagrams[g]).ok()?).copied()
    })?);
    let ob = |b: &Box| c.obj(&b.name());
    let by_name: HashMap<String, &WiringDiagram> = diagrams.iter().map(|d| (d.name(), d)).collect();
    let tensor = Bifunctor::build(
        c.clone(),
        c.clone(),
        c.clone(),
        |x, y| ob(&Box::parse(c.obj_name(x))?.tensor(&Box::parse(c.obj_name(y))?)),
        |f, g| c.mor(&by_name[c.mor_name(f)].tensor(by_name[c.mor_name(g)]).name()),
    );
    let unit = ob(&Box::empty()).unwrap();
    Ok((c.clone(), MonoidalData::strict(c, tensor, unit)))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DdsBounds {
    pub types: Vec<usize>,
    pub port_bound: usize,
    pub state_bound: usize,
}

impl Default for DdsBounds {
    fn default() -> Self {
        DdsBounds { types: vec![2], port_bound: 1, state_bound: 2 }
    }
}

/// Result of truncating the machine algebra to a finite universe.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DdsUniverse {
    pub fixture: Fixture,
    /// Pairs of machines whose parallel composite has too many states.
    pub undefined_pairs: usize,
}

pub const MAX_MACHINES: usize = 2_000;

/// Machines with at most `state_bound` states on every box of the wiring
/// category, machine morphisms in each fibre, `dds_apply` as reindexing and
/// `dds_parallel` as a laxator defined where the state count stays in bounds.
pub fn dds_indexed(bounds: &DdsBounds) -> Result<DdsUniverse> {
    let (base, bm) = wiring_category(&bounds.types, bounds.port_bound)?;
    let b = &*base;
    let mut machines: Vec<Vec<MooreMachine>> = Vec::new();
    for x in b.objects() {
        let bx = Box::parse(b.obj_name(x)).unwrap();
        let ms: Vec<MooreMachine> = (1..=bounds.state_bound).flat_map(|k| MooreMachine::all(&bx, &bounds.types, k)).collect();
        machines.push(ms);
    }
    let total: usize = machines.iter().map(Vec::len).sum();
    if total > MAX_MACHINES {
        return Err(Error::UniverseOverflow(format!("{total} machines exceed {MAX_MACHINES}")));
    }
    let fibres: Vec<Arc<FinCat>> = machines
        .iter()
        .map(|ms| {
            let mut mors = Vec::new();
            let mut ids = vec![0; ms.len()];
            let mut index = HashMap::new();
            for (i, m) in ms.iter().enumerate() {
                for (j, n) in ms.iter().enumerate() {
                    for h in m.morphisms_to(n) {
                        if i == j && h.iter().enumerate().all(|(s, &t)| s == t) {
                            ids[i] = mors.len();
                        }
                        index.insert((i, j, h.clone()), mors.len());
                        mors.push((format!("{}>{}", digits(&h), n.name()), i, j, h));
                    }
                }
            }
            let table: Vec<(String, Ob, Ob)> = mors.iter().map(|(s, i, j, _)| (format!("{}:{s}", ms[*i].name()), *i, *j)).collect();
            FinCat::build(ms.iter().map(MooreMachine::name).collect(), table, ids, |g, f| {
                let (_, _, k, hg) = &mors[g];
                let (_, i, _, hf) = &mors[f];
                index.get(&(*i, *k, hf.iter().map(|&s| hg[s]).collect())).copied()
            })
            .map(Arc::new)
        })
        .collect::<Result<_>>()?;
    let state_map = |fib: &FinCat, k: Mor| -> Vec<usize> {
        let name = fib.mor_name(k);
        let h = name.split(':').nth(2).unwrap();
        undigits(h.split('>').next().unwrap()).unwrap()
    };
    let lookup: Vec<HashMap<String, usize>> = machines.iter().map(|ms| ms.iter().enumerate().map(|(i, m)| (m.name(), i)).collect()).collect();
    let machine = |x: Ob, a: Ob| -> &MooreMachine { &machines[x][lookup[x][fibres[x].obj_name(a)]] };
    let hom_name = |fib: &FinCat, src: &MooreMachine, h: &[usize], tgt: &MooreMachine| fib.mor(&format!("{}:{}>{}", src.name(), digits(h), tgt.name()));
    let reindex = b
        .morphisms()
        .map(|k| {
            let phi = parse_diagram(b.mor_name(k))?;
            let (fx, fy) = (&fibres[b.dom(k)], &fibres[b.cod(k)]);
            let obj_map = fx.objects().map(|a| dds_apply(&phi, machine(b.dom(k), a)).map(|m| fy.obj(&m.name()).unwrap())).collect::<Result<Vec<_>>>()?;
            let mor_map = fx
                .morphisms()
                .map(|p| {
                    let (s, t) = (fy.obj_name(obj_map[fx.dom(p)]), fy.obj_name(obj_map[fx.cod(p)]));
                    fy.mor(&format!("{s}:{}>{t}", digits(&state_map(fx, p)))).unwrap()
                })
                .collect();
            FinFunctor::new(fx.clone(), fy.clone(), obj_map, mor_map)
        })
        .collect::<Result<Vec<_>>>()?;
    let carrier = IndexedCat::strict(base.clone(), Variance::Covariant, fibres.clone(), reindex)?;
    let mut laxator = HashMap::new();
    let mut undefined_pairs = 0;
    for (x, y) in bm.tensor.defined_pairs() {
        let xy = bm.tensor.ob_u(x, y);
        let (fx, fy, fxy) = (&fibres[x], &fibres[y], &fibres[xy]);
        let par = |a: Ob, c: Ob| -> Option<MooreMachine> {
            let (m1, m2) = (machine(x, a), machine(y, c));
            (m1.states * m2.states <= bounds.state_bound).then(|| dds_parallel(m1, m2).unwrap())
        };
        undefined_pairs += fx.objects().flat_map(|a| fy.objects().map(move |c| (a, c))).filter(|&(a, c)| par(a, c).is_none()).count();
        let bi = Bifunctor::build(
            fx.clone(),
            fy.clone(),
            fxy.clone(),
            |a, c| fxy.obj(&par(a, c)?.name()),
            |p, q| {
                let (s, t) = (par(fx.dom(p), fy.dom(q))?, par(fx.cod(p), fy.cod(q))?);
                let (h1, h2) = (state_map(fx, p), state_map(fy, q));
                let n2 = machine(y, fy.cod(q)).states;
                let m2 = machine(y, fy.dom(q)).states;
                let h: Vec<usize> = (0..h1.len() * m2).map(|k| h1[k / m2] * n2 + h2[k % m2]).collect();
                hom_name(fxy, &s, &h, &t)
            },
        );
        laxator.insert((x, y), bi);
    }
    let ue = &fibres[bm.unit];
    let unit = ue.obj(&MooreMachine::new(Box::empty(), bounds.types.clone(), vec![vec![0]], vec![0])?.name()).unwrap();
    let lax = LaxMonoidalIndexed::ordinary(carrier, bm, laxator, unit)?;
    let name = format!("dds-s{}-p{}", bounds.state_bound, bounds.port_bound);
    Ok(DdsUniverse { fixture: Fixture { name, lax, witness: None }, undefined_pairs })
}

pub fn dds_total_category(bounds: &DdsBounds) -> Result<(DdsUniverse, MonoidalGrothResult)> {
    let u = dds_indexed(bounds)?;
    let g = monoidal_grothendieck(&u.fixture.lax)?;
    Ok((u, g))
}

/// Inverse of [`WiringDiagram::name`].
pub fn parse_diagram(s: &str) -> Result<WiringDiagram> {
    let bad = || Error::Parse(format!("wiring diagram {s}"));
    let (boxes, rest) = s.split_once('/').ok_or_else(bad)?;
    let (x, y) = boxes.split_once("=>").ok_or_else(bad)?;
    let (feeds, outs) = rest.split_once('/').ok_or_else(bad)?;
    let feed_in = feeds
        .split(',')
        .filter(|f| !f.is_empty())
        .map(|f| {
            let k = f[1..].parse().map_err(|_| bad())?;
            match &f[..1] {
                "o" => Ok(Source::Inner(k)),
                "i" => Ok(Source::Outer(k)),
                _ => Err(bad()),
            }
        })
        .collect::<Result<Vec<_>>>()?;
    WiringDiagram::new(Box::parse(x).ok_or_else(bad)?, Box::parse(y).ok_or_else(bad)?, feed_in, undigits(outs).ok_or_else(bad)?)
}

pub fn random_box(r: &mut impl Rng, n_types: usize, port_bound: usize) -> Box {
    let mut ports = || (0..r.gen_range(0..=port_bound)).map(|_| r.gen_range(0..n_types)).collect();
    let i = ports();
    Box::new(i, ports())
}

pub fn random_machine(r: &mut impl Rng, b: &Box, types: &[usize], state_bound: usize) -> MooreMachine {
    let states = r.gen_range(1..=state_bound);
    let (ni, no) = (Box::card(types, &b.inputs), Box::card(types, &b.outputs));
    let update = (0..states).map(|_| (0..ni).map(|_| r.gen_range(0..states)).collect()).collect();
    let readout = (0..states).map(|_| r.gen_range(0..no)).collect();
    MooreMachine { boxed: b.clone(), types: types.to_vec(), states, update, readout }
}

/// A random diagram out of `x`, or `None` when no outer box drawn fits.
pub fn random_wiring(r: &mut impl Rng, x: &Box, n_types: usize, port_bound: usize) -> Option<WiringDiagram> {
    for _ in 0..20 {
        let y = random_box(r, n_types, port_bound);
        let mut feed_in = Vec::new();
        for &t in &x.inputs {
            let opts: Vec<Source> =
                (0..x.outputs.len()).filter(|&o| x.outputs[o] == t).map(Source::Inner).chain((0..y.inputs.len()).filter(|&i| y.inputs[i] == t).map(Source::Outer)).collect();
            if opts.is_empty() {
                break;
            }
            feed_in.push(opts[r.gen_range(0..opts.len())]);
        }
        let mut feed_out = Vec::new();
        for &t in &y.outputs {
            let opts: Vec<usize> = (0..x.outputs.len()).filter(|&o| x.outputs[o] == t).collect();
            if opts.is_empty() {
                break;
            }
            feed_out.push(opts[r.gen_range(0..opts.len())]);
        }
        if feed_in.len() == x.inputs.len() && feed_out.len() == y.outputs.len() {
            return Some(WiringDiagram { inner: x.clone(), outer: y, feed_in, feed_out });
        }
    }
    None
}

/// Distinct machines in a fibre that are not behaviourally distinguishable.
pub fn equivalent_pairs(ms: &[MooreMachine]) -> usize {
    let mut seen = HashSet::new();
    let mut count = 0;
    for (i, a) in ms.iter().enumerate() {
        for b in &ms[i + 1..] {
            if behaviourally_equivalent(a, b, equivalence_length(a, b)) && seen.insert((a.name(), b.name())) {
                count += 1;
            }
        }
    }
    count
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fincat::check_category;
    use crate::gen::rng;
    use crate::moncat::check_monoidal;

    #[test]
    fn feedback_toggle_oscillates() {
        let (m, phi) = feedback_toggle();
        let closed = dds_apply(&phi, &m).unwrap();
        let run = closed.simulate(0, &vec![vec![]; 7]);
        let outs: Vec<usize> = run.iter().map(|o| o[0]).collect();
        assert_eq!(outs, vec![0, 1, 0, 1, 0, 1, 0, 1]);
    }

    #[test]
    fn mistyped_routing_is_rejected() {
        let x = Box::new(vec![0], vec![1]);
        let y = Box::new(vec![], vec![1]);
        assert!(matches!(WiringDiagram::new(x, y, vec![Source::Inner(0)], vec![0]), Err(Error::TypeMismatch(_))));
    }

    #[test]
    fn laws_hold_behaviourally() {
        let mut r = rng(5);
        let types = vec![2];
        for _ in 0..100 {
            let x = random_box(&mut r, 1, 2);
            let m = random_machine(&mut r, &x, &types, 3);
            let len = equivalence_length(&m, &m);
            assert!(behaviourally_equivalent(&dds_apply(&WiringDiagram::identity(&x), &m).unwrap(), &m, len));
            let Some(phi) = random_wiring(&mut r, &x, 1, 2) else { continue };
            let Some(psi) = random_wiring(&mut r, &phi.outer, 1, 2) else { continue };
            let lhs = dds_apply(&phi.then(&psi).unwrap(), &m).unwrap();
            let rhs = dds_apply(&psi, &dds_apply(&phi, &m).unwrap()).unwrap();
            assert!(behaviourally_equivalent(&lhs, &rhs, len));
        }
    }

    #[test]
    fn diagram_names_round_trip() {
        let bs = boxes(1, 1);
        for x in &bs {
            for y in &bs {
                for d in WiringDiagram::all(x, y) {
                    assert_eq!(parse_diagram(&d.name()).unwrap(), d);
                }
            }
        }
    }

    #[test]
    fn wiring_category_is_monoidal() {
        let (c, m) = wiring_category(&[2], 1).unwrap();
        assert!(check_category(&c).unwrap().is_pass());
        assert!(check_monoidal(&m).unwrap().is_pass());
    }

    #[test]
    fn machine_universe_is_lax_monoidal() {
        let u = dds_indexed(&DdsBounds::default()).unwrap();
        assert!(u.undefined_pairs > 0);
        let rep = crate::indexed::check_lax_monoidal(&u.fixture.lax).unwrap();
        assert!(rep.is_pass(), "{rep}");
    }
}
