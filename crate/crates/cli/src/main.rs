use clap::{Parser, Subcommand, ValueEnum};
use fibcat::corr::{check_fibrewise, fibrewise_to_global, global_to_fibrewise, roundtrip_fibrewise, roundtrip_global};
use fibcat::fib::{check_fibration, check_monoidal_fibration};
use fibcat::fincat::{check_category, check_functor};
use fibcat::format::{dump, load, Entity};
use fibcat::gen::{cyclic_monoid, lattice_of, random_cocartesian_lax, rng};
use fibcat::groth::{grothendieck, monoidal_grothendieck, roundtrip_fibration, roundtrip_indexed};
use fibcat::indexed::{check_lax_monoidal, check_pseudofunctor};
use fibcat::moncat::{check_monoidal, find_cocartesian, CocartesianWitness, SearchLimits};
use fibcat::zoo::decorator::{decorator_indexed, Decorator};
use fibcat::zoo::dds::dds_indexed;
use fibcat::zoo::{family_fibration, graph_opindexed, slice_opindexed, DdsBounds, Fixture, FinSetSkeleton};
use fibcat::{Error, LawReport};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

#[derive(Parser)]
#[command(name = "fibcat", version, about = "Check, construct and transfer finite fibred structures")]
struct Cli {
    /// Report style.
    #[arg(long, value_enum, default_value_t = Style::Text, global = true)]
    format: Style,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Style {
    Text,
    Records,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Kind {
    Category,
    Functor,
    Monoidal,
    Indexed,
    LaxMonoidal,
    Fibrewise,
    Fibration,
    MonoidalFibration,
}

#[derive(Clone, Copy, ValueEnum)]
enum Direction {
    GlobalToFibrewise,
    FibrewiseToGlobal,
}

#[derive(Clone, Copy, ValueEnum)]
enum FixtureName {
    Graphs,
    SlicesArrow,
    SlicesSquare,
    SlicesFinset,
    Family,
    DecoratorGraphs,
    DecoratorMarks,
    Dds,
    Random,
}

#[derive(clap::Args)]
struct Output {
    /// Destination file; standard output when absent.
    #[arg(short, long)]
    output: Option<PathBuf>,
}

#[derive(clap::Args)]
struct Search {
    /// Largest base searched for a cocartesian witness.
    #[arg(long, env = "FIBCAT_MAX_OBJECTS", default_value_t = 24)]
    max_objects: usize,
}

#[derive(Subcommand)]
enum Command {
    /// Validates an entity against its laws.
    Check {
        path: PathBuf,
        /// Expected entity kind.
        #[arg(long, value_enum)]
        kind: Option<Kind>,
    },
    /// Builds the total category of an indexed category.
    Groth {
        path: PathBuf,
        #[command(flatten)]
        out: Output,
    },
    /// Builds the monoidal total category of a lax monoidal indexed category.
    Mongroth {
        path: PathBuf,
        #[command(flatten)]
        out: Output,
    },
    /// Moves monoidal structure between the global and fibrewise presentations.
    Transfer {
        #[arg(value_enum)]
        direction: Direction,
        path: PathBuf,
        #[command(flatten)]
        search: Search,
        #[command(flatten)]
        out: Output,
    },
    /// Builds a fixture.
    Zoo {
        #[arg(value_enum)]
        fixture: FixtureName,
        #[arg(long, env = "FIBCAT_VERTEX_BOUND", default_value_t = 2)]
        vertex_bound: usize,
        #[arg(long, env = "FIBCAT_SET_BOUND", default_value_t = 3)]
        set_bound: usize,
        #[arg(long, env = "FIBCAT_STATE_BOUND", default_value_t = 2)]
        state_bound: usize,
        #[arg(long, env = "FIBCAT_PORT_BOUND", default_value_t = 1)]
        port_bound: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Random fixtures get non-identity compositors.
        #[arg(long)]
        pseudo: bool,
        #[command(flatten)]
        out: Output,
    },
    /// Runs the applicable round trip.
    Roundtrip {
        path: PathBuf,
        #[command(flatten)]
        search: Search,
    },
}

enum Failure {
    Input(Error),
    Law(LawReport),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        if is_input_error(&e) {
            Failure::Input(e)
        } else {
            let mut rep = LawReport::new("computation");
            rep.fail(format!("{e:?}").split('(').next().unwrap_or("error").to_string(), vec![e.to_string()]);
            Failure::Law(rep)
        }
    }
}

fn is_input_error(e: &Error) -> bool {
    matches!(
        e,
        Error::Parse(_)
            | Error::UnknownObject(_)
            | Error::UnknownMorphism(_)
            | Error::DuplicateName(_)
            | Error::MalformedTable(_)
            | Error::ShapeMismatch(_)
            | Error::TypeMismatch(_)
            | Error::SizeLimitExceeded(_)
            | Error::UniverseOverflow(_)
            | Error::Variance(_)
    )
}

fn read(path: &Path) -> Result<Entity, Failure> {
    let text = std::fs::read_to_string(path).map_err(|e| Failure::Input(Error::Parse(format!("{}: {e}", path.display()))))?;
    load(&text).map_err(Failure::Input)
}

fn write(out: &Output, e: &Entity) -> Result<(), Failure> {
    let text = dump(e);
    match &out.output {
        Some(p) => std::fs::write(p, text).map_err(|err| Failure::Input(Error::Parse(format!("{}: {err}", p.display())))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn emit(style: Style, rep: &LawReport) {
    match style {
        Style::Text => print!("{rep}"),
        Style::Records => rep.records().iter().for_each(|l| println!("{l}")),
    }
}

fn verdict(rep: LawReport) -> Result<LawReport, Failure> {
    if rep.is_pass() {
        Ok(rep)
    } else {
        Err(Failure::Law(rep))
    }
}

fn kind_of(e: &Entity) -> Kind {
    match e {
        Entity::Category(_) => Kind::Category,
        Entity::Functor(_) => Kind::Functor,
        Entity::Monoidal(_) => Kind::Monoidal,
        Entity::Indexed(_) => Kind::Indexed,
        Entity::LaxMonoidal { .. } => Kind::LaxMonoidal,
        Entity::Fibrewise { .. } => Kind::Fibrewise,
        Entity::Fibration(_) => Kind::Fibration,
        Entity::MonoidalFibration(_) => Kind::MonoidalFibration,
    }
}

fn check(e: &Entity) -> Result<LawReport, Failure> {
    let mut rep = LawReport::new(e.kind());
    match e {
        Entity::Category(c) => rep.absorb(check_category(c)?),
        Entity::Functor(f) => rep.absorb(check_functor(f)?),
        Entity::Monoidal(m) => {
            rep.absorb(check_category(&m.base)?);
            rep.absorb(check_monoidal(m)?);
        }
        Entity::Indexed(m) => rep.absorb(check_pseudofunctor(m)?),
        Entity::LaxMonoidal { lax, witness } => {
            rep.absorb(check_lax_monoidal(lax)?);
            if let Some(w) = witness {
                rep.absorb(w.verify());
            }
        }
        Entity::Fibrewise { fibrewise, witness } => {
            rep.absorb(check_fibrewise(fibrewise)?);
            if let Some(w) = witness {
                rep.absorb(w.verify());
            }
        }
        Entity::Fibration(p) => rep.absorb(check_fibration(p)?),
        Entity::MonoidalFibration(m) => rep.absorb(check_monoidal_fibration(m)?),
    }
    Ok(rep)
}

fn witness_for(given: &Option<CocartesianWitness>, base: &std::sync::Arc<fibcat::fincat::FinCat>, search: &Search) -> Result<CocartesianWitness, Failure> {
    match given {
        Some(w) => Ok(w.clone()),
        None => Ok(find_cocartesian(base, SearchLimits { max_objects: search.max_objects })?),
    }
}

fn fixture(name: FixtureName, a: &ZooArgs) -> Result<Fixture, Failure> {
    Ok(match name {
        FixtureName::Graphs => graph_opindexed(a.vertex_bound)?,
        FixtureName::SlicesArrow => {
            let (b, w) = lattice_of(&[0, 1], 1);
            slice_opindexed(b, &w, "arrow")?
        }
        FixtureName::SlicesSquare => {
            let (b, w) = lattice_of(&[0, 1, 2, 3], 2);
            slice_opindexed(b, &w, "square")?
        }
        FixtureName::SlicesFinset => {
            let s = FinSetSkeleton::new(a.set_bound)?;
            slice_opindexed(s.cat.clone(), &s.coproducts(), &format!("finset-{}", a.set_bound))?
        }
        FixtureName::Family => family_fibration(&cyclic_monoid(2), a.set_bound)?,
        FixtureName::DecoratorGraphs => decorator_indexed(&Decorator::simple_graphs(), a.set_bound)?,
        FixtureName::DecoratorMarks => decorator_indexed(&Decorator::vertex_marks(), a.set_bound)?,
        FixtureName::Dds => {
            let u = dds_indexed(&DdsBounds { types: vec![2], port_bound: a.port_bound, state_bound: a.state_bound })?;
            eprintln!("{} machine pairs leave the universe", u.undefined_pairs);
            u.fixture
        }
        FixtureName::Random => {
            let (lax, w) = random_cocartesian_lax(&mut rng(a.seed), a.pseudo);
            Fixture { name: format!("random-{}", a.seed), lax, witness: Some(w) }
        }
    })
}

struct ZooArgs {
    vertex_bound: usize,
    set_bound: usize,
    state_bound: usize,
    port_bound: usize,
    seed: u64,
    pseudo: bool,
}

fn run(cli: &Cli) -> Result<Option<LawReport>, Failure> {
    match &cli.command {
        Command::Check { path, kind } => {
            let e = read(path)?;
            if let Some(k) = kind {
                if *k != kind_of(&e) {
                    return Err(Failure::Input(Error::Parse(format!("{}: expected another kind, found {}", path.display(), e.kind()))));
                }
            }
            verdict(check(&e)?).map(Some)
        }
        Command::Groth { path, out } => {
            let m = match read(path)? {
                Entity::Indexed(m) => m,
                Entity::LaxMonoidal { lax, .. } => lax.carrier,
                e => return Err(Failure::Input(Error::Parse(format!("groth needs an indexed category, found {}", e.kind())))),
            };
            let g = grothendieck(&m)?;
            eprintln!("total: {} objects, {} morphisms", g.total.n_objs(), g.total.n_mors());
            write(out, &Entity::Fibration(g.fibration))?;
            Ok(None)
        }
        Command::Mongroth { path, out } => {
            let Entity::LaxMonoidal { lax, .. } = read(path)? else {
                return Err(Failure::Input(Error::Parse("mongroth needs a lax monoidal indexed category".into())));
            };
            let g = monoidal_grothendieck(&lax)?;
            eprintln!("total: {} objects, {} morphisms", g.groth.total.n_objs(), g.groth.total.n_mors());
            write(out, &Entity::MonoidalFibration(g.fibration_data()))?;
            Ok(None)
        }
        Command::Transfer { direction, path, search, out } => {
            let result = match (direction, read(path)?) {
                (Direction::GlobalToFibrewise, Entity::LaxMonoidal { lax, witness }) => {
                    let w = witness_for(&witness, &lax.carrier.base, search)?;
                    Entity::Fibrewise { fibrewise: global_to_fibrewise(&lax, &w)?, witness: Some(w) }
                }
                (Direction::FibrewiseToGlobal, Entity::Fibrewise { fibrewise, witness }) => {
                    let w = witness_for(&witness, &fibrewise.carrier.base, search)?;
                    Entity::LaxMonoidal { lax: fibrewise_to_global(&fibrewise, &w)?, witness: Some(w) }
                }
                (_, e) => return Err(Failure::Input(Error::Parse(format!("transfer cannot start from {}", e.kind())))),
            };
            write(out, &result)?;
            Ok(None)
        }
        Command::Zoo { fixture: name, vertex_bound, set_bound, state_bound, port_bound, seed, pseudo, out } => {
            let args = ZooArgs {
                vertex_bound: *vertex_bound,
                set_bound: *set_bound,
                state_bound: *state_bound,
                port_bound: *port_bound,
                seed: *seed,
                pseudo: *pseudo,
            };
            let f = fixture(*name, &args)?;
            eprintln!("{}: {} fibre objects over {} base objects", f.name, f.lax.carrier.total_objects(), f.lax.carrier.base.n_objs());
            write(out, &Entity::LaxMonoidal { lax: f.lax, witness: f.witness })?;
            Ok(None)
        }
        Command::Roundtrip { path, search } => {
            let e = read(path)?;
            let pre = check(&e)?;
            if !pre.is_pass() {
                return Err(Failure::Law(pre));
            }
            let rep = match &e {
                Entity::Indexed(m) => roundtrip_indexed(m)?,
                Entity::Fibration(p) => roundtrip_fibration(p)?,
                Entity::MonoidalFibration(m) => roundtrip_fibration(&m.carrier)?,
                Entity::LaxMonoidal { lax, witness } => {
                    let mut rep = roundtrip_indexed(&lax.carrier)?;
                    if let Some(w) = witness {
                        rep.absorb(roundtrip_global(lax, w)?);
                    } else if let Ok(w) = find_cocartesian(&lax.carrier.base, SearchLimits { max_objects: search.max_objects }) {
                        rep.absorb(roundtrip_global(lax, &w)?);
                    }
                    rep
                }
                Entity::Fibrewise { fibrewise, witness } => {
                    let w = witness_for(witness, &fibrewise.carrier.base, search)?;
                    roundtrip_fibrewise(fibrewise, &w)?
                }
                other => return Err(Failure::Input(Error::Parse(format!("no round trip for {}", other.kind())))),
            };
            verdict(rep).map(Some)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(Some(rep)) => {
            emit(cli.format, &rep);
            ExitCode::SUCCESS
        }
        Ok(None) => ExitCode::SUCCESS,
        Err(Failure::Law(rep)) => {
            emit(cli.format, &rep);
            ExitCode::from(1)
        }
        Err(Failure::Input(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
