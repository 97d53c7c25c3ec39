use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{anyhow, Context};
use clap::{Parser, Subcommand};

use spectra_core::cases::{build_noetherian, build_valuation, CaseStudy, VerifyReport};
use spectra_core::galois::{telescope_check, FrameMap};
use spectra_core::model::{ObjectFilter, SupportModel};
use spectra_core::order::{topology_from_sets, Generate};
use spectra_core::text::{self, ModelFile};
use spectra_core::{dot, Error, FiniteLattice, FiniteSpace};

#[derive(Parser)]
#[command(
    name = "spectra",
    version,
    about = "Finite frames, spectral spaces and support theories"
)]
struct Cli {
    /// Write a Graphviz diagram of the result to this path.
    #[arg(long, global = true, value_name = "PATH")]
    dot: Option<PathBuf>,
    /// Print nothing; report through the exit code only.
    #[arg(long, global = true)]
    quiet: bool,
    #[command(subcommand)]
    noun: Noun,
}

#[derive(Subcommand)]
enum Noun {
    /// Finite topological spaces.
    Space {
        #[command(subcommand)]
        verb: SpaceVerb,
    },
    /// Finite lattices and frames.
    Lattice {
        #[command(subcommand)]
        verb: LatticeVerb,
    },
    /// Frame maps.
    Map {
        #[command(subcommand)]
        verb: MapVerb,
    },
    /// Support models.
    Model {
        #[command(subcommand)]
        verb: ModelVerb,
    },
    /// Bundled worked examples with ledgers.
    Case {
        #[command(subcommand)]
        verb: CaseVerb,
    },
}

#[derive(Subcommand)]
enum SpaceVerb {
    /// Closure of a set of points.
    Closure { file: PathBuf, labels: Vec<String> },
    /// Hochster dual.
    Dual { file: PathBuf },
    /// Skula topology.
    Skula { file: PathBuf },
    /// Sobriety check.
    Sober { file: PathBuf },
    /// T_D check with locally closed witnesses.
    Td { file: PathBuf },
    /// Topology generated by a subbasis file.
    Gen {
        file: PathBuf,
        /// Treat the sets as closed generators.
        #[arg(long)]
        closed: bool,
    },
}

#[derive(Subcommand)]
enum LatticeVerb {
    /// Distributivity and the frame law.
    Check { file: PathBuf },
    /// Meet-prime elements.
    Primes { file: PathBuf },
    /// Space of meet-prime elements.
    Spectrum { file: PathBuf },
    /// Whether the frame has enough points.
    Spatial { file: PathBuf },
    /// Heyting implication a → b.
    Heyting { file: PathBuf, a: String, b: String },
    /// Compact elements.
    Compact { file: PathBuf },
}

#[derive(Subcommand)]
enum MapVerb {
    /// Whether the map preserves finite meets and joins.
    Check { file: PathBuf },
    /// Right adjoint.
    Adjoint { file: PathBuf },
    /// Induced map of spectra.
    Spec { file: PathBuf },
    /// Whether the image generates the target under joins.
    Telescope { file: PathBuf },
}

#[derive(Subcommand)]
enum ModelVerb {
    /// Model invariants, then any ledger in the file.
    Check { file: PathBuf },
    /// Big smashing support of an object.
    Support { file: PathBuf, object: String },
    /// Small smashing support, recomputed from the Rickard idempotents.
    Ssmall { file: PathBuf, object: String },
    /// Support in the spectrum of big primes.
    Sbig { file: PathBuf, object: String },
    /// Rickard idempotent at a point.
    Gamma { file: PathBuf, point: String },
    /// Brute-force scan for big primes.
    Primes { file: PathBuf },
    /// Comparison map to the spectrum of compacts.
    Psi { file: PathBuf },
    /// Topology generated by object supports.
    Topology {
        file: PathBuf,
        /// Use every object rather than only the compacts.
        #[arg(long)]
        all: bool,
    },
    /// Commutativity of the comparison triangle from the file's `hom` rows.
    Triangle { file: PathBuf },
}

#[derive(Subcommand)]
enum CaseVerb {
    /// Model attached to a finite poset of primes.
    Noetherian { poset: PathBuf },
    /// Rank one valuation domain example.
    Valuation,
}

struct Report {
    lines: Vec<String>,
    ok: bool,
    dot: Option<String>,
}

impl Report {
    fn new() -> Self {
        Report {
            lines: Vec::new(),
            ok: true,
            dot: None,
        }
    }

    fn line(&mut self, s: impl Into<String>) {
        self.lines.push(s.into());
    }

    fn verdict(&mut self, name: &str, v: bool) {
        self.line(format!("{name}={v}"));
        self.ok &= v;
    }
}

fn read(path: &Path) -> anyhow::Result<String> {
    fs::read_to_string(path).with_context(|| format!("{}: cannot read file", path.display()))
}

fn located(path: &Path, e: Error) -> anyhow::Error {
    match e {
        Error::Parse { line, message } => anyhow!("{}:{line}: {message}", path.display()),
        other => anyhow!("{}: {other}", path.display()),
    }
}

fn load<T>(path: &Path, parse: impl FnOnce(&str) -> spectra_core::Result<T>) -> anyhow::Result<T> {
    let text = read(path)?;
    parse(&text).map_err(|e| located(path, e))
}

fn sibling(path: &Path, name: &str) -> PathBuf {
    path.parent().unwrap_or(Path::new(".")).join(name)
}

fn load_space(path: &Path) -> anyhow::Result<FiniteSpace> {
    load(path, text::parse_space)
}

fn load_lattice(path: &Path) -> anyhow::Result<FiniteLattice> {
    load(path, text::parse_lattice)
}

/// Files referenced from another file resolve relative to it. Errors inside
/// them are reported against the referenced file.
fn nested<T>(
    path: &Path,
    name: &str,
    loader: impl Fn(&Path) -> anyhow::Result<T>,
) -> spectra_core::Result<T> {
    loader(&sibling(path, name)).map_err(|e| Error::Precondition(format!("{e:#}")))
}

fn load_map(path: &Path) -> anyhow::Result<FrameMap> {
    load(path, |t| {
        text::parse_map(t, |name| nested(path, name, load_lattice))
    })
}

fn load_model(path: &Path, validate: bool) -> anyhow::Result<ModelFile> {
    let loader = |name: &str| nested(path, name, load_space);
    if validate {
        load(path, |t| text::parse_model(t, loader))
    } else {
        load(path, |t| text::parse_model_unchecked(t, loader))
    }
}

fn engine(e: Error) -> anyhow::Error {
    anyhow!("{e}")
}

fn sorted_set(labels: impl IntoIterator<Item = String>) -> String {
    let mut v: Vec<String> = labels.into_iter().collect();
    v.sort();
    format!("{{{}}}", v.join(","))
}

fn space_lines(r: &mut Report, s: &FiniteSpace) {
    let mut points: Vec<&String> = s.points().iter().collect();
    points.sort();
    for p in points {
        r.line(format!("point {p}"));
    }
    for &u in s.opens() {
        r.line(format!("open {}", s.literal(u)));
    }
}

fn table_lines(r: &mut Report, mut pairs: Vec<(String, String)>) {
    pairs.sort();
    for (a, b) in pairs {
        r.line(format!("{a} -> {b}"));
    }
}

fn run_space(verb: SpaceVerb) -> anyhow::Result<Report> {
    let mut r = Report::new();
    match verb {
        SpaceVerb::Closure { file, labels } => {
            let s = load_space(&file)?;
            let c = s
                .closure_of_labels(&labels)
                .map_err(|e| located(&file, e))?;
            r.line(format!("closure {}", s.literal(c)));
            r.dot = Some(dot::space("space", &s));
        }
        SpaceVerb::Dual { file } => {
            let s = load_space(&file)?;
            let d = s.hochster_dual().map_err(|e| located(&file, e))?;
            r.lines
                .extend(text::print_space(&d).lines().map(String::from));
            r.dot = Some(dot::space("dual", &d));
        }
        SpaceVerb::Skula { file } => {
            let s = load_space(&file)?;
            let k = s.skula();
            r.lines
                .extend(text::print_space(&k).lines().map(String::from));
            r.dot = Some(dot::space("skula", &k));
        }
        SpaceVerb::Sober { file } => {
            let s = load_space(&file)?;
            let rep = s.separation_report();
            r.verdict("sober", rep.sober);
            if let Some(v) = rep.sober_witness {
                r.line(format!(
                    "witness closed={} generic_points={}",
                    s.literal(v.closed),
                    s.literal(v.generic_points)
                ));
            }
            r.dot = Some(dot::space("space", &s));
        }
        SpaceVerb::Td { file } => {
            let s = load_space(&file)?;
            let rep = s.separation_report();
            r.verdict("td", rep.td);
            let mut rows: Vec<(String, String)> = rep
                .td_witnesses
                .iter()
                .enumerate()
                .map(|(x, w)| {
                    let detail = match w {
                        Some(w) => {
                            format!("open={} closed={}", s.literal(w.open), s.literal(w.closed))
                        }
                        None => "not locally closed".into(),
                    };
                    (s.points()[x].clone(), detail)
                })
                .collect();
            rows.sort();
            for (p, d) in rows {
                r.line(format!("point {p} {d}"));
            }
            r.dot = Some(dot::space("space", &s));
        }
        SpaceVerb::Gen { file, closed } => {
            let (points, sets) = load(&file, text::parse_subbasis)?;
            let mode = if closed {
                Generate::Closeds
            } else {
                Generate::Opens
            };
            let s = topology_from_sets(points, &sets, mode).map_err(|e| located(&file, e))?;
            r.lines
                .extend(text::print_space(&s).lines().map(String::from));
            r.dot = Some(dot::space("generated", &s));
        }
    }
    Ok(r)
}

fn run_lattice(verb: LatticeVerb) -> anyhow::Result<Report> {
    let mut r = Report::new();
    let file = match &verb {
        LatticeVerb::Check { file }
        | LatticeVerb::Primes { file }
        | LatticeVerb::Spectrum { file }
        | LatticeVerb::Spatial { file }
        | LatticeVerb::Heyting { file, .. }
        | LatticeVerb::Compact { file } => file.clone(),
    };
    let l = load_lattice(&file)?;
    let labels_of = |elems: &[usize]| sorted_set(elems.iter().map(|&e| l.label(e).to_string()));
    r.dot = Some(dot::lattice("lattice", &l));
    match verb {
        LatticeVerb::Check { .. } => {
            let s = l.structure_report();
            r.line(format!("distributive={}", s.is_distributive));
            if let Some((a, b, c)) = s.distributive_witness {
                r.line(format!(
                    "distributive_witness {} {} {}",
                    l.label(a),
                    l.label(b),
                    l.label(c)
                ));
            }
            r.verdict("frame", s.is_frame);
            if let Some((a, family)) = &s.frame_witness {
                r.line(format!(
                    "frame_witness {} {}",
                    l.label(*a),
                    labels_of(family)
                ));
            }
            r.line(format!(
                "frame_law={}",
                if s.frame_law_exhaustive {
                    "exhaustive"
                } else {
                    "binary"
                }
            ));
        }
        LatticeVerb::Primes { .. } => {
            r.line(format!("primes {}", labels_of(&l.prime_elements())));
        }
        LatticeVerb::Spectrum { .. } => {
            let spec = l.spectrum().map_err(|e| located(&file, e))?;
            space_lines(&mut r, &spec.space);
            r.dot = Some(dot::space("spectrum", &spec.space));
        }
        LatticeVerb::Spatial { .. } => {
            let s = l.spatiality_check().map_err(|e| located(&file, e))?;
            r.verdict("spatial", s.spatial);
            if let Some((a, b)) = s.witness {
                r.line(format!(
                    "witness {} {} have the same points below",
                    l.label(a),
                    l.label(b)
                ));
            }
        }
        LatticeVerb::Heyting { a, b, .. } => {
            let x = l.index_of(&a).map_err(|e| located(&file, e))?;
            let y = l.index_of(&b).map_err(|e| located(&file, e))?;
            let h = l.heyting_implication(x, y).map_err(|e| located(&file, e))?;
            r.line(format!("{a} -> {b} = {}", l.label(h)));
        }
        LatticeVerb::Compact { .. } => {
            let c = l.compact_elements();
            r.line(format!("compact {}", labels_of(&c.elements)));
        }
    }
    Ok(r)
}

fn run_map(verb: MapVerb) -> anyhow::Result<Report> {
    let mut r = Report::new();
    let file = match &verb {
        MapVerb::Check { file }
        | MapVerb::Adjoint { file }
        | MapVerb::Spec { file }
        | MapVerb::Telescope { file } => file.clone(),
    };
    let m = load_map(&file)?;
    r.dot = Some(dot::lattice("target", m.target()));
    match verb {
        MapVerb::Check { .. } => match m.validate() {
            Ok(()) => r.verdict("frame_map", true),
            Err(v) => {
                r.verdict("frame_map", false);
                r.line(format!("violation {v}"));
            }
        },
        MapVerb::Adjoint { .. } => {
            let g = m.right_adjoint().map_err(|e| located(&file, e))?;
            let pairs = g
                .iter()
                .enumerate()
                .map(|(b, &a)| {
                    (
                        m.target().label(b).to_string(),
                        m.source().label(a).to_string(),
                    )
                })
                .collect();
            table_lines(&mut r, pairs);
            r.line("adjunction=verified");
        }
        MapVerb::Spec { .. } => {
            let s = m.spec_map().map_err(|e| located(&file, e))?;
            let pairs = s
                .table()
                .into_iter()
                .map(|(a, b)| (a.to_string(), b.to_string()))
                .collect();
            table_lines(&mut r, pairs);
            r.line(format!("surjective={}", s.is_surjective()));
            r.line(format!("injective={}", s.is_injective()));
            r.line(format!("homeomorphism={}", s.is_homeomorphism()));
            r.dot = Some(dot::map(
                "spec",
                s.domain.space.points(),
                s.codomain.space.points(),
                &s.points,
            ));
        }
        MapVerb::Telescope { .. } => {
            let t = telescope_check(m.target(), m.mapping()).map_err(|e| located(&file, e))?;
            r.verdict("telescope", t.holds);
            r.line(format!("join_generated={}", t.join_generated));
            r.line(format!("homeomorphism={}", t.homeomorphism));
            if let Some(w) = t.witness {
                r.line(format!(
                    "witness {} is not a join of the image",
                    m.target().label(w)
                ));
            }
        }
    }
    Ok(r)
}

fn object_arg(
    m: &SupportModel,
    file: &Path,
    name: &str,
) -> anyhow::Result<spectra_core::model::FormalObject> {
    m.object(name).cloned().map_err(|e| located(file, e))
}

fn run_model(verb: ModelVerb) -> anyhow::Result<Report> {
    let mut r = Report::new();
    if let ModelVerb::Check { file } = &verb {
        let f = load_model(file, false)?;
        match f.model.validate() {
            Ok(()) => r.verdict("valid", true),
            Err(vs) => {
                r.verdict("valid", false);
                for v in vs {
                    r.line(format!("violation {v}"));
                }
            }
        }
        r.dot = Some(dot::space("model", f.model.space()));
        if r.ok && !f.ledger.is_empty() {
            let name = file
                .file_stem()
                .map(|s| s.to_string_lossy().into_owned())
                .unwrap_or_else(|| "model".into());
            let cs = CaseStudy::from_model(&name, f.model, f.hom, f.ledger)
                .map_err(|e| located(file, e))?;
            ledger_lines(&mut r, &cs.verify());
        }
        return Ok(r);
    }
    let file = match &verb {
        ModelVerb::Check { file }
        | ModelVerb::Support { file, .. }
        | ModelVerb::Ssmall { file, .. }
        | ModelVerb::Sbig { file, .. }
        | ModelVerb::Gamma { file, .. }
        | ModelVerb::Primes { file }
        | ModelVerb::Psi { file }
        | ModelVerb::Topology { file, .. }
        | ModelVerb::Triangle { file } => file.clone(),
    };
    let f = load_model(&file, true)?;
    let m = &f.model;
    r.dot = Some(dot::space("model", m.space()));
    match verb {
        ModelVerb::Check { .. } => unreachable!("handled above"),
        ModelVerb::Support { object, .. } => {
            let x = object_arg(m, &file, &object)?;
            r.line(format!(
                "sSupp {object} = {}",
                m.literal(m.smashing_support(&x))
            ));
        }
        ModelVerb::Ssmall { object, .. } => {
            let x = object_arg(m, &file, &object)?;
            let s = m.small_support_consistency(&x).map_err(engine)?;
            r.line(format!("ssupp {object} = {}", m.literal(s)));
            r.line("consistent=true");
        }
        ModelVerb::Sbig { object, .. } => {
            let x = object_arg(m, &file, &object)?;
            let scan = m.big_prime_scan().map_err(engine)?;
            let s = m.big_support(&scan.primes, &x).map_err(engine)?;
            r.line(format!("SUPP {object} = {}", m.literal(s)));
        }
        ModelVerb::Gamma { point, .. } => {
            let g = m.gamma_at(&point).map_err(|e| located(&file, e))?;
            r.line(format!("gamma {point} = {}", m.literal(g.support)));
        }
        ModelVerb::Primes { .. } => {
            let scan = m.big_prime_scan().map_err(engine)?;
            for w in &scan.primes {
                r.line(format!("prime {}", m.literal(w.carrier)));
            }
            r.line("closed_form=agrees");
        }
        ModelVerb::Psi { .. } => {
            let psi = m.psi_model().map_err(engine)?;
            let pairs = psi
                .table(m)
                .into_iter()
                .map(|(a, b)| (a.to_string(), b.to_string()))
                .collect();
            table_lines(&mut r, pairs);
            r.line(format!("surjective={}", psi.is_surjective()));
            r.line(format!("injective={}", psi.is_injective()));
            r.line(format!("homeomorphism={}", psi.is_homeomorphism()));
            r.dot = Some(dot::map(
                "psi",
                m.space().points(),
                psi.compact_space.points(),
                &psi.map,
            ));
        }
        ModelVerb::Topology { all, .. } => {
            let filter = if all {
                ObjectFilter::All
            } else {
                ObjectFilter::Compacts
            };
            let t = m.topology_from_supports(filter).map_err(engine)?;
            for &u in t.opens() {
                r.line(format!("open {}", t.literal(u)));
            }
            let rep = t.separation_report();
            r.line(format!("t0={}", rep.t0));
            r.line(format!("sober={}", rep.sober));
            r.dot = Some(dot::space("topology", &t));
        }
        ModelVerb::Triangle { .. } => {
            let psi = m.psi_model().map_err(engine)?;
            let hs: Vec<String> = f.hom.iter().map(|h| h.point.clone()).collect();
            let chi: Vec<(String, String)> = f
                .hom
                .iter()
                .map(|h| (h.point.clone(), h.chi.clone()))
                .collect();
            let phi: Vec<(String, String)> = f
                .hom
                .iter()
                .map(|h| (h.point.clone(), h.phi.clone()))
                .collect();
            let t = m
                .triangle_check(&psi, &hs, &chi, &phi)
                .map_err(|e| located(&file, e))?;
            r.verdict("triangle", t.commutes);
            if let Some(fail) = t.failure {
                r.line(format!(
                    "witness {} phi={} via_big={}",
                    fail.hom_point, fail.phi, fail.via_big
                ));
            }
        }
    }
    Ok(r)
}

fn ledger_lines(r: &mut Report, report: &VerifyReport) {
    for e in &report.entries {
        r.line(e.to_string());
    }
    r.line(report.summary());
    r.ok &= report.all_passed();
}

fn run_case(verb: CaseVerb) -> anyhow::Result<Report> {
    let mut r = Report::new();
    let cs = match verb {
        CaseVerb::Noetherian { poset } => {
            let p = load(&poset, text::parse_poset)?;
            build_noetherian(&p).map_err(|e| located(&poset, e))?
        }
        CaseVerb::Valuation => build_valuation(),
    };
    ledger_lines(&mut r, &cs.verify());
    let m = &cs.model;
    if let Ok(psi) = m.psi_model() {
        r.dot = Some(dot::map(
            "psi",
            m.space().points(),
            psi.compact_space.points(),
            &psi.map,
        ));
    }
    Ok(r)
}

fn run(cli: Cli) -> anyhow::Result<Report> {
    match cli.noun {
        Noun::Space { verb } => run_space(verb),
        Noun::Lattice { verb } => run_lattice(verb),
        Noun::Map { verb } => run_map(verb),
        Noun::Model { verb } => run_model(verb),
        Noun::Case { verb } => run_case(verb),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let quiet = cli.quiet;
    let dot_path = cli.dot.clone();
    let report = match run(cli) {
        Ok(r) => r,
        Err(e) => {
            eprintln!("{e:#}");
            return ExitCode::from(2);
        }
    };
    if !quiet {
        for l in &report.lines {
            println!("{l}");
        }
    }
    if let Some(path) = dot_path {
        let body = report.dot.as_deref().unwrap_or("digraph empty {\n}\n");
        if let Err(e) = fs::write(&path, body) {
            eprintln!("{}: cannot write: {e}", path.display());
            return ExitCode::from(2);
        }
    }
    if report.ok {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sorted_sets() {
        assert_eq!(sorted_set(vec!["b".to_string(), "a".into()]), "{a,b}");
        assert_eq!(sorted_set(Vec::new()), "{}");
    }

    #[test]
    fn parse_errors_carry_location() {
        let e = located(
            Path::new("x.space"),
            Error::Parse {
                line: 3,
                message: "bad".into(),
            },
        );
        assert_eq!(e.to_string(), "x.space:3: bad");
        let e = located(Path::new("x.space"), Error::UnknownLabel("q".into()));
        assert_eq!(e.to_string(), "x.space: unknown label `q`");
    }

    #[test]
    fn cli_definition_is_consistent() {
        use clap::CommandFactory;
        Cli::command().debug_assert();
    }
}
