//! Worked examples packaged with ledgers of expected outcomes.
//!
//! A ledger entry names an engine operation, its arguments, and the literal it
//! must produce. Literals are sets `{a,b}`, families `{{},{a}}`, maps
//! `{a->b,c->d}` and booleans; brace contents are compared order-insensitively.

use std::fmt;

use crate::error::{Error, Result};
use crate::galois::{telescope_check, FrameMap};
use crate::lattice::FiniteLattice;
use crate::model::{FormalObject, ObjectFilter, SupportModel};
use crate::order::{FiniteSpace, Poset};
use crate::set::PointSet;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LedgerEntry {
    Expect {
        op: String,
        args: Vec<String>,
        want: String,
    },
    /// A question the model cannot decide; listed but never evaluated.
    Unasserted { op: String, args: Vec<String> },
}

impl LedgerEntry {
    pub fn expect(op: &str, args: &[&str], want: impl Into<String>) -> Self {
        LedgerEntry::Expect {
            op: op.to_string(),
            args: args.iter().map(|s| s.to_string()).collect(),
            want: want.into(),
        }
    }

    pub fn name(&self) -> String {
        let (op, args) = match self {
            LedgerEntry::Expect { op, args, .. } => (op, args),
            LedgerEntry::Unasserted { op, args } => (op, args),
        };
        std::iter::once(op.as_str())
            .chain(args.iter().map(|s| s.as_str()))
            .collect::<Vec<_>>()
            .join(" ")
    }
}

impl fmt::Display for LedgerEntry {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LedgerEntry::Expect { want, .. } => write!(f, "expect {} = {}", self.name(), want),
            LedgerEntry::Unasserted { .. } => write!(f, "unasserted {}", self.name()),
        }
    }
}

/// One row of the homological comparison tables.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HomRow {
    pub point: String,
    pub chi: String,
    pub phi: String,
}

#[derive(Clone, Debug)]
pub struct CaseStudy {
    pub name: String,
    pub model: SupportModel,
    pub compact_ideal_lattice: FiniteLattice,
    /// From `compact_ideal_lattice` into the frame of smashing ideals.
    pub inflation: FrameMap,
    /// Prime element of the frame → model point it names.
    pub point_names: Vec<(String, String)>,
    pub hom: Vec<HomRow>,
    pub ledger: Vec<LedgerEntry>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Status {
    Pass,
    Fail,
    Skip,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EntryOutcome {
    pub name: String,
    pub status: Status,
    pub got: String,
    pub want: String,
}

impl fmt::Display for EntryOutcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.status {
            Status::Pass => write!(f, "PASS {} got={} want={}", self.name, self.got, self.want),
            Status::Fail => write!(f, "FAIL {} got={} want={}", self.name, self.got, self.want),
            Status::Skip => write!(f, "SKIP {} (unasserted)", self.name),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VerifyReport {
    pub case: String,
    pub entries: Vec<EntryOutcome>,
}

impl VerifyReport {
    fn count(&self, s: Status) -> usize {
        self.entries.iter().filter(|e| e.status == s).count()
    }

    pub fn passed(&self) -> usize {
        self.count(Status::Pass)
    }

    pub fn failed(&self) -> usize {
        self.count(Status::Fail)
    }

    pub fn skipped(&self) -> usize {
        self.count(Status::Skip)
    }

    pub fn all_passed(&self) -> bool {
        self.failed() == 0
    }

    pub fn summary(&self) -> String {
        format!(
            "summary case={} pass={} fail={} skip={}",
            self.case,
            self.passed(),
            self.failed(),
            self.skipped()
        )
    }
}

impl fmt::Display for VerifyReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for e in &self.entries {
            writeln!(f, "{e}")?;
        }
        writeln!(f, "{}", self.summary())
    }
}

/// Sort brace contents recursively so literals compare as sets.
pub fn normalize_literal(s: &str) -> String {
    fn parse(chars: &[char], pos: &mut usize) -> String {
        if chars.get(*pos) != Some(&'{') {
            let start = *pos;
            while *pos < chars.len() && !matches!(chars[*pos], ',' | '}') {
                *pos += 1;
            }
            return chars[start..*pos].iter().collect();
        }
        *pos += 1;
        let mut items = Vec::new();
        while *pos < chars.len() && chars[*pos] != '}' {
            items.push(parse(chars, pos));
            if chars.get(*pos) == Some(&',') {
                *pos += 1;
            }
        }
        *pos += 1;
        items.retain(|i| !i.is_empty());
        items.sort();
        format!("{{{}}}", items.join(","))
    }
    let chars: Vec<char> = s.chars().filter(|c| !c.is_whitespace()).collect();
    let mut pos = 0;
    let mut out = String::new();
    while pos < chars.len() {
        let before = pos;
        out.push_str(&parse(&chars, &mut pos));
        if pos == before {
            // stray closing brace or comma
            out.push(chars[pos]);
            pos += 1;
        }
    }
    out
}

pub fn family_literal(space: &FiniteSpace, family: &[PointSet]) -> String {
    let items: Vec<String> = family.iter().map(|&s| space.literal(s)).collect();
    normalize_literal(&format!("{{{}}}", items.join(",")))
}

pub fn map_literal<A: AsRef<str>, B: AsRef<str>>(pairs: &[(A, B)]) -> String {
    let mut items: Vec<String> = pairs
        .iter()
        .map(|(a, b)| format!("{}->{}", a.as_ref(), b.as_ref()))
        .collect();
    items.sort();
    format!("{{{}}}", items.join(","))
}

fn label_set<S: AsRef<str>>(labels: &[S]) -> String {
    let mut v: Vec<&str> = labels.iter().map(|s| s.as_ref()).collect();
    v.sort_unstable();
    format!("{{{}}}", v.join(","))
}

impl CaseStudy {
    /// Package a model whose frame of smashing ideals is its own open-set
    /// lattice; the compact ideals are the sublattice generated by compact
    /// supports.
    pub fn from_model(
        name: &str,
        model: SupportModel,
        hom: Vec<HomRow>,
        ledger: Vec<LedgerEntry>,
    ) -> Result<Self> {
        let psi = model.psi_model()?;
        let space = model.space();
        let n = space.len();
        let frame = psi.inclusion.target();
        let mut point_names = Vec::new();
        for &e in &frame.prime_elements() {
            let open = space.opens()[e];
            let x = (0..n)
                .find(|&x| space.point_closure(x).complement(n) == open)
                .ok_or_else(|| Error::Internal("prime open does not come from a point".into()))?;
            point_names.push((frame.label(e).to_string(), space.points()[x].clone()));
        }
        Ok(CaseStudy {
            name: name.to_string(),
            compact_ideal_lattice: psi.compact_lattice.clone(),
            inflation: psi.inclusion.clone(),
            model,
            point_names,
            hom,
            ledger,
        })
    }

    pub fn frame(&self) -> &FiniteLattice {
        self.inflation.target()
    }

    pub fn hom_points(&self) -> Vec<String> {
        self.hom.iter().map(|r| r.point.clone()).collect()
    }

    pub fn chi_table(&self) -> Vec<(String, String)> {
        self.hom
            .iter()
            .map(|r| (r.point.clone(), r.chi.clone()))
            .collect()
    }

    pub fn phi_table(&self) -> Vec<(String, String)> {
        self.hom
            .iter()
            .map(|r| (r.point.clone(), r.phi.clone()))
            .collect()
    }

    /// Spectrum of the frame with its points renamed to model points.
    pub fn frame_spectrum(&self) -> Result<FiniteSpace> {
        let frame = self.frame();
        let spec = frame.spectrum()?;
        let names = spec
            .primes
            .iter()
            .map(|&e| {
                self.point_names
                    .iter()
                    .find(|(l, _)| l == frame.label(e))
                    .map(|(_, p)| p.clone())
                    .ok_or_else(|| {
                        Error::Precondition(format!("prime `{}` has no point name", frame.label(e)))
                    })
            })
            .collect::<Result<Vec<_>>>()?;
        spec.space.relabel(names)
    }

    fn object(&self, args: &[String], i: usize) -> Result<FormalObject> {
        let name = args
            .get(i)
            .ok_or_else(|| Error::Precondition("missing object argument".into()))?;
        Ok(self.model.object(name)?.clone())
    }

    fn frame_element(&self, args: &[String]) -> Result<usize> {
        let name = args
            .first()
            .ok_or_else(|| Error::Precondition("missing element argument".into()))?;
        self.frame().index_of(name)
    }

    /// Run one ledger operation and render its result as a literal.
    pub fn evaluate(&self, op: &str, args: &[String]) -> Result<String> {
        let m = &self.model;
        let space = m.space();
        let frame = self.frame();
        let set = |s: PointSet| space.literal(s);
        let b = |v: bool| v.to_string();
        let out = match op {
            "frame.primes" => {
                let p: Vec<&str> = frame
                    .prime_elements()
                    .iter()
                    .map(|&e| frame.label(e))
                    .collect();
                label_set(&p)
            }
            "frame.prime" => b(frame.is_prime(self.frame_element(args)?)),
            "frame.coatoms" => {
                let p: Vec<&str> = frame.coatoms().iter().map(|&e| frame.label(e)).collect();
                label_set(&p)
            }
            "frame.spatial" => b(frame.spatiality_check()?.spatial),
            "frame.spectrum.opens" => {
                let s = self.frame_spectrum()?;
                family_literal(&s, s.opens())
            }
            "space.points" => label_set(space.points()),
            "space.opens" => family_literal(space, space.opens()),
            "space.t0" => b(space.separation_report().t0),
            "space.sober" => b(space.separation_report().sober),
            "space.td" => b(space.separation_report().td),
            "model.valid" => b(m.validate().is_ok()),
            "model.gamma" => {
                let p = args
                    .first()
                    .ok_or_else(|| Error::Precondition("missing point argument".into()))?;
                set(m.gamma_at(p)?.support)
            }
            "model.ssupp" => set(m.small_support_consistency(&self.object(args, 0)?)?),
            "model.sSupp" => set(m.smashing_support(&self.object(args, 0)?)),
            "model.SUPP" => {
                let scan = m.big_prime_scan()?;
                set(m.big_support(&scan.primes, &self.object(args, 0)?)?)
            }
            "model.tensor" => set(m
                .tensor(&self.object(args, 0)?, &self.object(args, 1)?)
                .support),
            "model.sum" => set(m
                .sum(&self.object(args, 0)?, &self.object(args, 1)?)
                .support),
            "model.bigprimes" => {
                let scan = m.big_prime_scan()?;
                let carriers: Vec<PointSet> = scan.primes.iter().map(|w| w.carrier).collect();
                family_literal(space, &carriers)
            }
            "topology.compacts.opens" | "topology.all.opens" => {
                let filter = if op == "topology.all.opens" {
                    ObjectFilter::All
                } else {
                    ObjectFilter::Compacts
                };
                let t = m.topology_from_supports(filter)?;
                family_literal(&t, t.opens())
            }
            "topology.compacts.sober" => b(m
                .topology_from_supports(ObjectFilter::Compacts)?
                .separation_report()
                .sober),
            "psi.map" => map_literal(&m.psi_model()?.table(m)),
            "psi.compact_points" => label_set(m.psi_model()?.compact_space.points()),
            "psi.surjective" => b(m.psi_model()?.is_surjective()),
            "psi.injective" => b(m.psi_model()?.is_injective()),
            "psi.homeomorphism" => b(m.psi_model()?.is_homeomorphism()),
            "telescope" => {
                let image: Vec<usize> = self.inflation.mapping().to_vec();
                b(telescope_check(frame, &image)?.holds)
            }
            "inflation.adjoint" => {
                let g = self.inflation.right_adjoint()?;
                let src = self.inflation.source();
                let pairs: Vec<(&str, &str)> = g
                    .iter()
                    .enumerate()
                    .map(|(x, &y)| (frame.label(x), src.label(y)))
                    .collect();
                map_literal(&pairs)
            }
            "inflation.psi" => map_literal(&self.inflation.spec_map()?.table()),
            "triangle" => {
                let psi = m.psi_model()?;
                b(m.triangle_check(
                    &psi,
                    &self.hom_points(),
                    &self.chi_table(),
                    &self.phi_table(),
                )?
                .commutes)
            }
            _ => {
                return Err(Error::Precondition(format!(
                    "unknown ledger operation `{op}`"
                )))
            }
        };
        Ok(out)
    }

    pub fn verify(&self) -> VerifyReport {
        let entries = self
            .ledger
            .iter()
            .map(|entry| match entry {
                LedgerEntry::Expect { op, args, want } => {
                    let got = match self.evaluate(op, args) {
                        Ok(v) => v,
                        Err(e) => format!("error({e})"),
                    };
                    let status = if normalize_literal(&got) == normalize_literal(want) {
                        Status::Pass
                    } else {
                        Status::Fail
                    };
                    EntryOutcome {
                        name: entry.name(),
                        status,
                        got,
                        want: want.clone(),
                    }
                }
                LedgerEntry::Unasserted { .. } => EntryOutcome {
                    name: entry.name(),
                    status: Status::Skip,
                    got: String::new(),
                    want: String::new(),
                },
            })
            .collect();
        VerifyReport {
            case: self.name.clone(),
            entries,
        }
    }
}

/// The model attached to a finite poset of primes ordered by inclusion: the
/// smashing spectrum is the Hochster dual of the down-set topology, with a
/// residue object per point, a compact per point supported on its up-set, and
/// the unit. The ledger is computed from the poset alone.
pub fn build_noetherian(poset: &Poset) -> Result<CaseStudy> {
    let n = poset.len();
    let zariski = FiniteSpace::down_set_topology(poset)?;
    let space = zariski.hochster_dual()?;
    let labels = poset.labels();

    let mut objects = vec![FormalObject::new("R", space.full(), true)];
    for (p, l) in labels.iter().enumerate() {
        objects.push(FormalObject::new(
            format!("k_{l}"),
            PointSet::singleton(p),
            false,
        ));
        objects.push(FormalObject::new(format!("K_{l}"), poset.up_set(p), true));
    }
    let model = SupportModel::new(space, objects.clone(), "R")?;

    let lit = |s: PointSet| crate::label::set_literal(labels, s);
    let fam = |f: &[PointSet]| {
        let items: Vec<String> = f.iter().map(|&s| lit(s)).collect();
        normalize_literal(&format!("{{{}}}", items.join(",")))
    };
    let ident: Vec<(&str, &str)> = labels.iter().map(|l| (l.as_str(), l.as_str())).collect();
    let co_singletons: Vec<PointSet> = (0..n).map(|p| PointSet::full(n).without(p)).collect();

    let mut ledger = vec![
        LedgerEntry::expect("space.points", &[], lit(PointSet::full(n))),
        LedgerEntry::expect("space.opens", &[], fam(&poset.up_sets())),
        LedgerEntry::expect("space.t0", &[], "true"),
        LedgerEntry::expect("space.sober", &[], "true"),
        LedgerEntry::expect("space.td", &[], "true"),
        LedgerEntry::expect("frame.spatial", &[], "true"),
        LedgerEntry::expect("model.bigprimes", &[], fam(&co_singletons)),
        LedgerEntry::expect("topology.compacts.opens", &[], fam(&poset.up_sets())),
        LedgerEntry::expect(
            "topology.all.opens",
            &[],
            fam(&PointSet::all_subsets(n).collect::<Vec<_>>()),
        ),
        LedgerEntry::expect("psi.map", &[], map_literal(&ident)),
        LedgerEntry::expect("psi.surjective", &[], "true"),
        LedgerEntry::expect("psi.injective", &[], "true"),
        LedgerEntry::expect("psi.homeomorphism", &[], "true"),
        LedgerEntry::expect("telescope", &[], "true"),
        LedgerEntry::expect("triangle", &[], "true"),
    ];
    for (p, l) in labels.iter().enumerate() {
        ledger.push(LedgerEntry::expect(
            "model.gamma",
            &[l],
            lit(PointSet::singleton(p)),
        ));
    }
    for o in &objects {
        ledger.push(LedgerEntry::expect(
            "model.ssupp",
            &[&o.name],
            lit(o.support),
        ));
        ledger.push(LedgerEntry::expect(
            "model.SUPP",
            &[&o.name],
            lit(o.support),
        ));
        ledger.push(LedgerEntry::expect(
            "model.sSupp",
            &[&o.name],
            lit(poset.up_closure(o.support)),
        ));
    }

    let hom = labels
        .iter()
        .map(|l| HomRow {
            point: l.clone(),
            chi: l.clone(),
            phi: l.clone(),
        })
        .collect();
    CaseStudy::from_model("noetherian", model, hom, ledger)
}

/// The five-element frame of smashing ideals of a rank one valuation domain
/// with non-principal maximal ideal.
pub fn valuation_frame() -> FiniteLattice {
    FiniteLattice::from_order(
        &["0", "loc_Qm", "loc_m", "Dm_A", "D_A"],
        &[
            ("0", "loc_Qm"),
            ("loc_Qm", "loc_m"),
            ("loc_Qm", "Dm_A"),
            ("loc_m", "D_A"),
            ("Dm_A", "D_A"),
        ],
    )
    .expect("valuation frame is a lattice")
}

pub fn build_valuation() -> CaseStudy {
    let space = FiniteSpace::from_labels(
        &["0", "P", "Q"],
        &[&[], &["0"], &["0", "Q"], &["0", "P"], &["0", "P", "Q"]],
    )
    .expect("valuation spectrum");
    let s = |l: &[&str]| space.subset(l).expect("known points");
    let objects = vec![
        FormalObject::new("A", s(&["0", "P", "Q"]), true),
        FormalObject::new("A_a", s(&["0", "P"]), true),
        FormalObject::new("m", s(&["0", "Q"]), false),
        FormalObject::new("k", s(&["P"]), false),
        FormalObject::new("Q", s(&["Q"]), false),
        FormalObject::new("Q_m", s(&["0"]), false),
    ];
    let model = SupportModel::new(space, objects, "A").expect("valuation model is valid");

    let frame = valuation_frame();
    let compact = FiniteLattice::chain(&["0", "s", "1"]).expect("chain");
    let inflation = FrameMap::from_labels(
        compact.clone(),
        frame,
        &[("0", "0"), ("s", "Dm_A"), ("1", "D_A")],
    )
    .expect("inflation");

    let e = LedgerEntry::expect;
    let ledger = vec![
        e("frame.primes", &[], "{0,Dm_A,loc_m}"),
        e("frame.prime", &["loc_m"], "true"),
        e("frame.prime", &["Dm_A"], "true"),
        e("frame.coatoms", &[], "{Dm_A,loc_m}"),
        e("frame.spatial", &[], "true"),
        e("frame.spectrum.opens", &[], "{{},{0},{0,Q},{0,P},{0,P,Q}}"),
        e("space.points", &[], "{0,P,Q}"),
        e("space.opens", &[], "{{},{0},{0,Q},{0,P},{0,P,Q}}"),
        e("space.sober", &[], "true"),
        e("space.td", &[], "true"),
        e("model.valid", &[], "true"),
        e("model.gamma", &["P"], "{P}"),
        e("model.gamma", &["Q"], "{Q}"),
        e("model.gamma", &["0"], "{0}"),
        e("model.ssupp", &["A_a"], "{0,P}"),
        e("model.ssupp", &["m"], "{0,Q}"),
        e("model.sSupp", &["k"], "{0,P}"),
        e("model.sSupp", &["A_a"], "{0,P}"),
        e("model.tensor", &["m", "k"], "{}"),
        e("model.tensor", &["A_a", "A_a"], "{0,P}"),
        e("model.bigprimes", &[], "{{P,Q},{0,Q},{0,P}}"),
        e("topology.compacts.opens", &[], "{{},{0,P},{0,P,Q}}"),
        e("topology.compacts.sober", &[], "false"),
        e("psi.map", &[], "{0->0,P->0,Q->Q}"),
        e("psi.compact_points", &[], "{0,Q}"),
        e("psi.surjective", &[], "true"),
        e("psi.injective", &[], "false"),
        e("telescope", &[], "false"),
        e(
            "inflation.adjoint",
            &[],
            "{0->0,loc_Qm->0,loc_m->0,Dm_A->s,D_A->1}",
        ),
        e("inflation.psi", &[], "{0->0,loc_m->0,Dm_A->s}"),
        e("triangle", &[], "true"),
        LedgerEntry::Unasserted {
            op: "model.maximal_localizing".into(),
            args: vec!["Q".into(), "k".into()],
        },
    ];

    CaseStudy {
        name: "valuation".into(),
        model,
        compact_ideal_lattice: compact,
        inflation,
        point_names: vec![
            ("0".into(), "0".into()),
            ("loc_m".into(), "P".into()),
            ("Dm_A".into(), "Q".into()),
        ],
        hom: Vec::new(),
        ledger,
    }
}
