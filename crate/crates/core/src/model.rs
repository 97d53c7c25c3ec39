//! Desk-scale models of big tensor-triangulated categories.
//!
//! A [`SupportModel`] is a finite smashing spectrum together with a table of
//! formal objects, each recorded by its small smashing support and whether it
//! is compact. The model regime is the one where every localizing ideal is
//! radical and is classified by its support: an object is zero exactly when
//! its support is empty, tensor support is intersection, sum support is union.
//! Cones are not modelled.

use std::collections::HashSet;
use std::fmt;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::galois::{FrameMap, SpecMap};
use crate::lattice::FiniteLattice;
use crate::order::{topology_from_sets, FiniteSpace, Generate};
use crate::set::PointSet;

/// Largest point count accepted by [`SupportModel::big_prime_scan`].
pub const BIG_PRIME_SCAN_LIMIT: usize = 12;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FormalObject {
    pub name: String,
    pub support: PointSet,
    pub compact: bool,
}

impl FormalObject {
    pub fn new(name: impl Into<String>, support: PointSet, compact: bool) -> Self {
        FormalObject {
            name: name.into(),
            support,
            compact,
        }
    }

    pub fn is_zero(&self) -> bool {
        self.support.is_empty()
    }
}

/// A localizing ideal: all objects supported inside `carrier`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LocalizingIdeal {
    pub carrier: PointSet,
}

/// A smashing ideal, recorded by its open in the smashing spectrum.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SmashingIdeal {
    open: PointSet,
}

impl SmashingIdeal {
    pub fn open(&self) -> PointSet {
        self.open
    }
}

/// Ideals whose membership is decided by support inclusion.
pub trait Ideal {
    fn bound(&self) -> PointSet;

    fn contains(&self, x: &FormalObject) -> bool {
        x.support.is_subset(self.bound())
    }
}

impl Ideal for LocalizingIdeal {
    fn bound(&self) -> PointSet {
        self.carrier
    }
}

impl Ideal for SmashingIdeal {
    fn bound(&self) -> PointSet {
        self.open
    }
}

impl LocalizingIdeal {
    pub fn new(carrier: PointSet) -> Self {
        LocalizingIdeal { carrier }
    }

    /// Intersection; checks `I ∩ J = √(I ⊗ J)` on the way.
    pub fn meet(&self, other: &Self) -> Self {
        let meet = LocalizingIdeal::new(self.carrier.intersection(other.carrier));
        assert_eq!(meet, self.tensor(other).radical(), "I ∩ J = √(I ⊗ J) fails");
        meet
    }

    /// Tensor product of ideals; in the radical regime supports intersect.
    pub fn tensor(&self, other: &Self) -> Self {
        LocalizingIdeal::new(self.carrier.intersection(other.carrier))
    }

    pub fn join<'a, I: IntoIterator<Item = &'a LocalizingIdeal>>(family: I) -> Self {
        LocalizingIdeal::new(
            family
                .into_iter()
                .fold(PointSet::EMPTY, |acc, i| acc.union(i.carrier)),
        )
    }

    /// Every ideal is radical in the model regime.
    pub fn radical(&self) -> Self {
        *self
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ModelViolation {
    NotT0 { a: String, b: String },
    NotSober { closed: String },
    NotTD { point: String },
    SupportOutOfRange { object: String },
    CompactSupportNotOpen { object: String },
    MissingUnit { name: String },
    UnitSupportNotFull { name: String },
    UnitNotCompact { name: String },
}

impl fmt::Display for ModelViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ModelViolation::NotT0 { a, b } => {
                write!(f, "space not T0: `{a}` and `{b}` are indistinguishable")
            }
            ModelViolation::NotSober { closed } => {
                write!(f, "space not sober: irreducible closed set {closed}")
            }
            ModelViolation::NotTD { point } => {
                write!(f, "space not TD: `{point}` is not locally closed")
            }
            ModelViolation::SupportOutOfRange { object } => {
                write!(f, "object `{object}` has support outside the space")
            }
            ModelViolation::CompactSupportNotOpen { object } => {
                write!(
                    f,
                    "compact object `{object}` has a support that is not open"
                )
            }
            ModelViolation::MissingUnit { name } => write!(f, "unit `{name}` is not in the table"),
            ModelViolation::UnitSupportNotFull { name } => {
                write!(f, "unit `{name}` does not have full support")
            }
            ModelViolation::UnitNotCompact { name } => write!(f, "unit `{name}` is not compact"),
        }
    }
}

/// Which objects feed [`SupportModel::topology_from_supports`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ObjectFilter {
    Compacts,
    All,
    None,
}

/// Result of the brute-force big-prime scan.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BigPrimeScan {
    /// Primes found by the definition check, in carrier order.
    pub primes: Vec<LocalizingIdeal>,
    /// Complements of singletons, in the same order.
    pub closed_form: Vec<LocalizingIdeal>,
}

/// The comparison map from the smashing spectrum to the spectrum of the
/// sublattice generated by compact supports.
#[derive(Clone, Debug)]
pub struct PsiModel {
    /// The sublattice `Lc` of opens generated by supports of compacts;
    /// element `i` is `compact_opens[i]`.
    pub compact_lattice: FiniteLattice,
    pub compact_opens: Vec<PointSet>,
    pub inclusion: FrameMap,
    pub spec: SpecMap,
    /// Spectrum of `Lc`. A point is labelled by the model point `p` whose prime
    /// open `X \ cl{p}` it equals, when there is one.
    pub compact_space: FiniteSpace,
    /// Model point index → `compact_space` point index.
    pub map: Vec<usize>,
}

impl PsiModel {
    pub fn is_surjective(&self) -> bool {
        (0..self.compact_space.len()).all(|c| self.map.contains(&c))
    }

    pub fn is_injective(&self) -> bool {
        self.map.iter().collect::<HashSet<_>>().len() == self.map.len()
    }

    pub fn is_homeomorphism(&self) -> bool {
        self.spec.is_homeomorphism()
    }

    /// `ψ⁻¹(W)` for a subset of the compact spectrum, in model indices.
    pub fn preimage(&self, w: PointSet) -> PointSet {
        PointSet::from_indices((0..self.map.len()).filter(|&x| w.contains(self.map[x])))
    }

    /// `(model point, compact point)` label pairs in model point order.
    pub fn table<'a>(&'a self, model: &'a SupportModel) -> Vec<(&'a str, &'a str)> {
        self.map
            .iter()
            .enumerate()
            .map(|(x, &c)| {
                (
                    model.space().points()[x].as_str(),
                    self.compact_space.points()[c].as_str(),
                )
            })
            .collect()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TriangleFailure {
    pub hom_point: String,
    /// `ω(χ(h))`
    pub via_big: String,
    /// `φ(h)`
    pub phi: String,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TriangleReport {
    pub commutes: bool,
    pub failure: Option<TriangleFailure>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SupportModel {
    space: FiniteSpace,
    objects: Vec<FormalObject>,
    unit: String,
}

impl SupportModel {
    /// Assemble without checking model invariants; see [`SupportModel::validate`].
    /// Object names must be distinct.
    pub fn from_parts(space: FiniteSpace, objects: Vec<FormalObject>, unit: &str) -> Result<Self> {
        let mut seen = HashSet::new();
        for o in &objects {
            if !seen.insert(o.name.as_str()) {
                return Err(Error::DuplicateLabel(o.name.clone()));
            }
        }
        Ok(SupportModel {
            space,
            objects,
            unit: unit.to_string(),
        })
    }

    /// Assemble and validate.
    pub fn new(space: FiniteSpace, objects: Vec<FormalObject>, unit: &str) -> Result<Self> {
        let m = SupportModel::from_parts(space, objects, unit)?;
        if let Err(violations) = m.validate() {
            let msgs: Vec<String> = violations.iter().map(|v| v.to_string()).collect();
            return Err(Error::Precondition(format!(
                "invalid model: {}",
                msgs.join("; ")
            )));
        }
        Ok(m)
    }

    /// All violated model invariants, in a fixed order.
    pub fn validate(&self) -> std::result::Result<(), Vec<ModelViolation>> {
        let mut out = Vec::new();
        let s = &self.space;
        let report = s.separation_report();
        if let Some((a, b)) = report.t0_witness {
            out.push(ModelViolation::NotT0 {
                a: s.points()[a].clone(),
                b: s.points()[b].clone(),
            });
        }
        if let Some(v) = &report.sober_witness {
            out.push(ModelViolation::NotSober {
                closed: s.literal(v.closed),
            });
        }
        for (x, w) in report.td_witnesses.iter().enumerate() {
            if w.is_none() {
                out.push(ModelViolation::NotTD {
                    point: s.points()[x].clone(),
                });
            }
        }
        for o in &self.objects {
            if !o.support.is_subset(s.full()) {
                out.push(ModelViolation::SupportOutOfRange {
                    object: o.name.clone(),
                });
            } else if o.compact && !s.is_open(o.support) {
                out.push(ModelViolation::CompactSupportNotOpen {
                    object: o.name.clone(),
                });
            }
        }
        match self.objects.iter().find(|o| o.name == self.unit) {
            None => out.push(ModelViolation::MissingUnit {
                name: self.unit.clone(),
            }),
            Some(u) => {
                if u.support != s.full() {
                    out.push(ModelViolation::UnitSupportNotFull {
                        name: self.unit.clone(),
                    });
                }
                if !u.compact {
                    out.push(ModelViolation::UnitNotCompact {
                        name: self.unit.clone(),
                    });
                }
            }
        }
        if out.is_empty() {
            Ok(())
        } else {
            Err(out)
        }
    }

    pub fn space(&self) -> &FiniteSpace {
        &self.space
    }

    pub fn objects(&self) -> &[FormalObject] {
        &self.objects
    }

    pub fn object(&self, name: &str) -> Result<&FormalObject> {
        self.objects
            .iter()
            .find(|o| o.name == name)
            .ok_or_else(|| Error::UnknownLabel(name.to_string()))
    }

    pub fn unit_name(&self) -> &str {
        &self.unit
    }

    pub fn unit(&self) -> FormalObject {
        FormalObject::new(self.unit.clone(), self.space.full(), true)
    }

    pub fn zero(&self) -> FormalObject {
        FormalObject::new("0", PointSet::EMPTY, true)
    }

    pub fn literal(&self, s: PointSet) -> String {
        self.space.literal(s)
    }

    pub fn tensor(&self, x: &FormalObject, y: &FormalObject) -> FormalObject {
        FormalObject::new(
            format!("({}⊗{})", x.name, y.name),
            x.support.intersection(y.support),
            x.compact && y.compact,
        )
    }

    pub fn sum(&self, x: &FormalObject, y: &FormalObject) -> FormalObject {
        FormalObject::new(
            format!("({}⊕{})", x.name, y.name),
            x.support.union(y.support),
            x.compact && y.compact,
        )
    }

    pub fn suspend(&self, x: &FormalObject) -> FormalObject {
        FormalObject::new(format!("Σ{}", x.name), x.support, x.compact)
    }

    pub fn smashing_ideal(&self, open: PointSet) -> Result<SmashingIdeal> {
        if self.space.is_open(open) {
            Ok(SmashingIdeal { open })
        } else {
            Err(Error::Precondition(format!(
                "{} is not open in the smashing spectrum",
                self.literal(open)
            )))
        }
    }

    /// The prime smashing ideal at a point: the open `X \ cl{p}`.
    pub fn prime_smashing_ideal(&self, p: usize) -> SmashingIdeal {
        let open = self.space.point_closure(p).complement(self.space.len());
        SmashingIdeal { open }
    }

    pub fn member<I: Ideal>(&self, x: &FormalObject, ideal: &I) -> bool {
        ideal.contains(x)
    }

    /// Left idempotent `E_S`, supported on `U_S`.
    pub fn idempotent_e(&self, s: &SmashingIdeal) -> FormalObject {
        FormalObject::new(format!("E{}", self.literal(s.open)), s.open, false)
    }

    /// Right idempotent `F_S`, supported on `V_S`.
    pub fn idempotent_f(&self, s: &SmashingIdeal) -> FormalObject {
        let f = FormalObject::new(
            format!("F{}", self.literal(s.open)),
            s.open.complement(self.space.len()),
            false,
        );
        debug_assert!(self.tensor(&self.idempotent_e(s), &f).is_zero());
        f
    }

    /// Rickard idempotent `Γ_P = E_S ⊗ F_P`, computed for every open `S` with
    /// `U_S ∩ V_P = {P}`; all choices must agree.
    pub fn gamma(&self, p: usize) -> Result<FormalObject> {
        let label = self
            .space
            .points()
            .get(p)
            .ok_or_else(|| Error::UnknownLabel(format!("#{p}")))?;
        let f_p = self.idempotent_f(&self.prime_smashing_ideal(p));
        let target = PointSet::singleton(p);
        let mut supports = self
            .space
            .opens()
            .iter()
            .filter(|u| u.intersection(f_p.support) == target)
            .map(|&u| {
                self.tensor(&self.idempotent_e(&SmashingIdeal { open: u }), &f_p)
                    .support
            });
        let first = supports
            .next()
            .ok_or_else(|| Error::Precondition(format!("point `{label}` is not locally closed")))?;
        if let Some(other) = supports.find(|&s| s != first) {
            return Err(Error::Internal(format!(
                "Γ at `{label}` depends on the chosen open: {} vs {}",
                self.literal(first),
                self.literal(other)
            )));
        }
        if first != target {
            return Err(Error::Internal(format!(
                "Γ at `{label}` has support {}",
                self.literal(first)
            )));
        }
        Ok(FormalObject::new(format!("Γ_{label}"), first, false))
    }

    pub fn gamma_at(&self, label: &str) -> Result<FormalObject> {
        self.gamma(self.space.index_of(label)?)
    }

    /// Big smashing support: the prime smashing ideals not containing `x`,
    /// i.e. points `P` with `cl{P} ∩ supp x` nonempty.
    pub fn smashing_support(&self, x: &FormalObject) -> PointSet {
        PointSet::from_indices((0..self.space.len()).filter(|&p| {
            let f_p = self.idempotent_f(&self.prime_smashing_ideal(p));
            !self.tensor(&f_p, x).is_zero()
        }))
    }

    /// Small support recomputed as `{P : Γ_P ⊗ x != 0}` and checked against the
    /// stored support.
    pub fn small_support_consistency(&self, x: &FormalObject) -> Result<PointSet> {
        let mut recomputed = PointSet::EMPTY;
        for p in 0..self.space.len() {
            if !self.tensor(&self.gamma(p)?, x).is_zero() {
                recomputed = recomputed.with(p);
            }
        }
        if recomputed != x.support {
            return Err(Error::Internal(format!(
                "small support of `{}` recomputes to {} but is stored as {}",
                x.name,
                self.literal(recomputed),
                self.literal(x.support)
            )));
        }
        Ok(recomputed)
    }

    /// Enumerate every proper carrier and keep those that are meet-prime among
    /// localizing ideals, by the exhaustive pair check. The co-singleton closed
    /// form is computed separately and must agree.
    pub fn big_prime_scan(&self) -> Result<BigPrimeScan> {
        let n = self.space.len();
        if n > BIG_PRIME_SCAN_LIMIT {
            return Err(Error::SizeGuard(format!(
                "big prime scan is limited to {BIG_PRIME_SCAN_LIMIT} points, model has {n}"
            )));
        }
        let primes: Vec<LocalizingIdeal> = scan_meet_primes(n)
            .into_iter()
            .map(LocalizingIdeal::new)
            .collect();
        let closed_form: Vec<LocalizingIdeal> = co_singletons(n)
            .into_iter()
            .map(LocalizingIdeal::new)
            .collect();
        if primes != closed_form {
            return Err(Error::Internal(
                "brute-force primes differ from the co-singleton closed form".into(),
            ));
        }
        Ok(BigPrimeScan {
            primes,
            closed_form,
        })
    }

    /// `SUPP x`: primes not containing `x`, each read back as the point it omits.
    pub fn big_support(&self, primes: &[LocalizingIdeal], x: &FormalObject) -> Result<PointSet> {
        let n = self.space.len();
        let mut out = PointSet::EMPTY;
        for w in primes {
            let missing = w.carrier.complement(n);
            if missing.len() != 1 {
                return Err(Error::Internal(format!(
                    "prime carrier {} is not a co-singleton",
                    self.literal(w.carrier)
                )));
            }
            if !w.contains(x) {
                out = out.union(missing);
            }
        }
        if out != x.support {
            return Err(Error::Internal(format!(
                "SUPP `{}` = {} differs from its support {}",
                x.name,
                self.literal(out),
                self.literal(x.support)
            )));
        }
        Ok(out)
    }

    /// Topology on the points whose opens are generated by the big supports of
    /// the selected objects.
    pub fn topology_from_supports(&self, filter: ObjectFilter) -> Result<FiniteSpace> {
        let scan = self.big_prime_scan()?;
        let gens = self
            .objects
            .iter()
            .filter(|o| match filter {
                ObjectFilter::Compacts => o.compact,
                ObjectFilter::All => true,
                ObjectFilter::None => false,
            })
            .map(|o| self.big_support(&scan.primes, o))
            .collect::<Result<Vec<_>>>()?;
        topology_from_sets(self.space.points().to_vec(), &gens, Generate::Opens)
    }

    /// Build `Lc` from the supports of compact objects, include it into the
    /// frame of opens, and take `Spec` of the inclusion. Checks
    /// `ψ⁻¹(Supp t) = sSupp t` for every compact `t`.
    pub fn psi_model(&self) -> Result<PsiModel> {
        let space = &self.space;
        let n = space.len();
        let opens_lattice = FiniteLattice::of_opens(space)?;

        // sublattice of opens generated by compact supports
        let mut lc: Vec<PointSet> = vec![PointSet::EMPTY, space.full()];
        lc.extend(self.objects.iter().filter(|o| o.compact).map(|o| o.support));
        crate::set::canonicalize(&mut lc);
        loop {
            let mut next = lc.clone();
            for &a in &lc {
                for &b in &lc {
                    next.push(a.union(b));
                    next.push(a.intersection(b));
                }
            }
            crate::set::canonicalize(&mut next);
            if next == lc {
                break;
            }
            lc = next;
        }
        let elems = lc
            .iter()
            .map(|&u| {
                space.opens().iter().position(|&o| o == u).ok_or_else(|| {
                    Error::Precondition(format!("compact support {} is not open", space.literal(u)))
                })
            })
            .collect::<Result<Vec<_>>>()?;
        let inclusion = FrameMap::inclusion(&opens_lattice, &elems)?;
        let spec = inclusion.spec_map()?;

        // model point behind each prime open X \ cl{p}
        let prime_open: Vec<PointSet> = (0..n)
            .map(|p| space.point_closure(p).complement(n))
            .collect();
        let model_point_of = |open: PointSet| prime_open.iter().position(|&u| u == open);
        let mut map = vec![usize::MAX; n];
        for (i, &prime) in spec.domain.primes.iter().enumerate() {
            let p = model_point_of(space.opens()[prime])
                .ok_or_else(|| Error::Internal("prime open does not come from a point".into()))?;
            map[p] = spec.points[i];
        }
        if map.contains(&usize::MAX) {
            return Err(Error::Internal("a point has no prime open".into()));
        }

        let compact_labels: Vec<String> = spec
            .codomain
            .primes
            .iter()
            .zip(spec.codomain.space.points())
            .map(|(&c, fallback)| match model_point_of(lc[c]) {
                Some(p) => space.points()[p].clone(),
                None => fallback.clone(),
            })
            .collect();
        let compact_space = spec.codomain.space.relabel(compact_labels)?;

        let psi = PsiModel {
            compact_lattice: inclusion.source().clone(),
            compact_opens: lc.clone(),
            inclusion: inclusion.clone(),
            spec,
            compact_space,
            map,
        };

        for t in self.objects.iter().filter(|o| o.compact) {
            let c = lc
                .iter()
                .position(|&u| u == t.support)
                .expect("compact support lies in Lc");
            let supp_t = psi.spec.codomain.opens_of[c];
            let pulled = psi.preimage(supp_t);
            if pulled != self.smashing_support(t) {
                return Err(Error::Internal(format!(
                    "ψ⁻¹(Supp `{}`) = {} but sSupp = {}",
                    t.name,
                    space.literal(pulled),
                    space.literal(self.smashing_support(t))
                )));
            }
        }
        Ok(psi)
    }

    /// Check `φ = ω ∘ χ`, where `χ` names big primes by the point they omit and
    /// `ω(W)` is the point of the compact spectrum given by the largest compact
    /// support inside `W`.
    pub fn triangle_check(
        &self,
        psi: &PsiModel,
        hom_points: &[String],
        chi: &[(String, String)],
        phi: &[(String, String)],
    ) -> Result<TriangleReport> {
        let n = self.space.len();
        let lookup = |table: &[(String, String)], h: &str, name: &str| {
            table
                .iter()
                .find(|(k, _)| k == h)
                .map(|(_, v)| v.clone())
                .ok_or_else(|| Error::Precondition(format!("{name} is not defined at `{h}`")))
        };
        for h in hom_points {
            let w_label = lookup(chi, h, "χ")?;
            let phi_label = lookup(phi, h, "φ")?;
            let p = self.space.index_of(&w_label)?;
            let carrier = PointSet::full(n).without(p);
            // largest element of Lc inside the carrier
            let c = psi
                .compact_opens
                .iter()
                .enumerate()
                .filter(|(_, u)| u.is_subset(carrier))
                .max_by_key(|(_, u)| u.len())
                .map(|(i, _)| i)
                .expect("the empty open lies in Lc");
            let point = psi
                .spec
                .codomain
                .primes
                .iter()
                .position(|&q| q == c)
                .ok_or_else(|| {
                    Error::Internal(format!(
                        "compacts inside the big prime at `{w_label}` do not form a prime"
                    ))
                })?;
            let via_big = psi.compact_space.points()[point].clone();
            psi.compact_space.index_of(&phi_label)?;
            if via_big != phi_label {
                return Ok(TriangleReport {
                    commutes: false,
                    failure: Some(TriangleFailure {
                        hom_point: h.clone(),
                        via_big,
                        phi: phi_label,
                    }),
                });
            }
        }
        Ok(TriangleReport {
            commutes: true,
            failure: None,
        })
    }
}

/// Brute-force meet-prime carriers on `n` points: proper `W` such that
/// `A ∩ B ⊆ W` forces `A ⊆ W` or `B ⊆ W` for all subsets `A`, `B`.
pub fn scan_meet_primes(n: usize) -> Vec<PointSet> {
    let full = PointSet::full(n);
    let subsets: Vec<PointSet> = PointSet::all_subsets(n).collect();
    let mut primes: Vec<PointSet> = subsets
        .par_iter()
        .copied()
        .filter(|&w| w != full)
        .filter(|&w| {
            subsets.iter().all(|&a| {
                a.is_subset(w)
                    || subsets
                        .iter()
                        .all(|&b| !a.intersection(b).is_subset(w) || b.is_subset(w))
            })
        })
        .collect();
    primes.sort();
    primes
}

/// `{X \ {p}}` for every point, sorted like [`scan_meet_primes`].
pub fn co_singletons(n: usize) -> Vec<PointSet> {
    let mut out: Vec<PointSet> = (0..n).map(|p| PointSet::full(n).without(p)).collect();
    out.sort();
    out
}
