//! Frame maps between finite lattices, their right adjoints, and the induced
//! continuous maps between spectra.

use std::fmt;

use crate::error::{Error, Result};
use crate::lattice::{FiniteLattice, Spectrum};
use crate::set::PointSet;

/// A map between finite lattices meant to preserve bottom, top, binary meets
/// and binary joins. Construction only checks the table shape; use
/// [`FrameMap::validate`] for the laws.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FrameMap {
    source: FiniteLattice,
    target: FiniteLattice,
    mapping: Vec<usize>,
}

/// The first frame-map law that fails, with witnesses (source indices).
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FrameMapViolation {
    Bottom { image: usize },
    Top { image: usize },
    Meet { a: usize, b: usize },
    Join { a: usize, b: usize },
}

impl fmt::Display for FrameMapViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FrameMapViolation::Bottom { .. } => write!(f, "bottom not preserved"),
            FrameMapViolation::Top { .. } => write!(f, "top not preserved"),
            FrameMapViolation::Meet { .. } => write!(f, "binary meet not preserved"),
            FrameMapViolation::Join { .. } => write!(f, "binary join not preserved"),
        }
    }
}

/// `ψ = Spec(f)`, from the spectrum of the target to the spectrum of the source.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SpecMap {
    pub domain: Spectrum,
    pub codomain: Spectrum,
    /// Domain point index → codomain point index.
    pub points: Vec<usize>,
    /// Every open of the codomain with its preimage.
    pub preimages: Vec<(PointSet, PointSet)>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TelescopeReport {
    pub holds: bool,
    pub join_generated: bool,
    pub homeomorphism: bool,
    /// An element that is not a join of designated elements.
    pub witness: Option<usize>,
}

impl FrameMap {
    pub fn new(source: FiniteLattice, target: FiniteLattice, mapping: Vec<usize>) -> Result<Self> {
        if mapping.len() != source.len() {
            return Err(Error::Precondition(format!(
                "map table has {} entries for a {}-element source",
                mapping.len(),
                source.len()
            )));
        }
        if let Some(&bad) = mapping.iter().find(|&&b| b >= target.len()) {
            return Err(Error::Precondition(format!(
                "map sends to unknown element #{bad}"
            )));
        }
        Ok(FrameMap {
            source,
            target,
            mapping,
        })
    }

    /// Build from `(source label, target label)` pairs covering every source element.
    pub fn from_labels(
        source: FiniteLattice,
        target: FiniteLattice,
        pairs: &[(&str, &str)],
    ) -> Result<Self> {
        let mut mapping = vec![None; source.len()];
        for &(a, b) in pairs {
            let ia = source.index_of(a)?;
            let ib = target.index_of(b)?;
            if mapping[ia].replace(ib).is_some() {
                return Err(Error::Precondition(format!("`{a}` is sent twice")));
            }
        }
        let mapping = mapping
            .into_iter()
            .enumerate()
            .map(|(i, m)| {
                m.ok_or_else(|| {
                    Error::Precondition(format!("`{}` is not sent anywhere", source.label(i)))
                })
            })
            .collect::<Result<Vec<_>>>()?;
        FrameMap::new(source, target, mapping)
    }

    pub fn identity(lattice: FiniteLattice) -> Self {
        let mapping = (0..lattice.len()).collect();
        FrameMap {
            source: lattice.clone(),
            target: lattice,
            mapping,
        }
    }

    /// Inclusion of the bounded sublattice on `elems` into `lattice`.
    pub fn inclusion(lattice: &FiniteLattice, elems: &[usize]) -> Result<Self> {
        let sub = lattice.sublattice(elems)?;
        FrameMap::new(sub, lattice.clone(), elems.to_vec())
    }

    pub fn source(&self) -> &FiniteLattice {
        &self.source
    }

    pub fn target(&self) -> &FiniteLattice {
        &self.target
    }

    pub fn mapping(&self) -> &[usize] {
        &self.mapping
    }

    #[inline]
    pub fn apply(&self, a: usize) -> usize {
        self.mapping[a]
    }

    pub fn validate(&self) -> std::result::Result<(), FrameMapViolation> {
        let (s, t) = (&self.source, &self.target);
        let f = |a| self.apply(a);
        if f(s.bottom()) != t.bottom() {
            return Err(FrameMapViolation::Bottom {
                image: f(s.bottom()),
            });
        }
        if f(s.top()) != t.top() {
            return Err(FrameMapViolation::Top { image: f(s.top()) });
        }
        for a in 0..s.len() {
            for b in 0..s.len() {
                if f(s.meet(a, b)) != t.meet(f(a), f(b)) {
                    return Err(FrameMapViolation::Meet { a, b });
                }
                if f(s.join(a, b)) != t.join(f(a), f(b)) {
                    return Err(FrameMapViolation::Join { a, b });
                }
            }
        }
        Ok(())
    }

    /// `g(b) = ⋁{a : f(a) <= b}`, checked against `f(a) <= b ⇔ a <= g(b)`.
    pub fn right_adjoint(&self) -> Result<Vec<usize>> {
        let (s, t) = (&self.source, &self.target);
        let g: Vec<usize> = (0..t.len())
            .map(|b| s.join_all((0..s.len()).filter(|&a| t.leq(self.apply(a), b))))
            .collect();
        for a in 0..s.len() {
            for (b, &gb) in g.iter().enumerate() {
                if t.leq(self.apply(a), b) != s.leq(a, gb) {
                    return Err(Error::Internal(format!(
                        "adjunction fails at `{}`, `{}`: the map is not a frame map",
                        s.label(a),
                        t.label(b)
                    )));
                }
            }
        }
        Ok(g)
    }

    /// `ψ(p) = g(p)` on prime elements of the target.
    pub fn spec_map(&self) -> Result<SpecMap> {
        let g = self.right_adjoint()?;
        let domain = self.target.spectrum()?;
        let codomain = self.source.spectrum()?;
        let points = domain
            .primes
            .iter()
            .map(|&p| {
                codomain
                    .primes
                    .iter()
                    .position(|&q| q == g[p])
                    .ok_or_else(|| {
                        Error::Internal(format!(
                            "g(`{}`) = `{}` is not prime",
                            self.target.label(p),
                            self.source.label(g[p])
                        ))
                    })
            })
            .collect::<Result<Vec<_>>>()?;
        let preimage = |w: PointSet| {
            PointSet::from_indices((0..points.len()).filter(|&x| w.contains(points[x])))
        };
        let preimages: Vec<(PointSet, PointSet)> = codomain
            .space
            .opens()
            .iter()
            .map(|&w| (w, preimage(w)))
            .collect();
        if let Some((w, _)) = preimages.iter().find(|(_, v)| !domain.space.is_open(*v)) {
            return Err(Error::Internal(format!(
                "preimage of open {} is not open",
                codomain.space.literal(*w)
            )));
        }
        for a in 0..self.source.len() {
            if preimage(codomain.opens_of[a]) != domain.opens_of[self.apply(a)] {
                return Err(Error::Internal(format!(
                    "preimage of U_`{}` differs from U_f(`{}`)",
                    self.source.label(a),
                    self.source.label(a)
                )));
            }
        }
        Ok(SpecMap {
            domain,
            codomain,
            points,
            preimages,
        })
    }
}

impl SpecMap {
    pub fn image(&self, x: usize) -> usize {
        self.points[x]
    }

    pub fn preimage(&self, w: PointSet) -> PointSet {
        PointSet::from_indices((0..self.points.len()).filter(|&x| w.contains(self.points[x])))
    }

    pub fn is_surjective(&self) -> bool {
        (0..self.codomain.space.len()).all(|y| self.points.contains(&y))
    }

    pub fn is_injective(&self) -> bool {
        let mut seen = PointSet::EMPTY;
        self.points.iter().all(|&y| {
            let fresh = !seen.contains(y);
            seen = seen.with(y);
            fresh
        })
    }

    /// Bijective, continuous, and open.
    pub fn is_homeomorphism(&self) -> bool {
        if !(self.is_injective() && self.is_surjective()) {
            return false;
        }
        self.domain.space.opens().iter().all(|&u| {
            let img = PointSet::from_indices(u.iter().map(|x| self.points[x]));
            self.codomain.space.is_open(img)
        })
    }

    /// Preimages of quasi-compact opens are quasi-compact.
    pub fn quasi_compactness_check(&self) -> bool {
        let qc_domain = self.domain.space.quasi_compact_opens();
        self.codomain
            .space
            .quasi_compact_opens()
            .into_iter()
            .all(|w| qc_domain.contains(&self.preimage(w)))
    }

    /// `(domain label, codomain label)` pairs in domain point order.
    pub fn table(&self) -> Vec<(&str, &str)> {
        self.points
            .iter()
            .enumerate()
            .map(|(x, &y)| {
                (
                    self.domain.space.points()[x].as_str(),
                    self.codomain.space.points()[y].as_str(),
                )
            })
            .collect()
    }
}

/// Whether every element of `lattice` is a join of elements of the designated
/// sublattice `lc`, cross-checked against whether the inclusion induces a
/// homeomorphism of spectra.
pub fn telescope_check(lattice: &FiniteLattice, lc: &[usize]) -> Result<TelescopeReport> {
    let inclusion = FrameMap::inclusion(lattice, lc)?;
    let witness = (0..lattice.len()).find(|&a| {
        let below = lc.iter().copied().filter(|&c| lattice.leq(c, a));
        lattice.join_all(below) != a
    });
    let join_generated = witness.is_none();
    let homeomorphism = inclusion.spec_map()?.is_homeomorphism();
    if join_generated != homeomorphism {
        return Err(Error::Internal(format!(
            "join generation ({join_generated}) and homeomorphism ({homeomorphism}) disagree"
        )));
    }
    Ok(TelescopeReport {
        holds: join_generated,
        join_generated,
        homeomorphism,
        witness,
    })
}
