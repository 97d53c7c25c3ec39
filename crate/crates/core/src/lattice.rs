//! Finite lattices and frames: structure checks, prime elements, the
//! spectrum of a frame, spatiality, and Birkhoff duality.

use crate::error::{Error, Result};
use crate::label::subset_labels;
use crate::order::{FiniteSpace, Poset};
use crate::set::{PointSet, MAX_POINTS};

/// Size up to which the frame law is checked over every subset.
pub const FRAME_LAW_EXHAUSTIVE_LIMIT: usize = 15;

/// Size up to which compactness is checked over every directed subset.
const COMPACT_EXHAUSTIVE_LIMIT: usize = 12;

/// A finite bounded lattice with precomputed meet and join tables.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteLattice {
    order: Poset,
    meet: Vec<usize>,
    join: Vec<usize>,
    bottom: usize,
    top: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StructureReport {
    pub is_distributive: bool,
    /// `(a, b, c)` with `a ∧ (b ∨ c) != (a ∧ b) ∨ (a ∧ c)`.
    pub distributive_witness: Option<(usize, usize, usize)>,
    pub is_frame: bool,
    /// `(a, S)` with `a ∧ ⋁S != ⋁{a ∧ s : s ∈ S}`.
    pub frame_witness: Option<(usize, Vec<usize>)>,
    /// False when the lattice exceeded [`FRAME_LAW_EXHAUSTIVE_LIMIT`] and the
    /// frame verdict fell back to the binary law, which suffices for finite
    /// lattices.
    pub frame_law_exhaustive: bool,
}

/// The Stone-duality spectrum of a finite frame.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Spectrum {
    /// Points labelled by their prime elements.
    pub space: FiniteSpace,
    /// Lattice index of the prime element behind each point.
    pub primes: Vec<usize>,
    /// `U_a` for every lattice element `a`, indexed like the lattice.
    pub opens_of: Vec<PointSet>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SpatialityReport {
    pub spatial: bool,
    /// Two distinct elements with the same open.
    pub witness: Option<(usize, usize)>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CompactReport {
    pub elements: Vec<usize>,
    /// Every element qualified, as it must on a finite lattice.
    pub trivially_all: bool,
    /// Whether every directed subset was examined.
    pub exhaustive: bool,
}

impl FiniteLattice {
    /// Validate that a poset is a bounded lattice and tabulate meets and joins.
    pub fn from_poset(order: Poset) -> Result<Self> {
        let n = order.len();
        let top = (0..n)
            .find(|&t| (0..n).all(|a| order.leq(a, t)))
            .ok_or_else(|| Error::NotALattice("no top element".into()))?;
        let bottom = (0..n)
            .find(|&b| (0..n).all(|a| order.leq(b, a)))
            .ok_or_else(|| Error::NotALattice("no bottom element".into()))?;
        let mut meet = vec![0; n * n];
        let mut join = vec![0; n * n];
        for a in 0..n {
            for b in a..n {
                let m = greatest(
                    &order,
                    (0..n).filter(|&c| order.leq(c, a) && order.leq(c, b)),
                )
                .ok_or_else(|| {
                    Error::NotALattice(format!(
                        "`{}` and `{}` have no meet",
                        order.label(a),
                        order.label(b)
                    ))
                })?;
                let j = least(
                    &order,
                    (0..n).filter(|&c| order.leq(a, c) && order.leq(b, c)),
                )
                .ok_or_else(|| {
                    Error::NotALattice(format!(
                        "`{}` and `{}` have no join",
                        order.label(a),
                        order.label(b)
                    ))
                })?;
                meet[a * n + b] = m;
                meet[b * n + a] = m;
                join[a * n + b] = j;
                join[b * n + a] = j;
            }
        }
        Ok(FiniteLattice {
            order,
            meet,
            join,
            bottom,
            top,
        })
    }

    /// Lattice whose order is the reflexive-transitive closure of `pairs`.
    pub fn from_order(labels: &[&str], pairs: &[(&str, &str)]) -> Result<Self> {
        FiniteLattice::from_poset(Poset::from_labeled_pairs(labels, pairs)?)
    }

    pub fn chain(labels: &[&str]) -> Result<Self> {
        FiniteLattice::from_poset(Poset::chain(labels)?)
    }

    /// The lattice of opens of a space under inclusion, labelled `U_<points>`.
    /// Element `i` is `space.opens()[i]`.
    pub fn of_opens(space: &FiniteSpace) -> Result<Self> {
        family_lattice("U", space.points(), space.opens())
    }

    pub fn order(&self) -> &Poset {
        &self.order
    }

    pub fn len(&self) -> usize {
        self.order.len()
    }

    pub fn is_empty(&self) -> bool {
        self.order.is_empty()
    }

    pub fn labels(&self) -> &[String] {
        self.order.labels()
    }

    pub fn label(&self, a: usize) -> &str {
        self.order.label(a)
    }

    pub fn index_of(&self, label: &str) -> Result<usize> {
        self.order.index_of(label)
    }

    #[inline]
    pub fn leq(&self, a: usize, b: usize) -> bool {
        self.order.leq(a, b)
    }

    #[inline]
    pub fn meet(&self, a: usize, b: usize) -> usize {
        self.meet[a * self.len() + b]
    }

    #[inline]
    pub fn join(&self, a: usize, b: usize) -> usize {
        self.join[a * self.len() + b]
    }

    pub fn bottom(&self) -> usize {
        self.bottom
    }

    pub fn top(&self) -> usize {
        self.top
    }

    pub fn join_all<I: IntoIterator<Item = usize>>(&self, it: I) -> usize {
        it.into_iter().fold(self.bottom, |acc, x| self.join(acc, x))
    }

    pub fn meet_all<I: IntoIterator<Item = usize>>(&self, it: I) -> usize {
        it.into_iter().fold(self.top, |acc, x| self.meet(acc, x))
    }

    /// Maximal elements strictly below the top.
    pub fn coatoms(&self) -> Vec<usize> {
        let n = self.len();
        (0..n)
            .filter(|&a| a != self.top && !(0..n).any(|c| c != self.top && self.order.lt(a, c)))
            .collect()
    }

    pub fn structure_report(&self) -> StructureReport {
        let n = self.len();
        let mut distributive_witness = None;
        'outer: for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    let lhs = self.meet(a, self.join(b, c));
                    let rhs = self.join(self.meet(a, b), self.meet(a, c));
                    if lhs != rhs {
                        distributive_witness = Some((a, b, c));
                        break 'outer;
                    }
                }
            }
        }
        let is_distributive = distributive_witness.is_none();

        let (frame_witness, frame_law_exhaustive) = if n <= FRAME_LAW_EXHAUSTIVE_LIMIT {
            (self.frame_law_violation(), true)
        } else {
            let w = distributive_witness.map(|(a, b, c)| (a, vec![b, c]));
            (w, false)
        };

        StructureReport {
            is_distributive,
            distributive_witness,
            is_frame: frame_witness.is_none(),
            frame_witness,
            frame_law_exhaustive,
        }
    }

    // a ∧ ⋁S = ⋁{a ∧ s} over every subset S
    fn frame_law_violation(&self) -> Option<(usize, Vec<usize>)> {
        let n = self.len();
        let subsets = 1usize << n;
        let mut joins = vec![self.bottom; subsets];
        for mask in 1..subsets {
            let low = mask.trailing_zeros() as usize;
            joins[mask] = self.join(joins[mask & (mask - 1)], low);
        }
        let mut distributed = vec![self.bottom; subsets];
        for a in 0..n {
            for mask in 1..subsets {
                let low = mask.trailing_zeros() as usize;
                distributed[mask] = self.join(distributed[mask & (mask - 1)], self.meet(a, low));
                if self.meet(a, joins[mask]) != distributed[mask] {
                    let members = (0..n).filter(|i| mask >> i & 1 == 1).collect();
                    return Some((a, members));
                }
            }
        }
        None
    }

    fn require_frame(&self) -> Result<()> {
        let report = self.structure_report();
        if report.is_frame {
            return Ok(());
        }
        let (a, set) = report
            .frame_witness
            .expect("a non-frame report carries a witness");
        let set: Vec<&str> = set.iter().map(|&s| self.label(s)).collect();
        Err(Error::Precondition(format!(
            "lattice is not a frame: `{}` does not distribute over the join of {{{}}}",
            self.label(a),
            set.join(",")
        )))
    }

    /// Meet-prime elements: `p != top` with `a ∧ b <= p` implying `a <= p` or
    /// `b <= p`.
    pub fn prime_elements(&self) -> Vec<usize> {
        let n = self.len();
        (0..n)
            .filter(|&p| {
                p != self.top
                    && (0..n).all(|a| {
                        (0..n).all(|b| {
                            !self.leq(self.meet(a, b), p) || self.leq(a, p) || self.leq(b, p)
                        })
                    })
            })
            .collect()
    }

    pub fn is_prime(&self, p: usize) -> bool {
        self.prime_elements().contains(&p)
    }

    /// Points are the prime elements; `U_a = {p : a ≰ p}`.
    pub fn spectrum(&self) -> Result<Spectrum> {
        self.require_frame()?;
        let primes = self.prime_elements();
        if primes.len() > MAX_POINTS {
            return Err(Error::TooManyPoints(primes.len()));
        }
        let opens_of: Vec<PointSet> = (0..self.len())
            .map(|a| {
                PointSet::from_indices(
                    primes
                        .iter()
                        .enumerate()
                        .filter(|&(_, &p)| !self.leq(a, p))
                        .map(|(i, _)| i),
                )
            })
            .collect();
        let labels = primes.iter().map(|&p| self.label(p).to_string()).collect();
        let space = FiniteSpace::new(labels, opens_of.clone())?;
        Ok(Spectrum {
            space,
            primes,
            opens_of,
        })
    }

    /// Spatial iff `a ↦ U_a` is injective.
    pub fn spatiality_check(&self) -> Result<SpatialityReport> {
        let spec = self.spectrum()?;
        let n = self.len();
        for a in 0..n {
            for b in a + 1..n {
                if spec.opens_of[a] == spec.opens_of[b] {
                    return Ok(SpatialityReport {
                        spatial: false,
                        witness: Some((a, b)),
                    });
                }
            }
        }
        Ok(SpatialityReport {
            spatial: true,
            witness: None,
        })
    }

    /// `a → b = ⋁{c : c ∧ a <= b}`.
    pub fn heyting_implication(&self, a: usize, b: usize) -> Result<usize> {
        self.require_frame()?;
        let n = self.len();
        let imp = self.join_all((0..n).filter(|&c| self.leq(self.meet(c, a), b)));
        for c in 0..n {
            if self.leq(c, imp) != self.leq(self.meet(c, a), b) {
                return Err(Error::Internal(format!(
                    "residuation fails at `{}` for `{}` → `{}`",
                    self.label(c),
                    self.label(a),
                    self.label(b)
                )));
            }
        }
        Ok(imp)
    }

    /// Elements `a` such that `a <= ⋁D` for a directed `D` forces `a <= d` for
    /// some `d ∈ D`.
    pub fn compact_elements(&self) -> CompactReport {
        let n = self.len();
        let exhaustive = n <= COMPACT_EXHAUSTIVE_LIMIT;
        let directed: Vec<Vec<usize>> = if exhaustive {
            (1usize..1 << n)
                .map(|mask| (0..n).filter(|i| mask >> i & 1 == 1).collect::<Vec<_>>())
                .filter(|d| self.is_directed(d))
                .collect()
        } else {
            // every ideal of a finite lattice is principal
            (0..n)
                .map(|b| (0..n).filter(|&c| self.leq(c, b)).collect())
                .collect()
        };
        let elements: Vec<usize> = (0..n)
            .filter(|&a| {
                directed.iter().all(|d| {
                    !self.leq(a, self.join_all(d.iter().copied()))
                        || d.iter().any(|&x| self.leq(a, x))
                })
            })
            .collect();
        CompactReport {
            trivially_all: elements.len() == n,
            elements,
            exhaustive,
        }
    }

    fn is_directed(&self, d: &[usize]) -> bool {
        d.iter().all(|&x| {
            d.iter()
                .all(|&y| d.iter().any(|&z| self.leq(x, z) && self.leq(y, z)))
        })
    }

    /// Whether `elems` contains bottom and top and is closed under meet and join.
    pub fn is_bounded_sublattice(&self, elems: &[usize]) -> bool {
        let has = |x: usize| elems.contains(&x);
        has(self.bottom)
            && has(self.top)
            && elems.iter().all(|&a| {
                elems
                    .iter()
                    .all(|&b| has(self.meet(a, b)) && has(self.join(a, b)))
            })
    }

    /// The induced lattice on a bounded sublattice, keeping labels. Element `i`
    /// of the result is `elems[i]`.
    pub fn sublattice(&self, elems: &[usize]) -> Result<FiniteLattice> {
        if !self.is_bounded_sublattice(elems) {
            return Err(Error::Precondition(
                "subset is not a bounded sublattice (needs bottom, top, meets, joins)".into(),
            ));
        }
        let labels: Vec<String> = elems.iter().map(|&a| self.label(a).to_string()).collect();
        let k = elems.len();
        let mut leq = vec![false; k * k];
        for i in 0..k {
            for j in 0..k {
                leq[i * k + j] = self.leq(elems[i], elems[j]);
            }
        }
        FiniteLattice::from_poset(Poset::new(labels, leq)?)
    }
}

fn greatest(order: &Poset, candidates: impl Iterator<Item = usize>) -> Option<usize> {
    let c: Vec<usize> = candidates.collect();
    c.iter()
        .copied()
        .find(|&m| c.iter().all(|&x| order.leq(x, m)))
}

fn least(order: &Poset, candidates: impl Iterator<Item = usize>) -> Option<usize> {
    let c: Vec<usize> = candidates.collect();
    c.iter()
        .copied()
        .find(|&m| c.iter().all(|&x| order.leq(m, x)))
}

/// A family of subsets ordered by inclusion, as a lattice.
pub(crate) fn family_lattice<S: AsRef<str>>(
    prefix: &str,
    points: &[S],
    family: &[PointSet],
) -> Result<FiniteLattice> {
    let labels = subset_labels(prefix, points, family);
    let k = family.len();
    let mut leq = vec![false; k * k];
    for i in 0..k {
        for j in 0..k {
            leq[i * k + j] = family[i].is_subset(family[j]);
        }
    }
    FiniteLattice::from_poset(Poset::new(labels, leq)?)
}

/// Down-closed subsets of a poset under inclusion, labelled `D_<members>`.
/// Element `i` is `poset.down_sets()[i]`.
pub fn downset_lattice(poset: &Poset) -> Result<FiniteLattice> {
    if poset.len() > MAX_POINTS {
        return Err(Error::TooManyPoints(poset.len()));
    }
    family_lattice("D", poset.labels(), &poset.down_sets())
}

#[cfg(test)]
mod tests {
    use super::*;

    pub(crate) fn frame7() -> FiniteLattice {
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
        .unwrap()
    }

    fn diamond() -> FiniteLattice {
        FiniteLattice::from_order(
            &["b", "x", "y", "z", "t"],
            &[
                ("b", "x"),
                ("b", "y"),
                ("b", "z"),
                ("x", "t"),
                ("y", "t"),
                ("z", "t"),
            ],
        )
        .unwrap()
    }

    fn labels(l: &FiniteLattice, xs: &[usize]) -> Vec<String> {
        let mut v: Vec<String> = xs.iter().map(|&x| l.label(x).to_string()).collect();
        v.sort();
        v
    }

    #[test]
    fn construction() {
        let l = frame7();
        assert_eq!(l.label(l.bottom()), "0");
        assert_eq!(l.label(l.top()), "D_A");
        let lm = l.index_of("loc_m").unwrap();
        let dm = l.index_of("Dm_A").unwrap();
        assert_eq!(l.label(l.meet(lm, dm)), "loc_Qm");
        assert!(FiniteLattice::chain(&["a", "b"]).is_ok());

        let bowtie = FiniteLattice::from_order(
            &["a", "b", "c", "d"],
            &[("a", "c"), ("a", "d"), ("b", "c"), ("b", "d")],
        )
        .unwrap_err();
        assert_eq!(bowtie, Error::NotALattice("no top element".into()));

        // bounded but c, d have two minimal upper bounds
        let err = FiniteLattice::from_order(
            &["0", "c", "d", "x", "y", "1"],
            &[
                ("0", "c"),
                ("0", "d"),
                ("c", "x"),
                ("d", "x"),
                ("c", "y"),
                ("d", "y"),
                ("x", "1"),
                ("y", "1"),
            ],
        )
        .unwrap_err();
        assert!(matches!(err, Error::NotALattice(ref m) if m.contains("no join")));
    }

    #[test]
    fn structure() {
        let r = diamond().structure_report();
        assert!(!r.is_distributive);
        let (a, b, c) = r.distributive_witness.unwrap();
        let d = diamond();
        assert_ne!(d.meet(a, d.join(b, c)), d.join(d.meet(a, b), d.meet(a, c)));
        assert!(!r.is_frame);

        let r = frame7().structure_report();
        assert!(r.is_distributive && r.is_frame && r.frame_law_exhaustive);
        assert!(
            FiniteLattice::chain(&["a", "b", "c", "d"])
                .unwrap()
                .structure_report()
                .is_frame
        );
    }

    #[test]
    fn primes() {
        let l = frame7();
        assert_eq!(labels(&l, &l.prime_elements()), vec!["0", "Dm_A", "loc_m"]);
        let c = FiniteLattice::chain(&["0", "s", "1"]).unwrap();
        assert_eq!(labels(&c, &c.prime_elements()), vec!["0", "s"]);
        let b = downset_lattice(&Poset::antichain(&["a", "b"]).unwrap()).unwrap();
        assert_eq!(labels(&b, &b.prime_elements()), vec!["D_a", "D_b"]);
        assert_eq!(labels(&b, &b.coatoms()), vec!["D_a", "D_b"]);
    }

    #[test]
    fn spectrum_of_valuation_frame() {
        let l = frame7();
        let s = l.spectrum().unwrap();
        let x = &s.space;
        let expected = FiniteSpace::from_labels(
            &["0", "loc_m", "Dm_A"],
            &[
                &[],
                &["0"],
                &["0", "Dm_A"],
                &["0", "loc_m"],
                &["0", "loc_m", "Dm_A"],
            ],
        )
        .unwrap();
        assert_eq!(x.opens(), expected.opens());
        assert_eq!(x.points(), expected.points());
        let u = |name: &str| x.literal(s.opens_of[l.index_of(name).unwrap()]);
        assert_eq!(u("loc_Qm"), "{0}");
        assert_eq!(u("loc_m"), "{0,Dm_A}");
        assert_eq!(u("Dm_A"), "{0,loc_m}");
    }

    #[test]
    fn spectrum_small_cases() {
        let c = FiniteLattice::chain(&["0", "1"]).unwrap();
        assert_eq!(c.spectrum().unwrap().space.len(), 1);
        let b = downset_lattice(&Poset::antichain(&["a", "b"]).unwrap()).unwrap();
        let s = b.spectrum().unwrap().space;
        assert_eq!(s.opens().len(), 4);
        assert!(diamond().spectrum().is_err());
    }

    #[test]
    fn spatiality() {
        assert!(frame7().spatiality_check().unwrap().spatial);
        let one = FiniteLattice::chain(&["x"]).unwrap();
        assert!(one.spatiality_check().unwrap().spatial);
        assert!(matches!(
            diamond().spatiality_check(),
            Err(Error::Precondition(_))
        ));
    }

    #[test]
    fn downsets() {
        let b = downset_lattice(&Poset::antichain(&["a", "b"]).unwrap()).unwrap();
        assert_eq!(b.len(), 4);
        let c = downset_lattice(&Poset::chain(&["a", "b"]).unwrap()).unwrap();
        assert_eq!(c.len(), 3);
        assert!(c.order().covers().len() == 2);
        assert!(c.structure_report().is_distributive);
    }

    #[test]
    fn heyting() {
        let l = frame7();
        let i = |s: &str| l.index_of(s).unwrap();
        for a in 0..l.len() {
            assert_eq!(l.heyting_implication(a, a).unwrap(), l.top());
            assert_eq!(l.heyting_implication(l.top(), a).unwrap(), a);
        }
        assert_eq!(
            l.heyting_implication(i("loc_m"), i("loc_Qm")).unwrap(),
            i("Dm_A")
        );
        assert!(diamond().heyting_implication(0, 1).is_err());
    }

    #[test]
    fn compact() {
        let l = frame7();
        let r = l.compact_elements();
        assert_eq!(r.elements.len(), 5);
        assert!(r.trivially_all && r.exhaustive);
        assert!(r.elements.contains(&l.top()) && r.elements.contains(&l.bottom()));
    }

    #[test]
    fn sublattices() {
        let l = frame7();
        let i = |s: &str| l.index_of(s).unwrap();
        let lc = [i("0"), i("Dm_A"), i("D_A")];
        assert!(l.is_bounded_sublattice(&lc));
        assert_eq!(l.sublattice(&lc).unwrap().len(), 3);
        assert!(!l.is_bounded_sublattice(&[i("0"), i("loc_m"), i("Dm_A"), i("D_A")]));
    }
}
