use std::collections::HashSet;

use crate::error::{Error, Result};
use crate::label::{check_labels, set_literal};
use crate::order::Poset;
use crate::set::{canonicalize, PointSet, MAX_POINTS};

/// A finite topological space: a point list and its full family of opens.
///
/// Opens are kept sorted by [`PointSet::canonical_key`] and deduplicated, so two
/// spaces on the same point list are equal exactly when their topologies are.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteSpace {
    points: Vec<String>,
    opens: Vec<PointSet>,
}

/// Whether a generating family names opens or closeds.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Generate {
    Opens,
    Closeds,
}

/// Specialization preorder `x <= y` iff `x` lies in the closure of `{y}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Relation {
    labels: Vec<String>,
    leq: Vec<bool>,
}

impl Relation {
    pub fn leq(&self, a: usize, b: usize) -> bool {
        self.leq[a * self.labels.len() + b]
    }

    pub fn is_partial_order(&self) -> bool {
        let n = self.labels.len();
        (0..n).all(|a| (0..n).all(|b| a == b || !(self.leq(a, b) && self.leq(b, a))))
    }

    /// The relation as a poset; fails unless the space was `T_0`.
    pub fn to_poset(&self) -> Result<Poset> {
        Poset::new(self.labels.clone(), self.leq.clone())
    }

    /// Pairs `(x, y)` with `x <= y`, `x != y`.
    pub fn strict_pairs(&self) -> Vec<(usize, usize)> {
        let n = self.labels.len();
        let mut out = Vec::new();
        for a in 0..n {
            for b in 0..n {
                if a != b && self.leq(a, b) {
                    out.push((a, b));
                }
            }
        }
        out
    }
}

/// An irreducible closed set without a unique generic point.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SoberViolation {
    pub closed: PointSet,
    pub generic_points: PointSet,
}

/// `open ∩ closed = {x}` witnessing that `x` is locally closed.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct LocallyClosed {
    pub open: PointSet,
    pub closed: PointSet,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SeparationReport {
    pub t0: bool,
    /// Two points with the same open neighbourhoods.
    pub t0_witness: Option<(usize, usize)>,
    pub sober: bool,
    pub sober_witness: Option<SoberViolation>,
    pub td: bool,
    /// One entry per point; `None` for points that are not locally closed.
    pub td_witnesses: Vec<Option<LocallyClosed>>,
}

impl FiniteSpace {
    /// Validate and canonicalize. The open family must contain the empty set
    /// and the whole space and be closed under binary union and intersection.
    pub fn new(points: Vec<String>, mut opens: Vec<PointSet>) -> Result<Self> {
        check_labels(&points)?;
        let n = points.len();
        if n > MAX_POINTS {
            return Err(Error::TooManyPoints(n));
        }
        let full = PointSet::full(n);
        if let Some(bad) = opens.iter().find(|o| !o.is_subset(full)) {
            return Err(Error::NotATopology(format!(
                "open {bad:?} refers to points outside the space"
            )));
        }
        canonicalize(&mut opens);
        let space = FiniteSpace { points, opens };
        if !space.is_open(PointSet::EMPTY) {
            return Err(Error::NotATopology("the empty set is not open".into()));
        }
        if !space.is_open(full) {
            return Err(Error::NotATopology("the whole space is not open".into()));
        }
        for (i, &a) in space.opens.iter().enumerate() {
            for &b in &space.opens[i + 1..] {
                if !space.is_open(a.union(b)) {
                    return Err(Error::NotATopology(format!(
                        "union of {} and {} is not open",
                        space.literal(a),
                        space.literal(b)
                    )));
                }
                if !space.is_open(a.intersection(b)) {
                    return Err(Error::NotATopology(format!(
                        "intersection of {} and {} is not open",
                        space.literal(a),
                        space.literal(b)
                    )));
                }
            }
        }
        Ok(space)
    }

    /// Convenience constructor from label lists.
    pub fn from_labels(points: &[&str], opens: &[&[&str]]) -> Result<Self> {
        let pts: Vec<String> = points.iter().map(|s| s.to_string()).collect();
        let opens = opens
            .iter()
            .map(|o| subset_of(&pts, o))
            .collect::<Result<Vec<_>>>()?;
        FiniteSpace::new(pts, opens)
    }

    pub fn discrete(points: &[&str]) -> Result<Self> {
        let pts: Vec<String> = points.iter().map(|s| s.to_string()).collect();
        let n = pts.len();
        if n >= MAX_POINTS {
            return Err(Error::TooManyPoints(n));
        }
        FiniteSpace::new(pts, PointSet::all_subsets(n).collect())
    }

    pub fn indiscrete(points: &[&str]) -> Result<Self> {
        let pts: Vec<String> = points.iter().map(|s| s.to_string()).collect();
        let n = pts.len();
        FiniteSpace::new(pts, vec![PointSet::EMPTY, PointSet::full(n)])
    }

    /// The Alexandrov space of a poset whose opens are its up-sets; its
    /// specialization order is the poset order.
    pub fn up_set_topology(poset: &Poset) -> Result<Self> {
        FiniteSpace::new(poset.labels().to_vec(), poset.up_sets())
    }

    /// The Alexandrov space of a poset whose opens are its down-sets.
    pub fn down_set_topology(poset: &Poset) -> Result<Self> {
        FiniteSpace::new(poset.labels().to_vec(), poset.down_sets())
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn points(&self) -> &[String] {
        &self.points
    }

    pub fn opens(&self) -> &[PointSet] {
        &self.opens
    }

    pub fn full(&self) -> PointSet {
        PointSet::full(self.len())
    }

    pub fn index_of(&self, label: &str) -> Result<usize> {
        self.points
            .iter()
            .position(|p| p == label)
            .ok_or_else(|| Error::UnknownLabel(label.to_string()))
    }

    pub fn subset<S: AsRef<str>>(&self, labels: &[S]) -> Result<PointSet> {
        subset_of(&self.points, labels)
    }

    /// `{a,b}` rendering with labels sorted.
    pub fn literal(&self, s: PointSet) -> String {
        set_literal(&self.points, s)
    }

    pub fn labels_of(&self, s: PointSet) -> Vec<&str> {
        s.iter().map(|i| self.points[i].as_str()).collect()
    }

    pub fn is_open(&self, s: PointSet) -> bool {
        self.opens
            .binary_search_by_key(&s.canonical_key(), |o| o.canonical_key())
            .is_ok()
    }

    pub fn is_closed(&self, s: PointSet) -> bool {
        self.is_open(s.complement(self.len()))
    }

    /// Closed sets, canonically ordered.
    pub fn closeds(&self) -> Vec<PointSet> {
        let n = self.len();
        let mut out: Vec<PointSet> = self.opens.iter().map(|o| o.complement(n)).collect();
        canonicalize(&mut out);
        out
    }

    /// Same topology on renamed points.
    pub fn relabel(&self, points: Vec<String>) -> Result<Self> {
        if points.len() != self.len() {
            return Err(Error::Precondition(format!(
                "relabel needs {} labels, got {}",
                self.len(),
                points.len()
            )));
        }
        check_labels(&points)?;
        Ok(FiniteSpace {
            points,
            opens: self.opens.clone(),
        })
    }

    /// Smallest closed set containing `a`: the complement of the union of all
    /// opens disjoint from `a`.
    pub fn closure(&self, a: PointSet) -> PointSet {
        let outside = self
            .opens
            .iter()
            .filter(|o| o.is_disjoint(a))
            .fold(PointSet::EMPTY, |acc, &o| acc.union(o));
        outside.complement(self.len())
    }

    pub fn closure_of_labels<S: AsRef<str>>(&self, labels: &[S]) -> Result<PointSet> {
        Ok(self.closure(self.subset(labels)?))
    }

    pub fn point_closure(&self, x: usize) -> PointSet {
        self.closure(PointSet::singleton(x))
    }

    /// Largest open contained in `a`.
    pub fn interior(&self, a: PointSet) -> PointSet {
        self.opens
            .iter()
            .filter(|o| o.is_subset(a))
            .fold(PointSet::EMPTY, |acc, &o| acc.union(o))
    }

    /// Intersection of all opens containing `x`.
    pub fn minimal_neighbourhood(&self, x: usize) -> PointSet {
        self.opens
            .iter()
            .filter(|o| o.contains(x))
            .fold(self.full(), |acc, &o| acc.intersection(o))
    }

    pub fn specialization_leq(&self) -> Relation {
        let n = self.len();
        let closures: Vec<PointSet> = (0..n).map(|y| self.point_closure(y)).collect();
        let mut leq = vec![false; n * n];
        for x in 0..n {
            for y in 0..n {
                leq[x * n + y] = closures[y].contains(x);
            }
        }
        Relation {
            labels: self.points.clone(),
            leq,
        }
    }

    pub fn separation_report(&self) -> SeparationReport {
        let n = self.len();

        let neighbourhoods: Vec<Vec<bool>> = (0..n)
            .map(|x| self.opens.iter().map(|o| o.contains(x)).collect())
            .collect();
        let mut t0_witness = None;
        'outer: for x in 0..n {
            for y in x + 1..n {
                if neighbourhoods[x] == neighbourhoods[y] {
                    t0_witness = Some((x, y));
                    break 'outer;
                }
            }
        }

        let closeds = self.closeds();
        let mut sober_witness = None;
        for &c in &closeds {
            if c.is_empty() {
                continue;
            }
            let reducible = closeds.iter().enumerate().any(|(i, &a)| {
                a != c
                    && a.is_subset(c)
                    && closeds[i..]
                        .iter()
                        .any(|&b| b != c && b.is_subset(c) && a.union(b) == c)
            });
            if reducible {
                continue;
            }
            let generic = PointSet::from_indices(c.iter().filter(|&x| self.point_closure(x) == c));
            if generic.len() != 1 {
                sober_witness = Some(SoberViolation {
                    closed: c,
                    generic_points: generic,
                });
                break;
            }
        }

        let td_witnesses: Vec<Option<LocallyClosed>> = (0..n)
            .map(|x| {
                let closed = self.point_closure(x);
                let open = self.minimal_neighbourhood(x);
                (open.intersection(closed) == PointSet::singleton(x))
                    .then_some(LocallyClosed { open, closed })
            })
            .collect();

        SeparationReport {
            t0: t0_witness.is_none(),
            t0_witness,
            sober: sober_witness.is_none(),
            sober_witness,
            td: td_witnesses.iter().all(Option::is_some),
            td_witnesses,
        }
    }

    /// Topology generated by the opens together with the closeds.
    pub fn skula(&self) -> FiniteSpace {
        let mut gens = self.opens.clone();
        gens.extend(self.closeds());
        generate(self.points.clone(), &gens)
    }

    /// Hochster dual: opens generated by the closed sets whose complements
    /// are quasi-compact opens. Rejects spaces that are not `T_0` and sober.
    pub fn hochster_dual(&self) -> Result<FiniteSpace> {
        let report = self.separation_report();
        if let Some((x, y)) = report.t0_witness {
            return Err(Error::Precondition(format!(
                "space is not T0: `{}` and `{}` are topologically indistinguishable",
                self.points[x], self.points[y]
            )));
        }
        if let Some(v) = report.sober_witness {
            return Err(Error::Precondition(format!(
                "space is not sober: irreducible closed set {} has generic points {}",
                self.literal(v.closed),
                self.literal(v.generic_points)
            )));
        }
        let n = self.len();
        let gens: Vec<PointSet> = self
            .quasi_compact_opens()
            .into_iter()
            .map(|u| u.complement(n))
            .collect();
        Ok(generate(self.points.clone(), &gens))
    }

    /// Opens `U` such that every open cover of `U` has a finite subcover.
    ///
    /// Any open cover of `U` contains, for each `x ∈ U`, a member holding the
    /// minimal neighbourhood of `x`. So `U` is quasi-compact exactly when it is
    /// covered by finitely many minimal neighbourhoods of its own points, each
    /// of which must be open.
    pub fn quasi_compact_opens(&self) -> Vec<PointSet> {
        let mins: Vec<PointSet> = (0..self.len())
            .map(|x| self.minimal_neighbourhood(x))
            .collect();
        self.opens
            .iter()
            .copied()
            .filter(|&u| {
                let mut covered = PointSet::EMPTY;
                for x in u.iter() {
                    let m = mins[x];
                    if !self.is_open(m) || !m.is_subset(u) {
                        return false;
                    }
                    covered = covered.union(m);
                }
                covered == u
            })
            .collect()
    }
}

fn subset_of<S: AsRef<str>>(points: &[String], labels: &[S]) -> Result<PointSet> {
    labels.iter().try_fold(PointSet::EMPTY, |acc, l| {
        let l = l.as_ref();
        let i = points
            .iter()
            .position(|p| p == l)
            .ok_or_else(|| Error::UnknownLabel(l.to_string()))?;
        Ok(acc.with(i))
    })
}

/// Smallest topology whose opens include `subbasis`. Labels must already be
/// valid and subsets within range.
fn generate(points: Vec<String>, subbasis: &[PointSet]) -> FiniteSpace {
    let n = points.len();
    let full = PointSet::full(n);
    // minimal neighbourhoods in the generated topology
    let mins: Vec<PointSet> = (0..n)
        .map(|x| {
            subbasis
                .iter()
                .filter(|s| s.contains(x))
                .fold(full, |acc, &s| acc.intersection(s))
        })
        .collect();
    let mut found = HashSet::new();
    found.insert(PointSet::EMPTY);
    found.insert(full);
    let mut stack = vec![PointSet::EMPTY];
    while let Some(u) = stack.pop() {
        for x in u.complement(n).iter() {
            let v = u.union(mins[x]);
            if found.insert(v) {
                stack.push(v);
            }
        }
    }
    let mut opens: Vec<PointSet> = found.into_iter().collect();
    canonicalize(&mut opens);
    FiniteSpace { points, opens }
}

/// Smallest topology on `points` whose opens (or closeds) include every member
/// of `subbasis`.
pub fn topology_from_subbasis<S: AsRef<str>>(
    points: &[S],
    subbasis: &[Vec<S>],
    mode: Generate,
) -> Result<FiniteSpace> {
    let pts: Vec<String> = points.iter().map(|s| s.as_ref().to_string()).collect();
    check_labels(&pts)?;
    if pts.len() > MAX_POINTS {
        return Err(Error::TooManyPoints(pts.len()));
    }
    let sets = subbasis
        .iter()
        .map(|s| subset_of(&pts, s))
        .collect::<Result<Vec<_>>>()?;
    topology_from_sets(pts, &sets, mode)
}

/// As [`topology_from_subbasis`], with subsets already encoded.
pub fn topology_from_sets(
    points: Vec<String>,
    subbasis: &[PointSet],
    mode: Generate,
) -> Result<FiniteSpace> {
    check_labels(&points)?;
    let n = points.len();
    if n > MAX_POINTS {
        return Err(Error::TooManyPoints(n));
    }
    let full = PointSet::full(n);
    if let Some(bad) = subbasis.iter().find(|s| !s.is_subset(full)) {
        return Err(Error::Precondition(format!(
            "subset {bad:?} outside the point set"
        )));
    }
    let gens: Vec<PointSet> = match mode {
        Generate::Opens => subbasis.to_vec(),
        Generate::Closeds => subbasis.iter().map(|s| s.complement(n)).collect(),
    };
    Ok(generate(points, &gens))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sierpinski() -> FiniteSpace {
        FiniteSpace::from_labels(&["g", "s"], &[&[], &["g"], &["g", "s"]]).unwrap()
    }

    fn smashing7() -> FiniteSpace {
        FiniteSpace::from_labels(
            &["0", "P", "Q"],
            &[&[], &["0"], &["0", "Q"], &["0", "P"], &["0", "P", "Q"]],
        )
        .unwrap()
    }

    fn not_small_top() -> FiniteSpace {
        FiniteSpace::from_labels(&["0", "P", "Q"], &[&[], &["0", "P"], &["0", "P", "Q"]]).unwrap()
    }

    #[test]
    fn rejects_non_topologies() {
        let err = FiniteSpace::from_labels(&["a", "b"], &[&["a"], &["a", "b"]]).unwrap_err();
        assert!(matches!(err, Error::NotATopology(_)));
        let err =
            FiniteSpace::from_labels(&["a", "b", "c"], &[&[], &["a"], &["b"], &["a", "b", "c"]])
                .unwrap_err();
        assert!(matches!(err, Error::NotATopology(ref m) if m.contains("union")));
        let err = FiniteSpace::from_labels(&["a"], &[&[], &["z"]]).unwrap_err();
        assert_eq!(err, Error::UnknownLabel("z".into()));
    }

    #[test]
    fn duplicates_are_dropped() {
        let s = FiniteSpace::from_labels(&["a"], &[&[], &["a"], &["a"]]).unwrap();
        assert_eq!(s.opens().len(), 2);
    }

    #[test]
    fn closure_examples() {
        let s = sierpinski();
        assert_eq!(s.closure_of_labels(&["g"]).unwrap(), s.full());
        assert_eq!(s.closure(PointSet::EMPTY), PointSet::EMPTY);
        let x = smashing7();
        assert_eq!(
            x.closure_of_labels(&["P"]).unwrap(),
            x.subset(&["P"]).unwrap()
        );
        assert_eq!(x.closure_of_labels(&["0"]).unwrap(), x.full());
        assert!(matches!(
            x.closure_of_labels(&["R"]),
            Err(Error::UnknownLabel(_))
        ));
    }

    #[test]
    fn specialization_examples() {
        let s = sierpinski();
        let r = s.specialization_leq();
        // s lies in the closure of g
        assert!(r.leq(1, 0));
        assert!(!r.leq(0, 1));

        let d = FiniteSpace::discrete(&["a", "b"]).unwrap();
        assert_eq!(d.specialization_leq().strict_pairs(), vec![]);

        let x = smashing7();
        let r = x.specialization_leq();
        assert!(r.leq(1, 0) && r.leq(2, 0));
        assert!(!r.leq(1, 2) && !r.leq(2, 1));
        assert!(r.is_partial_order());
    }

    #[test]
    fn separation_examples() {
        let r = not_small_top().separation_report();
        assert!(!r.t0);
        assert!(!r.sober);
        let v = r.sober_witness.unwrap();
        assert_eq!(v.closed, PointSet::full(3));
        assert_eq!(v.generic_points, PointSet::from_indices([0, 1]));

        let r = smashing7().separation_report();
        assert!(r.t0 && r.sober && r.td);
        let w0 = r.td_witnesses[0].unwrap();
        assert_eq!(w0.open, PointSet::singleton(0));

        let r = FiniteSpace::discrete(&["a", "b", "c"])
            .unwrap()
            .separation_report();
        assert!(r.t0 && r.sober && r.td);
    }

    #[test]
    fn indiscrete_space_is_not_td() {
        let r = FiniteSpace::indiscrete(&["a", "b"])
            .unwrap()
            .separation_report();
        assert!(!r.t0);
        assert!(!r.td);
        // the whole space is irreducible with two generic points
        assert!(!r.sober);
    }

    #[test]
    fn skula_examples() {
        let x = smashing7();
        assert_eq!(x.skula(), FiniteSpace::discrete(&["0", "P", "Q"]).unwrap());
        assert_eq!(
            sierpinski().skula(),
            FiniteSpace::discrete(&["g", "s"]).unwrap()
        );
        let i = FiniteSpace::indiscrete(&["a", "b"]).unwrap();
        assert_eq!(i.skula(), i);
    }

    #[test]
    fn hochster_examples() {
        let d = sierpinski().hochster_dual().unwrap();
        assert_eq!(
            d,
            FiniteSpace::from_labels(&["g", "s"], &[&[], &["s"], &["g", "s"]]).unwrap()
        );
        let chain = FiniteSpace::up_set_topology(&Poset::chain(&["a", "b", "c"]).unwrap()).unwrap();
        assert_eq!(
            chain.hochster_dual().unwrap().hochster_dual().unwrap(),
            chain
        );

        let zar = FiniteSpace::from_labels(&["m", "0"], &[&[], &["0"], &["m", "0"]]).unwrap();
        assert_eq!(
            zar.hochster_dual().unwrap(),
            FiniteSpace::from_labels(&["m", "0"], &[&[], &["m"], &["m", "0"]]).unwrap()
        );

        let err = not_small_top().hochster_dual().unwrap_err();
        assert!(matches!(err, Error::Precondition(ref m) if m.contains("T0")));
    }

    #[test]
    fn subbasis_examples() {
        let pts = ["0", "P", "Q"];
        let s = topology_from_subbasis(
            &pts,
            &[vec!["P", "Q"], vec![], vec!["0", "P", "Q"]],
            Generate::Closeds,
        )
        .unwrap();
        assert_eq!(
            s,
            FiniteSpace::from_labels(&pts, &[&[], &["0"], &["0", "P", "Q"]]).unwrap()
        );
        let s = topology_from_subbasis(
            &pts,
            &[vec![], vec!["0", "P", "Q"], vec!["0", "P"]],
            Generate::Opens,
        )
        .unwrap();
        assert_eq!(s, not_small_top());
        let s = topology_from_subbasis::<&str>(&pts, &[], Generate::Opens).unwrap();
        assert_eq!(s, FiniteSpace::indiscrete(&pts).unwrap());
        assert!(topology_from_subbasis(&pts, &[vec!["X"]], Generate::Opens).is_err());
    }

    #[test]
    fn quasi_compact_opens_are_all_opens() {
        let x = smashing7();
        assert_eq!(x.quasi_compact_opens(), x.opens());
        let e = FiniteSpace::new(vec![], vec![PointSet::EMPTY]).unwrap();
        assert_eq!(e.quasi_compact_opens(), vec![PointSet::EMPTY]);
    }
}
