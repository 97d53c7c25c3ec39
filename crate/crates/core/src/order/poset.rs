use crate::error::{Error, Result};
use crate::label::check_labels;
use crate::set::{PointSet, MAX_POINTS};

/// A finite partially ordered set over labelled elements.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Poset {
    labels: Vec<String>,
    // leq[a * n + b] holds iff a <= b
    leq: Vec<bool>,
}

impl Poset {
    /// Build from a full relation matrix, checking the partial order axioms.
    pub fn new(labels: Vec<String>, leq: Vec<bool>) -> Result<Self> {
        check_labels(&labels)?;
        let n = labels.len();
        if leq.len() != n * n {
            return Err(Error::NotPartialOrder(format!(
                "relation has {} entries, expected {}",
                leq.len(),
                n * n
            )));
        }
        let p = Poset { labels, leq };
        p.check_axioms()?;
        Ok(p)
    }

    /// Build from generating pairs `a <= b`; the order is their
    /// reflexive-transitive closure.
    pub fn from_pairs(labels: Vec<String>, pairs: &[(usize, usize)]) -> Result<Self> {
        check_labels(&labels)?;
        let n = labels.len();
        let mut leq = vec![false; n * n];
        for i in 0..n {
            leq[i * n + i] = true;
        }
        for &(a, b) in pairs {
            if a >= n || b >= n {
                return Err(Error::NotPartialOrder(format!(
                    "pair ({a}, {b}) out of range"
                )));
            }
            leq[a * n + b] = true;
        }
        warshall(&mut leq, n);
        let p = Poset { labels, leq };
        p.check_axioms()?;
        Ok(p)
    }

    pub fn from_labeled_pairs(labels: &[&str], pairs: &[(&str, &str)]) -> Result<Self> {
        let labels: Vec<String> = labels.iter().map(|s| s.to_string()).collect();
        let idx = |s: &str| {
            labels
                .iter()
                .position(|l| l == s)
                .ok_or_else(|| Error::UnknownLabel(s.to_string()))
        };
        let pairs = pairs
            .iter()
            .map(|&(a, b)| Ok((idx(a)?, idx(b)?)))
            .collect::<Result<Vec<_>>>()?;
        Poset::from_pairs(labels, &pairs)
    }

    pub fn antichain(labels: &[&str]) -> Result<Self> {
        Poset::from_labeled_pairs(labels, &[])
    }

    /// A chain `labels[0] < labels[1] < ...`.
    pub fn chain(labels: &[&str]) -> Result<Self> {
        let pairs: Vec<(&str, &str)> = labels.windows(2).map(|w| (w[0], w[1])).collect();
        Poset::from_labeled_pairs(labels, &pairs)
    }

    fn check_axioms(&self) -> Result<()> {
        let n = self.len();
        for a in 0..n {
            if !self.leq(a, a) {
                return Err(Error::NotPartialOrder(format!(
                    "not reflexive at `{}`",
                    self.labels[a]
                )));
            }
        }
        for a in 0..n {
            for b in 0..n {
                if a != b && self.leq(a, b) && self.leq(b, a) {
                    return Err(Error::NotPartialOrder(format!(
                        "antisymmetry fails for `{}` and `{}`",
                        self.labels[a], self.labels[b]
                    )));
                }
            }
        }
        for a in 0..n {
            for b in 0..n {
                if !self.leq(a, b) {
                    continue;
                }
                for c in 0..n {
                    if self.leq(b, c) && !self.leq(a, c) {
                        return Err(Error::NotPartialOrder(format!(
                            "transitivity fails for `{}` <= `{}` <= `{}`",
                            self.labels[a], self.labels[b], self.labels[c]
                        )));
                    }
                }
            }
        }
        Ok(())
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, i: usize) -> &str {
        &self.labels[i]
    }

    pub fn index_of(&self, label: &str) -> Result<usize> {
        self.labels
            .iter()
            .position(|l| l == label)
            .ok_or_else(|| Error::UnknownLabel(label.to_string()))
    }

    #[inline]
    pub fn leq(&self, a: usize, b: usize) -> bool {
        self.leq[a * self.labels.len() + b]
    }

    #[inline]
    pub fn lt(&self, a: usize, b: usize) -> bool {
        a != b && self.leq(a, b)
    }

    /// Covering pairs `(a, b)` with `a < b` and nothing strictly between.
    pub fn covers(&self) -> Vec<(usize, usize)> {
        let n = self.len();
        let mut out = Vec::new();
        for a in 0..n {
            for b in 0..n {
                if self.lt(a, b) && !(0..n).any(|c| self.lt(a, c) && self.lt(c, b)) {
                    out.push((a, b));
                }
            }
        }
        out
    }

    /// The order-dual poset.
    pub fn dual(&self) -> Poset {
        let n = self.len();
        let mut leq = vec![false; n * n];
        for a in 0..n {
            for b in 0..n {
                leq[a * n + b] = self.leq(b, a);
            }
        }
        Poset {
            labels: self.labels.clone(),
            leq,
        }
    }

    fn assert_small(&self) {
        assert!(
            self.len() <= MAX_POINTS,
            "poset too large for bitset operations"
        );
    }

    /// `{b : b >= a}` as a bitset.
    pub fn up_set(&self, a: usize) -> PointSet {
        self.assert_small();
        PointSet::from_indices((0..self.len()).filter(|&b| self.leq(a, b)))
    }

    /// `{b : b <= a}` as a bitset.
    pub fn down_set(&self, a: usize) -> PointSet {
        self.assert_small();
        PointSet::from_indices((0..self.len()).filter(|&b| self.leq(b, a)))
    }

    pub fn up_closure(&self, s: PointSet) -> PointSet {
        s.iter()
            .fold(PointSet::EMPTY, |acc, a| acc.union(self.up_set(a)))
    }

    pub fn down_closure(&self, s: PointSet) -> PointSet {
        s.iter()
            .fold(PointSet::EMPTY, |acc, a| acc.union(self.down_set(a)))
    }

    pub fn is_down_set(&self, s: PointSet) -> bool {
        self.down_closure(s) == s
    }

    pub fn is_up_set(&self, s: PointSet) -> bool {
        self.up_closure(s) == s
    }

    /// All down-closed subsets, in canonical order.
    pub fn down_sets(&self) -> Vec<PointSet> {
        self.closed_family(|p, s| p.down_closure(s))
    }

    /// All up-closed subsets, in canonical order.
    pub fn up_sets(&self) -> Vec<PointSet> {
        self.closed_family(|p, s| p.up_closure(s))
    }

    fn closed_family(&self, close: impl Fn(&Poset, PointSet) -> PointSet) -> Vec<PointSet> {
        self.assert_small();
        // union-closure of the principal closed sets
        let principal: Vec<PointSet> = (0..self.len())
            .map(|a| close(self, PointSet::singleton(a)))
            .collect();
        let mut found = std::collections::HashSet::new();
        let mut stack = vec![PointSet::EMPTY];
        found.insert(PointSet::EMPTY);
        while let Some(s) = stack.pop() {
            for &p in &principal {
                let t = s.union(p);
                if found.insert(t) {
                    stack.push(t);
                }
            }
        }
        let mut out: Vec<PointSet> = found.into_iter().collect();
        crate::set::canonicalize(&mut out);
        out
    }

    /// Order isomorphism test by backtracking; labels are ignored.
    pub fn is_isomorphic(&self, other: &Poset) -> bool {
        self.find_isomorphism(other).is_some()
    }

    /// A bijection `m` with `a <= b` iff `m[a] <= m[b]`, if one exists.
    pub fn find_isomorphism(&self, other: &Poset) -> Option<Vec<usize>> {
        let n = self.len();
        if n != other.len() {
            return None;
        }
        let sig = |p: &Poset, a: usize| {
            let below = (0..n).filter(|&b| p.leq(b, a)).count();
            let above = (0..n).filter(|&b| p.leq(a, b)).count();
            (below, above)
        };
        let left: Vec<_> = (0..n).map(|a| sig(self, a)).collect();
        let right: Vec<_> = (0..n).map(|a| sig(other, a)).collect();
        let mut ls = left.clone();
        let mut rs = right.clone();
        ls.sort_unstable();
        rs.sort_unstable();
        if ls != rs {
            return None;
        }
        let mut map = vec![usize::MAX; n];
        let mut used = vec![false; n];
        fn go(
            a: usize,
            s: &Poset,
            o: &Poset,
            left: &[(usize, usize)],
            right: &[(usize, usize)],
            map: &mut [usize],
            used: &mut [bool],
        ) -> bool {
            let n = s.len();
            if a == n {
                return true;
            }
            for b in 0..n {
                if used[b] || left[a] != right[b] {
                    continue;
                }
                let ok = (0..a)
                    .all(|c| s.leq(a, c) == o.leq(b, map[c]) && s.leq(c, a) == o.leq(map[c], b));
                if !ok {
                    continue;
                }
                map[a] = b;
                used[b] = true;
                if go(a + 1, s, o, left, right, map, used) {
                    return true;
                }
                used[b] = false;
            }
            false
        }
        if go(0, self, other, &left, &right, &mut map, &mut used) {
            Some(map)
        } else {
            None
        }
    }
}

fn warshall(leq: &mut [bool], n: usize) {
    for k in 0..n {
        for i in 0..n {
            if !leq[i * n + k] {
                continue;
            }
            for j in 0..n {
                if leq[k * n + j] {
                    leq[i * n + j] = true;
                }
            }
        }
    }
}
