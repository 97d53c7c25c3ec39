//! Exhaustive enumeration of small posets, lattices and topologies.

use std::collections::HashSet;

use crate::error::{Error, Result};
use crate::lattice::FiniteLattice;
use crate::order::{FiniteSpace, Poset};
use crate::set::PointSet;

/// Largest size accepted by [`posets_up_to_iso`].
pub const POSET_LIMIT: usize = 7;
/// Largest point count accepted by [`labeled_topologies`].
pub const TOPOLOGY_LIMIT: usize = 5;

fn labels(n: usize, prefix: &str) -> Vec<String> {
    (0..n).map(|i| format!("{prefix}{i}")).collect()
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur: Vec<usize> = (0..n).collect();
    fn go(k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if k == cur.len() {
            out.push(cur.clone());
            return;
        }
        for i in k..cur.len() {
            cur.swap(k, i);
            go(k + 1, cur, out);
            cur.swap(k, i);
        }
    }
    go(0, &mut cur, &mut out);
    out
}

/// Strict order relation as a bit matrix, row `a` holding `{b : a < b}`.
fn canonical_form(rows: &[u64], perms: &[Vec<usize>]) -> u64 {
    let n = rows.len();
    perms
        .iter()
        .map(|p| {
            let mut code = 0u64;
            for a in 0..n {
                for b in 0..n {
                    if rows[a] >> b & 1 == 1 {
                        code |= 1 << (p[a] * n + p[b]);
                    }
                }
            }
            code
        })
        .min()
        .unwrap_or(0)
}

/// One representative of every isomorphism class of posets on `n` elements,
/// labelled `p0..`. Representatives are naturally labelled: `pi < pj`
/// implies `i < j`.
pub fn posets_up_to_iso(n: usize) -> Result<Vec<Poset>> {
    if n > POSET_LIMIT {
        return Err(Error::SizeGuard(format!(
            "poset enumeration is limited to {POSET_LIMIT} elements"
        )));
    }
    let perms = permutations(n);
    let mut seen = HashSet::new();
    let mut out = Vec::new();
    // strict down-sets, grown one element at a time
    let mut stack: Vec<Vec<u64>> = vec![Vec::new()];
    while let Some(below) = stack.pop() {
        let k = below.len();
        if k == n {
            let mut rows = vec![0u64; n];
            for (b, &d) in below.iter().enumerate() {
                for (a, row) in rows.iter_mut().enumerate() {
                    if d >> a & 1 == 1 {
                        *row |= 1 << b;
                    }
                }
            }
            if seen.insert(canonical_form(&rows, &perms)) {
                let mut pairs = Vec::new();
                for (b, &d) in below.iter().enumerate() {
                    for a in 0..k {
                        if d >> a & 1 == 1 {
                            pairs.push((a, b));
                        }
                    }
                }
                out.push(Poset::from_pairs(labels(n, "p"), &pairs)?);
            }
            continue;
        }
        for d in 0..(1u64 << k) {
            // d must be down-closed among earlier elements
            let closed = (0..k).all(|a| d >> a & 1 == 0 || below[a] & !d == 0);
            if closed {
                let mut next = below.clone();
                next.push(d);
                stack.push(next);
            }
        }
    }
    Ok(out)
}

/// Every isomorphism class of lattices on `n` elements.
pub fn lattices_up_to_iso(n: usize) -> Result<Vec<FiniteLattice>> {
    Ok(posets_up_to_iso(n)?
        .into_iter()
        .filter_map(|p| FiniteLattice::from_poset(p).ok())
        .collect())
}

/// Every topology on the labelled point set `x0..` of size `n`.
pub fn labeled_topologies(n: usize) -> Result<Vec<FiniteSpace>> {
    if n > TOPOLOGY_LIMIT {
        return Err(Error::SizeGuard(format!(
            "topology enumeration is limited to {TOPOLOGY_LIMIT} points"
        )));
    }
    let full = PointSet::full(n);
    let inner: Vec<PointSet> = PointSet::all_subsets(n)
        .filter(|&s| !s.is_empty() && s != full)
        .collect();
    let mut out = Vec::new();
    let mut family = vec![PointSet::EMPTY, full];
    fn go(
        i: usize,
        inner: &[PointSet],
        family: &mut Vec<PointSet>,
        n: usize,
        out: &mut Vec<FiniteSpace>,
    ) -> Result<()> {
        if i == inner.len() {
            // pairs involving later members were deferred above
            if is_closed_family(family) {
                out.push(FiniteSpace::new(labels(n, "x"), family.clone())?);
            }
            return Ok(());
        }
        go(i + 1, inner, family, n, out)?;
        let s = inner[i];
        // only keep s if the family stays closed under pairwise union and
        // intersection with members chosen so far; later members are checked
        // when they are added
        let ok = family.iter().all(|&t| {
            let u = s.union(t);
            let v = s.intersection(t);
            (u == s || u == t || family.contains(&u) || later(inner, i, u))
                && (v == s || v == t || family.contains(&v) || later(inner, i, v))
        });
        if ok {
            family.push(s);
            go(i + 1, inner, family, n, out)?;
            family.pop();
        }
        Ok(())
    }
    fn later(inner: &[PointSet], i: usize, s: PointSet) -> bool {
        inner[i + 1..].contains(&s)
    }
    go(0, &inner, &mut family, n, &mut out)?;
    Ok(out)
}

fn is_closed_family(opens: &[PointSet]) -> bool {
    opens.iter().all(|&a| {
        opens
            .iter()
            .all(|&b| opens.contains(&a.union(b)) && opens.contains(&a.intersection(b)))
    })
}

/// Labelled topologies that are T0 and sober.
pub fn sober_t0_topologies(n: usize) -> Result<Vec<FiniteSpace>> {
    Ok(labeled_topologies(n)?
        .into_iter()
        .filter(|s| {
            let r = s.separation_report();
            r.t0 && r.sober
        })
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn poset_counts() {
        let counts: Vec<usize> = (0..=5)
            .map(|n| posets_up_to_iso(n).unwrap().len())
            .collect();
        assert_eq!(counts, vec![1, 1, 2, 5, 16, 63]);
    }

    #[test]
    fn lattice_counts() {
        let counts: Vec<usize> = (1..=6)
            .map(|n| lattices_up_to_iso(n).unwrap().len())
            .collect();
        assert_eq!(counts, vec![1, 1, 1, 2, 5, 15]);
        let distributive: usize = (1..=6)
            .flat_map(|n| lattices_up_to_iso(n).unwrap())
            .filter(|l| l.structure_report().is_distributive)
            .count();
        assert_eq!(distributive, 1 + 1 + 1 + 2 + 3 + 5);
    }

    #[test]
    fn topology_counts() {
        let counts: Vec<usize> = (0..=4)
            .map(|n| labeled_topologies(n).unwrap().len())
            .collect();
        assert_eq!(counts, vec![1, 1, 4, 29, 355]);
        let t0: Vec<usize> = (0..=4)
            .map(|n| sober_t0_topologies(n).unwrap().len())
            .collect();
        // labelled T0 topologies = labelled posets
        assert_eq!(t0, vec![1, 1, 3, 19, 219]);
    }

    #[test]
    fn guards() {
        assert!(posets_up_to_iso(8).is_err());
        assert!(labeled_topologies(6).is_err());
    }
}
