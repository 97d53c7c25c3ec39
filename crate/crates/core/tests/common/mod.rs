#![allow(dead_code)]

use rand::Rng;
use spectra_core::model::{FormalObject, SupportModel};
use spectra_core::{FiniteSpace, PointSet, Poset};

/// Naturally labelled random poset: `i < j` is a generating pair with
/// probability `density` whenever `i < j` as integers.
pub fn random_poset<R: Rng>(rng: &mut R, n: usize, density: f64) -> Poset {
    let labels: Vec<String> = (0..n).map(|i| format!("q{i}")).collect();
    let mut pairs = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            if rng.gen_bool(density) {
                pairs.push((i, j));
            }
        }
    }
    Poset::from_pairs(labels, &pairs).expect("acyclic by construction")
}

/// A valid model on at most `max_points` points with at most `max_objects`
/// objects, counting the unit.
pub fn random_model<R: Rng>(rng: &mut R, max_points: usize, max_objects: usize) -> SupportModel {
    let n = rng.gen_range(1..=max_points);
    let density = rng.gen_range(0.0..=0.7);
    let poset = random_poset(rng, n, density);
    let space = FiniteSpace::up_set_topology(&poset).expect("finite T0 space");
    let mut objects = vec![FormalObject::new("U", space.full(), true)];
    let extra = rng.gen_range(0..max_objects);
    for i in 0..extra {
        let compact = rng.gen_bool(0.5);
        let support = if compact {
            space.opens()[rng.gen_range(0..space.opens().len())]
        } else {
            PointSet(rng.gen_range(0..1u64 << n))
        };
        objects.push(FormalObject::new(format!("o{i}"), support, compact));
    }
    SupportModel::new(space, objects, "U").expect("valid by construction")
}

/// Smallest closed set containing `s`, as the intersection of all closed
/// sets containing it.
pub fn closure_oracle(space: &FiniteSpace, s: PointSet) -> PointSet {
    let n = space.len();
    space
        .opens()
        .iter()
        .map(|u| u.complement(n))
        .filter(|c| s.is_subset(*c))
        .fold(PointSet::full(n), |acc, c| acc.intersection(c))
}

/// Points whose closure meets the support.
pub fn big_support_oracle(space: &FiniteSpace, support: PointSet) -> PointSet {
    PointSet::from_indices(
        (0..space.len())
            .filter(|&p| !closure_oracle(space, PointSet::singleton(p)).is_disjoint(support)),
    )
}

/// Order-dual up-closure within a poset, computed from the relation directly.
pub fn up_closure_oracle(poset: &Poset, s: PointSet) -> PointSet {
    PointSet::from_indices((0..poset.len()).filter(|&y| s.iter().any(|x| poset.leq(x, y))))
}
