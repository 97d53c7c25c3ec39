mod common;

use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use spectra_core::galois::FrameMap;
use spectra_core::lattice::downset_lattice;
use spectra_core::model::LocalizingIdeal;
use spectra_core::text::{self, ModelFile};
use spectra_core::{dot, FiniteLattice, FiniteSpace, PointSet};

use common::{random_model, random_poset};

fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn no_files(path: &str) -> spectra_core::Result<FiniteSpace> {
    Err(spectra_core::Error::Precondition(format!("no file {path}")))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn space_text_round_trip(seed in any::<u64>(), n in 0usize..7) {
        let p = random_poset(&mut rng(seed), n, 0.4);
        let s = FiniteSpace::up_set_topology(&p).unwrap();
        prop_assert_eq!(text::parse_space(&text::print_space(&s)).unwrap(), s);
    }

    #[test]
    fn poset_and_lattice_text_round_trip(seed in any::<u64>(), n in 0usize..6) {
        let p = random_poset(&mut rng(seed), n, 0.4);
        prop_assert_eq!(text::parse_poset(&text::print_poset(&p)).unwrap(), p.clone());
        let l = downset_lattice(&p).unwrap();
        let back = text::parse_lattice(&text::print_lattice(&l)).unwrap();
        prop_assert_eq!(back.order(), l.order());
    }

    #[test]
    fn model_text_round_trip(seed in any::<u64>()) {
        let model = random_model(&mut rng(seed), 6, 10);
        let file = ModelFile { model, hom: Vec::new(), ledger: Vec::new() };
        let back = text::parse_model(&text::print_model(&file), no_files).unwrap();
        prop_assert_eq!(back.model, file.model);
    }

    #[test]
    fn dot_output_is_stable(seed in any::<u64>(), n in 1usize..6) {
        let p = random_poset(&mut rng(seed), n, 0.5);
        let s = FiniteSpace::up_set_topology(&p).unwrap();
        prop_assert_eq!(dot::space("s", &s), dot::space("s", &s.clone()));
        prop_assert_eq!(dot::hasse("p", &p), dot::hasse("p", &p.clone()));
    }

    #[test]
    fn hochster_dual_swaps_specialization(seed in any::<u64>(), n in 0usize..8) {
        let p = random_poset(&mut rng(seed), n, 0.4);
        let up = FiniteSpace::up_set_topology(&p).unwrap();
        let down = FiniteSpace::down_set_topology(&p).unwrap();
        prop_assert_eq!(up.hochster_dual().unwrap(), down.clone());
        prop_assert_eq!(down.hochster_dual().unwrap(), up.clone());
        prop_assert_eq!(up.skula().opens().len(), 1usize << n);
    }

    #[test]
    fn spectrum_of_opens_is_the_space(seed in any::<u64>(), n in 1usize..6) {
        let p = random_poset(&mut rng(seed), n, 0.4);
        let s = FiniteSpace::up_set_topology(&p).unwrap();
        let spec = FiniteLattice::of_opens(&s).unwrap().spectrum().unwrap();
        prop_assert_eq!(spec.space.len(), n);
        let a = spec.space.specialization_leq().to_poset().unwrap();
        let b = s.specialization_leq().to_poset().unwrap();
        prop_assert!(a.is_isomorphic(&b));
    }

    #[test]
    fn downset_inclusions_are_adjoint(seed in any::<u64>(), n in 1usize..5) {
        let p = random_poset(&mut rng(seed), n, 0.4);
        let l = downset_lattice(&p).unwrap();
        // chain through bottom, top and one more element
        let mid = (seed as usize) % l.len();
        let mut elems = vec![l.bottom(), mid, l.top()];
        elems.sort();
        elems.dedup();
        let f = FrameMap::inclusion(&l, &elems).unwrap();
        let g = f.right_adjoint().unwrap();
        for a in 0..f.source().len() {
            prop_assert_eq!(g[f.apply(a)], a);
        }
        let s = f.spec_map().unwrap();
        prop_assert!(s.is_surjective());
    }

    #[test]
    fn model_invariants(seed in any::<u64>()) {
        let m = random_model(&mut rng(seed), 5, 8);
        let n = m.space().len();
        for p in 0..n {
            prop_assert_eq!(m.gamma(p).unwrap().support, PointSet::singleton(p));
        }
        let scan = m.big_prime_scan().unwrap();
        for x in m.objects() {
            prop_assert_eq!(m.big_support(&scan.primes, x).unwrap(), x.support);
        }
        let psi = m.psi_model().unwrap();
        prop_assert!(psi.is_surjective());
    }

    #[test]
    fn cap_identity(a in 0u64..64, b in 0u64..64) {
        let i = LocalizingIdeal::new(PointSet(a));
        let j = LocalizingIdeal::new(PointSet(b));
        prop_assert_eq!(i.meet(&j), i.tensor(&j).radical());
        prop_assert_eq!(LocalizingIdeal::join([&i, &j]).carrier, PointSet(a | b));
    }
}
