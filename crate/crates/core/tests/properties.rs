//! Randomized invariants.

use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use skewgor::duality::gorenstein_from_trivector;
use skewgor::field::{rat, PrimeField, Rationals};
use skewgor::gb::{nc_groebner, WordOrder};
use skewgor::presentations::poly::{indexed_names, monomials};
use skewgor::presentations::{algebra_from_presentation, ExtQuotientPresentation, Form, Kind, QuadraticPresentation, Trivector};
use skewgor::resolution::{bass_series, matlis_dual, minimal_resolution, GradedModule};
use skewgor::series::Series2;

fn fp() -> PrimeField {
    PrimeField::new(32003).unwrap()
}

/// Exterior algebra on four generators modulo a random set of monomials.
fn monomial_quotient() -> impl Strategy<Value = ExtQuotientPresentation> {
    let mons: Vec<_> = (2..=3).flat_map(|d| monomials(Kind::Exterior, 4, d)).collect();
    let k = mons.len();
    proptest::collection::btree_set(0..k, 0..5).prop_map(move |picked| {
        let rels: Vec<Form> = picked.into_iter().map(|i| [(mons[i].clone(), rat(1, 1))].into_iter().collect()).collect();
        ExtQuotientPresentation::new(Kind::Exterior, indexed_names("e", 4), rels).unwrap()
    })
}

fn quadratic(n: usize) -> impl Strategy<Value = QuadraticPresentation> {
    proptest::collection::vec(proptest::collection::vec((0..n * n, -2i64..3), 1..4), 1..3).prop_map(move |rels| {
        let rels = rels
            .into_iter()
            .map(|r| {
                let mut v: std::collections::BTreeMap<usize, i64> = Default::default();
                for (k, c) in r {
                    *v.entry(k).or_default() += c;
                }
                v.into_iter().filter(|(_, c)| *c != 0).map(|(k, c)| (k, rat(c, 1))).collect()
            })
            .filter(|r: &Vec<_>| !r.is_empty())
            .collect();
        QuadraticPresentation::new(n, rels).unwrap()
    })
}

fn trivector() -> impl Strategy<Value = Trivector> {
    proptest::collection::vec(((0usize..6, 0usize..6, 0usize..6), -2i64..3), 4..10).prop_filter_map("nonzero", |terms| {
        let t: Vec<_> = terms
            .into_iter()
            .filter(|((a, b, c), v)| a != b && b != c && a != c && *v != 0)
            .map(|((a, b, c), v)| ([a, b, c], rat(v, 1)))
            .collect();
        Trivector::from_terms(6, t).ok().filter(|t| !t.is_zero())
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn resolutions_are_minimal_complexes(p in monomial_quotient()) {
        let a = algebra_from_presentation(&fp(), &p).unwrap();
        let res = minimal_resolution(&a, &GradedModule::residue_field(&a), 3).unwrap();
        prop_assert!(res.verify().is_ok());
        prop_assert_eq!(res.rank(0), 1);
        prop_assert_eq!(res.rank(1), a.embedding_dim());
    }

    #[test]
    fn matlis_duality_reverses_dims(p in monomial_quotient()) {
        let a = algebra_from_presentation(&fp(), &p).unwrap();
        let m = GradedModule::regular(&a);
        let d = matlis_dual(&a, &m).unwrap();
        let mut rev = m.dims();
        rev.reverse();
        prop_assert_eq!(d.dims(), rev);
        prop_assert_eq!(matlis_dual(&a, &d).unwrap().dims(), m.dims());
    }

    #[test]
    fn groebner_hilbert_series_ignores_the_order(p in quadratic(3), seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let base = nc_groebner(&fp(), &p, &WordOrder::natural(3), 5).unwrap().hilbert(5).unwrap();
        for _ in 0..3 {
            let o = WordOrder::random(3, &mut rng);
            prop_assert_eq!(nc_groebner(&fp(), &p, &o, 5).unwrap().hilbert(5).unwrap(), base.clone());
        }
    }

    #[test]
    fn trivector_gorenstein_rings(psi in trivector()) {
        let nondegenerate = psi.is_nondegenerate(&Rationals).unwrap();
        let g = gorenstein_from_trivector(&fp(), &psi);
        prop_assert_eq!(g.is_ok(), nondegenerate);
        prop_assume!(nondegenerate);
        let g = g.unwrap();
        let dims = g.dims();
        // Poincare duality of the socle pairing
        let mut rev = dims.clone();
        rev.reverse();
        prop_assert_eq!(&dims, &rev);
        prop_assert_eq!(g.socle().len(), 1);
        let b = bass_series(&g, 2).unwrap();
        let (mx, my) = b.cutoffs();
        prop_assert_eq!(b, Series2::one(mx, my));
    }
}
