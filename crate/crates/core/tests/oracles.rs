//! Derived values checked against closed forms computed independently of the
//! library: binomial counts, periodic resolutions, tensor-algebra counts.

use skewgor::betti::BettiTable;
use skewgor::duality::{quadratic_dual_of_quotient, trivial_extension};
use skewgor::field::{PrimeField, Rationals};
use skewgor::gb::{bar_tor, nc_groebner, tor3_of_dual, WordOrder};
use skewgor::presentations::poly::indexed_names;
use skewgor::presentations::{algebra_from_presentation, ExtQuotientPresentation, Kind, QuadraticPresentation};
use skewgor::resolution::{bass_series, residue_betti};
use skewgor::series::Series2;

fn binom(n: u64, k: u64) -> u64 {
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

fn exterior(n: usize) -> ExtQuotientPresentation {
    ExtQuotientPresentation::new(Kind::Exterior, indexed_names("e", n), vec![]).unwrap()
}

#[test]
fn exterior_algebra_poincare_is_binomial() {
    for n in 1..=4 {
        let a = algebra_from_presentation(&Rationals, &exterior(n)).unwrap();
        let t = residue_betti(&a, 4).unwrap();
        assert!(t.is_diagonal());
        for i in 0..=4 {
            assert_eq!(t.get(i, i), binom(n as u64 + i as u64 - 1, i as u64), "n={n} i={i}");
        }
    }
}

#[test]
fn dual_of_exterior_is_symmetric() {
    let n = 3;
    let dual = quadratic_dual_of_quotient(&exterior(n)).unwrap();
    let gb = nc_groebner(&Rationals, &dual, &WordOrder::natural(n), 6).unwrap();
    let h = gb.hilbert(6).unwrap();
    for d in 0..=6u64 {
        assert_eq!(h.coeff(d as usize), skewgor::field::rat(binom(n as u64 + d - 1, d) as i64, 1));
    }
    // Koszul complex of k[x1..x3]: Tor_{i,i} = C(3, i)
    let anick = tor3_of_dual(&gb, 5).unwrap();
    let bar = bar_tor(&gb, 3, 5).unwrap();
    for i in 0..=3 {
        for j in 0..=5 {
            let want = if i == j { binom(3, i as u64) } else { 0 };
            assert_eq!(anick.get(i, j), want, "anick {i},{j}");
            assert_eq!(bar.get(i, j), want, "bar {i},{j}");
        }
    }
}

#[test]
fn square_zero_tensor_algebra() {
    // T(V)/(V (x) V): Tor_{i,i} = n^i
    let n = 2;
    let all: Vec<_> = (0..n * n).map(|k| vec![(k, skewgor::field::rat(1, 1))]).collect();
    let p = QuadraticPresentation::new(n, all).unwrap();
    let gb = nc_groebner(&PrimeField::new(7).unwrap(), &p, &WordOrder::natural(n), 4).unwrap();
    assert_eq!(gb.hilbert(4).unwrap().to_i64s().unwrap(), vec![1, 2, 0, 0, 0]);
    let t = tor3_of_dual(&gb, 4).unwrap();
    for i in 0..=3 {
        assert_eq!(t.get(i, i), (n as u64).pow(i as u32));
    }
}

#[test]
fn truncated_polynomial_ring_is_two_periodic() {
    // k[x]/(x^3): generators in degrees 0, 1, 3, 4, 6, 7, ...
    let p = ExtQuotientPresentation::parse(Kind::Commutative, indexed_names("x", 1), "x1^3").unwrap();
    let a = algebra_from_presentation(&Rationals, &p).unwrap();
    let t: BettiTable = residue_betti(&a, 5).unwrap();
    let want = [(0, 0), (1, 1), (2, 3), (3, 4), (4, 6), (5, 7)];
    let got: Vec<_> = t.nonzero().map(|(i, j, v)| {
        assert_eq!(v, 1);
        (i, j)
    })
    .collect();
    assert_eq!(got, want);
}

#[test]
fn trivial_extension_dims() {
    // A = k[x]/x^2 has dims 1 1; its dual sits in degrees 1 and 2
    let p = ExtQuotientPresentation::parse(Kind::Commutative, indexed_names("x", 1), "x1^2").unwrap();
    let a = algebra_from_presentation(&Rationals, &p).unwrap();
    assert_eq!(trivial_extension(&a).unwrap().dims(), vec![1, 2, 1]);
}

#[test]
fn exterior_algebra_bass_series_is_one() {
    let a = algebra_from_presentation(&Rationals, &exterior(3)).unwrap();
    let b = bass_series(&a, 3).unwrap();
    let (mx, my) = b.cutoffs();
    assert_eq!(b, Series2::one(mx, my));
}
