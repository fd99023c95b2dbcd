//! Series identities checked by computing both sides independently: the
//! Poincare side from minimal resolutions, the other side from Hilbert
//! series, Groebner bases of duals or resolutions over other algebras.

use std::time::{Duration, Instant};

use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::field::Field;
use crate::gb::{nc_groebner, WordOrder};
use crate::presentations::catalog::CatalogEntry;
use crate::presentations::{FiniteGradedAlgebra, QuadraticPresentation};
use crate::resolution::{bass_from_resolution, injective_hull, minimal_resolution, GradedModule};
use crate::series::{product_formula, ProductSpec, Series1, Series2};
use crate::duality::trivial_extension;

/// Outcome of one identity check.
#[derive(Clone, Debug, Serialize)]
pub struct IdentityReport {
    pub entry: String,
    pub check: String,
    pub characteristic: u64,
    /// homological cutoff
    pub cutoff_h: usize,
    /// internal-degree cutoff of the compared grid
    pub cutoff_y: usize,
    pub formula: String,
    pub lhs: String,
    pub rhs: String,
    /// `None` when the precondition fails and the check is skipped
    pub holds: Option<bool>,
    pub first_difference: Option<String>,
    /// `lhs - rhs`, when nonzero
    pub residual: Option<String>,
    #[serde(skip)]
    pub residual_series: Option<Series2>,
    pub note: Option<String>,
    #[serde(skip)]
    pub wall_time: Duration,
}

impl IdentityReport {
    fn new<F: Field>(entry: &str, check: &str, field: &F, h: usize, formula: &str) -> Self {
        Self {
            entry: entry.into(),
            check: check.into(),
            characteristic: field.characteristic(),
            cutoff_h: h,
            cutoff_y: 0,
            formula: formula.into(),
            lhs: String::new(),
            rhs: String::new(),
            holds: None,
            first_difference: None,
            residual: None,
            residual_series: None,
            note: None,
            wall_time: Duration::ZERO,
        }
    }

    fn skipped(mut self, why: String, start: Instant) -> Self {
        self.note = Some(why);
        self.wall_time = start.elapsed();
        self
    }

    /// Compares two bivariate series on the grid of `lhs`.
    fn compare2(mut self, lhs: &Series2, rhs: &Series2, start: Instant) -> Self {
        let (mx, my) = lhs.cutoffs();
        let rhs = rhs.truncate(mx, my);
        self.cutoff_y = my;
        self.lhs = lhs.to_string();
        self.rhs = rhs.to_string();
        let diff = lhs - &rhs;
        self.holds = Some(diff.is_zero());
        if let Some((i, j)) = lhs.first_difference(&rhs) {
            self.first_difference = Some(format!("x^{i}y^{j}"));
            self.residual = Some(diff.to_string());
            self.residual_series = Some(diff);
        }
        self.wall_time = start.elapsed();
        self
    }
}

fn monomial(i: usize, j: usize, grid: (usize, usize)) -> Series2 {
    let mut s = Series2::zero(grid.0, grid.1);
    s.set(i, j, BigRational::one());
    s
}

/// `s(x^a y^b)` on a grid.
fn substitute(s: &Series1, a: usize, b: usize, grid: (usize, usize)) -> Series2 {
    let mut out = Series2::zero(grid.0, grid.1);
    for (k, c) in s.coeffs().iter().enumerate() {
        out.set(a * k, b * k, c.clone());
    }
    out
}

fn is_gorenstein_cubic<F: Field>(a: &FiniteGradedAlgebra<F>) -> bool {
    a.top_degree() == 3 && a.socle().len() == 1
}

/// Residue-field Poincare series through `x^h`, on the grid
/// `(h, max internal degree)`, with both differential checks run.
fn poincare<F: Field>(a: &FiniteGradedAlgebra<F>, h: usize) -> Result<Series2> {
    let res = minimal_resolution(a, &GradedModule::residue_field(a), h)?;
    res.verify()?;
    Ok(res.betti().series())
}

/// `P_A(z) = 1/A(-z)` through `z^h`.
pub fn koszul_identity_check<F: Field>(entry: &str, a: &FiniteGradedAlgebra<F>, h: usize) -> Result<IdentityReport> {
    let start = Instant::now();
    let mut r = IdentityReport::new(entry, "koszul_identity", a.field(), h, "P(z) = 1/A(-z)");
    let p = poincare(a, h)?.homological();
    let rhs = a.hilbert(h).alternate().invert()?;
    r.lhs = p.to_string();
    r.rhs = rhs.to_string();
    r.holds = Some(p == rhs);
    if let Some(k) = p.first_difference(&rhs) {
        r.first_difference = Some(format!("z^{k}"));
        r.residual = Some((&p - &rhs).to_string());
    }
    r.wall_time = start.elapsed();
    Ok(r)
}

/// Hilbert series of a quadratic algebra from its noncommutative Groebner
/// basis in the natural order.
pub fn dual_hilbert<F: Field>(field: &F, dual: &QuadraticPresentation, cutoff: usize) -> Result<Series1> {
    let gb = nc_groebner(field, dual, &WordOrder::natural(dual.rank()), cutoff)?;
    gb.hilbert(cutoff)
}

/// `1/P(x,y) = (1 + 1/x)/A^!(xy) - A(-xy)/x`, for `m^3 = 0` or Gorenstein
/// with `m^4 = 0`. `dual` is the Hilbert series of `A^!` through at least
/// `z^(h+1)`.
pub fn lofwall_check<F: Field>(entry: &str, a: &FiniteGradedAlgebra<F>, dual: &Series1, h: usize) -> Result<IdentityReport> {
    let start = Instant::now();
    let r = IdentityReport::new(entry, "lofwall", a.field(), h, "1/P(x,y) = (1+1/x)/A^!(xy) - A(-xy)/x");
    if !(a.top_degree() <= 2 || is_gorenstein_cubic(a)) {
        return Ok(r.skipped("needs m^3 = 0, or a Gorenstein ring with m^4 = 0".into(), start));
    }
    let p = poincare(a, h)?;
    let (_, my) = p.cutoffs();
    let inv = p.invert()?;
    // x * (1/P) = (1 + x)/A^!(xy) - A(-xy), compared on (h + 1, my)
    let grid = (h + 1, my);
    let k = (h + 1).min(my);
    if dual.cutoff() < k {
        return Err(Error::Truncated { complete: dual.cutoff(), requested: k });
    }
    let inv_dual = dual.truncate(k).invert()?;
    let rhs_x = &(&(&Series2::one(grid.0, grid.1) + &monomial(1, 0, grid)) * &substitute(&inv_dual, 1, 1, grid))
        - &substitute(&a.hilbert(k).alternate(), 1, 1, grid);
    // divide by x; the x^0 row is 1 - 1 = 0
    let mut rhs = Series2::zero(h, my);
    for (i, j, c) in rhs_x.terms().into_iter().filter(|t| t.0 > 0) {
        rhs.set(i - 1, j, c);
    }
    Ok(r.compare2(&inv, &rhs, start))
}

/// `P_{G/soc} = P_G / (1 - x^2 y^3 P_G)` for Gorenstein `G` with `m^4 = 0`.
pub fn golod_socle_check<F: Field>(entry: &str, g: &FiniteGradedAlgebra<F>, h: usize) -> Result<IdentityReport> {
    let start = Instant::now();
    let r = IdentityReport::new(entry, "golod_socle", g.field(), h, "P_{G/soc}(x,y) = P_G/(1 - x^2y^3 P_G)");
    if !is_gorenstein_cubic(g) {
        return Ok(r.skipped("needs a Gorenstein ring with socle in degree 3".into(), start));
    }
    let pg = poincare(g, h)?;
    let grid = pg.cutoffs();
    let q = g.quotient_by_socle()?;
    let lhs = poincare(&q, h)?.truncate(grid.0, grid.1);
    let rhs = &pg * &(&Series2::one(grid.0, grid.1) - &(&monomial(2, 3, grid) * &pg)).invert()?;
    Ok(r.compare2(&lhs, &rhs, start))
}

/// `P_{A x| I(k)} = P_A / (1 - x y P_A^{I(k)})`, with `I(k)` generated in
/// degree 0 and placed in degrees `1..` inside the trivial extension.
pub fn gulliksen_check<F: Field>(entry: &str, a: &FiniteGradedAlgebra<F>, h: usize) -> Result<IdentityReport> {
    let start = Instant::now();
    let r = IdentityReport::new(entry, "gulliksen", a.field(), h, "P_{A x| I(k)}(x,y) = P_A/(1 - xy P_A^{I(k)})");
    let ext = trivial_extension(a)?;
    let lhs = poincare(&ext, h)?;
    let grid = lhs.cutoffs();
    let pa = poincare(a, h)?.truncate(grid.0, grid.1);
    let res_i = minimal_resolution(a, &injective_hull(a)?, h)?;
    res_i.verify()?;
    let pi = res_i.betti().series().truncate(grid.0, grid.1);
    let rhs = &pa * &(&Series2::one(grid.0, grid.1) - &(&monomial(1, 1, grid) * &pi)).invert()?;
    Ok(r.compare2(&lhs, &rhs, start))
}

/// `Bass(x,y)/P(x,y) = x^2 y^2 A(-1/(xy))` for `m^3 = 0` and socle `m^2`.
/// The residual is reported when the formula fails.
pub fn bogvad_check<F: Field>(entry: &str, a: &FiniteGradedAlgebra<F>, h: usize) -> Result<IdentityReport> {
    let start = Instant::now();
    let r = IdentityReport::new(entry, "bogvad", a.field(), h, "Bass(x,y)/P(x,y) = x^2y^2 A(-1/(xy))");
    let dims = a.dims();
    if dims.len() != 3 || a.socle().len() != dims[2] {
        return Ok(r.skipped("needs m^3 = 0 and socle = m^2".into(), start));
    }
    let res = minimal_resolution(a, &GradedModule::residue_field(a), h + 1)?;
    res.verify()?;
    let bass = bass_from_resolution(&res, h);
    let grid = bass.cutoffs();
    let p = res.betti().series().truncate(h, grid.1);
    let ratio = &bass * &p.invert()?;
    let mut rhs = Series2::zero(grid.0, grid.1);
    for (k, &d) in dims.iter().enumerate() {
        let c = if k % 2 == 0 { d as i64 } else { -(d as i64) };
        rhs.set_i64(2 - k, 2 - k, c);
    }
    Ok(r.compare2(&ratio, &rhs, start))
}

/// Expected `1/A^!(z)` of a catalog entry through `cutoff`, from whichever
/// published form it carries, with the key used.
pub fn expected_inverse_dual(entry: &CatalogEntry, cutoff: usize) -> Result<Option<(String, Series1)>> {
    if let Some(c) = entry.expect_ints("dual_inverse") {
        return Ok(Some(("dual_inverse".into(), Series1::from_ints(&c, cutoff))));
    }
    if let Some(e) = entry.expect("dual_series") {
        let (num, den) = e
            .value
            .split_once('/')
            .ok_or_else(|| Error::Parse(format!("bad dual_series `{}`", e.value)))?;
        let ints = |s: &str| s.split_whitespace().filter_map(|t| t.parse().ok()).collect::<Vec<i64>>();
        let num = Series1::from_ints(&ints(num), cutoff);
        let den = Series1::from_ints(&ints(den), cutoff);
        return Ok(Some(("dual_series".into(), &den * &num.invert()?)));
    }
    if let Some(e) = entry.expect("dual_product") {
        let (pre, exps) = e
            .value
            .split_once(';')
            .ok_or_else(|| Error::Parse(format!("bad dual_product `{}`", e.value)))?;
        let ints = |s: &str| s.split_whitespace().filter_map(|t| t.parse().ok()).collect::<Vec<i64>>();
        let spec = ProductSpec::new(ints(pre), ints(exps));
        return Ok(Some(("dual_product".into(), product_formula(&spec, cutoff))));
    }
    if let Some(c) = entry.expect_ints("dual_times_square") {
        // listed values are 1/((1-z)^2 A^!), so multiply back by (1-z)^2
        let n = cutoff.min(c.len() - 1);
        let listed = Series1::from_ints(&c, n);
        let sq = Series1::from_ints(&[1, -2, 1], n);
        return Ok(Some(("dual_times_square".into(), &listed * &sq)));
    }
    Ok(None)
}

/// One row of [`dual_series_table`].
#[derive(Clone, Debug, Serialize)]
pub struct DualSeriesRow {
    pub entry: String,
    pub characteristic: u64,
    pub cutoff: usize,
    pub computed: String,
    pub expected: Option<String>,
    pub key: Option<String>,
    pub citation: Option<String>,
    pub matches: Option<bool>,
    pub first_difference: Option<usize>,
    #[serde(skip)]
    pub wall_time: Duration,
}

/// `1/A^!(z)` from Groebner bases, tabulated against published values.
pub fn dual_series_row<F: Field>(field: &F, entry: &CatalogEntry, cutoff: usize) -> Result<DualSeriesRow> {
    let start = Instant::now();
    let h = dual_hilbert(field, &entry.dual()?, cutoff)?;
    let inv = h.invert()?;
    let expected = expected_inverse_dual(entry, cutoff)?;
    let (key, exp, matches, first) = match &expected {
        Some((k, e)) => {
            let n = e.cutoff().min(cutoff);
            let d = inv.truncate(n).first_difference(&e.truncate(n));
            (Some(k.clone()), Some(e.to_string()), Some(d.is_none()), d)
        }
        None => (None, None, None, None),
    };
    Ok(DualSeriesRow {
        entry: entry.name.clone(),
        characteristic: field.characteristic(),
        cutoff,
        computed: inv.to_string(),
        citation: key.as_ref().and_then(|k| entry.expect(k)).map(|e| e.citation.clone()),
        expected: exp,
        key,
        matches,
        first_difference: first,
        wall_time: start.elapsed(),
    })
}

/// `x^i y^j` coefficients written as `i,j:c` pairs.
pub fn parse_terms(s: &str, grid: (usize, usize)) -> Result<Series2> {
    let mut out = Series2::zero(grid.0, grid.1);
    for t in s.split_whitespace() {
        let bad = || Error::Parse(format!("bad term `{t}`"));
        let (ij, c) = t.split_once(':').ok_or_else(bad)?;
        let (i, j) = ij.split_once(',').ok_or_else(bad)?;
        let (i, j, c): (usize, usize, i64) =
            (i.parse().map_err(|_| bad())?, j.parse().map_err(|_| bad())?, c.parse().map_err(|_| bad())?);
        out.set_i64(i, j, c);
    }
    Ok(out)
}

/// True when a series has no coefficients besides the listed ones.
pub fn equals_terms(s: &Series2, terms: &Series2) -> bool {
    let (mx, my) = s.cutoffs();
    let t = terms.truncate(mx, my);
    s.terms().iter().all(|(i, j, c)| t.get(*i, *j) == *c)
        && t.terms().iter().all(|(i, j, c)| s.get(*i, *j) == *c || c.is_zero())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{PrimeField, Rationals};
    use crate::presentations::algebra_from_presentation;
    use crate::presentations::catalog::catalog;

    fn alg(name: &str) -> FiniteGradedAlgebra<Rationals> {
        algebra_from_presentation(&Rationals, &catalog(name).unwrap().presentation().unwrap()).unwrap()
    }

    #[test]
    fn koszul_identity_case_iii_and_v() {
        assert_eq!(koszul_identity_check("caseIII", &alg("caseIII"), 5).unwrap().holds, Some(true));
        let v = koszul_identity_check("caseV", &alg("caseV"), 5).unwrap();
        assert_eq!(v.holds, Some(false));
        assert!(v.first_difference.is_some());
    }

    #[test]
    fn lofwall_case_xii() {
        let e = catalog("caseXII").unwrap();
        let a = alg("caseXII");
        let d = dual_hilbert(&Rationals, &e.dual().unwrap(), 6).unwrap();
        let r = lofwall_check("caseXII", &a, &d, 4).unwrap();
        assert_eq!(r.holds, Some(true), "{r:?}");
    }

    #[test]
    fn bogvad_residuals() {
        assert_eq!(bogvad_check("I54", &alg("I54"), 4).unwrap().holds, Some(true));
        let r = bogvad_check("I78", &alg("I78"), 4).unwrap();
        assert_eq!(r.holds, Some(false));
        let expect = parse_terms("2,2:1 1,2:1", (4, 20)).unwrap();
        assert!(equals_terms(r.residual_series.as_ref().unwrap(), &expect), "{:?}", r.residual);
        assert!(bogvad_check("caseIV", &alg("caseIV"), 2).unwrap().holds.is_none());
    }

    #[test]
    fn gulliksen_and_golod() {
        let f = PrimeField::new(32003).unwrap();
        let a = algebra_from_presentation(&f, &catalog("caseIV").unwrap().presentation().unwrap()).unwrap();
        assert_eq!(gulliksen_check("caseIV", &a, 3).unwrap().holds, Some(true));
        assert_eq!(golod_socle_check("caseIV", &a, 3).unwrap().holds, Some(true));
    }

    #[test]
    fn expected_dual_forms() {
        let (_, s) = expected_inverse_dual(&catalog("I54").unwrap(), 4).unwrap().unwrap();
        assert_eq!(s.to_i64s().unwrap(), vec![1, -4, 4, 0, 0]);
        let (_, s) = expected_inverse_dual(&catalog("R33").unwrap(), 12).unwrap().unwrap();
        assert_eq!(s.to_i64s().unwrap()[..4], [1, -5, 6, 0]);
        let row = dual_series_row(&Rationals, &catalog("caseIV").unwrap(), 8).unwrap();
        assert_eq!(row.matches, Some(true));
    }
}
