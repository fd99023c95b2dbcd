//! Truncated power series with exact rational coefficients.
//!
//! Coefficients are always rational: the series here are generating functions
//! of dimensions, whatever field the underlying algebra lives over.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

fn q(v: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(v))
}

/// Univariate series `c_0 + c_1 z + ... + c_N z^N + O(z^{N+1})`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Series1 {
    coeffs: Vec<BigRational>,
}

impl Series1 {
    /// Zero series with cutoff `n`.
    pub fn zero(cutoff: usize) -> Self {
        Self {
            coeffs: vec![BigRational::zero(); cutoff + 1],
        }
    }

    pub fn one(cutoff: usize) -> Self {
        let mut s = Self::zero(cutoff);
        s.coeffs[0] = BigRational::one();
        s
    }

    /// Series from leading coefficients; missing ones are zero, extra ones dropped.
    pub fn from_coeffs(coeffs: Vec<BigRational>, cutoff: usize) -> Self {
        let mut coeffs = coeffs;
        coeffs.resize(cutoff + 1, BigRational::zero());
        Self { coeffs }
    }

    pub fn from_ints(coeffs: &[i64], cutoff: usize) -> Self {
        Self::from_coeffs(coeffs.iter().map(|&c| q(c)).collect(), cutoff)
    }

    /// `z^k` truncated at `cutoff`.
    pub fn monomial(k: usize, coeff: i64, cutoff: usize) -> Self {
        let mut s = Self::zero(cutoff);
        if k <= cutoff {
            s.coeffs[k] = q(coeff);
        }
        s
    }

    pub fn cutoff(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeff(&self, k: usize) -> BigRational {
        self.coeffs.get(k).cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    /// Coefficients as integers; `None` if any is fractional or too large.
    pub fn to_i64s(&self) -> Option<Vec<i64>> {
        self.coeffs.iter().map(crate::field::rational_to_i64).collect()
    }

    pub fn truncate(&self, cutoff: usize) -> Self {
        Self::from_coeffs(self.coeffs.clone(), cutoff)
    }

    /// `s(-z)`.
    pub fn alternate(&self) -> Self {
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .map(|(i, c)| if i % 2 == 1 { -c } else { c.clone() })
            .collect();
        Self { coeffs }
    }

    /// `s(z^k)`.
    pub fn substitute_power(&self, k: usize) -> Self {
        let mut out = Self::zero(self.cutoff());
        for (i, c) in self.coeffs.iter().enumerate() {
            if i * k <= self.cutoff() {
                out.coeffs[i * k] = c.clone();
            }
        }
        out
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::one(self.cutoff());
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// Multiplicative inverse; requires a nonzero constant term.
    pub fn invert(&self) -> Result<Self> {
        let c0 = &self.coeffs[0];
        if c0.is_zero() {
            return Err(Error::NonUnitSeries);
        }
        let inv0 = c0.recip();
        let n = self.cutoff();
        let mut out = vec![BigRational::zero(); n + 1];
        out[0] = inv0.clone();
        for k in 1..=n {
            let mut acc = BigRational::zero();
            for i in 1..=k {
                if !self.coeffs[i].is_zero() {
                    acc += &self.coeffs[i] * &out[k - i];
                }
            }
            out[k] = -(acc * &inv0);
        }
        Ok(Self { coeffs: out })
    }

    /// First index where the two series differ, within the common cutoff.
    pub fn first_difference(&self, other: &Self) -> Option<usize> {
        let n = self.cutoff().min(other.cutoff());
        (0..=n).find(|&k| self.coeffs[k] != other.coeffs[k])
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }
}

fn binop(a: &Series1, b: &Series1) -> usize {
    a.cutoff().min(b.cutoff())
}

impl Add for &Series1 {
    type Output = Series1;
    fn add(self, rhs: &Series1) -> Series1 {
        let n = binop(self, rhs);
        Series1 {
            coeffs: (0..=n).map(|k| &self.coeffs[k] + &rhs.coeffs[k]).collect(),
        }
    }
}

impl Sub for &Series1 {
    type Output = Series1;
    fn sub(self, rhs: &Series1) -> Series1 {
        let n = binop(self, rhs);
        Series1 {
            coeffs: (0..=n).map(|k| &self.coeffs[k] - &rhs.coeffs[k]).collect(),
        }
    }
}

impl Neg for &Series1 {
    type Output = Series1;
    fn neg(self) -> Series1 {
        Series1 {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

impl Mul for &Series1 {
    type Output = Series1;
    fn mul(self, rhs: &Series1) -> Series1 {
        let n = binop(self, rhs);
        let mut out = vec![BigRational::zero(); n + 1];
        for (i, a) in self.coeffs.iter().enumerate().take(n + 1) {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate().take(n + 1 - i) {
                if !b.is_zero() {
                    out[i + j] += a * b;
                }
            }
        }
        Series1 { coeffs: out }
    }
}

impl fmt::Display for Series1 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let a = c.abs();
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { '-' } else { '+' })?;
            }
            first = false;
            match k {
                0 => write!(f, "{a}")?,
                _ => {
                    if !a.is_one() {
                        write!(f, "{a}")?;
                    }
                    if k == 1 {
                        write!(f, "z")?;
                    } else {
                        write!(f, "z^{k}")?;
                    }
                }
            }
        }
        if first {
            write!(f, "0")?;
        }
        write!(f, " + O(z^{})", self.cutoff() + 1)
    }
}

/// One factor family of an infinite product `prod_{n>=1} (1 - z^n)^{e(n)}`
/// where `e(n) = exponents[(n - 1) % exponents.len()]`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ProductSpec {
    /// Polynomial prefactor coefficients (ascending powers).
    pub prefactor: Vec<i64>,
    /// Cyclic exponent pattern; empty means no infinite product.
    pub exponents: Vec<i64>,
}

impl ProductSpec {
    pub fn new(prefactor: Vec<i64>, exponents: Vec<i64>) -> Self {
        Self {
            prefactor,
            exponents,
        }
    }

    /// `prod (1 - z^(2n-1))^5 (1 - z^(2n))^3`
    pub fn case20() -> Self {
        Self::new(vec![1], vec![5, 3])
    }

    /// `(1 - 2z)^2 prod (1 - z^n)`
    pub fn case12() -> Self {
        Self::new(vec![1, -4, 4], vec![1])
    }

    /// `(1 - 2z) prod (1 - z^(2n-1))^3 (1 - z^(2n))^2`
    pub fn case15() -> Self {
        Self::new(vec![1, -2], vec![3, 2])
    }
}

/// Exact truncation of a product of a polynomial prefactor with a cyclic
/// infinite product of factors `(1 - z^n)^e`. Negative exponents are allowed
/// and expand through the series inverse.
pub fn product_formula(spec: &ProductSpec, cutoff: usize) -> Series1 {
    let mut acc = Series1::from_ints(&spec.prefactor, cutoff);
    if spec.exponents.is_empty() {
        return acc;
    }
    for n in 1..=cutoff {
        let e = spec.exponents[(n - 1) % spec.exponents.len()];
        if e == 0 {
            continue;
        }
        let mut factor = Series1::one(cutoff);
        factor.coeffs[n] = q(-1);
        let factor = if e > 0 {
            factor.pow(e as u32)
        } else {
            factor
                .invert()
                .expect("1 - z^n is a unit")
                .pow(e.unsigned_abs() as u32)
        };
        acc = &acc * &factor;
    }
    acc
}

/// Bivariate series `sum c_{i,j} x^i y^j` with `i <= X`, `j <= Y`.
///
/// `x` tracks homological degree and `y` internal degree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Series2 {
    max_x: usize,
    max_y: usize,
    coeffs: Vec<BigRational>,
}

impl Series2 {
    pub fn zero(max_x: usize, max_y: usize) -> Self {
        Self {
            max_x,
            max_y,
            coeffs: vec![BigRational::zero(); (max_x + 1) * (max_y + 1)],
        }
    }

    pub fn one(max_x: usize, max_y: usize) -> Self {
        let mut s = Self::zero(max_x, max_y);
        s.set(0, 0, BigRational::one());
        s
    }

    pub fn cutoffs(&self) -> (usize, usize) {
        (self.max_x, self.max_y)
    }

    #[inline]
    fn idx(&self, i: usize, j: usize) -> usize {
        i * (self.max_y + 1) + j
    }

    pub fn get(&self, i: usize, j: usize) -> BigRational {
        if i > self.max_x || j > self.max_y {
            return BigRational::zero();
        }
        self.coeffs[self.idx(i, j)].clone()
    }

    /// Sets a coefficient; silently ignores positions beyond the cutoffs.
    pub fn set(&mut self, i: usize, j: usize, v: BigRational) {
        if i <= self.max_x && j <= self.max_y {
            let k = self.idx(i, j);
            self.coeffs[k] = v;
        }
    }

    pub fn add_at(&mut self, i: usize, j: usize, v: &BigRational) {
        if i <= self.max_x && j <= self.max_y {
            let k = self.idx(i, j);
            self.coeffs[k] += v;
        }
    }

    pub fn set_i64(&mut self, i: usize, j: usize, v: i64) {
        self.set(i, j, q(v));
    }

    /// Restricts to a smaller grid.
    pub fn truncate(&self, max_x: usize, max_y: usize) -> Self {
        let mut out = Self::zero(max_x, max_y);
        for i in 0..=max_x.min(self.max_x) {
            for j in 0..=max_y.min(self.max_y) {
                out.set(i, j, self.get(i, j));
            }
        }
        out
    }

    pub fn invert(&self) -> Result<Self> {
        let c0 = self.get(0, 0);
        if c0.is_zero() {
            return Err(Error::NonUnitSeries);
        }
        let inv0 = c0.recip();
        let mut out = Self::zero(self.max_x, self.max_y);
        // Solve s * out = 1 coefficientwise in increasing (i, j).
        for i in 0..=self.max_x {
            for j in 0..=self.max_y {
                let mut acc = if i == 0 && j == 0 {
                    BigRational::one()
                } else {
                    BigRational::zero()
                };
                for a in 0..=i {
                    for b in 0..=j {
                        if a == 0 && b == 0 {
                            continue;
                        }
                        let s = &self.coeffs[self.idx(a, b)];
                        if s.is_zero() {
                            continue;
                        }
                        acc -= s * &out.coeffs[out.idx(i - a, j - b)];
                    }
                }
                let k = out.idx(i, j);
                out.coeffs[k] = acc * &inv0;
            }
        }
        Ok(out)
    }

    /// Substitutes `x -> t^a`, `y -> t^b` and truncates at `t^cutoff`.
    /// Only exact when every contributing term lies inside the grid.
    pub fn specialize(&self, a: usize, b: usize, cutoff: usize) -> Series1 {
        let mut out = Series1::zero(cutoff);
        for i in 0..=self.max_x {
            for j in 0..=self.max_y {
                let d = a * i + b * j;
                if d <= cutoff {
                    out.coeffs[d] += &self.coeffs[self.idx(i, j)];
                }
            }
        }
        out
    }

    /// Homological specialisation `y -> 1`: coefficient of `z^i` is the row sum.
    pub fn homological(&self) -> Series1 {
        self.specialize(1, 0, self.max_x)
    }

    /// Nonzero entries `(i, j, c)` in increasing order.
    pub fn terms(&self) -> Vec<(usize, usize, BigRational)> {
        let mut out = Vec::new();
        for i in 0..=self.max_x {
            for j in 0..=self.max_y {
                let c = &self.coeffs[self.idx(i, j)];
                if !c.is_zero() {
                    out.push((i, j, c.clone()));
                }
            }
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    /// First `(i, j)` in increasing order at which the series differ.
    pub fn first_difference(&self, other: &Self) -> Option<(usize, usize)> {
        let mx = self.max_x.min(other.max_x);
        let my = self.max_y.min(other.max_y);
        for i in 0..=mx {
            for j in 0..=my {
                if self.get(i, j) != other.get(i, j) {
                    return Some((i, j));
                }
            }
        }
        None
    }
}

fn grid(a: &Series2, b: &Series2) -> (usize, usize) {
    (a.max_x.min(b.max_x), a.max_y.min(b.max_y))
}

impl Add for &Series2 {
    type Output = Series2;
    fn add(self, rhs: &Series2) -> Series2 {
        let (mx, my) = grid(self, rhs);
        let mut out = Series2::zero(mx, my);
        for i in 0..=mx {
            for j in 0..=my {
                out.set(i, j, self.get(i, j) + rhs.get(i, j));
            }
        }
        out
    }
}

impl Sub for &Series2 {
    type Output = Series2;
    fn sub(self, rhs: &Series2) -> Series2 {
        let (mx, my) = grid(self, rhs);
        let mut out = Series2::zero(mx, my);
        for i in 0..=mx {
            for j in 0..=my {
                out.set(i, j, self.get(i, j) - rhs.get(i, j));
            }
        }
        out
    }
}

impl Mul for &Series2 {
    type Output = Series2;
    fn mul(self, rhs: &Series2) -> Series2 {
        let (mx, my) = grid(self, rhs);
        let mut out = Series2::zero(mx, my);
        for (i1, j1, a) in self.terms() {
            if i1 > mx || j1 > my {
                continue;
            }
            for i2 in 0..=(mx - i1) {
                for j2 in 0..=(my - j1) {
                    let b = rhs.get(i2, j2);
                    if !b.is_zero() {
                        out.add_at(i1 + i2, j1 + j2, &(&a * &b));
                    }
                }
            }
        }
        out
    }
}

impl fmt::Display for Series2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms = self.terms();
        if terms.is_empty() {
            return write!(f, "0");
        }
        for (n, (i, j, c)) in terms.iter().enumerate() {
            let neg = c.is_negative();
            let a = c.abs();
            if n == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { '-' } else { '+' })?;
            }
            let mono = match (i, j) {
                (0, 0) => String::new(),
                _ => {
                    let mut s = String::new();
                    if *i == 1 {
                        s.push('x');
                    } else if *i > 1 {
                        s.push_str(&format!("x^{i}"));
                    }
                    if *j == 1 {
                        s.push('y');
                    } else if *j > 1 {
                        s.push_str(&format!("y^{j}"));
                    }
                    s
                }
            };
            if mono.is_empty() || !a.is_one() {
                write!(f, "{a}")?;
            }
            write!(f, "{mono}")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ints(s: &Series1) -> Vec<i64> {
        s.to_i64s().unwrap()
    }

    #[test]
    fn invert_geometric() {
        let s = Series1::from_ints(&[1, -1], 3);
        assert_eq!(ints(&s.invert().unwrap()), vec![1, 1, 1, 1]);
    }

    #[test]
    fn invert_case_iv_denominator() {
        // Oracle: c_n = 6c_{n-1} - 6c_{n-2} + 2c_{n-3} by direct recurrence.
        let mut oracle = vec![1i64];
        for n in 1..=4usize {
            let get = |k: isize| if k < 0 { 0 } else { oracle[k as usize] };
            let n = n as isize;
            let c = 6 * get(n - 1) - 6 * get(n - 2) + 2 * get(n - 3);
            oracle.push(c);
        }
        assert_eq!(oracle, vec![1, 6, 30, 146, 708]);
        let s = Series1::from_ints(&[1, -6, 6, -2], 4);
        assert_eq!(ints(&s.invert().unwrap()), oracle);
    }

    #[test]
    fn invert_identity_and_non_unit() {
        assert_eq!(ints(&Series1::one(5).invert().unwrap()), vec![1, 0, 0, 0, 0, 0]);
        assert_eq!(
            Series1::from_ints(&[0, 1], 3).invert(),
            Err(Error::NonUnitSeries)
        );
    }

    /// Brute-force expansion of a finite product of binomials `(1 - z^k)^e`.
    fn naive_product(prefactor: &[i64], factors: &[(usize, u32)], n: usize) -> Vec<i64> {
        let mut acc = vec![0i64; n + 1];
        for (i, c) in prefactor.iter().enumerate() {
            if i <= n {
                acc[i] = *c;
            }
        }
        for &(k, e) in factors {
            for _ in 0..e {
                let mut next = acc.clone();
                for d in k..=n {
                    next[d] -= acc[d - k];
                }
                acc = next;
            }
        }
        acc
    }

    #[test]
    fn product_formula_case20_low_degrees() {
        let oracle = naive_product(&[1], &[(1, 5), (2, 3), (3, 5), (4, 3)], 4);
        assert_eq!(oracle, vec![1, -5, 7, 0, 0]);
        assert_eq!(ints(&product_formula(&ProductSpec::case20(), 4)), oracle);
    }

    #[test]
    fn product_formula_case12_and_empty() {
        assert_eq!(ints(&product_formula(&ProductSpec::case12(), 2)), vec![1, -5, 7]);
        let empty = ProductSpec::new(vec![1], vec![]);
        assert_eq!(ints(&product_formula(&empty, 3)), vec![1, 0, 0, 0]);
    }

    #[test]
    fn bivariate_inverse_and_specialisation() {
        let mut s = Series2::one(3, 3);
        s.set_i64(1, 1, -2);
        let inv = s.invert().unwrap();
        assert_eq!(inv.get(2, 2), q(4));
        assert_eq!(inv.get(3, 3), q(8));
        assert_eq!(inv.get(1, 2), q(0));
        let prod = &s * &inv;
        assert_eq!(prod, Series2::one(3, 3));
        let diag = inv.specialize(1, 1, 6);
        assert_eq!(ints(&diag), vec![1, 0, 2, 0, 4, 0, 8]);
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        fn series(n: usize) -> impl Strategy<Value = Series1> {
            proptest::collection::vec(-4i64..5, n + 1).prop_map(move |c| Series1::from_ints(&c, n))
        }

        fn unit_series(n: usize) -> impl Strategy<Value = Series1> {
            (prop_oneof![Just(1i64), Just(-1), Just(2), Just(-3)], series(n)).prop_map(
                move |(c0, mut s)| {
                    s.coeffs[0] = q(c0);
                    s
                },
            )
        }

        proptest! {
            #[test]
            fn double_inverse(s in unit_series(7)) {
                prop_assert_eq!(s.invert().unwrap().invert().unwrap(), s.clone());
                prop_assert_eq!(&s * &s.invert().unwrap(), Series1::one(7));
            }

            #[test]
            fn ring_laws(a in series(6), b in series(6), c in series(6)) {
                prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
                prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
                prop_assert_eq!(&a * &b, &b * &a);
            }

            #[test]
            fn product_order_independent(e in proptest::collection::vec(-2i64..4, 1..4)) {
                // Reversing the factor list cannot change a commutative product.
                let n = 9;
                let forward = product_formula(&ProductSpec::new(vec![1], e.clone()), n);
                let mut direct = Series1::one(n);
                for k in (1..=n).rev() {
                    let ex = e[(k - 1) % e.len()];
                    let mut f = Series1::one(n);
                    f.coeffs[k] = q(-1);
                    let f = if ex >= 0 { f.pow(ex as u32) } else { f.invert().unwrap().pow((-ex) as u32) };
                    direct = &direct * &f;
                }
                prop_assert_eq!(forward, direct);
            }
        }
    }
}
