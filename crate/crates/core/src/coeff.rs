//! Exact coefficient arithmetic: Laurent polynomials in the deformation
//! parameter `q` over the rationals, the involution `q -> q^-1`, evaluation
//! at `q = 1`, and exact linear algebra over the fraction field.
//!
//! No floating point anywhere; every identity in this crate is checked with
//! zero tolerance.

use num::{BigInt, BigRational, One, Signed, Zero};
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use thiserror::Error;

pub type Rat = BigRational;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum CoeffError {
    #[error("cannot invert non-monomial Laurent polynomial `{0}`")]
    NonUnitInverse(String),
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
}

/// A Laurent polynomial in `q` with rational coefficients, stored sparsely
/// as exponent -> coefficient with no zero entries.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct LaurentScalar {
    terms: BTreeMap<i64, Rat>,
}

pub fn rat(n: i64, d: i64) -> Rat {
    Rat::new(BigInt::from(n), BigInt::from(d))
}

impl LaurentScalar {
    pub fn zero() -> Self {
        LaurentScalar { terms: BTreeMap::new() }
    }

    pub fn one() -> Self {
        Self::monomial(0, Rat::one())
    }

    pub fn q() -> Self {
        Self::q_pow(1)
    }

    pub fn q_pow(e: i64) -> Self {
        Self::monomial(e, Rat::one())
    }

    pub fn from_int(n: i64) -> Self {
        Self::monomial(0, Rat::from_integer(BigInt::from(n)))
    }

    pub fn from_rat(r: Rat) -> Self {
        Self::monomial(0, r)
    }

    pub fn monomial(exp: i64, coeff: Rat) -> Self {
        let mut terms = BTreeMap::new();
        if !coeff.is_zero() {
            terms.insert(exp, coeff);
        }
        LaurentScalar { terms }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms.get(&0).map(|c| c.is_one()).unwrap_or(false)
    }

    pub fn terms(&self) -> impl Iterator<Item = (&i64, &Rat)> {
        self.terms.iter()
    }

    /// Some((exponent, coefficient)) when the polynomial has exactly one term.
    pub fn as_monomial(&self) -> Option<(i64, &Rat)> {
        if self.terms.len() == 1 {
            self.terms.iter().next().map(|(e, c)| (*e, c))
        } else {
            None
        }
    }

    fn insert(&mut self, exp: i64, coeff: Rat) {
        if coeff.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(exp) {
            Entry::Vacant(v) => {
                v.insert(coeff);
            }
            Entry::Occupied(mut o) => {
                let sum = o.get() + &coeff;
                if sum.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = sum;
                }
            }
        }
    }

    /// The involution `q -> q^-1`, extended linearly: negates every exponent.
    pub fn involute(&self) -> Self {
        LaurentScalar {
            terms: self.terms.iter().map(|(e, c)| (-e, c.clone())).collect(),
        }
    }

    /// Ring homomorphism to the rationals sending `q -> 1`.
    pub fn eval_q1(&self) -> Rat {
        self.terms.values().fold(Rat::zero(), |acc, c| acc + c)
    }

    /// Integer power; negative exponents are only defined for monomials
    /// (units of the Laurent ring).
    pub fn pow(&self, e: i64) -> Result<Self, CoeffError> {
        if e == 0 {
            return Ok(Self::one());
        }
        if e > 0 {
            let mut acc = Self::one();
            for _ in 0..e {
                acc = &acc * self;
            }
            return Ok(acc);
        }
        let inv = self.inverse()?;
        inv.pow(-e)
    }

    /// Multiplicative inverse; defined only for monomials.
    pub fn inverse(&self) -> Result<Self, CoeffError> {
        match self.as_monomial() {
            Some((e, c)) => Ok(Self::monomial(-e, Rat::one() / c.clone())),
            None => Err(CoeffError::NonUnitInverse(self.to_string())),
        }
    }

    pub fn min_exp(&self) -> Option<i64> {
        self.terms.keys().next().copied()
    }

    pub fn max_exp(&self) -> Option<i64> {
        self.terms.keys().next_back().copied()
    }

    /// Multiply by `q^e`.
    pub fn shift(&self, e: i64) -> Self {
        LaurentScalar {
            terms: self.terms.iter().map(|(k, c)| (k + e, c.clone())).collect(),
        }
    }

    /// Leading coefficient (highest exponent).
    fn leading(&self) -> Option<(i64, &Rat)> {
        self.terms.iter().next_back().map(|(e, c)| (*e, c))
    }

    /// Exact division; `None` when `self` is not a multiple of `rhs`.
    /// Performed as ordinary polynomial division after shifting both
    /// operands to lowest exponent 0 (powers of `q` are units).
    pub fn divide_exact(&self, rhs: &Self) -> Option<Self> {
        if rhs.is_zero() {
            return None;
        }
        if self.is_zero() {
            return Some(Self::zero());
        }
        let slo = self.min_exp().unwrap();
        let rlo = rhs.min_exp().unwrap();
        let b = rhs.shift(-rlo);
        let (de, dc) = b.leading().map(|(e, c)| (e, c.clone())).unwrap();
        let mut rem = self.shift(-slo);
        let mut quo = Self::zero();
        while let Some((re, rc)) = rem.leading().map(|(e, c)| (e, c.clone())) {
            if re < de {
                return None;
            }
            let t = Self::monomial(re - de, rc / &dc);
            rem = &rem - &(&t * &b);
            quo = &quo + &t;
        }
        Some(quo.shift(slo - rlo))
    }

    /// Greatest common divisor in the Laurent ring, normalized to have
    /// lowest exponent 0 and leading coefficient 1.
    pub fn gcd(&self, other: &Self) -> Self {
        if self.is_zero() {
            return other.normalized_assoc();
        }
        if other.is_zero() {
            return self.normalized_assoc();
        }
        let mut a = self.normalized_assoc();
        let mut b = other.normalized_assoc();
        while !b.is_zero() {
            let r = a.poly_rem(&b);
            a = b;
            b = r.normalized_assoc();
        }
        a.normalized_assoc()
    }

    /// Remainder of polynomial division (after shifting to min exponent 0).
    fn poly_rem(&self, rhs: &Self) -> Self {
        let mut rem = self.normalized_assoc();
        let d = rhs.normalized_assoc();
        let (de, dc) = match d.leading() {
            Some(l) => (l.0, l.1.clone()),
            None => return rem,
        };
        loop {
            let (re, rc) = match rem.leading() {
                Some(l) => (l.0, l.1.clone()),
                None => return rem,
            };
            if re < de {
                return rem;
            }
            let t = Self::monomial(re - de, rc / &dc);
            rem = &rem - &(&t * &d);
        }
    }

    /// Unit-normalized associate: shifted to min exponent 0 with leading
    /// coefficient 1.
    fn normalized_assoc(&self) -> Self {
        match (self.min_exp(), self.leading()) {
            (Some(lo), Some((_, lc))) => {
                let inv = Rat::one() / lc.clone();
                LaurentScalar {
                    terms: self
                        .terms
                        .iter()
                        .map(|(e, c)| (e - lo, c * &inv))
                        .collect(),
                }
            }
            _ => Self::zero(),
        }
    }
}

impl Add for &LaurentScalar {
    type Output = LaurentScalar;
    fn add(self, rhs: &LaurentScalar) -> LaurentScalar {
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.insert(*e, c.clone());
        }
        out
    }
}

impl Sub for &LaurentScalar {
    type Output = LaurentScalar;
    fn sub(self, rhs: &LaurentScalar) -> LaurentScalar {
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.insert(*e, -c.clone());
        }
        out
    }
}

impl Mul for &LaurentScalar {
    type Output = LaurentScalar;
    fn mul(self, rhs: &LaurentScalar) -> LaurentScalar {
        let mut out = LaurentScalar::zero();
        for (e1, c1) in &self.terms {
            for (e2, c2) in &rhs.terms {
                out.insert(e1 + e2, c1 * c2);
            }
        }
        out
    }
}

impl Neg for &LaurentScalar {
    type Output = LaurentScalar;
    fn neg(self) -> LaurentScalar {
        LaurentScalar {
            terms: self.terms.iter().map(|(e, c)| (*e, -c.clone())).collect(),
        }
    }
}

impl Add for LaurentScalar {
    type Output = LaurentScalar;
    fn add(self, rhs: LaurentScalar) -> LaurentScalar {
        &self + &rhs
    }
}

impl Sub for LaurentScalar {
    type Output = LaurentScalar;
    fn sub(self, rhs: LaurentScalar) -> LaurentScalar {
        &self - &rhs
    }
}

impl Mul for LaurentScalar {
    type Output = LaurentScalar;
    fn mul(self, rhs: LaurentScalar) -> LaurentScalar {
        &self * &rhs
    }
}

impl Neg for LaurentScalar {
    type Output = LaurentScalar;
    fn neg(self) -> LaurentScalar {
        -&self
    }
}

fn fmt_rat(r: &Rat) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

impl fmt::Display for LaurentScalar {
    /// Canonical sorted form, e.g. `-2*q^-1 + 3*q`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (e, c) in &self.terms {
            let neg = c.is_negative();
            let abs = c.abs();
            if first {
                if neg {
                    write!(f, "-")?;
                }
                first = false;
            } else if neg {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let qpart = match e {
                0 => None,
                1 => Some("q".to_string()),
                _ => Some(format!("q^{}", e)),
            };
            match (qpart, abs.is_one()) {
                (None, _) => write!(f, "{}", fmt_rat(&abs))?,
                (Some(qp), true) => write!(f, "{}", qp)?,
                (Some(qp), false) => write!(f, "{}*{}", fmt_rat(&abs), qp)?,
            }
        }
        Ok(())
    }
}

/// A fraction of Laurent polynomials, kept in a canonical reduced form so
/// that equality is structural: gcd removed, denominator shifted to lowest
/// exponent 0 and made monic.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RationalFunctionScalar {
    num: LaurentScalar,
    den: LaurentScalar,
}

impl RationalFunctionScalar {
    pub fn new(num: LaurentScalar, den: LaurentScalar) -> Self {
        assert!(!den.is_zero(), "zero denominator");
        let mut rf = RationalFunctionScalar { num, den };
        rf.reduce();
        rf
    }

    pub fn from_laurent(p: LaurentScalar) -> Self {
        RationalFunctionScalar { num: p, den: LaurentScalar::one() }
    }

    pub fn zero() -> Self {
        Self::from_laurent(LaurentScalar::zero())
    }

    pub fn one() -> Self {
        Self::from_laurent(LaurentScalar::one())
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn numer(&self) -> &LaurentScalar {
        &self.num
    }

    pub fn denom(&self) -> &LaurentScalar {
        &self.den
    }

    /// Some(p) when the denominator is the unit `1`.
    pub fn as_laurent(&self) -> Option<&LaurentScalar> {
        if self.den.is_one() {
            Some(&self.num)
        } else {
            None
        }
    }

    fn reduce(&mut self) {
        if self.num.is_zero() {
            self.den = LaurentScalar::one();
            return;
        }
        let g = self.num.gcd(&self.den);
        if !g.is_one() {
            self.num = self.num.divide_exact(&g).expect("gcd divides numerator");
            self.den = self.den.divide_exact(&g).expect("gcd divides denominator");
        }
        // Normalize the denominator to a canonical associate and absorb the
        // unit into the numerator.
        let lo = self.den.min_exp().unwrap();
        let (_, lc) = self.den.leading().unwrap();
        let unit = LaurentScalar::monomial(-lo, Rat::one() / lc.clone());
        self.num = &self.num * &unit;
        self.den = &self.den * &unit;
    }

    pub fn inverse(&self) -> Result<Self, CoeffError> {
        if self.is_zero() {
            return Err(CoeffError::NonUnitInverse("0".into()));
        }
        Ok(Self::new(self.den.clone(), self.num.clone()))
    }
}

impl Add for &RationalFunctionScalar {
    type Output = RationalFunctionScalar;
    fn add(self, rhs: &RationalFunctionScalar) -> RationalFunctionScalar {
        RationalFunctionScalar::new(
            &(&self.num * &rhs.den) + &(&rhs.num * &self.den),
            &self.den * &rhs.den,
        )
    }
}

impl Sub for &RationalFunctionScalar {
    type Output = RationalFunctionScalar;
    fn sub(self, rhs: &RationalFunctionScalar) -> RationalFunctionScalar {
        RationalFunctionScalar::new(
            &(&self.num * &rhs.den) - &(&rhs.num * &self.den),
            &self.den * &rhs.den,
        )
    }
}

impl Mul for &RationalFunctionScalar {
    type Output = RationalFunctionScalar;
    fn mul(self, rhs: &RationalFunctionScalar) -> RationalFunctionScalar {
        RationalFunctionScalar::new(&self.num * &rhs.num, &self.den * &rhs.den)
    }
}

impl Neg for &RationalFunctionScalar {
    type Output = RationalFunctionScalar;
    fn neg(self) -> RationalFunctionScalar {
        RationalFunctionScalar { num: -&self.num, den: self.den.clone() }
    }
}

impl fmt::Display for RationalFunctionScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({}) / ({})", self.num, self.den)
        }
    }
}

/// Outcome of exact linear solving.
#[derive(Debug, Clone)]
pub enum LinearSolution {
    Unique(Vec<RationalFunctionScalar>),
    /// Underdetermined: one particular solution plus a basis of the kernel.
    Parametric {
        particular: Vec<RationalFunctionScalar>,
        kernel: Vec<Vec<RationalFunctionScalar>>,
    },
    Inconsistent,
}

/// Exact Gaussian elimination over the fraction field of the Laurent ring.
pub fn linear_solve(
    matrix: &[Vec<RationalFunctionScalar>],
    rhs: &[RationalFunctionScalar],
) -> Result<LinearSolution, CoeffError> {
    let rows = matrix.len();
    if rows != rhs.len() {
        return Err(CoeffError::DimensionMismatch(format!(
            "{} rows vs {} right-hand sides",
            rows,
            rhs.len()
        )));
    }
    let cols = matrix.first().map(|r| r.len()).unwrap_or(0);
    for r in matrix {
        if r.len() != cols {
            return Err(CoeffError::DimensionMismatch("ragged matrix".into()));
        }
    }

    // Augmented matrix, reduced to row echelon form.
    let mut aug: Vec<Vec<RationalFunctionScalar>> = matrix
        .iter()
        .zip(rhs)
        .map(|(row, b)| {
            let mut r = row.clone();
            r.push(b.clone());
            r
        })
        .collect();

    let mut pivot_cols = Vec::new();
    let mut prow = 0usize;
    for col in 0..cols {
        let Some(pr) = (prow..rows).find(|&r| !aug[r][col].is_zero()) else {
            continue;
        };
        aug.swap(prow, pr);
        let inv = aug[prow][col].inverse().expect("nonzero pivot");
        for c in col..=cols {
            aug[prow][c] = &aug[prow][c] * &inv;
        }
        for r in 0..rows {
            if r != prow && !aug[r][col].is_zero() {
                let f = aug[r][col].clone();
                for c in col..=cols {
                    let t = &aug[prow][c] * &f;
                    aug[r][c] = &aug[r][c] - &t;
                }
            }
        }
        pivot_cols.push(col);
        prow += 1;
        if prow == rows {
            break;
        }
    }

    // Inconsistent when a zero row has nonzero right-hand side.
    for r in prow..rows {
        if aug[r][cols].is_zero() {
            continue;
        }
        if aug[r][..cols].iter().all(|e| e.is_zero()) {
            return Ok(LinearSolution::Inconsistent);
        }
    }

    let mut particular = vec![RationalFunctionScalar::zero(); cols];
    for (i, &pc) in pivot_cols.iter().enumerate() {
        particular[pc] = aug[i][cols].clone();
    }

    let free_cols: Vec<usize> = (0..cols).filter(|c| !pivot_cols.contains(c)).collect();
    if free_cols.is_empty() {
        return Ok(LinearSolution::Unique(particular));
    }

    let mut kernel = Vec::new();
    for &fc in &free_cols {
        let mut v = vec![RationalFunctionScalar::zero(); cols];
        v[fc] = RationalFunctionScalar::one();
        for (i, &pc) in pivot_cols.iter().enumerate() {
            v[pc] = -&aug[i][fc];
        }
        kernel.push(v);
    }
    Ok(LinearSolution::Parametric { particular, kernel })
}

/// Rank of a matrix over the fraction field; used for span comparisons.
pub fn rank(matrix: &[Vec<RationalFunctionScalar>]) -> usize {
    let rows = matrix.len();
    if rows == 0 {
        return 0;
    }
    let cols = matrix[0].len();
    let mut m: Vec<Vec<RationalFunctionScalar>> = matrix.to_vec();
    let mut rank = 0usize;
    for col in 0..cols {
        let Some(pr) = (rank..rows).find(|&r| !m[r][col].is_zero()) else {
            continue;
        };
        m.swap(rank, pr);
        let inv = m[rank][col].inverse().expect("nonzero pivot");
        for c in col..cols {
            m[rank][c] = &m[rank][c] * &inv;
        }
        for r in 0..rows {
            if r != rank && !m[r][col].is_zero() {
                let f = m[r][col].clone();
                for c in col..cols {
                    let t = &m[rank][c] * &f;
                    m[r][c] = &m[r][c] - &t;
                }
            }
        }
        rank += 1;
        if rank == rows {
            break;
        }
    }
    rank
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q() -> LaurentScalar {
        LaurentScalar::q()
    }

    #[test]
    fn unit_pair_multiplies_to_one() {
        assert!((&q() * &LaurentScalar::q_pow(-1)).is_one());
    }

    #[test]
    fn additive_inverse_cancels() {
        let q2 = LaurentScalar::q_pow(2);
        assert!((&q2 + &-&q2).is_zero());
    }

    #[test]
    fn balanced_monomial_exchange_factor_is_one() {
        // Exchange exponent n(a+c) - n(b+d) with n = 2, a = d = 1, b = c = 0.
        let n = 2i64;
        let (a, b, c, d) = (1i64, 0i64, 0i64, 1i64);
        let e = n * (a + c) - n * (b + d);
        assert!(LaurentScalar::q_pow(-1).pow(2).unwrap() == LaurentScalar::q_pow(-2));
        assert!(LaurentScalar::q_pow(e).is_one());
    }

    #[test]
    fn involution_examples() {
        assert_eq!(LaurentScalar::q_pow(2).involute(), LaurentScalar::q_pow(-2));
        assert!(LaurentScalar::one().involute().is_one());
        let x = &(&LaurentScalar::from_int(3) * &q()) - &(&LaurentScalar::from_int(2) * &LaurentScalar::q_pow(-1));
        let y = &(&LaurentScalar::from_int(3) * &LaurentScalar::q_pow(-1)) - &(&LaurentScalar::from_int(2) * &q());
        assert_eq!(x.involute(), y);
    }

    #[test]
    fn non_monomial_inverse_rejected() {
        let p = &LaurentScalar::one() + &q();
        assert!(matches!(p.inverse(), Err(CoeffError::NonUnitInverse(_))));
        assert!(matches!(p.pow(-1), Err(CoeffError::NonUnitInverse(_))));
    }

    #[test]
    fn display_canonical() {
        let x = &(&LaurentScalar::from_int(3) * &q()) - &(&LaurentScalar::from_int(2) * &LaurentScalar::q_pow(-1));
        assert_eq!(x.to_string(), "-2*q^-1 + 3*q");
    }

    #[test]
    fn gcd_and_fraction_reduction() {
        // (q^2 - 1)/(q - 1) reduces to q + 1.
        let num = &LaurentScalar::q_pow(2) - &LaurentScalar::one();
        let den = &q() - &LaurentScalar::one();
        let f = RationalFunctionScalar::new(num, den);
        let expect = RationalFunctionScalar::from_laurent(&q() + &LaurentScalar::one());
        assert_eq!(f, expect);
    }

    #[test]
    fn solve_identity() {
        let one = RationalFunctionScalar::one();
        let zero = RationalFunctionScalar::zero();
        let m = vec![vec![one.clone(), zero.clone()], vec![zero.clone(), one.clone()]];
        let rhs = vec![one.clone(), zero.clone()];
        match linear_solve(&m, &rhs).unwrap() {
            LinearSolution::Unique(sol) => {
                assert_eq!(sol[0], one);
                assert_eq!(sol[1], zero);
            }
            other => panic!("expected unique solution, got {:?}", other),
        }
    }

    #[test]
    fn solve_kernel_of_q_row() {
        // (q, -1) . x = 0 has kernel spanned by (1, q).
        let m = vec![vec![
            RationalFunctionScalar::from_laurent(q()),
            -&RationalFunctionScalar::one(),
        ]];
        let rhs = vec![RationalFunctionScalar::zero()];
        match linear_solve(&m, &rhs).unwrap() {
            LinearSolution::Parametric { particular, kernel } => {
                assert!(particular.iter().all(|e| e.is_zero()));
                assert_eq!(kernel.len(), 1);
                // Substitute back: q*k0 - k1 = 0.
                let r = &(&RationalFunctionScalar::from_laurent(q()) * &kernel[0][0])
                    - &kernel[0][1];
                assert!(r.is_zero());
            }
            other => panic!("expected parametric solution, got {:?}", other),
        }
    }

    #[test]
    fn solve_inconsistent() {
        let one = RationalFunctionScalar::one();
        let m = vec![vec![one.clone()], vec![one.clone()]];
        let rhs = vec![RationalFunctionScalar::zero(), one.clone()];
        assert!(matches!(linear_solve(&m, &rhs).unwrap(), LinearSolution::Inconsistent));
    }

    #[test]
    fn eval_q1_is_ring_hom() {
        let a = &q() + &LaurentScalar::from_int(2);
        let b = &LaurentScalar::q_pow(-3) - &q();
        assert_eq!((&a * &b).eval_q1(), a.eval_q1() * b.eval_q1());
        assert_eq!((&a + &b).eval_q1(), a.eval_q1() + b.eval_q1());
    }
}
