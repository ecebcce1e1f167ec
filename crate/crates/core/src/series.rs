//! Truncated Laurent series over a finite field, with explicit valuation
//! and precision bookkeeping, and the additive solvers built on them.
//!
//! A series stores the coefficients of t^val .. t^prec and asserts nothing
//! beyond t^prec. Arithmetic propagates precision pessimistically:
//! additive ops keep the smaller precision, a product f*g is known to
//! min(val f + prec g, val g + prec f), and a p-power Frobenius sharpens
//! to p*prec + p - 1 because the cross terms of (f + O(t^{P+1}))^p vanish
//! in characteristic p.

use std::fmt;

use crate::error::{Error, Result};
use crate::field::{FieldElement, FiniteField};
use crate::ring::{ArtinSchreierRing, Ring};

/// Laurent series known modulo t^{prec+1}.
///
/// Invariants: `coeffs.len() == prec - val + 1`, the leading stored
/// coefficient is nonzero, and a series that is zero to its precision is
/// stored with empty coefficients and `val == prec + 1`.
#[derive(Clone, PartialEq)]
pub struct LaurentSeries {
    field: FiniteField,
    val: i64,
    prec: i64,
    coeffs: Vec<FieldElement>,
}

impl fmt::Debug for LaurentSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for LaurentSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut wrote = false;
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if wrote {
                write!(f, " + ")?;
            }
            let exp = self.val + i as i64;
            let needs_parens = c.coeffs().iter().filter(|&&x| x != 0).count() > 1;
            let cs = if needs_parens {
                format!("({c})")
            } else {
                format!("{c}")
            };
            match exp {
                0 => write!(f, "{cs}")?,
                1 if c.is_one() => write!(f, "t")?,
                1 => write!(f, "{cs}*t")?,
                _ if c.is_one() => write!(f, "t^{exp}")?,
                _ => write!(f, "{cs}*t^{exp}")?,
            }
            wrote = true;
        }
        if !wrote {
            write!(f, "0")?;
        }
        write!(f, " + O(t^{})", self.prec + 1)
    }
}

impl LaurentSeries {
    fn normalized(
        field: FiniteField,
        mut val: i64,
        prec: i64,
        mut coeffs: Vec<FieldElement>,
    ) -> Self {
        if prec < val {
            coeffs.clear();
        } else {
            let want = (prec - val + 1) as usize;
            coeffs.truncate(want);
            while coeffs.len() < want {
                coeffs.push(field.zero());
            }
            while let Some(first) = coeffs.first() {
                if first.is_zero() {
                    coeffs.remove(0);
                    val += 1;
                } else {
                    break;
                }
            }
        }
        if coeffs.is_empty() {
            val = prec + 1;
        }
        LaurentSeries {
            field,
            val,
            prec,
            coeffs,
        }
    }

    /// The zero series, known modulo t^{prec+1}.
    pub fn zero(field: &FiniteField, prec: i64) -> Self {
        Self::normalized(field.clone(), prec + 1, prec, Vec::new())
    }

    pub fn one(field: &FiniteField, prec: i64) -> Self {
        Self::monomial(field.one(), 0, prec)
    }

    /// `coeff * t^exp` known modulo t^{prec+1}. A monomial above the
    /// precision collapses to the zero series.
    pub fn monomial(coeff: FieldElement, exp: i64, prec: i64) -> Self {
        let field = coeff.field().clone();
        Self::normalized(field, exp, prec, vec![coeff])
    }

    /// Sparse constructor: sums `coeff * t^exp` terms, truncated at prec.
    pub fn from_terms(field: &FiniteField, prec: i64, terms: &[(i64, FieldElement)]) -> Self {
        if terms.is_empty() {
            return Self::zero(field, prec);
        }
        let val = terms.iter().map(|&(e, _)| e).min().unwrap();
        if val > prec {
            return Self::zero(field, prec);
        }
        let mut coeffs = vec![field.zero(); (prec - val + 1) as usize];
        for (exp, c) in terms {
            assert!(c.field() == field, "field mismatch in from_terms");
            if *exp <= prec {
                let slot = (exp - val) as usize;
                let sum = &coeffs[slot] + c;
                coeffs[slot] = sum;
            }
        }
        Self::normalized(field.clone(), val, prec, coeffs)
    }

    /// Dense constructor; `coeffs` must cover exactly t^val .. t^prec.
    pub fn from_coeffs(
        field: &FiniteField,
        val: i64,
        prec: i64,
        coeffs: Vec<FieldElement>,
    ) -> Result<Self> {
        let want = if prec >= val { (prec - val + 1) as usize } else { 0 };
        if coeffs.len() != want {
            return Err(Error::Usage(format!(
                "series needs {want} coefficients for exponents {val}..={prec}, got {}",
                coeffs.len()
            )));
        }
        if coeffs.iter().any(|c| c.field() != field) {
            return Err(Error::Usage("series coefficient from the wrong field".into()));
        }
        Ok(Self::normalized(field.clone(), val, prec, coeffs))
    }

    pub fn field(&self) -> &FiniteField {
        &self.field
    }

    /// Valuation as far as it is known; for the zero series this is
    /// `prec + 1` by convention.
    pub fn val(&self) -> i64 {
        self.val
    }

    pub fn prec(&self) -> i64 {
        self.prec
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Leading (lowest-exponent) coefficient, if any.
    pub fn leading(&self) -> Option<&FieldElement> {
        self.coeffs.first()
    }

    /// Coefficient of t^k for k <= prec. Asking above the precision is a
    /// caller bug.
    pub fn coeff(&self, k: i64) -> FieldElement {
        assert!(k <= self.prec, "coefficient of t^{k} is beyond the precision");
        if k < self.val {
            self.field.zero()
        } else {
            self.coeffs[(k - self.val) as usize].clone()
        }
    }

    /// Drops knowledge above t^new_prec (no-op if already coarser).
    pub fn truncate(&self, new_prec: i64) -> Self {
        if new_prec >= self.prec {
            return self.clone();
        }
        Self::normalized(
            self.field.clone(),
            self.val,
            new_prec,
            self.coeffs.clone(),
        )
    }

    /// Multiplication by the exact monomial t^k.
    pub fn shift(&self, k: i64) -> Self {
        Self::normalized(
            self.field.clone(),
            self.val + k,
            self.prec + k,
            self.coeffs.clone(),
        )
    }

    pub fn scale(&self, c: &FieldElement) -> Self {
        assert!(c.field() == &self.field, "field mismatch in scale");
        Self::normalized(
            self.field.clone(),
            self.val,
            self.prec,
            self.coeffs.iter().map(|a| a * c).collect(),
        )
    }

    pub fn inverse(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::Domain(
                "inverse of a series that is zero to its precision".into(),
            ));
        }
        let n = self.coeffs.len();
        let a0_inv = self.coeffs[0].inverse().expect("leading coeff is nonzero");
        let mut out = Vec::with_capacity(n);
        out.push(a0_inv.clone());
        for k in 1..n {
            let mut s = self.field.zero();
            for j in 1..=k {
                s = &s + &(&self.coeffs[j] * &out[k - j]);
            }
            out.push(-&(&a0_inv * &s));
        }
        Ok(Self::normalized(
            self.field.clone(),
            -self.val,
            self.prec - 2 * self.val,
            out,
        ))
    }

    /// Coefficientwise p-power composed with t -> t^p; this is the
    /// Frobenius of the series ring and gains precision.
    pub fn frobenius(&self) -> Self {
        let p = self.field.characteristic() as i64;
        let new_prec = p * self.prec + p - 1;
        if self.is_zero() {
            return Self::zero(&self.field, new_prec);
        }
        let mut coeffs = vec![self.field.zero(); (p * (self.prec - self.val)) as usize + 1];
        for (i, c) in self.coeffs.iter().enumerate() {
            coeffs[i * p as usize] = c.frobenius();
        }
        Self::normalized(self.field.clone(), p * self.val, new_prec, coeffs)
    }

    /// The additive map f -> f^p - f.
    pub fn artin_schreier(&self) -> Self {
        &self.frobenius() - self
    }

    /// Equality of every coefficient both sides know.
    pub fn agrees_with(&self, other: &Self) -> bool {
        if self.field != other.field {
            return false;
        }
        let prec = self.prec.min(other.prec);
        let lo = self.val.min(other.val);
        if lo > prec {
            return true;
        }
        (lo..=prec).all(|k| self.coeff(k) == other.coeff(k))
    }
}

impl std::ops::Add for &LaurentSeries {
    type Output = LaurentSeries;
    fn add(self, rhs: &LaurentSeries) -> LaurentSeries {
        assert!(self.field == rhs.field, "field mismatch in +");
        let prec = self.prec.min(rhs.prec);
        let val = self.val.min(rhs.val).min(prec + 1);
        let mut coeffs = Vec::new();
        for k in val..=prec {
            coeffs.push(&self.coeff(k) + &rhs.coeff(k));
        }
        LaurentSeries::normalized(self.field.clone(), val, prec, coeffs)
    }
}

impl std::ops::Sub for &LaurentSeries {
    type Output = LaurentSeries;
    fn sub(self, rhs: &LaurentSeries) -> LaurentSeries {
        self + &(-rhs)
    }
}

impl std::ops::Neg for &LaurentSeries {
    type Output = LaurentSeries;
    fn neg(self) -> LaurentSeries {
        LaurentSeries {
            field: self.field.clone(),
            val: self.val,
            prec: self.prec,
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

impl std::ops::Mul for &LaurentSeries {
    type Output = LaurentSeries;
    fn mul(self, rhs: &LaurentSeries) -> LaurentSeries {
        assert!(self.field == rhs.field, "field mismatch in *");
        let val = self.val + rhs.val;
        let prec = (self.val + rhs.prec).min(rhs.val + self.prec);
        if prec < val || self.is_zero() || rhs.is_zero() {
            return LaurentSeries::zero(&self.field, prec);
        }
        let mut acc = vec![self.field.zero(); (prec - val + 1) as usize];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                let exp = val + (i + j) as i64;
                if exp > prec {
                    break;
                }
                let slot = i + j;
                acc[slot] = &acc[slot] + &(a * b);
            }
        }
        LaurentSeries::normalized(self.field.clone(), val, prec, acc)
    }
}

impl Ring for LaurentSeries {
    fn zero_like(&self) -> Self {
        Self::zero(&self.field, self.prec)
    }

    fn one_like(&self) -> Self {
        Self::one(&self.field, self.prec)
    }

    fn is_zero(&self) -> bool {
        LaurentSeries::is_zero(self)
    }

    fn add(&self, rhs: &Self) -> Self {
        self + rhs
    }

    fn sub(&self, rhs: &Self) -> Self {
        self - rhs
    }

    fn mul(&self, rhs: &Self) -> Self {
        self * rhs
    }

    fn neg(&self) -> Self {
        -self
    }

    fn frobenius(&self) -> Self {
        LaurentSeries::frobenius(self)
    }

    fn characteristic(&self) -> u64 {
        self.field.characteristic()
    }

    fn same_ring(&self, other: &Self) -> bool {
        self.field == other.field
    }
}

impl ArtinSchreierRing for LaurentSeries {
    fn artin_schreier_preimage(&self) -> Option<Self> {
        artin_schreier_solve(self)
    }

    fn add_prime_scalar(&self, k: u64) -> Self {
        self + &LaurentSeries::monomial(self.field.from_u64(k), 0, self.prec)
    }

    fn agrees_with(&self, other: &Self) -> bool {
        LaurentSeries::agrees_with(self, other)
    }
}

/// Solves `b^p - b = l` for `l` in t*k[[t]].
///
/// The solution in t*k[[t]] is unique and given coefficientwise by
/// `b_i = -a_i` when p does not divide i and `b_{np} = b_n^p - a_{np}`,
/// filled in increasing order. The output carries the precision of `l`.
pub fn artin_schreier_solve_tail(l: &LaurentSeries) -> Result<LaurentSeries> {
    if !(l.is_zero() || l.val() >= 1) {
        return Err(Error::Usage(
            "tail solver needs a series with valuation >= 1".into(),
        ));
    }
    let field = l.field().clone();
    let prec = l.prec();
    if prec < 1 {
        return Ok(LaurentSeries::zero(&field, prec));
    }
    let p = field.characteristic() as i64;
    let mut b: Vec<FieldElement> = Vec::with_capacity(prec as usize);
    for i in 1..=prec {
        let a = l.coeff(i);
        let next = if i % p != 0 {
            -&a
        } else {
            &b[(i / p - 1) as usize].frobenius() - &a
        };
        b.push(next);
    }
    Ok(LaurentSeries::normalized(field, 1, prec, b))
}

/// Solves `b^p - b = g` over the local field k((t)), if possible.
///
/// Poles are removed one at a time: a pole of order m is killable only if
/// p | m, by subtracting the image of the p-th root of its leading term
/// shifted to order m/p. The residual constant must have zero absolute
/// trace, and the tail always solves. Returns the solution whose constant
/// coefficient is least in coefficient order, known to the precision of g.
pub fn artin_schreier_solve(g: &LaurentSeries) -> Option<LaurentSeries> {
    let field = g.field().clone();
    let p = field.characteristic() as i64;
    let prec = g.prec();
    let mut r = g.clone();
    let mut parts: Vec<(i64, FieldElement)> = Vec::new();
    while !r.is_zero() && r.val() < 0 {
        let m = -r.val();
        if m % p != 0 {
            return None;
        }
        let c = r.leading().expect("nonzero series has a leading coeff").clone();
        let root = c.pth_root();
        let k = m / p;
        // wp(root * t^{-k}) written out exactly, so no precision is lost
        let wp_term = LaurentSeries::from_terms(&field, r.prec(), &[(-m, c), (-k, -&root)]);
        r = &r - &wp_term;
        parts.push((-k, root));
    }
    let c0 = if !r.is_zero() && r.val() == 0 {
        r.coeff(0)
    } else {
        field.zero()
    };
    let b0 = c0.artin_schreier_preimage()?;
    let tail = &r - &LaurentSeries::monomial(c0, 0, r.prec());
    let bt = artin_schreier_solve_tail(&tail).expect("residual tail has valuation >= 1");
    let mut b = &bt + &LaurentSeries::monomial(b0, 0, prec);
    if !parts.is_empty() {
        b = &b + &LaurentSeries::from_terms(&field, prec, &parts);
    }
    debug_assert!(b.artin_schreier().agrees_with(g), "local solver failed");
    Some(b)
}

/// Polynomials in t^{-1} with field coefficients: the functions on the
/// projective line that are regular away from the marked point t = 0.
#[derive(Clone, PartialEq)]
pub struct GlobalP1Element {
    field: FiniteField,
    // coeffs[j] multiplies t^{-j}; trailing zeros are trimmed
    coeffs: Vec<FieldElement>,
}

impl fmt::Debug for GlobalP1Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (j, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            if j == 0 {
                write!(f, "{c}")?;
            } else if c.is_one() {
                write!(f, "t^-{j}")?;
            } else {
                write!(f, "({c})*t^-{j}")?;
            }
            first = false;
        }
        Ok(())
    }
}

impl GlobalP1Element {
    pub fn new(field: &FiniteField, mut coeffs: Vec<FieldElement>) -> Result<Self> {
        if coeffs.iter().any(|c| c.field() != field) {
            return Err(Error::Usage("coefficient from the wrong field".into()));
        }
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Ok(Self {
            field: field.clone(),
            coeffs,
        })
    }

    pub fn zero(field: &FiniteField) -> Self {
        Self {
            field: field.clone(),
            coeffs: Vec::new(),
        }
    }

    pub fn constant(c: FieldElement) -> Self {
        let field = c.field().clone();
        Self::new(&field, vec![c]).expect("constant is its own coefficient")
    }

    pub fn field(&self) -> &FiniteField {
        &self.field
    }

    /// Coefficient of t^{-j}.
    pub fn coeff(&self, j: usize) -> FieldElement {
        self.coeffs.get(j).cloned().unwrap_or_else(|| self.field.zero())
    }

    /// Coefficients of 1, t^{-1}, t^{-2}, ... (trailing zeros trimmed).
    pub fn coeffs(&self) -> &[FieldElement] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Order of the pole at t = 0 (0 for constants and zero).
    pub fn pole_order(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    /// Exact expansion at the marked point, then truncated at prec.
    pub fn to_series(&self, prec: i64) -> LaurentSeries {
        let terms: Vec<(i64, FieldElement)> = self
            .coeffs
            .iter()
            .enumerate()
            .map(|(j, c)| (-(j as i64), c.clone()))
            .collect();
        LaurentSeries::from_terms(&self.field, prec, &terms)
    }

    pub fn artin_schreier(&self) -> Self {
        Ring::sub(&Ring::frobenius(self), self)
    }
}

impl Ring for GlobalP1Element {
    fn zero_like(&self) -> Self {
        Self::zero(&self.field)
    }

    fn one_like(&self) -> Self {
        Self::constant(self.field.one())
    }

    fn is_zero(&self) -> bool {
        GlobalP1Element::is_zero(self)
    }

    fn add(&self, rhs: &Self) -> Self {
        assert!(self.field == rhs.field, "field mismatch in +");
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let coeffs = (0..n).map(|j| &self.coeff(j) + &rhs.coeff(j)).collect();
        Self::new(&self.field, coeffs).expect("sum coefficients share the field")
    }

    fn sub(&self, rhs: &Self) -> Self {
        self.add(&rhs.neg())
    }

    fn mul(&self, rhs: &Self) -> Self {
        assert!(self.field == rhs.field, "field mismatch in *");
        if self.coeffs.is_empty() || rhs.coeffs.is_empty() {
            return Self::zero(&self.field);
        }
        let mut out = vec![self.field.zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in rhs.coeffs.iter().enumerate() {
                let sum = &out[i + j] + &(a * b);
                out[i + j] = sum;
            }
        }
        Self::new(&self.field, out).expect("product coefficients share the field")
    }

    fn neg(&self) -> Self {
        Self {
            field: self.field.clone(),
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }

    fn frobenius(&self) -> Self {
        if self.coeffs.is_empty() {
            return self.clone();
        }
        let p = self.field.characteristic() as usize;
        let mut out = vec![self.field.zero(); (self.coeffs.len() - 1) * p + 1];
        for (j, c) in self.coeffs.iter().enumerate() {
            out[j * p] = c.frobenius();
        }
        Self::new(&self.field, out).expect("frobenius keeps the field")
    }

    fn characteristic(&self) -> u64 {
        self.field.characteristic()
    }

    fn same_ring(&self, other: &Self) -> bool {
        self.field == other.field
    }
}

/// Splits f = wp(b) + h with b in t*k[[t]] and h a polynomial in t^{-1}
/// (both to the precision of f). The decomposition is unique because the
/// two sectors meet only in 0.
pub fn split_p1(f: &LaurentSeries) -> (LaurentSeries, GlobalP1Element) {
    let field = f.field().clone();
    let cutoff = f.prec().min(0);
    let mut hc = Vec::new();
    if f.val() <= cutoff {
        let order = (-f.val()).max(0) as usize;
        hc = vec![field.zero(); order + 1];
        for exp in f.val()..=cutoff {
            hc[(-exp) as usize] = f.coeff(exp);
        }
    }
    let h = GlobalP1Element::new(&field, hc).expect("coefficients come from f");
    let tail = f - &h.to_series(f.prec());
    let b = artin_schreier_solve_tail(&tail).expect("tail sector after removing h");
    (b, h)
}
