//! Prime fields and their explicit extensions.
//!
//! A field is described by a characteristic `p` and a monic irreducible
//! modulus over F_p; elements are coefficient vectors in the power basis
//! of the residue class of `z`. All arithmetic is exact. Handles are
//! cheap to clone and two handles denote the same field exactly when
//! their descriptors are equal.

use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};

/// Largest supported characteristic.
pub const MAX_PRIME: u64 = 97;
/// Largest supported extension degree over the prime field.
pub const MAX_DEGREE: usize = 8;

/// Characteristic and modulus of a concrete finite field.
///
/// The modulus is stored low-to-high with length `degree + 1` and leading
/// coefficient 1. Prime fields always carry the canonical modulus `z`, so
/// descriptors are unique per field.
#[derive(Debug, PartialEq, Eq)]
pub struct FieldDescriptor {
    p: u64,
    modulus: Vec<u64>,
}

impl FieldDescriptor {
    pub fn characteristic(&self) -> u64 {
        self.p
    }

    pub fn modulus(&self) -> &[u64] {
        &self.modulus
    }

    pub fn degree(&self) -> usize {
        self.modulus.len() - 1
    }
}

/// Shareable handle to a [`FieldDescriptor`].
#[derive(Clone, Eq)]
pub struct FiniteField(Arc<FieldDescriptor>);

impl PartialEq for FiniteField {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0) || self.0 == other.0
    }
}

impl fmt::Debug for FiniteField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FiniteField({self})")
    }
}

impl fmt::Display for FiniteField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.degree() == 1 {
            write!(f, "F_{}", self.characteristic())
        } else {
            write!(
                f,
                "F_{}[z]/({})",
                self.characteristic(),
                poly_string(self.modulus())
            )
        }
    }
}

impl FiniteField {
    /// The prime field F_p.
    pub fn prime(p: u64) -> Result<Self> {
        check_characteristic(p)?;
        Ok(Self(Arc::new(FieldDescriptor {
            p,
            modulus: vec![0, 1],
        })))
    }

    /// F_{p^e} with a deterministic default modulus: a fixed table for the
    /// small fields that appear throughout, the first irreducible in index
    /// order otherwise.
    pub fn extension(p: u64, e: usize) -> Result<Self> {
        check_characteristic(p)?;
        check_degree(e)?;
        if e == 1 {
            return Self::prime(p);
        }
        if let Some(m) = default_modulus(p, e) {
            return Ok(Self(Arc::new(FieldDescriptor { p, modulus: m })));
        }
        let modulus = first_irreducible(p, e)?;
        Ok(Self(Arc::new(FieldDescriptor { p, modulus })))
    }

    /// A field with the caller's modulus. The modulus must be monic,
    /// irreducible, fully reduced mod p, and equal to `z` when linear.
    pub fn with_modulus(p: u64, modulus: &[u64]) -> Result<Self> {
        check_characteristic(p)?;
        if modulus.len() < 2 {
            return Err(Error::Usage("modulus must have degree at least 1".into()));
        }
        check_degree(modulus.len() - 1)?;
        if *modulus.last().unwrap() != 1 {
            return Err(Error::Usage("modulus must be monic".into()));
        }
        if modulus.iter().any(|&c| c >= p) {
            return Err(Error::Usage(format!(
                "modulus coefficients must be reduced mod {p}"
            )));
        }
        if modulus.len() == 2 {
            if modulus[0] != 0 {
                return Err(Error::Usage(
                    "degree-1 modulus must be z (the canonical prime-field descriptor)".into(),
                ));
            }
            return Self::prime(p);
        }
        if !is_irreducible(modulus, p) {
            return Err(Error::Usage(format!(
                "modulus {} is reducible over F_{p}",
                poly_string(modulus)
            )));
        }
        Ok(Self(Arc::new(FieldDescriptor {
            p,
            modulus: modulus.to_vec(),
        })))
    }

    pub fn descriptor(&self) -> &FieldDescriptor {
        &self.0
    }

    pub fn characteristic(&self) -> u64 {
        self.0.p
    }

    pub fn degree(&self) -> usize {
        self.0.degree()
    }

    pub fn modulus(&self) -> &[u64] {
        &self.0.modulus
    }

    /// Number of elements, p^e.
    pub fn order(&self) -> u64 {
        let mut n: u64 = 1;
        for _ in 0..self.degree() {
            n *= self.0.p;
        }
        n
    }

    pub fn zero(&self) -> FieldElement {
        FieldElement {
            field: self.clone(),
            coeffs: vec![0; self.degree()],
        }
    }

    pub fn one(&self) -> FieldElement {
        self.from_u64(1)
    }

    /// The residue class of `z`. In a prime field this is zero.
    pub fn gen(&self) -> FieldElement {
        if self.degree() == 1 {
            return self.zero();
        }
        let mut coeffs = vec![0; self.degree()];
        coeffs[1] = 1;
        FieldElement {
            field: self.clone(),
            coeffs,
        }
    }

    /// The scalar `c mod p`.
    pub fn from_u64(&self, c: u64) -> FieldElement {
        let mut coeffs = vec![0; self.degree()];
        coeffs[0] = c % self.0.p;
        FieldElement {
            field: self.clone(),
            coeffs,
        }
    }

    /// Builds an element from basis coefficients. Shorter vectors are
    /// zero-padded; coefficients must already be reduced mod p.
    pub fn element(&self, coeffs: &[u64]) -> Result<FieldElement> {
        if coeffs.len() > self.degree() {
            return Err(Error::Usage(format!(
                "element has {} coefficients but the field has degree {}",
                coeffs.len(),
                self.degree()
            )));
        }
        if coeffs.iter().any(|&c| c >= self.0.p) {
            return Err(Error::Usage(format!(
                "element coefficients must be reduced mod {}",
                self.0.p
            )));
        }
        let mut full = coeffs.to_vec();
        full.resize(self.degree(), 0);
        Ok(FieldElement {
            field: self.clone(),
            coeffs: full,
        })
    }

    /// The element whose base-p digits (little-endian) are `index`.
    /// Indexing is a bijection from `0..order` onto the field.
    pub fn element_from_index(&self, index: u64) -> FieldElement {
        let p = self.0.p;
        let mut rest = index;
        let mut coeffs = vec![0; self.degree()];
        for c in coeffs.iter_mut() {
            *c = rest % p;
            rest /= p;
        }
        debug_assert_eq!(rest, 0, "index out of range");
        FieldElement {
            field: self.clone(),
            coeffs,
        }
    }

    /// All elements in index order.
    pub fn elements(&self) -> impl Iterator<Item = FieldElement> + '_ {
        (0..self.order()).map(move |i| self.element_from_index(i))
    }

    /// The canonical embedding into `target`, found by a deterministic
    /// root scan. Requires equal characteristic and dividing degree.
    pub fn embed_into(&self, target: &FiniteField) -> Result<FieldEmbedding> {
        FieldEmbedding::new(self, target)
    }
}

/// A ring embedding F_{p^d} -> F_{p^e} (d | e), represented by the image
/// of the source generator. The image is the root of the source modulus
/// with the least element index, so embeddings are reproducible.
#[derive(Clone, Debug)]
pub struct FieldEmbedding {
    source: FiniteField,
    target: FiniteField,
    gen_image: FieldElement,
}

const EMBED_SCAN_LIMIT: u64 = 4_000_000;

impl FieldEmbedding {
    pub fn new(source: &FiniteField, target: &FiniteField) -> Result<Self> {
        if source.characteristic() != target.characteristic() {
            return Err(Error::Usage(
                "embedding requires equal characteristic".into(),
            ));
        }
        if !target.degree().is_multiple_of(source.degree()) {
            return Err(Error::Usage(format!(
                "no embedding: degree {} does not divide {}",
                source.degree(),
                target.degree()
            )));
        }
        if source == target {
            return Ok(Self {
                source: source.clone(),
                target: target.clone(),
                gen_image: target.gen(),
            });
        }
        if target.order() > EMBED_SCAN_LIMIT {
            return Err(Error::Usage(format!(
                "embedding scan into a field of order {} exceeds the supported bound",
                target.order()
            )));
        }
        for idx in 0..target.order() {
            let cand = target.element_from_index(idx);
            if eval_poly_at(source.modulus(), &cand).is_zero() {
                return Ok(Self {
                    source: source.clone(),
                    target: target.clone(),
                    gen_image: cand,
                });
            }
        }
        Err(Error::Integrity(
            "modulus has no root in a field of dividing degree".into(),
        ))
    }

    pub fn source(&self) -> &FiniteField {
        &self.source
    }

    pub fn target(&self) -> &FiniteField {
        &self.target
    }

    pub fn map(&self, x: &FieldElement) -> FieldElement {
        assert!(
            x.field == self.source,
            "embedding applied to an element of the wrong field"
        );
        eval_coeffs_at(&x.coeffs, &self.gen_image)
    }
}

/// An element of a [`FiniteField`], stored as power-basis coefficients
/// (length = field degree, each reduced mod p).
#[derive(Clone, PartialEq, Eq)]
pub struct FieldElement {
    field: FiniteField,
    coeffs: Vec<u64>,
}

impl fmt::Debug for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", poly_string(&self.coeffs))
    }
}

impl FieldElement {
    pub fn field(&self) -> &FiniteField {
        &self.field
    }

    pub fn coeffs(&self) -> &[u64] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|&c| c == 0)
    }

    pub fn is_one(&self) -> bool {
        self.coeffs[0] == 1 && self.coeffs[1..].iter().all(|&c| c == 0)
    }

    /// Coefficient of the basis monomial 1.
    pub fn constant_coeff(&self) -> u64 {
        self.coeffs[0]
    }

    /// Position of this element in the field's index order.
    pub fn index(&self) -> u64 {
        let p = self.field.characteristic();
        let mut idx: u64 = 0;
        for &c in self.coeffs.iter().rev() {
            idx = idx * p + c;
        }
        idx
    }

    /// Scalar multiple `c * self` with `c` an integer mod p.
    pub fn scale(&self, c: u64) -> FieldElement {
        let p = self.field.characteristic();
        let c = c % p;
        FieldElement {
            field: self.field.clone(),
            coeffs: self.coeffs.iter().map(|&a| a * c % p).collect(),
        }
    }

    pub fn pow(&self, mut exp: u128) -> FieldElement {
        let mut base = self.clone();
        let mut acc = self.field.one();
        while exp > 0 {
            if exp & 1 == 1 {
                acc = &acc * &base;
            }
            exp >>= 1;
            if exp > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    pub fn inverse(&self) -> Result<FieldElement> {
        if self.is_zero() {
            return Err(Error::Domain("inverse of zero".into()));
        }
        Ok(self.pow(self.field.order() as u128 - 2))
    }

    /// The p-power Frobenius `a -> a^p`.
    pub fn frobenius(&self) -> FieldElement {
        self.pow(self.field.characteristic() as u128)
    }

    /// The unique p-th root; Frobenius is bijective so this always exists.
    pub fn pth_root(&self) -> FieldElement {
        let mut r = self.clone();
        for _ in 1..self.field.degree() {
            r = r.frobenius();
        }
        r
    }

    /// Absolute trace down to F_p, returned as an integer mod p.
    pub fn absolute_trace(&self) -> u64 {
        let mut acc = self.clone();
        let mut total = self.clone();
        for _ in 1..self.field.degree() {
            acc = acc.frobenius();
            total = &total + &acc;
        }
        debug_assert!(
            total.coeffs[1..].iter().all(|&c| c == 0),
            "trace landed outside the prime field"
        );
        total.coeffs[0]
    }

    /// Solves `x^p - x = self` in this field.
    ///
    /// A solution exists iff the absolute trace vanishes; the full solution
    /// set is then a coset of F_p and the returned representative is the
    /// one with constant coefficient 0 (the least in coefficient order).
    pub fn artin_schreier_preimage(&self) -> Option<FieldElement> {
        if self.absolute_trace() != 0 {
            return None;
        }
        let e = self.field.degree();
        if e == 1 {
            // trace = identity here, so self = 0 and the coset is F_p itself
            return Some(self.field.zero());
        }
        let theta = unit_trace_element(&self.field);
        // Hilbert-90 style resolvent: with s = Frobenius, a' = -self and
        // A_i the partial sums of s-iterates of a', the sum of
        // A_i * s^{i+1}(theta) over 0 <= i <= e-2 maps to self under x^p - x.
        let aprime = -self;
        let mut partial = aprime.clone();
        let mut apow = aprime.clone();
        let mut theta_pow = theta.frobenius();
        let mut b = self.field.zero();
        for i in 0..=e - 2 {
            if i > 0 {
                apow = apow.frobenius();
                partial = &partial + &apow;
                theta_pow = theta_pow.frobenius();
            }
            b = &b + &(&partial * &theta_pow);
        }
        let b = &b - &self.field.from_u64(b.constant_coeff());
        debug_assert!(&(&b.frobenius() - &b) == self, "resolvent failed");
        Some(b)
    }
}

/// An element with absolute trace 1, used to seed the additive resolvent.
/// The trace form is nondegenerate, so some basis monomial has nonzero
/// trace; scaling by its inverse mod p normalises the trace to 1.
fn unit_trace_element(field: &FiniteField) -> FieldElement {
    let p = field.characteristic();
    for k in 0..field.degree() {
        let mut coeffs = vec![0; field.degree()];
        coeffs[k] = 1;
        let cand = FieldElement {
            field: field.clone(),
            coeffs,
        };
        let tr = cand.absolute_trace();
        if tr != 0 {
            return cand.scale(scalar_inverse(tr, p));
        }
    }
    unreachable!("trace vanished on a full basis")
}

impl std::ops::Add for &FieldElement {
    type Output = FieldElement;
    fn add(self, rhs: &FieldElement) -> FieldElement {
        assert!(self.field == rhs.field, "field mismatch in +");
        let p = self.field.characteristic();
        FieldElement {
            field: self.field.clone(),
            coeffs: self
                .coeffs
                .iter()
                .zip(&rhs.coeffs)
                .map(|(&a, &b)| (a + b) % p)
                .collect(),
        }
    }
}

impl std::ops::Sub for &FieldElement {
    type Output = FieldElement;
    fn sub(self, rhs: &FieldElement) -> FieldElement {
        assert!(self.field == rhs.field, "field mismatch in -");
        let p = self.field.characteristic();
        FieldElement {
            field: self.field.clone(),
            coeffs: self
                .coeffs
                .iter()
                .zip(&rhs.coeffs)
                .map(|(&a, &b)| (a + p - b) % p)
                .collect(),
        }
    }
}

impl std::ops::Mul for &FieldElement {
    type Output = FieldElement;
    fn mul(self, rhs: &FieldElement) -> FieldElement {
        assert!(self.field == rhs.field, "field mismatch in *");
        let p = self.field.characteristic();
        let e = self.field.degree();
        let mut prod = vec![0u64; 2 * e - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in rhs.coeffs.iter().enumerate() {
                prod[i + j] = (prod[i + j] + a * b) % p;
            }
        }
        let reduced = poly_rem(&prod, self.field.modulus(), p);
        let mut coeffs = reduced;
        coeffs.resize(e, 0);
        FieldElement {
            field: self.field.clone(),
            coeffs,
        }
    }
}

impl std::ops::Neg for &FieldElement {
    type Output = FieldElement;
    fn neg(self) -> FieldElement {
        let p = self.field.characteristic();
        FieldElement {
            field: self.field.clone(),
            coeffs: self.coeffs.iter().map(|&a| (p - a) % p).collect(),
        }
    }
}

fn check_characteristic(p: u64) -> Result<()> {
    if !is_prime(p) {
        return Err(Error::Usage(format!("{p} is not prime")));
    }
    if p > MAX_PRIME {
        return Err(Error::Usage(format!(
            "characteristic {p} exceeds the supported bound {MAX_PRIME}"
        )));
    }
    Ok(())
}

fn check_degree(e: usize) -> Result<()> {
    if e == 0 || e > MAX_DEGREE {
        return Err(Error::Usage(format!(
            "extension degree {e} outside the supported range 1..={MAX_DEGREE}"
        )));
    }
    Ok(())
}

pub(crate) fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n.is_multiple_of(2) {
        return n == 2;
    }
    let mut d = 3;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 2;
    }
    true
}

/// Fixed moduli for the small fields used throughout the test corpus.
fn default_modulus(p: u64, e: usize) -> Option<Vec<u64>> {
    let table: &[(u64, usize, &[u64])] = &[
        (2, 2, &[1, 1, 1]),
        (2, 3, &[1, 1, 0, 1]),
        (2, 4, &[1, 1, 0, 0, 1]),
        (3, 2, &[1, 0, 1]),
        (3, 3, &[1, 2, 0, 1]),
        (3, 4, &[2, 1, 0, 0, 1]),
        (5, 2, &[2, 0, 1]),
        (5, 3, &[1, 1, 0, 1]),
        (5, 4, &[2, 0, 0, 0, 1]),
        (7, 2, &[1, 0, 1]),
        (7, 3, &[2, 0, 0, 1]),
        (7, 4, &[1, 1, 0, 0, 1]),
    ];
    for &(tp, te, m) in table {
        if tp == p && te == e {
            debug_assert!(is_irreducible(m, p));
            return Some(m.to_vec());
        }
    }
    None
}

/// First monic irreducible of degree e over F_p in index order.
fn first_irreducible(p: u64, e: usize) -> Result<Vec<u64>> {
    let mut count: u64 = 0;
    let mut tail = vec![0u64; e];
    loop {
        // next candidate: little-endian odometer over the non-leading coeffs
        if tail[0] != 0 {
            let mut f = tail.clone();
            f.push(1);
            if is_irreducible(&f, p) {
                return Ok(f);
            }
        }
        let mut k = 0;
        loop {
            tail[k] += 1;
            if tail[k] < p {
                break;
            }
            tail[k] = 0;
            k += 1;
            if k == e {
                return Err(Error::Integrity(format!(
                    "no irreducible of degree {e} over F_{p}"
                )));
            }
        }
        count += 1;
        if count > 10_000_000 {
            return Err(Error::Integrity("irreducible search did not terminate".into()));
        }
    }
}

/// Irreducibility over F_p. Degrees up to 4 use trial factorisation
/// (root scan, plus a quadratic-divisor scan for quartics); higher
/// degrees use the gcd criterion with iterated Frobenius powers.
fn is_irreducible(f: &[u64], p: u64) -> bool {
    let e = f.len() - 1;
    match e {
        0 => false,
        1 => true,
        2 | 3 => !has_root(f, p),
        4 => !has_root(f, p) && !has_quadratic_divisor(f, p),
        _ => is_irreducible_gcd(f, p),
    }
}

fn has_root(f: &[u64], p: u64) -> bool {
    (0..p).any(|x| poly_eval(f, x, p) == 0)
}

fn has_quadratic_divisor(f: &[u64], p: u64) -> bool {
    for b in 0..p {
        for c in 0..p {
            let g = [c, b, 1];
            if poly_rem(f, &g, p).is_empty() {
                return true;
            }
        }
    }
    false
}

/// gcd(x^{p^i} - x, f) must be trivial for 1 <= i < deg f.
fn is_irreducible_gcd(f: &[u64], p: u64) -> bool {
    let e = f.len() - 1;
    let x = vec![0, 1];
    let mut t = x.clone();
    for _ in 1..e {
        t = poly_powmod(&t, p, f, p);
        let d = poly_sub(&t, &x, p);
        if poly_gcd(&d, f, p).len() > 1 {
            return false;
        }
    }
    true
}

// ---- dense polynomial helpers over F_p (coefficients low-to-high) ----

fn poly_string(coeffs: &[u64]) -> String {
    let mut parts: Vec<String> = Vec::new();
    for (i, &c) in coeffs.iter().enumerate().rev() {
        if c == 0 {
            continue;
        }
        let part = match (i, c) {
            (0, _) => format!("{c}"),
            (1, 1) => "z".into(),
            (1, _) => format!("{c}z"),
            (_, 1) => format!("z^{i}"),
            _ => format!("{c}z^{i}"),
        };
        parts.push(part);
    }
    if parts.is_empty() {
        "0".into()
    } else {
        parts.join(" + ")
    }
}

pub(crate) fn poly_trim(v: &mut Vec<u64>) {
    while v.last() == Some(&0) {
        v.pop();
    }
}

fn poly_sub(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    let mut out = vec![0u64; a.len().max(b.len())];
    for (i, slot) in out.iter_mut().enumerate() {
        let x = a.get(i).copied().unwrap_or(0);
        let y = b.get(i).copied().unwrap_or(0);
        *slot = (x + p - y) % p;
    }
    poly_trim(&mut out);
    out
}

pub(crate) fn poly_mul(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![0u64; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            out[i + j] = (out[i + j] + x * y) % p;
        }
    }
    poly_trim(&mut out);
    out
}

/// Remainder of `a` modulo a monic `m`. Empty result means zero.
fn poly_rem(a: &[u64], m: &[u64], p: u64) -> Vec<u64> {
    let mut r = a.to_vec();
    poly_trim(&mut r);
    let dm = m.len() - 1;
    while r.len() > dm {
        let lead = *r.last().unwrap();
        let shift = r.len() - 1 - dm;
        if lead != 0 {
            for (i, &c) in m.iter().enumerate() {
                let idx = shift + i;
                r[idx] = (r[idx] + (p - lead % p) * c) % p;
            }
        }
        r.pop();
        poly_trim(&mut r);
    }
    r
}

pub(crate) fn scalar_inverse(a: u64, p: u64) -> u64 {
    // Fermat: a^(p-2) mod p
    let mut base = a % p;
    let mut exp = p - 2;
    let mut acc = 1u64;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * base % p;
        }
        base = base * base % p;
        exp >>= 1;
    }
    acc
}

/// Monic gcd; empty slices are treated as zero.
fn poly_gcd(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    let mut x = a.to_vec();
    let mut y = b.to_vec();
    poly_trim(&mut x);
    poly_trim(&mut y);
    while !y.is_empty() {
        let inv = scalar_inverse(*y.last().unwrap(), p);
        let monic: Vec<u64> = y.iter().map(|&c| c * inv % p).collect();
        let r = poly_rem(&x, &monic, p);
        x = monic;
        y = r;
    }
    if let Some(&lead) = x.last() {
        let inv = scalar_inverse(lead, p);
        for c in x.iter_mut() {
            *c = *c * inv % p;
        }
    }
    x
}

fn poly_powmod(base: &[u64], mut exp: u64, m: &[u64], p: u64) -> Vec<u64> {
    let mut b = poly_rem(base, m, p);
    let mut acc = vec![1u64];
    while exp > 0 {
        if exp & 1 == 1 {
            acc = poly_rem(&poly_mul(&acc, &b, p), m, p);
        }
        exp >>= 1;
        if exp > 0 {
            b = poly_rem(&poly_mul(&b, &b, p), m, p);
        }
    }
    acc
}

fn poly_eval(f: &[u64], x: u64, p: u64) -> u64 {
    let mut acc = 0u64;
    for &c in f.iter().rev() {
        acc = (acc * x + c) % p;
    }
    acc
}

/// Evaluates an integer-coefficient polynomial at a field element.
fn eval_poly_at(f: &[u64], x: &FieldElement) -> FieldElement {
    let field = x.field().clone();
    let mut acc = field.zero();
    for &c in f.iter().rev() {
        acc = &(&acc * x) + &field.from_u64(c);
    }
    acc
}

/// Evaluates coefficients already reduced mod p at a field element.
fn eval_coeffs_at(coeffs: &[u64], x: &FieldElement) -> FieldElement {
    eval_poly_at(coeffs, x)
}
