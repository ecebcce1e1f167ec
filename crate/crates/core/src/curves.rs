//! Curve models for globalizing local cover data: the projective line with
//! its ring of polynomial parts, and elliptic curves over prime fields.
//!
//! Both models embed their ring of functions regular away from one marked
//! point into `k((t))`. For the projective line the image is `k[t^{-1}]` and
//! every principal part globalizes. For an elliptic curve the quotient
//! `k((t)) / (O(E - O) + k[[t]])` is one-dimensional, spanned by the class of
//! `t^{-1}`, and the Frobenius action on that line decides whether splitting
//! off a global part can always succeed.

use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::field::{poly_mul, poly_trim, scalar_inverse, FiniteField, MAX_PRIME};
use crate::ring::Ring;
use crate::series::{artin_schreier_solve_tail, split_p1, GlobalP1Element, LaurentSeries};
use crate::unipotent::{positions_by_diagonal, positions_row_major, p_conjugate, UnipotentMatrix};

/// An elliptic curve `y^2 = x^3 + Ax + B` over `F_p`, `p >= 5`, marked at the
/// identity `O` with local parameter `t = -x/y`.
#[derive(Clone, PartialEq, Eq)]
pub struct EllipticMarkedCurve {
    field: FiniteField,
    a: u64,
    b: u64,
}

impl std::fmt::Debug for EllipticMarkedCurve {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "y^2 = x^3 + {}x + {} over F_{}",
            self.a,
            self.b,
            self.p()
        )
    }
}

impl EllipticMarkedCurve {
    /// Coefficients are reduced mod `p`. The curve must be nonsingular.
    pub fn new(p: u64, a: u64, b: u64) -> Result<Self> {
        if p < 5 {
            return Err(Error::Usage(format!(
                "elliptic model requires a prime p >= 5, got {p}"
            )));
        }
        if p > MAX_PRIME {
            return Err(Error::Usage(format!(
                "prime {p} exceeds the supported bound {MAX_PRIME}"
            )));
        }
        let field = FiniteField::prime(p)?;
        let a = a % p;
        let b = b % p;
        // discriminant -16(4A^3 + 27B^2); the -16 is a unit for p >= 5
        let disc = (4 * pow_mod(a, 3, p) + 27 * pow_mod(b, 2, p)) % p;
        if disc == 0 {
            return Err(Error::Domain(format!(
                "singular curve: 4A^3 + 27B^2 = 0 mod {p} for A = {a}, B = {b}"
            )));
        }
        Ok(Self { field, a, b })
    }

    pub fn p(&self) -> u64 {
        self.field.order()
    }

    pub fn a(&self) -> u64 {
        self.a
    }

    pub fn b(&self) -> u64 {
        self.b
    }

    pub fn field(&self) -> &FiniteField {
        &self.field
    }

    /// Expansions of the coordinate functions at `O` in the parameter
    /// `t = -x/y`: iterates `w <- t^3 + A t w^2 + B w^3` to stabilization at
    /// the requested precision, then `x = t/w`, `y = -1/w`.
    ///
    /// `x` comes back with valuation -2 and precision `prec - 5`, `y` with
    /// valuation -3 and precision `prec - 6`, so the curve equation residual
    /// vanishes mod `t^{prec-9}`. Requires `prec >= 6`.
    pub fn weierstrass_expansion(&self, prec: i64) -> (LaurentSeries, LaurentSeries) {
        assert!(prec >= 6, "expansion needs precision at least 6");
        let f = &self.field;
        let t3 = LaurentSeries::monomial(f.one(), 3, prec);
        let at = LaurentSeries::monomial(f.from_u64(self.a), 1, prec);
        let bc = LaurentSeries::from_terms(f, prec, &[(0, f.from_u64(self.b))]);
        let mut w = t3.clone();
        // each round at least quadruples the t-adic accuracy of w
        for round in 0.. {
            assert!(round <= prec, "w-iteration failed to stabilize");
            let w2 = &w * &w;
            let w3 = &w2 * &w;
            let next = (&(&t3 + &(&at * &w2)) + &(&bc * &w3)).truncate(prec);
            if next == w {
                break;
            }
            w = next;
        }
        let w_inv = w.inverse().expect("w is a unit: valuation 3, leading 1");
        let t = LaurentSeries::monomial(f.one(), 1, prec);
        let x = &t * &w_inv;
        let y = -&w_inv;
        (x, y)
    }
}

/// Naive point count of `E(F_p)` by quadratic-residue lookup, including `O`.
pub fn point_count(curve: &EllipticMarkedCurve) -> u64 {
    let p = curve.p();
    let mut count = 1;
    for x in 0..p {
        let rhs = (pow_mod(x, 3, p) + curve.a * x + curve.b) % p;
        if rhs == 0 {
            count += 1;
        } else if pow_mod(rhs, (p - 1) / 2, p) == 1 {
            count += 2;
        }
    }
    count
}

/// `#E(F_p) = p` exactly, i.e. integer Frobenius trace 1.
pub fn is_anomalous(curve: &EllipticMarkedCurve) -> bool {
    point_count(curve) == curve.p()
}

/// A monomial `x^i y^j`, `j <= 1`, regular away from `O` with pole order
/// `2i + 3j` there.
#[derive(Clone, Debug)]
pub struct RrFunction {
    pub x_exp: u32,
    pub y_exp: u32,
    pub pole_order: u64,
    pub expansion: LaurentSeries,
}

/// Basis of the functions with pole order at most `m` at `O`: the monomials
/// `x^i y^j` with `j <= 1` and `2i + 3j <= m`, in increasing pole order.
/// Pole order 1 never occurs, so the list has `max(m, 1)` members.
pub fn rr_basis(curve: &EllipticMarkedCurve, m: u64, prec: i64) -> Vec<RrFunction> {
    let mut out = Vec::new();
    for order in 0..=m {
        if order == 1 {
            continue;
        }
        let (i, j) = if order % 2 == 0 {
            (order / 2, 0)
        } else {
            ((order - 3) / 2, 1)
        };
        let func = EllipticFunction::monomial(curve, i as usize, j as usize);
        out.push(RrFunction {
            x_exp: i as u32,
            y_exp: j as u32,
            pole_order: order,
            expansion: func.expansion(prec),
        });
    }
    out
}

/// An element `a(x) + b(x) y` of the coordinate ring `F_p[x, y]/(y^2 - x^3 -
/// Ax - B)`, i.e. a function on `E` regular away from `O`. Coefficient
/// vectors are low-degree-first with trailing zeros trimmed.
#[derive(Clone, PartialEq, Eq)]
pub struct EllipticFunction {
    curve: EllipticMarkedCurve,
    x_part: Vec<u64>,
    xy_part: Vec<u64>,
}

impl std::fmt::Debug for EllipticFunction {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "EllipticFunction(a = {:?}, b = {:?})", self.x_part, self.xy_part)
    }
}

impl EllipticFunction {
    pub fn new(curve: &EllipticMarkedCurve, x_part: Vec<u64>, xy_part: Vec<u64>) -> Self {
        let p = curve.p();
        let mut x_part: Vec<u64> = x_part.iter().map(|c| c % p).collect();
        let mut xy_part: Vec<u64> = xy_part.iter().map(|c| c % p).collect();
        poly_trim(&mut x_part);
        poly_trim(&mut xy_part);
        Self {
            curve: curve.clone(),
            x_part,
            xy_part,
        }
    }

    pub fn zero(curve: &EllipticMarkedCurve) -> Self {
        Self::new(curve, Vec::new(), Vec::new())
    }

    pub fn constant(curve: &EllipticMarkedCurve, c: u64) -> Self {
        Self::new(curve, vec![c], Vec::new())
    }

    /// `x^i y^j` with `j <= 1`.
    pub fn monomial(curve: &EllipticMarkedCurve, i: usize, j: usize) -> Self {
        assert!(j <= 1, "y-degree above 1 is reduced by the curve equation");
        let mut poly = vec![0; i + 1];
        poly[i] = 1;
        if j == 0 {
            Self::new(curve, poly, Vec::new())
        } else {
            Self::new(curve, Vec::new(), poly)
        }
    }

    pub fn curve(&self) -> &EllipticMarkedCurve {
        &self.curve
    }

    pub fn x_polynomial(&self) -> &[u64] {
        &self.x_part
    }

    pub fn xy_polynomial(&self) -> &[u64] {
        &self.xy_part
    }

    pub fn is_zero(&self) -> bool {
        self.x_part.is_empty() && self.xy_part.is_empty()
    }

    /// Pole order at `O`: `max(2 deg a, 2 deg b + 3)`, 0 for constants.
    pub fn pole_order(&self) -> u64 {
        let dx = if self.x_part.len() > 1 {
            2 * (self.x_part.len() as u64 - 1)
        } else {
            0
        };
        let dy = if self.xy_part.is_empty() {
            0
        } else {
            2 * (self.xy_part.len() as u64 - 1) + 3
        };
        dx.max(dy)
    }

    pub fn add(&self, rhs: &Self) -> Self {
        Self::new(
            &self.curve,
            poly_add(&self.x_part, &rhs.x_part, self.curve.p()),
            poly_add(&self.xy_part, &rhs.xy_part, self.curve.p()),
        )
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        self.add(&rhs.neg())
    }

    pub fn neg(&self) -> Self {
        let p = self.curve.p();
        let flip = |v: &[u64]| v.iter().map(|c| (p - c) % p).collect();
        Self::new(&self.curve, flip(&self.x_part), flip(&self.xy_part))
    }

    pub fn scale(&self, c: u64) -> Self {
        let p = self.curve.p();
        let c = c % p;
        let by = |v: &[u64]| v.iter().map(|a| a * c % p).collect();
        Self::new(&self.curve, by(&self.x_part), by(&self.xy_part))
    }

    /// Product in the coordinate ring; `y^2` is rewritten as `x^3 + Ax + B`.
    pub fn mul(&self, rhs: &Self) -> Self {
        let p = self.curve.p();
        let fx = self.curve_poly();
        let mut x_new = poly_mul(&self.x_part, &rhs.x_part, p);
        let cross = poly_mul(&self.xy_part, &rhs.xy_part, p);
        x_new = poly_add(&x_new, &poly_mul(&cross, &fx, p), p);
        let mut xy_new = poly_mul(&self.x_part, &rhs.xy_part, p);
        xy_new = poly_add(&xy_new, &poly_mul(&self.xy_part, &rhs.x_part, p), p);
        Self::new(&self.curve, x_new, xy_new)
    }

    /// p-th power: coefficients are fixed by Frobenius, `x -> x^p` spreads
    /// exponents, and `y^p = y (x^3 + Ax + B)^{(p-1)/2}`.
    pub fn frobenius(&self) -> Self {
        let p = self.curve.p();
        let spread = |v: &[u64]| {
            if v.is_empty() {
                return Vec::new();
            }
            let mut out = vec![0; (v.len() - 1) * p as usize + 1];
            for (i, &c) in v.iter().enumerate() {
                out[i * p as usize] = c;
            }
            out
        };
        let half = poly_pow(&self.curve_poly(), (p - 1) / 2, p);
        Self::new(
            &self.curve,
            spread(&self.x_part),
            poly_mul(&spread(&self.xy_part), &half, p),
        )
    }

    /// Laurent expansion at `O` to exactly the requested precision.
    pub fn expansion(&self, prec: i64) -> LaurentSeries {
        let f = self.curve.field();
        if self.x_part.len() <= 1 && self.xy_part.is_empty() {
            let c = self.x_part.first().copied().unwrap_or(0);
            return LaurentSeries::from_terms(f, prec, &[(0, f.from_u64(c))]);
        }
        // pole order bounds the precision lost to products below
        let work = prec + self.pole_order() as i64 + 6;
        let (xs, ys) = self.curve.weierstrass_expansion(work);
        let horner = |poly: &[u64]| {
            let mut acc = LaurentSeries::zero(f, work);
            for &c in poly.iter().rev() {
                acc = &(&acc * &xs) + &LaurentSeries::from_terms(f, work, &[(0, f.from_u64(c))]);
            }
            acc
        };
        let mut out = horner(&self.x_part);
        if !self.xy_part.is_empty() {
            out = &out + &(&horner(&self.xy_part) * &ys);
        }
        assert!(out.prec() >= prec, "expansion lost more precision than the pole bound allows");
        out.truncate(prec)
    }

    fn curve_poly(&self) -> Vec<u64> {
        vec![self.curve.b, self.curve.a, 0, 1]
    }
}

impl Ring for EllipticFunction {
    fn zero_like(&self) -> Self {
        Self::zero(&self.curve)
    }

    fn one_like(&self) -> Self {
        Self::constant(&self.curve, 1)
    }

    fn is_zero(&self) -> bool {
        EllipticFunction::is_zero(self)
    }

    fn add(&self, rhs: &Self) -> Self {
        EllipticFunction::add(self, rhs)
    }

    fn sub(&self, rhs: &Self) -> Self {
        EllipticFunction::sub(self, rhs)
    }

    fn mul(&self, rhs: &Self) -> Self {
        EllipticFunction::mul(self, rhs)
    }

    fn neg(&self) -> Self {
        EllipticFunction::neg(self)
    }

    fn frobenius(&self) -> Self {
        EllipticFunction::frobenius(self)
    }

    fn characteristic(&self) -> u64 {
        self.curve.p()
    }

    fn same_ring(&self, other: &Self) -> bool {
        self.curve == other.curve
    }
}

/// Writes `f = g + c t^{-1} + tail` with `g` global, `c` in `F_p` and the
/// tail supported in `k[[t]]`, by greedy elimination of the poles of
/// order >= 2 against the basis monomials. `c` is the class of `f` in
/// the one-dimensional `H^1`.
///
/// Requires `f` over the curve's prime field with precision >= 0 (the
/// residue line must be inside the known window).
pub fn reduce_principal_part(
    curve: &EllipticMarkedCurve,
    f: &LaurentSeries,
) -> Result<(EllipticFunction, u64, LaurentSeries)> {
    if f.field() != curve.field() {
        return Err(Error::Usage(
            "series field does not match the curve's prime field".into(),
        ));
    }
    if f.prec() < 0 {
        return Err(Error::Usage(format!(
            "principal-part reduction needs precision >= 0, got {}",
            f.prec()
        )));
    }
    let mut r = f.clone();
    let mut g = EllipticFunction::zero(curve);
    while !r.is_zero() && r.val() < -1 {
        let order = (-r.val()) as u64;
        let (i, j) = if order.is_multiple_of(2) {
            (order / 2, 0)
        } else {
            ((order - 3) / 2, 1)
        };
        let basis = EllipticFunction::monomial(curve, i as usize, j as usize);
        let exp = basis.expansion(r.prec());
        debug_assert_eq!(exp.val(), r.val(), "basis monomial has the wrong pole order");
        let lead = exp.leading().expect("basis expansion is nonzero").clone();
        let lam = r.leading().expect("r has a pole").mul(&lead.inverse()?);
        r = &r - &exp.scale(&lam);
        g = g.add(&basis.scale(lam.constant_coeff()));
    }
    let c = if !r.is_zero() && r.val() == -1 {
        r.coeff(-1).constant_coeff()
    } else {
        0
    };
    let tail = if c != 0 {
        &r - &LaurentSeries::monomial(curve.field().from_u64(c), -1, r.prec())
    } else {
        r
    };
    Ok((g, c, tail))
}

/// The scalar `alpha` with `F^*[t^{-1}] = alpha [t^{-1}]` on `H^1`, read off
/// by reducing `t^{-p}`.
pub fn frobenius_on_h1(curve: &EllipticMarkedCurve) -> u64 {
    let pole = LaurentSeries::monomial(curve.field().one(), -(curve.p() as i64), 2);
    let (_, c, _) = reduce_principal_part(curve, &pole)
        .expect("reducing an exact monomial cannot hit a precision guard");
    c
}

/// Independent classical oracle for the same scalar: the coefficient of
/// `x^{p-1}` in `(x^3 + Ax + B)^{(p-1)/2}`.
pub fn hasse_deuring(curve: &EllipticMarkedCurve) -> u64 {
    let p = curve.p();
    let half = poly_pow(&[curve.b, curve.a, 0, 1], (p - 1) / 2, p);
    half.get(p as usize - 1).copied().unwrap_or(0)
}

/// An element `c [t^{-1}]` of the one-dimensional `H^1(E, O_E)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct H1Class {
    pub c: u64,
}

/// The induced map of `f -> f^p - f` on `H^1`: multiplication by `alpha - 1`.
pub fn wp_star_on_h1(curve: &EllipticMarkedCurve, cls: H1Class) -> H1Class {
    let p = curve.p();
    let alpha = frobenius_on_h1(curve);
    H1Class {
        c: cls.c % p * ((alpha + p - 1) % p) % p,
    }
}

/// The full analysis of one curve. The three residues `alpha`, `deuring` and
/// `p + 1 - count mod p` are computed independently and cross-checked before
/// a report is issued. The boolean verdicts all express `alpha != 1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VerdictReport {
    pub p: u64,
    pub count: u64,
    pub alpha: u64,
    pub deuring: u64,
    pub anomalous: bool,
    pub injective: bool,
    pub surjective: bool,
    pub equivalence: bool,
}

impl VerdictReport {
    /// True when the mod-p condition `alpha = 1` and the literal condition
    /// `count = p` disagree; possible only for small p, where the Hasse
    /// interval admits trace residues of 1 on non-anomalous curves.
    pub fn criteria_diverge(&self) -> bool {
        (self.alpha == 1) != self.anomalous
    }
}

pub fn elliptic_verdict(curve: &EllipticMarkedCurve) -> Result<VerdictReport> {
    let p = curve.p();
    let count = point_count(curve);
    let alpha = frobenius_on_h1(curve);
    let deuring = hasse_deuring(curve);
    // count <= 2p for p >= 5, so the residue below stays positive
    let trace_residue = (3 * p + 1 - count) % p;
    if alpha != deuring || alpha != trace_residue {
        return Err(Error::Integrity(format!(
            "Frobenius residue disagreement on {curve:?}: \
             H1 action {alpha}, Hasse coefficient {deuring}, trace residue {trace_residue}"
        )));
    }
    let bijective = alpha != 1;
    Ok(VerdictReport {
        p,
        count,
        alpha,
        deuring,
        anomalous: count == p,
        injective: bijective,
        surjective: bijective,
        equivalence: bijective,
    })
}

/// Result of splitting a local series against the elliptic global ring:
/// `f = wp(preimage) + global + obstruction * t^{-1}` to precision, with a
/// nonzero obstruction possible only when `alpha = 1`.
#[derive(Clone, Debug)]
pub struct EllipticSplit {
    pub preimage: LaurentSeries,
    pub global: EllipticFunction,
    pub obstruction: u64,
}

/// Splits `f` as `wp(b) + g` over the elliptic model, up to the `H^1`
/// obstruction. Poles of order >= 2 are matched by global functions, the
/// tail is solved by the recursion, and a residue `c` on the `t^{-1}` line
/// is absorbed through `wp(d t^{-1})` with `d (alpha - 1) = c` whenever
/// `alpha != 1`; otherwise it is reported as the obstruction.
///
/// Requires precision >= p + 2: absorbing the residue line reduces `t^{-p}`.
pub fn split_elliptic(curve: &EllipticMarkedCurve, f: &LaurentSeries) -> Result<EllipticSplit> {
    let p = curve.p();
    if f.field() != curve.field() {
        return Err(Error::Usage(
            "series field does not match the curve's prime field".into(),
        ));
    }
    if f.prec() < p as i64 + 2 {
        return Err(Error::Usage(format!(
            "elliptic splitting needs precision >= p + 2 = {}, got {}",
            p + 2,
            f.prec()
        )));
    }
    let field = curve.field();
    let prec = f.prec();
    let alpha = frobenius_on_h1(curve);
    let mut b = LaurentSeries::zero(field, prec);
    let mut g = EllipticFunction::zero(curve);
    let mut obstruction = 0;
    let mut r = f.clone();
    for pass in 0.. {
        if pass > 2 {
            return Err(Error::Integrity(
                "principal-part elimination failed to terminate".into(),
            ));
        }
        let (g1, c, tail) = reduce_principal_part(curve, &r)?;
        let a0 = tail.coeff(0);
        let strict = &tail - &LaurentSeries::from_terms(field, tail.prec(), &[(0, a0.clone())]);
        let bt = artin_schreier_solve_tail(&strict)?;
        g = g.add(&g1).add(&EllipticFunction::constant(curve, a0.constant_coeff()));
        b = &b + &bt;
        if c == 0 {
            break;
        }
        if alpha == 1 {
            obstruction = c;
            break;
        }
        // c t^{-1} = wp(d t^{-1}) - d exp(g_p) - d tail_p, where
        // t^{-p} = exp(g_p) + alpha t^{-1} + tail_p and d (alpha - 1) = c
        let d = c * scalar_inverse((alpha + p - 1) % p, p) % p;
        let pole = LaurentSeries::monomial(field.one(), -(p as i64), prec);
        let (gp, ap, tail_p) = reduce_principal_part(curve, &pole)?;
        debug_assert_eq!(ap, alpha);
        b = &b + &LaurentSeries::monomial(field.from_u64(d), -1, prec);
        g = g.sub(&gp.scale(d));
        r = -&tail_p.scale(&field.from_u64(d));
    }
    debug_assert!(split_identity_holds(curve, f, &b, &g, obstruction));
    Ok(EllipticSplit {
        preimage: b,
        global: g,
        obstruction,
    })
}

fn split_identity_holds(
    curve: &EllipticMarkedCurve,
    f: &LaurentSeries,
    b: &LaurentSeries,
    g: &EllipticFunction,
    obstruction: u64,
) -> bool {
    let mut rhs = &b.artin_schreier() + &g.expansion(f.prec());
    if obstruction != 0 {
        let line = LaurentSeries::monomial(curve.field().from_u64(obstruction), -1, f.prec());
        rhs = &rhs + &line;
    }
    rhs.agrees_with(f)
}

/// Outcome of pushing a whole unipotent matrix into a global ring: the
/// accumulated conjugator, the global matrix, and the conjugated series
/// matrix (which agrees with the global one entrywise to precision).
#[derive(Clone, Debug)]
pub struct GlobalReduction<G: Ring> {
    pub conjugator: UnipotentMatrix<LaurentSeries>,
    pub global: UnipotentMatrix<G>,
    pub residual: UnipotentMatrix<LaurentSeries>,
}

/// Diagonal sweep shared by both models. Conjugating by the elementary
/// matrix `I - b e_{ij}` adds `-wp(b)` to the `(i, j)` entry and perturbs
/// only entries on strictly larger diagonals, so one pass in diagonal order
/// settles everything.
fn reduce_sweep<G, F>(
    m: &UnipotentMatrix<LaurentSeries>,
    mut split: F,
) -> Result<GlobalReduction<G>>
where
    G: Ring,
    F: FnMut(&LaurentSeries, (usize, usize)) -> Result<(LaurentSeries, G)>,
{
    let n = m.n();
    let mut cur = m.clone();
    let mut conj = UnipotentMatrix::identity(n, m.sample_entry())?;
    let mut globals: HashMap<(usize, usize), G> = HashMap::new();
    for (i, j) in positions_by_diagonal(n) {
        let (bij, gij) = split(cur.entry(i, j), (i, j))?;
        if !bij.is_zero() {
            let mut e = UnipotentMatrix::identity(n, cur.sample_entry())?;
            e.set_entry(i, j, -&bij);
            cur = p_conjugate(&e, &cur);
            conj = e.mul(&conj);
        }
        globals.insert((i, j), gij);
    }
    let entries = positions_row_major(n)
        .into_iter()
        .map(|pos| globals.remove(&pos).expect("sweep visits every position"))
        .collect();
    Ok(GlobalReduction {
        conjugator: conj,
        global: UnipotentMatrix::new(n, entries)?,
        residual: cur,
    })
}

/// Reduces a unipotent matrix over `k((t))` to one over `k[t^{-1}]` by
/// conjugation. Always succeeds: every entry splits over the projective
/// line.
pub fn reduce_matrix_global_p1(
    m: &UnipotentMatrix<LaurentSeries>,
) -> Result<GlobalReduction<GlobalP1Element>> {
    reduce_sweep(m, |f, _| {
        let (b, h) = split_p1(f);
        Ok((b, h))
    })
}

/// Reduces a unipotent matrix over `F_p((t))` into the elliptic global ring.
/// Refuses at the first entry whose splitting leaves a nonzero `H^1`
/// obstruction, reporting that entry and the residue; on curves with
/// `alpha != 1` no obstruction can occur. Every entry needs precision
/// >= p + 2.
pub fn reduce_matrix_global_elliptic(
    curve: &EllipticMarkedCurve,
    m: &UnipotentMatrix<LaurentSeries>,
) -> Result<GlobalReduction<EllipticFunction>> {
    for entry in m.entries() {
        if entry.field() != curve.field() {
            return Err(Error::Usage(
                "matrix entries do not live over the curve's prime field".into(),
            ));
        }
        if entry.prec() < curve.p() as i64 + 2 {
            return Err(Error::Usage(format!(
                "matrix reduction needs entry precision >= p + 2 = {}",
                curve.p() + 2
            )));
        }
    }
    reduce_sweep(m, |f, pos| {
        let split = split_elliptic(curve, f)?;
        if split.obstruction != 0 {
            return Err(Error::Refusal {
                entry: pos,
                obstruction: split.obstruction,
            });
        }
        Ok((split.preimage, split.global))
    })
}

/// Answer of the injectivity probe: either `b` is itself global (with the
/// witness), or its nonzero `H^1` class blocks that.
#[derive(Clone, Debug, PartialEq)]
pub enum ProbeVerdict<G> {
    Affirmative { global: G },
    Obstructed { h1_class: u64 },
}

/// Given `b` with `wp(b)` in `k[t^{-1}]` to precision, certifies that `b`
/// itself lies in `k[t^{-1}]`. Over the projective line this always
/// succeeds. Inputs whose `wp`-image is not global are rejected.
pub fn injectivity_probe_p1(b: &LaurentSeries) -> Result<ProbeVerdict<GlobalP1Element>> {
    if b.prec() < 1 {
        return Err(Error::Usage(
            "probe needs positive precision to certify anything".into(),
        ));
    }
    let wp = b.artin_schreier();
    for k in wp.val().max(1)..=wp.prec() {
        if !wp.coeff(k).is_zero() {
            return Err(Error::Usage(format!(
                "wp(b) has a positive-exponent term at t^{k}; it is not global"
            )));
        }
    }
    // a tail component of b would have shown up in wp(b) at its own exponent
    for k in b.val().max(1)..=b.prec() {
        if !b.coeff(k).is_zero() {
            return Err(Error::Integrity(
                "b has a tail although wp(b) is polynomial in t^{-1}".into(),
            ));
        }
    }
    let depth = if b.val() <= 0 { (-b.val()) as usize } else { 0 };
    let coeffs = (0..=depth).map(|j| b.coeff(-(j as i64))).collect();
    Ok(ProbeVerdict::Affirmative {
        global: GlobalP1Element::new(b.field(), coeffs)?,
    })
}

/// Elliptic version of the probe. Given `b` whose `wp`-image is the
/// expansion of a global function to precision, decides whether `b` itself
/// is one; a nonzero `H^1` class of `b` is the obstruction, possible only
/// when `alpha = 1`. Requires precision >= p + 2.
pub fn injectivity_probe_elliptic(
    curve: &EllipticMarkedCurve,
    b: &LaurentSeries,
) -> Result<ProbeVerdict<EllipticFunction>> {
    let p = curve.p();
    if b.field() != curve.field() {
        return Err(Error::Usage(
            "series field does not match the curve's prime field".into(),
        ));
    }
    if b.prec() < p as i64 + 2 {
        return Err(Error::Usage(format!(
            "elliptic probe needs precision >= p + 2 = {}, got {}",
            p + 2,
            b.prec()
        )));
    }
    let wp = b.artin_schreier();
    let (_, cw, tail_w) = reduce_principal_part(curve, &wp)?;
    let a0w = tail_w.coeff(0);
    let strict_w =
        &tail_w - &LaurentSeries::from_terms(curve.field(), tail_w.prec(), &[(0, a0w)]);
    if cw != 0 || !strict_w.is_zero() {
        return Err(Error::Usage(
            "wp(b) is not the expansion of a global function".into(),
        ));
    }
    let (gb, cb, tail_b) = reduce_principal_part(curve, b)?;
    if cb != 0 {
        return Ok(ProbeVerdict::Obstructed { h1_class: cb });
    }
    let a0b = tail_b.coeff(0);
    let strict_b =
        &tail_b - &LaurentSeries::from_terms(curve.field(), tail_b.prec(), &[(0, a0b.clone())]);
    if !strict_b.is_zero() {
        // wp of this residual would be a global expansion in t k[[t]],
        // forcing it to vanish; reaching here means an arithmetic bug
        return Err(Error::Integrity(
            "regular residual outside the constants despite a global wp-image".into(),
        ));
    }
    Ok(ProbeVerdict::Affirmative {
        global: gb.add(&EllipticFunction::constant(curve, a0b.constant_coeff())),
    })
}

/// On a curve with `alpha = 1`, produces `b` with `wp(b)` global but `b`
/// carrying the `H^1` class `[t^{-1}]`, so the probe reports it obstructed.
pub fn injectivity_counterexample(
    curve: &EllipticMarkedCurve,
    prec: i64,
) -> Result<LaurentSeries> {
    let p = curve.p();
    let alpha = frobenius_on_h1(curve);
    if alpha != 1 {
        return Err(Error::Usage(format!(
            "alpha = {alpha} != 1: wp is bijective on H^1 and no counterexample exists"
        )));
    }
    if prec < p as i64 + 2 {
        return Err(Error::Usage(format!(
            "counterexample construction needs precision >= p + 2 = {}",
            p + 2
        )));
    }
    let field = curve.field();
    let pole = LaurentSeries::monomial(field.one(), -(p as i64), prec);
    let (_, c, tail_p) = reduce_principal_part(curve, &pole)?;
    debug_assert_eq!(c, 1);
    let a0 = tail_p.coeff(0);
    let tau = &tail_p - &LaurentSeries::from_terms(field, tail_p.prec(), &[(0, a0)]);
    let s = artin_schreier_solve_tail(&tau)?;
    // wp(t^{-1} - s) = exp(g_p) + a0: global
    Ok(&LaurentSeries::monomial(field.one(), -1, prec) - &s)
}

fn pow_mod(mut base: u64, mut exp: u64, p: u64) -> u64 {
    base %= p;
    let mut acc = 1;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * base % p;
        }
        base = base * base % p;
        exp >>= 1;
    }
    acc
}

fn poly_add(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    let mut out = vec![0; a.len().max(b.len())];
    for (i, slot) in out.iter_mut().enumerate() {
        let x = a.get(i).copied().unwrap_or(0);
        let y = b.get(i).copied().unwrap_or(0);
        *slot = (x + y) % p;
    }
    poly_trim(&mut out);
    out
}

fn poly_pow(base: &[u64], mut exp: u64, p: u64) -> Vec<u64> {
    let mut acc = vec![1];
    let mut b = base.to_vec();
    while exp > 0 {
        if exp & 1 == 1 {
            acc = poly_mul(&acc, &b, p);
        }
        b = poly_mul(&b, &b, p);
        exp >>= 1;
    }
    acc
}
