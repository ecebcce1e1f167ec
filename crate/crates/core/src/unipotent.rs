//! Upper unitriangular matrices over a [`Ring`], the Lang map, twisted
//! conjugation, and the decision procedures built on them.
//!
//! Entries are indexed 1-based by (row, column) with row < column; the
//! diagonal is implicitly 1 and never stored. The group operations only
//! ever touch the strict upper triangle:
//! (WZ)_{ij} = w_{ij} + z_{ij} + sum over i < k < j of w_{ik} z_{kj}.

use rand::Rng;

use crate::error::{Error, Result};
use crate::field::{FieldElement, FiniteField};
use crate::ring::{ArtinSchreierRing, Ring};

pub const MIN_N: usize = 2;
pub const MAX_N: usize = 6;

/// Unipotent n x n matrix with entries in R, n between 2 and 6.
#[derive(Clone, PartialEq)]
pub struct UnipotentMatrix<R: Ring> {
    n: usize,
    // strict upper triangle, row-major: (1,2) (1,3) .. (1,n) (2,3) ..
    entries: Vec<R>,
}

impl<R: Ring> std::fmt::Debug for UnipotentMatrix<R> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "U{}[", self.n)?;
        let mut first = true;
        for (i, j) in positions_row_major(self.n) {
            if !first {
                write!(f, ", ")?;
            }
            write!(f, "({i},{j})={:?}", self.entry(i, j))?;
            first = false;
        }
        write!(f, "]")
    }
}

fn check_n(n: usize) -> Result<()> {
    if !(MIN_N..=MAX_N).contains(&n) {
        return Err(Error::Usage(format!(
            "matrix size {n} outside the supported range {MIN_N}..={MAX_N}"
        )));
    }
    Ok(())
}

pub(crate) fn entry_count(n: usize) -> usize {
    n * (n - 1) / 2
}

fn slot(n: usize, i: usize, j: usize) -> usize {
    debug_assert!(1 <= i && i < j && j <= n, "entry ({i},{j}) out of range");
    (i - 1) * n - i * (i - 1) / 2 + (j - i - 1)
}

/// Strict upper positions in storage order.
pub fn positions_row_major(n: usize) -> Vec<(usize, usize)> {
    let mut out = Vec::with_capacity(entry_count(n));
    for i in 1..n {
        for j in i + 1..=n {
            out.push((i, j));
        }
    }
    out
}

/// Strict upper positions ordered by diagonal j - i, then by row.
pub fn positions_by_diagonal(n: usize) -> Vec<(usize, usize)> {
    let mut out = Vec::with_capacity(entry_count(n));
    for d in 1..n {
        for i in 1..=n - d {
            out.push((i, i + d));
        }
    }
    out
}

impl<R: Ring> UnipotentMatrix<R> {
    /// Builds a matrix from its strict upper entries in row-major order.
    pub fn new(n: usize, entries: Vec<R>) -> Result<Self> {
        check_n(n)?;
        if entries.len() != entry_count(n) {
            return Err(Error::Usage(format!(
                "a {n}x{n} unipotent matrix needs {} entries, got {}",
                entry_count(n),
                entries.len()
            )));
        }
        if entries.windows(2).any(|w| !w[0].same_ring(&w[1])) {
            return Err(Error::Usage(
                "matrix entries come from different rings".into(),
            ));
        }
        Ok(Self { n, entries })
    }

    /// Identity matrix in the ring of `sample`.
    pub fn identity(n: usize, sample: &R) -> Result<Self> {
        let z = sample.zero_like();
        Self::new(n, vec![z; entry_count(n)])
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn entries(&self) -> &[R] {
        &self.entries
    }

    /// Some entry, to borrow ring context from.
    pub fn sample_entry(&self) -> &R {
        &self.entries[0]
    }

    pub fn entry(&self, i: usize, j: usize) -> &R {
        &self.entries[slot(self.n, i, j)]
    }

    pub fn set_entry(&mut self, i: usize, j: usize, value: R) {
        assert!(
            value.same_ring(&self.entries[0]),
            "entry from a different ring"
        );
        self.entries[slot(self.n, i, j)] = value;
    }

    pub fn is_identity(&self) -> bool {
        self.entries.iter().all(|e| e.is_zero())
    }

    pub fn map_entries<S: Ring>(&self, f: impl FnMut(&R) -> S) -> UnipotentMatrix<S> {
        UnipotentMatrix {
            n: self.n,
            entries: self.entries.iter().map(f).collect(),
        }
    }

    /// Entrywise p-power Frobenius, written W^(p).
    pub fn frobenius_entrywise(&self) -> Self {
        self.map_entries(|e| e.frobenius())
    }

    /// Group product via the closed entry formula; cost O(n^3) ring ops.
    pub fn mul(&self, rhs: &Self) -> Self {
        assert_eq!(self.n, rhs.n, "size mismatch in matrix product");
        assert!(
            self.entries[0].same_ring(&rhs.entries[0]),
            "ring mismatch in matrix product"
        );
        let n = self.n;
        let mut out = Vec::with_capacity(entry_count(n));
        for (i, j) in positions_row_major(n) {
            let mut acc = self.entry(i, j).add(rhs.entry(i, j));
            for k in i + 1..j {
                acc = acc.add(&self.entry(i, k).mul(rhs.entry(k, j)));
            }
            out.push(acc);
        }
        UnipotentMatrix { n, entries: out }
    }

    /// Group inverse by back-substitution along increasing diagonals:
    /// x_{ij} = -(w_{ij} + sum w_{ik} x_{kj}).
    pub fn inverse(&self) -> Self {
        let n = self.n;
        let mut inv = self.map_entries(|e| e.zero_like());
        for (i, j) in positions_by_diagonal(n) {
            let mut acc = self.entry(i, j).clone();
            for k in i + 1..j {
                acc = acc.add(&self.entry(i, k).mul(inv.entry(k, j)));
            }
            inv.set_entry(i, j, acc.neg());
        }
        inv
    }

    /// The (1,2) entry of a 2 x 2 matrix, which carries all its data.
    pub fn as_polynomial_n2(&self) -> Result<&R> {
        if self.n != 2 {
            return Err(Error::Usage(format!(
                "as_polynomial_n2 needs a 2x2 matrix, got {}x{}",
                self.n, self.n
            )));
        }
        Ok(self.entry(1, 2))
    }
}

impl<R: ArtinSchreierRing> UnipotentMatrix<R> {
    /// Entrywise agreement on the jointly known data.
    pub fn agrees_with(&self, other: &Self) -> bool {
        self.n == other.n
            && self
                .entries
                .iter()
                .zip(&other.entries)
                .all(|(a, b)| a.agrees_with(b))
    }
}

/// The Lang map L(B) = B^(p) B^{-1}.
pub fn lang_map<R: Ring>(b: &UnipotentMatrix<R>) -> UnipotentMatrix<R> {
    b.frobenius_entrywise().mul(&b.inverse())
}

/// Twisted conjugation M -> C^(p) M C^{-1}, the left action under which
/// the Lang map is equivariant: L(CB) = C^(p) L(B) C^{-1}.
pub fn p_conjugate<R: Ring>(
    c: &UnipotentMatrix<R>,
    m: &UnipotentMatrix<R>,
) -> UnipotentMatrix<R> {
    c.frobenius_entrywise().mul(m).mul(&c.inverse())
}

/// Randomized confirmation that the twisted-conjugation correction at a
/// diagonal-d entry depends only on entries of smaller diagonal.
///
/// For each (i,j) with j - i = d the residual
/// (C^(p) M C^{-1})_{ij} - (b_{ij}^p - b_{ij}) - m_{ij}
/// is recomputed `trials` times with every diagonal->=d entry of both
/// matrices (other than (i,j) itself) replaced by fresh random elements;
/// any change is reported as failure.
pub fn entry_correction_check<T: Rng>(
    b: &UnipotentMatrix<FieldElement>,
    m: &UnipotentMatrix<FieldElement>,
    d: usize,
    rng: &mut T,
    trials: usize,
) -> bool {
    assert_eq!(b.n(), m.n(), "size mismatch");
    assert!(d >= 1 && d < b.n(), "diagonal out of range");
    let field = b.sample_entry().field().clone();
    let residual = |bb: &UnipotentMatrix<FieldElement>,
                    mm: &UnipotentMatrix<FieldElement>,
                    i: usize,
                    j: usize| {
        let conj = p_conjugate(bb, mm);
        let wp = &bb.entry(i, j).frobenius() - bb.entry(i, j);
        &(conj.entry(i, j) - &wp) - mm.entry(i, j)
    };
    for (i, j) in positions_by_diagonal(b.n()) {
        if j - i != d {
            continue;
        }
        let base = residual(b, m, i, j);
        for _ in 0..trials {
            let mut b2 = b.clone();
            let mut m2 = m.clone();
            for (u, v) in positions_row_major(b.n()) {
                if v - u >= d && (u, v) != (i, j) {
                    b2.set_entry(u, v, crate::sampling::random_element(&field, rng));
                    m2.set_entry(u, v, crate::sampling::random_element(&field, rng));
                }
            }
            if residual(&b2, &m2, i, j) != base {
                return false;
            }
        }
    }
    true
}

/// Decides twisted-conjugation equivalence: a witness C with
/// C^(p) M' C^{-1} = M, or None if no such C exists.
///
/// Entries of C are determined diagonal by diagonal, each up to an
/// additive prime-field scalar; the search walks those branches in
/// ascending scalar order, so the witness is canonical. Worst case
/// p^(n(n-1)/2) branches, each O(n) ring operations.
pub fn p_equiv_decide<R: ArtinSchreierRing>(
    m: &UnipotentMatrix<R>,
    m_prime: &UnipotentMatrix<R>,
) -> Result<Option<UnipotentMatrix<R>>> {
    if m.n() != m_prime.n() {
        return Err(Error::Usage(format!(
            "cannot compare a {0}x{0} matrix with a {1}x{1} one",
            m.n(),
            m_prime.n()
        )));
    }
    if !m.sample_entry().same_ring(m_prime.sample_entry()) {
        return Err(Error::Usage(
            "matrices to compare live over different rings".into(),
        ));
    }
    let n = m.n();
    let order = positions_by_diagonal(n);
    let p = m.sample_entry().characteristic();
    let mut assigned: Vec<Option<R>> = vec![None; entry_count(n)];

    // solves p_conjugate(C, a) = b entry by entry
    fn dfs<R: ArtinSchreierRing>(
        a: &UnipotentMatrix<R>,
        b: &UnipotentMatrix<R>,
        order: &[(usize, usize)],
        p: u64,
        k: usize,
        assigned: &mut Vec<Option<R>>,
    ) -> bool {
        if k == order.len() {
            return true;
        }
        let (i, j) = order[k];
        let n = a.n();
        // wp(c_{ij}) = b_{ij} - a_{ij}
        //            + sum over i<k<j of (b_{ik} c_{kj} - c_{ik}^p a_{kj})
        let mut rhs = b.entry(i, j).sub(a.entry(i, j));
        for t in i + 1..j {
            let c_tj = assigned[slot(n, t, j)]
                .as_ref()
                .expect("smaller diagonal already assigned");
            let c_it = assigned[slot(n, i, t)]
                .as_ref()
                .expect("smaller diagonal already assigned");
            rhs = rhs.add(&b.entry(i, t).mul(c_tj));
            rhs = rhs.sub(&c_it.frobenius().mul(a.entry(t, j)));
        }
        let base = match rhs.artin_schreier_preimage() {
            Some(b) => b,
            None => return false,
        };
        for delta in 0..p {
            assigned[slot(n, i, j)] = Some(base.add_prime_scalar(delta));
            if dfs(a, b, order, p, k + 1, assigned) {
                return true;
            }
        }
        assigned[slot(n, i, j)] = None;
        false
    }

    if !dfs(m_prime, m, &order, p, 0, &mut assigned) {
        return Ok(None);
    }
    let entries: Vec<R> = assigned
        .into_iter()
        .map(|e| e.expect("search completed"))
        .collect();
    let c = UnipotentMatrix { n, entries };
    if !p_conjugate(&c, m_prime).agrees_with(m) {
        return Err(Error::Integrity(
            "equivalence witness failed re-verification".into(),
        ));
    }
    Ok(Some(c))
}

/// Orbit decomposition of U_n(F_q) under twisted conjugation.
#[derive(Clone, Debug)]
pub struct OrbitReport {
    pub n: usize,
    pub field: FiniteField,
    pub class_count: usize,
    /// Orbit sizes, aligned with `representatives`.
    pub class_sizes: Vec<u64>,
    /// Least member of each orbit in the mixed-radix state order
    /// (entry indices in row-major position order, first position least
    /// significant), orbits listed by ascending representative.
    pub representatives: Vec<UnipotentMatrix<FieldElement>>,
}

const ORBIT_STATE_BOUND: u64 = 1_000_000;

fn matrix_state(m: &UnipotentMatrix<FieldElement>, q: u64) -> u64 {
    let mut state = 0u64;
    for e in m.entries.iter().rev() {
        state = state * q + e.index();
    }
    state
}

fn state_matrix(n: usize, field: &FiniteField, mut state: u64) -> UnipotentMatrix<FieldElement> {
    let q = field.order();
    let entries = (0..entry_count(n))
        .map(|_| {
            let e = field.element_from_index(state % q);
            state /= q;
            e
        })
        .collect();
    UnipotentMatrix { n, entries }
}

/// Enumerates the twisted-conjugation orbits by breadth-first closure
/// under the elementary generators e_{ij}(z^k), which generate U_n(F_q).
pub fn orbit_classes(n: usize, field: &FiniteField) -> Result<OrbitReport> {
    check_n(n)?;
    let q = field.order();
    let mut total: u64 = 1;
    for _ in 0..entry_count(n) {
        total = total
            .checked_mul(q)
            .filter(|&t| t <= ORBIT_STATE_BOUND)
            .ok_or_else(|| {
                Error::Usage(format!(
                    "orbit enumeration needs q^(n(n-1)/2) <= {ORBIT_STATE_BOUND}"
                ))
            })?;
    }

    // generator pool: C^(p) and C^{-1} for each elementary matrix
    let mut generators = Vec::new();
    for (i, j) in positions_row_major(n) {
        for k in 0..field.degree() {
            let mut coeffs = vec![0u64; field.degree()];
            coeffs[k] = 1;
            let val = field.element(&coeffs).expect("basis monomial");
            let mut c = UnipotentMatrix::identity(n, &field.zero())?;
            c.set_entry(i, j, val);
            generators.push((c.frobenius_entrywise(), c.inverse()));
        }
    }

    let mut visited = vec![false; total as usize];
    let mut class_sizes = Vec::new();
    let mut representatives = Vec::new();
    for seed in 0..total {
        if visited[seed as usize] {
            continue;
        }
        visited[seed as usize] = true;
        let mut queue = vec![seed];
        let mut size = 0u64;
        while let Some(cur) = queue.pop() {
            size += 1;
            let mat = state_matrix(n, field, cur);
            for (cfrob, cinv) in &generators {
                let next = cfrob.mul(&mat).mul(cinv);
                let ns = matrix_state(&next, q);
                if !visited[ns as usize] {
                    visited[ns as usize] = true;
                    queue.push(ns);
                }
            }
        }
        class_sizes.push(size);
        representatives.push(state_matrix(n, field, seed));
    }
    Ok(OrbitReport {
        n,
        field: field.clone(),
        class_count: class_sizes.len(),
        class_sizes,
        representatives,
    })
}

/// A Lang-map preimage over the smallest sufficient extension.
#[derive(Clone, Debug)]
pub struct LangSection {
    /// B with L(B) equal to the image of M in the extension.
    pub preimage: UnipotentMatrix<FieldElement>,
    /// Relative degree s of the extension over the base field; always a
    /// power of p, and 1 when M is already in the image of L.
    pub extension_degree: u64,
    /// M mapped into the field of `preimage`.
    pub base_image: UnipotentMatrix<FieldElement>,
}

/// Finds B with L(B) = M over F_{q^s}, escalating s through powers of p
/// until every entry equation becomes solvable.
///
/// The entry equations wp(b_{ij}) = m_{ij} + sum m_{ik} b_{kj} are solved
/// along increasing diagonals with the same prime-scalar branch search as
/// the equivalence decision, so the reported s is the least power of p
/// that works. Each escalation multiplies the absolute degree by p and the
/// total degree must stay within the supported field sizes.
pub fn lang_section(m: &UnipotentMatrix<FieldElement>) -> Result<LangSection> {
    let base = m.sample_entry().field().clone();
    let p = base.characteristic();
    let n = m.n();
    let order = positions_by_diagonal(n);

    let mut s: u64 = 1;
    let mut degree = base.degree();
    loop {
        let mm = if degree == base.degree() {
            m.clone()
        } else {
            let ext = FiniteField::extension(p, degree)?;
            let emb = base.embed_into(&ext)?;
            m.map_entries(|e| emb.map(e))
        };

        let mut assigned: Vec<Option<FieldElement>> = vec![None; entry_count(n)];
        if lang_dfs(&mm, &order, p, 0, &mut assigned) {
            let entries: Vec<FieldElement> = assigned
                .into_iter()
                .map(|e| e.expect("search completed"))
                .collect();
            let b = UnipotentMatrix { n, entries };
            if lang_map(&b) != mm {
                return Err(Error::Integrity(
                    "Lang preimage failed re-verification".into(),
                ));
            }
            return Ok(LangSection {
                preimage: b,
                extension_degree: s,
                base_image: mm,
            });
        }

        s *= p;
        degree = match degree.checked_mul(p as usize) {
            Some(d) if d <= crate::field::MAX_DEGREE => d,
            _ => {
                return Err(Error::Usage(format!(
                    "Lang section needs an extension of degree {} over F_{p}, \
                     beyond the supported bound {}",
                    degree * p as usize,
                    crate::field::MAX_DEGREE
                )))
            }
        };
    }
}

/// Branch search for the Lang entry equations
/// wp(b_{ij}) = m_{ij} + sum over i<k<j of m_{ik} b_{kj}.
fn lang_dfs(
    m: &UnipotentMatrix<FieldElement>,
    order: &[(usize, usize)],
    p: u64,
    k: usize,
    assigned: &mut Vec<Option<FieldElement>>,
) -> bool {
    if k == order.len() {
        return true;
    }
    let (i, j) = order[k];
    let n = m.n();
    let mut rhs = m.entry(i, j).clone();
    for t in i + 1..j {
        let b_tj = assigned[slot(n, t, j)]
            .as_ref()
            .expect("smaller diagonal already assigned");
        rhs = &rhs + &(m.entry(i, t) * b_tj);
    }
    let base = match rhs.artin_schreier_preimage() {
        Some(b) => b,
        None => return false,
    };
    for delta in 0..p {
        assigned[slot(n, i, j)] = Some(base.add_prime_scalar(delta));
        if lang_dfs(m, order, p, k + 1, assigned) {
            return true;
        }
    }
    assigned[slot(n, i, j)] = None;
    false
}
